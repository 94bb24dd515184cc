#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// A recorded CLI invocation; its stdout lives in `golden/<name>.out`.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub seed_env: Option<&'static str>,
    pub code: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], code: i32) -> Case {
    Case { name, args, seed_env: None, code }
}

pub const CASES: &[Case] = &[
    case("check_origin", &["check", "--point", "origin.json", "--domain", "gtilde"], 0),
    case("check_witness_gtilde", &["check", "--point", "witness.json"], 0),
    case("check_witness_gn", &["check", "--point", "witness.json", "--domain", "gn"], 0),
    case("check_witness_gn_expect", &["check", "--point", "witness.json", "--domain", "gn", "--expect-inside"], 1),
    case("check_witness_gamman", &["check", "--point", "witness.json", "--domain", "gamman"], 0),
    case("check_witness_gammatilde", &["check", "--point", "witness.json", "--domain", "gammatilde"], 0),
    case("check_kn", &["check", "--point", "x113.json", "--domain", "kn"], 0),
    case("check_jn_csv", &["--csv", "check", "--point", "p4.json", "--domain", "jn"], 0),
    case("norm_q_only", &["norm", "--point", "q_only.json", "--j", "1"], 0),
    case("norm_csv", &["--csv", "norm", "--point", "p3.json", "--j", "2"], 0),
    case("interpolate", &["interpolate", "--x", "x113.json", "--lambda", "0.5"], 0),
    case("interpolate_complex", &["interpolate", "--x", "x113.json", "--lambda", "-0.3,0.4"], 0),
    case("interpolate_csv", &["--csv", "interpolate", "--x", "x113.json", "--lambda", "0.5"], 0),
    case("interpolate_grid", &["interpolate", "--x", "x113.json", "--verify-grid", "16"], 0),
    case("embed_star_up_odd", &["embed", "--map", "star-up-odd", "--in", "p3.json"], 0),
    case("embed_normalize_sharp_even", &["embed", "--map", "normalize-sharp-even", "--in", "p5.json"], 0),
    case("embed_check_down_even_csv", &["--csv", "embed", "--map", "check-down-even", "--in", "p4.json"], 0),
    case(
        "embed_pad_even_verify",
        &["embed", "--map", "pad-even", "--in", "p4.json", "--verify", "300", "--seed", "3"],
        0,
    ),
    case("embed_parity", &["embed", "--map", "hat-up-even", "--in", "p3.json"], 1),
    case("sample_inside_beta", &["sample", "--mode", "inside-beta", "--n", "4", "--count", "5", "--seed", "11"], 0),
    case(
        "sample_inside_polydisc",
        &["sample", "--mode", "inside-polydisc", "--n", "4", "--count", "5", "--seed", "11"],
        0,
    ),
    case("sample_ambient_box", &["sample", "--mode", "ambient-box", "--n", "4", "--count", "5", "--seed", "11"], 0),
    case("sample_near_boundary", &["sample", "--mode", "near-boundary", "--n", "4", "--count", "5", "--seed", "11"], 0),
    case("sample_csv", &["--csv", "sample", "--mode", "inside-beta", "--n", "3", "--count", "3", "--seed", "2"], 0),
    Case {
        name: "sample_env_seed",
        args: &["sample", "--mode", "inside-beta", "--n", "4", "--count", "5"],
        seed_env: Some("11"),
        code: 0,
    },
    case("verify_parrott", &["verify", "--suite", "parrott-xi", "--count", "100", "--seed", "7"], 0),
    case(
        "verify_equivalence",
        &["verify", "--suite", "equivalence-345", "--n", "4", "--count", "2000", "--seed", "7"],
        0,
    ),
    case("verify_csv", &["--csv", "verify", "--suite", "necessity", "--n", "5", "--count", "200", "--seed", "7"], 0),
    case("verify_unknown", &["verify", "--suite", "nope"], 2),
    case("bad_json", &["check", "--point", "bad.json"], 2),
    case("wrong_schema", &["interpolate", "--x", "p5.json"], 2),
    case("not_in_kn", &["interpolate", "--x", "x5_outside.json"], 1),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the binary in the golden directory; returns stdout and exit code.
pub fn run_case(case: &Case) -> (Vec<u8>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sympoly"));
    cmd.args(case.args).current_dir(golden_dir()).env_remove("SYMPOLY_SEED");
    if let Some(seed) = case.seed_env {
        cmd.env("SYMPOLY_SEED", seed);
    }
    let out = cmd.output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

pub fn golden_path(case: &Case) -> PathBuf {
    golden_dir().join(format!("{}.out", case.name))
}
