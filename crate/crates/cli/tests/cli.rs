mod common;

use std::fs;

use common::{golden_path, run_case, CASES};
use sympoly_core::{DomainPoint, InterpolantSpec, MembershipVerdict, VerificationReport};

/// Set `SYMPOLY_BLESS=1` to rewrite the golden files.
#[test]
fn golden_outputs() {
    let bless = std::env::var_os("SYMPOLY_BLESS").is_some();
    for case in CASES {
        let (stdout, code) = run_case(case);
        assert_eq!(code, case.code, "{}: exit code", case.name);
        let path = golden_path(case);
        if bless {
            fs::write(&path, &stdout).unwrap();
            continue;
        }
        let want = fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(stdout == want, "{}: output differs from {}", case.name, path.display());
    }
}

fn reserializes<T: serde::de::DeserializeOwned + serde::Serialize>(line: &str) -> bool {
    serde_json::from_str::<T>(line).is_ok_and(|v| serde_json::to_string(&v).unwrap() == line)
}

#[test]
fn json_output_round_trips() {
    for case in CASES.iter().filter(|c| !c.args.contains(&"--csv")) {
        let (stdout, _) = run_case(case);
        for line in String::from_utf8(stdout).unwrap().lines() {
            let ok = reserializes::<DomainPoint>(line)
                || reserializes::<InterpolantSpec>(line)
                || reserializes::<MembershipVerdict>(line)
                || reserializes::<VerificationReport>(line)
                || serde_json::from_str::<serde_json::Value>(line).is_ok_and(|v| v.get("j").is_some());
            assert!(ok, "{}: `{line}` does not round-trip", case.name);
        }
    }
}

#[test]
fn regression_interpolant() {
    let case = CASES.iter().find(|c| c.name == "interpolate").unwrap();
    let text = String::from_utf8(run_case(case).0).unwrap();
    let psi: DomainPoint = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    let want = [15.0 / 32.0, 15.0 / 32.0, 0.25];
    for (z, w) in psi.coords().iter().zip(want) {
        assert!((z.re - w).abs() < 1e-12 && z.im.abs() < 1e-12);
    }
}

#[test]
fn embed_writes_output_file() {
    let dir = std::env::temp_dir().join(format!("sympoly-embed-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let target = dir.join("image.json");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_sympoly"))
        .args(["embed", "--map", "pad-odd", "--in"])
        .arg(common::golden_dir().join("p3.json"))
        .arg("--out")
        .arg(&target)
        .status()
        .unwrap();
    assert!(status.success());
    let image: DomainPoint = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(image.n(), 4);
    fs::remove_dir_all(&dir).unwrap();
}
