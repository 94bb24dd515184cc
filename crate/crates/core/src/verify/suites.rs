use std::f64::consts::TAU;

use rand::Rng;

use super::sample::{disc, kn_point, sample_point, trial_rng, SampleConfig, SampleMode};
use super::{Trial, VerificationReport};
use crate::algebra::{binom, c, defect, mobius, op_norm, parrott_central, Cplx, Mat2};
use crate::domains::{
    char2_oracle_on, char3, char5_construct, in_gn, in_gtilde, phi, phi_hinf, Char2Grid, DomainPoint, DEFAULT_GRID,
};
use crate::error::{Error, Result};
use crate::geometry::{shift_verify, ShiftMap, ShiftMapId};
use crate::schwarz::{
    build_schur, interpolant_derivative, interpolate_full, lift, necessary_condition, r_coeff, schur_closed_form,
    two_point_norm_check, DerivativeData, Interpolation, LiftInput,
};

/// Registered suite names.
pub const SUITES: [&str; 9] = [
    "equivalence-345",
    "inclusion-gn-gtilde",
    "interpolant-roundtrip",
    "schur-dualpath",
    "embeddings",
    "parrott-xi",
    "hinf-supremum",
    "char5-construct",
    "necessity",
];

/// Points whose `G~_n` margin is this close to zero are not compared.
const MARGIN_BAND: f64 = 1e-3;

/// Runs the named suite with `cfg.count` trials in dimension `cfg.n`.
///
/// The `n = 3` suites (`schur-dualpath`, `parrott-xi`) ignore `cfg.n`;
/// `cfg.mode` is only read by the samplers of `equivalence-345`, which mix
/// all generators anyway.
pub fn run_suite(name: &str, cfg: &SampleConfig) -> Result<VerificationReport> {
    let needs_n = !matches!(name, "schur-dualpath" | "parrott-xi");
    if needs_n && cfg.n < 3 {
        return Err(Error::InvalidInput(format!("suite `{name}` needs n >= 3, got {}", cfg.n)));
    }
    if cfg.count == 0 {
        return Err(Error::InvalidInput("sample count must be at least 1".into()));
    }
    let (n, count, seed) = (cfg.n, cfg.count, cfg.seed);
    Ok(match name {
        "equivalence-345" => equivalence(cfg),
        "inclusion-gn-gtilde" => VerificationReport::run(name, count, |i| inclusion(cfg, i)),
        "interpolant-roundtrip" => VerificationReport::run(name, count, |i| roundtrip(n, seed, i)),
        "schur-dualpath" => VerificationReport::run(name, count, |i| dualpath(seed, i)),
        "embeddings" => embeddings(n, count, seed)?,
        "parrott-xi" => VerificationReport::run(name, count, |i| parrott(seed, i)),
        "hinf-supremum" => VerificationReport::run(name, count, |i| hinf(cfg, i)),
        "char5-construct" => VerificationReport::run(name, count, |i| char5(cfg, i)),
        "necessity" => VerificationReport::run(name, count, |i| necessity(n, seed, i)),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    })
}

fn describe(y: &DomainPoint) -> String {
    serde_json::to_string(y).unwrap_or_default()
}

fn describe_x(x: &[Cplx]) -> String {
    x.iter().map(|z| format!("({:e},{:e})", z.re, z.im)).collect::<Vec<_>>().join(" ")
}

fn max_diff(a: &[Cplx], b: &[Cplx]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
}

/// Mixed generator: interior, ambient box and rescaled near-boundary points.
fn mixed_point(cfg: &SampleConfig, i: usize) -> DomainPoint {
    match i % 5 {
        0 | 1 => sample_point(&cfg.with_mode(SampleMode::InsideBeta), i),
        2 | 3 => sample_point(&cfg.with_mode(SampleMode::AmbientBox), i),
        _ => {
            let y = sample_point(&cfg.with_mode(SampleMode::NearBoundary), i);
            let s = trial_rng(cfg.seed ^ 0x5eed, i).gen_range(0.9..1.1);
            DomainPoint::new(y.y().iter().map(|z| z * s).collect(), y.q()).expect("finite sample")
        }
    }
}

fn equivalence(cfg: &SampleConfig) -> VerificationReport {
    let grid = Char2Grid::new(DEFAULT_GRID);
    VerificationReport::run("equivalence-345", cfg.count, |i| {
        let y = mixed_point(cfg, i);
        let truth = in_gtilde(&y);
        if truth.margin.abs() <= MARGIN_BAND {
            return Trial::skip();
        }
        let (c3, c2) = (char3(&y), char2_oracle_on(&grid, &y));
        let agree = c3.is_inside() == truth.is_inside() && c2.is_inside() == truth.is_inside();
        Trial::check(
            agree,
            0.0,
            || describe(&y),
            || format!("char3 {:?}, char2 {:?}", c3.verdict, c2.verdict),
            if truth.is_inside() { "Inside" } else { "OnBoundaryOrOutside" },
        )
    })
}

fn inclusion(cfg: &SampleConfig, i: usize) -> Trial {
    let y = sample_point(&cfg.with_mode(SampleMode::InsidePolydisc), i);
    let (gn, gt) = (in_gn(&y, false), in_gtilde(&y));
    Trial::check(
        gn.is_inside() && gt.is_inside(),
        (-gn.margin).max(-gt.margin).max(0.0),
        || describe(&y),
        || format!("G_n {:?}, G~_n {:?}", gn.verdict, gt.verdict),
        "Inside for both",
    )
}

/// `|lambda|` values of the membership grid.
const RADII: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.999];

/// `det W = lambda (x_3 + lambda l)/(1 + lambda conj(x_3) l)` and
/// `W_11, W_22 = lambda x_{1,2} / (3 (1 + lambda conj(x_3) l))`.
fn identity_residual(x: [Cplx; 3], w: &Mat2, lambda: Cplx) -> Result<f64> {
    let l = r_coeff(&DerivativeData::new(x.to_vec())?)?;
    let den = 1.0 + lambda * x[2].conj() * l;
    let det = lambda * (x[2] + lambda * l) / den;
    let d1 = lambda * x[0] / (3.0 * den);
    let d2 = lambda * x[1] / (3.0 * den);
    Ok((w.det() - det).norm().max((w.a11 - d1).norm()).max((w.a22 - d2).norm()))
}

fn roundtrip(n: usize, seed: u64, i: usize) -> Trial {
    let mut rng = trial_rng(seed, i);
    let x = kn_point(&mut rng, n);
    let input = || describe_x(&x);
    match roundtrip_checks(n, &x, &mut rng) {
        Ok(t) => t,
        Err(e) => Trial::fail(f64::INFINITY, input(), e.to_string(), "interpolant"),
    }
}

fn roundtrip_checks(n: usize, x: &[Cplx], rng: &mut impl Rng) -> Result<Trial> {
    let input = || describe_x(x);
    let d = DerivativeData::new(x.to_vec())?;
    let interp = interpolate_full(&d)?;
    let zero = c(0.0, 0.0);

    let at0 = interp.eval(zero)?;
    let mut t = Trial::check(at0 == DomainPoint::origin(n), 0.0, input, || describe(&at0), "psi(0) = 0");

    let dx = max_diff(&interpolant_derivative(&interp.spec, zero)?, x);
    t = t.and(Trial::check(dx < 1e-8, dx, input, || format!("closed-form error {dx:e}"), "psi'(0) = x"));

    let h = 1e-5;
    let mut fd = 0.0f64;
    for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
        let (p, m) = (interp.eval(dir * h)?.coords(), interp.eval(-dir * h)?.coords());
        let est: Vec<Cplx> = p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h * dir)).collect();
        fd = fd.max(max_diff(&est, x));
    }
    t = t.and(Trial::check(fd < 1e-5, fd, input, || format!("difference error {fd:e}"), "psi'(0) = x"));

    let lambda0 = disc(rng, 0.95);
    if lambda0.norm() > 1e-3 {
        let y0 = interp.eval(lambda0)?;
        let ok = two_point_norm_check(lambda0, &y0)?;
        t = t.and(Trial::check(ok, 0.0, input, || format!("fails at {lambda0}"), "two-point bound"));
    }

    let reduced = [3.0 * x[0] / n as f64, 3.0 * x[n - 2] / n as f64, x[n - 1]];
    let mut lifted = 0.0f64;
    let mut ident = 0.0f64;
    for k in 0..64 {
        let theta = TAU * k as f64 / 64.0;
        for r in RADII {
            let lambda = Cplx::from_polar(r, theta);
            let y = interp.eval(lambda)?;
            let v = in_gtilde(&y);
            if !v.is_inside() {
                return Ok(t.and(Trial::fail(-v.margin, input(), describe(&y), format!("Inside at {lambda}"))));
            }
            lifted = lifted.max(interp.lifted(lambda)?.max_abs_diff(&y));
            ident = ident.max(identity_residual(reduced, &schur_closed_form(&interp.family, lambda)?, lambda)?);
        }
    }
    t = t.and(Trial::check(
        lifted <= 1e-10,
        lifted,
        input,
        || format!("lift differs by {lifted:e}"),
        "lift = closed form",
    ));
    Ok(t.and(Trial::check(ident <= 1e-10, ident, input, || format!("identity residual {ident:e}"), "det and diagonal")))
}

/// Membership of `psi(lambda)` and agreement of the lifted path with the
/// closed form on `angles` rays, each sampled at `|lambda| = 0.1, ..., 0.9, 0.999`.
pub fn verify_interpolation(interp: &Interpolation, angles: usize) -> VerificationReport {
    VerificationReport::run("interpolant-grid", angles, |k| {
        let theta = TAU * k as f64 / angles as f64;
        RADII.iter().fold(Trial::pass(0.0), |acc, &r| {
            let lambda = Cplx::from_polar(r, theta);
            let input = || format!("lambda = {lambda}");
            let checked =
                interp.eval(lambda).and_then(|y| Ok((in_gtilde(&y), interp.lifted(lambda)?.max_abs_diff(&y))));
            acc.and(match checked {
                Ok((v, diff)) => Trial::check(
                    v.is_inside() && diff <= 1e-10,
                    diff,
                    input,
                    || format!("{:?}, lift differs by {diff:e}", v.verdict),
                    "Inside, lift = closed form",
                ),
                Err(e) => Trial::fail(f64::INFINITY, input(), e.to_string(), "a finite value"),
            })
        })
    })
}

/// `n = 3` data with `max(|x_1|, |x_2|)/3 + |x_3| <= 1 - 1e-3`; every
/// seventh trial has `x_1 = x_2 = 0`.
fn three_point(rng: &mut impl Rng, i: usize) -> [Cplx; 3] {
    let (a, b): (f64, f64) = if i % 7 == 0 { (0.0, 0.0) } else { (rng.gen_range(0.0..2.99), rng.gen_range(0.0..2.99)) };
    let room = 1.0 - a.max(b) / 3.0 - 1e-3;
    [
        Cplx::from_polar(a, rng.gen_range(0.0..TAU)),
        Cplx::from_polar(b, rng.gen_range(0.0..TAU)),
        Cplx::from_polar(room * rng.gen::<f64>(), rng.gen_range(0.0..TAU)),
    ]
}

fn dualpath(seed: u64, i: usize) -> Trial {
    let mut rng = trial_rng(seed, i);
    let x = three_point(&mut rng, i);
    let input = || describe_x(&x);
    let run = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<(f64, f64)> {
        let f = build_schur(&DerivativeData::new(x.to_vec())?)?;
        let (mut path, mut ident) = (0.0f64, 0.0f64);
        for _ in 0..16 {
            let lambda = disc(rng, 0.99);
            let via = mobius(&(-f.z), &f.b.scale(lambda))?;
            let closed = schur_closed_form(&f, lambda)?;
            path = path.max(via.max_abs_diff(&closed));
            ident = ident.max(identity_residual(x, &via, lambda)?);
        }
        Ok((path, ident))
    };
    match run(&mut rng) {
        Ok((path, ident)) => Trial::check(
            path <= 1e-10 && ident <= 1e-10,
            path.max(ident),
            input,
            || format!("paths differ by {path:e}, identities by {ident:e}"),
            "agreement to 1e-10",
        ),
        Err(e) => Trial::fail(f64::INFINITY, input(), e.to_string(), "a Schur family"),
    }
}

fn embeddings(n: usize, count: usize, seed: u64) -> Result<VerificationReport> {
    let mut parts = Vec::new();
    for id in ShiftMapId::ALL.into_iter().filter(|id| id.accepts(n)) {
        for closed in [false, true] {
            parts.push(shift_verify(&ShiftMap { id, closed }, n, count, seed)?);
        }
    }
    Ok(VerificationReport::merge("embeddings", parts))
}

/// `rho = x_1 x_2 conj(x_3) sqrt(3 - |x_1|) / (sqrt(3) |x_1| (3 - |x_1| - 3|x_3|^2))`.
fn rho_closed_form(x: [Cplx; 3]) -> Cplx {
    let a = x[0].norm();
    x[0] * x[1] * x[2].conj() * (3.0 - a).sqrt() / (3f64.sqrt() * a * (3.0 - a - 3.0 * x[2].norm_sqr()))
}

fn parrott(seed: u64, i: usize) -> Trial {
    let mut rng = trial_rng(seed, i);
    let mut x = three_point(&mut rng, 1);
    if x[0].norm() < x[1].norm() {
        x.swap(0, 1);
    }
    let input = || describe_x(&x);
    let a = x[0].norm();
    let (sigma, k) = ((1.0 - a / 3.0).sqrt(), (3.0 * a).sqrt());
    let (p, r, s) = (x[0] / k, -x[2] / sigma, x[1] / k);
    let rho = match parrott_central(p, r, s) {
        Ok(v) => v,
        Err(e) => return Trial::fail(f64::INFINITY, input(), e.to_string(), "a completion"),
    };
    let residual = (rho - rho_closed_form(x)).norm();
    let norm = op_norm(&Mat2::new(p, rho, r, s));
    let from_family = build_schur(&DerivativeData::new(x.to_vec()).expect("finite")).map(|f| f.rho());
    let consistent = from_family.as_ref().is_ok_and(|v| *v == rho);
    Trial::check(
        residual <= 1e-12 && norm <= 1.0 + 1e-12 && consistent,
        residual,
        input,
        || format!("rho {rho}, residual {residual:e}, norm {norm}, family {from_family:?}"),
        "closed-form rho and a contraction",
    )
}

/// Boundary points used to estimate the supremum of `|Phi_j|`.
const BOUNDARY_POINTS: usize = 4096;

fn hinf(cfg: &SampleConfig, i: usize) -> Trial {
    let y = sample_point(&cfg.with_mode(SampleMode::InsideBeta), i);
    let n = y.n();
    let mut t = Trial::pass(0.0);
    for j in 1..n {
        let formula = match phi_hinf(j, &y) {
            Ok(v) => v,
            Err(e) => return Trial::fail(f64::INFINITY, describe(&y), e.to_string(), "a finite norm"),
        };
        let mut sup = 0.0f64;
        for k in 0..BOUNDARY_POINTS {
            let z = Cplx::from_polar(1.0, TAU * k as f64 / BOUNDARY_POINTS as f64);
            match phi(j, z, &y) {
                Ok(v) => sup = sup.max(v.norm()),
                Err(e) => return Trial::fail(f64::INFINITY, describe(&y), e.to_string(), "no pole on the circle"),
            }
        }
        let gap = formula - sup;
        t = t.and(Trial::check(
            (-1e-12..=1e-3).contains(&gap),
            gap.abs(),
            || format!("{} j={j}", describe(&y)),
            || format!("formula {formula}, sampled {sup}"),
            "sampled <= formula <= sampled + 1e-3",
        ));
        if formula >= 1.0 {
            t = t.and(Trial::fail(formula, format!("{} j={j}", describe(&y)), formula.to_string(), "norm below 1"));
        }
    }
    t
}

fn char5(cfg: &SampleConfig, i: usize) -> Trial {
    let y = sample_point(&cfg.with_mode(SampleMode::InsideBeta), i);
    if in_gtilde(&y).margin <= MARGIN_BAND {
        return Trial::skip();
    }
    let n = y.n();
    let tuple = match char5_construct(&y) {
        Ok(t) => t,
        Err(e) => return Trial::fail(f64::INFINITY, describe(&y), e.to_string(), "a contraction tuple"),
    };
    let mut diag = true;
    let mut det = 0.0f64;
    let mut norm = 0.0f64;
    for (idx, m) in tuple.mats.iter().enumerate() {
        let j = idx + 1;
        let cj = binom(n, j);
        diag &= m.a11 == y.coord(j) / cj && m.a22 == y.coord(n - j) / cj;
        det = det.max((m.det() - y.q()).norm());
        norm = norm.max(op_norm(m));
    }
    let back = match lift(n, &LiftInput::new(tuple.mats.clone())) {
        Ok(p) => p.max_abs_diff(&y),
        Err(e) => return Trial::fail(f64::INFINITY, describe(&y), e.to_string(), "a liftable tuple"),
    };
    Trial::check(
        diag && det <= 1e-10 && norm < 1.0 - 1e-9 && back <= 1e-10,
        det.max(back),
        || describe(&y),
        || format!("diagonal {diag}, det error {det:e}, norm {norm}, lift error {back:e}"),
        "exact diagonal, det to 1e-10, norm < 1 - 1e-9, lift to 1e-10",
    )
}

/// Random matrix with operator norm uniform in `[0, 1]`.
fn random_contraction(rng: &mut impl Rng) -> Mat2 {
    let m = Mat2::new(disc(rng, 1.0), disc(rng, 1.0), disc(rng, 1.0), disc(rng, 1.0));
    let norm = op_norm(&m);
    if norm == 0.0 {
        return m;
    }
    m.scale(Cplx::new(rng.gen::<f64>() / norm, 0.0))
}

/// `psi'(0)` for `psi = pi_n(W, ..., W)` with `W(0) = w0`, `W'(0) = w1`.
fn lifted_derivative(n: usize, w0: &Mat2, w1: &Mat2) -> Vec<Cplx> {
    let mut x: Vec<Cplx> = (1..n)
        .map(|j| {
            let cj = binom(n, j);
            if 2 * j == n {
                cj * (w1.a11 + w1.a22) / 2.0
            } else if 2 * j < n {
                cj * w1.a11
            } else {
                cj * w1.a22
            }
        })
        .collect();
    let adj = Mat2::new(w0.a22, -w0.a12, -w0.a21, w0.a11);
    x.push((adj * *w1).trace());
    x
}

fn necessity(n: usize, seed: u64, i: usize) -> Trial {
    let mut rng = trial_rng(seed, i);
    let sigma = rng.gen_range(0.0..0.999);
    let corner = Cplx::from_polar(sigma, rng.gen_range(0.0..TAU));
    let z = if rng.gen::<bool>() { Mat2::antidiag(corner, c(0.0, 0.0)) } else { Mat2::antidiag(c(0.0, 0.0), corner) };
    let b = random_contraction(&mut rng);
    let input = || format!("Z={z:?} B={b:?}");
    let run = || -> Result<(Vec<Cplx>, f64)> {
        let w1 = defect(&z.adjoint())? * b * defect(&z)?;
        let x = lifted_derivative(n, &z, &w1);
        let h = 1e-5;
        let psi = |l: Cplx| -> Result<Vec<Cplx>> {
            let w = mobius(&(-z), &b.scale(l))?;
            Ok(lift(n, &LiftInput::new(vec![w; n / 2]))?.coords())
        };
        let (p, m) = (psi(c(h, 0.0))?, psi(c(-h, 0.0))?);
        let est: Vec<Cplx> = p.iter().zip(&m).map(|(u, v)| (u - v) / (2.0 * h)).collect();
        Ok((x.clone(), max_diff(&est, &x)))
    };
    match run() {
        Ok((x, fd)) => {
            let check = necessary_condition(&DerivativeData::new(x.clone()).expect("finite"));
            Trial::check(
                check.margin >= -1e-10 && fd < 1e-5,
                (-check.margin).max(0.0),
                input,
                || format!("psi'(0) = {}, margin {}, difference error {fd:e}", describe_x(&x), check.margin),
                "bound holds with slack >= -1e-10",
            )
        }
        Err(e) => Trial::fail(f64::INFINITY, input(), e.to_string(), "an analytic lift"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, count: usize) -> SampleConfig {
        SampleConfig::new(n, count, 7, SampleMode::InsideBeta)
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &cfg(3, 10)), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_passes_small_runs() {
        for name in SUITES {
            for n in [3, 4, 5] {
                let r = run_suite(name, &cfg(n, 60)).unwrap();
                assert!(r.passed, "{name} n={n}: {r:?}");
                assert!(r.trials >= 60);
            }
        }
    }

    #[test]
    fn parallel_reports_are_reproducible() {
        let a = run_suite("equivalence-345", &cfg(4, 500)).unwrap();
        let b = run_suite("equivalence-345", &cfg(4, 500)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
