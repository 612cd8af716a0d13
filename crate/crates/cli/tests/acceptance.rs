//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ltsr_core::algebra::{index, reconstruct};
use ltsr_core::bounds::{bounds_report, BoundsInput};
use ltsr_core::certificate::{self, Certificate};
use ltsr_core::elimination::{
    determinant_winding, eliminate, homogeneity_scale_check, ltsr_lower_obstruction,
    ltsr_upper_certificate,
};
use ltsr_core::liftrank::{lift_lnk, theorem_basic_lift, DiskOracle};
use ltsr_core::moebius::{conjugator, make_finite_subgroup, rep_pi, SU11Element};
use ltsr_core::random::{crossed_element, poly_up_to, rng_from_seed, SeededRng};
use ltsr_core::{json, AlgMatrix, Complex64, CrossedElement, GroupSpec, Poly};
use rand::Rng;

const BIN: &str = env!("CARGO_BIN_EXE_ltsr");

/// Outcome of one criterion: failures found and a one-line summary.
struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn spec(n: usize) -> GroupSpec {
    GroupSpec::principal(n).unwrap()
}

fn ltsr(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).current_dir(dir).args(args).output().expect("run ltsr");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

/// Reconstruction through the quasi-basis from both sides; the index is `n delta^0`.
fn quasi_basis_suite(_: &Path) -> Outcome {
    let mut o = Outcome::new();
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let s = spec(n);
        let mut rng = rng_from_seed(100 + n as u64);
        for k in 0..100 {
            let x = crossed_element(&mut rng, &s, 8);
            let (left, right) = reconstruct(&x);
            let r = (&left - &x).l1_norm().max((&right - &x).l1_norm());
            worst = worst.max(r);
            o.check(r < 1e-10, || format!("n={n} element {k}: residual {r:e}"));
        }
        let expected = CrossedElement::one(&s).scale(Complex64::new(n as f64, 0.0));
        o.check(index(&s) == expected, || format!("n={n}: index is not n delta^0"));
    }
    o.summary = format!("500 elements, worst residual {worst:.2e}, index exact");
    o
}

/// `alpha^g(f)` written out for the closed forms.
fn alpha(s: &GroupSpec, f: &Poly, g: i64) -> Poly {
    s.act(f, g)
}

/// The displayed top-level formulas for n = 2 and n = 3, with the Wiener norm
/// of the subtracted terms as the comparison scale.
fn closed_form(a: &CrossedElement) -> (Poly, f64) {
    let s = a.spec();
    let c = |g: i64| a.comp(g).clone();
    match s.n() {
        2 => {
            let t1 = &alpha(s, &c(0), 1) * &c(0);
            let t2 = &c(1) * &alpha(s, &c(1), 1);
            let scale = t1.wiener_norm() + t2.wiener_norm();
            (&t1 - &t2, scale)
        }
        3 => {
            let p = &(&alpha(s, &c(0), 2) * &c(1)) - &(&c(2) * &alpha(s, &c(2), 2));
            let q = &(&alpha(s, &c(0), 2) * &alpha(s, &c(2), 1))
                - &(&alpha(s, &c(1), 1) * &alpha(s, &c(1), 2));
            let r = &(&alpha(s, &c(0), 2) * &alpha(s, &c(0), 1))
                - &(&alpha(s, &c(1), 1) * &alpha(s, &c(2), 2));
            let t = &(&alpha(s, &c(0), 2) * &c(0)) - &(&c(2) * &alpha(s, &c(1), 2));
            let (pq, rt) = (&p * &q, &r * &t);
            let scale = pq.wiener_norm() + rt.wiener_norm();
            (&pq - &rt, scale)
        }
        _ => unreachable!(),
    }
}

fn elimination_suite(_: &Path) -> Outcome {
    let mut o = Outcome::new();
    let (mut mult, mut van, mut scal, mut closed) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 2..=5 {
        let s = spec(n);
        let mut rng = rng_from_seed(200 + n as u64);
        for k in 0..100 {
            let a = crossed_element(&mut rng, &s, 4);
            let trace = eliminate(&a).unwrap();
            let report = trace.check_invariants();
            mult = mult.max(report.multiplier_residual);
            van = van.max(report.vanishing_residual.max(report.top_support_residual));
            o.check(report.holds(1e-10, 1e-12), || format!("n={n} element {k}: {report:?}"));
            let lambda = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let h = homogeneity_scale_check(&a, lambda).unwrap();
            scal = scal.max(h.max_relative_error);
            o.check(h.max_relative_error < 1e-8, || {
                format!("n={n} element {k}: scaling error {:e}", h.max_relative_error)
            });
            if n <= 3 {
                let (formula, scale) = closed_form(&a);
                let err = (trace.top_poly() - &formula).wiener_norm() / scale.max(f64::MIN_POSITIVE);
                closed = closed.max(err);
                o.check(err < 1e-12, || format!("n={n} element {k}: closed form off by {err:e}"));
            }
        }
    }
    o.summary = format!(
        "400 elements, multiplier {mult:.1e}, vanishing {van:.1e}, scaling {scal:.1e}, closed forms {closed:.1e}"
    );
    o
}

fn bezout_certificates(dir: &Path) -> Vec<(PathBuf, Result<Certificate, String>)> {
    fs::create_dir_all(dir).unwrap();
    let mut out = Vec::new();
    for n in 2..=4 {
        let s = spec(n);
        for k in 0..50u64 {
            let seed = 1000 * n as u64 + k;
            let mut rng = rng_from_seed(seed);
            let x = crossed_element(&mut rng, &s, 4);
            let y = crossed_element(&mut rng, &s, 4);
            let path = dir.join(format!("bezout-n{n}-{k:02}.json"));
            let cert = ltsr_upper_certificate(&x, &y, 0.1, &mut rng)
                .map(|mut c| {
                    c.seed = Some(seed);
                    Certificate::Bezout(c)
                })
                .map_err(|e| e.to_string());
            if let Ok(c) = &cert {
                write(&path, &json::to_string(c).unwrap());
            }
            out.push((path, cert));
        }
    }
    out
}

fn certificate_suite(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let certs = bezout_certificates(&dir.join("bezout"));
    let mut files = Vec::new();
    let (mut worst_res, mut worst_dist) = (0.0f64, 0.0f64);
    for (path, cert) in &certs {
        match cert {
            Ok(Certificate::Bezout(c)) => {
                worst_res = worst_res.max(c.residual);
                worst_dist = worst_dist.max(c.distances[0].max(c.distances[1]));
                o.check(c.residual < 1e-6, || format!("{}: residual {:e}", path.display(), c.residual));
                o.check(c.distances.iter().all(|&d| d < 0.1), || {
                    format!("{}: distances {:?}", path.display(), c.distances)
                });
                files.push(path.to_str().unwrap().to_string());
            }
            Ok(_) => unreachable!(),
            Err(e) => o.failures.push(format!("{}: {e}", path.display())),
        }
    }
    let mut args = vec!["verify"];
    args.extend(files.iter().map(String::as_str));
    let (code, _, stderr) = ltsr(dir, &args);
    o.check(code == 0, || format!("verify exited {code}: {stderr}"));
    o.summary = format!(
        "{}/{} certificates, worst residual {worst_res:.1e}, worst distance {worst_dist:.1e}, verify exit {code}",
        files.len(),
        certs.len()
    );
    o
}

fn winding_suite(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=6 {
        let s = spec(n);
        let center = CrossedElement::from_poly(&s, Poly::z());
        for samples in [1024, 4096] {
            let (min, w) = determinant_winding(&center, samples).unwrap();
            o.check(w == n as i64 && min > 0.0, || {
                format!("n={n} at {samples} samples: winding {w}, min {min:e}")
            });
        }
        let mut rng = rng_from_seed(400 + n as u64);
        match ltsr_lower_obstruction(&s, 0.05, 1024, None, &mut rng) {
            Ok(obs) => {
                o.check(obs.perturbations.len() == 10, || format!("n={n}: {} perturbations", obs.perturbations.len()));
                for (k, p) in obs.perturbations.iter().enumerate() {
                    let (min, w) = determinant_winding(&p.element, 1024).unwrap();
                    let dist = (&p.element - &center).l1_norm();
                    o.check(w == n as i64 && min > 0.0 && dist < 0.05, || {
                        format!("n={n} perturbation {k}: winding {w}, distance {dist:e}")
                    });
                }
                let cert = Certificate::Winding(obs);
                write(&dir.join(format!("winding-n{n}.json")), &json::to_string(&cert).unwrap());
                let v = certificate::verify(&cert).unwrap();
                o.check(v.passed(), || format!("n={n}: {:?}", v.failures));
            }
            Err(e) => o.failures.push(format!("n={n}: {e}")),
        }
    }
    o.summary = "n = 1..6, windings equal n at 1024 and 4096 samples, 10 perturbations each at delta 0.05".into();
    o
}

fn lift_suite(_: &Path) -> Outcome {
    let mut o = Outcome::new();
    let (mut res, mut dist) = (0.0f64, 0.0f64);
    for (rows, cols) in [(3, 2), (4, 3)] {
        for k in 0..25u64 {
            let mut rng = rng_from_seed(500 + 100 * rows as u64 + k);
            let t = AlgMatrix::from_fn(rows, cols, |_, _| poly_up_to(&mut rng, 3));
            match lift_lnk(&t, 0.1, &mut DiskOracle::new(&mut rng)) {
                Ok(lift) => {
                    let product = lift.left_inverse.matmul(&lift.output).unwrap();
                    let r = product.minus(&AlgMatrix::identity(cols, &Poly::one())).unwrap().norm_l1();
                    let d = lift.output.minus(&t).unwrap().norm_l1();
                    res = res.max(r);
                    dist = dist.max(d);
                    o.check(r < 1e-6 && d < 0.1, || {
                        format!("{rows}x{cols} instance {k}: residual {r:e}, distance {d:e}")
                    });
                }
                Err(e) => o.failures.push(format!("{rows}x{cols} instance {k}: {e}")),
            }
        }
    }
    let mut tuple_res: f64 = 0.0;
    for n in 2..=3 {
        let s = spec(n);
        for k in 0..25u64 {
            let mut rng = rng_from_seed(700 + 100 * n as u64 + k);
            let b: Vec<_> = (0..=n).map(|_| crossed_element(&mut rng, &s, 3)).collect();
            match theorem_basic_lift(&b, 0.1, &mut rng) {
                Ok(lift) => {
                    let mut sum = CrossedElement::one(&s).scale(Complex64::new(-1.0, 0.0));
                    for (w, y) in lift.witness.iter().zip(&lift.outputs) {
                        sum = &sum + &(w * y);
                    }
                    let r = sum.l1_norm();
                    tuple_res = tuple_res.max(r);
                    let far = lift.outputs.iter().zip(&b).map(|(y, x)| (y - x).l1_norm()).fold(0.0, f64::max);
                    o.check(r < 1e-6 && far < 0.1, || {
                        format!("n={n} tuple {k}: witness residual {r:e}, distance {far:e}")
                    });
                }
                Err(e) => o.failures.push(format!("n={n} tuple {k}: {e}")),
            }
        }
    }
    o.summary = format!(
        "50 matrices (residual {res:.1e}, distance {dist:.1e}), 50 tuples (witness residual {tuple_res:.1e})"
    );
    o
}

fn coprime(rng: &mut SeededRng, order: usize) -> i64 {
    loop {
        let m = rng.random_range(1..2 * order as i64);
        if (1..=m).filter(|d| m % d == 0 && order as i64 % d == 0).count() == 1 {
            return m;
        }
    }
}

fn moebius_suite(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = rng_from_seed(600);
    let mut hom: f64 = 0.0;
    for _ in 0..1000 {
        let g = SU11Element::random(&mut rng, 2.0);
        let h = SU11Element::random(&mut rng, 2.0);
        let lhs = rep_pi(&g.mul(&h)).unwrap().matrix();
        let rhs = rep_pi(&g).unwrap().matrix() * rep_pi(&h).unwrap().matrix();
        let det = (rep_pi(&g).unwrap().det() - 1.0).abs();
        hom = hom.max((lhs - rhs).amax()).max(det);
    }
    o.check(hom < 1e-10, || format!("homomorphism/determinant defect {hom:e}"));
    let mut conj: f64 = 0.0;
    for k in 0..50 {
        let order = 2 + k % 7;
        let m = coprime(&mut rng, order);
        let h = SU11Element::random(&mut rng, 1.5);
        let result = make_finite_subgroup(order, &h, m).and_then(|sub| conjugator(&sub));
        match result {
            Ok(c) => {
                conj = conj.max(c.residual);
                o.check(c.residual < 1e-8, || format!("order {order}: conjugator residual {:e}", c.residual));
            }
            Err(e) => o.failures.push(format!("order {order}, m={m}: {e}")),
        }
    }
    for order in 2..=5 {
        let work = dir.join(format!("pipeline-{order}"));
        fs::create_dir_all(&work).unwrap();
        let n = order.to_string();
        let steps: [&[&str]; 4] = [
            &["random-subgroup", "--n", &n, "--seed", "7"],
            &["conjugate", "subgroup.json"],
            &[
                "random", "--spec-from", "conjugation.json", "--seed", "7", "--degree-cap", "1", "--out",
                "inputs",
            ],
            &["cert-upper", "inputs/element-0.json", "inputs/element-1.json", "--seed", "7"],
        ];
        for step in steps {
            let (code, _, stderr) = ltsr(&work, step);
            if code != 0 {
                o.failures.push(format!("order {order}: {} exited {code}: {stderr}", step[0]));
                break;
            }
        }
    }
    o.summary = format!(
        "1000 pairs (defect {hom:.1e}), 50 subgroups (conjugator residual {conj:.1e}), pipeline orders 2..5"
    );
    o
}

fn bounds_suite(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=8u64 {
        let r = bounds_report(BoundsInput {
            ltsr_a: 2,
            n,
            matrix_size: 1,
            ltsr_b: None,
        })
        .unwrap();
        o.check(r.outputs.cyclic_bound == 3, || format!("n={n}: cyclic bound {}", r.outputs.cyclic_bound));
        o.check(r.outputs.crossed_product_bound == 2 + n - 1, || {
            format!("n={n}: crossed product bound {}", r.outputs.crossed_product_bound)
        });
        o.check(r.outputs.matrix_formula == 2, || format!("matrix formula {}", r.outputs.matrix_formula));
    }
    let (code, _, stderr) = ltsr(dir, &["bounds", "--n", "3", "--ltsr-a", "2"]);
    let text = fs::read_to_string(dir.join("bounds.json")).unwrap_or_default();
    o.check(code == 0 && text.contains("\"crossed_product_bound\":4") && text.contains("\"cyclic_bound\":3"), || {
        format!("bounds command exited {code}: {stderr} {text}")
    });
    o.summary = "ltsr(A(D)) = 2 gives cyclic bound 3 and crossed product bound n + 1".into();
    o
}

fn cli_run(dir: &Path) -> Vec<(String, Vec<u8>)> {
    fs::create_dir_all(dir).unwrap();
    let runs: [&[&str]; 6] = [
        &["random", "--n", "3", "--seed", "9", "--out", "inputs"],
        &["cert-upper", "inputs/element-0.json", "inputs/element-1.json", "--seed", "9"],
        &["cert-lower", "--n", "4", "--epsilon", "0.05", "--seed", "9"],
        &["random-subgroup", "--n", "6", "--m", "5", "--seed", "9"],
        &["conjugate", "subgroup.json"],
        &["bounds", "--n", "5", "--ltsr-b", "3"],
    ];
    for args in runs {
        let (code, _, stderr) = ltsr(dir, args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
    }
    let mut files = Vec::new();
    for name in [
        "inputs/element-0.json",
        "inputs/element-1.json",
        "certificate.json",
        "obstruction.json",
        "subgroup.json",
        "conjugation.json",
        "bounds.json",
    ] {
        files.push((name.to_string(), fs::read(dir.join(name)).unwrap()));
    }
    files
}

fn determinism_suite(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let first = bezout_certificates(&dir.join("bezout-a"));
    let second = bezout_certificates(&dir.join("bezout-b"));
    let mut compared = 0;
    for ((p, _), (q, _)) in first.iter().zip(&second) {
        let (a, b) = (fs::read(p), fs::read(q));
        o.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || {
            format!("{} and {} differ", p.display(), q.display())
        });
        compared += 1;
    }
    let (a, b) = (cli_run(&dir.join("cli-a")), cli_run(&dir.join("cli-b")));
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        o.check(x == y, || format!("cli output {name} differs between runs"));
        compared += 1;
    }
    o.summary = format!("{compared} files byte-identical across two seeded runs");
    o
}

type Suite = fn(&Path) -> Outcome;

fn main() {
    let criteria: [(u32, &str, Suite, Duration); 8] = [
        (1, "quasi-basis", quasi_basis_suite, Duration::from_secs(5)),
        (2, "elimination", elimination_suite, Duration::from_secs(30)),
        (3, "ltsr <= 2 certificates", certificate_suite, Duration::from_secs(120)),
        (4, "ltsr >= 2 obstruction", winding_suite, Duration::from_secs(5)),
        (5, "lifting", lift_suite, Duration::from_secs(120)),
        (6, "moebius", moebius_suite, Duration::from_secs(60)),
        (7, "bounds", bounds_suite, Duration::from_secs(1)),
        (8, "determinism", determinism_suite, Duration::MAX),
    ];
    let root = tempfile::tempdir().unwrap();
    let mut failed = 0;
    for (id, name, suite, limit) in criteria {
        let dir = root.path().join(format!("criterion-{id}"));
        fs::create_dir_all(&dir).unwrap();
        let start = Instant::now();
        let mut outcome = suite(&dir);
        let elapsed = start.elapsed();
        if elapsed > limit {
            outcome.failures.push(format!("took {elapsed:.1?}, limit {limit:?}"));
        }
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id} [{status}] {name}: {} ({elapsed:.2?})", outcome.summary);
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
