//! Elimination cascade in `B_n = l1(Z/nZ, A, alpha)` and the two stable-rank
//! certificates built on it.
//!
//! For `a = sum_i a_i delta^i` the cascade is
//!
//! ```text
//! a^(1,j)   = (alpha^j(a_0) delta^0 - a_j delta^j) * a
//! a^(k+1,j) = a^(k,j+1)_j delta^j * a^(k,1) - (delta^j * a^(k,1))_j delta^0 * a^(k,j+1)
//! ```
//!
//! and ends at `a^(n-1,1)`, which is supported on `delta^0`. The same
//! recursion applied to left multipliers gives `L^(k,j)` with
//! `L^(k,j) * a = a^(k,j)`, so every level lies in the left ideal `B_n * a`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{det_on_circle, CrossedElement, GroupSpec};
use crate::error::EliminationError;
use crate::poly::{sylvester_bezout_within, winding_number, BezoutPair, Poly};
use crate::random;

/// Perturbation attempts after the zero-perturbation try.
pub const PERTURB_ATTEMPTS: usize = 64;
/// Fresh perturbations of the first element tried by the certificate search.
pub const FIRST_ROUNDS: usize = 4;
/// Certificates must reach `||c*a + d*b - delta^0||_1` below this.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-6;
/// Recomputed residuals and distances must agree with stored ones to this.
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;
/// A top-level polynomial below this fraction of its term scale counts as zero.
pub const TOP_NONZERO_REL: f64 = 1e-10;
/// Number of random perturbations re-checked by the winding obstruction.
pub const OBSTRUCTION_PERTURBATIONS: usize = 10;

/// Minimum distance kept between new top-level roots and an avoided set.
pub fn separation_threshold(avoid: &[Complex64]) -> f64 {
    let max = avoid.iter().map(|z| z.norm()).fold(0.0, f64::max);
    1e-4 * (1.0 + max)
}

/// Every level `a^(k,j)` of the cascade with its left multiplier.
#[derive(Clone, Debug)]
pub struct EliminationTrace {
    input: CrossedElement,
    levels: BTreeMap<(usize, usize), CrossedElement>,
    multipliers: BTreeMap<(usize, usize), CrossedElement>,
    // l1 norm of the two products subtracted to form each level
    scales: BTreeMap<(usize, usize), f64>,
}

/// Invariant residuals of a trace, all relative to the term scale of the level.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TraceReport {
    pub multiplier_residual: f64,
    pub vanishing_residual: f64,
    pub top_support_residual: f64,
}

impl TraceReport {
    pub fn holds(&self, multiplier_tol: f64, vanishing_tol: f64) -> bool {
        self.multiplier_residual < multiplier_tol
            && self.vanishing_residual < vanishing_tol
            && self.top_support_residual < vanishing_tol
    }
}

impl EliminationTrace {
    pub fn input(&self) -> &CrossedElement {
        &self.input
    }

    pub fn n(&self) -> usize {
        self.input.spec().n()
    }

    pub fn level(&self, k: usize, j: usize) -> Option<&CrossedElement> {
        self.levels.get(&(k, j))
    }

    pub fn multiplier(&self, k: usize, j: usize) -> Option<&CrossedElement> {
        self.multipliers.get(&(k, j))
    }

    /// Magnitude of the terms cancelled to form level `(k, j)`.
    pub fn scale(&self, k: usize, j: usize) -> Option<f64> {
        self.scales.get(&(k, j)).copied()
    }

    pub fn levels(&self) -> impl Iterator<Item = (&(usize, usize), &CrossedElement)> {
        self.levels.iter()
    }

    /// `a^(n-1,1)`.
    pub fn top(&self) -> &CrossedElement {
        &self.levels[&(self.n() - 1, 1)]
    }

    /// `L^(n-1,1)`.
    pub fn top_multiplier(&self) -> &CrossedElement {
        &self.multipliers[&(self.n() - 1, 1)]
    }

    /// `a^(n-1,1)_0`.
    pub fn top_poly(&self) -> &Poly {
        self.top().comp(0)
    }

    pub fn top_scale(&self) -> f64 {
        self.scales[&(self.n() - 1, 1)]
    }

    /// Whether `a^(n-1,1)_0` is nonzero relative to its term scale.
    pub fn top_is_nonzero(&self) -> bool {
        self.top_poly().wiener_norm() > TOP_NONZERO_REL * self.top_scale()
    }

    /// Checks `L^(k,j) * a = a^(k,j)`, the vanishing of components
    /// `j..j+k-1`, and the `delta^0` support of the top level.
    pub fn check_invariants(&self) -> TraceReport {
        let mut report = TraceReport::default();
        for (&(k, j), level) in &self.levels {
            let scale = self.scales[&(k, j)].max(f64::MIN_POSITIVE);
            let product = &self.multipliers[&(k, j)] * &self.input;
            let res = (&product - level).l1_norm() / scale;
            report.multiplier_residual = report.multiplier_residual.max(res);
            for i in j..j + k {
                let v = level.comp(i as i64).wiener_norm() / scale;
                report.vanishing_residual = report.vanishing_residual.max(v);
            }
        }
        let top = self.top();
        let off: f64 = top.comps()[1..].iter().map(Poly::wiener_norm).sum();
        report.top_support_residual = off / self.top_scale().max(f64::MIN_POSITIVE);
        report
    }
}

/// Runs the cascade on `a`, tracking left multipliers.
pub fn eliminate(a: &CrossedElement) -> Result<EliminationTrace, EliminationError> {
    let spec = a.spec().clone();
    let n = spec.n();
    if n < 2 {
        return Err(EliminationError::GroupTooSmall);
    }
    let mut levels = BTreeMap::new();
    let mut multipliers = BTreeMap::new();
    let mut scales = BTreeMap::new();

    for j in 1..n {
        let first = CrossedElement::from_poly(&spec, spec.act(a.comp(0), j as i64));
        let second = CrossedElement::monomial(&spec, a.comp(j as i64).clone(), j as i64);
        let t1 = &first * a;
        let t2 = &second * a;
        scales.insert((1, j), t1.l1_norm() + t2.l1_norm());
        levels.insert((1, j), &t1 - &t2);
        multipliers.insert((1, j), &first - &second);
    }

    for k in 1..n - 1 {
        let base = levels[&(k, 1)].clone();
        let base_mult = multipliers[&(k, 1)].clone();
        for j in 1..n - k {
            let next = &levels[&(k, j + 1)];
            let next_mult = &multipliers[&(k, j + 1)];
            let left = CrossedElement::monomial(&spec, next.comp(j as i64).clone(), j as i64);
            let shifted = &CrossedElement::delta(&spec, j as i64) * &base;
            let right = CrossedElement::from_poly(&spec, shifted.comp(j as i64).clone());
            let t1 = &left * &base;
            let t2 = &right * next;
            scales.insert((k + 1, j), t1.l1_norm() + t2.l1_norm());
            levels.insert((k + 1, j), &t1 - &t2);
            multipliers.insert(
                (k + 1, j),
                &(&left * &base_mult) - &(&right * next_mult),
            );
        }
    }

    Ok(EliminationTrace {
        input: a.clone(),
        levels,
        multipliers,
        scales,
    })
}

/// Outcome of comparing the traces of `lambda a` and `a`.
#[derive(Clone, Debug)]
pub struct HomogeneityReport {
    pub lambda: Complex64,
    /// Per-level relative error, in cascade order.
    pub levels: Vec<((usize, usize), f64)>,
    pub max_relative_error: f64,
}

/// Checks that level `k` of the cascade is homogeneous of degree `2^k`.
///
/// Relative errors are measured against `|lambda|^{2^k}` times the term scale
/// of the unscaled level, so levels that cancel almost completely are not
/// compared against their own rounding noise.
pub fn homogeneity_scale_check(
    a: &CrossedElement,
    lambda: Complex64,
) -> Result<HomogeneityReport, EliminationError> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(EliminationError::InvalidArgument("lambda must be nonzero".into()));
    }
    let base = eliminate(a)?;
    let scaled = eliminate(&a.scale(lambda))?;
    let mut levels = Vec::new();
    let mut max_relative_error: f64 = 0.0;
    for (&(k, j), level) in base.levels() {
        let factor = lambda.powu(1 << k);
        let expected = level.scale(factor);
        let got = scaled.level(k, j).expect("same level set");
        let denom = factor.norm() * base.scale(k, j).unwrap().max(f64::MIN_POSITIVE);
        let err = (got - &expected).l1_norm() / denom;
        max_relative_error = max_relative_error.max(err);
        levels.push(((k, j), err));
    }
    Ok(HomogeneityReport {
        lambda,
        levels,
        max_relative_error,
    })
}

/// A perturbed element together with its cascade and top-level roots.
#[derive(Clone, Debug)]
pub struct Perturbed {
    pub element: CrossedElement,
    pub trace: EliminationTrace,
    pub top_roots: Vec<Complex64>,
    /// Smallest distance from a top-level root to the avoided set.
    pub separation: f64,
    /// Number of random attempts used (0 when the input was accepted as is).
    pub attempts: usize,
}

/// Tries `a` itself, then up to [`PERTURB_ATTEMPTS`] random shifts of the
/// constant coefficient of `a_0` (attempt `t` uses modulus
/// `eps/2 (1 - t/128)`), until the top level is nonzero, its roots keep
/// [`separation_threshold`] from `avoid`, and `accept` succeeds.
fn perturb_until<T, R: Rng + ?Sized>(
    a: &CrossedElement,
    avoid: &[Complex64],
    eps: f64,
    first_attempt: usize,
    rng: &mut R,
    mut accept: impl FnMut(&Perturbed) -> Result<T, String>,
) -> Result<(Perturbed, T), EliminationError> {
    if !(eps > 0.0) {
        return Err(EliminationError::InvalidArgument(format!(
            "perturbation budget must be positive, got {eps}"
        )));
    }
    let required = separation_threshold(avoid);
    let mut best_separation: f64 = 0.0;
    let mut last_failure = String::from("none");
    for attempt in first_attempt..=PERTURB_ATTEMPTS {
        let element = if attempt == 0 {
            a.clone()
        } else {
            let t = (attempt - 1) as f64;
            let shift = random::complex_on_circle(rng, eps / 2.0 * (1.0 - t / 128.0));
            let mut b = a.clone();
            let c0 = b.comp(0);
            let mut coeffs = c0.coeffs().to_vec();
            if coeffs.is_empty() {
                coeffs.push(shift);
            } else {
                coeffs[0] += shift;
            }
            b.set_comp(0, Poly::new(coeffs));
            b
        };
        let trace = eliminate(&element)?;
        if !trace.top_is_nonzero() {
            last_failure = "top-level polynomial vanishes".into();
            continue;
        }
        let top_roots = trace.top_poly().roots()?;
        let separation = top_roots
            .iter()
            .flat_map(|r| avoid.iter().map(move |s| (r - s).norm()))
            .fold(f64::INFINITY, f64::min);
        best_separation = best_separation.max(separation);
        if separation <= required {
            last_failure = format!("root separation {separation:e}");
            continue;
        }
        let candidate = Perturbed {
            element,
            trace,
            top_roots,
            separation,
            attempts: attempt,
        };
        match accept(&candidate) {
            Ok(extra) => return Ok((candidate, extra)),
            Err(reason) => last_failure = reason,
        }
    }
    Err(EliminationError::PerturbationExhausted {
        attempts: PERTURB_ATTEMPTS,
        best_separation,
        required,
        last_failure,
    })
}

/// Moves `a` by less than `eps` (only the constant coefficient of `a_0`
/// changes) so that `a^(n-1,1)_0` is nonzero and its roots avoid `avoid`.
pub fn perturb_disjoint<R: Rng + ?Sized>(
    a: &CrossedElement,
    avoid: &[Complex64],
    eps: f64,
    rng: &mut R,
) -> Result<Perturbed, EliminationError> {
    perturb_until(a, avoid, eps, 0, rng, |_| Ok(())).map(|(p, ())| p)
}

/// Explicit witness that `(a, b)` generates `B_n` as a left ideal, with
/// `a` and `b` close to the requested `(x, y)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    pub n: usize,
    pub m: i64,
    pub inputs: ElementPair,
    pub approximants: ElementPair,
    pub cofactors: ElementPair,
    pub epsilon: f64,
    pub residual: f64,
    pub distances: [f64; 2],
    pub seed: Option<u64>,
    pub tolerances: CertificateTolerances,
    pub diagnostics: BezoutDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementPair {
    pub first: CrossedElement,
    pub second: CrossedElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateTolerances {
    pub certificate: f64,
    pub agreement: f64,
}

impl Default for CertificateTolerances {
    fn default() -> Self {
        Self {
            certificate: CERTIFICATE_TOLERANCE,
            agreement: AGREEMENT_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BezoutDiagnostics {
    pub attempts_first: usize,
    pub attempts_second: usize,
    pub top_degrees: [Option<usize>; 2],
    /// `None` when one top polynomial is constant and has no roots.
    pub min_root_distance: Option<f64>,
    pub sylvester_condition: f64,
    pub polynomial_residual: f64,
}

/// Builds a Bezout certificate for `(x, y)` at accuracy `eps`.
///
/// `x` is moved within `eps/2` until its top level is nonzero; `y` is moved
/// within `eps/2` until its top-level roots avoid those of `x`, the Sylvester
/// system for the two top polynomials solves, and the assembled cofactors
/// `c = p delta^0 * L_a`, `d = q delta^0 * L_b` meet the certificate tolerance.
pub fn ltsr_upper_certificate<R: Rng + ?Sized>(
    x: &CrossedElement,
    y: &CrossedElement,
    eps: f64,
    rng: &mut R,
) -> Result<BezoutCertificate, EliminationError> {
    if x.spec() != y.spec() {
        return Err(crate::error::AlgebraError::GroupMismatch(
            x.spec().n(),
            x.spec().m(),
            y.spec().n(),
            y.spec().m(),
        )
        .into());
    }
    let spec = x.spec().clone();
    if spec.n() < 2 {
        return Err(EliminationError::GroupTooSmall);
    }
    if !(eps > 0.0) {
        return Err(EliminationError::InvalidArgument(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    let unit = CrossedElement::one(&spec);
    let mut round = 0;
    let (a, b, (bez, c, d, residual)) = loop {
        let first = usize::from(round > 0);
        let (a, ()) = perturb_until(x, &[], eps / 2.0, first, rng, |_| Ok(()))?;
        let la = a.trace.top_multiplier().clone();
        let fa = direct_top(&a.trace, &a.element);
        let found = perturb_until(y, &a.top_roots, eps / 2.0, 0, rng, |cand| {
            let fb = direct_top(&cand.trace, &cand.element);
            let bez: BezoutPair = sylvester_bezout_within(&fa, &fb, CERTIFICATE_TOLERANCE)
                .map_err(|e| e.to_string())?;
            let c = &CrossedElement::from_poly(&spec, bez.p.clone()) * &la;
            let d = &CrossedElement::from_poly(&spec, bez.q.clone()) * cand.trace.top_multiplier();
            let residual = CrossedElement::combination_residual(
                &[(&c, &a.element), (&d, &cand.element)],
                &unit,
            )
            .map_err(|e| e.to_string())?
            .l1_norm();
            if residual < CERTIFICATE_TOLERANCE {
                Ok((bez, c, d, residual))
            } else {
                Err(format!("certificate residual {residual:e}"))
            }
        });
        match found {
            Ok((b, extra)) => break (a, b, extra),
            // a badly conditioned top polynomial for `x` cannot be repaired
            // by moving `y`, so start over from a fresh perturbation of `x`
            Err(e) if round + 1 >= FIRST_ROUNDS => return Err(e),
            Err(_) => round += 1,
        }
    };
    let top_a = a.trace.top_poly().clone();

    let distances = [
        (x - &a.element).l1_norm(),
        (y - &b.element).l1_norm(),
    ];
    Ok(BezoutCertificate {
        n: spec.n(),
        m: spec.m(),
        inputs: ElementPair {
            first: x.clone(),
            second: y.clone(),
        },
        diagnostics: BezoutDiagnostics {
            attempts_first: round * (PERTURB_ATTEMPTS + 1) + a.attempts,
            attempts_second: b.attempts,
            top_degrees: [top_a.degree(), b.trace.top_poly().degree()],
            min_root_distance: Some(bez.min_root_distance).filter(|d| d.is_finite()),
            sylvester_condition: bez.condition,
            polynomial_residual: bez.residual,
        },
        approximants: ElementPair {
            first: a.element,
            second: b.element,
        },
        cofactors: ElementPair {
            first: c,
            second: d,
        },
        epsilon: eps,
        residual,
        distances,
        seed: None,
        tolerances: CertificateTolerances::default(),
    })
}

/// Component 0 of `L * a` recomputed by one convolution and cut to the
/// cascade's top degree. Rounding accumulated along the cascade makes the
/// recursive top polynomial drift from this product, and the drift is
/// amplified by the Bezout cofactors.
fn direct_top(trace: &EliminationTrace, a: &CrossedElement) -> Poly {
    let full = (trace.top_multiplier() * a).comp(0).clone();
    let len = trace.top_poly().degree().map_or(0, |d| d + 1);
    Poly::new(full.coeffs().iter().take(len).copied().collect())
}

/// Winding data of one element near `z delta^0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationCheck {
    pub element: CrossedElement,
    pub distance: f64,
    pub circle_min: f64,
    pub winding: i64,
}

/// Evidence that no element within `delta` of `z delta^0` is left invertible:
/// `det pi(b)(z)` stays away from zero on the circle and winds `n` times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingObstruction {
    pub n: usize,
    pub m: i64,
    pub delta: f64,
    pub margin_exponent: u32,
    pub samples: usize,
    pub element: CrossedElement,
    pub circle_min: f64,
    pub winding: i64,
    /// Winding of the same element at four times the sample count.
    pub winding_refined: i64,
    pub perturbations: Vec<PerturbationCheck>,
    pub seed: Option<u64>,
}

impl WindingObstruction {
    /// `circle_min > 0`, every winding equals `n`, every perturbation is within `delta`.
    pub fn certifies(&self) -> bool {
        self.circle_min > 0.0
            && self.winding == self.n as i64
            && self.winding_refined == self.n as i64
            && self.perturbations.iter().all(|p| {
                p.circle_min > 0.0 && p.winding == self.n as i64 && p.distance < self.delta
            })
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Margin guard `(1 - delta)^e > n! delta^e`.
pub fn margin_holds(n: usize, delta: f64, exponent: u32) -> bool {
    let e = exponent as i32;
    delta > 0.0 && delta < 1.0 && (1.0 - delta).powi(e) > factorial(n) * delta.powi(e)
}

/// `(min |det pi(x)(z)|, winding)` over `samples` circle points.
pub fn determinant_winding(
    x: &CrossedElement,
    samples: usize,
) -> Result<(f64, i64), EliminationError> {
    let path = det_on_circle(&x.embed_matrix(), samples)?;
    Ok((path.min_modulus(), winding_number(&path)?))
}

/// Winding obstruction around `z delta^0`.
///
/// `margin_exponent` defaults to `n`. Random perturbations have Wiener-norm
/// distance uniformly spread in `(0, delta)` and degree at most 4.
pub fn ltsr_lower_obstruction<R: Rng + ?Sized>(
    spec: &GroupSpec,
    delta: f64,
    samples: usize,
    margin_exponent: Option<u32>,
    rng: &mut R,
) -> Result<WindingObstruction, EliminationError> {
    let n = spec.n();
    let exponent = margin_exponent.unwrap_or(n as u32);
    if !margin_holds(n, delta, exponent) {
        return Err(EliminationError::InvalidArgument(format!(
            "delta = {delta} violates (1 - delta)^{exponent} > {n}! delta^{exponent}"
        )));
    }
    let element = CrossedElement::from_poly(spec, Poly::z());
    let (circle_min, winding) = determinant_winding(&element, samples)?;
    let (_, winding_refined) = determinant_winding(&element, samples * 4)?;

    let mut perturbations = Vec::with_capacity(OBSTRUCTION_PERTURBATIONS);
    for _ in 0..OBSTRUCTION_PERTURBATIONS {
        let direction = random::crossed_element(rng, spec, 4);
        let norm = direction.l1_norm();
        let target = delta * rng.random_range(0.05..0.99);
        let shift = direction.scale(Complex64::new(target / norm, 0.0));
        let b = &element + &shift;
        let (min, w) = determinant_winding(&b, samples)?;
        perturbations.push(PerturbationCheck {
            distance: (&b - &element).l1_norm(),
            element: b,
            circle_min: min,
            winding: w,
        });
    }
    Ok(WindingObstruction {
        n,
        m: spec.m(),
        delta,
        margin_exponent: exponent,
        samples,
        element,
        circle_min,
        winding,
        winding_refined,
        perturbations,
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng_from_seed;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_trivial_group() {
        let spec = GroupSpec::principal(1).unwrap();
        assert!(matches!(
            eliminate(&CrossedElement::one(&spec)),
            Err(EliminationError::GroupTooSmall)
        ));
    }

    #[test]
    fn n2_closed_form_example() {
        let spec = GroupSpec::principal(2).unwrap();
        let a = CrossedElement::new(spec, vec![Poly::z(), Poly::one()]).unwrap();
        let trace = eliminate(&a).unwrap();
        let top = trace.top();
        assert!((top.comp(0) - &Poly::from_real(&[-1.0, 0.0, -1.0])).wiener_norm() < 1e-15);
        assert!(top.comp(1).wiener_norm() < 1e-15);
    }

    #[test]
    fn homogeneity_examples() {
        let spec = GroupSpec::principal(2).unwrap();
        let mut rng = rng_from_seed(11);
        let a = random::crossed_element(&mut rng, &spec, 3);
        let r = homogeneity_scale_check(&a, c(1.0, 0.0)).unwrap();
        assert_eq!(r.max_relative_error, 0.0);
        let t1 = eliminate(&a).unwrap();
        let t2 = eliminate(&a.scale(c(2.0, 0.0))).unwrap();
        let diff = t2.top_poly() - &t1.top_poly().scale(c(4.0, 0.0));
        assert!(diff.wiener_norm() <= 1e-12 * t2.top_poly().wiener_norm());
        assert!(homogeneity_scale_check(&a, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn perturbation_zero_when_admissible() {
        let spec = GroupSpec::principal(2).unwrap();
        let a = CrossedElement::new(spec, vec![Poly::z(), Poly::one()]).unwrap();
        let p = perturb_disjoint(&a, &[], 0.1, &mut rng_from_seed(1)).unwrap();
        assert_eq!(p.attempts, 0);
        assert_eq!(p.element, a);
    }

    #[test]
    fn perturbation_moves_roots_off_avoided_points() {
        let spec = GroupSpec::principal(2).unwrap();
        let a = CrossedElement::new(spec, vec![Poly::z(), Poly::one()]).unwrap();
        let avoid = [c(0.0, 1.0)];
        let p = perturb_disjoint(&a, &avoid, 0.1, &mut rng_from_seed(5)).unwrap();
        assert!(p.attempts >= 1);
        assert!((&a - &p.element).l1_norm() < 0.1);
        for r in &p.top_roots {
            assert!((r - avoid[0]).norm() > separation_threshold(&avoid));
        }
        // only the constant coefficient of a_0 moved
        let diff = &a - &p.element;
        assert_eq!(diff.comp(0).degree(), Some(0));
        assert!(diff.comp(1).is_zero());
    }

    #[test]
    fn margin_guard() {
        assert!(margin_holds(2, 0.1, 2));
        assert!(!margin_holds(2, 0.5, 2));
        assert!(!margin_holds(3, 0.0, 3));
        let spec = GroupSpec::principal(2).unwrap();
        assert!(ltsr_lower_obstruction(&spec, 0.6, 1024, None, &mut rng_from_seed(0)).is_err());
    }

    #[test]
    fn lower_obstruction_examples() {
        let mut rng = rng_from_seed(2);
        let spec = GroupSpec::principal(2).unwrap();
        let w = ltsr_lower_obstruction(&spec, 0.1, 1024, None, &mut rng).unwrap();
        assert_eq!(w.winding, 2);
        assert!(w.circle_min >= 1.0 - 2.0 * 0.1);
        for p in &w.perturbations {
            assert!(p.circle_min > (1.0 - 0.1f64).powi(2));
        }
        assert!(w.certifies());

        let spec = GroupSpec::principal(3).unwrap();
        let w = ltsr_lower_obstruction(&spec, 0.05, 1024, None, &mut rng).unwrap();
        assert_eq!(w.winding, 3);
        assert!(w.certifies());

        let spec = GroupSpec::principal(1).unwrap();
        let w = ltsr_lower_obstruction(&spec, 0.05, 1024, None, &mut rng).unwrap();
        assert_eq!(w.winding, 1);
    }

    #[test]
    fn upper_certificate_for_unit() {
        for n in 2..=4 {
            let spec = GroupSpec::principal(n).unwrap();
            let x = CrossedElement::one(&spec);
            let y = CrossedElement::zero(&spec);
            let cert = ltsr_upper_certificate(&x, &y, 0.1, &mut rng_from_seed(3)).unwrap();
            assert_eq!(cert.approximants.first, x);
            assert!((&cert.cofactors.first - &x).l1_norm() < 1e-15);
            assert!(cert.residual < 1e-15);
        }
    }

    #[test]
    fn upper_certificate_n2_example() {
        let spec = GroupSpec::principal(2).unwrap();
        let x = CrossedElement::new(spec.clone(), vec![Poly::z(), Poly::one()]).unwrap();
        let y = CrossedElement::from_poly(&spec, Poly::from_real(&[-0.5, 1.0]));
        let cert = ltsr_upper_certificate(&x, &y, 0.1, &mut rng_from_seed(9)).unwrap();
        assert!(cert.residual < CERTIFICATE_TOLERANCE);
        assert!(cert.distances.iter().all(|&d| d < 0.1));
        // re-verification by convolution
        let combo = &(&cert.cofactors.first * &cert.approximants.first)
            + &(&cert.cofactors.second * &cert.approximants.second);
        let res = (&combo - &CrossedElement::one(&spec)).l1_norm();
        let fused = CrossedElement::combination_residual(
            &[
                (&cert.cofactors.first, &cert.approximants.first),
                (&cert.cofactors.second, &cert.approximants.second),
            ],
            &CrossedElement::one(&spec),
        )
        .unwrap()
        .l1_norm();
        assert!((fused - cert.residual).abs() < AGREEMENT_TOLERANCE);
        assert!((res - cert.residual).abs() < AGREEMENT_TOLERANCE);
    }
}
