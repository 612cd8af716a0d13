//! Dense complex polynomials in one variable.
//!
//! `Poly` is the working model of a disk-algebra element. Coefficients are
//! stored in ascending order of power and kept normalized: the zero
//! polynomial is the empty vector, otherwise the last coefficient is nonzero
//! (after trimming trailing coefficients that are negligible relative to the
//! largest one).

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PolyError;

/// Trailing coefficients at or below this fraction of the largest coefficient
/// are dropped when a polynomial is normalized.
pub const TRIM_REL: f64 = 1e-12;
/// Two polynomials whose roots come closer than this are treated as sharing a root.
pub const COPRIME_ROOT_DISTANCE: f64 = 1e-6;
/// Sylvester systems with a larger 2-norm condition number are rejected.
pub const SYLVESTER_CONDITION_CAP: f64 = 1e12;
/// Maximum Wiener-norm residual accepted for `p f + q g - 1`.
pub const BEZOUT_TOLERANCE: f64 = 1e-8;
/// Smallest sample count accepted for a circle path.
pub const MIN_CIRCLE_SAMPLES: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming with [`TRIM_REL`].
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self::with_trim(coeffs, TRIM_REL)
    }

    /// Builds a polynomial, dropping trailing coefficients whose modulus is at
    /// most `rel` times the largest modulus. `rel = 0` drops exact zeros only.
    pub fn with_trim(mut coeffs: Vec<Complex64>, rel: f64) -> Self {
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            coeffs.clear();
            return Self { coeffs };
        }
        let cutoff = rel * max;
        while let Some(last) = coeffs.last() {
            if last.norm() <= cutoff {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::with_trim(vec![c], 0.0)
    }

    /// `c z^k`
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = c;
        Self::with_trim(coeffs, 0.0)
    }

    /// The coordinate function `z`.
    pub fn z() -> Self {
        Self::monomial(ONE, 1)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self::with_trim(coeffs, 0.0)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::with_trim(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
            0.0,
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Replaces each coefficient `c_k` by `f(k, c_k)`.
    pub fn map_coeffs(&self, mut f: impl FnMut(usize, Complex64) -> Complex64) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, &c)| f(k, c)).collect())
    }

    /// `f(z) -> f(w z)`, i.e. `c_k -> w^k c_k`.
    pub fn compose_scaling(&self, w: Complex64) -> Self {
        let mut pow = ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * pow);
            pow *= w;
        }
        Self::new(out)
    }

    /// Sum of coefficient moduli. Submultiplicative and dominates the sup
    /// norm on the closed disk.
    pub fn wiener_norm(&self) -> f64 {
        // folding from +0.0 keeps the norm of zero from printing as -0
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, |s, x| s + x)
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// All `deg f` roots with multiplicity.
    ///
    /// Exact zero low-order coefficients are split off as roots at the origin.
    /// The rest come from the eigenvalues of the balanced companion matrix of
    /// the monic normalization, each followed by one Newton step that is kept
    /// only when it lowers the residual.
    pub fn roots(&self) -> Result<Vec<Complex64>, PolyError> {
        let degree = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        let shift = self.coeffs.iter().take_while(|c| **c == ZERO).count();
        let mut roots = vec![ZERO; shift];
        let reduced = &self.coeffs[shift..];
        let d = reduced.len() - 1;
        if d == 0 {
            return Ok(roots);
        }
        let lead = reduced[d];
        let mut companion = DMatrix::<Complex64>::zeros(d, d);
        for k in 0..d {
            companion[(0, k)] = -reduced[d - 1 - k] / lead;
        }
        for k in 1..d {
            companion[(k, k - 1)] = ONE;
        }
        balance(&mut companion);
        let eig = nalgebra::Schur::try_new(companion.clone(), f64::EPSILON, 10_000)
            .and_then(|s| s.eigenvalues())
            .ok_or(PolyError::EigenSolver)?;
        let deriv = self.derivative();
        for &r in eig.iter() {
            roots.push(newton_polish(self, &deriv, r));
        }
        debug_assert_eq!(roots.len(), degree);
        Ok(roots)
    }

    /// Relative Wiener-norm distance between `f / lead(f)` and the monic
    /// polynomial rebuilt from `roots`.
    pub fn recomposition_residual(&self, roots: &[Complex64]) -> f64 {
        let Some(lead) = self.leading() else {
            return 0.0;
        };
        let monic = self.scale(ONE / lead);
        let rebuilt = Self::from_roots(roots);
        (&monic - &rebuilt).wiener_norm() / monic.wiener_norm()
    }
}

fn newton_polish(f: &Poly, deriv: &Poly, r: Complex64) -> Complex64 {
    let value = f.eval(r);
    let slope = deriv.eval(r);
    if slope == ZERO || !slope.is_finite() {
        return r;
    }
    let candidate = r - value / slope;
    if candidate.is_finite() && f.eval(candidate).norm() < value.norm() {
        candidate
    } else {
        r
    }
}

/// Diagonal similarity balancing (Parlett-Reinsch, powers of two).
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].l1_norm();
                    r += m[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut c2 = c;
            let mut r2 = r;
            while c2 < r2 / radix {
                c2 *= radix;
                r2 /= radix;
                f *= radix;
            }
            while c2 >= r2 * radix {
                c2 /= radix;
                r2 *= radix;
                f /= radix;
            }
            if (c2 + r2) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc = ProductSum::default();
        acc.add_product(self, rhs);
        acc.finish()
    }
}

/// Accumulates sums of polynomial products with compensated arithmetic
/// (error-free products via `mul_add`, error-free sums via TwoSum), so long
/// convolutions round about once instead of once per term.
#[derive(Clone, Debug, Default)]
pub struct ProductSum {
    hi: Vec<[f64; 2]>,
    lo: Vec<[f64; 2]>,
    /// Sum of term moduli per coefficient.
    bound: Vec<f64>,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

impl ProductSum {
    #[inline]
    fn push(&mut self, k: usize, part: usize, x: f64, y: f64) {
        let p = x * y;
        let e = x.mul_add(y, -p);
        let (s, err) = two_sum(self.hi[k][part], p);
        self.hi[k][part] = s;
        self.lo[k][part] += err + e;
    }

    fn grow(&mut self, len: usize) {
        if self.hi.len() < len {
            self.hi.resize(len, [0.0; 2]);
            self.lo.resize(len, [0.0; 2]);
            self.bound.resize(len, 0.0);
        }
    }

    /// Adds `a * b`.
    pub fn add_product(&mut self, a: &Poly, b: &Poly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.grow(a.coeffs.len() + b.coeffs.len() - 1);
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                let k = i + j;
                self.bound[k] += x.norm() * y.norm();
                self.push(k, 0, x.re, y.re);
                self.push(k, 0, -x.im, y.im);
                self.push(k, 1, x.re, y.im);
                self.push(k, 1, x.im, y.re);
            }
        }
    }

    /// Adds `a` itself.
    pub fn add_poly(&mut self, a: &Poly) {
        self.grow(a.coeffs.len());
        for (k, c) in a.coeffs.iter().enumerate() {
            self.bound[k] += c.norm();
            self.push(k, 0, c.re, 1.0);
            self.push(k, 1, c.im, 1.0);
        }
    }

    /// Rounds the sum. A trailing coefficient is dropped only when it is
    /// below [`TRIM_REL`] relative both to the largest coefficient and to the
    /// moduli of the terms that produced it, so cancellation noise goes but
    /// genuinely small coefficients of large products stay.
    pub fn finish(self) -> Poly {
        let mut coeffs: Vec<Complex64> = self
            .hi
            .iter()
            .zip(&self.lo)
            .map(|(h, l)| Complex64::new(h[0] + l[0], h[1] + l[1]))
            .collect();
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while let Some(last) = coeffs.last() {
            let k = coeffs.len() - 1;
            let r = last.norm();
            if r == 0.0 || (r <= TRIM_REL * max && r <= TRIM_REL * self.bound[k]) {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly { coeffs }
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| [c.re, c.im]))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        Ok(Poly::with_trim(
            pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
            0.0,
        ))
    }
}

/// The twist `c_k -> omega^{j k} c_k`, i.e. `f(omega^j z)`, after checking
/// that `omega^n = 1` to within `1e-12`.
pub fn rotate(f: &Poly, omega: Complex64, n: usize, j: i64) -> Result<Poly, PolyError> {
    let residual = (omega.powu(n as u32) - ONE).norm();
    if n == 0 || residual > 1e-12 {
        return Err(PolyError::NotRootOfUnity { n, residual });
    }
    let j = j.rem_euclid(n as i64) as u32;
    Ok(f.compose_scaling(omega.powu(j)))
}

/// Result of [`sylvester_bezout`]: `p f + q g = 1` with `deg p < deg g`,
/// `deg q < deg f`.
#[derive(Clone, Debug)]
pub struct BezoutPair {
    pub p: Poly,
    pub q: Poly,
    pub residual: f64,
    pub condition: f64,
    pub min_root_distance: f64,
}

/// Smallest distance between a root of `f` and a root of `g`
/// (`+inf` when either is constant).
pub fn min_root_distance(f: &Poly, g: &Poly) -> Result<f64, PolyError> {
    let rf = f.roots()?;
    let rg = g.roots()?;
    Ok(rf
        .iter()
        .flat_map(|a| rg.iter().map(move |b| (a - b).norm()))
        .fold(f64::INFINITY, f64::min))
}

/// Solves `p f + q g = 1` through the Sylvester linear system.
///
/// Both inputs are scaled to unit Wiener norm before solving. The pair is
/// rejected when roots of `f` and `g` come within [`COPRIME_ROOT_DISTANCE`]
/// or the system's condition number exceeds [`SYLVESTER_CONDITION_CAP`].
pub fn sylvester_bezout(f: &Poly, g: &Poly) -> Result<BezoutPair, PolyError> {
    sylvester_bezout_within(f, g, BEZOUT_TOLERANCE)
}

/// [`sylvester_bezout`] with a caller-chosen bound on `||p f + q g - 1||`.
pub fn sylvester_bezout_within(f: &Poly, g: &Poly, tolerance: f64) -> Result<BezoutPair, PolyError> {
    let (Some(m), Some(k)) = (f.degree(), g.degree()) else {
        return Err(PolyError::ZeroPolynomial);
    };
    if m + k == 0 {
        let p = Poly::constant(ONE / f.coeff(0));
        let residual = (&(&p * f) - &Poly::one()).wiener_norm();
        return Ok(BezoutPair {
            p,
            q: Poly::zero(),
            residual,
            condition: 1.0,
            min_root_distance: f64::INFINITY,
        });
    }
    let rf = f.roots()?;
    let rg = g.roots()?;
    let min_dist = rf
        .iter()
        .flat_map(|a| rg.iter().map(move |b| (a - b).norm()))
        .fold(f64::INFINITY, f64::min);
    if min_dist < COPRIME_ROOT_DISTANCE {
        return Err(PolyError::CoprimalityFailure {
            min_root_distance: min_dist,
            condition: f64::NAN,
        });
    }

    // Candidate variable scalings z -> s z: the identity plus geometric means
    // of the root moduli, which balance the coefficient magnitudes.
    let mut scales = vec![1.0];
    for set in [&rf[..], &rg[..]] {
        if let Some(s) = geometric_modulus(set.iter()) {
            scales.push(s);
        }
    }
    if let Some(s) = geometric_modulus(rf.iter().chain(rg.iter())) {
        scales.push(s);
    }

    let mut best: Option<BezoutPair> = None;
    let mut best_condition = f64::INFINITY;
    for s in scales {
        let Some((p, q, condition)) = solve_scaled(f, g, m, k, s) else {
            continue;
        };
        best_condition = best_condition.min(condition);
        if !(condition <= SYLVESTER_CONDITION_CAP) {
            continue;
        }
        let residual = (&(&(&p * f) + &(&q * g)) - &Poly::one()).wiener_norm();
        if residual.is_finite() && best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(BezoutPair {
                p,
                q,
                residual,
                condition,
                min_root_distance: min_dist,
            });
        }
    }
    let Some(best) = best else {
        return Err(PolyError::CoprimalityFailure {
            min_root_distance: min_dist,
            condition: best_condition,
        });
    };
    if !(best.residual < tolerance) {
        return Err(PolyError::BezoutResidual {
            residual: best.residual,
        });
    }
    Ok(best)
}

fn geometric_modulus<'a>(roots: impl Iterator<Item = &'a Complex64>) -> Option<f64> {
    let (sum, count) = roots
        .map(|r| r.norm())
        .filter(|r| *r > 0.0 && r.is_finite())
        .fold((0.0, 0usize), |(s, c), r| (s + r.ln(), c + 1));
    if count == 0 {
        return None;
    }
    let s = (sum / count as f64).exp();
    (s.is_finite() && (s - 1.0).abs() > 1e-3).then_some(s)
}

/// Solves the Sylvester system for `f(s z)`, `g(s z)` and maps the solution
/// back. Returns `(p, q, condition)`.
fn solve_scaled(f: &Poly, g: &Poly, m: usize, k: usize, s: f64) -> Option<(Poly, Poly, f64)> {
    let raw = |p: &Poly| {
        Poly::with_trim(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| c * s.powi(j as i32))
                .collect(),
            0.0,
        )
    };
    let fs = raw(f);
    let gs = raw(g);
    let f_scale = fs.wiener_norm();
    let g_scale = gs.wiener_norm();
    if !(f_scale.is_finite() && g_scale.is_finite() && f_scale > 0.0 && g_scale > 0.0) {
        return None;
    }
    let fh = fs.scale(Complex64::from(1.0 / f_scale));
    let gh = gs.scale(Complex64::from(1.0 / g_scale));
    let size = m + k;
    let mut sys = DMatrix::<Complex64>::zeros(size, size);
    for i in 0..k {
        for (l, &c) in fh.coeffs().iter().enumerate().take(m + 1) {
            sys[(i + l, i)] = c;
        }
    }
    for i in 0..m {
        for (l, &c) in gh.coeffs().iter().enumerate().take(k + 1) {
            sys[(i + l, k + i)] = c;
        }
    }
    let sv = sys.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };

    let mut rhs = DVector::<Complex64>::zeros(size);
    rhs[0] = ONE;
    let lu = sys.clone().lu();
    let mut x = lu.solve(&rhs)?;
    for _ in 0..2 {
        let r = &rhs - &sys * &x;
        if let Some(dx) = lu.solve(&r) {
            x += dx;
        }
    }

    // undo z -> s z: coefficient j picks up s^{-j}
    let unscale = |coeffs: Vec<Complex64>, norm: f64| {
        Poly::new(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(j, c)| c / (norm * s.powi(j as i32)))
                .collect(),
        )
    };
    let p = unscale(x.iter().take(k).copied().collect(), f_scale);
    let q = unscale(x.iter().skip(k).copied().collect(), g_scale);
    Some((p, q, condition))
}

/// `m` equispaced points `e^{2 pi i k / m}` on the unit circle.
pub fn circle_points(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / m as f64))
        .collect()
}

/// Values of a function at equispaced points of the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePath {
    samples: Vec<Complex64>,
}

impl CirclePath {
    pub fn new(samples: Vec<Complex64>) -> Result<Self, PolyError> {
        if samples.len() < MIN_CIRCLE_SAMPLES {
            return Err(PolyError::TooFewSamples(samples.len()));
        }
        Ok(Self { samples })
    }

    /// Samples `f` at `m` circle points.
    pub fn sample(m: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self, PolyError> {
        Self::new(circle_points(m).into_iter().map(f).collect())
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn min_modulus(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Pointwise product; both paths must have the same sample count.
    pub fn pointwise_mul(&self, other: &CirclePath) -> Result<CirclePath, PolyError> {
        if self.len() != other.len() {
            return Err(PolyError::SampleCountMismatch(self.len(), other.len()));
        }
        Ok(CirclePath {
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// Total phase change of a closed path divided by `2 pi`.
///
/// Every consecutive phase jump (including the closing one) must stay below
/// `pi / 2`; otherwise the path is reported as undersampled.
pub fn winding_number(path: &CirclePath) -> Result<i64, PolyError> {
    let s = path.samples();
    if let Some(index) = s.iter().position(|c| *c == ZERO || !c.is_finite()) {
        return Err(PolyError::ZeroSample { index });
    }
    let m = s.len();
    let mut total = 0.0;
    for k in 0..m {
        let jump = (s[(k + 1) % m] / s[k]).arg();
        if jump.abs() >= FRAC_PI_2 {
            return Err(PolyError::UndersampledPath { index: k, jump });
        }
        total += jump;
    }
    Ok((total / TAU).round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &Poly, b: &Poly, tol: f64) -> bool {
        (a - b).wiener_norm() < tol
    }

    #[test]
    fn arithmetic_basics() {
        let z = Poly::z();
        assert_eq!(&z * &z, Poly::monomial(ONE, 2));
        let s = &Poly::from_real(&[1.0, 1.0]) + &Poly::from_real(&[1.0, -1.0]);
        assert_eq!(s, Poly::constant(c(2.0, 0.0)));
        let f = Poly::from_real(&[1.0, 0.0, 1.0]);
        assert!(f.eval(c(0.0, 1.0)).norm() < 1e-15);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn trimming() {
        let p = Poly::new(vec![ONE, c(1e-14, 0.0)]);
        assert_eq!(p.degree(), Some(0));
        let exact = Poly::with_trim(vec![ONE, c(1e-14, 0.0)], 0.0);
        assert_eq!(exact.degree(), Some(1));
        assert!(Poly::new(vec![ZERO, ZERO]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn rotate_examples() {
        let minus = rotate(&Poly::z(), c(-1.0, 0.0), 2, 1).unwrap();
        assert_eq!(minus, Poly::from_real(&[0.0, -1.0]));

        let f = Poly::from_real(&[1.0, 2.0, 3.0]);
        assert_eq!(rotate(&f, c(0.0, 1.0), 4, 0).unwrap(), f);

        let g = rotate(&Poly::from_real(&[1.0, 1.0, 1.0]), c(0.0, 1.0), 4, 1).unwrap();
        let expected = Poly::new(vec![ONE, c(0.0, 1.0), c(-1.0, 0.0)]);
        assert!(close(&g, &expected, 1e-15));

        assert!(matches!(
            rotate(&f, c(0.9, 0.0), 3, 1),
            Err(PolyError::NotRootOfUnity { .. })
        ));
    }

    #[test]
    fn wiener_norm_examples() {
        assert_eq!(Poly::zero().wiener_norm(), 0.0);
        let f = Poly::new(vec![c(3.0, 0.0), c(0.0, 4.0)]);
        assert!((f.wiener_norm() - 7.0).abs() < 1e-15);
    }

    #[test]
    fn root_examples() {
        let mut r = Poly::from_real(&[1.0, 0.0, 1.0]).roots().unwrap();
        r.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-12);

        assert_eq!(Poly::monomial(ONE, 3).roots().unwrap(), vec![ZERO; 3]);

        let f = Poly::from_roots(&[c(0.3, 0.0), c(0.7, 0.1)]);
        let roots = f.roots().unwrap();
        assert!(f.recomposition_residual(&roots) < 1e-8);
        for target in [c(0.3, 0.0), c(0.7, 0.1)] {
            assert!(roots.iter().any(|r| (r - target).norm() < 1e-8));
        }
        assert!(matches!(Poly::zero().roots(), Err(PolyError::ZeroPolynomial)));
        assert!(Poly::one().roots().unwrap().is_empty());
    }

    #[test]
    fn bezout_examples() {
        let z = Poly::z();
        let zm1 = Poly::from_real(&[-1.0, 1.0]);
        let b = sylvester_bezout(&z, &zm1).unwrap();
        assert!(close(&b.p, &Poly::one(), 1e-12));
        assert!(close(&b.q, &Poly::from_real(&[-1.0]), 1e-12));

        let b = sylvester_bezout(&Poly::monomial(ONE, 2), &Poly::one()).unwrap();
        assert!(b.p.is_zero());
        assert!(close(&b.q, &Poly::one(), 1e-12));

        assert!(matches!(
            sylvester_bezout(&z, &Poly::from_real(&[0.0, 0.0, 1.0])),
            Err(PolyError::CoprimalityFailure { .. })
        ));
    }

    #[test]
    fn winding_examples() {
        let path = CirclePath::sample(64, |z| z).unwrap();
        assert_eq!(winding_number(&path).unwrap(), 1);
        let path = CirclePath::sample(64, |z| z * z * z).unwrap();
        assert_eq!(winding_number(&path).unwrap(), 3);
        let path = CirclePath::sample(64, |z| -(z * z)).unwrap();
        assert_eq!(winding_number(&path).unwrap(), 2);
        let path = CirclePath::sample(16, |z| z.powu(5)).unwrap();
        assert!(matches!(
            winding_number(&path),
            Err(PolyError::UndersampledPath { .. })
        ));
        assert!(matches!(
            CirclePath::sample(8, |z| z),
            Err(PolyError::TooFewSamples(8))
        ));
        let path = CirclePath::sample(32, |z| z - ONE).unwrap();
        assert!(matches!(
            winding_number(&path),
            Err(PolyError::ZeroSample { index: 0 })
        ));
    }
}
