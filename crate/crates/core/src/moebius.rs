//! Disk automorphisms through `SU(1,1)`, the real representation `pi` onto
//! `SL(2,R)`, and conjugation of finite cyclic subgroups into `U(1)`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::GroupSpec;
use crate::error::MoebiusError;

/// Tolerance on `|a|^2 - |b|^2 = 1` and `sv - tu = 1`.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-10;
/// Largest imaginary residue accepted from the conjugation defining `pi`.
pub const REAL_IMAGE_TOLERANCE: f64 = 1e-8;
/// `generator^order` must be within this of `+-I`.
pub const FINITE_ORDER_TOLERANCE: f64 = 1e-8;
pub const GRAM_CONDITION_CAP: f64 = 1e10;
pub const CONJUGATION_TOLERANCE: f64 = 1e-8;
pub const INTERTWINING_TOLERANCE: f64 = 1e-9;
pub const INTERTWINING_SAMPLES: usize = 64;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// `[[a, b], [conj b, conj a]]` with `|a|^2 - |b|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU11Element {
    a: Complex64,
    b: Complex64,
}

impl SU11Element {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self, MoebiusError> {
        let defect = a.norm_sqr() - b.norm_sqr() - 1.0;
        if defect.abs() < MEMBERSHIP_TOLERANCE {
            Ok(Self { a, b })
        } else {
            Err(MoebiusError::NotInSU11(defect))
        }
    }

    pub fn identity() -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// `diag(e^{i theta}, e^{-i theta})`, acting as `z -> e^{2 i theta} z`.
    pub fn rotation(theta: f64) -> Self {
        Self {
            a: Complex64::from_polar(1.0, theta),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// `a = cosh t`, `b = sinh t e^{i phi}`.
    pub fn hyperbolic(t: f64, phi: f64) -> Self {
        Self {
            a: Complex64::new(t.cosh(), 0.0),
            b: Complex64::from_polar(t.sinh(), phi),
        }
    }

    /// Hyperbolic part with `t` uniform in `[0.1, max_t]`, then a random rotation.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_t: f64) -> Self {
        let h = Self::hyperbolic(rng.random_range(0.1..max_t.max(0.2)), rng.random_range(0.0..TAU));
        h.mul(&Self::rotation(rng.random_range(0.0..TAU)))
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.a, self.b, self.b.conj(), self.a.conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
        }
    }

    /// Max-entry distance of the matrices.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }

    /// Distance in `PSU(1,1) = SU(1,1)/{+-1}`.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        self.distance(other).min(self.distance(&other.neg()))
    }

    /// `(a z + b) / (conj(b) z + conj(a))`.
    pub fn mobius_apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    pub fn membership_defect(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr() - 1.0
    }
}

impl fmt::Display for SU11Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [conj, conj]]", self.a, self.b)
    }
}

#[derive(Serialize, Deserialize)]
struct SU11Repr {
    a: Complex64,
    b: Complex64,
}

impl Serialize for SU11Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SU11Repr {
            a: self.a,
            b: self.b,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SU11Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = SU11Repr::deserialize(deserializer)?;
        SU11Element::new(r.a, r.b).map_err(serde::de::Error::custom)
    }
}

/// `[[s, t], [u, v]]` with `sv - tu = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SL2RMatrix {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
}

impl SL2RMatrix {
    pub fn new(s: f64, t: f64, u: f64, v: f64) -> Result<Self, MoebiusError> {
        let m = Self { s, t, u, v };
        let defect = m.det() - 1.0;
        if defect.abs() < MEMBERSHIP_TOLERANCE {
            Ok(m)
        } else {
            Err(MoebiusError::NotInSL2R(defect))
        }
    }

    pub fn from_matrix(m: &Matrix2<f64>) -> Result<Self, MoebiusError> {
        Self::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.s, self.t, self.u, self.v)
    }

    pub fn det(&self) -> f64 {
        self.s * self.v - self.t * self.u
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.matrix() * other.matrix();
        Self {
            s: m[(0, 0)],
            t: m[(0, 1)],
            u: m[(1, 0)],
            v: m[(1, 1)],
        }
    }
}

fn cayley() -> Matrix2<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Matrix2::new(one, -i(), one, i())
}

fn cayley_inverse() -> Matrix2<Complex64> {
    let half = Complex64::new(0.5, 0.0);
    Matrix2::new(half, half, i() * 0.5, -i() * 0.5)
}

/// `pi(g) = C^{-1} g C` with `C = [[1, -i], [1, i]]`.
pub fn rep_pi(g: &SU11Element) -> Result<SL2RMatrix, MoebiusError> {
    let m = cayley_inverse() * g.matrix() * cayley();
    let residue = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue > REAL_IMAGE_TOLERANCE {
        return Err(MoebiusError::NonRealImage(residue));
    }
    SL2RMatrix::from_matrix(&m.map(|z| z.re))
}

/// `g = C S C^{-1}`.
pub fn rep_pi_inverse(s: &SL2RMatrix) -> Result<SU11Element, MoebiusError> {
    let m = cayley() * s.matrix().map(|x| Complex64::new(x, 0.0)) * cayley_inverse();
    let mismatch = (m[(1, 0)] - m[(0, 1)].conj())
        .norm()
        .max((m[(1, 1)] - m[(0, 0)].conj()).norm());
    if mismatch > REAL_IMAGE_TOLERANCE {
        return Err(MoebiusError::NonRealImage(mismatch));
    }
    SU11Element::new(m[(0, 0)], m[(0, 1)])
}

/// Finite cyclic subgroup of `SU(1,1)` whose image in `PSU(1,1)` has order
/// `order`; `generator^order = sign * I`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteCyclicSubgroup {
    generator: SU11Element,
    order: usize,
    sign: i8,
    elements: Vec<SU11Element>,
}

impl FiniteCyclicSubgroup {
    /// Checks that `generator` has exactly `order` in `PSU(1,1)`.
    pub fn from_generator(generator: SU11Element, order: usize) -> Result<Self, MoebiusError> {
        if order < 2 {
            return Err(MoebiusError::BadOrder { order, min: 2 });
        }
        let elements: Vec<SU11Element> = (0..order).map(|k| generator.pow(k)).collect();
        let top = generator.pow(order);
        let id = SU11Element::identity();
        let (plus, minus) = (top.distance(&id), top.distance(&id.neg()));
        let dist = plus.min(minus);
        if dist > FINITE_ORDER_TOLERANCE {
            return Err(MoebiusError::NotFiniteOrder(dist));
        }
        if let Some(k) = (1..order).find(|&k| elements[k].projective_distance(&id) < FINITE_ORDER_TOLERANCE) {
            return Err(MoebiusError::OrderMismatch {
                declared: order,
                actual: k,
            });
        }
        Ok(Self {
            generator,
            order,
            sign: if plus <= minus { 1 } else { -1 },
            elements,
        })
    }

    pub fn generator(&self) -> &SU11Element {
        &self.generator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// `generator^0, ..., generator^{order-1}`.
    pub fn elements(&self) -> &[SU11Element] {
        &self.elements
    }
}

#[derive(Serialize, Deserialize)]
struct SubgroupRepr {
    generator: SU11Element,
    order: usize,
    sign: i8,
}

impl Serialize for FiniteCyclicSubgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SubgroupRepr {
            generator: self.generator,
            order: self.order,
            sign: self.sign,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteCyclicSubgroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = SubgroupRepr::deserialize(deserializer)?;
        let k = FiniteCyclicSubgroup::from_generator(r.generator, r.order)
            .map_err(serde::de::Error::custom)?;
        if k.sign != r.sign {
            return Err(serde::de::Error::custom(format!(
                "stored sign {} but generator^order has sign {}",
                r.sign, k.sign
            )));
        }
        Ok(k)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `h j h^{-1}` with `j = diag(e^{i pi m/order}, e^{-i pi m/order})`.
pub fn make_finite_subgroup(
    order: usize,
    h: &SU11Element,
    m: i64,
) -> Result<FiniteCyclicSubgroup, MoebiusError> {
    if order < 2 {
        return Err(MoebiusError::BadOrder { order, min: 2 });
    }
    if gcd(m.unsigned_abs(), order as u64) != 1 {
        return Err(MoebiusError::NotCoprime { m, order });
    }
    let j = SU11Element::rotation(PI * m as f64 / order as f64);
    FiniteCyclicSubgroup::from_generator(h.mul(&j).mul(&h.inverse()), order)
}

/// `(1/|K|) sum_g pi(g)^T pi(g)`.
pub fn average_gram(k: &FiniteCyclicSubgroup) -> Result<Matrix2<f64>, MoebiusError> {
    let mut t = Matrix2::zeros();
    for g in k.elements() {
        let p = rep_pi(g)?.matrix();
        t += p.transpose() * p;
    }
    Ok(t / k.order() as f64)
}

/// `max_g |pi(g)^T T pi(g) - T|` (max entry).
pub fn gram_fixed_point_residual(
    k: &FiniteCyclicSubgroup,
    t: &Matrix2<f64>,
) -> Result<f64, MoebiusError> {
    let mut worst: f64 = 0.0;
    for g in k.elements() {
        let p = rep_pi(g)?.matrix();
        worst = worst.max((p.transpose() * t * p - t).amax());
    }
    Ok(worst)
}

/// Inverse square root of a symmetric positive definite 2x2 matrix:
/// `sqrt(T) = (T + sqrt(det T) I) / sqrt(tr T + 2 sqrt(det T))`.
fn inverse_sqrt_spd(t: &Matrix2<f64>) -> Option<Matrix2<f64>> {
    let det = t.determinant();
    if !(det > 0.0) || !(t.trace() > 0.0) {
        return None;
    }
    let sd = det.sqrt();
    let root = (t + Matrix2::identity() * sd) / (t.trace() + 2.0 * sd).sqrt();
    root.try_inverse()
}

fn condition_spd(t: &Matrix2<f64>) -> f64 {
    let half_tr = 0.5 * t.trace();
    let disc = (half_tr * half_tr - t.determinant()).max(0.0).sqrt();
    let (hi, lo) = (half_tr + disc, half_tr - disc);
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

/// `|M - R|_F` for the rotation `R` closest to `M`, and the angle of `R`
/// in the convention `[[cos, sin], [-sin, cos]]`.
fn nearest_rotation(m: &Matrix2<f64>) -> (f64, f64) {
    let c = m[(0, 0)] + m[(1, 1)];
    let s = m[(0, 1)] - m[(1, 0)];
    let theta = s.atan2(c);
    let r = Matrix2::new(theta.cos(), theta.sin(), -theta.sin(), theta.cos());
    ((m - r).norm(), theta)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugationResult {
    pub h: SU11Element,
    /// Max over the group of the distance from `pi(h)^{-1} pi(g) pi(h)` to a rotation.
    pub residual: f64,
    /// Angle `theta_g` with `h^{-1} g h ~ diag(e^{i theta_g}, e^{-i theta_g})`.
    pub rotation_angles: Vec<f64>,
    pub gram: [[f64; 2]; 2],
    pub gram_condition: f64,
}

/// Conjugates `K` into `U(1)` by the Haar-averaged Gram matrix.
pub fn conjugator(k: &FiniteCyclicSubgroup) -> Result<ConjugationResult, MoebiusError> {
    let t = average_gram(k)?;
    let cond = condition_spd(&t);
    if !(cond <= GRAM_CONDITION_CAP) {
        return Err(MoebiusError::IllConditionedGram(cond));
    }
    let x = inverse_sqrt_spd(&t).ok_or(MoebiusError::IllConditionedGram(cond))?;
    let s = x / x.determinant().sqrt();
    let s = SL2RMatrix::new(s[(0, 0)], s[(0, 1)], s[(1, 0)], s[(1, 1)])?;
    let h = rep_pi_inverse(&s)?;
    let s_inv = s.matrix().try_inverse().ok_or(MoebiusError::IllConditionedGram(cond))?;
    let mut residual: f64 = 0.0;
    let mut rotation_angles = Vec::with_capacity(k.order());
    for g in k.elements() {
        let m = s_inv * rep_pi(g)?.matrix() * s.matrix();
        let (dist, theta) = nearest_rotation(&m);
        residual = residual.max(dist);
        rotation_angles.push(theta);
    }
    if !(residual < CONJUGATION_TOLERANCE) {
        return Err(MoebiusError::ConjugationResidual(residual));
    }
    Ok(ConjugationResult {
        h,
        residual,
        rotation_angles,
        gram: [[t[(0, 0)], t[(0, 1)]], [t[(1, 0)], t[(1, 1)]]],
        gram_condition: cond,
    })
}

/// The rotation action equivalent to `K`, with the conjugating automorphism.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationAction {
    pub spec: GroupSpec,
    /// Conjugator `h`: `phi_k = phi_h . phi_j . phi_h^{-1}`.
    pub gamma: SU11Element,
    /// `j = diag(e^{i theta}, e^{-i theta})` for the generator.
    pub rotation: SU11Element,
    pub theta: f64,
    pub omega: Complex64,
    pub intertwining_residual: f64,
    pub conjugation: ConjugationResult,
}

/// Points `r e^{i t}` on a spiral inside the closed disk.
pub fn disk_samples(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| {
            let r = 0.95 * (k as f64 + 0.5) / count as f64;
            Complex64::from_polar(r, 2.399963229728653 * k as f64)
        })
        .collect()
}

/// Reads off `(n, omega)` for `K` after conjugation into `U(1)`. The disk
/// automorphism of `diag(e^{i theta}, e^{-i theta})` is the rotation by
/// `2 theta`, so `omega = e^{2 i theta}`.
pub fn rotation_action_of(k: &FiniteCyclicSubgroup) -> Result<RotationAction, MoebiusError> {
    let conjugation = conjugator(k)?;
    let n = k.order();
    let theta = conjugation.rotation_angles[1];
    let omega = Complex64::from_polar(1.0, 2.0 * theta);
    let turns = (2.0 * theta) / TAU * n as f64;
    let m = turns.round();
    if (turns - m).abs() > 1e-6 {
        return Err(MoebiusError::AngleExtraction(format!(
            "2 theta = {} is not a multiple of 2 pi/{n}",
            2.0 * theta
        )));
    }
    let m = (m as i64).rem_euclid(n as i64);
    let spec = GroupSpec::new(n, m).map_err(|e| MoebiusError::AngleExtraction(e.to_string()))?;

    let rotation = SU11Element::rotation(theta);
    let h = conjugation.h;
    let h_inv = h.inverse();
    let intertwining_residual = disk_samples(INTERTWINING_SAMPLES)
        .into_iter()
        .map(|z| {
            let direct = k.generator().mobius_apply(z);
            let conjugated = h.mobius_apply(rotation.mobius_apply(h_inv.mobius_apply(z)));
            (direct - conjugated).norm()
        })
        .fold(0.0, f64::max);
    if !(intertwining_residual < INTERTWINING_TOLERANCE) {
        return Err(MoebiusError::ConjugationResidual(intertwining_residual));
    }
    Ok(RotationAction {
        spec,
        gamma: h,
        rotation,
        theta,
        omega,
        intertwining_residual,
        conjugation,
    })
}
