//! The crossed product `l1(Z/nZ, A, alpha)` of the polynomial disk-algebra
//! model by a rotation action, and matrices over it.
//!
//! Group elements are residues mod `n`; `delta^{-g}` is `delta^{(n-g) mod n}`.
//! The generator acts by `f(z) -> f(omega z)` with `omega = exp(2 pi i m / n)`.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::poly::{CirclePath, Poly, ProductSum, MIN_CIRCLE_SAMPLES};

/// Determinant samples below this modulus make a path unusable for winding.
pub const DET_VANISHING: f64 = 1e-12;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `exp(2 pi i num / den)`, exact at multiples of a quarter turn.
pub fn unit_root(num: i64, den: usize) -> Complex64 {
    let r = num.rem_euclid(den as i64) as usize;
    if (4 * r).is_multiple_of(den) {
        return match 4 * r / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * r as f64 / den as f64)
}

/// Cyclic group `Z/nZ` acting on polynomials through a primitive root `omega`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    n: usize,
    m: i64,
    powers: Vec<Complex64>,
}

impl GroupSpec {
    /// `omega = exp(2 pi i m / n)`; `m` must be a unit mod `n`.
    pub fn new(n: usize, m: i64) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::EmptyGroup);
        }
        let m_red = m.rem_euclid(n as i64);
        if n > 1 && gcd(m_red as u64, n as u64) != 1 {
            return Err(AlgebraError::NonPrimitiveRoot { n, m });
        }
        let m_red = if n == 1 { 1 } else { m_red };
        let powers = (0..n as i64).map(|k| unit_root(m_red * k, n)).collect();
        Ok(Self {
            n,
            m: m_red,
            powers,
        })
    }

    /// The principal root `exp(2 pi i / n)`.
    pub fn principal(n: usize) -> Result<Self, AlgebraError> {
        Self::new(n, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Root selector reduced mod `n` (1 when `n = 1`).
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn omega(&self) -> Complex64 {
        self.omega_pow(1)
    }

    pub fn omega_pow(&self, k: i64) -> Complex64 {
        self.powers[self.residue(k)]
    }

    pub fn residue(&self, g: i64) -> usize {
        g.rem_euclid(self.n as i64) as usize
    }

    /// `alpha^g(f)`: coefficient `c_k` becomes `omega^{g k} c_k`.
    pub fn act(&self, f: &Poly, g: i64) -> Poly {
        let g = self.residue(g);
        if g == 0 {
            return f.clone();
        }
        f.map_coeffs(|k, c| c * self.powers[(g * k) % self.n])
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m
    }
}

impl Eq for GroupSpec {}

/// Ring operations shared by the entry types of [`AlgMatrix`].
///
/// The method names avoid clashing with the `std::ops` traits, which both
/// entry types also implement.
pub trait RingElement: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn norm(&self) -> f64;
    fn is_zero_element(&self) -> bool;
}

impl RingElement for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        Poly::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn norm(&self) -> f64 {
        self.wiener_norm()
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
}

/// An element `sum_g f_g delta^g` of the crossed product.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedElement {
    spec: GroupSpec,
    comps: Vec<Poly>,
}

impl CrossedElement {
    pub fn new(spec: GroupSpec, comps: Vec<Poly>) -> Result<Self, AlgebraError> {
        if comps.len() != spec.n() {
            return Err(AlgebraError::ComponentCount {
                expected: spec.n(),
                actual: comps.len(),
            });
        }
        Ok(Self { spec, comps })
    }

    pub fn zero(spec: &GroupSpec) -> Self {
        Self {
            spec: spec.clone(),
            comps: vec![Poly::zero(); spec.n()],
        }
    }

    /// The unit `delta^0`.
    pub fn one(spec: &GroupSpec) -> Self {
        Self::delta(spec, 0)
    }

    pub fn delta(spec: &GroupSpec, g: i64) -> Self {
        Self::monomial(spec, Poly::one(), g)
    }

    /// `f delta^g`
    pub fn monomial(spec: &GroupSpec, f: Poly, g: i64) -> Self {
        let mut out = Self::zero(spec);
        out.comps[spec.residue(g)] = f;
        out
    }

    /// `f delta^0`, the image of `f` under the inclusion `A -> B`.
    pub fn from_poly(spec: &GroupSpec, f: Poly) -> Self {
        Self::monomial(spec, f, 0)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    /// `f_g`, with `g` read mod `n`.
    pub fn comp(&self, g: i64) -> &Poly {
        &self.comps[self.spec.residue(g)]
    }

    pub fn set_comp(&mut self, g: i64, f: Poly) {
        let g = self.spec.residue(g);
        self.comps[g] = f;
    }

    pub fn into_comps(self) -> Vec<Poly> {
        self.comps
    }

    /// `sum_g ||f_g||` with the Wiener norm on each component.
    pub fn l1_norm(&self) -> f64 {
        self.comps.iter().map(Poly::wiener_norm).fold(0.0, |s, x| s + x)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            spec: self.spec.clone(),
            comps: self.comps.iter().map(|f| f.scale(c)).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.spec != other.spec {
            return Err(AlgebraError::GroupMismatch(
                self.spec.n,
                self.spec.m,
                other.spec.n,
                other.spec.m,
            ));
        }
        Ok(())
    }

    /// Twisted convolution: `(x*y)_g = sum_h x_h alpha^h(y_{g-h})`.
    pub fn convolve(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let n = self.spec.n();
        let mut acc = vec![ProductSum::default(); n];
        for (h, xh) in self.comps.iter().enumerate() {
            if xh.is_zero() {
                continue;
            }
            for (i, yi) in other.comps.iter().enumerate() {
                if yi.is_zero() {
                    continue;
                }
                acc[(h + i) % n].add_product(xh, &self.spec.act(yi, h as i64));
            }
        }
        Ok(Self {
            spec: self.spec.clone(),
            comps: acc.into_iter().map(ProductSum::finish).collect(),
        })
    }

    /// `sum_i x_i * y_i - target`, accumulated without intermediate rounding
    /// so that cancelling products keep their small residue.
    pub fn combination_residual(
        terms: &[(&Self, &Self)],
        target: &Self,
    ) -> Result<Self, AlgebraError> {
        let n = target.spec.n();
        let mut acc = vec![ProductSum::default(); n];
        for (x, y) in terms {
            target.check_same(x)?;
            target.check_same(y)?;
            for (h, xh) in x.comps.iter().enumerate() {
                for (i, yi) in y.comps.iter().enumerate() {
                    if !xh.is_zero() && !yi.is_zero() {
                        acc[(h + i) % n].add_product(xh, &target.spec.act(yi, h as i64));
                    }
                }
            }
        }
        for (g, t) in target.comps.iter().enumerate() {
            acc[g].add_poly(&-t);
        }
        Ok(Self {
            spec: target.spec.clone(),
            comps: acc.into_iter().map(ProductSum::finish).collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(Self {
            spec: self.spec.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(Self {
            spec: self.spec.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Conditional expectation onto the `delta^0` component.
    pub fn expectation(&self) -> Self {
        Self::from_poly(&self.spec, self.comps[0].clone())
    }

    /// True when every component other than `f_0` has Wiener norm at most `tol`.
    pub fn is_identity_supported(&self, tol: f64) -> bool {
        self.comps[1..].iter().all(|f| f.wiener_norm() <= tol)
    }

    /// `pi(x)`: entry `(h, k)` is `alpha^h(x_{k-h})`.
    pub fn embed_matrix(&self) -> AlgMatrix<Poly> {
        let n = self.spec.n();
        AlgMatrix::from_fn(n, n, |h, k| {
            self.spec
                .act(self.comp(k as i64 - h as i64), h as i64)
        })
    }
}

impl RingElement for CrossedElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.spec)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.spec)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn norm(&self) -> f64 {
        self.l1_norm()
    }
    fn is_zero_element(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }
}

// Operator forms panic on mismatched groups; use `convolve`/`try_add`/`try_sub`
// for checked arithmetic.
impl Mul for &CrossedElement {
    type Output = CrossedElement;
    fn mul(self, rhs: &CrossedElement) -> CrossedElement {
        self.convolve(rhs).expect("group mismatch in convolution")
    }
}

impl Add for &CrossedElement {
    type Output = CrossedElement;
    fn add(self, rhs: &CrossedElement) -> CrossedElement {
        self.try_add(rhs).expect("group mismatch in addition")
    }
}

impl Sub for &CrossedElement {
    type Output = CrossedElement;
    fn sub(self, rhs: &CrossedElement) -> CrossedElement {
        self.try_sub(rhs).expect("group mismatch in subtraction")
    }
}

impl Neg for &CrossedElement {
    type Output = CrossedElement;
    fn neg(self) -> CrossedElement {
        CrossedElement {
            spec: self.spec.clone(),
            comps: self.comps.iter().map(|f| -f).collect(),
        }
    }
}

/// The quasi-basis `(delta^g, delta^{-g})` for the expectation.
pub fn quasi_basis(spec: &GroupSpec) -> Vec<(CrossedElement, CrossedElement)> {
    (0..spec.n() as i64)
        .map(|g| {
            (
                CrossedElement::delta(spec, g),
                CrossedElement::delta(spec, -g),
            )
        })
        .collect()
}

/// `sum_g u_g * v_g`; equals `n delta^0`.
pub fn index(spec: &GroupSpec) -> CrossedElement {
    quasi_basis(spec)
        .iter()
        .fold(CrossedElement::zero(spec), |acc, (u, v)| &acc + &(u * v))
}

/// Both quasi-basis expansions of `x`:
/// `sum_g u_g * E(v_g * x)` and `sum_g E(x * u_g) * v_g`.
pub fn reconstruct(x: &CrossedElement) -> (CrossedElement, CrossedElement) {
    let spec = x.spec();
    let mut left = CrossedElement::zero(spec);
    let mut right = CrossedElement::zero(spec);
    for (u, v) in quasi_basis(spec) {
        left = &left + &(&u * &(&v * x).expectation());
        right = &right + &(&(x * &u).expectation() * &v);
    }
    (left, right)
}

/// Dense matrix over a ring, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: RingElement> AlgMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{rows}x{cols} matrix with {} entries",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Identity of size `size`, with entries built from `unit`'s ring.
    pub fn identity(size: usize, unit: &T) -> Self {
        let one = unit.one_like();
        let zero = unit.zero_like();
        Self::from_fn(size, size, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self.entries[0].zero_like();
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, l| {
                let a = self.get(i, l);
                let b = other.get(l, j);
                if a.is_zero_element() || b.is_zero_element() {
                    acc
                } else {
                    acc.plus(&a.times(b))
                }
            })
        }))
    }

    pub fn minus(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(other, "subtract", RingElement::minus)
    }

    pub fn plus(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(other, "add", RingElement::plus)
    }

    fn zip_with(
        &self,
        other: &Self,
        what: &str,
        f: impl Fn(&T, &T) -> T,
    ) -> Result<Self, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Shape(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// `||M||_1 = sum_{i,j} ||m_ij||`.
    pub fn norm_l1(&self) -> f64 {
        self.entries.iter().map(RingElement::norm).fold(0.0, |s, x| s + x)
    }

    /// Largest column sum of entry norms: the smallest `C` with
    /// `||M N||_1 <= C ||N||_1` for every `N`.
    pub fn operator_bound(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).norm()).fold(0.0, |s, x| s + x))
            .fold(0.0, f64::max)
    }

    pub fn max_entry_norm(&self) -> f64 {
        self.entries.iter().map(RingElement::norm).fold(0.0, f64::max)
    }

    /// Block of rows `r0..` and columns `c0..`.
    pub fn submatrix(&self, r0: usize, c0: usize) -> Self {
        Self::from_fn(self.rows - r0, self.cols - c0, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }
}

impl AlgMatrix<Poly> {
    /// Numeric matrix of entry values at `z`.
    pub fn eval(&self, z: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(z))
    }
}

/// Samples `det M(z)` at `m` equispaced points of the unit circle.
pub fn det_on_circle(matrix: &AlgMatrix<Poly>, m: usize) -> Result<CirclePath, AlgebraError> {
    if matrix.rows() != matrix.cols() {
        return Err(AlgebraError::Shape(format!(
            "determinant of a {}x{} matrix",
            matrix.rows(),
            matrix.cols()
        )));
    }
    if m < MIN_CIRCLE_SAMPLES {
        return Err(crate::error::PolyError::TooFewSamples(m).into());
    }
    let path = CirclePath::sample(m, |z| matrix.eval(z).determinant())?;
    for (index, s) in path.samples().iter().enumerate() {
        if !(s.norm() >= DET_VANISHING) {
            return Err(AlgebraError::VanishingDeterminant {
                index,
                modulus: s.norm(),
            });
        }
    }
    Ok(path)
}

/// Norm facts for an algebra-valued matrix with `K = L = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub max_entry_norm: f64,
    pub matrix_norm: f64,
    pub entry_norm_sum: f64,
    pub holds: bool,
}

pub fn matrix_norm_checks<T: RingElement>(matrix: &AlgMatrix<T>) -> NormReport {
    let max_entry_norm = matrix.max_entry_norm();
    let matrix_norm = matrix.norm_l1();
    let entry_norm_sum: f64 = matrix.entries().iter().map(RingElement::norm).sum();
    NormReport {
        max_entry_norm,
        matrix_norm,
        entry_norm_sum,
        holds: max_entry_norm <= matrix_norm && matrix_norm <= entry_norm_sum,
    }
}

/// `(||M N||_1, ||M||_1 ||N||_1)`.
pub fn submultiplicativity<T: RingElement>(
    a: &AlgMatrix<T>,
    b: &AlgMatrix<T>,
) -> Result<(f64, f64), AlgebraError> {
    Ok((a.matmul(b)?.norm_l1(), a.norm_l1() * b.norm_l1()))
}
