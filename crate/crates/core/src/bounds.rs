//! Integer stable-rank bounds for crossed products, matrix algebras and the
//! reverse inclusion.

use serde::{Deserialize, Serialize};

use crate::error::BoundsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsInput {
    pub ltsr_a: u64,
    /// Group order, equal to the size of the quasi-basis `(delta^g, delta^{-g})`.
    pub n: u64,
    pub matrix_size: u64,
    pub ltsr_b: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsOutput {
    /// `ltsr(A) + n - 1` for `l1(G, A, alpha)` with `|G| = n`.
    pub crossed_product_bound: u64,
    /// `ltsr(A) + 1` for cyclic groups.
    pub cyclic_bound: u64,
    /// `ltsr(M_k(A)) = ceil((ltsr(A) - 1) / k) + 1`.
    pub matrix_formula: u64,
    /// `n ltsr(B) + n^2 - n + 1`, when `ltsr(B)` is given.
    pub reverse_bound: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub inputs: BoundsInput,
    pub index_size: u64,
    pub outputs: BoundsOutput,
}

fn positive(value: u64, name: &'static str) -> Result<u64, BoundsError> {
    if value == 0 {
        Err(BoundsError::NonPositive(name))
    } else {
        Ok(value)
    }
}

pub fn crossed_product_bound(ltsr_a: u64, n: u64) -> Result<u64, BoundsError> {
    positive(ltsr_a, "ltsr(A)")?
        .checked_add(positive(n, "n")? - 1)
        .ok_or(BoundsError::Overflow)
}

pub fn cyclic_bound(ltsr_a: u64) -> Result<u64, BoundsError> {
    positive(ltsr_a, "ltsr(A)")?
        .checked_add(1)
        .ok_or(BoundsError::Overflow)
}

/// The matrix formula reads "least integer greater than"; the ceiling is
/// what reproduces `ltsr(M_k(A)) = 1` for `ltsr(A) = 1`.
pub fn matrix_formula(ltsr_a: u64, size: u64) -> Result<u64, BoundsError> {
    let a = positive(ltsr_a, "ltsr(A)")?;
    let k = positive(size, "matrix size")?;
    Ok((a - 1).div_ceil(k) + 1)
}

pub fn reverse_bound(ltsr_b: u64, n: u64) -> Result<u64, BoundsError> {
    let b = positive(ltsr_b, "ltsr(B)")?;
    let n = positive(n, "n")?;
    n.checked_mul(b)
        .and_then(|v| v.checked_add(n.checked_mul(n)?))
        .and_then(|v| v.checked_sub(n))
        .and_then(|v| v.checked_add(1))
        .ok_or(BoundsError::Overflow)
}

pub fn bounds_report(input: BoundsInput) -> Result<BoundsReport, BoundsError> {
    Ok(BoundsReport {
        inputs: input,
        index_size: positive(input.n, "n")?,
        outputs: BoundsOutput {
            crossed_product_bound: crossed_product_bound(input.ltsr_a, input.n)?,
            cyclic_bound: cyclic_bound(input.ltsr_a)?,
            matrix_formula: matrix_formula(input.ltsr_a, input.matrix_size)?,
            reverse_bound: input.ltsr_b.map(|b| reverse_bound(b, input.n)).transpose()?,
        },
    })
}
