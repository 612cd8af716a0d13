//! Seeded generators for test inputs. All randomness comes from a ChaCha
//! stream keyed by one 64-bit seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CrossedElement, GroupSpec};
use crate::poly::Poly;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the square `[-1, 1] x [-1, 1]`.
pub fn complex_in_square<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Modulus `r`, uniformly random phase.
pub fn complex_on_circle<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex64 {
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Polynomial of degree exactly `degree` with coefficients in the unit square.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Poly {
    loop {
        let p = Poly::new((0..=degree).map(|_| complex_in_square(rng)).collect());
        if p.degree() == Some(degree) {
            return p;
        }
    }
}

/// Polynomial with degree drawn uniformly from `0..=max_degree`.
pub fn poly_up_to<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Poly {
    let d = rng.random_range(0..=max_degree);
    poly(rng, d)
}

/// Crossed element whose components have degree at most `max_degree`.
pub fn crossed_element<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &GroupSpec,
    max_degree: usize,
) -> CrossedElement {
    let comps = (0..spec.n()).map(|_| poly_up_to(rng, max_degree)).collect();
    CrossedElement::new(spec.clone(), comps).expect("component count matches")
}
