//! Certificate files and their independent verification.
//!
//! Verification recomputes everything from the stored elements with the
//! algebra and polynomial layers only; nothing from the generating run is
//! trusted except the claimed numbers it is checked against.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{det_on_circle, CrossedElement, GroupSpec};
use crate::elimination::{BezoutCertificate, WindingObstruction};
use crate::poly::{winding_number, Poly};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    Bezout(BezoutCertificate),
    Winding(WindingObstruction),
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("verification failed: {}", .0.join("; "))]
    Failed(Vec<String>),
}

/// Outcome of one verification: recomputed quantities and failed checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Verification {
    pub kind: String,
    pub recomputed: Vec<(String, f64)>,
    pub failures: Vec<String>,
}

impl Verification {
    fn new(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            ..Self::default()
        }
    }

    fn record(&mut self, name: &str, value: f64) {
        self.recomputed.push((name.into(), value));
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(message());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<Self, VerifyError> {
        if self.passed() {
            Ok(self)
        } else {
            Err(VerifyError::Failed(self.failures))
        }
    }
}

pub fn parse(text: &str) -> Result<Certificate, VerifyError> {
    crate::json::from_str(text).map_err(|e| VerifyError::Malformed(e.to_string()))
}

pub fn verify(cert: &Certificate) -> Result<Verification, VerifyError> {
    match cert {
        Certificate::Bezout(c) => verify_bezout(c),
        Certificate::Winding(w) => verify_winding(w),
    }
}

/// Parses and verifies certificate text.
pub fn verify_str(text: &str) -> Result<Verification, VerifyError> {
    verify(&parse(text)?)
}

fn same_spec(spec: &GroupSpec, elements: &[&CrossedElement]) -> Result<(), VerifyError> {
    match elements.iter().find(|x| x.spec() != spec) {
        Some(x) => Err(VerifyError::Malformed(format!(
            "element in (n={}, m={}) inside a certificate for (n={}, m={})",
            x.spec().n(),
            x.spec().m(),
            spec.n(),
            spec.m()
        ))),
        None => Ok(()),
    }
}

fn positive(value: f64, name: &str) -> Result<(), VerifyError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(VerifyError::Malformed(format!("{name} must be positive, got {value}")))
    }
}

/// `c*a + d*b = delta^0` within the stored tolerance, `a`, `b` within
/// `epsilon` of the inputs, and stored numbers matching the recomputation.
pub fn verify_bezout(cert: &BezoutCertificate) -> Result<Verification, VerifyError> {
    let spec = GroupSpec::new(cert.n, cert.m).map_err(|e| VerifyError::Malformed(e.to_string()))?;
    let (x, y) = (&cert.inputs.first, &cert.inputs.second);
    let (a, b) = (&cert.approximants.first, &cert.approximants.second);
    let (c, d) = (&cert.cofactors.first, &cert.cofactors.second);
    same_spec(&spec, &[x, y, a, b, c, d])?;
    positive(cert.epsilon, "epsilon")?;
    positive(cert.tolerances.certificate, "certificate tolerance")?;
    positive(cert.tolerances.agreement, "agreement tolerance")?;

    let combo = &(&(c * a) + &(d * b)) - &CrossedElement::one(&spec);
    let residual = combo.l1_norm();
    let distances = [(x - a).l1_norm(), (y - b).l1_norm()];

    let mut v = Verification::new("bezout");
    v.record("residual", residual);
    v.record("distance_first", distances[0]);
    v.record("distance_second", distances[1]);
    let tol = cert.tolerances.certificate;
    v.check(residual < tol, || {
        format!("residual {residual:e} not below tolerance {tol:e}")
    });
    for (k, dist) in distances.iter().enumerate() {
        v.check(*dist < cert.epsilon, || {
            format!("distance {k} is {dist:e}, not below epsilon {}", cert.epsilon)
        });
    }
    let agree = cert.tolerances.agreement;
    v.check((residual - cert.residual).abs() <= agree, || {
        format!("stored residual {:e} but recomputed {residual:e}", cert.residual)
    });
    for (k, (stored, fresh)) in cert.distances.iter().zip(&distances).enumerate() {
        v.check((stored - fresh).abs() <= agree, || {
            format!("stored distance {k} is {stored:e} but recomputed {fresh:e}")
        });
    }
    Ok(v)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn winding_of(x: &CrossedElement, samples: usize) -> Result<(f64, i64), String> {
    let path = det_on_circle(&x.embed_matrix(), samples).map_err(|e| e.to_string())?;
    let w = winding_number(&path).map_err(|e| e.to_string())?;
    Ok((path.min_modulus(), w))
}

/// Recomputes every winding number and circle minimum from the stored
/// elements, and checks the center is `z delta^0`, the margin inequality,
/// and that every perturbation lies within `delta`.
pub fn verify_winding(obs: &WindingObstruction) -> Result<Verification, VerifyError> {
    let spec = GroupSpec::new(obs.n, obs.m).map_err(|e| VerifyError::Malformed(e.to_string()))?;
    let mut elements = vec![&obs.element];
    elements.extend(obs.perturbations.iter().map(|p| &p.element));
    same_spec(&spec, &elements)?;
    positive(obs.delta, "delta")?;
    if obs.samples < 64 || !obs.samples.is_power_of_two() {
        return Err(VerifyError::Malformed(format!(
            "samples must be a power of two >= 64, got {}",
            obs.samples
        )));
    }

    let n = obs.n as i64;
    let mut v = Verification::new("winding");
    let center = CrossedElement::from_poly(&spec, Poly::z());
    let offset = (&obs.element - &center).l1_norm();
    v.check(offset == 0.0, || format!("element is {offset:e} away from z delta^0"));
    let e = obs.margin_exponent as i32;
    let margin = obs.delta < 1.0
        && (1.0 - obs.delta).powi(e) > factorial(obs.n) * obs.delta.powi(e);
    v.check(margin, || {
        format!("delta {} violates the margin with exponent {e}", obs.delta)
    });

    let mut measure = |x: &CrossedElement, samples: usize, label: &str| -> Option<(f64, i64)> {
        match winding_of(x, samples) {
            Ok(r) => Some(r),
            Err(e) => {
                v.failures.push(format!("{label}: {e}"));
                None
            }
        }
    };
    let base = measure(&obs.element, obs.samples, "element");
    let refined = measure(&obs.element, obs.samples * 4, "element (refined)");
    let mut perturbed = Vec::with_capacity(obs.perturbations.len());
    for (k, p) in obs.perturbations.iter().enumerate() {
        perturbed.push((k, measure(&p.element, obs.samples, &format!("perturbation {k}"))));
    }

    if let Some((min, w)) = base {
        v.record("circle_min", min);
        v.record("winding", w as f64);
        v.check(min > 0.0 && w == n, || format!("element winds {w} times (min {min:e}), expected {n}"));
        v.check(w == obs.winding && (min - obs.circle_min).abs() <= 1e-12 * min.max(1.0), || {
            format!("stored winding {} / min {:e} disagree with recomputation", obs.winding, obs.circle_min)
        });
    }
    if let Some((_, w)) = refined {
        v.record("winding_refined", w as f64);
        v.check(w == n && w == obs.winding_refined, || {
            format!("refined winding {w}, stored {}, expected {n}", obs.winding_refined)
        });
    }
    for (k, result) in perturbed {
        let p = &obs.perturbations[k];
        let dist = (&p.element - &center).l1_norm();
        v.check(dist < obs.delta, || {
            format!("perturbation {k} is {dist:e} from the center, not below {}", obs.delta)
        });
        if let Some((min, w)) = result {
            v.check(min > 0.0 && w == n, || {
                format!("perturbation {k} winds {w} times (min {min:e}), expected {n}")
            });
            v.check(w == p.winding, || {
                format!("perturbation {k}: stored winding {}, recomputed {w}", p.winding)
            });
        }
    }
    Ok(v)
}
