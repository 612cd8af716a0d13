//! JSON encodings shared by every file format.
//!
//! Doubles are written with 17 significant digits so that every value
//! round-trips bit-exactly.

use std::io;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::Formatter;

use crate::algebra::{AlgMatrix, CrossedElement, GroupSpec, RingElement};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, Default)]
pub struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            // keeps the sign of -0.0
            return write!(writer, "{}", if value.is_sign_negative() { "-0.0" } else { "0.0" });
        }
        write!(writer, "{value:.16e}")
    }
}

/// Serializes `value` as compact JSON with 17-digit doubles.
pub fn to_string<T: Serialize + ?Sized>(value: &T) -> Result<String, serde_json::Error> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SeventeenDigits);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

pub fn from_str<T: DeserializeOwned>(s: &str) -> Result<T, serde_json::Error> {
    serde_json::from_str(s)
}

#[derive(Serialize, Deserialize)]
struct CrossedElementRepr {
    n: usize,
    m: i64,
    comps: Vec<Poly>,
}

impl Serialize for CrossedElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CrossedElementRepr {
            n: self.spec().n(),
            m: self.spec().m(),
            comps: self.comps().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CrossedElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CrossedElementRepr::deserialize(deserializer)?;
        let spec = GroupSpec::new(repr.n, repr.m).map_err(serde::de::Error::custom)?;
        CrossedElement::new(spec, repr.comps).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupSpecRepr {
    n: usize,
    m: i64,
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupSpecRepr {
            n: self.n(),
            m: self.m(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GroupSpecRepr::deserialize(deserializer)?;
        GroupSpec::new(repr.n, repr.m).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<E> {
    rows: usize,
    cols: usize,
    entries: E,
}

impl<T: RingElement + Serialize> Serialize for AlgMatrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.entries(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: RingElement + Deserialize<'de>> Deserialize<'de> for AlgMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::<Vec<T>>::deserialize(deserializer)?;
        AlgMatrix::new(repr.rows, repr.cols, repr.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn poly_encoding_layout() {
        let p = Poly::new(vec![Complex64::new(1.0, -0.5), Complex64::new(0.0, 2.0)]);
        let s = to_string(&p).unwrap();
        assert_eq!(
            s,
            "[[1.0000000000000000e0,-5.0000000000000000e-1],[0.0,2.0000000000000000e0]]"
        );
        assert_eq!(from_str::<Poly>(&s).unwrap(), p);
    }

    #[test]
    fn crossed_element_encoding() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let x = CrossedElement::monomial(&spec, Poly::z(), 1);
        let s = to_string(&x).unwrap();
        assert!(s.starts_with("{\"n\":3,\"m\":2,\"comps\":[[],"));
        assert_eq!(from_str::<CrossedElement>(&s).unwrap(), x);
        assert!(from_str::<CrossedElement>("{\"n\":4,\"m\":2,\"comps\":[[],[],[],[]]}").is_err());
        assert!(from_str::<CrossedElement>("{\"n\":2,\"m\":1,\"comps\":[[]]}").is_err());
    }

    proptest! {
        #[test]
        fn doubles_round_trip_bit_exactly(re in any::<f64>(), im in any::<f64>()) {
            prop_assume!(re.is_finite() && im.is_finite() && re != 0.0);
            let p = Poly::with_trim(vec![Complex64::new(re, im)], 0.0);
            let back: Poly = from_str(&to_string(&p).unwrap()).unwrap();
            prop_assert_eq!(back.coeff(0).re.to_bits(), re.to_bits());
            prop_assert_eq!(back.coeff(0).im.to_bits(), im.to_bits());
        }
    }
}
