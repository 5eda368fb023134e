use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A named check parameter. Serialised as a plain number when real and as a
/// `[re, im]` pair otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamValue(pub Complex64);

impl From<Complex64> for ParamValue {
    fn from(z: Complex64) -> Self {
        ParamValue(z)
    }
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue(Complex64::new(x, 0.0))
    }
}

impl From<usize> for ParamValue {
    fn from(x: usize) -> Self {
        ParamValue(Complex64::new(x as f64, 0.0))
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            f.write_str(&format_real(self.0.re))
        } else {
            f.write_str(&format_complex(self.0))
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        complex::serialize_flexible(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for ParamValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        complex::deserialize(d).map(ParamValue)
    }
}

/// Shortest round-trip digits; positional for magnitudes in `[1e-5, 1e16)`,
/// scientific otherwise.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `re+imi` / `re-imi` with [`format_real`] parts.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() && !z.im.is_nan() {
        format!("{}-{}i", format_real(z.re), format_real(-z.im))
    } else {
        format!("{}+{}i", format_real(z.re), format_real(z.im))
    }
}

/// Outcome of one identity check.
///
/// `abs_err = |lhs - rhs|`, `rel_err = abs_err / (1 + max(|lhs|, |rhs|))` and
/// `pass` holds exactly when `rel_err <= tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: BTreeMap<String, ParamValue>,
    #[serde(with = "complex::pair")]
    pub lhs: Complex64,
    #[serde(with = "complex::pair")]
    pub rhs: Complex64,
    #[serde(with = "float")]
    pub abs_err: f64,
    #[serde(with = "float")]
    pub rel_err: f64,
    pub tol: f64,
    pub nodes_used: u64,
    pub pass: bool,
    pub runtime_ms: f64,
    /// Set when the check could not be evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl VerificationReport {
    pub fn new(
        check_id: impl Into<String>,
        params: BTreeMap<String, ParamValue>,
        lhs: Complex64,
        rhs: Complex64,
        tol: f64,
        nodes_used: u64,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / (1.0 + lhs.norm().max(rhs.norm()));
        VerificationReport {
            check_id: check_id.into(),
            params,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            nodes_used,
            pass: rel_err <= tol,
            runtime_ms: 0.0,
            diagnostic: None,
        }
    }

    /// A report for a check whose evaluation raised an error.
    pub fn failed(check_id: impl Into<String>, params: BTreeMap<String, ParamValue>, tol: f64, diagnostic: String) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        VerificationReport {
            check_id: check_id.into(),
            params,
            lhs: zero,
            rhs: zero,
            abs_err: f64::INFINITY,
            rel_err: f64::INFINITY,
            tol,
            nodes_used: 0,
            pass: false,
            runtime_ms: 0.0,
            diagnostic: Some(diagnostic),
        }
    }

    /// Compact one-line rendering for text output.
    pub fn summary_line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!(
            "{} {} [{}] lhs={} rhs={} rel_err={:.3e} tol={} nodes={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check_id,
            params.join(" "),
            format_complex(self.lhs),
            format_complex(self.rhs),
            self.rel_err,
            format_real(self.tol),
            self.nodes_used
        );
        if let Some(d) = &self.diagnostic {
            line.push_str(" diagnostic=");
            line.push_str(d);
        }
        line
    }
}

/// Non-finite floats are written as the strings `"inf"`, `"-inf"` and `"nan"`.
pub(crate) mod float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Num(f64),
        Text(String),
    }

    impl Repr {
        pub(crate) fn into_f64<E: serde::de::Error>(self) -> Result<f64, E> {
            match self {
                Repr::Num(x) => Ok(x),
                Repr::Text(t) => match t.as_str() {
                    "inf" => Ok(f64::INFINITY),
                    "-inf" => Ok(f64::NEG_INFINITY),
                    "nan" => Ok(f64::NAN),
                    other => Err(E::custom(format!("expected a number, got {other:?}"))),
                },
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Repr::deserialize(d)?.into_f64()
    }
}

/// Complex numbers as JSON: `[re, im]` pairs, and where a scalar is allowed a
/// bare number for real values.
pub(crate) mod complex {
    use num_complex::Complex64;
    use serde::ser::SerializeTuple;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::float;

    struct F(f64);

    impl Serialize for F {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            float::serialize(&self.0, s)
        }
    }

    fn serialize_pair<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&F(z.re))?;
        t.serialize_element(&F(z.im))?;
        t.end()
    }

    /// Integral real values are written as JSON integers.
    pub fn serialize_flexible<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        if z.im == 0.0 {
            let re = z.re;
            if re.fract() == 0.0 && re.abs() < 9.0e15 && !(re == 0.0 && re.is_sign_negative()) {
                s.serialize_i64(re as i64)
            } else {
                float::serialize(&re, s)
            }
        } else {
            serialize_pair(z, s)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Pair(float::Repr, float::Repr),
        Scalar(float::Repr),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Pair(re, im) => Ok(Complex64::new(re.into_f64()?, im.into_f64()?)),
            Repr::Scalar(re) => Ok(Complex64::new(re.into_f64()?, 0.0)),
        }
    }

    /// Always a pair on output; a bare number is accepted on input.
    pub mod pair {
        use super::*;

        pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
            serialize_pair(z, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
            super::deserialize(d)
        }
    }

    /// Number for real values, pair otherwise.
    pub mod flexible {
        use super::*;

        pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
            serialize_flexible(z, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
            super::deserialize(d)
        }
    }
}
