//! Serde helpers: exact scalars as `"p/q"` strings, floats in scientific
//! notation with [`FLOAT_DIGITS`] fractional digits.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::linalg::{format_rational, Rational};
use crate::polymatrix::UnivariatePolynomial;
use crate::space::Vector;

pub const FLOAT_DIGITS: usize = 12;
pub const FLOAT_FORMAT: &str = "scientific, 12 fractional digits";

pub fn format_float(x: f64) -> String {
    format!("{:.*e}", FLOAT_DIGITS, x)
}

pub fn rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

pub fn rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&format_rational(x))?;
    }
    seq.end()
}

pub fn opt_rational<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&format_rational(x)),
        None => s.serialize_none(),
    }
}

pub fn float<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_float(*x))
}

pub fn opt_float<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&format_float(*x)),
        None => s.serialize_none(),
    }
}

pub fn floats<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&format_float(*x))?;
    }
    seq.end()
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rationals(&self.0, s)
    }
}

impl Serialize for UnivariatePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
