//! Text formats: JSON record lists for elements, vectors and polynomials,
//! and CSV for continuity scans. Rationals are exact strings (`"p/q"`),
//! coefficients shortest round-trip decimals.

use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::almost_periodic::TrigPolynomial;
use crate::error::{Error, Result};
use crate::position_rep::{FiniteSupportVector, Flavor};
use crate::rational::Rational;
use crate::weyl_algebra::{WeylElement, WeylIndex};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub a: Rational,
    pub b: Rational,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub point: Rational,
    pub re: f64,
    pub im: f64,
    pub flavor: Flavor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreqRecord {
    pub freq: Rational,
    pub re: f64,
    pub im: f64,
}

fn finite(re: f64, im: f64) -> Result<Complex64> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(Error::InvalidArgument(format!("non-finite coefficient ({re}, {im})")))
    }
}

pub fn element_records(x: &WeylElement) -> Vec<TermRecord> {
    x.terms().map(|(idx, c)| TermRecord { a: idx.a.clone(), b: idx.b.clone(), re: c.re, im: c.im }).collect()
}

pub fn element_to_json(x: &WeylElement) -> String {
    serde_json::to_string_pretty(&element_records(x)).expect("records serialize")
}

pub fn element_from_records(records: Vec<TermRecord>) -> Result<WeylElement> {
    let terms = records.into_iter().map(|r| Ok((WeylIndex::new(r.a, r.b), finite(r.re, r.im)?))).collect::<Result<Vec<_>>>()?;
    Ok(WeylElement::from_terms(terms))
}

pub fn element_from_json(s: &str) -> Result<WeylElement> {
    element_from_records(serde_json::from_str(s)?)
}

pub fn vector_to_json(v: &FiniteSupportVector) -> String {
    let records: Vec<PointRecord> =
        v.amplitudes().map(|(k, c)| PointRecord { point: k.clone(), re: c.re, im: c.im, flavor: v.flavor() }).collect();
    serde_json::to_string_pretty(&records).expect("records serialize")
}

/// An empty record list yields the zero vector of `empty_flavor`.
pub fn vector_from_json(s: &str, empty_flavor: Flavor) -> Result<FiniteSupportVector> {
    let records: Vec<PointRecord> = serde_json::from_str(s)?;
    let flavor = records.first().map_or(empty_flavor, |r| r.flavor);
    if let Some(r) = records.iter().find(|r| r.flavor != flavor) {
        return Err(Error::FlavorMismatch(flavor.name(), r.flavor.name()));
    }
    let amps = records.into_iter().map(|r| Ok((r.point, finite(r.re, r.im)?))).collect::<Result<Vec<_>>>()?;
    Ok(FiniteSupportVector::from_amplitudes(flavor, amps))
}

pub fn poly_to_json(f: &TrigPolynomial) -> String {
    let records: Vec<FreqRecord> = f.terms().map(|(a, c)| FreqRecord { freq: a.clone(), re: c.re, im: c.im }).collect();
    serde_json::to_string_pretty(&records).expect("records serialize")
}

pub fn poly_from_json(s: &str) -> Result<TrigPolynomial> {
    let records: Vec<FreqRecord> = serde_json::from_str(s)?;
    let terms = records.into_iter().map(|r| Ok((r.freq, finite(r.re, r.im)?))).collect::<Result<Vec<_>>>()?;
    Ok(TrigPolynomial::from_terms(terms))
}

/// Shortest round-trip decimal, with `-0` printed as `0`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

/// `parameter,re,im` with a header line.
pub fn scan_to_csv(rows: &[(Rational, Complex64)]) -> String {
    let mut out = String::from("parameter,re,im\n");
    for (t, z) in rows {
        let _ = writeln!(out, "{},{},{}", t, format_real(z.re), format_real(z.im));
    }
    out
}
