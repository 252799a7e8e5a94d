//! Exact rational parameters.
//!
//! Every Weyl parameter, translation key and frequency is a [`Rational`], so
//! support questions (is `b == 0`? do two keys coincide?) are decided exactly.
//! Only phases are ever converted to floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

const TAU_DIGITS: &str = "6283185307179586476925286766559005768394338798750211641949889";

fn tau() -> &'static BigRational {
    static TAU: OnceLock<BigRational> = OnceLock::new();
    TAU.get_or_init(|| {
        let numer: BigInt = TAU_DIGITS.parse().expect("digits");
        let denom = BigInt::from(10u32).pow((TAU_DIGITS.len() - 1) as u32);
        BigRational::new(numer, denom)
    })
}

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Nearest `f64`. Huge numerators saturate to ±∞; callers only feed this
    /// into phases and grids of modest size.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `e^{i·self}`. The angle is reduced modulo `2π` before conversion, so
    /// the only roundings are those of the reduced angle and of `sin`/`cos`.
    pub fn cis(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.reduced_angle())
    }

    /// `self - 2πk` in `[-π, π]` (up to rounding) as `f64`.
    fn reduced_angle(&self) -> f64 {
        use std::f64::consts::{PI, TAU};
        const TAU_LO: f64 = 2.4492935982947064e-16;
        const EXACT: f64 = 9007199254740992.0; // 2^53

        let theta = self.to_f64();
        if theta.abs() <= PI || !theta.is_finite() {
            return theta;
        }
        let turns = (theta / TAU).round();
        if let (Some(p), Some(q)) = (self.numer().to_i64(), self.denom().to_i64()) {
            let (p, q) = (p as f64, q as f64);
            let m = turns * q;
            if p.abs() < EXACT && q < EXACT && m.abs() < EXACT {
                // m·τ_hi = prod + err exactly; p - prod is exact (Sterbenz)
                let prod = m * TAU;
                let err = m.mul_add(TAU, -prod);
                return ((p - prod) - err - m * TAU_LO) / q;
            }
        }
        match BigInt::from_f64(turns) {
            Some(k) => (&self.0 - tau() * BigRational::from_integer(k)).to_f64().unwrap_or(theta),
            None => theta,
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and `-p/q`, surrounding whitespace ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::BadRational(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let valid = |p: &str, allow_sign: bool| {
            let digits = if allow_sign { p.strip_prefix(['-', '+']).unwrap_or(p) } else { p };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num, true) || !valid(den, false) {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Parse a comma-separated list of rationals, e.g. `0,1/8,-1/64`.
pub fn parse_list(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}
