//! The Weyl algebra over rational parameters, kept in normal order.
//!
//! A generator is `W(a, b) := U_a V_b`. From `U_a V_b = e^{-iab} V_b U_a` one
//! gets `V_b U_a' = e^{i a' b} U_a' V_b`, hence the product rule
//!
//! ```text
//! W(a, b) · W(a', b') = e^{i a' b} W(a + a', b + b')
//! W(a, b)*            = e^{i a b}  W(-a, -b)
//! ```
//!
//! Indices are exact; coefficients are `Complex64`. The C*-norm is not
//! computed, [`WeylElement::l1_bound`] is an upper bound for it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Coefficients at or below this modulus are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Label `(a, b)` of the normal-ordered generator `U_a V_b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct WeylIndex {
    pub a: Rational,
    pub b: Rational,
}

impl WeylIndex {
    pub fn new(a: Rational, b: Rational) -> Self {
        WeylIndex { a, b }
    }

    pub fn identity() -> Self {
        WeylIndex::new(Rational::zero(), Rational::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for WeylIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}, {})", self.a, self.b)
    }
}

/// Finite linear combination of normal-ordered generators.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct WeylElement {
    terms: BTreeMap<WeylIndex, Complex64>,
}

fn keep(c: Complex64) -> bool {
    c.norm() > PRUNE_THRESHOLD
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement::default()
    }

    pub fn identity() -> Self {
        WeylElement::generator(Rational::zero(), Rational::zero())
    }

    /// `W(a, b)` with coefficient one.
    pub fn generator(a: Rational, b: Rational) -> Self {
        WeylElement::term(Complex64::new(1.0, 0.0), a, b)
    }

    /// `U_a = W(a, 0)`.
    pub fn u(a: Rational) -> Self {
        WeylElement::generator(a, Rational::zero())
    }

    /// `V_b = W(0, b)`.
    pub fn v(b: Rational) -> Self {
        WeylElement::generator(Rational::zero(), b)
    }

    pub fn term(c: Complex64, a: Rational, b: Rational) -> Self {
        WeylElement::from_terms([(WeylIndex::new(a, b), c)])
    }

    /// Collects terms, summing repeated indices and pruning dust.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (WeylIndex, Complex64)>,
    {
        let mut out = WeylElement::zero();
        for (idx, c) in terms {
            out.accumulate(idx, c);
        }
        out.prune();
        out
    }

    fn accumulate(&mut self, idx: WeylIndex, c: Complex64) {
        *self.terms.entry(idx).or_default() += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| keep(*c));
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &WeylIndex) -> Complex64 {
        self.terms.get(idx).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.accumulate(idx.clone(), *c);
        }
        out.prune();
        out
    }

    pub fn scale(&self, c: Complex64) -> WeylElement {
        WeylElement::from_terms(self.terms.iter().map(|(i, x)| (i.clone(), c * x)))
    }

    /// Bilinear extension of `W(a,b)·W(a',b') = e^{i a' b} W(a+a', b+b')`.
    pub fn multiply(&self, other: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero();
        for (l, x) in &self.terms {
            for (r, y) in &other.terms {
                let phase = (&r.a * &l.b).cis();
                let idx = WeylIndex::new(&l.a + &r.a, &l.b + &r.b);
                out.accumulate(idx, x * y * phase);
            }
        }
        out.prune();
        out
    }

    /// `W(a,b)* = e^{iab} W(-a,-b)`, conjugate-linear in the coefficients.
    pub fn adjoint(&self) -> WeylElement {
        WeylElement::from_terms(self.terms.iter().map(|(idx, c)| {
            let phase = (&idx.a * &idx.b).cis();
            (WeylIndex::new(-&idx.a, -&idx.b), c.conj() * phase)
        }))
    }

    /// Sum of coefficient moduli; bounds the C*-norm from above.
    pub fn l1_bound(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc + c.norm())
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_deviation(&self, other: &WeylElement) -> f64 {
        let diff = self.sub(other);
        diff.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn sub(&self, other: &WeylElement) -> WeylElement {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)·{}", c.re, c.im, idx)?;
        }
        Ok(())
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        WeylElement::add(self, rhs)
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        WeylElement::sub(self, rhs)
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.multiply(rhs)
    }
}

impl Mul<&WeylElement> for Complex64 {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        rhs.scale(self)
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(x: &WeylElement) -> (WeylIndex, Complex64) {
        assert_eq!(x.len(), 1, "expected one term in {x}");
        let (i, c) = x.terms().next().unwrap();
        (i.clone(), *c)
    }

    #[test]
    fn generators() {
        let id = WeylElement::generator(Rational::zero(), Rational::zero());
        assert_eq!(id, WeylElement::identity());
        let (i, k) = single(&WeylElement::u(r(1, 1)));
        assert_eq!(i, WeylIndex::new(r(1, 1), Rational::zero()));
        assert_eq!(k, c(1.0, 0.0));
        let (i, _) = single(&WeylElement::v(r(1, 1)));
        assert_eq!(i, WeylIndex::new(Rational::zero(), r(1, 1)));
    }

    #[test]
    fn normal_ordered_product_has_no_phase() {
        let p = WeylElement::u(r(1, 1)).multiply(&WeylElement::v(r(1, 1)));
        let (i, k) = single(&p);
        assert_eq!(i, WeylIndex::new(r(1, 1), r(1, 1)));
        assert_eq!(k, c(1.0, 0.0));
    }

    #[test]
    fn reordering_picks_up_phase() {
        let p = WeylElement::v(r(1, 1)).multiply(&WeylElement::u(r(1, 1)));
        let (i, k) = single(&p);
        assert_eq!(i, WeylIndex::new(r(1, 1), r(1, 1)));
        let e = Complex64::from_polar(1.0, 1.0);
        assert!((k - e).norm() < 1e-15);
        assert!((k.re - 0.5403).abs() < 1e-4 && (k.im - 0.8415).abs() < 1e-4);
    }

    #[test]
    fn generator_times_adjoint_is_identity() {
        let w = WeylElement::generator(r(2, 1), r(3, 1));
        let p = w.multiply(&w.adjoint());
        let (i, k) = single(&p);
        assert!(i.is_identity());
        assert!((k - c(1.0, 0.0)).norm() < 1e-12);
        let p = w.adjoint().multiply(&w);
        assert!(single(&p).0.is_identity());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(WeylElement::identity().adjoint(), WeylElement::identity());
        let (i, k) = single(&WeylElement::generator(r(1, 1), r(1, 1)).adjoint());
        assert_eq!(i, WeylIndex::new(r(-1, 1), r(-1, 1)));
        assert!((k - Complex64::from_polar(1.0, 1.0)).norm() < 1e-15);
        let z = c(0.3, -2.0);
        let (i, k) = single(&WeylElement::term(z, r(5, 7), Rational::zero()).adjoint());
        assert_eq!(i, WeylIndex::new(r(-5, 7), Rational::zero()));
        assert_eq!(k, z.conj());
    }

    #[test]
    fn linear_structure() {
        let u = WeylElement::u(r(1, 1));
        let (_, k) = single(&u.add(&u));
        assert_eq!(k, c(2.0, 0.0));
        assert!(u.scale(c(0.0, 0.0)).is_zero());
        assert!(u.add(&u.scale(c(-1.0, 0.0))).is_zero());
        assert!(WeylElement::term(c(1e-16, 0.0), r(1, 1), r(1, 1)).is_zero());
    }

    #[test]
    fn l1_examples() {
        assert_eq!(WeylElement::identity().l1_bound(), 1.0);
        let s = &WeylElement::u(r(1, 1)) + &WeylElement::v(r(1, 1));
        assert_eq!(s.l1_bound(), 2.0);
        let e = WeylElement::term(Complex64::from_polar(1.0, 1.0), r(1, 1), r(1, 1));
        assert!((e.l1_bound() - 1.0).abs() < 1e-12);
    }

    pub(crate) fn rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=8).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn element(max_terms: usize) -> impl Strategy<Value = WeylElement> {
        prop::collection::vec((rational(), rational(), -2.0..2.0f64, -2.0..2.0f64), 1..=max_terms).prop_map(|ts| {
            WeylElement::from_terms(ts.into_iter().map(|(a, b, re, im)| (WeylIndex::new(a, b), Complex64::new(re, im))))
        })
    }

    proptest! {
        #[test]
        fn weyl_relation(a in rational(), b in rational()) {
            let ua = WeylElement::u(a.clone());
            let vb = WeylElement::v(b.clone());
            let lhs = ua.multiply(&vb);
            let rhs = vb.multiply(&ua).scale((-(&a * &b)).cis());
            prop_assert!(lhs.max_deviation(&rhs) < 1e-12);
        }

        #[test]
        fn associativity(x in element(3), y in element(3), z in element(3)) {
            let l = x.multiply(&y).multiply(&z);
            let r = x.multiply(&y.multiply(&z));
            prop_assert!(l.max_deviation(&r) < 1e-10);
        }

        #[test]
        fn star_laws(x in element(4), y in element(4)) {
            let l = x.multiply(&y).adjoint();
            let r = y.adjoint().multiply(&x.adjoint());
            prop_assert!(l.max_deviation(&r) < 1e-12);
            let xx = x.adjoint().adjoint();
            prop_assert_eq!(xx.terms().map(|t| t.0.clone()).collect::<Vec<_>>(),
                            x.terms().map(|t| t.0.clone()).collect::<Vec<_>>());
            prop_assert!(xx.max_deviation(&x) < 1e-12);
        }

        #[test]
        fn group_law(a in rational(), b in rational(), a2 in rational(), b2 in rational()) {
            let p = WeylElement::generator(a.clone(), b.clone())
                .multiply(&WeylElement::generator(a2.clone(), b2.clone()));
            prop_assert_eq!(p.len(), 1);
            let (i, k) = p.terms().next().unwrap();
            prop_assert_eq!(i, &WeylIndex::new(&a + &a2, &b + &b2));
            prop_assert!((k.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn l1_submultiplicative(x in element(4), y in element(4)) {
            prop_assert!(x.multiply(&y).l1_bound() <= x.l1_bound() * y.l1_bound() + 1e-9);
        }
    }
}
