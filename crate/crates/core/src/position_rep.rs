//! The nonregular position representation on finitely supported vectors of
//! `l₂(ℝ)`, and its momentum mirror.
//!
//! Position flavor, basis `φ_λ`:
//! `U_a φ_λ = e^{iaλ} φ_λ`, `V_b φ_λ = φ_{λ-b}`.
//!
//! Momentum flavor, basis `φ_μ`:
//! `V_b φ_μ = e^{ibμ} φ_μ`, `U_a φ_μ = φ_{μ+a}`.
//!
//! Both satisfy `U_a V_b = e^{-iab} V_b U_a`. In each flavor one group acts by
//! phases and has a generator (`Q` resp. `P`); the other acts by translating
//! keys, is not weakly continuous, and has no generator.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weyl_algebra::{WeylElement, PRUNE_THRESHOLD};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Position,
    Momentum,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Position => "position",
            Flavor::Momentum => "momentum",
        }
    }
}

/// Finitely supported element of `l₂(ℝ)` with exact rational support.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteSupportVector {
    amplitudes: BTreeMap<Rational, Complex64>,
    flavor: Flavor,
}

impl FiniteSupportVector {
    pub fn zero(flavor: Flavor) -> Self {
        FiniteSupportVector { amplitudes: BTreeMap::new(), flavor }
    }

    /// The basis vector `φ_point`, the indicator of `{point}`.
    pub fn basis(flavor: Flavor, point: Rational) -> Self {
        Self::from_amplitudes(flavor, [(point, Complex64::new(1.0, 0.0))])
    }

    pub fn from_amplitudes<I>(flavor: Flavor, amps: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Complex64)>,
    {
        let mut v = Self::zero(flavor);
        for (k, c) in amps {
            *v.amplitudes.entry(k).or_default() += c;
        }
        v.prune();
        v
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, c| c.norm() > PRUNE_THRESHOLD);
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn amplitude(&self, point: &Rational) -> Complex64 {
        self.amplitudes.get(point).copied().unwrap_or_default()
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&Rational, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().fold(0.0, |acc, c| acc + c.norm_sqr())
    }

    /// `‖f‖ = (Σ |f(x)|²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_flavor(self, other)?;
        Ok(Self::from_amplitudes(
            self.flavor,
            self.amplitudes.iter().chain(other.amplitudes.iter()).map(|(k, c)| (k.clone(), *c)),
        ))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_amplitudes(self.flavor, self.amplitudes.iter().map(|(k, x)| (k.clone(), c * x)))
    }

    /// Largest amplitude modulus of `self - other` over the union of supports.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, c) in &self.amplitudes {
            worst = worst.max((c - other.amplitude(k)).norm());
        }
        for (k, c) in &other.amplitudes {
            if !self.amplitudes.contains_key(k) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    fn map_phase(&self, phase: impl Fn(&Rational) -> Complex64) -> Self {
        Self::from_amplitudes(self.flavor, self.amplitudes.iter().map(|(k, c)| (k.clone(), c * phase(k))))
    }

    fn map_keys(&self, shift: impl Fn(&Rational) -> Rational) -> Self {
        FiniteSupportVector { amplitudes: self.amplitudes.iter().map(|(k, c)| (shift(k), *c)).collect(), flavor: self.flavor }
    }
}

fn same_flavor(u: &FiniteSupportVector, v: &FiniteSupportVector) -> Result<()> {
    if u.flavor != v.flavor {
        return Err(Error::FlavorMismatch(u.flavor.name(), v.flavor.name()));
    }
    Ok(())
}

/// `⟨u, v⟩ = Σ_{x ∈ S_u ∩ S_v} conj(u(x)) v(x)`.
pub fn inner(u: &FiniteSupportVector, v: &FiniteSupportVector) -> Result<Complex64> {
    same_flavor(u, v)?;
    let (small, large, swap) = if u.support_len() <= v.support_len() { (u, v, false) } else { (v, u, true) };
    Ok(small
        .amplitudes
        .iter()
        .filter_map(|(k, s)| large.amplitudes.get(k).map(|l| if swap { l.conj() * s } else { s.conj() * l }))
        .sum())
}

pub fn apply_u(a: &Rational, v: &FiniteSupportVector) -> FiniteSupportVector {
    match v.flavor {
        Flavor::Position => v.map_phase(|lambda| (a * lambda).cis()),
        Flavor::Momentum => v.map_keys(|mu| mu + a),
    }
}

pub fn apply_v(b: &Rational, v: &FiniteSupportVector) -> FiniteSupportVector {
    match v.flavor {
        Flavor::Position => v.map_keys(|lambda| lambda - b),
        Flavor::Momentum => v.map_phase(|mu| (b * mu).cis()),
    }
}

/// Represented action of an algebra element, `W(a,b) = U_a V_b`.
pub fn apply_element(x: &WeylElement, v: &FiniteSupportVector) -> FiniteSupportVector {
    let mut out = FiniteSupportVector::zero(v.flavor);
    for (idx, c) in x.terms() {
        let w = apply_u(&idx.a, &apply_v(&idx.b, v));
        for (k, amp) in w.amplitudes {
            *out.amplitudes.entry(k).or_default() += c * amp;
        }
    }
    out.prune();
    out
}

/// `Q φ_λ = λ φ_λ`. Refused in the momentum representation, where `a ↦ U_a`
/// is not continuous and no position operator exists.
pub fn apply_q(v: &FiniteSupportVector) -> Result<FiniteSupportVector> {
    match v.flavor {
        Flavor::Position => Ok(v.map_phase(|lambda| Complex64::new(lambda.to_f64(), 0.0))),
        Flavor::Momentum => Err(Error::NonexistentObservable("position operator Q in the momentum representation")),
    }
}

/// `P φ_μ = μ φ_μ`, the mirror of [`apply_q`].
pub fn apply_p(v: &FiniteSupportVector) -> Result<FiniteSupportVector> {
    match v.flavor {
        Flavor::Momentum => Ok(v.map_phase(|mu| Complex64::new(mu.to_f64(), 0.0))),
        Flavor::Position => Err(Error::NonexistentObservable("momentum operator P in the position representation")),
    }
}

/// `-i t⁻¹ (G_t - I) v` for the continuous group of the flavor (`U` for
/// position, `V` for momentum). Tends to `Q v` (resp. `P v`) with error at most
/// `|t| max|λ|² / 2` per unit amplitude.
pub fn finite_difference_generator(t: &Rational, v: &FiniteSupportVector) -> Result<FiniteSupportVector> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("finite-difference step must be nonzero".into()));
    }
    let moved = match v.flavor {
        Flavor::Position => apply_u(t, v),
        Flavor::Momentum => apply_v(t, v),
    };
    let factor = Complex64::new(0.0, -1.0 / t.to_f64());
    Ok(moved.add(&v.scale(Complex64::new(-1.0, 0.0)))?.scale(factor))
}

/// Both sides of `U_a V_b φ = e^{-iab} V_b U_a φ` on a basis vector; returns
/// the largest amplitude deviation.
pub fn weyl_relation_check_in(flavor: Flavor, a: &Rational, b: &Rational, point: &Rational) -> f64 {
    let phi = FiniteSupportVector::basis(flavor, point.clone());
    let lhs = apply_u(a, &apply_v(b, &phi));
    let rhs = apply_v(b, &apply_u(a, &phi)).scale((-(a * b)).cis());
    lhs.max_deviation(&rhs)
}

pub fn weyl_relation_check(a: &Rational, b: &Rational, lambda: &Rational) -> f64 {
    weyl_relation_check_in(Flavor::Position, a, b, lambda)
}

/// `⟨φ_λ, V_b φ_λ⟩`: exactly `1` at `b = 0` and exactly `0` otherwise.
pub fn v_direction_matrix_element(b: &Rational, lambda: &Rational) -> Complex64 {
    let phi = FiniteSupportVector::basis(Flavor::Position, lambda.clone());
    inner(&phi, &apply_v(b, &phi)).expect("same flavor")
}

/// `⟨φ_μ, U_a φ_μ⟩` in the momentum representation, the mirror of
/// [`v_direction_matrix_element`].
pub fn u_direction_matrix_element(a: &Rational, mu: &Rational) -> Complex64 {
    let phi = FiniteSupportVector::basis(Flavor::Momentum, mu.clone());
    inner(&phi, &apply_u(a, &phi)).expect("same flavor")
}

/// The three members of the eigenvector argument for the basis vector `φ` at
/// `point`, which is an eigenvector of the phase group of its flavor.
///
/// Momentum flavor (`φ` a common eigenvector of the `V_b`):
/// `phased = e^{iab}⟨φ, U_a φ⟩`, `conjugated = ⟨φ, V_{-b} U_a V_b φ⟩`,
/// `plain = ⟨φ, U_a φ⟩`.
///
/// Position flavor, roles swapped: `phased = e^{iab}⟨φ, V_b φ⟩`,
/// `conjugated = ⟨φ, U_{-a} V_b U_a φ⟩`, `plain = ⟨φ, V_b φ⟩`.
#[derive(Clone, Copy, Debug)]
pub struct EigenvectorChain {
    pub phased: Complex64,
    pub conjugated: Complex64,
    pub plain: Complex64,
}

impl EigenvectorChain {
    /// Largest pairwise gap between the three members.
    pub fn spread(&self) -> f64 {
        let d1 = (self.phased - self.conjugated).norm();
        let d2 = (self.conjugated - self.plain).norm();
        let d3 = (self.phased - self.plain).norm();
        d1.max(d2).max(d3)
    }
}

pub fn eigenvector_chain(flavor: Flavor, a: &Rational, b: &Rational, point: &Rational) -> EigenvectorChain {
    let phi = FiniteSupportVector::basis(flavor, point.clone());
    let phase = (a * b).cis();
    let ip = |w: &FiniteSupportVector| inner(&phi, w).expect("same flavor");
    match flavor {
        Flavor::Momentum => {
            let plain = ip(&apply_u(a, &phi));
            let conjugated = ip(&apply_v(&-b, &apply_u(a, &apply_v(b, &phi))));
            EigenvectorChain { phased: phase * plain, conjugated, plain }
        }
        Flavor::Position => {
            let plain = ip(&apply_v(b, &phi));
            let conjugated = ip(&apply_u(&-a, &apply_v(b, &apply_u(a, &phi))));
            EigenvectorChain { phased: phase * plain, conjugated, plain }
        }
    }
}

/// Deviation of the operator identity `V_{-b} U_a V_b = e^{-iab} U_a`, which
/// follows from the Weyl relation and holds on every vector.
pub fn conjugation_identity_deviation(a: &Rational, b: &Rational, v: &FiniteSupportVector) -> f64 {
    let lhs = apply_v(&-b, &apply_u(a, &apply_v(b, v)));
    let rhs = apply_u(a, v).scale((-(a * b)).cis());
    lhs.max_deviation(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn phi(l: i64) -> FiniteSupportVector {
        FiniteSupportVector::basis(Flavor::Position, r(l, 1))
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn orthonormal_basis() {
        assert_eq!(inner(&phi(1), &phi(2)).unwrap(), c(0.0, 0.0));
        assert_eq!(inner(&phi(1), &phi(1)).unwrap(), c(1.0, 0.0));
        let u = phi(0).add(&phi(1).scale(c(0.0, 1.0))).unwrap();
        assert_eq!(inner(&u, &phi(1)).unwrap(), c(0.0, -1.0));
        assert_eq!(inner(&phi(1), &u).unwrap(), c(0.0, 1.0));
    }

    #[test]
    fn flavor_mismatch() {
        let m = FiniteSupportVector::basis(Flavor::Momentum, r(0, 1));
        assert!(matches!(inner(&phi(0), &m), Err(Error::FlavorMismatch(..))));
        assert!(phi(0).add(&m).is_err());
    }

    #[test]
    fn u_examples() {
        let v = phi(0).add(&phi(1)).unwrap();
        assert_eq!(apply_u(&Rational::zero(), &v), v);
        let w = apply_u(&r(2, 1), &phi(3));
        assert!((w.amplitude(&r(3, 1)) - Complex64::from_polar(1.0, 6.0)).norm() < 1e-15);
        assert_eq!(w.support_len(), 1);
        let w = apply_u(&r(1, 1), &v);
        assert_eq!(w.amplitude(&r(0, 1)), c(1.0, 0.0));
        assert!((w.amplitude(&r(1, 1)) - Complex64::from_polar(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn v_examples() {
        let v = phi(0).add(&phi(5).scale(c(0.5, 0.5))).unwrap();
        assert_eq!(apply_v(&Rational::zero(), &v), v);
        assert_eq!(apply_v(&r(1, 1), &phi(3)), phi(2));
        assert_eq!(apply_v(&r(-1, 1), &apply_v(&r(1, 1), &v)), v);
    }

    #[test]
    fn weyl_relation_examples() {
        assert!(weyl_relation_check(&r(1, 1), &r(1, 1), &r(0, 1)) < 1e-12);
        assert_eq!(weyl_relation_check(&r(3, 7), &Rational::zero(), &r(-5, 2)), 0.0);
    }

    #[test]
    fn q_examples() {
        let q3 = apply_q(&phi(3)).unwrap();
        assert_eq!(q3, phi(3).scale(c(3.0, 0.0)));
        assert!(apply_q(&phi(0)).unwrap().is_zero());
        let m = FiniteSupportVector::basis(Flavor::Momentum, r(1, 1));
        let err = apply_q(&m).unwrap_err();
        assert!(err.to_string().contains("nonexistent observable"));
        assert!(apply_p(&phi(1)).is_err());
        assert_eq!(apply_p(&m).unwrap(), m);
    }

    #[test]
    fn finite_difference_examples() {
        let a = r(1, 1024);
        let d = finite_difference_generator(&a, &phi(1)).unwrap();
        // -i·1024·(e^{i/1024} - 1) = 0.999999841054288 + 0.000488281211232788i (mpmath)
        let amp = d.amplitude(&r(1, 1));
        assert!((amp - c(0.999999841054288, 0.000488281211232788)).norm() < 1e-12);
        let q = apply_q(&phi(1)).unwrap();
        assert!(d.max_deviation(&q) <= 1.0 / 1024.0);
        assert!(finite_difference_generator(&a, &phi(0)).unwrap().is_zero());
        assert!(finite_difference_generator(&Rational::zero(), &phi(1)).is_err());

        let e1 = finite_difference_generator(&a, &phi(1)).unwrap().max_deviation(&q);
        let e2 = finite_difference_generator(&r(1, 2048), &phi(1)).unwrap().max_deviation(&q);
        assert!((e2 / e1 - 0.5).abs() < 0.05);
    }

    #[test]
    fn v_direction_is_an_indicator() {
        assert_eq!(v_direction_matrix_element(&Rational::zero(), &r(5, 1)), c(1.0, 0.0));
        assert_eq!(v_direction_matrix_element(&r(1, 1_000_000), &r(5, 1)), c(0.0, 0.0));
        assert_eq!(v_direction_matrix_element(&r(-2, 1), &Rational::zero()), c(0.0, 0.0));
        assert_eq!(u_direction_matrix_element(&r(1, 1_000_000), &r(5, 1)), c(0.0, 0.0));
        assert_eq!(u_direction_matrix_element(&Rational::zero(), &r(5, 1)), c(1.0, 0.0));
    }

    #[test]
    fn element_action_matches_generators() {
        let x = WeylElement::generator(r(2, 1), r(3, 1));
        let w = apply_element(&x, &phi(1));
        assert_eq!(w.support_len(), 1);
        assert!((w.amplitude(&r(-2, 1)) - Complex64::from_polar(1.0, -4.0)).norm() < 1e-15);
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-60i64..=60, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn flavor() -> impl Strategy<Value = Flavor> {
        prop_oneof![Just(Flavor::Position), Just(Flavor::Momentum)]
    }

    fn vector(f: Flavor) -> impl Strategy<Value = FiniteSupportVector> {
        prop::collection::vec((rational(), -1.0..1.0f64, -1.0..1.0f64), 1..6)
            .prop_map(move |amps| FiniteSupportVector::from_amplitudes(f, amps.into_iter().map(|(k, re, im)| (k, c(re, im)))))
    }

    proptest! {
        #[test]
        fn weyl_relation_both_flavors(f in flavor(), a in rational(), b in rational(), p in rational()) {
            prop_assert!(weyl_relation_check_in(f, &a, &b, &p) < 1e-12);
        }

        #[test]
        fn unitarity(a in rational(), b in rational(), u in vector(Flavor::Position), v in vector(Flavor::Position)) {
            let before = inner(&u, &v).unwrap();
            let after_u = inner(&apply_u(&a, &u), &apply_u(&a, &v)).unwrap();
            let after_v = inner(&apply_v(&b, &u), &apply_v(&b, &v)).unwrap();
            prop_assert!((before - after_u).norm() < 1e-12);
            prop_assert_eq!(before, after_v);
        }

        #[test]
        fn eigenrelation(a in rational(), l in rational()) {
            let p = FiniteSupportVector::basis(Flavor::Position, l.clone());
            let expect = p.scale((&a * &l).cis());
            prop_assert!(apply_u(&a, &p).max_deviation(&expect) < 1e-12);
            let m = FiniteSupportVector::basis(Flavor::Momentum, l.clone());
            let expect = m.scale((&a * &l).cis());
            prop_assert!(apply_v(&a, &m).max_deviation(&expect) < 1e-12);
        }

        #[test]
        fn chain_and_conjugation(f in flavor(), a in rational(), b in rational(), p in rational()) {
            prop_assert!(eigenvector_chain(f, &a, &b, &p).spread() < 1e-12);
            let v = FiniteSupportVector::basis(f, p);
            prop_assert!(conjugation_identity_deviation(&a, &b, &v) < 1e-12);
        }

        #[test]
        fn element_action_is_a_representation(
            f in flavor(),
            v in vector(Flavor::Position),
            terms in prop::collection::vec((rational(), rational()), 1..4),
            terms2 in prop::collection::vec((rational(), rational()), 1..4),
        ) {
            let v = FiniteSupportVector::from_amplitudes(f, v.amplitudes().map(|(k, c)| (k.clone(), *c)));
            let x = WeylElement::from_terms(terms.into_iter().map(|(a, b)| (crate::WeylIndex::new(a, b), c(1.0, 0.5))));
            let y = WeylElement::from_terms(terms2.into_iter().map(|(a, b)| (crate::WeylIndex::new(a, b), c(-0.5, 1.0))));
            let lhs = apply_element(&x.multiply(&y), &v);
            let rhs = apply_element(&x, &apply_element(&y, &v));
            prop_assert!(lhs.max_deviation(&rhs) < 1e-10);
        }
    }
}
