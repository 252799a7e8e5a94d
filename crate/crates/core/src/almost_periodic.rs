//! Trigonometric polynomials `f(x) = Σ c_j e^{i a_j x}`, the dense
//! *-subalgebra of the almost periodic functions `AP(ℝ) ≅ C(bℝ)`.
//!
//! The Bohr compactification is never materialized. Everything here works
//! with character data: the generators `u_a(x) = e^{iax}`, the invariant mean
//! (the frequency-zero coefficient) and the Fourier coefficients of Haar
//! measure on `bℝ`, which vanish at every nonzero frequency.
//!
//! A probability measure on `bℝ` is fixed by its Fourier coefficients, and
//! Haar measure gives `ℝ` (a countable union of cosets of a null subgroup)
//! measure zero. That last step is a σ-additivity statement outside the
//! computable fragment; [`momentum_fourier_witness`] checks the Fourier side.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::position_rep;
use crate::rational::Rational;
use crate::weyl_algebra::PRUNE_THRESHOLD;

/// Points sampled by [`TrigPolynomial::sup_norm_bounds`].
pub const SUP_SAMPLES: usize = 1024;

#[derive(Clone, PartialEq, Debug, Default)]
pub struct TrigPolynomial {
    coefficients: BTreeMap<Rational, Complex64>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        TrigPolynomial::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_terms([(Rational::zero(), c)])
    }

    /// `u_a(x) = e^{iax}`.
    pub fn generator(a: Rational) -> Self {
        Self::from_terms([(a, Complex64::new(1.0, 0.0))])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Complex64)>,
    {
        let mut coefficients: BTreeMap<Rational, Complex64> = BTreeMap::new();
        for (a, c) in terms {
            *coefficients.entry(a).or_default() += c;
        }
        coefficients.retain(|_, c| c.norm() > PRUNE_THRESHOLD);
        TrigPolynomial { coefficients }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Complex64)> {
        self.coefficients.iter()
    }

    pub fn coefficient(&self, freq: &Rational) -> Complex64 {
        self.coefficients.get(freq).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms()).map(|(a, c)| (a.clone(), *c)))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(a, c)| (a.clone(), k * c)))
    }

    /// Pointwise product: frequencies add, `u_a u_b = u_{a+b}`.
    pub fn multiply(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().flat_map(|(a, c)| other.terms().map(move |(b, d)| (a + b, c * d))))
    }

    /// Complex conjugate: `conj(u_a) = u_{-a}`.
    pub fn conjugate(&self) -> Self {
        Self::from_terms(self.terms().map(|(a, c)| (-a, c.conj())))
    }

    /// `x ↦ f(x + t)`, i.e. `c_j ↦ c_j e^{i a_j t}`.
    pub fn translate(&self, t: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(a, c)| (a.clone(), c * (a * t).cis())))
    }

    pub fn evaluate_at(&self, x: f64) -> Complex64 {
        self.terms().map(|(a, c)| c * Complex64::from_polar(1.0, a.to_f64() * x)).sum()
    }

    /// Evaluation at a rational point, with the phase `a_j x` formed exactly.
    pub fn evaluate_at_rational(&self, x: &Rational) -> Complex64 {
        self.terms().map(|(a, c)| c * (a * x).cis()).sum()
    }

    /// Limit of the symmetric averages `(2N)⁻¹ ∫_{-N}^{N} f`, which for a
    /// trigonometric polynomial is exactly its frequency-zero coefficient.
    pub fn invariant_mean(&self) -> Complex64 {
        self.coefficient(&Rational::zero())
    }

    /// `lower ≤ sup |f| ≤ upper`: `upper` is `Σ|c_j|`, `lower` the largest
    /// `|f|` over [`SUP_SAMPLES`] points covering one period of the slowest
    /// nonzero frequency, starting at `x = 0`.
    pub fn sup_norm_bounds(&self) -> (f64, f64) {
        let upper = self.coefficients.values().fold(0.0, |acc, c| acc + c.norm());
        let slowest = self.terms().map(|(a, _)| a.to_f64().abs()).filter(|a| *a > 0.0).fold(f64::INFINITY, f64::min);
        let span = if slowest.is_finite() { (std::f64::consts::TAU / slowest).min(1e4) } else { 0.0 };
        let lower = (0..SUP_SAMPLES).map(|k| self.evaluate_at(span * k as f64 / SUP_SAMPLES as f64).norm()).fold(0.0, f64::max);
        (lower.min(upper), upper)
    }

    /// Largest `|a_j|`; used to size quadrature grids.
    pub fn max_abs_frequency(&self) -> f64 {
        self.terms().map(|(a, _)| a.to_f64().abs()).fold(0.0, f64::max)
    }

    /// `Σ_{a_j ≠ 0} 2|c_j| / |a_j|`: `N` times this bounds the gap between the
    /// truncated mean over `[-N, N]` and the invariant mean.
    pub fn truncation_constant(&self) -> f64 {
        self.terms().filter(|(a, _)| !a.is_zero()).fold(0.0, |acc, (a, c)| acc + 2.0 * c.norm() / a.to_f64().abs())
    }
}

pub fn trig_generator(a: Rational) -> TrigPolynomial {
    TrigPolynomial::generator(a)
}

pub fn trig_multiply(f: &TrigPolynomial, g: &TrigPolynomial) -> TrigPolynomial {
    f.multiply(g)
}

pub fn trig_add(f: &TrigPolynomial, g: &TrigPolynomial) -> TrigPolynomial {
    f.add(g)
}

pub fn trig_conjugate(f: &TrigPolynomial) -> TrigPolynomial {
    f.conjugate()
}

pub fn invariant_mean(f: &TrigPolynomial) -> Complex64 {
    f.invariant_mean()
}

/// Fourier coefficient of normalized Haar measure on `bℝ` at frequency `a`:
/// `1` at `a = 0`, `0` otherwise.
pub fn haar_fourier(a: &Rational) -> Complex64 {
    if a.is_zero() {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Fourier data of the momentum spectral measure in a position eigenstate.
#[derive(Clone, Debug)]
pub struct FourierWitness {
    pub lambda: Rational,
    /// `(a, ν̂(a), haar_fourier(a))` per probe.
    pub rows: Vec<(Rational, Complex64, Complex64)>,
}

impl FourierWitness {
    /// Probes where `ν̂(a)` and the Haar coefficient differ (exact comparison).
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|(_, nu, haar)| nu != haar).count()
    }

    pub fn passed(&self) -> bool {
        !self.rows.is_empty() && self.mismatches() == 0
    }
}

/// Computes `ν̂(a) = ⟨φ_λ, V_a φ_λ⟩` in the position representation for each
/// probe and compares it exactly with the Haar coefficient. Agreement on all
/// frequencies means the momentum spectral measure of `φ_λ` is Haar measure.
pub fn momentum_fourier_witness(lambda: &Rational, probes: &[Rational]) -> FourierWitness {
    let rows = probes.iter().map(|a| (a.clone(), position_rep::v_direction_matrix_element(a, lambda), haar_fourier(a))).collect();
    FourierWitness { lambda: lambda.clone(), rows }
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

    fn one_plus(a: Rational) -> TrigPolynomial {
        TrigPolynomial::constant(c(1.0, 0.0)).add(&TrigPolynomial::generator(a))
    }

    #[test]
    fn algebra_examples() {
        let p = trig_multiply(&trig_generator(r(1, 1)), &trig_generator(r(-1, 1)));
        assert_eq!(p, TrigPolynomial::constant(c(1.0, 0.0)));
        assert_eq!(trig_conjugate(&trig_generator(r(2, 3))), trig_generator(r(-2, 3)));
        let p = one_plus(r(1, 1)).multiply(&one_plus(r(-1, 1)));
        let expect = TrigPolynomial::from_terms([(r(0, 1), c(2.0, 0.0)), (r(1, 1), c(1.0, 0.0)), (r(-1, 1), c(1.0, 0.0))]);
        assert_eq!(p, expect);
        assert_eq!(trig_add(&p, &p.scale(c(-1.0, 0.0))), TrigPolynomial::zero());
    }

    #[test]
    fn mean_examples() {
        assert_eq!(invariant_mean(&trig_generator(r(5, 3))), c(0.0, 0.0));
        assert_eq!(invariant_mean(&TrigPolynomial::constant(c(3.0, 0.0))), c(3.0, 0.0));
        let f = TrigPolynomial::from_terms([(r(0, 1), c(2.0, 0.0)), (r(1, 2), c(5.0, 0.0)), (r(-3, 1), c(0.0, -1.0))]);
        assert_eq!(invariant_mean(&f), c(2.0, 0.0));
        // adaptive quadrature of the N = 10⁴ average (mpmath): 1.99901203 + 2.7e-5i
        assert!((invariant_mean(&f) - c(1.99901203356123, 2.67555147289125e-5)).norm() < 1e-2);
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(trig_generator(r(7, 2)).evaluate_at(0.0), c(1.0, 0.0));
        let v = trig_generator(r(2, 1)).evaluate_at_rational(&r(3, 1));
        assert!((v - Complex64::from_polar(1.0, 6.0)).norm() < 1e-15);
        let p = one_plus(r(1, 1)).multiply(&one_plus(r(-1, 1)));
        // 2 + 2cos(1)
        assert!((p.evaluate_at(1.0) - c(3.08060461173628, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sup_bounds() {
        let (lo, hi) = trig_generator(r(3, 7)).sup_norm_bounds();
        assert!((lo - 1.0).abs() < 1e-12 && hi == 1.0);
        let (lo, hi) = TrigPolynomial::constant(c(0.0, -2.5)).sup_norm_bounds();
        assert_eq!((lo, hi), (2.5, 2.5));
        let (lo, hi) = one_plus(r(1, 1)).sup_norm_bounds();
        assert!(lo >= 1.99 && hi == 2.0);
        assert_eq!(TrigPolynomial::zero().sup_norm_bounds(), (0.0, 0.0));
    }

    #[test]
    fn haar_coefficients() {
        assert_eq!(haar_fourier(&Rational::zero()), c(1.0, 0.0));
        assert_eq!(haar_fourier(&r(1, 1)), c(0.0, 0.0));
        assert_eq!(haar_fourier(&r(-7, 3)), c(0.0, 0.0));
    }

    #[test]
    fn witness_examples() {
        assert!(momentum_fourier_witness(&Rational::zero(), &[Rational::zero()]).passed());
        let w = momentum_fourier_witness(&Rational::zero(), &[r(1, 1), r(1, 2), r(-3, 1)]);
        assert!(w.passed());
        assert!(w.rows.iter().all(|(_, nu, _)| *nu == c(0.0, 0.0)));
        assert!(!momentum_fourier_witness(&Rational::zero(), &[]).passed());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=8).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn poly() -> impl Strategy<Value = TrigPolynomial> {
        prop::collection::vec((rational(), -2.0..2.0f64, -2.0..2.0f64), 0..6)
            .prop_map(|ts| TrigPolynomial::from_terms(ts.into_iter().map(|(a, re, im)| (a, c(re, im)))))
    }

    fn close(f: &TrigPolynomial, g: &TrigPolynomial, tol: f64) -> bool {
        f.add(&g.scale(c(-1.0, 0.0))).terms().all(|(_, k)| k.norm() < tol)
    }

    proptest! {
        #[test]
        fn commutative_associative(f in poly(), g in poly(), h in poly()) {
            prop_assert!(close(&f.multiply(&g), &g.multiply(&f), 1e-12));
            prop_assert!(close(&f.multiply(&g).multiply(&h), &f.multiply(&g.multiply(&h)), 1e-10));
        }

        #[test]
        fn conjugation_is_an_involution(f in poly(), g in poly()) {
            prop_assert_eq!(f.conjugate().conjugate(), f.clone());
            prop_assert!(close(&f.multiply(&g).conjugate(), &f.conjugate().multiply(&g.conjugate()), 1e-12));
        }

        #[test]
        fn mean_is_positive(f in poly()) {
            let m = invariant_mean(&f.conjugate().multiply(&f));
            let energy: f64 = f.terms().map(|(_, c)| c.norm_sqr()).sum();
            prop_assert!((m.re - energy).abs() < 1e-12 && m.im.abs() < 1e-12);
            prop_assert!(m.re >= 0.0);
        }

        #[test]
        fn mean_is_translation_invariant(f in poly(), t in rational()) {
            prop_assert_eq!(invariant_mean(&f.translate(&t)), invariant_mean(&f));
        }

        #[test]
        fn evaluation_is_multiplicative(f in poly(), g in poly(), x in rational()) {
            let lhs = f.multiply(&g).evaluate_at_rational(&x);
            let rhs = f.evaluate_at_rational(&x) * g.evaluate_at_rational(&x);
            prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + f.sup_norm_bounds().1 * g.sup_norm_bounds().1));
        }

        #[test]
        fn c_star_bounds_bracket(f in poly()) {
            let (lo, hi) = f.sup_norm_bounds();
            prop_assert!(lo <= hi + 1e-12);
            let (lo2, hi2) = f.conjugate().multiply(&f).sup_norm_bounds();
            // ‖f*f‖ = ‖f‖², so each certified interval must reach the other squared
            prop_assert!(lo * lo <= hi2 + 1e-9);
            prop_assert!(lo2 <= hi * hi + 1e-9);
        }

        #[test]
        fn witness_sweep(l in rational(), probes in prop::collection::vec(rational(), 1..50)) {
            prop_assert!(momentum_fourier_witness(&l, &probes).passed());
        }
    }
}
