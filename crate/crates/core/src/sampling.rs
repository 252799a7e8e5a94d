//! Seeded random inputs for the verification sweeps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::almost_periodic::TrigPolynomial;
use crate::rational::Rational;
use crate::weyl_algebra::{WeylElement, WeylIndex};

pub const DEFAULT_SEED: u64 = 42;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform-ish rational in `[-bound, bound]` with denominator in `1..=max_denom`.
    pub fn rational(&mut self, bound: i64, max_denom: i64) -> Rational {
        let d = self.rng.random_range(1..=max_denom);
        let n = self.rng.random_range(-bound * d..=bound * d);
        Rational::new(n, d)
    }

    pub fn nonzero_rational(&mut self, bound: i64, max_denom: i64) -> Rational {
        loop {
            let r = self.rational(bound, max_denom);
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0))
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.random_range(0.0..1.0)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Word with `1..=max_terms` terms and parameters bounded by `bound`.
    pub fn word(&mut self, max_terms: usize, bound: i64, max_denom: i64) -> WeylElement {
        let n = self.rng.random_range(1..=max_terms);
        let terms: Vec<_> = (0..n)
            .map(|_| {
                let idx = WeylIndex::new(self.rational(bound, max_denom), self.rational(bound, max_denom));
                (idx, self.complex())
            })
            .collect();
        WeylElement::from_terms(terms)
    }

    pub fn generator(&mut self, bound: i64, max_denom: i64) -> WeylElement {
        WeylElement::generator(self.rational(bound, max_denom), self.rational(bound, max_denom))
    }

    pub fn trig_polynomial(&mut self, terms: usize, bound: i64, max_denom: i64) -> TrigPolynomial {
        let ts: Vec<_> = (0..terms).map(|_| (self.rational(bound, max_denom), self.complex())).collect();
        TrigPolynomial::from_terms(ts)
    }
}
