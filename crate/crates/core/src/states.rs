//! Built-in states of the Weyl algebra and finite-rank positivity tests.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weyl_algebra::{WeylElement, WeylIndex};

/// Largest basis accepted by [`check_positivity`].
pub const MAX_GRAM_BASIS: usize = 64;

/// A positive normalized linear functional, given by its value on generators.
///
/// * `Position(λ)`: `W(a,b) ↦ e^{iaλ}` if `b = 0`, else `0`.
/// * `Momentum(μ)`: `W(a,b) ↦ e^{ibμ}` if `a = 0`, else `0`.
/// * `Vacuum`: `W(a,b) ↦ e^{-iab/2} e^{-(a²+b²)/4}`, the Gaussian ground
///   state of the Schrödinger representation read in normal order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateFunctional {
    Position { lambda: Rational },
    Momentum { mu: Rational },
    Vacuum,
}

impl StateFunctional {
    pub fn position(lambda: Rational) -> Self {
        StateFunctional::Position { lambda }
    }

    pub fn momentum(mu: Rational) -> Self {
        StateFunctional::Momentum { mu }
    }

    pub fn vacuum() -> Self {
        StateFunctional::Vacuum
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            StateFunctional::Position { .. } => "position",
            StateFunctional::Momentum { .. } => "momentum",
            StateFunctional::Vacuum => "vacuum",
        }
    }

    /// Value on a single normal-ordered generator.
    pub fn on_generator(&self, idx: &WeylIndex) -> Complex64 {
        match self {
            StateFunctional::Position { lambda } => {
                if idx.b.is_zero() {
                    (&idx.a * lambda).cis()
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            StateFunctional::Momentum { mu } => {
                if idx.a.is_zero() {
                    (&idx.b * mu).cis()
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            StateFunctional::Vacuum => {
                let (a, b) = (idx.a.to_f64(), idx.b.to_f64());
                let damp = (-(a * a + b * b) / 4.0).exp();
                Complex64::from_polar(damp, -(&idx.a * &idx.b).to_f64() / 2.0)
            }
        }
    }

    pub fn evaluate(&self, x: &WeylElement) -> Complex64 {
        x.terms().map(|(idx, c)| c * self.on_generator(idx)).sum()
    }
}

impl fmt::Display for StateFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateFunctional::Position { lambda } => write!(f, "position:{lambda}"),
            StateFunctional::Momentum { mu } => write!(f, "momentum:{mu}"),
            StateFunctional::Vacuum => write!(f, "vacuum"),
        }
    }
}

impl FromStr for StateFunctional {
    type Err = Error;

    /// `position:<λ>`, `momentum:<μ>` or `vacuum`; a JSON record
    /// `{"kind":"position","lambda":"3/2"}` is accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            return Ok(serde_json::from_str(t)?);
        }
        let (kind, param) = match t.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (t, None),
        };
        match (kind.to_ascii_lowercase().as_str(), param) {
            ("position", Some(p)) => Ok(StateFunctional::position(p.parse()?)),
            ("momentum", Some(p)) => Ok(StateFunctional::momentum(p.parse()?)),
            ("vacuum", None) => Ok(StateFunctional::Vacuum),
            _ => Err(Error::UnknownState(s.to_string())),
        }
    }
}

pub fn position_state(lambda: Rational) -> StateFunctional {
    StateFunctional::position(lambda)
}

pub fn momentum_state(mu: Rational) -> StateFunctional {
    StateFunctional::momentum(mu)
}

pub fn vacuum_state() -> StateFunctional {
    StateFunctional::Vacuum
}

/// `G_ij = ω(x_i* x_j)`.
pub fn gram_matrix(state: &StateFunctional, basis: &[WeylElement]) -> DMatrix<Complex64> {
    let adjoints: Vec<WeylElement> = basis.iter().map(WeylElement::adjoint).collect();
    DMatrix::from_fn(basis.len(), basis.len(), |i, j| state.evaluate(&adjoints[i].multiply(&basis[j])))
}

/// Minimum eigenvalue of the Gram matrix of `basis` under `state`.
///
/// The matrix is symmetrized before diagonalization; the Hermitian defect of
/// the raw matrix is at the 1e-15 level for built-in states.
pub fn check_positivity(state: &StateFunctional, basis: &[WeylElement]) -> Result<f64> {
    if basis.is_empty() || basis.len() > MAX_GRAM_BASIS {
        return Err(Error::InvalidArgument(format!(
            "positivity basis must have 1..={MAX_GRAM_BASIS} elements, got {}",
            basis.len()
        )));
    }
    let g = gram_matrix(state, basis);
    min_hermitian_eigenvalue(&g)
}

pub(crate) fn min_hermitian_eigenvalue(g: &DMatrix<Complex64>) -> Result<f64> {
    let n = g.nrows();
    let h = (g + g.adjoint()).scale(0.5);
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, 10_000).ok_or(Error::EigenFailure(n))?;
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Largest `|G_ij - conj(G_ji)|`.
pub fn hermitian_defect(g: &DMatrix<Complex64>) -> f64 {
    (g - g.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
        (x - y).norm() <= tol
    }

    #[test]
    fn position_values() {
        let w = position_state(r(1, 1));
        let v = w.evaluate(&WeylElement::u(r(2, 1)));
        assert!(close(v, Complex64::from_polar(1.0, 2.0), 1e-15));
        assert_eq!(w.evaluate(&WeylElement::v(r(1, 1))), Complex64::new(0.0, 0.0));
        assert_eq!(w.evaluate(&WeylElement::identity()), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn momentum_values() {
        let w = momentum_state(r(1, 1));
        let v = w.evaluate(&WeylElement::v(r(3, 1)));
        assert!(close(v, Complex64::from_polar(1.0, 3.0), 1e-15));
        assert_eq!(w.evaluate(&WeylElement::u(r(1, 1))), Complex64::new(0.0, 0.0));
        assert_eq!(w.evaluate(&WeylElement::identity()), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn vacuum_values() {
        let w = vacuum_state();
        assert!(close(w.evaluate(&WeylElement::identity()), Complex64::new(1.0, 0.0), 1e-12));
        // quadrature oracle (scipy, 1e-14 abs): 0.3678794411714424
        assert!(close(w.evaluate(&WeylElement::u(r(2, 1))), Complex64::new(0.3678794411714424, 0.0), 1e-12));
        // quadrature oracle: 0.5322807302156707 - 0.2907862882126919i
        let v = w.evaluate(&WeylElement::generator(r(1, 1), r(1, 1)));
        assert!(close(v, Complex64::new(0.5322807302156707, -0.2907862882126919), 1e-12));
        // quadrature oracle: 0.15479920238584371 + 0.2410854735661305i
        let v = w.evaluate(&WeylElement::generator(r(-2, 1), r(1, 1)));
        assert!(close(v, Complex64::new(0.15479920238584371, 0.2410854735661305), 1e-12));
    }

    #[test]
    fn linearity() {
        let w = position_state(r(1, 1));
        let x = &WeylElement::u(r(2, 1)) + &WeylElement::v(r(1, 1));
        assert!(close(w.evaluate(&x), Complex64::from_polar(1.0, 2.0), 1e-15));
        assert_eq!(w.evaluate(&WeylElement::zero()), Complex64::new(0.0, 0.0));
        let two = WeylElement::identity().scale(Complex64::new(2.0, 0.0));
        assert!(close(vacuum_state().evaluate(&two), Complex64::new(2.0, 0.0), 1e-12));
    }

    #[test]
    fn gram_examples() {
        let w = position_state(r(7, 3));
        let g = gram_matrix(&w, &[WeylElement::identity()]);
        assert_eq!(g[(0, 0)], Complex64::new(1.0, 0.0));

        let g = gram_matrix(&w, &[WeylElement::identity(), WeylElement::v(r(1, 1))]);
        assert_eq!(g, DMatrix::identity(2, 2));

        let g = gram_matrix(&vacuum_state(), &[WeylElement::identity(), WeylElement::u(r(1, 1))]);
        let q = (-0.25f64).exp();
        let expect = DMatrix::from_row_slice(2, 2, &[1.0, q, q, 1.0]).map(|x| Complex64::new(x, 0.0));
        assert!((g - expect).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn positivity_examples() {
        let m = check_positivity(&vacuum_state(), &[WeylElement::identity()]).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!(check_positivity(&vacuum_state(), &[]).is_err());
        let big = vec![WeylElement::identity(); MAX_GRAM_BASIS + 1];
        assert!(check_positivity(&vacuum_state(), &big).is_err());
    }

    #[test]
    fn detects_a_non_positive_matrix() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]).map(|x| Complex64::new(x, 0.0));
        assert!((min_hermitian_eigenvalue(&g).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!("position:3/2".parse::<StateFunctional>().unwrap(), position_state(r(3, 2)));
        assert_eq!("momentum:-1".parse::<StateFunctional>().unwrap(), momentum_state(r(-1, 1)));
        assert_eq!("vacuum".parse::<StateFunctional>().unwrap(), vacuum_state());
        assert!("thermal".parse::<StateFunctional>().is_err());
        assert!("position".parse::<StateFunctional>().is_err());
        let json = serde_json::to_string(&position_state(r(3, 2))).unwrap();
        assert_eq!(json, r#"{"kind":"position","lambda":"3/2"}"#);
        assert_eq!(json.parse::<StateFunctional>().unwrap(), position_state(r(3, 2)));
        assert_eq!(serde_json::to_string(&vacuum_state()).unwrap(), r#"{"kind":"vacuum"}"#);
    }
}
