//! Grid-quadrature model of the Schrödinger representation on `L₂(ℝ)`.
//!
//! `Q` multiplies by `x`, `P = -i d/dx`, so `e^{iaQ} e^{ibP} ψ(x) = e^{iax} ψ(x+b)`.
//! All integrals are trapezoidal on a uniform grid. This module is the
//! independent oracle for the regular (vacuum) state and for the facts about
//! `Q` and `P` in the ordinary representation; it shares nothing with the
//! algebraic code beyond [`Rational`] and [`TrigPolynomial`] inputs.

use num_complex::Complex64;

use crate::almost_periodic::TrigPolynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default half-width of the quadrature window.
pub const DEFAULT_HALF_WIDTH: f64 = 12.0;
/// Default number of grid points.
pub const DEFAULT_COUNT: usize = 1 << 14;
/// Smallest grid accepted for the ground state.
pub const MIN_COUNT: usize = 1024;

/// Samples of a wavefunction on `x_k = x_min + k·step`, `k = 0..count`.
#[derive(Clone, Debug)]
pub struct GridWavefunction {
    pub samples: Vec<Complex64>,
    pub x_min: f64,
    pub x_max: f64,
    pub step: f64,
}

/// `x_k`, computed so that a window symmetric about 0 gives `x_{n-1-k} = -x_k` exactly.
fn grid_point(x_min: f64, x_max: f64, n: usize, k: usize) -> f64 {
    let last = (n - 1) as f64;
    (x_min * (n - 1 - k) as f64 + x_max * k as f64) / last
}

/// Trapezoidal sum of samples with uniform spacing.
fn trapezoid<T>(values: &[T], step: f64) -> T
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
{
    match values.len() {
        0 => T::default(),
        1 => T::default(),
        n => {
            let inner = values[1..n - 1].iter().fold(T::default(), |acc, v| acc + *v);
            (inner + (values[0] + values[n - 1]) * 0.5) * step
        }
    }
}

impl GridWavefunction {
    /// Samples `f` on the grid and normalizes in the trapezoidal `L₂` norm.
    pub fn from_fn(x_min: f64, x_max: f64, count: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if count < 2 || !(x_max > x_min) {
            return Err(Error::WindowTooSmall {
                x_min,
                x_max,
                reason: format!("need x_max > x_min and at least 2 points, got {count}"),
            });
        }
        let samples = (0..count).map(|k| f(grid_point(x_min, x_max, count, k))).collect();
        let mut psi = GridWavefunction { samples, x_min, x_max, step: (x_max - x_min) / (count - 1) as f64 };
        let n = psi.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidArgument("wavefunction has zero or non-finite norm".into()));
        }
        psi.samples.iter_mut().for_each(|s| *s /= n);
        Ok(psi)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, k: usize) -> f64 {
        grid_point(self.x_min, self.x_max, self.samples.len(), k)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn norm(&self) -> f64 {
        let dens: Vec<f64> = self.samples.iter().map(|s| s.norm_sqr()).collect();
        trapezoid(&dens, self.step).sqrt()
    }

    /// Linear interpolation, zero outside the window.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        if x < self.x_min || x > self.x_max {
            return Complex64::new(0.0, 0.0);
        }
        let pos = (x - self.x_min) / self.step;
        let k = (pos.floor() as usize).min(self.samples.len() - 2);
        let frac = pos - k as f64;
        self.samples[k] * (1.0 - frac) + self.samples[k + 1] * frac
    }

    /// `⟨ψ, Qψ⟩`.
    pub fn mean_position(&self) -> f64 {
        let v: Vec<f64> = (0..self.len()).map(|k| self.x(k) * self.samples[k].norm_sqr()).collect();
        trapezoid(&v, self.step)
    }

    /// Centered-difference derivative, one-sided at the ends.
    fn derivative(&self) -> Vec<Complex64> {
        let n = self.samples.len();
        let h = self.step;
        (0..n)
            .map(|k| {
                if k == 0 {
                    (self.samples[1] - self.samples[0]) / h
                } else if k == n - 1 {
                    (self.samples[n - 1] - self.samples[n - 2]) / h
                } else {
                    (self.samples[k + 1] - self.samples[k - 1]) / (2.0 * h)
                }
            })
            .collect()
    }

    /// `Δ_ψ Q`.
    pub fn position_dispersion(&self) -> f64 {
        let m = self.mean_position();
        let v: Vec<f64> = (0..self.len()).map(|k| (self.x(k) - m).powi(2) * self.samples[k].norm_sqr()).collect();
        trapezoid(&v, self.step).max(0.0).sqrt()
    }

    /// `Δ_ψ P`, from `⟨P⟩ = ∫ conj(ψ)(-iψ')` and `⟨P²⟩ = ∫ |ψ'|²`.
    pub fn momentum_dispersion(&self) -> f64 {
        let d = self.derivative();
        let p1: Vec<Complex64> = self.samples.iter().zip(&d).map(|(s, ds)| s.conj() * ds * Complex64::new(0.0, -1.0)).collect();
        let p2: Vec<f64> = d.iter().map(|ds| ds.norm_sqr()).collect();
        let mean = trapezoid(&p1, self.step).re;
        (trapezoid(&p2, self.step) - mean * mean).max(0.0).sqrt()
    }

    /// `∫_lo^hi` of the piecewise-linear interpolant of `|ψ|²`.
    fn density_integral(&self, lo: f64, hi: f64) -> f64 {
        let lo = lo.max(self.x_min);
        let hi = hi.min(self.x_max);
        if hi <= lo {
            return 0.0;
        }
        let dens = |x: f64| self.interpolate(x).norm_sqr();
        let first = ((lo - self.x_min) / self.step).ceil() as usize;
        let last = ((hi - self.x_min) / self.step).floor() as usize;
        let mut nodes = vec![lo];
        nodes.extend((first..=last.min(self.len() - 1)).map(|k| self.x(k)).filter(|x| *x > lo && *x < hi));
        nodes.push(hi);
        // |ψ|² of the interpolant is quadratic per cell; the nodes split at the
        // grid points so Simpson is exact.
        nodes.windows(2).map(|w| (w[1] - w[0]) / 6.0 * (dens(w[0]) + 4.0 * dens(0.5 * (w[0] + w[1])) + dens(w[1]))).sum()
    }
}

/// `ψ₀(x) = π^{-1/4} e^{-x²/2}` on `[x_min, x_max]`.
pub fn gaussian_ground_state(x_min: f64, x_max: f64, count: usize) -> Result<GridWavefunction> {
    if x_min > -8.0 || x_max < 8.0 {
        return Err(Error::WindowTooSmall { x_min, x_max, reason: "window must contain [-8, 8]".into() });
    }
    if count < MIN_COUNT {
        return Err(Error::WindowTooSmall { x_min, x_max, reason: format!("need at least {MIN_COUNT} points, got {count}") });
    }
    GridWavefunction::from_fn(x_min, x_max, count, |x| {
        Complex64::new(std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)
    })
}

/// Ground state on the default window `[-12, 12]` with `2¹⁴` points.
pub fn default_ground_state() -> GridWavefunction {
    gaussian_ground_state(-DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH, DEFAULT_COUNT).expect("default window is valid")
}

/// Gaussian of width `sigma` centred at `x0` with momentum kick `k`.
pub fn gaussian_packet(x0: f64, sigma: f64, k: f64) -> Result<GridWavefunction> {
    GridWavefunction::from_fn(-DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH, DEFAULT_COUNT, |x| {
        let y = (x - x0) / sigma;
        Complex64::from_polar((-y * y / 2.0).exp(), k * x)
    })
}

/// `⟨ψ, e^{iaQ} e^{ibP} ψ⟩ = ∫ conj(ψ(x)) e^{iax} ψ(x+b) dx`.
pub fn characteristic_function(psi: &GridWavefunction, a: &Rational, b: &Rational) -> Result<Complex64> {
    let (af, bf) = (a.to_f64(), b.to_f64());
    if bf.abs() > psi.width() / 4.0 {
        return Err(Error::ShiftOutOfWindow { shift: bf, width: psi.width() });
    }
    let vals: Vec<Complex64> = (0..psi.len())
        .map(|k| {
            let x = psi.x(k);
            psi.samples[k].conj() * Complex64::from_polar(1.0, af * x) * psi.interpolate(x + bf)
        })
        .collect();
    Ok(trapezoid(&vals, psi.step))
}

/// `(Δ_ψ Q)(Δ_ψ P)`, at least `1/2` for every state.
pub fn dispersion_product(psi: &GridWavefunction) -> f64 {
    psi.position_dispersion() * psi.momentum_dispersion()
}

/// `⟨ψ, E^Q([λ-ε, λ+ε]) ψ⟩ = ∫_{λ-ε}^{λ+ε} |ψ|²`, which tends to zero
/// linearly in `ε`: no state gives positive probability to a sharp position.
pub fn point_mass_probe(psi: &GridWavefunction, lambda: f64, eps: f64) -> Result<f64> {
    if !(eps > psi.step) {
        return Err(Error::InvalidArgument(format!("probe half-width {eps} must exceed the grid step {}", psi.step)));
    }
    Ok(psi.density_integral(lambda - eps, lambda + eps).clamp(0.0, 1.0))
}

/// Trapezoidal `(2N)⁻¹ ∫_{-N}^{N} f(x) dx`.
pub fn mean_quadrature(f: &TrigPolynomial, n: f64) -> Result<Complex64> {
    if !(n >= 1.0) || !n.is_finite() {
        return Err(Error::InvalidArgument(format!("averaging half-width must be >= 1, got {n}")));
    }
    let step = 0.05 / f.max_abs_frequency().max(1.0);
    let cells = (2.0 * n / step).ceil() as usize;
    let h = 2.0 * n / cells as f64;
    let vals: Vec<Complex64> = (0..=cells).map(|k| f.evaluate_at(grid_point(-n, n, cells + 1, k))).collect();
    Ok(trapezoid(&vals, h) / (2.0 * n))
}

/// Ten test states for the uncertainty relation: Gaussians (plain, shifted,
/// squeezed, stretched, boosted) and two-bump superpositions.
pub fn uncertainty_test_family() -> Vec<(&'static str, GridWavefunction)> {
    let two_bumps = |sep: f64, rel: Complex64| {
        GridWavefunction::from_fn(-DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH, DEFAULT_COUNT, move |x| {
            let l = (-(x + sep).powi(2) / 2.0).exp();
            let r = (-(x - sep).powi(2) / 2.0).exp();
            Complex64::new(l, 0.0) + rel * r
        })
    };
    vec![
        ("ground state", Ok(default_ground_state())),
        ("shifted x0=1", gaussian_packet(1.0, 1.0, 0.0)),
        ("squeezed width 2", gaussian_packet(0.0, 2.0, 0.0)),
        ("squeezed width 1/2", gaussian_packet(0.0, 0.5, 0.0)),
        ("boosted k=2", gaussian_packet(-1.0, 1.0, 2.0)),
        ("two bumps ±1", two_bumps(1.0, Complex64::new(1.0, 0.0))),
        ("two bumps ±2", two_bumps(2.0, Complex64::new(1.0, 0.0))),
        ("two bumps ±3 odd", two_bumps(3.0, Complex64::new(-1.0, 0.0))),
        ("two bumps ±2 phase i", two_bumps(2.0, Complex64::new(0.0, 1.0))),
        (
            "first excited",
            GridWavefunction::from_fn(-DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH, DEFAULT_COUNT, |x| {
                Complex64::new(x * (-x * x / 2.0).exp(), 0.0)
            }),
        ),
    ]
    .into_iter()
    .map(|(name, psi)| (name, psi.expect("family members are valid")))
    .collect()
}
