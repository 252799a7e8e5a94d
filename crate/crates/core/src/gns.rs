//! GNS construction for the built-in states.
//!
//! A vector of the GNS space is kept as a formal word `x` standing for `xΩ`,
//! with geometry `⟨xΩ, yΩ⟩ = ω(x* y)`. For position and momentum states the
//! null space is known exactly, and [`reduce`] maps a word onto its canonical
//! coordinates in the `l₂(ℝ)` model. Only the dense finitely generated
//! subspace is represented.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::position_rep::{self, FiniteSupportVector, Flavor};
use crate::rational::Rational;
use crate::states::StateFunctional;
use crate::weyl_algebra::{WeylElement, PRUNE_THRESHOLD};

/// Vacuum-state vectors with squared norm below this are null.
pub const VACUUM_NULL_THRESHOLD: f64 = 1e-12;

/// `word · Ω` in the GNS space of `owner`.
#[derive(Clone, PartialEq, Debug)]
pub struct GnsVector {
    pub word: WeylElement,
    pub owner: StateFunctional,
}

impl GnsVector {
    /// The cyclic vector `Ω`.
    pub fn cyclic(owner: StateFunctional) -> Self {
        GnsVector { word: WeylElement::identity(), owner }
    }

    pub fn from_word(owner: StateFunctional, word: WeylElement) -> Self {
        GnsVector { word, owner }
    }

    /// `ω(w* w)`, real part; may be slightly negative from rounding.
    pub fn norm_sqr(&self) -> f64 {
        self.owner.evaluate(&self.word.adjoint().multiply(&self.word)).re
    }

    /// GNS norm. Uses the canonical reduction where one exists.
    pub fn norm(&self) -> f64 {
        match reduce(self) {
            Ok(r) => r.norm(),
            Err(_) => self.norm_sqr().max(0.0).sqrt(),
        }
    }

    /// Null test: exact (empty reduction) for position and momentum states,
    /// `‖v‖² < 1e-12` for the vacuum.
    pub fn is_null(&self) -> bool {
        match reduce(self) {
            Ok(r) => r.is_zero(),
            Err(_) => self.norm_sqr() < VACUUM_NULL_THRESHOLD,
        }
    }

    pub fn sub(&self, other: &GnsVector) -> Result<GnsVector> {
        check_owner(self, other)?;
        Ok(GnsVector::from_word(self.owner.clone(), &self.word - &other.word))
    }

    pub fn scale(&self, c: Complex64) -> GnsVector {
        GnsVector::from_word(self.owner.clone(), self.word.scale(c))
    }
}

fn check_owner(u: &GnsVector, v: &GnsVector) -> Result<()> {
    if u.owner != v.owner {
        return Err(Error::OwnerMismatch(u.owner.to_string(), v.owner.to_string()));
    }
    Ok(())
}

/// `⟨uΩ, vΩ⟩ = ω(u* v)`.
pub fn gns_inner(u: &GnsVector, v: &GnsVector) -> Result<Complex64> {
    check_owner(u, v)?;
    Ok(u.owner.evaluate(&u.word.adjoint().multiply(&v.word)))
}

/// `π(x) v`.
pub fn gns_apply(x: &WeylElement, v: &GnsVector) -> GnsVector {
    GnsVector::from_word(v.owner.clone(), x.multiply(&v.word))
}

/// GNS-norm distance `‖u - v‖`.
pub fn gns_distance(u: &GnsVector, v: &GnsVector) -> Result<f64> {
    Ok(u.sub(v)?.norm())
}

/// Canonical coordinates of a GNS vector of a position or momentum state.
///
/// Keys are the translation parameter of the non-continuous group: for
/// `ω_λ`, `W(a,b)Ω ↦ e^{ia(λ-b)}` at key `b` (the vector `φ_{λ-b}`); for the
/// momentum state `ω_μ`, `W(a,b)Ω ↦ e^{ibμ}` at key `a` (the vector `φ_{μ+a}`).
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ReducedVector {
    pub amplitudes: BTreeMap<Rational, Complex64>,
}

/// Reduction for position states.
pub type ReducedPositionVector = ReducedVector;

impl ReducedVector {
    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.values().fold(0.0, |acc, c| acc + c.norm_sqr()).sqrt()
    }

    pub fn inner(&self, other: &ReducedVector) -> Complex64 {
        self.amplitudes.iter().filter_map(|(k, c)| other.amplitudes.get(k).map(|d| c.conj() * d)).sum()
    }

    /// The corresponding vector of the explicit representation based at `point`.
    pub fn to_l2(&self, flavor: Flavor, point: &Rational) -> FiniteSupportVector {
        FiniteSupportVector::from_amplitudes(
            flavor,
            self.amplitudes.iter().map(|(k, c)| {
                let p = match flavor {
                    Flavor::Position => point - k,
                    Flavor::Momentum => point + k,
                };
                (p, *c)
            }),
        )
    }
}

fn collect(terms: impl Iterator<Item = (Rational, Complex64)>) -> ReducedVector {
    let mut amplitudes: BTreeMap<Rational, Complex64> = BTreeMap::new();
    for (k, c) in terms {
        *amplitudes.entry(k).or_default() += c;
    }
    amplitudes.retain(|_, c| c.norm() > PRUNE_THRESHOLD);
    ReducedVector { amplitudes }
}

pub fn reduce_position(v: &GnsVector) -> Result<ReducedPositionVector> {
    match &v.owner {
        StateFunctional::Position { lambda } => {
            Ok(collect(v.word.terms().map(|(idx, c)| (idx.b.clone(), c * (&idx.a * &(lambda - &idx.b)).cis()))))
        }
        other => Err(Error::WrongStateKind { expected: "position", got: other.to_string() }),
    }
}

pub fn reduce_momentum(v: &GnsVector) -> Result<ReducedVector> {
    match &v.owner {
        StateFunctional::Momentum { mu } => Ok(collect(v.word.terms().map(|(idx, c)| (idx.a.clone(), c * (&idx.b * mu).cis())))),
        other => Err(Error::WrongStateKind { expected: "momentum", got: other.to_string() }),
    }
}

/// Canonical reduction for whichever of position/momentum owns `v`.
pub fn reduce(v: &GnsVector) -> Result<ReducedVector> {
    match v.owner {
        StateFunctional::Position { .. } => reduce_position(v),
        StateFunctional::Momentum { .. } => reduce_momentum(v),
        StateFunctional::Vacuum => Err(Error::WrongStateKind { expected: "position or momentum", got: v.owner.to_string() }),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    /// `t ↦ U_t`
    U,
    /// `t ↦ V_t`
    V,
}

impl Direction {
    pub fn generator(self, t: Rational) -> WeylElement {
        match self {
            Direction::U => WeylElement::u(t),
            Direction::V => WeylElement::v(t),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::U => "U",
            Direction::V => "V",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "U" | "u" => Ok(Direction::U),
            "V" | "v" => Ok(Direction::V),
            other => Err(Error::InvalidArgument(format!("unknown direction {other:?} (expected U or V)"))),
        }
    }
}

/// `t ↦ ⟨Ω, π(G_t)Ω⟩` on the grid, in grid order.
pub fn continuity_scan(state: &StateFunctional, direction: Direction, grid: &[Rational]) -> Result<Vec<(Rational, Complex64)>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("scan grid is empty".into()));
    }
    Ok(grid.iter().map(|t| (t.clone(), state.evaluate(&direction.generator(t.clone())))).collect())
}

/// Whether `t ↦ π(G_t)` is weakly continuous in the GNS representation.
///
/// Decided from the generator rules: a position state kills every `V_b` with
/// `b ≠ 0`, so `⟨Ω, V_b Ω⟩` is the indicator of `{0}`; the `U` values
/// `e^{iaλ}` are continuous. Mirrored for momentum. The vacuum values are a
/// Gaussian in both parameters.
pub fn is_regular_direction(state: &StateFunctional, direction: Direction) -> bool {
    matches!(
        (state, direction),
        (StateFunctional::Position { .. }, Direction::U)
            | (StateFunctional::Momentum { .. }, Direction::V)
            | (StateFunctional::Vacuum, _)
    )
}

/// `(U continuous, V continuous)`.
pub fn regularity_fingerprint(state: &StateFunctional) -> (bool, bool) {
    (is_regular_direction(state, Direction::U), is_regular_direction(state, Direction::V))
}

/// Evidence that `Ω` is an eigenvector of the continuous group and that the
/// other group then has no continuous matrix element.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub state: StateFunctional,
    /// Largest `‖π(G_t)Ω - e^{itκ}Ω‖` over the eigen-group probes.
    pub eigen_distance: f64,
    /// Number of nonzero probes `s` of the other group with `⟨Ω, π(H_s)Ω⟩ = 0` exactly.
    pub vanishing: usize,
    /// Nonzero probes checked for vanishing.
    pub off_probes: usize,
    /// Largest spread of the eigenvector chain over all probe pairs.
    pub chain_spread: f64,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.eigen_distance < 1e-12 && self.vanishing == self.off_probes && self.chain_spread < 1e-12
    }
}

/// For `Position(λ)`: checks `π(U_a)Ω = e^{iaλ}Ω` for each probe `a`, then
/// `⟨Ω, π(V_b)Ω⟩ = 0` exactly for each nonzero probe `b`, and the chain
/// `e^{iab}⟨φ,V_bφ⟩ = ⟨φ,U_{-a}V_bU_aφ⟩ = ⟨φ,V_bφ⟩` on the explicit
/// representation. Mirrored for `Momentum(μ)`.
pub fn eigenvector_witness(state: &StateFunctional, probes: &[Rational]) -> Result<WitnessReport> {
    let (eigen_dir, other_dir, flavor, point) = match state {
        StateFunctional::Position { lambda } => (Direction::U, Direction::V, Flavor::Position, lambda),
        StateFunctional::Momentum { mu } => (Direction::V, Direction::U, Flavor::Momentum, mu),
        StateFunctional::Vacuum => {
            return Err(Error::WrongStateKind { expected: "position or momentum", got: state.to_string() })
        }
    };
    let omega = GnsVector::cyclic(state.clone());
    let mut eigen_distance: f64 = 0.0;
    for t in probes {
        let moved = gns_apply(&eigen_dir.generator(t.clone()), &omega);
        let expect = omega.scale((t * point).cis());
        eigen_distance = eigen_distance.max(gns_distance(&moved, &expect)?);
    }
    let mut vanishing = 0;
    let mut off_probes = 0;
    for s in probes.iter().filter(|s| !s.is_zero()) {
        off_probes += 1;
        let v = gns_inner(&omega, &gns_apply(&other_dir.generator(s.clone()), &omega))?;
        if v == Complex64::new(0.0, 0.0) {
            vanishing += 1;
        }
    }
    let mut chain_spread: f64 = 0.0;
    for a in probes {
        for b in probes {
            let chain = position_rep::eigenvector_chain(flavor, a, b, point);
            chain_spread = chain_spread.max(chain.spread());
        }
    }
    Ok(WitnessReport { state: state.clone(), eigen_distance, vanishing, off_probes, chain_spread })
}

/// Largest `|⟨xΩ, yΩ⟩_GNS - ⟨xφ, yφ⟩_{l₂}|` over all pairs of words, with the
/// GNS side computed algebraically from the state and the `l₂` side by
/// applying the explicit representation to the basis vector at `point`.
pub fn equivalence_check_in(flavor: Flavor, point: &Rational, words: &[WeylElement]) -> Result<f64> {
    if words.is_empty() {
        return Err(Error::InvalidArgument("equivalence check needs at least one word".into()));
    }
    let state = match flavor {
        Flavor::Position => StateFunctional::position(point.clone()),
        Flavor::Momentum => StateFunctional::momentum(point.clone()),
    };
    let phi = FiniteSupportVector::basis(flavor, point.clone());
    let gns: Vec<GnsVector> = words.iter().map(|w| GnsVector::from_word(state.clone(), w.clone())).collect();
    let l2: Vec<FiniteSupportVector> = words.iter().map(|w| position_rep::apply_element(w, &phi)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..words.len() {
        for j in 0..words.len() {
            let g = gns_inner(&gns[i], &gns[j])?;
            let l = position_rep::inner(&l2[i], &l2[j])?;
            worst = worst.max((g - l).norm());
        }
    }
    Ok(worst)
}

pub fn equivalence_check(lambda: &Rational, words: &[WeylElement]) -> Result<f64> {
    equivalence_check_in(Flavor::Position, lambda, words)
}
