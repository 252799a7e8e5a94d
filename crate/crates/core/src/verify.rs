//! Seeded property sweeps over every module, grouped into suites. Each line
//! names the identity it checks; the CLI `verify` subcommand prints them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::almost_periodic::{self, haar_fourier, invariant_mean, momentum_fourier_witness};
use crate::error::Error;
use crate::gns::{self, Direction, GnsVector};
use crate::position_rep::{self, FiniteSupportVector, Flavor};
use crate::rational::Rational;
use crate::sampling::Sampler;
use crate::schrodinger_oracle as oracle;
use crate::states::{self, StateFunctional};
use crate::weyl_algebra::WeylElement;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Algebra,
    Reps,
    Gns,
    Ap,
    Oracle,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Reps => "reps",
            Suite::Gns => "gns",
            Suite::Ap => "ap",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Algebra, Suite::Reps, Suite::Gns, Suite::Ap, Suite::Oracle],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "algebra" => Suite::Algebra,
            "reps" => Suite::Reps,
            "gns" => Suite::Gns,
            "ap" => Suite::Ap,
            "oracle" => Suite::Oracle,
            "all" => Suite::All,
            other => return Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {} ({}) [{}]", self.name, verdict, self.detail, self.anchor)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Collector {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn push(&mut self, name: impl Into<String>, anchor: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name: name.into(), anchor, passed, detail: detail.into() });
    }
}

pub fn run(suite: Suite, seed: u64) -> Report {
    let mut checks = Vec::new();
    for s in suite.members() {
        let mut c = Collector { suite: s.name(), checks: Vec::new() };
        // each suite gets its own stream so `--suite gns` matches the gns part of `all`
        let mut rng = Sampler::new(seed ^ (s as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        match s {
            Suite::Algebra => algebra(&mut c, &mut rng),
            Suite::Reps => reps(&mut c, &mut rng),
            Suite::Gns => gns_suite(&mut c, &mut rng),
            Suite::Ap => ap(&mut c, &mut rng),
            Suite::Oracle => oracle_suite(&mut c),
            Suite::All => unreachable!(),
        }
        checks.extend(c.checks);
    }
    Report { seed, checks }
}

fn algebra(c: &mut Collector, rng: &mut Sampler) {
    let n = 200;
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (a, b) = (rng.rational(10, 12), rng.rational(10, 12));
        let lhs = WeylElement::u(a.clone()).multiply(&WeylElement::v(b.clone()));
        let rhs = WeylElement::v(b.clone()).multiply(&WeylElement::u(a.clone())).scale((-(&a * &b)).cis());
        worst = worst.max(lhs.max_deviation(&rhs));
    }
    c.push("Weyl relation", "U_a V_b = e^{-iab} V_b U_a", worst < 1e-12, format!("{n} samples, max deviation {worst:.1e}"));

    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (x, y, z) = (rng.word(3, 10, 12), rng.word(3, 10, 12), rng.word(3, 10, 12));
        worst = worst.max(x.multiply(&y).multiply(&z).max_deviation(&x.multiply(&y.multiply(&z))));
    }
    c.push("associativity", "(xy)z = x(yz)", worst < 1e-10, format!("50 triples, max deviation {worst:.1e}"));

    let mut worst: f64 = 0.0;
    let mut indices_exact = true;
    for _ in 0..50 {
        let (x, y) = (rng.word(4, 10, 12), rng.word(4, 10, 12));
        worst = worst.max(x.multiply(&y).adjoint().max_deviation(&y.adjoint().multiply(&x.adjoint())));
        let xx = x.adjoint().adjoint();
        indices_exact &= xx.terms().map(|t| t.0).eq(x.terms().map(|t| t.0));
        worst = worst.max(xx.max_deviation(&x));
    }
    c.push(
        "*-algebra laws",
        "(xy)* = y*x*, x** = x",
        worst < 1e-12 && indices_exact,
        format!("50 pairs, max deviation {worst:.1e}"),
    );

    let mut ok = true;
    for _ in 0..100 {
        let (a, b, a2, b2) = (rng.rational(10, 12), rng.rational(10, 12), rng.rational(10, 12), rng.rational(10, 12));
        let p = WeylElement::generator(a.clone(), b.clone()).multiply(&WeylElement::generator(a2.clone(), b2.clone()));
        let target = crate::WeylIndex::new(&a + &a2, &b + &b2);
        ok &= p.len() == 1 && (p.coefficient(&target).norm() - 1.0).abs() < 1e-12;
    }
    c.push("group law", "W(a,b)W(a',b') = e^{ia'b} W(a+a',b+b')", ok, "100 pairs");

    let mut ok = true;
    for _ in 0..50 {
        let (x, y) = (rng.word(4, 10, 12), rng.word(4, 10, 12));
        ok &= x.multiply(&y).l1_bound() <= x.l1_bound() * y.l1_bound() + 1e-9;
    }
    c.push("l1 bound submultiplicative", "‖xy‖₁ ≤ ‖x‖₁‖y‖₁", ok, "50 pairs");
}

fn reps(c: &mut Collector, rng: &mut Sampler) {
    for flavor in [Flavor::Position, Flavor::Momentum] {
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let (a, b, p) = (rng.rational(10, 12), rng.rational(10, 12), rng.rational(10, 12));
            worst = worst.max(position_rep::weyl_relation_check_in(flavor, &a, &b, &p));
        }
        c.push(
            format!("Weyl relation on basis vectors ({})", flavor.name()),
            "U_a V_b φ = e^{-iab} V_b U_a φ",
            worst < 1e-12,
            format!("200 samples, max deviation {worst:.1e}"),
        );
    }

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (a, l) = (rng.rational(10, 12), rng.rational(10, 12));
        let phi = FiniteSupportVector::basis(Flavor::Position, l.clone());
        worst = worst.max(position_rep::apply_u(&a, &phi).max_deviation(&phi.scale((&a * &l).cis())));
    }
    c.push("position eigenrelation", "U_a φ_λ = e^{iaλ} φ_λ", worst < 1e-12, format!("100 samples, max deviation {worst:.1e}"));

    let phi = FiniteSupportVector::basis(Flavor::Position, Rational::integer(1));
    let q = position_rep::apply_q(&phi).expect("position flavor");
    let errs: Vec<f64> = (10..=14)
        .map(|k| {
            let a = Rational::new(1, 1 << k);
            position_rep::finite_difference_generator(&a, &phi).expect("nonzero step").max_deviation(&q)
        })
        .collect();
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[1] / w[0]).collect();
    let ok = ratios.iter().all(|r| (r - 0.5).abs() < 0.05) && errs[0] <= 1.0 / 1024.0;
    c.push("generator Q by finite differences", "Qφ = -i lim a⁻¹(U_a - I)φ", ok, format!("error ratios {ratios:.4?}"));

    let mut ok = position_rep::v_direction_matrix_element(&Rational::zero(), &Rational::integer(3)) == Complex64::new(1.0, 0.0);
    let mut bs = vec![Rational::new(1, 1_000_000)];
    bs.extend((0..49).map(|_| rng.nonzero_rational(10, 1000)));
    for b in &bs {
        let l = rng.rational(10, 12);
        ok &= position_rep::v_direction_matrix_element(b, &l) == Complex64::new(0.0, 0.0);
        ok &= position_rep::u_direction_matrix_element(b, &l) == Complex64::new(0.0, 0.0);
    }
    c.push("nonregularity", "⟨φ_λ, V_b φ_λ⟩ = 1 if b = 0 else 0", ok, format!("{} nonzero b, exact", bs.len()));

    let refused = position_rep::apply_q(&FiniteSupportVector::basis(Flavor::Momentum, Rational::zero())).is_err()
        && position_rep::apply_p(&FiniteSupportVector::basis(Flavor::Position, Rational::zero())).is_err();
    c.push("complementary generators refused", "no Q with sharp momentum, no P with sharp position", refused, "typed error");

    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let v = rng_vector(rng, Flavor::Position);
        let w = rng_vector(rng, Flavor::Position);
        let (a, b) = (rng.rational(10, 12), rng.rational(10, 12));
        let before = position_rep::inner(&v, &w).expect("same flavor");
        let au = position_rep::inner(&position_rep::apply_u(&a, &v), &position_rep::apply_u(&a, &w)).expect("same flavor");
        let av = position_rep::inner(&position_rep::apply_v(&b, &v), &position_rep::apply_v(&b, &w)).expect("same flavor");
        worst = worst.max((before - au).norm()).max((before - av).norm());
    }
    c.push("unitarity", "⟨U v, U w⟩ = ⟨v, w⟩", worst < 1e-12, format!("50 pairs, max deviation {worst:.1e}"));
}

fn rng_vector(rng: &mut Sampler, flavor: Flavor) -> FiniteSupportVector {
    let n = 1 + rng.index(5);
    let amps: Vec<_> = (0..n).map(|_| (rng.rational(10, 4), rng.complex())).collect();
    FiniteSupportVector::from_amplitudes(flavor, amps)
}

fn gns_suite(c: &mut Collector, rng: &mut Sampler) {
    let kinds = [
        StateFunctional::position(rng.rational(10, 12)),
        StateFunctional::momentum(rng.rational(10, 12)),
        StateFunctional::Vacuum,
    ];
    for state in &kinds {
        let mut worst = f64::INFINITY;
        let mut failed = None;
        for _ in 0..100 {
            let n = 1 + rng.index(8);
            let basis: Vec<WeylElement> = (0..n).map(|_| rng.generator(3, 4)).collect();
            match states::check_positivity(state, &basis) {
                Ok(m) => worst = worst.min(m),
                Err(e) => failed = Some(e.to_string()),
            }
        }
        let detail = match &failed {
            Some(e) => e.clone(),
            None => format!("100 bases, min eigenvalue {worst:.3e}"),
        };
        c.push(format!("positivity ({})", state.kind_name()), "ω(x*x) ≥ 0", failed.is_none() && worst >= -1e-10, detail);
    }

    for state in &kinds {
        let o = GnsVector::cyclic(state.clone());
        let mut worst: f64 = 0.0;
        for _ in 0..30 {
            let (x, y) = (rng.word(3, 3, 4), rng.word(3, 3, 4));
            let lhs = gns::gns_apply(&x.multiply(&y), &o);
            let rhs = gns::gns_apply(&x, &gns::gns_apply(&y, &o));
            worst = worst.max(gns::gns_distance(&lhs, &rhs).unwrap_or(f64::INFINITY));
        }
        c.push(
            format!("representation property ({})", state.kind_name()),
            "π(xy)Ω = π(x)π(y)Ω",
            worst < 1e-12,
            format!("30 pairs, max distance {worst:.1e}"),
        );
    }

    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let l = rng.rational(10, 12);
        let words: Vec<WeylElement> = (0..50).map(|_| rng.word(3, 10, 12)).collect();
        worst = worst.max(gns::equivalence_check(&l, &words).unwrap_or(f64::INFINITY));
    }
    c.push(
        "GNS of ω_λ ≅ position representation",
        "ω_λ(x*y) = ⟨xφ_λ, yφ_λ⟩",
        worst < 1e-12,
        format!("5 λ × 50 words, max deviation {worst:.1e}"),
    );

    for make in [StateFunctional::position as fn(Rational) -> StateFunctional, StateFunctional::momentum] {
        let mut all = true;
        let mut name = "";
        for _ in 0..10 {
            let state = make(rng.rational(10, 12));
            name = state.kind_name();
            let probes: Vec<Rational> = (0..6).map(|_| rng.rational(10, 12)).collect();
            all &= gns::eigenvector_witness(&state, &probes).map(|r| r.passed()).unwrap_or(false);
        }
        c.push(
            format!("complementarity witness ({name})"),
            "sharp value of one group ⇒ the other group is discontinuous",
            all,
            "10 states",
        );
    }

    let fps =
        [gns::regularity_fingerprint(&kinds[0]), gns::regularity_fingerprint(&kinds[1]), gns::regularity_fingerprint(&kinds[2])];
    let ok = fps == [(true, false), (false, true), (true, true)] && fps[0] != fps[1] && fps[1] != fps[2] && fps[0] != fps[2];
    c.push("regularity fingerprints", "position, momentum and vacuum representations are inequivalent", ok, format!("{fps:?}"));

    let grid: Vec<Rational> = (-16..=16).map(|k| Rational::new(k, 64)).collect();
    let mut ok = true;
    for (t, v) in gns::continuity_scan(&kinds[0], Direction::V, &grid).expect("grid non-empty") {
        ok &= v == if t.is_zero() { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    for (t, v) in gns::continuity_scan(&kinds[1], Direction::U, &grid).expect("grid non-empty") {
        ok &= v == if t.is_zero() { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    for d in [Direction::U, Direction::V] {
        for (t, v) in gns::continuity_scan(&StateFunctional::Vacuum, d, &grid).expect("grid non-empty") {
            ok &= (v - Complex64::new(1.0, 0.0)).norm() <= 2.0 * t.to_f64().abs();
        }
    }
    c.push("continuity scans", "indicator of {0} vs Gaussian", ok, format!("{} grid points per scan", grid.len()));
}

fn ap(c: &mut Collector, rng: &mut Sampler) {
    let mut ok = true;
    for _ in 0..50 {
        let (f, g, h) = (rng.trig_polynomial(4, 3, 4), rng.trig_polynomial(4, 3, 4), rng.trig_polynomial(4, 3, 4));
        let comm = f.multiply(&g).add(&g.multiply(&f).scale(Complex64::new(-1.0, 0.0)));
        let assoc = f.multiply(&g).multiply(&h).add(&f.multiply(&g.multiply(&h)).scale(Complex64::new(-1.0, 0.0)));
        ok &= comm.terms().all(|(_, k)| k.norm() < 1e-12) && assoc.terms().all(|(_, k)| k.norm() < 1e-10);
        ok &= f.conjugate().conjugate() == f;
        let m = invariant_mean(&f.conjugate().multiply(&f));
        let energy: f64 = f.terms().map(|(_, k)| k.norm_sqr()).sum();
        ok &= m.re >= 0.0 && (m.re - energy).abs() < 1e-12;
        let t = rng.rational(10, 12);
        ok &= invariant_mean(&f.translate(&t)) == invariant_mean(&f);
        let x = rng.rational(10, 12);
        ok &= (f.multiply(&g).evaluate_at_rational(&x) - f.evaluate_at_rational(&x) * g.evaluate_at_rational(&x)).norm()
            < 1e-12 * 100.0;
    }
    c.push("AP algebra laws", "commutative *-algebra, mean(f*f) = Σ|c_j|², translation-invariant mean", ok, "50 triples");

    let mut worst_margin = f64::INFINITY;
    for _ in 0..20 {
        let f = rng.trig_polynomial(5, 3, 8);
        let n = 1e3;
        let q = oracle::mean_quadrature(&f, n).expect("n >= 1");
        let bound = f.truncation_constant() / n;
        worst_margin = worst_margin.min(bound + 1e-9 - (q - invariant_mean(&f)).norm());
    }
    c.push(
        "invariant mean vs quadrature",
        "ω_μ(f) = lim (2N)⁻¹∫_{-N}^{N} f",
        worst_margin >= 0.0,
        format!("20 polynomials at N = 1000, min slack {worst_margin:.2e}"),
    );

    let mut ok = haar_fourier(&Rational::zero()) == Complex64::new(1.0, 0.0);
    for _ in 0..50 {
        let a = rng.nonzero_rational(10, 12);
        ok &= invariant_mean(&almost_periodic::trig_generator(a.clone())) == Complex64::new(0.0, 0.0);
        ok &= haar_fourier(&a) == Complex64::new(0.0, 0.0);
    }
    c.push("Haar coefficients", "ω_μ(u_a) = 0 for a ≠ 0", ok, "50 frequencies");

    let mut ok = true;
    for _ in 0..5 {
        let l = rng.rational(10, 12);
        let mut probes = vec![Rational::zero()];
        probes.extend((0..49).map(|_| rng.nonzero_rational(10, 12)));
        ok &= momentum_fourier_witness(&l, &probes).passed();
    }
    c.push("Haar Fourier witness", "momentum spectral measure of φ_λ has Haar Fourier data", ok, "5 λ × 50 probes, exact");
}

fn oracle_suite(c: &mut Collector) {
    let psi = oracle::default_ground_state();
    let vac = states::vacuum_state();
    let mut worst: f64 = 0.0;
    for a in -2..=2 {
        for b in -2..=2 {
            let (a, b) = (Rational::integer(a), Rational::integer(b));
            let q = oracle::characteristic_function(&psi, &a, &b).unwrap_or(Complex64::new(f64::INFINITY, 0.0));
            worst = worst.max((q - vac.evaluate(&WeylElement::generator(a, b))).norm());
        }
    }
    c.push(
        "vacuum vs quadrature",
        "ω₀(W(a,b)) = ⟨ψ₀, e^{iaQ}e^{ibP}ψ₀⟩",
        worst <= 1e-6,
        format!("5×5 grid, max deviation {worst:.1e}"),
    );

    let family = oracle::uncertainty_test_family();
    let worst = family.iter().map(|(_, p)| oracle::dispersion_product(p)).fold(f64::INFINITY, f64::min);
    let gauss = [0usize, 1, 2, 3, 4].iter().all(|&k| (oracle::dispersion_product(&family[k].1) - 0.5).abs() <= 1e-3);
    c.push(
        "uncertainty relation",
        "ΔQ·ΔP ≥ 1/2",
        worst >= 0.5 - 1e-3 && gauss,
        format!("{} states, min product {worst:.6}", family.len()),
    );

    let fine = oracle::gaussian_ground_state(-12.0, 12.0, 1 << 16).expect("valid window");
    let probes: Vec<f64> = (3..=10).map(|k| oracle::point_mass_probe(&fine, 0.0, 0.5f64.powi(k)).unwrap_or(f64::NAN)).collect();
    let ratios: Vec<f64> = probes.windows(2).map(|w| w[1] / w[0]).collect();
    let ok = ratios.iter().all(|r| (r - 0.5).abs() <= 0.05);
    c.push(
        "no sharp position",
        "⟨ψ, E^Q([λ-ε,λ+ε])ψ⟩ → 0 linearly",
        ok,
        format!(
            "ε = 1/8 … 1/1024, ratios in [{:.4}, {:.4}]",
            ratios.iter().cloned().fold(f64::INFINITY, f64::min),
            ratios.iter().cloned().fold(0.0, f64::max)
        ),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in ["algebra", "reps", "gns", "ap", "oracle", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().name(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [Suite::Algebra, Suite::Reps, Suite::Ap] {
            let r = run(s, 42);
            for c in &r.checks {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a: Vec<String> = run(Suite::Algebra, 5).checks.iter().map(|c| c.to_string()).collect();
        let b: Vec<String> = run(Suite::Algebra, 5).checks.iter().map(|c| c.to_string()).collect();
        assert_eq!(a, b);
    }
}
