//! Verification suites run by `gtrotor verify` and the acceptance tests.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::gt_basis::{enumerate_patterns, HighestWeight, IrrepBasis};
use crate::numerics::{exact_angle, ratio, Angle, Rational};
use crate::oracle::{normalized_error, rho_oracle_angles};
use crate::racah_algebra::{verify_hilbert, verify_racah_algebra};
use crate::rep::{verify_structure, AlgebraElement};
use crate::report::{Check, Report};
use crate::rotations::{
    bispectral_eigen_residual, bispectral_residual, check_tau_recurrence, hybrid_sigma, orthogonality_residual,
    rho_z, sigma_product, sigma_symmetric, sigma_symmetric_variant, tau_closed_form, verify_transition,
    BispectralKind, EulerAngles, SigmaExpansion, Transition,
};
use crate::specfun::{
    check_krawtchouk_orthogonality, check_krawtchouk_recurrence, check_racah_contiguity, krawtchouk_duality_mismatches,
    krawtchouk_symmetry_mismatches, krawtchouk_symmetry_variant_mismatches, pattern_racah_params, Contiguity,
    KrawtchoukParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Rep,
    Polys,
    Rotations,
    Bispectral,
    RacahAlgebra,
    Hilbert,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Rep => "rep",
            Suite::Polys => "polys",
            Suite::Rotations => "rotations",
            Suite::Bispectral => "bispectral",
            Suite::RacahAlgebra => "racah-algebra",
            Suite::Hilbert => "hilbert",
            Suite::All => "all",
        }
    }
}

pub const ORACLE_SEED: u64 = 20_240_917;
pub const ORACLE_TRIPLES: usize = 20;
pub const ORACLE_BOUND: f64 = 1e-9;
pub const HILBERT_DEGREE: usize = 20;

fn pyth(s: i64, c: i64, h: i64) -> Angle {
    exact_angle(ratio(s, h), ratio(c, h)).expect("pythagorean triple")
}

/// The 27 triples drawn from `(0,1)`, `(3/5,4/5)`, `(5/13,12/13)`.
pub fn pythagorean_triples() -> Vec<EulerAngles> {
    let set = [pyth(0, 1, 1), pyth(3, 4, 5), pyth(5, 12, 13)];
    let mut out = Vec::with_capacity(27);
    for a in &set {
        for b in &set {
            for c in &set {
                out.push(EulerAngles::new(a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// Runs `f` on every basis of height at most `max_height`, in parallel, merging in weight order.
fn per_weight(suite: &str, max_height: i64, f: impl Fn(&IrrepBasis) -> Report + Sync) -> Report {
    let parts: Vec<Report> = HighestWeight::up_to_height(max_height)
        .par_iter()
        .map(|w| match enumerate_patterns(w) {
            Ok(b) => f(&b),
            Err(e) => {
                let mut r = Report::new(suite);
                r.push(Check::new("enumeration", Some(w), false, f64::NAN).with_detail(e.to_string()));
                r
            }
        })
        .collect();
    let mut report = Report::new(suite);
    for p in parts {
        report.extend(p);
    }
    report
}

fn failed(name: &str, w: &HighestWeight, e: impl ToString) -> Check {
    Check::new(name, Some(w), false, f64::NAN).with_detail(e.to_string())
}

/// Enumeration count against the Weyl dimension formula.
pub fn dimensions(max_height: i64) -> Report {
    per_weight("dimensions", max_height, |b| {
        let w = b.weight();
        let mut r = Report::new("dimensions");
        let ok = b.dim() == w.weyl_dimension();
        r.push(Check::new("dimension = Weyl formula", Some(w), ok, 0.0).with_detail(format!("{} patterns", b.dim())));
        r
    })
}

/// Commutators, Casimir values, eigenvalues and the ⋆-structure.
pub fn structure(max_height: i64) -> Report {
    let mut report = per_weight("rep", max_height, verify_structure);
    report.extend(dimensions(max_height));
    report
}

pub const KRAWTCHOUK_PROBABILITIES: [(i64, i64); 3] = [(1, 4), (1, 2), (9, 25)];

pub fn krawtchouk_suite(max_n: i64) -> Report {
    let mut report = Report::new("krawtchouk");
    for (a, b) in KRAWTCHOUK_PROBABILITIES {
        for n in 0..=max_n {
            let params = KrawtchoukParams::new(ratio(a, b), n).expect("valid parameters");
            report.extend(check_krawtchouk_orthogonality(&params));
            report.extend(check_krawtchouk_recurrence(&params));
            let sym = krawtchouk_symmetry_mismatches(&params);
            report.push(Check::new(format!("symmetry p={a}/{b} N={n}"), None, sym == 0, sym as f64));
            let dual = krawtchouk_duality_mismatches(&params);
            report.push(Check::new(format!("self-duality p={a}/{b} N={n}"), None, dual == 0, dual as f64));
            let variant = krawtchouk_symmetry_variant_mismatches(&params);
            if variant > 0 {
                report.note(format!(
                    "p={a}/{b} N={n}: symmetry with prefactor n!/(N-n)! (-1)^(x+n) p^(n-x) (1-p)^(x+n-N) fails at {variant} points"
                ));
            }
        }
    }
    report
}

/// Recurrence of τ and the contiguity relations on every pattern-derived parameter set.
pub fn racah_suite(max_height: i64) -> Report {
    let mut report = per_weight("racah", max_height, |b| {
        let mut r = Report::new("racah");
        match tau_closed_form(b) {
            Ok(t) => r.push(check_tau_recurrence(b, &t)),
            Err(e) => r.push(failed("tau three-term relation", b.weight(), e)),
        }
        r
    });
    let mut params = Vec::new();
    let mut seen = BTreeSet::new();
    for w in HighestWeight::up_to_height(max_height) {
        let b = enumerate_patterns(&w).expect("valid weight");
        for p in b.patterns() {
            let rp = pattern_racah_params(&w, p);
            let key = format!("{},{},{},{}", rp.alpha, rp.beta, rp.gamma, rp.delta);
            if seen.insert(key) {
                params.push(rp);
            }
        }
    }
    let parts: Vec<Report> = params
        .par_iter()
        .map(|rp| {
            let mut r = check_racah_contiguity(rp, Contiguity::Wilson413);
            r.extend(check_racah_contiguity(rp, Contiguity::FourTerm));
            r
        })
        .collect();
    for p in parts {
        report.extend(p);
    }
    report
}

pub fn polynomials(max_height: i64) -> Report {
    let mut report = Report::new("polys");
    report.extend(krawtchouk_suite(6));
    report.extend(racah_suite(max_height));
    report
}

/// `sigma_formula = sigma_product` on every Pythagorean triple.
pub fn cross_path(max_height: i64) -> Report {
    let triples = pythagorean_triples();
    per_weight("cross-path", max_height, |b| {
        let w = b.weight();
        let mut r = Report::new("cross-path");
        let expansion = match SigmaExpansion::new(b) {
            Ok(e) => e,
            Err(e) => {
                r.push(failed("sigma expansion", w, e));
                return r;
            }
        };
        let mut bad = Vec::new();
        for angles in &triples {
            let agree = match (expansion.evaluate::<Rational>(angles), sigma_product::<Rational>(angles, b)) {
                (Ok(f), Ok(p)) => f == p,
                _ => false,
            };
            if !agree {
                bad.push(angles.to_string());
            }
        }
        let mut c = Check::new("sigma formula = product on 27 triples", Some(w), bad.is_empty(), bad.len() as f64);
        if !bad.is_empty() {
            c = c.with_detail(bad.join("; "));
        }
        r.push(c);
        r
    })
}

/// Seeded random Euler angles, with a seed per weight so results do not depend on scheduling.
pub fn random_triples(seed: u64, count: usize) -> Vec<EulerAngles> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| EulerAngles::radians(rng.gen_range(-PI..PI), rng.gen_range(0.0..PI), rng.gen_range(-PI..PI)))
        .collect()
}

/// The product path in floating point against the matrix-exponential oracle.
pub fn oracle_agreement(max_height: i64, count: usize, seed: u64) -> Report {
    per_weight("oracle", max_height, |b| {
        let w = b.weight();
        let mut r = Report::new("oracle");
        let mut worst = 0.0f64;
        let mut worst_at = String::new();
        for angles in random_triples(seed ^ ((w.p() as u64) << 8) ^ (w.q() as u64), count) {
            let err = match (sigma_product::<f64>(&angles, b), rho_oracle_angles(&angles, b)) {
                (Ok(s), Ok(o)) => normalized_error(&s, &o),
                _ => f64::INFINITY,
            };
            if err.is_nan() || err > worst {
                worst = err;
                worst_at = angles.to_string();
            }
        }
        r.push(
            Check::within(format!("product vs oracle on {count} random triples"), Some(w), worst, ORACLE_BOUND)
                .with_detail(format!("worst at {worst_at}")),
        );
        r
    })
}

/// `Mᵗ N² M = N²` for ρ, τ and σ.
pub fn orthogonality(max_height: i64) -> Report {
    let triples = [
        EulerAngles::new(pyth(3, 4, 5), pyth(5, 12, 13), pyth(-4, 3, 5)),
        EulerAngles::new(pyth(5, 12, 13), pyth(3, 4, 5), pyth(12, 5, 13)),
    ];
    per_weight("orthogonality", max_height, |b| {
        let w = b.weight();
        let mut r = Report::new("orthogonality");
        for eta in [pyth(3, 4, 5), pyth(-5, 12, 13)] {
            match rho_z::<Rational>(&eta, b) {
                Ok(m) => r.push(Check::exact_zero(format!("rho at {eta}"), w, &orthogonality_residual(&m))),
                Err(e) => r.push(failed("rho", w, e)),
            }
        }
        match Transition::of(b) {
            Ok(t) => r.push(Check::exact_zero("tau", w, &orthogonality_residual(&t.tau))),
            Err(e) => r.push(failed("tau", w, e)),
        }
        for angles in &triples {
            match sigma_product::<Rational>(angles, b) {
                Ok(m) => r.push(Check::exact_zero(format!("sigma at {angles}"), w, &orthogonality_residual(&m))),
                Err(e) => r.push(failed("sigma", w, e)),
            }
        }
        r
    })
}

/// The single-sum form on symmetric irreps and the hybrid form on all irreps.
pub fn degenerations(max_l31: i64, max_height: i64) -> Report {
    let triples = pythagorean_triples();
    let mut report = Report::new("degenerations");
    let symmetric: Vec<Report> = (0..=max_l31)
        .into_par_iter()
        .map(|p| {
            let w = HighestWeight::from_differences(p, 0).expect("valid weight");
            let b = enumerate_patterns(&w).expect("valid weight");
            let mut r = Report::new("symmetric");
            let mut bad = 0;
            let mut variant_bad = 0;
            for angles in &triples {
                match (sigma_symmetric::<Rational>(angles, &b), sigma_product::<Rational>(angles, &b)) {
                    (Ok(s), Ok(t)) if s == t => {}
                    _ => bad += 1,
                }
                if let Ok(c) = sigma_symmetric_variant(angles, &b) {
                    variant_bad += c.mismatched;
                }
            }
            r.push(Check::new("symmetric single sum = product on 27 triples", Some(&w), bad == 0, bad as f64));
            if variant_bad > 0 {
                r.note(format!(
                    "weight {w}: the single sum with the alternative prefactor disagrees at {variant_bad} entries over 27 triples"
                ));
            }
            r
        })
        .collect();
    for r in symmetric {
        report.extend(r);
    }
    report.extend(per_weight("hybrid", max_height, |b| {
        let w = b.weight();
        let mut r = Report::new("hybrid");
        let tau = match tau_closed_form(b) {
            Ok(t) => t,
            Err(e) => {
                r.push(failed("hybrid", w, e));
                return r;
            }
        };
        for eta in [Angle::zero(), pyth(3, 4, 5), pyth(-5, 12, 13)] {
            match (hybrid_sigma::<Rational>(&eta, b), rho_z::<Rational>(&eta, b)) {
                (Ok(h), Ok(rho)) => r.push(Check::exact_zero(format!("hybrid = tau rho at {eta}"), w, &(&h - &(&tau * &rho)))),
                (Err(e), _) | (_, Err(e)) => r.push(failed("hybrid", w, e)),
            }
        }
        r
    }));
    report
}

pub fn rotations(max_height: i64) -> Report {
    let mut report = per_weight("rotations", max_height, verify_transition);
    report.extend(cross_path(max_height));
    report.extend(orthogonality(max_height));
    report.extend(oracle_agreement(max_height, ORACLE_TRIPLES, ORACLE_SEED));
    report.extend(degenerations(max_height.min(4), max_height));
    report
}

pub const BISPECTRAL_ELEMENTS: [AlgebraElement; 3] = [AlgebraElement::H, AlgebraElement::Y, AlgebraElement::J];

pub fn bispectral(max_height: i64) -> Report {
    let triples = [
        EulerAngles::new(pyth(3, 4, 5), pyth(5, 12, 13), pyth(4, 3, 5)),
        EulerAngles::new(pyth(-5, 12, 13), pyth(3, 4, 5), pyth(0, 1, 1)),
    ];
    per_weight("bispectral", max_height, |b| {
        let w = b.weight();
        let mut r = Report::new("bispectral");
        for angles in &triples {
            for g in BISPECTRAL_ELEMENTS {
                for kind in [BispectralKind::Recurrence, BispectralKind::Difference] {
                    let name = format!("{g} {kind:?} at {angles}");
                    match bispectral_residual::<Rational>(g, kind, angles, b) {
                        Ok(m) => r.push(Check::exact_zero(name.clone(), w, &m)),
                        Err(e) => r.push(failed(&name, w, e)),
                    }
                    match bispectral_eigen_residual::<Rational>(g, kind, angles, b) {
                        Ok(m) => r.push(Check::exact_zero(format!("{name}, eigenvalue form"), w, &m)),
                        Err(e) => r.push(failed(&name, w, e)),
                    }
                }
            }
        }
        r
    })
}

pub fn racah_algebra(max_height: i64) -> Report {
    per_weight("racah-algebra", max_height, verify_racah_algebra)
}

pub fn hilbert(max_degree: usize) -> Report {
    verify_hilbert(max_degree)
}

pub fn run(suite: Suite, max_height: i64) -> Report {
    match suite {
        Suite::Rep => structure(max_height),
        Suite::Polys => polynomials(max_height),
        Suite::Rotations => rotations(max_height),
        Suite::Bispectral => bispectral(max_height),
        Suite::RacahAlgebra => racah_algebra(max_height),
        Suite::Hilbert => hilbert(HILBERT_DEGREE),
        Suite::All => {
            let mut report = Report::new("all");
            for s in [
                Suite::Rep,
                Suite::Polys,
                Suite::Rotations,
                Suite::Bispectral,
                Suite::RacahAlgebra,
                Suite::Hilbert,
            ] {
                report.extend(run(s, max_height));
            }
            report
        }
    }
}
