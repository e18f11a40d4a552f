//! The Racah algebra generated by `J`, `J̄ = Ψ_T(J)` and `K = [J, J̄]` inside `U(sl3)`,
//! checked as matrix identities on irreps.

use crate::gt_basis::{IrrepBasis, PatternShift};
use crate::numerics::{rat, ratio, Rational};
use crate::rep::{AlgebraElement, Generators, PatternMatrix};
use crate::report::{Check, Report};
use crate::rotations::Transition;
use crate::specfun::recurrence_coefficients;

type M = PatternMatrix<Rational>;

fn sc(m: &M, q: Rational) -> M {
    m.scale(&q)
}

fn prod(ms: &[&M]) -> M {
    let mut out = ms[0].clone();
    for m in &ms[1..] {
        out = &out * m;
    }
    out
}

/// Matrices of the elements used throughout this module.
pub struct Elements {
    gens: Generators<Rational>,
    pub id: M,
    pub j: M,
    pub jbar: M,
    pub k: M,
    pub h: M,
    pub y: M,
    pub h1: M,
    pub h2: M,
    pub c2: M,
    pub c3: M,
}

impl Elements {
    pub fn new(basis: &IrrepBasis) -> Self {
        let gens = Generators::<Rational>::standard(basis);
        let j = gens.j();
        let jbar = gens.jbar();
        let k = j.commutator(&jbar);
        Elements {
            id: PatternMatrix::identity(basis),
            h: gens.element(AlgebraElement::HSmall),
            y: gens.element(AlgebraElement::YSmall),
            h1: gens.element(AlgebraElement::H1),
            h2: gens.element(AlgebraElement::H2),
            c2: gens.element(AlgebraElement::C2),
            c3: gens.element(AlgebraElement::C3),
            gens,
            j,
            jbar,
            k,
        }
    }

    fn e(&self, i: usize, j: usize) -> &M {
        self.gens.e(i, j)
    }

    /// `e31 e12 e23` and `e32 e21 e13`.
    fn cubics(&self) -> (M, M) {
        (
            prod(&[self.e(3, 1), self.e(1, 2), self.e(2, 3)]),
            prod(&[self.e(3, 2), self.e(2, 1), self.e(1, 3)]),
        )
    }
}

pub fn jbar_matrix(basis: &IrrepBasis) -> M {
    Generators::<Rational>::standard(basis).jbar()
}

/// `τ⁻¹ M(J) τ = M(J̄)`.
pub fn check_jbar_conjugation(basis: &IrrepBasis) -> Check {
    let w = basis.weight();
    match Transition::of(basis) {
        Ok(t) => {
            let g = Generators::<Rational>::standard(basis);
            let r = &prod(&[&t.tau_inv, &g.j(), &t.tau]) - &g.jbar();
            Check::exact_zero("tau^-1 J tau = Jbar", w, &r)
        }
        Err(e) => Check::new("tau^-1 J tau = Jbar", Some(w), false, f64::NAN).with_detail(e.to_string()),
    }
}

pub fn k_matrix(basis: &IrrepBasis) -> M {
    let g = Generators::<Rational>::standard(basis);
    g.j().commutator(&g.jbar())
}

/// `[J, J̄] = e31 e12 e23 - e32 e21 e13`.
pub fn check_k_identity(basis: &IrrepBasis) -> Check {
    let el = Elements::new(basis);
    let (a, b) = el.cubics();
    Check::exact_zero("[J,Jbar] = e31e12e23 - e32e21e13", basis.weight(), &(&el.k - &(&a - &b)))
}

/// `b±` with last factor `(y ± h)`; `variant` uses `(y ∓ h)` instead.
fn b_pm(el: &Elements, s: i64, variant: bool) -> M {
    let (h, y, c2, c3, id) = (&el.h, &el.y, &el.c2, &el.c3, &el.id);
    let sh = sc(h, rat(s));
    let lead = &sc(y, rat(3)) - &sh;
    let t1 = sc(&(&(&(&sc(id, rat(2)) - y) - &sh) * c2), ratio(1, 4));
    let t2 = sc(c3, ratio(-1, 3));
    let last = if variant { y - &sh } else { y + &sh };
    let t3 = sc(
        &prod(&[&(&(y - &sc(id, rat(2))) + &sh), &(&(y + &sc(id, rat(2))) + &sh), &last]),
        ratio(1, 8),
    );
    &lead * &(&(&t1 + &t2) + &t3)
}

/// The central elements `a`, `b±` and the closed form of `Γ`.
pub struct CentralData {
    pub a: M,
    pub b_plus: M,
    pub b_minus: M,
    pub gamma_closed_form: M,
}

impl CentralData {
    pub fn new(el: &Elements) -> Self {
        let (h, y) = (&el.h, &el.y);
        CentralData {
            a: &(&(h * h) + &sc(&(y * y), rat(3))) + &el.c2,
            b_plus: b_pm(el, 1, false),
            b_minus: b_pm(el, -1, false),
            gamma_closed_form: gamma_closed_form(el),
        }
    }
}

fn gamma_closed_form(el: &Elements) -> M {
    let (h, y, c2, c3, id) = (&el.h, &el.y, &el.c2, &el.c3, &el.id);
    let (h2, y2) = (h * h, y * y);
    let s = &y2 + &h2;
    let d = &h2 - &y2;
    let x = &(&sc(c3, ratio(1, 3)) + &sc(y, rat(2))) + &(y * c2);
    let mut g = sc(&prod(&[&s, &s, &(id - c2)]), ratio(1, 2));
    g = &g - &sc(&prod(&[&d, &d, &d]), ratio(1, 8));
    g = &g + &sc(&(&h2 * &y2), rat(2));
    g = &g - &(&x * &(&x - c2));
    g = &g
        - &sc(
            &prod(&[y, &(&sc(&h2, rat(3)) - &sc(&y2, rat(11))), &(&sc(c2, rat(3)) - &sc(c3, rat(2)))]),
            ratio(1, 6),
        );
    g = &g
        + &sc(
            &prod(&[c2, &(&h2 + &sc(&y2, rat(3))), &(&(&sc(&h2, rat(5)) - &y2) + &sc(id, rat(4)))]),
            ratio(1, 8),
        );
    g
}

/// Both cubic relations of the Racah algebra.
pub fn racah_relations_residual(basis: &IrrepBasis) -> Report {
    let w = basis.weight();
    let el = Elements::new(basis);
    let cd = CentralData::new(&el);
    let (j, jb, k) = (&el.j, &el.jbar, &el.k);
    let anti = j.anticommutator(jb);
    let r1 = &j.commutator(k)
        - &(&(&(&sc(&(j * j), rat(2)) + &sc(&anti, rat(2))) - &(&cd.a * j)) + &cd.b_plus);
    let r2 = &k.commutator(jb)
        - &(&(&(&sc(&(jb * jb), rat(2)) + &sc(&anti, rat(2))) - &(&cd.a * jb)) + &cd.b_minus);
    let mut report = Report::new("racah-relations");
    report.push(Check::exact_zero("[J,K] = 2J^2 + 2{J,Jbar} - aJ + b+", w, &r1));
    report.push(Check::exact_zero("[K,Jbar] = 2Jbar^2 + 2{J,Jbar} - aJbar + b-", w, &r2));
    let off = (&cd.b_plus - &b_pm(&el, 1, true)).max_abs().max((&cd.b_minus - &b_pm(&el, -1, true)).max_abs());
    if off > 0.0 {
        report.note(format!(
            "weight {w}: b± with last factor (y ∓ h) differs from the required central term by up to {off}; (y ± h) is exact"
        ));
    }
    report
}

/// `Γ` built from `J`, `J̄`, `K` against its closed form in `h, y, C2, C3`.
pub fn gamma_residual(basis: &IrrepBasis) -> Report {
    let w = basis.weight();
    let el = Elements::new(basis);
    let cd = CentralData::new(&el);
    let (j, jb, k, a) = (&el.j, &el.jbar, &el.k, &cd.a);
    let jj = j + jb;
    let mut g = &sc(&(j * j).anticommutator(jb), rat(2)) + &sc(&j.anticommutator(&(jb * jb)), rat(2));
    g = &g - &(k * k);
    g = &g - &sc(&(&jj * &jj), rat(4));
    g = &g - &(a * &j.anticommutator(jb));
    g = &g + &sc(&(&(&cd.b_minus + a) * j), rat(2));
    g = &g + &sc(&(&(&cd.b_plus + a) * jb), rat(2));
    let mut report = Report::new("gamma");
    report.push(Check::exact_zero("[Gamma, J] = 0", w, &g.commutator(j)));
    report.push(Check::exact_zero("[Gamma, Jbar] = 0", w, &g.commutator(jb)));
    report.push(Check::exact_zero("Gamma = closed form", w, &(&g - &cd.gamma_closed_form)));
    report
}

/// Right side of the symmetric cubic identity; `variant` flips the final `H1` term to `-H1`
/// inside the bracket.
fn symmetric_cubic_rhs(el: &Elements, variant: bool) -> M {
    let (h1, h2, id, j, jb) = (&el.h1, &el.h2, &el.id, &el.j, &el.jbar);
    let h12 = h1 + h2;
    let mut r = sc(&el.c3, ratio(1, 3));
    r = &r - &sc(&(j * &(&h12 + id)), rat(2));
    r = &r - &sc(&(jb * h1), rat(2));
    r = &r + &sc(&(&el.c2 * &(&sc(h1, rat(2)) + h2)), ratio(1, 3));
    let quad = &(&sc(&(h1 * h1), rat(11)) + &sc(&(h1 * h2), rat(11))) - &sc(&(h2 * h2), rat(4));
    r = &r + &sc(&(&(h2 + &sc(h1, rat(2))) * &quad), ratio(2, 27));
    let last = if variant { -rat(1) } else { rat(1) };
    let bracket = &(&(&(&sc(&(h1 * h2), rat(2)) - &(h1 * h1)) + &sc(&(h2 * h2), rat(2))) + &sc(h2, rat(2)))
        + &sc(h1, last);
    &r - &sc(&bracket, ratio(2, 3))
}

/// The five rewritings of the centralizer generators in terms of `J, J̄, K, H1, H2, C2, C3`.
pub fn centralizer_identity_residuals(basis: &IrrepBasis) -> Report {
    let w = basis.weight();
    let el = Elements::new(basis);
    let (h1, h2, id) = (&el.h1, &el.h2, &el.id);
    let h12 = h1 + h2;
    let (a, b) = el.cubics();
    let mut report = Report::new("centralizer");

    let r1 = &(el.e(2, 1) * el.e(1, 2)) - &(&el.j - &(h1 * &(h1 + id)));
    report.push(Check::exact_zero("e21e12 = J - H1(H1+1)", w, &r1));

    let r2 = &(el.e(3, 1) * el.e(1, 3)) - &(&el.jbar - &(&h12 * &(&h12 + id)));
    report.push(Check::exact_zero("e31e13 = Jbar - (H1+H2)(H1+H2+1)", w, &r2));

    let quad = &(&sc(&(h1 * h2), rat(2)) + &sc(&(h1 * h1), rat(2))) - &(h2 * h2);
    let rhs3 = &(&(&(&sc(&el.c2, ratio(1, 2)) - &el.j) - &el.jbar) - h2) + &sc(&quad, ratio(1, 3));
    report.push(Check::exact_zero(
        "e32e23 = C2/2 - J - Jbar - H2 + (2H1H2 + 2H1^2 - H2^2)/3",
        w,
        &(&(el.e(3, 2) * el.e(2, 3)) - &rhs3),
    ));

    report.push(Check::exact_zero("e31e12e23 - e32e21e13 = K", w, &(&(&a - &b) - &el.k)));

    let sum = &a + &b;
    let r5 = &sum - &symmetric_cubic_rhs(&el, false);
    report.push(Check::exact_zero("e31e12e23 + e32e21e13 = C3/3 - ... (with +H1)", w, &r5));
    let variant = &sum - &symmetric_cubic_rhs(&el, true);
    if !variant.is_zero() {
        report.note(format!(
            "weight {w}: the symmetric cubic identity with -H1 in the last bracket leaves residual {}; with +H1 it vanishes",
            variant.max_abs()
        ));
    }
    report
}

/// `J` and `J̄` commute with `H1`, `H2`.
pub fn check_centralizer_membership(basis: &IrrepBasis) -> Check {
    let el = Elements::new(basis);
    let mut r = PatternMatrix::zeros(basis);
    for x in [&el.j, &el.jbar, &el.k] {
        for hh in [&el.h1, &el.h2] {
            r = &r + &x.commutator(hh).map(|v| v.clone() * v.clone());
        }
    }
    Check::exact_zero("J, Jbar, K commute with H1, H2", basis.weight(), &r)
}

/// `J̄` is tridiagonal along `Λ ↦ Λ ∓ (δ21 - δ22)` with the coefficients of the τ recurrence.
pub fn check_jbar_tridiagonal(basis: &IrrepBasis) -> Check {
    let w = basis.weight();
    let jb = jbar_matrix(basis);
    let down = PatternShift::D22 - PatternShift::D21;
    let mut expected = PatternMatrix::zeros(basis);
    for (col, p) in basis.patterns().iter().enumerate() {
        let (a, c) = recurrence_coefficients(w, p);
        let x = &p.l11 - &p.l21 - &p.l22 - rat(2) * &w.l31;
        let diag = (&x * &x - rat(2) * &x) / rat(4) - &a - &c;
        expected.add_at(col, col, diag);
        if let Some(i) = basis.shift_index(col, down) {
            expected.add_at(i, col, -a.clone());
        }
        if let Some(i) = basis.shift_index(col, -down) {
            expected.add_at(i, col, -c.clone());
        }
    }
    Check::exact_zero("Jbar tridiagonal with A, C", w, &(&jb - &expected))
}

/// Every algebraic check of this module on one irrep.
pub fn verify_racah_algebra(basis: &IrrepBasis) -> Report {
    let mut report = Report::new("racah-algebra");
    report.push(check_k_identity(basis));
    report.push(check_jbar_conjugation(basis));
    report.push(check_centralizer_membership(basis));
    report.push(check_jbar_tridiagonal(basis));
    report.extend(racah_relations_residual(basis));
    report.extend(gamma_residual(basis));
    report.extend(centralizer_identity_residuals(basis));
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMethod {
    ClosedForm,
    Combinatorial,
}

fn series_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    (0..n).map(|d| (0..=d).map(|i| a[i] * b[d - i]).sum()).collect()
}

/// `1/(1 - t^k)` truncated to `n` terms.
fn geometric(k: usize, n: usize) -> Vec<u64> {
    (0..n).map(|d| u64::from(d % k == 0)).collect()
}

/// Coefficients of `(1+t³)/((1-t)²(1-t²)³(1-t³))` through `max_degree`.
pub fn hilbert_series_coeffs(max_degree: usize, method: SeriesMethod) -> Vec<u64> {
    let n = max_degree + 1;
    match method {
        SeriesMethod::ClosedForm => {
            let mut s: Vec<u64> = (0..n).map(|d| u64::from(d == 0 || d == 3)).collect();
            for k in [1, 1, 2, 2, 2, 3] {
                s = series_mul(&s, &geometric(k, n));
            }
            s
        }
        SeriesMethod::Combinatorial => {
            // H1^a H2^b (e21e12)^i (e32e23)^j (e31e13)^k times 1, or one of two cubics to a power ℓ ≥ 1
            let mut out = vec![0u64; n];
            for (deg, slot) in out.iter_mut().enumerate() {
                for ell in 0..=deg / 3 {
                    let weight = if ell == 0 { 1 } else { 2 };
                    let rest = deg - 3 * ell;
                    for pairs in 0..=rest / 2 {
                        let linear = rest - 2 * pairs;
                        let ab = (linear + 1) as u64;
                        let ijk = ((pairs + 1) * (pairs + 2) / 2) as u64;
                        *slot += weight * ab * ijk;
                    }
                }
            }
            out
        }
    }
}

/// Counts `H1^a H2^b C2^c C3^d J^i J̄^j K^k`, `k ∈ {0, 1}`, by degree and compares with the series.
pub fn pbw_basis_spanning_check(max_degree: usize) -> Report {
    let mut report = Report::new("pbw-basis");
    let max_degree = max_degree.min(8);
    let series = hilbert_series_coeffs(max_degree, SeriesMethod::ClosedForm);
    let degrees = [1usize, 1, 2, 3, 2, 2];
    let mut counts = vec![0u64; max_degree + 1];
    fn walk(idx: usize, deg: usize, degrees: &[usize], counts: &mut [u64]) {
        if idx == degrees.len() {
            for k in 0..=1 {
                let d = deg + 3 * k;
                if d < counts.len() {
                    counts[d] += 1;
                }
            }
            return;
        }
        let mut d = deg;
        while d < counts.len() {
            walk(idx + 1, d, degrees, counts);
            d += degrees[idx];
        }
    }
    walk(0, 0, &degrees, &mut counts);
    for (d, (c, s)) in counts.iter().zip(&series).enumerate() {
        let check = Check::new(format!("basis monomials of degree {d}"), None, c == s, (*c as f64 - *s as f64).abs())
            .with_detail(format!("monomials {c}, series {s}"));
        report.push(check);
    }
    report
}

pub fn verify_hilbert(max_degree: usize) -> Report {
    let mut report = Report::new("hilbert");
    let closed = hilbert_series_coeffs(max_degree, SeriesMethod::ClosedForm);
    let comb = hilbert_series_coeffs(max_degree, SeriesMethod::Combinatorial);
    let mismatches = closed.iter().zip(&comb).filter(|(a, b)| a != b).count();
    report.push(
        Check::new(format!("closed form = spanning-set count through degree {max_degree}"), None, mismatches == 0, mismatches as f64)
            .with_detail(format!("{closed:?}")),
    );
    let head = [1u64, 2, 6, 12];
    let prefix_ok = closed.iter().zip(head).all(|(a, b)| *a == b);
    report.push(Check::new("series begins 1, 2, 6, 12", None, prefix_ok, 0.0));
    report.extend(pbw_basis_spanning_check(max_degree.min(8)));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_basis::{enumerate_patterns, HighestWeight};

    fn basis(p: i64, q: i64) -> IrrepBasis {
        enumerate_patterns(&HighestWeight::from_differences(p, q).unwrap()).unwrap()
    }

    #[test]
    fn trivial_rep() {
        let b = basis(0, 0);
        assert!(jbar_matrix(&b).is_zero());
        assert!(k_matrix(&b).is_zero());
        assert!(verify_racah_algebra(&b).passed());
    }

    #[test]
    fn examples_pass() {
        for (p, q) in [(1, 1), (2, 2), (2, 0), (1, 2)] {
            let b = basis(p, q);
            let r = verify_racah_algebra(&b);
            assert!(r.passed(), "({p},{q}) {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn central_data_is_central() {
        let b = basis(2, 1);
        let el = Elements::new(&b);
        let cd = CentralData::new(&el);
        for c in [&cd.a, &cd.b_plus, &cd.b_minus, &cd.gamma_closed_form] {
            for x in [&el.j, &el.jbar, &el.k] {
                assert!(c.commutator(x).is_zero());
            }
        }
    }

    #[test]
    fn variant_symmetric_cubic_is_noted() {
        let r = centralizer_identity_residuals(&basis(1, 1));
        assert!(r.passed());
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn alternative_b_last_factor_is_noted() {
        let r = racah_relations_residual(&basis(1, 1));
        assert!(r.passed());
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn hilbert_head() {
        assert_eq!(hilbert_series_coeffs(3, SeriesMethod::ClosedForm), vec![1, 2, 6, 12]);
        assert_eq!(hilbert_series_coeffs(3, SeriesMethod::Combinatorial), vec![1, 2, 6, 12]);
        assert_eq!(hilbert_series_coeffs(0, SeriesMethod::ClosedForm), vec![1]);
        assert_eq!(
            hilbert_series_coeffs(12, SeriesMethod::ClosedForm),
            hilbert_series_coeffs(12, SeriesMethod::Combinatorial)
        );
        assert!(verify_hilbert(20).passed());
    }

    #[test]
    fn pbw_counts() {
        let r = pbw_basis_spanning_check(3);
        assert!(r.passed());
        assert_eq!(r.checks.len(), 4);
    }
}
