//! Terminating hypergeometric series, Krawtchouk and Racah polynomials.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gt_basis::{GTPattern, HighestWeight};
use crate::numerics::{binomial, factorial, is_int, powi_q, rat, sign_pow, try_int, Field, Rational};
use crate::report::{Check, Report};

/// `Σ_k Π(a_i)_k / Π(b_j)_k · z^k / k!`, summed until a numerator factor vanishes.
pub fn hyp_terminating(num: &[Rational], den: &[Rational], z: &Rational, max_terms: usize) -> Result<Rational> {
    let terminates = num
        .iter()
        .any(|a| is_int(a) && !a.is_positive() && -a <= rat(max_terms as i64));
    if !terminates {
        return Err(Error::NonTerminating(max_terms));
    }
    let mut total = Rational::zero();
    let mut term = Rational::one();
    let mut k: i64 = 0;
    loop {
        total += &term;
        let kq = rat(k);
        let mut n = Rational::one();
        for a in num {
            n *= a + &kq;
        }
        if n.is_zero() {
            return Ok(total);
        }
        let mut d = Rational::one();
        for b in den {
            d *= b + &kq;
        }
        if d.is_zero() {
            return Err(Error::DenominatorPoleBeforeTermination(k as usize + 1));
        }
        term = term * n / d * z / rat(k + 1);
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrawtchoukParams {
    pub p: Rational,
    pub n_max: i64,
}

impl KrawtchoukParams {
    pub fn new(p: Rational, n_max: i64) -> Result<Self> {
        if !(p.is_positive() && p < Rational::one()) || n_max < 0 {
            return Err(Error::InvalidParameter(format!("Krawtchouk p={p}, N={n_max}")));
        }
        Ok(KrawtchoukParams { p, n_max })
    }
}

fn in_window(v: &Rational, n_max: &Rational) -> bool {
    !v.is_negative() && v <= n_max
}

/// `K_n(x; p, N) = ₂F₁(-n, -x; -N; 1/p)`, zero outside `[0, N]`.
pub fn krawtchouk(n: i64, x: &Rational, params: &KrawtchoukParams) -> Rational {
    let nn = rat(params.n_max);
    if n < 0 || n > params.n_max || !in_window(x, &nn) {
        return Rational::zero();
    }
    if n == 0 {
        return Rational::one();
    }
    hyp_terminating(&[rat(-n), -x], &[-nn], &params.p.recip(), n as usize)
        .expect("terminates within the window")
}

/// `tan^{n+x}(θ) K_n(x; sin²θ, N)` as a polynomial in `sin` over a power of `cos`.
///
/// Finite at `sin = 0`; rejects `cos = 0` unless `n + x = 0`.
pub fn tan_krawtchouk<T: Field>(n: i64, x: i64, n_max: i64, s: &T, c: &T) -> Result<T> {
    if n < 0 || x < 0 || n > n_max || x > n_max {
        return Ok(T::zero());
    }
    if n + x == 0 {
        return Ok(T::one());
    }
    if c.is_zero() {
        return Err(Error::TanPole);
    }
    let mut total = T::zero();
    let mut coef = Rational::one();
    for k in 0..=n.min(x) {
        let term = T::from_rational(&coef) * s.powi(n + x - 2 * k);
        total = total + term;
        if k < n.min(x) {
            coef = coef * rat(k - n) * rat(k - x) / (rat(k - n_max) * rat(k + 1));
        }
    }
    Ok(total * c.powi(-(n + x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RacahParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl RacahParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Self {
        RacahParams { alpha, beta, gamma, delta }
    }

    /// Truncation bound: least nonnegative integral candidate among `-α-1`, `-β-δ-1`, `-γ-1`.
    pub fn window(&self) -> Option<Rational> {
        let one = Rational::one();
        [
            -&self.alpha - &one,
            -&self.beta - &self.delta - &one,
            -&self.gamma - &one,
        ]
        .into_iter()
        .filter(|v| is_int(v) && !v.is_negative())
        .min()
    }
}

/// `R̃_n(x; α, β, γ, δ)`, zero outside the window.
pub fn racah_tilde(n: i64, x: &Rational, params: &RacahParams) -> Result<Rational> {
    if n < 0 || x.is_negative() {
        return Ok(Rational::zero());
    }
    if let Some(w) = params.window() {
        if rat(n) > w || *x > w {
            return Ok(Rational::zero());
        }
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let one = Rational::one();
    let RacahParams { alpha, beta, gamma, delta } = params;
    hyp_terminating(
        &[rat(-n), rat(n) + alpha + beta + &one, -x, x + gamma + delta + &one],
        &[alpha + &one, beta + delta + &one, gamma + &one],
        &one,
        n as usize,
    )
}

/// Coefficients `(A_Λ, C_Λ)` of the three-term relation satisfied by τ in its column index.
pub fn recurrence_coefficients(w: &HighestWeight, p: &GTPattern) -> (Rational, Rational) {
    let one = Rational::one();
    let two = rat(2);
    let (l31, l32, l33) = (&w.l31, &w.l32, &w.l33);
    let (l21, l22, l11) = (&p.l21, &p.l22, &p.l11);
    let a_num = (l21 - l32) * (l31 - l22 + &one) * (l21 - l11) * (l21 - l33 + &one);
    let a = if a_num.is_zero() {
        Rational::zero()
    } else {
        a_num / ((l21 - l22 + &one) * (l21 - l22))
    };
    let c = (l11 - l22 + &one) * (l22 - l33) * (l32 - l22 + &one) * (l31 - l21)
        / ((l21 - l22 + &one) * (l21 - l22 + &two));
    (a, c)
}

pub fn check_krawtchouk_orthogonality(params: &KrawtchoukParams) -> Report {
    let mut report = Report::new("krawtchouk-orthogonality");
    let (p, nn) = (&params.p, params.n_max);
    let q = Rational::one() - p;
    for m in 0..=nn {
        for n in 0..=nn {
            let mut sum = Rational::zero();
            for x in 0..=nn {
                let xq = rat(x);
                sum += binomial(nn, x)
                    * powi_q(p, x + n)
                    * powi_q(&q, nn - x - n)
                    * krawtchouk(m, &xq, params)
                    * krawtchouk(n, &xq, params);
            }
            sum *= binomial(nn, n);
            let expect = if m == n { Rational::one() } else { Rational::zero() };
            let r = (sum - expect).abs();
            report.push(Check::new(
                format!("orthogonality p={p} N={nn} m={m} n={n}"),
                None,
                r.is_zero(),
                crate::numerics::to_f64(&r),
            ));
        }
    }
    report
}

/// `(2x-N)K_n = -2p(N-n)K_{n+1} + (1-2p)(2n-N)K_n - 2(1-p)n K_{n-1}` over the window.
pub fn check_krawtchouk_recurrence(params: &KrawtchoukParams) -> Report {
    let mut report = Report::new("krawtchouk-recurrence");
    let (p, nn) = (&params.p, params.n_max);
    let one = Rational::one();
    let two = rat(2);
    let mut bad = 0;
    for n in 0..=nn {
        for x in 0..=nn {
            let xq = rat(x);
            let k = |m: i64| krawtchouk(m, &xq, params);
            let lhs = (&two * &xq - rat(nn)) * k(n);
            let rhs = -(&two * p * rat(nn - n)) * k(n + 1) + (&one - &two * p) * rat(2 * n - nn) * k(n)
                - &two * (&one - p) * rat(n) * k(n - 1);
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    report.push(
        Check::new(format!("three-term recurrence p={p} N={nn}"), None, bad == 0, bad as f64)
            .with_detail(format!("{} grid points", (nn + 1) * (nn + 1))),
    );
    report
}

/// Counts mismatches of `K_n(x) = (-1)^{x+n-N} ((1-p)/p)^{x+n-N} K_{N-n}(N-x)`.
pub fn krawtchouk_symmetry_mismatches(params: &KrawtchoukParams) -> usize {
    let (p, nn) = (&params.p, params.n_max);
    let ratio = (Rational::one() - p) / p;
    let mut bad = 0;
    for n in 0..=nn {
        for x in 0..=nn {
            let e = x + n - nn;
            let rhs = rat(sign_pow(e)) * powi_q(&ratio, e) * krawtchouk(nn - n, &rat(nn - x), params);
            if krawtchouk(n, &rat(x), params) != rhs {
                bad += 1;
            }
        }
    }
    bad
}

/// Mismatches of the form `K_n(x) = n!/(N-n)! (-1)^{x+n} p^{n-x} (1-p)^{x+n-N} K_{N-n}(N-x)`.
pub fn krawtchouk_symmetry_variant_mismatches(params: &KrawtchoukParams) -> usize {
    let (p, nn) = (&params.p, params.n_max);
    let q = Rational::one() - p;
    let mut bad = 0;
    for n in 0..=nn {
        for x in 0..=nn {
            let rhs = factorial(n).unwrap() / factorial(nn - n).unwrap()
                * rat(sign_pow(x + n))
                * powi_q(p, n - x)
                * powi_q(&q, x + n - nn)
                * krawtchouk(nn - n, &rat(nn - x), params);
            if krawtchouk(n, &rat(x), params) != rhs {
                bad += 1;
            }
        }
    }
    bad
}

pub fn krawtchouk_duality_mismatches(params: &KrawtchoukParams) -> usize {
    let nn = params.n_max;
    let mut bad = 0;
    for n in 0..=nn {
        for x in 0..=nn {
            if krawtchouk(n, &rat(x), params) != krawtchouk(x, &rat(n), params) {
                bad += 1;
            }
        }
    }
    bad
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contiguity {
    Wilson413,
    FourTerm,
}

/// Both contiguity relations, with denominators cleared, over the whole window.
pub fn check_racah_contiguity(params: &RacahParams, which: Contiguity) -> Report {
    let mut report = Report::new("racah-contiguity");
    let Some(w) = params.window() else {
        report.push(Check::new("racah window", None, false, f64::NAN).with_detail("no integral truncation bound"));
        return report;
    };
    let nmax = try_int(&w).unwrap_or(-1);
    let mut bad = 0usize;
    let mut errors = Vec::new();
    for n in 0..=nmax {
        for x in 0..=nmax {
            match contiguity_residual(params, which, n, x) {
                Ok(r) if r.is_zero() => {}
                Ok(_) => bad += 1,
                Err(e) => errors.push(e.to_string()),
            }
        }
    }
    let name = match which {
        Contiguity::Wilson413 => "Wilson gamma-lowering",
        Contiguity::FourTerm => "four-term relation",
    };
    let ok = bad == 0 && errors.is_empty();
    let mut c = Check::new(
        format!(
            "{name} a={} b={} g={} d={}",
            params.alpha, params.beta, params.gamma, params.delta
        ),
        None,
        ok,
        bad as f64,
    )
    .with_detail(format!("{} grid points", (nmax + 1).max(0).pow(2)));
    if let Some(e) = errors.first() {
        c = c.with_detail(e.clone());
    }
    report.push(c);
    report
}

fn contiguity_residual(params: &RacahParams, which: Contiguity, n: i64, x: i64) -> Result<Rational> {
    let one = Rational::one();
    let RacahParams { alpha: a, beta: b, gamma: g, delta: d } = params;
    let (nq, xq) = (rat(n), rat(x));
    let den_x = rat(2) * &xq + g + d + &one;
    match which {
        Contiguity::Wilson413 => {
            let lowered = RacahParams::new(a.clone(), b.clone(), g - &one, d.clone());
            let lhs = &den_x * (&nq + g) * (&nq - g + a + b + &one) * racah_tilde(n, &xq, params)?;
            let rhs = g
                * ((&xq + a + &one) * (&xq + b + d + &one) * racah_tilde(n, &(&xq + &one), &lowered)?
                    - (&xq - a + g + d) * (&xq - b + g) * racah_tilde(n, &xq, &lowered)?);
            Ok(lhs - rhs)
        }
        Contiguity::FourTerm => {
            let moved = RacahParams::new(a.clone(), b - &one, g.clone(), d + &one);
            let lhs = &den_x
                * (&nq * racah_tilde(n - 1, &xq, params)? + (&nq + a + b) * racah_tilde(n, &xq, params)?);
            let rhs = (rat(2) * &nq + a + b)
                * (&xq * racah_tilde(n, &(&xq - &one), &moved)?
                    + (&xq + g + d + &one) * racah_tilde(n, &xq, &moved)?);
            Ok(lhs - rhs)
        }
    }
}

/// Racah parameters attached to a pattern by the closed form of τ.
pub fn pattern_racah_params(w: &HighestWeight, p: &GTPattern) -> RacahParams {
    let one = Rational::one();
    RacahParams::new(
        &w.l32 - &w.l31 - &one,
        &p.l21 + &p.l22 + &w.l33 - &one,
        &p.l11 - &w.l31 - &one,
        -&p.l21 - &p.l22 - &w.l31 - &one,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_basis::enumerate_patterns;
    use crate::numerics::ratio;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        rat(n)
    }

    #[test]
    fn hypergeometric_examples() {
        let a = ratio(3, 7);
        assert_eq!(hyp_terminating(&[q(0), a.clone()], &[q(5)], &ratio(1, 3), 10).unwrap(), q(1));
        assert_eq!(hyp_terminating(&[q(-1), q(-1)], &[q(-2)], &q(2), 5).unwrap(), q(0));
        assert_eq!(
            hyp_terminating(&[q(-1), q(-6), q(-1), q(-2)], &[q(-3), q(-3), q(-3)], &q(1), 5).unwrap(),
            ratio(5, 9)
        );
    }

    #[test]
    fn hypergeometric_errors() {
        assert_eq!(
            hyp_terminating(&[ratio(1, 2)], &[q(1)], &q(1), 10),
            Err(Error::NonTerminating(10))
        );
        assert_eq!(hyp_terminating(&[q(-20)], &[q(1)], &q(1), 10), Err(Error::NonTerminating(10)));
        assert_eq!(
            hyp_terminating(&[q(-3)], &[q(-1)], &q(1), 10),
            Err(Error::DenominatorPoleBeforeTermination(2))
        );
        // pole at the terminating index is legal
        assert!(hyp_terminating(&[q(-1)], &[q(-1)], &q(1), 10).is_ok());
    }

    #[test]
    fn krawtchouk_examples() {
        let half = KrawtchoukParams::new(ratio(1, 2), 2).unwrap();
        assert_eq!(krawtchouk(0, &q(1), &half), q(1));
        assert_eq!(krawtchouk(1, &q(1), &half), q(0));
        assert_eq!(krawtchouk(3, &q(1), &half), q(0));
        assert!(KrawtchoukParams::new(q(0), 2).is_err());
    }

    #[test]
    fn racah_examples() {
        let p = RacahParams::new(q(-4), q(-4), q(-4), q(0));
        assert_eq!(racah_tilde(0, &q(2), &p).unwrap(), q(1));
        assert_eq!(racah_tilde(1, &q(1), &p).unwrap(), ratio(5, 9));
        assert_eq!(racah_tilde(-1, &q(1), &p).unwrap(), q(0));
        assert_eq!(racah_tilde(4, &q(1), &p).unwrap(), q(0));
    }

    #[test]
    fn tan_kernel_matches_definition() {
        let (s, c) = (ratio(3, 5), ratio(4, 5));
        let p = &s * &s;
        for nn in 0..5 {
            let params = KrawtchoukParams::new(p.clone(), nn).unwrap();
            for n in 0..=nn {
                for x in 0..=nn {
                    let k = krawtchouk(n, &q(x), &params);
                    let expect = powi_q(&(&s / &c), n + x) * k;
                    assert_eq!(tan_krawtchouk(n, x, nn, &s, &c).unwrap(), expect);
                }
            }
        }
        assert_eq!(tan_krawtchouk(1, 1, 2, &q(0), &q(1)).unwrap(), ratio(-1, 2));
        assert_eq!(tan_krawtchouk(1, 1, 2, &q(1), &q(0)), Err(Error::TanPole));
    }

    fn grid() -> Vec<KrawtchoukParams> {
        let mut out = Vec::new();
        for p in [ratio(1, 4), ratio(1, 2), ratio(9, 25)] {
            for nn in 0..=6 {
                out.push(KrawtchoukParams::new(p.clone(), nn).unwrap());
            }
        }
        out
    }

    #[test]
    fn orthogonality_examples() {
        assert!(check_krawtchouk_orthogonality(&KrawtchoukParams::new(ratio(1, 2), 4).unwrap()).passed());
        assert!(check_krawtchouk_orthogonality(&KrawtchoukParams::new(ratio(3, 25), 3).unwrap()).passed());
    }

    #[test]
    fn recurrence_symmetry_duality_on_grid() {
        for params in grid() {
            assert!(check_krawtchouk_recurrence(&params).passed());
            assert_eq!(krawtchouk_symmetry_mismatches(&params), 0);
            assert_eq!(krawtchouk_duality_mismatches(&params), 0);
        }
    }

    #[test]
    fn variant_symmetry_fails() {
        let params = KrawtchoukParams::new(ratio(1, 4), 3).unwrap();
        assert!(krawtchouk_symmetry_variant_mismatches(&params) > 0);
    }

    #[test]
    fn contiguity_on_pattern_parameters() {
        for w in HighestWeight::up_to_height(3) {
            let b = enumerate_patterns(&w).unwrap();
            for p in b.patterns() {
                let params = pattern_racah_params(&w, p);
                assert!(check_racah_contiguity(&params, Contiguity::Wilson413).passed());
                assert!(check_racah_contiguity(&params, Contiguity::FourTerm).passed());
            }
        }
    }

    #[test]
    fn contiguity_window_three() {
        let params = RacahParams::new(q(-4), q(1), q(-4), q(2));
        assert_eq!(params.window(), Some(q(3)));
        let r = check_racah_contiguity(&params, Contiguity::Wilson413);
        assert!(r.passed(), "{:?}", r);
        assert!(check_racah_contiguity(&params, Contiguity::FourTerm).passed());
        let degenerate = RacahParams::new(q(-1), q(1), q(-1), q(2));
        assert_eq!(degenerate.window(), Some(q(0)));
        assert!(check_racah_contiguity(&degenerate, Contiguity::FourTerm).passed());
        assert!(check_racah_contiguity(&degenerate, Contiguity::Wilson413).passed());
    }

    proptest! {
        #[test]
        fn krawtchouk_vanishes_out_of_window(n in -3i64..10, x in -3i64..10, nn in 0i64..6) {
            let params = KrawtchoukParams::new(ratio(1, 3), nn).unwrap();
            if n < 0 || n > nn || x < 0 || x > nn {
                prop_assert_eq!(krawtchouk(n, &q(x), &params), q(0));
            }
        }

        #[test]
        fn float_kernel_tracks_exact(n in 0i64..5, x in 0i64..5, which in 0usize..3) {
            let (s, c) = [(ratio(3, 5), ratio(4, 5)), (ratio(5, 13), ratio(12, 13)), (ratio(-7, 25), ratio(24, 25))][which].clone();
            let nn = 5;
            let exact = tan_krawtchouk(n, x, nn, &s, &c).unwrap();
            let approx = tan_krawtchouk(n, x, nn, &crate::numerics::to_f64(&s), &crate::numerics::to_f64(&c)).unwrap();
            let e = crate::numerics::to_f64(&exact);
            prop_assert!((approx - e).abs() <= 1e-12 * e.abs().max(1.0));
        }
    }
}
