//! Change-of-basis matrices induced by rotations: ρ for z-rotations, τ for the transition
//! `T`, and σ for a general rotation.

mod bispectral;
mod euler;
mod sigma;
mod special;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

pub use bispectral::{
    bispectral_eigen_residual, bispectral_residual, h_difference_display, h_recurrence_display, BispectralKind,
};
pub use euler::{mat_mul, mat_transpose, ry, rz, transition_matrix, EulerAngles, Mat3};
pub use sigma::{sigma_formula, sigma_product, sigma_terms, SigmaExpansion, SigmaTerm};
pub use special::{hybrid_p, hybrid_sigma, sigma_symmetric, sigma_symmetric_variant, HybridParams, VariantComparison};

use crate::error::Result;
use crate::gt_basis::{GTPattern, HighestWeight, IrrepBasis, PatternShift};
use crate::numerics::{binomial, exact_angle, factorial, int, rat, ratio, sign_pow, sign_q, Angle, Field, Rational};
use crate::oracle::calibrate_tau_sign;
use crate::report::{Check, Report};
use crate::rep::PatternMatrix;
use crate::specfun::{pattern_racah_params, racah_tilde, recurrence_coefficients, tan_krawtchouk};

fn d(a: &Rational, b: &Rational) -> i64 {
    int(&(a - b))
}

/// Matrix of the change of basis for the rotation `R^z_φ`.
pub fn rho_z<T: Field>(angle: &Angle, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    let (s, c) = T::sin_cos(angle)?;
    let mut m = PatternMatrix::zeros(basis);
    for (col, p) in basis.patterns().iter().enumerate() {
        let n = d(&p.l21, &p.l22);
        let a = d(&p.l11, &p.l22);
        for b in 0..=n {
            let target = GTPattern::new(p.l21.clone(), p.l22.clone(), &p.l22 + rat(b));
            let row = basis.index_of(&target).expect("l11 between l22 and l21");
            let k = tan_krawtchouk(a, b, n, &s, &c)?;
            if k.is_zero() {
                continue;
            }
            let pre = rat(sign_pow(b)) * factorial(n)? / (factorial(a)? * factorial(n - b)?);
            m.set(row, col, T::from_rational(&pre) * c.powi(n) * k);
        }
    }
    Ok(m)
}

/// [`rho_z`] expanded as a polynomial in `sin` and `cos` with nonnegative exponents,
/// from the action on degree-`n` binary forms; stable in floating point near `cos = 0`.
pub fn rho_z_expanded<T: Field>(angle: &Angle, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    let (s, c) = T::sin_cos(angle)?;
    let mut m = PatternMatrix::zeros(basis);
    for (col, p) in basis.patterns().iter().enumerate() {
        let n = d(&p.l21, &p.l22);
        let a = d(&p.l11, &p.l22);
        for b in 0..=n {
            let target = GTPattern::new(p.l21.clone(), p.l22.clone(), &p.l22 + rat(b));
            let row = basis.index_of(&target).expect("l11 between l22 and l21");
            let mut total = T::zero();
            for k in (b - (n - a)).max(0)..=a.min(b) {
                let coef = rat(sign_pow(b - k)) * binomial(a, k) * binomial(n - a, b - k) * factorial(b)? / factorial(a)?;
                total = total + T::from_rational(&coef) * c.powi(n - a - b + 2 * k) * s.powi(a + b - 2 * k);
            }
            if !total.is_zero() {
                m.set(row, col, total);
            }
        }
    }
    Ok(m)
}

/// The factor `t(x, y, z)` built from the top row of the pattern.
pub fn t_factor(w: &HighestWeight, x: &Rational, y: &Rational, z: &Rational) -> Result<Rational> {
    let (l31, l32, l33) = (&w.l31, &w.l32, &w.l33);
    let f = |a: &Rational, b: &Rational, shift: i64| factorial(d(a, b) + shift);
    let num = rat(d(x, z) + 1)
        * f(l31, l32, 0)?
        * f(l31, l33, 1)?
        * f(l31, y, 0)?
        * f(l32, z, 0)?
        * f(y, z, 0)?;
    let den = f(x, l32, 0)? * f(x, l33, 1)? * f(x, y, 0)? * f(l31, z, 1)? * f(l31, x, 0)? * f(z, l33, 0)?;
    Ok(num / den)
}

/// The closed form of τ before its global sign is fixed.
pub fn tau_closed_form(basis: &IrrepBasis) -> Result<PatternMatrix<Rational>> {
    let w = basis.weight();
    let mut m = PatternMatrix::zeros(basis);
    for (col, p) in basis.patterns().iter().enumerate() {
        let params = pattern_racah_params(w, p);
        let n = d(&w.l31, &p.l21);
        for (row, q) in basis.patterns().iter().enumerate() {
            if q.l11 != p.l11 || &p.l21 + &p.l22 != &q.l11 - &q.l21 - &q.l22 {
                continue;
            }
            let r = racah_tilde(n, &(&w.l31 - &q.l21), &params)?;
            if r.is_zero() {
                continue;
            }
            let v = t_factor(w, &q.l21, &q.l11, &q.l22)? * rat(sign_pow(d(&q.l22, &p.l21))) * r;
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// `(τ⁻¹)_{Λ,Λ'} = (N_Λ'/N_Λ)² τ_{Λ',Λ}`.
pub fn inverse_by_norms(m: &PatternMatrix<Rational>) -> PatternMatrix<Rational> {
    let b = m.basis();
    let mut out = PatternMatrix::zeros(b);
    for (i, j, v) in m.entries() {
        out.set(j, i, v * b.norm_squared(i) / b.norm_squared(j));
    }
    out
}

/// τ with its calibrated sign, together with τ⁻¹.
#[derive(Clone, Debug)]
pub struct Transition {
    pub sign: i64,
    pub tau: PatternMatrix<Rational>,
    pub tau_inv: PatternMatrix<Rational>,
}

impl Transition {
    pub fn compute(basis: &IrrepBasis) -> Result<Self> {
        let raw = tau_closed_form(basis)?;
        let sign = calibrate_tau_sign(basis)?;
        let tau = if sign < 0 { -&raw } else { raw };
        let tau_inv = inverse_by_norms(&tau);
        Ok(Transition { sign, tau, tau_inv })
    }

    /// Cached per highest weight.
    pub fn of(basis: &IrrepBasis) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<HighestWeight, Arc<Transition>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("cache lock").get(basis.weight()) {
            return Ok(t.clone());
        }
        let t = Arc::new(Transition::compute(basis)?);
        cache
            .lock()
            .expect("cache lock")
            .insert(basis.weight().clone(), t.clone());
        Ok(t)
    }
}

pub fn tau(basis: &IrrepBasis) -> Result<PatternMatrix<Rational>> {
    Ok(Transition::of(basis)?.tau.clone())
}

pub fn tau_inverse(basis: &IrrepBasis) -> Result<PatternMatrix<Rational>> {
    Ok(Transition::of(basis)?.tau_inv.clone())
}

/// `Σ_Λ' N²_Λ' m_Λ'Λ m_Λ'Λ'' - N²_Λ δ_ΛΛ''`.
pub fn orthogonality_residual<T: Field>(m: &PatternMatrix<T>) -> PatternMatrix<T> {
    let b = m.basis();
    let n2 = PatternMatrix::diagonal(b, |i| T::from_rational(b.norm_squared(i)));
    &(&m.transpose() * &(&n2 * m)) - &n2
}

/// The three-term relation of τ in its column index, entry by entry.
pub fn check_tau_recurrence(basis: &IrrepBasis, tau: &PatternMatrix<Rational>) -> Check {
    let w = basis.weight();
    let down = PatternShift::D22 - PatternShift::D21;
    let mut bad = 0usize;
    for (col, p) in basis.patterns().iter().enumerate() {
        let (a, c) = recurrence_coefficients(w, p);
        let lo = basis.shift_index(col, down);
        let hi = basis.shift_index(col, -down);
        for (row, q) in basis.patterns().iter().enumerate() {
            let at = |k: Option<usize>| k.map(|k| tau.get(row, k)).unwrap_or_else(Rational::zero);
            let lhs = &a * at(lo) + (&a + &c) * tau.get(row, col) + &c * at(hi);
            let rhs = (&q.l21 - &w.l31) * (&q.l22 - &w.l31 - rat(1)) * tau.get(row, col);
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    Check::new("tau three-term relation", Some(w), bad == 0, bad as f64)
}

/// Exact checks of ρ, τ, τ⁻¹ on one irrep.
pub fn verify_transition(basis: &IrrepBasis) -> Report {
    let w = basis.weight();
    let mut report = Report::new("transition");
    let t = match Transition::of(basis) {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::new("tau sign calibration", Some(w), false, f64::NAN).with_detail(e.to_string()));
            return report;
        }
    };
    let id = PatternMatrix::identity(basis);
    report.push(Check::exact_zero("tau_inv * tau = 1", w, &(&(&t.tau_inv * &t.tau) - &id)));
    report.push(Check::exact_zero("tau * tau_inv = 1", w, &(&(&t.tau * &t.tau_inv) - &id)));
    report.push(Check::exact_zero("tau orthogonality", w, &orthogonality_residual(&t.tau)));
    report.push(check_tau_recurrence(basis, &t.tau));
    report.push(
        Check::new("tau sign", Some(w), true, 0.0).with_detail(format!("calibrated sign {:+}", t.sign)),
    );
    for (s, c, r) in [(3, 5, 4), (5, 13, 12)] {
        let angle = exact_angle(ratio(s, c), ratio(r, c)).expect("pythagorean");
        match rho_z::<Rational>(&angle, basis) {
            Ok(m) => report.push(Check::exact_zero(format!("rho orthogonality at {angle}"), w, &orthogonality_residual(&m))),
            Err(e) => report.push(Check::new("rho", Some(w), false, f64::NAN).with_detail(e.to_string())),
        }
    }
    report
}

/// `(-1)^q` for an integral rational exponent.
pub(crate) fn sgn(q: &Rational) -> Result<Rational> {
    Ok(rat(sign_q(q)?))
}
