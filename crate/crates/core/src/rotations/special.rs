use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gt_basis::{HighestWeight, IrrepBasis};
use crate::numerics::{factorial, inv_factorial_q, rat, sign_pow, Angle, Field, Rational};
use crate::rep::PatternMatrix;
use crate::specfun::{krawtchouk, racah_tilde, tan_krawtchouk, KrawtchoukParams, RacahParams};

use super::{d, sgn, sigma_product, t_factor, EulerAngles};

/// Integer labels of a symmetric-irrep pattern pair, shifted by `-λ33`.
#[derive(Clone, Copy)]
struct SymLabels {
    l21: i64,
    l11: i64,
    a21: i64,
    a11: i64,
    height: i64,
}

fn symmetric_labels(basis: &IrrepBasis) -> Result<Vec<(usize, i64, i64)>> {
    let w = basis.weight();
    if w.l32 != w.l33 {
        return Err(Error::NotSymmetricRep(w.to_string()));
    }
    Ok(basis
        .patterns()
        .iter()
        .enumerate()
        .map(|(i, p)| (i, d(&p.l21, &w.l33), d(&p.l11, &w.l33)))
        .collect())
}

fn symmetric_sum<T: Field>(
    angles: &EulerAngles,
    basis: &IrrepBasis,
    mut prefactor: impl FnMut(SymLabels, i64) -> Result<Option<Rational>>,
) -> Result<(PatternMatrix<T>, usize)> {
    let labels = symmetric_labels(basis)?;
    let height = basis.weight().height();
    let (sp, cp) = T::sin_cos(&angles.phi)?;
    let (st, ct) = T::sin_cos(&angles.theta)?;
    let (sx, cx) = T::sin_cos(&angles.chi)?;
    let mut out = PatternMatrix::zeros(basis);
    let mut undefined = 0;
    for &(row, l21, l11) in &labels {
        for &(col, a21, a11) in &labels {
            let lab = SymLabels { l21, l11, a21, a11, height };
            let mut total = T::zero();
            for ell in 0.max(l21 - a21)..=l21 {
                let theta_n = ell - l21 + height;
                let Some(f) = prefactor(lab, ell)? else {
                    undefined += 1;
                    continue;
                };
                let k1 = tan_krawtchouk(ell, l11, l21, &sp, &cp)?;
                let k2 = tan_krawtchouk(ell + a21 - l21, ell, theta_n, &st, &ct)?;
                let k3 = tan_krawtchouk(a11, ell + a21 - l21, a21, &sx, &cx)?;
                total = total
                    + T::from_rational(&f)
                        * cp.powi(l21)
                        * ct.powi(theta_n)
                        * cx.powi(a21)
                        * k1
                        * k2
                        * k3;
            }
            out.set(row, col, total);
        }
    }
    Ok((out, undefined))
}

/// σ on a symmetric irrep as a single sum of three Krawtchouk polynomials.
///
/// Rows are `Λ`, columns `Λ'`.
pub fn sigma_symmetric<T: Field>(angles: &EulerAngles, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    let (m, _) = symmetric_sum(angles, basis, |s, ell| {
        let num = factorial(ell - s.l21 + s.height)? * factorial(s.a21)?.pow(2);
        let den = factorial(ell)?
            * factorial(ell + s.a21 - s.l21)?
            * factorial(s.l21 - ell)?
            * factorial(s.l21 - s.l11)?
            * factorial(s.a11)?
            * factorial(s.height - s.l21)?;
        Ok(Some(rat(sign_pow(s.l11 - 2 * s.l21)) * num / den))
    })?;
    Ok(m)
}

/// Agreement of the single sum with an alternative prefactor
/// (`[(λ21-λ33)!(λ'21-λ33)!]²` over `(ℓ-λ21-2λ33)!` and a bare `(-2λ33-λ21)`).
#[derive(Clone, Debug, PartialEq)]
pub struct VariantComparison {
    pub entries: usize,
    pub mismatched: usize,
    /// Summands skipped because the alternative prefactor divides by zero.
    pub undefined_terms: usize,
}

pub fn sigma_symmetric_variant(angles: &EulerAngles, basis: &IrrepBasis) -> Result<VariantComparison> {
    let (variant, undefined_terms) = symmetric_sum::<Rational>(angles, basis, |s, ell| {
        let bare = s.height - s.l21;
        if bare == 0 {
            return Ok(None);
        }
        let num = (factorial(s.l21)? * factorial(s.a21)?).pow(2);
        let den = factorial(ell)?
            * factorial(ell + s.a21 - s.l21)?
            * factorial(ell - s.l21 + s.height)?
            * factorial(s.l21 - ell)?
            * factorial(s.l21 - s.l11)?
            * factorial(s.a11)?
            * rat(bare);
        Ok(Some(rat(sign_pow(s.l11 - 2 * s.l21)) * num / den))
    })?;
    let truth = sigma_product::<Rational>(angles, basis)?;
    let n = basis.dim();
    let mismatched = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| variant.get(i, j) != truth.get(i, j))
        .count();
    Ok(VariantComparison { entries: n * n, mismatched, undefined_terms })
}

/// Parameters of the bivariate family `P_{n1,n2}(x1, x2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridParams {
    pub big_n: i64,
    pub alpha: Rational,
    pub beta: Rational,
    pub delta: Rational,
}

impl HybridParams {
    /// The values realized in the sector `λ21 + λ22 = 2λ31 - N` of an irrep.
    pub fn for_sector(w: &HighestWeight, big_n: i64) -> Self {
        let one = rat(1);
        let y = rat(2) * &w.l31 - rat(big_n);
        HybridParams {
            big_n,
            alpha: &w.l32 - &w.l31 - &one,
            beta: &y + &w.l33 - &one,
            delta: -&y - &w.l31 - &one,
        }
    }
}

/// `P_{n1,n2}(x1,x2) = K_{n1}(x1-n2; p, N-2n2) R̃_{n2}(x2; α, β, x1-N-1, δ)`.
pub fn hybrid_p(n1: i64, n2: i64, x1: &Rational, x2: &Rational, params: &HybridParams, p: &Rational) -> Result<Rational> {
    let kn = params.big_n - 2 * n2;
    if kn < 0 {
        return Ok(Rational::zero());
    }
    let k = krawtchouk(n1, &(x1 - rat(n2)), &KrawtchoukParams::new(p.clone(), kn)?);
    if k.is_zero() {
        return Ok(k);
    }
    let gamma = x1 - rat(params.big_n) - rat(1);
    let r = racah_tilde(
        n2,
        x2,
        &RacahParams::new(params.alpha.clone(), params.beta.clone(), gamma, params.delta.clone()),
    )?;
    Ok(k * r)
}

/// σ for `S = R^z_η T` from a single Krawtchouk and a single Racah polynomial per entry.
///
/// Carries the sign of the uncalibrated closed form of τ. Rows are `Λ'`, columns `Λ`.
pub fn hybrid_sigma<T: Field>(eta: &Angle, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    let (s, c) = T::sin_cos(eta)?;
    let w = basis.weight();
    let one = rat(1);
    let mut out = PatternMatrix::zeros(basis);
    for (row, q) in basis.patterns().iter().enumerate() {
        for (col, p) in basis.patterns().iter().enumerate() {
            if &p.l21 + &p.l22 != &q.l11 - &q.l21 - &q.l22 {
                continue;
            }
            let inv = inv_factorial_q(&(&p.l21 - &q.l11))?;
            if inv.is_zero() {
                continue;
            }
            let n = d(&p.l21, &p.l22);
            let k = tan_krawtchouk(d(&p.l11, &p.l22), d(&q.l11, &p.l22), n, &s, &c)?;
            if k.is_zero() {
                continue;
            }
            let r = racah_tilde(
                d(&w.l31, &p.l21),
                &(&w.l31 - &q.l21),
                &RacahParams::new(
                    &w.l32 - &w.l31 - &one,
                    &q.l11 - &q.l21 - &q.l22 + &w.l33 - &one,
                    &q.l11 - &w.l31 - &one,
                    &q.l21 + &q.l22 - &q.l11 - &w.l31 - &one,
                ),
            )?;
            if r.is_zero() {
                continue;
            }
            let pre = t_factor(w, &q.l21, &q.l11, &q.l22)?
                * sgn(&(rat(2) * &p.l21 + &q.l21))?
                * factorial(n)?
                * inv
                / factorial(d(&p.l11, &p.l22))?;
            out.set(row, col, T::from_rational(&(pre * r)) * c.powi(n) * k);
        }
    }
    Ok(out)
}
