use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gt_basis::IrrepBasis;
use crate::numerics::{to_f64, Rational};

use super::PatternMatrix;

/// `sign · sqrt(square)` with `square >= 0` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSqrt {
    pub sign: i8,
    pub square: Rational,
}

impl SignedSqrt {
    pub fn zero() -> Self {
        SignedSqrt { sign: 0, square: Rational::zero() }
    }

    /// The exact rational value, when `square` is a perfect square.
    pub fn exact(&self) -> Option<Rational> {
        if self.sign == 0 {
            return Some(Rational::zero());
        }
        let n = exact_sqrt(self.square.numer())?;
        let d = exact_sqrt(self.square.denom())?;
        let r = Rational::new(n, d);
        Some(if self.sign < 0 { -r } else { r })
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * to_f64(&self.square).sqrt()
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// A matrix in the orthonormal basis `ζ_Λ = ξ_Λ / N_Λ`, entries kept as signed square roots.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedMatrix {
    basis: IrrepBasis,
    entries: BTreeMap<(usize, usize), SignedSqrt>,
}

pub fn to_normalized(m: &PatternMatrix<Rational>) -> NormalizedMatrix {
    let basis = m.basis();
    let entries = m
        .entries()
        .map(|(i, j, v)| {
            let square = v * v * basis.norm_squared(i) / basis.norm_squared(j);
            let sign = if v.is_negative() { -1 } else { 1 };
            ((i, j), SignedSqrt { sign, square })
        })
        .collect();
    NormalizedMatrix { basis: basis.clone(), entries }
}

impl NormalizedMatrix {
    pub fn get(&self, i: usize, j: usize) -> SignedSqrt {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(SignedSqrt::zero)
    }

    pub fn entry_exact(&self, i: usize, j: usize) -> Result<Rational> {
        self.get(i, j).exact().ok_or(Error::NonCancellingNorms(i, j))
    }

    pub fn to_exact(&self) -> Result<PatternMatrix<Rational>> {
        let mut m = PatternMatrix::zeros(&self.basis);
        for &(i, j) in self.entries.keys() {
            m.set(i, j, self.entry_exact(i, j)?);
        }
        Ok(m)
    }

    /// Float evaluation; exact whenever no square root survives.
    pub fn to_float(&self) -> PatternMatrix<f64> {
        let mut m = PatternMatrix::zeros(&self.basis);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, v.to_f64());
        }
        m
    }

    pub fn transpose(&self) -> Self {
        NormalizedMatrix {
            basis: self.basis.clone(),
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }
}

/// `D M D⁻¹` with `D = diag(N_Λ)` in floats.
pub fn normalize_f64(m: &PatternMatrix<f64>) -> PatternMatrix<f64> {
    let b = m.basis();
    let n: Vec<f64> = (0..b.dim()).map(|i| to_f64(b.norm_squared(i)).sqrt()).collect();
    let mut out = PatternMatrix::zeros(b);
    for (i, j, v) in m.entries() {
        out.set(i, j, v * n[i] / n[j]);
    }
    out
}

/// Inverse of [`normalize_f64`].
pub fn denormalize_f64(m: &PatternMatrix<f64>) -> PatternMatrix<f64> {
    let b = m.basis();
    let n: Vec<f64> = (0..b.dim()).map(|i| to_f64(b.norm_squared(i)).sqrt()).collect();
    let mut out = PatternMatrix::zeros(b);
    for (i, j, v) in m.entries() {
        out.set(i, j, v * n[j] / n[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_basis::{enumerate_patterns, HighestWeight};
    use crate::numerics::{rat, ratio};
    use crate::rep::{element_matrix, generator_matrix, AlgebraElement};

    #[test]
    fn star_is_transposition_on_adjoint() {
        let b = enumerate_patterns(&HighestWeight::from_differences(1, 1).unwrap()).unwrap();
        let a = to_normalized(&generator_matrix(1, 2, &b));
        let t = to_normalized(&generator_matrix(2, 1, &b)).transpose();
        assert_eq!(a, t);
    }

    #[test]
    fn diagonal_unchanged() {
        let b = enumerate_patterns(&HighestWeight::from_differences(2, 1).unwrap()).unwrap();
        let m = element_matrix(AlgebraElement::J, &b);
        assert_eq!(to_normalized(&m).to_exact().unwrap(), m);
    }

    #[test]
    fn signed_sqrt() {
        let s = SignedSqrt { sign: -1, square: ratio(4, 9) };
        assert_eq!(s.exact(), Some(ratio(-2, 3)));
        let t = SignedSqrt { sign: 1, square: rat(2) };
        assert_eq!(t.exact(), None);
        assert!((t.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn surviving_root_is_flagged() {
        let b = enumerate_patterns(&HighestWeight::from_differences(1, 1).unwrap()).unwrap();
        let n = to_normalized(&generator_matrix(2, 3, &b));
        let irrational = n
            .entries
            .iter()
            .find(|(_, v)| v.exact().is_none())
            .map(|(&(i, j), _)| (i, j));
        if let Some((i, j)) = irrational {
            assert_eq!(n.entry_exact(i, j), Err(Error::NonCancellingNorms(i, j)));
            assert!(n.to_exact().is_err());
            assert!(n.to_float().get(i, j).is_finite());
        }
    }

    #[test]
    fn float_round_trip() {
        let b = enumerate_patterns(&HighestWeight::from_differences(2, 1).unwrap()).unwrap();
        let m = generator_matrix(1, 3, &b).to_f64();
        let back = denormalize_f64(&normalize_f64(&m));
        for (i, j, v) in m.entries() {
            assert!((back.get(i, j) - v).abs() <= 1e-12 * v.abs());
        }
    }
}
