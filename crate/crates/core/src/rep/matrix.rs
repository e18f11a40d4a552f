use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::gt_basis::IrrepBasis;
use crate::numerics::Field;

/// Sparse square matrix with rows and columns indexed by the patterns of a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternMatrix<T> {
    basis: IrrepBasis,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Field> PatternMatrix<T> {
    pub fn zeros(basis: &IrrepBasis) -> Self {
        PatternMatrix {
            basis: basis.clone(),
            rows: vec![BTreeMap::new(); basis.dim()],
        }
    }

    pub fn identity(basis: &IrrepBasis) -> Self {
        Self::diagonal(basis, |_| T::one())
    }

    pub fn diagonal(basis: &IrrepBasis, mut f: impl FnMut(usize) -> T) -> Self {
        let mut m = Self::zeros(basis);
        for i in 0..basis.dim() {
            m.set(i, i, f(i));
        }
        m
    }

    pub fn from_dense(basis: &IrrepBasis, data: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(basis);
        for (i, row) in data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn basis(&self) -> &IrrepBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&T> {
        self.rows[i].get(&j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, T> {
        &self.rows[i]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut m = Self::zeros(&self.basis);
        for (i, j, v) in self.entries() {
            m.set(i, j, v.clone() * c.clone());
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(&self.basis);
        for (i, j, v) in self.entries() {
            m.set(j, i, v.clone());
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(&self.basis);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let term = a.clone() * b.clone();
                    match acc.get_mut(j) {
                        Some(slot) => *slot = slot.clone() + term,
                        None => {
                            acc.insert(*j, term);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(&self.basis);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest entry magnitude, as a float.
    pub fn max_abs(&self) -> f64 {
        self.entries()
            .map(|(_, _, v)| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> PatternMatrix<U> {
        let mut m = PatternMatrix::zeros(&self.basis);
        for (i, j, v) in self.entries() {
            m.set(i, j, f(v));
        }
        m
    }

    pub fn to_f64(&self) -> PatternMatrix<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        let mut d = vec![vec![T::zero(); n]; n];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }
}

impl<T: Field> Add for &PatternMatrix<T> {
    type Output = PatternMatrix<T>;
    fn add(self, o: &PatternMatrix<T>) -> PatternMatrix<T> {
        let mut m = self.clone();
        for (i, j, v) in o.entries() {
            m.add_at(i, j, v.clone());
        }
        m
    }
}

impl<T: Field> Sub for &PatternMatrix<T> {
    type Output = PatternMatrix<T>;
    fn sub(self, o: &PatternMatrix<T>) -> PatternMatrix<T> {
        let mut m = self.clone();
        for (i, j, v) in o.entries() {
            m.add_at(i, j, -v.clone());
        }
        m
    }
}

impl<T: Field> Mul for &PatternMatrix<T> {
    type Output = PatternMatrix<T>;
    fn mul(self, o: &PatternMatrix<T>) -> PatternMatrix<T> {
        self.matmul(o)
    }
}

impl<T: Field> Neg for &PatternMatrix<T> {
    type Output = PatternMatrix<T>;
    fn neg(self) -> PatternMatrix<T> {
        self.map(|v| -v.clone())
    }
}

/// Linear combination helper: `Σ c_k · M_k`.
pub fn combine<T: Field>(basis: &IrrepBasis, terms: &[(T, &PatternMatrix<T>)]) -> PatternMatrix<T> {
    let mut acc = PatternMatrix::zeros(basis);
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        for (i, j, v) in m.entries() {
            acc.add_at(i, j, c.clone() * v.clone());
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_basis::{enumerate_patterns, HighestWeight};
    use crate::numerics::{rat, Rational};

    #[test]
    fn sparse_algebra() {
        let b = enumerate_patterns(&HighestWeight::from_differences(1, 0).unwrap()).unwrap();
        let mut a = PatternMatrix::<Rational>::zeros(&b);
        a.set(0, 1, rat(2));
        a.set(1, 2, rat(3));
        let sq = &a * &a;
        assert_eq!(sq.get(0, 2), rat(6));
        assert_eq!(sq.nnz(), 1);
        assert!((&a - &a).is_zero());
        assert_eq!(a.transpose().get(1, 0), rat(2));
        let id = PatternMatrix::<Rational>::identity(&b);
        assert_eq!(&id * &a, a);
        a.set(0, 1, rat(0));
        assert_eq!(a.nnz(), 1);
    }
}
