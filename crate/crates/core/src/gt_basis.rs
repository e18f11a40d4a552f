//! Gelfand–Tsetlin patterns of sl3 irreps.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{factorial_q, int, is_int, parse_rational, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    pub l31: Rational,
    pub l32: Rational,
    pub l33: Rational,
}

impl HighestWeight {
    pub fn new(l31: Rational, l32: Rational, l33: Rational) -> Result<Self> {
        let w = HighestWeight { l31, l32, l33 };
        let d1 = &w.l31 - &w.l32;
        let d2 = &w.l32 - &w.l33;
        let ok = is_int(&d1)
            && is_int(&d2)
            && d1 >= Rational::zero()
            && d2 >= Rational::zero()
            && (&w.l31 + &w.l32 + &w.l33).is_zero();
        if ok {
            Ok(w)
        } else {
            Err(Error::InvalidWeight(w.to_string()))
        }
    }

    /// The weight with `l31 - l32 = p`, `l32 - l33 = q`.
    pub fn from_differences(p: i64, q: i64) -> Result<Self> {
        if p < 0 || q < 0 {
            return Err(Error::InvalidWeight(format!("p={p}, q={q}")));
        }
        let l33 = Rational::new((-(p + 2 * q)).into(), 3.into());
        let l32 = &l33 + rat(q);
        let l31 = &l32 + rat(p);
        HighestWeight::new(l31, l32, l33)
    }

    /// Parses `"l31,l32,l33"` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("weight needs three entries: {s:?}")));
        }
        HighestWeight::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        )
    }

    pub fn p(&self) -> i64 {
        int(&(&self.l31 - &self.l32))
    }

    pub fn q(&self) -> i64 {
        int(&(&self.l32 - &self.l33))
    }

    /// `l31 - l33`.
    pub fn height(&self) -> i64 {
        self.p() + self.q()
    }

    pub fn weyl_dimension(&self) -> usize {
        let (p, q) = (self.p() as usize, self.q() as usize);
        (p + 1) * (q + 1) * (p + q + 2) / 2
    }

    pub fn is_symmetric(&self) -> bool {
        self.l32 == self.l33
    }

    /// All weights with `l31 - l33 <= max_height`, ordered by height then `p`.
    pub fn up_to_height(max_height: i64) -> Vec<HighestWeight> {
        let mut out = Vec::new();
        for h in 0..=max_height {
            for p in (0..=h).rev() {
                out.push(HighestWeight::from_differences(p, h - p).unwrap());
            }
        }
        out
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.l31, self.l32, self.l33)
    }
}

/// A pattern's middle and bottom rows; the top row is the basis weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTPattern {
    pub l21: Rational,
    pub l22: Rational,
    pub l11: Rational,
}

impl GTPattern {
    pub fn new(l21: Rational, l22: Rational, l11: Rational) -> Self {
        GTPattern { l21, l22, l11 }
    }

    pub fn shifted(&self, s: PatternShift) -> GTPattern {
        GTPattern {
            l21: &self.l21 + rat(s.d21),
            l22: &self.l22 + rat(s.d22),
            l11: &self.l11 + rat(s.d11),
        }
    }

    pub fn is_valid_for(&self, w: &HighestWeight) -> bool {
        let diffs = [
            &w.l31 - &self.l21,
            &self.l21 - &w.l32,
            &w.l32 - &self.l22,
            &self.l22 - &w.l33,
            &self.l21 - &self.l11,
            &self.l11 - &self.l22,
        ];
        diffs.iter().all(|d| is_int(d) && *d >= Rational::zero())
    }

    pub fn display_with(&self, w: &HighestWeight) -> String {
        format!(
            "[{} {} {} / {} {} / {}]",
            w.l31, w.l32, w.l33, self.l21, self.l22, self.l11
        )
    }
}

/// A displacement of `(l21, l22, l11)` by integer steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PatternShift {
    pub d21: i64,
    pub d22: i64,
    pub d11: i64,
}

impl PatternShift {
    pub const D11: PatternShift = PatternShift { d21: 0, d22: 0, d11: 1 };
    pub const D21: PatternShift = PatternShift { d21: 1, d22: 0, d11: 0 };
    pub const D22: PatternShift = PatternShift { d21: 0, d22: 1, d11: 0 };
    pub const ZERO: PatternShift = PatternShift { d21: 0, d22: 0, d11: 0 };
}

impl Add for PatternShift {
    type Output = PatternShift;
    fn add(self, o: PatternShift) -> PatternShift {
        PatternShift {
            d21: self.d21 + o.d21,
            d22: self.d22 + o.d22,
            d11: self.d11 + o.d11,
        }
    }
}

impl Sub for PatternShift {
    type Output = PatternShift;
    fn sub(self, o: PatternShift) -> PatternShift {
        self + (-o)
    }
}

impl Neg for PatternShift {
    type Output = PatternShift;
    fn neg(self) -> PatternShift {
        PatternShift {
            d21: -self.d21,
            d22: -self.d22,
            d11: -self.d11,
        }
    }
}

#[derive(Debug)]
struct BasisData {
    weight: HighestWeight,
    patterns: Vec<GTPattern>,
    index: HashMap<GTPattern, usize>,
    norms: Vec<Rational>,
}

/// The canonically ordered pattern set of one irrep. Cheap to clone.
#[derive(Clone, Debug)]
pub struct IrrepBasis {
    inner: Arc<BasisData>,
}

impl PartialEq for IrrepBasis {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.weight == other.inner.weight
    }
}

pub fn enumerate_patterns(weight: &HighestWeight) -> Result<IrrepBasis> {
    let w = HighestWeight::new(weight.l31.clone(), weight.l32.clone(), weight.l33.clone())?;
    let mut patterns = Vec::new();
    for a in 0..=w.p() {
        let l21 = &w.l32 + rat(a);
        for b in 0..=w.q() {
            let l22 = &w.l33 + rat(b);
            for c in 0..=int(&(&l21 - &l22)) {
                let l11 = &l22 + rat(c);
                patterns.push(GTPattern::new(l21.clone(), l22.clone(), l11));
            }
        }
    }
    patterns.sort();
    let index = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let norms = patterns
        .iter()
        .map(|p| norm_squared_for(&w, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(IrrepBasis {
        inner: Arc::new(BasisData {
            weight: w,
            patterns,
            index,
            norms,
        }),
    })
}

fn norm_squared_for(w: &HighestWeight, p: &GTPattern) -> Result<Rational> {
    let (l31, l32, l33) = (&w.l31, &w.l32, &w.l33);
    let (l21, l22, l11) = (&p.l21, &p.l22, &p.l11);
    let one = Rational::one();
    let num = [
        l21 - l11,
        l31 - l21,
        l31 - l22 + &one,
        l31 - l32,
        l32 - l33,
        l22 - l33,
        l31 - l33 + &one,
        l21 - l32,
        l21 - l33 + &one,
    ];
    let den = [l11 - l22, l32 - l22];
    let mut acc = (l21 - l22 + &one).recip();
    for a in &num {
        acc *= factorial_q(a)?;
    }
    for a in &den {
        acc /= factorial_q(a)?;
    }
    Ok(acc)
}

/// `(N_Λ)²` for a valid pattern.
pub fn norm_squared(weight: &HighestWeight, p: &GTPattern) -> Result<Rational> {
    norm_squared_for(weight, p)
}

impl IrrepBasis {
    pub fn new(weight: &HighestWeight) -> Result<Self> {
        enumerate_patterns(weight)
    }

    pub fn weight(&self) -> &HighestWeight {
        &self.inner.weight
    }

    pub fn patterns(&self) -> &[GTPattern] {
        &self.inner.patterns
    }

    pub fn pattern(&self, i: usize) -> &GTPattern {
        &self.inner.patterns[i]
    }

    pub fn dim(&self) -> usize {
        self.inner.patterns.len()
    }

    pub fn index_of(&self, p: &GTPattern) -> Option<usize> {
        self.inner.index.get(p).copied()
    }

    /// The shifted pattern, or `None` when it breaks interlacing.
    pub fn shift(&self, p: &GTPattern, s: PatternShift) -> Option<GTPattern> {
        let q = p.shifted(s);
        q.is_valid_for(self.weight()).then_some(q)
    }

    pub fn shift_index(&self, i: usize, s: PatternShift) -> Option<usize> {
        self.index_of(&self.pattern(i).shifted(s))
    }

    pub fn norm_squared(&self, i: usize) -> &Rational {
        &self.inner.norms[i]
    }

    pub fn display_pattern(&self, i: usize) -> String {
        self.pattern(i).display_with(self.weight())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;
    use proptest::prelude::*;

    fn w(a: i64, b: i64, c: i64) -> HighestWeight {
        HighestWeight::new(rat(a), rat(b), rat(c)).unwrap()
    }

    fn pat(l21: i64, l22: i64, l11: i64) -> GTPattern {
        GTPattern::new(rat(l21), rat(l22), rat(l11))
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_patterns(&w(1, 0, -1)).unwrap().dim(), 8);
        let fund = HighestWeight::new(ratio(2, 3), ratio(-1, 3), ratio(-1, 3)).unwrap();
        assert_eq!(enumerate_patterns(&fund).unwrap().dim(), 3);
        assert_eq!(enumerate_patterns(&w(0, 0, 0)).unwrap().dim(), 1);
        assert_eq!(enumerate_patterns(&w(2, 0, -2)).unwrap().dim(), 27);
    }

    #[test]
    fn invalid_weights() {
        assert!(HighestWeight::new(rat(2), rat(1), rat(-3)).is_ok());
        assert!(matches!(
            HighestWeight::new(rat(2), rat(1), rat(-2)),
            Err(Error::InvalidWeight(_))
        ));
        assert!(HighestWeight::new(rat(0), rat(1), rat(-1)).is_err());
        assert!(HighestWeight::new(ratio(1, 2), ratio(-1, 2), rat(0)).is_err());
        assert!(HighestWeight::new(ratio(1, 2), rat(0), ratio(-1, 2)).is_err());
    }

    #[test]
    fn canonical_order_is_lex() {
        let b = enumerate_patterns(&w(1, 0, -1)).unwrap();
        let got: Vec<_> = b.patterns().to_vec();
        let mut sorted = got.clone();
        sorted.sort_by(|a, b| (&a.l21, &a.l22, &a.l11).cmp(&(&b.l21, &b.l22, &b.l11)));
        assert_eq!(got, sorted);
        assert_eq!(b.pattern(0), &pat(0, -1, -1));
        assert_eq!(b.display_pattern(0), "[1 0 -1 / 0 -1 / -1]");
    }

    #[test]
    fn shifts() {
        let b = enumerate_patterns(&w(1, 0, -1)).unwrap();
        let p = pat(1, 0, 1);
        assert_eq!(b.shift(&p, PatternShift::D11), None);
        assert_eq!(b.shift(&p, -PatternShift::D11), Some(pat(1, 0, 0)));
        assert_eq!(b.shift(&pat(1, -1, 0), PatternShift::D22), Some(pat(1, 0, 0)));
    }

    #[test]
    fn norms() {
        let b = enumerate_patterns(&w(1, 0, -1)).unwrap();
        let i = b.index_of(&pat(1, 0, 1)).unwrap();
        assert_eq!(b.norm_squared(i), &rat(36));
        let t = enumerate_patterns(&w(0, 0, 0)).unwrap();
        assert_eq!(t.norm_squared(0), &rat(1));
    }

    #[test]
    fn weyl_dimension_up_to_height_eight() {
        for wt in HighestWeight::up_to_height(8) {
            let b = enumerate_patterns(&wt).unwrap();
            assert_eq!(b.dim(), wt.weyl_dimension(), "{wt}");
        }
    }

    #[test]
    fn weight_count_by_height() {
        assert_eq!(HighestWeight::up_to_height(6).len(), 28);
        assert_eq!(HighestWeight::up_to_height(5).len(), 21);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_patterns(&w(2, 1, -3)).unwrap();
        let b = enumerate_patterns(&w(2, 1, -3)).unwrap();
        assert_eq!(a.patterns(), b.patterns());
    }

    proptest! {
        #[test]
        fn shift_round_trip(p in 0i64..4, q in 0i64..4, k in 0usize..1000, which in 0usize..6) {
            let wt = HighestWeight::from_differences(p, q).unwrap();
            let b = enumerate_patterns(&wt).unwrap();
            let i = k % b.dim();
            let s = [PatternShift::D11, PatternShift::D21, PatternShift::D22,
                     PatternShift::D11 + PatternShift::D21, PatternShift::D11 + PatternShift::D22,
                     -PatternShift::D21 + PatternShift::D22][which];
            if let Some(q) = b.shift(b.pattern(i), s) {
                let back = b.shift(&q, -s);
                prop_assert_eq!(back.as_ref(), Some(b.pattern(i)));
            }
        }

        #[test]
        fn norms_positive(p in 0i64..5, q in 0i64..5) {
            let b = enumerate_patterns(&HighestWeight::from_differences(p, q).unwrap()).unwrap();
            for i in 0..b.dim() {
                prop_assert!(*b.norm_squared(i) > Rational::zero());
            }
        }
    }
}
