//! Matrices of sl3 generators and distinguished elements on an irrep.

mod matrix;
mod normalize;

pub use matrix::{combine, PatternMatrix};
pub use normalize::{denormalize_f64, normalize_f64, to_normalized, NormalizedMatrix, SignedSqrt};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gt_basis::{GTPattern, HighestWeight, IrrepBasis, PatternShift};
use crate::numerics::{rat, ratio, Field, Rational};
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraElement {
    E(usize, usize),
    C2,
    C3,
    J,
    Y,
    H,
    H1,
    H2,
    HSmall,
    YSmall,
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraElement::E(i, j) => write!(f, "e{i}{j}"),
            AlgebraElement::C2 => f.write_str("C2"),
            AlgebraElement::C3 => f.write_str("C3"),
            AlgebraElement::J => f.write_str("J"),
            AlgebraElement::Y => f.write_str("Y"),
            AlgebraElement::H => f.write_str("H"),
            AlgebraElement::H1 => f.write_str("H1"),
            AlgebraElement::H2 => f.write_str("H2"),
            AlgebraElement::HSmall => f.write_str("h"),
            AlgebraElement::YSmall => f.write_str("y"),
        }
    }
}

impl FromStr for AlgebraElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let el = match s {
            "C2" => AlgebraElement::C2,
            "C3" => AlgebraElement::C3,
            "J" => AlgebraElement::J,
            "Y" => AlgebraElement::Y,
            "H" => AlgebraElement::H,
            "H1" => AlgebraElement::H1,
            "H2" => AlgebraElement::H2,
            "h" => AlgebraElement::HSmall,
            "y" => AlgebraElement::YSmall,
            _ => {
                let b = s.as_bytes();
                if b.len() == 3 && b[0] == b'e' && (b'1'..=b'3').contains(&b[1]) && (b'1'..=b'3').contains(&b[2]) {
                    AlgebraElement::E((b[1] - b'0') as usize, (b[2] - b'0') as usize)
                } else {
                    return Err(Error::Parse(format!("unknown element {s:?}")));
                }
            }
        };
        Ok(el)
    }
}

/// Targets and coefficients of `e_ij ξ_Λ`.
pub fn generator_action(i: usize, j: usize, w: &HighestWeight, p: &GTPattern) -> Vec<(PatternShift, Rational)> {
    let one = Rational::one();
    let (l31, l32, l33) = (&w.l31, &w.l32, &w.l33);
    let (l21, l22, l11) = (&p.l21, &p.l22, &p.l11);
    let d = l21 - l22 + &one;
    let (d11, d21, d22) = (PatternShift::D11, PatternShift::D21, PatternShift::D22);
    match (i, j) {
        (1, 1) => vec![(PatternShift::ZERO, l11.clone())],
        (2, 2) => vec![(PatternShift::ZERO, l21 + l22 - l11)],
        (3, 3) => vec![(PatternShift::ZERO, -(l21 + l22))],
        (1, 2) => vec![(d11, (l21 - l11) * (l11 - l22 + &one))],
        (2, 1) => vec![(-d11, one)],
        (2, 3) => vec![
            (d21, (l31 - l21) / &d),
            (d22, (l31 - l22 + &one) / &d),
        ],
        (3, 2) => vec![
            (-d21, (l21 - l32) * (l21 - l33 + &one) * (l21 - l11) / &d),
            (-d22, (l11 - l22 + &one) * (l32 - l22 + &one) * (l22 - l33) / &d),
        ],
        (1, 3) => vec![
            (d21 + d11, (l11 - l22 + &one) * (l31 - l21) / &d),
            (d22 + d11, -((l21 - l11) * (l31 - l22 + &one)) / &d),
        ],
        (3, 1) => vec![
            (-d21 - d11, (l21 - l32) * (l21 - l33 + &one) / &d),
            (-d22 - d11, -((l32 - l22 + &one) * (l22 - l33)) / &d),
        ],
        _ => panic!("generator indices out of range: ({i}, {j})"),
    }
}

/// Exact matrix of `e_ij` in the unnormalized basis; columns are source patterns.
pub fn generator_matrix(i: usize, j: usize, basis: &IrrepBasis) -> PatternMatrix<Rational> {
    let mut m = PatternMatrix::zeros(basis);
    for (col, p) in basis.patterns().iter().enumerate() {
        for (s, c) in generator_action(i, j, basis.weight(), p) {
            if c.is_zero() {
                continue;
            }
            if let Some(row) = basis.shift(p, s).and_then(|q| basis.index_of(&q)) {
                m.add_at(row, col, c);
            }
        }
    }
    m
}

/// The nine `e_ij` matrices over a scalar field, possibly transported by an automorphism.
#[derive(Clone, Debug)]
pub struct Generators<T> {
    basis: IrrepBasis,
    e: Vec<PatternMatrix<T>>,
}

impl<T: Field> Generators<T> {
    pub fn standard(basis: &IrrepBasis) -> Self {
        let mut e = Vec::with_capacity(9);
        for i in 1..=3 {
            for j in 1..=3 {
                e.push(generator_matrix(i, j, basis).map(T::from_rational));
            }
        }
        Generators { basis: basis.clone(), e }
    }

    pub fn basis(&self) -> &IrrepBasis {
        &self.basis
    }

    /// Matrix of `e_ij`, 1-based.
    pub fn e(&self, i: usize, j: usize) -> &PatternMatrix<T> {
        &self.e[3 * (i - 1) + (j - 1)]
    }

    /// Images `Ψ_R(e_ij) = Σ_{k,l} R_ki R_lj e_kl`.
    pub fn transported(&self, r: &[[T; 3]; 3]) -> Self {
        let mut e = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = PatternMatrix::zeros(&self.basis);
                for k in 0..3 {
                    for l in 0..3 {
                        let c = r[k][i].clone() * r[l][j].clone();
                        if c.is_zero() {
                            continue;
                        }
                        for (a, b, v) in self.e(k + 1, l + 1).entries() {
                            acc.add_at(a, b, c.clone() * v.clone());
                        }
                    }
                }
                e.push(acc);
            }
        }
        Generators { basis: self.basis.clone(), e }
    }

    fn lin(&self, coeffs: [(usize, i64); 3], den: i64) -> PatternMatrix<T> {
        let terms: Vec<(T, &PatternMatrix<T>)> = coeffs
            .iter()
            .map(|&(k, c)| (T::from_rational(&ratio(c, den)), self.e(k, k)))
            .collect();
        combine(&self.basis, &terms)
    }

    /// `J = ((e11-e22)² + 2(e11-e22))/4 + e21 e12`.
    pub fn j(&self) -> PatternMatrix<T> {
        let h = self.element(AlgebraElement::H);
        let quarter = T::from_rational(&ratio(1, 4));
        let two = T::from_i64(2);
        let q = &(&h * &h) + &h.scale(&two);
        &q.scale(&quarter) + &(self.e(2, 1) * self.e(1, 2))
    }

    /// `J̄ = ((e11-e33)² + 2(e11-e33))/4 + e31 e13`.
    pub fn jbar(&self) -> PatternMatrix<T> {
        let h = self.e(1, 1) - self.e(3, 3);
        let quarter = T::from_rational(&ratio(1, 4));
        let two = T::from_i64(2);
        let q = &(&h * &h) + &h.scale(&two);
        &q.scale(&quarter) + &(self.e(3, 1) * self.e(1, 3))
    }

    pub fn element(&self, g: AlgebraElement) -> PatternMatrix<T> {
        match g {
            AlgebraElement::E(i, j) => self.e(i, j).clone(),
            AlgebraElement::C2 => {
                let mut acc = PatternMatrix::zeros(&self.basis);
                for i in 1..=3 {
                    for j in 1..=3 {
                        acc = &acc + &(self.e(i, j) * self.e(j, i));
                    }
                }
                acc
            }
            AlgebraElement::C3 => {
                let mut acc = PatternMatrix::zeros(&self.basis);
                for i in 1..=3 {
                    for j in 1..=3 {
                        let eij = self.e(i, j);
                        for k in 1..=3 {
                            acc = &acc + &(&(eij * self.e(j, k)) * self.e(k, i));
                        }
                    }
                }
                acc
            }
            AlgebraElement::J => self.j(),
            AlgebraElement::Y => self.lin([(1, 1), (2, 1), (3, -2)], 3),
            AlgebraElement::H => self.lin([(1, 1), (2, -1), (3, 0)], 1),
            AlgebraElement::H1 => self.lin([(1, 1), (2, -1), (3, 0)], 2),
            AlgebraElement::H2 | AlgebraElement::HSmall => self.lin([(1, 0), (2, 1), (3, -1)], 2),
            AlgebraElement::YSmall => self.lin([(1, 2), (2, -1), (3, -1)], 6),
        }
    }
}

pub fn element_matrix(g: AlgebraElement, basis: &IrrepBasis) -> PatternMatrix<Rational> {
    Generators::<Rational>::standard(basis).element(g)
}

/// Diagonal eigenvalue of `g` on `ξ_Λ`, for elements diagonal in the GT basis.
pub fn eigenvalue(g: AlgebraElement, w: &HighestWeight, p: &GTPattern) -> Option<Rational> {
    let (l21, l22, l11) = (&p.l21, &p.l22, &p.l11);
    let two = rat(2);
    let v = match g {
        AlgebraElement::E(1, 1) => l11.clone(),
        AlgebraElement::E(2, 2) => l21 + l22 - l11,
        AlgebraElement::E(3, 3) => -(l21 + l22),
        AlgebraElement::C2 => casimir2(w),
        AlgebraElement::C3 => casimir3(w),
        AlgebraElement::J => {
            let d = l21 - l22;
            &d * (&d + &two) / rat(4)
        }
        AlgebraElement::Y => l21 + l22,
        AlgebraElement::H => &two * l11 - l21 - l22,
        AlgebraElement::H1 => (&two * l11 - l21 - l22) / &two,
        AlgebraElement::H2 | AlgebraElement::HSmall => (&two * l21 + &two * l22 - l11) / &two,
        AlgebraElement::YSmall => l11 / &two,
        AlgebraElement::E(_, _) => return None,
    };
    Some(v)
}

pub fn casimir2(w: &HighestWeight) -> Rational {
    let (a, b) = (&w.l31, &w.l32);
    rat(2) * (a * a + a * b + b * b + rat(2) * a + b)
}

pub fn casimir3(w: &HighestWeight) -> Rational {
    let (a, b) = (&w.l31, &w.l32);
    rat(3) * a * (rat(1) - b) * (rat(2) + a + b)
}

/// Exact structural checks of the represented algebra on one irrep.
pub fn verify_structure(basis: &IrrepBasis) -> Report {
    let w = basis.weight();
    let gens = Generators::<Rational>::standard(basis);
    let mut report = Report::new("rep");
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=3 {
                for l in 1..=3 {
                    if (i, j) >= (k, l) {
                        continue;
                    }
                    report.timed(|| {
                        let lhs = gens.e(i, j).commutator(gens.e(k, l));
                        let mut rhs = PatternMatrix::zeros(basis);
                        if j == k {
                            rhs = &rhs + gens.e(i, l);
                        }
                        if i == l {
                            rhs = &rhs - gens.e(k, j);
                        }
                        Check::exact_zero(format!("[e{i}{j},e{k}{l}]"), w, &(&lhs - &rhs))
                    });
                }
            }
        }
    }
    report.timed(|| {
        let tr = &(gens.e(1, 1) + gens.e(2, 2)) + gens.e(3, 3);
        Check::exact_zero("trace e11+e22+e33", w, &tr)
    });
    for g in [
        AlgebraElement::C2,
        AlgebraElement::C3,
        AlgebraElement::J,
        AlgebraElement::Y,
        AlgebraElement::H,
    ] {
        report.timed(|| {
            let m = gens.element(g);
            let expect = PatternMatrix::diagonal(basis, |i| eigenvalue(g, w, basis.pattern(i)).unwrap());
            Check::exact_zero(format!("{g} eigenvalues"), w, &(&m - &expect))
        });
    }
    for i in 1..=3 {
        for j in 1..=3 {
            if i >= j {
                continue;
            }
            report.timed(|| {
                let a = to_normalized(gens.e(i, j));
                let b = to_normalized(gens.e(j, i)).transpose();
                let ok = a == b;
                Check::new(format!("star e{i}{j} = (e{j}{i})^T"), Some(w), ok, if ok { 0.0 } else { 1.0 })
            });
        }
    }
    report.timed(|| {
        let mut seen = HashSet::new();
        let ok = basis.patterns().iter().all(|p| {
            let key = [AlgebraElement::J, AlgebraElement::Y, AlgebraElement::H].map(|g| eigenvalue(g, w, p).unwrap());
            seen.insert(key)
        });
        Check::new("(J,Y,H) joint spectrum separates patterns", Some(w), ok, 0.0)
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_basis::enumerate_patterns;

    fn basis(p: i64, q: i64) -> IrrepBasis {
        enumerate_patterns(&HighestWeight::from_differences(p, q).unwrap()).unwrap()
    }

    #[test]
    fn e21_lowers_l11() {
        let b = basis(2, 1);
        let m = generator_matrix(2, 1, &b);
        for col in 0..b.dim() {
            let target = b.shift_index(col, -PatternShift::D11);
            let entries: Vec<_> = (0..b.dim()).filter_map(|r| m.get_ref(r, col).map(|v| (r, v.clone()))).collect();
            match target {
                Some(r) => assert_eq!(entries, vec![(r, rat(1))]),
                None => assert!(entries.is_empty()),
            }
        }
    }

    #[test]
    fn e11_diagonal() {
        let b = basis(1, 1);
        let m = generator_matrix(1, 1, &b);
        assert!(m.is_diagonal());
        for i in 0..b.dim() {
            assert_eq!(m.get(i, i), b.pattern(i).l11);
        }
    }

    #[test]
    fn adjoint_commutator() {
        let b = basis(1, 1);
        let lhs = generator_matrix(1, 2, &b).commutator(&generator_matrix(2, 1, &b));
        let rhs = &generator_matrix(1, 1, &b) - &generator_matrix(2, 2, &b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn casimirs_on_adjoint() {
        let b = basis(1, 1);
        assert_eq!(element_matrix(AlgebraElement::C2, &b), PatternMatrix::diagonal(&b, |_| rat(6)));
        assert_eq!(element_matrix(AlgebraElement::C3, &b), PatternMatrix::diagonal(&b, |_| rat(9)));
        let j = element_matrix(AlgebraElement::J, &b);
        let i = b.index_of(&GTPattern::new(rat(1), rat(0), rat(1))).unwrap();
        assert_eq!(j.get(i, i), ratio(3, 4));
    }

    #[test]
    fn structure_small_weights() {
        for (p, q) in [(1, 1), (2, 2), (0, 0), (3, 0), (1, 3)] {
            let r = verify_structure(&basis(p, q));
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            assert_eq!(r.checks.iter().filter(|c| c.name.starts_with('[')).count(), 36);
        }
    }

    #[test]
    fn element_names_round_trip() {
        for s in ["e12", "e33", "C2", "C3", "J", "Y", "H", "H1", "H2", "h", "y"] {
            assert_eq!(s.parse::<AlgebraElement>().unwrap().to_string(), s);
        }
        assert!("e14".parse::<AlgebraElement>().is_err());
    }
}
