use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Result;
use crate::gt_basis::{GTPattern, HighestWeight, IrrepBasis};
use crate::numerics::{factorial, inv_factorial_q, rat, Field, Rational, Scalar};
use crate::rep::PatternMatrix;
use crate::specfun::{racah_tilde, tan_krawtchouk, RacahParams};

use super::{d, rho_z_expanded, sgn, t_factor, EulerAngles, Transition};

/// `σ = ρ_φ τ⁻¹ ρ_θ τ ρ_χ`.
pub fn sigma_product<T: Field>(angles: &EulerAngles, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    let t = Transition::of(basis)?;
    let tau = t.tau.map(T::from_rational);
    let tau_inv = t.tau_inv.map(T::from_rational);
    let rp = rho_z_expanded::<T>(&angles.phi, basis)?;
    let rt = rho_z_expanded::<T>(&angles.theta, basis)?;
    let rc = rho_z_expanded::<T>(&angles.chi, basis)?;
    Ok(&(&(&(&rp * &tau_inv) * &rt) * &tau) * &rc)
}

/// Which angle a kernel factor depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Slot {
    Phi,
    Theta,
    Chi,
}

/// `tan^{n+x} K_n(x; sin², N)` at one of the three angles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Kernel {
    slot: Slot,
    n: i64,
    x: i64,
    big_n: i64,
}

#[derive(Clone, Debug)]
struct Shape {
    n: Rational,
    ell: Rational,
    /// Angle-free part of μ.
    mu0: Rational,
    racah: [Rational; 2],
    kernels: [Kernel; 3],
    /// Exponents of `cos φ`, `cos θ`, `cos χ` in μ.
    cos_pow: [i64; 3],
}

/// One `(n, ℓ)` summand of a σ entry.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaTerm {
    pub n: Rational,
    pub ell: Rational,
    pub mu: Scalar,
    /// Krawtchouk in φ, Racah, Krawtchouk in θ, Racah, Krawtchouk in χ.
    pub factors: [Scalar; 5],
}

/// The angle-independent part of the double-sum formula for σ.
#[derive(Clone, Debug)]
pub struct SigmaExpansion {
    basis: IrrepBasis,
    entries: Vec<Vec<(usize, Vec<Shape>)>>,
    kernels: BTreeSet<Kernel>,
}

fn range(lo: Rational, hi: &Rational) -> impl Iterator<Item = Rational> + '_ {
    let mut x = lo;
    std::iter::from_fn(move || {
        if &x > hi {
            return None;
        }
        let out = x.clone();
        x += rat(1);
        Some(out)
    })
}

fn max_of(v: [Rational; 6]) -> Rational {
    v.into_iter().max().expect("nonempty")
}

fn entry_shapes(w: &HighestWeight, q: &GTPattern, p: &GTPattern) -> Result<Vec<Shape>> {
    let (l31, l32, l33) = (&w.l31, &w.l32, &w.l33);
    let (a21, a22, a11) = (&q.l21, &q.l22, &q.l11);
    let (l21, l22, l11) = (&p.l21, &p.l22, &p.l11);
    let one = rat(1);
    let mut out = Vec::new();
    let n_lo = (-l21).max(-a21);
    let n_hi = (-l22).min(-a22);
    for n in range(n_lo, &n_hi) {
        let ell_lo = max_of([
            l32.clone(),
            &n - l32,
            -l21 - l22,
            &n + l21 + l22,
            -a21 - a22,
            &n + a21 + a22,
        ]);
        let ell_hi = l31.clone().min(&n - l33);
        for ell in range(ell_lo, &ell_hi) {
            let mut mu0 = inv_factorial_q(&(&n + a21))?
                * inv_factorial_q(&(a21 - a11))?
                * inv_factorial_q(&(&ell + l21 + l22))?
                * inv_factorial_q(&(&ell - &n - a21 - a22))?
                * inv_factorial_q(&(l11 - l22))?
                * inv_factorial_q(&(-&n - l22))?;
            if mu0.is_zero() {
                continue;
            }
            let two_ell_n = &(rat(2) * &ell) - &n;
            mu0 *= sgn(&(a11 + &ell - &n))?
                * t_factor(w, a21, &(&n + a21 + a22), a22)?
                * t_factor(w, &ell, &(&n + l21 + l22), &(&n - &ell))?
                * factorial(d(a21, a22))?
                * factorial(crate::numerics::int(&two_ell_n))?
                * factorial(d(l21, l22))?;
            let r1 = racah_tilde(
                d(l31, a21),
                &(l31 - &ell),
                &RacahParams::new(
                    l32 - l31 - &one,
                    a21 + a22 + l33 - &one,
                    &n + a21 + a22 - l31 - &one,
                    -a21 - a22 - l31 - &one,
                ),
            )?;
            let r2 = racah_tilde(
                d(l31, l21),
                &(l31 - &ell),
                &RacahParams::new(
                    l32 - l31 - &one,
                    l21 + l22 + l33 - &one,
                    &n + l21 + l22 - l31 - &one,
                    -l21 - l22 - l31 - &one,
                ),
            )?;
            let i = crate::numerics::int;
            out.push(Shape {
                kernels: [
                    Kernel { slot: Slot::Phi, n: i(&(&n + a21)), x: d(a11, a22), big_n: d(a21, a22) },
                    Kernel {
                        slot: Slot::Theta,
                        n: i(&(&ell + l21 + l22)),
                        x: i(&(&ell + a21 + a22)),
                        big_n: i(&two_ell_n),
                    },
                    Kernel { slot: Slot::Chi, n: d(l11, l22), x: i(&(&n + l21)), big_n: d(l21, l22) },
                ],
                cos_pow: [d(a21, a22), i(&two_ell_n), d(l21, l22)],
                n: n.clone(),
                ell,
                mu0,
                racah: [r1, r2],
            });
        }
    }
    Ok(out)
}

impl SigmaExpansion {
    pub fn new(basis: &IrrepBasis) -> Result<Self> {
        let w = basis.weight();
        let pats = basis.patterns();
        let entries: Vec<Vec<(usize, Vec<Shape>)>> = pats
            .par_iter()
            .map(|q| {
                let mut row = Vec::new();
                for (col, p) in pats.iter().enumerate() {
                    let shapes: Vec<Shape> = entry_shapes(w, q, p)?
                        .into_iter()
                        .filter(|s| !s.racah[0].is_zero() && !s.racah[1].is_zero())
                        .collect();
                    if !shapes.is_empty() {
                        row.push((col, shapes));
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        let kernels = entries
            .iter()
            .flatten()
            .flat_map(|(_, shapes)| shapes.iter().flat_map(|s| s.kernels))
            .collect();
        Ok(SigmaExpansion { basis: basis.clone(), entries, kernels })
    }

    /// Number of summands over all entries.
    pub fn term_count(&self) -> usize {
        self.entries.iter().flatten().map(|(_, s)| s.len()).sum()
    }

    fn kernel_table<T: Field>(&self, angles: &EulerAngles) -> Result<(HashMap<Kernel, T>, [T; 3])> {
        let sc = [
            T::sin_cos(&angles.phi)?,
            T::sin_cos(&angles.theta)?,
            T::sin_cos(&angles.chi)?,
        ];
        let slot = |k: Slot| match k {
            Slot::Phi => 0,
            Slot::Theta => 1,
            Slot::Chi => 2,
        };
        let mut table = HashMap::with_capacity(self.kernels.len());
        for k in &self.kernels {
            let (s, c) = &sc[slot(k.slot)];
            table.insert(*k, tan_krawtchouk(k.n, k.x, k.big_n, s, c)?);
        }
        let cos = [sc[0].1.clone(), sc[1].1.clone(), sc[2].1.clone()];
        Ok((table, cos))
    }

    fn mu<T: Field>(shape: &Shape, cos: &[T; 3]) -> T {
        let mut v = T::from_rational(&shape.mu0);
        for (c, &e) in cos.iter().zip(&shape.cos_pow) {
            v = v * c.powi(e);
        }
        v
    }

    pub fn evaluate<T: Field>(&self, angles: &EulerAngles) -> Result<PatternMatrix<T>> {
        let (table, cos) = self.kernel_table::<T>(angles)?;
        let rows: Vec<Vec<(usize, T)>> = self
            .entries
            .par_iter()
            .map(|row| {
                row.iter()
                    .map(|(col, shapes)| {
                        let total = shapes.iter().fold(T::zero(), |acc, s| {
                            acc + Self::mu(s, &cos)
                                * table[&s.kernels[0]].clone()
                                * T::from_rational(&s.racah[0])
                                * table[&s.kernels[1]].clone()
                                * T::from_rational(&s.racah[1])
                                * table[&s.kernels[2]].clone()
                        });
                        (*col, total)
                    })
                    .collect()
            })
            .collect();
        let mut m = PatternMatrix::zeros(&self.basis);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// The summands of entry `(row, col)`.
    pub fn terms<T: Field>(&self, angles: &EulerAngles, row: usize, col: usize) -> Result<Vec<SigmaTerm>> {
        let (table, cos) = self.kernel_table::<T>(angles)?;
        let Some((_, shapes)) = self.entries[row].iter().find(|(c, _)| *c == col) else {
            return Ok(Vec::new());
        };
        Ok(shapes
            .iter()
            .map(|s| SigmaTerm {
                n: s.n.clone(),
                ell: s.ell.clone(),
                mu: Self::mu(s, &cos).to_scalar(),
                factors: [
                    table[&s.kernels[0]].to_scalar(),
                    Scalar::Exact(s.racah[0].clone()),
                    table[&s.kernels[1]].to_scalar(),
                    Scalar::Exact(s.racah[1].clone()),
                    table[&s.kernels[2]].to_scalar(),
                ],
            })
            .collect())
    }
}

/// σ from the double sum over `(n, ℓ)`; rows are `Λ'`, columns `Λ`.
pub fn sigma_formula<T: Field>(angles: &EulerAngles, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    SigmaExpansion::new(basis)?.evaluate(angles)
}

pub fn sigma_terms<T: Field>(angles: &EulerAngles, basis: &IrrepBasis, row: usize, col: usize) -> Result<Vec<SigmaTerm>> {
    SigmaExpansion::new(basis)?.terms::<T>(angles, row, col)
}
