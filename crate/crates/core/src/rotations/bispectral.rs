use crate::error::Result;
use crate::gt_basis::IrrepBasis;
use crate::numerics::Field;
use crate::rep::{eigenvalue, generator_action, AlgebraElement, Generators, PatternMatrix};

use super::{mat_transpose, sigma_product, EulerAngles};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BispectralKind {
    /// `σ Ψ_S(g) = g σ`: a recurrence in the column pattern.
    Recurrence,
    /// `σ g = Ψ_{Sᵗ}(g) σ`: a difference equation in the row pattern.
    Difference,
}

/// `σ Ψ_S(g) - g σ` or `σ g - Ψ_{Sᵗ}(g) σ` with σ from the product path.
pub fn bispectral_residual<T: Field>(
    g: AlgebraElement,
    kind: BispectralKind,
    angles: &EulerAngles,
    basis: &IrrepBasis,
) -> Result<PatternMatrix<T>> {
    let sigma = sigma_product::<T>(angles, basis)?;
    let s = angles.matrix::<T>()?;
    let gens = Generators::<T>::standard(basis);
    let plain = gens.element(g);
    Ok(match kind {
        BispectralKind::Recurrence => {
            let moved = gens.transported(&s).element(g);
            &(&sigma * &moved) - &(&plain * &sigma)
        }
        BispectralKind::Difference => {
            let moved = gens.transported(&mat_transpose(&s)).element(g);
            &(&sigma * &plain) - &(&moved * &sigma)
        }
    })
}

/// As [`bispectral_residual`], with the diagonal side replaced by the eigenvalue
/// formula of `g` evaluated at `Λ'` (recurrence) or `Λ` (difference).
pub fn bispectral_eigen_residual<T: Field>(
    g: AlgebraElement,
    kind: BispectralKind,
    angles: &EulerAngles,
    basis: &IrrepBasis,
) -> Result<PatternMatrix<T>> {
    let sigma = sigma_product::<T>(angles, basis)?;
    let s = angles.matrix::<T>()?;
    let gens = Generators::<T>::standard(basis);
    let w = basis.weight();
    let ev = |i: usize| {
        T::from_rational(&eigenvalue(g, w, basis.pattern(i)).expect("diagonal element"))
    };
    let mut out = PatternMatrix::zeros(basis);
    match kind {
        BispectralKind::Recurrence => {
            let lhs = &sigma * &gens.transported(&s).element(g);
            for i in 0..basis.dim() {
                for j in 0..basis.dim() {
                    out.set(i, j, lhs.get(i, j) - ev(i) * sigma.get(i, j));
                }
            }
        }
        BispectralKind::Difference => {
            let rhs = &gens.transported(&mat_transpose(&s)).element(g) * &sigma;
            for i in 0..basis.dim() {
                for j in 0..basis.dim() {
                    out.set(i, j, sigma.get(i, j) * ev(j) - rhs.get(i, j));
                }
            }
        }
    }
    Ok(out)
}

/// Coefficients of `e_kl` in `Ψ(H)`, `H = e11 - e22`, indexed by `(k, l)`.
fn h_coefficients<T: Field>(s: &[[T; 3]; 3], transpose: bool) -> Vec<((usize, usize), T)> {
    let at = |a: usize, b: usize| if transpose { s[b][a].clone() } else { s[a][b].clone() };
    let mut out = Vec::new();
    for k in 0..3 {
        for l in 0..3 {
            let c = at(k, 0) * at(l, 0) - at(k, 1) * at(l, 1);
            if !c.is_zero() {
                out.push(((k + 1, l + 1), c));
            }
        }
    }
    out
}

/// The recurrence for `H` written out entrywise from the generator actions:
/// `Σ_{k,l} (S_k1 S_l1 - S_k2 S_l2) Σ_shifts c_kl(Λ) σ_{Λ', Λ+shift} - H(Λ') σ_{Λ'Λ}`.
pub fn h_recurrence_display<T: Field>(angles: &EulerAngles, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    let sigma = sigma_product::<T>(angles, basis)?;
    let coeffs = h_coefficients(&angles.matrix::<T>()?, false);
    let w = basis.weight();
    let mut out = PatternMatrix::zeros(basis);
    for (col, p) in basis.patterns().iter().enumerate() {
        let mut shifted = Vec::new();
        for ((k, l), ck) in &coeffs {
            for (shift, c) in generator_action(*k, *l, w, p) {
                if let Some(t) = basis.shift_index(col, shift) {
                    shifted.push((t, ck.clone() * T::from_rational(&c)));
                }
            }
        }
        for (row, q) in basis.patterns().iter().enumerate() {
            let h = T::from_rational(&eigenvalue(AlgebraElement::H, w, q).expect("diagonal"));
            let lhs = shifted
                .iter()
                .fold(T::zero(), |acc, (t, c)| acc + c.clone() * sigma.get(row, *t));
            out.set(row, col, lhs - h * sigma.get(row, col));
        }
    }
    Ok(out)
}

/// The difference equation for `H` written out entrywise: `H(Λ) σ_{Λ'Λ}` minus
/// `Σ_{k,l} (S_1k S_1l - S_2k S_2l) Σ_shifts c_kl(Λ'-shift) σ_{Λ'-shift, Λ}`.
pub fn h_difference_display<T: Field>(angles: &EulerAngles, basis: &IrrepBasis) -> Result<PatternMatrix<T>> {
    let sigma = sigma_product::<T>(angles, basis)?;
    let coeffs = h_coefficients(&angles.matrix::<T>()?, true);
    let w = basis.weight();
    let mut out = PatternMatrix::zeros(basis);
    for (row, q) in basis.patterns().iter().enumerate() {
        let mut sources = Vec::new();
        for ((k, l), ck) in &coeffs {
            // the shifts of e_kl do not depend on the source pattern
            for (shift, _) in generator_action(*k, *l, w, q) {
                let Some(src) = basis.shift_index(row, -shift) else { continue };
                for (s2, c) in generator_action(*k, *l, w, basis.pattern(src)) {
                    if s2 == shift {
                        sources.push((src, ck.clone() * T::from_rational(&c)));
                    }
                }
            }
        }
        for (col, p) in basis.patterns().iter().enumerate() {
            let h = T::from_rational(&eigenvalue(AlgebraElement::H, w, p).expect("diagonal"));
            let rhs = sources
                .iter()
                .fold(T::zero(), |acc, (s, c)| acc + c.clone() * sigma.get(*s, col));
            out.set(row, col, h * sigma.get(row, col) - rhs);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_basis::{enumerate_patterns, HighestWeight};
    use crate::numerics::{exact_angle, ratio, Angle, Rational};

    fn pyth(s: i64, c: i64, h: i64) -> Angle {
        exact_angle(ratio(s, h), ratio(c, h)).unwrap()
    }

    fn basis(p: i64, q: i64) -> IrrepBasis {
        enumerate_patterns(&HighestWeight::from_differences(p, q).unwrap()).unwrap()
    }

    const ELEMENTS: [AlgebraElement; 3] = [AlgebraElement::H, AlgebraElement::Y, AlgebraElement::J];

    #[test]
    fn h_recurrence_on_adjoint() {
        let angles = EulerAngles::new(pyth(3, 4, 5), pyth(3, 4, 5), pyth(3, 4, 5));
        let b = basis(1, 1);
        let r = bispectral_residual::<Rational>(AlgebraElement::H, BispectralKind::Recurrence, &angles, &b).unwrap();
        assert!(r.is_zero());
        assert!(h_recurrence_display::<Rational>(&angles, &b).unwrap().is_zero());
        assert!(h_difference_display::<Rational>(&angles, &b).unwrap().is_zero());
    }

    #[test]
    fn j_difference_on_two_zero_minus_two() {
        let angles = EulerAngles::new(pyth(5, 12, 13), pyth(3, 4, 5), pyth(-3, 4, 5));
        let b = basis(2, 2);
        for kind in [BispectralKind::Recurrence, BispectralKind::Difference] {
            let r = bispectral_residual::<Rational>(AlgebraElement::J, kind, &angles, &b).unwrap();
            assert!(r.is_zero());
        }
    }

    #[test]
    fn identity_rotation_is_trivial() {
        let b = basis(2, 1);
        for g in ELEMENTS {
            for kind in [BispectralKind::Recurrence, BispectralKind::Difference] {
                assert!(bispectral_residual::<Rational>(g, kind, &EulerAngles::zero(), &b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn eigenvalue_forms() {
        let angles = EulerAngles::new(pyth(3, 4, 5), pyth(5, 12, 13), pyth(4, 3, 5));
        for (p, q) in [(1, 0), (1, 1), (2, 1), (0, 3)] {
            let b = basis(p, q);
            for g in ELEMENTS {
                for kind in [BispectralKind::Recurrence, BispectralKind::Difference] {
                    let r = bispectral_eigen_residual::<Rational>(g, kind, &angles, &b).unwrap();
                    assert!(r.is_zero(), "{g} {kind:?} ({p},{q})");
                }
            }
        }
    }
}
