//! Floating-point ground truth from matrix exponentials of the represented so(3) generators.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gt_basis::IrrepBasis;
use crate::rep::{denormalize_f64, generator_matrix, normalize_f64, PatternMatrix};
use crate::rotations::{mat_mul, tau_closed_form, EulerAngles, Mat3};

/// `exp(scale · m)`.
pub fn exp_matrix(m: &PatternMatrix<f64>, scale: f64) -> PatternMatrix<f64> {
    let n = m.dim();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (i, j, v) in m.entries() {
        a[(i, j)] = scale * v;
    }
    let e = a.exp();
    let mut out = PatternMatrix::zeros(m.basis());
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, e[(i, j)]);
        }
    }
    out
}

/// A 3×3 rotation matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationSO3 {
    m: Mat3<f64>,
}

const ROTATION_TOL: f64 = 1e-12;

impl RotationSO3 {
    pub fn new(m: Mat3<f64>) -> Result<Self> {
        let mut err: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                err = err.max((dot - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        if err > ROTATION_TOL {
            return Err(Error::NotARotation(format!("orthogonality defect {err:e}")));
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (det - 1.0).abs() > ROTATION_TOL {
            return Err(Error::NotARotation(format!("determinant {det}")));
        }
        Ok(RotationSO3 { m })
    }

    pub fn identity() -> Self {
        RotationSO3 { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    pub fn from_euler(angles: &EulerAngles) -> Self {
        RotationSO3 { m: angles.to_radians().matrix::<f64>().expect("float angles") }
    }

    pub fn matrix(&self) -> &Mat3<f64> {
        &self.m
    }

    pub fn compose(&self, other: &RotationSO3) -> RotationSO3 {
        RotationSO3 { m: mat_mul(&self.m, &other.m) }
    }

    pub fn distance(&self, other: &RotationSO3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += (self.m[i][j] - other.m[i][j]).powi(2);
            }
        }
        s.sqrt()
    }
}

/// Angles `(χ, θ, φ)` with `θ ∈ [0, π]` and `φ = 0` at gimbal lock.
pub fn euler_decompose(r: &RotationSO3) -> EulerAngles {
    let m = &r.m;
    let st = m[2][0].hypot(m[2][1]);
    let theta = st.atan2(m[2][2]);
    let (chi, phi) = if st < 1e-12 {
        if m[2][2] > 0.0 {
            (m[0][1].atan2(m[0][0]), 0.0)
        } else {
            (m[0][1].atan2(-m[0][0]), 0.0)
        }
    } else {
        (m[1][2].atan2(-m[0][2]), m[2][1].atan2(m[2][0]))
    };
    EulerAngles::radians(chi, theta, phi)
}

/// Represented generators in the orthonormal basis, where they are antisymmetric.
struct Generators {
    lz: PatternMatrix<f64>,
    lx: PatternMatrix<f64>,
}

impl Generators {
    fn new(basis: &IrrepBasis) -> Self {
        let lz = &generator_matrix(1, 2, basis) - &generator_matrix(2, 1, basis);
        let lx = &generator_matrix(2, 3, basis) - &generator_matrix(3, 2, basis);
        Generators {
            lz: normalize_f64(&lz.to_f64()),
            lx: normalize_f64(&lx.to_f64()),
        }
    }

    fn rho_z(&self, angle: f64) -> PatternMatrix<f64> {
        exp_matrix(&self.lz, -angle)
    }

    fn transition(&self) -> PatternMatrix<f64> {
        exp_matrix(&self.lx, -FRAC_PI_2)
    }
}

/// The change of basis for `S(χ, θ, φ)` in the orthonormal basis.
pub fn rho_oracle_normalized(angles: &EulerAngles, basis: &IrrepBasis) -> PatternMatrix<f64> {
    let g = Generators::new(basis);
    let t = g.transition();
    let t_inv = t.transpose();
    let rp = g.rho_z(angles.phi.radians());
    let rt = g.rho_z(angles.theta.radians());
    let rc = g.rho_z(angles.chi.radians());
    &(&(&(&rp * &t_inv) * &rt) * &t) * &rc
}

/// The change of basis for `S(χ, θ, φ)`, in the GT basis.
pub fn rho_oracle_angles(angles: &EulerAngles, basis: &IrrepBasis) -> Result<PatternMatrix<f64>> {
    Ok(denormalize_f64(&rho_oracle_normalized(angles, basis)))
}

/// The operator representing `r⁻¹` on the irrep.
pub fn rho_oracle(r: &RotationSO3, basis: &IrrepBasis) -> Result<PatternMatrix<f64>> {
    RotationSO3::new(r.m)?;
    rho_oracle_angles(&euler_decompose(r), basis)
}

/// Largest entry of `a - b` after both are moved to the orthonormal basis.
pub fn normalized_error(a: &PatternMatrix<f64>, b: &PatternMatrix<f64>) -> f64 {
    normalize_f64(&(a - b)).max_abs()
}

/// Tolerance for comparing against the oracle at a given dimension.
pub fn oracle_tolerance(dim: usize) -> f64 {
    if dim <= 30 {
        1e-12
    } else {
        1e-9
    }
}

const CALIBRATION_TOL: f64 = 1e-9;

/// The sign `s` for which `s τ` matches the oracle for `T`.
pub fn calibrate_tau_sign(basis: &IrrepBasis) -> Result<i64> {
    let raw = normalize_f64(&tau_closed_form(basis)?.to_f64());
    let oracle = Generators::new(basis).transition();
    let plus = (&raw - &oracle).max_abs();
    let minus = (&raw + &oracle).max_abs();
    if plus <= CALIBRATION_TOL {
        Ok(1)
    } else if minus <= CALIBRATION_TOL {
        Ok(-1)
    } else {
        Err(Error::SignCalibrationFailed(format!(
            "weight {}: errors {plus:e} (+) and {minus:e} (-)",
            basis.weight()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_basis::{enumerate_patterns, HighestWeight};
    use crate::numerics::{exact_angle, ratio, Angle, Rational};
    use crate::rep::{Generators as Gens, AlgebraElement};
    use crate::rotations::{rho_z, transition_matrix};
    use rand::{Rng, SeedableRng};

    fn basis(p: i64, q: i64) -> IrrepBasis {
        enumerate_patterns(&HighestWeight::from_differences(p, q).unwrap()).unwrap()
    }

    fn random_rotation(rng: &mut impl Rng) -> RotationSO3 {
        let pi = std::f64::consts::PI;
        RotationSO3::from_euler(&EulerAngles::radians(
            rng.gen_range(-pi..pi),
            rng.gen_range(0.0..pi),
            rng.gen_range(-pi..pi),
        ))
    }

    #[test]
    fn exp_basics() {
        let b = basis(2, 1);
        let g = Generators::new(&b);
        let id = PatternMatrix::identity(&b);
        assert!((&exp_matrix(&g.lz, 0.0) - &id).max_abs() < 1e-15);
        let e = exp_matrix(&g.lx, 0.7);
        assert!((&(&e * &e.transpose()) - &id).max_abs() < 1e-12);
        assert!((&(&e * &exp_matrix(&g.lx, -0.7)) - &id).max_abs() < 1e-12);
    }

    #[test]
    fn rotation_validation() {
        assert!(RotationSO3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]).is_err());
        assert!(RotationSO3::new([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).is_err());
        assert!(RotationSO3::new(transition_matrix::<f64>()).is_ok());
    }

    #[test]
    fn decompose_examples() {
        let id = euler_decompose(&RotationSO3::identity());
        assert_eq!((id.chi.radians(), id.theta.radians(), id.phi.radians()), (0.0, 0.0, 0.0));
        let t = euler_decompose(&RotationSO3::new(transition_matrix::<f64>()).unwrap());
        assert!((t.chi.radians() - FRAC_PI_2).abs() < 1e-15);
        assert!((t.theta.radians() - FRAC_PI_2).abs() < 1e-15);
        assert!((t.phi.radians() + FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn decompose_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let r = random_rotation(&mut rng);
            let back = RotationSO3::from_euler(&euler_decompose(&r));
            assert!(back.distance(&r) < 1e-12);
        }
        for theta in [0.0, std::f64::consts::PI] {
            let r = RotationSO3::from_euler(&EulerAngles::radians(0.4, theta, 0.9));
            let a = euler_decompose(&r);
            assert_eq!(a.phi.radians(), 0.0);
            assert!(RotationSO3::from_euler(&a).distance(&r) < 1e-12);
        }
    }

    #[test]
    fn oracle_matches_rho_z() {
        let b = basis(1, 1);
        let a = exact_angle(ratio(3, 5), ratio(4, 5)).unwrap();
        let exact = rho_z::<Rational>(&a, &b).unwrap().to_f64();
        let oracle = rho_oracle_angles(&EulerAngles::new(Angle::zero(), Angle::zero(), a), &b).unwrap();
        assert!((&exact - &oracle).max_abs() < 1e-12);
    }

    #[test]
    fn oracle_of_identity() {
        let b = basis(1, 1);
        let r = rho_oracle(&RotationSO3::identity(), &b).unwrap();
        assert!((&r - &PatternMatrix::identity(&b)).max_abs() < 1e-15);
    }

    #[test]
    fn defining_rep_is_inverse_rotation() {
        // in the orthonormal basis the defining irrep carries e_k up to a signed permutation
        let b = basis(1, 0);
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let r = random_rotation(&mut rng);
        let o = rho_oracle_normalized(&euler_decompose(&r), &b);
        let slot: Vec<usize> = b.patterns().iter().map(|p| {
            let w11 = crate::numerics::to_f64(&p.l11);
            let w22 = crate::numerics::to_f64(&(&p.l21 + &p.l22 - &p.l11));
            if w11 > 0.5 { 0 } else if w22 > 0.5 { 1 } else { 2 }
        }).collect();
        let inv = crate::rotations::mat_transpose(r.matrix());
        // fix the signs from the first row, then compare everything
        let signs: Vec<f64> = (0..3).map(|j| (o.get(0, j) / inv[slot[0]][slot[j]]).signum()).collect();
        for i in 0..3 {
            for j in 0..3 {
                let expect = signs[i] * signs[j] * inv[slot[i]][slot[j]];
                assert!((o.get(i, j) - expect).abs() < 1e-12, "{i} {j}");
            }
        }
    }

    #[test]
    fn homomorphism_is_contravariant() {
        let b = basis(2, 1);
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let (r1, r2) = (random_rotation(&mut rng), random_rotation(&mut rng));
            let lhs = rho_oracle(&r1.compose(&r2), &b).unwrap();
            let rhs = &rho_oracle(&r2, &b).unwrap() * &rho_oracle(&r1, &b).unwrap();
            assert!(normalized_error(&lhs, &rhs) < 1e-10);
        }
    }

    #[test]
    fn conjugation_consistency() {
        let b = basis(1, 2);
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let r = random_rotation(&mut rng);
        let rho = rho_oracle(&r, &b).unwrap();
        let rho_inv = denormalize_f64(&normalize_f64(&rho).transpose());
        let gens = Gens::<f64>::standard(&b);
        let moved = gens.transported(r.matrix());
        for g in [AlgebraElement::E(1, 2), AlgebraElement::E(2, 3), AlgebraElement::E(3, 1), AlgebraElement::J] {
            let lhs = moved.element(g);
            let rhs = &(&rho_inv * &gens.element(g)) * &rho;
            assert!((&lhs - &rhs).max_abs() < 1e-9, "{g}");
        }
    }

    #[test]
    fn normalized_oracle_is_orthogonal() {
        let b = basis(3, 1);
        let o = rho_oracle_normalized(&EulerAngles::radians(0.3, 1.1, -2.0), &b);
        assert!((&(&o.transpose() * &o) - &PatternMatrix::identity(&b)).max_abs() < 1e-10);
    }

    #[test]
    fn calibration_examples() {
        assert_eq!(calibrate_tau_sign(&basis(0, 0)).unwrap(), 1);
        let a = calibrate_tau_sign(&basis(1, 0)).unwrap();
        assert_eq!(a, calibrate_tau_sign(&basis(1, 0)).unwrap());
        assert!(calibrate_tau_sign(&basis(1, 1)).is_ok());
    }
}
