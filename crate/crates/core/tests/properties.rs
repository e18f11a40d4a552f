//! Randomized invariants over weights and Pythagorean angles.

use gtrotor::gt_basis::{enumerate_patterns, HighestWeight, IrrepBasis};
use gtrotor::numerics::{exact_angle, ratio, Angle, Rational};
use gtrotor::oracle::{normalized_error, rho_oracle_angles};
use gtrotor::racah_algebra::{centralizer_identity_residuals, racah_relations_residual};
use gtrotor::rep::AlgebraElement;
use gtrotor::rotations::{
    bispectral_residual, orthogonality_residual, rho_z, rho_z_expanded, sigma_formula, sigma_product, BispectralKind,
    EulerAngles,
};
use proptest::prelude::*;

/// Angles from Euclid's parametrization `((m²-n²), 2mn) / (m²+n²)`, with signs.
fn pythagorean() -> impl Strategy<Value = Angle> {
    (1i64..5, 0i64..5, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(m, n, swap, ns, nc)| {
        let (a, b, h) = (m * m - n * n, 2 * m * n, m * m + n * n);
        let (s, c) = if swap { (b, a) } else { (a, b) };
        let (s, c) = (if ns { -s } else { s }, if nc { -c } else { c });
        exact_angle(ratio(s, h), ratio(c, h)).unwrap()
    })
}

fn weight(max_height: i64) -> impl Strategy<Value = IrrepBasis> {
    (0..=max_height, 0..=max_height)
        .prop_filter("height bound", move |(p, q)| p + q <= max_height)
        .prop_map(|(p, q)| enumerate_patterns(&HighestWeight::from_differences(p, q).unwrap()).unwrap())
}

fn parts(a: &Angle) -> (Rational, Rational) {
    match a {
        Angle::ExactOnCircle { sin, cos } => (sin.clone(), cos.clone()),
        Angle::Radians(_) => unreachable!("exact strategy"),
    }
}

fn euler() -> impl Strategy<Value = EulerAngles> {
    (pythagorean(), pythagorean(), pythagorean()).prop_map(|(a, b, c)| EulerAngles::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sigma_is_orthogonal(b in weight(3), angles in euler()) {
        let s = sigma_product::<Rational>(&angles, &b).unwrap();
        prop_assert!(orthogonality_residual(&s).is_zero());
    }

    #[test]
    fn formula_equals_product_off_cos_zero(b in weight(3), angles in euler()) {
        prop_assume!(!angles.chi.cos_is_zero() && !angles.theta.cos_is_zero() && !angles.phi.cos_is_zero());
        prop_assert_eq!(sigma_formula::<Rational>(&angles, &b).unwrap(), sigma_product::<Rational>(&angles, &b).unwrap());
    }

    #[test]
    fn rho_expansions_agree(b in weight(5), a in pythagorean()) {
        prop_assume!(!a.cos_is_zero());
        prop_assert_eq!(rho_z_expanded::<Rational>(&a, &b).unwrap(), rho_z::<Rational>(&a, &b).unwrap());
    }

    #[test]
    fn exact_path_matches_oracle(b in weight(4), angles in euler()) {
        let s = sigma_product::<Rational>(&angles, &b).unwrap().to_f64();
        let o = rho_oracle_angles(&angles.to_radians(), &b).unwrap();
        prop_assert!(normalized_error(&s, &o) < 1e-10);
    }

    #[test]
    fn homomorphism_on_z_rotations(b in weight(4), x in pythagorean(), y in pythagorean()) {
        let (sx, cx) = parts(&x);
        let (sy, cy) = parts(&y);
        let sum = exact_angle(&sx * &cy + &cx * &sy, &cx * &cy - &sx * &sy).unwrap();
        let lhs = &rho_z_expanded::<Rational>(&x, &b).unwrap() * &rho_z_expanded::<Rational>(&y, &b).unwrap();
        prop_assert_eq!(lhs, rho_z_expanded::<Rational>(&sum, &b).unwrap());
    }

    #[test]
    fn bispectral_j(b in weight(3), angles in euler()) {
        for kind in [BispectralKind::Recurrence, BispectralKind::Difference] {
            prop_assert!(bispectral_residual::<Rational>(AlgebraElement::J, kind, &angles, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn racah_algebra_identities(b in weight(5)) {
        prop_assert!(racah_relations_residual(&b).passed());
        prop_assert!(centralizer_identity_residuals(&b).passed());
    }
}
