use std::fmt;

use crate::error::Result;
use crate::numerics::{Angle, Field};

pub type Mat3<T> = [[T; 3]; 3];

/// Angles of `S = R^z_χ R^y_θ R^z_φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerAngles {
    pub chi: Angle,
    pub theta: Angle,
    pub phi: Angle,
}

impl EulerAngles {
    pub fn new(chi: Angle, theta: Angle, phi: Angle) -> Self {
        EulerAngles { chi, theta, phi }
    }

    pub fn zero() -> Self {
        EulerAngles::new(Angle::zero(), Angle::zero(), Angle::zero())
    }

    /// `(π/2, π/2, -π/2)`, which realizes the transition matrix `T`.
    pub fn transition() -> Self {
        EulerAngles::new(Angle::quarter_turn(true), Angle::quarter_turn(true), Angle::quarter_turn(false))
    }

    pub fn radians(chi: f64, theta: f64, phi: f64) -> Self {
        EulerAngles::new(Angle::Radians(chi), Angle::Radians(theta), Angle::Radians(phi))
    }

    pub fn is_exact(&self) -> bool {
        self.chi.is_exact() && self.theta.is_exact() && self.phi.is_exact()
    }

    pub fn to_radians(&self) -> Self {
        EulerAngles::new(self.chi.to_radians(), self.theta.to_radians(), self.phi.to_radians())
    }

    /// Parses `chi,theta,phi`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(crate::Error::Parse(format!("expected three angles chi,theta,phi, got {text}")));
        }
        Ok(EulerAngles::new(
            Angle::parse(parts[0])?,
            Angle::parse(parts[1])?,
            Angle::parse(parts[2])?,
        ))
    }

    /// The 3×3 matrix `S`.
    pub fn matrix<T: Field>(&self) -> Result<Mat3<T>> {
        let (sc, cc) = T::sin_cos(&self.chi)?;
        let (st, ct) = T::sin_cos(&self.theta)?;
        let (sp, cp) = T::sin_cos(&self.phi)?;
        Ok(mat_mul(&mat_mul(&rz(sc, cc), &ry(st, ct)), &rz(sp, cp)))
    }
}

impl fmt::Display for EulerAngles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.chi, self.theta, self.phi)
    }
}

pub fn rz<T: Field>(s: T, c: T) -> Mat3<T> {
    let (o, z) = (T::one(), T::zero());
    [[c.clone(), s.clone(), z.clone()], [-s, c, z.clone()], [z.clone(), z, o]]
}

pub fn ry<T: Field>(s: T, c: T) -> Mat3<T> {
    let (o, z) = (T::one(), T::zero());
    [[c.clone(), z.clone(), -s.clone()], [z.clone(), o, z.clone()], [s, z, c]]
}

/// The transition matrix `T`: `e1 ↦ e1`, `e2 ↦ -e3`, `e3 ↦ e2` in columns.
pub fn transition_matrix<T: Field>() -> Mat3<T> {
    let (o, z) = (T::one(), T::zero());
    [[o.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), o.clone()], [z.clone(), -o, z]]
}

pub fn mat_mul<T: Field>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(T::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

pub fn mat_transpose<T: Field>(a: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}
