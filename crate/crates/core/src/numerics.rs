//! Scalar tower and combinatorial primitives.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer value of `q`, or `NotInteger`.
pub fn try_int(q: &Rational) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::NotInteger(q.to_string()));
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| Error::NotInteger(q.to_string()))
}

/// Integer value of a quantity that is integral by construction (pattern differences).
pub fn int(q: &Rational) -> i64 {
    try_int(q).expect("integral by construction")
}

pub fn is_int(q: &Rational) -> bool {
    q.is_integer()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn factorial_big(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::InvalidFactorialArgument(n.to_string()));
    }
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Ok(acc)
}

pub fn factorial(n: i64) -> Result<Rational> {
    factorial_big(n).map(Rational::from_integer)
}

/// `q!` for a rational argument that must be a nonnegative integer.
pub fn factorial_q(q: &Rational) -> Result<Rational> {
    factorial(try_int(q)?)
}

/// `1/q!`, with the convention `1/(-k)! = 0` for negative integers.
pub fn inv_factorial_q(q: &Rational) -> Result<Rational> {
    let n = try_int(q)?;
    if n < 0 {
        Ok(Rational::zero())
    } else {
        Ok(factorial(n)?.recip())
    }
}

pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        if x.is_zero() {
            return Rational::zero();
        }
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// `(-1)^k`.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^q` for an integral rational exponent.
pub fn sign_q(q: &Rational) -> Result<i64> {
    try_int(q).map(sign_pow)
}

pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || k > n || n < 0 {
        return Rational::zero();
    }
    let num = factorial_big(n).unwrap();
    let den = factorial_big(k).unwrap() * factorial_big(n - k).unwrap();
    Rational::from_integer(num / den)
}

pub fn powi_q(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(q.clone(), k as usize)
    } else {
        num_traits::pow(q.recip(), (-k) as usize)
    }
}

/// A rotation angle, exact on the rational unit circle or a float in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    ExactOnCircle { sin: Rational, cos: Rational },
    Radians(f64),
}

pub fn exact_angle(s: Rational, c: Rational) -> Result<Angle> {
    if &s * &s + &c * &c != Rational::one() {
        return Err(Error::NotOnUnitCircle {
            sin: s.to_string(),
            cos: c.to_string(),
        });
    }
    Ok(Angle::ExactOnCircle { sin: s, cos: c })
}

impl Angle {
    pub fn zero() -> Angle {
        Angle::ExactOnCircle {
            sin: Rational::zero(),
            cos: Rational::one(),
        }
    }

    /// `s:c` with rationals on the unit circle, or `rad=<float>`.
    pub fn parse(text: &str) -> Result<Angle> {
        let t = text.trim();
        if let Some(r) = t.strip_prefix("rad=") {
            let v: f64 = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad angle in radians: {r}")))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("bad angle in radians: {r}")));
            }
            return Ok(Angle::Radians(v));
        }
        let (s, c) = t
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("angle must be s:c or rad=x, got {t}")))?;
        exact_angle(parse_rational(s)?, parse_rational(c)?)
    }

    /// Exact angle `±π/2`.
    pub fn quarter_turn(positive: bool) -> Angle {
        Angle::ExactOnCircle {
            sin: rat(if positive { 1 } else { -1 }),
            cos: Rational::zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::ExactOnCircle { .. })
    }

    pub fn sin_f64(&self) -> f64 {
        match self {
            Angle::ExactOnCircle { sin, .. } => to_f64(sin),
            Angle::Radians(r) => r.sin(),
        }
    }

    pub fn cos_f64(&self) -> f64 {
        match self {
            Angle::ExactOnCircle { cos, .. } => to_f64(cos),
            Angle::Radians(r) => r.cos(),
        }
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::ExactOnCircle { sin, cos } => to_f64(sin).atan2(to_f64(cos)),
            Angle::Radians(r) => *r,
        }
    }

    pub fn to_radians(&self) -> Angle {
        Angle::Radians(self.radians())
    }

    pub fn neg(&self) -> Angle {
        match self {
            Angle::ExactOnCircle { sin, cos } => Angle::ExactOnCircle {
                sin: -sin.clone(),
                cos: cos.clone(),
            },
            Angle::Radians(r) => Angle::Radians(-r),
        }
    }

    pub fn cos_is_zero(&self) -> bool {
        match self {
            Angle::ExactOnCircle { cos, .. } => cos.is_zero(),
            Angle::Radians(r) => r.cos() == 0.0,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::ExactOnCircle { sin, cos } => write!(f, "{sin}:{cos}"),
            Angle::Radians(r) => write!(f, "rad={r}"),
        }
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// An exact or approximate scalar; mixing promotes to `Approx`.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => to_f64(q),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    fn lift(
        self,
        rhs: Scalar,
        exact: impl Fn(Rational, Rational) -> Rational,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            (a, b) => Scalar::Approx(approx(a.to_f64(), b.to_f64())),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.lift(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.lift(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.lift(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.lift(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Approx(x) => write!(f, "{x:?}"),
        }
    }
}

/// Scalars a `PatternMatrix` can hold: exact rationals or doubles.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const EXACT: bool;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// `(sin, cos)` of an angle; exact fields reject float angles.
    fn sin_cos(angle: &Angle) -> Result<(Self, Self)>;
    fn powi(&self, k: i64) -> Self;
    fn to_scalar(&self) -> Scalar;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&rat(n))
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        to_f64(self)
    }

    fn sin_cos(angle: &Angle) -> Result<(Self, Self)> {
        match angle {
            Angle::ExactOnCircle { sin, cos } => Ok((sin.clone(), cos.clone())),
            Angle::Radians(_) => Err(Error::InexactAngle),
        }
    }

    fn powi(&self, k: i64) -> Self {
        powi_q(self, k)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sin_cos(angle: &Angle) -> Result<(Self, Self)> {
        Ok((angle.sin_f64(), angle.cos_f64()))
    }

    fn powi(&self, k: i64) -> Self {
        f64::powi(*self, k as i32)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Approx(*self)
    }
}

pub fn abs_q(q: &Rational) -> Rational {
    q.abs()
}

/// `tan^a · cos^b` evaluated as `sin^a · cos^(b-a)`.
pub fn trig_monomial<T: Field>(s: &T, c: &T, a: i64, b: i64) -> Result<T> {
    if b - a < 0 && c.is_zero() {
        return Err(Error::TanPole);
    }
    Ok(s.powi(a) * c.powi(b - a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), rat(1));
        assert_eq!(factorial(5).unwrap(), rat(120));
        assert!(matches!(
            factorial(-1),
            Err(Error::InvalidFactorialArgument(_))
        ));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(3), 0), rat(1));
        assert_eq!(pochhammer(&ratio(1, 2), 3), ratio(15, 8));
        assert_eq!(pochhammer(&rat(-2), 3), rat(0));
    }

    #[test]
    fn exact_angle_checks_circle() {
        assert_eq!(
            exact_angle(ratio(3, 5), ratio(4, 5)).unwrap(),
            Angle::ExactOnCircle {
                sin: ratio(3, 5),
                cos: ratio(4, 5)
            }
        );
        assert!(exact_angle(rat(0), rat(1)).is_ok());
        assert!(matches!(
            exact_angle(ratio(1, 2), ratio(1, 2)),
            Err(Error::NotOnUnitCircle { .. })
        ));
    }

    #[test]
    fn angle_syntax() {
        assert_eq!(Angle::parse("3/5:4/5").unwrap(), exact_angle(ratio(3, 5), ratio(4, 5)).unwrap());
        assert_eq!(Angle::parse("rad=0.5").unwrap(), Angle::Radians(0.5));
        assert!(matches!(Angle::parse("1:1"), Err(Error::NotOnUnitCircle { .. })));
        assert!(matches!(Angle::parse("rad=x"), Err(Error::Parse(_))));
        assert!(matches!(Angle::parse("0.3"), Err(Error::Parse(_))));
        assert_eq!(Angle::parse(&Angle::quarter_turn(false).to_string()).unwrap(), Angle::quarter_turn(false));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-2/6").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational("4").unwrap(), rat(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(ratio(2, 3).to_string(), "2/3");
    }

    #[test]
    fn scalar_promotion() {
        let a = Scalar::Exact(ratio(1, 2));
        let b = Scalar::Approx(0.25);
        assert_eq!(a.clone() + a.clone(), Scalar::Exact(rat(1)));
        assert_eq!(a * b, Scalar::Approx(0.125));
    }

    #[test]
    fn trig_monomial_rejects_pole() {
        let (s, c) = (rat(1), rat(0));
        assert_eq!(trig_monomial(&s, &c, 2, 1), Err(Error::TanPole));
        assert_eq!(trig_monomial(&s, &c, 1, 1).unwrap(), rat(1));
    }

    #[test]
    fn factorial_recurrence() {
        for n in 0..=40 {
            assert_eq!(
                factorial(n + 1).unwrap(),
                rat(n + 1) * factorial(n).unwrap()
            );
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let reduced = Rational::new(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(reduced, a);
        }

        #[test]
        fn pochhammer_step(a in small_rational(), k in 0u32..12) {
            prop_assert_eq!(pochhammer(&a, k + 1), pochhammer(&a, k) * (&a + rat(k as i64)));
        }

        #[test]
        fn exact_trig_monomials(k in -6i64..6, m in -6i64..6, which in 0usize..3) {
            let (s, c) = [(ratio(3, 5), ratio(4, 5)), (ratio(5, 13), ratio(12, 13)), (ratio(-8, 17), ratio(15, 17))][which].clone();
            let v = trig_monomial(&s, &c, k, m).unwrap();
            let expect = powi_q(&(&s / &c), k) * powi_q(&c, m);
            prop_assert_eq!(v, expect);
        }
    }
}
