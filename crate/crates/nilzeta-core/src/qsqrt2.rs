//! Exact arithmetic in the real quadratic field ℚ(√2).
//!
//! The Rumin-complex differential matrices have entries whose coefficients
//! live in ℚ(√2) (the normalizing factors √2 and 3/2 appear in the middle of
//! the complex). Every symbolic computation involving those matrices —
//! composition, adjoints, characteristic polynomials of scalar-model
//! Laplacians — is carried out in this field so that vanishing is decided
//! exactly, never by a floating-point threshold.

use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element `a + b√2` of ℚ(√2) with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    /// Rational part `a`.
    pub a: Rational,
    /// Coefficient `b` of √2.
    pub b: Rational,
}

impl QSqrt2 {
    /// Builds `a + b√2`.
    #[must_use]
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    /// Embeds a rational number.
    #[must_use]
    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
        }
    }

    /// Embeds a machine integer.
    #[must_use]
    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(crate::rational::rat_int(n))
    }

    /// The zero element.
    #[must_use]
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit element.
    #[must_use]
    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The generator √2.
    #[must_use]
    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// True iff both parts vanish.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    #[must_use]
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²` (zero iff the element is zero, since √2 ∉ ℚ).
    #[must_use]
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - crate::rational::rat_int(2) * &self.b * &self.b
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// Panics on the zero element.
    #[must_use]
    pub fn inverse(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in QSqrt2");
        let conj = self.conjugate();
        Self::new(conj.a / &n, conj.b / &n)
    }

    /// Numerical value `a + b·√2` as `f64`.
    #[must_use]
    pub fn to_f64(&self) -> f64 {
        crate::rational::rational_to_f64(&self.a)
            + crate::rational::rational_to_f64(&self.b) * std::f64::consts::SQRT_2
    }

    /// Sign of the real number `a + b√2` (−1, 0, or 1), decided exactly.
    #[must_use]
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.b.is_zero() {
            return if self.a.is_positive() { 1 } else { -1 };
        }
        if self.a.is_zero() {
            return if self.b.is_positive() { 1 } else { -1 };
        }
        // a and b both nonzero: compare a² with 2b², tie-break by signs.
        let a_pos = self.a.is_positive();
        let b_pos = self.b.is_positive();
        if a_pos == b_pos {
            return if a_pos { 1 } else { -1 };
        }
        // Opposite signs: |a| vs √2|b| decides, i.e. sign(a²−2b²) times sign(a).
        let cmp = (&self.a * &self.a) - crate::rational::rat_int(2) * &self.b * &self.b;
        let bigger_a = cmp.is_positive();
        match (a_pos, bigger_a) {
            (true, true) | (false, false) => 1,
            (true, false) | (false, true) => -1,
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt2", self.b);
        }
        if self.b.is_positive() {
            write!(f, "{}+{}*sqrt2", self.a, self.b)
        } else {
            write!(f, "{}{}*sqrt2", self.a, self.b)
        }
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = crate::rational::rat_int(2);
        QSqrt2::new(
            &self.a * &rhs.a + &two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for &QSqrt2 {
    type Output = QSqrt2;
    fn div(self, rhs: &QSqrt2) -> QSqrt2 {
        self * &rhs.inverse()
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_val_ops {
    ($($trait_:ident :: $method:ident),*) => {$(
        impl $trait_ for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_val_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        -&self
    }
}

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QSqrt2> for QSqrt2 {
    fn sub_assign(&mut self, rhs: &QSqrt2) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&QSqrt2> for QSqrt2 {
    fn mul_assign(&mut self, rhs: &QSqrt2) {
        *self = (&*self) * rhs;
    }
}

impl Serialize for QSqrt2 {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("QSqrt2", 2)?;
        st.serialize_field("a", &format_rational(&self.a))?;
        st.serialize_field("b", &format_rational(&self.b))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QSqrt2 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: String,
            b: String,
        }
        let raw = Raw::deserialize(de)?;
        Ok(QSqrt2::new(
            parse_rational(&raw.a).map_err(D::Error::custom)?,
            parse_rational(&raw.b).map_err(D::Error::custom)?,
        ))
    }
}
