//! Exact arithmetic in the simply connected graded nilpotent group `G`.
//!
//! `G` is the 5-dimensional group whose Lie algebra 𝔤 = 𝔤₋₁ ⊕ 𝔤₋₂ ⊕ 𝔤₋₃ has a
//! graded basis `X₁,…,X₅` with the only nonzero brackets
//!
//! ```text
//! [X₁,X₂] = X₃,   [X₁,X₃] = X₄,   [X₂,X₃] = X₅.
//! ```
//!
//! Group elements are stored in exponential coordinates: the element
//! `exp(x₁X₁ + … + x₅X₅)` is the coordinate vector `(x₁,…,x₅)`. The group law
//! is the degree-3-nilpotent Baker–Campbell–Hausdorff polynomial, evaluated in
//! exact rational arithmetic. This is the canonical representation; elements
//! are never stored in any other chart.

use crate::rational::{format_rational, parse_rational, rat_int, Rational};
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Grading degree of each basis direction `X₁..X₅` (`x_i` scales by `τ^{-deg}`
/// under the dilation `φ_τ`, i.e. by `τ`, `τ`, `τ²`, `τ³`, `τ³`).
pub const GRADING_DEGREES: [i32; 5] = [-1, -1, -2, -3, -3];

/// A point of `G` in exponential coordinates `(x₁,…,x₅)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: [Rational; 5],
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3], self.coords[4]
        )
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl GroupElement {
    /// Builds an element from its five exponential coordinates.
    #[must_use]
    pub fn new(coords: [Rational; 5]) -> Self {
        Self { coords }
    }

    /// The identity `exp(0)`.
    #[must_use]
    pub fn identity() -> Self {
        Self::new(std::array::from_fn(|_| Rational::zero()))
    }

    /// Convenience constructor from five machine-integer fractions
    /// `(n_i, d_i)` — used heavily in tests.
    #[must_use]
    pub fn from_i64(coords: [i64; 5]) -> Self {
        Self::new(coords.map(rat_int))
    }

    /// Coordinate `x_{i+1}` (zero-based index).
    #[must_use]
    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    /// All five coordinates.
    #[must_use]
    pub fn coords(&self) -> &[Rational; 5] {
        &self.coords
    }

    /// True iff this is the identity.
    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Group law `z = x · y` (Baker–Campbell–Hausdorff, exact):
    ///
    /// ```text
    /// z₁ = x₁+y₁
    /// z₂ = x₂+y₂
    /// z₃ = x₃+y₃ + (x₁y₂−x₂y₁)/2
    /// z₄ = x₄+y₄ + (x₁y₃−x₃y₁)/2 + (x₁−y₁)(x₁y₂−x₂y₁)/12
    /// z₅ = x₅+y₅ + (x₂y₃−x₃y₂)/2 + (x₂−y₂)(x₁y₂−x₂y₁)/12
    /// ```
    #[must_use]
    pub fn multiply(&self, other: &Self) -> Self {
        let [x1, x2, x3, x4, x5] = &self.coords;
        let [y1, y2, y3, y4, y5] = &other.coords;
        let half = crate::rational::rat(1, 2);
        let twelfth = crate::rational::rat(1, 12);
        let area12 = x1 * y2 - x2 * y1;
        let z1 = x1 + y1;
        let z2 = x2 + y2;
        let z3 = x3 + y3 + &half * &area12;
        let z4 = x4 + y4 + &half * (x1 * y3 - x3 * y1) + &twelfth * (x1 - y1) * &area12;
        let z5 = x5 + y5 + &half * (x2 * y3 - x3 * y2) + &twelfth * (x2 - y2) * &area12;
        Self::new([z1, z2, z3, z4, z5])
    }

    /// Group inverse; in exponential coordinates `exp(X)⁻¹ = exp(−X)`.
    #[must_use]
    pub fn inverse(&self) -> Self {
        Self::new(self.coords.clone().map(|c| -c))
    }

    /// Group commutator `log [exp x, exp y]` in closed form:
    ///
    /// ```text
    /// (0, 0, x₁y₂−x₂y₁,
    ///  x₁y₃−x₃y₁ + (x₁+y₁)(x₁y₂−x₂y₁)/2,
    ///  x₂y₃−x₃y₂ + (x₂+y₂)(x₁y₂−x₂y₁)/2)
    /// ```
    #[must_use]
    pub fn commutator(&self, other: &Self) -> Self {
        let [x1, x2, x3, _, _] = &self.coords;
        let [y1, y2, y3, _, _] = &other.coords;
        let half = crate::rational::rat(1, 2);
        let area12 = x1 * y2 - x2 * y1;
        let z4 = x1 * y3 - x3 * y1 + &half * (x1 + y1) * &area12;
        let z5 = x2 * y3 - x3 * y2 + &half * (x2 + y2) * &area12;
        Self::new([Rational::zero(), Rational::zero(), area12, z4, z5])
    }

    /// Graded dilation `φ_τ`: `(τx₁, τx₂, τ²x₃, τ³x₄, τ³x₅)`.
    ///
    /// For `τ > 0` this is the grading automorphism of `G`; it is applied
    /// through [`GradedDilation`] which enforces positivity.
    #[must_use]
    fn dilate_unchecked(&self, tau: &Rational) -> Self {
        let t2 = tau * tau;
        let t3 = &t2 * tau;
        Self::new([
            tau * &self.coords[0],
            tau * &self.coords[1],
            &t2 * &self.coords[2],
            &t3 * &self.coords[3],
            &t3 * &self.coords[4],
        ])
    }

    /// Integer power `x^k` (inverse power for negative `k`), exact, by binary
    /// powering on the BCH product.
    #[must_use]
    pub fn power(&self, k: i64) -> Self {
        if k == 0 {
            return Self::identity();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.multiply(&sq);
            }
        }
        acc
    }

    /// True iff this element is central, i.e. `x₁ = x₂ = x₃ = 0`.
    #[must_use]
    pub fn is_central(&self) -> bool {
        self.coords[..3].iter().all(Zero::is_zero)
    }
}

/// The grading automorphism `φ_τ` of `G` for a positive ratio `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDilation {
    tau: Rational,
}

/// Error for non-positive dilation ratios.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dilation ratio must be positive, got {tau}")]
pub struct InvalidDilation {
    /// Rejected ratio.
    pub tau: String,
}

impl GradedDilation {
    /// Creates `φ_τ`; `τ` must be strictly positive.
    pub fn new(tau: Rational) -> Result<Self, InvalidDilation> {
        if tau <= Rational::zero() {
            return Err(InvalidDilation {
                tau: format_rational(&tau),
            });
        }
        Ok(Self { tau })
    }

    /// The ratio `τ`.
    #[must_use]
    pub fn tau(&self) -> &Rational {
        &self.tau
    }

    /// Applies the automorphism to a group element.
    #[must_use]
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        x.dilate_unchecked(&self.tau)
    }

    /// The identity dilation `φ_1`.
    #[must_use]
    pub fn one() -> Self {
        Self {
            tau: Rational::one(),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(format_rational).collect();
        strings.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let strings = <[String; 5]>::deserialize(de)?;
        let mut coords = std::array::from_fn(|_| Rational::zero());
        for (slot, s) in coords.iter_mut().zip(strings.iter()) {
            *slot = parse_rational(s).map_err(D::Error::custom)?;
        }
        Ok(Self::new(coords))
    }
}

/// Parses `"x1,x2,x3,x4,x5"` with each coordinate in `"p/q"` form.
pub fn parse_group_element(s: &str) -> Result<GroupElement, crate::rational::ParseRationalError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 5 {
        return Err(crate::rational::ParseRationalError {
            input: s.to_string(),
        });
    }
    let mut coords = std::array::from_fn(|_| Rational::zero());
    for (slot, part) in coords.iter_mut().zip(parts.iter()) {
        *slot = parse_rational(part)?;
    }
    Ok(GroupElement::new(coords))
}
