//! The universal enveloping algebra `U(𝔤)` in the Poincaré–Birkhoff–Witt
//! basis, formal adjoints, and the five Rumin differential matrices.
//!
//! Monomials are ordered products `X₁^{e₁} X₂^{e₂} X₃^{e₃} X₄^{e₄} X₅^{e₅}`
//! recorded by their exponent vector. Arbitrary words in the generators are
//! straightened into this basis with the bracket relations
//!
//! ```text
//! [X₁,X₂] = X₃,   [X₁,X₃] = X₄,   [X₂,X₃] = X₅,   X₄, X₅ central.
//! ```
//!
//! Coefficients live in the exact field [`QSqrt2`], because the Rumin
//! matrices involve the scalars √2 and 3/2. Every algebraic identity used
//! downstream (the complex property `D_{q+1} D_q = 0`, adjoint symmetry,
//! weighted homogeneity) is therefore decided exactly.

use crate::qsqrt2::QSqrt2;
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a PBW monomial.
pub type Exponents = [u16; 5];

/// Heisenberg weight of each generator (`X₁,X₂` weight 1, `X₃` weight 2,
/// `X₄,X₅` weight 3).
pub const GENERATOR_WEIGHTS: [u16; 5] = [1, 1, 2, 3, 3];

/// An element of `U(𝔤)` in the PBW basis; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UEAPoly {
    terms: BTreeMap<Exponents, QSqrt2>,
}

impl UEAPoly {
    /// The zero element.
    #[must_use]
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `1`.
    #[must_use]
    pub fn one() -> Self {
        Self::from_term([0; 5], QSqrt2::one())
    }

    /// The generator `X_i`, `i ∈ 1..=5`.
    ///
    /// # Panics
    ///
    /// Panics if `i` is outside `1..=5`.
    #[must_use]
    pub fn generator(i: usize) -> Self {
        assert!((1..=5).contains(&i), "generator index must be 1..=5");
        let mut e = [0u16; 5];
        e[i - 1] = 1;
        Self::from_term(e, QSqrt2::one())
    }

    /// A single PBW term `c · X^e`.
    #[must_use]
    pub fn from_term(e: Exponents, c: QSqrt2) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Normal form of an arbitrary word `X_{j₁} X_{j₂} ⋯ X_{j_k}` in the
    /// generators (letters in `1..=5`, applied left to right).
    ///
    /// # Panics
    ///
    /// Panics on letters outside `1..=5`.
    #[must_use]
    pub fn from_word(word: &[usize]) -> Self {
        let mut acc = Self::one();
        for &l in word {
            assert!((1..=5).contains(&l), "letter must be 1..=5");
            acc = acc.right_mul_generator(l);
        }
        acc
    }

    /// True iff this is the zero element.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(exponents, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &QSqrt2)> {
        self.terms.iter()
    }

    /// Number of stored monomials.
    #[must_use]
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, e: Exponents, c: QSqrt2) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Sum.
    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }

    /// Difference.
    #[must_use]
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Negation.
    #[must_use]
    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    /// Scalar multiple.
    #[must_use]
    pub fn scale(&self, c: &QSqrt2) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Right multiplication by the generator `X_l`, straightened into the
    /// PBW basis.
    #[must_use]
    pub fn right_mul_generator(&self, l: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let p = monomial_times_generator(*e, l);
            for (pe, pc) in &p.terms {
                out.insert_term(*pe, pc * c);
            }
        }
        out
    }

    /// Associative product, straightened into the PBW basis.
    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &rhs.terms {
            let mut part = self.scale(c);
            for l in 1..=5usize {
                for _ in 0..e[l - 1] {
                    part = part.right_mul_generator(l);
                }
            }
            out = out.add(&part);
        }
        out
    }

    /// Formal adjoint with respect to any unitary representation: each
    /// generator is skew-adjoint, so a word reverses and picks up `(−1)^k`.
    /// Coefficients (real) are unchanged.
    #[must_use]
    pub fn formal_adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let degree: u16 = e.iter().sum();
            // Reversed word of X₁^{e₁}⋯X₅^{e₅}: letters descending.
            let mut word = Vec::with_capacity(degree as usize);
            for l in (1..=5usize).rev() {
                word.extend(std::iter::repeat(l).take(e[l - 1] as usize));
            }
            let mut rev = Self::from_word(&word);
            if degree % 2 == 1 {
                rev = rev.neg();
            }
            out = out.add(&rev.scale(c));
        }
        out
    }

    /// Heisenberg weight if the element is weighted-homogeneous (`None` for
    /// the zero element or inhomogeneous sums).
    #[must_use]
    pub fn homogeneous_weight(&self) -> Option<u16> {
        let mut weight = None;
        for e in self.terms.keys() {
            let w: u16 = e
                .iter()
                .zip(GENERATOR_WEIGHTS)
                .map(|(&exp, gw)| exp * gw)
                .sum();
            match weight {
                None => weight = Some(w),
                Some(prev) if prev != w => return None,
                Some(_) => {}
            }
        }
        weight
    }

    /// Evaluates in the scalar representation `X₁ ↦ 2πiα`, `X₂ ↦ 2πiβ`,
    /// `X₃,X₄,X₅ ↦ 0`, keeping the transcendental factor symbolic: the result
    /// maps each surviving total degree `d` to the exact coefficient of
    /// `(2πi)^d`.
    #[must_use]
    pub fn evaluate_scalar(&self, alpha: &Rational, beta: &Rational) -> BTreeMap<u16, QSqrt2> {
        let mut out: BTreeMap<u16, QSqrt2> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[2] != 0 || e[3] != 0 || e[4] != 0 {
                continue;
            }
            let mut val = c.clone();
            for _ in 0..e[0] {
                val = &val * &QSqrt2::from_rational(alpha.clone());
            }
            for _ in 0..e[1] {
                val = &val * &QSqrt2::from_rational(beta.clone());
            }
            let d = e[0] + e[1];
            let entry = out.entry(d).or_insert_with(QSqrt2::zero);
            *entry = &*entry + &val;
            if entry.is_zero() {
                out.remove(&d);
            }
        }
        out
    }
}

impl fmt::Display for UEAPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (l, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    write!(f, "·X{}", l + 1)?;
                } else if exp > 1 {
                    write!(f, "·X{}^{}", l + 1, exp)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UEAPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `X^e · X_l` in normal form.
fn monomial_times_generator(e: Exponents, l: usize) -> UEAPoly {
    let top = (1..=5usize).rev().find(|&j| e[j - 1] > 0);
    match top {
        None => UEAPoly::generator(l),
        Some(j) if j <= l => {
            let mut e2 = e;
            e2[l - 1] += 1;
            UEAPoly::from_term(e2, QSqrt2::one())
        }
        Some(j) => {
            // e = a · X_j as words; X^e X_l = a X_l X_j + a [X_j, X_l].
            let mut a = e;
            a[j - 1] -= 1;
            let mut out = monomial_times_generator(a, l).right_mul_generator(j);
            if let Some((sign, k)) = bracket(j, l) {
                let br = monomial_times_generator(a, k);
                out = if sign < 0 {
                    out.sub(&br)
                } else {
                    out.add(&br)
                };
            }
            out
        }
    }
}

/// `[X_j, X_l]` for `j > l`, as `(sign, generator index)`, or `None` if zero.
fn bracket(j: usize, l: usize) -> Option<(i32, usize)> {
    debug_assert!(j > l);
    match (j, l) {
        (2, 1) => Some((-1, 3)), // [X₂,X₁] = −X₃
        (3, 1) => Some((-1, 4)), // [X₃,X₁] = −X₄
        (3, 2) => Some((-1, 5)), // [X₃,X₂] = −X₅
        _ => None,
    }
}

/// Serialized form of one PBW term.
#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponents: [u16; 5],
    coeff: QSqrt2,
}

impl Serialize for UEAPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(e, c)| TermRecord {
                exponents: *e,
                coeff: c.clone(),
            })
            .collect();
        records.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for UEAPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(de)?;
        let mut out = Self::zero();
        for r in records {
            out.insert_term(r.exponents, r.coeff);
        }
        Ok(out)
    }
}

/// A matrix of enveloping-algebra elements (a matrix-valued left-invariant
/// differential operator).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UEAMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<UEAPoly>,
}

impl UEAMatrix {
    /// Zero matrix.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![UEAPoly::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row-major entries.
    ///
    /// # Panics
    ///
    /// Panics if `entries.len() != rows·cols`.
    #[must_use]
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<UEAPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Number of rows.
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    #[must_use]
    pub fn entry(&self, i: usize, j: usize) -> &UEAPoly {
        &self.entries[i * self.cols + j]
    }

    /// Composition `self ∘ rhs` (matrix product over `U(𝔤)`).
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    #[must_use]
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in composition");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = UEAPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.entry(i, k).mul(rhs.entry(k, j)));
                }
                out.entries[i * out.cols + j] = acc;
            }
        }
        out
    }

    /// Formal adjoint: conjugate transpose with entrywise formal adjoints.
    #[must_use]
    pub fn formal_adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * out.cols + i] = self.entry(i, j).formal_adjoint();
            }
        }
        out
    }

    /// True iff every entry is zero.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(UEAPoly::is_zero)
    }
}

/// The Rumin differential `D_q` (`q = 0,…,4`) as a matrix over `U(𝔤)`,
/// mapping the rank-`r_q` bundle to the rank-`r_{q+1}` bundle.
///
/// Every entry is weighted-homogeneous of degree `k_q` (see
/// [`crate::spectral::K_Q`]), and consecutive matrices compose to zero.
///
/// # Panics
///
/// Panics if `q > 4`.
#[must_use]
pub fn rumin_matrix(q: usize) -> UEAMatrix {
    let w = |letters: &[usize]| UEAPoly::from_word(letters);
    let s2 = QSqrt2::sqrt2();
    let neg = |p: UEAPoly| p.neg();
    match q {
        0 => UEAMatrix::from_entries(2, 1, vec![w(&[1]), w(&[2])]),
        1 => {
            let e00 = neg(w(&[1, 1, 2]).add(&w(&[1, 3])).add(&w(&[4])));
            let e01 = w(&[1, 1, 1]);
            let e10 = neg(w(&[1, 2, 2]).add(&w(&[5])).scale(&s2));
            let e11 = w(&[2, 1, 1]).sub(&w(&[4])).scale(&s2);
            let e20 = neg(w(&[2, 2, 2]));
            let e21 = w(&[2, 2, 1]).sub(&w(&[2, 3])).sub(&w(&[5]));
            UEAMatrix::from_entries(3, 2, vec![e00, e01, e10, e11, e20, e21])
        }
        2 => {
            let inv_s2 = s2.inverse();
            let e00 = neg(w(&[1, 2]).add(&w(&[3])));
            let e01 = w(&[1, 1]).scale(&inv_s2);
            let e10 = neg(w(&[2, 2]).scale(&inv_s2));
            let e11 = neg(w(&[3]).scale(&QSqrt2::new(
                crate::rational::rat(3, 2),
                crate::rational::rat_int(0),
            )));
            let e12 = w(&[1, 1]).scale(&inv_s2);
            let e21 = neg(w(&[2, 2]).scale(&inv_s2));
            let e22 = w(&[2, 1]).sub(&w(&[3]));
            UEAMatrix::from_entries(
                3,
                3,
                vec![
                    e00,
                    e01,
                    UEAPoly::zero(),
                    e10,
                    e11,
                    e12,
                    UEAPoly::zero(),
                    e21,
                    e22,
                ],
            )
        }
        3 => {
            let e00 = w(&[1, 2, 2]).add(&w(&[3, 2])).sub(&w(&[5]));
            let e01 = w(&[4]).sub(&w(&[1, 1, 2])).scale(&s2);
            let e02 = w(&[1, 1, 1]);
            let e10 = w(&[2, 2, 2]);
            let e11 = neg(w(&[2, 2, 1]).add(&w(&[5])).scale(&s2));
            let e12 = w(&[2, 1, 1]).sub(&w(&[3, 1])).add(&w(&[4]));
            UEAMatrix::from_entries(2, 3, vec![e00, e01, e02, e10, e11, e12])
        }
        4 => UEAMatrix::from_entries(1, 2, vec![w(&[2]).neg(), w(&[1])]),
        _ => panic!("Rumin differential index must be 0..=4"),
    }
}
