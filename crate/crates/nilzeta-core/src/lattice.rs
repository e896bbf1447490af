//! The two-parameter family of lattices `Γ ⊂ G`, their distinguished
//! sublattices, and unitary characters `χ: Γ → U(1)`.
//!
//! A lattice in the family is specified by an integer `r ≥ 1`, odd integers
//! `u, v`, and four rationals `e, f, g, h`. Its five generators are
//!
//! ```text
//! γ₁ = exp(X₁),  γ₂ = exp(X₂),  γ₃ = exp((X₃ + (u/2)X₄ + (v/2)X₅)/r),
//! γ₄ = exp(eX₄ + fX₅),  γ₅ = exp(gX₄ + hX₅).
//! ```
//!
//! Everything here is exact: membership tests, sublattice predicates, the
//! abelianization invariants, character well-definedness, and character
//! values (returned as rational phases in `[0, 1)`).

use crate::group::GroupElement;
use crate::intlat::{column_hermite, congruence_kernel_basis, smith, IMat};
use crate::rational::{
    format_rational, fract_mod_one, is_integer, parse_rational, rat, rat_int, Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Errors from lattice and character construction or evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    /// The parameters do not define a lattice in the family.
    #[error("invalid lattice parameters: {reason}")]
    InvalidSpec {
        /// Human-readable reason.
        reason: String,
    },
    /// The character values are inconsistent with the lattice relations.
    #[error("character is not well defined on this lattice: {reason}")]
    InvalidCharacter {
        /// Human-readable reason.
        reason: String,
    },
    /// A group element was expected to lie in `Γ` but does not.
    #[error("element {element} does not lie in the lattice")]
    NotInLattice {
        /// Offending element, in coordinate form.
        element: String,
    },
    /// The base-point search for `(λ₀, μ₀)` failed within its bound.
    #[error("no admissible (λ₀, μ₀) base point found within the search bound")]
    NoBasePoint,
    /// A string could not be parsed as the expected tuple.
    #[error("malformed tuple: {input}")]
    MalformedTuple {
        /// Offending input.
        input: String,
    },
}

fn rat_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Least common multiple of the denominators of `vals` (always positive).
fn denominator_lcm(vals: &[&Rational]) -> BigInt {
    let mut d = BigInt::one();
    for v in vals {
        d = d.lcm(v.denom());
    }
    d.abs()
}

/// A full-rank lattice in ℚ² ⊂ ℝ², stored by its canonical (column-Hermite)
/// basis. The first basis vector has positive `x` and zero is never a basis
/// vector; the second is of the form `(0, y)` with `y > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarLattice {
    /// Canonical basis vectors `b₁ = (p, q)`, `b₂ = (0, s)` with `p, s > 0`.
    basis: [[Rational; 2]; 2],
}

impl PlanarLattice {
    /// The lattice spanned by the given generators; requires full rank 2.
    pub fn from_generators(gens: &[[Rational; 2]]) -> Result<Self, LatticeError> {
        let flat: Vec<&Rational> = gens.iter().flatten().collect();
        let d = denominator_lcm(&flat);
        let mut c = IMat::zeros(2, gens.len().max(1));
        for (j, g) in gens.iter().enumerate() {
            for (i, coord) in g.iter().enumerate() {
                let scaled = coord * rat_big(d.clone());
                debug_assert!(is_integer(&scaled));
                c.set(i, j, scaled.numer().clone());
            }
        }
        let hnf = column_hermite(&c);
        if hnf.rank() != 2 {
            return Err(LatticeError::InvalidSpec {
                reason: "planar generators do not span a rank-2 lattice".into(),
            });
        }
        let dr = rat_big(d);
        let b = |i: usize, j: usize| rat_big(hnf.h.get(i, j).clone()) / &dr;
        Ok(Self {
            basis: [[b(0, 0), b(1, 0)], [b(0, 1), b(1, 1)]],
        })
    }

    /// The integer lattice ℤ².
    #[must_use]
    pub fn integers() -> Self {
        Self {
            basis: [[Rational::one(), Rational::zero()], [
                Rational::zero(),
                Rational::one(),
            ]],
        }
    }

    /// Canonical basis vectors (`b₂` always has first coordinate zero).
    #[must_use]
    pub fn basis(&self) -> &[[Rational; 2]; 2] {
        &self.basis
    }

    /// Integer coordinates of `p` in the basis, if `p` lies in the lattice.
    #[must_use]
    pub fn coordinates(&self, p: &[Rational; 2]) -> Option<(BigInt, BigInt)> {
        // Triangular solve: p = c₁·b₁ + c₂·b₂ with b₂ = (0, s).
        let c1 = &p[0] / &self.basis[0][0];
        if !is_integer(&c1) {
            return None;
        }
        let c2 = (&p[1] - &c1 * &self.basis[0][1]) / &self.basis[1][1];
        if !is_integer(&c2) {
            return None;
        }
        Some((c1.numer().clone(), c2.numer().clone()))
    }

    /// Membership test.
    #[must_use]
    pub fn contains(&self, p: &[Rational; 2]) -> bool {
        self.coordinates(p).is_some()
    }

    /// True iff every generator of `other` lies in `self`.
    #[must_use]
    pub fn contains_lattice(&self, other: &Self) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Covolume `|det(b₁, b₂)|` of the lattice.
    #[must_use]
    pub fn covolume(&self) -> Rational {
        let det = &self.basis[0][0] * &self.basis[1][1] - &self.basis[0][1] * &self.basis[1][0];
        if det.is_negative() {
            -det
        } else {
            det
        }
    }

    /// The dual lattice `{w : ⟨w, p⟩ ∈ ℤ for all p in the lattice}`.
    #[must_use]
    pub fn dual(&self) -> Self {
        // Basis matrix B has columns b₁ = (a, c), b₂ = (0, s); the dual basis
        // consists of the columns of (B⁻¹)ᵀ: (1/a, 0) and (−c/(as), 1/s).
        let (a, c) = (&self.basis[0][0], &self.basis[0][1]);
        let s = &self.basis[1][1];
        let det = a * s;
        let d1 = [s / &det, Rational::zero()];
        let d2 = [-(c / &det), a / &det];
        Self::from_generators(&[d1, d2]).expect("dual of a full-rank lattice has full rank")
    }

    /// All points of `shift + lattice` with squared norm `≤ radius²`,
    /// enumerated exactly and returned in deterministic order.
    #[must_use]
    pub fn points_in_disk(&self, shift: &[Rational; 2], radius: &Rational) -> Vec<[Rational; 2]> {
        let mut out = Vec::new();
        if radius.is_negative() {
            return out;
        }
        let r2 = radius * radius;
        // p = shift + c₁b₁ + c₂b₂ with b₂ = (0, s):
        // |p_x| ≤ radius bounds c₁; given c₁, |p_y| ≤ radius bounds c₂.
        let b1 = &self.basis[0];
        let s = &self.basis[1][1];
        let c1_lo = ((-radius - &shift[0]) / &b1[0]).ceil();
        let c1_hi = ((radius - &shift[0]) / &b1[0]).floor();
        let mut c1 = c1_lo;
        while c1 <= c1_hi {
            let px = &shift[0] + &c1 * &b1[0];
            let y0 = &shift[1] + &c1 * &b1[1];
            let c2_lo = ((-radius - &y0) / s).ceil();
            let c2_hi = ((radius - &y0) / s).floor();
            let mut c2 = c2_lo;
            while c2 <= c2_hi {
                let py = &y0 + &c2 * s;
                if &px * &px + &py * &py <= r2 {
                    out.push([px.clone(), py]);
                }
                c2 += Rational::one();
            }
            c1 += Rational::one();
        }
        out
    }
}

impl Serialize for PlanarLattice {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<[String; 2]> = self
            .basis
            .iter()
            .map(|b| [format_rational(&b[0]), format_rational(&b[1])])
            .collect();
        strings.serialize(ser)
    }
}

/// Distinguished subgroups of `Γ` with exact membership predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupKind {
    /// `Γ ∩ [G,G]`: lattice elements in the commutator subgroup of `G`.
    CapCommutator,
    /// `Γ ∩ Z`: lattice elements in the center of `G`.
    CapCenter,
    /// `[Γ,Γ]`: the commutator subgroup of the lattice itself.
    Commutator,
    /// `[Γ,Γ] ∩ Z`.
    CommutatorCapCenter,
}

/// Parameters `(r; u, v; e, f, g, h)` of one lattice in the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    r: i64,
    u: i64,
    v: i64,
    #[serde(with = "crate::rational::serde_rational")]
    e: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    f: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    g: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    h: Rational,
}

impl LatticeSpec {
    /// Validates and builds a lattice specification: `r ≥ 1` and `u, v` odd.
    pub fn new(
        r: i64,
        u: i64,
        v: i64,
        e: Rational,
        f: Rational,
        g: Rational,
        h: Rational,
    ) -> Result<Self, LatticeError> {
        if r < 1 {
            return Err(LatticeError::InvalidSpec {
                reason: format!("r must be a positive integer, got {r}"),
            });
        }
        if u.rem_euclid(2) != 1 || v.rem_euclid(2) != 1 {
            return Err(LatticeError::InvalidSpec {
                reason: format!("u and v must be odd, got u={u}, v={v}"),
            });
        }
        Ok(Self {
            r,
            u,
            v,
            e,
            f,
            g,
            h,
        })
    }

    /// The base lattice: `r = 1`, `u = v = 1`, `e = f = g = h = 0`.
    #[must_use]
    pub fn base() -> Self {
        Self::new(
            1,
            1,
            1,
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
        .expect("base parameters are valid")
    }

    /// Parameter `r`.
    #[must_use]
    pub fn r(&self) -> i64 {
        self.r
    }

    /// Parameter `u`.
    #[must_use]
    pub fn u(&self) -> i64 {
        self.u
    }

    /// Parameter `v`.
    #[must_use]
    pub fn v(&self) -> i64 {
        self.v
    }

    /// Parameters `(e, f, g, h)`.
    #[must_use]
    pub fn efgh(&self) -> [&Rational; 4] {
        [&self.e, &self.f, &self.g, &self.h]
    }

    /// The five generators `γ₁,…,γ₅` of `Γ` in exponential coordinates.
    #[must_use]
    pub fn generators(&self) -> [GroupElement; 5] {
        let r = rat_int(self.r);
        let two_r = rat_int(2 * self.r);
        [
            GroupElement::from_i64([1, 0, 0, 0, 0]),
            GroupElement::from_i64([0, 1, 0, 0, 0]),
            GroupElement::new([
                Rational::zero(),
                Rational::zero(),
                Rational::one() / &r,
                rat_int(self.u) / &two_r,
                rat_int(self.v) / &two_r,
            ]),
            GroupElement::new([
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                self.e.clone(),
                self.f.clone(),
            ]),
            GroupElement::new([
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                self.g.clone(),
                self.h.clone(),
            ]),
        ]
    }

    /// Generators of the central sublattice `Γ'' = Γ ∩ Z` in the
    /// `(x₄, x₅)`-plane.
    #[must_use]
    pub fn planar_generators(&self) -> [[Rational; 2]; 5] {
        let inv_r = rat(1, self.r);
        [
            [inv_r.clone(), Rational::zero()],
            [Rational::zero(), inv_r],
            [rat_int((self.u - 1) / 2), rat_int((self.v - 1) / 2)],
            [self.e.clone(), self.f.clone()],
            [self.g.clone(), self.h.clone()],
        ]
    }

    /// The central lattice `Γ'' ⊂ ℝ²`.
    #[must_use]
    pub fn gamma_double_prime(&self) -> PlanarLattice {
        PlanarLattice::from_generators(&self.planar_generators())
            .expect("Γ'' always contains (1/r)ℤ² and hence has full rank")
    }

    /// Peels `x = γ₁^k γ₂^l γ₃^{k₃} z` with `z` central, returning
    /// `(k, l, k₃, [x₄(z), x₅(z)])`, or `None` when the exponents fail to be
    /// integers.
    fn peel(&self, x: &GroupElement) -> Option<(BigInt, BigInt, BigInt, [Rational; 2])> {
        if !is_integer(x.coord(0)) || !is_integer(x.coord(1)) {
            return None;
        }
        let k = x.coord(0).numer().clone();
        let l = x.coord(1).numer().clone();
        let g1_inv_k = GroupElement::new([
            -rat_big(k.clone()),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ]);
        let g2_inv_l = GroupElement::new([
            Rational::zero(),
            -rat_big(l.clone()),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ]);
        let h = g2_inv_l.multiply(&g1_inv_k.multiply(x));
        debug_assert!(h.coord(0).is_zero() && h.coord(1).is_zero());
        let k3_rat = h.coord(2) * rat_int(self.r);
        if !is_integer(&k3_rat) {
            return None;
        }
        let k3 = k3_rat.numer().clone();
        // γ₃^{-k₃} along the one-parameter subgroup through γ₃.
        let t = -rat_big(k3.clone()) / rat_int(self.r);
        let g3_inv = GroupElement::new([
            Rational::zero(),
            Rational::zero(),
            t.clone(),
            &t * rat(self.u, 2),
            &t * rat(self.v, 2),
        ]);
        let z = g3_inv.multiply(&h);
        debug_assert!(z.is_central() && z.coord(2).is_zero());
        Some((k, l, k3, [z.coord(3).clone(), z.coord(4).clone()]))
    }

    /// Exact membership test for `Γ`.
    #[must_use]
    pub fn contains(&self, x: &GroupElement) -> bool {
        match self.peel(x) {
            None => false,
            Some((_, _, _, w)) => self.gamma_double_prime().contains(&w),
        }
    }

    /// Exact membership test for the distinguished subgroups of `Γ`.
    #[must_use]
    pub fn subgroup_contains(&self, kind: SubgroupKind, x: &GroupElement) -> bool {
        let inv_r = rat(1, self.r);
        match kind {
            SubgroupKind::CapCommutator => {
                // x₁ = x₂ = 0, x₃ ∈ (1/r)ℤ, (x₄ − (u/2)x₃, x₅ − (v/2)x₃) ∈ Γ''.
                x.coord(0).is_zero()
                    && x.coord(1).is_zero()
                    && is_integer(&(x.coord(2) / &inv_r))
                    && self.gamma_double_prime().contains(&[
                        x.coord(3) - rat(self.u, 2) * x.coord(2),
                        x.coord(4) - rat(self.v, 2) * x.coord(2),
                    ])
            }
            SubgroupKind::CapCenter => {
                x.is_central()
                    && self
                        .gamma_double_prime()
                        .contains(&[x.coord(3).clone(), x.coord(4).clone()])
            }
            SubgroupKind::Commutator => {
                // x₁ = x₂ = 0, x₃ ∈ ℤ, x₄ − x₃/2 and x₅ − x₃/2 ∈ (1/r)ℤ.
                let half_x3 = x.coord(2) * rat(1, 2);
                x.coord(0).is_zero()
                    && x.coord(1).is_zero()
                    && is_integer(x.coord(2))
                    && is_integer(&((x.coord(3) - &half_x3) / &inv_r))
                    && is_integer(&((x.coord(4) - &half_x3) / &inv_r))
            }
            SubgroupKind::CommutatorCapCenter => {
                x.is_central()
                    && is_integer(&(x.coord(3) / &inv_r))
                    && is_integer(&(x.coord(4) / &inv_r))
            }
        }
    }

    /// Basis of the rank-3 lattice `{log γ : γ ∈ Γ ∩ [G,G]}` in
    /// `(x₃, x₄, x₅)`-coordinates (columns, lower triangular).
    fn cap_commutator_basis(&self) -> [[Rational; 3]; 3] {
        let inv_r = rat(1, self.r);
        let gens: [[Rational; 3]; 6] = [
            [
                inv_r.clone(),
                rat(self.u, 2 * self.r),
                rat(self.v, 2 * self.r),
            ],
            [Rational::zero(), inv_r.clone(), Rational::zero()],
            [Rational::zero(), Rational::zero(), inv_r],
            [
                Rational::zero(),
                rat_int((self.u - 1) / 2),
                rat_int((self.v - 1) / 2),
            ],
            [Rational::zero(), self.e.clone(), self.f.clone()],
            [Rational::zero(), self.g.clone(), self.h.clone()],
        ];
        lattice3_basis(&gens)
    }

    /// Basis of the rank-3 lattice `{log γ : γ ∈ [Γ,Γ]}` in
    /// `(x₃, x₄, x₅)`-coordinates.
    fn commutator_basis(&self) -> [[Rational; 3]; 3] {
        let inv_r = rat(1, self.r);
        lattice3_basis(&[
            [Rational::one(), rat(1, 2), rat(1, 2)],
            [Rational::zero(), inv_r.clone(), Rational::zero()],
            [Rational::zero(), Rational::zero(), inv_r],
        ])
    }

    /// Abelianization `Γ/[Γ,Γ] ≅ ℤ² ⊕ T` with `T = (Γ∩[G,G])/[Γ,Γ]` finite.
    #[must_use]
    pub fn abelianization(&self) -> Abelianization {
        let b1 = self.cap_commutator_basis();
        let b2 = self.commutator_basis();
        // Coordinates of each b2 column in the b1 basis (lower triangular
        // solve); [Γ,Γ] ⊆ Γ∩[G,G] guarantees integer entries.
        let mut m = IMat::zeros(3, 3);
        for (j, col) in b2.iter().enumerate() {
            let c0 = &col[0] / &b1[0][0];
            let c1 = (&col[1] - &c0 * &b1[0][1]) / &b1[1][1];
            let c2 = (&col[2] - &c0 * &b1[0][2] - &c1 * &b1[1][2]) / &b1[2][2];
            for (i, c) in [c0, c1, c2].into_iter().enumerate() {
                assert!(is_integer(&c), "[Γ,Γ] must be contained in Γ∩[G,G]");
                m.set(i, j, c.numer().clone());
            }
        }
        let snf = smith(&m);
        let torsion: Vec<BigInt> = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        let order = torsion.iter().product();
        Abelianization {
            free_rank: 2,
            torsion_invariants: torsion,
            torsion_order: order,
        }
    }
}

/// Structure of the abelianization `Γ/[Γ,Γ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    /// Rank of the free part (always 2 in this family).
    pub free_rank: usize,
    /// Nontrivial invariant factors `d₁ | d₂ | …` of the torsion subgroup.
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion_invariants: Vec<BigInt>,
    /// Order of the torsion subgroup.
    #[serde(serialize_with = "serialize_bigint")]
    pub torsion_order: BigInt,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<String> = v.iter().map(BigInt::to_string).collect();
    strings.serialize(ser)
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    v.to_string().serialize(ser)
}

/// Canonical (column-Hermite) basis of a rank-3 lattice in ℚ³ given by
/// generators; returns three lower-triangular basis columns.
///
/// # Panics
///
/// Panics if the generators do not span rank 3.
fn lattice3_basis(gens: &[[Rational; 3]]) -> [[Rational; 3]; 3] {
    let flat: Vec<&Rational> = gens.iter().flatten().collect();
    let d = denominator_lcm(&flat);
    let mut c = IMat::zeros(3, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for (i, coord) in g.iter().enumerate() {
            let scaled = coord * rat_big(d.clone());
            debug_assert!(is_integer(&scaled));
            c.set(i, j, scaled.numer().clone());
        }
    }
    let hnf = column_hermite(&c);
    assert_eq!(hnf.rank(), 3, "generators must span a rank-3 lattice");
    let dr = rat_big(d);
    std::array::from_fn(|j| std::array::from_fn(|i| rat_big(hnf.h.get(i, j).clone()) / &dr))
}

/// A unitary character of `Γ`, recorded by the phases (in units of full
/// turns) of the five generators:
///
/// ```text
/// χ(γ₁) = e^{2πi a},  χ(γ₂) = e^{2πi b},  χ(γ₃) = e^{2πi c/r},
/// χ(γ₄) = e^{2πi φ₄},  χ(γ₅) = e^{2πi φ₅},    φ₄, φ₅ ∈ [0, 1).
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    #[serde(with = "crate::rational::serde_rational")]
    a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    b: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    c: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    phi4: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    phi5: Rational,
}

impl Character {
    /// Builds a character from its five phase parameters; `φ₄, φ₅` must lie
    /// in `[0, 1)`.
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        phi4: Rational,
        phi5: Rational,
    ) -> Result<Self, LatticeError> {
        for (name, phi) in [("phi4", &phi4), ("phi5", &phi5)] {
            if phi.is_negative() || *phi >= Rational::one() {
                return Err(LatticeError::InvalidCharacter {
                    reason: format!("{name} must lie in [0, 1), got {phi}"),
                });
            }
        }
        Ok(Self {
            a,
            b,
            c,
            phi4,
            phi5,
        })
    }

    /// The trivial character.
    #[must_use]
    pub fn trivial() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::zero(),
            c: Rational::zero(),
            phi4: Rational::zero(),
            phi5: Rational::zero(),
        }
    }

    /// Parses `"a,b,c,phi4,phi5"` with rational components.
    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(LatticeError::MalformedTuple {
                input: s.to_string(),
            });
        }
        let mut vals = Vec::with_capacity(5);
        for p in &parts {
            vals.push(
                parse_rational(p).map_err(|e| LatticeError::MalformedTuple {
                    input: e.input,
                })?,
            );
        }
        let phi5 = vals.pop().expect("five parts");
        let phi4 = vals.pop().expect("five parts");
        let c = vals.pop().expect("five parts");
        let b = vals.pop().expect("five parts");
        let a = vals.pop().expect("five parts");
        Self::new(a, b, c, phi4, phi5)
    }

    /// Phase parameter of `γ₁`.
    #[must_use]
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Phase parameter of `γ₂`.
    #[must_use]
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Parameter `c` (the phase of `γ₃` is `c/r`).
    #[must_use]
    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// Phase of `γ₄`.
    #[must_use]
    pub fn phi4(&self) -> &Rational {
        &self.phi4
    }

    /// Phase of `γ₅`.
    #[must_use]
    pub fn phi5(&self) -> &Rational {
        &self.phi5
    }

    /// Checks that the five phases define a homomorphism on `Γ`: every
    /// relation among `γ₃, γ₄, γ₅` modulo `[Γ,Γ]` must carry integer total
    /// phase.
    pub fn validate(&self, spec: &LatticeSpec) -> Result<(), LatticeError> {
        // m = (m₁,m₂,m₃) indexes γ₃^{m₁}γ₄^{m₂}γ₅^{m₃}; such a product lies
        // in [Γ,Γ] iff B·m ∈ ℤ³ for the matrix below.
        let b_rows: [[Rational; 3]; 3] = [
            [rat(1, spec.r()), Rational::zero(), Rational::zero()],
            [
                rat_int((spec.u() - 1) / 2),
                rat_int(spec.r()) * &spec.e,
                rat_int(spec.r()) * &spec.g,
            ],
            [
                rat_int((spec.v() - 1) / 2),
                rat_int(spec.r()) * &spec.f,
                rat_int(spec.r()) * &spec.h,
            ],
        ];
        let flat: Vec<&Rational> = b_rows.iter().flatten().collect();
        let d = denominator_lcm(&flat);
        let mut c = IMat::zeros(3, 3);
        for (i, row) in b_rows.iter().enumerate() {
            for (j, val) in row.iter().enumerate() {
                let scaled = val * rat_big(d.clone());
                debug_assert!(is_integer(&scaled));
                c.set(i, j, scaled.numer().clone());
            }
        }
        let phases = [
            &self.c / rat_int(spec.r()),
            self.phi4.clone(),
            self.phi5.clone(),
        ];
        for m in congruence_kernel_basis(&c, &d) {
            let total: Rational = m
                .iter()
                .zip(&phases)
                .map(|(mi, p)| rat_big(mi.clone()) * p)
                .sum();
            if !is_integer(&total) {
                return Err(LatticeError::InvalidCharacter {
                    reason: format!(
                        "relation γ₃^{}γ₄^{}γ₅^{} lies in [Γ,Γ] but carries phase {}",
                        m[0], m[1], m[2], total
                    ),
                });
            }
        }
        Ok(())
    }

    /// Evaluates `χ` on a lattice element, returning the phase in `[0, 1)`
    /// (units of full turns).
    pub fn eval(&self, spec: &LatticeSpec, x: &GroupElement) -> Result<Rational, LatticeError> {
        let Some((k, l, k3, w)) = spec.peel(x) else {
            return Err(LatticeError::NotInLattice {
                element: x.to_string(),
            });
        };
        // Express the central part over the five planar generators of Γ''.
        let gens = spec.planar_generators();
        let flat: Vec<&Rational> = gens.iter().flatten().chain(w.iter()).collect();
        let d = denominator_lcm(&flat);
        let mut c = IMat::zeros(2, 5);
        for (j, g) in gens.iter().enumerate() {
            for (i, coord) in g.iter().enumerate() {
                c.set(i, j, (coord * rat_big(d.clone())).numer().clone());
            }
        }
        let target: Vec<BigInt> = w
            .iter()
            .map(|coord| (coord * rat_big(d.clone())).numer().clone())
            .collect();
        let hnf = column_hermite(&c);
        let Some(n) = hnf.solve(&target) else {
            return Err(LatticeError::NotInLattice {
                element: x.to_string(),
            });
        };
        // Generators 1 and 2 of Γ'' are commutators: phase zero. Generator 3
        // is γ₃^r·[γ₁,γ₂]⁻¹ with phase c; generators 4 and 5 are γ₄, γ₅.
        let phase = rat_big(k) * &self.a
            + rat_big(l) * &self.b
            + rat_big(k3) * &self.c / rat_int(spec.r())
            + rat_big(n[2].clone()) * &self.c
            + rat_big(n[3].clone()) * &self.phi4
            + rat_big(n[4].clone()) * &self.phi5;
        Ok(fract_mod_one(&phase))
    }

    /// True iff `χ` restricts trivially to the given subgroup. (`χ` is
    /// always trivial on `[Γ,Γ]` and `[Γ,Γ] ∩ Z`.) Assumes a validated
    /// character.
    #[must_use]
    pub fn is_trivial_on(&self, spec: &LatticeSpec, kind: SubgroupKind) -> bool {
        let phi_zero = self.phi4.is_zero() && self.phi5.is_zero();
        match kind {
            SubgroupKind::Commutator | SubgroupKind::CommutatorCapCenter => true,
            SubgroupKind::CapCenter => is_integer(&self.c) && phi_zero,
            SubgroupKind::CapCommutator => {
                is_integer(&(&self.c / rat_int(spec.r()))) && phi_zero
            }
        }
    }

    /// True iff `χ` is the trivial character of `Γ`.
    #[must_use]
    pub fn is_trivial(&self, spec: &LatticeSpec) -> bool {
        is_integer(&self.a)
            && is_integer(&self.b)
            && is_integer(&(&self.c / rat_int(spec.r())))
            && self.phi4.is_zero()
            && self.phi5.is_zero()
    }

    /// The canonical base point `(λ₀, μ₀) ∈ (rℤ)²` for the generic stratum:
    /// the first point, in max-norm-then-lexicographic order, satisfying
    ///
    /// ```text
    /// λ₀(u−1)/2 + μ₀(v−1)/2 ∈ c + ℤ,
    /// λ₀e + μ₀f ∈ φ₄ + ℤ,   λ₀g + μ₀h ∈ φ₅ + ℤ.
    /// ```
    ///
    /// The search bound is provably sufficient for validated characters.
    pub fn base_point(&self, spec: &LatticeSpec) -> Result<(Rational, Rational), LatticeError> {
        self.validate(spec)?;
        let r = rat_int(spec.r());
        let scaled: Vec<Rational> = spec
            .efgh()
            .iter()
            .map(|q| rat_int(spec.r()) * *q)
            .collect();
        let refs: Vec<&Rational> = scaled.iter().collect();
        let l = denominator_lcm(&refs);
        // A solution exists in every L×L box of (k₁,k₂); search to 4L.
        let cap: i64 = (&l * 4u8).try_into().map_err(|_| LatticeError::NoBasePoint)?;
        let half_u = rat_int((spec.u() - 1) / 2);
        let half_v = rat_int((spec.v() - 1) / 2);
        for norm in 0..=cap {
            for k1 in -norm..=norm {
                for k2 in -norm..=norm {
                    if k1.abs().max(k2.abs()) != norm {
                        continue;
                    }
                    let lam = rat_int(k1) * &r;
                    let mu = rat_int(k2) * &r;
                    let c1 = &lam * &half_u + &mu * &half_v - &self.c;
                    let c2 = &lam * &spec.e + &mu * &spec.f - &self.phi4;
                    let c3 = &lam * &spec.g + &mu * &spec.h - &self.phi5;
                    if is_integer(&c1) && is_integer(&c2) && is_integer(&c3) {
                        return Ok((lam, mu));
                    }
                }
            }
        }
        Err(LatticeError::NoBasePoint)
    }
}
