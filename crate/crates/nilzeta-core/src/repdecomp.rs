//! Irreducible unitary representations of `G` and their exact multiplicities
//! in `L²(Γ\G, χ)`.
//!
//! The unitary dual of `G` has three strata:
//!
//! * **scalar** characters `ρ_{α,β}` (trivial beyond the abelianization),
//! * **Schrödinger** representations `ρ_ħ`, `ħ ≠ 0`, factoring through the
//!   Heisenberg quotient, and
//! * **generic** representations `ρ_{λ,μ,ν}` with `(λ,μ) ≠ (0,0)` detecting
//!   the full depth-3 structure.
//!
//! For a lattice `Γ` and a unitary character `χ` of `Γ`, each stratum
//! contributes with an explicitly computable multiplicity; everything in this
//! module is exact rational/integer arithmetic. The truncated decomposition
//! list (all representations within a parameter cutoff) is the combinatorial
//! input to the spectral and zeta layers.

use crate::lattice::{Character, LatticeError, LatticeSpec, SubgroupKind};
use crate::rational::{format_rational, is_integer, rat_int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Label of an irreducible unitary representation of `G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "params", rename_all = "lowercase")]
pub enum RepLabel {
    /// Scalar character `ρ_{α,β}`: `X₁ ↦ 2πiα`, `X₂ ↦ 2πiβ`, rest `0`.
    Scalar {
        /// Frequency along `X₁`.
        #[serde(with = "crate::rational::serde_rational")]
        alpha: Rational,
        /// Frequency along `X₂`.
        #[serde(with = "crate::rational::serde_rational")]
        beta: Rational,
    },
    /// Schrödinger representation `ρ_ħ` on `L²(ℝ)`, `ħ ≠ 0`:
    /// `X₁ ↦ ∂_θ`, `X₂ ↦ 2πiħθ`, `X₃ ↦ 2πiħ`, `X₄, X₅ ↦ 0`.
    Schrodinger {
        /// Central parameter `ħ`.
        #[serde(with = "crate::rational::serde_rational")]
        hbar: Rational,
    },
    /// Generic representation `ρ_{λ,μ,ν}` on `L²(ℝ)` with `(λ,μ) ≠ (0,0)`.
    Generic {
        /// Value on the central direction `X₄` (divided by `2πi`).
        #[serde(with = "crate::rational::serde_rational")]
        lambda: Rational,
        /// Value on the central direction `X₅` (divided by `2πi`).
        #[serde(with = "crate::rational::serde_rational")]
        mu: Rational,
        /// Casimir parameter.
        #[serde(with = "crate::rational::serde_rational")]
        nu: Rational,
    },
}

impl RepLabel {
    /// True for the trivial (zero scalar) representation.
    #[must_use]
    pub fn is_trivial(&self) -> bool {
        matches!(self, RepLabel::Scalar { alpha, beta } if alpha.is_zero() && beta.is_zero())
    }

    /// Short type tag (`"scalar"`, `"schrodinger"`, `"generic"`).
    #[must_use]
    pub fn type_tag(&self) -> &'static str {
        match self {
            RepLabel::Scalar { .. } => "scalar",
            RepLabel::Schrodinger { .. } => "schrodinger",
            RepLabel::Generic { .. } => "generic",
        }
    }
}

/// One term of a truncated decomposition of `L²(Γ\G, χ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    /// Which representation occurs.
    #[serde(flatten)]
    pub label: RepLabel,
    /// How many times it occurs.
    pub multiplicity: u64,
}

/// CSV header matching [`DecompositionTerm::csv_row`].
pub const DECOMPOSITION_CSV_HEADER: &str = "type,param1,param2,param3,multiplicity";

impl DecompositionTerm {
    /// CSV row `type,param1,param2,param3,multiplicity` with empty cells for
    /// absent parameters.
    #[must_use]
    pub fn csv_row(&self) -> String {
        let (p1, p2, p3) = match &self.label {
            RepLabel::Scalar { alpha, beta } => {
                (format_rational(alpha), format_rational(beta), String::new())
            }
            RepLabel::Schrodinger { hbar } => {
                (format_rational(hbar), String::new(), String::new())
            }
            RepLabel::Generic { lambda, mu, nu } => (
                format_rational(lambda),
                format_rational(mu),
                format_rational(nu),
            ),
        };
        format!(
            "{},{},{},{},{}",
            self.label.type_tag(),
            p1,
            p2,
            p3,
            self.multiplicity
        )
    }
}

/// Multiplicity of the scalar character `ρ_{α,β}`: one if `χ` is trivial on
/// `Γ ∩ [G,G]` and `(α, β) ∈ (a, b) + ℤ²`, zero otherwise.
#[must_use]
pub fn scalar_multiplicity(
    spec: &LatticeSpec,
    chi: &Character,
    alpha: &Rational,
    beta: &Rational,
) -> u64 {
    let ok = chi.is_trivial_on(spec, SubgroupKind::CapCommutator)
        && is_integer(&(alpha - chi.a()))
        && is_integer(&(beta - chi.b()));
    u64::from(ok)
}

/// Multiplicity of the Schrödinger representation `ρ_ħ`: `|ħ|` if `χ` is
/// trivial on `Γ ∩ Z` and `ħ ∈ c + rℤ` is a nonzero integer, zero otherwise.
#[must_use]
pub fn schrodinger_multiplicity(spec: &LatticeSpec, chi: &Character, hbar: &Rational) -> u64 {
    if hbar.is_zero()
        || !chi.is_trivial_on(spec, SubgroupKind::CapCenter)
        || !is_integer(&((hbar - chi.c()) / rat_int(spec.r())))
    {
        return 0;
    }
    let abs = hbar.abs();
    debug_assert!(is_integer(&abs));
    u64::try_from(abs.numer().clone()).expect("|ħ| fits in u64")
}

/// The congruence data of a generic stratum point: returns
/// `(w, ν₀)` when `(λ, μ)` is admissible for `χ` (both `∈ rℤ` and the three
/// phase congruences hold), `None` otherwise.
///
/// `w = c − λ(u−1)/2 − μ(v−1)/2` is an integer, and
///
/// ```text
/// ν₀ = 2(aμ − bλ) + λ²μ²/(12d²) + (2w − (λ+μ) + λμ/d)²/4,   d = gcd(λ, μ).
/// ```
#[must_use]
pub fn generic_offset(
    spec: &LatticeSpec,
    chi: &Character,
    lambda: &Rational,
    mu: &Rational,
) -> Option<(BigInt, Rational)> {
    if lambda.is_zero() && mu.is_zero() {
        return None;
    }
    let r = rat_int(spec.r());
    if !is_integer(&(lambda / &r)) || !is_integer(&(mu / &r)) {
        return None;
    }
    let half_u = rat_int((spec.u() - 1) / 2);
    let half_v = rat_int((spec.v() - 1) / 2);
    let [e, f, g, h] = spec.efgh();
    let c1 = lambda * &half_u + mu * &half_v - chi.c();
    let c2 = lambda * e + mu * f - chi.phi4();
    let c3 = lambda * g + mu * h - chi.phi5();
    if !is_integer(&c1) || !is_integer(&c2) || !is_integer(&c3) {
        return None;
    }
    let w_rat = chi.c() - lambda * &half_u - mu * &half_v;
    debug_assert!(is_integer(&w_rat));
    let w = w_rat.numer().clone();
    let d_int = lambda.numer().gcd(mu.numer());
    let d = Rational::from_integer(d_int);
    let nu0 = rat_int(2) * (chi.a() * mu - chi.b() * lambda)
        + lambda * lambda * mu * mu / (rat_int(12) * &d * &d)
        + {
            let t = rat_int(2) * &w_rat - (lambda + mu) + lambda * mu / &d;
            &t * &t / rat_int(4)
        };
    Some((w, nu0))
}

/// Number of residues `k ∈ {0,…,l−1}` with `r·k(k+l) + 2wk ≡ n (mod 2l)`.
///
/// This is the multiplicity of `ρ_{λ,μ,ν}` expressed in normalized
/// variables: `l = gcd(λ,μ)/r` and `n = (ν − ν₀)/r`.
///
/// # Panics
///
/// Panics if `l < 1`.
#[must_use]
pub fn residue_multiplicity(l: &BigInt, r: i64, w: &BigInt, n: &BigInt) -> u64 {
    assert!(l.is_positive(), "normalized gcd must be positive");
    // Fast path: everything fits comfortably in i128 (l ≤ 2^40 keeps the
    // congruence expression far from overflow).
    use num_traits::ToPrimitive;
    if let (Some(li), Some(wi), Some(ni)) = (l.to_i128(), w.to_i128(), n.to_i128()) {
        if li < (1 << 40) && wi.abs() < (1 << 40) && ni.abs() < (1 << 40) {
            let ri = i128::from(r);
            let two_l = 2 * li;
            return (0..li)
                .filter(|&k| (ri * k * (k + li) + 2 * wi * k - ni).rem_euclid(two_l) == 0)
                .count() as u64;
        }
    }
    let two_l = l * 2;
    let mut count = 0u64;
    let mut k = BigInt::zero();
    while &k < l {
        let expr: BigInt = BigInt::from(r) * &k * (&k + l) + w * &k * 2;
        if (expr - n).mod_floor(&two_l).is_zero() {
            count += 1;
        }
        k += 1;
    }
    count
}

/// Multiplicity of the generic representation `ρ_{λ,μ,ν}`.
#[must_use]
pub fn generic_multiplicity(
    spec: &LatticeSpec,
    chi: &Character,
    lambda: &Rational,
    mu: &Rational,
    nu: &Rational,
) -> u64 {
    let Some((w, nu0)) = generic_offset(spec, chi, lambda, mu) else {
        return 0;
    };
    let n_rat = (nu - &nu0) / rat_int(spec.r());
    if !is_integer(&n_rat) {
        return 0;
    }
    let d = lambda.numer().gcd(mu.numer());
    let l = &d / BigInt::from(spec.r());
    debug_assert!((&d % BigInt::from(spec.r())).is_zero());
    residue_multiplicity(&l, spec.r(), &w, n_rat.numer())
}

/// Multiplicity of an arbitrary representation label.
#[must_use]
pub fn multiplicity(spec: &LatticeSpec, chi: &Character, label: &RepLabel) -> u64 {
    match label {
        RepLabel::Scalar { alpha, beta } => scalar_multiplicity(spec, chi, alpha, beta),
        RepLabel::Schrodinger { hbar } => schrodinger_multiplicity(spec, chi, hbar),
        RepLabel::Generic { lambda, mu, nu } => {
            generic_multiplicity(spec, chi, lambda, mu, nu)
        }
    }
}

fn int_range(lo: &Rational, hi: &Rational) -> impl Iterator<Item = BigInt> {
    let mut k = lo.ceil().numer().clone();
    let end = hi.floor().numer().clone();
    std::iter::from_fn(move || {
        if k > end {
            None
        } else {
            let out = k.clone();
            k += 1;
            Some(out)
        }
    })
}

/// All representations occurring in `L²(Γ\G, χ)` within the cutoff, with
/// their multiplicities, in deterministic order (scalar, then Schrödinger,
/// then generic; parameters ascending).
///
/// Cutoff semantics: `α² + β² ≤ R²`, `|ħ| ≤ R`, `λ² + μ² ≤ R²`, `|ν| ≤ R²`.
/// The trivial representation is listed when it occurs (its zeta contribution
/// vanishes, but the multiplicity is part of the decomposition).
///
/// Fails if `χ` is not a well-defined character of `Γ`.
pub fn decompose(
    spec: &LatticeSpec,
    chi: &Character,
    cutoff: &Rational,
) -> Result<Vec<DecompositionTerm>, LatticeError> {
    chi.validate(spec)?;
    let mut terms = Vec::new();
    let r2 = cutoff * cutoff;

    // Scalar stratum: (α, β) ∈ (a, b) + ℤ² inside the disk.
    if chi.is_trivial_on(spec, SubgroupKind::CapCommutator) {
        for m in int_range(&(-cutoff - chi.a()), &(cutoff - chi.a())) {
            let alpha = chi.a() + Rational::from_integer(m);
            for n in int_range(&(-cutoff - chi.b()), &(cutoff - chi.b())) {
                let beta = chi.b() + Rational::from_integer(n);
                if &alpha * &alpha + &beta * &beta <= r2 {
                    terms.push(DecompositionTerm {
                        label: RepLabel::Scalar {
                            alpha: alpha.clone(),
                            beta,
                        },
                        multiplicity: 1,
                    });
                }
            }
        }
    }

    // Schrödinger stratum: ħ ∈ c + rℤ, ħ ≠ 0, |ħ| ≤ R.
    if chi.is_trivial_on(spec, SubgroupKind::CapCenter) {
        let r = rat_int(spec.r());
        for n in int_range(&((-cutoff - chi.c()) / &r), &((cutoff - chi.c()) / &r)) {
            let hbar = chi.c() + Rational::from_integer(n) * &r;
            if hbar.is_zero() {
                continue;
            }
            let mult = schrodinger_multiplicity(spec, chi, &hbar);
            debug_assert!(mult > 0);
            terms.push(DecompositionTerm {
                label: RepLabel::Schrodinger { hbar },
                multiplicity: mult,
            });
        }
    }

    // Generic stratum: (λ, μ) in the admissible coset inside the disk,
    // ν ∈ ν₀ + rℤ with |ν| ≤ R².
    let (l0, m0) = chi.base_point(spec)?;
    let dual = spec.gamma_double_prime().dual();
    let r = rat_int(spec.r());
    for p in dual.points_in_disk(&[l0, m0], cutoff) {
        let [lambda, mu] = p;
        if lambda.is_zero() && mu.is_zero() {
            continue;
        }
        let Some((w, nu0)) = generic_offset(spec, chi, &lambda, &mu) else {
            debug_assert!(false, "coset points must be admissible");
            continue;
        };
        let d = lambda.numer().gcd(mu.numer());
        let l = &d / BigInt::from(spec.r());
        for n in int_range(&((-&r2 - &nu0) / &r), &((&r2 - &nu0) / &r)) {
            let mult = residue_multiplicity(&l, spec.r(), &w, &n);
            if mult > 0 {
                terms.push(DecompositionTerm {
                    label: RepLabel::Generic {
                        lambda: lambda.clone(),
                        mu: mu.clone(),
                        nu: &nu0 + Rational::from_integer(n) * &r,
                    },
                    multiplicity: mult,
                });
            }
        }
    }

    terms.sort_by(|x, y| x.label.cmp(&y.label));
    Ok(terms)
}
