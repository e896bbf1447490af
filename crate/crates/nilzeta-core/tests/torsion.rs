//! Integration tests of the zeta factorization and torsion assembly:
//! residues by contour, factorization against independent direct sums,
//! and the behavior of the truncated generic stratum under cutoff growth.

use num_complex::Complex64;
use num_traits::{One, Zero};

use nilzeta_core::lattice::{Character, LatticeSpec};
use nilzeta_core::rational::{rat, rat_int, Rational};
use nilzeta_core::repdecomp::RepLabel;
use nilzeta_core::spectral::{factor_spectra, super_zeta, SpectraCache, SpectralConfig, KAPPA};
use nilzeta_core::torsion::{
    decomposition_zeta, scalar_residue, torsion_report, zeta_i, zeta_ii, zeta_iii_structural,
    Provenance,
};
use nilzeta_core::zeta_special::{contour_residue, ZetaError};

fn cplx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn gamma0() -> LatticeSpec {
    LatticeSpec::base()
}

fn config(truncation: usize) -> SpectralConfig {
    SpectralConfig {
        truncation,
        ..SpectralConfig::default()
    }
}

/// The residue of `ζ_I` at `s = 1/κ`, recovered numerically by a contour
/// integral around the pole, must match the exact closed form
/// `(π/κ)·ζ_{ρ_{1,0}}(1/κ) = (1−√2)/(πκ)`.
#[test]
fn zeta_i_residue_by_contour_matches_closed_form() {
    let spec = gamma0();
    let chi = Character::trivial();
    let residue = contour_residue(
        |s| {
            zeta_i(&spec, &chi, s)
                .map(|z| z.value)
                .map_err(|e| ZetaError::InvalidArgument(e.to_string()))
        },
        cplx(1.0 / KAPPA as f64),
        1e-3,
    )
    .unwrap();
    let target = scalar_residue();
    assert!(
        (residue - cplx(target)).norm() < 1e-8,
        "contour residue {residue} vs exact {target}"
    );
}

/// `ρ_ħ` and `ρ_{−ħ}` are intertwined by a graded isometric automorphism,
/// so their factor spectra agree.  This backs the `|ħ|` keying of the
/// equivalence classes used by the decomposition sums.
#[test]
fn schrodinger_reflection_symmetry() {
    let cfg = config(64);
    let plus = factor_spectra(&RepLabel::Schrodinger { hbar: rat_int(1) }, &cfg).unwrap();
    let minus = factor_spectra(&RepLabel::Schrodinger { hbar: rat_int(-1) }, &cfg).unwrap();
    for q in 0..5 {
        let a = plus.trusted_factor(q);
        let b = minus.trusted_factor(q);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!(
                (x - y).abs() <= 1e-8 * x.abs().max(1.0),
                "factor {q}: {x} vs {y}"
            );
        }
    }
}

/// Desk-scale check of the `ζ_II` factorization on `Γ₀` with the trivial
/// character at `s = 2`: the closed assembly
/// `r^{1−2κ} Z(2κ−1; 0) ζ_{ρ₁}(2)` must match the independently summed
/// `Σ_{0<|ħ|≤H} |ħ| ζ_{ρħ}(2)`, each Schrödinger zeta from its own
/// spectral run, up to the `|ħ| > H` tail and the error bars.
#[test]
fn zeta_ii_factorization_matches_direct_schrodinger_sum() {
    let spec = gamma0();
    let chi = Character::trivial();
    let cfg = config(128);
    let mut cache = SpectraCache::new();
    let s = cplx(2.0);

    let factored = zeta_ii(&spec, &chi, s, &cfg, &mut cache).unwrap();

    let mut direct = Complex64::zero();
    let mut budget = factored.abs_error;
    let cap = 4i64;
    for h in 1..=cap {
        let est = super_zeta(
            &RepLabel::Schrodinger { hbar: rat_int(h) },
            s,
            &cfg,
            &mut cache,
            None,
        )
        .unwrap();
        // Multiplicity |ħ| for each of ħ = ±h; the reflection symmetry
        // collapses both signs onto one spectral run.
        direct += est.value * (2 * h) as f64;
        budget += est.abs_error * (2 * h) as f64;
    }
    // |ħ|^{1−2κ} tail beyond the cap, relative to ζ_{ρ₁}(2) ≈ the ħ = 1
    // term: 2 Σ_{h>cap} h^{−11} < 2 · cap^{−11} · cap/10.
    let rho1 = super_zeta(
        &RepLabel::Schrodinger { hbar: rat_int(1) },
        s,
        &cfg,
        &mut cache,
        None,
    )
    .unwrap();
    budget += 0.3 * (cap as f64).powi(-10) * rho1.value.norm();

    let deviation = (factored.value - direct).norm();
    assert!(
        deviation <= budget.max(1e-10 * factored.value.norm()),
        "factorized {} vs direct {} (deviation {deviation:e}, budget {budget:e})",
        factored.value,
        direct
    );
}

/// Decomposition identity at desk scale: on `Γ₀` with the trivial
/// character, at `s = 10/2κ + 1`, the factorized assembly
/// `ζ_I + ζ_II + ζ_III(direct)` agrees with the independently truncated
/// `Σ_ρ m(ρ) ζ_ρ(s)` from `decompose` + `super_zeta`, within the
/// combined error bars plus the scalar/Schrödinger stratum tails.
#[test]
fn decomposition_identity_at_desk_scale() {
    let spec = gamma0();
    let chi = Character::trivial();
    let cfg = config(64);
    let mut cache = SpectraCache::new();
    let s = cplx(11.0 / 6.0);
    let cutoff = rat_int(2);

    let zi = zeta_i(&spec, &chi, s).unwrap();
    let zii = zeta_ii(&spec, &chi, s, &cfg, &mut cache).unwrap();
    let ziii = zeta_iii_structural(&spec, &chi, s, &cutoff, &cfg, &mut cache, None).unwrap();
    let assembled = zi.value + zii.value + ziii.direct.value;

    let direct = decomposition_zeta(&spec, &chi, s, &cutoff, &cfg, &mut cache).unwrap();

    // The assembled route sums the scalar and Schrödinger strata to
    // infinity; the comparator truncates them at the cutoff.  Those tails
    // are far below one percent here, so a combined-error budget with a
    // small relative floor is decisive.
    let budget = (zi.abs_error + zii.abs_error + ziii.direct.abs_error + direct.abs_error)
        .max(0.05 * direct.value.norm());
    let deviation = (assembled - direct.value).norm();
    assert!(
        deviation <= budget,
        "assembled {assembled} vs direct {} (deviation {deviation:e}, budget {budget:e})",
        direct.value
    );
}

/// The truncated generic direct sum stabilizes as the cutoff grows:
/// successive increments shrink and stay inside the previous error bar.
#[test]
fn zeta_iii_cutoff_study() {
    let spec = gamma0();
    let chi = Character::trivial();
    let cfg = config(64);
    let mut cache = SpectraCache::new();
    let s = cplx(11.0 / 6.0);

    let sums: Vec<_> = [rat(3, 2), rat_int(2), rat_int(3)]
        .iter()
        .map(|cutoff| {
            zeta_iii_structural(&spec, &chi, s, cutoff, &cfg, &mut cache, None)
                .unwrap()
                .direct
        })
        .collect();
    let step01 = (sums[1].value - sums[0].value).norm();
    let step12 = (sums[2].value - sums[1].value).norm();
    assert!(
        step12 < step01,
        "increments must shrink: {step01:e} then {step12:e}"
    );
    // The width-one increment is controlled by the previous error bar
    // whenever that bar is finite.
    if sums[1].abs_error.is_finite() {
        assert!(
            step12 <= sums[1].abs_error.max(1e-12),
            "increment {step12:e} vs error bar {:e}",
            sums[1].abs_error
        );
    }
    // More of the stratum is covered at larger cutoffs.
    assert!(sums[2].value.norm() > sums[0].value.norm());
}

/// Torsion reports across lattices and characters: every nontrivial
/// character yields `τ = 1` and an acyclic complex, with the factor
/// provenance split between exact and literature-trusted entries.
#[test]
fn torsion_reports_give_tau_one_for_nontrivial_characters() {
    let cfg = config(64);
    let mut cache = SpectraCache::new();

    let r3 = LatticeSpec::new(3, 3, -1, rat(1, 2), Rational::zero(), rat(1, 6), rat(1, 4))
        .unwrap();
    let cases: Vec<(LatticeSpec, Character)> = vec![
        (
            gamma0(),
            Character::new(
                rat(1, 3),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            )
            .unwrap(),
        ),
        (
            gamma0(),
            Character::new(
                rat(1, 2),
                rat(1, 2),
                Rational::one(),
                Rational::zero(),
                Rational::zero(),
            )
            .unwrap(),
        ),
        (
            gamma0(),
            Character::new(
                Rational::zero(),
                rat(2, 5),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            )
            .unwrap(),
        ),
        (
            r3.clone(),
            Character::new(
                Rational::zero(),
                Rational::zero(),
                Rational::one(),
                Rational::zero(),
                Rational::zero(),
            )
            .unwrap(),
        ),
        (
            r3.clone(),
            Character::new(
                rat(1, 4),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            )
            .unwrap(),
        ),
        (
            r3,
            Character::new(
                Rational::zero(),
                Rational::zero(),
                rat_int(3),
                rat(1, 2),
                Rational::zero(),
            )
            .unwrap(),
        ),
    ];

    for (spec, chi) in &cases {
        chi.validate(spec).expect("test characters must be valid");
        assert!(!chi.is_trivial(spec));
        let report = torsion_report(spec, chi, &cfg, &mut cache).unwrap();
        assert_eq!(report.tau, 1.0, "τ must be exactly 1 for nontrivial χ");
        assert_eq!(report.log_tau, 0.0);
        assert!(report.acyclic);
        assert_eq!(report.zeta_i_prime0.value, 0.0);
        assert!(matches!(report.zeta_i_prime0.provenance, Provenance::Exact));
        assert!(matches!(
            report.zeta_iii_prime0.provenance,
            Provenance::Literature
        ));
        assert!(!report.provenance.is_empty());
        assert!(report
            .poles
            .iter()
            .any(|p| p.factor == "zetaIII" && p.residue.is_none()));
    }
}
