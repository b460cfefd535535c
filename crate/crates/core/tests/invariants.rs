//! Property tests for the algebraic invariants: field axioms of the exact
//! rationals, the phase group, polynomial equality, series arithmetic, and
//! fusion on labels.

use proptest::prelude::*;

use klwv_core::extension::GenInduced;
use klwv_core::freefield::{fock_braid, fock_fuse, singlet_fuse, FockModule, SingletModule};
use klwv_core::liecore::{weight_inner, WeightVec};
use klwv_core::qseries::{partition_series, CharSeries};
use klwv_core::ratcore::{phase_add, poly_equal, HalfInt, MPoly, Phase, Rat};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-200i64..=200, 1i64..=24).prop_map(|(p, q)| Rat::new(p, q).expect("q > 0"))
}

fn small_series() -> impl Strategy<Value = CharSeries> {
    prop::collection::vec(((-3i64..=3), (0i64..=10), (-5i64..=5)), 0..12).prop_map(|terms| {
        let mut s = CharSeries::zero(HalfInt::int(6), 6);
        for (c, dw, coeff) in terms {
            s = s.add(&CharSeries::monomial(
                c,
                HalfInt::from_doubled(dw),
                Rat::int(coeff),
                HalfInt::int(6),
                6,
            ));
        }
        s
    })
}

proptest! {
    #[test]
    fn rat_ring_axioms(a in rat_strategy(), b in rat_strategy(), c in rat_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn rat_canonical_is_idempotent(a in rat_strategy()) {
        let recanonicalized = Rat::from_big(a.numer().clone(), a.denom().clone()).expect("q > 0");
        prop_assert_eq!(&recanonicalized, &a);
        prop_assert_eq!(a.to_string().parse::<Rat>().expect("round trip"), a);
    }

    #[test]
    fn phase_group_axioms(x in rat_strategy(), y in rat_strategy()) {
        let px = Phase::from_exponent(x);
        let py = Phase::from_exponent(y);
        prop_assert_eq!(phase_add(&px, &py), phase_add(&py, &px));
        prop_assert!(phase_add(&px, &px.inverse()).is_trivial());
        prop_assert_eq!(phase_add(&px, &Phase::zero()), px.clone());
        let r = px.residue();
        prop_assert!(!r.is_negative() && r < &Rat::int(2));
    }

    #[test]
    fn poly_equality_reduces_to_zero_difference(
        coeffs_p in prop::collection::vec((-9i64..=9, 0u32..3, 0u32..3), 0..8),
        coeffs_q in prop::collection::vec((-9i64..=9, 0u32..3, 0u32..3), 0..8),
    ) {
        let vars = &["x", "y"];
        let build = |terms: &[(i64, u32, u32)]| {
            let mut poly = MPoly::zero(vars);
            for (c, ex, ey) in terms {
                let term = MPoly::var(vars, 0)
                    .pow(*ex)
                    .mul(&MPoly::var(vars, 1).pow(*ey))
                    .expect("same vars")
                    .scale(&Rat::int(*c));
                poly = poly.add(&term).expect("same vars");
            }
            poly
        };
        let p = build(&coeffs_p);
        let q = build(&coeffs_q);
        let diff_zero = poly_equal(&p.sub(&q).expect("same vars"), &MPoly::zero(vars)).expect("same vars");
        prop_assert_eq!(poly_equal(&p, &q).expect("same vars"), diff_zero);
    }

    #[test]
    fn series_mul_commutes_and_associates(a in small_series(), b in small_series(), c in small_series()) {
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        prop_assert_eq!(ab.mismatches(&ba), vec![]);
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        prop_assert_eq!(left.mismatches(&right), vec![]);
    }

    #[test]
    fn fock_fusion_is_the_additive_group(wa in rat_strategy(), wb in rat_strategy()) {
        let level = Rat::new(-2, 3).expect("q > 0");
        let a = FockModule::new(level.clone(), wa).expect("level != 0");
        let b = FockModule::new(level.clone(), wb).expect("level != 0");
        let ab = fock_fuse(&a, &b).expect("same level");
        let ba = fock_fuse(&b, &a).expect("same level");
        prop_assert_eq!(ab.weight(), ba.weight());
        let vacuum = FockModule::new(level, Rat::zero()).expect("level != 0");
        let with_vacuum = fock_fuse(&a, &vacuum).expect("same level");
        prop_assert_eq!(with_vacuum.weight(), a.weight());
        prop_assert_eq!(
            fock_braid(&a, &b).expect("same level"),
            fock_braid(&b, &a).expect("same level")
        );
    }

    #[test]
    fn singlet_fusion_group_on_atypicals(i in -20i64..=20, j in -20i64..=20, k in -20i64..=20) {
        use SingletModule::Atypical;
        let left = singlet_fuse(&singlet_fuse(&Atypical(i), &Atypical(j)).expect("atypical"), &Atypical(k))
            .expect("atypical");
        let right = singlet_fuse(&Atypical(i), &singlet_fuse(&Atypical(j), &Atypical(k)).expect("atypical"))
            .expect("atypical");
        prop_assert_eq!(left, right);
    }

    #[test]
    fn weight_inner_is_symmetric_and_bilinear(
        coeffs_a in prop::collection::vec(-6i64..=6, 5),
        coeffs_b in prop::collection::vec(-6i64..=6, 5),
        scale in -4i64..=4,
    ) {
        let a = WeightVec::new(6, coeffs_a.into_iter().map(Rat::int).collect()).expect("rank");
        let b = WeightVec::new(6, coeffs_b.into_iter().map(Rat::int).collect()).expect("rank");
        prop_assert_eq!(
            weight_inner(&a, &b).expect("rank"),
            weight_inner(&b, &a).expect("rank")
        );
        let scaled = a.scale(&Rat::int(scale));
        prop_assert_eq!(
            weight_inner(&scaled, &b).expect("rank"),
            Rat::int(scale) * weight_inner(&a, &b).expect("rank")
        );
        // all comarks are one: pairing with the highest root sums coefficients
        let theta = WeightVec::theta(6);
        prop_assert_eq!(weight_inner(&a, &theta).expect("rank"), a.coeff_sum());
    }

    #[test]
    fn sector_multiset_is_shift_invariant(
        c in -6i64..=6,
        b in -6i64..=6,
        t in -10i64..=10,
    ) {
        let a = Rat::int(c) * Rat::new(4, 6).expect("q > 0");
        let module = GenInduced::atypical(4, 0, a, b).expect("rank");
        let shifted = module.shifted(t);
        for i in -8..=8 {
            prop_assert_eq!(module.sector_delta(i), shifted.sector_delta(i - t));
        }
    }
}

#[test]
fn partition_series_coefficients_are_nonnegative_integers() {
    let p = partition_series(HalfInt::int(30));
    assert!(p
        .terms()
        .all(|(_, _, c)| c.is_integer() && !c.is_negative()));
}

#[test]
fn fermion_product_coefficients_are_nonnegative_integers() {
    use klwv_core::qseries::{product_form, FactorFamily};
    let p = product_form(
        &[
            FactorFamily::new(1, 1, HalfInt::ZERO, HalfInt::ONE, false),
            FactorFamily::new(1, -1, HalfInt::ZERO, HalfInt::ONE, false),
        ],
        HalfInt::int(20),
        7,
    )
    .expect("valid factors");
    assert!(p
        .terms()
        .all(|(_, _, c)| c.is_integer() && !c.is_negative()));
}
