mod common;

use adele_lab_core::brauer::{archimedean_group_type, restrict_from_q, BrauerClass, QmodZInvariant};
use adele_lab_core::equivalence::{build_place_matching, check_local_equivalence};
use adele_lab_core::fieldlab::{factor_mod_p, poly_discriminant, zeta_partial, NumberField, NumberFieldSpec};
use adele_lab_core::genus::lambda_budget;
use adele_lab_core::place::Place;
use adele_lab_core::poly::IntPoly;
use adele_lab_core::Error;
use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

fn catalan() -> f64 {
    // Truncation error is below the first omitted term, about 6e-14.
    (0..2_000_000u64).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / ((2 * k + 1) as f64).powi(2)).sum()
}

#[test]
fn gaussian_zeta_matches_series_oracle() {
    let z = zeta_partial(&field("gaussian"), 2, 100_000, 128).unwrap();
    let oracle = std::f64::consts::PI.powi(2) / 6.0 * catalan();
    let dev = (z.value.to_f64() - oracle).abs();
    assert!(dev <= z.error_bound.to_f64() + 1e-12, "dev {dev:e} bound {}", z.error_bound.to_sci(3));
    assert!((z.value.to_f64() - 1.50670).abs() < 1e-4);
}

#[test]
fn rational_zeta_brackets_pi_squared_over_six() {
    let z = zeta_partial(&NumberField::rationals(), 2, 100_000, 128).unwrap();
    let target = std::f64::consts::PI.powi(2) / 6.0;
    assert!((z.value.to_f64() - target).abs() <= z.error_bound.to_f64() + 1e-15);
    assert!(z.error_bound.to_f64() < 1e-4);
}

#[test]
fn rational_zeta_agrees_with_direct_summation() {
    for s in [2u32, 3, 4] {
        let m = 20_000u64;
        let partial: f64 = (1..=m).map(|k| (k as f64).powi(-(s as i32))).sum();
        let tail = 1.0 / ((s - 1) as f64 * (m as f64).powi(s as i32 - 1));
        let z = zeta_partial(&NumberField::rationals(), s, 5_000, 96).unwrap();
        let (lo, hi) = (z.value.to_f64() - z.error_bound.to_f64(), z.value.to_f64() + z.error_bound.to_f64());
        assert!(lo <= partial + tail + 1e-12 && partial - 1e-12 <= hi, "s={s}");
    }
}

#[test]
fn factor_examples() {
    assert_eq!(factor_mod_p(&IntPoly::from_i64(&[1, 0, 1]), 5).unwrap(), vec![(1, 1), (1, 1)]);
    assert_eq!(factor_mod_p(&IntPoly::from_i64(&[-1, 1]), 7).unwrap(), vec![(1, 1)]);
    assert_eq!(factor_mod_p(&IntPoly::from_i64(&[-2, 0, 0, 1]), 7).unwrap(), vec![(3, 1)]);
    assert_eq!(factor_mod_p(&IntPoly::from_i64(&[-2, 0, 0, 1]), 9), Err(Error::CompositeModulus(9)));
    assert_eq!(poly_discriminant(&IntPoly::from_i64(&[-2, 0, 0, 1])), BigInt::from(-108));
}

#[test]
fn field_document_round_trip() {
    let doc = r#"{"label":"c","minpoly":["-2","0","0","1"],"field_discriminant":"-108","ramified":{"3":[[3,1]]}}"#;
    let k: NumberField = serde_json::from_str(doc).unwrap();
    assert_eq!(k.degree(), 3);
    assert_eq!(serde_json::to_string(&k).unwrap(), doc);
    let bad = r#"{"label":"c","minpoly":["-1","0","1"]}"#;
    assert!(serde_json::from_str::<NumberField>(bad).is_err());
    let spec: NumberFieldSpec = serde_json::from_str(r#"{"label":"q","minpoly":[-1,1]}"#).unwrap();
    assert!(spec.field_discriminant.is_none());
}

#[test]
fn octic_pair_matching_is_total_on_unramified_primes() {
    let (k, k2) = (field("dsp799"), field("dsp12784"));
    let phi = build_place_matching(&k, &k2, 1000).unwrap();
    assert_eq!(phi.finite_matching.len(), 168 - 3);
    assert!(!phi.finite_matching.contains_key(&17));
    assert!(!check_local_equivalence(&k, &k2, 1000).unwrap().is_refuted());
}

#[test]
fn octic_quaternion_archimedean_type() {
    let k = field("dsp799");
    let half = QmodZInvariant::half();
    let class = BrauerClass::from_invariants("dsp799", [(Place::real(0), half), (Place::real(1), half)]);
    assert!(class.is_valid());
    let t = archimedean_group_type(&class, &k, 1).unwrap();
    assert_eq!(t.to_string(), "SL(2,C)^3 x SL(1,H)^2");
    assert_eq!(t.noncompact().to_string(), "SL(2,C)^3");
    let cubic = BrauerClass::from_invariants(
        "Q",
        [(Place::finite(7, 0), QmodZInvariant::new(1, 3)), (Place::finite(13, 0), QmodZInvariant::new(2, 3))],
    );
    let t = archimedean_group_type(&cubic, &NumberField::rationals(), 1).unwrap();
    assert_eq!(t.to_string(), "SL(3,R)^1");
}

#[test]
fn restriction_from_q_to_gaussian_splits_invariants() {
    let c = BrauerClass::from_invariants(
        "Q",
        [(Place::finite(5, 0), QmodZInvariant::half()), (Place::finite(13, 0), QmodZInvariant::half())],
    );
    let r = restrict_from_q(&c, &field("gaussian"), 100).unwrap();
    let places: Vec<_> = r.invariants().keys().copied().collect();
    assert_eq!(places, vec![Place::finite(5, 0), Place::finite(5, 1), Place::finite(13, 0), Place::finite(13, 1)]);
}

#[test]
fn quaternion_budget() {
    let v = BigRational::new(BigInt::one(), BigInt::from(12));
    let b = lambda_budget(&v, 2, Some(&BigInt::one()), 128).unwrap();
    assert_eq!(b.coarse, BigRational::new(BigInt::from(10u32).pow(33), BigInt::from(12)));
}
