//! Property tests for the series algebra and the exact track.

use norlund_core::cpx::BigComplex;
use norlund_core::pseries::ComplexSeries;
use norlund_core::ratcore::{self, ComplexRational};
use norlund_core::saddle::{expansion_coefficients, SaddleContext};
use proptest::prelude::*;
use rug::Rational;

const P: u32 = 200;

fn series_from(parts: &[(f64, f64)]) -> ComplexSeries {
    ComplexSeries {
        c: parts
            .iter()
            .map(|&(re, im)| BigComplex::from_f64(P, re, im))
            .collect(),
    }
}

fn coeff_strategy(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mul_div_round_trip(a in coeff_strategy(12), mut b in coeff_strategy(12)) {
        // keep the divisor well conditioned
        b[0].0 += 2.0;
        let sa = series_from(&a);
        let sb = series_from(&b);
        let back = sa.mul(&sb).div(&sb).unwrap();
        for k in 0..12 {
            let d = back.c[k].sub(&sa.c[k]).abs().to_f64();
            prop_assert!(d < 1e-52, "k={k} d={d:e}");
        }
    }

    #[test]
    fn sqrt_squares_back(mut a in coeff_strategy(12)) {
        a[0].0 += 2.0;
        let sa = series_from(&a);
        let target = sa.c[0].sqrt();
        let r = sa.sqrt_series(&target).unwrap();
        let sq = r.mul(&r);
        for k in 0..12 {
            let d = sq.c[k].sub(&sa.c[k]).abs().to_f64();
            prop_assert!(d < 1e-50, "k={k} d={d:e}");
        }
    }

    #[test]
    fn revert_compose_identity(mut w in coeff_strategy(14)) {
        w[0] = (0.0, 0.0);
        w[1].0 += 2.0; // nonzero linear term
        let sw = series_from(&w);
        let u = sw.revert().unwrap();
        let comp = sw.compose(&u).unwrap();
        prop_assert!((comp.c[1].re.to_f64() - 1.0).abs() < 1e-50);
        for k in (0..14).filter(|&k| k != 1) {
            let d = comp.c[k].abs().to_f64();
            prop_assert!(d < 1e-48, "k={k} d={d:e}");
        }
    }

    #[test]
    fn reflection_identity_exact(n in 1u32..16, num in -8i64..9, den in 1i64..5, inum in -4i64..5) {
        let z = ComplexRational::new(
            Rational::from((num, den)),
            Rational::from((inum, 2)),
        );
        prop_assert!(ratcore::reflection_check(n, &z));
    }

    #[test]
    fn second_kind_shift_identity(n in 0u32..20) {
        let shifted = ratcore::norlund_polynomial(n).shift(&Rational::from(1));
        prop_assert_eq!(ratcore::second_kind_polynomial(n).coeffs, shifted.coeffs);
    }

    #[test]
    fn odd_midpoint_zeros(m in 0u32..12) {
        let n = 2 * m + 1;
        let z = ComplexRational::from_real(Rational::from((1, 2)));
        prop_assert!(ratcore::eval_exact(n, &z).is_zero());
    }
}

#[test]
fn base_series_odd_coefficients_vanish() {
    let s = ratcore::base_series(32);
    for k in (3..32).step_by(2) {
        assert_eq!(s.coeffs[k], 0, "k={k}");
    }
}

#[test]
fn coefficients_stable_under_order_extension() {
    // extending the generation order must not change lower coefficients
    let z = BigComplex::from_f64(P, 0.75, 1.0);
    let ctx = SaddleContext::new(z, 0).unwrap();
    let small = expansion_coefficients(&ctx, 4).unwrap();
    let large = expansion_coefficients(&ctx, 8).unwrap();
    for k in 0..=4 {
        let d = small.a[k].sub(&large.a[k]).abs().to_f64();
        let scale = large.a[k].abs().to_f64().max(1e-10);
        assert!(d < 1e-40 * scale.max(1.0), "k={k} d={d:e}");
    }
}
