use modunit_core::arith::rat;
use modunit_core::classical::{theta_classical, Theta};
use modunit_core::cusps::{divisor_of_siegel_power, order_at, Cusp};
use modunit_core::thetag::{theta_constant, SiegelPoint, ThetaChar};
use modunit_core::units::{siegel_function, siegel_power_ord, FracVector, GammaMatrix};
use modunit_core::Exponent;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn classical_thetas_match_theta_constants() {
    let tau = Complex64::new(0.2, 0.9);
    let z = SiegelPoint::new(1, vec![tau]).unwrap();
    let half = rat(1, 2);
    let zero = rat(0, 1);
    for (which, r, s) in [
        (Theta::Two, half.clone(), zero.clone()),
        (Theta::Three, zero.clone(), zero.clone()),
        (Theta::Four, zero.clone(), half.clone()),
    ] {
        let series = theta_classical(which, Exponent::from_integer(30)).evaluate(tau);
        let ch = ThetaChar::new(vec![r], vec![s]).unwrap();
        let numeric = theta_constant(&ch, &z, 1e-15).unwrap().value;
        assert!((series - numeric).norm() < 1e-12, "{:?}: {} vs {}", which, series, numeric);
    }
}

#[test]
fn divisor_at_infinity_is_the_series_order() {
    for n in 2..=6 {
        let infinity = Cusp::new(1, 0, n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let v = FracVector::from_ratios(i, n, j, n);
                if v.is_integral() {
                    continue;
                }
                let d = divisor_of_siegel_power(&v, n).unwrap();
                assert_eq!(d.get(&infinity), Some(&siegel_power_ord(&v, n).unwrap()));
            }
        }
    }
}

proptest! {
    #[test]
    fn powered_series_order_matches_cusp_order(n in 2i64..7, i in -7i64..14, j in -7i64..14) {
        let v = FracVector::from_ratios(i, n, j, n);
        prop_assume!(!v.is_integral());
        let g = siegel_function(&v, Exponent::from_integer(1)).unwrap().pow(12 * n).unwrap();
        let ord = g.ord().unwrap();
        let at_infinity = order_at(&v, &GammaMatrix::identity(), n);
        prop_assert_eq!(rat(*ord.numer(), *ord.denom()), at_infinity);
    }
}
