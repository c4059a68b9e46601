//! Property tests for the structural invariants: convolution algebra,
//! padding invariance, Jacobian positivity at the origin, finite-difference
//! harmonicity, weight ordering, operator contraction, and the
//! decomposition round trip.

use num_bigint::BigUint;
use num_complex::Complex64;
use proptest::prelude::*;

use hgft::membership::{
    coefficient_sum, decompose, has_sign_pattern_with, reconstruct, weight_a, weight_b,
    DecompositionWeights, SignConvention,
};
use hgft::operators::{bernardi, c_multiplier, error_coefficient};
use hgft::series::{convolve, AnalyticSeries, HarmonicFunction};
use hgft::verification::{random_subclass_member, verify_laplace};
use hgft::FamilyParams;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, -0.5f64..0.5).prop_map(|(re, im)| Complex64::new(re, im))
}

fn series(max_len: usize) -> impl Strategy<Value = AnalyticSeries> {
    prop::collection::vec(coeff(), 1..=max_len)
        .prop_map(|coeffs| AnalyticSeries::new(coeffs).unwrap())
}

fn harmonic(max_len: usize) -> impl Strategy<Value = HarmonicFunction> {
    let b1 = (-0.7f64..0.7, -0.7f64..0.7).prop_map(|(re, im)| Complex64::new(re, im));
    (
        prop::collection::vec(coeff(), 0..max_len),
        b1,
        prop::collection::vec(coeff(), 0..max_len),
    )
        .prop_map(|(h_tail, b1, g_tail)| {
            let mut h = vec![Complex64::new(1.0, 0.0)];
            h.extend(h_tail);
            let mut g = vec![b1];
            g.extend(g_tail);
            HarmonicFunction::new(
                AnalyticSeries::new(h).unwrap(),
                AnalyticSeries::new(g).unwrap(),
            )
            .unwrap()
        })
}

fn params() -> impl Strategy<Value = FamilyParams> {
    (1u32..4, 1u32..4, 0.0f64..0.95)
        .prop_map(|(k, lambda, gamma)| FamilyParams::new(k, lambda, gamma).unwrap())
}

fn point_in(r_max: f64) -> impl Strategy<Value = Complex64> {
    (0.0f64..r_max, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(r, theta)| Complex64::from_polar(r, theta))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn convolution_commutes_and_associates(
        a in series(10),
        b in series(10),
        c in series(10),
    ) {
        let ab = convolve(&a, &b);
        let ba = convolve(&b, &a);
        prop_assert_eq!(ab.truncation(), ba.truncation());
        for n in 1..=ab.truncation() {
            prop_assert!(close(ab.coeff(n), ba.coeff(n), 1e-15));
        }
        let abc = convolve(&convolve(&a, &b), &c);
        let a_bc = convolve(&a, &convolve(&b, &c));
        for n in 1..=abc.truncation() {
            prop_assert!(close(abc.coeff(n), a_bc.coeff(n), 1e-15));
        }
    }

    #[test]
    fn zero_padding_never_changes_evaluation(
        s in series(10),
        extra in 0usize..8,
        z in point_in(1.0),
    ) {
        let padded = s.zero_padded(s.truncation() + extra);
        prop_assert_eq!(s.eval(z).unwrap(), padded.eval(z).unwrap());
    }

    #[test]
    fn nested_evaluation_matches_naive_power_sum(s in series(10), z in point_in(1.0)) {
        let naive: Complex64 = (1..=s.truncation())
            .map(|n| s.coeff(n) * z.powi(n as i32))
            .sum();
        let horner = s.eval(z).unwrap();
        prop_assert!(
            (horner - naive).norm() <= 1e-14 * (1.0 + naive.norm()),
            "{} vs {}", horner, naive
        );
    }

    #[test]
    fn jacobian_positive_at_origin(f in harmonic(6)) {
        let b1 = f.b1_abs();
        let j = f.jacobian(Complex64::new(0.0, 0.0));
        prop_assert!((j - (1.0 - b1 * b1)).abs() <= 1e-12);
        prop_assert!(j > 0.0);
    }

    #[test]
    fn finite_difference_laplacian_is_small(
        f in harmonic(8),
        z in point_in(0.7),
    ) {
        let h_step = 1e-3;
        let report = verify_laplace(&f, &[z], h_step).unwrap();
        let n = f.truncation() as f64;
        let bound = 10.0 * n * n * h_step * h_step * f.coefficient_magnitude_sum().max(1.0);
        prop_assert!(
            report.functional_max <= bound,
            "residual {} above bound {}",
            report.functional_max,
            bound
        );
    }

    #[test]
    fn weight_gap_matches_gamma(p in params(), n in 2u32..16) {
        let wa = weight_a(n, &p).unwrap();
        let wb = weight_b(n, &p).unwrap();
        prop_assert!(wa > 0.0);
        if p.gamma() > 0.0 {
            prop_assert!(wb > wa);
            // The gap is exactly 2 gamma / (n - gamma) relative to w_a.
            let expected = wa * 2.0 * p.gamma() / (n as f64 - p.gamma());
            prop_assert!((wb - wa - expected).abs() <= 1e-12 * wb);
        } else {
            prop_assert!((wb - wa).abs() <= 1e-15 * wb.max(1.0));
        }
    }

    #[test]
    fn bernardi_contracts_magnitudes(f in harmonic(8), c in 0.0f64..5.0) {
        let out = bernardi(&f, c).unwrap();
        for n in 1..=f.truncation() {
            prop_assert!(out.h().coeff(n).norm() <= f.h().coeff(n).norm() + 1e-15);
            prop_assert!(out.g().coeff(n).norm() <= f.g().coeff(n).norm() + 1e-15);
        }
    }

    #[test]
    fn decomposition_round_trips(p in params(), seed in 0u64..500, slack in 0.05f64..0.95) {
        let f = random_subclass_member(&p, 12, slack, seed).unwrap();
        let weights = decompose(&f, &p).unwrap();
        prop_assert!((weights.total() - 1.0).abs() <= 1e-12);

        let rebuilt = reconstruct(&weights, &p, 12).unwrap();
        for n in 1..=12 {
            prop_assert!(
                (rebuilt.h().coeff(n).norm() - f.h().coeff(n).norm()).abs() <= 1e-12,
                "h magnitude mismatch at n = {}", n
            );
            prop_assert!(
                (rebuilt.g().coeff(n).norm() - f.g().coeff(n).norm()).abs() <= 1e-12,
                "g magnitude mismatch at n = {}", n
            );
        }
        prop_assert!(has_sign_pattern_with(&rebuilt, 1e-12, SignConvention::NegativeH));

        let again = decompose(&rebuilt, &p).unwrap();
        for (w1, w2) in weights.x.iter().zip(&again.x) {
            prop_assert!((w1 - w2).abs() <= 1e-12);
        }
        for (w1, w2) in weights.y.iter().zip(&again.y) {
            prop_assert!((w1 - w2).abs() <= 1e-12);
        }
    }

    #[test]
    fn reconstruct_of_random_weights_is_member(
        p in params(),
        raw in prop::collection::vec(0.0f64..1.0, 8),
    ) {
        let total: f64 = raw.iter().sum();
        prop_assume!(total > 1e-3);
        let normalized: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let weights = DecompositionWeights {
            x: normalized[..4].to_vec(),
            y: normalized[4..].to_vec(),
        };
        let f = reconstruct(&weights, &p, 4).unwrap();
        let report = coefficient_sum(&f, &p).unwrap();
        prop_assert!(report.verdict);
        prop_assert!(report.sum <= 2.0 + 1e-9);
    }
}

fn big_binomial(top: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc = acc * BigUint::from(top - k + i) / BigUint::from(i);
    }
    acc
}

/// Exhaustive cross-check of the operator multiplier against big-integer
/// arithmetic over the whole supported desk range.
#[test]
fn c_multiplier_matches_big_integer_product() {
    for n in 1u32..=32 {
        for k in 0u32..=8 {
            for lambda in 0u32..=8 {
                let expected = big_binomial((n + lambda - 1) as u64, lambda as u64)
                    * BigUint::from(n).pow(k);
                let got = c_multiplier(n, k, lambda).unwrap();
                assert_eq!(
                    BigUint::from(got),
                    expected,
                    "n={n} k={k} lambda={lambda}"
                );
            }
        }
    }
}

#[test]
fn error_coefficient_ratio_strictly_decreases() {
    for n in 1u32..=48 {
        let e_n = error_coefficient(n).unwrap();
        let e_next = error_coefficient(n + 1).unwrap();
        assert!(e_next.abs() < e_n.abs(), "|e_{}| must shrink", n + 1);
    }
}
