//! Property tests over randomized inputs: the structural invariants that
//! the hand-picked cases cannot cover by themselves.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use slcg_core::encoding::{EncodingScheme, VariableSpec};
use slcg_core::generator::{step_big, step_u128, step_u64, BitWidth, GeneratorState};
use slcg_core::optimizer::lag_autocorrelation;
use slcg_core::stats::{friedman, wilcoxon_one_sample, ResultTable, Verdict};

proptest! {
    // the three step engines agree bit for bit on shared widths
    #[test]
    fn step_engines_agree(n in 3u32..=63, seed in any::<u64>()) {
        let mask = if n == 63 { (1u64 << 63) - 1 } else { (1u64 << n) - 1 };
        let x = seed & mask;
        let fast = step_u64(x, n);
        let wide = step_u128(u128::from(x), n);
        let big = step_big(&BigUint::from(x), n);
        prop_assert_eq!(BigUint::from(fast), big);
        prop_assert_eq!(u128::from(fast), wide);
    }

    // stepping stays inside the working state space and is invertible
    // (never reaches the excluded fixed point)
    #[test]
    fn step_stays_in_range(n in 3u32..=48, seed in any::<u64>(), iters in 1usize..200) {
        let mask = (1u64 << n) - 1;
        let mut x = seed & mask;
        for _ in 0..iters {
            x = step_u64(x, n);
            prop_assert!(x <= mask);
        }
    }

    // complement symmetry: n steps ahead sits the bitwise complement
    #[test]
    fn complement_sits_n_steps_ahead(n in 3u32..=32, seed in any::<u64>()) {
        let mask = (1u64 << n) - 1;
        let x = seed & mask;
        let mut walked = x;
        for _ in 0..n {
            walked = step_u64(walked, n);
        }
        prop_assert_eq!(walked, mask - x);
    }

    // decode keeps every coordinate inside its interval and the inverse
    // quantizer recovers the exact state on grid points
    #[test]
    fn decode_round_trips(
        widths in proptest::collection::vec(1u32..=16, 1..=4),
        bounds in proptest::collection::vec((-1000.0f64..1000.0).prop_flat_map(|lo| {
            (Just(lo), (lo + 1e-3)..(lo + 2000.0))
        }), 1..=4),
        seed in any::<u64>(),
    ) {
        let d = widths.len().min(bounds.len());
        let variables: Vec<VariableSpec> = (0..d)
            .map(|j| VariableSpec::new(bounds[j].0, bounds[j].1, widths[j]).unwrap())
            .collect();
        let total: u32 = variables.iter().map(|v| v.bits).sum();
        prop_assume!(total >= 3 && total <= 63);
        let scheme = EncodingScheme::new(variables).unwrap();
        let state = seed & ((1u64 << total) - 1);
        let gs = GeneratorState::from_u64(state, BitWidth::new(total).unwrap()).unwrap();
        let point = scheme.decode(&gs).unwrap();
        for (x, v) in point.iter().zip(scheme.variables()) {
            prop_assert!(*x >= v.lower && *x <= v.upper);
        }
        prop_assert_eq!(scheme.encode(&point).unwrap().to_u64().unwrap(), state);
    }

    // the wilcoxon verdict flips under negation of samples and reference
    #[test]
    fn wilcoxon_flips_under_negation(
        samples in proptest::collection::vec(-100.0f64..100.0, 3..20),
        reference in -100.0f64..100.0,
    ) {
        let out = wilcoxon_one_sample(&samples, reference, 0.05).unwrap();
        let negated: Vec<f64> = samples.iter().map(|s| -s).collect();
        let flipped = wilcoxon_one_sample(&negated, -reference, 0.05).unwrap();
        prop_assert!((out.p_value - flipped.p_value).abs() < 1e-9);
        let expected = match out.verdict {
            Verdict::Worse => Verdict::Better,
            Verdict::Better => Verdict::Worse,
            Verdict::Equal => Verdict::Equal,
        };
        prop_assert_eq!(flipped.verdict, expected);
    }

    // friedman mean ranks always sum to k(k+1)/2, ties included
    #[test]
    fn friedman_rank_sum_is_conserved(
        values in proptest::collection::vec(
            proptest::collection::vec(-1e6f64..1e6, 4),
            2..12,
        ),
    ) {
        let table = ResultTable::new(
            (0..values.len()).map(|i| (format!("F{i}"), "2".into())).collect(),
            (0..4).map(|j| format!("A{j}")).collect(),
            values,
        ).unwrap();
        let out = friedman(&table).unwrap();
        let sum: f64 = out.mean_ranks.iter().sum();
        prop_assert!((sum - 10.0).abs() < 1e-9);
    }

    // autocorrelation is always a correlation
    #[test]
    fn autocorrelation_is_bounded(
        values in proptest::collection::vec(-1e3f64..1e3, 10..200),
        k in 1usize..5,
    ) {
        prop_assume!(values.len() > k + 1);
        let corr = lag_autocorrelation(&values, k).unwrap();
        prop_assert!(corr.rho >= -1.0 - 1e-12 && corr.rho <= 1.0 + 1e-12);
    }
}

// build_delta evenness: any pattern set with a zero low bit on variable 1
// stays even, and the alternating generator is always odd-width exact
#[test]
fn alternating_generator_closed_form() {
    for n in (3u32..=63).step_by(2) {
        let width = BitWidth::new(n).unwrap();
        let alt = slcg_core::generator::alternating_generator(width).unwrap();
        // 2 * alt + 1 is the complement; stepping twice returns
        let state = GeneratorState::new(alt.clone(), width).unwrap();
        let twice = state.step().step();
        assert_eq!(twice.value(), &alt, "n={n}");
        // binary pattern 0101..10
        let expected = ((BigUint::one() << n) - BigUint::from(2u32)) / BigUint::from(3u32);
        assert_eq!(alt, expected);
    }
}
