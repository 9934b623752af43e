mod common;

use common::*;
use nbldpc::channel::{Convention, Modulation};
use nbldpc::code::{random_regular_code, random_tree_code, TreeSpec};
use nbldpc::decoders::{normalize_intrinsic_ai, Decoder, DecoderConfig, Rule};
use nbldpc::gf::Field;
use nbldpc::oracle::{ml_decode, tree_aposteriori_oracle};
use proptest::prelude::*;

const MIN_SUM_FAMILY: [Rule; 3] = [Rule::MinSum, Rule::MinSum0, Rule::MinSumStar];

fn same_orders(code: &nbldpc::Code, metrics: &nbldpc::IntrinsicInfo, rules: &[Rule], iterations: usize) {
    let reference = orders_per_iteration(
        code,
        &metrics.with_convention(rules[0].convention()),
        DecoderConfig::new(rules[0]),
        iterations,
    );
    for &rule in &rules[1..] {
        let other = orders_per_iteration(
            code,
            &metrics.with_convention(rule.convention()),
            DecoderConfig::new(rule),
            iterations,
        );
        for (it, (a, b)) in reference.iter().zip(&other).enumerate() {
            assert_eq!(a, b, "{} vs {rule} differ at iteration {}", rules[0], it + 1);
        }
    }
}

#[test]
fn min_sum_family_orders_agree_on_a_cyclic_gf16_code() {
    let ch = Channel::new(gf16_half_rate_code(48, 3), Modulation::Qam16, 3.5);
    for frame in 0..10 {
        let metrics = ch.intrinsic(17, frame, Convention::LogProb);
        same_orders(&ch.link.code, &metrics, &MIN_SUM_FAMILY, 20);
    }
}

#[test]
fn gf2_norms_collapse_to_min_sum() {
    let code = random_regular_code(60, 3, 6, Field::new(1).unwrap(), 4).unwrap();
    let ch = Channel::new(code, Modulation::Bpsk, 2.0);
    let rules = [
        Rule::MinSum,
        Rule::MinSumStar,
        Rule::PNorm(2.0),
        Rule::PNorm(4.0),
        Rule::Euclidean,
        Rule::MinMaxStandard,
    ];
    for frame in 0..10 {
        let metrics = ch.intrinsic(3, frame, Convention::LogProb);
        same_orders(&ch.link.code, &metrics, &rules, 20);
    }
}

#[test]
fn euclidean_is_the_two_norm() {
    let ch = Channel::new(gf16_half_rate_code(48, 5), Modulation::Qam16, 3.0);
    let intr = ch.intrinsic(1, 0, Convention::StarRef);
    let a = decode_with(&ch.link.code, &intr, Rule::Euclidean);
    let b = decode_with(&ch.link.code, &intr, Rule::PNorm(2.0));
    assert_eq!(a, b);
}

#[test]
fn early_stop_only_on_codewords() {
    let ch = Channel::new(gf16_half_rate_code(48, 8), Modulation::Qam16, 3.0);
    for frame in 0..20 {
        let intr = ch.intrinsic(2, frame, Convention::StarRef);
        let config = DecoderConfig::new(Rule::MinMaxStandard).with_max_iterations(30);
        let res = nbldpc::decode(&ch.link.code, &intr, &config).unwrap();
        assert!(res.iterations_used <= 30);
        assert_eq!(res.converged, ch.link.code.is_codeword(&res.hard_decision));
        if !res.converged {
            assert_eq!(res.iterations_used, 30);
        }
    }
}

#[test]
fn selective_decoder_with_open_cutoff_matches_standard_on_normalized_input() {
    let ch = Channel::new(gf16_half_rate_code(48, 6), Modulation::Qam16, 3.0);
    for frame in 0..5 {
        let intr = ch.intrinsic(4, frame, Convention::StarRef);
        let sel = nbldpc::decode(
            &ch.link.code,
            &intr,
            &DecoderConfig::new(Rule::MinMaxSelective).with_selective(12.0, 1e12),
        )
        .unwrap();
        let normalized = normalize_intrinsic_ai(&intr, 12.0).unwrap();
        let std = decode_with(&ch.link.code, &normalized, Rule::MinMaxStandard);
        assert_eq!(sel.hard_decision, std.hard_decision);
        assert_eq!(sel.a_posteriori, std.a_posteriori);
        assert_eq!(sel.iterations_used, std.iterations_used);
    }
}

fn tree_case(seed: u64) -> (nbldpc::Code, nbldpc::IntrinsicInfo) {
    let code = random_tree_code(Field::new(2).unwrap(), TreeSpec::default(), seed).unwrap();
    let intr = random_intrinsic(&mut rng(seed ^ 0x5eed), code.n(), 4, Convention::LogProb);
    (code, intr)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn min_sum_family_orders_agree_on_trees(seed in any::<u64>()) {
        let (code, intr) = tree_case(seed);
        same_orders(&code, &intr, &MIN_SUM_FAMILY, 20);
    }

    #[test]
    fn min_sum_reaches_the_tree_limit(seed in any::<u64>()) {
        let (code, intr) = tree_case(seed);
        let diameter = code.tanner_diameter().unwrap();
        let mut config = DecoderConfig::new(Rule::MinSum)
            .with_max_iterations(diameter)
            .with_early_stop(false);
        config.normalize_log_domain = false;
        let res = nbldpc::decode(&code, &intr, &config).unwrap();
        for n in 0..code.n() {
            let limit = tree_aposteriori_oracle(&code, &intr, n).unwrap();
            for (got, want) in res.a_posteriori_row(n).iter().zip(&limit.min_sum) {
                prop_assert!((got - want).abs() <= 1e-9, "node {n}: {got} vs {want}");
            }
        }
        prop_assert_eq!(res.hard_decision, ml_decode(&code, &intr).unwrap());
    }

    #[test]
    fn min_sum_zero_reaches_the_two_term_limit(seed in any::<u64>()) {
        let (code, intr) = tree_case(seed);
        let diameter = code.tanner_diameter().unwrap();
        let config = DecoderConfig::new(Rule::MinSum0)
            .with_max_iterations(diameter)
            .with_early_stop(false);
        let zero_ref = intr.with_convention(Convention::ZeroRef);
        let res = nbldpc::decode(&code, &zero_ref, &config).unwrap();
        for n in 0..code.n() {
            let limit = tree_aposteriori_oracle(&code, &zero_ref, n).unwrap();
            for (got, want) in res.a_posteriori_row(n).iter().zip(&limit.min_sum_zero) {
                prop_assert!((got - want).abs() <= 1e-9, "node {n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn min_max_decisions_survive_scaling(frame in 0usize..1000, lambda in prop::sample::select(vec![0.1, 0.5, 3.0, 10.0])) {
        let ch = Channel::new(gf16_half_rate_code(48, 21), Modulation::Qam16, 3.5);
        let intr = ch.intrinsic(9, frame, Convention::StarRef);
        let config = DecoderConfig::new(Rule::MinMaxStandard).with_max_iterations(25);
        let a = orders_per_iteration(&ch.link.code, &intr, config, 25);
        let b = orders_per_iteration(&ch.link.code, &intr.scaled(lambda), config, 25);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn iteration_views_are_consistent() {
    let ch = Channel::new(gf16_half_rate_code(48, 2), Modulation::Qam16, 4.0);
    let intr = ch.intrinsic(5, 0, Convention::StarRef);
    let code = &ch.link.code;
    let mut dec = Decoder::new(code, DecoderConfig::new(Rule::MinMaxStandard)).unwrap();
    let mut seen = 0;
    let res = dec
        .decode_observed(&intr, |view| {
            seen += 1;
            assert_eq!(view.iteration, seen);
            assert_eq!(view.check_to_var.len(), code.num_edges() * 16);
            assert_eq!(view.var_to_check.len(), code.num_edges() * 16);
            assert_eq!(view.hard_decision.len(), code.n());
        })
        .unwrap();
    assert_eq!(seen, res.iterations_used);
    assert_eq!(res.ops_per_iteration.len(), res.iterations_used);
}
