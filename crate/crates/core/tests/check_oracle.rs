mod common;

use common::*;
use nbldpc::decoders::OpCounter;
use nbldpc::decoders::{check_node, CheckRule};
use nbldpc::gf::Field;
use nbldpc::oracle::{brute_check_node, brute_check_row};
use proptest::prelude::*;

fn field_and_degree() -> impl Strategy<Value = (u32, usize, u64)> {
    (1u32..=4, 2usize..=5, any::<u64>())
}

fn compare(rule: CheckRule, p: u32, d: usize, seed: u64, tol: f64) -> Result<(), TestCaseError> {
    let field = Field::new(p).unwrap();
    let q = field.order();
    let mut r = rng(seed);
    let labels = random_labels(&mut r, q, d);
    let rows = match rule {
        CheckRule::SumProduct => random_probability_rows(&mut r, q, d),
        _ => random_metric_rows(&mut r, q, d, 10.0),
    };
    let refs = as_refs(&rows);
    let mut ops = OpCounter::default();
    let out = check_node(&field, rule, &refs, &labels, &mut ops).unwrap();
    for (target, row) in out.iter().enumerate() {
        let expected = brute_check_row(&field, rule, &refs, &labels, target).unwrap();
        for (a, (&got, &want)) in row.iter().zip(&expected).enumerate() {
            prop_assert!(
                (got - want).abs() <= tol * want.abs().max(1.0),
                "{rule:?} target {target} symbol {a}: {got} vs {want}"
            );
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_max_matches_enumeration((p, d, seed) in field_and_degree()) {
        compare(CheckRule::MinMax, p, d, seed, 0.0)?;
    }

    #[test]
    fn min_sum_matches_enumeration((p, d, seed) in field_and_degree()) {
        compare(CheckRule::MinSum, p, d, seed, 1e-12)?;
    }

    #[test]
    fn euclidean_matches_enumeration((p, d, seed) in field_and_degree()) {
        compare(CheckRule::PNorm(2.0), p, d, seed, 1e-9)?;
    }

    #[test]
    fn four_norm_matches_enumeration((p, d, seed) in field_and_degree()) {
        compare(CheckRule::PNorm(4.0), p, d, seed, 1e-9)?;
    }

    #[test]
    fn sum_product_matches_enumeration((p, d, seed) in field_and_degree()) {
        compare(CheckRule::SumProduct, p, d, seed, 1e-9)?;
    }

    #[test]
    fn selective_with_open_cutoff_is_min_max((p, d, seed) in field_and_degree()) {
        let field = Field::new(p).unwrap();
        let q = field.order();
        let mut r = rng(seed);
        let labels = random_labels(&mut r, q, d);
        let rows = random_metric_rows(&mut r, q, d, 40.0);
        let refs = as_refs(&rows);
        let mut ops = OpCounter::default();
        let sel = check_node(&field, CheckRule::SelectiveMinMax { cot: 1e9 }, &refs, &labels, &mut ops).unwrap();
        let std = check_node(&field, CheckRule::MinMax, &refs, &labels, &mut ops).unwrap();
        prop_assert_eq!(sel, std);
    }

    #[test]
    fn norms_shrink_messages((p, d, seed) in field_and_degree()) {
        let field = Field::new(p).unwrap();
        let q = field.order();
        let mut r = rng(seed);
        let labels = random_labels(&mut r, q, d);
        let rows = random_metric_rows(&mut r, q, d, 5.0);
        let refs = as_refs(&rows);
        let mut ops = OpCounter::default();
        let mut prev: Option<Vec<Vec<f64>>> = None;
        for rule in [CheckRule::MinSum, CheckRule::PNorm(2.0), CheckRule::PNorm(4.0), CheckRule::MinMax] {
            let out = check_node(&field, rule, &refs, &labels, &mut ops).unwrap();
            if let Some(prev) = &prev {
                for (a, b) in prev.iter().flatten().zip(out.iter().flatten()) {
                    prop_assert!(*b <= a + 1e-12, "{rule:?}: {b} > {a}");
                }
            }
            prev = Some(out);
        }
    }

    #[test]
    fn min_max_and_min_sum_are_homogeneous((p, d, seed) in field_and_degree(), lambda in 0.01f64..100.0) {
        let field = Field::new(p).unwrap();
        let q = field.order();
        let mut r = rng(seed);
        let labels = random_labels(&mut r, q, d);
        let rows = random_metric_rows(&mut r, q, d, 5.0);
        let scaled: Vec<Vec<f64>> = rows.iter().map(|row| row.iter().map(|x| x * lambda).collect()).collect();
        let mut ops = OpCounter::default();
        for rule in [CheckRule::MinMax, CheckRule::MinSum] {
            let a = check_node(&field, rule, &as_refs(&rows), &labels, &mut ops).unwrap();
            let b = check_node(&field, rule, &as_refs(&scaled), &labels, &mut ops).unwrap();
            for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
                prop_assert!((x * lambda - y).abs() <= 1e-9 * y.abs().max(1.0));
            }
        }
    }
}

#[test]
fn single_symbol_queries_agree_with_rows() {
    let field = Field::new(3).unwrap();
    let mut r = rng(5);
    let labels = random_labels(&mut r, 8, 4);
    let rows = random_metric_rows(&mut r, 8, 4, 3.0);
    let refs = as_refs(&rows);
    let row = brute_check_row(&field, CheckRule::MinMax, &refs, &labels, 2).unwrap();
    for a in field.elements() {
        let v = brute_check_node(&field, CheckRule::MinMax, &refs, &labels, 2, a).unwrap();
        assert_eq!(v, row[a.index()]);
    }
}

#[test]
fn standard_min_max_counts_match_the_closed_form() {
    let field = Field::new(4).unwrap();
    let mut r = rng(9);
    for d in 2..=6 {
        let labels = random_labels(&mut r, 16, d);
        let rows = random_metric_rows(&mut r, 16, d, 3.0);
        let mut ops = OpCounter::default();
        check_node(&field, CheckRule::MinMax, &as_refs(&rows), &labels, &mut ops).unwrap();
        let steps = 3 * (d as u64 - 2);
        assert_eq!(ops.comparisons, steps * (2 * 256 - 16), "d = {d}");
    }
}
