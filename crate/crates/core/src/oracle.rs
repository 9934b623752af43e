//! Brute-force reference computations.
//!
//! Everything here works by direct enumeration of local configurations or
//! codewords and shares no code with the forward-backward decoders, so the
//! decoders can be checked against it.

use crate::channel::IntrinsicInfo;
use crate::code::{enumerate_codewords, Code, SymbolVector};
use crate::decoders::CheckRule;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Largest number of local configurations a single brute-force check-node
/// evaluation may visit.
pub const CONFIGURATION_LIMIT: u128 = 1_000_000;

/// Largest code dimension `q^K` the codeword-level oracles accept.
pub const CODEWORD_LIMIT: u128 = 100_000;

/// Every completion of a check row with `a_target = symbol`: `visit` receives
/// the full assignment (one symbol per row position) of each member of
/// `L(m | a_target = symbol)`.
pub fn for_each_local_configuration<F>(
    field: &Field,
    labels: &[FieldElement],
    target: usize,
    symbol: FieldElement,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[FieldElement]),
{
    let d = labels.len();
    if d < 2 || target >= d {
        return Err(Error::Contract(format!("target {target} on a check of degree {d}")));
    }
    let q = field.order();
    let count = (q as u128).pow(d as u32 - 2);
    if count > CONFIGURATION_LIMIT {
        return Err(Error::GuardExceeded {
            count,
            limit: CONFIGURATION_LIMIT,
        });
    }
    // the last non-target position is solved from the constraint
    let solved = if target == d - 1 { d - 2 } else { d - 1 };
    let free: Vec<usize> = (0..d).filter(|&i| i != target && i != solved).collect();
    let solved_inv = field.inv(labels[solved])?;
    let mut assignment = vec![FieldElement::ZERO; d];
    assignment[target] = symbol;
    loop {
        let partial = (0..d).filter(|&i| i != solved).fold(FieldElement::ZERO, |acc, i| {
            field.add(acc, field.mul(labels[i], assignment[i]))
        });
        assignment[solved] = field.mul(solved_inv, partial);
        visit(&assignment);

        let mut carry = true;
        for &i in free.iter().rev() {
            if assignment[i].index() + 1 < q {
                assignment[i] = FieldElement(assignment[i].0 + 1);
                carry = false;
                break;
            }
            assignment[i] = FieldElement::ZERO;
        }
        if carry {
            return Ok(());
        }
    }
}

/// Check-node message for `(target, symbol)` by enumeration of `L(m | a_target = symbol)`.
///
/// `rows[i]` is the incoming row on position `i`; the target's own row is
/// ignored. For `SumProduct` the unnormalized sum of products is returned.
/// `SelectiveMinMax` is evaluated as exact min-max.
pub fn brute_check_node(
    field: &Field,
    rule: CheckRule,
    rows: &[&[f64]],
    labels: &[FieldElement],
    target: usize,
    symbol: FieldElement,
) -> Result<f64> {
    if rows.len() != labels.len() {
        return Err(Error::SizeMismatch("rows and labels differ in length".into()));
    }
    let mut best = match rule {
        CheckRule::SumProduct => 0.0,
        _ => f64::INFINITY,
    };
    for_each_local_configuration(field, labels, target, symbol, |conf| {
        let others = conf
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != target)
            .map(|(i, a)| rows[i][a.index()]);
        match rule {
            CheckRule::MinSum => best = best.min(others.sum()),
            CheckRule::PNorm(p) if p.is_infinite() => best = best.min(others.fold(f64::NEG_INFINITY, f64::max)),
            CheckRule::PNorm(p) => best = best.min(others.map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)),
            CheckRule::MinMax | CheckRule::SelectiveMinMax { .. } => {
                best = best.min(others.fold(f64::NEG_INFINITY, f64::max))
            }
            CheckRule::SumProduct => best += others.product::<f64>(),
        }
    })?;
    Ok(best)
}

/// The full outgoing row for `target`, normalized to a probability row for `SumProduct`.
pub fn brute_check_row(
    field: &Field,
    rule: CheckRule,
    rows: &[&[f64]],
    labels: &[FieldElement],
    target: usize,
) -> Result<Vec<f64>> {
    let mut row = field
        .elements()
        .map(|a| brute_check_node(field, rule, rows, labels, target, a))
        .collect::<Result<Vec<f64>>>()?;
    if rule == CheckRule::SumProduct {
        let s: f64 = row.iter().sum();
        row.iter_mut().for_each(|x| *x /= s);
    }
    Ok(row)
}

fn word_cost(intrinsic: &IntrinsicInfo, word: &[FieldElement]) -> f64 {
    word.iter().enumerate().map(|(k, a)| intrinsic.row(k)[a.index()]).sum()
}

/// Maximum-likelihood codeword: smallest total metric, ties to the
/// lexicographically smallest word.
pub fn ml_decode(code: &Code, intrinsic: &IntrinsicInfo) -> Result<SymbolVector> {
    if intrinsic.n() != code.n() || intrinsic.q() != code.q() {
        return Err(Error::SizeMismatch("a-priori matrix does not match the code".into()));
    }
    let words = enumerate_codewords(code, CODEWORD_LIMIT)?;
    let mut best: Option<(f64, SymbolVector)> = None;
    for w in words {
        let cost = word_cost(intrinsic, &w);
        let better = match &best {
            None => true,
            Some((c, b)) => cost < *c || (cost == *c && w.0 < b.0),
        };
        if better {
            best = Some((cost, w));
        }
    }
    Ok(best.expect("the zero word is always a codeword").1)
}

/// Limits of message passing on a cycle-free graph for one variable node.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeLimits {
    /// `min { sum_k gamma_k(a_k) : a in C, a_n = a }`.
    pub min_sum: Vec<f64>,
    /// `min_sum` minus the best total over codewords vanishing on every
    /// variable that shares a check with `n` (including `n`).
    pub min_sum_zero: Vec<f64>,
}

pub fn tree_aposteriori_oracle(code: &Code, intrinsic: &IntrinsicInfo, n: usize) -> Result<TreeLimits> {
    if !code.is_tree() {
        return Err(Error::Contract(
            "the Tanner graph has a cycle or is disconnected".into(),
        ));
    }
    if n >= code.n() || intrinsic.n() != code.n() || intrinsic.q() != code.q() {
        return Err(Error::SizeMismatch("node or a-priori matrix out of range".into()));
    }
    let words = enumerate_codewords(code, CODEWORD_LIMIT)?;
    let mut neighborhood = vec![false; code.n()];
    for m in code.var_checks(n) {
        for e in code.row(m) {
            neighborhood[e.var] = true;
        }
    }

    let mut min_sum = vec![f64::INFINITY; code.q()];
    let mut vanishing = f64::INFINITY;
    for w in &words {
        let cost = word_cost(intrinsic, w);
        let a = w[n].index();
        min_sum[a] = min_sum[a].min(cost);
        if w.iter().zip(&neighborhood).all(|(s, &inside)| !inside || s.is_zero()) {
            vanishing = vanishing.min(cost);
        }
    }
    let min_sum_zero = min_sum.iter().map(|v| v - vanishing).collect();
    Ok(TreeLimits { min_sum, min_sum_zero })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PigeonholeReport {
    /// `witnesses[a] = Some((a', a''))` with `h a = h' a' + h'' a''`.
    pub witnesses: Vec<Option<(FieldElement, FieldElement)>>,
}

impl PigeonholeReport {
    pub fn success(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    /// First symbol without a witness.
    pub fn violation(&self) -> Option<FieldElement> {
        self.witnesses
            .iter()
            .position(Option::is_none)
            .map(|a| FieldElement(a as u8))
    }
}

/// Searches `left x right` for a solution of `h a = h' a' + h'' a''` for every `a`.
pub fn verify_pigeonhole(
    field: &Field,
    h: FieldElement,
    h_left: FieldElement,
    h_right: FieldElement,
    left: &[FieldElement],
    right: &[FieldElement],
) -> Result<PigeonholeReport> {
    if h.is_zero() || h_left.is_zero() || h_right.is_zero() {
        return Err(Error::Contract("coefficients must be nonzero".into()));
    }
    let witnesses = field
        .elements()
        .map(|a| {
            let target = field.mul(h, a);
            left.iter().find_map(|&x| {
                right
                    .iter()
                    .find(|&&y| field.add(field.mul(h_left, x), field.mul(h_right, y)) == target)
                    .map(|&y| (x, y))
            })
        })
        .collect();
    Ok(PigeonholeReport { witnesses })
}
