//! Check-node processing by forward-backward recursion.
//!
//! Incoming rows are first moved to the label domain, `A_i(h_i x) = alpha_i(x)`,
//! so that every two-operand step becomes an XOR convolution
//! `out(x' ^ y) = (+) F(x') (x) G(y)` in one of the semirings (min, +),
//! (min, max) or (+, x). With `F_i` accumulating positions `0..=i` and `B_i`
//! positions `i..d`, the leave-one-out aggregate for position `i` is
//! `Z_i = F_{i-1} (x) B_{i+1}` and the outgoing message is `beta_i(a) = Z_i(h_i a)`.

use super::ops::OpCounter;
use super::selective::{selective_min_max_with, SelectiveScratch};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Check-node aggregation rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckRule {
    /// min over completions of the sum of incoming values.
    MinSum,
    /// min over completions of the p-norm, evaluated on p-th powers.
    PNorm(f64),
    /// min over completions of the largest incoming value.
    MinMax,
    /// Min-max restricted to bucket selections below `cot`.
    SelectiveMinMax { cot: f64 },
    /// Sum over completions of the product of incoming probabilities.
    SumProduct,
}

impl CheckRule {
    fn requires_nonnegative(&self) -> bool {
        matches!(
            self,
            CheckRule::PNorm(_) | CheckRule::MinMax | CheckRule::SelectiveMinMax { .. }
        )
    }
}

/// Reusable buffers for one check node of degree up to `d`.
#[derive(Debug, Default, Clone)]
pub struct CheckWorkspace {
    label_domain: Vec<f64>,
    forward: Vec<f64>,
    backward: Vec<f64>,
    merged: Vec<f64>,
    selective: SelectiveScratch,
}

fn convolve(
    rule: CheckRule,
    f: &[f64],
    g: &[f64],
    out: &mut [f64],
    ops: &mut OpCounter,
    scratch: &mut SelectiveScratch,
) -> Result<()> {
    let q = f.len();
    let qq = (q * q) as u64;
    match rule {
        CheckRule::MinSum | CheckRule::PNorm(_) => {
            out.fill(f64::INFINITY);
            for (x, &fv) in f.iter().enumerate() {
                for (y, &gv) in g.iter().enumerate() {
                    let v = fv + gv;
                    let t = &mut out[x ^ y];
                    if v < *t {
                        *t = v;
                    }
                }
            }
            ops.additions += qq;
            ops.comparisons += qq - q as u64;
            ops.pair_evaluations += qq;
        }
        CheckRule::MinMax => {
            out.fill(f64::INFINITY);
            for (x, &fv) in f.iter().enumerate() {
                for (y, &gv) in g.iter().enumerate() {
                    let v = if fv >= gv { fv } else { gv };
                    let t = &mut out[x ^ y];
                    if v < *t {
                        *t = v;
                    }
                }
            }
            ops.comparisons += 2 * qq - q as u64;
            ops.pair_evaluations += qq;
        }
        CheckRule::SelectiveMinMax { cot } => selective_min_max_with(f, g, cot, out, ops, scratch),
        CheckRule::SumProduct => {
            out.fill(0.0);
            for (x, &fv) in f.iter().enumerate() {
                for (y, &gv) in g.iter().enumerate() {
                    out[x ^ y] += fv * gv;
                }
            }
            ops.multiplications += qq;
            ops.additions += qq - q as u64;
            ops.pair_evaluations += qq;
            normalize_probabilities(out, ops)?;
        }
    }
    Ok(())
}

pub(crate) fn normalize_probabilities(row: &mut [f64], ops: &mut OpCounter) -> Result<()> {
    let sum: f64 = row.iter().sum();
    ops.additions += row.len() as u64 - 1;
    if !(sum > 0.0) || !sum.is_finite() {
        return Err(Error::Numerical(format!("probability row sums to {sum}")));
    }
    let inv = 1.0 / sum;
    for x in row.iter_mut() {
        *x *= inv;
    }
    ops.multiplications += row.len() as u64 + 1;
    Ok(())
}

/// Computes every outgoing message of one check node.
///
/// `input` holds the d incoming rows back to back (d * q values) in the same
/// order as `labels`; `output` receives the d outgoing rows in that order.
pub(crate) fn process_check(
    field: &Field,
    rule: CheckRule,
    labels: &[FieldElement],
    input: &[f64],
    output: &mut [f64],
    ws: &mut CheckWorkspace,
    ops: &mut OpCounter,
) -> Result<()> {
    let q = field.order();
    let d = labels.len();
    if d < 2 {
        return Err(Error::Contract(format!("check node degree {d} is below 2")));
    }
    debug_assert_eq!(input.len(), d * q);
    debug_assert_eq!(output.len(), d * q);

    ws.label_domain.resize(d * q, 0.0);
    ws.forward.resize(d * q, 0.0);
    ws.backward.resize(d * q, 0.0);
    ws.merged.resize(q, 0.0);

    for (i, &h) in labels.iter().enumerate() {
        let perm = field.mul_row(h);
        let src = &input[i * q..(i + 1) * q];
        let dst = &mut ws.label_domain[i * q..(i + 1) * q];
        match rule {
            CheckRule::PNorm(p) if p != 1.0 => {
                for (x, &v) in src.iter().enumerate() {
                    dst[perm[x] as usize] = if p == 2.0 { v * v } else { v.powf(p) };
                }
                ops.multiplications += q as u64;
            }
            _ => {
                for (x, &v) in src.iter().enumerate() {
                    dst[perm[x] as usize] = v;
                }
            }
        }
    }

    let (a, fw, bw, sel) = (&ws.label_domain, &mut ws.forward, &mut ws.backward, &mut ws.selective);
    fw[..q].copy_from_slice(&a[..q]);
    for i in 1..d - 1 {
        let (done, rest) = fw.split_at_mut(i * q);
        convolve(
            rule,
            &done[(i - 1) * q..],
            &a[i * q..(i + 1) * q],
            &mut rest[..q],
            ops,
            sel,
        )?;
    }
    bw[(d - 1) * q..].copy_from_slice(&a[(d - 1) * q..]);
    for i in (1..d - 1).rev() {
        let (head, done) = bw.split_at_mut((i + 1) * q);
        convolve(rule, &done[..q], &a[i * q..(i + 1) * q], &mut head[i * q..], ops, sel)?;
    }

    for (i, &h) in labels.iter().enumerate() {
        let z: &[f64] = if i == 0 {
            &bw[q..2 * q]
        } else if i == d - 1 {
            &fw[(d - 2) * q..(d - 1) * q]
        } else {
            convolve(
                rule,
                &fw[(i - 1) * q..i * q],
                &bw[(i + 1) * q..(i + 2) * q],
                &mut ws.merged,
                ops,
                sel,
            )?;
            &ws.merged
        };
        let perm = field.mul_row(h);
        let dst = &mut output[i * q..(i + 1) * q];
        for (x, o) in dst.iter_mut().enumerate() {
            *o = z[perm[x] as usize];
        }
        match rule {
            CheckRule::PNorm(p) if p != 1.0 => {
                for o in dst.iter_mut() {
                    *o = if p == 2.0 { o.sqrt() } else { o.powf(1.0 / p) };
                }
                ops.multiplications += q as u64;
            }
            _ => {}
        }
    }
    Ok(())
}

fn flatten_rows(field: &Field, rows: &[&[f64]], labels: &[FieldElement], rule: CheckRule) -> Result<Vec<f64>> {
    let q = field.order();
    if rows.len() != labels.len() {
        return Err(Error::SizeMismatch(format!(
            "{} incoming rows but {} labels",
            rows.len(),
            labels.len()
        )));
    }
    if rows.len() < 2 {
        return Err(Error::Contract(format!("check node degree {} is below 2", rows.len())));
    }
    if let Some(h) = labels.iter().find(|h| h.is_zero() || h.index() >= q) {
        return Err(Error::Contract(format!("invalid edge label {h}")));
    }
    let mut flat = Vec::with_capacity(rows.len() * q);
    for row in rows {
        if row.len() != q {
            return Err(Error::SizeMismatch(format!("row of length {} in GF({q})", row.len())));
        }
        if rule.requires_nonnegative() && row.iter().any(|&v| v < 0.0) {
            return Err(Error::Contract("negative incoming message".into()));
        }
        if rule == CheckRule::SumProduct {
            let sum: f64 = row.iter().sum();
            if row.iter().any(|&v| v < 0.0) || (sum - 1.0).abs() > 1e-9 {
                return Err(Error::Contract(format!("not a probability row (sum {sum})")));
            }
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

/// Runs `rule` on one check node: `rows[i]` is the incoming row on the edge
/// labeled `labels[i]`, and entry `i` of the result is the leave-one-out
/// outgoing row for that edge.
pub fn check_node(
    field: &Field,
    rule: CheckRule,
    rows: &[&[f64]],
    labels: &[FieldElement],
    ops: &mut OpCounter,
) -> Result<Vec<Vec<f64>>> {
    if let CheckRule::PNorm(p) = rule {
        if !(p >= 1.0) {
            return Err(Error::Config(format!("p-norm requires p >= 1, got {p}")));
        }
        if p.is_infinite() {
            return check_node(field, CheckRule::MinMax, rows, labels, ops);
        }
    }
    if let CheckRule::SelectiveMinMax { cot } = rule {
        if !(cot >= 2.0) {
            return Err(Error::Config(format!("cut-off threshold must be >= 2, got {cot}")));
        }
    }
    let q = field.order();
    let input = flatten_rows(field, rows, labels, rule)?;
    let mut output = vec![0.0; input.len()];
    process_check(
        field,
        rule,
        labels,
        &input,
        &mut output,
        &mut CheckWorkspace::default(),
        ops,
    )?;
    Ok(output.chunks(q).map(|c| c.to_vec()).collect())
}

pub fn check_node_min_sum(
    field: &Field,
    rows: &[&[f64]],
    labels: &[FieldElement],
    ops: &mut OpCounter,
) -> Result<Vec<Vec<f64>>> {
    check_node(field, CheckRule::MinSum, rows, labels, ops)
}

/// `p = f64::INFINITY` gives min-max.
pub fn check_node_p_norm(
    field: &Field,
    rows: &[&[f64]],
    labels: &[FieldElement],
    p: f64,
    ops: &mut OpCounter,
) -> Result<Vec<Vec<f64>>> {
    check_node(field, CheckRule::PNorm(p), rows, labels, ops)
}

pub fn check_node_min_max_standard(
    field: &Field,
    rows: &[&[f64]],
    labels: &[FieldElement],
    ops: &mut OpCounter,
) -> Result<Vec<Vec<f64>>> {
    check_node(field, CheckRule::MinMax, rows, labels, ops)
}

pub fn check_node_min_max_selective(
    field: &Field,
    rows: &[&[f64]],
    labels: &[FieldElement],
    cot: f64,
    ops: &mut OpCounter,
) -> Result<Vec<Vec<f64>>> {
    check_node(field, CheckRule::SelectiveMinMax { cot }, rows, labels, ops)
}

pub fn check_node_sum_product(
    field: &Field,
    rows: &[&[f64]],
    labels: &[FieldElement],
    ops: &mut OpCounter,
) -> Result<Vec<Vec<f64>>> {
    check_node(field, CheckRule::SumProduct, rows, labels, ops)
}
