//! Selective evaluation of one two-operand min-max step.
//!
//! For `f(a) = min { max(f'(a'), f''(a'')) : a' + a'' = a }` only the symbols
//! whose values fall in the lowest integer-part buckets are visited. Once the
//! two selections together hold at least q + 1 symbols, every target `a` is
//! reachable (any two subsets of GF(q) whose sizes sum past q produce every
//! sum) and the selection holds the q + 1 smallest values, so the result is
//! exact. Values at or above the cut-off never take part, and targets left
//! without an admissible pair saturate at the cut-off.

use super::ops::OpCounter;

/// The symbols admitted on each side of one selective step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Highest bucket index admitted, `None` when nothing is below the cut-off.
    pub threshold: Option<u64>,
}

impl Selection {
    /// Pairs the step will visit.
    pub fn cost(&self) -> usize {
        self.left.len() * self.right.len()
    }
}

/// Integer part of a nonnegative value; saturates, which keeps buckets monotone.
#[inline]
fn bucket(value: f64, cot: f64) -> Option<u64> {
    (value < cot).then_some(value as u64)
}

/// Reusable buffers for [`selective_min_max_with`].
#[derive(Debug, Default, Clone)]
pub struct SelectiveScratch {
    keys: Vec<u64>,
    left: Vec<u8>,
    right: Vec<u8>,
    filled: Vec<bool>,
}

/// Grows the bucket range `0..=t` until the two sides hold q + 1 symbols or
/// every value below `cot` is admitted.
pub fn select(left: &[f64], right: &[f64], cot: f64) -> Selection {
    let mut scratch = SelectiveScratch::default();
    let threshold = select_into(left, right, cot, &mut scratch);
    Selection {
        left: scratch.left.iter().map(|&i| i as usize).collect(),
        right: scratch.right.iter().map(|&i| i as usize).collect(),
        threshold,
    }
}

fn select_into(left: &[f64], right: &[f64], cot: f64, scratch: &mut SelectiveScratch) -> Option<u64> {
    let q = left.len();
    let keys = &mut scratch.keys;
    keys.clear();
    keys.extend(left.iter().chain(right).filter_map(|&v| bucket(v, cot)));
    scratch.left.clear();
    scratch.right.clear();
    let threshold = if keys.is_empty() {
        return None;
    } else if keys.len() <= q + 1 {
        *keys.iter().max().unwrap()
    } else {
        *keys.select_nth_unstable(q).1
    };
    let admit = |values: &[f64], buf: &mut Vec<u8>| {
        buf.extend(
            values
                .iter()
                .enumerate()
                .filter(|(_, &v)| bucket(v, cot).is_some_and(|k| k <= threshold))
                .map(|(i, _)| i as u8),
        );
    };
    admit(left, &mut scratch.left);
    admit(right, &mut scratch.right);
    Some(threshold)
}

/// `out[x ^ y] = min max(left[x], right[y])` over the selected symbols.
///
/// The max is only evaluated when both operands share a bucket; otherwise the
/// operand from the higher bucket is taken as is.
pub fn selective_min_max(left: &[f64], right: &[f64], cot: f64, out: &mut [f64], ops: &mut OpCounter) {
    selective_min_max_with(left, right, cot, out, ops, &mut SelectiveScratch::default());
}

pub fn selective_min_max_with(
    left: &[f64],
    right: &[f64],
    cot: f64,
    out: &mut [f64],
    ops: &mut OpCounter,
    scratch: &mut SelectiveScratch,
) {
    let q = left.len();
    debug_assert!(q <= 256 && right.len() == q && out.len() == q);
    select_into(left, right, cot, scratch);
    let filled = &mut scratch.filled;
    filled.clear();
    filled.resize(q, false);
    let mut comparisons = 0u64;

    for &x in &scratch.left {
        let x = x as usize;
        let lv = left[x];
        let lk = lv as u64;
        for &y in &scratch.right {
            let y = y as usize;
            let rv = right[y];
            let rk = rv as u64;
            let v = if lk == rk {
                comparisons += 1;
                if lv >= rv {
                    lv
                } else {
                    rv
                }
            } else if lk > rk {
                lv
            } else {
                rv
            };
            let t = x ^ y;
            if filled[t] {
                comparisons += 1;
                if v < out[t] {
                    out[t] = v;
                }
            } else {
                filled[t] = true;
                out[t] = v;
            }
        }
    }
    ops.comparisons += comparisons;
    ops.pair_evaluations += (scratch.left.len() * scratch.right.len()) as u64;
    for (o, f) in out.iter_mut().zip(filled.iter()) {
        if !f {
            *o = cot;
        }
    }
}
