use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Code, RowEntry};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

const MAX_SOCKET_SHUFFLES: usize = 10_000;

/// (dv, dc)-regular code from a seeded random socket permutation.
///
/// Permutations that put two sockets of one variable on the same check are
/// rejected and redrawn. Labels are uniform over the nonzero field elements.
pub fn random_regular_code(n: usize, dv: usize, dc: usize, field: Field, seed: u64) -> Result<Code> {
    if dc < 2 || dv < 1 || n == 0 {
        return Err(Error::Config(format!(
            "need N >= 1, dv >= 1 and dc >= 2 (got N={n}, dv={dv}, dc={dc})"
        )));
    }
    if !(n * dv).is_multiple_of(dc) {
        return Err(Error::Config(format!(
            "N*dv = {} is not divisible by dc = {dc}",
            n * dv
        )));
    }
    if dc > n {
        return Err(Error::Config(format!("dc = {dc} exceeds N = {n}")));
    }
    let m = n * dv / dc;
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sockets: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, dv)).collect();

    for _ in 0..MAX_SOCKET_SHUFFLES {
        sockets.shuffle(&mut rng);
        let simple = sockets.chunks(dc).all(|chunk| {
            let mut vars = chunk.to_vec();
            vars.sort_unstable();
            vars.windows(2).all(|w| w[0] != w[1])
        });
        if !simple {
            continue;
        }
        let rows: Vec<Vec<RowEntry>> = sockets
            .chunks(dc)
            .map(|chunk| {
                chunk
                    .iter()
                    .map(|&var| RowEntry {
                        var,
                        label: FieldElement(rng.gen_range(1..q) as u8),
                    })
                    .collect()
            })
            .collect();
        debug_assert_eq!(rows.len(), m);
        return Code::new(n, field, rows);
    }
    Err(Error::Construction(format!(
        "no simple ({dv},{dc})-regular graph found for N={n} after {MAX_SOCKET_SHUFFLES} shuffles"
    )))
}

/// Shape limits for [`random_tree_code`].
#[derive(Debug, Clone, Copy)]
pub struct TreeSpec {
    pub max_vars: usize,
    /// Depth in check layers below the root variable.
    pub depth: usize,
    pub max_checks_per_var: usize,
    pub max_check_degree: usize,
}

impl Default for TreeSpec {
    fn default() -> Self {
        TreeSpec {
            max_vars: 10,
            depth: 3,
            max_checks_per_var: 2,
            max_check_degree: 3,
        }
    }
}

/// Random cycle-free Tanner graph grown breadth-first from variable 0.
pub fn random_tree_code(field: Field, spec: TreeSpec, seed: u64) -> Result<Code> {
    if spec.max_vars < 2 || spec.depth < 1 || spec.max_checks_per_var < 1 || spec.max_check_degree < 2 {
        return Err(Error::Config(format!("degenerate tree spec {spec:?}")));
    }
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<RowEntry>> = Vec::new();
    let mut frontier = vec![0usize];
    let mut n = 1;
    let label = |rng: &mut ChaCha8Rng| FieldElement(rng.gen_range(1..q) as u8);

    for level in 0..spec.depth {
        let mut next = Vec::new();
        for &parent in &frontier {
            let lo = if level == 0 { 1 } else { 0 };
            let checks = rng.gen_range(lo..=spec.max_checks_per_var);
            for _ in 0..checks {
                if n >= spec.max_vars {
                    break;
                }
                let room = (spec.max_vars - n).min(spec.max_check_degree - 1);
                let children = rng.gen_range(1..=room);
                let mut row = vec![RowEntry {
                    var: parent,
                    label: label(&mut rng),
                }];
                for _ in 0..children {
                    row.push(RowEntry {
                        var: n,
                        label: label(&mut rng),
                    });
                    next.push(n);
                    n += 1;
                }
                rows.push(row);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let code = Code::new(n, field, rows)?;
    debug_assert!(code.is_tree());
    Ok(code)
}
