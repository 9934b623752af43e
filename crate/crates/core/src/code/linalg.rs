//! Gaussian elimination over GF(q): rank, systematic form, encoding and
//! exhaustive codeword enumeration for small codes.

use super::{Code, SymbolVector};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Reduced row echelon form of H.
///
/// Pivot columns carry the parity symbols and free columns carry information
/// symbols; `column_order` (pivots then free columns) is the permutation that
/// brings H to `[I | P]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystematicForm {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    /// `rank` rows of length N, each with a 1 in its pivot column.
    pub rref: Vec<Vec<FieldElement>>,
}

impl SystematicForm {
    /// Pivoting takes the first row holding a nonzero entry in the current column.
    pub fn new(code: &Code) -> SystematicForm {
        let field = code.field();
        let n = code.n();
        let mut rows: Vec<Vec<FieldElement>> = code
            .rows()
            .iter()
            .map(|row| {
                let mut dense = vec![FieldElement::ZERO; n];
                for e in row {
                    dense[e.var] = e.label;
                }
                dense
            })
            .collect();

        let mut rank = 0;
        let mut pivot_cols = Vec::new();
        let mut free_cols = Vec::new();
        for col in 0..n {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                free_cols.push(col);
                continue;
            };
            rows.swap(rank, pivot);
            let scale = field.inv_unchecked(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = field.mul(*x, scale);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let factor = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        SystematicForm {
            rank,
            pivot_cols,
            free_cols,
            rref: rows,
        }
    }

    pub fn dimension(&self) -> usize {
        self.free_cols.len()
    }

    pub fn column_order(&self) -> Vec<usize> {
        self.pivot_cols.iter().chain(&self.free_cols).copied().collect()
    }
}

/// Systematic encoder: information symbols sit on the free columns of the RREF.
#[derive(Debug, Clone)]
pub struct Encoder {
    field: Field,
    n: usize,
    form: SystematicForm,
}

impl Encoder {
    pub fn new(code: &Code) -> Encoder {
        Encoder {
            field: code.field().clone(),
            n: code.n(),
            form: SystematicForm::new(code),
        }
    }

    /// Number of information symbols K = N - rank(H).
    pub fn k(&self) -> usize {
        self.form.dimension()
    }

    pub fn form(&self) -> &SystematicForm {
        &self.form
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.form.free_cols
    }

    pub fn encode(&self, info: &[FieldElement]) -> Result<SymbolVector> {
        if info.len() != self.k() {
            return Err(Error::SizeMismatch(format!(
                "expected {} information symbols, got {}",
                self.k(),
                info.len()
            )));
        }
        let mut word = vec![FieldElement::ZERO; self.n];
        for (&col, &u) in self.form.free_cols.iter().zip(info) {
            word[col] = u;
        }
        // x_pivot + sum_free r[free] * u = 0, and -1 = 1 in characteristic 2
        for (row, &pcol) in self.form.rref.iter().zip(&self.form.pivot_cols) {
            let mut acc = FieldElement::ZERO;
            for (&col, &u) in self.form.free_cols.iter().zip(info) {
                acc = self.field.add(acc, self.field.mul(row[col], u));
            }
            word[pcol] = acc;
        }
        Ok(SymbolVector(word))
    }

    pub fn extract_info(&self, word: &[FieldElement]) -> Vec<FieldElement> {
        self.form.free_cols.iter().map(|&c| word[c]).collect()
    }
}

/// All codewords, in lexicographic order of their information symbols.
///
/// Refuses when `q^(N - rank)` exceeds `limit`.
pub fn enumerate_codewords(code: &Code, limit: u128) -> Result<Vec<SymbolVector>> {
    let encoder = Encoder::new(code);
    let k = encoder.k() as u32;
    let q = code.q() as u128;
    let count = q.checked_pow(k).unwrap_or(u128::MAX);
    if count > limit {
        return Err(Error::GuardExceeded { count, limit });
    }
    let mut info = vec![FieldElement::ZERO; k as usize];
    let mut words = Vec::with_capacity(count as usize);
    for _ in 0..count {
        words.push(encoder.encode(&info)?);
        for digit in info.iter_mut().rev() {
            if digit.index() + 1 < code.q() {
                digit.0 += 1;
                break;
            }
            *digit = FieldElement::ZERO;
        }
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn hamming74() -> Code {
        let h = [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]];
        let rows: Vec<Vec<(usize, u8)>> = h
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v == 1)
                    .map(|(i, _)| (i, 1))
                    .collect()
            })
            .collect();
        Code::from_rows(7, Field::new(1).unwrap(), &rows).unwrap()
    }

    /// Brute force over all q^N words; independent of elimination.
    fn brute_codewords(code: &Code) -> HashSet<Vec<u8>> {
        let q = code.q();
        let n = code.n();
        let mut out = HashSet::new();
        let mut w = vec![0u8; n];
        for _ in 0..q.pow(n as u32) {
            let word: Vec<FieldElement> = w.iter().map(|&v| FieldElement(v)).collect();
            if code.is_codeword(&word) {
                out.insert(w.clone());
            }
            for d in w.iter_mut().rev() {
                if (*d as usize) + 1 < q {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        out
    }

    #[test]
    fn single_gf4_check_has_four_codewords() {
        let code = Code::from_rows(2, Field::new(2).unwrap(), &[vec![(0, 1), (1, 2)]]).unwrap();
        let words = enumerate_codewords(&code, 1000).unwrap();
        assert_eq!(words.len(), 4);
        assert!(words.iter().all(|w| code.is_codeword(w)));
    }

    #[test]
    fn hamming_has_sixteen_codewords() {
        let code = hamming74();
        let words = enumerate_codewords(&code, 1000).unwrap();
        assert_eq!(words.len(), 16);
        let set: HashSet<Vec<u8>> = words.iter().map(|w| w.iter().map(|e| e.0).collect()).collect();
        assert_eq!(set, brute_codewords(&code));
    }

    #[test]
    fn full_rank_square_code_has_only_zero() {
        let f = Field::new(2).unwrap();
        let code = Code::from_rows(2, f, &[vec![(0, 1), (1, 1)], vec![(0, 1), (1, 2)]]).unwrap();
        let words = enumerate_codewords(&code, 10).unwrap();
        assert_eq!(words, vec![SymbolVector::zeros(2)]);
    }

    #[test]
    fn rank_deficient_code_matches_brute_force() {
        // third row = first + second over GF(4)
        let f = Field::new(2).unwrap();
        let code = Code::from_rows(
            4,
            f,
            &[
                vec![(0, 1), (1, 2)],
                vec![(2, 3), (3, 1)],
                vec![(0, 1), (1, 2), (2, 3), (3, 1)],
            ],
        )
        .unwrap();
        let form = SystematicForm::new(&code);
        assert_eq!(form.rank, 2);
        let words = enumerate_codewords(&code, 1000).unwrap();
        let set: HashSet<Vec<u8>> = words.iter().map(|w| w.iter().map(|e| e.0).collect()).collect();
        assert_eq!(set.len(), 16);
        assert_eq!(set, brute_codewords(&code));
    }

    #[test]
    fn guard_reports_count() {
        let code = hamming74();
        assert_eq!(
            enumerate_codewords(&code, 15),
            Err(Error::GuardExceeded { count: 16, limit: 15 })
        );
    }

    #[test]
    fn encoder_roundtrips_information() {
        let code = hamming74();
        let enc = Encoder::new(&code);
        let info: Vec<FieldElement> = [1, 0, 1, 1].iter().map(|&v| FieldElement(v)).collect();
        let word = enc.encode(&info).unwrap();
        assert!(code.is_codeword(&word));
        assert_eq!(enc.extract_info(&word), info);
        assert_eq!(enc.form().column_order().len(), 7);
    }
}
