use std::ops::{Add, AddAssign, Sub};

/// Arithmetic operation counts.
///
/// One comparison per binary min or max, one addition per binary sum or
/// difference, one multiplication per product, quotient, power or root.
/// `pair_evaluations` counts the `(a', a'')` pairs visited by two-operand
/// check-node steps (q^2 per step for the exhaustive rules).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub additions: u64,
    pub comparisons: u64,
    pub multiplications: u64,
    pub pair_evaluations: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.additions + self.comparisons + self.multiplications
    }
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.additions += rhs.additions;
        self.comparisons += rhs.comparisons;
        self.multiplications += rhs.multiplications;
        self.pair_evaluations += rhs.pair_evaluations;
    }
}

impl Add for OpCounter {
    type Output = OpCounter;
    fn add(mut self, rhs: Self) -> OpCounter {
        self += rhs;
        self
    }
}

impl Sub for OpCounter {
    type Output = OpCounter;
    fn sub(self, rhs: Self) -> OpCounter {
        OpCounter {
            additions: self.additions - rhs.additions,
            comparisons: self.comparisons - rhs.comparisons,
            multiplications: self.multiplications - rhs.multiplications,
            pair_evaluations: self.pair_evaluations - rhs.pair_evaluations,
        }
    }
}
