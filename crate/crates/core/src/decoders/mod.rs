//! Flooding-schedule message passing for q-ary LDPC codes.
//!
//! Every rule shares the same schedule: all checks are processed, then all
//! variables, then the a-posteriori rows and hard decision are refreshed.
//! Rules differ in the check-node aggregation ([`CheckRule`]) and in how the
//! variable-to-check rows are re-referenced after summation:
//!
//! | rule                     | a-priori       | check node       | re-reference |
//! |--------------------------|----------------|------------------|--------------|
//! | `SumProduct`             | probabilities  | (+, x)           | renormalize  |
//! | `MinSum`                 | `LogProb`      | (min, +)         | row min (optional) |
//! | `MinSum0`                | `ZeroRef`      | (min, +)         | symbol 0     |
//! | `MinSumStar`             | `StarRef`      | (min, +)         | row min      |
//! | `PNorm(p)`, `Euclidean`  | `StarRef`      | (min, +) on x^p  | row min      |
//! | `MinMaxStandard`         | `StarRef`      | (min, max)       | row min      |
//! | `MinMaxSelective`        | `StarRef`      | selective (min, max) | row min  |

mod check;
mod ops;
mod selective;

pub use check::{
    check_node, check_node_min_max_selective, check_node_min_max_standard, check_node_min_sum, check_node_p_norm,
    check_node_sum_product, CheckRule, CheckWorkspace,
};
pub use ops::OpCounter;
pub use selective::{select, selective_min_max, selective_min_max_with, Selection, SelectiveScratch};

use std::fmt;
use std::str::FromStr;

use crate::channel::{Convention, IntrinsicInfo};
use crate::code::{Code, SymbolVector};
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use check::{normalize_probabilities, process_check};

/// Values closer than this are treated as tied when ranking symbols.
pub const ORDER_TIE_TOLERANCE: f64 = 1e-9;

/// Smallest probability kept when products are taken in the log domain.
const PROBABILITY_FLOOR: f64 = f64::MIN_POSITIVE;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rule {
    SumProduct,
    MinSum,
    MinSum0,
    MinSumStar,
    PNorm(f64),
    /// Identical to `PNorm(2.0)`.
    Euclidean,
    MinMaxStandard,
    MinMaxSelective,
}

impl Rule {
    /// A-priori convention the rule expects.
    pub fn convention(self) -> Convention {
        match self {
            Rule::SumProduct | Rule::MinSum => Convention::LogProb,
            Rule::MinSum0 => Convention::ZeroRef,
            _ => Convention::StarRef,
        }
    }

    /// Whether the most likely symbol maximizes (probabilities) rather than
    /// minimizes (metrics) the a-posteriori row.
    pub fn maximizes(self) -> bool {
        matches!(self, Rule::SumProduct)
    }

    pub fn check_rule(self, cot: f64) -> CheckRule {
        match self {
            Rule::SumProduct => CheckRule::SumProduct,
            Rule::MinSum | Rule::MinSum0 | Rule::MinSumStar => CheckRule::MinSum,
            Rule::PNorm(p) if p.is_infinite() => CheckRule::MinMax,
            Rule::PNorm(p) => CheckRule::PNorm(p),
            Rule::Euclidean => CheckRule::PNorm(2.0),
            Rule::MinMaxStandard => CheckRule::MinMax,
            Rule::MinMaxSelective => CheckRule::SelectiveMinMax { cot },
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::SumProduct => f.write_str("sp"),
            Rule::MinSum => f.write_str("ms"),
            Rule::MinSum0 => f.write_str("ms0"),
            Rule::MinSumStar => f.write_str("mss"),
            Rule::PNorm(p) => write!(f, "pnorm:{p}"),
            Rule::Euclidean => f.write_str("euclid"),
            Rule::MinMaxStandard => f.write_str("minmax"),
            Rule::MinMaxSelective => f.write_str("minmax-sel"),
        }
    }
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rule> {
        Ok(match s {
            "sp" => Rule::SumProduct,
            "ms" => Rule::MinSum,
            "ms0" => Rule::MinSum0,
            "mss" => Rule::MinSumStar,
            "euclid" => Rule::Euclidean,
            "minmax" => Rule::MinMaxStandard,
            "minmax-sel" => Rule::MinMaxSelective,
            other => match other.strip_prefix("pnorm:") {
                Some(p) => {
                    let p: f64 = match p {
                        "inf" => f64::INFINITY,
                        _ => p
                            .parse()
                            .map_err(|_| Error::Config(format!("invalid p-norm exponent {p:?}")))?,
                    };
                    Rule::PNorm(p)
                }
                None => return Err(Error::Config(format!("unknown decoder {s:?}"))),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderConfig {
    pub rule: Rule,
    pub max_iterations: usize,
    /// Target grand mean of the a-priori matrix (selective rule only).
    pub ai: f64,
    /// Cut-off threshold: messages at or above it are left out of selective steps.
    pub cot: f64,
    /// Stop as soon as the hard decision has zero syndrome.
    pub early_stop: bool,
    /// Subtract the row minimum from `MinSum` variable-to-check rows.
    pub normalize_log_domain: bool,
}

impl DecoderConfig {
    pub fn new(rule: Rule) -> DecoderConfig {
        DecoderConfig {
            rule,
            max_iterations: 200,
            ai: 12.0,
            cot: 31.0,
            early_stop: true,
            normalize_log_domain: true,
        }
    }

    pub fn with_max_iterations(mut self, iterations: usize) -> Self {
        self.max_iterations = iterations;
        self
    }

    pub fn with_early_stop(mut self, early_stop: bool) -> Self {
        self.early_stop = early_stop;
        self
    }

    pub fn with_selective(mut self, ai: f64, cot: f64) -> Self {
        self.ai = ai;
        self.cot = cot;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if let Rule::PNorm(p) = self.rule {
            if !(p >= 1.0) {
                return Err(Error::Config(format!("p-norm requires p >= 1, got {p}")));
            }
        }
        if self.rule == Rule::MinMaxSelective {
            if !(self.ai > 0.0) {
                return Err(Error::Config(format!("ai must be positive, got {}", self.ai)));
            }
            if !(self.cot >= 2.0) {
                return Err(Error::Config(format!("cot must be at least 2, got {}", self.cot)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub hard_decision: SymbolVector,
    /// N x q row-major a-posteriori matrix.
    pub a_posteriori: Vec<f64>,
    pub q: usize,
    pub iterations_used: usize,
    /// The hard decision satisfies every check.
    pub converged: bool,
    /// Totals, initialization included.
    pub ops: OpCounter,
    pub ops_per_iteration: Vec<OpCounter>,
}

impl DecodeResult {
    pub fn a_posteriori_row(&self, n: usize) -> &[f64] {
        &self.a_posteriori[n * self.q..(n + 1) * self.q]
    }
}

/// Decoder state after one iteration, handed to observers.
#[derive(Debug)]
pub struct IterationView<'a> {
    /// 1-based iteration number.
    pub iteration: usize,
    pub q: usize,
    pub a_posteriori: &'a [f64],
    /// Edge-major check-to-variable rows (edge order of [`Code`]).
    pub check_to_var: &'a [f64],
    /// Edge-major variable-to-check rows, as sent in the next iteration.
    pub var_to_check: &'a [f64],
    pub hard_decision: &'a [FieldElement],
}

impl IterationView<'_> {
    pub fn a_posteriori_row(&self, n: usize) -> &[f64] {
        &self.a_posteriori[n * self.q..(n + 1) * self.q]
    }
}

/// How a variable node re-references its outgoing rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rereference {
    None,
    /// Subtract the value at symbol 0.
    Zero,
    /// Subtract the row minimum.
    Min,
    /// Multiply instead of add, then renormalize to a probability row.
    Probability,
}

impl Rereference {
    pub fn for_config(config: &DecoderConfig) -> Rereference {
        match config.rule {
            Rule::SumProduct => Rereference::Probability,
            Rule::MinSum if !config.normalize_log_domain => Rereference::None,
            Rule::MinSum0 => Rereference::Zero,
            _ => Rereference::Min,
        }
    }
}

/// Scales a `StarRef` a-priori matrix so its grand mean equals `ai`.
pub fn normalize_intrinsic_ai(intrinsic: &IntrinsicInfo, ai: f64) -> Result<IntrinsicInfo> {
    if intrinsic.convention() != Convention::StarRef {
        return Err(Error::ConventionMismatch {
            expected: Convention::StarRef,
            found: intrinsic.convention(),
        });
    }
    if !(ai > 0.0) {
        return Err(Error::Config(format!("ai must be positive, got {ai}")));
    }
    let values = intrinsic.as_slice();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if !(mean > 0.0) {
        return Err(Error::Domain("a-priori information is identically zero".into()));
    }
    Ok(intrinsic.scaled(ai / mean))
}

/// Most likely symbol: argmin, or argmax when `maximize`; ties go to the
/// smallest symbol.
pub fn hard_decision(row: &[f64], rule: Rule) -> FieldElement {
    let mut best = 0;
    for (a, &v) in row.iter().enumerate().skip(1) {
        let better = if rule.maximizes() { v > row[best] } else { v < row[best] };
        if better {
            best = a;
        }
    }
    FieldElement(best as u8)
}

/// Symbols ranked most likely first. Values within [`ORDER_TIE_TOLERANCE`]
/// of the first member of a run are tied and listed by symbol value.
pub fn a_posteriori_order(row: &[f64], rule: Rule) -> Vec<FieldElement> {
    let key = |a: usize| if rule.maximizes() { -row[a] } else { row[a] };
    let mut idx: Vec<usize> = (0..row.len()).collect();
    idx.sort_by(|&a, &b| key(a).total_cmp(&key(b)).then(a.cmp(&b)));
    let mut start = 0;
    while start < idx.len() {
        let lead = key(idx[start]);
        let mut end = start + 1;
        while end < idx.len() && key(idx[end]) - lead <= ORDER_TIE_TOLERANCE {
            end += 1;
        }
        idx[start..end].sort_unstable();
        start = end;
    }
    idx.into_iter().map(|a| FieldElement(a as u8)).collect()
}

/// One variable node: returns the outgoing row for each incoming edge and the
/// a-posteriori row.
pub fn variable_node_update(
    intrinsic_row: &[f64],
    incoming: &[&[f64]],
    mode: Rereference,
    ops: &mut OpCounter,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let q = intrinsic_row.len();
    if let Some(r) = incoming.iter().find(|r| r.len() != q) {
        return Err(Error::SizeMismatch(format!(
            "incoming row of length {} with q = {q}",
            r.len()
        )));
    }
    let flat: Vec<f64> = incoming.iter().flat_map(|r| r.iter().copied()).collect();
    let mut out = vec![0.0; flat.len()];
    let mut post = vec![0.0; q];
    let mut scratch = Vec::new();
    var_update_flat(intrinsic_row, &flat, &mut out, &mut post, mode, &mut scratch, ops)?;
    Ok((out.chunks(q.max(1)).map(|c| c.to_vec()).collect(), post))
}

fn rereference(row: &mut [f64], mode: Rereference, ops: &mut OpCounter) -> Result<()> {
    let q = row.len() as u64;
    match mode {
        Rereference::None => {}
        Rereference::Zero => {
            let r = row[0];
            row.iter_mut().for_each(|x| *x -= r);
            ops.additions += q;
        }
        Rereference::Min => {
            let r = row.iter().copied().fold(f64::INFINITY, f64::min);
            row.iter_mut().for_each(|x| *x -= r);
            ops.comparisons += q - 1;
            ops.additions += q;
        }
        Rereference::Probability => {
            // row holds log-probabilities here
            let top = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            ops.comparisons += q - 1;
            row.iter_mut().for_each(|x| *x = (*x - top).exp());
            ops.additions += q;
            normalize_probabilities(row, ops)?;
        }
    }
    Ok(())
}

/// `incoming` and `outgoing` hold `dv` rows back to back.
fn var_update_flat(
    gamma: &[f64],
    incoming: &[f64],
    outgoing: &mut [f64],
    post: &mut [f64],
    mode: Rereference,
    scratch: &mut Vec<f64>,
    ops: &mut OpCounter,
) -> Result<()> {
    let q = gamma.len();
    let dv = incoming.len() / q;
    let log_domain = mode == Rereference::Probability;
    let terms: &[f64] = if log_domain {
        scratch.clear();
        scratch.extend(incoming.iter().map(|&p| p.max(PROBABILITY_FLOOR).ln()));
        scratch
    } else {
        incoming
    };
    let base: Vec<f64> = if log_domain {
        gamma.iter().map(|&p| p.max(PROBABILITY_FLOOR).ln()).collect()
    } else {
        gamma.to_vec()
    };

    for j in 0..dv {
        let row = &mut outgoing[j * q..(j + 1) * q];
        row.copy_from_slice(&base);
        for k in (0..dv).filter(|&k| k != j) {
            for (o, &b) in row.iter_mut().zip(&terms[k * q..(k + 1) * q]) {
                *o += b;
            }
        }
        let sums = (q * dv.saturating_sub(1)) as u64;
        if log_domain {
            ops.multiplications += sums;
        } else {
            ops.additions += sums;
        }
        rereference(row, mode, ops)?;
    }

    post.copy_from_slice(&base);
    for k in 0..dv {
        for (o, &b) in post.iter_mut().zip(&terms[k * q..(k + 1) * q]) {
            *o += b;
        }
    }
    if log_domain {
        ops.multiplications += (q * dv) as u64;
        rereference(post, Rereference::Probability, ops)?;
    } else {
        ops.additions += (q * dv) as u64;
    }
    Ok(())
}

/// Message-passing decoder bound to one code. Buffers are reused across frames.
#[derive(Debug)]
pub struct Decoder<'a> {
    code: &'a Code,
    config: DecoderConfig,
    check_rule: CheckRule,
    mode: Rereference,
    gamma: Vec<f64>,
    var_to_check: Vec<f64>,
    check_to_var: Vec<f64>,
    a_posteriori: Vec<f64>,
    hard: Vec<FieldElement>,
    labels: Vec<Vec<FieldElement>>,
    workspace: CheckWorkspace,
    var_in: Vec<f64>,
    var_out: Vec<f64>,
    scratch: Vec<f64>,
}

impl<'a> Decoder<'a> {
    pub fn new(code: &'a Code, config: DecoderConfig) -> Result<Decoder<'a>> {
        config.validate()?;
        let eq = code.num_edges() * code.q();
        Ok(Decoder {
            code,
            config,
            check_rule: config.rule.check_rule(config.cot),
            mode: Rereference::for_config(&config),
            gamma: Vec::new(),
            var_to_check: vec![0.0; eq],
            check_to_var: vec![0.0; eq],
            a_posteriori: vec![0.0; code.n() * code.q()],
            hard: vec![FieldElement::ZERO; code.n()],
            labels: code
                .rows()
                .iter()
                .map(|r| r.iter().map(|e| e.label).collect())
                .collect(),
            workspace: CheckWorkspace::default(),
            var_in: Vec::new(),
            var_out: Vec::new(),
            scratch: Vec::new(),
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.config
    }

    pub fn decode(&mut self, intrinsic: &IntrinsicInfo) -> Result<DecodeResult> {
        self.decode_observed(intrinsic, |_| {})
    }

    /// Decodes and calls `observer` after every iteration.
    pub fn decode_observed<F>(&mut self, intrinsic: &IntrinsicInfo, mut observer: F) -> Result<DecodeResult>
    where
        F: FnMut(&IterationView<'_>),
    {
        let code = self.code;
        let q = code.q();
        let rule = self.config.rule;
        if intrinsic.n() != code.n() || intrinsic.q() != q {
            return Err(Error::SizeMismatch(format!(
                "a-priori matrix is {}x{} but the code has N = {}, q = {q}",
                intrinsic.n(),
                intrinsic.q(),
                code.n()
            )));
        }
        if intrinsic.convention() != rule.convention() {
            return Err(Error::ConventionMismatch {
                expected: rule.convention(),
                found: intrinsic.convention(),
            });
        }

        let mut init_ops = OpCounter::default();
        self.init_gamma(intrinsic, &mut init_ops)?;
        for e in 0..code.num_edges() {
            let n = code.edge_var(e);
            self.var_to_check[e * q..(e + 1) * q].copy_from_slice(&self.gamma[n * q..(n + 1) * q]);
        }

        let mut ops_per_iteration = Vec::new();
        let mut converged = false;
        for iteration in 1..=self.config.max_iterations {
            let mut ops = OpCounter::default();
            self.check_pass(&mut ops)?;
            self.variable_pass(&mut ops)?;
            for n in 0..code.n() {
                self.hard[n] = hard_decision(&self.a_posteriori[n * q..(n + 1) * q], rule);
                ops.comparisons += q as u64 - 1;
            }
            ops_per_iteration.push(ops);
            converged = code.is_codeword(&self.hard);
            observer(&IterationView {
                iteration,
                q,
                a_posteriori: &self.a_posteriori,
                check_to_var: &self.check_to_var,
                var_to_check: &self.var_to_check,
                hard_decision: &self.hard,
            });
            if converged && self.config.early_stop {
                break;
            }
        }

        let ops = ops_per_iteration.iter().fold(init_ops, |acc, &o| acc + o);
        Ok(DecodeResult {
            hard_decision: SymbolVector(self.hard.clone()),
            a_posteriori: self.a_posteriori.clone(),
            q,
            iterations_used: ops_per_iteration.len(),
            converged,
            ops,
            ops_per_iteration,
        })
    }

    fn init_gamma(&mut self, intrinsic: &IntrinsicInfo, ops: &mut OpCounter) -> Result<()> {
        let q = intrinsic.q();
        match self.config.rule {
            Rule::MinMaxSelective => {
                let scaled = normalize_intrinsic_ai(intrinsic, self.config.ai)?;
                ops.additions += scaled.as_slice().len() as u64;
                ops.multiplications += scaled.as_slice().len() as u64 + 1;
                self.gamma = scaled.as_slice().to_vec();
            }
            Rule::SumProduct => {
                self.gamma = intrinsic.as_slice().iter().map(|&g| (-g).exp()).collect();
                for row in self.gamma.chunks_mut(q) {
                    normalize_probabilities(row, ops)?;
                }
            }
            _ => self.gamma = intrinsic.as_slice().to_vec(),
        }
        Ok(())
    }

    fn check_pass(&mut self, ops: &mut OpCounter) -> Result<()> {
        let code = self.code;
        let q = code.q();
        for m in 0..code.m() {
            let edges = code.check_edges(m);
            let span = edges.start * q..edges.end * q;
            process_check(
                code.field(),
                self.check_rule,
                &self.labels[m],
                &self.var_to_check[span.clone()],
                &mut self.check_to_var[span],
                &mut self.workspace,
                ops,
            )?;
        }
        Ok(())
    }

    fn variable_pass(&mut self, ops: &mut OpCounter) -> Result<()> {
        let code = self.code;
        let q = code.q();
        for n in 0..code.n() {
            let edges = code.var_edges(n);
            self.var_in.clear();
            for &e in edges {
                self.var_in.extend_from_slice(&self.check_to_var[e * q..(e + 1) * q]);
            }
            self.var_out.resize(self.var_in.len(), 0.0);
            var_update_flat(
                &self.gamma[n * q..(n + 1) * q],
                &self.var_in,
                &mut self.var_out,
                &mut self.a_posteriori[n * q..(n + 1) * q],
                self.mode,
                &mut self.scratch,
                ops,
            )?;
            for (j, &e) in edges.iter().enumerate() {
                self.var_to_check[e * q..(e + 1) * q].copy_from_slice(&self.var_out[j * q..(j + 1) * q]);
            }
        }
        Ok(())
    }
}

/// Decodes one frame with a fresh [`Decoder`].
pub fn decode(code: &Code, intrinsic: &IntrinsicInfo, config: &DecoderConfig) -> Result<DecodeResult> {
    Decoder::new(code, *config)?.decode(intrinsic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{intrinsic, modulate, Modulation};
    use crate::code::{random_regular_code, Encoder};
    use crate::gf::Field;

    const ALL_RULES: [Rule; 9] = [
        Rule::SumProduct,
        Rule::MinSum,
        Rule::MinSum0,
        Rule::MinSumStar,
        Rule::PNorm(1.0),
        Rule::PNorm(4.0),
        Rule::Euclidean,
        Rule::MinMaxStandard,
        Rule::MinMaxSelective,
    ];

    #[test]
    fn rule_names_roundtrip() {
        for rule in ALL_RULES {
            assert_eq!(rule.to_string().parse::<Rule>().unwrap(), rule);
        }
        assert_eq!("pnorm:inf".parse::<Rule>().unwrap(), Rule::PNorm(f64::INFINITY));
        assert!("nope".parse::<Rule>().is_err());
    }

    #[test]
    fn noiseless_codeword_converges_in_one_iteration() {
        let field = Field::new(4).unwrap();
        let code = random_regular_code(24, 2, 4, field, 3).unwrap();
        let enc = Encoder::new(&code);
        let info: Vec<FieldElement> = (0..enc.k()).map(|i| FieldElement((i * 5 % 16) as u8)).collect();
        let word = enc.encode(&info).unwrap();
        let y = modulate(&word, Modulation::Qam16, 16).unwrap();
        for rule in ALL_RULES {
            let intr = intrinsic(&y, 0.4, Modulation::Qam16, rule.convention()).unwrap();
            let res = decode(&code, &intr, &DecoderConfig::new(rule)).unwrap();
            assert!(res.converged, "{rule}");
            assert_eq!(res.iterations_used, 1, "{rule}");
            assert_eq!(res.hard_decision, word, "{rule}");
        }
    }

    #[test]
    fn convention_and_size_mismatch() {
        let field = Field::new(2).unwrap();
        let code = random_regular_code(8, 2, 4, field, 1).unwrap();
        let intr = IntrinsicInfo::from_metrics(vec![0.5; 8 * 4], 4, Convention::ZeroRef, 1.0).unwrap();
        assert!(matches!(
            decode(&code, &intr, &DecoderConfig::new(Rule::MinMaxStandard)),
            Err(Error::ConventionMismatch { .. })
        ));
        let short = IntrinsicInfo::from_metrics(vec![0.5; 4 * 4], 4, Convention::StarRef, 1.0).unwrap();
        assert!(matches!(
            decode(&code, &short, &DecoderConfig::new(Rule::MinMaxStandard)),
            Err(Error::SizeMismatch(_))
        ));
        let bad = DecoderConfig::new(Rule::MinMaxSelective).with_selective(12.0, 1.0);
        assert!(decode(&code, &intr.with_convention(Convention::StarRef), &bad).is_err());
    }

    #[test]
    fn ai_normalization() {
        let metrics: Vec<f64> = vec![0.0, 6.0, 12.0, 6.0, 0.0, 4.0, 8.0, 12.0];
        let intr = IntrinsicInfo::from_metrics(metrics.clone(), 4, Convention::StarRef, 1.0).unwrap();
        let scaled = normalize_intrinsic_ai(&intr, 12.0).unwrap();
        assert_eq!(scaled.as_slice(), metrics.iter().map(|x| x * 2.0).collect::<Vec<_>>());
        assert!(scaled
            .rows()
            .all(|r| r.iter().copied().fold(f64::INFINITY, f64::min) == 0.0));
        let zero = IntrinsicInfo::from_metrics(vec![0.0; 8], 4, Convention::StarRef, 1.0).unwrap();
        assert!(matches!(normalize_intrinsic_ai(&zero, 12.0), Err(Error::Domain(_))));
        let wrong = intr.with_convention(Convention::ZeroRef);
        assert!(normalize_intrinsic_ai(&wrong, 12.0).is_err());
    }

    #[test]
    fn hard_decision_ties_and_direction() {
        assert_eq!(
            hard_decision(&[4.0, 2.0, 9.0, 1.0], Rule::MinMaxStandard),
            FieldElement(3)
        );
        assert_eq!(hard_decision(&[1.0; 8], Rule::MinSum), FieldElement(0));
        let mut p = vec![0.05; 8];
        p[7] = 0.65;
        assert_eq!(hard_decision(&p, Rule::SumProduct), FieldElement(7));
    }

    #[test]
    fn orders() {
        let row = [0.0, 1.0, 2.0, 3.0];
        let id: Vec<FieldElement> = (0..4).map(FieldElement).collect();
        assert_eq!(a_posteriori_order(&row, Rule::MinSum), id);
        let shifted: Vec<f64> = row.iter().map(|x| x + 7.5).collect();
        assert_eq!(a_posteriori_order(&shifted, Rule::MinSum), id);
        let tied = [3.0, 1.0, 1.0 + 1e-12, 0.5];
        let order: Vec<u8> = a_posteriori_order(&tied, Rule::MinSum).iter().map(|a| a.0).collect();
        assert_eq!(order, vec![3, 1, 2, 0]);
        let probs = [0.1, 0.4, 0.2, 0.3];
        let order: Vec<u8> = a_posteriori_order(&probs, Rule::SumProduct)
            .iter()
            .map(|a| a.0)
            .collect();
        assert_eq!(order, vec![1, 3, 2, 0]);
    }

    #[test]
    fn variable_node_conventions() {
        let gamma = [0.0, 2.0, 1.0, 3.0];
        let b1 = [1.0, 0.0, 2.0, 0.5];
        let b2 = [0.0, 3.0, 0.25, 1.0];
        let mut ops = OpCounter::default();
        let (lone, post) = variable_node_update(&gamma, &[&b1], Rereference::Min, &mut ops).unwrap();
        assert_eq!(lone[0], gamma.to_vec());
        assert_eq!(post, vec![1.0, 2.0, 3.0, 3.5]);

        let (star, _) = variable_node_update(&gamma, &[&b1, &b2], Rereference::Min, &mut ops).unwrap();
        let (zero, _) = variable_node_update(&gamma, &[&b1, &b2], Rereference::Zero, &mut ops).unwrap();
        for (s, z) in star.iter().zip(&zero) {
            assert_eq!(s.iter().copied().fold(f64::INFINITY, f64::min), 0.0);
            assert_eq!(z[0], 0.0);
            let offset = s[0] - z[0];
            assert!(s.iter().zip(z).all(|(a, b)| (a - b - offset).abs() < 1e-12));
        }
    }
}
