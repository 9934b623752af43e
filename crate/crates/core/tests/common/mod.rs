#![allow(dead_code)]

use nbldpc::channel::{intrinsic, Convention, IntrinsicInfo, Modulation};
use nbldpc::code::{random_regular_code, Code};
use nbldpc::decoders::{a_posteriori_order, Decoder, DecoderConfig, Rule};
use nbldpc::gf::{Field, FieldElement};
use nbldpc::sim::Link;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_labels(rng: &mut ChaCha8Rng, q: usize, d: usize) -> Vec<FieldElement> {
    (0..d).map(|_| FieldElement(rng.gen_range(1..q) as u8)).collect()
}

/// Nonnegative rows with a zero somewhere, like a normalized message.
pub fn random_metric_rows(rng: &mut ChaCha8Rng, q: usize, d: usize, scale: f64) -> Vec<Vec<f64>> {
    (0..d)
        .map(|_| {
            let mut row: Vec<f64> = (0..q).map(|_| rng.gen::<f64>() * scale).collect();
            let z = rng.gen_range(0..q);
            row[z] = 0.0;
            row
        })
        .collect()
}

pub fn random_probability_rows(rng: &mut ChaCha8Rng, q: usize, d: usize) -> Vec<Vec<f64>> {
    (0..d)
        .map(|_| {
            let row: Vec<f64> = (0..q).map(|_| rng.gen::<f64>() + 1e-3).collect();
            let s: f64 = row.iter().sum();
            row.into_iter().map(|x| x / s).collect()
        })
        .collect()
}

pub fn as_refs(rows: &[Vec<f64>]) -> Vec<&[f64]> {
    rows.iter().map(|r| r.as_slice()).collect()
}

/// Random log-probability metrics for codes without a matching constellation.
pub fn random_intrinsic(rng: &mut ChaCha8Rng, n: usize, q: usize, convention: Convention) -> IntrinsicInfo {
    let metrics = (0..n * q).map(|_| rng.gen::<f64>() * 4.0).collect();
    IntrinsicInfo::from_metrics(metrics, q, convention, 1.0).unwrap()
}

pub fn gf16_half_rate_code(n: usize, seed: u64) -> Code {
    random_regular_code(n, 3, 6, Field::new(4).unwrap(), seed).unwrap()
}

/// Received samples for one random codeword.
pub struct Channel {
    pub link: Link,
    pub sigma: f64,
}

impl Channel {
    pub fn new(code: Code, modulation: Modulation, ebno_db: f64) -> Channel {
        let link = Link::new(code, modulation).unwrap();
        let sigma = link.sigma(ebno_db).unwrap();
        Channel { link, sigma }
    }

    pub fn intrinsic(&self, seed: u64, frame: usize, convention: Convention) -> IntrinsicInfo {
        let f = self.link.draw_frame(self.sigma, seed, 0, frame).unwrap();
        intrinsic(&f.received, self.sigma, self.link.modulation, convention).unwrap()
    }
}

/// `orders[iteration][node]` for a fixed number of iterations without early stop.
pub fn orders_per_iteration(
    code: &Code,
    intr: &IntrinsicInfo,
    config: DecoderConfig,
    iterations: usize,
) -> Vec<Vec<Vec<FieldElement>>> {
    let config = config.with_max_iterations(iterations).with_early_stop(false);
    let rule = config.rule;
    let mut out = Vec::new();
    let mut dec = Decoder::new(code, config).unwrap();
    dec.decode_observed(intr, |view| {
        out.push(
            (0..code.n())
                .map(|n| a_posteriori_order(view.a_posteriori_row(n), rule))
                .collect(),
        );
    })
    .unwrap();
    assert_eq!(out.len(), iterations);
    out
}

pub fn decode_with(code: &Code, intr: &IntrinsicInfo, rule: Rule) -> nbldpc::DecodeResult {
    nbldpc::decode(code, intr, &DecoderConfig::new(rule)).unwrap()
}

/// Wilson score interval at 95%.
pub fn wilson(errors: u64, trials: u64) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = errors as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    (centre - half, centre + half)
}
