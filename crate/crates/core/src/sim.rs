//! Monte Carlo BER/FER simulation over the AWGN channel.
//!
//! Each frame draws its own random codeword and noise from a ChaCha stream
//! keyed by `(master seed, SNR index, frame index)`. Frames are decoded in
//! fixed-size batches and accumulated in index order, so records do not
//! depend on the number of workers.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{awgn, ebno_to_sigma, intrinsic, modulate, Modulation};
use crate::code::{parse_code_file, random_regular_code, Code, Encoder, SymbolVector};
use crate::decoders::{Decoder, DecoderConfig, OpCounter};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

const BATCH_FRAMES: usize = 64;

pub const CSV_HEADER: &str = "ebno_db,decoder,frames,bit_errors,frame_errors,ber,fer,avg_iterations,additions_per_bit,comparisons_per_bit,multiplications_per_bit";

#[derive(Debug, Clone, PartialEq)]
pub enum CodeSource {
    File(PathBuf),
    /// Random (dv, dc)-regular code over GF(q), seeded by the master seed.
    Generate {
        n: usize,
        dv: usize,
        dc: usize,
        q: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub code: CodeSource,
    pub decoder: DecoderConfig,
    pub modulation: Modulation,
    pub ebno_db: Vec<f64>,
    pub max_frames: usize,
    pub max_frame_errors: usize,
    pub seed: u64,
    pub workers: usize,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub ebno_db: f64,
    pub decoder: String,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub avg_iterations: f64,
    pub additions_per_bit: f64,
    pub comparisons_per_bit: f64,
    pub multiplications_per_bit: f64,
}

/// One transmitted frame.
#[derive(Debug, Clone)]
pub struct Frame {
    pub info: Vec<FieldElement>,
    pub codeword: SymbolVector,
    pub received: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FrameOutcome {
    pub bit_errors: u64,
    pub frame_error: bool,
    pub iterations: usize,
    pub ops: OpCounter,
}

/// RNG for one frame; the key layout keeps distinct `(snr, frame)` pairs on distinct streams.
pub fn frame_rng(seed: u64, snr_index: usize, frame_index: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(snr_index as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(frame_index as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Everything needed to draw and score frames for one code.
#[derive(Debug, Clone)]
pub struct Link {
    pub code: Code,
    pub encoder: Encoder,
    pub modulation: Modulation,
}

impl Link {
    pub fn new(code: Code, modulation: Modulation) -> Result<Link> {
        if modulation.cardinality() != code.q() {
            return Err(Error::Config(format!(
                "{} carries {} symbols but the code is over GF({})",
                modulation.name(),
                modulation.cardinality(),
                code.q()
            )));
        }
        let encoder = Encoder::new(&code);
        if encoder.k() == 0 {
            return Err(Error::Config("the code has no information symbols".into()));
        }
        Ok(Link {
            code,
            encoder,
            modulation,
        })
    }

    /// K / N with K the true dimension.
    pub fn rate(&self) -> f64 {
        self.encoder.k() as f64 / self.code.n() as f64
    }

    pub fn info_bits(&self) -> u64 {
        self.encoder.k() as u64 * self.code.field().degree() as u64
    }

    pub fn sigma(&self, ebno_db: f64) -> Result<f64> {
        ebno_to_sigma(ebno_db, self.rate(), self.modulation.bits_per_symbol())
    }

    pub fn draw_frame(&self, sigma: f64, seed: u64, snr_index: usize, frame_index: usize) -> Result<Frame> {
        let mut rng = frame_rng(seed, snr_index, frame_index);
        let q = self.code.q();
        let info: Vec<FieldElement> = (0..self.encoder.k())
            .map(|_| FieldElement(rng.gen_range(0..q) as u8))
            .collect();
        let codeword = self.encoder.encode(&info)?;
        let samples = modulate(&codeword, self.modulation, q)?;
        let received = awgn(&samples, sigma, &mut rng);
        Ok(Frame {
            info,
            codeword,
            received,
        })
    }

    pub fn score(&self, frame: &Frame, decision: &[FieldElement]) -> (u64, bool) {
        let bit_errors = self
            .encoder
            .extract_info(decision)
            .iter()
            .zip(&frame.info)
            .map(|(a, b)| (a.0 ^ b.0).count_ones() as u64)
            .sum();
        (bit_errors, decision != frame.codeword.0.as_slice())
    }

    pub fn run_frame(&self, decoder: &mut Decoder<'_>, frame: &Frame, sigma: f64) -> Result<FrameOutcome> {
        let rule = decoder.config().rule;
        let intr = intrinsic(&frame.received, sigma, self.modulation, rule.convention())?;
        let result = decoder.decode(&intr)?;
        let (bit_errors, frame_error) = self.score(frame, &result.hard_decision);
        Ok(FrameOutcome {
            bit_errors,
            frame_error,
            iterations: result.iterations_used,
            ops: result.ops,
        })
    }
}

pub fn load_code(source: &CodeSource, seed: u64) -> Result<Code> {
    match source {
        CodeSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_code_file(&text)
        }
        CodeSource::Generate { n, dv, dc, q } => random_regular_code(*n, *dv, *dc, Field::with_cardinality(*q)?, seed),
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ebno_db.is_empty() {
            return Err(Error::Config("the Eb/N0 list is empty".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("at least one frame is required".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("at least one worker is required".into()));
        }
        self.decoder.validate()
    }
}

/// Simulates one SNR point on a ready [`Link`].
pub fn run_point(
    link: &Link,
    decoder: &DecoderConfig,
    ebno_db: f64,
    snr_index: usize,
    config: &SimConfig,
    pool: &rayon::ThreadPool,
) -> Result<SimRecord> {
    let sigma = link.sigma(ebno_db)?;
    let mut frames = 0u64;
    let mut bit_errors = 0u64;
    let mut frame_errors = 0u64;
    let mut iterations = 0u64;
    let mut ops = OpCounter::default();

    let mut next = 0usize;
    'batches: while next < config.max_frames {
        let end = (next + BATCH_FRAMES).min(config.max_frames);
        let outcomes: Vec<Result<FrameOutcome>> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map_init(
                    || Decoder::new(&link.code, *decoder),
                    |dec, idx| {
                        let dec = dec.as_mut().map_err(|e| e.clone())?;
                        let frame = link.draw_frame(sigma, config.seed, snr_index, idx)?;
                        link.run_frame(dec, &frame, sigma)
                    },
                )
                .collect()
        });
        for outcome in outcomes {
            let o = outcome?;
            frames += 1;
            bit_errors += o.bit_errors;
            frame_errors += o.frame_error as u64;
            iterations += o.iterations as u64;
            ops += o.ops;
            if config.max_frame_errors > 0 && frame_errors >= config.max_frame_errors as u64 {
                break 'batches;
            }
        }
        next = end;
    }

    let bits = (frames * link.info_bits()) as f64;
    Ok(SimRecord {
        ebno_db,
        decoder: decoder.rule.to_string(),
        frames,
        bit_errors,
        frame_errors,
        ber: bit_errors as f64 / bits,
        fer: frame_errors as f64 / frames as f64,
        avg_iterations: iterations as f64 / frames as f64,
        additions_per_bit: ops.additions as f64 / bits,
        comparisons_per_bit: ops.comparisons as f64 / bits,
        multiplications_per_bit: ops.multiplications as f64 / bits,
    })
}

pub fn run_sweep(config: &SimConfig) -> Result<Vec<SimRecord>> {
    config.validate()?;
    let code = load_code(&config.code, config.seed)?;
    sweep(&Link::new(code, config.modulation)?, config)
}

/// [`run_sweep`] on an already loaded link; `config.code` is ignored.
pub fn sweep(link: &Link, config: &SimConfig) -> Result<Vec<SimRecord>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    config
        .ebno_db
        .iter()
        .enumerate()
        .map(|(i, &ebno)| run_point(link, &config.decoder, ebno, i, config, &pool))
        .collect()
}

/// `%g`-style rendering with six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        format!("{}e{exp}", trim(mantissa))
    } else {
        trim(&format!("{:.*}", (5 - exp) as usize, x))
    }
}

pub fn emit_csv(records: &[SimRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            format_sig6(r.ebno_db),
            r.decoder,
            r.frames,
            r.bit_errors,
            r.frame_errors,
            format_sig6(r.ber),
            format_sig6(r.fer),
            format_sig6(r.avg_iterations),
            format_sig6(r.additions_per_bit),
            format_sig6(r.comparisons_per_bit),
            format_sig6(r.multiplications_per_bit),
        )
        .unwrap();
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<SimRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: "missing CSV header".into(),
            })
        }
    }
    lines
        .map(|(i, line)| {
            let err = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.into(),
            };
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 11 {
                return Err(err("expected 11 fields"));
            }
            let float = |s: &str| s.parse::<f64>().map_err(|_| err("bad float"));
            let int = |s: &str| s.parse::<u64>().map_err(|_| err("bad integer"));
            Ok(SimRecord {
                ebno_db: float(f[0])?,
                decoder: f[1].to_string(),
                frames: int(f[2])?,
                bit_errors: int(f[3])?,
                frame_errors: int(f[4])?,
                ber: float(f[5])?,
                fer: float(f[6])?,
                avg_iterations: float(f[7])?,
                additions_per_bit: float(f[8])?,
                comparisons_per_bit: float(f[9])?,
                multiplications_per_bit: float(f[10])?,
            })
        })
        .collect()
}

/// Parses `A:B:STEP` into `A, A+STEP, ...` up to and including `B`.
pub fn parse_ebno_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Config(format!("expected A:B:STEP, got {spec:?}"));
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match nums[..] {
        [a] => Ok(vec![a]),
        [a, b, step] => {
            if !(step > 0.0) || b < a {
                return Err(bad());
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| a + i as f64 * step).collect())
        }
        _ => Err(bad()),
    }
}
