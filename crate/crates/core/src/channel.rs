//! Symbol mapping, AWGN and channel a-priori information.
//!
//! The a-priori metric of symbol `a` at node `n` starts from the Gaussian
//! log-likelihood `d_n(a) = |y_n - s(a)|^2 / (2 sigma^2)` and is then
//! re-referenced according to a [`Convention`].

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::gf::FieldElement;

const QAM16_SCALE: f64 = 0.316_227_766_016_837_94; // 1/sqrt(10)

/// Gray map for two bits onto one 4-PAM axis: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
const GRAY_PAM4: [f64; 4] = [-3.0, -1.0, 3.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulation {
    /// 0 -> +1, 1 -> -1 on the real axis.
    Bpsk,
    /// Gray-labeled square 16-QAM: bits b3 b2 select the in-phase level and
    /// b1 b0 the quadrature level, scaled to unit average energy.
    Qam16,
}

impl Modulation {
    pub fn cardinality(self) -> usize {
        match self {
            Modulation::Bpsk => 2,
            Modulation::Qam16 => 16,
        }
    }

    pub fn bits_per_symbol(self) -> u32 {
        self.cardinality().trailing_zeros()
    }

    pub fn name(self) -> &'static str {
        match self {
            Modulation::Bpsk => "bpsk",
            Modulation::Qam16 => "qam16",
        }
    }

    pub fn point(self, symbol: FieldElement) -> Complex64 {
        let s = symbol.index();
        match self {
            Modulation::Bpsk => Complex64::new(if s == 0 { 1.0 } else { -1.0 }, 0.0),
            Modulation::Qam16 => Complex64::new(GRAY_PAM4[(s >> 2) & 3] * QAM16_SCALE, GRAY_PAM4[s & 3] * QAM16_SCALE),
        }
    }

    /// Constellation indexed by symbol value.
    pub fn constellation(self) -> Vec<Complex64> {
        (0..self.cardinality())
            .map(|s| self.point(FieldElement(s as u8)))
            .collect()
    }
}

impl std::str::FromStr for Modulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bpsk" => Ok(Modulation::Bpsk),
            "qam16" => Ok(Modulation::Qam16),
            _ => Err(Error::Config(format!("unknown modulation {s:?}"))),
        }
    }
}

/// Which symbol the a-priori metrics are referenced to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Negative log-probabilities, shifted so each row's minimum is 0.
    LogProb,
    /// Log-ratios against symbol 0: `gamma_n(0) = 0`.
    ZeroRef,
    /// Log-ratios against the most likely symbol: row minimum is exactly 0.
    StarRef,
}

/// Per-variable a-priori metrics, an N x q row-major matrix in nats.
#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicInfo {
    gamma: Vec<f64>,
    n: usize,
    q: usize,
    convention: Convention,
    sigma: f64,
}

impl IntrinsicInfo {
    /// Re-references raw metrics `d_n(a)` (row-major, N x q) under `convention`.
    pub fn from_metrics(mut metrics: Vec<f64>, q: usize, convention: Convention, sigma: f64) -> Result<Self> {
        if q == 0 || !metrics.len().is_multiple_of(q) {
            return Err(Error::SizeMismatch(format!(
                "{} metrics do not form rows of length {q}",
                metrics.len()
            )));
        }
        if metrics.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("non-finite a-priori metric".into()));
        }
        for row in metrics.chunks_mut(q) {
            let reference = match convention {
                Convention::ZeroRef => row[0],
                Convention::LogProb | Convention::StarRef => row.iter().copied().fold(f64::INFINITY, f64::min),
            };
            for x in row.iter_mut() {
                *x -= reference;
            }
        }
        Ok(IntrinsicInfo {
            n: metrics.len() / q,
            gamma: metrics,
            q,
            convention,
            sigma,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    #[inline]
    pub fn row(&self, n: usize) -> &[f64] {
        &self.gamma[n * self.q..(n + 1) * self.q]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.gamma.chunks_exact(self.q)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    /// Same metrics re-referenced under another convention.
    pub fn with_convention(&self, convention: Convention) -> IntrinsicInfo {
        IntrinsicInfo::from_metrics(self.gamma.clone(), self.q, convention, self.sigma)
            .expect("finite metrics stay finite")
    }

    /// Multiplies every entry by `lambda`.
    pub fn scaled(&self, lambda: f64) -> IntrinsicInfo {
        IntrinsicInfo {
            gamma: self.gamma.iter().map(|x| x * lambda).collect(),
            ..self.clone()
        }
    }
}

/// Noise standard deviation per real dimension for a unit-energy constellation:
/// `sigma^2 = 1 / (2 R b 10^(EbN0/10))`.
pub fn ebno_to_sigma(ebno_db: f64, rate: f64, bits_per_channel_symbol: u32) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::Config(format!("code rate must be in (0, 1], got {rate}")));
    }
    if bits_per_channel_symbol == 0 {
        return Err(Error::Config("bits per channel symbol must be at least 1".into()));
    }
    let ebno = 10f64.powf(ebno_db / 10.0);
    Ok((1.0 / (2.0 * rate * bits_per_channel_symbol as f64 * ebno)).sqrt())
}

pub fn modulate(word: &[FieldElement], scheme: Modulation, q: usize) -> Result<Vec<Complex64>> {
    if scheme.cardinality() != q {
        return Err(Error::Config(format!(
            "{} carries {} symbols but the field has q = {q}",
            scheme.name(),
            scheme.cardinality()
        )));
    }
    Ok(word.iter().map(|&s| scheme.point(s)).collect())
}

/// Adds independent N(0, sigma^2) noise to the real and imaginary parts.
pub fn awgn<R: Rng + ?Sized>(samples: &[Complex64], sigma: f64, rng: &mut R) -> Vec<Complex64> {
    assert!(sigma >= 0.0, "noise standard deviation must be nonnegative");
    samples
        .iter()
        .map(|s| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            s + Complex64::new(sigma * re, sigma * im)
        })
        .collect()
}

/// Gaussian a-priori metrics for each observation. BPSK uses the real part only.
pub fn intrinsic(
    observations: &[Complex64],
    sigma: f64,
    scheme: Modulation,
    convention: Convention,
) -> Result<IntrinsicInfo> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("likelihoods are degenerate for sigma = {sigma}")));
    }
    let constellation = scheme.constellation();
    let q = constellation.len();
    let inv_two_var = 1.0 / (2.0 * sigma * sigma);
    let mut metrics = Vec::with_capacity(observations.len() * q);
    for y in observations {
        for s in &constellation {
            let dist2 = match scheme {
                Modulation::Bpsk => (y.re - s.re) * (y.re - s.re),
                Modulation::Qam16 => (y - s).norm_sqr(),
            };
            metrics.push(dist2 * inv_two_var);
        }
    }
    IntrinsicInfo::from_metrics(metrics, q, convention, sigma)
}
