use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use nbldpc::channel::Modulation;
use nbldpc::decoders::{DecoderConfig, Rule};
use nbldpc::sim::{emit_csv, load_code, parse_ebno_range, sweep, CodeSource, Link, SimConfig};
use nbldpc::{Error, Result};

/// Monte Carlo BER/FER sweep for non-binary LDPC decoders.
#[derive(Debug, Parser)]
#[command(name = "nbldpc-sim", version)]
struct Args {
    /// Parity-check matrix in NBALIST format.
    #[arg(long, value_name = "PATH", conflicts_with = "gen", required_unless_present = "gen")]
    code: Option<PathBuf>,
    /// Random regular code: N,dv,dc,q.
    #[arg(long, value_name = "N,dv,dc,q")]
    gen: Option<String>,
    /// sp, ms, ms0, mss, pnorm:P, euclid, minmax or minmax-sel.
    #[arg(long, default_value = "minmax")]
    decoder: String,
    /// bpsk or qam16.
    #[arg(long = "mod", default_value = "qam16")]
    modulation: String,
    /// Eb/N0 sweep in dB, A:B:STEP or a single value.
    #[arg(long, value_name = "A:B:STEP")]
    ebno: String,
    /// Maximum frames per SNR point.
    #[arg(long, default_value_t = 10_000)]
    frames: usize,
    /// Stop a point after this many frame errors (0 disables).
    #[arg(long = "max-fe", default_value_t = 100)]
    max_fe: usize,
    #[arg(long, default_value_t = 200)]
    iters: usize,
    #[arg(long, default_value_t = 12.0)]
    ai: f64,
    #[arg(long, default_value_t = 31.0)]
    cot: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn parse_gen(spec: &str) -> Result<CodeSource> {
    let nums: Vec<usize> = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Config(format!("--gen expects N,dv,dc,q, got {spec:?}")))?;
    match nums[..] {
        [n, dv, dc, q] => Ok(CodeSource::Generate { n, dv, dc, q }),
        _ => Err(Error::Config(format!("--gen expects N,dv,dc,q, got {spec:?}"))),
    }
}

fn build_config(args: &Args) -> Result<SimConfig> {
    let code = match (&args.code, &args.gen) {
        (Some(path), None) => CodeSource::File(path.clone()),
        (None, Some(spec)) => parse_gen(spec)?,
        _ => return Err(Error::Config("give exactly one of --code or --gen".into())),
    };
    let rule: Rule = args.decoder.parse()?;
    let modulation: Modulation = args.modulation.parse()?;
    let decoder = DecoderConfig::new(rule)
        .with_max_iterations(args.iters)
        .with_selective(args.ai, args.cot);
    Ok(SimConfig {
        code,
        decoder,
        modulation,
        ebno_db: parse_ebno_range(&args.ebno)?,
        max_frames: args.frames,
        max_frame_errors: args.max_fe,
        seed: args.seed,
        workers: args.workers,
        output: args.out.clone(),
    })
}

fn run(args: &Args) -> Result<()> {
    let config = build_config(args)?;
    config.validate()?;
    let code = load_code(&config.code, config.seed)?;
    let link = Link::new(code, config.modulation)?;
    let full = link.code.n() - link.code.m().min(link.code.n());
    if link.encoder.k() > full {
        eprintln!(
            "warning: parity-check matrix is rank deficient, K = {} instead of {}",
            link.encoder.k(),
            full
        );
    }
    let csv = emit_csv(&sweep(&link, &config)?);
    match &config.output {
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
