use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "rkt",
    version,
    about = "Hankel operator norms, reproducing-kernel bounds and disk identities"
)]
pub struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    /// Leave wall-clock time out of the report so reruns are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Draw a random symbol and print it as JSON.
    GenSymbol(GenSymbol),
    /// Compare ||Γ|| with the reproducing-kernel bound 2√e·A.
    VerifyRkt(VerifyRkt),
    /// Littlewood–Paley identity for an analytic polynomial.
    LpCheck(LpCheck),
    /// Green's formula for random polynomials in z and zbar.
    GreenCheck(GreenCheck),
    /// Uchiyama-type bound (1/2π)∫Δu|f|² ln(1/|z|) ≤ e||f||² for a normalized symbol.
    UchiyamaCheck(UchiyamaCheck),
    /// Boundary pairing (Γf, gbar) against its area representation.
    ProofCheck(ProofCheck),
    /// Random-restart hill climbing on ||Γ|| / A.
    SearchExtremal(SearchExtremal),
    /// Embedding constant of a discrete measure against 4e times the kernel test.
    EmbedTest(EmbedTest),
    /// Dyadic Carleson box constant of (1-|λ|²)dμ with the elementary embedding test.
    CarlesonCheck(CarlesonCheck),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::GenSymbol(_) => "gen-symbol",
            Command::VerifyRkt(_) => "verify-rkt",
            Command::LpCheck(_) => "lp-check",
            Command::GreenCheck(_) => "green-check",
            Command::UchiyamaCheck(_) => "uchiyama-check",
            Command::ProofCheck(_) => "proof-check",
            Command::SearchExtremal(_) => "search-extremal",
            Command::EmbedTest(_) => "embed-test",
            Command::CarlesonCheck(_) => "carleson-check",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::GenSymbol(a) => Some(a.random.seed),
            Command::VerifyRkt(a) => a.symbol.random.then_some(a.symbol.random_args.seed),
            Command::LpCheck(a) => a.input.is_none().then_some(a.seed),
            Command::GreenCheck(a) => Some(a.seed),
            Command::UchiyamaCheck(a) => Some(a.symbol.random_args.seed),
            Command::ProofCheck(a) => Some(a.symbol.random_args.seed),
            Command::SearchExtremal(_) | Command::EmbedTest(_) | Command::CarlesonCheck(_) => None,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct RandomSymbol {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of coefficients γ_1..γ_m.
    #[arg(long, default_value_t = 4, value_parser = positive)]
    pub m: usize,
    /// Coefficient dimension.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    pub d: usize,
    /// γ_k is scaled by k^(-decay).
    #[arg(long, default_value_t = 0.0, value_parser = nonnegative)]
    pub decay: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SymbolSource {
    /// Symbol JSON file `{dim, gamma}`.
    #[arg(conflicts_with = "random")]
    pub symbol_file: Option<PathBuf>,
    /// Draw the symbol from --seed/--m/--d/--decay instead of reading a file.
    #[arg(long)]
    pub random: bool,
    #[command(flatten)]
    pub random_args: RandomSymbol,
}

#[derive(Debug, Args, Serialize)]
pub struct Quadrature {
    /// Radial quadrature nodes.
    #[arg(long, default_value_t = 64, value_parser = positive)]
    pub nr: usize,
    /// Angular nodes; defaults to 2·(max frequency) + 8.
    #[arg(long, value_parser = positive)]
    pub nt: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct GenSymbol {
    #[command(flatten)]
    pub random: RandomSymbol,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyRkt {
    #[command(flatten)]
    pub symbol: SymbolSource,
    /// λ-grid JSON; missing keys take their defaults.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Also write the Garsia values on the grid as CSV.
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LpCheck {
    /// Analytic polynomial JSON `{dim, n_min, coeffs}`; random if absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    pub degree: usize,
    #[arg(long, default_value_t = 1, value_parser = positive)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub quad: Quadrature,
    #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct GreenCheck {
    /// Largest radial degree p + q.
    #[arg(long, default_value_t = 60)]
    pub degree: u32,
    /// Monomials per random polynomial.
    #[arg(long, default_value_t = 40, value_parser = positive)]
    pub terms: usize,
    #[arg(long, default_value_t = 10, value_parser = positive)]
    pub samples: usize,
    /// Use harmonic polynomials (pure z^k and zbar^k terms).
    #[arg(long)]
    pub harmonic: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub quad: Quadrature,
    #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct UchiyamaCheck {
    #[command(flatten)]
    pub symbol: SymbolSource,
    /// Scalar analytic polynomial JSON; random ones of --degree if absent.
    #[arg(long)]
    pub f: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    pub degree: usize,
    #[arg(long, default_value_t = 20, value_parser = positive)]
    pub samples: usize,
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[command(flatten)]
    pub quad: Quadrature,
    #[arg(long, default_value_t = 1e-6, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ProofCheck {
    #[command(flatten)]
    pub symbol: SymbolSource,
    /// Scalar analytic polynomial JSON.
    #[arg(long)]
    pub f: Option<PathBuf>,
    /// Analytic polynomial JSON with g(0) = 0 and the symbol's dimension.
    #[arg(long)]
    pub g: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub degree: usize,
    #[arg(long, default_value_t = 20, value_parser = positive)]
    pub samples: usize,
    #[command(flatten)]
    pub quad: Quadrature,
    #[arg(long, default_value_t = 1e-7, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchExtremal {
    /// Search config JSON `{m, d, restarts, steps, scale, shrink, seed, grid}`.
    pub config: PathBuf,
    /// Write (restart, step, ratio) rows here.
    #[arg(long)]
    pub trace_csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EmbedTest {
    /// Measure JSON `{atoms: [{lambda, weight, theta_zeros}]}`.
    pub measure: PathBuf,
    /// Truncation degree of the polynomial space.
    #[arg(long = "N", default_value_t = 64, value_parser = positive)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CarlesonCheck {
    pub measure: PathBuf,
    #[arg(long = "N", default_value_t = 64, value_parser = positive)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be positive and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn nonnegative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be nonnegative and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}
