use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "hmcusp",
    version,
    about = "Arithmetic, cusp geometry and Eisenstein checks for Hilbert modular surfaces"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Result cache file; defaults to hmcusp/cache.json in the user cache directory.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Disc {
    /// Fundamental discriminant D > 1.
    #[arg(long = "disc", allow_negative_numbers = true)]
    pub disc: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Discriminant, fundamental unit, regulator and class number.
    Field(Disc),
    /// ζ_F(−1) exactly and through the functional equation.
    Zeta {
        #[command(flatten)]
        disc: Disc,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Cusp fan and boundary topology.
    #[command(subcommand)]
    Cusp(CuspCommand),
    /// Eisenstein series.
    #[command(subcommand)]
    Eis(EisCommand),
    /// Identities of the (g,K)-complex.
    #[command(subcommand)]
    Gk(GkCommand),
    /// Composite checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
pub enum CuspCommand {
    /// Builds the smooth periodic fan and checks its invariants.
    Resolve {
        #[command(flatten)]
        disc: Disc,
        /// Covering is checked on all totally positive a + bω with |a|, |b| ≤ B.
        #[arg(long, default_value_t = 40)]
        bound: i64,
    },
    /// Homology of the boundary complex and of the link.
    Homology(Disc),
    /// Boundary loop of a power of the fan unit.
    Circle {
        #[command(flatten)]
        disc: Disc,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum EisCommand {
    /// Fourier coefficients up to a trace bound with the Hecke checks.
    Fourier {
        #[command(flatten)]
        disc: Disc,
        #[arg(long = "trace-bound", default_value = "8")]
        trace_bound: String,
    },
    /// Evaluates the truncated expansion at z ∈ ℍ².
    Eval {
        #[command(flatten)]
        disc: Disc,
        #[arg(long = "trace-bound", default_value = "8")]
        trace_bound: String,
        #[arg(long, value_parser = parse_floats::<4>, allow_hyphen_values = true)]
        z: [f64; 4],
    },
    /// x-average of the lattice sum against the constant-term law.
    ConstantTerm {
        #[command(flatten)]
        disc: Disc,
        #[arg(long, default_value_t = 1.5)]
        s: f64,
        #[arg(long, value_parser = parse_floats::<2>, default_value = "2,2")]
        y: [f64; 2],
        /// Height bound of the lattice sum.
        #[arg(long, default_value_t = 48.0)]
        bound: f64,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GkCheck {
    D2,
    Defective,
    Harder,
    Closed,
    All,
}

#[derive(Subcommand, Debug)]
pub enum GkCommand {
    /// Runs the selected identity checks in degree d.
    Verify {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = GkCheck::All)]
        check: GkCheck,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Res_{s=1} ξ_F(2s−1)/ξ_F(2s) against vol(∂X)/vol(X).
    ResidueIdentity {
        #[command(flatten)]
        disc: Disc,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Residue identity plus the defective identity, with the assembled constant.
    WeakPeriods {
        #[command(flatten)]
        disc: Disc,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

/// Comma-separated list of exactly N floats.
fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}
