use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horace_core::exactlin::PrimeField;
use horace_core::horace::Strategy;

#[derive(Debug, Parser)]
#[command(
    name = "horace",
    version,
    about = "Maximal-rank decisions and certificates for generic fat points in projective space"
)]
pub struct Cli {
    /// Directory receiving one JSON run record per invocation.
    #[arg(long, env = "HORACE_RESULTS_DIR", default_value = "horace-results")]
    pub results_dir: PathBuf,

    /// Do not write a run record.
    #[arg(long)]
    pub no_record: bool,

    /// Print the result payload as JSON instead of text.
    #[arg(long)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute h0 of the ideal sheaf of a generic union of fat points.
    Dim(DimArgs),
    /// Build a certificate that a candidate imposes independent conditions.
    Certify(CertifyArgs),
    /// Reproduce the characteristic-p failure on the cuspidal curve.
    Counterexample(CounterexampleArgs),
    /// Run the standard-deformation corpus checks.
    FormalCheck(FormalArgs),
    /// Print the three-step schedule for multiplicity m.
    Plan(PlanArgs),
    /// Recompute recorded runs and compare their payloads.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Prime of the base field.
    #[arg(long, env = "HORACE_PRIME", default_value_t = PrimeField::DEFAULT_PRIME)]
    pub prime: u64,
    /// Random instances per decision.
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Ambient dimension N.
    #[arg(long)]
    pub n: usize,
    /// Degree of the forms.
    #[arg(long)]
    pub d: u32,
    /// Free point multiplicities, e.g. `2,2,3` or `2x7`.
    #[arg(long, value_parser = parse_mults, default_value = "")]
    pub mults: Multiplicities,
    /// Degree of the divisor carrying the constrained points.
    #[arg(long, default_value_t = 1)]
    pub a: u32,
    /// Multiplicities of points lying on the divisor.
    #[arg(long, value_parser = parse_mults, default_value = "")]
    pub divisor_mults: Multiplicities,
}

#[derive(Debug, Clone, Args)]
pub struct DimArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Ascending,
    Descending,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Ascending => Strategy::Ascending,
            StrategyArg::Descending => Strategy::Descending,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Order in which free points are specialized.
    #[arg(long, value_enum, default_value_t = StrategyArg::Ascending)]
    pub strategy: StrategyArg,
    /// Degrees up to this bound are decided by brute force.
    #[arg(long)]
    pub base_degree: Option<u32>,
    /// Also write the certificate to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    /// Odd prime characteristic.
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct FormalArgs {
    /// Number of seeds, run as `0..seeds`.
    #[arg(long, default_value_t = 100)]
    pub seeds: u64,
    /// Truncation order in t.
    #[arg(long, default_value_t = 6)]
    pub trunc: u32,
    /// Largest model height.
    #[arg(long, default_value_t = 4)]
    pub height: usize,
    /// Largest rate r.
    #[arg(long, default_value_t = 3)]
    pub rate: u32,
    /// Number of x variables.
    #[arg(long, default_value_t = 1)]
    pub n_vars: usize,
    #[arg(long, env = "HORACE_PRIME", default_value_t = PrimeField::DEFAULT_PRIME)]
    pub prime: u64,
    /// Check members with one coefficient pushed out of its layer.
    #[arg(long)]
    pub inject_mutant: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    /// Multiplicity.
    #[arg(long)]
    pub m: u32,
    /// Divisor dimension n, so that the ambient space is P^(n+1).
    #[arg(long)]
    pub n: usize,
    /// Degree of the first step, to evaluate N_free and alpha.
    #[arg(long)]
    pub delta: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Record files or directories of records.
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multiplicities(pub Vec<u32>);

/// Comma-separated multiplicities; `mxk` stands for `k` copies of `m`.
pub fn parse_mults(s: &str) -> Result<Multiplicities, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (m, k) = match item.split_once(['x', 'X']) {
            Some((m, k)) => (m.trim(), k.trim()),
            None => (item, "1"),
        };
        let m: u32 = m
            .parse()
            .map_err(|_| format!("bad multiplicity `{m}` in `{item}`"))?;
        let k: usize = k
            .parse()
            .map_err(|_| format!("bad count `{k}` in `{item}`"))?;
        if m == 0 {
            return Err(format!("multiplicities must be positive (`{item}`)"));
        }
        out.extend(std::iter::repeat_n(m, k));
    }
    Ok(Multiplicities(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        assert_eq!(parse_mults("2x7").unwrap().0, vec![2; 7]);
        assert_eq!(parse_mults("3, 2x2,1").unwrap().0, vec![3, 2, 2, 1]);
        assert_eq!(parse_mults("").unwrap().0, Vec::<u32>::new());
        assert!(parse_mults("0").is_err());
        assert!(parse_mults("2xq").is_err());
        assert!(parse_mults("a").is_err());
    }

    #[test]
    fn parses_commands() {
        let cli = Cli::try_parse_from(["horace", "dim", "--n", "2", "--d", "4", "--mults", "2x5"])
            .unwrap();
        match cli.command {
            Command::Dim(a) => assert_eq!(a.system.mults.0.len(), 5),
            _ => panic!("wrong command"),
        }
        assert!(Cli::try_parse_from(["horace", "dim", "--d", "4"]).is_err());
    }
}
