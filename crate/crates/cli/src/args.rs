//! Command-line grammar and its translation into a [`RunConfig`].

use std::path::PathBuf;

use alpha_ineq::harness::{AlphaPolicy, BernoulliDomain, ParamOverrides, SuiteConfig};
use alpha_ineq::{Dimension, Error, ExponentTuple, FormVariant, InequalityId, Regime, Result, TolerancePolicy};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Parser)]
#[command(name = "alpha-ineq", version, about = "Verify fractal-type inequalities numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a seeded suite (or the instances of --input) and count holds/equalities/violations.
    Verify(RunArgs),
    /// Run one suite per α in --alpha-grid with a shared seed.
    Sweep(RunArgs),
    /// Minimize the gap and check the stated equality condition.
    Certify(RunArgs),
    /// Search for a violation and shrink the worst one found.
    Counterexample(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum YDomain {
    Full,
    BelowOne,
    AtLeastOne,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Inequality: bernoulli, young, nary-young, holder, minkowski, holder-multi, minkowski-multi, radon, radon-multi
    pub id: String,
    #[arg(long, default_value = "normalized")]
    pub variant: String,
    /// holder | reverse; inferred from --p or --exponents when omitted
    #[arg(long)]
    pub regime: Option<String>,
    /// Trials (parameter sets for certify); default 1000, or 100 for certify
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, env = "ALPHA_INEQ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Fixed dimension α in (0, 1]; sampled per trial when omitted
    #[arg(long, conflicts_with = "alpha_grid")]
    pub alpha: Option<f64>,
    /// Comma-separated α values, one suite each (default for sweep: 0.25,0.5,0.75,1)
    #[arg(long, value_delimiter = ',')]
    pub alpha_grid: Option<Vec<f64>>,
    /// Leading exponent (Bernoulli: m)
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Conjugate exponent for young and holder; derived from --p when omitted
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Lower exponent r in (0, 1) for radon and radon-multi
    #[arg(long)]
    pub r: Option<f64>,
    /// Exponent list p_1,..,p_n for nary-young and holder-multi
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub exponents: Option<Vec<f64>>,
    /// Bernoulli only: where y is drawn from
    #[arg(long, value_enum)]
    pub y_domain: Option<YDomain>,
    /// CSV file of instances; bypasses the samplers
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Relative violation tolerance [default: 1e-9]
    #[arg(long)]
    pub tol_rel: Option<f64>,
    /// Relative equality band [default: 1e-8]
    #[arg(long)]
    pub tol_eq: Option<f64>,
    /// certify: simplex restarts per parameter set
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// certify: evaluations per restart
    #[arg(long, default_value_t = 2000)]
    pub budget: usize,
    /// certify: sequence length of the certified instances
    #[arg(long)]
    pub n: Option<usize>,
    /// certify: column count of the certified matrix instances
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Verify,
    Sweep,
    Certify,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlphaMode {
    Fixed(Dimension),
    Sampled,
    Grid(Vec<f64>),
}

/// Everything a single invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub suite: SuiteConfig,
    pub alpha: AlphaMode,
    pub input: Option<PathBuf>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub restarts: usize,
    pub budget: usize,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn infer_regime(id: InequalityId, args: &RunArgs) -> Result<Regime> {
    let from_p = match (id, args.p) {
        (InequalityId::Bernoulli, Some(m)) if m > 0.0 && m < 1.0 => Some(Regime::Holder),
        (InequalityId::Bernoulli, Some(m)) if m > 1.0 => Some(Regime::Reverse),
        (InequalityId::Bernoulli, Some(m)) => {
            return Err(usage(format!("Bernoulli exponent m = {m} must be positive and not 1")))
        }
        (_, Some(p)) => Some(Regime::of_power(p).map_err(|e| usage(e.to_string()))?),
        (_, None) => None,
    };
    let from_list = match &args.exponents {
        Some(list) => Some(ExponentTuple::new(list.clone()).map_err(|e| usage(e.to_string()))?.regime()),
        None => None,
    };
    let given = args.regime.as_deref().map(str::parse::<Regime>).transpose().map_err(|e| usage(e.to_string()))?;
    let mut regime = given;
    for implied in [from_p, from_list].into_iter().flatten() {
        match regime {
            Some(r) if r != implied => {
                return Err(usage(format!("the exponents belong to the {implied} regime but --regime is {r}")))
            }
            _ => regime = Some(implied),
        }
    }
    Ok(regime.unwrap_or(Regime::Holder))
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig> {
        let (mode, args) = match cli.command {
            Command::Verify(a) => (Mode::Verify, a),
            Command::Sweep(a) => (Mode::Sweep, a),
            Command::Certify(a) => (Mode::Certify, a),
            Command::Counterexample(a) => (Mode::Counterexample, a),
        };
        let id: InequalityId = args.id.parse()?;
        let variant: FormVariant = args.variant.parse()?;
        let regime = infer_regime(id, &args)?;

        let alpha = match (&args.alpha, &args.alpha_grid) {
            (Some(_), Some(_)) => return Err(usage("--alpha and --alpha-grid are mutually exclusive")),
            (Some(a), None) => {
                AlphaMode::Fixed(Dimension::new(*a).map_err(|_| usage(format!("--alpha {a} is outside (0, 1]")))?)
            }
            (None, Some(grid)) => AlphaMode::Grid(grid.clone()),
            (None, None) if mode == Mode::Sweep => AlphaMode::Grid(DEFAULT_GRID.to_vec()),
            (None, None) => AlphaMode::Sampled,
        };
        if let AlphaMode::Grid(grid) = &alpha {
            if grid.is_empty() {
                return Err(usage("--alpha-grid is empty"));
            }
            if let Some(a) = grid.iter().find(|a| !(**a > 0.0 && **a <= 1.0)) {
                return Err(usage(format!("grid value {a} is outside (0, 1]")));
            }
            if mode == Mode::Certify || mode == Mode::Counterexample {
                return Err(usage("--alpha-grid applies to verify and sweep only"));
            }
            if args.input.is_some() {
                return Err(usage("--alpha-grid cannot be combined with --input"));
            }
        }
        if mode == Mode::Sweep && matches!(alpha, AlphaMode::Fixed(_)) {
            return Err(usage("sweep takes --alpha-grid, not --alpha"));
        }
        if args.input.is_some() && mode != Mode::Verify {
            return Err(usage("--input is only accepted by verify"));
        }
        if args.y_domain.is_some() && id != InequalityId::Bernoulli {
            return Err(usage("--y-domain applies to bernoulli only"));
        }

        let default_tol = TolerancePolicy::default();
        let tol = TolerancePolicy::new(
            args.tol_rel.unwrap_or(default_tol.tol_rel),
            args.tol_eq.unwrap_or(default_tol.tol_eq),
            default_tol.abs_floor,
        )
        .map_err(|e| usage(e.to_string()))?;

        let trials = args.trials.unwrap_or(if mode == Mode::Certify { 100 } else { 1000 });
        let mut suite = SuiteConfig::new(id, regime)
            .variant(variant)
            .trials(trials)
            .seed(args.seed)
            .alpha(match alpha {
                AlphaMode::Fixed(d) => AlphaPolicy::Fixed(d),
                _ => AlphaPolicy::Sampled,
            })
            .params(ParamOverrides { p: args.p, q: args.q, r: args.r, exponents: args.exponents.clone() })
            .bernoulli_domain(match args.y_domain {
                None | Some(YDomain::Full) => BernoulliDomain::Full,
                Some(YDomain::BelowOne) => BernoulliDomain::BelowOne,
                Some(YDomain::AtLeastOne) => BernoulliDomain::AtLeastOne,
            });
        suite.tol = tol;
        suite.validate()?;
        if mode == Mode::Certify {
            if id == InequalityId::Bernoulli {
                return Err(usage("bernoulli has no parametrized equality manifold to certify"));
            }
            if variant != FormVariant::Normalized {
                return Err(usage("certify works on the normalized form only"));
            }
            if args.restarts == 0 || args.budget == 0 {
                return Err(usage("--restarts and --budget must be positive"));
            }
        }
        if (args.n == Some(0)) || (args.m == Some(0)) {
            return Err(usage("--n and --m must be positive"));
        }
        Ok(RunConfig {
            mode,
            suite,
            alpha,
            input: args.input,
            format: args.format,
            out: args.out,
            restarts: args.restarts,
            budget: args.budget,
            n: args.n,
            m: args.m,
        })
    }
}

/// Parses `argv` (program name first).
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ParseFailure::Clap)?;
    RunConfig::from_cli(cli).map_err(ParseFailure::Config)
}

#[derive(Debug)]
pub enum ParseFailure {
    /// Includes `--help` and `--version`, which are not errors.
    Clap(clap::Error),
    Config(Error),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> std::result::Result<RunConfig, ParseFailure> {
        parse_args(std::iter::once("alpha-ineq").chain(s.split_whitespace()))
    }

    #[test]
    fn verify_example() {
        let c = parse("verify young --p 2 --trials 1000 --seed 7 --alpha 0.5").unwrap();
        assert_eq!(c.mode, Mode::Verify);
        assert_eq!(c.suite.id, InequalityId::Young);
        assert_eq!(c.suite.variant, FormVariant::Normalized);
        assert_eq!(c.suite.regime, Regime::Holder);
        assert_eq!((c.suite.trials, c.suite.seed), (1000, 7));
        assert_eq!(c.alpha, AlphaMode::Fixed(Dimension::new(0.5).unwrap()));
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(parse("verify"), Err(ParseFailure::Clap(_))));
        assert!(parse("verify young --alpha 0.5 --alpha-grid 0.2,0.4").is_err());
        assert!(matches!(parse("verify cauchy"), Err(ParseFailure::Config(Error::Usage(_)))));
        assert!(matches!(parse("verify young --p 0.5 --regime holder"), Err(ParseFailure::Config(_))));
        assert!(matches!(parse("verify young --alpha 1.5"), Err(ParseFailure::Config(_))));
        assert!(matches!(parse("verify young --trials abc"), Err(ParseFailure::Clap(_))));
        assert!(matches!(parse("sweep young --alpha-grid 0.5,0"), Err(ParseFailure::Config(_))));
        assert!(matches!(parse("verify holder --variant as-written"), Err(ParseFailure::Config(_))));
    }

    #[test]
    fn regime_is_inferred() {
        assert_eq!(parse("verify holder --p 0.5").unwrap().suite.regime, Regime::Reverse);
        assert_eq!(parse("verify bernoulli --p 0.5").unwrap().suite.regime, Regime::Holder);
        assert_eq!(parse("verify nary-young --exponents 0.5,-1").unwrap().suite.regime, Regime::Reverse);
        assert_eq!(parse("verify minkowski").unwrap().suite.regime, Regime::Holder);
    }

    #[test]
    fn sweep_defaults_to_the_quarter_grid() {
        let c = parse("sweep young").unwrap();
        assert_eq!(c.alpha, AlphaMode::Grid(DEFAULT_GRID.to_vec()));
        assert!(parse("sweep young --alpha 0.5").is_err());
    }
}
