use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mhankel::hankel::{HilbertVariant, DEFAULT_MAX_ITER, DEFAULT_TOL};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "mhankel", version, about = "Experiments on multiplicative Hankel forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// One experiment. The serialized form is the config echo of a report and
/// re-runs the experiment exactly.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Truncated norms of Hilbert-type matrices.
    Hilbert(HilbertArgs),
    /// Norms of symbols embedding a matrix on prime pairs.
    EmbedVerify(EmbedArgs),
    /// Norms, pairing and H¹ norm of the product symbols φ_d.
    PhiD(PhiDArgs),
    /// Schatten norms of embedded symbols and the divisor-weighted Frobenius identity.
    SchattenEmbed(SchattenArgs),
    /// Schur multiplier patterns applied to Hankel matrices.
    Schur(SchurArgs),
    /// Helson, Hardy and slice-norm inequalities by Monte Carlo.
    Inequalities(InequalityArgs),
    /// Fourier coefficients of the bounded symbol of the additive Hilbert form.
    Nehari(NehariArgs),
    /// Re-run the experiment recorded in a report.
    #[serde(skip)]
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Hilbert(_) => "hilbert",
            Self::EmbedVerify(_) => "embed-verify",
            Self::PhiD(_) => "phi-d",
            Self::SchattenEmbed(_) => "schatten-embed",
            Self::Schur(_) => "schur",
            Self::Inequalities(_) => "inequalities",
            Self::Nehari(_) => "nehari",
            Self::Replay(_) => "replay",
        }
    }

    pub fn output(&self) -> Option<&Output> {
        match self {
            Self::Hilbert(a) => Some(&a.output),
            Self::EmbedVerify(a) => Some(&a.output),
            Self::PhiD(a) => Some(&a.output),
            Self::SchattenEmbed(a) => Some(&a.output),
            Self::Schur(a) => Some(&a.output),
            Self::Inequalities(a) => Some(&a.output),
            Self::Nehari(a) => Some(&a.output),
            Self::Replay(_) => None,
        }
    }
}

#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Output {
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Optional CSV table of the report rows.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Dense matrix, all eigenvalues (N ≤ 4000).
    Svd,
    /// Entries generated on the fly, power iteration.
    Matfree,
}

fn parse_variant(s: &str) -> Result<HilbertVariant, String> {
    s.parse().map_err(|e: mhankel::Error| e.to_string())
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertArgs {
    /// mult, quehilbert, ahilb1, shifted (alias additive-shifted), ahilb4 or mult-shifted.
    #[arg(long, default_value = "mult", value_parser = parse_variant)]
    pub variant: HilbertVariant,
    /// Strictly increasing truncation sizes.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [10, 100, 1000])]
    pub n: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Svd)]
    pub mode: Mode,
    /// Power iteration stopping tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Allowed excess over π.
    #[arg(long, default_value_t = 1e-9)]
    pub bound_slack: f64,
    /// Allowed decrease between consecutive truncations.
    #[arg(long, default_value_t = 1e-12)]
    pub monotone_slack: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedArgs {
    /// Largest row and column count of the random matrices.
    #[arg(long = "n", default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Verify this matrix (CSV `i,j,re,im`) instead of random ones.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Exactness tolerance for the restricted form.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Margin on both sides of the Hilbert–Schmidt sandwich.
    #[arg(long, default_value_t = 1e-9)]
    pub margin: f64,
    /// Power iteration tolerance for the restricted form.
    #[arg(long, default_value_t = 1e-14)]
    pub solver_tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiDArgs {
    #[arg(long = "d", value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
    pub d: Vec<usize>,
    /// Largest d for the Monte Carlo H¹ estimate.
    #[arg(long, default_value_t = 3)]
    pub mc_max_d: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance for the Hankel norm and the pairing.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Width of the Monte Carlo band in standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchattenArgs {
    #[arg(long = "p", value_delimiter = ',', default_values_t = [1.0, 2.0, 3.0, 4.0])]
    pub p: Vec<f64>,
    /// Largest row and column count of the random matrices.
    #[arg(long = "n", default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance on `‖M⁰‖_p^p − 2‖C‖_p^p`.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Sizes K of the diagonal matrices `diag(k^{-alpha})`.
    #[arg(long, value_delimiter = ',', default_values_t = [10, 100, 300])]
    pub diag_k: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Schatten exponent reported next to S_2 for the diagonal family.
    #[arg(long, default_value_t = 4.0)]
    pub q: f64,
    /// Random symbols for the divisor-weighted Frobenius identity.
    #[arg(long, default_value_t = 20)]
    pub frobenius_trials: usize,
    /// Support bound of those symbols.
    #[arg(long, default_value_t = 500)]
    pub frobenius_max_n: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub frobenius_tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    /// Every homogeneity mask against random symbols.
    #[value(alias = "homog_mask_all_m")]
    HomogMaskAllM,
    /// Skew-log weights against nonnegative symbols.
    #[value(alias = "skew_log_nonneg")]
    SkewLogNonneg,
    /// Skew-radial weights on embedded symbols.
    #[value(alias = "skew_radial_embed")]
    SkewRadialEmbed,
    /// Iterated row and column limits of the embedded skew-log weights.
    #[value(alias = "bennett_tails")]
    BennettTails,
    /// Alternating lower-bound search for the embedded skew-log multiplier.
    #[value(alias = "multiplier_search")]
    MultiplierSearch,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurArgs {
    #[arg(long, value_enum)]
    pub pattern: Pattern,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Apply the pattern to this symbol (CSV `n,re,im`) instead of random ones.
    #[arg(long)]
    pub symbol: Option<PathBuf>,
    /// Support bound of random symbols.
    #[arg(long, default_value_t = 200)]
    pub max_n: u64,
    /// Largest number of terms of random symbols.
    #[arg(long, default_value_t = 6)]
    pub terms: usize,
    /// Largest row and column count of random embedded matrices.
    #[arg(long = "n", default_value_t = 6)]
    pub n: usize,
    /// Allowed excess of a weighted norm over the unweighted one.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Prime table size for the tails.
    #[arg(long, default_value_t = 10_000)]
    pub table_size: usize,
    /// Required gap between row and column tails.
    #[arg(long, default_value_t = 0.4)]
    pub min_gap: f64,
    /// Number of prime pairs in the lower-bound search.
    #[arg(long, default_value_t = 32)]
    pub pairs: usize,
    #[arg(long, default_value_t = 20)]
    pub iterations: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityArgs {
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Exponents for the nested-versus-direct comparison.
    #[arg(long = "p", value_delimiter = ',', default_values_t = [1.0, 3.0])]
    pub p: Vec<f64>,
    /// Slice quadrature points; eight per coefficient when absent.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
    /// Tolerance of the p = 2 slice identity.
    #[arg(long, default_value_t = 1e-12)]
    pub parseval_tol: f64,
    /// Absolute slack added to every Monte Carlo band, for polynomials of constant modulus.
    #[arg(long, default_value_t = 1e-12)]
    pub rounding_tol: f64,
    /// Random slices per trial for the one-variable Hardy inequality.
    #[arg(long, default_value_t = 5)]
    pub slices: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NehariArgs {
    #[arg(long, default_value_t = 100)]
    pub k_max: usize,
    #[arg(long, default_value_t = 1 << 16)]
    pub grid: usize,
    /// Tolerance on `|ĉ_k − 1/k|`.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub im_tol: f64,
    /// Tolerance on the grid supremum against π.
    #[arg(long, default_value_t = 1e-6)]
    pub sup_tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// A report written by an earlier run.
    pub report: PathBuf,
    /// Where to write the new report; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once("mhankel").chain(args.iter().copied())).unwrap().command
    }

    #[test]
    fn defaults() {
        let Command::Hilbert(h) = parse(&["hilbert"]) else { panic!() };
        assert_eq!((h.variant, h.n.as_slice(), h.mode), (HilbertVariant::Mult, &[10, 100, 1000][..], Mode::Svd));
        let Command::Schur(s) = parse(&["schur", "--pattern", "bennett_tails"]) else { panic!() };
        assert_eq!((s.pattern, s.table_size, s.min_gap), (Pattern::BennettTails, 10_000, 0.4));
        let Command::PhiD(p) = parse(&["phi-d"]) else { panic!() };
        assert_eq!((p.d.as_slice(), p.samples), (&[1, 2, 3, 4][..], 1_000_000));
        let Command::Hilbert(h) = parse(&["hilbert", "--variant", "additive-shifted"]) else { panic!() };
        assert_eq!(h.variant, HilbertVariant::Shifted);
    }

    #[test]
    fn configs_round_trip_through_json() {
        for args in [
            &["hilbert", "--variant", "ahilb4", "--n", "3,7", "--mode", "matfree", "--tol", "1e-13"][..],
            &["embed-verify", "--seed", "17", "--out", "x.json"],
            &["phi-d", "--d", "2", "--sigmas", "2.5"],
            &["schatten-embed", "--p", "1.5,3", "--alpha", "0.3"],
            &["schur", "--pattern", "skew-radial-embed", "--csv", "t.csv"],
            &["inequalities", "--grid", "128"],
            &["nehari", "--grid", "1024"],
        ] {
            let command = parse(args);
            let json = serde_json::to_string(&command).unwrap();
            assert_eq!(serde_json::from_str::<Command>(&json).unwrap(), command, "{json}");
        }
    }

    #[test]
    fn rejects_unknown_values() {
        let parse = |a: &[&str]| Cli::try_parse_from(std::iter::once("mhankel").chain(a.iter().copied()));
        assert!(parse(&["hilbert", "--variant", "additive"]).is_err());
        assert!(parse(&["hilbert", "--mode", "dense"]).is_err());
        assert!(parse(&["schur", "--pattern", "other"]).is_err());
        assert!(parse(&["schur"]).is_err());
    }
}
