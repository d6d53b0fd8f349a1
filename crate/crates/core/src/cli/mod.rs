//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for input or usage errors, 3 when a
//! combination rule's precondition does not hold for the given inputs.

mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::document::{read_sources, BpaDocument};
use crate::error::{Error, Result};
use crate::fusion::{pecr, CombinationRule, FusionConfig};
use crate::multiview::{
    bundled_dataset, load_csv, run_cv, BorrowStrategy, ExperimentConfig, Method, ViewProtocol,
};
use crate::tnorm::TriangularOperator;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pecr",
    version,
    about = "Possibilistic evidence combination toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Frank,
    Hamacher,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Component {
    Propensity,
    Commitment,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print set functions, pignistic and possibility profiles, the
    /// isopignistic function, its relative form and the layer scalings.
    Decompose {
        /// BPA document (JSON).
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Combine two or more BPAs.
    Fuse {
        /// BPA documents (JSON), at least two.
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
        /// pecr, ccr, dcr, dempster, yager, dp, caucr, bcr or a full
        /// pecr:<P>:<C> specification.
        #[arg(long, default_value = "pecr")]
        rule: String,
        /// Operator grammar: min|product|lukasiewicz|max|probsum|boundedsum|
        /// mean|frank:<λ>|hamacher:<γ>|frank-conorm:<λ>|hamacher-conorm:<γ>.
        #[arg(long, default_value = "product")]
        propensity: String,
        #[arg(long, default_value = "max")]
        commitment: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare rules by m(∅), Ign and the entropy of the pignistic
    /// probability. Failing rules are reported inline.
    Compare {
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
        /// Comma-separated rule list, e.g. ccr,dcr,pecr:product:max.
        #[arg(long, required = true, value_delimiter = ',', num_args = 1..)]
        rules: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Repeated stratified cross-validation of fusion rules on a
    /// multi-view protocol.
    ///
    /// The report CSV has columns rule, mean, std, failures, runtime_s and
    /// fold_accuracies (semicolon-separated, repeat-major).
    Experiment {
        /// Wine-C1, D0-4-R6, D0-4-D4, D5-9-R2 or BC-R4.
        #[arg(long)]
        protocol: String,
        /// CSV dataset; defaults to the bundled file for the protocol.
        #[arg(long)]
        dataset: Option<PathBuf>,
        /// Comma-separated methods: rule grammar, majority, tuned:frank,
        /// tuned:hamacher. Defaults to the full comparison set.
        #[arg(long, value_delimiter = ',')]
        rules: Vec<String>,
        #[arg(long, default_value_t = 5)]
        folds: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// leading or spread.
        #[arg(long, default_value = "spread")]
        borrow: String,
        #[arg(long, default_value_t = 0.01)]
        caucr_discount: f64,
        #[arg(long, default_value_t = 1e-9)]
        var_smoothing: f64,
        /// Write the report CSV here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the report JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Fused masses as one operator parameter varies, as CSV.
    Sweep {
        #[arg(long, required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = SweepFamily::Frank)]
        family: SweepFamily,
        /// Which operator's parameter varies; the other stays at --fixed.
        #[arg(long, value_enum)]
        component: Component,
        /// start:end:steps, evenly spaced and inclusive.
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 0.5)]
        fixed: f64,
    },
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Precondition(_) => EXIT_PRECONDITION,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match run(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn resolve_rule(rule: &str, propensity: &str, commitment: &str) -> Result<CombinationRule> {
    if rule.eq_ignore_ascii_case("pecr") {
        let p: TriangularOperator = propensity.parse()?;
        let c: TriangularOperator = commitment.parse()?;
        Ok(CombinationRule::Pecr(FusionConfig::new(p, c)?))
    } else {
        rule.parse()
    }
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Decompose { input, format } => {
            let m = BpaDocument::read(&input)?.to_mass()?;
            output::decompose(&m, format, out)
        }
        Command::Fuse {
            inputs,
            rule,
            propensity,
            commitment,
            format,
        } => {
            let rule = resolve_rule(&rule, &propensity, &commitment)?;
            let sources = read_sources(&inputs)?;
            let (fused, diagnostics) = match rule {
                CombinationRule::Pecr(cfg) => {
                    let (m, d) = pecr(&sources, &cfg)?;
                    (m, Some(d))
                }
                other => (other.combine(&sources)?, None),
            };
            output::fused(&rule, &fused, diagnostics.as_ref(), format, out)
        }
        Command::Compare {
            inputs,
            rules,
            format,
        } => {
            let rules: Vec<CombinationRule> =
                rules.iter().map(|r| r.parse()).collect::<Result<_>>()?;
            let sources = read_sources(&inputs)?;
            let rows: Vec<_> = rules
                .iter()
                .map(|r| (r.to_string(), r.combine(&sources)))
                .collect();
            output::comparison(&rows, format, out)
        }
        Command::Experiment {
            protocol,
            dataset,
            rules,
            folds,
            repeats,
            seed,
            borrow,
            caucr_discount,
            var_smoothing,
            output,
            json,
        } => {
            let protocol = ViewProtocol::builtin(&protocol)?;
            let methods: Vec<Method> = if rules.is_empty() {
                Method::comparison_set()
            } else {
                rules.iter().map(|r| r.parse()).collect::<Result<_>>()?
            };
            let path = dataset.unwrap_or_else(|| bundled_dataset(&protocol.dataset));
            let table = load_csv(&path)?;
            let config = ExperimentConfig {
                folds,
                repeats,
                seed,
                borrow: borrow.parse::<BorrowStrategy>()?,
                caucr_discount,
                var_smoothing,
                ..ExperimentConfig::default()
            };
            let reports = run_cv(&table, &protocol, &methods, &config)?;
            writeln!(out, "{protocol}: {folds}-fold CV x {repeats}, seed {seed}")?;
            for r in &reports {
                writeln!(
                    out,
                    "{:<24} {:.4} ± {:.4}{}",
                    r.rule,
                    r.mean,
                    r.std,
                    if r.failures > 0 {
                        format!("  ({} failed samples)", r.failures)
                    } else {
                        String::new()
                    }
                )?;
            }
            if let Some(path) = output {
                crate::multiview::cv::write_reports_csv(&reports, File::create(path)?)?;
            }
            if let Some(path) = json {
                crate::multiview::cv::write_reports_json(&reports, File::create(path)?)?;
            }
            Ok(())
        }
        Command::Sweep {
            inputs,
            family,
            component,
            grid,
            fixed,
        } => {
            let grid = parse_grid(&grid)?;
            let sources = read_sources(&inputs)?;
            let op = |v: f64| match family {
                SweepFamily::Frank => TriangularOperator::frank(v),
                SweepFamily::Hamacher => TriangularOperator::hamacher(v),
            };
            let fixed_op = op(fixed)?;
            let mut rows = Vec::with_capacity(grid.len());
            for &v in &grid {
                let cfg = match component {
                    Component::Propensity => FusionConfig::new(op(v)?, fixed_op)?,
                    Component::Commitment => FusionConfig::new(fixed_op, op(v)?)?,
                };
                rows.push((v, pecr(&sources, &cfg)?.0));
            }
            output::sweep(&rows, out)
        }
    }
}

/// `start:end:steps` → `steps` evenly spaced values from `start` to `end`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let fail = |reason: &str| Error::Config(format!("invalid grid `{spec}`: {reason}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(fail("expected start:end:steps"));
    };
    let a: f64 = a.trim().parse().map_err(|_| fail("bad start"))?;
    let b: f64 = b.trim().parse().map_err(|_| fail("bad end"))?;
    let n: usize = n.trim().parse().map_err(|_| fail("bad step count"))?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(fail("need at least one finite point"));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("0.5:0.9:1").unwrap(), vec![0.5]);
        for bad in ["0:1", "0:1:0", "a:1:3", "0:1:x:2"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Precondition("x".into())), 3);
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run_with_args(["pecr", "bogus"], &mut out, &mut err), 2);
        assert_eq!(run_with_args(["pecr", "--help"], &mut out, &mut err), 0);
    }
}
