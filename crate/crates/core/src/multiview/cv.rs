use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::DatasetTable;
use super::gnb::{clip_probabilities, GnbModel, DEFAULT_VAR_SMOOTHING};
use super::protocol::{BorrowStrategy, ViewProtocol};
use super::scaler::StandardScaler;
use crate::error::{Error, Result};
use crate::fusion::{pecr_relative, CombinationRule, FusionConfig};
use crate::isopignistic::{relativize, RelativeRepresentation};
use crate::mass::{argmax, MassFunction};
use crate::powerset::Frame;
use crate::tnorm::TriangularOperator;

/// Parametric PECR family whose parameter is chosen by inner
/// cross-validation. The same parameter drives both operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TunedFamily {
    Frank,
    Hamacher,
}

impl TunedFamily {
    pub fn config(self, parameter: f64) -> Result<FusionConfig> {
        let op = match self {
            TunedFamily::Frank => TriangularOperator::frank(parameter)?,
            TunedFamily::Hamacher => TriangularOperator::hamacher(parameter)?,
        };
        FusionConfig::new(op, op)
    }
}

/// A decision procedure evaluated by the harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Rule(CombinationRule),
    Tuned(TunedFamily),
    /// Per-view argmax votes, ties broken by summed probability.
    Majority,
}

impl Method {
    /// Frank, Hamacher, min, product, CCR, CauCR and majority.
    pub fn comparison_set() -> Vec<Method> {
        [
            "tuned:frank",
            "tuned:hamacher",
            "pecr:min:min",
            "pecr:product:product",
            "dempster",
            "caucr",
            "majority",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Rule(r) => r.fmt(f),
            Method::Tuned(TunedFamily::Frank) => f.write_str("tuned:frank"),
            Method::Tuned(TunedFamily::Hamacher) => f.write_str("tuned:hamacher"),
            Method::Majority => f.write_str("majority"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Rule grammar plus `majority`, `tuned:frank` and `tuned:hamacher`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "majority" => Ok(Method::Majority),
            "tuned:frank" => Ok(Method::Tuned(TunedFamily::Frank)),
            "tuned:hamacher" => Ok(Method::Tuned(TunedFamily::Hamacher)),
            _ => s.parse().map(Method::Rule),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    pub var_smoothing: f64,
    pub borrow: BorrowStrategy,
    /// GNB outputs are clipped to `[probability_floor, 1]` and renormalized.
    pub probability_floor: f64,
    /// Discount applied to each view's BPA before the cautious rule, which
    /// needs non-dogmatic inputs.
    pub caucr_discount: f64,
    pub inner_folds: usize,
    pub frank_grid: Vec<f64>,
    pub hamacher_grid: Vec<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            folds: 5,
            repeats: 5,
            seed: 0,
            var_smoothing: DEFAULT_VAR_SMOOTHING,
            borrow: BorrowStrategy::Spread,
            probability_floor: 1e-12,
            caucr_discount: 0.01,
            inner_folds: 3,
            frank_grid: vec![0.01, 0.1, 0.5, 2.0, 10.0],
            hamacher_grid: vec![0.1, 0.5, 1.0, 2.0, 5.0],
        }
    }
}

impl ExperimentConfig {
    fn grid(&self, family: TunedFamily) -> &[f64] {
        match family {
            TunedFamily::Frank => &self.frank_grid,
            TunedFamily::Hamacher => &self.hamacher_grid,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.folds < 2 || self.inner_folds < 2 || self.repeats == 0 {
            return Err(Error::Config(
                "folds and inner folds must be at least 2, repeats at least 1".into(),
            ));
        }
        if self.frank_grid.is_empty() || self.hamacher_grid.is_empty() {
            return Err(Error::Config("parameter grids must be nonempty".into()));
        }
        if !(0.0..=1.0).contains(&self.caucr_discount) {
            return Err(Error::Config(
                "cautious-rule discount must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub rule: String,
    /// One accuracy per (repeat, fold), repeat-major.
    pub fold_accuracies: Vec<f64>,
    pub mean: f64,
    /// Population standard deviation over folds.
    pub std: f64,
    /// Summed time spent fusing and deciding, in seconds.
    pub runtime_secs: f64,
    /// Test samples whose fusion failed; each counts as misclassified.
    pub failures: usize,
    /// Parameter chosen in each fold, for tuned methods.
    pub selected_parameters: Vec<f64>,
}

/// Fold index per sample. Each class is shuffled and dealt round-robin
/// across folds, continuing the count from the previous class.
pub fn stratified_folds(
    labels: &[usize],
    n_classes: usize,
    folds: usize,
    rng: &mut impl rand::Rng,
) -> Result<Vec<usize>> {
    let mut by_class = vec![Vec::new(); n_classes];
    for (i, &l) in labels.iter().enumerate() {
        by_class[l].push(i);
    }
    if let Some((c, members)) = by_class.iter().enumerate().find(|(_, m)| m.len() < folds) {
        return Err(Error::Config(format!(
            "stratification impossible: class {c} has {} samples for {folds} folds",
            members.len()
        )));
    }
    let mut assignment = vec![0; labels.len()];
    let mut offset = 0;
    for members in by_class.iter_mut() {
        members.shuffle(rng);
        for (k, &i) in members.iter().enumerate() {
            assignment[i] = (offset + k) % folds;
        }
        offset += members.len();
    }
    Ok(assignment)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Per-view class probabilities on the `test` rows, from a scaler and one
/// GNB per view fitted on the `train` rows. Indexed `[view][sample]`.
pub fn fold_view_probabilities(
    table: &DatasetTable,
    views: &[Vec<usize>],
    train: &[usize],
    test: &[usize],
    config: &ExperimentConfig,
) -> Result<Vec<Vec<Vec<f64>>>> {
    let scaler = StandardScaler::fit(&table.features, train);
    let x_train = scaler.transform(&table.features, train);
    let x_test = scaler.transform(&table.features, test);
    let y_train: Vec<usize> = train.iter().map(|&i| table.labels[i]).collect();
    let select = |rows: &[Vec<f64>], cols: &[usize]| -> Vec<Vec<f64>> {
        rows.iter()
            .map(|r| cols.iter().map(|&j| r[j]).collect())
            .collect()
    };
    views
        .iter()
        .map(|cols| {
            let model = GnbModel::fit(
                &select(&x_train, cols),
                &y_train,
                table.n_classes(),
                config.var_smoothing,
            )?;
            Ok(select(&x_test, cols)
                .iter()
                .map(|row| {
                    let mut p = model.predict_proba(row);
                    clip_probabilities(&mut p, config.probability_floor);
                    p
                })
                .collect())
        })
        .collect()
}

/// Bayesian BPA with `m({ω_j}) = probs[j]`.
pub fn proba_to_bpa(frame: Arc<Frame>, probs: &[f64]) -> Result<MassFunction> {
    MassFunction::bayesian(frame, probs)
}

/// Fusion inputs for a set of samples, built once and shared by every method.
struct Evidence {
    sources: Vec<Vec<MassFunction>>,
    relative: Vec<Vec<RelativeRepresentation>>,
    probs: Vec<Vec<Vec<f64>>>,
    truth: Vec<usize>,
}

impl Evidence {
    fn new(frame: &Arc<Frame>, probs: Vec<Vec<Vec<f64>>>, truth: Vec<usize>) -> Result<Self> {
        let sources: Vec<Vec<MassFunction>> = (0..truth.len())
            .map(|s| {
                probs
                    .iter()
                    .map(|view| proba_to_bpa(frame.clone(), &view[s]))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let relative = sources
            .iter()
            .map(|views| views.iter().map(relativize).collect())
            .collect();
        Ok(Evidence {
            sources,
            relative,
            probs,
            truth,
        })
    }

    fn len(&self) -> usize {
        self.truth.len()
    }

    fn pecr_correct(&self, cfg: &FusionConfig) -> (usize, usize) {
        let mut correct = 0;
        let mut failures = 0;
        for (s, reps) in self.relative.iter().enumerate() {
            match pecr_relative(reps, cfg) {
                Ok((m, _)) => correct += usize::from(decide(&m) == self.truth[s]),
                Err(_) => failures += 1,
            }
        }
        (correct, failures)
    }

    fn rule_correct(&self, rule: &CombinationRule, discount: f64) -> (usize, usize) {
        if let CombinationRule::Pecr(cfg) = rule {
            return self.pecr_correct(cfg);
        }
        let mut correct = 0;
        let mut failures = 0;
        for (s, views) in self.sources.iter().enumerate() {
            let fused = if matches!(rule, CombinationRule::Caucr) {
                views
                    .iter()
                    .map(|m| m.discount(discount))
                    .collect::<Result<Vec<_>>>()
                    .and_then(|d| rule.combine(&d))
            } else {
                rule.combine(views)
            };
            match fused {
                Ok(m) => correct += usize::from(decide(&m) == self.truth[s]),
                Err(_) => failures += 1,
            }
        }
        (correct, failures)
    }

    fn majority_correct(&self) -> usize {
        let n_classes = self.probs[0][0].len();
        (0..self.len())
            .filter(|&s| {
                let mut votes = vec![0usize; n_classes];
                let mut mass = vec![0.0; n_classes];
                for view in &self.probs {
                    votes[argmax(&view[s])] += 1;
                    for (m, p) in mass.iter_mut().zip(&view[s]) {
                        *m += p;
                    }
                }
                let top = *votes.iter().max().unwrap();
                let pick = (0..n_classes)
                    .filter(|&c| votes[c] == top)
                    .fold(None, |best: Option<usize>, c| match best {
                        Some(b) if mass[b] >= mass[c] => Some(b),
                        _ => Some(c),
                    })
                    .unwrap();
                pick == self.truth[s]
            })
            .count()
    }
}

/// Argmax of the pignistic probability; the normalization by `1 − m(∅)`
/// does not change it.
fn decide(m: &MassFunction) -> usize {
    argmax(&m.betp_unnormalized())
}

struct FoldOutcome {
    accuracy: f64,
    failures: usize,
    seconds: f64,
    selected: Option<f64>,
}

/// Chooses the grid value with the best inner-CV accuracy; the first wins
/// ties.
fn select_parameter(grid: &[f64], family: TunedFamily, inner: &[Evidence]) -> Result<f64> {
    let mut best = (grid[0], -1.0);
    for &param in grid {
        let cfg = family.config(param)?;
        let (mut correct, mut total) = (0, 0);
        for ev in inner {
            correct += ev.pecr_correct(&cfg).0;
            total += ev.len();
        }
        let acc = correct as f64 / total as f64;
        if acc > best.1 {
            best = (param, acc);
        }
    }
    Ok(best.0)
}

#[allow(clippy::too_many_arguments)]
fn run_fold(
    table: &DatasetTable,
    views: &[Vec<usize>],
    frame: &Arc<Frame>,
    assignment: &[usize],
    fold: usize,
    inner_stream: u64,
    methods: &[Method],
    config: &ExperimentConfig,
) -> Result<Vec<FoldOutcome>> {
    let train: Vec<usize> = (0..assignment.len())
        .filter(|&i| assignment[i] != fold)
        .collect();
    let test: Vec<usize> = (0..assignment.len())
        .filter(|&i| assignment[i] == fold)
        .collect();
    let truth = test.iter().map(|&i| table.labels[i]).collect();
    let evidence = Evidence::new(
        frame,
        fold_view_probabilities(table, views, &train, &test, config)?,
        truth,
    )?;

    let needs_inner = methods.iter().any(|m| matches!(m, Method::Tuned(_)));
    let inner: Vec<Evidence> = if needs_inner {
        let train_labels: Vec<usize> = train.iter().map(|&i| table.labels[i]).collect();
        let mut rng = rng_for(config.seed, inner_stream);
        let inner_assign = stratified_folds(
            &train_labels,
            table.n_classes(),
            config.inner_folds,
            &mut rng,
        )?;
        (0..config.inner_folds)
            .map(|k| {
                let pick = |keep: bool| -> Vec<usize> {
                    train
                        .iter()
                        .zip(&inner_assign)
                        .filter(|(_, &a)| (a == k) == keep)
                        .map(|(&i, _)| i)
                        .collect()
                };
                let (fit, val) = (pick(false), pick(true));
                let truth = val.iter().map(|&i| table.labels[i]).collect();
                Evidence::new(
                    frame,
                    fold_view_probabilities(table, views, &fit, &val, config)?,
                    truth,
                )
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    methods
        .iter()
        .map(|method| {
            let start = Instant::now();
            let (correct, failures, selected) = match method {
                Method::Rule(rule) => {
                    let (c, f) = evidence.rule_correct(rule, config.caucr_discount);
                    (c, f, None)
                }
                Method::Majority => (evidence.majority_correct(), 0, None),
                Method::Tuned(family) => {
                    let param = select_parameter(config.grid(*family), *family, &inner)?;
                    let (c, f) = evidence.pecr_correct(&family.config(param)?);
                    (c, f, Some(param))
                }
            };
            Ok(FoldOutcome {
                accuracy: correct as f64 / evidence.len() as f64,
                failures,
                seconds: start.elapsed().as_secs_f64(),
                selected,
            })
        })
        .collect()
}

/// Repeated stratified cross-validation of every method on one protocol.
///
/// All methods see the same partitions and the same per-sample BPAs. Work
/// items run in parallel and are merged in (repeat, fold) order, so the
/// report does not depend on scheduling.
pub fn run_cv(
    table: &DatasetTable,
    protocol: &ViewProtocol,
    methods: &[Method],
    config: &ExperimentConfig,
) -> Result<Vec<CvReport>> {
    config.validate()?;
    if methods.is_empty() {
        return Err(Error::Config("no methods to evaluate".into()));
    }
    let views = protocol.build_views(table.n_features(), config.borrow)?;
    let table = match &protocol.label_filter {
        Some(keep) => table.filter_labels(keep)?,
        None => table.clone(),
    };
    let labels: Vec<String> = table.class_values.iter().map(i64::to_string).collect();
    let frame = Arc::new(Frame::new(labels)?);

    let assignments: Vec<Vec<usize>> = (0..config.repeats)
        .map(|r| {
            let mut rng = rng_for(config.seed, r as u64);
            stratified_folds(&table.labels, table.n_classes(), config.folds, &mut rng)
        })
        .collect::<Result<_>>()?;

    let items: Vec<(usize, usize)> = (0..config.repeats)
        .flat_map(|r| (0..config.folds).map(move |f| (r, f)))
        .collect();
    let outcomes: Vec<Vec<FoldOutcome>> = items
        .par_iter()
        .map(|&(r, f)| {
            let stream = ((r * config.folds + f) as u64) | (1 << 32);
            run_fold(
                &table,
                &views,
                &frame,
                &assignments[r],
                f,
                stream,
                methods,
                config,
            )
        })
        .collect::<Result<_>>()?;

    Ok(methods
        .iter()
        .enumerate()
        .map(|(k, method)| {
            let accs: Vec<f64> = outcomes.iter().map(|o| o[k].accuracy).collect();
            let n = accs.len() as f64;
            let mean = accs.iter().sum::<f64>() / n;
            let std = (accs.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / n).sqrt();
            CvReport {
                rule: method.to_string(),
                mean,
                std,
                runtime_secs: outcomes.iter().map(|o| o[k].seconds).sum(),
                failures: outcomes.iter().map(|o| o[k].failures).sum(),
                selected_parameters: outcomes.iter().filter_map(|o| o[k].selected).collect(),
                fold_accuracies: accs,
            }
        })
        .collect())
}

/// CSV with columns `rule,mean,std,failures,runtime_s,fold_accuracies`; fold
/// accuracies are `;`-separated.
pub fn write_reports_csv(reports: &[CvReport], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "rule",
        "mean",
        "std",
        "failures",
        "runtime_s",
        "fold_accuracies",
    ])?;
    for r in reports {
        let folds: Vec<String> = r
            .fold_accuracies
            .iter()
            .map(|a| format!("{a:.6}"))
            .collect();
        w.write_record([
            r.rule.clone(),
            format!("{:.6}", r.mean),
            format!("{:.6}", r.std),
            r.failures.to_string(),
            format!("{:.3}", r.runtime_secs),
            folds.join(";"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_reports_json(reports: &[CvReport], out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(out, reports)?;
    Ok(())
}
