use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_VAR_SMOOTHING: f64 = 1e-9;

/// Gaussian naive Bayes with per-class feature means and variances.
///
/// Variances are population variances plus `epsilon`, where `epsilon` is
/// `var_smoothing` times the largest per-feature variance of the training
/// data. Priors are class frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct GnbModel {
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
    pub priors: Vec<f64>,
    pub epsilon: f64,
}

impl GnbModel {
    pub fn fit(x: &[Vec<f64>], y: &[usize], n_classes: usize, var_smoothing: f64) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::Config(format!(
                "cannot fit on {} rows with {} labels",
                x.len(),
                y.len()
            )));
        }
        let d = x[0].len();
        let n = x.len() as f64;
        let mut counts = vec![0usize; n_classes];
        let mut sums = vec![vec![0.0; d]; n_classes];
        for (row, &c) in x.iter().zip(y) {
            counts[c] += 1;
            for (s, v) in sums[c].iter_mut().zip(row) {
                *s += v;
            }
        }
        if let Some(c) = counts.iter().position(|&k| k == 0) {
            return Err(Error::Config(format!("class {c} has no training samples")));
        }
        let means: Vec<Vec<f64>> = sums
            .iter()
            .zip(&counts)
            .map(|(s, &k)| s.iter().map(|v| v / k as f64).collect())
            .collect();
        let mut variances = vec![vec![0.0; d]; n_classes];
        for (row, &c) in x.iter().zip(y) {
            for j in 0..d {
                let dev = row[j] - means[c][j];
                variances[c][j] += dev * dev;
            }
        }

        let mut overall_mean = vec![0.0; d];
        for row in x {
            for (m, v) in overall_mean.iter_mut().zip(row) {
                *m += v / n;
            }
        }
        let mut overall_var = vec![0.0; d];
        for row in x {
            for j in 0..d {
                let dev = row[j] - overall_mean[j];
                overall_var[j] += dev * dev / n;
            }
        }
        let epsilon = var_smoothing * overall_var.iter().copied().fold(0.0, f64::max);
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::Config(
                "variance smoothing is zero: all training features are constant".into(),
            ));
        }
        for (vars, &k) in variances.iter_mut().zip(&counts) {
            for v in vars.iter_mut() {
                *v = *v / k as f64 + epsilon;
            }
        }
        let priors = counts.iter().map(|&k| k as f64 / n).collect();
        Ok(GnbModel {
            means,
            variances,
            priors,
            epsilon,
        })
    }

    pub fn n_classes(&self) -> usize {
        self.priors.len()
    }

    /// Joint log-likelihood `ln P(c) + Σ_j ln N(x_j; μ_cj, σ²_cj)` per class.
    pub fn joint_log_likelihood(&self, sample: &[f64]) -> Vec<f64> {
        (0..self.n_classes())
            .map(|c| {
                let mut ll = self.priors[c].ln();
                for ((x, mu), var) in sample.iter().zip(&self.means[c]).zip(&self.variances[c]) {
                    ll -= 0.5 * (2.0 * PI * var).ln() + (x - mu) * (x - mu) / (2.0 * var);
                }
                ll
            })
            .collect()
    }

    pub fn predict_proba(&self, sample: &[f64]) -> Vec<f64> {
        let jll = self.joint_log_likelihood(sample);
        let max = jll.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exp: Vec<f64> = jll.iter().map(|v| (v - max).exp()).collect();
        let total: f64 = exp.iter().sum();
        exp.into_iter().map(|v| v / total).collect()
    }
}

/// Clips probabilities to `[floor, 1]` and renormalizes.
pub fn clip_probabilities(probs: &mut [f64], floor: f64) {
    for p in probs.iter_mut() {
        *p = p.clamp(floor, 1.0);
    }
    let total: f64 = probs.iter().sum();
    for p in probs.iter_mut() {
        *p /= total;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symmetric_midpoint() {
        let x = vec![vec![-1.0], vec![-2.0], vec![1.0], vec![2.0]];
        let y = vec![0, 0, 1, 1];
        let g = GnbModel::fit(&x, &y, 2, DEFAULT_VAR_SMOOTHING).unwrap();
        let p = g.predict_proba(&[0.0]);
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-12);
        assert!(g.predict_proba(&[1.5])[1] > 0.99);
    }

    #[test]
    fn constant_feature_is_smoothed() {
        let x = vec![
            vec![1.0, 0.0],
            vec![2.0, 0.0],
            vec![5.0, 0.0],
            vec![6.0, 0.0],
        ];
        let g = GnbModel::fit(&x, &[0, 0, 1, 1], 2, DEFAULT_VAR_SMOOTHING).unwrap();
        assert!(g
            .variances
            .iter()
            .flatten()
            .all(|&v| v >= g.epsilon && v > 0.0));
        let p = g.predict_proba(&[3.0, 0.3]);
        assert!(p.iter().all(|v| v.is_finite()));
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn missing_class_is_an_error() {
        let x = vec![vec![1.0], vec![2.0]];
        assert!(GnbModel::fit(&x, &[0, 0], 2, DEFAULT_VAR_SMOOTHING).is_err());
    }

    #[test]
    fn clipping() {
        let mut p = vec![1.0, 0.0, 0.0];
        clip_probabilities(&mut p, 1e-12);
        assert!(p.iter().all(|&v| v > 0.0));
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
    }
}
