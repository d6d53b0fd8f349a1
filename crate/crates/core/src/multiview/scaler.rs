/// Per-feature standardization to zero mean and unit population variance.
/// Constant features keep scale 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardScaler {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl StandardScaler {
    /// Fits on the rows of `x` selected by `indices`.
    pub fn fit(x: &[Vec<f64>], indices: &[usize]) -> Self {
        let d = x.first().map_or(0, Vec::len);
        let n = indices.len() as f64;
        let mut mean = vec![0.0; d];
        for &i in indices {
            for (m, v) in mean.iter_mut().zip(&x[i]) {
                *m += v;
            }
        }
        for m in mean.iter_mut() {
            *m /= n;
        }
        let mut var = vec![0.0; d];
        for &i in indices {
            for j in 0..d {
                let dev = x[i][j] - mean[j];
                var[j] += dev * dev;
            }
        }
        let scale = var
            .into_iter()
            .map(|v| {
                let s = (v / n).sqrt();
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        StandardScaler { mean, scale }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.mean.iter().zip(&self.scale))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }

    pub fn transform(&self, x: &[Vec<f64>], indices: &[usize]) -> Vec<Vec<f64>> {
        indices.iter().map(|&i| self.transform_row(&x[i])).collect()
    }
}
