use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Numeric feature table with integer class labels.
///
/// Labels are stored as class indices `0..n_classes` in ascending order of
/// the original label values, which are kept in `class_values`.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetTable {
    pub feature_names: Vec<String>,
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub class_values: Vec<i64>,
}

impl DatasetTable {
    pub fn new(
        feature_names: Vec<String>,
        features: Vec<Vec<f64>>,
        raw_labels: &[i64],
    ) -> Result<Self> {
        if features.len() != raw_labels.len() {
            return Err(Error::Config(format!(
                "{} feature rows but {} labels",
                features.len(),
                raw_labels.len()
            )));
        }
        if let Some((i, row)) = features
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != feature_names.len())
        {
            return Err(Error::Config(format!(
                "row {i} has {} features, expected {}",
                row.len(),
                feature_names.len()
            )));
        }
        let mut class_values = raw_labels.to_vec();
        class_values.sort_unstable();
        class_values.dedup();
        if class_values.len() < 2 {
            return Err(Error::Config(format!(
                "dataset needs at least two classes, found {}",
                class_values.len()
            )));
        }
        let labels = raw_labels
            .iter()
            .map(|v| class_values.binary_search(v).unwrap())
            .collect();
        Ok(DatasetTable {
            feature_names,
            features,
            labels,
            class_values,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_values.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Keeps the samples whose original label is in `keep`.
    pub fn filter_labels(&self, keep: &[i64]) -> Result<DatasetTable> {
        let mut features = Vec::new();
        let mut raw = Vec::new();
        for (row, &l) in self.features.iter().zip(&self.labels) {
            let v = self.class_values[l];
            if keep.contains(&v) {
                features.push(row.clone());
                raw.push(v);
            }
        }
        DatasetTable::new(self.feature_names.clone(), features, &raw)
    }

    /// Copy with labels replaced; used for permutation controls.
    pub fn with_labels(&self, labels: Vec<usize>) -> Result<DatasetTable> {
        if labels.len() != self.n_samples() || labels.iter().any(|&l| l >= self.n_classes()) {
            return Err(Error::Config("label vector does not fit the table".into()));
        }
        Ok(DatasetTable {
            labels,
            ..self.clone()
        })
    }
}

/// Reads a CSV with a header row, numeric feature columns and an integer
/// label in the last column.
pub fn load_csv(path: impl AsRef<Path>) -> Result<DatasetTable> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_csv(file, path)
}

pub fn read_csv(reader: impl Read, path: &Path) -> Result<DatasetTable> {
    let located = |row: usize, column: usize, reason: String| Error::Dataset {
        path: path.to_path_buf(),
        row,
        column,
        reason,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.len() < 2 || header.iter().all(|h| h.is_empty()) {
        return Err(located(
            1,
            1,
            "expected a header with at least one feature and a label column".into(),
        ));
    }
    let n_features = header.len() - 1;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        // header is line 1
        let line = i + 2;
        let record = record.map_err(|e| located(line, 0, e.to_string()))?;
        if record.len() != header.len() {
            return Err(located(
                line,
                record.len().min(header.len()),
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        let mut row = Vec::with_capacity(n_features);
        for (j, field) in record.iter().take(n_features).enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| located(line, j + 1, format!("`{field}` is not a number")))?;
            if !v.is_finite() {
                return Err(located(line, j + 1, format!("`{field}` is not finite")));
            }
            row.push(v);
        }
        let field = &record[n_features];
        let label: i64 = field.parse().map_err(|_| {
            located(
                line,
                n_features + 1,
                format!("`{field}` is not an integer label"),
            )
        })?;
        features.push(row);
        labels.push(label);
    }
    if features.is_empty() {
        return Err(located(2, 1, "no data rows".into()));
    }
    DatasetTable::new(header[..n_features].to_vec(), features, &labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<DatasetTable> {
        read_csv(text.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn parses_and_relabels() {
        let t = parse("a,b,label\n1,2,5\n3,4,7\n5,6,5\n").unwrap();
        assert_eq!(t.n_samples(), 3);
        assert_eq!(t.n_features(), 2);
        assert_eq!(t.class_values, vec![5, 7]);
        assert_eq!(t.labels, vec![0, 1, 0]);
        assert_eq!(t.class_counts(), vec![2, 1]);
        let f = parse("a,label\n1,0\n2,1\n3,2\n")
            .unwrap()
            .filter_labels(&[1, 2])
            .unwrap();
        assert_eq!(f.class_values, vec![1, 2]);
        assert_eq!(f.labels, vec![0, 1]);
    }

    #[test]
    fn reports_locations() {
        match parse("a,b,label\n1,2,0\n3,x,1\n").unwrap_err() {
            Error::Dataset { row, column, .. } => assert_eq!((row, column), (3, 2)),
            e => panic!("{e}"),
        }
        match parse("a,b,label\n1,2,0\n3,4,1.5\n").unwrap_err() {
            Error::Dataset { row, column, .. } => assert_eq!((row, column), (3, 3)),
            e => panic!("{e}"),
        }
        assert!(parse("").is_err());
        assert!(parse("a,label\n").is_err());
        assert!(parse("a,label\n1,0\n2,0\n").is_err());
    }
}
