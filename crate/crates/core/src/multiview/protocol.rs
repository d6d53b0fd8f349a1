use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the base (disjoint) feature partition is formed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Partition {
    /// Consecutive blocks of the given sizes.
    Contiguous(Vec<usize>),
    /// Feature `i` goes to view `i mod views`.
    RoundRobin,
    /// Pixel `(r, c)` of a row-major grid of the given width goes to view
    /// `(r + c) mod views`.
    Diagonal { width: usize },
}

/// Which features of another view's base partition are borrowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BorrowStrategy {
    /// The first `borrow` indices.
    Leading,
    /// `borrow` indices evenly spaced through the partition,
    /// `base[⌊k·len/borrow⌋]` for `k = 0..borrow`.
    #[default]
    Spread,
}

impl std::str::FromStr for BorrowStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "leading" | "first" => Ok(BorrowStrategy::Leading),
            "spread" => Ok(BorrowStrategy::Spread),
            _ => Err(Error::Config(format!(
                "unknown borrow strategy `{s}` (expected leading or spread)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewProtocol {
    pub name: String,
    /// File stem of the bundled dataset the protocol is defined on.
    pub dataset: String,
    /// Original label values kept from the dataset; `None` keeps all.
    pub label_filter: Option<Vec<i64>>,
    pub n_features: usize,
    pub partition: Partition,
    /// Features borrowed from each other view.
    pub borrow: usize,
    pub expected_sizes: Vec<usize>,
}

pub const BUILTIN_PROTOCOLS: [&str; 5] = ["Wine-C1", "D0-4-R6", "D0-4-D4", "D5-9-R2", "BC-R4"];

fn canonical(name: &str) -> String {
    name.trim()
        .replace(['\u{2013}', '\u{2014}'], "-")
        .replace("--", "-")
        .to_ascii_uppercase()
}

impl ViewProtocol {
    pub fn builtin(name: &str) -> Result<ViewProtocol> {
        let key = canonical(name);
        let digits = |keep: [i64; 5], partition, borrow, sizes: [usize; 3]| ViewProtocol {
            name: String::new(),
            dataset: "digits".into(),
            label_filter: Some(keep.to_vec()),
            n_features: 64,
            partition,
            borrow,
            expected_sizes: sizes.to_vec(),
        };
        let mut p = match key.as_str() {
            "WINE-C1" => ViewProtocol {
                name: String::new(),
                dataset: "wine".into(),
                label_filter: None,
                n_features: 13,
                partition: Partition::Contiguous(vec![5, 4, 4]),
                borrow: 1,
                expected_sizes: vec![7, 6, 6],
            },
            "D0-4-R6" => digits([0, 1, 2, 3, 4], Partition::RoundRobin, 6, [34, 33, 33]),
            "D0-4-D4" => digits(
                [0, 1, 2, 3, 4],
                Partition::Diagonal { width: 8 },
                4,
                [29, 30, 29],
            ),
            "D5-9-R2" => digits([5, 6, 7, 8, 9], Partition::RoundRobin, 2, [26, 25, 25]),
            "BC-R4" => ViewProtocol {
                name: String::new(),
                dataset: "breast_cancer".into(),
                label_filter: None,
                n_features: 30,
                partition: Partition::RoundRobin,
                borrow: 4,
                expected_sizes: vec![18, 18, 18],
            },
            _ => {
                return Err(Error::Config(format!(
                    "unknown protocol `{name}` (known: {})",
                    BUILTIN_PROTOCOLS.join(", ")
                )))
            }
        };
        p.name = BUILTIN_PROTOCOLS
            .iter()
            .find(|b| canonical(b) == key)
            .unwrap()
            .to_string();
        Ok(p)
    }

    pub fn n_views(&self) -> usize {
        self.expected_sizes.len()
    }

    /// Disjoint base partition of `0..n_features`.
    pub fn base_partition(&self, n_features: usize) -> Result<Vec<Vec<usize>>> {
        let k = self.n_views();
        match &self.partition {
            Partition::Contiguous(sizes) => {
                if sizes.len() != k || sizes.iter().sum::<usize>() != n_features {
                    return Err(Error::Config(format!(
                        "contiguous blocks {sizes:?} do not split {n_features} features into {k} views"
                    )));
                }
                let mut start = 0;
                Ok(sizes
                    .iter()
                    .map(|&s| {
                        let block = (start..start + s).collect();
                        start += s;
                        block
                    })
                    .collect())
            }
            Partition::RoundRobin => Ok((0..k)
                .map(|v| (v..n_features).step_by(k).collect())
                .collect()),
            Partition::Diagonal { width } => {
                if *width == 0 || !n_features.is_multiple_of(*width) {
                    return Err(Error::Config(format!(
                        "{n_features} features do not form a grid of width {width}"
                    )));
                }
                Ok((0..k)
                    .map(|v| {
                        (0..n_features)
                            .filter(|i| (i / width + i % width) % k == v)
                            .collect()
                    })
                    .collect())
            }
        }
    }

    /// Per-view feature indices: the base partition plus `borrow` features
    /// from each other view.
    pub fn build_views(
        &self,
        n_features: usize,
        strategy: BorrowStrategy,
    ) -> Result<Vec<Vec<usize>>> {
        if n_features != self.n_features {
            return Err(Error::Config(format!(
                "protocol {} expects {} features, dataset has {n_features}",
                self.name, self.n_features
            )));
        }
        let base = self.base_partition(n_features)?;
        let mut views = Vec::with_capacity(base.len());
        for (v, own) in base.iter().enumerate() {
            let mut features = own.clone();
            for (o, other) in base.iter().enumerate() {
                if o == v {
                    continue;
                }
                if other.len() < self.borrow {
                    return Err(Error::Config(format!(
                        "view {o} has {} features, cannot lend {}",
                        other.len(),
                        self.borrow
                    )));
                }
                match strategy {
                    BorrowStrategy::Leading => features.extend(&other[..self.borrow]),
                    BorrowStrategy::Spread => features
                        .extend((0..self.borrow).map(|k| other[k * other.len() / self.borrow])),
                }
            }
            views.push(features);
        }
        let sizes: Vec<usize> = views.iter().map(Vec::len).collect();
        if sizes != self.expected_sizes {
            return Err(Error::Config(format!(
                "protocol {} yields view sizes {sizes:?}, expected {:?}",
                self.name, self.expected_sizes
            )));
        }
        Ok(views)
    }
}

impl fmt::Display for ViewProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_sizes() {
        for name in BUILTIN_PROTOCOLS {
            let p = ViewProtocol::builtin(name).unwrap();
            for strategy in [BorrowStrategy::Leading, BorrowStrategy::Spread] {
                let views = p.build_views(p.n_features, strategy).unwrap();
                let mut covered: Vec<usize> = views.concat();
                covered.sort_unstable();
                covered.dedup();
                assert_eq!(covered, (0..p.n_features).collect::<Vec<_>>());
                for v in &views {
                    let mut u = v.clone();
                    u.sort_unstable();
                    u.dedup();
                    assert_eq!(u.len(), v.len(), "{name}: duplicate feature in a view");
                }
            }
        }
    }

    #[test]
    fn partitions() {
        let wine = ViewProtocol::builtin("wine-c1").unwrap();
        let base = wine.base_partition(13).unwrap();
        assert_eq!(base[1], vec![5, 6, 7, 8]);
        let views = wine.build_views(13, BorrowStrategy::Leading).unwrap();
        assert_eq!(views[0], vec![0, 1, 2, 3, 4, 5, 9]);

        let diag = ViewProtocol::builtin("D0–4-D4").unwrap();
        let sizes: Vec<usize> = diag
            .base_partition(64)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(sizes, vec![21, 22, 21]);

        let bc = ViewProtocol::builtin("BC-R4").unwrap();
        let base = bc.base_partition(30).unwrap();
        assert_eq!(base[2][..3], [2, 5, 8]);
        let views = bc.build_views(30, BorrowStrategy::Spread).unwrap();
        assert_eq!(views[0][10..], [1, 7, 16, 22, 2, 8, 17, 23]);
    }

    #[test]
    fn mismatches() {
        let bc = ViewProtocol::builtin("BC-R4").unwrap();
        let err = bc.build_views(13, BorrowStrategy::Spread).unwrap_err();
        assert!(err.to_string().contains("30 features"), "{err}");
        assert!(ViewProtocol::builtin("Iris-C1").is_err());
        let mut odd = ViewProtocol::builtin("D0-4-R6").unwrap();
        odd.expected_sizes = vec![30, 30, 30];
        let err = odd.build_views(64, BorrowStrategy::Spread).unwrap_err();
        assert!(err.to_string().contains("[34, 33, 33]"), "{err}");
    }
}
