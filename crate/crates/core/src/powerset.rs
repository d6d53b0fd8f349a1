//! Frames of discernment and bitmask power-set combinatorics.
//!
//! A subset of an `n`-element frame is stored as a bitmask where bit `i` is
//! set iff the `i`-th label belongs to the subset. Index `0` is the empty set
//! and `2^n - 1` is the whole frame. All dense set functions in this crate
//! are `Vec<f64>` of length `2^n` indexed by these bitmasks.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported frame; dense storage is `2^n` entries.
pub const MAX_FRAME_SIZE: usize = 16;

/// An ordered, finite set of mutually exclusive hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::domain("a frame needs at least one label"));
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::domain(format!(
                "frame has {} labels, at most {MAX_FRAME_SIZE} are supported",
                labels.len()
            )));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::domain(format!("label {i} is empty")));
            }
            if label.contains('|') {
                return Err(Error::domain(format!("label `{label}` contains `|`")));
            }
            if labels[..i].contains(label) {
                return Err(Error::domain(format!("duplicate label `{label}`")));
            }
        }
        Ok(Frame { labels })
    }

    /// Frame with labels `"1"`, `"2"`, ..., `"n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Frame::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_size(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.labels.len()) - 1)
    }

    pub fn contains(&self, s: Subset) -> bool {
        (s.0 as usize) < self.power_set_size()
    }

    pub fn check(&self, s: Subset) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "subset {:#b} is outside a frame of {} elements",
                s.0,
                self.len()
            )))
        }
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.power_set_size() as u32).map(Subset)
    }

    pub fn singleton(&self, i: usize) -> Subset {
        debug_assert!(i < self.len());
        Subset::singleton(i)
    }

    /// All subsets of cardinality `t`, in ascending bitmask order.
    pub fn layer(&self, t: usize) -> Result<Vec<Subset>> {
        if t > self.len() {
            return Err(Error::domain(format!(
                "layer {t} does not exist in a frame of {} elements",
                self.len()
            )));
        }
        Ok(self.subsets().filter(|s| s.cardinality() == t).collect())
    }

    /// One-element supersets of `s`, in ascending bitmask order. Empty for the
    /// whole frame.
    pub fn parents(&self, s: Subset) -> Vec<Subset> {
        (0..self.len())
            .filter(|&i| !s.contains(i))
            .map(|i| s.with(i))
            .collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels.iter().try_fold(Subset::EMPTY, |acc, label| {
            let label = label.as_ref();
            self.index_of(label)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::domain(format!("unknown label `{label}`")))
        })
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<&str> {
        s.elements().map(|i| self.labels[i].as_str()).collect()
    }

    /// Focal-set key: member labels joined by `|`, empty string for the empty set.
    pub fn subset_key(&self, s: Subset) -> String {
        self.subset_labels(s).join("|")
    }

    pub fn parse_subset_key(&self, key: &str) -> Result<Subset> {
        if key.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let parts: Vec<&str> = key.split('|').collect();
        let s = self.subset_from_labels(&parts)?;
        if s.cardinality() != parts.len() {
            return Err(Error::domain(format!("key `{key}` repeats a label")));
        }
        Ok(s)
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

/// A subset of a frame as a bitmask (bit `i` set iff element `i` is a member).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub const fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & other.0 == self.0
    }

    pub const fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    /// The single element of a singleton.
    pub fn element(self) -> Option<usize> {
        (self.cardinality() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    /// Member indices in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

/// Exact binomial coefficient for `0 <= b <= a <= 64`.
pub fn binom(a: usize, b: usize) -> Result<u64> {
    if b > a {
        return Err(Error::domain(format!("binom({a}, {b}) needs b <= a")));
    }
    let b = b.min(a - b);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    Ok((0..b).fold(1u64, |acc, i| acc * (a - i) as u64 / (i + 1) as u64))
}

// In-place subset-lattice transforms over dense arrays of length 2^n.

/// `f(A) <- sum_{B ⊆ A} f(B)`.
pub fn subset_sum(f: &mut [f64]) {
    let size = f.len();
    let mut bit = 1;
    while bit < size {
        for a in 0..size {
            if a & bit != 0 {
                f[a] += f[a ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`subset_sum`]: `f(A) <- sum_{B ⊆ A} (-1)^{|A \ B|} f(B)`.
pub fn subset_mobius(f: &mut [f64]) {
    let size = f.len();
    let mut bit = 1;
    while bit < size {
        for a in 0..size {
            if a & bit != 0 {
                f[a] -= f[a ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// `f(A) <- sum_{B ⊇ A} f(B)`.
pub fn superset_sum(f: &mut [f64]) {
    let size = f.len();
    let mut bit = 1;
    while bit < size {
        for a in 0..size {
            if a & bit == 0 {
                f[a] += f[a | bit];
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`superset_sum`]: `f(A) <- sum_{B ⊇ A} (-1)^{|B \ A|} f(B)`.
pub fn superset_mobius(f: &mut [f64]) {
    let size = f.len();
    let mut bit = 1;
    while bit < size {
        for a in 0..size {
            if a & bit == 0 {
                f[a] -= f[a | bit];
            }
        }
        bit <<= 1;
    }
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    fn bits(v: &[Subset]) -> Vec<u32> {
        v.iter().map(|s| s.bits()).collect()
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(Subset(0).cardinality(), 0);
        assert_eq!(Subset(0b101).cardinality(), 2);
        assert_eq!(Subset(0b111).cardinality(), 3);
    }

    #[test]
    fn layers_of_three() {
        let f = Frame::numbered(3).unwrap();
        assert_eq!(bits(&f.layer(1).unwrap()), vec![0b001, 0b010, 0b100]);
        assert_eq!(bits(&f.layer(2).unwrap()), vec![0b011, 0b101, 0b110]);
        assert_eq!(bits(&f.layer(0).unwrap()), vec![0]);
        assert!(f.layer(4).is_err());
    }

    #[test]
    fn layer_sizes_match_brute_force() {
        let f = Frame::numbered(4).unwrap();
        let brute = (0u32..16).filter(|b| b.count_ones() == 2).count();
        assert_eq!(brute, 6);
        assert_eq!(f.layer(2).unwrap().len(), brute);
        for n in 1..=MAX_FRAME_SIZE {
            let f = Frame::numbered(n).unwrap();
            let total: usize = (0..=n).map(|t| f.layer(t).unwrap().len()).sum();
            assert_eq!(total, 1 << n);
        }
    }

    #[test]
    fn parents_examples() {
        let f = Frame::numbered(3).unwrap();
        assert_eq!(bits(&f.parents(Subset(0b001))), vec![0b011, 0b101]);
        assert_eq!(bits(&f.parents(Subset(0b011))), vec![0b111]);
        assert!(f.parents(f.full()).is_empty());

        let f4 = Frame::numbered(4).unwrap();
        let brute: Vec<u32> = (0u32..16)
            .filter(|&g| g & 1 == 1 && g.count_ones() == 2)
            .collect();
        assert_eq!(bits(&f4.parents(Subset(0b0001))), brute);
    }

    #[test]
    fn parents_agree_with_superset_scan() {
        for n in 1..=6 {
            let f = Frame::numbered(n).unwrap();
            for s in f.subsets() {
                let brute: Vec<Subset> = f
                    .subsets()
                    .filter(|g| s.is_subset_of(*g) && g.cardinality() == s.cardinality() + 1)
                    .collect();
                assert_eq!(f.parents(s), brute);
                assert_eq!(brute.len(), n - s.cardinality());
            }
        }
    }

    #[test]
    fn parent_edges_cover_next_layer() {
        let f = Frame::numbered(5).unwrap();
        for t in 0..5 {
            let mut touched: Vec<Subset> = f
                .layer(t)
                .unwrap()
                .into_iter()
                .flat_map(|s| f.parents(s))
                .collect();
            touched.sort();
            touched.dedup();
            assert_eq!(touched, f.layer(t + 1).unwrap());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(3, 2).unwrap(), 3);
        assert_eq!(binom(7, 0).unwrap(), 1);
        assert!(binom(2, 3).is_err());
        // Pascal recurrence as the oracle.
        let mut pascal = vec![vec![1u64]];
        for a in 1..=16usize {
            let prev = &pascal[a - 1];
            let row: Vec<u64> = (0..=a)
                .map(|b| {
                    let left = if b > 0 { prev[b - 1] } else { 0 };
                    let right = if b < a { prev[b] } else { 0 };
                    left + right
                })
                .collect();
            pascal.push(row);
        }
        assert_eq!(pascal[16][8], 12870);
        for a in 0..=16 {
            for b in 0..=a {
                assert_eq!(binom(a, b).unwrap(), pascal[a][b]);
            }
        }
    }

    #[test]
    fn frame_validation() {
        assert!(Frame::new(Vec::<String>::new()).is_err());
        assert!(Frame::new(["a", "a"]).is_err());
        assert!(Frame::new(["a", ""]).is_err());
        assert!(Frame::new(["a|b"]).is_err());
        assert!(Frame::numbered(17).is_err());
        assert!(Frame::numbered(16).is_ok());
    }

    #[test]
    fn subset_keys() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        assert_eq!(f.subset_key(Subset(0b101)), "a|c");
        assert_eq!(f.subset_key(Subset::EMPTY), "");
        assert_eq!(f.parse_subset_key("c|a").unwrap(), Subset(0b101));
        assert_eq!(f.parse_subset_key("").unwrap(), Subset::EMPTY);
        assert!(f.parse_subset_key("a|x").is_err());
        assert!(f.parse_subset_key("a|a").is_err());
    }

    #[test]
    fn transforms_invert() {
        let orig: Vec<f64> = (0..32).map(|i| ((i * 7 + 3) % 11) as f64 - 4.0).collect();
        let mut f = orig.clone();
        subset_sum(&mut f);
        for a in 0..32usize {
            let brute: f64 = (0..32usize).filter(|b| b & a == *b).map(|b| orig[b]).sum();
            assert_eq!(f[a], brute);
        }
        subset_mobius(&mut f);
        assert_eq!(f, orig);
        superset_sum(&mut f);
        for a in 0..32usize {
            let brute: f64 = (0..32usize).filter(|b| b & a == a).map(|b| orig[b]).sum();
            assert_eq!(f[a], brute);
        }
        superset_mobius(&mut f);
        assert_eq!(f, orig);
    }
}
