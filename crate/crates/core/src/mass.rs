//! Mass functions and their equivalent set-function representations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::powerset::{self, Frame, Subset};

/// Entries below `-NEGATIVE_TOLERANCE` are rejected as negative mass.
pub const NEGATIVE_TOLERANCE: f64 = 1e-12;
/// Allowed deviation of the total mass from 1.
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Rounding noise tolerated on masses produced by this crate's own
/// transformations before they are validated.
const COMPUTED_NEGATIVE_TOLERANCE: f64 = 1e-9;

/// Outcome of checking a dense mass vector against the BPA invariants.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub expected_len: usize,
    pub len: usize,
    pub sum: f64,
    /// Focal-set keys and values of entries that are negative or not finite.
    pub offending: Vec<(String, f64)>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.len == self.expected_len
            && self.offending.is_empty()
            && (self.sum - 1.0).abs() <= SUM_TOLERANCE
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len != self.expected_len {
            return write!(
                f,
                "expected {} entries, found {}",
                self.expected_len, self.len
            );
        }
        let mut parts = Vec::new();
        for (key, value) in &self.offending {
            parts.push(format!("m({{{key}}}) = {value}"));
        }
        if (self.sum - 1.0).abs() > SUM_TOLERANCE {
            parts.push(format!("masses sum to {}", self.sum));
        }
        if parts.is_empty() {
            write!(f, "ok")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Checks a dense mass vector without constructing a [`MassFunction`].
pub fn validate(frame: &Frame, masses: &[f64]) -> ValidationReport {
    let expected_len = frame.power_set_size();
    let mut report = ValidationReport {
        expected_len,
        len: masses.len(),
        sum: masses.iter().sum(),
        offending: Vec::new(),
    };
    if masses.len() == expected_len {
        for s in frame.subsets() {
            let v = masses[s.index()];
            if !v.is_finite() || v < -NEGATIVE_TOLERANCE {
                report.offending.push((frame.subset_key(s), v));
            }
        }
    }
    report
}

/// A basic probability assignment over the power set of a frame, stored
/// densely (one entry per subset, indexed by bitmask).
///
/// Masses are nonnegative and sum to one. The empty set may carry mass,
/// read as conflict or non-normalizedness.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Arc<Frame>,
    masses: Vec<f64>,
}

impl MassFunction {
    /// Validates and wraps a dense mass vector. Entries in
    /// `[-NEGATIVE_TOLERANCE, 0)` are snapped to zero.
    pub fn new(frame: Arc<Frame>, mut masses: Vec<f64>) -> Result<Self> {
        let report = validate(&frame, &masses);
        if !report.is_ok() {
            return Err(Error::InvalidMass(report));
        }
        for v in masses.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(MassFunction { frame, masses })
    }

    pub fn from_focal_sets(frame: Arc<Frame>, focal: &[(Subset, f64)]) -> Result<Self> {
        let mut masses = vec![0.0; frame.power_set_size()];
        for &(s, v) in focal {
            frame.check(s)?;
            masses[s.index()] += v;
        }
        MassFunction::new(frame, masses)
    }

    /// Wraps the output of an internal computation, absorbing rounding noise
    /// up to `1e-9` below zero.
    pub(crate) fn from_computed(frame: Arc<Frame>, mut masses: Vec<f64>) -> Result<Self> {
        for v in masses.iter_mut() {
            if *v < 0.0 && *v > -COMPUTED_NEGATIVE_TOLERANCE {
                *v = 0.0;
            }
        }
        MassFunction::new(frame, masses)
    }

    /// `m(Ω) = 1`.
    pub fn vacuous(frame: Arc<Frame>) -> Self {
        let mut masses = vec![0.0; frame.power_set_size()];
        masses[frame.full().index()] = 1.0;
        MassFunction { frame, masses }
    }

    /// `m(∅) = 1`.
    pub fn empty(frame: Arc<Frame>) -> Self {
        let mut masses = vec![0.0; frame.power_set_size()];
        masses[0] = 1.0;
        MassFunction { frame, masses }
    }

    /// Bayesian BPA with `m({ω_i}) = probs[i]`.
    pub fn bayesian(frame: Arc<Frame>, probs: &[f64]) -> Result<Self> {
        if probs.len() != frame.len() {
            return Err(Error::FrameMismatch(format!(
                "{} probabilities for a frame of {} elements",
                probs.len(),
                frame.len()
            )));
        }
        let mut masses = vec![0.0; frame.power_set_size()];
        for (i, &p) in probs.iter().enumerate() {
            masses[1 << i] = p;
        }
        MassFunction::new(frame, masses)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn into_masses(self) -> Vec<f64> {
        self.masses
    }

    pub fn mass(&self, s: Subset) -> f64 {
        self.masses[s.index()]
    }

    /// `m(∅)`.
    pub fn conflict(&self) -> f64 {
        self.masses[0]
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| (Subset(i as u32), v))
    }

    pub fn same_frame(&self, other: &MassFunction) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch(format!(
                "{} vs {}",
                self.frame, other.frame
            )))
        }
    }

    pub fn is_bayesian(&self) -> bool {
        self.focal_sets().all(|(s, _)| s.cardinality() == 1)
    }

    pub fn is_vacuous(&self) -> bool {
        self.mass(self.frame.full()) == 1.0
    }

    pub fn is_empty_bpa(&self) -> bool {
        self.masses[0] == 1.0
    }

    /// `m(Ω) = 0`.
    pub fn is_dogmatic(&self) -> bool {
        self.mass(self.frame.full()) <= 0.0
    }

    pub fn is_normalized(&self) -> bool {
        self.masses[0] <= 0.0
    }

    /// Nonempty focal sets are nested.
    pub fn is_consonant(&self) -> bool {
        let mut focal: Vec<Subset> = self
            .focal_sets()
            .map(|(s, _)| s)
            .filter(|s| !s.is_empty())
            .collect();
        focal.sort_by_key(|s| s.cardinality());
        focal.windows(2).all(|w| w[0].is_subset_of(w[1]))
    }

    /// `Bel(F) = Σ_{∅≠G⊆F} m(G)`.
    pub fn bel(&self, f: Subset) -> f64 {
        self.implicability(f) - self.masses[0]
    }

    /// `Pl(F) = Σ_{G∩F≠∅} m(G)`.
    pub fn pl(&self, f: Subset) -> f64 {
        self.focal_sets()
            .filter(|(g, _)| !g.intersection(f).is_empty())
            .map(|(_, v)| v)
            .sum()
    }

    /// Commonality `q(F) = Σ_{G⊇F} m(G)`.
    pub fn commonality(&self, f: Subset) -> f64 {
        self.focal_sets()
            .filter(|(g, _)| f.is_subset_of(*g))
            .map(|(_, v)| v)
            .sum()
    }

    /// Implicability `b(F) = Σ_{G⊆F} m(G)`.
    pub fn implicability(&self, f: Subset) -> f64 {
        self.focal_sets()
            .filter(|(g, _)| g.is_subset_of(f))
            .map(|(_, v)| v)
            .sum()
    }

    /// Dense commonality function.
    pub fn commonality_function(&self) -> Vec<f64> {
        let mut q = self.masses.clone();
        powerset::superset_sum(&mut q);
        q
    }

    /// Dense implicability function.
    pub fn implicability_function(&self) -> Vec<f64> {
        let mut b = self.masses.clone();
        powerset::subset_sum(&mut b);
        b
    }

    pub fn belief_function(&self) -> Vec<f64> {
        let e = self.masses[0];
        self.implicability_function()
            .into_iter()
            .map(|b| b - e)
            .collect()
    }

    pub fn plausibility_function(&self) -> Vec<f64> {
        let b = self.implicability_function();
        let frame = &self.frame;
        frame
            .subsets()
            .map(|s| 1.0 - b[frame.complement(s).index()])
            .collect()
    }

    /// Unnormalized pignistic probability, `BetP(ω) = Σ_{ω∈F} m(F)/|F|`.
    pub fn betp_unnormalized(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.frame.len()];
        for (s, v) in self.focal_sets() {
            let share = v / s.cardinality() as f64;
            for i in s.elements() {
                p[i] += share;
            }
        }
        p
    }

    /// Normalized pignistic probability.
    pub fn betp(&self) -> Result<PignisticDistribution> {
        let e = self.masses[0];
        if e >= 1.0 {
            return Err(Error::precondition(
                "the empty BPA (m(∅) = 1) has no normalized pignistic probability",
            ));
        }
        let p = self
            .betp_unnormalized()
            .into_iter()
            .map(|v| v / (1.0 - e))
            .collect();
        Ok(PignisticDistribution { p, empty_mass: e })
    }

    /// `Ign(m) = Σ_{F≠∅} m(F)·|F|`.
    pub fn ignorance(&self) -> f64 {
        self.focal_sets()
            .map(|(s, v)| v * s.cardinality() as f64)
            .sum()
    }

    /// Shannon entropy (bits) of the normalized pignistic probability.
    pub fn pignistic_entropy(&self) -> Result<f64> {
        Ok(self.betp()?.entropy())
    }

    /// Classical discounting: scales every mass by `1 − alpha` and gives
    /// `alpha` to `Ω`.
    pub fn discount(&self, alpha: f64) -> Result<MassFunction> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!(
                "discount rate {alpha} is outside [0, 1]"
            )));
        }
        let mut masses: Vec<f64> = self.masses.iter().map(|v| v * (1.0 - alpha)).collect();
        masses[self.frame.full().index()] += alpha;
        MassFunction::from_computed(self.frame.clone(), masses)
    }

    /// Conjunctive weights `σ`. Requires `m(Ω) > 0`.
    pub fn weight_sigma(&self) -> Result<WeightFunction> {
        let full = self.frame.full();
        if self.mass(full) <= 0.0 {
            return Err(Error::precondition(
                "conjunctive weights need a non-dogmatic BPA: m(Ω) is zero",
            ));
        }
        // ln σ(F) = -Σ_{G⊇F} (-1)^{|G|-|F|} ln q(G)
        let mut g: Vec<f64> = self.commonality_function().iter().map(|q| q.ln()).collect();
        powerset::superset_mobius(&mut g);
        let mut weights: Vec<f64> = g.into_iter().map(|v| (-v).exp()).collect();
        weights[full.index()] = 1.0;
        Ok(WeightFunction {
            frame: self.frame.clone(),
            kind: WeightKind::Conjunctive,
            weights,
        })
    }

    /// Disjunctive weights `v`. Requires `m(∅) > 0`.
    pub fn weight_v(&self) -> Result<WeightFunction> {
        if self.masses[0] <= 0.0 {
            return Err(Error::precondition(
                "disjunctive weights need an unnormalized BPA: m(∅) is zero",
            ));
        }
        // ln v(F) = -Σ_{G⊆F} (-1)^{|F|-|G|} ln b(G)
        let mut g: Vec<f64> = self
            .implicability_function()
            .iter()
            .map(|b| b.ln())
            .collect();
        powerset::subset_mobius(&mut g);
        let mut weights: Vec<f64> = g.into_iter().map(|v| (-v).exp()).collect();
        weights[0] = 1.0;
        Ok(WeightFunction {
            frame: self.frame.clone(),
            kind: WeightKind::Disjunctive,
            weights,
        })
    }
}

/// Normalized pignistic probability together with the empty-set mass it was
/// normalized by.
#[derive(Debug, Clone, PartialEq)]
pub struct PignisticDistribution {
    pub p: Vec<f64>,
    pub empty_mass: f64,
}

impl PignisticDistribution {
    pub fn possibility(&self) -> Vec<f64> {
        possibility_from_pignistic(&self.p)
    }

    pub fn entropy(&self) -> f64 {
        -self
            .p
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x * x.log2())
            .sum::<f64>()
    }

    /// Index of the most probable element; the first one wins ties.
    pub fn argmax(&self) -> usize {
        argmax(&self.p)
    }
}

pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Consonant possibility profile induced by a probability vector:
/// `Poss(ω_i) = Σ_j min(p_i, p_j)`.
pub fn possibility_from_pignistic(p: &[f64]) -> Vec<f64> {
    p.iter()
        .map(|&pi| p.iter().map(|&pj| pi.min(pj)).sum::<f64>().min(1.0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// `σ`, defined on `F ⊂ Ω`; simple components `{m(F) = 1-σ, m(Ω) = σ}`.
    Conjunctive,
    /// `v`, defined on `F ≠ ∅`; simple components `{m(F) = 1-v, m(∅) = v}`.
    Disjunctive,
}

/// Canonical decomposition weights. Stored densely; the one subset outside
/// the domain (`Ω` for `σ`, `∅` for `v`) holds the neutral weight `1`.
/// Weights are strictly positive and may exceed one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    frame: Arc<Frame>,
    kind: WeightKind,
    weights: Vec<f64>,
}

impl WeightFunction {
    pub fn new(frame: Arc<Frame>, kind: WeightKind, mut weights: Vec<f64>) -> Result<Self> {
        if weights.len() != frame.power_set_size() {
            return Err(Error::domain(format!(
                "expected {} weights, found {}",
                frame.power_set_size(),
                weights.len()
            )));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::domain(format!(
                "weight of {{{}}} is {w}, weights must be positive",
                frame.subset_key(Subset(i as u32))
            )));
        }
        match kind {
            WeightKind::Conjunctive => weights[frame.full().index()] = 1.0,
            WeightKind::Disjunctive => weights[0] = 1.0,
        }
        Ok(WeightFunction {
            frame,
            kind,
            weights,
        })
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, s: Subset) -> f64 {
        self.weights[s.index()]
    }

    /// Subsets in the weight function's domain.
    pub fn domain(&self) -> impl Iterator<Item = Subset> + '_ {
        let skip = match self.kind {
            WeightKind::Conjunctive => self.frame.full(),
            WeightKind::Disjunctive => Subset::EMPTY,
        };
        self.frame.subsets().filter(move |&s| s != skip)
    }

    /// Pointwise minimum of two weight functions of the same kind.
    pub fn min(&self, other: &WeightFunction) -> Result<WeightFunction> {
        if self.frame != other.frame || self.kind != other.kind {
            return Err(Error::FrameMismatch(
                "weight functions differ in frame or kind".into(),
            ));
        }
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| a.min(*b))
            .collect();
        Ok(WeightFunction {
            frame: self.frame.clone(),
            kind: self.kind,
            weights,
        })
    }

    /// Combines the simple mass functions generated by the weights (CCR for
    /// `σ`, DCR for `v`) through the commonality / implicability product.
    pub fn to_mass(&self) -> Result<MassFunction> {
        let mut g: Vec<f64> = self.weights.iter().map(|w| w.ln()).collect();
        let total: f64 = g.iter().sum();
        let masses = match self.kind {
            WeightKind::Conjunctive => {
                // ln q(A) = Σ_{F⊂Ω, A⊄F} ln σ(F)
                powerset::superset_sum(&mut g);
                let mut q: Vec<f64> = g.iter().map(|s| (total - s).exp()).collect();
                powerset::superset_mobius(&mut q);
                q
            }
            WeightKind::Disjunctive => {
                // ln b(A) = Σ_{F≠∅, F⊄A} ln v(F)
                powerset::subset_sum(&mut g);
                let mut b: Vec<f64> = g.iter().map(|s| (total - s).exp()).collect();
                powerset::subset_mobius(&mut b);
                b
            }
        };
        MassFunction::from_computed(self.frame.clone(), masses)
    }
}
