//! Isopignistic decomposition of a BPA and its reversible relative form.
//!
//! The pipeline is
//!
//! ```text
//! m ──decompose──▶ I_m ──relativize──▶ Ĩ_m ──reconstruct──▶ m
//! ```
//!
//! `I_m` splits a BPA into its empty-set mass, the singleton possibility
//! profile induced by the normalized pignistic probability, and higher-order
//! commitment flows through the subset lattice. `Ĩ_m` rescales each
//! commitment layer by the capacity of its bottleneck channel so that every
//! `[0,1]`-valued profile with a normal singleton layer reconstructs to a
//! valid BPA. Fusion operates on `Ĩ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mass::{possibility_from_pignistic, MassFunction};
use crate::powerset::{binom, Frame, Subset};

const UNIT_TOLERANCE: f64 = 1e-12;
const NORMALITY_TOLERANCE: f64 = 1e-9;
const DOMAIN_TOLERANCE: f64 = 1e-8;

/// `I_m`: `value(∅) = m(∅)`, `value({ω}) = Poss_m(ω)`, and for `|F| ≥ 2`
/// the commitment `Σ_{A⊇F} m̄(A) / C(|A|, |F|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsopignisticFunction {
    frame: Arc<Frame>,
    values: Vec<f64>,
    /// Normalized pignistic probability; empty for the empty BPA.
    pignistic: Vec<f64>,
}

impl IsopignisticFunction {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    pub fn conflict(&self) -> f64 {
        self.values[0]
    }

    pub fn pignistic(&self) -> &[f64] {
        &self.pignistic
    }
}

pub fn decompose(m: &MassFunction) -> IsopignisticFunction {
    let frame = m.frame_arc().clone();
    let n = frame.len();
    let mut values = vec![0.0; frame.power_set_size()];
    let e = m.conflict();
    values[0] = e;
    if e >= 1.0 {
        return IsopignisticFunction {
            frame,
            values,
            pignistic: Vec::new(),
        };
    }
    let p: Vec<f64> = m
        .betp_unnormalized()
        .into_iter()
        .map(|v| v / (1.0 - e))
        .collect();
    for (i, poss) in possibility_from_pignistic(&p).into_iter().enumerate() {
        values[1 << i] = poss;
    }
    let focal: Vec<(Subset, f64)> = m
        .focal_sets()
        .filter(|(s, _)| s.cardinality() >= 2)
        .map(|(s, v)| (s, v / (1.0 - e)))
        .collect();
    if !focal.is_empty() {
        // C(a, t) for a, t ≤ n
        let table: Vec<Vec<f64>> = (0..=n)
            .map(|a| (0..=a).map(|t| binom(a, t).unwrap() as f64).collect())
            .collect();
        for s in frame.subsets().filter(|s| s.cardinality() >= 2) {
            let t = s.cardinality();
            values[s.index()] = focal
                .iter()
                .filter(|(a, _)| s.is_subset_of(*a))
                .map(|(a, v)| v / table[a.cardinality()][t])
                .sum();
        }
    }
    IsopignisticFunction {
        frame,
        values,
        pignistic: p,
    }
}

/// Signed flow on the subset lattice moving a BPA inside its isopignistic
/// domain. Zero on subsets of cardinality at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaFunction {
    frame: Arc<Frame>,
    values: Vec<f64>,
}

impl ZetaFunction {
    pub fn new(frame: Arc<Frame>, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.power_set_size() {
            return Err(Error::domain(format!(
                "expected {} values, found {}",
                frame.power_set_size(),
                values.len()
            )));
        }
        for s in frame.subsets().filter(|s| s.cardinality() <= 1) {
            values[s.index()] = 0.0;
        }
        Ok(ZetaFunction { frame, values })
    }

    pub fn zero(frame: Arc<Frame>) -> Self {
        let values = vec![0.0; frame.power_set_size()];
        ZetaFunction { frame, values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    pub fn negated(&self) -> ZetaFunction {
        ZetaFunction {
            frame: self.frame.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// Flow transforming `m1` into `m2`, computed top-down from `Ω`:
/// `ζ(F) = m1(F) + Σ_{G∈Par(F)} ζ(G)/|G| − m2(F)` for `|F| ≥ 2`.
///
/// Both BPAs must share the frame, the empty-set mass and the normalized
/// pignistic probability.
pub fn zeta(m1: &MassFunction, m2: &MassFunction) -> Result<ZetaFunction> {
    m1.same_frame(m2)?;
    let de = (m1.conflict() - m2.conflict()).abs();
    let dp = match (m1.betp(), m2.betp()) {
        (Ok(p1), Ok(p2)) => {
            p1.p.iter()
                .zip(&p2.p)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        }
        (Err(_), Err(_)) => 0.0,
        _ => f64::INFINITY,
    };
    if de > DOMAIN_TOLERANCE || dp > DOMAIN_TOLERANCE {
        return Err(Error::domain(format!(
            "BPAs are not in one isopignistic domain: |Δm(∅)| = {de:.3e}, \
             max |ΔBetP| = {dp:.3e}"
        )));
    }
    let frame = m1.frame_arc().clone();
    let n = frame.len();
    let mut values = vec![0.0; frame.power_set_size()];
    for t in (2..=n).rev() {
        for s in frame.layer(t)? {
            let inflow: f64 = frame
                .parents(s)
                .iter()
                .map(|g| values[g.index()] / g.cardinality() as f64)
                .sum();
            values[s.index()] = m1.mass(s) + inflow - m2.mass(s);
        }
    }
    Ok(ZetaFunction { frame, values })
}

/// `m'(F) = m(F) − ζ(F) + Σ_{G∈Par(F)} ζ(G)/|G|` for nonempty `F`.
pub fn apply_zeta(m: &MassFunction, zeta: &ZetaFunction) -> Result<MassFunction> {
    if **m.frame_arc() != *zeta.frame {
        return Err(Error::FrameMismatch(
            "trans-isopignistic function belongs to another frame".into(),
        ));
    }
    let frame = m.frame_arc().clone();
    let mut out = m.masses().to_vec();
    for s in frame.subsets().filter(|s| !s.is_empty()) {
        let inflow: f64 = frame
            .parents(s)
            .iter()
            .map(|g| zeta.values[g.index()] / g.cardinality() as f64)
            .sum();
        out[s.index()] = m.mass(s) - zeta.values[s.index()] + inflow;
    }
    if let Some(s) = frame
        .subsets()
        .find(|s| out[s.index()] < -crate::mass::NEGATIVE_TOLERANCE)
    {
        return Err(Error::domain(format!(
            "transformation yields negative mass {} on {{{}}}",
            out[s.index()],
            frame.subset_key(s)
        )));
    }
    MassFunction::new(frame, out)
}

/// Layer-wise `[0,1]` profile `Ĩ`. The singleton layer is a possibility
/// profile; each higher layer carries relative commitment strengths.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeRepresentation {
    frame: Arc<Frame>,
    values: Vec<f64>,
}

impl RelativeRepresentation {
    /// Checks every value lies in `[0,1]`. Normality of the singleton layer
    /// is checked by [`reconstruct`], not here, so fused raw profiles can be
    /// represented.
    pub fn new(frame: Arc<Frame>, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.power_set_size() {
            return Err(Error::domain(format!(
                "expected {} values, found {}",
                frame.power_set_size(),
                values.len()
            )));
        }
        for (i, v) in values.iter_mut().enumerate() {
            if !v.is_finite() || *v < -UNIT_TOLERANCE || *v > 1.0 + UNIT_TOLERANCE {
                return Err(Error::domain(format!(
                    "value {v} on {{{}}} is outside [0, 1]",
                    frame.subset_key(Subset(i as u32))
                )));
            }
            *v = v.clamp(0.0, 1.0);
        }
        Ok(RelativeRepresentation { frame, values })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    /// `e`, the empty-set component.
    pub fn conflict(&self) -> f64 {
        self.values[0]
    }

    /// Singleton profile `π^(1)` in frame order.
    pub fn singleton_profile(&self) -> Vec<f64> {
        (0..self.frame.len()).map(|i| self.values[1 << i]).collect()
    }

    /// `π^(t)` over the subsets of cardinality `t`, in ascending bitmask order.
    pub fn layer(&self, t: usize) -> Result<Vec<(Subset, f64)>> {
        Ok(self
            .frame
            .layer(t)?
            .into_iter()
            .map(|s| (s, self.values[s.index()]))
            .collect())
    }
}

/// Scaling applied between layer `t` and `t + 1` during relativization or
/// reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerScaling {
    pub layer: usize,
    /// First channel attaining the minimum ratio, `None` when every channel
    /// is inactive.
    pub bottleneck: Option<Subset>,
    /// `s(t)` when relativizing, `r(t)` when reconstructing.
    pub coefficient: f64,
}

/// Minimum of `transmit(F) / Σ_{G∈Par(F)} parents(G)` over the layer's
/// active channels (positive parent sum).
fn bottleneck(
    frame: &Frame,
    layer: &[Subset],
    transmit: impl Fn(Subset) -> f64,
    parent_values: &[f64],
) -> Option<(Subset, f64)> {
    let mut best: Option<(Subset, f64)> = None;
    for &s in layer {
        let denom: f64 = frame
            .parents(s)
            .iter()
            .map(|g| parent_values[g.index()])
            .sum();
        if denom <= 0.0 {
            continue;
        }
        let ratio = transmit(s) / denom;
        if best.is_none_or(|(_, r)| ratio < r) {
            best = Some((s, ratio));
        }
    }
    best
}

fn layer_max(values: &[f64], layer: &[Subset]) -> f64 {
    layer.iter().map(|s| values[s.index()]).fold(0.0, f64::max)
}

pub fn relativize(m: &MassFunction) -> RelativeRepresentation {
    relativize_with_scaling(m).0
}

/// [`relativize`] plus the per-layer scaling coefficients `s(t)`.
pub fn relativize_with_scaling(m: &MassFunction) -> (RelativeRepresentation, Vec<LayerScaling>) {
    let iso = decompose(m);
    let frame = iso.frame.clone();
    let n = frame.len();
    let mut rel = iso.values.clone();
    let mut scalings = Vec::with_capacity(n.saturating_sub(1));
    if iso.conflict() >= 1.0 {
        return (RelativeRepresentation { frame, values: rel }, scalings);
    }
    let layers: Vec<Vec<Subset>> = (0..=n).map(|t| frame.layer(t).unwrap()).collect();
    for t in 1..n {
        let transmit = |s: Subset| {
            if t == 1 {
                iso.pignistic[s.element().unwrap()]
            } else {
                iso.values[s.index()]
            }
        };
        let found = bottleneck(&frame, &layers[t], transmit, &iso.values);
        let next = &layers[t + 1];
        let max = layer_max(&iso.values, next);
        let coefficient = match found {
            Some((_, ratio)) if ratio > 0.0 => 1.0 / ((t + 1) as f64 * ratio),
            _ => 0.0,
        };
        for g in next {
            rel[g.index()] = if max > 0.0 {
                coefficient * iso.values[g.index()] / max
            } else {
                0.0
            };
        }
        scalings.push(LayerScaling {
            layer: t,
            bottleneck: found.map(|(s, _)| s),
            coefficient,
        });
    }
    (RelativeRepresentation { frame, values: rel }, scalings)
}

/// Inverts the singleton step: recovers the probability whose induced
/// possibility profile is `pi`. `pi` must be normal (max = 1).
pub fn probability_from_possibility(pi: &[f64]) -> Result<Vec<f64>> {
    let n = pi.len();
    if n == 0 {
        return Err(Error::domain("empty possibility profile"));
    }
    if let Some(v) = pi
        .iter()
        .find(|v| !(-UNIT_TOLERANCE..=1.0 + UNIT_TOLERANCE).contains(*v))
    {
        return Err(Error::domain(format!(
            "possibility value {v} is outside [0, 1]"
        )));
    }
    let max = pi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if (max - 1.0).abs() > NORMALITY_TOLERANCE {
        return Err(Error::precondition(format!(
            "possibility profile is subnormal: max = {max}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pi[b].total_cmp(&pi[a]));
    let mut p = vec![0.0; n];
    p[order[n - 1]] = pi[order[n - 1]] / n as f64;
    for r in (0..n - 1).rev() {
        let (hi, lo) = (order[r], order[r + 1]);
        p[hi] = p[lo] + (pi[hi] - pi[lo]) / (r + 1) as f64;
    }
    Ok(p)
}

pub fn reconstruct(rel: &RelativeRepresentation) -> Result<MassFunction> {
    reconstruct_with_scaling(rel).map(|(m, _)| m)
}

/// Rebuilds the BPA from a relative representation, layer by layer.
///
/// The singleton layer yields the pignistic probability `p`; each higher
/// layer is rescaled by `r(t)` so the recovered commitment never exceeds
/// the capacity of the layer below. Normalized masses are then
/// `m̄(F) = T(F) − Σ_{G∈Par(F)} I(G)/|G|`, where the transmit amount `T` is
/// `p(ω)` on singletons and `I(F)` above. Using `p` rather than the
/// possibility value on the singleton row is what makes this the inverse of
/// [`relativize`].
pub fn reconstruct_with_scaling(
    rel: &RelativeRepresentation,
) -> Result<(MassFunction, Vec<LayerScaling>)> {
    let frame = rel.frame.clone();
    let n = frame.len();
    let e = rel.conflict();
    let mut scalings = Vec::with_capacity(n.saturating_sub(1));
    if e >= 1.0 {
        return Ok((MassFunction::empty(frame), scalings));
    }
    let p = probability_from_possibility(&rel.singleton_profile())?;
    let mut iso = vec![0.0; frame.power_set_size()];
    let layers: Vec<Vec<Subset>> = (0..=n).map(|t| frame.layer(t).unwrap()).collect();
    for t in 1..n {
        let transmit = |s: Subset| {
            if t == 1 {
                p[s.element().unwrap()]
            } else {
                iso[s.index()]
            }
        };
        let found = bottleneck(&frame, &layers[t], transmit, &rel.values);
        let next = &layers[t + 1];
        let max = layer_max(&rel.values, next);
        let coefficient = found.map_or(0.0, |(_, ratio)| (t + 1) as f64 * ratio);
        for g in next {
            iso[g.index()] = coefficient * rel.values[g.index()] * max;
        }
        scalings.push(LayerScaling {
            layer: t,
            bottleneck: found.map(|(s, _)| s),
            coefficient,
        });
    }
    let mut masses = vec![0.0; frame.power_set_size()];
    masses[0] = e;
    for s in frame.subsets().filter(|s| !s.is_empty()) {
        let transmit = match s.element() {
            Some(i) => p[i],
            None => iso[s.index()],
        };
        let outflow: f64 = frame
            .parents(s)
            .iter()
            .map(|g| iso[g.index()] / g.cardinality() as f64)
            .sum();
        masses[s.index()] = (1.0 - e) * (transmit - outflow);
    }
    let m = MassFunction::from_computed(frame, masses)?;
    Ok((m, scalings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EX1_M1: [f64; 8] = [0.02, 0.10, 0.10, 0.25, 0.06, 0.27, 0.02, 0.18];
    const EX1_M2: [f64; 8] = [0.02, 0.145, 0.02, 0.02, 0.0, 0.0, 0.0, 0.795];

    fn frame3() -> Arc<Frame> {
        Arc::new(Frame::numbered(3).unwrap())
    }

    fn m(values: &[f64]) -> MassFunction {
        MassFunction::new(frame3(), values.to_vec()).unwrap()
    }

    fn assert_vec(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (i, (a, b)) in actual.iter().zip(expected).enumerate() {
            assert!((a - b).abs() <= tol, "entry {i}: {a} vs {b} (tol {tol})");
        }
    }

    #[test]
    fn decompose_example_bpa() {
        let iso = decompose(&m(&EX1_M1));
        assert_vec(
            iso.values(),
            &[0.02, 1.0, 0.872, 0.316, 0.811, 0.337, 0.082, 0.184],
            2e-3,
        );
    }

    #[test]
    fn decompose_vacuous_and_bayesian() {
        let iso = decompose(&MassFunction::vacuous(frame3()));
        assert_vec(
            iso.values(),
            &[0.0, 1.0, 1.0, 1.0 / 3.0, 1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0],
            1e-12,
        );
        let iso = decompose(&m(&[0., 0.2, 0.5, 0., 0.3, 0., 0., 0.]));
        for s in iso.frame().subsets().filter(|s| s.cardinality() >= 2) {
            assert_eq!(iso.value(s), 0.0);
        }
        let empty = decompose(&MassFunction::empty(frame3()));
        assert_eq!(empty.values(), &[1.0, 0., 0., 0., 0., 0., 0., 0.]);
    }

    #[test]
    fn zeta_example() {
        let z = zeta(&m(&EX1_M1), &m(&EX1_M2)).unwrap();
        assert_abs_diff_eq!(z.value(Subset(0b111)), -0.615, epsilon = 1e-9);
        assert_abs_diff_eq!(z.value(Subset(0b011)), 0.025, epsilon = 1e-9);
        assert_abs_diff_eq!(z.value(Subset(0b101)), 0.065, epsilon = 1e-9);
        assert_abs_diff_eq!(z.value(Subset(0b110)), -0.185, epsilon = 1e-9);
        for i in 0..3 {
            assert_eq!(z.value(Subset::singleton(i)), 0.0);
        }
        let moved = apply_zeta(&m(&EX1_M1), &z).unwrap();
        assert_vec(moved.masses(), &EX1_M2, 1e-9);
        let back = apply_zeta(&moved, &z.negated()).unwrap();
        assert_vec(back.masses(), &EX1_M1, 1e-12);
    }

    #[test]
    fn zeta_identity_and_domain_check() {
        let z = zeta(&m(&EX1_M1), &m(&EX1_M1)).unwrap();
        assert!(z.values().iter().all(|&v| v.abs() < 1e-15));
        let same = apply_zeta(&m(&EX1_M1), &ZetaFunction::zero(frame3())).unwrap();
        assert_eq!(same.masses(), &EX1_M1);
        let other = m(&[0.02, 0.3, 0.3, 0., 0.38, 0., 0., 0.]);
        let err = zeta(&m(&EX1_M1), &other).unwrap_err();
        assert!(err.to_string().contains("isopignistic"));
    }

    #[test]
    fn apply_zeta_rejects_negative_mass() {
        let mut values = vec![0.0; 8];
        values[7] = 0.5;
        let z = ZetaFunction::new(frame3(), values).unwrap();
        let err = apply_zeta(&m(&EX1_M1), &z).unwrap_err();
        assert!(err.to_string().contains("{1|2|3}"), "{err}");
    }

    #[test]
    fn relativize_example_bpa() {
        let (rel, scalings) = relativize_with_scaling(&m(&EX1_M1));
        assert_vec(
            rel.values(),
            &[0.02, 1.0, 0.872, 0.728, 0.811, 0.776, 0.189, 0.748],
            4e-3,
        );
        assert_eq!(scalings[0].bottleneck, Some(Subset(0b100)));
        assert_abs_diff_eq!(scalings[0].coefficient, 41.0 / 53.0, epsilon = 1e-12);
        assert_eq!(scalings[1].bottleneck, Some(Subset(0b110)));
        assert_abs_diff_eq!(scalings[1].coefficient, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn relativize_consonant_and_bayesian() {
        let rel = relativize(&m(&[0., 0., 0., 0., 0.3, 0., 0.3, 0.4]));
        assert_vec(
            rel.values(),
            &[0.0, 0.4, 0.7, 0.308, 1.0, 0.308, 1.0, 1.0],
            1e-3,
        );
        let bay = m(&[0., 0.2, 0.5, 0., 0.3, 0., 0., 0.]);
        let rel = relativize(&bay);
        assert_vec(
            rel.values(),
            &[0.0, 0.6, 1.0, 0.0, 0.8, 0.0, 0.0, 0.0],
            1e-12,
        );
        let vac = relativize(&MassFunction::vacuous(frame3()));
        assert_vec(
            vac.values(),
            &[0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
            1e-12,
        );
    }

    #[test]
    fn probability_from_possibility_examples() {
        let p = probability_from_possibility(&[1.0; 4]).unwrap();
        assert_vec(&p, &[0.25; 4], 1e-15);
        let p = probability_from_possibility(&[0.4, 1.0, 0.6]).unwrap();
        assert_vec(&p, &[0.4 / 3.0, 0.4 / 3.0 + 0.5, 0.4 / 3.0 + 0.1], 1e-12);
        assert_abs_diff_eq!(p[0], 0.1333, epsilon = 1e-4);
        assert_abs_diff_eq!(p[1], 0.6333, epsilon = 1e-4);
        assert_abs_diff_eq!(p[2], 0.2333, epsilon = 1e-4);
        assert!(matches!(
            probability_from_possibility(&[0.4, 0.9]),
            Err(Error::Precondition(_))
        ));
        assert!(probability_from_possibility(&[1.2, 1.0]).is_err());
    }

    #[test]
    fn reconstruct_fused_example() {
        let rel = RelativeRepresentation::new(
            frame3(),
            vec![0.136, 0.863, 1.000, 0.727, 0.921, 0.920, 0.743, 0.750],
        )
        .unwrap();
        let fused = reconstruct(&rel).unwrap();
        assert_vec(
            fused.masses(),
            &[0.136, 0.020, 0.138, 0.050, 0.043, 0.104, 0.055, 0.454],
            2e-3,
        );
    }

    #[test]
    fn reconstruct_empty_and_round_trip() {
        let mut values = vec![0.3; 8];
        values[0] = 1.0;
        let rel = RelativeRepresentation::new(frame3(), values).unwrap();
        assert!(reconstruct(&rel).unwrap().is_empty_bpa());

        for values in [EX1_M1, EX1_M2] {
            let orig = m(&values);
            let back = reconstruct(&relativize(&orig)).unwrap();
            assert_vec(back.masses(), orig.masses(), 1e-12);
        }
    }

    #[test]
    fn reconstruct_rejects_subnormal_singletons() {
        let rel = RelativeRepresentation::new(frame3(), vec![0.1, 0.5, 0.9, 0., 0.4, 0., 0., 0.])
            .unwrap();
        assert!(matches!(reconstruct(&rel), Err(Error::Precondition(_))));
        assert!(RelativeRepresentation::new(frame3(), vec![1.5; 8]).is_err());
    }

    #[test]
    fn naive_inversion_breaks_but_relative_path_does_not() {
        // Editing I_m directly and inverting the decomposition goes negative.
        let iso = decompose(&m(&EX1_M1));
        let mut edited = iso.values().to_vec();
        edited[0b011] = 0.6;
        let frame = frame3();
        let p = iso.pignistic();
        let mut naive = vec![0.0; 8];
        naive[0] = edited[0];
        for s in frame.subsets().filter(|s| !s.is_empty()) {
            let transmit = s.element().map_or(edited[s.index()], |i| p[i]);
            let outflow: f64 = frame
                .parents(s)
                .iter()
                .map(|g| edited[g.index()] / g.cardinality() as f64)
                .sum();
            naive[s.index()] = (1.0 - edited[0]) * (transmit - outflow);
        }
        assert_vec(
            &naive,
            &[0.02, -0.039, -0.039, 0.528, 0.060, 0.270, 0.020, 0.180],
            2e-3,
        );
        assert!(MassFunction::new(frame.clone(), naive).is_err());

        let mut rel = relativize(&m(&EX1_M1)).values().to_vec();
        rel[0b011] = 0.6;
        let rel = RelativeRepresentation::new(frame, rel).unwrap();
        assert!(reconstruct(&rel).is_ok());
    }
}
