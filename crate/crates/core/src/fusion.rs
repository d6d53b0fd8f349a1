//! PECR and the classical combination rules.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::isopignistic::{reconstruct, relativize, RelativeRepresentation};
use crate::mass::MassFunction;
use crate::powerset::{Frame, Subset};
use crate::tnorm::{Kind, TriangularOperator};

const ORDER_TOLERANCE: f64 = 1e-10;

/// Operator pair for PECR: `propensity` aggregates the discounted singleton
/// profiles, `commitment` aggregates each higher layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionConfig {
    propensity: TriangularOperator,
    commitment: TriangularOperator,
}

impl FusionConfig {
    pub fn new(propensity: TriangularOperator, commitment: TriangularOperator) -> Result<Self> {
        if propensity.kind() == Kind::Mean {
            return Err(Error::domain(
                "the propensity operator must be a t-norm or a t-conorm",
            ));
        }
        Ok(FusionConfig {
            propensity,
            commitment,
        })
    }

    pub fn propensity(&self) -> TriangularOperator {
        self.propensity
    }

    pub fn commitment(&self) -> TriangularOperator {
        self.commitment
    }

    /// False when the commitment operator is the mean.
    pub fn is_associative(&self) -> bool {
        self.propensity.is_associative() && self.commitment.is_associative()
    }
}

impl fmt::Display for FusionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pecr:{}:{}", self.propensity, self.commitment)
    }
}

/// Intermediate quantities of a PECR run.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedDiagnostics {
    /// Fused singleton profile before normalization by the height.
    pub raw_propensity: Vec<f64>,
    pub height: f64,
    /// `1 − height`.
    pub conflict: f64,
    /// Fused relative representation handed to reconstruction.
    pub relative: RelativeRepresentation,
}

fn common_frame<'a>(frames: impl IntoIterator<Item = &'a Frame>) -> Result<()> {
    let mut it = frames.into_iter();
    let Some(first) = it.next() else {
        return Ok(());
    };
    for (i, f) in it.enumerate() {
        if f != first {
            return Err(Error::FrameMismatch(format!(
                "source {} uses frame {f}, expected {first}",
                i + 2
            )));
        }
    }
    Ok(())
}

fn check_sources(reps: &[RelativeRepresentation]) -> Result<()> {
    if reps.len() < 2 {
        return Err(Error::precondition(format!(
            "fusion needs at least two sources, got {}",
            reps.len()
        )));
    }
    common_frame(reps.iter().map(|r| r.frame()))
}

/// Pointwise `op` over the discounted singleton profiles `(1 − e_i)·π_i`.
pub fn propensity_fuse(
    reps: &[RelativeRepresentation],
    op: TriangularOperator,
) -> Result<Vec<f64>> {
    check_sources(reps)?;
    let n = reps[0].frame().len();
    Ok((0..n)
        .map(|i| {
            let s = Subset::singleton(i);
            op.fold_unchecked(reps.iter().map(|r| (1.0 - r.conflict()) * r.value(s)))
        })
        .collect())
}

/// Pointwise `op` over the layer-`t` profiles, in ascending bitmask order.
pub fn commitment_fuse(
    reps: &[RelativeRepresentation],
    op: TriangularOperator,
    t: usize,
) -> Result<Vec<(Subset, f64)>> {
    check_sources(reps)?;
    let frame = reps[0].frame();
    if t < 2 || t > frame.len() {
        return Err(Error::domain(format!(
            "commitment layer {t} is outside 2..={}",
            frame.len()
        )));
    }
    Ok(frame
        .layer(t)?
        .into_iter()
        .map(|s| (s, op.fold_unchecked(reps.iter().map(|r| r.value(s)))))
        .collect())
}

pub fn pecr(
    sources: &[MassFunction],
    cfg: &FusionConfig,
) -> Result<(MassFunction, FusedDiagnostics)> {
    common_frame(sources.iter().map(|m| m.frame()))?;
    let reps: Vec<RelativeRepresentation> = sources.iter().map(relativize).collect();
    pecr_relative(&reps, cfg)
}

/// PECR on precomputed relative representations.
pub fn pecr_relative(
    reps: &[RelativeRepresentation],
    cfg: &FusionConfig,
) -> Result<(MassFunction, FusedDiagnostics)> {
    let raw = propensity_fuse(reps, cfg.propensity)?;
    let frame = reps[0].frame_arc().clone();
    let height = raw.iter().copied().fold(0.0, f64::max);
    let mut values = vec![0.0; frame.power_set_size()];
    values[0] = 1.0 - height;
    if height > 0.0 {
        for (i, v) in raw.iter().enumerate() {
            values[1 << i] = v / height;
        }
        for t in 2..=frame.len() {
            for (s, v) in commitment_fuse(reps, cfg.commitment, t)? {
                values[s.index()] = v;
            }
        }
    }
    let relative = RelativeRepresentation::new(frame.clone(), values)?;
    let fused = if height > 0.0 {
        reconstruct(&relative)?
    } else {
        MassFunction::empty(frame)
    };
    let diagnostics = FusedDiagnostics {
        raw_propensity: raw,
        height,
        conflict: 1.0 - height,
        relative,
    };
    Ok((fused, diagnostics))
}

fn convolve(
    m1: &MassFunction,
    m2: &MassFunction,
    op: impl Fn(Subset, Subset) -> Subset,
) -> Result<MassFunction> {
    m1.same_frame(m2)?;
    let mut out = vec![0.0; m1.frame().power_set_size()];
    let rhs: Vec<(Subset, f64)> = m2.focal_sets().collect();
    for (a, va) in m1.focal_sets() {
        for &(b, vb) in &rhs {
            out[op(a, b).index()] += va * vb;
        }
    }
    MassFunction::from_computed(m1.frame_arc().clone(), out)
}

/// Unnormalized conjunctive rule: `m(F) = Σ_{A∩B=F} m1(A)·m2(B)`.
pub fn ccr(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    convolve(m1, m2, Subset::intersection)
}

/// Disjunctive rule: `m(F) = Σ_{A∪B=F} m1(A)·m2(B)`.
pub fn dcr(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    convolve(m1, m2, Subset::union)
}

/// Normalized conjunctive rule. Fails on total conflict.
pub fn dempster(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let mut masses = ccr(m1, m2)?.into_masses();
    // dividing by the nonempty total rather than 1 − m(∅) keeps precision
    // when the conflict is close to one
    let support: f64 = masses[1..].iter().sum();
    if support <= 0.0 {
        return Err(Error::precondition(
            "Dempster's rule is undefined under total conflict",
        ));
    }
    masses[0] = 0.0;
    for v in masses.iter_mut() {
        *v /= support;
    }
    MassFunction::from_computed(m1.frame_arc().clone(), masses)
}

/// Conjunctive combination with the conflict moved to `Ω`.
pub fn yager(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let m = ccr(m1, m2)?;
    let full = m.frame().full().index();
    let mut masses = m.into_masses();
    masses[full] += masses[0];
    masses[0] = 0.0;
    MassFunction::from_computed(m1.frame_arc().clone(), masses)
}

/// Conjunctive combination sending each conflicting product to `A ∪ B`.
pub fn dubois_prade(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    convolve(m1, m2, |a, b| {
        let i = a.intersection(b);
        if i.is_empty() {
            a.union(b)
        } else {
            i
        }
    })
}

/// Cautious rule: minimum of the conjunctive weights. Both BPAs must be
/// non-dogmatic.
pub fn caucr(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    m1.same_frame(m2)?;
    m1.weight_sigma()?.min(&m2.weight_sigma()?)?.to_mass()
}

/// Bold rule: minimum of the disjunctive weights. Both BPAs must be
/// unnormalized.
pub fn bcr(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    m1.same_frame(m2)?;
    m1.weight_v()?.min(&m2.weight_v()?)?.to_mass()
}

/// Layer-wise possibilistic ordering: discounted singleton profiles and every
/// higher layer of `a` lie pointwise below those of `b`.
pub fn informative_leq(a: &MassFunction, b: &MassFunction) -> Result<bool> {
    a.same_frame(b)?;
    let (ra, rb) = (relativize(a), relativize(b));
    let (ea, eb) = (ra.conflict(), rb.conflict());
    Ok(a.frame().subsets().filter(|s| !s.is_empty()).all(|s| {
        let (x, y) = if s.cardinality() == 1 {
            ((1.0 - ea) * ra.value(s), (1.0 - eb) * rb.value(s))
        } else {
            (ra.value(s), rb.value(s))
        };
        x <= y + ORDER_TOLERANCE
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CombinationRule {
    Pecr(FusionConfig),
    Ccr,
    Dcr,
    Dempster,
    Yager,
    DuboisPrade,
    Caucr,
    Bcr,
}

impl CombinationRule {
    /// Combines two or more sources. PECR aggregates all sources at once;
    /// the other rules fold left in source order.
    pub fn combine(&self, sources: &[MassFunction]) -> Result<MassFunction> {
        if sources.len() < 2 {
            return Err(Error::precondition(format!(
                "fusion needs at least two sources, got {}",
                sources.len()
            )));
        }
        let pairwise: fn(&MassFunction, &MassFunction) -> Result<MassFunction> = match self {
            CombinationRule::Pecr(cfg) => return pecr(sources, cfg).map(|(m, _)| m),
            CombinationRule::Ccr => ccr,
            CombinationRule::Dcr => dcr,
            CombinationRule::Dempster => dempster,
            CombinationRule::Yager => yager,
            CombinationRule::DuboisPrade => dubois_prade,
            CombinationRule::Caucr => caucr,
            CombinationRule::Bcr => bcr,
        };
        let mut acc = pairwise(&sources[0], &sources[1])?;
        for m in &sources[2..] {
            acc = pairwise(&acc, m)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CombinationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinationRule::Pecr(cfg) => cfg.fmt(f),
            CombinationRule::Ccr => f.write_str("ccr"),
            CombinationRule::Dcr => f.write_str("dcr"),
            CombinationRule::Dempster => f.write_str("dempster"),
            CombinationRule::Yager => f.write_str("yager"),
            CombinationRule::DuboisPrade => f.write_str("dp"),
            CombinationRule::Caucr => f.write_str("caucr"),
            CombinationRule::Bcr => f.write_str("bcr"),
        }
    }
}

const PARAMETRIC: [&str; 4] = ["frank", "hamacher", "frank-conorm", "hamacher-conorm"];

/// Takes one operator (name plus parameter for parametric families) off the
/// front of a `:`-separated token list.
fn take_operator<'a>(tokens: &mut impl Iterator<Item = &'a str>) -> Option<String> {
    let name = tokens.next()?;
    if PARAMETRIC.contains(&name.trim().to_ascii_lowercase().as_str()) {
        match tokens.next() {
            Some(p) => Some(format!("{name}:{p}")),
            None => Some(name.to_string()),
        }
    } else {
        Some(name.to_string())
    }
}

impl FromStr for CombinationRule {
    type Err = Error;

    /// `pecr:<P>:<C> | ccr | dcr | dempster | yager | dp | caucr | bcr`,
    /// where `<P>` and `<C>` use the operator grammar, e.g.
    /// `pecr:frank:0.5:max`.
    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: String| Error::RuleParse {
            input: input.to_string(),
            reason,
        };
        let trimmed = input.trim();
        let lower = trimmed.to_ascii_lowercase();
        let simple = match lower.as_str() {
            "ccr" => Some(CombinationRule::Ccr),
            "dcr" => Some(CombinationRule::Dcr),
            "dempster" => Some(CombinationRule::Dempster),
            "yager" => Some(CombinationRule::Yager),
            "dp" | "dubois-prade" => Some(CombinationRule::DuboisPrade),
            "caucr" => Some(CombinationRule::Caucr),
            "bcr" => Some(CombinationRule::Bcr),
            _ => None,
        };
        if let Some(rule) = simple {
            return Ok(rule);
        }
        let mut tokens = trimmed.split(':');
        if !tokens
            .next()
            .is_some_and(|t| t.eq_ignore_ascii_case("pecr"))
        {
            return Err(fail("expected pecr:<P>:<C> or a baseline rule name".into()));
        }
        let p =
            take_operator(&mut tokens).ok_or_else(|| fail("missing propensity operator".into()))?;
        let c =
            take_operator(&mut tokens).ok_or_else(|| fail("missing commitment operator".into()))?;
        if let Some(extra) = tokens.next() {
            return Err(fail(format!("unexpected trailing `{extra}`")));
        }
        let wrap = |e: Error| fail(e.to_string());
        let p: TriangularOperator = p.parse().map_err(wrap)?;
        let c: TriangularOperator = c.parse().map_err(wrap)?;
        Ok(CombinationRule::Pecr(
            FusionConfig::new(p, c).map_err(wrap)?,
        ))
    }
}
