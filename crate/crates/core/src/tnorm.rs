//! Triangular norms, conorms and the arithmetic mean on `[0,1]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Minimum,
    Product,
    Lukasiewicz,
    Maximum,
    ProbabilisticSum,
    BoundedSum,
    Frank,
    Hamacher,
    FrankConorm,
    HamacherConorm,
    ArithmeticMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    TNorm,
    TConorm,
    Mean,
}

impl Family {
    pub fn kind(self) -> Kind {
        use Family::*;
        match self {
            Minimum | Product | Lukasiewicz | Frank | Hamacher => Kind::TNorm,
            Maximum | ProbabilisticSum | BoundedSum | FrankConorm | HamacherConorm => Kind::TConorm,
            ArithmeticMean => Kind::Mean,
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(
            self,
            Family::Frank | Family::Hamacher | Family::FrankConorm | Family::HamacherConorm
        )
    }
}

/// A binary aggregation operator on `[0,1]`.
///
/// Frank λ = 1 is stored as product and λ = 0 as minimum (their limits);
/// the conorm variants map to probabilistic sum and maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularOperator {
    family: Family,
    parameter: Option<f64>,
}

impl TriangularOperator {
    pub const MIN: Self = Self::fixed(Family::Minimum);
    pub const PRODUCT: Self = Self::fixed(Family::Product);
    pub const LUKASIEWICZ: Self = Self::fixed(Family::Lukasiewicz);
    pub const MAX: Self = Self::fixed(Family::Maximum);
    pub const PROBSUM: Self = Self::fixed(Family::ProbabilisticSum);
    pub const BOUNDED_SUM: Self = Self::fixed(Family::BoundedSum);
    pub const MEAN: Self = Self::fixed(Family::ArithmeticMean);

    const fn fixed(family: Family) -> Self {
        TriangularOperator {
            family,
            parameter: None,
        }
    }

    /// Builds an operator, validating the parameter against the family.
    pub fn new(family: Family, parameter: Option<f64>) -> Result<Self> {
        match (family.is_parametric(), parameter) {
            (false, None) => Ok(Self::fixed(family)),
            (false, Some(_)) => Err(Error::domain(format!(
                "{} takes no parameter",
                family_name(family)
            ))),
            (true, None) => Err(Error::domain(format!(
                "{} requires a parameter",
                family_name(family)
            ))),
            (true, Some(p)) => match family {
                Family::Frank => Self::frank(p),
                Family::FrankConorm => Ok(Self::frank(p)?.dual_unchecked()),
                Family::Hamacher => Self::hamacher(p),
                _ => Ok(Self::hamacher(p)?.dual_unchecked()),
            },
        }
    }

    pub fn frank(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::domain(format!(
                "Frank parameter must be a finite λ ≥ 0, got {lambda}"
            )));
        }
        Ok(if lambda == 0.0 {
            Self::MIN
        } else if lambda == 1.0 {
            Self::PRODUCT
        } else {
            TriangularOperator {
                family: Family::Frank,
                parameter: Some(lambda),
            }
        })
    }

    pub fn frank_conorm(lambda: f64) -> Result<Self> {
        Ok(Self::frank(lambda)?.dual_unchecked())
    }

    pub fn hamacher(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::domain(format!(
                "Hamacher parameter must be a finite γ ≥ 0, got {gamma}"
            )));
        }
        Ok(TriangularOperator {
            family: Family::Hamacher,
            parameter: Some(gamma),
        })
    }

    pub fn hamacher_conorm(gamma: f64) -> Result<Self> {
        Ok(Self::hamacher(gamma)?.dual_unchecked())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn parameter(&self) -> Option<f64> {
        self.parameter
    }

    pub fn kind(&self) -> Kind {
        self.family.kind()
    }

    pub fn is_associative(&self) -> bool {
        self.kind() != Kind::Mean
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(self.apply(x.clamp(0.0, 1.0), y.clamp(0.0, 1.0)))
    }

    /// Unchecked evaluation; inputs must already lie in `[0,1]`.
    pub(crate) fn apply(&self, x: f64, y: f64) -> f64 {
        use Family::*;
        let v = match self.family {
            Minimum => x.min(y),
            Product => x * y,
            Lukasiewicz => (x + y - 1.0).max(0.0),
            Maximum => x.max(y),
            ProbabilisticSum => x + y - x * y,
            BoundedSum => (x + y).min(1.0),
            Frank => frank_tnorm(self.parameter.unwrap(), x, y),
            Hamacher => hamacher_tnorm(self.parameter.unwrap(), x, y),
            FrankConorm => 1.0 - frank_tnorm(self.parameter.unwrap(), 1.0 - x, 1.0 - y),
            HamacherConorm => 1.0 - hamacher_tnorm(self.parameter.unwrap(), 1.0 - x, 1.0 - y),
            ArithmeticMean => 0.5 * (x + y),
        };
        v.clamp(0.0, 1.0)
    }

    /// Left fold over `values`; the mean is the exact k-ary average.
    pub fn fold(&self, values: &[f64]) -> Result<f64> {
        if values.is_empty() {
            return Err(Error::domain("cannot fold an empty list"));
        }
        for &v in values {
            check_unit(v)?;
        }
        Ok(self.fold_unchecked(values.iter().map(|v| v.clamp(0.0, 1.0))))
    }

    pub(crate) fn fold_unchecked(&self, mut values: impl ExactSizeIterator<Item = f64>) -> f64 {
        if self.family == Family::ArithmeticMean {
            let k = values.len() as f64;
            return (values.sum::<f64>() / k).clamp(0.0, 1.0);
        }
        let first = values.next().expect("nonempty fold");
        values.fold(first, |acc, v| self.apply(acc, v))
    }

    /// De Morgan dual `S(x,y) = 1 − T(1−x, 1−y)`.
    pub fn dual(&self) -> Result<Self> {
        if self.kind() == Kind::Mean {
            return Err(Error::domain("the arithmetic mean has no triangular dual"));
        }
        Ok(self.dual_unchecked())
    }

    fn dual_unchecked(&self) -> Self {
        use Family::*;
        let family = match self.family {
            Minimum => Maximum,
            Maximum => Minimum,
            Product => ProbabilisticSum,
            ProbabilisticSum => Product,
            Lukasiewicz => BoundedSum,
            BoundedSum => Lukasiewicz,
            Frank => FrankConorm,
            FrankConorm => Frank,
            Hamacher => HamacherConorm,
            HamacherConorm => Hamacher,
            ArithmeticMean => ArithmeticMean,
        };
        TriangularOperator {
            family,
            parameter: self.parameter,
        }
    }

    /// `self(x,y) ≤ other(x,y) + 1e-12` on a 101×101 grid over `[0,1]²`.
    pub fn pointwise_dominated_by(&self, other: &TriangularOperator) -> bool {
        let grid = (0..=100).map(|i| i as f64 / 100.0);
        grid.clone().all(|x| {
            grid.clone()
                .all(|y| self.apply(x, y) <= other.apply(x, y) + UNIT_TOLERANCE)
        })
    }
}

/// True when `a` lies pointwise below `b` on the sampled grid.
pub fn pointwise_dominates(a: &TriangularOperator, b: &TriangularOperator) -> bool {
    a.pointwise_dominated_by(b)
}

fn check_unit(v: f64) -> Result<()> {
    if v.is_finite() && (-UNIT_TOLERANCE..=1.0 + UNIT_TOLERANCE).contains(&v) {
        Ok(())
    } else {
        Err(Error::domain(format!("operand {v} is outside [0, 1]")))
    }
}

fn frank_tnorm(lambda: f64, x: f64, y: f64) -> f64 {
    if x == 1.0 {
        return y;
    }
    if y == 1.0 {
        return x;
    }
    // log_λ(1 + (λ^x − 1)(λ^y − 1)/(λ − 1)), written with expm1/ln_1p so
    // λ near 1 and tiny operands stay accurate.
    let ln = lambda.ln();
    let num = (x * ln).exp_m1() * (y * ln).exp_m1();
    let den = ln.exp_m1();
    let inner = num / den;
    if !inner.is_finite() {
        // λ^x overflow for huge λ: the Łukasiewicz limit.
        return (x + y - 1.0).max(0.0);
    }
    inner.ln_1p() / ln
}

fn hamacher_tnorm(gamma: f64, x: f64, y: f64) -> f64 {
    let den = gamma + (1.0 - gamma) * (x + y - x * y);
    if den == 0.0 {
        0.0
    } else {
        x * y / den
    }
}

fn family_name(family: Family) -> &'static str {
    use Family::*;
    match family {
        Minimum => "min",
        Product => "product",
        Lukasiewicz => "lukasiewicz",
        Maximum => "max",
        ProbabilisticSum => "probsum",
        BoundedSum => "boundedsum",
        Frank => "frank",
        Hamacher => "hamacher",
        FrankConorm => "frank-conorm",
        HamacherConorm => "hamacher-conorm",
        ArithmeticMean => "mean",
    }
}

impl fmt::Display for TriangularOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter {
            Some(p) => write!(f, "{}:{}", family_name(self.family), p),
            None => f.write_str(family_name(self.family)),
        }
    }
}

impl FromStr for TriangularOperator {
    type Err = Error;

    /// `min | product | lukasiewicz | max | probsum | boundedsum | mean |
    /// frank:<λ> | hamacher:<γ> | frank-conorm:<λ> | hamacher-conorm:<γ>`,
    /// case-insensitive.
    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: String| Error::OperatorParse {
            input: input.to_string(),
            reason,
        };
        let lower = input.trim().to_ascii_lowercase();
        let (name, param) = match lower.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (lower.as_str(), None),
        };
        let family = match name {
            "min" | "minimum" => Family::Minimum,
            "product" | "prod" => Family::Product,
            "lukasiewicz" => Family::Lukasiewicz,
            "max" | "maximum" => Family::Maximum,
            "probsum" => Family::ProbabilisticSum,
            "boundedsum" => Family::BoundedSum,
            "mean" | "avg" => Family::ArithmeticMean,
            "frank" => Family::Frank,
            "hamacher" => Family::Hamacher,
            "frank-conorm" => Family::FrankConorm,
            "hamacher-conorm" => Family::HamacherConorm,
            other => return Err(fail(format!("unknown operator `{other}`"))),
        };
        let parameter = param
            .map(|p| {
                p.parse::<f64>()
                    .map_err(|e| fail(format!("bad parameter `{p}`: {e}")))
            })
            .transpose()?;
        TriangularOperator::new(family, parameter).map_err(|e| match e {
            Error::Domain(reason) => fail(reason),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid() -> impl Iterator<Item = f64> + Clone {
        (0..=100).map(|i| i as f64 / 100.0)
    }

    fn all_ops() -> Vec<TriangularOperator> {
        let mut ops = vec![
            TriangularOperator::MIN,
            TriangularOperator::PRODUCT,
            TriangularOperator::LUKASIEWICZ,
            TriangularOperator::MAX,
            TriangularOperator::PROBSUM,
            TriangularOperator::BOUNDED_SUM,
        ];
        for l in [0.01, 0.5, 2.0, 100.0] {
            ops.push(TriangularOperator::frank(l).unwrap());
            ops.push(TriangularOperator::frank_conorm(l).unwrap());
        }
        for g in [0.0, 0.5, 1.0, 3.0] {
            ops.push(TriangularOperator::hamacher(g).unwrap());
            ops.push(TriangularOperator::hamacher_conorm(g).unwrap());
        }
        ops
    }

    #[test]
    fn product_example() {
        let v = TriangularOperator::PRODUCT.eval(0.895, 0.965).unwrap();
        assert_abs_diff_eq!(v, 0.8637, epsilon = 1e-4);
        let d = TriangularOperator::PRODUCT.dual().unwrap();
        assert_abs_diff_eq!(d.eval(0.895, 0.965).unwrap(), 0.99633, epsilon = 1e-5);
    }

    #[test]
    fn boundary_conditions() {
        for op in all_ops() {
            for x in grid() {
                match op.kind() {
                    Kind::TNorm => {
                        assert_abs_diff_eq!(op.apply(x, 0.0), 0.0, epsilon = 1e-12);
                        assert_abs_diff_eq!(op.apply(x, 1.0), x, epsilon = 1e-12);
                    }
                    Kind::TConorm => {
                        assert_abs_diff_eq!(op.apply(x, 0.0), x, epsilon = 1e-12);
                        assert_abs_diff_eq!(op.apply(x, 1.0), 1.0, epsilon = 1e-12);
                    }
                    Kind::Mean => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn frank_limits_and_special_values() {
        let near_min = TriangularOperator::frank(1e-9).unwrap();
        let near_luk = TriangularOperator::frank(1e9).unwrap();
        for x in grid().step_by(5) {
            for y in grid().step_by(5) {
                assert!((near_min.apply(x, y) - x.min(y)).abs() < 5e-2);
                assert!((near_luk.apply(x, y) - (x + y - 1.0).max(0.0)).abs() < 5e-2);
            }
        }
        assert_abs_diff_eq!(near_min.apply(0.3, 0.7), 0.3, epsilon = 1e-3);
        assert_abs_diff_eq!(near_luk.apply(0.3, 0.5), 0.0, epsilon = 1e-3);
        assert_abs_diff_eq!(near_luk.apply(0.8, 0.7), 0.5, epsilon = 1e-3);
        assert_eq!(
            TriangularOperator::frank(1.0).unwrap(),
            TriangularOperator::PRODUCT
        );
        assert_eq!(
            TriangularOperator::frank(0.0).unwrap(),
            TriangularOperator::MIN
        );
        let close = TriangularOperator::frank(1.0 + 1e-9).unwrap();
        assert_abs_diff_eq!(close.apply(0.4, 0.6), 0.24, epsilon = 1e-6);
        assert!(TriangularOperator::frank(-1.0).is_err());
    }

    #[test]
    fn hamacher_special_values() {
        let h1 = TriangularOperator::hamacher(1.0).unwrap();
        for x in grid() {
            for y in grid() {
                assert_eq!(h1.apply(x, y), x * y);
            }
        }
        let h0 = TriangularOperator::hamacher(0.0).unwrap();
        assert_eq!(h0.apply(0.0, 0.0), 0.0);
        assert_abs_diff_eq!(h0.apply(0.5, 0.5), 1.0 / 3.0, epsilon = 1e-15);
        assert!(TriangularOperator::hamacher(-0.1).is_err());
    }

    #[test]
    fn commutative_monotone_associative() {
        let pts: Vec<f64> = grid().step_by(10).collect();
        for op in all_ops() {
            for &x in &pts {
                for &y in &pts {
                    let v = op.apply(x, y);
                    assert!((0.0..=1.0).contains(&v));
                    assert!((v - op.apply(y, x)).abs() < 1e-12, "{op} not commutative");
                    if y + 0.1 <= 1.0 {
                        assert!(op.apply(x, y + 0.1) + 1e-12 >= v, "{op} not monotone");
                    }
                    for &z in &pts {
                        let a = op.apply(op.apply(x, y), z);
                        let b = op.apply(x, op.apply(y, z));
                        assert!((a - b).abs() < 1e-9, "{op} not associative");
                    }
                }
            }
        }
    }

    #[test]
    fn idempotent_only_for_min_max_mean() {
        let mut ops = all_ops();
        ops.push(TriangularOperator::MEAN);
        for op in ops {
            let idempotent = grid().all(|x| (op.apply(x, x) - x).abs() < 1e-12);
            let expected = matches!(
                op.family(),
                Family::Minimum | Family::Maximum | Family::ArithmeticMean
            );
            assert_eq!(idempotent, expected, "{op}");
        }
    }

    #[test]
    fn fold_examples() {
        assert_eq!(TriangularOperator::MIN.fold(&[0.3]).unwrap(), 0.3);
        assert_abs_diff_eq!(
            TriangularOperator::PRODUCT.fold(&[0.5, 0.5, 0.5]).unwrap(),
            0.125
        );
        assert_abs_diff_eq!(
            TriangularOperator::MEAN.fold(&[0.727, 0.421]).unwrap(),
            0.574,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            TriangularOperator::MEAN.fold(&[0.0, 0.0, 0.9]).unwrap(),
            0.3,
            epsilon = 1e-12
        );
        assert!(TriangularOperator::MIN.fold(&[]).is_err());
        assert!(TriangularOperator::MIN.fold(&[0.2, 1.3]).is_err());
        assert!(TriangularOperator::MIN.eval(-0.1, 0.3).is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(
            TriangularOperator::MIN.dual().unwrap(),
            TriangularOperator::MAX
        );
        assert_eq!(
            TriangularOperator::PRODUCT.dual().unwrap(),
            TriangularOperator::PROBSUM
        );
        assert!(TriangularOperator::MEAN.dual().is_err());
        for op in all_ops() {
            let dd = op.dual().unwrap().dual().unwrap();
            for x in grid().step_by(7) {
                for y in grid().step_by(7) {
                    assert!((dd.apply(x, y) - op.apply(x, y)).abs() < 1e-12);
                    let s = op.dual().unwrap().apply(x, y);
                    assert!((s - (1.0 - op.apply(1.0 - x, 1.0 - y))).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dominance_chains() {
        use TriangularOperator as T;
        assert!(pointwise_dominates(&T::LUKASIEWICZ, &T::PRODUCT));
        assert!(pointwise_dominates(&T::PRODUCT, &T::MIN));
        assert!(!pointwise_dominates(&T::MIN, &T::PRODUCT));
        assert!(pointwise_dominates(&T::MIN, &T::MAX));
        assert!(pointwise_dominates(&T::MAX, &T::PROBSUM));
        let f2 = T::frank(2.0).unwrap();
        let f05 = T::frank(0.5).unwrap();
        assert!(pointwise_dominates(&f2, &f05));
        assert!(!pointwise_dominates(&f05, &f2));
        let lambdas = [1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3];
        for w in lambdas.windows(2) {
            let lo = T::frank(w[1]).unwrap();
            let hi = T::frank(w[0]).unwrap();
            assert!(pointwise_dominates(&lo, &hi), "{lo} vs {hi}");
        }
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "min",
            "product",
            "lukasiewicz",
            "max",
            "probsum",
            "boundedsum",
            "mean",
            "frank:0.5",
            "hamacher:2",
            "frank-conorm:0.25",
            "hamacher-conorm:0",
        ] {
            let op: TriangularOperator = s.parse().unwrap();
            let again: TriangularOperator = op.to_string().parse().unwrap();
            assert_eq!(op, again);
        }
        assert_eq!(
            "MIN".parse::<TriangularOperator>().unwrap(),
            TriangularOperator::MIN
        );
        assert_eq!(
            "frank:1".parse::<TriangularOperator>().unwrap(),
            TriangularOperator::PRODUCT
        );
        for bad in ["", "median", "frank", "frank:x", "min:2", "hamacher:-1"] {
            let err = bad.parse::<TriangularOperator>().unwrap_err();
            assert!(matches!(err, Error::OperatorParse { .. }), "{bad}: {err}");
        }
    }
}
