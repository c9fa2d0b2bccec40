//! The four conditions on a pair `(C1, C2)`: even degree, simple
//! singularities, `C2` avoiding `Sing(C1)`, and even contact along `C2`.

use std::fmt;

use super::local::{classify_singularity, SingularityReport};
use super::singular::singular_points_seeded;
use super::{PlaneCurve, ResidualCluster};
use crate::error::Result;
use crate::polycore::factor_bounded;
use crate::splitting::{split_test, Parametrization, SplitResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotCheckable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotCheckable => "not-checkable",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionResult {
    pub verdict: Verdict,
    pub evidence: Vec<String>,
}

impl ConditionResult {
    fn new(verdict: Verdict, evidence: Vec<String>) -> Self {
        ConditionResult { verdict, evidence }
    }
}

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    /// (i) `deg C1` is even.
    pub even_degree: ConditionResult,
    /// (ii) `C1` has only simple singularities.
    pub simple_singularities: ConditionResult,
    /// (iii) `C2` misses the singular points of `C1`.
    pub avoids_singular_locus: ConditionResult,
    /// (iv) `C1` meets `C2` with even multiplicity branch by branch.
    pub even_contact: ConditionResult,
    pub singularities: Vec<SingularityReport>,
    pub residual: Vec<ResidualCluster>,
    pub split: Option<SplitResult>,
    /// `Some(true)` when `C2` was shown irreducible over Q.
    pub c2_irreducible: Option<bool>,
}

impl HypothesisReport {
    pub fn conditions(&self) -> [&ConditionResult; 4] {
        [&self.even_degree, &self.simple_singularities, &self.avoids_singular_locus, &self.even_contact]
    }

    /// Pass only if all four pass; any failure wins over not-checkable.
    pub fn overall(&self) -> Verdict {
        let v: Vec<Verdict> = self.conditions().iter().map(|c| c.verdict).collect();
        if v.contains(&Verdict::Fail) {
            Verdict::Fail
        } else if v.iter().all(|&x| x == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::NotCheckable
        }
    }
}

/// Runs the four checks. `phi`, when given, must parametrize `C2`.
pub fn check_hypotheses(
    c1: &PlaneCurve,
    c2: &PlaneCurve,
    phi: Option<&Parametrization>,
    seed: u64,
) -> Result<HypothesisReport> {
    if let Some(phi) = phi {
        phi.check_on(c2.form())?;
    }
    let d = c1.degree();
    let even_degree = if d.is_multiple_of(2) {
        ConditionResult::new(Verdict::Pass, vec![format!("deg C1 = {d}")])
    } else {
        ConditionResult::new(Verdict::Fail, vec![format!("deg C1 = {d} is odd")])
    };

    let locus = singular_points_seeded(c1, seed)?;
    let mut singularities = Vec::new();
    let mut bad = Vec::new();
    for p in &locus.points {
        let rep = classify_singularity(c1, p)?;
        if !rep.ade_type.is_simple() {
            bad.push(format!("{} is {}", rep.point, rep.ade_type));
        }
        singularities.push(rep);
    }
    let simple_singularities = if !bad.is_empty() {
        ConditionResult::new(Verdict::Fail, bad)
    } else if !locus.residual.is_empty() {
        let ev = locus.residual.iter().map(|r| format!("unclassified cluster: {r}")).collect();
        ConditionResult::new(Verdict::NotCheckable, ev)
    } else {
        let ev = singularities.iter().map(|s| format!("{} is {}", s.point, s.ade_type)).collect();
        ConditionResult::new(Verdict::Pass, ev)
    };

    let f2 = c2.form();
    let mut hits: Vec<String> = locus
        .points
        .iter()
        .filter(|p| p.lies_on(f2))
        .map(|p| format!("C2 passes through the singular point {p}"))
        .collect();
    hits.extend(
        locus
            .residual
            .iter()
            .filter(|r| r.meets(f2))
            .map(|r| format!("C2 meets the cluster {r}")),
    );
    let avoids_singular_locus = if hits.is_empty() {
        let n = locus.points.len() + locus.residual.iter().map(ResidualCluster::degree).sum::<usize>();
        ConditionResult::new(Verdict::Pass, vec![format!("C2 avoids all {n} singular points")])
    } else {
        ConditionResult::new(Verdict::Fail, hits)
    };

    let (even_contact, split) = match phi {
        None => (
            ConditionResult::new(Verdict::NotCheckable, vec!["no parametrization of C2 supplied".into()]),
            None,
        ),
        Some(phi) => match split_test(c1.form(), phi) {
            Err(crate::Error::ComponentOfBranchCurve) => (
                ConditionResult::new(Verdict::Fail, vec!["C2 is a component of C1".into()]),
                None,
            ),
            Err(e) => return Err(e),
            Ok(s) if s.splits => (
                ConditionResult::new(Verdict::Pass, vec![format!("F1 restricted to C2 = {}", s.pullback)]),
                Some(s),
            ),
            Ok(s) => {
                let ev = s.odd_orders.iter().map(|(f, m)| format!("odd order {m} at {f}")).collect();
                (ConditionResult::new(Verdict::Fail, ev), Some(s))
            }
        },
    };

    let c2_irreducible = factor_bounded(f2, f2.degree())
        .ok()
        .filter(|f| f.is_complete())
        .map(|f| f.factors.len() == 1 && f.factors[0].1 == 1);

    Ok(HypothesisReport {
        even_degree,
        simple_singularities,
        avoids_singular_locus,
        even_contact,
        singularities,
        residual: locus.residual,
        split,
        c2_irreducible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::singular::DEFAULT_SEED;
    use crate::splitting::{parametrize_conic, parametrize_line};

    fn c(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s).unwrap()
    }

    #[test]
    fn two_conics_pass() {
        let c1 = c("x^2 + y^2 - z^2");
        let c2 = c("2*z^2 - x^2 - y^2");
        let phi = parametrize_conic(c2.form(), 50).unwrap();
        let r = check_hypotheses(&c1, &c2, Some(&phi), DEFAULT_SEED).unwrap();
        assert_eq!(r.overall(), Verdict::Pass);
        assert_eq!(r.c2_irreducible, Some(true));
    }

    #[test]
    fn odd_degree_fails() {
        let r = check_hypotheses(&c("y^2*z - x^3"), &c("x"), None, DEFAULT_SEED).unwrap();
        assert_eq!(r.even_degree.verdict, Verdict::Fail);
        assert_eq!(r.overall(), Verdict::Fail);
    }

    #[test]
    fn secant_line_fails_even_contact() {
        let c2 = c("y");
        let phi = parametrize_line(c2.form()).unwrap();
        let r = check_hypotheses(&c("x^2 + y^2 - z^2"), &c2, Some(&phi), DEFAULT_SEED).unwrap();
        assert_eq!(r.even_contact.verdict, Verdict::Fail);
        assert_eq!(r.even_contact.evidence.len(), 2);
    }

    #[test]
    fn line_through_node_fails_avoidance() {
        // Two conics tangent at [0:1:1] and [0:-1:1].
        let q = crate::polycore::HomForm::new(
            crate::polycore::parse_poly("x^2 + y^2 - z^2").unwrap()
                * crate::polycore::parse_poly("x^2 + 4*y^2 - 4*z^2").unwrap(),
        )
        .unwrap();
        let c1 = PlaneCurve::new(q).unwrap();
        let r = check_hypotheses(&c1, &c("x"), None, DEFAULT_SEED).unwrap();
        assert_eq!(r.singularities.len(), 2);
        assert!(r.singularities.iter().all(|s| s.ade_type == crate::curves::Ade::A(3)));
        assert_eq!(r.simple_singularities.verdict, Verdict::Pass);
        assert_eq!(r.avoids_singular_locus.verdict, Verdict::Fail);
        assert_eq!(r.even_contact.verdict, Verdict::NotCheckable);
    }

    #[test]
    fn inconsistent_parametrization_rejected() {
        let phi = Parametrization::parse("t, s, s").unwrap();
        assert_eq!(
            check_hypotheses(&c("x^2 + y^2 - z^2"), &c("x"), Some(&phi), DEFAULT_SEED).unwrap_err(),
            crate::Error::InconsistentParametrization
        );
    }
}
