//! Plane curves: singular points, local intersection numbers, ADE types and
//! the hypothesis checks for a branch curve `C1` and a second curve `C2`.

mod hypotheses;
mod local;
mod singular;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::{gcd_poly, HomForm, Rational, Vars};

pub use hypotheses::{check_hypotheses, ConditionResult, HypothesisReport, Verdict};
pub use local::{
    classify_singularity, intersection_multiplicity, local_equation, milnor_number, multiplicity_at, Ade,
    IntersectionNumber, SingularityReport,
};
pub use singular::{singular_points, singular_points_seeded, ResidualCluster, SingularLocus, DEFAULT_SEED};

/// A projective plane curve given by a ternary form.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    form: HomForm,
    squarefree: bool,
}

impl PlaneCurve {
    /// Wraps a ternary form of positive degree; records whether it is square-free.
    pub fn new(form: HomForm) -> Result<Self> {
        if form.vars() != Vars::Xyz {
            return Err(Error::InvalidInput(format!("{form} is not a ternary form")));
        }
        if form.is_zero() || form.degree() == 0 {
            return Err(Error::InvalidInput("a curve needs a form of positive degree".into()));
        }
        let squarefree = is_squarefree(&form);
        Ok(PlaneCurve { form, squarefree })
    }

    /// Like [`PlaneCurve::new`] but rejects forms with repeated factors.
    pub fn reduced(form: HomForm) -> Result<Self> {
        let c = Self::new(form)?;
        if !c.squarefree {
            return Err(Error::NotSquareFree);
        }
        Ok(c)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(HomForm::parse(text)?)
    }

    pub fn form(&self) -> &HomForm {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }
}

fn is_squarefree(form: &HomForm) -> bool {
    // A repeated factor divides every partial derivative.
    let p = form.poly();
    let g = (0..3).fold(p.clone(), |g, i| gcd_poly(&g, &p.derivative(i)));
    g.is_constant()
}

/// Point of the projective plane with rational coordinates, scaled so that
/// the last nonzero coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: [Rational; 3],
}

impl ProjPoint {
    pub fn new(coords: [Rational; 3]) -> Result<Self> {
        let Some(k) = (0..3).rev().find(|&i| !coords[i].is_zero()) else {
            return Err(Error::InvalidInput("[0:0:0] is not a point".into()));
        };
        let s = Rational::one() / coords[k].clone();
        Ok(ProjPoint { coords: coords.map(|c| c * s.clone()) })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new([x, y, z].map(|v| Rational::from_integer(v.into())))
    }

    pub fn from_slice(c: &[Rational]) -> Result<Self> {
        Self::new([c[0].clone(), c[1].clone(), c[2].clone()])
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    /// Index of the coordinate normalized to one.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).unwrap()
    }

    pub fn lies_on(&self, f: &HomForm) -> bool {
        f.eval(&self.coords).is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_normalization() {
        let p = ProjPoint::from_ints(2, 4, 2).unwrap();
        assert_eq!(p.to_string(), "[1:2:1]");
        let q = ProjPoint::from_ints(-3, 6, 0).unwrap();
        assert_eq!(q.chart(), 1);
        assert_eq!(q.to_string(), "[-1/2:1:0]");
        assert!(ProjPoint::from_ints(0, 0, 0).is_err());
    }

    #[test]
    fn squarefree_flag() {
        assert!(PlaneCurve::parse("x^2 + y^2 - z^2").unwrap().is_squarefree());
        assert!(!PlaneCurve::parse("x^2*z").unwrap().is_squarefree());
        assert_eq!(PlaneCurve::reduced(HomForm::parse("x^2").unwrap()), Err(Error::NotSquareFree));
    }
}
