//! Local invariants at rational points: intersection numbers via Fulton's
//! recursion, Milnor numbers and the ADE decision table.

use std::fmt;

use num_traits::Zero;

use super::{PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::polycore::{squarefree_part, QPoly, Rational, Vars};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum IntersectionNumber {
    Finite(u32),
    Infinite,
}

impl IntersectionNumber {
    pub fn finite(self) -> Option<u32> {
        match self {
            IntersectionNumber::Finite(n) => Some(n),
            IntersectionNumber::Infinite => None,
        }
    }
}

impl fmt::Display for IntersectionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionNumber::Finite(n) => write!(f, "{n}"),
            IntersectionNumber::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Local intersection number of two affine curves in `u, v` at `point`.
pub fn intersection_multiplicity(f: &QPoly, g: &QPoly, point: &[Rational; 2]) -> IntersectionNumber {
    let shift = |p: &QPoly| {
        let u = QPoly::var(Vars::Uv, 0) + QPoly::constant(Vars::Uv, point[0].clone());
        let v = QPoly::var(Vars::Uv, 1) + QPoly::constant(Vars::Uv, point[1].clone());
        p.clone().with_vars(Vars::Uv).substitute(&[u, v])
    };
    fulton(shift(f), shift(g))
}

fn at_origin(p: &QPoly) -> Rational {
    p.coeff(&[0, 0, 0])
}

fn fulton(mut f: QPoly, mut g: QPoly) -> IntersectionNumber {
    let mut acc = 0u32;
    loop {
        if f.is_zero() || g.is_zero() {
            return IntersectionNumber::Infinite;
        }
        if !at_origin(&f).is_zero() || !at_origin(&g).is_zero() {
            return IntersectionNumber::Finite(acc);
        }
        let f0 = f.specialize(1, &Rational::zero());
        let g0 = g.specialize(1, &Rational::zero());
        match (f0.is_zero(), g0.is_zero()) {
            (true, true) => return IntersectionNumber::Infinite,
            (true, false) | (false, true) => {
                if f0.is_zero() {
                    std::mem::swap(&mut f, &mut g);
                }
                // Now g = v*h: I(f, g) = I(f, v) + I(f, h).
                let ord = f.specialize(1, &Rational::zero()).order_in(0);
                acc += ord;
                g = g.div_exact(&QPoly::var(Vars::Uv, 1)).expect("v divides");
            }
            (false, false) => {
                let (mut r, mut s) = (f0.degree_in(0), g0.degree_in(0));
                let (mut lf, mut lg) = (f0.coeff(&[r, 0, 0]), g0.coeff(&[s, 0, 0]));
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                    std::mem::swap(&mut r, &mut s);
                    std::mem::swap(&mut lf, &mut lg);
                }
                g = g.scale(&lf) - f.mul_monomial(&[s - r, 0, 0], &lg);
            }
        }
    }
}

/// Affine equation of `c` around `p` in the chart where `p` has coordinate
/// one, translated so that `p` sits at the origin of `u, v`.
pub fn local_equation(c: &PlaneCurve, p: &ProjPoint) -> QPoly {
    let k = p.chart();
    let mut images = Vec::with_capacity(3);
    let mut next = 0;
    for i in 0..3 {
        if i == k {
            images.push(QPoly::one(Vars::Uv));
        } else {
            let shifted = QPoly::var(Vars::Uv, next) + QPoly::constant(Vars::Uv, p.coords()[i].clone());
            images.push(shifted);
            next += 1;
        }
    }
    c.form().poly().substitute(&images)
}

/// Multiplicity of `c` at `p`; zero when `p` is not on the curve.
pub fn multiplicity_at(c: &PlaneCurve, p: &ProjPoint) -> u32 {
    local_equation(c, p).order().unwrap_or(0)
}

/// Milnor number of `c` at `p`: zero at smooth points, infinite along a
/// multiple component.
pub fn milnor_number(c: &PlaneCurve, p: &ProjPoint) -> Result<IntersectionNumber> {
    let f = local_equation(c, p);
    if !at_origin(&f).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    Ok(fulton(f.derivative(0), f.derivative(1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ade {
    A(u32),
    D(u32),
    E(u32),
    NotSimple,
    UnknownNonrational,
}

impl Ade {
    pub fn is_simple(self) -> bool {
        matches!(self, Ade::A(_) | Ade::D(_) | Ade::E(_))
    }
}

impl fmt::Display for Ade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ade::A(n) => write!(f, "A{n}"),
            Ade::D(n) => write!(f, "D{n}"),
            Ade::E(n) => write!(f, "E{n}"),
            Ade::NotSimple => write!(f, "NOT_SIMPLE"),
            Ade::UnknownNonrational => write!(f, "UNKNOWN_NONRATIONAL"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    pub point: ProjPoint,
    pub multiplicity: u32,
    pub milnor: u32,
    pub ade_type: Ade,
}

/// ADE type of a rational singular point.
pub fn classify_singularity(c: &PlaneCurve, p: &ProjPoint) -> Result<SingularityReport> {
    let f = local_equation(c, p);
    let m = f.order().unwrap_or(0);
    if m == 0 {
        return Err(Error::PointNotOnCurve);
    }
    if m == 1 {
        return Err(Error::NotSingular);
    }
    let mu = fulton(f.derivative(0), f.derivative(1))
        .finite()
        .ok_or(Error::NonIsolated)?;
    let ade_type = match m {
        2 => Ade::A(mu),
        3 => {
            // Distinct tangent lines over C = degree of the square-free part.
            let cone = f.homogeneous_part(3);
            match squarefree_part(&cone).total_degree().unwrap_or(0) {
                3 => Ade::D(4),
                2 => Ade::D(mu),
                _ if (6..=8).contains(&mu) => Ade::E(mu),
                _ => Ade::NotSimple,
            }
        }
        _ => Ade::NotSimple,
    };
    Ok(SingularityReport { point: p.clone(), multiplicity: m, milnor: mu, ade_type })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_in, HomForm};

    fn uv(s: &str) -> QPoly {
        parse_in(s, Vars::Uv).unwrap()
    }

    fn origin() -> [Rational; 2] {
        [Rational::zero(), Rational::zero()]
    }

    /// Projective closure of an affine equation, with the origin at [0:0:1].
    fn closure(s: &str) -> PlaneCurve {
        let f = uv(s);
        let d = f.total_degree().unwrap();
        let h = f.substitute(&[QPoly::var(Vars::Xyz, 0), QPoly::var(Vars::Xyz, 1)]);
        PlaneCurve::new(HomForm::new(h.dehomogenize_last(Vars::Xyz).homogenize(Vars::Xyz, d)).unwrap()).unwrap()
    }

    fn o() -> ProjPoint {
        ProjPoint::from_ints(0, 0, 1).unwrap()
    }

    #[test]
    fn fulton_examples() {
        let i = |a: &str, b: &str| intersection_multiplicity(&uv(a), &uv(b), &origin());
        assert_eq!(i("u", "v"), IntersectionNumber::Finite(1));
        assert_eq!(i("v", "v - u^2"), IntersectionNumber::Finite(2));
        assert_eq!(i("v^2 - u^3", "v"), IntersectionNumber::Finite(3));
        assert_eq!(i("u*v", "u^2 + u*v"), IntersectionNumber::Infinite);
        assert_eq!(i("u + 1", "v"), IntersectionNumber::Finite(0));
        let p = [Rational::from_integer(1.into()), Rational::zero()];
        assert_eq!(intersection_multiplicity(&uv("v"), &uv("v - u^2 + 2*u - 1"), &p), IntersectionNumber::Finite(2));
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number(&closure("v^2 - u^2 - u^3"), &o()), Ok(IntersectionNumber::Finite(1)));
        assert_eq!(milnor_number(&closure("v^2 - u^3"), &o()), Ok(IntersectionNumber::Finite(2)));
        assert_eq!(milnor_number(&closure("v - u^2"), &o()), Ok(IntersectionNumber::Finite(0)));
    }

    #[test]
    fn classify_examples() {
        let t = |s: &str| classify_singularity(&closure(s), &o()).unwrap().ade_type;
        assert_eq!(t("v^2 - u^3"), Ade::A(2));
        assert_eq!(t("v^2 - u^4"), Ade::A(3));
        assert_eq!(t("u^3 - v^3"), Ade::D(4));
        assert_eq!(t("u^4 + v^4"), Ade::NotSimple);
        assert_eq!(t("u^3 + v^7"), Ade::NotSimple);
        assert_eq!(classify_singularity(&closure("v - u^2"), &o()), Err(Error::NotSingular));
    }
}
