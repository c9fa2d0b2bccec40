//! Singular points by iterated resultants in a random frame.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::polycore::numfield::{NfElem, NumberField};
use crate::polycore::{
    change_coordinates, gcd_poly, resultant_poly, HomForm, LinearChange, Poly, QPoly, Rational, UniPoly, Vars,
};

/// Singular points that are not rational, grouped by an irreducible
/// eliminant in a fixed frame.
///
/// In the frame's affine chart the cluster is `{(a, b) : m(a) = 0,
/// fiber(a, b) = 0}`; at the frame's line at infinity it is
/// `{[1 : b : 0] : m(b) = 0}`.
#[derive(Clone, Debug)]
pub struct ResidualCluster {
    frame: LinearChange,
    minpoly: UniPoly,
    fiber: Option<Poly<NfElem>>,
}

impl ResidualCluster {
    /// Irreducible eliminant of the cluster in the frame coordinates.
    pub fn eliminant(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn at_infinity(&self) -> bool {
        self.fiber.is_none()
    }

    /// Number of geometric points in the cluster.
    pub fn degree(&self) -> usize {
        let fiber = self.fiber.as_ref().map_or(1, |f| f.degree_in(1) as usize);
        self.minpoly.degree() * fiber
    }

    /// Whether `form` vanishes at some point of the cluster.
    pub fn meets(&self, form: &HomForm) -> bool {
        let moved = change_coordinates(form, &self.frame);
        match &self.fiber {
            None => {
                let r = UniPoly::from_poly(&restrict_to_infinity(moved.poly()), 1);
                self.minpoly.gcd(&r).degree() > 0
            }
            Some(fiber) => {
                let k = NumberField::new(&self.minpoly);
                let restricted = over_field(&affine_chart(moved.poly()), &k);
                !gcd_poly(fiber, &restricted).is_constant()
            }
        }
    }
}

impl fmt::Display for ResidualCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.minpoly.to_poly(Vars::T, 0);
        match &self.fiber {
            None => write!(f, "{} points at infinity with eliminant {m}", self.degree()),
            Some(fib) => write!(f, "{} points with eliminant {m} and fiber {fib}", self.degree()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub points: Vec<ProjPoint>,
    pub residual: Vec<ResidualCluster>,
}

/// Seed used when callers do not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn singular_points(c: &PlaneCurve) -> Result<SingularLocus> {
    singular_points_seeded(c, DEFAULT_SEED)
}

/// Singular points of a square-free curve. The frame is drawn from `seed`;
/// the result does not depend on it.
pub fn singular_points_seeded(c: &PlaneCurve, seed: u64) -> Result<SingularLocus> {
    if !c.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    let form = c.form();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let Some(frame) = random_frame(&mut rng, form) else {
            continue;
        };
        if let Some(locus) = locate(form, &frame) {
            return Ok(locus);
        }
    }
    Err(Error::NotCheckable("no generic frame found".into()))
}

fn random_frame(rng: &mut ChaCha8Rng, form: &HomForm) -> Option<LinearChange> {
    let m: Vec<Vec<Rational>> = (0..3)
        .map(|_| (0..3).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect())
        .collect();
    let frame = LinearChange::new(m).ok()?;
    // The images of [1:0:0] and [0:1:0] must avoid the curve.
    let col = |j: usize| -> Vec<Rational> { frame.matrix().iter().map(|r| r[j].clone()).collect() };
    if form.eval(&col(0)).is_zero() || form.eval(&col(1)).is_zero() {
        return None;
    }
    Some(frame)
}

fn affine_chart(p: &QPoly) -> QPoly {
    p.dehomogenize_last(Vars::Uv)
}

fn restrict_to_infinity(p: &QPoly) -> QPoly {
    // [1 : y : 0] as a polynomial in y (kept in the ternary ring).
    p.specialize(2, &Rational::zero()).specialize(0, &Rational::one())
}

/// Affine polynomial in `u, v` evaluated at `u = generator`.
fn over_field(p: &QPoly, k: &Arc<NumberField>) -> Poly<NfElem> {
    p.map_coeffs(Vars::Uv, |c| NfElem::rational(c.clone()))
        .specialize(0, &k.generator())
}

fn locate(form: &HomForm, frame: &LinearChange) -> Option<SingularLocus> {
    let moved = change_coordinates(form, frame);
    let fp = moved.poly();
    let f = affine_chart(fp);
    let fu = f.derivative(0);
    let fv = f.derivative(1);
    let r1 = resultant_poly(&f, &fu, 1)?;
    let r2 = resultant_poly(&f, &fv, 1)?;
    if r1.is_zero() || r2.is_zero() {
        return None;
    }
    let elim = UniPoly::from_poly(&gcd_poly(&r1, &r2), 0);

    let mut points = Vec::new();
    let mut residual = Vec::new();
    if elim.degree() > 0 {
        for (m, _) in elim.factor() {
            let k = NumberField::new(&m);
            let fiber = [&f, &fu, &fv]
                .iter()
                .map(|p| over_field(p, &k))
                .reduce(|a, b| gcd_poly(&a, &b))
                .unwrap();
            if fiber.is_constant() {
                continue;
            }
            if m.degree() > 1 {
                residual.push(ResidualCluster { frame: frame.clone(), minpoly: m, fiber: Some(fiber) });
                continue;
            }
            let a = -m.coeff(0) / m.coeff(1);
            let fib = UniPoly::new(
                (0..=fiber.degree_in(1))
                    .map(|e| fiber.coeff(&[0, e, 0]).value().coeff(0))
                    .collect(),
            );
            for (g, _) in fib.factor() {
                if g.degree() == 1 {
                    let b = -g.coeff(0) / g.coeff(1);
                    points.push(vec![a.clone(), b, Rational::one()]);
                } else {
                    let gk = g.to_poly(Vars::Uv, 1).map_coeffs(Vars::Uv, |c| NfElem::rational(c.clone()));
                    residual.push(ResidualCluster { frame: frame.clone(), minpoly: m.clone(), fiber: Some(gk) });
                }
            }
        }
    }

    // Line at infinity of the frame; [0:1:0] is off the curve.
    let partials: Vec<UniPoly> = (0..3)
        .map(|i| UniPoly::from_poly(&restrict_to_infinity(&fp.derivative(i)), 1))
        .collect();
    let at_inf = partials.iter().skip(1).fold(partials[0].clone(), |g, p| g.gcd(p));
    if !at_inf.is_zero() && at_inf.degree() > 0 {
        for (g, _) in at_inf.factor() {
            if g.degree() == 1 {
                let b = -g.coeff(0) / g.coeff(1);
                points.push(vec![Rational::one(), b, Rational::zero()]);
            } else {
                residual.push(ResidualCluster { frame: frame.clone(), minpoly: g, fiber: None });
            }
        }
    }

    let mut out: Vec<ProjPoint> = points
        .iter()
        .map(|p| ProjPoint::from_slice(&frame.apply_point(p)).expect("frame is invertible"))
        .collect();
    debug_assert!(out.iter().all(|p| is_singular(form, p)));
    out.retain(|p| is_singular(form, p));
    out.sort();
    out.dedup();
    Some(SingularLocus { points: out, residual })
}

pub(crate) fn is_singular(form: &HomForm, p: &ProjPoint) -> bool {
    let poly = form.poly();
    (0..3).all(|i| poly.derivative(i).eval(p.coords()).is_zero()) && p.lies_on(form)
}
