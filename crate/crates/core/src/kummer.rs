//! Kummer covers `[L1^n : L2^n : L3^n]` of the plane and pencil transport
//! along them.

use num_traits::Zero;

use crate::curves::{intersection_multiplicity, local_equation, IntersectionNumber, PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::orbgroups::{identify, reduction_to, NamedGroup};
use crate::pencils::{orbifold_of_pencil, OrbifoldSignature, Pencil};
use crate::polycore::{change_coordinates, gcd, HomForm, LinearChange, Rational, Vars};
use crate::splitting::{conic_matrix, parametrize_line, split_test};

/// The map `x -> M^{-1} (L1(x)^n, L2(x)^n, L3(x)^n)`, where `M` has the
/// coefficient vectors of the lines as rows. It pulls `L_i` back to `L_i^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct KummerMap {
    lines: [HomForm; 3],
    n: u32,
    frame: LinearChange,
}

impl KummerMap {
    pub fn new(lines: [HomForm; 3], n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("Kummer exponent must be >= 1".into()));
        }
        let frame = LinearChange::from_linear_forms(&lines)?;
        Ok(KummerMap { lines, n, frame })
    }

    pub fn lines(&self) -> &[HomForm; 3] {
        &self.lines
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn frame(&self) -> &LinearChange {
        &self.frame
    }
}

/// `f_n^* F`, of degree `n * deg F`.
pub fn pullback(f: &HomForm, map: &KummerMap) -> Result<HomForm> {
    if f.vars() != Vars::Xyz {
        return Err(Error::InvalidInput(format!("{f} is not a ternary form")));
    }
    let in_frame = change_coordinates(f, &map.frame.inverse());
    let powers: Vec<_> = map.lines.iter().map(|l| l.poly().pow(map.n)).collect();
    let poly = in_frame.poly().substitute(&powers);
    if poly.is_zero() {
        return Ok(HomForm::zero(Vars::Xyz, f.degree() * map.n));
    }
    HomForm::new(poly)
}

/// `<f^*P, f^*Q>` with any common factor removed.
pub fn pullback_pencil(pencil: &Pencil, map: &KummerMap) -> Result<Pencil> {
    let p = pullback(pencil.p(), map)?;
    let q = pullback(pencil.q(), map)?;
    let g = gcd(&p, &q)?;
    let strip = |h: &HomForm| HomForm::new(h.poly().div_exact(g.poly()).expect("gcd divides"));
    Pencil::new(strip(&p)?, strip(&q)?)
}

/// Point where the line `l` touches the conic `c`.
pub fn tangency_point(c: &HomForm, l: &HomForm) -> Result<ProjPoint> {
    let phi = parametrize_line(l)?;
    let split = split_test(c, &phi).map_err(|_| Error::Tangency(format!("{l} is a component of {c}")))?;
    let w = match split.square_root {
        Some(w) if split.splits && w.total_degree() == Some(1) => w,
        _ => return Err(Error::Tangency(format!("{l} is not tangent to {c}"))),
    };
    // w = a t + b s vanishes at (t:s) = (b:-a).
    let (a, b) = (w.coeff(&[1, 0, 0]), w.coeff(&[0, 1, 0]));
    let at = |f: &crate::polycore::QPoly| f.eval(&[b.clone(), -a.clone()]);
    let coords: Vec<Rational> = phi.forms().iter().map(at).collect();
    let p = ProjPoint::from_slice(&coords)?;
    let cc = PlaneCurve::new(c.clone())?;
    let lc = PlaneCurve::new(l.clone())?;
    let origin = [Rational::zero(), Rational::zero()];
    let mult = intersection_multiplicity(&local_equation(&cc, &p), &local_equation(&lc, &p), &origin);
    if mult != IntersectionNumber::Finite(2) {
        return Err(Error::Tangency(format!("{l} meets {c} at {p} with multiplicity {mult}")));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KummerReport {
    pub base_pencil: Pencil,
    pub pencil: Pencil,
    pub curve: HomForm,
    pub tangency_points: Option<Vec<ProjPoint>>,
    pub signature: OrbifoldSignature,
    /// Target `(1; 2, n)` (just `(1; 2)` when `n = 1`).
    pub target_weights: Vec<u32>,
    /// Divisors realizing the reduction onto the target, if it exists.
    pub reduction: Option<Vec<u32>>,
    pub target_group: NamedGroup,
}

/// Signature of the pencil `<f^*C, f^*(L1 L2)>` relative to `f^*C`. When
/// `checked`, `C` must be a smooth conic touched by the three lines at
/// three distinct points.
pub fn kummer_orbifold(
    c: &HomForm,
    lines: [HomForm; 3],
    n: u32,
    dmax: Option<u32>,
    checked: bool,
) -> Result<KummerReport> {
    let map = KummerMap::new(lines, n)?;
    let tangency_points = if checked {
        if c.degree() != 2 || crate::polycore::linalg::rank(&conic_matrix(c)) != 3 {
            return Err(Error::Tangency(format!("{c} is not a smooth conic")));
        }
        let pts = map
            .lines
            .iter()
            .map(|l| tangency_point(c, l))
            .collect::<Result<Vec<_>>>()?;
        if pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2] {
            return Err(Error::Tangency("tangency points are not distinct".into()));
        }
        Some(pts)
    } else {
        None
    };
    let base = Pencil::new(c.clone(), map.lines[0].mul(&map.lines[1])?)?;
    let pencil = pullback_pencil(&base, &map)?;
    let curve = pullback(c, &map)?;
    let dmax = dmax.unwrap_or(curve.degree());
    let signature = orbifold_of_pencil(&pencil, std::slice::from_ref(&curve), dmax)?;
    let target_weights = if n >= 2 { vec![2, n] } else { vec![2] };
    let reduction = (signature.punctures == 1)
        .then(|| reduction_to(&signature.weights, &target_weights))
        .flatten();
    let target_group = identify(1, &target_weights);
    Ok(KummerReport { base_pencil: base, pencil, curve, tangency_points, signature, target_weights, reduction, target_group })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HomForm {
        HomForm::parse(s).unwrap()
    }

    fn circle_lines() -> [HomForm; 3] {
        [f("x - z"), f("x + z"), f("y - z")]
    }

    #[test]
    fn pullback_examples() {
        let id = KummerMap::new([f("x"), f("y"), f("z")], 3).unwrap();
        assert_eq!(pullback(&f("x"), &id).unwrap(), f("x^3"));
        let map = KummerMap::new(circle_lines(), 2).unwrap();
        assert_eq!(pullback(&f("x - z"), &map).unwrap(), f("x^2 - 2*x*z + z^2"));
        let l1l2 = pullback(&f("x^2 - z^2"), &map).unwrap();
        let expect = f("x - z").pow(2).unwrap().mul(&f("x + z").pow(2).unwrap()).unwrap();
        assert_eq!(l1l2, expect);
        assert!(KummerMap::new([f("x"), f("x"), f("z")], 2).is_err());
    }

    #[test]
    fn base_pencil_has_double_line() {
        let base = Pencil::new(f("x^2 + y^2 - z^2"), f("x^2 - z^2")).unwrap();
        let m = crate::pencils::member(&base, &crate::pencils::PencilParameter::from_ints(1, -1).unwrap()).unwrap();
        assert_eq!(m, f("y^2"));
    }

    #[test]
    fn identity_exponent_keeps_pencil() {
        let map = KummerMap::new(circle_lines(), 1).unwrap();
        let base = Pencil::new(f("x^2 + y^2 - z^2"), f("x^2 - z^2")).unwrap();
        let pulled = pullback_pencil(&base, &map).unwrap();
        assert_eq!(pulled, base);
    }

    #[test]
    fn tangency_detection() {
        let c = f("x^2 + y^2 - z^2");
        assert_eq!(tangency_point(&c, &f("x - z")).unwrap().to_string(), "[1:0:1]");
        assert!(matches!(tangency_point(&c, &f("y")), Err(Error::Tangency(_))));
        assert!(matches!(
            kummer_orbifold(&c, [f("x - z"), f("x + z"), f("y")], 2, None, true),
            Err(Error::Tangency(_))
        ));
    }

    #[test]
    fn circle_signatures() {
        let c = f("x^2 + y^2 - z^2");
        for n in 1..=3 {
            let r = kummer_orbifold(&c, circle_lines(), n, None, true).unwrap();
            assert_eq!(r.signature.punctures, 1, "n = {n}");
            assert!(r.reduction.is_some(), "n = {n}: {:?}", r.signature.weights);
        }
    }
}
