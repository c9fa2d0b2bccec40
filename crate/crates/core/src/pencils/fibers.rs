//! Fiber decomposition, containment of a curve in a pencil, and the
//! orbifold signature.

use num_integer::Integer;
use num_traits::One;

use super::{member, special_fibers, Pencil, PencilParameter, MAX_EXTENSION_DEGREE};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::polycore::numfield::{NfElem, NumberField};
use crate::polycore::{factor_bounded, gcd_poly, squarefree, HomForm, Poly, Rational, Vars};

#[derive(Clone, Debug, PartialEq)]
pub struct FiberComponent {
    /// Printed form; coefficients in `t` live in `Q(t)/(m)` for algebraic fibers.
    pub text: String,
    pub degree: u32,
    pub multiplicity: u32,
    /// Whether the component divides a form of `C`.
    pub in_c: bool,
    /// False for unfactored products (residuals or parts over an extension).
    pub irreducible: bool,
    /// The rational form, for fibers over Q.
    pub form: Option<HomForm>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberData {
    pub parameter: PencilParameter,
    pub components: Vec<FiberComponent>,
    /// Set when some component is a product that was not split further.
    pub residual: bool,
    /// Reduced support contained in `C`.
    pub in_a: bool,
    /// gcd of the multiplicities of components outside `C` (1 when `in_a`).
    pub weight: u32,
    pub warnings: Vec<String>,
}

fn weight_of(components: &[FiberComponent]) -> (bool, u32) {
    let outside: Vec<u32> = components.iter().filter(|c| !c.in_c).map(|c| c.multiplicity).collect();
    if outside.is_empty() {
        (true, 1)
    } else {
        (false, outside.iter().fold(0, |g, &m| g.gcd(&m)))
    }
}

/// Components of the member at `param`, with multiplicities and their
/// position relative to the curve `C` given by `c_forms`.
pub fn fiber_structure(
    pencil: &Pencil,
    param: &PencilParameter,
    c_forms: &[HomForm],
    dmax: u32,
) -> Result<FiberData> {
    match param {
        PencilParameter::Rational(..) => rational_fiber(pencil, param, c_forms, dmax),
        PencilParameter::Algebraic(m) => {
            if m.degree() > MAX_EXTENSION_DEGREE {
                return Err(Error::ExtensionTooLarge(m.degree()));
            }
            algebraic_fiber(pencil, param, m, c_forms)
        }
    }
}

fn divides_some(g: &HomForm, c_forms: &[HomForm]) -> bool {
    c_forms.iter().any(|c| g.divides(c))
}

fn rational_fiber(pencil: &Pencil, param: &PencilParameter, c_forms: &[HomForm], dmax: u32) -> Result<FiberData> {
    let f = member(pencil, param)?;
    let fac = factor_bounded(&f, dmax)?;
    let mut components = Vec::new();
    let mut warnings = Vec::new();
    let push = |components: &mut Vec<FiberComponent>, g: &HomForm, m: u32, in_c: bool, irreducible: bool| {
        components.push(FiberComponent {
            text: g.to_string(),
            degree: g.degree(),
            multiplicity: m,
            in_c,
            irreducible,
            form: Some(g.clone()),
        });
    };
    for (g, m) in &fac.factors {
        push(&mut components, g, *m, divides_some(g, c_forms), true);
    }
    for (g, m) in &fac.residual {
        warnings.push(format!("component {g} not factored beyond degree {dmax}"));
        // Split the unfactored part by its common factor with C.
        let mut rest = g.clone();
        for c in c_forms {
            let common = crate::polycore::gcd(&rest, c)?;
            if common.degree() > 0 {
                push(&mut components, &common, *m, true, false);
                rest = HomForm::new(rest.poly().div_exact(common.poly()).expect("gcd divides"))?.normalize();
            }
        }
        if rest.degree() > 0 {
            push(&mut components, &rest, *m, false, false);
        }
    }
    let (in_a, weight) = weight_of(&components);
    Ok(FiberData {
        parameter: param.clone(),
        residual: !fac.is_complete(),
        components,
        in_a,
        weight,
        warnings,
    })
}

fn algebraic_fiber(
    pencil: &Pencil,
    param: &PencilParameter,
    m: &crate::polycore::UniPoly,
    c_forms: &[HomForm],
) -> Result<FiberData> {
    let k = NumberField::new(m);
    let f = pencil.member_over(&k);
    let lift = |h: &HomForm| h.poly().map_coeffs(Vars::Xyz, |c| NfElem::rational(c.clone()));
    let c_lifted: Vec<Poly<NfElem>> = c_forms.iter().map(lift).collect();
    let mut components = Vec::new();
    let mut push = |g: &Poly<NfElem>, mult: u32, in_c: bool| {
        let degree = g.total_degree().unwrap_or(0);
        components.push(FiberComponent {
            text: g.monic().to_string(),
            degree,
            multiplicity: mult,
            in_c,
            irreducible: degree == 1,
            form: None,
        });
    };
    for (part, mult) in squarefree(&f) {
        if part.is_constant() {
            continue;
        }
        let mut rest = part;
        for c in &c_lifted {
            let common = gcd_poly(&rest, c);
            if !common.is_constant() {
                push(&common, mult, true);
                rest = rest.div_exact(&common).expect("gcd divides");
            }
        }
        if !rest.is_constant() {
            push(&rest, mult, false);
        }
    }
    let (in_a, weight) = weight_of(&components);
    Ok(FiberData {
        parameter: param.clone(),
        residual: false,
        components,
        in_a,
        weight,
        warnings: vec![format!(
            "components over Q(t)/({}) are grouped by multiplicity and by containment in C, not split into irreducibles",
            m
        )],
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Containment {
    pub contained: bool,
    /// Each irreducible component of `C` with the member containing it.
    pub assignments: Vec<(HomForm, Option<PencilParameter>)>,
}

/// Whether every irreducible component of `C` lies in some member.
pub fn contains_curve(pencil: &Pencil, c_forms: &[HomForm], dmax: u32) -> Result<Containment> {
    let mut assignments = Vec::new();
    for c in c_forms {
        let fac = factor_bounded(c, dmax)?;
        if !fac.is_complete() {
            return Err(Error::NotCheckable(format!("{c} has factors of degree above {dmax}")));
        }
        for (g, _) in fac.factors {
            let (_, rp) = pencil.p.poly().div_rem(g.poly()).expect("nonzero");
            let (_, rq) = pencil.q.poly().div_rem(g.poly()).expect("nonzero");
            let param = if rp.is_zero() {
                Some(PencilParameter::from_ints(1, 0)?)
            } else if rq.is_zero() {
                Some(PencilParameter::from_ints(0, 1)?)
            } else {
                crate::polycore::proportionality(&rp, &rq)
                    .map(|c| PencilParameter::rational(Rational::one(), -c))
                    .transpose()?
            };
            assignments.push((g, param));
        }
    }
    assignments.sort_by_key(|a| a.0.to_string());
    assignments.dedup_by(|a, b| a.0 == b.0);
    Ok(Containment { contained: assignments.iter().all(|(_, p)| p.is_some()), assignments })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbifoldSignature {
    /// Number of members whose support lies in `C`.
    pub punctures: usize,
    /// Multiple-fiber weights outside `C`, descending.
    pub weights: Vec<u32>,
    pub fibers: Vec<FiberData>,
    pub warnings: Vec<String>,
}

pub fn orbifold_of_pencil(pencil: &Pencil, c_forms: &[HomForm], dmax: u32) -> Result<OrbifoldSignature> {
    orbifold_of_pencil_with(Exec::default(), pencil, c_forms, dmax)
}

/// Signature `(n; n_1, ..., n_r)` of the orbifold quotient map defined by
/// the pencil. Fiber connectedness is assumed, not checked.
pub fn orbifold_of_pencil_with(
    exec: Exec,
    pencil: &Pencil,
    c_forms: &[HomForm],
    dmax: u32,
) -> Result<OrbifoldSignature> {
    let containment = contains_curve(pencil, c_forms, dmax)?;
    if !containment.contained {
        return Err(Error::NotContained);
    }
    let special = special_fibers(pencil)?;
    let mut params = special.params.clone();
    params.extend(containment.assignments.iter().filter_map(|(_, p)| p.clone()));
    params.sort();
    params.dedup();

    let fibers: Vec<FiberData> = par::map(exec, &params, |p| fiber_structure(pencil, p, c_forms, dmax))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut warnings: Vec<String> = vec!["connectedness of the generic fiber is not checked".into()];
    warnings.extend(
        special
            .unresolved
            .iter()
            .map(|m| format!("special parameters at roots of {m} exceed degree {MAX_EXTENSION_DEGREE}; excluded")),
    );
    for f in &fibers {
        warnings.extend(f.warnings.iter().map(|w| format!("{}: {w}", f.parameter)));
    }
    let punctures = fibers.iter().filter(|f| f.in_a).count();
    let mut weights: Vec<u32> = fibers.iter().filter(|f| !f.in_a && f.weight > 1).map(|f| f.weight).collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    Ok(OrbifoldSignature { punctures, weights, fibers, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HomForm {
        HomForm::parse(s).unwrap()
    }

    fn pencil(p: &str, q: &str) -> Pencil {
        Pencil::parse(p, q).unwrap()
    }

    fn zariski() -> (Pencil, HomForm) {
        let d2 = f("x^2 + y^2 + x*z + z^2");
        let d3 = f("x^3 + 2*y^3 - z^3 + x*y*z");
        let p = d2.pow(3).unwrap();
        let q = d3.pow(2).unwrap();
        let c = HomForm::new(p.poly() + q.poly()).unwrap();
        (Pencil::new(p, q).unwrap(), c)
    }

    #[test]
    fn fiber_examples() {
        let pc = pencil("z^2", "x^2 + y^2 - z^2");
        let fib = fiber_structure(&pc, &PencilParameter::from_ints(1, 0).unwrap(), &[], 2).unwrap();
        assert_eq!(fib.components.len(), 1);
        assert_eq!((fib.components[0].text.as_str(), fib.components[0].multiplicity), ("z", 2));
        assert!(!fib.in_a);
        assert_eq!(fib.weight, 2);

        let c = [f("x^2 + y^2 - z^2")];
        let fib = fiber_structure(&pc, &PencilParameter::from_ints(0, 1).unwrap(), &c, 2).unwrap();
        assert!(fib.in_a);

        let (zp, zc) = zariski();
        let fib = fiber_structure(&zp, &PencilParameter::from_ints(1, 0).unwrap(), &[zc], 6).unwrap();
        assert_eq!(fib.components.len(), 1);
        assert_eq!(fib.components[0].multiplicity, 3);
        assert_eq!(fib.weight, 3);
        assert!(!fib.in_a);
    }

    #[test]
    fn algebraic_fiber_weight() {
        // lambda^2 = 2: member sqrt(2) x^2 + ... stays reduced; weight 1.
        let pc = pencil("x^2", "y^2 - 2*z^2");
        let m = crate::polycore::UniPoly::from_ints(&[-2, 0, 1]);
        let fib = fiber_structure(&pc, &PencilParameter::algebraic(&m).unwrap(), &[], 2).unwrap();
        assert_eq!(fib.weight, 1);
        let big = crate::polycore::UniPoly::from_ints(&[-2, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(
            fiber_structure(&pc, &PencilParameter::algebraic(&big).unwrap(), &[], 2),
            Err(Error::ExtensionTooLarge(7))
        );
    }

    #[test]
    fn containment_examples() {
        let pc = pencil("x^2", "y^2");
        let r = contains_curve(&pc, &[f("x - y")], 2).unwrap();
        assert!(r.contained);
        assert_eq!(r.assignments[0].1.as_ref().unwrap().to_string(), "(1:-1)");
        assert!(!contains_curve(&pc, &[f("z")], 2).unwrap().contained);

        let pc = pencil("z^2", "x^2 + y^2 - z^2");
        let c = HomForm::new(f("x^2 + y^2 - z^2").poly() * f("2*z^2 - x^2 - y^2").poly()).unwrap();
        let r = contains_curve(&pc, &[c], 4).unwrap();
        let ps: Vec<String> = r.assignments.iter().map(|(_, p)| p.as_ref().unwrap().to_string()).collect();
        assert_eq!(ps, vec!["(1:-1)", "(0:1)"]);
    }

    #[test]
    fn signatures() {
        let pc = pencil("z^2", "x^2 + y^2 - z^2");
        let c = [f("x^2 + y^2 - z^2"), f("2*z^2 - x^2 - y^2")];
        let sig = orbifold_of_pencil(&pc, &c, 4).unwrap();
        assert_eq!((sig.punctures, sig.weights.clone()), (2, vec![2]));
        let seq = orbifold_of_pencil_with(Exec::Sequential, &pc, &c, 4).unwrap();
        assert_eq!(seq, sig);

        let (zp, zc) = zariski();
        let sig = orbifold_of_pencil(&zp, &[zc], 6).unwrap();
        assert_eq!((sig.punctures, sig.weights), (1, vec![3, 2]));

        // C covering every special fiber.
        let c = [f("z"), f("x^2 + y^2")];
        let sig = orbifold_of_pencil(&pc, &c, 2).unwrap();
        assert!(sig.weights.is_empty());
        assert_eq!(sig.punctures, 2);

        assert_eq!(orbifold_of_pencil(&pc, &[f("x")], 2), Err(Error::NotContained));
    }
}
