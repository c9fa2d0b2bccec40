//! Splitting of a curve `C2` in the double cover branched along `C1`, and
//! the identity `F2 * H * z^k = G1^2 - G2^2 * F1` that certifies it.

mod identity;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polycore::{gcd_poly, linalg, parse_in, HomForm, QPoly, Rational, Vars};

pub use identity::{
    find_identity, find_identity_with, no_cancellation_check, split_test, verify_identity, IdentityWitness,
    SplitResult,
};

/// Default height bound for the rational point search on conics.
pub const DEFAULT_HEIGHT_BOUND: u64 = 50;

/// Map `P^1 -> P^2` given by three binary forms in `t, s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    forms: [QPoly; 3],
    degree: u32,
}

impl Parametrization {
    pub fn new(forms: [QPoly; 3]) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidInput(format!("parametrization: {m}")));
        if forms.iter().any(|f| !f.is_zero() && f.vars() != Vars::Ts) {
            return bad("components must be binary forms in t, s");
        }
        let forms = forms.map(|f| f.with_vars(Vars::Ts));
        let degs: Vec<u32> = forms.iter().filter_map(QPoly::total_degree).collect();
        let Some(&degree) = degs.first() else {
            return bad("all components are zero");
        };
        if degree == 0 || degs.iter().any(|&d| d != degree) || forms.iter().any(|f| !f.is_homogeneous()) {
            return bad("components must be forms of one positive degree");
        }
        let g = forms.iter().fold(QPoly::zero(Vars::Ts), |g, f| gcd_poly(&g, f));
        if !g.is_constant() {
            return bad("components share a common factor");
        }
        let rows: linalg::Matrix = forms
            .iter()
            .map(|f| (0..=degree).map(|i| f.coeff(&[i, degree - i, 0])).collect())
            .collect();
        if linalg::rank(&rows) < 2 {
            return bad("components are proportional");
        }
        Ok(Parametrization { forms, degree })
    }

    /// Parses three comma-separated binary forms, e.g. `"t, s, s"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidInput("a parametrization has three components".into()));
        }
        let mut forms = Vec::with_capacity(3);
        for p in parts {
            forms.push(parse_in(p, Vars::Ts)?);
        }
        Self::new(forms.try_into().expect("three components"))
    }

    pub fn forms(&self) -> &[QPoly; 3] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Fails unless the image lies on the curve `f = 0`.
    pub fn check_on(&self, f: &HomForm) -> Result<()> {
        if pullback_on_curve(f, self).is_zero() {
            Ok(())
        } else {
            Err(Error::InconsistentParametrization)
        }
    }

    /// Scales the triple to coprime integer coefficients.
    fn primitive(forms: [QPoly; 3]) -> [QPoly; 3] {
        let mut num = BigInt::zero();
        let mut den = BigInt::from(1);
        for f in &forms {
            for (_, c) in f.terms() {
                num = num.gcd(c.numer());
                den = den.lcm(c.denom());
            }
        }
        let s = Rational::new(den, num);
        forms.map(|f| f.scale(&s))
    }
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.forms[0], self.forms[1], self.forms[2])
    }
}

/// Composition `F(phi(t, s))`.
pub fn pullback_on_curve(f: &HomForm, phi: &Parametrization) -> QPoly {
    f.poly().substitute(phi.forms())
}

/// Degree-one parametrization of a line.
pub fn parametrize_line(l: &HomForm) -> Result<Parametrization> {
    if l.degree() != 1 || l.vars() != Vars::Xyz || l.is_zero() {
        return Err(Error::InvalidInput(format!("{l} is not a line")));
    }
    let coeff = |i: usize| {
        let mut m = [0; 3];
        m[i] = 1;
        l.poly().coeff(&m)
    };
    let k = (0..3).rev().find(|&i| !coeff(i).is_zero()).unwrap();
    let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let t = QPoly::var(Vars::Ts, 0);
    let s = QPoly::var(Vars::Ts, 1);
    let mut forms = [QPoly::zero(Vars::Ts), QPoly::zero(Vars::Ts), QPoly::zero(Vars::Ts)];
    forms[free[0]] = t.clone();
    forms[free[1]] = s.clone();
    let ak = coeff(k);
    forms[k] = (t.scale(&coeff(free[0])) + s.scale(&coeff(free[1]))).scale(&(-Rational::from_integer(1.into()) / ak));
    Parametrization::new(Parametrization::primitive(forms))
}

/// Symmetric Gram matrix of a ternary quadratic form.
pub fn conic_matrix(c: &HomForm) -> linalg::Matrix {
    let two = Rational::from_integer(2.into());
    let mut a = vec![vec![Rational::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut m = [0; 3];
            m[i] += 1;
            m[j] += 1;
            let v = c.poly().coeff(&m);
            a[i][j] = if i == j { v } else { v / two.clone() };
        }
    }
    a
}

/// Rational point of `c` with max-norm height at most `bound`, searched in a
/// fixed order: by height, then lexicographically.
pub fn find_rational_point(c: &HomForm, bound: u64) -> Option<[BigInt; 3]> {
    let ints = c.poly().normalize();
    let small: Option<Vec<([u32; 3], i128)>> =
        ints.terms().map(|(m, v)| v.to_integer().to_i128().map(|x| (*m, x))).collect();
    let vanishes = |p: [i64; 3]| -> bool {
        match &small {
            Some(terms) => {
                let mut acc: i128 = 0;
                for (m, v) in terms {
                    let mut t = *v;
                    for i in 0..3 {
                        for _ in 0..m[i] {
                            t *= p[i] as i128;
                        }
                    }
                    acc += t;
                }
                acc == 0
            }
            None => ints.eval(&p.map(|x| Rational::from_integer(x.into()))).is_zero(),
        }
    };
    for h in 1..=bound as i64 {
        for x in -h..=h {
            for y in -h..=h {
                for z in -h..=h {
                    if x.abs().max(y.abs()).max(z.abs()) != h {
                        continue;
                    }
                    let first = [x, y, z].into_iter().find(|&v| v != 0).unwrap();
                    if first < 0 || x.gcd(&y).gcd(&z) != 1 {
                        continue;
                    }
                    if vanishes([x, y, z]) {
                        return Some([x, y, z].map(BigInt::from));
                    }
                }
            }
        }
    }
    None
}

/// Degree-two parametrization of a nondegenerate conic by the lines through
/// a rational point.
pub fn parametrize_conic(c: &HomForm, bound: u64) -> Result<Parametrization> {
    if c.degree() != 2 || c.vars() != Vars::Xyz {
        return Err(Error::InvalidInput(format!("{c} is not a conic")));
    }
    let a = conic_matrix(c);
    let r = linalg::rank(&a);
    if r < 3 {
        return Err(Error::DegenerateConic(r));
    }
    let p0 = find_rational_point(c, bound).ok_or(Error::NoRationalPointFound(bound))?;
    let p0: Vec<Rational> = p0.iter().map(|v| Rational::from_integer(v.clone())).collect();
    // Two basis vectors completing p0 to a basis.
    let k = (0..3).rev().find(|&k| !p0[k].is_zero()).unwrap();
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let t = QPoly::var(Vars::Ts, 0);
    let s = QPoly::var(Vars::Ts, 1);
    let mut q = [QPoly::zero(Vars::Ts), QPoly::zero(Vars::Ts), QPoly::zero(Vars::Ts)];
    q[i] = t;
    q[j] = s;
    // P = Q(q) p0 - 2 B(p0, q) q
    let qq = c.poly().substitute(&q);
    let bpq = (0..3).fold(QPoly::zero(Vars::Ts), |acc, r| {
        let row: Rational = (0..3).map(|c| &p0[c] * &a[c][r]).sum();
        acc + q[r].scale(&row)
    });
    let two = Rational::from_integer(2.into());
    let forms = [0, 1, 2].map(|r| qq.scale(&p0[r]) - (&bpq * &q[r]).scale(&two));
    let phi = Parametrization::new(Parametrization::primitive(forms))?;
    debug_assert!(phi.check_on(c).is_ok());
    Ok(phi)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HomForm {
        HomForm::parse(s).unwrap()
    }

    #[test]
    fn line_examples() {
        assert_eq!(parametrize_line(&f("y - z")).unwrap().to_string(), "(t, s, s)");
        assert_eq!(parametrize_line(&f("x")).unwrap().to_string(), "(0, t, s)");
        assert_eq!(parametrize_line(&f("z")).unwrap().to_string(), "(t, s, 0)");
        let l = f("2*x + 3*y - 5*z");
        parametrize_line(&l).unwrap().check_on(&l).unwrap();
        assert!(parametrize_line(&f("x^2")).is_err());
    }

    #[test]
    fn conic_examples() {
        for c in ["x^2 + y^2 - z^2", "2*z^2 - x^2 - y^2", "x*y - z^2", "3*x^2 - 7*y^2 + 4*z^2"] {
            let c = f(c);
            let phi = parametrize_conic(&c, DEFAULT_HEIGHT_BOUND).unwrap();
            assert_eq!(phi.degree(), 2);
            assert!(pullback_on_curve(&c, &phi).is_zero());
        }
        assert_eq!(
            parametrize_conic(&f("x^2 + y^2 + z^2"), 10),
            Err(Error::NoRationalPointFound(10))
        );
        assert_eq!(parametrize_conic(&f("x^2 - y^2"), 10), Err(Error::DegenerateConic(2)));
    }

    #[test]
    fn pullback_examples() {
        let line = Parametrization::parse("t, s, s").unwrap();
        assert_eq!(pullback_on_curve(&f("x^2 + y^2 - z^2"), &line).to_string(), "t^2");
        assert_eq!(pullback_on_curve(&f("x"), &line).to_string(), "t");
        let conic = Parametrization::parse("s^2 - t^2, 2*t*s, s^2 + t^2").unwrap();
        assert_eq!(pullback_on_curve(&f("z"), &conic).to_string(), "t^2 + s^2");
        assert!(pullback_on_curve(&f("x^2 + y^2 - z^2"), &conic).is_zero());
    }

    #[test]
    fn parametrization_validation() {
        assert!(Parametrization::parse("t, t, t").is_err());
        assert!(Parametrization::parse("t^2, t*s, t").is_err());
        assert!(Parametrization::parse("t^2, t*s, 0").is_err());
        assert!(Parametrization::parse("t, s").is_err());
    }
}
