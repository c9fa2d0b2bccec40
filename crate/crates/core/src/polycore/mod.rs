//! Exact polynomial kernel over Q.

mod factor;
mod gcd;
pub mod linalg;
pub mod numfield;
mod parse;
mod poly;
pub mod univariate;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};

pub use factor::{factor_binary, factor_bounded, Factorization};
pub use gcd::{content_in, gcd as gcd_poly, resultant as resultant_poly, squarefree, squarefree_part};
pub use linalg::Matrix;
pub use parse::{parse_in, parse_poly};
pub use poly::{rat, ratio, Coeff, CoeffDisplay, Monomial, Poly, QPoly, Rational, Vars};
pub use univariate::UniPoly;

/// Largest admissible degree of a form.
pub const DEGREE_CAP: u32 = 24;

/// Affine polynomial in `u, v` (or a single variable).
pub type AffinePoly = QPoly;

/// Homogeneous form in two or three variables.
#[derive(Clone, PartialEq, Debug)]
pub struct HomForm {
    poly: QPoly,
    degree: u32,
}

impl HomForm {
    pub fn new(poly: QPoly) -> Result<Self> {
        if poly.nvars() < 2 {
            return Err(Error::InvalidInput("a form needs two or three variables".into()));
        }
        let Some(degree) = poly.total_degree() else {
            return Err(Error::InvalidInput("zero form needs an explicit degree".into()));
        };
        if !poly.is_homogeneous() {
            return Err(Error::InvalidInput(format!("{poly} is not homogeneous")));
        }
        if degree > DEGREE_CAP {
            return Err(Error::DegreeCap(degree));
        }
        Ok(HomForm { poly, degree })
    }

    pub fn zero(vars: Vars, degree: u32) -> Self {
        HomForm { poly: QPoly::zero(vars), degree }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_poly(text)?)
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn into_poly(self) -> QPoly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> Vars {
        self.poly.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn normalize(&self) -> HomForm {
        HomForm { poly: self.poly.normalize(), degree: self.degree }
    }

    pub fn mul(&self, other: &HomForm) -> Result<HomForm> {
        let degree = self.degree + other.degree;
        if degree > DEGREE_CAP {
            return Err(Error::DegreeCap(degree));
        }
        Ok(HomForm { poly: &self.poly * &other.poly, degree })
    }

    pub fn pow(&self, e: u32) -> Result<HomForm> {
        let degree = self.degree * e;
        if degree > DEGREE_CAP {
            return Err(Error::DegreeCap(degree));
        }
        Ok(HomForm { poly: self.poly.pow(e), degree })
    }

    /// Linear combination `a*self + b*other` of two forms of equal degree.
    pub fn combine(&self, a: &Rational, other: &HomForm, b: &Rational) -> HomForm {
        debug_assert_eq!(self.degree, other.degree);
        HomForm {
            poly: self.poly.scale(a) + other.poly.scale(b),
            degree: self.degree,
        }
    }

    pub fn divides(&self, other: &HomForm) -> bool {
        !self.is_zero() && other.poly.div_exact(&self.poly).is_some()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.poly.eval(point)
    }
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Unique integer-primitive multiple with positive graded-lex leading term.
pub fn normalize(p: &HomForm) -> HomForm {
    p.normalize()
}

/// Normalized gcd of two forms.
pub fn gcd(p: &HomForm, q: &HomForm) -> Result<HomForm> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    let g = gcd::gcd(p.poly(), q.poly()).normalize();
    let d = g.total_degree().unwrap_or(0);
    Ok(HomForm { poly: g, degree: d })
}

/// Sylvester resultant eliminating variable `var`.
pub fn resultant(p: &QPoly, q: &QPoly, var: usize) -> Result<QPoly> {
    gcd::resultant(p, q, var).ok_or_else(|| Error::InvalidInput("resultant of a zero polynomial".into()))
}

/// Square-free decomposition with normalized factors, multiplicities ascending.
pub fn squarefree_decomposition(p: &QPoly) -> Result<Vec<(QPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("square-free decomposition of zero".into()));
    }
    Ok(gcd::squarefree(p)
        .into_iter()
        .map(|(f, m)| (f.normalize(), m))
        .collect())
}

/// Invertible 3x3 change of projective coordinates. Row `i` holds the linear
/// form substituted for variable `i`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearChange {
    matrix: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.len() != 3 || matrix.iter().any(|r| r.len() != 3) {
            return Err(Error::InvalidInput("a linear change is a 3x3 matrix".into()));
        }
        if linalg::determinant(&matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange { matrix })
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    /// Change whose rows are the coefficient vectors of three linear forms.
    pub fn from_linear_forms(forms: &[HomForm; 3]) -> Result<Self> {
        let mut rows = Vec::new();
        for f in forms {
            if f.degree() != 1 || f.vars() != Vars::Xyz {
                return Err(Error::InvalidInput(format!("{f} is not a linear form in x, y, z")));
            }
            rows.push((0..3).map(|i| {
                let mut m = [0; 3];
                m[i] = 1;
                f.poly().coeff(&m)
            }).collect());
        }
        Self::new(rows)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange { matrix: linalg::inverse(&self.matrix).expect("invertible by construction") }
    }

    /// The three linear forms replacing x, y, z.
    pub fn images(&self) -> Vec<QPoly> {
        self.matrix
            .iter()
            .map(|row| {
                QPoly::from_terms(
                    Vars::Xyz,
                    row.iter().enumerate().map(|(j, c)| {
                        let mut m = [0; 3];
                        m[j] = 1;
                        (m, c.clone())
                    }),
                )
            })
            .collect()
    }

    pub fn apply_point(&self, p: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(p).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Substitutes each variable by the linear form in the corresponding row.
pub fn change_coordinates(p: &HomForm, m: &LinearChange) -> HomForm {
    assert_eq!(p.vars(), Vars::Xyz, "coordinate changes act on ternary forms");
    let poly = p.poly().substitute(&m.images());
    HomForm { poly, degree: p.degree() }
}

/// Convenience: ternary variable as a form.
pub fn var_form(i: usize) -> HomForm {
    HomForm::new(QPoly::var(Vars::Xyz, i)).unwrap()
}

/// Convenience: the constant one as a degree-zero projective form.
pub fn one_form() -> HomForm {
    HomForm { poly: QPoly::one(Vars::Xyz), degree: 0 }
}

/// The rational unit `c` with `p = c * q`, if the two are proportional.
pub fn proportionality(p: &QPoly, q: &QPoly) -> Option<Rational> {
    let (m, c) = q.lead_lex()?;
    let r = p.coeff(m) / c.clone();
    (q.scale(&r) == *p && !r.is_zero()).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HomForm {
        HomForm::parse(s).unwrap()
    }

    #[test]
    fn change_coordinates_examples() {
        assert_eq!(change_coordinates(&f("x"), &LinearChange::identity()), f("x"));
        let swap = LinearChange::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(change_coordinates(&f("x^2"), &swap), f("y^2"));
        let m = LinearChange::from_ints([[1, 0, 1], [0, 1, 0], [0, 0, 1]]).unwrap();
        let c = change_coordinates(&f("x^2 + y^2 - z^2"), &m);
        assert_eq!(c, f("x^2 + 2*x*z + y^2"));
        assert_eq!(change_coordinates(&c, &m.inverse()), f("x^2 + y^2 - z^2"));
        assert_eq!(
            LinearChange::from_ints([[1, 1, 0], [1, 1, 0], [0, 0, 1]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn gcd_rejects_double_zero() {
        let z = HomForm::zero(Vars::Xyz, 2);
        assert_eq!(gcd(&z, &z), Err(Error::BothZero));
        assert_eq!(gcd(&z, &f("2*x - 4*y")).unwrap(), f("x - 2*y"));
    }

    #[test]
    fn degree_cap_enforced() {
        assert!(matches!(HomForm::parse("x^25"), Err(Error::DegreeCap(25))));
        assert!(matches!(f("x^13").mul(&f("y^12")), Err(Error::DegreeCap(25))));
    }
}
