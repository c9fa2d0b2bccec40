//! Pencils of plane curves `lambda*P + mu*Q`, their special members, and the
//! orbifold signature attached to a curve contained in the pencil.

mod fibers;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::DEFAULT_SEED;
use crate::error::{Error, Result};
use crate::polycore::numfield::{NfElem, NumberField};
use crate::polycore::{
    factor_binary, gcd_poly, linalg, resultant_poly, squarefree_part, HomForm, Poly, QPoly, Rational, UniPoly,
    Vars,
};
use crate::splitting::conic_matrix;

pub use fibers::{
    contains_curve, fiber_structure, orbifold_of_pencil, orbifold_of_pencil_with, Containment, FiberComponent,
    FiberData, OrbifoldSignature,
};

/// Largest extension degree handled for algebraic parameters.
pub const MAX_EXTENSION_DEGREE: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    p: HomForm,
    q: HomForm,
}

impl Pencil {
    pub fn new(p: HomForm, q: HomForm) -> Result<Self> {
        if p.vars() != Vars::Xyz || q.vars() != Vars::Xyz {
            return Err(Error::InvalidInput("pencil generators must be ternary forms".into()));
        }
        if p.is_zero() || q.is_zero() || p.degree() != q.degree() || p.degree() == 0 {
            return Err(Error::InvalidInput("pencil generators must be nonzero forms of one positive degree".into()));
        }
        if !gcd_poly(p.poly(), q.poly()).is_constant() {
            return Err(Error::InvalidInput("pencil generators share a common factor".into()));
        }
        Ok(Pencil { p, q })
    }

    pub fn parse(p: &str, q: &str) -> Result<Self> {
        Self::new(HomForm::parse(p)?, HomForm::parse(q)?)
    }

    pub fn p(&self) -> &HomForm {
        &self.p
    }

    pub fn q(&self) -> &HomForm {
        &self.q
    }

    pub fn degree(&self) -> u32 {
        self.p.degree()
    }

    /// `lambda*P + Q` with `lambda` a generator of `k`.
    fn member_over(&self, k: &std::sync::Arc<NumberField>) -> Poly<NfElem> {
        let lift = |f: &HomForm| f.poly().map_coeffs(Vars::Xyz, |c| NfElem::rational(c.clone()));
        let alpha = Poly::constant(Vars::Xyz, k.generator());
        &(&alpha * &lift(&self.p)) + &lift(&self.q)
    }
}

/// A point of the parameter line: rational `(lambda:mu)` or a root of an
/// irreducible polynomial in `lambda` (chart `mu = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PencilParameter {
    Rational(BigInt, BigInt),
    Algebraic(UniPoly),
}

impl PencilParameter {
    /// Normalizes to coprime integers with the first nonzero entry positive.
    pub fn rational(lambda: Rational, mu: Rational) -> Result<Self> {
        if lambda.is_zero() && mu.is_zero() {
            return Err(Error::InvalidInput("(0:0) is not a parameter".into()));
        }
        let den = lambda.denom().lcm(mu.denom());
        let (mut a, mut b) = ((lambda * Rational::from_integer(den.clone())).to_integer(), (mu * Rational::from_integer(den)).to_integer());
        let g = a.gcd(&b);
        a /= &g;
        b /= &g;
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(PencilParameter::Rational(a, b))
    }

    pub fn from_ints(lambda: i64, mu: i64) -> Result<Self> {
        Self::rational(Rational::from_integer(lambda.into()), Rational::from_integer(mu.into()))
    }

    /// Root of an irreducible polynomial; linear ones become rational.
    pub fn algebraic(m: &UniPoly) -> Result<Self> {
        if m.degree() == 0 {
            return Err(Error::InvalidInput("constant minimal polynomial".into()));
        }
        if m.degree() == 1 {
            return Self::rational(-m.coeff(0), m.coeff(1));
        }
        if !m.is_irreducible() {
            return Err(Error::InvalidInput(format!("{m} is reducible")));
        }
        Ok(PencilParameter::Algebraic(m.primitive()))
    }

    /// Parses `"a:b"` or `"a/b:c"` rational pairs.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().trim_matches(|c| c == '(' || c == ')').split(':').collect();
        if parts.len() != 2 {
            return Err(Error::InvalidInput(format!("parameter '{text}' is not of the form a:b")));
        }
        let num = |s: &str| -> Result<Rational> {
            s.trim().parse::<Rational>().map_err(|_| Error::InvalidInput(format!("bad number '{s}'")))
        };
        Self::rational(num(parts[0])?, num(parts[1])?)
    }

    pub fn degree(&self) -> usize {
        match self {
            PencilParameter::Rational(..) => 1,
            PencilParameter::Algebraic(m) => m.degree(),
        }
    }

    fn sort_key(&self) -> (u8, Rational, usize, String) {
        match self {
            PencilParameter::Rational(a, b) if b.is_zero() => (0, Rational::zero(), 0, String::new()),
            PencilParameter::Rational(a, b) => (1, Rational::new(a.clone(), b.clone()), 0, String::new()),
            PencilParameter::Algebraic(m) => (2, Rational::zero(), m.degree(), m.to_string()),
        }
    }
}

impl Ord for PencilParameter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for PencilParameter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PencilParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilParameter::Rational(a, b) => write!(f, "({a}:{b})"),
            PencilParameter::Algebraic(m) => write!(f, "root of {m}"),
        }
    }
}

/// `lambda*P + mu*Q`, normalized.
pub fn member(pencil: &Pencil, param: &PencilParameter) -> Result<HomForm> {
    match param {
        PencilParameter::Rational(a, b) => {
            let (a, b) = (Rational::from_integer(a.clone()), Rational::from_integer(b.clone()));
            Ok(pencil.p.combine(&a, &pencil.q, &b).normalize())
        }
        PencilParameter::Algebraic(_) => {
            Err(Error::InvalidInput("members at algebraic parameters are not rational forms".into()))
        }
    }
}

/// Special parameters plus candidate factors that could not be resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialFibers {
    pub params: Vec<PencilParameter>,
    /// Irreducible eliminant factors of degree above the extension limit.
    pub unresolved: Vec<UniPoly>,
}

pub fn special_fibers(pencil: &Pencil) -> Result<SpecialFibers> {
    special_fibers_seeded(pencil, DEFAULT_SEED)
}

/// Parameters whose member is not square-free, together with (for conic
/// pencils) those where the rank drops below the generic rank.
pub fn special_fibers_seeded(pencil: &Pencil, seed: u64) -> Result<SpecialFibers> {
    let mut params = Vec::new();
    let mut unresolved = Vec::new();
    let mut consider = |m: UniPoly, params: &mut Vec<PencilParameter>| -> Result<()> {
        if m.degree() > MAX_EXTENSION_DEGREE {
            unresolved.push(m);
            return Ok(());
        }
        let param = PencilParameter::algebraic(&m)?;
        if is_nonreduced(pencil, &param) {
            params.push(param);
        }
        Ok(())
    };

    let infinity = PencilParameter::from_ints(1, 0)?;
    if is_nonreduced(pencil, &infinity) {
        params.push(infinity);
    }
    let cand = nonreduced_candidates(pencil, seed);
    if cand.degree() > 0 {
        for (m, _) in cand.factor() {
            consider(m, &mut params)?;
        }
    }
    if pencil.degree() == 2 {
        params.extend(rank_drop_parameters(pencil)?);
    }
    params.sort();
    params.dedup();
    Ok(SpecialFibers { params, unresolved })
}

fn is_nonreduced(pencil: &Pencil, param: &PencilParameter) -> bool {
    match param {
        PencilParameter::Rational(..) => {
            let f = member(pencil, param).expect("rational");
            !squarefree_part(f.poly()).total_degree().is_some_and(|d| d == f.degree())
        }
        PencilParameter::Algebraic(m) => {
            let k = NumberField::new(m);
            let f = pencil.member_over(&k);
            let g = (0..3).fold(f.clone(), |g, i| gcd_poly(&g, &f.derivative(i)));
            !g.is_constant()
        }
    }
}

/// Polynomial in `lambda` vanishing at every non-reduced member with
/// `mu = 1`: the gcd of discriminants along a few random lines.
fn nonreduced_candidates(pencil: &Pencil, seed: u64) -> UniPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc: Option<UniPoly> = None;
    let mut lines = 0;
    for _ in 0..32 {
        if lines == 3 {
            break;
        }
        let pt = |rng: &mut ChaCha8Rng| -> Vec<QPoly> {
            (0..3).map(|_| QPoly::constant(Vars::Uv, Rational::from_integer(rng.gen_range(-5i64..=5).into()))).collect()
        };
        let (a, b) = (pt(&mut rng), pt(&mut rng));
        let u = QPoly::var(Vars::Uv, 0);
        let line: Vec<QPoly> = (0..3).map(|i| &a[i] + &(&u * &b[i])).collect();
        let v = QPoly::var(Vars::Uv, 1);
        let g = &(&v * &pencil.p.poly().substitute(&line)) + &pencil.q.poly().substitute(&line);
        if g.degree_in(0) < pencil.degree() {
            continue;
        }
        let Some(r) = resultant_poly(&g, &g.derivative(0), 0) else {
            continue;
        };
        if r.is_zero() {
            continue;
        }
        let r = UniPoly::from_poly(&r, 1);
        acc = Some(match acc {
            None => r,
            Some(prev) => prev.gcd(&r),
        });
        lines += 1;
    }
    acc.unwrap_or_else(UniPoly::zero)
}

/// Conic pencils: parameters where `rank(lambda*A + mu*B)` is below its
/// generic value, from the gcd of the generic-size minors.
fn rank_drop_parameters(pencil: &Pencil) -> Result<Vec<PencilParameter>> {
    let (a, b) = (conic_matrix(&pencil.p), conic_matrix(&pencil.q));
    let at = |l: i64, m: i64| -> linalg::Matrix {
        let (l, m) = (Rational::from_integer(l.into()), Rational::from_integer(m.into()));
        (0..3).map(|i| (0..3).map(|j| &l * &a[i][j] + &m * &b[i][j]).collect()).collect()
    };
    let generic = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, 3)]
        .iter()
        .map(|&(l, m)| linalg::rank(&at(l, m)))
        .max()
        .unwrap();
    let t = QPoly::var(Vars::Ts, 0);
    let s = QPoly::var(Vars::Ts, 1);
    let entry = |i: usize, j: usize| &t.scale(&a[i][j]) + &s.scale(&b[i][j]);
    let m: Vec<Vec<QPoly>> = (0..3).map(|i| (0..3).map(|j| entry(i, j)).collect()).collect();
    let subsets: Vec<Vec<usize>> = crate::polycore::univariate::combinations(3, generic);
    let mut g = QPoly::zero(Vars::Ts);
    for rows in &subsets {
        for cols in &subsets {
            g = gcd_poly(&g, &minor(&m, rows, cols));
        }
    }
    let mut out = Vec::new();
    if g.is_constant() {
        return Ok(out);
    }
    for (f, _) in factor_binary(&g) {
        let d = f.total_degree().unwrap();
        let lead = f.coeff(&[d, 0, 0]);
        if d == 1 {
            // a*lambda + b*mu = 0
            let (ca, cb) = (f.coeff(&[1, 0, 0]), f.coeff(&[0, 1, 0]));
            out.push(PencilParameter::rational(cb, -ca)?);
        } else {
            debug_assert!(!lead.is_zero());
            let m = UniPoly::from_poly(&f.specialize(1, &Rational::one()), 0);
            if m.degree() <= MAX_EXTENSION_DEGREE {
                out.push(PencilParameter::algebraic(&m)?);
            }
        }
    }
    Ok(out)
}

fn minor(m: &[Vec<QPoly>], rows: &[usize], cols: &[usize]) -> QPoly {
    match rows.len() {
        1 => m[rows[0]][cols[0]].clone(),
        n => {
            let mut acc = QPoly::zero(m[0][0].vars());
            for k in 0..n {
                let sub_cols: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c).collect();
                let term = &m[rows[0]][cols[k]] * &minor(m, &rows[1..], &sub_cols);
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}
