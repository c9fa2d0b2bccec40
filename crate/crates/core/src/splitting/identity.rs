//! Split test on a parametrized curve and the witness identity.

use num_traits::{One, Signed, Zero};

use super::{pullback_on_curve, Parametrization};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::polycore::{factor_binary, gcd_poly, linalg, HomForm, QPoly, Rational, Vars};

#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult {
    pub splits: bool,
    /// `F1∘phi`.
    pub pullback: QPoly,
    /// `w` with `F1∘phi = c * w^2`, when the curve splits.
    pub square_root: Option<QPoly>,
    pub constant: Option<Rational>,
    /// Irreducible factors of `F1∘phi` with odd multiplicity.
    pub odd_orders: Vec<(QPoly, u32)>,
}

/// Decides whether `F1∘phi` is a constant times a square.
pub fn split_test(f1: &HomForm, phi: &Parametrization) -> Result<SplitResult> {
    let pullback = pullback_on_curve(f1, phi);
    if pullback.is_zero() {
        return Err(Error::ComponentOfBranchCurve);
    }
    let factors = factor_binary(&pullback);
    let odd_orders: Vec<(QPoly, u32)> = factors.iter().filter(|(_, m)| m % 2 == 1).cloned().collect();
    if !odd_orders.is_empty() {
        return Ok(SplitResult { splits: false, pullback, square_root: None, constant: None, odd_orders });
    }
    let w = factors
        .iter()
        .fold(QPoly::one(Vars::Ts), |acc, (f, m)| &acc * &f.pow(m / 2));
    let w2 = w.pow(2);
    let (mono, lc) = pullback.lead_lex().expect("nonzero");
    let c = lc.clone() / w2.coeff(mono);
    debug_assert_eq!(w2.scale(&c), pullback);
    Ok(SplitResult { splits: true, pullback, square_root: Some(w), constant: Some(c), odd_orders })
}

/// `(G1, G2, H, k)` with `F2 * H * z^k = G1^2 - G2^2 * F1`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityWitness {
    pub g1: HomForm,
    pub g2: HomForm,
    pub h: HomForm,
    pub k: u32,
}

fn rational_sqrt(c: &Rational) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let (n, d) = (c.numer().sqrt(), c.denom().sqrt());
    let r = Rational::new(n, d);
    (&r * &r == *c).then_some(r)
}

/// Monomials of degree `d` in x, y, z, graded-lex descending.
fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn find_identity(f1: &HomForm, f2: &HomForm, phi: &Parametrization, dmax: u32) -> Result<IdentityWitness> {
    find_identity_with(Exec::default(), f1, f2, phi, dmax)
}

/// Searches `deg G2 = 0..=dmax` for a witness; the lowest degree wins.
pub fn find_identity_with(
    exec: Exec,
    f1: &HomForm,
    f2: &HomForm,
    phi: &Parametrization,
    dmax: u32,
) -> Result<IdentityWitness> {
    if !f1.degree().is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("deg F1 = {} is odd", f1.degree())));
    }
    phi.check_on(f2)?;
    let split = split_test(f1, phi)?;
    if !split.splits {
        return Err(Error::NoWitnessUpToBound(dmax));
    }
    let c = split.constant.expect("split has a constant");
    let root = rational_sqrt(&c).ok_or_else(|| Error::NonRationalSquareConstant(c.to_string()))?;
    let w = split.square_root.expect("split has a root").scale(&root);

    let attempt = |d2: usize| witness_in_degree(f1, f2, phi, &w, d2 as u32);
    let found = if exec.is_parallel() {
        par::map_range(exec, dmax as usize + 1, attempt).into_iter().flatten().next()
    } else {
        (0..=dmax as usize).find_map(attempt)
    };
    found.ok_or(Error::NoWitnessUpToBound(dmax))
}

fn witness_in_degree(
    f1: &HomForm,
    f2: &HomForm,
    phi: &Parametrization,
    w: &QPoly,
    d2: u32,
) -> Option<IdentityWitness> {
    let d1 = d2 + f1.degree() / 2;
    let (m1, m2) = (monomials(d1), monomials(d2));
    let e = d1 * phi.degree();
    let pull = |m: &[u32; 3]| {
        (0..3).fold(QPoly::one(Vars::Ts), |acc, i| &acc * &phi.forms()[i].pow(m[i]))
    };
    let mut columns: Vec<QPoly> = m1.iter().map(pull).collect();
    columns.extend(m2.iter().map(|m| -(&pull(m) * w)));
    let rows: linalg::Matrix = (0..=e)
        .map(|i| columns.iter().map(|col| col.coeff(&[i, e - i, 0])).collect())
        .collect();
    let assemble = |coeffs: &[Rational], mons: &[[u32; 3]]| {
        QPoly::from_terms(Vars::Xyz, mons.iter().copied().zip(coeffs.iter().cloned()))
    };
    for v in linalg::nullspace(&rows, columns.len()) {
        let v = primitive_vector(&v);
        let mut g1 = assemble(&v[..m1.len()], &m1);
        let mut g2 = assemble(&v[m1.len()..], &m2);
        if pullback_on_curve_poly(&g2, phi).is_zero() || !gcd_poly(&g1, &g2).is_constant() {
            continue;
        }
        if g1.lead_grlex().is_some_and(|(_, c)| c.is_negative()) {
            g1 = -g1;
        }
        if g2.lead_grlex().is_some_and(|(_, c)| c.is_negative()) {
            g2 = -g2;
        }
        let (Ok(g1), Ok(g2)) = (HomForm::new(g1), HomForm::new(g2)) else {
            continue;
        };
        if let Ok((h, k)) = verify_identity(f1, f2, &g1, &g2) {
            return Some(IdentityWitness { g1, g2, h, k });
        }
    }
    None
}

fn pullback_on_curve_poly(g: &QPoly, phi: &Parametrization) -> QPoly {
    g.substitute(phi.forms())
}

fn primitive_vector(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for c in v {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    let s = Rational::new(den, num);
    v.iter().map(|c| c * &s).collect()
}

/// Checks the identity and returns `(H, k)`: `G1^2 - G2^2 F1 = F2 H z^k`
/// with `k` maximal.
pub fn verify_identity(f1: &HomForm, f2: &HomForm, g1: &HomForm, g2: &HomForm) -> Result<(HomForm, u32)> {
    if f2.is_zero() {
        return Err(Error::InvalidInput("F2 is zero".into()));
    }
    let r = g1.poly().pow(2) - &g2.poly().pow(2) * f1.poly();
    if r.is_zero() {
        return Err(Error::NotDivisible("0".into()));
    }
    if !r.is_homogeneous() {
        return Err(Error::InvalidInput("G1^2 and G2^2*F1 have different degrees".into()));
    }
    let (kr, kf) = (r.order_in(2), f2.poly().order_in(2));
    let k = kr.saturating_sub(kf);
    let z = QPoly::var(Vars::Xyz, 2);
    let stripped = r.div_exact(&z.pow(k)).expect("z^k divides");
    let (q, rem) = stripped.div_rem(f2.poly()).expect("F2 nonzero");
    if !rem.is_zero() {
        return Err(Error::NotDivisible(rem.to_string()));
    }
    Ok((HomForm::new(q)?, k))
}

/// True iff `2(G1^2 + G2^2 F1)` and `G1^2 - G2^2 F1` are coprime.
pub fn no_cancellation_check(g1: &QPoly, g2: &QPoly, f1: &QPoly) -> bool {
    let a = g1.pow(2);
    let b = &g2.pow(2) * f1;
    let num = (&a + &b).scale(&Rational::from_integer(2.into()));
    let den = &a - &b;
    gcd_poly(&num, &den).is_constant() && !(num.is_zero() && den.is_zero())
}
