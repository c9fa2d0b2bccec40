//! Recursive gcd, subresultant resultants and square-free decomposition.
//!
//! A polynomial is viewed as univariate in one variable with coefficients in
//! the polynomial ring of the remaining ones; contents recurse on fewer
//! variables so everything terminates.

use super::poly::{Coeff, Poly};

type UPoly<F> = Vec<Poly<F>>;

fn trim<F: Coeff>(v: &mut UPoly<F>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn udeg<F: Coeff>(v: &UPoly<F>) -> usize {
    v.len() - 1
}

fn split<F: Coeff>(p: &Poly<F>, var: usize) -> UPoly<F> {
    let mut v = p.coeffs_in(var);
    trim(&mut v);
    v
}

fn join<F: Coeff>(like: &Poly<F>, var: usize, v: &UPoly<F>) -> Poly<F> {
    Poly::from_coeffs_in(like.vars(), var, v)
}

/// Pseudo-remainder of `a` by `b` (both nonzero, as coefficient lists).
fn prem<F: Coeff>(a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
    let db = udeg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    if r.len() <= db {
        return r;
    }
    let mut e = udeg(a) - db + 1;
    while !r.is_empty() && udeg(&r) >= db {
        let dr = udeg(&r);
        let t = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            let prod = &t * bc;
            r[j + shift] = &r[j + shift] - &prod;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn div_all<F: Coeff>(v: &UPoly<F>, d: &Poly<F>) -> UPoly<F> {
    v.iter()
        .map(|c| c.div_exact(d).expect("exact coefficient division"))
        .collect()
}

fn first_var<F: Coeff>(a: &Poly<F>, b: &Poly<F>) -> Option<usize> {
    (0..a.nvars()).find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
}

/// Gcd of the coefficients of `p` viewed in variable `var` (monic).
pub fn content_in<F: Coeff>(p: &Poly<F>, var: usize) -> Poly<F> {
    let mut g = Poly::zero(p.vars());
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one(p.vars());
        }
    }
    g
}

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd<F: Coeff>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.vars());
    }
    let var = first_var(a, b).expect("non-constant input");
    if a.degree_in(var) == 0 {
        return gcd(a, &content_in(b, var));
    }
    if b.degree_in(var) == 0 {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_gcd(&pa, &pb, var);
    (&c * &g).monic()
}

/// Gcd of two polynomials primitive in `var`, via the subresultant sequence.
fn primitive_gcd<F: Coeff>(a: &Poly<F>, b: &Poly<F>, var: usize) -> Poly<F> {
    let (mut ua, mut ub) = (split(a, var), split(b, var));
    if ua.len() < ub.len() {
        std::mem::swap(&mut ua, &mut ub);
    }
    let one = Poly::one(a.vars());
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = udeg(&ua) - udeg(&ub);
        let r = prem(&ua, &ub);
        if r.is_empty() {
            let last = join(a, var, &ub);
            let cont = content_in(&last, var);
            return last.div_exact(&cont).unwrap().monic();
        }
        if udeg(&r) == 0 {
            return one;
        }
        let denom = &g * &h.pow(delta as u32);
        ua = ub;
        ub = div_all(&r, &denom);
        g = ua[udeg(&ua)].clone();
        h = next_h(&h, &g, delta);
    }
}

fn next_h<F: Coeff>(h: &Poly<F>, g: &Poly<F>, delta: usize) -> Poly<F> {
    match delta {
        0 => h.clone(),
        1 => g.clone(),
        d => g
            .pow(d as u32)
            .div_exact(&h.pow(d as u32 - 1))
            .expect("subresultant h update is exact"),
    }
}

/// Sylvester resultant eliminating `var`. Returns `None` if either input is
/// zero; a constant (in `var`) input `a` of degree 0 gives `a^deg b`.
pub fn resultant<F: Coeff>(a: &Poly<F>, b: &Poly<F>, var: usize) -> Option<Poly<F>> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (da, db) = (a.degree_in(var), b.degree_in(var));
    if da == 0 {
        return Some(a.pow(db));
    }
    if db == 0 {
        return Some(b.pow(da));
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let t = &ca.pow(db) * &cb.pow(da);
    let mut ua = split(&a.div_exact(&ca).unwrap(), var);
    let mut ub = split(&b.div_exact(&cb).unwrap(), var);
    let one = Poly::one(a.vars());
    let mut sign_neg = false;
    if ua.len() < ub.len() {
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        std::mem::swap(&mut ua, &mut ub);
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let (dega, degb) = (udeg(&ua), udeg(&ub));
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&ua, &ub);
        if r.is_empty() {
            return Some(Poly::zero(a.vars()));
        }
        let denom = &g * &h.pow(delta as u32);
        ua = ub;
        ub = div_all(&r, &denom);
        g = ua[udeg(&ua)].clone();
        h = next_h(&h, &g, delta);
        if udeg(&ub) == 0 {
            let dega = udeg(&ua) as u32;
            // h <- h^(1 - deg A) * lc(B)^deg A
            let lb = ub[0].clone();
            let hh = if dega == 0 {
                &h * &Poly::one(a.vars())
            } else {
                lb.pow(dega)
                    .div_exact(&h.pow(dega - 1))
                    .expect("final subresultant step is exact")
            };
            let res = &t * &hh;
            return Some(if sign_neg { -res } else { res });
        }
    }
}

/// Square-free decomposition: pairwise coprime monic square-free factors with
/// distinct multiplicities, ascending. The input equals a unit times the
/// product of `factor^multiplicity`.
pub fn squarefree<F: Coeff>(p: &Poly<F>) -> Vec<(Poly<F>, u32)> {
    let mut parts: Vec<(Poly<F>, u32)> = Vec::new();
    collect_squarefree(p, &mut parts);
    let mut merged: Vec<(Poly<F>, u32)> = Vec::new();
    for (f, m) in parts {
        match merged.iter_mut().find(|(_, k)| *k == m) {
            Some(entry) => entry.0 = (&entry.0 * &f).monic(),
            None => merged.push((f.monic(), m)),
        }
    }
    merged.sort_by_key(|(_, m)| *m);
    merged
}

fn collect_squarefree<F: Coeff>(p: &Poly<F>, out: &mut Vec<(Poly<F>, u32)>) {
    if p.is_constant() {
        return;
    }
    let var = first_var(p, p).unwrap();
    let c = content_in(p, var);
    let pp = p.div_exact(&c).unwrap();
    yun(&pp, var, out);
    collect_squarefree(&c, out);
}

fn yun<F: Coeff>(a: &Poly<F>, var: usize, out: &mut Vec<(Poly<F>, u32)>) {
    let da = a.derivative(var);
    let b = gcd(a, &da);
    let mut c = a.div_exact(&b).unwrap();
    let mut d = da.div_exact(&b).unwrap() - c.derivative(var);
    let mut k = 1;
    while c.degree_in(var) > 0 {
        let g = gcd(&c, &d);
        if !g.is_constant() {
            out.push((g.clone(), k));
        }
        c = c.div_exact(&g).unwrap();
        d = d.div_exact(&g).unwrap() - c.derivative(var);
        k += 1;
    }
}

/// Product of the distinct irreducible factors (monic).
pub fn squarefree_part<F: Coeff>(p: &Poly<F>) -> Poly<F> {
    squarefree(p)
        .into_iter()
        .fold(Poly::one(p.vars()), |acc, (f, _)| &acc * &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::poly::{rat, QPoly, Vars};

    fn v(i: usize) -> QPoly {
        QPoly::var(Vars::Xyz, i)
    }

    #[test]
    fn gcd_examples() {
        let (x, y, z) = (v(0), v(1), v(2));
        let g = gcd(&(x.pow(2) - y.pow(2)), &(&x - &y));
        assert_eq!(g, &x - &y);
        assert!(gcd(&x, &y).is_constant());
        let s = &x + &y;
        let a = &s.pow(2) * &z;
        let b = &s * &z.pow(2);
        assert_eq!(gcd(&a, &b).normalize(), (&s * &z).normalize());
    }

    #[test]
    fn resultant_examples() {
        let (x, y) = (v(0), v(1));
        let one = QPoly::one(Vars::Xyz);
        let r = resultant(&(x.pow(2) + y.pow(2)), &(&x - &y), 0).unwrap();
        assert_eq!(r, y.pow(2).scale(&rat(2)));
        assert_eq!(resultant(&x, &y, 0).unwrap(), y);
        let r = resultant(&(&x - &one), &(&x + &one), 0).unwrap();
        assert_eq!(r, QPoly::constant(Vars::Xyz, rat(2)));
    }

    #[test]
    fn squarefree_examples() {
        let (x, y) = (v(0), v(1));
        let d = squarefree(&(&x.pow(2) * &y));
        assert_eq!(d, vec![(y.clone(), 1), (x.clone(), 2)]);
        let s = &x + &y;
        assert_eq!(squarefree(&s.pow(3)), vec![(s.clone(), 3)]);
        let q = x.pow(2) + y.pow(2);
        assert_eq!(squarefree(&q), vec![(q.clone(), 1)]);
    }
}
