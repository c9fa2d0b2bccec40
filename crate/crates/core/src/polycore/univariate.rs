//! Dense univariate polynomials over Q and their factorization.
//!
//! Factoring follows Zassenhaus: Berlekamp over a small prime, linear Hensel
//! lifting of all modular factors at once, then subset recombination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{QPoly, Rational, Vars};

/// Coefficients lowest power first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&a| Rational::from_integer(a.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0 as well, check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Rational::one() / self.lc();
        self.scale(&inv)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.lc();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * b;
                }
            }
            q[i] = c;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rational::one() / r0.lc();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Converts from a polynomial that only involves variable `var`.
    pub fn from_poly(p: &QPoly, var: usize) -> Self {
        let d = p.degree_in(var) as usize;
        let mut c = vec![Rational::zero(); d + 1];
        for (m, a) in p.terms() {
            c[m[var] as usize] += a;
        }
        Self::new(c)
    }

    /// Embeds as a polynomial in variable `var` of the given family.
    pub fn to_poly(&self, vars: Vars, var: usize) -> QPoly {
        let mut p = QPoly::zero(vars);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut m = [0; 3];
            m[var] = i as u32;
            p.add_term(m, c.clone());
        }
        p
    }

    /// Integer coprime coefficients with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let ints = to_primitive_ints(self);
        Self::new(ints.into_iter().map(Rational::from_integer).collect())
    }

    /// Square-free decomposition (Yun), factors monic, multiplicities ascending.
    pub fn squarefree(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let a = self.monic();
        let da = a.derivative();
        let b = a.gcd(&da);
        let mut c = a.div_exact(&b).unwrap();
        let mut d = da.div_exact(&b).unwrap().sub(&c.derivative());
        let mut k = 1;
        while c.degree() > 0 {
            let g = c.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), k));
            }
            c = c.div_exact(&g).unwrap();
            d = d.div_exact(&g).unwrap().sub(&c.derivative());
            k += 1;
        }
        out
    }

    /// Complete factorization over Q into primitive integer irreducibles with
    /// multiplicities, sorted by (degree, coefficients).
    pub fn factor(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        for (part, m) in self.squarefree() {
            let ints = to_primitive_ints(&part);
            for f in factor_squarefree_int(&ints) {
                out.push((
                    UniPoly::new(f.into_iter().map(Rational::from_integer).collect()),
                    m,
                ));
            }
        }
        out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn is_irreducible(&self) -> bool {
        if self.degree() == 0 {
            return false;
        }
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots: Vec<Rational> = self
            .factor()
            .into_iter()
            .filter(|(f, _)| f.degree() == 1)
            .map(|(f, _)| -f.coeff(0) / f.coeff(1))
            .collect();
        roots.sort();
        roots
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(Vars::T, 0))
    }
}

fn to_primitive_ints(p: &UniPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in &p.coeffs {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a small prime.

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    fp_trim(c)
}

fn fp_divrem(a: &Fp, d: &Fp, p: u64) -> (Fp, Fp) {
    if a.len() < d.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let dd = d.len() - 1;
    let inv = fp_inv(*d.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd] * inv % p;
        if c != 0 {
            for (j, b) in d.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * b % p) % p;
            }
        }
        q[i] = c;
    }
    (fp_trim(q), fp_trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Inverse of `a` modulo `m` (coprime), reduced.
fn fp_inv_mod(a: &Fp, m: &Fp, p: u64) -> Fp {
    let (mut r0, mut r1) = (m.clone(), fp_divrem(a, m, p).1);
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 is a nonzero constant
    let inv = fp_inv(r0[0], p);
    fp_trim(t0.iter().map(|c| c * inv % p).collect())
}

fn fp_deriv(a: &Fp, p: u64) -> Fp {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    r
}

fn reduce_mod(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Null space basis of an `n x n` matrix over F_p.
fn fp_nullspace(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = fp_inv(m[row][col], p);
        for c in 0..cols {
            m[row][c] = m[row][c] * inv % p;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..cols {
                    m[r][c] = (m[r][c] + p - f * m[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// Berlekamp factorization of a monic square-free polynomial over F_p.
fn berlekamp(f: &Fp, p: u64) -> Vec<Fp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let xp = fp_powmod(&vec![0, 1], p, f, p);
    let mut rows: Vec<Fp> = vec![vec![1]];
    for i in 1..n {
        let next = fp_divrem(&fp_mul(&rows[i - 1], &xp, p), f, p).1;
        rows.push(next);
    }
    // (Q^T - I) v = 0
    let mut m = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            m[j][i] = row.get(j).copied().unwrap_or(0);
        }
    }
    for i in 0..n {
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    let basis = fp_nullspace(m, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let v = fp_trim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        for s in 0..p {
            if factors.len() == r {
                break;
            }
            let mut shifted = v.clone();
            shifted[0] = (shifted[0] + p - s) % p;
            let mut next = Vec::new();
            for h in factors.drain(..) {
                if h.len() <= 2 {
                    next.push(h);
                    continue;
                }
                let g = fp_gcd(&h, &shifted, p);
                if g.len() > 1 && g.len() < h.len() {
                    let q = fp_monic(&fp_divrem(&h, &g, p).0, p);
                    next.push(g);
                    next.push(q);
                } else {
                    next.push(h);
                }
            }
            factors = next;
        }
    }
    factors
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..2000).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Exact division over Z, `None` if not exact.
fn int_div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < d.len() {
        return if a.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let lc = d.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dd].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, b) in d.iter().enumerate() {
                r[i + j] -= &c * b;
            }
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

fn int_primitive(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    let g = f.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() {
        for c in f.iter_mut() {
            *c = &*c / &g;
        }
    }
    if f.last().is_some_and(|c| c.is_negative()) {
        for c in f.iter_mut() {
            *c = -&*c;
        }
    }
    f
}

/// Factors a primitive square-free integer polynomial with positive leading
/// coefficient into irreducibles over Z.
fn factor_squarefree_int(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // pick the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod(f, p);
        let g = fp_gcd(&fp, &fp_deriv(&fp, p), p);
        if g.len() != 1 {
            continue;
        }
        let facs = berlekamp(&fp_monic(&fp, p), p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps the polynomial square-free");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // coefficient bound for factors times lc
    let max_c = f.iter().map(|c| c.abs()).max().unwrap();
    let norm = (max_c * BigInt::from(n as u64 + 1).sqrt()) + 1u32;
    let bound = lc.abs() * (BigInt::one() << n) * norm * 2u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    let mut steps = 1u32;
    while pk <= bound {
        pk *= &pb;
        steps += 1;
    }
    let lifted = hensel_lift(f, &modular, p, steps);
    recombine(f, lifted, &pk)
}

/// Multi-factor linear Hensel lifting: returns monic integer lifts modulo
/// `p^steps` with `f = lc * prod(lifts)` modulo that power.
fn hensel_lift(f: &[BigInt], modular: &[Fp], p: u64, steps: u32) -> Vec<Vec<BigInt>> {
    let r = modular.len();
    let n = f.len() - 1;
    let lc = &f[n];
    let lc_inv = fp_inv(lc.mod_floor(&BigInt::from(p)).to_u64().unwrap(), p);
    // s_i = (prod_{j != i} u_j)^{-1} mod u_i
    let cofactor_inv: Vec<Fp> = (0..r)
        .map(|i| {
            let mut prod: Fp = vec![1];
            for (j, u) in modular.iter().enumerate() {
                if j != i {
                    prod = fp_divrem(&fp_mul(&prod, u, p), &modular[i], p).1;
                }
            }
            fp_inv_mod(&prod, &modular[i], p)
        })
        .collect();
    let mut lifts: Vec<Vec<BigInt>> = modular
        .iter()
        .map(|u| u.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    for _ in 1..steps {
        let mut prod = vec![lc.clone()];
        for u in &lifts {
            prod = int_poly_mul(&prod, u);
        }
        let e: Vec<BigInt> = (0..=n)
            .map(|i| &f[i] - prod.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let ek: Fp = fp_trim(
            e.iter()
                .map(|c| {
                    debug_assert!((c % &pk).is_zero());
                    (c / &pk).mod_floor(&pb).to_u64().unwrap() * lc_inv % p
                })
                .collect(),
        );
        if !ek.is_empty() {
            for i in 0..r {
                let delta = fp_divrem(&fp_mul(&ek, &cofactor_inv[i], p), &modular[i], p).1;
                for (k, d) in delta.iter().enumerate() {
                    lifts[i][k] += &pk * BigInt::from(*d);
                }
            }
        }
        pk *= &pb;
    }
    lifts
}

fn recombine(f: &[BigInt], lifts: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining: Vec<Vec<BigInt>> = lifts;
    let mut current = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = current.last().unwrap().clone();
        for combo in combinations(remaining.len(), size) {
            let mut g = vec![lc.clone()];
            for &i in &combo {
                g = int_poly_mul(&g, &remaining[i]);
                for c in g.iter_mut() {
                    *c = symmetric_mod(c, pk);
                }
            }
            let g = int_primitive(g);
            if let Some(q) = int_div_exact(&current, &g) {
                found.push(g);
                current = int_primitive(q);
                let mut k = 0;
                remaining.retain(|_| {
                    let keep = !combo.contains(&k);
                    k += 1;
                    keep
                });
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.len() > 1 {
        found.push(current);
    }
    found
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
