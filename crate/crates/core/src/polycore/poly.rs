//! Sparse polynomials in up to three variables over an exact field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Exponent vector; unused trailing slots stay zero.
pub type Monomial = [u32; 3];

/// Field elements usable as coefficients.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Send
        + Sync
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// Variable family of a polynomial. Determines the arity and printed names.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Vars {
    /// Projective plane coordinates.
    Xyz,
    /// Affine chart coordinates.
    Uv,
    /// Parameter coordinates of a binary form.
    Ts,
    /// A single parameter.
    T,
}

impl Vars {
    pub fn nvars(self) -> usize {
        match self {
            Vars::Xyz => 3,
            Vars::Uv | Vars::Ts => 2,
            Vars::T => 1,
        }
    }

    pub fn names(self) -> &'static [&'static str] {
        match self {
            Vars::Xyz => &["x", "y", "z"],
            Vars::Uv => &["u", "v"],
            Vars::Ts => &["t", "s"],
            Vars::T => &["t"],
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    vars: Vars,
    terms: BTreeMap<Monomial, F>,
}

pub type QPoly = Poly<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn mono_deg(m: &Monomial) -> u32 {
    m[0] + m[1] + m[2]
}

/// Graded-lex comparison key, first variable highest.
fn grlex_key(m: &Monomial) -> (u32, u32, u32, u32) {
    (mono_deg(m), m[0], m[1], m[2])
}

fn mono_divides(a: &Monomial, b: &Monomial) -> bool {
    (0..3).all(|i| a[i] <= b[i])
}

impl<F: Coeff> Poly<F> {
    pub fn zero(vars: Vars) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn constant(vars: Vars, c: F) -> Self {
        Self::monomial(vars, [0, 0, 0], c)
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        Self::monomial(vars, m, F::one())
    }

    pub fn monomial(vars: Vars, m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { vars, terms }
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.nvars()
    }

    pub fn with_vars(mut self, vars: Vars) -> Self {
        self.vars = vars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == [0, 0, 0])
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.is_zero() {
            return Some(F::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_deg).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Lowest exponent of variable `i` over all terms.
    pub fn order_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).min().unwrap_or(0)
    }

    /// Lowest total degree of a term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(mono_deg).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(mono_deg);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| mono_deg(m) == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Leading term under pure lex order (first variable highest).
    pub fn lead_lex(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Leading term under graded lex order.
    pub fn lead_grlex(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by_key(|(m, _)| grlex_key(m))
    }

    /// Terms sorted by descending graded lex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| std::cmp::Reverse(grlex_key(m)));
        v
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        Poly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| ([k[0] + m[0], k[1] + m[1], k[2] + m[2]], a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Divides by the lex-leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_lex() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = F::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.vars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut k = *m;
            k[i] -= 1;
            let mut factor = F::zero();
            for _ in 0..m[i] {
                factor = factor + F::one();
            }
            p.add_term(k, c.clone() * factor);
        }
        p
    }

    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.iter().enumerate().take(self.nvars()) {
                for _ in 0..*e {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Replaces variable `i` by the constant `value`, keeping the variable family.
    pub fn specialize(&self, i: usize, value: &F) -> Self {
        let mut p = Self::zero(self.vars);
        let mut powers: Vec<F> = vec![F::one()];
        for (m, c) in &self.terms {
            while powers.len() <= m[i] as usize {
                let next = powers.last().unwrap().clone() * value.clone();
                powers.push(next);
            }
            let mut k = *m;
            k[i] = 0;
            p.add_term(k, c.clone() * powers[m[i] as usize].clone());
        }
        p
    }

    /// Substitutes variable `i` of `self` by `images[i]`. The result lives in
    /// the ring of the images.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images[0].vars;
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::one(p.vars)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for i in 0..self.nvars() {
                let e = m[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out = out + t;
        }
        out
    }

    /// Coefficients with respect to variable `i`, lowest power first. The
    /// coefficients stay in the same ring with exponent zero in `i`.
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly<F>> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let mut k = *m;
            let e = k[i] as usize;
            k[i] = 0;
            out[e].add_term(k, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: Vars, i: usize, coeffs: &[Poly<F>]) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut k = *m;
                k[i] += e as u32;
                p.add_term(k, a.clone());
            }
        }
        p
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly<F>) -> Option<Poly<F>> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Multivariate division by a single polynomial under lex order. The
    /// remainder is the unique normal form modulo the principal ideal.
    /// Returns `None` when `d` is zero.
    pub fn div_rem(&self, d: &Poly<F>) -> Option<(Poly<F>, Poly<F>)> {
        let (dm, dc) = d.lead_lex()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut q = Poly::zero(self.vars);
        let mut r = Poly::zero(self.vars);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if mono_divides(&dm, &m) {
                let k = [m[0] - dm[0], m[1] - dm[1], m[2] - dm[2]];
                let f = c / dc.clone();
                q.add_term(k, f.clone());
                p = p - d.mul_monomial(&k, &f);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Some((q, r))
    }

    pub fn map_coeffs<G: Coeff>(&self, vars: Vars, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut p = Poly::zero(vars);
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    /// Sets the last variable to one.
    pub fn dehomogenize_last(&self, vars: Vars) -> Poly<F> {
        let n = self.nvars();
        let mut p = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut k = *m;
            k[n - 1] = 0;
            p.add_term(k, c.clone());
        }
        p
    }

    /// Homogenizes to `degree` using a new last variable.
    pub fn homogenize(&self, vars: Vars, degree: u32) -> Poly<F> {
        let n = vars.nvars();
        let mut p = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut k = *m;
            k[n - 1] = degree - mono_deg(m);
            p.add_term(k, c.clone());
        }
        p
    }
}

impl QPoly {
    /// Rational multiple with integer coprime coefficients and positive
    /// graded-lex leading coefficient.
    pub fn normalize(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut factor = Rational::new(den, num);
        if self.lead_grlex().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Multiplier that turns all coefficients into integers with gcd one.
    pub fn integer_coefficients(&self) -> Vec<(Monomial, BigInt)> {
        self.normalize()
            .terms
            .into_iter()
            .map(|(m, c)| (m, c.to_integer()))
            .collect()
    }

    /// Exact equality up to a nonzero rational factor.
    pub fn proportional(&self, other: &QPoly) -> bool {
        self.normalize() == other.normalize()
    }
}

impl<'a, F: Coeff> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl<F: Coeff> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(mut self, rhs: Poly<F>) -> Poly<F> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a, F: Coeff> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl<F: Coeff> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(mut self, rhs: Poly<F>) -> Poly<F> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a, F: Coeff> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        let mut p = Poly::zero(self.vars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                p.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca.clone() * cb.clone());
            }
        }
        p
    }
}

impl<F: Coeff> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Coeff> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Coeff> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -self.clone()
    }
}

/// How a coefficient renders inside a polynomial string.
pub trait CoeffDisplay {
    /// Returns (is_negative, magnitude text, magnitude is one).
    fn render(&self) -> (bool, String, bool);
}

impl CoeffDisplay for Rational {
    fn render(&self) -> (bool, String, bool) {
        let neg = self.is_negative();
        let a = self.abs();
        let one = a.is_one();
        let text = if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        };
        (neg, text, one)
    }
}

impl<F: Coeff + CoeffDisplay> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, text, one) = c.render();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !one || *m == [0, 0, 0] {
                factors.push(text);
            }
            for (i, e) in m.iter().enumerate().take(self.nvars()) {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
