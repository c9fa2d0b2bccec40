//! Factorization of binary and ternary forms over Q with a degree bound.
//!
//! Binary forms reduce to univariate factorization. Ternary forms are put in
//! general position, dehomogenized, and factored by lifting a univariate
//! factorization over Q[[v]] followed by subset recombination.

use num_traits::{One, Zero};

use super::gcd::squarefree;
use super::poly::{QPoly, Rational, Vars};
use super::univariate::{combinations, UniPoly};
use super::HomForm;

/// `p = unit * prod f^m` over `factors` and `residual`. Every entry of
/// `factors` is irreducible of degree at most the bound; `residual` entries
/// are square-free products whose irreducible factors all exceed the bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(HomForm, u32)>,
    pub residual: Vec<(HomForm, u32)>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.residual.is_empty()
    }

    /// Recombines the product, including the unit.
    pub fn expand(&self) -> QPoly {
        let vars = self
            .factors
            .iter()
            .chain(&self.residual)
            .map(|(f, _)| f.vars())
            .next()
            .unwrap_or(Vars::Xyz);
        let mut acc = QPoly::constant(vars, self.unit.clone());
        for (f, m) in self.factors.iter().chain(&self.residual) {
            acc = &acc * &f.poly().pow(*m);
        }
        acc
    }
}

/// Factors a nonzero form into irreducibles of degree at most `dmax`.
pub fn factor_bounded(p: &HomForm, dmax: u32) -> crate::error::Result<Factorization> {
    if p.is_zero() {
        return Err(crate::error::Error::InvalidInput("cannot factor the zero form".into()));
    }
    let mut factors = Vec::new();
    let mut residual = Vec::new();
    for (part, m) in squarefree(p.poly()) {
        if part.is_constant() {
            continue;
        }
        let (irr, rest) = if part.nvars() == 2 {
            split_binary(&part, dmax)
        } else {
            split_ternary(&part, dmax)
        };
        factors.extend(irr.into_iter().map(|f| (form(f), m)));
        if let Some(r) = rest {
            residual.push((form(r), m));
        }
    }
    let key = |f: &(HomForm, u32)| (f.0.degree(), f.0.to_string(), f.1);
    factors.sort_by_key(key);
    residual.sort_by_key(key);
    let mut result = Factorization { unit: Rational::one(), factors, residual };
    let expanded = result.expand();
    let (m, c) = p.poly().lead_lex().expect("nonzero");
    result.unit = c / expanded.coeff(m);
    Ok(result)
}

/// Complete factorization of a nonzero binary form of any degree:
/// normalized irreducible factors with multiplicities, sorted.
pub fn factor_binary(p: &QPoly) -> Vec<(QPoly, u32)> {
    assert_eq!(p.nvars(), 2, "binary form expected");
    let mut out = Vec::new();
    for (part, m) in squarefree(p) {
        if part.is_constant() {
            continue;
        }
        let (irr, _) = split_binary(&part, u32::MAX);
        out.extend(irr.into_iter().map(|f| (f.normalize(), m)));
    }
    out.sort_by_key(|(f, m)| (f.total_degree(), f.to_string(), *m));
    out
}

fn form(p: QPoly) -> HomForm {
    HomForm::new(p.normalize()).expect("factor of a form is a form")
}

/// Square-free binary form: irreducible factors of degree <= dmax and the
/// product of the rest.
fn split_binary(p: &QPoly, dmax: u32) -> (Vec<QPoly>, Option<QPoly>) {
    let vars = p.vars();
    let deg = p.total_degree().unwrap();
    let k = p.order_in(1);
    let mut out = Vec::new();
    if k > 0 {
        out.push(QPoly::var(vars, 1));
    }
    let stripped = p
        .div_exact(&QPoly::var(vars, 1).pow(k))
        .expect("power of last variable divides");
    let uni = UniPoly::from_poly(&stripped.dehomogenize_last(vars), 0);
    let mut rest = QPoly::one(vars);
    for (f, _) in uni.factor() {
        let h = f.to_poly(vars, 0).homogenize(vars, f.degree() as u32);
        if f.degree() as u32 <= dmax {
            out.push(h);
        } else {
            rest = &rest * &h;
        }
    }
    debug_assert!(deg >= k);
    (out, (!rest.is_constant()).then_some(rest))
}

/// Small shifts tried in order: 0, 1, -1, 2, -2, ...
fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 })
}

fn split_ternary(p: &QPoly, dmax: u32) -> (Vec<QPoly>, Option<QPoly>) {
    let deg = p.total_degree().unwrap();
    if deg <= 1 {
        return (vec![p.clone()], None);
    }
    // General position: the coefficient of x^deg must be nonzero.
    let (a, b) = shifts()
        .take(64)
        .flat_map(|a| shifts().take(64).map(move |b| (a, b)))
        .find(|&(a, b)| !p.eval(&[Rational::one(), Rational::from_integer(a.into()), Rational::from_integer(b.into())]).is_zero())
        .expect("a nonzero form has a nonzero value on small points");
    let ra = Rational::from_integer(a.into());
    let rb = Rational::from_integer(b.into());
    let x = QPoly::var(Vars::Xyz, 0);
    let y = QPoly::var(Vars::Xyz, 1);
    let z = QPoly::var(Vars::Xyz, 2);
    let forward = [x.clone(), &y + &x.scale(&ra), &z + &x.scale(&rb)];
    let back = [x.clone(), &y - &x.scale(&ra), &z - &x.scale(&rb)];
    let moved = p.substitute(&forward);
    let g = moved.dehomogenize_last(Vars::Uv).monic_in(0, deg);

    let (factors, rest) = split_bivariate(&g, deg, dmax);
    let lift = |f: QPoly| {
        let d = f.total_degree().unwrap();
        f.homogenize(Vars::Xyz, d).substitute(&back)
    };
    (factors.into_iter().map(lift).collect(), rest.map(lift))
}

trait MonicIn {
    fn monic_in(&self, var: usize, deg: u32) -> Self;
}

impl MonicIn for QPoly {
    fn monic_in(&self, var: usize, deg: u32) -> QPoly {
        let mut m = [0; 3];
        m[var] = deg;
        let c = self.coeff(&m);
        self.scale(&(Rational::one() / c))
    }
}

type Series = Vec<UniPoly>;

fn series_of(p: &QPoly) -> Series {
    p.coeffs_in(1).iter().map(|c| UniPoly::from_poly(c, 0)).collect()
}

fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    let mut out = vec![UniPoly::zero(); prec.min(a.len() + b.len() - 1)];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
    }
    out
}

fn series_to_poly(s: &Series) -> QPoly {
    let coeffs: Vec<QPoly> = s.iter().map(|c| c.to_poly(Vars::Uv, 0)).collect();
    QPoly::from_coeffs_in(Vars::Uv, 1, &coeffs)
}

/// `g(u, v)` square-free with `u^deg` coefficient 1 and total degree `deg`.
fn split_bivariate(g: &QPoly, deg: u32, dmax: u32) -> (Vec<QPoly>, Option<QPoly>) {
    let u = QPoly::var(Vars::Uv, 0);
    let v = QPoly::var(Vars::Uv, 1);
    // Shift v so that the fiber v = 0 stays square-free.
    let c = shifts()
        .take(256)
        .map(|c| Rational::from_integer(c.into()))
        .find(|c| {
            let h = UniPoly::from_poly(&g.specialize(1, c), 0);
            h.degree() as u32 == deg && h.gcd(&h.derivative()).degree() == 0
        })
        .expect("a square-free form has a square-free fiber");
    let h = g.substitute(&[u.clone(), &v + &QPoly::constant(Vars::Uv, c.clone())]);
    let unshift = |f: QPoly| f.substitute(&[u.clone(), &v - &QPoly::constant(Vars::Uv, c.clone())]);

    let h0 = UniPoly::from_poly(&h.specialize(1, &Rational::zero()), 0);
    let base: Vec<UniPoly> = h0.factor().into_iter().map(|(f, _)| f.monic()).collect();
    if base.len() == 1 {
        return if deg <= dmax { (vec![g.clone()], None) } else { (vec![], Some(g.clone())) };
    }

    let prec = h.degree_in(1) as usize + 1;
    let target = series_of(&h);
    let mut lifted: Vec<Series> = base.iter().map(|f| vec![f.clone()]).collect();
    let inverses: Vec<UniPoly> = (0..base.len())
        .map(|i| {
            let cof = base
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(UniPoly::one(), |acc, (_, f)| acc.mul(f));
            let (g1, s, _) = cof.rem(&base[i]).ext_gcd(&base[i]);
            debug_assert_eq!(g1, UniPoly::one());
            s
        })
        .collect();
    for k in 1..prec {
        let prod = lifted
            .iter()
            .skip(1)
            .fold(lifted[0].clone(), |acc, f| series_mul(&acc, f, k + 1));
        let have = prod.get(k).cloned().unwrap_or_else(UniPoly::zero);
        let err = target.get(k).cloned().unwrap_or_else(UniPoly::zero).sub(&have);
        for (i, f) in lifted.iter_mut().enumerate() {
            f.push(err.mul(&inverses[i]).rem(&base[i]));
        }
    }

    let mut remaining: Vec<usize> = (0..base.len()).collect();
    let mut rest = h.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while size < remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), size) {
            let idx: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
            let d: usize = idx.iter().map(|&i| base[i].degree()).sum();
            if d as u32 > dmax {
                continue;
            }
            let cand = idx
                .iter()
                .skip(1)
                .fold(lifted[idx[0]].clone(), |acc, &i| series_mul(&acc, &lifted[i], prec));
            let cand = series_to_poly(&cand);
            if let Some(q) = rest.div_exact(&cand) {
                hit = Some((idx, cand, q));
                break;
            }
        }
        match hit {
            Some((idx, cand, q)) => {
                found.push(unshift(cand));
                rest = q;
                remaining.retain(|i| !idx.contains(i));
            }
            None => size += 1,
        }
    }
    let rest_deg = rest.total_degree().unwrap_or(0);
    if rest_deg == 0 {
        (found, None)
    } else if rest_deg <= dmax {
        found.push(unshift(rest));
        (found, None)
    } else {
        (found, Some(unshift(rest)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HomForm {
        HomForm::parse(s).unwrap()
    }

    fn strs(fs: &[(HomForm, u32)]) -> Vec<(String, u32)> {
        fs.iter().map(|(f, m)| (f.to_string(), *m)).collect()
    }

    #[test]
    fn difference_of_squares() {
        let r = factor_bounded(&f("x^2 - y^2"), 2).unwrap();
        assert_eq!(strs(&r.factors), vec![("x + y".into(), 1), ("x - y".into(), 1)]);
        assert!(r.is_complete());
    }

    #[test]
    fn irreducible_conic_stays() {
        let r = factor_bounded(&f("x^2 + y^2 - z^2"), 2).unwrap();
        assert_eq!(strs(&r.factors), vec![("x^2 + y^2 - z^2".into(), 1)]);
        let r = factor_bounded(&f("x^2 + y^2"), 2).unwrap();
        assert_eq!(r.factors.len(), 1);
    }

    #[test]
    fn multiplicities_and_unit() {
        let q = HomForm::new(
            f("z").poly().pow(2).scale(&Rational::from_integer(2.into())) * f("x^2 + y^2 - z^2").into_poly(),
        )
        .unwrap();
        let r = factor_bounded(&q, 2).unwrap();
        assert_eq!(strs(&r.factors), vec![("z".into(), 2), ("x^2 + y^2 - z^2".into(), 1)]);
        assert_eq!(r.unit, Rational::from_integer(2.into()));
        assert_eq!(r.expand(), *q.poly());
    }

    #[test]
    fn product_of_lines_and_conic() {
        let prod = &(&(f("x - 2*y + z").poly() * f("x + y").poly()) * f("y^2 - x*z").poly()) * f("z").poly();
        let q = HomForm::new(prod).unwrap();
        let r = factor_bounded(&q, 4).unwrap();
        assert_eq!(r.factors.len(), 4);
        assert_eq!(r.expand(), *q.poly());
    }

    #[test]
    fn bound_produces_residual() {
        let q = HomForm::new(f("x^3 + y^3 + z^3").poly() * f("x - z").poly()).unwrap();
        let r = factor_bounded(&q, 2).unwrap();
        assert_eq!(strs(&r.factors), vec![("x - z".into(), 1)]);
        assert_eq!(r.residual.len(), 1);
        assert_eq!(r.expand(), *q.poly());
    }

    #[test]
    fn reducible_only_over_q_bar_stays_whole() {
        // Product of two conjugate lines over Q(i).
        let r = factor_bounded(&f("x^2 + y^2"), 1).unwrap();
        assert!(r.factors.is_empty());
        assert_eq!(r.residual.len(), 1);
    }
}
