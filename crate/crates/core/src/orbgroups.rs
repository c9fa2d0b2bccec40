//! Orbifold fundamental groups `F_{n;(n_1..n_r)}` and their dihedral
//! quotients.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Largest dihedral target order accepted by the enumeration.
pub const MAX_TARGET_ORDER: u32 = 200;
/// Largest number of generator-image tuples enumerated.
pub const MAX_TUPLES: u64 = 50_000_000;

fn check_weights(weights: &[u32]) -> Result<()> {
    match weights.iter().find(|&&w| w < 2) {
        Some(w) => Err(Error::InvalidInput(format!("weight {w} < 2; drop it before building the group"))),
        None => Ok(()),
    }
}

/// `<x_1..x_n, y_1..y_r | y_i^{n_i}, x_1...x_n y_1...y_r>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub punctures: u32,
    pub weights: Vec<u32>,
    pub generators: Vec<String>,
    /// Each relator is a word of `(generator index, exponent)` letters.
    pub relators: Vec<Vec<(usize, u32)>>,
}

pub fn presentation(n: u32, weights: &[u32]) -> Result<GroupPresentation> {
    check_weights(weights)?;
    let n_us = n as usize;
    let mut generators: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    generators.extend((1..=weights.len()).map(|i| format!("y{i}")));
    let mut relators: Vec<Vec<(usize, u32)>> =
        weights.iter().enumerate().map(|(i, &w)| vec![(n_us + i, w)]).collect();
    relators.push((0..generators.len()).map(|g| (g, 1)).collect());
    Ok(GroupPresentation { punctures: n, weights: weights.to_vec(), generators, relators })
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &Vec<(usize, u32)>| -> String {
            if w.is_empty() {
                return "1".into();
            }
            w.iter()
                .map(|&(g, e)| {
                    if e == 1 {
                        self.generators[g].clone()
                    } else {
                        format!("{}^{e}", self.generators[g])
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        let rels: Vec<String> = self.relators.iter().map(word).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// Replaces each weight by the given divisor and drops the resulting 1s.
pub fn reduce(weights: &[u32], divisors: &[u32]) -> Result<Vec<u32>> {
    if weights.len() != divisors.len() {
        return Err(Error::InvalidInput("one divisor per weight".into()));
    }
    let mut out = Vec::new();
    for (&w, &d) in weights.iter().zip(divisors) {
        if d == 0 || w % d != 0 {
            return Err(Error::InvalidInput(format!("{d} does not divide {w}")));
        }
        if d > 1 {
            out.push(d);
        }
    }
    Ok(out)
}

/// Divisors turning `weights` into the multiset `target` under [`reduce`],
/// if any exist.
pub fn reduction_to(weights: &[u32], target: &[u32]) -> Option<Vec<u32>> {
    fn go(weights: &[u32], target: &[u32], used: &mut Vec<bool>, out: &mut Vec<u32>) -> bool {
        let Some((&t, rest)) = target.split_first() else {
            return true;
        };
        for i in 0..weights.len() {
            if !used[i] && weights[i].is_multiple_of(t) {
                used[i] = true;
                out[i] = t;
                if go(weights, rest, used, out) {
                    return true;
                }
                used[i] = false;
                out[i] = 1;
            }
        }
        false
    }
    if target.iter().any(|&t| t < 2) {
        return None;
    }
    let mut used = vec![false; weights.len()];
    let mut out = vec![1; weights.len()];
    go(weights, target, &mut used, &mut out).then_some(out)
}

/// `F_{free_rank} * Z/w_1 * ... * Z/w_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub free_rank: u32,
    pub finite_cyclic_factors: Vec<u32>,
}

pub fn normal_form(n: u32, weights: &[u32]) -> Result<NormalForm> {
    check_weights(weights)?;
    if n == 0 {
        return Err(Error::InvalidInput("no free-product normal form without punctures".into()));
    }
    let mut factors = weights.to_vec();
    factors.sort_unstable();
    Ok(NormalForm { free_rank: n - 1, finite_cyclic_factors: factors })
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("F{}", self.free_rank));
        }
        parts.extend(self.finite_cyclic_factors.iter().map(|w| format!("Z{w}")));
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGroup {
    /// Dihedral group of the given order.
    DihedralFinite(u32),
    Triangle(u32, u32, u32),
    FreeProduct { free_rank: u32, factors: Vec<u32> },
    InfiniteDihedral,
    Trivial,
    Cyclic(u32),
    Unrecognized,
}

impl fmt::Display for NamedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGroup::DihedralFinite(o) => write!(f, "D{o}"),
            NamedGroup::Triangle(p, q, r) => write!(f, "T({p},{q},{r})"),
            NamedGroup::FreeProduct { free_rank, factors } => write!(
                f,
                "{}",
                NormalForm { free_rank: *free_rank, finite_cyclic_factors: factors.clone() }
            ),
            NamedGroup::InfiniteDihedral => write!(f, "D_inf"),
            NamedGroup::Trivial => write!(f, "1"),
            NamedGroup::Cyclic(m) => write!(f, "Z{m}"),
            NamedGroup::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

pub fn identify(n: u32, weights: &[u32]) -> NamedGroup {
    if check_weights(weights).is_err() {
        return NamedGroup::Unrecognized;
    }
    let mut w = weights.to_vec();
    w.sort_unstable();
    match (n, w.as_slice()) {
        (0, []) | (0, [_]) | (1, []) => NamedGroup::Trivial,
        (0, &[a, b]) => match a.gcd(&b) {
            1 => NamedGroup::Trivial,
            g => NamedGroup::Cyclic(g),
        },
        (0, &[2, 2, m]) => NamedGroup::DihedralFinite(2 * m),
        (0, &[p, q, r]) => NamedGroup::Triangle(p, q, r),
        (1, [2, 2]) => NamedGroup::InfiniteDihedral,
        (1, &[m]) => NamedGroup::Cyclic(m),
        (0, _) => NamedGroup::Unrecognized,
        _ => NamedGroup::FreeProduct { free_rank: n - 1, factors: w },
    }
}

/// Whether the group maps onto `Z2 * Z2`; decided from the normal form.
pub fn surjects_onto_infinite_dihedral(n: u32, weights: &[u32]) -> Result<bool> {
    if n == 0 {
        return Err(Error::NotDecidableByRule);
    }
    let nf = normal_form(n, weights)?;
    let even = nf.finite_cyclic_factors.iter().filter(|&&w| w % 2 == 0).count() as u32;
    Ok(nf.free_rank + even >= 2)
}

/// Dihedral group of order `2m`: element `(a, e)` is `rho^a sigma^e`.
#[derive(Clone, Debug)]
pub struct Dihedral {
    m: u32,
    table: Vec<Vec<u16>>,
}

impl Dihedral {
    pub fn new(order: u32) -> Result<Self> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("dihedral order {order} must be even and >= 2")));
        }
        if order > MAX_TARGET_ORDER {
            return Err(Error::EnumerationTooLarge(format!("target order {order} > {MAX_TARGET_ORDER}")));
        }
        let m = order / 2;
        let size = order as usize;
        let table = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        let (a, e) = (i as u32 % m, i as u32 / m);
                        let (b, f) = (j as u32 % m, j as u32 / m);
                        let rot = if e == 0 { (a + b) % m } else { (a + m - b) % m };
                        (rot + m * ((e + f) % 2)) as u16
                    })
                    .collect()
            })
            .collect();
        Ok(Dihedral { m, table })
    }

    pub fn order(&self) -> usize {
        2 * self.m as usize
    }

    pub fn element(&self, rotation: u32, reflection: bool) -> u16 {
        (rotation % self.m + if reflection { self.m } else { 0 }) as u16
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize][b as usize]
    }

    pub fn inverse(&self, a: u16) -> u16 {
        (0..self.order() as u16).find(|&b| self.mul(a, b) == 0).expect("group element")
    }

    pub fn pow(&self, a: u16, e: u32) -> u16 {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Size of the subgroup generated by `gens`, by closure.
    pub fn generated_order(&self, gens: &[u16]) -> usize {
        let mut seen = vec![false; self.order()];
        let mut stack = vec![0u16];
        seen[0] = true;
        let mut count = 1;
        while let Some(g) = stack.pop() {
            for &h in gens {
                let p = self.mul(g, h);
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    count += 1;
                    stack.push(p);
                }
            }
        }
        count
    }
}

pub fn count_epimorphisms(n: u32, weights: &[u32], target_order: u32) -> Result<u64> {
    count_epimorphisms_with(Exec::default(), n, weights, target_order)
}

/// Number of surjections `F_{n;(weights)} -> D_{target_order}` by exhaustive
/// enumeration; the last `x` is forced by the product relation.
pub fn count_epimorphisms_with(exec: Exec, n: u32, weights: &[u32], target_order: u32) -> Result<u64> {
    check_weights(weights)?;
    let g = Dihedral::new(target_order)?;
    let all: Vec<u16> = (0..g.order() as u16).collect();
    let mut choices: Vec<Vec<u16>> = weights
        .iter()
        .map(|&w| all.iter().copied().filter(|&a| g.pow(a, w) == 0).collect())
        .collect();
    for _ in 1..n {
        choices.push(all.clone());
    }
    let total = choices.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    match total {
        Some(t) if t <= MAX_TUPLES => {}
        _ => return Err(Error::EnumerationTooLarge(format!("more than {MAX_TUPLES} image tuples"))),
    }
    let r = weights.len();
    let order = g.order();
    let count_from = |prefix: Option<u16>| -> u64 {
        let rest = if prefix.is_some() { &choices[1..] } else { &choices[..] };
        let mut idx = vec![0usize; rest.len()];
        let mut images = Vec::with_capacity(choices.len() + 1);
        let mut hits = 0;
        loop {
            images.clear();
            images.extend(prefix);
            images.extend(idx.iter().zip(rest).map(|(&i, c)| c[i]));
            // images = y_1..y_r, x_1..x_{n-1}
            let ys = images[..r].iter().fold(0, |acc, &y| g.mul(acc, y));
            let xs = images[r..].iter().fold(0, |acc, &x| g.mul(acc, x));
            let ok = if n == 0 {
                ys == 0
            } else {
                images.push(g.mul(g.inverse(xs), g.inverse(ys)));
                true
            };
            if ok && g.generated_order(&images) == order {
                hits += 1;
            }
            // advance the mixed-radix counter
            let mut k = rest.len();
            loop {
                if k == 0 {
                    return hits;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < rest[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    };
    if choices.is_empty() {
        return Ok(count_from(None));
    }
    let first = choices[0].clone();
    Ok(par::sum_range(exec, first.len(), |i| count_from(Some(first[i]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_examples() {
        assert_eq!(presentation(1, &[2, 3]).unwrap().to_string(), "<x1, y1, y2 | y1^2, y2^3, x1*y1*y2>");
        assert_eq!(
            presentation(0, &[2, 2, 5]).unwrap().to_string(),
            "<y1, y2, y3 | y1^2, y2^2, y3^5, y1*y2*y3>"
        );
        assert_eq!(presentation(1, &[]).unwrap().to_string(), "<x1 | x1>");
        assert!(presentation(1, &[1]).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[2, 3, 5], &[2, 3, 1]).unwrap(), vec![2, 3]);
        assert_eq!(reduce(&[2, 4], &[2, 2]).unwrap(), vec![2, 2]);
        assert_eq!(reduce(&[6], &[6]).unwrap(), vec![6]);
        assert!(reduce(&[6], &[4]).is_err());
        assert_eq!(reduction_to(&[2, 3, 5], &[2, 3]), Some(vec![2, 3, 1]));
        assert_eq!(reduction_to(&[4, 3], &[2, 2]), None);
    }

    #[test]
    fn normal_form_examples() {
        let nf = |n, w: &[u32]| normal_form(n, w).unwrap();
        assert_eq!(nf(1, &[2, 3]), NormalForm { free_rank: 0, finite_cyclic_factors: vec![2, 3] });
        assert_eq!(nf(2, &[2]).to_string(), "F1 * Z2");
        assert_eq!(nf(3, &[]).to_string(), "F2");
        assert!(normal_form(0, &[2, 2, 3]).is_err());
    }

    #[test]
    fn identify_examples() {
        assert_eq!(identify(0, &[2, 2, 6]), NamedGroup::DihedralFinite(12));
        assert_eq!(identify(0, &[6, 2, 2]), NamedGroup::DihedralFinite(12));
        assert_eq!(identify(1, &[2, 2]), NamedGroup::InfiniteDihedral);
        assert_eq!(identify(1, &[2, 7]), NamedGroup::FreeProduct { free_rank: 0, factors: vec![2, 7] });
        assert_eq!(identify(0, &[2, 3, 7]), NamedGroup::Triangle(2, 3, 7));
        assert_eq!(identify(0, &[4, 6]), NamedGroup::Cyclic(2));
        assert_eq!(identify(1, &[]), NamedGroup::Trivial);
    }

    #[test]
    fn infinite_dihedral_examples() {
        assert_eq!(surjects_onto_infinite_dihedral(1, &[2, 2, 7]), Ok(true));
        assert_eq!(surjects_onto_infinite_dihedral(2, &[2]), Ok(true));
        assert_eq!(surjects_onto_infinite_dihedral(1, &[3]), Ok(false));
        assert_eq!(surjects_onto_infinite_dihedral(0, &[2, 2, 2]), Err(Error::NotDecidableByRule));
    }

    #[test]
    fn epimorphism_examples() {
        assert_eq!(count_epimorphisms(1, &[2, 2], 6), Ok(6));
        assert_eq!(count_epimorphisms(1, &[2], 6), Ok(0));
        assert!(count_epimorphisms(0, &[2, 2, 3], 6).unwrap() > 0);
        assert_eq!(
            count_epimorphisms_with(Exec::Sequential, 2, &[2, 3], 12),
            count_epimorphisms_with(Exec::Parallel, 2, &[2, 3], 12)
        );
        assert!(matches!(count_epimorphisms(1, &[2], 202), Err(Error::EnumerationTooLarge(_))));
    }
}
