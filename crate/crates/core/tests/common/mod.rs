#![allow(dead_code)]

use pcl_core::polycore::{rat, HomForm, QPoly, Vars};
use proptest::prelude::*;

pub fn f(s: &str) -> HomForm {
    HomForm::parse(s).unwrap()
}

/// Monomials of degree `d` in `n` variables (padded to three slots).
pub fn monomials(nvars: usize, d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    match nvars {
        2 => {
            for a in (0..=d).rev() {
                out.push([a, d - a, 0]);
            }
        }
        _ => {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push([a, b, d - a - b]);
                }
            }
        }
    }
    out
}

/// Random (possibly zero) ternary form of degree `d` with small coefficients.
pub fn ternary(d: u32, range: i64) -> impl Strategy<Value = QPoly> {
    let mons = monomials(3, d);
    proptest::collection::vec(-range..=range, mons.len())
        .prop_map(move |cs| QPoly::from_terms(Vars::Xyz, mons.iter().copied().zip(cs.into_iter().map(rat))))
}

/// Nonzero ternary form of degree `d`.
pub fn nonzero_form(d: u32, range: i64) -> impl Strategy<Value = HomForm> {
    ternary(d, range).prop_filter_map("zero form", |p| HomForm::new(p).ok())
}

/// Nonzero form of degree `1..=max`.
pub fn form_up_to(max: u32, range: i64) -> impl Strategy<Value = HomForm> {
    (1..=max).prop_flat_map(move |d| nonzero_form(d, range))
}

/// Affine polynomial in u, v of degree at most `max`.
pub fn affine(max: u32, range: i64) -> impl Strategy<Value = QPoly> {
    let mons: Vec<[u32; 3]> = (0..=max).flat_map(|d| monomials(2, d)).collect();
    proptest::collection::vec(-range..=range, mons.len())
        .prop_map(move |cs| QPoly::from_terms(Vars::Uv, mons.iter().copied().zip(cs.into_iter().map(rat))))
}

pub fn product(fs: &[&HomForm]) -> HomForm {
    fs.iter().skip(1).fold(fs[0].clone(), |acc, g| acc.mul(g).unwrap())
}
