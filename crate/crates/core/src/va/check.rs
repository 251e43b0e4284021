//! Consistency checks: skew-symmetry and the commutator (Jacobi) identity.

use std::sync::Arc;

use num_traits::One;

use super::element::Element;
use super::engine::{binomial, factorial};
use super::presentation::VAPresentation;
use crate::coeff::{RatFunc, Rational};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PresentationReport {
    pub skew_failures: Vec<String>,
    pub jacobi_failures: Vec<String>,
    pub pairs_checked: usize,
    pub triples_checked: usize,
}

impl PresentationReport {
    pub fn ok(&self) -> bool {
        self.skew_failures.is_empty() && self.jacobi_failures.is_empty()
    }
}

fn sign(odd: bool) -> RatFunc {
    if odd {
        -RatFunc::one()
    } else {
        RatFunc::one()
    }
}

/// Right-hand side of skew-symmetry: `b_(n) a` computed from the products `a_(m) b`.
pub fn skew_rhs(a: &Element, b: &Element, n: i64) -> Result<Element> {
    let eps = a.parity()?.is_odd() && b.parity()?.is_odd();
    let wa = a.weight()?;
    let wb = b.weight()?;
    let jmax = (wa + wb - Rational::one()).floor().to_integer();
    let jmax: i64 = (jmax - num_bigint::BigInt::from(n)).try_into().unwrap_or(-1);
    let mut acc = Element::zero(a.presentation());
    for j in 0..=jmax.max(-1) {
        let p = a.nth_product(b, n + j)?;
        if p.is_zero() {
            continue;
        }
        let s = sign((n + j + 1) % 2 != 0) * sign(eps);
        let c = s.scale(&factorial(j as u64).recip());
        acc = &acc + &p.derivative_n(j as usize).scale(&c);
    }
    Ok(acc)
}

/// `a_(m)(b_(n)c) - ε b_(n)(a_(m)c) - Σ_j C(m,j) (a_(j)b)_(m+n-j) c`, zero when Jacobi holds.
pub fn jacobi_defect(a: &Element, b: &Element, c: &Element, m: i64, n: i64) -> Result<Element> {
    let eps = a.parity()?.is_odd() && b.parity()?.is_odd();
    let lhs = a.nth_product(&b.nth_product(c, n)?, m)?;
    let cross = b.nth_product(&a.nth_product(c, m)?, n)?.scale(&sign(eps));
    let mut rhs = Element::zero(a.presentation());
    for j in 0..=m {
        let ab = a.nth_product(b, j)?;
        if ab.is_zero() {
            continue;
        }
        rhs = &rhs + &ab.nth_product(c, m + n - j)?.scale_q(&binomial(m, j));
    }
    Ok(&(&lhs - &cross) - &rhs)
}

fn max_mode(x: &Element, y: &Element) -> i64 {
    let w = x.weight().unwrap_or_default() + y.weight().unwrap_or_default();
    (w - Rational::one()).floor().to_integer().try_into().unwrap_or(0)
}

pub fn check_presentation(p: &Arc<VAPresentation>) -> PresentationReport {
    let gens: Vec<Element> = (0..p.len()).map(|i| Element::generator(p, i)).collect();
    let name = |i: usize| p.generators[i].name.clone();
    let mut rep = PresentationReport::default();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            rep.pairs_checked += 1;
            for n in 0..=max_mode(a, b) {
                let lhs = b.nth_product(a, n).expect("same presentation");
                let rhs = skew_rhs(a, b, n).expect("homogeneous generators");
                if lhs != rhs {
                    rep.skew_failures.push(format!("{}_({n}){} vs skew of {}_(m){}", name(j), name(i), name(i), name(j)));
                }
            }
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            for (l, c) in gens.iter().enumerate() {
                rep.triples_checked += 1;
                let top = max_mode(a, b) + max_mode(b, c) + 2;
                'modes: for m in 0..=top {
                    for n in 0..=top {
                        let d = jacobi_defect(a, b, c, m, n).expect("same presentation");
                        if !d.is_zero() {
                            rep.jacobi_failures.push(format!(
                                "({}, {}, {}) at m={m}, n={n}",
                                name(i),
                                name(j),
                                name(l)
                            ));
                            break 'modes;
                        }
                    }
                }
            }
        }
    }
    rep
}
