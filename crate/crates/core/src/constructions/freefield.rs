use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::coeff::qmat::{self, QMatrix};
use crate::coeff::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::lie::Parity;
use crate::va::monomial::single;
use crate::va::{BracketTable, Component, Element, Field, Generator, Parameter, VAPresentation, Vector};

fn names(base: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![base.to_string()]
    } else {
        (1..=n).map(|i| format!("{base}{i}")).collect()
    }
}

fn vac(c: Rational) -> Vector {
    single(Vec::new(), RatFunc::constant(c))
}

/// Pairing table: `a_(order) b = c * vacuum` for listed entries.
fn pairing_table(n: usize, entries: &[(usize, usize, usize, Rational)]) -> BracketTable {
    let mut t: BracketTable = vec![vec![Vec::new(); n]; n];
    for (a, b, order, c) in entries {
        let slot = &mut t[*a][*b];
        if slot.len() <= *order {
            slot.resize(order + 1, Vector::new());
        }
        slot[*order] = vac(c.clone());
    }
    t
}

fn build(
    label: &str,
    gens: Vec<Generator>,
    table: BracketTable,
    virasoro: impl FnOnce(&Arc<VAPresentation>) -> Result<Element>,
) -> Result<Arc<VAPresentation>> {
    let n = gens.len();
    let bare = VAPresentation::new(label, gens, table, Parameter::Level, Vec::new())?;
    let l = virasoro(&bare)?;
    let comp = Component {
        label: label.to_string(),
        offset: 0,
        len: n,
        affine: None,
        virasoro: (n > 0).then(|| l.into_terms()),
    };
    bare.rebuild_with_components(vec![comp])
}

impl VAPresentation {
    pub(crate) fn rebuild_with_components(&self, comps: Vec<Component>) -> Result<Arc<VAPresentation>> {
        VAPresentation::new(&self.name, self.generators.clone(), self.table().clone(), self.parameter, comps)
    }
}

fn sum(p: &Arc<VAPresentation>, terms: Vec<(Rational, Element)>) -> Element {
    terms.into_iter().fold(Element::zero(p), |acc, (c, e)| &acc + &e.scale_q(&c))
}

fn gen(p: &Arc<VAPresentation>, i: usize) -> Element {
    Element::generator(p, i)
}

fn dgen(p: &Arc<VAPresentation>, i: usize) -> Element {
    Element::field(p, Field::new(i, 1))
}

fn no(a: &Element, b: &Element) -> Element {
    a.normal_order(b).expect("same presentation")
}

/// Heisenberg algebra with `[α^i_λ α^j] = G_ij λ` and names of choice.
pub fn heisenberg_gram(label: &str, names: &[&str], gram: QMatrix) -> Result<Arc<VAPresentation>> {
    let n = names.len();
    if gram.len() != n || gram.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidPresentation("Gram matrix shape".into()));
    }
    let gens = names.iter().map(|s| Generator::new(s, Parity::Even, Rational64::one())).collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push((i, j, 1, gram[i][j].clone()));
        }
    }
    let inv = qmat::inverse(&gram);
    build(label, gens, pairing_table(n, &entries), |p| {
        let Some(inv) = inv else {
            return Ok(Element::zero(p));
        };
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_zero() {
                    terms.push((&inv[i][j] / Rational::from_integer(2.into()), no(&gen(p, i), &gen(p, j))));
                }
            }
        }
        Ok(sum(p, terms))
    })
}

pub fn heisenberg(n: usize) -> Result<Arc<VAPresentation>> {
    let ns = names("alpha", n);
    let refs: Vec<&str> = ns.iter().map(|s| s.as_str()).collect();
    heisenberg_gram(&format!("heisenberg:{n}"), &refs, qmat::identity(n))
}

pub fn free_fermion(n: usize) -> Result<Arc<VAPresentation>> {
    let gens = names("phi", n).iter().map(|s| Generator::new(s, Parity::Odd, Rational64::new(1, 2))).collect();
    let entries: Vec<_> = (0..n).map(|i| (i, i, 0, Rational::one())).collect();
    build(&format!("fermion:{n}"), gens, pairing_table(n, &entries), |p| {
        let half = Rational::new((-1).into(), 2.into());
        Ok(sum(p, (0..n).map(|i| (half.clone(), no(&gen(p, i), &dgen(p, i)))).collect()))
    })
}

/// Generators `b^1..b^n, c^1..c^n`.
pub fn bc_system(n: usize) -> Result<Arc<VAPresentation>> {
    let mut gens: Vec<Generator> =
        names("b", n).iter().map(|s| Generator::new(s, Parity::Odd, Rational64::new(1, 2))).collect();
    gens.extend(names("c", n).iter().map(|s| Generator::new(s, Parity::Odd, Rational64::new(1, 2))));
    let mut entries = Vec::new();
    for i in 0..n {
        entries.push((i, n + i, 0, Rational::one()));
        entries.push((n + i, i, 0, Rational::one()));
    }
    build(&format!("bc:{n}"), gens, pairing_table(2 * n, &entries), |p| {
        let h = Rational::new(1.into(), 2.into());
        let mut terms = Vec::new();
        for i in 0..n {
            terms.push((h.clone(), no(&dgen(p, i), &gen(p, n + i))));
            terms.push((-h.clone(), no(&gen(p, i), &dgen(p, n + i))));
        }
        Ok(sum(p, terms))
    })
}

/// Generators `beta^1..beta^n, gamma^1..gamma^n`.
pub fn beta_gamma(n: usize) -> Result<Arc<VAPresentation>> {
    let mut gens: Vec<Generator> =
        names("beta", n).iter().map(|s| Generator::new(s, Parity::Even, Rational64::new(1, 2))).collect();
    gens.extend(names("gamma", n).iter().map(|s| Generator::new(s, Parity::Even, Rational64::new(1, 2))));
    let mut entries = Vec::new();
    for i in 0..n {
        entries.push((i, n + i, 0, Rational::one()));
        entries.push((n + i, i, 0, -Rational::one()));
    }
    build(&format!("betagamma:{n}"), gens, pairing_table(2 * n, &entries), |p| {
        let h = Rational::new(1.into(), 2.into());
        let mut terms = Vec::new();
        for i in 0..n {
            terms.push((h.clone(), no(&gen(p, i), &dgen(p, n + i))));
            terms.push((-h.clone(), no(&dgen(p, i), &gen(p, n + i))));
        }
        Ok(sum(p, terms))
    })
}

/// Generators `e^1..e^n, f^1..f^n`.
pub fn symplectic_fermion(n: usize) -> Result<Arc<VAPresentation>> {
    let mut gens: Vec<Generator> =
        names("e", n).iter().map(|s| Generator::new(s, Parity::Odd, Rational64::one())).collect();
    gens.extend(names("f", n).iter().map(|s| Generator::new(s, Parity::Odd, Rational64::one())));
    let mut entries = Vec::new();
    for i in 0..n {
        entries.push((i, n + i, 1, Rational::one()));
        entries.push((n + i, i, 1, -Rational::one()));
    }
    build(&format!("symplectic:{n}"), gens, pairing_table(2 * n, &entries), |p| {
        Ok(sum(p, (0..n).map(|i| (-Rational::one(), no(&gen(p, i), &gen(p, n + i)))).collect()))
    })
}

/// Vacuum-only helper used by other constructions.
pub(crate) fn scalar_vacuum(c: RatFunc) -> Vector {
    single(Vec::new(), c)
}
