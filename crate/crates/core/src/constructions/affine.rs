use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::freefield::scalar_vacuum;
use crate::coeff::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::lie::LiePresentation;
use crate::va::monomial::add_term;
use crate::va::{AffineData, BracketTable, Component, Element, Field, Generator, Parameter, VAPresentation, Vector};

/// `V_level(g, B)`: `X^ξ_(0) X^η = X^[ξ,η]`, `X^ξ_(1) X^η = level B(ξ,η)`.
pub fn affine(lie: &LiePresentation, level: RatFunc) -> Result<Arc<VAPresentation>> {
    affine_with_parameter(lie, level, Parameter::Level)
}

pub(crate) fn affine_with_parameter(
    lie: &LiePresentation,
    level: RatFunc,
    parameter: Parameter,
) -> Result<Arc<VAPresentation>> {
    let n = lie.dim();
    let gens: Vec<Generator> = lie
        .basis
        .iter()
        .map(|b| Generator::new(&b.name, b.parity, Rational64::one()))
        .collect();
    let mut table: BracketTable = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut zero = Vector::new();
            for (m, c) in lie.bracket(a, b) {
                add_term(&mut zero, &vec![Field::plain(*m)], &RatFunc::constant(c.clone()));
            }
            let one = scalar_vacuum(level.scale(lie.form(a, b)));
            table[a][b] = vec![zero, one];
        }
    }
    let label = format!("affine:{}@{}", lie.name, level.render(parameter.symbol()));
    let comp = Component {
        label: label.clone(),
        offset: 0,
        len: n,
        affine: Some(AffineData { lie: lie.clone(), level: level.clone() }),
        virasoro: None,
    };
    let p = VAPresentation::new(&label, gens, table, parameter, vec![comp.clone()])?;
    // Attach the Sugawara vector when it exists.
    match sugawara_vector(&p, lie, &level, 0) {
        Ok(v) => p.rebuild_with_components(vec![Component { virasoro: Some(v), ..comp }]),
        Err(_) => Ok(p),
    }
}

fn sugawara_vector(p: &Arc<VAPresentation>, lie: &LiePresentation, level: &RatFunc, offset: usize) -> Result<Vector> {
    let h = lie.dual_coxeter()?;
    let shifted = level + &RatFunc::constant(h);
    if shifted.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let dual = lie.dual_basis()?;
    let pref = shifted.scale(&Rational::from_integer(2.into())).recip()?;
    let mut acc = Element::zero(p);
    for (i, row) in dual.iter().enumerate() {
        let x = Element::generator(p, offset + i);
        let mut y = Element::zero(p);
        for (m, c) in row.iter().enumerate() {
            if !c.is_zero() {
                y = &y + &Element::generator(p, offset + m).scale_q(c);
            }
        }
        acc = &acc + &x.normal_order(&y)?;
    }
    Ok(acc.scale(&pref).into_terms())
}

/// Sugawara vector of the (first) affine component of `p`.
pub fn sugawara(p: &Arc<VAPresentation>) -> Result<Element> {
    let comp = p
        .components
        .iter()
        .find(|c| c.affine.is_some())
        .ok_or_else(|| Error::InvalidPresentation("no affine component".into()))?;
    sugawara_of(p, comp)
}

pub fn sugawara_of(p: &Arc<VAPresentation>, comp: &Component) -> Result<Element> {
    let data = comp.affine.as_ref().ok_or_else(|| Error::InvalidPresentation("component is not affine".into()))?;
    if let Some(c) = data.level.as_constant() {
        if c + data.lie.dual_coxeter()? == Rational::zero() {
            return Err(Error::CriticalLevel);
        }
    }
    Ok(Element::from_vector(p, sugawara_vector(p, &data.lie, &data.level, comp.offset)?))
}

/// X^ξ for a Lie algebra element given in coordinates, inside component `comp`.
pub fn current(p: &Arc<VAPresentation>, comp: &Component, coords: &[Rational]) -> Element {
    coords.iter().enumerate().fold(Element::zero(p), |acc, (i, c)| {
        if c.is_zero() {
            acc
        } else {
            &acc + &Element::generator(p, comp.offset + i).scale_q(c)
        }
    })
}
