//! Deformable form of an affine algebra and its κ → ∞ limit.

use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::freefield::scalar_vacuum;
use crate::coeff::{Poly, RatFunc};
use crate::error::{Error, Result};
use crate::va::monomial::add_term;
use crate::va::parse::print_monomial;
use crate::va::{BracketTable, Component, Element, Field, Generator, Parameter, VAPresentation, Vector};

/// Rescale `V_k(g, B)` by `a^ξ = X^ξ / κ` with `κ² = k`:
/// `a^ξ_(0) a^η = (1/κ) a^[ξ,η]` and `a^ξ_(1) a^η = B(ξ, η)`.
pub fn deformable_form(p: &VAPresentation) -> Result<Arc<VAPresentation>> {
    let data = match p.components.as_slice() {
        [c] if c.len == p.len() => c.affine.as_ref(),
        _ => None,
    }
    .ok_or_else(|| Error::InvalidPresentation(format!("{} is not a single affine algebra", p.name)))?;
    if data.level != RatFunc::var() || p.parameter != Parameter::Level {
        return Err(Error::InvalidPresentation("deformable form needs the symbolic level k".into()));
    }
    let lie = &data.lie;
    let n = lie.dim();
    let inv_kappa = RatFunc::var().recip()?;
    let mut table: BracketTable = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut zero = Vector::new();
            for (m, c) in lie.bracket(a, b) {
                add_term(&mut zero, &vec![Field::plain(*m)], &inv_kappa.scale(c));
            }
            table[a][b] = vec![zero, scalar_vacuum(RatFunc::constant(lie.form(a, b).clone()))];
        }
    }
    let gens = lie.basis.iter().map(|b| Generator::new(&format!("a{}", b.name), b.parity, Rational64::one())).collect();
    let label = format!("deformable:{}", lie.name);
    let comp = Component { label: label.clone(), offset: 0, len: n, affine: None, virasoro: None };
    VAPresentation::new(&label, gens, table, Parameter::Kappa, vec![comp])
}

/// Rewrite an element of `V_k(g)` in the deformable form: `k ↦ κ²` and each
/// current `X^ξ ↦ κ a^ξ`.
pub fn to_deformable(x: &Element, deformable: &Arc<VAPresentation>) -> Result<Element> {
    if x.presentation().len() != deformable.len() {
        return Err(Error::MixedPresentations);
    }
    let mut t = Vector::new();
    for (m, c) in x.terms() {
        let kappa_pow = RatFunc::from_poly(Poly::monomial(crate::coeff::int(1), m.len()));
        add_term(&mut t, m, &(&c.substitute_square() * &kappa_pow));
    }
    Ok(Element::from_vector(deformable, t))
}

/// Termwise κ → ∞ limit of the bracket table.
pub fn limit_presentation(p: &VAPresentation) -> Result<Arc<VAPresentation>> {
    let mut table = p.table().clone();
    for (a, row) in table.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            for (n, v) in entry.iter_mut().enumerate() {
                *v = limit_vector(p, v).map_err(|m| {
                    Error::DivergentLimit(format!(
                        "{} in {}_({n}){}",
                        m,
                        p.generators[a].name,
                        p.generators[b].name
                    ))
                })?;
            }
        }
    }
    let label = format!("limit:{}", p.name);
    let comps = p
        .components
        .iter()
        .map(|c| Component { label: format!("limit:{}", c.label), affine: None, virasoro: None, ..c.clone() })
        .collect();
    VAPresentation::new(&label, p.generators.clone(), table, p.parameter, comps)
}

fn limit_vector(p: &VAPresentation, v: &Vector) -> std::result::Result<Vector, String> {
    let mut out = Vector::new();
    for (m, c) in v {
        let l = c.limit_at_infinity().map_err(|_| print_monomial(p, m))?;
        if !l.is_zero() {
            add_term(&mut out, m, &RatFunc::constant(l));
        }
    }
    Ok(out)
}

/// The map ψ: termwise limit of the coefficients, landing in `limit`.
pub fn limit_element(x: &Element, limit: &Arc<VAPresentation>) -> Result<Element> {
    if x.presentation().generators != limit.generators {
        return Err(Error::MixedPresentations);
    }
    let v = limit_vector(x.presentation(), x.terms()).map_err(Error::DivergentLimit)?;
    Ok(Element::from_vector(limit, v))
}
