//! Commutant and invariant subspaces of a graded piece, over `Q(k)`.
//!
//! A condition maps the weight-`w` basis into some other graded piece. The
//! solution space is the common kernel, computed generically by
//! [`Eliminator`]; nongeneric levels are the rational roots of the recorded
//! pivots and row denominators at which the exact rank really drops.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::basis::{charge_filter, diagonal_charge, weight_basis, WeightBasis};
use super::elim::{clear_denominators, Eliminator};
use crate::coeff::parse::render_rational;
use crate::coeff::{qmat, rational_roots, Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::va::parse::print_monomial;
use crate::va::{Derivation, Element, Monomial, VAPresentation, Vector};

/// A linear map out of the weight-`w` piece whose kernel is wanted.
#[derive(Clone, Debug)]
pub enum Condition {
    /// `v ↦ x_(n) v`.
    Product { current: Element, n: i64 },
    Derivation(Derivation),
}

impl Condition {
    pub fn apply(&self, v: &Element) -> Result<Element> {
        match self {
            Condition::Product { current, n } => current.nth_product(v, *n),
            Condition::Derivation(d) => d.apply(v),
        }
    }

    pub fn label(&self, index: usize) -> String {
        match self {
            Condition::Product { current, n } => format!("({})_({n})", current.to_text()),
            Condition::Derivation(_) => format!("D{index}"),
        }
    }
}

/// Polynomial system over the basis columns.
#[derive(Clone, Debug)]
pub struct System {
    pub rows: Vec<Vec<Poly>>,
    /// For each row: condition index and target monomial.
    pub row_labels: Vec<(usize, Monomial)>,
    /// Monic lcm of the denominators cleared from each row.
    pub denominators: Vec<Poly>,
}

impl System {
    pub fn evaluate(&self, k0: &Rational) -> qmat::QMatrix {
        self.rows.iter().map(|r| r.iter().map(|p| p.eval(k0)).collect()).collect()
    }

    pub fn rank_at(&self, k0: &Rational) -> usize {
        qmat::rank(&self.evaluate(k0))
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub basis: WeightBasis,
    pub conditions: Vec<String>,
    pub system: System,
    pub generic_rank: usize,
    /// Monic nonconstant polynomials met as pivots or removed contents.
    pub pivot_polys: Vec<Poly>,
    /// Kernel basis in basis coordinates.
    pub kernel_coords: Vec<Vec<RatFunc>>,
    pub kernel: Vec<Element>,
}

impl SolveReport {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// Dimension of the solution space of the system specialized at `k0`.
    pub fn dimension_at(&self, k0: &Rational) -> usize {
        self.basis.len() - self.system.rank_at(k0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = &self.basis.presentation;
        serde_json::json!({
            "presentation": p.name,
            "weight": render_rational(&self.basis.weight),
            "charges": self.basis.charges.iter().map(|(x, q)| serde_json::json!({"current": x, "charge": render_rational(q)})).collect::<Vec<_>>(),
            "basis_size": self.basis.len(),
            "basis": self.basis.monomials.iter().map(|m| print_monomial(p, m)).collect::<Vec<_>>(),
            "conditions": self.conditions,
            "equations": self.system.rows.len(),
            "generic_rank": self.generic_rank,
            "dimension": self.dimension(),
            "pivot_polynomials": self.pivot_polys.iter().map(|q| q.render("k")).collect::<Vec<_>>(),
            "kernel": self.kernel.iter().map(|x| x.to_text()).collect::<Vec<_>>(),
        })
    }
}

fn check_same(p: &Arc<VAPresentation>, x: &Element) -> Result<()> {
    if x.presentation().id() != p.id() {
        return Err(Error::MixedPresentations);
    }
    Ok(())
}

/// Assemble the system: one row per (condition, target monomial) pair, rows
/// ordered by condition then monomial. Images are computed in parallel.
pub fn build_system(basis: &WeightBasis, conditions: &[Condition]) -> Result<System> {
    let mut rows = Vec::new();
    let mut row_labels = Vec::new();
    let mut denominators = Vec::new();
    for (ci, cond) in conditions.iter().enumerate() {
        let images: Vec<Vector> = (0..basis.len())
            .into_par_iter()
            .map(|j| cond.apply(&basis.element(j)).map(Element::into_terms))
            .collect::<Result<_>>()?;
        let mut by_target: BTreeMap<&Monomial, Vec<RatFunc>> = BTreeMap::new();
        for (j, img) in images.iter().enumerate() {
            for (m, c) in img {
                by_target.entry(m).or_insert_with(|| vec![RatFunc::zero(); basis.len()])[j] = c.clone();
            }
        }
        for (m, row) in by_target {
            let (poly_row, den) = clear_denominators(&row);
            rows.push(poly_row);
            row_labels.push((ci, m.clone()));
            denominators.push(den);
        }
    }
    Ok(System { rows, row_labels, denominators })
}

/// Common kernel of `conditions` on `basis`.
pub fn solve(basis: WeightBasis, conditions: &[Condition]) -> Result<SolveReport> {
    let p = basis.presentation.clone();
    for c in conditions {
        match c {
            Condition::Product { current, .. } => check_same(&p, current)?,
            Condition::Derivation(d) if d.presentation().id() != p.id() => return Err(Error::MixedPresentations),
            Condition::Derivation(_) => {}
        }
    }
    let system = build_system(&basis, conditions)?;
    let mut elim = Eliminator::new(basis.len());
    for row in &system.rows {
        if elim.is_full() {
            break;
        }
        elim.push(row.clone());
    }
    let kernel_coords = elim.kernel();
    let kernel = kernel_coords.iter().map(|v| coords_to_element(&basis, v)).collect();
    Ok(SolveReport {
        conditions: conditions.iter().enumerate().map(|(i, c)| c.label(i)).collect(),
        generic_rank: elim.rank(),
        pivot_polys: elim.pivot_polys,
        kernel_coords,
        kernel,
        system,
        basis,
    })
}

pub fn coords_to_element(basis: &WeightBasis, v: &[RatFunc]) -> Element {
    let terms = basis.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())).collect();
    Element::from_vector(&basis.presentation, terms)
}

/// Restrict to charge zero for every current whose zero mode is diagonal on the basis.
fn auto_charge_filter(basis: WeightBasis, currents: &[Element]) -> Result<WeightBasis> {
    let mut diagonal = Vec::new();
    for x in currents {
        let mut ok = true;
        for m in &basis.monomials {
            if diagonal_charge(x, m)?.is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            diagonal.push(x.clone());
        }
    }
    let zeros = vec![Rational::zero(); diagonal.len()];
    charge_filter(&basis, &diagonal, &zeros)
}

/// Weight-`w` elements of the commutant of `currents` (weight one each):
/// the kernel of `x_(n)` for all `n ≥ 0`.
pub fn commutant_basis(p: &Arc<VAPresentation>, currents: &[Element], w: &Rational) -> Result<SolveReport> {
    for x in currents {
        check_same(p, x)?;
        if !x.is_zero() && x.weight()? != Rational::from_integer(1.into()) {
            return Err(Error::Usage(format!("current {} is not of weight one", x.to_text())));
        }
    }
    let basis = auto_charge_filter(weight_basis(p, w)?, currents)?;
    let top = w.floor().to_integer().to_i64().unwrap_or(0);
    let mut conditions = Vec::new();
    for x in currents {
        for n in 0..=top {
            conditions.push(Condition::Product { current: x.clone(), n });
        }
    }
    solve(basis, &conditions)
}

/// Weight-`w` elements annihilated by every derivation.
pub fn invariant_basis(p: &Arc<VAPresentation>, derivations: &[Derivation], w: &Rational) -> Result<SolveReport> {
    let basis = weight_basis(p, w)?;
    let conditions: Vec<_> = derivations.iter().cloned().map(Condition::Derivation).collect();
    solve(basis, &conditions)
}

/// Generic commutant dimension at each weight.
pub fn graded_dimensions(p: &Arc<VAPresentation>, currents: &[Element], weights: &[Rational]) -> Result<Vec<(Rational, usize)>> {
    weights.iter().map(|w| Ok((w.clone(), commutant_basis(p, currents, w)?.dimension()))).collect()
}

/// Half-integer weights `0, 1/2, ..., max` (integers only when `half` is false).
pub fn weight_range(max: Rational64, half: bool) -> Vec<Rational> {
    let step = if half { Rational64::new(1, 2) } else { Rational64::from_integer(1) };
    let mut out = Vec::new();
    let mut w = Rational64::zero();
    while w <= max {
        out.push(Rational::new((*w.numer()).into(), (*w.denom()).into()));
        w += step;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelStatus {
    /// The exact rank drops at this level.
    Certified,
    /// A root of a pivot where the rank does not drop.
    Candidate,
    /// A root of a cleared denominator; the system is singular there and the
    /// reported dimension is that of the cleared system.
    Pole,
}

#[derive(Clone, Debug, Serialize)]
pub struct Level {
    pub value: String,
    #[serde(skip)]
    pub exact: Rational,
    pub status: LevelStatus,
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NongenericReport {
    pub generic_dimension: usize,
    pub levels: Vec<Level>,
    /// Factors without rational roots, left unfactored.
    pub irrational_factors: Vec<String>,
}

impl NongenericReport {
    pub fn certified(&self) -> Vec<Rational> {
        self.levels.iter().filter(|l| l.status == LevelStatus::Certified).map(|l| l.exact.clone()).collect()
    }
}

/// Classify every rational root of the recorded pivots and denominators.
/// Any level where the dimension jumps is a root of some recorded polynomial,
/// so the certified list is complete among rational levels.
pub fn nongeneric_levels(report: &SolveReport) -> Result<NongenericReport> {
    let mut candidates: BTreeMap<Rational, bool> = BTreeMap::new();
    let mut irrational = Vec::new();
    let mut scan = |q: &Poly, pole: bool| -> Result<()> {
        let r = rational_roots(q)?;
        for (x, _) in r.roots {
            let e = candidates.entry(x).or_insert(false);
            *e |= pole;
        }
        if let Some(rest) = r.remainder {
            let s = rest.render("k");
            if !irrational.contains(&s) {
                irrational.push(s);
            }
        }
        Ok(())
    };
    for q in &report.pivot_polys {
        scan(q, false)?;
    }
    for q in report.system.denominators.iter().filter(|q| !q.is_constant()) {
        scan(q, true)?;
    }
    let generic = report.dimension();
    let levels = candidates
        .into_iter()
        .map(|(x, pole)| {
            let dimension = report.dimension_at(&x);
            let status = if pole {
                LevelStatus::Pole
            } else if dimension != generic {
                LevelStatus::Certified
            } else {
                LevelStatus::Candidate
            };
            Level { value: render_rational(&x), exact: x, status, dimension }
        })
        .collect();
    Ok(NongenericReport { generic_dimension: generic, levels, irrational_factors: irrational })
}

/// The specialized system at `k0` has the generic solution dimension, and the
/// specialized generic kernel vectors solve it. Meant for levels off the
/// nongeneric list.
pub fn check_evaluation(report: &SolveReport, k0: &Rational) -> Result<bool> {
    if report.dimension_at(k0) != report.dimension() {
        return Ok(false);
    }
    let m = report.system.evaluate(k0);
    let mut vecs = Vec::new();
    for v in &report.kernel_coords {
        let x = v.iter().map(|c| c.evaluate_at(k0)).collect::<Result<Vec<_>>>()?;
        for row in &m {
            let s = row.iter().zip(&x).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            if !s.is_zero() {
                return Ok(false);
            }
        }
        vecs.push(x);
    }
    Ok(qmat::rank(&vecs) == vecs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::constructions::affine;
    use crate::lie::builtin_lie;

    #[test]
    fn heisenberg_commutant_in_sl2() {
        let sl2 = affine(&builtin_lie("sl2").unwrap(), RatFunc::var()).unwrap();
        let h = Element::generator(&sl2, 0);
        let r = commutant_basis(&sl2, &[h], &int(2)).unwrap();
        assert_eq!(r.basis.len(), 3);
        assert_eq!(r.dimension(), 1);
        assert!(check_evaluation(&r, &int(7)).unwrap());
    }
}
