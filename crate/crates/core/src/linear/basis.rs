//! PBW-type monomial bases of graded pieces.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::va::{Element, Field, Monomial, VAPresentation};

#[derive(Clone, Debug)]
pub struct WeightBasis {
    pub presentation: Arc<VAPresentation>,
    pub weight: Rational,
    pub monomials: Vec<Monomial>,
    /// `(current label, charge)` pairs applied by [`charge_filter`].
    pub charges: Vec<(String, Rational)>,
}

impl WeightBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }

    pub fn element(&self, i: usize) -> Element {
        Element::monomial(&self.presentation, self.monomials[i].clone())
    }
}

pub(crate) fn small(w: &Rational) -> Result<Rational64> {
    match (w.numer().to_i64(), w.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Rational64::new(n, d)),
        _ => Err(Error::Usage(format!("weight {w} out of range"))),
    }
}

/// All canonical monomials of weight `w`, in ascending monomial order.
pub fn weight_basis(p: &Arc<VAPresentation>, w: &Rational) -> Result<WeightBasis> {
    let target = small(w)?;
    let mut fields: Vec<(Field, Rational64, bool)> = Vec::new();
    for g in 0..p.len() {
        let base = p.generators[g].weight;
        let mut d = 0usize;
        while base + Rational64::from_integer(d as i64) <= target {
            fields.push((Field::new(g, d), base + Rational64::from_integer(d as i64), p.parity_of_gen(g).is_odd()));
            d += 1;
        }
    }
    let mut out = BTreeSet::new();
    let mut current = Vec::new();
    extend(&fields, 0, target, &mut current, &mut out);
    Ok(WeightBasis { presentation: p.clone(), weight: w.clone(), monomials: out.into_iter().collect(), charges: Vec::new() })
}

fn extend(
    fields: &[(Field, Rational64, bool)],
    start: usize,
    left: Rational64,
    current: &mut Monomial,
    out: &mut BTreeSet<Monomial>,
) {
    if left.is_zero() {
        out.insert(current.clone());
        return;
    }
    for i in start..fields.len() {
        let (f, wt, odd) = fields[i];
        if wt > left {
            continue;
        }
        current.push(f);
        // Odd fields square to a multiple of lower terms, so never repeat them.
        extend(fields, if odd { i + 1 } else { i }, left - wt, current, out);
        current.pop();
    }
}

/// Keep the monomials on which each current's zero mode acts by the given charge.
pub fn charge_filter(basis: &WeightBasis, currents: &[Element], charges: &[Rational]) -> Result<WeightBasis> {
    if currents.len() != charges.len() {
        return Err(Error::Usage("one charge per current".into()));
    }
    let mut keep = Vec::new();
    'mono: for m in &basis.monomials {
        for (ci, (x, q)) in currents.iter().zip(charges).enumerate() {
            match diagonal_charge(x, m)? {
                Some(c) if c == *q => {}
                Some(_) => continue 'mono,
                None => return Err(Error::NotTorusDiagonal(ci)),
            }
        }
        keep.push(m.clone());
    }
    let mut charges_meta = basis.charges.clone();
    for (x, q) in currents.iter().zip(charges) {
        charges_meta.push((x.to_text(), q.clone()));
    }
    Ok(WeightBasis { monomials: keep, charges: charges_meta, ..basis.clone() })
}

/// `Some(c)` when `x_(0) m = c m` with `c` constant.
pub(crate) fn diagonal_charge(x: &Element, m: &Monomial) -> Result<Option<Rational>> {
    let y = x.nth_product(&Element::monomial(x.presentation(), m.clone()), 0)?;
    let t = y.terms();
    if t.is_empty() {
        return Ok(Some(Rational::zero()));
    }
    if t.len() == 1 {
        if let Some(c) = t.get(m).and_then(|c| c.as_constant()) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, RatFunc};
    use crate::constructions::{affine, bc_system, heisenberg};
    use crate::lie::builtin_lie;

    #[test]
    fn small_bases() {
        assert_eq!(weight_basis(&heisenberg(1).unwrap(), &int(2)).unwrap().len(), 2);
        assert_eq!(weight_basis(&bc_system(1).unwrap(), &int(1)).unwrap().len(), 1);
        let sl2 = affine(&builtin_lie("sl2").unwrap(), RatFunc::var()).unwrap();
        assert_eq!(weight_basis(&sl2, &int(2)).unwrap().len(), 9);
        assert_eq!(weight_basis(&sl2, &int(0)).unwrap().monomials, vec![Vec::new()]);
    }

    #[test]
    fn cartan_charge_filter() {
        let sl2 = affine(&builtin_lie("sl2").unwrap(), RatFunc::var()).unwrap();
        let b = weight_basis(&sl2, &int(2)).unwrap();
        let h = Element::generator(&sl2, 0);
        assert_eq!(charge_filter(&b, &[h.clone()], &[int(0)]).unwrap().len(), 3);
        assert_eq!(charge_filter(&b, &[], &[]).unwrap().len(), 9);
        let x = Element::generator(&sl2, 1);
        assert!(matches!(charge_filter(&b, &[x], &[int(0)]), Err(Error::NotTorusDiagonal(0))));
    }
}
