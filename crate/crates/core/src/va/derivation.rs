//! Even derivations determined by their values on generators.

use std::sync::Arc;

use super::element::Element;
use super::monomial::{Field, Vector};
use super::presentation::VAPresentation;
use crate::coeff::Rational;
use crate::error::{Error, Result};

fn big(w: num_rational::Rational64) -> Rational {
    Rational::new((*w.numer()).into(), (*w.denom()).into())
}

/// A linear map on generators, extended to all of `P` by the Leibniz rule
/// and `D ∂ = ∂ D`. It is a derivation of the vertex algebra exactly when
/// [`Derivation::check`] succeeds.
#[derive(Clone, Debug)]
pub struct Derivation {
    pres: Arc<VAPresentation>,
    images: Vec<Vector>,
}

impl Derivation {
    /// `images[g]` is `D(g)`; missing entries are zero.
    pub fn new(pres: &Arc<VAPresentation>, mut images: Vec<Vector>) -> Result<Self> {
        if images.len() > pres.len() {
            return Err(Error::InvalidPresentation("more images than generators".into()));
        }
        images.resize(pres.len(), Vector::new());
        for (g, v) in images.iter().enumerate() {
            let x = Element::from_vector(pres, v.clone());
            if !x.is_zero() && (x.weight()? != big(pres.generators[g].weight) || x.parity()? != pres.parity_of_gen(g)) {
                return Err(Error::InvalidPresentation(format!(
                    "image of {} must be even of the same weight",
                    pres.generators[g].name
                )));
            }
        }
        Ok(Derivation { pres: pres.clone(), images })
    }

    /// The zero mode of a weight-one even element.
    pub fn zero_mode(x: &Element) -> Result<Self> {
        let p = x.presentation();
        let images = (0..p.len())
            .map(|g| x.nth_product(&Element::generator(p, g), 0).map(Element::into_terms))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(p, images)
    }

    pub fn presentation(&self) -> &Arc<VAPresentation> {
        &self.pres
    }

    fn field(&self, f: Field) -> Element {
        Element::from_vector(&self.pres, self.images[f.gen as usize].clone()).derivative_n(f.deriv as usize)
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.presentation().id() != self.pres.id() {
            return Err(Error::MixedPresentations);
        }
        let mut acc = Element::zero(&self.pres);
        for (m, c) in x.terms() {
            for i in 0..m.len() {
                let image = self.field(m[i]);
                if image.is_zero() {
                    continue;
                }
                let mut items: Vec<Element> = m.iter().map(|f| Element::field(&self.pres, *f)).collect();
                items[i] = image;
                acc = &acc + &Element::normal_order_all(&items)?.scale(c);
            }
        }
        Ok(acc)
    }

    /// `D(a_(n) b) = D(a)_(n) b + a_(n) D(b)` on all generator pairs and `n ≥ 0`.
    pub fn check(&self) -> Result<()> {
        let p = &self.pres;
        for a in 0..p.len() {
            for b in 0..p.len() {
                let (x, y) = (Element::generator(p, a), Element::generator(p, b));
                let (dx, dy) = (self.field(Field::plain(a)), self.field(Field::plain(b)));
                for n in 0..p.table()[a][b].len().max(1) as i64 + 1 {
                    let lhs = self.apply(&x.nth_product(&y, n)?)?;
                    let rhs = &dx.nth_product(&y, n)? + &x.nth_product(&dy, n)?;
                    if lhs != rhs {
                        return Err(Error::HomomorphismFailure(format!(
                            "not a derivation on {}_({n}){}",
                            p.generators[a].name, p.generators[b].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `[D_i, D_j] = Σ c D_m` on generators, for derivations indexed by a Lie basis.
pub fn check_lie_action(lie: &crate::lie::LiePresentation, ders: &[Derivation]) -> Result<()> {
    let Some(first) = ders.first() else {
        return Ok(());
    };
    let p = first.presentation();
    for i in 0..lie.dim() {
        for j in 0..lie.dim() {
            for g in 0..p.len() {
                let x = Element::generator(p, g);
                let lhs = &ders[i].apply(&ders[j].apply(&x)?)? - &ders[j].apply(&ders[i].apply(&x)?)?;
                let rhs = lie.bracket(i, j).iter().try_fold(Element::zero(p), |acc, (m, c)| {
                    Ok::<_, Error>(&acc + &ders[*m].apply(&x)?.scale_q(c))
                })?;
                if lhs != rhs {
                    return Err(Error::HomomorphismFailure(format!(
                        "[{}, {}] on {}",
                        lie.basis[i].name, lie.basis[j].name, p.generators[g].name
                    )));
                }
            }
        }
    }
    Ok(())
}
