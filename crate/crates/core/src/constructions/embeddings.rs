//! Maps from affine currents into other vertex algebras: τ, σ, and their
//! diagonal sums.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::affine::current;
use super::freefield::{beta_gamma, free_fermion, symplectic_fermion};
use crate::coeff::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::lie::{builtin_lie, sp, LiePresentation};
use crate::va::monomial::shift_vector;
use crate::va::{check_lie_action, tensor_product, Derivation, Element, Field, VAPresentation, Vector};

/// Images of the basis currents `X^ξ_i` of `source` inside `target`.
///
/// `central[i][j]` is the scalar in `image_i _(1) image_j`, i.e. `level * B(ξ_i, ξ_j)`
/// when the map is a homomorphism from `V_level(g, B)`.
#[derive(Clone, Debug)]
pub struct EmbeddingImage {
    pub source: LiePresentation,
    pub target: Arc<VAPresentation>,
    pub images: Vec<Element>,
    pub central: Vec<Vec<RatFunc>>,
}

impl EmbeddingImage {
    /// Build and verify the homomorphism property on every basis pair.
    pub fn new(
        source: LiePresentation,
        target: Arc<VAPresentation>,
        images: Vec<Element>,
        central: Vec<Vec<RatFunc>>,
    ) -> Result<Self> {
        let e = EmbeddingImage { source, target, images, central };
        e.verify()?;
        Ok(e)
    }

    /// Central term `level * B`.
    pub fn at_level(
        source: LiePresentation,
        target: Arc<VAPresentation>,
        images: Vec<Element>,
        level: &RatFunc,
    ) -> Result<Self> {
        let d = source.dim();
        let central = (0..d).map(|i| (0..d).map(|j| level.scale(source.form(i, j))).collect()).collect();
        Self::new(source, target, images, central)
    }

    /// The level, when the central term is a multiple of the form of `source`.
    pub fn level(&self) -> Option<RatFunc> {
        let d = self.source.dim();
        let mut level: Option<RatFunc> = None;
        for i in 0..d {
            for j in 0..d {
                let b = self.source.form(i, j);
                let c = &self.central[i][j];
                if b.is_zero() {
                    if !c.is_zero() {
                        return None;
                    }
                    continue;
                }
                let r = c.scale(&b.recip());
                match &level {
                    Some(l) if *l != r => return None,
                    Some(_) => {}
                    None => level = Some(r),
                }
            }
        }
        Some(level.unwrap_or_else(RatFunc::zero))
    }

    pub fn verify(&self) -> Result<()> {
        let d = self.source.dim();
        if self.images.len() != d || self.central.len() != d || self.central.iter().any(|r| r.len() != d) {
            return Err(Error::HomomorphismFailure("one image per basis element is required".into()));
        }
        let name = |i: usize| &self.source.basis[i].name;
        for (i, x) in self.images.iter().enumerate() {
            if x.presentation().id() != self.target.id() {
                return Err(Error::MixedPresentations);
            }
            if x.is_zero() {
                continue;
            }
            if x.weight()? != Rational::one() || x.parity()? != self.source.parity(i) {
                return Err(Error::HomomorphismFailure(format!("image of {} is not a weight-one current", name(i))));
            }
        }
        let vac = Element::vacuum(&self.target);
        for i in 0..d {
            for j in 0..d {
                let zeroth = self.images[i].nth_product(&self.images[j], 0)?;
                if zeroth != self.apply(self.source.bracket(i, j)) {
                    return Err(Error::HomomorphismFailure(format!("{}_(0){}", name(i), name(j))));
                }
                let first = self.images[i].nth_product(&self.images[j], 1)?;
                if first != vac.scale(&self.central[i][j]) {
                    return Err(Error::HomomorphismFailure(format!("{}_(1){}", name(i), name(j))));
                }
            }
        }
        Ok(())
    }

    /// Image of a Lie algebra element given sparsely.
    pub fn apply(&self, v: &[(usize, Rational)]) -> Element {
        v.iter().fold(Element::zero(&self.target), |acc, (i, c)| &acc + &self.images[*i].scale_q(c))
    }

    /// Transport into `ambient`, whose generators from `offset` on repeat those of `target`.
    pub fn lift(&self, ambient: &Arc<VAPresentation>, offset: usize) -> Result<Self> {
        check_factor(ambient, &self.target, offset)?;
        let images = self
            .images
            .iter()
            .map(|x| Element::from_vector(ambient, shift_vector(x.terms(), offset)))
            .collect();
        Ok(EmbeddingImage {
            source: self.source.clone(),
            target: ambient.clone(),
            images,
            central: self.central.clone(),
        })
    }
}

fn check_factor(ambient: &VAPresentation, factor: &VAPresentation, offset: usize) -> Result<()> {
    let fits = offset + factor.len() <= ambient.len()
        && factor.generators.iter().enumerate().all(|(i, g)| {
            let h = &ambient.generators[offset + i];
            h.parity == g.parity && h.weight == g.weight && factor.table()[i] == shifted_row(ambient, factor, offset, i)
        });
    if fits {
        Ok(())
    } else {
        Err(Error::InvalidPresentation(format!("{} is not a factor of {} at offset {offset}", factor.name, ambient.name)))
    }
}

/// Row `i` of the ambient table restricted to the factor, shifted back to factor ids.
fn shifted_row(ambient: &VAPresentation, factor: &VAPresentation, offset: usize, i: usize) -> Vec<Vec<Vector>> {
    (0..factor.len())
        .map(|j| {
            ambient.table()[offset + i][offset + j]
                .iter()
                .map(|v| {
                    unshift_vector(v, offset)
                })
                .collect()
        })
        .collect()
}

/// The identity map `X^ξ ↦ X^ξ` of an affine component of `p`.
pub fn affine_image(p: &Arc<VAPresentation>, component: usize) -> Result<EmbeddingImage> {
    let comp = p
        .components
        .get(component)
        .ok_or_else(|| Error::InvalidPresentation(format!("no component {component}")))?;
    let data = comp.affine.as_ref().ok_or_else(|| Error::InvalidPresentation("component is not affine".into()))?;
    let d = data.lie.dim();
    let images = (0..d)
        .map(|i| {
            let mut coords = vec![Rational::zero(); d];
            coords[i] = Rational::one();
            current(p, comp, &coords)
        })
        .collect();
    EmbeddingImage::at_level(data.lie.clone(), p.clone(), images, &data.level)
}

/// `τ: V_{-1/2}(sp_2n) → S(n)`: `P_jk ↦ :γ^j γ^k:`, `Q_jk ↦ :β^j β^k:`, `M_jk ↦ :γ^j β^k:`.
pub fn tau_embedding(n: usize) -> Result<EmbeddingImage> {
    if n == 0 || n > 2 {
        return Err(Error::UnknownFamily(format!("tau:{n} (implemented for n = 1, 2)")));
    }
    let lie = if n == 1 { builtin_lie("sp2")? } else { sp(n)? };
    let s = beta_gamma(n)?;
    let beta = |j: usize| Element::generator(&s, j);
    let gamma = |j: usize| Element::generator(&s, n + j);
    let no = |a: Element, b: Element| a.normal_order(&b);
    let mut images = Vec::new();
    for j in 0..n {
        for k in 0..n {
            images.push(no(gamma(j), beta(k))?);
        }
    }
    for j in 0..n {
        for k in j..n {
            images.push(no(gamma(j), gamma(k))?);
        }
    }
    for j in 0..n {
        for k in j..n {
            images.push(no(beta(j), beta(k))?);
        }
    }
    EmbeddingImage::at_level(lie, s, images, &RatFunc::from_frac(-1, 2))
}

/// `σ: V_1(so_m) → F(m)`: `X^{E_ij - E_ji} ↦ :φ^i φ^j:` for `i < j`.
pub fn sigma_embedding(m: usize) -> Result<EmbeddingImage> {
    if m == 0 || m > 3 {
        return Err(Error::UnknownFamily(format!("sigma:{m} (implemented for m = 1, 2, 3)")));
    }
    let lie = builtin_lie(&format!("so{m}"))?;
    let f = free_fermion(m)?;
    let mut images = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            images.push(Element::generator(&f, i).normal_order(&Element::generator(&f, j))?);
        }
    }
    EmbeddingImage::at_level(lie, f, images, &RatFunc::one())
}

/// `X^ξ ↦ Σ_r image_r(X^ξ)`; all parts must share source and target.
pub fn diagonal_current(parts: &[EmbeddingImage]) -> Result<EmbeddingImage> {
    let first = parts.first().ok_or_else(|| Error::Usage("diagonal of no images".into()))?;
    for p in &parts[1..] {
        if p.source != first.source {
            return Err(Error::HomomorphismFailure(format!(
                "source mismatch: {} vs {}",
                first.source.name, p.source.name
            )));
        }
        if p.target.id() != first.target.id() {
            return Err(Error::MixedPresentations);
        }
    }
    let d = first.source.dim();
    let images = (0..d).map(|i| parts.iter().fold(Element::zero(&first.target), |acc, p| &acc + &p.images[i])).collect();
    let central = (0..d)
        .map(|i| (0..d).map(|j| parts.iter().fold(RatFunc::zero(), |acc, p| &acc + &p.central[i][j])).collect())
        .collect();
    EmbeddingImage::new(first.source.clone(), first.target.clone(), images, central)
}

/// The `sp_2n` action on `A(n) ⊗ S(n)` (generators `e, f, β, γ`) by even
/// derivations: τ zero modes on `S(n)` and the same representation on
/// `A(n)` under `e^i ↔ β^i`, `f^i ↔ γ^i`. `Sp(2n)` acts on `A(n)` by outer
/// automorphisms only, so these derivations are not zero modes of fields.
pub fn sp_action_on_symplectic_tensor_betagamma(n: usize) -> Result<(Arc<VAPresentation>, Vec<Derivation>)> {
    let tau = tau_embedding(n)?;
    let ambient = tensor_product(&*symplectic_fermion(n)?, &tau.target)?;
    let tau = tau.lift(&ambient, 2 * n)?;
    let mut out = Vec::new();
    for x in &tau.images {
        let mut images: Vec<Vector> = (0..ambient.len())
            .map(|g| x.nth_product(&Element::generator(&ambient, g), 0).map(Element::into_terms))
            .collect::<Result<_>>()?;
        for i in 0..2 * n {
            images[i] = unshift_vector(&images[2 * n + i], 2 * n);
        }
        out.push(Derivation::new(&ambient, images)?);
    }
    for d in &out {
        d.check()?;
    }
    check_lie_action(&tau.source, &out)?;
    Ok((ambient, out))
}

fn unshift_vector(v: &Vector, by: usize) -> Vector {
    v.iter()
        .map(|(m, c)| (m.iter().map(|f| Field::new(f.gen as usize - by, f.deriv as usize)).collect(), c.clone()))
        .collect()
}
