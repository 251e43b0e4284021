//! Distinguished elements built from explicit normally ordered formulas.

use std::sync::Arc;

use super::affine::affine;
use super::freefield::{bc_system, heisenberg_gram};
use crate::coeff::{int, rat, RatFunc};
use crate::error::{Error, Result};
use crate::lie::builtin_lie;
use crate::va::{tensor_product, Element, Field, VAPresentation};

#[derive(Clone, Debug)]
pub struct NamedElement {
    pub label: String,
    pub element: Element,
}

fn named(label: impl Into<String>, element: Element) -> NamedElement {
    NamedElement { label: label.into(), element }
}

/// Family names accepted by [`named_generators`].
pub const FAMILIES: [&str; 7] =
    ["S_orbifold_w", "F_orbifold_j", "A_orbifold_w", "H_orbifold_j", "AS_mixed", "parafermion_sl3", "n2_generators"];

fn index(p: &VAPresentation, name: &str) -> Result<usize> {
    p.generator_index(name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Generator ids of a free-field family: `base` when `n = 1`, else `base1..basen`.
fn family_ids(p: &VAPresentation, base: &str, n: usize) -> Result<Vec<usize>> {
    if n == 1 {
        return Ok(vec![index(p, base)?]);
    }
    (1..=n).map(|i| index(p, &format!("{base}{i}"))).collect()
}

fn d(p: &Arc<VAPresentation>, g: usize, k: usize) -> Element {
    Element::field(p, Field::new(g, k))
}

fn no(a: &Element, b: &Element) -> Result<Element> {
    a.normal_order(b)
}

fn out_of_range(family: &str, params: &[usize]) -> Error {
    Error::UnknownFamily(format!("{family} with parameters {params:?} is out of range"))
}

/// `w̃^{2k+1} = ½ Σ_i (:β^i ∂^{2k+1}γ^i: − :(∂^{2k+1}β^i) γ^i:)` in `S(r)`.
pub fn s_orbifold_w(p: &Arc<VAPresentation>, r: usize, k: usize) -> Result<Element> {
    let beta = family_ids(p, "beta", r)?;
    let gamma = family_ids(p, "gamma", r)?;
    let m = 2 * k + 1;
    let mut acc = Element::zero(p);
    for i in 0..r {
        acc = &acc + &(&no(&d(p, beta[i], 0), &d(p, gamma[i], m))? - &no(&d(p, beta[i], m), &d(p, gamma[i], 0))?);
    }
    Ok(acc.scale_q(&rat(1, 2)))
}

/// `j̃^{2k+1} = −½ Σ_i :φ^i ∂^{2k+1} φ^i:` in `F(n)`.
pub fn f_orbifold_j(p: &Arc<VAPresentation>, n: usize, k: usize) -> Result<Element> {
    let phi = family_ids(p, "phi", n)?;
    let mut acc = Element::zero(p);
    for g in phi {
        acc = &acc + &no(&d(p, g, 0), &d(p, g, 2 * k + 1))?;
    }
    Ok(acc.scale_q(&rat(-1, 2)))
}

/// `w^{2k} = ½ Σ_i (:e^i ∂^{2k} f^i: + :(∂^{2k} e^i) f^i:)` in `A(s)`.
pub fn a_orbifold_w(p: &Arc<VAPresentation>, s: usize, k: usize) -> Result<Element> {
    let e = family_ids(p, "e", s)?;
    let f = family_ids(p, "f", s)?;
    let m = 2 * k;
    let mut acc = Element::zero(p);
    for i in 0..s {
        acc = &acc + &(&no(&d(p, e[i], 0), &d(p, f[i], m))? + &no(&d(p, e[i], m), &d(p, f[i], 0))?);
    }
    Ok(acc.scale_q(&rat(1, 2)))
}

/// `j^{2k} = Σ_i :α^i ∂^{2k} α^i:` in `H(m)`.
pub fn h_orbifold_j(p: &Arc<VAPresentation>, m: usize, k: usize) -> Result<Element> {
    let alpha = family_ids(p, "alpha", m)?;
    let mut acc = Element::zero(p);
    for g in alpha {
        acc = &acc + &no(&d(p, g, 0), &d(p, g, 2 * k))?;
    }
    Ok(acc)
}

/// `μ^k = ½ Σ_i (:β^i ∂^k f^i: − :γ^i ∂^k e^i:)` in `A(n) ⊗ S(n)`.
pub fn as_mu(p: &Arc<VAPresentation>, n: usize, k: usize) -> Result<Element> {
    let (e, f) = (family_ids(p, "e", n)?, family_ids(p, "f", n)?);
    let (beta, gamma) = (family_ids(p, "beta", n)?, family_ids(p, "gamma", n)?);
    let mut acc = Element::zero(p);
    for i in 0..n {
        acc = &acc + &(&no(&d(p, beta[i], 0), &d(p, f[i], k))? - &no(&d(p, gamma[i], 0), &d(p, e[i], k))?);
    }
    Ok(acc.scale_q(&rat(1, 2)))
}

/// Heisenberg algebra `H(6)` on the root vectors of sl3, with
/// `α^{ab}_(1) α^{ba} = 1` and all other pairings zero.
pub fn sl3_root_heisenberg() -> Result<Arc<VAPresentation>> {
    let names = ["alpha12", "alpha23", "alpha13", "alpha21", "alpha32", "alpha31"];
    let mut gram = vec![vec![int(0); 6]; 6];
    for i in 0..3 {
        gram[i][i + 3] = int(1);
        gram[i + 3][i] = int(1);
    }
    heisenberg_gram("heisenberg:sl3-roots", &names, gram)
}

fn root(p: &VAPresentation, a: usize, b: usize) -> Result<usize> {
    index(p, &format!("alpha{a}{b}"))
}

/// `q^{ab}_{i,j} = :∂^i α^{ab} ∂^j α^{ba}:`.
pub fn q_sl3(p: &Arc<VAPresentation>, a: usize, b: usize, i: usize, j: usize) -> Result<Element> {
    no(&d(p, root(p, a, b)?, i), &d(p, root(p, b, a)?, j))
}

/// `c_{i,j,k} = :∂^i α^{12} ∂^j α^{23} ∂^k α^{31}:`.
pub fn c_sl3(p: &Arc<VAPresentation>, i: usize, j: usize, k: usize) -> Result<Element> {
    Element::normal_order_all(&[d(p, root(p, 1, 2)?, i), d(p, root(p, 2, 3)?, j), d(p, root(p, 3, 1)?, k)])
}

/// `c'_{i,j,k} = :∂^i α^{21} ∂^j α^{32} ∂^k α^{13}:`.
pub fn c_prime_sl3(p: &Arc<VAPresentation>, i: usize, j: usize, k: usize) -> Result<Element> {
    Element::normal_order_all(&[d(p, root(p, 2, 1)?, i), d(p, root(p, 3, 2)?, j), d(p, root(p, 1, 3)?, k)])
}

/// `V_k(sl2) ⊗ E` with generators `H, Xp, Xm, b, c`.
pub fn n2_ambient() -> Result<Arc<VAPresentation>> {
    tensor_product(&*affine(&builtin_lie("sl2")?, RatFunc::var())?, &*bc_system(1)?)
}

/// `J = H − :bc:`, `F = H + (k/2):bc:`, `L`, `G⁺ = :X⁺b:`, `G⁻ = :X⁻c:`.
pub fn n2_generators(p: &Arc<VAPresentation>) -> Result<Vec<NamedElement>> {
    let g = |s: &str| -> Result<Element> { Ok(Element::generator(p, index(p, s)?)) };
    let (h, xp, xm, b, c) = (g("H")?, g("Xp")?, g("Xm")?, g("b")?, g("c")?);
    let k = RatFunc::var();
    let bc = no(&b, &c)?;
    let inv = (&k + &RatFunc::from_int(2)).recip()?;
    let kk = &k * &inv;
    let l = [
        (inv.clone(), no(&xp, &xm)?),
        (inv.scale(&int(2)), no(&h, &bc)?),
        (kk.scale(&rat(-1, 2)), no(&b, &c.derivative())?),
        (kk.scale(&rat(1, 2)), no(&b.derivative(), &c)?),
        (-inv, h.derivative()),
    ]
    .iter()
    .fold(Element::zero(p), |acc, (s, x)| &acc + &x.scale(s));
    Ok(vec![
        named("J", &h - &bc),
        named("F", &h + &bc.scale(&k.scale(&rat(1, 2)))),
        named("L", l),
        named("Gp", no(&xp, &b)?),
        named("Gm", no(&xm, &c)?),
    ])
}

/// Look up a family by name. `params` are, in order:
/// `S_orbifold_w [r, k]`, `F_orbifold_j [n, k]`, `A_orbifold_w [s, k]`, `H_orbifold_j [m, k]`,
/// `AS_mixed [n, k]` (every member defined at index k), `parafermion_sl3 [i, j]` (the six q's) or
/// `[i, j, k]` (c and c'), `n2_generators []`.
pub fn named_generators(p: &Arc<VAPresentation>, family: &str, params: &[usize]) -> Result<Vec<NamedElement>> {
    let bad = || out_of_range(family, params);
    match (family, params) {
        ("S_orbifold_w", &[r, k]) if r >= 1 && k < r * r + 2 * r => {
            Ok(vec![named(format!("w~{}", 2 * k + 1), s_orbifold_w(p, r, k)?)])
        }
        ("F_orbifold_j", &[n, k]) if k < n => Ok(vec![named(format!("j~{}", 2 * k + 1), f_orbifold_j(p, n, k)?)]),
        ("A_orbifold_w", &[s, k]) if k < s => Ok(vec![named(format!("w{}", 2 * k), a_orbifold_w(p, s, k)?)]),
        ("H_orbifold_j", &[m, k]) if m >= 1 && 2 * k <= m * m + 3 * m - 2 => {
            Ok(vec![named(format!("j{}", 2 * k), h_orbifold_j(p, m, k)?)])
        }
        ("AS_mixed", &[n, k]) if k < 2 * n => {
            let mut out = Vec::new();
            if k < n {
                out.push(named(format!("j{}", 2 * k), a_orbifold_w(p, n, k)?));
                out.push(named(format!("w{}", 2 * k + 1), s_orbifold_w(p, n, k)?));
            }
            out.push(named(format!("mu{k}"), as_mu(p, n, k)?));
            Ok(out)
        }
        ("parafermion_sl3", &[i, j]) => {
            let pairs = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)];
            pairs.iter().map(|&(a, b)| Ok(named(format!("q{a}{b}_{i},{j}"), q_sl3(p, a, b, i, j)?))).collect()
        }
        ("parafermion_sl3", &[i, j, k]) => Ok(vec![
            named(format!("c_{i},{j},{k}"), c_sl3(p, i, j, k)?),
            named(format!("c'_{i},{j},{k}"), c_prime_sl3(p, i, j, k)?),
        ]),
        ("n2_generators", &[]) => n2_generators(p),
        _ if FAMILIES.contains(&family) => Err(bad()),
        _ => Err(Error::UnknownFamily(family.to_string())),
    }
}
