//! Individual verification routines used by the suite catalog.
//!
//! Functions that take a `reading` argument can evaluate either the
//! statement exactly as printed or the corrected statement; only the
//! corrected form enters the catalog.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{int, rat, RatFunc, Rational};
use crate::constructions::named::{
    a_orbifold_w, as_mu, c_prime_sl3, c_sl3, n2_ambient, n2_generators, q_sl3, s_orbifold_w, sl3_root_heisenberg,
};
use crate::constructions::{
    affine, deformable_form, limit_element, limit_presentation, primary_test, sp_action_on_symplectic_tensor_betagamma,
    sugawara, symplectic_fermion, tau_embedding, virasoro_test, NamedElement,
};
use crate::error::{Error, Result};
use crate::lie::builtin_lie;
use crate::linear::{
    check_evaluation, commutant_basis, decoupling_multiplier, express_in_span, nongeneric_levels, weight_basis,
    Decoupling,
};
use crate::va::{check_presentation, parse_element, Derivation, Element, VAPresentation};

/// Result of one check: pass flag and a human-readable detail line.
pub type Outcome = (bool, String);

/// Which form of a printed identity to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    Printed,
    Corrected,
}

fn parse(p: &Arc<VAPresentation>, s: &str) -> Result<Element> {
    parse_element(p, s)
}

pub fn affine_at_k(lie: &str) -> Result<Arc<VAPresentation>> {
    affine(&builtin_lie(lie)?, RatFunc::var())
}

fn k_over(num: i64, den_const: i64, den_k: i64) -> RatFunc {
    // num * k / (den_k * k + den_const)
    let den = &RatFunc::var().scale(&int(den_k)) + &RatFunc::from_int(den_const);
    (&RatFunc::var().scale(&int(num)) / &den).clone()
}

// ---------------------------------------------------------------- sugawara

/// `virasoro_test(sugawara(V_k(g)))` and its central charge against `expected`.
pub fn sugawara_charge(lie: &str, expected: &RatFunc) -> Result<Outcome> {
    let p = affine_at_k(lie)?;
    let r = virasoro_test(&sugawara(&p)?)?;
    let ok = r.ok && r.central_charge == *expected;
    Ok((ok, format!("c = {} (expected {}){}", r.central_charge, expected, detail_suffix(&r.detail))))
}

fn detail_suffix(d: &str) -> String {
    if d.is_empty() {
        String::new()
    } else {
        format!("; {d}")
    }
}

pub fn expected_sugawara(lie: &str) -> Result<RatFunc> {
    Ok(match lie {
        "sl2" => k_over(3, 2, 1),
        "osp(1|2)" => k_over(2, 3, 2),
        "sl3" => k_over(8, 3, 1),
        other => return Err(Error::UnknownName(other.into())),
    })
}

/// Every current is primary of weight one for the Sugawara vector.
pub fn currents_primary(lie: &str) -> Result<Outcome> {
    let p = affine_at_k(lie)?;
    let l = sugawara(&p)?;
    let mut bad = Vec::new();
    for g in 0..p.len() {
        let r = primary_test(&l, &Element::generator(&p, g))?;
        if !(r.ok && r.weight == RatFunc::one()) {
            bad.push(p.generators[g].name.clone());
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} currents", p.len()) } else { format!("not primary: {bad:?}") }))
}

// ---------------------------------------------------------------- N = 2

/// `:(:∂^i X⁺ b:)(:X⁻ c:):` against the four-term right side. The printed
/// `k` coefficient is `−k/(i+2)`; the corrected one is `(−1)^i k/(i+2)`.
pub fn n2_xb_xc(i: usize, reading: Reading) -> Result<Outcome> {
    let p = n2_ambient()?;
    let lhs = parse(&p, &format!(":D^{i}(Xp) b:"))?.normal_order(&parse(&p, ":Xm c:")?)?;
    let sign = if i % 2 == 0 { 1 } else { -1 };
    let k_coef = match reading {
        Reading::Printed => RatFunc::var().scale(&rat(-1, i as i64 + 2)),
        Reading::Corrected => RatFunc::var().scale(&rat(sign, i as i64 + 2)),
    };
    let rhs = [
        (RatFunc::constant(rat(2 * sign, i as i64 + 1)), format!(":H D^{}(b) c:", i + 1)),
        (RatFunc::one(), format!(":D^{i}(Xp) Xm b c:")),
        (RatFunc::one(), format!(":D^{}(Xp) Xm:", i + 1)),
        (k_coef.clone(), format!(":D^{}(b) c:", i + 2)),
    ]
    .iter()
    .try_fold(Element::zero(&p), |acc, (c, s)| Ok::<_, Error>(&acc + &parse(&p, s)?.scale(c)))?;
    let diff = &lhs - &rhs;
    Ok((diff.is_zero(), format!("k coefficient {}; residual {}", k_coef, diff.to_text())))
}

/// `:(:∂^i X⁺ b:)(:bc:): = −:∂^{i+1} X⁺ b:` and `:(:∂^i X⁻ c:)(:bc:): = :∂^{i+1} X⁻ c:`.
pub fn n2_charged_bc(i: usize) -> Result<Outcome> {
    let p = n2_ambient()?;
    let bc = parse(&p, ":b c:")?;
    let plus = parse(&p, &format!(":D^{i}(Xp) b:"))?.normal_order(&bc)?;
    let minus = parse(&p, &format!(":D^{i}(Xm) c:"))?.normal_order(&bc)?;
    let ok_plus = plus == -parse(&p, &format!(":D^{}(Xp) b:", i + 1))?;
    let ok_minus = minus == parse(&p, &format!(":D^{}(Xm) c:", i + 1))?;
    Ok((ok_plus && ok_minus, format!("X+b: {ok_plus}, X-c: {ok_minus}")))
}

/// `:(:∂^i bc:)(:bc:): − s (i+2)/(i+1) :(∂^{i+1} b) c:` lies in
/// `∂ span{∂^{i−r} :(∂^r b) c:}`; printed `s = −1`, corrected `s = +1`.
pub fn n2_bc_bc(i: usize, reading: Reading) -> Result<Outcome> {
    let p = n2_ambient()?;
    let lhs = parse(&p, &format!(":D^{i}(b) c:"))?.normal_order(&parse(&p, ":b c:")?)?;
    let s = if reading == Reading::Printed { -1 } else { 1 };
    let main = parse(&p, &format!(":D^{}(b) c:", i + 1))?.scale_q(&rat(s * (i as i64 + 2), i as i64 + 1));
    let residual = &lhs - &main;
    let span: Vec<Element> =
        (0..=i).map(|r| Ok(parse(&p, &format!(":D^{r}(b) c:"))?.derivative_n(i - r + 1))).collect::<Result<_>>()?;
    let ok = express_in_span(&residual, &span)?.is_ok();
    Ok((ok, format!("main coefficient {}; residual in ∂-image: {ok}", rat(s * (i as i64 + 2), i as i64 + 1))))
}

pub fn n2_named(p: &Arc<VAPresentation>) -> Result<Vec<NamedElement>> {
    n2_generators(p)
}

/// `J` has zero λ-bracket with `F, L, G⁺, G⁻`.
pub fn n2_j_commutes() -> Result<Outcome> {
    let p = n2_ambient()?;
    let g = n2_generators(&p)?;
    let mut bad = Vec::new();
    for x in &g[1..] {
        if !g[0].element.lambda_bracket(&x.element)?.is_zero() {
            bad.push(x.label.clone());
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "J commutes with F, L, Gp, Gm".into() } else { format!("nonzero with {bad:?}") }))
}

pub fn n2_virasoro() -> Result<Outcome> {
    let p = n2_ambient()?;
    let g = n2_generators(&p)?;
    let r = virasoro_test(&g[2].element)?;
    let expected = k_over(3, 2, 1);
    Ok((r.ok && r.central_charge == expected, format!("c = {}{}", r.central_charge, detail_suffix(&r.detail))))
}

pub fn n2_primaries() -> Result<Outcome> {
    let p = n2_ambient()?;
    let g = n2_generators(&p)?;
    let l = &g[2].element;
    let want = [("F", rat(1, 1)), ("Gp", rat(3, 2)), ("Gm", rat(3, 2))];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, w) in want {
        let x = g.iter().find(|x| x.label == name).expect("generator");
        let r = primary_test(l, &x.element)?;
        ok &= r.ok && r.weight == RatFunc::constant(w.clone());
        parts.push(format!("{name}: {}", r.weight));
    }
    Ok((ok, parts.join(", ")))
}

// ---------------------------------------------------------------- osp coset

pub fn osp_ambient() -> Result<(Arc<VAPresentation>, Vec<Element>)> {
    let p = affine_at_k("osp(1|2)")?;
    let currents = (0..3).map(|i| Element::generator(&p, i)).collect();
    Ok((p, currents))
}

/// The coset Virasoro element in the explicit closed form.
pub fn osp_coset_virasoro(p: &Arc<VAPresentation>) -> Result<Element> {
    parse(
        p,
        "(-4/(2*k+3))*:phip phim: + (1/((k+2)*(2*k+3)))*(:Xp Xm: + :H H:) + ((1+k)/((k+2)*(2*k+3)))*D^1(H)",
    )
}

/// Generic weight-2 commutant: one-dimensional, spanned by the closed-form
/// `L`, which is Virasoro with the expected central charge.
pub fn osp_weight2() -> Result<Outcome> {
    let (p, cur) = osp_ambient()?;
    let r = commutant_basis(&p, &cur, &int(2))?;
    let l = osp_coset_virasoro(&p)?;
    let in_span = r.dimension() == 1 && express_in_span(&l, &r.kernel)?.is_ok();
    let v = virasoro_test(&l)?;
    let expected = (&RatFunc::var().scale(&int(-1)) * &(&RatFunc::var().scale(&int(4)) + &RatFunc::from_int(5)))
        .checked_div(&(&(&RatFunc::var() + &RatFunc::from_int(2)) * &(&RatFunc::var().scale(&int(2)) + &RatFunc::from_int(3))))?;
    let ok = in_span && v.ok && v.central_charge == expected;
    Ok((ok, format!("dimension {}, L in commutant: {in_span}, c = {}", r.dimension(), v.central_charge)))
}

/// Decoupling of the lift of `w^{2m} = ½(:e ∂^{2m} f: + :(∂^{2m} e) f:)`
/// (with `e, f ↦ φ⁺, φ⁻`) through words in `L`.
pub fn osp_decoupling(m: usize) -> Result<Decoupling> {
    let (p, cur) = osp_ambient()?;
    let l = osp_coset_virasoro(&p)?;
    let pattern = (&parse(&p, &format!(":phip D^{}(phim):", 2 * m))? + &parse(&p, &format!(":D^{}(phip) phim:", 2 * m))?)
        .scale_q(&rat(1, 2));
    decoupling_multiplier(&p, &cur, &[NamedElement { label: "L".into(), element: l }], &pattern)
}

pub fn expected_osp_roots(m: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=m as i64).map(|i| rat(-4 * i, 2 * i - 1)).collect();
    v.sort();
    v
}

pub fn osp_decoupling_check(m: usize) -> Result<Outcome> {
    let d = osp_decoupling(m)?;
    let expected = expected_osp_roots(m);
    let poles = vec![int(-2), rat(-3, 2)];
    let ok = d.roots == expected && d.poles == poles;
    Ok((
        ok,
        format!(
            "weight {}: multiplier {}, roots {:?}, poles {:?}",
            d.weight,
            d.relation.multiplier,
            d.roots.iter().map(ToString::to_string).collect::<Vec<_>>(),
            d.poles.iter().map(ToString::to_string).collect::<Vec<_>>()
        ),
    ))
}

// ---------------------------------------------------------------- sl3 limit

/// Decoupling identity `index` (1..=6) at order `t`, other two slots `(a, b)`.
/// Identities 3 and 6 are printed with `q_{i,0}` where `q_{k,0}` is meant.
pub fn sl3_identity(index: usize, t: usize, a: usize, b: usize, reading: Reading) -> Result<bool> {
    let p = sl3_root_heisenberg()?;
    let q = |x, y, i, j| q_sl3(&p, x, y, i, j);
    let c = |i, j, k| c_sl3(&p, i, j, k);
    let cp = |i, j, k| c_prime_sl3(&p, i, j, k);
    let co = rat(-(t as i64), 2 * t as i64 + 4);
    let no = |x: Element, y: Element| x.normal_order(&y);
    // For 3 and 6 the printed subtracted term uses the first slot index `a`.
    let sub = if reading == Reading::Printed { a } else { t };
    let (lhs, rhs) = match index {
        1 => (&no(q(1, 2, 0, 0)?, c(t, a, b)?)? - &no(q(1, 2, t, 0)?, c(0, a, b)?)?, c(t + 2, a, b)?),
        2 => (&no(q(2, 3, 0, 0)?, c(a, t, b)?)? - &no(q(2, 3, t, 0)?, c(a, 0, b)?)?, c(a, t + 2, b)?),
        3 => (&no(q(3, 1, 0, 0)?, c(a, b, t)?)? - &no(q(3, 1, sub, 0)?, c(a, b, 0)?)?, c(a, b, t + 2)?),
        4 => (&no(q(2, 1, 0, 0)?, cp(t, a, b)?)? - &no(q(2, 1, t, 0)?, cp(0, a, b)?)?, cp(t + 2, a, b)?),
        5 => (&no(q(3, 2, 0, 0)?, cp(a, t, b)?)? - &no(q(3, 2, t, 0)?, cp(a, 0, b)?)?, cp(a, t + 2, b)?),
        6 => (&no(q(1, 3, 0, 0)?, cp(a, b, t)?)? - &no(q(1, 3, sub, 0)?, cp(a, b, 0)?)?, cp(a, b, t + 2)?),
        _ => return Err(Error::Usage(format!("no identity {index}"))),
    };
    Ok(lhs == rhs.scale_q(&co))
}

pub const SL3_OTHER_SLOTS: [(usize, usize); 2] = [(0, 0), (1, 2)];

pub fn sl3_identity_check(index: usize, reading: Reading) -> Result<Outcome> {
    let mut failures = Vec::new();
    for t in [1, 2] {
        for (a, b) in SL3_OTHER_SLOTS {
            if !sl3_identity(index, t, a, b, reading)? {
                failures.push(format!("t={t} others=({a},{b})"));
            }
        }
    }
    Ok((failures.is_empty(), if failures.is_empty() { "t = 1, 2".into() } else { format!("fails at {}", failures.join(", ")) }))
}

pub fn sl3_derivative() -> Result<Outcome> {
    let p = sl3_root_heisenberg()?;
    let lhs = c_sl3(&p, 0, 0, 0)?.derivative();
    let rhs = &(&c_sl3(&p, 1, 0, 0)? + &c_sl3(&p, 0, 1, 0)?) + &c_sl3(&p, 0, 0, 1)?;
    Ok((lhs == rhs, "∂c_{0,0,0} = c_{1,0,0} + c_{0,1,0} + c_{0,0,1}".into()))
}

// ---------------------------------------------------------------- orbifolds

/// `w̃^{2k+1}` in `S(1)` is fixed by the group: zero modes of the τ(1) currents kill it.
pub fn s1_orbifold_invariant(k: usize) -> Result<Outcome> {
    let tau = tau_embedding(1)?;
    let w = s_orbifold_w(&tau.target, 1, k)?;
    let mut bad = Vec::new();
    for (x, b) in tau.images.iter().zip(&tau.source.basis) {
        if !x.nth_product(&w, 0)?.is_zero() {
            bad.push(b.name.clone());
        }
    }
    Ok((bad.is_empty(), format!("w~{} weight {}; moved by {bad:?}", 2 * k + 1, w.weight()?)))
}

/// Literal reading: all modes `n ≥ 0` of the τ(1) currents kill `w̃^{2k+1}`.
pub fn s1_orbifold_all_modes(k: usize) -> Result<Outcome> {
    let tau = tau_embedding(1)?;
    let w = s_orbifold_w(&tau.target, 1, k)?;
    let mut nonzero = Vec::new();
    for (x, b) in tau.images.iter().zip(&tau.source.basis) {
        for n in 0..=(2 * k as i64 + 2) {
            if !x.nth_product(&w, n)?.is_zero() {
                nonzero.push(format!("{}_({n})", b.name));
            }
        }
    }
    Ok((nonzero.is_empty(), format!("nonzero: {nonzero:?}")))
}

pub fn a1_virasoro() -> Result<Outcome> {
    let p = symplectic_fermion(1)?;
    let w0 = a_orbifold_w(&p, 1, 0)?;
    let r = virasoro_test(&(-w0.clone()))?;
    Ok((r.ok && r.central_charge == RatFunc::from_int(-2), format!("-w0 is Virasoro with c = {}", r.central_charge)))
}

/// `μ⁰`, `j⁰` and `w¹` in `A(1) ⊗ S(1)` are killed by the `sp_2` derivations.
pub fn as_invariants() -> Result<Outcome> {
    let (amb, ders) = sp_action_on_symplectic_tensor_betagamma(1)?;
    let elements = [("mu0", as_mu(&amb, 1, 0)?), ("j0", a_orbifold_w(&amb, 1, 0)?), ("w1", s_orbifold_w(&amb, 1, 0)?)];
    let mut bad = Vec::new();
    for (name, x) in &elements {
        for d in &ders {
            if !d.apply(x)?.is_zero() {
                bad.push(*name);
                break;
            }
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { "mu0, j0, w1 invariant".into() } else { format!("not invariant: {bad:?}") }))
}

pub fn as_virasoro() -> Result<Outcome> {
    let (amb, _) = sp_action_on_symplectic_tensor_betagamma(1)?;
    let l = &(-a_orbifold_w(&amb, 1, 0)?) + &s_orbifold_w(&amb, 1, 0)?;
    let r = virasoro_test(&l)?;
    Ok((r.ok && r.central_charge == RatFunc::from_int(-3), format!("c = {}", r.central_charge)))
}

/// Literal reading for `A(1) ⊗ S(1)`: nonnegative modes of diagonal weight-one
/// currents. Only the `S(1)` half of the action is realized by fields, so this
/// uses the lifted τ(1) currents.
pub fn as_all_modes() -> Result<Outcome> {
    let (amb, _) = sp_action_on_symplectic_tensor_betagamma(1)?;
    let tau = tau_embedding(1)?.lift(&amb, 2)?;
    let mu = as_mu(&amb, 1, 0)?;
    let mut nonzero = Vec::new();
    for (x, b) in tau.images.iter().zip(&tau.source.basis) {
        for n in 0..=2 {
            if !x.nth_product(&mu, n)?.is_zero() {
                nonzero.push(format!("{}_({n})", b.name));
            }
        }
    }
    Ok((
        nonzero.is_empty(),
        format!("no weight-one fields of A(1) realize sp2, so only the S(1) currents act; nonzero on mu0: {nonzero:?}"),
    ))
}

pub fn sp_derivations(n: usize) -> Result<(Arc<VAPresentation>, Vec<Derivation>)> {
    sp_action_on_symplectic_tensor_betagamma(n)
}

// ---------------------------------------------------------------- deformable

/// The limit of the deformable form passes the structural checks, has no
/// parameter, and its brackets are the Gram matrix.
pub fn deformable_limit(lie: &str) -> Result<Outcome> {
    let p = affine_at_k(lie)?;
    let d = deformable_form(&p)?;
    let l = limit_presentation(&d)?;
    let report = check_presentation(&l);
    let g = builtin_lie(lie)?;
    let mut gram_ok = true;
    for a in 0..l.len() {
        for b in 0..l.len() {
            let br = Element::generator(&l, a).lambda_bracket(&Element::generator(&l, b))?;
            let expected = Element::vacuum(&l).scale(&RatFunc::constant(g.form(a, b).clone()));
            let first = br.get(1).cloned().unwrap_or_else(|| Element::zero(&l));
            gram_ok &= br.get(0).is_none() && br.coeffs.len() <= 2 && first == expected;
        }
    }
    let ok = report.ok() && l.is_parameter_free() && gram_ok && check_presentation(&d).ok();
    Ok((ok, format!("limit checks {}, parameter free {}, Gram brackets {}", report.ok(), l.is_parameter_free(), gram_ok)))
}

/// A random element up to weight 4 with coefficients `a + b/κ`.
fn random_deformable(p: &Arc<VAPresentation>, rng: &mut ChaCha8Rng) -> Result<Element> {
    let w = rng.gen_range(1..=4);
    let basis = weight_basis(p, &int(w))?;
    let inv = RatFunc::var().recip()?;
    let mut x = Element::zero(p);
    for _ in 0..rng.gen_range(1..=3) {
        let m = basis.element(rng.gen_range(0..basis.len()));
        let c = &RatFunc::from_int(rng.gen_range(-3..=3)) + &inv.scale(&int(rng.gen_range(-3..=3)));
        x = &x + &m.scale(&c);
    }
    Ok(x)
}

/// `ψ(x ∘_n y) = ψ(x) ∘_n ψ(y)` on `pairs` random pairs.
pub fn psi_homomorphism(lie: &str, pairs: usize, seed: u64) -> Result<Outcome> {
    let d = deformable_form(&*affine_at_k(lie)?)?;
    let l = limit_presentation(&d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..pairs {
        let x = random_deformable(&d, &mut rng)?;
        let y = random_deformable(&d, &mut rng)?;
        let n = rng.gen_range(-1..=3);
        let lhs = limit_element(&x.nth_product(&y, n)?, &l)?;
        let rhs = limit_element(&x, &l)?.nth_product(&limit_element(&y, &l)?, n)?;
        if lhs != rhs {
            return Ok((false, format!("fails on pair {checked} with n = {n}")));
        }
        checked += 1;
    }
    Ok((true, format!("{checked} pairs")))
}

// ---------------------------------------------------------------- parafermion

pub fn parafermion_dimensions() -> Result<Outcome> {
    let p = affine_at_k("sl2")?;
    let h = Element::generator(&p, 0);
    let dims = (2..=5).map(|w| Ok(commutant_basis(&p, &[h.clone()], &int(w))?.dimension())).collect::<Result<Vec<_>>>()?;
    Ok((dims == vec![1, 2, 4, 6], format!("dimensions at weights 2..5: {dims:?}")))
}

pub fn parafermion_nongeneric() -> Result<Outcome> {
    let p = affine_at_k("sl2")?;
    let h = Element::generator(&p, 0);
    let r = commutant_basis(&p, &[h], &int(2))?;
    let ng = nongeneric_levels(&r)?;
    let certified = ng.certified();
    Ok((certified == vec![int(0)], format!("certified {:?}", certified.iter().map(ToString::to_string).collect::<Vec<_>>())))
}

/// Random nonzero integer levels in `[-50, 50]` avoiding `excluded`.
pub fn random_levels(count: usize, excluded: &[Rational], seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = Rational::new(rng.gen_range(-500..=500).into(), rng.gen_range(1..=7).into());
        if !excluded.contains(&k) && !out.contains(&k) {
            out.push(k);
        }
    }
    out
}

/// Specializing at random admissible levels preserves the kernel dimension.
pub fn evaluation_consistency(p: &Arc<VAPresentation>, currents: &[Element], w: i64, seed: u64) -> Result<Outcome> {
    let r = commutant_basis(p, currents, &int(w))?;
    let ng = nongeneric_levels(&r)?;
    let excluded: Vec<Rational> = ng.levels.iter().map(|l| l.exact.clone()).collect();
    let mut ok = true;
    let levels = random_levels(3, &excluded, seed);
    for k0 in &levels {
        ok &= check_evaluation(&r, k0)?;
    }
    Ok((ok, format!("levels {:?}", levels.iter().map(ToString::to_string).collect::<Vec<_>>())))
}
