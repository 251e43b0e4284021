//! Normally ordered words in chosen generators, relations among them, and
//! the levels where a set of words stops spanning a commutant.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Zero;

use super::basis::small;
use super::elim::{clear_denominators, maximal_minor_gcd, row_module_basis, Eliminator, PivotRule};
use super::solve::commutant_basis;
use crate::coeff::parse::render_rational;
use crate::coeff::{rational_roots, Poly, RatFunc, Rational};
use crate::constructions::NamedElement;
use crate::error::{Error, Result};
use crate::va::{Element, Monomial, VAPresentation};

/// `:∂^{d_1} g_1 (∂^{d_2} g_2 (...)):` with `(g_i, d_i)` ascending.
#[derive(Clone, Debug)]
pub struct Word {
    pub label: String,
    pub factors: Vec<(usize, usize)>,
    pub element: Element,
}

fn factor_label(name: &str, d: usize) -> String {
    match d {
        0 => name.to_string(),
        1 => format!("∂{name}"),
        _ => format!("∂^{d}{name}"),
    }
}

/// Every word of total weight `w`. Generators must be homogeneous of positive weight.
pub fn words(gens: &[NamedElement], w: &Rational) -> Result<Vec<Word>> {
    let target = small(w)?;
    let mut weights = Vec::new();
    for g in gens {
        let wt = small(&g.element.weight()?)?;
        if wt <= Rational64::zero() {
            return Err(Error::Usage(format!("generator {} must have positive weight", g.label)));
        }
        weights.push(wt);
    }
    let mut factors = Vec::new();
    for (g, wt) in weights.iter().enumerate() {
        let mut d = 0usize;
        while *wt + Rational64::from_integer(d as i64) <= target {
            factors.push((g, d, *wt + Rational64::from_integer(d as i64)));
            d += 1;
        }
    }
    let mut found = Vec::new();
    let mut current = Vec::new();
    collect(&factors, 0, target, &mut current, &mut found);
    found
        .into_iter()
        .map(|fs: Vec<(usize, usize)>| {
            let items: Vec<Element> = fs.iter().map(|&(g, d)| gens[g].element.derivative_n(d)).collect();
            let element = Element::normal_order_all(&items)?;
            let inner = fs.iter().map(|&(g, d)| factor_label(&gens[g].label, d)).collect::<Vec<_>>().join(" ");
            let label = if fs.len() == 1 { inner } else { format!(":{inner}:") };
            Ok(Word { label, factors: fs, element })
        })
        .collect()
}

fn collect(
    factors: &[(usize, usize, Rational64)],
    start: usize,
    left: Rational64,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if left.is_zero() {
        out.push(current.clone());
        return;
    }
    for i in start..factors.len() {
        let (g, d, wt) = factors[i];
        if wt <= left {
            current.push((g, d));
            collect(factors, i, left - wt, current, out);
            current.pop();
        }
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    /// `target = Σ c_i word_i`.
    pub terms: Vec<(Word, RatFunc)>,
    /// Monic lcm of the denominators of the `c_i`.
    pub multiplier: Poly,
}

impl Relation {
    pub fn combination(&self, p: &std::sync::Arc<VAPresentation>) -> Element {
        self.terms.iter().fold(Element::zero(p), |acc, (w, c)| &acc + &w.element.scale(c))
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|(w, c)| format!("{} {}", c.render("k"), w.label)).collect::<Vec<_>>().join(" + ")
    }
}

#[derive(Clone, Debug)]
pub enum RelationOutcome {
    Found(Relation),
    /// The target is not in the span of the words.
    Obstruction { word_rank: usize, augmented_rank: usize },
}

fn coordinate_rows(vectors: &[&Element]) -> Vec<Vec<RatFunc>> {
    let monos: BTreeSet<&Monomial> = vectors.iter().flat_map(|x| x.terms().keys()).collect();
    monos.into_iter().map(|m| vectors.iter().map(|x| x.coefficient(m)).collect()).collect()
}

/// Coefficients `c` with `target = Σ c_i vectors_i`, chosen to vanish on
/// dependent vectors; `Err(ranks)` with the word and augmented ranks when
/// the target is outside the span.
pub fn express_in_span(target: &Element, vectors: &[Element]) -> Result<std::result::Result<Vec<RatFunc>, (usize, usize)>> {
    let p = target.presentation();
    if vectors.iter().any(|v| v.presentation().id() != p.id()) {
        return Err(Error::MixedPresentations);
    }
    let mut all: Vec<&Element> = vectors.iter().collect();
    all.push(target);
    let n = vectors.len();
    let mut words_only = Eliminator::new(n + 1);
    let mut with_target = Eliminator::with_rule(n + 1, PivotRule::Leading);
    for row in coordinate_rows(&all) {
        let (r, _) = clear_denominators(&row);
        let mut w = r.clone();
        w[n] = Poly::zero();
        words_only.push(w);
        with_target.push(r);
    }
    // With leading pivots, a pivot in the last column means the target is independent.
    if with_target.pivots.contains(&n) {
        return Ok(Err((words_only.rank(), with_target.rank())));
    }
    let v = with_target.kernel().pop().expect("target column is free");
    Ok(Ok(v[..n].iter().map(|c| -c).collect()))
}

/// Write `target` as a `Q(k)`-combination of the words of its weight in `gens`.
pub fn find_relation(target: &Element, gens: &[NamedElement]) -> Result<RelationOutcome> {
    let p = target.presentation();
    if gens.iter().any(|g| g.element.presentation().id() != p.id()) {
        return Err(Error::MixedPresentations);
    }
    let ws = words(gens, &target.weight()?)?;
    let vectors: Vec<Element> = ws.iter().map(|w| w.element.clone()).collect();
    let coeffs = match express_in_span(target, &vectors)? {
        Ok(c) => c,
        Err((word_rank, augmented_rank)) => return Ok(RelationOutcome::Obstruction { word_rank, augmented_rank }),
    };
    let mut terms = Vec::new();
    let mut multiplier = Poly::one();
    for (w, c) in ws.into_iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let d = c.denom();
        multiplier = (&multiplier * d).div_exact(&multiplier.gcd(d)).expect("lcm");
        terms.push((w, c));
    }
    let rel = Relation { terms, multiplier: multiplier.monic() };
    if rel.combination(p) != *target {
        return Err(Error::Usage("relation does not reproduce the target".into()));
    }
    Ok(RelationOutcome::Found(rel))
}

#[derive(Clone, Debug)]
pub struct Decoupling {
    pub weight: Rational,
    pub commutant_dimension: usize,
    /// The lift `W`: the commutant element agreeing with the pattern on its symbol monomials.
    pub lift: Element,
    /// `W = Σ c_i word_i`; its multiplier is `λ` up to a constant.
    pub relation: Relation,
    pub roots: Vec<Rational>,
    pub irrational_factor: Option<Poly>,
    /// Poles of the generator coefficients, reported apart from the roots.
    pub poles: Vec<Rational>,
    /// Levels where the words themselves become dependent (gcd of maximal minors).
    pub word_dependencies: Vec<Rational>,
}

impl Decoupling {
    pub fn to_json(&self) -> serde_json::Value {
        let r = |v: &[Rational]| v.iter().map(render_rational).collect::<Vec<_>>();
        serde_json::json!({
            "weight": render_rational(&self.weight),
            "commutant_dimension": self.commutant_dimension,
            "lift": self.lift.to_text(),
            "relation": self.relation.to_text(),
            "multiplier": self.relation.multiplier.render("k"),
            "roots": r(&self.roots),
            "irrational_factor": self.irrational_factor.as_ref().map(|q| q.render("k")),
            "poles": r(&self.poles),
            "word_dependencies": r(&self.word_dependencies),
        })
    }
}

/// Generator ids of a monomial, derivatives forgotten.
fn symbol(m: &Monomial) -> Vec<u16> {
    m.iter().map(|f| f.gen).collect()
}

/// Decouple the commutant element lifting `pattern` through words in `gens`.
///
/// `pattern` fixes a lift `W` of weight `w` in the commutant of `currents`:
/// on every basis monomial whose generator content (derivatives ignored)
/// occurs in `pattern`, `W` has the coefficient of `pattern`. The lift must
/// be unique. Then `W` is written through the words of weight `w` in `gens`,
/// and the rational roots of the lcm of the coefficient denominators are the
/// levels where `W` fails to decouple.
pub fn decoupling_multiplier(
    p: &std::sync::Arc<VAPresentation>,
    currents: &[Element],
    gens: &[NamedElement],
    pattern: &Element,
) -> Result<Decoupling> {
    let w = pattern.weight()?;
    let report = commutant_basis(p, currents, &w)?;
    let symbols: BTreeSet<Vec<u16>> = pattern.terms().keys().map(symbol).collect();
    let support: Vec<&Monomial> = report.basis.monomials.iter().filter(|m| symbols.contains(&symbol(m))).collect();
    let d = report.dimension();
    let mut lift_system = Eliminator::with_rule(d + 1, PivotRule::Leading);
    for m in &support {
        let mut row: Vec<RatFunc> = report.kernel.iter().map(|x| x.coefficient(m)).collect();
        row.push(-pattern.coefficient(m));
        lift_system.push(clear_denominators(&row).0);
    }
    if lift_system.pivots.contains(&d) {
        return Err(Error::Usage("the pattern has no lift to the commutant".into()));
    }
    if lift_system.rank() != d {
        return Err(Error::Usage(format!(
            "the pattern fixes only {} of {d} commutant coordinates, so its lift is not unique",
            lift_system.rank()
        )));
    }
    let coords = lift_system.kernel().pop().expect("one free column");
    let lift = (0..d).fold(Element::zero(p), |acc, i| &acc + &report.kernel[i].scale(&coords[i]));

    let ws = words(gens, &w)?;
    let mut span = Eliminator::new(report.basis.len());
    let mut rows = Vec::new();
    for word in &ws {
        let mut row = vec![RatFunc::zero(); report.basis.len()];
        for (m, c) in word.element.terms() {
            let j = report
                .basis
                .position(m)
                .ok_or_else(|| Error::Usage(format!("word {} leaves the commutant basis", word.label)))?;
            row[j] = c.clone();
        }
        let (r, _) = clear_denominators(&row);
        span.push(r.clone());
        rows.push(r);
    }
    if span.rank() != d {
        return Err(Error::DecouplingHypothesis { commutant: d, words: span.rank() });
    }
    let relation = match find_relation(&lift, gens)? {
        RelationOutcome::Found(r) => r,
        RelationOutcome::Obstruction { word_rank, .. } => {
            return Err(Error::DecouplingHypothesis { commutant: d, words: word_rank })
        }
    };
    let roots = rational_roots(&relation.multiplier)?;
    let mut pole_poly = Poly::one();
    for g in gens {
        for c in g.element.terms().values() {
            let den = c.denom();
            pole_poly = (&pole_poly * den).div_exact(&pole_poly.gcd(den)).expect("lcm");
        }
    }
    let poles = if pole_poly.is_constant() { Vec::new() } else { rational_roots(&pole_poly)?.root_set() };
    let module = row_module_basis(rows.into_iter().filter(|r| r.iter().any(|q| !q.is_zero())).collect());
    let minors = maximal_minor_gcd(&module);
    let word_dependencies = if minors.is_constant() { Vec::new() } else { rational_roots(&minors)?.root_set() };
    Ok(Decoupling {
        weight: w,
        commutant_dimension: d,
        lift,
        roots: roots.root_set(),
        irrational_factor: roots.remainder,
        relation,
        poles,
        word_dependencies,
    })
}
