//! Algebra definition files and built-in algebra names.
//!
//! Built-in names are `family:parameter` strings joined by `&` for tensor
//! products, for example `affine:sl2@k`, `betagamma:1 & symplectic:1`,
//! `tau:1` (the target of τ with its currents), `n2` or `sl3-roots`.
//!
//! A definition file is a JSON document:
//!
//! ```json
//! {
//!   "lie": { "name": "sl2", "basis": [{"name": "H", "parity": "even"}],
//!            "constants": [[0, 1, [[1, "2"]]]], "form": [["2"]] },
//!   "algebra": "affine:custom@k",
//!   "currents": ["H"],
//!   "elements": { "W": ":Xp Xm:" },
//!   "checks": [{ "kind": "commutant", "weight": "2", "dimension": 1 }]
//! }
//! ```
//!
//! All numbers are exact `p/q` strings. Every section except `algebra` is optional.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::coeff::{parse_ratfunc, parse_rational, RatFunc, Rational};
use crate::constructions::{
    affine, bc_system, beta_gamma, deformable_form, free_fermion, heisenberg, limit_presentation, n2_ambient,
    primary_test, sigma_embedding, sl3_root_heisenberg, symplectic_fermion, tau_embedding, virasoro_test,
    EmbeddingImage, NamedElement,
};
use crate::error::{Error, Result};
use crate::lie::{builtin_lie, lie_from_constants, BasisElement, LiePresentation, Parity};
use crate::linear::{commutant_basis, find_relation, nongeneric_levels, RelationOutcome};
use crate::suites::{Check, SuiteReport};
use crate::va::{check_presentation, parse_element, tensor_product, Element, VAPresentation};

/// A resolved algebra together with currents attached by its name (`tau:n`, `sigma:m`, `affine:...`).
#[derive(Clone, Debug)]
pub struct Resolved {
    pub presentation: Arc<VAPresentation>,
    pub currents: Vec<Element>,
}

fn resolve_lie(name: &str, custom: Option<&LiePresentation>) -> Result<LiePresentation> {
    match (name, custom) {
        ("custom", Some(l)) => Ok(l.clone()),
        ("custom", None) => Err(Error::Usage("`custom` needs a \"lie\" section".into())),
        _ => builtin_lie(name),
    }
}

fn count(family: &str, arg: &str) -> Result<usize> {
    arg.trim().parse().map_err(|_| Error::UnknownFamily(format!("{family}:{arg}")))
}

fn resolve_factor(text: &str, custom: Option<&LiePresentation>) -> Result<Resolved> {
    let text = text.trim();
    let plain = |p: Arc<VAPresentation>| Resolved { presentation: p, currents: Vec::new() };
    let embedded = |e: EmbeddingImage| Resolved { presentation: e.target.clone(), currents: e.images };
    let (family, arg) = text.split_once(':').unwrap_or((text, ""));
    match family {
        "affine" => {
            let (lie, level) = arg.split_once('@').unwrap_or((arg, "k"));
            let p = affine(&resolve_lie(lie, custom)?, parse_ratfunc(level)?)?;
            let currents = (0..p.len()).map(|i| Element::generator(&p, i)).collect();
            Ok(Resolved { presentation: p, currents })
        }
        "deformable" => Ok(plain(deformable_form(&*affine(&resolve_lie(arg, custom)?, RatFunc::var())?)?)),
        "limit" => {
            let d = deformable_form(&*affine(&resolve_lie(arg, custom)?, RatFunc::var())?)?;
            Ok(plain(limit_presentation(&d)?))
        }
        "heisenberg" => Ok(plain(heisenberg(count(family, arg)?)?)),
        "fermion" => Ok(plain(free_fermion(count(family, arg)?)?)),
        "bc" => Ok(plain(bc_system(count(family, arg)?)?)),
        "betagamma" => Ok(plain(beta_gamma(count(family, arg)?)?)),
        "symplectic" => Ok(plain(symplectic_fermion(count(family, arg)?)?)),
        "tau" => Ok(embedded(tau_embedding(count(family, arg)?)?)),
        "sigma" => Ok(embedded(sigma_embedding(count(family, arg)?)?)),
        "n2" if arg.is_empty() => Ok(plain(n2_ambient()?)),
        "sl3-roots" if arg.is_empty() => Ok(plain(sl3_root_heisenberg()?)),
        _ => Err(Error::UnknownFamily(text.to_string())),
    }
}

/// Resolve a built-in algebra name; factors joined by `&` are tensored and
/// their currents are lifted into the product.
pub fn resolve_algebra(text: &str) -> Result<Resolved> {
    resolve_with(text, None)
}

fn resolve_with(text: &str, custom: Option<&LiePresentation>) -> Result<Resolved> {
    let mut factors = text.split('&').map(|t| resolve_factor(t, custom));
    let mut acc = factors.next().ok_or_else(|| Error::Usage("empty algebra name".into()))??;
    for f in factors {
        let f = f?;
        let p = tensor_product(&acc.presentation, &f.presentation)?;
        let offset = acc.presentation.len();
        let mut currents: Vec<Element> = acc.currents.iter().map(|x| x.transport(&p)).collect();
        currents.extend(f.currents.iter().map(|x| {
            Element::from_vector(&p, crate::va::monomial::shift_vector(x.terms(), offset))
        }));
        acc = Resolved { presentation: p, currents };
    }
    Ok(acc)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LieSection {
    name: String,
    basis: Vec<BasisSpec>,
    #[serde(default)]
    constants: Vec<(usize, usize, Vec<(usize, String)>)>,
    form: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisSpec {
    name: String,
    #[serde(default)]
    parity: ParitySpec,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ParitySpec {
    #[default]
    Even,
    Odd,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSpec {
    #[serde(default)]
    lie: Option<LieSection>,
    algebra: String,
    #[serde(default)]
    currents: Option<Vec<String>>,
    #[serde(default)]
    elements: BTreeMap<String, String>,
    #[serde(default)]
    checks: Vec<CheckSpec>,
}

/// One check of a definition file. Element fields accept a name from
/// `elements` or an inline expression.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CheckSpec {
    /// Skew-symmetry and Jacobi on all generators.
    Presentation,
    Virasoro {
        element: String,
        #[serde(default)]
        central_charge: Option<String>,
    },
    Primary {
        virasoro: String,
        element: String,
        #[serde(default)]
        weight: Option<String>,
    },
    Equal { left: String, right: String },
    /// All nonnegative products of the currents with the element vanish.
    InCommutant { element: String },
    Commutant {
        weight: String,
        #[serde(default)]
        dimension: Option<usize>,
        #[serde(default)]
        nongeneric: Option<Vec<String>>,
    },
    Relation {
        target: String,
        generators: Vec<String>,
        #[serde(default)]
        multiplier_roots: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub presentation: Arc<VAPresentation>,
    pub currents: Vec<Element>,
    /// Named elements in file order of their names (sorted).
    pub elements: Vec<NamedElement>,
    pub checks: Vec<CheckSpec>,
}

fn build_lie(s: &LieSection) -> Result<LiePresentation> {
    let basis = s
        .basis
        .iter()
        .map(|b| BasisElement {
            name: b.name.clone(),
            parity: match b.parity {
                ParitySpec::Even => Parity::Even,
                ParitySpec::Odd => Parity::Odd,
            },
        })
        .collect();
    let constants = s
        .constants
        .iter()
        .map(|(i, j, v)| Ok((*i, *j, v.iter().map(|(m, c)| Ok((*m, parse_rational(c)?))).collect::<Result<Vec<_>>>()?)))
        .collect::<Result<Vec<_>>>()?;
    let form = s
        .form
        .iter()
        .map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<Rational>>>())
        .collect::<Result<Vec<_>>>()?;
    lie_from_constants(&s.name, basis, &constants, form)
}

impl Definition {
    pub fn from_json(text: &str) -> Result<Definition> {
        let spec: FileSpec =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("definition file: {e}")))?;
        let lie = spec.lie.as_ref().map(build_lie).transpose()?;
        let resolved = resolve_with(&spec.algebra, lie.as_ref())?;
        let p = resolved.presentation;
        let mut elements = Vec::new();
        for (name, expr) in &spec.elements {
            elements.push(NamedElement { label: name.clone(), element: parse_element(&p, expr)? });
        }
        let mut def = Definition { presentation: p, currents: resolved.currents, elements, checks: spec.checks };
        if let Some(cs) = &spec.currents {
            def.currents = cs.iter().map(|c| def.element(c)).collect::<Result<_>>()?;
        }
        Ok(def)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Definition> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// A named element, or else the text parsed as an expression.
    pub fn element(&self, text: &str) -> Result<Element> {
        match self.elements.iter().find(|e| e.label == text) {
            Some(e) => Ok(e.element.clone()),
            None => parse_element(&self.presentation, text),
        }
    }

    fn named(&self, text: &str) -> Result<NamedElement> {
        Ok(NamedElement { label: text.to_string(), element: self.element(text)? })
    }

    pub fn run_checks(&self, suite: &str) -> Result<SuiteReport> {
        let list = self.checks.iter().map(|c| self.compile(c)).collect::<Result<Vec<_>>>()?;
        Ok(crate::suites::run_checks(suite, &list))
    }

    /// Resolve names now so input errors surface before anything runs.
    fn compile(&self, spec: &CheckSpec) -> Result<Check> {
        let boxed = |name: String, f: Box<dyn Fn() -> Result<(bool, String)> + Send + Sync>| Check { name, run: f };
        Ok(match spec.clone() {
            CheckSpec::Presentation => {
                let p = self.presentation.clone();
                boxed(
                    "presentation".into(),
                    Box::new(move || {
                        let r = check_presentation(&p);
                        Ok((
                            r.ok(),
                            format!(
                                "{} pairs, {} triples; failures: {:?}",
                                r.pairs_checked,
                                r.triples_checked,
                                r.skew_failures.iter().chain(&r.jacobi_failures).collect::<Vec<_>>()
                            ),
                        ))
                    }),
                )
            }
            CheckSpec::Virasoro { element, central_charge } => {
                let l = self.element(&element)?;
                let want = central_charge.as_deref().map(parse_ratfunc).transpose()?;
                boxed(
                    format!("virasoro {element}"),
                    Box::new(move || {
                        let r = virasoro_test(&l)?;
                        let ok = r.ok && want.as_ref().is_none_or(|c| *c == r.central_charge);
                        Ok((ok, format!("c = {} {}", r.central_charge, r.detail)))
                    }),
                )
            }
            CheckSpec::Primary { virasoro, element, weight } => {
                let l = self.element(&virasoro)?;
                let a = self.element(&element)?;
                let want = weight.as_deref().map(parse_ratfunc).transpose()?;
                boxed(
                    format!("primary {element}"),
                    Box::new(move || {
                        let r = primary_test(&l, &a)?;
                        let ok = r.ok && want.as_ref().is_none_or(|w| *w == r.weight);
                        Ok((ok, format!("weight {} {}", r.weight, r.detail)))
                    }),
                )
            }
            CheckSpec::Equal { left, right } => {
                let (a, b) = (self.element(&left)?, self.element(&right)?);
                boxed(
                    format!("{left} = {right}"),
                    Box::new(move || Ok((a == b, format!("difference {}", (&a - &b).to_text())))),
                )
            }
            CheckSpec::InCommutant { element } => {
                let x = self.element(&element)?;
                let currents = self.currents.clone();
                boxed(
                    format!("{element} in commutant"),
                    Box::new(move || {
                        let top = x.weight()?.ceil().to_integer().try_into().unwrap_or(i64::MAX);
                        let mut bad = Vec::new();
                        for (i, c) in currents.iter().enumerate() {
                            for n in 0..=top {
                                if !c.nth_product(&x, n)?.is_zero() {
                                    bad.push(format!("current {i} mode {n}"));
                                }
                            }
                        }
                        Ok((bad.is_empty(), format!("nonzero: {bad:?}")))
                    }),
                )
            }
            CheckSpec::Commutant { weight, dimension, nongeneric } => {
                let w = parse_rational(&weight)?;
                let want_levels = nongeneric
                    .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                    .transpose()?;
                let (p, currents) = (self.presentation.clone(), self.currents.clone());
                boxed(
                    format!("commutant at weight {weight}"),
                    Box::new(move || {
                        let r = commutant_basis(&p, &currents, &w)?;
                        let mut ok = dimension.is_none_or(|d| d == r.dimension());
                        let mut detail = format!("dimension {}", r.dimension());
                        if let Some(levels) = &want_levels {
                            let got = nongeneric_levels(&r)?.certified();
                            ok &= got == *levels;
                            detail.push_str(&format!(", certified levels {:?}", got.iter().map(ToString::to_string).collect::<Vec<_>>()));
                        }
                        Ok((ok, detail))
                    }),
                )
            }
            CheckSpec::Relation { target, generators, multiplier_roots } => {
                let t = self.element(&target)?;
                let gens = generators.iter().map(|g| self.named(g)).collect::<Result<Vec<_>>>()?;
                let want = multiplier_roots
                    .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                    .transpose()?;
                let label = target.clone();
                boxed(
                    format!("relation for {target}"),
                    Box::new(move || match find_relation(&t, &gens)? {
                        RelationOutcome::Found(rel) => {
                            let roots = crate::coeff::rational_roots(&rel.multiplier)?.root_set();
                            let ok = want.as_ref().is_none_or(|w| *w == roots);
                            Ok((ok, format!("{label} = {}", rel.to_text())))
                        }
                        RelationOutcome::Obstruction { word_rank, augmented_rank } => {
                            Ok((false, format!("not in the span of words: ranks {word_rank} and {augmented_rank}")))
                        }
                    }),
                )
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_tensor_products_with_currents() {
        let r = resolve_algebra("tau:1 & affine:sl2@k").unwrap();
        assert_eq!(r.presentation.len(), 5);
        assert_eq!(r.currents.len(), 6);
        assert!(matches!(resolve_algebra("nonsense:3"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn custom_lie_section() {
        let text = r#"{
            "lie": {"name": "u1", "basis": [{"name": "J"}], "form": [["1"]]},
            "algebra": "affine:custom@k",
            "elements": {"L": "(1/(2*k))*:J J:"},
            "checks": [{"kind": "virasoro", "element": "L", "central_charge": "1"}]
        }"#;
        let d = Definition::from_json(text).unwrap();
        assert!(d.run_checks("file").unwrap().passed());
    }
}
