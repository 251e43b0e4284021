use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Signed;

use super::engine::Cache;
use super::monomial::{shift_vector, Monomial, Vector};
use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::lie::{LiePresentation, Parity};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    pub weight: Rational64,
}

impl Generator {
    pub fn new(name: &str, parity: Parity, weight: Rational64) -> Self {
        Generator { name: name.to_string(), parity, weight }
    }
}

/// Interpretation of the formal parameter of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parameter {
    /// The affine level `k`.
    Level,
    /// `kappa` with `kappa^2 = k`.
    Kappa,
}

impl Parameter {
    pub fn symbol(self) -> &'static str {
        match self {
            Parameter::Level => "k",
            Parameter::Kappa => "kappa",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AffineData {
    pub lie: LiePresentation,
    pub level: RatFunc,
}

/// A tensor factor of a presentation, with optional metadata.
#[derive(Clone, Debug)]
pub struct Component {
    pub label: String,
    pub offset: usize,
    pub len: usize,
    pub affine: Option<AffineData>,
    /// Standard conformal vector of this factor, in global generator ids.
    pub virasoro: Option<Vector>,
}

/// `table[a][b][n] = a_(n) b` for generators a, b and n >= 0.
pub type BracketTable = Vec<Vec<Vec<Vector>>>;

pub struct VAPresentation {
    id: u64,
    pub name: String,
    pub generators: Vec<Generator>,
    table: BracketTable,
    pub parameter: Parameter,
    pub components: Vec<Component>,
    pub(crate) cache: Cache,
}

impl std::fmt::Debug for VAPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VAPresentation")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("parameter", &self.parameter)
            .finish()
    }
}

impl VAPresentation {
    /// Validate shapes and gradings and wrap. Every generator weight must be
    /// positive so that graded pieces of negative weight vanish.
    pub fn new(
        name: &str,
        generators: Vec<Generator>,
        table: BracketTable,
        parameter: Parameter,
        components: Vec<Component>,
    ) -> Result<Arc<Self>> {
        let n = generators.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPresentation("too many generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.weight.is_positive() {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} must have positive weight",
                    g.name
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator name {}", g.name)));
            }
            if !is_valid_name(&g.name) {
                return Err(Error::InvalidPresentation(format!("invalid generator name {}", g.name)));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPresentation(format!("bracket table must be {n}x{n}")));
        }
        let wt = |m: &Monomial| -> Rational64 {
            m.iter()
                .map(|f| generators[f.gen as usize].weight + Rational64::from_integer(f.deriv as i64))
                .sum()
        };
        let par = |m: &Monomial| m.iter().filter(|f| generators[f.gen as usize].parity.is_odd()).count() % 2 == 1;
        for a in 0..n {
            for b in 0..n {
                for (k, v) in table[a][b].iter().enumerate() {
                    let expect = generators[a].weight + generators[b].weight - Rational64::from_integer(k as i64 + 1);
                    let expect_par = generators[a].parity.add(generators[b].parity).is_odd();
                    for m in v.keys() {
                        if m.iter().any(|f| f.gen as usize >= n) {
                            return Err(Error::InvalidPresentation("bracket uses unknown generator".into()));
                        }
                        if wt(m) != expect || par(m) != expect_par {
                            return Err(Error::InvalidPresentation(format!(
                                "bracket {}_({k}) {} is not homogeneous of weight {expect}",
                                generators[a].name, generators[b].name
                            )));
                        }
                    }
                }
            }
        }
        let mut table = table;
        for row in table.iter_mut() {
            for entry in row.iter_mut() {
                while entry.last().is_some_and(|v| v.is_empty()) {
                    entry.pop();
                }
            }
        }
        let components = if components.is_empty() {
            vec![Component { label: name.to_string(), offset: 0, len: n, affine: None, virasoro: None }]
        } else {
            components
        };
        Ok(Arc::new(VAPresentation {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.to_string(),
            generators,
            table,
            parameter,
            components,
            cache: Cache::default(),
        }))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    /// `a_(n) b` for generators, `n >= 0`.
    pub fn table_entry(&self, a: usize, b: usize, n: usize) -> Option<&Vector> {
        self.table[a][b].get(n)
    }

    pub fn parity_of_gen(&self, g: usize) -> Parity {
        self.generators[g].parity
    }

    /// Whether every bracket coefficient is a constant.
    pub fn is_parameter_free(&self) -> bool {
        self.table
            .iter()
            .flatten()
            .flatten()
            .flat_map(|v| v.values())
            .all(|c| c.as_constant().is_some())
    }

    /// Sum of the component conformal vectors, if every component has one.
    pub fn standard_virasoro(&self) -> Option<Vector> {
        let mut acc = Vector::new();
        for c in &self.components {
            if c.len == 0 {
                continue;
            }
            let v = c.virasoro.as_ref()?;
            super::monomial::axpy(&mut acc, &RatFunc::one(), v);
        }
        Some(acc)
    }

    /// Same data with a fresh identity and empty memo tables.
    pub fn rebuild(&self, name: &str, table: BracketTable) -> Result<Arc<Self>> {
        VAPresentation::new(name, self.generators.clone(), table, self.parameter, self.components.clone())
    }
}

pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "D"
        && !crate::coeff::parse::PARAMETER_NAMES.contains(&s)
}

/// Disjoint union of generators with vanishing cross brackets. Clashing
/// names in the second factor get a numeric suffix.
pub fn tensor_product(p1: &VAPresentation, p2: &VAPresentation) -> Result<Arc<VAPresentation>> {
    let parameter = if p1.parameter == p2.parameter || p2.is_parameter_free() {
        p1.parameter
    } else if p1.is_parameter_free() {
        p2.parameter
    } else {
        return Err(Error::ParameterMismatch);
    };
    let n1 = p1.len();
    let n = n1 + p2.len();
    let mut gens = p1.generators.clone();
    for g in &p2.generators {
        let mut name = g.name.clone();
        let mut k = 2;
        while gens.iter().any(|h| h.name == name)
            || (name != g.name && p2.generators.iter().any(|h| h.name == name))
        {
            name = format!("{}_{k}", g.name);
            k += 1;
        }
        gens.push(Generator { name, ..g.clone() });
    }
    let mut table: BracketTable = vec![vec![Vec::new(); n]; n];
    for a in 0..n1 {
        for b in 0..n1 {
            table[a][b] = p1.table[a][b].clone();
        }
    }
    for a in 0..p2.len() {
        for b in 0..p2.len() {
            table[n1 + a][n1 + b] = p2.table[a][b].iter().map(|v| shift_vector(v, n1)).collect();
        }
    }
    let mut comps = p1.components.clone();
    for c in &p2.components {
        comps.push(Component {
            offset: c.offset + n1,
            virasoro: c.virasoro.as_ref().map(|v| shift_vector(v, n1)),
            ..c.clone()
        });
    }
    let name = if p1.is_empty() {
        p2.name.clone()
    } else if p2.is_empty() {
        p1.name.clone()
    } else {
        format!("{}*{}", p1.name, p2.name)
    };
    let comps: Vec<Component> = comps.into_iter().filter(|c| c.len > 0).collect();
    VAPresentation::new(&name, gens, table, parameter, comps)
}

/// The presentation with no generators (the one-dimensional vertex algebra).
pub fn trivial() -> Arc<VAPresentation> {
    VAPresentation::new("trivial", Vec::new(), Vec::new(), Parameter::Level, Vec::new()).expect("valid")
}

impl Component {
    pub fn contains(&self, gen: usize) -> bool {
        gen >= self.offset && gen < self.offset + self.len
    }
}

