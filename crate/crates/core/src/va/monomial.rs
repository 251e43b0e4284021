use std::collections::BTreeMap;

use crate::coeff::RatFunc;

/// `∂^deriv g` for the generator with index `gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    pub gen: u16,
    pub deriv: u16,
}

impl Field {
    pub fn new(gen: usize, deriv: usize) -> Self {
        Field { gen: gen as u16, deriv: deriv as u16 }
    }

    pub fn plain(gen: usize) -> Self {
        Field::new(gen, 0)
    }

    pub fn raised(self, by: usize) -> Self {
        Field { gen: self.gen, deriv: self.deriv + by as u16 }
    }
}

/// Right-nested normally ordered word, factors sorted ascending. The empty
/// word is the vacuum.
pub type Monomial = Vec<Field>;

/// Finite linear combination of canonical monomials; zero coefficients are
/// never stored.
pub type Vector = BTreeMap<Monomial, RatFunc>;

pub fn vacuum_vector() -> Vector {
    let mut v = Vector::new();
    v.insert(Vec::new(), RatFunc::one());
    v
}

pub fn single(m: Monomial, c: RatFunc) -> Vector {
    let mut v = Vector::new();
    if !c.is_zero() {
        v.insert(m, c);
    }
    v
}

pub fn add_term(v: &mut Vector, m: &Monomial, c: &RatFunc) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(m) {
        Some(x) => {
            let s = &*x + c;
            if s.is_zero() {
                v.remove(m);
            } else {
                *x = s;
            }
        }
        None => {
            v.insert(m.clone(), c.clone());
        }
    }
}

/// `acc += c * v`.
pub fn axpy(acc: &mut Vector, c: &RatFunc, v: &Vector) {
    if c.is_zero() {
        return;
    }
    if c.is_one() {
        for (m, x) in v {
            add_term(acc, m, x);
        }
    } else {
        for (m, x) in v {
            add_term(acc, m, &(c * x));
        }
    }
}

pub fn scale_vector(v: &Vector, c: &RatFunc) -> Vector {
    if c.is_zero() {
        return Vector::new();
    }
    v.iter().map(|(m, x)| (m.clone(), x * c)).collect()
}

/// Rename generator ids, keeping sortedness (the map must be monotone).
pub fn shift_vector(v: &Vector, offset: usize) -> Vector {
    v.iter()
        .map(|(m, c)| {
            let m2 = m.iter().map(|f| Field { gen: f.gen + offset as u16, deriv: f.deriv }).collect();
            (m2, c.clone())
        })
        .collect()
}
