//! Mode calculus on canonical monomials.
//!
//! Everything reduces to three primitives on a sorted monomial `w`:
//! a generator mode `g_(m) w`, the insertion `F_(-1) w` of a field into
//! sorted position, and the derivative. Composite modes use the Borcherds
//! expansion of `(A_(-1) R)_(n)`. Results are memoized per presentation;
//! the memo tables behave as caches, so concurrent fills are idempotent.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use parking_lot::RwLock;

use super::monomial::{add_term, axpy, Field, Monomial, Vector};
use super::presentation::VAPresentation;
use crate::coeff::{RatFunc, Rational};

type Memo<K> = RwLock<HashMap<K, Arc<Vector>>>;

#[derive(Default)]
pub(crate) struct Cache {
    insert: Memo<(Field, Monomial)>,
    gen_mode: Memo<(u16, i64, Monomial)>,
    mode: Memo<(Monomial, i64, Monomial)>,
    bracket: Memo<(u16, i64, Field)>,
    deriv: Memo<Monomial>,
}

fn lookup<K: Hash + Eq + Clone>(memo: &Memo<K>, key: &K, f: impl FnOnce() -> Vector) -> Arc<Vector> {
    if let Some(v) = memo.read().get(key) {
        return v.clone();
    }
    let v = Arc::new(f());
    memo.write().entry(key.clone()).or_insert(v).clone()
}

pub(crate) fn factorial(n: u64) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

/// Falling factorial `n (n-1) ... (n-d+1)`.
fn falling(n: i64, d: u16) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..d as i64 {
        acc *= BigInt::from(n - i);
    }
    Rational::from_integer(acc)
}

pub(crate) fn binomial(m: i64, j: i64) -> Rational {
    // Generalized binomial for any integer m and j >= 0.
    falling(m, j as u16) / factorial(j as u64)
}

fn floor(r: Rational64) -> i64 {
    r.floor().to_integer()
}

impl VAPresentation {
    pub(crate) fn field_weight(&self, f: Field) -> Rational64 {
        self.generators[f.gen as usize].weight + Rational64::from_integer(f.deriv as i64)
    }

    pub(crate) fn mono_weight(&self, m: &[Field]) -> Rational64 {
        m.iter().map(|f| self.field_weight(*f)).sum()
    }

    pub(crate) fn field_odd(&self, f: Field) -> bool {
        self.generators[f.gen as usize].parity.is_odd()
    }

    pub(crate) fn mono_odd(&self, m: &[Field]) -> bool {
        m.iter().filter(|f| self.field_odd(**f)).count() % 2 == 1
    }

    /// `g_(j) (∂^e h)` for `j >= 0`.
    pub(crate) fn gen_bracket(&self, g: u16, j: i64, h: Field) -> Arc<Vector> {
        let gw = self.generators[g as usize].weight;
        if j < 0 || Rational64::from_integer(j) > gw + self.field_weight(h) - Rational64::one() {
            return Arc::new(Vector::new());
        }
        if h.deriv == 0 {
            let v = self.table_entry(g as usize, h.gen as usize, j as usize).cloned().unwrap_or_default();
            return Arc::new(v);
        }
        lookup(&self.cache.bracket, &(g, j, h), || {
            let lower = Field { gen: h.gen, deriv: h.deriv - 1 };
            let mut out = self.derivative_vec(&self.gen_bracket(g, j, lower));
            if j >= 1 {
                let c = RatFunc::constant(Rational::from_integer(j.into()));
                axpy(&mut out, &c, &self.gen_bracket(g, j - 1, lower));
            }
            out
        })
    }

    /// `F_(j) G` for fields and `j >= 0`.
    pub(crate) fn field_bracket(&self, f: Field, j: i64, g: Field) -> Vector {
        let c = falling(j, f.deriv);
        if c.is_zero() {
            return Vector::new();
        }
        let c = if f.deriv % 2 == 1 { -c } else { c };
        let v = self.gen_bracket(f.gen, j - f.deriv as i64, g);
        scale(&v, &c)
    }

    pub(crate) fn derivative_mono(&self, m: &Monomial) -> Arc<Vector> {
        if m.is_empty() {
            return Arc::new(Vector::new());
        }
        if m.len() == 1 {
            let mut v = Vector::new();
            v.insert(vec![m[0].raised(1)], RatFunc::one());
            return Arc::new(v);
        }
        lookup(&self.cache.deriv, m, || {
            let a = m[0];
            let rest = m[1..].to_vec();
            let mut out = (*self.insert(a.raised(1), &rest)).clone();
            for (t, c) in self.derivative_mono(&rest).iter() {
                axpy(&mut out, c, &self.insert(a, t));
            }
            out
        })
    }

    pub(crate) fn derivative_vec(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (m, c) in v {
            axpy(&mut out, c, &self.derivative_mono(m));
        }
        out
    }

    /// `F_(-1) w`, the canonical form of prepending `F`.
    pub(crate) fn insert(&self, f: Field, w: &Monomial) -> Arc<Vector> {
        let prepend = |w: &Monomial| {
            let mut m = Vec::with_capacity(w.len() + 1);
            m.push(f);
            m.extend_from_slice(w);
            let mut v = Vector::new();
            v.insert(m, RatFunc::one());
            v
        };
        match w.first() {
            None => return Arc::new(prepend(w)),
            Some(&b) if f < b || (f == b && !self.field_odd(f)) => return Arc::new(prepend(w)),
            _ => {}
        }
        lookup(&self.cache.insert, &(f, w.clone()), || {
            let b = w[0];
            let rest = w[1..].to_vec();
            let mut out = Vector::new();
            // Commutator [F_(-1), B_(-1)] = sum_j (-1)^j (F_(j) B)_(-2-j).
            let jmax = floor(self.field_weight(f) + self.field_weight(b) - Rational64::one());
            let mut comm = Vector::new();
            for j in 0..=jmax.max(-1) {
                let br = self.field_bracket(f, j, b);
                if br.is_empty() {
                    continue;
                }
                let sign = if j % 2 == 0 { RatFunc::one() } else { -RatFunc::one() };
                for (u, c) in &br {
                    axpy(&mut comm, &(&sign * c), &self.mode(u, -2 - j, &rest));
                }
            }
            if f == b {
                // Odd square: F_(-1) F_(-1) = (1/2) [F_(-1), F_(-1)].
                axpy(&mut out, &RatFunc::from_frac(1, 2), &comm);
            } else {
                let eps = if self.field_odd(f) && self.field_odd(b) { -RatFunc::one() } else { RatFunc::one() };
                let inner = self.insert(f, &rest);
                for (t, c) in inner.iter() {
                    axpy(&mut out, &(&eps * c), &self.insert(b, t));
                }
                axpy(&mut out, &RatFunc::one(), &comm);
            }
            out
        })
    }

    /// `g_(m) w` for a generator and any integer `m`.
    pub(crate) fn gen_mode(&self, g: u16, m: i64, w: &Monomial) -> Arc<Vector> {
        if m < 0 {
            let d = (-m - 1) as usize;
            let v = self.insert(Field { gen: g, deriv: d as u16 }, w);
            if d <= 1 {
                return v;
            }
            return Arc::new(scale(&v, &factorial(d as u64).recip()));
        }
        if w.is_empty() {
            return Arc::new(Vector::new());
        }
        let gw = self.generators[g as usize].weight;
        if gw + self.mono_weight(w) - Rational64::from_integer(m + 1) < Rational64::zero() {
            return Arc::new(Vector::new());
        }
        lookup(&self.cache.gen_mode, &(g, m, w.clone()), || {
            let b = w[0];
            let rest = w[1..].to_vec();
            let mut out = Vector::new();
            let jmax = m.min(floor(gw + self.field_weight(b) - Rational64::one()));
            for j in 0..=jmax {
                let br = self.gen_bracket(g, j, b);
                if br.is_empty() {
                    continue;
                }
                let c = RatFunc::constant(binomial(m, j));
                for (u, x) in br.iter() {
                    axpy(&mut out, &(&c * x), &self.mode(u, m - 1 - j, &rest));
                }
            }
            let inner = self.gen_mode(g, m, &rest);
            if !inner.is_empty() {
                let odd = self.generators[g as usize].parity.is_odd() && self.field_odd(b);
                let eps = if odd { -RatFunc::one() } else { RatFunc::one() };
                for (t, c) in inner.iter() {
                    axpy(&mut out, &(&eps * c), &self.insert(b, t));
                }
            }
            out
        })
    }

    /// `F_(n) w` for a single field.
    pub(crate) fn field_mode(&self, f: Field, n: i64, w: &Monomial) -> Arc<Vector> {
        if f.deriv == 0 {
            return self.gen_mode(f.gen, n, w);
        }
        if n < 0 {
            let j = (-n - 1) as usize;
            let v = self.insert(f.raised(j), w);
            if j <= 1 {
                return v;
            }
            return Arc::new(scale(&v, &factorial(j as u64).recip()));
        }
        let c = falling(n, f.deriv);
        if c.is_zero() {
            return Arc::new(Vector::new());
        }
        let c = if f.deriv % 2 == 1 { -c } else { c };
        Arc::new(scale(&self.gen_mode(f.gen, n - f.deriv as i64, w), &c))
    }

    /// `u_(n) w` for monomials and any integer `n`.
    pub(crate) fn mode(&self, u: &Monomial, n: i64, w: &Monomial) -> Arc<Vector> {
        if u.is_empty() {
            let mut v = Vector::new();
            if n == -1 {
                v.insert(w.clone(), RatFunc::one());
            }
            return Arc::new(v);
        }
        if u.len() == 1 {
            return self.field_mode(u[0], n, w);
        }
        let wu = self.mono_weight(u);
        let ww = self.mono_weight(w);
        if wu + ww - Rational64::from_integer(n + 1) < Rational64::zero() {
            return Arc::new(Vector::new());
        }
        if w.is_empty() && n >= 0 {
            return Arc::new(Vector::new());
        }
        lookup(&self.cache.mode, &(u.clone(), n, w.clone()), || {
            let a = u[0];
            let r = u[1..].to_vec();
            let wr = self.mono_weight(&r);
            let mut out = Vector::new();
            // sum_j A_(-1-j) (R_(n+j) w)
            let jmax = floor(wr + ww - Rational64::one()) - n;
            for j in 0..=jmax.max(-1) {
                let x = self.mode(&r, n + j, w);
                if x.is_empty() {
                    continue;
                }
                let inv = factorial(j as u64).recip();
                let c = RatFunc::constant(inv);
                for (t, y) in x.iter() {
                    axpy(&mut out, &(&c * y), &self.insert(a.raised(j as usize), t));
                }
            }
            // eps * sum_j R_(n-1-j) (A_(j) w)
            let eps = if self.field_odd(a) && self.mono_odd(&r) { -RatFunc::one() } else { RatFunc::one() };
            let jmax = floor(self.field_weight(a) + ww - Rational64::one());
            for j in 0..=jmax.max(-1) {
                let y = self.field_mode(a, j, w);
                for (t, c) in y.iter() {
                    axpy(&mut out, &(&eps * c), &self.mode(&r, n - 1 - j, t));
                }
            }
            out
        })
    }

    pub(crate) fn mode_vec(&self, u: &Vector, n: i64, w: &Vector) -> Vector {
        let mut out = Vector::new();
        for (a, ca) in u {
            for (b, cb) in w {
                let c = ca * cb;
                let r = self.mode(a, n, b);
                for (m, x) in r.iter() {
                    add_term(&mut out, m, &(&c * x));
                }
            }
        }
        out
    }

    /// Number of entries across all memo tables.
    pub fn cache_size(&self) -> usize {
        let c = &self.cache;
        c.insert.read().len() + c.gen_mode.read().len() + c.mode.read().len() + c.bracket.read().len() + c.deriv.read().len()
    }
}

fn scale(v: &Vector, c: &Rational) -> Vector {
    if c.is_one() {
        return v.clone();
    }
    v.iter().map(|(m, x)| (m.clone(), x.scale(c))).collect()
}
