//! Fock-space model of free-field algebras, used as an oracle for n-th products.
//!
//! A state is a combination of ordered products of creation modes
//! `g_(-1-d)` acting on the vacuum, stored with the pairs `(g, d)` sorted
//! ascending. Annihilation modes act through the canonical commutators of the
//! free fields; the modes of a normally ordered word come from the
//! normal-ordering formula, truncated by weight.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Modes = Vec<(usize, usize)>;
pub type State = BTreeMap<Modes, Q>;

pub struct FreeField {
    pub name: &'static str,
    odd: Vec<bool>,
    /// Twice the conformal weight of each generator.
    weight2: Vec<i64>,
    /// `(g, h, j, c)`: `g_(j) h = c |0>`, the only nonzero products of generators.
    pairing: Vec<(usize, usize, usize, i64)>,
}

impl FreeField {
    pub fn heisenberg() -> Self {
        FreeField { name: "heisenberg:1", odd: vec![false], weight2: vec![2], pairing: vec![(0, 0, 1, 1)] }
    }

    pub fn bc() -> Self {
        FreeField { name: "bc:1", odd: vec![true, true], weight2: vec![1, 1], pairing: vec![(0, 1, 0, 1), (1, 0, 0, 1)] }
    }

    pub fn betagamma() -> Self {
        FreeField {
            name: "betagamma:1",
            odd: vec![false, false],
            weight2: vec![1, 1],
            pairing: vec![(0, 1, 0, 1), (1, 0, 0, -1)],
        }
    }

    pub fn symplectic() -> Self {
        FreeField {
            name: "symplectic:1",
            odd: vec![true, true],
            weight2: vec![2, 2],
            pairing: vec![(0, 1, 1, 1), (1, 0, 1, -1)],
        }
    }

    /// The same fields with every pairing sign flipped; a control for the comparison.
    pub fn with_flipped_pairing(mut self) -> Self {
        self.pairing.iter_mut().for_each(|p| p.3 = -p.3);
        self
    }

    fn odd_count(&self, modes: &[(usize, usize)]) -> usize {
        modes.iter().filter(|(g, _)| self.odd[*g]).count()
    }

    pub fn weight2_of(&self, modes: &[(usize, usize)]) -> i64 {
        modes.iter().map(|&(g, d)| self.weight2[g] + 2 * d as i64).sum()
    }

    fn add(out: &mut State, m: Modes, c: Q) {
        if c.is_zero() {
            return;
        }
        *out.entry(m).or_insert_with(Q::zero) += c;
    }

    fn clean(mut s: State) -> State {
        s.retain(|_, c| !c.is_zero());
        s
    }

    /// `g_(-1-d)` applied to `s`.
    fn create(&self, g: usize, d: usize, s: &State) -> State {
        let mut out = State::new();
        for (modes, c) in s {
            let pos = modes.partition_point(|&x| x < (g, d));
            if self.odd[g] && modes.get(pos) == Some(&(g, d)) {
                continue;
            }
            let sign = if self.odd[g] && self.odd_count(&modes[..pos]) % 2 == 1 { -1 } else { 1 };
            let mut m = modes.clone();
            m.insert(pos, (g, d));
            Self::add(&mut out, m, c * Q::from_integer(sign.into()));
        }
        Self::clean(out)
    }

    /// `g_(n)` for `n ≥ 0`.
    fn annihilate(&self, g: usize, n: usize, s: &State) -> State {
        let mut out = State::new();
        for (modes, c) in s {
            for i in 0..modes.len() {
                let (h, d) = modes[i];
                for &(a, b, j, v) in &self.pairing {
                    if a != g || b != h || n != d + j {
                        continue;
                    }
                    // [g_(n), h_(-1-d)] = binom(n, j) (g_(j) h)
                    let mut coef = Q::from_integer((binom(n, j) * v).into());
                    if self.odd[g] && self.odd_count(&modes[..i]) % 2 == 1 {
                        coef = -coef;
                    }
                    let mut m = modes.clone();
                    m.remove(i);
                    Self::add(&mut out, m, c * coef);
                }
            }
        }
        Self::clean(out)
    }

    fn mode(&self, g: usize, n: i64, s: &State) -> State {
        if n < 0 {
            self.create(g, (-1 - n) as usize, s)
        } else {
            self.annihilate(g, n as usize, s)
        }
    }

    /// `(∂^d g)_(n) = (-1)^d n(n-1)...(n-d+1) g_(n-d)`.
    fn derived_mode(&self, g: usize, d: usize, n: i64, s: &State) -> State {
        let mut f = BigInt::one();
        for i in 0..d as i64 {
            f *= n - i;
        }
        if d % 2 == 1 {
            f = -f;
        }
        if f.is_zero() {
            return State::new();
        }
        scale(self.mode(g, n - d as i64, s), &Q::from_integer(f))
    }

    /// Mode `n` of the normally ordered word `:x_0 (x_1 (...)):` on a homogeneous state.
    pub fn word_mode(&self, x: &[(usize, usize)], n: i64, v: &State) -> State {
        let Some((&(g, d), rest)) = x.split_first() else {
            return if n == -1 { v.clone() } else { State::new() };
        };
        let mut out = State::new();
        for (modes, c) in v {
            let single: State = [(modes.clone(), c.clone())].into_iter().collect();
            let wv = self.weight2_of(modes);
            let wa = self.weight2[g] + 2 * d as i64;
            let wr = self.weight2_of(rest);
            // Σ_{j<0} a_(j) rest_(n-j-1) v: rest_(m) v vanishes once m exceeds wt(rest) + wt(v) - 1.
            let lower = n - (wr + wv).div_euclid(2);
            for j in lower..0 {
                let inner = self.word_mode(rest, n - j - 1, &single);
                accumulate(&mut out, self.derived_mode(g, d, j, &inner));
            }
            // ± Σ_{j≥0} rest_(n-j-1) a_(j) v: a_(j) v vanishes once j exceeds wt(a) + wt(v) - 1.
            let upper = (wa + wv).div_euclid(2) - 1;
            let sign = if self.odd[g] && self.odd_count(rest) % 2 == 1 { -Q::one() } else { Q::one() };
            for j in 0..=upper {
                let inner = self.derived_mode(g, d, j, &single);
                if inner.is_empty() {
                    continue;
                }
                accumulate(&mut out, scale(self.word_mode(rest, n - j - 1, &inner), &sign));
            }
        }
        Self::clean(out)
    }

    /// The state of `:x_0 (x_1 (...)):|0>`, that is `Π d_i! (g_i)_(-1-d_i) |0>`.
    pub fn word_state(&self, x: &[(usize, usize)]) -> State {
        let mut s: State = [(Vec::new(), Q::one())].into_iter().collect();
        for &(g, d) in x.iter().rev() {
            s = scale(self.create(g, d, &s), &Q::from_integer(factorial(d)));
        }
        s
    }
}

pub fn scale(s: State, c: &Q) -> State {
    if c.is_zero() {
        return State::new();
    }
    s.into_iter().map(|(m, v)| (m, v * c)).collect()
}

pub fn accumulate(out: &mut State, s: State) {
    for (m, c) in s {
        let e = out.entry(m).or_insert_with(Q::zero);
        *e += c;
    }
    out.retain(|_, c| !c.is_zero());
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
