//! Exact elimination over `Q[k]`.
//!
//! [`Eliminator`] is fraction-free Gauss-Jordan on streamed rows: a row is
//! reduced by `row <- p * row - row[c] * pivot_row` for each existing pivot,
//! then divided by the polynomial gcd of its entries. Every pivot entry and
//! every removed content is recorded, so the rational roots of
//! `pivot_polys` contain every level where the rank can drop.
//!
//! The Euclidean routines further down use unimodular operations only and
//! are used to compute gcds of maximal minors.

use num_traits::{One, Zero};

use crate::coeff::{Poly, Rational, RatFunc};

/// Divide by the rational content so the entries have coprime integer coefficients.
fn rational_normalize(row: &mut [Poly]) {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::one();
    let mut gcd = num_bigint::BigInt::zero();
    for p in row.iter() {
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
            gcd = gcd.gcd(c.numer());
        }
    }
    if gcd.is_zero() {
        return;
    }
    let s = Rational::new(lcm, gcd);
    if !s.is_one() {
        for p in row.iter_mut() {
            *p = p.scale(&s);
        }
    }
}

/// Polynomial content of a row (monic gcd of its entries), or `None` for the zero row.
fn content(row: &[Poly]) -> Option<Poly> {
    let mut g: Option<Poly> = None;
    for p in row.iter().filter(|p| !p.is_zero()) {
        g = Some(match g {
            None => p.monic(),
            Some(g) => g.gcd(p),
        });
        if g.as_ref().is_some_and(|g| g.is_constant()) {
            break;
        }
    }
    g
}

/// How the pivot of a new row is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Nonzero entry of lowest degree, ties by column index.
    LowestDegree,
    /// First nonzero column.
    Leading,
}

#[derive(Clone, Debug)]
pub struct Eliminator {
    ncols: usize,
    rule: PivotRule,
    /// Reduced rows; row `i` has its pivot at `pivots[i]` and zeros in all other pivot columns.
    pub rows: Vec<Vec<Poly>>,
    pub pivots: Vec<usize>,
    /// Input row index that produced each pivot row.
    pub sources: Vec<usize>,
    /// Monic nonconstant pivots and removed contents, deduplicated.
    pub pivot_polys: Vec<Poly>,
    pushed: usize,
}

impl Eliminator {
    pub fn new(ncols: usize) -> Self {
        Self::with_rule(ncols, PivotRule::LowestDegree)
    }

    pub fn with_rule(ncols: usize, rule: PivotRule) -> Self {
        Eliminator { ncols, rule, rows: Vec::new(), pivots: Vec::new(), sources: Vec::new(), pivot_polys: Vec::new(), pushed: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    fn record(&mut self, p: &Poly) {
        if p.is_constant() {
            return;
        }
        let m = p.monic();
        if !self.pivot_polys.contains(&m) {
            self.pivot_polys.push(m);
        }
    }

    fn normalize(&mut self, row: &mut [Poly]) {
        if let Some(g) = content(row) {
            if !g.is_constant() {
                self.record(&g);
                for p in row.iter_mut() {
                    if !p.is_zero() {
                        *p = p.div_exact(&g).expect("content divides");
                    }
                }
            }
        }
        rational_normalize(row);
    }

    /// Reduce `row` against the current pivots; returns true if it added a pivot.
    pub fn push(&mut self, mut row: Vec<Poly>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        let source = self.pushed;
        self.pushed += 1;
        if self.is_full() {
            return false;
        }
        for i in 0..self.rows.len() {
            let c = self.pivots[i];
            if row[c].is_zero() {
                continue;
            }
            let a = std::mem::replace(&mut row[c], Poly::zero());
            let p = &self.rows[i][c];
            for j in 0..self.ncols {
                if j == c {
                    continue;
                }
                let pr = &self.rows[i][j];
                if row[j].is_zero() && pr.is_zero() {
                    continue;
                }
                row[j] = &(p * &row[j]) - &(&a * pr);
            }
            if !p.is_constant() {
                self.normalize(&mut row);
            }
        }
        let nonzero = row.iter().enumerate().filter(|(_, p)| !p.is_zero());
        let chosen = match self.rule {
            PivotRule::Leading => nonzero.map(|(j, _)| j).next(),
            PivotRule::LowestDegree => nonzero.min_by_key(|(j, p)| (p.degree(), *j)).map(|(j, _)| j),
        };
        let Some(c) = chosen else {
            return false;
        };
        self.normalize(&mut row);
        let p = row[c].clone();
        self.record(&p);
        // Clear the new pivot column from the older rows.
        for i in 0..self.rows.len() {
            if self.rows[i][c].is_zero() {
                continue;
            }
            let a = std::mem::replace(&mut self.rows[i][c], Poly::zero());
            let mut old = std::mem::take(&mut self.rows[i]);
            for j in 0..self.ncols {
                if j == c || (old[j].is_zero() && row[j].is_zero()) {
                    continue;
                }
                old[j] = &(&p * &old[j]) - &(&a * &row[j]);
            }
            self.normalize(&mut old);
            let piv = old[self.pivots[i]].clone();
            self.record(&piv);
            self.rows[i] = old;
        }
        self.rows.push(row);
        self.pivots.push(c);
        self.sources.push(source);
        true
    }

    /// Kernel basis over `Q(k)`: one vector per free column `f`, equal to 1 at
    /// `f` and 0 at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<RatFunc>> {
        let mut is_pivot = vec![None; self.ncols];
        for (i, &c) in self.pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![RatFunc::zero(); self.ncols];
            v[f] = RatFunc::one();
            for (i, &c) in self.pivots.iter().enumerate() {
                let a = &self.rows[i][f];
                if !a.is_zero() {
                    let num = RatFunc::from_poly(-a.clone());
                    v[c] = num.checked_div(&RatFunc::from_poly(self.rows[i][c].clone())).expect("nonzero pivot");
                }
            }
            out.push(v);
        }
        out
    }
}

/// Clear denominators of a row of rational functions. Returns the polynomial
/// row and the monic lcm of the denominators.
pub fn clear_denominators(row: &[RatFunc]) -> (Vec<Poly>, Poly) {
    let mut l = Poly::one();
    for c in row.iter().filter(|c| !c.is_zero()) {
        let d = c.denom();
        if !d.is_one() {
            let g = l.gcd(d);
            l = (&l * d).div_exact(&g).expect("gcd divides");
        }
    }
    let polys = row
        .iter()
        .map(|c| if c.is_zero() { Poly::zero() } else { (c.numer() * &l).div_exact(c.denom()).expect("lcm multiple") })
        .collect();
    (polys, l)
}

/// Primitive part of a polynomial row: divide by the polynomial content and
/// normalize rational scale.
pub fn primitive_row(row: &[Poly]) -> Vec<Poly> {
    let mut out = row.to_vec();
    if let Some(g) = content(&out) {
        for p in out.iter_mut().filter(|p| !p.is_zero()) {
            *p = p.div_exact(&g).expect("content divides");
        }
    }
    rational_normalize(&mut out);
    out
}

/// Basis of the `Q[k]`-module spanned by `rows`, by unimodular row operations.
pub fn row_module_basis(rows: Vec<Vec<Poly>>) -> Vec<Vec<Poly>> {
    let Some(ncols) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut pool = rows;
    let mut basis = Vec::new();
    for c in 0..ncols {
        loop {
            let mut live: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][c].is_zero()).collect();
            if live.is_empty() {
                break;
            }
            live.sort_by_key(|&i| (pool[i][c].degree(), i));
            let r0 = live[0];
            if live.len() == 1 {
                basis.push(pool.swap_remove(r0));
                break;
            }
            for &i in &live[1..] {
                let (q, _) = pool[i][c].div_rem(&pool[r0][c]);
                let pivot = pool[r0].clone();
                for j in 0..ncols {
                    if !pivot[j].is_zero() {
                        pool[i][j] = &pool[i][j] - &(&q * &pivot[j]);
                    }
                }
            }
        }
        pool.retain(|r| r.iter().any(|p| !p.is_zero()));
    }
    basis
}

/// gcd of the maximal minors of a full-row-rank matrix, as a monic polynomial,
/// by unimodular column operations to lower-triangular form.
pub fn maximal_minor_gcd(rows: &[Vec<Poly>]) -> Poly {
    let mut m = rows.to_vec();
    let d = m.len();
    let Some(ncols) = m.first().map(|r| r.len()) else {
        return Poly::one();
    };
    let mut det = Poly::one();
    for i in 0..d {
        loop {
            let mut live: Vec<usize> = (i..ncols).filter(|&j| !m[i][j].is_zero()).collect();
            if live.is_empty() {
                return Poly::zero();
            }
            live.sort_by_key(|&j| (m[i][j].degree(), j));
            let j0 = live[0];
            if j0 != i {
                for row in m.iter_mut() {
                    row.swap(i, j0);
                }
            }
            if live.len() == 1 {
                break;
            }
            for &j in &live[1..] {
                let j = if j == i { j0 } else { j };
                let (q, _) = m[i][j].div_rem(&m[i][i]);
                for row in m.iter_mut() {
                    if !row[i].is_zero() {
                        let t = &q * &row[i];
                        row[j] = &row[j] - &t;
                    }
                }
            }
        }
        det = &det * &m[i][i];
    }
    det.monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::poly::int;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn kernel_of_small_system() {
        // [[k, 1], [0, 0]] -> kernel spanned by (1, -k).
        // Lowest degree pivots on the constant entry, so nothing is recorded.
        let mut e = Eliminator::new(2);
        assert!(e.push(vec![p(&[0, 1]), p(&[1])]));
        assert!(!e.push(vec![p(&[0, 2]), p(&[2])]));
        let k = e.kernel();
        assert_eq!(k, vec![vec![RatFunc::one(), -RatFunc::var()]]);
        assert!(e.pivot_polys.is_empty());

        // Leading pivots on k and records it.
        let mut e = Eliminator::with_rule(2, PivotRule::Leading);
        e.push(vec![p(&[0, 1]), p(&[1])]);
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -RatFunc::var().recip().unwrap());
        assert_eq!(k[0][1], RatFunc::one());
        assert_eq!(e.pivot_polys, vec![p(&[0, 1])]);
    }

    #[test]
    fn removed_content_is_recorded() {
        let mut e = Eliminator::new(2);
        e.push(vec![p(&[1]), p(&[0])]);
        e.push(vec![p(&[0]), p(&[-3, 1])]);
        assert!(e.pivot_polys.contains(&p(&[-3, 1])));
    }

    #[test]
    fn minor_gcd_matches_determinant() {
        // rows (1, k) and (k, k^2 + k - 2): minor = k - 2 up to a unit.
        let rows = vec![vec![p(&[1]), p(&[0, 1]), p(&[0])], vec![p(&[0, 1]), p(&[-2, 1, 1]), p(&[0])]];
        assert_eq!(maximal_minor_gcd(&rows), p(&[-2, 1]));
        let free = vec![vec![p(&[1]), p(&[0])], vec![p(&[0]), p(&[0, 1])], vec![p(&[0]), p(&[1, 1])]];
        assert_eq!(row_module_basis(free).len(), 2);
        assert_eq!(int(1), Rational::one());
    }
}
