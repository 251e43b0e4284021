//! Exact rational root finding.
//!
//! Roots are isolated with a Sturm sequence on the square-free part after a
//! substitution that makes every rational root an integer. No integer
//! factorization is needed, so large coefficients are fine.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    /// Distinct rational roots in increasing order, with multiplicity.
    pub roots: Vec<(Rational, usize)>,
    /// Monic cofactor with no rational roots (omitted when constant).
    /// It is not factored further.
    pub remainder: Option<Poly>,
}

impl RootReport {
    pub fn root_set(&self) -> Vec<Rational> {
        self.roots.iter().map(|(r, _)| r.clone()).collect()
    }
}

pub fn rational_roots(p: &Poly) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.square_free().primitive();
    let candidates = isolate_rational(&sf);
    let mut rest = p.monic();
    let mut roots = Vec::new();
    for r in candidates {
        let lin = Poly::linear_root(&r);
        let mut m = 0;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            m += 1;
        }
        if m > 0 {
            roots.push((r, m));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let remainder = (rest.degree() > 0).then_some(rest);
    Ok(RootReport { roots, remainder })
}

/// Rational roots of a square-free primitive polynomial.
///
/// With `a` the leading coefficient, `q(y) = a^{n-1} p(y / a)` is monic with
/// integer coefficients, so the rational roots of `p` are `y / a` for the
/// integer roots `y` of `q`. Those are isolated by Sturm bisection between
/// half-integers, which are never roots.
fn isolate_rational(p: &Poly) -> Vec<Rational> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let a = p.leading();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut scale = Rational::one();
    for i in (0..=n).rev() {
        // coefficient of y^i is p_i * a^{n-1-i}; i = n gives 1.
        coeffs.push((i, scale.clone()));
        if i > 0 {
            scale = &scale * &a;
        }
    }
    let mut q = vec![Rational::zero(); n + 1];
    for (i, s) in coeffs {
        q[i] = if i == n { Rational::one() } else { p.coeff(i) * &s / &a };
    }
    let q = Poly::from_coeffs(q);
    let sturm = sturm_sequence(&q);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let bound = cauchy_bound(&q).ceil() + &half;
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((l, r)) = stack.pop() {
        let count = sign_changes(&sturm, &l) - sign_changes(&sturm, &r);
        if count == 0 {
            continue;
        }
        let width = &r - &l;
        if width == Rational::one() {
            let y = &l + &half;
            if q.eval(&y).is_zero() {
                out.push(y / &a);
            }
            continue;
        }
        let steps = (&width).to_integer() / BigInt::from(2);
        let mid = &l + Rational::from_integer(steps);
        stack.push((l, mid.clone()));
        stack.push((mid, r));
    }
    out.sort();
    out
}

fn cauchy_bound(p: &Poly) -> Rational {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps signs while bounding coefficient growth.
        let prim = r.primitive();
        let fixed = if r.leading().is_negative() == prim.leading().is_negative() {
            -prim
        } else {
            prim
        };
        seq.push(fixed);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rational) -> i64 {
    let mut last = 0i8;
    let mut count = 0;
    for q in seq {
        let v = q.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::poly::{int, rat};

    #[test]
    fn finds_roots_with_small_denominators() {
        // (k + 4)(k + 8/3)
        let p = &Poly::from_i64(&[4, 1]) * &Poly::from_coeffs(vec![rat(8, 3), int(1)]);
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.root_set(), vec![int(-4), rat(-8, 3)]);
        assert!(r.remainder.is_none());
    }

    #[test]
    fn irrational_part_is_left_over() {
        let p = Poly::from_i64(&[-2, 0, 1]);
        let r = rational_roots(&p).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.remainder, Some(p));
    }

    #[test]
    fn multiplicities_and_zero() {
        // k^2 (k - 1/2)^3 (k^2 + 1)
        let p = &(&Poly::monomial(int(1), 2) * &Poly::linear_root(&rat(1, 2)).pow(3))
            * &Poly::from_i64(&[1, 0, 1]);
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.roots, vec![(int(0), 2), (rat(1, 2), 3)]);
        assert_eq!(r.remainder, Some(Poly::from_i64(&[1, 0, 1])));
        assert!(rational_roots(&Poly::zero()).is_err());
    }

    #[test]
    fn close_roots_are_separated() {
        let p = &Poly::linear_root(&rat(1000, 999)) * &Poly::linear_root(&rat(999, 998));
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.root_set(), vec![rat(1000, 999), rat(999, 998)]);
    }
}
