//! Reduced rational functions in the level parameter.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Poly, Rational};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn var() -> Self {
        RatFunc { num: Poly::var(), den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::constant(super::poly::int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        RatFunc::constant(super::poly::rat(n, d))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// Build and canonicalize `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let inv = den.leading().recip();
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd"), den.div_exact(&g).expect("gcd"))
        };
        let lc = den.leading();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value, if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        if self.den.is_one() {
            return RatFunc { num: &self.num * p, den: Poly::one() };
        }
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::one().checked_div(self)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn evaluate_at(&self, k0: &Rational) -> Result<Rational> {
        let d = self.den.eval(k0);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole { root: k0.clone() });
        }
        Ok(self.num.eval(k0) / d)
    }

    pub fn limit_at_infinity(&self) -> Result<Rational> {
        let (nd, dd) = (self.num.degree(), self.den.degree());
        if self.num.is_zero() {
            return Ok(Rational::zero());
        }
        if nd > dd {
            return Err(Error::DivergesAtInfinity { num_deg: nd, den_deg: dd });
        }
        if nd < dd {
            return Ok(Rational::zero());
        }
        Ok(self.num.leading() / self.den.leading())
    }

    /// Substitute `t -> t^2`, used to pass from the level k to kappa with k = kappa^2.
    pub fn substitute_square(&self) -> RatFunc {
        let sq = |p: &Poly| {
            let mut c = vec![Rational::zero(); 2 * p.coeffs().len()];
            for (i, a) in p.coeffs().iter().enumerate() {
                c[2 * i] = a.clone();
            }
            Poly::from_coeffs(c)
        };
        Self::reduce(sq(&self.num), sq(&self.den))
    }

    /// Textual form `(num)` or `(num)/(den)` in the given variable.
    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            format!("({})", self.num.render(var))
        } else {
            format!("({})/({})", self.num.render(var), self.den.render(var))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("k"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("k"))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc { num: &(&self.num * &rhs.den) + &rhs.num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            return RatFunc { num: &self.num + &(&rhs.num * &self.den), den: self.den.clone() };
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).expect("gcd");
        let b = rhs.den.div_exact(&g).expect("gcd");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::reduce(num, &a * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: Poly::one() };
        }
        // Cross-cancel before multiplying so intermediate degrees stay small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd");
        let d2 = rhs.den.div_exact(&g1).expect("gcd");
        let n2 = rhs.num.div_exact(&g2).expect("gcd");
        let d1 = self.den.div_exact(&g2).expect("gcd");
        let den = &d1 * &d2;
        let lc = den.leading();
        let inv = lc.recip();
        RatFunc { num: (&n1 * &n2).scale(&inv), den: den.scale(&inv) }
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use `checked_div` for a `Result`.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::poly::{int, rat};

    fn k() -> RatFunc {
        RatFunc::var()
    }

    #[test]
    fn canonical_cancellation() {
        let f = RatFunc::new(Poly::from_i64(&[-4, 0, 1]), Poly::from_i64(&[2, 1])).unwrap();
        assert_eq!(f, RatFunc::from_poly(Poly::from_i64(&[-2, 1])));
    }

    #[test]
    fn quotient_is_monic_in_denominator() {
        let a = &k() + &RatFunc::from_int(4);
        let b = &k() + &RatFunc::from_frac(3, 2);
        let q = &a / &b;
        assert_eq!(q.render("k"), "(k + 4)/(k + 3/2)");
        assert!(q.denom().leading() == int(1));
    }

    #[test]
    fn evaluation_and_limits() {
        let c = &(&k() * &RatFunc::from_int(3)) / &(&k() + &RatFunc::from_int(2));
        assert_eq!(c.evaluate_at(&int(1)).unwrap(), int(1));
        assert!(matches!(c.evaluate_at(&int(-2)), Err(Error::EvaluationAtPole { .. })));
        let lam = -&(&(&k() + &RatFunc::from_int(4)) / &(&k() + &RatFunc::from_frac(3, 2)));
        assert_eq!(lam.limit_at_infinity().unwrap(), int(-1));
        assert_eq!(lam.evaluate_at(&int(-4)).unwrap(), int(0));
        assert!(k().limit_at_infinity().is_err());
        let r = RatFunc::new(Poly::from_i64(&[0, 4, 2]), Poly::from_i64(&[6, 7, 2])).unwrap();
        assert_eq!(r.limit_at_infinity().unwrap(), int(1));
        assert_eq!(RatFunc::from_frac(1, 2).evaluate_at(&rat(5, 3)).unwrap(), rat(1, 2));
    }

    #[test]
    fn zero_division_is_reported() {
        assert_eq!(k().checked_div(&RatFunc::zero()), Err(Error::ZeroDenominator));
    }
}
