use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::{add_term, axpy, scale_vector, Field, Monomial, Vector};
use super::presentation::VAPresentation;
use crate::coeff::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::lie::Parity;

/// A finite combination of canonical monomials in one presentation.
#[derive(Clone)]
pub struct Element {
    pres: Arc<VAPresentation>,
    terms: Vector,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.pres.id() == other.pres.id() && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn to_rational(w: num_rational::Rational64) -> Rational {
    BigRational::new((*w.numer()).into(), (*w.denom()).into())
}

impl Element {
    pub fn from_vector(pres: &Arc<VAPresentation>, terms: Vector) -> Element {
        Element { pres: pres.clone(), terms }
    }

    pub fn zero(pres: &Arc<VAPresentation>) -> Element {
        Element::from_vector(pres, Vector::new())
    }

    pub fn vacuum(pres: &Arc<VAPresentation>) -> Element {
        Element::from_vector(pres, super::monomial::vacuum_vector())
    }

    pub fn generator(pres: &Arc<VAPresentation>, id: usize) -> Element {
        Self::field(pres, Field::plain(id))
    }

    pub fn field(pres: &Arc<VAPresentation>, f: Field) -> Element {
        Element::from_vector(pres, super::monomial::single(vec![f], RatFunc::one()))
    }

    pub fn named(pres: &Arc<VAPresentation>, name: &str) -> Result<Element> {
        let id = pres.generator_index(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(Self::generator(pres, id))
    }

    /// The canonical monomial itself, with coefficient one. The input must be sorted.
    pub fn monomial(pres: &Arc<VAPresentation>, m: Monomial) -> Element {
        Element::from_vector(pres, super::monomial::single(m, RatFunc::one()))
    }

    pub fn presentation(&self) -> &Arc<VAPresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Vector {
        &self.terms
    }

    pub fn into_terms(self) -> Vector {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn same(&self, other: &Element) -> Result<()> {
        if self.pres.id() == other.pres.id() {
            Ok(())
        } else {
            Err(Error::MixedPresentations)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        let mut t = self.terms.clone();
        axpy(&mut t, &RatFunc::one(), &other.terms);
        Ok(Element::from_vector(&self.pres, t))
    }

    pub fn scale(&self, c: &RatFunc) -> Element {
        Element::from_vector(&self.pres, scale_vector(&self.terms, c))
    }

    pub fn scale_q(&self, c: &Rational) -> Element {
        self.scale(&RatFunc::constant(c.clone()))
    }

    pub fn derivative(&self) -> Element {
        Element::from_vector(&self.pres, self.pres.derivative_vec(&self.terms))
    }

    pub fn derivative_n(&self, d: usize) -> Element {
        (0..d).fold(self.clone(), |x, _| x.derivative())
    }

    /// `a_(n) b` for any integer `n`.
    pub fn nth_product(&self, other: &Element, n: i64) -> Result<Element> {
        self.same(other)?;
        Ok(Element::from_vector(&self.pres, self.pres.mode_vec(&self.terms, n, &other.terms)))
    }

    /// Normally ordered product `:a b:`.
    pub fn normal_order(&self, other: &Element) -> Result<Element> {
        self.nth_product(other, -1)
    }

    /// Right-nested normally ordered product of a list.
    pub fn normal_order_all(items: &[Element]) -> Result<Element> {
        let (last, init) = items.split_last().ok_or_else(|| Error::Usage("empty product".into()))?;
        init.iter().rev().try_fold(last.clone(), |acc, x| x.normal_order(&acc))
    }

    pub fn lambda_bracket(&self, other: &Element) -> Result<LambdaPoly> {
        self.same(other)?;
        let wa = self.max_weight();
        let wb = other.max_weight();
        let nmax = (wa + wb - num_rational::Rational64::from_integer(1)).floor().to_integer();
        let mut coeffs = Vec::new();
        for n in 0..=nmax.max(-1) {
            coeffs.push(self.nth_product(other, n)?);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(LambdaPoly { coeffs })
    }

    fn max_weight(&self) -> num_rational::Rational64 {
        self.terms
            .keys()
            .map(|m| self.pres.mono_weight(m))
            .max()
            .unwrap_or_else(num_rational::Rational64::zero)
    }

    fn grades<T: Ord + Clone + fmt::Display>(&self, f: impl Fn(&Monomial) -> T) -> Result<Option<T>> {
        let mut seen: Vec<T> = self.terms.keys().map(f).collect();
        seen.sort();
        seen.dedup();
        match seen.len() {
            0 => Ok(None),
            1 => Ok(seen.pop()),
            _ => Err(Error::Inhomogeneous(
                seen.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
            )),
        }
    }

    /// Conformal weight; zero for the zero element.
    pub fn weight(&self) -> Result<Rational> {
        Ok(self.grades(|m| self.pres.mono_weight(m))?.map(to_rational).unwrap_or_else(Rational::zero))
    }

    pub fn parity(&self) -> Result<Parity> {
        Ok(Parity::from_odd(self.grades(|m| self.pres.mono_odd(m))?.unwrap_or(false)))
    }

    /// Maximal monomial length.
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Specialize the parameter to `k0`; the result lives in the same presentation.
    pub fn evaluate_level(&self, k0: &Rational) -> Result<Element> {
        let mut t = Vector::new();
        for (m, c) in &self.terms {
            let v = c.evaluate_at(k0)?;
            add_term(&mut t, m, &RatFunc::constant(v));
        }
        Ok(Element::from_vector(&self.pres, t))
    }

    /// Reinterpret in another presentation with the same generator list.
    pub fn transport(&self, pres: &Arc<VAPresentation>) -> Element {
        Element::from_vector(pres, self.terms.clone())
    }

    pub fn map_coefficients(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Element> {
        let mut t = Vector::new();
        for (m, c) in &self.terms {
            add_term(&mut t, m, &f(c)?);
        }
        Ok(Element::from_vector(&self.pres, t))
    }

    pub fn to_text(&self) -> String {
        super::parse::print_vector(&self.pres, &self.terms)
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics on mixed presentations; see `try_add`.
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("elements from different presentations")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-RatFunc::one())
    }
}

impl Mul<&Element> for &RatFunc {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// `[a_λ b] = sum_n λ^n / n! * coeffs[n]`, with `coeffs[n] = a_(n) b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaPoly {
    pub coeffs: Vec<Element>,
}

impl LambdaPoly {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `a_(n) b`, or `None` when it vanishes.
    pub fn get(&self, n: usize) -> Option<&Element> {
        self.coeffs.get(n).filter(|c| !c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}
