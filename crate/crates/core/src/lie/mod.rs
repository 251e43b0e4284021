//! Finite-dimensional Lie (super)algebras given by structure constants and an
//! invariant bilinear form.

mod builtin;

pub use builtin::{builtin_lie, matrix_lie, sp, BUILTIN_NAMES};

use num_traits::{One, Zero};

use crate::coeff::qmat::{self, QMatrix};
use crate::coeff::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_odd(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != other.is_odd())
    }
}

/// `(-1)^{p q}` as an integer.
pub fn koszul(p: Parity, q: Parity) -> i64 {
    if p.is_odd() && q.is_odd() {
        -1
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
}

/// A sparse vector in the Lie algebra: `(basis index, coefficient)`.
pub type LieVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq)]
pub struct LiePresentation {
    pub name: String,
    pub basis: Vec<BasisElement>,
    /// `bracket[i][j]` expands `[x_i, x_j]`.
    bracket: Vec<Vec<LieVec>>,
    form: QMatrix,
}

impl LiePresentation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn bracket(&self, i: usize, j: usize) -> &LieVec {
        &self.bracket[i][j]
    }

    pub fn form(&self, i: usize, j: usize) -> &Rational {
        &self.form[i][j]
    }

    pub fn gram(&self) -> &QMatrix {
        &self.form
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Superdimension: even dimension minus odd dimension.
    pub fn sdim(&self) -> i64 {
        self.basis.iter().map(|b| if b.parity.is_odd() { -1 } else { 1 }).sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(|row| row.iter().all(|v| v.is_empty()))
    }

    fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (m, v) in &self.bracket[i][j] {
                    out[*m] += &c * v;
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    fn form_vec(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.form[i][j].is_zero() {
                    acc += xi * yj * &self.form[i][j];
                }
            }
        }
        acc
    }

    /// Dual basis coordinates: row `i` holds `xi'_i` with `B(xi'_i, xi_j) = delta_ij`.
    pub fn dual_basis(&self) -> Result<QMatrix> {
        let inv = qmat::inverse(&self.form).ok_or(Error::SingularForm)?;
        // sum_m D_im B_mj = delta_ij, hence D = B^{-1}.
        Ok(inv)
    }

    /// Half the eigenvalue of `sum_i ad(xi_i) ad(xi'_i)` on the adjoint module.
    pub fn dual_coxeter(&self) -> Result<Rational> {
        let dual = self.dual_basis()?;
        let n = self.dim();
        let mut scalar: Option<Rational> = None;
        for b in 0..n {
            let x = self.unit(b);
            let mut acc = vec![Rational::zero(); n];
            for i in 0..n {
                let inner = self.bracket_vec(&dual[i], &x);
                let outer = self.bracket_vec(&self.unit(i), &inner);
                for (a, o) in acc.iter_mut().zip(outer) {
                    *a += o;
                }
            }
            for (m, v) in acc.iter().enumerate() {
                if m != b && !v.is_zero() {
                    return Err(Error::NotSimple);
                }
            }
            let ev = acc[b].clone();
            match &scalar {
                None => scalar = Some(ev),
                Some(s) if *s != ev => return Err(Error::NotSimple),
                _ => {}
            }
        }
        Ok(scalar.unwrap_or_else(Rational::zero) / Rational::from_integer(2.into()))
    }
}

/// Structure constants for one ordered pair: `[x_i, x_j] = sum_m c_m x_m`.
pub type Constant = (usize, usize, LieVec);

/// Build and validate. Pairs listed only in one order are completed by
/// super-antisymmetry; a pair listed in both orders must be consistent.
pub fn lie_from_constants(
    name: &str,
    basis: Vec<BasisElement>,
    constants: &[Constant],
    form: QMatrix,
) -> Result<LiePresentation> {
    let n = basis.len();
    if form.len() != n || form.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidLie(format!("form must be a {n}x{n} matrix")));
    }
    let mut bracket = vec![vec![None::<LieVec>; n]; n];
    for (i, j, v) in constants {
        if *i >= n || *j >= n || v.iter().any(|(m, _)| *m >= n) {
            return Err(Error::InvalidLie(format!("index out of range in constant ({i}, {j})")));
        }
        let mut dense = vec![Rational::zero(); n];
        for (m, c) in v {
            dense[*m] += c;
        }
        let sparse: LieVec =
            dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if let Some(prev) = &bracket[*i][*j] {
            if *prev != sparse {
                return Err(Error::InvalidLie(format!(
                    "conflicting constants for ({}, {})",
                    basis[*i].name, basis[*j].name
                )));
            }
        }
        bracket[*i][*j] = Some(sparse);
    }
    let mut full = vec![vec![LieVec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let sign = Rational::from_integer((-koszul(basis[i].parity, basis[j].parity)).into());
            full[i][j] = match (&bracket[i][j], &bracket[j][i]) {
                (Some(v), Some(w)) => {
                    let neg: LieVec = w.iter().map(|(m, c)| (*m, c * &sign)).collect();
                    if *v != neg {
                        return Err(Error::InvalidLie(format!(
                            "super-antisymmetry fails on ({}, {})",
                            basis[i].name, basis[j].name
                        )));
                    }
                    v.clone()
                }
                (Some(v), None) => v.clone(),
                (None, Some(w)) => w.iter().map(|(m, c)| (*m, c * &sign)).collect(),
                (None, None) => LieVec::new(),
            };
        }
    }
    let lie = LiePresentation { name: name.to_string(), basis, bracket: full, form };
    validate(&lie)?;
    Ok(lie)
}

fn validate(l: &LiePresentation) -> Result<()> {
    let n = l.dim();
    let p = |i: usize| l.basis[i].parity;
    let name = |i: usize| l.basis[i].name.clone();
    for i in 0..n {
        // Diagonal even brackets vanish; parity of each bracket is additive.
        for j in 0..n {
            for (m, _) in l.bracket(i, j) {
                if p(*m) != p(i).add(p(j)) {
                    return Err(Error::InvalidLie(format!(
                        "bracket [{}, {}] has a component of the wrong parity",
                        name(i),
                        name(j)
                    )));
                }
            }
            let fwd = &l.form[i][j];
            let back = &l.form[j][i] * Rational::from_integer(koszul(p(i), p(j)).into());
            if *fwd != back {
                return Err(Error::InvalidLie(format!(
                    "form is not supersymmetric on ({}, {})",
                    name(i),
                    name(j)
                )));
            }
            if p(i) != p(j) && !fwd.is_zero() {
                return Err(Error::InvalidLie(format!(
                    "form pairs elements of different parity ({}, {})",
                    name(i),
                    name(j)
                )));
            }
        }
    }
    for i in 0..n {
        let x = l.unit(i);
        for j in 0..n {
            let y = l.unit(j);
            let xy = l.bracket_vec(&x, &y);
            for k in 0..n {
                let z = l.unit(k);
                // [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]]
                let lhs = l.bracket_vec(&x, &l.bracket_vec(&y, &z));
                let a = l.bracket_vec(&xy, &z);
                let b = l.bracket_vec(&y, &l.bracket_vec(&x, &z));
                let s = Rational::from_integer(koszul(p(i), p(j)).into());
                let ok = lhs.iter().zip(a.iter().zip(&b)).all(|(t, (u, v))| *t == u + v * &s);
                if !ok {
                    return Err(Error::JacobiFailure(name(i), name(j), name(k)));
                }
                if l.form_vec(&xy, &z) != l.form_vec(&x, &l.bracket_vec(&y, &z)) {
                    return Err(Error::InvarianceFailure(name(i), name(j), name(k)));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    fn even(name: &str) -> BasisElement {
        BasisElement { name: name.into(), parity: Parity::Even }
    }

    fn sl2_constants() -> Vec<Constant> {
        vec![
            (0, 1, vec![(1, int(1))]),
            (0, 2, vec![(2, int(-1))]),
            (1, 2, vec![(0, int(2))]),
        ]
    }

    #[test]
    fn sl2_from_constants() {
        let form = vec![
            vec![rat(1, 2), int(0), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
        ];
        let l = lie_from_constants("sl2", vec![even("H"), even("Xp"), even("Xm")], &sl2_constants(), form)
            .unwrap();
        assert_eq!(l.dual_coxeter().unwrap(), int(2));
        let d = l.dual_basis().unwrap();
        assert_eq!(d[0], vec![int(2), int(0), int(0)]);
        assert_eq!(d[1], vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn wrong_form_is_rejected() {
        let form = vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
        ];
        let err = lie_from_constants("bad", vec![even("H"), even("Xp"), even("Xm")], &sl2_constants(), form)
            .unwrap_err();
        assert!(matches!(err, Error::InvarianceFailure(..)), "{err:?}");
    }

    #[test]
    fn abelian_line() {
        let l = lie_from_constants("gl1", vec![even("X")], &[], vec![vec![int(1)]]).unwrap();
        assert_eq!(l.dual_basis().unwrap(), vec![vec![int(1)]]);
        assert_eq!(l.dual_coxeter().unwrap(), int(0));
    }

    #[test]
    fn jacobi_violation_names_triple() {
        // [a,b]=c, [b,c]=a, [c,a]=c is not a Lie algebra.
        let c = vec![
            (0, 1, vec![(2, int(1))]),
            (1, 2, vec![(0, int(1))]),
            (2, 0, vec![(2, int(1))]),
        ];
        let zero = vec![vec![int(0); 3]; 3];
        let err = lie_from_constants("x", vec![even("a"), even("b"), even("c")], &c, zero).unwrap_err();
        assert!(matches!(err, Error::JacobiFailure(..)), "{err:?}");
    }
}
