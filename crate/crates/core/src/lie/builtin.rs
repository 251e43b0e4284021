use num_traits::Zero;

use super::{lie_from_constants, BasisElement, Constant, LiePresentation, Parity};
use crate::coeff::qmat::{self, QMatrix};
use crate::coeff::{int, rat, Rational};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 11] =
    ["sl2", "sl3", "sp2", "sp4", "osp(1|2)", "gl1", "gl2", "gl3", "so2", "so3", "abelian"];

/// Elementary matrix `e_ij` of size n.
pub(crate) fn e(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = vec![vec![Rational::zero(); n]; n];
    m[i][j] = int(1);
    m
}

pub(crate) fn lin(terms: &[(i64, &QMatrix)]) -> QMatrix {
    let n = terms[0].1.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (c, a) in terms {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += int(*c) * &a[i][j];
            }
        }
    }
    m
}

fn matmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
        .collect()
}

fn trace(a: &QMatrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Even Lie algebra spanned by the given matrices, with form `scale * tr(xy)`.
pub fn matrix_lie(name: &str, names: &[&str], mats: &[QMatrix], scale: Rational) -> Result<LiePresentation> {
    let d = mats.len();
    if d == 0 {
        return lie_from_constants(name, Vec::new(), &[], Vec::new());
    }
    let flat = |m: &QMatrix| m.iter().flatten().cloned().collect::<Vec<_>>();
    // Columns are the flattened basis matrices.
    let entries = mats[0].len() * mats[0].len();
    let a: QMatrix = (0..entries).map(|r| mats.iter().map(|m| flat(m)[r].clone()).collect()).collect();
    let mut constants: Vec<Constant> = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let ab = matmul(&mats[i], &mats[j]);
            let ba = matmul(&mats[j], &mats[i]);
            let comm = lin(&[(1, &ab), (-1, &ba)]);
            let x = qmat::solve(&a, &flat(&comm))
                .ok_or_else(|| Error::InvalidLie(format!("{name}: span is not closed under bracket")))?;
            let v = x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            constants.push((i, j, v));
        }
    }
    let form = (0..d)
        .map(|i| (0..d).map(|j| &scale * trace(&matmul(&mats[i], &mats[j]))).collect())
        .collect();
    let basis = names.iter().map(|s| BasisElement { name: s.to_string(), parity: Parity::Even }).collect();
    lie_from_constants(name, basis, &constants, form)
}

fn gl(n: usize) -> Result<LiePresentation> {
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            names.push(format!("E{}{}", i + 1, j + 1));
            mats.push(e(n, i, j));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let name = format!("gl{n}");
    let mut l = matrix_lie(&name, &refs, &mats, int(1))?;
    if n == 1 {
        l.basis[0].name = "X".into();
    }
    Ok(l)
}

fn sl3() -> Result<LiePresentation> {
    let n = 3;
    let h1 = lin(&[(1, &e(n, 0, 0)), (-1, &e(n, 1, 1))]);
    let h2 = lin(&[(1, &e(n, 1, 1)), (-1, &e(n, 2, 2))]);
    let mats = vec![h1, h2, e(n, 0, 1), e(n, 1, 2), e(n, 0, 2), e(n, 1, 0), e(n, 2, 1), e(n, 2, 0)];
    matrix_lie("sl3", &["H1", "H2", "E12", "E23", "E13", "E21", "E32", "E31"], &mats, int(1))
}

/// sp_2n in the basis matched by the free-field embedding into the beta-gamma
/// system: `P_jk = e_{j,k+n} + e_{k,j+n}`, `Q_jk = -e_{j+n,k} - e_{k+n,j}`,
/// `M_jk = e_jk - e_{n+k,n+j}`, form `tr(xy)`. For n = 1 the basis is named
/// `h = M11`, `E = P11`, `F = Q11`.
pub fn sp(n: usize) -> Result<LiePresentation> {
    let d = 2 * n;
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for j in 0..n {
        for k in 0..n {
            names.push(format!("M{}{}", j + 1, k + 1));
            mats.push(lin(&[(1, &e(d, j, k)), (-1, &e(d, n + k, n + j))]));
        }
    }
    for j in 0..n {
        for k in j..n {
            names.push(format!("P{}{}", j + 1, k + 1));
            mats.push(lin(&[(1, &e(d, j, k + n)), (1, &e(d, k, j + n))]));
        }
    }
    for j in 0..n {
        for k in j..n {
            names.push(format!("Q{}{}", j + 1, k + 1));
            mats.push(lin(&[(-1, &e(d, j + n, k)), (-1, &e(d, k + n, j))]));
        }
    }
    if n == 1 {
        names = vec!["h".into(), "E".into(), "F".into()];
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    matrix_lie(&format!("sp{d}"), &refs, &mats, int(1))
}

/// so_m spanned by `M_ij = e_ij - e_ji`, form `tr(xy) / 2` so `B(M, M) = -1`.
fn so(m: usize) -> Result<LiePresentation> {
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            names.push(format!("M{}{}", i + 1, j + 1));
            mats.push(lin(&[(1, &e(m, i, j)), (-1, &e(m, j, i))]));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    matrix_lie(&format!("so{m}"), &refs, &mats, rat(1, 2))
}

fn sl2() -> Result<LiePresentation> {
    let b = |s: &str| BasisElement { name: s.into(), parity: Parity::Even };
    let c: Vec<Constant> = vec![
        (0, 1, vec![(1, int(1))]),
        (0, 2, vec![(2, int(-1))]),
        (1, 2, vec![(0, int(2))]),
    ];
    let form = vec![
        vec![rat(1, 2), int(0), int(0)],
        vec![int(0), int(0), int(1)],
        vec![int(0), int(1), int(0)],
    ];
    lie_from_constants("sl2", vec![b("H"), b("Xp"), b("Xm")], &c, form)
}

fn osp12() -> Result<LiePresentation> {
    let b = |s: &str, p| BasisElement { name: s.into(), parity: p };
    use Parity::*;
    let basis = vec![b("H", Even), b("Xp", Even), b("Xm", Even), b("phip", Odd), b("phim", Odd)];
    let h = rat(1, 2);
    let c: Vec<Constant> = vec![
        (0, 1, vec![(1, int(1))]),
        (0, 2, vec![(2, int(-1))]),
        (1, 2, vec![(0, int(2))]),
        (0, 3, vec![(3, h.clone())]),
        (0, 4, vec![(4, -h.clone())]),
        (1, 4, vec![(3, int(-1))]),
        (2, 3, vec![(4, int(-1))]),
        (1, 3, vec![]),
        (2, 4, vec![]),
        (3, 3, vec![(1, h.clone())]),
        (4, 4, vec![(2, -h.clone())]),
        (3, 4, vec![(0, h.clone())]),
    ];
    let z = || int(0);
    let form = vec![
        vec![h.clone(), z(), z(), z(), z()],
        vec![z(), z(), int(1), z(), z()],
        vec![z(), int(1), z(), z(), z()],
        vec![z(), z(), z(), z(), h.clone()],
        vec![z(), z(), z(), -h.clone(), z()],
    ];
    lie_from_constants("osp(1|2)", basis, &c, form)
}

pub fn builtin_lie(name: &str) -> Result<LiePresentation> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
    match compact.as_str() {
        "sl2" => sl2(),
        "sl3" => sl3(),
        "sp2" | "sp(2)" => sp(1),
        "sp4" | "sp(4)" => sp(2),
        "osp(1|2)" | "osp12" => osp12(),
        "gl1" | "gl(1)" | "abelian" => gl(1),
        "gl2" | "gl(2)" => gl(2),
        "gl3" | "gl(3)" => gl(3),
        "so1" | "so(1)" => so(1),
        "so2" | "so(2)" => so(2),
        "so3" | "so(3)" => so(3),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_validate() {
        for n in BUILTIN_NAMES {
            builtin_lie(n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        assert!(builtin_lie("e8").is_err());
    }

    #[test]
    fn dual_coxeter_numbers() {
        assert_eq!(builtin_lie("sl2").unwrap().dual_coxeter().unwrap(), int(2));
        assert_eq!(builtin_lie("sl3").unwrap().dual_coxeter().unwrap(), int(3));
        assert_eq!(builtin_lie("osp(1|2)").unwrap().dual_coxeter().unwrap(), rat(3, 2));
        assert_eq!(builtin_lie("sp2").unwrap().dual_coxeter().unwrap(), int(2));
        assert!(matches!(builtin_lie("gl2").unwrap().dual_coxeter(), Err(Error::NotSimple)));
    }

    #[test]
    fn osp_odd_duals_pair_to_one() {
        let l = builtin_lie("osp(1|2)").unwrap();
        let d = l.dual_basis().unwrap();
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let b: Rational = (0..l.dim()).map(|m| &d[i][m] * l.form(m, j)).sum();
                assert_eq!(b, if i == j { int(1) } else { int(0) });
            }
        }
        assert_eq!(l.sdim(), 1);
    }

    #[test]
    fn so_form_normalization() {
        let l = builtin_lie("so3").unwrap();
        assert_eq!(*l.form(0, 0), int(-1));
        assert_eq!(builtin_lie("so1").unwrap().dim(), 0);
    }
}
