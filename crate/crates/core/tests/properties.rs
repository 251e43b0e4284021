use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use voa_core::coeff::{rat, rational_roots, Poly, RatFunc};
use voa_core::constructions::{affine, bc_system, n2_ambient, symplectic_fermion};
use voa_core::lie::builtin_lie;
use voa_core::linear::{weight_basis, Eliminator};
use voa_core::va::{jacobi_defect, parse_element, skew_rhs, Element, VAPresentation};

fn cached(cell: &'static OnceLock<Arc<VAPresentation>>, build: fn() -> Arc<VAPresentation>) -> Arc<VAPresentation> {
    cell.get_or_init(build).clone()
}

fn sl2() -> Arc<VAPresentation> {
    static P: OnceLock<Arc<VAPresentation>> = OnceLock::new();
    cached(&P, || affine(&builtin_lie("sl2").unwrap(), RatFunc::var()).unwrap())
}

fn bc() -> Arc<VAPresentation> {
    static P: OnceLock<Arc<VAPresentation>> = OnceLock::new();
    cached(&P, || bc_system(1).unwrap())
}

fn symplectic() -> Arc<VAPresentation> {
    static P: OnceLock<Arc<VAPresentation>> = OnceLock::new();
    cached(&P, || symplectic_fermion(1).unwrap())
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 0..=3).prop_map(|c| Poly::from_i64(&c))
}

fn coefficient() -> impl Strategy<Value = RatFunc> {
    (small_poly(), prop::collection::vec(-2i64..=2, 1..=2)).prop_map(|(n, shift)| {
        // denominators are products of (k + s) with s != 0, so k = 0 stays admissible
        let den = shift.iter().filter(|s| **s != 0).fold(Poly::one(), |acc, s| &acc * &Poly::from_i64(&[*s, 1]));
        RatFunc::new(n, den).unwrap()
    })
}

/// A homogeneous element: up to three monomials of one weight and one parity.
fn element(p: Arc<VAPresentation>, max_w2: i64) -> impl Strategy<Value = Element> {
    (1..=max_w2, prop::collection::vec((any::<prop::sample::Index>(), coefficient()), 1..=3)).prop_map(
        move |(w2, picks)| {
            let mut basis = weight_basis(&p, &rat(w2, 2)).unwrap();
            let mut w2 = w2;
            while basis.is_empty() {
                w2 += 1;
                basis = weight_basis(&p, &rat(w2, 2)).unwrap();
            }
            let pick = |i: &prop::sample::Index| basis.element(i.index(basis.len()));
            let parity = pick(&picks[0].0).parity().unwrap().is_odd();
            picks
                .iter()
                .map(|(i, c)| (pick(i), c))
                .filter(|(m, _)| m.parity().unwrap().is_odd() == parity)
                .fold(Element::zero(&p), |acc, (m, c)| &acc + &m.scale(c))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_of_products_of_linear_factors(roots in prop::collection::vec((-20i64..=20, 1i64..=6), 1..=5), lead in 1i64..=5) {
        let mut p = Poly::constant(rat(lead, 1));
        for (n, d) in &roots {
            p = &p * &Poly::linear_root(&rat(*n, *d));
        }
        let mut expected: Vec<_> = roots.iter().map(|(n, d)| rat(*n, *d)).collect();
        expected.sort();
        expected.dedup();
        let report = rational_roots(&p).unwrap();
        prop_assert_eq!(report.root_set(), expected);
        prop_assert!(report.remainder.is_none());
    }

    #[test]
    fn irreducible_quadratics_have_no_roots(a in 1i64..=20) {
        // k^2 + a has no rational root
        let report = rational_roots(&Poly::from_i64(&[a, 0, 1])).unwrap();
        prop_assert!(report.roots.is_empty());
        prop_assert!(report.remainder.is_some());
    }

    #[test]
    fn kernel_vectors_solve_the_system(rows in prop::collection::vec(prop::collection::vec(small_poly(), 4), 1..=4)) {
        let mut e = Eliminator::new(4);
        for r in &rows {
            e.push(r.clone());
        }
        let kernel = e.kernel();
        prop_assert_eq!(kernel.len() + e.rank(), 4);
        for v in &kernel {
            for r in &rows {
                let dot = r.iter().zip(v).fold(RatFunc::zero(), |acc, (a, x)| &acc + &(&RatFunc::from_poly(a.clone()) * x));
                prop_assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn evaluation_is_multiplicative(f in coefficient(), g in coefficient(), k0 in 1i64..=40) {
        // never an integer, so never a pole
        let k0 = rat(3 * k0 + 1, 3);
        let lhs = (&f * &g).evaluate_at(&k0).unwrap();
        prop_assert_eq!(lhs, f.evaluate_at(&k0).unwrap() * g.evaluate_at(&k0).unwrap());
    }

    #[test]
    fn ratfunc_parse_print_round_trip(f in coefficient()) {
        prop_assert_eq!(voa_core::coeff::parse_ratfunc(&f.render("k")).unwrap(), f);
    }

    #[test]
    fn element_parse_print_round_trip_sl2(x in element(sl2(), 8)) {
        prop_assert_eq!(parse_element(x.presentation(), &x.to_text()).unwrap(), x);
    }

    #[test]
    fn element_parse_print_round_trip_n2(x in element(n2_ambient().unwrap(), 6)) {
        prop_assert_eq!(parse_element(x.presentation(), &x.to_text()).unwrap(), x);
    }

    #[test]
    fn skew_symmetry_on_random_elements(x in element(sl2(), 6), y in element(sl2(), 6), n in 0i64..=2) {
        prop_assert_eq!(y.nth_product(&x, n).unwrap(), skew_rhs(&x, &y, n).unwrap());
    }

    #[test]
    fn skew_symmetry_on_odd_fields(x in element(bc(), 6), y in element(bc(), 6), n in -1i64..=2) {
        prop_assert_eq!(y.nth_product(&x, n).unwrap(), skew_rhs(&x, &y, n).unwrap());
    }

    #[test]
    fn jacobi_on_random_elements(
        x in element(symplectic(), 4),
        y in element(symplectic(), 4),
        z in element(symplectic(), 4),
        m in 0i64..=2,
        n in -1i64..=2,
    ) {
        prop_assert!(jacobi_defect(&x, &y, &z, m, n).unwrap().is_zero());
    }

    #[test]
    fn derivative_is_a_derivation_of_normal_order(x in element(sl2(), 4), y in element(sl2(), 4)) {
        let lhs = x.normal_order(&y).unwrap().derivative();
        let rhs = &x.derivative().normal_order(&y).unwrap() + &x.normal_order(&y.derivative()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
