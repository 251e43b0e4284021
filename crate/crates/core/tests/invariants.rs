use num_traits::Zero;
use proptest::prelude::*;

use voa_core::coeff::{int, rat, Poly, Rational};
use voa_core::constructions::{n2_ambient, n2_generators, sugawara};
use voa_core::define::resolve_algebra;
use voa_core::linear::{commutant_basis, express_in_span, Eliminator};
use voa_core::suites::run_suite;
use voa_core::va::{parse_element, Element};

/// Rank of a rational matrix by plain Gaussian elimination; independent of the engine.
fn rank_q(mut m: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let ncols = m.first().map_or(0, |r| r.len());
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in 0..ncols {
                    let t = &f * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn parafermion() -> (std::sync::Arc<voa_core::va::VAPresentation>, Vec<Element>) {
    let r = resolve_algebra("affine:sl2@k").unwrap();
    let h = Element::generator(&r.presentation, 0);
    (r.presentation, vec![h])
}

#[test]
fn commutant_vectors_are_annihilated() {
    for (algebra, currents) in [("affine:sl2@k", vec![0]), ("affine:sl3@k", vec![0, 1])] {
        let p = resolve_algebra(algebra).unwrap().presentation;
        let xs: Vec<Element> = currents.iter().map(|&i| Element::generator(&p, i)).collect();
        let top = if algebra.contains("sl3") { 3 } else { 4 };
        for w in 1..=top {
            let report = commutant_basis(&p, &xs, &int(w)).unwrap();
            for v in &report.kernel {
                for x in &xs {
                    for n in 0..=w {
                        assert!(x.nth_product(v, n).unwrap().is_zero(), "{algebra}: {}_({n}) {} != 0", x.to_text(), v.to_text());
                    }
                }
            }
        }
    }
}

#[test]
fn commutant_is_closed_under_products() {
    let (p, xs) = parafermion();
    let spans: Vec<Vec<Element>> = (0..=4).map(|w| commutant_basis(&p, &xs, &int(w)).unwrap().kernel).collect();
    for wa in 2..=3i64 {
        for wb in 2..=3i64 {
            for a in &spans[wa as usize] {
                for b in &spans[wb as usize] {
                    for n in -1..=3i64 {
                        let w = wa + wb - n - 1;
                        if !(0..=4).contains(&w) {
                            continue;
                        }
                        let prod = a.nth_product(b, n).unwrap();
                        if prod.is_zero() {
                            continue;
                        }
                        let inside = express_in_span(&prod, &spans[w as usize]).unwrap();
                        assert!(inside.is_ok(), "{}_({n}){} leaves the commutant", a.to_text(), b.to_text());
                    }
                }
            }
        }
    }
}

#[test]
fn suites_are_deterministic() {
    for name in ["sugawara", "parafermion-sl2"] {
        let a = run_suite(name).unwrap().to_json(false);
        let b = run_suite(name).unwrap().to_json(false);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn generated_elements_round_trip() {
    let n2 = n2_ambient().unwrap();
    let mut elements: Vec<Element> = n2_generators(&n2).unwrap().into_iter().map(|g| g.element).collect();
    for lie in ["sl2", "sl3", "osp(1|2)"] {
        let p = resolve_algebra(&format!("affine:{lie}@k")).unwrap().presentation;
        elements.push(sugawara(&p).unwrap());
    }
    let (p, xs) = parafermion();
    elements.extend(commutant_basis(&p, &xs, &int(3)).unwrap().kernel);
    for x in elements {
        assert_eq!(parse_element(x.presentation(), &x.to_text()).unwrap(), x, "{}", x.to_text());
    }
}

fn linear_poly() -> impl Strategy<Value = Poly> {
    (-3i64..=3, -2i64..=2).prop_map(|(a, b)| Poly::from_i64(&[a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_drops_only_at_pivot_roots(
        rows in prop::collection::vec(prop::collection::vec(linear_poly(), 3), 1..=4),
        k0 in -6i64..=6,
        d in 1i64..=2,
    ) {
        let k0 = rat(k0, d);
        let mut e = Eliminator::new(3);
        for r in &rows {
            e.push(r.clone());
        }
        let at_k0 = rank_q(rows.iter().map(|r| r.iter().map(|p| p.eval(&k0)).collect()).collect());
        prop_assert!(at_k0 <= e.rank());
        if at_k0 < e.rank() {
            prop_assert!(e.pivot_polys.iter().any(|q| q.eval(&k0).is_zero()), "rank drop at {} missed", k0);
        }
    }
}
