//! Oracles written independently of the engine.
#![allow(dead_code)]

pub mod fock;

/// Graded dimensions of `Com(H, V_k(sl2))` at generic level from characters:
/// the charge-zero part of `Π_n 1/((1-q^n)(1-zq^n)(1-z^{-1}q^n))` divided by
/// the Heisenberg character `Π_n 1/(1-q^n)`.
pub fn parafermion_sl2_dims(max_weight: usize) -> Vec<i64> {
    let n = max_weight;
    // series[w][charge + n]
    let width = 2 * n + 1;
    let mut series = vec![vec![0i64; width]; n + 1];
    series[0][n] = 1;
    for mode in 1..=n {
        for charge in [-1i64, 0, 1] {
            // multiply by 1/(1 - z^charge q^mode)
            for w in mode..=n {
                for c in 0..width {
                    let src = c as i64 - charge;
                    if (0..width as i64).contains(&src) {
                        series[w][c] += series[w - mode][src as usize];
                    }
                }
            }
        }
    }
    let mut zero: Vec<i64> = (0..=n).map(|w| series[w][n]).collect();
    for mode in 1..=n {
        // multiply by (1 - q^mode)
        for w in (mode..=n).rev() {
            zero[w] -= zero[w - mode];
        }
    }
    zero
}

/// `c = k sdim(g) / (k + h)` with textbook dual Coxeter numbers, as `(sdim, h_num, h_den)`.
pub fn sugawara_data(lie: &str) -> (i64, i64, i64) {
    match lie {
        "sl2" => (3, 2, 1),
        "sl3" => (8, 3, 1),
        "sp2" => (3, 2, 1),
        "osp(1|2)" => (1, 3, 2),
        _ => panic!("no oracle data for {lie}"),
    }
}

use std::sync::Arc;

use voa_core::coeff::rat;
use voa_core::linear::weight_basis;
use voa_core::va::{Element, Monomial, VAPresentation};

use fock::{accumulate, scale, FreeField, State};

fn modes_of(m: &Monomial) -> fock::Modes {
    m.iter().map(|f| (f.gen as usize, f.deriv as usize)).collect()
}

/// Fock state of an engine element.
pub fn to_state(ff: &FreeField, x: &Element) -> State {
    let mut out = State::new();
    for (m, c) in x.terms() {
        let c = c.as_constant().expect("free-field coefficients are constants");
        accumulate(&mut out, scale(ff.word_state(&modes_of(m)), &c));
    }
    out
}

/// Every monomial of weight at most `max_weight` (half-integer steps).
pub fn monomials_up_to(p: &Arc<VAPresentation>, max_weight: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    for w2 in 0..=2 * max_weight {
        out.extend(weight_basis(p, &rat(w2, 2)).expect("basis").monomials);
    }
    out
}

/// Compare `x_(n) y` from the engine with the Fock oracle for all monomial
/// pairs of total weight at most `max_weight` and `-2 <= n <= wt(x) + wt(y)`.
/// Returns the number of products compared and the mismatches.
pub fn fock_equivalence(ff: &FreeField, p: &Arc<VAPresentation>, max_weight: i64) -> (usize, Vec<String>) {
    let monos = monomials_up_to(p, max_weight);
    let mut compared = 0;
    let mut bad = Vec::new();
    for x in &monos {
        let wx = ff.weight2_of(&modes_of(x));
        for y in &monos {
            let wy = ff.weight2_of(&modes_of(y));
            if wx + wy > 2 * max_weight {
                continue;
            }
            let (ex, ey) = (Element::monomial(p, x.clone()), Element::monomial(p, y.clone()));
            let sy = ff.word_state(&modes_of(y));
            for n in -2..=((wx + wy) / 2) {
                let engine = to_state(ff, &ex.nth_product(&ey, n).expect("product"));
                let oracle = ff.word_mode(&modes_of(x), n, &sy);
                compared += 1;
                if engine != oracle && bad.len() < 5 {
                    bad.push(format!("{}_({n}){}", ex.to_text(), ey.to_text()));
                }
            }
        }
    }
    (compared, bad)
}
