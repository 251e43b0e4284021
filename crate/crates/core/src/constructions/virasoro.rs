use crate::coeff::{RatFunc, Rational};
use crate::error::Result;
use crate::va::Element;

#[derive(Clone, Debug, PartialEq)]
pub struct VirasoroReport {
    pub ok: bool,
    pub central_charge: RatFunc,
    pub detail: String,
}

/// Checks `[L_λ L] = ∂L + 2λL + (λ³/12) c`.
pub fn virasoro_test(l: &Element) -> Result<VirasoroReport> {
    let br = l.lambda_bracket(l)?;
    let get = |n: usize| br.coeffs.get(n).cloned().unwrap_or_else(|| Element::zero(l.presentation()));
    let mut problems = Vec::new();
    if get(0) != l.derivative() {
        problems.push("L_(0)L != ∂L".to_string());
    }
    if get(1) != l.scale(&RatFunc::from_int(2)) {
        problems.push("L_(1)L != 2L".to_string());
    }
    if !get(2).is_zero() {
        problems.push("L_(2)L != 0".to_string());
    }
    let c3 = get(3);
    let vac = Element::vacuum(l.presentation());
    let half_c = c3.coefficient(&Vec::new());
    if c3 != vac.scale(&half_c) {
        problems.push("L_(3)L is not a multiple of the vacuum".to_string());
    }
    if br.coeffs.len() > 4 {
        problems.push("nonzero products above order 3".to_string());
    }
    Ok(VirasoroReport {
        ok: problems.is_empty(),
        central_charge: half_c.scale(&Rational::from_integer(2.into())),
        detail: problems.join("; "),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryReport {
    pub ok: bool,
    pub weight: RatFunc,
    pub detail: String,
}

/// Checks `[L_λ a] = ∂a + λ Δ a` with no higher terms.
pub fn primary_test(l: &Element, a: &Element) -> Result<PrimaryReport> {
    let br = l.lambda_bracket(a)?;
    let get = |n: usize| br.coeffs.get(n).cloned().unwrap_or_else(|| Element::zero(a.presentation()));
    let mut problems = Vec::new();
    if get(0) != a.derivative() {
        problems.push("L_(0)a != ∂a".to_string());
    }
    let one = get(1);
    let weight = match a.terms().iter().next() {
        Some((m, c)) => &one.coefficient(m) / c,
        None => RatFunc::zero(),
    };
    if one != a.scale(&weight) {
        problems.push("L_(1)a is not proportional to a".to_string());
    }
    if br.coeffs.len() > 2 {
        problems.push(format!("nonzero products up to order {}", br.coeffs.len() - 1));
    }
    Ok(PrimaryReport { ok: problems.is_empty(), weight, detail: problems.join("; ") })
}
