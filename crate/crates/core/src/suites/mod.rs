//! Named verification suites.
//!
//! A suite is an ordered list of checks. Checks run in parallel, but the
//! report keeps catalog order, so the JSON output without timings is a
//! pure function of the suite name.

pub mod checks;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use checks::Reading;

pub type CheckFn = Box<dyn Fn() -> Result<checks::Outcome> + Send + Sync>;

pub struct Check {
    pub name: String,
    pub run: CheckFn,
}

fn check(name: impl Into<String>, run: impl Fn() -> Result<checks::Outcome> + Send + Sync + 'static) -> Check {
    Check { name: name.into(), run: Box::new(run) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let mut r = self.clone();
        if !timings {
            r.checks.iter_mut().for_each(|c| c.seconds = None);
        }
        serde_json::to_value(r).expect("report serializes")
    }

    pub fn to_pretty(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let tag = if c.status == Status::Pass { "PASS" } else { "FAIL" };
            let t = c.seconds.map(|s| format!(" ({s:.2}s)")).unwrap_or_default();
            out.push_str(&format!("  {tag} {}{t}: {}\n", c.name, c.detail));
        }
        let n = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{n}/{} passed\n", self.checks.len()));
        out
    }
}

/// Suite names in catalog order. `-extended` suites are slow.
pub const SUITES: [&str; 8] = [
    "sugawara",
    "n2-universal",
    "osp-coset",
    "osp-coset-extended",
    "sl3-limit",
    "free-orbifolds",
    "deformable-limit",
    "parafermion-sl2",
];

pub fn catalog(name: &str) -> Result<Vec<Check>> {
    let mut v = Vec::new();
    match name {
        "sugawara" => {
            for lie in ["sl2", "osp(1|2)", "sl3"] {
                v.push(check(format!("{lie} central charge"), move || {
                    checks::sugawara_charge(lie, &checks::expected_sugawara(lie)?)
                }));
                v.push(check(format!("{lie} currents primary"), move || checks::currents_primary(lie)));
            }
        }
        "n2-universal" => {
            for i in 0..=2 {
                v.push(check(format!("G+ G- product, i = {i}"), move || checks::n2_xb_xc(i, Reading::Corrected)));
                v.push(check(format!("charged bc products, i = {i}"), move || checks::n2_charged_bc(i)));
                v.push(check(format!("bc bc product, i = {i}"), move || checks::n2_bc_bc(i, Reading::Corrected)));
            }
            v.push(check("J commutes with F, L, G", checks::n2_j_commutes));
            v.push(check("L is Virasoro", checks::n2_virasoro));
            v.push(check("F, G primary", checks::n2_primaries));
        }
        "osp-coset" => {
            v.push(check("weight 2 commutant", checks::osp_weight2));
            v.push(check("decoupling at weight 4", || checks::osp_decoupling_check(1)));
            v.push(check("decoupling at weight 6", || checks::osp_decoupling_check(2)));
        }
        "osp-coset-extended" => {
            v.push(check("decoupling at weight 8", || checks::osp_decoupling_check(3)));
        }
        "sl3-limit" => {
            for i in 1..=6 {
                v.push(check(format!("decoupling identity {i}"), move || checks::sl3_identity_check(i, Reading::Corrected)));
            }
            v.push(check("derivative of c", checks::sl3_derivative));
        }
        "free-orbifolds" => {
            for k in 0..=2 {
                v.push(check(format!("w~{} invariant in S(1)", 2 * k + 1), move || checks::s1_orbifold_invariant(k)));
            }
            v.push(check("A(1) Virasoro", checks::a1_virasoro));
            v.push(check("A(1) x S(1) invariants", checks::as_invariants));
            v.push(check("A(1) x S(1) Virasoro", checks::as_virasoro));
        }
        "deformable-limit" => {
            for lie in ["sl2", "osp(1|2)"] {
                v.push(check(format!("{lie} limit presentation"), move || checks::deformable_limit(lie)));
                v.push(check(format!("{lie} psi homomorphism"), move || checks::psi_homomorphism(lie, 20, 7)));
            }
        }
        "parafermion-sl2" => {
            v.push(check("dimensions", checks::parafermion_dimensions));
            v.push(check("nongeneric levels", checks::parafermion_nongeneric));
            v.push(check("evaluation consistency", || {
                let p = checks::affine_at_k("sl2")?;
                let h = crate::va::Element::generator(&p, 0);
                checks::evaluation_consistency(&p, &[h], 3, 11)
            }));
        }
        other => return Err(Error::UnknownName(format!("suite {other}"))),
    }
    Ok(v)
}

pub fn run_checks(suite: &str, list: &[Check]) -> SuiteReport {
    let checks = list
        .par_iter()
        .map(|c| {
            let t = Instant::now();
            let (status, detail) = match (c.run)() {
                Ok((true, d)) => (Status::Pass, d),
                Ok((false, d)) => (Status::Fail, d),
                Err(e) => (Status::Fail, format!("error: {e}")),
            };
            CheckResult { name: c.name.clone(), status, detail, seconds: Some(t.elapsed().as_secs_f64()) }
        })
        .collect();
    SuiteReport { suite: suite.to_string(), checks }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    Ok(run_checks(name, &catalog(name)?))
}
