//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Three printed statements are false as written. For those the statement
//! as printed is evaluated and reported, then the corrected statement. The
//! run succeeds when every corrected statement passes and every entry of
//! [`KNOWN_DEVIATIONS`] fails as printed; a printed statement that starts
//! passing is also an error, because the deviation list would be stale.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use voa_core::coeff::{rat, RatFunc, Rational};
use voa_core::constructions::{
    affine, bc_system, beta_gamma, deformable_form, free_fermion, heisenberg, limit_presentation, n2_ambient,
    sl3_root_heisenberg, symplectic_fermion,
};
use voa_core::lie::{builtin_lie, BUILTIN_NAMES};
use voa_core::linear::{commutant_basis, nongeneric_levels};
use voa_core::suites::checks::{self, Reading};
use voa_core::va::{check_presentation, tensor_product, Element};
use voa_core::Result;

/// Criteria whose printed statement is expected to fail, with the reason.
const KNOWN_DEVIATIONS: [(u32, &str); 3] = [
    (2, "the k-term of the G+G- identity is (-1)^i k/(i+2) and the bc-bc coefficient is +(i+2)/(i+1)"),
    (5, "identities 3 and 6 subtract q_{k,0}, not q_{i,0}"),
    (7, "invariance holds for zero modes only; positive modes act nontrivially"),
];

struct Line {
    criterion: u32,
    printed: bool,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn all(results: Vec<Result<checks::Outcome>>) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in results {
        match r {
            Ok((pass, d)) => {
                ok &= pass;
                if !pass {
                    parts.push(d);
                }
            }
            Err(e) => {
                ok = false;
                parts.push(format!("error: {e}"));
            }
        }
    }
    (ok, if parts.is_empty() { "all checks hold".into() } else { parts.join("; ") })
}

fn timed(criterion: u32, printed: bool, limit: Duration, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (pass, mut detail) = f();
    let elapsed = t.elapsed();
    let in_time = elapsed <= limit;
    if !in_time {
        detail.push_str(&format!("; exceeded the {}s budget", limit.as_secs()));
    }
    Line { criterion, printed, pass: pass && in_time, detail, elapsed }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criterion1() -> Line {
    timed(1, false, secs(30), || {
        let mut out = Vec::new();
        for lie in ["sl2", "osp(1|2)", "sl3"] {
            let (sdim, h_num, h_den) = common::sugawara_data(lie);
            let k = RatFunc::var();
            let expected = (&k.scale(&rat(sdim, 1)) / &(&k + &RatFunc::from_frac(h_num, h_den))).clone();
            let t = Instant::now();
            let r = checks::sugawara_charge(lie, &expected);
            let slow = t.elapsed() > secs(10);
            out.push(r.map(|(ok, d)| (ok && !slow, format!("{lie}: {d}"))));
        }
        let (ok, _) = all(out);
        (ok, "sl2 3k/(k+2), osp(1|2) 2k/(2k+3), sl3 8k/(k+3)".into())
    })
}

fn criterion2(reading: Reading) -> Line {
    timed(2, reading == Reading::Printed, secs(60), || {
        let mut out = Vec::new();
        for i in 0..=2 {
            out.push(checks::n2_xb_xc(i, reading).map(|(ok, d)| (ok, format!("G+G- i={i}: {d}"))));
            out.push(checks::n2_charged_bc(i));
            out.push(checks::n2_bc_bc(i, reading).map(|(ok, d)| (ok, format!("bc-bc i={i}: {d}"))));
        }
        all(out)
    })
}

fn criterion3() -> Line {
    timed(3, false, secs(60), || all(vec![checks::n2_j_commutes(), checks::n2_virasoro(), checks::n2_primaries()]))
}

fn criterion4() -> Line {
    timed(4, false, secs(1800), || {
        let r = all(vec![checks::osp_weight2(), checks::osp_decoupling_check(1), checks::osp_decoupling_check(2)]);
        if r.0 {
            (true, "c = -k(4k+5)/((k+2)(2k+3)); roots {-4} and {-4, -8/3}; poles {-2, -3/2}".into())
        } else {
            r
        }
    })
}

fn criterion5(reading: Reading) -> Line {
    timed(5, reading == Reading::Printed, secs(300), || {
        let mut out: Vec<Result<checks::Outcome>> = (1..=6)
            .map(|i| checks::sl3_identity_check(i, reading).map(|(ok, d)| (ok, format!("identity {i}: {d}"))))
            .collect();
        out.push(checks::sl3_derivative());
        all(out)
    })
}

fn criterion6() -> Line {
    timed(6, false, secs(600), || {
        let oracle = common::parafermion_sl2_dims(5)[2..].to_vec();
        let frozen = vec![1, 2, 4, 6];
        let mut out = vec![checks::parafermion_dimensions(), checks::parafermion_nongeneric()];
        out.push(Ok((oracle == frozen, format!("character oracle gives {oracle:?}"))));
        all(out)
    })
}

fn criterion7(reading: Reading) -> Line {
    timed(7, reading == Reading::Printed, secs(600), || {
        let mut out: Vec<Result<checks::Outcome>> = Vec::new();
        for k in 0..=2 {
            out.push(match reading {
                Reading::Printed => checks::s1_orbifold_all_modes(k),
                Reading::Corrected => checks::s1_orbifold_invariant(k),
            });
        }
        out.push(match reading {
            Reading::Printed => checks::as_all_modes(),
            Reading::Corrected => checks::as_invariants(),
        });
        out.push(checks::as_virasoro());
        all(out)
    })
}

fn criterion8() -> Line {
    timed(8, false, secs(300), || {
        let mut out = Vec::new();
        for lie in ["sl2", "osp(1|2)"] {
            out.push(checks::deformable_limit(lie));
            out.push(checks::psi_homomorphism(lie, 20, 2024));
        }
        all(out)
    })
}

fn builtin_presentations() -> Result<Vec<std::sync::Arc<voa_core::va::VAPresentation>>> {
    let mut v = Vec::new();
    for name in BUILTIN_NAMES {
        v.push(affine(&builtin_lie(name)?, RatFunc::var())?);
    }
    for n in 1..=2 {
        v.extend([heisenberg(n)?, free_fermion(n)?, bc_system(n)?, beta_gamma(n)?, symplectic_fermion(n)?]);
    }
    v.push(free_fermion(3)?);
    v.push(n2_ambient()?);
    v.push(sl3_root_heisenberg()?);
    v.push(tensor_product(&*symplectic_fermion(1)?, &*beta_gamma(1)?)?);
    for lie in ["sl2", "osp(1|2)"] {
        let d = deformable_form(&*affine(&builtin_lie(lie)?, RatFunc::var())?)?;
        v.push(limit_presentation(&d)?);
        v.push(d);
    }
    Ok(v)
}

fn random_levels(rng: &mut ChaCha8Rng, excluded: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < 3 {
        let k = rat(rng.gen_range(-300..=300), rng.gen_range(1..=9));
        if !excluded.contains(&k) && !out.contains(&k) {
            out.push(k);
        }
    }
    out
}

fn criterion9() -> Line {
    timed(9, false, secs(900), || {
        let mut out: Vec<Result<checks::Outcome>> = Vec::new();
        match builtin_presentations() {
            Ok(ps) => {
                for p in ps {
                    let r = check_presentation(&p);
                    out.push(Ok((r.ok(), format!("{}: {:?} {:?}", p.name, r.skew_failures, r.jacobi_failures))));
                }
            }
            Err(e) => out.push(Err(e)),
        }

        use common::fock::FreeField;
        let fields: Vec<(FreeField, Result<std::sync::Arc<voa_core::va::VAPresentation>>)> = vec![
            (FreeField::heisenberg(), heisenberg(1)),
            (FreeField::bc(), bc_system(1)),
            (FreeField::betagamma(), beta_gamma(1)),
            (FreeField::symplectic(), symplectic_fermion(1)),
        ];
        for (ff, p) in fields {
            out.push(p.map(|p| {
                let (n, bad) = common::fock_equivalence(&ff, &p, 6);
                (bad.is_empty(), format!("{}: {n} products, mismatches {bad:?}", ff.name))
            }));
        }

        // Determinism across worker counts.
        let solve_json = |threads: usize| -> Result<String> {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("pool");
            pool.install(|| {
                let p = checks::affine_at_k("sl2")?;
                let h = Element::generator(&p, 0);
                Ok(commutant_basis(&p, &[h], &rat(4, 1))?.to_json().to_string())
            })
        };
        out.push(match (solve_json(1), solve_json(4)) {
            (Ok(a), Ok(b)) => Ok((a == b, "kernel bases differ between 1 and 4 workers".into())),
            (Err(e), _) | (_, Err(e)) => Err(e),
        });

        // Evaluation consistency at three random admissible levels.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let cases: Vec<(&str, Vec<usize>, i64)> = vec![("sl2", vec![0], 3), ("osp(1|2)", vec![0, 1, 2], 2)];
        for (lie, cur, w) in cases {
            out.push((|| {
                let p = checks::affine_at_k(lie)?;
                let currents: Vec<Element> = cur.iter().map(|&i| Element::generator(&p, i)).collect();
                let r = commutant_basis(&p, &currents, &rat(w, 1))?;
                let excluded: Vec<Rational> = nongeneric_levels(&r)?.levels.iter().map(|l| l.exact.clone()).collect();
                let levels = random_levels(&mut rng, &excluded);
                let mut ok = true;
                for k0 in &levels {
                    ok &= voa_core::linear::check_evaluation(&r, k0)?;
                }
                Ok((ok, format!("{lie} weight {w}: evaluation at {}", levels.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))))
            })());
        }
        all(out)
    })
}

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return;
    }
    let runs: Vec<Box<dyn FnOnce() -> Line>> = vec![
        Box::new(criterion1),
        Box::new(|| criterion2(Reading::Printed)),
        Box::new(|| criterion2(Reading::Corrected)),
        Box::new(criterion3),
        Box::new(criterion4),
        Box::new(|| criterion5(Reading::Printed)),
        Box::new(|| criterion5(Reading::Corrected)),
        Box::new(criterion6),
        Box::new(|| criterion7(Reading::Printed)),
        Box::new(|| criterion7(Reading::Corrected)),
        Box::new(criterion8),
        Box::new(criterion9),
    ];
    let mut unexpected = Vec::new();
    for run in runs {
        let l = run();
        let tag = if l.pass { "PASS" } else { "FAIL" };
        let reading = match (l.printed, KNOWN_DEVIATIONS.iter().any(|(c, _)| *c == l.criterion)) {
            (true, _) => " (as printed)",
            (false, true) => " (corrected)",
            (false, false) => "",
        };
        println!("{tag} criterion {}{reading} [{:.1}s]: {}", l.criterion, l.elapsed.as_secs_f64(), l.detail);
        let expected = if l.printed { !l.pass } else { l.pass };
        if !expected {
            unexpected.push(l.criterion);
        }
        if l.printed && !l.pass {
            if let Some((_, why)) = KNOWN_DEVIATIONS.iter().find(|(c, _)| *c == l.criterion) {
                println!("     known deviation: {why}");
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria pass (printed-statement failures match the deviation list)");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
