//! Exit criteria. Every comparison is exact rational equality; each
//! criterion prints one PASS/FAIL line and the process fails if any does.

use std::process::Command;
use std::time::{Duration, Instant};

use polyg::families::reduction_all_ones;
use polyg::identities::{default_grid, run_suite, Theorem, DEFAULT_MODULI};
use polyg::selftest::{self, random_indices, SuiteResult};

const N_MAX: usize = 12;
const GRID_TIME_LIMIT: Duration = Duration::from_secs(120);
const RANDOM_SEED: u64 = 0;
const RANDOM_COUNT: usize = 20;
const LI_ORDER: usize = 16;

type Outcome = Result<String, String>;

fn suite(res: SuiteResult) -> Outcome {
    if res.passed() {
        Ok(format!("{} checks", res.checks))
    } else {
        Err(format!(
            "{} of {} checks failed, first: {}",
            res.failures.len(),
            res.checks,
            res.failures[0]
        ))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut msgs = Vec::new();
    for p in parts {
        msgs.push(p?);
    }
    Ok(msgs.join("; "))
}

/// `check --theorem all` over the full depth <= 3 grid: theorems 2.1-2.6
/// for every index plus the reductions for every depth present.
fn theorem_grid() -> Outcome {
    let grid = default_grid();
    let start = Instant::now();
    let reports = run_suite(&grid, N_MAX, DEFAULT_MODULI).map_err(|e| e.to_string())?;
    let mut reductions = Vec::new();
    for r in 1..=3 {
        reductions.push(reduction_all_ones(N_MAX, r).map_err(|e| e.to_string())?);
    }
    let elapsed = start.elapsed();
    let expected = grid.len() * (5 + DEFAULT_MODULI.len());
    if reports.len() != expected {
        return Err(format!("expected {expected} reports, got {}", reports.len()));
    }
    for t in &Theorem::ALL[..6] {
        if !reports.iter().any(|r| r.theorem() == *t) {
            return Err(format!("theorem {t} never ran"));
        }
    }
    if let Some(bad) = reports.iter().chain(&reductions).find(|r| !r.passed()) {
        let rec = bad.failures().next().unwrap();
        return Err(format!(
            "theorem {} k={} m={:?} n={}: lhs {} rhs {}",
            bad.theorem(),
            bad.index(),
            bad.modulus(),
            rec.n,
            rec.lhs.as_ref().unwrap(),
            rec.rhs.as_ref().unwrap()
        ));
    }
    if elapsed > GRID_TIME_LIMIT {
        return Err(format!("grid took {elapsed:?}, limit {GRID_TIME_LIMIT:?}"));
    }
    Ok(format!(
        "{} indices, {} reports, {:.1}s",
        grid.len(),
        reports.len() + reductions.len(),
        elapsed.as_secs_f64()
    ))
}

fn reductions() -> Outcome {
    suite(selftest::reductions(3, N_MAX).map_err(|e| e.to_string())?)
}

fn multi_stirling_cross_validation() -> Outcome {
    let ks = random_indices(RANDOM_SEED, RANDOM_COUNT, 3);
    all(vec![
        suite(selftest::li_cross_check(&ks, LI_ORDER)),
        suite(selftest::all_ones_multi_stirling(10)),
    ])
}

fn derivative_identity() -> Outcome {
    let ks = random_indices(RANDOM_SEED, RANDOM_COUNT, 3);
    suite(selftest::derivative_identity(&ks, LI_ORDER))
}

fn degeneration() -> Outcome {
    suite(selftest::degeneration(&default_grid(), 3, N_MAX).map_err(|e| e.to_string())?)
}

fn vanishing_and_degree() -> Outcome {
    suite(selftest::vanishing_and_degree(&default_grid(), N_MAX).map_err(|e| e.to_string())?)
}

fn genocchi_integrality() -> Outcome {
    suite(selftest::genocchi_integrality(20).map_err(|e| e.to_string())?)
}

fn stirling_inversion() -> Outcome {
    suite(selftest::stirling_inversion(12))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_polyg"))
            .args(["selftest", "--seed", "0"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    if !a.status.success() || !b.status.success() {
        return Err(format!(
            "selftest exited with {} / {}",
            a.status, b.status
        ));
    }
    if a.stdout != b.stdout {
        return Err("outputs differ".to_string());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC1 theorem checks over the depth<=3 grid", theorem_grid),
        ("AC2 all-ones reductions r=0..3", reductions),
        ("AC3 multi-Stirling cross-validation", multi_stirling_cross_validation),
        ("AC4 derivative identity", derivative_identity),
        ("AC5 lambda=0 degeneration", degeneration),
        ("AC6 vanishing and degree law", vanishing_and_degree),
        ("AC7 Genocchi integrality n<=20", genocchi_integrality),
        ("AC8 Stirling inversion n,m<=12", stirling_inversion),
        ("AC9 selftest determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
