//! Acceptance criteria, one line each. Every criterion is exact; the time
//! budgets are wall-clock limits for the whole criterion.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use vamat_core::checks::{
    associator_suite, binomial_collapse_suite, corner_agreement_suite, derivative_product_suite, unit_law_suite,
};
use vamat_core::gr::{
    build_gr, graded_axiom_suite, homomorphism_suite, o_annihilation_suite, LowerBoundedModule, OmegaFiltration,
};
use vamat_core::reduction::{cn_quotient_dimension, ReductionEngine};
use vamat_core::report::Report;
use vamat_core::voa::{voa_axiom_suite, AxiomSuiteConfig, Voa};
use vamat_core::zhu::{center_check, polynomial_algebra_probe};
use vamat_core::{Scalar, State};

type Outcome = Result<String, String>;

fn require(r: &Report, label: &str) -> Result<u64, String> {
    if r.passed {
        Ok(r.checks)
    } else {
        Err(format!("{label}: {:?}", r.first_failure()))
    }
}

fn algebras() -> Vec<Voa> {
    vec![Voa::heisenberg(14), Voa::virasoro(Scalar::new(1, 2), 14)]
}

fn modules(depth: u32) -> Vec<(&'static str, Arc<LowerBoundedModule>)> {
    vec![
        ("Fock(1)", Arc::new(LowerBoundedModule::fock(Voa::heisenberg(14), Scalar::one(), depth).unwrap())),
        (
            "Verma(1/2,1/16)",
            Arc::new(LowerBoundedModule::verma(Voa::virasoro(Scalar::new(1, 2), 14), Scalar::new(1, 16), depth).unwrap()),
        ),
    ]
}

fn binomial_collapse() -> Outcome {
    let r = binomial_collapse_suite(6);
    Ok(format!("{} identities", require(&r, "collapse")?))
}

fn voa_axioms() -> Outcome {
    let mut total = 0;
    let mut cfg = AxiomSuiteConfig::new(6);
    total += require(&voa_axiom_suite(&Voa::heisenberg(6), &cfg), "Heisenberg")?;
    cfg.weight_cutoff = 8;
    for c in [Scalar::new(1, 2), Scalar::one(), Scalar::new(-22, 5)] {
        total += require(&voa_axiom_suite(&Voa::virasoro(c.clone(), 8), &cfg), &format!("Virasoro c={c}"))?;
    }
    Ok(format!("{total} checks"))
}

fn unit_laws() -> Outcome {
    let mut total = 0;
    for voa in algebras() {
        for n in 0..=2 {
            total += require(&unit_law_suite(&ReductionEngine::new(voa.clone(), n), 4).map_err(|e| e.to_string())?, "unit")?;
        }
    }
    Ok(format!("{total} checks"))
}

fn derivative_products() -> Outcome {
    let mut total = 0;
    for voa in algebras() {
        let r = derivative_product_suite(&ReductionEngine::new(voa, 2), 3).map_err(|e| e.to_string())?;
        total += require(&r, "derivative products")?;
    }
    Ok(format!("{total} checks"))
}

fn homomorphism() -> Outcome {
    let mut total = 0;
    let mut skipped = 0;
    for (name, m) in modules(4) {
        for n in 0..=2 {
            let g = build_gr(m.clone(), n, 5).map_err(|e| e.to_string())?;
            let r = homomorphism_suite(&g, 4, usize::MAX, 0).map_err(|e| e.to_string())?;
            total += require(&r, &format!("{name} N={n}"))?;
            skipped += r.skipped;
        }
    }
    Ok(format!("{total} checks, {skipped} outside the depth window"))
}

fn o_annihilation() -> Outcome {
    let mut total = 0;
    for (name, m) in modules(4) {
        let g = build_gr(m, 2, 5).map_err(|e| e.to_string())?;
        total += require(&o_annihilation_suite(&g, 4).map_err(|e| e.to_string())?, name)?;
    }
    Ok(format!("{total} checks"))
}

fn graded_axioms() -> Outcome {
    let mut total = 0;
    for (name, m) in modules(4) {
        for n in 0..=2 {
            let g = build_gr(m.clone(), n, 5).map_err(|e| e.to_string())?;
            total += require(&graded_axiom_suite(&g, 5).map_err(|e| e.to_string())?, &format!("{name} N={n}"))?;
        }
    }
    Ok(format!("{total} checks"))
}

fn partitions_count(d: usize) -> usize {
    vamat_core::state::partitions(d as u32, 1).len()
}

fn fock_filtration() -> Outcome {
    let m = LowerBoundedModule::fock(Voa::heisenberg(14), Scalar::one(), 5).unwrap();
    // stable across v-cutoffs 5, 6 and 7
    let omega = OmegaFiltration::stabilized(&m, 3, 7, 2).map_err(|e| e.to_string())?;
    let h = Scalar::new(1, 2);
    let mut slices = 0;
    for s in &omega.slices {
        let d = (&s.weight - &h).to_i64().unwrap() as usize;
        let expected = if d <= s.level { partitions_count(d) } else { 0 };
        let inside = s.included.iter().all(|x| x.iter().all(|(b, _)| b.depth() as usize <= s.level));
        if s.included.len() != expected || !inside {
            return Err(format!("level {} depth {d}: dim {} expected {expected}", s.level, s.included.len()));
        }
        slices += 1;
    }
    Ok(format!("{slices} slices equal T_n"))
}

fn classical_corner() -> Outcome {
    let mut total = 0;
    for voa in algebras() {
        total += require(&corner_agreement_suite(&voa, 3, 4).map_err(|e| e.to_string())?, "corner")?;
        for n in 0..=1 {
            let r = center_check(&ReductionEngine::new(voa.clone(), n), 4, 1).map_err(|e| e.to_string())?;
            total += require(&r, &format!("center N={n}"))?;
        }
    }
    let p = polynomial_algebra_probe(&Voa::heisenberg(10), 5).map_err(|e| e.to_string())?;
    total += require(&p.report, "polynomial probe")?;
    let ranks: Vec<usize> = p.dimensions.values().copied().collect();
    if ranks != vec![1; 6] {
        return Err(format!("quotient ranks {ranks:?}"));
    }
    Ok(format!("{total} checks"))
}

/// Dense rank of `u_(-2) v` over all basis pairs, weight by weight.
fn c2_oracle(voa: &Voa, w_max: u32) -> Vec<usize> {
    (0..=w_max)
        .map(|w| {
            let cols = voa.basis(w);
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for u in voa.basis_up_to(w) {
                for v in voa.basis_up_to(w) {
                    let s = voa.mode_product(&State::basis(u.clone()), -2, &State::basis(v)).unwrap();
                    if s.is_zero() || s.homogeneous_weight() != Some(w) {
                        continue;
                    }
                    rows.push(cols.iter().map(|m| s.coeff(m)).collect());
                }
            }
            cols.len() - rank(rows)
        })
        .collect()
}

fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let pivot: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c].clone();
            if !f.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

fn c2_and_associators() -> Outcome {
    let voa = Voa::heisenberg(10);
    let dims: Vec<usize> = cn_quotient_dimension(&voa, 2, 4).map_err(|e| e.to_string())?.into_iter().map(|(_, d)| d).collect();
    let oracle = c2_oracle(&voa, 4);
    if dims != vec![1; 5] || dims != oracle {
        return Err(format!("C2 quotient {dims:?}, oracle {oracle:?}"));
    }
    let r = associator_suite(&ReductionEngine::new(Voa::heisenberg(12), 1), 2, 4, 50, 0).map_err(|e| e.to_string())?;
    require(&r, "associators")?;
    if r.checks != 50 {
        return Err(format!("only {} associators within the cutoff", r.checks));
    }
    Ok(format!("C2 dims {dims:?}, {} associators reduce to zero", r.checks))
}

fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect()
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut trees = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(format!("out-{run}"));
        let status = Command::new(env!("CARGO_BIN_EXE_vamat"))
            .args(["verify-all", "--algebra", "heisenberg", "--mu", "1", "--N", "1", "--weight-cutoff", "4", "--depth-cutoff", "4", "--seed", "11"])
            .arg("--out")
            .arg(&out)
            .env("VAMAT_CACHE_DIR", tmp.path().join(format!("cache-{run}")))
            .stdout(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("verify-all exited with {status}"));
        }
        trees.push(read_tree(&out));
    }
    if trees[0] != trees[1] {
        let differing: Vec<&String> = trees[0].keys().filter(|k| trees[0].get(*k) != trees[1].get(*k)).collect();
        return Err(format!("artifacts differ: {differing:?}"));
    }
    Ok(format!("{} artifacts byte-identical", trees[0].len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("binomial collapse", binomial_collapse, Duration::from_secs(1)),
        ("vertex algebra axioms", voa_axioms, Duration::from_secs(30)),
        ("unit laws", unit_laws, Duration::from_secs(60)),
        ("derivative products", derivative_products, Duration::from_secs(60)),
        ("module homomorphism", homomorphism, Duration::from_secs(300)),
        ("O-span annihilation", o_annihilation, Duration::from_secs(120)),
        ("graded module axioms", graded_axioms, Duration::from_secs(60)),
        ("Fock filtration is the depth filtration", fock_filtration, Duration::from_secs(120)),
        ("classical corner", classical_corner, Duration::from_secs(120)),
        ("C2 quotient and associators", c2_and_associators, Duration::from_secs(120)),
        ("deterministic artifacts", determinism, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let result = run();
        let elapsed = t.elapsed();
        let line = match (&result, elapsed <= budget) {
            (Ok(detail), true) => format!("PASS  {detail}"),
            (Ok(detail), false) => format!("FAIL  over budget: {detail}"),
            (Err(why), _) => format!("FAIL  {why}"),
        };
        if !(result.is_ok() && elapsed <= budget) {
            failed += 1;
        }
        println!("criterion {:>2} {name:<40} {line} [{:.2?} / {:?}]", i + 1, elapsed, budget);
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
