use std::time::Instant;

use vamat_core::voa::{voa_axiom_suite, AxiomSuiteConfig, ModeFault, Voa};
use vamat_core::{Monomial, Scalar};

#[test]
fn heisenberg_axioms_hold() {
    let t = Instant::now();
    let voa = Voa::heisenberg(6);
    let r = voa_axiom_suite(&voa, &AxiomSuiteConfig::new(6));
    println!("heisenberg: {} checks in {:?}", r.checks, t.elapsed());
    assert!(r.passed, "{:?}", r.first_failure());
    assert!(r.checks > 1000);
}

#[test]
fn virasoro_axioms_hold() {
    for c in [Scalar::new(1, 2), Scalar::from_int(1), Scalar::new(-22, 5)] {
        let t = Instant::now();
        let voa = Voa::virasoro(c.clone(), 8);
        let r = voa_axiom_suite(&voa, &AxiomSuiteConfig::new(8));
        println!("virasoro c={c}: {} checks in {:?}", r.checks, t.elapsed());
        assert!(r.passed, "{:?}", r.first_failure());
    }
}

#[test]
fn corrupted_table_is_detected() {
    let voa = Voa::heisenberg(4);
    let a = Monomial::new(vec![1]).unwrap();
    let bad = voa.with_fault(ModeFault {
        u: a.clone(),
        j: 1,
        w: a,
        factor: Scalar::from_int(2),
    });
    let mut cfg = AxiomSuiteConfig::new(4);
    cfg.budget = usize::MAX;
    let r = voa_axiom_suite(&bad, &cfg);
    assert!(!r.passed);
    assert!(r.first_failure().is_some());
}
