use std::time::Instant;

use vamat_core::formal::gen_binomial;
use vamat_core::matrix::UMatrix;
use vamat_core::reduction::ReductionEngine;
use vamat_core::report::sample_cases;
use vamat_core::voa::Voa;
use vamat_core::zhu::*;
use vamat_core::{Monomial, Scalar, State};

/// `Σ_m C(-N-1,m) Σ_i C(N + wt u, i) u_(i-N-m-1) v`, expanded by hand.
fn dlm_by_modes(voa: &Voa, n: usize, u: &Monomial, v: &State) -> State {
    let us = State::basis(u.clone());
    let n = n as i64;
    let mut out = State::zero();
    for m in 0..=n {
        let c = gen_binomial(-n - 1, m as u64);
        for i in 0..=(n + u.weight() as i64) {
            let d = gen_binomial(n + u.weight() as i64, i as u64);
            out.add_scaled(&voa.mode_product(&us, i - n - m - 1, v).unwrap(), &(&c * &d));
        }
    }
    out
}

fn mono(parts: &[u32]) -> Monomial {
    Monomial::new(parts.to_vec()).unwrap()
}

#[test]
fn level_n_product_is_the_corner_entry() {
    let t = Instant::now();
    for voa in [Voa::heisenberg(14), Voa::virasoro(Scalar::new(1, 2), 14)] {
        let basis = voa.basis_up_to(4);
        for n in 0..=3 {
            for u in &basis {
                for v in &basis {
                    let (us, vs) = (State::basis(u.clone()), State::basis(v.clone()));
                    let d = dlm_product(&voa, n, &us, &vs).unwrap();
                    assert_eq!(d, corner_product(&voa, n, &us, &vs).unwrap(), "N={n} u={u:?} v={v:?}");
                    assert_eq!(d, dlm_by_modes(&voa, n, u, &vs), "N={n} u={u:?} v={v:?}");
                }
            }
        }
    }
    eprintln!("corner agreement: {:?}", t.elapsed());
}

#[test]
fn vacuum_is_a_left_unit() {
    let voa = Voa::virasoro(Scalar::new(1, 2), 8);
    for n in 0..=2 {
        for v in voa.basis_up_to(4) {
            let vs = State::basis(v);
            assert_eq!(dlm_product(&voa, n, &State::vacuum(), &vs).unwrap(), vs);
        }
    }
}

#[test]
fn conformal_vector_is_central() {
    let cases = [
        (Voa::heisenberg(10), 0, 4),
        (Voa::heisenberg(10), 1, 4),
        (Voa::virasoro(Scalar::new(1, 2), 12), 0, 6),
        (Voa::virasoro(Scalar::new(1, 2), 12), 1, 4),
    ];
    for (voa, n, cutoff) in cases {
        let eng = ReductionEngine::new(voa, n);
        let r = center_check(&eng, cutoff, 1).unwrap();
        assert!(r.passed, "N={n}: {:?}", r.first_failure());
    }
}

#[test]
fn heisenberg_quotient_is_polynomial() {
    let voa = Voa::heisenberg(8);
    let p0 = polynomial_algebra_probe(&voa, 0).unwrap();
    assert!(p0.report.passed);
    assert_eq!(p0.power_classes, vec![State::vacuum()]);
    let p3 = polynomial_algebra_probe(&voa, 3).unwrap();
    assert!(p3.report.passed, "{:?}", p3.report.first_failure());
    assert_eq!(p3.product_classes[2], p3.power_classes[2]);
    let p5 = polynomial_algebra_probe(&voa, 5).unwrap();
    assert!(p5.report.passed, "{:?}", p5.report.first_failure());
    assert!(p5.dimensions.values().all(|&d| d == 1));
    assert!(polynomial_algebra_probe(&Voa::virasoro(Scalar::one(), 6), 2).is_err());
}

#[test]
fn zhu_product_is_associative_modulo_o() {
    for voa in [Voa::heisenberg(12), Voa::virasoro(Scalar::new(1, 2), 12)] {
        let eng = ReductionEngine::new(voa.clone(), 0);
        let basis = voa.basis_up_to(2);
        let b = &basis;
        let triples: Vec<_> = b
            .iter()
            .flat_map(|u| b.iter().flat_map(move |v| b.iter().map(move |w| (u, v, w))))
            .collect();
        for (u, v, w) in sample_cases(triples, 40, 3) {
            let (us, vs, ws) = (State::basis(u.clone()), State::basis(v.clone()), State::basis(w.clone()));
            let left = zhu_product(&voa, &zhu_product(&voa, &us, &vs).unwrap(), &ws).unwrap();
            let right = zhu_product(&voa, &us, &zhu_product(&voa, &vs, &ws).unwrap()).unwrap();
            let d = UMatrix::elementary(0, left.sub(&right), 0, 0).unwrap();
            assert!(eng.reduce_with_margin(&d, 1).unwrap().is_zero(), "{u:?} {v:?} {w:?}");
        }
    }
}

#[test]
fn virasoro_square_of_omega() {
    let voa = Voa::virasoro(Scalar::new(1, 2), 8);
    let om = voa.conformal_vector();
    let expected: State = [(mono(&[2, 2]), 1), (mono(&[3]), 2), (mono(&[2]), 2)]
        .into_iter()
        .map(|(m, c)| (m, Scalar::from_int(c)))
        .collect();
    assert_eq!(zhu_product(&voa, &om, &om).unwrap(), expected);
    assert_eq!(dlm_by_modes(&voa, 0, &mono(&[2]), &om), expected);
}
