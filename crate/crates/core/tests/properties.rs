use proptest::prelude::*;

use vamat_core::formal::{binom_sum_identity_check, gen_binomial, LaurentPoly};
use vamat_core::matrix::{diamond, UMatrix};
use vamat_core::reduction::{assemble_block, ReducedBlock, ReductionEngine};
use vamat_core::voa::Voa;
use vamat_core::{Scalar, State};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..6, -5i64..5, 1i64..4), 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, n, d) in terms {
            p.add_term(e, Scalar::new(n, d));
        }
        p
    })
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-4i64..5, 1i64..4).prop_map(|(n, d)| Scalar::new(n, d))
}

/// A random combination of basis states of weight at most `w`.
fn state(voa: &Voa, w: u32) -> impl Strategy<Value = State> {
    let basis = voa.basis_up_to(w);
    prop::collection::vec((0..basis.len(), coeff()), 0..4).prop_map(move |terms| {
        let mut s = State::zero();
        for (i, c) in terms {
            s.add_term(basis[i].clone(), c);
        }
        s
    })
}

fn matrix(voa: &Voa, size: usize, w: u32) -> impl Strategy<Value = UMatrix> {
    prop::collection::vec((0..=size, 0..=size, state(voa, w)), 0..3).prop_map(move |entries| {
        let mut a = UMatrix::zero(size);
        for (k, l, s) in entries {
            let mut cur = a.get(k, l);
            cur.add_state(&s);
            a.set(k, l, cur).unwrap();
        }
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_multiplication_is_commutative_and_associative(p in laurent(), q in laurent(), r in laurent()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn pascal_rule(a in -20i64..20, m in 1u64..12) {
        prop_assert_eq!(gen_binomial(a, m), gen_binomial(a - 1, m) + gen_binomial(a - 1, m - 1));
    }

    #[test]
    fn binomial_collapse(k in 0u32..10, n in 0u32..10, l in 0u32..10, p in 0u32..10) {
        prop_assume!(p <= n);
        prop_assert!(binom_sum_identity_check(k, n, l, p));
    }

    #[test]
    fn derivative_is_a_derivation(p in laurent(), q in laurent()) {
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_is_idempotent_and_linear(
        (a, b, x, y) in {
            let voa = Voa::heisenberg(8);
            (matrix(&voa, 1, 4), matrix(&voa, 1, 4), coeff(), coeff())
        }
    ) {
        let eng = ReductionEngine::new(Voa::heisenberg(8), 1);
        let ra = eng.canonical_reduce(&a, 5).unwrap();
        prop_assert_eq!(eng.canonical_reduce(&ra, 5).unwrap(), ra.clone());
        let rb = eng.canonical_reduce(&b, 5).unwrap();
        let comb = a.scale(&x).add(&b.scale(&y)).unwrap();
        let lhs = eng.canonical_reduce(&comb, 5).unwrap();
        prop_assert_eq!(lhs, ra.scale(&x).add(&rb.scale(&y)).unwrap());
        // the difference lies in the span
        let diff = a.sub(&ra).unwrap();
        prop_assert!(eng.canonical_reduce(&diff, 5).unwrap().is_zero());
    }

    #[test]
    fn diamond_is_bilinear(
        (a, b, c, x) in {
            let voa = Voa::virasoro(Scalar::new(1, 2), 12);
            (matrix(&voa, 2, 3), matrix(&voa, 2, 3), matrix(&voa, 2, 3), coeff())
        }
    ) {
        let voa = Voa::virasoro(Scalar::new(1, 2), 12);
        let left = diamond(&voa, &a.scale(&x).add(&b).unwrap(), &c).unwrap();
        let expect = diamond(&voa, &a, &c).unwrap().scale(&x).add(&diamond(&voa, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, expect);
        let right = diamond(&voa, &c, &a.add(&b).unwrap()).unwrap();
        let expect = diamond(&voa, &c, &a).unwrap().add(&diamond(&voa, &c, &b).unwrap()).unwrap();
        prop_assert_eq!(right, expect);
    }

    #[test]
    fn more_generators_never_grow_the_quotient(k in 0usize..=1, l in 0usize..=1, c in 1u32..5) {
        let voa = Voa::heisenberg(8);
        let small = ReducedBlock::echelonize(&assemble_block(&voa, 1, (k, l), c).unwrap());
        let big = ReducedBlock::echelonize(&assemble_block(&voa, 1, (k, l), c + 1).unwrap());
        let (ds, db) = (small.quotient_dims(), big.quotient_dims());
        let mut acc_s = 0;
        let mut acc_b = 0;
        for w in 0..=c {
            acc_s += ds[&w];
            acc_b += db[&w];
            prop_assert!(acc_b <= acc_s, "cumulative dimension grew at weight {}", w);
        }
    }
}
