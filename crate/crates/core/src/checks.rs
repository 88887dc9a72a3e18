//! Report-producing checks of the matrix product and its quotient, shared
//! by the command-line driver and the test suites.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formal::binom_sum_identity_check;
use crate::matrix::{diamond, lder_product_sides, operator_binomial, right_unit_closed_form, UMatrix};
use crate::reduction::ReductionEngine;
use crate::report::{Counterexample, Report, ReportBuilder};
use crate::state::State;
use crate::voa::Voa;
use crate::zhu::{corner_product, dlm_product};

fn cx(check: &str, description: String, actual: Option<State>) -> Counterexample {
    Counterexample {
        check: check.into(),
        description,
        expected: actual.as_ref().map(|_| State::zero()),
        actual,
    }
}

/// The truncated binomial sums collapse to `δ_{p,0}` for `k, n, l <= max`
/// and `p <= n`.
pub fn binomial_collapse_suite(max: u32) -> Report {
    let mut rb = ReportBuilder::new("truncated binomial sums collapse");
    rb.meta("max_index", max);
    for k in 0..=max {
        for n in 0..=max {
            for l in 0..=max {
                for p in 0..=n {
                    rb.check(binom_sum_identity_check(k, n, l, p), || {
                        cx("binomial collapse", format!("k={k} n={n} l={l} p={p}"), None)
                    });
                }
            }
        }
    }
    rb.finish()
}

/// Left unit exactly; right unit through its closed form and modulo the
/// O-span, for every basis `v` of weight at most `v_cutoff`.
pub fn unit_law_suite(engine: &ReductionEngine, v_cutoff: u32) -> Result<Report> {
    let voa = engine.voa();
    let n = engine.size();
    let one = UMatrix::unit(n);
    let mut rb = ReportBuilder::new("unit laws");
    rb.meta("algebra", voa.family().tag()).meta("size", n).meta("v_cutoff", v_cutoff);
    for v in voa.basis_up_to(v_cutoff) {
        let vs = State::basis(v.clone());
        for k in 0..=n {
            for l in 0..=n {
                let e = UMatrix::elementary(n, vs.clone(), k, l)?;
                let left = diamond(voa, &one, &e)?;
                rb.check(left == e, || cx("left unit", format!("v={v:?} ({k},{l})"), None));
                let right = diamond(voa, &e, &one)?;
                let closed = right_unit_closed_form(voa, n, &vs, k, l)?;
                rb.check(right == closed, || cx("right unit closed form", format!("v={v:?} ({k},{l})"), None));
                let r = engine.reduce_with_margin(&right.sub(&e)?, 1)?;
                rb.check(r.is_zero(), || {
                    cx("right unit modulo O", format!("v={v:?} ({k},{l})"), Some(r.get(k, l)))
                });
            }
        }
    }
    Ok(rb.finish())
}

/// The closed form of `[(L(-1)+L(0)+n-k)u]_{kn} ⋄ [v]_{nl}`, and both
/// products `[(L(-1)+L(0)+n-k)u]_{kn} ⋄ [v]_{nl}` and
/// `[v]_{kn} ⋄ [(L(-1)+L(0)+l-n)u]_{nl}` vanishing modulo the O-span, for
/// basis `u, v` of weight at most `cutoff` and `k, n, l <= N`.
pub fn derivative_product_suite(engine: &ReductionEngine, cutoff: u32) -> Result<Report> {
    let voa = engine.voa();
    let size = engine.size();
    let basis = voa.basis_up_to(cutoff);
    let mut rb = ReportBuilder::new("derivative products lie in the O-span");
    rb.meta("algebra", voa.family().tag()).meta("size", size).meta("cutoff", cutoff);
    for u in &basis {
        let us = State::basis(u.clone());
        for v in &basis {
            let vs = State::basis(v.clone());
            for k in 0..=size {
                for n in 0..=size {
                    for l in 0..=size {
                        let desc = || format!("u={u:?} v={v:?} (k,n,l)=({k},{n},{l})");
                        let (lhs, rhs) = lder_product_sides(voa, size, &us, &vs, k, n, l)?;
                        rb.check_eq("closed form", desc, &rhs, &lhs);
                        let (ki, ni, li) = (k as i64, n as i64, l as i64);
                        let a = UMatrix::elementary(size, operator_binomial(voa, &us, ni - ki, 1)?, k, n)?;
                        let b = UMatrix::elementary(size, vs.clone(), n, l)?;
                        let c = UMatrix::elementary(size, vs.clone(), k, n)?;
                        let d = UMatrix::elementary(size, operator_binomial(voa, &us, li - ni, 1)?, n, l)?;
                        for (label, p) in [("left factor", diamond(voa, &a, &b)?), ("right factor", diamond(voa, &c, &d)?)] {
                            let r = engine.reduce_with_margin(&p, 1)?;
                            rb.check(r.is_zero(), || cx(label, desc(), Some(r.get(k, l))));
                        }
                    }
                }
            }
        }
    }
    Ok(rb.finish())
}

/// `u *_N v` equals the `(N,N)` entry of `[u]_{NN} ⋄ [v]_{NN}` for basis
/// `u, v` of weight at most `cutoff` and every `N <= n_max`.
pub fn corner_agreement_suite(voa: &Voa, n_max: usize, cutoff: u32) -> Result<Report> {
    let basis = voa.basis_up_to(cutoff);
    let mut rb = ReportBuilder::new("level-N product is the corner of the matrix product");
    rb.meta("algebra", voa.family().tag()).meta("n_max", n_max).meta("cutoff", cutoff);
    for n in 0..=n_max {
        for u in &basis {
            let us = State::basis(u.clone());
            for v in &basis {
                let vs = State::basis(v.clone());
                let d = dlm_product(voa, n, &us, &vs)?;
                let c = corner_product(voa, n, &us, &vs)?;
                rb.check_eq("corner agreement", || format!("N={n} u={u:?} v={v:?}"), &c, &d);
            }
        }
    }
    Ok(rb.finish())
}

/// Reduces `budget` associators `(A ⋄ B) ⋄ C - A ⋄ (B ⋄ C)` of elementary
/// matrices with basis entries of weight at most `entry_cutoff`, drawn in a
/// seeded order among those whose associator stays one weight below
/// `reduce_cutoff`.
pub fn associator_suite(engine: &ReductionEngine, entry_cutoff: u32, reduce_cutoff: u32, budget: usize, seed: u64) -> Result<Report> {
    let voa = engine.voa();
    let n = engine.size();
    let basis = voa.basis_up_to(entry_cutoff);
    let mut cases = Vec::new();
    for x in &basis {
        for y in &basis {
            for z in &basis {
                for k in 0..=n {
                    for m in 0..=n {
                        for p in 0..=n {
                            for l in 0..=n {
                                cases.push((x, y, z, [k, m, p, l]));
                            }
                        }
                    }
                }
            }
        }
    }
    cases.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut rb = ReportBuilder::new("associators vanish modulo the O-span");
    rb.meta("algebra", voa.family().tag())
        .meta("size", n)
        .meta("entry_cutoff", entry_cutoff)
        .meta("reduce_cutoff", reduce_cutoff)
        .meta("budget", budget)
        .meta("seed", seed);
    let mut done = 0usize;
    for (x, y, z, [k, m, p, l]) in cases {
        if done == budget {
            break;
        }
        let a = UMatrix::elementary(n, State::basis(x.clone()), k, m)?;
        let b = UMatrix::elementary(n, State::basis(y.clone()), m, p)?;
        let c = UMatrix::elementary(n, State::basis(z.clone()), p, l)?;
        let assoc = diamond(voa, &diamond(voa, &a, &b)?, &c).and_then(|lhs| {
            let rhs = diamond(voa, &a, &diamond(voa, &b, &c)?)?;
            lhs.sub(&rhs)
        });
        let d = match assoc {
            Ok(d) if d.max_weight().unwrap_or(0) < reduce_cutoff => d,
            Ok(_) | Err(Error::TruncationExceeded { .. }) => {
                rb.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        done += 1;
        let r = engine.canonical_reduce(&d, reduce_cutoff)?;
        rb.check(r.is_zero(), || {
            cx(
                "associator",
                format!("{x:?} {y:?} {z:?} slots {k}{m}{p}{l}"),
                Some(r.get(k, l)),
            )
        });
    }
    rb.meta("sampled", done);
    Ok(rb.finish())
}
