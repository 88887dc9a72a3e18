//! Classical corners: Zhu's product, its level-`N` generalization and the
//! Heisenberg polynomial-algebra probe.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::{gen_binomial, LaurentPoly};
use crate::linalg::{Coordinates, Echelon};
use crate::matrix::{diamond, UMatrix};
use crate::reduction::ReductionEngine;
use crate::report::{Counterexample, Report, ReportBuilder};
use crate::scalar::Scalar;
use crate::state::{Monomial, State};
use crate::voa::{Family, Voa};

/// `u *_N v = sum_{m=0}^{N} C(-N-1, m) Res_x x^{-N-m-1} (1+x)^N Y((1+x)^{L(0)} u, x) v`.
pub fn dlm_product(voa: &Voa, n: usize, u: &State, v: &State) -> Result<State> {
    let mut out = State::zero();
    for m in 0..=n as u64 {
        let c = gen_binomial(-(n as i64) - 1, m);
        let f = LaurentPoly::x_pow(-(n as i64) - m as i64 - 1);
        out.add_scaled(&voa.dressed_residue(&f, n as i64, u, v)?, &c);
    }
    Ok(out)
}

/// Zhu's product `u * v = Res_x x^{-1} Y((1+x)^{L(0)} u, x) v`.
pub fn zhu_product(voa: &Voa, u: &State, v: &State) -> Result<State> {
    dlm_product(voa, 0, u, v)
}

/// The `(N, N)` entry of `[u]_{NN} ⋄ [v]_{NN}`.
pub fn corner_product(voa: &Voa, n: usize, u: &State, v: &State) -> Result<State> {
    let a = UMatrix::elementary(n, u.clone(), n, n)?;
    let b = UMatrix::elementary(n, v.clone(), n, n)?;
    Ok(diamond(voa, &a, &b)?.get(n, n))
}

/// Checks that `ω *_N v - v *_N ω` vanishes modulo the O-span at slot
/// `(N, N)` for every basis `v` of weight at most `v_cutoff`.
pub fn center_check(engine: &ReductionEngine, v_cutoff: u32, margin: u32) -> Result<Report> {
    let voa = engine.voa();
    let n = engine.size();
    let om = voa.conformal_vector();
    let mut rb = ReportBuilder::new("conformal vector is central in the corner quotient");
    rb.meta("size", n).meta("v_cutoff", v_cutoff).meta("margin", margin);
    for v in voa.basis_up_to(v_cutoff) {
        let vs = State::basis(v.clone());
        let d = dlm_product(voa, n, &om, &vs)?.sub(&dlm_product(voa, n, &vs, &om)?);
        let m = UMatrix::elementary(n, d.clone(), n, n)?;
        let r = engine.reduce_with_margin(&m, margin)?;
        rb.check(r.is_zero(), || Counterexample {
            check: "commutator with the conformal vector".into(),
            description: format!("v={v:?} N={n}"),
            expected: Some(State::zero()),
            actual: Some(r.get(n, n)),
        });
    }
    Ok(rb.finish())
}

/// Evidence that the Heisenberg Zhu quotient is a polynomial algebra in
/// the class of `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialProbe {
    pub report: Report,
    /// Quotient dimension per weight at slot `(0,0)`.
    pub dimensions: BTreeMap<u32, usize>,
    /// Canonical form of `α(-1)^m 1` for each `m`.
    pub power_classes: Vec<State>,
    /// Canonical form of the `m`-fold product of the class of `a`.
    pub product_classes: Vec<State>,
}

/// Reduces `α(-1)^m 1` and `a ⋄ ... ⋄ a` for `m <= w_max` at slot `(0,0)`
/// and checks that the former are independent, one per weight, and agree
/// with the latter.
pub fn polynomial_algebra_probe(voa: &Voa, w_max: u32) -> Result<PolynomialProbe> {
    if voa.family() != &Family::Heisenberg {
        return Err(Error::Invalid("the polynomial probe needs the Heisenberg algebra".into()));
    }
    let cutoff = w_max + 1;
    let engine = ReductionEngine::new(voa.clone(), 0);
    let block = engine.block((0, 0), cutoff)?;
    let mut dimensions = block.quotient_dims();
    dimensions.retain(|&w, _| w <= w_max);
    let mut rb = ReportBuilder::new("Heisenberg Zhu quotient is polynomial in the generator");
    rb.meta("w_max", w_max).meta("reduction_cutoff", cutoff);
    for (&w, &d) in &dimensions {
        rb.check(d == 1, || Counterexample {
            check: "one class per weight".into(),
            description: format!("weight {w} has quotient dimension {d}"),
            expected: None,
            actual: None,
        });
    }
    let a = voa.generator();
    let mut power_classes = Vec::new();
    let mut product_classes = Vec::new();
    let mut product = State::vacuum();
    let mut ech = Echelon::new();
    let cols = Coordinates::new(voa.basis_up_to(cutoff));
    for m in 0..=w_max {
        let power = State::basis(Monomial::new(vec![1; m as usize])?);
        let pc = block.reduce(&power)?;
        let independent = ech.insert(&cols.row(pc.iter()).expect("within cutoff")).is_some();
        rb.check(independent, || Counterexample {
            check: "powers of the generator are independent".into(),
            description: format!("α(-1)^{m} 1 depends on lower powers"),
            expected: None,
            actual: Some(pc.clone()),
        });
        if m > 0 {
            product = zhu_product(voa, &product, &a)?;
        }
        let qc = block.reduce(&product)?;
        rb.check_eq("product of generator classes", || format!("m={m}"), &pc, &qc);
        power_classes.push(pc);
        product_classes.push(qc);
    }
    Ok(PolynomialProbe {
        report: rb.finish(),
        dimensions,
        power_classes,
        product_classes,
    })
}

/// `C(-N-1, m)` weights of the level-`N` product, for reference.
pub fn dlm_coefficients(n: usize) -> Vec<Scalar> {
    (0..=n as u64).map(|m| gen_binomial(-(n as i64) - 1, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_examples() {
        let h = Voa::heisenberg(6);
        let a = h.generator();
        assert_eq!(
            zhu_product(&h, &a, &a).unwrap(),
            State::basis(Monomial::new(vec![1, 1]).unwrap())
        );
        let v = Voa::virasoro(Scalar::new(1, 2), 6);
        let om = v.generator();
        let expect = State::from_pairs(vec![
            (vec![2, 2], Scalar::one()),
            (vec![3], Scalar::from_int(2)),
            (vec![2], Scalar::from_int(2)),
        ])
        .unwrap();
        assert_eq!(zhu_product(&v, &om, &om).unwrap(), expect);
    }
}
