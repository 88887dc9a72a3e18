//! Exact verification of the vertex operator algebra axioms on a truncated
//! mode table.

use crate::formal::gen_binomial;
use crate::report::{sample_cases, Counterexample, Report, ReportBuilder};
use crate::scalar::Scalar;
use crate::state::{Monomial, State};

use super::Voa;

/// Parameters of [`voa_axiom_suite`].
#[derive(Clone, Debug)]
pub struct AxiomSuiteConfig {
    /// Largest weight of basis vectors and of every intermediate result.
    pub weight_cutoff: u32,
    /// Maximal number of cases per identity; excess cases are sampled.
    pub budget: usize,
    pub seed: u64,
}

impl AxiomSuiteConfig {
    pub fn new(weight_cutoff: u32) -> Self {
        AxiomSuiteConfig {
            weight_cutoff,
            budget: 4000,
            seed: 0,
        }
    }
}

struct Ctx<'a> {
    voa: &'a Voa,
    cut: i64,
}

impl Ctx<'_> {
    fn mode(&self, u: &State, j: i64, w: &State) -> State {
        self.voa.space().mode_state(u, j, w)
    }

    fn lm1(&self, v: &State) -> State {
        self.voa.space().virasoro_on(-1, v)
    }

    fn l0(&self, v: &State) -> State {
        self.voa.space().virasoro_on(0, v)
    }

    fn fits(&self, w: i64) -> bool {
        w <= self.cut
    }
}

fn wt(m: &Monomial) -> i64 {
    m.weight() as i64
}

fn desc(parts: &[(&str, String)]) -> String {
    parts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Checks, exactly, the mode commutator formula, the `L(-1)`-derivative
/// property, `e^{xL(-1)}(1+x)^{L(0)} = (1+x)^{L(-1)+L(0)}` and
/// `[L(-1)+L(0), Y((1+x)^{L(0)}v,x)] = Y((1+x)^{L(0)}(L(-1)+L(0))v,x)`
/// coefficientwise, plus the vacuum and creation properties.
pub fn voa_axiom_suite(voa: &Voa, cfg: &AxiomSuiteConfig) -> Report {
    let cut = cfg.weight_cutoff.min(voa.weight_cutoff());
    let ctx = Ctx {
        voa,
        cut: cut as i64,
    };
    let basis = voa.basis_up_to(cut);
    let mut rb = ReportBuilder::new("vertex operator algebra axioms");
    rb.meta("algebra", voa.family().tag())
        .meta("weight_cutoff", cut)
        .meta("budget", cfg.budget)
        .meta("seed", cfg.seed);

    commutator_formula(&ctx, &basis, cfg, &mut rb);
    derivative_property(&ctx, &basis, cfg, &mut rb);
    exponential_identity(&ctx, &basis, &mut rb);
    dressed_commutator(&ctx, &basis, cfg, &mut rb);
    vacuum_and_creation(&ctx, &basis, &mut rb);
    rb.finish()
}

fn commutator_formula(ctx: &Ctx, basis: &[Monomial], cfg: &AxiomSuiteConfig, rb: &mut ReportBuilder) {
    let mut cases = Vec::new();
    for u in basis.iter().filter(|m| !m.is_vacuum()) {
        for v in basis.iter().filter(|m| !m.is_vacuum()) {
            if !ctx.fits(wt(u) + wt(v) - 1) {
                continue;
            }
            for w in basis {
                let top = wt(u) + wt(v) + wt(w);
                for m in -2..=top {
                    for n in -2..=top {
                        let fin = top - m - n - 2;
                        if fin < 0
                            || !ctx.fits(fin)
                            || !ctx.fits(wt(v) + wt(w) - n - 1)
                            || !ctx.fits(wt(u) + wt(w) - m - 1)
                        {
                            continue;
                        }
                        cases.push((u, v, w, m, n));
                    }
                }
            }
        }
    }
    for (u, v, w, m, n) in sample_cases(cases, cfg.budget, cfg.seed) {
        let (us, vs, ws) = (State::basis(u.clone()), State::basis(v.clone()), State::basis(w.clone()));
        let lhs = ctx
            .mode(&us, m, &ctx.mode(&vs, n, &ws))
            .sub(&ctx.mode(&vs, n, &ctx.mode(&us, m, &ws)));
        let mut rhs = State::zero();
        for i in 0..(wt(u) + wt(v)) {
            let b = gen_binomial(m, i as u64);
            if b.is_zero() {
                continue;
            }
            let uv = ctx.mode(&us, i, &vs);
            rhs.add_scaled(&ctx.mode(&uv, m + n - i, &ws), &b);
        }
        rb.check_eq(
            "commutator formula",
            || desc(&[("u", format!("{u:?}")), ("v", format!("{v:?}")), ("w", format!("{w:?}")), ("m", m.to_string()), ("n", n.to_string())]),
            &rhs,
            &lhs,
        );
    }
}

fn derivative_property(ctx: &Ctx, basis: &[Monomial], cfg: &AxiomSuiteConfig, rb: &mut ReportBuilder) {
    let mut cases = Vec::new();
    for v in basis {
        if !ctx.fits(wt(v) + 1) {
            continue;
        }
        for w in basis {
            for n in -2..=(wt(v) + wt(w) + 1) {
                let fin = wt(v) + wt(w) - n;
                if fin >= 0 && ctx.fits(fin) {
                    cases.push((v, w, n));
                }
            }
        }
    }
    for (v, w, n) in sample_cases(cases, cfg.budget, cfg.seed.wrapping_add(1)) {
        let vs = State::basis(v.clone());
        let ws = State::basis(w.clone());
        let lhs = ctx.mode(&ctx.lm1(&vs), n, &ws);
        let rhs = ctx.mode(&vs, n - 1, &ws).scale(&Scalar::from_int(-n));
        rb.check_eq(
            "L(-1)-derivative property",
            || desc(&[("v", format!("{v:?}")), ("w", format!("{w:?}")), ("n", n.to_string())]),
            &rhs,
            &lhs,
        );
    }
}

fn exponential_identity(ctx: &Ctx, basis: &[Monomial], rb: &mut ReportBuilder) {
    for v in basis {
        let vs = State::basis(v.clone());
        let mut r = 0i64;
        while ctx.fits(wt(v) + r) {
            // coefficient of x^r in e^{xL(-1)} (1+x)^{L(0)} v
            let mut lhs = State::zero();
            let mut power = vs.clone();
            let mut fact = Scalar::one();
            for a in 0..=r {
                if a > 0 {
                    power = ctx.lm1(&power);
                    fact = fact * Scalar::from_int(a);
                }
                let b = gen_binomial(wt(v), (r - a) as u64);
                lhs.add_scaled(&power, &(b / fact.clone()));
            }
            // C(L(-1)+L(0), r) v
            let mut rhs = vs.clone();
            for i in 0..r {
                let x = ctx.lm1(&rhs);
                let mut next = x;
                next.add_state(&ctx.l0(&rhs));
                next.add_scaled(&rhs, &Scalar::from_int(-i));
                rhs = next.scale(&Scalar::new(1, i + 1));
            }
            rb.check_eq(
                "exponential identity",
                || desc(&[("v", format!("{v:?}")), ("r", r.to_string())]),
                &rhs,
                &lhs,
            );
            r += 1;
        }
    }
}

fn dressed_commutator(ctx: &Ctx, basis: &[Monomial], cfg: &AxiomSuiteConfig, rb: &mut ReportBuilder) {
    let mut cases = Vec::new();
    for v in basis.iter().filter(|m| ctx.fits(wt(m) + 1)) {
        for w in basis {
            for r in -(ctx.cut + 1)..=(wt(v) + wt(w)) {
                if ctx.fits(wt(v) + wt(w) - r) {
                    cases.push((v, w, r));
                }
            }
        }
    }
    // coefficient of x^{-r-1} in Y((1+x)^{L(0)} s, x) w for homogeneous s
    let coeff = |s: &State, weight: i64, r: i64, w: &State| -> State {
        let mut out = State::zero();
        let top = w.max_weight().unwrap_or(0) as i64;
        for i in 0..=(weight + top - r).max(0) {
            let b = gen_binomial(weight, i as u64);
            if !b.is_zero() {
                out.add_scaled(&ctx.mode(s, r + i, w), &b);
            }
        }
        out
    };
    for (v, w, r) in sample_cases(cases, cfg.budget, cfg.seed.wrapping_add(2)) {
        let vs = State::basis(v.clone());
        let ws = State::basis(w.clone());
        let x = |s: &State| {
            let mut o = ctx.lm1(s);
            o.add_state(&ctx.l0(s));
            o
        };
        let lhs = x(&coeff(&vs, wt(v), r, &ws)).sub(&coeff(&vs, wt(v), r, &x(&ws)));
        let mut rhs = coeff(&ctx.lm1(&vs), wt(v) + 1, r, &ws);
        rhs.add_scaled(&coeff(&vs, wt(v), r, &ws), &Scalar::from_int(wt(v)));
        rb.check_eq(
            "L(-1)+L(0) commutator with dressed vertex operator",
            || desc(&[("v", format!("{v:?}")), ("w", format!("{w:?}")), ("r", r.to_string())]),
            &rhs,
            &lhs,
        );
    }
}

fn vacuum_and_creation(ctx: &Ctx, basis: &[Monomial], rb: &mut ReportBuilder) {
    let one = State::vacuum();
    for u in basis {
        let us = State::basis(u.clone());
        for j in 0..=(wt(u) + 1) {
            let got = ctx.mode(&us, j, &one);
            rb.check(got.is_zero(), || Counterexample {
                check: "creation property".into(),
                description: desc(&[("u", format!("{u:?}")), ("j", j.to_string())]),
                expected: Some(State::zero()),
                actual: Some(got.clone()),
            });
        }
        let mut power = us.clone();
        let mut p = 0i64;
        while ctx.fits(wt(u) + p) {
            if p > 0 {
                power = ctx.lm1(&power).scale(&Scalar::new(1, p));
            }
            let got = ctx.mode(&us, -1 - p, &one);
            rb.check_eq(
                "skew creation u_(-1-p)1 = L(-1)^p u / p!",
                || desc(&[("u", format!("{u:?}")), ("p", p.to_string())]),
                &power,
                &got,
            );
            p += 1;
        }
        for w in basis {
            let ws = State::basis(w.clone());
            rb.check_eq(
                "vacuum operator",
                || desc(&[("w", format!("{w:?}"))]),
                &ws,
                &ctx.mode(&one, -1, &ws),
            );
        }
    }
}
