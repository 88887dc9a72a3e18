use std::path::{Path, PathBuf};

use serde::Serialize;
use vamat_core::gr::{build_gr, GrIndex, GrSnapshot, GrVector};
use vamat_core::matrix::{diamond as diamond_product, UMatrix};
use vamat_core::reduction::{cn_quotient_dimension, DimensionTable};
use vamat_core::report::Report;
use vamat_core::voa::{voa_axiom_suite, AxiomSuiteConfig, Family};
use vamat_core::zhu::{center_check, dlm_product, polynomial_algebra_probe, PolynomialProbe};
use vamat_core::{Monomial, State};

use crate::config::{report_cache, Format, RunConfig};
use crate::output::{json, read_matrix, state_rows, umatrix_csv, Artifacts};
use crate::{CliError, Outcome};

fn emit(out: Option<PathBuf>, name: &str, contents: &str) -> Result<(), CliError> {
    Artifacts::new(out)?.write(name, contents)?;
    print!("{contents}");
    Ok(())
}

fn emit_matrix(cfg: &RunConfig, out: Option<PathBuf>, stem: &str, a: &UMatrix) -> Result<(), CliError> {
    match cfg.format {
        Format::Json => emit(out, &format!("{stem}.json"), &json(a)?),
        Format::Csv => emit(out, &format!("{stem}.csv"), &umatrix_csv(a)),
    }
}

pub fn axiom_config(cfg: &RunConfig) -> AxiomSuiteConfig {
    AxiomSuiteConfig {
        weight_cutoff: cfg.weight_cutoff,
        budget: cfg.budget,
        seed: cfg.seed,
    }
}

pub fn selftest(cfg: &RunConfig, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let report = voa_axiom_suite(&cfg.voa(), &axiom_config(cfg));
    emit(out, "selftest.json", &json(&report)?)?;
    Ok(Outcome::from_bool(report.passed))
}

pub fn diamond(cfg: &RunConfig, out: Option<PathBuf>, left: &Path, right: &Path) -> Result<Outcome, CliError> {
    let (a, b) = (read_matrix(left)?, read_matrix(right)?);
    let p = diamond_product(&cfg.voa(), &a, &b)?;
    emit_matrix(cfg, out, "diamond", &p)?;
    Ok(Outcome::Passed)
}

pub fn reduce(cfg: &RunConfig, out: Option<PathBuf>, matrix: &Path, margin: u32) -> Result<Outcome, CliError> {
    let a = read_matrix(matrix)?;
    let engine = cfg.engine(a.size())?;
    let r = engine.reduce_with_margin(&a, margin);
    report_cache(&engine);
    emit_matrix(cfg, out, "reduced", &r?)?;
    Ok(Outcome::Passed)
}

#[derive(Serialize)]
pub struct Dims {
    pub quotient: DimensionTable,
    pub c2_quotient: Vec<C2Row>,
}

#[derive(Serialize)]
pub struct C2Row {
    pub weight: u32,
    pub dimension: usize,
}

pub fn c2_csv(rows: &[C2Row]) -> String {
    let mut s = String::from("weight,dimension\n");
    for r in rows {
        s.push_str(&format!("{},{}\n", r.weight, r.dimension));
    }
    s
}

pub fn compute_dims(cfg: &RunConfig) -> Result<Dims, CliError> {
    let engine = cfg.engine(cfg.level)?;
    let quotient = engine.quotient_dimension_table(cfg.weight_cutoff);
    report_cache(&engine);
    let c2_quotient = cn_quotient_dimension(engine.voa(), 2, cfg.weight_cutoff)?
        .into_iter()
        .map(|(weight, dimension)| C2Row { weight, dimension })
        .collect();
    Ok(Dims {
        quotient: quotient?,
        c2_quotient,
    })
}

pub fn dims(cfg: &RunConfig, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let d = compute_dims(cfg)?;
    match cfg.format {
        Format::Json => emit(out, "dims.json", &json(&d)?)?,
        Format::Csv => {
            let mut arts = Artifacts::new(out)?;
            let q = d.quotient.to_csv();
            let c = c2_csv(&d.c2_quotient);
            arts.write("quotient_dimensions.csv", &q)?;
            arts.write("c2_quotient.csv", &c)?;
            print!("{q}\n{c}");
        }
    }
    Ok(Outcome::Passed)
}

#[derive(Serialize)]
pub struct ProductRow {
    pub u: Monomial,
    pub v: Monomial,
    pub product: State,
}

pub fn level_products(cfg: &RunConfig) -> Result<Vec<ProductRow>, CliError> {
    let voa = cfg.voa();
    let basis = voa.basis_up_to(cfg.weight_cutoff);
    let mut rows = Vec::new();
    for u in &basis {
        for v in &basis {
            let product = dlm_product(&voa, cfg.level, &State::basis(u.clone()), &State::basis(v.clone()))?;
            rows.push(ProductRow {
                u: u.clone(),
                v: v.clone(),
                product,
            });
        }
    }
    Ok(rows)
}

pub fn products_csv(rows: &[ProductRow]) -> String {
    let mut s = String::from("u,v,monomial,coefficient\n");
    for r in rows {
        let prefix = format!("{},{},", crate::output::parts(&r.u), crate::output::parts(&r.v));
        state_rows(&prefix, &r.product, &mut s);
    }
    s
}

#[derive(Serialize)]
struct ZhuOutput {
    level: usize,
    products: Vec<ProductRow>,
    center: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<PolynomialProbe>,
}

pub fn zhu(cfg: &RunConfig, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let engine = cfg.engine(cfg.level)?;
    let center = center_check(&engine, cfg.weight_cutoff, 1);
    report_cache(&engine);
    let center = center?;
    let polynomial = match engine.voa().family() {
        Family::Heisenberg => Some(polynomial_algebra_probe(engine.voa(), cfg.weight_cutoff)?),
        Family::Virasoro { .. } => None,
    };
    let ok = center.passed && polynomial.as_ref().map_or(true, |p| p.report.passed);
    let products = level_products(cfg)?;
    match cfg.format {
        Format::Json => emit(out, "zhu.json", &json(&ZhuOutput { level: cfg.level, products, center, polynomial })?)?,
        Format::Csv => {
            let mut arts = Artifacts::new(out)?;
            let p = products_csv(&products);
            arts.write("zhu_products.csv", &p)?;
            arts.write("zhu_center.json", &json(&center)?)?;
            if let Some(poly) = &polynomial {
                arts.write("zhu_polynomial.json", &json(poly)?)?;
            }
            print!("{p}");
        }
    }
    Ok(Outcome::from_bool(ok))
}

#[derive(Serialize)]
struct Image {
    index: GrIndex,
    image: GrVector,
}

#[derive(Serialize)]
struct ActOutput {
    snapshot: GrSnapshot,
    #[serde(skip_serializing_if = "Option::is_none")]
    images: Option<Vec<Image>>,
}

pub fn act(cfg: &RunConfig, out: Option<PathBuf>, matrix: Option<&Path>) -> Result<Outcome, CliError> {
    let g = build_gr(cfg.module()?, cfg.level, cfg.v_cutoff())?;
    let snapshot = g.snapshot(cfg.weight_cutoff.min(2))?;
    let images = match matrix {
        Some(p) => {
            let a = read_matrix(p)?;
            let imgs = g
                .basis()
                .into_iter()
                .map(|i| {
                    let image = g.theta_apply(&a, &GrVector::basis(i.clone()))?;
                    Ok(Image { index: i, image })
                })
                .collect::<Result<Vec<_>, vamat_core::Error>>()?;
            Some(imgs)
        }
        None => None,
    };
    emit(out, "act.json", &json(&ActOutput { snapshot, images })?)?;
    Ok(Outcome::Passed)
}
