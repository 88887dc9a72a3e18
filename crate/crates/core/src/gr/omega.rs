//! The filtration `Ω_n(W)`: vectors killed by every mode `v_(j)` that lowers
//! weight by more than `n`.
//!
//! Membership quantifies over all of `V`, so it is computed against the
//! basis of `V` up to a weight cutoff. Exclusion comes with an exact witness
//! and is final; inclusion is tentative and can only shrink as the cutoff
//! grows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::scalar::Scalar;
use crate::state::{Monomial, State};

use super::module::{LowerBoundedModule, ModVec, WeightSpace};

/// An exact reason why a vector is not in `Ω_n`: `v_(mode)` lowers weight
/// by more than `n` and does not kill it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub v: Monomial,
    pub mode: i64,
    pub image: ModVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub vector: ModVec,
    pub witness: Witness,
}

/// `Ω_n` intersected with one weight space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmegaSlice {
    pub level: usize,
    pub weight: Scalar,
    /// Basis of the tentatively included subspace.
    pub included: Vec<ModVec>,
    /// Basis of a complement, each vector with a witness.
    pub excluded: Vec<Exclusion>,
}

/// Three-valued membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Excluded(Witness),
    TentativelyIncluded,
    Unknown,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmegaFiltration {
    pub v_cutoff: u32,
    pub n_max: usize,
    pub slices: Vec<OmegaSlice>,
    #[serde(skip)]
    echelons: BTreeMap<(usize, Scalar), Echelon>,
}

fn lowering_rows(
    module: &LowerBoundedModule,
    piece: &WeightSpace,
    v_basis: &[Monomial],
    s: i64,
) -> Vec<SparseRow> {
    // one row per (v, target basis vector), one column per piece basis vector
    let mut rows: BTreeMap<(usize, crate::gr::module::ModBasis), SparseRow> = BTreeMap::new();
    for (vi, v) in v_basis.iter().enumerate() {
        let j = v.weight() as i64 + s - 1;
        for (col, b) in piece.coords.keys().iter().enumerate() {
            let img = module.mode_basis(v, j, b);
            for (t, c) in img.iter() {
                rows.entry((vi, t.clone())).or_default().insert(col, c.clone());
            }
        }
    }
    rows.into_values().collect()
}

fn find_witness(
    module: &LowerBoundedModule,
    v_basis: &[Monomial],
    x: &ModVec,
    n: usize,
    s_max: i64,
) -> Option<Witness> {
    for s in (n as i64 + 1)..=s_max {
        for v in v_basis {
            let j = v.weight() as i64 + s - 1;
            let image = module.mode(&State::basis(v.clone()), j, x);
            if !image.is_zero() {
                return Some(Witness {
                    v: v.clone(),
                    mode: j,
                    image,
                });
            }
        }
    }
    None
}

fn max_depth(piece: &WeightSpace) -> i64 {
    piece.coords.keys().iter().map(|b| b.depth() as i64).max().unwrap_or(0)
}

impl OmegaFiltration {
    /// Computes `Ω_n ∩ W_λ` for `n <= n_max` and every retained weight `λ`,
    /// testing against all basis vectors of `V` of weight at most `v_cutoff`.
    pub fn compute(module: &LowerBoundedModule, n_max: usize, v_cutoff: u32) -> Self {
        let v_basis = module.voa().basis_up_to(v_cutoff);
        let mut slices = Vec::new();
        let mut echelons = BTreeMap::new();
        for piece in module.pieces() {
            let s_max = max_depth(piece);
            let mut eq = Echelon::new();
            let mut per_level = BTreeMap::new();
            // Ω_n is cut out by the equations with s > n
            for s in (1..=s_max).rev() {
                for r in lowering_rows(module, piece, &v_basis, s) {
                    eq.insert(&r);
                }
                let n = (s - 1) as usize;
                if n <= n_max {
                    per_level.insert(n, eq.clone());
                }
            }
            for n in 0..=n_max {
                let eq_n = per_level.get(&n).cloned().unwrap_or_default();
                let kernel = eq_n.kernel(piece.dim());
                let mut inc = Echelon::new();
                for k in &kernel {
                    inc.insert(k);
                }
                let included: Vec<ModVec> = inc.rows().map(|(_, r)| piece.vector(r)).collect();
                let excluded = eq_n
                    .pivots()
                    .map(|c| {
                        let mut e = SparseRow::new();
                        e.insert(c, Scalar::one());
                        let vector = piece.vector(&e);
                        let witness = find_witness(module, &v_basis, &vector, n, s_max)
                            .expect("a pivot column has a nonzero lowering image");
                        Exclusion { vector, witness }
                    })
                    .collect();
                echelons.insert((n, piece.weight.clone()), inc);
                slices.push(OmegaSlice {
                    level: n,
                    weight: piece.weight.clone(),
                    included,
                    excluded,
                });
            }
        }
        OmegaFiltration {
            v_cutoff,
            n_max,
            slices,
            echelons,
        }
    }

    /// Computes the filtration at `v_cutoff` and checks that it agreed with
    /// the ones at the previous `increments` cutoffs.
    pub fn stabilized(module: &LowerBoundedModule, n_max: usize, v_cutoff: u32, increments: u32) -> Result<Self> {
        let current = Self::compute(module, n_max, v_cutoff);
        for back in 1..=increments.min(v_cutoff) {
            let earlier = Self::compute(module, n_max, v_cutoff - back);
            if earlier.dimensions() != current.dimensions() {
                return Err(Error::UnstableFiltration {
                    cutoff: v_cutoff,
                    detail: format!(
                        "included dimensions differ between v-cutoffs {} and {}",
                        v_cutoff - back,
                        v_cutoff
                    ),
                });
            }
        }
        Ok(current)
    }

    /// `(level, weight) -> dim Ω_level ∩ W_weight`.
    pub fn dimensions(&self) -> BTreeMap<(usize, Scalar), usize> {
        self.slices
            .iter()
            .map(|s| ((s.level, s.weight.clone()), s.included.len()))
            .collect()
    }

    pub fn slice(&self, level: usize, weight: &Scalar) -> Option<&OmegaSlice> {
        self.slices.iter().find(|s| s.level == level && &s.weight == weight)
    }

    /// Echelon of the included subspace in the coordinates of the piece.
    pub fn echelon(&self, level: usize, weight: &Scalar) -> Option<&Echelon> {
        self.echelons.get(&(level, weight.clone()))
    }

    pub fn membership(&self, module: &LowerBoundedModule, n: usize, x: &ModVec) -> Membership {
        if x.is_zero() {
            return Membership::TentativelyIncluded;
        }
        let Some(w) = module.homogeneous_weight(x) else {
            return Membership::Unknown;
        };
        let (Some(piece), Some(ech)) = (module.piece(&w), self.echelon(n, &w)) else {
            return Membership::Unknown;
        };
        let Some(row) = piece.row(x) else {
            return Membership::Unknown;
        };
        if ech.contains(&row) {
            return Membership::TentativelyIncluded;
        }
        let v_basis = module.voa().basis_up_to(self.v_cutoff);
        match find_witness(module, &v_basis, x, n, max_depth(piece)) {
            Some(wit) => Membership::Excluded(wit),
            None => Membership::Unknown,
        }
    }
}
