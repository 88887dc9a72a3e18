//! The truncated associated graded space `Gr^N(W) = ⊕_{n<=N} Ω_n / Ω_{n-1}`
//! and the action `ϑ([v]_{kl}) = (v)_(wt v + l - k - 1)` from level `l` to
//! level `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::matrix::UMatrix;
use crate::scalar::Scalar;
use crate::state::{Monomial, State};
use crate::voa::Sl2;

use super::module::{LowerBoundedModule, ModVec, ModuleDescriptor};
use super::omega::OmegaFiltration;

/// Index of a basis vector of `Gr_level` at a weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrIndex {
    pub level: usize,
    pub weight: Scalar,
    pub index: usize,
}

/// An element of `Gr^N(W)` in the chosen quotient bases.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GrVector {
    terms: BTreeMap<GrIndex, Scalar>,
}

impl GrVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: GrIndex) -> Self {
        let mut g = Self::zero();
        g.add_term(i, Scalar::one());
        g
    }

    pub fn add_term(&mut self, i: GrIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i.clone()).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &GrVector, c: &Scalar) {
        for (i, x) in &other.terms {
            self.add_term(i.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> GrVector {
        let mut out = GrVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &GrVector) -> GrVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GrIndex, &Scalar)> {
        self.terms.iter()
    }

    /// The part living in `Gr_level`.
    pub fn level_part(&self, level: usize) -> GrVector {
        GrVector {
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.level == level)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for GrVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("{c:?}*g[{},{},{}]", i.level, i.weight, i.index))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for GrVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&GrIndex, &Scalar)> = self.terms.iter().collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(GrIndex, Scalar)> = Vec::deserialize(d)?;
        Ok(v.into_iter().fold(GrVector::zero(), |mut g, (i, c)| {
            g.add_term(i, c);
            g
        }))
    }
}

/// `Gr_level` at one weight: `Ω_level` echelonized after `Ω_{level-1}`.
#[derive(Clone, Debug)]
struct GrPiece {
    /// `Ω_{n-1}` on this weight space.
    below: Echelon,
    /// Representatives of `Ω_n / Ω_{n-1}`, reduced against `below`.
    reps: Echelon,
    new_pivots: Vec<usize>,
}

impl GrPiece {
    /// Coordinates of the class of `row`, or `None` if `row` is not in `Ω_n`.
    fn classify(&self, row: &SparseRow) -> Option<Vec<(usize, Scalar)>> {
        let r = self.below.reduce(row);
        if !self.reps.contains(&r) {
            return None;
        }
        Some(
            self.new_pivots
                .iter()
                .enumerate()
                .filter_map(|(i, p)| r.get(p).map(|c| (i, c.clone())))
                .collect(),
        )
    }
}

/// `Gr^N(W)` with its operators.
pub struct GrStructure {
    module: Arc<LowerBoundedModule>,
    size: usize,
    v_cutoff: u32,
    omega: OmegaFiltration,
    pieces: BTreeMap<(usize, Scalar), GrPiece>,
}

impl fmt::Debug for GrStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrStructure")
            .field("size", &self.size)
            .field("v_cutoff", &self.v_cutoff)
            .field("dimensions", &self.dimensions())
            .finish()
    }
}

/// Builds `Gr^N(W)`, requiring the filtration to be unchanged between
/// v-cutoffs `v_cutoff - 1` and `v_cutoff`.
pub fn build_gr(module: Arc<LowerBoundedModule>, size: usize, v_cutoff: u32) -> Result<GrStructure> {
    let omega = OmegaFiltration::stabilized(&module, size, v_cutoff, 1)?;
    Ok(GrStructure::from_filtration(module, size, omega))
}

impl GrStructure {
    /// Builds `Gr^N(W)` from a filtration without any stability check.
    pub fn from_filtration(module: Arc<LowerBoundedModule>, size: usize, omega: OmegaFiltration) -> Self {
        let mut pieces = BTreeMap::new();
        for piece in module.pieces() {
            let mut below = Echelon::new();
            for n in 0..=size {
                let Some(cur) = omega.echelon(n, &piece.weight) else { continue };
                let mut reps = Echelon::new();
                for (_, r) in cur.rows() {
                    reps.insert(&below.reduce(r));
                }
                let new_pivots: Vec<usize> = reps.pivots().collect();
                let next = cur.clone();
                if !new_pivots.is_empty() {
                    pieces.insert(
                        (n, piece.weight.clone()),
                        GrPiece {
                            below,
                            reps,
                            new_pivots,
                        },
                    );
                }
                below = next;
            }
        }
        GrStructure {
            module,
            size,
            v_cutoff: omega.v_cutoff,
            omega,
            pieces,
        }
    }

    pub fn module(&self) -> &LowerBoundedModule {
        &self.module
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn v_cutoff(&self) -> u32 {
        self.v_cutoff
    }

    pub fn omega(&self) -> &OmegaFiltration {
        &self.omega
    }

    /// `(level, weight) -> dim Gr_level ∩ W_weight` for nonzero pieces.
    pub fn dimensions(&self) -> BTreeMap<(usize, Scalar), usize> {
        self.pieces
            .iter()
            .map(|(k, p)| (k.clone(), p.new_pivots.len()))
            .collect()
    }

    pub fn total_dimension(&self) -> usize {
        self.pieces.values().map(|p| p.new_pivots.len()).sum()
    }

    pub fn basis(&self) -> Vec<GrIndex> {
        self.pieces
            .iter()
            .flat_map(|((level, weight), p)| {
                (0..p.new_pivots.len()).map(move |index| GrIndex {
                    level: *level,
                    weight: weight.clone(),
                    index,
                })
            })
            .collect()
    }

    pub fn level_basis(&self, level: usize) -> Vec<GrIndex> {
        self.basis().into_iter().filter(|i| i.level == level).collect()
    }

    /// The module vector representing a basis element.
    pub fn representative(&self, i: &GrIndex) -> Result<ModVec> {
        let piece = self
            .pieces
            .get(&(i.level, i.weight.clone()))
            .ok_or_else(|| Error::Invalid(format!("no graded piece at {i:?}")))?;
        let p = *piece
            .new_pivots
            .get(i.index)
            .ok_or_else(|| Error::Invalid(format!("no basis vector {i:?}")))?;
        let ws = self.module.piece(&i.weight).expect("piece exists");
        Ok(ws.vector(piece.reps.rows().find(|(q, _)| *q == p).map(|(_, r)| r).expect("pivot row")))
    }

    /// Class in `Gr_level` of a vector of `Ω_level`.
    ///
    /// Fails with `OutOfWindow` when the vector leaves the retained window,
    /// and with `Invalid` when it is not in the computed `Ω_level`.
    pub fn project(&self, level: usize, x: &ModVec) -> Result<GrVector> {
        if x.is_zero() {
            return Ok(GrVector::zero());
        }
        if level > self.size {
            return Err(Error::Invalid(format!("level {level} above N = {}", self.size)));
        }
        let mut out = GrVector::zero();
        let mut by_weight: BTreeMap<Scalar, ModVec> = BTreeMap::new();
        for (b, c) in x.iter() {
            by_weight
                .entry(self.module.weight_of(b))
                .or_default()
                .add_term(b.clone(), c.clone());
        }
        for (w, part) in by_weight {
            let ws = self.module.piece(&w);
            let complete = ws.map(|p| p.complete).unwrap_or(false);
            if !self.module.in_window(&part) || !complete {
                return Err(Error::OutOfWindow { weight: w.to_string() });
            }
            let ws = ws.expect("checked above");
            let row = ws.row(&part).expect("window vector has coordinates");
            let Some(piece) = self.pieces.get(&(level, w.clone())) else {
                // Gr_level is zero here; the vector must lie in Ω_{level-1}
                let below = if level == 0 {
                    row.is_empty()
                } else {
                    self.omega
                        .echelon(level - 1, &w)
                        .map(|e| e.contains(&row))
                        .unwrap_or(false)
                };
                if !below {
                    return Err(Error::Invalid(format!("vector of weight {w} is not in Ω_{level}")));
                }
                continue;
            };
            let coords = piece
                .classify(&row)
                .ok_or_else(|| Error::Invalid(format!("vector of weight {w} is not in Ω_{level}")))?;
            for (index, c) in coords {
                out.add_term(
                    GrIndex {
                        level,
                        weight: w.clone(),
                        index,
                    },
                    c,
                );
            }
        }
        Ok(out)
    }

    fn lift<F>(&self, g: &GrVector, target_level: Option<usize>, f: F) -> Result<GrVector>
    where
        F: Fn(usize, &ModVec) -> Result<ModVec>,
    {
        let mut out = GrVector::zero();
        for (i, c) in g.iter() {
            let target = target_level.unwrap_or(i.level);
            let rep = self.representative(i)?;
            let img = f(i.level, &rep)?;
            out.add_scaled(&self.project(target, &img)?, c);
        }
        Ok(out)
    }

    /// `ϑ([v]_{kl}) g`: only the level-`l` part of `g` contributes.
    pub fn theta_entry(&self, v: &State, k: usize, l: usize, g: &GrVector) -> Result<GrVector> {
        if k > self.size || l > self.size {
            return Err(Error::SlotOutOfRange { k, l, size: self.size });
        }
        let part = g.level_part(l);
        let shift = l as i64 - k as i64 - 1;
        self.lift(&part, Some(k), |_, rep| Ok(self.module.dressed_mode(v, shift, rep)))
    }

    /// `ϑ(A) g` summed over the entries of `A`.
    pub fn theta_apply(&self, a: &UMatrix, g: &GrVector) -> Result<GrVector> {
        if a.size() != self.size {
            return Err(Error::SizeMismatch {
                left: a.size(),
                right: self.size,
            });
        }
        let mut out = GrVector::zero();
        for (&(k, l), v) in a.entries() {
            out.add_scaled(&self.theta_entry(v, k, l, g)?, &Scalar::one());
        }
        Ok(out)
    }

    /// `L(-1)`, `L(0)` or `L(1)` on `Gr^N(W)`; `L(-1)` is undefined on
    /// `Gr_N` and `L(1)` vanishes on `Gr_0`.
    pub fn sl2(&self, op: Sl2, g: &GrVector) -> Result<GrVector> {
        let mut out = GrVector::zero();
        for (i, c) in g.iter() {
            let target = match op {
                Sl2::Minus if i.level == self.size => {
                    return Err(Error::Invalid("L(-1) leaves Gr^N from the top level".into()))
                }
                Sl2::Minus => i.level + 1,
                Sl2::Zero => i.level,
                Sl2::Plus if i.level == 0 => continue,
                Sl2::Plus => i.level - 1,
            };
            let rep = self.representative(i)?;
            let img = self.module.virasoro(op.index(), &rep);
            out.add_scaled(&self.project(target, &img)?, c);
        }
        Ok(out)
    }

    /// Serializable snapshot with representatives and the `ϑ` matrices of
    /// all basis vectors of `V` up to `theta_cutoff`.
    pub fn snapshot(&self, theta_cutoff: u32) -> Result<GrSnapshot> {
        let basis = self.basis();
        let mut pieces = Vec::new();
        for i in &basis {
            pieces.push(GrBasisEntry {
                index: i.clone(),
                representative: self.representative(i)?,
            });
        }
        let mut theta = Vec::new();
        for v in self.module.voa().basis_up_to(theta_cutoff) {
            let vs = State::basis(v.clone());
            for k in 0..=self.size {
                for l in 0..=self.size {
                    let mut columns = Vec::new();
                    for i in self.level_basis(l) {
                        match self.theta_entry(&vs, k, l, &GrVector::basis(i.clone())) {
                            Ok(img) if !img.is_zero() => columns.push((i, img)),
                            Ok(_) | Err(Error::OutOfWindow { .. }) => {}
                            Err(e) => return Err(e),
                        }
                    }
                    if !columns.is_empty() {
                        theta.push(ThetaMatrix { v: v.clone(), k, l, columns });
                    }
                }
            }
        }
        Ok(GrSnapshot {
            module: self.module.descriptor(),
            size: self.size,
            v_cutoff: self.v_cutoff,
            basis: pieces,
            theta,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrBasisEntry {
    pub index: GrIndex,
    pub representative: ModVec,
}

/// Nonzero columns of `ϑ([v]_{kl})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaMatrix {
    pub v: Monomial,
    pub k: usize,
    pub l: usize,
    pub columns: Vec<(GrIndex, GrVector)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrSnapshot {
    pub module: ModuleDescriptor,
    pub size: usize,
    pub v_cutoff: u32,
    pub basis: Vec<GrBasisEntry>,
    pub theta: Vec<ThetaMatrix>,
}

