//! Canonical forms modulo the O-span, quotient dimensions and structure
//! constants of the truncated quotient algebra.
//!
//! Spanning elements of the O-span are not homogeneous, so blocks are
//! filtration blocks: the block of `(slot, c)` is spanned by every generator
//! whose nominal weight is at most `c`, inside the space of states of weight
//! at most `c`. Columns are ordered by descending weight, so a remainder
//! keeps the lowest-weight monomials it can.

mod cache;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

pub use cache::{BlockCache, BlockKey, CacheOutcome};

use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Echelon, SparseRow};
use crate::matrix::{diamond, o_generators, OGenerator, UMatrix};
use crate::report::{sample_cases, Report, ReportBuilder};
use crate::scalar::Scalar;
use crate::state::{Monomial, State};
use crate::voa::Voa;

/// Generators of a block with their realizations.
#[derive(Clone, Debug)]
pub struct WeightBlock {
    pub slot: (usize, usize),
    pub cutoff: u32,
    pub ambient_basis: Vec<Monomial>,
    pub generators: Vec<(OGenerator, State)>,
}

/// Ambient monomials of weight at most `cutoff` in column order.
pub fn block_columns(voa: &Voa, cutoff: u32) -> Vec<Monomial> {
    let mut cols = voa.basis_up_to(cutoff);
    cols.reverse();
    cols
}

/// All generators of nominal weight at most `cutoff` at `slot`.
pub fn assemble_block(voa: &Voa, size: usize, slot: (usize, usize), cutoff: u32) -> Result<WeightBlock> {
    if cutoff > voa.weight_cutoff() {
        return Err(Error::TruncationExceeded {
            weight: cutoff as i64,
            cutoff: voa.weight_cutoff() as i64,
        });
    }
    let mut generators = Vec::new();
    for w in 0..=cutoff {
        generators.extend(o_generators(voa, size, slot, w)?);
    }
    Ok(WeightBlock {
        slot,
        cutoff,
        ambient_basis: block_columns(voa, cutoff),
        generators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct BlockData {
    slot: (usize, usize),
    cutoff: u32,
    columns: Vec<Monomial>,
    generator_count: usize,
    echelon: Echelon,
}

/// An echelonized block, able to reduce states to canonical form.
#[derive(Clone, Debug)]
pub struct ReducedBlock {
    data: BlockData,
    coords: Coordinates<Monomial>,
}

impl ReducedBlock {
    fn from_data(data: BlockData) -> Self {
        let coords = Coordinates::new(data.columns.clone());
        ReducedBlock { data, coords }
    }

    pub fn echelonize(block: &WeightBlock) -> Self {
        let coords = Coordinates::new(block.ambient_basis.clone());
        let mut echelon = Echelon::new();
        for (_, s) in &block.generators {
            let row = coords.row(s.iter()).expect("generator realization within block cutoff");
            echelon.insert(&row);
        }
        ReducedBlock {
            data: BlockData {
                slot: block.slot,
                cutoff: block.cutoff,
                columns: block.ambient_basis.clone(),
                generator_count: block.generators.len(),
                echelon,
            },
            coords,
        }
    }

    pub fn slot(&self) -> (usize, usize) {
        self.data.slot
    }

    pub fn cutoff(&self) -> u32 {
        self.data.cutoff
    }

    pub fn rank(&self) -> usize {
        self.data.echelon.rank()
    }

    pub fn generator_count(&self) -> usize {
        self.data.generator_count
    }

    pub fn echelon(&self) -> &Echelon {
        &self.data.echelon
    }

    fn to_state(&self, row: &SparseRow) -> State {
        row.iter()
            .map(|(&j, c)| (self.coords.key(j).clone(), c.clone()))
            .collect()
    }

    pub fn reduce(&self, s: &State) -> Result<State> {
        let row = self.coords.row(s.iter()).ok_or_else(|| Error::TruncationExceeded {
            weight: s.max_weight().unwrap_or(0) as i64,
            cutoff: self.data.cutoff as i64,
        })?;
        Ok(self.to_state(&self.data.echelon.reduce(&row)))
    }

    /// Monomials not hit by a pivot; their classes form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<Monomial> {
        (0..self.coords.len())
            .filter(|&j| !self.data.echelon.is_pivot(j))
            .map(|j| self.coords.key(j).clone())
            .collect()
    }

    pub fn quotient_dims(&self) -> BTreeMap<u32, usize> {
        let mut dims: BTreeMap<u32, usize> = (0..=self.data.cutoff).map(|w| (w, 0)).collect();
        for m in self.quotient_basis() {
            *dims.entry(m.weight()).or_default() += 1;
        }
        dims
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.data).expect("block data serializes")
    }

    fn from_json(s: &str) -> Option<Self> {
        serde_json::from_str(s).ok().map(Self::from_data)
    }
}

/// A cache event worth telling the user about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEvent {
    pub file: String,
    pub outcome: CacheOutcome,
}

type BlockMap = HashMap<((usize, usize), u32), Arc<ReducedBlock>>;

/// Reduces matrices modulo the O-span, building blocks on demand.
pub struct ReductionEngine {
    voa: Voa,
    size: usize,
    blocks: Mutex<BlockMap>,
    disk: Option<BlockCache>,
    events: Mutex<Vec<CacheEvent>>,
}

impl ReductionEngine {
    pub fn new(voa: Voa, size: usize) -> Self {
        ReductionEngine {
            voa,
            size,
            blocks: Mutex::new(HashMap::new()),
            disk: None,
            events: Mutex::new(Vec::new()),
        }
    }

    pub fn with_cache(mut self, cache: BlockCache) -> Self {
        self.disk = Some(cache);
        self
    }

    pub fn voa(&self) -> &Voa {
        &self.voa
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Cache events recorded so far, oldest first.
    pub fn cache_events(&self) -> Vec<CacheEvent> {
        self.events.lock().clone()
    }

    pub fn block(&self, slot: (usize, usize), cutoff: u32) -> Result<Arc<ReducedBlock>> {
        let (k, l) = slot;
        if k > self.size || l > self.size {
            return Err(Error::SlotOutOfRange { k, l, size: self.size });
        }
        if let Some(b) = self.blocks.lock().get(&(slot, cutoff)) {
            return Ok(b.clone());
        }
        let block = Arc::new(self.load_or_build(slot, cutoff)?);
        self.blocks.lock().entry((slot, cutoff)).or_insert(block.clone());
        Ok(block)
    }

    fn load_or_build(&self, slot: (usize, usize), cutoff: u32) -> Result<ReducedBlock> {
        let key = BlockKey {
            algebra: self.voa.family().tag(),
            size: self.size,
            slot,
            cutoff,
        };
        if let Some(disk) = &self.disk {
            let (outcome, payload) = disk.load(&key);
            let mut outcome = outcome;
            if let Some(p) = payload {
                match ReducedBlock::from_json(&p) {
                    Some(b) if b.slot() == slot && b.cutoff() == cutoff => {
                        self.note(&key, CacheOutcome::Hit);
                        return Ok(b);
                    }
                    _ => outcome = CacheOutcome::Corrupt("payload does not decode".into()),
                }
            }
            self.note(&key, outcome);
        }
        let block = ReducedBlock::echelonize(&assemble_block(&self.voa, self.size, slot, cutoff)?);
        if let Some(disk) = &self.disk {
            disk.store(&key, block.to_json())?;
        }
        Ok(block)
    }

    fn note(&self, key: &BlockKey, outcome: CacheOutcome) {
        self.events.lock().push(CacheEvent {
            file: key.file_name(),
            outcome,
        });
    }

    /// Canonical representative of `a` modulo the O-span, entrywise at `cutoff`.
    pub fn canonical_reduce(&self, a: &UMatrix, cutoff: u32) -> Result<UMatrix> {
        if a.size() != self.size {
            return Err(Error::SizeMismatch {
                left: a.size(),
                right: self.size,
            });
        }
        let mut out = UMatrix::zero(self.size);
        for (&(k, l), s) in a.entries() {
            if let Some(w) = s.max_weight() {
                if w > cutoff {
                    return Err(Error::TruncationExceeded {
                        weight: w as i64,
                        cutoff: cutoff as i64,
                    });
                }
            }
            let r = self.block((k, l), cutoff)?.reduce(s)?;
            out.set(k, l, r)?;
        }
        Ok(out)
    }

    /// Reduces at `margin` above the top weight of `a`. Spanning elements
    /// can realize below their nominal weight, so a margin of at least one
    /// is needed to see, e.g., `(l - k) [1]_{kl}`.
    pub fn reduce_with_margin(&self, a: &UMatrix, margin: u32) -> Result<UMatrix> {
        let cutoff = a.max_weight().unwrap_or(0) + margin;
        self.canonical_reduce(a, cutoff)
    }

    /// Dimension of each weight slice of each slot modulo the O-span,
    /// computed in the block one weight above `w_max`.
    ///
    /// These are upper bounds for the true quotient, which may have more
    /// relations than the O-span provides.
    pub fn quotient_dimension_table(&self, w_max: u32) -> Result<DimensionTable> {
        if w_max + 1 > self.voa.weight_cutoff() {
            return Err(Error::TruncationExceeded {
                weight: w_max as i64 + 1,
                cutoff: self.voa.weight_cutoff() as i64,
            });
        }
        let mut rows = Vec::new();
        for k in 0..=self.size {
            for l in 0..=self.size {
                let block = self.block((k, l), w_max + 1)?;
                for (weight, dimension) in block.quotient_dims().into_iter().filter(|&(w, _)| w <= w_max) {
                    rows.push(DimensionRow { k, l, weight, dimension });
                }
            }
        }
        Ok(DimensionTable {
            algebra: self.voa.family().tag(),
            size: self.size,
            weight_cutoff: w_max,
            rows,
        })
    }

    /// Reduced products of canonical basis classes of weight at most
    /// `w_max`, reduced at `cutoff`; pairs whose product exceeds the cutoff
    /// are counted as skipped.
    pub fn quotient_structure_constants(&self, w_max: u32, cutoff: u32) -> Result<StructureTable> {
        let n = self.size;
        let mut classes = Vec::new();
        for k in 0..=n {
            for l in 0..=n {
                let mut basis = self.block((k, l), cutoff)?.quotient_basis();
                basis.retain(|m| m.weight() <= w_max);
                basis.sort();
                classes.extend(basis.into_iter().map(|m| ClassEntry { k, l, monomial: m }));
            }
        }
        let one = UMatrix::unit(n);
        let mut products = Vec::new();
        let mut skipped = 0usize;
        let mut unit_laws_hold = true;
        for (i, a) in classes.iter().enumerate() {
            let am = a.matrix(n)?;
            for (j, b) in classes.iter().enumerate() {
                if a.l != b.k {
                    continue;
                }
                let top = a.monomial.weight() + b.monomial.weight() + (a.k + b.l) as u32;
                if top > cutoff {
                    skipped += 1;
                    continue;
                }
                let p = diamond(&self.voa, &am, &b.matrix(n)?)?;
                products.push(ProductEntry {
                    left: i,
                    right: j,
                    result: self.canonical_reduce(&p, cutoff)?,
                });
            }
            let left = diamond(&self.voa, &one, &am)?;
            unit_laws_hold &= left == am;
            let right = diamond(&self.voa, &am, &one)?;
            if right.max_weight().unwrap_or(0) <= cutoff {
                unit_laws_hold &= self.canonical_reduce(&right, cutoff)? == am;
            }
        }
        Ok(StructureTable {
            algebra: self.voa.family().tag(),
            size: n,
            weight_cutoff: w_max,
            reduction_cutoff: cutoff,
            classes,
            products,
            skipped,
            unit_laws_hold,
        })
    }

    /// Tests whether reduction is compatible with the product: for sampled
    /// generators `g` of the O-span and basis matrices `C`, both `g ⋄ C`
    /// and `C ⋄ g` should reduce to zero. A failure is a finding about the
    /// O-span, not a defect of the engine.
    pub fn well_definedness_experiment(&self, w_max: u32, cutoff: u32, budget: usize, seed: u64) -> Result<Report> {
        let n = self.size;
        let mut cases = Vec::new();
        for k in 0..=n {
            for m in 0..=n {
                for w in 0..=w_max {
                    for (g, s) in o_generators(&self.voa, n, (k, m), w)? {
                        for l in 0..=n {
                            for v in self.voa.basis_up_to(w_max) {
                                cases.push((g.clone(), s.clone(), k, m, l, v));
                            }
                        }
                    }
                }
            }
        }
        let mut rb = ReportBuilder::new("O-span compatibility with the product");
        rb.meta("size", n).meta("weight_cutoff", w_max).meta("reduction_cutoff", cutoff);
        let mut failures = 0u64;
        for (g, s, k, m, l, v) in sample_cases(cases, budget, seed) {
            let gm = UMatrix::elementary(n, s, k, m)?;
            let vs = State::basis(v.clone());
            let right = UMatrix::elementary(n, vs.clone(), m, l)?;
            let left = UMatrix::elementary(n, vs, l, k)?;
            for (label, prod) in [
                ("g ⋄ C", diamond(&self.voa, &gm, &right)?),
                ("C ⋄ g", diamond(&self.voa, &left, &gm)?),
            ] {
                if prod.max_weight().unwrap_or(0) > cutoff {
                    rb.skip();
                    continue;
                }
                let r = self.canonical_reduce(&prod, cutoff)?;
                let ok = r.is_zero();
                if !ok {
                    failures += 1;
                }
                rb.check(ok, || crate::report::Counterexample {
                    check: label.into(),
                    description: format!("g={g:?} C=[{v:?}] (k,m,l)=({k},{m},{l})"),
                    expected: None,
                    actual: Some(r.entries().next().map(|(_, s)| s.clone()).unwrap_or_default()),
                });
            }
        }
        rb.finding(format!("{failures} sampled products of an O-span generator with a basis matrix did not reduce to zero"));
        Ok(rb.finish())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub k: usize,
    pub l: usize,
    pub weight: u32,
    pub dimension: usize,
}

/// Quotient dimensions per slot and weight, modulo the O-span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub algebra: String,
    pub size: usize,
    pub weight_cutoff: u32,
    pub rows: Vec<DimensionRow>,
}

impl DimensionTable {
    pub fn get(&self, k: usize, l: usize, weight: u32) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.k == k && r.l == l && r.weight == weight)
            .map(|r| r.dimension)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,l,weight,dimension_modulo_o\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{}\n", r.k, r.l, r.weight, r.dimension));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub k: usize,
    pub l: usize,
    pub monomial: Monomial,
}

impl ClassEntry {
    pub fn matrix(&self, size: usize) -> Result<UMatrix> {
        UMatrix::elementary(size, State::basis(self.monomial.clone()), self.k, self.l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub result: UMatrix,
}

/// Products of canonical classes, reduced modulo the O-span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub algebra: String,
    pub size: usize,
    pub weight_cutoff: u32,
    pub reduction_cutoff: u32,
    pub classes: Vec<ClassEntry>,
    pub products: Vec<ProductEntry>,
    pub skipped: usize,
    pub unit_laws_hold: bool,
}

impl StructureTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("left,right,k,l,monomial,coefficient\n");
        for p in &self.products {
            for (&(k, l), st) in p.result.entries() {
                for (m, c) in st.iter() {
                    let parts: Vec<String> = m.parts().iter().map(u32::to_string).collect();
                    s.push_str(&format!("{},{},{},{},{},{}\n", p.left, p.right, k, l, parts.join(" "), c));
                }
            }
        }
        s
    }
}

/// Dimensions of the weight slices of `V / C_n(V)`, where `C_n(V)` is
/// spanned by all `u_(-n) v`.
pub fn cn_quotient_dimension(voa: &Voa, n: u32, w_max: u32) -> Result<Vec<(u32, usize)>> {
    if n < 2 {
        return Err(Error::Invalid(format!("C_n needs n >= 2, got {n}")));
    }
    if w_max > voa.weight_cutoff() {
        return Err(Error::TruncationExceeded {
            weight: w_max as i64,
            cutoff: voa.weight_cutoff() as i64,
        });
    }
    let mut out = Vec::new();
    for w in 0..=w_max {
        let cols = Coordinates::new(voa.basis(w));
        let mut ech = Echelon::new();
        // u_(-n) v has weight wt u + wt v + n - 1
        if w + 1 >= n {
            let budget = w + 1 - n;
            for wu in 1..=budget {
                for u in voa.basis(wu) {
                    for v in voa.basis(budget - wu) {
                        let s = voa.space().mode(&u, -(n as i64), &v);
                        let row = cols.row(s.iter()).expect("homogeneous product");
                        ech.insert(&row);
                    }
                }
            }
        }
        out.push((w, cols.len() - ech.rank()));
    }
    Ok(out)
}

/// Expresses `s` in a fixed set of canonical classes at one slot.
pub fn class_coordinates(block: &ReducedBlock, s: &State) -> Result<BTreeMap<Monomial, Scalar>> {
    let r = block.reduce(s)?;
    Ok(r.iter().map(|(m, c)| (m.clone(), c.clone())).collect())
}
