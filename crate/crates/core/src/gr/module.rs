//! Lower-bounded modules with a depth window: Heisenberg Fock modules,
//! Virasoro Verma modules and finite direct sums of them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Coordinates, SparseRow};
use crate::scalar::Scalar;
use crate::state::{Monomial, State};
use crate::voa::{AlgebraDescriptor, Family, Lowest, Space, Voa};

/// One irreducible-or-Verma building block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModuleKind {
    Fock { mu: Scalar },
    Verma { h: Scalar },
}

impl ModuleKind {
    fn lowest(&self) -> Lowest {
        match self {
            ModuleKind::Fock { mu } => Lowest::Fock { mu: mu.clone() },
            ModuleKind::Verma { h } => Lowest::Verma { h: h.clone() },
        }
    }
}

/// Serializable description of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub algebra: AlgebraDescriptor,
    pub summands: Vec<ModuleKind>,
    pub depth_cutoff: u32,
}

/// Basis vector `monomial · w_0` of summand `summand`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModBasis {
    pub summand: usize,
    pub monomial: Monomial,
}

impl ModBasis {
    pub fn depth(&self) -> u32 {
        self.monomial.weight()
    }
}

/// A finite linear combination of module basis vectors.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ModVec {
    terms: BTreeMap<ModBasis, Scalar>,
}

impl ModVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: ModBasis) -> Self {
        let mut v = Self::zero();
        v.add_term(b, Scalar::one());
        v
    }

    /// Embeds a state of one summand.
    pub fn from_state(summand: usize, s: &State) -> Self {
        let mut v = Self::zero();
        for (m, c) in s.iter() {
            v.add_term(
                ModBasis {
                    summand,
                    monomial: m.clone(),
                },
                c.clone(),
            );
        }
        v
    }

    pub fn add_term(&mut self, b: ModBasis, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b.clone()).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, other: &ModVec, c: &Scalar) {
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModVec {
        let mut out = ModVec::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModBasis, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &ModBasis) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }
}

impl FromIterator<(ModBasis, Scalar)> for ModVec {
    fn from_iter<I: IntoIterator<Item = (ModBasis, Scalar)>>(iter: I) -> Self {
        let mut v = ModVec::zero();
        for (b, c) in iter {
            v.add_term(b, c);
        }
        v
    }
}

impl fmt::Debug for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("{c:?}*{}:{:?}", b.summand, b.monomial))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for ModVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(usize, &Monomial, &Scalar)> =
            self.terms.iter().map(|(b, c)| (b.summand, &b.monomial, c)).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(usize, Monomial, Scalar)> = Vec::deserialize(d)?;
        let mut out = ModVec::zero();
        for (summand, monomial, c) in v {
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient in module vector"));
            }
            out.add_term(ModBasis { summand, monomial }, c);
        }
        Ok(out)
    }
}

/// The retained part of one generalized `L(0)`-eigenspace.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: Scalar,
    /// True when no summand has vectors of this weight beyond the window.
    pub complete: bool,
    pub coords: Coordinates<ModBasis>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn row(&self, v: &ModVec) -> Option<SparseRow> {
        self.coords.row(v.iter())
    }

    pub fn vector(&self, row: &SparseRow) -> ModVec {
        row.iter()
            .map(|(&j, c)| (self.coords.key(j).clone(), c.clone()))
            .collect()
    }
}

/// A lower-bounded module, retained up to depth `depth_cutoff` in every summand.
#[derive(Debug)]
pub struct LowerBoundedModule {
    voa: Voa,
    kinds: Vec<ModuleKind>,
    spaces: Vec<Arc<Space>>,
    depth_cutoff: u32,
    pieces: BTreeMap<Scalar, WeightSpace>,
}

impl LowerBoundedModule {
    pub fn new(voa: Voa, kinds: Vec<ModuleKind>, depth_cutoff: u32) -> Result<Self> {
        for k in &kinds {
            let ok = matches!(
                (voa.family(), k),
                (Family::Heisenberg, ModuleKind::Fock { .. }) | (Family::Virasoro { .. }, ModuleKind::Verma { .. })
            );
            if !ok {
                return Err(Error::Invalid(format!("{k:?} is not a module for {:?}", voa.family())));
            }
        }
        let spaces: Vec<Arc<Space>> = kinds.iter().map(|k| Arc::new(voa.module_space(k.lowest()))).collect();
        let mut by_weight: BTreeMap<Scalar, Vec<ModBasis>> = BTreeMap::new();
        for (i, sp) in spaces.iter().enumerate() {
            for d in 0..=depth_cutoff {
                let w = sp.lowest_weight() + Scalar::from_int(d as i64);
                for m in sp.basis(d) {
                    by_weight.entry(w.clone()).or_default().push(ModBasis { summand: i, monomial: m });
                }
            }
        }
        let mut pieces = BTreeMap::new();
        for (w, mut keys) in by_weight {
            keys.sort();
            let complete = spaces.iter().all(|sp| match (&w - &sp.lowest_weight()).to_i64() {
                Some(d) => d <= depth_cutoff as i64,
                None => true,
            });
            pieces.insert(
                w.clone(),
                WeightSpace {
                    weight: w,
                    complete,
                    coords: Coordinates::new(keys),
                },
            );
        }
        Ok(LowerBoundedModule {
            voa,
            kinds,
            spaces,
            depth_cutoff,
            pieces,
        })
    }

    pub fn from_descriptor(d: &ModuleDescriptor) -> Result<Self> {
        Self::new(Voa::from_descriptor(&d.algebra)?, d.summands.clone(), d.depth_cutoff)
    }

    pub fn fock(voa: Voa, mu: Scalar, depth_cutoff: u32) -> Result<Self> {
        Self::new(voa, vec![ModuleKind::Fock { mu }], depth_cutoff)
    }

    pub fn verma(voa: Voa, h: Scalar, depth_cutoff: u32) -> Result<Self> {
        Self::new(voa, vec![ModuleKind::Verma { h }], depth_cutoff)
    }

    pub fn descriptor(&self) -> ModuleDescriptor {
        ModuleDescriptor {
            algebra: self.voa.descriptor(),
            summands: self.kinds.clone(),
            depth_cutoff: self.depth_cutoff,
        }
    }

    pub fn voa(&self) -> &Voa {
        &self.voa
    }

    pub fn depth_cutoff(&self) -> u32 {
        self.depth_cutoff
    }

    pub fn summand_count(&self) -> usize {
        self.spaces.len()
    }

    pub fn lowest_weight(&self, summand: usize) -> Scalar {
        self.spaces[summand].lowest_weight()
    }

    pub fn weight_of(&self, b: &ModBasis) -> Scalar {
        self.lowest_weight(b.summand) + Scalar::from_int(b.depth() as i64)
    }

    /// Weight of a homogeneous vector, `None` for zero or mixed vectors.
    pub fn homogeneous_weight(&self, v: &ModVec) -> Option<Scalar> {
        let mut it = v.iter().map(|(b, _)| self.weight_of(b));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn pieces(&self) -> impl Iterator<Item = &WeightSpace> {
        self.pieces.values()
    }

    pub fn piece(&self, weight: &Scalar) -> Option<&WeightSpace> {
        self.pieces.get(weight)
    }

    /// Whether a vector lies inside the retained window.
    pub fn in_window(&self, v: &ModVec) -> bool {
        v.iter().all(|(b, _)| b.depth() <= self.depth_cutoff)
    }

    fn window_check(&self, v: &ModVec) -> Result<()> {
        if self.in_window(v) {
            Ok(())
        } else {
            Err(Error::OutOfWindow {
                weight: self.homogeneous_weight(v).map(|w| w.to_string()).unwrap_or_default(),
            })
        }
    }

    /// `u_(j) b` for a vertex-algebra basis monomial `u`.
    pub fn mode_basis(&self, u: &Monomial, j: i64, b: &ModBasis) -> ModVec {
        ModVec::from_state(b.summand, &self.spaces[b.summand].mode(u, j, &b.monomial))
    }

    /// `v_(j) x`, computed exactly (the result may leave the window).
    pub fn mode(&self, v: &State, j: i64, x: &ModVec) -> ModVec {
        let mut out = ModVec::zero();
        for (u, cu) in v.iter() {
            for (b, cb) in x.iter() {
                out.add_scaled(&self.mode_basis(u, j, b), &(cu * cb));
            }
        }
        out
    }

    /// `Res_x x^p Y(x^{L(0)} v, x) x = sum_w (v_w)_(w + p) x` over the
    /// homogeneous components `v_w` of `v`.
    pub fn dressed_mode(&self, v: &State, p: i64, x: &ModVec) -> ModVec {
        let mut out = ModVec::zero();
        for (w, comp) in v.components() {
            out.add_scaled(&self.mode(&comp, w as i64 + p, x), &Scalar::one());
        }
        out
    }

    /// `L(n) x`, exact.
    pub fn virasoro(&self, n: i64, x: &ModVec) -> ModVec {
        let mut out = ModVec::zero();
        for (b, c) in x.iter() {
            let s = self.spaces[b.summand].virasoro_on(n, &State::basis(b.monomial.clone()));
            out.add_scaled(&ModVec::from_state(b.summand, &s), c);
        }
        out
    }

    /// `L(n) x`, failing when the result leaves the window.
    pub fn virasoro_in_window(&self, n: i64, x: &ModVec) -> Result<ModVec> {
        let out = self.virasoro(n, x);
        self.window_check(&out)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fock_weights_and_modes() {
        let m = LowerBoundedModule::fock(Voa::heisenberg(6), Scalar::from_int(1), 3).unwrap();
        let low = ModVec::basis(ModBasis {
            summand: 0,
            monomial: Monomial::vacuum(),
        });
        let a = State::basis(Monomial::new(vec![1]).unwrap());
        assert_eq!(m.mode(&a, -1, &low).iter().count(), 1);
        assert_eq!(m.homogeneous_weight(&low), Some(Scalar::new(1, 2)));
        let l0 = m.virasoro(0, &low);
        assert_eq!(l0, low.scale(&Scalar::new(1, 2)));
        let dims: Vec<usize> = m.pieces().map(WeightSpace::dim).collect();
        assert_eq!(dims, vec![1, 1, 2, 3]);
    }

    #[test]
    fn direct_sum_pieces() {
        let m = LowerBoundedModule::new(
            Voa::heisenberg(4),
            vec![ModuleKind::Fock { mu: Scalar::from_int(1) }, ModuleKind::Fock { mu: Scalar::from_int(2) }],
            2,
        )
        .unwrap();
        // weights 1/2, 3/2, 5/2 and 2, 3, 4
        assert_eq!(m.pieces().count(), 6);
        assert!(m.pieces().all(|p| p.complete));
    }

    #[test]
    fn family_mismatch_rejected() {
        assert!(LowerBoundedModule::verma(Voa::heisenberg(4), Scalar::zero(), 2).is_err());
    }

    #[test]
    fn modvec_serde() {
        let v = ModVec::from_state(1, &State::term(Monomial::new(vec![2, 1]).unwrap(), Scalar::new(-1, 3)));
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"[[1,[2,1],"-1/3"]]"#);
        assert_eq!(serde_json::from_str::<ModVec>(&js).unwrap(), v);
    }
}
