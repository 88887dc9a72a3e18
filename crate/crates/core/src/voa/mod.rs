//! Built-in vertex operator algebras with exact mode products.

mod axioms;
mod space;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use axioms::{voa_axiom_suite, AxiomSuiteConfig};
pub use space::{Family, Lowest, ModeFault, Space};

use crate::error::{Error, Result};
use crate::formal::{gen_binomial, LaurentPoly};
use crate::scalar::Scalar;
use crate::state::{partitions, Monomial, State};

/// Serializable description of an algebra and its weight cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub kind: AlgebraKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_charge: Option<Scalar>,
    pub weight_cutoff: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Heisenberg,
    Virasoro,
}

impl AlgebraDescriptor {
    pub fn family(&self) -> Result<Family> {
        match self.kind {
            AlgebraKind::Heisenberg => Ok(Family::Heisenberg),
            AlgebraKind::Virasoro => {
                let c = self.central_charge.clone().ok_or_else(|| {
                    Error::Invalid("the Virasoro algebra needs a central charge".into())
                })?;
                Ok(Family::Virasoro { c })
            }
        }
    }
}

/// One of `L(-1)`, `L(0)`, `L(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl2 {
    Minus,
    Zero,
    Plus,
}

impl Sl2 {
    pub fn index(self) -> i64 {
        match self {
            Sl2::Minus => -1,
            Sl2::Zero => 0,
            Sl2::Plus => 1,
        }
    }
}

/// A vertex operator algebra truncated at a maximal weight.
#[derive(Debug, Clone)]
pub struct Voa {
    family: Family,
    weight_cutoff: u32,
    space: Arc<Space>,
}

impl Voa {
    pub fn heisenberg(weight_cutoff: u32) -> Self {
        Self::new(Family::Heisenberg, weight_cutoff)
    }

    pub fn virasoro(c: Scalar, weight_cutoff: u32) -> Self {
        Self::new(Family::Virasoro { c }, weight_cutoff)
    }

    pub fn new(family: Family, weight_cutoff: u32) -> Self {
        let space = Arc::new(Space::new(family.clone(), Lowest::Vacuum));
        Voa {
            family,
            weight_cutoff,
            space,
        }
    }

    pub fn from_descriptor(d: &AlgebraDescriptor) -> Result<Self> {
        Ok(Self::new(d.family()?, d.weight_cutoff))
    }

    /// A copy whose mode table is corrupted at one entry.
    #[doc(hidden)]
    pub fn with_fault(&self, fault: ModeFault) -> Self {
        let space = Space::new(self.family.clone(), Lowest::Vacuum).with_fault(fault);
        Voa {
            family: self.family.clone(),
            weight_cutoff: self.weight_cutoff,
            space: Arc::new(space),
        }
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        match &self.family {
            Family::Heisenberg => AlgebraDescriptor {
                kind: AlgebraKind::Heisenberg,
                central_charge: None,
                weight_cutoff: self.weight_cutoff,
            },
            Family::Virasoro { c } => AlgebraDescriptor {
                kind: AlgebraKind::Virasoro,
                central_charge: Some(c.clone()),
                weight_cutoff: self.weight_cutoff,
            },
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn weight_cutoff(&self) -> u32 {
        self.weight_cutoff
    }

    /// The algebra acting on itself.
    pub fn space(&self) -> &Space {
        &self.space
    }

    /// A fresh module space over this algebra.
    pub fn module_space(&self, lowest: Lowest) -> Space {
        Space::new(self.family.clone(), lowest)
    }

    pub fn central_charge(&self) -> Scalar {
        match &self.family {
            Family::Heisenberg => Scalar::one(),
            Family::Virasoro { c } => c.clone(),
        }
    }

    /// Basis monomials of weight exactly `w`.
    pub fn basis(&self, w: u32) -> Vec<Monomial> {
        partitions(w, self.space.min_part())
    }

    /// Basis monomials of weight at most `w`, ascending.
    pub fn basis_up_to(&self, w: u32) -> Vec<Monomial> {
        (0..=w).flat_map(|k| self.basis(k)).collect()
    }

    /// The strong generator `a` or `ω` as a state.
    pub fn generator(&self) -> State {
        let part = self.family.generator_weight();
        State::basis(Monomial::from_sorted(vec![part]))
    }

    pub fn conformal_vector(&self) -> State {
        self.space.conformal_vector()
    }

    fn check_weight(&self, s: &State) -> Result<()> {
        match s.max_weight() {
            Some(w) if w > self.weight_cutoff => Err(Error::TruncationExceeded {
                weight: w as i64,
                cutoff: self.weight_cutoff as i64,
            }),
            _ => Ok(()),
        }
    }

    /// `u_(j) v` inside the algebra.
    pub fn mode_product(&self, u: &State, j: i64, v: &State) -> Result<State> {
        self.check_weight(u)?;
        self.check_weight(v)?;
        let out = self.space.mode_state(u, j, v);
        self.check_weight(&out)?;
        Ok(out)
    }

    /// `L(-1) v`, `L(0) v` or `L(1) v`.
    pub fn sl2_action(&self, op: Sl2, v: &State) -> Result<State> {
        self.check_weight(v)?;
        let out = self.space.virasoro_on(op.index(), v);
        self.check_weight(&out)?;
        Ok(out)
    }

    /// `L(0) v` computed from the grading.
    pub fn weight_operator(&self, v: &State) -> State {
        v.iter()
            .map(|(m, c)| (m.clone(), c * &Scalar::from_int(m.weight() as i64)))
            .collect()
    }

    /// `Res_x f(x) (1+x)^l Y((1+x)^{L(0)} u, x) v`.
    ///
    /// Expanded as `sum c_e C(l + wt u, i) u_(e+i) v`, which is a finite sum
    /// because `u_(j) v = 0` once `j >= wt u + wt v`.
    pub fn dressed_residue(&self, f: &LaurentPoly, l: i64, u: &State, v: &State) -> Result<State> {
        self.check_weight(u)?;
        self.check_weight(v)?;
        let Some(top_v) = v.max_weight() else {
            return Ok(State::zero());
        };
        let mut out = State::zero();
        for (wu, comp) in u.components() {
            let bound = wu as i64 + top_v as i64;
            for (e, ce) in f.terms() {
                let mut i = 0i64;
                while e + i < bound {
                    let b = gen_binomial(l + wu as i64, i as u64);
                    if !b.is_zero() {
                        let prod = self.space.mode_state(&comp, e + i, v);
                        out.add_scaled(&prod, &(ce * &b));
                    }
                    i += 1;
                }
            }
        }
        self.check_weight(&out)?;
        Ok(out)
    }
}
