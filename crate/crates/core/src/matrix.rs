//! Square matrices with entries in a vertex algebra and the diamond product.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formal::{gen_binomial, truncation_poly, LaurentPoly};
use crate::scalar::Scalar;
use crate::state::{Monomial, State};
use crate::voa::{Sl2, Voa};

/// An `(N+1) x (N+1)` matrix with entries in the vertex algebra; `size`
/// stores `N`. Zero entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), State>,
}

impl UMatrix {
    pub fn zero(size: usize) -> Self {
        UMatrix {
            size,
            entries: BTreeMap::new(),
        }
    }

    /// The matrix `[v]_{kl}` with a single nonzero entry.
    pub fn elementary(size: usize, v: State, k: usize, l: usize) -> Result<Self> {
        let mut m = Self::zero(size);
        m.set(k, l, v)?;
        Ok(m)
    }

    /// `1^N`: the vacuum on the diagonal.
    pub fn unit(size: usize) -> Self {
        let mut m = Self::zero(size);
        for k in 0..=size {
            m.entries.insert((k, k), State::vacuum());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn check_slot(&self, k: usize, l: usize) -> Result<()> {
        if k > self.size || l > self.size {
            return Err(Error::SlotOutOfRange {
                k,
                l,
                size: self.size,
            });
        }
        Ok(())
    }

    pub fn set(&mut self, k: usize, l: usize, v: State) -> Result<()> {
        self.check_slot(k, l)?;
        if v.is_zero() {
            self.entries.remove(&(k, l));
        } else {
            self.entries.insert((k, l), v);
        }
        Ok(())
    }

    /// The `(k, l)` entry; zero when absent.
    pub fn get(&self, k: usize, l: usize) -> State {
        self.entries.get(&(k, l)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &State)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.entries.values().filter_map(State::max_weight).max()
    }

    fn same_size(&self, other: &UMatrix) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UMatrix) -> Result<UMatrix> {
        self.same_size(other)?;
        let mut out = self.clone();
        for (&(k, l), v) in &other.entries {
            let mut e = out.get(k, l);
            e.add_state(v);
            out.set(k, l, e)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UMatrix) -> Result<UMatrix> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> UMatrix {
        let mut out = UMatrix::zero(self.size);
        if c.is_zero() {
            return out;
        }
        for (&slot, v) in &self.entries {
            out.entries.insert(slot, v.scale(c));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    k: usize,
    l: usize,
    state: State,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    size: usize,
    entries: Vec<EntryRepr>,
}

impl Serialize for UMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            size: self.size,
            entries: self
                .entries
                .iter()
                .map(|(&(k, l), state)| EntryRepr {
                    k,
                    l,
                    state: state.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let mut m = UMatrix::zero(repr.size);
        for e in repr.entries {
            let mut cur = m.get(e.k, e.l);
            cur.add_state(&e.state);
            m.set(e.k, e.l, cur).map_err(serde::de::Error::custom)?;
        }
        Ok(m)
    }
}

/// `(A ⋄ B)_{kl} = sum_n Res_x T(k,n,l)(x) (1+x)^l Y((1+x)^{L(0)} A_{kn}, x) B_{nl}`.
pub fn diamond(voa: &Voa, a: &UMatrix, b: &UMatrix) -> Result<UMatrix> {
    a.same_size(b)?;
    let size = a.size;
    let mut out = UMatrix::zero(size);
    for (&(k, n), u) in &a.entries {
        for l in 0..=size {
            let Some(v) = b.entries.get(&(n, l)) else {
                continue;
            };
            let f = truncation_poly(k as u32, n as u32, l as u32);
            let prod = voa.dressed_residue(&f, l as i64, u, v)?;
            let mut e = out.get(k, l);
            e.add_state(&prod);
            out.set(k, l, e)?;
        }
    }
    Ok(out)
}

fn apply_x(voa: &Voa, v: &State, shift: i64) -> Result<State> {
    let mut out = voa.sl2_action(Sl2::Minus, v)?;
    out.add_state(&voa.weight_operator(v));
    out.add_scaled(v, &Scalar::from_int(shift));
    Ok(out)
}

/// `C(L(-1) + L(0) + shift, r) v`.
pub fn operator_binomial(voa: &Voa, v: &State, shift: i64, r: u64) -> Result<State> {
    let mut cur = v.clone();
    for i in 0..r as i64 {
        cur = apply_x(voa, &cur, shift - i)?.scale(&Scalar::new(1, i + 1));
    }
    Ok(cur)
}

/// Closed form of `[v]_{kl} ⋄ 1^N`:
/// `sum_{m=0}^{l} C(-k-1, m) [C(L(-1) + L(0) + l, k+m) v]_{kl}`.
pub fn right_unit_closed_form(voa: &Voa, size: usize, v: &State, k: usize, l: usize) -> Result<UMatrix> {
    let mut entry = State::zero();
    for m in 0..=l as u64 {
        let c = gen_binomial(-(k as i64) - 1, m);
        let b = operator_binomial(voa, v, l as i64, k as u64 + m)?;
        entry.add_scaled(&b, &c);
    }
    UMatrix::elementary(size, entry, k, l)
}

/// A spanning element of the O-span at slot `(k, l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OGenerator {
    /// `Res_x x^{-k-l-p-2} (1+x)^l Y((1+x)^{L(0)} u, x) v`.
    Residue {
        u: Monomial,
        v: Monomial,
        k: usize,
        l: usize,
        p: u32,
    },
    /// `(L(-1) + L(0) + l - k) v`.
    Sl2 { v: Monomial, k: usize, l: usize },
}

impl OGenerator {
    pub fn slot(&self) -> (usize, usize) {
        match self {
            OGenerator::Residue { k, l, .. } | OGenerator::Sl2 { k, l, .. } => (*k, *l),
        }
    }

    /// Weight of the leading term the generator would have without
    /// cancellation; the realization lives in weights at most this.
    pub fn nominal_weight(&self) -> u32 {
        match self {
            OGenerator::Residue { u, v, k, l, p } => {
                u.weight() + v.weight() + (*k + *l) as u32 + p + 1
            }
            OGenerator::Sl2 { v, .. } => v.weight() + 1,
        }
    }

    /// The `(k, l)` entry of the generator.
    pub fn realize(&self, voa: &Voa) -> Result<State> {
        match self {
            OGenerator::Residue { u, v, k, l, p } => {
                let e = -((*k + *l) as i64) - *p as i64 - 2;
                voa.dressed_residue(
                    &LaurentPoly::x_pow(e),
                    *l as i64,
                    &State::basis(u.clone()),
                    &State::basis(v.clone()),
                )
            }
            OGenerator::Sl2 { v, k, l } => {
                apply_x(voa, &State::basis(v.clone()), *l as i64 - *k as i64)
            }
        }
    }

    pub fn as_matrix(&self, voa: &Voa, size: usize) -> Result<UMatrix> {
        let (k, l) = self.slot();
        UMatrix::elementary(size, self.realize(voa)?, k, l)
    }
}

/// All spanning elements at `slot` of nominal weight exactly `w` with a
/// nonzero realization, in a deterministic order.
pub fn o_generators(voa: &Voa, size: usize, slot: (usize, usize), w: u32) -> Result<Vec<(OGenerator, State)>> {
    let (k, l) = slot;
    if k > size || l > size {
        return Err(Error::SlotOutOfRange { k, l, size });
    }
    let mut out = Vec::new();
    if w >= 1 {
        for v in voa.basis(w - 1) {
            let g = OGenerator::Sl2 { v, k, l };
            let s = g.realize(voa)?;
            if !s.is_zero() {
                out.push((g, s));
            }
        }
    }
    let shift = (k + l) as u32 + 1;
    if w >= shift {
        let budget = w - shift;
        for wu in 1..=budget {
            for u in voa.basis(wu) {
                for wv in 0..=(budget - wu) {
                    let p = budget - wu - wv;
                    for v in voa.basis(wv) {
                        let g = OGenerator::Residue {
                            u: u.clone(),
                            v,
                            k,
                            l,
                            p,
                        };
                        let s = g.realize(voa)?;
                        if !s.is_zero() {
                            out.push((g, s));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `[(L(-1)+L(0)+n-k)u]_{kn} ⋄ [v]_{nl}` against
/// `-(n+1) C(-k+n-l-1, n+1) Res_x x^{-k-l-2}(1+x)^l Y((1+x)^{L(0)}u,x)v`.
///
/// The factor comes from `(1+x) T' = α T + (n+1) C(α, n+1) x^{α-n-1}` for the
/// truncation `T` of `(1+x)^α`, `α = -k+n-l-1`; the factor
/// `(k-n+l+1) C(α, n+1)` sometimes quoted for this identity is already
/// wrong at `k = n = l = 0` (see [`literal_lder_factor`]).
pub fn lder_product_identity_check(
    voa: &Voa,
    size: usize,
    u: &State,
    v: &State,
    k: usize,
    n: usize,
    l: usize,
) -> Result<bool> {
    let (lhs, rhs) = lder_product_sides(voa, size, u, v, k, n, l)?;
    Ok(lhs == rhs)
}

/// Both sides of [`lder_product_identity_check`] as `(k, l)` entries.
pub fn lder_product_sides(
    voa: &Voa,
    size: usize,
    u: &State,
    v: &State,
    k: usize,
    n: usize,
    l: usize,
) -> Result<(State, State)> {
    let (ki, ni, li) = (k as i64, n as i64, l as i64);
    let xu = apply_x(voa, u, ni - ki)?;
    let a = UMatrix::elementary(size, xu, k, n)?;
    let b = UMatrix::elementary(size, v.clone(), n, l)?;
    let lhs = diamond(voa, &a, &b)?.get(k, l);
    let c = -(Scalar::from_int(ni + 1) * gen_binomial(-ki + ni - li - 1, n as u64 + 1));
    let res = voa.dressed_residue(&LaurentPoly::x_pow(-ki - li - 2), li, u, v)?;
    Ok((lhs, res.scale(&c)))
}

/// `(k-n+l+1) C(-k+n-l-1, n+1)`, the factor of the uncorrected identity.
pub fn literal_lder_factor(k: usize, n: usize, l: usize) -> Scalar {
    let (ki, ni, li) = (k as i64, n as i64, l as i64);
    Scalar::from_int(ki - ni + li + 1) * gen_binomial(-ki + ni - li - 1, n as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(pairs: &[(&[u32], i64)]) -> State {
        State::from_pairs(
            pairs
                .iter()
                .map(|(p, c)| (p.to_vec(), Scalar::from_int(*c)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn diamond_of_generators_across_slots() {
        let voa = Voa::heisenberg(8);
        let a = voa.generator();
        let x = UMatrix::elementary(1, a.clone(), 0, 1).unwrap();
        let y = UMatrix::elementary(1, a, 1, 1).unwrap();
        let p = diamond(&voa, &x, &y).unwrap();
        assert_eq!(p.get(0, 1), st(&[(&[2, 1], -1), (&[1, 1], -1), (&[], 1)]));
        assert_eq!(p.entries().count(), 1);
    }

    #[test]
    fn slot_mismatch_gives_zero() {
        let voa = Voa::heisenberg(6);
        let a = voa.generator();
        let x = UMatrix::elementary(1, a.clone(), 0, 0).unwrap();
        let y = UMatrix::elementary(1, a, 1, 1).unwrap();
        assert!(diamond(&voa, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let voa = Voa::heisenberg(6);
        let e = diamond(&voa, &UMatrix::unit(1), &UMatrix::unit(2));
        assert!(matches!(e, Err(Error::SizeMismatch { left: 1, right: 2 })));
    }

    #[test]
    fn serde_roundtrip() {
        let m = UMatrix::elementary(2, st(&[(&[1], 3)]), 1, 2).unwrap();
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(js, r#"{"size":2,"entries":[{"k":1,"l":2,"state":[[[1],"3/1"]]}]}"#);
        let back: UMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<UMatrix>(r#"{"size":0,"entries":[{"k":1,"l":0,"state":[]}]}"#).is_err());
        assert!(serde_json::from_str::<UMatrix>(r#"{"size":0,"entries":[{"k":1,"l":0,"state":[[[1],"1"]]}]}"#).is_err());
    }

    #[test]
    fn sl2_generator_on_vacuum() {
        let voa = Voa::heisenberg(4);
        let g = OGenerator::Sl2 { v: Monomial::vacuum(), k: 0, l: 2 };
        assert_eq!(g.realize(&voa).unwrap(), State::term(Monomial::vacuum(), Scalar::from_int(2)));
        assert_eq!(g.nominal_weight(), 1);
    }
}
