//! Partition-indexed basis monomials and finite linear combinations of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A PBW monomial `x(-λ_1) ... x(-λ_r)` applied to a lowest-weight vector,
/// stored as the partition `λ_1 >= ... >= λ_r >= 1`.
///
/// Ordered graded-lexicographically: first by weight, then by parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    /// Builds a monomial from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid(format!("partition with zero part: {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Monomial(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Monomial(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part and the remaining monomial.
    pub fn split_first(&self) -> Option<(u32, Monomial)> {
        let (first, rest) = self.0.split_first()?;
        Some((*first, Monomial(rest.to_vec())))
    }

    /// Inserts a part, keeping the parts sorted.
    pub fn with_part(&self, part: u32) -> Monomial {
        let mut v = self.0.clone();
        let pos = v.iter().position(|&p| p < part).unwrap_or(v.len());
        v.insert(pos, part);
        Monomial(v)
    }

    /// Removes one copy of `part`, if present.
    pub fn without_part(&self, part: u32) -> Option<Monomial> {
        let pos = self.0.iter().position(|&p| p == part)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Monomial(v))
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(serde::de::Error::custom("partition parts must be nonincreasing"));
        }
        Monomial::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `weight` whose parts are at least `min_part`, in
/// ascending graded-lex order.
pub fn partitions(weight: u32, min_part: u32) -> Vec<Monomial> {
    fn go(remaining: u32, max: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial(prefix.clone()));
            return;
        }
        let top = remaining.min(max);
        for p in (min..=top).rev() {
            prefix.push(p);
            go(remaining - p, p, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, weight, min_part.max(1), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A finite linear combination of basis monomials.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct State {
    terms: BTreeMap<Monomial, Scalar>,
}

impl State {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn vacuum() -> Self {
        Self::basis(Monomial::vacuum())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    /// Builds a state from `(parts, coefficient)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut s = Self::zero();
        for (parts, c) in pairs {
            s.add_term(Monomial::new(parts)?, c);
        }
        Ok(s)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &State, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add_state(&mut self, other: &State) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> State {
        let mut out = State::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &State) -> State {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).min()
    }

    /// Single weight if the state is homogeneous (and nonzero).
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let w = self.max_weight()?;
        (self.min_weight() == Some(w)).then_some(w)
    }

    /// Homogeneous components keyed by weight.
    pub fn components(&self) -> BTreeMap<u32, State> {
        let mut out: BTreeMap<u32, State> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c:?}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromIterator<(Monomial, Scalar)> for State {
    fn from_iter<T: IntoIterator<Item = (Monomial, Scalar)>>(iter: T) -> Self {
        let mut s = State::zero();
        for (m, c) in iter {
            s.add_term(m, c);
        }
        s
    }
}

/// Serialized as a list of `[partition, "p/q"]` pairs in basis order.
impl Serialize for State {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for State {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(Monomial, Scalar)>::deserialize(deserializer)?;
        Ok(pairs.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|w| partitions(w, 1).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let vir: Vec<usize> = (0..=8).map(|w| partitions(w, 2).len()).collect();
        assert_eq!(vir, vec![1, 0, 1, 1, 2, 2, 4, 4, 7]);
    }

    #[test]
    fn partitions_are_sorted_and_valid() {
        let ps = partitions(6, 1);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert!(ps.iter().all(|p| p.weight() == 6));
    }

    #[test]
    fn monomial_part_edits() {
        let m = Monomial::new(vec![1, 3, 2]).unwrap();
        assert_eq!(m.parts(), &[3, 2, 1]);
        assert_eq!(m.with_part(2).parts(), &[3, 2, 2, 1]);
        assert_eq!(m.without_part(3).unwrap().parts(), &[2, 1]);
        assert!(m.without_part(4).is_none());
    }

    #[test]
    fn state_cancellation_drops_terms() {
        let m = Monomial::new(vec![2]).unwrap();
        let mut s = State::basis(m.clone());
        s.add_term(m, Scalar::from_int(-1));
        assert!(s.is_zero());
    }

    #[test]
    fn state_json_format() {
        let s = State::from_pairs(vec![
            (vec![1, 1], Scalar::new(1, 2)),
            (vec![], Scalar::from_int(-3)),
        ])
        .unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"[[[],"-3/1"],[[1,1],"1/2"]]"#);
        let back: State = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<State>(r#"[[[1,2],"1/1"]]"#).is_err());
    }
}
