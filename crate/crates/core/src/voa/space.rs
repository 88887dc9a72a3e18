//! PBW-type representation spaces of the built-in algebras and the action
//! of vertex-operator modes on them.
//!
//! Every space is spanned by monomials `x(-λ_1)...x(-λ_r) w_0` over a
//! lowest-weight vector `w_0`; `x` is `α` (Heisenberg) or `L` (Virasoro).
//! Modes `u_(j)` for `u` in the vertex algebra are computed by recursion on
//! the leading factor of `u` through the iterate formula
//!
//! `(a_(m) b)_(k) = sum_i (-1)^i C(m,i) (a_(m-i) b_(k+i) - (-1)^m b_(m+k-i) a_(i))`
//!
//! which truncates on any fixed vector by grading.

use std::collections::HashMap;
use std::hash::Hash;

use parking_lot::RwLock;

use crate::formal::{gen_binomial, sign};
use crate::scalar::Scalar;
use crate::state::{partitions, Monomial, State};

/// Which vertex algebra acts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Rank-one Heisenberg algebra, strong generator `a = α(-1)1`.
    Heisenberg,
    /// Universal Virasoro vertex algebra of central charge `c`, strong
    /// generator `ω = L(-2)1`.
    Virasoro { c: Scalar },
}

impl Family {
    /// Weight of the strong generator.
    pub fn generator_weight(&self) -> u32 {
        match self {
            Family::Heisenberg => 1,
            Family::Virasoro { .. } => 2,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Family::Heisenberg => "heisenberg".to_string(),
            Family::Virasoro { c } => {
                format!("virasoro_c{}_{}", c.numer(), c.denom()).replace('-', "m")
            }
        }
    }
}

/// Lowest-weight data of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Lowest {
    /// The vertex algebra itself (`α(0) = 0`, resp. `L(-1)1 = 0`).
    Vacuum,
    /// Heisenberg Fock module with `α(0) = μ`.
    Fock { mu: Scalar },
    /// Virasoro Verma module with lowest weight `h`.
    Verma { h: Scalar },
}

/// Corrupts a single entry `u_(j) w` of the mode table by a factor. Used to
/// check that verification suites detect inconsistent tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeFault {
    pub u: Monomial,
    pub j: i64,
    pub w: Monomial,
    pub factor: Scalar,
}

struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    fn get(&self, k: &K) -> Option<V> {
        self.map.read().get(k).cloned()
    }

    fn put(&self, k: K, v: V) {
        self.map.write().entry(k).or_insert(v);
    }

    fn len(&self) -> usize {
        self.map.read().len()
    }
}

/// A space with a PBW basis on which the strong generator's modes and all
/// vertex-operator modes act exactly.
pub struct Space {
    family: Family,
    lowest: Lowest,
    fault: Option<ModeFault>,
    field_memo: Memo<(i64, Monomial), State>,
    mode_memo: Memo<(Monomial, i64, Monomial), State>,
}

impl std::fmt::Debug for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Space")
            .field("family", &self.family)
            .field("lowest", &self.lowest)
            .finish()
    }
}

impl Space {
    pub fn new(family: Family, lowest: Lowest) -> Self {
        match (&family, &lowest) {
            (Family::Heisenberg, Lowest::Verma { .. }) => {
                panic!("Verma modules belong to the Virasoro family")
            }
            (Family::Virasoro { .. }, Lowest::Fock { .. }) => {
                panic!("Fock modules belong to the Heisenberg family")
            }
            _ => {}
        }
        Space {
            family,
            lowest,
            fault: None,
            field_memo: Memo::new(),
            mode_memo: Memo::new(),
        }
    }

    pub fn with_fault(mut self, fault: ModeFault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn lowest(&self) -> &Lowest {
        &self.lowest
    }

    pub fn is_vacuum(&self) -> bool {
        self.lowest == Lowest::Vacuum
    }

    /// Smallest allowed part in basis partitions.
    pub fn min_part(&self) -> u32 {
        match (&self.family, &self.lowest) {
            (Family::Virasoro { .. }, Lowest::Vacuum) => 2,
            _ => 1,
        }
    }

    /// Basis of the depth-`d` subspace.
    pub fn basis(&self, depth: u32) -> Vec<Monomial> {
        partitions(depth, self.min_part())
    }

    /// `L(0)` eigenvalue of the lowest-weight vector.
    pub fn lowest_weight(&self) -> Scalar {
        match &self.lowest {
            Lowest::Vacuum => Scalar::zero(),
            Lowest::Fock { mu } => mu * mu / Scalar::from_int(2),
            Lowest::Verma { h } => h.clone(),
        }
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.field_memo.len(), self.mode_memo.len())
    }

    /// `a_(m) w` for the strong generator `a` (`α(m)`, resp. `L(m-1)`).
    pub fn field_mode(&self, m: i64, w: &Monomial) -> State {
        match self.family {
            Family::Heisenberg => self.heisenberg_mode(m, w),
            Family::Virasoro { .. } => self.virasoro_mode(m - 1, w),
        }
    }

    fn heisenberg_mode(&self, m: i64, w: &Monomial) -> State {
        if m < 0 {
            State::basis(w.with_part((-m) as u32))
        } else if m == 0 {
            match &self.lowest {
                Lowest::Fock { mu } => State::term(w.clone(), mu.clone()),
                _ => State::zero(),
            }
        } else {
            let mult = w.multiplicity(m as u32);
            match w.without_part(m as u32) {
                Some(rest) => State::term(rest, Scalar::from_int(m * mult as i64)),
                None => State::zero(),
            }
        }
    }

    /// `L(n) w` by commuting `L(n)` to its PBW position.
    pub fn virasoro_mode(&self, n: i64, w: &Monomial) -> State {
        let c = match &self.family {
            Family::Virasoro { c } => c.clone(),
            Family::Heisenberg => panic!("virasoro_mode on a Heisenberg space"),
        };
        let key = (n, w.clone());
        if let Some(s) = self.field_memo.get(&key) {
            return s;
        }
        let result = match w.split_first() {
            None => {
                if n > 0 {
                    State::zero()
                } else if n == 0 {
                    State::term(w.clone(), self.lowest_weight())
                } else if n == -1 && self.is_vacuum() {
                    State::zero()
                } else {
                    State::basis(Monomial::from_sorted(vec![(-n) as u32]))
                }
            }
            Some((first, rest)) => {
                if n < 0 && (-n) as u32 >= first {
                    State::basis(w.with_part((-n) as u32))
                } else {
                    // L(n) L(-λ) r = L(-λ) L(n) r + (n+λ) L(n-λ) r + δ_{n,λ} c/12 (n^3-n) r
                    let lambda = first as i64;
                    let mut out = State::zero();
                    let inner = self.virasoro_mode(n, &rest);
                    for (mono, coeff) in inner.iter() {
                        out.add_scaled(&self.virasoro_mode(-lambda, mono), coeff);
                    }
                    let shifted = self.virasoro_mode(n - lambda, &rest);
                    out.add_scaled(&shifted, &Scalar::from_int(n + lambda));
                    if n == lambda {
                        let central = &c * &Scalar::new(n * n * n - n, 12);
                        out.add_term(rest, central);
                    }
                    out
                }
            }
        };
        self.field_memo.put(key, result.clone());
        result
    }

    /// Splits a vertex-algebra basis monomial `u = a_(m) b`.
    fn split_leading(&self, u: &Monomial) -> Option<(i64, Monomial)> {
        let (first, rest) = u.split_first()?;
        let m = match self.family {
            Family::Heisenberg => -(first as i64),
            Family::Virasoro { .. } => 1 - first as i64,
        };
        Some((m, rest))
    }

    /// `u_(k) w` for a vertex-algebra basis monomial `u` and a basis vector
    /// `w` of this space.
    pub fn mode(&self, u: &Monomial, k: i64, w: &Monomial) -> State {
        let depth = w.weight() as i64;
        let wt_u = u.weight() as i64;
        if depth + wt_u - k - 1 < 0 {
            return State::zero();
        }
        let Some((m, b)) = self.split_leading(u) else {
            return if k == -1 {
                State::basis(w.clone())
            } else {
                State::zero()
            };
        };
        let key = (u.clone(), k, w.clone());
        if let Some(s) = self.mode_memo.get(&key) {
            return s;
        }
        let wt_b = b.weight() as i64;
        let wt_a = self.family.generator_weight() as i64;
        let mut out = State::zero();

        // sum_i (-1)^i C(m,i) a_(m-i) b_(k+i) w ; b_(j) w = 0 for j >= wt_b + depth
        let mut i = 0i64;
        while k + i < wt_b + depth {
            let coeff = sign(i) * gen_binomial(m, i as u64);
            if !coeff.is_zero() {
                let inner = self.mode(&b, k + i, w);
                for (mono, c) in inner.iter() {
                    out.add_scaled(&self.field_mode(m - i, mono), &(&coeff * c));
                }
            }
            i += 1;
        }

        // - (-1)^m sum_i (-1)^i C(m,i) b_(m+k-i) a_(i) w ; a_(i) w = 0 for i >= depth + wt_a
        let sm = sign(m);
        for i in 0..(depth + wt_a) {
            let aw = self.field_mode(i, w);
            if aw.is_zero() {
                continue;
            }
            let coeff = -(&sm * &(sign(i) * gen_binomial(m, i as u64)));
            if coeff.is_zero() {
                continue;
            }
            for (mono, c) in aw.iter() {
                out.add_scaled(&self.mode(&b, m + k - i, mono), &(&coeff * c));
            }
        }

        if let Some(f) = &self.fault {
            if &f.u == u && f.j == k && &f.w == w {
                out = out.scale(&f.factor);
            }
        }
        self.mode_memo.put(key, out.clone());
        out
    }

    /// Bilinear extension of [`Space::mode`].
    pub fn mode_state(&self, u: &State, k: i64, w: &State) -> State {
        let mut out = State::zero();
        for (um, uc) in u.iter() {
            for (wm, wc) in w.iter() {
                out.add_scaled(&self.mode(um, k, wm), &(uc * wc));
            }
        }
        out
    }

    /// The conformal vector of the acting vertex algebra.
    pub fn conformal_vector(&self) -> State {
        match self.family {
            Family::Heisenberg => State::term(Monomial::from_sorted(vec![1, 1]), Scalar::new(1, 2)),
            Family::Virasoro { .. } => State::basis(Monomial::from_sorted(vec![2])),
        }
    }

    /// `L(n) w` on this space, `L(n) = ω_(n+1)`.
    pub fn virasoro_on(&self, n: i64, w: &State) -> State {
        match self.family {
            Family::Virasoro { .. } => {
                let mut out = State::zero();
                for (m, c) in w.iter() {
                    out.add_scaled(&self.virasoro_mode(n, m), c);
                }
                out
            }
            Family::Heisenberg => self.mode_state(&self.conformal_vector(), n + 1, w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(p: &[u32]) -> Monomial {
        Monomial::new(p.to_vec()).unwrap()
    }

    #[test]
    fn heisenberg_generator_modes() {
        let v = Space::new(Family::Heisenberg, Lowest::Vacuum);
        let a = mono(&[1]);
        assert_eq!(v.field_mode(1, &a), State::vacuum());
        assert_eq!(v.field_mode(0, &a), State::zero());
        assert_eq!(v.field_mode(-2, &a), State::basis(mono(&[2, 1])));
        let f = Space::new(Family::Heisenberg, Lowest::Fock { mu: Scalar::from_int(3) });
        assert_eq!(f.field_mode(0, &a), State::term(a.clone(), Scalar::from_int(3)));
        assert_eq!(
            f.field_mode(1, &mono(&[1, 1])),
            State::term(a, Scalar::from_int(2))
        );
    }

    #[test]
    fn virasoro_bracket_on_vacuum() {
        let c = Scalar::new(1, 2);
        let v = Space::new(Family::Virasoro { c: c.clone() }, Lowest::Vacuum);
        // L(2) L(-2) 1 = c/2
        assert_eq!(
            v.virasoro_mode(2, &mono(&[2])),
            State::term(Monomial::vacuum(), Scalar::new(1, 4))
        );
        // L(-1) L(-2) 1 = L(-3) 1
        assert_eq!(v.virasoro_mode(-1, &mono(&[2])), State::basis(mono(&[3])));
        assert_eq!(v.virasoro_mode(-1, &Monomial::vacuum()), State::zero());
        // L(0) acts by weight
        assert_eq!(
            v.virasoro_mode(0, &mono(&[3, 2])),
            State::term(mono(&[3, 2]), Scalar::from_int(5))
        );
    }

    #[test]
    fn verma_lowest_vector() {
        let w = Space::new(
            Family::Virasoro { c: Scalar::new(1, 2) },
            Lowest::Verma { h: Scalar::new(1, 16) },
        );
        assert_eq!(w.virasoro_mode(-1, &Monomial::vacuum()), State::basis(mono(&[1])));
        // L(1) L(-1) v = 2h v
        assert_eq!(
            w.virasoro_mode(1, &mono(&[1])),
            State::term(Monomial::vacuum(), Scalar::new(1, 8))
        );
    }

    #[test]
    fn generator_modes_agree_with_field_modes() {
        let v = Space::new(Family::Heisenberg, Lowest::Vacuum);
        let a = mono(&[1]);
        for w in v.basis(3) {
            for k in -3..4 {
                assert_eq!(v.mode(&a, k, &w), v.field_mode(k, &w));
            }
        }
        let vir = Space::new(Family::Virasoro { c: Scalar::from_int(1) }, Lowest::Vacuum);
        let om = mono(&[2]);
        for w in vir.basis(4) {
            for k in -3..5 {
                assert_eq!(vir.mode(&om, k, &w), vir.virasoro_mode(k - 1, &w));
            }
        }
    }

    #[test]
    fn sugawara_weight_on_fock() {
        let mu = Scalar::from_int(1);
        let f = Space::new(Family::Heisenberg, Lowest::Fock { mu });
        let w = State::basis(mono(&[2, 1]));
        let expect = w.scale(&(Scalar::new(1, 2) + Scalar::from_int(3)));
        assert_eq!(f.virasoro_on(0, &w), expect);
    }
}
