//! Laurent polynomials in one variable, generalized binomial coefficients,
//! the truncated expansions of `(x+1)^(-k+n-l-1)` and residue extraction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::scalar::Scalar;

/// `a (a-1) ... (a-m+1) / m!`, with `gen_binomial(a, 0) = 1`.
pub fn gen_binomial(a: i64, m: u64) -> Scalar {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= BigInt::from(a) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    Scalar::from(num) / Scalar::from(den)
}

/// Binomial coefficient with a rational top argument.
pub fn rational_binomial(a: &Scalar, m: u64) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..m {
        acc = acc * (a - &Scalar::from_int(i as i64)) / Scalar::from_int(i as i64 + 1);
    }
    acc
}

/// `(-1)^e` for any integer `e`.
pub fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// A finite Laurent polynomial `sum c_e x^e` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, coeff: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `x^exp` with coefficient one.
    pub fn x_pow(exp: i64) -> Self {
        Self::monomial(exp, Scalar::one())
    }

    /// The polynomial `(1+x)^n` for `n >= 0`.
    pub fn one_plus_x_pow(n: u32) -> Self {
        let mut p = Self::zero();
        for i in 0..=n {
            p.add_term(i as i64, gen_binomial(n as i64, i as u64));
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.terms.get(&exp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    /// Formal derivative in `x`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e - 1, v * &Scalar::from_int(*e));
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c:?}*x^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.checked_add(*e2).expect("Laurent exponent overflow");
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// The part of the expansion of `(x+1)^(-k+n-l-1)` in nonpositive-order
/// powers of `x^{-1}` kept by the truncation of order `k+l+1`:
/// `sum_{m=0}^{n} binom(-k+n-l-1, m) x^(-k+n-l-m-1)`.
pub fn truncation_poly(k: u32, n: u32, l: u32) -> LaurentPoly {
    let a = -(k as i64) + n as i64 - l as i64 - 1;
    let mut p = LaurentPoly::zero();
    for m in 0..=n as u64 {
        p.add_term(a - m as i64, gen_binomial(a, m));
    }
    p
}

/// Terms of the same expansion with `n < m <= n + extra` (the start of the
/// remainder series).
pub fn truncation_remainder(k: u32, n: u32, l: u32, extra: u32) -> LaurentPoly {
    let a = -(k as i64) + n as i64 - l as i64 - 1;
    let mut p = LaurentPoly::zero();
    for m in (n as u64 + 1)..=(n as u64 + extra as u64) {
        p.add_term(a - m as i64, gen_binomial(a, m));
    }
    p
}

/// Coefficient of `x^{-1}`.
pub fn residue_coeff(p: &LaurentPoly) -> Scalar {
    p.coeff(-1)
}

/// Checks `sum_{m=0}^{p} binom(a,m) binom(a-m,p-m) (-1)^(p-m) = binom(a,p) delta_{p,0}`
/// with `a = -k+n-l-1`, exactly.
pub fn binom_sum_identity_check(k: u32, n: u32, l: u32, p: u32) -> bool {
    let a = -(k as i64) + n as i64 - l as i64 - 1;
    let p = p as u64;
    let lhs: Scalar = (0..=p)
        .map(|m| {
            gen_binomial(a, m) * gen_binomial(a - m as i64, p - m) * sign((p - m) as i64)
        })
        .sum();
    let rhs = if p == 0 {
        gen_binomial(a, 0)
    } else {
        Scalar::zero()
    };
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(5, 0), Scalar::one());
        assert_eq!(gen_binomial(-1, 2), Scalar::one());
        assert_eq!(gen_binomial(-3, 2), Scalar::from_int(6));
        assert_eq!(gen_binomial(-1, 3), Scalar::from_int(-1));
        assert_eq!(gen_binomial(3, 5), Scalar::zero());
        assert_eq!(rational_binomial(&Scalar::from_int(-3), 2), Scalar::from_int(6));
        assert_eq!(rational_binomial(&Scalar::new(1, 2), 2), Scalar::new(-1, 8));
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncation_poly(0, 0, 0), LaurentPoly::x_pow(-1));
        let expect = &LaurentPoly::x_pow(-1) - &LaurentPoly::x_pow(-2);
        assert_eq!(truncation_poly(0, 1, 1), expect);
        assert_eq!(truncation_poly(0, 0, 1), LaurentPoly::x_pow(-2));
    }

    #[test]
    fn truncation_exponents_are_bounded_below() {
        for k in 0..5 {
            for n in 0..5 {
                for l in 0..5 {
                    let p = truncation_poly(k, n, l);
                    assert!(p.min_exp().unwrap() >= -((k + l + 1) as i64));
                }
            }
        }
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue_coeff(&LaurentPoly::x_pow(-1)), Scalar::one());
        let p = &LaurentPoly::monomial(-2, Scalar::from_int(3))
            + &LaurentPoly::monomial(0, Scalar::from_int(5));
        assert_eq!(residue_coeff(&p), Scalar::zero());
        let p = &LaurentPoly::monomial(-1, Scalar::from_int(2)) - &LaurentPoly::x_pow(-2);
        assert_eq!(residue_coeff(&p), Scalar::from_int(2));
    }

    #[test]
    fn binom_sum_examples() {
        assert!(binom_sum_identity_check(0, 1, 1, 1));
        assert!(binom_sum_identity_check(2, 3, 5, 2));
        assert!(binom_sum_identity_check(4, 2, 3, 0));
    }

    #[test]
    fn derivative_of_power() {
        let p = LaurentPoly::one_plus_x_pow(3);
        let d = p.derivative();
        assert_eq!(d, LaurentPoly::one_plus_x_pow(2).scale(&Scalar::from_int(3)));
    }
}
