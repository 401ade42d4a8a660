//! Coefficient rings and power series truncated at a fixed degree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lpoly::LPoly;

/// A commutative ring with unity and decidable equality.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn from_int(n: &BigInt) -> Self {
        Self::one().scale(n)
    }

    /// `n·self` by binary expansion, so it works in any ring.
    fn scale(&self, n: &BigInt) -> Self {
        let mut acc = Self::zero();
        let mut base = self.clone();
        let mut k = n.abs();
        while !Zero::is_zero(&k) {
            if k.is_odd() {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            k >>= 1;
        }
        if n.is_negative() {
            acc.neg()
        } else {
            acc
        }
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
    fn scale(&self, n: &BigInt) -> Self {
        self * n
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Ring for LPoly {
    fn zero() -> Self {
        LPoly::zero()
    }
    fn one() -> Self {
        LPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        LPoly::add(self, other)
    }
    fn neg(&self) -> Self {
        LPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        LPoly::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        LPoly::is_zero(self)
    }
    fn from_int(n: &BigInt) -> Self {
        LPoly::constant(n.clone())
    }
    fn scale(&self, n: &BigInt) -> Self {
        LPoly::scale(self, n)
    }
}

/// `a₀ + a₁t + … + a_N t^N`, all arithmetic modulo `t^{N+1}`.
#[derive(Clone, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: fmt::Debug> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<R: Ring> Series<R> {
    /// Pads with zeros or truncates to degree `n`.
    pub fn new(mut coeffs: Vec<R>, n: usize) -> Series<R> {
        coeffs.resize(n + 1, R::zero());
        Series { coeffs }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> R) -> Series<R> {
        Series { coeffs: (0..=n).map(f).collect() }
    }

    pub fn zero(n: usize) -> Series<R> {
        Series::new(Vec::new(), n)
    }

    pub fn one(n: usize) -> Series<R> {
        Series::new(vec![R::one()], n)
    }

    /// `c·t^d`.
    pub fn monomial(c: R, d: usize, n: usize) -> Series<R> {
        let mut s = Series::zero(n);
        if d <= n {
            s.coeffs[d] = c;
        }
        s
    }

    /// Truncation degree `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn truncate(&self, n: usize) -> Series<R> {
        Series::new(self.coeffs.iter().take(n + 1).cloned().collect(), n)
    }

    fn check(&self, other: &Series<R>) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series<R>) -> Result<Series<R>> {
        self.check(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Series<R>) -> Result<Series<R>> {
        self.check(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, other: &Series<R>) -> Result<Series<R>> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    pub fn scale(&self, c: &R) -> Series<R> {
        Series { coeffs: self.coeffs.iter().map(|a| c.mul(a)).collect() }
    }

    /// Multiplicative inverse; the constant term must be 1.
    pub fn inverse(&self) -> Result<Series<R>> {
        if self.coeffs[0] != R::one() {
            return Err(Error::NonUnitConstant);
        }
        let n = self.order();
        let mut inv = vec![R::zero(); n + 1];
        inv[0] = R::one();
        for k in 1..=n {
            let mut s = R::zero();
            for i in 1..=k {
                s = s.add(&self.coeffs[i].mul(&inv[k - i]));
            }
            inv[k] = s.neg();
        }
        Ok(Series { coeffs: inv })
    }

    /// `A(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Series<R> {
        assert!(k >= 1, "substitution exponent must be positive");
        let n = self.order();
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k <= n {
                out[i * k] = a.clone();
            } else {
                break;
            }
        }
        Series { coeffs: out }
    }

    /// `A(−t)`.
    pub fn negate_variable(&self) -> Series<R> {
        Series { coeffs: self.coeffs.iter().enumerate().map(|(i, a)| if i % 2 == 1 { a.neg() } else { a.clone() }).collect() }
    }

    /// Integer power by repeated squaring; negative exponents need a unit
    /// constant term.
    pub fn pow_int(&self, e: i64) -> Result<Series<R>> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Series::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// True when `A ≡ 1 mod t^k`.
    pub fn is_one_mod(&self, k: usize) -> bool {
        self.coeffs.iter().take(k).enumerate().all(|(i, a)| if i == 0 { *a == R::one() } else { a.is_zero() })
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Series<S> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// All `{k_i}` with `Σ i·k_i = k`, as multiplicity vectors `[k_1, …, k_k]`,
/// in lexicographic order.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, remaining: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > k {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=remaining / i {
            cur.push(m);
            rec(i + 1, remaining - m * i, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k, k, &mut Vec::new(), &mut out);
    out
}

/// `m(m−1)⋯(m−n+1)/n!` for any integer `m`.
pub fn binomial(m: &BigInt, n: usize) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        num *= m - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    debug_assert!(Zero::is_zero(&(&num % &den)));
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64], n: usize) -> Series<BigInt> {
        Series::new(v.iter().map(|&x| BigInt::from(x)).collect(), n)
    }

    #[test]
    fn geometric_series_inverts_one_minus_t() {
        let a = z(&[1, -1], 6);
        let g = z(&[1, 1, 1, 1, 1, 1, 1], 6);
        assert_eq!(a.mul(&g).unwrap(), Series::one(6));
        assert_eq!(a.inverse().unwrap(), g);
        assert_eq!(g.inverse().unwrap().inverse().unwrap(), g);
    }

    #[test]
    fn substitution_and_sign_flip() {
        assert_eq!(z(&[1, 1], 4).substitute_power(2), z(&[1, 0, 1], 4));
        assert_eq!(z(&[1, 2, 3], 2).negate_variable(), z(&[1, -2, 3], 2));
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        assert_eq!(z(&[2, 1], 3).inverse().unwrap_err(), Error::NonUnitConstant);
        assert_eq!(z(&[1], 3).mul(&z(&[1], 4)).unwrap_err(), Error::TruncationMismatch(3, 4));
    }

    #[test]
    fn partitions_are_counted_and_ordered() {
        let counts: Vec<usize> = (0..=8).map(|k| partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![vec![0, 0, 1], vec![1, 1, 0], vec![3, 0, 0]]);
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial(&BigInt::from(-2), 2), BigInt::from(3));
        assert_eq!(binomial(&BigInt::from(2), 3), BigInt::from(0));
    }
}
