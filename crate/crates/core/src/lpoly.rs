//! Finite sums `Σ c_q 𝕃^q` with rational exponents and integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rationals used for exponents, ages and weights.
pub type Q = Rational64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LPoly {
    terms: BTreeMap<Q, BigInt>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly::default()
    }

    pub fn one() -> LPoly {
        LPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> LPoly {
        LPoly::term(c, Q::zero())
    }

    /// `𝕃^q`.
    pub fn l_pow(q: Q) -> LPoly {
        LPoly::term(1, q)
    }

    pub fn term(c: impl Into<BigInt>, q: Q) -> LPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q, c);
        }
        LPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Q, BigInt)>) -> LPoly {
        let mut out = LPoly::zero();
        for (q, c) in terms {
            out.add_term(q, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, q: Q, c: BigInt) {
        let entry = self.terms.entry(q).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&q);
        }
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Q, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, q: Q) -> BigInt {
        self.terms.get(&q).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The integer this polynomial equals, if it has only a constant term.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Q::zero()).cloned(),
            _ => None,
        }
    }

    /// Specialization `𝕃 ↦ 1`, i.e. the Euler characteristic.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (q, c) in &other.terms {
            out.add_term(*q, c.clone());
        }
        out
    }

    pub fn neg(&self) -> LPoly {
        LPoly { terms: self.terms.iter().map(|(q, c)| (*q, -c)).collect() }
    }

    pub fn sub(&self, other: &LPoly) -> LPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (q1, c1) in &self.terms {
            for (q2, c2) in &other.terms {
                out.add_term(q1 + q2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly { terms: self.terms.iter().map(|(q, x)| (*q, x * c)).collect() }
    }

    /// Multiplies every exponent by `r`.
    pub fn scale_exponents(&self, r: Q) -> LPoly {
        LPoly::from_terms(self.terms.iter().map(|(q, c)| (q * r, c.clone())))
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn fmt_power(q: &Q) -> String {
    if q.is_one() {
        "L".to_string()
    } else if q.is_integer() && q.is_positive() {
        format!("L^{}", q.numer())
    } else {
        format!("L^({q})")
    }
}

/// Increasing exponents, e.g. `1 + L^(1/2)` or `2 - 3*L^2`.
impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (q, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if q.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&fmt_power(q))?;
            } else {
                write!(f, "{mag}*{}", fmt_power(q))?;
            }
        }
        Ok(())
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            let p: i64 = p.trim().parse().ok()?;
            (q != 0).then(|| Q::new(p, q))
        }
        None => s.parse().ok().map(Q::from_integer),
    }
}

pub fn format_q(q: &Q) -> String {
    q.to_string()
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: Q) -> Q {
    q - q.floor()
}

pub(crate) fn q_to_f64(q: &Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Q {
        Q::new(p, d)
    }

    #[test]
    fn display_forms() {
        let half = LPoly::l_pow(q(1, 2));
        assert_eq!(LPoly::one().add(&half).to_string(), "1 + L^(1/2)");
        assert_eq!(LPoly::zero().to_string(), "0");
        assert_eq!(LPoly::term(2, q(0, 1)).sub(&LPoly::term(3, q(2, 1))).to_string(), "2 - 3*L^2");
        assert_eq!(LPoly::l_pow(q(1, 1)).neg().to_string(), "-L");
        assert_eq!(LPoly::l_pow(q(-1, 1)).to_string(), "L^(-1)");
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let a = LPoly::l_pow(q(1, 1));
        let b = LPoly::l_pow(q(2, 1));
        assert_eq!(a.mul(&b), LPoly::l_pow(q(3, 1)));
        let s = LPoly::one().add(&LPoly::l_pow(q(1, 2)));
        let sq = s.mul(&s);
        assert_eq!(sq.to_string(), "1 + 2*L^(1/2) + L");
        assert_eq!(sq.at_one(), BigInt::from(4));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = LPoly::l_pow(q(1, 3));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a), LPoly::zero());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_q("1/2"), Some(q(1, 2)));
        assert_eq!(parse_q(" -3 "), Some(q(-3, 1)));
        assert_eq!(parse_q("2/4"), Some(q(1, 2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(frac(q(-1, 3)), q(2, 3));
    }
}
