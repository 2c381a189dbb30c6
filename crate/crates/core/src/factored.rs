//! Integers kept in factored form.
//!
//! Conductors and resolvent discriminants are products of prime powers with
//! the prime set known in advance, so all arithmetic stays on exponent
//! vectors; exponents may go negative in intermediates but a field
//! discriminant or conductor must come out with nonnegative exponents.

use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FactoredError {
    #[error("cannot parse factored integer from {0:?}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A nonzero rational integer as a map prime -> exponent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, i64>,
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FactoredInteger {
    pub fn one() -> Self {
        FactoredInteger::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn from_factors<I: IntoIterator<Item = (u64, i64)>>(
        factors: I,
    ) -> Result<Self, FactoredError> {
        let mut map = BTreeMap::new();
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(FactoredError::NotPrime(p));
            }
            if e != 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        let mut out = FactoredInteger { factors: map };
        out.canonicalize();
        Ok(out)
    }

    fn canonicalize(&mut self) {
        self.factors.retain(|_, e| *e != 0);
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> i64 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    /// All exponents nonnegative (a genuine integer, not just a rational).
    pub fn is_integral(&self) -> bool {
        self.factors.values().all(|e| *e >= 0)
    }

    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            *out.factors.entry(p).or_insert(0) += e;
        }
        out.canonicalize();
        out
    }

    pub fn pow(&self, k: i64) -> FactoredInteger {
        let mut out = self.clone();
        for e in out.factors.values_mut() {
            *e *= k;
        }
        out.canonicalize();
        out
    }

    /// `self` divides `other` (both must be integral).
    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors.iter().all(|(p, e)| *e <= other.exponent(*p))
    }

    /// Exact value; panics on negative exponents.
    pub fn to_biguint(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (&p, &e) in &self.factors {
            assert!(e >= 0, "negative exponent in to_biguint");
            acc *= BigUint::from(p).pow(e as u32);
        }
        acc
    }

    /// Natural logarithm, valid for any exponent signs.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|(&p, &e)| e as f64 * (p as f64).ln())
            .sum()
    }

    /// `value^(1/n)` as a float, for display.
    pub fn root_value(&self, n: u64) -> f64 {
        (self.ln() / n as f64).exp()
    }

    /// Parse `1`, `p`, or `p^e,p^e,...` (ASCII, no interior spaces).
    pub fn parse(text: &str) -> Result<Self, FactoredError> {
        let bad = || FactoredError::Parse(text.to_string());
        if text == "1" {
            return Ok(FactoredInteger::one());
        }
        let mut factors = Vec::new();
        for part in text.split(',') {
            let (p, e) = match part.split_once('^') {
                Some((p, e)) => (
                    p.parse::<u64>().map_err(|_| bad())?,
                    e.parse::<i64>().map_err(|_| bad())?,
                ),
                None => (part.parse::<u64>().map_err(|_| bad())?, 1),
            };
            factors.push((p, e));
        }
        if factors.is_empty() {
            return Err(bad());
        }
        FactoredInteger::from_factors(factors)
    }
}

/// Compare `a^(1/na)` with `b^(1/nb)` exactly by cross-powering:
/// `a^nb` versus `b^na`.
pub fn cmp_roots(a: &FactoredInteger, na: u64, b: &FactoredInteger, nb: u64) -> std::cmp::Ordering {
    a.to_biguint()
        .pow(nb as u32)
        .cmp(&b.to_biguint().pow(na as u32))
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&p, &e) in &self.factors {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}
