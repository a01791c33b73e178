//! Coefficient rings: GF(p) for a prime p, or the integers.
//!
//! Scalars are stored as `i64` throughout. Over GF(p) every stored scalar is
//! normalized to `0..p`; over Z arithmetic is checked and overflow is a hard
//! error rather than a silent wrap — exactness is the contract.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientRing {
    PrimeField { p: u32 },
    Integers,
}

impl CoefficientRing {
    /// GF(p), rejecting composite or unit moduli.
    pub fn prime_field(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(CoefficientRing::PrimeField { p })
    }

    pub fn integers() -> Self {
        CoefficientRing::Integers
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoefficientRing::PrimeField { .. })
    }

    /// 0 for a field, 1 for Z. This is the correction term `d` in the
    /// connectivity bookkeeping for duals and tensor products.
    pub fn global_dimension(&self) -> i64 {
        match self {
            CoefficientRing::PrimeField { .. } => 0,
            CoefficientRing::Integers => 1,
        }
    }

    /// Canonical representative: `0..p` over GF(p), identity over Z.
    pub fn normalize(&self, x: i64) -> i64 {
        match self {
            CoefficientRing::PrimeField { p } => x.rem_euclid(*p as i64),
            CoefficientRing::Integers => x,
        }
    }

    pub fn add(&self, a: i64, b: i64) -> Result<i64> {
        match self {
            CoefficientRing::PrimeField { p } => Ok((a + b).rem_euclid(*p as i64)),
            CoefficientRing::Integers => a.checked_add(b).ok_or(Error::Overflow {
                context: format!("{a} + {b}"),
            }),
        }
    }

    pub fn neg(&self, a: i64) -> i64 {
        match self {
            CoefficientRing::PrimeField { p } => (-a).rem_euclid(*p as i64),
            CoefficientRing::Integers => -a,
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> Result<i64> {
        match self {
            CoefficientRing::PrimeField { p } => {
                Ok(((a as i128 * b as i128).rem_euclid(*p as i128)) as i64)
            }
            CoefficientRing::Integers => a.checked_mul(b).ok_or(Error::Overflow {
                context: format!("{a} * {b}"),
            }),
        }
    }

    pub fn is_zero(&self, a: i64) -> bool {
        self.normalize(a) == 0
    }

    /// Units: every nonzero element of GF(p); only ±1 in Z.
    pub fn is_unit(&self, a: i64) -> bool {
        match self {
            CoefficientRing::PrimeField { .. } => !self.is_zero(a),
            CoefficientRing::Integers => a == 1 || a == -1,
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self, a: i64) -> Result<i64> {
        match self {
            CoefficientRing::PrimeField { p } => {
                let a = self.normalize(a);
                if a == 0 {
                    return Err(Error::BadParameter(format!("0 is not invertible mod {p}")));
                }
                // Fermat: a^(p-2) mod p.
                let mut result: i64 = 1;
                let mut base = a;
                let mut exp = *p as u64 - 2;
                while exp > 0 {
                    if exp & 1 == 1 {
                        result = self.mul(result, base)?;
                    }
                    base = self.mul(base, base)?;
                    exp >>= 1;
                }
                Ok(result)
            }
            CoefficientRing::Integers => match a {
                1 => Ok(1),
                -1 => Ok(-1),
                _ => Err(Error::BadParameter(format!("{a} is not a unit in Z"))),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CoefficientRing::PrimeField { p } => format!("GF({p})"),
            CoefficientRing::Integers => "Z".to_string(),
        }
    }
}

impl std::fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        for p in [2u32, 3, 5, 7, 11, 97] {
            assert!(CoefficientRing::prime_field(p).is_ok(), "{p} should be prime");
        }
        for n in [0u32, 1, 4, 6, 9, 91] {
            assert!(CoefficientRing::prime_field(n).is_err(), "{n} should be rejected");
        }
    }

    #[test]
    fn gfp_normalization_and_inverse() {
        let f5 = CoefficientRing::prime_field(5).unwrap();
        assert_eq!(f5.normalize(-1), 4);
        assert_eq!(f5.normalize(12), 2);
        for a in 1..5 {
            let inv = f5.inverse(a).unwrap();
            assert_eq!(f5.mul(a, inv).unwrap(), 1);
        }
    }

    #[test]
    fn integer_overflow_is_an_error() {
        let z = CoefficientRing::integers();
        assert!(z.mul(i64::MAX, 2).is_err());
        assert!(z.add(i64::MAX, 1).is_err());
        assert_eq!(z.mul(1 << 30, 1 << 30).unwrap(), 1 << 60);
    }

    #[test]
    fn global_dimension() {
        assert_eq!(CoefficientRing::prime_field(3).unwrap().global_dimension(), 0);
        assert_eq!(CoefficientRing::integers().global_dimension(), 1);
    }
}
