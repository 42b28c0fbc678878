use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Prime used for modular screening of divisibility (2^61 - 1).
pub const SCREEN_PRIME: u64 = (1u64 << 61) - 1;

/// Coefficient field for [`Polynomial`](super::Polynomial).
///
/// Exact fields ([`BigRational`]) give exact identities; `f64` is supported
/// for quick numerical experiments but every identity in this crate is
/// stated over the exact field.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    /// Image of `self` in `Z / SCREEN_PRIME`, when it has one.
    fn residue(&self) -> Option<u64>;

    /// Canonical decimal-free string form (`"p"` or `"p/q"`).
    fn to_canonical_string(&self) -> String;

    fn parse_canonical(s: &str) -> Option<Self>;

    /// Integer value if `self` is an integer that fits in `i64`.
    fn as_i64(&self) -> Option<i64>;
}

pub(crate) fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % SCREEN_PRIME as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= SCREEN_PRIME {
        s - SCREEN_PRIME
    } else {
        s
    }
}

pub(crate) fn powmod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(powmod(a, SCREEN_PRIME - 2))
    }
}

pub(crate) fn negmod(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        SCREEN_PRIME - a
    }
}

fn bigint_residue(v: &BigInt) -> u64 {
    let p = BigInt::from(SCREEN_PRIME);
    v.mod_floor(&p).to_u64().expect("reduced residue fits in u64")
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn residue(&self) -> Option<u64> {
        let n = bigint_residue(self.numer());
        let d = bigint_residue(self.denom());
        invmod(d).map(|inv| mulmod(n, inv))
    }

    fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    fn parse_canonical(s: &str) -> Option<Self> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    }

    fn as_i64(&self) -> Option<i64> {
        if self.denom().is_one() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn residue(&self) -> Option<u64> {
        if self.fract() == 0.0 && self.abs() < 9.0e15 {
            let v = *self as i64;
            Some(if v >= 0 {
                v as u64 % SCREEN_PRIME
            } else {
                negmod((-v) as u64 % SCREEN_PRIME)
            })
        } else {
            None
        }
    }

    fn to_canonical_string(&self) -> String {
        // Only integral values have a decimal-free form.
        if self.fract() == 0.0 {
            format!("{}", *self as i64)
        } else {
            format!("{self:?}")
        }
    }

    fn parse_canonical(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => Some(p.trim().parse::<f64>().ok()? / q.trim().parse::<f64>().ok()?),
            None => s.parse().ok(),
        }
    }

    fn as_i64(&self) -> Option<i64> {
        (self.fract() == 0.0).then_some(*self as i64)
    }
}

/// Shorthand for an integer-valued scalar.
pub fn int<C: Scalar>(v: i64) -> C {
    C::from_i64(v).expect("integer embeds into every scalar field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_field_homomorphic() {
        let a = BigRational::new(BigInt::from(3), BigInt::from(7));
        let b = BigRational::new(BigInt::from(-5), BigInt::from(2));
        let ra = a.residue().unwrap();
        let rb = b.residue().unwrap();
        assert_eq!((&a * &b).residue().unwrap(), mulmod(ra, rb));
        assert_eq!((&a + &b).residue().unwrap(), addmod(ra, rb));
    }

    #[test]
    fn canonical_strings_round_trip() {
        for s in ["0", "1", "-3", "22/7", "-1/2"] {
            let v = BigRational::parse_canonical(s).unwrap();
            assert_eq!(v.to_canonical_string(), s);
        }
        assert_eq!(f64::parse_canonical("3/4"), Some(0.75));
        assert_eq!((-2.0f64).residue(), Some(SCREEN_PRIME - 2));
    }
}
