//! Scalar arithmetic modulo a prime: exponentiation, Euler's totient,
//! primitive roots and inverses.
//!
//! Moduli are desk-scale. Primality is decided by trial division, which is
//! exact and fast for anything up to [`MAX_MODULUS`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest accepted modulus. Keeps trial division under 2^16 steps and every
/// product of two residues inside a `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(value: u64) -> Result<Self> {
        if value > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(value));
        }
        if !is_prime(value) {
            return Err(Error::NotPrime(value));
        }
        Ok(Prime(value))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce_i64(self, value: i64) -> u64 {
        value.rem_euclid(self.0 as i64) as u64
    }

    /// Reduces an arbitrary-precision integer into `[0, p)`.
    pub fn reduce_big(self, value: &BigInt) -> u64 {
        value
            .mod_floor(&BigInt::from(self.0))
            .to_u64()
            .expect("residue fits in u64")
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

/// An element of Z/pZ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Prime,
}

impl Residue {
    /// Builds the residue class of `value`, reducing it first.
    pub fn new(value: u64, modulus: Prime) -> Self {
        Residue {
            value: value % modulus.get(),
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: Prime) -> Self {
        Residue {
            value: modulus.reduce_i64(value),
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        Residue { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        Residue::new(1, modulus)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u128) -> Self {
        mod_pow(self, exp)
    }

    pub fn inverse(self) -> Result<Self> {
        scalar_inverse(self)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus.get();
        Residue {
            value: (self.value + rhs.value) % p,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;

    fn sub(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus.get();
        Residue {
            value: (self.value + p - rhs.value) % p,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Residue {
            value: mul_mod(self.value, rhs.value, self.modulus.get()),
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue::zero(self.modulus) - self
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `base^exp mod p` by right-to-left square-and-multiply.
pub fn mod_pow(base: Residue, mut exp: u128) -> Residue {
    let p = base.modulus.get();
    let mut acc = 1 % p;
    let mut sq = base.value;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, sq, p);
        }
        sq = mul_mod(sq, sq, p);
        exp >>= 1;
    }
    Residue {
        value: acc,
        modulus: base.modulus,
    }
}

/// φ(p) = p − 1 for a prime p.
pub fn euler_phi(p: Prime) -> u64 {
    p.get() - 1
}

/// True iff `alpha` generates the multiplicative group mod p.
///
/// Checks `alpha^((p-1)/q) != 1` for every prime `q | p-1`.
pub fn is_primitive_root(alpha: Residue) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::NotInvertible {
            value: 0,
            modulus: alpha.modulus.get(),
        });
    }
    let order = euler_phi(alpha.modulus);
    Ok(distinct_prime_factors(order)
        .into_iter()
        .all(|q| mod_pow(alpha, (order / q) as u128).value != 1))
}

/// All primitive roots mod p in ascending order.
pub fn primitive_roots(p: Prime) -> Vec<Residue> {
    let order = euler_phi(p);
    let factors = distinct_prime_factors(order);
    (1..p.get())
        .map(|a| Residue::new(a, p))
        .filter(|&a| {
            factors
                .iter()
                .all(|&q| mod_pow(a, (order / q) as u128).value != 1)
        })
        .collect()
}

/// The least primitive root mod p.
pub fn smallest_primitive_root(p: Prime) -> Residue {
    (1..p.get())
        .map(|a| Residue::new(a, p))
        .find(|&a| is_primitive_root(a).unwrap_or(false))
        .expect("every prime has a primitive root")
}

/// Multiplicative inverse via the extended Euclidean algorithm.
pub fn scalar_inverse(a: Residue) -> Result<Residue> {
    let p = a.modulus.get();
    let egcd = (a.value as i64).extended_gcd(&(p as i64));
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible {
            value: a.value,
            modulus: p,
        });
    }
    Ok(Residue::from_i64(egcd.x, a.modulus))
}
