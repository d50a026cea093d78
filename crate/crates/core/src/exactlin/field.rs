//! Prime-field arithmetic.
//!
//! Elements are stored as plain `u64` residues in `[0, p)`; the modulus is
//! carried by a [`PrimeField`] context. The modulus is restricted to
//! `p < 2^32` so that every product of two residues fits in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::LinAlgError;

/// Arithmetic over a field whose elements are encoded as `u64`.
///
/// Elimination routines are written against this trait so that the same code
/// runs over `F_p` and over small extension fields.
pub trait Field: Sync {
    fn add(&self, a: u64, b: u64) -> u64;
    fn sub(&self, a: u64, b: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    /// Multiplicative inverse; callers guarantee `a != 0`.
    fn inv(&self, a: u64) -> u64;
    fn characteristic(&self) -> u64;

    fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `2^31 - 1`.
    pub const DEFAULT_PRIME: u64 = 2_147_483_647;

    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p >= 1 << 32 {
            return Err(LinAlgError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn default_field() -> Self {
        Self {
            p: Self::DEFAULT_PRIME,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            modulus: self.p,
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// `C(n, k) mod p` by Lucas' theorem; exact for every `n`, `k`.
    pub fn binomial(&self, mut n: u64, mut k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let p = self.p;
        let mut acc = 1 % p;
        while k > 0 || n > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return 0;
            }
            acc = acc * self.small_binomial(ni, ki) % p;
            n /= p;
            k /= p;
        }
        acc
    }

    // n < p, so k! is invertible.
    fn small_binomial(&self, n: u64, k: u64) -> u64 {
        let k = k.min(n - k);
        let (mut num, mut den) = (1u64, 1u64);
        for i in 0..k {
            num = num * ((n - i) % self.p) % self.p;
            den = den * ((i + 1) % self.p) % self.p;
        }
        num * self.inv(den) % self.p
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(1..self.p)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::default_field()
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = LinAlgError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Self::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl Field for PrimeField {
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self, LinAlgError> {
        ff_inv(self)
    }

    fn with(self, value: u64) -> Self {
        Self { value, ..self }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.with(self.field().add(self.value, rhs.value))
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.with(self.field().sub(self.value, rhs.value))
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.with(self.field().mul(self.value, rhs.value))
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.field().neg(self.value))
    }
}

/// Inverse of a nonzero field element.
pub fn ff_inv(a: FieldElement) -> Result<FieldElement, LinAlgError> {
    if a.value == 0 {
        return Err(LinAlgError::ZeroInverse);
    }
    Ok(a.with(a.field().inv(a.value)))
}

/// Deterministic primality test for `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}
