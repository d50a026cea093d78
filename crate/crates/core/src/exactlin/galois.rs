//! Small extension fields `F_{p^k}` via log/exp tables.
//!
//! Elements are packed as base-`p` integers: the coefficient of `x^i` in the
//! polynomial representative is digit `i`. Only intended for `p^k` up to a
//! few hundred thousand.

use super::field::{is_prime, Field};
use super::LinAlgError;

pub struct GaloisField {
    p: u64,
    k: u32,
    order: u64,
    /// Monic primitive polynomial, low to high, `k + 1` coefficients.
    modulus: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl GaloisField {
    const MAX_ORDER: u64 = 1 << 20;

    /// The smallest extension of `F_p` with at least `min_order` elements.
    pub fn with_min_order(p: u64, min_order: u64) -> Result<Self, LinAlgError> {
        let mut k = 1;
        while p.pow(k) < min_order {
            k += 1;
        }
        Self::new(p, k)
    }

    pub fn new(p: u64, k: u32) -> Result<Self, LinAlgError> {
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q <= Self::MAX_ORDER)
            .ok_or(LinAlgError::ModulusTooLarge(p))?;
        // Enumerate monic polynomials of degree k until x generates the
        // multiplicative group.
        for tail in 0..order {
            let mut modulus: Vec<u64> = (0..k).map(|i| tail / p.pow(i) % p).collect();
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = build_tables(p, k, order, &modulus) {
                return Ok(Self {
                    p,
                    k,
                    order,
                    modulus,
                    exp,
                    log,
                });
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    /// Embeds an element of the prime field.
    pub fn from_prime(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128 * e as u128 % (self.order - 1) as u128;
        self.exp[l as usize]
    }
}

fn build_tables(p: u64, k: u32, order: u64, modulus: &[u64]) -> Option<(Vec<u64>, Vec<u64>)> {
    let k = k as usize;
    let mut exp = vec![0u64; (order - 1) as usize];
    let mut log = vec![u64::MAX; order as usize];
    let mut cur = vec![0u64; k];
    cur[0] = 1;
    for (i, slot) in exp.iter_mut().enumerate() {
        let packed = pack(p, &cur);
        if log[packed as usize] != u64::MAX {
            return None;
        }
        log[packed as usize] = i as u64;
        *slot = packed;
        // cur *= x mod modulus
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..k {
                cur[j] = (cur[j] + (p - top) * modulus[j] % p) % p;
            }
        }
    }
    // after order-1 steps we must be back at 1
    if pack(p, &cur) != 1 {
        return None;
    }
    Some((exp, log))
}

fn pack(p: u64, digits: &[u64]) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Field for GaloisField {
    fn add(&self, mut a: u64, mut b: u64) -> u64 {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn sub(&self, mut a: u64, mut b: u64) -> u64 {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + self.p - b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let l = (self.log[a as usize] + self.log[b as usize]) % (self.order - 1);
        self.exp[l as usize]
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        let l = (self.order - 1 - self.log[a as usize]) % (self.order - 1);
        self.exp[l as usize]
    }

    fn characteristic(&self) -> u64 {
        self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        let gf = GaloisField::new(3, 2).unwrap();
        assert_eq!(gf.order(), 9);
        for a in 0..9 {
            assert_eq!(gf.add(a, gf.neg(a)), 0);
            if a != 0 {
                assert_eq!(gf.mul(a, gf.inv(a)), 1);
            }
            for b in 0..9 {
                assert_eq!(gf.mul(a, b), gf.mul(b, a));
                for c in 0..9 {
                    let lhs = gf.mul(a, gf.add(b, c));
                    let rhs = gf.add(gf.mul(a, b), gf.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let gf = GaloisField::with_min_order(5, 1000).unwrap();
        assert!(gf.order() >= 1000);
        for a in (0..gf.order()).step_by(37) {
            for b in (0..gf.order()).step_by(53) {
                assert_eq!(gf.pow(gf.add(a, b), 5), gf.add(gf.pow(a, 5), gf.pow(b, 5)));
            }
        }
    }

    #[test]
    fn prime_subfield_is_fixed_by_frobenius() {
        let gf = GaloisField::with_min_order(7, 2000).unwrap();
        let fixed = (0..gf.order()).filter(|&a| gf.pow(a, 7) == a).count();
        assert_eq!(fixed, 7);
    }
}
