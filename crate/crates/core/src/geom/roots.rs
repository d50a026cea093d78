//! Roots of univariate polynomials over `F_p`.
//!
//! Small fields are searched exhaustively. Otherwise the squarefree part of
//! the split factor `gcd(f, x^p - x)` is computed and split with random
//! shifts `gcd(g, (x + c)^((p-1)/2) - 1)`.

use rand::Rng;

use crate::exactlin::{Field, PrimeField};

/// Dense coefficients, lowest degree first.
type Upoly = Vec<u64>;

const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

fn trim(mut a: Upoly) -> Upoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &Upoly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn monic(f: &PrimeField, a: Upoly) -> Upoly {
    let a = trim(a);
    match a.last() {
        Some(&lead) if lead != 1 => {
            let inv = f.inv(lead);
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
        _ => a,
    }
}

fn rem(f: &PrimeField, a: &Upoly, b: &Upoly) -> Upoly {
    let mut r = trim(a.clone());
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv(b[db]);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = f.mul(r[dr], inv);
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(q, bc));
        }
        r = trim(r);
    }
    r
}

fn mulmod(f: &PrimeField, a: &Upoly, b: &Upoly, m: &Upoly) -> Upoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    rem(f, &out, m)
}

fn powmod(f: &PrimeField, base: &Upoly, mut e: u64, m: &Upoly) -> Upoly {
    let mut acc = rem(f, &vec![1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn gcd(f: &PrimeField, a: Upoly, b: Upoly) -> Upoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

fn sub_poly(f: &PrimeField, a: &Upoly, b: &Upoly) -> Upoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

fn eval(f: &PrimeField, a: &Upoly, x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Distinct roots in `F_p` of a nonzero polynomial (coefficients lowest
/// degree first). Returned in increasing order.
pub fn roots<R: Rng + ?Sized>(field: &PrimeField, coeffs: &[u64], rng: &mut R) -> Vec<u64> {
    let f = monic(field, coeffs.to_vec());
    match degree(&f) {
        None | Some(0) => return Vec::new(),
        _ => {}
    }
    let p = field.modulus();
    let mut out = if p <= EXHAUSTIVE_LIMIT {
        (0..p).filter(|&x| eval(field, &f, x) == 0).collect()
    } else {
        let xp = powmod(field, &vec![0, 1], p, &f);
        let split = gcd(field, f.clone(), sub_poly(field, &xp, &vec![0, 1]));
        let mut acc = Vec::new();
        split_roots(field, split, rng, &mut acc);
        acc
    };
    out.sort_unstable();
    out
}

fn split_roots<R: Rng + ?Sized>(field: &PrimeField, g: Upoly, rng: &mut R, out: &mut Vec<u64>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(g[0])),
        Some(d) => {
            let half = (field.modulus() - 1) / 2;
            loop {
                let c = field.random(rng);
                let h = powmod(field, &vec![c, 1], half, &g);
                let h = sub_poly(field, &h, &vec![1]);
                let a = gcd(field, g.clone(), h);
                let da = degree(&a).unwrap_or(0);
                if da > 0 && da < d {
                    let b = quotient(field, &g, &a);
                    split_roots(field, a, rng, out);
                    split_roots(field, b, rng, out);
                    return;
                }
            }
        }
    }
}

fn quotient(f: &PrimeField, a: &Upoly, b: &Upoly) -> Upoly {
    let mut r = trim(a.clone());
    let db = degree(b).unwrap();
    let inv = f.inv(b[db]);
    let mut q = vec![0; r.len().saturating_sub(db)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        q[dr - db] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, bc));
        }
        r = trim(r);
    }
    trim(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadratic_roots_large_prime() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x - 3)(x - 1000) = x^2 - 1003x + 3000
        let poly = vec![3000, f.neg(1003), 1];
        assert_eq!(roots(&f, &poly, &mut rng), vec![3, 1000]);
        // x^2 + 1 has roots iff p = 1 mod 4; 2^31 - 1 = 3 mod 4
        assert!(roots(&f, &[1, 0, 1], &mut rng).is_empty());
    }

    #[test]
    fn repeated_and_cubic_roots() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // (x-5)^2 (x-9) = x^3 - 19x^2 + 115x - 225
        let poly = vec![f.neg(225), 115, f.neg(19), 1];
        assert_eq!(roots(&f, &poly, &mut rng), vec![5, 9]);
    }

    #[test]
    fn small_field_exhaustive() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // x^2 - 2 over F_7: 3^2 = 9 = 2, 4^2 = 16 = 2
        assert_eq!(roots(&f, &[5, 0, 1], &mut rng), vec![3, 4]);
        assert!(roots(&f, &[3], &mut rng).is_empty());
    }
}
