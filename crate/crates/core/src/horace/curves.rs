//! Base cases on curves: Hasse–Wronskians on `P^1` and the numerical
//! threshold for smooth curves of genus `g`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::HoraceError;
use crate::exactlin::{rank_in, rank_rational, Field, GaloisField, PrimeField};
use crate::oracle::trial_rng;

/// Characteristic used by the curve checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

/// Below this many elements the prime field is replaced by an extension so
/// that random points are generic enough.
const MIN_SAMPLE_FIELD: u64 = 1000;

enum SampleField {
    Prime(PrimeField),
    Ext(GaloisField),
}

impl SampleField {
    fn new(p: u64) -> Result<Self, HoraceError> {
        let fp = PrimeField::new(p).map_err(|e| HoraceError::Precondition(e.to_string()))?;
        if p >= MIN_SAMPLE_FIELD {
            Ok(Self::Prime(fp))
        } else {
            GaloisField::with_min_order(p, MIN_SAMPLE_FIELD)
                .map(Self::Ext)
                .map_err(|e| HoraceError::Precondition(e.to_string()))
        }
    }

    fn order(&self) -> u64 {
        match self {
            Self::Prime(f) => f.modulus(),
            Self::Ext(g) => g.order(),
        }
    }

    fn pow(&self, a: u64, e: u64) -> u64 {
        match self {
            Self::Prime(f) => f.pow(a, e),
            Self::Ext(g) => g.pow(a, e),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            Self::Prime(f) => f.mul(a, b),
            Self::Ext(g) => g.mul(a, b),
        }
    }

    /// `C(n, k)` reduced into the field.
    fn binomial(&self, n: u64, k: u64) -> u64 {
        match self {
            Self::Prime(f) => f.binomial(n, k),
            Self::Ext(g) => {
                let p = g.characteristic();
                g.from_prime(PrimeField::new(p).expect("prime").binomial(n, k))
            }
        }
    }

    fn rank(&self, rows: usize, cols: usize, entries: Vec<u64>) -> usize {
        match self {
            Self::Prime(f) => rank_in(f, rows, cols, entries),
            Self::Ext(g) => rank_in(g, rows, cols, entries),
        }
    }
}

/// Pads with simple points or lowers multiplicities from the end so that
/// they sum to `v`.
pub fn fit_multiplicities(mults: &[u32], v: u64) -> Vec<u32> {
    let mut out: Vec<u32> = mults.iter().copied().filter(|&m| m > 0).collect();
    let mut sum: u64 = out.iter().map(|&m| m as u64).sum();
    while sum > v {
        let last = out.last_mut().expect("positive sum");
        *last -= 1;
        sum -= 1;
        if *last == 0 {
            out.pop();
        }
    }
    out.extend((sum..v).map(|_| 1));
    out
}

fn hasse_entry_int(e: u64, k: u64, t: &BigInt) -> BigInt {
    if e < k {
        BigInt::zero()
    } else {
        BigInt::from(crate::binomial(e, k)) * t.pow((e - k) as u32)
    }
}

/// Whether the Hasse–Wronskian `[C(e_j, i) t^(e_j - i)]` of the monomials
/// `t^e` (`e` in `exponents`) is nonsingular at a random point.
///
/// The multiplicities only enter through their sum, which is first fitted
/// to the number of basis elements: all points are specialized to a single
/// point of multiplicity `v`.
pub fn wronskian_check_basis(
    exponents: &[u64],
    mults: &[u32],
    chr: Characteristic,
    seed: u64,
) -> Result<bool, HoraceError> {
    let v = exponents.len();
    let fitted = fit_multiplicities(mults, v as u64);
    debug_assert_eq!(fitted.iter().map(|&m| m as usize).sum::<usize>(), v);
    let mut rng = trial_rng(seed, 0);
    match chr {
        Characteristic::Zero => {
            let t = BigInt::from(rng.random_range(2..=64i64));
            let rows: Vec<Vec<BigInt>> = (0..v as u64)
                .map(|i| {
                    exponents
                        .iter()
                        .map(|&e| hasse_entry_int(e, i, &t))
                        .collect()
                })
                .collect();
            Ok(rank_rational(&rows) == v)
        }
        Characteristic::Prime(p) => {
            let f = SampleField::new(p)?;
            let t = rng.random_range(1..f.order());
            let mut entries = Vec::with_capacity(v * v);
            for i in 0..v as u64 {
                for &e in exponents {
                    entries.push(if e < i {
                        0
                    } else {
                        f.mul(f.binomial(e, i), f.pow(t, e - i))
                    });
                }
            }
            Ok(f.rank(v, v, entries) == v)
        }
    }
}

/// [`wronskian_check_basis`] for the full basis `1, t, ..., t^d`.
pub fn wronskian_check(
    mults: &[u32],
    d: u32,
    chr: Characteristic,
    seed: u64,
) -> Result<bool, HoraceError> {
    let exponents: Vec<u64> = (0..=d as u64).collect();
    wronskian_check_basis(&exponents, mults, chr, seed)
}

/// Rank of the Hasse collocation matrix: rows `D^k` at distinct random
/// points `t_i` for `k < m_i`, columns the monomials `t^e`.
pub fn collocation_rank(
    exponents: &[u64],
    mults: &[u32],
    chr: Characteristic,
    seed: u64,
) -> Result<usize, HoraceError> {
    let mut rng = trial_rng(seed, 1);
    let rows: usize = mults.iter().map(|&m| m as usize).sum();
    let cols = exponents.len();
    match chr {
        Characteristic::Zero => {
            let mut pts = BTreeSet::new();
            while pts.len() < mults.len() {
                pts.insert(rng.random_range(1..=1000i64));
            }
            let mut matrix = Vec::with_capacity(rows);
            for (&t, &m) in pts.iter().zip(mults) {
                let t = BigInt::from(t);
                for k in 0..m as u64 {
                    matrix.push(
                        exponents
                            .iter()
                            .map(|&e| hasse_entry_int(e, k, &t))
                            .collect(),
                    );
                }
            }
            Ok(rank_rational(&matrix))
        }
        Characteristic::Prime(p) => {
            let f = SampleField::new(p)?;
            if (mults.len() as u64) >= f.order() {
                return Err(HoraceError::Precondition(
                    "not enough distinct points".into(),
                ));
            }
            let mut pts = BTreeSet::new();
            while pts.len() < mults.len() {
                pts.insert(rng.random_range(1..f.order()));
            }
            let mut entries = Vec::with_capacity(rows * cols);
            for (&t, &m) in pts.iter().zip(mults) {
                for k in 0..m as u64 {
                    for &e in exponents {
                        entries.push(if e < k {
                            0
                        } else {
                            f.mul(f.binomial(e, k), f.pow(t, e - k))
                        });
                    }
                }
            }
            Ok(f.rank(rows, cols, entries))
        }
    }
}

/// Least `d >= 0` with `deg M + d deg L + 1 - g > m(m-1)(g-1)/2` and
/// `deg M + d deg L > 2g - 2`.
pub fn curve_threshold(m: u32, g: u32, deg_l: u32, deg_m: i64) -> Result<u32, HoraceError> {
    if deg_l == 0 {
        return Err(HoraceError::Precondition("deg L must be positive".into()));
    }
    let (m, g, l) = (m as i64, g as i64, deg_l as i64);
    let ok = |d: i64| {
        let deg = deg_m + d * l;
        2 * (deg + 1 - g) > m * (m - 1) * (g - 1) && deg > 2 * g - 2
    };
    // both sides are linear in d, so the threshold is reached quickly
    let mut d = 0i64;
    while !ok(d) {
        d += 1;
    }
    Ok(d as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wronskian_examples() {
        assert!(wronskian_check(&[3], 2, Characteristic::Zero, 0).unwrap());
        assert!(wronskian_check(&[3], 2, Characteristic::Prime(1_000_003), 0).unwrap());
        assert!(wronskian_check(&[1], 0, Characteristic::Prime(7), 0).unwrap());
        // 1, t^2 over F_2: D^1(t^2) = 2t = 0
        assert!(!wronskian_check_basis(&[0, 2], &[2], Characteristic::Prime(2), 0).unwrap());
        assert!(wronskian_check_basis(&[0, 2], &[2], Characteristic::Zero, 0).unwrap());
    }

    #[test]
    fn fitting() {
        assert_eq!(fit_multiplicities(&[3, 4], 7), vec![3, 4]);
        assert_eq!(fit_multiplicities(&[3, 4], 5), vec![3, 2]);
        assert_eq!(fit_multiplicities(&[2], 4), vec![2, 1, 1]);
        assert_eq!(fit_multiplicities(&[2, 2], 1), vec![1]);
    }

    #[test]
    fn collocation_agrees() {
        let e: Vec<u64> = (0..=6).collect();
        assert_eq!(
            collocation_rank(&e, &[3, 4], Characteristic::Prime(1_000_003), 1).unwrap(),
            7
        );
        assert_eq!(
            collocation_rank(&e, &[3, 4], Characteristic::Zero, 1).unwrap(),
            7
        );
        assert_eq!(
            collocation_rank(&[0, 2], &[2], Characteristic::Prime(2), 1).unwrap(),
            1
        );
    }

    #[test]
    fn thresholds() {
        assert_eq!(curve_threshold(2, 2, 1, 0).unwrap(), 3);
        // g = 1: only deg > 0 matters
        assert_eq!(curve_threshold(3, 1, 1, 0).unwrap(), 1);
        assert_eq!(curve_threshold(3, 1, 2, -3).unwrap(), 2);
        // g = 0: vacuous
        assert_eq!(curve_threshold(5, 0, 1, 0).unwrap(), 0);
        assert!(curve_threshold(2, 2, 0, 0).is_err());
    }
}
