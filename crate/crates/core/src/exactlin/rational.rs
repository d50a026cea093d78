//! Exact rank over `Q` for integer matrices.
//!
//! Fraction-free (Bareiss) elimination on arbitrary-precision integers. Every
//! intermediate division is exact, so no rational numbers are ever formed.
//! This path shares no code with the modular elimination and is used as an
//! independent check on it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over `Q` of an integer matrix given as rows.
pub fn rank_rational(rows: &[Vec<BigInt>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pr = 0;
    for col in 0..cols {
        if pr == m {
            break;
        }
        let Some(found) = (pr..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(found, pr);
        let pivot = a[pr][col].clone();
        for r in pr + 1..m {
            let lead = a[r][col].clone();
            for c in col..cols {
                let v = (&pivot * &a[r][c] - &lead * &a[pr][c]) / &prev;
                a[r][c] = v;
            }
        }
        prev = pivot;
        pr += 1;
    }
    pr
}

/// Convenience wrapper for small integer matrices.
pub fn rank_rational_i64(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    rank_rational(&big)
}
