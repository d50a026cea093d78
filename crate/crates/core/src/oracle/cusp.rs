use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{generic::trial_rng, OracleError};
use crate::exactlin::{is_prime, rank_in, Field, GaloisField, PrimeField};
use crate::geom::monomial_basis;

/// Smallest size of the extension field the sample points are drawn from.
const MIN_FIELD_ORDER: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: u64,
    pub d: u32,
    /// `dp + 1 - (p-1)(p-2)/2`.
    pub h0_formula: u64,
    /// Rank of the pulled back degree-`d` monomials.
    pub dim_vd: u64,
    /// `d * p`: vanishing to order `p` at `d` points.
    pub degree_z: u64,
    pub kernel_dim: u64,
    pub field_order: u64,
    pub seed: u64,
}

impl CounterexampleReport {
    /// The dimension matches the closed form and maximal rank fails.
    pub fn exhibits_failure(&self) -> bool {
        self.dim_vd == self.h0_formula && self.degree_z >= self.dim_vd && self.kernel_dim >= 1
    }
}

/// Degree-`d` forms restricted to the cuspidal curve `y^2 z^{p-2} = x^p`
/// through `t -> (t^2, t^p, 1)`, forced to vanish to order `p` at `d`
/// random smooth points. In characteristic `p` the tangent lines have
/// contact `p`, so their product survives every condition.
pub fn cuspidal_counterexample(
    p: u64,
    d: u32,
    seed: u64,
) -> Result<CounterexampleReport, OracleError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(OracleError::BadCharacteristic(p));
    }
    if (d as u64) + 2 < p || d == 0 {
        return Err(OracleError::Precondition(format!(
            "degree {d} must be at least max(1, p - 2) = {}",
            (p - 2).max(1)
        )));
    }
    let fp = PrimeField::new(p)?;
    let top = (p * d as u64) as usize;

    // pullback t^(2i + pj) of x^i y^j z^k
    let monomials = monomial_basis(2, d);
    let mut pullback = vec![0u64; monomials.len() * (top + 1)];
    let mut exponents = BTreeSet::new();
    for (row, m) in monomials.iter().enumerate() {
        let e = (2 * m.0[0] as u64 + p * m.0[1] as u64) as usize;
        pullback[row * (top + 1) + e] = 1;
        exponents.insert(e as u64);
    }
    let dim_vd = rank_in(&fp, monomials.len(), top + 1, pullback) as u64;
    let exponents: Vec<u64> = exponents.into_iter().collect();

    let gf = GaloisField::with_min_order(p, MIN_FIELD_ORDER)?;
    let mut rng = trial_rng(seed, 0);
    let mut points = BTreeSet::new();
    while points.len() < d as usize {
        points.insert(rng.random_range(1..gf.order()));
    }
    let mut rows = Vec::with_capacity(d as usize * p as usize * exponents.len());
    for &t in &points {
        for k in 0..p {
            for &e in &exponents {
                let v = if e < k {
                    0
                } else {
                    gf.mul(gf.from_prime(fp.binomial(e, k)), gf.pow(t, e - k))
                };
                rows.push(v);
            }
        }
    }
    let n_rows = d as usize * p as usize;
    let rank = rank_in(&gf, n_rows, exponents.len(), rows);
    Ok(CounterexampleReport {
        p,
        d,
        h0_formula: d as u64 * p + 1 - (p - 1) * (p - 2) / 2,
        dim_vd,
        degree_z: n_rows as u64,
        kernel_dim: (exponents.len() - rank) as u64,
        field_order: gf.order(),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r = cuspidal_counterexample(3, 1, 0).unwrap();
        assert_eq!((r.dim_vd, r.degree_z), (3, 3));
        assert!(r.exhibits_failure());
        let r = cuspidal_counterexample(3, 2, 0).unwrap();
        assert_eq!(r.h0_formula, 6);
        assert!(r.exhibits_failure());
        let r = cuspidal_counterexample(5, 3, 1).unwrap();
        assert_eq!(r.h0_formula, 10);
        assert!(r.exhibits_failure());
    }

    #[test]
    fn errors() {
        assert_eq!(
            cuspidal_counterexample(2, 3, 0),
            Err(OracleError::BadCharacteristic(2))
        );
        assert_eq!(
            cuspidal_counterexample(9, 9, 0),
            Err(OracleError::BadCharacteristic(9))
        );
        assert!(matches!(
            cuspidal_counterexample(3, 0, 0),
            Err(OracleError::Precondition(_))
        ));
        assert!(matches!(
            cuspidal_counterexample(7, 4, 0),
            Err(OracleError::Precondition(_))
        ));
    }
}
