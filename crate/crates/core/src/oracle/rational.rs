use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{generic::trial_rng, OracleError};
use crate::exactlin::{rank_rational, DenseMatrix, PrimeField};
use crate::geom::{monomial_basis, ProjPoint};
use crate::schemes::{conditions_matrix, Configuration};

/// Rank of one instance computed over `Q` and over `F_p` at the same
/// integer points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCheck {
    pub rows: usize,
    pub cols: usize,
    pub rank_rational: usize,
    pub rank_mod_p: usize,
    pub kernel_rational: u64,
    /// Affine integer coordinates (last homogeneous coordinate 1).
    pub points: Vec<Vec<i64>>,
}

/// Rebuilds the condition matrix of a free-point configuration at random
/// integer points with coordinates in `1..=bound` and ranks it exactly over
/// the rationals (fraction-free) and modulo `prime`.
pub fn verify_rational(
    config: &Configuration,
    d: u32,
    prime: u64,
    seed: u64,
    bound: i64,
) -> Result<RationalCheck, OracleError> {
    if config.constrained_part().next().is_some() {
        return Err(OracleError::Precondition(
            "rational verification supports free points only".into(),
        ));
    }
    let n = config.n();
    let mut rng = trial_rng(seed, usize::MAX);
    let points: Vec<Vec<i64>> = config
        .components()
        .iter()
        .map(|_| (0..n).map(|_| rng.random_range(1..=bound)).collect())
        .collect();
    let basis = monomial_basis(n, d);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (c, pt) in config.components().iter().zip(&points) {
        for beta in c.local_standard_monomials(n) {
            rows.push(
                basis
                    .iter()
                    .map(|gamma| hasse_int(&gamma.0[..n], &beta.0, pt))
                    .collect(),
            );
        }
    }
    let rank_q = rank_rational(&rows);

    let field = PrimeField::new(prime)?;
    let mut assigned = config.clone();
    for (c, pt) in assigned.components_mut().iter_mut().zip(&points) {
        let mut coords: Vec<u64> = pt.iter().map(|&x| field.reduce(x as u64)).collect();
        coords.push(1);
        c.support = Some(ProjPoint::new(coords)?);
    }
    let divisor = crate::geom::Hypersurface::hyperplane(n);
    let m: DenseMatrix = conditions_matrix(&field, &assigned.with_divisor_degree(1)?, d, &divisor)?;
    Ok(RationalCheck {
        rows: rows.len(),
        cols: basis.len(),
        rank_rational: rank_q,
        rank_mod_p: m.rank(),
        kernel_rational: (basis.len() - rank_q) as u64,
        points,
    })
}

/// `prod C(gamma_i, beta_i) x^(gamma - beta)` over the integers.
fn hasse_int(gamma: &[u32], beta: &[u32], x: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for ((&g, &b), &xi) in gamma.iter().zip(beta).zip(x) {
        if b > g {
            return BigInt::zero();
        }
        acc *= BigInt::from(crate::binomial(g as u64, b as u64)) * BigInt::from(xi).pow(g - b);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_and_regular_instances() {
        let two = Configuration::free_points(2, &[2, 2]).unwrap();
        let c = verify_rational(&two, 2, 1_000_003, 7, 100).unwrap();
        assert_eq!(
            (c.rank_rational, c.rank_mod_p, c.kernel_rational),
            (5, 5, 1)
        );
        let c = verify_rational(&two, 3, 1_000_003, 7, 100).unwrap();
        assert_eq!((c.rank_rational, c.kernel_rational), (6, 4));
    }

    #[test]
    fn rejects_constrained_parts() {
        let c =
            Configuration::new(2, 1, vec![crate::schemes::Component::divisor_point(2)]).unwrap();
        assert!(verify_rational(&c, 2, 1_000_003, 0, 10).is_err());
    }
}
