use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, PrimeField};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Drops coordinate `i` (dehomogenization at chart `i`).
    pub fn without(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e.remove(i);
        Self(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of total degree exactly `d` in `nvars` variables,
/// lexicographically decreasing (so `x_0^d` comes first).
pub fn exponents_of_degree(nvars: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, d);
    out
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = remaining;
            out.push(MultiIndex(cur.clone()));
        } else if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, remaining - e);
    }
    cur[pos] = 0;
}

/// All multi-indices of total degree `<= d`, grouped by increasing degree.
pub fn exponents_up_to(nvars: usize, d: u32) -> Vec<MultiIndex> {
    (0..=d)
        .flat_map(|k| exponents_of_degree(nvars, k))
        .collect()
}

/// Degree-`d` monomials in the `n + 1` homogeneous coordinates of `P^n`.
///
/// The count is `C(d + n, n)` and the order is fixed.
pub fn monomial_basis(n: usize, d: u32) -> Vec<MultiIndex> {
    exponents_of_degree(n + 1, d)
}

/// Hasse derivative `D^beta` of `x^gamma` evaluated at `point`:
/// `prod_i C(gamma_i, beta_i) * point^(gamma - beta)`, zero when some
/// `beta_i > gamma_i`.
pub fn hasse_eval(field: &PrimeField, gamma: &[u32], beta: &[u32], point: &[u64]) -> u64 {
    debug_assert_eq!(gamma.len(), beta.len());
    debug_assert_eq!(gamma.len(), point.len());
    let mut acc = 1 % field.modulus();
    for ((&g, &b), &x) in gamma.iter().zip(beta).zip(point) {
        if b > g {
            return 0;
        }
        acc = field.mul(acc, field.binomial(g as u64, b as u64));
        if acc == 0 {
            return 0;
        }
        acc = field.mul(acc, field.pow(x, (g - b) as u64));
    }
    acc
}
