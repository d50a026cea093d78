use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, PrimeField};
use crate::geom::MultiIndex;

/// Polynomial in the chart variables `x`, coefficients mod `p`.
pub type XPoly = BTreeMap<MultiIndex, u64>;

/// `F = sum F_{alpha,beta}(x) t^alpha y^beta` with `alpha <= T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncSeries {
    trunc: u32,
    n_vars: usize,
    /// Keyed by `(alpha, beta)`; zero coefficients are never stored.
    coeffs: BTreeMap<(u32, u32), XPoly>,
}

impl TruncSeries {
    pub fn zero(trunc: u32, n_vars: usize) -> Self {
        Self {
            trunc,
            n_vars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Adds `c t^alpha y^beta x^gamma`; terms beyond the truncation vanish.
    pub fn add_term(
        &mut self,
        field: &PrimeField,
        alpha: u32,
        beta: u32,
        gamma: &MultiIndex,
        c: u64,
    ) {
        assert_eq!(gamma.nvars(), self.n_vars, "chart variable count");
        if alpha > self.trunc || c == 0 {
            return;
        }
        let poly = self.coeffs.entry((alpha, beta)).or_default();
        let entry = poly.entry(gamma.clone()).or_insert(0);
        *entry = field.add(*entry, c);
        if *entry == 0 {
            poly.remove(gamma);
            if poly.is_empty() {
                self.coeffs.remove(&(alpha, beta));
            }
        }
    }

    /// `F_{alpha,beta}`; empty when zero.
    pub fn coeff(&self, alpha: u32, beta: u32) -> XPoly {
        self.coeffs.get(&(alpha, beta)).cloned().unwrap_or_default()
    }

    /// Nonzero `((alpha, beta), F_{alpha,beta})` in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &XPoly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether `y` divides `F_alpha`.
    pub fn y_divides(&self, alpha: u32) -> bool {
        !self.coeffs.contains_key(&(alpha, 0))
    }
}
