use super::component::Component;
use super::config::Configuration;
use super::SchemeError;
use crate::exactlin::{DenseMatrix, PrimeField};
use crate::geom::{frame_at, framed_rows, hasse_rows, monomial_basis, Hypersurface, MultiIndex};

/// Linear conditions imposed on degree-`d` forms by one component, with
/// columns indexed by `monomial_basis(N, d)`.
pub fn component_rows(
    field: &PrimeField,
    component: &Component,
    index: usize,
    n: usize,
    basis: &[MultiIndex],
    divisor: &Hypersurface,
) -> Result<Vec<Vec<u64>>, SchemeError> {
    let support = component
        .support
        .as_ref()
        .ok_or(SchemeError::UnassignedSupport { index })?;
    if support.dim() != n {
        return Err(SchemeError::DimensionMismatch {
            expected: n,
            found: support.dim(),
        });
    }
    let betas = component.local_standard_monomials(n);
    if component.is_free() {
        return Ok(hasse_rows(field, support, basis, &betas));
    }
    if !divisor.is_smooth_point(field, support) {
        return Err(SchemeError::SingularSupport { index });
    }
    let frame =
        frame_at(field, divisor, support).map_err(|_| SchemeError::SingularSupport { index })?;
    Ok(framed_rows(field, &frame, basis, &betas))
}

/// The evaluation map of degree-`d` forms to the conditions of `config`.
///
/// One row per unit of length, so the row count is `config.degree()`.
pub fn conditions_matrix(
    field: &PrimeField,
    config: &Configuration,
    d: u32,
    divisor: &Hypersurface,
) -> Result<DenseMatrix, SchemeError> {
    let n = config.n();
    if divisor.dim() != n || divisor.degree() != config.a() {
        return Err(SchemeError::DivisorMismatch {
            n,
            a: config.a(),
            found_n: divisor.dim(),
            found_a: divisor.degree(),
        });
    }
    let basis = monomial_basis(n, d);
    let mut m = DenseMatrix::zeros(*field, 0, basis.len());
    for (index, c) in config.components().iter().enumerate() {
        for row in component_rows(field, c, index, n, &basis, divisor)? {
            m.push_row(&row).expect("row width matches basis");
        }
    }
    Ok(m)
}
