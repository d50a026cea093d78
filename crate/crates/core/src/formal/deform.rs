use serde::{Deserialize, Serialize};

use super::series::{TruncSeries, XPoly};
use super::FormalError;
use crate::exactlin::{Field, PrimeField};
use crate::geom::MultiIndex;
use crate::schemes::VgModel;

/// Default bound on the degree of chart-variable monomials.
pub const DEFAULT_X_DEGREE: u32 = 8;

/// `sum_i a_i(x, t) (y - t^r)^i` with `a_i = sum_j a_{ij}(x) t^j`, `a_{ij}` in
/// layer `I_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deformation {
    model: VgModel,
    rate: u32,
    trunc: u32,
    prime: u64,
    /// `generators[i][j] = a_{ij}`, for `i <= height`.
    generators: Vec<Vec<XPoly>>,
}

fn layer_contains(model: &VgModel, i: usize, poly: &XPoly) -> Option<MultiIndex> {
    let layer = model.layer(i);
    poly.keys().find(|g| !layer.contains(g.as_slice())).cloned()
}

impl Deformation {
    pub fn new(
        model: VgModel,
        rate: u32,
        trunc: u32,
        prime: u64,
        generators: Vec<Vec<XPoly>>,
    ) -> Result<Self, FormalError> {
        let field = PrimeField::new(prime).map_err(|e| FormalError::Invalid(e.to_string()))?;
        if rate == 0 {
            return Err(FormalError::Invalid("rate must be positive".into()));
        }
        if generators.len() > model.height() + 1 {
            return Err(FormalError::Invalid(format!(
                "{} generators for a model of height {}",
                generators.len(),
                model.height()
            )));
        }
        for (i, row) in generators.iter().enumerate() {
            if row.len() > trunc as usize + 1 {
                return Err(FormalError::Invalid(format!(
                    "a_{i} has terms beyond t^{trunc}"
                )));
            }
            for (j, poly) in row.iter().enumerate() {
                for (g, &c) in poly {
                    if g.nvars() != model.n_vars() {
                        return Err(FormalError::Invalid("chart variable count".into()));
                    }
                    if c == 0 || c >= field.modulus() {
                        return Err(FormalError::Invalid(format!("coefficient {c} of a_{i}{j}")));
                    }
                    if g.degree() > DEFAULT_X_DEGREE {
                        return Err(FormalError::Invalid(format!(
                            "a_{i}{j} exceeds x-degree {DEFAULT_X_DEGREE}"
                        )));
                    }
                }
                if let Some(g) = layer_contains(&model, i, poly) {
                    return Err(FormalError::GeneratorOutsideLayer {
                        i,
                        j,
                        monomial: g.0,
                    });
                }
            }
        }
        Ok(Self {
            model,
            rate,
            trunc,
            prime,
            generators,
        })
    }

    pub fn model(&self) -> &VgModel {
        &self.model
    }

    pub fn rate(&self) -> u32 {
        self.rate
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.prime).expect("validated prime")
    }

    pub fn generators(&self) -> &[Vec<XPoly>] {
        &self.generators
    }

    /// `a_{ij}`; empty when absent.
    pub fn generator(&self, i: usize, j: usize) -> XPoly {
        self.generators
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_default()
    }
}

/// Expands the deformation into `F`, truncated at `t^T`.
pub fn build_member(def: &Deformation) -> Result<TruncSeries, FormalError> {
    let (r, trunc, height) = (def.rate, def.trunc, def.model.height() as u32);
    if trunc < r * height {
        return Err(FormalError::TruncationTooSmall {
            trunc,
            needed: r * height,
        });
    }
    let field = def.field();
    let mut out = TruncSeries::zero(trunc, def.model.n_vars());
    for (i, row) in def.generators.iter().enumerate() {
        let i = i as u32;
        for (j, poly) in row.iter().enumerate() {
            for k in 0..=i {
                let alpha = j as u32 + r * k;
                if alpha > trunc {
                    break;
                }
                let mut c = field.binomial(i as u64, k as u64);
                if k % 2 == 1 {
                    c = field.neg(c);
                }
                for (g, &v) in poly {
                    out.add_term(&field, alpha, i - k, g, field.mul(c, v));
                }
            }
        }
    }
    Ok(out)
}

/// `F_{alpha,beta} = sum_nu (-1)^nu C(beta + nu, beta) a_{beta+nu, alpha - nu r}`.
pub fn explicit_coefficient(def: &Deformation, alpha: u32, beta: u32) -> XPoly {
    let field = def.field();
    let mut out = XPoly::new();
    for nu in 0..=alpha / def.rate {
        let mut c = field.binomial((beta + nu) as u64, beta as u64);
        if nu % 2 == 1 {
            c = field.neg(c);
        }
        let a = def.generator((beta + nu) as usize, (alpha - nu * def.rate) as usize);
        for (g, v) in a {
            let e = out.entry(g.clone()).or_insert(0);
            *e = field.add(*e, field.mul(c, v));
            if *e == 0 {
                out.remove(&g);
            }
        }
    }
    out
}

/// First `(alpha, beta)` where the explicit formula and the expansion differ.
pub fn formula_mismatch(def: &Deformation, f: &TruncSeries) -> Option<(u32, u32)> {
    let max_beta = def.generators.len() as u32;
    (0..=f.trunc())
        .flat_map(|alpha| (0..=max_beta).map(move |beta| (alpha, beta)))
        .find(|&(alpha, beta)| explicit_coefficient(def, alpha, beta) != f.coeff(alpha, beta))
}

/// A coefficient `F_{alpha,beta}` with a monomial outside the layer it
/// should lie in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub alpha: u32,
    pub beta: u32,
    pub layer: usize,
    pub monomial: Vec<u32>,
}

/// First coefficient with `F_{alpha,beta}` outside `I_{beta + floor(alpha/r)}`.
pub fn membership_violation(f: &TruncSeries, model: &VgModel, r: u32) -> Option<Violation> {
    f.iter().find_map(|(&(alpha, beta), poly)| {
        let layer = (beta + alpha / r) as usize;
        layer_contains(model, layer, poly).map(|g| Violation {
            alpha,
            beta,
            layer,
            monomial: g.0,
        })
    })
}

pub fn check_coefficient_membership(f: &TruncSeries, model: &VgModel, r: u32) -> bool {
    membership_violation(f, model, r).is_none()
}

/// If `y` divides `F_{lambda r}` for `lambda <= p`, whether `F_0` lies in
/// `I_0 y + ... + I_{p-1} y^p + I_{p+1} y^(p+1) + ...`.
pub fn check_slicing(
    f: &TruncSeries,
    model: &VgModel,
    r: u32,
    p: u32,
) -> Result<bool, FormalError> {
    if p * r > f.trunc() {
        return Err(FormalError::TruncationTooSmall {
            trunc: f.trunc(),
            needed: p * r,
        });
    }
    if let Some(lambda) = (0..=p).find(|&l| !f.y_divides(l * r)) {
        return Err(FormalError::PreconditionUnmet { alpha: lambda * r });
    }
    Ok(f.iter()
        .filter(|((alpha, _), _)| *alpha == 0)
        .all(|(&(_, beta), poly)| {
            let layer = match beta {
                0 => return false,
                b if b <= p => b as usize - 1,
                b => b as usize,
            };
            layer_contains(model, layer, poly).is_none()
        }))
}
