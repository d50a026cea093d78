use serde::{Deserialize, Serialize};

use super::ideal::MonomialIdeal;
use super::SchemeError;
use crate::geom::MultiIndex;

/// Vertically graded monomial ideal
/// `I_0 ⊕ I_1 y ⊕ … ⊕ I_{m-1} y^{m-1} ⊕ (y^m)` in `n_vars` tangential
/// variables plus the normal variable `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct VgModel {
    n_vars: usize,
    layers: Vec<MonomialIdeal>,
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    n_vars: usize,
    layers: Vec<MonomialIdeal>,
}

impl TryFrom<RawModel> for VgModel {
    type Error = SchemeError;

    fn try_from(raw: RawModel) -> Result<Self, SchemeError> {
        Self::new(raw.n_vars, raw.layers)
    }
}

impl From<VgModel> for RawModel {
    fn from(m: VgModel) -> Self {
        Self {
            n_vars: m.n_vars,
            layers: m.layers,
        }
    }
}

impl VgModel {
    pub fn new(n_vars: usize, layers: Vec<MonomialIdeal>) -> Result<Self, SchemeError> {
        for (j, layer) in layers.iter().enumerate() {
            if layer.n_vars() != n_vars {
                return Err(SchemeError::InvalidModel(format!(
                    "layer {j} has {} variables, expected {n_vars}",
                    layer.n_vars()
                )));
            }
            if !layer.has_finite_colength() {
                return Err(SchemeError::InvalidModel(format!(
                    "layer {j} has infinite colength"
                )));
            }
        }
        if let Some(j) = (1..layers.len()).find(|&j| !layers[j - 1].is_subset_of(&layers[j])) {
            return Err(SchemeError::InvalidModel(format!(
                "layer {} is not contained in layer {j}",
                j - 1
            )));
        }
        Ok(Self { n_vars, layers })
    }

    /// The fat point of multiplicity `m`: layers `n^{m-j}`.
    pub fn fat_point(n_vars: usize, m: u32) -> Self {
        Self {
            n_vars,
            layers: (0..m)
                .map(|j| MonomialIdeal::max_power(n_vars, m - j))
                .collect(),
        }
    }

    /// The simple residue `D_m`: the fat point of multiplicity `m` with its
    /// top layer sliced out.
    pub fn simple_residue(n_vars: usize, m: u32) -> Self {
        if m == 0 {
            return Self::empty(n_vars);
        }
        Self::fat_point(n_vars, m)
            .res_p(m as usize - 1)
            .expect("slice index below height")
    }

    pub fn empty(n_vars: usize) -> Self {
        Self {
            n_vars,
            layers: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn height(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[MonomialIdeal] {
        &self.layers
    }

    pub fn layer(&self, j: usize) -> MonomialIdeal {
        self.layers
            .get(j)
            .cloned()
            .unwrap_or_else(|| MonomialIdeal::unit(self.n_vars))
    }

    pub fn degree(&self) -> u64 {
        self.layers
            .iter()
            .map(|l| l.colength().expect("validated layer"))
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.degree() == 0
    }

    pub fn tr_p(&self, p: usize) -> MonomialIdeal {
        self.layer(p)
    }

    /// Slices out layer `p`, shifting the higher layers down by one.
    pub fn res_p(&self, p: usize) -> Result<Self, SchemeError> {
        if p >= self.height() {
            return Err(SchemeError::SliceOutOfRange {
                p,
                height: self.height(),
            });
        }
        let mut layers = self.layers.clone();
        layers.remove(p);
        Ok(Self {
            n_vars: self.n_vars,
            layers,
        })
    }

    pub fn trace(&self) -> MonomialIdeal {
        self.tr_p(0)
    }

    /// `res_0`; the residual of the empty model is empty.
    pub fn residual(&self) -> Self {
        self.res_p(0).unwrap_or_else(|_| Self::empty(self.n_vars))
    }

    /// Standard monomials `x^alpha y^j` with `x^alpha` outside `I_j`, as
    /// exponent vectors of length `n_vars + 1` (normal variable last).
    pub fn standard_monomials(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for (j, layer) in self.layers.iter().enumerate() {
            for mut alpha in layer.standard_monomials().expect("validated layer") {
                alpha.0.push(j as u32);
                out.push(alpha);
            }
        }
        out
    }

    /// Membership of `x^alpha y^j` in the vertically graded ideal.
    pub fn contains(&self, alpha: &[u32], j: u32) -> bool {
        self.layer(j as usize).contains(alpha)
    }
}
