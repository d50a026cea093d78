//! Projective-space combinatorics over `F_p`: monomial bases, Hasse
//! derivatives, hypersurfaces, point sampling and local frames.

mod hypersurface;
mod monomial;
mod poly;
mod roots;

pub use hypersurface::{
    frame_at, framed_rows, hasse_rows, sample_point_on, sample_point_on_with_budget,
    taylor_indices, Frame, Hypersurface, ProjPoint, DEFAULT_SAMPLING_BUDGET,
};
pub use monomial::{exponents_of_degree, exponents_up_to, hasse_eval, monomial_basis, MultiIndex};
pub use poly::Poly;
pub use roots::roots;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("no smooth point found after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    #[error("the point is singular on the hypersurface")]
    SingularPoint,
    #[error("the point does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error("a projective point needs at least two coordinates, not all zero")]
    ZeroPoint,
    #[error("invalid hypersurface: {0}")]
    BadHypersurface(String),
}
