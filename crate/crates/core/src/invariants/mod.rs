//! Exact polynomial invariants of planar diagrams and identification against
//! a reference table.

mod alexander;
mod bracket;
mod poly;
mod table;

use serde::{Deserialize, Serialize};

use crate::diagrams::{simplify, PlanarDiagramCode};
use crate::error::Result;

pub use alexander::{alexander, determinant_of as determinant, double_cover_homology, normalize as normalize_alexander};
pub use bracket::{jones, kauffman_bracket};
pub use poly::LaurentPolynomial;
pub use table::{identify, IdentificationResult, KnotRecord, KnotTable};

/// Jones and Alexander polynomials with the determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Invariants {
    pub jones: LaurentPolynomial,
    pub alexander: LaurentPolynomial,
    pub determinant: u64,
}

impl Invariants {
    /// Computed on the R1/R2-simplified diagram.
    pub fn of(pd: &PlanarDiagramCode) -> Result<Self> {
        let small = simplify(pd);
        let alexander = alexander(&small)?;
        let determinant = u64::try_from(alexander.eval_minus_one().magnitude().clone()).expect("small determinant");
        Ok(Invariants { jones: jones(&small)?, alexander, determinant })
    }
}
