//! Doubly symmetric knot diagrams: long planar curves, parterre templates,
//! diagram synthesis and polynomial invariants.

pub mod census;
pub mod curves;
pub mod diagrams;
pub mod error;
pub mod gauss;
pub mod invariants;
pub mod templates;

pub use census::{enumerate_diagrams, run_census, CensusOptions, CensusReport, CensusRow, RunCache, SynthesizedDiagram};
pub use curves::{ArcTag, CombinatorialMap, CurveKey, LongCurve, MapMode, Sign, SignedGaussCode};
pub use diagrams::{KnotDiagramTemplate, PlanarDiagramCode, TwistVector};
pub use error::{Error, Result};
pub use gauss::{DtCode, GaussWord, PairMatrix, StarClass};
pub use invariants::{IdentificationResult, KnotRecord, KnotTable, LaurentPolynomial};
pub use templates::{Axis, ParterreTemplate, Region, SeparatorPlacement, TwistMarker};
