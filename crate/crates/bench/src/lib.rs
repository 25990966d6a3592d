//! Fixtures shared by the pipeline benchmarks.

use parterre::{enumerate_diagrams, CensusOptions, PlanarDiagramCode};

/// The largest synthesized diagrams within `budget`, in enumeration order.
pub fn largest_diagrams(budget: usize, count: usize) -> Vec<PlanarDiagramCode> {
    let (_, all) = enumerate_diagrams(&CensusOptions::new(budget)).expect("budget within guard");
    let top = all.iter().map(|d| d.pd.len()).max().unwrap_or(0);
    all.into_iter().map(|d| d.pd).filter(|pd| pd.len() == top).take(count).collect()
}
