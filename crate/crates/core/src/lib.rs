//! Exact algorithms for snark parameters of cubic graphs: edge colourings of
//! `G + ΣM_i`, perfect matching index, `l(G)` and `l_M(G)`, frumiousness,
//! shortest cycle covers and cycle double covers, plus generators for the
//! graph families involved.
//!
//! All searches are exhaustive and deterministic. Every positive answer
//! carries a witness that can be re-validated without searching again.

pub mod coloring;
pub mod constructions;
pub mod cycles;
pub mod error;
pub mod graph;
pub mod matching;
pub mod parameters;

pub use coloring::{MultiColoring, SolveReport, SolverOptions, Verdict};
pub use cycles::CycleCover;
pub use error::{Error, Result};
pub use graph::{EdgeCut, EdgeSet, KPole, Multigraph};
pub use matching::{MatchingList, PmIndex};
pub use parameters::{FrumiousReport, FrumiousVerdict, LValue, LatticeVerdict, LmValue};
