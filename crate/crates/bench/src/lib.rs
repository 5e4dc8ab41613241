//! Shared inputs for the criterion benches.

use graded_ll::clifford::{build_rep, MatrixRep};
use graded_ll::spectrum::Grid;

pub fn rep_one() -> MatrixRep {
    build_rep(1).expect("d = 1 representation")
}

/// The desk-scale grid used by the numeric acceptance check.
pub fn desk_grid() -> Grid {
    Grid::new(12.0, 800).expect("valid grid")
}
