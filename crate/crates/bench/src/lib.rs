//! Fixtures shared by the benchmarks.

use ivi_core::constructions::hodge_tate_orbit;
use ivi_core::{Mat, NilpotentOrbit};

/// The weight-two Hodge–Tate tower with `n` copies and its nilpotent.
pub fn tower(n: usize) -> (NilpotentOrbit, Mat) {
    let orbit = hodge_tate_orbit(2, n).expect("Hodge–Tate towers always build");
    let n0 = orbit.cone.generators()[0].clone();
    (orbit, n0)
}
