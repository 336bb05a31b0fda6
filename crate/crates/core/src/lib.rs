//! Bound states, capture depths, phase shifts, Wigner delays and resonance poles
//! of a 2-D Dirac particle in a circular electrostatic well.

pub mod io;
pub mod model;
pub mod rootfind;
pub mod scans;
pub mod specfun;
