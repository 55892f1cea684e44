//! Exact computation of interpolation-matrix determinants for point
//! configurations in the projective plane, detection of their forced
//! components, and an independent splitting-type check on the dual line
//! arrangement.

pub mod analysis;
pub mod cli;
pub mod exactalg;
pub mod geometry;
pub mod interp;
pub mod logbundle;
