//! Exact computation of black-white polynomials of multigraphs and the
//! generating functions that organize them: rational transfer-matrix series
//! for recursively built graph families, the exponential generating function
//! over all multigraphs via a formal pairing measure, and fixed-loop-number
//! series with their tree substitutions.

pub mod families;
pub mod feynman;
pub mod graphcore;
pub mod poly;
pub mod series;
pub mod wright;
