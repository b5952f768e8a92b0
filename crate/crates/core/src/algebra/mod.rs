//! Exact polynomials, real algebraic numbers, cyclotomic tests and Perron data.

pub mod cyclo;
pub mod perron;
pub mod poly;
pub mod real;

pub use cyclo::{cyclotomic, is_rational_cosine, is_rational_cosine_capped, RationalCosine};
pub use perron::{perron_data, PerronData};
pub use poly::{q_frac, q_int, RatPoly, Q};
pub use real::{alg_arith, isolate_dominant_root, AlgReal, ArithOp, ArithResult};
