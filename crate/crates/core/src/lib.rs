//! Exact computer algebra for rank-one ideals of the first Weyl algebra and
//! the matrix quadruples (Calogero-Moser points) that classify them.

pub mod cm;
pub mod envelope;
pub mod error;
pub mod free;
pub mod groebner;
pub mod json;
pub mod lincomb;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod resolution;
pub mod skew;
pub mod theta;
pub mod weyl;

pub use cm::{equivalent, CMPoint, Equivalence, LambdaTable};
pub use envelope::{
    build_dg_envelope, build_envelope, check_ainf_axioms, restrict_dg_to_ainf,
    structure_maps_equal, AinfStructure, Envelope, Report,
};
pub use error::{Error, Result};
pub use free::{AutGenerator, Automorphism, FreeElement};
pub use groebner::{groebner, normal_form, staircase_complement_in, RightIdealGB};
pub use json::Json;
pub use matrix::{Matrix, RatMatrix};
pub use poly::UniPoly;
pub use rat::Rat;
pub use ratfun::RatFun;
pub use resolution::{delta_x, delta_y, gmap_image, omega_ideal, IdealPresentation, Side};
pub use skew::{Chirality, Projection, SkewSum};
pub use theta::{theta, ThetaOptions, ThetaOutput, TieBreak};
pub use weyl::{Exp, WeylElement};
