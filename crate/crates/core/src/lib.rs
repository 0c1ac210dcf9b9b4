//! Finite affine planes, their dilation and translation groups, and the
//! skew-field of trace-preserving endomorphisms of the translation group.
//!
//! The pipeline is: build or load a plane ([`builders`], [`incidence`]),
//! enumerate its translations and dilations ([`collineation`]), pack the
//! translations into a Cayley table ([`trgroup`]), and work with
//! endomorphisms of that group as index tables ([`endo`], [`skewfield`]).

pub mod builders;
pub mod cli;
pub mod collineation;
pub mod endo;
pub mod field;
pub mod incidence;
pub mod report;
pub mod skewfield;
pub mod trgroup;
