//! Exact computer algebra for compound Du Val singularities: the explicit
//! splitting lemma, cA_n classification, sextic double solid families with a
//! cA_n point and rank-2 toric links.

pub mod error;
pub mod poly;
pub mod sds;
pub mod singularity;
pub mod splitting;
pub mod toric;

pub use error::{Error, Result};
pub use poly::{parse, Mono, Poly, Rat, VarTable, Weight};
