//! Finite category theory for adjoint descent: Grothendieck constructions,
//! lax limits and pseudolimits of diagrams of finite categories, descent
//! adjunctions with explicit unit and counit, conjugate counting, and
//! solvers for nonabelian H¹, double cosets, Čech H¹, lim¹ and colimit
//! decompositions.

pub mod budget;
pub mod cli;
pub mod cohom;
pub mod conj;
pub mod descent;
pub mod error;
pub mod fincat;
pub mod groth;
pub mod json;
pub mod random;
pub mod samples;

pub use budget::Budget;
pub use error::{Error, Result};
