//! Exact computations for representations of generalized digroups.
//!
//! A generalized digroup is modelled as `D = G × E`, a finite group acting on
//! a finite set of bar-units. Representations are pairs of operator families
//! `λ, ρ` on a vector space over ℚ or 𝔽_p. The crate builds the enveloping
//! algebra and the halo algebra, decides splitting of short exact sequences,
//! computes `Ext¹` three independent ways, and checks the induction adjunction.
//! All arithmetic is exact.

pub mod digroup;
pub mod envalg;
pub mod error;
pub mod exactla;
pub mod example;
pub mod ext;
pub mod format;
pub mod generate;
pub mod halo;
pub mod linsys;
pub mod report;
pub mod reps;

pub use digroup::{Digroup, Element, FiniteGroup, GAction};
pub use error::{Error, Result};
pub use exactla::{Field, Matrix, Scalar, Vector};
pub use ext::{CocycleFamily, ShortExactSeq};
pub use report::{AxiomCheck, AxiomReport};
pub use reps::Representation;
