//! The bundled worked example.
//!
//! `G = C₂ = {1, s}` acting trivially on `E = {e₀, e₁}`, on `V = 𝕂²` with
//! `ρ_{(g,α)} = χ(g)·I` for the sign character `χ`, and
//! `λ_{(g,α)} = P_α ρ_g` where `P₀ = [[1,0],[0,0]]` and `P₁ = [[1,0],[1,0]]`.
//! The line `W = span{v₂}` is a subrepresentation whose extension
//! `0 → W → V → V/W → 0` does not split.

use std::sync::Arc;

use crate::digroup::{Digroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Vector};
use crate::ext::ShortExactSeq;
use crate::reps::Representation;

/// Names accepted by [`named`].
pub const EXAMPLE_NAMES: &[&str] = &["worked"];

pub fn worked_digroup() -> Arc<Digroup> {
    Arc::new(Digroup::trivial_action(FiniteGroup::cyclic(2).expect("C2"), 2).expect("trivial action"))
}

pub fn worked_representation(field: Field) -> Representation {
    let p = [
        Matrix::from_i64(field, &[&[1, 0], &[0, 0]]),
        Matrix::from_i64(field, &[&[1, 0], &[1, 0]]),
    ];
    let rho = [
        Matrix::identity(field, 2),
        Matrix::from_i64(field, &[&[-1, 0], &[0, -1]]),
    ];
    Representation::from_factored(worked_digroup(), field, 2, &p, &rho).expect("worked example is a representation")
}

/// `{v₂}`.
pub fn worked_subspace(field: Field) -> Vec<Vector> {
    vec![vec![field.zero(), field.one()]]
}

pub fn worked_sequence(field: Field) -> ShortExactSeq {
    ShortExactSeq::from_subspace(&worked_representation(field), &worked_subspace(field)).expect("W is stable")
}

/// The representation and subspace registered under `name`.
pub fn named(name: &str, field: Field) -> Result<(Representation, Vec<Vector>)> {
    match name {
        "worked" => Ok((worked_representation(field), worked_subspace(field))),
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}
