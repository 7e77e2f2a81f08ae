//! Fixed inputs shared by the benchmarks.

use digroup_core::example;
use digroup_core::generate::Generator;
use digroup_core::{Field, Representation, ShortExactSeq};

/// A named `(Q, W)` pair with an extension of `Q` by `W`.
pub struct Fixture {
    pub name: &'static str,
    pub quotient: Representation,
    pub sub: Representation,
    pub extension: ShortExactSeq,
}

pub fn worked() -> Fixture {
    let ses = example::worked_sequence(Field::Rational);
    Fixture {
        name: "worked",
        quotient: ses.quotient().clone(),
        sub: ses.sub().clone(),
        extension: ses,
    }
}

/// A seeded pair at the given sizes.
pub fn seeded(name: &'static str, seed: u64, group_order: usize, halo_size: usize, max_dim: usize) -> Fixture {
    let mut g = Generator::new(seed, Field::Rational);
    let p = g
        .pair(group_order, halo_size, max_dim)
        .expect("sizes within generator caps");
    let extension = g.extension(&p.quotient, &p.sub).expect("generated extension");
    Fixture {
        name,
        quotient: p.quotient,
        sub: p.sub,
        extension,
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        worked(),
        seeded("C3xE2_dim2", 3, 3, 2, 2),
        seeded("G6xE3_dim3", 6, 6, 3, 3),
    ]
}
