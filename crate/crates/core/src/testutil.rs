//! Shared helpers for unit tests: seeded random gates and words.

use crate::perm::GatePerm;
use crate::weight::weight_classes;
use crate::word::degree;
use crate::Word;
use rand::prelude::*;

pub(crate) fn random_gate(rng: &mut impl Rng, q: u32, n: usize) -> GatePerm {
    let deg = degree(q, n).unwrap();
    let mut table: Vec<u32> = (0..deg as u32).collect();
    table.shuffle(rng);
    GatePerm::from_table(q, n, table).unwrap()
}

/// Random conservative gate: an independent shuffle of each weight class.
pub(crate) fn random_conservative(rng: &mut impl Rng, q: u32, n: usize) -> GatePerm {
    let classes = weight_classes(q, n).unwrap();
    let mut table: Vec<u32> = (0..degree(q, n).unwrap() as u32).collect();
    for c in 0..classes.class_count() {
        let codes = classes.class_codes(c);
        let mut images: Vec<usize> = codes.clone();
        images.shuffle(rng);
        for (&src, &dst) in codes.iter().zip(images.iter()) {
            table[src] = dst as u32;
        }
    }
    GatePerm::from_table(q, n, table).unwrap()
}

pub(crate) fn w(q: u32, digits: &str) -> Word {
    Word::from_digits(q, digits).unwrap()
}
