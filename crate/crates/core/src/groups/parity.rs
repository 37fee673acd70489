//! Parity sequences of conservative gates: the per-weight-class parity of
//! the restrictions, a homomorphism into `(Z_2)^W` whose bounded image
//! obstructs finite generation of the conservative gates.

use crate::algebra::parallel;
use crate::perm::{GatePerm, Parity};
use crate::weight::{conservativity_witness, restriction_parity, weight_classes};
use crate::{Error, Result, Word};

/// One parity bit per weight class of `A^n`, indexed like
/// [`weight_classes`]: class `i` over `{0,1}` holds the words with `i`
/// ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParitySequence {
    bits: Vec<Parity>,
}

impl ParitySequence {
    pub fn all_even(classes: usize) -> ParitySequence {
        ParitySequence {
            bits: vec![Parity::Even; classes],
        }
    }

    pub fn bits(&self) -> &[Parity] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_all_even(&self) -> bool {
        self.bits.iter().all(|b| b.is_even())
    }

    pub fn xor(&self, other: &ParitySequence) -> ParitySequence {
        ParitySequence {
            bits: self
                .bits
                .iter()
                .zip(other.bits.iter())
                .map(|(&a, &b)| a.xor(b))
                .collect(),
        }
    }

    /// The indicator sequence that is odd exactly at `class`.
    pub fn indicator(classes: usize, class: usize) -> ParitySequence {
        let mut bits = vec![Parity::Even; classes];
        bits[class] = Parity::Odd;
        ParitySequence { bits }
    }
}

/// Parity sequence of a conservative gate.
pub fn parity_sequence(f: &GatePerm) -> Result<ParitySequence> {
    if let Some(witness) = conservativity_witness(f) {
        return Err(Error::NotConservative { witness });
    }
    let classes = weight_classes(f.q(), f.arity())?;
    Ok(ParitySequence {
        bits: (0..classes.class_count())
            .map(|c| restriction_parity(f, &classes, c))
            .collect(),
    })
}

/// Parity sequence of the extension `f (+) id` on `n` wires. Rewirings do
/// not change it, so this is the sequence of every extension of `f`.
pub fn parity_sequence_on(f: &GatePerm, n: usize) -> Result<ParitySequence> {
    if f.arity() > n {
        return Err(Error::ArityMismatch(f.arity(), n));
    }
    if f.arity() == n {
        return parity_sequence(f);
    }
    let widened = parallel(f, &GatePerm::identity(f.q(), n - f.arity())?)?;
    parity_sequence(&widened)
}

/// The subgroup of `(Z_2)^W` generated by the parity sequences of all
/// extensions of the generators to `n` wires, as an explicit sorted set.
/// Its size is a power of two, at most `2^m` for `m` generators.
pub fn parity_span(gens: &[GatePerm], n: usize) -> Result<Vec<ParitySequence>> {
    let class_count = if let Some(g) = gens.first() {
        weight_classes(g.q(), n)?.class_count()
    } else {
        // no generators: the span over any alphabet is just the zero vector;
        // use the binary alphabet's class count for a defined shape
        weight_classes(2, n)?.class_count()
    };
    let mut span = vec![ParitySequence::all_even(class_count)];
    for g in gens {
        let v = parity_sequence_on(g, n)?;
        if !span.contains(&v) {
            let mut extended = span.clone();
            for e in &span {
                extended.push(e.xor(&v));
            }
            span = extended;
        }
    }
    span.sort();
    Ok(span)
}

/// A conservative gate provably outside the group generated by all
/// extensions of `gens` to `n` wires: a word swap inside one binary weight
/// class whose indicator sequence escapes the parity span.
///
/// Candidates are the classes `c_i` of words with `i` ones and `n - i`
/// zeros, `i = 1 ..= N + 1` for a span of size `N`; the pigeonhole
/// guarantees a witness whenever `n >= N + 2`.
pub fn find_unreachable_conservative(gens: &[GatePerm], n: usize) -> Result<GatePerm> {
    let q = gens.first().map(|g| g.q()).unwrap_or(2);
    for g in gens {
        if let Some(witness) = conservativity_witness(g) {
            return Err(Error::NotConservative { witness });
        }
    }
    let span = parity_span(gens, n)?;
    let classes = weight_classes(q, n)?;
    let max_ones = (span.len() + 1).min(n.saturating_sub(1));
    for ones in 1..=max_ones {
        // the class of 0^(n-i) 1^i
        let rep = Word::new(q, {
            let mut s = vec![0u32; n];
            for v in s.iter_mut().skip(n - ones) {
                *v = 1;
            }
            s
        })?;
        let class = classes.class_of(rep.encode());
        let indicator = ParitySequence::indicator(classes.class_count(), class);
        if span.binary_search(&indicator).is_err() {
            let codes = classes.class_codes(class);
            let u = Word::decode(codes[0], n, q)?;
            let v = Word::decode(codes[1], n, q)?;
            return GatePerm::word_swap(q, n, &u, &v);
        }
    }
    Err(Error::WitnessNotFound)
}
