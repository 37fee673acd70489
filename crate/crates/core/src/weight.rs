//! Weight vectors (per-symbol occurrence counts) and the gate classes they
//! induce: conservative, alternating-conservative, and modulo-k.

use crate::partition::ComponentPartition;
use crate::perm::{GatePerm, Parity};
use crate::word::degree;
use crate::{Error, Result, Word};

/// Symbol-count vector of a word: `counts[a]` is the multiplicity of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    counts: Vec<u32>,
}

impl WeightVector {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn word_length(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn reduce_mod(&self, k: u32) -> WeightVector {
        WeightVector {
            counts: self.counts.iter().map(|&c| c % k).collect(),
        }
    }
}

/// Weight of a word.
pub fn weight(w: &Word) -> WeightVector {
    let mut counts = vec![0u32; w.q() as usize];
    for &s in w.symbols() {
        counts[s as usize] += 1;
    }
    WeightVector { counts }
}

/// Partition of `A^n` by weight. Classes are indexed by their minimum word
/// code, so over `{0,1}` class `i` is exactly the words with `i` ones.
pub fn weight_classes(q: u32, n: usize) -> Result<ComponentPartition> {
    let deg = degree(q, n)?;
    let mut class_ids: std::collections::HashMap<WeightVector, u32> = std::collections::HashMap::new();
    let mut class_of = Vec::with_capacity(deg);
    for code in 0..deg {
        let w = weight(&Word::decode(code, n, q)?);
        let next = class_ids.len() as u32;
        class_of.push(*class_ids.entry(w).or_insert(next));
    }
    Ok(ComponentPartition::from_class_indices(q, n, class_of))
}

/// True iff `f` preserves the weight of every input word.
pub fn is_conservative(f: &GatePerm) -> bool {
    conservativity_witness(f).is_none()
}

/// First word code whose weight changes under `f`, if any.
pub fn conservativity_witness(f: &GatePerm) -> Option<usize> {
    let classes = weight_classes(f.q(), f.arity()).expect("degree already validated");
    (0..f.degree()).find(|&code| classes.class_of(code) != classes.class_of(f.apply_code(code)))
}

/// Parity of the restriction of `f` to one class of a partition it
/// preserves.
pub(crate) fn restriction_parity(f: &GatePerm, partition: &ComponentPartition, class: usize) -> Parity {
    let codes = partition.class_codes(class);
    let index_of = |code: usize| codes.binary_search(&code).unwrap();
    let mut seen = vec![false; codes.len()];
    let mut transpositions = 0usize;
    for start in 0..codes.len() {
        if seen[start] {
            continue;
        }
        let mut at = start;
        let mut len = 0usize;
        while !seen[at] {
            seen[at] = true;
            at = index_of(f.apply_code(codes[at]));
            len += 1;
        }
        transpositions += len - 1;
    }
    Parity::of_transposition_count(transpositions)
}

/// True iff `f` is conservative and restricts to an even permutation of
/// every weight class.
pub fn is_alt_conservative(f: &GatePerm) -> bool {
    if !is_conservative(f) {
        return false;
    }
    let classes = weight_classes(f.q(), f.arity()).expect("degree already validated");
    (0..classes.class_count()).all(|c| restriction_parity(f, &classes, c).is_even())
}

/// True iff `f` preserves the weight vector coordinatewise modulo `k`.
pub fn is_mod_k_conservative(f: &GatePerm, k: u32) -> Result<bool> {
    if k < 1 {
        return Err(Error::ZeroModulus);
    }
    for code in 0..f.degree() {
        let input = weight(&Word::decode(code, f.arity(), f.q())?).reduce_mod(k);
        let output = weight(&Word::decode(f.apply_code(code), f.arity(), f.q())?).reduce_mod(k);
        if input != output {
            return Ok(false);
        }
    }
    Ok(true)
}
