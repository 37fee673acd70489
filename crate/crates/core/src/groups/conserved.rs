//! Validity check for generalized conserved quantities: a family of
//! equivalence relations, one per word length, that is compatible with
//! appending symbols and invariant under wire permutations.

use crate::word::degree;
use crate::{Result, Word};

/// Exhaustively verify, for all word lengths up to `n_max`, that the
/// classifier's classes satisfy
///
/// * compatible: `u ~ v` implies `ua ~ va` for every symbol `a`, and
/// * permutable: `u ~ v` implies `pi(u) ~ pi(v)` for every wire
///   permutation `pi` (adjacent wire swaps generate them all).
pub fn check_conserved_quantity(
    classifier: &dyn Fn(&Word) -> u64,
    q: u32,
    n_max: usize,
) -> Result<bool> {
    for len in 0..=n_max {
        let deg = degree(q, len)?;
        let labels: Vec<u64> = (0..deg)
            .map(|code| Ok(classifier(&Word::decode(code, len, q)?)))
            .collect::<Result<_>>()?;

        // compatible: the label of u*a must be a function of (label of u, a)
        if len < n_max {
            let mut image: std::collections::HashMap<(u64, u32), u64> =
                std::collections::HashMap::new();
            for (code, &label) in labels.iter().enumerate() {
                for a in 0..q {
                    let extended = code * q as usize + a as usize;
                    let extended_label =
                        classifier(&Word::decode(extended, len + 1, q)?);
                    match image.entry((label, a)) {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(extended_label);
                        }
                        std::collections::hash_map::Entry::Occupied(e) => {
                            if *e.get() != extended_label {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }

        // permutable: each adjacent swap must map classes to classes
        for swap_at in 0..len.saturating_sub(1) {
            let mut image: std::collections::HashMap<u64, u64> =
                std::collections::HashMap::new();
            for (code, &label) in labels.iter().enumerate() {
                let w = Word::decode(code, len, q)?;
                let mut s = w.symbols().to_vec();
                s.swap(swap_at, swap_at + 1);
                let swapped = Word::new(q, s)?.encode();
                match image.entry(label) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(labels[swapped]);
                    }
                    std::collections::hash_map::Entry::Occupied(e) => {
                        if *e.get() != labels[swapped] {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::weight;

    #[test]
    fn weight_is_a_conserved_quantity() {
        let classifier = |w: &Word| {
            let mut key = 0u64;
            for &c in weight(w).counts() {
                key = key * 64 + c as u64;
            }
            key
        };
        assert!(check_conserved_quantity(&classifier, 2, 6).unwrap());
        assert!(check_conserved_quantity(&classifier, 3, 4).unwrap());
    }

    #[test]
    fn zeros_exact_ones_mod_k_is_conserved() {
        for k in 2..=3u64 {
            let classifier = move |w: &Word| {
                let counts = weight(w);
                counts.counts()[0] as u64 * 1000 + (counts.counts()[1] as u64 % k)
            };
            assert!(check_conserved_quantity(&classifier, 3, 5).unwrap());
        }
    }

    #[test]
    fn first_symbol_is_not_permutable() {
        let classifier = |w: &Word| w.symbols().first().copied().unwrap_or(0) as u64;
        assert!(!check_conserved_quantity(&classifier, 2, 4).unwrap());
    }
}
