//! Gates: bijections of `A^n` stored as image tables over word codes.

use crate::word::degree;
use crate::{Error, Result, Word};

/// Parity of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_transposition_count(count: usize) -> Parity {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

/// An `n`-ary gate over `{0..q-1}`: `table[i]` is the code of the image of
/// the word with code `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GatePerm {
    q: u32,
    n: usize,
    table: Vec<u32>,
}

impl GatePerm {
    /// Build from an explicit image table, verifying it is a bijection.
    pub fn from_table(q: u32, n: usize, table: Vec<u32>) -> Result<Self> {
        if q < 2 {
            return Err(Error::AlphabetTooSmall(q));
        }
        if n == 0 {
            return Err(Error::ZeroArity);
        }
        let deg = degree(q, n)?;
        if table.len() != deg {
            return Err(Error::NotABijection { len: table.len() });
        }
        let mut seen = vec![false; deg];
        for &v in &table {
            let v = v as usize;
            if v >= deg || seen[v] {
                return Err(Error::NotABijection { len: deg });
            }
            seen[v] = true;
        }
        Ok(GatePerm { q, n, table })
    }

    pub fn identity(q: u32, n: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::AlphabetTooSmall(q));
        }
        if n == 0 {
            return Err(Error::ZeroArity);
        }
        let deg = degree(q, n)?;
        Ok(GatePerm {
            q,
            n,
            table: (0..deg as u32).collect(),
        })
    }

    /// The cycle `(w_1 w_2 ... w_k)` on words of `A^n`, fixing everything
    /// else. Words must be pairwise distinct and of uniform length `n`.
    pub fn from_word_cycle(q: u32, n: usize, cycle: &[Word]) -> Result<Self> {
        let mut g = GatePerm::identity(q, n)?;
        if cycle.is_empty() {
            return Ok(g);
        }
        let mut codes = Vec::with_capacity(cycle.len());
        for w in cycle {
            if w.q() != q {
                return Err(Error::AlphabetMismatch(w.q(), q));
            }
            if w.len() != n {
                return Err(Error::LengthMismatch(w.len(), n));
            }
            codes.push(w.encode());
        }
        for (i, &c) in codes.iter().enumerate() {
            if codes[i + 1..].contains(&c) {
                return Err(Error::NotABijection { len: g.degree() });
            }
            g.table[c] = codes[(i + 1) % codes.len()] as u32;
        }
        Ok(g)
    }

    /// Swap of two words, a convenience wrapper over [`GatePerm::from_word_cycle`].
    pub fn word_swap(q: u32, n: usize, u: &Word, v: &Word) -> Result<Self> {
        GatePerm::from_word_cycle(q, n, &[u.clone(), v.clone()])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply_code(&self, code: usize) -> usize {
        self.table[code] as usize
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.q() != self.q {
            return Err(Error::AlphabetMismatch(w.q(), self.q));
        }
        if w.len() != self.n {
            return Err(Error::LengthMismatch(w.len(), self.n));
        }
        Word::decode(self.apply_code(w.encode()), self.n, self.q)
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self` applied first, then `g` (composition read left to right).
    pub fn compose_lr(&self, g: &GatePerm) -> Result<GatePerm> {
        if self.q != g.q {
            return Err(Error::AlphabetMismatch(self.q, g.q));
        }
        if self.n != g.n {
            return Err(Error::ArityMismatch(self.n, g.n));
        }
        let table = self.table.iter().map(|&v| g.table[v as usize]).collect();
        Ok(GatePerm {
            q: self.q,
            n: self.n,
            table,
        })
    }

    pub fn inverse(&self) -> GatePerm {
        let mut table = vec![0u32; self.table.len()];
        for (i, &v) in self.table.iter().enumerate() {
            table[v as usize] = i as u32;
        }
        GatePerm {
            q: self.q,
            n: self.n,
            table,
        }
    }

    /// Parity via cycle decomposition: a cycle of length `k` contributes
    /// `k - 1` transpositions.
    pub fn parity(&self) -> Parity {
        let mut seen = vec![false; self.table.len()];
        let mut transpositions = 0usize;
        for start in 0..self.table.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.table[at] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        Parity::of_transposition_count(transpositions)
    }

    /// Order of the element: lcm of its cycle lengths.
    pub fn element_order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut seen = vec![false; self.table.len()];
        let mut order = 1u64;
        for start in 0..self.table.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.table[at] as usize;
                len += 1;
            }
            order = order / gcd(order, len) * len;
        }
        order
    }

    /// All `q^n` words in code order, paired with their images.
    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.table.iter().enumerate().map(|(i, &v)| (i, v as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_gate;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_is_even() {
        for q in 2..=3 {
            for n in 1..=3 {
                assert_eq!(GatePerm::identity(q, n).unwrap().parity(), Parity::Even);
            }
        }
    }

    #[test]
    fn word_swap_is_odd() {
        let u = Word::from_digits(2, "01").unwrap();
        let v = Word::from_digits(2, "10").unwrap();
        let g = GatePerm::word_swap(2, 2, &u, &v).unwrap();
        assert_eq!(g.parity(), Parity::Odd);
        assert!(g.compose_lr(&g).unwrap().is_identity());
    }

    #[test]
    fn parity_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let f = random_gate(&mut rng, 2, 3);
            let g = random_gate(&mut rng, 2, 3);
            assert_eq!(
                f.compose_lr(&g).unwrap().parity(),
                f.parity().xor(g.parity())
            );
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let f = random_gate(&mut rng, 3, 2);
            assert!(f.compose_lr(&f.inverse()).unwrap().is_identity());
            assert!(f.inverse().compose_lr(&f).unwrap().is_identity());
        }
    }

    #[test]
    fn from_table_validates() {
        assert!(GatePerm::from_table(2, 1, vec![0, 0]).is_err());
        assert!(GatePerm::from_table(2, 1, vec![0, 2]).is_err());
        assert!(GatePerm::from_table(2, 1, vec![1, 0]).is_ok());
        assert!(matches!(GatePerm::identity(2, 0), Err(Error::ZeroArity)));
    }

    #[test]
    fn element_order_matches_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let f = random_gate(&mut rng, 2, 3);
            let ord = f.element_order();
            let mut acc = f.clone();
            for _ in 1..ord {
                assert!(!acc.is_identity());
                acc = acc.compose_lr(&f).unwrap();
            }
            assert!(acc.is_identity());
        }
    }
}
