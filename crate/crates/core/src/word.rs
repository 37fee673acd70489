//! Words over a finite alphabet and their radix encoding.
//!
//! Symbols are integers `0..q-1`. A word `x_1 x_2 ... x_n` is encoded
//! big-endian: the leftmost symbol is the most significant digit, so code
//! order equals lexicographic order of words.

use crate::{Error, Result, MAX_DEGREE};

/// A finite alphabet `{0, ..., q-1}` with `q >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    q: u32,
}

impl Alphabet {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::AlphabetTooSmall(q));
        }
        Ok(Alphabet { q })
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// `q^n` as a table length, refusing sizes over [`MAX_DEGREE`].
    pub fn degree(&self, n: usize) -> Result<usize> {
        degree(self.q, n)
    }
}

/// `q^n`, checked against the degree cap.
pub fn degree(q: u32, n: usize) -> Result<usize> {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc *= q as u128;
        if acc > MAX_DEGREE as u128 {
            return Err(Error::DegreeTooLarge {
                degree: acc,
                cap: MAX_DEGREE,
            });
        }
    }
    Ok(acc as usize)
}

/// A word over `{0..q-1}`; the empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    q: u32,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Self> {
        if q < 2 {
            return Err(Error::AlphabetTooSmall(q));
        }
        for &s in &symbols {
            if s >= q {
                return Err(Error::SymbolOutOfRange { symbol: s, q });
            }
        }
        Ok(Word { q, symbols })
    }

    pub fn empty(q: u32) -> Result<Self> {
        Word::new(q, Vec::new())
    }

    /// Parse a word from digits, e.g. `"012"`; valid for `q <= 10`.
    pub fn from_digits(q: u32, digits: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(digits.len());
        for c in digits.chars() {
            let d = c.to_digit(10).ok_or(Error::SymbolOutOfRange {
                symbol: u32::MAX,
                q,
            })?;
            symbols.push(d);
        }
        Word::new(q, symbols)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Radix code of the word, leftmost symbol most significant.
    pub fn encode(&self) -> usize {
        let mut code = 0usize;
        for &s in &self.symbols {
            code = code * self.q as usize + s as usize;
        }
        code
    }

    /// Inverse of [`Word::encode`] for a word of length `n`.
    pub fn decode(code: usize, n: usize, q: u32) -> Result<Self> {
        let deg = degree(q, n)?;
        if code >= deg {
            return Err(Error::CodeOutOfRange { code, n, q });
        }
        let mut symbols = vec![0u32; n];
        let mut rest = code;
        for i in (0..n).rev() {
            symbols[i] = (rest % q as usize) as u32;
            rest /= q as usize;
        }
        Ok(Word { q, symbols })
    }

    /// Concatenation `self ++ other` over the same alphabet.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.q != other.q {
            return Err(Error::AlphabetMismatch(self.q, other.q));
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(Word {
            q: self.q,
            symbols,
        })
    }

    /// Render as a digit string (`q <= 10`) or comma-separated symbols.
    pub fn display(&self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        if self.q <= 10 {
            self.symbols.iter().map(|s| s.to_string()).collect()
        } else {
            self.symbols
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        assert_eq!(Word::from_digits(2, "00").unwrap().encode(), 0);
        assert_eq!(Word::from_digits(2, "10").unwrap().encode(), 2);
        // independent positional sum: 0*9 + 1*3 + 2
        let w = Word::from_digits(3, "012").unwrap();
        let oracle: usize = w
            .symbols()
            .iter()
            .enumerate()
            .map(|(i, &s)| s as usize * 3usize.pow((w.len() - 1 - i) as u32))
            .sum();
        assert_eq!(oracle, 5);
        assert_eq!(w.encode(), 5);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(Word::decode(0, 2, 2).unwrap(), Word::from_digits(2, "00").unwrap());
        assert_eq!(Word::decode(2, 2, 2).unwrap(), Word::from_digits(2, "10").unwrap());
        assert_eq!(Word::decode(5, 3, 3).unwrap(), Word::from_digits(3, "012").unwrap());
        assert!(matches!(
            Word::decode(9, 2, 3),
            Err(Error::CodeOutOfRange { .. })
        ));
    }

    #[test]
    fn roundtrip_all_small() {
        for q in 2..=4u32 {
            for n in 0..=4usize {
                for code in 0..degree(q, n).unwrap() {
                    let w = Word::decode(code, n, q).unwrap();
                    assert_eq!(w.encode(), code);
                }
            }
        }
    }

    #[test]
    fn degree_cap_enforced() {
        assert!(degree(2, 24).is_ok());
        assert!(matches!(degree(2, 25), Err(Error::DegreeTooLarge { .. })));
        assert!(matches!(degree(3, 20), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn rejects_bad_symbols() {
        assert!(Word::new(2, vec![0, 2]).is_err());
        assert!(Word::new(1, vec![]).is_err());
    }
}
