//! The gate mini-language used by flags: common gates without writing
//! circuit files.
//!
//! ```text
//! swap:a,b                 symbol swap (a b), one wire
//! cycle:u,v,w              3-word-cycle on the given digit words
//! rot3                     three-wire rotation (content moves up)
//! fredkin                  1-word-controlled wire swap, three wires
//! toffoli                  11-word-controlled symbol swap, three wires
//! controlled:<word>:<spec> control word prefixed onto any of the above
//! ```

use revgate::algebra::{controlled, fredkin, toffoli, ControlledSpec};
use revgate::constructions::three_wire_rotation;
use revgate::{GatePerm, Word};

pub fn parse_gate(q: u32, text: &str) -> Result<GatePerm, String> {
    let (kind, rest) = match text.split_once(':') {
        Some((k, r)) => (k, r),
        None => (text, ""),
    };
    match kind {
        "swap" => {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| format!("swap needs two symbols, got `{rest}`"))?;
            let a: u32 = a.trim().parse().map_err(|_| format!("bad symbol `{a}`"))?;
            let b: u32 = b.trim().parse().map_err(|_| format!("bad symbol `{b}`"))?;
            let u = Word::new(q, vec![a]).map_err(|e| e.to_string())?;
            let v = Word::new(q, vec![b]).map_err(|e| e.to_string())?;
            GatePerm::word_swap(q, 1, &u, &v).map_err(|e| e.to_string())
        }
        "cycle" => {
            let words: Vec<Word> = rest
                .split(',')
                .map(|part| Word::from_digits(q, part.trim()).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            if words.len() != 3 {
                return Err(format!("cycle needs three words, got {}", words.len()));
            }
            let n = words[0].len();
            GatePerm::from_word_cycle(q, n, &words).map_err(|e| e.to_string())
        }
        "rot3" => Ok(three_wire_rotation(q)),
        "fredkin" => {
            if q != 2 {
                return Err("fredkin is a binary gate; use --q 2".into());
            }
            Ok(fredkin())
        }
        "toffoli" => {
            if q != 2 {
                return Err("toffoli is a binary gate; use --q 2".into());
            }
            Ok(toffoli())
        }
        "controlled" => {
            let (word, inner) = rest
                .split_once(':')
                .ok_or_else(|| "controlled needs `controlled:<word>:<spec>`".to_string())?;
            let control = if word == "-" {
                Word::empty(q).map_err(|e| e.to_string())?
            } else {
                Word::from_digits(q, word).map_err(|e| e.to_string())?
            };
            let base = parse_gate(q, inner)?;
            controlled(&ControlledSpec::new(control, base).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())
        }
        other => Err(format!(
            "unknown gate spec `{other}` (expected swap, cycle, rot3, fredkin, toffoli, controlled)"
        )),
    }
}

/// A controlled spec for search bases: `controlled:<word>:<spec>` keeps its
/// structure, anything else becomes a gate with an empty control word.
pub fn parse_controlled_spec(q: u32, text: &str) -> Result<ControlledSpec, String> {
    if let Some(rest) = text.strip_prefix("controlled:") {
        let (word, inner) = rest
            .split_once(':')
            .ok_or_else(|| "controlled needs `controlled:<word>:<spec>`".to_string())?;
        let control = if word == "-" {
            Word::empty(q).map_err(|e| e.to_string())?
        } else {
            Word::from_digits(q, word).map_err(|e| e.to_string())?
        };
        let base = parse_gate(q, inner)?;
        return ControlledSpec::new(control, base).map_err(|e| e.to_string());
    }
    let gate = parse_gate(q, text)?;
    ControlledSpec::new(Word::empty(q).map_err(|e| e.to_string())?, gate)
        .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_gates() {
        assert_eq!(parse_gate(2, "swap:0,1").unwrap().table(), &[1, 0]);
        assert_eq!(parse_gate(2, "fredkin").unwrap(), fredkin());
        assert_eq!(parse_gate(2, "toffoli").unwrap(), toffoli());
        let rot = parse_gate(2, "controlled:0:rot3").unwrap();
        assert_eq!(rot.arity(), 4);
        let cyc = parse_gate(2, "cycle:001,010,100").unwrap();
        assert_eq!(cyc.arity(), 3);
        assert!(parse_gate(2, "bogus").is_err());
        assert!(parse_gate(3, "fredkin").is_err());
    }
}
