//! Circuit data model: named gate definitions, wired instances, simulation,
//! and a bit-exact line-oriented text format.
//!
//! A circuit denotes a composition in application order: the first listed
//! instance applies first. Wire indices are 0-based; in the diagrams of the
//! fixed decompositions the bottommost wire is wire 0.
//!
//! Text format (`#` starts a comment):
//!
//! ```text
//! revgate v1
//! alphabet <q>
//! wires <n>
//! gate <name> table <space-separated image codes>
//! gate <name> controlled <control-word> base <codes>
//! gate <name> wireperm <image list>
//! apply <name> <wire,wire,...>
//! ```
//!
//! Application order is file order. Control words are digit strings for
//! `q <= 10`, comma-separated otherwise, and `-` for the empty word.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::algebra::{controlled, extend, wire_perm, ControlledSpec, WirePermSpec};
use crate::perm::GatePerm;
use crate::word::degree;
use crate::{Error, Result, Word};

/// How a named gate is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GateKind {
    /// Explicit image table.
    Table(GatePerm),
    /// Controlled permutation: base applied when the control wires carry
    /// the control word.
    Controlled { control: Word, base: GatePerm },
    /// Reordering of wires.
    WirePerm(WirePermSpec),
}

/// A named gate definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDef {
    pub name: String,
    pub kind: GateKind,
}

impl GateDef {
    pub fn arity(&self) -> usize {
        match &self.kind {
            GateKind::Table(g) => g.arity(),
            GateKind::Controlled { control, base } => control.len() + base.arity(),
            GateKind::WirePerm(spec) => spec.n(),
        }
    }

    /// Realize the definition as an explicit table.
    pub fn to_perm(&self, q: u32) -> Result<GatePerm> {
        match &self.kind {
            GateKind::Table(g) => {
                if g.q() != q {
                    return Err(Error::AlphabetMismatch(g.q(), q));
                }
                Ok(g.clone())
            }
            GateKind::Controlled { control, base } => {
                if base.q() != q {
                    return Err(Error::AlphabetMismatch(base.q(), q));
                }
                controlled(&ControlledSpec::new(control.clone(), base.clone())?)
            }
            GateKind::WirePerm(spec) => wire_perm(spec, q),
        }
    }

    /// The inverse gate under the same kind of definition.
    pub fn inverse(&self) -> GateDef {
        let kind = match &self.kind {
            GateKind::Table(g) => GateKind::Table(g.inverse()),
            GateKind::Controlled { control, base } => GateKind::Controlled {
                control: control.clone(),
                base: base.inverse(),
            },
            GateKind::WirePerm(spec) => GateKind::WirePerm(spec.inverse()),
        };
        GateDef {
            name: format!("{}_inv", self.name),
            kind,
        }
    }
}

/// One application of a named gate to an ordered list of distinct wires.
/// For controlled gates the control wires come first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateInstance {
    pub gate: usize,
    pub wires: Vec<usize>,
}

/// An ordered list of gate instances on `n` wires over `{0..q-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    q: u32,
    n: usize,
    defs: Vec<GateDef>,
    instances: Vec<GateInstance>,
}

impl Circuit {
    pub fn new(q: u32, n: usize) -> Result<Circuit> {
        if q < 2 {
            return Err(Error::AlphabetTooSmall(q));
        }
        if n == 0 {
            return Err(Error::ZeroArity);
        }
        Ok(Circuit {
            q,
            n,
            defs: Vec::new(),
            instances: Vec::new(),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn defs(&self) -> &[GateDef] {
        &self.defs
    }

    pub fn instances(&self) -> &[GateInstance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Register a gate definition; names must be unique.
    pub fn add_def(&mut self, def: GateDef) -> Result<usize> {
        if self.defs.iter().any(|d| d.name == def.name) {
            return Err(Error::DuplicateGateName(def.name));
        }
        // realize once so invalid definitions are rejected at insertion
        def.to_perm(self.q)?;
        self.defs.push(def);
        Ok(self.defs.len() - 1)
    }

    /// Append an application of the gate to the listed wires.
    pub fn apply(&mut self, gate: usize, wires: Vec<usize>) -> Result<()> {
        let def = self
            .defs
            .get(gate)
            .ok_or_else(|| Error::UnknownGateName(format!("#{gate}")))?;
        if wires.len() != def.arity() {
            return Err(Error::PositionCount {
                expected: def.arity(),
                got: wires.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &w in &wires {
            if w >= self.n {
                return Err(Error::PositionOutOfRange { pos: w, n: self.n });
            }
            if seen[w] {
                return Err(Error::RepeatedPosition(w));
            }
            seen[w] = true;
        }
        self.instances.push(GateInstance { gate, wires });
        Ok(())
    }

    pub fn apply_by_name(&mut self, name: &str, wires: Vec<usize>) -> Result<()> {
        let gate = self
            .defs
            .iter()
            .position(|d| d.name == name)
            .ok_or_else(|| Error::UnknownGateName(name.to_string()))?;
        self.apply(gate, wires)
    }

    /// Run the circuit on one input word.
    pub fn simulate(&self, input: &Word) -> Result<Word> {
        if input.q() != self.q {
            return Err(Error::AlphabetMismatch(input.q(), self.q));
        }
        if input.len() != self.n {
            return Err(Error::LengthMismatch(input.len(), self.n));
        }
        let mut state = input.symbols().to_vec();
        for inst in &self.instances {
            let def = &self.defs[inst.gate];
            let gate = def.to_perm(self.q)?;
            let sub = Word::new(self.q, inst.wires.iter().map(|&w| state[w]).collect())?;
            let image = Word::decode(gate.apply_code(sub.encode()), gate.arity(), self.q)?;
            for (&w, &s) in inst.wires.iter().zip(image.symbols()) {
                state[w] = s;
            }
        }
        Word::new(self.q, state)
    }

    /// The permutation of `A^n` the circuit denotes: the extension
    /// semantics of each instance, composed in application order.
    pub fn to_perm(&self) -> Result<GatePerm> {
        let mut acc = GatePerm::identity(self.q, self.n)?;
        for inst in &self.instances {
            let gate = self.defs[inst.gate].to_perm(self.q)?;
            let placed = extend(&gate, self.n, &inst.wires)?;
            acc = acc.compose_lr(&placed)?;
        }
        Ok(acc)
    }

    /// Reversed instance order with each gate definition inverted.
    pub fn invert(&self) -> Circuit {
        let defs: Vec<GateDef> = self.defs.iter().map(GateDef::inverse).collect();
        let instances = self.instances.iter().rev().cloned().collect();
        Circuit {
            q: self.q,
            n: self.n,
            defs,
            instances,
        }
    }

    /// Concatenation: `self` applies first, then `other`.
    pub fn chain(&self, other: &Circuit) -> Result<Circuit> {
        if self.q != other.q {
            return Err(Error::AlphabetMismatch(self.q, other.q));
        }
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for inst in &other.instances {
            let def = other.defs[inst.gate].clone();
            let gate = match out.defs.iter().position(|d| *d == def) {
                Some(i) => i,
                None => {
                    let mut def = def;
                    let mut k = 0;
                    while out.defs.iter().any(|d| d.name == def.name) {
                        def.name = format!("{}_{k}", def.name);
                        k += 1;
                    }
                    out.defs.push(def);
                    out.defs.len() - 1
                }
            };
            out.instances.push(GateInstance {
                gate,
                wires: inst.wires.clone(),
            });
        }
        Ok(out)
    }

    /// Canonical text form; see the module docs for the grammar.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "revgate v1").unwrap();
        writeln!(out, "alphabet {}", self.q).unwrap();
        writeln!(out, "wires {}", self.n).unwrap();
        for def in &self.defs {
            match &def.kind {
                GateKind::Table(g) => {
                    writeln!(out, "gate {} table {}", def.name, codes(g.table())).unwrap();
                }
                GateKind::Controlled { control, base } => {
                    writeln!(
                        out,
                        "gate {} controlled {} base {}",
                        def.name,
                        control.display(),
                        codes(base.table())
                    )
                    .unwrap();
                }
                GateKind::WirePerm(spec) => {
                    let images: Vec<String> =
                        (0..spec.n()).map(|i| spec.image_of(i).to_string()).collect();
                    writeln!(out, "gate {} wireperm {}", def.name, images.join(" ")).unwrap();
                }
            }
        }
        for inst in &self.instances {
            let wires: Vec<String> = inst.wires.iter().map(|w| w.to_string()).collect();
            writeln!(out, "apply {} {}", self.defs[inst.gate].name, wires.join(",")).unwrap();
        }
        out
    }

    /// Parse the text form; errors carry the offending line number.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut q: Option<u32> = None;
        let mut n: Option<usize> = None;
        let mut circuit: Option<Circuit> = None;
        let mut names: HashMap<String, usize> = HashMap::new();
        let mut saw_magic = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            let keyword = fields.next().unwrap();
            match keyword {
                "revgate" => {
                    if fields.next() != Some("v1") {
                        return Err(err("expected `revgate v1`"));
                    }
                    saw_magic = true;
                }
                "alphabet" => {
                    q = Some(
                        fields
                            .next()
                            .and_then(|s| s.parse::<u32>().ok())
                            .ok_or_else(|| err("alphabet needs an integer size"))?,
                    );
                }
                "wires" => {
                    n = Some(
                        fields
                            .next()
                            .and_then(|s| s.parse::<usize>().ok())
                            .ok_or_else(|| err("wires needs an integer count"))?,
                    );
                }
                "gate" | "apply" => {
                    if !saw_magic {
                        return Err(err("missing `revgate v1` header"));
                    }
                    let circ = match &mut circuit {
                        Some(c) => c,
                        None => {
                            let (Some(q), Some(n)) = (q, n) else {
                                return Err(err("alphabet and wires must precede gates"));
                            };
                            circuit = Some(Circuit::new(q, n).map_err(|e| Error::Parse {
                                line,
                                msg: e.to_string(),
                            })?);
                            circuit.as_mut().unwrap()
                        }
                    };
                    if keyword == "gate" {
                        let name = fields.next().ok_or_else(|| err("gate needs a name"))?;
                        let kind = fields.next().ok_or_else(|| err("gate needs a kind"))?;
                        let rest: Vec<&str> = fields.collect();
                        let def =
                            parse_gate_def(circ.q, name, kind, &rest).map_err(|e| Error::Parse {
                                line,
                                msg: e.to_string(),
                            })?;
                        if names.contains_key(name) {
                            return Err(Error::DuplicateGateName(name.to_string()));
                        }
                        let id = circ.add_def(def).map_err(|e| match e {
                            Error::DuplicateGateName(n) => Error::DuplicateGateName(n),
                            e => Error::Parse {
                                line,
                                msg: e.to_string(),
                            },
                        })?;
                        names.insert(name.to_string(), id);
                    } else {
                        let name = fields.next().ok_or_else(|| err("apply needs a gate name"))?;
                        let wires_field =
                            fields.next().ok_or_else(|| err("apply needs a wire list"))?;
                        let wires: Vec<usize> = wires_field
                            .split(',')
                            .map(|s| s.parse::<usize>())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| err("wire list must be comma-separated integers"))?;
                        let &gate = names
                            .get(name)
                            .ok_or_else(|| Error::UnknownGateName(name.to_string()))?;
                        circ.apply(gate, wires).map_err(|e| match e {
                            Error::PositionOutOfRange { .. }
                            | Error::RepeatedPosition(_)
                            | Error::PositionCount { .. } => Error::Parse {
                                line,
                                msg: e.to_string(),
                            },
                            e => e,
                        })?;
                    }
                }
                other => return Err(err(&format!("unknown keyword `{other}`"))),
            }
        }
        if !saw_magic {
            return Err(Error::Parse {
                line: 1,
                msg: "missing `revgate v1` header".into(),
            });
        }
        match circuit {
            Some(c) => Ok(c),
            None => {
                let (Some(q), Some(n)) = (q, n) else {
                    return Err(Error::Parse {
                        line: 1,
                        msg: "missing alphabet or wires header".into(),
                    });
                };
                Circuit::new(q, n)
            }
        }
    }
}

fn codes(table: &[u32]) -> String {
    table
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_word(q: u32, text: &str) -> Result<Word> {
    if text == "-" {
        return Word::empty(q);
    }
    if text.contains(',') {
        let symbols: Vec<u32> = text
            .split(',')
            .map(|s| s.parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::SymbolOutOfRange { symbol: u32::MAX, q })?;
        return Word::new(q, symbols);
    }
    Word::from_digits(q, text)
}

fn parse_table(q: u32, fields: &[&str]) -> Result<GatePerm> {
    let table: Vec<u32> = fields
        .iter()
        .map(|s| s.parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::NotABijection { len: fields.len() })?;
    let mut arity = 1usize;
    while degree(q, arity)? < table.len() {
        arity += 1;
    }
    GatePerm::from_table(q, arity, table)
}

fn parse_gate_def(q: u32, name: &str, kind: &str, rest: &[&str]) -> Result<GateDef> {
    let kind = match kind {
        "table" => GateKind::Table(parse_table(q, rest)?),
        "controlled" => {
            let (word_field, rest) = rest.split_first().ok_or(Error::NotABijection { len: 0 })?;
            let (base_kw, codes) = rest.split_first().ok_or(Error::NotABijection { len: 0 })?;
            if *base_kw != "base" {
                return Err(Error::UnknownGateName(format!(
                    "expected `base` in controlled gate, got `{base_kw}`"
                )));
            }
            GateKind::Controlled {
                control: parse_word(q, word_field)?,
                base: parse_table(q, codes)?,
            }
        }
        "wireperm" => {
            let images: Vec<usize> = rest
                .iter()
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::NotAWirePermutation(0, rest.len()))?;
            GateKind::WirePerm(WirePermSpec::new(images)?)
        }
        other => {
            return Err(Error::UnknownGateName(format!(
                "unknown gate kind `{other}`"
            )))
        }
    };
    Ok(GateDef {
        name: name.to_string(),
        kind,
    })
}
