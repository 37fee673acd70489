//! The gate algebra: wire permutations, rewiring, parallel application,
//! generalized composition, extensions, and controlled permutations.
//!
//! Composition is read left to right everywhere: `compose_lr(f, g)` applies
//! `f` first. Rewiring conjugates with that same convention, so one
//! convention covers the whole crate.

use crate::perm::GatePerm;
use crate::word::degree;
use crate::{Error, Result, Word};

/// A permutation `alpha` of wire indices `0..n`, as an image table
/// (`alpha[i]` is where wire `i` goes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirePermSpec {
    images: Vec<usize>,
}

impl WirePermSpec {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::NotAWirePermutation(v, n));
            }
            seen[v] = true;
        }
        Ok(WirePermSpec { images })
    }

    pub fn identity(n: usize) -> Self {
        WirePermSpec {
            images: (0..n).collect(),
        }
    }

    /// Cycle notation constructor: `from_cycle(3, &[0, 1, 2])` sends wire 0
    /// to wire 1, 1 to 2, 2 to 0.
    pub fn from_cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &w) in cycle.iter().enumerate() {
            if w >= n {
                return Err(Error::PositionOutOfRange { pos: w, n });
            }
            images[w] = cycle[(i + 1) % cycle.len()];
        }
        WirePermSpec::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn image_of(&self, wire: usize) -> usize {
        self.images[wire]
    }

    pub fn inverse(&self) -> WirePermSpec {
        let mut images = vec![0usize; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        WirePermSpec { images }
    }

    pub fn compose(&self, other: &WirePermSpec) -> Result<WirePermSpec> {
        if self.n() != other.n() {
            return Err(Error::ArityMismatch(self.n(), other.n()));
        }
        WirePermSpec::new(self.images.iter().map(|&v| other.images[v]).collect())
    }
}

/// The wire permutation as a gate: output position `alpha(i)` holds input
/// symbol `x_i`.
pub fn wire_perm(spec: &WirePermSpec, q: u32) -> Result<GatePerm> {
    let n = spec.n();
    let deg = degree(q, n)?;
    let mut table = vec![0u32; deg];
    let mut out = vec![0u32; n];
    for (code, entry) in table.iter_mut().enumerate() {
        let w = Word::decode(code, n, q)?;
        for (i, &s) in w.symbols().iter().enumerate() {
            out[spec.image_of(i)] = s;
        }
        *entry = Word::new(q, out.clone())?.encode() as u32;
    }
    GatePerm::from_table(q, n, table)
}

/// Left-to-right composition: `f` applies first.
pub fn compose_lr(f: &GatePerm, g: &GatePerm) -> Result<GatePerm> {
    f.compose_lr(g)
}

/// Parallel application `f (+) g`: `f` on the first block of wires, `g` on
/// the rest.
pub fn parallel(f: &GatePerm, g: &GatePerm) -> Result<GatePerm> {
    if f.q() != g.q() {
        return Err(Error::AlphabetMismatch(f.q(), g.q()));
    }
    let q = f.q();
    let n = f.arity() + g.arity();
    let deg = degree(q, n)?;
    let dg = g.degree();
    let mut table = vec![0u32; deg];
    for a in 0..f.degree() {
        let fa = f.apply_code(a);
        for b in 0..dg {
            table[a * dg + b] = (fa * dg + g.apply_code(b)) as u32;
        }
    }
    GatePerm::from_table(q, n, table)
}

/// Conjugation by a wire permutation: the same gate applied on reordered
/// wires. With left-to-right composition this is `pi_alpha, f, pi_alpha^-1`.
pub fn rewire(f: &GatePerm, alpha: &WirePermSpec) -> Result<GatePerm> {
    if alpha.n() != f.arity() {
        return Err(Error::ArityMismatch(alpha.n(), f.arity()));
    }
    let pi = wire_perm(alpha, f.q())?;
    let pi_inv = wire_perm(&alpha.inverse(), f.q())?;
    pi.compose_lr(f)?.compose_lr(&pi_inv)
}

/// Apply `f` on the listed wires of a wider `n`-wire gate, identity
/// elsewhere: the rewiring of `f (+) id` that sends `f`'s wire `i` to
/// `positions[i]`.
pub fn extend(f: &GatePerm, n: usize, positions: &[usize]) -> Result<GatePerm> {
    let arity = f.arity();
    if positions.len() != arity {
        return Err(Error::PositionCount {
            expected: arity,
            got: positions.len(),
        });
    }
    if arity > n {
        return Err(Error::ArityMismatch(arity, n));
    }
    let mut taken = vec![false; n];
    for &p in positions {
        if p >= n {
            return Err(Error::PositionOutOfRange { pos: p, n });
        }
        if taken[p] {
            return Err(Error::RepeatedPosition(p));
        }
        taken[p] = true;
    }
    // rewire(h, alpha) applies h's wire i on original wire alpha^-1(i), so
    // map each listed position back to the wire of f it carries.
    let mut images = vec![usize::MAX; n];
    for (i, &p) in positions.iter().enumerate() {
        images[p] = i;
    }
    let mut next = arity;
    for img in images.iter_mut() {
        if *img == usize::MAX {
            *img = next;
            next += 1;
        }
    }
    let widened = if arity == n {
        f.clone()
    } else {
        parallel(f, &GatePerm::identity(f.q(), n - arity)?)?
    };
    rewire(&widened, &WirePermSpec::new(images)?)
}

/// Generalized composition `f o_k g`: `g` consumes the first `k` outputs of
/// `f` plus fresh inputs; `f`'s remaining outputs pass through after `g`'s.
pub fn gencomp(f: &GatePerm, g: &GatePerm, k: usize) -> Result<GatePerm> {
    if f.q() != g.q() {
        return Err(Error::AlphabetMismatch(f.q(), g.q()));
    }
    let (n, m) = (f.arity(), g.arity());
    if k > n.min(m) {
        return Err(Error::OverlapOutOfRange { k, max: n.min(m) });
    }
    let q = f.q();
    let arity = n + m - k;
    let deg = degree(q, arity)?;
    let mut table = vec![0u32; deg];
    for (code, entry) in table.iter_mut().enumerate() {
        let x = Word::decode(code, arity, q)?;
        let xs = x.symbols();
        let fx = Word::decode(
            f.apply_code(Word::new(q, xs[..n].to_vec())?.encode()),
            n,
            q,
        )?;
        let mut g_in = fx.symbols()[..k].to_vec();
        g_in.extend_from_slice(&xs[n..]);
        let gy = Word::decode(g.apply_code(Word::new(q, g_in)?.encode()), m, q)?;
        let mut out = gy.symbols().to_vec();
        out.extend_from_slice(&fx.symbols()[k..]);
        *entry = Word::new(q, out)?.encode() as u32;
    }
    GatePerm::from_table(q, arity, table)
}

/// A controlled permutation `C_w[p]`: `p` on the suffix when the prefix
/// equals `w`, identity otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlledSpec {
    pub control: Word,
    pub base: GatePerm,
}

impl ControlledSpec {
    pub fn new(control: Word, base: GatePerm) -> Result<Self> {
        if control.q() != base.q() {
            return Err(Error::AlphabetMismatch(control.q(), base.q()));
        }
        Ok(ControlledSpec { control, base })
    }

    pub fn arity(&self) -> usize {
        self.control.len() + self.base.arity()
    }
}

/// Realize `C_w[p]` as a table on `|w| + arity(p)` wires, controls first.
pub fn controlled(spec: &ControlledSpec) -> Result<GatePerm> {
    let q = spec.base.q();
    let n = spec.arity();
    let deg = degree(q, n)?;
    let base_deg = spec.base.degree();
    let w_code = spec.control.encode();
    let mut table = vec![0u32; deg];
    for u in 0..deg / base_deg {
        for v in 0..base_deg {
            let image = if u == w_code {
                spec.base.apply_code(v)
            } else {
                v
            };
            table[u * base_deg + v] = (u * base_deg + image) as u32;
        }
    }
    GatePerm::from_table(q, n, table)
}

/// The Toffoli gate: the 11-word-controlled symbol swap on 3 binary wires.
pub fn toffoli() -> GatePerm {
    let spec = ControlledSpec::new(
        Word::from_digits(2, "11").unwrap(),
        GatePerm::from_table(2, 1, vec![1, 0]).unwrap(),
    )
    .unwrap();
    controlled(&spec).unwrap()
}

/// The Fredkin gate: the 1-word-controlled wire swap on 3 binary wires.
pub fn fredkin() -> GatePerm {
    let spec = ControlledSpec::new(
        Word::from_digits(2, "1").unwrap(),
        wire_perm(&WirePermSpec::from_cycle(2, &[0, 1]).unwrap(), 2).unwrap(),
    )
    .unwrap();
    controlled(&spec).unwrap()
}

/// The base-gate families whose controlled versions generate the four
/// target classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateFamily {
    /// Symbol swaps `(a b)` on one wire.
    P1,
    /// Word swaps `(ab ba)` on two wires.
    P2,
    /// 3-word-cycles `(ab ac db)` with `a != d`, `b != c` on two wires.
    P3,
    /// 3-word rotations `(abc bca cab)` on three wires.
    P4,
}

impl GateFamily {
    pub fn base_arity(self) -> usize {
        match self {
            GateFamily::P1 => 1,
            GateFamily::P2 | GateFamily::P3 => 2,
            GateFamily::P4 => 3,
        }
    }

    /// The family members over `{0..q-1}`, deduplicated by table, in table
    /// order.
    pub fn base_gates(self, q: u32) -> Result<Vec<GatePerm>> {
        let mut gates = Vec::new();
        let word1 = |a: u32| Word::new(q, vec![a]);
        let word2 = |a: u32, b: u32| Word::new(q, vec![a, b]);
        let word3 = |a: u32, b: u32, c: u32| Word::new(q, vec![a, b, c]);
        match self {
            GateFamily::P1 => {
                for a in 0..q {
                    for b in a + 1..q {
                        gates.push(GatePerm::word_swap(q, 1, &word1(a)?, &word1(b)?)?);
                    }
                }
            }
            GateFamily::P2 => {
                for a in 0..q {
                    for b in a + 1..q {
                        gates.push(GatePerm::word_swap(q, 2, &word2(a, b)?, &word2(b, a)?)?);
                    }
                }
            }
            GateFamily::P3 => {
                for a in 0..q {
                    for b in 0..q {
                        for c in 0..q {
                            for d in 0..q {
                                if a == d || b == c {
                                    continue;
                                }
                                gates.push(GatePerm::from_word_cycle(
                                    q,
                                    2,
                                    &[word2(a, b)?, word2(a, c)?, word2(d, b)?],
                                )?);
                            }
                        }
                    }
                }
            }
            GateFamily::P4 => {
                for a in 0..q {
                    for b in 0..q {
                        for c in 0..q {
                            if a == b && b == c {
                                continue;
                            }
                            gates.push(GatePerm::from_word_cycle(
                                q,
                                3,
                                &[word3(a, b, c)?, word3(b, c, a)?, word3(c, a, b)?],
                            )?);
                        }
                    }
                }
            }
        }
        gates.sort();
        gates.dedup();
        Ok(gates)
    }
}

/// A controlled-permutation instance with its provenance.
#[derive(Debug, Clone)]
pub struct ControlledInstance {
    pub control: Word,
    pub base: GatePerm,
    /// Control wires first, then the base gate's wires, all 0-based.
    pub wires: Vec<usize>,
    pub gate: GatePerm,
}

/// All rewirings of all `C_w[p]` with `p` in the family and `|w| = n - l`,
/// deduplicated by table. The enumeration order (control word code, base
/// gate table, wire assignment) is deterministic; dedup keeps the first
/// occurrence.
pub fn controlled_instances_full(
    family: GateFamily,
    q: u32,
    n: usize,
) -> Result<Vec<ControlledInstance>> {
    let arity = family.base_arity();
    if arity > n {
        return Err(Error::FamilyArityExceedsWires { arity, n });
    }
    let bases = family.base_gates(q)?;
    let k = n - arity;
    let control_count = degree(q, k)?;
    let mut out: Vec<ControlledInstance> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    let mut assignment = Vec::new();
    for w_code in 0..control_count {
        let control = Word::decode(w_code, k, q)?;
        for base in &bases {
            let realized = controlled(&ControlledSpec::new(control.clone(), base.clone())?)?;
            enumerate_injections(n, n, &mut assignment, &mut |wires| {
                let gate = extend(&realized, n, wires)?;
                if seen.insert(gate.table().to_vec()) {
                    out.push(ControlledInstance {
                        control: control.clone(),
                        base: base.clone(),
                        wires: wires.to_vec(),
                        gate,
                    });
                }
                Ok(())
            })?;
        }
    }
    Ok(out)
}

/// Tables only; see [`controlled_instances_full`].
pub fn controlled_instances(family: GateFamily, q: u32, n: usize) -> Result<Vec<GatePerm>> {
    Ok(controlled_instances_full(family, q, n)?
        .into_iter()
        .map(|inst| inst.gate)
        .collect())
}

/// All extensions of `f` to `n` wires (every ordered placement of its
/// wires), deduplicated by table, in placement order.
pub fn all_extensions(f: &GatePerm, n: usize) -> Result<Vec<GatePerm>> {
    let mut out: Vec<GatePerm> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    let mut prefix = Vec::new();
    enumerate_injections(f.arity(), n, &mut prefix, &mut |positions| {
        let g = extend(f, n, positions)?;
        if seen.insert(g.table().to_vec()) {
            out.push(g);
        }
        Ok(())
    })?;
    Ok(out)
}

/// Visit all ordered injections of `k` wires into `0..n`, lexicographically.
pub fn enumerate_injections(
    k: usize,
    n: usize,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if prefix.len() == k {
        return visit(prefix);
    }
    for w in 0..n {
        if prefix.contains(&w) {
            continue;
        }
        prefix.push(w);
        enumerate_injections(k, n, prefix, visit)?;
        prefix.pop();
    }
    Ok(())
}
