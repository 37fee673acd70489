//! Explicit decompositions: control lifting, the eight-gate controlled
//! 3-word-cycle and its recursive expansion to any number of controls, the
//! four-gate controlled-swap pattern, the fixed controlled-rotation and
//! word-cycle circuits, and chain-backed synthesis over a control-universal
//! basis.

use crate::algebra::{
    controlled, controlled_instances_full, wire_perm, ControlledSpec, GateFamily, WirePermSpec,
};
use crate::circuit::{Circuit, GateDef, GateKind};
use crate::groups::{target_order, StabilizerChain, TargetClass};
use crate::perm::GatePerm;
use crate::search::InstanceSet;
use crate::{Error, Result, Word};

/// Five pairwise distinct words of `A^n`: a 3-word-cycle `(x y z)` plus the
/// two helpers `s`, `t` the decomposition borrows.
#[derive(Debug, Clone)]
pub struct ThreeCycleSpec {
    words: [Word; 5],
}

impl ThreeCycleSpec {
    pub fn new(x: Word, y: Word, z: Word, s: Word, t: Word) -> Result<Self> {
        let words = [x, y, z, s, t];
        let q = words[0].q();
        let n = words[0].len();
        for w in &words {
            if w.q() != q {
                return Err(Error::AlphabetMismatch(w.q(), q));
            }
            if w.len() != n {
                return Err(Error::LengthMismatch(w.len(), n));
            }
        }
        for i in 0..5 {
            for j in i + 1..5 {
                if words[i] == words[j] {
                    return Err(Error::NeedFiveDistinctWords);
                }
            }
        }
        Ok(ThreeCycleSpec { words })
    }

    pub fn q(&self) -> u32 {
        self.words[0].q()
    }

    pub fn word_len(&self) -> usize {
        self.words[0].len()
    }

    /// The cycle `(x y z)` as a gate.
    pub fn cycle(&self) -> GatePerm {
        GatePerm::from_word_cycle(
            self.q(),
            self.word_len(),
            &[
                self.words[0].clone(),
                self.words[1].clone(),
                self.words[2].clone(),
            ],
        )
        .expect("validated distinct words")
    }
}

/// Add common control wires to every gate of a controlled-gate circuit:
/// each control word is prefixed by `prefix` on fresh leading wires, so a
/// circuit for `C_v[p]` becomes one for `C_{prefix v}[p]`. Gate count is
/// unchanged.
pub fn lift_control(circ: &Circuit, prefix: &Word) -> Result<Circuit> {
    if prefix.q() != circ.q() {
        return Err(Error::AlphabetMismatch(prefix.q(), circ.q()));
    }
    let p = prefix.len();
    if p == 0 {
        return Ok(circ.clone());
    }
    let mut out = Circuit::new(circ.q(), p + circ.arity())?;
    for def in circ.defs() {
        let GateKind::Controlled { control, base } = &def.kind else {
            return Err(Error::NotControlled(def.name.clone()));
        };
        out.add_def(GateDef {
            name: def.name.clone(),
            kind: GateKind::Controlled {
                control: prefix.concat(control)?,
                base: base.clone(),
            },
        })?;
    }
    for inst in circ.instances() {
        let mut wires: Vec<usize> = (0..p).collect();
        wires.extend(inst.wires.iter().map(|&w| w + p));
        out.apply(inst.gate, wires)?;
    }
    Ok(out)
}

/// One level of the five-word decomposition: the gate list whose product
/// implements the `(a, b)`-controlled cycle. Cycle entries are indices into
/// the five words; each emitted gate is (control slot 0 or 1, control
/// value, cycle as indices). The first four gates form an involution-pair
/// product `g`; the whole list is `g` twice.
fn five_word_gates(cycle: [usize; 3], a: u32, b: u32) -> Vec<(usize, u32, [usize; 3])> {
    let spare: Vec<usize> = (0..5).filter(|i| !cycle.contains(i)).collect();
    let (s, t) = (spare[0], spare[1]);
    let [x, y, z] = cycle;
    let g = [
        (0, a, [s, t, x]),
        (0, a, [x, s, y]),
        (1, b, [s, t, y]),
        (1, b, [y, s, z]),
    ];
    let mut out = g.to_vec();
    out.extend_from_slice(&g);
    out
}

/// Emit a (control value, cycle) gate into a circuit under a shared def
/// table; control wire first, base on the trailing wires.
fn apply_cycle_gate(
    circ: &mut Circuit,
    def_ids: &mut std::collections::HashMap<(u32, [usize; 3]), usize>,
    spec: &ThreeCycleSpec,
    base_wires: std::ops::Range<usize>,
    control_wire: usize,
    value: u32,
    cycle: [usize; 3],
) -> Result<()> {
    let q = spec.q();
    let def = match def_ids.get(&(value, cycle)) {
        Some(&id) => id,
        None => {
            let base = GatePerm::from_word_cycle(
                q,
                spec.word_len(),
                &[
                    spec.words[cycle[0]].clone(),
                    spec.words[cycle[1]].clone(),
                    spec.words[cycle[2]].clone(),
                ],
            )?;
            let id = circ.add_def(GateDef {
                name: format!("c{}", def_ids.len()),
                kind: GateKind::Controlled {
                    control: Word::new(q, vec![value])?,
                    base,
                },
            })?;
            def_ids.insert((value, cycle), id);
            id
        }
    };
    let mut wires = vec![control_wire];
    wires.extend(base_wires);
    circ.apply(def, wires)
}

/// `C_{ab}[(x y z)]` as a composition of eight 1-controlled 3-word-cycles
/// on `2 + n` wires, controls on wires 0 and 1.
pub fn eight_gate_controlled_3cycle(spec: &ThreeCycleSpec, a: u32, b: u32) -> Result<Circuit> {
    let q = spec.q();
    for sym in [a, b] {
        if sym >= q {
            return Err(Error::SymbolOutOfRange { symbol: sym, q });
        }
    }
    let n = spec.word_len();
    let mut circ = Circuit::new(q, 2 + n)?;
    let mut def_ids = std::collections::HashMap::new();
    for (slot, value, cycle) in five_word_gates([0, 1, 2], a, b) {
        apply_cycle_gate(&mut circ, &mut def_ids, spec, 2..2 + n, slot, value, cycle)?;
    }
    Ok(circ)
}

/// `C_w[(x y z)]` as a circuit of 1-controlled 3-word-cycles, by recursive
/// application of the eight-gate decomposition: each level trades the last
/// two controls of every gate for one, giving `8^(m-1)` gates for `m`
/// controls.
pub fn expand_controls_3cycle(spec: &ThreeCycleSpec, w: &Word) -> Result<Circuit> {
    let q = spec.q();
    if w.q() != q {
        return Err(Error::AlphabetMismatch(w.q(), q));
    }
    let m = w.len();
    if m == 0 {
        return Err(Error::LengthMismatch(0, 1));
    }
    let n = spec.word_len();

    struct Pending {
        controls: Vec<(usize, u32)>,
        cycle: [usize; 3],
    }
    let mut stack = vec![Pending {
        controls: w.symbols().iter().copied().enumerate().collect(),
        cycle: [0, 1, 2],
    }];
    let mut circ = Circuit::new(q, m + n)?;
    let mut def_ids = std::collections::HashMap::new();
    // depth-first, left-to-right: emission order is application order
    while let Some(gate) = stack.pop() {
        if gate.controls.len() == 1 {
            let (wire, value) = gate.controls[0];
            apply_cycle_gate(&mut circ, &mut def_ids, spec, m..m + n, wire, value, gate.cycle)?;
            continue;
        }
        let len = gate.controls.len();
        let prefix = &gate.controls[..len - 2];
        let (wa, a) = gate.controls[len - 2];
        let (wb, b) = gate.controls[len - 1];
        // push in reverse so the stack pops them in application order
        for (slot, value, cycle) in five_word_gates(gate.cycle, a, b).into_iter().rev() {
            let mut controls = prefix.to_vec();
            controls.push((if slot == 0 { wa } else { wb }, value));
            stack.push(Pending { controls, cycle });
        }
    }
    Ok(circ)
}

/// The four-gate pattern: `C_{ab}[(xs xt ys)]` (controls on wires 0 and 1,
/// the cycled cell pair on wires 2 and 3) as a composition of four
/// 2-controlled symbol swaps. The two alternating gates are involutions, so
/// on any slice where only one of them fires the square collapses to the
/// identity.
pub fn p3cycle_from_controlled_swaps(
    q: u32,
    a: u32,
    b: u32,
    x: u32,
    s: u32,
    t: u32,
    y: u32,
) -> Result<Circuit> {
    for sym in [a, b, x, s, t, y] {
        if sym >= q {
            return Err(Error::SymbolOutOfRange { symbol: sym, q });
        }
    }
    if x == y || s == t {
        return Err(Error::MalformedPattern(format!(
            "need x != y and s != t, got x={x} y={y} s={s} t={t}"
        )));
    }
    let mut circ = Circuit::new(q, 4)?;
    let swap = |u: u32, v: u32| -> Result<GatePerm> {
        GatePerm::word_swap(q, 1, &Word::new(q, vec![u])?, &Word::new(q, vec![v])?)
    };
    // when the a-control holds and the second cell reads s, swap x/y in the
    // first cell
    let g1 = circ.add_def(GateDef {
        name: "swap_first".into(),
        kind: GateKind::Controlled {
            control: Word::new(q, vec![a, s])?,
            base: swap(x, y)?,
        },
    })?;
    // when the b-control holds and the first cell reads x, swap s/t in the
    // second cell
    let g2 = circ.add_def(GateDef {
        name: "swap_second".into(),
        kind: GateKind::Controlled {
            control: Word::new(q, vec![b, x])?,
            base: swap(s, t)?,
        },
    })?;
    for _ in 0..2 {
        circ.apply(g1, vec![0, 3, 2])?;
        circ.apply(g2, vec![1, 2, 3])?;
    }
    Ok(circ)
}

/// The three-wire rotation `R`: content moves from each wire to the next,
/// wrapping the last back to the first.
pub fn three_wire_rotation(q: u32) -> GatePerm {
    wire_perm(&WirePermSpec::from_cycle(3, &[0, 1, 2]).expect("3 wires"), q).expect("small table")
}

/// `R` on the upper wires, controlled by the given word on the lowest
/// wires.
pub fn controlled_rotation(control: &str) -> GatePerm {
    let control = Word::from_digits(2, control).expect("binary control");
    controlled(&ControlledSpec::new(control, three_wire_rotation(2)).expect("same alphabet"))
        .expect("small table")
}

fn frozen(text: &str, target: &GatePerm) -> Circuit {
    let circ = Circuit::parse(text).expect("frozen circuit parses");
    assert_eq!(
        &circ.to_perm().expect("frozen circuit simulates"),
        target,
        "frozen circuit must match its oracle"
    );
    circ
}

/// The nine-gate implementation of the 00-controlled three-wire rotation
/// over 0-controlled rotations on five wires; no eight-gate circuit exists.
pub fn rotation00_circuit() -> Circuit {
    frozen(
        include_str!("../data/rotation00.rg"),
        &controlled_rotation("00"),
    )
}

/// The eight-gate implementation of the 01-controlled three-wire rotation;
/// no seven-gate circuit exists.
pub fn rotation01_circuit() -> Circuit {
    frozen(
        include_str!("../data/rotation01.rg"),
        &controlled_rotation("01"),
    )
}

/// Six-gate circuits for the word cycles `(0001 0010 0100)` and
/// `(0011 0110 0101)` over 0-controlled rotations on four wires.
pub fn word_cycle_circuits() -> (Circuit, Circuit) {
    let cycle = |words: [&str; 3]| {
        GatePerm::from_word_cycle(
            2,
            4,
            &words.map(|s| Word::from_digits(2, s).expect("binary word")),
        )
        .expect("distinct words")
    };
    (
        frozen(
            include_str!("../data/word_cycle_low.rg"),
            &cycle(["0001", "0010", "0100"]),
        ),
        frozen(
            include_str!("../data/word_cycle_high.rg"),
            &cycle(["0011", "0110", "0101"]),
        ),
    )
}

/// The generators behind the final universality statement: the 4-wire
/// 0-controlled wire rotation plus every conservative gate on three binary
/// wires that is even on each weight class.
pub fn fredkin_universality_generators() -> Vec<GatePerm> {
    let mut table = Vec::with_capacity(16);
    for code in 0..16 {
        let w = Word::decode(code, 4, 2).expect("degree 16");
        let s = w.symbols();
        let image = if s[0] == 0 {
            Word::new(2, vec![s[0], s[2], s[3], s[1]]).expect("binary")
        } else {
            w
        };
        table.push(image.encode() as u32);
    }
    let rotation = GatePerm::from_table(2, 4, table).expect("bijection");

    let mut gens = vec![rotation];
    // 8! = 40320 tables is a fine price for an exhaustive enumeration
    let mut perm: Vec<u32> = (0..8).collect();
    loop {
        let gate = GatePerm::from_table(2, 3, perm.clone()).expect("permutation");
        if !gate.is_identity() && crate::weight::is_alt_conservative(&gate) {
            gens.push(gate);
        }
        let Some(i) = (0..7).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..8).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    gens
}

/// Factor `target` into controlled basis instances via a stabilizer chain:
/// the basis must be control-universal for the class at this arity, and the
/// result always re-simulates to `target` exactly (no length guarantee).
pub fn synthesize(target: &GatePerm, class: &TargetClass, basis: GateFamily) -> Result<Circuit> {
    let q = target.q();
    let n = target.arity();
    if let Some(witness) = class.membership_witness(target)? {
        return Err(Error::TargetOutsideClass { witness });
    }
    let instances = controlled_instances_full(basis, q, n)?;
    let set = InstanceSet::from_instances(q, n, instances)?;
    let gens: Vec<GatePerm> = set.items().iter().map(|i| i.gate.clone()).collect();
    let chain = StabilizerChain::build(&gens)?;
    if chain.order() != target_order(class, q, n)? {
        return Err(Error::BasisNotUniversal { n });
    }
    let word = chain.factorize(target)?;
    let circuit = set.circuit_for(&word)?;
    debug_assert_eq!(&circuit.to_perm()?, target);
    Ok(circuit)
}
