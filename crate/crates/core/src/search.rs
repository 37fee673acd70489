//! Optimal decomposition search over gate-instance Cayley graphs:
//! breadth-first for small instance sets, meet-in-the-middle for the
//! depth-nine claims, both with exhaustive lower-bound certificates.
//!
//! Composition direction matches circuits: the first gate of a word
//! applies first. Visited states are deduplicated by full table equality;
//! hashes only bucket the lookups, so exhaustion certificates never rest
//! on a hash.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algebra::{controlled, enumerate_injections, extend, ControlledInstance, ControlledSpec};
use crate::circuit::{Circuit, GateDef, GateKind};
use crate::perm::GatePerm;
use crate::{Error, Result};

/// Search state tables are `u16` codes; larger degrees would not fit the
/// visited-set budget anyway.
const SEARCH_DEGREE_CAP: usize = 1 << 16;

/// Default visited-set budget for meet-in-the-middle, in bytes.
const DEFAULT_MEM_BUDGET: usize = 6 << 30;

/// One placement of a controlled gate on `n` wires, with provenance.
pub type Instance = ControlledInstance;

/// A deterministic, table-deduplicated list of gate instances.
#[derive(Debug, Clone)]
pub struct InstanceSet {
    q: u32,
    n: usize,
    items: Vec<Instance>,
}

impl InstanceSet {
    /// All extensions of the given controlled gates onto `n` wires: every
    /// control-wire choice and base-wire ordering, deduplicated by table in
    /// enumeration order (spec order, then wire assignment).
    pub fn enumerate(specs: &[ControlledSpec], n: usize) -> Result<InstanceSet> {
        let mut q = None;
        let mut items: Vec<Instance> = Vec::new();
        let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
        for spec in specs {
            let sq = spec.base.q();
            match q {
                None => q = Some(sq),
                Some(q) => {
                    if q != sq {
                        return Err(Error::AlphabetMismatch(q, sq));
                    }
                }
            }
            let arity = spec.arity();
            if arity > n {
                return Err(Error::ArityMismatch(arity, n));
            }
            let realized = controlled(spec)?;
            let mut prefix = Vec::new();
            enumerate_injections(arity, n, &mut prefix, &mut |wires| {
                let gate = extend(&realized, n, wires)?;
                if seen.insert(gate.table().to_vec()) {
                    items.push(Instance {
                        control: spec.control.clone(),
                        base: spec.base.clone(),
                        wires: wires.to_vec(),
                        gate,
                    });
                }
                Ok(())
            })?;
        }
        let q = q.ok_or(Error::AlphabetTooSmall(0))?;
        Ok(InstanceSet { q, n, items })
    }

    /// Wrap an existing instance list (e.g. a control-universal family),
    /// deduplicating by table and keeping the given order.
    pub fn from_instances(q: u32, n: usize, instances: Vec<Instance>) -> Result<InstanceSet> {
        let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
        let mut items = Vec::new();
        for inst in instances {
            if inst.gate.q() != q {
                return Err(Error::AlphabetMismatch(inst.gate.q(), q));
            }
            if inst.gate.arity() != n {
                return Err(Error::ArityMismatch(inst.gate.arity(), n));
            }
            if seen.insert(inst.gate.table().to_vec()) {
                items.push(inst);
            }
        }
        Ok(InstanceSet { q, n, items })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Instance] {
        &self.items
    }

    /// Index of the instance whose table is the exact inverse of instance
    /// `i`, when present.
    fn inverse_index(&self) -> Vec<Option<u16>> {
        let by_table: HashMap<&[u32], u16> = self
            .items
            .iter()
            .enumerate()
            .map(|(i, inst)| (inst.gate.table(), i as u16))
            .collect();
        self.items
            .iter()
            .map(|inst| {
                let inv = inst.gate.inverse();
                by_table.get(inv.table()).copied()
            })
            .collect()
    }

    /// Render an instance word as a circuit over controlled gate
    /// definitions: one def per distinct (control word, base gate), wires
    /// per application.
    pub fn circuit_for(&self, word: &[usize]) -> Result<Circuit> {
        let mut circuit = Circuit::new(self.q, self.n)?;
        let mut def_of: HashMap<(Vec<u32>, Vec<u32>), usize> = HashMap::new();
        for &idx in word {
            let inst = &self.items[idx];
            let key = (
                inst.control.symbols().to_vec(),
                inst.base.table().to_vec(),
            );
            let def = match def_of.get(&key) {
                Some(&id) => id,
                None => {
                    let id = circuit.add_def(GateDef {
                        name: format!("g{}", def_of.len()),
                        kind: GateKind::Controlled {
                            control: inst.control.clone(),
                            base: inst.base.clone(),
                        },
                    })?;
                    def_of.insert(key, id);
                    id
                }
            };
            circuit.apply(def, inst.wires.clone())?;
        }
        Ok(circuit)
    }
}

/// Outcome of a search: either a shortest word over the instance set, or a
/// certificate that no word of length up to the bound exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Found(Vec<usize>),
    ExhaustedToDepth(usize),
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn found_word(&self) -> Option<&[usize]> {
        match &self.status {
            SearchStatus::Found(w) => Some(w),
            SearchStatus::ExhaustedToDepth(_) => None,
        }
    }
}

type State = Box<[u16]>;

fn to_state(g: &GatePerm) -> Result<State> {
    if g.degree() > SEARCH_DEGREE_CAP {
        return Err(Error::ResourceCap(format!(
            "search degree {} exceeds {}",
            g.degree(),
            SEARCH_DEGREE_CAP
        )));
    }
    Ok(g.table().iter().map(|&v| v as u16).collect())
}

fn identity_state(degree: usize) -> State {
    (0..degree as u16).collect()
}

/// `a` then `b`.
fn mul_into(a: &[u16], b: &[u16], out: &mut Vec<u16>) {
    out.clear();
    out.extend(a.iter().map(|&x| b[x as usize]));
}

fn check_set(target: &GatePerm, set: &InstanceSet) -> Result<()> {
    if target.q() != set.q {
        return Err(Error::AlphabetMismatch(target.q(), set.q));
    }
    if target.arity() != set.n {
        return Err(Error::ArityMismatch(target.arity(), set.n));
    }
    Ok(())
}

/// Re-simulate a found word; every returned circuit must equal its target.
fn assert_word(target: &GatePerm, set: &InstanceSet, word: &[usize]) {
    let mut acc = GatePerm::identity(target.q(), target.arity()).expect("valid shape");
    for &i in word {
        acc = acc.compose_lr(&set.items[i].gate).expect("same shape");
    }
    assert_eq!(&acc, target, "found word must re-simulate to the target");
}

/// Shortest word over the instance set of length at most `max_depth`,
/// lexicographically least among the minimal words, by plain breadth-first
/// enumeration with full-table deduplication.
pub fn bfs_min(target: &GatePerm, set: &InstanceSet, max_depth: usize) -> Result<SearchResult> {
    bfs_min_impl(target, set, max_depth, true)
}

pub(crate) fn bfs_min_impl(
    target: &GatePerm,
    set: &InstanceSet,
    max_depth: usize,
    prune_inverse_backtrack: bool,
) -> Result<SearchResult> {
    const VISITED_CAP: usize = 30_000_000;
    check_set(target, set)?;
    let start = Instant::now();
    let degree = target.degree();
    let target_state = to_state(target)?;
    let gens: Vec<State> = set
        .items
        .iter()
        .map(|i| to_state(&i.gate))
        .collect::<Result<_>>()?;
    let inverse_of = set.inverse_index();

    let id = identity_state(degree);
    if target_state == id {
        return Ok(SearchResult {
            status: SearchStatus::Found(Vec::new()),
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        });
    }

    let mut visited: std::collections::HashSet<State> = std::collections::HashSet::new();
    visited.insert(id.clone());
    // (state, word, last gen index)
    let mut layer: Vec<(State, Vec<usize>)> = vec![(id, Vec::new())];
    let mut nodes = 0u64;
    let mut buf = Vec::with_capacity(degree);

    for depth in 1..=max_depth {
        let mut next: Vec<(State, Vec<usize>)> = Vec::new();
        for (state, word) in &layer {
            let last_inverse = word
                .last()
                .and_then(|&l| inverse_of[l])
                .map(|i| i as usize);
            for (gi, gen) in gens.iter().enumerate() {
                if prune_inverse_backtrack && last_inverse == Some(gi) {
                    continue;
                }
                nodes += 1;
                mul_into(state, gen, &mut buf);
                if buf.as_slice() == target_state.as_ref() {
                    let mut found = word.clone();
                    found.push(gi);
                    assert_word(target, set, &found);
                    return Ok(SearchResult {
                        status: SearchStatus::Found(found),
                        nodes_expanded: nodes,
                        elapsed: start.elapsed(),
                    });
                }
                if depth < max_depth && !visited.contains(buf.as_slice()) {
                    if visited.len() >= VISITED_CAP {
                        return Err(Error::ResourceCap(format!(
                            "breadth-first visited set exceeded {VISITED_CAP} states"
                        )));
                    }
                    let boxed: State = buf.clone().into_boxed_slice();
                    visited.insert(boxed.clone());
                    let mut w = word.clone();
                    w.push(gi);
                    next.push((boxed, w));
                }
            }
        }
        layer = next;
        if layer.is_empty() && depth < max_depth {
            // the whole reachable group was enumerated
            return Ok(SearchResult {
                status: SearchStatus::ExhaustedToDepth(max_depth),
                nodes_expanded: nodes,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(SearchResult {
        status: SearchStatus::ExhaustedToDepth(max_depth),
        nodes_expanded: nodes,
        elapsed: start.elapsed(),
    })
}

struct Frontier {
    /// state -> (depth, word); words are stored in application order.
    map: HashMap<State, (u8, Vec<u16>)>,
    /// states of the deepest stored layer, in insertion order
    last_layer: Vec<State>,
}

/// Breadth-first table of all elements reachable within `depth`, with
/// first-seen (lexicographically least) words per state.
fn explore(
    start: State,
    gens: &[State],
    depth: usize,
    budget_states: usize,
) -> Result<(Frontier, u64)> {
    let mut map = HashMap::new();
    map.insert(start.clone(), (0u8, Vec::new()));
    let mut layer = vec![start];
    let mut nodes = 0u64;
    let mut buf = Vec::new();
    for d in 1..=depth {
        let mut next = Vec::new();
        for state in &layer {
            let word = map[state].1.clone();
            for (gi, gen) in gens.iter().enumerate() {
                nodes += 1;
                mul_into(state, gen, &mut buf);
                if !map.contains_key(buf.as_slice()) {
                    if map.len() >= budget_states {
                        return Err(Error::ResourceCap(format!(
                            "search frontier exceeded the memory budget \
                             ({budget_states} states)"
                        )));
                    }
                    let boxed: State = buf.clone().into_boxed_slice();
                    let mut w = word.clone();
                    w.push(gi as u16);
                    map.insert(boxed.clone(), (d as u8, w));
                    next.push(boxed);
                }
            }
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok((
        Frontier {
            map,
            last_layer: layer,
        },
        nodes,
    ))
}

/// Meet-in-the-middle shortest search: same minimal length contract as
/// [`bfs_min`] (the returned word may differ), deterministic, with the
/// forward frontier stored to `ceil(d/2) - 1` and the last layer streamed.
pub fn mitm_min(target: &GatePerm, set: &InstanceSet, max_depth: usize) -> Result<SearchResult> {
    mitm_min_budgeted(target, set, max_depth, DEFAULT_MEM_BUDGET)
}

pub fn mitm_min_budgeted(
    target: &GatePerm,
    set: &InstanceSet,
    max_depth: usize,
    mem_budget_bytes: usize,
) -> Result<SearchResult> {
    check_set(target, set)?;
    let start = Instant::now();
    let degree = target.degree();
    let target_state = to_state(target)?;
    let gens: Vec<State> = set
        .items
        .iter()
        .map(|i| to_state(&i.gate))
        .collect::<Result<_>>()?;
    let inv_gens: Vec<State> = set
        .items
        .iter()
        .map(|i| to_state(&i.gate.inverse()))
        .collect::<Result<_>>()?;
    let id = identity_state(degree);

    if target_state == id {
        return Ok(SearchResult {
            status: SearchStatus::Found(Vec::new()),
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        });
    }
    if max_depth == 0 {
        return Ok(SearchResult {
            status: SearchStatus::ExhaustedToDepth(0),
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        });
    }

    let f_max = max_depth.div_ceil(2);
    let b_max = max_depth - f_max;
    let f_store = f_max - 1;
    // rough per-state cost: table + word + map overhead
    let state_bytes = 2 * degree + 64;
    let budget_states = (mem_budget_bytes / state_bytes).max(1024);

    // forward: products of instance gates, first gate applied first
    let (forward, nodes_f) = explore(id, &gens, f_store, budget_states)?;
    // backward: key mul(target, h^-1) for suffix h; extending the suffix by
    // a leading gate g turns the key k into mul(k, g^-1)
    let (backward, nodes_b) =
        explore(target_state.clone(), &inv_gens, b_max, budget_states)?;

    // backward words were recorded as the keys evolved (last suffix gate
    // first); the suffix in application order is the reverse
    let suffix_of = |w: &[u16]| -> Vec<usize> { w.iter().rev().map(|&g| g as usize).collect() };

    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut consider = |total: usize, wf: Vec<usize>, wb: Vec<usize>| {
        let candidate = (total, wf, wb);
        match &best {
            Some(b) if *b <= candidate => {}
            _ => best = Some(candidate),
        }
    };

    // stored-by-stored join
    for (state, (df, wf)) in &forward.map {
        if let Some((db, wb)) = backward.map.get(state) {
            consider(
                *df as usize + *db as usize,
                wf.iter().map(|&g| g as usize).collect(),
                suffix_of(wb),
            );
        }
    }

    // streamed forward layer at depth f_max
    let stream_nodes = (forward.last_layer.len() * gens.len()) as u64;
    if f_max > f_store {
        let stream_best = forward
            .last_layer
            .par_chunks(1024)
            .map(|chunk| {
                let mut local: Option<(usize, Vec<usize>, Vec<usize>)> = None;
                let mut buf = Vec::with_capacity(degree);
                for state in chunk {
                    let wf = &forward.map[state].1;
                    for (gi, gen) in gens.iter().enumerate() {
                        mul_into(state, gen, &mut buf);
                        if forward.map.contains_key(buf.as_slice()) {
                            continue; // already joined at a smaller depth
                        }
                        if let Some((db, wb)) = backward.map.get(buf.as_slice()) {
                            let total = f_max + *db as usize;
                            let mut word_f: Vec<usize> =
                                wf.iter().map(|&g| g as usize).collect();
                            word_f.push(gi);
                            let cand = (total, word_f, suffix_of(wb));
                            match &local {
                                Some(b) if *b <= cand => {}
                                _ => local = Some(cand),
                            }
                        }
                    }
                }
                local
            })
            .reduce(
                || None,
                |a, b| match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => Some(a.min(b)),
                },
            );
        if let Some((total, wf, wb)) = stream_best {
            consider(total, wf, wb);
        }
    }

    let nodes = nodes_f + nodes_b + stream_nodes;
    match best {
        Some((total, wf, wb)) if total <= max_depth => {
            let mut word = wf;
            word.extend(wb);
            assert_word(target, set, &word);
            Ok(SearchResult {
                status: SearchStatus::Found(word),
                nodes_expanded: nodes,
                elapsed: start.elapsed(),
            })
        }
        _ => Ok(SearchResult {
            status: SearchStatus::ExhaustedToDepth(max_depth),
            nodes_expanded: nodes,
            elapsed: start.elapsed(),
        })
    }
}

/// True iff an exhaustive meet-in-the-middle search (complete forward and
/// backward frontiers) finds no representation of length at most `d`.
pub fn certify_lower_bound(target: &GatePerm, set: &InstanceSet, d: usize) -> Result<bool> {
    let result = mitm_min(target, set, d)?;
    Ok(matches!(result.status, SearchStatus::ExhaustedToDepth(_)))
}
