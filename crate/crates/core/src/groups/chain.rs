//! Deterministic stabilizer chains (Schreier-Sims) with transversal words
//! for factorization into the original generators.
//!
//! The chain works on raw point permutations so it can serve both gates on
//! `A^n` and the small vertex sets of the hypergraph group checks. Base points
//! are chosen as the smallest point moved by the offending residue, which
//! keeps construction deterministic across runs.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::perm::GatePerm;
use crate::{Error, Result};

/// Degree cap for chain building; beyond this the table arithmetic would
/// dominate everything at no benefit to the desk-scale checks.
pub const CHAIN_DEGREE_CAP: usize = 4096;

type Table = Vec<u32>;

fn mul(a: &[u32], b: &[u32]) -> Table {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inv(a: &[u32]) -> Table {
    let mut r = vec![0u32; a.len()];
    for (i, &v) in a.iter().enumerate() {
        r[v as usize] = i as u32;
    }
    r
}

fn is_id(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &v)| i == v as usize)
}

fn smallest_moved(a: &[u32]) -> Option<u32> {
    a.iter()
        .enumerate()
        .find(|&(i, &v)| i != v as usize)
        .map(|(i, _)| i as u32)
}

fn element_order(a: &[u32]) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut seen = vec![false; a.len()];
    let mut order = 1u64;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = a[at] as usize;
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

struct Level {
    base: u32,
    /// Strong generators homed here: they fix every earlier base and move
    /// this one. The effective generating set of a level is the union of
    /// the homes at this level and below.
    gen_ids: Vec<usize>,
    /// Orbit of `base`, append-only across extensions; `orbit[0] == base`.
    orbit: Vec<u32>,
    pos_of: HashMap<u32, usize>,
    /// Transversal aligned with `orbit`: `transversal[i]` maps `base` to
    /// `orbit[i]`.
    transversal: Vec<Table>,
    transversal_inv: Vec<Table>,
    /// Schreier pairs (orbit point, pool generator) already sifted.
    processed: std::collections::HashSet<(u32, usize)>,
}

impl Level {
    fn new(base: u32) -> Self {
        Level {
            base,
            gen_ids: Vec::new(),
            orbit: Vec::new(),
            pos_of: HashMap::new(),
            transversal: Vec::new(),
            transversal_inv: Vec::new(),
            processed: std::collections::HashSet::new(),
        }
    }
}

/// Base/strong-generating-set structure for a permutation group, with
/// transversal words enabling factorization into the original generators.
pub struct StabilizerChain {
    degree: usize,
    gate_shape: Option<(u32, usize)>,
    originals: Vec<Table>,
    pool: Vec<Table>,
    levels: Vec<Level>,
    factor: OnceLock<Result<FactorTables>>,
}

impl StabilizerChain {
    /// Build a chain for the group generated by gates of equal alphabet and
    /// arity. An empty list yields the trivial group's chain.
    pub fn build(gens: &[GatePerm]) -> Result<StabilizerChain> {
        let mut shape = None;
        for g in gens {
            match shape {
                None => shape = Some((g.q(), g.arity())),
                Some((q, n)) => {
                    if g.q() != q {
                        return Err(Error::AlphabetMismatch(g.q(), q));
                    }
                    if g.arity() != n {
                        return Err(Error::ArityMismatch(g.arity(), n));
                    }
                }
            }
        }
        let degree = gens.first().map(|g| g.degree()).unwrap_or(1);
        let mut chain = StabilizerChain::build_raw(
            degree,
            gens.iter().map(|g| g.table().to_vec()).collect(),
        )?;
        chain.gate_shape = shape;
        Ok(chain)
    }

    /// Build from raw point-permutation tables of the given degree.
    pub fn build_raw(degree: usize, gens: Vec<Table>) -> Result<StabilizerChain> {
        if degree > CHAIN_DEGREE_CAP {
            return Err(Error::ResourceCap(format!(
                "chain degree {degree} exceeds cap {CHAIN_DEGREE_CAP}"
            )));
        }
        for g in &gens {
            if g.len() != degree {
                return Err(Error::DegreeMismatch(g.len(), degree));
            }
        }
        let mut chain = StabilizerChain {
            degree,
            gate_shape: None,
            originals: gens,
            pool: Vec::new(),
            levels: Vec::new(),
            factor: OnceLock::new(),
        };
        for i in 0..chain.originals.len() {
            let g = chain.originals[i].clone();
            chain.insert(g);
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_points(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize).collect()
    }

    /// Exact group order: the product of the orbit sizes.
    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for level in &self.levels {
            acc *= BigUint::from(level.orbit.len());
        }
        acc
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &GatePerm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(g.degree(), self.degree));
        }
        Ok(self.contains_raw(g.table()))
    }

    pub fn contains_raw(&self, table: &[u32]) -> bool {
        let mut cur = table.to_vec();
        for level in &self.levels {
            let p = cur[level.base as usize];
            match level.pos_of.get(&p) {
                None => return false,
                Some(&pos) => cur = mul(&cur, &level.transversal_inv[pos]),
            }
        }
        is_id(&cur)
    }

    /// Factor a member into original-generator indices; composing the gates
    /// left to right (first index applies first) reproduces `g` exactly.
    /// Word length is not optimized.
    pub fn factorize(&self, g: &GatePerm) -> Result<Vec<usize>> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(g.degree(), self.degree));
        }
        self.factorize_raw(g.table())
    }

    pub fn factorize_raw(&self, table: &[u32]) -> Result<Vec<usize>> {
        let tables = self
            .factor
            .get_or_init(|| FactorTables::build(self))
            .as_ref()
            .map_err(|e| e.clone())?;
        let mut cur = table.to_vec();
        let mut per_level: Vec<&SignedWord> = Vec::with_capacity(self.levels.len());
        for (level, slots) in self.levels.iter().zip(tables.slots.iter()) {
            let p = cur[level.base as usize];
            let slot = slots.get(&p).ok_or(Error::NotInGroup)?;
            cur = mul(&cur, &inv(&slot.perm));
            per_level.push(&slot.word);
        }
        if !is_id(&cur) {
            return Err(Error::NotInGroup);
        }
        // g = u_{L-1} u_{L-2} ... u_0, composing left to right.
        let mut signed: SignedWord = Vec::new();
        for word in per_level.iter().rev() {
            signed.extend_from_slice(word);
        }
        self.positivize(&signed)
    }

    /// Replace inverse letters `g^-1` by `g^(ord(g)-1)` so the word uses
    /// only the generators themselves.
    fn positivize(&self, signed: &SignedWord) -> Result<Vec<usize>> {
        const MAX_LEN: usize = 50_000_000;
        let mut out = Vec::new();
        for &s in signed {
            let idx = s.unsigned_abs() as usize - 1;
            let copies = if s > 0 {
                1
            } else {
                element_order(&self.originals[idx]) as usize - 1
            };
            if out.len() + copies > MAX_LEN {
                return Err(Error::ResourceCap(
                    "factorization word grew past 5e7 letters".into(),
                ));
            }
            out.extend(std::iter::repeat_n(idx, copies));
        }
        Ok(out)
    }

    /// Every strong generator must sift to the identity.
    pub fn verify(&self) -> bool {
        self.pool.iter().all(|g| self.contains_raw(g))
            && self.originals.iter().all(|g| self.contains_raw(g))
    }

    fn insert(&mut self, g: Table) {
        if is_id(&g) || self.contains_raw(&g) {
            return;
        }
        self.place(g);
        self.verify_all();
    }

    /// Sift from the given level down; returns the level at which the
    /// residue got stuck (possibly one past the end) and the residue.
    fn sift_from(&self, from: usize, g: Table) -> (usize, Table) {
        let mut cur = g;
        for j in from..self.levels.len() {
            let level = &self.levels[j];
            let p = cur[level.base as usize];
            match level.pos_of.get(&p) {
                None => return (j, cur),
                Some(&pos) => cur = mul(&cur, &level.transversal_inv[pos]),
            }
        }
        (self.levels.len(), cur)
    }

    /// Home a new strong generator at the first level whose base it moves,
    /// appending a level if it fixes every existing base.
    fn place(&mut self, g: Table) -> usize {
        let mut home = 0;
        while home < self.levels.len() {
            let b = self.levels[home].base as usize;
            if g[b] as usize != b {
                break;
            }
            home += 1;
        }
        if home == self.levels.len() {
            let base = smallest_moved(&g).expect("identity is never placed");
            self.levels.push(Level::new(base));
        }
        let id = self.pool.len();
        self.pool.push(g);
        self.levels[home].gen_ids.push(id);
        home
    }

    /// Bottom-up verification: process each level's new Schreier pairs,
    /// descending again whenever a residue homes deeper.
    fn verify_all(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.process_level(i) {
                Some(j) => i = j,
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
    }

    /// Pool ids of the effective generating set of a level: every strong
    /// generator homed at this level or deeper fixes all earlier bases.
    fn effective_gens(&self, level: usize) -> Vec<usize> {
        self.levels[level..]
            .iter()
            .flat_map(|l| l.gen_ids.iter().copied())
            .collect()
    }

    /// Extend orbit, transversals, and Schreier pairs at one level; on the
    /// first unresolved residue, home it and report its level.
    fn process_level(&mut self, i: usize) -> Option<usize> {
        self.extend_orbit(i);
        let gens = self.effective_gens(i);
        let orbit_len = self.levels[i].orbit.len();
        for pos in 0..orbit_len {
            let p = self.levels[i].orbit[pos];
            for &gid in &gens {
                if !self.levels[i].processed.insert((p, gid)) {
                    continue;
                }
                let schreier = {
                    let lv = &self.levels[i];
                    let img = self.pool[gid][p as usize];
                    let img_pos = lv.pos_of[&img];
                    mul(
                        &mul(&lv.transversal[pos], &self.pool[gid]),
                        &lv.transversal_inv[img_pos],
                    )
                };
                if is_id(&schreier) {
                    continue;
                }
                let (_, residue) = self.sift_from(i + 1, schreier);
                if !is_id(&residue) {
                    let home = self.place(residue);
                    debug_assert!(home > i, "Schreier residues fix the first i+1 bases");
                    return Some(home);
                }
            }
        }
        None
    }

    /// Append-only orbit extension under the current effective generators.
    fn extend_orbit(&mut self, level: usize) {
        let gens = self.effective_gens(level);
        if self.levels[level].orbit.is_empty() {
            let base = self.levels[level].base;
            let lv = &mut self.levels[level];
            lv.orbit.push(base);
            lv.pos_of.insert(base, 0);
            lv.transversal.push((0..self.degree as u32).collect());
            lv.transversal_inv.push((0..self.degree as u32).collect());
        }
        let mut head = 0usize;
        while head < self.levels[level].orbit.len() {
            let p = self.levels[level].orbit[head];
            for &gid in &gens {
                let img = self.pool[gid][p as usize];
                if !self.levels[level].pos_of.contains_key(&img) {
                    let u = mul(&self.levels[level].transversal[head], &self.pool[gid]);
                    let lv = &mut self.levels[level];
                    lv.pos_of.insert(img, lv.orbit.len());
                    lv.orbit.push(img);
                    lv.transversal_inv.push(inv(&u));
                    lv.transversal.push(u);
                }
            }
            head += 1;
        }
    }
}

/// Letters are `idx + 1` for a generator and `-(idx + 1)` for its inverse.
type SignedWord = Vec<i32>;

fn invert_word(w: &SignedWord) -> SignedWord {
    w.iter().rev().map(|&s| -s).collect()
}

struct Slot {
    perm: Table,
    word: SignedWord,
}

/// Per-level transversal words over the original generators, filled by
/// sifting short words and products of already-stored words (Minkwitz's
/// scheme); built lazily on first factorization.
struct FactorTables {
    slots: Vec<HashMap<u32, Slot>>,
}

impl FactorTables {
    fn build(chain: &StabilizerChain) -> Result<FactorTables> {
        const BATCH: usize = 20_000;
        const MAX_WORDS: usize = 5_000_000;

        let mut slots: Vec<HashMap<u32, Slot>> = Vec::new();
        for level in &chain.levels {
            let mut m = HashMap::new();
            m.insert(
                level.base,
                Slot {
                    perm: (0..chain.degree as u32).collect(),
                    word: Vec::new(),
                },
            );
            slots.push(m);
        }
        let target: usize = chain.levels.iter().map(|l| l.orbit.len()).sum();
        let mut filled = chain.levels.len();
        if filled == target {
            return Ok(FactorTables { slots });
        }

        // alphabet of signed letters over the non-identity originals
        let mut letters: Vec<(Table, i32)> = Vec::new();
        for (i, g) in chain.originals.iter().enumerate() {
            if is_id(g) {
                continue;
            }
            letters.push((g.clone(), i as i32 + 1));
            letters.push((inv(g), -(i as i32 + 1)));
        }

        let sift = |slots: &mut Vec<HashMap<u32, Slot>>,
                    filled: &mut usize,
                    mut perm: Table,
                    mut word: SignedWord| {
            let mut level = 0usize;
            while level < chain.levels.len() {
                if is_id(&perm) {
                    return;
                }
                let base = chain.levels[level].base;
                let p = perm[base as usize];
                match slots[level].get_mut(&p) {
                    None => {
                        slots[level].insert(p, Slot { perm, word });
                        *filled += 1;
                        return;
                    }
                    Some(slot) => {
                        if word.len() < slot.word.len() {
                            std::mem::swap(&mut perm, &mut slot.perm);
                            std::mem::swap(&mut word, &mut slot.word);
                        }
                        if word.len() > 4096 {
                            return;
                        }
                        let next_perm = mul(&perm, &inv(&slot.perm));
                        let mut next_word = word;
                        next_word.extend(invert_word(&slot.word));
                        perm = next_perm;
                        word = next_word;
                        level += 1;
                    }
                }
            }
        };

        let mut digits: Vec<usize> = vec![0];
        let mut words_seen = 0usize;
        while filled < target {
            for _ in 0..BATCH {
                // evaluate the current word
                let mut perm: Table = (0..chain.degree as u32).collect();
                let mut word = Vec::with_capacity(digits.len());
                for &d in &digits {
                    perm = mul(&perm, &letters[d].0);
                    word.push(letters[d].1);
                }
                sift(&mut slots, &mut filled, perm, word);
                words_seen += 1;
                if filled == target {
                    break;
                }
                // next word in length-lex order
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        digits = vec![0; digits.len() + 1];
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < letters.len() {
                        break;
                    }
                    digits[i] = 0;
                }
            }
            if filled == target {
                break;
            }
            // push products of stored transversal words deeper; both factors
            // fix every base above `level`, so the product sifts through the
            // upper levels for free
            'improve: for level in 0..chain.levels.len() {
                let points: Vec<u32> = chain.levels[level]
                    .orbit
                    .iter()
                    .copied()
                    .filter(|p| slots[level].contains_key(p))
                    .collect();
                for &p1 in &points {
                    for &p2 in &points {
                        let (perm, word) = {
                            let a = &slots[level][&p1];
                            let b = &slots[level][&p2];
                            if a.word.is_empty() && b.word.is_empty() {
                                continue;
                            }
                            let mut w = a.word.clone();
                            w.extend_from_slice(&b.word);
                            (mul(&a.perm, &b.perm), w)
                        };
                        sift(&mut slots, &mut filled, perm, word);
                        if filled == target {
                            break 'improve;
                        }
                    }
                }
            }
            if filled < target && words_seen > MAX_WORDS {
                return Err(Error::ResourceCap(format!(
                    "transversal word fill stalled after {words_seen} words \
                     ({filled}/{target} slots)"
                )));
            }
        }
        Ok(FactorTables { slots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{controlled_instances, GateFamily};
    use crate::testutil::{random_gate, w};
    use crate::Word;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    /// Brute-force closure, the independent oracle for order/membership.
    fn closure(gens: &[GatePerm], cap: usize) -> HashSet<Vec<u32>> {
        let degree = gens[0].degree();
        let mut set: HashSet<Vec<u32>> = HashSet::new();
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut frontier = vec![id.clone()];
        set.insert(id);
        while let Some(cur) = frontier.pop() {
            for g in gens {
                let next = mul(&cur, g.table());
                if !set.contains(&next) {
                    assert!(set.len() <= cap, "closure exceeded cap");
                    set.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        set
    }

    #[test]
    fn trivial_and_tiny_chains() {
        let chain = StabilizerChain::build(&[]).unwrap();
        assert_eq!(chain.order(), BigUint::from(1u32));
        assert!(chain.verify());

        let swap = GatePerm::from_table(2, 1, vec![1, 0]).unwrap();
        let chain = StabilizerChain::build(std::slice::from_ref(&swap)).unwrap();
        assert_eq!(chain.order(), BigUint::from(2u32));
        assert!(chain.contains(&swap).unwrap());
        assert!(chain.contains(&GatePerm::identity(2, 1).unwrap()).unwrap());
    }

    #[test]
    fn p1_controlled_instances_generate_sym4() {
        let gens = controlled_instances(GateFamily::P1, 2, 2).unwrap();
        let chain = StabilizerChain::build(&gens).unwrap();
        assert_eq!(chain.order(), BigUint::from(24u32));
        assert_eq!(closure(&gens, 100).len(), 24);
        assert!(chain.verify());
    }

    #[test]
    fn alternating_chain_on_eight_points() {
        // A_8 = <(012), (1234567)>
        let c3 = GatePerm::from_word_cycle(
            2,
            3,
            &[w(2, "000"), w(2, "001"), w(2, "010")],
        )
        .unwrap();
        let c7 = GatePerm::from_word_cycle(
            2,
            3,
            &(1..8)
                .map(|c| Word::decode(c, 3, 2).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let chain = StabilizerChain::build(&[c3.clone(), c7]).unwrap();
        assert_eq!(chain.order(), BigUint::from(20160u32));
        // parity obstruction: an odd permutation is not a member
        let odd = GatePerm::word_swap(2, 3, &w(2, "000"), &w(2, "001")).unwrap();
        assert!(!chain.contains(&odd).unwrap());
        assert!(chain.contains(&c3).unwrap());
    }

    #[test]
    fn order_and_membership_match_brute_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..8 {
            let gens: Vec<GatePerm> = (0..2).map(|_| random_gate(&mut rng, 2, 2)).collect();
            let chain = StabilizerChain::build(&gens).unwrap();
            let set = closure(&gens, 100_000);
            assert_eq!(chain.order(), BigUint::from(set.len()));
            for _ in 0..20 {
                let candidate = random_gate(&mut rng, 2, 2);
                assert_eq!(
                    chain.contains(&candidate).unwrap(),
                    set.contains(candidate.table())
                );
            }
        }
        // a conservative-ish group on 3 wires stays small enough to cross-check
        let fredkin = crate::algebra::fredkin();
        let rot = crate::algebra::wire_perm(
            &crate::algebra::WirePermSpec::from_cycle(3, &[0, 1, 2]).unwrap(),
            2,
        )
        .unwrap();
        let gens = vec![fredkin, rot];
        let chain = StabilizerChain::build(&gens).unwrap();
        let set = closure(&gens, 100_000);
        assert_eq!(chain.order(), BigUint::from(set.len()));
    }

    #[test]
    fn factorize_identity_and_generators() {
        let gens = controlled_instances(GateFamily::P1, 2, 2).unwrap();
        let chain = StabilizerChain::build(&gens).unwrap();
        assert_eq!(
            chain.factorize(&GatePerm::identity(2, 2).unwrap()).unwrap(),
            Vec::<usize>::new()
        );
        for g in &gens {
            let word = chain.factorize(g).unwrap();
            let mut acc = GatePerm::identity(2, 2).unwrap();
            for idx in word {
                acc = acc.compose_lr(&gens[idx]).unwrap();
            }
            assert_eq!(&acc, g);
        }
    }

    #[test]
    fn factorize_random_even_gates_over_p3_instances() {
        let gens = controlled_instances(GateFamily::P3, 2, 4).unwrap();
        let chain = StabilizerChain::build(&gens).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut done = 0;
        while done < 100 {
            let g = random_gate(&mut rng, 2, 4);
            if g.parity() != crate::perm::Parity::Even {
                continue;
            }
            done += 1;
            let word = chain.factorize(&g).unwrap();
            let mut acc = GatePerm::identity(2, 4).unwrap();
            for idx in &word {
                acc = acc.compose_lr(&gens[*idx]).unwrap();
            }
            assert_eq!(acc, g, "factorization must re-simulate to the input");
        }
    }

    #[test]
    fn factorize_rejects_non_members() {
        let gens = controlled_instances(GateFamily::P3, 2, 3).unwrap();
        let chain = StabilizerChain::build(&gens).unwrap();
        let odd = GatePerm::word_swap(2, 3, &w(2, "000"), &w(2, "001")).unwrap();
        assert!(matches!(chain.factorize(&odd), Err(Error::NotInGroup)));
        let wrong_degree = GatePerm::identity(2, 2).unwrap();
        assert!(matches!(
            chain.contains(&wrong_degree),
            Err(Error::DegreeMismatch(..))
        ));
    }

    #[test]
    fn finished_chains_are_safe_for_concurrent_queries() {
        fn assert_shareable<T: Send + Sync>() {}
        assert_shareable::<StabilizerChain>();
        let gens = std::sync::Arc::new(controlled_instances(GateFamily::P1, 2, 2).unwrap());
        let chain = std::sync::Arc::new(StabilizerChain::build(&gens).unwrap());
        let handles: Vec<_> = (0..4)
            .map(|seed| {
                let chain = std::sync::Arc::clone(&chain);
                let gens = std::sync::Arc::clone(&gens);
                std::thread::spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    for _ in 0..20 {
                        let g = random_gate(&mut rng, 2, 2);
                        if chain.contains(&g).unwrap() {
                            let word = chain.factorize(&g).unwrap();
                            let mut acc = GatePerm::identity(2, 2).unwrap();
                            for idx in word {
                                acc = acc.compose_lr(&gens[idx]).unwrap();
                            }
                            assert_eq!(acc, g);
                        }
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn degree_cap_is_enforced() {
        let gens = vec![GatePerm::identity(2, 13).unwrap()];
        assert!(matches!(
            StabilizerChain::build(&gens),
            Err(Error::ResourceCap(_))
        ));
    }
}
