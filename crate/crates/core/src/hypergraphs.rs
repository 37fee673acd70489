//! The four rewrite (hyper)graphs on `A^n` whose connected components
//! underpin the control-universality results, plus desk-scale checks that
//! edge swaps generate the symmetric groups of the components and edge
//! 3-cycles the alternating groups.
//!
//! Edges are generated implicitly (word times local rewrite) and fed to a
//! union-find; nothing is materialized.

use num_bigint::BigUint;

use crate::groups::StabilizerChain;
use crate::partition::ComponentPartition;
use crate::word::degree;
use crate::{Error, Result, Word};

/// Which rewrite graph on `A^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Edges between words at Hamming distance one.
    G1,
    /// Edges swapping two adjacent symbols.
    G2,
    /// 3-hyperedges `{uabv, uacv, udbv}` with `a != d`, `b != c`.
    G3,
    /// 3-hyperedges rotating three consecutive symbols.
    G4,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut at = x;
        while self.parent[at as usize] != root {
            let next = self.parent[at as usize];
            self.parent[at as usize] = root;
            at = next;
        }
        root
    }

    /// Union keeping the smaller code as the root, so representatives are
    /// canonical regardless of edge order.
    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
    }
}

/// Visit the rewrite neighbors of one word (as symbol buffer + code).
/// Every emitted neighbor shares a (hyper)edge of the graph with the word.
fn for_each_neighbor(
    kind: GraphKind,
    q: u32,
    symbols: &[u32],
    code: usize,
    places: &[usize],
    mut visit: impl FnMut(usize),
) {
    let n = symbols.len();
    match kind {
        GraphKind::G1 => {
            for i in 0..n {
                for b in 0..q {
                    if b != symbols[i] {
                        let delta = b as isize - symbols[i] as isize;
                        visit((code as isize + delta * places[i] as isize) as usize);
                    }
                }
            }
        }
        GraphKind::G2 => {
            for i in 0..n.saturating_sub(1) {
                let (a, b) = (symbols[i], symbols[i + 1]);
                if a != b {
                    let delta = (b as isize - a as isize) * places[i] as isize
                        + (a as isize - b as isize) * places[i + 1] as isize;
                    visit((code as isize + delta) as usize);
                }
            }
        }
        GraphKind::G3 => {
            // from uabv reach uacv (c != b) and udbv (d != a); both lie in a
            // common hyperedge with the word
            for i in 0..n.saturating_sub(1) {
                let (a, b) = (symbols[i], symbols[i + 1]);
                for c in 0..q {
                    if c != b {
                        let delta = c as isize - b as isize;
                        visit((code as isize + delta * places[i + 1] as isize) as usize);
                    }
                }
                for d in 0..q {
                    if d != a {
                        let delta = d as isize - a as isize;
                        visit((code as isize + delta * places[i] as isize) as usize);
                    }
                }
            }
        }
        GraphKind::G4 => {
            for i in 0..n.saturating_sub(2) {
                let (a, b, c) = (symbols[i], symbols[i + 1], symbols[i + 2]);
                // abc -> bca
                let delta = (b as isize - a as isize) * places[i] as isize
                    + (c as isize - b as isize) * places[i + 1] as isize
                    + (a as isize - c as isize) * places[i + 2] as isize;
                visit((code as isize + delta) as usize);
            }
        }
    }
}

/// Connected components of the chosen graph, canonical by minimum word
/// code. For the 3-hypergraphs this is connectivity of the underlying
/// graph, which coincides with hypergraph connectivity.
pub fn components(kind: GraphKind, q: u32, n: usize) -> Result<ComponentPartition> {
    let deg = degree(q, n)?;
    let mut uf = UnionFind::new(deg);
    let mut places = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        places[i] = places[i + 1] * q as usize;
    }
    let mut symbols = vec![0u32; n];
    for code in 0..deg {
        for_each_neighbor(kind, q, &symbols, code, &places, |neighbor| {
            uf.union(code as u32, neighbor as u32);
        });
        // radix odometer
        for i in (0..n).rev() {
            symbols[i] += 1;
            if symbols[i] < q {
                break;
            }
            symbols[i] = 0;
        }
    }
    let mut ids: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    let mut class_of = Vec::with_capacity(deg);
    for code in 0..deg {
        let root = uf.find(code as u32);
        let next = ids.len() as u32;
        class_of.push(*ids.entry(root).or_insert(next));
    }
    Ok(ComponentPartition::from_class_indices(q, n, class_of))
}

/// A hypergraph with uniform edge size on vertices `0..vertices`.
#[derive(Debug, Clone)]
pub struct SmallHypergraph {
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl SmallHypergraph {
    pub fn new(vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let size = edges.first().map(|e| e.len());
        for e in &edges {
            if Some(e.len()) != size {
                return Err(Error::MixedEdgeSizes);
            }
            let mut sorted = e.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != e.len() || e.iter().any(|&v| v >= vertices) {
                return Err(Error::BadEdge(e.clone()));
            }
        }
        Ok(SmallHypergraph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Component sizes under "in a common edge", ascending by minimum vertex.
    fn component_sizes(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices);
        for e in &self.edges {
            for pair in e.windows(2) {
                uf.union(pair[0] as u32, pair[1] as u32);
            }
        }
        let mut sizes: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
        for v in 0..self.vertices {
            *sizes.entry(uf.find(v as u32)).or_insert(0) += 1;
        }
        let mut out: Vec<(u32, usize)> = sizes.into_iter().collect();
        out.sort_unstable();
        out.into_iter().map(|(_, s)| s).collect()
    }
}

const GROUP_CHECK_VERTEX_CAP: usize = 12;

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

fn cycle_table(vertices: usize, cycle: &[usize]) -> Vec<u32> {
    let mut t: Vec<u32> = (0..vertices as u32).collect();
    for (i, &v) in cycle.iter().enumerate() {
        t[v] = cycle[(i + 1) % cycle.len()] as u32;
    }
    t
}

/// True iff the swaps along the edges generate the direct product of the
/// symmetric groups on the connected components (exact order comparison).
pub fn swap_group_check(h: &SmallHypergraph) -> Result<bool> {
    if h.vertices > GROUP_CHECK_VERTEX_CAP {
        return Err(Error::GraphTooLarge {
            got: h.vertices,
            max: GROUP_CHECK_VERTEX_CAP,
        });
    }
    if let Some(e) = h.edges.iter().find(|e| e.len() != 2) {
        return Err(Error::BadEdge(e.clone()));
    }
    let gens: Vec<Vec<u32>> = h.edges.iter().map(|e| cycle_table(h.vertices, e)).collect();
    let chain = StabilizerChain::build_raw(h.vertices, gens)?;
    let expected: BigUint = h.component_sizes().into_iter().map(factorial).product();
    Ok(chain.order() == expected)
}

/// True iff the 3-cycles along the hyperedges (both orientations) generate
/// the direct product of the alternating groups on the components.
pub fn cycling_group_check(h: &SmallHypergraph) -> Result<bool> {
    if h.vertices > GROUP_CHECK_VERTEX_CAP {
        return Err(Error::GraphTooLarge {
            got: h.vertices,
            max: GROUP_CHECK_VERTEX_CAP,
        });
    }
    if let Some(e) = h.edges.iter().find(|e| e.len() != 3) {
        return Err(Error::BadEdge(e.clone()));
    }
    let mut gens = Vec::new();
    for e in &h.edges {
        gens.push(cycle_table(h.vertices, e));
        gens.push(cycle_table(h.vertices, &[e[0], e[2], e[1]]));
    }
    let chain = StabilizerChain::build_raw(h.vertices, gens)?;
    let expected: BigUint = h
        .component_sizes()
        .into_iter()
        .map(|s| if s >= 2 { factorial(s) / 2u32 } else { BigUint::from(1u32) })
        .product();
    Ok(chain.order() == expected)
}

/// One rotation of three consecutive wires, `pos..pos+2`; forward sends
/// `abc` to `bca`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsecRotation {
    pub pos: usize,
    pub forward: bool,
}

impl ConsecRotation {
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut s = w.symbols().to_vec();
        if self.pos + 2 >= s.len() {
            return Err(Error::PositionOutOfRange {
                pos: self.pos + 2,
                n: s.len(),
            });
        }
        if self.forward {
            s[self.pos..=self.pos + 2].rotate_left(1);
        } else {
            s[self.pos..=self.pos + 2].rotate_right(1);
        }
        Word::new(w.q(), s)
    }
}

/// A sequence of consecutive-triple rotations carrying `u` to `v`, or
/// `None` when they lie in different rotation components. Words of equal
/// weight are always routable once `n > q`.
pub fn consecutive_3cycle_parity_route(
    q: u32,
    n: usize,
    u: &Word,
    v: &Word,
) -> Result<Option<Vec<ConsecRotation>>> {
    if u.len() != n {
        return Err(Error::LengthMismatch(u.len(), n));
    }
    if v.len() != n {
        return Err(Error::LengthMismatch(v.len(), n));
    }
    if crate::weight::weight(u) != crate::weight::weight(v) {
        return Err(Error::WeightMismatch);
    }
    let start = u.encode();
    let target = v.encode();
    let deg = degree(q, n)?;
    let mut prev: Vec<Option<(u32, ConsecRotation)>> = vec![None; deg];
    let mut seen = vec![false; deg];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(code) = queue.pop_front() {
        if code == target {
            let mut route = Vec::new();
            let mut at = code;
            while at != start {
                let (parent, step) = prev[at].expect("reached along BFS tree");
                route.push(step);
                at = parent as usize;
            }
            route.reverse();
            return Ok(Some(route));
        }
        let word = Word::decode(code, n, q)?;
        for pos in 0..n.saturating_sub(2) {
            for forward in [true, false] {
                let step = ConsecRotation { pos, forward };
                let next = step.apply(&word)?.encode();
                if !seen[next] {
                    seen[next] = true;
                    prev[next] = Some((code as u32, step));
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::w;
    use crate::weight::weight_classes;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn component_examples() {
        assert_eq!(components(GraphKind::G1, 2, 3).unwrap().class_count(), 1);
        let g2 = components(GraphKind::G2, 2, 4).unwrap();
        assert_eq!(g2.class_count(), 5);
        assert!(g2.same_classes_as(&weight_classes(2, 4).unwrap()));
        let g3 = components(GraphKind::G3, 2, 1).unwrap();
        assert_eq!(g3.class_count(), 2);
        // q = 3, n = 3: the all-distinct class splits by parity
        let g4 = components(GraphKind::G4, 3, 3).unwrap();
        assert_eq!(g4.class_count(), 11);
        let class_of = |s: &str| g4.class_of(w(3, s).encode());
        assert_eq!(class_of("012"), class_of("120"));
        assert_eq!(class_of("012"), class_of("201"));
        assert_ne!(class_of("012"), class_of("021"));
    }

    #[test]
    fn g2_components_are_weight_classes() {
        for q in 2..=3u32 {
            for n in 1..=6usize {
                assert!(
                    components(GraphKind::G2, q, n)
                        .unwrap()
                        .same_classes_as(&weight_classes(q, n).unwrap()),
                    "q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn g3_is_connected_from_two_wires_on() {
        for q in 2..=3u32 {
            for n in 2..=5usize {
                assert_eq!(
                    components(GraphKind::G3, q, n).unwrap().class_count(),
                    1,
                    "q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn g4_components_are_weight_classes_past_alphabet_size() {
        for q in 2..=3u32 {
            for n in (q as usize + 1)..=6 {
                assert!(
                    components(GraphKind::G4, q, n)
                        .unwrap()
                        .same_classes_as(&weight_classes(q, n).unwrap()),
                    "q={q} n={n}"
                );
            }
        }
    }

    /// Independent pattern re-match: every neighbor emitted by the edge
    /// generator must genuinely satisfy the defining rewrite pattern.
    #[test]
    fn emitted_edges_match_their_patterns() {
        let q = 3u32;
        let n = 4usize;
        let mut places = vec![1usize; n];
        for i in (0..n - 1).rev() {
            places[i] = places[i + 1] * q as usize;
        }
        let check = |kind: GraphKind, pattern: &dyn Fn(&[u32], &[u32]) -> bool| {
            for code in 0..degree(q, n).unwrap() {
                let word = Word::decode(code, n, q).unwrap();
                for_each_neighbor(kind, q, word.symbols(), code, &places, |neighbor| {
                    let other = Word::decode(neighbor, n, q).unwrap();
                    assert!(
                        pattern(word.symbols(), other.symbols()),
                        "{kind:?}: {:?} -> {:?}",
                        word.symbols(),
                        other.symbols()
                    );
                });
            }
        };
        check(GraphKind::G1, &|a, b| {
            a.iter().zip(b).filter(|(x, y)| x != y).count() == 1
        });
        check(GraphKind::G2, &|a, b| {
            (0..a.len() - 1).any(|i| {
                a[i] != a[i + 1]
                    && b[i] == a[i + 1]
                    && b[i + 1] == a[i]
                    && (0..a.len()).all(|j| j == i || j == i + 1 || a[j] == b[j])
            })
        });
        check(GraphKind::G3, &|a, b| {
            (0..a.len() - 1).any(|i| {
                let same_elsewhere = (0..a.len()).all(|j| j == i || j == i + 1 || a[j] == b[j]);
                let one_of_pair_changed = (a[i] == b[i]) != (a[i + 1] == b[i + 1]);
                same_elsewhere && one_of_pair_changed
            })
        });
        check(GraphKind::G4, &|a, b| {
            (0..a.len() - 2).any(|i| {
                b[i] == a[i + 1]
                    && b[i + 1] == a[i + 2]
                    && b[i + 2] == a[i]
                    && (0..a.len()).all(|j| (i..=i + 2).contains(&j) || a[j] == b[j])
            })
        });
    }

    #[test]
    fn swap_group_examples() {
        let path4 = SmallHypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(swap_group_check(&path4).unwrap());
        let disjoint = SmallHypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(swap_group_check(&disjoint).unwrap());
        let edgeless = SmallHypergraph::new(5, vec![]).unwrap();
        assert!(swap_group_check(&edgeless).unwrap());
        let big = SmallHypergraph::new(13, vec![]).unwrap();
        assert!(matches!(
            swap_group_check(&big),
            Err(Error::GraphTooLarge { .. })
        ));
    }

    #[test]
    fn cycling_group_examples() {
        // overlapping in two points: A4; in one point: A5; alone: order 3
        let a4 = SmallHypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert!(cycling_group_check(&a4).unwrap());
        let a5 = SmallHypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert!(cycling_group_check(&a5).unwrap());
        let single = SmallHypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(cycling_group_check(&single).unwrap());
    }

    #[test]
    fn group_identities_hold_on_random_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let vertices = rng.gen_range(2..=9usize);
            let edge_count = rng.gen_range(0..=vertices);
            let mut edges = Vec::new();
            for _ in 0..edge_count {
                let a = rng.gen_range(0..vertices);
                let b = rng.gen_range(0..vertices);
                if a != b {
                    edges.push(vec![a, b]);
                }
            }
            let h = SmallHypergraph::new(vertices, edges).unwrap();
            assert!(swap_group_check(&h).unwrap());
        }
        for _ in 0..200 {
            let vertices = rng.gen_range(3..=9usize);
            let edge_count = rng.gen_range(0..=vertices);
            let mut edges = Vec::new();
            for _ in 0..edge_count {
                let mut e: Vec<usize> = (0..vertices).collect();
                e.shuffle(&mut rng);
                e.truncate(3);
                edges.push(e);
            }
            let h = SmallHypergraph::new(vertices, edges).unwrap();
            assert!(cycling_group_check(&h).unwrap());
        }
    }

    #[test]
    fn rotation_route_examples() {
        let u = w(2, "001");
        assert_eq!(
            consecutive_3cycle_parity_route(2, 3, &u, &u).unwrap(),
            Some(vec![])
        );

        let route = consecutive_3cycle_parity_route(2, 3, &u, &w(2, "100"))
            .unwrap()
            .expect("same 3-word class");
        assert_eq!(route.len(), 1);
        let mut at = u.clone();
        for step in &route {
            at = step.apply(&at).unwrap();
        }
        assert_eq!(at, w(2, "100"));

        // opposite parity components at q = 3, n = 3
        assert_eq!(
            consecutive_3cycle_parity_route(3, 3, &w(3, "012"), &w(3, "021")).unwrap(),
            None
        );
        assert!(matches!(
            consecutive_3cycle_parity_route(2, 3, &w(2, "001"), &w(2, "011")),
            Err(Error::WeightMismatch)
        ));
    }

    #[test]
    fn routes_replay_to_their_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for _ in 0..50 {
            let n = 5;
            let q = 2;
            let classes = weight_classes(q, n).unwrap();
            let class = rng.gen_range(0..classes.class_count());
            let codes = classes.class_codes(class);
            let u = Word::decode(codes[rng.gen_range(0..codes.len())], n, q).unwrap();
            let v = Word::decode(codes[rng.gen_range(0..codes.len())], n, q).unwrap();
            let route = consecutive_3cycle_parity_route(q, n, &u, &v)
                .unwrap()
                .expect("n > q: classes are connected");
            let mut at = u.clone();
            for step in &route {
                at = step.apply(&at).unwrap();
            }
            assert_eq!(at, v);
        }
    }
}
