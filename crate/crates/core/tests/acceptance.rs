//! Acceptance suite: every check this library is contractually expected to
//! reproduce, one test per criterion, each printing a PASS line. Run with
//! `cargo test -p revgate --test acceptance -- --nocapture` (the two search
//! criteria take minutes; everything else is fast).

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use revgate::algebra::{
    all_extensions, compose_lr, controlled, controlled_instances, gencomp, parallel, rewire,
    wire_perm, ControlledSpec, GateFamily, WirePermSpec,
};
use revgate::constructions::{
    controlled_rotation, eight_gate_controlled_3cycle, fredkin_universality_generators,
    p3cycle_from_controlled_swaps, three_wire_rotation, ThreeCycleSpec,
};
use revgate::groups::{
    find_unreachable_conservative, generates, parity_sequence, parity_span, StabilizerChain,
    TargetClass,
};
use revgate::search::{bfs_min, certify_lower_bound, mitm_min, InstanceSet, SearchStatus};
use revgate::weight::weight_classes;
use revgate::{GatePerm, Word};

fn factorial(n: usize) -> BigUint {
    (2..=n).map(BigUint::from).product::<BigUint>().max(BigUint::from(1u32))
}

fn pass(criterion: &str, detail: String, t0: std::time::Instant) {
    println!("PASS {criterion}: {detail} ({:.2?})", t0.elapsed());
}

fn random_gate(rng: &mut impl Rng, q: u32, n: usize) -> GatePerm {
    let deg = (q as usize).pow(n as u32);
    let mut table: Vec<u32> = (0..deg as u32).collect();
    table.shuffle(rng);
    GatePerm::from_table(q, n, table).unwrap()
}

fn random_conservative(rng: &mut impl Rng, q: u32, n: usize) -> GatePerm {
    let classes = weight_classes(q, n).unwrap();
    let deg = (q as usize).pow(n as u32);
    let mut table: Vec<u32> = (0..deg as u32).collect();
    for c in 0..classes.class_count() {
        let codes = classes.class_codes(c);
        let mut images = codes.clone();
        images.shuffle(rng);
        for (&src, &dst) in codes.iter().zip(images.iter()) {
            table[src] = dst as u32;
        }
    }
    GatePerm::from_table(q, n, table).unwrap()
}

/// Criterion 1: the eight-gate controlled 3-word-cycle reproduces
/// `controlled(ab, (x y z))` exactly over all 32 inputs, for 20 random word
/// and control choices.
#[test]
fn criterion_01_eight_gate_three_cycle() {
    let t0 = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for _ in 0..20 {
        let mut codes: Vec<usize> = (0..8).collect();
        codes.shuffle(&mut rng);
        let words: Vec<Word> = codes[..5]
            .iter()
            .map(|&c| Word::decode(c, 3, 2).unwrap())
            .collect();
        let spec = ThreeCycleSpec::new(
            words[0].clone(),
            words[1].clone(),
            words[2].clone(),
            words[3].clone(),
            words[4].clone(),
        )
        .unwrap();
        let a = rng.gen_range(0..2);
        let b = rng.gen_range(0..2);
        let circuit = eight_gate_controlled_3cycle(&spec, a, b).unwrap();
        assert_eq!(circuit.len(), 8);
        let oracle = controlled(
            &ControlledSpec::new(Word::new(2, vec![a, b]).unwrap(), spec.cycle()).unwrap(),
        )
        .unwrap();
        assert_eq!(circuit.to_perm().unwrap(), oracle);
    }
    pass("criterion 1", "20 random five-word choices, table-exact".into(), t0);
}

/// Criterion 2: the four-gate controlled-swap circuit equals the
/// ab-controlled 3-cycle for every valid binary symbol choice and for 20
/// random ternary choices.
#[test]
fn criterion_02_four_gate_pattern() {
    let t0 = std::time::Instant::now();
    let mut cases = 0;
    let mut check = |q: u32, a: u32, b: u32, x: u32, s: u32, t: u32, y: u32| {
        let circuit = p3cycle_from_controlled_swaps(q, a, b, x, s, t, y).unwrap();
        assert_eq!(circuit.len(), 4);
        let cycle = GatePerm::from_word_cycle(
            q,
            2,
            &[
                Word::new(q, vec![x, s]).unwrap(),
                Word::new(q, vec![x, t]).unwrap(),
                Word::new(q, vec![y, s]).unwrap(),
            ],
        )
        .unwrap();
        let oracle = controlled(
            &ControlledSpec::new(Word::new(q, vec![a, b]).unwrap(), cycle).unwrap(),
        )
        .unwrap();
        assert_eq!(circuit.to_perm().unwrap(), oracle);
        cases += 1;
    };
    for a in 0..2 {
        for b in 0..2 {
            for x in 0..2 {
                for s in 0..2 {
                    check(2, a, b, x, s, 1 - s, 1 - x);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    for _ in 0..20 {
        let x = rng.gen_range(0..3);
        let s = rng.gen_range(0..3);
        check(
            3,
            rng.gen_range(0..3),
            rng.gen_range(0..3),
            x,
            s,
            (s + rng.gen_range(1..3)) % 3,
            (x + rng.gen_range(1..3)) % 3,
        );
    }
    pass("criterion 2", format!("{cases} symbol choices, table-exact"), t0);
}

fn rotation_instances(n: usize) -> InstanceSet {
    let spec = ControlledSpec::new(
        Word::from_digits(2, "0").unwrap(),
        three_wire_rotation(2),
    )
    .unwrap();
    InstanceSet::enumerate(&[spec], n).unwrap()
}

/// Criterion 3: the 00-controlled rotation needs exactly nine 0-controlled
/// rotations and the 01-controlled rotation exactly eight, over the
/// 40-instance set on five wires, with exhaustion certificates one below.
#[test]
fn criterion_03_rotation_decomposition_depths() {
    let t0 = std::time::Instant::now();
    let set = rotation_instances(5);
    assert_eq!(set.len(), 40);

    let c01 = controlled_rotation("01");
    let found = mitm_min(&c01, &set, 8).unwrap();
    match &found.status {
        SearchStatus::Found(word) => assert_eq!(word.len(), 8, "01-controlled rotation depth"),
        other => panic!("expected a depth-8 circuit, got {other:?}"),
    }
    assert!(certify_lower_bound(&c01, &set, 7).unwrap());

    let c00 = controlled_rotation("00");
    let found = mitm_min(&c00, &set, 9).unwrap();
    match &found.status {
        SearchStatus::Found(word) => assert_eq!(word.len(), 9, "00-controlled rotation depth"),
        other => panic!("expected a depth-9 circuit, got {other:?}"),
    }
    assert!(certify_lower_bound(&c00, &set, 8).unwrap());
    pass("criterion 3", "depths 9/8 with 8/7 exhaustion certificates".into(), t0);
}

/// Criterion 4: both listed word cycles decompose at depth exactly six over
/// the rotation instances on four wires, with depth-5 exhaustion
/// certificates.
#[test]
fn criterion_04_word_cycle_depths() {
    let t0 = std::time::Instant::now();
    let set = rotation_instances(4);
    for cycle in [["0001", "0010", "0100"], ["0011", "0110", "0101"]] {
        let words: Vec<Word> = cycle
            .iter()
            .map(|s| Word::from_digits(2, s).unwrap())
            .collect();
        let target = GatePerm::from_word_cycle(2, 4, &words).unwrap();
        let found = mitm_min(&target, &set, 6).unwrap();
        match &found.status {
            SearchStatus::Found(word) => assert_eq!(word.len(), 6, "{cycle:?}"),
            other => panic!("expected a depth-6 circuit for {cycle:?}, got {other:?}"),
        }
        assert!(certify_lower_bound(&target, &set, 5).unwrap(), "{cycle:?}");
    }
    pass("criterion 4", "two word cycles at depth 6, no depth-5 circuit".into(), t0);
}

/// Criterion 8: with the Fredkin gate as the only generator, the parity
/// span on four wires has at most two elements, and the returned
/// single-class word swap is provably outside the group of all Fredkin
/// extensions (exact membership test at degree 16).
#[test]
fn criterion_08_parity_obstruction_witness() {
    let t0 = std::time::Instant::now();
    let fredkin = revgate::algebra::fredkin();
    let span = parity_span(std::slice::from_ref(&fredkin), 4).unwrap();
    assert!(span.len() <= 2, "span size {}", span.len());

    let witness = find_unreachable_conservative(std::slice::from_ref(&fredkin), 4).unwrap();
    assert!(revgate::weight::is_conservative(&witness));
    let gens = all_extensions(&fredkin, 4).unwrap();
    let chain = StabilizerChain::build(&gens).unwrap();
    assert!(!chain.contains(&witness).unwrap(), "witness must be unreachable");
    pass(
        "criterion 8",
        format!("span size {} <= 2, witness excluded by membership", span.len()),
        t0,
    );
}

/// Criterion 9: the universality generators reach the full alternating
/// conservative class on four and five wires, and the controlled wire
/// rotation itself decomposes into at most four 1-controlled wire swaps.
#[test]
fn criterion_09_fredkin_universality() {
    let t0 = std::time::Instant::now();
    let gens = fredkin_universality_generators();
    for n in [4usize, 5] {
        let mut extended = Vec::new();
        for g in &gens {
            extended.extend(all_extensions(g, n).unwrap());
        }
        assert!(
            generates(&extended, &TargetClass::AltConservative, 2, n).unwrap(),
            "alternating conservative generation at n = {n}"
        );
    }

    let swap = wire_perm(&WirePermSpec::from_cycle(2, &[0, 1]).unwrap(), 2).unwrap();
    let specs: Vec<ControlledSpec> = (0..2)
        .map(|c| {
            ControlledSpec::new(Word::new(2, vec![c]).unwrap(), swap.clone()).unwrap()
        })
        .collect();
    let set = InstanceSet::enumerate(&specs, 4).unwrap();
    let rotation = &gens[0];
    let found = bfs_min(rotation, &set, 4).unwrap();
    let word = found.found_word().expect("short circuit exists");
    assert!(word.len() <= 4, "found at {}", word.len());
    pass(
        "criterion 9",
        format!(
            "generates the class at n=4,5; rotation from {} controlled swaps",
            word.len()
        ),
        t0,
    );
}

/// Criterion 10: the randomized property suites, 100 seeded cases each with
/// zero failures.
#[test]
fn criterion_10_property_suites() {
    let t0 = std::time::Instant::now();

    // parity is a homomorphism
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for _ in 0..100 {
        let f = random_gate(&mut rng, 2, 3);
        let g = random_gate(&mut rng, 2, 3);
        assert_eq!(
            compose_lr(&f, &g).unwrap().parity(),
            f.parity().xor(g.parity())
        );
    }

    // parity sequences survive rewiring
    for _ in 0..100 {
        let f = random_conservative(&mut rng, 2, 4);
        let alpha = WirePermSpec::from_cycle(4, &[0, 1, 3]).unwrap();
        assert_eq!(
            parity_sequence(&rewire(&f, &alpha).unwrap()).unwrap(),
            parity_sequence(&f).unwrap()
        );
    }

    // generalized composition at full overlap is plain composition
    for _ in 0..100 {
        let f = random_gate(&mut rng, 2, 2);
        let g = random_gate(&mut rng, 2, 2);
        assert_eq!(gencomp(&f, &g, 2).unwrap(), compose_lr(&f, &g).unwrap());
        let h = random_gate(&mut rng, 2, 1);
        // and one borrowed wire never changes what is computed
        let widened = parallel(&f, &GatePerm::identity(2, 1).unwrap()).unwrap();
        let _ = h;
        for code in 0..4 {
            assert_eq!(widened.apply_code(code * 2), f.apply_code(code) * 2);
        }
    }

    // parse/serialize round-trip on random circuits
    for i in 0..100 {
        let q = if i % 3 == 0 { 3 } else { 2 };
        let mut circuit = revgate::circuit::Circuit::new(q, 4).unwrap();
        circuit
            .add_def(revgate::circuit::GateDef {
                name: "r".into(),
                kind: revgate::circuit::GateKind::Controlled {
                    control: Word::new(q, vec![rng.gen_range(0..q)]).unwrap(),
                    base: random_gate(&mut rng, q, 2),
                },
            })
            .unwrap();
        for _ in 0..rng.gen_range(0..6) {
            let mut wires: Vec<usize> = (0..4).collect();
            wires.shuffle(&mut rng);
            wires.truncate(3);
            circuit.apply(0, wires).unwrap();
        }
        let text = circuit.serialize();
        assert_eq!(revgate::circuit::Circuit::parse(&text).unwrap(), circuit);
    }

    // factorization re-simulates to its input
    let basis = controlled_instances(GateFamily::P3, 2, 4).unwrap();
    let chain = StabilizerChain::build(&basis).unwrap();
    let mut done = 0;
    while done < 100 {
        let g = random_gate(&mut rng, 2, 4);
        if g.parity() != revgate::Parity::Even {
            continue;
        }
        done += 1;
        let word = chain.factorize(&g).unwrap();
        let mut acc = GatePerm::identity(2, 4).unwrap();
        for idx in word {
            acc = compose_lr(&acc, &basis[idx]).unwrap();
        }
        assert_eq!(acc, g);
    }

    pass("criterion 10", "5 property suites x 100 seeded cases".into(), t0);
}

/// Criterion 5: the control-universality grid, exact chain order against
/// the class order for every listed (family, class, q, n) cell, plus the
/// predicted negative cell for three-symbol rotations at n = |A|.
#[test]
fn criterion_05_control_universality_grid() {
    let t0 = std::time::Instant::now();
    let grid: &[(GateFamily, TargetClass, u32, usize)] = &[
        (GateFamily::P1, TargetClass::Full, 2, 2),
        (GateFamily::P1, TargetClass::Full, 2, 3),
        (GateFamily::P1, TargetClass::Full, 3, 2),
        (GateFamily::P1, TargetClass::Full, 3, 3),
        (GateFamily::P2, TargetClass::Conservative, 2, 2),
        (GateFamily::P2, TargetClass::Conservative, 2, 3),
        (GateFamily::P2, TargetClass::Conservative, 2, 4),
        (GateFamily::P2, TargetClass::Conservative, 3, 2),
        (GateFamily::P2, TargetClass::Conservative, 3, 3),
        (GateFamily::P3, TargetClass::Alt, 2, 2),
        (GateFamily::P3, TargetClass::Alt, 2, 3),
        (GateFamily::P3, TargetClass::Alt, 2, 4),
        (GateFamily::P3, TargetClass::Alt, 3, 2),
        (GateFamily::P3, TargetClass::Alt, 3, 3),
        (GateFamily::P4, TargetClass::AltConservative, 2, 3),
        (GateFamily::P4, TargetClass::AltConservative, 2, 4),
        (GateFamily::P4, TargetClass::AltConservative, 2, 5),
        (GateFamily::P4, TargetClass::AltConservative, 3, 4),
    ];
    for (family, class, q, n) in grid {
        let gens = controlled_instances(*family, *q, *n).unwrap();
        assert!(
            generates(&gens, class, *q, *n).unwrap(),
            "{family:?}/{class:?} q={q} n={n} must generate"
        );
    }
    // spot-check one pinned order from the grid
    assert_eq!(
        revgate::groups::target_order(&TargetClass::Conservative, 2, 4).unwrap(),
        BigUint::from(414_720u32)
    );
    // negative case: rotations cannot connect the split all-distinct classes
    let gens = controlled_instances(GateFamily::P4, 3, 3).unwrap();
    assert!(!generates(&gens, &TargetClass::AltConservative, 3, 3).unwrap());
    pass(
        "criterion 5",
        format!("{} grid cells + negative (3,3) cell", grid.len()),
        t0,
    );
}

/// Criterion 6: even gates of four binary wires generate, through their
/// five-wire extensions, the full alternating group of degree 32.
#[test]
fn criterion_06_alternating_generation_at_degree_32() {
    let t0 = std::time::Instant::now();
    let c3 = GatePerm::from_word_cycle(
        2,
        4,
        &(0..3).map(|c| Word::decode(c, 4, 2).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    let c15 = GatePerm::from_word_cycle(
        2,
        4,
        &(1..16).map(|c| Word::decode(c, 4, 2).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    let mut gens = Vec::new();
    for g in [c3, c15] {
        gens.extend(all_extensions(&g, 5).unwrap());
    }
    let chain = StabilizerChain::build(&gens).unwrap();
    let expected = factorial(32) / 2u32;
    assert_eq!(chain.order(), expected, "order must be 32!/2");
    pass("criterion 6", format!("order {} = 32!/2", chain.order()), t0);
}

/// Criterion 7: over the odd alphabet {0,1,2}, two-wire gates (including an
/// odd word swap) generate through their three-wire extensions the full
/// symmetric group of degree 27.
#[test]
fn criterion_07_full_generation_at_degree_27() {
    let t0 = std::time::Instant::now();
    // transposition (an odd word swap of arity 2) and a 9-cycle generate Sym(9)
    let swap = GatePerm::word_swap(
        3,
        2,
        &Word::decode(0, 2, 3).unwrap(),
        &Word::decode(1, 2, 3).unwrap(),
    )
    .unwrap();
    let c9 = GatePerm::from_word_cycle(
        3,
        2,
        &(0..9).map(|c| Word::decode(c, 2, 3).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    let mut gens = Vec::new();
    for g in [swap, c9] {
        gens.extend(all_extensions(&g, 3).unwrap());
    }
    let chain = StabilizerChain::build(&gens).unwrap();
    assert_eq!(chain.order(), factorial(27), "order must be 27!");
    pass("criterion 7", format!("order {} = 27!", chain.order()), t0);
}
