use criterion::{black_box, criterion_group, criterion_main, Criterion};

use revgate::algebra::{compose_lr, controlled_instances, ControlledSpec, GateFamily};
use revgate::constructions::three_wire_rotation;
use revgate::groups::StabilizerChain;
use revgate::hypergraphs::{components, GraphKind};
use revgate::search::{bfs_min, InstanceSet};
use revgate::{GatePerm, Word};

fn bench_compose(c: &mut Criterion) {
    let set = controlled_instances(GateFamily::P3, 2, 4).unwrap();
    let f = &set[0];
    let g = &set[1];
    c.bench_function("compose degree 16", |b| {
        b.iter(|| compose_lr(black_box(f), black_box(g)).unwrap())
    });
}

fn bench_chain_build(c: &mut Criterion) {
    let gens = controlled_instances(GateFamily::P3, 2, 3).unwrap();
    c.bench_function("chain of Alt(8) from controlled cycles", |b| {
        b.iter(|| StabilizerChain::build(black_box(&gens)).unwrap().order())
    });
}

fn bench_components(c: &mut Criterion) {
    c.bench_function("G3 components at degree 4096", |b| {
        b.iter(|| components(GraphKind::G3, black_box(2), black_box(12)).unwrap())
    });
}

fn bench_bfs(c: &mut Criterion) {
    let spec = ControlledSpec::new(
        Word::from_digits(2, "0").unwrap(),
        three_wire_rotation(2),
    )
    .unwrap();
    let set = InstanceSet::enumerate(&[spec], 4).unwrap();
    let target = GatePerm::from_word_cycle(
        2,
        4,
        &[
            Word::from_digits(2, "0001").unwrap(),
            Word::from_digits(2, "0010").unwrap(),
            Word::from_digits(2, "0100").unwrap(),
        ],
    )
    .unwrap();
    c.bench_function("breadth-first word cycle at depth 6", |b| {
        b.iter(|| bfs_min(black_box(&target), black_box(&set), 6).unwrap())
    });
}

criterion_group!(
    benches,
    bench_compose,
    bench_chain_build,
    bench_components,
    bench_bfs
);
criterion_main!(benches);
