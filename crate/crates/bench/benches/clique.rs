use std::hint::black_box;

use arcs_core::{build_graph, enumerate_codes, make_disc_model, max_clique, Variant};
use criterion::{criterion_group, criterion_main, Criterion};

fn clique(c: &mut Criterion) {
    for (m, v) in [(3, Variant::Thm1), (3, Variant::All1), (3, Variant::Thm2)] {
        let model = make_disc_model(m).unwrap();
        let u = enumerate_codes(&model, v.filter(), v.default_length(m));
        let g = build_graph(&u, v.k(), &model).unwrap();
        c.bench_function(&format!("max_clique {v:?} m={m} ({} vertices)", g.len()), |b| {
            b.iter(|| black_box(max_clique(&g, None).size))
        });
    }
}

fn graph(c: &mut Criterion) {
    let model = make_disc_model(3).unwrap();
    let u = enumerate_codes(&model, Variant::Thm2.filter(), 3);
    c.bench_function("build_graph thm2 m=3", |b| b.iter(|| black_box(build_graph(&u, 2, &model).unwrap().len())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = clique, graph
}
criterion_main!(benches);
