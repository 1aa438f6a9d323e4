use std::hint::black_box;

use arcs_core::{enumerate_codes, intersection_number, joint_realization, make_disc_model, thm1_construction, EndpointFilter};
use criterion::{criterion_group, criterion_main, Criterion};

fn pairs(c: &mut Criterion) {
    let model = make_disc_model(3).unwrap();
    let u = enumerate_codes(&model, EndpointFilter::All, 3);
    c.bench_function("intersection_number m=3 L=3 all pairs", |b| {
        b.iter(|| {
            let mut total = 0;
            for (i, x) in u.iter().enumerate() {
                for y in &u[i + 1..] {
                    total += intersection_number(x, y, &model).unwrap();
                }
            }
            black_box(total)
        })
    });
}

fn enumerate(c: &mut Criterion) {
    let model = make_disc_model(3).unwrap();
    c.bench_function("enumerate_codes m=3 L=4", |b| b.iter(|| black_box(enumerate_codes(&model, EndpointFilter::All, 4).len())));
}

fn realize(c: &mut Criterion) {
    let model = make_disc_model(5).unwrap();
    let codes = thm1_construction(&model);
    c.bench_function("joint_realization thm1 m=5", |b| b.iter(|| black_box(joint_realization(&codes, &model).unwrap().certificate)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = pairs, enumerate, realize
}
criterion_main!(benches);
