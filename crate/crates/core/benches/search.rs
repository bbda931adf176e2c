use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rigid_covers::arrangement::{combinatorial_automorphisms_with, dual_hesse};
use rigid_covers::builtin;
use rigid_covers::cover::CoverModel;
use rigid_covers::symmetry::{classify_real_structures_with, klein_model, klein_model_with};
use rigid_covers::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn automorphisms(c: &mut Criterion) {
    let hesse = dual_hesse();
    let mut group = c.benchmark_group("automorphisms");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("dual_hesse", name), &exec, |b, &exec| {
            b.iter(|| combinatorial_automorphisms_with(&hesse, exec))
        });
    }
    group.finish();
}

fn klein(c: &mut Criterion) {
    let mut group = c.benchmark_group("klein_model");
    for example in ["example2", "example3"] {
        let ex = builtin::example(example).unwrap();
        let cover = CoverModel::with_default_blowup(ex.arrangement, ex.phi).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(example, name), &exec, |b, &exec| {
                b.iter(|| klein_model_with(&cover, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn real_structures(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_real_structures");
    for example in ["example2", "example3"] {
        let ex = builtin::example(example).unwrap();
        let cover = CoverModel::with_default_blowup(ex.arrangement, ex.phi).unwrap();
        let model = klein_model(&cover).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(example, name), &exec, |b, &exec| {
                b.iter(|| classify_real_structures_with(&model, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = automorphisms, klein, real_structures
}
criterion_main!(benches);
