use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubic_code::{build_stabilizers, num_logical_qubits, BitMatrix, BitVec, BoundarySpec};

fn random_matrix(rows: usize, cols: usize, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<BitVec> = (0..rows)
        .map(|_| BitVec::from_bools(&(0..cols).map(|_| rng.gen::<bool>()).collect::<Vec<_>>()))
        .collect();
    BitMatrix::from_rows(cols, &rows).unwrap()
}

fn gf2(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2");
    for n in [256usize, 1024, 2048] {
        // Half-rank rows so the kernel is large.
        let m = random_matrix(n / 2, n, n as u64);
        group.bench_with_input(BenchmarkId::new("rank", n), &m, |b, m| b.iter(|| black_box(m.rank())));
        group.bench_with_input(BenchmarkId::new("kernel", n), &m, |b, m| {
            b.iter(|| black_box(m.kernel_basis()))
        });
    }
    group.finish();
}

fn periodic_k(c: &mut Criterion) {
    let mut group = c.benchmark_group("ppp_k");
    group.sample_size(10);
    let ppp = BoundarySpec::periodic();
    for l in [6usize, 10, 14] {
        group.bench_with_input(BenchmarkId::from_parameter(l), &l, |b, &l| {
            b.iter(|| {
                let g = std::sync::Arc::new(cubic_code::build_geometry([l; 3], &ppp, &[]).unwrap());
                black_box(num_logical_qubits(&build_stabilizers(&g).unwrap()).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, gf2, periodic_k);
criterion_main!(benches);
