use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tate_core::fgl_tate::{Form, FormalGroupLaw, TateModule};
use tate_core::givental::HodgeSpace;
use tate_core::{HalfInt, Rat, Ring, Scalar, Series, Window};

fn dense(ring: Ring, lo: i32, hi: i32) -> Series {
    let n = ring.eps_order();
    let terms = (lo..=hi).map(|e| {
        let c = &Scalar::int(e as i64 + 3, n) + &Scalar::monomial(Rat::new(1, 2), HalfInt::ZERO, n - 1, n);
        (HalfInt::int(e), c)
    });
    Series::new(ring, Window::ints(lo, hi).unwrap(), terms.collect::<Vec<_>>()).unwrap()
}

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("parallel", rayon::ThreadPoolBuilder::new().build().unwrap()),
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
    ]
}

fn bench(c: &mut Criterion) {
    let tate = TateModule::new(FormalGroupLaw::multiplicative(Rat::int(1), 16), 7).unwrap();
    let ring = Ring::nil(3).unwrap();
    let (a, b) = (dense(ring, -6, 40), dense(ring, -4, 40));
    let e = vec![
        vec![Rat::zero(), Rat::zero(), Rat::zero()],
        vec![Rat::int(1), Rat::zero(), Rat::zero()],
        vec![Rat::zero(), Rat::int(2), Rat::zero()],
    ];
    let hodge = HodgeSpace::new(vec![-2, 0, 2], e).unwrap();

    let mut g = c.benchmark_group("core");
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new("tate_gram_16", name), |bch| {
            pool.install(|| bch.iter(|| black_box(tate.gram(Form::Symplectic, -8, 7).unwrap())))
        });
        g.bench_function(BenchmarkId::new("series_mul_eps3", name), |bch| {
            pool.install(|| bch.iter(|| black_box(a.mul(&b).unwrap())))
        });
        g.bench_function(BenchmarkId::new("givental_report", name), |bch| {
            pool.install(|| bch.iter(|| black_box(hodge.polarization_report(-4, 3).unwrap())))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
