use criterion::{criterion_group, criterion_main, Criterion};
use qbext::pbw::{self, PbwDatum};
use qbext_bench::{algebra, medium_element};
use std::hint::black_box;

fn bench_normal_form(c: &mut Criterion) {
    let a = algebra("A2");
    let x = medium_element(&a);
    // Warm the slice-basis caches so the measurement isolates the rewrite.
    a.normal_form(&x).unwrap();
    c.bench_function("normal_form/a2_medium_product", |b| {
        b.iter(|| a.normal_form(black_box(&x)).unwrap())
    });
}

fn bench_form(c: &mut Criterion) {
    let a = algebra("B2");
    let x = medium_element(&a);
    let y = a.parse_elem("f[2,1] f[1,0] f[2,0] f[1,1] f[2,-1] f[1,2]").unwrap();
    a.form(&x, &y).unwrap();
    c.bench_function("form/b2_cross_level_pairing", |b| {
        b.iter(|| a.form(black_box(&x), black_box(&y)).unwrap())
    });
}

fn bench_braid_action(c: &mut Criterion) {
    let a = algebra("G2");
    let x = a.parse_elem("f[1,0] f[2,1] f[1,1]").unwrap();
    a.t(0, &x).unwrap();
    c.bench_function("braid_action/g2_t1", |b| {
        b.iter(|| a.t(0, black_box(&x)).unwrap())
    });
}

fn bench_garside(c: &mut Criterion) {
    let a = algebra("A3");
    let word: Vec<usize> = vec![0, 1, 2, 1, 0, 2, 1, 0, 2, 0, 1, 2];
    c.bench_function("garside/a3_len12_normal_form", |b| {
        b.iter(|| qbext::braid::garside_normal_form(&a.cd, black_box(&word)))
    });
}

fn bench_straighten(c: &mut Criterion) {
    let a = algebra("A2");
    let pd = PbwDatum::new(vec![0, 1, 1, 0], 0).unwrap();
    c.bench_function("straighten/a2_1221_f1_f4", |b| {
        b.iter(|| pbw::straighten(&a, black_box(&pd), 0, 3).unwrap())
    });
}

criterion_group!(
    benches,
    bench_normal_form,
    bench_form,
    bench_braid_action,
    bench_garside,
    bench_straighten
);
criterion_main!(benches);
