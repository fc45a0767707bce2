use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qmodulus::cohomology::{cech_h, EquivariantSheaf};
use qmodulus::modulus::{run_suite, verify_blowup_omega, verify_blowup_witt, Suite, SuiteRun};
use qmodulus::scalar::{FiniteField, Fq};
use qmodulus::toric::{Fan, QDivisor};
use qmodulus::witt::{WittUniversalPolys, WittVector};
use qmodulus::Rational;

fn cohomology(c: &mut Criterion) {
    let fan = Fan::delta(2);
    let d = QDivisor::from_pairs([(0, Rational::from(-3)), (1, Rational::frac(5, 2)), (2, Rational::from(-2))]);
    let sheaf = EquivariantSheaf::divisorial(&fan, &d).unwrap();
    c.bench_function("cech_h delta_2 line bundle", |b| b.iter(|| cech_h(black_box(&sheaf)).unwrap()));
}

fn blowup(c: &mut Criterion) {
    let (a, b) = (Rational::frac(7, 3), Rational::frac(5, 2));
    c.bench_function("verify_blowup_omega q=1", |bench| bench.iter(|| verify_blowup_omega(&a, &b, 1).unwrap()));
    c.bench_function("verify_blowup_witt p=3 n=3", |bench| bench.iter(|| verify_blowup_witt(&a, &b, 3, 3).unwrap()));
}

fn witt(c: &mut Criterion) {
    let f = FiniteField::prime(5).unwrap();
    let x = WittVector::new(5, (1..=4).map(|k| Fq::from_i64(&f, k)).collect()).unwrap();
    let y = WittVector::new(5, (2..=5).map(|k| Fq::from_i64(&f, k)).collect()).unwrap();
    WittUniversalPolys::get(5, 4).unwrap().reduced_terms(qmodulus::witt::Family::Sum).unwrap();
    c.bench_function("W_4(F_5) add", |b| b.iter(|| black_box(&x).add(black_box(&y)).unwrap()));
    c.bench_function("W_4(F_5) mul", |b| b.iter(|| black_box(&x).mul(black_box(&y)).unwrap()));
}

fn suites(c: &mut Criterion) {
    let run = SuiteRun { samples: Some(50), ..SuiteRun::default() };
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("hirzebruch grid", |b| b.iter(|| run_suite(Suite::Hirzebruch, &run).unwrap()));
    g.bench_function("traces-witt 50", |b| b.iter(|| run_suite(Suite::TracesWitt, &run).unwrap()));
    g.finish();
}

criterion_group!(benches, cohomology, blowup, witt, suites);
criterion_main!(benches);
