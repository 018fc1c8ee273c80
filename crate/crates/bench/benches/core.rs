use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lochness_bench::{int_matrix, polygon};
use lochness_core::deckgraph::{self, GeneratorSet};
use lochness_core::lattice;
use lochness_core::resonance::{AngleChoice, DeckGroup};
use lochness_core::ribbon::{self, FiniteQuotient};
use lochness_core::surgery::{self, SubcaseTag};
use lochness_core::AngleVector;
use num_bigint::BigInt;

fn lift(c: &mut Criterion) {
    let mut g = c.benchmark_group("lift");
    let generic = polygon(&["a", "b"], &["a", "b", "1 - a - b"]);
    let choice = AngleChoice::omitting(&generic, 2).unwrap();
    let rose = ribbon::rose_for_polygon(&generic, &choice).unwrap();
    for m in [4i64, 8, 16] {
        let q = FiniteQuotient::new(DeckGroup::new(choice.clone()).unwrap(), m).unwrap();
        g.bench_with_input(BenchmarkId::new("finite_quotient", m), &q, |b, q| {
            b.iter(|| ribbon::surface_report(&ribbon::finite_quotient_lift(&rose.rose, q).unwrap().graph).unwrap())
        });
    }
    let hexagon = AngleVector::rational(&[(2, 3); 6]).unwrap();
    g.bench_function("rational_cover_hexagon", |b| b.iter(|| ribbon::genus_rational_polygon(black_box(&hexagon)).unwrap()));
    let (a, bb) = surgery::sample_pair(SubcaseTag::Case1);
    g.bench_function("tori_family_case1_25", |b| b.iter(|| surgery::disjoint_tori_family(&a, &bb, 25).unwrap()));
    g.finish();
}

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith");
    for n in [3usize, 5, 8] {
        let m: Vec<Vec<BigInt>> = int_matrix(n, n + 1, n as u64).into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        g.bench_with_input(BenchmarkId::new("snf", n), &m, |b, m| b.iter(|| lattice::smith(black_box(m), n + 1)));
        g.bench_with_input(BenchmarkId::new("hnf", n), &m, |b, m| b.iter(|| lattice::hnf(black_box(m))));
    }
    g.finish();
}

fn ball(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball");
    for (name, p) in [
        ("rank1", polygon(&["a"], &["a", "a", "1 - 2*a"])),
        ("rank2", polygon(&["a", "b"], &["a", "b", "1 - a - b"])),
        ("rank3", polygon(&["a", "b", "c"], &["a", "b", "c", "2 - a - b - c"])),
    ] {
        let deck = DeckGroup::new(AngleChoice::omitting(&p, p.len() - 1).unwrap()).unwrap();
        let gens = GeneratorSet::from_quotient(&deck.quotient, deck.generator_images().unwrap());
        g.bench_with_input(BenchmarkId::new("ball_r8", name), &gens, |b, gens| b.iter(|| deckgraph::ball(gens, 8)));
        g.bench_with_input(BenchmarkId::new("complement_3_8", name), &gens, |b, gens| b.iter(|| deckgraph::complement_components(gens, 3, 8)));
    }
    g.finish();
}

criterion_group!(benches, lift, smith, ball);
criterion_main!(benches);
