use criterion::{criterion_group, criterion_main, Criterion};

use cutmet_core::autgrp::automorphism_group;
use cutmet_core::cones::certify_all_pairs;
use cutmet_core::facet::enumerate_triangle_facets;
use cutmet_core::reflect4::build_reflection_group;
use cutmet_core::ridge::{build_complement, build_ridge_graph, intersection_array, johnson_graph};

fn automorphisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphism_group");
    group.sample_size(10);
    for n in [6, 7, 8] {
        let g = build_ridge_graph(n).unwrap();
        group.bench_function(format!("ridge_{n}"), |b| {
            b.iter(|| automorphism_group(&g.graph, 252).unwrap())
        });
    }
    let gbar = build_complement(7).unwrap();
    group.bench_function("complement_7", |b| {
        b.iter(|| automorphism_group(&gbar.graph, 252).unwrap())
    });
    group.finish();
}

fn adjacency_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_all_pairs");
    group.sample_size(10);
    for n in [5, 6] {
        let facets = enumerate_triangle_facets(n).unwrap();
        group.bench_function(format!("n{n}"), |b| {
            b.iter(|| certify_all_pairs(&facets, n).unwrap())
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    c.bench_function("reflection_group_n4", |b| {
        b.iter(|| build_reflection_group().unwrap())
    });
    let (j9, _) = johnson_graph(9);
    c.bench_function("intersection_array_j93", |b| {
        b.iter(|| intersection_array(&j9).unwrap())
    });
}

criterion_group!(benches, automorphisms, adjacency_oracle, structure);
criterion_main!(benches);
