//! Subgroup enumeration and CD lattice computation, parallel against
//! sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cdlat::cd::Analysis;
use cdlat::group::MAX_ORDER;
use cdlat::groupspec::GroupSpec;
use cdlat::subgroups::{all_subgroups, EnumConfig};

const GROUPS: [&str; 4] = ["xsp:2,5,plus", "gdic:2,2,4", "pres:sg_729_99", "pres:maxclass_3125"];

fn modes() -> Vec<(&'static str, EnumConfig)> {
    let mut out = vec![("sequential", EnumConfig::sequential())];
    if cdlat::par::AVAILABLE {
        out.push((
            "parallel",
            EnumConfig {
                parallel: true,
                ..EnumConfig::default()
            },
        ));
    }
    out
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_subgroups");
    group.sample_size(10);
    for name in GROUPS {
        let g = name.parse::<GroupSpec>().and_then(|s| s.build(MAX_ORDER)).expect("group builds");
        for (mode, cfg) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| all_subgroups(g, &cfg).expect("enumeration succeeds"))
            });
        }
    }
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("cd_lattice");
    group.sample_size(10);
    for name in GROUPS {
        let g = name.parse::<GroupSpec>().and_then(|s| s.build(MAX_ORDER)).expect("group builds");
        for (mode, cfg) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| Analysis::new(g.clone(), &cfg).expect("analysis succeeds"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration, lattice);
criterion_main!(benches);
