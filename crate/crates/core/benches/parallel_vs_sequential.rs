use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke_core::characters::CharacterSpec;
use hecke_core::hecke::CoeffTable;
use hecke_core::moments::{family_sum, FamilyVariant, MomentConfig};
use hecke_core::survey::{run_survey, SurveyConfig};
use hecke_core::{Exec, GaussInt};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn coefficient_table(c: &mut Criterion) {
    let spec = CharacterSpec::new(GaussInt::new(-19, -30)).unwrap();
    let mut g = c.benchmark_group("coeff_table_200k");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| CoeffTable::build(&spec, 200_000, exec).unwrap())
        });
    }
    g.finish();
}

fn family_average(c: &mut Criterion) {
    let cfg = MomentConfig::new(2e4).unwrap();
    let mut g = c.benchmark_group("family_sum_2e4");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                family_sum(&|d| (d.norm() as f64).ln(), &cfg, FamilyVariant::Full, exec).unwrap()
            })
        });
    }
    g.finish();
}

fn survey_chunk(c: &mut Criterion) {
    let mut g = c.benchmark_group("survey_300");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SurveyConfig {
            exec,
            ..Default::default()
        };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_survey(300, &cfg, None, None, |_| {}).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, coefficient_table, family_average, survey_chunk);
criterion_main!(benches);
