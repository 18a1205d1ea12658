use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hrp_core::survey::{run_survey, SurveyOptions, SurveyParams};

fn survey_cells(c: &mut Criterion) {
    let mut g = c.benchmark_group("survey");
    g.sample_size(10);
    for (d, lead, h) in [(6, 2, 12), (8, 2, 4)] {
        let params = SurveyParams::new(d, lead, h).unwrap();
        let cell = format!("d{d}c{lead}h{h}");
        for (name, jobs) in [("sequential", Some(1)), ("parallel", None)] {
            let opts = SurveyOptions {
                jobs,
                ..Default::default()
            };
            g.bench_with_input(BenchmarkId::new(name, &cell), &opts, |b, opts| {
                b.iter(|| black_box(run_survey(&params, opts).unwrap().row))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, survey_cells);
criterion_main!(benches);
