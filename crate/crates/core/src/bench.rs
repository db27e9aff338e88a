//! Synthetic workloads and latency measurements.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{EngineStats, QueryEngine};
use crate::error::Result;
use crate::query::{Answer, QueryKind};
use crate::text::{Span, Text};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seed: u64,
    /// Fragments per text position.
    pub d_ratio: f64,
    pub alphabet: u8,
    pub max_pattern_len: usize,
    /// Timed queries per kind for the counting kinds.
    pub queries: usize,
    /// Timed queries per kind for the reporting kinds.
    pub report_queries: usize,
    /// Timed passes over the query set; each query keeps its fastest time.
    pub passes: usize,
    /// Index builds per size; the fastest one is reported.
    pub builds: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![1 << 12, 1 << 14, 1 << 16],
            seed: 1,
            d_ratio: 1.0,
            alphabet: 4,
            max_pattern_len: 32,
            queries: 5000,
            report_queries: 200,
            passes: 5,
            builds: 3,
        }
    }
}

/// A random text over the first `alphabet` lowercase letters with
/// `round(d_ratio * n)` random fragments.
pub fn random_instance(rng: &mut impl Rng, n: usize, d_ratio: f64, alphabet: u8, max_len: usize) -> (Text, Vec<Span>) {
    let bytes: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..alphabet)).collect();
    let d = (d_ratio * n as f64).round() as usize;
    let frags = (0..d)
        .map(|_| {
            let l = rng.gen_range(1..=n);
            let len = rng.gen_range(1..=max_len.min(n - l + 1));
            Span::new(l, l + len - 1)
        })
        .collect();
    (Text::new(bytes).expect("n >= 1"), frags)
}

#[derive(Clone, Debug)]
pub struct BuildMeasurement {
    pub n: usize,
    pub build_ns: u128,
    pub stats: EngineStats,
}

impl fmt::Display for BuildMeasurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.stats;
        write!(
            f,
            "n={} build_ns={} index_bytes={} patterns_distinct={} classes={} a2_nodes={} access_segments={}",
            self.n, self.build_ns, s.heap_bytes, s.patterns_distinct, s.classes, s.a2_nodes, s.access_segments
        )
    }
}

#[derive(Clone, Debug)]
pub struct KindMeasurement {
    pub n: usize,
    pub kind: QueryKind,
    pub median_ns: u64,
    /// Median over queries of `time / (1 + output size)`.
    pub median_ns_per_item: f64,
    pub mean_output: f64,
}

impl fmt::Display for KindMeasurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} kind={} median_ns={} median_ns_per_item={:.1} mean_output={:.1}",
            self.n,
            self.kind.keyword(),
            self.median_ns,
            self.median_ns_per_item,
            self.mean_output
        )
    }
}

#[derive(Clone, Debug)]
pub struct SizeResult {
    pub build: BuildMeasurement,
    pub kinds: Vec<KindMeasurement>,
}

fn output_size(a: &Answer) -> usize {
    match a {
        Answer::Report(v) => v.len(),
        Answer::Patterns(v) => v.len(),
        Answer::Exists(_) | Answer::Count(_) => 0,
    }
}

fn median_u64(v: &mut [u64]) -> u64 {
    v.sort_unstable();
    v[v.len() / 2]
}

fn median_f64(v: &mut [f64]) -> f64 {
    v.sort_unstable_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Runs every query of `spans` once and returns the output sizes.
fn run_untimed(engine: &QueryEngine, kind: QueryKind, spans: &[(usize, usize)]) -> Result<Vec<usize>> {
    spans.iter().map(|&(i, j)| Ok(output_size(&std::hint::black_box(engine.query(kind, i, j)?)))).collect()
}

/// Times every query of `spans` once, lowering `best` where it got faster.
fn run_timed(engine: &QueryEngine, kind: QueryKind, spans: &[(usize, usize)], best: &mut [u64]) -> Result<()> {
    for (b, &(i, j)) in best.iter_mut().zip(spans) {
        let start = Instant::now();
        let ans = engine.query(kind, i, j)?;
        let ns = start.elapsed().as_nanos() as u64;
        std::hint::black_box(&ans);
        *b = (*b).min(ns);
    }
    Ok(())
}

fn summarize(n: usize, kind: QueryKind, best: Vec<u64>, outputs: &[usize]) -> KindMeasurement {
    let total_out: usize = outputs.iter().sum();
    let mut per_item: Vec<f64> = best.iter().zip(outputs).map(|(&ns, &out)| ns as f64 / (1 + out) as f64).collect();
    let mut times = best;
    KindMeasurement {
        n,
        kind,
        median_ns: median_u64(&mut times),
        median_ns_per_item: median_f64(&mut per_item),
        mean_output: total_out as f64 / outputs.len().max(1) as f64,
    }
}

/// Times each query on its own and summarizes per kind. Every pass runs
/// the queries once untimed, so caches start warm, and then once timed;
/// each query keeps its fastest time, which filters out interrupts and
/// scheduler noise.
pub fn measure_kind(
    engine: &QueryEngine,
    kind: QueryKind,
    spans: &[(usize, usize)],
    passes: usize,
) -> Result<KindMeasurement> {
    let outputs = run_untimed(engine, kind, spans)?;
    let mut best = vec![u64::MAX; spans.len()];
    for pass in 0..passes.max(1) {
        if pass > 0 {
            run_untimed(engine, kind, spans)?;
        }
        run_timed(engine, kind, spans, &mut best)?;
    }
    Ok(summarize(engine.n(), kind, best, &outputs))
}

fn random_spans(rng: &mut impl Rng, n: usize, k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .map(|_| {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(1..=n);
            (a.min(b), a.max(b))
        })
        .collect()
}

struct Workload {
    text: Text,
    frags: Vec<Span>,
    spans: Vec<Vec<(usize, usize)>>,
}

fn workload(cfg: &BenchConfig, n: usize) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).rotate_left(32));
    let (text, frags) = random_instance(&mut rng, n, cfg.d_ratio, cfg.alphabet, cfg.max_pattern_len);
    let spans = QueryKind::ALL
        .iter()
        .map(|kind| {
            let k = match kind {
                QueryKind::Report | QueryKind::ReportDistinct => cfg.report_queries,
                _ => cfg.queries,
            };
            random_spans(&mut rng, n, k)
        })
        .collect();
    Workload { text, frags, spans }
}

/// Measures every size of `cfg`. Builds go round-robin over the sizes, and
/// so do the timed query passes, so a slow stretch of the machine hits all
/// sizes alike instead of skewing one of them.
pub fn run_sizes(cfg: &BenchConfig) -> Result<Vec<SizeResult>> {
    let loads: Vec<Workload> = cfg.sizes.iter().map(|&n| workload(cfg, n)).collect();
    let mut engines: Vec<Option<QueryEngine>> = loads.iter().map(|_| None).collect();
    let mut build_ns = vec![u128::MAX; loads.len()];
    for _ in 0..cfg.builds.max(1) {
        for (k, w) in loads.iter().enumerate() {
            drop(engines[k].take());
            let start = Instant::now();
            let e = QueryEngine::build(w.text.clone(), &w.frags)?;
            build_ns[k] = build_ns[k].min(start.elapsed().as_nanos());
            engines[k] = Some(e);
        }
    }
    let engines: Vec<QueryEngine> = engines.into_iter().map(|e| e.expect("at least one build")).collect();

    let mut outputs = Vec::new();
    let mut best = Vec::new();
    for (e, w) in engines.iter().zip(&loads) {
        for (kind, spans) in QueryKind::ALL.into_iter().zip(&w.spans) {
            outputs.push(run_untimed(e, kind, spans)?);
            best.push(vec![u64::MAX; spans.len()]);
        }
    }
    for pass in 0..cfg.passes.max(1) {
        let mut slot = 0;
        for (e, w) in engines.iter().zip(&loads) {
            for (kind, spans) in QueryKind::ALL.into_iter().zip(&w.spans) {
                if pass > 0 {
                    run_untimed(e, kind, spans)?;
                }
                run_timed(e, kind, spans, &mut best[slot])?;
                slot += 1;
            }
        }
    }

    let mut results = Vec::new();
    let mut slots = best.into_iter().zip(outputs);
    for (k, e) in engines.iter().enumerate() {
        let build = BuildMeasurement { n: e.n(), build_ns: build_ns[k], stats: e.stats() };
        let kinds = QueryKind::ALL
            .into_iter()
            .map(|kind| {
                let (b, out) = slots.next().expect("one slot per size and kind");
                summarize(e.n(), kind, b, &out)
            })
            .collect();
        results.push(SizeResult { build, kinds });
    }
    Ok(results)
}

/// [`run_sizes`] for a single size.
pub fn run_size(cfg: &BenchConfig, n: usize) -> Result<SizeResult> {
    let one = BenchConfig { sizes: vec![n], ..cfg.clone() };
    Ok(run_sizes(&one)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_shape_and_determinism() {
        let cfg = BenchConfig { sizes: vec![64, 256], queries: 20, report_queries: 5, passes: 1, builds: 1, ..Default::default() };
        let strip = |r: &SizeResult| {
            let mut s = r.build.to_string().replace(&format!("build_ns={}", r.build.build_ns), "");
            for k in &r.kinds {
                s += &format!("|{} {} {}", k.n, k.kind, k.mean_output);
            }
            s
        };
        let a = run_sizes(&cfg).unwrap();
        let b: Vec<SizeResult> = cfg.sizes.iter().map(|&n| run_size(&cfg, n).unwrap()).collect();
        assert_eq!(a.iter().map(|r| r.kinds.len()).sum::<usize>(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(strip(x), strip(y));
            assert!(x.build.stats.patterns_distinct <= x.build.n);
        }
    }

    #[test]
    fn instances_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (t, f) = random_instance(&mut rng, 10, 1.5, 3, 32);
        assert_eq!(f.len(), 15);
        assert!(f.iter().all(|s| 1 <= s.l && s.l <= s.r && s.r <= t.len()));
        assert!(t.as_bytes().iter().all(|b| (b'a'..b'd').contains(b)));
    }
}
