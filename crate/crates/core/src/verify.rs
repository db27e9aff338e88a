//! Cross-checking the engine against the brute-force oracle.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::QueryEngine;
use crate::error::Result;
use crate::oracle::OracleInstance;
use crate::query::{Answer, QueryKind};

/// Which windows to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanSelection {
    All,
    Random(usize),
}

impl FromStr for SpanSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "all" {
            return Ok(SpanSelection::All);
        }
        s.strip_prefix("random:")
            .and_then(|k| k.parse().ok())
            .map(SpanSelection::Random)
            .ok_or_else(|| format!("expected `all` or `random:<k>`, found {s:?}"))
    }
}

impl SpanSelection {
    pub fn spans(self, n: usize, seed: u64) -> Vec<(usize, usize)> {
        match self {
            SpanSelection::All => (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect(),
            SpanSelection::Random(k) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..k)
                    .map(|_| {
                        let a = rng.gen_range(1..=n);
                        let b = rng.gen_range(1..=n);
                        (a.min(b), a.max(b))
                    })
                    .collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub kind: QueryKind,
    pub i: usize,
    pub j: usize,
    pub engine: Answer,
    pub oracle: Answer,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MISMATCH {} {} {} engine={} oracle={}",
            self.kind.keyword(),
            self.i,
            self.j,
            self.engine,
            self.oracle
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs all five kinds on every selected span through both the engine and
/// the oracle. Answers are compared in canonical order.
pub fn verify(engine: &QueryEngine, spans: &[(usize, usize)]) -> Result<VerifyReport> {
    let oracle = OracleInstance::new(engine.text(), engine.dictionary().fragments())?;
    let mut report = VerifyReport::default();
    for &(i, j) in spans {
        for kind in QueryKind::ALL {
            let got = engine.query(kind, i, j)?.canonical();
            let want = oracle.query(kind, i, j)?.canonical();
            report.checked += 1;
            if got != want {
                report.mismatches.push(Mismatch { kind, i, j, engine: got, oracle: want });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{Span, Text};

    #[test]
    fn selection_parsing_and_spans() {
        assert_eq!("all".parse::<SpanSelection>().unwrap(), SpanSelection::All);
        assert_eq!("random:7".parse::<SpanSelection>().unwrap(), SpanSelection::Random(7));
        assert!("random".parse::<SpanSelection>().is_err());
        assert!("some".parse::<SpanSelection>().is_err());
        assert_eq!(SpanSelection::All.spans(5, 0).len(), 15);
        let r = SpanSelection::Random(50).spans(9, 3);
        assert_eq!(r, SpanSelection::Random(50).spans(9, 3));
        assert!(r.iter().all(|&(i, j)| 1 <= i && i <= j && j <= 9));
    }

    #[test]
    fn abbab_checks_75_answers() {
        let e = QueryEngine::build(Text::new("abbab").unwrap(), &[Span::new(1, 2), Span::new(2, 2)]).unwrap();
        let rep = verify(&e, &SpanSelection::All.spans(5, 0)).unwrap();
        assert_eq!(rep.checked, 75);
        assert!(rep.ok());
        let empty = QueryEngine::build(Text::new("abbab").unwrap(), &[]).unwrap();
        assert!(verify(&empty, &SpanSelection::All.spans(5, 0)).unwrap().ok());
    }

    #[test]
    fn fault_is_reported() {
        let mut e = QueryEngine::build(Text::new("abbab").unwrap(), &[Span::new(1, 2), Span::new(2, 2)]).unwrap();
        e.inject_fault();
        let rep = verify(&e, &SpanSelection::All.spans(5, 0)).unwrap();
        assert!(!rep.ok());
        let line = rep.mismatches[0].to_string();
        assert!(line.starts_with("MISMATCH "), "{line}");
    }
}
