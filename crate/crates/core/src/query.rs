//! Query kinds and answers shared by the engine, the oracle and the CLI.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QueryKind {
    Exists,
    Report,
    Count,
    CountDistinct,
    ReportDistinct,
}

impl QueryKind {
    pub const ALL: [QueryKind; 5] = [
        QueryKind::Exists,
        QueryKind::Report,
        QueryKind::Count,
        QueryKind::CountDistinct,
        QueryKind::ReportDistinct,
    ];

    /// Keyword used in query files and reports.
    pub fn keyword(self) -> &'static str {
        match self {
            QueryKind::Exists => "EXISTS",
            QueryKind::Report => "REPORT",
            QueryKind::Count => "COUNT",
            QueryKind::CountDistinct => "CDIST",
            QueryKind::ReportDistinct => "RDIST",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for QueryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QueryKind::ALL
            .into_iter()
            .find(|k| k.keyword() == s)
            .ok_or_else(|| format!("unknown query kind {s:?}"))
    }
}

/// One pattern occurrence `T[l, r]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub pattern_id: u32,
    pub l: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Exists(bool),
    Count(usize),
    Report(Vec<Occurrence>),
    Patterns(Vec<u32>),
}

impl Answer {
    /// Sorts list answers so that equal sets compare equal.
    pub fn canonical(mut self) -> Self {
        match &mut self {
            Answer::Report(v) => v.sort_unstable(),
            Answer::Patterns(v) => v.sort_unstable(),
            _ => {}
        }
        self
    }
}

/// The line format of `idq query`.
impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Exists(b) => write!(f, "{}", u8::from(*b)),
            Answer::Count(c) => write!(f, "{c}"),
            Answer::Report(v) => {
                write!(f, "{}", v.len())?;
                for o in v {
                    write!(f, " {} {} {}", o.pattern_id, o.l, o.r)?;
                }
                Ok(())
            }
            Answer::Patterns(v) => {
                write!(f, "{}", v.len())?;
                for p in v {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
        }
    }
}
