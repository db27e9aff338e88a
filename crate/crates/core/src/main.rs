use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use idq::bench::{self, BenchConfig};
use idq::io::{parse_queries, read_index, write_index, DictionaryFile};
use idq::suffix::TextIndex;
use idq::verify::{verify, SpanSelection};
use idq::{Error, QueryEngine, SubstringStructure};

#[derive(Parser)]
#[command(name = "idq", version, about = "Internal dictionary queries over a text")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a dictionary file and print its statistics.
    Build { input: PathBuf, output: PathBuf },
    /// Answer a batch of queries against an index, one line per query.
    Query { index: PathBuf, queries: PathBuf },
    /// Print the equivalence classes of all substrings of the text.
    Dump {
        /// A dictionary file or an index file.
        input: PathBuf,
    },
    /// Compare the engine with brute force on the selected windows.
    Verify {
        input: PathBuf,
        #[arg(long, default_value = "all")]
        spans: SpanSelection,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time index construction and queries on random inputs.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4096,16384,65536")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        d_ratio: f64,
        #[arg(long, default_value_t = 4)]
        alphabet: u8,
        #[arg(long, default_value_t = 5000)]
        queries: usize,
        #[arg(long, default_value_t = 200)]
        report_queries: usize,
        #[arg(long, default_value_t = 5)]
        passes: usize,
        #[arg(long, default_value_t = 3)]
        builds: usize,
    },
}

enum Failure {
    Mismatch,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_dictionary(path: &Path) -> Result<DictionaryFile, Failure> {
    DictionaryFile::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Build { input, output } => {
            let dict = load_dictionary(&input)?;
            let engine = QueryEngine::build(dict.text, &dict.fragments)?;
            let mut file = BufWriter::new(fs::File::create(&output)?);
            write_index(&engine, &mut file)?;
            file.flush()?;
            let s = engine.stats();
            writeln!(out, "n={}", s.n)?;
            writeln!(out, "fragments={}", engine.dictionary().fragments().len())?;
            writeln!(out, "classes={}", s.classes)?;
            writeln!(out, "blocks={}", s.blocks)?;
            writeln!(out, "patterns_distinct={}", s.patterns_distinct)?;
            writeln!(out, "patterns_collapsed={}", s.patterns_collapsed)?;
            writeln!(out, "nxt_segments={}", s.nxt_segments)?;
            writeln!(out, "access_segments={}", s.access_segments)?;
            writeln!(out, "a2_segments={}", s.a2_segments)?;
            writeln!(out, "a2_nodes={}", s.a2_nodes)?;
            writeln!(out, "index_bytes={}", s.heap_bytes)?;
        }
        Command::Query { index, queries } => {
            let engine = read_index(&read(&index)?)?;
            let text = String::from_utf8(read(&queries)?)
                .map_err(|_| Failure::Usage(format!("{}: not UTF-8", queries.display())))?;
            let queries = parse_queries(&text)?;
            let lines: Vec<Result<String, Failure>> = queries
                .par_iter()
                .map(|q| {
                    engine
                        .query(q.kind, q.i, q.j)
                        .map(|a| a.to_string())
                        .map_err(|e| Failure::Usage(format!("line {}: {e}", q.line)))
                })
                .collect();
            for line in lines {
                writeln!(out, "{}", line?)?;
            }
        }
        Command::Dump { input } => {
            let bytes = read(&input)?;
            let text = if bytes.starts_with(b"IDQ1") {
                read_index(&bytes)?.text().clone()
            } else {
                load_dictionary(&input)?.text
            };
            let st = SubstringStructure::build(TextIndex::build(text));
            write!(out, "{}", st.dump())?;
        }
        Command::Verify { input, spans, seed, inject_fault } => {
            let dict = load_dictionary(&input)?;
            let mut engine = QueryEngine::build(dict.text, &dict.fragments)?;
            if inject_fault {
                engine.inject_fault();
            }
            let report = verify(&engine, &spans.spans(engine.n(), seed))?;
            for m in &report.mismatches {
                writeln!(out, "{m}")?;
            }
            writeln!(out, "checked={}", report.checked)?;
            writeln!(out, "mismatches={}", report.mismatches.len())?;
            out.flush()?;
            if !report.ok() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Bench { sizes, seed, d_ratio, alphabet, queries, report_queries, passes, builds } => {
            if !(1..=26).contains(&alphabet) {
                return Err(Failure::Usage("--alphabet must be in 1..=26".into()));
            }
            if sizes.contains(&0) {
                return Err(Failure::Usage("--sizes must be positive".into()));
            }
            let cfg = BenchConfig { sizes, seed, d_ratio, alphabet, queries, report_queries, passes, builds, ..Default::default() };
            for r in bench::run_sizes(&cfg)? {
                writeln!(out, "{}", r.build)?;
                for k in &r.kinds {
                    writeln!(out, "{k}")?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
