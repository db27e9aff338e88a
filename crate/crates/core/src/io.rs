//! File formats: dictionary input, query batches, and the binary index.

use std::io::Write;

use crate::engine::QueryEngine;
use crate::error::{Error, Result};
use crate::query::QueryKind;
use crate::text::{Span, Text};

const MAGIC: &[u8; 4] = b"IDQ1";
const VERSION: u32 = 1;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers<const K: usize>(line: &str, lineno: usize, what: &str) -> Result<[usize; K]> {
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    if fields.len() != K {
        return Err(parse_err(lineno, format!("expected {what}, found {line:?}")));
    }
    let mut out = [0usize; K];
    for (o, f) in out.iter_mut().zip(&fields) {
        *o = f.parse().map_err(|_| parse_err(lineno, format!("not a number: {f:?}")))?;
    }
    Ok(out)
}

/// A text with its fragments, as read from a dictionary file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictionaryFile {
    pub text: Text,
    pub fragments: Vec<Span>,
}

impl DictionaryFile {
    /// Parses `<n> <d>`, then the text on one line, then `d` lines `<l> <r>`.
    pub fn parse(input: &[u8]) -> Result<Self> {
        let mut lines = input.split(|&b| b == b'\n');
        let header = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let header = std::str::from_utf8(header).map_err(|_| parse_err(1, "header is not UTF-8"))?;
        let [n, d] = numbers::<2>(header, 1, "`<n> <d>`")?;

        let mut text = lines.next().ok_or_else(|| parse_err(2, "missing text line"))?;
        if text.len() == n + 1 && text.last() == Some(&b'\r') {
            text = &text[..n];
        }
        if text.len() != n {
            return Err(parse_err(2, format!("text has {} bytes, header says {n}", text.len())));
        }
        let text = Text::new(text).map_err(|e| parse_err(2, e.to_string()))?;

        let mut fragments = Vec::with_capacity(d);
        for k in 0..d {
            let lineno = k + 3;
            let raw = lines.next().ok_or_else(|| parse_err(lineno, format!("expected {d} fragments, found {k}")))?;
            let raw = std::str::from_utf8(raw).map_err(|_| parse_err(lineno, "fragment line is not UTF-8"))?;
            let [l, r] = numbers::<2>(raw, lineno, "`<l> <r>`")?;
            text.check(l, r).map_err(|e| parse_err(lineno, e.to_string()))?;
            fragments.push(Span::new(l, r));
        }
        for (k, rest) in lines.enumerate() {
            if !rest.iter().all(|b| b.is_ascii_whitespace()) {
                return Err(parse_err(d + 3 + k, "unexpected content after the fragments"));
            }
        }
        Ok(DictionaryFile { text, fragments })
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.text.len(), self.fragments.len())?;
        w.write_all(self.text.as_bytes())?;
        writeln!(w)?;
        for f in &self.fragments {
            writeln!(w, "{} {}", f.l, f.r)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Query {
    /// 1-based line in the query file.
    pub line: usize,
    pub kind: QueryKind,
    pub i: usize,
    pub j: usize,
}

/// Parses lines `<KIND> <i> <j>`; blank lines are skipped.
pub fn parse_queries(input: &str) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    for (k, line) in input.lines().enumerate() {
        let lineno = k + 1;
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 3 {
            return Err(parse_err(lineno, format!("expected `<KIND> <i> <j>`, found {line:?}")));
        }
        let kind: QueryKind = fields[0].parse().map_err(|e: String| parse_err(lineno, e))?;
        let [i, j] = numbers::<2>(&fields[1..].join(" "), lineno, "`<i> <j>`")?;
        if i == 0 || i > j {
            return Err(parse_err(lineno, format!("need 1 <= i <= j, found {i} {j}")));
        }
        out.push(Query { line: lineno, kind, i, j });
    }
    Ok(out)
}

/// Writes the index file. The layout is little-endian:
/// magic `IDQ1`, format version, `n`, the text, `d`, the fragments, and two
/// size checks (class count, distinct pattern count).
pub fn write_index(engine: &QueryEngine, mut w: impl Write) -> std::io::Result<()> {
    let text = engine.text().as_bytes();
    let frags = engine.dictionary().fragments();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(text.len() as u64).to_le_bytes())?;
    w.write_all(text)?;
    w.write_all(&(frags.len() as u64).to_le_bytes())?;
    for f in frags {
        w.write_all(&(f.l as u32).to_le_bytes())?;
        w.write_all(&(f.r as u32).to_le_bytes())?;
    }
    w.write_all(&(engine.structure().class_count() as u64).to_le_bytes())?;
    w.write_all(&(engine.dictionary().pattern_count() as u64).to_le_bytes())?;
    Ok(())
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.buf.len() < k {
            return Err(Error::Format("truncated".into()));
        }
        let (a, b) = self.buf.split_at(k);
        self.buf = b;
        Ok(a)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Reads an index file and rebuilds the engine from its text and fragments.
pub fn read_index(bytes: &[u8]) -> Result<QueryEngine> {
    let mut r = Reader { buf: bytes };
    if r.take(4)? != MAGIC {
        return Err(Error::Format("not an index file (bad magic)".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported format version {version}")));
    }
    let n = r.u64()? as usize;
    let text = Text::new(r.take(n)?).map_err(|e| Error::Format(e.to_string()))?;
    let d = r.u64()? as usize;
    if d > r.buf.len() / 8 {
        return Err(Error::Format("truncated".into()));
    }
    let mut frags = Vec::with_capacity(d);
    for _ in 0..d {
        let l = r.u32()? as usize;
        let rr = r.u32()? as usize;
        frags.push(Span::new(l, rr));
    }
    let classes = r.u64()? as usize;
    let patterns = r.u64()? as usize;
    if !r.buf.is_empty() {
        return Err(Error::Format("trailing bytes".into()));
    }
    let engine = QueryEngine::build(text, &frags).map_err(|e| Error::Format(e.to_string()))?;
    if engine.structure().class_count() != classes || engine.dictionary().pattern_count() != patterns {
        return Err(Error::Format("stored sizes do not match the rebuilt index".into()));
    }
    Ok(engine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_round_trip() {
        let src = b"5 2\nabbab\n1 2\n2 2\n";
        let d = DictionaryFile::parse(src).unwrap();
        assert_eq!(d.text.as_bytes(), b"abbab");
        assert_eq!(d.fragments, vec![Span::new(1, 2), Span::new(2, 2)]);
        let mut out = Vec::new();
        d.write_to(&mut out).unwrap();
        assert_eq!(out, src);
        let crlf = DictionaryFile::parse(b"5 0\r\nabbab\r\n").unwrap();
        assert!(crlf.fragments.is_empty());
    }

    #[test]
    fn dictionary_errors_carry_lines() {
        let cases: [(&[u8], usize); 6] = [
            (b"", 1),
            (b"5 x\nabbab\n", 1),
            (b"5 1\nabba\n1 1\n", 2),
            (b"5 2\nabbab\n1 2\n", 4),
            (b"5 1\nabbab\n0 2\n", 3),
            (b"5 1\nabbab\n1 2\nextra\n", 4),
        ];
        for (src, line) in cases {
            match DictionaryFile::parse(src) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{:?}", String::from_utf8_lossy(src)),
                other => panic!("{other:?}"),
            }
        }
        let msg = DictionaryFile::parse(b"5 1\nabbab\n0 2\n").unwrap_err().to_string();
        assert!(msg.contains("outside"), "{msg}");
    }

    #[test]
    fn query_lines() {
        let q = parse_queries("COUNT 1 5\n\nEXISTS 4 4\nRDIST 2 3\n").unwrap();
        assert_eq!(q.len(), 3);
        assert_eq!(q[1], Query { line: 3, kind: QueryKind::Exists, i: 4, j: 4 });
        for (bad, line) in [("COUNT 1\n", 1), ("COUNT 1 5\nFOO 1 2\n", 2), ("CDIST 3 2\n", 1), ("REPORT 0 1", 1)] {
            match parse_queries(bad) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let e = QueryEngine::build(Text::new("abbab").unwrap(), &[Span::new(1, 2), Span::new(4, 5)]).unwrap();
        let mut buf = Vec::new();
        write_index(&e, &mut buf).unwrap();
        let mut again = Vec::new();
        write_index(&e, &mut again).unwrap();
        assert_eq!(buf, again);
        let back = read_index(&buf).unwrap();
        assert_eq!(back.dictionary().fragments(), e.dictionary().fragments());
        for kind in QueryKind::ALL {
            for i in 1..=5 {
                for j in i..=5 {
                    assert_eq!(back.query(kind, i, j).unwrap(), e.query(kind, i, j).unwrap());
                }
            }
        }
        assert!(read_index(b"IDQ2").is_err());
        assert!(read_index(&buf[..buf.len() - 1]).is_err());
        let mut bad = buf.clone();
        let last = bad.len() - 1;
        bad[last] ^= 1;
        assert!(read_index(&bad).is_err());
    }
}
