//! Plain-text formats for matrices, rank-metric codes, ideals and subspace
//! codes.
//!
//! A matrix block is a header line `k l p` followed by `k` lines of `l`
//! residues. Code files put a header line in front of a sequence of blocks:
//!
//! ```text
//! ideal side=left generator=0,0,0,1     (optional, ideal exports only)
//! rankcode 2 2 2
//! 2 2 2
//! 0 0
//! 0 0
//! ...
//! ```
//!
//! ```text
//! subspacecode n p M
//! <M blocks, each an RREF basis with n columns>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::algebra::{Matrix, PrimeField};
use crate::error::{Error, Result};
use crate::rank_code::RankMetricCode;
use crate::ring::{PrincipalIdeal, Side};
use crate::subspace::{Subspace, SubspaceCode};

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Self {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(Error::Parse {
                line: self.last + 1,
                message: "unexpected end of input".into(),
            }),
        }
    }

    fn peek(&mut self) -> Option<&(usize, &'a str)> {
        self.inner.peek()
    }

    fn is_done(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| parse_err(line, format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

fn located<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut s = format!("{} {} {}\n", m.rows(), m.cols(), m.field().p());
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn read_matrix(lines: &mut Lines<'_>) -> Result<Matrix> {
    let (ln, header) = lines.next()?;
    let dims = numbers(ln, header)?;
    let [k, l, p] = dims[..] else {
        return Err(parse_err(ln, "matrix header must be `k l p`"));
    };
    let field = located(ln, PrimeField::new(p))?;
    let (k, l) = (k as usize, l as usize);
    let mut data = Vec::with_capacity(k * l);
    for _ in 0..k {
        let (rl, row) = lines.next()?;
        let vals = numbers(rl, row)?;
        if vals.len() != l {
            return Err(parse_err(rl, format!("expected {l} entries, found {}", vals.len())));
        }
        if let Some(v) = vals.iter().find(|&&v| v >= p) {
            return Err(parse_err(rl, format!("entry {v} is not in [0, {p})")));
        }
        data.extend(vals.into_iter().map(|v| v as u32));
    }
    located(ln, Matrix::new(k, l, field, data))
}

/// Parses a single matrix block.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = Lines::new(text);
    let m = read_matrix(&mut lines)?;
    if let Some(&(ln, _)) = lines.peek() {
        return Err(parse_err(ln, "trailing content after matrix"));
    }
    Ok(m)
}

fn write_rank_code_body(out: &mut String, shape: (usize, usize), p: u32, elements: &[Matrix]) {
    let _ = writeln!(out, "rankcode {} {} {}", shape.0, shape.1, p);
    for m in elements {
        out.push_str(&write_matrix(m));
    }
}

pub fn write_rank_code(code: &RankMetricCode) -> String {
    let mut s = String::new();
    write_rank_code_body(&mut s, code.shape(), code.field().p(), code.elements());
    s
}

/// An ideal export: the `ideal` header line followed by a rank code.
pub fn write_ideal(ideal: &PrincipalIdeal) -> String {
    let gen: Vec<String> = ideal.generator.entries().iter().map(u32::to_string).collect();
    let mut s = format!("ideal side={} generator={}\n", ideal.side, gen.join(","));
    write_rank_code_body(&mut s, ideal.generator.shape(), ideal.generator.field().p(), &ideal.elements);
    s
}

/// Metadata from an `ideal` header line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealHeader {
    pub side: Side,
    pub generator: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCodeFile {
    pub ideal: Option<IdealHeader>,
    pub code: RankMetricCode,
}

fn parse_ideal_header(ln: usize, line: &str) -> Result<IdealHeader> {
    let mut side = None;
    let mut generator = None;
    for tok in line.split_whitespace().skip(1) {
        match tok.split_once('=') {
            Some(("side", v)) => side = Some(v.parse::<Side>().map_err(|e| parse_err(ln, e))?),
            Some(("generator", v)) => {
                generator = Some(
                    v.split(',')
                        .map(|t| t.parse::<u32>().map_err(|_| parse_err(ln, format!("bad generator entry `{t}`"))))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            _ => return Err(parse_err(ln, format!("unexpected token `{tok}` in ideal header"))),
        }
    }
    Ok(IdealHeader {
        side: side.ok_or_else(|| parse_err(ln, "ideal header lacks side="))?,
        generator: generator.ok_or_else(|| parse_err(ln, "ideal header lacks generator="))?,
    })
}

/// Parses a `rankcode` file, optionally preceded by an `ideal` header.
pub fn parse_rank_code(text: &str) -> Result<RankCodeFile> {
    let mut lines = Lines::new(text);
    let (mut ln, mut header) = lines.next()?;
    let mut ideal = None;
    if header.starts_with("ideal") {
        ideal = Some(parse_ideal_header(ln, header)?);
        (ln, header) = lines.next()?;
    }
    let rest = header
        .strip_prefix("rankcode")
        .ok_or_else(|| parse_err(ln, "expected `rankcode k l p` header"))?;
    let dims = numbers(ln, rest)?;
    let [k, l, p] = dims[..] else {
        return Err(parse_err(ln, "rankcode header must be `rankcode k l p`"));
    };
    let field = located(ln, PrimeField::new(p))?;
    let mut elements = Vec::new();
    while !lines.is_done() {
        let start = lines.peek().map_or(0, |x| x.0);
        let m = read_matrix(&mut lines)?;
        if m.shape() != (k as usize, l as usize) || m.field() != field {
            return Err(parse_err(start, "matrix block does not match the rankcode header"));
        }
        elements.push(m);
    }
    if let Some(h) = &ideal {
        if h.generator.len() != (k * l) as usize {
            return Err(parse_err(1, "ideal generator has the wrong number of entries"));
        }
    }
    let code = located(ln, RankMetricCode::from_matrices(elements))?;
    Ok(RankCodeFile { ideal, code })
}

pub fn write_subspace_code(code: &SubspaceCode) -> String {
    let mut s = format!(
        "subspacecode {} {} {}\n",
        code.ambient_dim(),
        code.field().p(),
        code.len()
    );
    for c in code.codewords() {
        s.push_str(&write_matrix(c.basis()));
    }
    s
}

/// Parses a `subspacecode` file; every block must be a canonical RREF basis.
pub fn parse_subspace_code(text: &str) -> Result<SubspaceCode> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next()?;
    let rest = header
        .strip_prefix("subspacecode")
        .ok_or_else(|| parse_err(ln, "expected `subspacecode n p M` header"))?;
    let dims = numbers(ln, rest)?;
    let [n, p, count] = dims[..] else {
        return Err(parse_err(ln, "subspacecode header must be `subspacecode n p M`"));
    };
    let field = located(ln, PrimeField::new(p))?;
    let mut subspaces = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let start = lines.peek().map_or(ln, |x| x.0);
        let basis = read_matrix(&mut lines)?;
        if basis.cols() != n as usize || basis.field() != field {
            return Err(parse_err(start, "basis does not match the subspacecode header"));
        }
        subspaces.push(Subspace::from_rref(basis).map_err(|_| {
            parse_err(start, "basis is not in reduced row echelon form without zero rows")
        })?);
    }
    if let Some(&(extra, _)) = lines.peek() {
        return Err(parse_err(extra, format!("more than M = {count} blocks")));
    }
    let code = located(ln, SubspaceCode::from_subspaces(subspaces))?;
    if code.len() != count as usize {
        return Err(parse_err(ln, "duplicate subspaces in code file"));
    }
    Ok(code)
}
