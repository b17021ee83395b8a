//! Line-oriented code files.
//!
//! ```text
//! # comment
//! space hamming q=2 n=3
//! 0 0 0
//! 1 1 1
//! ```
//!
//! Header keys: `q`, `n`, `m`, `k`, `v`, `dims=1,2`, `blocks=2x3,2x3` and
//! `metric` (`s`/`i` for subspaces, `hamming`/`chebyshev` for permutations).
//! Matrix rows are joined by `;`, sum-rank blocks by `|`. Subspace bases are
//! reduced to echelon form on load.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::oracle::ExplicitCode;
use crate::space::{PermMetric, Point, SpaceSpec, SubspaceMetric};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses the `space ...` header (without the leading keyword check).
pub fn parse_space(header: &str, line: usize) -> Result<SpaceSpec> {
    let mut words = header.split_whitespace();
    if words.next() != Some("space") {
        return Err(perr(line, "expected a `space <kind> key=value ...` header"));
    }
    let kind = words.next().ok_or_else(|| perr(line, "missing space kind"))?;
    let mut kv = BTreeMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, got {w:?}")))?;
        kv.insert(k, v);
    }
    let num = |key: &str| -> Result<u64> {
        let v = kv.get(key).ok_or_else(|| perr(line, format!("missing {key}=")))?;
        v.parse().map_err(|_| perr(line, format!("bad number {key}={v}")))
    };
    let list = |key: &str| -> Result<Vec<u64>> {
        let v = kv.get(key).ok_or_else(|| perr(line, format!("missing {key}=")))?;
        v.split(',').map(|x| x.parse().map_err(|_| perr(line, format!("bad list {key}={v}")))).collect()
    };
    let sub_metric = || -> Result<SubspaceMetric> {
        match kv.get("metric").copied() {
            None | Some("i") | Some("I") => Ok(SubspaceMetric::I),
            Some("s") | Some("S") => Ok(SubspaceMetric::S),
            Some(x) => Err(perr(line, format!("unknown subspace metric {x}"))),
        }
    };
    let spec = match kind {
        "hamming" => SpaceSpec::Hamming { q: num("q")?, n: num("n")? },
        "rank" => SpaceSpec::Rank { q: num("q")?, m: num("m")?, n: num("n")? },
        "cover" => SpaceSpec::CoverMetric { q: num("q")?, m: num("m")?, n: num("n")? },
        "pair" => SpaceSpec::PairMetric { q: num("q")?, n: num("n")? },
        "insdel" => SpaceSpec::Insdel { v: num("v").or_else(|_| num("q"))?, n: num("n")? },
        "sumrank" => {
            let v = kv.get("blocks").ok_or_else(|| perr(line, "missing blocks="))?;
            let blocks = v
                .split(',')
                .map(|b| {
                    let (n, m) = b.split_once('x').ok_or_else(|| perr(line, format!("bad block {b:?}")))?;
                    Ok((
                        n.parse().map_err(|_| perr(line, format!("bad block {b:?}")))?,
                        m.parse().map_err(|_| perr(line, format!("bad block {b:?}")))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            SpaceSpec::SumRank { q: num("q")?, blocks }
        }
        "subspace" => SpaceSpec::Subspace { q: num("q")?, n: num("n")?, dims: list("dims")?, metric: sub_metric()? },
        "constdim" => SpaceSpec::ConstDimSubspace { q: num("q")?, n: num("n")?, k: num("k")?, metric: sub_metric()? },
        "permutation" => {
            let metric = match kv.get("metric").copied() {
                None | Some("hamming") => PermMetric::Hamming,
                Some("chebyshev") => PermMetric::Chebyshev,
                Some(x) => return Err(perr(line, format!("unknown permutation metric {x}"))),
            };
            SpaceSpec::Permutation { n: num("n")?, metric }
        }
        _ => return Err(perr(line, format!("unknown space kind {kind:?}"))),
    };
    spec.validate().map_err(|e| perr(line, e.to_string()))?;
    Ok(spec)
}

fn ints(s: &str, line: usize) -> Result<Vec<u32>> {
    s.split_whitespace().map(|x| x.parse().map_err(|_| perr(line, format!("bad symbol {x:?}")))).collect()
}

fn matrix(s: &str, cols: usize, line: usize) -> Result<Matrix> {
    let rows = s.split(';').map(|r| ints(r, line)).collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != cols) {
        return Err(perr(line, format!("every matrix row needs {cols} entries")));
    }
    Ok(Matrix::from_rows(cols, &rows))
}

fn parse_point(s: &SpaceSpec, text: &str, line: usize) -> Result<Point> {
    Ok(match s {
        SpaceSpec::Hamming { .. } | SpaceSpec::PairMetric { .. } => Point::Vector(ints(text, line)?),
        SpaceSpec::Insdel { .. } => Point::Word(ints(text, line)?),
        SpaceSpec::Permutation { .. } => Point::Perm(ints(text, line)?),
        SpaceSpec::Rank { m, .. } | SpaceSpec::CoverMetric { m, .. } => Point::Matrix(matrix(text, *m as usize, line)?),
        SpaceSpec::SumRank { blocks, .. } => {
            let parts: Vec<&str> = text.split('|').collect();
            if parts.len() != blocks.len() {
                return Err(perr(line, format!("expected {} blocks", blocks.len())));
            }
            Point::Blocks(
                parts.iter().zip(blocks).map(|(p, &(_, m))| matrix(p, m as usize, line)).collect::<Result<_>>()?,
            )
        }
        SpaceSpec::Subspace { q, n, .. } | SpaceSpec::ConstDimSubspace { q, n, .. } => {
            let b = matrix(text, *n as usize, line)?;
            let f = Field::get(*q)?;
            let (r, piv) = b.rref(&f);
            if piv.len() != b.rows() {
                return Err(perr(line, "subspace basis rows are linearly dependent"));
            }
            Point::Subspace(r)
        }
    })
}

/// Parses a whole code file.
pub fn parse_code(text: &str) -> Result<ExplicitCode> {
    let mut space = None;
    let mut words = Vec::new();
    let mut seen = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        match &space {
            None => space = Some(parse_space(body, line)?),
            Some(s) => {
                let p = parse_point(s, body, line)?;
                ExplicitCode::new(s.clone(), vec![p.clone()]).map_err(|e| perr(line, e.to_string()))?;
                if let Some(first) = seen.insert(p.clone(), line) {
                    return Err(perr(line, format!("duplicate of the codeword on line {first}")));
                }
                words.push(p);
            }
        }
    }
    let space = space.ok_or_else(|| perr(0, "missing space header"))?;
    ExplicitCode::new(space, words)
}

pub fn read_code(path: &std::path::Path) -> Result<ExplicitCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

/// The header line for a space, inverse to [`parse_space`].
pub fn space_header(s: &SpaceSpec) -> String {
    let sub = |m: &SubspaceMetric| match m {
        SubspaceMetric::S => "s",
        SubspaceMetric::I => "i",
    };
    match s {
        SpaceSpec::Hamming { q, n } => format!("space hamming q={q} n={n}"),
        SpaceSpec::Rank { q, m, n } => format!("space rank q={q} m={m} n={n}"),
        SpaceSpec::CoverMetric { q, m, n } => format!("space cover q={q} m={m} n={n}"),
        SpaceSpec::PairMetric { q, n } => format!("space pair q={q} n={n}"),
        SpaceSpec::Insdel { v, n } => format!("space insdel v={v} n={n}"),
        SpaceSpec::SumRank { q, blocks } => {
            let b: Vec<String> = blocks.iter().map(|(n, m)| format!("{n}x{m}")).collect();
            format!("space sumrank q={q} blocks={}", b.join(","))
        }
        SpaceSpec::Subspace { q, n, dims, metric } => {
            let d: Vec<String> = dims.iter().map(|x| x.to_string()).collect();
            format!("space subspace q={q} n={n} dims={} metric={}", d.join(","), sub(metric))
        }
        SpaceSpec::ConstDimSubspace { q, n, k, metric } => {
            format!("space constdim q={q} n={n} k={k} metric={}", sub(metric))
        }
        SpaceSpec::Permutation { n, metric } => format!(
            "space permutation n={n} metric={}",
            match metric {
                PermMetric::Hamming => "hamming",
                PermMetric::Chebyshev => "chebyshev",
            }
        ),
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn matrix_text(m: &Matrix) -> String {
    m.to_rows().iter().map(|r| join(r)).collect::<Vec<_>>().join("; ")
}

/// Serializes a code; `parse_code(&format_code(c))` returns `c`.
pub fn format_code(c: &ExplicitCode) -> String {
    let mut out = space_header(c.space());
    out.push('\n');
    for w in c.codewords() {
        let line = match w {
            Point::Vector(v) | Point::Word(v) | Point::Perm(v) => join(v),
            Point::Matrix(m) | Point::Subspace(m) => matrix_text(m),
            Point::Blocks(bs) => bs.iter().map(matrix_text).collect::<Vec<_>>().join(" | "),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
