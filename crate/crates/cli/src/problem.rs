//! The key-value problem description read by every subcommand.
//!
//! ```text
//! name = staircase-sl4
//! algebra = sl 4
//! nilpotent = matrix (1,3,1) (2,4,1)
//! grading = 3/2 1/2 -1/2 -3/2
//! a = 2
//! m.range = <= -2
//! n.range = <= -2
//! n.vector = (2,1,1)
//! n.vector = (3,2,1)
//! ```
//!
//! Matrix entries are `(row, col, value)` triples, 1-based. A vector line is
//! the sum of its triples. `nilpotent = partition 2 2` picks the standard
//! representative and `grading = dynkin` its Dynkin grading.

use std::sync::Arc;

use admgrad::admissible::AdmissiblePair;
use admgrad::exactlin::{parse_rational, Rational, Subspace};
use admgrad::grading::{grading_from_diagonal, Grading, RangeOp};
use admgrad::liealg::{build_algebra, jordan_data, AlgebraKind, Element, MatrixLieAlgebra, Partition};
use admgrad::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotentSpec {
    Partition(Partition),
    Matrix(Vec<(usize, usize, Rational)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingSpec {
    Dynkin,
    Diagonal(Vec<Rational>),
}

/// One side of a pair: a degree range of `g` plus explicit vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubspaceSpec {
    pub ranges: Vec<(RangeOp, Rational)>,
    pub vectors: Vec<Vec<(usize, usize, Rational)>>,
}

impl SubspaceSpec {
    fn is_empty(&self) -> bool {
        self.ranges.is_empty() && self.vectors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub name: Option<String>,
    pub algebra: AlgebraKind,
    pub nilpotent: NilpotentSpec,
    pub grading: GradingSpec,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub m: Option<SubspaceSpec>,
    pub n: Option<SubspaceSpec>,
}

/// A parsed problem with everything built.
#[derive(Clone, Debug)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub grading: Grading,
    pub e: Element,
    pub a: Rational,
    pub pair: Option<AdmissiblePair>,
}

impl Problem {
    pub fn algebra(&self) -> &Arc<MatrixLieAlgebra> {
        self.grading.algebra()
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {line}: {}", msg.into()))
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse(msg) => parse_err(line, msg),
        other => parse_err(line, other.to_string()),
    }
}

/// Parses `(r,c,v) (r,c,v) …`.
pub fn parse_triples(s: &str) -> Result<Vec<(usize, usize, Rational)>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in '{s}'")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed '(' in '{s}'")))?;
        let fields: Vec<&str> = open[..close].split(',').map(str::trim).collect();
        let [r, c, v] = fields[..] else {
            return Err(Error::Parse(format!("expected (row,col,value), got '({})'", &open[..close])));
        };
        let r: usize = r.parse().map_err(|_| Error::Parse(format!("bad row '{r}'")))?;
        let c: usize = c.parse().map_err(|_| Error::Parse(format!("bad column '{c}'")))?;
        if r == 0 || c == 0 {
            return Err(Error::Parse("matrix indices are 1-based".into()));
        }
        out.push((r, c, parse_rational(v)?));
        rest = open[close + 1..].trim_start();
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("no entries in '{s}'")));
    }
    Ok(out)
}

fn parse_range(s: &str) -> Result<(RangeOp, Rational)> {
    let s = s.trim();
    let (op, rest) = if let Some(r) = s.strip_prefix("<=") {
        (RangeOp::Le, r)
    } else if let Some(r) = s.strip_prefix(">=") {
        (RangeOp::Ge, r)
    } else if let Some(r) = s.strip_prefix('<') {
        (RangeOp::Lt, r)
    } else if let Some(r) = s.strip_prefix('>') {
        (RangeOp::Gt, r)
    } else {
        return Err(Error::Parse(format!("expected a range like '<= -2', got '{s}'")));
    };
    Ok((op, parse_rational(rest.trim())?))
}

pub fn parse_partition(s: &str) -> Result<Partition> {
    let parts = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad part '{t}'"))))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec> {
    let mut name = None;
    let mut algebra = None;
    let mut nilpotent = None;
    let mut grading = None;
    let mut a = None;
    let mut b = None;
    let mut m = SubspaceSpec::default();
    let mut n = SubspaceSpec::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| parse_err(line_no, "expected 'key = value'"))?;
        let (key, value) = (key.trim(), value.trim());
        let wrap = |e: Error| at_line(line_no, e);
        match key {
            "name" => name = Some(value.to_string()),
            "algebra" => algebra = Some(value.parse::<AlgebraKind>().map_err(wrap)?),
            "nilpotent" => {
                nilpotent = Some(if let Some(rest) = value.strip_prefix("partition") {
                    NilpotentSpec::Partition(parse_partition(rest).map_err(wrap)?)
                } else if let Some(rest) = value.strip_prefix("matrix") {
                    NilpotentSpec::Matrix(parse_triples(rest).map_err(wrap)?)
                } else {
                    return Err(parse_err(line_no, "nilpotent must start with 'partition' or 'matrix'"));
                })
            }
            "grading" => {
                grading = Some(if value == "dynkin" {
                    GradingSpec::Dynkin
                } else {
                    GradingSpec::Diagonal(value.split_whitespace().map(parse_rational).collect::<Result<_>>().map_err(wrap)?)
                })
            }
            "a" => a = Some(parse_rational(value).map_err(wrap)?),
            "b" => b = Some(parse_rational(value).map_err(wrap)?),
            "m.range" => m.ranges.push(parse_range(value).map_err(wrap)?),
            "n.range" => n.ranges.push(parse_range(value).map_err(wrap)?),
            "m.vector" => m.vectors.push(parse_triples(value).map_err(wrap)?),
            "n.vector" => n.vectors.push(parse_triples(value).map_err(wrap)?),
            other => return Err(parse_err(line_no, format!("unknown key '{other}'"))),
        }
    }
    let algebra = algebra.ok_or_else(|| Error::Parse("missing 'algebra'".into()))?;
    let nilpotent = nilpotent.ok_or_else(|| Error::Parse("missing 'nilpotent'".into()))?;
    let grading = grading.ok_or_else(|| Error::Parse("missing 'grading'".into()))?;
    if m.is_empty() != n.is_empty() {
        return Err(Error::Parse("a pair needs both m.* and n.* lines".into()));
    }
    let (m, n) = if m.is_empty() { (None, None) } else { (Some(m), Some(n)) };
    Ok(ProblemSpec { name, algebra, nilpotent, grading, a, b, m, n })
}

fn zero_based(t: &[(usize, usize, Rational)]) -> Vec<(usize, usize, Rational)> {
    t.iter().map(|(r, c, v)| (r - 1, c - 1, v.clone())).collect()
}

fn build_subspace(g: &Grading, s: &SubspaceSpec) -> Result<Subspace> {
    let alg = g.algebra();
    let mut vecs = Vec::new();
    for (op, k) in &s.ranges {
        vecs.extend(g.piece_range(*op, k).basis().iter().cloned());
    }
    for v in &s.vectors {
        vecs.push(alg.from_triples(&zero_based(v))?.coords);
    }
    Ok(Subspace::span(g.dim(), vecs))
}

/// Builds the algebra, `e`, the grading and the optional pair.
pub fn build(spec: &ProblemSpec) -> Result<Problem> {
    let alg = Arc::new(build_algebra(spec.algebra)?);
    let (e, dynkin) = match &spec.nilpotent {
        NilpotentSpec::Partition(p) => {
            let jd = jordan_data(&alg, p)?;
            (jd.e, Some(jd.h_diag))
        }
        NilpotentSpec::Matrix(t) => (alg.from_triples(&zero_based(t))?, None),
    };
    if e.is_zero() {
        return Err(Error::Precondition("the nilpotent element is zero".into()));
    }
    let diag = match &spec.grading {
        GradingSpec::Diagonal(d) => d.clone(),
        GradingSpec::Dynkin => {
            dynkin.ok_or_else(|| Error::Precondition("'grading = dynkin' needs 'nilpotent = partition …'".into()))?
        }
    };
    let grading = grading_from_diagonal(alg, diag)?;
    let a = match &spec.a {
        Some(a) => a.clone(),
        None => grading.degree_of(&e.coords).ok_or_else(|| Error::NotHomogeneous("e is not homogeneous".into()))?,
    };
    grading.require_degree(&e, &a)?;
    let pair = match (&spec.m, &spec.n) {
        (Some(m), Some(n)) => Some(AdmissiblePair::new(build_subspace(&grading, m)?, build_subspace(&grading, n)?)),
        _ => None,
    };
    Ok(Problem { spec: spec.clone(), grading, e, a, pair })
}

pub fn load(text: &str) -> Result<Problem> {
    build(&parse_spec(text)?)
}
