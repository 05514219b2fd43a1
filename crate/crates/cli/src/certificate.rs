//! Versioned text certificates for connectivity and equivalence chains.
//!
//! Every certificate embeds the algebra, `e`, the gradings and the pairs, so
//! [`verify_text`] re-certifies it without rerunning any construction.

use std::fmt::Write as _;
use std::sync::Arc;

use admgrad::admissible::{check_pair, AdmissiblePair, CheckReport};
use admgrad::connectivity::{CommonStep, ConnectivityCertificate};
use admgrad::equivalence::{verify_chain, ComparabilityWitness, Direction, EquivalenceChain};
use admgrad::exactlin::{fmt_rational, parse_rational, Rational, Subspace};
use admgrad::grading::{grading_from_diagonal, Grading};
use admgrad::liealg::{build_algebra, AlgebraKind, Element, MatrixLieAlgebra};
use admgrad::{Error, Result};

use crate::problem::parse_triples;

pub const HEADER: &str = "admgrad-cert 1";

/// `(r,c,v) …` with 1-based indices; `0` for the zero matrix.
pub fn fmt_triples(alg: &MatrixLieAlgebra, x: &Element) -> String {
    let t = alg.to_triples(x);
    if t.is_empty() {
        return "0".into();
    }
    t.iter().map(|(r, c, v)| format!("({},{},{})", r + 1, c + 1, fmt_rational(v))).collect::<Vec<_>>().join(" ")
}

pub fn fmt_list(xs: &[Rational]) -> String {
    xs.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")
}

fn list_line(key: &str, xs: &[Rational]) -> String {
    if xs.is_empty() {
        key.to_string()
    } else {
        format!("{key} {}", fmt_list(xs))
    }
}

fn verdict_line(r: &CheckReport) -> String {
    r.verdicts
        .iter()
        .map(|v| format!("{}={}", v.condition, if v.pass { "pass" } else { "fail" }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_subspace(out: &mut String, alg: &MatrixLieAlgebra, key: &str, u: &Subspace) {
    writeln!(out, "{key}.dim {}", u.dim()).unwrap();
    for v in u.basis() {
        writeln!(out, "{key}.vector {}", fmt_triples(alg, &Element::from_coords(v.clone()))).unwrap();
    }
}

fn write_pair(out: &mut String, alg: &MatrixLieAlgebra, p: &AdmissiblePair) {
    write_subspace(out, alg, "m", &p.m);
    write_subspace(out, alg, "n", &p.n);
}

fn write_preamble(out: &mut String, kind: &str, alg: &MatrixLieAlgebra, e: &Element, a: &Rational) {
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "type {kind}").unwrap();
    writeln!(out, "algebra {}", alg.kind()).unwrap();
    writeln!(out, "nilpotent {}", fmt_triples(alg, e)).unwrap();
    writeln!(out, "a {}", fmt_rational(a)).unwrap();
}

pub fn write_connectivity(alg: &MatrixLieAlgebra, cert: &ConnectivityCertificate) -> String {
    let mut out = String::new();
    write_preamble(&mut out, "connectivity", alg, &cert.e, &cert.a);
    writeln!(out, "{}", list_line("h-diag", &cert.h_diag)).unwrap();
    writeln!(out, "{}", list_line("t-diag", &cert.t_diag)).unwrap();
    writeln!(out, "{}", list_line("breakpoints", &cert.breakpoints)).unwrap();
    writeln!(out, "{}", list_line("epsilons", &cert.epsilons)).unwrap();
    writeln!(out, "steps {}", cert.steps.len()).unwrap();
    for (i, s) in cert.steps.iter().enumerate() {
        writeln!(out, "step {} {} {}", i + 1, fmt_rational(&s.eps), fmt_rational(&s.eps2)).unwrap();
        write_pair(&mut out, alg, &s.pair);
        writeln!(out, "verdicts-start {}", verdict_line(&s.report)).unwrap();
        writeln!(out, "verdicts-end {}", verdict_line(&s.report2)).unwrap();
    }
    writeln!(out, "end").unwrap();
    out
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::FirstLesser => "first-lesser",
        Direction::SecondLesser => "second-lesser",
        Direction::Equal => "equal",
    }
}

fn parse_direction(s: &str) -> Result<Direction> {
    match s {
        "first-lesser" => Ok(Direction::FirstLesser),
        "second-lesser" => Ok(Direction::SecondLesser),
        "equal" => Ok(Direction::Equal),
        _ => Err(Error::Parse(format!("unknown direction '{s}'"))),
    }
}

pub fn write_chain(alg: &MatrixLieAlgebra, e: &Element, a: &Rational, chain: &EquivalenceChain) -> String {
    let mut out = String::new();
    write_preamble(&mut out, "chain", alg, e, a);
    writeln!(out, "pairs {}", chain.pairs.len()).unwrap();
    for (i, p) in chain.pairs.iter().enumerate() {
        writeln!(out, "pair {}", i + 1).unwrap();
        write_pair(&mut out, alg, p);
    }
    for (i, w) in chain.witnesses.iter().enumerate() {
        writeln!(out, "witness {}", i + 1).unwrap();
        writeln!(out, "direction {}", direction_name(w.direction)).unwrap();
        writeln!(out, "{}", list_line("grading-diag", w.grading.diag())).unwrap();
        writeln!(out, "a {}", fmt_rational(&w.a)).unwrap();
        writeln!(out, "verdict {}", if w.verify() { "pass" } else { "fail" }).unwrap();
    }
    writeln!(out, "end").unwrap();
    out
}

/// Line reader over `key value` lines.
struct Lines<'a> {
    lines: Vec<(usize, &'a str, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .map(|(i, l)| {
                let (k, v) = l.split_once(' ').unwrap_or((l, ""));
                (i + 1, k, v.trim())
            })
            .collect();
        Lines { lines, pos: 0 }
    }

    fn peek_key(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1)
    }

    fn expect(&mut self, key: &str) -> Result<&'a str> {
        let (no, k, v) = *self.lines.get(self.pos).ok_or_else(|| Error::Parse(format!("missing '{key}' line")))?;
        if k != key {
            return Err(Error::Parse(format!("line {no}: expected '{key}', found '{k}'")));
        }
        self.pos += 1;
        Ok(v)
    }

    fn expect_usize(&mut self, key: &str) -> Result<usize> {
        let v = self.expect(key)?;
        v.parse().map_err(|_| Error::Parse(format!("'{key}' needs a count, got '{v}'")))
    }
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split_whitespace().map(parse_rational).collect()
}

fn parse_element(alg: &MatrixLieAlgebra, s: &str) -> Result<Element> {
    if s == "0" {
        return Ok(Element::zero(alg.dim()));
    }
    let t: Vec<_> = parse_triples(s)?.into_iter().map(|(r, c, v)| (r - 1, c - 1, v)).collect();
    alg.from_triples(&t)
}

fn read_subspace(lines: &mut Lines, alg: &MatrixLieAlgebra, key: &str) -> Result<Subspace> {
    let dim = lines.expect_usize(&format!("{key}.dim"))?;
    let vecs = (0..dim)
        .map(|_| Ok(parse_element(alg, lines.expect(&format!("{key}.vector"))?)?.coords))
        .collect::<Result<Vec<_>>>()?;
    let u = Subspace::span(alg.dim(), vecs);
    if u.dim() != dim {
        return Err(Error::Parse(format!("{key} vectors span dimension {}, declared {dim}", u.dim())));
    }
    Ok(u)
}

fn read_pair(lines: &mut Lines, alg: &MatrixLieAlgebra) -> Result<AdmissiblePair> {
    Ok(AdmissiblePair::new(read_subspace(lines, alg, "m")?, read_subspace(lines, alg, "n")?))
}

/// What a certificate file claims and what re-verification found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub kind: String,
    pub algebra: AlgebraKind,
    pub links: usize,
    pub valid: bool,
    /// Recorded verdict lines that differ from the recomputed ones.
    pub drift: Vec<String>,
    pub failure: Option<String>,
}

impl VerifyOutcome {
    pub fn ok(&self) -> bool {
        self.valid && self.drift.is_empty()
    }
}

/// Parses a certificate and re-certifies every link from the embedded data.
pub fn verify_text(text: &str) -> Result<VerifyOutcome> {
    let mut lines = Lines::new(text);
    let header = lines.lines.first().map(|l| format!("{} {}", l.1, l.2));
    if header.as_deref() != Some(HEADER) {
        return Err(Error::Parse(format!("missing '{HEADER}' header")));
    }
    lines.pos = 1;
    let kind = lines.expect("type")?.to_string();
    let algebra: AlgebraKind = lines.expect("algebra")?.parse()?;
    let alg = Arc::new(build_algebra(algebra)?);
    let e = parse_element(&alg, lines.expect("nilpotent")?)?;
    let a = parse_rational(lines.expect("a")?)?;
    let outcome = match kind.as_str() {
        "connectivity" => verify_connectivity(&mut lines, &alg, e, a)?,
        "chain" => verify_chain_text(&mut lines, &alg, e)?,
        other => return Err(Error::Parse(format!("unknown certificate type '{other}'"))),
    };
    lines.expect("end")?;
    let (links, valid, drift, failure) = outcome;
    Ok(VerifyOutcome { kind, algebra, links, valid, drift, failure })
}

type Checked = (usize, bool, Vec<String>, Option<String>);

fn verify_connectivity(lines: &mut Lines, alg: &Arc<MatrixLieAlgebra>, e: Element, a: Rational) -> Result<Checked> {
    let h_diag = parse_list(lines.expect("h-diag")?)?;
    let t_diag = parse_list(lines.expect("t-diag")?)?;
    let breakpoints = parse_list(lines.expect("breakpoints")?)?;
    let epsilons = parse_list(lines.expect("epsilons")?)?;
    let count = lines.expect_usize("steps")?;
    let mut cert = ConnectivityCertificate { a, e, h_diag, t_diag, breakpoints, epsilons, steps: Vec::new() };
    let mut drift = Vec::new();
    for i in 0..count {
        let head = lines.expect("step")?;
        let fields: Vec<&str> = head.split_whitespace().collect();
        let [_, eps, eps2] = fields[..] else {
            return Err(Error::Parse(format!("malformed step header '{head}'")));
        };
        let (eps, eps2) = (parse_rational(eps)?, parse_rational(eps2)?);
        let pair = read_pair(lines, alg)?;
        let recorded = [lines.expect("verdicts-start")?.to_string(), lines.expect("verdicts-end")?.to_string()];
        let mut reports = Vec::new();
        for (which, (eps, rec)) in [(&eps, &recorded[0]), (&eps2, &recorded[1])].into_iter().enumerate() {
            let g = cert.grading_at(alg, eps)?;
            let r = check_pair(&g, &cert.e, &cert.a, &pair.m, &pair.n);
            let now = verdict_line(&r);
            if &now != rec {
                let end = if which == 0 { "start" } else { "end" };
                drift.push(format!("step {} {end}: recorded '{rec}', recomputed '{now}'", i + 1));
            }
            reports.push(r);
        }
        let report2 = reports.pop().expect("two reports");
        let report = reports.pop().expect("two reports");
        cert.steps.push(CommonStep { eps, eps2, pair, report, report2 });
    }
    let valid = cert.verify(alg)?;
    let failure = (!valid).then(|| "a step pair fails under one of its gradings, or the epsilons do not run from 0 to 1".into());
    Ok((count, valid, drift, failure))
}

fn verify_chain_text(lines: &mut Lines, alg: &Arc<MatrixLieAlgebra>, e: Element) -> Result<Checked> {
    let count = lines.expect_usize("pairs")?;
    let mut chain = EquivalenceChain::default();
    for i in 0..count {
        let idx = lines.expect_usize("pair")?;
        if idx != i + 1 {
            return Err(Error::Parse(format!("pair {idx} out of order")));
        }
        chain.pairs.push(read_pair(lines, alg)?);
    }
    let mut drift = Vec::new();
    while lines.peek_key() == Some("witness") {
        let idx = lines.expect_usize("witness")?;
        let i = chain.witnesses.len();
        if idx != i + 1 || i + 1 >= chain.pairs.len() {
            return Err(Error::Parse(format!("witness {idx} out of order")));
        }
        let direction = parse_direction(lines.expect("direction")?)?;
        let grading: Grading = grading_from_diagonal(alg.clone(), parse_list(lines.expect("grading-diag")?)?)?;
        let a = parse_rational(lines.expect("a")?)?;
        let recorded = lines.expect("verdict")?;
        let (first, second) = (&chain.pairs[i], &chain.pairs[i + 1]);
        let (lesser, greater) = match direction {
            Direction::SecondLesser => (second.clone(), first.clone()),
            _ => (first.clone(), second.clone()),
        };
        let w = ComparabilityWitness { grading, e: e.clone(), a, lesser, greater, direction };
        let now = if w.verify() { "pass" } else { "fail" };
        if now != recorded {
            drift.push(format!("witness {idx}: recorded '{recorded}', recomputed '{now}'"));
        }
        chain.witnesses.push(w);
    }
    let check = verify_chain(&chain);
    let failure = check.failure.as_ref().map(|(i, why)| format!("link {}: {why}", i + 1));
    Ok((chain.witnesses.len(), check.ok(), drift, failure))
}
