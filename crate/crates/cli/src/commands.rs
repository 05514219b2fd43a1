//! The subcommands. Each returns a [`Report`] whose status decides the exit
//! code; input problems surface as [`Error`].

use admgrad::admissible::{
    ad_e_degree_profile, block_pair, block_partners, check_pair, construct_pair, occupied_slots, optimal_pair,
    AdmissiblePair, BlockCase, OptimalOutcome,
};
use admgrad::connectivity::connect_to_dynkin;
use admgrad::equivalence::{b_optimal_chain, is_two_level, rank_classifier, two_level_chain, verify_chain, Direction};
use admgrad::exactlin::{fmt_rational, q, Rational, Subspace};
use admgrad::grading::{is_admissible_grading, is_b_optimal, is_dynkin, is_good_grading};
use admgrad::liealg::{AlgebraKind, Element, Partition};
use admgrad::sl2::{adapted_triple, isotypic_decompose, t_element, IsotypicDecomposition};
use admgrad::{Error, Result};

use crate::certificate::{fmt_list, fmt_triples, verify_text, write_chain, write_connectivity};
use crate::problem::Problem;
use crate::report::{table, verdict_lines, yes_no, Report, Status};

/// A report plus, for `connect` and `chain`, the certificate text.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub certificate: Option<String>,
}

impl Outcome {
    fn plain(report: Report) -> Self {
        Outcome { report, certificate: None }
    }
}

fn header(r: &mut Report, p: &Problem) {
    let alg = p.algebra();
    r.field("algebra", alg.kind().to_string());
    r.field("nilpotent", fmt_triples(alg, &p.e));
    r.field("grading", p.grading.to_string());
    r.field("a", fmt_rational(&p.a));
}

fn degree_matrix_lines(p: &Problem) -> Vec<String> {
    let rows: Vec<Vec<String>> =
        p.grading.degree_matrix().iter().map(|row| row.iter().map(fmt_rational).collect()).collect();
    table(&rows)
}

fn profile_lines(p: &Problem) -> Vec<String> {
    let mut rows = vec![vec!["degree".to_string(), "dim".into(), "dim g^e".into(), "injective".into(), "surjective".into()]];
    for row in ad_e_degree_profile(&p.grading, &p.e, &p.a) {
        rows.push(vec![
            fmt_rational(&row.degree),
            row.dim.to_string(),
            row.dim_centralizer.to_string(),
            yes_no(row.injective).into(),
            yes_no(row.surjective).into(),
        ]);
    }
    table(&rows)
}

fn subspace_lines(p: &Problem, name: &str, u: &Subspace) -> Vec<String> {
    let alg = p.algebra();
    let mut out = vec![format!("{name}: dim {}", u.dim())];
    for v in u.basis() {
        out.push(format!("  {}", fmt_triples(alg, &Element::from_coords(v.clone()))));
    }
    out
}

fn pair_lines(p: &Problem, pair: &AdmissiblePair) -> Vec<String> {
    let mut out = subspace_lines(p, "m", &pair.m);
    out.extend(subspace_lines(p, "n", &pair.n));
    out
}

fn decompose(p: &Problem) -> Result<IsotypicDecomposition> {
    let triple = adapted_triple(&p.grading, &p.e, &p.a)?;
    let t = t_element(&p.grading, &triple, &p.a)?;
    isotypic_decompose(p.algebra(), &triple, &t, &p.a)
}

/// Checks the grading and, if present, the pair of the problem file.
pub fn cmd_check(p: &Problem, b: Option<&Rational>) -> Result<Outcome> {
    let mut r = Report::new("check", p.spec.name.clone());
    header(&mut r, p);
    r.section("degree matrix", degree_matrix_lines(p));
    r.section("ad e by degree", profile_lines(p));

    let admissible = is_admissible_grading(&p.grading, &p.e, &p.a)?;
    let mut g = vec![format!("admissible: {}", yes_no(admissible))];
    r.require(admissible);
    g.push(format!("good: {}", yes_no(is_good_grading(&p.grading, &p.e, &p.a)?)));
    g.push(format!("dynkin: {}", yes_no(is_dynkin(&p.grading, &p.e))));
    if let Some(b) = b.or(p.spec.b.as_ref()) {
        let ok = is_b_optimal(&p.grading, &p.e, b)?;
        g.push(format!("{}-optimal: {}", fmt_rational(b), yes_no(ok)));
        r.require(ok);
    }
    r.section("grading", g);

    if let Some(pair) = &p.pair {
        let rep = check_pair(&p.grading, &p.e, &p.a, &pair.m, &pair.n);
        r.require(rep.overall());
        r.section("pair", verdict_lines(&rep));
    }
    Ok(Outcome::plain(r))
}

fn case_label(c: BlockCase) -> String {
    match c {
        BlockCase::ZeroWeight(k) => format!("zero-weight k={k}"),
        BlockCase::AllPositive => "all-positive".into(),
        BlockCase::AllNegative => "all-negative".into(),
        BlockCase::Neutral(k) => format!("neutral k={k}"),
        BlockCase::LowerHeavy(k) => format!("lower-heavy k={k}"),
        BlockCase::UpperHeavy(k) => format!("upper-heavy k={k}"),
    }
}

/// Builds a pair block by block, or with `optimal` searches for `(g_{≤-a}, n)`.
pub fn cmd_construct(p: &Problem, optimal: bool) -> Result<Outcome> {
    let mut r = Report::new("construct", p.spec.name.clone());
    header(&mut r, p);
    if optimal {
        match optimal_pair(&p.grading, &p.e, &p.a)? {
            OptimalOutcome::Yes(pair) => {
                let rep = check_pair(&p.grading, &p.e, &p.a, &pair.m, &pair.n);
                r.require(rep.overall());
                r.section("optimal pair", pair_lines(p, &pair));
                r.section("verdicts", verdict_lines(&rep));
            }
            OptimalOutcome::No(obs) => {
                r.require(false);
                r.section("optimal pair", vec!["none".into(), format!("obstruction: {obs}")]);
            }
            OptimalOutcome::Unknown => {
                r.require(false);
                r.section("optimal pair", vec!["undecided: the complement search found no certified pair".into()]);
            }
        }
        return Ok(Outcome::plain(r));
    }
    if !is_admissible_grading(&p.grading, &p.e, &p.a)? {
        r.require(false);
        r.section("construction", vec!["grading is not admissible: g_<=-a meets g^e".into()]);
        return Ok(Outcome::plain(r));
    }
    let dec = decompose(p)?;
    let mut rows = vec![vec!["d".to_string(), "lambda".into(), "mult".into(), "case".into()]];
    for (pos, neg) in block_partners(&dec)? {
        let (_, _, case) = block_pair(pos, neg, &p.a)?;
        rows.push(vec![pos.d.to_string(), fmt_rational(&pos.lambda), pos.multiplicity.to_string(), case_label(case)]);
    }
    r.section("blocks", table(&rows));
    let pair = construct_pair(&dec, &p.grading)?;
    let rep = check_pair(&p.grading, &p.e, &p.a, &pair.m, &pair.n);
    r.require(rep.overall());
    r.section("pair", pair_lines(p, &pair));
    r.section("verdicts", verdict_lines(&rep));
    Ok(Outcome::plain(r))
}

/// Certifies a path of gradings to the Dynkin end.
pub fn cmd_connect(p: &Problem) -> Result<Outcome> {
    let mut r = Report::new("connect", p.spec.name.clone());
    header(&mut r, p);
    let alg = p.algebra();
    let cert = connect_to_dynkin(&p.grading, &p.e, &p.a)?;
    r.section(
        "deformation",
        vec![
            format!("h: diag({})", fmt_list(&cert.h_diag)),
            format!("t: diag({})", fmt_list(&cert.t_diag)),
            format!("breakpoints: {}", if cert.breakpoints.is_empty() { "none".into() } else { fmt_list(&cert.breakpoints) }),
            format!("epsilons: {}", fmt_list(&cert.epsilons)),
        ],
    );
    let mut rows = vec![vec!["step".to_string(), "from".into(), "to".into(), "dim m".into(), "dim n".into(), "verdict".into()]];
    for (i, s) in cert.steps.iter().enumerate() {
        let ok = s.report.overall() && s.report2.overall();
        rows.push(vec![
            (i + 1).to_string(),
            fmt_rational(&s.eps),
            fmt_rational(&s.eps2),
            s.pair.m.dim().to_string(),
            s.pair.n.dim().to_string(),
            if ok { "pass".into() } else { "FAIL".into() },
        ]);
    }
    r.section("steps", table(&rows));
    if !cert.verify(alg)? {
        return Err(Error::Verification("connectivity certificate does not re-verify".into()));
    }
    r.section("certificate", vec![format!("steps: {}, re-verified", cert.steps.len())]);
    Ok(Outcome { report: r, certificate: Some(write_connectivity(alg, &cert)) })
}

fn direction_label(d: Direction) -> &'static str {
    match d {
        Direction::FirstLesser => "<=",
        Direction::SecondLesser => ">=",
        Direction::Equal => "==",
    }
}

/// Chains the problem's pair (or the constructed one) to a fixed endpoint.
pub fn cmd_chain(p: &Problem, b: Option<&Rational>) -> Result<Outcome> {
    let mut r = Report::new("chain", p.spec.name.clone());
    header(&mut r, p);
    let pair = match &p.pair {
        Some(pair) => pair.clone(),
        None => construct_pair(&decompose(p)?, &p.grading)?,
    };
    let half = &p.a / q(2);
    let b = b.or(p.spec.b.as_ref()).cloned();
    let optimal_at = |b: &Rational| -> Result<bool> { Ok(p.a >= q(2) && p.a >= b * q(2) && is_b_optimal(&p.grading, &p.e, b)?) };
    let (method, b) = match b {
        Some(b) if optimal_at(&b)? => ("b-optimal", b),
        Some(b) if is_two_level(&p.grading, &p.a, &b) => ("two-level", b),
        Some(b) => {
            return Err(Error::Precondition(format!(
                "the grading is neither {0}-optimal nor two-level at {0}",
                fmt_rational(&b)
            )))
        }
        None if optimal_at(&half)? => ("b-optimal", half),
        None => match occupied_slots(&p.grading, &p.a).into_iter().find(|b| is_two_level(&p.grading, &p.a, b)) {
            Some(b) => ("two-level", b),
            None => {
                r.require(false);
                r.section("chain", vec!["no chain construction applies: the grading is not a/2-optimal and not two-level".into()]);
                return Ok(Outcome::plain(r));
            }
        },
    };
    let chain = if method == "b-optimal" {
        b_optimal_chain(&p.grading, &p.e, &p.a, &b, &pair)?
    } else {
        two_level_chain(&p.grading, &p.e, &p.a, &b, &pair)?
    };
    r.section("method", vec![format!("{method} at b = {}", fmt_rational(&b))]);
    let mut rows = vec![vec!["pair".to_string(), "dim m".into(), "dim n".into(), "link".into()]];
    for (i, pr) in chain.pairs.iter().enumerate() {
        let link = chain.witnesses.get(i).map(|w| direction_label(w.direction)).unwrap_or("");
        rows.push(vec![(i + 1).to_string(), pr.m.dim().to_string(), pr.n.dim().to_string(), link.into()]);
    }
    r.section("pairs", table(&rows));
    if let Some(last) = chain.last() {
        r.section("endpoint", pair_lines(p, last));
    }
    let check = verify_chain(&chain);
    if let Some((i, why)) = &check.failure {
        return Err(Error::Verification(format!("chain link {} fails: {why}", i + 1)));
    }
    r.section("certificate", vec![format!("links: {}, re-verified", chain.witnesses.len())]);
    let cert = write_chain(p.algebra(), &p.e, &p.a, &chain);
    Ok(Outcome { report: r, certificate: Some(cert) })
}

/// Rank and isomorphism type of `g^s` from the partition.
pub fn cmd_classify(kind: AlgebraKind, partition: &Partition) -> Result<Outcome> {
    let mut r = Report::new("classify", None);
    r.field("algebra", kind.to_string());
    r.field("partition", partition.to_string());
    let rc = rank_classifier(kind, partition)?;
    let mut lines = vec![format!("rank: {}", rc.rank), format!("type: {}", rc.iso_class)];
    lines.push(format!("clause: {}", rc.clause.map(|c| c.to_string()).unwrap_or_else(|| "none".into())));
    if !rc.readings_agree {
        lines.push("note: the triple clause differs between the m >= 3 and m >= 2 readings".into());
    }
    r.section("centraliser of the triple", lines);
    Ok(Outcome::plain(r))
}

/// Re-verifies a certificate file.
pub fn cmd_verify(text: &str) -> Result<Outcome> {
    let out = verify_text(text)?;
    let mut r = Report::new("verify", None);
    r.field("type", out.kind.clone());
    r.field("algebra", out.algebra.to_string());
    let mut lines = vec![format!("links: {}", out.links), format!("valid: {}", yes_no(out.valid))];
    if let Some(f) = &out.failure {
        lines.push(format!("failure: {f}"));
    }
    for d in &out.drift {
        lines.push(format!("drift: {d}"));
    }
    r.section("verification", lines);
    r.require(out.ok());
    Ok(Outcome::plain(r))
}

/// Exit code for an error: 3 for failed internal verification, 2 otherwise.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) | Error::Singular | Error::NotContained | Error::NoSolution(_) => 3,
        _ => 2,
    }
}

pub fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
    }
}

/// The message printed for an error.
pub fn error_message(e: &Error) -> String {
    format!("error: {e}")
}
