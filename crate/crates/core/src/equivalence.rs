//! Comparability of admissible pairs, equivalence chains and their
//! constructive builders, and the rank of the centraliser of an `sl_2`-triple.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admissible::{check_pair, AdmissiblePair};
use crate::error::{Error, Result};
use crate::exactlin::{
    complement_within, fmt_rational, kernel, orth_complement, q, rank, subspace_intersect, sum_all, QMatrix, Rational,
    Subspace,
};
use crate::grading::{is_b_optimal, Grading, RangeOp};
use crate::liealg::{build_algebra, jordan_data, AlgebraKind, Element, Partition};

/// Which of the two queried pairs is the lesser one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FirstLesser,
    SecondLesser,
    Equal,
}

/// `lesser ⪯_Γ greater`, i.e. `greater.m ⊆ lesser.m ⊆ lesser.n ⊆ greater.n`,
/// with both pairs admissible for `Γ`.
#[derive(Clone, Debug)]
pub struct ComparabilityWitness {
    pub grading: Grading,
    pub e: Element,
    pub a: Rational,
    pub lesser: AdmissiblePair,
    pub greater: AdmissiblePair,
    pub direction: Direction,
}

/// The four inclusions `greater.m ⊆ lesser.m ⊆ lesser.n ⊆ greater.n`.
pub fn nested(lesser: &AdmissiblePair, greater: &AdmissiblePair) -> bool {
    greater.m.is_subspace_of(&lesser.m) && lesser.m.is_subspace_of(&lesser.n) && lesser.n.is_subspace_of(&greater.n)
}

impl ComparabilityWitness {
    pub fn nesting_holds(&self) -> bool {
        nested(&self.lesser, &self.greater)
    }

    /// Re-runs the inclusions and both certifications.
    pub fn verify(&self) -> bool {
        self.nesting_holds()
            && check_pair(&self.grading, &self.e, &self.a, &self.lesser.m, &self.lesser.n).overall()
            && check_pair(&self.grading, &self.e, &self.a, &self.greater.m, &self.greater.n).overall()
    }

    fn links(&self, first: &AdmissiblePair, second: &AdmissiblePair) -> bool {
        match self.direction {
            Direction::FirstLesser => &self.lesser == first && &self.greater == second,
            Direction::SecondLesser => &self.lesser == second && &self.greater == first,
            Direction::Equal => first == second && &self.lesser == first && &self.greater == first,
        }
    }
}

/// A witness that `p1` and `p2` are comparable under `Γ`, if they are.
pub fn comparable(
    g: &Grading,
    e: &Element,
    a: &Rational,
    p1: &AdmissiblePair,
    p2: &AdmissiblePair,
) -> Result<Option<ComparabilityWitness>> {
    for (name, p) in [("first", p1), ("second", p2)] {
        let rep = check_pair(g, e, a, &p.m, &p.n);
        if !rep.overall() {
            let why: Vec<String> = rep.failures().iter().map(|v| v.condition.to_string()).collect();
            return Err(Error::Precondition(format!("{name} pair is not admissible ({})", why.join(", "))));
        }
    }
    let make = |lesser: &AdmissiblePair, greater: &AdmissiblePair, direction| ComparabilityWitness {
        grading: g.clone(),
        e: e.clone(),
        a: a.clone(),
        lesser: lesser.clone(),
        greater: greater.clone(),
        direction,
    };
    Ok(if p1 == p2 {
        Some(make(p1, p2, Direction::Equal))
    } else if nested(p1, p2) {
        Some(make(p1, p2, Direction::FirstLesser))
    } else if nested(p2, p1) {
        Some(make(p2, p1, Direction::SecondLesser))
    } else {
        None
    })
}

/// Pairs linked consecutively by comparability witnesses, possibly under
/// different gradings.
#[derive(Clone, Debug, Default)]
pub struct EquivalenceChain {
    pub pairs: Vec<AdmissiblePair>,
    pub witnesses: Vec<ComparabilityWitness>,
}

impl EquivalenceChain {
    pub fn start(pair: AdmissiblePair) -> Self {
        EquivalenceChain { pairs: vec![pair], witnesses: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn first(&self) -> Option<&AdmissiblePair> {
        self.pairs.first()
    }

    pub fn last(&self) -> Option<&AdmissiblePair> {
        self.pairs.last()
    }

    /// Appends `next` under `Γ`; a repeat of the last pair is skipped.
    pub fn extend(&mut self, g: &Grading, e: &Element, a: &Rational, next: AdmissiblePair) -> Result<()> {
        let last = self.pairs.last().ok_or_else(|| Error::Precondition("empty chain".into()))?;
        if *last == next {
            return Ok(());
        }
        let w = comparable(g, e, a, last, &next)?.ok_or_else(|| {
            Error::Verification(format!("pair {} of the chain is not comparable with its successor", self.pairs.len()))
        })?;
        self.pairs.push(next);
        self.witnesses.push(w);
        Ok(())
    }

    pub fn extend_all(
        &mut self,
        g: &Grading,
        e: &Element,
        a: &Rational,
        next: impl IntoIterator<Item = AdmissiblePair>,
    ) -> Result<()> {
        for p in next {
            self.extend(g, e, a, p)?;
        }
        Ok(())
    }
}

/// Outcome of [`verify_chain`]: the first failing link, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub failure: Option<(usize, String)>,
}

impl ChainCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Re-certifies every witness and that it links the right consecutive pairs.
pub fn verify_chain(chain: &EquivalenceChain) -> ChainCheck {
    let fail = |i: usize, s: &str| ChainCheck { failure: Some((i, s.to_string())) };
    if chain.pairs.is_empty() {
        return fail(0, "empty chain");
    }
    if chain.witnesses.len() + 1 != chain.pairs.len() {
        return fail(0, "witness count does not match pair count");
    }
    for (i, w) in chain.witnesses.iter().enumerate() {
        if !w.links(&chain.pairs[i], &chain.pairs[i + 1]) {
            return fail(i, "witness does not link these pairs");
        }
        if !w.nesting_holds() {
            return fail(i, "pairs are not nested");
        }
        if !w.verify() {
            return fail(i, "a pair is not admissible for the witness grading");
        }
    }
    ChainCheck { failure: None }
}

fn require_certified(g: &Grading, e: &Element, a: &Rational, pair: &AdmissiblePair) -> Result<()> {
    if !check_pair(g, e, a, &pair.m, &pair.n).overall() {
        return Err(Error::Precondition("pair is not admissible for the grading".into()));
    }
    Ok(())
}

fn plus(x: &Subspace, y: &Subspace) -> Subspace {
    sum_all(x.ambient_dim(), [x, y])
}

fn meet(x: &Subspace, y: &Subspace) -> Subspace {
    subspace_intersect(x, y).expect("same ambient")
}

/// Whether `s ⊆ piece` is a complement of `fixed` in `piece`.
fn is_complement(s: &Subspace, fixed: &Subspace, piece: &Subspace) -> bool {
    s.is_subspace_of(piece) && meet(s, fixed).is_zero() && s.dim() + fixed.dim() == piece.dim()
}

/// Coefficients `c = 1, -1, 2, -2, …` tried for the shared vector
/// `u_i + c v_j` of an interpolation step.
fn coefficients() -> impl Iterator<Item = Rational> {
    (1..=8i64).flat_map(|k| [q(k), q(-k)])
}

/// Pairs from `P_U` to `P_V` where `U`, `V` are complements of `fixed` in
/// `piece`. `step` yields the intermediate pairs for codimension one, `p`
/// builds `P_W`.
fn interpolate(
    u: &Subspace,
    v: &Subspace,
    fixed: &Subspace,
    piece: &Subspace,
    step: &dyn Fn(&Subspace, &Subspace) -> Result<Vec<AdmissiblePair>>,
    p: &dyn Fn(&Subspace) -> AdmissiblePair,
) -> Result<Vec<AdmissiblePair>> {
    if u == v {
        return Ok(vec![p(u)]);
    }
    let w = meet(u, v);
    let codim = u.dim() - w.dim();
    if codim == 1 {
        let mut out = vec![p(u)];
        out.extend(step(u, v)?);
        out.push(p(v));
        return Ok(out);
    }
    let us = complement_within(&w, u)?.basis().to_vec();
    let vs = complement_within(&w, v)?.basis().to_vec();
    let amb = u.ambient_dim();
    for c in coefficients() {
        for i in (0..us.len()).rev() {
            for j in (0..vs.len()).rev() {
                let x: Vec<Rational> = us[i].iter().zip(&vs[j]).map(|(s, t)| s + &c * t).collect();
                let mut ub: Vec<Vec<Rational>> = w.basis().to_vec();
                let mut vb = ub.clone();
                ub.extend(us.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, b)| b.clone()));
                vb.extend(vs.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, b)| b.clone()));
                ub.push(x.clone());
                vb.push(x);
                let u2 = Subspace::span(amb, ub);
                let v2 = Subspace::span(amb, vb);
                if !is_complement(&u2, fixed, piece) || !is_complement(&v2, fixed, piece) {
                    continue;
                }
                if u2.dim() - meet(&u2, &v2).dim() >= codim {
                    continue;
                }
                let mut out = interpolate(u, &u2, fixed, piece, step, p)?;
                out.extend(interpolate(&u2, &v2, fixed, piece, step, p)?.into_iter().skip(1));
                out.extend(interpolate(&v2, v, fixed, piece, step, p)?.into_iter().skip(1));
                return Ok(out);
            }
        }
    }
    Err(Error::Verification(format!("no interpolating complement found at codimension {codim}")))
}

/// The echelon complement `U₀` of `g^e_j` in `g_j` and the complement
/// `span(u_k + f_{k mod r})`, `k < shift`, obtained by tilting the first
/// `shift` basis vectors of `U₀` into `g^e_j = span(f_0, …)`.
pub fn graph_complement(g: &Grading, e: &Element, j: &Rational, shift: usize) -> (Subspace, Subspace) {
    let slot = g.piece(j);
    let fixed = g.centralizer_piece(e, j);
    let u0 = complement_within(&fixed, &slot).expect("centraliser piece lies in the piece");
    let f = fixed.basis();
    if f.is_empty() {
        return (u0.clone(), u0);
    }
    let vecs = u0
        .basis()
        .iter()
        .enumerate()
        .map(|(k, u)| if k < shift { u.iter().zip(&f[k % f.len()]).map(|(x, y)| x + y).collect() } else { u.clone() })
        .collect();
    (Subspace::span(g.dim(), vecs), u0)
}

/// Chain from an admissible pair of a `b`-optimal grading to
/// `P_{U₀} = (g_{<-a/2}, g_{<-a/2} ⊕ U₀)`, `U₀` the echelon complement of
/// `g^e_{-a/2}` in `g_{-a/2}`.
pub fn b_optimal_chain(
    g: &Grading,
    e: &Element,
    a: &Rational,
    b: &Rational,
    pair: &AdmissiblePair,
) -> Result<EquivalenceChain> {
    if *b <= Rational::zero() || *a < q(2) || *a < b * q(2) || !is_b_optimal(g, e, b)? {
        return Err(Error::Precondition(format!("grading is not {}-optimal", fmt_rational(b))));
    }
    require_certified(g, e, a, pair)?;
    let alg = g.algebra();
    let half = a / q(2);
    let low = g.piece_range(RangeOp::Lt, &-half.clone());
    let slot = g.piece(&-half.clone());
    let fixed = g.centralizer_piece(e, &-half.clone());
    let upper = meet(&g.piece_range(RangeOp::Gt, &-half.clone()), &g.piece_range(RangeOp::Lt, &Rational::zero()));

    let n_slot = g.slice(&pair.n, &-half.clone());
    let u = plus(&n_slot, &complement_within(&plus(&n_slot, &fixed), &slot)?);
    let m1 = meet(&pair.m, &low);
    let n1 = sum_all(g.dim(), [&low, &meet(&pair.n, &upper), &u]);
    let u0 = complement_within(&fixed, &slot)?;

    let mut chain = EquivalenceChain::start(pair.clone());
    chain.extend(g, e, a, AdmissiblePair::new(m1, n1))?;

    let p = |w: &Subspace| AdmissiblePair::new(low.clone(), plus(&low, w));
    let step = |x: &Subspace, y: &Subspace| -> Result<Vec<AdmissiblePair>> {
        let w = meet(x, y);
        let rows: Vec<Vec<Rational>> = w
            .basis()
            .iter()
            .map(|s| w.basis().iter().map(|t| alg.invariant_form_vec(&e.coords, &alg.bracket_vec(s, t))).collect())
            .collect();
        let gram = QMatrix::from_rows(w.dim(), rows)?;
        let ker = kernel(&gram);
        let coeffs = ker
            .basis()
            .first()
            .ok_or_else(|| Error::Verification("pairing is non-degenerate on U ∩ V".into()))?;
        let d = Subspace::span(w.ambient_dim(), vec![w.combine(coeffs)]);
        Ok(vec![AdmissiblePair::new(plus(&low, &d), plus(&low, &w))])
    };
    chain.extend_all(g, e, a, interpolate(&u, &u0, &fixed, &slot, &step, &p)?)?;
    Ok(chain)
}

/// The subspace `g_{<0}` splits as `g_{≤-a} ⊕ (g_{b-a} + g_{-b})`.
pub fn is_two_level(g: &Grading, a: &Rational, b: &Rational) -> bool {
    let half = a / q(2);
    *b > Rational::zero()
        && *b <= half
        && g.degrees().all(|j| *j >= Rational::zero() || *j <= -a.clone() || *j == b - a || *j == -b.clone())
}

/// Chain from an admissible pair of a two-level grading to
/// `(g_{≤-a} ⊕ U₀, g_{≤-a} ⊕ U₀)`, `U₀` the echelon complement of
/// `g^e_{b-a}` in `g_{b-a}`.
pub fn two_level_chain(
    g: &Grading,
    e: &Element,
    a: &Rational,
    b: &Rational,
    pair: &AdmissiblePair,
) -> Result<EquivalenceChain> {
    if !is_two_level(g, a, b) {
        return Err(Error::Precondition(format!(
            "negative degrees are not confined to ≤ -a, {} and {}",
            fmt_rational(&(b - a)),
            fmt_rational(&-b.clone())
        )));
    }
    require_certified(g, e, a, pair)?;
    let alg = g.algebra();
    let neg = g.piece_range(RangeOp::Lt, &Rational::zero());
    let low = g.piece_range(RangeOp::Le, &-a.clone());
    if g.centralizer_range(e, RangeOp::Lt, &Rational::zero()).is_zero() {
        let mut chain = EquivalenceChain::start(pair.clone());
        chain.extend(g, e, a, AdmissiblePair::new(low, neg))?;
        return Ok(chain);
    }
    let lo_deg = b - a;
    let hi_deg = -b.clone();
    let fixed = g.centralizer_piece(e, &lo_deg);
    if *b == a / q(2) || fixed.is_zero() {
        return b_optimal_chain(g, e, a, b, pair);
    }
    let slot = g.piece(&lo_deg);
    let partner = g.piece(&hi_deg);
    let partner_fixed = g.centralizer_piece(e, &hi_deg);

    let u_inner = g.slice(&pair.m, &lo_deg);
    let u_outer = g.slice(&pair.n, &lo_deg);
    let v_outer = g.slice(&pair.n, &hi_deg);
    let u = plus(&u_outer, &complement_within(&plus(&u_outer, &fixed), &slot)?);
    let u0 = complement_within(&fixed, &slot)?;

    let mut chain = EquivalenceChain::start(pair.clone());
    chain.extend(g, e, a, AdmissiblePair::new(plus(&low, &u_inner), sum_all(g.dim(), [&low, &u, &v_outer])))?;

    let p = |w: &Subspace| AdmissiblePair::diagonal(plus(&low, w));
    let step = |x: &Subspace, y: &Subspace| -> Result<Vec<AdmissiblePair>> {
        let w = meet(x, y);
        let d = d_line(alg.form_gram(), &alg.ad_image(&e.coords, &w), &partner, &partner_fixed)?;
        let base = plus(&low, &w);
        Ok(vec![
            AdmissiblePair::new(base.clone(), sum_all(g.dim(), [&low, x, &d])),
            AdmissiblePair::diagonal(plus(&base, &d)),
            AdmissiblePair::new(base, sum_all(g.dim(), [&low, y, &d])),
        ])
    };
    chain.extend_all(g, e, a, interpolate(&u, &u0, &fixed, &slot, &step, &p)?)?;
    Ok(chain)
}

/// A line `D ⊆ partner ∩ image^⊥` meeting `partner_fixed` trivially.
pub fn d_line(gram: &QMatrix, image: &Subspace, partner: &Subspace, partner_fixed: &Subspace) -> Result<Subspace> {
    let room = orth_complement(image, gram, partner)?;
    let c = complement_within(&meet(partner_fixed, &room), &room)?;
    let first = c.basis().first().ok_or_else(|| Error::Verification("no room for the line D".into()))?;
    Ok(Subspace::span(room.ambient_dim(), vec![first.clone()]))
}

/// Isomorphism type of `g^s` when its rank is at most one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoClass {
    Zero,
    Sl2,
    Sp2,
    So3,
    AbelianLine,
    Higher,
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoClass::Zero => "rank-zero",
            IsoClass::Sl2 => "sl2",
            IsoClass::Sp2 => "sp2",
            IsoClass::So3 => "so3",
            IsoClass::AbelianLine => "abelian-line",
            IsoClass::Higher => "higher-rank",
        })
    }
}

/// The partition pattern forcing `rk g^s = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankClause {
    SlTwoRows,
    SoEvenPair,
    SoOddPair,
    SoOddTriple,
    SpOddPair,
    SpEvenPair,
    SpEvenTriple,
}

impl fmt::Display for RankClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankClause::SlTwoRows => "sl-two-rows",
            RankClause::SoEvenPair => "so-even-pair",
            RankClause::SoOddPair => "so-odd-pair",
            RankClause::SoOddTriple => "so-odd-triple",
            RankClause::SpOddPair => "sp-odd-pair",
            RankClause::SpEvenPair => "sp-even-pair",
            RankClause::SpEvenTriple => "sp-even-triple",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankClass {
    pub kind: AlgebraKind,
    pub partition: Partition,
    pub rank: usize,
    pub iso_class: IsoClass,
    pub clause: Option<RankClause>,
    /// The triple-run clause read with `m ≥ 3` and with `m ≥ 2` gives the
    /// same answer.
    pub readings_agree: bool,
}

/// A single run of `run` equal parts, all other parts distinct; returns the
/// repeated value and the 1-based index where the run starts.
fn single_run(parts: &[usize], run: usize) -> Option<(usize, usize)> {
    let mut found = None;
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j + 1 < parts.len() && parts[j + 1] == parts[i] {
            j += 1;
        }
        let len = j - i + 1;
        if len > 1 {
            if len != run || found.is_some() {
                return None;
            }
            found = Some((parts[i], i + 1));
        }
        i = j + 1;
    }
    found
}

fn pair_clause(parts: &[usize], even: bool) -> bool {
    parts.len() >= 2 && single_run(parts, 2).is_some_and(|(d, _)| (d % 2 == 0) == even)
}

/// The triple clause with minimum length `min_m` and middle index in
/// `2..=m-1`.
fn triple_clause(parts: &[usize], even: bool, min_m: usize) -> bool {
    let m = parts.len();
    m >= min_m
        && single_run(parts, 3).is_some_and(|(d, start)| {
            let mid = start + 1;
            (d % 2 == 0) == even && (2..m).contains(&mid)
        })
}

fn so_rank(r: usize) -> usize {
    r / 2
}

fn sp_rank(r: usize) -> usize {
    r / 2
}

/// `rk g^s` from the multiplicities of `p`, with the isomorphism type in
/// rank one and the matching partition clause.
pub fn rank_classifier(kind: AlgebraKind, p: &Partition) -> Result<RankClass> {
    p.check_for(kind)?;
    let parts = p.parts();
    let mult = p.multiplicities();
    let (rank, iso_class) = match kind {
        AlgebraKind::SL(_) => {
            let r = parts.len() - 1;
            let iso = match r {
                0 => IsoClass::Zero,
                1 if parts[0] == parts[1] => IsoClass::Sl2,
                1 => IsoClass::AbelianLine,
                _ => IsoClass::Higher,
            };
            (r, iso)
        }
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => {
            let so_on_odd = matches!(kind, AlgebraKind::SO(_));
            let mut total = 0;
            let mut iso = IsoClass::Zero;
            for (&s, &r) in &mult {
                let orthogonal = (s % 2 == 1) == so_on_odd;
                let rk = if orthogonal { so_rank(r) } else { sp_rank(r) };
                if rk == 1 {
                    iso = match (orthogonal, r) {
                        (true, 2) => IsoClass::AbelianLine,
                        (true, _) => IsoClass::So3,
                        (false, _) => IsoClass::Sp2,
                    };
                }
                total += rk;
            }
            (total, if total > 1 { IsoClass::Higher } else { iso })
        }
    };
    let (clause, readings_agree) = match kind {
        AlgebraKind::SL(_) => ((parts.len() == 2).then_some(RankClause::SlTwoRows), true),
        AlgebraKind::SO(_) => {
            let strict = triple_clause(parts, false, 3);
            let loose = triple_clause(parts, false, 2);
            let c = if pair_clause(parts, true) {
                Some(RankClause::SoEvenPair)
            } else if pair_clause(parts, false) {
                Some(RankClause::SoOddPair)
            } else if strict {
                Some(RankClause::SoOddTriple)
            } else {
                None
            };
            (c, strict == loose)
        }
        AlgebraKind::SP(_) => {
            let strict = triple_clause(parts, true, 3);
            let loose = triple_clause(parts, true, 2);
            let c = if pair_clause(parts, false) {
                Some(RankClause::SpOddPair)
            } else if pair_clause(parts, true) {
                Some(RankClause::SpEvenPair)
            } else if loose {
                Some(RankClause::SpEvenTriple)
            } else {
                None
            };
            (c, strict == loose)
        }
    };
    Ok(RankClass { kind, partition: p.clone(), rank, iso_class, clause, readings_agree })
}

/// `g^s = g^e ∩ g^h` for the standard triple through the partition
/// nilpotent, built inside the matrix algebra.
pub fn triple_centralizer(kind: AlgebraKind, p: &Partition) -> Result<(crate::liealg::MatrixLieAlgebra, Subspace)> {
    let alg = build_algebra(kind)?;
    let jd = jordan_data(&alg, p)?;
    let h = alg.diagonal_element(&jd.h_diag)?;
    let gs = subspace_intersect(&alg.centralizer(&jd.e), &alg.centralizer(&h))?;
    Ok((alg, gs))
}

/// `rk g^s` as the smallest centraliser dimension of sampled elements of
/// `g^s` (a reductive algebra, so generic elements are regular semisimple).
pub fn brute_force_rank(kind: AlgebraKind, p: &Partition, samples: usize, seed: u64) -> Result<usize> {
    let (alg, gs) = triple_centralizer(kind, p)?;
    if gs.is_zero() {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = gs.dim();
    for _ in 0..samples.max(1) {
        let coeffs: Vec<Rational> = (0..gs.dim()).map(|_| q(rng.gen_range(-9..=9))).collect();
        let x = gs.combine(&coeffs);
        let cols: Vec<Vec<Rational>> = gs
            .basis()
            .iter()
            .map(|y| gs.coordinates(&alg.bracket_vec(&x, y)).expect("g^s is a subalgebra"))
            .collect();
        let m = QMatrix::from_columns(gs.dim(), &cols)?;
        best = best.min(gs.dim() - rank(&m));
    }
    Ok(best)
}

/// A nilpotent orbit of an exceptional algebra with `rk g^s = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExceptionalOrbit {
    pub algebra: &'static str,
    pub label: &'static str,
    pub weighted_diagram: &'static str,
    pub orbit_dim: u32,
}

const EXCEPTIONAL_RANK_ONE: &[ExceptionalOrbit] = &[
    ExceptionalOrbit { algebra: "G2", label: "A_1", weighted_diagram: "1 0", orbit_dim: 6 },
    ExceptionalOrbit { algebra: "G2", label: "Ã_1", weighted_diagram: "0 1", orbit_dim: 8 },
    ExceptionalOrbit { algebra: "F4", label: "A_2+Ã_1", weighted_diagram: "0 0 1 0", orbit_dim: 34 },
    ExceptionalOrbit { algebra: "F4", label: "Ã_2+A_1", weighted_diagram: "0 1 0 1", orbit_dim: 36 },
    ExceptionalOrbit { algebra: "F4", label: "C_3(a_1)", weighted_diagram: "1 0 1 0", orbit_dim: 38 },
    ExceptionalOrbit { algebra: "F4", label: "B_3", weighted_diagram: "2 2 0 0", orbit_dim: 42 },
    ExceptionalOrbit { algebra: "F4", label: "C_3", weighted_diagram: "1 0 1 2", orbit_dim: 36 },
    ExceptionalOrbit { algebra: "E6", label: "2A_2+A_1", weighted_diagram: "1 0 1 0 1 0", orbit_dim: 54 },
    ExceptionalOrbit { algebra: "E6", label: "A_4+A_1", weighted_diagram: "1 1 0 1 1 1", orbit_dim: 62 },
    ExceptionalOrbit { algebra: "E6", label: "A_5", weighted_diagram: "2 1 0 1 2 1", orbit_dim: 64 },
    ExceptionalOrbit { algebra: "E6", label: "D_5(a_1)", weighted_diagram: "1 1 0 1 1 2", orbit_dim: 64 },
    ExceptionalOrbit { algebra: "E6", label: "D_5", weighted_diagram: "2 0 2 0 2 2", orbit_dim: 68 },
];

/// Rank-one orbits of `G_2`, `F_4`, `E_6` as reference data.
pub fn exceptional_rank1_table() -> &'static [ExceptionalOrbit] {
    EXCEPTIONAL_RANK_ONE
}

/// Rows of [`exceptional_rank1_table`] grouped by algebra.
pub fn exceptional_by_algebra() -> BTreeMap<&'static str, Vec<(&'static str, u32)>> {
    let mut out: BTreeMap<&str, Vec<(&str, u32)>> = BTreeMap::new();
    for o in EXCEPTIONAL_RANK_ONE {
        out.entry(o.algebra).or_default().push((o.label, o.orbit_dim));
    }
    out
}

/// `(m, n)` of a grading is an optimal pair and no admissible pair strictly
/// dominates it.
pub fn dominated_by_none(optimal: &AdmissiblePair, other: &AdmissiblePair) -> bool {
    !(nested(optimal, other) && optimal != other)
}
