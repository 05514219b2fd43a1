//! Admissible pairs `(m, n)`: the six conditions, the blockwise construction
//! from an isotypic decomposition, optimal pairs and transversal slices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{
    complement_within, fmt_rational, orth_complement, q, rank, subspace_intersect, subspace_sum, sum_all, QMatrix,
    Rational, Subspace,
};
use crate::grading::{ad_steps, Grading, RangeOp};
use crate::liealg::Element;
use crate::sl2::{IsotypicBlock, IsotypicDecomposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePair {
    pub m: Subspace,
    pub n: Subspace,
}

impl AdmissiblePair {
    pub fn new(m: Subspace, n: Subspace) -> Self {
        AdmissiblePair { m, n }
    }

    /// The pair `(m, m)`.
    pub fn diagonal(m: Subspace) -> Self {
        AdmissiblePair { n: m.clone(), m }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    Subalgebra,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::A1 => "A1",
            Condition::A2 => "A2",
            Condition::A3 => "A3",
            Condition::A4 => "A4",
            Condition::A5 => "A5",
            Condition::A6 => "A6",
            Condition::Subalgebra => "subalgebra",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub condition: Condition,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdicts: Vec<Verdict>,
    pub dim_m: usize,
    pub dim_n: usize,
    pub dim_g: usize,
    pub dim_ge: usize,
    /// `m^⊥ ⊆ g_{≤a-1}`.
    pub perp_bounded: bool,
    /// `dim m ± dim n` even.
    pub parity: bool,
}

impl CheckReport {
    pub fn overall(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn passes(&self, c: Condition) -> bool {
        self.verdicts.iter().any(|v| v.condition == c && v.pass)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| !v.pass).collect()
    }
}

fn degrees_of(g: &Grading, u: &Subspace) -> String {
    let mut ds: Vec<Rational> = u.basis().iter().flat_map(|b| g.components(b).into_keys()).collect();
    ds.sort();
    ds.dedup();
    ds.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
}

/// Checks (A1)-(A6) and that `m`, `n` are subalgebras.
pub fn check_pair(g: &Grading, e: &Element, a: &Rational, m: &Subspace, n: &Subspace) -> CheckReport {
    let alg = g.algebra();
    let dim = g.dim();
    let mut verdicts = Vec::new();
    let mut push = |condition, pass, detail: String| verdicts.push(Verdict { condition, pass, detail });

    let a1 = *a > Rational::one() && g.degree_of(&e.coords).as_ref() == Some(a);
    push(
        Condition::A1,
        a1,
        match g.degree_of(&e.coords) {
            Some(d) => format!("e has degree {}, a = {}", fmt_rational(&d), fmt_rational(a)),
            None => "e is zero or not homogeneous".into(),
        },
    );

    let mut a2 = Vec::new();
    if !g.is_graded(m) {
        a2.push("m is not graded".to_string());
    }
    if !g.is_graded(n) {
        a2.push("n is not graded".to_string());
    }
    let low = g.piece_range(RangeOp::Le, &-a);
    if !low.is_subspace_of(m) {
        a2.push(format!("g_<=-a not in m (missing degrees {})", degrees_of(g, &low)));
    }
    if !m.is_subspace_of(n) {
        a2.push("m not in n".into());
    }
    let neg = g.piece_range(RangeOp::Lt, &Rational::zero());
    if !n.is_subspace_of(&neg) {
        a2.push(format!("n not in g_<0 (n meets degrees {})", degrees_of(g, n)));
    }
    let a2_detail = if a2.is_empty() { "graded, g_<=-a in m in n in g_<0".to_string() } else { a2.join("; ") };
    push(Condition::A2, a2.is_empty(), a2_detail);

    let gram = alg.form_gram();
    let full = Subspace::full(dim);
    let m_perp = orth_complement(m, gram, &full).expect("same ambient");
    let image = alg.ad_image(&e.coords, &full);
    let lhs = subspace_intersect(&m_perp, &image).expect("same ambient");
    let rhs = alg.ad_image(&e.coords, n);
    push(
        Condition::A3,
        lhs == rhs,
        format!("dim(m^perp ∩ [g,e]) = {}, dim [n,e] = {}", lhs.dim(), rhs.dim()),
    );

    let ne = alg.ad_kernel(&e.coords, n);
    push(
        Condition::A4,
        ne.is_zero(),
        if ne.is_zero() { "n ∩ g^e = 0".into() } else { format!("n ∩ g^e has dim {} at degrees {}", ne.dim(), degrees_of(g, &ne)) },
    );

    let nm = alg.bracket_space(n, m);
    let a5 = nm.is_subspace_of(m);
    push(Condition::A5, a5, if a5 { "[n,m] in m".into() } else { "[n,m] not in m".into() });

    let dim_ge = alg.centralizer(e).dim();
    let a6 = m.dim() + n.dim() + dim_ge == dim;
    push(Condition::A6, a6, format!("{} + {} vs {} - {}", m.dim(), n.dim(), dim, dim_ge));

    let closed_m = alg.is_subalgebra(m);
    let closed_n = alg.is_subalgebra(n);
    push(
        Condition::Subalgebra,
        closed_m && closed_n,
        match (closed_m, closed_n) {
            (true, true) => "m and n closed".into(),
            (false, _) => "m not closed under bracket".into(),
            (true, false) => "n not closed under bracket".into(),
        },
    );

    let perp_bounded = m_perp.is_subspace_of(&g.piece_range(RangeOp::Le, &(a - Rational::one())));
    let parity = (m.dim() + n.dim()) % 2 == 0;
    CheckReport { verdicts, dim_m: m.dim(), dim_n: n.dim(), dim_g: dim, dim_ge, perp_bounded, parity }
}

/// The lowest index `k` with `ρ + ka = 0`, if any.
fn zero_layer(rho: &Rational, a: &Rational, d: usize) -> Option<usize> {
    (0..d).find(|&k| (rho + a * q(k as i64)).is_zero())
}

/// `k ∈ {-1, …, d-1}` with `ρ + ka < 0 < ρ + (k+1)a`.
fn sign_change(rho: &Rational, a: &Rational, d: usize) -> Option<isize> {
    (-1..d as isize).find(|&k| rho + a * q(k as i64) < Rational::zero() && rho + a * q(k as i64 + 1) > Rational::zero())
}

/// Which row of the construction a block falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockCase {
    ZeroWeight(usize),
    AllPositive,
    AllNegative,
    Neutral(usize),
    LowerHeavy(usize),
    UpperHeavy(usize),
}

fn classify_block(pos: &IsotypicBlock, a: &Rational) -> Result<BlockCase> {
    let d = pos.d;
    let rho = &pos.rho;
    if let Some(k) = zero_layer(rho, a, d) {
        return Ok(BlockCase::ZeroWeight(k));
    }
    let k = sign_change(rho, a, d).ok_or_else(|| {
        Error::Precondition(format!("block ({d}, {}) violates the weight bound", fmt_rational(&pos.lambda)))
    })?;
    if k == -1 {
        return Ok(BlockCase::AllPositive);
    }
    let k = k as usize;
    if k == d - 1 {
        return Ok(BlockCase::AllNegative);
    }
    if pos.lambda.is_zero() {
        return Ok(BlockCase::Neutral(k));
    }
    let left = rho + a * q(k as i64);
    let right = -rho - a * q(k as i64 + 1);
    Ok(if left <= right { BlockCase::LowerHeavy(k) } else { BlockCase::UpperHeavy(k) })
}

fn span2(pos: &IsotypicBlock, plo: isize, neg: &IsotypicBlock, nlo: isize) -> Subspace {
    let a = pos.layer_span(0, plo);
    if std::ptr::eq(pos, neg) {
        return a;
    }
    subspace_sum(&a, &neg.layer_span(0, nlo)).expect("same ambient")
}

/// `(m_{d,λ}, n_{d,λ})` for the block pair `V_{d,λ} = E_{d,λ} + E_{d,-λ}`, `λ ≥ 0`.
pub fn block_pair(pos: &IsotypicBlock, neg: &IsotypicBlock, a: &Rational) -> Result<(Subspace, Subspace, BlockCase)> {
    let d = pos.d as isize;
    let case = classify_block(pos, a)?;
    let (m, n) = match case {
        BlockCase::ZeroWeight(k) => {
            let k = k as isize;
            let m = span2(pos, k - 1, neg, d - 2 - k);
            (m.clone(), m)
        }
        BlockCase::AllPositive => {
            let m = neg.layer_span(0, d - 2);
            (m.clone(), m)
        }
        BlockCase::AllNegative => {
            let m = pos.layer_span(0, d - 2);
            (m.clone(), m)
        }
        BlockCase::Neutral(k) => (pos.layer_span(0, k as isize - 1), pos.layer_span(0, k as isize)),
        BlockCase::LowerHeavy(k) => {
            let k = k as isize;
            let m = span2(pos, k, neg, d - 3 - k);
            (m.clone(), m)
        }
        BlockCase::UpperHeavy(k) => {
            let k = k as isize;
            let m = span2(pos, k - 1, neg, d - 2 - k);
            (m.clone(), m)
        }
    };
    Ok((m, n, case))
}

/// Pairs each block of weight `λ ≥ 0` with its partner of weight `-λ`.
pub fn block_partners(dec: &IsotypicDecomposition) -> Result<Vec<(&IsotypicBlock, &IsotypicBlock)>> {
    dec.blocks
        .iter()
        .filter(|b| b.lambda >= Rational::zero())
        .map(|b| {
            let partner = dec.block(b.d, &-b.lambda.clone()).ok_or_else(|| {
                Error::Verification(format!("block ({}, {}) has no partner", b.d, fmt_rational(&b.lambda)))
            })?;
            Ok((b, partner))
        })
        .collect()
}

/// Builds an admissible pair block by block and certifies it.
pub fn construct_pair(dec: &IsotypicDecomposition, g: &Grading) -> Result<AdmissiblePair> {
    if !dec.weights_admissible() {
        return Err(Error::Precondition("g_<=-a meets the centraliser of e".into()));
    }
    let dim = g.dim();
    let mut ms = Vec::new();
    let mut ns = Vec::new();
    for (pos, neg) in block_partners(dec)? {
        let (m, n, _) = block_pair(pos, neg, &dec.a)?;
        ms.push(m);
        ns.push(n);
    }
    let pair = AdmissiblePair::new(sum_all(dim, ms.iter()), sum_all(dim, ns.iter()));
    let report = check_pair(g, &dec.triple.e, &dec.a, &pair.m, &pair.n);
    if !report.overall() {
        let why: Vec<String> = report.failures().iter().map(|v| format!("{}: {}", v.condition, v.detail)).collect();
        return Err(Error::Verification(format!("constructed pair fails {}", why.join("; "))));
    }
    let half = g.piece_range(RangeOp::Le, &(-&dec.a / q(2)));
    if !pair.n.is_subspace_of(&half) {
        return Err(Error::Verification("constructed n leaves g_<=-a/2".into()));
    }
    Ok(pair)
}

/// Degrees `(j, j')` with `n_j = g_j`, `n_{j'} = g_{j'}` forced while
/// `[g_j, g_{j'}]` meets `g^e` in degree `j + j'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub sources: (Rational, Rational),
    pub target: Rational,
    pub witness: Subspace,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n must contain g_{} and g_{}, but [g_{}, g_{}] meets g^e in degree {} (dim {})",
            fmt_rational(&self.sources.0),
            fmt_rational(&self.sources.1),
            fmt_rational(&self.sources.0),
            fmt_rational(&self.sources.1),
            fmt_rational(&self.target),
            self.witness.dim()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OptimalOutcome {
    Yes(AdmissiblePair),
    No(Obstruction),
    Unknown,
}

const COORDINATE_BUDGET: usize = 4096;
const RANDOM_TRIES: usize = 64;

fn coordinate_complements(g: &Grading, piece: &[usize], ge: &Subspace, cap: usize) -> Vec<Subspace> {
    let dim = g.dim();
    let need = piece.len() - ge.dim();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..need).collect();
    loop {
        let c = Subspace::coordinate(dim, pick.iter().map(|&i| piece[i]));
        if subspace_intersect(&c, ge).expect("same ambient").is_zero() {
            out.push(c);
            if out.len() >= cap {
                break;
            }
        }
        let mut i = need;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] < piece.len() - need + i {
                pick[i] += 1;
                for j in i + 1..need {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}

fn random_complement(g: &Grading, piece: &[usize], ge: &Subspace, rng: &mut ChaCha8Rng) -> Option<Subspace> {
    let dim = g.dim();
    let need = piece.len() - ge.dim();
    for _ in 0..8 {
        let vecs: Vec<Vec<Rational>> = (0..need)
            .map(|_| {
                let mut v = vec![Rational::zero(); dim];
                for &k in piece {
                    v[k] = q(rng.gen_range(-3..=3));
                }
                v
            })
            .collect();
        let c = Subspace::span(dim, vecs);
        if c.dim() == need && subspace_intersect(&c, ge).expect("same ambient").is_zero() {
            return Some(c);
        }
    }
    None
}

/// Looks for an optimal pair `(g_{≤-a}, n)`.
pub fn optimal_pair(g: &Grading, e: &Element, a: &Rational) -> Result<OptimalOutcome> {
    let alg = g.algebra();
    let dim = g.dim();
    let low = g.piece_range(RangeOp::Le, &-a);
    let neg = g.piece_range(RangeOp::Lt, &Rational::zero());
    if g.centralizer_range(e, RangeOp::Lt, &Rational::zero()).is_zero() {
        return Ok(OptimalOutcome::Yes(AdmissiblePair::new(low, neg)));
    }
    let mid: Vec<Rational> = g.degrees().filter(|j| **j > -a.clone() && **j < Rational::zero()).cloned().collect();
    let ge: BTreeMap<Rational, Subspace> = mid.iter().map(|j| (j.clone(), g.centralizer_piece(e, j))).collect();
    let forced: Vec<&Rational> = mid.iter().filter(|j| ge[*j].is_zero()).collect();
    for (x, j) in forced.iter().enumerate() {
        for jp in &forced[x..] {
            let target = *j + *jp;
            if target <= -a.clone() {
                continue;
            }
            let br = alg.bracket_space(&g.piece(j), &g.piece(jp));
            let hit = alg.ad_kernel(&e.coords, &br);
            if !hit.is_zero() {
                return Ok(OptimalOutcome::No(Obstruction {
                    sources: ((*j).clone(), (*jp).clone()),
                    target,
                    witness: hit,
                }));
            }
        }
    }
    let try_pair = |parts: &[&Subspace]| -> Option<AdmissiblePair> {
        let n = subspace_sum(&low, &sum_all(dim, parts.iter().copied())).expect("same ambient");
        if !alg.is_subalgebra(&n) {
            return None;
        }
        let pair = AdmissiblePair::new(low.clone(), n);
        check_pair(g, e, a, &pair.m, &pair.n).overall().then_some(pair)
    };
    let options: Vec<Vec<Subspace>> = mid
        .iter()
        .map(|j| coordinate_complements(g, g.piece_indices(j), &ge[j], COORDINATE_BUDGET))
        .collect();
    if options.iter().all(|o| !o.is_empty()) {
        let mut idx = vec![0usize; options.len()];
        for _ in 0..COORDINATE_BUDGET {
            let parts: Vec<&Subspace> = idx.iter().zip(&options).map(|(&i, o)| &o[i]).collect();
            if let Some(p) = try_pair(&parts) {
                return Ok(OptimalOutcome::Yes(p));
            }
            let mut c = 0;
            while c < idx.len() {
                idx[c] += 1;
                if idx[c] < options[c].len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
            if c == idx.len() {
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_TRIES {
        let parts: Option<Vec<Subspace>> =
            mid.iter().map(|j| random_complement(g, g.piece_indices(j), &ge[j], &mut rng)).collect();
        if let Some(parts) = parts {
            if let Some(p) = try_pair(&parts.iter().collect::<Vec<_>>()) {
                return Ok(OptimalOutcome::Yes(p));
            }
        }
    }
    Ok(OptimalOutcome::Unknown)
}

/// A graded complement `s` of `[n, e]` in `m^⊥` with `g = [g, e] ⊕ s`.
pub fn slice_complement(g: &Grading, e: &Element, pair: &AdmissiblePair) -> Result<Subspace> {
    let alg = g.algebra();
    let dim = g.dim();
    let m_perp = orth_complement(&pair.m, alg.form_gram(), &Subspace::full(dim))?;
    let ne = alg.ad_image(&e.coords, &pair.n);
    let mut parts = Vec::new();
    for j in g.degrees() {
        let big = g.slice(&m_perp, j);
        let small = g.slice(&ne, j);
        parts.push(complement_within(&small, &big)?);
    }
    let s = sum_all(dim, parts.iter());
    let image = alg.ad_image(&e.coords, &Subspace::full(dim));
    let ge = alg.centralizer(e).dim();
    if s.dim() != ge
        || !subspace_intersect(&s, &image)?.is_zero()
        || subspace_sum(&s, &image)?.dim() != dim
    {
        return Err(Error::Verification(format!("slice of dim {} is not transversal to [g, e]", s.dim())));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub degree: Rational,
    pub dim: usize,
    pub dim_centralizer: usize,
    pub injective: bool,
    pub surjective: bool,
}

/// Per degree `j`: whether `ad e : g_j → g_{j+a}` is injective or surjective,
/// with `dim g_j` and `dim g^e_j`.
pub fn ad_e_degree_profile(g: &Grading, e: &Element, a: &Rational) -> Vec<ProfileRow> {
    ad_steps(g, e, a)
        .into_iter()
        .filter(|s| s.source_dim > 0)
        .map(|s| ProfileRow {
            dim_centralizer: g.centralizer_piece(e, &s.degree).dim(),
            dim: s.source_dim,
            injective: s.injective(),
            surjective: s.surjective(),
            degree: s.degree,
        })
        .collect()
}

/// Gram matrix of `Φ_e(x, y) = ⟨e, [x, y]⟩` on complements of `g^e_{-b}` in
/// `g_{-b}` and of `g^e_{b-a}` in `g_{b-a}`, with its rank.
pub fn phi_e_pairing(g: &Grading, e: &Element, a: &Rational, b: &Rational) -> Result<(QMatrix, usize)> {
    let left = g.piece(&-b);
    let right_deg = b - a;
    let right = g.piece(&right_deg);
    let v = complement_within(&g.centralizer_piece(e, &-b), &left)?;
    let w = complement_within(&g.centralizer_piece(e, &right_deg), &right)?;
    if v.dim() != w.dim() {
        return Err(Error::Verification(format!("complements have dims {} and {}", v.dim(), w.dim())));
    }
    let alg = g.algebra();
    let rows: Vec<Vec<Rational>> = v
        .basis()
        .iter()
        .map(|x| w.basis().iter().map(|y| alg.invariant_form_vec(&e.coords, &alg.bracket_vec(x, y))).collect())
        .collect();
    let m = QMatrix::from_rows(w.dim(), rows)?;
    let r = rank(&m);
    if r != v.dim() {
        return Err(Error::Verification(format!("pairing has rank {r} on a {}-dimensional space", v.dim())));
    }
    Ok((m, r))
}

/// `dim(n ∩ g_{b-a}) + dim(m ∩ g_{-b}) = dim g_{-b} - dim g^e_{-b}
/// = dim(m ∩ g_{b-a}) + dim(n ∩ g_{-b})`.
pub fn slot_dimension_identity(g: &Grading, e: &Element, a: &Rational, pair: &AdmissiblePair, b: &Rational) -> bool {
    let target = g.piece_dim(&-b) - g.centralizer_piece(e, &-b).dim();
    let first = g.slice(&pair.n, &(b - a)).dim() + g.slice(&pair.m, &-b).dim();
    let second = g.slice(&pair.m, &(b - a)).dim() + g.slice(&pair.n, &-b).dim();
    first == target && second == target
}

/// Degrees `b ∈ (0, a/2]` with `g_{-b} ≠ 0`.
pub fn occupied_slots(g: &Grading, a: &Rational) -> Vec<Rational> {
    let half = a / q(2);
    let mut v: Vec<Rational> = g.degrees().filter(|j| **j < Rational::zero() && -(*j).clone() <= half).map(|j| -j.clone()).collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qf;
    use crate::grading::{grading_from_diagonal, is_admissible_grading};
    use crate::liealg::{build_algebra, AlgebraKind, MatrixLieAlgebra};
    use crate::sl2::{adapted_triple, isotypic_decompose, t_element};
    use std::sync::Arc;

    fn sl4_staircase() -> (Grading, Element) {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(4)).unwrap());
        let e = alg.from_triples(&[(0, 2, q(1)), (1, 3, q(1))]).unwrap();
        (grading_from_diagonal(alg, vec![qf(3, 2), qf(1, 2), qf(-1, 2), qf(-3, 2)]).unwrap(), e)
    }

    fn roots(alg: &MatrixLieAlgebra, pos: &[(usize, usize)]) -> Vec<Vec<Rational>> {
        pos.iter().map(|&(i, j)| alg.root_vector(i, j).unwrap().coords).collect()
    }

    fn decompose(g: &Grading, e: &Element, a: &Rational) -> IsotypicDecomposition {
        let tr = adapted_triple(g, e, a).unwrap();
        let t = t_element(g, &tr, a).unwrap();
        isotypic_decompose(g.algebra(), &tr, &t, a).unwrap()
    }

    #[test]
    fn sl2_regular_pair() {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(2)).unwrap());
        let g = grading_from_diagonal(alg.clone(), vec![q(1), q(-1)]).unwrap();
        let e = alg.root_vector(0, 1).unwrap();
        let m = Subspace::span(3, roots(&alg, &[(1, 0)]));
        let r = check_pair(&g, &e, &q(2), &m, &m);
        assert!(r.overall(), "{r:?}");
        assert_eq!((r.dim_m, r.dim_n, r.dim_g, r.dim_ge), (1, 1, 3, 1));
        let s = slice_complement(&g, &e, &AdmissiblePair::diagonal(m.clone())).unwrap();
        assert_eq!(s, m);
        let (gram, rk) = phi_e_pairing(&g, &e, &q(2), &q(1)).unwrap();
        assert_eq!((gram.rows(), rk), (0, 0));
    }

    #[test]
    fn staircase_pair_certifies() {
        let (g, e) = sl4_staircase();
        let alg = g.algebra().clone();
        let m = g.piece_range(RangeOp::Le, &q(-2));
        let mut nb = m.basis().to_vec();
        nb.extend(roots(&alg, &[(1, 0), (2, 1)]));
        let n = Subspace::span(15, nb);
        let r = check_pair(&g, &e, &q(2), &m, &n);
        assert!(r.overall(), "{r:?}");
        assert!(r.perp_bounded && r.parity);
        let bad = check_pair(&g, &e, &q(2), &m, &g.piece_range(RangeOp::Lt, &q(0)));
        assert!(!bad.passes(Condition::A4));
        assert!(bad.passes(Condition::A2));
        let s = slice_complement(&g, &e, &AdmissiblePair::new(m, n)).unwrap();
        assert_eq!(s.dim(), 7);
    }

    #[test]
    fn staircase_profile_and_pairing() {
        let (g, e) = sl4_staircase();
        let prof = ad_e_degree_profile(&g, &e, &q(2));
        let row = prof.iter().find(|r| r.degree == q(-1)).unwrap();
        assert!(!row.injective);
        assert_eq!((row.dim, row.dim_centralizer), (3, 1));
        let (_, rk) = phi_e_pairing(&g, &e, &q(2), &q(1)).unwrap();
        assert_eq!(rk, 2);
    }

    #[test]
    fn staircase_construct_and_optimal() {
        let (g, e) = sl4_staircase();
        let dec = decompose(&g, &e, &q(2));
        let pair = construct_pair(&dec, &g).unwrap();
        assert!(check_pair(&g, &e, &q(2), &pair.m, &pair.n).overall());
        match optimal_pair(&g, &e, &q(2)).unwrap() {
            OptimalOutcome::Yes(p) => {
                assert_eq!(p.m, g.piece_range(RangeOp::Le, &q(-2)));
                let mut nb = p.m.basis().to_vec();
                nb.extend(roots(g.algebra(), &[(1, 0), (2, 1)]));
                assert_eq!(p.n, Subspace::span(15, nb));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dynkin_construction_is_the_standard_pair() {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(4)).unwrap());
        let e = alg.from_triples(&[(0, 1, q(1)), (2, 3, q(1))]).unwrap();
        let g = grading_from_diagonal(alg, vec![q(1), q(-1), q(1), q(-1)]).unwrap();
        let dec = decompose(&g, &e, &q(2));
        let pair = construct_pair(&dec, &g).unwrap();
        let low = g.piece_range(RangeOp::Le, &q(-2));
        assert_eq!(pair, AdmissiblePair::new(low.clone(), g.piece_range(RangeOp::Lt, &q(0))));
        assert_eq!(optimal_pair(&g, &e, &q(2)).unwrap(), OptimalOutcome::Yes(pair));
    }

    #[test]
    fn sl11_has_no_optimal_pair() {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(11)).unwrap());
        let pos: Vec<(usize, usize, Rational)> =
            (0..10).filter(|i| *i != 5 && *i != 8).map(|i| (i, i + 1, q(1))).collect();
        let e = alg.from_triples(&pos).unwrap();
        let diag = [73, 40, 7, -26, -59, -92, 29, -4, -37, 51, 18].iter().map(|&x| qf(x, 11)).collect();
        let g = grading_from_diagonal(alg.clone(), diag).unwrap();
        assert!(is_admissible_grading(&g, &e, &q(3)).unwrap());
        let ge = g.centralizer_range(&e, RangeOp::Lt, &q(0));
        let want = alg.from_triples(&[(6, 9, q(1)), (7, 10, q(1))]).unwrap();
        assert_eq!(ge, Subspace::span(alg.dim(), vec![want.coords]));
        match optimal_pair(&g, &e, &q(3)).unwrap() {
            OptimalOutcome::No(ob) => {
                assert_eq!(ob.sources, (q(-1), q(-1)));
                assert_eq!(ob.target, q(-2));
            }
            other => panic!("{other:?}"),
        }
        let dec = decompose(&g, &e, &q(3));
        let pair = construct_pair(&dec, &g).unwrap();
        let report = check_pair(&g, &e, &q(3), &pair.m, &pair.n);
        assert!(report.overall());
        assert_eq!(report.dim_ge, 24);
        for b in occupied_slots(&g, &q(3)) {
            assert!(slot_dimension_identity(&g, &e, &q(3), &pair, &b));
        }
    }

    #[test]
    fn non_admissible_grading_refused() {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(3)).unwrap());
        let e = alg.from_triples(&[(0, 1, q(1))]).unwrap();
        let g = grading_from_diagonal(alg.clone(), vec![q(2), q(0), q(-2)]).unwrap();
        assert!(!is_admissible_grading(&g, &e, &q(2)).unwrap());
        let dec = decompose(&g, &e, &q(2));
        assert!(construct_pair(&dec, &g).is_err());
        let low = g.piece_range(RangeOp::Le, &q(-2));
        assert!(!check_pair(&g, &e, &q(2), &low, &low).passes(Condition::A4));
    }
}
