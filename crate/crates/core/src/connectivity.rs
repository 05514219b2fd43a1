//! The segment of gradings `h^(ε) = (a/2) h + ε t`, `ε ∈ [0, 1]`, joining
//! `(a/2)` times the Dynkin grading to `Γ`, and certificates that consecutive
//! gradings along it share an admissible pair.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::admissible::{block_partners, check_pair, AdmissiblePair, CheckReport};
use crate::error::{Error, Result};
use crate::exactlin::{fmt_rational, orth_complement, q, subspace_intersect, sum_all, Rational, Subspace};
use crate::grading::{grading_from_diagonal, is_admissible_grading, Grading};
use crate::liealg::{Element, MatrixLieAlgebra};
use crate::sl2::{adapted_triple, isotypic_decompose, t_element, IsotypicBlock, IsotypicDecomposition, Sl2Triple};

/// Diagonal of `h^(ε) = (a/2) h + ε t`.
pub fn deformed_diagonal(alg: &MatrixLieAlgebra, dec: &IsotypicDecomposition, eps: &Rational) -> Result<Vec<Rational>> {
    let not_diag = || Error::Precondition("h and t must be diagonal".into());
    let h = alg.as_diagonal(&dec.triple.h).ok_or_else(not_diag)?;
    let t = alg.as_diagonal(&dec.t).ok_or_else(not_diag)?;
    let half = &dec.a / q(2);
    Ok(h.iter().zip(&t).map(|(x, y)| &half * x + eps * y).collect())
}

fn check_eps(eps: &Rational) -> Result<()> {
    if *eps < Rational::zero() || *eps > Rational::one() {
        return Err(Error::Precondition(format!("ε = {} lies outside [0, 1]", fmt_rational(eps))));
    }
    Ok(())
}

/// `Γ^(ε)`, checked to be admissible for `e`.
pub fn deform(g: &Grading, triple: &Sl2Triple, a: &Rational, eps: &Rational) -> Result<Grading> {
    check_eps(eps)?;
    let alg = g.algebra();
    let t = t_element(g, triple, a)?;
    let dec_like = IsotypicDecomposition { triple: triple.clone(), t, a: a.clone(), blocks: Vec::new() };
    let out = grading_from_diagonal(alg.clone(), deformed_diagonal(alg, &dec_like, eps)?)?;
    if !is_admissible_grading(&out, &triple.e, a)? {
        return Err(Error::Verification(format!("Γ^({}) is not admissible", fmt_rational(eps))));
    }
    Ok(out)
}

/// `Γ^(ε)` built straight from a decomposition.
pub fn deform_decomposition(alg: &Arc<MatrixLieAlgebra>, dec: &IsotypicDecomposition, eps: &Rational) -> Result<Grading> {
    check_eps(eps)?;
    grading_from_diagonal(alg.clone(), deformed_diagonal(alg, dec, eps)?)
}

/// Position of zero in the weight ladder `ρ^(ε) + la`, `l = 0, …, d-1`.
pub fn p_index(block: &IsotypicBlock, eps: &Rational, a: &Rational) -> usize {
    let rho = block.rho_at(a, eps);
    let d = block.d;
    let w = |s: usize| &rho + a * q(s as i64);
    if rho > Rational::zero() {
        return 1;
    }
    for s in 0..d {
        if w(s).is_zero() {
            return 2 * (s + 1);
        }
        if s + 1 < d && w(s) < Rational::zero() && w(s + 1) > Rational::zero() {
            return 2 * (s + 1) + 1;
        }
    }
    2 * d + 1
}

/// `(d, λ, p^(ε)_{d,λ})` for every block.
pub fn p_table(dec: &IsotypicDecomposition, eps: &Rational) -> Vec<(usize, Rational, usize)> {
    dec.blocks.iter().map(|b| (b.d, b.lambda.clone(), p_index(b, eps, &dec.a))).collect()
}

/// The `ε ∈ (0, 1)` at which some block with `λ ≠ 0` has an even p-index.
pub fn breakpoints(dec: &IsotypicDecomposition) -> Vec<Rational> {
    let a = &dec.a;
    let mut out = Vec::new();
    for b in dec.blocks.iter().filter(|b| !b.lambda.is_zero()) {
        for k in 1..=b.d {
            let eps = (a / q(2) * q(b.d as i64 - 1) - a * q(k as i64 - 1)) / &b.lambda;
            if eps > Rational::zero() && eps < Rational::one() {
                out.push(eps);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Number of leading layers whose `h^(ε)`-weight satisfies `keep`.
fn prefix(block: &IsotypicBlock, eps: &Rational, a: &Rational, keep: impl Fn(&Rational) -> bool) -> isize {
    let rho = block.rho_at(a, eps);
    (0..block.d).take_while(|&l| keep(&(&rho + a * q(l as i64)))).count() as isize
}

fn below(block: &IsotypicBlock, eps: &Rational, a: &Rational, strict_zero: bool) -> Subspace {
    let n = if strict_zero {
        prefix(block, eps, a, |w| *w < Rational::zero())
    } else {
        prefix(block, eps, a, |w| *w <= -a.clone())
    };
    block.layer_span(0, n - 1)
}

fn plus(x: Subspace, pos: &IsotypicBlock, neg: &IsotypicBlock, y: Subspace) -> Subspace {
    if std::ptr::eq(pos, neg) {
        return x;
    }
    sum_all(x.ambient_dim(), [&x, &y])
}

/// `(m_{d,λ}, n_{d,λ})` shared by `Γ^(ε)` and `Γ^(ε')` for `V_{d,λ}`, `λ ≥ 0`.
pub fn common_block_pair(
    pos: &IsotypicBlock,
    neg: &IsotypicBlock,
    eps: &Rational,
    eps2: &Rational,
    a: &Rational,
) -> Result<(Subspace, Subspace)> {
    let d = pos.d;
    let p1 = p_index(pos, eps, a);
    let p2 = p_index(pos, eps2, a);
    if p1 == p2 {
        let p = p1;
        if pos.lambda.is_zero() {
            return Ok((below(pos, eps, a, false), below(pos, eps, a, true)));
        }
        if p % 2 == 0 || p == 1 || p == 2 * d + 1 {
            let m = plus(below(pos, eps, a, false), pos, neg, below(neg, eps, a, false));
            return Ok((m.clone(), m));
        }
        let k = (p - 1) / 2;
        let lhs = pos.rho_at(a, eps) + a * q(k as i64 - 1);
        let rhs = neg.rho_at(a, eps) + a * q(d as i64 - k as i64 - 1);
        let m = if lhs <= rhs {
            plus(below(pos, eps, a, true), pos, neg, below(neg, eps, a, false))
        } else {
            plus(below(pos, eps, a, false), pos, neg, below(neg, eps, a, true))
        };
        return Ok((m.clone(), m));
    }
    if p1.abs_diff(p2) != 1 {
        return Err(Error::Precondition(format!(
            "p-index of block ({d}, {}) jumps from {p1} to {p2}",
            fmt_rational(&pos.lambda)
        )));
    }
    let k = (if p1 % 2 == 0 { p1 } else { p2 } / 2) as isize;
    let m = plus(pos.layer_span(0, k - 2), pos, neg, neg.layer_span(0, d as isize - k - 1));
    Ok((m.clone(), m))
}

/// Conditions (C1)-(C4) for `m ⊆ n` inside a piece `P` of an orthogonal
/// decomposition into `s`- and `t`-stable subspaces.
pub fn block_conditions_hold(g: &Grading, e: &Element, a: &Rational, p: &Subspace, m: &Subspace, n: &Subspace) -> bool {
    use crate::grading::RangeOp;
    let alg = g.algebra();
    let meet = |x: &Subspace, y: &Subspace| subspace_intersect(x, y).expect("same ambient");
    let c1 = g.is_graded(m)
        && g.is_graded(n)
        && meet(p, &g.piece_range(RangeOp::Le, &-a)).is_subspace_of(m)
        && m.is_subspace_of(n)
        && n.is_subspace_of(&meet(p, &g.piece_range(RangeOp::Lt, &Rational::zero())));
    let full = Subspace::full(g.dim());
    let m_perp = orth_complement(m, alg.form_gram(), &full).expect("same ambient");
    let c2 = meet(&m_perp, &alg.ad_image(&e.coords, p)) == alg.ad_image(&e.coords, n);
    let c3 = alg.ad_kernel(&e.coords, n).is_zero();
    let c4 = m.dim() + n.dim() + alg.ad_kernel(&e.coords, p).dim() == p.dim();
    c1 && c2 && c3 && c4
}

/// A pair certified under two gradings `Γ^(ε)` and `Γ^(ε')`.
#[derive(Clone, Debug)]
pub struct CommonStep {
    pub eps: Rational,
    pub eps2: Rational,
    pub pair: AdmissiblePair,
    pub report: CheckReport,
    pub report2: CheckReport,
}

/// Blockwise pair shared by `Γ^(ε)` and `Γ^(ε')`, certified under both.
pub fn common_pair(
    alg: &Arc<MatrixLieAlgebra>,
    dec: &IsotypicDecomposition,
    eps: &Rational,
    eps2: &Rational,
) -> Result<CommonStep> {
    let a = &dec.a;
    let e = &dec.triple.e;
    let g1 = deform_decomposition(alg, dec, eps)?;
    let g2 = deform_decomposition(alg, dec, eps2)?;
    let dim = alg.dim();
    let mut ms = Vec::new();
    let mut ns = Vec::new();
    for (pos, neg) in block_partners(dec)? {
        let (m, n) = common_block_pair(pos, neg, eps, eps2, a)?;
        let v = plus(pos.span(), pos, neg, neg.span());
        for (g, at) in [(&g1, eps), (&g2, eps2)] {
            if !block_conditions_hold(g, e, a, &v, &m, &n) {
                return Err(Error::Verification(format!(
                    "block ({}, {}) fails the blockwise conditions at ε = {}",
                    pos.d,
                    fmt_rational(&pos.lambda),
                    fmt_rational(at)
                )));
            }
        }
        ms.push(m);
        ns.push(n);
    }
    let pair = AdmissiblePair::new(sum_all(dim, ms.iter()), sum_all(dim, ns.iter()));
    let report = check_pair(&g1, e, a, &pair.m, &pair.n);
    let report2 = check_pair(&g2, e, a, &pair.m, &pair.n);
    if !report.overall() || !report2.overall() {
        return Err(Error::Verification(format!(
            "common pair for ε = {} and {} fails certification",
            fmt_rational(eps),
            fmt_rational(eps2)
        )));
    }
    Ok(CommonStep { eps: eps.clone(), eps2: eps2.clone(), pair, report, report2 })
}

/// A chain of gradings `Γ^(ε_0), …, Γ^(ε_s)` from `(a/2)·Dynkin` (`ε = 0`) to
/// `Γ` (`ε = 1`), each step carrying a pair certified under both ends.
#[derive(Clone, Debug)]
pub struct ConnectivityCertificate {
    pub a: Rational,
    pub e: Element,
    pub h_diag: Vec<Rational>,
    pub t_diag: Vec<Rational>,
    pub breakpoints: Vec<Rational>,
    pub epsilons: Vec<Rational>,
    pub steps: Vec<CommonStep>,
}

impl ConnectivityCertificate {
    pub fn grading_at(&self, alg: &Arc<MatrixLieAlgebra>, eps: &Rational) -> Result<Grading> {
        let half = &self.a / q(2);
        let diag = self.h_diag.iter().zip(&self.t_diag).map(|(h, t)| &half * h + eps * t).collect();
        grading_from_diagonal(alg.clone(), diag)
    }

    /// Re-certifies every step from the stored data alone.
    pub fn verify(&self, alg: &Arc<MatrixLieAlgebra>) -> Result<bool> {
        if self.epsilons.first() != Some(&Rational::zero()) || self.epsilons.last() != Some(&Rational::one()) {
            return Ok(false);
        }
        if self.steps.len() + 1 != self.epsilons.len() {
            return Ok(false);
        }
        for (i, s) in self.steps.iter().enumerate() {
            if s.eps != self.epsilons[i] || s.eps2 != self.epsilons[i + 1] {
                return Ok(false);
            }
            for eps in [&s.eps, &s.eps2] {
                let g = self.grading_at(alg, eps)?;
                if !check_pair(&g, &self.e, &self.a, &s.pair.m, &s.pair.n).overall() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Chains `Γ` to `(a/2)` times the Dynkin grading of an adapted triple.
pub fn connect_to_dynkin(g: &Grading, e: &Element, a: &Rational) -> Result<ConnectivityCertificate> {
    if !is_admissible_grading(g, e, a)? {
        return Err(Error::Precondition("grading is not admissible for e".into()));
    }
    let alg = g.algebra();
    let triple = adapted_triple(g, e, a)?;
    let t = t_element(g, &triple, a)?;
    let dec = isotypic_decompose(alg, &triple, &t, a)?;
    connect_decomposition(alg, &dec)
}

pub fn connect_decomposition(alg: &Arc<MatrixLieAlgebra>, dec: &IsotypicDecomposition) -> Result<ConnectivityCertificate> {
    let not_diag = || Error::Precondition("h and t must be diagonal".into());
    let h_diag = alg.as_diagonal(&dec.triple.h).ok_or_else(not_diag)?;
    let t_diag = alg.as_diagonal(&dec.t).ok_or_else(not_diag)?;
    let bps = breakpoints(dec);
    let mut epsilons = vec![Rational::zero()];
    if !dec.t.is_zero() {
        let mut knots = bps.clone();
        knots.push(Rational::one());
        let mut prev = Rational::zero();
        for k in knots {
            epsilons.push((&prev + &k) / q(2));
            epsilons.push(k.clone());
            prev = k;
        }
    } else {
        epsilons.push(Rational::one());
    }
    let steps = epsilons
        .windows(2)
        .map(|w| common_pair(alg, dec, &w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConnectivityCertificate {
        a: dec.a.clone(),
        e: dec.triple.e.clone(),
        h_diag,
        t_diag,
        breakpoints: bps,
        epsilons,
        steps,
    })
}

/// Connects two admissible gradings through their Dynkin ends.
pub fn connect_gradings(
    g1: &Grading,
    g2: &Grading,
    e: &Element,
    a1: &Rational,
    a2: &Rational,
) -> Result<(ConnectivityCertificate, ConnectivityCertificate)> {
    Ok((connect_to_dynkin(g1, e, a1)?, connect_to_dynkin(g2, e, a2)?))
}

/// `#((-a, 0) ∩ (Ξ_{d,λ} ∪ Ξ_{d,-λ}))` at `ε`.
pub fn open_window_count(pos: &IsotypicBlock, eps: &Rational, a: &Rational) -> usize {
    let rho = pos.rho_at(a, eps);
    let mut ws: Vec<Rational> = Vec::new();
    for l in 0..pos.d {
        let w = &rho + a * q(l as i64);
        ws.push(-w.clone());
        ws.push(w);
    }
    ws.sort();
    ws.dedup();
    ws.iter().filter(|w| **w > -a.clone() && **w < Rational::zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qf;
    use crate::liealg::{build_algebra, AlgebraKind};
    use proptest::prelude::*;

    fn sl11() -> (Grading, Element) {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(11)).unwrap());
        let pos: Vec<(usize, usize, Rational)> =
            (0..10).filter(|i| *i != 5 && *i != 8).map(|i| (i, i + 1, q(1))).collect();
        let e = alg.from_triples(&pos).unwrap();
        let diag = [73, 40, 7, -26, -59, -92, 29, -4, -37, 51, 18].iter().map(|&x| qf(x, 11)).collect();
        (grading_from_diagonal(alg, diag).unwrap(), e)
    }

    fn decompose(g: &Grading, e: &Element, a: &Rational) -> IsotypicDecomposition {
        let tr = adapted_triple(g, e, a).unwrap();
        let t = t_element(g, &tr, a).unwrap();
        isotypic_decompose(g.algebra(), &tr, &t, a).unwrap()
    }

    #[test]
    fn three_block_p_indices_and_breakpoints() {
        let (g, e) = sl11();
        let dec = decompose(&g, &e, &q(3));
        let one = Rational::one();
        let want = [(8, qf(-1, 2), 9), (6, qf(-1, 2), 7), (4, qf(-1, 2), 5), (4, qf(-7, 2), 7), (2, qf(-7, 2), 5), (7, q(-4), 11), (5, q(-4), 9)];
        for (d, l, p) in want {
            assert_eq!(p_index(dec.block(d, &l).unwrap(), &one, &q(3)), p, "({d}, {l})");
        }
        assert_eq!(breakpoints(&dec), vec![qf(3, 7), qf(3, 4)]);
        for b in &dec.blocks {
            assert_eq!(p_index(b, &Rational::zero(), &q(3)), b.d + 1);
        }
        let b7 = dec.block(7, &q(-4)).unwrap();
        assert_eq!(b7.rho_at(&q(3), &qf(1, 2)), q(-11));
        for (eps, off) in [(qf(1, 3), 2), (qf(3, 4), 3), (qf(9, 10), 4)] {
            for d in [5, 7] {
                assert_eq!(p_index(dec.block(d, &q(-4)).unwrap(), &eps, &q(3)), d + off);
            }
        }
        for (eps, off) in [(qf(1, 5), 1), (qf(3, 7), 2), (qf(1, 2), 3)] {
            for d in [2, 4] {
                assert_eq!(p_index(dec.block(d, &qf(-7, 2)).unwrap(), &eps, &q(3)), d + off);
            }
        }
    }

    #[test]
    fn p_indices_pair_up_and_window_is_small() {
        let (g, e) = sl11();
        let dec = decompose(&g, &e, &q(3));
        for k in 0..=20 {
            let eps = qf(k, 20);
            for b in &dec.blocks {
                let partner = dec.block(b.d, &-b.lambda.clone()).unwrap();
                assert_eq!(p_index(b, &eps, &q(3)) + p_index(partner, &eps, &q(3)), 2 * b.d + 2);
                assert!(open_window_count(b, &eps, &q(3)) <= 2);
            }
        }
    }

    #[test]
    fn three_block_connects() {
        let (g, e) = sl11();
        let cert = connect_to_dynkin(&g, &e, &q(3)).unwrap();
        assert_eq!(cert.breakpoints, vec![qf(3, 7), qf(3, 4)]);
        assert_eq!(cert.epsilons.len(), 7);
        assert!(cert.verify(g.algebra()).unwrap());
        assert_eq!(cert.grading_at(g.algebra(), &Rational::one()).unwrap().diag(), g.diag());
    }

    #[test]
    fn dynkin_is_one_step() {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(2)).unwrap());
        let g = grading_from_diagonal(alg.clone(), vec![q(1), q(-1)]).unwrap();
        let e = alg.root_vector(0, 1).unwrap();
        let cert = connect_to_dynkin(&g, &e, &q(2)).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(cert.breakpoints.is_empty());
        let f = Subspace::span(3, vec![alg.root_vector(1, 0).unwrap().coords]);
        assert_eq!(cert.steps[0].pair, AdmissiblePair::diagonal(f));
    }

    #[test]
    fn deform_endpoints() {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(4)).unwrap());
        let e = alg.from_triples(&[(0, 2, q(1)), (1, 3, q(1))]).unwrap();
        let g = grading_from_diagonal(alg.clone(), vec![qf(3, 2), qf(1, 2), qf(-1, 2), qf(-3, 2)]).unwrap();
        let tr = adapted_triple(&g, &e, &q(2)).unwrap();
        assert_eq!(deform(&g, &tr, &q(2), &Rational::one()).unwrap().diag(), g.diag());
        let g0 = deform(&g, &tr, &q(2), &Rational::zero()).unwrap();
        assert_eq!(g0.diag(), &[q(1), q(1), q(-1), q(-1)]);
        assert!(deform(&g, &tr, &q(2), &q(2)).is_err());
    }

    #[test]
    fn gap_of_two_is_refused() {
        let (g, e) = sl11();
        let dec = decompose(&g, &e, &q(3));
        let alg = g.algebra();
        assert!(common_pair(alg, &dec, &Rational::zero(), &Rational::one()).is_err());
        let same = common_pair(alg, &dec, &qf(1, 2), &qf(1, 2)).unwrap();
        assert!(same.report.overall());
    }

    fn sl11_blocks() -> &'static IsotypicDecomposition {
        static DEC: std::sync::OnceLock<IsotypicDecomposition> = std::sync::OnceLock::new();
        DEC.get_or_init(|| {
            let (g, e) = sl11();
            decompose(&g, &e, &q(3))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn p_index_moves_against_lambda(n1 in 0i64..=60, n2 in 0i64..=60) {
            let dec = sl11_blocks();
            let (lo, hi) = (qf(n1.min(n2), 60), qf(n1.max(n2), 60));
            for b in &dec.blocks {
                let (p_lo, p_hi) = (p_index(b, &lo, &q(3)), p_index(b, &hi, &q(3)));
                if b.lambda < Rational::zero() {
                    prop_assert!(p_lo <= p_hi);
                } else if b.lambda > Rational::zero() {
                    prop_assert!(p_lo >= p_hi);
                }
            }
        }

        #[test]
        fn p_index_is_constant_between_breakpoints(k in 0usize..3, t1 in 1i64..100, t2 in 1i64..100) {
            let dec = sl11_blocks();
            let mut knots = vec![Rational::zero()];
            knots.extend(breakpoints(dec));
            knots.push(Rational::one());
            let (l, r) = (&knots[k], &knots[k + 1]);
            let at = |t: i64| l + (r - l) * qf(t, 100);
            for b in &dec.blocks {
                prop_assert_eq!(p_index(b, &at(t1), &q(3)), p_index(b, &at(t2), &q(3)));
            }
        }

        #[test]
        fn window_holds_at_most_two_weights(num in 0i64..=97) {
            let dec = sl11_blocks();
            let eps = qf(num, 97);
            for b in &dec.blocks {
                prop_assert!(open_window_count(b, &eps, &q(3)) <= 2);
            }
        }
    }
}
