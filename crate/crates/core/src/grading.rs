//! Rational gradings `g = ⊕ g_j` given by a diagonal element `h_Γ`.
//!
//! Every canonical basis vector is an eigenvector of `ad h_Γ` for a diagonal
//! `h_Γ`, so each piece `g_j` is a coordinate subspace.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{fmt_rational, is_zero_vec, subspace_intersect, Rational, Subspace};
use crate::liealg::{Element, MatrixLieAlgebra};

/// Which side of a threshold `k` to keep in [`Grading::piece_range`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeOp {
    Le,
    Lt,
    Ge,
    Gt,
}

impl RangeOp {
    fn keeps(self, j: &Rational, k: &Rational) -> bool {
        match self {
            RangeOp::Le => j <= k,
            RangeOp::Lt => j < k,
            RangeOp::Ge => j >= k,
            RangeOp::Gt => j > k,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Grading {
    alg: Arc<MatrixLieAlgebra>,
    diag: Vec<Rational>,
    degrees: Vec<Rational>,
    pieces: BTreeMap<Rational, Vec<usize>>,
}

pub fn grading_from_diagonal(alg: Arc<MatrixLieAlgebra>, diag: Vec<Rational>) -> Result<Grading> {
    alg.diagonal_element(&diag).map_err(|_| {
        Error::InvalidGrading(format!("diagonal of length {} is not an element of {}", diag.len(), alg.kind()))
    })?;
    let degrees: Vec<Rational> = (0..alg.dim()).map(|k| alg.basis_degree(k, &diag)).collect();
    let mut pieces: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for (k, d) in degrees.iter().enumerate() {
        pieces.entry(d.clone()).or_default().push(k);
    }
    Ok(Grading { alg, diag, degrees, pieces })
}

/// `kΓ`: the grading defined by `k h_Γ`.
pub fn scale_grading(g: &Grading, k: &Rational) -> Result<Grading> {
    if *k <= Rational::zero() {
        return Err(Error::InvalidGrading(format!("scale factor {} must be positive", fmt_rational(k))));
    }
    grading_from_diagonal(g.alg.clone(), g.diag.iter().map(|d| d * k).collect())
}

impl Grading {
    pub fn algebra(&self) -> &Arc<MatrixLieAlgebra> {
        &self.alg
    }

    pub fn diag(&self) -> &[Rational] {
        &self.diag
    }

    /// `h_Γ` as an algebra element.
    pub fn element(&self) -> Element {
        self.alg.diagonal_element(&self.diag).expect("validated at construction")
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn basis_degree(&self, k: usize) -> &Rational {
        &self.degrees[k]
    }

    pub fn degrees(&self) -> impl Iterator<Item = &Rational> {
        self.pieces.keys()
    }

    pub fn is_integral(&self) -> bool {
        self.pieces.keys().all(|d| d.is_integer())
    }

    pub fn piece_indices(&self, j: &Rational) -> &[usize] {
        self.pieces.get(j).map_or(&[], Vec::as_slice)
    }

    pub fn piece_dim(&self, j: &Rational) -> usize {
        self.piece_indices(j).len()
    }

    /// `g_j`.
    pub fn piece(&self, j: &Rational) -> Subspace {
        Subspace::coordinate(self.dim(), self.piece_indices(j).iter().copied())
    }

    /// `g_{≤k}`, `g_{<k}`, `g_{≥k}` or `g_{>k}`.
    pub fn piece_range(&self, op: RangeOp, k: &Rational) -> Subspace {
        let idx = self.pieces.iter().filter(|(j, _)| op.keeps(j, k)).flat_map(|(_, v)| v.iter().copied());
        Subspace::coordinate(self.dim(), idx)
    }

    /// `v_j`, the component of `v` in `g_j`.
    pub fn component(&self, v: &[Rational], j: &Rational) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for &k in self.piece_indices(j) {
            out[k] = v[k].clone();
        }
        out
    }

    /// Nonzero homogeneous components of `v`, keyed by degree.
    pub fn components(&self, v: &[Rational]) -> BTreeMap<Rational, Vec<Rational>> {
        self.pieces
            .keys()
            .map(|j| (j.clone(), self.component(v, j)))
            .filter(|(_, c)| !is_zero_vec(c))
            .collect()
    }

    /// The degree of `v` when it is nonzero and homogeneous.
    pub fn degree_of(&self, v: &[Rational]) -> Option<Rational> {
        let mut it = self.components(v).into_keys();
        match (it.next(), it.next()) {
            (Some(j), None) => Some(j),
            _ => None,
        }
    }

    /// `U = ⊕_j (U ∩ g_j)`; returns the pieces `U ∩ g_j` when it holds.
    pub fn graded_refinement(&self, u: &Subspace) -> Option<BTreeMap<Rational, Subspace>> {
        let mut parts: BTreeMap<Rational, Vec<Vec<Rational>>> = BTreeMap::new();
        for b in u.basis() {
            for (j, c) in self.components(b) {
                if !u.contains(&c) {
                    return None;
                }
                parts.entry(j).or_default().push(c);
            }
        }
        Some(parts.into_iter().map(|(j, v)| (j, Subspace::span(self.dim(), v))).collect())
    }

    pub fn is_graded(&self, u: &Subspace) -> bool {
        self.graded_refinement(u).is_some()
    }

    /// `U ∩ g_j` for an arbitrary subspace `U`.
    pub fn slice(&self, u: &Subspace, j: &Rational) -> Subspace {
        subspace_intersect(u, &self.piece(j)).expect("same ambient")
    }

    /// Rows `(d_i - d_j)` of the degree matrix of the root vectors `E_ij`.
    pub fn degree_matrix(&self) -> Vec<Vec<Rational>> {
        self.diag.iter().map(|di| self.diag.iter().map(|dj| di - dj).collect()).collect()
    }

    /// Fails unless `e` is a nonzero element of `g_a`.
    pub fn require_degree(&self, e: &Element, a: &Rational) -> Result<()> {
        match self.degree_of(&e.coords) {
            Some(d) if d == *a => Ok(()),
            Some(d) => Err(Error::NotHomogeneous(format!(
                "element has degree {}, expected {}",
                fmt_rational(&d),
                fmt_rational(a)
            ))),
            None => Err(Error::NotHomogeneous(format!("element is zero or mixes degrees, expected {}", fmt_rational(a)))),
        }
    }

    /// `g^e_j = g_j ∩ g^e`.
    pub fn centralizer_piece(&self, e: &Element, j: &Rational) -> Subspace {
        self.alg.ad_kernel(&e.coords, &self.piece(j))
    }

    /// `g^e ∩ g_{op k}`, computed piece by piece.
    pub fn centralizer_range(&self, e: &Element, op: RangeOp, k: &Rational) -> Subspace {
        let mut out = Vec::new();
        for j in self.pieces.keys().filter(|j| op.keeps(j, k)) {
            out.extend(self.centralizer_piece(e, j).basis().iter().cloned());
        }
        Subspace::span(self.dim(), out)
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.diag.iter().map(fmt_rational).collect();
        write!(f, "diag({})", cells.join(" "))
    }
}

/// Rank and dimensions of `ad e : g_j → g_{j+s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdStep {
    pub degree: Rational,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl AdStep {
    pub fn injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

/// `ad e : g_j → g_{j+s}` for every `j` where source or target is nonzero.
pub fn ad_steps(g: &Grading, e: &Element, s: &Rational) -> Vec<AdStep> {
    let mut degrees: Vec<Rational> = g.pieces.keys().cloned().collect();
    degrees.extend(g.pieces.keys().map(|j| j - s));
    degrees.sort();
    degrees.dedup();
    degrees
        .into_iter()
        .map(|j| {
            let image = g.alg.ad_image(&e.coords, &g.piece(&j));
            AdStep { source_dim: g.piece_dim(&j), target_dim: g.piece_dim(&(&j + s)), rank: image.dim(), degree: j }
        })
        .collect()
}

fn check_a(a: &Rational) -> Result<()> {
    if *a <= Rational::one() {
        return Err(Error::Precondition(format!("degree a = {} must exceed 1", fmt_rational(a))));
    }
    Ok(())
}

/// `g_{≤-a} ∩ g^e = 0`, the admissibility criterion for a grading.
pub fn is_admissible_grading(g: &Grading, e: &Element, a: &Rational) -> Result<bool> {
    check_a(a)?;
    g.require_degree(e, a)?;
    Ok(g.centralizer_range(e, RangeOp::Le, &-a).is_zero())
}

/// Good for `e ∈ g_{2d}`: `ad e` injective on `g_j` for `j ≤ -d` and surjective
/// onto `g_{j+2d}` for `j ≥ -d`.
pub fn is_good_grading(g: &Grading, e: &Element, two_d: &Rational) -> Result<bool> {
    g.require_degree(e, two_d)?;
    let d = two_d / Rational::from_integer(2.into());
    Ok(ad_steps(g, e, two_d)
        .iter()
        .all(|s| (s.degree > -d.clone() || s.injective()) && (s.degree < -d.clone() || s.surjective())))
}

/// `b`-optimal: `e ∈ g_a` with `a ≥ 2`, `a ≥ 2b` and `g_{<-b} ∩ g^e = 0`.
pub fn is_b_optimal(g: &Grading, e: &Element, b: &Rational) -> Result<bool> {
    if *b <= Rational::zero() {
        return Err(Error::Precondition(format!("b = {} must be positive", fmt_rational(b))));
    }
    let a = g.degree_of(&e.coords).ok_or_else(|| Error::NotHomogeneous("element is zero or mixes degrees".into()))?;
    let two = Rational::from_integer(2.into());
    if a < two || a < &two * b {
        return Ok(false);
    }
    Ok(g.centralizer_range(e, RangeOp::Lt, &-b).is_zero())
}

/// Whether `h_Γ` is the neutral element of an sl2-triple through `e`: `e ∈ g_2`
/// and `h_Γ ∈ [e, g_{-2}]`.
pub fn is_dynkin(g: &Grading, e: &Element) -> bool {
    let two = Rational::from_integer(2.into());
    if g.degree_of(&e.coords) != Some(two.clone()) {
        return false;
    }
    g.alg.ad_image(&e.coords, &g.piece(&-two)).contains(&g.element().coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, qf};
    use crate::liealg::{build_algebra, AlgebraKind};
    use proptest::prelude::*;

    fn sl(n: usize) -> Arc<MatrixLieAlgebra> {
        Arc::new(build_algebra(AlgebraKind::SL(n)).unwrap())
    }

    fn e_sum(alg: &MatrixLieAlgebra, pos: &[(usize, usize)]) -> Element {
        let t: Vec<_> = pos.iter().map(|&(i, j)| (i, j, q(1))).collect();
        alg.from_triples(&t).unwrap()
    }

    fn sl4_staircase() -> (Grading, Element) {
        let alg = sl(4);
        let e = e_sum(&alg, &[(0, 2), (1, 3)]);
        (grading_from_diagonal(alg, vec![qf(3, 2), qf(1, 2), qf(-1, 2), qf(-3, 2)]).unwrap(), e)
    }

    #[test]
    fn staircase_degree_matrix() {
        let (g, _) = sl4_staircase();
        let expect = [[0, 1, 2, 3], [-1, 0, 1, 2], [-2, -1, 0, 1], [-3, -2, -1, 0]];
        for (i, row) in g.degree_matrix().iter().enumerate() {
            assert_eq!(row, &expect[i].iter().map(|&x| q(x)).collect::<Vec<_>>());
        }
        let le = g.piece_range(RangeOp::Le, &q(-2));
        let alg = g.algebra();
        let want = Subspace::span(
            15,
            [(2, 0), (3, 0), (3, 1)].iter().map(|&(i, j)| alg.root_vector(i, j).unwrap().coords).collect(),
        );
        assert_eq!(le, want);
        assert_eq!(le.dim(), 3);
    }

    #[test]
    fn three_way_split_covers_everything() {
        let (g, _) = sl4_staircase();
        let total =
            g.piece_range(RangeOp::Lt, &q(0)).dim() + g.piece(&q(0)).dim() + g.piece_range(RangeOp::Gt, &q(0)).dim();
        assert_eq!(total, 15);
    }

    #[test]
    fn staircase_verdicts() {
        let (g, e) = sl4_staircase();
        assert!(is_admissible_grading(&g, &e, &q(2)).unwrap());
        assert!(!is_good_grading(&g, &e, &q(2)).unwrap());
        assert!(is_b_optimal(&g, &e, &q(1)).unwrap());
        assert!(!is_dynkin(&g, &e));
        let step = ad_steps(&g, &e, &q(2)).into_iter().find(|s| s.degree == q(-1)).unwrap();
        assert!(!step.injective());
        assert!(is_admissible_grading(&g, &e, &q(3)).is_err());
    }

    #[test]
    fn gradedness() {
        let (g, _) = sl4_staircase();
        let alg = g.algebra().clone();
        let mixed = alg.root_vector(2, 0).unwrap().add(&alg.root_vector(1, 0).unwrap());
        assert!(!g.is_graded(&Subspace::span(15, vec![mixed.coords])));
        assert!(g.is_graded(&g.piece(&q(-1))));
        let mut n = g.piece_range(RangeOp::Le, &q(-2)).basis().to_vec();
        n.push(alg.root_vector(1, 0).unwrap().coords);
        n.push(alg.root_vector(2, 1).unwrap().coords);
        let refined = g.graded_refinement(&Subspace::span(15, n)).unwrap();
        let keys: Vec<_> = refined.keys().cloned().collect();
        assert_eq!(keys, vec![q(-3), q(-2), q(-1)]);
        assert_eq!(refined[&q(-1)].dim(), 2);
    }

    #[test]
    fn sl3_two_two_minus_four() {
        let alg = sl(3);
        let g = grading_from_diagonal(alg.clone(), vec![qf(2, 3), qf(2, 3), qf(-4, 3)]).unwrap();
        let e = alg.root_vector(0, 2).unwrap();
        assert_eq!(g.degree_of(&e.coords), Some(q(2)));
        let want = Subspace::span(8, vec![alg.root_vector(2, 0).unwrap().coords, alg.root_vector(2, 1).unwrap().coords]);
        assert_eq!(g.piece(&q(-2)), want);
        assert!(is_good_grading(&g, &e, &q(2)).unwrap());
        assert!(!is_dynkin(&g, &e));
        assert!(is_admissible_grading(&g, &e, &q(2)).unwrap());
    }

    #[test]
    fn sl2_dynkin() {
        let alg = sl(2);
        let g = grading_from_diagonal(alg.clone(), vec![q(1), q(-1)]).unwrap();
        let e = alg.root_vector(0, 1).unwrap();
        assert!(is_dynkin(&g, &e));
        assert!(is_good_grading(&g, &e, &q(2)).unwrap());
        assert!(is_b_optimal(&g, &e, &q(1)).unwrap());
        assert_eq!(g.piece(&q(0)).dim(), 1);
        assert_eq!(g.piece(&q(2)), Subspace::span(3, vec![e.coords]));
    }

    #[test]
    fn scaling() {
        let alg = sl(3);
        let g = grading_from_diagonal(alg, vec![qf(2, 3), qf(2, 3), qf(-4, 3)]).unwrap();
        assert!(g.is_integral());
        assert!(!g.diag().iter().all(|d| d.is_integer()));
        let g3 = scale_grading(&g, &q(3)).unwrap();
        assert!(g3.diag().iter().all(|d| d.is_integer()));
        assert!(!scale_grading(&g, &qf(1, 4)).unwrap().is_integral());
        assert_eq!(g3.piece(&q(6)), g.piece(&q(2)));
        assert_eq!(scale_grading(&g, &q(1)).unwrap().diag(), g.diag());
        assert!(scale_grading(&g, &q(0)).is_err());
    }

    #[test]
    fn rejects_non_elements() {
        let alg = sl(3);
        assert!(grading_from_diagonal(alg.clone(), vec![q(1), q(1), q(1)]).is_err());
        assert!(grading_from_diagonal(alg, vec![q(1), q(-1)]).is_err());
        let so = Arc::new(build_algebra(AlgebraKind::SO(4)).unwrap());
        assert!(grading_from_diagonal(so.clone(), vec![q(1), q(2), q(-2), q(-1)]).is_ok());
        assert!(grading_from_diagonal(so, vec![q(1), q(2), q(-1), q(-2)]).is_err());
    }

    #[test]
    fn trace_form_pairs_opposite_degrees_only() {
        let (g, _) = sl4_staircase();
        let alg = g.algebra();
        for x in 0..15 {
            for y in 0..15 {
                if g.basis_degree(x) + g.basis_degree(y) != q(0) {
                    assert!(alg.form_gram().get(x, y).is_zero());
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn brackets_add_degrees(n in 2usize..5, raw in proptest::collection::vec(-6i64..6, 5)) {
            let alg = sl(n);
            let mut diag: Vec<Rational> = raw[..n].iter().map(|&x| qf(x, 2)).collect();
            let mean = diag.iter().fold(Rational::zero(), |a, b| a + b) / Rational::from_integer((n as i64).into());
            for d in &mut diag {
                *d -= &mean;
            }
            let g = grading_from_diagonal(alg.clone(), diag).unwrap();
            let dim = alg.dim();
            for x in 0..dim {
                for y in 0..dim {
                    let br = alg.bracket_vec(&crate::exactlin::unit_vector(dim, x), &crate::exactlin::unit_vector(dim, y));
                    if !is_zero_vec(&br) {
                        prop_assert_eq!(g.degree_of(&br), Some(g.basis_degree(x) + g.basis_degree(y)));
                    }
                }
            }
            let mut total = 0;
            for j in g.degrees() {
                prop_assert_eq!(g.piece_dim(j), g.piece_dim(&-j.clone()));
                total += g.piece_dim(j);
            }
            prop_assert_eq!(total, dim);
        }
    }
}
