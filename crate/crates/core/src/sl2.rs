//! Adapted sl2-triples and the joint `(s, ad t)` isotypic decomposition.
//!
//! The decomposition needs diagonal `h` and `t`: their ad-eigenvalues are then
//! read off the canonical basis.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{axpy, dot, fmt_rational, kernel_on, q, rank, solve_combination, subspace_intersect, sum_all, QMatrix, Rational, Subspace};
use crate::grading::Grading;
use crate::liealg::{Element, MatrixLieAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Element,
    pub h: Element,
    pub f: Element,
}

impl Sl2Triple {
    pub fn relations_hold(&self, alg: &MatrixLieAlgebra) -> bool {
        alg.bracket(&self.h, &self.e) == self.e.scale(&q(2))
            && alg.bracket(&self.e, &self.f) == self.h
            && alg.bracket(&self.h, &self.f) == self.f.scale(&q(-2))
    }
}

fn solve_in(alg: &MatrixLieAlgebra, x: &Element, space: &Subspace, target: &[Rational]) -> Option<Element> {
    let cols: Vec<Vec<Rational>> = space.basis().iter().map(|b| alg.bracket_vec(&x.coords, b)).collect();
    let c = solve_combination(&cols, target)?;
    Some(Element::from_coords(space.combine(&c)))
}

/// An sl2-triple `(e, h, f)` with `h ∈ g_0` and `f ∈ g_{-a}`.
///
/// `h` is the first solution of `[h, e] = 2e` in `[e, g_{-a}]`, looked for
/// among diagonal elements before the whole of `g_0`.
pub fn adapted_triple(g: &Grading, e: &Element, a: &Rational) -> Result<Sl2Triple> {
    g.require_degree(e, a)?;
    let alg = g.algebra();
    let g_minus = g.piece(&-a);
    let image = alg.ad_image(&e.coords, &g_minus);
    let target = e.scale(&q(2)).coords;
    let diagonal = subspace_intersect(&image, &alg.cartan_subspace())?;
    let h = solve_in(alg, e, &diagonal, &target)
        .map(|h| h.scale(&-Rational::one()))
        .or_else(|| solve_in(alg, e, &image, &target).map(|h| h.scale(&-Rational::one())))
        .ok_or_else(|| Error::NoSolution("no h in [e, g_-a] with [h, e] = 2e".into()))?;
    let f_space = weight_space(alg, &h, &g_minus, &q(-2));
    let f = solve_in(alg, e, &f_space, &h.coords)
        .ok_or_else(|| Error::NoSolution("no f in g_-a with [e, f] = h".into()))?;
    let triple = Sl2Triple { e: e.clone(), h, f };
    if !triple.relations_hold(alg) {
        return Err(Error::Verification("sl2 relations fail for the adapted triple".into()));
    }
    Ok(triple)
}

/// `{v ∈ U : [x, v] = c v}`.
fn weight_space(alg: &MatrixLieAlgebra, x: &Element, u: &Subspace, c: &Rational) -> Subspace {
    let images: Vec<Vec<Rational>> = u
        .basis()
        .iter()
        .map(|b| {
            let mut v = alg.bracket_vec(&x.coords, b);
            axpy(&mut v, &-c.clone(), b);
            v
        })
        .collect();
    kernel_on(u, &images)
}

/// `t = h_Γ - (a/2) h`, which must commute with `e` and `h`.
pub fn t_element(g: &Grading, triple: &Sl2Triple, a: &Rational) -> Result<Element> {
    let alg = g.algebra();
    let t = g.element().sub(&triple.h.scale(&(a / q(2))));
    if !alg.bracket(&t, &triple.e).is_zero() || !alg.bracket(&t, &triple.h).is_zero() {
        return Err(Error::Verification("t does not centralise e and h".into()));
    }
    Ok(t)
}

/// `V_{d,λ}`: the sum of the simple `d`-dimensional modules on which `ad t`
/// acts by `λ`, split into the layers `E^l = (ad e)^l E^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicBlock {
    pub d: usize,
    pub lambda: Rational,
    /// Lowest `h_Γ`-weight, `-(a/2)(d-1) + λ`.
    pub rho: Rational,
    pub layers: Vec<Subspace>,
    pub multiplicity: usize,
}

impl IsotypicBlock {
    /// `ρ^(ε) = -(a/2)(d-1) + ελ`.
    pub fn rho_at(&self, a: &Rational, eps: &Rational) -> Rational {
        -(a / q(2)) * q(self.d as i64 - 1) + eps * &self.lambda
    }

    /// Sum of the layers `lo..=hi`; empty when `hi < lo`.
    pub fn layer_span(&self, lo: usize, hi: isize) -> Subspace {
        let amb = self.layers[0].ambient_dim();
        if hi < lo as isize {
            return Subspace::zero(amb);
        }
        let hi = (hi as usize).min(self.d - 1);
        sum_all(amb, self.layers[lo..=hi].iter())
    }

    pub fn span(&self) -> Subspace {
        self.layer_span(0, self.d as isize - 1)
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub triple: Sl2Triple,
    pub t: Element,
    pub a: Rational,
    pub blocks: Vec<IsotypicBlock>,
}

impl IsotypicDecomposition {
    pub fn block(&self, d: usize, lambda: &Rational) -> Option<&IsotypicBlock> {
        self.blocks.iter().find(|b| b.d == d && b.lambda == *lambda)
    }

    /// Distinct eigenvalues of `ad t`.
    pub fn t_eigenvalues(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.blocks.iter().map(|b| b.lambda.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `Σ m_{d,λ}`, which equals `dim g^e`.
    pub fn top_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }

    /// Every block satisfies `|λ| < (a/2)(d+1)`.
    pub fn weights_admissible(&self) -> bool {
        self.blocks.iter().all(|b| b.lambda.abs() < (&self.a / q(2)) * q(b.d as i64 + 1))
    }
}

/// Splits `g` into blocks `V_{d,λ}` with layers `E^l_{d,λ}`.
pub fn isotypic_decompose(
    alg: &MatrixLieAlgebra,
    triple: &Sl2Triple,
    t: &Element,
    a: &Rational,
) -> Result<IsotypicDecomposition> {
    let not_diag = |what: &str| Error::Precondition(format!("{what} must be diagonal to read its weights"));
    let h_diag = alg.as_diagonal(&triple.h).ok_or_else(|| not_diag("h"))?;
    let t_diag = alg.as_diagonal(t).ok_or_else(|| not_diag("t"))?;
    let dim = alg.dim();
    let mut lowest: BTreeMap<(usize, Rational), Vec<usize>> = BTreeMap::new();
    for k in 0..dim {
        let hw = alg.basis_degree(k, &h_diag);
        if !hw.is_integer() {
            return Err(Error::Verification(format!("h has non-integral weight {}", fmt_rational(&hw))));
        }
        if hw <= Rational::zero() {
            let d = (Rational::one() - hw).to_integer();
            let d = usize::try_from(&d).map_err(|_| Error::Verification("weight out of range".into()))?;
            lowest.entry((d, alg.basis_degree(k, &t_diag))).or_default().push(k);
        }
    }
    let mut blocks = Vec::new();
    for ((d, lambda), idx) in lowest {
        let l0 = alg.ad_kernel(&triple.f.coords, &Subspace::coordinate(dim, idx));
        if l0.is_zero() {
            continue;
        }
        let mult = l0.dim();
        let mut layers = vec![l0];
        for l in 1..d {
            let next = alg.ad_image(&triple.e.coords, &layers[l - 1]);
            if next.dim() != mult {
                return Err(Error::Verification(format!("layer {l} of block ({d}, {}) lost rank", fmt_rational(&lambda))));
            }
            layers.push(next);
        }
        if !alg.ad_image(&triple.e.coords, &layers[d - 1]).is_zero() {
            return Err(Error::Verification("ad e does not kill the top layer".into()));
        }
        let rho = -(a / q(2)) * q(d as i64 - 1) + &lambda;
        blocks.push(IsotypicBlock { d, lambda, rho, layers, multiplicity: mult });
    }
    let total: usize = blocks.iter().map(|b| b.d * b.multiplicity).sum();
    let all = sum_all(dim, blocks.iter().flat_map(|b| b.layers.iter()));
    if total != dim || all.dim() != dim {
        return Err(Error::Verification(format!("blocks cover {} of {dim} dimensions", all.dim())));
    }
    Ok(IsotypicDecomposition { triple: triple.clone(), t: t.clone(), a: a.clone(), blocks })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CouplingReport {
    pub failures: Vec<String>,
}

impl CouplingReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that layers pair only as `⟨E^l_{d,λ}, E^{d-1-l}_{d,-λ}⟩`, and
/// nondegenerately there.
pub fn verify_coupling(alg: &MatrixLieAlgebra, dec: &IsotypicDecomposition) -> CouplingReport {
    let gram = alg.form_gram();
    let applied: Vec<Vec<Vec<Vec<Rational>>>> = dec
        .blocks
        .iter()
        .map(|b| b.layers.iter().map(|l| l.basis().iter().map(|v| gram.mul_vec(v)).collect()).collect())
        .collect();
    let mut report = CouplingReport::default();
    for b1 in &dec.blocks {
        for (j, b2) in dec.blocks.iter().enumerate() {
            for (l1, layer1) in b1.layers.iter().enumerate() {
                for (l2, gv2) in applied[j].iter().enumerate() {
                    let rows: Vec<Vec<Rational>> = layer1
                        .basis()
                        .iter()
                        .map(|u| gv2.iter().map(|w| dot(u, w)).collect())
                        .collect();
                    let r = QMatrix::from_rows(gv2.len(), rows).map(|m| rank(&m)).unwrap_or(0);
                    let paired = b1.d == b2.d && b1.lambda == -b2.lambda.clone() && l1 + l2 + 1 == b1.d;
                    let label = format!(
                        "({}, {}) layer {l1} with ({}, {}) layer {l2}",
                        b1.d,
                        fmt_rational(&b1.lambda),
                        b2.d,
                        fmt_rational(&b2.lambda)
                    );
                    if paired && r != b1.multiplicity {
                        report.failures.push(format!("{label}: degenerate pairing"));
                    } else if !paired && r != 0 {
                        report.failures.push(format!("{label}: unexpected pairing"));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qf;
    use crate::grading::{grading_from_diagonal, RangeOp};
    use crate::liealg::{build_algebra, jordan_data, AlgebraKind, Partition};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn setup(kind: AlgebraKind, parts: Vec<usize>, diag: Vec<Rational>, a: i64) -> (Grading, IsotypicDecomposition) {
        let alg = Arc::new(build_algebra(kind).unwrap());
        let jd = jordan_data(&alg, &Partition::new(parts).unwrap()).unwrap();
        let g = grading_from_diagonal(alg.clone(), diag).unwrap();
        let tr = adapted_triple(&g, &jd.e, &q(a)).unwrap();
        let t = t_element(&g, &tr, &q(a)).unwrap();
        let dec = isotypic_decompose(&alg, &tr, &t, &q(a)).unwrap();
        (g, dec)
    }

    #[test]
    fn sl2_adjoint_is_one_block() {
        let (g, dec) = setup(AlgebraKind::SL(2), vec![2], vec![q(1), q(-1)], 2);
        let alg = g.algebra();
        assert_eq!(dec.triple.h, alg.diagonal_element(&[q(1), q(-1)]).unwrap());
        assert_eq!(dec.triple.f, alg.root_vector(1, 0).unwrap());
        assert!(dec.t.is_zero());
        assert_eq!(dec.blocks.len(), 1);
        let b = &dec.blocks[0];
        assert_eq!((b.d, b.lambda.clone(), b.multiplicity), (3, q(0), 1));
        assert!(verify_coupling(alg, &dec).ok());
    }

    #[test]
    fn staircase_triple_and_t() {
        let alg = Arc::new(build_algebra(AlgebraKind::SL(4)).unwrap());
        let e = alg.from_triples(&[(0, 2, q(1)), (1, 3, q(1))]).unwrap();
        let g = grading_from_diagonal(alg.clone(), vec![qf(3, 2), qf(1, 2), qf(-1, 2), qf(-3, 2)]).unwrap();
        let tr = adapted_triple(&g, &e, &q(2)).unwrap();
        assert_eq!(tr.h, alg.diagonal_element(&[q(1), q(1), q(-1), q(-1)]).unwrap());
        assert_eq!(tr.f, alg.from_triples(&[(2, 0, q(1)), (3, 1, q(1))]).unwrap());
        let t = t_element(&g, &tr, &q(2)).unwrap();
        assert_eq!(t, alg.diagonal_element(&[qf(1, 2), qf(-1, 2), qf(1, 2), qf(-1, 2)]).unwrap());
        let dec = isotypic_decompose(&alg, &tr, &t, &q(2)).unwrap();
        assert_eq!(dec.blocks.iter().map(|b| b.d * b.multiplicity).sum::<usize>(), 15);
        assert_eq!(dec.top_dimension(), 7);
        assert!(verify_coupling(&alg, &dec).ok());
    }

    fn sl11_diag() -> Vec<Rational> {
        [73, 40, 7, -26, -59, -92, 29, -4, -37, 51, 18].iter().map(|&x| qf(x, 11)).collect()
    }

    #[test]
    fn three_block_nilpotent_in_sl11() {
        let (g, dec) = setup(AlgebraKind::SL(11), vec![6, 3, 2], sl11_diag(), 3);
        let alg = g.algebra();
        let h: Vec<Rational> = [5, 3, 1, -1, -3, -5, 2, 0, -2, 1, -1].iter().map(|&x| q(x)).collect();
        assert_eq!(dec.triple.h, alg.diagonal_element(&h).unwrap());
        let want: Vec<Rational> =
            vec![q(-4), qf(-7, 2), qf(-1, 2), q(0), qf(1, 2), qf(7, 2), q(4)];
        assert_eq!(dec.t_eigenvalues(), want);
        let mut nonzero: Vec<(usize, Rational)> =
            dec.blocks.iter().filter(|b| !b.lambda.is_zero()).map(|b| (b.d, b.lambda.clone())).collect();
        nonzero.sort();
        let mut expect = Vec::new();
        for (d, num, den) in [(8, 1, 2), (6, 1, 2), (4, 1, 2), (4, 7, 2), (2, 7, 2), (7, 4, 1), (5, 4, 1)] {
            expect.push((d, qf(num, den)));
            expect.push((d, qf(-num, den)));
        }
        expect.sort();
        assert_eq!(nonzero, expect);
        assert!(dec.weights_admissible());
        assert_eq!(dec.top_dimension(), alg.centralizer(&dec.triple.e).dim());
        assert!(verify_coupling(alg, &dec).ok());
    }

    #[test]
    fn orthogonal_and_symplectic_blocks() {
        for (kind, parts) in [
            (AlgebraKind::SO(7), vec![3, 3, 1]),
            (AlgebraKind::SO(8), vec![2, 2, 1, 1, 1, 1]),
            (AlgebraKind::SP(6), vec![2, 2, 2]),
            (AlgebraKind::SP(8), vec![4, 2, 2]),
        ] {
            let alg = Arc::new(build_algebra(kind).unwrap());
            let jd = jordan_data(&alg, &Partition::new(parts).unwrap()).unwrap();
            let mut diag = jd.h_diag.clone();
            for (i, tor) in jd.torus.iter().enumerate() {
                for (d, t) in diag.iter_mut().zip(tor) {
                    *d += t * qf(i as i64 + 1, 3);
                }
            }
            let g = grading_from_diagonal(alg.clone(), diag).unwrap();
            let tr = adapted_triple(&g, &jd.e, &q(2)).unwrap();
            let t = t_element(&g, &tr, &q(2)).unwrap();
            let dec = isotypic_decompose(&alg, &tr, &t, &q(2)).unwrap();
            assert_eq!(dec.top_dimension(), alg.centralizer(&jd.e).dim(), "{kind}");
            assert!(verify_coupling(&alg, &dec).ok(), "{kind}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn weight_criterion_matches_direct_intersection(
            parts in proptest::collection::vec(1usize..4, 2..4),
            shifts in proptest::collection::vec(-4i64..5, 4),
            a in 2i64..4,
        ) {
            let p = Partition::new(parts).unwrap();
            let n = p.total();
            prop_assume!(n >= 2 && p.parts()[0] >= 2);
            let alg = Arc::new(build_algebra(AlgebraKind::SL(n)).unwrap());
            let jd = jordan_data(&alg, &p).unwrap();
            let mut diag: Vec<Rational> = jd.h_diag.iter().map(|x| x * qf(a, 2)).collect();
            for (tor, s) in jd.torus.iter().zip(&shifts) {
                for (d, t) in diag.iter_mut().zip(tor) {
                    *d += t * qf(*s, 2);
                }
            }
            let g = grading_from_diagonal(alg.clone(), diag).unwrap();
            let tr = adapted_triple(&g, &jd.e, &q(a)).unwrap();
            prop_assert!(tr.relations_hold(&alg));
            let t = t_element(&g, &tr, &q(a)).unwrap();
            let dec = isotypic_decompose(&alg, &tr, &t, &q(a)).unwrap();
            let direct = g.centralizer_range(&jd.e, RangeOp::Le, &q(-a)).is_zero();
            prop_assert_eq!(dec.weights_admissible(), direct);
            prop_assert_eq!(dec.top_dimension(), alg.centralizer(&jd.e).dim());
            for b in &dec.blocks {
                prop_assert!((&b.lambda * q(2)).is_integer());
                for (l, layer) in b.layers.iter().enumerate() {
                    let w = &b.rho + q(a) * q(l as i64);
                    prop_assert!(layer.is_subspace_of(&g.piece(&w)));
                }
            }
        }
    }
}
