//! Ready-made problem instances: a catalog of hand-picked gradings and a
//! seeded generator of random admissible gradings of partition nilpotents.

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactlin::{q, qf, Rational};
use crate::grading::{grading_from_diagonal, is_admissible_grading, Grading};
use crate::liealg::{build_algebra, jordan_data, AlgebraKind, Element, Partition};

/// A grading with a nilpotent `e` of degree `a`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub grading: Grading,
    pub e: Element,
    pub a: Rational,
    pub partition: Option<Partition>,
}

impl Instance {
    pub fn algebra(&self) -> &Arc<crate::liealg::MatrixLieAlgebra> {
        self.grading.algebra()
    }
}

fn sl_instance(name: &str, n: usize, e: &[(usize, usize)], diag: &[(i64, i64)], a: i64) -> Instance {
    let alg = Arc::new(build_algebra(AlgebraKind::SL(n)).expect("valid size"));
    let triples: Vec<_> = e.iter().map(|&(i, j)| (i - 1, j - 1, q(1))).collect();
    let e = alg.from_triples(&triples).expect("off-diagonal entries");
    let diag = diag.iter().map(|&(p, d)| qf(p, d)).collect();
    let grading = grading_from_diagonal(alg, diag).expect("traceless diagonal");
    Instance { name: name.into(), grading, e, a: q(a), partition: None }
}

/// `sl_3`, `e = E13`, `h_Γ = diag(2, 2, -4)/3`.
pub fn corner_sl3() -> Instance {
    sl_instance("corner-sl3", 3, &[(1, 3)], &[(2, 3), (2, 3), (-4, 3)], 2)
}

/// `sl_3`, `e = E13`, `h_Γ = diag(4, -2, -2)/3`.
pub fn corner_sl3_mirror() -> Instance {
    sl_instance("corner-sl3-mirror", 3, &[(1, 3)], &[(4, 3), (-2, 3), (-2, 3)], 2)
}

/// `sl_3`, `e = E13` with its Dynkin grading `diag(1, 0, -1)`.
pub fn corner_sl3_dynkin() -> Instance {
    sl_instance("corner-sl3-dynkin", 3, &[(1, 3)], &[(1, 1), (0, 1), (-1, 1)], 2)
}

/// `sl_4`, `e = E13 + E24`, `h_Γ = diag(3, 1, -1, -3)/2`.
pub fn staircase_sl4() -> Instance {
    sl_instance("staircase-sl4", 4, &[(1, 3), (2, 4)], &[(3, 2), (1, 2), (-1, 2), (-3, 2)], 2)
}

/// `sl_11`, `e` with Jordan blocks `(6, 3, 2)`, a non-optimal grading with `a = 3`.
pub fn three_block_sl11() -> Instance {
    let e: Vec<_> = (1..=10).filter(|i| *i != 6 && *i != 9).map(|i| (i, i + 1)).collect();
    let diag = [73, 40, 7, -26, -59, -92, 29, -4, -37, 51, 18].map(|x| (x, 11));
    let mut inst = sl_instance("three-block-sl11", 11, &e, &diag, 3);
    inst.partition = Some(Partition::new(vec![6, 3, 2]).expect("positive parts"));
    inst
}

/// `sl_8`, `e` with two Jordan blocks of size 4, `a = 3`.
pub fn twin_block_sl8() -> Instance {
    let e = [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8)];
    let diag = [(7, 2), (1, 2), (-5, 2), (-11, 2), (11, 2), (5, 2), (-1, 2), (-7, 2)];
    let mut inst = sl_instance("twin-block-sl8", 8, &e, &diag, 3);
    inst.partition = Some(Partition::new(vec![4, 4]).expect("positive parts"));
    inst
}

/// The Dynkin grading of a partition nilpotent.
pub fn dynkin_instance(kind: AlgebraKind, p: &Partition) -> Result<Instance> {
    let alg = Arc::new(build_algebra(kind)?);
    let jd = jordan_data(&alg, p)?;
    let grading = grading_from_diagonal(alg, jd.h_diag)?;
    Ok(Instance { name: format!("dynkin-{kind}-{p}").replace(' ', ""), grading, e: jd.e, a: q(2), partition: Some(p.clone()) })
}

pub fn catalog() -> Vec<Instance> {
    vec![corner_sl3(), corner_sl3_mirror(), corner_sl3_dynkin(), staircase_sl4(), three_block_sl11(), twin_block_sl8()]
}

pub fn by_name(name: &str) -> Option<Instance> {
    catalog().into_iter().find(|i| i.name == name)
}

/// Algebra kinds of matrix size `2..=max_n`.
pub fn kinds_up_to(max_n: usize) -> Vec<AlgebraKind> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(AlgebraKind::SL(n));
        if n >= 3 {
            out.push(AlgebraKind::SO(n));
        }
        if n % 2 == 0 {
            out.push(AlgebraKind::SP(n));
        }
    }
    out
}

/// A random admissible `Z`-grading `(a/2) h + Σ c_i t_i` of a random
/// partition nilpotent of `kind`, with `t_i` spanning the diagonal torus
/// centralising the standard triple. Falls back to the Dynkin grading.
pub fn random_instance_of(rng: &mut ChaCha8Rng, kind: AlgebraKind) -> Result<Instance> {
    let alg = Arc::new(build_algebra(kind)?);
    let parts: Vec<Partition> =
        Partition::all(kind.n()).into_iter().filter(|p| p.check_for(kind).is_ok() && p.parts()[0] > 1).collect();
    let p = parts.choose(rng).expect("some partition is valid").clone();
    let jd = jordan_data(&alg, &p)?;
    let a = q(rng.gen_range(2..=4));
    for _ in 0..64 {
        let half = &a / q(2);
        let mut diag: Vec<Rational> = jd.h_diag.iter().map(|h| &half * h).collect();
        for t in &jd.torus {
            let c = qf(rng.gen_range(-3..=3), rng.gen_range(1..=4));
            if c.is_zero() {
                continue;
            }
            for (x, y) in diag.iter_mut().zip(t) {
                *x += &c * y;
            }
        }
        let grading = grading_from_diagonal(alg.clone(), diag)?;
        if grading.is_integral() && is_admissible_grading(&grading, &jd.e, &a)? {
            let name = format!("random-{kind}-{p}-a{a}").replace(' ', "");
            return Ok(Instance { name, grading, e: jd.e, a, partition: Some(p) });
        }
    }
    let a = q(2);
    let grading = grading_from_diagonal(alg, jd.h_diag)?;
    let name = format!("random-{kind}-{p}-dynkin").replace(' ', "");
    Ok(Instance { name, grading, e: jd.e, a, partition: Some(p) })
}

/// `count` random instances over the kinds of size at most `max_n`.
pub fn random_instances(seed: u64, count: usize, max_n: usize) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = kinds_up_to(max_n);
    (0..count)
        .map(|_| {
            let kind = *kinds.choose(&mut rng).expect("nonempty");
            random_instance_of(&mut rng, kind)
        })
        .collect()
}

/// Random instances in `sl_n` only.
pub fn random_sl_instances(seed: u64, count: usize, max_n: usize) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            random_instance_of(&mut rng, AlgebraKind::SL(n))
        })
        .collect()
}
