//! Exact rational linear algebra.
//!
//! Every subspace is stored through its reduced row echelon basis, so two
//! [`Subspace`] values are equal exactly when they describe the same space.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`; panics when `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Formats as `p` or `p/q`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

/// `u + c v`, in place.
pub fn axpy(u: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in u.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn scale(v: &[Rational], c: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * c).collect()
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from its rows; all rows must share `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(QMatrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Bilinear evaluation `u^T M v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc += a * dot(self.row(i), v);
        }
        acc
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row reduces `rows` in place and returns the pivot columns. Zero rows are dropped.
fn rref_rows(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = -row[c].clone();
            axpy(row, &factor, &pivot_row);
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut rows = m.row_vecs();
    let pivots = rref_rows(&mut rows, m.cols);
    let mut out = QMatrix::zeros(m.rows, m.cols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    (out, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Null space of `rows` (each of length `cols`).
fn kernel_of_rows(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref_rows(&mut rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        out.push(v);
    }
    out
}

/// Null space of a matrix.
pub fn kernel(m: &QMatrix) -> Subspace {
    Subspace::span(m.cols, kernel_of_rows(m.row_vecs(), m.cols))
}

/// A linear subspace of `Q^ambient`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, 0..ambient)
    }

    /// Span of the listed coordinate vectors.
    pub fn coordinate(ambient: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = idx.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx.iter().map(|&i| unit_vector(ambient, i)).collect();
        Subspace { ambient, basis, pivots: idx }
    }

    /// Span of arbitrary vectors; each must have length `ambient`.
    pub fn span(ambient: usize, vecs: Vec<Vec<Rational>>) -> Self {
        let mut rows: Vec<Vec<Rational>> = vecs.into_iter().filter(|v| !is_zero_vec(v)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref_rows(&mut rows, ambient);
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn try_span(ambient: usize, vecs: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = vecs.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
        }
        Ok(Self::span(ambient, vecs))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the echelon basis, or `None` when `v` lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coeffs: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            axpy(&mut r, &-c.clone(), b);
        }
        if is_zero_vec(&r) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient && self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Linear functionals (as vectors) cutting out this subspace.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        kernel_of_rows(self.basis.clone(), self.ambient)
    }

    /// Vectors in the span with coordinate sum `Σ c_i b_i`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            axpy(&mut v, c, b);
        }
        v
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = b.iter().map(fmt_rational).collect();
            write!(f, "({})", cells.join(" "))?;
        }
        write!(f, "}}")
    }
}

fn check_ambient(u: &Subspace, v: &Subspace) -> Result<()> {
    if u.ambient != v.ambient {
        return Err(Error::DimensionMismatch { expected: u.ambient, found: v.ambient });
    }
    Ok(())
}

pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    check_ambient(u, v)?;
    if u.is_zero() {
        return Ok(v.clone());
    }
    if v.is_zero() {
        return Ok(u.clone());
    }
    let mut all = u.basis.clone();
    all.extend(v.basis.iter().cloned());
    Ok(Subspace::span(u.ambient, all))
}

/// Sum of many subspaces of a common ambient space.
pub fn sum_all<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a Subspace>) -> Subspace {
    let mut all = Vec::new();
    for p in parts {
        debug_assert_eq!(p.ambient, ambient);
        all.extend(p.basis.iter().cloned());
    }
    Subspace::span(ambient, all)
}

/// Elements `Σ a_i u_i` of `u` satisfying every functional in `constraints`.
pub fn restrict_by(u: &Subspace, constraints: &[Vec<Rational>]) -> Subspace {
    if u.is_zero() || constraints.is_empty() {
        return u.clone();
    }
    let rows: Vec<Vec<Rational>> = constraints
        .iter()
        .map(|c| u.basis.iter().map(|b| dot(c, b)).collect())
        .collect();
    let combos = kernel_of_rows(rows, u.dim());
    Subspace::span(u.ambient, combos.iter().map(|a| u.combine(a)).collect())
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    check_ambient(u, v)?;
    if u.is_zero() || v.is_zero() {
        return Ok(Subspace::zero(u.ambient));
    }
    if u.dim() > v.dim() {
        return Ok(restrict_by(v, &u.annihilator()));
    }
    Ok(restrict_by(u, &v.annihilator()))
}

/// A complement `C` of `u` inside `w` obtained by completing the echelon basis of
/// `u` with the earliest echelon basis vectors of `w`.
pub fn complement_within(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    check_ambient(u, w)?;
    if !u.is_subspace_of(w) {
        return Err(Error::NotContained);
    }
    let mut acc = u.clone();
    let mut chosen = Vec::new();
    for b in &w.basis {
        if acc.dim() == w.dim() {
            break;
        }
        if !acc.contains(b) {
            let mut rows = acc.basis.clone();
            rows.push(b.clone());
            acc = Subspace::span(u.ambient, rows);
            chosen.push(b.clone());
        }
    }
    Ok(Subspace::span(u.ambient, chosen))
}

/// `{w ∈ W : B(x, w) = 0 for all x ∈ U}`.
pub fn orth_complement(u: &Subspace, b: &QMatrix, w: &Subspace) -> Result<Subspace> {
    check_ambient(u, w)?;
    if b.rows() != u.ambient || b.cols() != u.ambient {
        return Err(Error::DimensionMismatch { expected: u.ambient, found: b.rows() });
    }
    let constraints: Vec<Vec<Rational>> = u
        .basis
        .iter()
        .map(|x| (0..b.cols()).map(|j| (0..b.rows()).fold(Rational::zero(), |acc, i| {
            if x[i].is_zero() || b.get(i, j).is_zero() { acc } else { acc + &x[i] * b.get(i, j) }
        })).collect())
        .collect();
    Ok(restrict_by(w, &constraints))
}

/// Kernel of a linear map restricted to `domain`, given the images of the
/// domain's echelon basis vectors.
pub fn kernel_on(domain: &Subspace, images: &[Vec<Rational>]) -> Subspace {
    if domain.is_zero() {
        return domain.clone();
    }
    let out_dim = images.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Rational>> =
        (0..out_dim).map(|k| images.iter().map(|img| img[k].clone()).collect()).collect();
    let combos = kernel_of_rows(rows, domain.dim());
    Subspace::span(domain.ambient, combos.iter().map(|a| domain.combine(a)).collect())
}

/// Solves `Σ x_i cols_i = target`; returns the solution with free variables set
/// to zero, or `None` when the system is inconsistent.
pub fn solve_combination(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = cols.len();
    let m = target.len();
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut r: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Exact inverse of a square matrix.
pub fn inverse(m: &QMatrix) -> Result<QMatrix> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.cols() });
    }
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(unit_vector(n, i));
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    QMatrix::from_rows(n, rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rref_identity_and_rank_one() {
        let id = QMatrix::identity(2);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);
        let m = QMatrix::from_rows(2, vec![v(&[1, 2]), v(&[2, 4])]).unwrap();
        let (r, p) = rref(&m);
        assert_eq!(r, QMatrix::from_rows(2, vec![v(&[1, 2]), v(&[0, 0])]).unwrap());
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(kernel(&QMatrix::identity(3)).is_zero());
        assert_eq!(kernel(&QMatrix::zeros(3, 3)), Subspace::full(3));
    }

    #[test]
    fn complement_examples() {
        let full = Subspace::full(3);
        assert_eq!(complement_within(&Subspace::zero(3), &full).unwrap(), full);
        assert!(complement_within(&full, &full).unwrap().is_zero());
        let line = Subspace::span(3, vec![v(&[1, 0, 0])]);
        assert_eq!(complement_within(&line, &full).unwrap(), Subspace::coordinate(3, [1, 2]));
        let other = Subspace::span(3, vec![v(&[0, 1, 0])]);
        assert!(matches!(complement_within(&line, &other), Err(Error::NotContained)));
    }

    #[test]
    fn orth_complement_of_zero_is_whole() {
        let g = QMatrix::identity(3);
        let w = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(orth_complement(&Subspace::zero(3), &g, &w).unwrap(), w);
    }

    #[test]
    fn intersection_and_sum() {
        let u = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(subspace_intersect(&u, &w).unwrap(), Subspace::coordinate(3, [1]));
        assert_eq!(subspace_sum(&u, &w).unwrap(), Subspace::full(3));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(fmt_rational(&qf(4, 2)), "2");
        assert_eq!(fmt_rational(&qf(-7, 2)), "-7/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_rows(2, vec![v(&[2, 1]), v(&[1, 1])]).unwrap();
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        assert!(inverse(&QMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn solve_combination_consistent_and_not() {
        let cols = vec![v(&[1, 0]), v(&[1, 0])];
        assert_eq!(solve_combination(&cols, &v(&[3, 0])), Some(v(&[3, 0])));
        assert_eq!(solve_combination(&cols, &v(&[0, 1])), None);
    }

    fn vectors(ambient: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        proptest::collection::vec(proptest::collection::vec(-2i64..3, ambient), 0..=max)
            .prop_map(|rows| rows.into_iter().map(|r| v(&r)).collect())
    }

    fn pair_of_spans() -> impl Strategy<Value = (usize, Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
        (1usize..6).prop_flat_map(|n| (Just(n), vectors(n, 4), vectors(n, 4)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sum_and_intersection_dimensions_balance((n, us, vs) in pair_of_spans()) {
            let (u, w) = (Subspace::span(n, us), Subspace::span(n, vs));
            let sum = subspace_sum(&u, &w).unwrap();
            let cap = subspace_intersect(&u, &w).unwrap();
            prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
            prop_assert!(cap.is_subspace_of(&u) && cap.is_subspace_of(&w));
        }

        #[test]
        fn complement_is_direct_within((n, us, vs) in pair_of_spans()) {
            let u = Subspace::span(n, us.clone());
            let w = Subspace::span(n, us.into_iter().chain(vs).collect());
            let c = complement_within(&u, &w).unwrap();
            prop_assert_eq!(subspace_sum(&u, &c).unwrap(), w);
            prop_assert!(subspace_intersect(&u, &c).unwrap().is_zero());
        }

        #[test]
        fn rref_is_idempotent_and_kernel_is_exact((n, rows, _) in pair_of_spans()) {
            prop_assume!(!rows.is_empty());
            let m = QMatrix::from_rows(n, rows).unwrap();
            let (r, p) = rref(&m);
            prop_assert_eq!(rref(&r), (r.clone(), p.clone()));
            let k = kernel(&m);
            prop_assert_eq!(k.dim() + p.len(), n);
            for x in k.basis() {
                prop_assert!(is_zero_vec(&m.mul_vec(x)));
            }
        }

        #[test]
        fn orthogonal_complement_has_expected_dimension(
            (n, us, _) in pair_of_spans(),
            diag in proptest::collection::vec(-2i64..3, 5),
        ) {
            let u = Subspace::span(n, us);
            let mut b = QMatrix::zeros(n, n);
            for i in 0..n {
                b.set(i, i, q(diag[i]));
            }
            let perp = orth_complement(&u, &b, &Subspace::full(n)).unwrap();
            prop_assert!(perp.dim() + u.dim() >= n);
            if diag[..n].iter().all(|&x| x != 0) {
                prop_assert_eq!(perp.dim() + u.dim(), n);
            }
        }
    }
}
