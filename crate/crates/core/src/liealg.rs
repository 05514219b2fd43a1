//! Classical simple Lie algebras `sl_n`, `so_n`, `sp_n` realised by matrices.
//!
//! The orthogonal and symplectic algebras preserve the anti-diagonal form
//! `Φ(v_i, v_{n+1-j}) = s_i δ_ij` where `s_i = 1` except for the second half of
//! the symplectic basis, where `s_i = -1`. Diagonal matrices `diag(d_1, …, d_n)`
//! then lie in the algebra exactly when `d_i = -d_{n+1-i}`.
//!
//! The invariant form is the trace form of the defining representation. The
//! Killing form equals `2n·tr` on `sl_n`, `(n-2)·tr` on `so_n` and `(n+2)·tr` on
//! `sp_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{dot, inverse, kernel, kernel_on, q, QMatrix, Rational, Subspace};

/// Sparse `n × n` matrix keyed by `(row, col)`, zero entries omitted.
pub type SparseMat = BTreeMap<(usize, usize), Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    SL(usize),
    SO(usize),
    SP(usize),
}

impl AlgebraKind {
    pub fn n(&self) -> usize {
        match *self {
            AlgebraKind::SL(n) | AlgebraKind::SO(n) | AlgebraKind::SP(n) => n,
        }
    }

    pub fn expected_dim(&self) -> usize {
        match *self {
            AlgebraKind::SL(n) => n * n - 1,
            AlgebraKind::SO(n) => n * (n - 1) / 2,
            AlgebraKind::SP(n) => n * (n + 1) / 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            AlgebraKind::SL(n) if n < 2 => Err(Error::InvalidAlgebra(format!("sl_{n} needs n >= 2"))),
            AlgebraKind::SO(n) if n < 3 => Err(Error::InvalidAlgebra(format!("so_{n} needs n >= 3"))),
            AlgebraKind::SP(n) if n < 2 || n % 2 == 1 => {
                Err(Error::InvalidAlgebra(format!("sp_{n} needs an even n >= 2")))
            }
            _ => Ok(()),
        }
    }

    fn sign(&self, i: usize) -> Rational {
        match *self {
            AlgebraKind::SP(n) if i >= n / 2 => -Rational::one(),
            _ => Rational::one(),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraKind::SL(n) => write!(f, "sl {n}"),
            AlgebraKind::SO(n) => write!(f, "so {n}"),
            AlgebraKind::SP(n) => write!(f, "sp {n}"),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let (Some(name), Some(n), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("expected '<sl|so|sp> <n>', got '{s}'")));
        };
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad size '{n}'")))?;
        let kind = match name.to_ascii_lowercase().as_str() {
            "sl" => AlgebraKind::SL(n),
            "so" => AlgebraKind::SO(n),
            "sp" => AlgebraKind::SP(n),
            other => return Err(Error::Parse(format!("unknown algebra '{other}'"))),
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// What a basis element looks like: a root vector whose leading entry sits at
/// `(row, col)`, or a diagonal element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    Root { row: usize, col: usize },
    Cartan(usize),
}

/// Coordinate vector of an algebra element in the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub coords: Vec<Rational>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element { coords: vec![Rational::zero(); dim] }
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Element { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element { coords: self.coords.iter().map(|a| a * c).collect() }
    }
}

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive and non-empty".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `r_s`: how many parts equal `s`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Checks the size and the orthogonal/symplectic parity rules.
    pub fn check_for(&self, kind: AlgebraKind) -> Result<()> {
        if self.total() != kind.n() {
            return Err(Error::InvalidPartition(format!(
                "parts sum to {} but the algebra acts on dimension {}",
                self.total(),
                kind.n()
            )));
        }
        let bad_parity = |even: bool| {
            self.multiplicities().iter().any(|(&s, &r)| (s % 2 == 0) == even && r % 2 == 1)
        };
        match kind {
            AlgebraKind::SO(_) if bad_parity(true) => Err(Error::InvalidPartition(
                "even parts must occur an even number of times in so".into(),
            )),
            AlgebraKind::SP(_) if bad_parity(false) => Err(Error::InvalidPartition(
                "odd parts must occur an even number of times in sp".into(),
            )),
            _ => Ok(()),
        }
    }

    /// All partitions of `n`, each in decreasing order, listed lexicographically.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A classical simple Lie algebra with its canonical basis, trace-form Gram
/// matrix and structure constants.
#[derive(Debug)]
pub struct MatrixLieAlgebra {
    kind: AlgebraKind,
    basis: Vec<SparseMat>,
    labels: Vec<BasisLabel>,
    root_index: BTreeMap<(usize, usize), usize>,
    form_gram: QMatrix,
    structure: Vec<Vec<(usize, Rational)>>,
}

fn sparse_mul(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out = SparseMat::new();
    for (&(i, k), x) in a {
        for (&(k2, j), y) in b.range((k, 0)..(k + 1, 0)) {
            debug_assert_eq!(k, k2);
            let e = out.entry((i, j)).or_insert_with(Rational::zero);
            *e += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sparse_commutator(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out = sparse_mul(a, b);
    for (k, v) in sparse_mul(b, a) {
        let e = out.entry(k).or_insert_with(Rational::zero);
        *e -= v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sparse_trace_product(a: &SparseMat, b: &SparseMat) -> Rational {
    let mut acc = Rational::zero();
    for (&(i, k), x) in a {
        if let Some(y) = b.get(&(k, i)) {
            acc += x * y;
        }
    }
    acc
}

/// Builds the algebra with its canonical basis.
///
/// `sl_n`: the `E_ij` (`i ≠ j`) in row-major order, then `E_kk - E_{k+1,k+1}`.
/// `so_n`/`sp_n`: one root vector per orbit of `(i, j) ↦ (n+1-j, n+1-i)` in
/// row-major order of its leading entry, then `E_ii - E_{n+1-i,n+1-i}`.
pub fn build_algebra(kind: AlgebraKind) -> Result<MatrixLieAlgebra> {
    kind.validate()?;
    let n = kind.n();
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut root_index = BTreeMap::new();
    let one = Rational::one();
    match kind {
        AlgebraKind::SL(_) => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        root_index.insert((i, j), basis.len());
                        basis.push(SparseMat::from([((i, j), one.clone())]));
                        labels.push(BasisLabel::Root { row: i, col: j });
                    }
                }
            }
            for k in 0..n - 1 {
                basis.push(SparseMat::from([((k, k), one.clone()), ((k + 1, k + 1), -one.clone())]));
                labels.push(BasisLabel::Cartan(k));
            }
        }
        AlgebraKind::SO(_) | AlgebraKind::SP(_) => {
            let bar = |i: usize| n - 1 - i;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let partner = (bar(j), bar(i));
                    if partner == (i, j) {
                        if matches!(kind, AlgebraKind::SP(_)) {
                            root_index.insert((i, j), basis.len());
                            basis.push(SparseMat::from([((i, j), one.clone())]));
                            labels.push(BasisLabel::Root { row: i, col: j });
                        }
                        continue;
                    }
                    if partner < (i, j) {
                        continue;
                    }
                    let c = -(kind.sign(bar(i)) / kind.sign(bar(j)));
                    root_index.insert((i, j), basis.len());
                    basis.push(SparseMat::from([((i, j), one.clone()), (partner, c)]));
                    labels.push(BasisLabel::Root { row: i, col: j });
                }
            }
            for i in 0..n / 2 {
                basis.push(SparseMat::from([((i, i), one.clone()), ((bar(i), bar(i)), -one.clone())]));
                labels.push(BasisLabel::Cartan(i));
            }
        }
    }
    let dim = basis.len();
    if dim != kind.expected_dim() {
        return Err(Error::Verification(format!(
            "basis of {kind} has {dim} elements, expected {}",
            kind.expected_dim()
        )));
    }
    let mut alg = MatrixLieAlgebra {
        kind,
        basis,
        labels,
        root_index,
        form_gram: QMatrix::zeros(dim, dim),
        structure: Vec::new(),
    };
    for a in 0..dim {
        for b in 0..dim {
            let t = sparse_trace_product(&alg.basis[a], &alg.basis[b]);
            alg.form_gram.set(a, b, t);
        }
    }
    let mut structure = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let c = sparse_commutator(&alg.basis[a], &alg.basis[b]);
            structure.push(alg.sparse_coords(&c)?);
        }
    }
    alg.structure = structure;
    Ok(alg)
}

impl MatrixLieAlgebra {
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.kind.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrix(&self, k: usize) -> &SparseMat {
        &self.basis[k]
    }

    pub fn label(&self, k: usize) -> BasisLabel {
        self.labels[k]
    }

    /// Human-readable name of basis element `k`, with 1-based indices.
    pub fn basis_name(&self, k: usize) -> String {
        match self.labels[k] {
            BasisLabel::Root { row, col } => format!("E{},{}", row + 1, col + 1),
            BasisLabel::Cartan(i) => match self.kind {
                AlgebraKind::SL(_) => format!("H{}", i + 1),
                _ => format!("H{}", i + 1),
            },
        }
    }

    pub fn form_gram(&self) -> &QMatrix {
        &self.form_gram
    }

    /// Indices of the diagonal basis elements.
    pub fn cartan_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| matches!(self.labels[k], BasisLabel::Cartan(_))).collect()
    }

    /// Degree of basis element `k` under the diagonal element `diag`.
    pub fn basis_degree(&self, k: usize, diag: &[Rational]) -> Rational {
        match self.labels[k] {
            BasisLabel::Root { row, col } => &diag[row] - &diag[col],
            BasisLabel::Cartan(_) => Rational::zero(),
        }
    }

    /// The defining bilinear form `Φ` of `so`/`sp` as an `n × n` matrix.
    pub fn defining_form(&self) -> Option<QMatrix> {
        let n = self.n();
        match self.kind {
            AlgebraKind::SL(_) => None,
            _ => {
                let mut j = QMatrix::zeros(n, n);
                for i in 0..n {
                    j.set(i, n - 1 - i, self.kind.sign(i));
                }
                Some(j)
            }
        }
    }

    fn sparse_coords(&self, m: &SparseMat) -> Result<Vec<(usize, Rational)>> {
        let n = self.n();
        let mut coords: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut diag = vec![Rational::zero(); n];
        for (&(i, j), v) in m {
            if i == j {
                diag[i] = v.clone();
            } else if let Some(&k) = self.root_index.get(&(i, j)) {
                coords.insert(k, v.clone());
            }
        }
        let cartan = self.cartan_indices();
        match self.kind {
            AlgebraKind::SL(_) => {
                let mut acc = Rational::zero();
                for (k, &idx) in cartan.iter().enumerate() {
                    acc += &diag[k];
                    if !acc.is_zero() {
                        coords.insert(idx, acc.clone());
                    }
                }
            }
            _ => {
                for (i, &idx) in cartan.iter().enumerate() {
                    if !diag[i].is_zero() {
                        coords.insert(idx, diag[i].clone());
                    }
                }
            }
        }
        let mut rebuilt = SparseMat::new();
        for (&k, c) in &coords {
            for (&pos, v) in &self.basis[k] {
                let e = rebuilt.entry(pos).or_insert_with(Rational::zero);
                *e += c * v;
            }
        }
        rebuilt.retain(|_, v| !v.is_zero());
        let mut target = m.clone();
        target.retain(|_, v| !v.is_zero());
        if rebuilt != target {
            return Err(Error::NotInAlgebra);
        }
        Ok(coords.into_iter().collect())
    }

    /// Coordinates of a sparse matrix in the canonical basis.
    pub fn from_sparse(&self, m: &SparseMat) -> Result<Element> {
        let mut e = Element::zero(self.dim());
        for (k, v) in self.sparse_coords(m)? {
            e.coords[k] = v;
        }
        Ok(e)
    }

    pub fn from_matrix(&self, m: &QMatrix) -> Result<Element> {
        let n = self.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
        }
        let mut s = SparseMat::new();
        for i in 0..n {
            for j in 0..n {
                if !m.get(i, j).is_zero() {
                    s.insert((i, j), m.get(i, j).clone());
                }
            }
        }
        self.from_sparse(&s)
    }

    /// Element given by `(row, col, value)` triples with 0-based indices.
    pub fn from_triples(&self, triples: &[(usize, usize, Rational)]) -> Result<Element> {
        let n = self.n();
        let mut s = SparseMat::new();
        for (i, j, v) in triples {
            if *i >= n || *j >= n {
                return Err(Error::DimensionMismatch { expected: n, found: (*i).max(*j) + 1 });
            }
            let e = s.entry((*i, *j)).or_insert_with(Rational::zero);
            *e += v;
        }
        self.from_sparse(&s)
    }

    pub fn to_sparse(&self, x: &Element) -> SparseMat {
        let mut out = SparseMat::new();
        for (k, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (&pos, v) in &self.basis[k] {
                let e = out.entry(pos).or_insert_with(Rational::zero);
                *e += c * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn to_matrix(&self, x: &Element) -> QMatrix {
        let n = self.n();
        let mut m = QMatrix::zeros(n, n);
        for ((i, j), v) in self.to_sparse(x) {
            m.set(i, j, v);
        }
        m
    }

    /// Nonzero entries as `(row, col, value)` with 0-based indices.
    pub fn to_triples(&self, x: &Element) -> Vec<(usize, usize, Rational)> {
        self.to_sparse(x).into_iter().map(|((i, j), v)| (i, j, v)).collect()
    }

    /// Diagonal matrix as an algebra element.
    pub fn diagonal_element(&self, diag: &[Rational]) -> Result<Element> {
        if diag.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: diag.len() });
        }
        let s: SparseMat =
            diag.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| ((i, i), v.clone())).collect();
        self.from_sparse(&s)
    }

    /// The diagonal entries when `x` is a diagonal matrix.
    pub fn as_diagonal(&self, x: &Element) -> Option<Vec<Rational>> {
        let s = self.to_sparse(x);
        if s.keys().any(|&(i, j)| i != j) {
            return None;
        }
        let mut d = vec![Rational::zero(); self.n()];
        for ((i, _), v) in s {
            d[i] = v;
        }
        Some(d)
    }

    /// Root vector whose leading entry is at `(i, j)` (0-based).
    pub fn root_vector(&self, i: usize, j: usize) -> Result<Element> {
        let k = *self.root_index.get(&(i, j)).ok_or(Error::NotInAlgebra)?;
        let mut e = Element::zero(self.dim());
        e.coords[k] = Rational::one();
        Ok(e)
    }

    pub fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = &self.structure[a * dim + b];
                if s.is_empty() {
                    continue;
                }
                let c = xa * yb;
                for (k, v) in s {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        Element { coords: self.bracket_vec(&x.coords, &y.coords) }
    }

    pub fn invariant_form_vec(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.form_gram.bilinear(x, y)
    }

    /// Trace form `tr(xy)` of the defining representation.
    pub fn invariant_form(&self, x: &Element, y: &Element) -> Rational {
        self.invariant_form_vec(&x.coords, &y.coords)
    }

    /// Matrix of `ad x` in the canonical basis (column `k` is `[x, b_k]`).
    pub fn ad_matrix(&self, x: &Element) -> QMatrix {
        let dim = self.dim();
        let mut m = QMatrix::zeros(dim, dim);
        for k in 0..dim {
            let col = self.bracket_vec(&x.coords, &crate::exactlin::unit_vector(dim, k));
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, k, v);
                }
            }
        }
        m
    }

    /// `g^x = ker ad x`.
    pub fn centralizer(&self, x: &Element) -> Subspace {
        kernel(&self.ad_matrix(x))
    }

    /// `[x, U]`.
    pub fn ad_image(&self, x: &[Rational], u: &Subspace) -> Subspace {
        Subspace::span(self.dim(), u.basis().iter().map(|b| self.bracket_vec(x, b)).collect())
    }

    /// `{v ∈ U : [x, v] = 0}`.
    pub fn ad_kernel(&self, x: &[Rational], u: &Subspace) -> Subspace {
        let images: Vec<Vec<Rational>> = u.basis().iter().map(|b| self.bracket_vec(x, b)).collect();
        kernel_on(u, &images)
    }

    /// `[U, V]`.
    pub fn bracket_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut out = Vec::with_capacity(u.dim() * v.dim());
        for a in u.basis() {
            for b in v.basis() {
                out.push(self.bracket_vec(a, b));
            }
        }
        Subspace::span(self.dim(), out)
    }

    /// Whether `[U, U] ⊆ U`.
    pub fn is_subalgebra(&self, u: &Subspace) -> bool {
        let b = u.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| u.contains(&self.bracket_vec(&b[i], &b[j]))))
    }

    /// Span of the diagonal basis elements.
    pub fn cartan_subspace(&self) -> Subspace {
        Subspace::coordinate(self.dim(), self.cartan_indices())
    }
}

/// A partition nilpotent together with a diagonal `h` of a standard triple
/// through it and a basis of the diagonal part of the centraliser of that
/// triple.
#[derive(Clone, Debug)]
pub struct JordanData {
    pub e: Element,
    pub h_diag: Vec<Rational>,
    pub torus: Vec<Vec<Rational>>,
}

/// Standard nilpotent representative of the orbit labelled by `p`.
pub fn nilpotent_from_partition(alg: &MatrixLieAlgebra, p: &Partition) -> Result<Element> {
    Ok(jordan_data(alg, p)?.e)
}

/// Builds the partition representative, its diagonal `h` and the diagonal torus
/// of the triple's centraliser.
pub fn jordan_data(alg: &MatrixLieAlgebra, p: &Partition) -> Result<JordanData> {
    p.check_for(alg.kind())?;
    match alg.kind() {
        AlgebraKind::SL(n) => {
            let mut triples = Vec::new();
            let mut h = Vec::with_capacity(n);
            let mut offsets = Vec::new();
            let mut start = 0;
            for &d in p.parts() {
                offsets.push(start);
                for k in 0..d {
                    h.push(q(d as i64 - 1 - 2 * k as i64));
                    if k + 1 < d {
                        triples.push((start + k, start + k + 1, Rational::one()));
                    }
                }
                start += d;
            }
            let e = alg.from_triples(&triples)?;
            let parts = p.parts();
            let mut torus = Vec::new();
            for b in 0..parts.len().saturating_sub(1) {
                let mut t = vec![Rational::zero(); n];
                for k in 0..parts[b] {
                    t[offsets[b] + k] = q(parts[b + 1] as i64);
                }
                for k in 0..parts[b + 1] {
                    t[offsets[b + 1] + k] = q(-(parts[b] as i64));
                }
                torus.push(t);
            }
            Ok(JordanData { e, h_diag: h, torus })
        }
        _ => form_adapted_jordan(alg, p),
    }
}

#[derive(Clone, Copy)]
enum ChainRole {
    SelfDual,
    PairedWith(usize),
}

/// Orthogonal and symplectic representatives. Chains `u_0 → u_1 → … → u_{d-1}`
/// carry a form making `e` skew; a change of basis by weight vectors then brings
/// the form to the fixed anti-diagonal shape, keeping `h` diagonal.
fn form_adapted_jordan(alg: &MatrixLieAlgebra, p: &Partition) -> Result<JordanData> {
    let kind = alg.kind();
    let n = kind.n();
    let symmetric = matches!(kind, AlgebraKind::SO(_));
    let eps = if symmetric { Rational::one() } else { -Rational::one() };
    let self_dual_parity = if symmetric { 1 } else { 0 };

    let mut chains: Vec<(usize, ChainRole)> = Vec::new();
    for (&d, &r) in p.multiplicities().iter().rev() {
        for _ in 0..r / 2 {
            let c = chains.len();
            chains.push((d, ChainRole::PairedWith(c + 1)));
            chains.push((d, ChainRole::PairedWith(c)));
        }
        if r % 2 == 1 {
            if d % 2 != self_dual_parity {
                return Err(Error::InvalidPartition("parity rule violated".into()));
            }
            chains.push((d, ChainRole::SelfDual));
        }
    }
    let mut offset = Vec::new();
    let mut acc = 0;
    for &(d, _) in &chains {
        offset.push(acc);
        acc += d;
    }
    let weight = |c: usize, k: usize| -(chains[c].0 as i64 - 1) + 2 * k as i64;

    // Signs of the self-dual middle vectors alternate so that the weight-zero
    // part of the form is split.
    let mut sigma = vec![Rational::one(); chains.len()];
    let mut zero_count = 0;
    for (c, &(d, role)) in chains.iter().enumerate() {
        if matches!(role, ChainRole::SelfDual) && d % 2 == 1 {
            let target = if zero_count % 2 == 0 { Rational::one() } else { -Rational::one() };
            let m = (d - 1) / 2;
            let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
            sigma[c] = target * sign;
            zero_count += 1;
        }
    }

    let mut phi0 = QMatrix::zeros(n, n);
    let mut e0 = QMatrix::zeros(n, n);
    for (c, &(d, role)) in chains.iter().enumerate() {
        for k in 0..d {
            if k + 1 < d {
                e0.set(offset[c] + k + 1, offset[c] + k, Rational::one());
            }
            let sgn = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            match role {
                ChainRole::SelfDual => {
                    phi0.set(offset[c] + k, offset[c] + d - 1 - k, sgn * &sigma[c]);
                }
                ChainRole::PairedWith(c2) if c < c2 => {
                    let i = offset[c] + k;
                    let j = offset[c2] + d - 1 - k;
                    phi0.set(i, j, sgn.clone());
                    phi0.set(j, i, &eps * sgn);
                }
                ChainRole::PairedWith(_) => {}
            }
        }
    }
    let skew = e0.transpose().mul(&phi0)?;
    let skew2 = phi0.mul(&e0)?;
    for i in 0..n {
        for j in 0..n {
            if !(skew.get(i, j) + skew2.get(i, j)).is_zero() {
                return Err(Error::Verification("chain form does not make e skew".into()));
            }
        }
    }

    let mut vectors: Vec<Option<Vec<Rational>>> = vec![None; n];
    let mut weights = vec![0i64; n];
    let mut torus_sign: Vec<Vec<i64>> = Vec::new();
    let mut chain_of_position: Vec<Option<usize>> = vec![None; n];
    let unit = |i: usize| crate::exactlin::unit_vector(n, i);

    let mut positives: Vec<(i64, usize, usize)> = Vec::new();
    for (c, &(d, _)) in chains.iter().enumerate() {
        for k in 0..d {
            if weight(c, k) > 0 {
                positives.push((weight(c, k), c, k));
            }
        }
    }
    positives.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let partner_of = |i: usize| -> usize { (0..n).find(|&j| !phi0.get(i, j).is_zero()).expect("nondegenerate") };
    let mut pos = 0;
    for &(w, c, k) in &positives {
        let i = offset[c] + k;
        let j = partner_of(i);
        let scale = phi0.get(i, j).recip();
        vectors[pos] = Some(unit(i));
        vectors[n - 1 - pos] = Some(crate::exactlin::scale(&unit(j), &scale));
        weights[pos] = w;
        weights[n - 1 - pos] = -w;
        chain_of_position[pos] = Some(c);
        chain_of_position[n - 1 - pos] = Some(chain_containing(&offset, &chains, j));
        pos += 1;
    }
    let mut hyperbolic: Vec<(Vec<Rational>, Vec<Rational>, Option<(usize, usize)>)> = Vec::new();
    let mut middles: Vec<usize> = Vec::new();
    for (c, &(d, role)) in chains.iter().enumerate() {
        if d % 2 == 0 {
            continue;
        }
        let i = offset[c] + (d - 1) / 2;
        match role {
            ChainRole::PairedWith(c2) if c < c2 => {
                let j = offset[c2] + (d - 1) / 2;
                let scale = phi0.get(i, j).recip();
                hyperbolic.push((unit(i), crate::exactlin::scale(&unit(j), &scale), Some((c, c2))));
            }
            ChainRole::PairedWith(_) => {}
            ChainRole::SelfDual => middles.push(i),
        }
    }
    let half = Rational::new(1.into(), 2.into());
    let mut it = middles.chunks_exact(2);
    for pair in &mut it {
        let (a, b) = (pair[0], pair[1]);
        let x: Vec<Rational> = unit(a).iter().zip(unit(b)).map(|(u, v)| (u + v) * &half).collect();
        let y: Vec<Rational> = unit(a).iter().zip(unit(b)).map(|(u, v)| u - v).collect();
        hyperbolic.push((x, y, None));
    }
    let leftover = it.remainder().first().copied();
    for (r, (x, y, chains_pair)) in hyperbolic.into_iter().enumerate() {
        vectors[pos + r] = Some(x);
        vectors[n - 1 - pos - r] = Some(y);
        if let Some((c, c2)) = chains_pair {
            chain_of_position[pos + r] = Some(c);
            chain_of_position[n - 1 - pos - r] = Some(c2);
        }
    }
    if let Some(m) = leftover {
        if n % 2 == 0 {
            return Err(Error::Verification("unpaired weight-zero vector in even dimension".into()));
        }
        vectors[n / 2] = Some(unit(m));
    }
    let cols: Vec<Vec<Rational>> = vectors
        .into_iter()
        .map(|v| v.ok_or_else(|| Error::Verification("basis position left empty".into())))
        .collect::<Result<_>>()?;
    let b = QMatrix::from_columns(n, &cols)?;
    let j_target = alg.defining_form().expect("form algebra");
    let gram = b.transpose().mul(&phi0)?.mul(&b)?;
    if gram != j_target {
        return Err(Error::Verification("adapted basis does not realise the anti-diagonal form".into()));
    }
    let binv = inverse(&b)?;
    let e_new = binv.mul(&e0)?.mul(&b)?;
    let e = alg.from_matrix(&e_new)?;

    for (c, &(_, role)) in chains.iter().enumerate() {
        if let ChainRole::PairedWith(c2) = role {
            if c < c2 {
                let t: Vec<i64> = (0..n)
                    .map(|i| match chain_of_position[i] {
                        Some(x) if x == c => 1,
                        Some(x) if x == c2 => -1,
                        _ => 0,
                    })
                    .collect();
                torus_sign.push(t);
            }
        }
    }
    let torus = torus_sign.into_iter().map(|t| t.into_iter().map(q).collect()).collect();
    let h_diag = weights.into_iter().map(q).collect();
    Ok(JordanData { e, h_diag, torus })
}

fn chain_containing(offset: &[usize], chains: &[(usize, ChainRole)], i: usize) -> usize {
    (0..chains.len()).find(|&c| offset[c] <= i && i < offset[c] + chains[c].0).expect("index in a chain")
}

/// Verifies that `x` preserves the defining form: `Φ(xv, w) + Φ(v, xw) = 0`.
pub fn preserves_form(alg: &MatrixLieAlgebra, x: &Element) -> bool {
    match alg.defining_form() {
        None => {
            let m = alg.to_matrix(x);
            (0..alg.n()).fold(Rational::zero(), |acc, i| acc + m.get(i, i)).is_zero()
        }
        Some(j) => {
            let m = alg.to_matrix(x);
            let a = m.transpose().mul(&j).expect("square");
            let b = j.mul(&m).expect("square");
            (0..alg.n()).all(|r| (0..alg.n()).all(|c| (a.get(r, c) + b.get(r, c)).is_zero()))
        }
    }
}

/// `Σ_{i,j} min(d_i, d_j) - 1`, the centraliser dimension of an `sl_n` nilpotent.
pub fn sl_centralizer_dim(p: &Partition) -> usize {
    let parts = p.parts();
    parts.iter().map(|&a| parts.iter().map(|&b| a.min(b)).sum::<usize>()).sum::<usize>() - 1
}

/// Dot product helper for callers that hold plain coordinate vectors.
pub fn coords_dot(x: &[Rational], y: &[Rational]) -> Rational {
    dot(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{qf, rank};

    fn all_kinds() -> Vec<AlgebraKind> {
        vec![
            AlgebraKind::SL(2),
            AlgebraKind::SL(3),
            AlgebraKind::SL(4),
            AlgebraKind::SO(3),
            AlgebraKind::SO(4),
            AlgebraKind::SO(5),
            AlgebraKind::SO(6),
            AlgebraKind::SP(2),
            AlgebraKind::SP(4),
            AlgebraKind::SP(6),
        ]
    }

    #[test]
    fn dimensions_match_formulas() {
        for k in all_kinds() {
            let a = build_algebra(k).unwrap();
            assert_eq!(a.dim(), k.expected_dim(), "{k}");
        }
        assert_eq!(build_algebra(AlgebraKind::SL(4)).unwrap().dim(), 15);
        assert_eq!(build_algebra(AlgebraKind::SO(5)).unwrap().dim(), 10);
        assert!(build_algebra(AlgebraKind::SP(5)).is_err());
    }

    #[test]
    fn sl2_basis_and_relations() {
        let a = build_algebra(AlgebraKind::SL(2)).unwrap();
        assert_eq!(a.basis_name(0), "E1,2");
        assert_eq!(a.basis_name(1), "E2,1");
        let e = a.root_vector(0, 1).unwrap();
        let f = a.root_vector(1, 0).unwrap();
        let h = a.diagonal_element(&[q(1), q(-1)]).unwrap();
        assert_eq!(a.bracket(&e, &f), h);
        assert_eq!(a.bracket(&h, &e), e.scale(&q(2)));
        let adh = a.ad_matrix(&h);
        assert_eq!(adh.get(0, 0), &q(2));
        assert_eq!(adh.get(1, 1), &q(-2));
        assert_eq!(adh.get(2, 2), &q(0));
        assert_eq!(a.invariant_form(&e, &f), q(1));
    }

    #[test]
    fn sl3_commutator() {
        let a = build_algebra(AlgebraKind::SL(3)).unwrap();
        let e13 = a.root_vector(0, 2).unwrap();
        let e32 = a.root_vector(2, 1).unwrap();
        assert_eq!(a.bracket(&e13, &e32), a.root_vector(0, 1).unwrap());
    }

    #[test]
    fn jacobi_and_invariance_on_basis() {
        for k in all_kinds() {
            let a = build_algebra(k).unwrap();
            let d = a.dim();
            let b = |i: usize| crate::exactlin::unit_vector(d, i);
            for x in 0..d {
                for y in 0..d {
                    let xy = a.bracket_vec(&b(x), &b(y));
                    for z in 0..d {
                        let yz = a.bracket_vec(&b(y), &b(z));
                        assert_eq!(
                            a.invariant_form_vec(&b(x), &yz),
                            a.invariant_form_vec(&xy, &b(z)),
                            "{k}"
                        );
                    }
                }
            }
            for x in 0..d.min(8) {
                for y in 0..d {
                    for z in 0..d {
                        let t1 = a.bracket_vec(&b(x), &a.bracket_vec(&b(y), &b(z)));
                        let t2 = a.bracket_vec(&b(y), &a.bracket_vec(&b(z), &b(x)));
                        let t3 = a.bracket_vec(&b(z), &a.bracket_vec(&b(x), &b(y)));
                        for i in 0..d {
                            assert!((&t1[i] + &t2[i] + &t3[i]).is_zero(), "{k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn basis_preserves_form_and_gram_nondegenerate() {
        for k in all_kinds() {
            let a = build_algebra(k).unwrap();
            for i in 0..a.dim() {
                assert!(preserves_form(&a, &Element::from_coords(crate::exactlin::unit_vector(a.dim(), i))));
            }
            assert!(a.form_gram().is_symmetric());
            assert_eq!(rank(a.form_gram()), a.dim(), "{k}");
        }
    }

    #[test]
    fn ad_of_sum_e13_e24_has_rank_eight() {
        let a = build_algebra(AlgebraKind::SL(4)).unwrap();
        let e = a.from_triples(&[(0, 2, q(1)), (1, 3, q(1))]).unwrap();
        assert_eq!(rank(&a.ad_matrix(&e)), 8);
        assert_eq!(a.centralizer(&e).dim(), 7);
    }

    #[test]
    fn ad_of_zero_is_zero() {
        let a = build_algebra(AlgebraKind::SL(3)).unwrap();
        assert!(a.ad_matrix(&Element::zero(a.dim())).is_zero());
        assert_eq!(a.centralizer(&Element::zero(a.dim())).dim(), 8);
    }

    #[test]
    fn sl_partition_representatives() {
        let a = build_algebra(AlgebraKind::SL(11)).unwrap();
        let p = Partition::new(vec![6, 3, 2]).unwrap();
        let jd = jordan_data(&a, &p).unwrap();
        let expected: Vec<(usize, usize, Rational)> =
            (0..10).filter(|&i| i != 5 && i != 8).map(|i| (i, i + 1, q(1))).collect();
        assert_eq!(a.to_triples(&jd.e), expected);
        let h: Vec<Rational> = [5, 3, 1, -1, -3, -5, 2, 0, -2, 1, -1].iter().map(|&x| q(x)).collect();
        assert_eq!(jd.h_diag, h);
        let a4 = build_algebra(AlgebraKind::SL(4)).unwrap();
        let e = nilpotent_from_partition(&a4, &Partition::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(a4.to_triples(&e), vec![(0, 1, q(1)), (2, 3, q(1))]);
        let a2 = build_algebra(AlgebraKind::SL(2)).unwrap();
        let e = nilpotent_from_partition(&a2, &Partition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(a2.to_triples(&e), vec![(0, 1, q(1))]);
    }

    #[test]
    fn sl_centralizer_formula_matches_kernel() {
        for n in 2..=6 {
            let a = build_algebra(AlgebraKind::SL(n)).unwrap();
            for p in Partition::all(n) {
                let e = nilpotent_from_partition(&a, &p).unwrap();
                assert_eq!(a.centralizer(&e).dim(), sl_centralizer_dim(&p), "{p}");
            }
        }
    }

    #[test]
    fn form_partition_representatives_are_consistent() {
        for k in [
            AlgebraKind::SO(3),
            AlgebraKind::SO(5),
            AlgebraKind::SO(6),
            AlgebraKind::SO(7),
            AlgebraKind::SO(8),
            AlgebraKind::SP(4),
            AlgebraKind::SP(6),
            AlgebraKind::SP(8),
        ] {
            let a = build_algebra(k).unwrap();
            for p in Partition::all(k.n()) {
                if p.check_for(k).is_err() {
                    continue;
                }
                let jd = jordan_data(&a, &p).unwrap();
                let h = a.diagonal_element(&jd.h_diag).unwrap();
                assert_eq!(a.bracket(&h, &jd.e), jd.e.scale(&q(2)), "{k} {p}");
                for t in &jd.torus {
                    let te = a.diagonal_element(t).unwrap();
                    assert!(a.bracket(&te, &jd.e).is_zero(), "{k} {p}");
                }
                let m = a.to_matrix(&jd.e);
                let mut pow = m.clone();
                let mut ranks = Vec::new();
                for _ in 0..k.n() {
                    ranks.push(rank(&pow));
                    pow = pow.mul(&m).unwrap();
                }
                let mut expected = Vec::new();
                for s in 1..=k.n() {
                    expected.push(p.parts().iter().map(|&d| d.saturating_sub(s)).sum::<usize>());
                }
                assert_eq!(ranks, expected, "Jordan type of {k} {p}");
            }
        }
    }

    #[test]
    fn parity_rules() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert!(p.check_for(AlgebraKind::SO(3)).is_err());
        assert!(p.check_for(AlgebraKind::SP(3)).is_err());
        let p = Partition::new(vec![2, 2]).unwrap();
        assert!(p.check_for(AlgebraKind::SO(4)).is_ok());
        assert!(p.check_for(AlgebraKind::SP(4)).is_ok());
        let p = Partition::new(vec![3, 1]).unwrap();
        assert!(p.check_for(AlgebraKind::SP(4)).is_err());
    }

    #[test]
    fn diagonal_membership() {
        let a = build_algebra(AlgebraKind::SO(5)).unwrap();
        assert!(a.diagonal_element(&[q(2), q(1), q(0), q(-1), q(-2)]).is_ok());
        assert!(a.diagonal_element(&[q(2), q(1), q(0), q(1), q(-2)]).is_err());
        let s = build_algebra(AlgebraKind::SL(3)).unwrap();
        assert!(s.diagonal_element(&[qf(2, 3), qf(2, 3), qf(-4, 3)]).is_ok());
        assert!(s.diagonal_element(&[q(1), q(1), q(1)]).is_err());
    }
}
