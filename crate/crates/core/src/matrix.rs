//! Constant matrices over the scalar field and square matrices over the
//! Laurent ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::laurent::{Degree, LaurentPoly};
use crate::scalar::{FieldScalar, FieldTag};

/// A square matrix with entries in `Q` or `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConstMatrix {
    dim: usize,
    tag: FieldTag,
    data: Vec<FieldScalar>,
}

impl ConstMatrix {
    pub fn zero(tag: FieldTag, dim: usize) -> Self {
        Self {
            dim,
            tag,
            data: vec![FieldScalar::zero(tag); dim * dim],
        }
    }

    pub fn identity(tag: FieldTag, dim: usize) -> Self {
        let mut m = Self::zero(tag, dim);
        for i in 0..dim {
            m.data[i * dim + i] = FieldScalar::one(tag);
        }
        m
    }

    /// The matrix unit `E_ij` (zero-based indices).
    pub fn unit(tag: FieldTag, dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(tag, dim);
        m.data[i * dim + j] = FieldScalar::one(tag);
        m
    }

    pub fn diagonal(tag: FieldTag, diag: &[FieldScalar]) -> Self {
        let mut m = Self::zero(tag, diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(tag: FieldTag, rows: Vec<Vec<FieldScalar>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::BadParams("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::RankMismatch(dim, row.len()));
            }
            for x in row {
                data.push(x.with_tag(tag)?);
            }
        }
        Ok(Self { dim, tag, data })
    }

    /// Test and fixture helper; panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(tag: FieldTag, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&x| FieldScalar::from_int(tag, x))
                    .collect()
            })
            .collect();
        Self::from_rows(tag, rows).expect("square integer matrix")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldScalar) {
        self.tag = self.tag.join(x.tag());
        self.data[i * self.dim + j] = x;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldScalar]> {
        self.data.chunks(self.dim)
    }

    pub fn with_tag(&self, tag: FieldTag) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.with_tag(tag))
            .collect::<Result<_>>()?;
        Ok(Self {
            dim: self.dim,
            tag,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        Self {
            dim: self.dim,
            tag: self.tag.join(c.tag()),
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(self.tag, n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> FieldScalar {
        (0..self.dim).fold(FieldScalar::zero(self.tag), |acc, i| &acc + self.get(i, i))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// True when the matrix squares to zero.
    pub fn is_square_zero(&self) -> bool {
        self.square().is_zero()
    }

    /// `1 (+) self`, the block-diagonal embedding one dimension up.
    pub fn direct_sum_one(&self) -> Self {
        let n = self.dim + 1;
        let mut out = Self::identity(self.tag, n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[(i + 1) * n + j + 1] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn row_sums(&self) -> Vec<FieldScalar> {
        self.rows()
            .map(|r| {
                r.iter()
                    .fold(FieldScalar::zero(self.tag), |acc, x| &acc + x)
            })
            .collect()
    }

    pub fn det(&self) -> FieldScalar {
        let mut rows: Vec<Vec<FieldScalar>> = self.rows().map(<[_]>::to_vec).collect();
        let n = self.dim;
        let mut det = FieldScalar::one(self.tag);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !rows[r][k].is_zero()) else {
                return FieldScalar::zero(self.tag);
            };
            if p != k {
                rows.swap(p, k);
                det = -det;
            }
            let pivot_inv = rows[k][k].inv().expect("nonzero pivot");
            det = &det * &rows[k][k];
            let (top, rest) = rows.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest {
                let factor = &row[k] * &pivot_inv;
                if factor.is_zero() {
                    continue;
                }
                for (x, p) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<FieldScalar>> = self.rows().map(<[_]>::to_vec).collect();
        rref(rows).1.len()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let aug = self
            .rows()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.to_vec();
                row.extend((0..n).map(|j| FieldScalar::from_int(self.tag, (i == j) as i64)));
                row
            })
            .collect();
        let (red, pivots) = rref(aug);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        let rows = red.into_iter().map(|r| r[n..].to_vec()).collect();
        Self::from_rows(self.tag, rows)
    }

    /// Basis of the right null space `{x : self x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<FieldScalar>> {
        let n = self.dim;
        let (red, pivots) = rref(self.rows().map(<[_]>::to_vec).collect());
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![FieldScalar::zero(self.tag); n];
                v[free] = FieldScalar::one(self.tag);
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&red[row][free];
                }
                v
            })
            .collect()
    }

    /// Solves `self X = rhs`, returning one solution if the system is consistent.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        let n = self.dim;
        let aug = self
            .rows()
            .zip(rhs.rows())
            .map(|(a, b)| [a, b].concat())
            .collect();
        let (red, pivots) = rref(aug);
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let tag = self.tag.join(rhs.tag);
        let mut x = Self::zero(tag, n);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..n {
                x.set(p, j, red[row][n + j].clone());
            }
        }
        Some(x)
    }

    /// Solves `self x = rhs` for a vector, returning one solution if consistent.
    pub fn solve_vec(&self, rhs: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
        let n = self.dim;
        let aug = self
            .rows()
            .zip(rhs)
            .map(|(a, b)| [a, std::slice::from_ref(b)].concat())
            .collect();
        let (red, pivots) = rref(aug);
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = vec![FieldScalar::zero(self.tag); n];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red[row][n].clone();
        }
        Some(x)
    }
}

/// Reduced row echelon form; returns the reduced rows and pivot columns.
fn rref(mut rows: Vec<Vec<FieldScalar>>) -> (Vec<Vec<FieldScalar>>, Vec<usize>) {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..height {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let updated: Vec<_> = rows[i]
                .iter()
                .zip(&rows[r])
                .map(|(x, y)| x - &(&f * y))
                .collect();
            rows[i] = updated;
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

impl Mul for &ConstMatrix {
    type Output = ConstMatrix;
    fn mul(self, rhs: &ConstMatrix) -> ConstMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let tag = self.tag.join(rhs.tag);
        let mut out = ConstMatrix::zero(tag, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &out.data[i * n + j] + &(a * rhs.get(k, j));
                    out.data[i * n + j] = v;
                }
            }
        }
        out
    }
}

impl Add for &ConstMatrix {
    type Output = ConstMatrix;
    fn add(self, rhs: &ConstMatrix) -> ConstMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ConstMatrix {
            dim: self.dim,
            tag: self.tag.join(rhs.tag),
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ConstMatrix {
    type Output = ConstMatrix;
    fn sub(self, rhs: &ConstMatrix) -> ConstMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ConstMatrix {
            dim: self.dim,
            tag: self.tag.join(rhs.tag),
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ConstMatrix {
    type Output = ConstMatrix;
    fn neg(self) -> ConstMatrix {
        ConstMatrix {
            dim: self.dim,
            tag: self.tag,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for ConstMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for ConstMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// An `m x m` matrix over the Laurent ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LPMatrix {
    rank: usize,
    tag: FieldTag,
    entries: Vec<LaurentPoly>,
}

/// Coefficient blocks `A_k0, ..., A_k1` of `A(z) = sum A_k z^-k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    pub k0: i64,
    pub k1: i64,
    pub blocks: Vec<ConstMatrix>,
}

impl BlockForm {
    pub fn genus(&self) -> usize {
        (self.k1 - self.k0 + 1) as usize
    }
}

impl LPMatrix {
    pub fn zero(tag: FieldTag, rank: usize) -> Self {
        Self {
            rank,
            tag,
            entries: vec![LaurentPoly::zero(tag); rank * rank],
        }
    }

    pub fn identity(tag: FieldTag, rank: usize) -> Self {
        Self::from_const(&ConstMatrix::identity(tag, rank))
    }

    pub fn from_const(c: &ConstMatrix) -> Self {
        Self::from_const_at(c, 0)
    }

    /// `c * z^-k`.
    pub fn from_const_at(c: &ConstMatrix, k: i64) -> Self {
        Self {
            rank: c.dim(),
            tag: c.tag(),
            entries: c
                .data
                .iter()
                .map(|x| LaurentPoly::monomial(x.clone(), k))
                .collect(),
        }
    }

    pub fn from_entries(tag: FieldTag, rank: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::BadParams("rank must be at least 1".into()));
        }
        if entries.len() != rank * rank {
            return Err(Error::RankMismatch(rank * rank, entries.len()));
        }
        if entries.iter().any(|e| e.tag() != tag) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { rank, tag, entries })
    }

    /// Builds `sum A_k z^-k` from `(k, A_k)` pairs; repeated powers add up.
    pub fn from_blocks(tag: FieldTag, rank: usize, blocks: &[(i64, ConstMatrix)]) -> Result<Self> {
        let mut out = Self::zero(tag, rank);
        for (k, b) in blocks {
            if b.dim() != rank {
                return Err(Error::RankMismatch(rank, b.dim()));
            }
            if b.tag() != tag {
                return Err(Error::FieldMismatch);
            }
            out = &out + &Self::from_const_at(b, *k);
        }
        Ok(out)
    }

    /// The type-I elementary matrix `I + f E_ij` (zero-based `i != j`).
    pub fn elementary(tag: FieldTag, rank: usize, i: usize, j: usize, f: &LaurentPoly) -> Self {
        let mut m = Self::identity(tag.join(f.tag()), rank);
        m.set(i, j, f.clone());
        m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.rank + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.tag = self.tag.join(p.tag());
        self.entries[i * self.rank + j] = p;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn with_tag(&self, tag: FieldTag) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.with_tag(tag))
            .collect::<Result<_>>()?;
        Ok(Self {
            rank: self.rank,
            tag,
            entries,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.all_entries(|i, j, p| if i == j { p.is_one() } else { p.is_zero() })
    }

    fn all_entries(&self, f: impl Fn(usize, usize, &LaurentPoly) -> bool) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| f(i, j, self.get(i, j))))
    }

    /// Range `(k0, k1)` of powers `z^-k` with nonzero coefficient blocks.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self
            .entries
            .iter()
            .filter_map(LaurentPoly::low_degree)
            .min()?;
        let hi = self.entries.iter().filter_map(LaurentPoly::degree).max()?;
        Some((lo, hi))
    }

    /// `k1 - k0 + 1`; zero for the zero matrix.
    pub fn genus(&self) -> usize {
        self.support().map_or(0, |(lo, hi)| (hi - lo + 1) as usize)
    }

    /// Highest power of `t = z^-1` present.
    pub fn t_degree(&self) -> Degree {
        self.entries.iter().filter_map(LaurentPoly::degree).max()
    }

    /// No positive powers of `z` anywhere.
    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_polynomial)
    }

    /// Coefficient block of `z^-k`.
    pub fn block(&self, k: i64) -> ConstMatrix {
        ConstMatrix {
            dim: self.rank,
            tag: self.tag,
            data: self.entries.iter().map(|p| p.coeff(k)).collect(),
        }
    }

    /// Multiplies every entry by `z^-k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            rank: self.rank,
            tag: self.tag,
            entries: self.entries.iter().map(|p| p.shift(k)).collect(),
        }
    }

    /// `self * m` for a constant `m`, without polynomial convolution.
    pub fn mul_const(&self, m: &ConstMatrix) -> Self {
        assert_eq!(self.rank, m.dim(), "rank mismatch");
        let n = self.rank;
        let mut out = LPMatrix::zero(self.tag.join(m.tag()), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = m.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &a.scale(b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        Self {
            rank: self.rank,
            tag: self.tag.join(c.tag()),
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.rank;
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rank: n,
            tag: self.tag,
            entries,
        }
    }

    pub fn adjoint(&self) -> Self {
        let t = self.transpose();
        Self {
            rank: t.rank,
            tag: t.tag,
            entries: t.entries.iter().map(LaurentPoly::adjoint).collect(),
        }
    }

    pub fn eval_one(&self) -> ConstMatrix {
        ConstMatrix {
            dim: self.rank,
            tag: self.tag,
            data: self.entries.iter().map(LaurentPoly::eval_one).collect(),
        }
    }

    pub fn det(&self) -> LaurentPoly {
        if self.rank <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> LaurentPoly {
        let idx: Vec<usize> = (0..self.rank).collect();
        cofactor_det(self, 0, &idx)
    }

    /// Fraction-free elimination in `F[t]` after clearing negative powers.
    pub fn det_bareiss(&self) -> LaurentPoly {
        let n = self.rank;
        let shift = self.support().map_or(0, |(lo, _)| (-lo).max(0));
        let mut m: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).shift(shift)).collect())
            .collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(self.tag);
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return LaurentPoly::zero(self.tag);
                };
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .exact_div(&prev)
                        .expect("polynomial operands")
                        .expect("Bareiss division is exact");
                }
                m[i][k] = LaurentPoly::zero(self.tag);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].shift(-shift * n as i64);
        if negate {
            -d
        } else {
            d
        }
    }

    /// Inverse through the adjugate; only defined for determinant one.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.det().is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(self.adjugate())
    }

    pub fn adjugate(&self) -> Self {
        let n = self.rank;
        if n == 1 {
            return Self::identity(self.tag, 1);
        }
        let mut out = Self::zero(self.tag, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j).det();
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                out.entries[j * n + i] = cof;
            }
        }
        out
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.rank;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rank: n - 1,
            tag: self.tag,
            entries,
        }
    }

    pub fn to_block_form(&self) -> Result<BlockForm> {
        let (k0, k1) = self.support().ok_or(Error::ZeroMatrix)?;
        Ok(BlockForm {
            k0,
            k1,
            blocks: (k0..=k1).map(|k| self.block(k)).collect(),
        })
    }

    pub fn from_block_form(bf: &BlockForm) -> Result<Self> {
        let first = bf.blocks.first().ok_or(Error::ZeroMatrix)?;
        let pairs: Vec<_> = (bf.k0..).zip(bf.blocks.iter().cloned()).collect();
        Self::from_blocks(first.tag(), first.dim(), &pairs)
    }

    /// For `det = c z^-b`, returns `(b, c)`.
    pub fn monomial_det_exponent(&self) -> Result<(i64, FieldScalar)> {
        let d = self.det();
        let mut terms = d.terms();
        match (terms.next(), terms.next()) {
            (Some((b, c)), None) => Ok((b, c.clone())),
            _ => Err(Error::NotMonomialDet),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.rank != rhs.rank {
            return Err(Error::RankMismatch(self.rank, rhs.rank));
        }
        if self.tag != rhs.tag {
            return Err(Error::FieldMismatch);
        }
        Ok(self * rhs)
    }
}

fn cofactor_det(m: &LPMatrix, row: usize, cols: &[usize]) -> LaurentPoly {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = LaurentPoly::zero(m.tag);
    for (n, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a * &cofactor_det(m, row + 1, &rest);
        acc = if n % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

pub fn mat_mul(a: &LPMatrix, b: &LPMatrix) -> Result<LPMatrix> {
    a.checked_mul(b)
}

pub fn mat_adjoint(a: &LPMatrix) -> LPMatrix {
    a.adjoint()
}

pub fn mat_det(a: &LPMatrix) -> LaurentPoly {
    a.det()
}

pub fn mat_inverse_unimodular(a: &LPMatrix) -> Result<LPMatrix> {
    a.inverse_unimodular()
}

pub fn mat_eval_one(a: &LPMatrix) -> ConstMatrix {
    a.eval_one()
}

impl Mul for &LPMatrix {
    type Output = LPMatrix;
    fn mul(self, rhs: &LPMatrix) -> LPMatrix {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let n = self.rank;
        let mut out = LPMatrix::zero(self.tag.join(rhs.tag), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * n + j] += &(a * b);
                }
            }
        }
        out
    }
}

impl Add for &LPMatrix {
    type Output = LPMatrix;
    fn add(self, rhs: &LPMatrix) -> LPMatrix {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        LPMatrix {
            rank: self.rank,
            tag: self.tag.join(rhs.tag),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &LPMatrix {
    type Output = LPMatrix;
    fn sub(self, rhs: &LPMatrix) -> LPMatrix {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        LPMatrix {
            rank: self.rank,
            tag: self.tag.join(rhs.tag),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for LPMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.chunks(self.rank))
            .finish()
    }
}
