//! General-rank factorization: type-I diagonalization, elementary splitting
//! and the constant sweep.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{ConstMatrix, LPMatrix};
use crate::pseudoidentity::check_left_member;
use crate::scalar::{FieldScalar, FieldTag};

use super::primitive::{Elementary, NilFactorization, PrimitiveFactor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpSide {
    /// `W <- (I + f E_ij) W`: row `i` gains `f` times row `j`.
    LeftRow,
    /// `W <- W (I + f E_ij)`: column `j` gains `f` times column `i`.
    RightCol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryOpRecord {
    pub side: OpSide,
    pub op: Elementary,
}

/// Result of reducing `C` with type-I operations.
///
/// With left ops `P_1, ..., P_u` and right ops `Q_1, ..., Q_s` in the order
/// they were applied, `P_u ... P_1 C Q_1 ... Q_s = diag`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    pub rank: usize,
    pub tag: FieldTag,
    pub left_ops: Vec<ElementaryOpRecord>,
    pub right_ops: Vec<ElementaryOpRecord>,
    pub diag: ConstMatrix,
}

impl Diagonalization {
    /// Applies the recorded operations to `c` again.
    pub fn replay(&self, c: &LPMatrix) -> LPMatrix {
        let mut w = c.clone();
        for rec in &self.left_ops {
            w = &rec.op.matrix(self.rank, self.tag) * &w;
        }
        for rec in &self.right_ops {
            w = &w * &rec.op.matrix(self.rank, self.tag);
        }
        w
    }
}

struct Reducer {
    w: Vec<Vec<LaurentPoly>>,
    left: Vec<ElementaryOpRecord>,
}

impl Reducer {
    fn row_op(&mut self, i: usize, j: usize, f: LaurentPoly) {
        if f.is_zero() {
            return;
        }
        let src = self.w[j].clone();
        for (x, y) in self.w[i].iter_mut().zip(&src) {
            *x = &*x + &(&f * y);
        }
        self.left.push(ElementaryOpRecord {
            side: OpSide::LeftRow,
            op: Elementary { i, j, f },
        });
    }

    /// Row swap with sign, as `(I + E_sp)(I - E_ps)(I + E_sp)`.
    fn swap_rows(&mut self, s: usize, p: usize, tag: FieldTag) {
        let one = LaurentPoly::one(tag);
        self.row_op(s, p, one.clone());
        self.row_op(p, s, -&one);
        self.row_op(s, p, one);
    }

    fn row_degree(&self, i: usize) -> Option<i64> {
        self.w[i].iter().map(LaurentPoly::degree).max().flatten()
    }

    /// Lowers one row degree by cancelling a dependency among the leading
    /// row coefficients. Returns false once those coefficients are independent.
    fn reduce_step(&mut self, tag: FieldTag) -> Result<bool> {
        let n = self.w.len();
        let degs: Vec<i64> = (0..n)
            .map(|i| self.row_degree(i).ok_or(Error::NotUnimodular))
            .collect::<Result<_>>()?;
        let mut lead = ConstMatrix::zero(tag, n);
        for (i, &d) in degs.iter().enumerate() {
            for j in 0..n {
                lead.set(i, j, self.w[i][j].coeff(d));
            }
        }
        // alpha^T lead = 0 with alpha = conj(v), lead^* v = 0
        let Some(v) = lead.conj_transpose().kernel().into_iter().next() else {
            return Ok(false);
        };
        let alpha: Vec<FieldScalar> = v.iter().map(FieldScalar::conj).collect();
        let i = (0..n)
            .filter(|&r| !alpha[r].is_zero())
            .max_by_key(|&r| (degs[r], std::cmp::Reverse(r)))
            .expect("nonzero");
        let inv = alpha[i].inv()?;
        for j in (0..n).filter(|&j| j != i && !alpha[j].is_zero()) {
            let c = &alpha[j] * &inv;
            let d = degs[i] - degs[j];
            let mut f = LaurentPoly::monomial(c.clone(), d);
            if d > 0 {
                f = &f - &LaurentPoly::constant(c);
            }
            self.row_op(i, j, f);
        }
        Ok(true)
    }
}

/// Reduces a unimodular polynomial matrix to a constant diagonal using only
/// determinant-one row operations.
///
/// Row degrees are lowered one at a time by subtracting monomial multiples
/// `c t^(d_i - d_j)` of other rows, so no entry ever exceeds `deg_t C` and
/// every multiplier has degree at most `deg_t C`. The constant matrix left
/// over is then diagonalized by ordinary elimination.
pub fn diagonalize_type1(c: &LPMatrix) -> Result<Diagonalization> {
    if !c.is_polynomial() {
        return Err(Error::SupportViolation);
    }
    if !c.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    let n = c.rank();
    let tag = c.tag();
    let mut red = Reducer {
        w: (0..n)
            .map(|i| (0..n).map(|j| c.get(i, j).clone()).collect())
            .collect(),
        left: Vec::new(),
    };
    while red.reduce_step(tag)? {}
    if (0..n).any(|i| red.row_degree(i) != Some(0)) {
        return Err(Error::NotUnimodular);
    }
    for s in 0..n {
        let p = (s..n)
            .find(|&r| !red.w[r][s].is_zero())
            .ok_or(Error::NotUnimodular)?;
        if p != s {
            red.swap_rows(s, p, tag);
        }
        let pivot = red.w[s][s].eval_one();
        for r in (0..n).filter(|&r| r != s) {
            let x = red.w[r][s].eval_one();
            if !x.is_zero() {
                red.row_op(r, s, LaurentPoly::constant(-&x.checked_div(&pivot)?));
            }
        }
    }
    let diag: Vec<FieldScalar> = (0..n)
        .map(|i| red.w[i][i].as_constant().ok_or(Error::NotUnimodular))
        .collect::<Result<_>>()?;
    let diag = ConstMatrix::diagonal(tag, &diag);
    debug_assert!(diag.det().is_one());
    Ok(Diagonalization {
        rank: n,
        tag,
        left_ops: red.left,
        right_ops: Vec::new(),
        diag,
    })
}

/// Rewrites a diagonalization as `C = E_1 ... E_{u+s} diag`.
///
/// Left ops are inverted in reverse order; right ops are inverted and moved
/// across `diag`, which rescales `f` by `d_i / d_j`.
pub fn ops_to_left_factors(dz: &Diagonalization) -> (Vec<Elementary>, ConstMatrix) {
    let mut out: Vec<Elementary> = dz.left_ops.iter().map(|rec| rec.op.inverse()).collect();
    let d = &dz.diag;
    for rec in dz.right_ops.iter().rev() {
        let Elementary { i, j, f } = &rec.op;
        let ratio = d
            .get(*i, *i)
            .checked_div(d.get(*j, *j))
            .expect("diagonal entries are units");
        out.push(Elementary {
            i: *i,
            j: *j,
            f: -&f.scale(&ratio),
        });
    }
    (merge_adjacent(out), dz.diag.clone())
}

/// `(I + f E_ij)(I + g E_ij) = I + (f + g) E_ij` for `i != j`.
fn merge_adjacent(elems: Vec<Elementary>) -> Vec<Elementary> {
    let mut out: Vec<Elementary> = Vec::with_capacity(elems.len());
    for e in elems {
        match out.last_mut() {
            Some(last) if (last.i, last.j) == (e.i, e.j) => {
                last.f = &last.f + &e.f;
                if last.f.is_zero() {
                    out.pop();
                }
            }
            _ => out.push(e),
        }
    }
    out
}

/// Splits `I + f E_ij` into primitive factors `a_k E_ij` at shift `k` for each
/// nonzero `a_k` with `k >= 1` (highest `k` first), followed by the constant
/// `I + f(1) E_ij`.
pub fn split_elementary(
    e: &Elementary,
    rank: usize,
    tag: FieldTag,
) -> (Vec<PrimitiveFactor>, ConstMatrix) {
    let tag = tag.join(e.f.tag());
    let unit = ConstMatrix::unit(tag, rank, e.i, e.j);
    let mut primitives: Vec<PrimitiveFactor> =
        e.f.terms()
            .filter(|&(k, _)| k >= 1)
            .map(|(k, a)| PrimitiveFactor::new(unit.scale(a), k).expect("scaled matrix unit"))
            .collect();
    primitives.reverse();
    let tail = &ConstMatrix::identity(tag, rank) + &unit.scale(&e.f.eval_one());
    (primitives, tail)
}

/// Either a primitive factor or a constant invertible matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepItem {
    Primitive(PrimitiveFactor),
    Constant(ConstMatrix),
}

/// Pushes every constant to the right end via `Q L_N = L_{Q N Q^-1} Q`; the
/// accumulated constant times `terminal` must be the identity.
pub fn conjugate_sweep(
    items: &[SweepItem],
    terminal: &ConstMatrix,
    rank: usize,
    tag: FieldTag,
) -> Result<NilFactorization> {
    let mut q = ConstMatrix::identity(tag, rank);
    let mut q_inv = q.clone();
    let mut factors = Vec::new();
    for item in items {
        match item {
            SweepItem::Primitive(f) => factors.push(f.conjugate(&q, &q_inv)),
            SweepItem::Constant(g) => {
                let g_inv = g
                    .inverse()
                    .map_err(|_| Error::ResidualConstantNotIdentity)?;
                q = &q * g;
                q_inv = &g_inv * &q_inv;
            }
        }
    }
    if !(&q * terminal).is_identity() {
        return Err(Error::ResidualConstantNotIdentity);
    }
    NilFactorization::new(rank, tag, factors)
}

/// Expands elementary factors into the mixed primitive/constant sequence,
/// dropping identity tails.
pub(crate) fn expand_elementaries(
    elems: &[Elementary],
    rank: usize,
    tag: FieldTag,
) -> Vec<SweepItem> {
    let mut items = Vec::new();
    for e in elems {
        let (prims, tail) = split_elementary(e, rank, tag);
        items.extend(prims.into_iter().map(SweepItem::Primitive));
        if !tail.is_identity() {
            items.push(SweepItem::Constant(tail));
        }
    }
    items
}

/// Factors a pseudoidentity left member into nilpotent primitive factors.
pub fn factorize_nilpotent(c: &LPMatrix) -> Result<NilFactorization> {
    check_left_member(c)?;
    let (rank, tag) = (c.rank(), c.tag());
    let dz = diagonalize_type1(c)?;
    let (elems, diag) = ops_to_left_factors(&dz);
    let items = expand_elementaries(&elems, rank, tag);
    conjugate_sweep(&items, &diag, rank, tag)
}
