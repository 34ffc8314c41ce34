use crate::error::Result;
use crate::matrix::{ConstMatrix, LPMatrix};
use crate::pseudoidentity::check_left_member;
use crate::scalar::{FieldScalar, FieldTag};

use super::reduce::{diagonalize_type1, ops_to_left_factors};

/// One lattice stage `I + (delta_{k,0} - 1) a E_ij + a E_ij z^-k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeStage {
    pub i: usize,
    pub j: usize,
    pub a: FieldScalar,
    pub k: i64,
}

impl LatticeStage {
    pub fn matrix(&self, rank: usize, tag: FieldTag) -> LPMatrix {
        let unit = ConstMatrix::unit(tag, rank, self.i, self.j).scale(&self.a);
        let id = ConstMatrix::identity(tag, rank);
        if self.k == 0 {
            LPMatrix::from_const(&(&id + &unit))
        } else {
            &LPMatrix::from_const(&(&id - &unit)) + &LPMatrix::from_const_at(&unit, self.k)
        }
    }
}

/// `C = E_r ... E_1 C'` with stages stored leftmost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeForm {
    pub rank: usize,
    pub tag: FieldTag,
    pub stages: Vec<LatticeStage>,
    pub diag: ConstMatrix,
}

impl LatticeForm {
    pub fn replay(&self) -> LPMatrix {
        let prod = self
            .stages
            .iter()
            .fold(LPMatrix::identity(self.tag, self.rank), |acc, s| {
                &acc * &s.matrix(self.rank, self.tag)
            });
        &prod * &LPMatrix::from_const(&self.diag)
    }

    /// Product of the constant (`k = 0`) stages, in order, times `C'`.
    pub fn constant_product(&self) -> ConstMatrix {
        let prod = self.stages.iter().filter(|s| s.k == 0).fold(
            ConstMatrix::identity(self.tag, self.rank),
            |acc, s| {
                &acc * &(&ConstMatrix::identity(self.tag, self.rank)
                    + &ConstMatrix::unit(self.tag, self.rank, s.i, s.j).scale(&s.a))
            },
        );
        &prod * &self.diag
    }

    pub fn max_shift(&self) -> i64 {
        self.stages.iter().map(|s| s.k).max().unwrap_or(0)
    }
}

/// Lattice stages read off the elementary chain of the type-I reduction.
pub fn lattice_form(c: &LPMatrix) -> Result<LatticeForm> {
    check_left_member(c)?;
    let (rank, tag) = (c.rank(), c.tag());
    let dz = diagonalize_type1(c)?;
    let (elems, diag) = ops_to_left_factors(&dz);
    let mut stages = Vec::new();
    for e in &elems {
        let mut terms: Vec<_> = e.f.terms().filter(|&(k, _)| k >= 1).collect();
        terms.reverse();
        stages.extend(terms.into_iter().map(|(k, a)| LatticeStage {
            i: e.i,
            j: e.j,
            a: a.clone(),
            k,
        }));
        let b0 = e.f.eval_one();
        if !b0.is_zero() {
            stages.push(LatticeStage {
                i: e.i,
                j: e.j,
                a: b0,
                k: 0,
            });
        }
    }
    Ok(LatticeForm {
        rank,
        tag,
        stages,
        diag,
    })
}
