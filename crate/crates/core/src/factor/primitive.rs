use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{ConstMatrix, LPMatrix};
use crate::scalar::FieldTag;

/// `L_N(z) = I - N + N z^-k` with `N^2 = 0`, `N != 0`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimitiveFactor {
    n: ConstMatrix,
    k: i64,
}

impl PrimitiveFactor {
    pub fn new(n: ConstMatrix, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::BadParams(format!(
                "shift must be at least 1, got {k}"
            )));
        }
        if n.is_zero() || !n.is_square_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(Self { n, k })
    }

    pub fn nilpotent(&self) -> &ConstMatrix {
        &self.n
    }

    pub fn shift(&self) -> i64 {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.n.dim()
    }

    /// `I - N + N z^-k`.
    pub fn left(&self) -> LPMatrix {
        let id = ConstMatrix::identity(self.n.tag(), self.n.dim());
        &LPMatrix::from_const(&(&id - &self.n)) + &LPMatrix::from_const_at(&self.n, self.k)
    }

    /// `I + N* - N* z^k`, the partner factor with `L_N * adjoint(R_N) = I`.
    pub fn right(&self) -> LPMatrix {
        let id = ConstMatrix::identity(self.n.tag(), self.n.dim());
        let ns = self.n.conj_transpose();
        &LPMatrix::from_const(&(&id + &ns)) - &LPMatrix::from_const_at(&ns, -self.k)
    }

    /// `G L_N G^-1 = L_{G N G^-1}`.
    pub fn conjugate(&self, g: &ConstMatrix, g_inv: &ConstMatrix) -> Self {
        Self {
            n: &(g * &self.n) * g_inv,
            k: self.k,
        }
    }
}

/// Ordered primitive factors whose left-to-right product is `C`.
///
/// The first element is the leftmost factor: `[F_r, ..., F_1]` stores
/// `C = L_{N_r} ... L_{N_1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilFactorization {
    pub rank: usize,
    pub tag: FieldTag,
    pub factors: Vec<PrimitiveFactor>,
}

impl NilFactorization {
    pub fn new(rank: usize, tag: FieldTag, factors: Vec<PrimitiveFactor>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.rank() != rank) {
            return Err(Error::RankMismatch(rank, f.rank()));
        }
        Ok(Self { rank, tag, factors })
    }

    pub fn compose_left(&self) -> LPMatrix {
        compose_left(&self.factors, self.rank, self.tag).expect("ranks checked on construction")
    }

    pub fn compose_right(&self) -> LPMatrix {
        compose_right(&self.factors, self.rank, self.tag).expect("ranks checked on construction")
    }

    pub fn sum_shifts(&self) -> i64 {
        self.factors.iter().map(PrimitiveFactor::shift).sum()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn check_ranks(factors: &[PrimitiveFactor], rank: usize) -> Result<()> {
    match factors.iter().find(|f| f.rank() != rank) {
        Some(f) => Err(Error::RankMismatch(rank, f.rank())),
        None => Ok(()),
    }
}

/// Product of `L_N` over the factors, in stored order.
pub fn compose_left(factors: &[PrimitiveFactor], rank: usize, tag: FieldTag) -> Result<LPMatrix> {
    check_ranks(factors, rank)?;
    // X L_N = X + X N (z^-k - 1)
    Ok(factors
        .iter()
        .fold(LPMatrix::identity(tag, rank), |acc, f| {
            let xn = acc.mul_const(&f.n);
            &(&acc - &xn) + &xn.shift(f.k)
        }))
}

/// Product of `R_N` over the factors, in stored order.
pub fn compose_right(factors: &[PrimitiveFactor], rank: usize, tag: FieldTag) -> Result<LPMatrix> {
    check_ranks(factors, rank)?;
    // X R_N = X + X N* (1 - z^k)
    Ok(factors
        .iter()
        .fold(LPMatrix::identity(tag, rank), |acc, f| {
            let xn = acc.mul_const(&f.n.conj_transpose());
            &(&acc + &xn) - &xn.shift(-f.k)
        }))
}

/// A type-I elementary matrix `I + f E_ij`, `i != j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elementary {
    pub i: usize,
    pub j: usize,
    pub f: LaurentPoly,
}

impl Elementary {
    pub fn matrix(&self, rank: usize, tag: FieldTag) -> LPMatrix {
        LPMatrix::elementary(tag, rank, self.i, self.j, &self.f)
    }

    pub fn inverse(&self) -> Self {
        Self {
            i: self.i,
            j: self.j,
            f: -&self.f,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;

    fn n_pseu2() -> ConstMatrix {
        ConstMatrix::from_int_rows(Q, &[[1, -1], [1, -1]])
    }

    #[test]
    fn constructor_validates() {
        assert!(PrimitiveFactor::new(n_pseu2(), 1).is_ok());
        assert_eq!(
            PrimitiveFactor::new(ConstMatrix::zero(Q, 2), 1),
            Err(Error::NotNilpotent)
        );
        assert_eq!(
            PrimitiveFactor::new(ConstMatrix::identity(Q, 2), 1),
            Err(Error::NotNilpotent)
        );
        assert!(matches!(
            PrimitiveFactor::new(n_pseu2(), 0),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn left_times_adjoint_right_is_identity() {
        let f = PrimitiveFactor::new(n_pseu2(), 3).unwrap();
        assert!((&f.left() * &f.right().adjoint()).is_identity());
        let i = crate::scalar::FieldScalar::i();
        let n = ConstMatrix::unit(crate::scalar::FieldTag::GaussianRational, 3, 2, 0).scale(&i);
        let g = PrimitiveFactor::new(n, 2).unwrap();
        assert!((&g.left() * &g.right().adjoint()).is_identity());
    }

    #[test]
    fn empty_composition_is_identity() {
        assert!(compose_left(&[], 3, Q).unwrap().is_identity());
        assert!(compose_right(&[], 3, Q).unwrap().is_identity());
    }

    #[test]
    fn composition_rank_mismatch() {
        let f = PrimitiveFactor::new(n_pseu2(), 1).unwrap();
        assert_eq!(compose_left(&[f], 3, Q), Err(Error::RankMismatch(3, 2)));
    }

    #[test]
    fn conjugation_keeps_shift_and_nilpotency() {
        let f = PrimitiveFactor::new(ConstMatrix::unit(Q, 2, 0, 1), 4).unwrap();
        let g = ConstMatrix::from_int_rows(Q, &[[2, 1], [1, 1]]);
        let h = f.conjugate(&g, &g.inverse().unwrap());
        assert_eq!(h.shift(), 4);
        assert!(h.nilpotent().is_square_zero());
        let glp = LPMatrix::from_const(&g);
        let ginv = LPMatrix::from_const(&g.inverse().unwrap());
        assert_eq!(&(&glp * &f.left()) * &ginv, h.left());
    }
}
