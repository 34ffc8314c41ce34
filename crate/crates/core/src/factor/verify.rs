use crate::matrix::LPMatrix;
use crate::pseudoidentity::check_left_member;

use super::primitive::NilFactorization;

/// Outcome of checking a factorization against its source matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub factor_count: usize,
    pub rank_matches: bool,
    pub all_square_zero: bool,
    pub all_nonzero: bool,
    pub all_shifts_positive: bool,
    pub left_matches: bool,
    /// `None` when `C` has no pseudoidentity partner.
    pub right_matches: Option<bool>,
    pub sum_shifts: i64,
    /// `deg_t C`; `None` for the zero matrix.
    pub degree: Option<i64>,
    pub genus: usize,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.rank_matches
            && self.all_square_zero
            && self.all_nonzero
            && self.all_shifts_positive
            && self.left_matches
            && self.right_matches == Some(true)
    }

    /// `sum k_i >= deg_t C`.
    pub fn degree_bound_holds(&self) -> bool {
        self.degree.is_none_or(|d| self.sum_shifts >= d)
    }

    /// The stricter comparison of `sum k_i` against the genus; informational.
    pub fn genus_bound_holds(&self) -> bool {
        self.sum_shifts >= self.genus as i64
    }
}

pub fn verify_factorization(c: &LPMatrix, fac: &NilFactorization) -> FactorizationReport {
    build_report(c, fac, |left| {
        // D is the unique matrix with C adjoint(D) = I, so comparing against
        // adjoint(C^-1) reduces to one product.
        (left || check_left_member(c).is_ok())
            .then(|| (c * &fac.compose_right().adjoint()).is_identity())
    })
}

/// Like [`verify_factorization`], with the right product compared directly
/// against a known partner `d`.
pub fn verify_factorization_with_partner(
    c: &LPMatrix,
    d: &LPMatrix,
    fac: &NilFactorization,
) -> FactorizationReport {
    build_report(c, fac, |_| Some(fac.compose_right() == *d))
}

fn build_report(
    c: &LPMatrix,
    fac: &NilFactorization,
    right: impl FnOnce(bool) -> Option<bool>,
) -> FactorizationReport {
    let rank_matches = c.rank() == fac.rank && fac.factors.iter().all(|f| f.rank() == c.rank());
    let all_square_zero = fac.factors.iter().all(|f| f.nilpotent().is_square_zero());
    let all_nonzero = fac.factors.iter().all(|f| !f.nilpotent().is_zero());
    let all_shifts_positive = fac.factors.iter().all(|f| f.shift() >= 1);
    let (left_matches, right_matches) = if rank_matches {
        let left = fac.compose_left() == *c;
        (left, right(left))
    } else {
        (false, Some(false))
    };
    FactorizationReport {
        factor_count: fac.len(),
        rank_matches,
        all_square_zero,
        all_nonzero,
        all_shifts_positive,
        left_matches,
        right_matches,
        sum_shifts: fac.sum_shifts(),
        degree: c.t_degree(),
        genus: c.genus(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::PrimitiveFactor;
    use crate::matrix::ConstMatrix;
    use crate::scalar::FieldTag;

    const Q: FieldTag = FieldTag::Rational;

    #[test]
    fn two_factor_pseu2() {
        let n = ConstMatrix::from_int_rows(Q, &[[1, -1], [1, -1]]);
        let fac = NilFactorization::new(
            2,
            Q,
            vec![
                PrimitiveFactor::new(n.clone(), 1).unwrap(),
                PrimitiveFactor::new(n, 2).unwrap(),
            ],
        )
        .unwrap();
        let c = fac.compose_left();
        let rep = verify_factorization(&c, &fac);
        assert!(rep.passed());
        assert_eq!((rep.sum_shifts, rep.degree, rep.genus), (3, Some(2), 3));
        assert!(rep.degree_bound_holds());
        let d = fac.compose_right();
        assert_eq!(verify_factorization_with_partner(&c, &d, &fac), rep);
        let wrong = verify_factorization_with_partner(&c, &LPMatrix::identity(Q, 2), &fac);
        assert_eq!(wrong.right_matches, Some(false));
    }

    #[test]
    fn wrong_source_fails_composition() {
        let f = PrimitiveFactor::new(ConstMatrix::unit(Q, 2, 0, 1), 1).unwrap();
        let fac = NilFactorization::new(2, Q, vec![f]).unwrap();
        let other = PrimitiveFactor::new(ConstMatrix::unit(Q, 2, 1, 0), 2)
            .unwrap()
            .left();
        let rep = verify_factorization(&other, &fac);
        assert!(!rep.left_matches);
        assert_eq!(rep.right_matches, Some(false));
        assert!(!rep.passed());
    }

    #[test]
    fn rank_mismatch_fails() {
        let fac = NilFactorization::new(2, Q, vec![]).unwrap();
        let rep = verify_factorization(&LPMatrix::identity(Q, 3), &fac);
        assert!(!rep.rank_matches && !rep.passed());
    }
}
