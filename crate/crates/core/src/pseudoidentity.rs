//! Pseudoidentity pairs: validation, partner derivation, the explicit
//! rank-2 family, random generation, and the rank-2 conjecture probe.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, PseudoidentityViolation, Result};
use crate::factor::{compose_left, compose_right, PrimitiveFactor};
use crate::laurent::LaurentPoly;
use crate::matrix::{ConstMatrix, LPMatrix};
use crate::scalar::{FieldScalar, FieldTag};

/// `(C, D)` with `C = sum_{k=0}^{k_c} C_k z^-k`, `D = sum_{k=k_d}^{0} D_k z^-k`,
/// `C * adjoint(D) = I` and `C(1) = D(1) = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoidentityPair {
    pub c: LPMatrix,
    pub d: LPMatrix,
    pub k_c: i64,
    pub k_d: i64,
}

impl PseudoidentityPair {
    pub fn rank(&self) -> usize {
        self.c.rank()
    }

    /// Both members constant, i.e. the identity pair.
    pub fn is_degenerate(&self) -> bool {
        self.k_c == 0 && self.k_d == 0
    }
}

/// Checks all four defining conditions and reports every one that fails.
pub fn check_pseudoidentity(c: &LPMatrix, d: &LPMatrix) -> Result<PseudoidentityPair> {
    if c.rank() != d.rank() {
        return Err(Error::RankMismatch(c.rank(), d.rank()));
    }
    if c.tag() != d.tag() {
        return Err(Error::FieldMismatch);
    }
    let mut violations = Vec::new();
    let d_adj = d.adjoint();
    if !c.is_polynomial() || !d_adj.is_polynomial() {
        violations.push(PseudoidentityViolation::Support);
    }
    if !(c * &d_adj).is_identity() {
        violations.push(PseudoidentityViolation::ProductNotIdentity);
    }
    if !c.eval_one().is_identity() || !d.eval_one().is_identity() {
        violations.push(PseudoidentityViolation::EvalOneNotIdentity);
    }
    if !c.det().is_one() || !d.det().is_one() {
        violations.push(PseudoidentityViolation::DetNotOne);
    }
    if !violations.is_empty() {
        return Err(Error::NotPseudoidentity(violations));
    }
    Ok(PseudoidentityPair {
        c: c.clone(),
        d: d.clone(),
        k_c: c.t_degree().unwrap_or(0).max(0),
        k_d: d.support().map_or(0, |(lo, _)| lo.min(0)),
    })
}

/// Validates the left member on its own: polynomial in `t`, `det = 1`, `C(1) = I`.
pub(crate) fn check_left_member(c: &LPMatrix) -> Result<()> {
    if !c.is_polynomial() {
        return Err(Error::SupportViolation);
    }
    if !c.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    if !c.eval_one().is_identity() {
        return Err(Error::EvalOneNotIdentity);
    }
    Ok(())
}

/// Completes `C` to a pair with `D = adjoint(C^-1)`.
pub fn derive_partner(c: &LPMatrix) -> Result<PseudoidentityPair> {
    check_left_member(c)?;
    let d = c.inverse_unimodular()?.adjoint();
    check_pseudoidentity(c, &d)
}

/// The two-channel family
/// `C = [[1-a0, a0], [-a0, 1+a0]] + sum_i [[a_i, -a_i], [a_i, -a_i]] z^-m_i`
/// with `a0 = sum a_i`, and its partner built from the conjugates.
pub fn example_pair(a: &[FieldScalar], m: &[i64]) -> Result<PseudoidentityPair> {
    if a.is_empty() || m.is_empty() {
        return Err(Error::EmptySequence);
    }
    if a.len() != m.len() {
        return Err(Error::BadParams(format!(
            "{} coefficients but {} exponents",
            a.len(),
            m.len()
        )));
    }
    if m[0] <= 0 || m.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonincreasingExponents);
    }
    if a.iter().any(FieldScalar::is_zero) {
        return Err(Error::ZeroCoefficient);
    }
    let tag = a.iter().fold(FieldTag::Rational, |t, x| t.join(x.tag()));
    let a: Vec<FieldScalar> = a.iter().map(|x| x.with_tag(tag)).collect::<Result<_>>()?;
    let one = FieldScalar::one(tag);
    let a0 = a.iter().fold(FieldScalar::zero(tag), |s, x| &s + x);
    let a0c = a0.conj();

    let mat = |rows: [[FieldScalar; 2]; 2]| {
        ConstMatrix::from_rows(tag, rows.into_iter().map(Vec::from).collect()).expect("2x2")
    };
    let mut c_blocks = vec![(0, mat([[&one - &a0, a0.clone()], [-&a0, &one + &a0]]))];
    let mut d_blocks = vec![(0, mat([[&one + &a0c, a0c.clone()], [-&a0c, &one - &a0c]]))];
    for (ai, &mi) in a.iter().zip(m) {
        let ac = ai.conj();
        c_blocks.push((mi, mat([[ai.clone(), -ai], [ai.clone(), -ai]])));
        d_blocks.push((-mi, mat([[-&ac, -&ac], [ac.clone(), ac.clone()]])));
    }
    let c = LPMatrix::from_blocks(tag, 2, &c_blocks)?;
    let d = LPMatrix::from_blocks(tag, 2, &d_blocks)?;
    check_pseudoidentity(&c, &d)
}

/// Outcome of testing the rank-2 block-invertibility conjecture on one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureProbeReport {
    /// Smallest `p >= 1` with `C_{k_c - p} != 0`.
    pub p: i64,
    pub c_block: ConstMatrix,
    pub d_block: ConstMatrix,
    pub c_block_invertible: bool,
    pub d_block_invertible: bool,
    pub conjecture_holds: bool,
    /// Whether `-C_{k_c-p} N + C_{k_c} = 0` has a solution with `N^2 = 0`.
    pub weaker_condition_solvable: bool,
    /// A witness when the weaker condition is solvable.
    pub weaker_condition_witness: Option<ConstMatrix>,
}

pub fn probe_conjecture(pair: &PseudoidentityPair) -> Result<ConjectureProbeReport> {
    if pair.rank() != 2 {
        return Err(Error::RankNotTwo);
    }
    if pair.k_c == 0 {
        return Err(Error::ConstantC);
    }
    let p = (1..=pair.k_c)
        .find(|&p| !pair.c.block(pair.k_c - p).is_zero())
        .ok_or(Error::ConstantC)?;
    let c_block = pair.c.block(pair.k_c - p);
    let d_block = pair.d.block(pair.k_d + p);
    let c_block_invertible = !c_block.det().is_zero();
    let d_block_invertible = !d_block.det().is_zero();
    let witness = nilpotent_solution(&c_block, &pair.c.block(pair.k_c));
    Ok(ConjectureProbeReport {
        p,
        c_block,
        d_block,
        c_block_invertible,
        d_block_invertible,
        conjecture_holds: c_block_invertible && d_block_invertible,
        weaker_condition_solvable: witness.is_some(),
        weaker_condition_witness: witness,
    })
}

/// Decides whether `m N = b` has a 2x2 solution with `N^2 = 0`.
///
/// A 2x2 matrix squares to zero iff its trace and determinant vanish. The
/// affine solution set is `N0 + K`; when `ker m` is a line spanned by `w`,
/// every solution is `N0 + w r^T` and both trace and determinant are affine
/// in `r`, so the nilpotent solutions come from one more linear solve.
fn nilpotent_solution(m: &ConstMatrix, b: &ConstMatrix) -> Option<ConstMatrix> {
    debug_assert_eq!(m.dim(), 2);
    let n0 = m.solve(b)?;
    let kernel = m.kernel();
    let tag = n0.tag();
    let found = match kernel.len() {
        0 => Some(n0),
        1 => {
            let w = &kernel[0];
            // adj(N0) w, with adj([[p, q], [r, s]]) = [[s, -q], [-r, p]]
            let adj_w = [
                &(n0.get(1, 1) * &w[0]) - &(n0.get(0, 1) * &w[1]),
                &(n0.get(0, 0) * &w[1]) - &(n0.get(1, 0) * &w[0]),
            ];
            let lhs = ConstMatrix::from_rows(tag, vec![w.clone(), adj_w.to_vec()]).expect("2x2");
            let rhs = [-n0.trace(), -n0.det()];
            lhs.solve_vec(&rhs).map(|r| {
                let mut n = n0.clone();
                for (i, wi) in w.iter().enumerate() {
                    for (j, rj) in r.iter().enumerate() {
                        n.set(i, j, n0.get(i, j) + &(wi * rj));
                    }
                }
                n
            })
        }
        // m = 0 forces b = 0, and N = 0 is a solution.
        _ => Some(ConstMatrix::zero(tag, 2)),
    };
    found.filter(ConstMatrix::is_square_zero)
}

fn random_scalar(rng: &mut ChaCha8Rng, tag: FieldTag) -> FieldScalar {
    loop {
        let re = FieldScalar::ratio(
            FieldTag::Rational,
            rng.gen_range(-3..=3),
            rng.gen_range(1..=3),
        );
        let x = match tag {
            FieldTag::Rational => re,
            FieldTag::GaussianRational => {
                let im = FieldScalar::ratio(
                    FieldTag::Rational,
                    rng.gen_range(-2..=2),
                    rng.gen_range(1..=2),
                );
                &re + &(&im * &FieldScalar::i())
            }
        };
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random integer unimodular matrix and its inverse, as a product of
/// integer type-I elementary matrices.
fn random_unimodular(
    rng: &mut ChaCha8Rng,
    tag: FieldTag,
    rank: usize,
) -> (ConstMatrix, ConstMatrix) {
    let mut g = ConstMatrix::identity(tag, rank);
    let mut g_inv = ConstMatrix::identity(tag, rank);
    for _ in 0..rank + 1 {
        let i = rng.gen_range(0..rank);
        let j = (i + rng.gen_range(1..rank)) % rank;
        let c = FieldScalar::from_int(tag, rng.gen_range(-2..=2));
        let e = &ConstMatrix::identity(tag, rank) + &ConstMatrix::unit(tag, rank, i, j).scale(&c);
        let e_inv =
            &ConstMatrix::identity(tag, rank) - &ConstMatrix::unit(tag, rank, i, j).scale(&c);
        g = &g * &e;
        g_inv = &e_inv * &g_inv;
    }
    (g, g_inv)
}

/// Random primitive factors `G (a E_ij) G^-1` with shifts in `1..=max_shift`.
pub fn random_primitive_factors(
    rng: &mut ChaCha8Rng,
    tag: FieldTag,
    rank: usize,
    count: usize,
    max_shift: i64,
) -> Vec<PrimitiveFactor> {
    (0..count)
        .map(|_| {
            let i = rng.gen_range(0..rank);
            let j = (i + rng.gen_range(1..rank)) % rank;
            let a = random_scalar(rng, tag);
            let (g, g_inv) = random_unimodular(rng, tag, rank);
            let n = &(&g * &ConstMatrix::unit(tag, rank, i, j).scale(&a)) * &g_inv;
            let k = rng.gen_range(1..=max_shift);
            PrimitiveFactor::new(n, k).expect("conjugated matrix unit is square-zero")
        })
        .collect()
}

/// Deterministic random pair: product of `num_factors` random primitive factors.
pub fn random_pair(
    tag: FieldTag,
    rank: usize,
    num_factors: usize,
    max_shift: i64,
    seed: u64,
) -> Result<PseudoidentityPair> {
    if rank < 2 || max_shift < 1 {
        return Err(Error::BadParams(format!(
            "rank {rank}, max_shift {max_shift}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = random_primitive_factors(&mut rng, tag, rank, num_factors, max_shift);
    let c = compose_left(&factors, rank, tag)?;
    let d = compose_right(&factors, rank, tag)?;
    check_pseudoidentity(&c, &d)
}

/// Shorthand used by the example family checks: `u(z) = sum a_i z^-m_i`.
pub fn family_u(a: &[FieldScalar], m: &[i64]) -> LaurentPoly {
    let tag = a.iter().fold(FieldTag::Rational, |t, x| t.join(x.tag()));
    LaurentPoly::from_terms(tag, m.iter().copied().zip(a.iter().cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;

    fn ints(xs: &[i64]) -> Vec<FieldScalar> {
        xs.iter().map(|&x| FieldScalar::from_int(Q, x)).collect()
    }

    fn cm(rows: &[[i64; 2]]) -> ConstMatrix {
        ConstMatrix::from_int_rows(Q, rows)
    }

    #[test]
    fn pseu2_pair_is_valid() {
        let pair = example_pair(&ints(&[1, 1]), &[1, 2]).unwrap();
        assert_eq!((pair.k_c, pair.k_d), (2, -2));
        assert_eq!(pair.c.block(0), cm(&[[-1, 2], [-2, 3]]));
        assert_eq!(pair.d.block(0), cm(&[[3, 2], [-2, -1]]));
        assert_eq!(pair.d.block(-1), cm(&[[-1, -1], [1, 1]]));
        assert_eq!(pair.d.block(-2), cm(&[[-1, -1], [1, 1]]));
    }

    #[test]
    fn identity_pair_is_degenerate() {
        let id = LPMatrix::identity(Q, 3);
        let pair = check_pseudoidentity(&id, &id).unwrap();
        assert!(pair.is_degenerate());
    }

    #[test]
    fn wrong_partner_reports_all_failures() {
        let pair = example_pair(&ints(&[1, 1]), &[1, 2]).unwrap();
        match check_pseudoidentity(&pair.c, &pair.c) {
            Err(Error::NotPseudoidentity(v)) => {
                assert!(v.contains(&PseudoidentityViolation::Support));
                assert!(v.contains(&PseudoidentityViolation::ProductNotIdentity));
                assert!(!v.contains(&PseudoidentityViolation::EvalOneNotIdentity));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn derive_partner_matches_display() {
        let pair = example_pair(&ints(&[1, 1]), &[1, 2]).unwrap();
        assert_eq!(derive_partner(&pair.c).unwrap().d, pair.d);
        let id = derive_partner(&LPMatrix::identity(Q, 2)).unwrap();
        assert!(id.d.is_identity());
    }

    #[test]
    fn derive_partner_errors() {
        let shifted = LPMatrix::from_const(&cm(&[[1, 0], [0, 1]])).shift(-1);
        assert_eq!(derive_partner(&shifted), Err(Error::SupportViolation));
        let twice = LPMatrix::from_const(&cm(&[[2, 0], [0, 1]]));
        assert_eq!(derive_partner(&twice), Err(Error::NotUnimodular));
        let g = LPMatrix::from_const(&cm(&[[1, 1], [0, 1]]));
        assert_eq!(derive_partner(&g), Err(Error::EvalOneNotIdentity));
    }

    #[test]
    fn single_shift_member() {
        let pair = example_pair(&ints(&[1]), &[1]).unwrap();
        let expect = LPMatrix::from_blocks(
            Q,
            2,
            &[(0, cm(&[[0, 1], [-1, 2]])), (1, cm(&[[1, -1], [1, -1]]))],
        )
        .unwrap();
        assert_eq!(pair.c, expect);
    }

    #[test]
    fn gaussian_member_conjugates_partner() {
        let i = FieldScalar::i();
        let pair = example_pair(std::slice::from_ref(&i), &[1]).unwrap();
        // D_{-1} = [[-conj(a), -conj(a)], [conj(a), conj(a)]] with conj(i) = -i
        let d1 = pair.d.block(-1);
        assert_eq!(d1.get(0, 0), &i);
        assert_eq!(d1.get(1, 0), &-&i);
        assert!((&pair.c * &pair.d.adjoint()).is_identity());
    }

    #[test]
    fn example_pair_errors() {
        assert_eq!(example_pair(&[], &[]), Err(Error::EmptySequence));
        assert_eq!(
            example_pair(&ints(&[1, 1]), &[2, 1]),
            Err(Error::NonincreasingExponents)
        );
        assert_eq!(
            example_pair(&ints(&[1]), &[0]),
            Err(Error::NonincreasingExponents)
        );
        assert_eq!(
            example_pair(&ints(&[1, 0]), &[1, 2]),
            Err(Error::ZeroCoefficient)
        );
    }

    #[test]
    fn probe_on_pseu2() {
        let pair = example_pair(&ints(&[1, 1]), &[1, 2]).unwrap();
        let rep = probe_conjecture(&pair).unwrap();
        assert_eq!(rep.p, 1);
        assert_eq!(rep.c_block, cm(&[[1, -1], [1, -1]]));
        assert!(!rep.c_block_invertible);
        assert!(!rep.conjecture_holds);
        assert!(!rep.weaker_condition_solvable);
    }

    #[test]
    fn probe_against_block_scan() {
        // C = I - E_12 + E_12 z^-1
        let n = ConstMatrix::unit(Q, 2, 0, 1);
        let f = PrimitiveFactor::new(n.clone(), 1).unwrap();
        let c = compose_left(std::slice::from_ref(&f), 2, Q).unwrap();
        let pair = derive_partner(&c).unwrap();
        let rep = probe_conjecture(&pair).unwrap();
        // brute-force scan of blocks
        let p = (1..=pair.k_c)
            .find(|&p| !pair.c.block(pair.k_c - p).is_zero())
            .unwrap();
        assert_eq!(rep.p, p);
        assert_eq!(rep.c_block, pair.c.block(0));
        assert_eq!(rep.c_block, &ConstMatrix::identity(Q, 2) - &n);
        assert!(rep.c_block_invertible);
        assert_eq!(rep.d_block, pair.d.block(0));
        assert!(rep.conjecture_holds);
        // (I - N) X = N is solved by X = N (since N^2 = 0), which is square-zero
        assert!(rep.weaker_condition_solvable);
    }

    #[test]
    fn probe_errors() {
        let id = LPMatrix::identity(Q, 2);
        let pair = check_pseudoidentity(&id, &id).unwrap();
        assert_eq!(probe_conjecture(&pair), Err(Error::ConstantC));
        let id3 = LPMatrix::identity(Q, 3);
        let pair3 = check_pseudoidentity(&id3, &id3).unwrap();
        assert_eq!(probe_conjecture(&pair3), Err(Error::RankNotTwo));
    }

    /// Exhaustive search over small integer matrices; one-directional oracle.
    fn brute_force_nilpotent(m: &ConstMatrix, b: &ConstMatrix) -> bool {
        let r = -3..=3;
        for a in r.clone() {
            for bb in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        let n = cm(&[[a, bb], [c, d]]);
                        if n.is_square_zero() && &(m * &n) == b {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn weaker_condition_agrees_with_brute_force() {
        let cases = [
            ([[1, -1], [1, -1]], [[1, -1], [1, -1]]),
            ([[1, 0], [0, 0]], [[0, 1], [0, 0]]),
            ([[1, 2], [2, 4]], [[0, 0], [0, 0]]),
            ([[1, 1], [0, 1]], [[0, 1], [0, 0]]),
            ([[0, 1], [0, 0]], [[1, 0], [0, 0]]),
            ([[2, 1], [0, 0]], [[1, 1], [0, 0]]),
        ];
        for (m, b) in cases {
            let (m, b) = (cm(&m), cm(&b));
            let brute = brute_force_nilpotent(&m, &b);
            let solved = nilpotent_solution(&m, &b);
            if brute {
                assert!(solved.is_some(), "missed solution for {m:?} {b:?}");
            }
            if let Some(n) = solved {
                assert!(n.is_square_zero());
                assert_eq!(&m * &n, b);
            }
        }
    }

    #[test]
    fn random_pair_is_reproducible() {
        let a = random_pair(Q, 3, 4, 3, 7).unwrap();
        let b = random_pair(Q, 3, 4, 3, 7).unwrap();
        assert_eq!(a, b);
        let empty = random_pair(Q, 2, 0, 1, 1).unwrap();
        assert!(empty.c.is_identity() && empty.d.is_identity());
        assert!(matches!(
            random_pair(Q, 1, 1, 1, 0),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            random_pair(Q, 2, 1, 0, 0),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn family_u_matches_two_shift_member() {
        let u = family_u(&ints(&[1, 1]), &[1, 2]);
        assert_eq!(u, LaurentPoly::from_t_coeffs(Q, &[0, 1, 1]));
    }
}
