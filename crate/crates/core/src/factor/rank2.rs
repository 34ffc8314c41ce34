//! Two-channel factorization driven by the Euclidean algorithm on the first
//! column of `C(t) = [[a, b], [c, d]]`.

use crate::error::{Error, Result};
use crate::laurent::euclid_trace;
use crate::matrix::{ConstMatrix, LPMatrix};
use crate::pseudoidentity::check_left_member;

use super::primitive::{Elementary, NilFactorization};
use super::reduce::{conjugate_sweep, expand_elementaries};

/// Elementary chain `C = (I + q_1 E_uv) ... (I + g E_rs) C'` from the
/// Euclidean reduction, with the terminal constant `C'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidChain {
    pub elementaries: Vec<Elementary>,
    pub terminal: ConstMatrix,
    /// True when `deg a > deg c` and the chain started on row 0 instead of row 1.
    pub mirrored: bool,
}

pub fn euclid_chain(c: &LPMatrix) -> Result<EuclidChain> {
    if c.rank() != 2 {
        return Err(Error::RankNotTwo);
    }
    check_left_member(c)?;
    let tag = c.tag();
    let (a, b, cc) = (c.get(0, 0), c.get(0, 1), c.get(1, 0));

    // Triangular case: a = d = 1 and the off-diagonal entry vanishes at 1.
    if cc.is_zero() || b.is_zero() {
        let elementaries = if cc.is_zero() {
            vec![Elementary {
                i: 0,
                j: 1,
                f: b.clone(),
            }]
        } else {
            vec![Elementary {
                i: 1,
                j: 0,
                f: cc.clone(),
            }]
        };
        return Ok(EuclidChain {
            elementaries: elementaries
                .into_iter()
                .filter(|e| !e.f.is_zero())
                .collect(),
            terminal: ConstMatrix::identity(tag, 2),
            mirrored: false,
        });
    }

    let mirrored = a.degree() > cc.degree();
    let trace = if mirrored {
        euclid_trace(cc, a)?
    } else {
        euclid_trace(a, cc)?
    };
    let mut w = c.clone();
    let mut elementaries = Vec::new();
    // (target, source): row `target` loses q times row `source`.
    let (mut target, mut source) = if mirrored { (0, 1) } else { (1, 0) };
    for q in &trace.quotients {
        w = &LPMatrix::elementary(tag, 2, target, source, &-q) * &w;
        elementaries.push(Elementary {
            i: target,
            j: source,
            f: q.clone(),
        });
        std::mem::swap(&mut target, &mut source);
    }

    // One entry of the first column is now zero and the other is a unit.
    let (i, j, g) = if w.get(1, 0).is_zero() {
        // [[r_n, b1], [0, d1]]: d1 is a unit, clear b1.
        let d1 = w.get(1, 1).as_constant().ok_or(Error::NotUnimodular)?;
        (0, 1, w.get(0, 1).scale(&d1.inv()?))
    } else {
        // [[0, b1], [r_n, d1]]: b1 is a unit, clear d1.
        let b1 = w.get(0, 1).as_constant().ok_or(Error::NotUnimodular)?;
        (1, 0, w.get(1, 1).scale(&b1.inv()?))
    };
    if !g.is_zero() {
        w = &LPMatrix::elementary(tag, 2, i, j, &-&g) * &w;
        elementaries.push(Elementary { i, j, f: g });
    }
    let terminal = constant_of(&w)?;
    Ok(EuclidChain {
        elementaries,
        terminal,
        mirrored,
    })
}

fn constant_of(w: &LPMatrix) -> Result<ConstMatrix> {
    let mut out = ConstMatrix::zero(w.tag(), w.rank());
    for i in 0..w.rank() {
        for j in 0..w.rank() {
            out.set(i, j, w.get(i, j).as_constant().ok_or(Error::NotUnimodular)?);
        }
    }
    Ok(out)
}

/// Rank-2 factorization: Euclidean chain, elementary split, constant sweep.
pub fn factorize_rank2_euclid(c: &LPMatrix) -> Result<NilFactorization> {
    let chain = euclid_chain(c)?;
    let items = expand_elementaries(&chain.elementaries, 2, c.tag());
    conjugate_sweep(&items, &chain.terminal, 2, c.tag())
}

/// Product of the chain, for replay checks.
pub fn chain_product(chain: &EuclidChain) -> LPMatrix {
    let tag = chain.terminal.tag();
    let prod = chain
        .elementaries
        .iter()
        .fold(LPMatrix::identity(tag, 2), |acc, e| {
            &acc * &e.matrix(2, tag)
        });
    &prod * &LPMatrix::from_const(&chain.terminal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::PrimitiveFactor;
    use crate::laurent::LaurentPoly;
    use crate::pseudoidentity::{example_pair, random_pair};
    use crate::scalar::{FieldScalar, FieldTag};

    const Q: FieldTag = FieldTag::Rational;

    #[test]
    fn pseu2_walkthrough() {
        let pair = example_pair(&[FieldScalar::one(Q), FieldScalar::one(Q)], &[1, 2]).unwrap();
        let chain = euclid_chain(&pair.c).unwrap();
        assert!(!chain.mirrored);
        assert_eq!(chain.elementaries[0].f, LaurentPoly::from_t_coeffs(Q, &[1]));
        assert_eq!((chain.elementaries[0].i, chain.elementaries[0].j), (1, 0));
        assert_eq!(
            chain.elementaries[1].f,
            LaurentPoly::from_t_coeffs(Q, &[1, -1, -1])
        );
        assert_eq!(
            chain.terminal,
            ConstMatrix::from_int_rows(Q, &[[0, 1], [-1, 0]])
        );
        assert_eq!(chain_product(&chain), pair.c);
        let fac = factorize_rank2_euclid(&pair.c).unwrap();
        assert_eq!(fac.compose_left(), pair.c);
    }

    #[test]
    fn upper_triangular_case() {
        // c = 0, b = t - 1
        let b = LaurentPoly::from_t_coeffs(Q, &[-1, 1]);
        let c = LPMatrix::elementary(Q, 2, 0, 1, &b);
        let fac = factorize_rank2_euclid(&c).unwrap();
        assert_eq!(
            fac.factors,
            vec![PrimitiveFactor::new(ConstMatrix::unit(Q, 2, 0, 1), 1).unwrap()]
        );
    }

    #[test]
    fn mirrored_orientation() {
        // deg a > deg c forces the mirrored chain
        let found = (0..200u64).find_map(|seed| {
            let pair = random_pair(Q, 2, 3, 3, seed).unwrap();
            let (a, c) = (pair.c.get(0, 0), pair.c.get(1, 0));
            (!c.is_zero() && a.degree() > c.degree()).then_some(pair)
        });
        let pair = found.expect("some seed yields deg a > deg c");
        let chain = euclid_chain(&pair.c).unwrap();
        assert!(chain.mirrored);
        assert_eq!(chain.elementaries[0].i, 0);
        assert_eq!(chain_product(&chain), pair.c);
        assert_eq!(
            factorize_rank2_euclid(&pair.c).unwrap().compose_left(),
            pair.c
        );
    }

    #[test]
    fn rank_must_be_two() {
        assert_eq!(
            factorize_rank2_euclid(&LPMatrix::identity(Q, 3)),
            Err(Error::RankNotTwo)
        );
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..50 {
            let pair = random_pair(Q, 2, 4, 4, seed).unwrap();
            let fac = factorize_rank2_euclid(&pair.c).unwrap();
            assert_eq!(fac.compose_left(), pair.c, "seed {seed}");
            assert_eq!(fac.compose_right(), pair.d, "seed {seed}");
        }
    }
}
