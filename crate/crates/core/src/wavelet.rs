//! Biorthogonal wavelet matrix pairs: verification and composition from
//! paraunitary, nilpotent and constant parts.
//!
//! Only the composition direction is provided. Extracting the paraunitary
//! factors and `k0` from an arbitrary pair needs a separate paraunitary
//! factorization, which is not part of this crate.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, WaveletViolation};
use crate::factor::NilFactorization;
use crate::matrix::{ConstMatrix, LPMatrix};
use crate::scalar::{FieldScalar, FieldTag};

/// `(L, R)` with `L adjoint(R) = m I` and block row sums `(m, 0, ..., 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletPair {
    pub l: LPMatrix,
    pub r: LPMatrix,
    pub rank: usize,
    /// Larger of the two genera.
    pub genus: usize,
}

/// Quadratic condition `L adjoint(R) = m I`.
pub fn quadratic_condition_holds(l: &LPMatrix, r: &LPMatrix) -> bool {
    let m = FieldScalar::from_int(l.tag(), l.rank() as i64);
    l * &r.adjoint() == LPMatrix::from_const(&ConstMatrix::identity(l.tag(), l.rank()).scale(&m))
}

/// Linear condition, evaluated as `A(1) * ones = (m, 0, ..., 0)`.
pub fn linear_condition_holds(a: &LPMatrix) -> bool {
    let sums = a.eval_one().row_sums();
    sums.iter().enumerate().all(|(i, s)| {
        if i == 0 {
            *s == FieldScalar::from_int(a.tag(), a.rank() as i64)
        } else {
            s.is_zero()
        }
    })
}

pub fn check_biorthogonal(l: &LPMatrix, r: &LPMatrix) -> Result<WaveletPair> {
    if l.rank() != r.rank() {
        return Err(Error::RankMismatch(l.rank(), r.rank()));
    }
    if l.tag() != r.tag() {
        return Err(Error::FieldMismatch);
    }
    let mut violations = Vec::new();
    if !quadratic_condition_holds(l, r) {
        violations.push(WaveletViolation::Quadratic);
    }
    if !linear_condition_holds(l) || !linear_condition_holds(r) {
        violations.push(WaveletViolation::Linear);
    }
    if !violations.is_empty() {
        return Err(Error::NotBiorthogonal(violations));
    }
    Ok(WaveletPair {
        l: l.clone(),
        r: r.clone(),
        rank: l.rank(),
        genus: l.genus().max(r.genus()),
    })
}

/// `V(z) = I - v v* + v v* z^-1` for a unit vector `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaunitaryPrimitive {
    v: Vec<FieldScalar>,
}

impl ParaunitaryPrimitive {
    pub fn vector(&self) -> &[FieldScalar] {
        &self.v
    }

    pub fn tag(&self) -> FieldTag {
        self.v
            .iter()
            .fold(FieldTag::Rational, |t, x| t.join(x.tag()))
    }

    /// The projector `v v*`.
    pub fn projector(&self) -> ConstMatrix {
        let tag = self.tag();
        let m = self.v.len();
        let mut p = ConstMatrix::zero(tag, m);
        for i in 0..m {
            for j in 0..m {
                p.set(i, j, &self.v[i] * &self.v[j].conj());
            }
        }
        p
    }

    pub fn matrix(&self) -> LPMatrix {
        let p = self.projector();
        let id = ConstMatrix::identity(p.tag(), p.dim());
        &LPMatrix::from_const(&(&id - &p)) + &LPMatrix::from_const_at(&p, 1)
    }
}

pub fn make_paraunitary(v: Vec<FieldScalar>) -> Result<ParaunitaryPrimitive> {
    if v.is_empty() {
        return Err(Error::EmptySequence);
    }
    let tag = v.iter().fold(FieldTag::Rational, |t, x| t.join(x.tag()));
    let norm = v
        .iter()
        .fold(FieldScalar::zero(tag), |acc, x| &acc + &(x * &x.conj()));
    if !norm.is_one() {
        return Err(Error::NotUnitVector);
    }
    let v = v.iter().map(|x| x.with_tag(tag)).collect::<Result<_>>()?;
    let prim = ParaunitaryPrimitive { v };
    debug_assert!((&prim.matrix() * &prim.matrix().adjoint()).is_identity());
    Ok(prim)
}

/// Built-in `[[1, 1], [1, -1]]` at rank 2, or a validated user matrix.
///
/// A supplied matrix must satisfy `H H* = m I` with an all-ones first row.
pub fn haar_matrix(
    rank: usize,
    tag: FieldTag,
    supplied: Option<&ConstMatrix>,
) -> Result<ConstMatrix> {
    match supplied {
        Some(h) => {
            if h.dim() != rank {
                return Err(Error::RankMismatch(rank, h.dim()));
            }
            let m = FieldScalar::from_int(h.tag(), rank as i64);
            let gram = h * &h.conj_transpose();
            let first_row_ones = h
                .rows()
                .next()
                .is_some_and(|r| r.iter().all(FieldScalar::is_one));
            if gram != ConstMatrix::identity(h.tag(), rank).scale(&m) || !first_row_ones {
                return Err(Error::HaarInvalid);
            }
            h.with_tag(tag.join(h.tag()))
        }
        None if rank == 2 => Ok(ConstMatrix::from_int_rows(tag, &[[1, 1], [1, -1]])),
        None => Err(Error::HaarUndefined(rank)),
    }
}

/// Ingredients of `L = z^-k0 V_1..V_d L_{N_r}..L_{N_1} (1 (+) G) H` and the
/// matching `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletFactorizationBundle {
    pub k0: i64,
    pub paraunitary: Vec<ParaunitaryPrimitive>,
    pub nil_factors: NilFactorization,
    /// Invertible `(m-1) x (m-1)` constant.
    pub g: ConstMatrix,
    pub h: ConstMatrix,
    /// Genus bound for the nilpotent part; defaults to the composed pair's genus.
    pub declared_genus: Option<usize>,
}

impl WaveletFactorizationBundle {
    pub fn rank(&self) -> usize {
        self.nil_factors.rank
    }

    pub fn tag(&self) -> FieldTag {
        self.paraunitary.iter().fold(
            self.nil_factors.tag.join(self.g.tag()).join(self.h.tag()),
            |t, v| t.join(v.tag()),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub rank: usize,
    pub k0: i64,
    /// Number of paraunitary factors.
    pub d: usize,
    /// Exponent of `det L = c z^-b`.
    pub b: i64,
    pub nil_genus: usize,
    pub pair_genus: usize,
}

impl CompositionReport {
    /// `d = b - m k0`.
    pub fn exponent_consistent(&self) -> bool {
        self.d as i64 == self.b - self.rank as i64 * self.k0
    }
}

fn compose_raw(bundle: &WaveletFactorizationBundle) -> Result<(LPMatrix, LPMatrix, usize)> {
    let m = bundle.rank();
    let tag = bundle.tag();
    if bundle.h.dim() != m {
        return Err(Error::RankMismatch(m, bundle.h.dim()));
    }
    if bundle.g.dim() + 1 != m {
        return Err(Error::RankMismatch(m - 1, bundle.g.dim()));
    }
    if let Some(v) = bundle.paraunitary.iter().find(|v| v.vector().len() != m) {
        return Err(Error::RankMismatch(m, v.vector().len()));
    }
    let g_inv = bundle.g.inverse()?;
    let mut prefix = LPMatrix::identity(tag, m).shift(bundle.k0);
    for v in &bundle.paraunitary {
        prefix = &prefix * &v.matrix();
    }
    let c = bundle.nil_factors.compose_left().with_tag(tag)?;
    let d = bundle.nil_factors.compose_right().with_tag(tag)?;
    let h = LPMatrix::from_const(&bundle.h).with_tag(tag)?;
    let left_tail = &LPMatrix::from_const(&bundle.g.direct_sum_one()) * &h;
    let right_tail = &LPMatrix::from_const(&g_inv.conj_transpose().direct_sum_one()) * &h;
    let l = &(&prefix * &c) * &left_tail;
    let r = &(&prefix * &d) * &right_tail;
    Ok((l, r, c.genus()))
}

/// Builds `(L, R)` from the bundle and checks the result is biorthogonal.
pub fn compose_biorthogonal(
    bundle: &WaveletFactorizationBundle,
) -> Result<(WaveletPair, CompositionReport)> {
    let (l, r, nil_genus) = compose_raw(bundle)?;
    let pair = check_biorthogonal(&l, &r)?;
    let declared = bundle.declared_genus.unwrap_or(pair.genus);
    if nil_genus > declared {
        return Err(Error::GenusViolation {
            found: nil_genus,
            declared,
        });
    }
    let (b, _) = l.monomial_det_exponent()?;
    let report = CompositionReport {
        rank: pair.rank,
        k0: bundle.k0,
        d: bundle.paraunitary.len(),
        b,
        nil_genus,
        pair_genus: pair.genus,
    };
    Ok((pair, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremInstanceReport {
    pub l_matches: bool,
    pub r_matches: bool,
    pub genus_ok: bool,
    pub nil_genus: usize,
    pub genus_bound: usize,
    pub exponent_consistent: bool,
    pub biorthogonal: bool,
}

impl TheoremInstanceReport {
    pub fn passed(&self) -> bool {
        self.l_matches
            && self.r_matches
            && self.genus_ok
            && self.exponent_consistent
            && self.biorthogonal
    }
}

/// Recomposes `bundle` and compares it with `(L, R)`; never fails, reports instead.
pub fn verify_theorem_instance(
    l: &LPMatrix,
    r: &LPMatrix,
    bundle: &WaveletFactorizationBundle,
) -> TheoremInstanceReport {
    let biorthogonal = check_biorthogonal(l, r).is_ok();
    let genus_bound = bundle
        .declared_genus
        .unwrap_or_else(|| l.genus().max(r.genus()));
    let Ok((bl, br, nil_genus)) = compose_raw(bundle) else {
        return TheoremInstanceReport {
            l_matches: false,
            r_matches: false,
            genus_ok: false,
            nil_genus: 0,
            genus_bound,
            exponent_consistent: false,
            biorthogonal,
        };
    };
    let exponent_consistent = l
        .monomial_det_exponent()
        .is_ok_and(|(b, _)| bundle.paraunitary.len() as i64 == b - l.rank() as i64 * bundle.k0);
    TheoremInstanceReport {
        l_matches: &bl == l,
        r_matches: &br == r,
        genus_ok: nil_genus <= genus_bound,
        nil_genus,
        genus_bound,
        exponent_consistent,
        biorthogonal,
    }
}

/// Random rational unit vector by inverse stereographic projection:
/// `((1 - |y|^2), 2y) / (1 + |y|^2)` for a random rational `y`.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<FieldScalar> {
    let tag = FieldTag::Rational;
    let y: Vec<FieldScalar> = (1..dim)
        .map(|_| FieldScalar::ratio(tag, rng.gen_range(-4..=4), rng.gen_range(1..=4)))
        .collect();
    let norm = y
        .iter()
        .fold(FieldScalar::zero(tag), |acc, x| &acc + &(x * x));
    let one = FieldScalar::one(tag);
    let scale = (&one + &norm).inv().expect("positive");
    let two = FieldScalar::from_int(tag, 2);
    let mut v = vec![&(&one - &norm) * &scale];
    v.extend(y.iter().map(|x| &(&two * x) * &scale));
    // random coordinate order
    let shift = rng.gen_range(0..dim);
    v.rotate_left(shift);
    v
}
