//! Laurent polynomials over an exact scalar field.
//!
//! A polynomial is stored as a sparse map `e -> c_e` meaning `sum c_e z^-e`.
//! Nonnegative exponents therefore form the ordinary polynomial in `t = z^-1`,
//! which is the ring the reduction algorithms work in.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, FieldTag};

/// Degree in `t`; `None` is the `-inf` degree of the zero polynomial and
/// compares below every `Some`.
pub type Degree = Option<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    tag: FieldTag,
    coeffs: BTreeMap<i64, FieldScalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

impl LaurentPoly {
    pub fn zero(tag: FieldTag) -> Self {
        Self {
            tag,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::constant(FieldScalar::one(tag))
    }

    pub fn constant(c: FieldScalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`, i.e. `c * z^-e`.
    pub fn monomial(c: FieldScalar, e: i64) -> Self {
        let tag = c.tag();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { tag, coeffs }
    }

    /// Builds `sum coeffs[k] t^k` from small integers.
    pub fn from_t_coeffs(tag: FieldTag, coeffs: &[i64]) -> Self {
        Self::from_terms(
            tag,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (k as i64, FieldScalar::from_int(tag, c))),
        )
    }

    /// Sums the given `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms(tag: FieldTag, terms: impl IntoIterator<Item = (i64, FieldScalar)>) -> Self {
        let mut p = Self::zero(tag);
        for (e, c) in terms {
            p.tag = p.tag.join(c.tag());
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: &FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.coeffs.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    /// Same polynomial viewed over `tag`; fails when demoting a non-real coefficient.
    pub fn with_tag(&self, tag: FieldTag) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&e, c)| Ok((e, c.with_tag(tag)?)))
            .collect::<Result<_>>()?;
        Ok(Self { tag, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(FieldScalar::is_one)
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<FieldScalar> {
        match self.coeffs.len() {
            0 => Some(FieldScalar::zero(self.tag)),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, e: i64) -> FieldScalar {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(|| FieldScalar::zero(self.tag))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldScalar)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Highest power of `t`.
    pub fn degree(&self) -> Degree {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest power of `t`.
    pub fn low_degree(&self) -> Degree {
        self.coeffs.keys().next().copied()
    }

    /// True when no negative power of `t` (positive power of `z`) occurs.
    pub fn is_polynomial(&self) -> bool {
        self.low_degree().is_none_or(|e| e >= 0)
    }

    pub fn leading_coeff(&self) -> Option<&FieldScalar> {
        self.coeffs.values().next_back()
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.tag.join(c.tag()));
        }
        Self {
            tag: self.tag.join(c.tag()),
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            tag: self.tag,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, v)| (e + k, v.clone()))
                .collect(),
        }
    }

    /// Value at `z = 1` (equivalently `t = 1`): the coefficient sum.
    pub fn eval_one(&self) -> FieldScalar {
        self.coeffs
            .values()
            .fold(FieldScalar::zero(self.tag), |acc, c| &acc + c)
    }

    /// Paraconjugate `p*(z^-1)`: conjugates coefficients and negates exponents.
    pub fn adjoint(&self) -> Self {
        Self {
            tag: self.tag,
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.conj())).collect(),
        }
    }

    /// Division with remainder in `F[t]`.
    pub fn divmod(&self, den: &Self) -> Result<(Self, Self)> {
        poly_divmod(self, den)
    }

    /// Quotient of a division known to be exact; `None` if a remainder is left.
    pub fn exact_div(&self, den: &Self) -> Result<Option<Self>> {
        let (q, r) = poly_divmod(self, den)?;
        Ok(r.is_zero().then_some(q))
    }
}

pub fn lp_ring(a: &LaurentPoly, b: &LaurentPoly, op: RingOp) -> Result<LaurentPoly> {
    if a.tag != b.tag {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    })
}

pub fn lp_eval_one(p: &LaurentPoly) -> FieldScalar {
    p.eval_one()
}

pub fn lp_adjoint(p: &LaurentPoly) -> LaurentPoly {
    p.adjoint()
}

/// Long division of polynomials in `t`: `num = q * den + r`, `deg r < deg den`.
pub fn poly_divmod(num: &LaurentPoly, den: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if !num.is_polynomial() || !den.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    let (Some(dd), Some(lead)) = (den.degree(), den.leading_coeff()) else {
        return Err(Error::DivisionByZero);
    };
    let tag = num.tag.join(den.tag);
    let lead_inv = lead.inv()?;
    let mut rem = num.clone();
    rem.tag = tag;
    let mut quot = LaurentPoly::zero(tag);
    while let Some(rd) = rem.degree().filter(|&rd| rd >= dd) {
        let c = rem.leading_coeff().expect("nonzero remainder") * &lead_inv;
        let shift = rd - dd;
        for (e, v) in den.terms() {
            rem.add_term(e + shift, &-(v * &c));
        }
        debug_assert!(rem.degree() < Some(rd));
        quot.add_term(shift, &c);
    }
    Ok((quot, rem))
}

/// Quotient/remainder chain of the Euclidean algorithm started from `(c, a)`.
///
/// With `s_0 = c`, `s_1 = a`, `s_{j+1} = r_j`, each step reads
/// `s_{j-1} = q_j s_j + s_{j+1}`, ending with a zero remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidTrace {
    pub quotients: Vec<LaurentPoly>,
    pub remainders: Vec<LaurentPoly>,
    /// Last nonzero remainder (or `a` itself if `a | c`).
    pub gcd_like: LaurentPoly,
}

impl EuclidTrace {
    /// Runs the recurrence backwards and returns `(a, c)`.
    pub fn replay(&self) -> (LaurentPoly, LaurentPoly) {
        let tag = self.gcd_like.tag();
        let mut next = LaurentPoly::zero(tag);
        let mut cur = self.gcd_like.clone();
        for q in self.quotients.iter().rev() {
            let prev = &(q * &cur) + &next;
            next = cur;
            cur = prev;
        }
        (next, cur)
    }
}

pub fn euclid_trace(a: &LaurentPoly, c: &LaurentPoly) -> Result<EuclidTrace> {
    if a.is_zero() || c.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !a.is_polynomial() || !c.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    if a.degree() > c.degree() {
        return Err(Error::DegreeOrder);
    }
    let mut quotients = Vec::new();
    let mut remainders = Vec::new();
    let (mut prev, mut cur) = (c.clone(), a.clone());
    loop {
        let (q, r) = poly_divmod(&prev, &cur)?;
        quotients.push(q);
        if r.is_zero() {
            break;
        }
        remainders.push(r.clone());
        prev = std::mem::replace(&mut cur, r);
    }
    Ok(EuclidTrace {
        quotients,
        remainders,
        gcd_like: cur,
    })
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.tag = self.tag.join(rhs.tag);
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.tag = self.tag.join(rhs.tag);
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, &-c);
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.tag = self.tag.join(rhs.tag);
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c);
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.tag.join(rhs.tag));
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            tag: self.tag,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Renders as a sum of `c*z^-e` terms, lowest `t`-power first.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let coeff = if c.is_real() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match e {
                0 => write!(f, "{coeff}")?,
                _ => write!(f, "{coeff}*z^{}", -e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
