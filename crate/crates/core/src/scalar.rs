//! Exact scalars over the rationals and the Gaussian rationals.
//!
//! Every value is kept in canonical form (lowest terms, positive
//! denominators), so structural equality is field equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which conjugation-closed field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    /// The rationals.
    Rational,
    /// The Gaussian rationals `Q(i)`.
    GaussianRational,
}

impl FieldTag {
    /// The smallest field containing both.
    pub fn join(self, other: FieldTag) -> FieldTag {
        self.max(other)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldTag::Rational => "Q",
            FieldTag::GaussianRational => "Q(i)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An exact element of `Q` or `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    tag: FieldTag,
    re: Rational,
    im: Rational,
}

impl FieldScalar {
    pub fn zero(tag: FieldTag) -> Self {
        Self {
            tag,
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::from_int(tag, 1)
    }

    pub fn from_int(tag: FieldTag, n: i64) -> Self {
        Self {
            tag,
            re: Rational::from_integer(n),
            im: Rational::zero(),
        }
    }

    pub fn rational(re: Rational) -> Self {
        Self {
            tag: FieldTag::Rational,
            re,
            im: Rational::zero(),
        }
    }

    /// `num/den` in the given field. Panics if `den == 0`.
    pub fn ratio(tag: FieldTag, num: i64, den: i64) -> Self {
        Self {
            tag,
            re: Rational::new(num.into(), den.into()),
            im: Rational::zero(),
        }
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self {
            tag: FieldTag::GaussianRational,
            re,
            im,
        }
    }

    /// Small-integer Gaussian constructor, `(re_num/re_den) + (im_num/im_den) i`.
    pub fn gaussian_ratio(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::gaussian(
            Rational::new(re_num.into(), re_den.into()),
            Rational::new(im_num.into(), im_den.into()),
        )
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::gaussian_ratio(0, 1, 1, 1)
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    /// Reinterprets the value in a larger (or equal) field.
    ///
    /// Demoting a value with a nonzero imaginary part is a field mismatch.
    pub fn with_tag(&self, tag: FieldTag) -> Result<Self> {
        if tag == FieldTag::Rational && !self.im.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self {
            tag,
            re: self.re.clone(),
            im: self.im.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            tag: self.tag,
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|x|^2 = x * conj(x)`, always rational.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr().recip().ok_or(Error::DivisionByZero)?;
        Ok(Self {
            tag: self.tag,
            re: &self.re * &n,
            im: &(-&self.im) * &n,
        })
    }

    /// Division with field promotion; fails only on a zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.tag);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

/// Strict field arithmetic: operands must share a field.
pub fn scalar_arith(x: &FieldScalar, y: &FieldScalar, op: ArithOp) -> Result<FieldScalar> {
    if x.tag != y.tag {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar {
            tag: self.tag.join(rhs.tag),
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar {
            tag: self.tag.join(rhs.tag),
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        let tag = self.tag.join(rhs.tag);
        if self.im.is_zero() && rhs.im.is_zero() {
            return FieldScalar {
                tag,
                re: &self.re * &rhs.re,
                im: Rational::zero(),
            };
        }
        FieldScalar {
            tag,
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            tag: self.tag,
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar { (&self).$m(&rhs) }
        }
        impl $tr<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &FieldScalar) -> FieldScalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

/// Formats as `p[/q]` or `p[/q]±r[/s]i`; inverse of [`scalar_parse`].
impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if !self.im.is_zero() {
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
            write!(f, "{}", self.im.abs())?;
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn scalar_format(x: &FieldScalar) -> String {
    x.to_string()
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |&(o, _)| o)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.offset(),
            message: message.into(),
        })
    }

    /// Consumes a sign if present; `Some(true)` for minus.
    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected decimal digits");
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(s.parse().expect("ascii digits"))
    }

    /// `digits[/digits]`
    fn ratio(&mut self, negative: bool) -> Result<Rational> {
        let num = self.digits()?;
        let den = if self.peek() == Some('/') {
            self.pos += 1;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            d
        } else {
            BigInt::one()
        };
        let q = Rational::new(num, den);
        Ok(if negative { -&q } else { q })
    }
}

/// Parses the exact scalar grammar `p[/q]` or `p[/q]±r[/s]i`.
///
/// A bare imaginary term `r[/s]i` is also accepted. Both `-` and U+2212 are
/// read as minus.
pub fn scalar_parse(text: &str, tag: FieldTag) -> Result<FieldScalar> {
    let mut cur = Cursor {
        chars: text.char_indices().collect(),
        pos: 0,
        text,
    };
    let neg = cur.sign() == Some(true);
    let first = cur.ratio(neg)?;
    let (re, im) = match cur.peek() {
        None => (first, Rational::zero()),
        Some('i') => {
            cur.pos += 1;
            (Rational::zero(), first)
        }
        Some(_) => {
            let sign_at = cur.offset();
            let Some(neg) = cur.sign() else {
                return cur.err("expected '+' or '-' before imaginary part");
            };
            let im = cur.ratio(neg)?;
            if cur.peek() != Some('i') {
                return cur.err("expected 'i'");
            }
            cur.pos += 1;
            if tag == FieldTag::Rational && !im.is_zero() {
                return Err(Error::Parse {
                    position: sign_at,
                    message: "imaginary part not allowed in field Q".into(),
                });
            }
            (first, im)
        }
    };
    if cur.peek().is_some() {
        return cur.err("trailing characters");
    }
    if tag == FieldTag::Rational && !im.is_zero() {
        return Err(Error::Parse {
            position: 0,
            message: "imaginary part not allowed in field Q".into(),
        });
    }
    Ok(FieldScalar { tag, re, im })
}
