//! Integer Laurent polynomials in one and two variables.
//!
//! [`LaurentPoly2`] holds HOMFLYPT polynomials in `(v, z)`.
//! [`LaurentPoly1`] holds one-variable specializations written in `q`
//! with `q^2 = t`, so half-integer powers of `t` stay integral.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Sparse integer Laurent polynomial in `v` and `z`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    /// `(v exponent, z exponent) -> coefficient`
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: i64, v: i32, z: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(v, z, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i32, i32)>) -> Self {
        let mut p = Self::zero();
        for (c, v, z) in terms {
            p.add_term(v, z, c);
        }
        p
    }

    fn add_term(&mut self, v: i32, z: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((v, z)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(v, z));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: i32, z: i32) -> i64 {
        self.terms.get(&(v, z)).copied().unwrap_or(0)
    }

    /// `(coefficient, v exponent, z exponent)` in `(v, z)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i32, i32)> + '_ {
        self.terms.iter().map(|(&(v, z), &c)| (c, v, z))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Largest power of `z`.
    pub fn z_degree(&self) -> Result<i32> {
        self.terms.keys().map(|k| k.1).max().ok_or(Error::ZeroPolynomial)
    }

    pub fn min_z_degree(&self) -> Result<i32> {
        self.terms.keys().map(|k| k.1).min().ok_or(Error::ZeroPolynomial)
    }

    /// Difference between the largest and smallest power of `v`.
    pub fn v_spread(&self) -> Result<i32> {
        let max = self.terms.keys().map(|k| k.0).max().ok_or(Error::ZeroPolynomial)?;
        let min = self.terms.keys().map(|k| k.0).min().ok_or(Error::ZeroPolynomial)?;
        Ok(max - min)
    }

    /// Substitute `v = q^vq` and `z = q - q^-1`. Negative powers of `z` are
    /// cleared by exact division, which succeeds for every link polynomial.
    pub fn specialize(&self, vq: i32) -> Result<LaurentPoly1> {
        if self.is_zero() {
            return Ok(LaurentPoly1::zero());
        }
        let shift = (-self.min_z_degree()?).max(0);
        let zq = LaurentPoly1::from_terms([(1, 1), (-1, -1)]);
        let mut num = LaurentPoly1::zero();
        for (c, v, z) in self.terms() {
            let term = LaurentPoly1::monomial(c, vq * v) * zq.pow((z + shift) as u32);
            num = num + term;
        }
        for _ in 0..shift {
            num = num.div_q_minus_inverse()?;
        }
        Ok(num)
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (c, v, z) in rhs.terms() {
            out.add_term(v, z, c);
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (c, v, z) in rhs.terms() {
            out.add_term(v, z, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (c1, v1, z1) in self.terms() {
            for (c2, v2, z2) in rhs.terms() {
                out.add_term(v1 + v2, z1 + z2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(LaurentPoly2);
owned_ops!(LaurentPoly1);

fn write_exp(f: &mut fmt::Formatter<'_>, first: bool, c: i64) -> fmt::Result {
    match (first, c < 0) {
        (true, true) => write!(f, "-{}", -c),
        (true, false) => write!(f, "{c}"),
        (false, true) => write!(f, " - {}", -c),
        (false, false) => write!(f, " + {c}"),
    }
}

/// Canonical text form: monomials `c*v^a*z^b` sorted by `z` then `v`.
impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ts: Vec<_> = self.terms().collect();
        ts.sort_by_key(|&(_, v, z)| (z, v));
        for (i, (c, v, z)) in ts.into_iter().enumerate() {
            write_exp(f, i == 0, c)?;
            write!(f, "*v^{v}*z^{z}")?;
        }
        Ok(())
    }
}

/// Split canonical text into signed monomials.
fn signed_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let syntax = |msg: &str| Error::Syntax {
        pos: 0,
        msg: msg.to_string(),
    };
    if compact == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let sign = match bytes[i] {
            b'-' => {
                i += 1;
                -1
            }
            b'+' => {
                i += 1;
                1
            }
            _ if i == 0 => 1,
            _ => return Err(syntax("expected '+' or '-' between monomials")),
        };
        let start = i;
        while i < bytes.len() {
            let b = bytes[i];
            // a sign directly after '^' belongs to an exponent
            if (b == b'+' || b == b'-') && i > start && bytes[i - 1] != b'^' {
                break;
            }
            i += 1;
        }
        let body = &compact[start..i];
        let (c, rest) = body.split_once('*').ok_or_else(|| syntax("monomial needs 'c*...'"))?;
        let c: i64 = c.parse().map_err(|_| syntax("bad coefficient"))?;
        out.push((sign * c, rest.to_string()));
    }
    Ok(out)
}

fn parse_power(s: &str, var: char) -> Result<i32> {
    s.strip_prefix(var)
        .and_then(|r| r.strip_prefix('^'))
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| Error::Syntax {
            pos: 0,
            msg: format!("expected {var}^<int>, got {s:?}"),
        })
}

impl FromStr for LaurentPoly2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = LaurentPoly2::zero();
        for (c, rest) in signed_terms(s)? {
            let (vs, zs) = rest.split_once('*').ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: "expected v^a*z^b".into(),
            })?;
            p.add_term(parse_power(vs, 'v')?, parse_power(zs, 'z')?, c);
        }
        Ok(p)
    }
}

/// Sparse integer Laurent polynomial in `q` (`q^2 = t`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// From `(coefficient, exponent)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i32)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let x = self.terms.entry(e).or_insert(0);
        *x += c;
        if *x == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// `(coefficient, exponent)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i32)> + '_ {
        self.terms.iter().map(|(&e, &c)| (c, e))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replace `q` by `q^k`.
    pub fn dilate(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(c, e)| (c, e * k)))
    }

    pub fn max_exp(&self) -> Result<i32> {
        self.terms.keys().next_back().copied().ok_or(Error::ZeroPolynomial)
    }

    pub fn min_exp(&self) -> Result<i32> {
        self.terms.keys().next().copied().ok_or(Error::ZeroPolynomial)
    }

    /// Span in the stored variable `q`.
    pub fn span(&self) -> Result<i32> {
        Ok(self.max_exp()? - self.min_exp()?)
    }

    /// Span in `t = q^2`. Link specializations only use exponents of one
    /// parity, so the `q`-span is even.
    pub fn span_t(&self) -> Result<i32> {
        Ok(self.span()? / 2)
    }

    /// Exact division by `q - q^-1`.
    fn div_q_minus_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // self * q / (q^2 - 1), long division from the top degree down
        let mut rem = self.terms.clone();
        let mut quot = Self::zero();
        while let Some((&e, &c)) = rem.iter().next_back() {
            if e < self.min_exp()? + 2 {
                return Err(Error::InvalidDiagram(
                    "specialization is not a Laurent polynomial".into(),
                ));
            }
            // c q^e = c q^(e-2) (q^2 - 1) + c q^(e-2)
            quot.add_term(e - 2, c);
            rem.remove(&e);
            let r = rem.entry(e - 2).or_insert(0);
            *r += c;
            if *r == 0 {
                rem.remove(&(e - 2));
            }
        }
        Ok(&quot * &Self::monomial(1, 1))
    }
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (c, e) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (c, e) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (c1, e1) in self.terms() {
            for (c2, e2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn neg(self) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.terms().map(|(c, e)| (-c, e)))
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms().enumerate() {
            write_exp(f, i == 0, c)?;
            write!(f, "*q^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly1 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = LaurentPoly1::zero();
        for (c, rest) in signed_terms(s)? {
            p.add_term(parse_power(&rest, 'q')?, c);
        }
        Ok(p)
    }
}
