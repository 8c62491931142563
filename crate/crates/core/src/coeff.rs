//! Coefficient rings: exact rationals, polynomials over ℚ in named symbols,
//! and the multiquadratic field ℚ(√2, √3, ...).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as a normalized rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Arithmetic shared by every coefficient ring. Methods take references so
/// that big-number coefficients are never moved implicitly.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn inverse(&self) -> Option<Self>;
    /// The value as a rational when it lies in ℚ.
    fn to_rational(&self) -> Option<Rational>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self = self.sub_ref(o);
    }
    /// Square root with non-negative rational part, when it exists in the ring.
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(&self.to_rational()?).map(|r| Self::from_rational(&r))
    }
    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self -= o;
    }
}

/// Exact square root of a non-negative rational that is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Text form of a coefficient, used by the series serialization.
pub trait CoeffText: Coeff {
    fn render(&self) -> String;
    fn parse_text(s: &str) -> Result<Self>;
    /// Symbols occurring in the coefficient.
    fn symbols(&self) -> Vec<Arc<str>>;
}

impl CoeffText for Rational {
    fn render(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Result<Self> {
        Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
    }
    fn symbols(&self) -> Vec<Arc<str>> {
        Vec::new()
    }
}

/// A monomial in named commuting symbols, sorted by name, exponents > 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymMono(Vec<(Arc<str>, u32)>);

impl SymMono {
    pub fn one() -> Self {
        SymMono(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        SymMono(vec![(Arc::from(name), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0.iter().find(|(s, _)| &**s == name).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Arc<str>, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &SymMono) -> SymMono {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(o.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + o.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        SymMono(out)
    }

    /// Removes one power of `name`, if present.
    pub fn without(&self, name: &str) -> Option<SymMono> {
        let pos = self.0.iter().position(|(s, _)| &**s == name)?;
        let mut v = self.0.clone();
        if v[pos].1 == 1 {
            v.remove(pos);
        } else {
            v[pos].1 -= 1;
        }
        Some(SymMono(v))
    }
}

impl fmt::Display for SymMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over ℚ in named symbols. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymCoef {
    terms: BTreeMap<SymMono, Rational>,
}

impl SymCoef {
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(SymMono::var(name), int(1));
        SymCoef { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (SymMono, Rational)>) -> Self {
        let mut out = SymCoef::default();
        for (m, c) in it {
            out.add_term(m, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMono, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: SymMono, c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if Zero::is_zero(e) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Coefficient of a monomial.
    pub fn coefficient(&self, m: &SymMono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Zero::zero)
    }

    /// Substitutes rationals for some symbols.
    pub fn eval(&self, values: &[(&str, Rational)]) -> SymCoef {
        let mut out = SymCoef::default();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut c = c.clone();
            for (s, e) in &m.0 {
                if let Some((_, v)) = values.iter().find(|(n, _)| *n == &**s) {
                    c *= num_traits::pow(v.clone(), *e as usize);
                } else {
                    keep.push((s.clone(), *e));
                }
            }
            out.add_term(SymMono(keep), &c);
        }
        out
    }

    /// Linear part in `name`: the polynomial `p` with `self = p*name + (terms free of name)`,
    /// provided `self` has degree at most one in `name`.
    pub fn linear_in(&self, name: &str) -> Option<(SymCoef, SymCoef)> {
        let mut lin = SymCoef::default();
        let mut rest = SymCoef::default();
        for (m, c) in &self.terms {
            match m.exponent(name) {
                0 => rest.add_term(m.clone(), c),
                1 => lin.add_term(m.without(name).expect("exponent 1"), c),
                _ => return None,
            }
        }
        Some((lin, rest))
    }

    pub fn max_degree_in(&self, name: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(name)).max().unwrap_or(0)
    }
}

impl Coeff for SymCoef {
    fn zero() -> Self {
        SymCoef::default()
    }
    fn one() -> Self {
        Self::from_rational(&int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: &Rational) -> Self {
        let mut out = SymCoef::default();
        out.add_term(SymMono::one(), r);
        out
    }
    fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(o);
        out
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<SymMono, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Zero::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !Zero::is_zero(c));
        SymCoef { terms }
    }
    fn neg_ref(&self) -> Self {
        SymCoef { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return SymCoef::default();
        }
        SymCoef { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        let r = self.to_rational()?;
        Coeff::inverse(&r).map(|i| SymCoef::from_rational(&i))
    }
    fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Zero::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                if m.0.is_empty() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }
    fn add_assign_ref(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            match self.terms.get_mut(m) {
                Some(e) => {
                    *e += c;
                    if Zero::is_zero(e) {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            match self.terms.get_mut(m) {
                Some(e) => {
                    *e -= c;
                    if Zero::is_zero(e) {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), -c);
                }
            }
        }
    }
}

impl From<Rational> for SymCoef {
    fn from(r: Rational) -> Self {
        SymCoef::from_rational(&r)
    }
}

impl fmt::Display for SymCoef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.0.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl CoeffText for SymCoef {
    fn render(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Result<Self> {
        ExprParser::new(s).parse()
    }
    fn symbols(&self) -> Vec<Arc<str>> {
        let mut out: Vec<Arc<str>> = Vec::new();
        for m in self.terms.keys() {
            for (s, _) in &m.0 {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out.sort();
        out
    }
}

/// Recursive-descent parser for polynomial expressions such as `3/2*a^2*b - zeta3 + 1`.
struct ExprParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str) -> Self {
        ExprParser { src, chars: src.chars().collect(), pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<SymCoef> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<SymCoef> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg_ref()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc.add_assign_ref(&t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc.sub_assign_ref(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SymCoef> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul_ref(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SymCoef> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                self.power(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
                {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let r = Rational::from_str(&text).map_err(|_| self.err("bad number"))?;
                Ok(SymCoef::from_rational(&r))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let v = SymCoef::var(&name);
                self.power(v)
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }

    fn power(&mut self, base: SymCoef) -> Result<SymCoef> {
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let e: u32 = text.parse().map_err(|_| self.err("bad exponent"))?;
        let mut out = SymCoef::one();
        for _ in 0..e {
            out = out.mul_ref(&base);
        }
        Ok(out)
    }
}

/// Element of the multiquadratic field: a ℚ-combination of `√k` for squarefree `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

fn squarefree_split(mut n: u64) -> (u64, u64) {
    // n = s^2 * k with k squarefree; returns (s, k).
    let mut s = 1u64;
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            k *= p;
        }
        p += 1;
    }
    k *= n;
    (s, k)
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

impl Surd {
    /// `√n` for a non-negative integer `n`.
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            return Surd::default();
        }
        let (s, k) = squarefree_split(n);
        let mut terms = BTreeMap::new();
        terms.insert(k, int(s as i64));
        Surd { terms }
    }

    /// `√r` for a non-negative rational `r`, written as `√(n d) / d`.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        let n = r.numer().to_u64()?;
        let d = r.denom().to_u64()?;
        Some(Surd::sqrt_int(n * d).scale(&Rational::from_integer(BigInt::from(d)).recip()))
    }

    fn conj(&self, p: u64) -> Surd {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, if k % p == 0 { -c } else { c.clone() }))
                .collect(),
        }
    }
}

impl Coeff for Surd {
    fn zero() -> Self {
        Surd::default()
    }
    fn one() -> Self {
        Self::from_rational(&int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: &Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(r) {
            terms.insert(1, r.clone());
        }
        Surd { terms }
    }
    fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            *out.terms.entry(*k).or_insert_with(Zero::zero) += c;
        }
        out.terms.retain(|_, c| !Zero::is_zero(c));
        out
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let g = k1.gcd(k2);
                let k = (k1 / g) * (k2 / g);
                *terms.entry(k).or_insert_with(Zero::zero) += c1 * c2 * int(g as i64);
            }
        }
        terms.retain(|_, c| !Zero::is_zero(c));
        Surd { terms }
    }
    fn neg_ref(&self) -> Self {
        Surd { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return Surd::default();
        }
        Surd { terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return None;
        }
        let mut num = Surd::one();
        let mut cur = self.clone();
        while let Some(&k) = cur.terms.keys().find(|k| **k > 1) {
            let c = cur.conj(smallest_prime_factor(k));
            num = num.mul_ref(&c);
            cur = cur.mul_ref(&c);
        }
        let r = cur.to_rational()?;
        Some(num.scale(&r.recip()))
    }
    fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Zero::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }
    fn sqrt(&self) -> Option<Self> {
        Surd::sqrt_rational(&self.to_rational()?)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *k == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt({k})")?;
            }
        }
        Ok(())
    }
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(int(1));
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut s: Rational = Zero::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += bk * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symcoef_round_trip() {
        let e = SymCoef::parse_text("3/2*a^2*b - zeta3 + 1 - a*a*b*3/2").unwrap();
        assert_eq!(e, SymCoef::parse_text("1 - zeta3").unwrap());
        let s = SymCoef::parse_text("(a + b)^2 - 1/3").unwrap();
        assert_eq!(SymCoef::parse_text(&s.render()).unwrap(), s);
    }

    #[test]
    fn surd_inverse() {
        let x = Surd::sqrt_int(2).add_ref(&Surd::sqrt_int(3)).add_ref(&Surd::one());
        let y = x.inverse().unwrap();
        assert_eq!(x.mul_ref(&y), Surd::one());
        assert_eq!(Surd::sqrt_int(8).mul_ref(&Surd::sqrt_int(2)), Surd::from_int(4));
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(8);
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
    }
}
