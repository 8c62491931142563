//! Truncated power series in one commuting variable `h`.
//!
//! Stored densely: `coeffs[k]` is the coefficient of `h^k` for `k ≤ known`.

use std::fmt;
use std::sync::Arc;

use crate::coeff::{int, Coeff, Rational};
use crate::error::{Error, Result};
use crate::series::{Alphabet, NCSeries, Word};

#[derive(Clone, PartialEq)]
pub struct ScalarSeries<C> {
    coeffs: Vec<C>,
    maxdeg: usize,
}

impl<C: Coeff> fmt::Debug for ScalarSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for ScalarSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*h")?,
                _ => write!(f, "({c})*h^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.known() + 1)
    }
}

impl<C: Coeff> ScalarSeries<C> {
    pub fn zero(maxdeg: usize) -> Self {
        ScalarSeries { coeffs: vec![C::zero(); maxdeg + 1], maxdeg }
    }

    pub fn constant(maxdeg: usize, c: C) -> Self {
        let mut s = Self::zero(maxdeg);
        s.coeffs[0] = c;
        s
    }

    pub fn one(maxdeg: usize) -> Self {
        Self::constant(maxdeg, C::one())
    }

    /// The variable `h`.
    pub fn h(maxdeg: usize) -> Self {
        let mut s = Self::zero(maxdeg);
        if maxdeg >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    /// Series from its first coefficients; the known order is `maxdeg`.
    pub fn from_coeffs(maxdeg: usize, coeffs: Vec<C>) -> Self {
        let mut s = Self::zero(maxdeg);
        for (k, c) in coeffs.into_iter().enumerate().take(maxdeg + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn known(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    /// Declares everything above `h^k` unknown.
    pub fn truncate(&self, k: usize) -> Self {
        let k = k.min(self.known());
        ScalarSeries { coeffs: self.coeffs[..=k].to_vec(), maxdeg: self.maxdeg }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest power with nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn effective_order(&self) -> usize {
        self.order().unwrap_or(self.known() + 1)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> ScalarSeries<D> {
        ScalarSeries { coeffs: self.coeffs.iter().map(f).collect(), maxdeg: self.maxdeg }
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.known().min(o.known());
        ScalarSeries {
            coeffs: (0..=k).map(|i| self.coeffs[i].add_ref(&o.coeffs[i])).collect(),
            maxdeg: self.maxdeg,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let k = self.known().min(o.known());
        ScalarSeries {
            coeffs: (0..=k).map(|i| self.coeffs[i].sub_ref(&o.coeffs[i])).collect(),
            maxdeg: self.maxdeg,
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.mul_ref(k))
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let known = (self.known() + o.effective_order())
            .min(o.known() + self.effective_order())
            .min(self.maxdeg);
        let mut coeffs = vec![C::zero(); known + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(known + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(known + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j].add_mul_assign(a, b);
                }
            }
        }
        ScalarSeries { coeffs, maxdeg: self.maxdeg }
    }

    /// Multiplicative inverse; needs a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::NotInvertible(format!("constant term {}", self.coeffs[0])))?;
        let n = self.known();
        let mut out = vec![C::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                s.add_mul_assign(&self.coeffs[j], &out[k - j]);
            }
            out[k] = s.mul_ref(&c0).neg_ref();
        }
        Ok(ScalarSeries { coeffs: out, maxdeg: self.maxdeg })
    }

    /// `self / den`. Requires `ord(self) ≥ ord(den)`; the known order drops by `ord(den)`.
    pub fn div(&self, den: &Self) -> Result<Self> {
        let Some(od) = den.order() else {
            return Err(Error::NotInvertible("division by a series with no known nonzero term".into()));
        };
        let on = self.order().unwrap_or(self.known() + 1);
        if on < od {
            return Err(Error::Precondition(format!(
                "numerator order {on} below denominator order {od}"
            )));
        }
        let num = self.shift_down(od);
        let d = den.shift_down(od);
        Ok(num.mul(&d.inverse()?))
    }

    /// Divides by `h^k`, assuming the low coefficients vanish.
    fn shift_down(&self, k: usize) -> Self {
        let known = self.known().saturating_sub(k);
        ScalarSeries { coeffs: (0..=known).map(|i| self.coeff(i + k)).collect(), maxdeg: self.maxdeg }
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let mut out = Self::one(self.maxdeg).truncate(self.known());
        let mut term = out.clone();
        for k in 1..=self.known() {
            term = term.mul(self).scale_rat(&Rational::new(1.into(), (k as i64).into()));
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let u = self.sub(&Self::one(self.maxdeg));
        let mut out = Self::zero(self.maxdeg).truncate(self.known());
        let mut p = Self::one(self.maxdeg);
        for k in 1..=self.known() {
            p = p.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&p.scale_rat(&Rational::new(sign.into(), (k as i64).into())));
        }
        Ok(out)
    }

    /// Square root with the positive-square-root constant term.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let r = c0
            .sqrt()
            .ok_or_else(|| Error::Precondition(format!("constant term {c0} has no square root")))?;
        let inv = c0.inverse().ok_or_else(|| Error::NotInvertible("constant term".into()))?;
        let normalized = self.scale(&inv);
        let half = normalized.log()?.scale_rat(&Rational::new(1.into(), 2.into())).exp()?;
        Ok(half.scale(&r))
    }

    pub fn pow_int(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.maxdeg);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// `f(h) ↦ f(c·h)`.
    pub fn rescale_var(&self, c: &Rational) -> Self {
        let mut p = int(1);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.scale(&p));
            p *= c;
        }
        ScalarSeries { coeffs, maxdeg: self.maxdeg }
    }

    /// `ε(f)(h) = f(−h)`.
    pub fn eps(&self) -> Self {
        self.rescale_var(&int(-1))
    }

    /// Equality of all coefficients known on both sides.
    pub fn agrees(&self, o: &Self) -> bool {
        let k = self.known().min(o.known());
        (0..=k).all(|i| self.coeffs[i] == o.coeffs[i])
    }

    /// `q^m = e^{m h}`.
    pub fn q_pow(maxdeg: usize, m: i64) -> Self {
        Self::h(maxdeg).scale_rat(&int(m)).exp().expect("no constant term")
    }

    /// Quantum integer `[n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}` for `n ≥ 0`.
    pub fn q_int(maxdeg: usize, n: i64) -> Self {
        let mut out = Self::zero(maxdeg);
        let mut e = n - 1;
        while e >= 1 - n {
            out = out.add(&Self::q_pow(maxdeg, e));
            e -= 2;
        }
        out
    }

    /// The same series viewed in the one-letter non-commutative setting.
    pub fn to_nc(&self) -> NCSeries<C> {
        let alphabet = h_alphabet();
        let mut s = NCSeries::zero(&alphabet, self.maxdeg).truncate(self.known());
        for (k, c) in self.coeffs.iter().enumerate() {
            let w = Word::from_letters(&vec![0u8; k]).expect("short word");
            s.add_term(w, c);
        }
        s
    }

    pub fn from_nc(s: &NCSeries<C>) -> Result<Self> {
        if s.alphabet().len() != 1 {
            return Err(Error::AlphabetMismatch("expected a one-letter alphabet".into()));
        }
        let mut out = Self::zero(s.maxdeg()).truncate(s.known_order());
        for (w, c) in s.terms() {
            out.coeffs[w.len()] = c.clone();
        }
        Ok(out)
    }
}

pub fn h_alphabet() -> Arc<Alphabet> {
    Alphabet::new(&["h"]).expect("valid alphabet")
}
