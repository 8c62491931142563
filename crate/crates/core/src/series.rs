//! Truncated formal series in non-commuting variables.
//!
//! A series stores the coefficients of the words of length at most its known
//! order; everything above that order is unknown, not zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{int, Coeff, Rational};
use crate::error::{Error, Result};

/// Ordered list of letter names. Letter `i` is encoded by the nibble `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub const MAX_LETTERS: usize = 16;

    pub fn new<S: AsRef<str>>(letters: &[S]) -> Result<Arc<Alphabet>> {
        if letters.is_empty() || letters.len() > Self::MAX_LETTERS {
            return Err(Error::Precondition(format!(
                "alphabet size {} outside 1..={}",
                letters.len(),
                Self::MAX_LETTERS
            )));
        }
        let letters: Vec<String> = letters.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in letters.iter().enumerate() {
            if a.is_empty() || !a.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Precondition(format!("bad letter name `{a}`")));
            }
            if letters[..i].contains(a) {
                return Err(Error::Precondition(format!("duplicate letter `{a}`")));
            }
        }
        Ok(Arc::new(Alphabet { letters }))
    }

    /// The two-letter alphabet `{x, y}` used for associators.
    pub fn xy() -> Arc<Alphabet> {
        Alphabet::new(&["x", "y"]).expect("valid alphabet")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, i: u8) -> &str {
        &self.letters[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn index(&self, name: &str) -> Option<u8> {
        self.letters.iter().position(|l| l == name).map(|i| i as u8)
    }

    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Renders a word; the empty word is `1`.
    pub fn render_word(&self, w: Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<&str> = w.letters().map(|a| self.name(a)).collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join("*")
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::EMPTY);
        }
        let mut letters = Vec::new();
        if self.single_char() {
            for c in s.chars() {
                let idx = self
                    .index(&c.to_string())
                    .ok_or_else(|| Error::Parse(format!("unknown letter `{c}` in `{s}`")))?;
                letters.push(idx);
            }
        } else {
            for part in s.split('*') {
                let idx = self
                    .index(part)
                    .ok_or_else(|| Error::Parse(format!("unknown letter `{part}` in `{s}`")))?;
                letters.push(idx);
            }
        }
        Word::from_letters(&letters)
    }
}

/// A word of length at most 15 over an alphabet of at most 16 letters,
/// packed so that the integer order is (length, lexicographic).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(u64);

const BODY: u64 = (1 << 60) - 1;

impl Word {
    pub const EMPTY: Word = Word(0);
    pub const MAX_LEN: usize = 15;

    pub fn single(a: u8) -> Word {
        Word((1 << 60) | ((a as u64) << 56))
    }

    pub fn from_letters(letters: &[u8]) -> Result<Word> {
        if letters.len() > Self::MAX_LEN {
            return Err(Error::DegreeBound(format!("word length {} > {}", letters.len(), Self::MAX_LEN)));
        }
        let mut body = 0u64;
        for (i, &a) in letters.iter().enumerate() {
            debug_assert!(a < 16);
            body |= (a as u64) << (56 - 4 * i);
        }
        Ok(Word(((letters.len() as u64) << 60) | body))
    }

    pub fn len(self) -> usize {
        (self.0 >> 60) as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn letter(self, i: usize) -> u8 {
        ((self.0 >> (56 - 4 * i)) & 0xF) as u8
    }

    pub fn letters(self) -> impl Iterator<Item = u8> {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn concat(self, o: Word) -> Word {
        let l = self.len();
        debug_assert!(l + o.len() <= Self::MAX_LEN);
        Word((((l + o.len()) as u64) << 60) | (self.0 & BODY) | ((o.0 & BODY) >> (4 * l)))
    }

    /// The word without its first letter.
    pub fn tail(self) -> Word {
        let l = self.len();
        debug_assert!(l > 0);
        Word((((l - 1) as u64) << 60) | ((self.0 << 4) & BODY))
    }

    /// The word without its last letter.
    pub fn init(self) -> Word {
        let l = self.len();
        debug_assert!(l > 0);
        let keep = if l == 1 { 0 } else { !((1u64 << (56 - 4 * (l - 1))) - 1) & BODY };
        Word((((l - 1) as u64) << 60) | (self.0 & keep))
    }

    pub fn last(self) -> u8 {
        self.letter(self.len() - 1)
    }

    pub fn reversed(self) -> Word {
        let v: Vec<u8> = self.letters().collect::<Vec<_>>().into_iter().rev().collect();
        Word::from_letters(&v).expect("same length")
    }

    pub fn count(self, a: u8) -> usize {
        self.letters().filter(|&b| b == a).count()
    }

    /// Lexicographic comparison ignoring length.
    pub fn lex_cmp(self, o: Word) -> std::cmp::Ordering {
        let a: Vec<u8> = self.letters().collect();
        let b: Vec<u8> = o.letters().collect();
        a.cmp(&b)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u8> = self.letters().collect();
        write!(f, "Word{v:?}")
    }
}

/// An associative algebra that a series can be evaluated in.
pub trait NcAlgebra<C: Coeff>: Clone {
    fn alg_one(&self) -> Self;
    fn alg_zero(&self) -> Self;
    fn alg_add_assign(&mut self, o: &Self);
    fn alg_mul(&self, o: &Self) -> Self;
    fn alg_scale(&self, c: &C) -> Self;
}

/// Series in the non-commuting letters of an alphabet, truncated at `maxdeg`.
#[derive(Clone, PartialEq)]
pub struct NCSeries<C> {
    alphabet: Arc<Alphabet>,
    maxdeg: usize,
    known: usize,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> fmt::Debug for NCSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCSeries(known={}; ", self.known)?;
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){}", self.alphabet.render_word(*w))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl<C: Coeff> NCSeries<C> {
    pub fn zero(alphabet: &Arc<Alphabet>, maxdeg: usize) -> Self {
        assert!(maxdeg <= Word::MAX_LEN, "maxdeg {maxdeg} exceeds word capacity");
        NCSeries { alphabet: alphabet.clone(), maxdeg, known: maxdeg, terms: BTreeMap::new() }
    }

    pub fn constant(alphabet: &Arc<Alphabet>, maxdeg: usize, c: C) -> Self {
        let mut s = Self::zero(alphabet, maxdeg);
        s.add_term(Word::EMPTY, &c);
        s
    }

    pub fn one(alphabet: &Arc<Alphabet>, maxdeg: usize) -> Self {
        Self::constant(alphabet, maxdeg, C::one())
    }

    /// The series consisting of a single letter.
    pub fn letter(alphabet: &Arc<Alphabet>, maxdeg: usize, a: u8) -> Self {
        let mut s = Self::zero(alphabet, maxdeg);
        s.add_term(Word::single(a), &C::one());
        s
    }

    /// The letter with the given name. Panics if the name is not in the alphabet.
    pub fn var(alphabet: &Arc<Alphabet>, maxdeg: usize, name: &str) -> Self {
        let a = alphabet.index(name).unwrap_or_else(|| panic!("no letter `{name}`"));
        Self::letter(alphabet, maxdeg, a)
    }

    pub fn from_terms(
        alphabet: &Arc<Alphabet>,
        maxdeg: usize,
        terms: impl IntoIterator<Item = (Word, C)>,
    ) -> Self {
        let mut s = Self::zero(alphabet, maxdeg);
        for (w, c) in terms {
            s.add_term(w, &c);
        }
        s
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn known_order(&self) -> usize {
        self.known
    }

    /// Declares everything above degree `k` unknown.
    pub fn truncate(&self, k: usize) -> Self {
        let k = k.min(self.known);
        NCSeries {
            alphabet: self.alphabet.clone(),
            maxdeg: self.maxdeg,
            known: k,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= k).map(|(w, c)| (*w, c.clone())).collect(),
        }
    }

    /// Declares the series exact through degree `k`: absent coefficients up to `k` are zero.
    pub fn assume_known(&self, k: usize) -> Self {
        let mut s = self.clone();
        s.maxdeg = s.maxdeg.max(k);
        s.known = k;
        s.terms.retain(|w, _| w.len() <= k);
        s
    }

    /// Same series with a different allocation bound; the known order is capped by it.
    pub fn with_maxdeg(&self, maxdeg: usize) -> Self {
        let mut s = self.truncate(maxdeg);
        s.maxdeg = maxdeg;
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: Word) -> C {
        self.terms.get(&w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(Word::EMPTY)
    }

    /// Adds `c·w`; words beyond the known order are dropped.
    pub fn add_term(&mut self, w: Word, c: &C) {
        if w.len() > self.known || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree of a nonzero term.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    /// Order bound usable in products: a zero series known through `k` has order ≥ k+1.
    pub fn effective_order(&self) -> usize {
        self.order().unwrap_or(self.known + 1).min(self.known + 1)
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        let mut s = Self::zero(&self.alphabet, self.maxdeg);
        s.known = self.known;
        for (w, c) in &self.terms {
            if w.len() == d {
                s.terms.insert(*w, c.clone());
            }
        }
        s
    }

    /// Components of degree at least `d`.
    pub fn from_degree(&self, d: usize) -> Self {
        let mut s = self.clone();
        s.terms.retain(|w, _| w.len() >= d);
        s
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NCSeries<D> {
        let mut out = NCSeries::zero(&self.alphabet, self.maxdeg);
        out.known = self.known;
        for (w, c) in &self.terms {
            out.add_term(*w, &f(c));
        }
        out
    }

    fn check_alphabet(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.alphabet, &o.alphabet) || self.alphabet == o.alphabet,
            "alphabet mismatch"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_alphabet(o);
        let mut out = self.truncate(o.known);
        for (w, c) in &o.terms {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg_ref();
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(&self.alphabet, self.maxdeg);
        out.known = self.known;
        for (w, c) in &self.terms {
            out.add_term(*w, &c.mul_ref(k));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        let mut out = Self::zero(&self.alphabet, self.maxdeg);
        out.known = self.known;
        for (w, c) in &self.terms {
            out.add_term(*w, &c.scale(r));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_alphabet(o);
        let known = (self.known + o.effective_order())
            .min(o.known + self.effective_order())
            .min(self.maxdeg);
        let mut out = Self::zero(&self.alphabet, self.maxdeg);
        out.known = known;
        for (w1, c1) in &self.terms {
            let room = known.saturating_sub(w1.len());
            if w1.len() > known {
                break;
            }
            for (w2, c2) in &o.terms {
                if w2.len() > room {
                    break;
                }
                let w = w1.concat(*w2);
                match out.terms.get_mut(&w) {
                    Some(e) => e.add_mul_assign(c1, c2),
                    None => {
                        out.terms.insert(w, c1.mul_ref(c2));
                    }
                }
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Commutator `[self, o] = self·o − o·self`.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(&self.alphabet, self.maxdeg);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `exp(f)` for `f` without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("exp needs a series without constant term".into()));
        }
        let mut out = Self::one(&self.alphabet, self.maxdeg);
        out.known = self.known;
        let mut term = out.clone();
        for k in 1..=self.maxdeg {
            term = term.mul(self).scale_rat(&Rational::new(1.into(), (k as i64).into()));
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `log(g)` for `g` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != C::one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let u = self.sub(&Self::one(&self.alphabet, self.maxdeg));
        let mut out = Self::zero(&self.alphabet, self.maxdeg);
        out.known = self.known;
        let mut power = Self::one(&self.alphabet, self.maxdeg);
        for k in 1..=self.maxdeg {
            power = power.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale_rat(&Rational::new(sign.into(), (k as i64).into())));
        }
        Ok(out)
    }

    /// Multiplicative inverse when the constant term is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let ci = c0.inverse().ok_or_else(|| Error::NotInvertible("constant term".into()))?;
        // g = c0 (1 - u)  =>  g^{-1} = (1 + u + u^2 + ...) c0^{-1}
        let normalized = self.scale(&ci);
        let u = Self::one(&self.alphabet, self.maxdeg).sub(&normalized);
        let mut out = Self::one(&self.alphabet, self.maxdeg);
        out.known = self.known;
        let mut power = out.clone();
        for _ in 1..=self.maxdeg {
            power = power.mul(&u);
            out = out.add(&power);
        }
        Ok(out.scale(&ci))
    }

    /// True when every coefficient through degree `k` agrees.
    pub fn eq_through(&self, o: &Self, k: usize) -> bool {
        let a = self.truncate(k);
        let b = o.truncate(k);
        a.terms == b.terms
    }

    /// Degree of the first disagreement, if any, through the common known order.
    pub fn first_difference(&self, o: &Self) -> Option<usize> {
        let d = self.sub(o);
        d.order()
    }

    /// `self = 1` through the known order.
    pub fn is_one(&self) -> bool {
        let one = Self::one(&self.alphabet, self.maxdeg);
        self.sub(&one).is_zero()
    }

    /// Evaluates `f` in another algebra by Horner's scheme on first letters.
    /// `images[a]` is the image of letter `a`; `unit` is the unit of the target.
    pub fn evaluate<A: NcAlgebra<C>>(&self, images: &[A], unit: &A) -> A {
        let terms: Vec<(Word, &C)> = self.terms.iter().map(|(w, c)| (*w, c)).collect();
        horner(&terms, images, unit)
    }

    /// Substitutes series for the letters (images need order ≥ 1 or be exact).
    /// The result lives over the images' alphabet.
    pub fn substitute(&self, images: &[NCSeries<C>]) -> Result<NCSeries<C>> {
        if images.len() != self.alphabet.len() {
            return Err(Error::Precondition(format!(
                "{} images for {} letters",
                images.len(),
                self.alphabet.len()
            )));
        }
        let target = images[0].clone();
        for im in images {
            target.check_alphabet(im);
            if !im.constant_term().is_zero() {
                return Err(Error::Precondition("substitution image has a constant term".into()));
            }
        }
        let omega = images.iter().map(|i| i.effective_order()).min().unwrap_or(1).max(1);
        let unit = NCSeries::one(&target.alphabet, target.maxdeg);
        let mut out = self.evaluate(images, &unit);
        let cap = (self.known + 1) * omega - 1;
        if cap < out.known {
            out = out.truncate(cap);
        }
        Ok(out)
    }

    /// Substitution of group-like images: each image is replaced by its logarithm.
    pub fn substitute_grouplike(&self, images: &[NCSeries<C>]) -> Result<NCSeries<C>> {
        let logs: Result<Vec<_>> = images.iter().map(|g| g.log()).collect();
        self.substitute(&logs?)
    }
}

fn horner<C: Coeff, A: NcAlgebra<C>>(terms: &[(Word, &C)], images: &[A], unit: &A) -> A {
    let mut out = unit.alg_zero();
    let mut groups: BTreeMap<u8, Vec<(Word, &C)>> = BTreeMap::new();
    for (w, c) in terms {
        if w.is_empty() {
            out.alg_add_assign(&unit.alg_scale(c));
        } else {
            groups.entry(w.letter(0)).or_default().push((w.tail(), *c));
        }
    }
    for (a, sub) in groups {
        let inner = horner(&sub, images, unit);
        out.alg_add_assign(&images[a as usize].alg_mul(&inner));
    }
    out
}

impl<C: Coeff> NcAlgebra<C> for NCSeries<C> {
    fn alg_one(&self) -> Self {
        NCSeries::one(&self.alphabet, self.maxdeg)
    }
    fn alg_zero(&self) -> Self {
        NCSeries::zero(&self.alphabet, self.maxdeg)
    }
    fn alg_add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
    fn alg_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn alg_scale(&self, c: &C) -> Self {
        self.scale(c)
    }
}

/// `log(exp(u)·exp(v))`.
pub fn bch<C: Coeff>(u: &NCSeries<C>, v: &NCSeries<C>) -> Result<NCSeries<C>> {
    u.exp()?.mul(&v.exp()?).log()
}

/// `1 + c` convenience for rationals.
pub fn rational_one_plus(alphabet: &Arc<Alphabet>, maxdeg: usize, terms: &[(&str, Rational)]) -> NCSeries<Rational> {
    let mut s = NCSeries::one(alphabet, maxdeg);
    for (w, c) in terms {
        s.add_term(alphabet.parse_word(w).expect("valid word"), c);
    }
    s
}

/// Builds a rational series from `(word, numerator, denominator)` triples.
pub fn series_from(alphabet: &Arc<Alphabet>, maxdeg: usize, terms: &[(&str, i64, i64)]) -> NCSeries<Rational> {
    let mut s = NCSeries::zero(alphabet, maxdeg);
    for (w, n, d) in terms {
        s.add_term(alphabet.parse_word(w).expect("valid word"), &(int(*n) / int(*d)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_packing() {
        let w = Word::from_letters(&[1, 0, 1]).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.letters().collect::<Vec<_>>(), vec![1, 0, 1]);
        assert_eq!(w.tail().letters().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(w.init().letters().collect::<Vec<_>>(), vec![1, 0]);
        let v = Word::from_letters(&[0]).unwrap();
        assert_eq!(v.concat(w).letters().collect::<Vec<_>>(), vec![0, 1, 0, 1]);
        assert!(Word::single(1) < Word::from_letters(&[0, 0]).unwrap());
        assert!(Word::from_letters(&[0, 1]).unwrap() < Word::from_letters(&[1, 0]).unwrap());
    }

    #[test]
    fn exp_log_inverse() {
        let a = Alphabet::xy();
        let x: NCSeries<Rational> = NCSeries::var(&a, 5, "x");
        let y: NCSeries<Rational> = NCSeries::var(&a, 5, "y");
        let u = x.add(&y.mul(&x).scale_rat(&int(3)));
        let g = u.exp().unwrap();
        assert_eq!(g.log().unwrap(), u);
        assert!(g.mul(&g.inverse().unwrap()).is_one());
        // e^x e^y = e^{x + y + [x,y]/2 + ...}
        let b = bch(&x, &y).unwrap();
        assert_eq!(b.homogeneous(2), x.bracket(&y).scale_rat(&rat(1, 2)).homogeneous(2));
    }

    use crate::coeff::rat;
}
