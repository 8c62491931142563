//! Lie elements inside the free associative algebra: the Dynkin projector,
//! Lyndon words with their standard bracketing, and the fixed two-letter basis
//! `w3..w14` used for associators in low degree.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{int, Coeff, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::series::{Alphabet, NCSeries, Word};

/// Right-normed bracketing `[a1,[a2,[...,an]]]` of a word, as integer combination of words.
pub fn right_normed(w: Word) -> BTreeMap<Word, i64> {
    let n = w.len();
    let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
    if n == 0 {
        return acc;
    }
    acc.insert(Word::single(w.letter(n - 1)), 1);
    for i in (0..n - 1).rev() {
        let a = Word::single(w.letter(i));
        let mut next: BTreeMap<Word, i64> = BTreeMap::new();
        for (u, c) in &acc {
            *next.entry(a.concat(*u)).or_insert(0) += c;
            *next.entry(u.concat(a)).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

/// Dynkin map: linear extension of `w ↦ [a1,[a2,[...,an]]]`.
/// On a homogeneous Lie element of degree `n` it is multiplication by `n`.
pub fn dynkin<C: Coeff>(f: &NCSeries<C>) -> NCSeries<C> {
    let mut out = NCSeries::zero(f.alphabet(), f.maxdeg()).truncate(f.known_order());
    for (w, c) in f.terms() {
        for (u, k) in right_normed(*w) {
            out.add_term(u, &c.scale(&int(k)));
        }
    }
    out
}

/// Projection onto the Lie part: `Σ_n D(f_n)/n`, dropping the constant term.
pub fn lie_project<C: Coeff>(f: &NCSeries<C>) -> NCSeries<C> {
    let d = dynkin(f);
    let mut out = NCSeries::zero(f.alphabet(), f.maxdeg()).truncate(f.known_order());
    for (w, c) in d.terms() {
        out.add_term(*w, &c.scale(&Rational::new(1.into(), (w.len() as i64).into())));
    }
    out
}

/// True when `f` has no constant term and `D(f_n) = n·f_n` in every known degree.
pub fn is_lie<C: Coeff>(f: &NCSeries<C>) -> bool {
    if !f.constant_term().is_zero() {
        return false;
    }
    let d = dynkin(f);
    let mut scaled = NCSeries::zero(f.alphabet(), f.maxdeg()).truncate(f.known_order());
    for (w, c) in f.terms() {
        scaled.add_term(*w, &c.scale(&int(w.len() as i64)));
    }
    d == scaled
}

/// Constant term 1 and Lie logarithm.
pub fn is_grouplike<C: Coeff>(g: &NCSeries<C>) -> bool {
    if g.constant_term() != C::one() {
        return false;
    }
    match g.log() {
        Ok(l) => is_lie(&l),
        Err(_) => false,
    }
}

/// Lyndon words of length `n` over `k` letters, in lexicographic order (Duval).
pub fn lyndon_words(k: u8, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == n {
            out.push(Word::from_letters(&w).expect("short word"));
        }
        // next word in Duval's enumeration of Lyndon words of length ≤ n
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out
}

/// Standard bracketing of a Lyndon word: `P(w) = [P(u), P(v)]` with `v` the
/// longest proper Lyndon suffix.
pub fn standard_bracket(w: Word) -> BTreeMap<Word, i64> {
    let n = w.len();
    if n == 1 {
        let mut m = BTreeMap::new();
        m.insert(w, 1);
        return m;
    }
    let letters: Vec<u8> = w.letters().collect();
    let split = (1..n)
        .find(|&i| is_lyndon(&letters[i..]))
        .expect("a Lyndon word of length ≥ 2 has a proper Lyndon suffix");
    let u = Word::from_letters(&letters[..split]).expect("short");
    let v = Word::from_letters(&letters[split..]).expect("short");
    let pu = standard_bracket(u);
    let pv = standard_bracket(v);
    let mut out: BTreeMap<Word, i64> = BTreeMap::new();
    for (a, ca) in &pu {
        for (b, cb) in &pv {
            *out.entry(a.concat(*b)).or_insert(0) += ca * cb;
            *out.entry(b.concat(*a)).or_insert(0) -= ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn is_lyndon(s: &[u8]) -> bool {
    (1..s.len()).all(|i| s[i..] > *s)
}

/// Lyndon basis of the free Lie algebra in degrees `1..=maxdeg`, as
/// `(lyndon word, bracketed element)` pairs.
pub fn lyndon_basis<C: Coeff>(alphabet: &Arc<Alphabet>, maxdeg: usize) -> Vec<(Word, NCSeries<C>)> {
    let mut out = Vec::new();
    for n in 1..=maxdeg {
        for w in lyndon_words(alphabet.len() as u8, n) {
            let mut s = NCSeries::zero(alphabet, maxdeg);
            for (u, c) in standard_bracket(w) {
                s.add_term(u, &C::from_int(c));
            }
            out.push((w, s));
        }
    }
    out
}

/// Coordinates of a homogeneous Lie element of degree `n` on the Lyndon basis
/// of that degree. Uses that `P(w) = w + (lexicographically larger words)`.
pub fn lyndon_coordinates<C: Coeff>(f: &NCSeries<C>, n: usize) -> Result<Vec<C>> {
    let words = lyndon_words(f.alphabet().len() as u8, n);
    let mut rest = f.homogeneous(n);
    let mut coords = vec![C::zero(); words.len()];
    while let Some((&w, c)) = rest.terms().min_by(|a, b| a.0.lex_cmp(*b.0)) {
        let c = c.clone();
        let idx = words
            .iter()
            .position(|&l| l == w)
            .ok_or_else(|| Error::Precondition("element is not a Lie polynomial".into()))?;
        coords[idx] = c.clone();
        let mut p = NCSeries::zero(f.alphabet(), f.maxdeg());
        for (u, k) in standard_bracket(w) {
            p.add_term(u, &C::from_int(k));
        }
        rest = rest.sub(&p.scale(&c));
    }
    Ok(coords)
}

/// Witt's formula: dimension of the degree-`n` part of the free Lie algebra on `k` letters.
pub fn witt_dimension(k: u64, n: u64) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d) * (k as i64).pow((n / d) as u32);
        }
    }
    (total / n as i64) as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// The fixed basis of the two-letter free Lie algebra in degrees 2 to 5:
/// `w3 = [x,y]`, `w4 = [x,[x,y]]`, `w5 = [y,[y,x]]`, `w6..w8` in degree 4 and
/// `w9..w14` in degree 5.
#[derive(Clone)]
pub struct WBasis<C> {
    w: BTreeMap<usize, NCSeries<C>>,
}

impl<C: Coeff> WBasis<C> {
    pub fn new(maxdeg: usize) -> Self {
        let a = Alphabet::xy();
        let x = NCSeries::<C>::var(&a, maxdeg, "x");
        let y = NCSeries::<C>::var(&a, maxdeg, "y");
        let br = |p: &NCSeries<C>, q: &NCSeries<C>| p.bracket(q);
        let w3 = br(&x, &y);
        let w4 = br(&x, &w3);
        let w5 = br(&y, &br(&y, &x));
        let w6 = br(&x, &w4);
        let w7 = br(&y, &w4);
        let w8 = br(&y, &br(&y, &w3));
        let w9 = br(&x, &w6);
        let w10 = br(&y, &w6);
        let w11 = br(&y, &br(&y, &w4));
        let w12 = br(&y, &br(&y, &br(&y, &w3)));
        let w13 = br(&w3, &w4);
        let w14 = br(&w3, &br(&y, &w3));
        let w = [w3, w4, w5, w6, w7, w8, w9, w10, w11, w12, w13, w14];
        WBasis { w: w.into_iter().enumerate().map(|(i, s)| (i + 3, s)).collect() }
    }

    /// `w_i` for `3 ≤ i ≤ 14`.
    pub fn get(&self, i: usize) -> &NCSeries<C> {
        &self.w[&i]
    }

    /// Indices of the basis elements of degree `d` (2 ≤ d ≤ 5).
    pub fn indices_of_degree(d: usize) -> std::ops::RangeInclusive<usize> {
        match d {
            2 => 3..=3,
            3 => 4..=5,
            4 => 6..=8,
            5 => 9..=14,
            _ => panic!("w basis covers degrees 2..=5"),
        }
    }

    /// Integer combination `Σ c_i w_i`.
    pub fn combo(&self, coeffs: &[(usize, C)]) -> NCSeries<C> {
        let mut out = NCSeries::zero(self.w[&3].alphabet(), self.w[&3].maxdeg());
        for (i, c) in coeffs {
            out = out.add(&self.w[i].scale(c));
        }
        out
    }

    /// `ψ1 = w5 − w4`.
    pub fn psi1(&self) -> NCSeries<C> {
        self.get(5).sub(self.get(4))
    }

    /// Coordinates of the degree-`d` part of `f` on `w_i`, `i` of degree `d`.
    pub fn coordinates(&self, f: &NCSeries<C>, d: usize) -> Result<Vec<C>> {
        let idx: Vec<usize> = Self::indices_of_degree(d).collect();
        let basis: Vec<NCSeries<Rational>> = idx
            .iter()
            .map(|i| {
                self.w[i].map_coeffs(|c| c.to_rational().expect("basis has rational coefficients"))
            })
            .collect();
        linalg::coordinates(&f.homogeneous(d), &basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_numbers() {
        let dims: Vec<usize> = (1..=5).map(|n| lyndon_words(2, n).len()).collect();
        assert_eq!(dims, vec![2, 1, 2, 3, 6]);
        for n in 1..=7 {
            assert_eq!(lyndon_words(3, n).len() as u64, witt_dimension(3, n as u64));
        }
    }

    #[test]
    fn dynkin_of_bracket() {
        let a = Alphabet::xy();
        let w: WBasis<Rational> = WBasis::new(6);
        for i in 3..=14 {
            assert!(is_lie(w.get(i)), "w{i} should be Lie");
        }
        let x: NCSeries<Rational> = NCSeries::var(&a, 4, "x");
        let y: NCSeries<Rational> = NCSeries::var(&a, 4, "y");
        assert!(!is_lie(&x.mul(&y)));
        assert_eq!(lie_project(&x.mul(&y)), x.bracket(&y).scale_rat(&crate::coeff::rat(1, 2)));
    }

    #[test]
    fn lyndon_coords_round_trip() {
        let w: WBasis<Rational> = WBasis::new(5);
        let basis = lyndon_basis::<Rational>(&Alphabet::xy(), 5);
        let c = lyndon_coordinates(w.get(13), 5).unwrap();
        let mut rebuilt = NCSeries::zero(&Alphabet::xy(), 5);
        for ((_, p), k) in basis.iter().filter(|(l, _)| l.len() == 5).zip(c) {
            rebuilt = rebuilt.add(&p.scale(&k));
        }
        assert_eq!(&rebuilt, w.get(13));
    }
}
