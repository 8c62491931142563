//! The graded algebra `U(T_n)` of infinitesimal pure braids, generated by
//! `t_ij` (`1 ≤ i < j ≤ n`) subject to
//!
//! * `[t_ij, t_kl] = 0` for distinct `i, j, k, l`,
//! * `[t_ij, t_ik + t_jk] = 0` for distinct `i, j, k`.
//!
//! Normal forms come from the decomposition `T_n = F_{n-1} ⋊ T_{n-1}`: the
//! generators `t_1j, ..., t_{j-1,j}` form layer `j`, each layer spans a free Lie
//! algebra, and lower layers act on higher ones by derivations. A monomial is
//! normal when the layers of its letters are non-increasing from left to
//! right. The normal form is certified independently by a rank computation on
//! the span of the relations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};
use crate::linalg::{ModP, SparseEchelon, SparseRow};
use crate::series::{Alphabet, NCSeries, NcAlgebra, Word};

/// Version stamp written into cache files; bump when the layout changes.
pub const CACHE_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "DRINFELD_CACHE_DIR";

pub const MAX_N: usize = 6;

type Combo = Vec<(Word, i64)>;

/// Normal-form data for `U(T_n)` truncated at `maxdeg`.
pub struct HoloAlgebra {
    n: usize,
    maxdeg: usize,
    gens: Vec<(usize, usize)>,
    alphabet: Arc<Alphabet>,
    basis: Vec<Vec<Word>>,
    /// `t_g · m` in normal form for every generator `g` and normal `m` of degree < maxdeg.
    left: HashMap<(u8, Word), Combo>,
}

impl fmt::Debug for HoloAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoloAlgebra(n={}, maxdeg={}, dims={:?})", self.n, self.maxdeg, self.dims())
    }
}

/// Coefficients of `Π_{i=1}^{n-1} 1/(1 - i t)` through `t^maxdeg`.
pub fn hilbert_series(n: usize, maxdeg: usize) -> Vec<u64> {
    let mut out = vec![0u64; maxdeg + 1];
    out[0] = 1;
    for i in 1..n as u64 {
        for d in 1..=maxdeg {
            out[d] += i * out[d - 1];
        }
    }
    out
}

impl HoloAlgebra {
    /// Builds the normal form from scratch.
    pub fn build(n: usize, maxdeg: usize) -> Result<HoloAlgebra> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Precondition(format!("n = {n} outside 2..={MAX_N}")));
        }
        if maxdeg > Word::MAX_LEN {
            return Err(Error::DegreeBound(format!("maxdeg {maxdeg}")));
        }
        let mut gens = Vec::new();
        for j in 2..=n {
            for i in 1..j {
                gens.push((i, j));
            }
        }
        let names: Vec<String> = gens.iter().map(|(i, j)| format!("t{i}{j}")).collect();
        let alphabet = Alphabet::new(&names)?;
        let mut alg = HoloAlgebra { n, maxdeg, gens, alphabet, basis: Vec::new(), left: HashMap::new() };
        alg.enumerate_basis();
        alg.fill_left_table();
        Ok(alg)
    }

    /// Loads `(n, maxdeg)` from `dir` if a valid cache file exists; otherwise builds
    /// it and writes the cache. Corrupt files are an error, stale versions are rebuilt.
    pub fn load_or_build(n: usize, maxdeg: usize, dir: Option<&Path>) -> Result<HoloAlgebra> {
        Self::load_or_build_status(n, maxdeg, dir).map(|(a, _)| a)
    }

    /// As [`HoloAlgebra::load_or_build`], also reporting what happened to the cache file.
    pub fn load_or_build_status(n: usize, maxdeg: usize, dir: Option<&Path>) -> Result<(HoloAlgebra, CacheStatus)> {
        let Some(dir) = dir else {
            return Ok((HoloAlgebra::build(n, maxdeg)?, CacheStatus::Uncached));
        };
        let path = cache_path(dir, n, maxdeg);
        let mut status = CacheStatus::Built;
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            match HoloAlgebra::from_cache_text(&text) {
                Ok(alg) if alg.n == n && alg.maxdeg == maxdeg => return Ok((alg, CacheStatus::Hit)),
                Ok(_) => return Err(Error::Cache(format!("{} describes a different algebra", path.display()))),
                Err(Error::Cache(msg)) if msg.starts_with("stale") => status = CacheStatus::Rebuilt,
                Err(e) => return Err(e),
            }
        }
        let alg = HoloAlgebra::build(n, maxdeg)?;
        fs::create_dir_all(dir)?;
        fs::write(&path, alg.to_cache_text())?;
        Ok((alg, status))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Index of `t_ij` (order of `i, j` irrelevant).
    pub fn gen_index(&self, i: usize, j: usize) -> u8 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        assert!(a >= 1 && a < b && b <= self.n, "no generator t{i}{j} in T_{}", self.n);
        // layer b starts after layers 2..b-1, which hold 1 + 2 + ... + (b-2) generators
        ((b - 1) * (b - 2) / 2 + (a - 1)) as u8
    }

    pub fn gen_pair(&self, g: u8) -> (usize, usize) {
        self.gens[g as usize]
    }

    fn layer(&self, g: u8) -> usize {
        self.gens[g as usize].1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, d: usize) -> &[Word] {
        &self.basis[d]
    }

    pub fn is_normal(&self, w: Word) -> bool {
        let l: Vec<usize> = w.letters().map(|g| self.layer(g)).collect();
        l.windows(2).all(|p| p[0] >= p[1])
    }

    fn enumerate_basis(&mut self) {
        let g = self.gens.len() as u8;
        let mut basis = vec![vec![Word::EMPTY]];
        for d in 1..=self.maxdeg {
            let mut next = Vec::new();
            for &w in &basis[d - 1] {
                for a in 0..g {
                    let cand = Word::single(a).concat(w);
                    if w.is_empty() || self.layer(a) >= self.layer(w.letter(0)) {
                        next.push(cand);
                    }
                }
            }
            next.sort();
            basis.push(next);
        }
        self.basis = basis;
    }

    /// `[t_g, t_a]` for `layer(g) < layer(a)`, as a combination of two-letter words in layer(a).
    fn derivation(&self, g: u8, a: u8) -> Combo {
        let (i, j) = self.gens[g as usize];
        let (k, c) = self.gens[a as usize];
        debug_assert!(j < c);
        let tic = Word::single(self.gen_index(i, c));
        let tjc = Word::single(self.gen_index(j, c));
        if k == i {
            // [t_ij, t_ic] = [t_ic, t_jc]
            vec![(tic.concat(tjc), 1), (tjc.concat(tic), -1)]
        } else if k == j {
            // [t_ij, t_jc] = [t_jc, t_ic]
            vec![(tjc.concat(tic), 1), (tic.concat(tjc), -1)]
        } else {
            Vec::new()
        }
    }

    fn fill_left_table(&mut self) {
        let g = self.gens.len() as u8;
        for d in 0..self.maxdeg {
            for idx in 0..self.basis[d].len() {
                let m = self.basis[d][idx];
                for a in 0..g {
                    let v = self.compute_left(a, m);
                    self.left.insert((a, m), v);
                }
            }
        }
    }

    fn compute_left(&self, g: u8, m: Word) -> Combo {
        if m.is_empty() || self.layer(m.letter(0)) <= self.layer(g) {
            return vec![(Word::single(g).concat(m), 1)];
        }
        let a = m.letter(0);
        let rest = m.tail();
        let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
        let head = Word::single(a);
        for (w, c) in &self.left[&(g, rest)] {
            *acc.entry(head.concat(*w)).or_insert(0) += c;
        }
        for (w, c) in self.derivation(g, a) {
            *acc.entry(w.concat(rest)).or_insert(0) += c;
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// `t_g · m` for a normal monomial `m` of degree below `maxdeg`.
    pub fn left_mul_mono(&self, g: u8, m: Word) -> &[(Word, i64)] {
        &self.left[&(g, m)]
    }

    /// Normal form of an arbitrary word in the generators.
    pub fn reduce_word(&self, w: Word) -> Combo {
        if w.len() > self.maxdeg {
            return Vec::new();
        }
        let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
        acc.insert(Word::EMPTY, 1);
        for i in (0..w.len()).rev() {
            let g = w.letter(i);
            let mut next: BTreeMap<Word, i64> = BTreeMap::new();
            for (m, c) in &acc {
                for (u, k) in self.left_mul_mono(g, *m) {
                    *next.entry(*u).or_insert(0) += c * k;
                }
            }
            next.retain(|_, c| *c != 0);
            acc = next;
        }
        acc.into_iter().collect()
    }

    /// Degree-two defining relations as integer combinations of two-letter words.
    pub fn relations(&self) -> Vec<Combo> {
        let n = self.n;
        let t = |i: usize, j: usize| Word::single(self.gen_index(i, j));
        let br = |a: Word, b: Word| vec![(a.concat(b), 1i64), (b.concat(a), -1i64)];
        let mut out = Vec::new();
        for (p, &(i, j)) in self.gens.iter().enumerate() {
            for &(k, l) in &self.gens[p + 1..] {
                if i != k && i != l && j != k && j != l {
                    out.push(br(t(i, j), t(k, l)));
                }
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    if k == i || k == j {
                        continue;
                    }
                    let mut r = br(t(i, j), t(i, k));
                    r.extend(br(t(i, j), t(j, k)));
                    out.push(r);
                }
            }
        }
        out
    }

    /// Checks that every relation, multiplied on the right by any normal monomial
    /// of degree ≤ `maxdeg − 2`, reduces to zero. Together with the rank
    /// certificate this shows the normal form is that of `U(T_n)`.
    pub fn relations_reduce_to_zero(&self) -> bool {
        let rels = self.relations();
        for d in 0..=self.maxdeg.saturating_sub(2) {
            for &m in &self.basis[d] {
                for r in &rels {
                    let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
                    for (w, c) in r {
                        let b = w.letter(1);
                        let a = w.letter(0);
                        for (u, k) in self.left_mul_mono(b, m) {
                            for (v, l) in self.left_mul_mono(a, *u) {
                                *acc.entry(*v).or_insert(0) += c * k * l;
                            }
                        }
                    }
                    if acc.values().any(|c| *c != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rank of the degree-`d` part of the two-sided ideal generated by the
    /// relations, computed by sparse elimination over the field `F`.
    pub fn ideal_rank<F: Coeff>(&self, d: usize) -> usize {
        if d < 2 {
            return 0;
        }
        let g = self.gens.len() as u64;
        // lower layers get larger letter rank so that non-normal words lead
        let rank_of = |a: u8| -> u64 { g - 1 - a as u64 };
        let total = g.pow(d as u32);
        let col = |w: Word| -> u32 {
            let mut v = 0u64;
            for a in w.letters() {
                v = v * g + rank_of(a);
            }
            (total - 1 - v) as u32
        };
        let rels = self.relations();
        let mut ech = SparseEchelon::<F>::new();
        let words_of = |len: usize| -> Vec<Word> {
            let mut ws = vec![Word::EMPTY];
            for _ in 0..len {
                let mut next = Vec::with_capacity(ws.len() * g as usize);
                for w in &ws {
                    for a in 0..g as u8 {
                        next.push(w.concat(Word::single(a)));
                    }
                }
                ws = next;
            }
            ws
        };
        for p in 0..=d - 2 {
            let lefts = words_of(p);
            let rights = words_of(d - 2 - p);
            for u in &lefts {
                for r in &rels {
                    for v in &rights {
                        let mut row: SparseRow<F> = r
                            .iter()
                            .map(|(w, c)| (col(u.concat(*w).concat(*v)), F::from_int(*c)))
                            .collect();
                        row.sort_by_key(|(c, _)| *c);
                        ech.insert(row);
                    }
                }
            }
        }
        ech.rank()
    }

    /// Per-degree certificate: `(free words, normal monomials, ideal rank)` with
    /// the rank computed modulo a large prime. The rank over ℚ is at least the
    /// rank modulo p, and at most `free − normal` since the ideal reduces to zero.
    pub fn certify(&self, max_d: usize) -> Vec<(u64, usize, usize)> {
        let g = self.gens.len() as u64;
        (0..=max_d.min(self.maxdeg))
            .map(|d| (g.pow(d as u32), self.basis[d].len(), self.ideal_rank::<ModP>(d)))
            .collect()
    }

    pub fn to_cache_text(&self) -> String {
        let mut out = format!(
            "holonomy-cache version={} n={} maxdeg={}\n",
            CACHE_VERSION, self.n, self.maxdeg
        );
        let render = |w: Word| -> String {
            if w.is_empty() {
                "e".to_string()
            } else {
                w.letters().map(|a| a.to_string()).collect::<Vec<_>>().join(".")
            }
        };
        for (d, b) in self.basis.iter().enumerate() {
            out.push_str(&format!("basis {d} {}\n", b.len()));
        }
        for d in 0..self.maxdeg {
            for &m in &self.basis[d] {
                for a in 0..self.gens.len() as u8 {
                    let row = &self.left[&(a, m)];
                    let terms: Vec<String> =
                        row.iter().map(|(w, c)| format!("{}:{c}", render(*w))).collect();
                    out.push_str(&format!("left {a} {} {}\n", render(m), terms.join(" ")));
                }
            }
        }
        out
    }

    pub fn from_cache_text(text: &str) -> Result<HoloAlgebra> {
        let bad = |msg: &str| Error::Cache(msg.to_string());
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty cache file"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("holonomy-cache") {
            return Err(bad("not a holonomy cache file"));
        }
        let mut version = None;
        let mut n = None;
        let mut maxdeg = None;
        for f in fields {
            let (k, v) = f.split_once('=').ok_or_else(|| bad("bad header"))?;
            let v: usize = v.parse().map_err(|_| bad("bad header number"))?;
            match k {
                "version" => version = Some(v),
                "n" => n = Some(v),
                "maxdeg" => maxdeg = Some(v),
                _ => return Err(bad("unknown header field")),
            }
        }
        if version != Some(CACHE_VERSION as usize) {
            return Err(Error::Cache(format!("stale cache version {version:?}")));
        }
        let (n, maxdeg) = (n.ok_or_else(|| bad("missing n"))?, maxdeg.ok_or_else(|| bad("missing maxdeg"))?);
        let mut alg = HoloAlgebra::build_skeleton(n, maxdeg)?;
        let parse_word = |s: &str| -> Result<Word> {
            if s == "e" {
                return Ok(Word::EMPTY);
            }
            let letters: std::result::Result<Vec<u8>, _> = s.split('.').map(str::parse::<u8>).collect();
            let letters = letters.map_err(|_| bad("bad monomial"))?;
            if letters.iter().any(|&a| a as usize >= alg.gens.len()) {
                return Err(bad("generator out of range"));
            }
            Word::from_letters(&letters)
        };
        let mut dims = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("basis") => {
                    let d: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad basis line"))?;
                    let c: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad basis line"))?;
                    if d != dims.len() {
                        return Err(bad("basis lines out of order"));
                    }
                    dims.push(c);
                }
                Some("left") => {
                    let a: u8 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad left line"))?;
                    let m = parse_word(parts.next().ok_or_else(|| bad("bad left line"))?)?;
                    let mut row = Vec::new();
                    for t in parts {
                        let (w, c) = t.split_once(':').ok_or_else(|| bad("bad term"))?;
                        row.push((parse_word(w)?, c.parse::<i64>().map_err(|_| bad("bad coefficient"))?));
                    }
                    alg.left.insert((a, m), row);
                }
                Some(_) => return Err(bad("unknown line")),
                None => {}
            }
        }
        if dims != alg.dims() {
            return Err(bad("dimension mismatch"));
        }
        let expected = alg.gens.len() * alg.basis[..maxdeg].iter().map(Vec::len).sum::<usize>();
        if alg.left.len() != expected {
            return Err(Error::Cache(format!("incomplete multiplication table: {} of {expected}", alg.left.len())));
        }
        Ok(alg)
    }

    fn build_skeleton(n: usize, maxdeg: usize) -> Result<HoloAlgebra> {
        let full = HoloAlgebra::build(n, 0)?;
        let mut alg = HoloAlgebra { maxdeg, left: HashMap::new(), ..full };
        alg.enumerate_basis();
        Ok(alg)
    }
}

/// Outcome of a cache lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    /// No cache directory was given.
    Uncached,
    Hit,
    /// No file existed; it was written.
    Built,
    /// The file had another version stamp; it was rebuilt and overwritten.
    Rebuilt,
}

pub fn cache_path(dir: &Path, n: usize, maxdeg: usize) -> PathBuf {
    dir.join(format!("holonomy-n{n}-d{maxdeg}.txt"))
}

/// Truncated series in `U(T_n)`, stored on the normal-form basis.
#[derive(Clone)]
pub struct HoloSeries<C> {
    alg: Arc<HoloAlgebra>,
    known: usize,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> PartialEq for HoloSeries<C> {
    fn eq(&self, o: &Self) -> bool {
        self.known == o.known && self.terms == o.terms
    }
}

impl<C: Coeff> fmt::Debug for HoloSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoloSeries(known={}, {} terms)", self.known, self.terms.len())
    }
}

impl<C: Coeff> HoloSeries<C> {
    pub fn zero(alg: &Arc<HoloAlgebra>) -> Self {
        HoloSeries { alg: alg.clone(), known: alg.maxdeg, terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<HoloAlgebra>) -> Self {
        let mut s = Self::zero(alg);
        s.terms.insert(Word::EMPTY, C::one());
        s
    }

    /// The generator `t_ij`.
    pub fn gen(alg: &Arc<HoloAlgebra>, i: usize, j: usize) -> Self {
        let mut s = Self::zero(alg);
        if alg.maxdeg >= 1 {
            s.terms.insert(Word::single(alg.gen_index(i, j)), C::one());
        }
        s
    }

    /// `Y_r = Σ_{i<r} t_ir`.
    pub fn y(alg: &Arc<HoloAlgebra>, r: usize) -> Self {
        let mut s = Self::zero(alg);
        for i in 1..r {
            s = s.add(&Self::gen(alg, i, r));
        }
        s
    }

    /// `Z_n = Σ_{i<j} t_ij`, central.
    pub fn z(alg: &Arc<HoloAlgebra>) -> Self {
        let mut s = Self::zero(alg);
        for r in 2..=alg.n {
            s = s.add(&Self::y(alg, r));
        }
        s
    }

    /// Sum of the given generators.
    pub fn gens_sum(alg: &Arc<HoloAlgebra>, pairs: &[(usize, usize)]) -> Self {
        let mut s = Self::zero(alg);
        for &(i, j) in pairs {
            s = s.add(&Self::gen(alg, i, j));
        }
        s
    }

    pub fn algebra(&self) -> &Arc<HoloAlgebra> {
        &self.alg
    }

    pub fn known(&self) -> usize {
        self.known
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: Word) -> C {
        self.terms.get(&w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    fn effective_order(&self) -> usize {
        self.order().unwrap_or(self.known + 1).min(self.known + 1)
    }

    pub fn truncate(&self, k: usize) -> Self {
        let k = k.min(self.known);
        HoloSeries {
            alg: self.alg.clone(),
            known: k,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= k).map(|(w, c)| (*w, c.clone())).collect(),
        }
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        HoloSeries {
            alg: self.alg.clone(),
            known: self.known,
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (*w, c.clone())).collect(),
        }
    }

    fn add_term(&mut self, w: Word, c: &C) {
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

    pub fn add(&self, o: &Self) -> Self {
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
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = self.map_coeffs(|c| c.mul_ref(k));
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HoloSeries<D> {
        HoloSeries { alg: self.alg.clone(), known: self.known, terms: self.terms.iter().map(|(w, c)| (*w, f(c))).collect() }
    }

    /// `t_g · self`.
    pub fn left_gen_mul(&self, g: u8) -> Self {
        let known = (self.known + 1).min(self.alg.maxdeg);
        let mut out = HoloSeries { alg: self.alg.clone(), known, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            if m.len() + 1 > known {
                continue;
            }
            for (w, k) in self.alg.left_mul_mono(g, *m) {
                out.add_term(*w, &c.scale(&Rational::from_integer((*k).into())));
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let known = (self.known + o.effective_order())
            .min(o.known + self.effective_order())
            .min(self.alg.maxdeg);
        let terms: Vec<(Word, &C)> = self.terms.iter().filter(|(w, _)| w.len() <= known).map(|(w, c)| (*w, c)).collect();
        let mut out = mul_rec(&terms, &o.truncate(known));
        out = out.truncate(known);
        out.known = known;
        out
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(Word::EMPTY).is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let mut out = Self::one(&self.alg).truncate(self.known);
        let mut term = out.clone();
        for k in 1..=self.alg.maxdeg {
            term = term.mul(self).scale(&C::from_rational(&Rational::new(1.into(), (k as i64).into())));
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn log(&self) -> Result<Self> {
        if self.coeff(Word::EMPTY) != C::one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let u = self.sub(&Self::one(&self.alg));
        let mut out = Self::zero(&self.alg).truncate(self.known);
        let mut p = Self::one(&self.alg);
        for k in 1..=self.alg.maxdeg {
            p = p.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&p.scale(&C::from_rational(&Rational::new(sign.into(), (k as i64).into()))));
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.coeff(Word::EMPTY) != C::one() {
            return Err(Error::Precondition("inverse needs constant term 1".into()));
        }
        let u = Self::one(&self.alg).sub(self);
        let mut out = Self::one(&self.alg).truncate(self.known);
        let mut p = out.clone();
        for _ in 1..=self.alg.maxdeg {
            p = p.mul(&u);
            out = out.add(&p);
        }
        Ok(out)
    }

    /// Image under the permutation `t_ij ↦ t_{s(i) s(j)}`; `perm[i-1] = s(i)`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let alg = &self.alg;
        let mut out = HoloSeries { alg: alg.clone(), known: self.known, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let letters: Vec<u8> = m
                .letters()
                .map(|g| {
                    let (i, j) = alg.gen_pair(g);
                    alg.gen_index(perm[i - 1], perm[j - 1])
                })
                .collect();
            let w = Word::from_letters(&letters).expect("same length");
            for (u, k) in alg.reduce_word(w) {
                out.add_term(u, &c.scale(&Rational::from_integer(k.into())));
            }
        }
        out
    }

    /// Evaluates a series in letters at elements of `U(T_n)`.
    pub fn evaluate(f: &NCSeries<C>, images: &[HoloSeries<C>]) -> Result<Self> {
        if images.len() != f.alphabet().len() {
            return Err(Error::Precondition("wrong number of images".into()));
        }
        let alg = images[0].alg.clone();
        let omega = images.iter().map(|i| i.effective_order()).min().unwrap_or(1);
        if omega == 0 {
            return Err(Error::Precondition("images must have zero constant term".into()));
        }
        let out = f.evaluate(images, &Self::one(&alg));
        let cap = (f.known_order() + 1) * omega - 1;
        Ok(out.truncate(cap))
    }

    /// Embeds a series over letters named `t_ij` by sending each letter to its generator.
    pub fn embed_free(alg: &Arc<HoloAlgebra>, f: &NCSeries<C>) -> Result<Self> {
        let mut images = Vec::new();
        for name in f.alphabet().names() {
            let idx = alg
                .alphabet
                .index(name)
                .ok_or_else(|| Error::AlphabetMismatch(format!("letter `{name}` is not a generator of T_{}", alg.n)))?;
            let (i, j) = alg.gen_pair(idx);
            images.push(Self::gen(alg, i, j));
        }
        Self::evaluate(f, &images)
    }
}

fn mul_rec<C: Coeff>(terms: &[(Word, &C)], v: &HoloSeries<C>) -> HoloSeries<C> {
    let mut out = HoloSeries::zero(&v.alg).truncate(v.known);
    let mut groups: BTreeMap<u8, Vec<(Word, &C)>> = BTreeMap::new();
    for (w, c) in terms {
        if w.is_empty() {
            for (m, d) in &v.terms {
                out.add_term(*m, &c.mul_ref(d));
            }
        } else {
            groups.entry(w.letter(0)).or_default().push((w.tail(), *c));
        }
    }
    for (g, sub) in groups {
        let room = v.known.saturating_sub(1);
        let inner = mul_rec(&sub, &v.truncate(room));
        let prod = inner.left_gen_mul(g);
        for (m, d) in &prod.terms {
            out.add_term(*m, d);
        }
    }
    out
}

impl<C: Coeff> NcAlgebra<C> for HoloSeries<C> {
    fn alg_one(&self) -> Self {
        HoloSeries::one(&self.alg)
    }
    fn alg_zero(&self) -> Self {
        HoloSeries::zero(&self.alg)
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

/// Element `A·s` of `S_n ⋉ U(T_n)`, where `s t_ij s⁻¹ = t_{s(i) s(j)}`.
/// `perm[i-1] = s(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiElt<C: Coeff> {
    pub coeff: HoloSeries<C>,
    pub perm: Vec<usize>,
}

impl<C: Coeff> SemiElt<C> {
    pub fn one(alg: &Arc<HoloAlgebra>) -> Self {
        SemiElt { coeff: HoloSeries::one(alg), perm: (1..=alg.n()).collect() }
    }

    /// The transposition `s_i = (i, i+1)`.
    pub fn transposition(alg: &Arc<HoloAlgebra>, i: usize) -> Self {
        let mut perm: Vec<usize> = (1..=alg.n()).collect();
        perm.swap(i - 1, i);
        SemiElt { coeff: HoloSeries::one(alg), perm }
    }

    pub fn from_series(a: HoloSeries<C>) -> Self {
        let n = a.algebra().n();
        SemiElt { coeff: a, perm: (1..=n).collect() }
    }

    pub fn is_pure(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i + 1)
    }

    /// `(A s)(B r) = A s(B) · s r`.
    pub fn mul(&self, o: &Self) -> Self {
        let coeff = self.coeff.mul(&o.coeff.permute(&self.perm));
        let perm = o.perm.iter().map(|&r| self.perm[r - 1]).collect();
        SemiElt { coeff, perm }
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p - 1] = i + 1;
        }
        let coeff = self.coeff.inverse()?.permute(&inv);
        Ok(SemiElt { coeff, perm: inv })
    }
}
