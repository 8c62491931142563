//! Braid words, infinitesimal representations of the semi-direct product
//! `k[S_n] ⋉ U(T_n)`, the functor `ρ ↦ Φ̂(ρ)` into representations of `B_n`
//! over `k[[h]]`, the `GT_1` action on such representations, and extraction of
//! diagonal conjugators.

use std::collections::BTreeMap;
use std::fmt;

use crate::check::CheckOutcome;
use crate::coeff::{int, rat, Coeff, CoeffText, Rational, SymCoef};
use crate::error::{Error, Result};
use crate::linalg::invert_matrix;
use crate::scalar::ScalarSeries;
use crate::series::{NCSeries, NcAlgebra};

// ---------------------------------------------------------------------------
// Braid words

/// A word in the Artin generators `σ_i^{±1}` of `B_n`.
/// Merges adjacent powers of the same generator and drops zero exponents.
fn reduce(letters: Vec<(usize, i32)>) -> Vec<(usize, i32)> {
    let mut out: Vec<(usize, i32)> = Vec::with_capacity(letters.len());
    for (i, e) in letters {
        match out.last_mut() {
            Some(last) if last.0 == i => {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
            }
            _ => out.push((i, e)),
        }
    }
    out
}

/// A word in `σ_i^{±1}`, kept freely reduced with adjacent powers merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    n: usize,
    letters: Vec<(usize, i32)>,
}

impl BraidWord {
    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// Letters `(i, e)` standing for `σ_i^e`; indices must lie in `[1, n-1]`.
    pub fn new(n: usize, letters: Vec<(usize, i32)>) -> Result<Self> {
        for &(i, e) in &letters {
            if i == 0 || i >= n {
                return Err(Error::Precondition(format!("σ_{i} is not a generator of B_{n}")));
            }
            if e == 0 {
                return Err(Error::Precondition("zero exponent".into()));
            }
        }
        Ok(BraidWord { n, letters: reduce(letters) })
    }

    pub fn sigma(n: usize, i: usize, e: i32) -> Result<Self> {
        Self::new(n, vec![(i, e)])
    }

    /// `δ_r = σ_{r-1}⋯σ_2 σ_1² σ_2⋯σ_{r-1}`, with `δ_1 = 1`.
    pub fn delta(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::Precondition(format!("δ_{r} outside B_{n}")));
        }
        let mut l: Vec<(usize, i32)> = (1..r).rev().map(|i| (i, 1)).collect();
        l.extend((1..r).map(|i| (i, 1)));
        Self::new(n, l)
    }

    /// `ξ_ij = σ_{j-1}⋯σ_{i+1} σ_i² σ_{i+1}^{-1}⋯σ_{j-1}^{-1}` for `i < j`.
    pub fn xi(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > n {
            return Err(Error::Precondition(format!("ξ_{i}{j} outside B_{n}")));
        }
        let mut l: Vec<(usize, i32)> = (i + 1..j).rev().map(|k| (k, 1)).collect();
        l.push((i, 2));
        l.extend((i + 1..j).map(|k| (k, -1)));
        Self::new(n, l)
    }

    /// `γ_r = (σ_1⋯σ_{r-1})^r`.
    pub fn gamma(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::Precondition(format!("γ_{r} outside B_{n}")));
        }
        let mut l = Vec::new();
        for _ in 0..r {
            l.extend((1..r).map(|i| (i, 1)));
        }
        Self::new(n, l)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.letters
    }

    pub fn concat(&self, o: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        BraidWord { n: self.n.max(o.n), letters: reduce(letters) }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect() }
    }

    /// Parses `s1 s2^-1 d3 x13 g4`: `s` is `σ_i`, `d` is `δ_r`, `x` is `ξ_ij`
    /// (two single-digit indices) and `g` is `γ_r`; each may carry `^e`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut out = Self::identity(n);
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (body, e) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            let mut chars = body.chars();
            let kind = chars.next().ok_or_else(|| Error::Parse("empty token".into()))?;
            let digits: String = chars.collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad index in `{tok}`")));
            let base = match kind {
                's' => Self::sigma(n, num(&digits)?, 1)?,
                'd' => Self::delta(n, num(&digits)?)?,
                'g' => Self::gamma(n, num(&digits)?)?,
                'x' => {
                    if digits.len() != 2 {
                        return Err(Error::Parse(format!("`{tok}` needs two single-digit indices")));
                    }
                    Self::xi(n, num(&digits[..1])?, num(&digits[1..])?)?
                }
                _ => return Err(Error::Parse(format!("unknown generator `{tok}`"))),
            };
            if e == 0 {
                continue;
            }
            let piece = if e > 0 { base } else { base.inverse() };
            for _ in 0..e.unsigned_abs() {
                out = out.concat(&piece);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, e)| if e == 1 { format!("s{i}") } else { format!("s{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

// ---------------------------------------------------------------------------
// Constant matrices

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<C> {
    n: usize,
    e: Vec<C>,
}

impl<C: Coeff> Mat<C> {
    pub fn zeros(n: usize) -> Self {
        Mat { n, e: vec![C::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.e[i * n + i] = C::one();
        }
        m
    }

    pub fn diag(d: &[C]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix rows of unequal length".into()));
        }
        Ok(Mat { n, e: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        Mat { n, e }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.e[i * self.n + j] = c;
    }

    pub fn rows(&self) -> Vec<Vec<C>> {
        self.e.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Mat { n: self.n, e: self.e.iter().map(|a| a.neg_ref()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Mat { n: self.n, e: self.e.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        Mat { n: self.n, e: self.e.iter().map(|a| a.scale(r)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.e[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.e[k * n + j];
                    if !b.is_zero() {
                        out.e[i * n + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn trace(&self) -> C {
        let mut t = C::zero();
        for i in 0..self.n {
            t.add_assign_ref(self.get(i, i));
        }
        t
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = invert_matrix(&self.rows())?;
        Self::from_rows(inv)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Mat<D> {
        Mat { n: self.n, e: self.e.iter().map(f).collect() }
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        (0..self.n * self.n).find(|&k| self.e[k] != o.e[k]).map(|k| (k / self.n, k % self.n))
    }
}

impl<C: Coeff> fmt::Display for Mat<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Matrices over k[[h]]

/// `Σ_k M_k h^k` with every `M_k` known for `k ≤ known`.
#[derive(Clone, Debug, PartialEq)]
pub struct HMatrix<C> {
    n: usize,
    maxdeg: usize,
    coeffs: Vec<Mat<C>>,
}

impl<C: Coeff> HMatrix<C> {
    pub fn zero(n: usize, maxdeg: usize) -> Self {
        HMatrix { n, maxdeg, coeffs: vec![Mat::zeros(n); maxdeg + 1] }
    }

    pub fn identity(n: usize, maxdeg: usize) -> Self {
        Self::constant(&Mat::identity(n), maxdeg)
    }

    pub fn constant(m: &Mat<C>, maxdeg: usize) -> Self {
        let mut out = Self::zero(m.dim(), maxdeg);
        out.coeffs[0] = m.clone();
        out
    }

    /// `h^k · m`, exact.
    pub fn monomial(m: &Mat<C>, k: usize, maxdeg: usize) -> Self {
        let mut out = Self::zero(m.dim(), maxdeg);
        if k <= maxdeg {
            out.coeffs[k] = m.clone();
        }
        out
    }

    /// Coefficients `M_0, M_1, …` known through their count.
    pub fn from_coeffs(maxdeg: usize, coeffs: Vec<Mat<C>>) -> Result<Self> {
        let n = coeffs.first().map(|m| m.dim()).ok_or_else(|| Error::Precondition("no coefficients".into()))?;
        if coeffs.len() > maxdeg + 1 || coeffs.iter().any(|m| m.dim() != n) {
            return Err(Error::Precondition("coefficient list does not fit".into()));
        }
        Ok(HMatrix { n, maxdeg, coeffs })
    }

    pub fn from_entries(entries: &[Vec<ScalarSeries<C>>]) -> Result<Self> {
        let n = entries.len();
        let first = entries.first().and_then(|r| r.first()).ok_or_else(|| Error::Precondition("empty matrix".into()))?;
        let maxdeg = first.maxdeg();
        let known = entries.iter().flatten().map(|s| s.known()).min().unwrap_or(0);
        let coeffs = (0..=known)
            .map(|k| Mat::from_fn(n, |i, j| entries[i][j].coeff(k)))
            .collect();
        Ok(HMatrix { n, maxdeg, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn known(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `h^k`; zero beyond the known order.
    pub fn coeff(&self, k: usize) -> Mat<C> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Mat::zeros(self.n))
    }

    pub fn entry(&self, i: usize, j: usize) -> ScalarSeries<C> {
        let v: Vec<C> = self.coeffs.iter().map(|m| m.get(i, j).clone()).collect();
        ScalarSeries::from_coeffs(self.maxdeg, v).truncate(self.known())
    }

    pub fn truncate(&self, k: usize) -> Self {
        let k = k.min(self.known());
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs: self.coeffs[..=k].to_vec() }
    }

    fn zip(&self, o: &Self, f: impl Fn(&Mat<C>, &Mat<C>) -> Mat<C>) -> Self {
        let k = self.known().min(o.known());
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs: (0..=k).map(|i| f(&self.coeffs[i], &o.coeffs[i])).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs: self.coeffs.iter().map(|m| m.neg()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs: self.coeffs.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs: self.coeffs.iter().map(|m| m.scale_rat(r)).collect() }
    }

    /// Product with a scalar series.
    pub fn scale_series(&self, s: &ScalarSeries<C>) -> Self {
        let k = self.known().min(s.known());
        let coeffs = (0..=k)
            .map(|d| {
                let mut acc = Mat::zeros(self.n);
                for i in 0..=d {
                    let c = s.coeff(d - i);
                    if !c.is_zero() {
                        acc = acc.add(&self.coeffs[i].scale(&c));
                    }
                }
                acc
            })
            .collect();
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.known().min(o.known());
        let mut coeffs = vec![Mat::zeros(self.n); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(k + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs }
    }

    pub fn inverse(&self) -> Result<Self> {
        let m0inv = self.coeffs[0].inverse()?;
        let m0inv_h = Self::constant(&m0inv, self.maxdeg);
        let mut nil = Self::constant(&Mat::zeros(self.n), self.maxdeg).add(self);
        nil.coeffs[0] = Mat::zeros(self.n);
        let u = m0inv_h.mul(&nil).neg();
        let mut sum = Self::identity(self.n, self.maxdeg).truncate(self.known());
        let mut p = sum.clone();
        for _ in 0..self.known() {
            p = p.mul(&u);
            sum = sum.add(&p);
        }
        Ok(sum.mul(&m0inv_h))
    }

    /// Exponential of a matrix with vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs a matrix ≡ 0 mod h".into()));
        }
        let mut sum = Self::identity(self.n, self.maxdeg).truncate(self.known());
        let mut term = sum.clone();
        for k in 1..=self.known() {
            term = term.mul(self).scale_rat(&rat(1, k as i64));
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// Logarithm of a matrix `≡ 1 mod h`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_identity() {
            return Err(Error::Precondition("log needs a matrix ≡ 1 mod h".into()));
        }
        let u = self.sub(&Self::identity(self.n, self.maxdeg));
        let mut sum = Self::zero(self.n, self.maxdeg).truncate(self.known());
        let mut p = Self::identity(self.n, self.maxdeg);
        for k in 1..=self.known() {
            p = p.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum = sum.add(&p.scale_rat(&rat(sign, k as i64)));
        }
        Ok(sum)
    }

    pub fn transpose(&self) -> Self {
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs: self.coeffs.iter().map(|m| m.transpose()).collect() }
    }

    /// `h ↦ -h`.
    pub fn eps(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, m)| if k % 2 == 1 { m.neg() } else { m.clone() })
            .collect();
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HMatrix<D> {
        HMatrix { n: self.n, maxdeg: self.maxdeg, coeffs: self.coeffs.iter().map(|m| m.map(&f)).collect() }
    }

    /// Lowest power of `h` with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|m| !m.is_zero())
    }

    /// Equality of the coefficients known on both sides.
    pub fn agrees(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }

    /// Lowest power at which the known coefficients differ, with the entry.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, usize)> {
        let k = self.known().min(o.known());
        (0..=k).find_map(|d| self.coeffs[d].first_difference(&o.coeffs[d]).map(|(i, j)| (d, i, j)))
    }

    /// Entrywise scalar series.
    pub fn entries(&self) -> Vec<Vec<ScalarSeries<C>>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j)).collect()).collect()
    }
}

impl<C: Coeff> NcAlgebra<C> for HMatrix<C> {
    fn alg_one(&self) -> Self {
        Self::identity(self.n, self.maxdeg).truncate(self.known())
    }
    fn alg_zero(&self) -> Self {
        Self::zero(self.n, self.maxdeg).truncate(self.known())
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

/// `f(U, V)` for the letters `x ↦ U`, `y ↦ V` of a two-letter series. The
/// arguments must be `≡ 0 mod h`; the result is known through the smaller of
/// the series' and the arguments' known orders.
pub fn evaluate2<C: Coeff>(f: &NCSeries<C>, u: &HMatrix<C>, v: &HMatrix<C>) -> Result<HMatrix<C>> {
    if !u.coeff(0).is_zero() || !v.coeff(0).is_zero() {
        return Err(Error::Precondition("matrix arguments must vanish mod h".into()));
    }
    let unit = HMatrix::identity(u.dim(), u.maxdeg());
    let out = f.evaluate(&[u.clone(), v.clone()], &unit);
    Ok(out.truncate(f.known_order().min(u.known()).min(v.known())))
}

/// Grouplike `f` at group elements `A, B ≡ 1 mod h`: `f(log A, log B)`.
pub fn evaluate_group<C: Coeff>(f: &NCSeries<C>, a: &HMatrix<C>, b: &HMatrix<C>) -> Result<HMatrix<C>> {
    evaluate2(f, &a.log()?, &b.log()?)
}

const H_SYMBOL: &str = "h";

/// Dense text grid: a header line, then one line per row with tab-separated
/// entries written as polynomials in `h`.
pub fn render_hmatrix<C: CoeffText>(m: &HMatrix<C>) -> String {
    let mut syms = std::collections::BTreeSet::new();
    for c in &m.coeffs {
        for x in &c.e {
            syms.extend(x.symbols());
        }
    }
    let ring = if syms.is_empty() {
        "Q".to_string()
    } else {
        let names: Vec<&str> = syms.iter().map(|s| &**s).collect();
        format!("Q[{}]", names.join(","))
    };
    let mut out = format!("dim={} maxdeg={} known={} ring={}\n", m.n, m.maxdeg, m.known(), ring);
    for i in 0..m.n {
        let cells: Vec<String> = (0..m.n)
            .map(|j| {
                let parts: Vec<String> = m
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.get(i, j).is_zero())
                    .map(|(k, c)| {
                        let v = c.get(i, j).render();
                        match k {
                            0 => format!("({v})"),
                            1 => format!("({v})*{H_SYMBOL}"),
                            _ => format!("({v})*{H_SYMBOL}^{k}"),
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            })
            .collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

pub fn parse_hmatrix<C: CoeffText>(text: &str) -> Result<HMatrix<C>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut fields = BTreeMap::new();
    for f in header.split_whitespace() {
        let (k, v) = f.split_once('=').ok_or_else(|| Error::Parse(format!("bad header field `{f}`")))?;
        fields.insert(k, v);
    }
    let get_num = |k: &str| -> Result<usize> {
        fields
            .get(k)
            .ok_or_else(|| Error::Parse(format!("missing {k}")))?
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad {k}")))
    };
    let n = get_num("dim")?;
    let maxdeg = get_num("maxdeg")?;
    let known = get_num("known")?;
    if known > maxdeg {
        return Err(Error::Parse(format!("known {known} exceeds maxdeg {maxdeg}")));
    }
    let ring = fields.get("ring").ok_or_else(|| Error::Parse("missing ring".into()))?;
    let declared: Vec<&str> = if *ring == "Q" {
        Vec::new()
    } else {
        ring.strip_prefix("Q[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad ring `{ring}`")))?
            .split(',')
            .collect()
    };
    if declared.contains(&H_SYMBOL) {
        return Err(Error::Parse("`h` is reserved for the series variable".into()));
    }
    let mut coeffs = vec![Mat::zeros(n); known + 1];
    let rows: Vec<&str> = lines.collect();
    if rows.len() != n {
        return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split('\t').collect();
        if cells.len() != n {
            return Err(Error::Parse(format!("row {} has {} entries", i + 1, cells.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            let poly = SymCoef::parse_text(cell)?;
            for s in poly.symbols() {
                if &*s != H_SYMBOL && !declared.contains(&&*s) {
                    return Err(Error::Parse(format!("symbol `{s}` not declared in ring")));
                }
            }
            let mut by_power: BTreeMap<u32, SymCoef> = BTreeMap::new();
            for (mono, c) in poly.terms() {
                let k = mono.exponent(H_SYMBOL);
                let mut rest = mono.clone();
                for _ in 0..k {
                    rest = rest.without(H_SYMBOL).expect("exponent counts h factors");
                }
                by_power.entry(k).or_insert_with(SymCoef::zero).add_term(rest, c);
            }
            for (k, c) in by_power {
                let k = k as usize;
                if k > known {
                    return Err(Error::Parse(format!("h^{k} beyond known order {known}")));
                }
                coeffs[k].set(i, j, C::parse_text(&c.render())?);
            }
        }
    }
    Ok(HMatrix { n, maxdeg, coeffs })
}

// ---------------------------------------------------------------------------
// Infinitesimal representations

/// Matrices for `s_i` (`i = 1..n-1`) and `t_ij` (`i < j`).
#[derive(Clone, Debug)]
pub struct InfinitesimalRep<C> {
    n: usize,
    dim: usize,
    s: Vec<Mat<C>>,
    t: BTreeMap<(usize, usize), Mat<C>>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl<C: Coeff> InfinitesimalRep<C> {
    /// Builds and validates a representation.
    pub fn new(n: usize, s: Vec<Mat<C>>, t: BTreeMap<(usize, usize), Mat<C>>) -> Result<Self> {
        let r = Self::new_unchecked(n, s, t)?;
        if let Some(bad) = r.validate().into_iter().find(|o| !o.passed) {
            return Err(Error::Precondition(format!("not a representation: {bad}")));
        }
        Ok(r)
    }

    /// Builds without checking relations; only shapes are checked.
    pub fn new_unchecked(n: usize, s: Vec<Mat<C>>, t: BTreeMap<(usize, usize), Mat<C>>) -> Result<Self> {
        if n < 2 || s.len() != n - 1 {
            return Err(Error::Precondition(format!("need {} matrices s_i", n.saturating_sub(1))));
        }
        let dim = s[0].dim();
        for i in 1..=n {
            for j in i + 1..=n {
                if !t.contains_key(&(i, j)) {
                    return Err(Error::Precondition(format!("missing t_{i}{j}")));
                }
            }
        }
        if s.iter().chain(t.values()).any(|m| m.dim() != dim) {
            return Err(Error::Precondition("matrices of unequal size".into()));
        }
        Ok(InfinitesimalRep { n, dim, s, t })
    }

    /// `t_ij = c·ρ((i j))` from matrices of the adjacent transpositions.
    pub fn from_symmetric(n: usize, s: Vec<Mat<C>>, c: &Rational) -> Result<Self> {
        let mut t = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                // (i j) = s_{j-1}⋯s_{i+1} s_i s_{i+1}⋯s_{j-1}
                let mut m = s[i - 1].clone();
                for k in i + 1..j {
                    m = s[k - 1].mul(&m).mul(&s[k - 1]);
                }
                t.insert((i, j), m.scale_rat(c));
            }
        }
        Self::new(n, s, t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn s(&self, i: usize) -> &Mat<C> {
        &self.s[i - 1]
    }

    pub fn t(&self, i: usize, j: usize) -> &Mat<C> {
        &self.t[&key(i, j)]
    }

    /// `Y_r = t_1r + ⋯ + t_{r-1,r}`.
    pub fn y(&self, r: usize) -> Mat<C> {
        let mut m = Mat::zeros(self.dim);
        for i in 1..r {
            m = m.add(self.t(i, r));
        }
        m
    }

    pub fn validate(&self) -> Vec<CheckOutcome> {
        let n = self.n;
        let id = Mat::identity(self.dim);
        let mut out = Vec::new();
        let mut bad: Vec<String> = Vec::new();
        for i in 1..n {
            if self.s(i).mul(self.s(i)) != id {
                bad.push(format!("s{i}^2"));
            }
            for j in i + 1..n {
                let (a, b) = (self.s(i), self.s(j));
                let ok = if j == i + 1 {
                    a.mul(b).mul(a) == b.mul(a).mul(b)
                } else {
                    a.mul(b) == b.mul(a)
                };
                if !ok {
                    bad.push(format!("s{i},s{j}"));
                }
            }
        }
        out.push(CheckOutcome::new("symmetric-group", bad.is_empty(), witness(&bad)));

        let mut bad = Vec::new();
        let pairs: Vec<(usize, usize)> = self.t.keys().copied().collect();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                if (k, l) <= (i, j) {
                    continue;
                }
                if [i, j].iter().all(|a| *a != k && *a != l) && !self.t(i, j).commutator(self.t(k, l)).is_zero() {
                    bad.push(format!("[t{i}{j},t{k}{l}]"));
                }
            }
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let sum = self.t(i, k).add(self.t(j, k));
                if !self.t(i, j).commutator(&sum).is_zero() {
                    bad.push(format!("[t{i}{j},t{i}{k}+t{j}{k}]"));
                }
            }
        }
        out.push(CheckOutcome::new("holonomy-relations", bad.is_empty(), witness(&bad)));

        let mut bad = Vec::new();
        for r in 1..n {
            let swap = |a: usize| if a == r { r + 1 } else if a == r + 1 { r } else { a };
            for &(i, j) in &pairs {
                let lhs = self.s(r).mul(self.t(i, j)).mul(self.s(r));
                if lhs != *self.t(swap(i), swap(j)) {
                    bad.push(format!("s{r}.t{i}{j}"));
                }
            }
        }
        out.push(CheckOutcome::new("equivariance", bad.is_empty(), witness(&bad)));
        out
    }
}

fn witness(bad: &[String]) -> String {
    if bad.is_empty() {
        "all relations hold".into()
    } else {
        format!("violated: {}", bad.join(" "))
    }
}

/// The three-dimensional representation of `k[S_3] ⋉ U(T_3)` with parameter `v`.
pub fn b3_example<C: Coeff>(v: &C) -> Result<InfinitesimalRep<C>> {
    let q = |r: i64| C::from_int(r);
    let one_plus = v.add_ref(&q(1));
    let inv_1pv = one_plus.inverse().ok_or_else(|| Error::Precondition("v = -1".into()))?;
    let inv_4v = v.mul_ref(&q(4)).inverse().ok_or_else(|| Error::Precondition("v = 0".into()))?;
    let s1 = Mat::diag(&[q(1), q(1), q(-1)]);
    let two_v = v.mul_ref(&q(2));
    let s2 = Mat::from_rows(vec![
        vec![v.sub_ref(&q(3)), v.sub_ref(&q(1)).mul_ref(&q(3)), one_plus.mul_ref(&q(3))],
        vec![one_plus.mul_ref(&q(3)), v.add_ref(&q(3)), one_plus.mul_ref(&q(-3))],
        vec![two_v.clone(), two_v.mul_ref(&q(1).sub_ref(v)).mul_ref(&inv_1pv), two_v],
    ])?
    .scale(&inv_4v);
    let half = Rational::new(1.into(), 2.into());
    let t12 = Mat::diag(&[q(3).add_ref(v).scale(&half), q(3).sub_ref(v).scale(&half), C::zero()]);
    let t13 = s2.mul(&t12).mul(&s2);
    let t23 = s1.mul(&t13).mul(&s1);
    let t = BTreeMap::from([((1, 2), t12), ((2, 3), t23), ((1, 3), t13)]);
    InfinitesimalRep::new(3, vec![s1, s2], t)
}

// ---------------------------------------------------------------------------
// Representations of B_n over k[[h]]

/// Images of `σ_1, …, σ_{n-1}` and their inverses.
#[derive(Clone, Debug)]
pub struct BraidRep<C> {
    n: usize,
    gens: Vec<HMatrix<C>>,
    invs: Vec<HMatrix<C>>,
    /// Where the representation came from, for reports.
    pub provenance: String,
}

impl<C: Coeff> BraidRep<C> {
    pub fn new(n: usize, gens: Vec<HMatrix<C>>, provenance: impl Into<String>) -> Result<Self> {
        if gens.len() + 1 != n {
            return Err(Error::Precondition(format!("need {} generator images", n - 1)));
        }
        let invs = gens.iter().map(|g| g.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(BraidRep { n, gens, invs, provenance: provenance.into() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }

    pub fn maxdeg(&self) -> usize {
        self.gens[0].maxdeg()
    }

    pub fn known(&self) -> usize {
        self.gens.iter().map(|g| g.known()).min().unwrap_or(0)
    }

    pub fn generator(&self, i: usize) -> &HMatrix<C> {
        &self.gens[i - 1]
    }

    pub fn image(&self, w: &BraidWord) -> Result<HMatrix<C>> {
        if w.n() > self.n {
            return Err(Error::Precondition(format!("word in B_{} for a rep of B_{}", w.n(), self.n)));
        }
        let mut out = HMatrix::identity(self.dim(), self.maxdeg()).truncate(self.known());
        for &(i, e) in w.letters() {
            let g = if e > 0 { &self.gens[i - 1] } else { &self.invs[i - 1] };
            for _ in 0..e.unsigned_abs() {
                out = out.mul(g);
            }
        }
        Ok(out)
    }

    pub fn braid_relation_check(&self) -> CheckOutcome {
        let mut bad = Vec::new();
        for i in 1..self.n {
            for j in i + 1..self.n {
                let (a, b) = (&self.gens[i - 1], &self.gens[j - 1]);
                let (l, r) = if j == i + 1 { (a.mul(b).mul(a), b.mul(a).mul(b)) } else { (a.mul(b), b.mul(a)) };
                if let Some((d, p, q)) = l.first_difference(&r) {
                    bad.push(format!("σ{i},σ{j} at h^{d} entry ({},{})", p + 1, q + 1));
                }
            }
        }
        let w = if bad.is_empty() { format!("exact through h^{}", self.known()) } else { bad.join("; ") };
        CheckOutcome::new("braid-relations", bad.is_empty(), w)
    }

    /// `ξ_ij ≡ 1 mod h` and commutators of pairs of `ξ`'s `≡ 1 mod h²`.
    pub fn pure_braid_depth_check(&self) -> Result<CheckOutcome> {
        let id = Mat::identity(self.dim());
        let mut xis = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                xis.push(((i, j), self.image(&BraidWord::xi(self.n, i, j)?)?));
            }
        }
        let mut bad = Vec::new();
        for ((i, j), m) in &xis {
            if m.coeff(0) != id {
                bad.push(format!("ξ{i}{j} mod h"));
            }
        }
        for (a, (p, x)) in xis.iter().enumerate() {
            for (q, y) in xis.iter().skip(a + 1) {
                let c = x.mul(y).mul(&x.inverse()?).mul(&y.inverse()?);
                if c.coeff(0) != id || (c.known() >= 1 && !c.coeff(1).is_zero()) {
                    bad.push(format!("(ξ{}{},ξ{}{}) mod h^2", p.0, p.1, q.0, q.1));
                }
            }
        }
        let w = if bad.is_empty() { "ξ in 1+hM, commutators in 1+h^2M".to_string() } else { bad.join("; ") };
        Ok(CheckOutcome::new("pure-braid-depth", bad.is_empty(), w))
    }

    /// Images of the generators agree at every coefficient known on both sides.
    pub fn agrees(&self, o: &Self) -> Option<String> {
        for i in 0..self.gens.len() {
            if let Some((d, p, q)) = self.gens[i].first_difference(&o.gens[i]) {
                return Some(format!("σ{} at h^{d} entry ({},{})", i + 1, p + 1, q + 1));
            }
        }
        None
    }
}

/// `Φ̂(ρ)`: `σ_i ↦ Φ(ht_{i,i+1}, hY_i) ρ(s_i) exp(λ h t_{i,i+1}/2) Φ(hY_i, ht_{i,i+1})`.
pub fn phat<C: Coeff>(rho: &InfinitesimalRep<C>, phi: &NCSeries<C>, lambda: &Rational) -> Result<BraidRep<C>> {
    let maxdeg = phi.maxdeg();
    let mut gens = Vec::new();
    for i in 1..rho.n() {
        let t = HMatrix::monomial(rho.t(i, i + 1), 1, maxdeg);
        let y = HMatrix::monomial(&rho.y(i), 1, maxdeg);
        let left = evaluate2(phi, &t, &y)?;
        let right = evaluate2(phi, &y, &t)?;
        let mid = t.scale_rat(&(lambda / int(2))).exp()?;
        let s = HMatrix::constant(rho.s(i), maxdeg);
        gens.push(left.mul(&s).mul(&mid).mul(&right));
    }
    BraidRep::new(rho.n(), gens, format!("phat(lambda={lambda})"))
}

/// Which of the two arguments of `f` receives `δ_r` in the `GT_1` twist of `σ_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistOrder {
    /// `f(δ_r, σ_r²)`.
    DeltaFirst,
    /// `f(σ_r², δ_r)`.
    SigmaSquaredFirst,
}

/// `g.R`: `σ_1 ↦ R(σ_1)`, `σ_r ↦ F_r⁻¹ R(σ_r) F_r` with `F_r = g(R(δ_r), R(σ_r²))`.
pub fn gt_act_on_rep<C: Coeff>(r: &BraidRep<C>, g: &NCSeries<C>) -> Result<BraidRep<C>> {
    gt_act_on_rep_with(r, g, TwistOrder::DeltaFirst)
}

pub fn gt_act_on_rep_with<C: Coeff>(r: &BraidRep<C>, g: &NCSeries<C>, order: TwistOrder) -> Result<BraidRep<C>> {
    let mut gens = vec![r.generator(1).clone()];
    for k in 2..r.n() {
        let delta = r.image(&BraidWord::delta(r.n(), k)?)?;
        let sq = r.image(&BraidWord::sigma(r.n(), k, 2)?)?;
        let f = match order {
            TwistOrder::DeltaFirst => evaluate_group(g, &delta, &sq)?,
            TwistOrder::SigmaSquaredFirst => evaluate_group(g, &sq, &delta)?,
        };
        gens.push(f.inverse()?.mul(r.generator(k)).mul(&f));
    }
    BraidRep::new(r.n(), gens, format!("g.({})", r.provenance))
}

/// Deterministic probe words: `1 + σ_1 + σ_1σ_2 + ⋯ + σ_1⋯σ_{n-1}` first,
/// then single words of increasing length.
fn probe_candidates(n: usize) -> Vec<Vec<BraidWord>> {
    let mut out = Vec::new();
    let mut default = vec![BraidWord::identity(n)];
    for k in 1..n {
        default.push(BraidWord::new(n, (1..=k).map(|i| (i, 1)).collect()).expect("valid"));
    }
    out.push(default);
    let mut words = vec![BraidWord::identity(n)];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &words {
            for i in 1..n {
                next.push(w.concat(&BraidWord::sigma(n, i, 1).expect("valid")));
            }
        }
        for w in &next {
            out.push(vec![w.clone()]);
        }
        words = next;
    }
    out
}

/// The diagonal `D = diag(a_1 = 1, a_2, …, a_N)` with `R(σ) D = D R′(σ)` for all
/// generators, read off as `a_j = y_1j / x_1j` with `x = R(P)`, `y = R′(P)` for a
/// probe `P` (a sum of words) whose first row under `R` has all entries of equal
/// `h`-order.
pub fn diagonal_conjugator<C: Coeff>(
    r: &BraidRep<C>,
    r2: &BraidRep<C>,
    probe: Option<&[BraidWord]>,
) -> Result<Vec<ScalarSeries<C>>> {
    let candidates = match probe {
        Some(p) => vec![p.to_vec()],
        None => probe_candidates(r.n()),
    };
    let n = r.dim();
    for words in candidates {
        let mut x = HMatrix::zero(n, r.maxdeg()).truncate(r.known());
        let mut y = x.clone();
        for w in &words {
            x = x.add(&r.image(w)?);
            y = y.add(&r2.image(w)?);
        }
        let row: Vec<ScalarSeries<C>> = (0..n).map(|j| x.entry(0, j)).collect();
        let Some(o) = row[0].order() else { continue };
        if row.iter().any(|s| s.order() != Some(o)) {
            continue;
        }
        // R(P) D = D R'(P) at entry (1, j): x_1j a_j = a_1 y_1j = y_1j.
        let a: Vec<ScalarSeries<C>> = (0..n).map(|j| y.entry(0, j).div(&row[j])).collect::<Result<_>>()?;
        let d = HMatrix::from_entries(
            &(0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { a[i].clone() } else { ScalarSeries::zero(r.maxdeg()).truncate(a[i].known()) })
                        .collect()
                })
                .collect::<Vec<_>>(),
        )?;
        for i in 1..r.n() {
            let lhs = r.generator(i).mul(&d);
            let rhs = d.mul(r2.generator(i));
            if let Some((deg, p, q)) = lhs.first_difference(&rhs) {
                return Err(Error::Precondition(format!(
                    "the diagonal candidate does not conjugate σ{i}: h^{deg} entry ({},{})",
                    p + 1,
                    q + 1
                )));
            }
        }
        return Ok(a);
    }
    Err(Error::Precondition("no probe has a full-support first row; supply a probe".into()))
}

/// Leading term of `Φ̂_2(ρ)(σ_2) − Φ̂_1(ρ)(σ_2)` against its prediction
/// `ρ(s_2)(c(Φ_1) − c(Φ_2)) ρ([t_23,[t_23,t_12]])`. Returns the first power at
/// which the difference is nonzero, the `h³` coefficient and the prediction.
pub fn sigma2_difference<C: Coeff>(
    rho: &InfinitesimalRep<C>,
    phi1: &NCSeries<C>,
    phi2: &NCSeries<C>,
    c1: &C,
    c2: &C,
) -> Result<(Option<usize>, Mat<C>, Mat<C>)> {
    let r1 = phat(rho, phi1, &int(1))?;
    let r2 = phat(rho, phi2, &int(1))?;
    let diff = r2.generator(2).sub(r1.generator(2));
    let (t12, t23) = (rho.t(1, 2), rho.t(2, 3));
    let pred = rho.s(2).mul(&t23.commutator(&t23.commutator(t12))).scale(&c1.sub_ref(c2));
    Ok((diff.order(), diff.coeff(3), pred))
}
