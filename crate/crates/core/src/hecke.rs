//! Partitions, standard tableaux and matrix models of the Iwahori–Hecke
//! algebra `H_n(q)` at `q = e^h`.
//!
//! Conventions: the parts of a partition are column lengths, rows are counted
//! from the bottom, and the content of a label is `row − column`. Tableaux of
//! one shape are ordered by decreasing lexicographic order of their content
//! vectors `(c_2, …, c_n)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::braid::{evaluate2, BraidRep, HMatrix, InfinitesimalRep, Mat};
use crate::check::CheckOutcome;
use crate::coeff::{int, rat, Coeff};
use crate::error::{Error, Result};
use crate::scalar::ScalarSeries;
use crate::series::NCSeries;

/// Weakly decreasing column lengths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Comma list such as `3,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Length of column `c` (1-based), zero past the last column.
    pub fn column_len(&self, c: usize) -> usize {
        self.0.get(c - 1).copied().unwrap_or(0)
    }

    /// Length of row `l` (1-based).
    pub fn row_len(&self, l: usize) -> usize {
        self.0.iter().filter(|&&p| p >= l).count()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && row <= self.column_len(col)
    }

    pub fn conjugate(&self) -> Partition {
        Partition((1..=self.0[0]).map(|l| self.row_len(l)).collect())
    }

    /// `[m, 1^k]`.
    pub fn is_hook(&self) -> bool {
        self.0[1..].iter().all(|&p| p == 1)
    }

    pub fn contains(&self, o: &Partition) -> bool {
        o.0.len() <= self.0.len() && o.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Cells `(row, col)`, column by column from the bottom.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, &len) in self.0.iter().enumerate() {
            for l in 1..=len {
                out.push((l, c + 1));
            }
        }
        out
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Lengths `c' − c + l − l'` of all pairs of cells `x = (l, c)`, `y = (l', c')`
    /// with `c < c'` and `l > l'`.
    pub fn hook_pair_lengths(&self) -> Vec<usize> {
        let cells = self.cells();
        let mut out = Vec::new();
        for &(l, c) in &cells {
            for &(l2, c2) in &cells {
                if c < c2 && l > l2 {
                    out.push(c2 - c + l - l2);
                }
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A standard tableau: `pos[i-1]` is the `(row, col)` cell of label `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    pos: Vec<(usize, usize)>,
}

impl StandardTableau {
    /// From the label of each cell; checks that rows and columns increase.
    pub fn from_positions(shape: &Partition, pos: Vec<(usize, usize)>) -> Result<Self> {
        let n = shape.n();
        if pos.len() != n {
            return Err(Error::Precondition("wrong number of labels".into()));
        }
        let mut label = BTreeMap::new();
        for (i, &(l, c)) in pos.iter().enumerate() {
            if !shape.contains_cell(l, c) || label.insert((l, c), i + 1).is_some() {
                return Err(Error::Precondition(format!("bad cell ({l},{c})")));
            }
        }
        for (&(l, c), &v) in &label {
            let below = l > 1 && label[&(l - 1, c)] > v;
            let left = c > 1 && label[&(l, c - 1)] > v;
            if below || left {
                return Err(Error::Precondition(format!("labels do not increase at ({l},{c})")));
            }
        }
        Ok(StandardTableau { shape: shape.clone(), pos })
    }

    /// From the label sets of the columns, bottom to top.
    pub fn from_columns(shape: &Partition, columns: &[Vec<usize>]) -> Result<Self> {
        let mut pos = vec![(0, 0); shape.n()];
        for (c, col) in columns.iter().enumerate() {
            for (l, &v) in col.iter().enumerate() {
                if v == 0 || v > pos.len() {
                    return Err(Error::Precondition(format!("label {v} out of range")));
                }
                pos[v - 1] = (l + 1, c + 1);
            }
        }
        Self::from_positions(shape, pos)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn row(&self, i: usize) -> usize {
        self.pos[i - 1].0
    }

    pub fn col(&self, i: usize) -> usize {
        self.pos[i - 1].1
    }

    pub fn content(&self, i: usize) -> i64 {
        self.row(i) as i64 - self.col(i) as i64
    }

    /// `(c_2, …, c_n)`.
    pub fn content_vector(&self) -> Vec<i64> {
        (2..=self.n()).map(|i| self.content(i)).collect()
    }

    /// Label sets of the columns, bottom to top.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.shape.0.len()];
        for (i, &(_, c)) in self.pos.iter().enumerate() {
            cols[c - 1].push(i + 1);
        }
        for (c, col) in cols.iter_mut().enumerate() {
            col.sort_by_key(|&v| self.pos[v - 1].0);
            debug_assert_eq!(col.len(), self.shape.0[c]);
        }
        cols
    }

    /// Label lists of the rows, bottom row first.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.transpose().columns()
    }

    /// Mirror image across the diagonal, of the conjugate shape.
    pub fn transpose(&self) -> StandardTableau {
        StandardTableau { shape: self.shape.conjugate(), pos: self.pos.iter().map(|&(l, c)| (c, l)).collect() }
    }

    /// The tableau with `r` and `r+1` exchanged, when it is standard.
    pub fn swap(&self, r: usize) -> Option<StandardTableau> {
        let mut pos = self.pos.clone();
        pos.swap(r - 1, r);
        StandardTableau::from_positions(&self.shape, pos).ok()
    }

    /// `d = l − l′ + c′ − c` for `r` at `(l, c)` and `r+1` at `(l′, c′)` in the
    /// smaller of the pair `{T, s_r T}`; always positive.
    pub fn axial_distance(&self, r: usize) -> Result<i64> {
        let (l, c) = self.pos[r - 1];
        let (l2, c2) = self.pos[r];
        if l == l2 || c == c2 {
            return Err(Error::Precondition(format!("{r} and {} share a row or a column", r + 1)));
        }
        let (l, c, l2, c2) = if c < c2 { (l, c, l2, c2) } else { (l2, c2, l, c) };
        Ok(l as i64 - l2 as i64 + c2 as i64 - c as i64)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// All standard tableaux of shape `alpha`, ordered by decreasing content vector.
pub fn tableaux(alpha: &Partition) -> Vec<StandardTableau> {
    fn rec(alpha: &Partition, filled: &mut Vec<usize>, pos: &mut Vec<(usize, usize)>, out: &mut Vec<StandardTableau>) {
        if pos.len() == alpha.n() {
            out.push(StandardTableau { shape: alpha.clone(), pos: pos.clone() });
            return;
        }
        for c in 0..filled.len() {
            let l = filled[c] + 1;
            if l <= alpha.0[c] && (c == 0 || filled[c - 1] >= l) {
                filled[c] += 1;
                pos.push((l, c + 1));
                rec(alpha, filled, pos, out);
                pos.pop();
                filled[c] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(alpha, &mut vec![0; alpha.0.len()], &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.content_vector().cmp(&a.content_vector()));
    out
}

// ---------------------------------------------------------------------------
// Matrix models

/// `M_d^1` of the semi-normal model: `(1/d)(−1, d+1; d−1, 1)`.
pub fn semi_normal_reflection<C: Coeff>(d: i64) -> Mat<C> {
    let r = |n: i64| C::from_rational(&rat(n, d));
    Mat::from_rows(vec![vec![r(-1), r(d + 1)], vec![r(d - 1), r(1)]]).expect("2x2")
}

/// `q^m` with `q = e^h`.
pub fn q_pow<C: Coeff>(maxdeg: usize, m: i64) -> ScalarSeries<C> {
    ScalarSeries::h(maxdeg).scale_rat(&int(m)).exp().expect("no constant term")
}

/// `[n]_q = (q^n − q^{-n})/(q − q^{-1})`.
pub fn q_int<C: Coeff>(maxdeg: usize, n: i64) -> ScalarSeries<C> {
    ScalarSeries::q_int(maxdeg, n)
}

/// `a_d = −q^{-d}/[d]_q`.
pub fn a_d<C: Coeff>(maxdeg: usize, d: i64) -> ScalarSeries<C> {
    q_pow::<C>(maxdeg, -d).neg().mul(&q_int::<C>(maxdeg, d).inverse().expect("[d]_q is a unit"))
}

/// `a′_d = q − q^{-1} − a_d = q^d/[d]_q`.
pub fn a_prime_d<C: Coeff>(maxdeg: usize, d: i64) -> ScalarSeries<C> {
    q_pow::<C>(maxdeg, d).mul(&q_int::<C>(maxdeg, d).inverse().expect("[d]_q is a unit"))
}

/// How the blocks `M_d^q` of a matrix model are produced.
#[derive(Clone)]
pub enum ModelKind<C> {
    /// `2M = (q − q^{-1}) + (q + q^{-1}) Q M_d^1 Q^{-1}`, `Q = Φ(2hM_d^1, hη_d)`.
    SemiNormalFromPhi(NCSeries<C>),
    /// `(1/[d]_q)(−q^{-d}, √([d+1]_q[d−1]_q); √([d+1]_q[d−1]_q), q^d)`.
    Unitary,
    /// `a_d`, `a′_d` forced, `b_d` given for `d = 2, 3, …`.
    Custom(Vec<ScalarSeries<C>>),
}

#[derive(Clone)]
pub struct MatrixModel<C> {
    pub kind: ModelKind<C>,
    pub maxdeg: usize,
}

impl<C: Coeff> MatrixModel<C> {
    pub fn semi_normal(phi: &NCSeries<C>) -> Self {
        MatrixModel { kind: ModelKind::SemiNormalFromPhi(phi.clone()), maxdeg: phi.maxdeg() }
    }

    pub fn unitary(maxdeg: usize) -> Self {
        MatrixModel { kind: ModelKind::Unitary, maxdeg }
    }

    pub fn custom(b: Vec<ScalarSeries<C>>) -> Result<Self> {
        let maxdeg = b.first().map(|s| s.maxdeg()).ok_or_else(|| Error::Precondition("empty b-sequence".into()))?;
        Ok(MatrixModel { kind: ModelKind::Custom(b), maxdeg })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::SemiNormalFromPhi(_) => "semi-normal",
            ModelKind::Unitary => "unitary",
            ModelKind::Custom(_) => "custom",
        }
    }

    /// The block `M_d^q` in the basis `(T, T′)`, `T < T′`.
    pub fn block(&self, d: i64) -> Result<HMatrix<C>> {
        if d < 2 {
            return Err(Error::Precondition(format!("axial distance {d} < 2")));
        }
        let m = self.maxdeg;
        match &self.kind {
            ModelKind::SemiNormalFromPhi(phi) => {
                let s = semi_normal_reflection::<C>(d);
                let eta = Mat::diag(&[C::from_int(d), C::from_int(-d)]);
                let u = HMatrix::monomial(&s.scale_rat(&int(2)), 1, m);
                let v = HMatrix::monomial(&eta, 1, m);
                let q = evaluate2(phi, &u, &v)?;
                let conj = q.mul(&HMatrix::constant(&s, m)).mul(&q.inverse()?);
                let (qp, qm) = (q_pow::<C>(m, 1), q_pow::<C>(m, -1));
                let two_m = HMatrix::identity(2, m)
                    .scale_series(&qp.sub(&qm))
                    .add(&conj.scale_series(&qp.add(&qm)));
                Ok(two_m.scale_rat(&rat(1, 2)))
            }
            ModelKind::Unitary => {
                let root = q_int::<C>(m, d + 1).mul(&q_int::<C>(m, d - 1)).sqrt()?;
                let inv = q_int::<C>(m, d).inverse()?;
                let e = vec![
                    vec![q_pow::<C>(m, -d).neg().mul(&inv), root.mul(&inv)],
                    vec![root.mul(&inv), q_pow::<C>(m, d).mul(&inv)],
                ];
                HMatrix::from_entries(&e)
            }
            ModelKind::Custom(bs) => {
                let b = bs
                    .get((d - 2) as usize)
                    .ok_or_else(|| Error::Precondition(format!("no b_{d} in the custom model")))?;
                let (a, a2) = (a_d::<C>(m, d), a_prime_d::<C>(m, d));
                let c = ScalarSeries::one(m).add(&a.mul(&a2)).mul(&b.inverse()?);
                HMatrix::from_entries(&[vec![a, b.clone()], vec![c, a2]])
            }
        }
    }

    /// `b_d`, the upper-right entry of the block.
    pub fn b(&self, d: i64) -> Result<ScalarSeries<C>> {
        Ok(self.block(d)?.entry(0, 1))
    }
}

/// `b_d^s(Φ)`.
pub fn b_semi<C: Coeff>(phi: &NCSeries<C>, d: i64) -> Result<ScalarSeries<C>> {
    MatrixModel::semi_normal(phi).b(d)
}

/// Trace `q − q^{-1}` and determinant `−1` of a block.
pub fn block_identities<C: Coeff>(block: &HMatrix<C>) -> CheckOutcome {
    let m = block.maxdeg();
    let e = block.entries();
    let tr = e[0][0].add(&e[1][1]);
    let det = e[0][0].mul(&e[1][1]).sub(&e[0][1].mul(&e[1][0]));
    let want_tr = q_pow::<C>(m, 1).sub(&q_pow::<C>(m, -1));
    let ok_tr = tr.agrees(&want_tr);
    let ok_det = det.agrees(&ScalarSeries::constant(m, C::from_int(-1)));
    CheckOutcome::new(
        "block-trace-det",
        ok_tr && ok_det,
        format!("trace {} det {}", if ok_tr { "ok" } else { "wrong" }, if ok_det { "ok" } else { "wrong" }),
    )
}

/// The representation of `B_n` on the tableaux of shape `alpha` built from a model.
pub fn rep_build<C: Coeff>(alpha: &Partition, model: &MatrixModel<C>) -> Result<BraidRep<C>> {
    let n = alpha.n();
    if n < 2 {
        return Err(Error::Precondition("rep_build needs n ≥ 2".into()));
    }
    let tabs = tableaux(alpha);
    let index: BTreeMap<Vec<i64>, usize> = tabs.iter().enumerate().map(|(k, t)| (t.content_vector(), k)).collect();
    let m = model.maxdeg;
    let dim = tabs.len();
    let (q, qinv_neg) = (q_pow::<C>(m, 1), q_pow::<C>(m, -1).neg());
    let mut blocks: BTreeMap<i64, HMatrix<C>> = BTreeMap::new();
    let mut gens = Vec::new();
    for r in 1..n {
        let mut e: Vec<Vec<ScalarSeries<C>>> = vec![vec![ScalarSeries::zero(m); dim]; dim];
        for (k, t) in tabs.iter().enumerate() {
            if t.col(r) == t.col(r + 1) {
                e[k][k] = q.clone();
            } else if t.row(r) == t.row(r + 1) {
                e[k][k] = qinv_neg.clone();
            } else if t.col(r) < t.col(r + 1) {
                let t2 = t.swap(r).expect("adjacent labels in different rows and columns");
                let k2 = index[&t2.content_vector()];
                debug_assert!(k < k2);
                let d = t.axial_distance(r)?;
                if !blocks.contains_key(&d) {
                    blocks.insert(d, model.block(d)?);
                }
                let b = &blocks[&d];
                e[k][k] = b.entry(0, 0);
                e[k][k2] = b.entry(0, 1);
                e[k2][k] = b.entry(1, 0);
                e[k2][k2] = b.entry(1, 1);
            }
        }
        gens.push(HMatrix::from_entries(&e)?);
    }
    BraidRep::new(n, gens, format!("{} model on [{alpha}]", model.name()))
}

/// `ᵗε(M)·M = 1` for every generator image.
pub fn unitarity_check<C: Coeff>(r: &BraidRep<C>) -> CheckOutcome {
    for i in 1..r.n() {
        let m = r.generator(i);
        let p = m.eps().transpose().mul(m);
        if let Some((d, a, b)) = p.first_difference(&HMatrix::identity(r.dim(), r.maxdeg())) {
            return CheckOutcome::new("unitarity", false, format!("σ{i}: h^{d} entry ({},{})", a + 1, b + 1));
        }
    }
    CheckOutcome::new("unitarity", true, format!("all generators through h^{}", r.known()))
}

/// `ρ_0(s_r)` of the symmetric group in the semi-normal tableau basis.
pub fn symmetric_semi_normal<C: Coeff>(alpha: &Partition) -> Result<Vec<Mat<C>>> {
    let tabs = tableaux(alpha);
    let index: BTreeMap<Vec<i64>, usize> = tabs.iter().enumerate().map(|(k, t)| (t.content_vector(), k)).collect();
    let dim = tabs.len();
    let mut out = Vec::new();
    for r in 1..alpha.n() {
        let mut m = Mat::zeros(dim);
        for (k, t) in tabs.iter().enumerate() {
            if t.col(r) == t.col(r + 1) {
                m.set(k, k, C::one());
            } else if t.row(r) == t.row(r + 1) {
                m.set(k, k, C::from_int(-1));
            } else if t.col(r) < t.col(r + 1) {
                let k2 = index[&t.swap(r).expect("standard").content_vector()];
                let s = semi_normal_reflection::<C>(t.axial_distance(r)?);
                m.set(k, k, s.get(0, 0).clone());
                m.set(k, k2, s.get(0, 1).clone());
                m.set(k2, k, s.get(1, 0).clone());
                m.set(k2, k2, s.get(1, 1).clone());
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `ρ(s_r) = ρ_0(s_r)`, `ρ(t_ij) = 2ρ_0((i j))` in the semi-normal tableau basis.
pub fn hecke_infinitesimal<C: Coeff>(alpha: &Partition) -> Result<InfinitesimalRep<C>> {
    InfinitesimalRep::from_symmetric(alpha.n(), symmetric_semi_normal(alpha)?, &int(2))
}
