//! Exact linear algebra: dense reduced row echelon form over ℚ with right-hand
//! sides in any coefficient ring, and sparse semi-echelon rank computation over
//! any field.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};
use crate::series::NCSeries;

/// Solution set of `A u = b` with `A` rational and `b` over `C`.
#[derive(Clone, Debug)]
pub struct AffineSolution<C> {
    /// The solution whose free (non-pivot) coordinates vanish.
    pub particular: Vec<C>,
    /// Basis of the kernel of `A`.
    pub kernel: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

/// Solves `A u = b` exactly. `a` is row-major with `ncols` columns.
pub fn solve_affine<C: Coeff>(a: &[Vec<Rational>], b: &[C], ncols: usize) -> Result<AffineSolution<C>> {
    assert_eq!(a.len(), b.len());
    let mut rows: Vec<(Vec<Rational>, C)> = a
        .iter()
        .zip(b)
        .filter(|(r, c)| r.iter().any(|v| !Zero::is_zero(v)) || !c.is_zero())
        .map(|(r, c)| (r.clone(), c.clone()))
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !Zero::is_zero(&rows[i].0[col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank].0[col].recip();
        for v in rows[rank].0.iter_mut() {
            *v *= &inv;
        }
        rows[rank].1 = rows[rank].1.scale(&inv);
        let (pivot_row, pivot_rhs) = rows[rank].clone();
        for (i, (r, c)) in rows.iter_mut().enumerate() {
            if i == rank || Zero::is_zero(&r[col]) {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !Zero::is_zero(pv) {
                    *v -= &f * pv;
                }
            }
            c.sub_assign_ref(&pivot_rhs.scale(&f));
        }
        pivots.push(col);
        rank += 1;
    }
    for (r, c) in &rows[rank..] {
        debug_assert!(r.iter().all(Zero::is_zero));
        if !c.is_zero() {
            return Err(Error::Inconsistent(format!("residual {c}")));
        }
    }
    let mut particular = vec![C::zero(); ncols];
    for (k, &col) in pivots.iter().enumerate() {
        particular[col] = rows[k].1.clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::new();
    for &f in &free {
        let mut v = vec![<Rational as Zero>::zero(); ncols];
        v[f] = Rational::from_integer(1.into());
        for (k, &col) in pivots.iter().enumerate() {
            v[col] = -rows[k].0[f].clone();
        }
        kernel.push(v);
    }
    Ok(AffineSolution { particular, kernel, pivots })
}

/// Coordinates of `target` on a list of linearly independent rational series.
pub fn coordinates<C: Coeff>(target: &NCSeries<C>, basis: &[NCSeries<Rational>]) -> Result<Vec<C>> {
    let mut words = BTreeSet::new();
    for b in basis {
        words.extend(b.terms().map(|(w, _)| *w));
    }
    words.extend(target.terms().map(|(w, _)| *w));
    let mut a = Vec::new();
    let mut rhs = Vec::new();
    for w in words {
        a.push(basis.iter().map(|b| b.coeff(w)).collect::<Vec<_>>());
        rhs.push(target.coeff(w));
    }
    let sol = solve_affine(&a, &rhs, basis.len())?;
    if !sol.kernel.is_empty() {
        return Err(Error::Precondition("basis is linearly dependent".into()));
    }
    Ok(sol.particular)
}

/// Integers modulo the prime `2^31 − 1`, for fast rank certificates.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModP(u64);

impl ModP {
    pub const P: u64 = 2_147_483_647;

    pub fn new(v: i64) -> Self {
        ModP(v.rem_euclid(Self::P as i64) as u64)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % Self::P;
            }
            base = base * base % Self::P;
            e >>= 1;
        }
        ModP(acc)
    }
}

impl fmt::Display for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn bigint_mod_p(n: &BigInt) -> u64 {
    let p = BigInt::from(ModP::P);
    let r = ((n % &p) + &p) % &p;
    r.to_u64().expect("reduced")
}

impl Coeff for ModP {
    fn zero() -> Self {
        ModP(0)
    }
    fn one() -> Self {
        ModP(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_rational(r: &Rational) -> Self {
        let n = ModP(bigint_mod_p(r.numer()));
        let d = ModP(bigint_mod_p(r.denom()));
        n.mul_ref(&d.inverse().expect("denominator prime to p"))
    }
    fn add_ref(&self, o: &Self) -> Self {
        ModP((self.0 + o.0) % Self::P)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        ModP((self.0 + Self::P - o.0) % Self::P)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        ModP(self.0 * o.0 % Self::P)
    }
    fn neg_ref(&self) -> Self {
        ModP((Self::P - self.0) % Self::P)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&ModP::from_rational(r))
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(Self::P - 2))
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        None
    }
}

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<F> = Vec<(u32, F)>;

/// Incremental semi-echelon basis of a row space. Each stored row is monic at
/// its leading (smallest) column and no two rows share a leading column.
pub struct SparseEchelon<F> {
    rows: Vec<SparseRow<F>>,
    lead: HashMap<u32, usize>,
}

impl<F: Coeff> Default for SparseEchelon<F> {
    fn default() -> Self {
        SparseEchelon { rows: Vec::new(), lead: HashMap::new() }
    }
}

impl<F: Coeff> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` until its leading column is new, then stores it.
    /// Returns true when the rank grew.
    pub fn insert(&mut self, mut row: SparseRow<F>) -> bool {
        loop {
            let Some((col, val)) = row.first().cloned() else {
                return false;
            };
            match self.lead.get(&col) {
                Some(&idx) => {
                    row = axpy(&row, &val.neg_ref(), &self.rows[idx]);
                }
                None => {
                    let inv = val.inverse().expect("field element");
                    for (_, v) in row.iter_mut() {
                        *v = v.mul_ref(&inv);
                    }
                    self.lead.insert(col, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }
}

/// `a + k·b` on sparse rows.
fn axpy<F: Coeff>(a: &SparseRow<F>, k: &F, b: &SparseRow<F>) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1.mul_ref(k)));
            j += 1;
        } else {
            let v = a[i].1.add_ref(&b[j].1.mul_ref(k));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Inverse of a square matrix over a coefficient ring whose pivots are units.
pub fn invert_matrix<C: Coeff>(m: &[Vec<C>]) -> Result<Vec<Vec<C>>> {
    let n = m.len();
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut inv: Vec<Vec<C>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect()).collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&i| a[i][col].inverse().is_some())
            .ok_or_else(|| Error::NotInvertible(format!("no unit pivot in column {col}")))?;
        a.swap(col, p);
        inv.swap(col, p);
        let k = a[col][col].inverse().expect("unit pivot");
        for j in 0..n {
            a[col][j] = a[col][j].mul_ref(&k);
            inv[col][j] = inv[col][j].mul_ref(&k);
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let t = a[col][j].mul_ref(&f);
                a[i][j].sub_assign_ref(&t);
                let t = inv[col][j].mul_ref(&f);
                inv[i][j].sub_assign_ref(&t);
            }
        }
    }
    Ok(inv)
}
