//! The characters `χ_d` of `GT_1`, their monomials `χ_T` on standard tableaux,
//! and the resonance analysis of Hecke representations.

use std::collections::BTreeMap;
use std::fmt;

use crate::braid::{diagonal_conjugator, gt_act_on_rep, phat};
use crate::coeff::{int, Coeff};
use crate::error::{Error, Result};
use crate::grt::act_gt;
use crate::hecke::{b_semi, hecke_infinitesimal, tableaux, Partition, StandardTableau};
use crate::scalar::ScalarSeries;
use crate::series::NCSeries;

/// A monomial `Π χ_d^{e_d}`, stored as `d ↦ e_d` with `e_d > 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(BTreeMap<usize, u32>);

impl ExponentVector {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut v = Self::one();
        for &(d, e) in pairs {
            v.add(d, e);
        }
        v
    }

    pub fn add(&mut self, d: usize, e: u32) {
        if e > 0 {
            *self.0.entry(d).or_insert(0) += e;
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&d, &e) in &o.0 {
            out.add(d, e);
        }
        out
    }

    pub fn exponent(&self, d: usize) -> u32 {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&d, &e)| (d, e))
    }

    /// Evaluates the monomial on given character values `χ_d`.
    pub fn evaluate<C: Coeff>(&self, chi: &BTreeMap<usize, ScalarSeries<C>>, maxdeg: usize) -> Result<ScalarSeries<C>> {
        let mut out = ScalarSeries::one(maxdeg);
        for (d, e) in self.iter() {
            let c = chi.get(&d).ok_or_else(|| Error::Precondition(format!("no value for χ_{d}")))?;
            for _ in 0..e {
                out = out.mul(c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(d, e)| if *e == 1 { format!("chi{d}") } else { format!("chi{d}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `χ_d(g) = b_d^s(g.Φ)/b_d^s(Φ)`.
pub fn chi_d<C: Coeff>(g: &NCSeries<C>, d: i64, phi_ref: &NCSeries<C>) -> Result<ScalarSeries<C>> {
    let moved = act_gt(g, phi_ref)?;
    b_semi(&moved, d)?.div(&b_semi(phi_ref, d)?)
}

/// `χ_2, …, χ_dmax` read off the Burau representation `[2, 1^{dmax-1}]`: the
/// diagonal conjugator between `R = Φ̂(ρ)` and `g.R` is `(1, χ_2, χ_2χ_3, …)`.
pub fn chi_from_burau<C: Coeff>(
    g: &NCSeries<C>,
    phi_ref: &NCSeries<C>,
    dmax: usize,
) -> Result<BTreeMap<usize, ScalarSeries<C>>> {
    if dmax < 2 {
        return Err(Error::Precondition("dmax ≥ 2".into()));
    }
    let mut parts = vec![2];
    parts.extend(std::iter::repeat(1).take(dmax - 1));
    let alpha = Partition::new(parts)?;
    let rho = hecke_infinitesimal::<C>(&alpha)?;
    let r = phat(&rho, phi_ref, &int(1))?;
    let twisted = gt_act_on_rep(&r, g)?;
    let a = diagonal_conjugator(&r, &twisted, None)?;
    let mut out = BTreeMap::new();
    for d in 2..=dmax {
        out.insert(d, a[d - 1].div(&a[d - 2])?);
    }
    Ok(out)
}

/// `χ_T = Π_{i<j, col(i) > col(j)} χ_{l_j − l_i + c_i − c_j}`.
pub fn chi_tableau(t: &StandardTableau) -> ExponentVector {
    let mut v = ExponentVector::one();
    for j in 1..=t.n() {
        for i in 1..j {
            if t.col(i) > t.col(j) {
                let d = t.row(j) as i64 - t.row(i) as i64 + t.col(i) as i64 - t.col(j) as i64;
                debug_assert!(d > 0);
                v.add(d as usize, 1);
            }
        }
    }
    v
}

/// `Π χ_δ` over the pairs of cells of `alpha` (see [`Partition::hook_pair_lengths`]).
pub fn hook_vector(alpha: &Partition) -> ExponentVector {
    let mut v = ExponentVector::one();
    for d in alpha.hook_pair_lengths() {
        v.add(d, 1);
    }
    v
}

/// Checks `χ_T χ_{T′} = Π χ_δ` for every tableau `T` of shape `alpha`, `T′` its transpose.
pub fn hook_identity(alpha: &Partition) -> (ExponentVector, bool) {
    let target = hook_vector(alpha);
    let ok = tableaux(alpha).iter().all(|t| chi_tableau(t).mul(&chi_tableau(&t.transpose())) == target);
    (target, ok)
}

/// Tableau monomials of a shape, in tableau order.
pub fn diagonal_vectors(alpha: &Partition) -> Vec<ExponentVector> {
    tableaux(alpha).iter().map(chi_tableau).collect()
}

/// Resonance-free: the tableau monomials are pairwise distinct.
pub fn resonance(alpha: &Partition) -> bool {
    let v = diagonal_vectors(alpha);
    let set: std::collections::BTreeSet<&ExponentVector> = v.iter().collect();
    set.len() == v.len()
}

/// No two consecutive tableau monomials coincide (the consecutive ratios are
/// non-trivial characters).
pub fn consecutive_ratios_nontrivial(alpha: &Partition) -> bool {
    diagonal_vectors(alpha).windows(2).all(|w| w[0] != w[1])
}

/// One scan line: `<partition> <resonance-free> <vectors…>`.
pub fn resonance_line(alpha: &Partition) -> String {
    let v: Vec<String> = diagonal_vectors(alpha).iter().map(|e| e.to_string()).collect();
    format!("{alpha} {} {}", resonance(alpha), v.join(" "))
}

/// `f_d(I) = #{i ∈ I | i ≥ d}` for `d = 2..n-1`, over the `r`-subsets `I` of `[1, n-1]`
/// in lexicographic order.
pub fn wedge_exponents(n: usize, r: usize) -> Result<Vec<(Vec<usize>, ExponentVector)>> {
    if n < 1 || r > n - 1 {
        return Err(Error::Precondition(format!("r = {r} outside [0, {}]", n.saturating_sub(1))));
    }
    fn subsets(from: usize, to: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in from..=to {
            cur.push(i);
            subsets(i + 1, to, r, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    subsets(1, n - 1, r, &mut Vec::new(), &mut sets);
    Ok(sets
        .into_iter()
        .map(|s| {
            let mut v = ExponentVector::one();
            for d in 2..n {
                v.add(d, s.iter().filter(|&&i| i >= d).count() as u32);
            }
            (s, v)
        })
        .collect())
}

pub fn wedge_injective(n: usize, r: usize) -> Result<bool> {
    let v = wedge_exponents(n, r)?;
    let set: std::collections::BTreeSet<&ExponentVector> = v.iter().map(|(_, e)| e).collect();
    Ok(set.len() == v.len())
}

/// Two distinct tableaux with equal monomials, for shapes containing `[3,2]`:
/// the `[3,2]` cells are filled as columns `{1,2,5},{3,4}` and `{1,3,4},{2,5}`,
/// and the remaining cells column by column, bottom to top, with `6, 7, …`.
pub fn collision(alpha: &Partition) -> Option<(StandardTableau, StandardTableau)> {
    let core = Partition::new(vec![3, 2]).expect("partition");
    if !alpha.contains(&core) {
        return None;
    }
    let build = |c1: [usize; 3], c2: [usize; 2]| {
        let mut cols: Vec<Vec<usize>> = vec![c1.to_vec(), c2.to_vec()];
        cols.resize(alpha.parts().len(), Vec::new());
        let mut next = 6;
        for (c, col) in cols.iter_mut().enumerate() {
            while col.len() < alpha.parts()[c] {
                col.push(next);
                next += 1;
            }
        }
        StandardTableau::from_columns(alpha, &cols).ok()
    };
    Some((build([1, 2, 5], [3, 4])?, build([1, 3, 4], [2, 5])?))
}

/// `χ_2 χ_3² ⋯ χ_{n_1-3}² χ_{n_1-2}` with `n_1 = α_1 + 2`.
pub fn collision_monomial(n1: usize) -> ExponentVector {
    let mut v = ExponentVector::from_pairs(&[(2, 1), (n1 - 2, 1)]);
    for d in 3..=n1 - 3 {
        v.add(d, 2);
    }
    v
}
