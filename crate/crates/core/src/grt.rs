//! The groups `GRT_1` and `GT_1` in truncation: group laws, their actions on
//! associators, the isomorphism `ι_Φ`, the defining equations of `GT_1`, and
//! the projection used to compare with Ihara's power series.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::associator::{phi_tilde_word, swap};
use crate::check::CheckOutcome;
use crate::coeff::{int, rat, Coeff, SymCoef};
use crate::error::{Error, Result};
use crate::holonomy::{HoloAlgebra, HoloSeries};
use crate::lie::WBasis;
use crate::linalg;
use crate::series::{bch, NCSeries, Word};

fn x_of<C: Coeff>(f: &NCSeries<C>) -> NCSeries<C> {
    NCSeries::var(f.alphabet(), f.maxdeg(), "x")
}

fn y_of<C: Coeff>(f: &NCSeries<C>) -> NCSeries<C> {
    NCSeries::var(f.alphabet(), f.maxdeg(), "y")
}

/// `ψ1 = w5 − w4`.
pub fn psi1<C: Coeff>(maxdeg: usize) -> NCSeries<C> {
    WBasis::<C>::new(maxdeg.max(3)).psi1().with_maxdeg(maxdeg)
}

/// `ψ2 = −2w9 − 4w10 − 4w11 − 2w12 − w13 − 3w14`, spanning degree 5 of `grt_1`.
pub fn psi2<C: Coeff>(maxdeg: usize) -> NCSeries<C> {
    let w = WBasis::<C>::new(maxdeg.max(5));
    let c: Vec<(usize, C)> = [(9, -2), (10, -4), (11, -4), (12, -2), (13, -1), (14, -3)]
        .iter()
        .map(|&(i, k)| (i, C::from_int(k)))
        .collect();
    w.combo(&c).with_maxdeg(maxdeg)
}

/// `ψ_{a,b} = a ψ1 + b ψ2`.
pub fn psi_ab<C: Coeff>(a: &C, b: &C, maxdeg: usize) -> NCSeries<C> {
    psi1::<C>(maxdeg).scale(a).add(&psi2::<C>(maxdeg).scale(b))
}

/// The derivation `D_ψ` with `D(x) = [ψ, x]`, `D(y) = 0`.
pub fn derivation<C: Coeff>(psi: &NCSeries<C>, g: &NCSeries<C>) -> NCSeries<C> {
    let a = g.alphabet();
    let xi = a.index("x").expect("alphabet contains x");
    let dx = psi.bracket(&x_of(g));
    let mut out = NCSeries::zero(a, g.maxdeg());
    for (w, c) in g.terms() {
        for i in 0..w.len() {
            if w.letter(i) != xi {
                continue;
            }
            let letters: Vec<u8> = w.letters().collect();
            let pre = Word::from_letters(&letters[..i]).expect("shorter");
            let post = Word::from_letters(&letters[i + 1..]).expect("shorter");
            let mut p = NCSeries::zero(a, g.maxdeg());
            p.add_term(pre, c);
            let mut q = NCSeries::zero(a, g.maxdeg());
            q.add_term(post, &C::one());
            out = out.add(&p.mul(&dx).mul(&q));
        }
    }
    out.truncate(g.known_order().min(psi.known_order()))
}

/// `s_ψ(g) = g ψ + D_ψ(g)`.
pub fn s_psi<C: Coeff>(psi: &NCSeries<C>, g: &NCSeries<C>) -> NCSeries<C> {
    g.mul(psi).add(&derivation(psi, g))
}

/// `exp(s_ψ)(g) = Σ s_ψ^k(g)/k!`; requires `ω(ψ) ≥ 1`.
pub fn exp_s<C: Coeff>(psi: &NCSeries<C>, g: &NCSeries<C>) -> Result<NCSeries<C>> {
    if psi.effective_order() < 1 {
        return Err(Error::Precondition("ψ must have no constant term".into()));
    }
    let mut out = g.clone();
    let mut term = g.clone();
    let mut k = 1i64;
    loop {
        term = s_psi(psi, &term).scale_rat(&rat(1, k));
        if term.is_zero() {
            return Ok(out);
        }
        out = out.add(&term);
        k += 1;
    }
}

/// The group element `exp(s_ψ)(1)` of `GRT_1` attached to `ψ ∈ grt_1`.
pub fn grt_exp<C: Coeff>(psi: &NCSeries<C>) -> Result<NCSeries<C>> {
    exp_s(psi, &NCSeries::one(psi.alphabet(), psi.maxdeg()))
}

/// `f1(f2 x f2⁻¹, y) f2`. This is both the law of `GRT_1` and, by the
/// logarithmic convention for substituting group elements, the law of `GT_1`.
pub fn twisted_mul<C: Coeff>(f1: &NCSeries<C>, f2: &NCSeries<C>) -> Result<NCSeries<C>> {
    let conj = f2.mul(&x_of(f2)).mul(&f2.inverse()?);
    Ok(f1.substitute(&[conj, y_of(f2)])?.mul(f2))
}

pub fn grt_mul<C: Coeff>(f1: &NCSeries<C>, f2: &NCSeries<C>) -> Result<NCSeries<C>> {
    twisted_mul(f1, f2)
}

pub fn gt_mul<C: Coeff>(g1: &NCSeries<C>, g2: &NCSeries<C>) -> Result<NCSeries<C>> {
    twisted_mul(g1, g2)
}

/// Solves `g(u, y) = target` for `g`, where `u ≡ x` modulo degree 2.
/// Each pass removes the lowest-degree defect.
pub fn solve_twisted<C: Coeff>(u: &NCSeries<C>, target: &NCSeries<C>) -> Result<NCSeries<C>> {
    let y = y_of(target);
    let mut g = target.clone();
    for _ in 0..=target.maxdeg() + 1 {
        let defect = g.substitute(&[u.clone(), y.clone()])?.mul(&target.inverse()?);
        if defect.is_one() {
            return Ok(g);
        }
        g = defect.inverse()?.mul(&g);
    }
    Err(Error::Precondition("twisted equation did not converge".into()))
}

/// Inverse for the twisted law.
pub fn twisted_inverse<C: Coeff>(f: &NCSeries<C>) -> Result<NCSeries<C>> {
    let u = f.mul(&x_of(f)).mul(&f.inverse()?);
    solve_twisted(&u, &f.inverse()?)
}

/// Right action `Φ.f = Φ(f x f⁻¹, y) f` of `GRT_1`.
pub fn act_grt<C: Coeff>(phi: &NCSeries<C>, f: &NCSeries<C>) -> Result<NCSeries<C>> {
    twisted_mul(phi, f)
}

/// Left action `g.Φ = g(Φ x Φ⁻¹, y) Φ` of `GT_1`.
pub fn act_gt<C: Coeff>(g: &NCSeries<C>, phi: &NCSeries<C>) -> Result<NCSeries<C>> {
    twisted_mul(g, phi)
}

/// `ι_Φ(f)`: the unique `g ∈ GT_1` with `g.Φ = Φ.f`.
pub fn iota<C: Coeff>(phi: &NCSeries<C>, f: &NCSeries<C>) -> Result<NCSeries<C>> {
    let target = act_grt(phi, f)?.mul(&phi.inverse()?);
    let u = phi.mul(&x_of(phi)).mul(&phi.inverse()?);
    solve_twisted(&u, &target)
}

fn defect_outcome<C: Coeff>(id: &str, d: &NCSeries<C>) -> CheckOutcome {
    match d.terms().next() {
        None => CheckOutcome::new(id, true, format!("zero through degree {}", d.known_order())),
        Some((w, c)) => CheckOutcome::new(
            id,
            false,
            format!("degree {}: coefficient of {} is {c}", w.len(), d.alphabet().render_word(*w)),
        ),
    }
}

/// `g(y, x) g(x, y) = 1`.
pub fn check_gt_duality<C: Coeff>(g: &NCSeries<C>) -> CheckOutcome {
    let d = swap(g).mul(g).sub(&NCSeries::one(g.alphabet(), g.maxdeg()));
    defect_outcome("gt-duality", &d)
}

/// `g(w, u) g(v, w) g(u, v) = 1` with `u = e^x`, `v = e^y`, `w = (uv)⁻¹`.
pub fn check_gt_hexagon<C: Coeff>(g: &NCSeries<C>) -> Result<CheckOutcome> {
    let (x, y) = (x_of(g), y_of(g));
    let w = bch(&y.neg(), &x.neg())?;
    let p = g.substitute(&[w.clone(), x.clone()])?.mul(&g.substitute(&[y.clone(), w])?).mul(g);
    Ok(defect_outcome("gt-hexagon", &p.sub(&NCSeries::one(g.alphabet(), g.maxdeg()))))
}

/// The pentagon of `GT_1` in `P_4`, pushed into `U(T_4)` by `Φ̃` for a
/// reference associator `Φ` with `λ = 1`:
/// `g(ξ12, ξ23ξ24) g(ξ13ξ23, ξ34) = g(ξ23, ξ34) g(ξ12ξ13, ξ24ξ34) g(ξ12, ξ23)`.
pub fn check_gt_pentagon<C: Coeff>(
    g: &NCSeries<C>,
    phi: &NCSeries<C>,
    alg: &Arc<HoloAlgebra>,
) -> Result<CheckOutcome> {
    if alg.n() != 4 {
        return Err(Error::Precondition("the pentagon lives in P_4".into()));
    }
    let xi = |i: usize, j: usize| -> Result<HoloSeries<C>> {
        let mut w: Vec<(usize, i32)> = (i + 1..j).rev().map(|k| (k, 1)).collect();
        w.push((i, 2));
        w.extend((i + 1..j).map(|k| (k, -1)));
        let e = phi_tilde_word(phi, &int(1), alg, &w)?;
        debug_assert!(e.is_pure());
        Ok(e.coeff)
    };
    let (x12, x13, x23, x24, x34) = (xi(1, 2)?, xi(1, 3)?, xi(2, 3)?, xi(2, 4)?, xi(3, 4)?);
    let ev = |u: &HoloSeries<C>, v: &HoloSeries<C>| -> Result<HoloSeries<C>> {
        HoloSeries::evaluate(g, &[u.log()?, v.log()?])
    };
    let lhs = ev(&x12, &x23.mul(&x24))?.mul(&ev(&x13.mul(&x23), &x34)?);
    let rhs = ev(&x23, &x34)?.mul(&ev(&x12.mul(&x13), &x24.mul(&x34))?).mul(&ev(&x12, &x23)?);
    let d = lhs.sub(&rhs);
    let out = match d.terms().next() {
        None => CheckOutcome::new("gt-pentagon", true, format!("zero through degree {}", d.known())),
        Some((w, c)) => CheckOutcome::new(
            "gt-pentagon",
            false,
            format!("degree {}: coefficient of {} is {c}", w.len(), alg.alphabet().render_word(*w)),
        ),
    };
    Ok(out)
}

/// A commutative polynomial in `x, y`, keyed by `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CommPoly<C> {
    pub terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> CommPoly<C> {
    pub fn zero() -> Self {
        CommPoly { terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, e: (u32, u32), c: &C) {
        let v = self.terms.remove(&e).unwrap_or_else(C::zero).add_ref(c);
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn coeff(&self, e: (u32, u32)) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Drops monomials of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        CommPoly { terms: self.terms.iter().filter(|(e, _)| e.0 + e.1 <= d).map(|(e, c)| (*e, c.clone())).collect() }
    }

    pub fn from_terms(t: &[((u32, u32), C)]) -> Self {
        let mut p = Self::zero();
        for (e, c) in t {
            p.add_term(*e, c);
        }
        p
    }
}

impl<C: Coeff> fmt::Display for CommPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((i, j), c) in &self.terms {
            let mut mono = Vec::new();
            for (name, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            parts.push(if mono.is_empty() { format!("({c})") } else { format!("({c})*{}", mono.join("*")) });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `π_ab ∘ p_x (f(log(1+x), log(1+y)))`: keep the constant term and the words
/// ending in `x`, then abelianize.
pub fn ihara_projection<C: Coeff>(f: &NCSeries<C>) -> Result<CommPoly<C>> {
    let (x, y) = (x_of(f), y_of(f));
    let one = NCSeries::one(f.alphabet(), f.maxdeg());
    let lx = one.add(&x).log()?;
    let ly = one.add(&y).log()?;
    let i_f = f.substitute(&[lx, ly])?;
    let xi = f.alphabet().index("x").expect("alphabet contains x");
    let yi = f.alphabet().index("y").expect("alphabet contains y");
    let mut out = CommPoly::zero();
    for (w, c) in i_f.terms() {
        if w.is_empty() || w.last() == xi {
            out.add_term((w.count(xi) as u32, w.count(yi) as u32), c);
        }
    }
    Ok(out)
}

/// Ihara's power series through degree 5 with formal `k3`, `k5`:
/// `1 + (k3/2)(yx² + y²x − yx³ − y²x² − y³x) + (k5/24 + 11k3/24)(x⁴y + y⁴x)
///  + (5k3/12 + k5/12)(y³x² + y²x³)`.
pub fn ihara_reference(k3: &SymCoef, k5: &SymCoef) -> CommPoly<SymCoef> {
    let h = k3.scale(&rat(1, 2));
    let c5 = k5.scale(&rat(1, 24)).add_ref(&k3.scale(&rat(11, 24)));
    let c32 = k3.scale(&rat(5, 12)).add_ref(&k5.scale(&rat(1, 12)));
    CommPoly::from_terms(&[
        ((0, 0), SymCoef::one()),
        ((2, 1), h.clone()),
        ((1, 2), h.clone()),
        ((3, 1), h.neg_ref()),
        ((2, 2), h.neg_ref()),
        ((1, 3), h.neg_ref()),
        ((4, 1), c5.clone()),
        ((1, 4), c5),
        ((2, 3), c32.clone()),
        ((3, 2), c32),
    ])
}

/// Solves `π_ab p_x(I g) = reference` for the symbols `a`, `b` on which `g`
/// depends linearly through degree `deg`. Errors when the system is inconsistent.
pub fn match_parameters(
    g: &CommPoly<SymCoef>,
    reference: &CommPoly<SymCoef>,
    a: &str,
    b: &str,
    deg: u32,
) -> Result<(SymCoef, SymCoef)> {
    let (g, reference) = (g.truncate(deg), reference.truncate(deg));
    let mut keys: Vec<(u32, u32)> = g.terms.keys().copied().collect();
    keys.extend(reference.terms.keys().copied());
    keys.sort();
    keys.dedup();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for e in keys {
        let p = g.coeff(e);
        let (la, rest) = p.linear_in(a).ok_or_else(|| Error::Precondition(format!("nonlinear in {a}")))?;
        let (lb, rest) = rest.linear_in(b).ok_or_else(|| Error::Precondition(format!("nonlinear in {b}")))?;
        let (ra, rb) = (
            la.to_rational().ok_or_else(|| Error::Precondition("coefficient of a is not rational".into()))?,
            lb.to_rational().ok_or_else(|| Error::Precondition("coefficient of b is not rational".into()))?,
        );
        rows.push(vec![ra, rb]);
        rhs.push(reference.coeff(e).sub_ref(&rest));
    }
    let sol = linalg::solve_affine(&rows, &rhs, 2)?;
    if !sol.kernel.is_empty() {
        return Err(Error::Precondition("parameters are not determined".into()));
    }
    Ok((sol.particular[0].clone(), sol.particular[1].clone()))
}

/// The Le–Murakami-type correction `(a/24)(w3 ψ1 + [[ψ1, x], y])` expected in
/// `Φ0.Ψ_{a,b} − Φ0 − aψ1 − bψ2` modulo degree 6.
pub fn expected_action_correction<C: Coeff>(a: &C, maxdeg: usize) -> NCSeries<C> {
    let w = WBasis::<C>::new(maxdeg.max(5));
    let p = psi1::<C>(maxdeg.max(5));
    let x = NCSeries::var(p.alphabet(), p.maxdeg(), "x");
    let y = NCSeries::var(p.alphabet(), p.maxdeg(), "y");
    let s = w.get(3).mul(&p).add(&p.bracket(&x).bracket(&y));
    s.scale(a).scale_rat(&rat(1, 24)).with_maxdeg(maxdeg)
}

/// Degree-3 parameter `z` of `f ≡ 1 + z(w4 − w5)`.
pub fn degree3_parameter<C: Coeff>(f: &NCSeries<C>) -> Result<C> {
    crate::associator::c_extract(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associator::phi0;
    use crate::coeff::Rational;

    #[test]
    fn psi_elements_exponentiate_into_grt() {
        let alg = Arc::new(HoloAlgebra::build(4, 5).unwrap());
        for psi in [psi1::<Rational>(5), psi2::<Rational>(5)] {
            let f = grt_exp(&psi).unwrap();
            for c in crate::associator::check_associator(&crate::associator::Associator::new(f, int(0)), &alg).unwrap()
            {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn twisted_inverse_is_two_sided() {
        let f = grt_exp(&psi1::<Rational>(6).add(&psi2::<Rational>(6))).unwrap();
        let g = twisted_inverse(&f).unwrap();
        assert!(grt_mul(&f, &g).unwrap().is_one());
        assert!(grt_mul(&g, &f).unwrap().is_one());
    }

    #[test]
    fn derivation_action_matches_substitution() {
        let psi = psi1::<Rational>(5).scale_rat(&rat(2, 3)).add(&psi2::<Rational>(5));
        let phi = phi0::<Rational>(5).unwrap();
        assert_eq!(act_grt(&phi, &grt_exp(&psi).unwrap()).unwrap(), exp_s(&psi, &phi).unwrap());
    }
}
