//! Associators: group-like series `Φ(x, y)` satisfying duality, the hexagon
//! relation with parameter `λ`, and the pentagon relation in `U(T_4)`.

use std::sync::Arc;

use crate::check::CheckOutcome;
use crate::coeff::{int, rat, Coeff, Rational};
use crate::error::{Error, Result};
use crate::holonomy::{HoloAlgebra, HoloSeries, SemiElt};
use crate::lie::{self, WBasis};
use crate::linalg;
use crate::series::{Alphabet, NCSeries, Word};

/// A candidate associator with its hexagon parameter.
#[derive(Clone)]
pub struct Associator<C> {
    pub lambda: Rational,
    pub series: NCSeries<C>,
}

impl<C: Coeff> Associator<C> {
    pub fn new(series: NCSeries<C>, lambda: Rational) -> Self {
        Associator { lambda, series }
    }
}

fn xy_images<C: Coeff>(f: &NCSeries<C>) -> (NCSeries<C>, NCSeries<C>) {
    let a = f.alphabet();
    (NCSeries::var(a, f.maxdeg(), "x"), NCSeries::var(a, f.maxdeg(), "y"))
}

/// `Φ(y, x)`.
pub fn swap<C: Coeff>(f: &NCSeries<C>) -> NCSeries<C> {
    let (x, y) = xy_images(f);
    f.substitute(&[y, x]).expect("two letters")
}

/// `Φ(−x, −y)`.
pub fn bar<C: Coeff>(f: &NCSeries<C>) -> NCSeries<C> {
    let (x, y) = xy_images(f);
    f.substitute(&[x.neg(), y.neg()]).expect("two letters")
}

/// `Φ(y, x) Φ(x, y) − 1`.
pub fn duality_defect<C: Coeff>(f: &NCSeries<C>) -> NCSeries<C> {
    swap(f).mul(f).sub(&NCSeries::one(f.alphabet(), f.maxdeg()))
}

/// `e^{λx/2} Φ(z,x) e^{λz/2} Φ(y,z) e^{λy/2} Φ(x,y) − 1` with `z = −x − y`.
pub fn hexagon_defect<C: Coeff>(f: &NCSeries<C>, lambda: &Rational) -> NCSeries<C> {
    let (x, y) = xy_images(f);
    let z = x.add(&y).neg();
    let half = lambda / int(2);
    let e = |u: &NCSeries<C>| u.scale_rat(&half).exp().expect("no constant term");
    let fzx = f.substitute(&[z.clone(), x.clone()]).expect("two letters");
    let fyz = f.substitute(&[y.clone(), z.clone()]).expect("two letters");
    let prod = e(&x).mul(&fzx).mul(&e(&z)).mul(&fyz).mul(&e(&y)).mul(f);
    prod.sub(&NCSeries::one(f.alphabet(), f.maxdeg()))
}

/// The five faces `(d3, d1, d0, d2, d4)` of the pentagon, evaluated in `U(T_4)`.
pub fn pentagon_faces<C: Coeff>(f: &NCSeries<C>, alg: &Arc<HoloAlgebra>) -> Result<[HoloSeries<C>; 5]> {
    if alg.n() != 4 {
        return Err(Error::Precondition("the pentagon lives in U(T_4)".into()));
    }
    let g = |pairs: &[(usize, usize)]| HoloSeries::<C>::gens_sum(alg, pairs);
    let face = |u: HoloSeries<C>, v: HoloSeries<C>| HoloSeries::evaluate(f, &[u, v]);
    Ok([
        face(g(&[(1, 2)]), g(&[(2, 3), (2, 4)]))?,
        face(g(&[(1, 3), (2, 3)]), g(&[(3, 4)]))?,
        face(g(&[(2, 3)]), g(&[(3, 4)]))?,
        face(g(&[(1, 2), (1, 3)]), g(&[(2, 4), (3, 4)]))?,
        face(g(&[(1, 2)]), g(&[(2, 3)]))?,
    ])
}

/// `d3Φ · d1Φ − d0Φ · d2Φ · d4Φ` in `U(T_4)`.
pub fn pentagon_defect<C: Coeff>(f: &NCSeries<C>, alg: &Arc<HoloAlgebra>) -> Result<HoloSeries<C>> {
    let [d3, d1, d0, d2, d4] = pentagon_faces(f, alg)?;
    Ok(d3.mul(&d1).sub(&d0.mul(&d2).mul(&d4)))
}

fn describe_nc<C: Coeff>(d: &NCSeries<C>) -> (bool, String) {
    match d.terms().next() {
        None => (true, format!("zero through degree {}", d.known_order())),
        Some((w, c)) => (false, format!("degree {}: coefficient of {} is {c}", w.len(), d.alphabet().render_word(*w))),
    }
}

fn describe_holo<C: Coeff>(d: &HoloSeries<C>) -> (bool, String) {
    match d.terms().next() {
        None => (true, format!("zero through degree {}", d.known())),
        Some((w, c)) => (
            false,
            format!("degree {}: coefficient of {} is {c}", w.len(), d.algebra().alphabet().render_word(*w)),
        ),
    }
}

pub fn check_grouplike<C: Coeff>(f: &NCSeries<C>) -> CheckOutcome {
    let ok = lie::is_grouplike(f);
    CheckOutcome::new("grouplike", ok, format!("log is Lie through degree {}", f.known_order()))
}

pub fn check_duality<C: Coeff>(f: &NCSeries<C>) -> CheckOutcome {
    let (ok, w) = describe_nc(&duality_defect(f));
    CheckOutcome::new("duality", ok, w)
}

pub fn check_hexagon<C: Coeff>(f: &NCSeries<C>, lambda: &Rational) -> CheckOutcome {
    let (ok, w) = describe_nc(&hexagon_defect(f, lambda));
    CheckOutcome::new(format!("hexagon(lambda={lambda})"), ok, w)
}

pub fn check_pentagon<C: Coeff>(f: &NCSeries<C>, alg: &Arc<HoloAlgebra>) -> Result<CheckOutcome> {
    let (ok, w) = describe_holo(&pentagon_defect(f, alg)?);
    Ok(CheckOutcome::new("pentagon", ok, w))
}

/// All four associator checks.
pub fn check_associator<C: Coeff>(a: &Associator<C>, alg: &Arc<HoloAlgebra>) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        check_grouplike(&a.series),
        check_duality(&a.series),
        check_hexagon(&a.series, &a.lambda),
        check_pentagon(&a.series, alg)?,
    ])
}

/// The scalar `c` with `Φ_3 = c (w4 − w5)`, the degree-3 part in normal form.
pub fn c_extract<C: Coeff>(f: &NCSeries<C>) -> Result<C> {
    let w: WBasis<C> = WBasis::new(f.maxdeg().max(3));
    let coords = w.coordinates(&f.with_maxdeg(f.maxdeg().max(3)), 3)?;
    if coords[1] != coords[0].neg_ref() {
        return Err(Error::Precondition(format!(
            "degree-3 part {}·w4 + {}·w5 is not a multiple of w4 − w5",
            coords[0], coords[1]
        )));
    }
    Ok(coords[0].clone())
}

/// No component of odd degree.
pub fn is_even<C: Coeff>(f: &NCSeries<C>) -> bool {
    f.terms().all(|(w, _)| w.len() % 2 == 0)
}

/// `φ4 = (−w7 − 4w6 − 4w8 + 5w3²)/5760`, the degree-4 part shared by all associators.
pub fn phi4<C: Coeff>(maxdeg: usize) -> NCSeries<C> {
    let w: WBasis<C> = WBasis::new(maxdeg);
    let lie = w.combo(&[(7, C::from_int(-1)), (6, C::from_int(-4)), (8, C::from_int(-4))]);
    let sq = w.get(3).mul(w.get(3)).scale_rat(&int(5));
    lie.add(&sq).scale_rat(&rat(1, 5760))
}

/// The even reference associator `Φ0 = 1 + w3/24 + φ4`, exact through degree 5.
pub fn phi0<C: Coeff>(maxdeg: usize) -> Result<NCSeries<C>> {
    if maxdeg > 5 {
        return Err(Error::DegreeBound(format!("the reference associator is known through degree 5, asked {maxdeg}")));
    }
    let w: WBasis<C> = WBasis::new(maxdeg.max(4));
    let s = NCSeries::one(&Alphabet::xy(), maxdeg.max(4)).add(&w.get(3).scale_rat(&rat(1, 24))).add(&phi4(maxdeg.max(4)));
    Ok(s.with_maxdeg(maxdeg))
}

/// Result of extending a truncated associator by one degree.
#[derive(Clone)]
pub struct Extension<C> {
    /// The extended associator, exact through the new degree.
    pub series: NCSeries<C>,
    /// The Lie element added in the new degree.
    pub correction: NCSeries<C>,
    /// Basis of the homogeneous Lie elements that may be added freely.
    pub freedom: Vec<NCSeries<Rational>>,
}

/// Linear constraints on the new homogeneous Lie term, one block per relation.
struct Linearized<C> {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<C>,
}

impl<C: Coeff> Linearized<C> {
    fn push_nc(&mut self, defect: &NCSeries<C>, cols: &[NCSeries<Rational>], d: usize) {
        let mut words: std::collections::BTreeSet<Word> = defect.homogeneous(d).terms().map(|(w, _)| *w).collect();
        for c in cols {
            words.extend(c.homogeneous(d).terms().map(|(w, _)| *w));
        }
        for w in words {
            self.rows.push(cols.iter().map(|c| c.coeff(w)).collect());
            self.rhs.push(defect.coeff(w).neg_ref());
        }
    }

    fn push_holo(&mut self, defect: &HoloSeries<C>, cols: &[HoloSeries<Rational>], d: usize) {
        let mut words: std::collections::BTreeSet<Word> = defect.homogeneous(d).terms().map(|(w, _)| *w).collect();
        for c in cols {
            words.extend(c.homogeneous(d).terms().map(|(w, _)| *w));
        }
        for w in words {
            self.rows.push(cols.iter().map(|c| c.coeff(w)).collect());
            self.rhs.push(defect.coeff(w).neg_ref());
        }
    }
}

/// Extends `f`, an associator exact through degree `D = f.known_order()`, to
/// degree `D + 1` by solving the linearized duality, hexagon and pentagon
/// equations for a homogeneous Lie correction. With `parity` set and `D + 1`
/// odd, the correction must also cancel the odd part, selecting the even
/// solution. Otherwise free coordinates are set to zero.
pub fn extend_associator<C: Coeff>(
    f: &NCSeries<C>,
    lambda: &Rational,
    alg: &Arc<HoloAlgebra>,
    parity: bool,
) -> Result<Extension<C>> {
    let d = f.known_order() + 1;
    if alg.maxdeg() < d {
        return Err(Error::DegreeBound(format!("U(T_4) truncated at {} but degree {d} requested", alg.maxdeg())));
    }
    let a = Alphabet::xy();
    let log = f.log()?.assume_known(d).with_maxdeg(d);
    let base = log.exp()?;
    let lyndon: Vec<NCSeries<Rational>> = lie::lyndon_basis::<Rational>(&a, d)
        .into_iter()
        .filter(|(w, _)| w.len() == d)
        .map(|(_, p)| p)
        .collect();
    let mut sys = Linearized { rows: Vec::new(), rhs: Vec::new() };

    // duality: ℓ(y,x) + ℓ(x,y)
    let cols: Vec<NCSeries<Rational>> = lyndon.iter().map(|p| swap(p).add(p)).collect();
    sys.push_nc(&duality_defect(&base), &cols, d);

    // hexagon: ℓ(z,x) + ℓ(y,z) + ℓ(x,y)
    let x = NCSeries::<Rational>::var(&a, d, "x");
    let y = NCSeries::<Rational>::var(&a, d, "y");
    let z = x.add(&y).neg();
    let cols: Vec<NCSeries<Rational>> = lyndon
        .iter()
        .map(|p| {
            let zx = p.substitute(&[z.clone(), x.clone()]).expect("two letters");
            let yz = p.substitute(&[y.clone(), z.clone()]).expect("two letters");
            zx.add(&yz).add(p)
        })
        .collect();
    sys.push_nc(&hexagon_defect(&base, lambda), &cols, d);

    // pentagon: ℓ(d3) + ℓ(d1) − ℓ(d0) − ℓ(d2) − ℓ(d4)
    let cols: Result<Vec<HoloSeries<Rational>>> = lyndon
        .iter()
        .map(|p| {
            let [d3, d1, d0, d2, d4] = pentagon_faces(p, alg)?;
            Ok(d3.add(&d1).sub(&d0).sub(&d2).sub(&d4))
        })
        .collect();
    sys.push_holo(&pentagon_defect(&base, alg)?, &cols?, d);

    if parity && d % 2 == 1 {
        sys.push_nc(&base.homogeneous(d), &lyndon, d);
    }

    let sol = linalg::solve_affine(&sys.rows, &sys.rhs, lyndon.len())?;
    let mut correction = NCSeries::zero(&a, d);
    for (p, u) in lyndon.iter().zip(&sol.particular) {
        correction = correction.add(&p.map_coeffs(|c| C::from_rational(c)).scale(u));
    }
    let freedom = sol
        .kernel
        .iter()
        .map(|v| {
            let mut s = NCSeries::zero(&a, d);
            for (p, k) in lyndon.iter().zip(v) {
                s = s.add(&p.scale_rat(k));
            }
            s
        })
        .collect();
    Ok(Extension { series: base.add(&correction), correction, freedom })
}

/// `Φ̃(σ_i) = Φ(t_{i,i+1}, Y_i) s_i exp(λ t_{i,i+1}/2) Φ(Y_i, t_{i,i+1})` in `S_n ⋉ U(T_n)`.
pub fn phi_tilde_sigma<C: Coeff>(
    f: &NCSeries<C>,
    lambda: &Rational,
    alg: &Arc<HoloAlgebra>,
    i: usize,
) -> Result<SemiElt<C>> {
    if i == 0 || i >= alg.n() {
        return Err(Error::Precondition(format!("σ_{i} is not a generator of B_{}", alg.n())));
    }
    let t = HoloSeries::<C>::gen(alg, i, i + 1);
    let y = HoloSeries::<C>::y(alg, i);
    let left = HoloSeries::evaluate(f, &[t.clone(), y.clone()])?;
    let right = HoloSeries::evaluate(f, &[y, t.clone()])?;
    let e = t.scale(&C::from_rational(&(lambda / int(2)))).exp()?;
    let mid = SemiElt::from_series(e.mul(&right));
    Ok(SemiElt::from_series(left).mul(&SemiElt::transposition(alg, i)).mul(&mid))
}

/// `Φ̃` on a word of signed Artin generators `(i, ±1)`.
pub fn phi_tilde_word<C: Coeff>(
    f: &NCSeries<C>,
    lambda: &Rational,
    alg: &Arc<HoloAlgebra>,
    word: &[(usize, i32)],
) -> Result<SemiElt<C>> {
    let mut out = SemiElt::one(alg);
    for &(i, e) in word {
        let g = phi_tilde_sigma(f, lambda, alg, i)?;
        let g = if e > 0 { g } else { g.inverse()? };
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&g);
        }
    }
    Ok(out)
}
