//! Exact expansions in `ħ = h/(2iπ)` of the Gamma-function expressions for the
//! KZ matrix models, over `ℚ[γ, ζ_2, ζ_3, …]`.
//!
//! Symbols: `gamma` for Euler's constant and `zeta<k>` for `ζ(k)`. The degree-5
//! truncation of `Φ_KZ` uses `zt3`, `zt5` for `ζ(k)/(2iπ)^k`.

use crate::coeff::{bernoulli, factorial, int, rat, Coeff, Rational, SymCoef, SymMono};
use crate::error::{Error, Result};
use crate::lie::WBasis;
use crate::scalar::ScalarSeries;
use crate::series::{Alphabet, NCSeries};

/// A series in `ħ` with coefficients in `ℚ[γ, ζ_k]`.
pub type HbarSeries = ScalarSeries<SymCoef>;

pub const GAMMA: &str = "gamma";

pub fn zeta_symbol(k: usize) -> String {
    format!("zeta{k}")
}

pub fn zeta(k: usize) -> SymCoef {
    SymCoef::var(&zeta_symbol(k))
}

/// Truncation order in `ħ` and the largest admissible `ζ` index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kz {
    pub order: usize,
    pub zeta_bound: usize,
}

impl Default for Kz {
    fn default() -> Self {
        Kz { order: 8, zeta_bound: 9 }
    }
}

impl Kz {
    pub fn new(order: usize, zeta_bound: usize) -> Result<Self> {
        if order > zeta_bound {
            return Err(Error::DegreeBound(format!("order {order} needs ζ up to {order}, bound is {zeta_bound}")));
        }
        Ok(Kz { order, zeta_bound })
    }

    /// `c·ħ`.
    pub fn hbar(&self, c: i64) -> HbarSeries {
        ScalarSeries::h(self.order).scale_rat(&int(c))
    }

    /// `log Γ(1+z) = −γz + Σ_{k≥2} (−1)^k ζ_k z^k / k` for `z ≡ 0 mod ħ`.
    pub fn loggamma(&self, z: &HbarSeries) -> Result<HbarSeries> {
        if !z.coeff(0).is_zero() {
            return Err(Error::Precondition("loggamma needs a series without constant term".into()));
        }
        let mut out = ScalarSeries::zero(self.order).truncate(z.known());
        let mut p = ScalarSeries::one(self.order);
        for k in 1..=z.known() {
            p = p.mul(z);
            if p.is_zero() {
                break;
            }
            let c = if k == 1 {
                SymCoef::var(GAMMA).neg_ref()
            } else {
                if k > self.zeta_bound {
                    return Err(Error::DegreeBound(format!("ζ_{k} beyond the symbol bound")));
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                zeta(k).scale(&rat(sign, k as i64))
            };
            out = out.add(&p.scale(&c));
        }
        Ok(out)
    }

    /// `log J(x)` with `J(x) = Γ(1+x)/Γ(1−x)`.
    pub fn log_j(&self, x: &HbarSeries) -> Result<HbarSeries> {
        Ok(self.loggamma(x)?.sub(&self.loggamma(&x.neg())?))
    }

    /// `log I(x)` with `I(x) = Γ(1+x)Γ(1−x)`.
    pub fn log_i(&self, x: &HbarSeries) -> Result<HbarSeries> {
        Ok(self.loggamma(x)?.add(&self.loggamma(&x.neg())?))
    }

    /// `Ĩ(z) = I(2zħ)`.
    pub fn i_tilde(&self, z: i64) -> Result<HbarSeries> {
        self.log_i(&self.hbar(2 * z))?.exp()
    }

    /// `log J̃(z) = log J(2zħ)`.
    pub fn log_j_tilde(&self, z: i64) -> Result<HbarSeries> {
        self.log_j(&self.hbar(2 * z))
    }

    /// `log F(a, b)` for one branch `δ = sħ` of `√(a² + b² − 4)·ħ`.
    fn log_f_branch(&self, a: i64, b: i64, s: i64) -> Result<HbarSeries> {
        let lg = |c: i64| self.loggamma(&self.hbar(c));
        Ok(lg(-2 * a)?.add(&lg(2 * b)?).sub(&lg(b - a + s)?).sub(&lg(b - a - s)?))
    }

    /// `F(a,b) = Γ_3(ħa, ħb, −2ħ²)` where
    /// `Γ_3(a,b,c) = Γ(1−2a)Γ(1+2b)/(Γ(1+b−a+δ)Γ(1+b−a−δ))`, `δ² = a² + b² + 2c`.
    pub fn gamma3_f(&self, a: i64, b: i64) -> Result<HbarSeries> {
        let disc = a * a + b * b - 4;
        let s = integer_sqrt(disc).ok_or_else(|| {
            Error::Precondition(format!("a² + b² − 4 = {disc} is not a square; δ is not a multiple of ħ"))
        })?;
        let plus = self.log_f_branch(a, b, s)?;
        debug_assert_eq!(plus, self.log_f_branch(a, b, -s)?);
        plus.exp()
    }

    /// Both square-root branches of `δ` give the same `F(a, b)`.
    pub fn gamma3_branch_symmetric(&self, a: i64, b: i64) -> Result<bool> {
        let s = integer_sqrt(a * a + b * b - 4).ok_or_else(|| Error::Precondition("no integer branch".into()))?;
        Ok(self.log_f_branch(a, b, s)? == self.log_f_branch(a, b, -s)?)
    }

    /// `Z(a,b) = F(a,b)F(b,−a)`.
    pub fn z(&self, a: i64, b: i64) -> Result<HbarSeries> {
        Ok(self.gamma3_f(a, b)?.mul(&self.gamma3_f(b, -a)?))
    }

    /// `(q + q^{-1})/2 = Ĩ(1)/Ĩ(2)`.
    pub fn cosine_factor(&self) -> Result<HbarSeries> {
        Ok(self.i_tilde(1)?.mul(&self.i_tilde(2)?.inverse()?))
    }

    /// `b_d^s(Φ_KZ)` (`sign = 1`) or `b_d^s(Φ̄_KZ)` (`sign = −1`).
    pub fn b_kz(&self, d: i64, sign: i64) -> Result<HbarSeries> {
        if d < 2 {
            return Err(Error::Precondition("d ≥ 2".into()));
        }
        let zs = if sign > 0 { self.z(d, 2)?.add(&self.z(d, -2)?) } else { self.z(-d, -2)?.add(&self.z(-d, 2)?) };
        Ok(zs.mul(&self.cosine_factor()?).scale_rat(&rat(d + 1, 2 * d)))
    }

    /// `b_d^s` of an even associator: `((d+1)/d) Ĩ(d)/√(Ĩ(d+1)Ĩ(d−1))`.
    pub fn b_even_ref(&self, d: i64) -> Result<HbarSeries> {
        let den = self.i_tilde(d + 1)?.mul(&self.i_tilde(d - 1)?).sqrt()?;
        Ok(self.i_tilde(d)?.mul(&den.inverse()?).scale_rat(&rat(d + 1, d)))
    }

    /// `H̃(d) = √(J̃(d−1)J̃(d+1))/J̃(d)`.
    pub fn h_tilde(&self, d: i64) -> Result<HbarSeries> {
        let half = self.log_j_tilde(d - 1)?.add(&self.log_j_tilde(d + 1)?).scale_rat(&rat(1, 2));
        half.sub(&self.log_j_tilde(d)?).exp()
    }

    /// `exp(−2 Σ_{n≥1} ζ_{2n+1}/(2n+1) · 2^{2n+1} ħ^{2n+1} Q_n(d))`.
    pub fn ratio_formula(&self, d: i64) -> Result<HbarSeries> {
        let mut log = ScalarSeries::zero(self.order);
        let mut n = 1;
        while 2 * n + 1 <= self.order {
            let k = 2 * n + 1;
            let c = zeta(k).scale(&(int(-2) * rat(1, k as i64) * pow(2, k) * q_n(n, d)));
            let mut mono = ScalarSeries::zero(self.order);
            mono.set_coeff(k, c);
            log = log.add(&mono);
            n += 1;
        }
        log.exp()
    }
}

fn pow(b: i64, e: usize) -> Rational {
    let mut r = int(1);
    for _ in 0..e {
        r *= int(b);
    }
    r
}

fn integer_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let s = (n as f64).sqrt().round() as i64;
    (s * s == n).then_some(s)
}

/// `Q_n(d) = (d+1)^{2n+1} + (d−1)^{2n+1} − 2d^{2n+1}`.
pub fn q_n(n: usize, d: i64) -> Rational {
    let k = 2 * n + 1;
    pow(d + 1, k) + pow(d - 1, k) - pow(d, k) * int(2)
}

/// The `ħ^k` coefficient of a term `r·i·ζ(k)/π^k·h^k` after `h = 2iπħ`: `r·2^k·i^{k+1}·ζ_k`
/// (odd `k`, so `i^{k+1} = ±1`).
pub fn h_form_to_hbar(k: usize, r: &Rational) -> Result<SymCoef> {
    if k % 2 == 0 {
        return Err(Error::Precondition("only odd powers carry a single factor i".into()));
    }
    let sign = if ((k + 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(zeta(k).scale(&(r * pow(2, k) * int(sign))))
}

/// The rational `r` in the displayed `h`-expansion `r·i·ζ(k)/π^k·h^k` of
/// `log(b_d^s(Φ_KZ)/b_d^s(Φ))` for `k = 3, 5, 7`.
pub fn displayed_h_form(k: usize, d: i64) -> Option<Rational> {
    let d = int(d);
    match k {
        3 => Some(int(-2) * &d),
        5 => Some(int(2) * &d * (int(2) * &d * &d + int(1))),
        7 => Some(int(-2) * &d * (int(1) + int(3) * pow_r(&d, 4) + int(5) * &d * &d)),
        _ => None,
    }
}

fn pow_r(r: &Rational, e: usize) -> Rational {
    let mut out = int(1);
    for _ in 0..e {
        out *= r;
    }
    out
}

/// `ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2(2k)!)`, as the rational multiple of `π^{2k}`.
pub fn even_zeta_over_pi_power(k: usize) -> Rational {
    let b = bernoulli(2 * k)[2 * k].clone();
    let sign = if k % 2 == 1 { 1 } else { -1 };
    b * pow(2, 2 * k) * int(sign) / (Rational::from_integer(factorial(2 * k)) * int(2))
}

/// Replaces `ζ_{2k}` by Euler's values and `ħ` by `h/(2iπ)`; every power of `π`
/// and `i` must cancel.
pub fn specialize_even(s: &HbarSeries) -> Result<ScalarSeries<Rational>> {
    let mut out = ScalarSeries::zero(s.maxdeg()).truncate(s.known());
    for m in 0..=s.known() {
        let mut total = int(0);
        for (mono, c) in s.coeff(m).terms() {
            let mut pi_power = 0usize;
            let mut value = c.clone();
            for (name, e) in mono.factors() {
                let k = name
                    .strip_prefix("zeta")
                    .and_then(|x| x.parse::<usize>().ok())
                    .filter(|k| k % 2 == 0)
                    .ok_or_else(|| Error::Precondition(format!("symbol `{name}` has no even-zeta value")))?;
                for _ in 0..*e {
                    value *= even_zeta_over_pi_power(k / 2);
                    pi_power += k;
                }
            }
            if pi_power != m {
                return Err(Error::Precondition(format!("π^{pi_power} against ħ^{m} does not cancel")));
            }
            // ħ^m = h^m/(2iπ)^m with m even: (2i)^{-m} = (−1)^{m/2}/2^m.
            let sign = if (m / 2) % 2 == 0 { 1 } else { -1 };
            total += value * int(sign) / pow(2, m);
        }
        out.set_coeff(m, total);
    }
    Ok(out)
}

/// Whether any coefficient of `s` involves a symbol accepted by `pred`.
pub fn mentions(s: &HbarSeries, pred: impl Fn(&str) -> bool) -> bool {
    s.coeffs().iter().any(|c| c.terms().any(|(m, _): (&SymMono, _)| m.factors().iter().any(|(n, _)| pred(n))))
}

/// `1 + w_3/24 + ζ̃_3ψ_1 + φ_4 + ζ̃_5ψ_2/2 − ζ̃_3(w_10 + w_11 − w_3ψ_1)/24` with formal
/// `zt3`, `zt5`. The sign of `w_3ψ_1` is the one that makes the series grouplike,
/// i.e. the truncation equals `Φ_0.Ψ_{ζ̃_3, ζ̃_5/2}`.
pub fn phi_kz_truncation(maxdeg: usize) -> NCSeries<SymCoef> {
    let w: WBasis<SymCoef> = WBasis::new(maxdeg.max(5));
    let (z3, z5) = (SymCoef::var("zt3"), SymCoef::var("zt5"));
    let psi1 = crate::grt::psi1::<SymCoef>(maxdeg.max(5));
    let psi2 = crate::grt::psi2::<SymCoef>(maxdeg.max(5));
    let corr = w.get(10).add(w.get(11)).sub(&w.get(3).mul(&psi1));
    NCSeries::one(&Alphabet::xy(), maxdeg.max(5))
        .add(&w.get(3).scale_rat(&rat(1, 24)))
        .add(&psi1.scale(&z3))
        .add(&crate::associator::phi4::<SymCoef>(maxdeg.max(5)))
        .add(&psi2.scale(&z5.scale(&rat(1, 2))))
        .sub(&corr.scale(&z3.scale(&rat(1, 24))))
        .with_maxdeg(maxdeg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_values() {
        assert_eq!(even_zeta_over_pi_power(1), rat(1, 6));
        assert_eq!(even_zeta_over_pi_power(2), rat(1, 90));
        assert_eq!(even_zeta_over_pi_power(3), rat(1, 945));
    }

    #[test]
    fn q_n_values() {
        assert_eq!(q_n(1, 4), int(24));
        assert_eq!(q_n(0, 4), int(0));
    }
}
