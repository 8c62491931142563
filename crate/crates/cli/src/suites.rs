//! The `verify` suites. Each records its checks into a [`Recorder`]; check ids
//! are `<suite>.<name>` and anchors name the identity being verified.

use std::sync::Arc;

use drinfeld::associator::{
    c_extract, check_associator, check_duality, check_grouplike, check_hexagon, check_pentagon, extend_associator,
    phi0, Associator,
};
use drinfeld::braid::{b3_example, gt_act_on_rep, gt_act_on_rep_with, phat, BraidWord, TwistOrder};
use drinfeld::characters::{chi_d, chi_from_burau};
use drinfeld::check::CheckOutcome;
use drinfeld::coeff::{int, rat};
use drinfeld::grt::{
    act_grt, act_gt, check_gt_duality, check_gt_hexagon, check_gt_pentagon, degree3_parameter,
    expected_action_correction, grt_exp, grt_mul, iota, psi_ab, twisted_inverse,
};
use drinfeld::hecke::{
    a_d, b_semi, block_identities, hecke_infinitesimal, q_pow, rep_build, tableaux, unitarity_check, MatrixModel,
    Partition,
};
use drinfeld::holonomy::{hilbert_series, HoloAlgebra};
use drinfeld::kz::{displayed_h_form, h_form_to_hbar, mentions, phi_kz_truncation, specialize_even, Kz, GAMMA};
use drinfeld::lie::is_grouplike;
use drinfeld::{Coeff, NCSeries, Rational, Surd, SymCoef};

use crate::report::Recorder;
use crate::CliError;

pub const SUITES: [&str; 6] = ["associator", "grt", "gt", "braid", "hecke", "kz"];

pub struct Ctx {
    /// Truncation degree of the associator series, `2..=5`.
    pub degree: usize,
}

fn outcome(id: &str, passed: bool, witness: impl Into<String>) -> drinfeld::Result<CheckOutcome> {
    Ok(CheckOutcome::new(id, passed, witness))
}

/// Folds several outcomes into one: passes iff all pass; the witness lists failures.
fn all_of(id: &str, outcomes: Vec<CheckOutcome>) -> drinfeld::Result<CheckOutcome> {
    let failed: Vec<String> = outcomes.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.id, c.witness)).collect();
    if failed.is_empty() {
        outcome(id, true, format!("{} checks", outcomes.len()))
    } else {
        outcome(id, false, failed.join("; "))
    }
}

fn sym(name: &str) -> SymCoef {
    SymCoef::var(name)
}

fn u_t4(degree: usize) -> Result<Arc<HoloAlgebra>, CliError> {
    Ok(Arc::new(crate::cache::algebra(4, degree)?.0))
}

/// `ι_{Φ0}(exp Ψ_{a,b})` with formal `a`, `b`.
fn g_ab(degree: usize) -> drinfeld::Result<NCSeries<SymCoef>> {
    let phi = phi0::<SymCoef>(degree)?;
    iota(&phi, &grt_exp(&psi_ab(&sym("a"), &sym("b"), degree))?)
}

pub fn run(suite: &str, ctx: &Ctx, rec: &mut Recorder) -> Result<(), CliError> {
    match suite {
        "associator" => associator(ctx, rec),
        "grt" => grt(ctx, rec),
        "gt" => gt(ctx, rec),
        "braid" => braid(ctx, rec),
        "hecke" => hecke(ctx, rec),
        "kz" => kz(ctx, rec),
        _ => Err(CliError::Usage(format!("unknown suite `{suite}`"))),
    }
}

fn associator(ctx: &Ctx, rec: &mut Recorder) -> Result<(), CliError> {
    let d = ctx.degree;
    let alg = u_t4(d)?;
    rec.run("holonomy-dims", "holonomy/hilbert-series", || {
        let want: Vec<usize> = hilbert_series(4, d).into_iter().map(|x| x as usize).collect();
        let dims = alg.dims();
        outcome("holonomy-dims", dims == want, format!("{dims:?}"))
    });
    let phi = phi0::<Rational>(d)?;
    rec.run("grouplike", "associator/grouplike", || Ok(check_grouplike(&phi)));
    rec.run("duality", "associator/duality", || Ok(check_duality(&phi)));
    rec.run("hexagon", "associator/hexagon", || Ok(check_hexagon(&phi, &int(1))));
    rec.run("pentagon", "associator/pentagon", || check_pentagon(&phi, &alg));
    if d >= 3 {
        rec.run("c-vanishes", "associator/degree-3-parameter", || {
            let c = c_extract(&phi)?;
            outcome("c-vanishes", c.is_zero(), format!("c = {c}"))
        });
    } else {
        rec.skip("c-vanishes", "associator/degree-3-parameter", "needs degree 3");
    }
    rec.run("even-extension", "associator/extension", || {
        let e = extend_associator(&phi.truncate(d - 1), &int(1), &alg, true)?;
        outcome("even-extension", e.series == phi, format!("{} free directions", e.freedom.len()))
    });
    rec.run("kz-truncation", "associator/kz-truncation", || {
        let kz = phi_kz_truncation(d);
        all_of("kz-truncation", check_associator(&Associator::new(kz, int(1)), &alg)?)
    });
    Ok(())
}

fn grt(ctx: &Ctx, rec: &mut Recorder) -> Result<(), CliError> {
    let d = ctx.degree;
    let alg = u_t4(d)?;
    let f = |a: &str, b: &str| grt_exp(&psi_ab(&sym(a), &sym(b), d));
    let f1 = f("a", "b")?;
    rec.run("lambda-zero-associator", "grt/associator-equations", || {
        all_of("lambda-zero-associator", check_associator(&Associator::new(f1.clone(), int(0)), &alg)?)
    });
    rec.run("law-associative", "grt/group-law", || {
        let (f2, f3) = (f("a2", "b2")?, f("a3", "b3")?);
        let l = grt_mul(&grt_mul(&f1, &f2)?, &f3)?;
        let r = grt_mul(&f1, &grt_mul(&f2, &f3)?)?;
        outcome("law-associative", l == r, format!("first difference at degree {:?}", l.first_difference(&r)))
    });
    rec.run("inverse", "grt/group-law", || {
        let p = grt_mul(&f1, &twisted_inverse(&f1)?)?;
        outcome("inverse", p.is_one(), "f * f^-1")
    });
    let phi = phi0::<SymCoef>(d)?;
    rec.run("action-correction", "grt/action-on-associators", || {
        let moved = act_grt(&phi, &f1)?;
        let rest = moved.sub(&phi).sub(&psi_ab(&sym("a"), &sym("b"), d));
        let want = expected_action_correction(&sym("a"), d);
        outcome("action-correction", rest == want, format!("first difference at degree {:?}", rest.first_difference(&want)))
    });
    if d >= 3 {
        rec.run("degree-3-shift", "grt/action-on-associators", || {
            let moved = act_grt(&phi, &f1)?;
            let (c0, c1, z) = (c_extract(&phi)?, c_extract(&moved)?, degree3_parameter(&f1)?);
            outcome("degree-3-shift", c1 == c0.add_ref(&z) && z == sym("a").neg_ref(), format!("c = {c1}, z = {z}"))
        });
    } else {
        rec.skip("degree-3-shift", "grt/action-on-associators", "needs degree 3");
    }
    Ok(())
}

fn gt(ctx: &Ctx, rec: &mut Recorder) -> Result<(), CliError> {
    let d = ctx.degree;
    let alg = u_t4(d)?;
    let phi = phi0::<SymCoef>(d)?;
    let g = g_ab(d)?;
    rec.run("grouplike", "gt/grouplike", || outcome("grouplike", is_grouplike(&g), "g_{a,b}"));
    rec.run("duality", "gt/duality", || Ok(check_gt_duality(&g)));
    rec.run("hexagon", "gt/hexagon", || check_gt_hexagon(&g));
    rec.run("pentagon", "gt/pentagon", || check_gt_pentagon(&g, &phi, &alg));
    rec.run("actions-agree", "gt/grt-compatibility", || {
        let lhs = act_gt(&g, &phi)?;
        let rhs = act_grt(&phi, &grt_exp(&psi_ab(&sym("a"), &sym("b"), d))?)?;
        outcome("actions-agree", lhs == rhs, format!("first difference at degree {:?}", lhs.first_difference(&rhs)))
    });
    if d >= 4 {
        rec.run("log-degree-4", "gt/logarithm", || {
            let l = g.log()?.homogeneous(4);
            outcome("log-degree-4", l.is_zero(), "degree-4 part of log g")
        });
    } else {
        rec.skip("log-degree-4", "gt/logarithm", "needs degree 4");
    }
    Ok(())
}

fn braid(ctx: &Ctx, rec: &mut Recorder) -> Result<(), CliError> {
    let d = ctx.degree;
    let phi = phi0::<Rational>(d)?;
    for shape in ["2,1", "2,2", "3,1", "2,1,1"] {
        let alpha = Partition::parse(shape)?;
        let rho = hecke_infinitesimal::<Rational>(&alpha)?;
        let r = phat(&rho, &phi, &int(1))?;
        rec.run(&format!("braid-relations[{shape}]"), "braid/relations", || Ok(r.braid_relation_check()));
        rec.run(&format!("pure-depth[{shape}]"), "braid/pure-braids", || r.pure_braid_depth_check());
    }
    for v in [int(5), int(7), rat(1, 2)] {
        rec.run(&format!("b3-infinitesimal(v={v})"), "braid/infinitesimal-relations", || {
            all_of("b3", b3_example(&v)?.validate())
        });
    }
    let phis = phi0::<SymCoef>(d)?;
    let g = g_ab(d)?;
    let rho = b3_example(&SymCoef::from_int(5))?;
    let r = phat(&rho, &phis, &int(1))?;
    rec.run("twist-compatible", "braid/gt-action", || {
        let moved = phat(&rho, &act_gt(&g, &phis)?, &int(1))?;
        let diff = gt_act_on_rep(&r, &g)?.agrees(&moved);
        outcome("twist-compatible", diff.is_none(), diff.unwrap_or_else(|| "g.R = R(g.Phi)".into()))
    });
    if d >= 3 {
        rec.run("twist-order-matters", "braid/gt-action", || {
            let moved = phat(&rho, &act_gt(&g, &phis)?, &int(1))?;
            let diff = gt_act_on_rep_with(&r, &g, TwistOrder::SigmaSquaredFirst)?.agrees(&moved);
            outcome("twist-order-matters", diff.is_some(), diff.unwrap_or_else(|| "orders agree".into()))
        });
    } else {
        rec.skip("twist-order-matters", "braid/gt-action", "needs degree 3");
    }
    rec.run("characters-two-routes", "braid/characters", || {
        let burau = chi_from_burau(&g, &phis, 4)?;
        let mut bad = Vec::new();
        for k in 2..=4usize {
            if !chi_d(&g, k as i64, &phis)?.agrees(&burau[&k]) {
                bad.push(format!("chi{k}"));
            }
        }
        outcome("characters-two-routes", bad.is_empty(), if bad.is_empty() { "chi2..chi4".into() } else { bad.join(" ") })
    });
    Ok(())
}

fn hecke(ctx: &Ctx, rec: &mut Recorder) -> Result<(), CliError> {
    let d = ctx.degree;
    let phi = phi0::<Rational>(d)?;
    let semi = MatrixModel::semi_normal(&phi);
    let unitary = MatrixModel::<Surd>::unitary(d);
    for n in 2..=5 {
        for alpha in Partition::all(n) {
            let r = rep_build(&alpha, &semi)?;
            let u = rep_build(&alpha, &unitary)?;
            rec.run(&format!("semi-normal[{alpha}]"), "hecke/braid-relations", || Ok(r.braid_relation_check()));
            rec.run(&format!("unitary[{alpha}]"), "hecke/braid-relations", || Ok(u.braid_relation_check()));
            rec.run(&format!("unitarity[{alpha}]"), "hecke/unitarity", || Ok(unitarity_check(&u)));
            rec.run(&format!("delta-eigenvalues[{alpha}]"), "hecke/jucys-murphy", || {
                let tabs = tableaux(&alpha);
                for k in 2..=n {
                    let m = r.image(&BraidWord::delta(n, k)?)?;
                    for (i, t) in tabs.iter().enumerate() {
                        let diag = m.entry(i, i).agrees(&q_pow::<Rational>(d, 2 * t.content(k)));
                        let off = (0..tabs.len()).all(|j| j == i || m.entry(i, j).is_zero());
                        if !(diag && off) {
                            return outcome("delta", false, format!("delta{k} on {t}"));
                        }
                    }
                }
                outcome("delta", true, "q^(2c_k(T))")
            });
        }
    }
    for k in 2..=6i64 {
        rec.run(&format!("block-identities(d={k})"), "hecke/blocks", || {
            all_of("blocks", vec![block_identities(&semi.block(k)?), block_identities(&unitary.block(k)?)])
        });
    }
    rec.run("a-recurrence", "hecke/blocks", || {
        let (q, qinv) = (q_pow::<Rational>(d, 1), q_pow::<Rational>(d, -1));
        let ok = (2..=6).all(|k| {
            let (ak, ak1) = (a_d::<Rational>(d, k), a_d::<Rational>(d, k + 1));
            ak1.mul(&q.sub(&ak)).agrees(&ak.mul(&qinv))
        });
        outcome("a-recurrence", ok, "a_{d+1}(q - a_d) = a_d/q, d = 2..6")
    });
    for shape in ["2,1", "2,2", "3,2"] {
        rec.run(&format!("phat-equals-model[{shape}]"), "hecke/semi-normal-model", || {
            let alpha = Partition::parse(shape)?;
            let p = phat(&hecke_infinitesimal::<Rational>(&alpha)?, &phi, &int(1))?;
            let diff = p.agrees(&rep_build(&alpha, &semi)?);
            outcome("phat", diff.is_none(), diff.unwrap_or_else(|| "matrixwise".into()))
        });
    }
    Ok(())
}

fn kz(ctx: &Ctx, rec: &mut Recorder) -> Result<(), CliError> {
    let kz = Kz::default();
    let phi5 = phi0::<Rational>(5)?;
    let is_even_zeta =
        |s: &str| s.strip_prefix("zeta").and_then(|k| k.parse::<usize>().ok()).is_some_and(|k| k % 2 == 0);
    for d in 2..=6i64 {
        rec.run(&format!("ratio-formula(d={d})"), "kz/ratio", || {
            let ratio = kz.b_kz(d, 1)?.div(&kz.b_kz(d, -1)?)?;
            outcome("ratio", ratio == kz.ratio_formula(d)?, format!("{ratio}"))
        });
        rec.run(&format!("odd-zeta-only(d={d})"), "kz/ratio", || {
            let lh = kz.h_tilde(d)?.log()?;
            outcome("odd", !mentions(&lh, |n| n == GAMMA || is_even_zeta(n)), format!("{lh}"))
        });
        rec.run(&format!("even-reference(d={d})"), "kz/even-associators", || {
            let (bp, bm, be, ht) = (kz.b_kz(d, 1)?, kz.b_kz(d, -1)?, kz.b_even_ref(d)?, kz.h_tilde(d)?);
            outcome("even", bp.div(&be)? == ht && bm.div(&be)? == ht.inverse()?, "b_KZ / b_even = H^(+-1)")
        });
        rec.run(&format!("log-h-tilde(d={d})"), "kz/closed-form", || {
            let lh = kz.h_tilde(d)?.log()?;
            let mut bad = Vec::new();
            for k in [3usize, 5, 7] {
                let r = displayed_h_form(k, d).expect("k in 3, 5, 7");
                let want = h_form_to_hbar(k, &r)?;
                if lh.coeff(k) != want {
                    bad.push(format!("hbar^{k}: {} vs {want}", lh.coeff(k)));
                }
            }
            outcome("log", bad.is_empty(), if bad.is_empty() { "hbar^3, hbar^5, hbar^7".into() } else { bad.join("; ") })
        });
        rec.run(&format!("specialize-even(d={d})"), "kz/even-associators", || {
            let sp = specialize_even(&kz.b_even_ref(d)?)?;
            let bs = b_semi(&phi5, d)?;
            outcome("specialize", (0..=4).all(|k| sp.coeff(k) == bs.coeff(k)), format!("{sp}"))
        });
    }
    let degree = ctx.degree;
    rec.run("truncation-twist", "kz/truncation", || {
        let trunc = phi_kz_truncation(degree);
        let back = psi_ab(&sym("zt3").neg_ref(), &sym("zt5").scale(&rat(-1, 2)), degree);
        let moved = act_grt(&trunc, &grt_exp(&back)?)?;
        outcome("twist", moved == phi0::<SymCoef>(degree)?, "Phi_KZ . Psi = Phi0")
    });
    Ok(())
}
