//! Acceptance criteria 1 to 11, exact over ℚ. Prints one PASS/FAIL line per
//! criterion, then fails the process on any unexpected outcome.
//!
//! Criterion 3 states the w14 coordinate of the degree-5 part as −(b + a/24);
//! the computed coordinate is −(3b + a/24). That clause is reported as FAIL and
//! the run only accepts that exact failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use drinfeld::associator::{
    c_extract, check_duality, check_grouplike, check_hexagon, check_pentagon, extend_associator, phi0, phi4,
};
use drinfeld::braid::{b3_example, diagonal_conjugator, gt_act_on_rep, phat, sigma2_difference, BraidWord};
use drinfeld::characters::{chi_d, chi_from_burau, diagonal_vectors, hook_identity, resonance, wedge_injective, ExponentVector};
use drinfeld::check::CheckOutcome;
use drinfeld::coeff::{int, rat};
use drinfeld::grt::{
    act_grt, act_gt, check_gt_duality, check_gt_hexagon, grt_exp, ihara_projection, ihara_reference, iota,
    match_parameters, psi_ab,
};
use drinfeld::hecke::{
    a_d, block_identities, hecke_infinitesimal, q_pow, rep_build, tableaux, unitarity_check, MatrixModel, Partition,
};
use drinfeld::holonomy::HoloAlgebra;
use drinfeld::kz::{displayed_h_form, h_form_to_hbar, mentions, specialize_even, Kz, GAMMA};
use drinfeld::coeff::CoeffText;
use drinfeld::lie::WBasis;
use drinfeld::text::render_series;
use drinfeld::scalar::ScalarSeries;
use drinfeld::{Coeff, NCSeries, Rational, Surd, SymCoef};

type Clauses = Vec<CheckOutcome>;

fn clause(id: impl Into<String>, ok: bool, witness: impl Into<String>) -> CheckOutcome {
    CheckOutcome::new(id, ok, witness)
}

fn sym(name: &str) -> SymCoef {
    SymCoef::var(name)
}

fn sr(r: Rational) -> SymCoef {
    SymCoef::from_rational(&r)
}

fn cache_dir() -> PathBuf {
    std::env::var_os("DRINFELD_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("drinfeld-cache"))
}

fn phi0_sym() -> NCSeries<SymCoef> {
    phi0::<SymCoef>(5).expect("reference associator")
}

/// `g_{a,b} = ι_{Φ0}(exp Ψ_{a,b})` with formal `a`, `b`.
fn g_ab() -> NCSeries<SymCoef> {
    let f = grt_exp(&psi_ab(&sym("a"), &sym("b"), 5)).expect("grt exponential");
    iota(&phi0_sym(), &f).expect("iota")
}

/// Terms of a series on one line.
fn show<C: CoeffText>(s: &NCSeries<C>) -> String {
    let text = render_series(s);
    let terms: Vec<&str> = text.lines().skip(1).collect();
    if terms.is_empty() { "0".into() } else { terms.join("; ").replace('\t', " ") }
}

fn same_terms<C: Coeff>(s: &NCSeries<C>, t: &NCSeries<C>) -> bool {
    s.terms().eq(t.terms())
}

/// Builds `Σ c_k h^k` from `(k, c_k)` pairs.
fn hseries(maxdeg: usize, terms: &[(usize, SymCoef)]) -> ScalarSeries<SymCoef> {
    let mut s = ScalarSeries::zero(maxdeg);
    for (k, c) in terms {
        s.set_coeff(*k, c.clone());
    }
    s
}

fn criterion_1() -> Clauses {
    let mut out = Vec::new();
    let alg = Arc::new(HoloAlgebra::load_or_build(4, 6, Some(&cache_dir())).expect("U(T_4) cache"));
    let dims = alg.dims();
    out.push(clause("U(T4)-dims", dims == [1, 6, 25, 90, 301, 966, 3025], format!("{dims:?}")));
    let phi = phi0::<Rational>(5).expect("reference associator");
    out.push(check_grouplike(&phi));
    out.push(check_duality(&phi));
    out.push(check_hexagon(&phi, &int(1)));
    out.push(check_pentagon(&phi, &alg).expect("pentagon"));
    let c = c_extract(&phi).expect("c");
    out.push(clause("c(Phi0)=0", c.is_zero(), format!("c = {c}")));
    out
}

fn criterion_2() -> Clauses {
    let mut out = Vec::new();
    let alg = Arc::new(HoloAlgebra::load_or_build(4, 6, Some(&cache_dir())).expect("U(T_4) cache"));
    let w = WBasis::<Rational>::new(5);
    let start = NCSeries::<Rational>::one(&drinfeld::Alphabet::xy(), 4).truncate(1);
    let e2 = extend_associator(&start, &int(1), &alg, false).expect("degree 2");
    let forced = e2.freedom.is_empty() && same_terms(&e2.correction, &w.get(3).scale_rat(&rat(1, 24)));
    out.push(clause("degree-2-forced", forced, show(&e2.correction)));

    let e3 = extend_associator(&e2.series, &int(1), &alg, false).expect("degree 3");
    let line = w.get(4).sub(w.get(5)).with_maxdeg(4);
    let is_line = e3.freedom.len() == 1 && {
        let f = &e3.freedom[0];
        let k = f.coeff(f.terms().next().map(|(w, _)| *w).expect("nonzero")) / line.coeff(*f.terms().next().unwrap().0);
        f.sub(&line.scale_rat(&k)).is_zero()
    };
    out.push(clause("degree-3-line", is_line && e3.correction.is_zero(), format!("{} free directions", e3.freedom.len())));

    let c = sym("c");
    let base = e3.series.map_coeffs(|r| SymCoef::from_rational(r));
    let with_c = base.add(&line.map_coeffs(|r| SymCoef::from_rational(r)).scale(&c).with_maxdeg(3));
    let e4 = extend_associator(&with_c, &int(1), &alg, false).expect("degree 4");
    let ok = e4.freedom.is_empty() && same_terms(&e4.series.homogeneous(4), &phi4::<SymCoef>(4).homogeneous(4));
    out.push(clause("degree-4-phi4", ok, show(&e4.series.homogeneous(4))));
    out
}

fn criterion_3() -> Clauses {
    let mut out = Vec::new();
    let (a, b) = (sym("a"), sym("b"));
    let g = g_ab();
    let log = g.log().expect("log");
    out.push(clause("log-degree-4", log.homogeneous(4).is_zero(), show(&log.homogeneous(4))));
    let w = WBasis::<SymCoef>::new(5);
    let coords = w.coordinates(&log.homogeneous(5), 5).expect("w9..w14 coordinates");
    let a24 = a.scale(&rat(1, 24));
    let stated: [SymCoef; 6] = [
        b.scale(&int(-2)),
        b.scale(&int(-4)),
        b.scale(&int(-4)),
        b.scale(&int(-2)),
        b.sub_ref(&a24).neg_ref(),
        b.add_ref(&a24).neg_ref(),
    ];
    for (k, (got, want)) in coords.iter().zip(&stated).enumerate() {
        out.push(clause(
            format!("log-degree-5-w{}", k + 9),
            got == want,
            format!("computed {got}, stated {want}"),
        ));
    }
    out.push(check_gt_duality(&g));
    out.push(check_gt_hexagon(&g).expect("hexagon"));
    let f = grt_exp(&psi_ab(&a, &b, 5)).expect("grt exponential");
    let lhs = act_gt(&g, &phi0_sym()).expect("gt action");
    let rhs = act_grt(&phi0_sym(), &f).expect("grt action");
    out.push(clause("gt-grt-actions-agree", lhs == rhs, format!("first difference at degree {:?}", lhs.first_difference(&rhs))));
    out
}

fn criterion_4() -> Clauses {
    let mut out = Vec::new();
    let g = g_ab();
    let phi = phi0_sym();
    let burau = chi_from_burau(&g, &phi, 6).expect("Burau route");
    for d in 2..=6i64 {
        let di = int(d);
        let want = hseries(
            5,
            &[
                (0, SymCoef::one()),
                (3, sym("a").scale(&(int(-16) * &di))),
                (5, sym("b").scale(&(int(-128) * &di * (int(1) + int(2) * &di * &di)))),
            ],
        );
        let model = chi_d(&g, d, &phi).expect("model route");
        out.push(clause(format!("chi{d}-model"), model.agrees(&want) && model.known() >= 5, format!("{model}")));
        let via_burau = &burau[&(d as usize)];
        out.push(clause(format!("chi{d}-burau"), via_burau.agrees(&want) && via_burau.known() >= 5, format!("{via_burau}")));
        let l = model.log().expect("log");
        let ok = [1, 2, 4].iter().all(|&k| l.coeff(k).is_zero());
        out.push(clause(format!("log-chi{d}-odd"), ok, format!("{l}")));
    }
    out
}

fn criterion_5() -> Clauses {
    let mut out = Vec::new();
    let g = g_ab();
    let phi = phi0_sym();
    for v in [int(5), int(7), rat(1, 2)] {
        let rho = b3_example(&sr(v.clone())).expect("B3 example");
        let r = phat(&rho, &phi, &int(1)).expect("phat");
        let twisted = gt_act_on_rep(&r, &g).expect("twist");
        let dg = diagonal_conjugator(&r, &twisted, None).expect("diagonal conjugator");
        let q2 = dg[1].div(&dg[0]).expect("Q2");
        let q3 = dg[2].div(&dg[1]).expect("Q3");
        let v2m9 = &v * &v - int(9);
        let want2 = hseries(
            5,
            &[
                (0, SymCoef::one()),
                (3, sym("a").scale(&(rat(-1, 8) * &v * &v2m9))),
                (5, sym("b").scale(&(rat(-9, 64) * &v * &v2m9 * (&v * &v + int(7))))),
            ],
        );
        out.push(clause(format!("Q2(v={v})"), q2.agrees(&want2) && q2.known() >= 5, format!("{q2}")));
        let want3 = sym("a").scale(&(rat(1, 16) * (&v + int(9)) * &v2m9));
        out.push(clause(format!("Q3-h3(v={v})"), q3.coeff(3) == want3 && q3.known() >= 5, format!("{}", q3.coeff(3))));
    }
    out
}

fn criterion_6() -> Clauses {
    let mut out = Vec::new();
    let phi = phi0::<Rational>(5).expect("reference associator");
    let semi = MatrixModel::semi_normal(&phi);
    let unitary = MatrixModel::<Surd>::unitary(5);
    let mut braid_bad = Vec::new();
    let mut delta_bad = Vec::new();
    let mut unit_bad = Vec::new();
    let mut count = 0;
    for n in 2..=6 {
        for alpha in Partition::all(n) {
            let r = rep_build(&alpha, &semi).expect("semi-normal rep");
            let u = rep_build(&alpha, &unitary).expect("unitary rep");
            count += 1;
            for rep_check in [r.braid_relation_check(), u.braid_relation_check()] {
                if !rep_check.passed || r.known() < 5 {
                    braid_bad.push(format!("[{alpha}] {}", rep_check.witness));
                }
            }
            let uc = unitarity_check(&u);
            if !uc.passed {
                unit_bad.push(format!("[{alpha}] {}", uc.witness));
            }
            let tabs = tableaux(&alpha);
            for k in 2..=n {
                let m = r.image(&BraidWord::delta(n, k).expect("delta")).expect("image");
                for (i, t) in tabs.iter().enumerate() {
                    let want = q_pow::<Rational>(5, 2 * t.content(k));
                    let diag_ok = m.entry(i, i).agrees(&want);
                    let off_ok = (0..tabs.len()).all(|j| j == i || m.entry(i, j).is_zero());
                    if !(diag_ok && off_ok) {
                        delta_bad.push(format!("[{alpha}] δ{k} on {t}"));
                    }
                }
            }
        }
    }
    out.push(clause("braid-relations", braid_bad.is_empty(), if braid_bad.is_empty() { format!("{count} shapes, both models, mod h^6") } else { braid_bad.join("; ") }));
    out.push(clause("delta-eigenvalues", delta_bad.is_empty(), if delta_bad.is_empty() { "q^(2c_r(T)) on every tableau".into() } else { delta_bad.join("; ") }));
    out.push(clause("unitary-model", unit_bad.is_empty(), if unit_bad.is_empty() { "eps-transpose inverse mod h^6".into() } else { unit_bad.join("; ") }));
    let mut block_bad = Vec::new();
    for d in 2..=6 {
        for c in [block_identities(&semi.block(d).expect("block")), block_identities(&unitary.block(d).expect("block"))] {
            if !c.passed {
                block_bad.push(format!("d={d}: {}", c.witness));
            }
        }
    }
    out.push(clause("block-trace-det", block_bad.is_empty(), block_bad.join("; ")));
    let q = q_pow::<Rational>(6, 1);
    let qinv = q_pow::<Rational>(6, -1);
    let rec = (2..=6).all(|d| {
        let (ad, ad1) = (a_d::<Rational>(6, d), a_d::<Rational>(6, d + 1));
        ad1.mul(&q.sub(&ad)).agrees(&ad.mul(&qinv))
    });
    out.push(clause("a-recurrence", rec, "a_{d+1}(q - a_d) = a_d/q for d = 2..6"));
    for shape in ["2,1", "2,2", "3,2"] {
        let alpha = Partition::parse(shape).expect("partition");
        let rho = hecke_infinitesimal::<Rational>(&alpha).expect("rho");
        let p = phat(&rho, &phi, &int(1)).expect("phat");
        let r = rep_build(&alpha, &semi).expect("rep_build");
        let diff = p.agrees(&r);
        out.push(clause(format!("phat=rep_build[{shape}]"), diff.is_none(), diff.unwrap_or_else(|| "matrixwise".into())));
    }
    out
}

fn criterion_7() -> Clauses {
    let mut out = Vec::new();
    let phi = phi0::<Rational>(5).expect("reference associator");
    let phi2 = act_grt(&phi0_sym(), &grt_exp(&psi_ab(&sym("a"), &SymCoef::zero(), 5)).expect("exp")).expect("action");
    for d in 2..=6i64 {
        let b = b_semi_scaled(&phi, d);
        let mut want = ScalarSeries::<Rational>::one(5);
        want.set_coeff(2, rat(1, 6));
        want.set_coeff(4, -(int(4) * int(d) * int(d) - int(1)) / int(120));
        out.push(clause(format!("b{d}(Phi0)"), b.agrees(&want) && b.known() >= 5, format!("{b}")));
        let b2 = drinfeld::hecke::b_semi(&phi2, d).expect("b_semi").scale_rat(&(int(d) / int(d + 1)));
        let want3 = sym("a").scale(&int(-16 * d));
        out.push(clause(format!("b{d}(Phi0.Psi_a0)-h3"), b2.coeff(3) == want3, format!("{}", b2.coeff(3))));
    }
    out
}

/// `(d/(d+1)) b_d^s(Φ)`.
fn b_semi_scaled(phi: &NCSeries<Rational>, d: i64) -> ScalarSeries<Rational> {
    drinfeld::hecke::b_semi(phi, d).expect("b_semi").scale_rat(&(int(d) / int(d + 1)))
}

fn criterion_8() -> Clauses {
    let a = sym("a");
    let rho = hecke_infinitesimal::<SymCoef>(&Partition::parse("2,1").expect("partition")).expect("rho");
    let phi = phi0_sym();
    let phi2 = act_grt(&phi, &grt_exp(&psi_ab(&a, &SymCoef::zero(), 5)).expect("exp")).expect("action");
    let (c1, c2) = (c_extract(&phi).expect("c"), c_extract(&phi2).expect("c"));
    let mut out = vec![clause("c(Phi2)=-a", c2 == a.neg_ref() && c1.is_zero(), format!("c(Phi0) = {c1}, c(Phi2) = {c2}"))];
    let (order, h3, predicted) = sigma2_difference(&rho, &phi, &phi2, &c1, &c2).expect("difference");
    out.push(clause("difference-order-3", order == Some(3), format!("{order:?}")));
    out.push(clause("h3-coefficient", h3 == predicted && !h3.is_zero(), format!("{h3}")));
    out
}

fn criterion_9() -> Clauses {
    let mut out = Vec::new();
    let two_two = Partition::parse("2,2").expect("partition");
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 1..=8 {
        for alpha in Partition::all(n) {
            count += 1;
            if resonance(&alpha) != (alpha.is_hook() || alpha == two_two) {
                bad.push(format!("[{alpha}]"));
            }
        }
    }
    out.push(clause("resonance-iff-hook-or-22", bad.is_empty(), if bad.is_empty() { format!("{count} shapes") } else { bad.join(" ") }));
    let v = diagonal_vectors(&Partition::parse("3,2").expect("partition"));
    let want = vec![
        ExponentVector::one(),
        ExponentVector::from_pairs(&[(3, 1)]),
        ExponentVector::from_pairs(&[(2, 1), (3, 1)]),
        ExponentVector::from_pairs(&[(2, 1), (3, 1)]),
        ExponentVector::from_pairs(&[(2, 2), (3, 1)]),
    ];
    let shown: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    out.push(clause("diagonal[3,2]", v == want, shown.join(" ")));
    let mut bad = Vec::new();
    for n in 1..=7 {
        for alpha in Partition::all(n) {
            if !hook_identity(&alpha).1 {
                bad.push(format!("[{alpha}]"));
            }
        }
    }
    out.push(clause("hook-identity", bad.is_empty(), bad.join(" ")));
    let mut bad = Vec::new();
    for n in 1..=8 {
        for r in 0..n {
            if !wedge_injective(n, r).expect("wedge") {
                bad.push(format!("n={n} r={r}"));
            }
        }
    }
    out.push(clause("wedge-injective", bad.is_empty(), bad.join(" ")));
    out
}

fn criterion_10() -> Clauses {
    let mut out = Vec::new();
    let kz = Kz::default();
    let phi = phi0::<Rational>(5).expect("reference associator");
    let is_even_zeta = |s: &str| s.strip_prefix("zeta").and_then(|k| k.parse::<usize>().ok()).is_some_and(|k| k % 2 == 0);
    for d in 2..=6i64 {
        let bp = kz.b_kz(d, 1).expect("b_kz+");
        let bm = kz.b_kz(d, -1).expect("b_kz-");
        let ratio = bp.div(&bm).expect("ratio");
        let star = kz.ratio_formula(d).expect("formula");
        out.push(clause(format!("formula(d={d})"), ratio == star && ratio.known() >= 7, format!("{ratio}")));
        let ht = kz.h_tilde(d).expect("h_tilde");
        let lr = ratio.log().expect("log");
        let lh = ht.log().expect("log");
        let clean = [&lr, &lh].iter().all(|s| !mentions(s, |n| n == GAMMA || is_even_zeta(n)));
        out.push(clause(format!("no-gamma-even-zeta(d={d})"), clean, format!("{lh}")));
        let be = kz.b_even_ref(d).expect("b_even_ref");
        let ok = bp.div(&be).expect("div") == ht && bm.div(&be).expect("div") == ht.inverse().expect("inverse");
        out.push(clause(format!("b_kz/b_even=h_tilde^(+-1)(d={d})"), ok, String::new()));
        let mut bad = Vec::new();
        for k in [3usize, 5, 7] {
            let want = h_form_to_hbar(k, &displayed_h_form(k, d).expect("displayed")).expect("conversion");
            if lh.coeff(k) != want {
                bad.push(format!("hbar^{k}: {} vs {want}", lh.coeff(k)));
            }
        }
        out.push(clause(format!("log-h_tilde(d={d})"), bad.is_empty(), bad.join("; ")));
        let sp = specialize_even(&be).expect("specialization");
        let bs = drinfeld::hecke::b_semi(&phi, d).expect("b_semi");
        let ok = (0..=4).all(|k| sp.coeff(k) == bs.coeff(k));
        out.push(clause(format!("specialize-even(d={d})"), ok, format!("{sp}")));
    }
    out
}

fn criterion_11() -> Clauses {
    let mut out = Vec::new();
    let w = WBasis::<Rational>::new(5);
    let want: [((u32, u32), i64); 6] = [((4, 1), -1), ((3, 2), -1), ((2, 3), -1), ((1, 4), -1), ((0, 0), 0), ((0, 0), 0)];
    for (k, (e, c)) in want.iter().enumerate() {
        let p = ihara_projection(w.get(k + 9)).expect("projection");
        let expected = if *c == 0 { BTreeMap::new() } else { BTreeMap::from([(*e, int(*c))]) };
        out.push(clause(format!("pi(w{})", k + 9), p.terms == expected, format!("{p}")));
    }
    let proj = ihara_projection(&g_ab()).expect("projection");
    let reference = ihara_reference(&sym("k3"), &sym("k5"));
    match match_parameters(&proj, &reference, "a", "b", 5) {
        Ok((a, b)) => {
            let ok = a == sym("k3").scale(&rat(1, 2)) && b == sym("k5").scale(&rat(1, 48));
            out.push(clause("a=k3/2,b=k5/48", ok, format!("a = {a}, b = {b}")));
        }
        Err(e) => out.push(clause("a=k3/2,b=k5/48", false, e.to_string())),
    }
    out
}

fn main() {
    let criteria: [(u32, fn() -> Clauses); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (k, run) in criteria {
        let t = Instant::now();
        let clauses = run();
        let failed: Vec<&CheckOutcome> = clauses.iter().filter(|c| !c.passed).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        let detail = if failed.is_empty() {
            format!("{} clauses", clauses.len())
        } else {
            failed.iter().map(|c| format!("{}: {}", c.id, c.witness)).collect::<Vec<_>>().join("; ")
        };
        println!("criterion {k:>2} {status} ({} ms) {detail}", t.elapsed().as_millis());
        let ids: Vec<&str> = failed.iter().map(|c| c.id.as_str()).collect();
        let expected: &[&str] = if k == 3 { &["log-degree-5-w14"] } else { &[] };
        if ids != expected {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
