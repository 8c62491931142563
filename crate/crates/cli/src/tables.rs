//! Table-producing commands: `chars`, `resonance`, `extend`, `kz-report`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use drinfeld::associator::{extend_associator, phi0};
use drinfeld::braid::{diagonal_conjugator, gt_act_on_rep, phat};
use drinfeld::characters::{chi_from_burau, chi_tableau, resonance};
use drinfeld::coeff::{int, CoeffText};
use drinfeld::grt::{grt_exp, iota, psi_ab};
use drinfeld::hecke::{hecke_infinitesimal, tableaux, Partition};
use drinfeld::kz::Kz;
use drinfeld::text::{parse_series_tagged, render_series_tagged};
use drinfeld::{Alphabet, NCSeries, Rational, SymCoef};
use serde::Serialize;

use crate::{CliError, Format};

fn emit<T: Serialize>(format: Format, value: &T, text: String) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(value).expect("table serializes") + "\n",
    }
}

#[derive(Serialize)]
struct CharRow {
    d: usize,
    series: String,
}

#[derive(Serialize)]
struct TableauRow {
    tableau: String,
    monomial: String,
    series: String,
}

#[derive(Serialize)]
struct CharsTable {
    suite: &'static str,
    partition: String,
    g: [String; 2],
    order: usize,
    characters: Vec<CharRow>,
    tableaux: Vec<TableauRow>,
    conjugator_agrees: bool,
}

/// Tableau monomials `χ_T` of `alpha` evaluated on `g = ι_{Φ0}(exp Ψ_{a,b})`,
/// checked against the diagonal conjugator of the representation itself.
/// Returns the rendered table and whether the two agree.
pub fn chars(alpha: &Partition, a: &SymCoef, b: &SymCoef, order: usize, format: Format) -> Result<(String, bool), CliError> {
    let n = alpha.n();
    if n < 2 {
        return Err(CliError::Usage("chars needs a partition of n >= 2".into()));
    }
    let phi = phi0::<SymCoef>(order)?;
    let g = iota(&phi, &grt_exp(&psi_ab(a, b, order))?)?;
    let dmax = (n - 1).max(2);
    let chis = chi_from_burau(&g, &phi, dmax)?;
    let r = phat(&hecke_infinitesimal::<SymCoef>(alpha)?, &phi, &int(1))?;
    let conj = diagonal_conjugator(&r, &gt_act_on_rep(&r, &g)?, None)?;
    let mut agrees = true;
    let mut rows = Vec::new();
    for (k, t) in tableaux(alpha).iter().enumerate() {
        let v = chi_tableau(t);
        let s = v.evaluate(&chis, order)?;
        agrees &= conj[k].div(&conj[0])?.agrees(&s);
        rows.push(TableauRow { tableau: t.to_string(), monomial: v.to_string(), series: s.to_string() });
    }
    let characters: Vec<CharRow> = chis.iter().map(|(d, s)| CharRow { d: *d, series: s.to_string() }).collect();
    let mut text = format!("partition {alpha} g=({a},{b}) order {order}\n");
    for c in &characters {
        text.push_str(&format!("chi{} = {}\n", c.d, c.series));
    }
    for row in &rows {
        text.push_str(&format!("{} | {} | {}\n", row.tableau, row.monomial, row.series));
    }
    text.push_str(&format!("conjugator agrees: {agrees}\n"));
    let table = CharsTable {
        suite: "chars",
        partition: alpha.to_string(),
        g: [a.to_string(), b.to_string()],
        order,
        characters,
        tableaux: rows,
        conjugator_agrees: agrees,
    };
    Ok((emit(format, &table, text), agrees))
}

#[derive(Serialize)]
struct ResonanceRow {
    partition: String,
    resonance_free: bool,
    hook: bool,
    diagonal: Vec<String>,
}

#[derive(Serialize)]
struct ResonanceTable {
    suite: &'static str,
    n: usize,
    rows: Vec<ResonanceRow>,
    hooks_and_two_two: bool,
}

/// All partitions of `1..=n`, whether their tableau monomials are pairwise
/// distinct, and whether that happens exactly on hooks and `[2,2]`.
pub fn resonance_scan(n: usize, format: Format) -> Result<(String, bool), CliError> {
    let two_two = Partition::parse("2,2")?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut characterized = true;
    for m in 1..=n {
        for alpha in Partition::all(m) {
            let free = resonance(&alpha);
            characterized &= free == (alpha.is_hook() || alpha == two_two);
            let diagonal: Vec<String> = tableaux(&alpha).iter().map(|t| chi_tableau(t).to_string()).collect();
            text.push_str(&format!("{alpha} {free} {}\n", diagonal.join(" ")));
            rows.push(ResonanceRow { partition: alpha.to_string(), resonance_free: free, hook: alpha.is_hook(), diagonal });
        }
    }
    text.push_str(&format!("resonance-free exactly on hooks and [2,2]: {characterized}\n"));
    let table = ResonanceTable { suite: "resonance", n, rows, hooks_and_two_two: characterized };
    Ok((emit(format, &table, text), characterized))
}

#[derive(Serialize)]
struct Step {
    degree: usize,
    correction: String,
    free_directions: usize,
}

#[derive(Serialize)]
struct ExtendTable {
    suite: &'static str,
    lambda: String,
    steps: Vec<Step>,
    series: String,
}

fn one_line(s: &NCSeries<SymCoef>) -> String {
    let text = drinfeld::text::render_series(s);
    let terms: Vec<&str> = text.lines().skip(1).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("; ").replace('\t', " ")
    }
}

/// Extends an associator degree by degree up to `degree`. The start is read
/// from `from` (series text, optional `lambda` tag) or is `1` known through degree 1.
pub fn extend(
    from: Option<&Path>,
    lambda: Option<Rational>,
    degree: usize,
    even: bool,
    format: Format,
) -> Result<String, CliError> {
    let (mut series, tags) = match from {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))?;
            parse_series_tagged::<SymCoef>(&text)?
        }
        None => (NCSeries::one(&Alphabet::xy(), degree).truncate(1), BTreeMap::new()),
    };
    let tagged = tags.get("lambda").map(|s| Rational::parse_text(s)).transpose()?;
    let lambda = match (tagged, lambda) {
        (Some(t), Some(l)) if t != l => {
            return Err(CliError::Usage(format!("--lambda {l} contradicts the input's lambda={t}")));
        }
        (t, l) => t.or(l).unwrap_or_else(|| int(1)),
    };
    series = series.with_maxdeg(degree);
    let alg = Arc::new(crate::cache::algebra(4, degree)?.0);
    let mut steps = Vec::new();
    while series.known_order() < degree {
        let e = extend_associator(&series, &lambda, &alg, even)?;
        steps.push(Step { degree: series.known_order() + 1, correction: one_line(&e.correction), free_directions: e.freedom.len() });
        series = e.series;
    }
    let rendered = render_series_tagged(&series, &BTreeMap::from([("lambda".to_string(), lambda.to_string())]));
    let mut text = String::new();
    for s in &steps {
        text.push_str(&format!("# degree {}: correction {} ({} free directions)\n", s.degree, s.correction, s.free_directions));
    }
    text.push_str(&rendered);
    let table = ExtendTable { suite: "extend", lambda: lambda.to_string(), steps, series: rendered.clone() };
    Ok(emit(format, &table, text))
}

#[derive(Serialize)]
struct KzRow {
    d: i64,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct KzTable {
    name: &'static str,
    rows: Vec<KzRow>,
}

#[derive(Serialize)]
struct KzReport {
    suite: &'static str,
    order: usize,
    tables: Vec<KzTable>,
}

/// Coefficients of `ħ^1..ħ^order` in `log H̃(d)` and in the log of
/// `b_d(Φ_KZ)/b_d(Φ̄_KZ)`, for `d = 2..=dmax`.
pub fn kz_report(order: usize, dmax: i64, format: Format) -> Result<String, CliError> {
    let kz = Kz::new(order, order.max(Kz::default().zeta_bound))?;
    let mut tables = Vec::new();
    for name in ["log-h-tilde", "log-ratio"] {
        let mut rows = Vec::new();
        for d in 2..=dmax {
            let log = if name == "log-h-tilde" {
                kz.h_tilde(d)?.log()?
            } else {
                kz.b_kz(d, 1)?.div(&kz.b_kz(d, -1)?)?.log()?
            };
            rows.push(KzRow { d, coefficients: (1..=order).map(|k| log.coeff(k).render()).collect() });
        }
        tables.push(KzTable { name, rows });
    }
    let mut text = String::new();
    for t in &tables {
        text.push_str(&format!("{} (hbar^1..hbar^{order})\n", t.name));
        for r in &t.rows {
            text.push_str(&format!("d={} {}\n", r.d, r.coefficients.join(" | ")));
        }
    }
    let report = KzReport { suite: "kz-report", order, tables };
    Ok(emit(format, &report, text))
}
