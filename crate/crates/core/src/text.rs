//! Line-oriented text form of series.
//!
//! ```text
//! alphabet=x,y maxdeg=5 known=5 ring=Q[a,b]
//! 1	1
//! xy	1/24
//! ```
//!
//! The header is followed by one `word<TAB>coefficient` line per nonzero term
//! in (degree, lexicographic) order. The empty word is written `1`.
//! Associator files add `lambda=<coefficient>` and GT/GRT element files add
//! `kind=<gt|grt>` to the header; these are the only tags accepted.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::coeff::CoeffText;
use crate::error::{Error, Result};
use crate::series::{Alphabet, NCSeries};

fn ring_symbols<C: CoeffText>(s: &NCSeries<C>) -> Vec<Arc<str>> {
    let mut set = BTreeSet::new();
    for (_, c) in s.terms() {
        set.extend(c.symbols());
    }
    set.into_iter().collect()
}

/// Header tags beyond the series shape.
pub const TAGS: [&str; 2] = ["lambda", "kind"];

pub fn render_series<C: CoeffText>(s: &NCSeries<C>) -> String {
    render_series_tagged(s, &BTreeMap::new())
}

/// Tag values must not contain whitespace.
pub fn render_series_tagged<C: CoeffText>(s: &NCSeries<C>, tags: &BTreeMap<String, String>) -> String {
    let syms = ring_symbols(s);
    let ring = if syms.is_empty() {
        "Q".to_string()
    } else {
        let names: Vec<&str> = syms.iter().map(|s| &**s).collect();
        format!("Q[{}]", names.join(","))
    };
    let mut out = format!(
        "alphabet={} maxdeg={} known={} ring={}\n",
        s.alphabet().names().join(","),
        s.maxdeg(),
        s.known_order(),
        ring
    );
    for (k, v) in tags {
        out.insert_str(out.len() - 1, &format!(" {k}={v}"));
    }
    for (w, c) in s.terms() {
        out.push_str(&s.alphabet().render_word(*w));
        out.push('\t');
        out.push_str(&c.render());
        out.push('\n');
    }
    out
}

pub fn parse_series<C: CoeffText>(text: &str) -> Result<NCSeries<C>> {
    parse_series_tagged(text).map(|(s, _)| s)
}

pub fn parse_series_tagged<C: CoeffText>(text: &str) -> Result<(NCSeries<C>, BTreeMap<String, String>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut alphabet = None;
    let mut maxdeg = None;
    let mut known = None;
    let mut ring: Option<Vec<String>> = None;
    let mut tags = BTreeMap::new();
    for field in header.split_whitespace() {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field `{field}`")))?;
        match k {
            "alphabet" => {
                let names: Vec<&str> = v.split(',').collect();
                alphabet = Some(Alphabet::new(&names)?);
            }
            "maxdeg" => maxdeg = Some(v.parse::<usize>().map_err(|_| Error::Parse(format!("bad maxdeg `{v}`")))?),
            "known" => known = Some(v.parse::<usize>().map_err(|_| Error::Parse(format!("bad known `{v}`")))?),
            "ring" => {
                if v == "Q" {
                    ring = Some(Vec::new());
                } else if let Some(inner) = v.strip_prefix("Q[").and_then(|r| r.strip_suffix(']')) {
                    ring = Some(inner.split(',').map(str::to_string).collect());
                } else {
                    return Err(Error::Parse(format!("bad ring `{v}`")));
                }
            }
            _ if TAGS.contains(&k) => {
                if tags.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(Error::Parse(format!("repeated header field `{k}`")));
                }
            }
            _ => return Err(Error::Parse(format!("unknown header field `{k}`"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::Parse("missing alphabet".into()))?;
    let maxdeg = maxdeg.ok_or_else(|| Error::Parse("missing maxdeg".into()))?;
    let ring = ring.ok_or_else(|| Error::Parse("missing ring".into()))?;
    if maxdeg > crate::series::Word::MAX_LEN {
        return Err(Error::DegreeBound(format!("maxdeg {maxdeg}")));
    }
    let known = known.unwrap_or(maxdeg);
    if known > maxdeg {
        return Err(Error::Parse(format!("known {known} exceeds maxdeg {maxdeg}")));
    }
    let mut s = NCSeries::zero(&alphabet, maxdeg).truncate(known);
    for line in lines {
        let (w, c) = line
            .split_once('\t')
            .ok_or_else(|| Error::Parse(format!("term line without tab: `{line}`")))?;
        let w = alphabet.parse_word(w)?;
        if w.len() > known {
            return Err(Error::Parse(format!("term of degree {} beyond known order {known}", w.len())));
        }
        let c = C::parse_text(c)?;
        for sym in c.symbols() {
            if !ring.iter().any(|r| **r == *sym) {
                return Err(Error::Parse(format!("symbol `{sym}` not declared in ring")));
            }
        }
        s.add_term(w, &c);
    }
    Ok((s, tags))
}
