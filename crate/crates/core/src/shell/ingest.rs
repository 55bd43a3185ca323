//! Tab-separated eigenform data, one datum per line:
//!
//! ```text
//! # N  k   p  field_minpoly  a_p  eps_p  [hints]
//! 1    12  2  0,1            -24  1
//! 1    4   5  -5,0,1         0,1  1      2:1/2
//! ```
//!
//! Polynomials are comma-separated rational coefficients, lowest degree
//! first; `a_p` and `eps_p` are residues modulo `field_minpoly`. The
//! optional hints column lists `degree:valuation` pairs separated by `;`,
//! one per factor of `Q_p (x) K`, with `inf` for a vanishing `a_p`.
//! Blank lines and lines starting with `#` are skipped.

use crate::error::{Error, Result};
use crate::exactlin::{RatPoly, Rational};
use crate::phimod::FactorValuation;
use crate::semisimple::NewformDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestRecord {
    /// 1-based source line (0 for records built in code).
    pub line: usize,
    pub datum: NewformDatum,
    pub hints: Option<Vec<FactorValuation>>,
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_poly(line: usize, s: &str) -> Result<RatPoly> {
    let coeffs = s
        .split(',')
        .map(|c| c.trim().parse::<Rational>().map_err(|e| bad(line, format!("coefficient `{c}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RatPoly::new(coeffs))
}

fn parse_hints(line: usize, s: &str) -> Result<Vec<FactorValuation>> {
    s.split(';')
        .map(|h| {
            let (d, v) = h.split_once(':').ok_or_else(|| bad(line, format!("hint `{h}` is not degree:valuation")))?;
            let degree = d.trim().parse::<usize>().map_err(|e| bad(line, format!("hint degree `{d}`: {e}")))?;
            let v_ap = match v.trim() {
                "inf" => None,
                v => Some(v.parse::<Rational>().map_err(|e| bad(line, format!("hint valuation `{v}`: {e}")))?),
            };
            Ok(FactorValuation { degree, v_ap })
        })
        .collect()
}

/// Parse a whole file; any bad line rejects the file.
pub fn parse_ingest(text: &str) -> Result<Vec<IngestRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = l.split('\t').map(str::trim).filter(|c| !c.is_empty()).collect();
        if !(6..=7).contains(&cols.len()) {
            return Err(bad(line, format!("expected 6 or 7 tab-separated columns, found {}", cols.len())));
        }
        let num = |s: &str, what: &str| s.parse::<u64>().map_err(|e| bad(line, format!("{what} `{s}`: {e}")));
        let (n, k, p) = (num(cols[0], "N")?, num(cols[1], "k")?, num(cols[2], "p")?);
        let datum = NewformDatum::new(
            n,
            k,
            p,
            parse_poly(line, cols[3])?,
            parse_poly(line, cols[4])?,
            parse_poly(line, cols[5])?,
        )
        .map_err(|e| bad(line, e.to_string()))?;
        let hints = cols.get(6).map(|h| parse_hints(line, h)).transpose()?;
        out.push(IngestRecord { line, datum, hints });
    }
    Ok(out)
}

fn poly_field(p: &RatPoly) -> String {
    if p.is_zero() {
        "0".into()
    } else {
        p.coeff_string()
    }
}

/// Inverse of [`parse_ingest`] on normalized records.
pub fn serialize_ingest(records: &[IngestRecord]) -> String {
    let mut out = String::from("# N\tk\tp\tfield_minpoly\ta_p\teps_p\thints\n");
    for r in records {
        let d = &r.datum;
        out += &format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            d.level,
            d.weight,
            d.prime,
            poly_field(&d.field_minpoly),
            poly_field(&d.a_p),
            poly_field(&d.eps_p)
        );
        if let Some(h) = &r.hints {
            let parts: Vec<String> = h
                .iter()
                .map(|f| format!("{}:{}", f.degree, f.v_ap.as_ref().map_or_else(|| "inf".to_string(), ToString::to_string)))
                .collect();
            out += &format!("\t{}", parts.join(";"));
        }
        out.push('\n');
    }
    out
}
