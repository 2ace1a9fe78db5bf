//! Tables of a quantity over all sorted multipartitions of `n`.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::json;

use super::{MasterContext, Quantity};
use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::partition::{sorted_multipartitions, MultiPartition, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Tex,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "tex" => Ok(Format::Tex),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub mu: MultiPartition,
    pub value: Poly,
}

/// Nonzero values of `q` on sorted multipartitions of `n`, in table order.
pub fn table_rows(ctx: &MasterContext, q: &dyn Quantity, n: usize) -> Result<Vec<TableRow>> {
    let keys = sorted_multipartitions(n, ctx.k());
    let values: Vec<Poly> = keys.par_iter().map(|mu| q.eval(ctx, mu)).collect::<Result<_>>()?;
    Ok(keys
        .into_iter()
        .zip(values)
        .filter(|(_, v)| !v.is_zero())
        .map(|(mu, value)| TableRow { mu, value })
        .collect())
}

fn exponent_form(p: &Partition, sep: &str) -> String {
    p.multiplicities()
        .into_iter()
        .map(|(x, m)| if m == 1 { x.to_string() } else { format!("{x}^{m}") })
        .collect::<Vec<_>>()
        .join(sep)
}

/// Label used in TeX tables: `(3, 2)` when all parts are distinct and
/// there are at least two, otherwise the compact `(21^2)`, `(1^4)`, `(5)`.
pub fn tex_label(p: &Partition) -> String {
    let distinct = p.multiplicities().iter().all(|&(_, m)| m == 1);
    if distinct && p.len() >= 2 {
        let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(", "))
    } else {
        format!("({})", exponent_form(p, ""))
    }
}

/// Inverse of [`tex_label`]; also accepts `(2, 2)`. Compact labels are read
/// one digit per part.
pub fn parse_tex_label(text: &str) -> Result<Partition> {
    let bad = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| bad(0, "expected parentheses"))?;
    if inner.contains(',') {
        let parts = inner
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| bad(1, "expected a part")))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Partition::new(parts));
    }
    let bytes = inner.as_bytes();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if !c.is_ascii_digit() {
            return Err(bad(i + 1, "expected a digit"));
        }
        let part = (c - b'0') as usize;
        i += 1;
        let mut mult = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let start = i;
            if i < bytes.len() && bytes[i] == b'{' {
                let end = inner[i..].find('}').ok_or_else(|| bad(i + 1, "unclosed brace"))? + i;
                mult = inner[i + 1..end].parse().map_err(|_| bad(i + 1, "bad exponent"))?;
                i = end + 1;
            } else if i < bytes.len() && bytes[i].is_ascii_digit() {
                mult = (bytes[i] - b'0') as usize;
                i += 1;
            } else {
                return Err(bad(start + 1, "expected an exponent"));
            }
        }
        if part == 0 {
            return Err(bad(i, "zero part"));
        }
        parts.extend(std::iter::repeat_n(part, mult));
    }
    Ok(Partition::new(parts))
}

fn text_label(p: &Partition) -> String {
    format!("({})", exponent_form(p, ","))
}

/// Renders rows in one of the output formats.
pub fn render_table(rows: &[TableRow], k: usize, q: &dyn Quantity, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for row in rows {
                let labels: Vec<String> = row.mu.components().iter().map(text_label).collect();
                writeln!(out, "{} → {}", labels.join(" "), row.value).unwrap();
            }
        }
        Format::Csv => {
            let mut header: Vec<String> = (1..=k).map(|i| format!("mu{i}")).collect();
            header.push("polynomial".into());
            writeln!(out, "{}", header.join(",")).unwrap();
            for row in rows {
                let mut cells: Vec<String> = row.mu.components().iter().map(|p| p.to_string()).collect();
                cells.push(row.value.to_string());
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mu: Vec<String> = row.mu.components().iter().map(|p| p.to_string()).collect();
                    json!({"mu": mu, "poly": row.value.to_json(), "text": row.value.to_string()})
                })
                .collect();
            let doc = json!({"quantity": q.name(), "k": k, "rows": items});
            out = serde_json::to_string_pretty(&doc).expect("serializable");
            out.push('\n');
        }
        Format::Tex => {
            writeln!(out, r"\begin{{tabular}}{{{}|L}}", "L".repeat(k)).unwrap();
            let heads: Vec<String> = (1..=k).map(|i| format!(r"\mu^{i}")).collect();
            writeln!(out, r"{} & {}\\", heads.join(" & "), q.tex_symbol()).unwrap();
            writeln!(out, r"\hline").unwrap();
            for row in rows {
                let labels: Vec<String> = row.mu.components().iter().map(tex_label).collect();
                writeln!(out, r"{} & {} \\", labels.join(" & "), row.value.to_tex()).unwrap();
            }
            writeln!(out, r"\end{{tabular}}").unwrap();
        }
    }
    out
}
