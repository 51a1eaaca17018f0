//! Text forms of delta-matroids, graphs and subsets. All labels are 1-based.
//!
//! Block form lists the ground-set size and then one feasible set per line,
//! `-` standing for the empty set:
//!
//! ```text
//! n 3
//! F -
//! F 1 2
//! F 1 3
//! ```
//!
//! Compact form is `n:<hex>`, the family bitset as a hexadecimal number whose
//! bit `m` marks the subset with mask `m`, zero-padded to `2^n / 4` digits
//! (at least two). The block above is `3:29`.
//!
//! Graph form has a `loops:` line followed by one `i j` line per edge.

use std::fmt::Write as _;

use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::gf2::SymMatrixGf2;
use crate::subset::{Family, Subset, MAX_ELEMENTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Block,
    Compact,
}

fn syntax(line: usize, reason: impl Into<String>) -> Error {
    Error::Syntax { line, reason: reason.into() }
}

/// `n:<hex>` for any family.
pub fn format_compact(family: &Family) -> String {
    let n = family.n();
    let mut out = format!("{n}:");
    if n <= 6 {
        let digits = ((1usize << n) / 4).max(2);
        write!(out, "{:0digits$x}", family.words()[0]).expect("writing to a String");
    } else {
        for w in family.words().iter().rev() {
            write!(out, "{w:016x}").expect("writing to a String");
        }
    }
    out
}

/// Parses `n:<hex>`. Any number of leading zeros is accepted; bits at or
/// above `2^n` are rejected.
pub fn parse_compact(text: &str) -> std::result::Result<Family, String> {
    let (n, hex) = text.trim().split_once(':').ok_or("expected `n:<hex>`")?;
    let n: usize = n.parse().map_err(|_| format!("invalid ground-set size {n:?}"))?;
    if n > MAX_ELEMENTS {
        return Err(format!("ground set of size {n} exceeds {MAX_ELEMENTS}"));
    }
    if hex.is_empty() || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(format!("invalid hex digits {hex:?}"));
    }
    let mut family = Family::empty(n).map_err(|e| e.to_string())?;
    let positions = 1usize << n;
    for (i, c) in hex.bytes().rev().enumerate() {
        let nibble = (c as char).to_digit(16).expect("checked hex digit");
        for b in 0..4 {
            if nibble >> b & 1 == 1 {
                let m = i * 4 + b;
                if m >= positions {
                    return Err(format!("family bit {m} is out of range for n={n}"));
                }
                family.insert(Subset::from_bits(m as u32));
            }
        }
    }
    Ok(family)
}

/// Parses either text form and validates the result.
pub fn parse_dm(text: &str) -> Result<DeltaMatroid> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim())).filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    if first.contains(':') {
        if let Some((line, _)) = lines.next() {
            return Err(syntax(line, "unexpected content after compact code"));
        }
        let family = parse_compact(first).map_err(|r| syntax(first_no, r))?;
        return DeltaMatroid::new(family);
    }
    let n = match first.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", k] => k.parse::<usize>().map_err(|_| syntax(first_no, format!("invalid ground-set size {k:?}")))?,
        _ => return Err(syntax(first_no, "expected `n <size>` or `n:<hex>`")),
    };
    let mut family = Family::empty(n).map_err(|e| syntax(first_no, e.to_string()))?;
    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        if tokens.next() != Some("F") {
            return Err(syntax(line, "expected `F <labels>`"));
        }
        let labels: Vec<&str> = tokens.collect();
        let set = match labels[..] {
            ["-"] => Subset::EMPTY,
            [] => return Err(syntax(line, "write `F -` for the empty set")),
            _ => {
                let mut s = Subset::EMPTY;
                for label in labels {
                    let e: usize = label.parse().map_err(|_| syntax(line, format!("invalid label {label:?}")))?;
                    if e == 0 || e > n {
                        return Err(syntax(line, format!("label {e} outside 1..={n}")));
                    }
                    if s.contains(e - 1) {
                        return Err(syntax(line, format!("label {e} repeated")));
                    }
                    s = s.with(e - 1);
                }
                s
            }
        };
        if family.contains(set) {
            return Err(syntax(line, format!("duplicate feasible set {set}")));
        }
        family.insert(set);
    }
    DeltaMatroid::new(family)
}

pub fn format_dm(d: &DeltaMatroid, style: Style) -> String {
    match style {
        Style::Compact => format_compact(d.family()) + "\n",
        Style::Block => {
            let mut out = format!("n {}\n", d.n());
            for f in d.feasible_sets() {
                out.push('F');
                if f.is_empty() {
                    out.push_str(" -");
                }
                for e in f.elements() {
                    write!(out, " {}", e + 1).expect("writing to a String");
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn format_graph(a: &SymMatrixGf2) -> String {
    let mut out = String::from("loops:");
    for v in a.loops().elements() {
        write!(out, " {}", v + 1).expect("writing to a String");
    }
    out.push('\n');
    for (i, j) in a.edges() {
        writeln!(out, "{} {}", i + 1, j + 1).expect("writing to a String");
    }
    out
}

/// Parses graph form on `n` vertices.
pub fn parse_graph(n: usize, text: &str) -> Result<SymMatrixGf2> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let label = |line: usize, s: &str| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            _ => Err(syntax(line, format!("invalid vertex {s:?}"))),
        }
    };
    let (line, first) = lines.next().ok_or_else(|| syntax(1, "missing `loops:` line"))?;
    let rest = first.strip_prefix("loops:").ok_or_else(|| syntax(line, "expected `loops:`"))?;
    let loops = rest.split_whitespace().map(|s| label(line, s)).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (line, content) in lines {
        match content.split_whitespace().collect::<Vec<_>>()[..] {
            [a, b] => {
                let (a, b) = (label(line, a)?, label(line, b)?);
                if a == b {
                    return Err(syntax(line, "loops belong on the `loops:` line"));
                }
                edges.push((a, b));
            }
            _ => return Err(syntax(line, "expected `i j`")),
        }
    }
    SymMatrixGf2::from_graph(n, &loops, &edges)
}

/// A comma-separated list of 1-based labels; `0` alone is the empty set.
pub fn parse_set_list(text: &str, n: usize) -> Result<Subset> {
    let text = text.trim();
    if text == "0" {
        return Ok(Subset::EMPTY);
    }
    let mut s = Subset::EMPTY;
    for part in text.split(',') {
        let e: usize = part.trim().parse().map_err(|_| syntax(1, format!("invalid label {part:?}")))?;
        if e == 0 || e > n {
            return Err(syntax(1, format!("label {e} outside 1..={n}")));
        }
        s = s.with(e - 1);
    }
    Ok(s)
}
