//! Line-oriented text format for rational functions.
//!
//! ```text
//! RATFUNC v1 variant=GKW kind=PSI idx=1      (optional header)
//! NUM
//! <coefficient> <degX> <degY>                 (integer or p/q)
//! DEN
//! <integer> <degY>
//! ```
//!
//! Terms are written in descending exponent order; the denominator is the
//! canonical primitive polynomial.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rug::{Integer, Rational};

use super::{BiPoly, RatFunc2};
use crate::error::{Error, Result};

/// Metadata line of a cache file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub variant: String,
    pub kind: String,
    pub idx: String,
}

impl Header {
    pub fn render(&self) -> String {
        format!(
            "RATFUNC v1 variant={} kind={} idx={}",
            self.variant, self.kind, self.idx
        )
    }
}

/// Body text (`NUM`/`DEN` sections) for `f`.
pub fn serialize(f: &RatFunc2) -> String {
    let mut out = String::from("NUM\n");
    for ((dx, dy), c) in f.num().terms() {
        let _ = writeln!(out, "{c} {dx} {dy}");
    }
    out.push_str("DEN\n");
    for (dy, c) in f.den().coeffs().iter().enumerate().rev() {
        if !c.is_zero() {
            let _ = writeln!(out, "{c} {dy}");
        }
    }
    out
}

/// Header line followed by the body.
pub fn serialize_with_header(header: &Header, f: &RatFunc2) -> String {
    format!("{}\n{}", header.render(), serialize(f))
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into fields with their 1-based starting columns.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == ' ' || ch == '\t' {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_header(line: &str, lineno: usize) -> Result<Header> {
    let f = fields(line);
    if f.len() != 5 || f[0].1 != "RATFUNC" {
        return Err(err(
            lineno,
            1,
            "expected `RATFUNC v1 variant=.. kind=.. idx=..`",
        ));
    }
    if f[1].1 != "v1" {
        return Err(err(
            lineno,
            f[1].0,
            format!("unsupported version {}", f[1].1),
        ));
    }
    let get = |k: usize, key: &str| -> Result<String> {
        let (col, text) = f[k];
        text.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .map(str::to_owned)
            .ok_or_else(|| err(lineno, col, format!("expected `{key}=`")))
    };
    let variant = get(2, "variant")?;
    if variant != "GKW" && variant != "MR" {
        return Err(err(lineno, f[2].0, format!("unknown variant {variant}")));
    }
    let kind = get(3, "kind")?;
    if !matches!(kind.as_str(), "PSI" | "A" | "LAMBDA" | "B") {
        return Err(err(lineno, f[3].0, format!("unknown kind {kind}")));
    }
    let idx = get(4, "idx")?;
    Ok(Header { variant, kind, idx })
}

fn parse_u32(text: &str, line: usize, col: usize) -> Result<u32> {
    text.parse::<u32>().map_err(|_| {
        err(
            line,
            col,
            format!("expected a non-negative exponent, got {text:?}"),
        )
    })
}

fn parse_coeff(text: &str, line: usize, col: usize) -> Result<Rational> {
    Rational::parse(text).map(Rational::from).map_err(|_| {
        err(
            line,
            col,
            format!("expected an integer or fraction, got {text:?}"),
        )
    })
}

/// Parses a body with optional header; the result is canonicalized.
pub fn parse(text: &str) -> Result<(Option<Header>, RatFunc2)> {
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    let mut header = None;
    if lines.first().is_some_and(|l| l.starts_with("RATFUNC")) {
        header = Some(parse_header(lines[0], 1)?);
        i = 1;
    }
    if lines.get(i).map(|l| l.trim_end()) != Some("NUM") {
        return Err(err(i + 1, 1, "expected `NUM`"));
    }
    i += 1;
    let mut terms = Vec::new();
    let mut seen = BTreeSet::new();
    while i < lines.len() && lines[i].trim_end() != "DEN" {
        let lineno = i + 1;
        let f = fields(lines[i]);
        if f.len() != 3 {
            return Err(err(lineno, 1, "expected `<coefficient> <degX> <degY>`"));
        }
        let c = parse_coeff(f[0].1, lineno, f[0].0)?;
        let dx = parse_u32(f[1].1, lineno, f[1].0)?;
        let dy = parse_u32(f[2].1, lineno, f[2].0)?;
        if !seen.insert((dx, dy)) {
            return Err(err(lineno, f[1].0, format!("duplicate term X^{dx} Y^{dy}")));
        }
        terms.push(((dx, dy), c));
        i += 1;
    }
    if i >= lines.len() {
        return Err(err(i + 1, 1, "expected `DEN`"));
    }
    let den_line = i + 1;
    i += 1;
    let mut den: Vec<Integer> = Vec::new();
    let mut seen = BTreeSet::new();
    while i < lines.len() {
        let lineno = i + 1;
        if lines[i].trim().is_empty() {
            return Err(err(lineno, 1, "unexpected blank line"));
        }
        let f = fields(lines[i]);
        if f.len() != 2 {
            return Err(err(lineno, 1, "expected `<integer> <degY>`"));
        }
        let c = Integer::parse(f[0].1).map(Integer::from).map_err(|_| {
            err(
                lineno,
                f[0].0,
                format!("expected an integer, got {:?}", f[0].1),
            )
        })?;
        let dy = parse_u32(f[1].1, lineno, f[1].0)? as usize;
        if !seen.insert(dy) {
            return Err(err(lineno, f[1].0, format!("duplicate term Y^{dy}")));
        }
        if den.len() <= dy {
            den.resize(dy + 1, Integer::ZERO);
        }
        den[dy] = c;
        i += 1;
    }
    if den.iter().all(|c| c.is_zero()) {
        return Err(err(den_line, 1, "denominator is the zero polynomial"));
    }
    let f = RatFunc2::from_parts(BiPoly::from_terms(terms), &den)
        .map_err(|e| err(den_line, 1, e.to_string()))?;
    Ok((header, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn serialize_two_y_minus_two() {
        let f: RatFunc2 = BiPoly::from_terms([((0, 1), q(2, 1)), ((0, 0), q(-2, 1))]).into();
        assert_eq!(serialize(&f), "NUM\n2 0 1\n-2 0 0\nDEN\n1 0\n");
    }

    #[test]
    fn header_round_trip() {
        let h = Header {
            variant: "MR".into(),
            kind: "LAMBDA".into(),
            idx: "1".into(),
        };
        let f = RatFunc2::from_parts(
            BiPoly::from_terms([((1, 2), q(1, 3)), ((0, 0), q(2, 1))]),
            &[Integer::from(-2), Integer::from(3)],
        )
        .unwrap();
        let text = serialize_with_header(&h, &f);
        let (h2, g) = parse(&text).unwrap();
        assert_eq!(h2, Some(h));
        assert_eq!(g, f);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("NUM\n1 0 0\nDEN\n0 0\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("NUM\n1 x 0\nDEN\n1 0\n") {
            Err(Error::Parse {
                line: 2, column: 3, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("NUM\n1 0 0\n").is_err());
        assert!(parse("NUM\n1 0 0\n2 0 0\nDEN\n1 0\n").is_err());
        assert!(parse("RATFUNC v2 variant=GKW kind=PSI idx=0\nNUM\nDEN\n1 0\n").is_err());
    }

    #[test]
    fn parse_canonicalizes() {
        // (2Y^2 - 2Y) / (2Y) = Y - 1
        let (_, f) = parse("NUM\n2 0 2\n-2 0 1\nDEN\n2 1\n").unwrap();
        assert_eq!(serialize(&f), "NUM\n1 0 1\n-1 0 0\nDEN\n1 0\n");
    }
}
