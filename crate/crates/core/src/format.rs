//! Plain-text algebra files.
//!
//! ```text
//! mvp 3
//! neg 2 1 0
//! oplus
//! 0 1 2
//! 1 2 2
//! 2 2 2
//! prod
//! 0 0 0
//! 0 0 0
//! 0 0 0
//! ```
//!
//! Tokens are whitespace separated and line breaks carry no meaning; `#`
//! starts a comment running to the end of the line.

use std::fmt::Write as _;

use crate::algebra::FiniteAlgebra;
use crate::{Error, Result};

/// Largest carrier accepted from a file.
pub const MAX_SIZE: usize = 4096;

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut last_line = 1;
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for tok in body.split_whitespace() {
                items.push((i + 1, tok));
            }
            last_line = i + 1;
        }
        Self {
            items,
            pos: 0,
            last_line,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let t = self.items.get(self.pos).copied().ok_or_else(|| Error::Parse {
            line: self.last_line,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let (line, tok) = self.next(&format!("`{kw}`"))?;
        if tok != kw {
            return Err(Error::Parse {
                line,
                message: format!("expected `{kw}`, found `{tok}`"),
            });
        }
        Ok(())
    }

    fn number(&mut self, what: &str, bound: usize) -> Result<usize> {
        let (line, tok) = self.next(what)?;
        let v: usize = tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("expected {what}, found `{tok}`"),
        })?;
        if v >= bound {
            return Err(Error::Parse {
                line,
                message: format!("{what} {v} is outside 0..{bound}"),
            });
        }
        Ok(v)
    }

    fn table(&mut self, what: &str, len: usize, n: usize) -> Result<Vec<usize>> {
        (0..len).map(|_| self.number(what, n)).collect()
    }
}

pub fn parse(text: &str) -> Result<FiniteAlgebra> {
    let mut t = Tokens::new(text);
    t.keyword("mvp")?;
    let n = t.number("carrier size", MAX_SIZE + 1)?;
    if n == 0 {
        return Err(Error::Parse {
            line: t.items[t.pos - 1].0,
            message: "carrier size must be positive".into(),
        });
    }
    t.keyword("neg")?;
    let neg = t.table("neg entry", n, n)?;
    t.keyword("oplus")?;
    let oplus = t.table("oplus entry", n * n, n)?;
    t.keyword("prod")?;
    let prod = t.table("prod entry", n * n, n)?;
    if let Some(&(line, tok)) = t.items.get(t.pos) {
        return Err(Error::Parse {
            line,
            message: format!("trailing token `{tok}`"),
        });
    }
    FiniteAlgebra::new(neg, oplus, prod)
}

pub fn write(alg: &FiniteAlgebra) -> String {
    let n = alg.size();
    let mut out = String::new();
    let row = |out: &mut String, vals: &[usize]| {
        let line: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    };
    writeln!(out, "mvp {n}").unwrap();
    out.push_str("neg ");
    row(&mut out, alg.neg_table());
    out.push_str("oplus\n");
    for r in alg.oplus_table().chunks(n) {
        row(&mut out, r);
    }
    out.push_str("prod\n");
    for r in alg.mul_table().chunks(n) {
        row(&mut out, r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_catalog() {
        for e in catalog::entries() {
            let a = e.build();
            assert_eq!(parse(&write(&a)).unwrap(), a, "{}", e.name);
        }
    }

    #[test]
    fn doc_example_parses() {
        let text = "mvp 3 # chain\nneg 2 1 0\noplus 0 1 2 1 2 2 2 2 2\nprod\n0 0 0\n0 0 0 0 0 0\n";
        assert_eq!(parse(text).unwrap(), catalog::luk(3));
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(parse(""), Err(Error::Parse { line: 1, .. })));
        let e = parse("mvp 2\nneg 1 0\noplus 0 1\n1 7\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 4, message: "oplus entry 7 is outside 0..2".into() });
        let e = parse("mvp 2\nneg 1 0\nplus").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse("mvp 1 neg 0 oplus 0 prod 0 extra").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(matches!(parse("mvp 0"), Err(Error::Parse { .. })));
    }
}
