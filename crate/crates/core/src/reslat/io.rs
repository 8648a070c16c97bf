//! Plain-text lattice files.
//!
//! ```text
//! # Łukasiewicz 3-chain
//! size 3
//! unit 2
//! meet
//! 0 0 0
//! 0 1 1
//! 0 1 2
//! join
//! ...
//! ```
//!
//! followed likewise by `mul`, `ldiv` and `rdiv`, each an `n x n` row-major
//! matrix of 0-based indices. `#` starts a comment; blank lines are ignored.
//! [`serialize`] writes exactly this layout without comments, and
//! `serialize(parse(s)) == s` for every file it produced.

use super::{FiniteResLat, Op};
use crate::error::ParseError;

pub fn serialize(l: &FiniteResLat) -> String {
    let n = l.size();
    let mut out = format!("size {n}\nunit {}\n", l.unit());
    for op in Op::ALL {
        out.push_str(op.name());
        out.push('\n');
        for row in l.table(op).chunks(n) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

/// A whitespace-separated token with its 1-based line and column.
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Non-empty, comment-stripped lines, each split into tokens.
fn tokenize(src: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    toks.push(Token {
                        text: &body[s..j],
                        line: i + 1,
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !toks.is_empty() {
            lines.push(toks);
        }
    }
    lines
}

fn number(tok: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| ParseError::new(tok.line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

fn keyed(line: Option<&Vec<Token<'_>>>, key: &str, last: (usize, usize)) -> Result<usize, ParseError> {
    let toks = line.ok_or_else(|| ParseError::new(last.0, last.1, format!("missing `{key}` line")))?;
    if toks[0].text != key {
        return Err(ParseError::new(
            toks[0].line,
            toks[0].column,
            format!("expected `{key}`, found `{}`", toks[0].text),
        ));
    }
    match toks.as_slice() {
        [_, v] => number(v, "a non-negative integer"),
        [k] => Err(ParseError::new(
            k.line,
            k.column + key.len(),
            format!("`{key}` needs a value"),
        )),
        [_, _, extra, ..] => Err(ParseError::new(extra.line, extra.column, "unexpected token")),
        [] => unreachable!(),
    }
}

pub fn parse(src: &str) -> Result<FiniteResLat, ParseError> {
    let lines = tokenize(src);
    let end = (src.lines().count().max(1), 1);
    let mut it = lines.iter();
    let size = keyed(it.next(), "size", end)?;
    if size == 0 {
        return Err(ParseError::new(
            lines[0][1].line,
            lines[0][1].column,
            "size must be positive",
        ));
    }
    let unit_line = it.next();
    let unit = keyed(unit_line, "unit", end)?;
    if unit >= size {
        let t = &unit_line.unwrap()[1];
        return Err(ParseError::new(
            t.line,
            t.column,
            format!("unit {unit} out of range for size {size}"),
        ));
    }
    let mut tables: [Vec<usize>; 5] = Default::default();
    for (table, op) in tables.iter_mut().zip(Op::ALL) {
        let head = it
            .next()
            .ok_or_else(|| ParseError::new(end.0, end.1, format!("missing `{}` matrix", op.name())))?;
        if head.len() != 1 || head[0].text != op.name() {
            return Err(ParseError::new(
                head[0].line,
                head[0].column,
                format!("expected matrix label `{}`", op.name()),
            ));
        }
        for r in 0..size {
            let row = it.next().ok_or_else(|| {
                ParseError::new(
                    end.0,
                    end.1,
                    format!("`{}` matrix has {r} rows, expected {size}", op.name()),
                )
            })?;
            if row.len() != size {
                let t = row.get(size).unwrap_or(&row[row.len() - 1]);
                return Err(ParseError::new(
                    t.line,
                    t.column,
                    format!("row has {} entries, expected {size}", row.len()),
                ));
            }
            for tok in row {
                let v = number(tok, "a table entry")?;
                if v >= size {
                    return Err(ParseError::new(
                        tok.line,
                        tok.column,
                        format!("entry {v} out of range for size {size}"),
                    ));
                }
                table.push(v);
            }
        }
    }
    if let Some(extra) = it.next() {
        return Err(ParseError::new(extra[0].line, extra[0].column, "trailing content"));
    }
    let [meet, join, mul, ldiv, rdiv] = tables;
    FiniteResLat::from_tables(size, unit, meet, join, mul, ldiv, rdiv).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslat::{boolean_square, first_non_commutative, lukasiewicz_chain, trivial};

    #[test]
    fn round_trip() {
        for l in [
            trivial(),
            lukasiewicz_chain(3),
            boolean_square(),
            first_non_commutative(),
        ] {
            let s = serialize(&l);
            let back = parse(&s).unwrap();
            assert_eq!(back, l);
            assert_eq!(serialize(&back), s);
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = format!(
            "# two chain\n\n{}",
            serialize(&lukasiewicz_chain(2)).replace("meet\n", "meet # order\n")
        );
        assert_eq!(parse(&s).unwrap(), lukasiewicz_chain(2));
    }

    #[test]
    fn out_of_range_entry_position() {
        let s = serialize(&lukasiewicz_chain(2)).replace("join\n0 1\n", "join\n0 7\n");
        let err = parse(&s).unwrap_err();
        assert_eq!((err.line, err.column), (7, 3));
        assert!(err.message.contains("out of range"));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse("").is_err());
        assert_eq!(parse("size x\n").unwrap_err().column, 6);
        assert!(parse("size 2\nunit 5\n").unwrap_err().message.contains("unit"));
        let short = serialize(&lukasiewicz_chain(2)).replace("0 1\n1 1\nmul", "0 1\n1\nmul");
        assert!(parse(&short).is_err());
        let extra = format!("{}extra\n", serialize(&lukasiewicz_chain(2)));
        assert!(parse(&extra).unwrap_err().message.contains("trailing"));
    }
}
