//! Plain-text frame files.
//!
//! ```text
//! kind: finite
//! m: 4
//! I1: 0, 1, 2
//! lambda: 0->1, 1->2, 2->3
//! ```
//!
//! or a single line `kind: z-shift`, `kind: n-forward` or `kind: n-backward`.
//! `#` starts a comment. `lambda` must be injective with domain exactly `I1`.

use super::{FiniteFrame, Frame, SymbolicKind};
use crate::error::{FrameError, ParseError};

pub fn serialize(frame: &Frame) -> String {
    match frame {
        Frame::Symbolic(k) => format!("kind: {}\n", k.name()),
        Frame::Finite(f) => {
            let i1: Vec<String> = f.i1().iter().map(usize::to_string).collect();
            let lambda: Vec<String> = f.pairs().iter().map(|(i, j)| format!("{i}->{j}")).collect();
            format!(
                "kind: finite\nm: {}\nI1: {}\nlambda: {}\n",
                f.size(),
                i1.join(", "),
                lambda.join(", ")
            )
            .replace(": \n", ":\n")
        }
    }
}

struct Field<'a> {
    line: usize,
    /// 1-based column where the value starts.
    column: usize,
    value: &'a str,
}

fn item_column(field: &Field<'_>, item: &str) -> usize {
    // items are subslices of the value
    field.column + (item.as_ptr() as usize - field.value.as_ptr() as usize)
}

fn parse_index(field: &Field<'_>, item: &str) -> Result<usize, ParseError> {
    item.parse().map_err(|_| {
        ParseError::new(
            field.line,
            item_column(field, item),
            format!("expected an index, found `{item}`"),
        )
    })
}

fn items<'a>(field: &Field<'a>) -> impl Iterator<Item = &'a str> {
    field.value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse(src: &str) -> Result<Frame, ParseError> {
    let mut fields: Vec<(&str, Field<'_>)> = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(ParseError::new(n + 1, col, "expected `key: value`"));
        };
        let key = body[..colon].trim();
        let rest = &body[colon + 1..];
        let value = rest.trim();
        let column = colon + 2 + (rest.len() - rest.trim_start().len());
        if fields.iter().any(|(k, _)| *k == key) {
            return Err(ParseError::new(n + 1, 1, format!("duplicate key `{key}`")));
        }
        fields.push((
            key,
            Field {
                line: n + 1,
                column,
                value,
            },
        ));
    }
    let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, f)| f);
    let kind = get("kind").ok_or_else(|| ParseError::new(1, 1, "missing `kind`"))?;
    let symbolic = match kind.value {
        "finite" => None,
        "z-shift" => Some(SymbolicKind::ZShift),
        "n-forward" => Some(SymbolicKind::NForward),
        "n-backward" => Some(SymbolicKind::NBackward),
        other => {
            return Err(ParseError::new(
                kind.line,
                kind.column,
                format!("unknown kind `{other}` (finite, z-shift, n-forward, n-backward)"),
            ))
        }
    };
    let allowed: &[&str] = if symbolic.is_some() {
        &["kind"]
    } else {
        &["kind", "m", "I1", "lambda"]
    };
    if let Some((k, f)) = fields.iter().find(|(k, _)| !allowed.contains(k)) {
        return Err(ParseError::new(f.line, 1, format!("unexpected key `{k}`")));
    }
    if let Some(k) = symbolic {
        return Ok(Frame::Symbolic(k));
    }
    let need = |key: &str| get(key).ok_or_else(|| ParseError::new(kind.line, 1, format!("missing `{key}`")));
    let m_field = need("m")?;
    let m = parse_index(m_field, m_field.value)?;
    let i1_field = need("I1")?;
    let mut i1 = Vec::new();
    for item in items(i1_field) {
        let i = parse_index(i1_field, item)?;
        if i >= m {
            return Err(ParseError::new(
                i1_field.line,
                item_column(i1_field, item),
                format!("index {i} out of range for m = {m}"),
            ));
        }
        if i1.contains(&i) {
            return Err(ParseError::new(
                i1_field.line,
                item_column(i1_field, item),
                format!("index {i} listed twice"),
            ));
        }
        i1.push(i);
    }
    let l_field = need("lambda")?;
    let mut pairs = Vec::new();
    let mut targets: Vec<(usize, usize)> = Vec::new();
    for item in items(l_field) {
        let (a, b) = item.split_once("->").or_else(|| item.split_once('→')).ok_or_else(|| {
            ParseError::new(
                l_field.line,
                item_column(l_field, item),
                format!("expected `i->j`, found `{item}`"),
            )
        })?;
        let (a, b) = (a.trim(), b.trim());
        let i = parse_index(l_field, a)?;
        let j = parse_index(l_field, b)?;
        let col = item_column(l_field, item);
        for idx in [i, j] {
            if idx >= m {
                return Err(ParseError::new(
                    l_field.line,
                    col,
                    format!("index {idx} out of range for m = {m}"),
                ));
            }
        }
        if pairs.iter().any(|&(p, _)| p == i) {
            return Err(ParseError::new(l_field.line, col, format!("lambda({i}) given twice")));
        }
        if let Some(&(p, _)) = targets.iter().find(|&&(_, t)| t == j) {
            return Err(ParseError::new(
                l_field.line,
                col,
                format!("lambda is not injective: {p} and {i} both map to {j}"),
            ));
        }
        targets.push((i, j));
        pairs.push((i, j));
    }
    FiniteFrame::with_domain(m, &i1, &pairs)
        .map(Frame::Finite)
        .map_err(|e| match e {
            FrameError::DomainMismatch(i) => ParseError::new(
                l_field.line,
                l_field.column,
                format!("lambda domain differs from I1 at index {i}"),
            ),
            other => ParseError::new(l_field.line, l_field.column, other.to_string()),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let frames = [
            Frame::Finite(FiniteFrame::path(3)),
            Frame::Finite(FiniteFrame::empty()),
            Frame::Finite(FiniteFrame::singleton_tail()),
            Frame::Finite(FiniteFrame::identity(4)),
            Frame::Symbolic(SymbolicKind::ZShift),
            Frame::Symbolic(SymbolicKind::NBackward),
        ];
        for f in frames {
            let s = serialize(&f);
            let back = parse(&s).unwrap();
            assert_eq!(back, f);
            assert_eq!(serialize(&back), s);
        }
        assert_eq!(
            serialize(&Frame::Finite(FiniteFrame::path(2))),
            "kind: finite\nm: 3\nI1: 0, 1\nlambda: 0->1, 1->2\n"
        );
    }

    #[test]
    fn rejects_duplicate_target() {
        let err = parse("kind: finite\nm: 3\nI1: 0, 1\nlambda: 0->2, 1->2\n").unwrap_err();
        assert_eq!((err.line, err.column), (4, 15));
        assert!(err.message.contains("injective"));
    }

    #[test]
    fn rejects_domain_mismatch_and_junk() {
        assert!(parse("kind: finite\nm: 3\nI1: 0\nlambda: 0->1, 1->2\n").is_err());
        assert!(parse("kind: finite\nm: 3\nI1: 0, 7\nlambda: 0->1\n")
            .unwrap_err()
            .message
            .contains("range"));
        assert!(parse("kind: spiral\n").is_err());
        assert!(parse("").is_err());
        assert!(parse("kind: z-shift\nm: 3\n").is_err());
        let err = parse("kind: finite\nm: x\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
    }

    #[test]
    fn comments_and_unicode_arrow() {
        let f = parse("# example\nkind: finite # explicit\nm: 2\nI1: 0\nlambda: 0→1\n").unwrap();
        assert_eq!(f, Frame::Finite(FiniteFrame::path(1)));
    }
}
