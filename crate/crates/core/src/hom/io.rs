//! Plain-text transformation files.
//!
//! ```text
//! source: builtin:cycle4
//! target: frames/c2.frame
//! t: 0->0, 1->1, 2->0, 3->1
//! ```
//!
//! `t` is either a list of pairs covering `0..|I0|` once each, `shift C`,
//! or `mod N`. Frame references are kept as written; resolving them is up
//! to the caller.

use super::TransformationMap;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapFile {
    pub source: String,
    pub target: String,
    pub map: TransformationMap,
}

pub fn serialize(m: &MapFile) -> String {
    format!("source: {}\ntarget: {}\nt: {}\n", m.source, m.target, m.map)
}

pub fn parse(src: &str) -> Result<MapFile, ParseError> {
    let mut source = None;
    let mut target = None;
    let mut map = None;
    for (n, raw) in src.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = body.split_once(':') else {
            return Err(ParseError::new(line, 1, "expected `key: value`"));
        };
        let column = key.len() + 2 + (rest.len() - rest.trim_start().len());
        let value = rest.trim();
        let slot = match key.trim() {
            "source" => &mut source,
            "target" => &mut target,
            "t" => {
                if map.is_some() {
                    return Err(ParseError::new(line, 1, "duplicate key `t`"));
                }
                map = Some(parse_map(value, line, column)?);
                continue;
            }
            other => return Err(ParseError::new(line, 1, format!("unexpected key `{other}`"))),
        };
        if slot.is_some() {
            return Err(ParseError::new(line, 1, format!("duplicate key `{}`", key.trim())));
        }
        if value.is_empty() {
            return Err(ParseError::new(line, column, "empty frame reference"));
        }
        *slot = Some(value.to_string());
    }
    let missing = |k: &str| ParseError::new(1, 1, format!("missing `{k}`"));
    Ok(MapFile {
        source: source.ok_or_else(|| missing("source"))?,
        target: target.ok_or_else(|| missing("target"))?,
        map: map.ok_or_else(|| missing("t"))?,
    })
}

fn parse_map(value: &str, line: usize, column: usize) -> Result<TransformationMap, ParseError> {
    let number = |s: &str| ParseError::new(line, column, format!("expected a number, found `{s}`"));
    if let Some(c) = value.strip_prefix("shift") {
        let c = c.trim();
        return c.parse().map(TransformationMap::Shift).map_err(|_| number(c));
    }
    if let Some(n) = value.strip_prefix("mod") {
        let n = n.trim();
        return match n.parse() {
            Ok(0) => Err(ParseError::new(line, column, "mod 0 is undefined")),
            Ok(n) => Ok(TransformationMap::ModCollapse(n)),
            Err(_) => Err(number(n)),
        };
    }
    let mut table: Vec<Option<usize>> = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = item
            .split_once("->")
            .ok_or_else(|| ParseError::new(line, column, format!("expected `i->j`, found `{item}`")))?;
        let i: usize = a.trim().parse().map_err(|_| number(a.trim()))?;
        let j: usize = b.trim().parse().map_err(|_| number(b.trim()))?;
        if i >= table.len() {
            table.resize(i + 1, None);
        }
        if table[i].replace(j).is_some() {
            return Err(ParseError::new(line, column, format!("t({i}) given twice")));
        }
    }
    let table = table
        .iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| ParseError::new(line, column, format!("t({i}) is missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TransformationMap::Finite(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for map in [
            TransformationMap::Finite(vec![0, 1, 0, 1]),
            TransformationMap::Finite(vec![]),
            TransformationMap::Shift(-3),
            TransformationMap::ModCollapse(2),
        ] {
            let m = MapFile {
                source: "builtin:cycle4".into(),
                target: "frames/c2.frame".into(),
                map,
            };
            assert_eq!(parse(&serialize(&m)).unwrap(), m);
        }
    }

    #[test]
    fn pairs_in_any_order() {
        let m = parse("source: a\ntarget: b\nt: 2->0, 0->1, 1->1  # comment\n").unwrap();
        assert_eq!(m.map, TransformationMap::Finite(vec![1, 1, 0]));
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse("source: a\ntarget: b\nt: 0->1, 2->0\n").unwrap_err().line, 3);
        assert!(parse("source: a\ntarget: b\nt: 0->1, 0->0\n").is_err());
        assert!(parse("source: a\nt: mod 2\n").is_err());
        assert!(parse("source: a\ntarget: b\nt: mod 0\n").is_err());
        assert!(parse("source: a\ntarget: b\nt: shift x\n").is_err());
        assert_eq!(parse("source: a\nsource: b\n").unwrap_err().line, 2);
    }
}
