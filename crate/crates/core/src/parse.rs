//! Group files: `degree <n>` followed by one generator per line in disjoint
//! cycle notation. Blank lines and `#` comments are ignored.

use crate::error::{Error, Result};
use crate::perm::Perm;

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Parses a group file into its degree and generators.
pub fn parse_group_text(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        match degree {
            None => {
                let mut words = content.split_whitespace();
                let col = content.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
                if words.next() != Some("degree") {
                    return Err(err(line_no, col, "expected `degree <n>`"));
                }
                let value = words.next().ok_or_else(|| err(line_no, col, "missing degree value"))?;
                let col = content.find(value).unwrap_or(0) + 1;
                let n: usize = value.parse().map_err(|_| err(line_no, col, format!("invalid degree `{value}`")))?;
                if n == 0 || n > u16::MAX as usize {
                    return Err(err(line_no, col, "degree out of range"));
                }
                if let Some(extra) = words.next() {
                    let col = content.rfind(extra).unwrap_or(0) + 1;
                    return Err(err(line_no, col, format!("unexpected `{extra}`")));
                }
                degree = Some(n);
            }
            Some(n) => gens.push(parse_cycles(n, content, line_no)?),
        }
    }
    let n = degree.ok_or_else(|| err(1, 1, "empty group file"))?;
    Ok((n, gens))
}

/// Parses one permutation such as `(0 1 2)(3 4)`; `()` is the identity.
pub fn parse_cycles(degree: usize, text: &str, line: usize) -> Result<Perm> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut seen = vec![false; degree];
    let mut pos = 0;
    while pos < chars.len() {
        let (byte, c) = chars[pos];
        let col = text[..byte].chars().count() + 1;
        match c {
            '(' => {
                if current.is_some() {
                    return Err(err(line, col, "nested `(`"));
                }
                current = Some(Vec::new());
                pos += 1;
            }
            ')' => {
                let cycle = current.take().ok_or_else(|| err(line, col, "unmatched `)`"))?;
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
                pos += 1;
            }
            ',' | ' ' | '\t' => pos += 1,
            d if d.is_ascii_digit() => {
                let start = pos;
                while pos < chars.len() && chars[pos].1.is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().map(|(_, c)| c).collect();
                let cycle = current.as_mut().ok_or_else(|| err(line, col, "point outside a cycle"))?;
                let v: usize = digits.parse().map_err(|_| err(line, col, "point out of range"))?;
                if v >= degree {
                    return Err(err(line, col, format!("point {v} exceeds degree {degree}")));
                }
                if seen[v] {
                    return Err(err(line, col, format!("point {v} repeated")));
                }
                seen[v] = true;
                cycle.push(v);
            }
            other => return Err(err(line, col, format!("unexpected character `{other}`"))),
        }
    }
    if current.is_some() {
        let col = text.trim_end().chars().count() + 1;
        return Err(err(line, col, "unterminated cycle"));
    }
    Perm::from_cycles(degree, &cycles).map_err(|e| err(line, 1, e.to_string()))
}

/// Inverse of [`parse_group_text`].
pub fn serialize_group(degree: usize, gens: &[Perm]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in gens {
        out.push_str(&g.to_cycle_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s3() {
        let (n, gens) = parse_group_text("# symmetric group\ndegree 3\n\n(0 1 2)\n(0 1)  # transposition\n").unwrap();
        assert_eq!(n, 3);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].to_cycle_string(), "(0 1 2)");
    }

    #[test]
    fn reports_unterminated_cycle() {
        match parse_group_text("degree 3\n(0 1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reports_bad_point() {
        match parse_group_text("degree 3\n(0 1)(2 x)\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 9)),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_group_text("degree 3\n(0 3)\n").is_err());
        assert!(parse_group_text("degree 3\n(0 1 0)\n").is_err());
        assert!(parse_group_text("(0 1)\n").is_err());
    }

    #[test]
    fn identity_and_round_trip() {
        let (n, gens) = parse_group_text("degree 4\n()\n(0 1)(2 3)\n").unwrap();
        assert!(gens[0].is_identity());
        let text = serialize_group(n, &gens);
        assert_eq!(parse_group_text(&text).unwrap(), (n, gens));
    }
}
