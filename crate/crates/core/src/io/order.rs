//! Plain-text posets: one relation `a <= b` (or `b >= a`) or one bare
//! element name per line. `#` starts a comment.

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    let mut intern = |name: &str, line: usize| -> Result<usize> {
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(Error::parse(line, format!("bad element name `{name}`")));
        }
        Ok(match labels.iter().position(|l| l == name) {
            Some(i) => i,
            None => {
                labels.push(name.to_string());
                labels.len() - 1
            }
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((a, b)) = body.split_once("<=") {
            let (a, b) = (intern(a.trim(), line)?, intern(b.trim(), line)?);
            pairs.push((a, b));
        } else if let Some((a, b)) = body.split_once(">=") {
            let (a, b) = (intern(a.trim(), line)?, intern(b.trim(), line)?);
            pairs.push((b, a));
        } else {
            intern(body, line)?;
        }
    }
    if labels.is_empty() {
        return Err(Error::parse(1, "no elements"));
    }
    FinitePoset::from_pairs(labels, &pairs)
}

/// Whether `text` looks like a poset file rather than a context.
pub fn looks_like_poset(text: &str) -> bool {
    text.lines().any(|l| {
        let body = l.split('#').next().unwrap_or("");
        body.contains("<=") || body.contains(">=")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bowtie() {
        let p = parse_poset("# two below two\na <= c\na <= d\nb <= c\nd >= b\n").unwrap();
        assert_eq!(p.labels(), ["a", "c", "d", "b"]);
        assert!(p.leq(3, 2) && !p.leq(1, 2) && !p.is_lattice());
    }

    #[test]
    fn isolated_elements_and_errors() {
        let p = parse_poset("x\ny\n").unwrap();
        assert_eq!(p.len(), 2);
        assert!(!p.leq(0, 1));
        assert!(matches!(parse_poset("a <= b c\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_poset("\n# nothing\n"), Err(Error::Parse { .. })));
        assert!(parse_poset("a <= b\nb <= a\n").is_err());
        assert!(looks_like_poset("a <= b") && !looks_like_poset(",b1\na1,1\n"));
    }
}
