//! Burmeister's CXT format. Rows are objects, while the in-memory context
//! is attribute-major, so reading and writing transpose.

use crate::context::FormalContext;
use crate::error::{Error, Result};

pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.lines().collect();
    let get = |i: usize| -> Result<&str> {
        lines
            .get(i)
            .map(|l| l.trim_end_matches('\r'))
            .ok_or_else(|| Error::parse(i + 1, "unexpected end of input"))
    };
    if get(0)?.trim() != "B" {
        return Err(Error::parse(1, "expected `B`"));
    }
    // Line 2 may hold a context name, which is ignored.
    let count = |i: usize| -> Result<usize> {
        get(i)?
            .trim()
            .parse()
            .map_err(|_| Error::parse(i + 1, "expected a count"))
    };
    let n_obj = count(2)?;
    let n_attr = count(3)?;
    if !get(4)?.trim().is_empty() {
        return Err(Error::parse(5, "expected a blank line"));
    }
    let mut at = 5;
    let names = |n: usize, at: &mut usize| -> Result<Vec<String>> {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(get(*at)?.to_string());
            *at += 1;
        }
        Ok(out)
    };
    let objects = names(n_obj, &mut at)?;
    let attributes = names(n_attr, &mut at)?;
    let mut incidence = vec![vec![false; n_obj]; n_attr];
    for (b, _) in objects.iter().enumerate() {
        let row = get(at)?;
        if row.chars().count() != n_attr {
            return Err(Error::parse(
                at + 1,
                format!("expected {n_attr} cells, found {}", row.chars().count()),
            ));
        }
        for (a, ch) in row.chars().enumerate() {
            incidence[a][b] = match ch {
                'X' | 'x' => true,
                '.' => false,
                other => return Err(Error::parse(at + 1, format!("unexpected cell `{other}`"))),
            };
        }
        at += 1;
    }
    if let Some(extra) = lines[at.min(lines.len())..].iter().position(|l| !l.trim().is_empty()) {
        return Err(Error::parse(at + extra + 1, "trailing content"));
    }
    FormalContext::new(attributes, objects, incidence)
}

pub fn serialize_cxt(ctx: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.num_objects(), ctx.num_attributes());
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for b in 0..ctx.num_objects() {
        out.extend((0..ctx.num_attributes()).map(|a| if ctx.incident(a, b) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}
