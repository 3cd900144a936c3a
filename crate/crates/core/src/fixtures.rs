//! The three worked-example contexts, transcribed row by row (rows are
//! attributes, columns are objects).

use crate::context::FormalContext;

/// Attribute subset used to reduce [`k3`].
pub const D3: &[&str] = &["a1", "a3", "a4"];

/// Attribute subset used to reduce [`k4`].
pub const D4: &[&str] = &["a1", "a2", "a3", "a4"];

pub const K2_CSV: &str = include_str!("../data/k2.csv");
pub const K3_CSV: &str = include_str!("../data/k3.csv");
pub const K4_CSV: &str = include_str!("../data/k4.csv");

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn build(table: &[&[u8]]) -> FormalContext {
    let objects = names("b", table[0].len());
    let attributes = names("a", table.len());
    let incidence = table
        .iter()
        .map(|r| r.iter().map(|&v| v == 1).collect())
        .collect();
    FormalContext::new(attributes, objects, incidence).expect("fixture tables are well formed")
}

/// Seven attributes by seven objects; its lattice has 14 concepts.
pub fn k2() -> FormalContext {
    build(&[
        &[1, 1, 1, 1, 1, 0, 0],
        &[1, 1, 0, 1, 0, 0, 0],
        &[1, 1, 1, 0, 1, 0, 0],
        &[0, 1, 1, 0, 1, 1, 0],
        &[0, 1, 1, 0, 0, 1, 1],
        &[1, 0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0, 0],
    ])
}

/// Five attributes by five objects; its lattice has 9 concepts.
pub fn k3() -> FormalContext {
    build(&[
        &[1, 0, 0, 0, 0],
        &[0, 1, 0, 1, 0],
        &[0, 1, 1, 1, 0],
        &[1, 0, 0, 1, 0],
        &[0, 0, 1, 1, 1],
    ])
}

/// Six attributes by six objects; its lattice has 10 concepts.
pub fn k4() -> FormalContext {
    build(&[
        &[1, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0],
        &[1, 1, 1, 0, 1, 0],
        &[1, 1, 0, 1, 0, 0],
        &[1, 1, 0, 0, 1, 0],
        &[1, 1, 1, 0, 0, 1],
    ])
}
