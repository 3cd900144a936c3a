//! Reading and writing contexts and posets, diagram export and serialisable reports.

pub mod csv;
pub mod cxt;
pub mod dot;
pub mod order;
pub mod report;

pub use self::csv::{parse_csv, serialize_csv};
pub use self::cxt::{parse_cxt, serialize_cxt};
pub use self::dot::{export_dot, export_lattice_dot};
pub use self::order::{looks_like_poset, parse_poset};

use crate::context::FormalContext;
use crate::error::Result;

/// Parses CXT when the text starts with a `B` line, CSV otherwise.
pub fn parse_context(text: &str) -> Result<FormalContext> {
    if text.lines().next().map(str::trim) == Some("B") {
        parse_cxt(text)
    } else {
        parse_csv(text)
    }
}
