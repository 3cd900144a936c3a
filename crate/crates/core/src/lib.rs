//! Formal concept analysis with attribute-reduction quotients, local
//! congruences and the context edits that remove single concepts.
//!
//! Contexts are attribute-major: row `a` lists the objects incident to
//! attribute `a`. Concepts are indexed in colexicographic extent order, so
//! `C0` is always the bottom.

pub mod checks;
pub mod completion;
pub mod congruence;
pub mod context;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod poset;
pub mod reduction;
pub mod subset;
pub mod surgery;

pub use context::FormalContext;
pub use error::{Error, Result};
pub use lattice::{build_lattice, Concept, ConceptLattice};
pub use poset::{FiniteLattice, FinitePoset, Lattice};
pub use reduction::{Partition, QuotientPoset};
pub use subset::{AttributeSet, ElementSet, ObjectSet, Subset};
pub use surgery::{Prefer, RemovalKind, RemovalOrder, RemovalPlan};
