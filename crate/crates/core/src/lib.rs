//! Internal dictionary queries.
//!
//! A text `T` is indexed together with a dictionary of fragments `T[l, r]`.
//! Afterwards every window `T[i, j]` can be asked whether some pattern occurs
//! in it, how many pattern occurrences it contains, which ones, and how many
//! or which distinct patterns occur in it.

pub mod access;
pub mod bench;
mod distinct;
pub mod dominance;
pub mod engine;
pub mod error;
pub mod io;
pub mod oracle;
pub mod query;
pub mod structure;
pub mod suffix;
pub mod text;
mod threshold;
pub mod verify;
pub mod versioned;

pub use error::{Error, Result};
pub use engine::{Dictionary, EngineStats, QueryEngine};
pub use query::{Answer, Occurrence, QueryKind};
pub use structure::{BlockPosition, ClassId, EquivClass, SubstringStructure};
pub use text::{GridPoint, Span, Text};
