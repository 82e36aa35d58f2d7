pub mod bitset;
pub mod bounds;
pub mod closure;
pub mod context;
pub mod enumeration;
pub mod error;
pub mod generators;
pub mod implications;
pub mod io;
pub mod transforms;
pub mod verify;

pub use bitset::ElementSet;
pub use context::{CellBox, ConceptSet, Feature, NConcept, NContext};
pub use error::{Error, Result};
