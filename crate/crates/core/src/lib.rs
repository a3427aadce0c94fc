//! Finite symmetric multicategories enriched in finite sets or finite
//! simplicial sets: collection algebra, free constructions, and decidable
//! model-structure predicates at desk scale.

pub mod collection;
pub mod enrich;
pub mod error;
pub mod model;
pub mod multicat;
pub mod perm;
pub mod suite;
pub mod verdict;
pub mod wire;

pub use collection::{Collection, CollectionMap, Signature, SymmetricSequence};
pub use enrich::{Backend, Elem, EnrichMap, EnrichValue};
pub use error::{Error, Result};
pub use model::ModelVerdict;
pub use multicat::{Multicategory, Multifunctor};
pub use perm::Perm;
pub use verdict::Verdict;

/// Default bounds used across the crate and the CLI.
pub mod bounds {
    /// Maximum arity of signatures.
    pub const ARITY: usize = 4;
    /// Simplicial dimension bound for products and horn checks.
    pub const DIM: usize = 3;
    /// Vertex bound for free-multicategory enumeration.
    pub const TREE: usize = 6;
    /// Default search budget for lifting and certificate searches.
    pub const LIFT_BUDGET: usize = 200_000;
}

/// Shared bound configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Bounds {
    pub arity: usize,
    pub dim: usize,
    pub tree: usize,
    #[serde(default = "default_lift_budget")]
    pub lift_budget: usize,
}

fn default_lift_budget() -> usize {
    bounds::LIFT_BUDGET
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            arity: bounds::ARITY,
            dim: bounds::DIM,
            tree: bounds::TREE,
            lift_budget: bounds::LIFT_BUDGET,
        }
    }
}
