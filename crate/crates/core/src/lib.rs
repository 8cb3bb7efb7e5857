//! Symbolic computation in the braided Higman-Thompson groups `BV_{n,r}(H)`.

pub mod braid;
pub mod diagram;
pub mod element;
pub mod generators;
pub mod subgroup;
pub mod trees;

pub use braid::{BraidError, BraidWord, Permutation};
pub use diagram::{diagram_equal, Diagram, DiagramError, Slice};
pub use element::{Element, ElementError};
pub use generators::{Gen, GenError, GenLetter, GeneratorTable, GeneratorWord};
pub use subgroup::{LabelLetter, LabelWord, SubgroupError, SubgroupSpec};
pub use trees::{Forest, LeafAddress, Node, Tree, TreeError};
