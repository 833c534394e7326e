//! Superpatterns of permutation classes and small universal point sets for
//! planar graphs.

pub mod chessboard;
pub mod error;
pub mod geometry;
pub mod majorize;
pub mod perm;
pub mod plane_graph;
pub mod search;
pub mod strahler;
pub mod superpattern;

pub use chessboard::{chessboard, chessboard_graph, from_chessboard, Chessboard, ChessboardGraph};
pub use error::{Error, Result};
pub use geometry::{draw, orientation, segments_cross, stretchperm, universal_pointset, Drawing, ExactPoint};
pub use majorize::{majorize, xi, zeta};
pub use perm::{enumerate_class, Permutation};
pub use plane_graph::{canonical_order, cperm, recanonize, triangulate, CanonicalOrder, PlaneGraph};
pub use search::{confirm_staged, is_superpattern, minimal_superpattern_length, Budget, SearchOutcome, SearchReport};
pub use strahler::{strahler_of_tree, strahler_upper_bound, tree_augment, AugmentedPermutation, RootedTree};
pub use superpattern::{augment, mu, ClassTag, SuperpatternSpec};
