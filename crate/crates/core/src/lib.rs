//! Split graphs, bicolored graphs and the species identities between them.
//!
//! Graphs on at most 16 labeled vertices, KS-partitions and the
//! balanced / unbalanced classification, the bijections realizing the
//! species identities, exhaustive enumeration with canonical codes for
//! unlabeled counts, exact power series, closed-form counts and the
//! asymptotic ratio checks.

pub mod asymptotics;
pub mod bicolored;
pub mod bigfloat;
pub mod bijections;
pub mod canon;
pub mod counting;
pub mod decimal;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod series;
pub mod split;
pub mod verify;

pub use bicolored::BicoloredGraph;
pub use bigfloat::BigFloat;
pub use bijections::PointedSet;
pub use canon::{canonical_code, canonical_code_bicolored, CanonicalCode};
pub use enumeration::{ClassTag, Structure};
pub use error::{Error, Result};
pub use graph::{Graph, Permutation, VertexSet};
pub use series::{Convention, RationalSeries, SeriesName};
pub use split::{
    ColoredSplitGraph, KSPartition, SplitAnalysis, SplitClass, SwingKind, SwingReport,
};
