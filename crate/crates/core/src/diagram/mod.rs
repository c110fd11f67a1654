//! Blocks, weights, cup diagrams and stacked circle diagrams.

pub mod block;
pub mod geometry;
pub mod matching;
pub mod orientation;
pub mod stacked;

pub use block::{Block, Label, Symbol, Weight};
pub use geometry::{ArcClasses, Probe};
pub use matching::{all_matchings, anticlockwise_weight, check_matching, CupDiagram, Pair};
pub use orientation::Orientation;
pub use stacked::{ArcId, Circle, Components, Layer, StackedDiagram, Vertex};
