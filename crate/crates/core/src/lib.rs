//! Simple pseudoline arrangements: wiring diagrams, exact line arrangements,
//! their graphs, degree-sequence realization and distance structure.

pub mod geometry;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod realizer;
pub mod wiring;

pub use geometry::{LineArrangement, RationalLine, RationalPoint};
pub use graph::{build_from_arrangement, build_from_wiring, ArrangementGraph};
pub use realizer::{check_sequence, realize, DegreeSequence, RealizationPlan};
pub use wiring::WiringDiagram;
