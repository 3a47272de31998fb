//! Exact arc-set engine for the cluster category of type A-infinity.
//!
//! Sets of arcs on the integer line, possibly infinite, are represented
//! exactly as finite unions of integer trapezoids ([`region`]). On top of
//! that sit the crossing-set operator `ort` and its closure ([`ort`](mod@ort)), the
//! decision procedures for precovering, preenveloping, torsion classes,
//! t-structures and co-t-structures ([`classify`]), a brute-force reference
//! implementation on finite windows used for differential testing
//! ([`oracle`]), the region text syntax ([`dsl`]) and number-line rendering
//! ([`render`](mod@render)).

pub mod arc;
pub mod classify;
pub mod dsl;
pub mod error;
pub mod interval;
pub mod oracle;
pub mod ort;
pub mod region;
pub mod render;

pub use arc::{cross, hammock_from, hammock_to, hom_nonzero, mirror_arc, shift_arc, Arc, Window};

pub use classify::{ClassificationReport, CoTStructure, ConditionI, ConditionII, TStructure};
pub use dsl::{parse_region, print_region, ParseError};
pub use error::Error;
pub use interval::{IntInterval, IntSet};
pub use oracle::{agreement_report, OracleConfig};
pub use ort::{closure, cross_set, fountains, is_locally_finite, ort, FountainProfile};
pub use region::{ArcRegion, Trapezoid};
pub use render::{render, Format};
