//! Colored posets over Dynkin diagrams: the d-complete and minuscule
//! axioms, the catalog of connected finite minuscule posets, the downward
//! extension process that produces them, and two realizations of each one,
//! as a representation on its splits and as a filter of positive coroots.
//!
//! ```
//! use minuscule::axioms::is_minuscule;
//! use minuscule::catalog::{build, FamilyId};
//! use minuscule::classify::classify;
//!
//! let p = build(FamilyId::E6).unwrap();
//! assert_eq!(p.len(), 16);
//! assert!(is_minuscule(&p).holds);
//! assert_eq!(classify(&p.order_dual()).families(), vec![FamilyId::E6]);
//! ```
//!
//! Runnable examples, one per area (`cargo run --example NAME`):
//!
//! - `dynkin_types`: diagrams from edge lists, finite-type recognition
//! - `verify_axioms`: each property with its witnesses
//! - `catalog_tour`: every family up to a rank
//! - `extension_engine`: Y-shaped top trees grown until minuscule or blocked
//! - `classify_posets`: naming the components of a disjoint union
//! - `split_representation`: operators on splits and their relations
//! - `coroot_realization`: words, inversion sequences and coroot images
//! - `periodic_window`: windows of a periodic chain
//! - `json_documents`: the document format
//!
//! The `minuscule` binary exposes the same operations over JSON documents;
//! see [`cli`]. Documents follow `schema/minuscule.schema.json`.

pub mod axioms;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod coroots;
pub mod dynkin;
pub mod extension;
pub mod heapwindow;
pub mod io;
pub mod poset;
pub mod representation;
