//! Semi-supervised divisive clustering over a minimum spanning tree.
//!
//! Given a dataset and a handful of labeled points, clustering runs in four
//! steps:
//!
//! 1. connect all points by their exact minimum spanning tree ([`mst`]);
//! 2. orient the tree towards a root so every node points at its parent
//!    ([`intree`]);
//! 3. visit edges from longest to shortest and remove an edge only if its
//!    component mixes label categories and both halves keep a label
//!    ([`cutter`]);
//! 4. send every point to the root of its sub-tree and merge sub-trees that
//!    carry the same category ([`pipeline`]).
//!
//! No cluster count or threshold is needed: the number of clusters equals
//! the number of label categories.
//!
//! ```
//! use sdc::{run_sdc, Dataset, LabelSet, Metric};
//!
//! let ds = Dataset::numeric(vec![vec![0.0], vec![1.0], vec![6.0], vec![8.0], vec![12.0]])?;
//! let labels = LabelSet::new([(0, "A"), (4, "B")])?;
//! let res = run_sdc(&ds, &labels, Metric::Euclidean)?;
//! let cats: Vec<&str> = (0..5).map(|i| res.category_of(i)).collect();
//! assert_eq!(cats, ["A", "A", "B", "B", "B"]);
//! # Ok::<(), sdc::Error>(())
//! ```
//!
//! [`sweep`] repeats the procedure over random label draws at several label
//! budgets, reusing steps 1 and 2, and [`oracle`] holds slow reference
//! implementations used for cross-checking.

pub mod checks;
pub mod cutter;
pub mod data;
mod error;
pub mod intree;
pub mod io;
pub mod mst;
pub mod oracle;
pub mod pipeline;
pub mod svg;
pub mod sweep;
pub mod synth;
pub mod unionfind;

pub use cutter::{divisive_cut, side_labels, ComponentLabelView, CutLog, CutPlan, CutRecord, Decision};
pub use data::{distance, validate, CategoryId, Dataset, Kind, LabelSet, Metric, Point, Space};
pub use error::{Error, Result};
pub use intree::{orient, Forest, InTree, RootCache};
pub use mst::{build_mst_kruskal, build_mst_prim, total_weight, Edge, SpanningTree};
pub use pipeline::{error_rate, merge_by_category, misassigned, run_sdc, ClusterResult, Merged, Model, Timing};
pub use sweep::{sweep, sweep_model, Sampling, SweepConfig, SweepReport};
