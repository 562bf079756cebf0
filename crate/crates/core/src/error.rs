use std::path::PathBuf;

use crate::data::{Kind, Metric};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dataset needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("points must have at least one feature")]
    ZeroDimension,
    #[error("point {point} has {found} features, expected {expected}")]
    Ragged {
        point: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {point}, feature {column}: value is not finite")]
    NonFinite { point: usize, column: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("metric {metric} cannot be used with {kind} data")]
    MetricKind { metric: Metric, kind: Kind },

    #[error("label set is empty")]
    EmptyLabels,
    #[error("label index {index} out of range for {n} points")]
    LabelOutOfRange { index: usize, n: usize },
    #[error("point {index} is labeled more than once")]
    DuplicateLabel { index: usize },

    #[error("root {index} out of range for {n} nodes")]
    InvalidRoot { index: usize, n: usize },
    #[error("spanning tree over {n} nodes must have {expected} edges, got {found}")]
    NotATree {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("node {0} is already a root")]
    CutAtRoot(usize),
    #[error("edge {child}->{parent} is not an uncut in-tree edge")]
    EdgeNotPresent { child: usize, parent: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("ground truth covers {found} points, dataset has {expected}")]
    TruthLength { expected: usize, found: usize },
    #[error("point {index} is labeled {label:?} but its ground truth is {truth:?}")]
    TruthContradiction {
        index: usize,
        label: String,
        truth: String,
    },
    #[error("budget {budget} exceeds the {available} points of category {category:?}")]
    BudgetExceedsPopulation {
        category: String,
        budget: usize,
        available: usize,
    },
    #[error("label budgets must be at least 1")]
    ZeroBudget,
    #[error("at least one trial is required")]
    ZeroTrials,

    #[error("scatter plots need 2-dimensional numeric data, got {kind} with {dim} features")]
    UnsupportedPlot { kind: Kind, dim: usize },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("output path is empty")]
    EmptyPath,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
