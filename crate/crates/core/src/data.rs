//! Datasets, partial labels and the two point metrics.
//!
//! Numeric data is stored row-major in one flat buffer. Categorical records are
//! interned into a per-dataset symbol table so the mismatch metric compares
//! integers; two symbols get the same id iff their text is identical, which
//! makes a missing-value token such as `?` an ordinary symbol.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Numeric,
    Categorical,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Numeric => "numeric",
            Kind::Categorical => "categorical",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Straight-line distance between numeric vectors.
    Euclidean,
    /// Number of columns whose symbols differ (Hamming distance).
    Mismatch,
}

impl Metric {
    pub fn kind(self) -> Kind {
        match self {
            Metric::Euclidean => Kind::Numeric,
            Metric::Mismatch => Kind::Categorical,
        }
    }

    /// The metric used when none is given explicitly.
    pub fn default_for(kind: Kind) -> Metric {
        match kind {
            Kind::Numeric => Metric::Euclidean,
            Kind::Categorical => Metric::Mismatch,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Euclidean => "euclidean",
            Metric::Mismatch => "mismatch",
        })
    }
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "mismatch" | "hamming" => Ok(Metric::Mismatch),
            other => Err(format!("unknown metric {other:?} (expected euclidean or mismatch)")),
        }
    }
}

/// A single owned point.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Numeric(Vec<f64>),
    Categorical(Vec<String>),
}

impl Point {
    pub fn kind(&self) -> Kind {
        match self {
            Point::Numeric(_) => Kind::Numeric,
            Point::Categorical(_) => Kind::Categorical,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Point::Numeric(v) => v.len(),
            Point::Categorical(v) => v.len(),
        }
    }
}

/// Distance between two standalone points.
pub fn distance(a: &Point, b: &Point, metric: Metric) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    match (a, b, metric) {
        (Point::Numeric(x), Point::Numeric(y), Metric::Euclidean) => Ok(euclidean(x, y)),
        (Point::Categorical(x), Point::Categorical(y), Metric::Mismatch) => Ok(mismatch(x, y)),
        (Point::Numeric(_), Point::Numeric(_), m) | (Point::Categorical(_), Point::Categorical(_), m) => {
            Err(Error::MetricKind {
                metric: m,
                kind: a.kind(),
            })
        }
        _ => Err(Error::Invariant(format!(
            "cannot compare {} and {} points",
            a.kind(),
            b.kind()
        ))),
    }
}

#[inline]
pub(crate) fn euclidean(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

#[inline]
pub(crate) fn mismatch<T: PartialEq>(x: &[T], y: &[T]) -> f64 {
    x.iter().zip(y).filter(|(a, b)| a != b).count() as f64
}

#[derive(Debug, Clone)]
enum Storage {
    Numeric(Vec<f64>),
    Categorical { codes: Vec<u32>, symbols: Vec<String> },
}

/// An immutable, validated collection of points of one kind and dimension.
#[derive(Debug, Clone)]
pub struct Dataset {
    storage: Storage,
    n: usize,
    dim: usize,
}

impl Dataset {
    pub fn numeric(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = check_shape(rows.iter().map(Vec::len))?;
        let mut flat = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if let Some(column) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { point: i, column });
            }
            flat.extend_from_slice(row);
        }
        Ok(Dataset {
            storage: Storage::Numeric(flat),
            n: rows.len(),
            dim,
        })
    }

    pub fn categorical<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let dim = check_shape(rows.iter().map(Vec::len))?;
        let mut table: HashMap<&str, u32> = HashMap::new();
        let mut symbols = Vec::new();
        let mut codes = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            for sym in row {
                let sym = sym.as_ref();
                let code = *table.entry(sym).or_insert_with(|| {
                    symbols.push(sym.to_owned());
                    (symbols.len() - 1) as u32
                });
                codes.push(code);
            }
        }
        Ok(Dataset {
            storage: Storage::Categorical { codes, symbols },
            n: rows.len(),
            dim,
        })
    }

    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let kind = points.first().map(Point::kind).unwrap_or(Kind::Numeric);
        if let Some(bad) = points.iter().position(|p| p.kind() != kind) {
            return Err(Error::Invariant(format!(
                "point {bad} is {} in a {kind} dataset",
                points[bad].kind()
            )));
        }
        match kind {
            Kind::Numeric => Dataset::numeric(
                points
                    .into_iter()
                    .map(|p| match p {
                        Point::Numeric(v) => v,
                        Point::Categorical(_) => unreachable!(),
                    })
                    .collect(),
            ),
            Kind::Categorical => Dataset::categorical(
                &points
                    .into_iter()
                    .map(|p| match p {
                        Point::Categorical(v) => v,
                        Point::Numeric(_) => unreachable!(),
                    })
                    .collect::<Vec<_>>(),
            ),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> Kind {
        match self.storage {
            Storage::Numeric(_) => Kind::Numeric,
            Storage::Categorical { .. } => Kind::Categorical,
        }
    }

    /// Coordinates of a numeric point; `None` for categorical data.
    pub fn numeric_row(&self, i: usize) -> Option<&[f64]> {
        match &self.storage {
            Storage::Numeric(v) => Some(&v[i * self.dim..(i + 1) * self.dim]),
            Storage::Categorical { .. } => None,
        }
    }

    pub fn point(&self, i: usize) -> Point {
        match &self.storage {
            Storage::Numeric(v) => Point::Numeric(v[i * self.dim..(i + 1) * self.dim].to_vec()),
            Storage::Categorical { codes, symbols } => Point::Categorical(
                codes[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .map(|&c| symbols[c as usize].clone())
                    .collect(),
            ),
        }
    }

    pub fn check_metric(&self, metric: Metric) -> Result<()> {
        if metric.kind() == self.kind() {
            Ok(())
        } else {
            Err(Error::MetricKind {
                metric,
                kind: self.kind(),
            })
        }
    }

    /// Binds a compatible metric to this dataset.
    pub fn space(&self, metric: Metric) -> Result<Space<'_>> {
        self.check_metric(metric)?;
        Ok(Space { ds: self, metric })
    }
}

fn check_shape(lens: impl ExactSizeIterator<Item = usize>) -> Result<usize> {
    let n = lens.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let mut dim = None;
    for (i, len) in lens.enumerate() {
        match dim {
            None if len == 0 => return Err(Error::ZeroDimension),
            None => dim = Some(len),
            Some(d) if d != len => {
                return Err(Error::Ragged {
                    point: i,
                    expected: d,
                    found: len,
                })
            }
            Some(_) => {}
        }
    }
    Ok(dim.expect("n >= 2"))
}

/// A dataset paired with a metric already checked to be compatible with it.
#[derive(Debug, Clone, Copy)]
pub struct Space<'a> {
    ds: &'a Dataset,
    metric: Metric,
}

impl<'a> Space<'a> {
    pub fn dataset(&self) -> &'a Dataset {
        self.ds
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.ds.n
    }

    pub fn is_empty(&self) -> bool {
        self.ds.n == 0
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let d = self.ds.dim;
        match &self.ds.storage {
            Storage::Numeric(v) => euclidean(&v[i * d..(i + 1) * d], &v[j * d..(j + 1) * d]),
            Storage::Categorical { codes, .. } => {
                mismatch(&codes[i * d..(i + 1) * d], &codes[j * d..(j + 1) * d])
            }
        }
    }
}

/// Dense index of a category inside one [`LabelSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CategoryId(pub u32);

impl CategoryId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Partial mapping from point index to category: the supervision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    entries: BTreeMap<usize, CategoryId>,
    categories: Vec<String>,
}

impl LabelSet {
    /// Builds a label set. Categories are numbered in first-seen order.
    pub fn new<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, S)>,
        S: Into<String>,
    {
        let mut entries = BTreeMap::new();
        let mut categories: Vec<String> = Vec::new();
        let mut lookup: HashMap<String, CategoryId> = HashMap::new();
        for (index, cat) in pairs {
            let cat = cat.into();
            let id = match lookup.get(&cat) {
                Some(&id) => id,
                None => {
                    let id = CategoryId(categories.len() as u32);
                    categories.push(cat.clone());
                    lookup.insert(cat, id);
                    id
                }
            };
            if entries.insert(index, id).is_some() {
                return Err(Error::DuplicateLabel { index });
            }
        }
        if entries.is_empty() {
            return Err(Error::EmptyLabels);
        }
        Ok(LabelSet {
            entries,
            categories,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn category_name(&self, id: CategoryId) -> &str {
        &self.categories[id.index()]
    }

    pub fn category_of(&self, index: usize) -> Option<CategoryId> {
        self.entries.get(&index).copied()
    }

    pub fn get(&self, index: usize) -> Option<&str> {
        self.category_of(index).map(|c| self.category_name(c))
    }

    pub fn is_labeled(&self, index: usize) -> bool {
        self.entries.contains_key(&index)
    }

    /// Labeled indices in ascending order with their category names.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &str)> + '_ {
        self.entries
            .iter()
            .map(|(&i, &c)| (i, self.categories[c.index()].as_str()))
    }

    pub fn ids(&self) -> impl Iterator<Item = (usize, CategoryId)> + '_ {
        self.entries.iter().map(|(&i, &c)| (i, c))
    }

    /// Per-point category lookup table of length `n`.
    pub fn dense(&self, n: usize) -> Vec<Option<CategoryId>> {
        let mut out = vec![None; n];
        for (&i, &c) in &self.entries {
            out[i] = Some(c);
        }
        out
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.entries.keys().next_back() {
            Some(&index) if index >= n => {
                // report the smallest offending index
                let index = *self.entries.range(n..).next().unwrap().0;
                Err(Error::LabelOutOfRange { index, n })
            }
            _ => Ok(()),
        }
    }
}

/// Checks a dataset/label pair before clustering.
pub fn validate<'a>(ds: &'a Dataset, ls: &'a LabelSet) -> Result<(&'a Dataset, &'a LabelSet)> {
    if ds.len() < 2 {
        return Err(Error::TooFewPoints(ds.len()));
    }
    if ls.is_empty() {
        return Err(Error::EmptyLabels);
    }
    ls.check_range(ds.len())?;
    Ok((ds, ls))
}
