//! Reading datasets and label files, writing assignments, cut logs and reports.
//!
//! All text output is UTF-8 with `\n` line endings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::cutter::CutLog;
use crate::data::{Dataset, LabelSet};
use crate::error::{Error, Result};
use crate::pipeline::ClusterResult;
use crate::sweep::SweepReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    NumericCsv,
    CategoricalCsv,
}

/// Where and how to read a data table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataFileSpec {
    pub path: PathBuf,
    pub format: DataFormat,
    /// Column holding the ground-truth category; excluded from the features.
    pub truth_column: Option<usize>,
    pub delimiter: u8,
}

impl DataFileSpec {
    pub fn new(path: impl Into<PathBuf>, format: DataFormat) -> Self {
        DataFileSpec {
            path: path.into(),
            format,
            truth_column: None,
            delimiter: b',',
        }
    }

    pub fn truth_column(mut self, column: usize) -> Self {
        self.truth_column = Some(column);
        self
    }

    pub fn delimiter(mut self, delimiter: u8) -> Self {
        self.delimiter = delimiter;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub dataset: Dataset,
    pub truth: Option<Vec<String>>,
}

/// Feature rows, optional truth column, and the source line of each row.
type Table = (Vec<Vec<String>>, Option<Vec<String>>, Vec<usize>);

fn read_table(spec: &DataFileSpec) -> Result<Table> {
    let file = fs::File::open(&spec.path).map_err(|e| Error::io(&spec.path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(spec.delimiter)
        .from_reader(file);
    let mut rows = Vec::new();
    let mut truth = spec.truth_column.map(|_| Vec::new());
    let mut lines = Vec::new();
    let mut width = None;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(&spec.path, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(Error::parse(
                    &spec.path,
                    line,
                    format!("row has {} columns, expected {w}", record.len()),
                ))
            }
            Some(_) => {}
        }
        let mut fields: Vec<String> = record.iter().map(str::to_owned).collect();
        if let (Some(col), Some(t)) = (spec.truth_column, truth.as_mut()) {
            if col >= fields.len() {
                return Err(Error::parse(
                    &spec.path,
                    line,
                    format!("truth column {col} is beyond the {} columns", fields.len()),
                ));
            }
            t.push(fields.remove(col));
        }
        rows.push(fields);
        lines.push(line);
    }
    Ok((rows, truth, lines))
}

/// Loads a numeric table: one point per row.
pub fn load_numeric(spec: &DataFileSpec) -> Result<Loaded> {
    let (rows, truth, lines) = read_table(spec)?;
    let mut points = Vec::with_capacity(rows.len());
    for (row, line) in rows.iter().zip(&lines) {
        let mut point = Vec::with_capacity(row.len());
        for (col, cell) in row.iter().enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| {
                Error::parse(&spec.path, *line, format!("column {col}: {cell:?} is not a number"))
            })?;
            if !v.is_finite() {
                return Err(Error::parse(&spec.path, *line, format!("column {col}: {cell:?} is not finite")));
            }
            point.push(v);
        }
        points.push(point);
    }
    Ok(Loaded {
        dataset: Dataset::numeric(points)?,
        truth,
    })
}

/// Loads a categorical table; every cell is taken verbatim as a symbol.
pub fn load_categorical(spec: &DataFileSpec) -> Result<Loaded> {
    let (rows, truth, _) = read_table(spec)?;
    Ok(Loaded {
        dataset: Dataset::categorical(&rows)?,
        truth,
    })
}

pub fn load(spec: &DataFileSpec) -> Result<Loaded> {
    match spec.format {
        DataFormat::NumericCsv => load_numeric(spec),
        DataFormat::CategoricalCsv => load_categorical(spec),
    }
}

/// Reads a two-column `index,category` label file. Blank lines and lines
/// starting with `#` are ignored.
pub fn load_labels(path: impl AsRef<Path>) -> Result<LabelSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut pairs = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (idx, cat) = line
            .split_once([',', '\t'])
            .ok_or_else(|| Error::parse(path, k + 1, "expected index and category"))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::parse(path, k + 1, format!("{:?} is not a point index", idx.trim())))?;
        pairs.push((idx, cat.trim().to_owned()));
    }
    LabelSet::new(pairs)
}

pub fn write_labels(labels: &LabelSet, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for (i, c) in labels.iter() {
        let _ = writeln!(out, "{i},{c}");
    }
    write_text(path.as_ref(), &out)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str().is_empty() {
        return Err(Error::EmptyPath);
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Assignment table as text: `index<TAB>cluster<TAB>category` per point,
/// followed by comment lines with the cluster count and, optionally, timings.
pub fn assignment_text(res: &ClusterResult, with_timing: bool) -> String {
    let mut out = String::from("# index\tcluster\tcategory\n");
    for (i, &c) in res.assignment.iter().enumerate() {
        let _ = writeln!(out, "{i}\t{c}\t{}", res.cluster_category[c]);
    }
    let _ = writeln!(out, "# n_clusters={} n_subtrees={}", res.n_clusters, res.n_subtrees);
    if with_timing {
        let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
        let t = &res.timing;
        let _ = writeln!(
            out,
            "# timing_ms mst={:.3} orient={:.3} cut={:.3} assign={:.3}",
            ms(t.mst),
            ms(t.orient),
            ms(t.cut),
            ms(t.assign)
        );
    }
    out
}

pub fn write_assignment(res: &ClusterResult, path: impl AsRef<Path>, with_timing: bool) -> Result<()> {
    write_text(path.as_ref(), &assignment_text(res, with_timing))
}

/// An assignment file read back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub cluster: Vec<usize>,
    pub category: Vec<String>,
    pub n_clusters: usize,
}

pub fn read_assignment(path: impl AsRef<Path>) -> Result<Assignment> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Assignment {
        cluster: Vec::new(),
        category: Vec::new(),
        n_clusters: 0,
    };
    for (k, line) in text.lines().enumerate() {
        if let Some(meta) = line.strip_prefix("# n_clusters=") {
            let n = meta.split_whitespace().next().unwrap_or_default();
            out.n_clusters = n.parse().map_err(|_| Error::parse(path, k + 1, "bad cluster count"))?;
            continue;
        }
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.splitn(3, '\t').collect();
        let bad = || Error::parse(path, k + 1, "expected index, cluster and category");
        if f.len() != 3 {
            return Err(bad());
        }
        let idx: usize = f[0].parse().map_err(|_| bad())?;
        if idx != out.cluster.len() {
            return Err(Error::parse(path, k + 1, format!("expected index {}", out.cluster.len())));
        }
        out.cluster.push(f[1].parse().map_err(|_| bad())?);
        out.category.push(f[2].to_owned());
    }
    Ok(out)
}

pub fn write_cut_log(log: &CutLog, path: impl AsRef<Path>, with_timing: bool) -> Result<()> {
    write_text(path.as_ref(), &log.to_text(with_timing))
}

pub fn write_report(report: &SweepReport, path: impl AsRef<Path>, with_timing: bool) -> Result<()> {
    write_text(path.as_ref(), &report.to_tsv(with_timing))
}

pub fn read_report(path: impl AsRef<Path>) -> Result<SweepReport> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    SweepReport::from_tsv(&text).map_err(|msg| Error::parse(path, 0, msg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Metric;
    use crate::pipeline::run_sdc;
    use proptest::prelude::*;

    fn file(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn numeric_three_by_two() {
        let dir = tempfile::tempdir().unwrap();
        let p = file(&dir, "a.csv", "0,0\n3,4\n1,1\n");
        let l = load_numeric(&DataFileSpec::new(&p, DataFormat::NumericCsv)).unwrap();
        assert_eq!(l.dataset.len(), 3);
        assert_eq!(l.dataset.dim(), 2);
        assert!(l.truth.is_none());
        assert_eq!(l.dataset.numeric_row(1), Some(&[3.0, 4.0][..]));
    }

    #[test]
    fn numeric_errors_name_the_row() {
        let dir = tempfile::tempdir().unwrap();
        let spec = |p: &PathBuf| DataFileSpec::new(p, DataFormat::NumericCsv);
        let ragged = file(&dir, "r.csv", "0,0\n3,4\n1\n");
        match load_numeric(&spec(&ragged)) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        let word = file(&dir, "w.csv", "0,0\n3,x\n");
        match load_numeric(&spec(&word)) {
            Err(Error::Parse { line: 2, msg, .. }) => assert!(msg.contains("column 1")),
            other => panic!("{other:?}"),
        }
        let nan = file(&dir, "n.csv", "0,0\nNaN,1\n");
        assert!(matches!(load_numeric(&spec(&nan)), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            load_numeric(&spec(&dir.path().join("missing.csv"))),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn categorical_with_truth_and_missing_token() {
        let dir = tempfile::tempdir().unwrap();
        let p = file(&dir, "m.csv", "p,x,s,n\ne,x,s,n\ne,b,?,w\n");
        let spec = DataFileSpec::new(&p, DataFormat::CategoricalCsv).truth_column(0);
        let l = load_categorical(&spec).unwrap();
        assert_eq!(l.dataset.dim(), 3);
        assert_eq!(l.truth.unwrap(), ["p", "e", "e"]);
        let sp = l.dataset.space(Metric::Mismatch).unwrap();
        assert_eq!(sp.distance(0, 1), 0.0);
        assert_eq!(sp.distance(1, 2), 3.0);
    }

    #[test]
    fn tab_delimited() {
        let dir = tempfile::tempdir().unwrap();
        let p = file(&dir, "t.tsv", "1\t2\tA\n3\t4\tB\n");
        let spec = DataFileSpec::new(&p, DataFormat::NumericCsv)
            .delimiter(b'\t')
            .truth_column(2);
        let l = load(&spec).unwrap();
        assert_eq!(l.dataset.dim(), 2);
        assert_eq!(l.truth.unwrap(), ["A", "B"]);
    }

    #[test]
    fn label_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = file(&dir, "l.csv", "# idx,cat\n0,A\n\n4,B\n");
        let ls = load_labels(&p).unwrap();
        assert_eq!(ls.get(0), Some("A"));
        assert_eq!(ls.get(4), Some("B"));
        let bad = file(&dir, "b.csv", "zero,A\n");
        assert!(matches!(load_labels(&bad), Err(Error::Parse { line: 1, .. })));
        let dup = file(&dir, "d.csv", "1,A\n1,B\n");
        assert!(matches!(load_labels(&dup), Err(Error::DuplicateLabel { index: 1 })));
        let q = dir.path().join("w.csv");
        write_labels(&ls, &q).unwrap();
        assert_eq!(load_labels(&q).unwrap(), ls);
    }

    #[test]
    fn chain_assignment_file() {
        let dir = tempfile::tempdir().unwrap();
        let ds = Dataset::numeric([0.0, 1.0, 6.0, 8.0, 12.0].iter().map(|&x| vec![x]).collect()).unwrap();
        let ls = LabelSet::new([(0, "A"), (4, "B")]).unwrap();
        let res = run_sdc(&ds, &ls, Metric::Euclidean).unwrap();
        let p = dir.path().join("out.tsv");
        write_assignment(&res, &p, true).unwrap();
        let text = fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 5);
        let back = read_assignment(&p).unwrap();
        assert_eq!(back.category, ["A", "A", "B", "B", "B"]);
        assert_eq!(back.cluster, res.assignment);
        assert_eq!(back.n_clusters, 2);
        assert!(matches!(write_assignment(&res, "", false), Err(Error::EmptyPath)));
    }

    proptest! {
        #[test]
        fn assignment_round_trip(clusters in prop::collection::vec(0usize..4, 2..40)) {
            let names = ["red", "green", "blue", "gold"];
            let res = ClusterResult {
                assignment: clusters.clone(),
                cluster_category: names.iter().map(|s| s.to_string()).collect(),
                n_clusters: 4,
                n_subtrees: 4,
                cut_log: CutLog::default(),
                timing: Default::default(),
            };
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("a.tsv");
            write_assignment(&res, &p, true).unwrap();
            let back = read_assignment(&p).unwrap();
            prop_assert_eq!(back.cluster, clusters.clone());
            let cats: Vec<String> = clusters.iter().map(|&c| names[c].to_string()).collect();
            prop_assert_eq!(back.category, cats);
        }
    }
}
