//! Categorical tables to hypergraphs: one unit-weight edge per
//! (column, value) pair, holding the rows with that value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{largest_component, Hypergraph, RawHypergraph};

/// What to do with a missing-value token.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingPolicy {
    /// The row joins no edge for that column.
    DropMembership,
    /// The token is one more value.
    AsCategory,
    /// Columns containing the token anywhere are ignored.
    DropAttribute,
}

impl FromStr for MissingPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "drop-membership" => Ok(Self::DropMembership),
            "as-category" => Ok(Self::AsCategory),
            "drop-attribute" => Ok(Self::DropAttribute),
            other => Err(Error::InvalidConfig(format!(
                "unknown missing-value policy `{other}`"
            ))),
        }
    }
}

impl fmt::Display for MissingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::DropMembership => "drop-membership",
            Self::AsCategory => "as-category",
            Self::DropAttribute => "drop-attribute",
        })
    }
}

/// Columns that generate edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureColumns {
    AllOthers,
    List(Vec<usize>),
}

/// How to read one delimited categorical file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub path: PathBuf,
    pub delimiter: u8,
    pub label_column: usize,
    pub feature_columns: FeatureColumns,
    pub missing_token: String,
    pub missing_policy: MissingPolicy,
    /// Remove edges with fewer than two members.
    pub drop_trivial_edges: bool,
}

/// Names accepted by [`DatasetSpec::preset`].
pub const PRESETS: [&str; 6] = [
    "mushroom",
    "congress",
    "breast-cancer",
    "zoo",
    "chess",
    "nursery",
];

impl DatasetSpec {
    /// Comma-separated, `?` as missing, trivial edges dropped.
    pub fn new(
        path: impl Into<PathBuf>,
        label_column: usize,
        missing_policy: MissingPolicy,
    ) -> Self {
        Self {
            path: path.into(),
            delimiter: b',',
            label_column,
            feature_columns: FeatureColumns::AllOthers,
            missing_token: "?".into(),
            missing_policy,
            drop_trivial_edges: true,
        }
    }

    /// Layout of a known UCI file.
    ///
    /// | name | label | features | missing |
    /// |---|---|---|---|
    /// | mushroom | 0 | all others | drop-attribute |
    /// | congress | 0 | all others | as-category |
    /// | breast-cancer | 10 | 1..=9 | as-category |
    /// | zoo | 17 | 1..=16 | as-category |
    /// | chess | 36 | all others | as-category |
    /// | nursery | 8 | all others | as-category |
    pub fn preset(name: &str, path: impl Into<PathBuf>) -> Option<Self> {
        use MissingPolicy::*;
        let spec = match name {
            "mushroom" => Self::new(path, 0, DropAttribute),
            "congress" => Self::new(path, 0, AsCategory),
            "breast-cancer" => Self {
                feature_columns: FeatureColumns::List((1..=9).collect()),
                ..Self::new(path, 10, AsCategory)
            },
            "zoo" => Self {
                feature_columns: FeatureColumns::List((1..=16).collect()),
                ..Self::new(path, 17, AsCategory)
            },
            "chess" => Self::new(path, 36, AsCategory),
            "nursery" => Self::new(path, 8, AsCategory),
            _ => return None,
        };
        Some(spec)
    }

    fn columns(&self, arity: usize) -> Result<Vec<usize>> {
        let cols = match &self.feature_columns {
            FeatureColumns::AllOthers => (0..arity).filter(|&c| c != self.label_column).collect(),
            FeatureColumns::List(list) => {
                let set: BTreeSet<usize> = list.iter().copied().collect();
                set.into_iter().collect::<Vec<_>>()
            }
        };
        if self.label_column >= arity {
            return Err(Error::InvalidConfig(format!(
                "label column {} outside {arity} columns",
                self.label_column
            )));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= arity || c == self.label_column) {
            return Err(Error::InvalidConfig(format!(
                "feature column {c} is the label or out of range"
            )));
        }
        Ok(cols)
    }
}

/// An ingested (or loaded) labelled hypergraph.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub hypergraph: Hypergraph,
    /// Class id per node, indexing `class_names`.
    pub labels: Option<Vec<usize>>,
    pub class_names: Vec<String>,
    /// `column=value` per edge.
    pub edge_names: Vec<String>,
    /// Source row (0-based) per node.
    pub node_names: Vec<String>,
}

impl Dataset {
    /// Number of distinct classes.
    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }
}

/// Reads `spec.path` and builds its hypergraph.
///
/// Node ids follow row order; edges are ordered by column, then value. When
/// the result is disconnected only the largest component is kept and a
/// warning is logged.
pub fn ingest(spec: &DatasetSpec) -> Result<Dataset> {
    let file = std::fs::File::open(&spec.path)?;
    ingest_reader(spec, file)
}

/// [`ingest`] from any reader; `spec.path` is ignored.
pub fn ingest_reader(spec: &DatasetSpec, reader: impl std::io::Read) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(spec.delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut arity = None;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let expected = *arity.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::ParseError {
                line,
                message: format!("expected {expected} fields, found {}", record.len()),
            });
        }
        rows.push(record.iter().map(str::to_owned).collect());
    }
    let Some(arity) = arity else {
        return Err(Error::EmptyDataset);
    };
    build(spec, &rows, arity)
}

fn build(spec: &DatasetSpec, rows: &[Vec<String>], arity: usize) -> Result<Dataset> {
    let missing = spec.missing_token.as_str();
    let mut columns = spec.columns(arity)?;
    if spec.missing_policy == MissingPolicy::DropAttribute {
        columns.retain(|&c| rows.iter().all(|r| r[c] != missing));
    }
    let mut edges = Vec::new();
    let mut names = Vec::new();
    for &c in &columns {
        let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            let value = row[c].as_str();
            if value == missing && spec.missing_policy == MissingPolicy::DropMembership {
                continue;
            }
            groups.entry(value).or_default().push(i);
        }
        for (value, members) in groups {
            if spec.drop_trivial_edges && members.len() < 2 {
                continue;
            }
            edges.push(members);
            names.push(format!("{c}={value}"));
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let raw = RawHypergraph {
        num_nodes: rows.len(),
        weights: vec![1.0; edges.len()],
        edges,
    };
    let (hypergraph, kept) = largest_component(&raw)?;
    if kept.len() < rows.len() {
        log::warn!(
            "input is disconnected; keeping the largest component ({} of {} rows)",
            kept.len(),
            rows.len()
        );
    }
    let mut inside = vec![false; rows.len()];
    kept.iter().for_each(|&v| inside[v] = true);
    let edge_names = raw
        .edges
        .iter()
        .zip(names)
        .filter(|(e, _)| inside[e[0]])
        .map(|(_, n)| n)
        .collect();

    let class_set: BTreeSet<&str> = kept
        .iter()
        .map(|&v| rows[v][spec.label_column].as_str())
        .collect();
    let class_names: Vec<String> = class_set.iter().map(|s| s.to_string()).collect();
    let labels = kept
        .iter()
        .map(|&v| {
            let name = rows[v][spec.label_column].as_str();
            class_names
                .iter()
                .position(|c| c == name)
                .expect("collected above")
        })
        .collect();
    Ok(Dataset {
        hypergraph,
        labels: Some(labels),
        class_names,
        edge_names,
        node_names: kept.iter().map(|v| v.to_string()).collect(),
    })
}

/// Looks up `name` among [`PRESETS`] and ingests `path` with it.
pub fn ingest_preset(name: &str, path: &Path) -> Result<Dataset> {
    let spec = DatasetSpec::preset(name, path)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown dataset preset `{name}`")))?;
    ingest(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(policy: MissingPolicy) -> DatasetSpec {
        DatasetSpec::new("mem", 0, policy)
    }

    #[test]
    fn toy_single_column() {
        let d = ingest_reader(
            &spec(MissingPolicy::AsCategory),
            "x,a\ny,a\nx,b\n".as_bytes(),
        );
        // the lone `b` row is in no edge and falls off the largest component
        let d = d.unwrap();
        assert_eq!(d.hypergraph.num_edges(), 1);
        assert_eq!(d.hypergraph.num_nodes(), 2);
        assert_eq!(d.edge_names, vec!["1=a"]);
        assert_eq!(d.labels, Some(vec![0, 1]));
    }

    #[test]
    fn missing_policies() {
        let text = "p,a,u\nq,?,u\np,a,v\nq,b,v\nq,b,u\n";
        let count = |policy| {
            let d = ingest_reader(&spec(policy), text.as_bytes()).unwrap();
            (d.hypergraph.num_edges(), d.hypergraph.num_incidences())
        };
        // only column 2 survives; its two edges are disjoint and the larger wins
        assert_eq!(count(MissingPolicy::DropAttribute), (1, 3));
        assert_eq!(count(MissingPolicy::DropMembership), (4, 9));
        // `?` occurs once and is dropped as a trivial edge
        assert_eq!(count(MissingPolicy::AsCategory), (4, 9));
    }

    #[test]
    fn ragged_row_reports_line() {
        let err =
            ingest_reader(&spec(MissingPolicy::AsCategory), "p,a\nq,b,c\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::ParseError { line: 2, .. }), "{err:?}");
        assert!(matches!(
            ingest_reader(&spec(MissingPolicy::AsCategory), "".as_bytes()),
            Err(Error::EmptyDataset)
        ));
    }

    #[test]
    fn policy_names_round_trip() {
        for p in [
            MissingPolicy::DropMembership,
            MissingPolicy::AsCategory,
            MissingPolicy::DropAttribute,
        ] {
            assert_eq!(p.to_string().parse::<MissingPolicy>().unwrap(), p);
        }
        assert!("drop".parse::<MissingPolicy>().is_err());
        assert!(PRESETS
            .iter()
            .all(|n| DatasetSpec::preset(n, "x").is_some()));
    }
}
