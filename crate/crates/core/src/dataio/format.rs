//! The `hyperlap/1` hypergraph document.
//!
//! A JSON object with `version`, `num_nodes`, `edges` (sorted member lists,
//! one per line, edges sorted lexicographically), `weights` and optional
//! `edge_names`, `labels`, `class_names` and `node_names`. Writing the same
//! data twice gives byte-identical files.

use std::io::Write;
use std::path::Path;

use serde::Deserialize;

use super::ingest::Dataset;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Value of the `version` field.
pub const FORMAT_VERSION: &str = "hyperlap/1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[allow(dead_code)]
    version: String,
    num_nodes: usize,
    edges: Vec<Vec<usize>>,
    weights: Vec<f64>,
    #[serde(default)]
    edge_names: Vec<String>,
    #[serde(default)]
    labels: Option<Vec<usize>>,
    #[serde(default)]
    class_names: Vec<String>,
    #[serde(default)]
    node_names: Vec<String>,
}

fn json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Serializes `data` into the canonical document text.
pub fn to_document(data: &Dataset) -> String {
    let h = &data.hypergraph;
    let mut order: Vec<usize> = (0..h.num_edges()).collect();
    order.sort_by(|&a, &b| {
        h.edge(a)
            .cmp(h.edge(b))
            .then(h.weight(a).total_cmp(&h.weight(b)))
    });
    let named = data.edge_names.len() == h.num_edges();

    let mut out = String::new();
    out.push_str(&format!("{{\n  \"version\": {},\n", json(FORMAT_VERSION)));
    out.push_str(&format!(
        "  \"num_nodes\": {},\n  \"edges\": [\n",
        h.num_nodes()
    ));
    for (i, &e) in order.iter().enumerate() {
        let sep = if i + 1 < order.len() { "," } else { "" };
        out.push_str(&format!("    {}{sep}\n", json(h.edge(e))));
    }
    out.push_str("  ],\n");
    let weights: Vec<f64> = order.iter().map(|&e| h.weight(e)).collect();
    out.push_str(&format!("  \"weights\": {}", json(&weights)));
    if named {
        let names: Vec<&String> = order.iter().map(|&e| &data.edge_names[e]).collect();
        out.push_str(&format!(",\n  \"edge_names\": {}", json(&names)));
    }
    if let Some(labels) = &data.labels {
        out.push_str(&format!(",\n  \"labels\": {}", json(labels)));
    }
    if !data.class_names.is_empty() {
        out.push_str(&format!(
            ",\n  \"class_names\": {}",
            json(&data.class_names)
        ));
    }
    if !data.node_names.is_empty() {
        out.push_str(&format!(",\n  \"node_names\": {}", json(&data.node_names)));
    }
    out.push_str("\n}\n");
    out
}

/// Parses a document produced by [`to_document`] (or written by hand).
pub fn from_document(text: &str) -> Result<Dataset> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::SchemaVersionMismatch(format!("unreadable document: {e}")))?;
    match value.get("version").and_then(|v| v.as_str()) {
        Some(FORMAT_VERSION) => {}
        Some(other) => return Err(Error::SchemaVersionMismatch(format!("found `{other}`"))),
        None => return Err(Error::SchemaVersionMismatch("missing version field".into())),
    }
    let doc: Document = serde_json::from_value(value).map_err(|e| Error::ParseError {
        line: 0,
        message: e.to_string(),
    })?;
    let hypergraph = Hypergraph::new(doc.num_nodes, doc.edges, doc.weights)?;
    if !doc.edge_names.is_empty() && doc.edge_names.len() != hypergraph.num_edges() {
        return Err(Error::LengthMismatch {
            expected: hypergraph.num_edges(),
            actual: doc.edge_names.len(),
        });
    }
    if !doc.node_names.is_empty() && doc.node_names.len() != hypergraph.num_nodes() {
        return Err(Error::LengthMismatch {
            expected: hypergraph.num_nodes(),
            actual: doc.node_names.len(),
        });
    }
    if let Some(labels) = &doc.labels {
        if labels.len() != hypergraph.num_nodes() {
            return Err(Error::LengthMismatch {
                expected: hypergraph.num_nodes(),
                actual: labels.len(),
            });
        }
        let k = labels.iter().max().map_or(0, |m| m + 1);
        if !doc.class_names.is_empty() && k > doc.class_names.len() {
            return Err(Error::InvalidLabels(format!(
                "label {} without a class name",
                k - 1
            )));
        }
    }
    Ok(Dataset {
        hypergraph,
        labels: doc.labels,
        class_names: doc.class_names,
        edge_names: doc.edge_names,
        node_names: doc.node_names,
    })
}

/// Writes `data` to `path` in the canonical format.
pub fn save_hypergraph(data: &Dataset, path: &Path) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(to_document(data).as_bytes())?;
    Ok(())
}

/// Reads a `hyperlap/1` document.
pub fn load_hypergraph(path: &Path) -> Result<Dataset> {
    from_document(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> Dataset {
        Dataset {
            hypergraph: Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap(),
            labels: Some(vec![0, 1, 1]),
            class_names: vec!["a".into(), "b".into()],
            edge_names: vec!["1=x".into()],
            node_names: vec![],
        }
    }

    #[test]
    fn round_trip_and_stable_bytes() {
        let text = to_document(&t3());
        assert_eq!(from_document(&text).unwrap(), t3());
        assert_eq!(text, to_document(&from_document(&text).unwrap()));
    }

    #[test]
    fn edges_are_sorted() {
        let h = Hypergraph::new(
            4,
            vec![vec![2, 3], vec![0, 1, 2], vec![0, 1]],
            vec![3.0, 0.1, 2.5],
        )
        .unwrap();
        let data = Dataset {
            hypergraph: h,
            labels: None,
            class_names: vec![],
            edge_names: vec![],
            node_names: vec![],
        };
        let back = from_document(&to_document(&data)).unwrap();
        assert_eq!(back.hypergraph.edge(0), &[0, 1]);
        assert_eq!(back.hypergraph.weights(), &[2.5, 0.1, 3.0]);
    }

    #[test]
    fn bad_documents() {
        assert!(matches!(
            from_document("{ not json"),
            Err(Error::SchemaVersionMismatch(_))
        ));
        let wrong = to_document(&t3()).replace("hyperlap/1", "hyperlap/0");
        assert!(matches!(
            from_document(&wrong),
            Err(Error::SchemaVersionMismatch(_))
        ));
        let singleton =
            "{\"version\":\"hyperlap/1\",\"num_nodes\":2,\"edges\":[[0]],\"weights\":[1]}";
        assert!(matches!(
            from_document(singleton),
            Err(Error::SingletonEdge { .. })
        ));
    }
}
