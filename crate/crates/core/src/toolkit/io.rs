//! JSON instance files: `{"n": 4, "edges": [{"u": 0, "v": 1, "w": 0}, ...]}`.
//! Edge ids are array positions.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, MapInstance, ValidationReport, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub w: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
}

impl InstanceFile {
    pub fn from_instance(inst: &MapInstance) -> Self {
        let edges = inst
            .graph()
            .edges()
            .iter()
            .zip(inst.weights())
            .map(|(&(u, v), w)| EdgeRecord { u, v, w: w.cost() })
            .collect();
        Self { n: inst.vertex_count(), edges }
    }

    /// Full validation, including malformed edges a `MapInstance` cannot hold.
    pub fn validate(&self) -> Result<ValidationReport> {
        let triples = self
            .edges
            .iter()
            .map(|e| {
                Weight::from_cost(e.w)
                    .map(|w| (e.u, e.v, w))
                    .ok_or_else(|| Error::Parse(format!("edge weight {} is not 0 or 1", e.w)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(graph::validate_parts(self.n, &triples))
    }

    /// Builds the instance. Malformed edges are rejected with the full
    /// validation report; matching and connectivity problems are left to
    /// [`graph::validate_instance`].
    pub fn to_instance(&self) -> Result<MapInstance> {
        let triples: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, e.w)).collect();
        match MapInstance::from_triples(self.n, &triples) {
            Ok(inst) => Ok(inst),
            Err(Error::SelfLoop { .. } | Error::VertexOutOfRange { .. }) => Err(Error::InvalidInstance(self.validate()?)),
            Err(e) => Err(e),
        }
    }
}

pub fn to_json(inst: &MapInstance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance files always serialize")
}

pub fn from_json(text: &str) -> Result<MapInstance> {
    serde_json::from_str::<InstanceFile>(text)?.to_instance()
}

pub fn read_instance(path: &Path) -> Result<MapInstance> {
    from_json(&fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &MapInstance) -> Result<()> {
    let mut text = to_json(inst);
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_shape() {
        let text = r#"{"n": 3, "edges": [{"u":0,"v":1,"w":1},{"u":1,"v":2,"w":0},{"u":2,"v":0,"w":1}]}"#;
        let inst = from_json(text).unwrap();
        assert_eq!(inst.vertex_count(), 3);
        assert_eq!(inst.light_edges(), vec![1]);
        assert_eq!(from_json(&to_json(&inst)).unwrap(), inst);
    }

    #[test]
    fn malformed_edges_surface_as_violations() {
        let text = r#"{"n": 2, "edges": [{"u":0,"v":0,"w":1},{"u":0,"v":1,"w":1}]}"#;
        match from_json(text) {
            Err(Error::InvalidInstance(report)) => {
                assert!(report.violations.iter().any(|v| matches!(v, graph::Violation::SelfLoop { .. })))
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad_weight = r#"{"n": 2, "edges": [{"u":0,"v":1,"w":2}]}"#;
        assert!(matches!(from_json(bad_weight), Err(Error::Parse(_))));
    }
}
