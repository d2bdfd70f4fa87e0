//! `PolytopeDocument`: the JSON input format.

use serde::Deserialize;
use serde_json::{json, Value};
use toricdef_core::linalg::{RatVector, Rational};
use toricdef_core::polyhedral::LatticePolytope;

use crate::error::CliError;
use crate::json::rat_vectors;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Coordinate {
    Integer(i64),
    Fraction([i64; 2]),
}

#[derive(Debug, Clone, Deserialize)]
struct RawDocument {
    schema_version: String,
    lattice_rank: usize,
    vertices: Vec<Vec<Coordinate>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeDocument {
    pub lattice_rank: usize,
    pub vertices: Vec<RatVector>,
}

fn coordinate(c: &Coordinate) -> Result<Rational, CliError> {
    match *c {
        Coordinate::Integer(n) => Ok(Rational::from_integer(n.into())),
        Coordinate::Fraction([_, 0]) => Err(CliError::Validation("zero denominator in vertex coordinate".into())),
        Coordinate::Fraction([n, d]) => Ok(Rational::new(n.into(), d.into())),
    }
}

impl PolytopeDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawDocument =
            serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed document: {e}")))?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(CliError::Validation(format!(
                "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
                raw.schema_version
            )));
        }
        if raw.vertices.is_empty() {
            return Err(CliError::Validation("no vertices".into()));
        }
        let mut vertices = Vec::with_capacity(raw.vertices.len());
        for (i, v) in raw.vertices.iter().enumerate() {
            if v.len() != raw.lattice_rank {
                return Err(CliError::Validation(format!(
                    "vertex {i} has {} coordinates, lattice_rank is {}",
                    v.len(),
                    raw.lattice_rank
                )));
            }
            let p: RatVector = v.iter().map(coordinate).collect::<Result<_, _>>()?;
            if let Some(j) = vertices.iter().position(|q| *q == p) {
                return Err(CliError::Validation(format!("vertex {i} repeats vertex {j}")));
            }
            vertices.push(p);
        }
        Ok(PolytopeDocument {
            lattice_rank: raw.lattice_rank,
            vertices,
        })
    }

    /// The polytope, rejecting listed points that are not vertices.
    pub fn polytope(&self) -> Result<LatticePolytope, CliError> {
        let p = LatticePolytope::from_points(self.lattice_rank, &self.vertices).map_err(CliError::from)?;
        if let Some(i) = self.vertices.iter().position(|v| !p.vertices().contains(v)) {
            return Err(CliError::Validation(format!(
                "vertex {i} is not a vertex of the convex hull"
            )));
        }
        Ok(p)
    }

    pub fn from_polytope(p: &LatticePolytope) -> Self {
        PolytopeDocument {
            lattice_rank: p.ambient_rank(),
            vertices: p.vertices().to_vec(),
        }
    }

    /// Canonical serialization: vertices in the polytope's canonical order.
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "lattice_rank": self.lattice_rank,
            "vertices": rat_vectors(&self.vertices),
        })
    }
}
