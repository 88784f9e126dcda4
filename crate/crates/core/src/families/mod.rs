//! Recursively constructed graph families and their rational generating
//! functions via the transfer-matrix method.
//!
//! Six constructions are supported, each growing a family parameter n:
//! cylinders (product with a path), extrusions (a cylinder over a subgraph
//! glued onto the base), tori (product with a cycle), earrings (the glued
//! cyclic variant), and subdivision families where one edge or a fixed edge
//! set is subdivided n times in total. For each kind the series of
//! black-white polynomials satisfies a linear recurrence realized by a
//! weighted transfer matrix; the generating function is recovered in
//! reduced rational form from the expansion.

mod realize;
mod transfer;

pub use realize::{realize, realize_members};
pub use transfer::{build_transfer, expand_family, rational_family_gf, TransferSystem};

use serde_json::{json, Value};

use crate::graphcore::{Mode, Multigraph};

pub const STATE_BOUND: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Cylinder,
    Extrusion,
    Torus,
    Earring,
    SubdivideOne,
    SubdivideMany,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Cylinder => "cylinder",
            FamilyKind::Extrusion => "extrusion",
            FamilyKind::Torus => "torus",
            FamilyKind::Earring => "earring",
            FamilyKind::SubdivideOne => "subdivide-one",
            FamilyKind::SubdivideMany => "subdivide-many",
        }
    }

    fn from_name(s: &str) -> Option<FamilyKind> {
        Some(match s {
            "cylinder" => FamilyKind::Cylinder,
            "extrusion" => FamilyKind::Extrusion,
            "torus" => FamilyKind::Torus,
            "earring" => FamilyKind::Earring,
            "subdivide-one" => FamilyKind::SubdivideOne,
            "subdivide-many" => FamilyKind::SubdivideMany,
            _ => return None,
        })
    }

    /// The name of the series variable used for this kind.
    pub fn series_var(self) -> &'static str {
        match self {
            FamilyKind::SubdivideOne | FamilyKind::SubdivideMany => "y",
            _ => "x",
        }
    }
}

/// One subdividable strand: an edge endpoint pair plus a strand index
/// distinguishing parallel copies (and selecting loops when `a == b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strand {
    pub a: usize,
    pub b: usize,
    pub strand: usize,
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub base: Multigraph,
    /// Vertices of the glued subgraph H (extrusion/earring); H is the
    /// induced subgraph of the base on these vertices.
    pub subgraph: Vec<usize>,
    /// Edges to subdivide (subdivision kinds).
    pub edges: Vec<Strand>,
    pub mode: Mode,
    /// Restrict torus/earring members to simple parameters (n >= 3); when
    /// false the length-1 and length-2 members (with loops and doubled
    /// edges) are included.
    pub simple: bool,
}

impl FamilySpec {
    pub fn cylinder(base: Multigraph, mode: Mode) -> Self {
        let subgraph = (0..base.vertex_count()).collect();
        FamilySpec {
            kind: FamilyKind::Cylinder,
            base,
            subgraph,
            edges: Vec::new(),
            mode,
            simple: false,
        }
    }

    pub fn torus(base: Multigraph, mode: Mode) -> Self {
        FamilySpec {
            subgraph: (0..base.vertex_count()).collect(),
            kind: FamilyKind::Torus,
            base,
            edges: Vec::new(),
            mode,
            simple: false,
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let n = self.base.vertex_count();
        let bad = |msg: String| Err(FamilyError::InvalidSpec(msg));
        match self.kind {
            FamilyKind::Extrusion | FamilyKind::Earring => {
                if self.subgraph.is_empty() {
                    return bad("glued subgraph must be nonempty".into());
                }
                let mut seen = vec![false; n];
                for &v in &self.subgraph {
                    if v >= n {
                        return bad(format!("subgraph vertex {v} out of range"));
                    }
                    if seen[v] {
                        return bad(format!("subgraph vertex {v} repeated"));
                    }
                    seen[v] = true;
                }
            }
            FamilyKind::SubdivideOne | FamilyKind::SubdivideMany => {
                if self.kind == FamilyKind::SubdivideOne && self.edges.len() != 1 {
                    return bad("subdivide-one takes exactly one edge".into());
                }
                if self.edges.is_empty() {
                    return bad("no edges to subdivide".into());
                }
                for e in &self.edges {
                    let have = self.base.edge_mult(e.a, e.b);
                    if e.a >= n || e.b >= n || have == 0 {
                        return bad(format!("edge {}-{} not in the base graph", e.a, e.b));
                    }
                    if e.strand >= have {
                        return bad(format!(
                            "strand {} of edge {}-{} exceeds multiplicity {have}",
                            e.strand, e.a, e.b
                        ));
                    }
                }
                let mut keyed: Vec<(usize, usize, usize)> = self
                    .edges
                    .iter()
                    .map(|e| (e.a.min(e.b), e.a.max(e.b), e.strand))
                    .collect();
                keyed.sort();
                keyed.dedup();
                if keyed.len() != self.edges.len() {
                    return bad("repeated strand in edge list".into());
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The glued subgraph H as its own multigraph (induced on `subgraph`).
    pub fn subgraph_graph(&self) -> Multigraph {
        self.base.induced(&self.subgraph)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "base": self.base.to_json(),
            "subgraph": self.subgraph,
            "edges": self.edges.iter().map(|e| json!([e.a, e.b, e.strand])).collect::<Vec<_>>(),
            "mode": match self.mode { Mode::T => "t", Mode::Full => "full" },
            "simple": self.simple,
        })
    }

    pub fn from_json(value: &Value) -> Result<FamilySpec, FamilyError> {
        let bad = |msg: &str| FamilyError::InvalidSpec(format!("family spec json: {msg}"));
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .and_then(FamilyKind::from_name)
            .ok_or_else(|| bad("unknown kind"))?;
        let base = Multigraph::from_json(value.get("base").ok_or_else(|| bad("missing base"))?)
            .map_err(FamilyError::Graph)?;
        let subgraph = match value.get("subgraph") {
            None | Some(Value::Null) => (0..base.vertex_count()).collect(),
            Some(v) => v
                .as_array()
                .ok_or_else(|| bad("subgraph must be a vertex list"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("bad subgraph vertex"))?,
        };
        let edges = match value.get("edges") {
            None | Some(Value::Null) => Vec::new(),
            Some(v) => v
                .as_array()
                .ok_or_else(|| bad("edges must be a list"))?
                .iter()
                .map(|e| {
                    let t = e.as_array().filter(|t| t.len() == 3)?;
                    Some(Strand {
                        a: t[0].as_u64()? as usize,
                        b: t[1].as_u64()? as usize,
                        strand: t[2].as_u64()? as usize,
                    })
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("edge must be [a, b, strand]"))?,
        };
        let mode = match value.get("mode").and_then(Value::as_str) {
            None | Some("t") => Mode::T,
            Some("full") => Mode::Full,
            Some(other) => return Err(bad(&format!("unknown mode '{other}'"))),
        };
        let simple = value
            .get("simple")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        let spec = FamilySpec {
            kind,
            base,
            subgraph,
            edges,
            mode,
            simple,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("family parameter out of range: {0}")]
    OutOfRange(String),
    #[error("transfer system would need {0} states (bound {STATE_BOUND})")]
    StateBound(usize),
    #[error(transparent)]
    Graph(#[from] crate::graphcore::GraphError),
    #[error(transparent)]
    Series(#[from] crate::series::SeriesError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}
