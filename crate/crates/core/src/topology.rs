//! Sensor field layouts: generation, persistence and geometry.
//!
//! A topology is a square field of side `M` meters holding `N` nodes with
//! dense ids `0..N`. Anchors know their position a priori; blind nodes must
//! localize. Blind coordinates are kept as ground truth so the simulator can
//! decide reachability, but nothing downstream treats them as known.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const HEADER_MAGIC: &str = "trilat-topology";
const FORMAT_VERSION: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Anchor,
    Blind,
}

impl NodeKind {
    fn tag(self) -> char {
        match self {
            NodeKind::Anchor => 'A',
            NodeKind::Blind => 'B',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub x: f64,
    pub y: f64,
    pub kind: NodeKind,
}

impl Node {
    pub fn is_anchor(&self) -> bool {
        self.kind == NodeKind::Anchor
    }
}

/// Euclidean distance between two nodes in meters.
pub fn distance(a: &Node, b: &Node) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    nodes: Vec<Node>,
    field_side: f64,
}

impl Topology {
    /// Builds a topology, checking id density and field bounds.
    pub fn new(field_side: f64, mut nodes: Vec<Node>) -> Result<Self> {
        if !(field_side.is_finite() && field_side > 0.0) {
            return Err(Error::InvalidArgument(format!("field side must be positive, got {field_side}")));
        }
        nodes.sort_by_key(|n| n.id);
        for pair in nodes.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::Validation(format!("duplicate node id {}", pair[0].id)));
            }
        }
        for (expected, node) in nodes.iter().enumerate() {
            if node.id.0 != expected {
                return Err(Error::Validation(format!("node ids must be dense from 0; missing id {expected}")));
            }
            let inside = |v: f64| v.is_finite() && (0.0..=field_side).contains(&v);
            if !inside(node.x) || !inside(node.y) {
                return Err(Error::Validation(format!(
                    "node {} at ({}, {}) lies outside the {field_side} m field",
                    node.id, node.x, node.y
                )));
            }
        }
        Ok(Self { nodes, field_side })
    }

    /// Scatters `n_nodes` uniformly over the field. The `n_anchors` lowest ids
    /// are anchors.
    pub fn generate_random(n_nodes: usize, n_anchors: usize, field_side: f64, seed: u64) -> Result<Self> {
        if n_anchors > n_nodes {
            return Err(Error::InvalidArgument(format!("{n_anchors} anchors requested for only {n_nodes} nodes")));
        }
        if !(field_side.is_finite() && field_side > 0.0) {
            return Err(Error::InvalidArgument(format!("field side must be positive, got {field_side}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = (0..n_nodes)
            .map(|i| Node {
                id: NodeId(i),
                x: rng.random_range(0.0..=field_side),
                y: rng.random_range(0.0..=field_side),
                kind: if i < n_anchors { NodeKind::Anchor } else { NodeKind::Blind },
            })
            .collect();
        Self::new(field_side, nodes)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn field_side(&self) -> f64 {
        self.field_side
    }

    pub fn n_anchors(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_anchor()).count()
    }

    pub fn n_blind(&self) -> usize {
        self.len() - self.n_anchors()
    }

    pub fn distance(&self, a: NodeId, b: NodeId) -> f64 {
        distance(self.node(a), self.node(b))
    }

    /// Serializes to the line-oriented text format.
    ///
    /// ```text
    /// trilat-topology v1 <field_side>
    /// <id>,<A|B>,<x>,<y>
    /// ```
    ///
    /// Floats use Rust's shortest round-trip representation, so `parse`
    /// recovers them bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER_MAGIC} {FORMAT_VERSION} {}\n", self.field_side);
        for n in &self.nodes {
            let _ = writeln!(out, "{},{},{},{}", n.id, n.kind.tag(), n.x, n.y);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
        let field_side = parse_header(header)?;

        let mut nodes = Vec::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            nodes.push(parse_node(line).map_err(|message| Error::Parse { line: line_no, message })?);
        }
        Self::new(field_side, nodes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

fn parse_header(header: &str) -> Result<f64> {
    let bad = |message: String| Error::Parse { line: 1, message };
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields.as_slice() {
        [magic, version, side] if *magic == HEADER_MAGIC => {
            if *version != FORMAT_VERSION {
                return Err(bad(format!("unsupported format version {version}")));
            }
            side.parse::<f64>().map_err(|e| bad(format!("field side {side:?}: {e}")))
        }
        _ => Err(bad(format!("expected `{HEADER_MAGIC} {FORMAT_VERSION} <field_side>`, got {header:?}"))),
    }
}

fn parse_node(line: &str) -> std::result::Result<Node, String> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    let [id, kind, x, y] = fields.as_slice() else {
        return Err(format!("expected 4 comma-separated fields, got {}", fields.len()));
    };
    let id = id.parse::<usize>().map_err(|e| format!("id {id:?}: {e}"))?;
    let kind = match *kind {
        "A" => NodeKind::Anchor,
        "B" => NodeKind::Blind,
        other => return Err(format!("kind must be A or B, got {other:?}")),
    };
    let coord = |s: &str| s.parse::<f64>().map_err(|e| format!("coordinate {s:?}: {e}"));
    Ok(Node { id: NodeId(id), x: coord(x)?, y: coord(y)?, kind })
}
