//! Combinatorial space presentations: a finite directed graph of points and
//! edges together with 2-cell relators (cyclic edge words) and a basepoint.
//!
//! These presentations stand in for cell complexes: edges generate paths,
//! relators declare which edge loops bound a disk.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

/// Traversal direction of an edge inside a path or relator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
        }
    }

    pub fn is_reverse(self) -> bool {
        self == Orientation::Reverse
    }
}

/// A directed edge between two named points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDef {
    pub name: String,
    pub src: String,
    pub dst: String,
}

impl EdgeDef {
    pub fn new(name: impl Into<String>, src: impl Into<String>, dst: impl Into<String>) -> Self {
        EdgeDef {
            name: name.into(),
            src: src.into(),
            dst: dst.into(),
        }
    }
}

/// One letter of a relator: an edge name with a traversal orientation.
pub type RelatorLetter = (String, Orientation);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("duplicate point name `{0}`")]
    DuplicatePoint(String),
    #[error("edge `{edge}` references undeclared point `{point}`")]
    UnknownEndpoint { edge: String, point: String },
    #[error("basepoint `{0}` is not a declared point")]
    UnknownBasepoint(String),
    #[error("relator {index} references unknown edge `{edge}`")]
    RelatorUnknownEdge { index: usize, edge: String },
    #[error("relator {index} is not a loop: breaks at letter {letter}")]
    RelatorNotLoop { index: usize, letter: usize },
    #[error("space is not connected: point `{0}` is unreachable from the basepoint")]
    NotConnected(String),
}

/// A finite presentation of a space: points, directed edges, 2-cell relators,
/// and a basepoint. Immutable after validated construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacePresentation {
    points: Vec<String>,
    edges: Vec<EdgeDef>,
    relators: Vec<Vec<RelatorLetter>>,
    basepoint: String,
    edge_index: BTreeMap<String, usize>,
    point_set: BTreeSet<String>,
}

impl SpacePresentation {
    /// Validates and builds a presentation.
    ///
    /// Every edge endpoint and the basepoint must be declared points, edge
    /// names must be unique, and every relator must trace a closed loop.
    pub fn new(
        points: Vec<String>,
        edges: Vec<EdgeDef>,
        relators: Vec<Vec<RelatorLetter>>,
        basepoint: impl Into<String>,
    ) -> Result<Self, SpaceError> {
        let basepoint = basepoint.into();
        let mut point_set = BTreeSet::new();
        for p in &points {
            if !point_set.insert(p.clone()) {
                return Err(SpaceError::DuplicatePoint(p.clone()));
            }
        }
        let mut edge_index = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.name.clone(), i).is_some() {
                return Err(SpaceError::DuplicateEdge(e.name.clone()));
            }
            for pt in [&e.src, &e.dst] {
                if !point_set.contains(pt) {
                    return Err(SpaceError::UnknownEndpoint {
                        edge: e.name.clone(),
                        point: pt.clone(),
                    });
                }
            }
        }
        if !point_set.contains(&basepoint) {
            return Err(SpaceError::UnknownBasepoint(basepoint));
        }
        let mut space = SpacePresentation {
            points,
            edges,
            relators: Vec::new(),
            basepoint,
            edge_index,
            point_set,
        };
        for (index, rel) in relators.iter().enumerate() {
            space.check_relator_loop(index, rel)?;
        }
        space.relators = relators;
        Ok(space)
    }

    fn check_relator_loop(&self, index: usize, rel: &[RelatorLetter]) -> Result<(), SpaceError> {
        if rel.is_empty() {
            return Ok(());
        }
        let mut endpoints = Vec::with_capacity(rel.len());
        for (name, orient) in rel {
            let e = self
                .edge(name)
                .ok_or_else(|| SpaceError::RelatorUnknownEdge {
                    index,
                    edge: name.clone(),
                })?;
            endpoints.push(match orient {
                Orientation::Forward => (e.src.clone(), e.dst.clone()),
                Orientation::Reverse => (e.dst.clone(), e.src.clone()),
            });
        }
        for i in 0..endpoints.len() {
            let next = (i + 1) % endpoints.len();
            if endpoints[i].1 != endpoints[next].0 {
                return Err(SpaceError::RelatorNotLoop { index, letter: i });
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn edges(&self) -> &[EdgeDef] {
        &self.edges
    }

    pub fn relators(&self) -> &[Vec<RelatorLetter>] {
        &self.relators
    }

    pub fn basepoint(&self) -> &str {
        &self.basepoint
    }

    pub fn edge(&self, name: &str) -> Option<&EdgeDef> {
        self.edge_index.get(name).map(|&i| &self.edges[i])
    }

    pub fn has_point(&self, name: &str) -> bool {
        self.point_set.contains(name)
    }

    /// Endpoints of a single oriented edge letter.
    pub fn letter_endpoints(&self, name: &str, orient: Orientation) -> Option<(String, String)> {
        self.edge(name).map(|e| match orient {
            Orientation::Forward => (e.src.clone(), e.dst.clone()),
            Orientation::Reverse => (e.dst.clone(), e.src.clone()),
        })
    }

    /// Checks graph connectivity from the basepoint, ignoring orientation.
    pub fn check_connected(&self) -> Result<(), SpaceError> {
        let mut seen = BTreeSet::new();
        seen.insert(self.basepoint.clone());
        let mut queue = VecDeque::new();
        queue.push_back(self.basepoint.clone());
        while let Some(p) = queue.pop_front() {
            for e in &self.edges {
                for (a, b) in [(&e.src, &e.dst), (&e.dst, &e.src)] {
                    if a == &p && !seen.contains(b) {
                        seen.insert(b.clone());
                        queue.push_back(b.clone());
                    }
                }
            }
        }
        for p in &self.points {
            if !seen.contains(p) {
                return Err(SpaceError::NotConnected(p.clone()));
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        self.check_connected().is_ok()
    }

    /// The same space with a different basepoint.
    pub fn with_basepoint(&self, point: impl Into<String>) -> Result<Self, SpaceError> {
        let point = point.into();
        if !self.point_set.contains(&point) {
            return Err(SpaceError::UnknownBasepoint(point));
        }
        let mut out = self.clone();
        out.basepoint = point;
        Ok(out)
    }

    /// One point, `n` loop edges. Edges are named with single letters
    /// starting at `a` when `n <= 26`, otherwise `g0`, `g1`, ...
    pub fn rose(n: usize) -> SpacePresentation {
        let edges = (0..n)
            .map(|i| {
                let name = rose_edge_name(i, n);
                EdgeDef::new(name, "base", "base")
            })
            .collect();
        SpacePresentation::new(vec!["base".to_string()], edges, vec![], "base")
            .expect("rose presentation is always valid")
    }

    /// One point, no edges.
    pub fn point() -> SpacePresentation {
        SpacePresentation::new(vec!["pt".to_string()], vec![], vec![], "pt")
            .expect("point presentation is always valid")
    }

    /// The circle: one point, one loop edge named `loop`.
    pub fn circle() -> SpacePresentation {
        SpacePresentation::new(
            vec!["base".to_string()],
            vec![EdgeDef::new("loop", "base", "base")],
            vec![],
            "base",
        )
        .expect("circle presentation is always valid")
    }
}

pub(crate) fn rose_edge_name(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}
