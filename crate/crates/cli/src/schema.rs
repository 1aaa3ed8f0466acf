//! JSON file schemas: space presentations and pushout gluing specs.
//!
//! A relator letter is an edge name, optionally suffixed `^-1`. Pushout map
//! files give point images as strings and edge images as path-expression
//! text over the target space.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use pi1_core::expr::ComplexMap;
use pi1_core::pushout::PushoutSpec;
use pi1_core::space::{EdgeDef, Orientation, RelatorLetter, SpacePresentation};

use crate::exprtext::parse_path_expr;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub edges: Vec<EdgeFile>,
    #[serde(default)]
    pub relators: Vec<Vec<String>>,
    pub basepoint: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeFile {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub points: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PushoutFile {
    pub a: SpaceFile,
    pub b: SpaceFile,
    pub c: SpaceFile,
    pub f: MapFile,
    pub g: MapFile,
    pub c0: String,
}

fn parse_letter(text: &str) -> RelatorLetter {
    match text.strip_suffix("^-1") {
        Some(name) => (name.to_string(), Orientation::Reverse),
        None => (text.to_string(), Orientation::Forward),
    }
}

fn print_letter(letter: &RelatorLetter) -> String {
    match letter.1 {
        Orientation::Forward => letter.0.clone(),
        Orientation::Reverse => format!("{}^-1", letter.0),
    }
}

impl SpaceFile {
    pub fn to_space(&self) -> Result<SpacePresentation, String> {
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeDef::new(&e.name, &e.src, &e.dst))
            .collect();
        let relators = self
            .relators
            .iter()
            .map(|r| r.iter().map(|l| parse_letter(l)).collect())
            .collect();
        SpacePresentation::new(self.points.clone(), edges, relators, &self.basepoint)
            .map_err(|e| e.to_string())
    }

    pub fn from_space(space: &SpacePresentation) -> SpaceFile {
        SpaceFile {
            points: space.points().to_vec(),
            edges: space
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    name: e.name.clone(),
                    src: e.src.clone(),
                    dst: e.dst.clone(),
                })
                .collect(),
            relators: space
                .relators()
                .iter()
                .map(|r| r.iter().map(print_letter).collect())
                .collect(),
            basepoint: space.basepoint().to_string(),
        }
    }
}

impl MapFile {
    pub fn to_map(
        &self,
        source: &SpacePresentation,
        target: &SpacePresentation,
    ) -> Result<ComplexMap, String> {
        let mut edge_map = BTreeMap::new();
        for (edge, text) in &self.edges {
            let expr = parse_path_expr(text, target)
                .map_err(|e| format!("image of edge `{edge}`: {e}"))?;
            edge_map.insert(edge.clone(), expr);
        }
        ComplexMap::new(source, target, self.points.clone(), edge_map).map_err(|e| e.to_string())
    }
}

impl PushoutFile {
    pub fn to_spec(&self) -> Result<PushoutSpec, String> {
        let a = self.a.to_space()?;
        let b = self.b.to_space()?;
        let c = self.c.to_space()?;
        let f = self.f.to_map(&c, &a)?;
        let g = self.g.to_map(&c, &b)?;
        Ok(PushoutSpec {
            a,
            b,
            c,
            f,
            g,
            c0: self.c0.clone(),
        })
    }
}
