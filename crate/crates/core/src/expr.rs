//! Path expressions: syntax trees of reflexivity, oriented edges, inversion
//! and composition, typed by their endpoints in a space presentation.
//!
//! Construction is purely syntactic; no rewriting happens here. The inverse
//! of an edge has two accepted spellings, `Symm(Edge(e, Forward))` and
//! `Edge(e, Reverse)`; [`PathExpr::canonicalize`] folds the former into the
//! latter, which is the spelling the rewrite engine works with.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::space::{Orientation, SpacePresentation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathExpr {
    /// The constant path at a point.
    Refl(String),
    /// A single edge letter, traversed forward or in reverse.
    Edge(String, Orientation),
    /// Path inversion.
    Symm(Box<PathExpr>),
    /// Path composition; left endpoint's target must equal right's source.
    Trans(Box<PathExpr>, Box<PathExpr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("ill-composed: left path ends at `{left_dst}` but right path starts at `{right_src}`")]
    IllComposed { left_dst: String, right_src: String },
}

impl PathExpr {
    pub fn refl(point: impl Into<String>) -> PathExpr {
        PathExpr::Refl(point.into())
    }

    pub fn edge(name: impl Into<String>) -> PathExpr {
        PathExpr::Edge(name.into(), Orientation::Forward)
    }

    pub fn edge_rev(name: impl Into<String>) -> PathExpr {
        PathExpr::Edge(name.into(), Orientation::Reverse)
    }

    pub fn symm(self) -> PathExpr {
        PathExpr::Symm(Box::new(self))
    }

    pub fn trans(self, right: PathExpr) -> PathExpr {
        PathExpr::Trans(Box::new(self), Box::new(right))
    }

    pub fn node_count(&self) -> usize {
        match self {
            PathExpr::Refl(_) | PathExpr::Edge(..) => 1,
            PathExpr::Symm(c) => 1 + c.node_count(),
            PathExpr::Trans(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            PathExpr::Refl(_) | PathExpr::Edge(..) => 1,
            PathExpr::Symm(c) => 1 + c.height(),
            PathExpr::Trans(l, r) => 1 + l.height().max(r.height()),
        }
    }

    /// Folds every `Symm` that sits directly over a forward edge letter into
    /// the reverse orientation flag. Idempotent. An inversion of a reversed
    /// letter is left alone; the rewrite rules reduce it.
    pub fn canonicalize(&self) -> PathExpr {
        match self {
            PathExpr::Refl(_) | PathExpr::Edge(..) => self.clone(),
            PathExpr::Symm(c) => match c.canonicalize() {
                PathExpr::Edge(name, Orientation::Forward) => {
                    PathExpr::Edge(name, Orientation::Reverse)
                }
                other => PathExpr::Symm(Box::new(other)),
            },
            PathExpr::Trans(l, r) => {
                PathExpr::Trans(Box::new(l.canonicalize()), Box::new(r.canonicalize()))
            }
        }
    }

    /// (source, target) of the expression, or an error for unknown edges,
    /// unknown points, or a mid-point mismatch in a composition.
    pub fn endpoints(&self, space: &SpacePresentation) -> Result<(String, String), PathError> {
        match self {
            PathExpr::Refl(p) => {
                if space.has_point(p) {
                    Ok((p.clone(), p.clone()))
                } else {
                    Err(PathError::UnknownPoint(p.clone()))
                }
            }
            PathExpr::Edge(name, orient) => space
                .letter_endpoints(name, *orient)
                .ok_or_else(|| PathError::UnknownEdge(name.clone())),
            PathExpr::Symm(c) => {
                let (s, t) = c.endpoints(space)?;
                Ok((t, s))
            }
            PathExpr::Trans(l, r) => {
                let (ls, lt) = l.endpoints(space)?;
                let (rs, rt) = r.endpoints(space)?;
                if lt != rs {
                    return Err(PathError::IllComposed {
                        left_dst: lt,
                        right_src: rs,
                    });
                }
                Ok((ls, rt))
            }
        }
    }

    pub fn is_loop_at(&self, space: &SpacePresentation, point: &str) -> bool {
        matches!(self.endpoints(space), Ok((s, t)) if s == t && s == point)
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathExpr::Refl(p) => write!(f, "refl({p})"),
            PathExpr::Edge(name, Orientation::Forward) => write!(f, "{name}"),
            PathExpr::Edge(name, Orientation::Reverse) => write!(f, "inv({name})"),
            PathExpr::Symm(c) => write!(f, "inv({c})"),
            PathExpr::Trans(l, r) => write!(f, "({l} . {r})"),
        }
    }
}

/// Syntactic composition; checks that the endpoints meet.
pub fn compose(
    space: &SpacePresentation,
    p: PathExpr,
    q: PathExpr,
) -> Result<PathExpr, PathError> {
    let (_, p_dst) = p.endpoints(space)?;
    let (q_src, _) = q.endpoints(space)?;
    if p_dst != q_src {
        return Err(PathError::IllComposed {
            left_dst: p_dst,
            right_src: q_src,
        });
    }
    Ok(p.trans(q))
}

/// Syntactic inversion; no reduction is performed.
pub fn invert(p: PathExpr) -> PathExpr {
    p.symm()
}

pub fn refl_at(point: impl Into<String>) -> PathExpr {
    PathExpr::refl(point)
}

/// Moves a loop at the source of `gamma` to a loop at its target:
/// `inv(gamma) . (alpha . gamma)`.
pub fn change_basepoint(
    space: &SpacePresentation,
    gamma: &PathExpr,
    alpha: &PathExpr,
) -> Result<PathExpr, PathError> {
    let (g_src, _g_dst) = gamma.endpoints(space)?;
    let (a_src, a_dst) = alpha.endpoints(space)?;
    if a_src != a_dst || a_src != g_src {
        return Err(PathError::IllComposed {
            left_dst: a_dst,
            right_src: g_src,
        });
    }
    Ok(gamma
        .clone()
        .symm()
        .trans(alpha.clone().trans(gamma.clone())))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("point `{0}` has no image")]
    MissingPoint(String),
    #[error("edge `{0}` has no image")]
    MissingEdge(String),
    #[error("image of point `{point}` is `{image}`, not a point of the target space")]
    BadPointImage { point: String, image: String },
    #[error("image of edge `{edge}` has endpoints ({got_src}, {got_dst}), expected ({want_src}, {want_dst})")]
    BadEdgeImage {
        edge: String,
        got_src: String,
        got_dst: String,
        want_src: String,
        want_dst: String,
    },
    #[error("edge image is ill-formed: {0}")]
    IllFormedImage(#[from] PathError),
}

/// A map of presentations: points to points, edges to path expressions in
/// the target space with matching endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMap {
    point_map: BTreeMap<String, String>,
    edge_map: BTreeMap<String, PathExpr>,
}

impl ComplexMap {
    pub fn new(
        source: &SpacePresentation,
        target: &SpacePresentation,
        point_map: BTreeMap<String, String>,
        edge_map: BTreeMap<String, PathExpr>,
    ) -> Result<Self, MapError> {
        for p in source.points() {
            let image = point_map
                .get(p)
                .ok_or_else(|| MapError::MissingPoint(p.clone()))?;
            if !target.has_point(image) {
                return Err(MapError::BadPointImage {
                    point: p.clone(),
                    image: image.clone(),
                });
            }
        }
        for e in source.edges() {
            let image = edge_map
                .get(&e.name)
                .ok_or_else(|| MapError::MissingEdge(e.name.clone()))?;
            let (got_src, got_dst) = image.endpoints(target)?;
            let want_src = point_map[&e.src].clone();
            let want_dst = point_map[&e.dst].clone();
            if got_src != want_src || got_dst != want_dst {
                return Err(MapError::BadEdgeImage {
                    edge: e.name.clone(),
                    got_src,
                    got_dst,
                    want_src,
                    want_dst,
                });
            }
        }
        Ok(ComplexMap {
            point_map,
            edge_map,
        })
    }

    /// The identity map of a space.
    pub fn identity(space: &SpacePresentation) -> ComplexMap {
        let point_map = space
            .points()
            .iter()
            .map(|p| (p.clone(), p.clone()))
            .collect();
        let edge_map = space
            .edges()
            .iter()
            .map(|e| (e.name.clone(), PathExpr::edge(&e.name)))
            .collect();
        ComplexMap {
            point_map,
            edge_map,
        }
    }

    /// The constant map collapsing everything to one target point.
    pub fn collapse_to(space: &SpacePresentation, point: impl Into<String>) -> ComplexMap {
        let point = point.into();
        let point_map = space
            .points()
            .iter()
            .map(|p| (p.clone(), point.clone()))
            .collect();
        let edge_map = space
            .edges()
            .iter()
            .map(|e| (e.name.clone(), PathExpr::refl(&point)))
            .collect();
        ComplexMap {
            point_map,
            edge_map,
        }
    }

    pub fn point_image(&self, point: &str) -> Option<&str> {
        self.point_map.get(point).map(|s| s.as_str())
    }

    pub fn edge_image(&self, edge: &str) -> Option<&PathExpr> {
        self.edge_map.get(edge)
    }

    /// Structure-preserving substitution of an expression along the map.
    /// A reversed edge letter maps to the inverted image.
    pub fn map_path(&self, expr: &PathExpr) -> Result<PathExpr, PathError> {
        match expr {
            PathExpr::Refl(p) => {
                let image = self
                    .point_map
                    .get(p)
                    .ok_or_else(|| PathError::UnknownPoint(p.clone()))?;
                Ok(PathExpr::refl(image))
            }
            PathExpr::Edge(name, orient) => {
                let image = self
                    .edge_map
                    .get(name)
                    .ok_or_else(|| PathError::UnknownEdge(name.clone()))?;
                Ok(match orient {
                    Orientation::Forward => image.clone(),
                    Orientation::Reverse => image.clone().symm(),
                })
            }
            PathExpr::Symm(c) => Ok(self.map_path(c)?.symm()),
            PathExpr::Trans(l, r) => Ok(self.map_path(l)?.trans(self.map_path(r)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::EdgeDef;

    fn two_point_space() -> SpacePresentation {
        SpacePresentation::new(
            vec!["a".into(), "b".into()],
            vec![EdgeDef::new("e", "a", "b")],
            vec![],
            "a",
        )
        .unwrap()
    }

    #[test]
    fn endpoints_refl() {
        let circle = SpacePresentation::circle();
        let (s, t) = PathExpr::refl("base").endpoints(&circle).unwrap();
        assert_eq!((s.as_str(), t.as_str()), ("base", "base"));
    }

    #[test]
    fn endpoints_double_loop() {
        let circle = SpacePresentation::circle();
        let expr = PathExpr::edge("loop").trans(PathExpr::edge("loop"));
        let (s, t) = expr.endpoints(&circle).unwrap();
        assert_eq!((s.as_str(), t.as_str()), ("base", "base"));
    }

    #[test]
    fn endpoints_symm_swaps() {
        let space = two_point_space();
        let expr = PathExpr::edge("e").symm();
        let (s, t) = expr.endpoints(&space).unwrap();
        assert_eq!((s.as_str(), t.as_str()), ("b", "a"));
    }

    #[test]
    fn ill_composed_is_reported() {
        let space = two_point_space();
        let expr = PathExpr::edge("e").trans(PathExpr::edge("e"));
        assert!(matches!(
            expr.endpoints(&space),
            Err(PathError::IllComposed { .. })
        ));
    }

    #[test]
    fn compose_and_invert_are_syntactic() {
        let circle = SpacePresentation::circle();
        let loop_e = PathExpr::edge("loop");
        let composed = compose(&circle, loop_e.clone(), invert(loop_e.clone())).unwrap();
        assert_eq!(
            composed,
            PathExpr::Trans(
                Box::new(loop_e.clone()),
                Box::new(PathExpr::Symm(Box::new(loop_e.clone())))
            )
        );
        // Double inversion stays un-reduced.
        assert_eq!(
            invert(invert(loop_e.clone())),
            PathExpr::Symm(Box::new(PathExpr::Symm(Box::new(loop_e.clone()))))
        );
        let with_refl = compose(&circle, PathExpr::refl("base"), loop_e.clone()).unwrap();
        assert_eq!(
            with_refl,
            PathExpr::Trans(Box::new(PathExpr::refl("base")), Box::new(loop_e))
        );
    }

    #[test]
    fn canonicalize_folds_symm_over_forward_edge() {
        let e = PathExpr::edge("loop");
        assert_eq!(e.clone().symm().canonicalize(), PathExpr::edge_rev("loop"));
        // The double inversion keeps one Symm wrapper; symm_symm reduces it.
        assert_eq!(
            e.clone().symm().symm().canonicalize(),
            PathExpr::edge_rev("loop").symm()
        );
        let nested = PathExpr::refl("base").trans(PathExpr::edge("loop").symm());
        assert_eq!(
            nested.canonicalize(),
            PathExpr::refl("base").trans(PathExpr::edge_rev("loop"))
        );
    }

    #[test]
    fn collapse_map_sends_loop_to_refl() {
        let circle = SpacePresentation::circle();
        let pt = SpacePresentation::point();
        let m = ComplexMap::collapse_to(&circle, "pt");
        // Valid as a map circle -> point.
        assert!(ComplexMap::new(
            &circle,
            &pt,
            circle
                .points()
                .iter()
                .map(|p| (p.clone(), "pt".to_string()))
                .collect(),
            circle
                .edges()
                .iter()
                .map(|e| (e.name.clone(), PathExpr::refl("pt")))
                .collect(),
        )
        .is_ok());
        assert_eq!(m.map_path(&PathExpr::edge("loop")).unwrap(), PathExpr::refl("pt"));
    }

    #[test]
    fn identity_map_is_identity() {
        let circle = SpacePresentation::circle();
        let id = ComplexMap::identity(&circle);
        let expr = PathExpr::edge("loop")
            .trans(PathExpr::edge("loop").symm())
            .trans(PathExpr::refl("base"));
        assert_eq!(id.map_path(&expr).unwrap(), expr);
    }
}
