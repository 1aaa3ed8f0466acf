//! Positioned rewrite steps and replayable derivations.
//!
//! A [`StepInstance`] names a rule, a subterm address, and a direction.
//! Applying it is a local rewrite: only the addressed subterm changes.
//! A [`Derivation`] is a sequence of steps from a source expression to a
//! target; replaying it checks every step and endpoint preservation.

use std::fmt;

use thiserror::Error;

use crate::expr::{PathError, PathExpr};
use crate::space::{Orientation, SpacePresentation};

/// The rule inventory of the groupoid rewrite system, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// inv(refl(a)) ~> refl(a)
    SymmRefl,
    /// inv(inv(p)) ~> p
    SymmSymm,
    /// (refl(a) . p) ~> p
    TransReflLeft,
    /// (p . refl(b)) ~> p
    TransReflRight,
    /// (p . inv(p)) ~> refl(a)
    TransSymm,
    /// (inv(p) . p) ~> refl(b)
    SymmTrans,
    /// inv(p . q) ~> (inv(q) . inv(p))
    SymmTransDistrib,
    /// ((p . q) . r) ~> (p . (q . r))
    TransAssoc,
    /// (p . (inv(p) . q)) ~> q
    CancelMidRight,
    /// (inv(p) . (p . q)) ~> q
    CancelMidLeft,
}

pub const ALL_RULES: [RuleId; 10] = [
    RuleId::SymmRefl,
    RuleId::SymmSymm,
    RuleId::TransReflLeft,
    RuleId::TransReflRight,
    RuleId::TransSymm,
    RuleId::SymmTrans,
    RuleId::SymmTransDistrib,
    RuleId::TransAssoc,
    RuleId::CancelMidRight,
    RuleId::CancelMidLeft,
];

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::SymmRefl => "symm_refl",
            RuleId::SymmSymm => "symm_symm",
            RuleId::TransReflLeft => "trans_refl_left",
            RuleId::TransReflRight => "trans_refl_right",
            RuleId::TransSymm => "trans_symm",
            RuleId::SymmTrans => "symm_trans",
            RuleId::SymmTransDistrib => "symm_trans_distrib",
            RuleId::TransAssoc => "trans_assoc",
            RuleId::CancelMidRight => "cancel_mid_right",
            RuleId::CancelMidLeft => "cancel_mid_left",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        ALL_RULES.iter().copied().find(|r| r.name() == name)
    }

    /// Rules whose forward application erases a subterm. Inverting such a
    /// step needs the erased redex supplied as a payload.
    pub fn erases_subterm(self) -> bool {
        matches!(
            self,
            RuleId::TransSymm | RuleId::SymmTrans | RuleId::CancelMidRight | RuleId::CancelMidLeft
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One move of a subterm address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosMove {
    /// Left child of a composition.
    Left,
    /// Right child of a composition.
    Right,
    /// Child of an inversion node.
    Under,
}

/// A subterm address: the empty position is the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Position(pub Vec<PosMove>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, m: PosMove) -> Position {
        let mut v = self.0.clone();
        v.push(m);
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|m| match m {
                PosMove::Left => "left",
                PosMove::Right => "right",
                PosMove::Under => "symm",
            })
            .collect();
        f.write_str(&parts.join("."))
    }
}

impl Position {
    pub fn parse(text: &str) -> Option<Position> {
        if text == "root" {
            return Some(Position::root());
        }
        let mut moves = Vec::new();
        for part in text.split('.') {
            moves.push(match part {
                "left" => PosMove::Left,
                "right" => PosMove::Right,
                "symm" => PosMove::Under,
                _ => return None,
            });
        }
        Some(Position(moves))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// A single positioned rule application.
///
/// `payload` carries the erased redex for backward applications of the
/// erasing rules (`trans_symm`, `symm_trans`, `cancel_mid_*`); it is ignored
/// in the forward direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepInstance {
    pub rule: RuleId,
    pub position: Position,
    pub direction: Direction,
    pub payload: Option<PathExpr>,
}

impl StepInstance {
    pub fn forward(rule: RuleId, position: Position) -> StepInstance {
        StepInstance {
            rule,
            position,
            direction: Direction::Forward,
            payload: None,
        }
    }

    pub fn backward(rule: RuleId, position: Position) -> StepInstance {
        StepInstance {
            rule,
            position,
            direction: Direction::Backward,
            payload: None,
        }
    }

    /// The reversal of a forward step that rewrote `before` to the
    /// corresponding contractum: flips the direction and records the redex
    /// subterm so replay restores the exact original spelling.
    pub fn flipped(&self, before_state: &PathExpr) -> StepInstance {
        match self.direction {
            Direction::Forward => StepInstance {
                rule: self.rule,
                position: self.position.clone(),
                direction: Direction::Backward,
                payload: subterm_at(before_state, &self.position),
            },
            Direction::Backward => StepInstance {
                rule: self.rule,
                position: self.position.clone(),
                direction: Direction::Forward,
                payload: None,
            },
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepError {
    #[error("position does not address a subterm")]
    BadPosition,
    #[error("rule {rule} does not match at {position}")]
    NoMatch { rule: RuleId, position: Position },
    #[error("backward {0} requires the erased subterm as payload")]
    MissingPayload(RuleId),
    #[error("endpoint computation failed: {0}")]
    Endpoints(#[from] PathError),
}

/// The subterm at a position. A reversed edge letter counts as the
/// inversion of the forward letter, so `Under` descends into it; this keeps
/// positions stable when a rewrite folds an inversion into the orientation
/// flag.
pub fn subterm_at(expr: &PathExpr, pos: &Position) -> Option<PathExpr> {
    let mut cur = expr.clone();
    for m in &pos.0 {
        cur = match (cur, m) {
            (PathExpr::Trans(l, _), PosMove::Left) => *l,
            (PathExpr::Trans(_, r), PosMove::Right) => *r,
            (PathExpr::Symm(c), PosMove::Under) => *c,
            (PathExpr::Edge(name, Orientation::Reverse), PosMove::Under) => {
                PathExpr::edge(name)
            }
            _ => return None,
        };
    }
    Some(cur)
}

/// Replaces the subterm at a position, with the same reversed-letter
/// unfolding as [`subterm_at`]. The result is not spelling-folded.
pub fn replace_at(expr: &PathExpr, pos: &Position, replacement: PathExpr) -> Option<PathExpr> {
    fn go(expr: &PathExpr, moves: &[PosMove], replacement: PathExpr) -> Option<PathExpr> {
        match moves.split_first() {
            None => Some(replacement),
            Some((m, rest)) => match (expr, m) {
                (PathExpr::Trans(l, r), PosMove::Left) => Some(PathExpr::Trans(
                    Box::new(go(l, rest, replacement)?),
                    r.clone(),
                )),
                (PathExpr::Trans(l, r), PosMove::Right) => Some(PathExpr::Trans(
                    l.clone(),
                    Box::new(go(r, rest, replacement)?),
                )),
                (PathExpr::Symm(c), PosMove::Under) => {
                    Some(PathExpr::Symm(Box::new(go(c, rest, replacement)?)))
                }
                (PathExpr::Edge(name, Orientation::Reverse), PosMove::Under) => Some(
                    PathExpr::Symm(Box::new(go(&PathExpr::edge(name.clone()), rest, replacement)?)),
                ),
                _ => None,
            },
        }
    }
    go(expr, &pos.0, replacement)
}

/// Is `r` spelled as the inversion of `l`? Either a literal `Symm(l)`, or —
/// when `l` is a forward edge letter — the same letter with the reverse
/// orientation flag. The relation is deliberately asymmetric: a reversed
/// edge is the inversion of the forward one, never the other way around.
pub fn is_inverse_of(l: &PathExpr, r: &PathExpr) -> bool {
    if let PathExpr::Symm(inner) = r {
        if inner.as_ref() == l {
            return true;
        }
    }
    if let (PathExpr::Edge(en, Orientation::Forward), PathExpr::Edge(rn, Orientation::Reverse)) =
        (l, r)
    {
        if en == rn {
            return true;
        }
    }
    false
}

/// The inversion of `p` in canonical spelling: a forward edge becomes the
/// reversed letter, everything else gets a `Symm` wrapper. Used by rule
/// contracta so that letters stay letters.
pub fn canonical_inverse(p: &PathExpr) -> PathExpr {
    match p {
        PathExpr::Edge(name, Orientation::Forward) => {
            PathExpr::Edge(name.clone(), Orientation::Reverse)
        }
        other => PathExpr::Symm(Box::new(other.clone())),
    }
}

/// Forward match of `rule` against `sub`; returns the contractum.
pub fn match_forward(
    space: &SpacePresentation,
    rule: RuleId,
    sub: &PathExpr,
) -> Result<Option<PathExpr>, PathError> {
    Ok(match rule {
        RuleId::SymmRefl => match sub {
            PathExpr::Symm(c) => match c.as_ref() {
                PathExpr::Refl(a) => Some(PathExpr::refl(a)),
                _ => None,
            },
            _ => None,
        },
        RuleId::SymmSymm => match sub {
            // The inner inversion may be spelled as a Symm node or as a
            // reversed edge letter.
            PathExpr::Symm(c) => match c.as_ref() {
                PathExpr::Symm(inner) => Some(inner.as_ref().clone()),
                PathExpr::Edge(name, Orientation::Reverse) => Some(PathExpr::edge(name.clone())),
                _ => None,
            },
            _ => None,
        },
        RuleId::TransReflLeft => match sub {
            PathExpr::Trans(l, r) => match l.as_ref() {
                PathExpr::Refl(_) => Some(r.as_ref().clone()),
                _ => None,
            },
            _ => None,
        },
        RuleId::TransReflRight => match sub {
            PathExpr::Trans(l, r) => match r.as_ref() {
                PathExpr::Refl(_) => Some(l.as_ref().clone()),
                _ => None,
            },
            _ => None,
        },
        RuleId::TransSymm => match sub {
            PathExpr::Trans(l, r) if is_inverse_of(l, r) => {
                let (src, _) = l.endpoints(space)?;
                Some(PathExpr::refl(src))
            }
            _ => None,
        },
        RuleId::SymmTrans => match sub {
            PathExpr::Trans(l, r) if is_inverse_of(r, l) => {
                let (_, dst) = r.endpoints(space)?;
                Some(PathExpr::refl(dst))
            }
            _ => None,
        },
        RuleId::SymmTransDistrib => match sub {
            PathExpr::Symm(c) => match c.as_ref() {
                PathExpr::Trans(p, q) => {
                    Some(canonical_inverse(q).trans(canonical_inverse(p)))
                }
                _ => None,
            },
            _ => None,
        },
        RuleId::TransAssoc => match sub {
            PathExpr::Trans(l, r) => match l.as_ref() {
                PathExpr::Trans(p, q) => Some(
                    p.as_ref()
                        .clone()
                        .trans(q.as_ref().clone().trans(r.as_ref().clone())),
                ),
                _ => None,
            },
            _ => None,
        },
        RuleId::CancelMidRight => match sub {
            PathExpr::Trans(l, r) => match r.as_ref() {
                PathExpr::Trans(m, q) if is_inverse_of(l, m) => Some(q.as_ref().clone()),
                _ => None,
            },
            _ => None,
        },
        RuleId::CancelMidLeft => match sub {
            PathExpr::Trans(l, r) => match r.as_ref() {
                PathExpr::Trans(m, q) if is_inverse_of(m, l) => Some(q.as_ref().clone()),
                _ => None,
            },
            _ => None,
        },
    })
}

/// Backward match: rewrites a contractum occurrence back to the redex.
///
/// When a payload (the claimed redex) is present it is checked by running
/// the rule forward and used verbatim; this is how flipped witness steps
/// replay exactly. Without a payload, non-erasing rules invert
/// deterministically and erasing rules fail.
fn match_backward(
    space: &SpacePresentation,
    rule: RuleId,
    sub: &PathExpr,
    payload: Option<&PathExpr>,
) -> Result<Option<PathExpr>, StepError> {
    if let Some(redex) = payload {
        return match match_forward(space, rule, redex)? {
            Some(contractum) if &contractum == sub => Ok(Some(redex.clone())),
            _ => Ok(None),
        };
    }
    if rule.erases_subterm() {
        return Err(StepError::MissingPayload(rule));
    }
    Ok(match rule {
        RuleId::SymmRefl => match sub {
            PathExpr::Refl(_) => Some(sub.clone().symm()),
            _ => None,
        },
        RuleId::SymmSymm => Some(sub.clone().symm().symm()),
        RuleId::TransReflLeft => {
            let (src, _) = sub.endpoints(space)?;
            Some(PathExpr::refl(src).trans(sub.clone()))
        }
        RuleId::TransReflRight => {
            let (_, dst) = sub.endpoints(space)?;
            Some(sub.clone().trans(PathExpr::refl(dst)))
        }
        RuleId::SymmTransDistrib => match sub {
            // Matches (inv(q) . inv(p)) in either inverse spelling.
            PathExpr::Trans(l, r) => match (as_inversion(l), as_inversion(r)) {
                (Some(q), Some(p)) => Some(p.trans(q).symm()),
                _ => None,
            },
            _ => None,
        },
        RuleId::TransAssoc => match sub {
            PathExpr::Trans(p, rest) => match rest.as_ref() {
                PathExpr::Trans(q, r) => Some(
                    p.as_ref()
                        .clone()
                        .trans(q.as_ref().clone())
                        .trans(r.as_ref().clone()),
                ),
                _ => None,
            },
            _ => None,
        },
        _ => unreachable!("erasing rules handled above"),
    })
}

/// If `p` is spelled as an inversion, returns the inverted operand.
fn as_inversion(p: &PathExpr) -> Option<PathExpr> {
    match p {
        PathExpr::Symm(c) => Some(c.as_ref().clone()),
        PathExpr::Edge(name, Orientation::Reverse) => Some(PathExpr::edge(name.clone())),
        _ => None,
    }
}

/// Applies one step at its position: every subterm disjoint from it is
/// untouched. The result is spelling-folded (an inversion directly over a
/// forward letter becomes the reversed letter), so steps applied to
/// spelling-canonical expressions stay spelling-canonical.
pub fn apply_step(
    space: &SpacePresentation,
    expr: &PathExpr,
    step: &StepInstance,
) -> Result<PathExpr, StepError> {
    let sub = subterm_at(expr, &step.position).ok_or(StepError::BadPosition)?;
    let rewritten = match step.direction {
        Direction::Forward => match_forward(space, step.rule, &sub)?,
        Direction::Backward => match_backward(space, step.rule, &sub, step.payload.as_ref())?,
    };
    let rewritten = rewritten.ok_or_else(|| StepError::NoMatch {
        rule: step.rule,
        position: step.position.clone(),
    })?;
    let replaced = replace_at(expr, &step.position, rewritten).ok_or(StepError::BadPosition)?;
    Ok(replaced.canonicalize())
}

/// A replayable trace: applying `steps` in order to `source` must produce
/// `target`, preserving endpoints at every intermediate expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub source: PathExpr,
    pub target: PathExpr,
    pub steps: Vec<StepInstance>,
}

impl Derivation {
    pub fn identity(expr: PathExpr) -> Derivation {
        Derivation {
            source: expr.clone(),
            target: expr,
            steps: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("step {index} failed: {source}")]
    StepFailed {
        index: usize,
        #[source]
        source: StepError,
    },
    #[error("step {index} changed endpoints from ({from_src}, {from_dst}) to ({to_src}, {to_dst})")]
    EndpointsChanged {
        index: usize,
        from_src: String,
        from_dst: String,
        to_src: String,
        to_dst: String,
    },
    #[error("replay of all steps produced an expression different from the recorded target")]
    TargetMismatch,
    #[error("source endpoints are ill-formed: {0}")]
    BadSource(#[from] PathError),
}

/// Replays a derivation and returns the final expression, enforcing that it
/// equals the recorded target with endpoints preserved throughout.
pub fn replay_derivation(
    space: &SpacePresentation,
    d: &Derivation,
) -> Result<PathExpr, ReplayError> {
    let mut state = d.source.clone();
    let mut endpoints = state.endpoints(space)?;
    for (index, step) in d.steps.iter().enumerate() {
        let next = apply_step(space, &state, step)
            .map_err(|source| ReplayError::StepFailed { index, source })?;
        let next_endpoints = next.endpoints(space)?;
        if next_endpoints != endpoints {
            return Err(ReplayError::EndpointsChanged {
                index,
                from_src: endpoints.0,
                from_dst: endpoints.1,
                to_src: next_endpoints.0,
                to_dst: next_endpoints.1,
            });
        }
        state = next;
        endpoints = next_endpoints;
    }
    if state != d.target {
        return Err(ReplayError::TargetMismatch);
    }
    Ok(state)
}

/// All (position, rule) pairs applicable in the forward direction, in
/// leftmost-innermost traversal order with rules in priority order.
pub fn applicable_steps(
    space: &SpacePresentation,
    expr: &PathExpr,
    rules: &[RuleId],
) -> Vec<(Position, RuleId)> {
    let mut out = Vec::new();
    collect_applicable(space, expr, rules, &Position::root(), &mut out);
    out
}

fn collect_applicable(
    space: &SpacePresentation,
    expr: &PathExpr,
    rules: &[RuleId],
    pos: &Position,
    out: &mut Vec<(Position, RuleId)>,
) {
    match expr {
        PathExpr::Trans(l, r) => {
            collect_applicable(space, l, rules, &pos.child(PosMove::Left), out);
            collect_applicable(space, r, rules, &pos.child(PosMove::Right), out);
        }
        PathExpr::Symm(c) => {
            collect_applicable(space, c, rules, &pos.child(PosMove::Under), out);
        }
        _ => {}
    }
    for &rule in rules {
        if matches!(match_forward(space, rule, expr), Ok(Some(_))) {
            out.push((pos.clone(), rule));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SpacePresentation {
        SpacePresentation::circle()
    }

    fn loop_e() -> PathExpr {
        PathExpr::edge("loop")
    }

    #[test]
    fn symm_symm_forward_at_root() {
        let expr = loop_e().symm().symm();
        let step = StepInstance::forward(RuleId::SymmSymm, Position::root());
        assert_eq!(apply_step(&circle(), &expr, &step).unwrap(), loop_e());
    }

    #[test]
    fn trans_refl_left_forward() {
        let expr = PathExpr::refl("base").trans(loop_e());
        let step = StepInstance::forward(RuleId::TransReflLeft, Position::root());
        assert_eq!(apply_step(&circle(), &expr, &step).unwrap(), loop_e());
    }

    #[test]
    fn symm_symm_backward_restores_double_inverse() {
        // The double inverse of a letter is spelled with the inner
        // inversion folded into the orientation flag; it displays as
        // inv(inv(loop)) and reduces back to loop by symm_symm.
        let step = StepInstance::backward(RuleId::SymmSymm, Position::root());
        let out = apply_step(&circle(), &loop_e(), &step).unwrap();
        assert_eq!(out, PathExpr::edge_rev("loop").symm());
        assert_eq!(out.to_string(), "inv(inv(loop))");
        let fwd = StepInstance::forward(RuleId::SymmSymm, Position::root());
        assert_eq!(apply_step(&circle(), &out, &fwd).unwrap(), loop_e());
    }

    #[test]
    fn trans_symm_matches_both_inverse_spellings() {
        let space = circle();
        let step = StepInstance::forward(RuleId::TransSymm, Position::root());
        for rhs in [loop_e().symm(), PathExpr::edge_rev("loop")] {
            let expr = loop_e().trans(rhs);
            assert_eq!(
                apply_step(&space, &expr, &step).unwrap(),
                PathExpr::refl("base")
            );
        }
    }

    #[test]
    fn backward_erasing_rule_needs_payload() {
        let space = circle();
        let refl = PathExpr::refl("base");
        let bare = StepInstance::backward(RuleId::TransSymm, Position::root());
        assert!(matches!(
            apply_step(&space, &refl, &bare),
            Err(StepError::MissingPayload(RuleId::TransSymm))
        ));
        let redex = loop_e().trans(PathExpr::edge_rev("loop"));
        let step = StepInstance {
            payload: Some(redex.clone()),
            ..bare
        };
        assert_eq!(apply_step(&space, &refl, &step).unwrap(), redex);
    }

    #[test]
    fn apply_step_is_local() {
        let space = circle();
        // (loop . (refl . loop)) -- rewrite only the right child.
        let expr = loop_e().trans(PathExpr::refl("base").trans(loop_e()));
        let step = StepInstance::forward(
            RuleId::TransReflLeft,
            Position(vec![PosMove::Right]),
        );
        let out = apply_step(&space, &expr, &step).unwrap();
        assert_eq!(out, loop_e().trans(loop_e()));
    }

    #[test]
    fn bad_position_is_reported() {
        let step = StepInstance::forward(RuleId::SymmSymm, Position(vec![PosMove::Left]));
        assert!(matches!(
            apply_step(&circle(), &loop_e(), &step),
            Err(StepError::BadPosition)
        ));
    }

    #[test]
    fn replay_empty_derivation() {
        let d = Derivation::identity(loop_e());
        assert_eq!(replay_derivation(&circle(), &d).unwrap(), loop_e());
    }

    #[test]
    fn replay_two_step_cancellation() {
        // (p . (q . inv(q))) -> (p . refl) -> p with p = q = loop.
        let space = circle();
        let source = loop_e().trans(loop_e().trans(loop_e().symm()));
        let d = Derivation {
            source,
            target: loop_e(),
            steps: vec![
                StepInstance::forward(RuleId::TransSymm, Position(vec![PosMove::Right])),
                StepInstance::forward(RuleId::TransReflRight, Position::root()),
            ],
        };
        assert_eq!(replay_derivation(&space, &d).unwrap(), loop_e());
    }

    #[test]
    fn replay_detects_target_mismatch() {
        let d = Derivation {
            source: loop_e(),
            target: PathExpr::refl("base"),
            steps: vec![],
        };
        assert!(matches!(
            replay_derivation(&circle(), &d),
            Err(ReplayError::TargetMismatch)
        ));
    }
}
