//! Trace-producing normalization under the groupoid rule set, the rewrite
//! equality decision procedure, and the termination measure.
//!
//! The strategy is leftmost-innermost with the fixed rule priority of
//! [`ALL_RULES`], so traces and normal forms are deterministic.

use thiserror::Error;

use crate::expr::{PathError, PathExpr};
use crate::space::{Orientation, SpacePresentation};
use crate::step::{
    apply_step, match_forward, Derivation, PosMove, Position, RuleId, StepInstance, ALL_RULES,
};

/// An ordered inventory of rewrite rules. Order fixes rule priority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<RuleId>,
}

impl RuleSet {
    pub fn full() -> RuleSet {
        RuleSet {
            rules: ALL_RULES.to_vec(),
        }
    }

    pub fn empty() -> RuleSet {
        RuleSet { rules: Vec::new() }
    }

    /// The full inventory minus one rule; used by the confluence negative
    /// control.
    pub fn without(rule: RuleId) -> RuleSet {
        RuleSet {
            rules: ALL_RULES.iter().copied().filter(|&r| r != rule).collect(),
        }
    }

    pub fn rules(&self) -> &[RuleId] {
        &self.rules
    }

    pub fn contains(&self, rule: RuleId) -> bool {
        self.rules.contains(&rule)
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::full()
    }
}

/// Redex search order. Both strategies reach the same normal form; the
/// rightmost variant exists to test exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInnermost,
    RightmostInnermost,
}

/// An irreducible expression: `refl` or a right-associated chain of edge
/// letters with no adjacent mutually-inverse letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm(PathExpr);

impl NormalForm {
    pub fn expr(&self) -> &PathExpr {
        &self.0
    }

    pub fn into_expr(self) -> PathExpr {
        self.0
    }

    /// The letter sequence of the normal form; empty for `refl`.
    pub fn letters(&self) -> Vec<(String, Orientation)> {
        let mut out = Vec::new();
        collect_letters(&self.0, false, &mut out);
        out
    }
}

fn collect_letters(expr: &PathExpr, flip: bool, out: &mut Vec<(String, Orientation)>) {
    match expr {
        PathExpr::Refl(_) => {}
        PathExpr::Edge(name, orient) => {
            let o = if flip { orient.flip() } else { *orient };
            out.push((name.clone(), o));
        }
        PathExpr::Symm(c) => collect_letters(c, !flip, out),
        PathExpr::Trans(l, r) => {
            if flip {
                collect_letters(r, true, out);
                collect_letters(l, true, out);
            } else {
                collect_letters(l, false, out);
                collect_letters(r, false, out);
            }
        }
    }
}

fn find_redex(
    space: &SpacePresentation,
    expr: &PathExpr,
    rules: &RuleSet,
    strategy: Strategy,
    pos: &Position,
) -> Option<(Position, RuleId)> {
    let children: [Option<(PosMove, &PathExpr)>; 2] = match expr {
        PathExpr::Trans(l, r) => [Some((PosMove::Left, l)), Some((PosMove::Right, r))],
        PathExpr::Symm(c) => [Some((PosMove::Under, c)), None],
        _ => [None, None],
    };
    let ordered: Vec<(PosMove, &PathExpr)> = match strategy {
        Strategy::LeftmostInnermost => children.into_iter().flatten().collect(),
        Strategy::RightmostInnermost => children.into_iter().flatten().rev().collect(),
    };
    for (m, child) in ordered {
        if let Some(hit) = find_redex(space, child, rules, strategy, &pos.child(m)) {
            return Some(hit);
        }
    }
    for &rule in rules.rules() {
        if matches!(match_forward(space, rule, expr), Ok(Some(_))) {
            return Some((pos.clone(), rule));
        }
    }
    None
}

/// Normalizes an expression, returning its normal form and the derivation
/// that witnesses it.
///
/// The derivation's source is the orientation-canonical spelling of `expr`
/// (inversions of single edges folded into the orientation flag); for input
/// already in that spelling, source equals `expr`.
pub fn normalize(
    space: &SpacePresentation,
    expr: &PathExpr,
) -> Result<(NormalForm, Derivation), PathError> {
    normalize_with(space, expr, &RuleSet::full(), Strategy::LeftmostInnermost)
}

pub fn normalize_with(
    space: &SpacePresentation,
    expr: &PathExpr,
    rules: &RuleSet,
    strategy: Strategy,
) -> Result<(NormalForm, Derivation), PathError> {
    let source = expr.canonicalize();
    source.endpoints(space)?;
    match strategy {
        Strategy::LeftmostInnermost => {
            // Single bottom-up pass: children are normalized before their
            // parent, and after a root rewrite only the freshly built spine
            // is re-settled. Step order equals the leftmost-innermost,
            // priority-ordered strategy.
            let mut steps = Vec::new();
            let mut prefix = Vec::new();
            let nf = norm_full(space, rules, source.clone(), &mut prefix, &mut steps);
            let derivation = Derivation {
                source,
                target: nf.clone(),
                steps,
            };
            Ok((NormalForm(nf), derivation))
        }
        Strategy::RightmostInnermost => {
            // Reference implementation by repeated redex search; kept for
            // the unique-normal-form cross-check.
            let mut state = source.clone();
            let mut steps = Vec::new();
            while let Some((pos, rule)) =
                find_redex(space, &state, rules, strategy, &Position::root())
            {
                let step = StepInstance::forward(rule, pos);
                state = apply_step(space, &state, &step).expect("matched redex must apply");
                steps.push(step);
            }
            let derivation = Derivation {
                source,
                target: state.clone(),
                steps,
            };
            Ok((NormalForm(state), derivation))
        }
    }
}

/// Normalizes children first, then settles the root.
fn norm_full(
    space: &SpacePresentation,
    rules: &RuleSet,
    expr: PathExpr,
    prefix: &mut Vec<PosMove>,
    steps: &mut Vec<StepInstance>,
) -> PathExpr {
    let rebuilt = match expr {
        PathExpr::Trans(l, r) => {
            prefix.push(PosMove::Left);
            let l = norm_full(space, rules, *l, prefix, steps);
            prefix.pop();
            prefix.push(PosMove::Right);
            let r = norm_full(space, rules, *r, prefix, steps);
            prefix.pop();
            PathExpr::Trans(Box::new(l), Box::new(r))
        }
        PathExpr::Symm(c) => {
            prefix.push(PosMove::Under);
            let c = norm_full(space, rules, *c, prefix, steps);
            prefix.pop();
            fold_symm(c)
        }
        leaf => leaf,
    };
    settle_root(space, rules, rebuilt, prefix, steps)
}

/// The spelling fold applied by step application: an inversion directly
/// over a forward letter is the reversed letter.
fn fold_symm(child: PathExpr) -> PathExpr {
    match child {
        PathExpr::Edge(name, Orientation::Forward) => {
            PathExpr::Edge(name, Orientation::Reverse)
        }
        other => PathExpr::Symm(Box::new(other)),
    }
}

/// Applies root-position rules to fixpoint on an expression whose children
/// are fully normal, re-settling only contractum positions that are built
/// fresh (the distributed inversions and the re-associated right spine).
fn settle_root(
    space: &SpacePresentation,
    rules: &RuleSet,
    mut expr: PathExpr,
    prefix: &mut Vec<PosMove>,
    steps: &mut Vec<StepInstance>,
) -> PathExpr {
    'outer: loop {
        for &rule in rules.rules() {
            let contractum = match_forward(space, rule, &expr)
                .expect("normalization state is well-formed");
            let Some(contractum) = contractum else {
                continue;
            };
            steps.push(StepInstance::forward(rule, Position(prefix.clone())));
            expr = match rule {
                RuleId::SymmTransDistrib => {
                    let PathExpr::Trans(sq, sp) = contractum else {
                        unreachable!("distrib contractum is a composition")
                    };
                    prefix.push(PosMove::Left);
                    let sq = settle_root(space, rules, *sq, prefix, steps);
                    prefix.pop();
                    prefix.push(PosMove::Right);
                    let sp = settle_root(space, rules, *sp, prefix, steps);
                    prefix.pop();
                    PathExpr::Trans(Box::new(sq), Box::new(sp))
                }
                RuleId::TransAssoc => {
                    let PathExpr::Trans(p, qr) = contractum else {
                        unreachable!("assoc contractum is a composition")
                    };
                    prefix.push(PosMove::Right);
                    let qr = settle_root(space, rules, *qr, prefix, steps);
                    prefix.pop();
                    PathExpr::Trans(p, Box::new(qr))
                }
                // Unit, inverse and cancellation contracta are existing
                // normal subterms (or a refl leaf).
                _ => contractum,
            };
            continue 'outer;
        }
        return expr;
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RwEqError {
    #[error("expressions do not share endpoints: ({0}, {1}) vs ({2}, {3})")]
    EndpointMismatch(String, String, String, String),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Outcome of the rewrite equality decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RwEqOutcome {
    /// Equal, with a replayable witness from `p` to `q`.
    Equal(Derivation),
    /// Not equal; the two distinct normal forms are returned.
    Distinct {
        lhs_normal: NormalForm,
        rhs_normal: NormalForm,
    },
}

impl RwEqOutcome {
    pub fn is_equal(&self) -> bool {
        matches!(self, RwEqOutcome::Equal(_))
    }
}

/// Decides rewrite equality by comparing normal forms. On success the
/// witness is p's derivation followed by q's reversed, direction-flipped
/// derivation, so it replays p -> normal form -> q.
pub fn rw_eq_decide(
    space: &SpacePresentation,
    p: &PathExpr,
    q: &PathExpr,
) -> Result<RwEqOutcome, RwEqError> {
    let pe = p.endpoints(space)?;
    let qe = q.endpoints(space)?;
    if pe != qe {
        return Err(RwEqError::EndpointMismatch(pe.0, pe.1, qe.0, qe.1));
    }
    let (p_nf, p_der) = normalize(space, p)?;
    let (q_nf, q_der) = normalize(space, q)?;
    if p_nf != q_nf {
        return Ok(RwEqOutcome::Distinct {
            lhs_normal: p_nf,
            rhs_normal: q_nf,
        });
    }
    // Walk q's derivation to collect its intermediate states, then append
    // the flipped steps in reverse order.
    let mut steps = p_der.steps.clone();
    let mut q_states = Vec::with_capacity(q_der.steps.len());
    let mut state = q_der.source.clone();
    for step in &q_der.steps {
        q_states.push(state.clone());
        state = apply_step(space, &state, step).expect("recorded derivation replays");
    }
    for (step, before) in q_der.steps.iter().zip(q_states.iter()).rev() {
        steps.push(step.flipped(before));
    }
    Ok(RwEqOutcome::Equal(Derivation {
        source: p_der.source,
        target: q_der.source,
        steps,
    }))
}

/// Lexicographic termination measure.
///
/// Sizes are weighted: an inversion doubles the size of its operand. The
/// first component sums the weighted sizes of all inversion arguments, the
/// second the weighted sizes of all left children of compositions, the third
/// is the plain node count. Every forward rule application strictly
/// decreases the triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure(pub u64, pub u64, pub u64);

pub fn weighted_size(expr: &PathExpr) -> u64 {
    match expr {
        PathExpr::Refl(_) | PathExpr::Edge(..) => 1,
        PathExpr::Symm(c) => 2 * weighted_size(c),
        PathExpr::Trans(l, r) => weighted_size(l) + weighted_size(r) + 1,
    }
}

pub fn measure(expr: &PathExpr) -> Measure {
    fn go(expr: &PathExpr, symm_total: &mut u64, trans_total: &mut u64, nodes: &mut u64) {
        *nodes += 1;
        match expr {
            PathExpr::Refl(_) | PathExpr::Edge(..) => {}
            PathExpr::Symm(c) => {
                *symm_total += weighted_size(c);
                go(c, symm_total, trans_total, nodes);
            }
            PathExpr::Trans(l, r) => {
                *trans_total += weighted_size(l);
                go(l, symm_total, trans_total, nodes);
                go(r, symm_total, trans_total, nodes);
            }
        }
    }
    let (mut s, mut t, mut n) = (0, 0, 0);
    go(expr, &mut s, &mut t, &mut n);
    Measure(s, t, n)
}
