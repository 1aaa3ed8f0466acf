//! Critical-pair enumeration and the local confluence check.
//!
//! Rule left-hand sides are unified pairwise at every non-variable position;
//! each minimal overlap is instantiated with fresh generic letters on a
//! one-point space and both one-step reducts are checked for joinability by
//! normalization.

use std::collections::BTreeMap;

use crate::expr::PathExpr;
use crate::rewrite::{normalize_with, RuleSet, Strategy};
use crate::space::SpacePresentation;
use crate::step::{apply_step, PosMove, Position, RuleId, StepInstance};

/// Pattern term over expression variables and point variables.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Pat {
    Var(u8),
    ReflPoint(u8),
    Symm(Box<Pat>),
    Trans(Box<Pat>, Box<Pat>),
}

impl Pat {
    fn var(i: u8) -> Pat {
        Pat::Var(i)
    }

    fn symm(self) -> Pat {
        Pat::Symm(Box::new(self))
    }

    fn trans(self, r: Pat) -> Pat {
        Pat::Trans(Box::new(self), Box::new(r))
    }

    /// Shifts variable indices so two rules' patterns are disjoint.
    fn shift(&self, by: u8) -> Pat {
        match self {
            Pat::Var(i) => Pat::Var(i + by),
            Pat::ReflPoint(i) => Pat::ReflPoint(i + by),
            Pat::Symm(c) => c.shift(by).symm(),
            Pat::Trans(l, r) => l.shift(by).trans(r.shift(by)),
        }
    }
}

fn lhs_pattern(rule: RuleId) -> Pat {
    match rule {
        RuleId::SymmRefl => Pat::ReflPoint(0).symm(),
        RuleId::SymmSymm => Pat::var(0).symm().symm(),
        RuleId::TransReflLeft => Pat::ReflPoint(0).trans(Pat::var(0)),
        RuleId::TransReflRight => Pat::var(0).trans(Pat::ReflPoint(0)),
        RuleId::TransSymm => Pat::var(0).trans(Pat::var(0).symm()),
        RuleId::SymmTrans => Pat::var(0).symm().trans(Pat::var(0)),
        RuleId::SymmTransDistrib => Pat::var(0).trans(Pat::var(1)).symm(),
        RuleId::TransAssoc => Pat::var(0).trans(Pat::var(1)).trans(Pat::var(2)),
        RuleId::CancelMidRight => Pat::var(0).trans(Pat::var(0).symm().trans(Pat::var(1))),
        RuleId::CancelMidLeft => Pat::var(0).symm().trans(Pat::var(0).trans(Pat::var(1))),
    }
}

/// Non-variable positions of a pattern, in pre-order.
fn non_var_positions(pat: &Pat) -> Vec<(Position, Pat)> {
    fn go(pat: &Pat, pos: Position, out: &mut Vec<(Position, Pat)>) {
        match pat {
            Pat::Var(_) => {}
            Pat::ReflPoint(_) => out.push((pos, pat.clone())),
            Pat::Symm(c) => {
                out.push((pos.clone(), pat.clone()));
                go(c, pos.child(PosMove::Under), out);
            }
            Pat::Trans(l, r) => {
                out.push((pos.clone(), pat.clone()));
                go(l, pos.child(PosMove::Left), out);
                go(r, pos.child(PosMove::Right), out);
            }
        }
    }
    let mut out = Vec::new();
    go(pat, Position::root(), &mut out);
    out
}

type Subst = BTreeMap<u8, Pat>;
type PointSubst = BTreeMap<u8, u8>;

fn walk(pat: &Pat, subst: &Subst) -> Pat {
    match pat {
        Pat::Var(i) => match subst.get(i) {
            Some(bound) => walk(bound, subst),
            None => pat.clone(),
        },
        _ => pat.clone(),
    }
}

fn occurs(var: u8, pat: &Pat, subst: &Subst) -> bool {
    match walk(pat, subst) {
        Pat::Var(i) => i == var,
        Pat::ReflPoint(_) => false,
        Pat::Symm(c) => occurs(var, &c, subst),
        Pat::Trans(l, r) => occurs(var, &l, subst) || occurs(var, &r, subst),
    }
}

fn unify(a: &Pat, b: &Pat, subst: &mut Subst, points: &mut PointSubst) -> bool {
    let a = walk(a, subst);
    let b = walk(b, subst);
    match (&a, &b) {
        (Pat::Var(i), Pat::Var(j)) if i == j => true,
        (Pat::Var(i), other) | (other, Pat::Var(i)) => {
            if occurs(*i, other, subst) {
                return false;
            }
            subst.insert(*i, other.clone());
            true
        }
        (Pat::ReflPoint(i), Pat::ReflPoint(j)) => {
            // Point variables unify by aliasing to the smaller index.
            let (lo, hi) = if i <= j { (*i, *j) } else { (*j, *i) };
            let lo = *points.get(&lo).unwrap_or(&lo);
            points.insert(hi, lo);
            true
        }
        (Pat::Symm(c1), Pat::Symm(c2)) => unify(c1, c2, subst, points),
        (Pat::Trans(l1, r1), Pat::Trans(l2, r2)) => {
            unify(l1, l2, subst, points) && unify(r1, r2, subst, points)
        }
        _ => false,
    }
}

fn apply_subst(pat: &Pat, subst: &Subst) -> Pat {
    match pat {
        Pat::Var(i) => match subst.get(i) {
            Some(bound) => apply_subst(bound, subst),
            None => pat.clone(),
        },
        Pat::ReflPoint(_) => pat.clone(),
        Pat::Symm(c) => apply_subst(c, subst).symm(),
        Pat::Trans(l, r) => apply_subst(l, subst).trans(apply_subst(r, subst)),
    }
}

/// Instantiates remaining variables with fresh edge letters on a one-point
/// space. Inversions are kept as literal `Symm` nodes so the instantiated
/// peak preserves the overlap's shape.
fn instantiate(pat: &Pat) -> PathExpr {
    match pat {
        Pat::Var(i) => PathExpr::edge(format!("x{i}")),
        Pat::ReflPoint(_) => PathExpr::refl("pt"),
        Pat::Symm(c) => PathExpr::Symm(Box::new(instantiate(c))),
        Pat::Trans(l, r) => PathExpr::Trans(Box::new(instantiate(l)), Box::new(instantiate(r))),
    }
}

/// A minimal overlap of two rules: `inner` applies at `position` inside
/// `outer`'s redex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub peak: PathExpr,
    /// One-step reduct by the inner rule at `position`.
    pub left_reduct: PathExpr,
    /// One-step reduct by the outer rule at the root.
    pub right_reduct: PathExpr,
    pub inner: RuleId,
    pub outer: RuleId,
    pub position: Position,
}

/// The generic one-point space used for instantiated peaks: loops x0..x11
/// (outer-rule variables are x0..x2, inner-rule variables x8..x10).
pub fn generic_space() -> SpacePresentation {
    let edges = (0..12)
        .map(|i| crate::space::EdgeDef::new(format!("x{i}"), "pt", "pt"))
        .collect();
    SpacePresentation::new(vec!["pt".to_string()], edges, vec![], "pt")
        .expect("generic space is valid")
}

/// Enumerates critical pairs of the rule set: for each ordered rule pair,
/// the inner rule's left-hand side is unified with every non-variable
/// position of the outer rule's left-hand side. The trivial self-overlap at
/// the root is skipped. Order is deterministic.
pub fn critical_pairs(rules: &RuleSet) -> Vec<CriticalPair> {
    let space = generic_space();
    let mut out = Vec::new();
    for &outer in rules.rules() {
        let outer_lhs = lhs_pattern(outer);
        for &inner in rules.rules() {
            // Variables of the inner rule are shifted to be disjoint.
            let inner_lhs = lhs_pattern(inner).shift(8);
            for (pos, sub_pat) in non_var_positions(&outer_lhs) {
                if inner == outer && pos.is_root() {
                    continue;
                }
                let mut subst = Subst::new();
                let mut points = PointSubst::new();
                if !unify(&inner_lhs, &sub_pat, &mut subst, &mut points) {
                    continue;
                }
                let peak_pat = apply_subst(&outer_lhs, &subst);
                let peak = instantiate(&peak_pat);
                let inner_step = StepInstance::forward(inner, pos.clone());
                let outer_step = StepInstance::forward(outer, Position::root());
                let left_reduct = match apply_step(&space, &peak, &inner_step) {
                    Ok(e) => e,
                    Err(_) => continue,
                };
                let right_reduct = match apply_step(&space, &peak, &outer_step) {
                    Ok(e) => e,
                    Err(_) => continue,
                };
                if left_reduct == right_reduct {
                    // Identical reducts join trivially but are still reported.
                }
                out.push(CriticalPair {
                    peak,
                    left_reduct,
                    right_reduct,
                    inner,
                    outer,
                    position: pos,
                });
            }
        }
    }
    out
}

/// A critical pair that failed to join, with both normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonJoinablePair {
    pub pair: CriticalPair,
    pub left_normal: PathExpr,
    pub right_normal: PathExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub total_pairs: usize,
    pub joinable_pairs: usize,
    pub counterexamples: Vec<NonJoinablePair>,
}

impl ConfluenceReport {
    pub fn is_locally_confluent(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Tests every critical pair of the rule set for joinability by normalizing
/// both reducts under the same rule set.
pub fn check_local_confluence(rules: &RuleSet) -> ConfluenceReport {
    let space = generic_space();
    let pairs = critical_pairs(rules);
    let total_pairs = pairs.len();
    let mut joinable_pairs = 0;
    let mut counterexamples = Vec::new();
    for pair in pairs {
        let (left_nf, _) =
            normalize_with(&space, &pair.left_reduct, rules, Strategy::LeftmostInnermost)
                .expect("generic space expressions are well-formed");
        let (right_nf, _) =
            normalize_with(&space, &pair.right_reduct, rules, Strategy::LeftmostInnermost)
                .expect("generic space expressions are well-formed");
        if left_nf == right_nf {
            joinable_pairs += 1;
        } else {
            counterexamples.push(NonJoinablePair {
                pair,
                left_normal: left_nf.into_expr(),
                right_normal: right_nf.into_expr(),
            });
        }
    }
    ConfluenceReport {
        total_pairs,
        joinable_pairs,
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_rule_set_is_vacuously_confluent() {
        let report = check_local_confluence(&RuleSet::empty());
        assert_eq!(report.total_pairs, 0);
        assert!(report.is_locally_confluent());
    }

    #[test]
    fn full_rule_set_is_locally_confluent() {
        let report = check_local_confluence(&RuleSet::full());
        assert!(report.total_pairs > 0);
        assert!(
            report.is_locally_confluent(),
            "non-joinable pairs: {:?}",
            report.counterexamples
        );
    }

    #[test]
    fn unit_into_assoc_overlap_is_present() {
        // (refl . q) . r: reducts q . r and refl . (q . r).
        let pairs = critical_pairs(&RuleSet::full());
        assert!(pairs
            .iter()
            .any(|p| p.inner == RuleId::TransReflLeft && p.outer == RuleId::TransAssoc));
    }

    #[test]
    fn inverse_into_assoc_overlap_is_present() {
        // (p . inv(p)) . r: reducts refl . r and p . (inv(p) . r).
        let pairs = critical_pairs(&RuleSet::full());
        assert!(pairs
            .iter()
            .any(|p| p.inner == RuleId::TransSymm && p.outer == RuleId::TransAssoc));
    }

    #[test]
    fn symm_symm_self_overlap_has_equal_reducts() {
        // inv(inv(inv(p))): outer and inner symm_symm give the same reduct.
        let pairs = critical_pairs(&RuleSet::full());
        let self_overlap = pairs
            .iter()
            .find(|p| p.inner == RuleId::SymmSymm && p.outer == RuleId::SymmSymm)
            .expect("self overlap exists");
        assert_eq!(self_overlap.left_reduct, self_overlap.right_reduct);
    }

    #[test]
    fn removing_cancel_mid_right_breaks_confluence() {
        let report = check_local_confluence(&RuleSet::without(RuleId::CancelMidRight));
        assert!(!report.is_locally_confluent());
    }
}
