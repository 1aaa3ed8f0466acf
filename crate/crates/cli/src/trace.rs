//! Printed rewrite traces: one line per step,
//! `rule @ position : before -> after`, with `^-1` marking backward steps.
//! Lines re-parse into a replayable derivation.

use pi1_core::expr::PathExpr;
use pi1_core::space::SpacePresentation;
use pi1_core::step::{
    apply_step, Derivation, Direction, Position, RuleId, StepInstance,
};

use crate::exprtext::{parse_path_expr, print_path_expr};

/// Renders the steps of a derivation, given its source expression.
pub fn format_trace(
    space: &SpacePresentation,
    derivation: &Derivation,
) -> Result<Vec<String>, String> {
    let mut lines = Vec::new();
    let mut state = derivation.source.clone();
    for step in &derivation.steps {
        let next = apply_step(space, &state, step).map_err(|e| e.to_string())?;
        let rule = match step.direction {
            Direction::Forward => step.rule.name().to_string(),
            Direction::Backward => format!("{}^-1", step.rule.name()),
        };
        lines.push(format!(
            "{rule} @ {} : {} -> {}",
            step.position,
            print_path_expr(&state),
            print_path_expr(&next)
        ));
        state = next;
    }
    Ok(lines)
}

/// Parses trace lines back into a derivation. Backward steps recover their
/// payload from the printed after-state (the redex sits at the step's
/// position there).
pub fn parse_trace(
    space: &SpacePresentation,
    lines: &[&str],
) -> Result<Derivation, String> {
    let mut steps = Vec::new();
    let mut source: Option<PathExpr> = None;
    let mut target: Option<PathExpr> = None;
    for (ix, line) in lines.iter().enumerate() {
        let (head, exprs) = line
            .split_once(" : ")
            .ok_or_else(|| format!("line {ix}: missing ` : `"))?;
        let (rule_text, pos_text) = head
            .split_once(" @ ")
            .ok_or_else(|| format!("line {ix}: missing ` @ `"))?;
        let (rule_name, direction) = match rule_text.strip_suffix("^-1") {
            Some(name) => (name, Direction::Backward),
            None => (rule_text, Direction::Forward),
        };
        let rule = RuleId::from_name(rule_name)
            .ok_or_else(|| format!("line {ix}: unknown rule `{rule_name}`"))?;
        let position = Position::parse(pos_text)
            .ok_or_else(|| format!("line {ix}: bad position `{pos_text}`"))?;
        let (before_text, after_text) = exprs
            .split_once(" -> ")
            .ok_or_else(|| format!("line {ix}: missing ` -> `"))?;
        let before = parse_path_expr(before_text, space).map_err(|e| format!("line {ix}: {e}"))?;
        let after = parse_path_expr(after_text, space).map_err(|e| format!("line {ix}: {e}"))?;
        let payload = match direction {
            Direction::Forward => None,
            Direction::Backward => pi1_core::step::subterm_at(&after, &position),
        };
        steps.push(StepInstance {
            rule,
            position,
            direction,
            payload,
        });
        if source.is_none() {
            source = Some(before);
        }
        target = Some(after);
    }
    let source = source.ok_or("empty trace")?;
    let target = target.ok_or("empty trace")?;
    Ok(Derivation {
        source,
        target,
        steps,
    })
}
