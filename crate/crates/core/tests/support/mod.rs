#![allow(dead_code)] // each test target uses a subset of these helpers

//! Shared test support: an independent word oracle and seeded generators.
//!
//! The oracle computes reduced edge words by flattening and stack
//! cancellation only; it never calls the rewrite engine, so engine results
//! can be checked against it.

use pi1_core::expr::PathExpr;
use pi1_core::space::{Orientation, SpacePresentation};
use pi1_core::step::{applicable_steps, apply_step, Position, RuleId, StepInstance};
use rand::Rng;

/// Reduced letter sequence by flatten-and-cancel, independent of the
/// rewrite engine.
pub fn oracle_reduced_word(expr: &PathExpr) -> Vec<(String, Orientation)> {
    fn flatten(expr: &PathExpr, flip: bool, out: &mut Vec<(String, Orientation)>) {
        match expr {
            PathExpr::Refl(_) => {}
            PathExpr::Edge(name, orient) => {
                let o = if flip { orient.flip() } else { *orient };
                out.push((name.clone(), o));
            }
            PathExpr::Symm(c) => flatten(c, !flip, out),
            PathExpr::Trans(l, r) => {
                if flip {
                    flatten(r, true, out);
                    flatten(l, true, out);
                } else {
                    flatten(l, false, out);
                    flatten(r, false, out);
                }
            }
        }
    }
    let mut letters = Vec::new();
    flatten(expr, false, &mut letters);
    let mut stack: Vec<(String, Orientation)> = Vec::new();
    for letter in letters {
        match stack.last() {
            Some(top) if top.0 == letter.0 && top.1 == letter.1.flip() => {
                stack.pop();
            }
            _ => stack.push(letter),
        }
    }
    stack
}

/// Uniform-ish random expression over the loop edges of a one-point space.
/// Every tree is well-formed there. `height` bounds the tree height.
pub fn random_rose_expr<R: Rng>(rng: &mut R, edges: &[String], height: usize) -> PathExpr {
    let leaf = |rng: &mut R| -> PathExpr {
        match rng.gen_range(0..5) {
            0 => PathExpr::refl("base"),
            1 | 2 => PathExpr::edge(edges[rng.gen_range(0..edges.len())].clone()),
            _ => PathExpr::edge_rev(edges[rng.gen_range(0..edges.len())].clone()),
        }
    };
    if height <= 1 {
        return leaf(rng);
    }
    match rng.gen_range(0..8) {
        0 | 1 => leaf(rng),
        2 | 3 => random_rose_expr(rng, edges, height - 1).symm(),
        _ => random_rose_expr(rng, edges, height - 1)
            .trans(random_rose_expr(rng, edges, height - 1)),
    }
}

/// Random well-formed loop at `point` in an arbitrary connected space.
pub fn random_loop<R: Rng>(
    rng: &mut R,
    space: &SpacePresentation,
    point: &str,
    depth: usize,
) -> PathExpr {
    let loops_here: Vec<String> = space
        .edges()
        .iter()
        .filter(|e| e.src == point && e.dst == point)
        .map(|e| e.name.clone())
        .collect();
    // Edges leaving `point` in either direction, for conjugation.
    let out_edges: Vec<(String, bool, String)> = space
        .edges()
        .iter()
        .flat_map(|e| {
            let mut v = Vec::new();
            if e.src == point && e.dst != point {
                v.push((e.name.clone(), false, e.dst.clone()));
            }
            if e.dst == point && e.src != point {
                v.push((e.name.clone(), true, e.src.clone()));
            }
            v
        })
        .collect();

    if depth == 0 {
        if !loops_here.is_empty() && rng.gen_bool(0.7) {
            let name = loops_here[rng.gen_range(0..loops_here.len())].clone();
            return if rng.gen_bool(0.5) {
                PathExpr::edge(name)
            } else {
                PathExpr::edge_rev(name)
            };
        }
        return PathExpr::refl(point);
    }
    match rng.gen_range(0..10) {
        0 => PathExpr::refl(point),
        1 | 2 if !loops_here.is_empty() => {
            let name = loops_here[rng.gen_range(0..loops_here.len())].clone();
            if rng.gen_bool(0.5) {
                PathExpr::edge(name)
            } else {
                PathExpr::edge_rev(name)
            }
        }
        3 | 4 => random_loop(rng, space, point, depth - 1).symm(),
        5 if !out_edges.is_empty() => {
            // Conjugate a loop at a neighbour: e . (loop_q . inv(e)).
            let (name, reversed, q) = out_edges[rng.gen_range(0..out_edges.len())].clone();
            let e = if reversed {
                PathExpr::edge_rev(name)
            } else {
                PathExpr::edge(name)
            };
            let inner = random_loop(rng, space, &q, depth.saturating_sub(2));
            e.clone().trans(inner.trans(e.symm()))
        }
        _ => {
            let l = random_loop(rng, space, point, depth - 1);
            let r = random_loop(rng, space, point, depth - 1);
            l.trans(r)
        }
    }
}

/// Applies up to `steps` random applicable forward steps, returning the
/// recorded step list and final expression.
pub fn random_forward_walk<R: Rng>(
    rng: &mut R,
    space: &SpacePresentation,
    expr: &PathExpr,
    steps: usize,
) -> (Vec<StepInstance>, PathExpr) {
    let mut state = expr.clone();
    let mut recorded = Vec::new();
    for _ in 0..steps {
        let applicable = applicable_steps(space, &state, &pi1_core::step::ALL_RULES);
        if applicable.is_empty() {
            break;
        }
        let (pos, rule): &(Position, RuleId) = &applicable[rng.gen_range(0..applicable.len())];
        let step = StepInstance::forward(*rule, pos.clone());
        state = apply_step(space, &state, &step).expect("applicable step applies");
        recorded.push(step);
    }
    (recorded, state)
}

/// Enumerates every expression with at most `max_nodes` nodes over the
/// given loop edges of a one-point space (plus refl at the base).
pub fn enumerate_rose_exprs(edges: &[String], max_nodes: usize) -> Vec<PathExpr> {
    let mut by_size: Vec<Vec<PathExpr>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes >= 1 {
        let mut leaves = vec![PathExpr::refl("base")];
        for e in edges {
            leaves.push(PathExpr::edge(e.clone()));
            leaves.push(PathExpr::edge_rev(e.clone()));
        }
        by_size[1] = leaves;
    }
    for n in 2..=max_nodes {
        let mut exprs = Vec::new();
        for child in &by_size[n - 1] {
            exprs.push(child.clone().symm());
        }
        for left_size in 1..(n - 1) {
            let right_size = n - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    exprs.push(l.clone().trans(r.clone()));
                }
            }
        }
        by_size[n] = exprs;
    }
    by_size.into_iter().flatten().collect()
}
