//! Property tests for the rewrite engine against the independent
//! flatten-and-cancel oracle, plus step-level invariants.

mod support;

use pi1_core::expr::{change_basepoint, ComplexMap, PathExpr};
use pi1_core::rewrite::{measure, normalize, normalize_with, rw_eq_decide, RuleSet, Strategy};
use pi1_core::space::{EdgeDef, Orientation, SpacePresentation};
use pi1_core::step::{
    applicable_steps, apply_step, replay_derivation, subterm_at, Position, StepInstance, ALL_RULES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{oracle_reduced_word, random_forward_walk, random_rose_expr};

fn rose(n: usize) -> SpacePresentation {
    SpacePresentation::rose(n)
}

fn edge_names(space: &SpacePresentation) -> Vec<String> {
    space.edges().iter().map(|e| e.name.clone()).collect()
}

#[test]
fn normal_form_letters_match_oracle_on_random_exprs() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..800 {
        let expr = random_rose_expr(&mut rng, &edges, 7);
        let (nf, _) = normalize(&space, &expr).unwrap();
        assert_eq!(nf.letters(), oracle_reduced_word(&expr), "expr: {expr}");
    }
}

#[test]
fn endpoint_preservation_under_random_steps() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut checked = 0;
    while checked < 1000 {
        let expr = random_rose_expr(&mut rng, &edges, 8);
        let applicable = applicable_steps(&space, &expr, &ALL_RULES);
        if applicable.is_empty() {
            continue;
        }
        let (pos, rule) = applicable[rng.gen_range(0..applicable.len())].clone();
        let before = expr.endpoints(&space).unwrap();
        let out = apply_step(&space, &expr, &StepInstance::forward(rule, pos)).unwrap();
        assert_eq!(out.endpoints(&space).unwrap(), before);
        checked += 1;
    }
}

#[test]
fn apply_step_changes_only_the_addressed_subterm() {
    // A forward step followed by its flipped reversal restores the exact
    // original expression: nothing outside the addressed subterm moved.
    // Disjoint subtrees are additionally compared directly.
    let space = rose(2);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut checked = 0;
    while checked < 500 {
        let expr = random_rose_expr(&mut rng, &edges, 7).canonicalize();
        let applicable = applicable_steps(&space, &expr, &ALL_RULES);
        if applicable.is_empty() {
            continue;
        }
        let (pos, rule) = applicable[rng.gen_range(0..applicable.len())].clone();
        let step = StepInstance::forward(rule, pos.clone());
        let out = apply_step(&space, &expr, &step).unwrap();
        let back = step.flipped(&expr);
        let restored = apply_step(&space, &out, &back).unwrap();
        assert_eq!(restored, expr, "{rule} at {pos} on {expr}");
        // Siblings along the position path are untouched.
        for prefix_len in 0..pos.0.len() {
            let mut sibling = pos.0[..prefix_len].to_vec();
            if let Some(last) = pos.0.get(prefix_len) {
                use pi1_core::step::PosMove;
                let other = match last {
                    PosMove::Left => Some(PosMove::Right),
                    PosMove::Right => Some(PosMove::Left),
                    PosMove::Under => None,
                };
                if let Some(o) = other {
                    sibling.push(o);
                    let sib_pos = Position(sibling);
                    let before = subterm_at(&expr, &sib_pos);
                    let after = subterm_at(&out, &sib_pos);
                    assert_eq!(before, after, "sibling at {sib_pos} changed");
                }
            }
        }
        checked += 1;
    }
}

#[test]
fn measure_strictly_decreases_on_forward_steps() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut checked = 0;
    while checked < 2000 {
        let expr = random_rose_expr(&mut rng, &edges, 8);
        let applicable = applicable_steps(&space, &expr, &ALL_RULES);
        if applicable.is_empty() {
            continue;
        }
        let (pos, rule) = applicable[rng.gen_range(0..applicable.len())].clone();
        let out = apply_step(&space, &expr, &StepInstance::forward(rule, pos)).unwrap();
        assert!(
            measure(&out) < measure(&expr),
            "rule {rule} did not decrease: {expr} -> {out} ({:?} vs {:?})",
            measure(&expr),
            measure(&out),
        );
        checked += 1;
    }
}

#[test]
fn strategies_reach_the_same_normal_form() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..1000 {
        let expr = random_rose_expr(&mut rng, &edges, 7);
        let (l, _) =
            normalize_with(&space, &expr, &RuleSet::full(), Strategy::LeftmostInnermost).unwrap();
        let (r, _) =
            normalize_with(&space, &expr, &RuleSet::full(), Strategy::RightmostInnermost).unwrap();
        assert_eq!(l, r, "strategies disagree on {expr}");
    }
}

#[test]
fn emitted_derivations_replay() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..500 {
        let expr = random_rose_expr(&mut rng, &edges, 7);
        let (nf, der) = normalize(&space, &expr).unwrap();
        let replayed = replay_derivation(&space, &der).unwrap();
        assert_eq!(&replayed, nf.expr());
    }
}

#[test]
fn random_forward_walks_replay_to_their_targets() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..300 {
        let expr = random_rose_expr(&mut rng, &edges, 6);
        let (steps, target) = random_forward_walk(&mut rng, &space, &expr, 5);
        let d = pi1_core::step::Derivation {
            source: expr,
            target: target.clone(),
            steps,
        };
        assert_eq!(replay_derivation(&space, &d).unwrap(), target);
    }
}

#[test]
fn rw_eq_witnesses_replay_end_to_end() {
    let space = rose(2);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut equal_seen = 0;
    for _ in 0..400 {
        let p = random_rose_expr(&mut rng, &edges, 6);
        let q = random_rose_expr(&mut rng, &edges, 6);
        match rw_eq_decide(&space, &p, &q) {
            Ok(pi1_core::rewrite::RwEqOutcome::Equal(witness)) => {
                equal_seen += 1;
                let end = replay_derivation(&space, &witness).unwrap();
                assert_eq!(end, witness.target);
                assert_eq!(witness.source, p.canonicalize());
                assert_eq!(witness.target, q.canonicalize());
            }
            Ok(_) => {}
            Err(e) => panic!("endpoints always match on a rose: {e}"),
        }
    }
    assert!(equal_seen > 0, "sampling never produced an equal pair");
}

#[test]
fn verdict_matches_oracle_on_random_pairs() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..1000 {
        let p = random_rose_expr(&mut rng, &edges, 6);
        let q = random_rose_expr(&mut rng, &edges, 6);
        let expected = oracle_reduced_word(&p) == oracle_reduced_word(&q);
        let got = rw_eq_decide(&space, &p, &q).unwrap().is_equal();
        assert_eq!(got, expected, "p: {p}, q: {q}");
    }
}

#[test]
fn map_path_is_a_homomorphism() {
    // Map the 2-rose into the 3-rose with composite edge images.
    let source = rose(2);
    let target = rose(3);
    let m = ComplexMap::new(
        &source,
        &target,
        [("base".to_string(), "base".to_string())].into(),
        [
            (
                "a".to_string(),
                PathExpr::edge("a").trans(PathExpr::edge("b")),
            ),
            ("b".to_string(), PathExpr::edge("c").symm()),
        ]
        .into(),
    )
    .unwrap();
    let edges = edge_names(&source);
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for _ in 0..500 {
        let p = random_rose_expr(&mut rng, &edges, 5);
        let q = random_rose_expr(&mut rng, &edges, 5);
        let mapped_compose = m.map_path(&p.clone().trans(q.clone())).unwrap();
        let composed_maps = m.map_path(&p).unwrap().trans(m.map_path(&q).unwrap());
        assert_eq!(mapped_compose, composed_maps);
        let mapped_inverse = m.map_path(&p.clone().symm()).unwrap();
        assert_eq!(mapped_inverse, m.map_path(&p).unwrap().symm());
    }
}

#[test]
fn change_basepoint_conjugates() {
    let space = SpacePresentation::new(
        vec!["p".into(), "q".into()],
        vec![
            EdgeDef::new("gamma", "p", "q"),
            EdgeDef::new("l", "p", "p"),
        ],
        vec![],
        "p",
    )
    .unwrap();
    let gamma = PathExpr::edge("gamma");
    let alpha = PathExpr::edge("l");

    // Conjugating by refl normalizes back to alpha.
    let by_refl = change_basepoint(&space, &PathExpr::refl("p"), &alpha).unwrap();
    let (nf, _) = normalize(&space, &by_refl).unwrap();
    assert_eq!(nf.expr(), &alpha);

    // Conjugating refl gives refl at the new basepoint.
    let of_refl = change_basepoint(&space, &gamma, &PathExpr::refl("p")).unwrap();
    let (nf, _) = normalize(&space, &of_refl).unwrap();
    assert_eq!(nf.expr(), &PathExpr::refl("q"));

    // Conjugating a genuine loop lands at q with the expected letters.
    let moved = change_basepoint(&space, &gamma, &alpha).unwrap();
    assert_eq!(
        moved.endpoints(&space).unwrap(),
        ("q".to_string(), "q".to_string())
    );
    let (nf, _) = normalize(&space, &moved).unwrap();
    assert_eq!(
        nf.letters(),
        vec![
            ("gamma".to_string(), Orientation::Reverse),
            ("l".to_string(), Orientation::Forward),
            ("gamma".to_string(), Orientation::Forward),
        ]
    );
}

#[test]
fn normalize_emits_forward_steps_only() {
    let space = rose(3);
    let edges = edge_names(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for _ in 0..300 {
        let expr = random_rose_expr(&mut rng, &edges, 7);
        let (_, der) = normalize(&space, &expr).unwrap();
        assert!(der
            .steps
            .iter()
            .all(|s| s.direction == pi1_core::step::Direction::Forward));
    }
}

#[test]
fn normalize_canonicalizes_inverse_spelling_first() {
    // inv(inv(loop)) reduces through the reversed-letter spelling.
    let space = SpacePresentation::circle();
    let expr = PathExpr::edge("loop").symm().symm();
    let (nf, der) = normalize(&space, &expr).unwrap();
    assert_eq!(nf.expr(), &PathExpr::edge("loop"));
    assert_eq!(der.source, PathExpr::edge_rev("loop").symm());
    assert_eq!(der.steps.len(), 1);
    assert_eq!(der.steps[0].rule, pi1_core::step::RuleId::SymmSymm);
}
