//! Input builders shared by the benchmarks.

use pi1_core::expr::PathExpr;
use pi1_core::group::{presentations, GenLetter, Word};
use pi1_core::space::SpacePresentation;

/// A balanced composition tree of `2^depth` alternating letters with an
/// inverted copy appended, so normalization has real cancellation to do.
pub fn nested_cancelling_expr(depth: usize) -> (SpacePresentation, PathExpr) {
    let space = SpacePresentation::rose(3);
    fn balanced(depth: usize, toggle: &mut usize) -> PathExpr {
        if depth == 0 {
            let names = ["a", "b", "c"];
            let name = names[*toggle % 3];
            *toggle += 1;
            return PathExpr::edge(name);
        }
        balanced(depth - 1, toggle).trans(balanced(depth - 1, toggle))
    }
    let mut toggle = 0;
    let w = balanced(depth, &mut toggle);
    let expr = w.clone().trans(w.symm());
    (space, expr)
}

/// A product of conjugated surface relators: an identity word of a few
/// hundred letters for Dehn reduction.
pub fn surface_identity_word(copies: usize) -> (Word, Word) {
    let relator = presentations::commutator_product_relator(2);
    let mut w = Word::empty();
    for i in 0..copies {
        let u = Word(vec![
            GenLetter::new(i % 4),
            GenLetter {
                gen: (i + 1) % 4,
                inverse: i % 2 == 0,
            },
        ]);
        let r = if i % 2 == 0 {
            relator.clone()
        } else {
            relator.inverted()
        };
        w = w.concat(&u).concat(&r).concat(&u.inverted());
    }
    (w, relator)
}
