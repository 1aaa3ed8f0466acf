//! Words in free products and amalgamated free products.
//!
//! A letter carries a factor tag and a factor-canonical element, so identity
//! letters are detectable and normalization terminates. Amalgamation is
//! realized by single-letter replacement moves `i1(h) <-> i2(h)`, and
//! bounded search over those moves gives a semi-decision for amalgamated
//! equality.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::group::{
    canonical_inv, canonical_mul, canonical_to_word, solver_normalize, Canonical, GroupError,
    GroupFamily, GroupPresentation, Trilean, Word,
};

/// Which free-product factor a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One letter: a factor tag with that factor's canonical element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpLetter {
    pub side: Side,
    pub elem: Canonical,
}

impl FpLetter {
    pub fn left(elem: Canonical) -> FpLetter {
        FpLetter {
            side: Side::Left,
            elem,
        }
    }

    pub fn right(elem: Canonical) -> FpLetter {
        FpLetter {
            side: Side::Right,
            elem,
        }
    }
}

/// A raw word in the free product; nothing is reduced at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FpWord(pub Vec<FpLetter>);

impl FpWord {
    pub fn nil() -> FpWord {
        FpWord(Vec::new())
    }

    pub fn is_nil(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn single_left(elem: Canonical) -> FpWord {
        FpWord(vec![FpLetter::left(elem)])
    }

    pub fn single_right(elem: Canonical) -> FpWord {
        FpWord(vec![FpLetter::right(elem)])
    }

    /// True when tags alternate; identity letters are not checked here.
    pub fn is_alternating(&self) -> bool {
        self.0.windows(2).all(|w| w[0].side != w[1].side)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("amalgam inclusion images must cover every amalgam generator")]
    InclusionArity,
    #[error("inclusion does not respect amalgam relator {index}: verdict {verdict:?} in the {side:?} factor")]
    RelatorNotRespected {
        index: usize,
        side: Side,
        verdict: Trilean,
    },
    #[error("no letter at position {0}")]
    BadPosition(usize),
    #[error("letter at position {position} does not match the inclusion image of the move element")]
    NoMatch { position: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The two factors, the amalgam, and its inclusions (one factor word per
/// amalgam generator). Immutable after validated construction.
#[derive(Debug, Clone)]
pub struct FpContext {
    left: GroupPresentation,
    right: GroupPresentation,
    amalgam: GroupPresentation,
    incl_left: Vec<Word>,
    incl_right: Vec<Word>,
}

impl FpContext {
    /// Validates that both inclusions send every amalgam relator to the
    /// factor identity.
    pub fn new(
        left: GroupPresentation,
        right: GroupPresentation,
        amalgam: GroupPresentation,
        incl_left: Vec<Word>,
        incl_right: Vec<Word>,
    ) -> Result<FpContext, FpError> {
        if incl_left.len() != amalgam.generators() || incl_right.len() != amalgam.generators() {
            return Err(FpError::InclusionArity);
        }
        let ctx = FpContext {
            left,
            right,
            amalgam,
            incl_left,
            incl_right,
        };
        for (index, r) in ctx.amalgam.relators().iter().enumerate() {
            for side in [Side::Left, Side::Right] {
                let image = ctx.include_word(side, r);
                let verdict = solver_normalize(ctx.factor(side), &image)?.identity;
                if verdict != Trilean::Yes {
                    return Err(FpError::RelatorNotRespected {
                        index,
                        side,
                        verdict,
                    });
                }
            }
        }
        Ok(ctx)
    }

    /// A free product: trivial amalgam, no inclusions to check.
    pub fn free_product(left: GroupPresentation, right: GroupPresentation) -> FpContext {
        FpContext {
            left,
            right,
            amalgam: GroupPresentation::trivial(),
            incl_left: Vec::new(),
            incl_right: Vec::new(),
        }
    }

    pub fn factor(&self, side: Side) -> &GroupPresentation {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn amalgam(&self) -> &GroupPresentation {
        &self.amalgam
    }

    pub fn inclusion(&self, side: Side, gen: usize) -> &Word {
        match side {
            Side::Left => &self.incl_left[gen],
            Side::Right => &self.incl_right[gen],
        }
    }

    /// The image of an amalgam word in a factor, as a factor word.
    pub fn include_word(&self, side: Side, w: &Word) -> Word {
        let mut out = Word::empty();
        for l in &w.0 {
            let img = self.inclusion(side, l.gen);
            let img = if l.inverse { img.inverted() } else { img.clone() };
            out = out.concat(&img);
        }
        out
    }

    /// The canonical image of an amalgam word in a factor.
    pub fn include_canonical(&self, side: Side, w: &Word) -> Result<Canonical, FpError> {
        let image = self.include_word(side, w);
        Ok(solver_normalize(self.factor(side), &image)?.canonical)
    }

    fn is_opaque(&self, side: Side) -> bool {
        matches!(self.factor(side).family(), GroupFamily::Opaque)
    }

    /// Letter multiplication. Exact families merge through the factor
    /// solver; opaque letters concatenate their representative words
    /// verbatim (free cancellation belongs to [`full_reduce`]).
    fn merge_letters(
        &self,
        side: Side,
        a: &Canonical,
        b: &Canonical,
        opaque_free_reduce: bool,
    ) -> Result<Canonical, FpError> {
        if self.is_opaque(side) {
            if let (Canonical::Word(wa), Canonical::Word(wb)) = (a, b) {
                let w = wa.concat(wb);
                let w = if opaque_free_reduce { w.free_reduce() } else { w };
                return Ok(Canonical::Word(w));
            }
        }
        Ok(canonical_mul(self.factor(side), a, b)?.canonical)
    }

    /// Is the letter certainly the factor identity?
    fn letter_is_identity(&self, letter: &FpLetter) -> Result<bool, FpError> {
        if self.is_opaque(letter.side) {
            if let Canonical::Word(w) = &letter.elem {
                return Ok(w.is_empty());
            }
        }
        let w = canonical_to_word(&letter.elem, self.factor(letter.side));
        Ok(solver_normalize(self.factor(letter.side), &w)?.identity == Trilean::Yes)
    }

    pub fn letter_inverse(&self, letter: &FpLetter) -> Result<FpLetter, FpError> {
        let elem = if self.is_opaque(letter.side) {
            match &letter.elem {
                Canonical::Word(w) => Canonical::Word(w.inverted()),
                other => canonical_inv(self.factor(letter.side), other)?.canonical,
            }
        } else {
            canonical_inv(self.factor(letter.side), &letter.elem)?.canonical
        };
        Ok(FpLetter {
            side: letter.side,
            elem,
        })
    }
}

/// Concatenation of raw words.
pub fn fp_concat(u: &FpWord, v: &FpWord) -> FpWord {
    let mut letters = u.0.clone();
    letters.extend(v.0.iter().cloned());
    FpWord(letters)
}

/// Reverses the word and inverts each letter through its factor.
pub fn fp_invert(ctx: &FpContext, u: &FpWord) -> Result<FpWord, FpError> {
    let mut letters = Vec::with_capacity(u.len());
    for l in u.0.iter().rev() {
        letters.push(ctx.letter_inverse(l)?);
    }
    Ok(FpWord(letters))
}

fn fp_normalize_with(
    ctx: &FpContext,
    w: &FpWord,
    opaque_free_reduce: bool,
) -> Result<FpWord, FpError> {
    let mut letters: Vec<FpLetter> = Vec::with_capacity(w.len());
    for l in &w.0 {
        let mut l = l.clone();
        if opaque_free_reduce && ctx.is_opaque(l.side) {
            if let Canonical::Word(word) = &l.elem {
                l.elem = Canonical::Word(word.free_reduce());
            }
        }
        letters.push(l);
        // Settle the tail: merge same-tag neighbours, drop identities.
        loop {
            let n = letters.len();
            if n == 0 {
                break;
            }
            if ctx.letter_is_identity(&letters[n - 1])? {
                letters.pop();
                continue;
            }
            if n >= 2 && letters[n - 1].side == letters[n - 2].side {
                let b = letters.pop().unwrap();
                let a = letters.pop().unwrap();
                let merged = ctx.merge_letters(a.side, &a.elem, &b.elem, opaque_free_reduce)?;
                letters.push(FpLetter {
                    side: a.side,
                    elem: merged,
                });
                continue;
            }
            break;
        }
    }
    Ok(FpWord(letters))
}

/// Merges adjacent same-tag letters through the factor solvers and deletes
/// identity letters, to a fixpoint. The result is alternating.
pub fn fp_normalize(ctx: &FpContext, w: &FpWord) -> Result<FpWord, FpError> {
    fp_normalize_with(ctx, w, false)
}

/// [`fp_normalize`] plus free cancellation inside opaque-factor letters,
/// modeling the fully reduced free-product target.
pub fn full_reduce(ctx: &FpContext, w: &FpWord) -> Result<FpWord, FpError> {
    fp_normalize_with(ctx, w, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveDirection {
    LeftToRight,
    RightToLeft,
}

/// A single-letter amalgamation move: the letter at `position` must be the
/// inclusion image of `element`, and is replaced by the other inclusion's
/// image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgMove {
    pub position: usize,
    /// Element of the amalgam, as a word over the amalgam's generators.
    pub element: Word,
    pub direction: MoveDirection,
}

pub fn apply_amalg_move(ctx: &FpContext, w: &FpWord, mv: &AmalgMove) -> Result<FpWord, FpError> {
    let letter = w
        .0
        .get(mv.position)
        .ok_or(FpError::BadPosition(mv.position))?;
    let (from, to) = match mv.direction {
        MoveDirection::LeftToRight => (Side::Left, Side::Right),
        MoveDirection::RightToLeft => (Side::Right, Side::Left),
    };
    if letter.side != from {
        return Err(FpError::NoMatch {
            position: mv.position,
        });
    }
    let expected = ctx.include_canonical(from, &mv.element)?;
    if letter.elem != expected {
        return Err(FpError::NoMatch {
            position: mv.position,
        });
    }
    let replacement = ctx.include_canonical(to, &mv.element)?;
    let mut letters = w.0.clone();
    letters[mv.position] = FpLetter {
        side: to,
        elem: replacement,
    };
    Ok(FpWord(letters))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgSearchOutcome {
    pub verdict: Trilean,
    pub states_explored: usize,
    pub capped: bool,
}

/// Bounded search over amalgamation moves: are `u` and `v` in the same
/// class? `Yes` is definitive; `Unknown` means the bound was reached (or the
/// reachable set was exhausted) without meeting `v`.
pub fn amalg_equiv_bounded(
    ctx: &FpContext,
    u: &FpWord,
    v: &FpWord,
    depth: usize,
) -> Result<AmalgSearchOutcome, FpError> {
    let start = fp_normalize(ctx, u)?;
    let goal = fp_normalize(ctx, v)?;
    if start == goal {
        return Ok(AmalgSearchOutcome {
            verdict: Trilean::Yes,
            states_explored: 1,
            capped: false,
        });
    }
    const MAX_STATES: usize = 100_000;
    let mut visited: HashSet<FpWord> = HashSet::new();
    visited.insert(start.clone());
    let mut queue = VecDeque::new();
    queue.push_back((start, 0usize));
    let mut capped = false;

    // Move elements: every amalgam generator and its inverse.
    let elements: Vec<Word> = (0..ctx.amalgam.generators())
        .flat_map(|g| [Word::power(g, 1), Word::power(g, -1)])
        .collect();

    while let Some((state, d)) = queue.pop_front() {
        if d >= depth {
            capped = true;
            continue;
        }
        for pos in 0..state.len() {
            for element in &elements {
                for direction in [MoveDirection::LeftToRight, MoveDirection::RightToLeft] {
                    let mv = AmalgMove {
                        position: pos,
                        element: element.clone(),
                        direction,
                    };
                    let Ok(next) = apply_amalg_move(ctx, &state, &mv) else {
                        continue;
                    };
                    let next = fp_normalize(ctx, &next)?;
                    if next == goal {
                        return Ok(AmalgSearchOutcome {
                            verdict: Trilean::Yes,
                            states_explored: visited.len(),
                            capped: false,
                        });
                    }
                    if !visited.contains(&next) {
                        if visited.len() >= MAX_STATES {
                            capped = true;
                            continue;
                        }
                        visited.insert(next.clone());
                        queue.push_back((next, d + 1));
                    }
                }
            }
        }
    }
    Ok(AmalgSearchOutcome {
        verdict: Trilean::Unknown,
        states_explored: visited.len(),
        capped,
    })
}
