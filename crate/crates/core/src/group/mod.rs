//! Finitely presented groups with per-family word-problem solvers.
//!
//! A [`GroupPresentation`] is a generator count, relator words, and a
//! [`GroupFamily`] tag. The tag selects the decision procedure in
//! [`solver_normalize`]: exact normal forms where they exist, Dehn's
//! algorithm for surface relators, and bounded search plus abelianization
//! for opaque presentations.

mod dehn;
mod klein;
mod pi1;
mod search;
mod word;

pub use dehn::dehn_reduce;
pub use klein::{klein_inv, klein_mul, KleinNf};
pub use pi1::{presentation_of_pi1, Pi1Presentation};
pub use search::{bounded_identity_search, SearchLimits, SearchOutcome};
pub use word::{GenLetter, Word};

use std::fmt;

use thiserror::Error;

/// Standard relators for the catalog families.
pub mod presentations {
    use super::word::{GenLetter, Word};

    /// `a b a^-1 b` over generators `a = 0`, `b = 1`.
    pub fn klein_relator() -> Word {
        Word(vec![
            GenLetter::new(0),
            GenLetter::new(1),
            GenLetter::inv(0),
            GenLetter::new(1),
        ])
    }

    /// `[a1, b1] ... [ag, bg]` over generators `a_i = 2i`, `b_i = 2i + 1`.
    pub fn commutator_product_relator(g: u32) -> Word {
        let mut letters = Vec::with_capacity(4 * g as usize);
        for i in 0..g as usize {
            let a = 2 * i;
            let b = 2 * i + 1;
            letters.push(GenLetter::new(a));
            letters.push(GenLetter::new(b));
            letters.push(GenLetter::inv(a));
            letters.push(GenLetter::inv(b));
        }
        Word(letters)
    }

    /// `a1^2 a2^2 ... an^2`.
    pub fn crosscap_relator(n: u32) -> Word {
        let mut letters = Vec::with_capacity(2 * n as usize);
        for i in 0..n as usize {
            letters.push(GenLetter::new(i));
            letters.push(GenLetter::new(i));
        }
        Word(letters)
    }

    /// `a^p` on a single generator.
    pub fn power_relator(p: u64) -> Word {
        Word(vec![GenLetter::new(0); p as usize])
    }
}

/// The recognized group families of the catalog. A tag other than `Opaque`
/// asserts the relator shape structurally and unlocks the matching solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFamily {
    /// No generators.
    Trivial,
    /// Free group on the presentation's generators (no relators).
    Free,
    /// Infinite cyclic: one generator, no relators.
    Integers,
    /// `<a | a^p>`.
    Cyclic(u64),
    /// `<a, b | a b a^-1 b>`.
    Klein,
    /// Genus-`g` orientable surface group, `g >= 2`.
    OrientableSurface(u32),
    /// `<a1..an | a1^2 ... an^2>`, `n >= 1`.
    NonOrientableSurface(u32),
    /// Direct product of two tagged groups on disjoint generator blocks.
    DirectProduct {
        left: Box<GroupFamily>,
        left_gens: usize,
        right: Box<GroupFamily>,
        right_gens: usize,
    },
    /// No structure assumed; only partial methods apply.
    Opaque,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Trivial => f.write_str("trivial"),
            GroupFamily::Free => f.write_str("free"),
            GroupFamily::Integers => f.write_str("integers"),
            GroupFamily::Cyclic(p) => write!(f, "cyclic({p})"),
            GroupFamily::Klein => f.write_str("klein"),
            GroupFamily::OrientableSurface(g) => write!(f, "orientable-surface({g})"),
            GroupFamily::NonOrientableSurface(n) => write!(f, "non-orientable-surface({n})"),
            GroupFamily::DirectProduct { left, right, .. } => write!(f, "product({left}, {right})"),
            GroupFamily::Opaque => f.write_str("opaque"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("word uses generator {gen} but the presentation has {max} generators")]
    InvalidWord { gen: usize, max: usize },
    #[error("family {family} does not match the relator shape")]
    FamilyMismatch { family: String },
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// Generators, relators, and a family tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Word>,
    family: GroupFamily,
}

impl GroupPresentation {
    /// Validates that relators fit the generator count and that a non-Opaque
    /// family tag structurally matches the relators.
    pub fn new(
        generators: usize,
        relators: Vec<Word>,
        family: GroupFamily,
    ) -> Result<GroupPresentation, GroupError> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators {
                    return Err(GroupError::InvalidWord {
                        gen: g,
                        max: generators,
                    });
                }
            }
        }
        let p = GroupPresentation {
            generators,
            relators,
            family,
        };
        p.check_family()?;
        Ok(p)
    }

    /// Presentation with the family inferred from the relator shape.
    pub fn recognized(generators: usize, relators: Vec<Word>) -> GroupPresentation {
        let family = recognize_family(generators, &relators);
        GroupPresentation::new(generators, relators, family)
            .expect("recognized family always matches")
    }

    pub fn free(generators: usize) -> GroupPresentation {
        let family = if generators == 0 {
            GroupFamily::Trivial
        } else if generators == 1 {
            GroupFamily::Integers
        } else {
            GroupFamily::Free
        };
        GroupPresentation::new(generators, vec![], family).expect("free presentation is valid")
    }

    pub fn trivial() -> GroupPresentation {
        GroupPresentation::free(0)
    }

    pub fn cyclic(p: u64) -> GroupPresentation {
        GroupPresentation::new(
            1,
            vec![presentations::power_relator(p)],
            GroupFamily::Cyclic(p),
        )
        .expect("cyclic presentation is valid")
    }

    pub fn klein() -> GroupPresentation {
        GroupPresentation::new(2, vec![presentations::klein_relator()], GroupFamily::Klein)
            .expect("klein presentation is valid")
    }

    pub fn orientable_surface(g: u32) -> Result<GroupPresentation, GroupError> {
        if g < 2 {
            return Err(GroupError::BadParams(
                "orientable surface family requires genus >= 2".into(),
            ));
        }
        GroupPresentation::new(
            2 * g as usize,
            vec![presentations::commutator_product_relator(g)],
            GroupFamily::OrientableSurface(g),
        )
    }

    pub fn non_orientable_surface(n: u32) -> Result<GroupPresentation, GroupError> {
        if n < 1 {
            return Err(GroupError::BadParams(
                "non-orientable surface family requires n >= 1".into(),
            ));
        }
        GroupPresentation::new(
            n as usize,
            vec![presentations::crosscap_relator(n)],
            GroupFamily::NonOrientableSurface(n),
        )
    }

    pub fn opaque(generators: usize, relators: Vec<Word>) -> GroupPresentation {
        GroupPresentation::new(generators, relators, GroupFamily::Opaque)
            .expect("opaque accepts any relators")
    }

    fn check_family(&self) -> Result<(), GroupError> {
        let mismatch = || GroupError::FamilyMismatch {
            family: self.family.to_string(),
        };
        match &self.family {
            GroupFamily::Opaque => Ok(()),
            GroupFamily::Trivial => {
                if self.generators == 0 {
                    Ok(())
                } else {
                    Err(mismatch())
                }
            }
            GroupFamily::Free => {
                if self.relators.iter().all(|r| r.is_empty()) {
                    Ok(())
                } else {
                    Err(mismatch())
                }
            }
            GroupFamily::Integers => {
                if self.generators == 1 && self.relators.iter().all(|r| r.is_empty()) {
                    Ok(())
                } else {
                    Err(mismatch())
                }
            }
            GroupFamily::Cyclic(p) => {
                let ok = self.generators == 1
                    && self.relators.len() == 1
                    && (self.relators[0].cyclically_equal(&presentations::power_relator(*p)));
                if ok {
                    Ok(())
                } else {
                    Err(mismatch())
                }
            }
            GroupFamily::Klein => {
                let ok = self.generators == 2
                    && self.relators.len() == 1
                    && self.relators[0].cyclically_equal(&presentations::klein_relator());
                if ok {
                    Ok(())
                } else {
                    Err(mismatch())
                }
            }
            GroupFamily::OrientableSurface(g) => {
                let ok = *g >= 2
                    && self.generators == 2 * *g as usize
                    && self.relators.len() == 1
                    && self.relators[0]
                        .cyclically_equal(&presentations::commutator_product_relator(*g));
                if ok {
                    Ok(())
                } else {
                    Err(mismatch())
                }
            }
            GroupFamily::NonOrientableSurface(n) => {
                let ok = *n >= 1
                    && self.generators == *n as usize
                    && self.relators.len() == 1
                    && self.relators[0].cyclically_equal(&presentations::crosscap_relator(*n));
                if ok {
                    Ok(())
                } else {
                    Err(mismatch())
                }
            }
            GroupFamily::DirectProduct {
                left,
                left_gens,
                right,
                right_gens,
            } => {
                if self.generators != left_gens + right_gens {
                    return Err(mismatch());
                }
                // Every relator must live in one factor or be a cross
                // commutator [x_i, y_j].
                let mut left_rel = Vec::new();
                let mut right_rel = Vec::new();
                for r in &self.relators {
                    let max = r.max_generator();
                    if max.is_none_or(|m| m < *left_gens) {
                        left_rel.push(r.clone());
                    } else if r.0.iter().all(|l| l.gen >= *left_gens) {
                        right_rel.push(Word(
                            r.0.iter()
                                .map(|l| GenLetter {
                                    gen: l.gen - left_gens,
                                    inverse: l.inverse,
                                })
                                .collect(),
                        ));
                    } else if !is_cross_commutator(r, *left_gens) {
                        return Err(mismatch());
                    }
                }
                GroupPresentation::new(*left_gens, left_rel, (**left).clone())?;
                GroupPresentation::new(*right_gens, right_rel, (**right).clone())?;
                Ok(())
            }
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn validate_word(&self, w: &Word) -> Result<(), GroupError> {
        if let Some(g) = w.max_generator() {
            if g >= self.generators {
                return Err(GroupError::InvalidWord {
                    gen: g,
                    max: self.generators,
                });
            }
        }
        Ok(())
    }
}

fn is_cross_commutator(r: &Word, left_gens: usize) -> bool {
    let r = r.free_reduce();
    if r.len() != 4 {
        return false;
    }
    let (x, y, xi, yi) = (r.0[0], r.0[1], r.0[2], r.0[3]);
    let sides_ok = (x.gen < left_gens) != (y.gen < left_gens);
    sides_ok && xi == x.inverted() && yi == y.inverted()
}

/// Infers the family tag from the relator shape.
pub fn recognize_family(generators: usize, relators: &[Word]) -> GroupFamily {
    let reduced: Vec<Word> = relators
        .iter()
        .map(|r| r.cyclically_reduce())
        .filter(|r| !r.is_empty())
        .collect();
    if reduced.is_empty() {
        return match generators {
            0 => GroupFamily::Trivial,
            1 => GroupFamily::Integers,
            _ => GroupFamily::Free,
        };
    }
    if reduced.len() == 1 {
        let r = &reduced[0];
        if generators == 1 && r.0.iter().all(|l| l.gen == 0) {
            let sums = r.exponent_sums(1);
            if sums[0].unsigned_abs() as usize == r.len() {
                return GroupFamily::Cyclic(r.len() as u64);
            }
        }
        if generators == 2 && r.cyclically_equal(&presentations::klein_relator()) {
            return GroupFamily::Klein;
        }
        if generators.is_multiple_of(2) && generators > 0 {
            let g = (generators / 2) as u32;
            if r.cyclically_equal(&presentations::commutator_product_relator(g)) {
                return if g == 1 {
                    // The torus relator: Z x Z via the product solver.
                    GroupFamily::DirectProduct {
                        left: Box::new(GroupFamily::Integers),
                        left_gens: 1,
                        right: Box::new(GroupFamily::Integers),
                        right_gens: 1,
                    }
                } else {
                    GroupFamily::OrientableSurface(g)
                };
            }
        }
        let n = generators as u32;
        if n >= 2 && r.cyclically_equal(&presentations::crosscap_relator(n)) {
            return GroupFamily::NonOrientableSurface(n);
        }
    }
    GroupFamily::Opaque
}

/// Three-valued verdicts for word-problem answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trilean {
    Yes,
    No,
    Unknown,
}

impl Trilean {
    pub fn from_bool(b: bool) -> Trilean {
        if b {
            Trilean::Yes
        } else {
            Trilean::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Trilean::Yes
    }
}

/// Family-specific canonical form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Canonical {
    /// Element of the trivial group.
    Unit,
    /// Integer exponent (infinite cyclic).
    Int(i64),
    /// Residue in `0..p`.
    Residue(u64),
    /// Klein bottle normal form.
    Klein(KleinNf),
    /// A word: freely reduced (free families), Dehn-reduced (surfaces), or
    /// merely freely reduced with no uniqueness claim (opaque).
    Word(Word),
    /// Componentwise form for direct products.
    Pair(Box<Canonical>, Box<Canonical>),
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Canonical::Unit => f.write_str("1"),
            Canonical::Int(n) => write!(f, "{n}"),
            Canonical::Residue(r) => write!(f, "{r}"),
            Canonical::Klein(k) => write!(f, "{k}"),
            Canonical::Word(w) => write!(f, "{w}"),
            Canonical::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    NormalForm,
    Dehn,
    BoundedSearch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverVerdict {
    pub canonical: Canonical,
    pub identity: Trilean,
    pub method: SolveMethod,
}

/// Default search depth for opaque presentations.
pub const OPAQUE_SEARCH_DEPTH: usize = 6;

/// Dispatches the word problem on the family tag. Exact families return a
/// canonical form and a definite verdict; opaque presentations fall back to
/// abelianization (sound "no") and bounded search (sound "yes").
pub fn solver_normalize(pres: &GroupPresentation, w: &Word) -> Result<SolverVerdict, GroupError> {
    pres.validate_word(w)?;
    Ok(solve_unchecked(pres, w))
}

fn solve_unchecked(pres: &GroupPresentation, w: &Word) -> SolverVerdict {
    match pres.family() {
        GroupFamily::Trivial => SolverVerdict {
            canonical: Canonical::Unit,
            identity: Trilean::Yes,
            method: SolveMethod::NormalForm,
        },
        GroupFamily::Free => {
            let reduced = w.free_reduce();
            SolverVerdict {
                identity: Trilean::from_bool(reduced.is_empty()),
                canonical: Canonical::Word(reduced),
                method: SolveMethod::NormalForm,
            }
        }
        GroupFamily::Integers => {
            let sum = w.exponent_sums(1)[0];
            SolverVerdict {
                canonical: Canonical::Int(sum),
                identity: Trilean::from_bool(sum == 0),
                method: SolveMethod::NormalForm,
            }
        }
        GroupFamily::Cyclic(p) => {
            let sum = w.exponent_sums(1)[0];
            let r = sum.rem_euclid(*p as i64) as u64;
            SolverVerdict {
                canonical: Canonical::Residue(r),
                identity: Trilean::from_bool(r == 0),
                method: SolveMethod::NormalForm,
            }
        }
        GroupFamily::Klein => {
            let nf = fold_klein(w);
            SolverVerdict {
                identity: Trilean::from_bool(nf.is_identity()),
                canonical: Canonical::Klein(nf),
                method: SolveMethod::NormalForm,
            }
        }
        GroupFamily::NonOrientableSurface(1) => {
            let sum = w.exponent_sums(1)[0];
            let r = sum.rem_euclid(2) as u64;
            SolverVerdict {
                canonical: Canonical::Residue(r),
                identity: Trilean::from_bool(r == 0),
                method: SolveMethod::NormalForm,
            }
        }
        GroupFamily::NonOrientableSurface(2) => {
            // <a, b | a^2 b^2> is the Klein bottle group under x = a,
            // y = a b (so a -> x, b -> x^-1 y).
            let nf = fold_klein_via_crosscap(w);
            SolverVerdict {
                identity: Trilean::from_bool(nf.is_identity()),
                canonical: Canonical::Klein(nf),
                method: SolveMethod::NormalForm,
            }
        }
        GroupFamily::OrientableSurface(_) | GroupFamily::NonOrientableSurface(_) => {
            let reduced = dehn_reduce(w, pres.relators());
            SolverVerdict {
                identity: Trilean::from_bool(reduced.is_empty()),
                canonical: Canonical::Word(reduced),
                method: SolveMethod::Dehn,
            }
        }
        GroupFamily::DirectProduct {
            left,
            left_gens,
            right,
            right_gens,
        } => {
            let (lw, rw) = split_product_word(w, *left_gens);
            let lp = product_factor(pres, left, *left_gens, true);
            let rp = product_factor(pres, right, *right_gens, false);
            let lv = solve_unchecked(&lp, &lw);
            let rv = solve_unchecked(&rp, &rw);
            let identity = match (lv.identity, rv.identity) {
                (Trilean::Yes, Trilean::Yes) => Trilean::Yes,
                (Trilean::No, _) | (_, Trilean::No) => Trilean::No,
                _ => Trilean::Unknown,
            };
            SolverVerdict {
                canonical: Canonical::Pair(Box::new(lv.canonical), Box::new(rv.canonical)),
                identity,
                method: SolveMethod::NormalForm,
            }
        }
        GroupFamily::Opaque => {
            let reduced = w.free_reduce();
            if reduced.is_empty() {
                return SolverVerdict {
                    canonical: Canonical::Word(reduced),
                    identity: Trilean::Yes,
                    method: SolveMethod::NormalForm,
                };
            }
            let ab = abelianize(pres, w);
            if ab.iter().any(|&x| x != 0) {
                return SolverVerdict {
                    canonical: Canonical::Word(reduced),
                    identity: Trilean::No,
                    method: SolveMethod::BoundedSearch(0),
                };
            }
            let out = bounded_identity_search(
                &reduced,
                pres.relators(),
                SearchLimits::depth(OPAQUE_SEARCH_DEPTH),
            );
            SolverVerdict {
                canonical: Canonical::Word(reduced),
                identity: if out.found_identity {
                    Trilean::Yes
                } else {
                    Trilean::Unknown
                },
                method: SolveMethod::BoundedSearch(OPAQUE_SEARCH_DEPTH),
            }
        }
    }
}

fn fold_klein(w: &Word) -> KleinNf {
    let a = KleinNf::new(1, 0);
    let b = KleinNf::new(0, 1);
    w.0.iter().fold(KleinNf::identity(), |acc, l| {
        let x = match (l.gen, l.inverse) {
            (0, false) => a,
            (0, true) => klein_inv(a),
            (1, false) => b,
            (1, true) => klein_inv(b),
            _ => unreachable!("validated word"),
        };
        klein_mul(acc, x)
    })
}

fn fold_klein_via_crosscap(w: &Word) -> KleinNf {
    let x = KleinNf::new(1, 0);
    let y = KleinNf::new(0, 1);
    // a -> x, b -> x^-1 y.
    let b_img = klein_mul(klein_inv(x), y);
    w.0.iter().fold(KleinNf::identity(), |acc, l| {
        let img = match (l.gen, l.inverse) {
            (0, false) => x,
            (0, true) => klein_inv(x),
            (1, false) => b_img,
            (1, true) => klein_inv(b_img),
            _ => unreachable!("validated word"),
        };
        klein_mul(acc, img)
    })
}

/// Splits a product word into factor words, preserving in-factor order.
pub fn split_product_word(w: &Word, left_gens: usize) -> (Word, Word) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for l in &w.0 {
        if l.gen < left_gens {
            left.push(*l);
        } else {
            right.push(GenLetter {
                gen: l.gen - left_gens,
                inverse: l.inverse,
            });
        }
    }
    (Word(left), Word(right))
}

fn product_factor(
    pres: &GroupPresentation,
    family: &GroupFamily,
    gens: usize,
    left_side: bool,
) -> GroupPresentation {
    let offset = if left_side {
        0
    } else {
        pres.generators - gens
    };
    let relators = pres
        .relators
        .iter()
        .filter_map(|r| {
            // Cross commutators touch both blocks and are excluded here.
            let in_factor = r
                .0
                .iter()
                .all(|l| l.gen >= offset && l.gen < offset + gens);
            if !in_factor || r.is_empty() {
                return None;
            }
            Some(Word(
                r.0.iter()
                    .map(|l| GenLetter {
                        gen: l.gen - offset,
                        inverse: l.inverse,
                    })
                    .collect(),
            ))
        })
        .collect();
    GroupPresentation::new(gens, relators, family.clone())
        .expect("validated product factor")
}

/// Exponent-sum vector reduced by the abelianized relators.
///
/// Each nonzero relator vector is applied by Euclidean reduction at its
/// first nonzero coordinate, in relator order. For the catalog families
/// (single-generator powers, the Klein relator, crosscap relators, product
/// presentations) this yields a canonical representative; surface relators
/// abelianize to zero and impose nothing.
pub fn abelianize(pres: &GroupPresentation, w: &Word) -> Vec<i64> {
    let k = pres.generators();
    let mut v = w.exponent_sums(k);
    for r in pres.relators() {
        let mut rv = r.exponent_sums(k);
        if let Some(i) = rv.iter().position(|&x| x != 0) {
            if rv[i] < 0 {
                for x in rv.iter_mut() {
                    *x = -*x;
                }
            }
            let q = v[i].div_euclid(rv[i]);
            if q != 0 {
                for (vx, rx) in v.iter_mut().zip(rv.iter()) {
                    *vx -= q * rx;
                }
            }
        }
    }
    v
}

/// Canonical-form algebra shared by the free product and encode machinery:
/// re-solve the concatenation / inversion of representative words.
pub fn canonical_to_word(c: &Canonical, pres: &GroupPresentation) -> Word {
    match (c, pres.family()) {
        (Canonical::Unit, _) => Word::empty(),
        (Canonical::Int(n), _) => Word::power(0, *n),
        (Canonical::Residue(r), _) => Word::power(0, *r as i64),
        (Canonical::Klein(k), GroupFamily::NonOrientableSurface(2)) => {
            // Invert the substitution x = a, y = a b: x^m y^n pulls back to
            // a^m (a^-1 (a b))^n = a^m (b)^n... the image of b is x^-1 y, so
            // y = a b as a word over {a, b}.
            let mut w = Word::power(0, k.m);
            let ab = Word(vec![GenLetter::new(0), GenLetter::new(1)]);
            let y_img = if k.n >= 0 { ab.clone() } else { ab.inverted() };
            for _ in 0..k.n.unsigned_abs() {
                w = w.concat(&y_img);
            }
            w.free_reduce()
        }
        (Canonical::Klein(k), _) => {
            Word::power(0, k.m).concat(&Word::power(1, k.n))
        }
        (Canonical::Word(w), _) => w.clone(),
        (Canonical::Pair(a, b), GroupFamily::DirectProduct { left, left_gens, right, right_gens }) => {
            let lp = product_factor(pres, left, *left_gens, true);
            let rp = product_factor(pres, right, *right_gens, false);
            let lw = canonical_to_word(a, &lp);
            let rw = canonical_to_word(b, &rp);
            let shifted = Word(
                rw.0.iter()
                    .map(|l| GenLetter {
                        gen: l.gen + left_gens,
                        inverse: l.inverse,
                    })
                    .collect(),
            );
            lw.concat(&shifted)
        }
        (Canonical::Pair(..), _) => Word::empty(),
    }
}

/// Multiplies two canonical forms by re-solving their concatenated words.
pub fn canonical_mul(
    pres: &GroupPresentation,
    a: &Canonical,
    b: &Canonical,
) -> Result<SolverVerdict, GroupError> {
    let w = canonical_to_word(a, pres).concat(&canonical_to_word(b, pres));
    solver_normalize(pres, &w)
}

/// Inverts a canonical form by re-solving the inverted word.
pub fn canonical_inv(pres: &GroupPresentation, a: &Canonical) -> Result<SolverVerdict, GroupError> {
    let w = canonical_to_word(a, pres).inverted();
    solver_normalize(pres, &w)
}

/// Light presentation cleanup: drops empty relators and kills generators
/// that appear alone as a relator (deleting their other occurrences).
/// Repeats to a fixpoint and re-recognizes the family.
pub fn simplify_presentation(pres: &GroupPresentation) -> GroupPresentation {
    let mut gens = pres.generators();
    let mut relators: Vec<Word> = pres
        .relators()
        .iter()
        .map(|r| r.cyclically_reduce())
        .filter(|r| !r.is_empty())
        .collect();
    while let Some(pos) = relators.iter().position(|r| r.len() == 1) {
        let dead = relators[pos].0[0].gen;
        relators.remove(pos);
        relators = relators
            .iter()
            .map(|r| {
                Word(
                    r.0.iter()
                        .filter(|l| l.gen != dead)
                        .map(|l| GenLetter {
                            gen: if l.gen > dead { l.gen - 1 } else { l.gen },
                            inverse: l.inverse,
                        })
                        .collect(),
                )
                .cyclically_reduce()
            })
            .filter(|r| !r.is_empty())
            .collect();
        gens -= 1;
    }
    GroupPresentation::recognized(gens, relators)
}
