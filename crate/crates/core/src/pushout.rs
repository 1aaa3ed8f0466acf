//! Pushout spaces: two presentations glued along maps from a third, with
//! glue edges and naturality-square relators; the induced presentation of
//! the fundamental group; and the decode/encode maps between pushout loops
//! and free-product words over the factor groups.

use std::fmt;

use thiserror::Error;

use crate::expr::{ComplexMap, MapError, PathError, PathExpr};
use crate::free_product::{
    apply_amalg_move, fp_normalize, AmalgMove, FpContext, FpError, FpLetter, FpWord, MoveDirection,
    Side,
};
use crate::group::{
    canonical_to_word, solver_normalize, Canonical, GenLetter, GroupError, GroupPresentation,
    Pi1Presentation, Word,
};
use crate::rewrite::normalize;
use crate::rng::SmallRng;
use crate::space::{Orientation, RelatorLetter, SpaceError, SpacePresentation};

/// Two spaces and the maps along which they are glued.
#[derive(Debug, Clone)]
pub struct PushoutSpec {
    pub a: SpacePresentation,
    pub b: SpacePresentation,
    pub c: SpacePresentation,
    /// `f : C -> A`
    pub f: ComplexMap,
    /// `g : C -> B`
    pub g: ComplexMap,
    /// Basepoint of the gluing space.
    pub c0: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PushoutError {
    #[error("ill-formed map: {0}")]
    IllFormedMap(#[from] MapError),
    #[error("basepoint `{0}` is not a point of the gluing space")]
    UnknownBasepoint(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error("letter is not a canonical factor element: {0}")]
    IllFormedLetter(String),
}

pub fn inl_point(p: &str) -> String {
    format!("inl:{p}")
}

pub fn inr_point(p: &str) -> String {
    format!("inr:{p}")
}

pub fn inl_edge(e: &str) -> String {
    format!("inl:{e}")
}

pub fn inr_edge(e: &str) -> String {
    format!("inr:{e}")
}

pub fn glue_edge(c: &str) -> String {
    format!("glue:{c}")
}

/// The built pushout: the combined presentation plus the two embeddings.
#[derive(Debug, Clone)]
pub struct PushoutSpace {
    pub space: SpacePresentation,
    /// Embedding of the left factor.
    pub inl: ComplexMap,
    /// Embedding of the right factor.
    pub inr: ComplexMap,
    /// Glue edge names, one per point of the gluing space.
    pub glue_edges: Vec<String>,
}

impl PushoutSpec {
    pub fn validate(&self) -> Result<(), PushoutError> {
        if !self.c.has_point(&self.c0) {
            return Err(PushoutError::UnknownBasepoint(self.c0.clone()));
        }
        self.a.check_connected()?;
        self.b.check_connected()?;
        self.c.check_connected()?;
        Ok(())
    }

    pub fn base_a(&self) -> String {
        self.f
            .point_image(&self.c0)
            .expect("validated map covers c0")
            .to_string()
    }

    pub fn base_b(&self) -> String {
        self.g
            .point_image(&self.c0)
            .expect("validated map covers c0")
            .to_string()
    }

    /// The pushout basepoint, `inl:f(c0)`.
    pub fn basepoint(&self) -> String {
        inl_point(&self.base_a())
    }
}

/// Raw letter sequence of an expression (no cancellation).
fn flatten_letters(expr: &PathExpr) -> Vec<RelatorLetter> {
    fn go(expr: &PathExpr, flip: bool, out: &mut Vec<RelatorLetter>) {
        match expr {
            PathExpr::Refl(_) => {}
            PathExpr::Edge(name, orient) => {
                let o = if flip { orient.flip() } else { *orient };
                out.push((name.clone(), o));
            }
            PathExpr::Symm(c) => go(c, !flip, out),
            PathExpr::Trans(l, r) => {
                if flip {
                    go(r, true, out);
                    go(l, true, out);
                } else {
                    go(l, false, out);
                    go(r, false, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(expr, false, &mut out);
    out
}

/// Builds the pushout: disjoint points and edges of both factors, one glue
/// edge per point of the gluing space, the factors' relators, and one
/// naturality square per edge of the gluing space.
pub fn build_pushout(spec: &PushoutSpec) -> Result<PushoutSpace, PushoutError> {
    spec.validate()?;
    let mut points = Vec::new();
    for p in spec.a.points() {
        points.push(inl_point(p));
    }
    for p in spec.b.points() {
        points.push(inr_point(p));
    }

    let mut edges = Vec::new();
    for e in spec.a.edges() {
        edges.push(crate::space::EdgeDef::new(
            inl_edge(&e.name),
            inl_point(&e.src),
            inl_point(&e.dst),
        ));
    }
    for e in spec.b.edges() {
        edges.push(crate::space::EdgeDef::new(
            inr_edge(&e.name),
            inr_point(&e.src),
            inr_point(&e.dst),
        ));
    }
    let mut glue_edges = Vec::new();
    for c in spec.c.points() {
        let fa = spec
            .f
            .point_image(c)
            .ok_or_else(|| PushoutError::UnknownBasepoint(c.clone()))?;
        let gb = spec
            .g
            .point_image(c)
            .ok_or_else(|| PushoutError::UnknownBasepoint(c.clone()))?;
        let name = glue_edge(c);
        edges.push(crate::space::EdgeDef::new(
            name.clone(),
            inl_point(fa),
            inr_point(gb),
        ));
        glue_edges.push(name);
    }

    let rename = |rel: &[RelatorLetter], prefix: fn(&str) -> String| -> Vec<RelatorLetter> {
        rel.iter().map(|(n, o)| (prefix(n), *o)).collect()
    };
    let mut relators = Vec::new();
    for rel in spec.a.relators() {
        relators.push(rename(rel, inl_edge));
    }
    for rel in spec.b.relators() {
        relators.push(rename(rel, inr_edge));
    }
    // Naturality square for each edge e : c1 -> c2 of the gluing space:
    //   inl(f(e)) . glue(c2) . inr(g(e))^-1 . glue(c1)^-1
    for e in spec.c.edges() {
        let f_img = spec
            .f
            .edge_image(&e.name)
            .ok_or_else(|| PushoutError::IllFormedLetter(e.name.clone()))?;
        let g_img = spec
            .g
            .edge_image(&e.name)
            .ok_or_else(|| PushoutError::IllFormedLetter(e.name.clone()))?;
        let mut letters = rename(&flatten_letters(f_img), inl_edge);
        letters.push((glue_edge(&e.dst), Orientation::Forward));
        let mut back: Vec<RelatorLetter> = rename(&flatten_letters(g_img), inr_edge);
        back.reverse();
        for (n, o) in back {
            letters.push((n, o.flip()));
        }
        letters.push((glue_edge(&e.src), Orientation::Reverse));
        relators.push(letters);
    }

    let space = SpacePresentation::new(points, edges, relators, spec.basepoint())?;

    let inl = ComplexMap::new(
        &spec.a,
        &space,
        spec.a
            .points()
            .iter()
            .map(|p| (p.clone(), inl_point(p)))
            .collect(),
        spec.a
            .edges()
            .iter()
            .map(|e| (e.name.clone(), PathExpr::edge(inl_edge(&e.name))))
            .collect(),
    )?;
    let inr = ComplexMap::new(
        &spec.b,
        &space,
        spec.b
            .points()
            .iter()
            .map(|p| (p.clone(), inr_point(p)))
            .collect(),
        spec.b
            .edges()
            .iter()
            .map(|e| (e.name.clone(), PathExpr::edge(inr_edge(&e.name))))
            .collect(),
    )?;

    Ok(PushoutSpace {
        space,
        inl,
        inr,
        glue_edges,
    })
}

/// The spanning-tree presentation of the pushout's fundamental group, with
/// the basepoint glue edge forced into the tree so right-factor conjugation
/// vanishes from presentation words.
pub fn svk_presentation(spec: &PushoutSpec) -> Result<Pi1Presentation, PushoutError> {
    let built = build_pushout(spec)?;
    let forced = vec![glue_edge(&spec.c0)];
    Ok(Pi1Presentation::with_priority_edges(&built.space, &forced)?)
}

/// A pushout with everything needed to decode and encode loops: the built
/// space, its group presentation, and based presentations of both factors
/// and of the gluing space.
#[derive(Debug, Clone)]
pub struct SvkInstance {
    spec: PushoutSpec,
    built: PushoutSpace,
    pi1: Pi1Presentation,
    a_pi1: Pi1Presentation,
    b_pi1: Pi1Presentation,
    c_pi1: Pi1Presentation,
    fp: FpContext,
}

impl SvkInstance {
    /// Builds the pushout and the amalgamated free-product context
    /// `pi1(A) *_{pi1(C)} pi1(B)` with inclusions induced by the maps.
    pub fn new(spec: PushoutSpec) -> Result<SvkInstance, PushoutError> {
        let built = build_pushout(&spec)?;
        let forced = vec![glue_edge(&spec.c0)];
        let pi1 = Pi1Presentation::with_priority_edges(&built.space, &forced)?;

        let a_based = spec.a.with_basepoint(spec.base_a())?;
        let b_based = spec.b.with_basepoint(spec.base_b())?;
        let c_based = spec.c.with_basepoint(spec.c0.clone())?;
        let a_pi1 = crate::group::presentation_of_pi1(&a_based)?;
        let b_pi1 = crate::group::presentation_of_pi1(&b_based)?;
        let c_pi1 = crate::group::presentation_of_pi1(&c_based)?;

        let mut incl_left = Vec::new();
        let mut incl_right = Vec::new();
        for gen in 0..c_pi1.presentation().generators() {
            let c_loop = c_pi1.generator_loop(gen);
            let in_a = spec.f.map_path(&c_loop)?;
            let in_b = spec.g.map_path(&c_loop)?;
            incl_left.push(a_pi1.encode_loop(&in_a)?);
            incl_right.push(b_pi1.encode_loop(&in_b)?);
        }
        let fp = FpContext::new(
            a_pi1.presentation().clone(),
            b_pi1.presentation().clone(),
            c_pi1.presentation().clone(),
            incl_left,
            incl_right,
        )?;

        Ok(SvkInstance {
            spec,
            built,
            pi1,
            a_pi1,
            b_pi1,
            c_pi1,
            fp,
        })
    }

    pub fn spec(&self) -> &PushoutSpec {
        &self.spec
    }

    pub fn space(&self) -> &SpacePresentation {
        &self.built.space
    }

    pub fn pi1(&self) -> &Pi1Presentation {
        &self.pi1
    }

    pub fn presentation(&self) -> &GroupPresentation {
        self.pi1.presentation()
    }

    pub fn factor_pi1(&self, side: Side) -> &Pi1Presentation {
        match side {
            Side::Left => &self.a_pi1,
            Side::Right => &self.b_pi1,
        }
    }

    pub fn amalgam_pi1(&self) -> &Pi1Presentation {
        &self.c_pi1
    }

    pub fn fp_context(&self) -> &FpContext {
        &self.fp
    }

    pub fn glue_c0(&self) -> String {
        glue_edge(&self.spec.c0)
    }

    fn letter_loop(&self, letter: &FpLetter) -> Result<PathExpr, PushoutError> {
        let (factor_pi1, embed) = match letter.side {
            Side::Left => (&self.a_pi1, &self.built.inl),
            Side::Right => (&self.b_pi1, &self.built.inr),
        };
        let word = canonical_to_word(&letter.elem, factor_pi1.presentation());
        factor_pi1
            .presentation()
            .validate_word(&word)
            .map_err(|e| PushoutError::IllFormedLetter(e.to_string()))?;
        let factor_loop = factor_pi1.word_to_loop(&word);
        Ok(embed.map_path(&factor_loop)?)
    }

    /// The decode map: `nil` becomes the constant path at the basepoint, a
    /// left letter embeds directly, a right letter is conjugated by the
    /// basepoint glue edge. Right-associated.
    pub fn decode(&self, w: &FpWord) -> Result<PathExpr, PushoutError> {
        let base = self.spec.basepoint();
        let mut expr = PathExpr::refl(&base);
        let glue = PathExpr::edge(self.glue_c0());
        for letter in w.0.iter().rev() {
            let embedded = self.letter_loop(letter)?;
            let head = match letter.side {
                Side::Left => embedded,
                Side::Right => glue.clone().trans(embedded.trans(glue.clone().symm())),
            };
            expr = head.trans(expr);
        }
        Ok(expr)
    }

    /// The encode map: normalize the loop, erase spanning-tree letters,
    /// split the rest at glue letters into factor runs, and solve each run
    /// in its factor. The result is a normalized product word.
    pub fn encode(&self, expr: &PathExpr) -> Result<FpWord, PushoutError> {
        let (nf, _) = normalize(&self.built.space, expr)?;
        let mut letters: Vec<FpLetter> = Vec::new();
        let mut run: Vec<GenLetter> = Vec::new();
        let mut run_side: Option<Side> = None;

        fn flush(
            inst: &SvkInstance,
            run: &mut Vec<GenLetter>,
            run_side: &mut Option<Side>,
            letters: &mut Vec<FpLetter>,
        ) -> Result<(), PushoutError> {
            if let Some(side) = run_side.take() {
                if !run.is_empty() {
                    let word = Word(std::mem::take(run));
                    let pres = inst.factor_pi1(side).presentation();
                    let canonical = solver_normalize(pres, &word)?.canonical;
                    letters.push(FpLetter {
                        side,
                        elem: canonical,
                    });
                }
            }
            run.clear();
            Ok(())
        }

        for (name, orient) in nf.letters() {
            if self.pi1.tree_edges().contains(&name) {
                continue;
            }
            if name.strip_prefix("glue:").is_some() {
                // Non-tree glue letters separate factor runs; their classes
                // are controlled by the naturality relators.
                flush(self, &mut run, &mut run_side, &mut letters)?;
                continue;
            }
            let (side, factor_pi1, local) = if let Some(local) = name.strip_prefix("inl:") {
                (Side::Left, &self.a_pi1, local)
            } else if let Some(local) = name.strip_prefix("inr:") {
                (Side::Right, &self.b_pi1, local)
            } else {
                return Err(PushoutError::IllFormedLetter(name.clone()));
            };
            if run_side != Some(side) {
                flush(self, &mut run, &mut run_side, &mut letters)?;
                run_side = Some(side);
            }
            if let Some(gen) = factor_pi1.generator_of_edge(local) {
                run.push(GenLetter {
                    gen,
                    inverse: orient.is_reverse(),
                });
            }
            // Factor tree edges contribute nothing.
        }
        flush(self, &mut run, &mut run_side, &mut letters)?;
        Ok(fp_normalize(&self.fp, &FpWord(letters))?)
    }

    /// Solver-level equality of two loops in the pushout group.
    pub fn loops_solver_equal(&self, p: &PathExpr, q: &PathExpr) -> Result<bool, PushoutError> {
        let wp = self.pi1.encode_loop(p)?;
        let wq = self.pi1.encode_loop(q)?;
        let pres = self.pi1.presentation();
        let cp = solver_normalize(pres, &wp)?.canonical;
        let cq = solver_normalize(pres, &wq)?.canonical;
        Ok(cp == cq)
    }

    /// All amalgamation moves (single amalgam generators, both directions)
    /// applicable to `w`.
    pub fn applicable_moves(&self, w: &FpWord) -> Vec<AmalgMove> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for gen in 0..self.c_pi1.presentation().generators() {
                for exp in [1i64, -1] {
                    for direction in [MoveDirection::LeftToRight, MoveDirection::RightToLeft] {
                        let mv = AmalgMove {
                            position: pos,
                            element: Word::power(gen, exp),
                            direction,
                        };
                        if apply_amalg_move(&self.fp, w, &mv).is_ok() {
                            out.push(mv);
                        }
                    }
                }
            }
        }
        out
    }

    /// Samples random product words with random applicable amalgamation
    /// moves and checks that decoding both sides of each move gives
    /// solver-equal loops.
    pub fn check_decode_amalg(
        &self,
        samples: usize,
        seed: u64,
    ) -> Result<DecodeAmalgReport, PushoutError> {
        let mut rng = SmallRng::seeded(seed);
        let mut report = DecodeAmalgReport::default();
        let amalgam_gens = self.c_pi1.presentation().generators();
        let mut produced = 0usize;
        let mut rounds = 0usize;
        while produced < samples {
            rounds += 1;
            if amalgam_gens == 0 || rounds > samples.saturating_mul(50) {
                // Trivial amalgam: no moves can ever apply; report as-is.
                break;
            }
            let w = self.random_word_with_inclusion_letter(&mut rng)?;
            let moves = self.applicable_moves(&w);
            if moves.is_empty() {
                continue;
            }
            produced += 1;
            report.samples += 1;
            let mv = moves[rng.below(moves.len())].clone();
            let w2 = apply_amalg_move(&self.fp, &w, &mv)?;
            let p = self.decode(&w)?;
            let q = self.decode(&w2)?;
            if !self.loops_solver_equal(&p, &q)? {
                report.failures.push(DecodeAmalgFailure {
                    word: w.clone(),
                    moved: w2.clone(),
                    mv,
                });
            }
        }
        Ok(report)
    }

    /// A short random word that contains at least one inclusion-image
    /// letter, so amalgamation moves can apply.
    fn random_word_with_inclusion_letter(
        &self,
        rng: &mut SmallRng,
    ) -> Result<FpWord, PushoutError> {
        let amalgam_gens = self.c_pi1.presentation().generators();
        let mut letters = Vec::new();
        let len = 1 + rng.below(3);
        let special = rng.below(len);
        for i in 0..len {
            let side = if rng.chance(1, 2) {
                Side::Left
            } else {
                Side::Right
            };
            if i == special {
                let gen = rng.below(amalgam_gens);
                let exp = if rng.chance(1, 2) { 1 } else { -1 };
                let elem = self.fp.include_canonical(side, &Word::power(gen, exp))?;
                letters.push(FpLetter { side, elem });
            } else {
                let pres = self.factor_pi1(side).presentation();
                let k = pres.generators();
                let word = if k == 0 {
                    Word::empty()
                } else {
                    let mut w = Vec::new();
                    for _ in 0..rng.below(3) {
                        w.push(GenLetter {
                            gen: rng.below(k),
                            inverse: rng.chance(1, 2),
                        });
                    }
                    Word(w)
                };
                let elem = solver_normalize(pres, &word)?.canonical;
                letters.push(FpLetter { side, elem });
            }
        }
        Ok(FpWord(letters))
    }

    /// Round-trip report: encode after decode on enumerated normalized
    /// product words, and decode after encode on enumerated group elements.
    pub fn round_trip_check(
        &self,
        bounds: &RoundTripBounds,
    ) -> Result<RoundTripReport, PushoutError> {
        let mut report = RoundTripReport::default();

        // encode(decode(w)) must reproduce w on normalized words.
        for w in enumerate_fp_words(&self.fp, bounds)? {
            let normalized = fp_normalize(&self.fp, &w)?;
            let loop_expr = self.decode(&normalized)?;
            let back = self.encode(&loop_expr)?;
            report.encode_decode_checked += 1;
            if back != normalized {
                report.encode_decode_failures.push((normalized, back));
            }
        }

        // decode(encode(alpha)) must be solver-equal to alpha for group
        // elements realized from short words over the presentation.
        let pres = self.pi1.presentation();
        let mut seen = std::collections::HashSet::new();
        for word in enumerate_group_words(pres.generators(), bounds.group_word_len) {
            let canonical = solver_normalize(pres, &word)?.canonical;
            if !seen.insert(canonical) {
                continue;
            }
            let loop_expr = self.pi1.word_to_loop(&word);
            let encoded = self.encode(&loop_expr)?;
            let decoded = self.decode(&encoded)?;
            report.decode_encode_checked += 1;
            if !self.loops_solver_equal(&loop_expr, &decoded)? {
                report.decode_encode_failures.push(word);
            }
        }
        Ok(report)
    }
}

/// Bounds for [`SvkInstance::round_trip_check`].
#[derive(Debug, Clone, Copy)]
pub struct RoundTripBounds {
    /// Maximum product-word length (letter count).
    pub word_len: usize,
    /// Exponent range for integer-like factor elements.
    pub max_exp: i64,
    /// Maximum length of pushout-presentation words enumerated for the
    /// decode-encode direction.
    pub group_word_len: usize,
}

impl Default for RoundTripBounds {
    fn default() -> Self {
        RoundTripBounds {
            word_len: 4,
            max_exp: 2,
            group_word_len: 3,
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct DecodeAmalgReport {
    pub samples: usize,
    pub failures: Vec<DecodeAmalgFailure>,
}

#[derive(Debug, Clone)]
pub struct DecodeAmalgFailure {
    pub word: FpWord,
    pub moved: FpWord,
    pub mv: AmalgMove,
}

impl DecodeAmalgReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Default, Clone)]
pub struct RoundTripReport {
    pub encode_decode_checked: usize,
    pub encode_decode_failures: Vec<(FpWord, FpWord)>,
    pub decode_encode_checked: usize,
    pub decode_encode_failures: Vec<Word>,
}

impl RoundTripReport {
    pub fn all_passed(&self) -> bool {
        self.encode_decode_failures.is_empty() && self.decode_encode_failures.is_empty()
    }
}

impl fmt::Display for RoundTripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "encode-decode: {}/{} ok; decode-encode: {}/{} ok",
            self.encode_decode_checked - self.encode_decode_failures.len(),
            self.encode_decode_checked,
            self.decode_encode_checked - self.decode_encode_failures.len(),
            self.decode_encode_checked,
        )
    }
}

/// Nontrivial canonical elements of a factor, bounded.
fn enumerate_canonicals(
    pres: &GroupPresentation,
    bounds: &RoundTripBounds,
) -> Result<Vec<Canonical>, PushoutError> {
    use crate::group::GroupFamily;
    let mut out = Vec::new();
    match pres.family() {
        GroupFamily::Trivial => {}
        GroupFamily::Integers => {
            for n in 1..=bounds.max_exp {
                out.push(Canonical::Int(n));
                out.push(Canonical::Int(-n));
            }
        }
        GroupFamily::Cyclic(p) => {
            for r in 1..*p {
                out.push(Canonical::Residue(r));
            }
        }
        _ => {
            // Enumerate short words and keep distinct nontrivial canonicals.
            let mut seen = std::collections::HashSet::new();
            for w in enumerate_group_words(pres.generators(), 2) {
                let v = solver_normalize(pres, &w)?;
                if v.identity == crate::group::Trilean::Yes {
                    continue;
                }
                if seen.insert(v.canonical.clone()) {
                    out.push(v.canonical);
                }
            }
        }
    }
    Ok(out)
}

/// All normalized product words up to the bounded length, built from
/// alternating nontrivial factor elements.
pub fn enumerate_fp_words(
    ctx: &FpContext,
    bounds: &RoundTripBounds,
) -> Result<Vec<FpWord>, PushoutError> {
    let left = enumerate_canonicals(ctx.factor(Side::Left), bounds)?;
    let right = enumerate_canonicals(ctx.factor(Side::Right), bounds)?;
    let mut out = vec![FpWord::nil()];
    let mut frontier = vec![FpWord::nil()];
    for _ in 0..bounds.word_len {
        let mut next = Vec::new();
        for w in &frontier {
            let last = w.0.last().map(|l| l.side);
            for (side, elems) in [(Side::Left, &left), (Side::Right, &right)] {
                if last == Some(side) {
                    continue;
                }
                for e in elems {
                    let mut v = w.0.clone();
                    v.push(FpLetter {
                        side,
                        elem: e.clone(),
                    });
                    next.push(FpWord(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// All words of length <= `max_len` over `k` generators and inverses.
pub fn enumerate_group_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for gen in 0..k {
                for inverse in [false, true] {
                    let mut v = w.0.clone();
                    v.push(GenLetter { gen, inverse });
                    next.push(Word(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
