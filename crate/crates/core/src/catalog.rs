//! Ready-made spaces with their expected fundamental groups: circles,
//! bouquets, wedges, suspensions and spheres, the torus (via the product
//! formula), and the closed surfaces and lens spaces as one-relator cell
//! attachments.

use std::fmt;

use thiserror::Error;

use crate::expr::{ComplexMap, PathError, PathExpr};
use crate::group::{
    presentation_of_pi1, solver_normalize, GenLetter, GroupError, GroupFamily, GroupPresentation,
    Pi1Presentation, Word,
};
use crate::pushout::{PushoutError, PushoutSpec, SvkInstance};
use crate::space::{rose_edge_name, EdgeDef, Orientation, SpaceError, SpacePresentation};

/// Stable catalog tags; these strings are the CLI interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceTag {
    Circle,
    Bouquet,
    Wedge,
    Suspension,
    Sphere,
    Torus,
    Klein,
    Rp2,
    Surface,
    NonOrientable,
    Lens,
}

impl SpaceTag {
    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::Circle => "circle",
            SpaceTag::Bouquet => "bouquet",
            SpaceTag::Wedge => "wedge",
            SpaceTag::Suspension => "suspension",
            SpaceTag::Sphere => "sphere",
            SpaceTag::Torus => "torus",
            SpaceTag::Klein => "klein",
            SpaceTag::Rp2 => "rp2",
            SpaceTag::Surface => "surface",
            SpaceTag::NonOrientable => "nonorientable",
            SpaceTag::Lens => "lens",
        }
    }

    pub fn from_name(name: &str) -> Option<SpaceTag> {
        Some(match name {
            "circle" => SpaceTag::Circle,
            "bouquet" => SpaceTag::Bouquet,
            "wedge" => SpaceTag::Wedge,
            "suspension" => SpaceTag::Suspension,
            "sphere" => SpaceTag::Sphere,
            "torus" => SpaceTag::Torus,
            "klein" => SpaceTag::Klein,
            "rp2" => SpaceTag::Rp2,
            "surface" => SpaceTag::Surface,
            "nonorientable" => SpaceTag::NonOrientable,
            "lens" => SpaceTag::Lens,
            _ => return None,
        })
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog tag `{0}`")]
    UnknownTag(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Pushout(#[from] PushoutError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// A catalog space: a concrete presentation, the expected group family, and
/// the pushout route when one exists.
#[derive(Debug, Clone)]
pub struct SpaceCatalogEntry {
    pub tag: SpaceTag,
    pub params: Vec<u64>,
    /// A concrete presentation of the space (for pushout-built spaces, the
    /// built pushout presentation).
    pub space: SpacePresentation,
    /// The gluing description, for entries computed via the pushout route.
    pub pushout: Option<PushoutSpec>,
    /// Factor entries, for spaces built by the product formula.
    pub product: Option<(Box<SpaceCatalogEntry>, Box<SpaceCatalogEntry>)>,
    pub expected: GroupFamily,
    /// Mirrors whether the group is computed by the pushout schema.
    pub svk_route: bool,
}

fn rose_word_expr(n: usize, word: &Word) -> PathExpr {
    if word.is_empty() {
        return PathExpr::refl("base");
    }
    let letter = |l: &GenLetter| {
        let name = rose_edge_name(l.gen, n);
        PathExpr::Edge(
            name,
            if l.inverse {
                Orientation::Reverse
            } else {
                Orientation::Forward
            },
        )
    };
    let mut iter = word.0.iter().rev();
    let mut expr = letter(iter.next().unwrap());
    for l in iter {
        expr = letter(l).trans(expr);
    }
    expr
}

/// Wedge of two spaces at their basepoints: a pushout over the one-point
/// space.
pub fn wedge_spec(a: &SpacePresentation, b: &SpacePresentation) -> PushoutSpec {
    let c = SpacePresentation::point();
    PushoutSpec {
        f: ComplexMap::collapse_to(&c, a.basepoint()),
        g: ComplexMap::collapse_to(&c, b.basepoint()),
        a: a.clone(),
        b: b.clone(),
        c,
        c0: "pt".to_string(),
    }
}

/// Suspension of a space: two cone points glued along it.
pub fn suspension_spec(x: &SpacePresentation) -> PushoutSpec {
    let a = SpacePresentation::point();
    let b = SpacePresentation::point();
    PushoutSpec {
        f: ComplexMap::collapse_to(x, "pt"),
        g: ComplexMap::collapse_to(x, "pt"),
        a,
        b,
        c: x.clone(),
        c0: x.basepoint().to_string(),
    }
}

/// A disk attached to the bouquet of `n` circles along `attaching_word`:
/// the gluing space is a circle mapping to the word in the bouquet and
/// collapsing to a point on the disk side.
pub fn disk_attachment_spec(n: usize, attaching_word: &Word) -> Result<PushoutSpec, CatalogError> {
    let a = SpacePresentation::rose(n);
    let b = SpacePresentation::point();
    let c = SpacePresentation::circle();
    let f = ComplexMap::new(
        &c,
        &a,
        [("base".to_string(), "base".to_string())].into(),
        [("loop".to_string(), rose_word_expr(n, attaching_word))].into(),
    )
    .map_err(PushoutError::from)?;
    let g = ComplexMap::collapse_to(&c, "pt");
    Ok(PushoutSpec {
        a,
        b,
        c,
        f,
        g,
        c0: "base".to_string(),
    })
}

/// One-point presentation with `k` loops and the given relator words.
fn rose_with_relators(k: usize, relators: &[Word]) -> SpacePresentation {
    let edges: Vec<EdgeDef> = (0..k)
        .map(|i| EdgeDef::new(rose_edge_name(i, k), "base", "base"))
        .collect();
    let relator_letters = relators
        .iter()
        .map(|r| {
            r.0.iter()
                .map(|l| {
                    (
                        rose_edge_name(l.gen, k),
                        if l.inverse {
                            Orientation::Reverse
                        } else {
                            Orientation::Forward
                        },
                    )
                })
                .collect()
        })
        .collect();
    SpacePresentation::new(vec!["base".to_string()], edges, relator_letters, "base")
        .expect("rose with loop relators is always valid")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds a catalog entry. Parameters: `bouquet n`, `sphere n (n >= 2)`,
/// `surface g (g >= 1)`, `nonorientable n (n >= 1)`, `lens p q`.
pub fn make_space(tag: SpaceTag, params: &[u64]) -> Result<SpaceCatalogEntry, CatalogError> {
    use crate::group::presentations as rel;
    match tag {
        SpaceTag::Circle => Ok(SpaceCatalogEntry {
            tag,
            params: vec![],
            space: SpacePresentation::circle(),
            pushout: None,
            product: None,
            expected: GroupFamily::Integers,
            svk_route: false,
        }),
        SpaceTag::Bouquet => {
            let n = one_param(params, "bouquet needs the circle count")? as usize;
            if n < 1 {
                return Err(CatalogError::BadParams("bouquet needs n >= 1".into()));
            }
            // The pushout route wedges one more circle onto the smaller
            // bouquet (a point for n = 1).
            let rest = SpacePresentation::rose(n - 1);
            Ok(SpaceCatalogEntry {
                tag,
                params: vec![n as u64],
                space: SpacePresentation::rose(n),
                pushout: Some(wedge_spec(&SpacePresentation::circle(), &rest)),
                product: None,
                expected: if n == 1 {
                    GroupFamily::Integers
                } else {
                    GroupFamily::Free
                },
                svk_route: true,
            })
        }
        SpaceTag::Wedge => Ok(SpaceCatalogEntry {
            tag,
            params: vec![],
            space: SpacePresentation::rose(2),
            pushout: Some(wedge_spec(
                &SpacePresentation::circle(),
                &SpacePresentation::circle(),
            )),
            product: None,
            expected: GroupFamily::Free,
            svk_route: true,
        }),
        SpaceTag::Suspension => {
            let spec = suspension_spec(&SpacePresentation::circle());
            let built = crate::pushout::build_pushout(&spec)?;
            Ok(SpaceCatalogEntry {
                tag,
                params: vec![],
                space: built.space,
                pushout: Some(spec),
                product: None,
                expected: GroupFamily::Trivial,
                svk_route: true,
            })
        }
        SpaceTag::Sphere => {
            let n = one_param(params, "sphere needs the dimension")?;
            if n < 2 {
                return Err(CatalogError::BadParams("sphere needs n >= 2".into()));
            }
            // S^n is the (n-1)-fold suspension of the circle.
            let mut space = SpacePresentation::circle();
            let mut spec = None;
            for _ in 0..(n - 1) {
                let s = suspension_spec(&space);
                space = crate::pushout::build_pushout(&s)?.space;
                spec = Some(s);
            }
            Ok(SpaceCatalogEntry {
                tag,
                params: vec![n],
                space,
                pushout: spec,
                product: None,
                expected: GroupFamily::Trivial,
                svk_route: true,
            })
        }
        SpaceTag::Torus => {
            let circle = make_space(SpaceTag::Circle, &[])?;
            Ok(SpaceCatalogEntry {
                tag,
                params: vec![],
                space: rose_with_relators(2, &[rel::commutator_product_relator(1)]),
                pushout: None,
                product: Some((Box::new(circle.clone()), Box::new(circle))),
                expected: GroupFamily::DirectProduct {
                    left: Box::new(GroupFamily::Integers),
                    left_gens: 1,
                    right: Box::new(GroupFamily::Integers),
                    right_gens: 1,
                },
                svk_route: false,
            })
        }
        SpaceTag::Klein => Ok(SpaceCatalogEntry {
            tag,
            params: vec![],
            space: rose_with_relators(2, &[rel::klein_relator()]),
            pushout: Some(disk_attachment_spec(2, &rel::klein_relator())?),
            product: None,
            expected: GroupFamily::Klein,
            svk_route: true,
        }),
        SpaceTag::Rp2 => Ok(SpaceCatalogEntry {
            tag,
            params: vec![],
            space: rose_with_relators(1, &[rel::power_relator(2)]),
            pushout: Some(disk_attachment_spec(1, &rel::power_relator(2))?),
            product: None,
            expected: GroupFamily::Cyclic(2),
            svk_route: true,
        }),
        SpaceTag::Surface => {
            let g = one_param(params, "surface needs the genus")? as u32;
            if g < 1 {
                return Err(CatalogError::BadParams("surface needs g >= 1".into()));
            }
            let r = rel::commutator_product_relator(g);
            let expected = if g == 1 {
                GroupFamily::DirectProduct {
                    left: Box::new(GroupFamily::Integers),
                    left_gens: 1,
                    right: Box::new(GroupFamily::Integers),
                    right_gens: 1,
                }
            } else {
                GroupFamily::OrientableSurface(g)
            };
            Ok(SpaceCatalogEntry {
                tag,
                params: vec![g as u64],
                space: rose_with_relators(2 * g as usize, std::slice::from_ref(&r)),
                pushout: Some(disk_attachment_spec(2 * g as usize, &r)?),
                product: None,
                expected,
                svk_route: true,
            })
        }
        SpaceTag::NonOrientable => {
            let n = one_param(params, "nonorientable needs the crosscap count")? as u32;
            if n < 1 {
                return Err(CatalogError::BadParams("nonorientable needs n >= 1".into()));
            }
            let r = rel::crosscap_relator(n);
            let expected = if n == 1 {
                GroupFamily::Cyclic(2)
            } else {
                GroupFamily::NonOrientableSurface(n)
            };
            Ok(SpaceCatalogEntry {
                tag,
                params: vec![n as u64],
                space: rose_with_relators(n as usize, std::slice::from_ref(&r)),
                pushout: Some(disk_attachment_spec(n as usize, &r)?),
                product: None,
                expected,
                svk_route: true,
            })
        }
        SpaceTag::Lens => {
            if params.len() != 2 {
                return Err(CatalogError::BadParams("lens needs p and q".into()));
            }
            let (p, q) = (params[0], params[1]);
            if p < 1 || gcd(p, q) != 1 {
                return Err(CatalogError::BadParams(format!(
                    "lens needs p >= 1 and gcd(p, q) = 1, got ({p}, {q})"
                )));
            }
            // q plays no role in the group; it is kept as metadata only.
            Ok(SpaceCatalogEntry {
                tag,
                params: vec![p, q],
                space: rose_with_relators(1, &[rel::power_relator(p)]),
                pushout: Some(disk_attachment_spec(1, &rel::power_relator(p))?),
                product: None,
                expected: if p == 1 {
                    GroupFamily::Trivial
                } else {
                    GroupFamily::Cyclic(p)
                },
                svk_route: true,
            })
        }
    }
}

fn one_param(params: &[u64], msg: &str) -> Result<u64, CatalogError> {
    if params.len() == 1 {
        Ok(params[0])
    } else {
        Err(CatalogError::BadParams(msg.to_string()))
    }
}

impl SpaceCatalogEntry {
    /// The group presentation of this entry: the product presentation for
    /// product entries, otherwise the spanning-tree presentation of the
    /// direct space.
    pub fn group(&self) -> Result<GroupPresentation, CatalogError> {
        if let Some((a, b)) = &self.product {
            let (pres, _) = product_pi1(a, b)?;
            return Ok(pres);
        }
        Ok(presentation_of_pi1(&self.space)?.presentation().clone())
    }

    /// The pushout instance for entries with an SVK route.
    pub fn svk_instance(&self) -> Result<Option<SvkInstance>, CatalogError> {
        match &self.pushout {
            Some(spec) => Ok(Some(SvkInstance::new(spec.clone())?)),
            None => Ok(None),
        }
    }
}

/// A loop in a product space: one loop per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLoop {
    pub left: PathExpr,
    pub right: PathExpr,
}

/// Encodes product loops componentwise.
#[derive(Debug, Clone)]
pub struct ProductEncoder {
    left: Pi1Presentation,
    right: Pi1Presentation,
}

impl ProductEncoder {
    pub fn encode(&self, l: &ProductLoop) -> Result<(Word, Word), CatalogError> {
        Ok((
            self.left.encode_loop(&l.left)?,
            self.right.encode_loop(&l.right)?,
        ))
    }

    /// Combines factor words into one word over the product presentation
    /// (right-factor generators shifted past the left factor's).
    pub fn pair_to_product_word(&self, left: &Word, right: &Word) -> Word {
        let shift = self.left.presentation().generators();
        let mut letters = left.0.clone();
        letters.extend(right.0.iter().map(|l| GenLetter {
            gen: l.gen + shift,
            inverse: l.inverse,
        }));
        Word(letters)
    }

    pub fn factor(&self, left_side: bool) -> &Pi1Presentation {
        if left_side {
            &self.left
        } else {
            &self.right
        }
    }
}

/// The product formula: generators of both factors, relators of both
/// factors, plus commutators making the factors commute. The encoder maps a
/// pair of loops to the pair of factor words.
pub fn product_pi1(
    a: &SpaceCatalogEntry,
    b: &SpaceCatalogEntry,
) -> Result<(GroupPresentation, ProductEncoder), CatalogError> {
    let left = presentation_of_pi1(&a.space)?;
    let right = presentation_of_pi1(&b.space)?;
    let (lk, rk) = (
        left.presentation().generators(),
        right.presentation().generators(),
    );
    let mut relators: Vec<Word> = left.presentation().relators().to_vec();
    for r in right.presentation().relators() {
        relators.push(Word(
            r.0.iter()
                .map(|l| GenLetter {
                    gen: l.gen + lk,
                    inverse: l.inverse,
                })
                .collect(),
        ));
    }
    for i in 0..lk {
        for j in 0..rk {
            relators.push(Word(vec![
                GenLetter::new(i),
                GenLetter::new(lk + j),
                GenLetter::inv(i),
                GenLetter::inv(lk + j),
            ]));
        }
    }
    let family = GroupFamily::DirectProduct {
        left: Box::new(left.presentation().family().clone()),
        left_gens: lk,
        right: Box::new(right.presentation().family().clone()),
        right_gens: rk,
    };
    let pres = GroupPresentation::new(lk + rk, relators, family)?;
    Ok((pres, ProductEncoder { left, right }))
}

/// Witnesses that pin down the expected group where it is nontrivial.
#[derive(Debug, Clone, Default)]
pub struct ExpectedGroup {
    pub family: Option<GroupFamily>,
    /// A word that must not be the identity.
    pub nontrivial: Option<Word>,
    /// A pair whose products in both orders must differ.
    pub noncommuting: Option<(Word, Word)>,
    /// A generator word with its exact finite order.
    pub torsion: Option<(Word, u64)>,
}

/// The expected family with fixed sanity witnesses.
pub fn expected_group(entry: &SpaceCatalogEntry) -> ExpectedGroup {
    let a = Word::single(GenLetter::new(0));
    let b = Word::single(GenLetter::new(1));
    let mut out = ExpectedGroup {
        family: Some(entry.expected.clone()),
        ..ExpectedGroup::default()
    };
    match entry.tag {
        SpaceTag::Circle => out.nontrivial = Some(a),
        SpaceTag::Bouquet => {
            out.nontrivial = Some(a.clone());
            if entry.params[0] >= 2 {
                out.noncommuting = Some((a, b));
            }
        }
        SpaceTag::Wedge => {
            out.nontrivial = Some(a.clone());
            out.noncommuting = Some((a, b));
        }
        SpaceTag::Suspension | SpaceTag::Sphere => {}
        SpaceTag::Torus => out.nontrivial = Some(a),
        SpaceTag::Klein => {
            out.nontrivial = Some(a.clone());
            out.noncommuting = Some((a, b));
        }
        SpaceTag::Rp2 => {
            out.nontrivial = Some(a.clone());
            out.torsion = Some((a, 2));
        }
        SpaceTag::Surface => {
            out.nontrivial = Some(a.clone());
            if entry.params[0] >= 2 {
                out.noncommuting = Some((a, b));
            }
        }
        SpaceTag::NonOrientable => {
            out.nontrivial = Some(a.clone());
            let n = entry.params[0];
            if n == 1 {
                out.torsion = Some((a, 2));
            } else {
                out.noncommuting = Some((a, b));
            }
        }
        SpaceTag::Lens => {
            let p = entry.params[0];
            if p >= 2 {
                out.nontrivial = Some(a.clone());
                out.torsion = Some((a, p));
            }
        }
    }
    out
}

/// Checks the witness set of [`expected_group`] against a presentation's
/// solver. Returns a description of the first failure, if any.
pub fn check_expected(
    pres: &GroupPresentation,
    expected: &ExpectedGroup,
) -> Result<Option<String>, CatalogError> {
    if let Some(f) = &expected.family {
        if pres.family() != f {
            return Ok(Some(format!(
                "family mismatch: expected {f}, recognized {}",
                pres.family()
            )));
        }
    }
    if let Some(w) = &expected.nontrivial {
        if solver_normalize(pres, w)?.identity.is_yes() {
            return Ok(Some(format!(
                "expected nontrivial word solved trivial: {w}"
            )));
        }
    }
    if let Some((u, v)) = &expected.noncommuting {
        let uv = solver_normalize(pres, &u.concat(v))?.canonical;
        let vu = solver_normalize(pres, &v.concat(u))?.canonical;
        if uv == vu {
            return Ok(Some(format!(
                "expected non-commuting pair commuted: {u}, {v}"
            )));
        }
    }
    if let Some((w, order)) = &expected.torsion {
        let mut acc = Word::empty();
        for k in 1..=*order {
            acc = acc.concat(w);
            let is_id = solver_normalize(pres, &acc)?.identity.is_yes();
            if k < *order && is_id {
                return Ok(Some(format!("torsion order below {order} for {w}")));
            }
            if k == *order && !is_id {
                return Ok(Some(format!("order of {w} is not {order}")));
            }
        }
    }
    Ok(None)
}

/// The circle computed through the pushout route: a wedge of the circle
/// with a point, whose group is still infinite cyclic.
pub fn circle_as_wedge_instance() -> Result<SvkInstance, CatalogError> {
    let spec = wedge_spec(&SpacePresentation::circle(), &SpacePresentation::point());
    Ok(SvkInstance::new(spec)?)
}

/// The figure-eight computed through the pushout route.
pub fn figure_eight_instance() -> Result<SvkInstance, CatalogError> {
    let spec = wedge_spec(&SpacePresentation::circle(), &SpacePresentation::circle());
    Ok(SvkInstance::new(spec)?)
}
