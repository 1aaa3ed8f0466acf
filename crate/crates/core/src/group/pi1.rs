//! The fundamental group of a space presentation, read off a spanning tree:
//! non-tree edges generate, 2-cell relators relate (tree edges erased).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::expr::{PathError, PathExpr};
use crate::rewrite::normalize;
use crate::space::{Orientation, SpaceError, SpacePresentation};

use super::word::{GenLetter, Word};
use super::{recognize_family, GroupPresentation};

/// π₁ of a space: the presentation together with the spanning-tree data
/// needed to encode loops as words and realize generators as loops.
#[derive(Debug, Clone)]
pub struct Pi1Presentation {
    space: SpacePresentation,
    presentation: GroupPresentation,
    tree_edges: BTreeSet<String>,
    /// point -> (edge name, orientation walked, parent point); absent for
    /// the basepoint.
    parent: BTreeMap<String, (String, Orientation, String)>,
    edge_of_gen: Vec<String>,
    gen_of_edge: BTreeMap<String, usize>,
}

/// Builds the spanning-tree presentation of π₁(space, basepoint).
///
/// The tree is grown breadth-first from the basepoint with edges considered
/// in declaration order, so the presentation is deterministic. Generators
/// are the non-tree edges in declaration order; every space relator becomes
/// a relator word with tree edges erased.
pub fn presentation_of_pi1(space: &SpacePresentation) -> Result<Pi1Presentation, SpaceError> {
    Pi1Presentation::with_priority_edges(space, &[])
}

impl Pi1Presentation {
    /// Like [`presentation_of_pi1`], but the named edges are considered
    /// before all others when growing the tree, in the order given.
    pub fn with_priority_edges(
        space: &SpacePresentation,
        priority: &[String],
    ) -> Result<Pi1Presentation, SpaceError> {
        space.check_connected()?;

        // Edge scan order: priority edges first, then declaration order.
        let mut order: Vec<usize> = Vec::with_capacity(space.edges().len());
        for name in priority {
            if let Some(ix) = space.edges().iter().position(|e| &e.name == name) {
                if !order.contains(&ix) {
                    order.push(ix);
                }
            }
        }
        for ix in 0..space.edges().len() {
            if !order.contains(&ix) {
                order.push(ix);
            }
        }

        let mut tree_edges = BTreeSet::new();
        let mut parent = BTreeMap::new();
        let mut visited = BTreeSet::new();
        visited.insert(space.basepoint().to_string());
        let mut queue = VecDeque::new();
        queue.push_back(space.basepoint().to_string());
        while let Some(p) = queue.pop_front() {
            for &ix in &order {
                let e = &space.edges()[ix];
                let steps: [(&String, &String, Orientation); 2] = [
                    (&e.src, &e.dst, Orientation::Forward),
                    (&e.dst, &e.src, Orientation::Reverse),
                ];
                for (from, to, orient) in steps {
                    if from == &p && !visited.contains(to) && !tree_edges.contains(&e.name) {
                        visited.insert(to.clone());
                        tree_edges.insert(e.name.clone());
                        parent.insert(to.clone(), (e.name.clone(), orient, p.clone()));
                        queue.push_back(to.clone());
                    }
                }
            }
        }

        let mut edge_of_gen = Vec::new();
        let mut gen_of_edge = BTreeMap::new();
        for e in space.edges() {
            if !tree_edges.contains(&e.name) {
                gen_of_edge.insert(e.name.clone(), edge_of_gen.len());
                edge_of_gen.push(e.name.clone());
            }
        }

        let mut relators = Vec::new();
        for rel in space.relators() {
            let mut letters = Vec::new();
            for (name, orient) in rel {
                if tree_edges.contains(name) {
                    continue;
                }
                letters.push(GenLetter {
                    gen: gen_of_edge[name],
                    inverse: orient.is_reverse(),
                });
            }
            let w = Word(letters).cyclically_reduce();
            if !w.is_empty() {
                relators.push(w);
            }
        }

        let family = recognize_family(edge_of_gen.len(), &relators);
        let presentation = GroupPresentation::new(edge_of_gen.len(), relators, family)
            .expect("recognized family always matches");

        Ok(Pi1Presentation {
            space: space.clone(),
            presentation,
            tree_edges,
            parent,
            edge_of_gen,
            gen_of_edge,
        })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn space(&self) -> &SpacePresentation {
        &self.space
    }

    pub fn tree_edges(&self) -> &BTreeSet<String> {
        &self.tree_edges
    }

    pub fn generator_edge(&self, gen: usize) -> &str {
        &self.edge_of_gen[gen]
    }

    pub fn generator_of_edge(&self, edge: &str) -> Option<usize> {
        self.gen_of_edge.get(edge).copied()
    }

    /// The tree path from the basepoint to `point` as a letter list.
    fn tree_letters_to(&self, point: &str) -> Vec<(String, Orientation)> {
        let mut chain = Vec::new();
        let mut cur = point.to_string();
        while cur != *self.space.basepoint() {
            let (edge, orient, par) = self
                .parent
                .get(&cur)
                .expect("connected space has a parent chain")
                .clone();
            chain.push((edge, orient));
            cur = par;
        }
        chain.reverse();
        chain
    }

    fn letters_to_expr(&self, letters: &[(String, Orientation)], at: &str) -> PathExpr {
        let mut iter = letters.iter().rev();
        let Some((last_name, last_or)) = iter.next() else {
            return PathExpr::refl(at);
        };
        let mut expr = PathExpr::Edge(last_name.clone(), *last_or);
        for (name, orient) in iter {
            expr = PathExpr::Edge(name.clone(), *orient).trans(expr);
        }
        expr
    }

    /// The loop realizing generator `gen`: tree path to the edge's source,
    /// the edge, tree path back from its target.
    pub fn generator_loop(&self, gen: usize) -> PathExpr {
        let name = &self.edge_of_gen[gen];
        let e = self.space.edge(name).expect("generator edge exists");
        let mut letters = self.tree_letters_to(&e.src);
        letters.push((name.clone(), Orientation::Forward));
        let mut back = self.tree_letters_to(&e.dst);
        back.reverse();
        for (n, o) in back {
            letters.push((n, o.flip()));
        }
        self.letters_to_expr(&letters, self.space.basepoint())
    }

    /// Realizes a word as a loop at the basepoint.
    pub fn word_to_loop(&self, w: &Word) -> PathExpr {
        if w.is_empty() {
            return PathExpr::refl(self.space.basepoint());
        }
        let mut parts = Vec::with_capacity(w.len());
        for l in &w.0 {
            let g = self.generator_loop(l.gen);
            parts.push(if l.inverse { g.symm() } else { g });
        }
        let mut expr = parts.pop().unwrap();
        while let Some(p) = parts.pop() {
            expr = p.trans(expr);
        }
        expr
    }

    /// Encodes a loop at the basepoint as a word: normalize, take the letter
    /// sequence, erase tree edges, freely reduce.
    pub fn encode_loop(&self, expr: &PathExpr) -> Result<Word, PathError> {
        let (src, dst) = expr.endpoints(&self.space)?;
        if src != dst || src != *self.space.basepoint() {
            return Err(PathError::IllComposed {
                left_dst: dst,
                right_src: self.space.basepoint().to_string(),
            });
        }
        let (nf, _) = normalize(&self.space, expr)?;
        let mut letters = Vec::new();
        for (name, orient) in nf.letters() {
            if self.tree_edges.contains(&name) {
                continue;
            }
            if let Some(&gen) = self.gen_of_edge.get(&name) {
                letters.push(GenLetter {
                    gen,
                    inverse: orient.is_reverse(),
                });
            }
        }
        Ok(Word(letters).free_reduce())
    }
}
