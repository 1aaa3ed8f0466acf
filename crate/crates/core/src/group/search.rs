//! Bounded breadth-first search for the word problem: free reduction plus
//! relator insertion and deletion at every position. Sound for "identity"
//! (the empty word is reached only from true identities); never answers
//! "not identity".

use std::collections::{HashSet, VecDeque};

use super::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of relator moves along any path.
    pub depth: usize,
    /// Cap on distinct visited states before giving up.
    pub max_states: usize,
    /// Cap on intermediate word length, relative to the input.
    pub max_extra_len: usize,
}

impl SearchLimits {
    pub fn depth(depth: usize) -> SearchLimits {
        SearchLimits {
            depth,
            max_states: 200_000,
            max_extra_len: 0, // filled in per-call from relator lengths
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// True when the empty word was reached within the limits.
    pub found_identity: bool,
    /// Moves used on the successful path, when found.
    pub moves: Option<usize>,
    /// True when a cap stopped the search before the frontier was exhausted;
    /// a negative result with `capped == false` means the full reachable set
    /// within the length bound was explored.
    pub capped: bool,
    pub states_explored: usize,
}

/// Searches for a derivation of the empty word from `w`.
pub fn bounded_identity_search(w: &Word, relators: &[Word], limits: SearchLimits) -> SearchOutcome {
    let start = w.free_reduce();
    if start.is_empty() {
        return SearchOutcome {
            found_identity: true,
            moves: Some(0),
            capped: false,
            states_explored: 1,
        };
    }
    let rotations: Vec<Word> = relators
        .iter()
        .map(|r| r.cyclically_reduce())
        .filter(|r| !r.is_empty())
        .flat_map(|r| r.all_rotations_with_inverse())
        .collect();
    if rotations.is_empty() {
        return SearchOutcome {
            found_identity: false,
            moves: None,
            capped: false,
            states_explored: 1,
        };
    }
    let max_rel = rotations.iter().map(|r| r.len()).max().unwrap_or(0);
    let extra = if limits.max_extra_len == 0 {
        2 * max_rel + 2
    } else {
        limits.max_extra_len
    };
    let len_cap = start.len() + extra;

    let mut visited: HashSet<Word> = HashSet::new();
    visited.insert(start.clone());
    let mut queue: VecDeque<(Word, usize)> = VecDeque::new();
    queue.push_back((start, 0));
    let mut capped = false;

    while let Some((state, depth)) = queue.pop_front() {
        if depth >= limits.depth {
            capped = true;
            continue;
        }
        let mut children: Vec<Word> = Vec::new();
        for rot in &rotations {
            // Deletions of a full relator occurrence.
            if rot.len() <= state.len() {
                for start_ix in 0..=(state.len() - rot.len()) {
                    if state.0[start_ix..start_ix + rot.len()] == rot.0[..] {
                        let mut v = state.0[..start_ix].to_vec();
                        v.extend_from_slice(&state.0[start_ix + rot.len()..]);
                        children.push(Word(v).free_reduce());
                    }
                }
            }
            // Insertions of a relator at any position.
            if state.len() + rot.len() <= len_cap {
                for pos in 0..=state.len() {
                    let mut v = state.0[..pos].to_vec();
                    v.extend_from_slice(&rot.0);
                    v.extend_from_slice(&state.0[pos..]);
                    children.push(Word(v).free_reduce());
                }
            } else {
                capped = true;
            }
        }
        for child in children {
            if child.is_empty() {
                return SearchOutcome {
                    found_identity: true,
                    moves: Some(depth + 1),
                    capped: false,
                    states_explored: visited.len(),
                };
            }
            if child.len() <= len_cap && !visited.contains(&child) {
                if visited.len() >= limits.max_states {
                    capped = true;
                    continue;
                }
                visited.insert(child.clone());
                queue.push_back((child, depth + 1));
            }
        }
    }

    SearchOutcome {
        found_identity: false,
        moves: None,
        capped,
        states_explored: visited.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentations::klein_relator;
    use crate::group::word::GenLetter;

    #[test]
    fn empty_word_is_identity_at_depth_zero() {
        let out = bounded_identity_search(&Word::empty(), &[klein_relator()], SearchLimits::depth(0));
        assert!(out.found_identity);
        assert_eq!(out.moves, Some(0));
    }

    #[test]
    fn klein_relator_found_by_one_deletion() {
        let out = bounded_identity_search(
            &klein_relator(),
            &[klein_relator()],
            SearchLimits::depth(2),
        );
        assert!(out.found_identity);
        assert!(out.moves.unwrap() <= 2);
    }

    #[test]
    fn free_group_word_exhausts_to_unknown() {
        // No relators: only free reduction applies, a b is irreducible.
        let w = Word(vec![GenLetter::new(0), GenLetter::new(1)]);
        let out = bounded_identity_search(&w, &[], SearchLimits::depth(8));
        assert!(!out.found_identity);
        assert!(!out.capped);
    }
}
