//! Dehn's algorithm for small-cancellation one-relator presentations
//! (surface groups): any subword covering strictly more than half of a
//! cyclic rotation of a relator (or its inverse) is replaced by the inverse
//! of the rotation's complement, which is strictly shorter.

use super::word::Word;

/// One reduction pass primitive: the leftmost longest majority match.
/// Returns the rewritten word, or `None` when no move applies.
fn dehn_step(w: &Word, rotations: &[(Word, usize)]) -> Option<Word> {
    let n = w.len();
    // Longest matches first, then leftmost.
    let max_rel = rotations.iter().map(|(_, l)| *l).max()?;
    let mut best: Option<(usize, usize, &Word)> = None; // (len, start, rotation)
    for len in (1..=n.min(max_rel)).rev() {
        for start in 0..=(n - len) {
            for (rot, rel_len) in rotations {
                // Strict majority of this relator.
                if 2 * len <= *rel_len || len > *rel_len {
                    continue;
                }
                if w.0[start..start + len] == rot.0[..len] {
                    best = Some((len, start, rot));
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        if best.is_some() {
            break;
        }
    }
    let (len, start, rot) = best?;
    let complement = Word(rot.0[len..].to_vec()).inverted();
    let mut out = Vec::with_capacity(n - len + complement.len());
    out.extend_from_slice(&w.0[..start]);
    out.extend_from_slice(&complement.0);
    out.extend_from_slice(&w.0[start + len..]);
    Some(Word(out).free_reduce())
}

/// Repeatedly free-reduces and applies majority replacements until no move
/// applies. Output length never exceeds input length. Reaching the empty
/// word proves the input is the identity; the converse holds for strict
/// C'(1/6) presentations.
pub fn dehn_reduce(w: &Word, relators: &[Word]) -> Word {
    let rotations: Vec<(Word, usize)> = relators
        .iter()
        .filter(|r| !r.is_empty())
        .flat_map(|r| {
            let len = r.len();
            r.all_rotations_with_inverse()
                .into_iter()
                .map(move |rot| (rot, len))
        })
        .collect();
    let mut w = w.free_reduce();
    if rotations.is_empty() {
        return w;
    }
    while let Some(next) = dehn_step(&w, &rotations) {
        debug_assert!(next.len() < w.len());
        w = next;
    }
    w
}
