//! Enumeration of `Irr(S)`, the words avoiding every leading word.

use super::RewriteSystem;
use crate::word::Word;

/// Extends irreducible prefixes letter by letter; a new word is reducible
/// only if some leading word ends at its last letter.
fn for_each_irr(system: &RewriteSystem, max_len: usize, mut visit: impl FnMut(&Word)) {
    let letters: Vec<_> = system.alphabet().letters().collect();
    let leads: Vec<&Word> = system.leads().collect();
    let ends_with_lead = |w: &Word| {
        leads.iter().any(|l| {
            l.len() <= w.len() && w.letters()[w.len() - l.len()..] == *l.letters()
        })
    };
    let mut frontier = vec![Word::empty()];
    if !leads.iter().any(|l| l.is_empty()) {
        visit(&Word::empty());
    } else {
        return;
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut x = w.clone();
                x.push(l);
                if !ends_with_lead(&x) {
                    visit(&x);
                    next.push(x);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
}

/// All words of length at most `max_len` in `Irr(S)`, sorted by the
/// system's order.
pub fn irr_enumerate(system: &RewriteSystem, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_irr(system, max_len, |w| out.push(w.clone()));
    out.sort_by(|u, v| system.order().compare(u, v));
    out
}

/// Number of words of length at most `max_len` in `Irr(S)`.
pub fn irr_count(system: &RewriteSystem, max_len: usize) -> usize {
    let mut n = 0;
    for_each_irr(system, max_len, |_| n += 1);
    n
}
