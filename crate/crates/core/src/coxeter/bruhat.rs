use std::collections::BTreeSet;

use super::{CoxeterDatum, GroupElement};

/// `y ≤ w` in Bruhat order. For the first letter `s` of `w` (a left
/// descent), `y ≤ w` iff `min(y, sy) ≤ sw`.
pub fn bruhat_leq(d: &CoxeterDatum, y: &GroupElement, w: &GroupElement) -> bool {
    if y.omega != w.omega {
        return false;
    }
    let mut y = GroupElement {
        word: y.word.clone(),
        omega: 0,
    };
    let mut w = GroupElement {
        word: w.word.clone(),
        omega: 0,
    };
    loop {
        if y.length() > w.length() {
            return false;
        }
        if y.length() == w.length() {
            return y.word == w.word;
        }
        if y.is_identity() {
            return true;
        }
        let s = w.word[0] as usize;
        w.word.remove(0);
        if d.is_left_descent(s, &y) {
            y = d.mul_gen_left(s, &y);
        }
    }
}

/// The Bruhat interval `[e, w]` (elements sharing the Ω part of `w`), as the
/// set of subword products of the canonical reduced word.
pub fn enumerate_interval(d: &CoxeterDatum, w: &GroupElement) -> BTreeSet<GroupElement> {
    let mut set = BTreeSet::from([GroupElement::identity()]);
    for &s in &w.word {
        let ext: Vec<GroupElement> = set.iter().map(|x| d.mul_gen_right(x, s as usize)).collect();
        set.extend(ext);
    }
    if w.omega == 0 {
        return set;
    }
    set.into_iter()
        .map(|x| GroupElement {
            word: x.word,
            omega: w.omega,
        })
        .collect()
}
