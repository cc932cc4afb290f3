//! Pairs up nodes of two tree versions before an edit script is derived.
//!
//! Matching runs in two tiers. The declaration tier aligns classes, methods,
//! attributes, and parameters by exact header, then by declared name, then by
//! header similarity (parameters also fall back to position). The body tier
//! then aligns statements inside each matched method pair: leaves greedily by
//! bigram-dice similarity of their values, inner nodes bottom-up by the
//! fraction of already-matched descendants. With the declaration tier
//! disabled, the body passes run once over the whole trees.

use super::arena::Arena;
use crate::syntax::kinds;
use crate::syntax::{decl, DifferSettings, TreeNode};

/// A partial one-to-one correspondence between the nodes of two trees.
/// Node ids are pre-order indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left_to_right: Vec<Option<usize>>,
    right_to_left: Vec<Option<usize>>,
}

impl Matching {
    pub fn new(left_len: usize, right_len: usize) -> Matching {
        Matching {
            left_to_right: vec![None; left_len],
            right_to_left: vec![None; right_len],
        }
    }

    pub fn left_len(&self) -> usize {
        self.left_to_right.len()
    }

    pub fn right_len(&self) -> usize {
        self.right_to_left.len()
    }

    pub fn right_of(&self, left_id: usize) -> Option<usize> {
        self.left_to_right.get(left_id).copied().flatten()
    }

    pub fn left_of(&self, right_id: usize) -> Option<usize> {
        self.right_to_left.get(right_id).copied().flatten()
    }

    pub fn is_left_matched(&self, left_id: usize) -> bool {
        self.right_of(left_id).is_some()
    }

    pub fn is_right_matched(&self, right_id: usize) -> bool {
        self.left_of(right_id).is_some()
    }

    /// Matched pairs in left pre-order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_to_right
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }

    pub fn bind(&mut self, left_id: usize, right_id: usize) {
        debug_assert!(self.left_to_right[left_id].is_none());
        debug_assert!(self.right_to_left[right_id].is_none());
        self.left_to_right[left_id] = Some(right_id);
        self.right_to_left[right_id] = Some(left_id);
    }
}

/// Bigram dice similarity over characters. Equal strings score 1 even when
/// shorter than a bigram; otherwise strings shorter than a bigram score 0.
pub fn dice_similarity(a: &str, b: &str) -> f64 {
    if a == b {
        return 1.0;
    }
    let bigrams = |s: &str| {
        let chars: Vec<char> = s.chars().collect();
        let mut v: Vec<(char, char)> = chars.windows(2).map(|w| (w[0], w[1])).collect();
        v.sort_unstable();
        v
    };
    let xs = bigrams(a);
    let ys = bigrams(b);
    if xs.is_empty() || ys.is_empty() {
        return 0.0;
    }
    let mut common = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < xs.len() && j < ys.len() {
        match xs[i].cmp(&ys[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    2.0 * common as f64 / (xs.len() + ys.len()) as f64
}

pub fn match_trees(left: &TreeNode, right: &TreeNode, settings: &DifferSettings) -> Matching {
    let la = Arena::build(left);
    let ra = Arena::build(right);
    let mut m = Matching::new(la.len(), ra.len());
    if la.kind(0) == ra.kind(0) {
        m.bind(0, 0);
    }
    if settings.declaration_matching {
        match_declarations(&la, &ra, settings, &mut m);
        let method_pairs: Vec<(usize, usize)> = m
            .pairs()
            .filter(|&(l, _)| la.kind(l) == kinds::METHOD)
            .collect();
        for (ml, mr) in method_pairs {
            match_bodies(&la, &ra, ml, mr, settings, &mut m);
        }
    } else {
        match_bodies(&la, &ra, 0, 0, settings, &mut m);
    }
    m
}

/// Greedily bind remaining candidates whose keys are equal, in document
/// order on both sides.
fn bind_by_key<K: PartialEq>(
    lefts: &[usize],
    rights: &[usize],
    key_l: impl Fn(usize) -> Option<K>,
    key_r: impl Fn(usize) -> Option<K>,
    m: &mut Matching,
) {
    for &l in lefts {
        if m.is_left_matched(l) {
            continue;
        }
        let Some(kl) = key_l(l) else { continue };
        for &r in rights {
            if m.is_right_matched(r) {
                continue;
            }
            if key_r(r).is_some_and(|kr| kr == kl) {
                m.bind(l, r);
                break;
            }
        }
    }
}

/// Greedily bind remaining candidates by descending similarity of their
/// values; ties resolve to the earliest left node, then the earliest right.
fn bind_by_dice(
    la: &Arena,
    ra: &Arena,
    lefts: &[usize],
    rights: &[usize],
    threshold: f64,
    m: &mut Matching,
) {
    let mut scored: Vec<(f64, usize, usize)> = Vec::new();
    for &l in lefts {
        if m.is_left_matched(l) {
            continue;
        }
        for &r in rights {
            if m.is_right_matched(r) {
                continue;
            }
            if la.kind(l) != ra.kind(r) {
                continue;
            }
            let score = dice_similarity(la.value(l), ra.value(r));
            if score >= threshold {
                scored.push((score, l, r));
            }
        }
    }
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    for (_, l, r) in scored {
        if !m.is_left_matched(l) && !m.is_right_matched(r) {
            m.bind(l, r);
        }
    }
}

fn children_of_kind(arena: &Arena, id: usize, kind: &str) -> Vec<usize> {
    arena
        .children(id)
        .iter()
        .copied()
        .filter(|&c| arena.kind(c) == kind)
        .collect()
}

/// Align one declaration level: exact header, declared name, then header
/// similarity.
fn match_level(
    la: &Arena,
    ra: &Arena,
    lefts: &[usize],
    rights: &[usize],
    kind: &str,
    threshold: f64,
    m: &mut Matching,
) {
    bind_by_key(
        lefts,
        rights,
        |l| Some(la.value(l).to_string()),
        |r| Some(ra.value(r).to_string()),
        m,
    );
    bind_by_key(
        lefts,
        rights,
        |l| decl::declared_name(kind, la.value(l)),
        |r| decl::declared_name(kind, ra.value(r)),
        m,
    );
    bind_by_dice(la, ra, lefts, rights, threshold, m);
}

fn match_declarations(la: &Arena, ra: &Arena, settings: &DifferSettings, m: &mut Matching) {
    let threshold = settings.leaf_similarity_threshold;
    let lcs = children_of_kind(la, 0, kinds::CLASS);
    let rcs = children_of_kind(ra, 0, kinds::CLASS);
    match_level(la, ra, &lcs, &rcs, kinds::CLASS, threshold, m);

    let class_pairs: Vec<(usize, usize)> = m
        .pairs()
        .filter(|&(l, _)| la.kind(l) == kinds::CLASS)
        .collect();
    for (cl, cr) in class_pairs {
        let lms = children_of_kind(la, cl, kinds::METHOD);
        let rms = children_of_kind(ra, cr, kinds::METHOD);
        match_level(la, ra, &lms, &rms, kinds::METHOD, threshold, m);
        let lfs = children_of_kind(la, cl, kinds::ATTRIBUTE);
        let rfs = children_of_kind(ra, cr, kinds::ATTRIBUTE);
        match_level(la, ra, &lfs, &rfs, kinds::ATTRIBUTE, threshold, m);
    }

    let method_pairs: Vec<(usize, usize)> = m
        .pairs()
        .filter(|&(l, _)| la.kind(l) == kinds::METHOD)
        .collect();
    for (ml, mr) in method_pairs {
        let lps = children_of_kind(la, ml, kinds::PARAMETER);
        let rps = children_of_kind(ra, mr, kinds::PARAMETER);
        match_level(la, ra, &lps, &rps, kinds::PARAMETER, threshold, m);
        // Position fallback: remaining parameters pair up in order.
        let rest_l: Vec<usize> = lps.iter().copied().filter(|&l| !m.is_left_matched(l)).collect();
        let rest_r: Vec<usize> = rps.iter().copied().filter(|&r| !m.is_right_matched(r)).collect();
        for (&l, &r) in rest_l.iter().zip(rest_r.iter()) {
            m.bind(l, r);
        }
    }
}

/// Align the subtrees under an already-matched pair of roots.
fn match_bodies(
    la: &Arena,
    ra: &Arena,
    root_l: usize,
    root_r: usize,
    settings: &DifferSettings,
    m: &mut Matching,
) {
    let lefts: Vec<usize> = la.descendants(root_l).filter(|&l| la.is_leaf(l)).collect();
    let rights: Vec<usize> = ra.descendants(root_r).filter(|&r| ra.is_leaf(r)).collect();
    bind_by_dice(la, ra, &lefts, &rights, settings.leaf_similarity_threshold, m);

    for l in la.post_order(root_l) {
        if l == root_l || la.is_leaf(l) || m.is_left_matched(l) {
            continue;
        }
        let mut best: Option<(f64, usize)> = None;
        for r in ra.descendants(root_r) {
            if ra.is_leaf(r) || m.is_right_matched(r) || ra.kind(r) != la.kind(l) {
                continue;
            }
            let common = la
                .descendants(l)
                .filter(|&dl| m.right_of(dl).is_some_and(|dr| ra.in_subtree(dr, r)))
                .count();
            let fraction =
                common as f64 / la.descendant_count(l).max(ra.descendant_count(r)) as f64;
            if fraction > settings.inner_match_fraction
                && best.is_none_or(|(b, _)| fraction > b)
            {
                best = Some((fraction, r));
            }
        }
        if let Some((_, r)) = best {
            m.bind(l, r);
        }
    }
}
