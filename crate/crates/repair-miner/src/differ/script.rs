//! Derives an edit script from a matching and replays scripts for
//! validation.
//!
//! Five operation kinds cover the difference between two matched trees:
//! inserts of unmatched right nodes, deletes of unmatched left nodes, value
//! updates of matched pairs, parent moves where the matched parents disagree,
//! and order moves for matched siblings that left the longest sequence of
//! relatively stable positions. Replaying a script onto the left tree must
//! reproduce the right tree; `replay` rebuilds that tree so tests can verify
//! scripts end to end.

use serde::Serialize;
use std::collections::HashMap;

use super::arena::Arena;
use super::matching::Matching;
use crate::error::{Error, Result};
use crate::syntax::kinds::is_declaration_kind;
use crate::syntax::{Range, TreeNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EditKind {
    Insert,
    Delete,
    Update,
    MoveParent,
    MoveOrder,
}

/// Identity of the affected node. Ids are pre-order indices into the right
/// tree for inserts and into the left tree for every other kind.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeDescriptor {
    pub id: usize,
    pub kind: String,
    pub value: String,
    pub range: Range,
}

/// A child position in the right tree: the parent's pre-order id and the
/// final index among its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub parent: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EditOperation {
    pub kind: EditKind,
    pub node: NodeDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub new_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slot: Option<Slot>,
    /// Whether the node sits inside a class, method, or attribute that is
    /// itself unmatched, i.e. the enclosing declaration was added or removed
    /// wholesale.
    pub within_unmatched_declaration: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct EditScript {
    pub operations: Vec<EditOperation>,
}

impl EditScript {
    pub fn len(&self) -> usize {
        self.operations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operations.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EditOperation> {
        self.operations.iter()
    }

    fn count(&self, kind: EditKind) -> usize {
        self.operations.iter().filter(|op| op.kind == kind).count()
    }

    pub fn insert_count(&self) -> usize {
        self.count(EditKind::Insert)
    }

    pub fn delete_count(&self) -> usize {
        self.count(EditKind::Delete)
    }

    pub fn update_count(&self) -> usize {
        self.count(EditKind::Update)
    }

    pub fn move_count(&self) -> usize {
        self.count(EditKind::MoveParent) + self.count(EditKind::MoveOrder)
    }
}

fn inconsistent(message: impl Into<String>) -> Error {
    Error::InconsistentMatching(message.into())
}

fn check_matching(la: &Arena, ra: &Arena, m: &Matching) -> Result<()> {
    if m.left_len() != la.len() || m.right_len() != ra.len() {
        return Err(inconsistent(format!(
            "matching covers {}x{} nodes but trees have {}x{}",
            m.left_len(),
            m.right_len(),
            la.len(),
            ra.len()
        )));
    }
    for (l, r) in m.pairs() {
        if r >= ra.len() {
            return Err(inconsistent(format!("match target {r} out of range")));
        }
        if m.left_of(r) != Some(l) {
            return Err(inconsistent(format!("nodes {l} and {r} are not matched mutually")));
        }
        if la.kind(l) != ra.kind(r) {
            return Err(inconsistent(format!(
                "matched nodes differ in kind: '{}' vs '{}'",
                la.kind(l),
                ra.kind(r)
            )));
        }
    }
    if m.right_of(0) != Some(0) {
        return Err(inconsistent("roots must be matched to each other"));
    }
    Ok(())
}

fn descriptor(arena: &Arena, id: usize) -> NodeDescriptor {
    NodeDescriptor {
        id,
        kind: arena.kind(id).to_string(),
        value: arena.value(id).to_string(),
        range: arena.nodes[id].node.range,
    }
}

/// Whether a strict ancestor is an unmatched declaration, on the given side.
fn within_unmatched<F: Fn(usize) -> bool>(arena: &Arena, id: usize, is_matched: F) -> bool {
    let mut cur = arena.parent(id);
    while let Some(a) = cur {
        if is_declaration_kind(arena.kind(a)) && !is_matched(a) {
            return true;
        }
        cur = arena.parent(a);
    }
    false
}

/// Mask of one longest strictly increasing subsequence; masked-out elements
/// are the ones that must move.
fn lis_mask(seq: &[usize]) -> Vec<bool> {
    let n = seq.len();
    let mut len = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    let mut best = 0usize;
    for i in 0..n {
        for j in 0..i {
            if seq[j] < seq[i] && len[j] + 1 > len[i] {
                len[i] = len[j] + 1;
                prev[i] = j;
            }
        }
        if len[i] > len[best] {
            best = i;
        }
    }
    let mut mask = vec![false; n];
    if n > 0 {
        let mut k = best;
        loop {
            mask[k] = true;
            if prev[k] == usize::MAX {
                break;
            }
            k = prev[k];
        }
    }
    mask
}

pub fn edit_script(left: &TreeNode, right: &TreeNode, m: &Matching) -> Result<EditScript> {
    let la = Arena::build(left);
    let ra = Arena::build(right);
    check_matching(&la, &ra, m)?;

    let mut deletes = Vec::new();
    let mut inserts = Vec::new();
    let mut updates = Vec::new();
    let mut move_parents = Vec::new();
    let mut move_orders = Vec::new();

    for l in 0..la.len() {
        if !m.is_left_matched(l) {
            deletes.push(EditOperation {
                kind: EditKind::Delete,
                node: descriptor(&la, l),
                new_value: None,
                slot: None,
                within_unmatched_declaration: within_unmatched(&la, l, |a| m.is_left_matched(a)),
            });
        }
    }
    for r in 0..ra.len() {
        if !m.is_right_matched(r) {
            inserts.push(EditOperation {
                kind: EditKind::Insert,
                node: descriptor(&ra, r),
                new_value: None,
                slot: Some(Slot {
                    parent: ra.parent(r).expect("unmatched root is rejected above"),
                    index: ra.sibling_index(r),
                }),
                within_unmatched_declaration: within_unmatched(&ra, r, |a| m.is_right_matched(a)),
            });
        }
    }
    for (l, r) in m.pairs() {
        if la.value(l) != ra.value(r) {
            updates.push(EditOperation {
                kind: EditKind::Update,
                node: descriptor(&la, l),
                new_value: Some(ra.value(r).to_string()),
                slot: None,
                within_unmatched_declaration: within_unmatched(&la, l, |a| m.is_left_matched(a)),
            });
        }
        if l != 0 {
            let pl = la.parent(l).expect("non-root has a parent");
            let pr = ra.parent(r).expect("non-root has a parent");
            if m.right_of(pl) != Some(pr) {
                move_parents.push(EditOperation {
                    kind: EditKind::MoveParent,
                    node: descriptor(&la, l),
                    new_value: None,
                    slot: Some(Slot {
                        parent: pr,
                        index: ra.sibling_index(r),
                    }),
                    within_unmatched_declaration: within_unmatched(&la, l, |a| {
                        m.is_left_matched(a)
                    }),
                });
            }
        }
    }
    for (pl, pr) in m.pairs() {
        let stay: Vec<(usize, usize)> = la
            .children(pl)
            .iter()
            .filter_map(|&cl| {
                m.right_of(cl)
                    .filter(|&cr| ra.parent(cr) == Some(pr))
                    .map(|cr| (cl, ra.sibling_index(cr)))
            })
            .collect();
        let seq: Vec<usize> = stay.iter().map(|&(_, sib)| sib).collect();
        let keep = lis_mask(&seq);
        for (i, &(cl, sib)) in stay.iter().enumerate() {
            if !keep[i] {
                move_orders.push(EditOperation {
                    kind: EditKind::MoveOrder,
                    node: descriptor(&la, cl),
                    new_value: None,
                    slot: Some(Slot { parent: pr, index: sib }),
                    within_unmatched_declaration: within_unmatched(&la, cl, |a| {
                        m.is_left_matched(a)
                    }),
                });
            }
        }
    }

    let mut operations = deletes;
    operations.extend(inserts);
    operations.extend(updates);
    operations.extend(move_parents);
    operations.extend(move_orders);
    Ok(EditScript { operations })
}

/// Applies a script to the left tree and rebuilds the resulting tree. The
/// matching resolves node references across the two trees; all structural
/// decisions (membership, values, parents, order) come from the script, so a
/// defective script yields a tree that fails to equal the right one.
pub fn replay(
    left: &TreeNode,
    right: &TreeNode,
    m: &Matching,
    script: &EditScript,
) -> Result<TreeNode> {
    let la = Arena::build(left);
    let ra = Arena::build(right);
    check_matching(&la, &ra, m)?;

    let mut deleted = vec![false; la.len()];
    let mut new_values: HashMap<usize, &str> = HashMap::new();
    let mut arrivals: HashMap<usize, Slot> = HashMap::new();
    let mut inserted = vec![false; ra.len()];

    for op in script.iter() {
        match op.kind {
            EditKind::Delete => {
                let id = op.node.id;
                if id >= la.len() {
                    return Err(inconsistent(format!("delete of unknown node {id}")));
                }
                if m.is_left_matched(id) {
                    return Err(inconsistent(format!("delete of matched node {id}")));
                }
                deleted[id] = true;
            }
            EditKind::Insert => {
                let id = op.node.id;
                if id >= ra.len() {
                    return Err(inconsistent(format!("insert of unknown node {id}")));
                }
                if m.is_right_matched(id) {
                    return Err(inconsistent(format!("insert of matched node {id}")));
                }
                let slot = op.slot.ok_or_else(|| inconsistent("insert without a slot"))?;
                inserted[id] = true;
                arrivals.insert(id, slot);
            }
            EditKind::Update => {
                let id = op.node.id;
                let value = op
                    .new_value
                    .as_deref()
                    .ok_or_else(|| inconsistent("update without a new value"))?;
                if m.right_of(id).is_none() {
                    return Err(inconsistent(format!("update of unmatched node {id}")));
                }
                new_values.insert(id, value);
            }
            EditKind::MoveParent | EditKind::MoveOrder => {
                let id = op.node.id;
                let r = m
                    .right_of(id)
                    .ok_or_else(|| inconsistent(format!("move of unmatched node {id}")))?;
                let slot = op.slot.ok_or_else(|| inconsistent("move without a slot"))?;
                arrivals.insert(r, slot);
            }
        }
    }

    let present = |r: usize| -> bool {
        inserted[r] || m.left_of(r).is_some_and(|l| !deleted[l])
    };

    // Children per result parent: stable nodes keep the relative order of
    // their left originals; arrivals land at their stated final index.
    let mut stable: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    let mut arriving: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for r in 1..ra.len() {
        if !present(r) {
            continue;
        }
        if let Some(slot) = arrivals.get(&r) {
            if slot.parent >= ra.len() {
                return Err(inconsistent(format!("slot parent {} out of range", slot.parent)));
            }
            arriving.entry(slot.parent).or_default().push((slot.index, r));
        } else {
            let l = m.left_of(r).expect("non-arrival nodes are matched");
            let pl = la.parent(l).expect("non-root has a parent");
            if deleted[pl] {
                return Err(inconsistent(format!(
                    "node {l} left behind under deleted parent {pl}"
                )));
            }
            let pr = m
                .right_of(pl)
                .ok_or_else(|| inconsistent(format!("parent {pl} is unmatched")))?;
            stable.entry(pr).or_default().push((la.sibling_index(l), r));
        }
    }

    let mut order: HashMap<usize, Vec<usize>> = HashMap::new();
    let parents: std::collections::BTreeSet<usize> =
        stable.keys().chain(arriving.keys()).copied().collect();
    for p in parents {
        let mut list: Vec<usize> = {
            let mut s = stable.remove(&p).unwrap_or_default();
            s.sort_unstable();
            s.into_iter().map(|(_, r)| r).collect()
        };
        let mut a = arriving.remove(&p).unwrap_or_default();
        a.sort_unstable();
        for (index, r) in a {
            if index > list.len() {
                return Err(inconsistent(format!(
                    "slot index {index} out of range for parent {p}"
                )));
            }
            list.insert(index, r);
        }
        order.insert(p, list);
    }

    if m.right_of(0) != Some(0) || deleted.first().copied().unwrap_or(false) {
        return Err(inconsistent("result tree has no root"));
    }
    let mut built = 0usize;
    let root = build(&la, &ra, m, &new_values, &inserted, &order, 0, &mut built)?;
    let present_count = (0..ra.len()).filter(|&r| present(r)).count();
    if built != present_count {
        return Err(inconsistent(format!(
            "{} nodes unreachable from the result root",
            present_count - built
        )));
    }
    Ok(root)
}

#[allow(clippy::too_many_arguments)]
fn build(
    la: &Arena,
    ra: &Arena,
    m: &Matching,
    new_values: &HashMap<usize, &str>,
    inserted: &[bool],
    order: &HashMap<usize, Vec<usize>>,
    r: usize,
    built: &mut usize,
) -> Result<TreeNode> {
    *built += 1;
    let (kind, value) = if inserted[r] {
        (ra.kind(r).to_string(), ra.value(r).to_string())
    } else {
        let l = m.left_of(r).expect("non-inserted result nodes are matched");
        let value = new_values
            .get(&l)
            .map(|v| v.to_string())
            .unwrap_or_else(|| la.value(l).to_string());
        (la.kind(l).to_string(), value)
    };
    let mut node = TreeNode::new(kind, value, ra.nodes[r].node.range);
    if let Some(children) = order.get(&r) {
        for &c in children {
            node.children.push(build(la, ra, m, new_values, inserted, order, c, built)?);
        }
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differ::match_trees;
    use crate::syntax::{parse_mini_java, Origin, Taxonomy};
    use proptest::prelude::*;

    fn parse(src: &str) -> TreeNode {
        parse_mini_java(src, Origin::unknown()).unwrap().root
    }

    fn diff(src_l: &str, src_r: &str) -> (TreeNode, TreeNode, Matching, EditScript) {
        let tax = Taxonomy::default_taxonomy();
        let l = parse(src_l);
        let r = parse(src_r);
        let m = match_trees(&l, &r, &tax.differ);
        let s = edit_script(&l, &r, &m).unwrap();
        (l, r, m, s)
    }

    fn assert_replays(l: &TreeNode, r: &TreeNode, m: &Matching, s: &EditScript) {
        let rebuilt = replay(l, r, m, s).unwrap();
        assert!(rebuilt.structurally_equal(r), "replayed tree differs");
    }

    #[test]
    fn identical_trees_yield_empty_script() {
        let src = "class A { int f; void m(int a) { if (a > 0) { f = a; } } }";
        let (l, r, m, s) = diff(src, src);
        assert!(s.is_empty());
        assert_replays(&l, &r, &m, &s);
    }

    #[test]
    fn value_change_yields_single_update() {
        let (l, r, m, s) = diff(
            "class C { void m() { while (i < MAX) { op.createPanel(i); i = i + 1; } } }",
            "class C { void m() { while (i < MAX) { op.createPanel(i); i = i + 2; } } }",
        );
        assert_eq!(s.len(), 1);
        let op = &s.operations[0];
        assert_eq!(op.kind, EditKind::Update);
        assert_eq!(op.node.kind, "assignment");
        assert_eq!(op.node.value, "i = i + 1");
        assert_eq!(op.new_value.as_deref(), Some("i = i + 2"));
        assert_replays(&l, &r, &m, &s);
    }

    #[test]
    fn inserted_statement_yields_single_insert() {
        let (l, r, m, s) = diff(
            "class A { void m() { a(); c(); } }",
            "class A { void m() { a(); b(); c(); } }",
        );
        assert_eq!(s.len(), 1);
        let op = &s.operations[0];
        assert_eq!(op.kind, EditKind::Insert);
        assert_eq!(op.node.value, "b()");
        assert_eq!(op.slot.unwrap().index, 1);
        assert!(!op.within_unmatched_declaration);
        assert_replays(&l, &r, &m, &s);
    }

    #[test]
    fn deleted_statement_yields_single_delete() {
        let (l, r, m, s) = diff(
            "class A { void m() { a(); b(); c(); } }",
            "class A { void m() { a(); c(); } }",
        );
        assert_eq!(s.len(), 1);
        assert_eq!(s.operations[0].kind, EditKind::Delete);
        assert_eq!(s.operations[0].node.value, "b()");
        assert_replays(&l, &r, &m, &s);
    }

    #[test]
    fn swapped_statements_yield_single_order_move() {
        let (l, r, m, s) = diff(
            "class A { void m() { first(); second(); } }",
            "class A { void m() { second(); first(); } }",
        );
        assert_eq!(s.len(), 1);
        let op = &s.operations[0];
        assert_eq!(op.kind, EditKind::MoveOrder);
        assert_replays(&l, &r, &m, &s);
    }

    #[test]
    fn statement_leaving_branch_yields_parent_move() {
        let (l, r, m, s) = diff(
            "class A { void m() { if (c) { keepone(); keeptwo(); target = 1; } } }",
            "class A { void m() { if (c) { keepone(); keeptwo(); } target = 1; } }",
        );
        assert_eq!(s.len(), 1);
        let op = &s.operations[0];
        assert_eq!(op.kind, EditKind::MoveParent);
        assert_eq!(op.node.value, "target = 1");
        assert_replays(&l, &r, &m, &s);
    }

    #[test]
    fn parameter_type_change_yields_update() {
        let (l, r, m, s) = diff(
            "class A { void m(int a) { } }",
            "class A { void m(long a) { } }",
        );
        assert_eq!(s.len(), 1);
        let op = &s.operations[0];
        assert_eq!(op.kind, EditKind::Update);
        assert_eq!(op.node.kind, "parameter");
        assert_replays(&l, &r, &m, &s);
    }

    #[test]
    fn body_of_added_method_is_flagged() {
        let (_, _, _, s) = diff(
            "class A { }",
            "class A { void fresh() { x = 1; y = 2; } }",
        );
        let method = s.iter().find(|op| op.node.kind == "method").unwrap();
        assert!(!method.within_unmatched_declaration);
        let body: Vec<_> = s.iter().filter(|op| op.node.kind == "assignment").collect();
        assert_eq!(body.len(), 2);
        assert!(body.iter().all(|op| op.within_unmatched_declaration));
    }

    #[test]
    fn mismatched_kinds_are_rejected() {
        let l = parse("class A { void m() { a(); } }");
        let r = parse("class A { void m() { x = 1; } }");
        let la = Arena::build(&l);
        let ra = Arena::build(&r);
        let mut m = Matching::new(la.len(), ra.len());
        m.bind(0, 0);
        // method invocation against assignment
        m.bind(la.len() - 1, ra.len() - 1);
        let err = edit_script(&l, &r, &m).unwrap_err();
        assert!(matches!(err, Error::InconsistentMatching(_)));
    }

    #[test]
    fn lis_mask_keeps_longest_run() {
        assert_eq!(lis_mask(&[0, 1, 2]), vec![true, true, true]);
        assert_eq!(lis_mask(&[1, 0]), vec![true, false]);
        assert_eq!(lis_mask(&[2, 0, 1]), vec![false, true, true]);
        assert_eq!(lis_mask(&[]), Vec::<bool>::new());
    }

    const LETTERS: &[char] = &['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];
    const FRESH: &[char] = &['q', 'r', 's', 't'];

    fn body_source(statements: &[String]) -> String {
        format!("class A {{ void m() {{ {} }} }}", statements.join(" "))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Random disjoint deletions, updates, and insertions produce a
        /// script with exactly matching operation counts, and replaying it
        /// reproduces the right tree.
        #[test]
        fn scripts_replay_for_random_edits(
            n in 2usize..=8,
            delete_bits in proptest::collection::vec(any::<bool>(), 8),
            update_bits in proptest::collection::vec(any::<bool>(), 8),
            fresh_count in 0usize..=3,
            positions in proptest::collection::vec(any::<proptest::sample::Index>(), 3),
        ) {
            let base: Vec<String> = (0..n)
                .map(|i| {
                    let c = LETTERS[i];
                    format!("x{c} = stablevaluelongpart{c} + 1;")
                })
                .collect();
            let mut survivors = Vec::new();
            let mut deletes = 0usize;
            let mut updates = 0usize;
            for (i, stmt) in base.iter().enumerate() {
                if delete_bits[i] {
                    deletes += 1;
                } else if update_bits[i] {
                    updates += 1;
                    let c = LETTERS[i];
                    survivors.push(format!("x{c} = stablevaluelongpart{c} + 29;"));
                } else {
                    survivors.push(stmt.clone());
                }
            }
            let mut after = survivors;
            for j in 0..fresh_count {
                let c = FRESH[j];
                let pos = positions[j].index(after.len() + 1);
                after.insert(pos, format!("fresh{c}.call{c}(v);"));
            }
            let (l, r, m, s) = diff(&body_source(&base), &body_source(&after));
            prop_assert_eq!(s.delete_count(), deletes);
            prop_assert_eq!(s.insert_count(), fresh_count);
            prop_assert_eq!(s.update_count(), updates);
            prop_assert_eq!(s.move_count(), 0);
            let rebuilt = replay(&l, &r, &m, &s).unwrap();
            prop_assert!(rebuilt.structurally_equal(&r));
        }

        /// Shuffling statements never changes membership: the script holds
        /// only moves, and replay still reproduces the right tree.
        #[test]
        fn shuffles_replay_with_moves_only(
            n in 2usize..=6,
            seed in any::<u64>(),
        ) {
            let base: Vec<String> = (0..n)
                .map(|i| {
                    let c = LETTERS[i];
                    format!("x{c} = stablevaluelongpart{c} + 1;")
                })
                .collect();
            let mut shuffled = base.clone();
            // Fisher-Yates driven by a splitmix step, deterministic per seed.
            let mut state = seed;
            for i in (1..shuffled.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                shuffled.swap(i, j);
            }
            let (l, r, m, s) = diff(&body_source(&base), &body_source(&shuffled));
            prop_assert_eq!(s.delete_count(), 0);
            prop_assert_eq!(s.insert_count(), 0);
            prop_assert_eq!(s.update_count(), 0);
            let rebuilt = replay(&l, &r, &m, &s).unwrap();
            prop_assert!(rebuilt.structurally_equal(&r));
        }
    }
}
