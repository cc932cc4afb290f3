use serde::{Deserialize, Serialize};

use super::taxonomy::Taxonomy;
use crate::error::{Error, Result};

/// Position of a node in its source file. Lines and columns are 1-based;
/// the end position is inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "[u32; 4]", into = "[u32; 4]")]
pub struct Range {
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl Range {
    pub fn new(start_line: u32, start_col: u32, end_line: u32, end_col: u32) -> Self {
        Range {
            start_line,
            start_col,
            end_line,
            end_col,
        }
    }

    pub fn point(line: u32, col: u32) -> Self {
        Range::new(line, col, line, col)
    }

    fn start(&self) -> (u32, u32) {
        (self.start_line, self.start_col)
    }

    fn end(&self) -> (u32, u32) {
        (self.end_line, self.end_col)
    }

    pub fn contains(&self, other: &Range) -> bool {
        self.start() <= other.start() && other.end() <= self.end()
    }

    /// True when `self` ends strictly before `other` starts.
    pub fn precedes(&self, other: &Range) -> bool {
        self.end() < other.start()
    }
}

impl From<[u32; 4]> for Range {
    fn from(v: [u32; 4]) -> Self {
        Range::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Range> for [u32; 4] {
    fn from(r: Range) -> Self {
        [r.start_line, r.start_col, r.end_line, r.end_col]
    }
}

/// One node of a source tree. `value` is normalized source text; it is empty
/// for purely structural nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    pub kind: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub value: String,
    pub range: Range,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn new(kind: impl Into<String>, value: impl Into<String>, range: Range) -> Self {
        TreeNode {
            kind: kind.into(),
            value: value.into(),
            range,
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(TreeNode::node_count).sum::<usize>()
    }

    /// Pre-order traversal over the subtree rooted here.
    pub fn pre_order(&self) -> PreOrder<'_> {
        PreOrder { stack: vec![self] }
    }

    /// Equality of kinds, values, and shape. Ranges are ignored, so trees
    /// that differ only in formatting compare equal.
    pub fn structurally_equal(&self, other: &TreeNode) -> bool {
        self.kind == other.kind
            && self.value == other.value
            && self.children.len() == other.children.len()
            && self
                .children
                .iter()
                .zip(&other.children)
                .all(|(a, b)| a.structurally_equal(b))
    }
}

pub struct PreOrder<'t> {
    stack: Vec<&'t TreeNode>,
}

impl<'t> Iterator for PreOrder<'t> {
    type Item = &'t TreeNode;

    fn next(&mut self) -> Option<&'t TreeNode> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}

/// Where a tree came from: a file path and a revision label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Origin {
    pub path: String,
    pub revision: String,
}

impl Origin {
    pub fn new(path: impl Into<String>, revision: impl Into<String>) -> Self {
        Origin {
            path: path.into(),
            revision: revision.into(),
        }
    }

    pub fn unknown() -> Self {
        Origin::new("<memory>", "")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceTree {
    pub origin: Origin,
    pub root: TreeNode,
}

impl SourceTree {
    pub fn new(origin: Origin, root: TreeNode) -> Self {
        SourceTree { origin, root }
    }
}

/// Check the structural invariants of a tree against a taxonomy: every kind
/// must be known, child ranges must nest inside their parent and occur in
/// document order, and a childless node must carry a value unless its kind is
/// a container kind.
pub fn validate_tree(root: &TreeNode, taxonomy: &Taxonomy) -> Result<()> {
    if !taxonomy.is_entity_kind(&root.kind) {
        return Err(Error::UnknownKind(root.kind.clone()));
    }
    if root.children.is_empty() && root.value.is_empty() && !taxonomy.is_container_kind(&root.kind)
    {
        return Err(Error::InvalidTree(format!(
            "childless '{}' node at {}:{} has no value",
            root.kind, root.range.start_line, root.range.start_col
        )));
    }
    let mut prev: Option<&TreeNode> = None;
    for child in &root.children {
        if !root.range.contains(&child.range) {
            return Err(Error::InvalidTree(format!(
                "'{}' child range {:?} escapes its '{}' parent range {:?}",
                child.kind,
                <[u32; 4]>::from(child.range),
                root.kind,
                <[u32; 4]>::from(root.range)
            )));
        }
        if let Some(p) = prev {
            if !p.range.precedes(&child.range) {
                return Err(Error::InvalidTree(format!(
                    "sibling '{}' at {}:{} overlaps or precedes its left sibling",
                    child.kind, child.range.start_line, child.range.start_col
                )));
            }
        }
        validate_tree(child, taxonomy)?;
        prev = Some(child);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tax() -> &'static Taxonomy {
        Taxonomy::default_taxonomy()
    }

    #[test]
    fn empty_compilation_unit_is_valid() {
        let root = TreeNode::new("compilation unit", "", Range::point(1, 1));
        validate_tree(&root, tax()).unwrap();
    }

    #[test]
    fn childless_statement_without_value_is_invalid() {
        let mut root = TreeNode::new("compilation unit", "", Range::new(1, 1, 3, 1));
        root.children
            .push(TreeNode::new("assignment", "", Range::new(2, 1, 2, 5)));
        let err = validate_tree(&root, tax()).unwrap_err();
        assert!(err.to_string().contains("has no value"));
    }

    #[test]
    fn escaping_child_range_is_invalid() {
        let mut root = TreeNode::new("compilation unit", "", Range::new(1, 1, 2, 1));
        root.children
            .push(TreeNode::new("assignment", "x = 1", Range::new(3, 1, 3, 6)));
        let err = validate_tree(&root, tax()).unwrap_err();
        assert!(err.to_string().contains("escapes"));
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let root = TreeNode::new("lambda", "x", Range::point(1, 1));
        let err = validate_tree(&root, tax()).unwrap_err();
        assert!(matches!(err, Error::UnknownKind(k) if k == "lambda"));
    }

    #[test]
    fn structural_equality_ignores_ranges() {
        let a = TreeNode::new("assignment", "x = 1", Range::new(1, 1, 1, 6));
        let b = TreeNode::new("assignment", "x = 1", Range::new(9, 4, 9, 9));
        assert!(a.structurally_equal(&b));
        assert_ne!(a, b);
    }
}
