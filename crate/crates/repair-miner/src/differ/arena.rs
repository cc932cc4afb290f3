//! Flat pre-order view of a tree. Node ids are pre-order indices, so a
//! subtree occupies the contiguous id range `[id, id + size)`.

use crate::syntax::TreeNode;

pub(crate) struct ArenaNode<'t> {
    pub node: &'t TreeNode,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub sibling_index: usize,
    pub size: usize,
}

pub(crate) struct Arena<'t> {
    pub nodes: Vec<ArenaNode<'t>>,
}

impl<'t> Arena<'t> {
    pub fn build(root: &'t TreeNode) -> Arena<'t> {
        let mut arena = Arena { nodes: Vec::new() };
        arena.add(root, None, 0);
        arena
    }

    fn add(&mut self, node: &'t TreeNode, parent: Option<usize>, sibling_index: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(ArenaNode {
            node,
            parent,
            children: Vec::new(),
            sibling_index,
            size: 1,
        });
        for (i, child) in node.children.iter().enumerate() {
            let child_id = self.add(child, Some(id), i);
            self.nodes[id].children.push(child_id);
            self.nodes[id].size += self.nodes[child_id].size;
        }
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn kind(&self, id: usize) -> &str {
        &self.nodes[id].node.kind
    }

    pub fn value(&self, id: usize) -> &str {
        &self.nodes[id].node.value
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.nodes[id].children
    }

    pub fn sibling_index(&self, id: usize) -> usize {
        self.nodes[id].sibling_index
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.nodes[id].children.is_empty()
    }

    /// Whether `id` lies in the subtree rooted at `root`, the root included.
    pub fn in_subtree(&self, id: usize, root: usize) -> bool {
        id >= root && id < root + self.nodes[root].size
    }

    /// Ids of strict descendants of `id`, in pre-order.
    pub fn descendants(&self, id: usize) -> std::ops::Range<usize> {
        id + 1..id + self.nodes[id].size
    }

    pub fn descendant_count(&self, id: usize) -> usize {
        self.nodes[id].size - 1
    }

    /// Ids of the subtree rooted at `id` in post-order (children before
    /// parents).
    pub fn post_order(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes[id].size);
        self.post_order_into(id, &mut out);
        out
    }

    fn post_order_into(&self, id: usize, out: &mut Vec<usize>) {
        for &child in &self.nodes[id].children {
            self.post_order_into(child, out);
        }
        out.push(id);
    }
}
