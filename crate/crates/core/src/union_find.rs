//! Disjoint-set forests, plain and with a Z/2 offset per element.
//!
//! The parity variant tracks, for each element, whether it agrees with its
//! root. Orientation and co-orientation propagation both reduce to it.

#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Returns `true` if the two elements were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        true
    }

    /// Number of distinct sets.
    pub fn count(&mut self) -> usize {
        (0..self.len()).filter(|&i| self.find(i) == i).count()
    }

    /// Dense class labels, numbered in order of first appearance.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut root_label = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0;
        for i in 0..n {
            let r = self.find(i);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            out.push(root_label[r]);
        }
        (out, next)
    }
}

/// Union-find where each element carries a bit relative to its root.
///
/// `relate(a, b, p)` records `bit(a) xor bit(b) == p`; a contradiction marks
/// the merged class as inconsistent.
#[derive(Clone, Debug)]
pub struct ParitySet {
    parent: Vec<usize>,
    offset: Vec<bool>,
    consistent: Vec<bool>,
}

impl ParitySet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            offset: vec![false; n],
            consistent: vec![true; n],
        }
    }

    /// Root of `node` and the parity of `node` relative to it.
    pub fn find(&mut self, node: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = node;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Walk back from the element nearest the root, accumulating offsets.
        let mut acc = false;
        for &n in path.iter().rev() {
            acc ^= self.offset[n];
            self.offset[n] = acc;
            self.parent[n] = root;
        }
        (
            root,
            if path.is_empty() {
                false
            } else {
                self.offset[node]
            },
        )
    }

    pub fn relate(&mut self, a: usize, b: usize, parity: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != parity {
                self.consistent[ra] = false;
            }
            return;
        }
        self.parent[rb] = ra;
        self.offset[rb] = pa ^ pb ^ parity;
        self.consistent[ra] = self.consistent[ra] && self.consistent[rb];
    }

    pub fn is_consistent(&mut self, node: usize) -> bool {
        let (r, _) = self.find(node);
        self.consistent[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_count() {
        let mut ds = DisjointSet::new(5);
        assert!(ds.union(0, 1));
        assert!(ds.union(3, 4));
        assert!(!ds.union(1, 0));
        assert_eq!(ds.count(), 3);
        let (labels, n) = ds.labels();
        assert_eq!(n, 3);
        assert_eq!(labels, vec![0, 0, 1, 2, 2]);
    }

    #[test]
    fn parity_detects_odd_cycle() {
        let mut ps = ParitySet::new(3);
        ps.relate(0, 1, true);
        ps.relate(1, 2, true);
        assert!(ps.is_consistent(0));
        assert!(!(ps.find(2).1 ^ ps.find(0).1));
        ps.relate(2, 0, true);
        assert!(!ps.is_consistent(1));
    }

    #[test]
    fn parity_even_cycle_is_consistent() {
        let mut ps = ParitySet::new(4);
        ps.relate(0, 1, true);
        ps.relate(1, 2, true);
        ps.relate(2, 3, true);
        ps.relate(3, 0, true);
        assert!(ps.is_consistent(2));
    }
}
