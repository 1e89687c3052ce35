//! Tracing 1-manifolds built from matchings.
//!
//! Nodes have degree 1 (an open end) or 2. Every edge set produced by gluing
//! perfect matchings along shared points is of this form.

const NONE: usize = usize::MAX;

/// Half-edge target: `(node, slot at that node)`.
type HalfEdge = (usize, usize);

#[derive(Debug, Clone)]
pub(crate) struct StrandGraph {
    adj: Vec<[HalfEdge; 2]>,
}

/// Result of tracing: open-path partners and number of closed loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Traced {
    pub partner: Vec<usize>,
    pub loops: usize,
}

impl StrandGraph {
    pub fn new(n: usize) -> Self {
        StrandGraph {
            adj: vec![[(NONE, NONE); 2]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    fn free_slot(&self, a: usize) -> usize {
        match self.adj[a] {
            [(NONE, _), _] => 0,
            [_, (NONE, _)] => 1,
            _ => panic!("strand node {a} of degree > 2"),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "strand edge must join distinct nodes");
        let sa = self.free_slot(a);
        self.adj[a][sa] = (b, NONE);
        let sb = self.free_slot(b);
        self.adj[b][sb] = (a, sa);
        self.adj[a][sa].1 = sb;
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].iter().filter(|h| h.0 != NONE).count()
    }

    /// Follows every path from its degree-1 ends and counts the remaining
    /// cycles. `partner[v]` is the far end of `v`'s path for degree-1 nodes and
    /// `usize::MAX` otherwise.
    pub fn trace(&self) -> Traced {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut partner = vec![NONE; n];
        for start in 0..n {
            if seen[start] || self.degree(start) != 1 {
                continue;
            }
            let end = self.walk(start, &mut seen);
            partner[start] = end;
            partner[end] = start;
        }
        let mut loops = 0;
        for start in 0..n {
            if seen[start] || self.degree(start) == 0 {
                continue;
            }
            self.walk(start, &mut seen);
            loops += 1;
        }
        Traced { partner, loops }
    }

    /// Number of closed loops; open paths are ignored.
    pub fn count_loops(&self) -> usize {
        self.trace().loops
    }

    /// Walks from `start` leaving through slot 0 and returns the last node.
    fn walk(&self, start: usize, seen: &mut [bool]) -> usize {
        seen[start] = true;
        let (mut cur, mut arrived) = self.adj[start][0];
        if cur == NONE {
            return start;
        }
        while cur != start {
            seen[cur] = true;
            let (next, slot) = self.adj[cur][1 - arrived];
            if next == NONE {
                return cur;
            }
            cur = next;
            arrived = slot;
        }
        start
    }
}
