use serde::{Deserialize, Serialize};

use super::TopoError;

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
    largest: u32,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "too many nodes for a u32 forest");
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            largest: if n > 0 { 1 } else { 0 },
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    #[inline]
    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.largest = self.largest.max(self.size[ra]);
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r] as usize
    }

    /// Size of the largest set, tracked incrementally.
    pub fn largest(&self) -> usize {
        self.largest as usize
    }
}

/// Graph of links that survived conversion to singlets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalGraph {
    pub node_count: usize,
    pub open_edges: Vec<(usize, usize)>,
}

impl ClassicalGraph {
    pub fn new(node_count: usize, open_edges: Vec<(usize, usize)>) -> Result<Self, TopoError> {
        if let Some(&(u, v)) = open_edges.iter().find(|(u, v)| *u >= node_count || *v >= node_count) {
            return Err(TopoError::NodeOutOfRange { u, v, node_count });
        }
        Ok(Self { node_count, open_edges })
    }
}

/// Connected components of a [`ClassicalGraph`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Component ids are dense and numbered by their lowest node id.
    pub component_id_per_node: Vec<usize>,
    pub component_sizes: Vec<usize>,
    pub largest_size: usize,
    /// `largest_size / node_count`, 0 for an empty graph.
    pub percolation_strength: f64,
}

pub fn components(graph: &ClassicalGraph) -> ComponentReport {
    let n = graph.node_count;
    let mut dsu = DisjointSet::new(n);
    for &(u, v) in &graph.open_edges {
        dsu.union(u, v);
    }
    let mut root_to_id = vec![usize::MAX; n];
    let mut component_id_per_node = Vec::with_capacity(n);
    let mut component_sizes = Vec::new();
    for node in 0..n {
        let root = dsu.find(node);
        if root_to_id[root] == usize::MAX {
            root_to_id[root] = component_sizes.len();
            component_sizes.push(0);
        }
        let id = root_to_id[root];
        component_sizes[id] += 1;
        component_id_per_node.push(id);
    }
    let largest_size = component_sizes.iter().copied().max().unwrap_or(0);
    let percolation_strength = if n == 0 { 0.0 } else { largest_size as f64 / n as f64 };
    ComponentReport {
        component_id_per_node,
        component_sizes,
        largest_size,
        percolation_strength,
    }
}

/// Fraction of nodes in the largest connected component.
pub fn percolation_strength(graph: &ClassicalGraph) -> Result<f64, TopoError> {
    if graph.node_count == 0 {
        return Err(TopoError::EmptyGraph);
    }
    Ok(components(graph).percolation_strength)
}
