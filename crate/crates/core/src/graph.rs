//! Undirected simple graphs keyed by opaque string node ids.
//!
//! Nodes are stored densely, indexed in lexicographic order of their ids, so
//! "smallest node index" and "lexicographically smallest id" coincide. Every
//! adjacency list is sorted and free of duplicates and self-loops.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected 2 tokens, found {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: node id {id:?} starts with '#'")]
    CommentId { line: usize, id: String },
    #[error("unknown node id {0:?}")]
    UnknownNode(String),
}

/// An immutable, symmetric, loop-free graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    n_edges: usize,
}

impl Graph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge iterator. Self-loops are dropped and
    /// repeated edges (in either orientation) collapse to one.
    pub fn from_edges<I, S>(edges: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        Self::from_nodes_and_edges(std::iter::empty::<String>(), edges)
    }

    /// Like [`Graph::from_edges`] but also registers `nodes`, which may be
    /// isolated.
    pub fn from_nodes_and_edges<N, I, S, T>(nodes: N, edges: I) -> Self
    where
        N: IntoIterator<Item = T>,
        T: Into<String>,
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut node_set: BTreeSet<String> = nodes.into_iter().map(Into::into).collect();
        let mut edge_set: BTreeSet<(String, String)> = BTreeSet::new();
        for (u, v) in edges {
            let (u, v) = (u.into(), v.into());
            if u == v {
                continue;
            }
            node_set.insert(u.clone());
            node_set.insert(v.clone());
            if u < v {
                edge_set.insert((u, v));
            } else {
                edge_set.insert((v, u));
            }
        }
        let ids: Vec<String> = node_set.into_iter().collect();
        let index: HashMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (u, v) in &edge_set {
            let (a, b) = (index[u], index[v]);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            ids,
            index,
            adj,
            n_edges: edge_set.len(),
        }
    }

    /// Builds a graph directly from dense indices. `n` nodes are named by
    /// `name(i)`; callers must pass names that sort in the same order as the
    /// indices or the result is re-indexed.
    pub fn from_index_edges(names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let pairs = edges
            .iter()
            .map(|&(u, v)| (names[u].clone(), names[v].clone()))
            .collect::<Vec<_>>();
        Self::from_nodes_and_edges(names, pairs)
    }

    pub fn n_nodes(&self) -> usize {
        self.ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Sorted neighbor indices of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn node_id(&self, node: usize) -> &str {
        &self.ids[node]
    }

    pub fn node_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` index pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced on `nodes` (indices into this graph).
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut keep = vec![false; self.n_nodes()];
        for &v in nodes {
            keep[v] = true;
        }
        let names = nodes.iter().map(|&v| self.ids[v].clone());
        let edges = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (self.ids[u].clone(), self.ids[v].clone()))
            .collect::<Vec<_>>();
        Graph::from_nodes_and_edges(names, edges)
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n_nodes();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Node indices of the largest component. Ties go to the component
    /// holding the lexicographically smallest id.
    pub fn largest_component_nodes(&self) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for comp in self.connected_components() {
            // components arrive ordered by smallest member, so strict > keeps the earliest
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best
    }

    pub fn largest_connected_component(&self) -> Graph {
        let nodes = self.largest_component_nodes();
        if nodes.len() == self.n_nodes() {
            return self.clone();
        }
        self.induced_subgraph(&nodes)
    }

    /// Hop distances from `source` by index; `None` for unreachable nodes.
    pub fn bfs_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n_nodes()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Hop distances from the node named `source` to every reachable node.
    pub fn bfs_distances(&self, source: &str) -> Result<BTreeMap<String, usize>, GraphError> {
        let s = self
            .index_of(source)
            .ok_or_else(|| GraphError::UnknownNode(source.to_string()))?;
        Ok(self
            .bfs_from(s)
            .into_iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|d| (self.ids[v].clone(), d)))
            .collect())
    }

    /// Serializes to the edge-list format read by [`parse_edge_list`].
    /// Isolated nodes have no representation and are lost.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.ids[u], self.ids[v]);
        }
        out
    }
}

/// Parses an edge list: one `U V` pair per line, `#` comments and blank
/// lines ignored. Duplicates collapse and self-loop lines are dropped.
/// Ids may not start with `#`, so every parsed graph can be written back.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::MalformedLine {
                line: i + 1,
                found: tokens.len(),
            });
        }
        if tokens[1].starts_with('#') {
            return Err(GraphError::CommentId {
                line: i + 1,
                id: tokens[1].to_string(),
            });
        }
        edges.push((tokens[0], tokens[1]));
    }
    Ok(Graph::from_edges(edges))
}

/// Community membership of every node, by node index. Communities are
/// numbered contiguously from 0 in order of their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePartition {
    assignment: Vec<usize>,
    n_communities: usize,
}

impl NodePartition {
    /// Relabels arbitrary community tags into the canonical contiguous form.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        NodePartition {
            assignment,
            n_communities: remap.len(),
        }
    }

    pub fn singletons(n: usize) -> Self {
        NodePartition {
            assignment: (0..n).collect(),
            n_communities: n,
        }
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn n_communities(&self) -> usize {
        self.n_communities
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Member lists per community.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_communities];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Assignment keyed by node id.
    pub fn by_id<'a>(&self, g: &'a Graph) -> BTreeMap<&'a str, usize> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(v, &c)| (g.node_id(v), c))
            .collect()
    }
}
