//! The directed acyclic multigraph model of a sum-network: validation,
//! deterministic topological ordering of edges, unit-capacity max-flow /
//! min-cut, reversal and graph surgery, the JSON interchange format, and a
//! structural isomorphism test for small networks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NetError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("node `{0}` already exists")]
    NodeExists(String),
    #[error("edge id `{0}` already exists")]
    EdgeIdExists(String),
    #[error("operation would create a cycle")]
    CycleCreated,
    #[error("network contains a cycle")]
    Cyclic,
    #[error("edge tail `{0}` is a terminal")]
    TailIsTerminal(String),
    #[error("edge head `{0}` is a source")]
    HeadIsSource(String),
    #[error("source and target nodes coincide: `{0}`")]
    DegeneratePair(String),
    #[error("network is not well formed: {0}")]
    Invalid(String),
    #[error("malformed network document: {0}")]
    Format(String),
}

/// A directed edge. Parallel edges are distinguished by their ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
}

/// A sum-network: a DAG multigraph with designated source and terminal nodes.
/// Every edge carries one alphabet symbol per use; larger capacities are
/// modeled as parallel edges.
///
/// The struct doubles as the interchange document: serializing it with
/// [`SumNetwork::to_canonical_json`] yields the canonical file form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumNetwork {
    #[serde(default)]
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub sources: Vec<String>,
    pub terminals: Vec<String>,
}

/// A single well-formedness violation reported by [`SumNetwork::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateNode(String),
    DuplicateEdgeId(String),
    UnknownEndpoint { edge: String, node: String },
    UnknownSource(String),
    UnknownTerminal(String),
    SourceTerminalOverlap(String),
    SourceHasInEdge { node: String, edge: String },
    TerminalHasOutEdge { node: String, edge: String },
    NoSources,
    NoTerminals,
    Cycle,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode(n) => write!(f, "duplicate node `{n}`"),
            Violation::DuplicateEdgeId(e) => write!(f, "duplicate edge id `{e}`"),
            Violation::UnknownEndpoint { edge, node } => {
                write!(f, "edge `{edge}` references unknown node `{node}`")
            }
            Violation::UnknownSource(n) => write!(f, "source `{n}` is not a node"),
            Violation::UnknownTerminal(n) => write!(f, "terminal `{n}` is not a node"),
            Violation::SourceTerminalOverlap(n) => {
                write!(f, "node `{n}` is both a source and a terminal")
            }
            Violation::SourceHasInEdge { node, edge } => {
                write!(f, "source `{node}` has incoming edge `{edge}`")
            }
            Violation::TerminalHasOutEdge { node, edge } => {
                write!(f, "terminal `{node}` has outgoing edge `{edge}`")
            }
            Violation::NoSources => write!(f, "network has no sources"),
            Violation::NoTerminals => write!(f, "network has no terminals"),
            Violation::Cycle => write!(f, "network contains a directed cycle"),
        }
    }
}

/// Index-based view of a network used by the algorithms. In-edge lists
/// follow the network's edge-list order; that order is the documented input
/// order for code evaluation.
pub(crate) struct Topology {
    pub in_edges: Vec<Vec<usize>>,
    pub edge_tail: Vec<usize>,
    pub source_idx: Vec<usize>,
    pub terminal_idx: Vec<usize>,
    /// Edge indices in topological order.
    pub topo_edges: Vec<usize>,
}

impl SumNetwork {
    pub fn new(
        name: &str,
        nodes: &[&str],
        edges: &[(&str, &str, &str)],
        sources: &[&str],
        terminals: &[&str],
    ) -> SumNetwork {
        SumNetwork {
            name: name.to_string(),
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, t, h)| Edge {
                    id: id.to_string(),
                    tail: t.to_string(),
                    head: h.to_string(),
                })
                .collect(),
            sources: sources.iter().map(|s| s.to_string()).collect(),
            terminals: terminals.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Returns all well-formedness violations; the network is valid iff the
    /// list is empty.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut nodes = BTreeSet::new();
        for n in &self.nodes {
            if !nodes.insert(n.clone()) {
                out.push(Violation::DuplicateNode(n.clone()));
            }
        }
        let mut edge_ids = BTreeSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id.clone()) {
                out.push(Violation::DuplicateEdgeId(e.id.clone()));
            }
            for node in [&e.tail, &e.head] {
                if !nodes.contains(node) {
                    out.push(Violation::UnknownEndpoint {
                        edge: e.id.clone(),
                        node: node.clone(),
                    });
                }
            }
        }
        let sources: BTreeSet<_> = self.sources.iter().cloned().collect();
        let terminals: BTreeSet<_> = self.terminals.iter().cloned().collect();
        for s in &sources {
            if !nodes.contains(s) {
                out.push(Violation::UnknownSource(s.clone()));
            }
            if terminals.contains(s) {
                out.push(Violation::SourceTerminalOverlap(s.clone()));
            }
        }
        for t in &terminals {
            if !nodes.contains(t) {
                out.push(Violation::UnknownTerminal(t.clone()));
            }
        }
        if self.sources.is_empty() {
            out.push(Violation::NoSources);
        }
        if self.terminals.is_empty() {
            out.push(Violation::NoTerminals);
        }
        for e in &self.edges {
            if sources.contains(&e.head) {
                out.push(Violation::SourceHasInEdge {
                    node: e.head.clone(),
                    edge: e.id.clone(),
                });
            }
            if terminals.contains(&e.tail) {
                out.push(Violation::TerminalHasOutEdge {
                    node: e.tail.clone(),
                    edge: e.id.clone(),
                });
            }
        }
        if self.node_topo_order().is_none() {
            out.push(Violation::Cycle);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn source_count(&self) -> usize {
        self.sources.len()
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn in_edges_of(&self, node: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.head == node).collect()
    }

    pub fn out_edges_of(&self, node: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.tail == node).collect()
    }

    /// Kahn node order, `None` when cyclic. Only used internally; public
    /// ordering is the edge order of [`SumNetwork::topo_order`].
    fn node_topo_order(&self) -> Option<Vec<usize>> {
        let idx: BTreeMap<&str, usize> =
            self.nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            let (Some(&t), Some(&h)) = (idx.get(e.tail.as_str()), idx.get(e.head.as_str()))
            else {
                // Dangling endpoints are reported separately; skip them here.
                continue;
            };
            indeg[h] += 1;
            out[t].push(h);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Deterministic topological order of the edges: every edge appears after
    /// all edges into its tail; ties are broken by lexicographic edge id.
    pub fn topo_order(&self) -> Result<Vec<String>, NetError> {
        let topo = self.topology()?;
        Ok(topo.topo_edges.iter().map(|&e| self.edges[e].id.clone()).collect())
    }

    pub(crate) fn topology(&self) -> Result<Topology, NetError> {
        let node_index: BTreeMap<String, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let n = self.nodes.len();
        let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edge_tail = Vec::with_capacity(self.edges.len());
        let mut edge_head = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let t = *node_index
                .get(&e.tail)
                .ok_or_else(|| NetError::UnknownNode(e.tail.clone()))?;
            let h = *node_index
                .get(&e.head)
                .ok_or_else(|| NetError::UnknownNode(e.head.clone()))?;
            out_edges[t].push(i);
            in_edges[h].push(i);
            edge_tail.push(t);
            edge_head.push(h);
        }
        let source_idx = self
            .sources
            .iter()
            .map(|s| node_index.get(s).copied().ok_or_else(|| NetError::UnknownNode(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let terminal_idx = self
            .terminals
            .iter()
            .map(|t| node_index.get(t).copied().ok_or_else(|| NetError::UnknownNode(t.clone())))
            .collect::<Result<Vec<_>, _>>()?;

        // Edge-driven Kahn: an edge is ready once every edge into its tail
        // has been emitted; the ready edge with the smallest id goes first.
        let mut remaining: Vec<usize> = (0..self.edges.len())
            .map(|e| in_edges[edge_tail[e]].len())
            .collect();
        let mut ready: BTreeSet<(String, usize)> = (0..self.edges.len())
            .filter(|&e| remaining[e] == 0)
            .map(|e| (self.edges[e].id.clone(), e))
            .collect();
        let mut topo_edges = Vec::with_capacity(self.edges.len());
        while let Some(entry) = ready.iter().next().cloned() {
            ready.remove(&entry);
            let e = entry.1;
            topo_edges.push(e);
            for &f in &out_edges[edge_head[e]] {
                remaining[f] -= 1;
                if remaining[f] == 0 {
                    ready.insert((self.edges[f].id.clone(), f));
                }
            }
        }
        if topo_edges.len() != self.edges.len() {
            return Err(NetError::Cyclic);
        }
        #[cfg(debug_assertions)]
        {
            let mut pos = vec![0usize; self.edges.len()];
            for (p, &e) in topo_edges.iter().enumerate() {
                pos[e] = p;
            }
            for &e in &topo_edges {
                for &f in &in_edges[edge_tail[e]] {
                    debug_assert!(
                        pos[f] < pos[e],
                        "edge `{}` must follow `{}` in topological order",
                        self.edges[e].id,
                        self.edges[f].id
                    );
                }
            }
        }
        Ok(Topology { in_edges, edge_tail, source_idx, terminal_idx, topo_edges })
    }

    /// Maximum number of edge-disjoint `s -> t` paths, equal to the minimum
    /// edge-cut cardinality (all edges have unit capacity). Returns 0 when
    /// `t` is unreachable from `s`.
    pub fn min_cut(&self, s: &str, t: &str) -> Result<usize, NetError> {
        let node_index: BTreeMap<&str, usize> =
            self.nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let &si = node_index.get(s).ok_or_else(|| NetError::UnknownNode(s.to_string()))?;
        let &ti = node_index.get(t).ok_or_else(|| NetError::UnknownNode(t.to_string()))?;
        if si == ti {
            return Err(NetError::DegeneratePair(s.to_string()));
        }

        // Residual arcs: a forward arc (capacity 1) and a backward arc
        // (capacity 0) per edge. Scan order within a node is by edge id,
        // forward arcs before backward, so augmentation is deterministic.
        let m = self.edges.len();
        let mut arc_to = vec![0usize; 2 * m];
        let mut cap = vec![0i32; 2 * m];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        let mut order: Vec<(String, usize, usize)> = Vec::with_capacity(2 * m);
        for (i, e) in self.edges.iter().enumerate() {
            let (&tl, &hd) = (
                node_index.get(e.tail.as_str()).ok_or_else(|| NetError::UnknownNode(e.tail.clone()))?,
                node_index.get(e.head.as_str()).ok_or_else(|| NetError::UnknownNode(e.head.clone()))?,
            );
            arc_to[2 * i] = hd;
            cap[2 * i] = 1;
            arc_to[2 * i + 1] = tl;
            cap[2 * i + 1] = 0;
            order.push((e.id.clone(), 0, 2 * i));
            order.push((e.id.clone(), 1, 2 * i + 1));
        }
        order.sort();
        for (_, _, arc) in order {
            let from = arc_to[arc ^ 1];
            adj[from].push(arc);
        }

        let mut flow = 0usize;
        loop {
            // BFS for a shortest augmenting path.
            let mut prev_arc = vec![usize::MAX; self.nodes.len()];
            let mut seen = vec![false; self.nodes.len()];
            seen[si] = true;
            let mut queue = VecDeque::from([si]);
            'bfs: while let Some(v) = queue.pop_front() {
                for &arc in &adj[v] {
                    let w = arc_to[arc];
                    if cap[arc] > 0 && !seen[w] {
                        seen[w] = true;
                        prev_arc[w] = arc;
                        if w == ti {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !seen[ti] {
                break;
            }
            let mut v = ti;
            while v != si {
                let arc = prev_arc[v];
                cap[arc] -= 1;
                cap[arc ^ 1] += 1;
                v = arc_to[arc ^ 1];
            }
            flow += 1;
        }
        Ok(flow)
    }

    /// Minimum of [`SumNetwork::min_cut`] over all source-terminal pairs.
    pub fn min_cut_bound(&self) -> Result<usize, NetError> {
        let mut best = usize::MAX;
        for s in &self.sources {
            for t in &self.terminals {
                best = best.min(self.min_cut(s, t)?);
            }
        }
        if best == usize::MAX {
            return Err(NetError::Invalid("no source-terminal pairs".into()));
        }
        Ok(best)
    }

    /// The reverse network: every edge reversed (ids preserved) and the
    /// roles of sources and terminals interchanged.
    pub fn reverse_network(&self) -> SumNetwork {
        SumNetwork {
            name: self.name.clone(),
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { id: e.id.clone(), tail: e.head.clone(), head: e.tail.clone() })
                .collect(),
            sources: self.terminals.clone(),
            terminals: self.sources.clone(),
        }
    }

    /// A copy of the network with a different terminal list; used to pose
    /// sub-problems on the same graph. Former terminals stay as plain nodes.
    pub fn with_terminals(&self, terminals: &[&str]) -> SumNetwork {
        let mut out = self.clone();
        out.terminals = terminals.iter().map(|s| s.to_string()).collect();
        out
    }

    /// A copy of the network with a different source list. Former sources
    /// stay as plain in-degree-0 nodes whose out-edges carry nothing.
    pub fn with_sources(&self, sources: &[&str]) -> SumNetwork {
        let mut out = self.clone();
        out.sources = sources.iter().map(|s| s.to_string()).collect();
        out
    }

    /// Replaces edge `edge_id` = (a, b) by a -> new_node -> b. The new edges
    /// take the ids `"{a}-{new_node}"` and `"{new_node}-{b}"`.
    pub fn subdivide_edge(&self, edge_id: &str, new_node: &str) -> Result<SumNetwork, NetError> {
        let pos = self
            .edges
            .iter()
            .position(|e| e.id == edge_id)
            .ok_or_else(|| NetError::UnknownEdge(edge_id.to_string()))?;
        if self.nodes.iter().any(|n| n == new_node) {
            return Err(NetError::NodeExists(new_node.to_string()));
        }
        let old = self.edges[pos].clone();
        let first = Edge {
            id: format!("{}-{}", old.tail, new_node),
            tail: old.tail.clone(),
            head: new_node.to_string(),
        };
        let second = Edge {
            id: format!("{}-{}", new_node, old.head),
            tail: new_node.to_string(),
            head: old.head.clone(),
        };
        for candidate in [&first, &second] {
            if self.edges.iter().any(|e| e.id == candidate.id) {
                return Err(NetError::EdgeIdExists(candidate.id.clone()));
            }
        }
        let mut out = self.clone();
        out.nodes.push(new_node.to_string());
        out.edges.splice(pos..=pos, [first, second]);
        Ok(out)
    }

    /// Adds an edge `tail -> head` with a derived id (`"{tail}-{head}"`,
    /// suffixed `#2`, `#3`, ... for parallels). Rejects edges out of
    /// terminals, into sources, or closing a cycle.
    pub fn add_edge(&self, tail: &str, head: &str) -> Result<SumNetwork, NetError> {
        if !self.nodes.iter().any(|n| n == tail) {
            return Err(NetError::UnknownNode(tail.to_string()));
        }
        if !self.nodes.iter().any(|n| n == head) {
            return Err(NetError::UnknownNode(head.to_string()));
        }
        if self.terminals.iter().any(|t| t == tail) {
            return Err(NetError::TailIsTerminal(tail.to_string()));
        }
        if self.sources.iter().any(|s| s == head) {
            return Err(NetError::HeadIsSource(head.to_string()));
        }
        let base = format!("{tail}-{head}");
        let mut id = base.clone();
        let mut k = 2;
        while self.edges.iter().any(|e| e.id == id) {
            id = format!("{base}#{k}");
            k += 1;
        }
        let mut out = self.clone();
        out.edges.push(Edge { id, tail: tail.to_string(), head: head.to_string() });
        if out.node_topo_order().is_none() {
            return Err(NetError::CycleCreated);
        }
        Ok(out)
    }

    /// Canonical document form: pretty JSON with the fields in schema order
    /// and a trailing newline. Files produced here round-trip byte-for-byte.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("network serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<SumNetwork, NetError> {
        serde_json::from_str(text).map_err(|e| NetError::Format(e.to_string()))
    }
}

/// Role-preserving structural isomorphism of two sum-networks: a bijection of
/// nodes mapping sources to sources and terminals to terminals (as sets) that
/// preserves directed multi-edge counts. Intended for small networks.
pub fn isomorphic(a: &SumNetwork, b: &SumNetwork) -> bool {
    if a.nodes.len() != b.nodes.len()
        || a.edges.len() != b.edges.len()
        || a.sources.len() != b.sources.len()
        || a.terminals.len() != b.terminals.len()
    {
        return false;
    }
    let n = a.nodes.len();
    let index = |net: &SumNetwork| -> BTreeMap<String, usize> {
        net.nodes.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
    };
    let ai = index(a);
    let bi = index(b);
    if ai.len() != n || bi.len() != n {
        return false;
    }
    let counts = |net: &SumNetwork, idx: &BTreeMap<String, usize>| -> Vec<Vec<u32>> {
        let mut m = vec![vec![0u32; n]; n];
        for e in &net.edges {
            let (Some(&t), Some(&h)) = (idx.get(&e.tail), idx.get(&e.head)) else {
                return m;
            };
            m[t][h] += 1;
        }
        m
    };
    let am = counts(a, &ai);
    let bm = counts(b, &bi);
    #[derive(PartialEq, Eq, Clone, Copy)]
    enum Role {
        Source,
        Terminal,
        Internal,
    }
    let roles = |net: &SumNetwork, idx: &BTreeMap<String, usize>| -> Vec<Role> {
        let mut r = vec![Role::Internal; n];
        for s in &net.sources {
            if let Some(&i) = idx.get(s) {
                r[i] = Role::Source;
            }
        }
        for t in &net.terminals {
            if let Some(&i) = idx.get(t) {
                r[i] = Role::Terminal;
            }
        }
        r
    };
    let ar = roles(a, &ai);
    let br = roles(b, &bi);
    let deg = |m: &Vec<Vec<u32>>, v: usize| -> (u32, u32) {
        let outd = m[v].iter().sum();
        let ind = (0..n).map(|u| m[u][v]).sum();
        (ind, outd)
    };

    // Backtracking over node assignments, most-constrained (highest degree)
    // nodes first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| {
        let (i, o) = deg(&am, v);
        std::cmp::Reverse(i + o)
    });
    let deg_a: Vec<(u32, u32)> = (0..n).map(|v| deg(&am, v)).collect();
    let deg_b: Vec<(u32, u32)> = (0..n).map(|v| deg(&bm, v)).collect();
    {
        let mut da = deg_a.clone();
        let mut db = deg_b.clone();
        da.sort();
        db.sort();
        if da != db {
            return false;
        }
    }

    struct Matcher<'a> {
        order: &'a [usize],
        am: &'a [Vec<u32>],
        bm: &'a [Vec<u32>],
        ar: &'a [Role],
        br: &'a [Role],
        deg_a: &'a [(u32, u32)],
        deg_b: &'a [(u32, u32)],
        mapping: Vec<usize>,
        used: Vec<bool>,
    }

    impl Matcher<'_> {
        fn assign(&mut self, pos: usize) -> bool {
            if pos == self.order.len() {
                return true;
            }
            let v = self.order[pos];
            for w in 0..self.bm.len() {
                if self.used[w] || self.ar[v] != self.br[w] || self.deg_a[v] != self.deg_b[w] {
                    continue;
                }
                // Check consistency against already-mapped nodes.
                let ok = self.order[..pos].iter().all(|&u| {
                    let mu = self.mapping[u];
                    self.am[v][u] == self.bm[w][mu] && self.am[u][v] == self.bm[mu][w]
                });
                if !ok {
                    continue;
                }
                self.mapping[v] = w;
                self.used[w] = true;
                if self.assign(pos + 1) {
                    return true;
                }
                self.mapping[v] = usize::MAX;
                self.used[w] = false;
            }
            false
        }
    }

    let mut matcher = Matcher {
        order: &order,
        am: &am,
        bm: &bm,
        ar: &ar,
        br: &br,
        deg_a: &deg_a,
        deg_b: &deg_b,
        mapping: vec![usize::MAX; n],
        used: vec![false; n],
    };
    matcher.assign(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::oracles::min_cut_brute;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn validate_s3_ok() {
        assert!(catalog::s3().validate().is_empty());
    }

    #[test]
    fn validate_reports_role_violations() {
        let net = SumNetwork::new("bad", &["s", "t"], &[("t-s", "t", "s")], &["s"], &["t"]);
        let violations = net.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::SourceHasInEdge { .. })));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::TerminalHasOutEdge { .. })));
    }

    #[test]
    fn validate_reports_cycle() {
        let net = SumNetwork::new(
            "cyc",
            &["s", "a", "b", "t"],
            &[("s-a", "s", "a"), ("a-b", "a", "b"), ("b-a", "b", "a"), ("a-t", "a", "t")],
            &["s"],
            &["t"],
        );
        assert!(net.validate().contains(&Violation::Cycle));
    }

    #[test]
    fn topo_chain() {
        let net = catalog::chain();
        assert_eq!(net.topo_order().unwrap(), vec!["s-a".to_string(), "a-t".to_string()]);
    }

    #[test]
    fn topo_respects_precedence_on_s3() {
        let net = catalog::s3();
        let order = net.topo_order().unwrap();
        let pos = |id: &str| order.iter().position(|e| e == id).unwrap();
        assert!(pos("u1-v1") > pos("s1-u1"));
        assert!(pos("u1-v1") > pos("s3-u1"));
        for e in &net.edges {
            for f in net.in_edges_of(&e.tail) {
                assert!(pos(&e.id) > pos(&f.id), "{} must follow {}", e.id, f.id);
            }
        }
    }

    #[test]
    fn topo_parallel_edges_tie_by_id() {
        let net = SumNetwork::new(
            "par",
            &["s", "t"],
            &[("b", "s", "t"), ("a", "s", "t")],
            &["s"],
            &["t"],
        );
        assert_eq!(net.topo_order().unwrap(), vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn min_cut_s3_pairs() {
        let net = catalog::s3();
        for s in &net.sources {
            for t in &net.terminals {
                let expect = if s == "s3" && t == "t3" { 2 } else { 1 };
                assert_eq!(net.min_cut(s, t).unwrap(), expect, "pair ({s},{t})");
            }
        }
        assert_eq!(net.min_cut_bound().unwrap(), 1);
    }

    #[test]
    fn min_cut_s3_prime() {
        let net = catalog::s3_prime();
        assert_eq!(net.min_cut("s1", "t1").unwrap(), 3);
        assert_eq!(
            min_cut_brute(&net, "s1", "t1", 3),
            Some(3),
            "brute-force subsets of size <= 3 agree"
        );
        assert_eq!(net.min_cut_bound().unwrap(), 1);
    }

    #[test]
    fn min_cut_disconnected_pair_is_zero() {
        let net = SumNetwork::new(
            "disc",
            &["s1", "s2", "t"],
            &[("s1-t", "s1", "t")],
            &["s1", "s2"],
            &["t"],
        );
        assert_eq!(net.min_cut("s2", "t").unwrap(), 0);
        assert_eq!(net.min_cut_bound().unwrap(), 0);
    }

    #[test]
    fn min_cut_unknown_node_errors() {
        let net = catalog::chain();
        assert!(matches!(net.min_cut("nope", "t"), Err(NetError::UnknownNode(_))));
    }

    #[test]
    fn butterfly_bound_is_two() {
        assert_eq!(catalog::butterfly().min_cut_bound().unwrap(), 2);
    }

    #[test]
    fn reverse_is_involution() {
        for net in [catalog::s3(), catalog::butterfly(), catalog::diamond()] {
            assert_eq!(net.reverse_network().reverse_network(), net);
        }
    }

    #[test]
    fn reverse_swaps_roles_and_keeps_bound() {
        let net = catalog::s3();
        let rev = net.reverse_network();
        assert!(rev.is_valid());
        assert_eq!(rev.sources, net.terminals);
        assert_eq!(rev.terminals, net.sources);
        assert_eq!(rev.min_cut_bound().unwrap(), net.min_cut_bound().unwrap());
        let one_term = catalog::butterfly().reverse_network();
        assert_eq!(one_term.terminal_count(), 1);
    }

    #[test]
    fn surgery_builds_s3_prime() {
        let s3 = catalog::s3();
        let step = s3.subdivide_edge("s2-t1", "u3").unwrap();
        assert!(step.edge("s2-t1").is_none());
        assert!(step.edge("s2-u3").is_some() && step.edge("u3-t1").is_some());
        let mut built = step.add_edge("s1", "u3").unwrap().add_edge("s1", "t1").unwrap();
        assert!(built.is_valid());
        built.name = "s3-prime".into();
        assert_eq!(built, catalog::s3_prime());
    }

    #[test]
    fn add_edge_rejects_cycles_and_bad_roles() {
        let net = SumNetwork::new(
            "c",
            &["s", "a", "b", "t"],
            &[("s-a", "s", "a"), ("a-b", "a", "b"), ("b-t", "b", "t")],
            &["s"],
            &["t"],
        );
        assert!(matches!(net.add_edge("b", "a"), Err(NetError::CycleCreated)));
        assert!(matches!(net.add_edge("t", "a"), Err(NetError::TailIsTerminal(_))));
        assert!(matches!(net.add_edge("a", "s"), Err(NetError::HeadIsSource(_))));
    }

    #[test]
    fn add_edge_derives_unique_ids() {
        let net = catalog::diamond();
        let once = net.add_edge("s1", "a").unwrap();
        let twice = once.add_edge("s1", "a").unwrap();
        assert!(twice.edge("s1-a#2").is_some() || twice.edge("s1-a#3").is_some());
        assert!(twice.is_valid());
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let net = catalog::s3();
        let doc = net.to_canonical_json();
        let parsed = SumNetwork::from_json(&doc).unwrap();
        assert_eq!(parsed, net);
        assert_eq!(parsed.to_canonical_json(), doc);
    }

    #[test]
    fn json_rejects_unknown_fields() {
        let doc = r#"{"name":"x","nodes":["a"],"edges":[],"sources":[],"terminals":[],"bogus":1}"#;
        assert!(SumNetwork::from_json(doc).is_err());
    }

    fn random_dag(rng: &mut StdRng, max_nodes: usize) -> SumNetwork {
        let n = rng.gen_range(3..=max_nodes);
        let nodes: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.35) {
                    edges.push((format!("n{i}-n{j}"), i, j));
                }
            }
        }
        SumNetwork {
            name: "rand".into(),
            nodes: nodes.clone(),
            edges: edges
                .into_iter()
                .map(|(id, t, h)| Edge { id, tail: nodes[t].clone(), head: nodes[h].clone() })
                .collect(),
            sources: vec![nodes[0].clone()],
            terminals: vec![nodes[n - 1].clone()],
        }
    }

    #[test]
    fn min_cut_symmetric_under_reversal() {
        let mut rng = StdRng::seed_from_u64(2024);
        for _ in 0..60 {
            let net = random_dag(&mut rng, 12);
            let rev = net.reverse_network();
            let fwd = net.min_cut(&net.sources[0], &net.terminals[0]).unwrap();
            let bwd = rev.min_cut(&net.terminals[0], &net.sources[0]).unwrap();
            assert_eq!(fwd, bwd);
        }
    }

    #[test]
    fn min_cut_matches_brute_force_on_small_dags() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 50 {
            let net = random_dag(&mut rng, 7);
            if net.edges.len() > 10 {
                continue;
            }
            checked += 1;
            let mc = net.min_cut(&net.sources[0], &net.terminals[0]).unwrap();
            let brute = min_cut_brute(&net, &net.sources[0], &net.terminals[0], 4);
            if mc <= 4 {
                assert_eq!(brute, Some(mc));
            } else {
                assert_eq!(brute, None);
            }
        }
    }

    #[test]
    fn isomorphic_under_relabeling() {
        let s3 = catalog::s3();
        let mut relabeled = s3.clone();
        let rename = |s: &str| format!("x_{s}");
        relabeled.nodes = relabeled.nodes.iter().map(|n| rename(n)).collect();
        relabeled.sources = relabeled.sources.iter().map(|n| rename(n)).collect();
        relabeled.terminals = relabeled.terminals.iter().map(|n| rename(n)).collect();
        for e in relabeled.edges.iter_mut() {
            e.tail = rename(&e.tail);
            e.head = rename(&e.head);
        }
        relabeled.nodes.reverse();
        assert!(isomorphic(&s3, &relabeled));
        assert!(!isomorphic(&s3, &catalog::s3_prime()));
        assert!(!isomorphic(&s3, &catalog::bipartite(3, 3)));
    }

    #[test]
    fn s3_is_isomorphic_to_its_reverse() {
        let s3 = catalog::s3();
        assert!(isomorphic(&s3, &s3.reverse_network()));
    }
}
