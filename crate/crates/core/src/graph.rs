//! Edge-labeled multigraphs `(G, α)` over `Z_m`.
//!
//! Vertices are stored in a fixed insertion order; that order is the
//! coordinate order of every spline on the graph. Loops and parallel edges
//! are allowed.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Result, SplineError};
use crate::ring::{Modulus, ZmIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabeledEdge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub label: ZmIdeal,
}

impl LabeledEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `w`.
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug)]
pub struct LabeledGraph {
    modulus: Modulus,
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<LabeledEdge>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.names == other.names && self.edges == other.edges
    }
}

impl Eq for LabeledGraph {}

/// A rooted spanning forest discovered by depth-first search.
#[derive(Clone, Debug)]
pub struct DfsForest {
    /// Vertices in preorder.
    pub order: Vec<usize>,
    /// `(parent, edge id)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
}

impl DfsForest {
    pub fn tree_edges(&self) -> Vec<usize> {
        self.order
            .iter()
            .filter_map(|&v| self.parent[v].map(|(_, e)| e))
            .collect()
    }

    pub fn roots(&self) -> usize {
        self.parent.iter().filter(|p| p.is_none()).count()
    }
}

impl LabeledGraph {
    pub fn new<S: AsRef<str>>(modulus: Modulus, names: &[S]) -> Result<Self> {
        let mut g = LabeledGraph {
            modulus,
            names: Vec::with_capacity(names.len()),
            index: HashMap::with_capacity(names.len()),
            edges: Vec::new(),
        };
        for n in names {
            g.push_vertex(n.as_ref())?;
        }
        Ok(g)
    }

    /// Builds a graph from vertex names and `(id, u, v, label)` edges given by index.
    pub fn from_parts(
        modulus: Modulus,
        names: Vec<String>,
        edges: impl IntoIterator<Item = LabeledEdge>,
    ) -> Result<Self> {
        let mut g = LabeledGraph::new(modulus, &names)?;
        for e in edges {
            g.insert_edge(e)?;
        }
        Ok(g)
    }

    fn push_vertex(&mut self, name: &str) -> Result<usize> {
        if name.is_empty() {
            return Err(SplineError::EmptyVertexName);
        }
        if self.index.contains_key(name) {
            return Err(SplineError::DuplicateVertex(name.to_string()));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        self.push_vertex(name)
    }

    fn insert_edge(&mut self, e: LabeledEdge) -> Result<()> {
        self.modulus.check(e.label.modulus())?;
        let n = self.names.len();
        for w in [e.u, e.v] {
            if w >= n {
                return Err(SplineError::UnknownVertex(format!("#{w}")));
            }
        }
        if self.edges.iter().any(|f| f.id == e.id) {
            return Err(SplineError::DuplicateEdge(e.id));
        }
        self.edges.push(e);
        Ok(())
    }

    /// Adds an edge between named vertices; returns the new edge id.
    pub fn add_edge(&mut self, u: &str, v: &str, label: ZmIdeal) -> Result<usize> {
        let (u, v) = (self.vertex(u)?, self.vertex(v)?);
        self.add_edge_by_index(u, v, label)
    }

    pub fn add_edge_by_index(&mut self, u: usize, v: usize, label: ZmIdeal) -> Result<usize> {
        let id = self.edges.iter().map(|e| e.id + 1).max().unwrap_or(0);
        self.insert_edge(LabeledEdge { id, u, v, label })?;
        Ok(id)
    }

    /// Adds an edge whose label is given by its divisor generator (0 for the zero ideal).
    pub fn add_divisor_edge(&mut self, u: &str, v: &str, d: u64) -> Result<usize> {
        let label = ZmIdeal::from_divisor(d, self.modulus)?;
        self.add_edge(u, v, label)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| SplineError::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&LabeledEdge> {
        self.edges
            .iter()
            .find(|e| e.id == id)
            .ok_or(SplineError::UnknownEdge(id))
    }

    /// Incident edges per vertex, each list sorted by edge id. Loops appear once.
    pub fn adjacency(&self) -> Vec<Vec<LabeledEdge>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for e in &self.edges {
            adj[e.u].push(*e);
            if !e.is_loop() {
                adj[e.v].push(*e);
            }
        }
        for list in &mut adj {
            list.sort_by_key(|e| e.id);
        }
        adj
    }

    /// Depth-first spanning forest over the edges accepted by `keep`, rooted at
    /// the smallest unvisited vertex and following edges in id order.
    pub fn dfs_forest(&self, keep: impl Fn(&LabeledEdge) -> bool) -> DfsForest {
        let adj = self.adjacency();
        let n = self.names.len();
        let mut seen = vec![false; n];
        let mut parent = vec![None; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            order.push(root);
            let mut stack = vec![(root, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, next) = *top;
                if next == adj[v].len() {
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                let e = adj[v][next];
                if !keep(&e) {
                    continue;
                }
                let w = e.other(v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e.id));
                    order.push(w);
                    stack.push((w, 0));
                }
            }
        }
        DfsForest { order, parent }
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let forest = self.dfs_forest(|_| true);
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for &v in &forest.order {
            if forest.parent[v].is_none() {
                comps.push(vec![v]);
            } else if let Some(last) = comps.last_mut() {
                last.push(v);
            }
        }
        for c in &mut comps {
            c.sort_unstable();
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.dfs_forest(|_| true).roots()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.names.len().max(1)
    }

    /// Ids of all bridges, in increasing order (lowlink search; parallel edges
    /// are distinguished by id, loops are never bridges).
    pub fn bridges(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let n = self.names.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            // (vertex, edge id used to enter it, next adjacency index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let e = adj[v][*next];
                    *next += 1;
                    if e.id == via || e.is_loop() {
                        continue;
                    }
                    let w = e.other(v);
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e.id, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(via);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridge(&self, id: usize) -> Result<bool> {
        let e = self.edge(id)?;
        if e.is_loop() {
            return Ok(false);
        }
        Ok(self.bridges().binary_search(&id).is_ok())
    }

    pub fn without_edge(&self, id: usize) -> Result<LabeledGraph> {
        self.edge(id)?;
        let mut g = self.clone();
        g.edges.retain(|e| e.id != id);
        Ok(g)
    }

    /// Same vertices, keeping exactly the edges whose label is contained in `ideal`.
    pub fn label_subgraph(&self, ideal: ZmIdeal) -> Result<LabeledGraph> {
        self.modulus.check(ideal.modulus())?;
        let mut g = self.clone();
        g.edges.retain(|e| e.label.generator() % ideal.generator() == 0);
        Ok(g)
    }

    /// A spanning tree all of whose labels lie in `ideal`, if one exists.
    ///
    /// The witness is the DFS tree from vertex 0 following edges in id order.
    pub fn spanning_tree_within(&self, ideal: ZmIdeal) -> Result<Option<Vec<usize>>> {
        self.modulus.check(ideal.modulus())?;
        let d = ideal.generator();
        let forest = self.dfs_forest(|e| e.label.generator() % d == 0);
        if forest.roots() > 1 {
            return Ok(None);
        }
        Ok(Some(forest.tree_edges()))
    }

    pub fn has_spanning_connected_subgraph(&self, ideal: ZmIdeal) -> Result<bool> {
        Ok(self.spanning_tree_within(ideal)?.is_some())
    }

    /// The subgraph induced on `vertices` (kept in the given order), with edge
    /// ids preserved.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> LabeledGraph {
        let mut local = vec![usize::MAX; self.names.len()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect::<Vec<_>>();
        let edges = self
            .edges
            .iter()
            .filter(|e| local[e.u] != usize::MAX && local[e.v] != usize::MAX)
            .map(|e| LabeledEdge { u: local[e.u], v: local[e.v], ..*e });
        LabeledGraph::from_parts(self.modulus, names, edges).expect("induced subgraph is valid")
    }

    /// Keeps all vertices and only the edges whose ids are listed.
    pub fn edge_subgraph(&self, ids: &[usize]) -> Result<LabeledGraph> {
        for &id in ids {
            self.edge(id)?;
        }
        let mut g = self.clone();
        g.edges.retain(|e| ids.contains(&e.id));
        Ok(g)
    }

    /// Replaces every label by `f(label)`, possibly over a different modulus.
    pub fn map_labels(
        &self,
        modulus: Modulus,
        f: impl Fn(ZmIdeal) -> ZmIdeal,
    ) -> Result<LabeledGraph> {
        let edges = self.edges.iter().map(|e| LabeledEdge { label: f(e.label), ..*e });
        LabeledGraph::from_parts(modulus, self.names.clone(), edges)
    }

    /// Sets every label to the ideal generated by the divisor `f(edge)`.
    pub fn relabel(&self, f: impl Fn(&LabeledEdge) -> u64) -> Result<LabeledGraph> {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.label = ZmIdeal::from_divisor(f(e), self.modulus)?;
        }
        Ok(g)
    }

    pub fn with_label(&self, id: usize, label: ZmIdeal) -> Result<LabeledGraph> {
        self.modulus.check(label.modulus())?;
        let mut g = self.clone();
        let e = g
            .edges
            .iter_mut()
            .find(|e| e.id == id)
            .ok_or(SplineError::UnknownEdge(id))?;
        e.label = label;
        Ok(g)
    }

    /// Graphviz rendering with `label="(d)"` on every edge.
    pub fn to_dot(&self) -> String {
        self.to_dot_with_positions(None)
    }

    pub fn to_dot_with_positions(&self, positions: Option<&[(f64, f64)]>) -> String {
        let mut s = String::from("graph G {\n");
        for (i, n) in self.names.iter().enumerate() {
            match positions {
                Some(p) => {
                    let _ = writeln!(s, "  \"{n}\" [pos=\"{:.4},{:.4}!\"];", p[i].0, p[i].1);
                }
                None => {
                    let _ = writeln!(s, "  \"{n}\";");
                }
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -- \"{}\" [label=\"{}\"];",
                self.names[e.u], self.names[e.v], e.label
            );
        }
        s.push_str("}\n");
        s
    }
}
