//! Conflict graphs: one vertex per box, one edge per face contact.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{contact, Arrangement, BoxId};
use crate::hash::sha256_hex;
use crate::limits::{Budget, SearchLimits};

/// Square adjacency bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            words,
            bits: vec![0; words * n],
        }
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }
}

/// Undirected simple graph over box ids. Vertices are kept in id order;
/// that order is the canonical vertex index used everywhere else.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    vertices: Vec<BoxId>,
    index: HashMap<BoxId, usize>,
    adj: Vec<Vec<usize>>,
    matrix: BitMatrix,
    source_hash: Option<String>,
}

impl PartialEq for ConflictGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adj == other.adj
    }
}

impl Eq for ConflictGraph {}

/// Builds the conflict graph of a valid arrangement.
pub fn build_graph(arr: &Arrangement) -> Result<ConflictGraph> {
    arr.ensure_valid()?;
    let mut pairs = Vec::new();
    let mut failure = None;
    arr.for_each_candidate_pair(|i, j| match contact(&arr.boxes[i], &arr.boxes[j]) {
        Ok(true) => pairs.push((arr.boxes[i].id.clone(), arr.boxes[j].id.clone())),
        Ok(false) => {}
        Err(e) => {
            failure.get_or_insert(e);
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    ConflictGraph::from_edges(
        arr.boxes.iter().map(|b| b.id.clone()),
        pairs,
        Some(arr.content_hash()),
    )
}

/// Outcome of the minimum-degree elimination process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneracy {
    pub value: usize,
    /// Vertex indices in removal order.
    pub order: Vec<usize>,
}

impl ConflictGraph {
    pub fn from_edges<I, E>(vertices: I, edges: E, source_hash: Option<String>) -> Result<Self>
    where
        I: IntoIterator<Item = BoxId>,
        E: IntoIterator<Item = (BoxId, BoxId)>,
    {
        let mut vertices: Vec<BoxId> = vertices.into_iter().collect();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArrangement(format!("duplicate vertex `{}`", w[0])));
        }
        let index: HashMap<BoxId, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let n = vertices.len();
        let mut matrix = BitMatrix::new(n);
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            let u = *index.get(&a).ok_or_else(|| Error::UnknownVertex(a.0.clone()))?;
            let v = *index.get(&b).ok_or_else(|| Error::UnknownVertex(b.0.clone()))?;
            if u == v {
                return Err(Error::InvalidArrangement(format!("self-loop at `{a}`")));
            }
            if !matrix.get(u, v) {
                matrix.set(u, v);
                matrix.set(v, u);
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(ConflictGraph {
            vertices,
            index,
            adj,
            matrix,
            source_hash,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[BoxId] {
        &self.vertices
    }

    pub fn id(&self, v: usize) -> &BoxId {
        &self.vertices[v]
    }

    pub fn index_of(&self, id: &BoxId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn indices_of<'a>(&self, ids: impl IntoIterator<Item = &'a BoxId>) -> Result<Vec<usize>> {
        ids.into_iter()
            .map(|id| self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.0.clone())))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix.get(u, v)
    }

    pub fn has_edge_ids(&self, a: &BoxId, b: &BoxId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(u), Some(v)) => self.has_edge(u, v),
            _ => false,
        }
    }

    pub fn source_hash(&self) -> Option<&str> {
        self.source_hash.as_deref()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edge_ids(&self) -> Vec<(BoxId, BoxId)> {
        self.edges()
            .map(|(u, v)| (self.vertices[u].clone(), self.vertices[v].clone()))
            .collect()
    }

    /// Subgraph induced by the given vertex indices (ids keep their names).
    pub fn induced(&self, keep: &[usize]) -> ConflictGraph {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let edges = self
            .edges()
            .filter(|(u, v)| set.contains(u) && set.contains(v))
            .map(|(u, v)| (self.vertices[u].clone(), self.vertices[v].clone()));
        ConflictGraph::from_edges(
            set.iter().map(|&v| self.vertices[v].clone()),
            edges.collect::<Vec<_>>(),
            self.source_hash.clone(),
        )
        .expect("induced subgraph of a valid graph")
    }

    pub fn induced_ids<'a>(&self, ids: impl IntoIterator<Item = &'a BoxId>) -> Result<ConflictGraph> {
        Ok(self.induced(&self.indices_of(ids)?))
    }

    /// Copy of the graph with the listed edges removed.
    pub fn without_edges(&self, drop: &[(BoxId, BoxId)]) -> ConflictGraph {
        let dropped: BTreeSet<(BoxId, BoxId)> = drop
            .iter()
            .flat_map(|(a, b)| [(a.clone(), b.clone()), (b.clone(), a.clone())])
            .collect();
        let edges = self
            .edge_ids()
            .into_iter()
            .filter(|e| !dropped.contains(e));
        ConflictGraph::from_edges(self.vertices.clone(), edges.collect::<Vec<_>>(), None)
            .expect("edge subset of a valid graph")
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Repeatedly removes a vertex of minimum remaining degree (smallest index
    /// on ties); the degeneracy is the largest degree seen at removal.
    pub fn degeneracy(&self) -> Degeneracy {
        let n = self.len();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut value = 0;
        while let Some((d, v)) = queue.pop_first() {
            value = value.max(d);
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        Degeneracy { value, order }
    }

    /// Exact maximum clique (vertex indices, sorted).
    pub fn max_clique(&self, limits: SearchLimits) -> Result<Vec<usize>> {
        self.max_clique_in(&mut Budget::new(limits))
    }

    pub(crate) fn max_clique_in(&self, budget: &mut Budget) -> Result<Vec<usize>> {
        let mut best = Vec::new();
        let mut current = Vec::new();
        // Non-increasing degree order tends to find large cliques early.
        let mut candidates: Vec<usize> = (0..self.len()).collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        self.expand_clique(&mut current, candidates, &mut best, budget)?;
        best.sort_unstable();
        Ok(best)
    }

    pub fn clique_number(&self, limits: SearchLimits) -> Result<usize> {
        Ok(self.max_clique(limits)?.len())
    }

    fn expand_clique(
        &self,
        current: &mut Vec<usize>,
        candidates: Vec<usize>,
        best: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        let (order, bounds) = self.color_bound(&candidates);
        for idx in (0..order.len()).rev() {
            if current.len() + bounds[idx] <= best.len() {
                return Ok(());
            }
            let v = order[idx];
            current.push(v);
            let next: Vec<usize> = order[..idx]
                .iter()
                .copied()
                .filter(|&w| self.has_edge(v, w))
                .collect();
            if next.is_empty() {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand_clique(current, next, best, budget)?;
            }
            current.pop();
        }
        Ok(())
    }

    /// Greedy sequential coloring of the candidates; returns the vertices
    /// grouped by color class and, for each position, the color count so far.
    fn color_bound(&self, candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in candidates {
            match classes
                .iter_mut()
                .find(|class| class.iter().all(|&w| !self.has_edge(v, w)))
            {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut order = Vec::with_capacity(candidates.len());
        let mut bounds = Vec::with_capacity(candidates.len());
        for (k, class) in classes.into_iter().enumerate() {
            for v in class {
                order.push(v);
                bounds.push(k + 1);
            }
        }
        (order, bounds)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph conflict {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.vertices[u], self.vertices[v]);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_edges_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_edges_json(text: &str) -> Result<ConflictGraph> {
        Ok(serde_json::from_str(text)?)
    }

    /// Hash of the vertex list and edge list only.
    pub fn content_hash(&self) -> String {
        let body = serde_json::to_string(&(self.vertices(), self.edge_ids())).expect("serializes");
        sha256_hex(body.as_bytes())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    source_hash: Option<String>,
    vertices: Vec<BoxId>,
    edges: Vec<(BoxId, BoxId)>,
}

impl Serialize for ConflictGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            source_hash: self.source_hash.clone(),
            vertices: self.vertices.clone(),
            edges: self.edge_ids(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConflictGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        ConflictGraph::from_edges(repr.vertices, repr.edges, repr.source_hash)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Cuboid;

    fn graph(n: usize, edges: &[(usize, usize)]) -> ConflictGraph {
        let name = |i: usize| BoxId(format!("v{i:02}"));
        ConflictGraph::from_edges(
            (0..n).map(name),
            edges.iter().map(|&(a, b)| (name(a), name(b))).collect::<Vec<_>>(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn distant_boxes_have_no_edge() {
        let arr = Arrangement::new(
            1,
            None,
            vec![
                Cuboid::new("a", [0, 1], [0, 1], [0, 1]),
                Cuboid::new("b", [6, 7], [0, 1], [0, 1]),
            ],
        );
        let g = build_graph(&arr).unwrap();
        assert_eq!((g.len(), g.edge_count()), (2, 0));
    }

    #[test]
    fn k4_from_three_flat_boxes_and_a_lid() {
        let arr = Arrangement::new(
            1,
            Some(2),
            vec![
                Cuboid::new("a", [0, 4], [0, 2], [0, 1]),
                Cuboid::new("b", [0, 2], [2, 4], [0, 1]),
                Cuboid::new("c", [2, 4], [2, 4], [0, 1]),
                Cuboid::new("lid", [0, 4], [0, 4], [1, 2]),
            ],
        );
        let g = build_graph(&arr).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.clique_number(SearchLimits::UNLIMITED).unwrap(), 4);
    }

    #[test]
    fn degeneracy_of_small_graphs() {
        assert_eq!(graph(0, &[]).degeneracy().value, 0);
        let path = graph(3, &[(0, 1), (1, 2)]);
        let d = path.degeneracy();
        assert_eq!(d.value, 1);
        assert_eq!(d.order, vec![0, 1, 2]);
    }

    #[test]
    fn single_vertex_clique() {
        assert_eq!(graph(1, &[]).clique_number(SearchLimits::UNLIMITED).unwrap(), 1);
        assert_eq!(graph(0, &[]).clique_number(SearchLimits::UNLIMITED).unwrap(), 0);
    }

    #[test]
    fn clique_search_honors_budget() {
        let edges: Vec<(usize, usize)> = (0..12)
            .flat_map(|a| (a + 1..12).map(move |b| (a, b)))
            .filter(|(a, b)| (a + b) % 3 != 0)
            .collect();
        let g = graph(12, &edges);
        let err = g.max_clique(SearchLimits::with_max_nodes(1)).unwrap_err();
        assert!(matches!(err, Error::Timeout(_)));
    }

    #[test]
    fn empty_graph_dot_has_empty_body() {
        assert_eq!(graph(0, &[]).to_dot(), "graph conflict {\n}\n");
    }

    #[test]
    fn components_split_on_gaps() {
        let g = graph(5, &[(0, 1), (3, 4)]);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }

    #[test]
    fn edges_json_round_trips() {
        let g = graph(4, &[(0, 1), (2, 3), (1, 2)]);
        let back = ConflictGraph::from_edges_json(&g.to_edges_json()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.content_hash(), g.content_hash());
    }

    #[test]
    fn self_loop_rejected() {
        let err = ConflictGraph::from_edges(
            vec![BoxId::from("a")],
            vec![(BoxId::from("a"), BoxId::from("a"))],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidArrangement(_)));
    }
}
