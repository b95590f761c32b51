use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};
use crate::geometry::BoxId;

/// Color index per box. Properness is checked separately by [`verify_coloring`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    colors: BTreeMap<BoxId, usize>,
}

impl Coloring {
    pub fn new() -> Self {
        Coloring::default()
    }

    /// Builds a coloring from per-index colors of `g`.
    pub fn from_indices(g: &ConflictGraph, colors: &[usize]) -> Self {
        Coloring {
            colors: colors
                .iter()
                .enumerate()
                .map(|(v, &c)| (g.id(v).clone(), c))
                .collect(),
        }
    }

    pub fn set(&mut self, id: BoxId, color: usize) {
        self.colors.insert(id, color);
    }

    pub fn get(&self, id: &BoxId) -> Option<usize> {
        self.colors.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BoxId, usize)> {
        self.colors.iter().map(|(k, &v)| (k, v))
    }

    /// One more than the largest color index; 0 for the empty coloring.
    pub fn palette_size(&self) -> usize {
        self.colors.values().max().map_or(0, |m| m + 1)
    }

    pub fn distinct_colors(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    /// Colors of `g`'s vertices in canonical order.
    pub fn to_indices(&self, g: &ConflictGraph) -> Result<Vec<usize>> {
        g.vertices()
            .iter()
            .map(|id| self.get(id).ok_or_else(|| Error::MissingVertex(id.0.clone())))
            .collect()
    }

    /// Set of colors used on `ids`.
    pub fn colors_on<'a>(&self, ids: impl IntoIterator<Item = &'a BoxId>) -> Result<BTreeSet<usize>> {
        ids.into_iter()
            .map(|id| self.get(id).ok_or_else(|| Error::MissingVertex(id.0.clone())))
            .collect()
    }

    /// Adds `offset` to every color.
    pub fn shifted(&self, offset: usize) -> Coloring {
        Coloring {
            colors: self.colors.iter().map(|(k, &c)| (k.clone(), c + offset)).collect(),
        }
    }

    pub fn merge(&mut self, other: Coloring) {
        self.colors.extend(other.colors);
    }

    pub fn to_json(&self, graph_hash: &str) -> String {
        serde_json::to_string_pretty(&ColoringFile {
            graph_hash: graph_hash.to_owned(),
            colors: self.clone(),
        })
        .expect("coloring serializes")
    }

    pub fn from_json(text: &str) -> Result<ColoringFile> {
        Ok(serde_json::from_str(text)?)
    }
}

impl FromIterator<(BoxId, usize)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (BoxId, usize)>>(iter: I) -> Self {
        Coloring {
            colors: iter.into_iter().collect(),
        }
    }
}

/// On-disk coloring: `{"graph_hash": ..., "colors": {"id": color}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub graph_hash: String,
    pub colors: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringCheck {
    Proper,
    /// First monochromatic edge in canonical order.
    Conflict(BoxId, BoxId),
}

impl ColoringCheck {
    pub fn is_proper(&self) -> bool {
        matches!(self, ColoringCheck::Proper)
    }
}

pub fn verify_coloring(g: &ConflictGraph, c: &Coloring) -> Result<ColoringCheck> {
    let colors = c.to_indices(g)?;
    Ok(g.edges()
        .find(|&(u, v)| colors[u] == colors[v])
        .map_or(ColoringCheck::Proper, |(u, v)| {
            ColoringCheck::Conflict(g.id(u).clone(), g.id(v).clone())
        }))
}

/// Colors vertices in reverse degeneracy order with the smallest free color.
pub fn greedy_degeneracy_coloring(g: &ConflictGraph) -> Coloring {
    let order = g.degeneracy().order;
    let mut colors = vec![usize::MAX; g.len()];
    for &v in order.iter().rev() {
        colors[v] = smallest_free(g, v, &colors);
    }
    Coloring::from_indices(g, &colors)
}

pub(crate) fn smallest_free(g: &ConflictGraph, v: usize, colors: &[usize]) -> usize {
    let taken: BTreeSet<usize> = g
        .neighbors(v)
        .iter()
        .map(|&w| colors[w])
        .filter(|&c| c != usize::MAX)
        .collect();
    (0..).find(|c| !taken.contains(c)).expect("unbounded range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> ConflictGraph {
        let name = |i: usize| BoxId(format!("v{i}"));
        ConflictGraph::from_edges(
            (0..n).map(name),
            edges.iter().map(|&(a, b)| (name(a), name(b))).collect::<Vec<_>>(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_is_proper() {
        let g = graph(1, &[]);
        let c = Coloring::from_indices(&g, &[0]);
        assert!(verify_coloring(&g, &c).unwrap().is_proper());
    }

    #[test]
    fn monochromatic_edge_is_reported() {
        let g = graph(2, &[(0, 1)]);
        let c = Coloring::from_indices(&g, &[0, 0]);
        assert_eq!(
            verify_coloring(&g, &c).unwrap(),
            ColoringCheck::Conflict("v0".into(), "v1".into())
        );
    }

    #[test]
    fn partial_coloring_is_missing_vertex() {
        let g = graph(2, &[(0, 1)]);
        let c: Coloring = [(BoxId::from("v0"), 0)].into_iter().collect();
        assert!(matches!(verify_coloring(&g, &c), Err(Error::MissingVertex(_))));
    }

    #[test]
    fn greedy_on_path_and_empty() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(greedy_degeneracy_coloring(&path).palette_size(), 2);
        assert_eq!(greedy_degeneracy_coloring(&graph(0, &[])).palette_size(), 0);
    }

    #[test]
    fn coloring_json_shape() {
        let g = graph(2, &[(0, 1)]);
        let c = Coloring::from_indices(&g, &[0, 1]);
        let text = c.to_json("abc");
        let back = Coloring::from_json(&text).unwrap();
        assert_eq!(back.graph_hash, "abc");
        assert_eq!(back.colors, c);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["colors"]["v1"], 1);
    }
}
