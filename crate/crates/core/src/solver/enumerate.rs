//! Enumeration of proper colorings up to renaming of colors.
//!
//! Colorings are produced as restricted growth strings over the canonical
//! vertex order: vertex `i` may take any color already used by vertices
//! `0..i` or the next fresh one. Each partition of the vertices into
//! independent sets appears exactly once.

use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Iterator over canonical proper colorings, as per-index color vectors.
pub struct ProperColorings<'g> {
    g: &'g ConflictGraph,
    colors: Vec<Option<usize>>,
    /// `used[i]` is the number of colors among vertices `0..i`.
    used: Vec<usize>,
    cursor: usize,
    started: bool,
    done: bool,
}

pub fn enumerate_proper_colorings(g: &ConflictGraph, cap: usize) -> Result<ProperColorings<'_>> {
    if g.len() > cap {
        return Err(Error::SizeLimit { size: g.len(), cap });
    }
    Ok(ProperColorings {
        g,
        colors: vec![None; g.len()],
        used: vec![0; g.len() + 1],
        cursor: 0,
        started: false,
        done: false,
    })
}

impl ProperColorings<'_> {
    fn fits(&self, v: usize, c: usize) -> bool {
        self.g
            .neighbors(v)
            .iter()
            .take_while(|&&w| w < v)
            .all(|&w| self.colors[w] != Some(c))
    }
}

impl Iterator for ProperColorings<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let n = self.g.len();
        if n == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        if self.started {
            self.cursor = n - 1;
        } else {
            self.started = true;
        }
        loop {
            let i = self.cursor;
            let first = self.colors[i].map_or(0, |c| c + 1);
            let fresh = self.used[i];
            match (first..=fresh).find(|&c| self.fits(i, c)) {
                Some(c) => {
                    self.colors[i] = Some(c);
                    self.used[i + 1] = fresh.max(c + 1);
                    if i + 1 == n {
                        return Some(self.colors.iter().map(|c| c.expect("assigned")).collect());
                    }
                    self.cursor += 1;
                    self.colors[self.cursor] = None;
                }
                None => {
                    self.colors[i] = None;
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    self.cursor -= 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BoxId;

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
    fn single_vertex_has_one_coloring() {
        let g = graph(1, &[]);
        let all: Vec<_> = enumerate_proper_colorings(&g, 12).unwrap().collect();
        assert_eq!(all, vec![vec![0]]);
    }

    #[test]
    fn triangle_has_one_canonical_coloring() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let all: Vec<_> = enumerate_proper_colorings(&g, 12).unwrap().collect();
        assert_eq!(all, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn edgeless_graph_gives_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            let g = graph(n, &[]);
            assert_eq!(enumerate_proper_colorings(&g, 12).unwrap().count(), b);
        }
    }

    #[test]
    fn oversized_graph_is_refused() {
        let g = graph(13, &[]);
        assert!(matches!(
            enumerate_proper_colorings(&g, 12),
            Err(Error::SizeLimit { size: 13, cap: 12 })
        ));
    }
}
