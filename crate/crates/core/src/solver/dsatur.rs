//! Exact k-colorability by DSATUR branch-and-bound.
//!
//! Each connected component is solved on its own. A maximum clique is
//! pre-colored `0..q`, and a vertex may only open the next unused color, so
//! color renamings are never explored twice.

use rayon::prelude::*;

use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};
use crate::limits::{Budget, SearchLimits, SearchStats};

use super::coloring::{greedy_degeneracy_coloring, verify_coloring, Coloring};

const UNCOLORED: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat(Coloring),
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Verdict::Sat(c) => Some(c),
            Verdict::Unsat => None,
        }
    }
}

pub fn k_colorable(g: &ConflictGraph, k: usize, limits: SearchLimits) -> Result<Verdict> {
    k_colorable_with_stats(g, k, limits).map(|(v, _)| v)
}

pub fn k_colorable_with_stats(
    g: &ConflictGraph,
    k: usize,
    limits: SearchLimits,
) -> Result<(Verdict, SearchStats)> {
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    let mut budget = Budget::new(limits);
    let mut colors = vec![UNCOLORED; g.len()];
    for comp in g.components() {
        let sub = g.induced(&comp);
        match color_component(&sub, k, &mut budget)? {
            Some(local) => {
                for (i, &v) in comp.iter().enumerate() {
                    colors[v] = local[i];
                }
            }
            None => return Ok((Verdict::Unsat, budget.finish())),
        }
    }
    let coloring = Coloring::from_indices(g, &colors);
    debug_assert!(verify_coloring(g, &coloring)?.is_proper());
    Ok((Verdict::Sat(coloring), budget.finish()))
}

/// [`k_colorable`] with components solved concurrently on `jobs` workers.
///
/// Each component gets its own budget of `limits`. The result does not
/// depend on `jobs`.
pub fn k_colorable_par(g: &ConflictGraph, k: usize, limits: SearchLimits, jobs: usize) -> Result<Verdict> {
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    let comps = g.components();
    let solve = |comp: &Vec<usize>| color_component(&g.induced(comp), k, &mut Budget::new(limits));
    let results: Vec<Option<Vec<usize>>> = if jobs <= 1 {
        comps.iter().map(solve).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
        pool.install(|| comps.par_iter().map(solve).collect::<Result<_>>())?
    };
    let mut colors = vec![UNCOLORED; g.len()];
    for (comp, local) in comps.iter().zip(results) {
        let Some(local) = local else {
            return Ok(Verdict::Unsat);
        };
        for (i, &v) in comp.iter().enumerate() {
            colors[v] = local[i];
        }
    }
    Ok(Verdict::Sat(Coloring::from_indices(g, &colors)))
}

/// Exact chromatic number with a witness coloring.
pub fn chromatic_number(g: &ConflictGraph, limits: SearchLimits) -> Result<(usize, Coloring)> {
    let mut budget = Budget::new(limits);
    let mut colors = vec![0; g.len()];
    let mut chi = 0;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let (k, local) = component_chromatic(&sub, &mut budget)?;
        chi = chi.max(k);
        for (i, &v) in comp.iter().enumerate() {
            colors[v] = local[i];
        }
    }
    Ok((chi, Coloring::from_indices(g, &colors)))
}

fn component_chromatic(g: &ConflictGraph, budget: &mut Budget) -> Result<(usize, Vec<usize>)> {
    let greedy = greedy_degeneracy_coloring(g);
    let upper = greedy.palette_size();
    let lower = clique_seed(g, budget)?.len();
    for k in lower..upper {
        if let Some(colors) = color_component(g, k, budget)? {
            return Ok((k, colors));
        }
    }
    Ok((upper, greedy.to_indices(g)?))
}

fn clique_seed(g: &ConflictGraph, budget: &mut Budget) -> Result<Vec<usize>> {
    g.max_clique_in(budget)
}

fn color_component(g: &ConflictGraph, k: usize, budget: &mut Budget) -> Result<Option<Vec<usize>>> {
    if g.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let clique = clique_seed(g, budget)?;
    if clique.len() > k {
        return Ok(None);
    }
    let mut search = Dsatur::new(g, k);
    for (c, &v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    if search.solve(budget)? {
        Ok(Some(search.colors))
    } else {
        Ok(None)
    }
}

struct Dsatur<'g> {
    g: &'g ConflictGraph,
    k: usize,
    colors: Vec<usize>,
    /// `neighbor_colors[v * k + c]` counts neighbors of `v` colored `c`.
    neighbor_colors: Vec<u32>,
    saturation: Vec<usize>,
    uncolored_degree: Vec<usize>,
    used: usize,
    remaining: usize,
}

impl<'g> Dsatur<'g> {
    fn new(g: &'g ConflictGraph, k: usize) -> Self {
        let n = g.len();
        Dsatur {
            g,
            k,
            colors: vec![UNCOLORED; n],
            neighbor_colors: vec![0; n * k],
            saturation: vec![0; n],
            uncolored_degree: (0..n).map(|v| g.degree(v)).collect(),
            used: 0,
            remaining: n,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        self.used = self.used.max(c + 1);
        self.remaining -= 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.neighbor_colors[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
            self.uncolored_degree[w] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, used_before: usize) {
        let c = self.colors[v];
        self.colors[v] = UNCOLORED;
        self.used = used_before;
        self.remaining += 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.neighbor_colors[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
            self.uncolored_degree[w] += 1;
        }
    }

    fn select(&self) -> usize {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == UNCOLORED)
            .max_by_key(|&v| (self.saturation[v], self.uncolored_degree[v], std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains")
    }

    fn solve(&mut self, budget: &mut Budget) -> Result<bool> {
        budget.tick()?;
        if self.remaining == 0 {
            return Ok(true);
        }
        let v = self.select();
        if self.saturation[v] == self.k {
            budget.backtrack();
            return Ok(false);
        }
        let used_before = self.used;
        let limit = self.k.min(self.used + 1);
        for c in 0..limit {
            if self.neighbor_colors[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.solve(budget)? {
                return Ok(true);
            }
            self.unassign(v, used_before);
        }
        budget.backtrack();
        Ok(false)
    }
}
