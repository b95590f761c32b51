//! Proper colorings under per-region caps on the number of distinct colors.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};
use crate::geometry::BoxId;
use crate::limits::{Budget, SearchLimits, SearchStats};

use super::coloring::{smallest_free, verify_coloring, Coloring};
use super::dsatur::Verdict;

const UNCOLORED: usize = usize::MAX;

/// Region name → maximum number of distinct colors among its boxes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CapConstraint {
    caps: BTreeMap<String, usize>,
}

impl CapConstraint {
    pub fn new<I, S>(caps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let caps: BTreeMap<String, usize> = caps.into_iter().map(|(k, v)| (k.into(), v)).collect();
        if let Some((name, _)) = caps.iter().find(|(_, &cap)| cap == 0) {
            return Err(Error::PreconditionViolated(format!("cap of region `{name}` must be at least 1")));
        }
        Ok(CapConstraint { caps })
    }

    /// The same cap on every listed region.
    pub fn uniform<'a>(names: impl IntoIterator<Item = &'a str>, cap: usize) -> Result<Self> {
        CapConstraint::new(names.into_iter().map(|n| (n, cap)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.caps.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

/// Searches for a proper coloring in which every capped region uses at most
/// its cap of distinct colors. The palette itself is unbounded.
///
/// Only vertices lying in some capped region are searched; the others are
/// colored greedily afterwards and cannot affect feasibility.
pub fn capped_coloring(
    g: &ConflictGraph,
    regions: &BTreeMap<String, BTreeSet<BoxId>>,
    caps: &CapConstraint,
    limits: SearchLimits,
) -> Result<(Verdict, SearchStats)> {
    let mut region_members = Vec::new();
    let mut cap_values = Vec::new();
    for (name, cap) in caps.iter() {
        let ids = regions
            .get(name)
            .ok_or_else(|| Error::EmptyRegion(name.to_owned()))?;
        region_members.push(g.indices_of(ids)?);
        cap_values.push(cap);
    }
    let n = g.len();
    let mut regions_of = vec![Vec::new(); n];
    for (r, members) in region_members.iter().enumerate() {
        for &v in members {
            regions_of[v].push(r);
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| !regions_of[v].is_empty()).collect();

    let mut search = CappedSearch {
        g,
        core,
        regions_of,
        caps: cap_values,
        colors: vec![UNCOLORED; n],
        region_color_count: vec![vec![0; n + 1]; region_members.len()],
        region_distinct: vec![0; region_members.len()],
        used: 0,
    };
    let mut budget = Budget::new(limits);
    if !search.solve(&mut budget)? {
        return Ok((Verdict::Unsat, budget.finish()));
    }
    let mut colors = search.colors;
    for v in 0..n {
        if colors[v] == UNCOLORED {
            colors[v] = smallest_free(g, v, &colors);
        }
    }
    let coloring = Coloring::from_indices(g, &colors);
    if !verify_coloring(g, &coloring)?.is_proper() {
        return Err(Error::Internal("capped search produced an improper coloring".into()));
    }
    Ok((Verdict::Sat(coloring), budget.finish()))
}

struct CappedSearch<'g> {
    g: &'g ConflictGraph,
    core: Vec<usize>,
    regions_of: Vec<Vec<usize>>,
    caps: Vec<usize>,
    colors: Vec<usize>,
    region_color_count: Vec<Vec<u32>>,
    region_distinct: Vec<usize>,
    used: usize,
}

impl CappedSearch<'_> {
    fn allowed(&self, v: usize, c: usize) -> bool {
        if self.g.neighbors(v).iter().any(|&w| self.colors[w] == c) {
            return false;
        }
        self.regions_of[v]
            .iter()
            .all(|&r| self.region_color_count[r][c] > 0 || self.region_distinct[r] < self.caps[r])
    }

    fn options(&self, v: usize) -> Vec<usize> {
        (0..=self.used).filter(|&c| self.allowed(v, c)).collect()
    }

    fn set(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &r in &self.regions_of[v] {
            if self.region_color_count[r][c] == 0 {
                self.region_distinct[r] += 1;
            }
            self.region_color_count[r][c] += 1;
        }
    }

    fn clear(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = UNCOLORED;
        for &r in &self.regions_of[v] {
            self.region_color_count[r][c] -= 1;
            if self.region_color_count[r][c] == 0 {
                self.region_distinct[r] -= 1;
            }
        }
    }

    fn solve(&mut self, budget: &mut Budget) -> Result<bool> {
        budget.tick()?;
        // Most constrained uncolored core vertex first.
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for &v in &self.core {
            if self.colors[v] != UNCOLORED {
                continue;
            }
            let opts = self.options(v);
            if opts.is_empty() {
                budget.backtrack();
                return Ok(false);
            }
            let better = match &pick {
                None => true,
                Some((w, best)) => {
                    (opts.len(), std::cmp::Reverse(self.g.degree(v)))
                        < (best.len(), std::cmp::Reverse(self.g.degree(*w)))
                }
            };
            if better {
                pick = Some((v, opts));
            }
        }
        let Some((v, opts)) = pick else {
            return Ok(true);
        };
        let used_before = self.used;
        for c in opts {
            self.set(v, c);
            self.used = used_before.max(c + 1);
            if self.solve(budget)? {
                return Ok(true);
            }
            self.clear(v);
            self.used = used_before;
        }
        budget.backtrack();
        Ok(false)
    }
}
