//! Constructive colorings of arrangements whose boxes have a bounded side,
//! surface, or volume, each checked against its palette cap at run time.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::conflict::{build_graph, ConflictGraph};
use crate::error::{Error, Result};
use crate::geometry::{Arrangement, BoxId, Coord, AXES};
use crate::limits::SearchLimits;
use crate::solver::{greedy_degeneracy_coloring, k_colorable_par, verify_coloring, Coloring, Verdict};

const PLANAR_COLORS: usize = 4;

/// Search budget and worker count for the per-part exact colorings.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunConfig {
    pub limits: SearchLimits,
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartStats {
    pub label: String,
    pub boxes: usize,
    pub components: usize,
    pub colors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub strategy: String,
    pub ell: Coord,
    /// The bound on side, surface, or volume the run was asked to respect.
    pub measure_bound: Coord,
    pub axis: Option<usize>,
    /// Distinct colors in the final coloring.
    pub palette: usize,
    /// Cap for the integer `ell` actually used.
    pub cap: usize,
    /// Cap from the real-valued optimum of `ell`.
    pub closed_form_cap: f64,
    /// Whether `cap` is within `closed_form_cap`, so the closed form is implied.
    pub closed_form_applies: bool,
    pub parts: Vec<PartStats>,
    pub degeneracy_u: Option<usize>,
    pub degeneracy_bound: Option<usize>,
    pub inner: Option<Box<StrategyReport>>,
}

impl StrategyReport {
    fn new(strategy: &str, ell: Coord, measure_bound: Coord, cap: usize, closed_form_cap: f64) -> Self {
        StrategyReport {
            strategy: strategy.into(),
            ell,
            measure_bound,
            axis: None,
            palette: 0,
            cap,
            closed_form_cap,
            closed_form_applies: cap as f64 <= closed_form_cap,
            parts: Vec::new(),
            degeneracy_u: None,
            degeneracy_bound: None,
            inner: None,
        }
    }
}

fn precondition(msg: String) -> Error {
    Error::PreconditionViolated(msg)
}

/// Graph indices of the boxes of `arr`, in box order.
fn box_vertices(arr: &Arrangement, g: &ConflictGraph) -> Result<Vec<usize>> {
    g.indices_of(arr.boxes.iter().map(|b| &b.id))
}

/// Colors `members`, given as (box index, graph index) pairs, by level
/// classes on `axis`, starting at color `offset`.
fn level_on(
    arr: &Arrangement,
    g: &ConflictGraph,
    members: &[(usize, usize)],
    axis: usize,
    ell: Coord,
    offset: usize,
    cfg: RunConfig,
) -> Result<(Coloring, Vec<PartStats>)> {
    let mut parts: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &(b, v) in members {
        let level = arr.boxes[b].extent[axis].lo.rem_euclid(ell + 1) as usize;
        parts.entry(level).or_default().push((b, v));
    }
    let mut coloring = Coloring::new();
    let mut stats = Vec::new();
    for (p, part) in parts {
        let vertices: Vec<usize> = part.iter().map(|&(_, v)| v).collect();
        let sub = g.induced(&vertices);
        let comps = sub.components();
        let box_of: HashMap<&BoxId, usize> = part.iter().map(|&(b, _)| (&arr.boxes[b].id, b)).collect();
        let lo = |i: usize| arr.boxes[box_of[sub.id(i)]].extent[axis].lo;
        for comp in &comps {
            let first = lo(comp[0]);
            if comp.iter().any(|&i| lo(i) != first) {
                return Err(Error::Internal(format!(
                    "part {p} on axis {axis} joins boxes at different levels"
                )));
            }
        }
        let c = match k_colorable_par(&sub, PLANAR_COLORS, cfg.limits, cfg.jobs)? {
            Verdict::Sat(c) => c,
            Verdict::Unsat => {
                return Err(Error::Internal(format!(
                    "a single-level component in part {p} needs more than {PLANAR_COLORS} colors"
                )))
            }
        };
        stats.push(PartStats {
            label: format!("part{p}"),
            boxes: sub.len(),
            components: comps.len(),
            colors: c.distinct_colors(),
        });
        coloring.merge(c.shifted(offset + PLANAR_COLORS * p));
    }
    Ok((coloring, stats))
}

/// Index of the first axis on which the box side is at most `ell`.
fn own_axis(arr: &Arrangement, b: usize, ell: Coord) -> Option<usize> {
    (0..AXES).find(|&d| arr.boxes[b].side(d) <= ell)
}

fn own_dim_on(
    arr: &Arrangement,
    g: &ConflictGraph,
    members: &[(usize, usize)],
    ell: Coord,
    offset: usize,
    cfg: RunConfig,
) -> Result<(Coloring, Vec<PartStats>)> {
    let mut groups: [Vec<(usize, usize)>; AXES] = Default::default();
    for &(b, v) in members {
        let d = own_axis(arr, b, ell).ok_or_else(|| {
            precondition(format!("box `{}` has no side of length at most {ell}", arr.boxes[b].id))
        })?;
        groups[d].push((b, v));
    }
    let block = PLANAR_COLORS * (ell as usize + 1);
    let mut coloring = Coloring::new();
    let mut stats = Vec::new();
    for (d, group) in groups.iter().enumerate() {
        let (c, s) = level_on(arr, g, group, d, ell, offset + block * d, cfg)?;
        coloring.merge(c);
        stats.extend(s.into_iter().map(|p| PartStats {
            label: format!("axis{d}/{}", p.label),
            ..p
        }));
    }
    Ok((coloring, stats))
}

/// Relabels the colors in use to `0..m`, preserving their order.
fn compact(c: &Coloring) -> Coloring {
    let mut used: Vec<usize> = c.iter().map(|(_, k)| k).collect();
    used.sort_unstable();
    used.dedup();
    c.iter()
        .map(|(id, k)| (id.clone(), used.binary_search(&k).expect("color is present")))
        .collect()
}

fn finish(g: &ConflictGraph, raw: Coloring, mut report: StrategyReport) -> Result<(Coloring, StrategyReport)> {
    if raw.palette_size() > report.cap {
        return Err(Error::Internal(format!(
            "{} used {} colors, above its cap {}",
            report.strategy,
            raw.palette_size(),
            report.cap
        )));
    }
    let c = compact(&raw);
    if !verify_coloring(g, &c)?.is_proper() {
        return Err(Error::Internal(format!("{} produced an improper coloring", report.strategy)));
    }
    report.palette = c.distinct_colors();
    Ok((c, report))
}

fn all_members(arr: &Arrangement, g: &ConflictGraph) -> Result<Vec<(usize, usize)>> {
    Ok(box_vertices(arr, g)?.into_iter().enumerate().collect())
}

fn check_ell(ell: Coord) -> Result<()> {
    if ell < 1 {
        return Err(precondition(format!("side bound must be at least 1, got {ell}")));
    }
    Ok(())
}

/// Every box has `side(axis) <= ell`: split by `lo mod (ell+1)` along
/// `axis`, four colors per class, at most `4(ell+1)` colors.
pub fn color_by_level(arr: &Arrangement, axis: usize, ell: Coord, cfg: RunConfig) -> Result<(Coloring, StrategyReport)> {
    check_ell(ell)?;
    if axis >= AXES {
        return Err(precondition(format!("axis {axis} is out of range")));
    }
    if let Some(b) = arr.boxes.iter().find(|b| b.side(axis) > ell) {
        return Err(precondition(format!("box `{}` is longer than {ell} on axis {axis}", b.id)));
    }
    let g = build_graph(arr)?;
    let cap = PLANAR_COLORS * (ell as usize + 1);
    let (c, parts) = level_on(arr, &g, &all_members(arr, &g)?, axis, ell, 0, cfg)?;
    let mut report = StrategyReport::new("level", ell, ell, cap, cap as f64);
    report.axis = Some(axis);
    report.parts = parts;
    finish(&g, c, report)
}

/// Every box has some side at most `ell`: group by the first such axis and
/// run the level strategy per group, at most `12(ell+1)` colors.
pub fn color_by_own_dim(arr: &Arrangement, ell: Coord, cfg: RunConfig) -> Result<(Coloring, StrategyReport)> {
    check_ell(ell)?;
    let g = build_graph(arr)?;
    let cap = AXES * PLANAR_COLORS * (ell as usize + 1);
    let (c, parts) = own_dim_on(arr, &g, &all_members(arr, &g)?, ell, 0, cfg)?;
    let mut report = StrategyReport::new("own-dim", ell, ell, cap, cap as f64);
    report.parts = parts;
    finish(&g, c, report)
}

/// Largest `l >= 0` with `f(l) <= target`, for increasing `f`.
fn integer_root(target: i128, f: impl Fn(i128) -> i128) -> i128 {
    let mut lo = 0;
    let mut hi = 1;
    while f(hi) <= target {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if f(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `floor` and `ceil` of the real root of `f(l) = target`, clamped to `>= 1`.
fn root_candidates(target: i128, f: impl Fn(i128) -> i128) -> [Coord; 2] {
    let lo = integer_root(target, &f);
    let hi = if f(lo) == target { lo } else { lo + 1 };
    [lo.max(1) as Coord, hi.max(1) as Coord]
}

/// Integer cap of the surface strategy: `12 l + floor(3 s / l²) + 13`.
pub fn surface_cap(s: Coord, ell: Coord) -> usize {
    (12 * ell + 3 * s / (ell * ell) + 13) as usize
}

/// The `ell` used by [`color_by_surface`]: the better of floor and ceiling of
/// `(s/2)^(1/3)` for `12 l + 3 s / l² + 13`, ties to the smaller.
pub fn surface_ell(s: Coord) -> Coord {
    let [a, b] = root_candidates(s as i128, |l| 2 * l * l * l);
    // Compare 12a + 3s/a² with 12b + 3s/b² exactly.
    let val = |l: i128| (12 * l * l * l + 3 * s as i128, l * l);
    let ((na, da), (nb, db)) = (val(a as i128), val(b as i128));
    if nb * da < na * db {
        b
    } else {
        a
    }
}

fn surface_closed_form(s: Coord) -> f64 {
    9.0 * (4.0 * s as f64).cbrt() + 13.0
}

fn surface_on(
    arr: &Arrangement,
    g: &ConflictGraph,
    members: &[(usize, usize)],
    s: Coord,
    ell: Coord,
    offset: usize,
    cfg: RunConfig,
) -> Result<(Coloring, StrategyReport)> {
    if let Some(&(b, _)) = members.iter().find(|&&(b, _)| arr.boxes[b].surface() > s) {
        return Err(precondition(format!("box `{}` has surface above {s}", arr.boxes[b].id)));
    }
    let cap = surface_cap(s, ell);
    let mut report = StrategyReport::new("surface", ell, s, cap, surface_closed_form(s));
    let (small, large): (Vec<_>, Vec<_>) = members.iter().partition(|&&(b, _)| arr.boxes[b].min_side() < ell);

    let mut coloring = Coloring::new();
    if !small.is_empty() {
        let (c, parts) = own_dim_on(arr, g, &small, ell - 1, offset, cfg)?;
        coloring.merge(c);
        report.parts.extend(parts.into_iter().map(|p| PartStats {
            label: format!("small/{}", p.label),
            ..p
        }));
    }

    for &(b, _) in &large {
        let bx = &arr.boxes[b];
        let perimeter: Coord = bx.sides().iter().sum();
        if 2 * ell * perimeter > bx.surface() {
            return Err(Error::Internal(format!("box `{}` breaks the surface count for l = {ell}", bx.id)));
        }
    }
    let vertices: Vec<usize> = large.iter().map(|&(_, v)| v).collect();
    let sub = g.induced(&vertices);
    let degeneracy = sub.degeneracy().value;
    let bound = (3 * s / (ell * ell) + 12) as usize;
    if degeneracy > bound {
        return Err(Error::Internal(format!(
            "large boxes have degeneracy {degeneracy}, above {bound}"
        )));
    }
    let greedy = greedy_degeneracy_coloring(&sub);
    report.parts.push(PartStats {
        label: "large".into(),
        boxes: sub.len(),
        components: sub.components().len(),
        colors: greedy.distinct_colors(),
    });
    coloring.merge(greedy.shifted(offset + AXES * PLANAR_COLORS * ell as usize));
    report.degeneracy_u = Some(degeneracy);
    report.degeneracy_bound = Some(bound);
    Ok((coloring, report))
}

/// Every box has surface at most `s`. Boxes with a side shorter than the
/// chosen `l` go to the own-dimension strategy, the rest are colored greedily
/// in degeneracy order with a separate palette.
pub fn color_by_surface(arr: &Arrangement, s: Coord, cfg: RunConfig) -> Result<(Coloring, StrategyReport)> {
    if s < 1 {
        return Err(precondition(format!("surface bound must be positive, got {s}")));
    }
    color_by_surface_at(arr, s, surface_ell(s), cfg)
}

/// [`color_by_surface`] with the split parameter `ell` given explicitly.
pub fn color_by_surface_at(
    arr: &Arrangement,
    s: Coord,
    ell: Coord,
    cfg: RunConfig,
) -> Result<(Coloring, StrategyReport)> {
    check_ell(ell)?;
    let g = build_graph(arr)?;
    let (c, report) = surface_on(arr, &g, &all_members(arr, &g)?, s, ell, 0, cfg)?;
    finish(&g, c, report)
}

/// The `ell` used by [`color_by_volume`]: floor or ceiling of
/// `(3v/8)^(1/4)` minimizing `9 (24 v / l)^(1/3) + 12 l + 13`.
pub fn volume_ell(v: Coord) -> Coord {
    let [a, b] = root_candidates(3 * v as i128, |l| 8 * l * l * l * l);
    if volume_closed_form_at(v, b) < volume_closed_form_at(v, a) {
        b
    } else {
        a
    }
}

fn volume_closed_form_at(v: Coord, ell: Coord) -> f64 {
    9.0 * (24.0 * v as f64 / ell as f64).cbrt() + 12.0 * ell as f64 + 13.0
}

/// Every box has volume at most `v`. Boxes with a side shorter than the
/// chosen `l` go to the own-dimension strategy; the rest have surface at
/// most `6v/l` and go through the surface strategy with a separate palette.
pub fn color_by_volume(arr: &Arrangement, v: Coord, cfg: RunConfig) -> Result<(Coloring, StrategyReport)> {
    if v < 1 {
        return Err(precondition(format!("volume bound must be positive, got {v}")));
    }
    if let Some(b) = arr.boxes.iter().find(|b| b.volume() > v) {
        return Err(precondition(format!("box `{}` has volume above {v}", b.id)));
    }
    let g = build_graph(arr)?;
    let ell = volume_ell(v);
    let members = all_members(arr, &g)?;
    let (small, large): (Vec<_>, Vec<_>) = members.iter().partition(|&&(b, _)| arr.boxes[b].min_side() < ell);

    let mut coloring = Coloring::new();
    let mut parts = Vec::new();
    if !small.is_empty() {
        let (c, p) = own_dim_on(arr, &g, &small, ell - 1, 0, cfg)?;
        coloring.merge(c);
        parts.extend(p.into_iter().map(|p| PartStats {
            label: format!("small/{}", p.label),
            ..p
        }));
    }
    for &(b, _) in &large {
        let bx = &arr.boxes[b];
        if ell * bx.surface() > 6 * v {
            return Err(Error::Internal(format!("box `{}` has surface above 6v/l for l = {ell}", bx.id)));
        }
    }
    let inner_s = (6 * v / ell).max(1);
    let offset = AXES * PLANAR_COLORS * ell as usize;
    let (c, inner) = surface_on(arr, &g, &large, inner_s, surface_ell(inner_s), offset, cfg)?;
    coloring.merge(c);
    let cap = offset + inner.cap;
    let mut report = StrategyReport::new("volume", ell, v, cap, volume_closed_form_at(v, ell));
    report.parts = parts;
    report.inner = Some(Box::new(inner));
    finish(&g, coloring, report)
}

/// The real-valued closed form `24 (6v)^(1/4) + 13`.
pub fn volume_closed_form(v: Coord) -> f64 {
    24.0 * (6.0 * v as f64).powf(0.25) + 13.0
}
