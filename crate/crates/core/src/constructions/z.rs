//! The two-floor arrangement Z built from 22 copies of gadget Y.
//!
//! Seven bottom copies `B1..B7` lie on the ground floor. For every
//! `i ∈ 2..=6` and `j ∈ 1..=3` a top copy `T(i,j)` lies on the upper floor;
//! its region 1 must fully overlap region `Yj` of `B1..B(i-1)`, its region 2
//! region `Yj` of `Bi`, and its region 3 region `Yj` of `B(i+1)..B7`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conflict::{build_graph, ConflictGraph};
use crate::error::{Error, Result};
use crate::geometry::{Arrangement, AxisRemap, BoxId, Coord, MonotoneMap};

use super::gadgets::{build_gadget_y, Gadget, GADGET_Y_REGIONS};

pub const BOTTOM_COPIES: usize = 7;

/// A placed copy of the template gadget. Box ids are `"{name}/{template id}"`
/// (see [`copy_id`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyRecord {
    pub name: String,
    pub regions: [BTreeSet<BoxId>; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopCopyRecord {
    pub name: String,
    pub i: usize,
    pub j: usize,
    pub regions: [BTreeSet<BoxId>; 3],
}

/// Region `k` of top copy `top` must fully overlap region `j` of bottom copy
/// `bottom` (all indices 1-based). Serialized as `[top, k, bottom, j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(String, usize, usize, usize)", into = "(String, usize, usize, usize)")]
pub struct Demand {
    pub top: String,
    pub k: usize,
    pub bottom: usize,
    pub j: usize,
}

impl From<(String, usize, usize, usize)> for Demand {
    fn from((top, k, bottom, j): (String, usize, usize, usize)) -> Self {
        Demand { top, k, bottom, j }
    }
}

impl From<Demand> for (String, usize, usize, usize) {
    fn from(d: Demand) -> Self {
        (d.top, d.k, d.bottom, d.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZStructure {
    pub bottom: Vec<CopyRecord>,
    pub top: Vec<TopCopyRecord>,
    pub demands: Vec<Demand>,
}

impl ZStructure {
    pub fn top_copy(&self, i: usize, j: usize) -> Option<&TopCopyRecord> {
        self.top.iter().find(|t| t.i == i && t.j == j)
    }

    /// Names of all copies, bottom first.
    pub fn copy_names(&self) -> impl Iterator<Item = &str> {
        self.bottom
            .iter()
            .map(|c| c.name.as_str())
            .chain(self.top.iter().map(|t| t.name.as_str()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serializes")
    }
}

pub fn bottom_name(b: usize) -> String {
    format!("B{b}")
}

pub fn top_name(i: usize, j: usize) -> String {
    format!("T({i},{j})")
}

pub fn copy_id(copy: &str, id: &BoxId) -> BoxId {
    BoxId(format!("{copy}/{}", id.0))
}

fn copy_regions(copy: &str, template: &Gadget) -> [BTreeSet<BoxId>; 3] {
    template
        .regions
        .clone()
        .map(|r| r.iter().map(|id| copy_id(copy, id)).collect())
}

/// The overlap pattern for `bottom` bottom copies.
pub fn z_demands(bottom: usize) -> Vec<Demand> {
    let mut out = Vec::new();
    for j in 1..=3 {
        for i in 2..bottom {
            let top = top_name(i, j);
            for b in 1..=bottom {
                let k = match b.cmp(&i) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Equal => 2,
                    std::cmp::Ordering::Greater => 3,
                };
                out.push(Demand {
                    top: top.clone(),
                    k,
                    bottom: b,
                    j,
                });
            }
        }
    }
    out
}

/// Disjoint copies of `template` plus a complete bipartite join for every
/// demand.
pub fn build_z_abstract_from(template: &Gadget, bottom: usize) -> Result<(ConflictGraph, ZStructure)> {
    let bottoms: Vec<CopyRecord> = (1..=bottom)
        .map(|b| {
            let name = bottom_name(b);
            CopyRecord {
                regions: copy_regions(&name, template),
                name,
            }
        })
        .collect();
    let tops: Vec<TopCopyRecord> = (1..=3)
        .flat_map(|j| (2..bottom).map(move |i| (i, j)))
        .map(|(i, j)| {
            let name = top_name(i, j);
            TopCopyRecord {
                regions: copy_regions(&name, template),
                name,
                i,
                j,
            }
        })
        .collect();
    let demands = z_demands(bottom);

    let template_edges = template.graph.edge_ids();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for name in bottoms.iter().map(|c| &c.name).chain(tops.iter().map(|t| &t.name)) {
        vertices.extend(template.graph.vertices().iter().map(|id| copy_id(name, id)));
        edges.extend(
            template_edges
                .iter()
                .map(|(a, b)| (copy_id(name, a), copy_id(name, b))),
        );
    }
    for d in &demands {
        let top = tops
            .iter()
            .find(|t| t.name == d.top)
            .ok_or_else(|| Error::Internal(format!("demand names unknown copy {}", d.top)))?;
        let lower = &bottoms[d.bottom - 1].regions[d.j - 1];
        for u in &top.regions[d.k - 1] {
            for v in lower {
                edges.push((u.clone(), v.clone()));
            }
        }
    }
    let graph = ConflictGraph::from_edges(vertices, edges, None)?;
    Ok((
        graph,
        ZStructure {
            bottom: bottoms,
            top: tops,
            demands,
        },
    ))
}

pub fn build_z_abstract() -> Result<(ConflictGraph, ZStructure)> {
    build_z_abstract_from(&Gadget::y(), BOTTOM_COPIES)
}

// Geometric layout, in doubled figure units multiplied by `UNIT`.
const UNIT: Coord = 100;
const Y_LENGTH: Coord = 30;
const Y_WIDTH: Coord = 10;
const COPY_PITCH: Coord = (Y_LENGTH + 1) * UNIT;
const SUB_BAND_MARGIN: Coord = 10;
const SUB_BAND_PITCH: Coord = 38;

fn bottom_offset(b: usize) -> Coord {
    (b as Coord - 1) * COPY_PITCH
}

/// Midpoint of the gap after bottom copy `b` (`b = 0` is before the first).
fn gap_mid(b: usize) -> Coord {
    bottom_offset(b) + Y_LENGTH * UNIT + UNIT / 2
}

/// Places the bottom copies unrotated side by side with unit gaps, so that
/// their region bands coincide. Each top copy is transposed: its length is
/// squeezed into a private sub-band inside the band of region `Yj`, and its
/// width is stretched so that its region-k band covers exactly the bottom
/// copies it must overlap.
pub fn build_z_geometric() -> Result<Arrangement> {
    let y = build_gadget_y();
    let mut z = Arrangement::new(2 * UNIT, Some(2), Vec::new());
    let flat = |arr: &Arrangement| -> Arrangement {
        let mut arr = arr.clone();
        arr.regions.retain(|name, _| GADGET_Y_REGIONS.contains(&name.as_str()));
        arr
    };
    for b in 1..=BOTTOM_COPIES {
        let m = AxisRemap::new([
            MonotoneMap::affine(UNIT, bottom_offset(b), 0, Y_LENGTH)?,
            MonotoneMap::affine(UNIT, 0, 0, Y_WIDTH)?,
            MonotoneMap::identity(0, 1)?,
        ]);
        z.extend(flat(&y).remap(&m)?.prefixed(&bottom_name(b)));
    }
    for j in 1..=3 {
        for i in 2..BOTTOM_COPIES {
            let band_lo = 2 * j as Coord * UNIT;
            let y_start = band_lo + SUB_BAND_MARGIN + (i as Coord - 2) * SUB_BAND_PITCH;
            let across = MonotoneMap::new(vec![
                (0, gap_mid(0) - UNIT / 2),
                (2, gap_mid(0)),
                (4, gap_mid(i - 1)),
                (6, gap_mid(i)),
                (8, gap_mid(BOTTOM_COPIES)),
                (10, gap_mid(BOTTOM_COPIES) + UNIT / 2),
            ])?;
            let m = AxisRemap::new([
                MonotoneMap::affine(1, y_start, 0, Y_LENGTH)?,
                across,
                MonotoneMap::affine(1, 1, 0, 1)?,
            ])
            .with_permutation([1, 0, 2])?;
            let mut top = flat(&y).remap(&m)?;
            top.floor_axis = Some(2);
            z.extend(top.prefixed(&top_name(i, j)));
        }
    }
    z.scale = 2 * UNIT;
    check_realization(&z)?;
    Ok(z)
}

/// Distinct floor indices used, requiring every box to be exactly one floor
/// slab `[f, f+1]` on the floor axis.
pub fn floors(arr: &Arrangement) -> Result<BTreeSet<Coord>> {
    let axis = arr
        .floor_axis
        .ok_or_else(|| Error::Realization("arrangement has no floor axis".into()))?;
    arr.boxes
        .iter()
        .map(|b| {
            let e = b.extent[axis];
            if e.len() == 1 {
                Ok(e.lo)
            } else {
                Err(Error::Realization(format!("box `{}` spans {e} on the floor axis", b.id)))
            }
        })
        .collect()
}

fn check_realization(z: &Arrangement) -> Result<()> {
    if !z.validate().is_ok() {
        return Err(Error::Realization(format!(
            "geometric Z is invalid: {:?}",
            z.validate().violations.first()
        )));
    }
    let used = floors(z)?;
    if used != BTreeSet::from([0, 1]) {
        return Err(Error::Realization(format!("expected floors {{0, 1}}, found {used:?}")));
    }
    let geometric = build_graph(z)?;
    let (abstract_graph, _) = build_z_abstract()?;
    check_embedding(&abstract_graph, &geometric)
}

/// Every vertex and edge of `abstract_graph` is present (by id) in `geometric`.
pub fn check_embedding(abstract_graph: &ConflictGraph, geometric: &ConflictGraph) -> Result<()> {
    if abstract_graph.vertices() != geometric.vertices() {
        return Err(Error::Realization("vertex sets differ".into()));
    }
    match abstract_graph
        .edge_ids()
        .into_iter()
        .find(|(a, b)| !geometric.has_edge_ids(a, b))
    {
        Some((a, b)) => Err(Error::Realization(format!("edge {a} -- {b} is not a contact"))),
        None => Ok(()),
    }
}
