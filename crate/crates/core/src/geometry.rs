//! Integer boxes, arrangements of boxes, and the face-contact predicate.
//!
//! Two boxes are in contact when they share a boundary patch of positive
//! area. Edge and corner touchings are not contacts.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hash::sha256_hex;

pub type Coord = i64;

pub const AXES: usize = 3;
const AXIS_NAMES: [&str; AXES] = ["x", "y", "z"];

/// Closed integer interval `[lo, hi]`. Valid intervals have `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Coord; 2]", into = "[Coord; 2]")]
pub struct Interval {
    pub lo: Coord,
    pub hi: Coord,
}

impl From<[Coord; 2]> for Interval {
    fn from([lo, hi]: [Coord; 2]) -> Self {
        Interval { lo, hi }
    }
}

impl From<Interval> for [Coord; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl Interval {
    pub const fn new(lo: Coord, hi: Coord) -> Self {
        Interval { lo, hi }
    }

    pub fn len(&self) -> Coord {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    /// Length of the intersection of the two closed intervals (0 if disjoint).
    pub fn overlap(&self, other: &Interval) -> Coord {
        (self.hi.min(other.hi) - self.lo.max(other.lo)).max(0)
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.lo <= c && c <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Stable identifier of a box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoxId(pub String);

impl BoxId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BoxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BoxId {
    fn from(s: &str) -> Self {
        BoxId(s.to_owned())
    }
}

impl From<String> for BoxId {
    fn from(s: String) -> Self {
        BoxId(s)
    }
}

/// An axis-aligned box with integer corners.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "CuboidRepr", into = "CuboidRepr")]
pub struct Cuboid {
    pub id: BoxId,
    pub extent: [Interval; AXES],
}

#[derive(Serialize, Deserialize)]
struct CuboidRepr {
    id: BoxId,
    x: Interval,
    y: Interval,
    z: Interval,
}

impl From<CuboidRepr> for Cuboid {
    fn from(r: CuboidRepr) -> Self {
        Cuboid {
            id: r.id,
            extent: [r.x, r.y, r.z],
        }
    }
}

impl From<Cuboid> for CuboidRepr {
    fn from(c: Cuboid) -> Self {
        let [x, y, z] = c.extent;
        CuboidRepr { id: c.id, x, y, z }
    }
}

impl Cuboid {
    pub fn new(id: impl Into<BoxId>, x: [Coord; 2], y: [Coord; 2], z: [Coord; 2]) -> Self {
        Cuboid {
            id: id.into(),
            extent: [x.into(), y.into(), z.into()],
        }
    }

    pub fn side(&self, axis: usize) -> Coord {
        self.extent[axis].len()
    }

    pub fn sides(&self) -> [Coord; AXES] {
        [self.side(0), self.side(1), self.side(2)]
    }

    pub fn surface(&self) -> Coord {
        let [x, y, z] = self.sides();
        2 * (x * y + y * z + x * z)
    }

    pub fn volume(&self) -> Coord {
        let [x, y, z] = self.sides();
        x * y * z
    }

    pub fn min_side(&self) -> Coord {
        self.sides().into_iter().min().unwrap_or(0)
    }

    pub fn interiors_intersect(&self, other: &Cuboid) -> bool {
        (0..AXES).all(|d| self.extent[d].overlap(&other.extent[d]) > 0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum AxisRelation {
    Overlap,
    Touch,
    Gap,
}

fn relation(a: &Interval, b: &Interval) -> AxisRelation {
    if a.hi < b.lo || b.hi < a.lo {
        AxisRelation::Gap
    } else if a.hi == b.lo || b.hi == a.lo {
        AxisRelation::Touch
    } else {
        AxisRelation::Overlap
    }
}

/// Face-to-face contact: the boxes touch along exactly one axis and their
/// extents overlap with positive length on both other axes.
pub fn contact(a: &Cuboid, b: &Cuboid) -> Result<bool> {
    let mut touches = 0;
    let mut overlaps = 0;
    for d in 0..AXES {
        match relation(&a.extent[d], &b.extent[d]) {
            AxisRelation::Gap => return Ok(false),
            AxisRelation::Touch => touches += 1,
            AxisRelation::Overlap => overlaps += 1,
        }
    }
    if overlaps == AXES {
        return Err(Error::OverlappingBoxes(a.id.0.clone(), b.id.0.clone()));
    }
    Ok(touches == 1)
}

/// One invariant violation found by [`Arrangement::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateId { id: BoxId },
    EmptyInterval { id: BoxId, axis: usize },
    Overlap { a: BoxId, b: BoxId },
    UnknownRegionMember { region: String, id: BoxId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate id `{id}`"),
            Violation::EmptyInterval { id, axis } => {
                write!(f, "box `{id}` is empty on axis {}", AXIS_NAMES[*axis])
            }
            Violation::Overlap { a, b } => write!(f, "interiors of `{a}` and `{b}` intersect"),
            Violation::UnknownRegionMember { region, id } => {
                write!(f, "region `{region}` names unknown box `{id}`")
            }
        }
    }
}

/// Result of [`Arrangement::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            return Ok(());
        }
        let msg = self
            .violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::InvalidArrangement(msg))
    }
}

/// A segment used to select the boxes it crosses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentProbe {
    pub axis: usize,
    pub range: Interval,
    /// Coordinates on the two remaining axes, in increasing axis order.
    pub fixed: [Coord; 2],
}

impl SegmentProbe {
    pub fn new(axis: usize, range: [Coord; 2], fixed: [Coord; 2]) -> Self {
        SegmentProbe {
            axis,
            range: range.into(),
            fixed,
        }
    }

    /// The probe crosses `b` along a piece of positive length.
    pub fn crosses(&self, b: &Cuboid) -> bool {
        let others = (0..AXES).filter(|&d| d != self.axis);
        let on_line = others
            .zip(self.fixed)
            .all(|(d, c)| b.extent[d].contains(c));
        on_line && b.extent[self.axis].overlap(&self.range) > 0
    }
}

/// Strictly increasing piecewise-linear integer map, given by breakpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneMap {
    points: Vec<(Coord, Coord)>,
}

impl MonotoneMap {
    pub fn new(points: Vec<(Coord, Coord)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::PreconditionViolated("monotone map needs a breakpoint".into()));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::PreconditionViolated(format!(
                    "breakpoints {:?} and {:?} are not strictly increasing",
                    w[0], w[1]
                )));
            }
        }
        Ok(MonotoneMap { points })
    }

    /// `c ↦ factor * c + offset` on `[lo, hi]`.
    pub fn affine(factor: Coord, offset: Coord, lo: Coord, hi: Coord) -> Result<Self> {
        if factor <= 0 {
            return Err(Error::PreconditionViolated("affine factor must be positive".into()));
        }
        if lo == hi {
            return MonotoneMap::new(vec![(lo, factor * lo + offset)]);
        }
        MonotoneMap::new(vec![(lo, factor * lo + offset), (hi, factor * hi + offset)])
    }

    pub fn identity(lo: Coord, hi: Coord) -> Result<Self> {
        MonotoneMap::affine(1, 0, lo, hi)
    }

    pub fn points(&self) -> &[(Coord, Coord)] {
        &self.points
    }

    pub fn apply(&self, axis: usize, c: Coord) -> Result<Coord> {
        let domain_err = |reason: &str| Error::Domain {
            axis,
            coord: c,
            reason: reason.to_owned(),
        };
        let first = self.points[0];
        let last = self.points[self.points.len() - 1];
        if c < first.0 || c > last.0 {
            return Err(domain_err("outside the breakpoint range"));
        }
        let seg = self.points.partition_point(|&(x, _)| x <= c);
        let (x0, y0) = self.points[seg - 1];
        if x0 == c {
            return Ok(y0);
        }
        let (x1, y1) = self.points[seg];
        let num = (c - x0) * (y1 - y0);
        let den = x1 - x0;
        if num % den != 0 {
            return Err(domain_err("interpolated image is not an integer"));
        }
        Ok(y0 + num / den)
    }
}

/// Per-axis monotone maps followed by an axis permutation.
///
/// Output axis `i` carries the mapped extent of source axis `permutation[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisRemap {
    pub maps: [MonotoneMap; AXES],
    pub permutation: [usize; AXES],
}

impl AxisRemap {
    pub fn new(maps: [MonotoneMap; AXES]) -> Self {
        AxisRemap {
            maps,
            permutation: [0, 1, 2],
        }
    }

    pub fn with_permutation(mut self, permutation: [usize; AXES]) -> Result<Self> {
        let mut seen = [false; AXES];
        for &p in &permutation {
            if p >= AXES || seen[p] {
                return Err(Error::PreconditionViolated(format!(
                    "{permutation:?} is not a permutation of the axes"
                )));
            }
            seen[p] = true;
        }
        self.permutation = permutation;
        Ok(self)
    }
}

/// A finite set of boxes with named regions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    /// Factor by which the horizontal coordinates were multiplied to become integral.
    pub scale: Coord,
    pub floor_axis: Option<usize>,
    pub boxes: Vec<Cuboid>,
    pub regions: BTreeMap<String, BTreeSet<BoxId>>,
}

impl Arrangement {
    pub fn new(scale: Coord, floor_axis: Option<usize>, boxes: Vec<Cuboid>) -> Self {
        Arrangement {
            scale,
            floor_axis,
            boxes,
            regions: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn get(&self, id: &BoxId) -> Option<&Cuboid> {
        self.boxes.iter().find(|b| &b.id == id)
    }

    pub fn region(&self, name: &str) -> Result<&BTreeSet<BoxId>> {
        self.regions
            .get(name)
            .ok_or_else(|| Error::EmptyRegion(name.to_owned()))
    }

    /// Box indices sorted by their low coordinate on axis 0, for sweeps.
    pub(crate) fn sweep_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.boxes.len()).collect();
        order.sort_by_key(|&i| (self.boxes[i].extent[0].lo, i));
        order
    }

    /// Calls `f(i, j)` for every pair of boxes whose closed axis-0 extents meet.
    pub(crate) fn for_each_candidate_pair(&self, mut f: impl FnMut(usize, usize)) {
        let order = self.sweep_order();
        for (pos, &i) in order.iter().enumerate() {
            let hi = self.boxes[i].extent[0].hi;
            for &j in &order[pos + 1..] {
                if self.boxes[j].extent[0].lo > hi {
                    break;
                }
                f(i, j);
            }
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen = HashSet::new();
        for b in &self.boxes {
            if !seen.insert(&b.id) {
                violations.push(Violation::DuplicateId { id: b.id.clone() });
            }
            for axis in 0..AXES {
                if b.extent[axis].is_empty() {
                    violations.push(Violation::EmptyInterval {
                        id: b.id.clone(),
                        axis,
                    });
                }
            }
        }
        let mut overlaps = Vec::new();
        self.for_each_candidate_pair(|i, j| {
            let (a, b) = (&self.boxes[i], &self.boxes[j]);
            if a.interiors_intersect(b) {
                let (a, b) = if a.id <= b.id { (a, b) } else { (b, a) };
                overlaps.push(Violation::Overlap {
                    a: a.id.clone(),
                    b: b.id.clone(),
                });
            }
        });
        overlaps.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
        violations.extend(overlaps);
        for (name, ids) in &self.regions {
            for id in ids {
                if !seen.contains(id) {
                    violations.push(Violation::UnknownRegionMember {
                        region: name.clone(),
                        id: id.clone(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().into_result()
    }

    /// Ids of the boxes the probe crosses with positive length.
    pub fn region_from_probe(&self, probe: &SegmentProbe) -> Result<BTreeSet<BoxId>> {
        let ids: BTreeSet<BoxId> = self
            .boxes
            .iter()
            .filter(|b| probe.crosses(b))
            .map(|b| b.id.clone())
            .collect();
        if ids.is_empty() {
            return Err(Error::EmptyRegion(format!(
                "probe along axis {} over {}",
                probe.axis, probe.range
            )));
        }
        Ok(ids)
    }

    /// Materializes a probe as a named region.
    pub fn add_probe_region(&mut self, name: &str, probe: &SegmentProbe) -> Result<()> {
        let ids = self.region_from_probe(probe)?;
        self.regions.insert(name.to_owned(), ids);
        Ok(())
    }

    pub fn remap(&self, m: &AxisRemap) -> Result<Arrangement> {
        let boxes = self
            .boxes
            .iter()
            .map(|b| {
                let mut mapped = [Interval::new(0, 0); AXES];
                for (d, slot) in mapped.iter_mut().enumerate() {
                    let src = m.permutation[d];
                    let e = b.extent[src];
                    *slot = Interval::new(m.maps[src].apply(src, e.lo)?, m.maps[src].apply(src, e.hi)?);
                }
                Ok(Cuboid {
                    id: b.id.clone(),
                    extent: mapped,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let floor_axis = self
            .floor_axis
            .and_then(|f| m.permutation.iter().position(|&p| p == f));
        Ok(Arrangement {
            scale: self.scale,
            floor_axis,
            boxes,
            regions: self.regions.clone(),
        })
    }

    /// Copy with every box id and region name prefixed by `prefix/`.
    pub fn prefixed(&self, prefix: &str) -> Arrangement {
        let tag = |id: &BoxId| BoxId(format!("{prefix}/{}", id.0));
        Arrangement {
            scale: self.scale,
            floor_axis: self.floor_axis,
            boxes: self
                .boxes
                .iter()
                .map(|b| Cuboid {
                    id: tag(&b.id),
                    extent: b.extent,
                })
                .collect(),
            regions: self
                .regions
                .iter()
                .map(|(name, ids)| (format!("{prefix}/{name}"), ids.iter().map(tag).collect()))
                .collect(),
        }
    }

    /// Appends the boxes and regions of `other`. Ids are not re-checked here.
    pub fn extend(&mut self, other: Arrangement) {
        self.boxes.extend(other.boxes);
        self.regions.extend(other.regions);
    }

    pub fn bounding_box(&self) -> Option<[Interval; AXES]> {
        let first = self.boxes.first()?;
        let mut bb = first.extent;
        for b in &self.boxes[1..] {
            for (acc, e) in bb.iter_mut().zip(&b.extent) {
                acc.lo = acc.lo.min(e.lo);
                acc.hi = acc.hi.max(e.hi);
            }
        }
        Some(bb)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("arrangement serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("arrangement serializes")
    }

    pub fn from_json(text: &str) -> Result<Arrangement> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn content_hash(&self) -> String {
        sha256_hex(self.to_json().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(id: &str, x: Coord, y: Coord, z: Coord) -> Cuboid {
        Cuboid::new(id, [x, x + 1], [y, y + 1], [z, z + 1])
    }

    #[test]
    fn full_face_is_contact() {
        assert!(contact(&unit("a", 0, 0, 0), &unit("b", 1, 0, 0)).unwrap());
    }

    #[test]
    fn edge_touch_is_not_contact() {
        assert!(!contact(&unit("a", 0, 0, 0), &unit("b", 1, 1, 0)).unwrap());
        assert!(!contact(&unit("a", 0, 0, 0), &unit("b", 1, 1, 1)).unwrap());
    }

    #[test]
    fn figure_two_corner_pair_is_not_contact() {
        let s = Cuboid::new("s", [0, 3], [1, 2], [0, 1]);
        let d2 = Cuboid::new("d2", [2, 3], [3, 4], [0, 1]);
        assert!(!contact(&s, &d2).unwrap());
    }

    #[test]
    fn overlapping_interiors_error() {
        let err = contact(&unit("a", 0, 0, 0), &unit("b", 0, 0, 0)).unwrap_err();
        assert!(matches!(err, Error::OverlappingBoxes(..)));
    }

    #[test]
    fn validate_reports_each_problem() {
        let mut arr = Arrangement::new(1, None, vec![unit("a", 0, 0, 0), unit("a", 0, 0, 0)]);
        arr.boxes.push(Cuboid::new("flat", [5, 5], [0, 1], [0, 1]));
        arr.regions
            .insert("r".into(), [BoxId::from("ghost")].into_iter().collect());
        let report = arr.validate();
        assert!(report.violations.contains(&Violation::DuplicateId { id: "a".into() }));
        assert!(report.violations.contains(&Violation::EmptyInterval {
            id: "flat".into(),
            axis: 0
        }));
        assert!(report.violations.contains(&Violation::Overlap {
            a: "a".into(),
            b: "a".into()
        }));
        assert!(report.violations.contains(&Violation::UnknownRegionMember {
            region: "r".into(),
            id: "ghost".into()
        }));
        assert!(report.into_result().is_err());
    }

    #[test]
    fn probe_outside_is_empty_region() {
        let arr = Arrangement::new(1, None, vec![unit("a", 0, 0, 0)]);
        let probe = SegmentProbe::new(0, [10, 20], [0, 0]);
        assert!(matches!(arr.region_from_probe(&probe), Err(Error::EmptyRegion(_))));
    }

    #[test]
    fn probe_grazing_a_box_end_does_not_count() {
        let arr = Arrangement::new(1, None, vec![unit("a", 0, 0, 0), unit("b", 1, 0, 0)]);
        let probe = SegmentProbe::new(0, [-3, 1], [0, 0]);
        let ids = arr.region_from_probe(&probe).unwrap();
        assert_eq!(ids.into_iter().collect::<Vec<_>>(), vec![BoxId::from("a")]);
    }

    #[test]
    fn monotone_map_interpolates_exactly() {
        let m = MonotoneMap::new(vec![(0, 0), (2, 10), (4, 11)]).unwrap();
        assert_eq!(m.apply(0, 1).unwrap(), 5);
        assert_eq!(m.apply(0, 4).unwrap(), 11);
        assert!(matches!(m.apply(0, 3), Err(Error::Domain { .. })));
        assert!(matches!(m.apply(0, 5), Err(Error::Domain { .. })));
        assert!(MonotoneMap::new(vec![(0, 0), (1, 0)]).is_err());
    }

    #[test]
    fn remap_with_transpose_swaps_extents() {
        let arr = Arrangement::new(1, Some(2), vec![Cuboid::new("a", [0, 3], [0, 1], [0, 1])]);
        let m = AxisRemap::new([
            MonotoneMap::affine(2, 0, 0, 3).unwrap(),
            MonotoneMap::affine(1, 5, 0, 1).unwrap(),
            MonotoneMap::identity(0, 1).unwrap(),
        ])
        .with_permutation([1, 0, 2])
        .unwrap();
        let out = arr.remap(&m).unwrap();
        assert_eq!(out.boxes[0].extent[0], Interval::new(5, 6));
        assert_eq!(out.boxes[0].extent[1], Interval::new(0, 6));
        assert_eq!(out.floor_axis, Some(2));
    }

    #[test]
    fn measures() {
        let b = Cuboid::new("b", [0, 2], [0, 3], [0, 4]);
        assert_eq!(b.surface(), 2 * (6 + 12 + 8));
        assert_eq!(b.volume(), 24);
        assert_eq!(b.min_side(), 2);
    }

    #[test]
    fn json_field_order() {
        let mut arr = Arrangement::new(2, Some(2), vec![Cuboid::new("a", [0, 1], [0, 1], [0, 1])]);
        arr.regions
            .insert("r".into(), [BoxId::from("a")].into_iter().collect());
        assert_eq!(
            arr.to_json(),
            r#"{"scale":2,"floor_axis":2,"boxes":[{"id":"a","x":[0,1],"y":[0,1],"z":[0,1]}],"regions":{"r":["a"]}}"#
        );
    }
}
