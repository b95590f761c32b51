//! The small fixed arrangements: gadget X, gadget Y, and the three-floor
//! six-color arrangement. Figure coordinates are doubled so that region
//! probes run along odd (hence box-interior) integer lines.

use std::collections::BTreeSet;

use crate::conflict::{build_graph, ConflictGraph};
use crate::error::{Error, Result};
use crate::geometry::{Arrangement, BoxId, Coord, Cuboid, SegmentProbe};

pub const GADGET_X_REGIONS: [&str; 3] = ["X1", "X2", "X3"];
pub const GADGET_Y_REGIONS: [&str; 3] = ["Y1", "Y2", "Y3"];

/// Footprint `[x0, x1] × [y0, y1]` on the ground floor.
fn slab(id: &str, x: [Coord; 2], y: [Coord; 2]) -> Cuboid {
    Cuboid::new(id, x, y, [0, 1])
}

/// Gadget X: seven one-floor boxes, regions X1/X2/X3 from three probes
/// running along axis 1.
pub fn build_gadget_x() -> Arrangement {
    let boxes = vec![
        slab("a", [0, 6], [0, 2]),
        slab("s", [0, 6], [2, 4]),
        slab("c1", [0, 2], [4, 8]),
        slab("c2", [2, 4], [4, 8]),
        slab("d1", [4, 6], [4, 6]),
        slab("d2", [4, 6], [6, 8]),
        slab("t", [0, 6], [8, 10]),
    ];
    let mut arr = Arrangement::new(2, Some(2), boxes);
    for (name, x) in GADGET_X_REGIONS.iter().zip([1, 3, 5]) {
        arr.add_probe_region(name, &SegmentProbe::new(1, [1, 9], [x, 0]))
            .expect("gadget X probes hit boxes");
    }
    arr
}

/// Gadget Y: three copies of X laid side by side (chained through their
/// outer strips), regions Y1/Y2/Y3 from three probes along axis 0.
/// Regions `copy1..copy3` record which X copy each box belongs to.
pub fn build_gadget_y() -> Arrangement {
    #[rustfmt::skip]
    let layout: [(&str, [Coord; 2], [Coord; 2]); 21] = [
        ("x1.t", [0, 2], [0, 10]),
        ("x1.c1", [2, 6], [0, 4]),
        ("x1.c2", [2, 6], [4, 6]),
        ("x1.d2", [2, 4], [6, 10]),
        ("x1.d1", [4, 6], [6, 10]),
        ("x1.s", [6, 8], [0, 10]),
        ("x1.a", [8, 10], [0, 10]),
        ("x2.t", [10, 12], [0, 10]),
        ("x2.c1", [12, 16], [0, 2]),
        ("x2.c2", [12, 16], [2, 6]),
        ("x2.d2", [12, 14], [6, 10]),
        ("x2.d1", [14, 16], [6, 10]),
        ("x2.s", [16, 18], [0, 10]),
        ("x2.a", [18, 20], [0, 10]),
        ("x3.t", [20, 22], [0, 10]),
        ("x3.d2", [22, 24], [0, 4]),
        ("x3.d1", [24, 26], [0, 4]),
        ("x3.c2", [22, 26], [4, 8]),
        ("x3.c1", [22, 26], [8, 10]),
        ("x3.s", [26, 28], [0, 10]),
        ("x3.a", [28, 30], [0, 10]),
    ];
    let boxes = layout.iter().map(|&(id, x, y)| slab(id, x, y)).collect();
    let mut arr = Arrangement::new(2, Some(2), boxes);
    for (name, y) in GADGET_Y_REGIONS.iter().zip([3, 5, 7]) {
        arr.add_probe_region(name, &SegmentProbe::new(0, [1, 29], [y, 0]))
            .expect("gadget Y probes hit boxes");
    }
    for copy in 1..=3 {
        let prefix = format!("x{copy}.");
        let ids = arr
            .boxes
            .iter()
            .filter(|b| b.id.as_str().starts_with(&prefix))
            .map(|b| b.id.clone())
            .collect();
        arr.regions.insert(format!("copy{copy}"), ids);
    }
    arr
}

/// Eleven boxes on three floors: eight on the middle floor, one large box
/// below them, and a top floor split into two halves.
pub fn build_figure1() -> Arrangement {
    let mid = |id: &str, x: [Coord; 2], y: [Coord; 2]| Cuboid::new(id, x, y, [1, 2]);
    let boxes = vec![
        Cuboid::new("bottom", [1, 9], [1, 7], [0, 1]),
        mid("mid.band_s", [0, 10], [0, 2]),
        mid("mid.band_n", [0, 10], [6, 8]),
        mid("mid.col1", [0, 2], [2, 6]),
        mid("mid.col2", [2, 4], [2, 6]),
        mid("mid.cell_s", [4, 6], [2, 4]),
        mid("mid.cell_n", [4, 6], [4, 6]),
        mid("mid.col4", [6, 8], [2, 6]),
        mid("mid.col5", [8, 10], [2, 6]),
        Cuboid::new("top.west", [-1, 5], [-1, 9], [2, 3]),
        Cuboid::new("top.east", [5, 11], [-1, 9], [2, 3]),
    ];
    Arrangement::new(2, Some(2), boxes)
}

/// A gadget's conflict graph together with its three designated regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub graph: ConflictGraph,
    pub regions: [BTreeSet<BoxId>; 3],
}

impl Gadget {
    pub fn from_arrangement(arr: &Arrangement, names: [&str; 3]) -> Result<Gadget> {
        let graph = build_graph(arr)?;
        let regions = names.map(|n| arr.regions.get(n).cloned());
        match regions {
            [Some(r1), Some(r2), Some(r3)] => Ok(Gadget {
                graph,
                regions: [r1, r2, r3],
            }),
            _ => Err(Error::EmptyRegion(format!("one of {names:?}"))),
        }
    }

    pub fn x() -> Gadget {
        Gadget::from_arrangement(&build_gadget_x(), GADGET_X_REGIONS).expect("gadget X is valid")
    }

    pub fn y() -> Gadget {
        Gadget::from_arrangement(&build_gadget_y(), GADGET_Y_REGIONS).expect("gadget Y is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadgets_validate() {
        for arr in [build_gadget_x(), build_gadget_y(), build_figure1()] {
            assert!(arr.validate().is_ok(), "{:?}", arr.validate());
        }
    }

    #[test]
    fn y_copy_regions_partition_the_boxes() {
        let y = build_gadget_y();
        let total: usize = (1..=3).map(|c| y.regions[&format!("copy{c}")].len()).sum();
        assert_eq!(total, 21);
    }

    #[test]
    fn figure1_floors() {
        let arr = build_figure1();
        let count = |z: Coord| arr.boxes.iter().filter(|b| b.extent[2].lo == z).count();
        assert_eq!((count(0), count(1), count(2)), (1, 8, 2));
    }
}
