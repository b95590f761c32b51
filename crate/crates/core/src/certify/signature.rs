use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::BoxId;
use crate::solver::Coloring;

/// Sizes of the color sets on three designated box sets and on the two
/// consecutive unions: `(|C1|, |C1 ∪ C2|, |C2|, |C2 ∪ C3|, |C3|)`.
///
/// Ordered componentwise, which is only a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub c1: usize,
    pub c12: usize,
    pub c2: usize,
    pub c23: usize,
    pub c3: usize,
}

/// A proper coloring of gadget X dominates at least one of these.
pub const CLAIM1_THRESHOLDS: [Signature; 3] = [
    Signature::new(3, 3, 2, 4, 4),
    Signature::new(3, 4, 3, 3, 2),
    Signature::new(2, 3, 3, 4, 3),
];

impl Signature {
    pub const fn new(c1: usize, c12: usize, c2: usize, c23: usize, c3: usize) -> Self {
        Signature { c1, c12, c2, c23, c3 }
    }

    pub fn components(&self) -> [usize; 5] {
        [self.c1, self.c12, self.c2, self.c23, self.c3]
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &Signature) -> bool {
        self.components()
            .iter()
            .zip(other.components())
            .all(|(a, b)| *a >= b)
    }

    /// Unions dominate their parts.
    pub fn is_consistent(&self) -> bool {
        self.c1 <= self.c12 && self.c2 <= self.c12 && self.c2 <= self.c23 && self.c3 <= self.c23
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }
}

/// Written the way the subscripted form reads: `a_x b_y c`.
impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}{}_{}{}", self.c1, self.c12, self.c2, self.c23, self.c3)
    }
}

pub fn signature(c: &Coloring, sets: [&BTreeSet<BoxId>; 3]) -> Result<Signature> {
    let [s1, s2, s3] = sets.map(|s| c.colors_on(s));
    let (s1, s2, s3) = (s1?, s2?, s3?);
    Ok(Signature {
        c1: s1.len(),
        c12: s1.union(&s2).count(),
        c2: s2.len(),
        c23: s2.union(&s3).count(),
        c3: s3.len(),
    })
}

pub fn signature_geq(s: &Signature, t: &Signature) -> bool {
    s.dominates(t)
}
