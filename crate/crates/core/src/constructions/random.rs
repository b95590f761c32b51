use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Coord, Cuboid, Interval, AXES};

/// Random guillotine dissection of `bounds` into `target` boxes.
///
/// Each step picks a uniformly random (box, axis) pair that can be cut
/// while keeping both halves at least `min_side` long, and cuts at a
/// uniformly random admissible integer. Deterministic in `seed`.
pub fn gen_random_guillotine(
    seed: u64,
    target: usize,
    bounds: [Interval; AXES],
    min_side: Coord,
) -> Result<Arrangement> {
    if target == 0 {
        return Err(Error::Infeasible("target box count must be positive".into()));
    }
    if min_side < 1 {
        return Err(Error::Infeasible("minimum side must be at least 1".into()));
    }
    if bounds.iter().any(|e| e.len() < min_side) {
        return Err(Error::Infeasible("bounding box is thinner than the minimum side".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = vec![bounds];
    while pieces.len() < target {
        let cuts: Vec<(usize, usize)> = pieces
            .iter()
            .enumerate()
            .flat_map(|(p, e)| (0..AXES).filter(move |&d| e[d].len() >= 2 * min_side).map(move |d| (p, d)))
            .collect();
        if cuts.is_empty() {
            return Err(Error::Infeasible(format!(
                "only {} boxes fit with minimum side {min_side}",
                pieces.len()
            )));
        }
        let (p, d) = cuts[rng.random_range(0..cuts.len())];
        let e = pieces[p][d];
        let at = rng.random_range(e.lo + min_side..=e.hi - min_side);
        let mut upper = pieces[p];
        pieces[p][d].hi = at;
        upper[d].lo = at;
        pieces.push(upper);
    }
    let width = target.to_string().len();
    let boxes = pieces
        .into_iter()
        .enumerate()
        .map(|(i, extent)| Cuboid {
            id: format!("g{i:0width$}").into(),
            extent,
        })
        .collect();
    Ok(Arrangement::new(1, None, boxes))
}
