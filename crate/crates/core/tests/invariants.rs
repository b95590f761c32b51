mod common;

use std::collections::BTreeSet;

use boxchrom::certify::{check_claim2, signature, Signature};
use boxchrom::constructions::{
    build_figure1, build_gadget_x, build_gadget_y, build_z_geometric, gen_random_guillotine, Gadget,
    GADGET_X_REGIONS, GADGET_Y_REGIONS,
};
use boxchrom::geometry::{AxisRemap, Coord, MonotoneMap};
use boxchrom::solver::{chromatic_number, enumerate_proper_colorings, Coloring};
use boxchrom::{build_graph, Arrangement, SearchLimits};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cube, partitions_into_independent_sets, random_graph, relabel};

/// A strictly increasing map through every coordinate used on `axis`.
fn random_monotone(arr: &Arrangement, axis: usize, rng: &mut ChaCha8Rng) -> MonotoneMap {
    let coords: BTreeSet<Coord> = arr
        .boxes
        .iter()
        .flat_map(|b| [b.extent[axis].lo, b.extent[axis].hi])
        .collect();
    let mut image = rng.random_range(-50..50);
    let points = coords
        .into_iter()
        .map(|c| {
            image += rng.random_range(1..20);
            (c, image)
        })
        .collect();
    MonotoneMap::new(points).unwrap()
}

fn random_remap(arr: &Arrangement, seed: u64) -> AxisRemap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = [0, 1, 2].map(|d| random_monotone(arr, d, &mut rng));
    let mut perm = [0, 1, 2];
    perm.shuffle(&mut rng);
    AxisRemap::new(maps).with_permutation(perm).unwrap()
}

#[test]
fn gadget_y_graph_is_invariant_under_100_remaps() {
    let y = build_gadget_y();
    let g = build_graph(&y).unwrap();
    for seed in 0..100 {
        let moved = y.remap(&random_remap(&y, seed)).unwrap();
        assert_eq!(build_graph(&moved).unwrap(), g, "seed {seed}");
        assert_eq!(moved.regions, y.regions);
        let gadget = Gadget::from_arrangement(&moved, GADGET_Y_REGIONS).unwrap();
        assert!(check_claim2(&gadget, SearchLimits::UNLIMITED).unwrap().unsat, "seed {seed}");
    }
}

#[test]
fn claim2_and_chromatic_number_are_invariant_under_relabeling() {
    let y = build_gadget_y();
    for seed in 0..20 {
        let renamed = relabel(&y, seed);
        let gadget = Gadget::from_arrangement(&renamed, GADGET_Y_REGIONS).unwrap();
        assert!(check_claim2(&gadget, SearchLimits::UNLIMITED).unwrap().unsat);
        assert_eq!(chromatic_number(&gadget.graph, SearchLimits::UNLIMITED).unwrap().0, 4);
    }
    let x = build_gadget_x();
    for seed in 0..20 {
        let gadget = Gadget::from_arrangement(&relabel(&x, seed), GADGET_X_REGIONS).unwrap();
        assert!(!check_claim2(&gadget, SearchLimits::UNLIMITED).unwrap().unsat);
    }
}

#[test]
fn enumeration_of_gadget_x_matches_inclusion_exclusion() {
    let g = build_graph(&build_gadget_x()).unwrap();
    let oracle = partitions_into_independent_sets(&g);
    assert_eq!(enumerate_proper_colorings(&g, 12).unwrap().count() as u64, oracle);
    assert_eq!(oracle, 51);
}

#[test]
fn every_gadget_x_signature_is_consistent() {
    let x = Gadget::x();
    let [r1, r2, r3] = &x.regions;
    for colors in enumerate_proper_colorings(&x.graph, 12).unwrap() {
        let c = Coloring::from_indices(&x.graph, &colors);
        assert!(signature(&c, [r1, r2, r3]).unwrap().is_consistent());
    }
    let distinct: Coloring = x.graph.vertices().iter().cloned().zip(0..).collect();
    assert_eq!(signature(&distinct, [r1, r2, r3]).unwrap(), Signature::new(4, 5, 4, 6, 5));
}

#[test]
fn clique_number_is_at_most_four_on_generated_arrangements() {
    for seed in 0..60 {
        let arr = gen_random_guillotine(seed, 50 + (seed as usize % 30), cube(14), 1).unwrap();
        let g = build_graph(&arr).unwrap();
        assert!(g.clique_number(SearchLimits::UNLIMITED).unwrap() <= 4, "seed {seed}");
    }
    for arr in [build_gadget_x(), build_gadget_y(), build_figure1(), build_z_geometric().unwrap()] {
        let g = build_graph(&arr).unwrap();
        assert!(g.clique_number(SearchLimits::UNLIMITED).unwrap() <= 4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumeration_count_matches_brute_force(seed in any::<u64>(), n in 1usize..=8, p in 0.0f64..1.0) {
        let g = random_graph(seed, n, p);
        let listed = enumerate_proper_colorings(&g, 12).unwrap().count() as u64;
        prop_assert_eq!(listed, partitions_into_independent_sets(&g));
    }

    #[test]
    fn guillotine_json_round_trips(seed in any::<u64>(), count in 1usize..40) {
        let arr = gen_random_guillotine(seed, count, cube(10), 1).unwrap();
        prop_assert_eq!(Arrangement::from_json(&arr.to_json()).unwrap(), arr);
    }

    #[test]
    fn chromatic_number_survives_relabeling(seed in 0u64..1000) {
        let arr = gen_random_guillotine(seed, 30, cube(9), 1).unwrap();
        let a = chromatic_number(&build_graph(&arr).unwrap(), SearchLimits::UNLIMITED).unwrap().0;
        let b = chromatic_number(&build_graph(&relabel(&arr, seed)).unwrap(), SearchLimits::UNLIMITED).unwrap().0;
        prop_assert_eq!(a, b);
    }
}
