#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use boxchrom::geometry::{Arrangement, Interval};
use boxchrom::{BoxId, ConflictGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// External solver command: `BOXCHROM_SAT_CMD` if set, otherwise the bundled
/// pysat wrapper when pysat is importable.
pub fn sat_command() -> Option<String> {
    if let Ok(cmd) = std::env::var("BOXCHROM_SAT_CMD") {
        return Some(cmd);
    }
    let ok = Command::new("python3")
        .args(["-c", "import pysat"])
        .output()
        .is_ok_and(|o| o.status.success());
    ok.then(|| {
        format!(
            "python3 {}",
            repo_root().join("python/dimacs_pysat.py").display()
        )
    })
}

pub fn random_graph(seed: u64, n: usize, p: f64) -> ConflictGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = |i: usize| BoxId(format!("v{i:02}"));
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((name(u), name(v)));
            }
        }
    }
    ConflictGraph::from_edges((0..n).map(name), edges, None).unwrap()
}

/// Renames every box with a random bijection onto `r000..`.
pub fn relabel(arr: &Arrangement, seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names: Vec<BoxId> = (0..arr.len()).map(|i| BoxId(format!("r{i:03}"))).collect();
    names.shuffle(&mut rng);
    let map: std::collections::HashMap<BoxId, BoxId> = arr
        .boxes
        .iter()
        .map(|b| b.id.clone())
        .zip(names)
        .collect();
    let mut out = arr.clone();
    for b in &mut out.boxes {
        b.id = map[&b.id].clone();
    }
    for members in out.regions.values_mut() {
        *members = members.iter().map(|id| map[id].clone()).collect();
    }
    out
}

pub fn cube(side: i64) -> [Interval; 3] {
    [Interval::new(0, side); 3]
}

/// Number of proper colorings with colors `0..k`, by trying every map.
pub fn brute_force_count(g: &ConflictGraph, k: usize) -> u64 {
    let n = g.len();
    if k == 0 {
        return u64::from(n == 0);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut colors = vec![0usize; n];
    let mut count = 0;
    loop {
        if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

/// Proper colorings up to renaming of colors, by inclusion-exclusion over
/// brute-force counts.
pub fn partitions_into_independent_sets(g: &ConflictGraph) -> u64 {
    let n = g.len();
    if n == 0 {
        return 1;
    }
    let counts: Vec<i128> = (0..=n).map(|k| brute_force_count(g, k) as i128).collect();
    let binom = |a: usize, b: usize| -> i128 { (0..b).fold(1i128, |acc, i| acc * (a - i) as i128 / (i + 1) as i128) };
    let mut total = 0i128;
    let mut fact = 1i128;
    for k in 1..=n {
        fact *= k as i128;
        let surjective: i128 = (0..=k)
            .map(|j| {
                let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                sign * binom(k, j) * counts[j]
            })
            .sum();
        assert_eq!(surjective % fact, 0);
        total += surjective / fact;
    }
    total as u64
}
