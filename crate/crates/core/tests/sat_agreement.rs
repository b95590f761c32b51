mod common;

use boxchrom::constructions::gen_random_guillotine;
use boxchrom::solver::{
    decode_model, export_cnf, export_cnf_seeded, k_colorable, run_external_sat, verify_coloring, SatOutcome,
};
use boxchrom::{build_graph, ConflictGraph, SearchLimits};

use common::{cube, random_graph, sat_command};

fn agree(g: &ConflictGraph, k: usize, cmd: &str, dir: &tempfile::TempDir, seeded: bool) -> bool {
    let internal = k_colorable(g, k, SearchLimits::UNLIMITED).unwrap().is_sat();
    let cnf = if seeded {
        export_cnf_seeded(g, k, SearchLimits::UNLIMITED).unwrap()
    } else {
        export_cnf(g, k, &[]).unwrap()
    };
    let path = dir.path().join("instance.cnf");
    std::fs::write(&path, cnf).unwrap();
    let external = match run_external_sat(&path, cmd).unwrap() {
        SatOutcome::Sat(model) => {
            let c = decode_model(g, k, &model).unwrap();
            assert!(verify_coloring(g, &c).unwrap().is_proper());
            true
        }
        SatOutcome::Unsat => false,
    };
    internal == external
}

#[test]
fn internal_and_external_verdicts_agree() {
    let Some(cmd) = sat_command() else {
        eprintln!("no external SAT solver available; agreement not checked");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let mut instances = 0;
    let mut sat = 0;
    for seed in 0..16u64 {
        let g = random_graph(seed, 6 + seed as usize % 8, 0.45);
        for k in 2..=4 {
            assert!(agree(&g, k, &cmd, &dir, seed % 2 == 0), "seed {seed} k {k}");
            sat += usize::from(k_colorable(&g, k, SearchLimits::UNLIMITED).unwrap().is_sat());
            instances += 1;
        }
    }
    for seed in 0..6u64 {
        let g = build_graph(&gen_random_guillotine(seed, 20, cube(8), 1).unwrap()).unwrap();
        for k in [3, 4] {
            assert!(agree(&g, k, &cmd, &dir, true), "guillotine seed {seed} k {k}");
            instances += 1;
        }
    }
    assert!(instances >= 20);
    assert!(sat > 0 && sat < 48, "instance mix should contain both verdicts");
}
