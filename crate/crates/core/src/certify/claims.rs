//! Exhaustive checkers for the two gadget lemmas.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::Gadget;
use crate::error::Result;
use crate::limits::{SearchLimits, SearchStats};
use crate::solver::{
    capped_coloring, enumerate_proper_colorings, CapConstraint, Coloring, Verdict,
    DEFAULT_ENUMERATION_CAP,
};

use super::signature::{signature, signature_geq, Signature, CLAIM1_THRESHOLDS};

/// Outcome of replaying the signature lemma on a gadget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim1Report {
    /// Number of proper colorings enumerated, up to renaming of colors.
    pub colorings: u64,
    pub pass: bool,
    pub thresholds: Vec<Signature>,
    /// First coloring whose signature dominates no threshold.
    pub counterexample: Option<(Coloring, Signature)>,
    pub gadget_hash: String,
}

/// Outcome of the capped search: `unsat` means every proper coloring uses
/// four or more colors on some region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim2Report {
    pub unsat: bool,
    pub region_cap: usize,
    pub stats: SearchStats,
    pub counterexample: Option<Coloring>,
    pub gadget_hash: String,
}

pub const CLAIM2_REGION_CAP: usize = 3;

/// Enumerates every proper coloring of the gadget and checks that its
/// signature dominates one of [`CLAIM1_THRESHOLDS`].
pub fn check_claim1(gadget: &Gadget) -> Result<Claim1Report> {
    let g = &gadget.graph;
    let [r1, r2, r3] = &gadget.regions;
    let mut colorings = 0u64;
    let mut counterexample = None;
    for colors in enumerate_proper_colorings(g, DEFAULT_ENUMERATION_CAP)? {
        colorings += 1;
        if counterexample.is_some() {
            continue;
        }
        let c = Coloring::from_indices(g, &colors);
        let s = signature(&c, [r1, r2, r3])?;
        if !CLAIM1_THRESHOLDS.iter().any(|t| signature_geq(&s, t)) {
            counterexample = Some((c, s));
        }
    }
    Ok(Claim1Report {
        colorings,
        pass: counterexample.is_none(),
        thresholds: CLAIM1_THRESHOLDS.to_vec(),
        counterexample,
        gadget_hash: g.content_hash(),
    })
}

/// Searches for a proper coloring using at most three colors on each of the
/// gadget's regions. Passes when none exists.
pub fn check_claim2(gadget: &Gadget, limits: SearchLimits) -> Result<Claim2Report> {
    let names = ["1", "2", "3"];
    let regions: BTreeMap<String, _> = names
        .iter()
        .zip(&gadget.regions)
        .map(|(n, r)| (n.to_string(), r.clone()))
        .collect();
    let caps = CapConstraint::uniform(names, CLAIM2_REGION_CAP)?;
    let (verdict, stats) = capped_coloring(&gadget.graph, &regions, &caps, limits)?;
    let counterexample = match verdict {
        Verdict::Sat(c) => Some(c),
        Verdict::Unsat => None,
    };
    Ok(Claim2Report {
        unsat: counterexample.is_none(),
        region_cap: CLAIM2_REGION_CAP,
        stats,
        counterexample,
        gadget_hash: gadget.graph.content_hash(),
    })
}
