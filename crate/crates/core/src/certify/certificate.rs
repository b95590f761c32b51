//! End-to-end certification that the geometric two-floor arrangement has
//! chromatic number exactly eight.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::conflict::{build_graph, ConflictGraph};
use crate::constructions::{build_z_abstract, build_z_geometric, check_embedding, floors, Gadget};
use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::hash::sha256_hex;
use crate::limits::SearchLimits;
use crate::solver::{export_cnf_seeded, k_colorable_par, verify_coloring, Coloring, Verdict};

use super::claims::{check_claim1, check_claim2, Claim1Report, Claim2Report};
use super::composition::{verify_composition, StructureReport};

/// Colors available to each floor of a one-floor arrangement.
pub const COLORS_PER_FLOOR: usize = 4;

#[derive(Clone, Debug, Default)]
pub struct CertifyOptions {
    pub limits: SearchLimits,
    pub jobs: usize,
    /// Where to write the seeded 7-colorability CNF of the abstract graph.
    pub cnf_path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorRecord {
    pub floor: i64,
    pub boxes: usize,
    pub components: usize,
    pub palette_offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperRecord {
    pub coloring: Coloring,
    pub palette: usize,
    pub floors: Vec<FloorRecord>,
    pub verified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub chi: usize,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim1: Claim1Report,
    pub claim2: Claim2Report,
    pub structure: StructureReport,
    pub upper: UpperRecord,
    pub conclusion: Conclusion,
    pub hashes: BTreeMap<String, String>,
}

fn stage_error(stage: &str, detail: impl Into<String>) -> Error {
    Error::Certification {
        stage: stage.into(),
        detail: detail.into(),
    }
}

/// Wraps any error from a stage so the failing stage is named.
fn at_stage<T>(stage: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::Certification { .. } => e,
        e => stage_error(stage, e.to_string()),
    })
}

/// Colors each floor with its own block of [`COLORS_PER_FLOOR`] colors and
/// verifies the union on the full graph.
pub fn color_by_floors(arr: &Arrangement, g: &ConflictGraph, limits: SearchLimits, jobs: usize) -> Result<UpperRecord> {
    let axis = arr
        .floor_axis
        .ok_or_else(|| Error::PreconditionViolated("arrangement has no floor axis".into()))?;
    let mut coloring = Coloring::new();
    let mut records = Vec::new();
    for (p, floor) in floors(arr)?.into_iter().enumerate() {
        let ids = arr
            .boxes
            .iter()
            .filter(|b| b.extent[axis].lo == floor)
            .map(|b| &b.id);
        let sub = g.induced_ids(ids)?;
        let offset = COLORS_PER_FLOOR * p;
        match k_colorable_par(&sub, COLORS_PER_FLOOR, limits, jobs)? {
            Verdict::Sat(c) => coloring.merge(c.shifted(offset)),
            Verdict::Unsat => {
                return Err(Error::Internal(format!(
                    "floor {floor} is not {COLORS_PER_FLOOR}-colorable"
                )))
            }
        }
        records.push(FloorRecord {
            floor,
            boxes: sub.len(),
            components: sub.components().len(),
            palette_offset: offset,
        });
    }
    let verified = verify_coloring(g, &coloring)?.is_proper();
    if !verified {
        return Err(Error::Internal("per-floor colorings conflict across floors".into()));
    }
    Ok(UpperRecord {
        palette: coloring.palette_size(),
        coloring,
        floors: records,
        verified,
    })
}

/// Runs both gadget lemmas, the structure check on the abstract graph, the
/// realization check of the geometric arrangement, and the per-floor upper
/// bound, then states `chi = 8`.
pub fn certify_z(opts: &CertifyOptions) -> Result<Certificate> {
    let x = Gadget::x();
    let y = Gadget::y();
    let claim1 = at_stage("claim1", check_claim1(&x))?;
    if !claim1.pass {
        return Err(stage_error("claim1", "a coloring of gadget X dominates no threshold"));
    }
    let claim2 = at_stage("claim2", check_claim2(&y, opts.limits))?;
    if !claim2.unsat {
        return Err(stage_error("claim2", "gadget Y has a coloring with three colors per region"));
    }

    let (abstract_graph, zs) = at_stage("abstract", build_z_abstract())?;
    let lower = at_stage(
        "structure",
        verify_composition(&zs, &abstract_graph, &y, &claim1, &claim2),
    )?;
    let lower_bound = lower
        .conclusion
        .ok_or_else(|| stage_error("structure", "no lower bound concluded"))?
        .chi_at_least;

    let geometric = at_stage("realization", build_z_geometric())?;
    let geometric_graph = at_stage("realization", build_graph(&geometric))?;
    at_stage("realization", check_embedding(&abstract_graph, &geometric_graph))?;

    let upper = at_stage(
        "upper",
        color_by_floors(&geometric, &geometric_graph, opts.limits, opts.jobs),
    )?;
    if upper.palette > lower_bound {
        return Err(stage_error(
            "upper",
            format!("palette {} exceeds the lower bound {lower_bound}", upper.palette),
        ));
    }

    let mut hashes = lower.hashes;
    hashes.insert("z_geometric_arrangement".into(), geometric.content_hash());
    hashes.insert("z_geometric_graph".into(), geometric_graph.content_hash());
    if let Some(path) = &opts.cnf_path {
        let cnf = at_stage(
            "cnf",
            export_cnf_seeded(&abstract_graph, lower_bound - 1, opts.limits),
        )?;
        at_stage("cnf", std::fs::write(path, &cnf).map_err(Error::from))?;
        hashes.insert("z_abstract_cnf".into(), sha256_hex(cnf.as_bytes()));
    }

    Ok(Certificate {
        claim1: lower.claim1,
        claim2: lower.claim2,
        structure: lower.structure,
        conclusion: Conclusion {
            chi: lower_bound,
            lower: lower_bound,
            upper: upper.palette,
        },
        upper,
        hashes,
    })
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-checks the recorded verdicts and the upper-bound coloring against
    /// `g` without rebuilding any geometry.
    pub fn replay(&self, g: &ConflictGraph) -> Result<()> {
        let fail = |detail: &str| Err(stage_error("replay", detail));
        if !(self.claim1.pass && self.claim2.unsat && self.structure.pass) {
            return fail("a recorded lemma or structure check did not pass");
        }
        if self.hashes.get("z_geometric_graph").map(String::as_str) != Some(g.content_hash().as_str()) {
            return fail("graph hash does not match the certificate");
        }
        if verify_coloring(g, &self.upper.coloring)? != crate::solver::ColoringCheck::Proper {
            return fail("recorded coloring is not proper");
        }
        let c = self.conclusion;
        if self.upper.coloring.palette_size() > c.upper || c.upper > c.lower || c.lower != c.chi {
            return fail("conclusion is inconsistent with its bounds");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_gadget_y;
    use crate::geometry::Coord;
    use crate::solver::chromatic_number;

    #[test]
    fn floors_of_gadget_y_need_four_colors() {
        let y = build_gadget_y();
        let g = build_graph(&y).unwrap();
        let upper = color_by_floors(&y, &g, SearchLimits::UNLIMITED, 1).unwrap();
        assert!(upper.verified);
        assert_eq!(upper.palette, 4);
        assert_eq!(upper.floors.len(), 1);
    }

    #[test]
    fn bottom_floor_of_z_has_chromatic_number_four() {
        let z = build_z_geometric().unwrap();
        let g = build_graph(&z).unwrap();
        let bottom = z.boxes.iter().filter(|b| b.extent[2].lo == 0 as Coord).map(|b| &b.id);
        let sub = g.induced_ids(bottom).unwrap();
        assert_eq!(sub.len(), 7 * 21);
        assert_eq!(chromatic_number(&sub, SearchLimits::UNLIMITED).unwrap().0, 4);
    }
}
