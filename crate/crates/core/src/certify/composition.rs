//! The pigeonhole composition that lifts the gadget lemmas to a lower bound
//! on the whole two-floor graph.
//!
//! Every bottom copy has, by the capped-coloring lemma, a region `Yj` on
//! which at least four colors appear. With seven bottom copies and three
//! region indices, some `j` is shared by three copies `i1 < i2 < i3`. The
//! top copy `T(i2,j)` also has a four-colored region `k`, and that region
//! fully overlaps `Yj` of copy `ik`, so the two four-color sets are
//! disjoint.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::conflict::ConflictGraph;
use crate::constructions::{bottom_name, copy_id, Gadget, ZStructure};
use crate::error::{Error, Result};
use crate::geometry::BoxId;
use crate::hash::sha256_hex;

use super::claims::{Claim1Report, Claim2Report, CLAIM2_REGION_CAP};

/// Number of region indices per gadget.
const REGIONS: usize = 3;

/// Bottom copies needed so that some region index is forced on three of them.
pub const REQUIRED_BOTTOM_COPIES: usize = REGIONS * (REGIONS - 1) + 1;

/// True iff every box of `s` is adjacent to every box of `t`.
pub fn full_overlap(g: &ConflictGraph, s: &BTreeSet<BoxId>, t: &BTreeSet<BoxId>) -> Result<bool> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptyRegion("full-overlap operand is empty".into()));
    }
    if let Some(shared) = s.intersection(t).next() {
        return Err(Error::PreconditionViolated(format!(
            "full-overlap operands share `{shared}`"
        )));
    }
    let s = g.indices_of(s)?;
    let t = g.indices_of(t)?;
    Ok(s.iter().all(|&u| t.iter().all(|&v| g.has_edge(u, v))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub copies: usize,
    pub bottom_copies: usize,
    pub required_bottom_copies: usize,
    /// Index triples `i1 < i2 < i3` examined, over all region indices.
    pub triples: usize,
    /// Distinct (top region, bottom region) pairs found fully overlapping.
    pub overlaps: usize,
    pub pass: bool,
}

fn structure_error(premise: char, detail: impl Into<String>) -> Error {
    Error::Structure {
        premise,
        detail: detail.into(),
    }
}

/// Premise (a): every copy induces exactly the template graph under the id
/// bijection, and its recorded regions are the template regions.
fn check_copies(zs: &ZStructure, g: &ConflictGraph, template: &Gadget) -> Result<usize> {
    let tv = template.graph.vertices();
    let copies = zs
        .bottom
        .iter()
        .map(|c| (&c.name, &c.regions))
        .chain(zs.top.iter().map(|t| (&t.name, &t.regions)));
    let mut count = 0;
    for (name, regions) in copies {
        let idx = tv
            .iter()
            .map(|id| {
                g.index_of(&copy_id(name, id))
                    .ok_or_else(|| structure_error('a', format!("copy {name} lacks box `{id}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        for u in 0..tv.len() {
            for v in u + 1..tv.len() {
                if g.has_edge(idx[u], idx[v]) != template.graph.has_edge(u, v) {
                    return Err(structure_error(
                        'a',
                        format!("copy {name} differs from the template at {} -- {}", tv[u], tv[v]),
                    ));
                }
            }
        }
        for (k, (got, want)) in regions.iter().zip(&template.regions).enumerate() {
            let want: BTreeSet<BoxId> = want.iter().map(|id| copy_id(name, id)).collect();
            if *got != want {
                return Err(structure_error('a', format!("copy {name} region {} is wrong", k + 1)));
            }
        }
        count += 1;
    }
    Ok(count)
}

/// Checks the three structural premises; the first failure is returned as
/// [`Error::Structure`].
pub fn check_structure(zs: &ZStructure, g: &ConflictGraph, template: &Gadget) -> Result<StructureReport> {
    let copies = check_copies(zs, g, template)?;

    let n = zs.bottom.len();
    for (b, copy) in zs.bottom.iter().enumerate() {
        if copy.name != bottom_name(b + 1) {
            return Err(structure_error('b', format!("bottom copy {} is named {}", b + 1, copy.name)));
        }
    }
    let mut verified: HashMap<(usize, usize, usize, usize), bool> = HashMap::new();
    let mut triples = 0;
    for j in 1..=REGIONS {
        for i1 in 1..=n {
            for i2 in i1 + 1..=n {
                for i3 in i2 + 1..=n {
                    triples += 1;
                    let top = zs.top_copy(i2, j).ok_or_else(|| {
                        structure_error('b', format!("no top copy for middle index {i2} and region {j}"))
                    })?;
                    for (k, ik) in [i1, i2, i3].into_iter().enumerate() {
                        let key = (i2, j, k, ik);
                        let ok = match verified.get(&key) {
                            Some(&ok) => ok,
                            None => {
                                let ok = full_overlap(g, &top.regions[k], &zs.bottom[ik - 1].regions[j - 1])?;
                                verified.insert(key, ok);
                                ok
                            }
                        };
                        if !ok {
                            return Err(structure_error(
                                'b',
                                format!(
                                    "region {} of {} does not fully overlap region {j} of {}",
                                    k + 1,
                                    top.name,
                                    bottom_name(ik)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    if n < REQUIRED_BOTTOM_COPIES {
        return Err(structure_error(
            'c',
            format!("{n} bottom copies, pigeonhole needs {REQUIRED_BOTTOM_COPIES}"),
        ));
    }
    Ok(StructureReport {
        copies,
        bottom_copies: n,
        required_bottom_copies: REQUIRED_BOTTOM_COPIES,
        triples,
        overlaps: verified.len(),
        pass: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub chi_at_least: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCertificate {
    pub claim1: Claim1Report,
    pub claim2: Claim2Report,
    pub structure: StructureReport,
    /// Present only when both lemmas and the structure check pass.
    pub conclusion: Option<LowerBound>,
    pub hashes: BTreeMap<String, String>,
}

/// Combines the lemma reports with the structure check on `g`.
///
/// `claim2` must have been produced on `template`; a mismatch is reported
/// as a certification failure.
pub fn verify_composition(
    zs: &ZStructure,
    g: &ConflictGraph,
    template: &Gadget,
    claim1: &Claim1Report,
    claim2: &Claim2Report,
) -> Result<LowerBoundCertificate> {
    let template_hash = template.graph.content_hash();
    if claim2.gadget_hash != template_hash {
        return Err(Error::Certification {
            stage: "claim2".into(),
            detail: "report was produced on a different gadget".into(),
        });
    }
    let structure = check_structure(zs, g, template)?;
    let conclusion = (claim1.pass && claim2.unsat && structure.pass).then_some(LowerBound {
        chi_at_least: 2 * (CLAIM2_REGION_CAP + 1),
    });
    let hashes = BTreeMap::from([
        ("gadget_x_graph".to_owned(), claim1.gadget_hash.clone()),
        ("gadget_y_graph".to_owned(), template_hash),
        ("z_graph".to_owned(), g.content_hash()),
        ("z_structure".to_owned(), sha256_hex(zs.to_json().as_bytes())),
    ]);
    Ok(LowerBoundCertificate {
        claim1: claim1.clone(),
        claim2: claim2.clone(),
        structure,
        conclusion,
        hashes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{check_claim1, check_claim2};
    use crate::constructions::{build_z_abstract, build_z_abstract_from, top_name};
    use crate::limits::SearchLimits;

    fn ids(names: &[&str]) -> BTreeSet<BoxId> {
        names.iter().map(|&n| BoxId::from(n)).collect()
    }

    fn bipartite(missing: Option<(&str, &str)>) -> ConflictGraph {
        let mut edges = Vec::new();
        for a in ["a1", "a2"] {
            for b in ["b1", "b2"] {
                if missing != Some((a, b)) {
                    edges.push((BoxId::from(a), BoxId::from(b)));
                }
            }
        }
        ConflictGraph::from_edges(ids(&["a1", "a2", "b1", "b2"]), edges, None).unwrap()
    }

    #[test]
    fn full_overlap_basics() {
        let (s, t) = (ids(&["a1", "a2"]), ids(&["b1", "b2"]));
        assert!(full_overlap(&bipartite(None), &s, &t).unwrap());
        assert!(!full_overlap(&bipartite(Some(("a2", "b1"))), &s, &t).unwrap());
        assert!(matches!(
            full_overlap(&bipartite(None), &BTreeSet::new(), &t),
            Err(Error::EmptyRegion(_))
        ));
        assert!(full_overlap(&bipartite(None), &s, &s).is_err());
    }

    fn lemmas() -> (Gadget, Claim1Report, Claim2Report) {
        let y = Gadget::y();
        let c1 = check_claim1(&Gadget::x()).unwrap();
        let c2 = check_claim2(&y, SearchLimits::UNLIMITED).unwrap();
        (y, c1, c2)
    }

    #[test]
    fn abstract_z_needs_eight_colors() {
        let (y, c1, c2) = lemmas();
        let (g, zs) = build_z_abstract().unwrap();
        let cert = verify_composition(&zs, &g, &y, &c1, &c2).unwrap();
        assert_eq!(cert.conclusion, Some(LowerBound { chi_at_least: 8 }));
        assert_eq!(cert.structure.copies, 22);
        assert_eq!(cert.structure.triples, 3 * 35);
    }

    #[test]
    fn removing_one_demand_breaks_premise_b() {
        let (y, c1, c2) = lemmas();
        let (g, zs) = build_z_abstract().unwrap();
        let top = zs.top_copy(4, 2).unwrap();
        let drop: Vec<(BoxId, BoxId)> = (5..=7)
            .flat_map(|b| {
                let bottom = &zs.bottom[b - 1].regions[1];
                top.regions[2]
                    .iter()
                    .flat_map(move |u| bottom.iter().map(move |v| (u.clone(), v.clone())))
            })
            .collect();
        let g = g.without_edges(&drop);
        let err = verify_composition(&zs, &g, &y, &c1, &c2).unwrap_err();
        assert!(matches!(err, Error::Structure { premise: 'b', .. }), "{err}");
        assert_eq!(top.name, top_name(4, 2));
    }

    #[test]
    fn six_bottom_copies_break_premise_c() {
        let (y, c1, c2) = lemmas();
        let (g, zs) = build_z_abstract_from(&y, 6).unwrap();
        let err = verify_composition(&zs, &g, &y, &c1, &c2).unwrap_err();
        assert!(matches!(err, Error::Structure { premise: 'c', .. }), "{err}");
    }

    #[test]
    fn failed_lemma_withholds_conclusion() {
        let (y, c1, mut c2) = lemmas();
        c2.unsat = false;
        let (g, zs) = build_z_abstract().unwrap();
        let cert = verify_composition(&zs, &g, &y, &c1, &c2).unwrap();
        assert_eq!(cert.conclusion, None);
    }

    #[test]
    fn extra_edge_inside_a_copy_breaks_premise_a() {
        let (y, c1, c2) = lemmas();
        let (g, zs) = build_z_abstract().unwrap();
        let mut edges = g.edge_ids();
        edges.push((BoxId::from("B3/x1.t"), BoxId::from("B3/x3.a")));
        let g = ConflictGraph::from_edges(g.vertices().to_vec(), edges, None).unwrap();
        let err = verify_composition(&zs, &g, &y, &c1, &c2).unwrap_err();
        assert!(matches!(err, Error::Structure { premise: 'a', .. }), "{err}");
    }
}
