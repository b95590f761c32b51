use boxchrom::certify::{
    certify_z, check_claim1, check_claim2, full_overlap, Certificate, CertifyOptions, Signature,
};
use boxchrom::constructions::{
    build_gadget_x, build_z_abstract, build_z_geometric, Gadget, GADGET_X_REGIONS,
};
use boxchrom::{build_graph, BoxId, ConflictGraph, Error, SearchLimits};

#[test]
fn certificate_round_trips_and_replays_from_graph_json() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("z7.cnf");
    let cert = certify_z(&CertifyOptions {
        cnf_path: Some(cnf.clone()),
        jobs: 2,
        ..CertifyOptions::default()
    })
    .unwrap();
    assert_eq!((cert.conclusion.chi, cert.conclusion.lower, cert.conclusion.upper), (8, 8, 8));
    assert!(std::fs::read_to_string(&cnf).unwrap().starts_with("p cnf 3234 "));
    assert!(cert.hashes.contains_key("z_abstract_cnf"));

    let json = cert.to_json();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in ["claim1", "claim2", "structure", "upper", "conclusion", "hashes"] {
        assert!(value.get(key).is_some(), "{key}");
    }
    assert_eq!(value["conclusion"]["chi"], 8);
    assert!(value["upper"]["coloring"].is_object());

    let graph_json = build_graph(&build_z_geometric().unwrap()).unwrap().to_edges_json();
    let g = ConflictGraph::from_edges_json(&graph_json).unwrap();
    let back = Certificate::from_json(&json).unwrap();
    assert_eq!(back, cert);
    back.replay(&g).unwrap();

    let mut tampered = back.clone();
    let (id, color) = {
        let (id, c) = tampered.upper.coloring.iter().next().unwrap();
        (id.clone(), c)
    };
    let neighbor = g.id(g.neighbors(g.index_of(&id).unwrap())[0]).clone();
    tampered.upper.coloring.set(neighbor, color);
    assert!(tampered.replay(&g).is_err());

    let (abstract_graph, _) = build_z_abstract().unwrap();
    assert_eq!(abstract_graph, g, "the layout adds no contacts beyond the demands");
    let first = g.edge_ids()[0].clone();
    assert!(back.replay(&g.without_edges(&[first])).is_err());
}

#[test]
fn every_geometric_demand_is_a_full_overlap() {
    let (_, zs) = build_z_abstract().unwrap();
    let g = build_graph(&build_z_geometric().unwrap()).unwrap();
    for d in &zs.demands {
        let top = zs.bottom.len();
        let t = zs.top.iter().find(|t| t.name == d.top).unwrap();
        assert!(d.bottom <= top);
        assert!(full_overlap(&g, &t.regions[d.k - 1], &zs.bottom[d.bottom - 1].regions[d.j - 1]).unwrap());
    }
}

#[test]
fn gadget_x_without_its_top_strip_fails_claim1() {
    let mut arr = build_gadget_x();
    let t = BoxId::from("t");
    arr.boxes.retain(|b| b.id != t);
    for members in arr.regions.values_mut() {
        members.remove(&t);
    }
    let r = check_claim1(&Gadget::from_arrangement(&arr, GADGET_X_REGIONS).unwrap()).unwrap();
    assert!(!r.pass);
    assert_eq!(r.colorings, 20);
    assert_eq!(r.counterexample.unwrap().1, Signature::new(2, 3, 3, 3, 2));
}

#[test]
fn gadget_y_minus_one_link_still_satisfies_claim2() {
    let y = Gadget::y();
    for (a, b) in [("x1.a", "x2.t"), ("x2.a", "x3.t")] {
        assert!(y.graph.has_edge_ids(&a.into(), &b.into()));
        let weakened = Gadget {
            graph: y.graph.without_edges(&[(a.into(), b.into())]),
            regions: y.regions.clone(),
        };
        let r = check_claim2(&weakened, SearchLimits::UNLIMITED).unwrap();
        assert!(r.unsat, "{a} -- {b}");
    }
}

#[test]
fn claim2_respects_its_budget() {
    let err = check_claim2(&Gadget::y(), SearchLimits::with_max_nodes(5)).unwrap_err();
    assert!(matches!(err, Error::Timeout(_)));
}
