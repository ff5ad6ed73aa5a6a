use proptest::prelude::*;

use lexconn::cuts::{self, Reading};
use lexconn::flow::{minimum_vertex_cut, vertex_connectivity};
use lexconn::harness::{
    random_graph, validate_certificate, verify_theorem, ClaimValue, DiscrepancyCertificate,
    InstanceFamily, TheoremId,
};
use lexconn::io::{parse_edge_list, parse_graph6, serialize_graph6, write_edge_list};
use lexconn::lexprod::{lex_connectivity, lex_k1_connectivity, lex_product};
use lexconn::{ExtendedNat, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| {
        let mut g = Graph::empty(n);
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> (k % 64) & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
                k += 1;
            }
        }
        g
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph(8)) {
        let text = serialize_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in graph(8)) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn isolated_vertices_iff_min_degree_zero(g in graph(8)) {
        prop_assert_eq!(g.isolated_vertices().is_empty(), g.min_degree().unwrap() >= 1);
    }

    #[test]
    fn kappa_at_most_min_degree(g in graph(8)) {
        prop_assert!(vertex_connectivity(&g).unwrap() <= g.min_degree().unwrap());
    }

    #[test]
    fn kappa_zero_iff_disconnected_or_trivial(g in graph(8)) {
        let zero = vertex_connectivity(&g).unwrap() == 0;
        prop_assert_eq!(zero, !g.is_connected().unwrap() || g.n() == 1);
    }

    #[test]
    fn flow_cut_is_a_minimum_cut(g in graph(8)) {
        let cut = minimum_vertex_cut(&g).unwrap();
        prop_assert_eq!(cut.len(), cuts::vertex_connectivity_oracle(&g).unwrap());
        if g.is_connected().unwrap() && !g.is_complete().unwrap() {
            prop_assert!(cuts::is_vertex_cut(&g, &cut).unwrap());
        }
    }

    #[test]
    fn product_connectivity_matches_flow(g1 in graph(5), g2 in graph(3)) {
        let p = lex_product(&g1, &g2).unwrap();
        prop_assert_eq!(lex_connectivity(&g1, &g2).unwrap(), vertex_connectivity(&p).unwrap());
    }

    #[test]
    fn product_k1_matches_oracle(g1 in graph(5), g2 in graph(3)) {
        prop_assume!(g1.is_connected().unwrap());
        let p = lex_product(&g1, &g2).unwrap();
        let fast = lex_k1_connectivity(&g1, &g2).unwrap();
        prop_assert_eq!(fast.value, cuts::k1_connectivity(&p).unwrap());
    }
}

#[test]
fn random_reports_are_deterministic() {
    for t in [TheoremId::Thm21, TheoremId::Cor24, TheoremId::SuperPart3] {
        let fam = InstanceFamily::random(5, 4, 60, 17, 0.5);
        let a = verify_theorem(t, &fam, Reading::MinCutsOnly).unwrap().without_timing();
        let b = verify_theorem(t, &fam, Reading::MinCutsOnly).unwrap().without_timing();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.seed, Some(17));
        assert_eq!(a.instances_checked + a.skipped, 60);
    }
}

#[test]
fn different_seeds_draw_different_graphs() {
    let a: Vec<_> = (0..20).map(|s| random_graph(7, 0.5, s).unwrap()).collect();
    let distinct: std::collections::HashSet<_> = a.iter().collect();
    assert!(distinct.len() > 10);
}

#[test]
fn certificates_survive_json() {
    let fam = InstanceFamily::exhaustive(4, 2);
    let report = verify_theorem(TheoremId::Cor24, &fam, Reading::MinCutsOnly).unwrap();
    assert!(!report.discrepancies.is_empty());
    for cert in &report.discrepancies {
        let text = serde_json::to_string(cert).unwrap();
        let back: DiscrepancyCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, cert);
        assert!(validate_certificate(&back));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let fam = InstanceFamily::exhaustive(4, 2);
    let report = verify_theorem(TheoremId::Cor24, &fam, Reading::MinCutsOnly).unwrap();
    let mut cert = report.discrepancies[0].clone();
    cert.oracle_value = cert.formula_value;
    assert!(!validate_certificate(&cert));

    let mut cert = report.discrepancies[0].clone();
    cert.oracle_value = ClaimValue::Nat(ExtendedNat::Finite(0));
    assert!(!validate_certificate(&cert));
}

#[test]
fn lexicographic_product_is_not_commutative() {
    let p = Graph::path(3);
    let two = Graph::empty(2);
    let a = lex_product(&p, &two).unwrap();
    let b = lex_product(&two, &p).unwrap();
    assert!(a.is_connected().unwrap());
    assert!(!b.is_connected().unwrap());
    assert_eq!(lex_connectivity(&p, &two).unwrap(), 2);
    assert_eq!(lex_connectivity(&two, &p).unwrap(), 0);
}

#[test]
fn counterexample_product_is_not_super_connected() {
    let g1 = parse_edge_list("5 6\n0 1\n0 2\n1 2\n1 3\n1 4\n3 4\n").unwrap();
    let g2 = Graph::from_edges(3, [(0, 1)]).unwrap();
    let p = lex_product(&g1, &g2).unwrap();
    assert_eq!(vertex_connectivity(&p).unwrap(), 3);
    assert!(!cuts::is_super_connected(&p).unwrap().super_connected);
}
