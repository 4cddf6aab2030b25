use itertools::Itertools;
use proptest::prelude::*;

use turan_core::constructions::{
    fores_construction, greedy_free_packing, steiner_triple_system, validate_design,
};
use turan_core::embed::{
    automorphism_count, blowup_contains, canonical_form, contains, count_copies, count_embeddings,
    is_free, is_isomorphic, suspension_free_via_links,
};
use turan_core::search::{max_edges_bnb, max_edges_oracle, Engine, SearchProblem};
use turan_core::{blowup, link, make_pattern, suspend, Hypergraph};

fn from_mask(n: usize, r: usize, mask: &[bool]) -> Hypergraph {
    let edges: Vec<Vec<usize>> = (0..n)
        .combinations(r)
        .zip(mask)
        .filter(|(_, &b)| b)
        .map(|(e, _)| e)
        .collect();
    Hypergraph::new(n, r, edges).unwrap()
}

/// Random `r`-graph on `lo..=hi` vertices with edge density about `p`.
fn hypergraph(lo: usize, hi: usize, r: usize, p: f64) -> impl Strategy<Value = Hypergraph> {
    (lo..=hi).prop_flat_map(move |n| {
        let m = (0..n).combinations(r).count();
        proptest::collection::vec(proptest::bool::weighted(p), m)
            .prop_map(move |mask| from_mask(n, r, &mask))
    })
}

fn with_perm(h: Hypergraph) -> impl Strategy<Value = (Hypergraph, Vec<usize>)> {
    let n = h.n();
    (Just(h), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

/// Every injective edge-preserving map, by direct enumeration.
fn brute_force_maps(host: &Hypergraph, pattern: &Hypergraph) -> u64 {
    (0..host.n())
        .permutations(pattern.n())
        .filter(|map| {
            pattern.edges().iter().all(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                img.sort_unstable();
                host.edges().contains(&img)
            })
        })
        .count() as u64
}

fn brute_force_iso(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && brute_force_maps(b, a) > 0
}

fn subgraph_of(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.edges().iter().all(|e| b.has_edge(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn link_undoes_suspend(f in hypergraph(1, 7, 2, 0.4), r in 3usize..=5) {
        let s = suspend(&f, r).unwrap();
        let apex: Vec<usize> = (f.n()..f.n() + r - 2).collect();
        let l = link(&s, &apex).unwrap();
        let back = l.induced(&(0..f.n()).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(back, f.clone());
        prop_assert_eq!(l.without_isolated(), f.without_isolated());
    }

    #[test]
    fn link_size_is_set_degree(h in hypergraph(3, 7, 3, 0.4), v in 0usize..7) {
        let v = v % h.n();
        let l = link(&h, &[v]).unwrap();
        let by_hand = h.edges().iter().filter(|e| e.contains(&v)).count();
        prop_assert_eq!(l.edge_count(), by_hand);
        prop_assert_eq!(h.set_degree(&[v]), by_hand);
        for e in l.edges() {
            let mut full = e.clone();
            full.push(v);
            full.sort_unstable();
            prop_assert!(h.has_edge(&full));
        }
    }

    #[test]
    fn link_of_pairs_in_4_graphs(h in hypergraph(4, 7, 4, 0.3), a in 0usize..7, b in 0usize..7) {
        let (a, b) = (a % h.n(), b % h.n());
        prop_assume!(a != b);
        let l = link(&h, &[a, b]).unwrap();
        prop_assert_eq!(l.r(), 2);
        prop_assert_eq!(l.edge_count(), h.edges().iter().filter(|e| e.contains(&a) && e.contains(&b)).count());
    }

    #[test]
    fn blowup_edge_count_and_monotonicity(
        h in hypergraph(3, 6, 3, 0.5),
        extra in proptest::collection::vec(any::<bool>(), 20),
        sizes in proptest::collection::vec(1i64..=3, 6),
    ) {
        let sizes = &sizes[..h.n()];
        let b = blowup(&h, sizes).unwrap();
        let expected: i64 = h.edges().iter().map(|e| e.iter().map(|&v| sizes[v]).product::<i64>()).sum();
        prop_assert_eq!(b.edge_count() as i64, expected);
        prop_assert_eq!(b.n() as i64, sizes.iter().sum::<i64>());

        let more: Vec<Vec<usize>> = (0..h.n()).combinations(3).zip(&extra).filter(|(_, &x)| x).map(|(e, _)| e).collect();
        let h2 = Hypergraph::from_edges_dedup(h.n(), 3, h.edges().iter().cloned().chain(more)).unwrap();
        prop_assert!(subgraph_of(&b, &blowup(&h2, sizes).unwrap()));
    }

    #[test]
    fn unit_blowup_is_identity(h in hypergraph(1, 7, 3, 0.4)) {
        let b = blowup(&h, &vec![1; h.n()]).unwrap();
        prop_assert!(is_isomorphic(&b, &h).unwrap());
        prop_assert_eq!(b, h);
    }

    #[test]
    fn canonical_form_ignores_labels((h, perm) in hypergraph(1, 8, 3, 0.35).prop_flat_map(with_perm)) {
        let g = h.relabel(&perm, h.n()).unwrap();
        prop_assert_eq!(canonical_form(&h).unwrap(), canonical_form(&g).unwrap());
        prop_assert_eq!(automorphism_count(&h).unwrap(), automorphism_count(&g).unwrap());
    }

    #[test]
    fn isomorphism_matches_brute_force(a in hypergraph(5, 5, 3, 0.3), b in hypergraph(5, 5, 3, 0.3)) {
        prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), brute_force_iso(&a, &b));
    }

    #[test]
    fn copies_times_automorphisms_is_maps(host in hypergraph(3, 6, 3, 0.5), pat in hypergraph(3, 5, 3, 0.25)) {
        let maps = brute_force_maps(&host, &pat);
        prop_assert_eq!(count_embeddings(&host, &pat).unwrap(), maps);
        let aut = automorphism_count(&pat).unwrap() as u64;
        prop_assert_eq!(aut, brute_force_maps(&pat, &pat));
        prop_assert_eq!(count_copies(&host, &pat).unwrap() * aut, maps);
    }

    #[test]
    fn graph_copies_times_automorphisms_is_maps(host in hypergraph(2, 6, 2, 0.5), pat in hypergraph(2, 5, 2, 0.4)) {
        let maps = brute_force_maps(&host, &pat);
        let aut = automorphism_count(&pat).unwrap() as u64;
        prop_assert_eq!(count_copies(&host, &pat).unwrap() * aut, maps);
    }

    #[test]
    fn containment_agrees_with_enumeration_and_is_monotone(
        host in hypergraph(3, 6, 3, 0.4),
        pat in hypergraph(3, 5, 3, 0.3),
        extra in proptest::collection::vec(any::<bool>(), 20),
    ) {
        let found = contains(&host, &pat).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_maps(&host, &pat) > 0);
        if let Some(emb) = &found {
            prop_assert!(emb.is_valid(&host, &pat));
        }
        prop_assert_eq!(is_free(&host, &pat).unwrap(), found.is_none());
        let more: Vec<Vec<usize>> = (0..host.n()).combinations(3).zip(&extra).filter(|(_, &x)| x).map(|(e, _)| e).collect();
        let bigger = Hypergraph::from_edges_dedup(host.n(), 3, host.edges().iter().cloned().chain(more)).unwrap();
        if found.is_some() {
            prop_assert!(contains(&bigger, &pat).unwrap().is_some());
        }
    }

    #[test]
    fn links_decide_suspension_freeness(host in hypergraph(3, 7, 3, 0.35), f in hypergraph(1, 4, 2, 0.5)) {
        let direct = is_free(&host, &suspend(&f, 3).unwrap()).unwrap();
        prop_assert_eq!(suspension_free_via_links(&host, &f).unwrap(), direct);
    }

    #[test]
    fn blowup_witnesses_are_sound(h in hypergraph(3, 5, 3, 0.5), hp in hypergraph(3, 6, 3, 0.3)) {
        if let Some(w) = blowup_contains(&h, &hp).unwrap() {
            prop_assert!(w.is_valid(&h, &hp));
            let big = blowup(&h, &w.blowup_sizes()).unwrap();
            prop_assert!(w.embedding().is_valid(&big, &hp));
            let s = w.s.max(1) as i64;
            prop_assert!(!is_free(&blowup(&h, &vec![s; h.n()]).unwrap(), &hp).unwrap());
        } else {
            // then no injective copy either
            prop_assert!(hp.n() > h.n() || contains(&h, &hp).unwrap().is_none());
        }
    }

    #[test]
    fn pattern_building_is_deterministic(k in 1usize..6, l in 3usize..8, t in 1usize..4) {
        let spec = format!("S3(P{k}+C{l})+S3(K{k}+M{t})");
        prop_assert_eq!(make_pattern(&spec).unwrap(), make_pattern(&spec).unwrap());
    }

    #[test]
    fn json_round_trip(h in hypergraph(0, 8, 3, 0.3)) {
        prop_assert_eq!(Hypergraph::from_json(&h.to_json()).unwrap(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engines_agree_on_random_families(n in 3usize..=6, f in hypergraph(2, 4, 2, 0.6)) {
        prop_assume!(f.edge_count() > 0);
        let pattern = suspend(&f, 3).unwrap();
        let a = max_edges_oracle(&SearchProblem::new(n, 3, vec![pattern.clone()], Engine::Oracle).unwrap()).unwrap();
        let b = max_edges_bnb(&SearchProblem::new(n, 3, vec![pattern.clone()], Engine::BranchAndBound).unwrap()).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(&a.witness, &b.witness);
        prop_assert_eq!(b.witness.edge_count(), b.value);
        prop_assert!(is_free(&b.witness, &pattern).unwrap());
        // a greedy packing is a lower bound
        prop_assert!(greedy_free_packing(n, 3, &[pattern]).unwrap().edge_count() <= b.value);
    }
}

#[test]
fn search_value_is_monotone_in_n() {
    for spec in ["S3(K3)", "S3(P3)", "S3(M2)", "S3(P3+K2)"] {
        let pattern = make_pattern(spec).unwrap();
        let values: Vec<usize> = (3..=7)
            .map(|n| {
                let p = SearchProblem::new(n, 3, vec![pattern.clone()], Engine::BranchAndBound)
                    .unwrap();
                max_edges_bnb(&p).unwrap().value
            })
            .collect();
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]),
            "{spec}: {values:?}"
        );
    }
}

#[test]
fn admissible_systems_are_designs() {
    for m in (7..=21).filter(|m| m % 6 == 1 || m % 6 == 3) {
        let s = steiner_triple_system(m).unwrap();
        assert!(validate_design(&s, 2, 1).unwrap(), "m = {m}");
        assert!(s.is_linear());
    }
}

#[test]
fn construction_is_free_across_sizes() {
    let pattern = make_pattern("S3(P3+K2)").unwrap();
    for n in 9..=17 {
        let h = fores_construction(n).unwrap();
        assert!(suspension_free_via_links(&h, &make_pattern("P3+K2").unwrap()).unwrap());
        if n <= 13 {
            assert!(is_free(&h, &pattern).unwrap(), "n = {n}");
        }
    }
}
