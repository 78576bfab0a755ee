//! Cross-module property suite: structural invariants that must hold for
//! arbitrary inputs, not just the worked examples.

use proptest::prelude::*;

use walkalign::graph::{disjoint_union, Graph};
use walkalign::crosssim::{normalized_cosine, SeedEntry, SeedList, SourceTag};
use walkalign::mixer::{mix, AbsentScorePolicy, MixConfig};
use walkalign::align::{build_alignment, AlignParams, Provenance};
use walkalign::structsim::StructuralHierarchy;

fn arb_edges() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((0u8..12, 0u8..12), 1..40)
}

fn edges_to_graph(edges: &[(u8, u8)]) -> Option<Graph> {
    let named: Vec<(String, String)> = edges
        .iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (format!("v{a}"), format!("v{b}")))
        .collect();
    if named.is_empty() {
        return None;
    }
    let refs: Vec<(&str, &str)> = named.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Graph::from_edges(&refs).ok()
}

proptest! {
    #[test]
    fn degree_sum_is_twice_edge_count(edges in arb_edges()) {
        if let Some(g) = edges_to_graph(&edges) {
            g.validate().unwrap();
            let total: usize = g.node_ids().map(|v| g.degree(v).unwrap()).sum();
            prop_assert_eq!(total, 2 * g.edge_count());
        }
    }

    #[test]
    fn edge_list_round_trip_is_isomorphic(edges in arb_edges()) {
        if let Some(g) = edges_to_graph(&edges) {
            let mut buf = Vec::new();
            g.write_edge_list(&mut buf).unwrap();
            let (g2, _) = Graph::load_edge_list(buf.as_slice()).unwrap();
            prop_assert_eq!(g.node_count(), g2.node_count());
            prop_assert_eq!(g.edge_count(), g2.edge_count());
            for v in g.node_ids() {
                let w = g2.node_id(g.name(v)).unwrap();
                let mut n1: Vec<&str> = g.neighbors(v).iter().map(|&x| g.name(x)).collect();
                let mut n2: Vec<&str> = g2.neighbors(w).iter().map(|&x| g2.name(x)).collect();
                n1.sort_unstable();
                n2.sort_unstable();
                prop_assert_eq!(n1, n2);
            }
        }
    }

    #[test]
    fn structural_distance_symmetric_and_monotone(edges in prop::collection::vec((0u8..8, 0u8..8), 1..16)) {
        if let Some(g) = edges_to_graph(&edges) {
            let u = disjoint_union(&g, &g);
            let h = StructuralHierarchy::compute(&u, 3);
            let n = u.node_count() as u32;
            for a in 0..n {
                for b in (a + 1)..n {
                    let levels = h.pair_levels(a, b);
                    for k in 0..levels.len() {
                        prop_assert_eq!(h.f(a, b, k), h.f(b, a, k));
                        if k > 0 {
                            prop_assert!(levels[k] >= levels[k - 1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cosine_bounds_symmetry_scale(a in prop::collection::vec(-10.0f64..10.0, 4),
                                    b in prop::collection::vec(-10.0f64..10.0, 4),
                                    scale in 0.001f64..1000.0) {
        let nz = |v: &[f64]| v.iter().any(|&x| x != 0.0);
        if nz(&a) && nz(&b) {
            let c = normalized_cosine(&a, &b).unwrap();
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!((c - normalized_cosine(&b, &a).unwrap()).abs() < 1e-12);
            let scaled: Vec<f64> = a.iter().map(|x| x * scale).collect();
            prop_assert!((c - normalized_cosine(&scaled, &b).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn mix_is_monotone_and_bounded(s_emb in 0.0f64..1.0, s_w in 0.0f64..1.0,
                                   bump in 0.0f64..0.5, lambda in 0.0f64..1.0) {
        let entry = |w: f64| {
            SeedList::from_entries(SourceTag::Embedding, vec![SeedEntry::new("a", "x", w)]).unwrap()
        };
        let cfg = MixConfig { lambda, policy: AbsentScorePolicy::Zero };
        let base = mix(&entry(s_emb), &entry(s_w), &cfg).unwrap().entries()[0].weight;
        prop_assert!((0.0..=1.0).contains(&base));
        let bumped = (s_emb + bump).min(1.0);
        let up = mix(&entry(bumped), &entry(s_w), &cfg).unwrap().entries()[0].weight;
        prop_assert!(up >= base - 1e-12);
    }

    #[test]
    fn mix_extremes_preserve_order_on_shared_pairs(
        weights in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 2..10)
    ) {
        let emb: Vec<SeedEntry> = weights
            .iter()
            .enumerate()
            .map(|(i, (we, _))| SeedEntry::new(format!("u{i}"), format!("v{i}"), *we))
            .collect();
        let ctx: Vec<SeedEntry> = weights
            .iter()
            .enumerate()
            .map(|(i, (_, wc))| SeedEntry::new(format!("u{i}"), format!("v{i}"), *wc))
            .collect();
        let m_emb = SeedList::from_entries(SourceTag::Embedding, emb).unwrap();
        let m_w = SeedList::from_entries(SourceTag::Contextual, ctx).unwrap();
        for (lambda, source) in [(1.0, &m_emb), (0.0, &m_w)] {
            let cfg = MixConfig { lambda, policy: AbsentScorePolicy::Drop };
            let mixed = mix(&m_emb, &m_w, &cfg).unwrap();
            // scores must match the selected source exactly, so relative
            // order on the shared pairs is reproduced
            for e in mixed.entries() {
                let orig = source
                    .entries()
                    .iter()
                    .find(|o| o.name1 == e.name1 && o.name2 == e.name2)
                    .unwrap();
                prop_assert!((e.weight - orig.weight).abs() < 1e-12);
            }
        }
    }
}

fn arb_seed_entries() -> impl Strategy<Value = Vec<(u8, u8, f64)>> {
    prop::collection::vec((0u8..10, 0u8..10, 0.0f64..1.0), 0..25)
}

proptest! {
    #[test]
    fn alignment_is_injective_and_deterministic(
        e1 in prop::collection::vec((0u8..10, 0u8..10), 1..20),
        e2 in prop::collection::vec((0u8..10, 0u8..10), 1..20),
        seeds in arb_seed_entries(),
        seed_t in 0.5f64..1.0,
        extend_margin in 0.0f64..0.5,
    ) {
        let (g1, g2) = match (edges_to_graph(&e1), edges_to_graph(&e2)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(()),
        };
        let mut uniq = std::collections::HashSet::new();
        let entries: Vec<SeedEntry> = seeds
            .iter()
            .filter(|(a, b, _)| uniq.insert((*a, *b)))
            .map(|(a, b, w)| SeedEntry::new(format!("v{a}"), format!("v{b}"), *w))
            .collect();
        let list = SeedList::from_entries(SourceTag::Mixed, entries).unwrap();
        let params = AlignParams {
            seed_threshold: seed_t,
            extend_threshold: (seed_t - extend_margin).max(0.0),
            max_seeds: 50,
            min_component_size: 1,
        };
        let a1 = build_alignment(&g1, &g2, &list, &params).unwrap();
        let a2 = build_alignment(&g1, &g2, &list, &params).unwrap();
        prop_assert_eq!(&a1, &a2);
        let mut seen1 = std::collections::HashSet::new();
        let mut seen2 = std::collections::HashSet::new();
        for p in &a1.pairs {
            prop_assert!(seen1.insert(p.name1.clone()), "name1 {} repeated", p.name1);
            prop_assert!(seen2.insert(p.name2.clone()), "name2 {} repeated", p.name2);
        }
    }

    #[test]
    fn seed_admissions_nest_across_thresholds(
        e1 in prop::collection::vec((0u8..8, 0u8..8), 1..15),
        seeds in arb_seed_entries(),
        t_low in 0.3f64..0.6,
        t_gap in 0.0f64..0.4,
    ) {
        let g = match edges_to_graph(&e1) {
            Some(g) => g,
            None => return Ok(()),
        };
        let mut uniq = std::collections::HashSet::new();
        let entries: Vec<SeedEntry> = seeds
            .iter()
            .filter(|(a, b, _)| uniq.insert((*a, *b)))
            .map(|(a, b, w)| SeedEntry::new(format!("v{a}"), format!("v{b}"), *w))
            .collect();
        let list = SeedList::from_entries(SourceTag::Mixed, entries).unwrap();
        let t_high = (t_low + t_gap).min(1.0);
        let seeds_at = |t: f64| {
            let params = AlignParams {
                seed_threshold: t,
                extend_threshold: t.min(0.2),
                max_seeds: 40,
                min_component_size: 1,
            };
            let a = build_alignment(&g, &g, &list, &params).unwrap();
            a.pairs
                .iter()
                .filter(|p| p.provenance == Provenance::Seed)
                .map(|p| (p.name1.clone(), p.name2.clone()))
                .collect::<std::collections::HashSet<_>>()
        };
        let low = seeds_at(t_low);
        let high = seeds_at(t_high);
        prop_assert!(high.is_subset(&low), "raising the threshold added a seed");
    }
}
