use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

use lo_chroma::combround::{combinatorial_rounding, interval, interval_closed_form};
use lo_chroma::evenset::even_independent_set;
use lo_chroma::gaussround::{gcap, gcap_inv, sample_round, two_sided_round};
use lo_chroma::instances::{gen_balanced_tripartite, gen_planted, plant_rank1_certificate};
use lo_chroma::io::{format_coloring, format_h3, parse_coloring, parse_h3};
use lo_chroma::pipeline::{extend_with_even, extend_with_odd};
use lo_chroma::rng::Prng;
use lo_chroma::sdp::{ortho_profile, GammaProfile};
use lo_chroma::{lift_coloring, Edge, Hypergraph, RankedColoring};

/// Unique-maximum check written out directly.
fn lo_ok(h: &Hypergraph, c: &RankedColoring) -> bool {
    h.edges().iter().all(|e| {
        let r: Vec<i64> = e.iter().map(|&v| c.rank(v).unwrap()).collect();
        let max = *r.iter().max().unwrap();
        r.iter().filter(|&&x| x == max).count() == 1
    })
}

/// Exactly-one-per-edge subsets, by enumeration (n ≤ 12).
fn two_lo_colorable(h: &Hypergraph) -> bool {
    (0u32..1 << h.n()).any(|mask| {
        h.edges()
            .iter()
            .all(|e| e.iter().filter(|&&v| mask >> v & 1 == 1).count() == 1)
    })
}

fn small_hypergraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (3..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 0..n), 0..=max_m).prop_map(move |raw| {
            let mut edges: Vec<Edge> = Vec::new();
            for (a, b, c) in raw {
                let mut e = [a, b, c];
                e.sort_unstable();
                if e[0] != e[1] && e[1] != e[2] && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            Hypergraph::new(n, edges).unwrap()
        })
    })
}

/// Edge-consistent γ (every edge sums to -1) on a planted instance:
/// a blend of the planted ±1 values with -1/3, plus a random vector from
/// the null space of the edge-vertex incidence matrix.
fn consistent_gammas(h: &Hypergraph, planted: &RankedColoring, seed: u64) -> Vec<f64> {
    let mut rng = Prng::new(seed);
    let lambda = 0.6 * rng.uniform();
    let mut b = DMatrix::<f64>::zeros(h.num_edges(), h.n());
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            b[(i, v)] = 1.0;
        }
    }
    let eig = SymmetricEigen::new(b.transpose() * &b);
    let mut delta = vec![0.0; h.n()];
    for (k, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev.abs() < 1e-9 {
            let z = rng.gaussian();
            for (v, d) in delta.iter_mut().enumerate() {
                *d += z * eig.eigenvectors[(v, k)];
            }
        }
    }
    let base: Vec<f64> = (0..h.n())
        .map(|v| {
            let p = if planted.rank(v) == Some(2) { 1.0 } else { -1.0 };
            lambda * p + (1.0 - lambda) * (-1.0 / 3.0)
        })
        .collect();
    let mut room = f64::INFINITY;
    for v in 0..h.n() {
        if delta[v].abs() > 1e-12 {
            room = room.min((1.0 - base[v].abs()) / delta[v].abs());
        }
    }
    let s = if room.is_finite() { room * rng.uniform() } else { 0.0 };
    (0..h.n()).map(|v| base[v] + s * delta[v]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planted_coloring_is_lo(n in 6usize..80, ratio in 0.2f64..1.5, seed in 0u64..1000) {
        let m = (ratio * n as f64) as usize;
        if let Ok(inst) = gen_planted(n, m, seed) {
            prop_assert!(inst.graph.is_linear());
            prop_assert!(lo_ok(&inst.graph, &inst.planted));
            prop_assert!(inst.graph.check_lo(&inst.planted).unwrap());
        }
    }

    #[test]
    fn check_lo_matches_direct_check(h in small_hypergraph(9, 12), ranks in prop::collection::vec(1i64..4, 9)) {
        let c = RankedColoring::from_ranks(ranks[..h.n()].iter().copied());
        prop_assert_eq!(h.check_lo(&c).unwrap(), lo_ok(&h, &c));
    }

    #[test]
    fn normalize_and_shift_keep_validity(h in small_hypergraph(9, 12), ranks in prop::collection::vec(-5i64..9, 9), shift in -20i64..20) {
        let c = RankedColoring::from_ranks(ranks[..h.n()].iter().copied());
        let valid = h.check_lo(&c).unwrap();
        let norm = c.normalized();
        prop_assert_eq!(h.check_lo(&norm).unwrap(), valid);
        prop_assert_eq!(h.check_lo(&c.shifted(shift)).unwrap(), valid);
        prop_assert_eq!(norm.min_rank(), Some(1));
        prop_assert_eq!(norm.max_rank(), Some(c.num_colors() as i64));
    }

    #[test]
    fn h3_and_coloring_roundtrip(h in small_hypergraph(12, 15), ranks in prop::collection::vec(prop::option::of(1i64..50), 12)) {
        let back = parse_h3(&format_h3(&h)).unwrap();
        prop_assert_eq!(back.n(), h.n());
        prop_assert_eq!(back.edges(), h.edges());
        let c = RankedColoring::from_partial(ranks[..h.n()].to_vec());
        let cb = parse_coloring(&format_coloring(&c), h.n()).unwrap();
        prop_assert_eq!(cb.as_slice(), c.as_slice());
    }

    #[test]
    fn linearization_preserves_two_lo_colorability(h in small_hypergraph(9, 10)) {
        let colorable = two_lo_colorable(&h);
        match h.make_linear() {
            Ok((lin, map)) => {
                prop_assert!(lin.is_linear());
                prop_assert_eq!(two_lo_colorable(&lin), colorable);
                if let Some(c) = lo_chroma::oracle::brute_lo(&lin, 2).unwrap() {
                    let lifted = lift_coloring(&map, &c).unwrap();
                    prop_assert!(lo_ok(&h, &lifted));
                }
            }
            Err(_) => prop_assert!(!colorable),
        }
    }

    #[test]
    fn intervals_nest_and_match_closed_form(j in 0u32..90) {
        let a = interval(j);
        prop_assert_eq!(a, interval_closed_form(j));
        let b = interval(j + 1);
        prop_assert!(a.lower() <= b.lower() && b.upper() <= a.upper());
        prop_assert!(((a.upper() - a.lower()) - 2.0 * (b.upper() - b.lower())).abs() <= f64::EPSILON);
    }

    #[test]
    fn bisection_sets_are_odd_on_consistent_gammas(n in 9usize..60, seed in 0u64..1000, eps_exp in 2i32..7) {
        let Ok(inst) = gen_planted(n, n / 2, seed) else { return Ok(()) };
        let h = &inst.graph;
        let gamma = consistent_gammas(h, &inst.planted, seed ^ 0xabc);
        let profile = GammaProfile::from_gammas(gamma, 10f64.powi(-eps_exp));
        let r = combinatorial_rounding(h, &profile, 1e-12).unwrap();
        prop_assert!(h.check_partial_lo(&r.coloring));
        // S_{j+1} is odd within the edges whose vertices all remain in I_j
        let mut remaining: Vec<usize> = (0..h.n()).collect();
        for s in &r.sets {
            let sub = h.induced(&remaining);
            let local: Vec<usize> = s.iter().map(|&v| sub.vertices.binary_search(&v).unwrap()).collect();
            prop_assert!(sub.graph.check_odd_is(&local));
            remaining.retain(|v| !s.contains(v));
        }
        for v in r.uncolored() {
            prop_assert!(profile.is_balanced(v));
        }
    }

    #[test]
    fn extensions_stay_valid(n in 9usize..40, seed in 0u64..500, pick in 0u64..1000) {
        let Ok(inst) = gen_planted(n, n, seed) else { return Ok(()) };
        let h = &inst.graph;
        let mut rng = Prng::new(pick);
        // a partial LO coloring: rank-2 planted vertices plus random rank-1 ones
        let mut c = RankedColoring::new(h.n());
        for v in 0..h.n() {
            if inst.planted.rank(v) == Some(2) || rng.uniform() < 0.3 {
                c.assign(v, inst.planted.rank(v).unwrap());
            }
        }
        prop_assume!(h.check_partial_lo(&c));
        let rest: Vec<usize> = c.unassigned().collect();
        // greedy odd set among the rest
        let mut odd = Vec::new();
        for &v in &rest {
            odd.push(v);
            if !h.check_odd_is(&odd) {
                odd.pop();
            }
        }
        let ext = extend_with_odd(h, &c, &odd).unwrap();
        prop_assert!(h.check_partial_lo(&ext));
        let sub = h.induced(&rest);
        let even = even_independent_set(&sub.graph, 1.0);
        let even: Vec<usize> = even.iter().map(|&v| sub.vertices[v]).collect();
        if h.check_even_is(&even) {
            let ext = extend_with_even(h, &c, &even).unwrap();
            prop_assert!(h.check_partial_lo(&ext));
        }
    }

    #[test]
    fn even_sets_are_even(n in 9usize..80, seed in 0u64..500) {
        let Ok(inst) = gen_planted(n, n, seed) else { return Ok(()) };
        let d = inst.graph.degree_stats().delta_bar;
        prop_assert!(inst.graph.check_even_is(&even_independent_set(&inst.graph, d)));
    }

    #[test]
    fn threshold_draws_are_odd(k in 1usize..30, seed in 0u64..1000, t in 0.0f64..1.5) {
        let (inst, cert) = gen_balanced_tripartite(3 * k, k, seed).unwrap();
        let ortho = ortho_profile(&cert.solution);
        let d = sample_round(&inst.graph, &ortho, t, seed);
        prop_assert!(inst.graph.check_odd_is(&d.odd));
        prop_assert!(d.odd.iter().all(|v| d.selected.contains(v)));
    }

    #[test]
    fn two_sided_rounding_is_proper(k in 1usize..20, seed in 0u64..1000) {
        let (inst, cert) = gen_balanced_tripartite(3 * k, k, seed).unwrap();
        let c = two_sided_round(&inst.graph, &cert.solution, 1e-7, 64, seed).unwrap();
        prop_assert!(lo_chroma::gaussround::first_monochromatic(&inst.graph, &c.coloring).is_none());
        let r1 = plant_rank1_certificate(&inst);
        let c = two_sided_round(&inst.graph, &r1, 1e-7, 64, seed).unwrap();
        prop_assert!(lo_chroma::gaussround::first_monochromatic(&inst.graph, &c.coloring).is_none());
    }

    #[test]
    fn gcap_symmetry_and_inverse(t in -8.0f64..8.0, alpha in 1e-12f64..0.999) {
        prop_assert!((gcap(-t) - (1.0 - gcap(t))).abs() <= 1e-15);
        prop_assert!(gcap(t) >= gcap(t + 0.01));
        let x = gcap_inv(alpha).unwrap();
        prop_assert!((gcap(x) - alpha).abs() <= 1e-12);
    }
}
