//! Even independent sets (`|S ∩ e| ∈ {0, 2}`) for dense linear hypergraphs.
//!
//! In a linear hypergraph the link of a vertex `v` (the pairs `e \ {v}` for
//! edges `e ∋ v`) is a perfect matching on `2·deg(v)` vertices. The link is
//! used as a starting set, and pairs are then removed until every edge meets
//! the set an even number of times.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::oracle::brute_max_even_is;

/// Seed vertices tried, highest degree first.
pub const MAX_SEEDS: usize = 20;
/// Instances this small fall back to exhaustive search when the heuristic
/// comes out short.
pub const BRUTE_FALLBACK_MAX_N: usize = 16;

/// Largest even independent set found from up to [`MAX_SEEDS`] link
/// seeds. Returned sorted.
pub fn even_independent_set(h: &Hypergraph, delta: f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut best: Vec<usize> = Vec::new();
    for &v in order.iter().take(MAX_SEEDS) {
        let s = repair(h, link_pairs(h, v));
        if s.len() > best.len() {
            best = s;
        }
    }
    let target = (h.n() as f64 * delta).sqrt() / 2.0;
    if h.n() <= BRUTE_FALLBACK_MAX_N && (best.len() as f64) < target {
        if let Ok(exact) = brute_max_even_is(h) {
            if exact.len() > best.len() {
                best = exact;
            }
        }
    }
    best
}

/// Pairs `e \ {v}`; on non-linear input, pairs overlapping an earlier one
/// are skipped so the pairs stay disjoint.
fn link_pairs(h: &Hypergraph, v: usize) -> Vec<[usize; 2]> {
    let mut used = vec![false; h.n()];
    let mut pairs = Vec::new();
    for &e in h.incident(v) {
        let e = h.edge(e);
        let mut rest = e.iter().copied().filter(|&x| x != v);
        let p = [rest.next().unwrap(), rest.next().unwrap()];
        if !used[p[0]] && !used[p[1]] {
            used[p[0]] = true;
            used[p[1]] = true;
            pairs.push(p);
        }
    }
    pairs
}

/// Drops whole pairs until the union is an even independent set. Each step
/// removes the pair with the best net change in violated edges (ties by
/// smallest vertex id) among pairs touching a violated edge.
fn repair(h: &Hypergraph, mut pairs: Vec<[usize; 2]>) -> Vec<usize> {
    let mut inside = vec![false; h.n()];
    let mut count = vec![0u8; h.num_edges()];
    for p in &pairs {
        for &x in p {
            inside[x] = true;
            for &e in h.incident(x) {
                count[e] += 1;
            }
        }
    }
    loop {
        if count.iter().all(|c| c % 2 == 0) {
            break;
        }
        let mut pick: Option<(i64, usize, usize)> = None; // (score, min id, index)
        for (i, p) in pairs.iter().enumerate() {
            let mut touches_violated = false;
            let mut score = 0i64;
            for &x in p {
                for &e in h.incident(x) {
                    if count[e] % 2 == 1 {
                        touches_violated = true;
                    }
                    if h.edge(e).contains(&p[0]) && h.edge(e).contains(&p[1]) {
                        continue;
                    }
                    if count[e] % 2 == 1 {
                        score += 1;
                    } else {
                        score -= 1;
                    }
                }
            }
            if !touches_violated {
                continue;
            }
            let key = (score, p[0].min(p[1]), i);
            let better = match pick {
                None => true,
                Some((s, m, _)) => score > s || (score == s && key.1 < m),
            };
            if better {
                pick = Some(key);
            }
        }
        let Some((_, _, i)) = pick else { break };
        let p = pairs.swap_remove(i);
        for &x in &p {
            inside[x] = false;
            for &e in h.incident(x) {
                count[e] -= 1;
            }
        }
    }
    (0..h.n()).filter(|&v| inside[v]).collect()
}

/// `|S| / √(|V|·Δ)`; errors if `S` is not even independent.
pub fn even_is_quality(h: &Hypergraph, set: &[usize], delta: f64) -> Result<f64> {
    if let Some(edge) = h.first_even_violation(set) {
        return Err(Error::NotIndependent { kind: "even", edge });
    }
    let scale = (h.n() as f64 * delta).sqrt();
    if set.is_empty() || scale == 0.0 {
        return Ok(0.0);
    }
    Ok(set.len() as f64 / scale)
}
