//! Seeded generators for 2-LO colorable linear test instances.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, RankedColoring};
use crate::rng::{substream, Prng};
use crate::sdp::VectorSolution;

/// A hypergraph shipped with a hidden 2-LO coloring (ranks 1 and 2).
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Hypergraph,
    pub planted: RankedColoring,
    pub seed: u64,
}

/// A perfectly balanced vector solution: every γ equals -1/3.
#[derive(Debug, Clone)]
pub struct BalancedCertificate {
    pub solution: VectorSolution,
    /// Part index (0 = A, 1 = B, 2 = C) of every vertex.
    pub parts: Vec<u8>,
}

const ATTEMPTS_PER_EDGE: usize = 100;

/// Tracks vertex pairs already covered so new edges keep the graph linear.
struct LinearEdges {
    pairs: HashSet<(usize, usize)>,
    edges: Vec<Edge>,
}

impl LinearEdges {
    fn new() -> Self {
        LinearEdges {
            pairs: HashSet::new(),
            edges: Vec::new(),
        }
    }

    fn try_add(&mut self, e: Edge) -> bool {
        let mut s = e;
        s.sort_unstable();
        let ps = [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])];
        if ps.iter().any(|p| self.pairs.contains(p)) {
            return false;
        }
        self.pairs.extend(ps);
        self.edges.push(s);
        true
    }
}

fn sample_edges(
    m: usize,
    rng: &mut Prng,
    mut draw: impl FnMut(&mut Prng) -> Edge,
) -> Result<Vec<Edge>> {
    let budget = ATTEMPTS_PER_EDGE * m;
    let mut acc = LinearEdges::new();
    let mut attempts = 0;
    while acc.edges.len() < m && attempts < budget {
        attempts += 1;
        acc.try_add(draw(rng));
    }
    if acc.edges.len() < m {
        return Err(Error::Generation {
            requested: m,
            placed: acc.edges.len(),
            attempts,
        });
    }
    Ok(acc.edges)
}

fn distinct_pair(rng: &mut Prng, pool: &[usize]) -> (usize, usize) {
    let i = rng.below(pool.len());
    let mut j = rng.below(pool.len() - 1);
    if j >= i {
        j += 1;
    }
    (pool[i], pool[j])
}

/// Random linear hypergraph in which every edge has exactly one rank-2
/// vertex and two rank-1 vertices.
///
/// About a third of the vertices (at least one, leaving at least two) form
/// the rank-2 class.
pub fn gen_planted(n: usize, m: usize, seed: u64) -> Result<PlantedInstance> {
    let mut rng = Prng::new(substream(seed, "gen-planted"));
    if m > 0 && n < 3 {
        return Err(Error::Generation {
            requested: m,
            placed: 0,
            attempts: 0,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let top = ((n as f64 / 3.0).round() as usize).max(1).min(n.saturating_sub(2));
    let (high, low) = order.split_at(top);
    let (high, low) = (high.to_vec(), low.to_vec());

    let edges = sample_edges(m, &mut rng, |rng| {
        let x = high[rng.below(high.len())];
        let (y, z) = distinct_pair(rng, &low);
        [x, y, z]
    })?;

    let mut planted = RankedColoring::new(n);
    for v in 0..n {
        planted.assign(v, 1);
    }
    for &v in &high {
        planted.assign(v, 2);
    }
    Ok(PlantedInstance {
        graph: Hypergraph::new(n, edges)?,
        planted,
        seed,
    })
}

/// Linear tripartite instance with an exactly balanced certificate.
///
/// Every edge takes one vertex from each of three equal parts. The planted
/// coloring gives part A rank 2. The certificate lives in dimension 3:
/// `v∅ = e0` and `v_x = -e0/3 + (2√2/3)·u_part` with the three planar
/// directions at mutual angle 120°.
pub fn gen_balanced_tripartite(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<(PlantedInstance, BalancedCertificate)> {
    if n % 3 != 0 {
        return Err(Error::InvalidParameter(format!(
            "tripartite instances need n divisible by 3, got {n}"
        )));
    }
    let mut rng = Prng::new(substream(seed, "gen-balanced"));
    if m > 0 && n == 0 {
        return Err(Error::Generation {
            requested: m,
            placed: 0,
            attempts: 0,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let k = n / 3;
    let parts_lists = [&order[..k], &order[k..2 * k], &order[2 * k..]];
    let mut parts = vec![0u8; n];
    for (p, list) in parts_lists.iter().enumerate() {
        for &v in list.iter() {
            parts[v] = p as u8;
        }
    }

    let edges = sample_edges(m, &mut rng, |rng| {
        [
            parts_lists[0][rng.below(k)],
            parts_lists[1][rng.below(k)],
            parts_lists[2][rng.below(k)],
        ]
    })?;

    let planted = RankedColoring::from_ranks(parts.iter().map(|&p| if p == 0 { 2 } else { 1 }));
    let graph = Hypergraph::new(n, edges)?;

    let s = 3f64.sqrt() / 2.0;
    let dirs = [[1.0, 0.0], [-0.5, s], [-0.5, -s]];
    let scale = 2.0 * 2f64.sqrt() / 3.0;
    let rows: Vec<Vec<f64>> = parts
        .iter()
        .map(|&p| {
            let u = dirs[p as usize];
            vec![-1.0 / 3.0, scale * u[0], scale * u[1]]
        })
        .collect();
    let solution = VectorSolution::from_rows(&graph, vec![1.0, 0.0, 0.0], &rows, 1e-12);

    Ok((
        PlantedInstance {
            graph,
            planted,
            seed,
        },
        BalancedCertificate { solution, parts },
    ))
}

/// Integral certificate in dimension 1: `v_a = +v∅` on rank-2 vertices and
/// `-v∅` elsewhere, so every edge sums to `1 - 1 - 1 = -1` exactly.
pub fn plant_rank1_certificate(inst: &PlantedInstance) -> VectorSolution {
    let rows: Vec<Vec<f64>> = (0..inst.graph.n())
        .map(|v| {
            if inst.planted.rank(v) == Some(2) {
                vec![1.0]
            } else {
                vec![-1.0]
            }
        })
        .collect();
    VectorSolution::from_rows(&inst.graph, vec![1.0], &rows, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_instance() {
        let inst = gen_planted(3, 1, 0).unwrap();
        assert_eq!(inst.graph.num_edges(), 1);
        let mut ranks: Vec<i64> = (0..3).map(|v| inst.planted.rank(v).unwrap()).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![1, 1, 2]);
    }

    #[test]
    fn planted_instances_are_valid() {
        let inst = gen_planted(30, 40, 7).unwrap();
        assert_eq!(inst.graph.num_edges(), 40);
        assert!(inst.graph.is_linear());
        assert!(inst.graph.check_lo(&inst.planted).unwrap());
    }

    #[test]
    fn k4_family_is_rejected() {
        assert!(matches!(gen_planted(4, 4, 0), Err(Error::Generation { .. })));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_planted(40, 50, 11).unwrap();
        let b = gen_planted(40, 50, 11).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.planted, b.planted);
        let c = gen_planted(40, 50, 12).unwrap();
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn balanced_certificate_is_exact() {
        let (inst, cert) = gen_balanced_tripartite(30, 25, 1).unwrap();
        assert!(inst.graph.is_linear());
        assert!(inst.graph.check_lo(&inst.planted).unwrap());
        let sol = &cert.solution;
        assert_eq!(sol.d, 3);
        for a in 0..30 {
            let v = sol.vector(a);
            let sq: f64 = v.iter().map(|x| x * x).sum();
            assert!((sq - 1.0).abs() < 1e-15);
            assert!((v[0] + 1.0 / 3.0).abs() < 1e-15);
        }
        assert!(sol.norm_residual <= 1e-12 && sol.edge_residual <= 1e-12);
        assert!(gen_balanced_tripartite(31, 5, 1).is_err());
    }

    #[test]
    fn rank1_certificate_is_exact() {
        let inst = gen_planted(30, 40, 7).unwrap();
        let sol = plant_rank1_certificate(&inst);
        assert_eq!((sol.norm_residual, sol.edge_residual), (0.0, 0.0));
    }
}
