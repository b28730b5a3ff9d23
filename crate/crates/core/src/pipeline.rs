//! End-to-end LO coloring.
//!
//! ```text
//! make_linear -> solve -> bisection on γ (unbalanced part)
//!             -> balanced part: N15 (odd/even set rounds) or LogN (perturb + bisection)
//!             -> combine -> lift -> normalize -> check
//! ```

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::combround::{balanced_log_coloring, combinatorial_rounding, PerturbConfig};
use crate::error::{Error, Result};
use crate::evenset::even_independent_set;
use crate::gaussround::{best_odd_is, default_reps, RoundingConfig};
use crate::hypergraph::{lift_coloring, Hypergraph, RankedColoring};
use crate::rng::{indexed, substream};
use crate::sdp::{gamma_profile, ortho_profile, solve_feasibility, OrthoProfile, SdpConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Alternating odd/even independent-set rounds.
    N15,
    /// Gaussian perturbation followed by a second bisection pass.
    LogN,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::N15 => "n15",
            Strategy::LogN => "logn",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "n15" => Ok(Strategy::N15),
            "logn" => Ok(Strategy::LogN),
            other => Err(Error::InvalidParameter(format!("unknown strategy `{other}`"))),
        }
    }
}

pub const DEFAULT_RETRY_BUDGET: usize = 64;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub strategy: Strategy,
    /// Balance radius for the first bisection pass.
    pub eps: f64,
    /// Forbidden-band radius after perturbation (LogN).
    pub eps_prime: f64,
    /// Even rounds run while `Δ̄ ≥ m^delta_exponent`.
    pub delta_exponent: f64,
    /// Solver settings; the seed is replaced by a substream of `seed`.
    pub sdp: SdpConfig,
    /// Draws per odd round; `None` means `16·⌈ln n⌉`.
    pub reps: Option<usize>,
    pub retry_budget: usize,
    pub delta_override: Option<f64>,
    pub alpha_override: Option<f64>,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            strategy: Strategy::LogN,
            eps: 1e-6,
            eps_prime: 1e-9,
            delta_exponent: 0.6,
            sdp: SdpConfig::default(),
            reps: None,
            retry_budget: DEFAULT_RETRY_BUDGET,
            delta_override: None,
            alpha_override: None,
            seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.delta_exponent > 0.0 && self.delta_exponent < 1.0) {
            return bad(format!("delta exponent must lie in (0, 1), got {}", self.delta_exponent));
        }
        if !(self.sdp.tol > 0.0) {
            return bad(format!("solver tolerance must be positive, got {}", self.sdp.tol));
        }
        if !(self.eps >= 100.0 * self.sdp.tol && self.eps < 2.0 / 3.0) {
            return bad(format!("ε = {} must lie in [100·τ, 2/3) with τ = {}", self.eps, self.sdp.tol));
        }
        if !(self.eps_prime > 0.0 && self.eps_prime < 2.0 / 3.0) {
            return bad(format!("ε' must lie in (0, 2/3), got {}", self.eps_prime));
        }
        if self.reps == Some(0) || self.retry_budget == 0 {
            return bad("reps and retry budget must be at least 1".into());
        }
        if let Some(a) = self.alpha_override {
            if !(a > 0.0 && a < 1.0) {
                return bad(format!("α override must lie in (0, 1), got {a}"));
            }
        }
        Ok(())
    }
}

fn fresh_rank_above(c: &RankedColoring) -> i64 {
    c.max_rank().map_or(1, |r| r + 1)
}

fn fresh_rank_below(c: &RankedColoring) -> i64 {
    c.min_rank().map_or(1, |r| r - 1)
}

/// Edges of `h` lying inside `c`'s domain plus `set`, with their `set`
/// hit counts.
fn hits_within(h: &Hypergraph, c: &RankedColoring, set: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut in_set = vec![false; h.n()];
    for &v in set {
        if c.is_assigned(v) {
            return Err(Error::InvalidParameter(format!("vertex {v} is already colored")));
        }
        in_set[v] = true;
    }
    Ok(h.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.iter().all(|&v| in_set[v] || c.is_assigned(v)))
        .map(|(i, e)| (i, e.iter().filter(|&&v| in_set[v]).count()))
        .collect())
}

/// Gives all of `set` a rank above every rank of `c`. `set` must be odd
/// independent in the hypergraph induced on `c`'s domain plus `set`.
pub fn extend_with_odd(h: &Hypergraph, c: &RankedColoring, set: &[usize]) -> Result<RankedColoring> {
    if let Some(&(edge, _)) = hits_within(h, c, set)?.iter().find(|(_, k)| *k > 1) {
        return Err(Error::NotIndependent { kind: "odd", edge });
    }
    let mut out = c.clone();
    let r = fresh_rank_above(c);
    for &v in set {
        out.assign(v, r);
    }
    Ok(out)
}

/// Gives all of `set` a rank below every rank of `c`. `set` must be even
/// independent in the hypergraph induced on `c`'s domain plus `set`.
pub fn extend_with_even(h: &Hypergraph, c: &RankedColoring, set: &[usize]) -> Result<RankedColoring> {
    if let Some(&(edge, _)) = hits_within(h, c, set)?.iter().find(|(_, k)| k % 2 == 1) {
        return Err(Error::NotIndependent { kind: "even", edge });
    }
    let mut out = c.clone();
    let r = fresh_rank_below(c);
    for &v in set {
        out.assign(v, r);
    }
    Ok(out)
}

/// Puts `c_u` above `c_b` and checks the union is an LO coloring of `h`.
pub fn combine(h: &Hypergraph, c_u: &RankedColoring, c_b: &RankedColoring) -> Result<RankedColoring> {
    let shift = match (c_b.max_rank(), c_u.min_rank()) {
        (Some(top), Some(low)) => top - low + 1,
        _ => 0,
    };
    let mut out = c_u.shifted(shift);
    for v in c_b.domain() {
        if out.is_assigned(v) {
            return Err(Error::InvalidParameter(format!("vertex {v} colored in both parts")));
        }
        out.assign(v, c_b.rank(v).unwrap());
    }
    if let Some(edge) = h.first_lo_violation(&out)? {
        return Err(Error::Validity { stage: "combine", edge });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundKind {
    Odd,
    Even,
    /// Only vertices in no remaining edge.
    EdgeFree,
    /// Degenerate fallback: a single vertex taken as an odd set.
    Singleton,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Round {
    pub kind: RoundKind,
    /// Vertices remaining before the round.
    pub remaining: usize,
    pub delta_bar: f64,
    /// Vertices colored, including ones already edge-free.
    pub colored: usize,
}

#[derive(Debug, Clone)]
pub struct BalancedColoring {
    pub coloring: RankedColoring,
    pub rounds: Vec<Round>,
}

impl BalancedColoring {
    pub fn degenerate_rounds(&self) -> usize {
        self.rounds.iter().filter(|r| r.kind == RoundKind::Singleton).count()
    }
}

/// LO coloring of a balanced hypergraph by repeated odd/even set removal.
///
/// Each round takes an even set while `Δ̄ ≥ m^delta_exponent` (`m` the
/// remaining vertex count) and a threshold-rounded odd set otherwise.
/// Vertices that are already in no remaining edge join every round's set.
/// Odd rounds end above all later rounds, even rounds below.
pub fn color_balanced(h: &Hypergraph, ortho: &OrthoProfile, cfg: &PipelineConfig) -> Result<BalancedColoring> {
    let mut remaining: Vec<usize> = (0..h.n()).collect();
    let mut steps: Vec<(RoundKind, Vec<usize>)> = Vec::new();
    let mut rounds = Vec::new();
    let stream = substream(cfg.seed, "balanced-rounds");
    let reps = cfg.reps.unwrap_or_else(|| default_reps(h.n()));
    while !remaining.is_empty() {
        let ind = h.induced(&remaining);
        let g = &ind.graph;
        let stats = g.degree_stats();
        let edge_free: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
        let (kind, mut local) = if g.num_edges() == 0 {
            (RoundKind::EdgeFree, Vec::new())
        } else if stats.delta_bar >= (g.n() as f64).powf(cfg.delta_exponent) {
            (RoundKind::Even, even_independent_set(g, stats.delta_bar))
        } else {
            let delta = cfg.delta_override.unwrap_or(stats.delta_bar);
            let seed = indexed(stream, steps.len() as u64);
            let rc = match cfg.alpha_override {
                Some(a) => RoundingConfig::with_alpha(delta, a, reps, seed)?,
                None => RoundingConfig::new(delta, reps, seed)?,
            };
            let sub = ortho.restrict(&ind.vertices);
            (RoundKind::Odd, best_odd_is(g, &sub, &rc).set)
        };
        let kind = if local.is_empty() && kind != RoundKind::EdgeFree {
            if edge_free.is_empty() {
                // highest degree, smallest id
                let v = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
                local.push(v);
                RoundKind::Singleton
            } else {
                RoundKind::EdgeFree
            }
        } else {
            kind
        };
        local.extend(edge_free.iter().copied());
        local.sort_unstable();
        local.dedup();
        if local.is_empty() {
            return Err(Error::Stagnation { stage: "balanced" });
        }
        let set: Vec<usize> = local.iter().map(|&i| ind.vertices[i]).collect();
        rounds.push(Round {
            kind,
            remaining: remaining.len(),
            delta_bar: stats.delta_bar,
            colored: set.len(),
        });
        let mut drop = vec![false; h.n()];
        for &v in &set {
            drop[v] = true;
        }
        remaining.retain(|&v| !drop[v]);
        steps.push((kind, set));
    }

    let mut coloring = RankedColoring::new(h.n());
    for (kind, set) in steps.iter().rev() {
        coloring = match kind {
            RoundKind::Odd | RoundKind::Singleton => extend_with_odd(h, &coloring, set)?,
            RoundKind::Even | RoundKind::EdgeFree => extend_with_even(h, &coloring, set)?,
        };
    }
    if let Some(edge) = h.first_lo_violation(&coloring)? {
        return Err(Error::Validity { stage: "balanced", edge });
    }
    Ok(BalancedColoring { coloring, rounds })
}

/// Wall-clock time per stage.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Timings {
    pub linearize: Duration,
    pub solve: Duration,
    pub unbalanced: Duration,
    pub balanced: Duration,
    pub finish: Duration,
}

impl Timings {
    pub fn total(&self) -> Duration {
        self.linearize + self.solve + self.unbalanced + self.balanced + self.finish
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub n: usize,
    pub m: usize,
    /// Vertices merged away by linearization.
    pub merged: usize,
    pub strategy: Strategy,
    pub colors: usize,
    pub sdp_iters: usize,
    pub norm_residual: f64,
    pub edge_residual: f64,
    /// Vertices left for the balanced phase.
    pub balanced: usize,
    /// Ranks used by the bisection pass, counted before edge-free vertices
    /// move to the bottom rank (so it can exceed `colors`).
    pub unbalanced_colors: usize,
    pub balanced_colors: usize,
    /// Odd/even rounds (N15) or verification attempts (LogN).
    pub balanced_rounds: usize,
    pub degenerate_rounds: usize,
    pub timings: Timings,
    pub seed: u64,
}

/// Full LO coloring of a (promised) 2-LO colorable hypergraph.
pub fn lo_color(h: &Hypergraph, cfg: &PipelineConfig) -> Result<(RankedColoring, Report)> {
    cfg.validate()?;
    let mut timings = Timings::default();

    let clock = Instant::now();
    let (lin, map) = h.make_linear()?;
    let merged = (0..h.n()).filter(|&v| map.representative(v) != v).count();
    timings.linearize = clock.elapsed();

    let clock = Instant::now();
    let sdp = SdpConfig {
        seed: substream(cfg.seed, "sdp"),
        ..cfg.sdp.clone()
    };
    let sol = solve_feasibility(&lin, &sdp)?;
    timings.solve = clock.elapsed();

    let clock = Instant::now();
    let gamma = gamma_profile(&sol, cfg.eps);
    let unbalanced = combinatorial_rounding(&lin, &gamma, 3.0 * sdp.tol)?;
    let c_u = unbalanced.coloring;
    if let Some(edge) = lin.first_partial_lo_violation(&c_u) {
        return Err(Error::Validity { stage: "unbalanced", edge });
    }
    timings.unbalanced = clock.elapsed();

    let clock = Instant::now();
    let rest: Vec<usize> = c_u.unassigned().collect();
    let ind = lin.induced(&rest);
    let ortho = ortho_profile(&sol).restrict(&ind.vertices);
    let (local, rounds, degenerate) = match cfg.strategy {
        Strategy::N15 => {
            let b = color_balanced(&ind.graph, &ortho, cfg)?;
            let deg = b.degenerate_rounds();
            (b.coloring, b.rounds.len(), deg)
        }
        Strategy::LogN => {
            let pc = PerturbConfig {
                eps: cfg.eps,
                eps_prime: cfg.eps_prime,
                tol: sdp.tol,
                retry_budget: cfg.retry_budget,
                seed: substream(cfg.seed, "balanced-log"),
            };
            let b = balanced_log_coloring(&ind.graph, &gamma.restrict(&ind.vertices), &ortho, &pc)?;
            (b.coloring, b.attempts, 0)
        }
    };
    let c_b = ind.lift(&local);
    timings.balanced = clock.elapsed();

    let clock = Instant::now();
    let both = combine(&lin, &c_u, &c_b)?;
    let mut lifted = lift_coloring(&map, &both)?;
    let bottom = lifted.min_rank().unwrap_or(1);
    for v in (0..h.n()).filter(|&v| h.degree(v) == 0) {
        lifted.assign(v, bottom);
    }
    let coloring = lifted.normalized();
    if let Some(edge) = h.first_lo_violation(&coloring)? {
        return Err(Error::Validity { stage: "final", edge });
    }
    timings.finish = clock.elapsed();

    let report = Report {
        n: h.n(),
        m: h.num_edges(),
        merged,
        strategy: cfg.strategy,
        colors: coloring.num_colors(),
        sdp_iters: sol.iterations,
        norm_residual: sol.norm_residual,
        edge_residual: sol.edge_residual,
        balanced: rest.len(),
        unbalanced_colors: c_u.num_colors(),
        balanced_colors: local.num_colors(),
        balanced_rounds: rounds,
        degenerate_rounds: degenerate,
        timings,
        seed: cfg.seed,
    };
    Ok((coloring, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_balanced_tripartite, gen_planted};

    #[test]
    fn extension_ranks() {
        let h = Hypergraph::new(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let empty = RankedColoring::new(5);
        let c = extend_with_odd(&h, &empty, &[0]).unwrap();
        assert_eq!(c.rank(0), Some(1));

        let mut c = RankedColoring::new(5);
        c.assign(0, 1);
        c.assign(1, 2);
        assert_eq!(extend_with_odd(&h, &c, &[3]).unwrap().rank(3), Some(3));
        assert_eq!(extend_with_even(&h, &c, &[3, 4]).unwrap().rank(3), Some(0));
        assert!(matches!(extend_with_odd(&h, &c, &[0]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn extension_checks_independence() {
        let h = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let mut c = RankedColoring::new(3);
        c.assign(0, 1);
        assert!(matches!(
            extend_with_odd(&h, &c, &[1, 2]),
            Err(Error::NotIndependent { kind: "odd", edge: 0 })
        ));
        assert!(extend_with_even(&h, &c, &[1, 2]).is_ok());
        // edges not inside domain ∪ S are not constrained yet
        assert!(extend_with_even(&h, &c, &[1]).is_ok());
        c.assign(2, 1);
        assert!(matches!(
            extend_with_even(&h, &c, &[1]),
            Err(Error::NotIndependent { kind: "even", edge: 0 })
        ));
    }

    #[test]
    fn combine_counts_colors() {
        let h = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let mut c_u = RankedColoring::new(3);
        c_u.assign(0, 1);
        let mut c_b = RankedColoring::new(3);
        c_b.assign(1, 1);
        c_b.assign(2, 1);
        let c = combine(&h, &c_u, &c_b).unwrap();
        assert_eq!(c.rank(0), Some(2));
        assert_eq!(c.num_colors(), c_u.num_colors() + c_b.num_colors());

        let full = RankedColoring::from_ranks([3, 1, 2]);
        assert_eq!(combine(&h, &full, &RankedColoring::new(3)).unwrap(), full);
        let bad = RankedColoring::from_ranks([1, 1, 1]);
        assert!(matches!(
            combine(&h, &RankedColoring::new(3), &bad),
            Err(Error::Validity { stage: "combine", edge: 0 })
        ));
    }

    #[test]
    fn strategy_names() {
        assert_eq!("N15".parse::<Strategy>().unwrap(), Strategy::N15);
        assert_eq!("logn".parse::<Strategy>().unwrap().to_string(), "logn");
        assert!("x".parse::<Strategy>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(PipelineConfig::default().validate().is_ok());
        let c = PipelineConfig {
            eps: 1e-7,
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = PipelineConfig {
            delta_exponent: 1.0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn balanced_phase_on_certificate() {
        let (inst, cert) = gen_balanced_tripartite(60, 40, 3).unwrap();
        let ortho = ortho_profile(&cert.solution);
        let cfg = PipelineConfig {
            strategy: Strategy::N15,
            seed: 5,
            ..Default::default()
        };
        let b = color_balanced(&inst.graph, &ortho, &cfg).unwrap();
        assert!(inst.graph.check_lo(&b.coloring).unwrap());
        assert!(b.coloring.is_complete());
    }

    #[test]
    fn balanced_phase_without_edges() {
        let h = Hypergraph::empty(4);
        let (_, cert) = gen_balanced_tripartite(3, 1, 0).unwrap();
        let ortho = ortho_profile(&cert.solution).restrict(&[0, 1, 2, 0]);
        let b = color_balanced(&h, &ortho, &PipelineConfig::default()).unwrap();
        assert_eq!(b.coloring.num_colors(), 1);
        assert_eq!(b.rounds.len(), 1);
    }

    #[test]
    fn single_balanced_edge() {
        let (inst, cert) = gen_balanced_tripartite(3, 1, 0).unwrap();
        let ortho = ortho_profile(&cert.solution);
        let b = color_balanced(&inst.graph, &ortho, &PipelineConfig::default()).unwrap();
        assert!(inst.graph.check_lo(&b.coloring).unwrap());
        assert!(b.rounds.len() <= 2 && b.coloring.num_colors() <= 2);
    }

    #[test]
    fn single_edge_pipeline() {
        let h = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        for strategy in [Strategy::N15, Strategy::LogN] {
            let cfg = PipelineConfig {
                strategy,
                ..Default::default()
            };
            let (c, r) = lo_color(&h, &cfg).unwrap();
            assert!(h.check_lo(&c).unwrap());
            assert_eq!(r.colors, 2);
        }
    }

    #[test]
    fn planted_pipeline_both_strategies() {
        let inst = gen_planted(100, 130, 3).unwrap();
        for strategy in [Strategy::N15, Strategy::LogN] {
            let cfg = PipelineConfig {
                strategy,
                seed: 1,
                ..Default::default()
            };
            let (c, r) = lo_color(&inst.graph, &cfg).unwrap();
            assert!(inst.graph.check_lo(&c).unwrap());
            assert!(r.colors <= 44);
        }
    }

    #[test]
    fn non_linear_input_is_linearized() {
        let h = Hypergraph::new(5, [[0, 1, 2], [0, 1, 3], [2, 3, 4]]).unwrap();
        // 2 and 3 merge, which collapses the last edge and forces 4 on top
        let (c, _) = lo_color(&h, &PipelineConfig::default()).unwrap();
        assert!(h.check_lo(&c).unwrap());
        assert!(c.rank(4) > c.rank(2));
        let k4 = Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert!(matches!(lo_color(&k4, &PipelineConfig::default()), Err(Error::NotTwoLoColorable { .. })));
        let h = Hypergraph::new(6, [[0, 1, 2], [0, 1, 3], [3, 4, 5]]).unwrap();
        let (c, _) = lo_color(&h, &PipelineConfig::default()).unwrap();
        assert!(h.check_lo(&c).unwrap());
        assert_eq!(c.rank(2), c.rank(3));
    }
}
