//! Bisection rounding of `γ` values, and the Gaussian perturbation that
//! reduces a balanced instance back to it.
//!
//! `I_0 = [-1, 1]`; `I_{j+1}` is the lower half of `I_j` for even `j` and
//! the upper half for odd `j`, so the intervals close in on `-1/3`. Round
//! `j` colors `S_{j+1} = I_j \ I_{j+1}` with rank `T - j`. Intervals are kept
//! as exact dyadic rationals.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, RankedColoring};
use crate::rng::{indexed, substream, Prng};
use crate::sdp::{GammaProfile, OrthoProfile};

/// Deepest interval a schedule may use (`ε` down to about `1e-30`).
pub const MAX_DEPTH: u32 = 100;

/// Closed interval `[lo / 2^j, hi / 2^j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub j: u32,
    pub lo: i128,
    pub hi: i128,
}

impl Interval {
    pub fn lower(&self) -> f64 {
        self.lo as f64 / pow2(self.j)
    }

    pub fn upper(&self) -> f64 {
        self.hi as f64 / pow2(self.j)
    }

    pub fn contains(&self, x: f64) -> bool {
        cmp_dyadic(x, self.lo, self.j) != Ordering::Less && cmp_dyadic(x, self.hi, self.j) != Ordering::Greater
    }

    /// `self ⊆ [-1/3 - ε, -1/3 + ε]`, with the band ends rounded exactly as
    /// [`crate::sdp::in_band`] rounds them.
    pub fn inside_band(&self, eps: f64) -> bool {
        let (b_lo, b_hi) = (-1.0 / 3.0 - eps, -1.0 / 3.0 + eps);
        cmp_dyadic(b_lo, self.lo, self.j) != Ordering::Greater && cmp_dyadic(b_hi, self.hi, self.j) != Ordering::Less
    }

    fn next(&self) -> Interval {
        let mid = self.lo + self.hi;
        let (lo, hi) = if self.j % 2 == 0 {
            (2 * self.lo, mid)
        } else {
            (mid, 2 * self.hi)
        };
        Interval { j: self.j + 1, lo, hi }
    }
}

fn pow2(j: u32) -> f64 {
    2f64.powi(j as i32)
}

/// Exact comparison of `x` with `k / 2^j`.
fn cmp_dyadic(x: f64, k: i128, j: u32) -> Ordering {
    let y = x * pow2(j);
    let f = y.floor();
    match (f as i128).cmp(&k) {
        Ordering::Equal if y > f => Ordering::Greater,
        ord => ord,
    }
}

/// `I_j` by repeated halving.
pub fn interval(j: u32) -> Interval {
    let mut cur = Interval { j: 0, lo: -1, hi: 1 };
    for _ in 0..j {
        cur = cur.next();
    }
    cur
}

/// `I_j` from its closed form, at the same scale `2^j` as [`interval`].
pub fn interval_closed_form(j: u32) -> Interval {
    if j == 0 {
        return Interval { j: 0, lo: -1, hi: 1 };
    }
    let p: i128 = 1 << (j - 1);
    let k = if j % 2 == 1 { (p - 1) / 3 } else { (p - 2) / 3 };
    Interval {
        j,
        lo: -2 * (k + 1),
        hi: -2 * k,
    }
}

/// Intervals `I_0 ⊇ ... ⊇ I_T` for one band radius.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSchedule {
    pub eps: f64,
    pub intervals: Vec<Interval>,
    /// First `j` with `I_j` inside the band.
    pub t: usize,
}

/// `⌈log₂(4/(3ε))⌉`.
pub fn iteration_bound(eps: f64) -> usize {
    (4.0 / (3.0 * eps)).log2().ceil().max(0.0) as usize
}

pub fn schedule(eps: f64) -> Result<IntervalSchedule> {
    if !(eps > 0.0 && eps < 2.0 / 3.0) {
        return Err(Error::InvalidParameter(format!("ε must lie in (0, 2/3), got {eps}")));
    }
    let mut intervals = vec![interval(0)];
    while !intervals.last().unwrap().inside_band(eps) {
        let last = *intervals.last().unwrap();
        if last.j >= MAX_DEPTH {
            return Err(Error::InvalidParameter(format!("ε = {eps} needs more than {MAX_DEPTH} halvings")));
        }
        intervals.push(last.next());
    }
    let t = intervals.len() - 1;
    Ok(IntervalSchedule { eps, intervals, t })
}

/// Output of one bisection pass.
#[derive(Debug, Clone)]
pub struct Rounding {
    /// Partial coloring; vertices left in `I_T` stay unassigned.
    pub coloring: RankedColoring,
    pub schedule: IntervalSchedule,
    /// `sets[j]` is `S_{j+1}`, colored with rank `T - j`.
    pub sets: Vec<Vec<usize>>,
}

impl Rounding {
    pub fn uncolored(&self) -> Vec<usize> {
        self.coloring.unassigned().collect()
    }
}

/// Colors every vertex outside `I_T` by bisection of its `γ`.
///
/// `γ` values are clamped to `[-1, 1]` first. Fails if some edge's `γ`-sum
/// is further than `slack` from `-1`.
pub fn combinatorial_rounding(h: &Hypergraph, gamma: &GammaProfile, slack: f64) -> Result<Rounding> {
    check_sums(h, &gamma.gamma, slack)?;
    let sched = schedule(gamma.eps)?;
    let t = sched.t;
    let mut coloring = RankedColoring::new(h.n());
    let mut sets = vec![Vec::new(); t];
    for (a, &g) in gamma.gamma.iter().enumerate() {
        let g = g.clamp(-1.0, 1.0);
        let mut j = 0;
        while j < t && sched.intervals[j + 1].contains(g) {
            j += 1;
        }
        if j < t {
            coloring.assign(a, (t - j) as i64);
            sets[j].push(a);
        }
    }
    Ok(Rounding {
        coloring,
        schedule: sched,
        sets,
    })
}

fn check_sums(h: &Hypergraph, gamma: &[f64], slack: f64) -> Result<()> {
    for (i, &[a, b, c]) in h.edges().iter().enumerate() {
        let sum = gamma[a] + gamma[b] + gamma[c];
        if (sum + 1.0).abs() > slack {
            return Err(Error::InconsistentGammas { edge: i, sum, slack });
        }
    }
    Ok(())
}

/// Settings for the perturbation path.
#[derive(Debug, Clone)]
pub struct PerturbConfig {
    /// Balance radius the input profile satisfies.
    pub eps: f64,
    /// Radius of the forbidden band after perturbation.
    pub eps_prime: f64,
    /// Solver tolerance behind the profile.
    pub tol: f64,
    /// Gaussian draws allowed per perturbation, and verification retries.
    pub retry_budget: usize,
    pub seed: u64,
}

impl Default for PerturbConfig {
    fn default() -> Self {
        PerturbConfig {
            eps: 1e-6,
            eps_prime: 1e-9,
            tol: 1e-8,
            retry_budget: 64,
            seed: 0,
        }
    }
}

/// Perturbed profile `γ'_a = γ_a + ⟨ū_a, g⟩/n²`.
#[derive(Debug, Clone)]
pub struct Perturbation {
    /// `γ'` with `eps = ε'`.
    pub gamma: GammaProfile,
    /// `ζ_a = ⟨ū_a, g⟩`.
    pub zeta: Vec<f64>,
    pub g: Vec<f64>,
    /// Gaussian vectors drawn, including the accepted one.
    pub draws: usize,
    /// Allowed deviation of perturbed edge sums from `-1`.
    pub slack: f64,
}

/// Draws `g` until no `γ'` falls in the open band of radius `ε'` and every
/// shift `|ζ_a|/n²` is at most `1/2`.
pub fn perturb_gammas(h: &Hypergraph, gamma: &GammaProfile, ortho: &OrthoProfile, cfg: &PerturbConfig) -> Result<Perturbation> {
    let n = h.n();
    let scale = (n * n) as f64;
    let mut rng = Prng::new(substream(cfg.seed, "perturb"));
    for draw in 1..=cfg.retry_budget.max(1) {
        let g = rng.gaussian_vec(ortho.d);
        if let Some(p) = try_perturb(gamma, ortho, cfg, &g, scale) {
            let gnorm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            let slack = 3.0 * cfg.tol + (n as f64).max(gnorm) * (18.0 * cfg.eps).sqrt() / scale;
            return Ok(Perturbation {
                gamma: GammaProfile::from_gammas(p.0, cfg.eps_prime),
                zeta: p.1,
                g,
                draws: draw,
                slack,
            });
        }
    }
    Err(Error::RetryBudget {
        stage: "perturb",
        budget: cfg.retry_budget,
        witness: None,
    })
}

/// Applies one draw; `None` if it breaks either acceptance rule.
pub fn try_perturb(
    gamma: &GammaProfile,
    ortho: &OrthoProfile,
    cfg: &PerturbConfig,
    g: &[f64],
    scale: f64,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = gamma.gamma.len();
    let zeta: Vec<f64> = (0..n).map(|a| ortho.project(a, g)).collect();
    let third = -1.0 / 3.0;
    let mut shifted = Vec::with_capacity(n);
    for (a, &z) in zeta.iter().enumerate() {
        let shift = z / scale;
        let gp = gamma.gamma[a] + shift;
        if shift.abs() > 0.5 || (gp > third - cfg.eps_prime && gp < third + cfg.eps_prime) {
            return None;
        }
        shifted.push(gp);
    }
    Some((shifted, zeta))
}

/// Result of [`balanced_log_coloring`].
#[derive(Debug, Clone)]
pub struct LogColoring {
    pub coloring: RankedColoring,
    /// Verification attempts used (1 on first success).
    pub attempts: usize,
    /// Gaussian draws over all attempts.
    pub draws: usize,
}

/// Full LO coloring of a balanced hypergraph: perturb, run bisection with
/// radius `ε'`, give leftovers a fresh minimum rank, verify, and retry on
/// failure.
pub fn balanced_log_coloring(h: &Hypergraph, gamma: &GammaProfile, ortho: &OrthoProfile, cfg: &PerturbConfig) -> Result<LogColoring> {
    if h.n() == 0 {
        return Ok(LogColoring {
            coloring: RankedColoring::new(0),
            attempts: 0,
            draws: 0,
        });
    }
    let mut draws = 0;
    let mut witness = None;
    for attempt in 0..cfg.retry_budget.max(1) {
        let sub = PerturbConfig {
            seed: indexed(cfg.seed, attempt as u64),
            ..cfg.clone()
        };
        let p = match perturb_gammas(h, gamma, ortho, &sub) {
            Ok(p) => p,
            Err(Error::RetryBudget { .. }) => {
                draws += cfg.retry_budget;
                continue;
            }
            Err(e) => return Err(e),
        };
        draws += p.draws;
        let mut coloring = combinatorial_rounding(h, &p.gamma, p.slack)?.coloring;
        let bottom = coloring.min_rank().unwrap_or(1) - 1;
        let leftover: Vec<usize> = coloring.unassigned().collect();
        for v in leftover {
            coloring.assign(v, bottom);
        }
        match h.first_lo_violation(&coloring)? {
            None => {
                return Ok(LogColoring {
                    coloring,
                    attempts: attempt + 1,
                    draws,
                })
            }
            Some(e) => witness = Some(e),
        }
    }
    Err(Error::RetryBudget {
        stage: "balanced-log",
        budget: cfg.retry_budget,
        witness,
    })
}
