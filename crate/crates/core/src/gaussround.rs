//! Gaussian tail utilities, threshold rounding into odd independent sets,
//! and hyperplane 2-coloring.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, RankedColoring};
use crate::rng::{indexed, substream, Prng};
use crate::sdp::{ortho_profile, OrthoProfile, VectorSolution};

/// `Φ̄(t) = Pr[g ≥ t]` for a standard normal `g`.
pub fn gcap(t: f64) -> f64 {
    0.5 * libm::erfc(t / SQRT_2)
}

/// Standard normal density.
pub fn density(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * PI).sqrt()
}

/// Solves `Φ̄(t) = alpha` by bisection followed by Newton polishing.
pub fn gcap_inv(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("α must lie in (0, 1), got {alpha}")));
    }
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if gcap(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..8 {
        let p = density(t);
        if p == 0.0 {
            break;
        }
        let step = (gcap(t) - alpha) / p;
        t += step;
        if step.abs() <= 1e-16 * t.abs().max(1.0) {
            break;
        }
    }
    Ok(t)
}

/// Smallest degree parameter the threshold analysis allows.
pub const MIN_DELTA: f64 = 4.0;

/// `α = 1/(32 · Δ^{1/3} · (ln Δ)^{1/2})` with `Δ` clamped up to 4.
pub fn alpha_for(delta: f64) -> f64 {
    let d = delta.max(MIN_DELTA);
    1.0 / (32.0 * d.cbrt() * d.ln().sqrt())
}

/// Default repetition count `16·⌈ln n⌉` (at least 1).
pub fn default_reps(n: usize) -> usize {
    (16.0 * (n.max(1) as f64).ln().ceil()).max(1.0) as usize
}

/// Parameters of one threshold-rounding campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingConfig {
    /// Degree parameter after clamping.
    pub delta: f64,
    pub alpha: f64,
    /// Threshold with `Φ̄(t) = alpha`.
    pub t: f64,
    pub reps: usize,
    pub seed: u64,
}

impl RoundingConfig {
    pub fn new(delta: f64, reps: usize, seed: u64) -> Result<Self> {
        let delta = delta.max(MIN_DELTA);
        Self::with_alpha(delta, alpha_for(delta), reps, seed)
    }

    /// Uses a caller-chosen `α` instead of the formula.
    pub fn with_alpha(delta: f64, alpha: f64, reps: usize, seed: u64) -> Result<Self> {
        if reps == 0 {
            return Err(Error::InvalidParameter("reps must be at least 1".into()));
        }
        Ok(RoundingConfig {
            delta,
            alpha,
            t: gcap_inv(alpha)?,
            reps,
            seed,
        })
    }
}

/// One draw of threshold rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct Draw {
    /// `S(t) = {a : ⟨ū_a, g⟩ ≥ t}`.
    pub selected: Vec<usize>,
    /// `S'(t)`: `S(t)` minus every vertex of an edge meeting it twice or more.
    pub odd: Vec<usize>,
}

/// Threshold rounding with the Gaussian drawn from `seed`.
pub fn sample_round(h: &Hypergraph, ortho: &OrthoProfile, t: f64, seed: u64) -> Draw {
    let mut rng = Prng::new(seed);
    let g = rng.gaussian_vec(ortho.d);
    round_with(h, ortho, t, &g)
}

/// Threshold rounding for a given Gaussian vector.
pub fn round_with(h: &Hypergraph, ortho: &OrthoProfile, t: f64, g: &[f64]) -> Draw {
    let n = h.n();
    let mut inside = vec![false; n];
    let mut selected = Vec::new();
    for (a, flag) in inside.iter_mut().enumerate() {
        if ortho.project(a, g) >= t {
            *flag = true;
            selected.push(a);
        }
    }
    let mut dropped = vec![false; n];
    for e in h.edges() {
        if e.iter().filter(|&&v| inside[v]).count() >= 2 {
            for &v in e {
                dropped[v] = true;
            }
        }
    }
    let odd = selected.iter().copied().filter(|&a| !dropped[a]).collect();
    Draw { selected, odd }
}

/// Largest `S'` over `cfg.reps` draws.
#[derive(Debug, Clone, PartialEq)]
pub struct BestOdd {
    pub set: Vec<usize>,
    /// `(|S|, |S'|)` per draw, in draw order.
    pub sizes: Vec<(usize, usize)>,
}

/// Seed of draw `i` in a [`best_odd_is`] campaign.
pub fn draw_seed(seed: u64, i: usize) -> u64 {
    indexed(substream(seed, "odd-is"), i as u64)
}

/// Best odd independent set over `cfg.reps` independent draws; ties go to
/// the lexicographically smallest set.
pub fn best_odd_is(h: &Hypergraph, ortho: &OrthoProfile, cfg: &RoundingConfig) -> BestOdd {
    let mut best: Vec<usize> = Vec::new();
    let mut sizes = Vec::with_capacity(cfg.reps);
    for i in 0..cfg.reps {
        let d = sample_round(h, ortho, cfg.t, draw_seed(cfg.seed, i));
        sizes.push((d.selected.len(), d.odd.len()));
        let better = d.odd.len() > best.len() || (d.odd.len() == best.len() && d.odd < best);
        if better {
            best = d.odd;
        }
    }
    BestOdd { set: best, sizes }
}

/// One inequality evaluated at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct FactCheck {
    pub fact: &'static str,
    pub at: (f64, f64),
    pub lhs: f64,
    pub rhs: f64,
}

impl FactCheck {
    /// `rhs - lhs`; the check holds when this is nonnegative (positive for
    /// strict inequalities).
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

#[derive(Debug, Clone, Default)]
pub struct FactsReport {
    pub checks: Vec<FactCheck>,
    pub violations: Vec<FactCheck>,
}

impl FactsReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest margin per fact.
    pub fn min_margins(&self) -> Vec<(&'static str, f64)> {
        let mut out: Vec<(&'static str, f64)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(f, _)| *f == c.fact) {
                Some(slot) => slot.1 = slot.1.min(c.margin()),
                None => out.push((c.fact, c.margin())),
            }
        }
        out
    }

    fn push(&mut self, c: FactCheck, strict: bool) {
        let ok = if strict { c.lhs < c.rhs } else { c.lhs <= c.rhs };
        if !ok {
            self.violations.push(c.clone());
        }
        self.checks.push(c);
    }
}

/// Evaluates the Gaussian tail inequalities on `fact_grid` (tail sandwich
/// and concentration over all grid pairs) and `cor_grid` (inverse-tail
/// bounds and the `Φ̄(2t)` bound; meant for `t ≥ 1`).
pub fn check_gaussian_facts(fact_grid: &[f64], cor_grid: &[f64]) -> FactsReport {
    let mut r = FactsReport::default();
    let root = (2.0 * PI).sqrt();
    for &t in fact_grid {
        let q = gcap(t);
        let e = (-0.5 * t * t).exp();
        r.push(
            FactCheck {
                fact: "tail-lower",
                at: (t, t),
                lhs: t / (root * (t * t + 1.0)) * e,
                rhs: q,
            },
            true,
        );
        r.push(
            FactCheck {
                fact: "tail-upper",
                at: (t, t),
                lhs: q,
                rhs: e / (root * t),
            },
            true,
        );
    }
    for (i, &a) in fact_grid.iter().enumerate() {
        for &b in &fact_grid[i + 1..] {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            r.push(
                FactCheck {
                    fact: "concentration",
                    at: (a, b),
                    lhs: gcap(a) - gcap(b),
                    rhs: (b - a) / root,
                },
                false,
            );
        }
    }
    for &t in cor_grid {
        let beta = gcap(t);
        let l = (1.0 / beta).ln();
        r.push(
            FactCheck {
                fact: "inverse-log",
                at: (t, t),
                lhs: t,
                rhs: (2.0 * l).sqrt(),
            },
            false,
        );
        r.push(
            FactCheck {
                fact: "inverse-log-upper",
                at: (t, t),
                lhs: t,
                rhs: (2.0 * l - l.ln()).sqrt(),
            },
            false,
        );
        let inner = 2.0 * l - l.ln() - (16.0 * PI).ln();
        if inner >= 0.0 {
            r.push(
                FactCheck {
                    fact: "inverse-log-lower",
                    at: (t, t),
                    lhs: inner.sqrt(),
                    rhs: t,
                },
                false,
            );
        }
        r.push(
            FactCheck {
                fact: "double-t",
                at: (t, 2.0 * t),
                lhs: gcap(2.0 * t),
                rhs: 512.0 * l.powf(1.5) * beta.powi(4),
            },
            false,
        );
    }
    r
}

/// Grid `start, start + step, ...` up to `end` inclusive.
pub fn grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let k = ((end - start) / step + 1e-9).floor() as usize;
    (0..=k).map(|i| start + step * i as f64).collect()
}

/// Result of [`two_sided_round`].
#[derive(Debug, Clone)]
pub struct TwoColoring {
    /// Ranks 1 and 2, no monochromatic edge.
    pub coloring: RankedColoring,
    pub attempts: usize,
}

/// Proper 2-coloring from a feasible solution: `γ` clearly below `-1/3`
/// gets rank 1, clearly above gets rank 2, and the rest (within `delta`)
/// are split by a random hyperplane through `ū`. Retried with fresh
/// hyperplanes until no edge is monochromatic.
pub fn two_sided_round(h: &Hypergraph, sol: &VectorSolution, delta: f64, retry_budget: usize, seed: u64) -> Result<TwoColoring> {
    let ortho = ortho_profile(sol);
    let third = -1.0 / 3.0;
    let base: Vec<Option<i64>> = (0..h.n())
        .map(|a| {
            let g = sol.gamma(a);
            if g < third - delta {
                Some(1)
            } else if g > third + delta {
                Some(2)
            } else {
                None
            }
        })
        .collect();
    let stream = substream(seed, "two-sided");
    let mut witness = None;
    for attempt in 0..retry_budget.max(1) {
        let mut rng = Prng::new(indexed(stream, attempt as u64));
        let r = rng.gaussian_vec(ortho.d);
        let ranks = base
            .iter()
            .enumerate()
            .map(|(a, b)| b.unwrap_or(if ortho.project(a, &r) >= 0.0 { 2 } else { 1 }));
        let coloring = RankedColoring::from_ranks(ranks);
        match first_monochromatic(h, &coloring) {
            None => {
                return Ok(TwoColoring {
                    coloring,
                    attempts: attempt + 1,
                })
            }
            Some(e) => witness = Some(e),
        }
    }
    Err(Error::RetryBudget {
        stage: "two-sided",
        budget: retry_budget,
        witness,
    })
}

/// First edge whose three vertices share a rank.
pub fn first_monochromatic(h: &Hypergraph, c: &RankedColoring) -> Option<usize> {
    h.edges().iter().position(|&[a, b, x]| c.rank(a) == c.rank(b) && c.rank(b) == c.rank(x))
}
