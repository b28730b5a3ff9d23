//! The vector relaxation: unit vectors `v_a` and a special unit vector `v∅`
//! with `v_a + v_b + v_c = -v∅` on every edge.
//!
//! The solver works on a low-rank factorization. Minimizing the penalty
//! `Σ_e ‖v_a + v_b + v_c + v∅‖²` over products of unit spheres is a
//! diagonal-constrained quadratic program whose optimum is zero exactly on
//! feasible instances, so no multiplier updates are needed: block-coordinate
//! descent with per-vector renormalization drives the penalty to zero. For
//! small instances a full-Gram alternating-projection pass is available when
//! the factorized descent stalls.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::rng::{indexed, substream, Prng};

/// Vertex vectors and `v∅`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSolution {
    pub d: usize,
    pub vstar: Vec<f64>,
    vecs: Vec<f64>,
    /// `max_a |‖v_a‖² - 1|` over vertices and `v∅`.
    pub norm_residual: f64,
    /// `max_e ‖v_a + v_b + v_c + v∅‖`.
    pub edge_residual: f64,
    /// Tolerance the solution was produced (or certified) at.
    pub tol: f64,
    /// Solver iterations spent (0 for certificates and warm starts).
    pub iterations: usize,
}

impl VectorSolution {
    /// Wraps explicit vectors, evaluating both residuals on `h`.
    pub fn from_rows(h: &Hypergraph, vstar: Vec<f64>, rows: &[Vec<f64>], tol: f64) -> Self {
        let d = vstar.len();
        assert_eq!(rows.len(), h.n(), "one row per vertex");
        let mut vecs = Vec::with_capacity(rows.len() * d);
        for r in rows {
            assert_eq!(r.len(), d, "row dimension");
            vecs.extend_from_slice(r);
        }
        let mut sol = VectorSolution {
            d,
            vstar,
            vecs,
            norm_residual: 0.0,
            edge_residual: 0.0,
            tol,
            iterations: 0,
        };
        let (nr, er) = residual(h, &sol);
        sol.norm_residual = nr;
        sol.edge_residual = er;
        sol
    }

    pub fn n(&self) -> usize {
        if self.d == 0 {
            0
        } else {
            self.vecs.len() / self.d
        }
    }

    pub fn vector(&self, a: usize) -> &[f64] {
        &self.vecs[a * self.d..(a + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.vecs.chunks(self.d.max(1))
    }

    /// `γ_a = ⟨v_a, v∅⟩`.
    pub fn gamma(&self, a: usize) -> f64 {
        dot(self.vector(a), &self.vstar)
    }

    pub fn is_feasible(&self) -> bool {
        self.norm_residual <= self.tol && self.edge_residual <= self.tol
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Exact evaluation of `(norm_residual, edge_residual)`.
pub fn residual(h: &Hypergraph, sol: &VectorSolution) -> (f64, f64) {
    let sq_err = |v: &[f64]| (dot(v, v) - 1.0).abs();
    let norm_res = (0..sol.n())
        .map(|a| sq_err(sol.vector(a)))
        .fold(sq_err(&sol.vstar), f64::max);
    let mut buf = vec![0.0; sol.d];
    let edge_res = h
        .edges()
        .iter()
        .map(|&[a, b, c]| {
            for (k, slot) in buf.iter_mut().enumerate() {
                *slot = sol.vector(a)[k] + sol.vector(b)[k] + sol.vector(c)[k] + sol.vstar[k];
            }
            norm(&buf)
        })
        .fold(0.0, f64::max);
    (norm_res, edge_res)
}

#[derive(Debug, Clone)]
pub struct SdpConfig {
    /// Factorization rank; `None` selects `min(n+1, ⌈√(2m)⌉+2)`.
    pub rank: Option<usize>,
    pub tol: f64,
    /// Sweep budget for each descent run.
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for SdpConfig {
    fn default() -> Self {
        SdpConfig {
            rank: None,
            tol: 1e-8,
            max_iters: 50_000,
            seed: 0,
        }
    }
}

pub fn default_rank(n: usize, m: usize) -> usize {
    let r = (2.0 * m as f64).sqrt().ceil() as usize + 2;
    r.min(n + 1).max(1)
}

/// Largest instance (vertex count) handled by the full-Gram fallback.
pub const GRAM_FALLBACK_MAX_N: usize = 60;

/// Solves the relaxation from a seeded random start.
///
/// Returns [`Error::Stalled`] with the best residuals reached when the
/// penalty plateaus above tolerance; that is evidence, not a certificate,
/// of infeasibility.
pub fn solve_feasibility(h: &Hypergraph, cfg: &SdpConfig) -> Result<VectorSolution> {
    let n = h.n();
    let d = cfg.rank.unwrap_or_else(|| default_rank(n, h.num_edges())).max(1);
    let mut rng = Prng::new(substream(cfg.seed, "sdp-init"));
    let factor = Factor::random(n, d, &mut rng);
    // leave part of the budget for the Newton fallback
    let first = SdpConfig {
        max_iters: cfg.max_iters / 5,
        ..cfg.clone()
    };
    let (mut best, mut spent) = rank_adaptive(h, factor, &first, 0);
    if best.is_feasible() {
        return Ok(best);
    }

    let (factor, total) = reduced_newton(h, d, cfg, spent);
    spent = total;
    if let Some(factor) = factor {
        // the Newton point is usually close; descent with rank decrement
        // finishes the cases where it only converges linearly
        let (sol, total) = rank_adaptive(h, factor, cfg, spent);
        spent = total;
        if sol.is_feasible() {
            return Ok(sol);
        }
        if sol.edge_residual.max(sol.norm_residual) < best.edge_residual.max(best.norm_residual) {
            best = sol;
        }
    }

    if n <= GRAM_FALLBACK_MAX_N {
        let gram = alternating_projection(h, 20_000, cfg.tol * 1e-2);
        if let Some(factor) = Factor::from_gram(&gram, n) {
            let (sol, total) = rank_adaptive(h, factor, cfg, spent);
            spent = total;
            if sol.is_feasible() {
                return Ok(sol);
            }
            if sol.edge_residual < best.edge_residual {
                best = sol;
            }
        }
    }
    Err(Error::Stalled {
        iterations: spent,
        norm_residual: best.norm_residual,
        edge_residual: best.edge_residual,
    })
}

/// Singular values below this fraction of the largest are numerically zero.
const NULL_CUTOFF: f64 = 1e-9;
/// Only directions at most this large (relative) are tried for removal.
const DROP_CUTOFF: f64 = 0.1;

/// Descent with rank decrement.
///
/// Near a low-rank solution a higher-rank factorization converges only
/// sublinearly (the penalty is quartic along the spurious directions), while
/// at the solution's own rank convergence is fast. Whenever progress slows,
/// the weakest direction is dropped; the smaller factor is kept only if its
/// residual improves on the current one.
fn rank_adaptive(h: &Hypergraph, mut factor: Factor, cfg: &SdpConfig, spent: usize) -> (VectorSolution, usize) {
    let mut spent = spent;
    loop {
        let budget = cfg.max_iters.saturating_sub(spent);
        let run = factor.descend(h, cfg.tol, budget, Patience::Eager);
        spent += run.iterations;
        if run.converged || spent >= cfg.max_iters {
            break;
        }
        if let Some(exact) = factor.truncated(h, Truncation::NullOnly) {
            factor = exact;
            continue;
        }
        let current = factor.worst_edge_residual(h);
        let Some(mut candidate) = factor.truncated(h, Truncation::DropWeakest) else {
            let budget = cfg.max_iters.saturating_sub(spent);
            spent += factor.descend(h, cfg.tol, budget, Patience::Strict).iterations;
            break;
        };
        let budget = cfg.max_iters.saturating_sub(spent);
        let run = candidate.descend(h, cfg.tol, budget, Patience::Eager);
        spent += run.iterations;
        if run.converged || candidate.worst_edge_residual(h) < current {
            factor = candidate;
            if run.converged {
                break;
            }
        } else {
            let budget = cfg.max_iters.saturating_sub(spent);
            spent += factor.descend(h, cfg.tol, budget, Patience::Strict).iterations;
            break;
        }
    }
    (factor.into_solution(h, cfg.tol, spent), spent)
}

/// Continues from given vectors; returns immediately when they are already
/// feasible at `cfg.tol`.
pub fn solve_warm(h: &Hypergraph, cfg: &SdpConfig, start: &VectorSolution) -> Result<VectorSolution> {
    let (nr, er) = residual(h, start);
    if nr <= cfg.tol && er <= cfg.tol {
        let mut sol = start.clone();
        sol.norm_residual = nr;
        sol.edge_residual = er;
        sol.tol = cfg.tol;
        sol.iterations = 0;
        return Ok(sol);
    }
    let (sol, spent) = rank_adaptive(h, Factor::from_solution(start), cfg, 0);
    if sol.is_feasible() {
        Ok(sol)
    } else {
        Err(Error::Stalled {
            iterations: spent,
            norm_residual: sol.norm_residual,
            edge_residual: sol.edge_residual,
        })
    }
}

/// Rows `0..n` are vertices, row `n` is `v∅`.
struct Factor {
    n: usize,
    d: usize,
    rows: Vec<f64>,
}

struct Descent {
    iterations: usize,
    converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Truncation {
    /// Drop only numerically vanishing directions (residual unchanged).
    NullOnly,
    /// Drop the weakest direction if it is small.
    DropWeakest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Patience {
    /// Hand back control after a short window with under 10% progress.
    Eager,
    /// Give up only after a long window with under 1% progress.
    Strict,
}

impl Factor {
    fn random(n: usize, d: usize, rng: &mut Prng) -> Self {
        let mut rows = Vec::with_capacity((n + 1) * d);
        for _ in 0..=n {
            let mut v = rng.gaussian_vec(d);
            let l = norm(&v);
            v.iter_mut().for_each(|x| *x /= l);
            rows.extend(v);
        }
        Factor { n, d, rows }
    }

    fn from_solution(sol: &VectorSolution) -> Self {
        let mut rows = sol.vecs.clone();
        rows.extend_from_slice(&sol.vstar);
        let mut f = Factor {
            n: sol.n(),
            d: sol.d,
            rows,
        };
        for i in 0..=f.n {
            f.normalize(i);
        }
        f
    }

    /// Factors a PSD Gram matrix (vertex block first, `v∅` last).
    fn from_gram(gram: &DMatrix<f64>, n: usize) -> Option<Self> {
        let eig = SymmetricEigen::new(gram.clone());
        let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
        if top <= 0.0 {
            return None;
        }
        let keep: Vec<usize> = (0..eig.eigenvalues.len())
            .filter(|&k| eig.eigenvalues[k] > 1e-12 * top)
            .collect();
        let d = keep.len().max(1);
        let mut rows = vec![0.0; (n + 1) * d];
        for i in 0..=n {
            for (col, &k) in keep.iter().enumerate() {
                rows[i * d + col] = eig.eigenvectors[(i, k)] * eig.eigenvalues[k].sqrt();
            }
        }
        let mut f = Factor { n, d, rows };
        for i in 0..=n {
            if norm(f.row(i)) == 0.0 {
                f.rows[i * d] = 1.0;
            }
            f.normalize(i);
        }
        Some(f)
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.d..(i + 1) * self.d]
    }

    fn normalize(&mut self, i: usize) {
        let d = self.d;
        let r = &mut self.rows[i * d..(i + 1) * d];
        let l = norm(r);
        if l > 0.0 {
            r.iter_mut().for_each(|x| *x /= l);
        }
    }

    fn edge_residuals(&self, h: &Hypergraph) -> Vec<f64> {
        let d = self.d;
        let mut res = vec![0.0; h.num_edges() * d];
        for (e, &[a, b, c]) in h.edges().iter().enumerate() {
            for k in 0..d {
                res[e * d + k] = self.rows[a * d + k]
                    + self.rows[b * d + k]
                    + self.rows[c * d + k]
                    + self.rows[self.n * d + k];
            }
        }
        res
    }

    /// Block-coordinate descent: each vector in turn moves to the unit
    /// vector minimizing the penalty with the others fixed, which is
    /// `-normalize(Σ_{e∋i} (r_e - v_i))`.
    fn descend(&mut self, h: &Hypergraph, tol: f64, max_iters: usize, patience: Patience) -> Descent {
        let (n, d, m) = (self.n, self.d, h.num_edges());
        if m == 0 {
            return Descent {
                iterations: 0,
                converged: true,
            };
        }
        let (window, keep) = match patience {
            Patience::Eager => (200, 0.9),
            Patience::Strict => (400, 0.99),
        };
        let mut res = self.edge_residuals(h);
        let mut s = vec![0.0; d];
        let mut history: Vec<f64> = Vec::new();
        const REFRESH: usize = 32;

        for iter in 1..=max_iters {
            for i in 0..=n {
                let incident: &[usize] = if i < n { h.incident(i) } else { &[] };
                let deg = if i < n { incident.len() } else { m };
                if deg == 0 {
                    continue;
                }
                s.iter_mut().for_each(|x| *x = 0.0);
                if i < n {
                    for &e in incident {
                        for k in 0..d {
                            s[k] += res[e * d + k];
                        }
                    }
                } else {
                    for e in 0..m {
                        for k in 0..d {
                            s[k] += res[e * d + k];
                        }
                    }
                }
                let vi = &mut self.rows[i * d..(i + 1) * d];
                for k in 0..d {
                    s[k] -= deg as f64 * vi[k];
                }
                let l = norm(&s);
                if l <= 1e-300 {
                    continue;
                }
                for k in 0..d {
                    let new = -s[k] / l;
                    let delta = new - vi[k];
                    vi[k] = new;
                    if i < n {
                        for &e in incident {
                            res[e * d + k] += delta;
                        }
                    } else {
                        for e in 0..m {
                            res[e * d + k] += delta;
                        }
                    }
                }
            }
            if iter % REFRESH == 0 {
                res = self.edge_residuals(h);
            }
            let worst = res
                .chunks(d)
                .map(|r| dot(r, r))
                .fold(0.0, f64::max)
                .sqrt();
            if worst <= 0.5 * tol {
                let exact = self.edge_residuals(h);
                let worst = exact.chunks(d).map(|r| dot(r, r)).fold(0.0, f64::max).sqrt();
                if worst <= 0.5 * tol {
                    return Descent {
                        iterations: iter,
                        converged: true,
                    };
                }
                res = exact;
            }
            history.push(worst);
            if history.len() > window {
                let old = history[history.len() - 1 - window];
                if worst > keep * old {
                    return Descent {
                        iterations: iter,
                        converged: false,
                    };
                }
            }
        }
        Descent {
            iterations: max_iters,
            converged: false,
        }
    }

    fn worst_edge_residual(&self, h: &Hypergraph) -> f64 {
        self.edge_residuals(h)
            .chunks(self.d)
            .map(|r| dot(r, r))
            .fold(0.0, f64::max)
            .sqrt()
    }

    /// Projects the rows onto a subset of their right singular directions
    /// and renormalizes; `None` when the rule keeps every direction.
    ///
    /// Vertices in no edge are ignored when choosing directions and are
    /// reset to `v∅`; their vectors are unconstrained and would otherwise
    /// pin the rank.
    fn truncated(&self, h: &Hypergraph, rule: Truncation) -> Option<Factor> {
        let (rows, d) = (self.n + 1, self.d);
        if d <= 1 {
            return None;
        }
        let active: Vec<usize> = (0..rows).filter(|&i| i == self.n || h.degree(i) > 0).collect();
        let mut mat = DMatrix::<f64>::zeros(active.len(), d);
        for (r, &i) in active.iter().enumerate() {
            for c in 0..d {
                mat[(r, c)] = self.rows[i * d + c];
            }
        }
        let svd = mat.svd(false, true);
        let vt = svd.v_t.as_ref()?;
        let sv = &svd.singular_values;
        let top = sv.iter().cloned().fold(0.0, f64::max);
        let mut keep: Vec<usize> = (0..sv.len()).collect();
        keep.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
        match rule {
            Truncation::NullOnly => keep.retain(|&k| sv[k] > NULL_CUTOFF * top),
            Truncation::DropWeakest => {
                if sv[*keep.last()?] <= DROP_CUTOFF * top {
                    keep.pop();
                }
            }
        }
        if keep.len() >= d {
            return None;
        }
        let k = keep.len().max(1);
        let mut out = vec![0.0; rows * k];
        for i in 0..rows {
            let row = &self.rows[i * d..(i + 1) * d];
            for (col, &j) in keep.iter().enumerate() {
                out[i * k + col] = (0..d).map(|c| row[c] * vt[(j, c)]).sum();
            }
        }
        let mut f = Factor {
            n: self.n,
            d: k,
            rows: out,
        };
        for i in 0..rows {
            if i < self.n && h.degree(i) == 0 {
                let star = f.row(self.n).to_vec();
                f.rows[i * k..(i + 1) * k].copy_from_slice(&star);
            }
            if norm(f.row(i)) == 0.0 {
                f.rows[i * k] = 1.0;
            }
            f.normalize(i);
        }
        Some(f)
    }

    fn into_solution(self, h: &Hypergraph, tol: f64, iterations: usize) -> VectorSolution {
        let d = self.d;
        let vstar = self.rows[self.n * d..].to_vec();
        let mut vecs = self.rows;
        vecs.truncate(self.n * d);
        let mut sol = VectorSolution {
            d,
            vstar,
            vecs,
            norm_residual: 0.0,
            edge_residual: 0.0,
            tol,
            iterations,
        };
        let (nr, er) = residual(h, &sol);
        sol.norm_residual = nr;
        sol.edge_residual = er;
        sol
    }
}

/// Restarts of [`reduced_newton`] from fresh random points.
const NEWTON_RESTARTS: u64 = 4;
/// Levenberg–Marquardt steps per restart.
const NEWTON_STEPS: usize = 1000;

/// Solves on the linear constraint set directly.
///
/// With `v∅ = e0` and `w_a = v_a + e0/3`, the edge constraints say each
/// coordinate column of `W` lies in the null space of the edge-incidence
/// matrix `B`, and the unit norms become
/// `f_a(W) = ‖w_a‖² - (2/3)·w_a[0] - 8/9 = 0`. Levenberg–Marquardt on `f`
/// inside `range(P)`, `P` the projector onto `null(B)`: with
/// `G_a = 2w_a - (2/3)e0` the Jacobian satisfies `JJᵀ = P ∘ GGᵀ`, and the
/// step is `ΔW = -P·diag(y)·G` where `(JJᵀ + λI) y = f`.
fn reduced_newton(h: &Hypergraph, d: usize, cfg: &SdpConfig, spent: usize) -> (Option<Factor>, usize) {
    let n = h.n();
    let mut spent = spent;
    if n == 0 {
        return (None, spent);
    }
    let d = d.max(2);
    let mut b = DMatrix::<f64>::zeros(h.num_edges().max(1), n);
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            b[(e, v)] = 1.0;
        }
    }
    let p = null_projector(&b);
    let mut best: Option<(f64, Factor)> = None;
    for restart in 0..NEWTON_RESTARTS {
        if spent >= cfg.max_iters {
            break;
        }
        let mut rng = Prng::new(indexed(substream(cfg.seed, "sdp-newton"), restart));
        let start = DMatrix::from_fn(n, d, |_, _| rng.gaussian());
        let mut w = &p * start;
        let scale = (w.norm_squared() / n as f64).sqrt().max(1e-300);
        w /= scale;
        let (mut f, mut fnorm) = norm_equations(&w);
        let mut lambda = 1e-3;
        for _ in 0..NEWTON_STEPS {
            if spent >= cfg.max_iters || f.amax() <= 0.1 * cfg.tol {
                break;
            }
            spent += 1;
            let mut g = &w * 2.0;
            g.column_mut(0).add_scalar_mut(-2.0 / 3.0);
            let jjt = p.component_mul(&(&g * g.transpose()));
            let mut accepted = false;
            for _ in 0..30 {
                let mut sys = jjt.clone();
                for i in 0..n {
                    sys[(i, i)] += lambda;
                }
                let Some(chol) = sys.cholesky() else {
                    lambda *= 10.0;
                    continue;
                };
                let y = chol.solve(&f);
                let mut dg = g.clone();
                for (i, mut row) in dg.row_iter_mut().enumerate() {
                    row *= y[i];
                }
                let trial = &w - &p * dg;
                let (tf, tn) = norm_equations(&trial);
                if tn < fnorm {
                    w = trial;
                    f = tf;
                    fnorm = tn;
                    lambda = (lambda / 10.0).max(1e-20);
                    accepted = true;
                    break;
                }
                lambda *= 4.0;
            }
            if !accepted {
                break;
            }
        }
        let fmax = f.amax();
        if best.as_ref().is_none_or(|(b, _)| fmax < *b) {
            best = Some((fmax, reduced_factor(&w)));
        }
        if fmax <= 0.1 * cfg.tol {
            break;
        }
    }
    (best.map(|(_, f)| f), spent)
}

fn norm_equations(w: &DMatrix<f64>) -> (DVector<f64>, f64) {
    let f = DVector::from_iterator(
        w.nrows(),
        w.row_iter().map(|r| r.norm_squared() - (2.0 / 3.0) * r[0] - 8.0 / 9.0),
    );
    let fnorm = f.norm();
    (f, fnorm)
}

/// Factor with `v_a = w_a - e0/3` normalized and `v∅ = e0`.
fn reduced_factor(w: &DMatrix<f64>) -> Factor {
    let (n, d) = (w.nrows(), w.ncols());
    let mut rows: Vec<f64> = Vec::with_capacity((n + 1) * d);
    for r in w.row_iter() {
        let mut v: Vec<f64> = r.iter().copied().collect();
        v[0] -= 1.0 / 3.0;
        rows.extend(v);
    }
    let mut star = vec![0.0; d];
    star[0] = 1.0;
    rows.extend(star);
    let mut f = Factor { n, d, rows };
    for i in 0..n {
        if norm(f.row(i)) == 0.0 {
            f.rows[i * d] = 1.0;
        }
        f.normalize(i);
    }
    f
}

/// Alternating projection on the full `(n+1)×(n+1)` Gram matrix between the
/// PSD cone and the affine set `{X = PXP, diag X = 1}`, where `P` projects
/// onto the null space of the edge-incidence matrix (so `X w_e = 0` for every
/// edge indicator `w_e = 1_a + 1_b + 1_c + 1_∅`).
fn alternating_projection(h: &Hypergraph, max_iters: usize, tol: f64) -> DMatrix<f64> {
    let n = h.n();
    let size = n + 1;
    let mut a = DMatrix::<f64>::zeros(h.num_edges().max(1), size);
    for (e, &[x, y, z]) in h.edges().iter().enumerate() {
        for v in [x, y, z, n] {
            a[(e, v)] = 1.0;
        }
    }
    let p = null_projector(&a);
    let hadamard = p.component_mul(&p);
    let hadamard_pinv = hadamard
        .clone()
        .pseudo_inverse(1e-12)
        .unwrap_or_else(|_| DMatrix::zeros(size, size));

    let mut x = DMatrix::<f64>::identity(size, size);
    for _ in 0..max_iters {
        let pxp = &p * &x * &p;
        let rhs = DVector::from_iterator(size, (0..size).map(|i| 1.0 - pxp[(i, i)]));
        let lambda = &hadamard_pinv * rhs;
        let y = &pxp + &p * DMatrix::from_diagonal(&lambda) * &p;
        let eig = SymmetricEigen::new((&y + y.transpose()) * 0.5);
        let clipped = eig.eigenvalues.map(|l| l.max(0.0));
        let next = &eig.eigenvectors * DMatrix::from_diagonal(&clipped) * eig.eigenvectors.transpose();
        let gap = (&next - &y).norm();
        x = next;
        if gap <= tol {
            break;
        }
    }
    x
}

fn null_projector(a: &DMatrix<f64>) -> DMatrix<f64> {
    let cols = a.ncols();
    let gram = a.transpose() * a;
    let eig = SymmetricEigen::new(gram);
    let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1.0);
    let mut p = DMatrix::<f64>::zeros(cols, cols);
    for k in 0..cols {
        if eig.eigenvalues[k] <= 1e-10 * top {
            let u = eig.eigenvectors.column(k);
            p += &u * u.transpose();
        }
    }
    p
}

/// `γ_a` for every vertex and the ε-balanced split.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaProfile {
    pub gamma: Vec<f64>,
    pub eps: f64,
    pub balanced: Vec<usize>,
    pub unbalanced: Vec<usize>,
}

impl GammaProfile {
    pub fn from_gammas(gamma: Vec<f64>, eps: f64) -> Self {
        let (balanced, unbalanced) = (0..gamma.len()).partition(|&a| in_band(gamma[a], eps));
        GammaProfile {
            gamma,
            eps,
            balanced,
            unbalanced,
        }
    }

    pub fn is_balanced(&self, a: usize) -> bool {
        in_band(self.gamma[a], self.eps)
    }

    /// Profile over `vertices`, reindexed in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        Self::from_gammas(vertices.iter().map(|&v| self.gamma[v]).collect(), self.eps)
    }

    /// Largest `|γ_a + γ_b + γ_c + 1|` over the edges of `h`.
    pub fn max_sum_error(&self, h: &Hypergraph) -> f64 {
        h.edges()
            .iter()
            .map(|&[a, b, c]| (self.gamma[a] + self.gamma[b] + self.gamma[c] + 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Closed band `[-1/3 - ε, -1/3 + ε]`.
pub fn in_band(gamma: f64, eps: f64) -> bool {
    gamma >= -1.0 / 3.0 - eps && gamma <= -1.0 / 3.0 + eps
}

pub fn gamma_profile(sol: &VectorSolution, eps: f64) -> GammaProfile {
    GammaProfile::from_gammas((0..sol.n()).map(|a| sol.gamma(a)).collect(), eps)
}

/// Unit directions `ū_a` of the components orthogonal to `v∅`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoProfile {
    pub d: usize,
    ubar: Vec<f64>,
    pub degenerate: Vec<usize>,
}

impl OrthoProfile {
    pub fn n(&self) -> usize {
        if self.d == 0 {
            0
        } else {
            self.ubar.len() / self.d
        }
    }

    pub fn ubar(&self, a: usize) -> &[f64] {
        &self.ubar[a * self.d..(a + 1) * self.d]
    }

    /// `⟨ū_a, g⟩`.
    pub fn project(&self, a: usize, g: &[f64]) -> f64 {
        dot(self.ubar(a), g)
    }

    /// `‖ū_a + ū_b + ū_c‖²`.
    pub fn edge_sum_sq(&self, e: Edge) -> f64 {
        (0..self.d)
            .map(|k| {
                let s = self.ubar[e[0] * self.d + k] + self.ubar[e[1] * self.d + k] + self.ubar[e[2] * self.d + k];
                s * s
            })
            .sum()
    }

    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let mut ubar = Vec::with_capacity(vertices.len() * self.d);
        let mut degenerate = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            ubar.extend_from_slice(self.ubar(v));
            if self.degenerate.binary_search(&v).is_ok() {
                degenerate.push(i);
            }
        }
        OrthoProfile {
            d: self.d,
            ubar,
            degenerate,
        }
    }
}

/// `ū_a = (v_a - γ_a v∅)/‖v_a - γ_a v∅‖`; components no longer than
/// `10·tol` are replaced by a fixed unit vector orthogonal to `v∅` (or `e0`
/// when the dimension is 1) and recorded as degenerate.
pub fn ortho_profile(sol: &VectorSolution) -> OrthoProfile {
    let d = sol.d;
    let fallback = orthogonal_unit(&sol.vstar);
    let mut ubar = Vec::with_capacity(sol.n() * d);
    let mut degenerate = Vec::new();
    for a in 0..sol.n() {
        let g = sol.gamma(a);
        let comp: Vec<f64> = sol
            .vector(a)
            .iter()
            .zip(&sol.vstar)
            .map(|(x, s)| x - g * s)
            .collect();
        let l = norm(&comp);
        if l > 10.0 * sol.tol {
            ubar.extend(comp.iter().map(|x| x / l));
        } else {
            ubar.extend_from_slice(&fallback);
            degenerate.push(a);
        }
    }
    OrthoProfile { d, ubar, degenerate }
}

fn orthogonal_unit(vstar: &[f64]) -> Vec<f64> {
    let d = vstar.len();
    let mut e = vec![0.0; d];
    if d == 0 {
        return e;
    }
    if d == 1 {
        e[0] = 1.0;
        return e;
    }
    // basis vector least aligned with v∅, then Gram–Schmidt
    let k = (0..d)
        .min_by(|&i, &j| vstar[i].abs().total_cmp(&vstar[j].abs()))
        .unwrap_or(0);
    e[k] = 1.0;
    let s2 = dot(vstar, vstar);
    let c = vstar[k] / s2;
    for (x, s) in e.iter_mut().zip(vstar) {
        *x -= c * s;
    }
    let l = norm(&e);
    e.iter_mut().for_each(|x| *x /= l);
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_balanced_tripartite, gen_planted, plant_rank1_certificate};

    #[test]
    fn residual_of_scaled_vector() {
        let inst = gen_planted(9, 6, 3).unwrap();
        let cert = plant_rank1_certificate(&inst);
        let rows: Vec<Vec<f64>> = (0..9)
            .map(|a| {
                let mut v = cert.vector(a).to_vec();
                if a == 0 {
                    v[0] *= 1.1;
                }
                v
            })
            .collect();
        let sol = VectorSolution::from_rows(&inst.graph, cert.vstar.clone(), &rows, 1e-8);
        assert!((sol.norm_residual - 0.21).abs() < 1e-12);
    }

    #[test]
    fn warm_start_from_certificate_is_free() {
        let inst = gen_planted(30, 40, 7).unwrap();
        let cert = plant_rank1_certificate(&inst);
        let sol = solve_warm(&inst.graph, &SdpConfig::default(), &cert).unwrap();
        assert_eq!(sol.iterations, 0);
        assert_eq!((sol.norm_residual, sol.edge_residual), (0.0, 0.0));
    }

    #[test]
    fn cold_start_reaches_tolerance() {
        let inst = gen_planted(30, 40, 7).unwrap();
        let sol = solve_feasibility(&inst.graph, &SdpConfig::default()).unwrap();
        assert!(sol.norm_residual <= 1e-6 && sol.edge_residual <= 1e-6);
        assert_eq!(residual(&inst.graph, &sol), (sol.norm_residual, sol.edge_residual));
    }

    #[test]
    fn k4_stalls() {
        let k4 = Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        match solve_feasibility(&k4, &SdpConfig::default()) {
            Err(Error::Stalled { edge_residual, .. }) => assert!(edge_residual >= 0.1),
            other => panic!("expected stall, got {other:?}"),
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let inst = gen_planted(24, 30, 5).unwrap();
        let cfg = SdpConfig {
            seed: 9,
            ..SdpConfig::default()
        };
        let a = solve_feasibility(&inst.graph, &cfg).unwrap();
        let b = solve_feasibility(&inst.graph, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gamma_profiles() {
        let inst = gen_planted(12, 8, 1).unwrap();
        let g = gamma_profile(&plant_rank1_certificate(&inst), 1e-3);
        assert!(g.gamma.iter().all(|&x| x == 1.0 || x == -1.0));
        assert!(g.balanced.is_empty());

        let (_, cert) = gen_balanced_tripartite(12, 8, 1).unwrap();
        let g = gamma_profile(&cert.solution, 1e-9);
        assert!(g.unbalanced.is_empty());

        let eps = 1e-4;
        let g = GammaProfile::from_gammas(vec![-1.0 / 3.0 - eps, -1.0 / 3.0 + eps, 0.5], eps);
        assert_eq!(g.balanced, vec![0, 1]);
        assert_eq!(g.unbalanced, vec![2]);
    }

    #[test]
    fn ortho_profile_of_certificates() {
        let (_, cert) = gen_balanced_tripartite(12, 8, 1).unwrap();
        let o = ortho_profile(&cert.solution);
        assert!(o.degenerate.is_empty());
        let s = 3f64.sqrt() / 2.0;
        let dirs = [[0.0, 1.0, 0.0], [0.0, -0.5, s], [0.0, -0.5, -s]];
        for a in 0..12 {
            let u = o.ubar(a);
            let expect = dirs[cert.parts[a] as usize];
            for k in 0..3 {
                assert!((u[k] - expect[k]).abs() < 1e-15);
            }
            assert!(dot(u, &cert.solution.vstar).abs() < 1e-15);
        }

        let inst = gen_planted(12, 8, 1).unwrap();
        let o = ortho_profile(&plant_rank1_certificate(&inst));
        assert_eq!(o.degenerate.len(), 12);
        assert!(o.ubar(0).iter().map(|x| x * x).sum::<f64>() == 1.0);
    }

    #[test]
    fn fallback_direction_is_orthogonal() {
        let vstar = [0.6, 0.0, 0.8];
        let u = orthogonal_unit(&vstar);
        assert!(dot(&u, &vstar).abs() < 1e-15);
        assert!((norm(&u) - 1.0).abs() < 1e-15);
    }
}
