//! Exhaustive references for small instances.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, RankedColoring};

/// Largest search space `k^n` [`brute_lo`] accepts.
pub const LO_SEARCH_LIMIT: f64 = 1e8;
/// Largest vertex count the set searches accept.
pub const SET_SEARCH_MAX_N: usize = 24;

/// Some LO coloring with ranks in `1..=k`, or `None` if none exists.
///
/// Vertices are assigned in id order; an edge is checked as soon as its
/// last vertex gets a rank, and a partial edge whose two assigned ranks tie
/// at `k` is cut immediately.
pub fn brute_lo(h: &Hypergraph, k: usize) -> Result<Option<RankedColoring>> {
    let n = h.n();
    if (k as f64).powi(n as i32) > LO_SEARCH_LIMIT {
        return Err(Error::SizeGuard(format!("{k}^{n} colorings exceed the search limit")));
    }
    if n == 0 {
        return Ok(Some(RankedColoring::new(0)));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut ranks = vec![0i64; n];
    if lo_search(h, k as i64, 0, &mut ranks) {
        Ok(Some(RankedColoring::from_ranks(ranks)))
    } else {
        Ok(None)
    }
}

fn lo_search(h: &Hypergraph, k: i64, v: usize, ranks: &mut [i64]) -> bool {
    if v == ranks.len() {
        return true;
    }
    for r in 1..=k {
        ranks[v] = r;
        if lo_consistent(h, k, v, ranks) && lo_search(h, k, v + 1, ranks) {
            return true;
        }
    }
    ranks[v] = 0;
    false
}

/// Checks the edges at `v` given that vertices `0..=v` are assigned.
fn lo_consistent(h: &Hypergraph, k: i64, v: usize, ranks: &[i64]) -> bool {
    h.incident(v).iter().all(|&ei| {
        let e = h.edge(ei);
        let last = e[2];
        if last == v {
            let rs = [ranks[e[0]], ranks[e[1]], ranks[e[2]]];
            let max = *rs.iter().max().unwrap();
            rs.iter().filter(|&&x| x == max).count() == 1
        } else if e[1] == v {
            !(ranks[e[0]] == k && ranks[e[1]] == k)
        } else {
            true
        }
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Odd,
    Even,
}

/// Maximum odd independent set (`|S ∩ e| ≤ 1`); ties go to the
/// lexicographically smallest set.
pub fn brute_max_odd_is(h: &Hypergraph) -> Result<Vec<usize>> {
    max_set(h, Kind::Odd)
}

/// Maximum even independent set (`|S ∩ e| ∈ {0, 2}`); ties go to the
/// lexicographically smallest set.
pub fn brute_max_even_is(h: &Hypergraph) -> Result<Vec<usize>> {
    max_set(h, Kind::Even)
}

fn max_set(h: &Hypergraph, kind: Kind) -> Result<Vec<usize>> {
    if h.n() > SET_SEARCH_MAX_N {
        return Err(Error::SizeGuard(format!(
            "{} vertices exceed the exhaustive limit of {SET_SEARCH_MAX_N}",
            h.n()
        )));
    }
    let mut s = SetSearch {
        h,
        kind,
        count: vec![0; h.num_edges()],
        cur: Vec::new(),
        best: Vec::new(),
    };
    s.run(0);
    Ok(s.best)
}

struct SetSearch<'a> {
    h: &'a Hypergraph,
    kind: Kind,
    /// Members of the current set in each edge.
    count: Vec<u8>,
    cur: Vec<usize>,
    best: Vec<usize>,
}

impl SetSearch<'_> {
    fn run(&mut self, v: usize) {
        let n = self.h.n();
        if self.cur.len() + (n - v) <= self.best.len() {
            return;
        }
        if v == n {
            self.best = self.cur.clone();
            return;
        }
        // include first, so the first maximum found is lexicographically least
        if self.can_include(v) {
            self.adjust(v, true);
            self.cur.push(v);
            if self.closes_ok(v) {
                self.run(v + 1);
            }
            self.cur.pop();
            self.adjust(v, false);
        }
        if self.closes_ok(v) {
            self.run(v + 1);
        }
    }

    fn can_include(&self, v: usize) -> bool {
        let cap = if self.kind == Kind::Odd { 1 } else { 2 };
        self.h.incident(v).iter().all(|&e| self.count[e] < cap)
    }

    fn adjust(&mut self, v: usize, add: bool) {
        for &e in self.h.incident(v) {
            if add {
                self.count[e] += 1;
            } else {
                self.count[e] -= 1;
            }
        }
    }

    /// Parity of every edge whose largest vertex is `v` (even sets only).
    fn closes_ok(&self, v: usize) -> bool {
        self.kind == Kind::Odd
            || self
                .h
                .incident(v)
                .iter()
                .all(|&e| self.h.edge(e)[2] != v || self.count[e] % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Hypergraph {
        Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn single_edge_two_colors() {
        let h = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let c = brute_lo(&h, 2).unwrap().unwrap();
        assert!(h.check_lo(&c).unwrap());
        let mut r: Vec<i64> = c.as_slice().iter().map(|x| x.unwrap()).collect();
        r.sort_unstable();
        assert_eq!(r, vec![1, 1, 2]);
    }

    #[test]
    fn k4_needs_three_colors() {
        assert!(brute_lo(&k4(), 2).unwrap().is_none());
        let c = brute_lo(&k4(), 3).unwrap().unwrap();
        assert!(k4().check_lo(&c).unwrap());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(brute_lo(&Hypergraph::empty(30), 2), Err(Error::SizeGuard(_))));
        assert!(matches!(brute_max_odd_is(&Hypergraph::empty(25)), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn set_examples() {
        let one = Hypergraph::new(5, [[0, 1, 2]]).unwrap();
        assert_eq!(brute_max_odd_is(&one).unwrap(), vec![0, 3, 4]);
        assert_eq!(brute_max_even_is(&one).unwrap(), vec![0, 1, 3, 4]);
        let two = Hypergraph::new(6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(brute_max_odd_is(&two).unwrap().len(), 2);
        let star = Hypergraph::new(5, [[0, 1, 2], [0, 3, 4]]).unwrap();
        assert_eq!(brute_max_even_is(&star).unwrap(), vec![1, 2, 3, 4]);
        assert!(brute_max_odd_is(&Hypergraph::empty(0)).unwrap().is_empty());
    }

    #[test]
    fn matches_flat_enumeration() {
        let h = Hypergraph::new(7, [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 6], [2, 5, 6]]).unwrap();
        for (kind, f) in [(true, brute_max_odd_is as fn(&Hypergraph) -> Result<Vec<usize>>), (false, brute_max_even_is)] {
            let mut best: Vec<usize> = Vec::new();
            for mask in 0u32..1 << 7 {
                let s: Vec<usize> = (0..7).filter(|v| mask >> v & 1 == 1).collect();
                let ok = if kind { h.check_odd_is(&s) } else { h.check_even_is(&s) };
                if ok && (s.len() > best.len() || (s.len() == best.len() && s < best)) {
                    best = s;
                }
            }
            assert_eq!(f(&h).unwrap(), best);
        }
    }
}
