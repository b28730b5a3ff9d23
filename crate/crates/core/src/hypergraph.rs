//! 3-uniform hypergraphs, ranked colorings and the validity checkers.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub type Edge = [usize; 3];

/// Checks a raw edge list against the hypergraph invariants.
///
/// Reports the first offending edge: a repeated vertex, an id `>= n`, or an
/// edge whose vertex set already appeared.
pub fn validate_hypergraph(n: usize, edges: &[Edge]) -> Result<()> {
    let mut seen: HashMap<Edge, usize> = HashMap::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        if let Some(&v) = e.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { edge: i, vertex: v });
        }
        let s = sorted(*e);
        if s[0] == s[1] || s[1] == s[2] {
            return Err(Error::RepeatedVertex { edge: i });
        }
        if let Some(&first) = seen.get(&s) {
            return Err(Error::DuplicateEdge { edge: i, first });
        }
        seen.insert(s, i);
    }
    Ok(())
}

fn sorted(mut e: Edge) -> Edge {
    e.sort_unstable();
    e
}

/// A 3-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted within each triple, deduplicated, in order of
/// first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, silently dropping duplicate edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::new();
        for e in edges {
            let s = sorted(e);
            if seen.insert(s) {
                kept.push(s);
            }
        }
        validate_hypergraph(n, &kept)?;
        Ok(Self::from_canonical(n, kept))
    }

    /// Builds a hypergraph, rejecting duplicate edges.
    pub fn new_strict(n: usize, edges: Vec<Edge>) -> Result<Self> {
        validate_hypergraph(n, &edges)?;
        Ok(Self::from_canonical(n, edges.into_iter().map(sorted).collect()))
    }

    fn from_canonical(n: usize, edges: Vec<Edge>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Hypergraph {
            n,
            edges,
            incidence,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    /// Ids of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// True iff no two edges share two or more vertices.
    pub fn is_linear(&self) -> bool {
        let mut pairs = std::collections::HashSet::with_capacity(3 * self.edges.len());
        self.edges.iter().all(|&[a, b, c]| {
            pairs.insert((a, b)) && pairs.insert((a, c)) && pairs.insert((b, c))
        })
    }

    /// Subhypergraph induced on `vertices`, reindexed to `0..vertices.len()`.
    ///
    /// Duplicate entries in `vertices` are ignored; the index map keeps the
    /// sorted order of the original ids.
    pub fn induced(&self, vertices: &[usize]) -> Induced {
        let mut verts: Vec<usize> = vertices.to_vec();
        verts.sort_unstable();
        verts.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| local[v] != usize::MAX))
            .map(|e| [local[e[0]], local[e[1]], local[e[2]]])
            .collect();
        Induced {
            graph: Self::from_canonical(verts.len(), edges),
            vertices: verts,
            parent_n: self.n,
        }
    }

    /// First edge whose ranks lack a strict unique maximum.
    ///
    /// Every vertex in an edge must be colored; vertices in no edge are
    /// never inspected.
    pub fn first_lo_violation(&self, c: &RankedColoring) -> Result<Option<usize>> {
        for (i, e) in self.edges.iter().enumerate() {
            let mut ranks = [0i64; 3];
            for (slot, &v) in ranks.iter_mut().zip(e) {
                *slot = c.rank(v).ok_or(Error::Unassigned { vertex: v })?;
            }
            if !unique_max(&ranks) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// True iff `c` is an LO coloring: every edge has a unique maximum rank.
    pub fn check_lo(&self, c: &RankedColoring) -> Result<bool> {
        Ok(self.first_lo_violation(c)?.is_none())
    }

    /// First edge whose colored part has a repeated maximum.
    pub fn first_partial_lo_violation(&self, c: &RankedColoring) -> Option<usize> {
        self.edges.iter().position(|e| {
            let ranks: Vec<i64> = e.iter().filter_map(|&v| c.rank(v)).collect();
            !ranks.is_empty() && !unique_max(&ranks)
        })
    }

    /// Partial LO check; edges with no colored vertex are fine.
    pub fn check_partial_lo(&self, c: &RankedColoring) -> bool {
        self.first_partial_lo_violation(c).is_none()
    }

    fn membership(&self, set: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &v in set {
            mask[v] = true;
        }
        mask
    }

    fn hits(mask: &[bool], e: &Edge) -> usize {
        e.iter().filter(|&&v| mask[v]).count()
    }

    /// First edge meeting `set` two or more times.
    pub fn first_odd_violation(&self, set: &[usize]) -> Option<usize> {
        let mask = self.membership(set);
        self.edges.iter().position(|e| Self::hits(&mask, e) > 1)
    }

    /// First edge meeting `set` exactly once or three times.
    pub fn first_even_violation(&self, set: &[usize]) -> Option<usize> {
        let mask = self.membership(set);
        self.edges.iter().position(|e| Self::hits(&mask, e) % 2 == 1)
    }

    /// `|S ∩ e| <= 1` for every edge.
    pub fn check_odd_is(&self, set: &[usize]) -> bool {
        self.first_odd_violation(set).is_none()
    }

    /// `|S ∩ e| ∈ {0, 2}` for every edge.
    pub fn check_even_is(&self, set: &[usize]) -> bool {
        self.first_even_violation(set).is_none()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let average = if self.n == 0 {
            0.0
        } else {
            3.0 * self.edges.len() as f64 / self.n as f64
        };
        DegreeStats {
            degrees,
            average,
            delta_bar: average,
        }
    }

    /// Identifies vertices forced equal in every 2-LO coloring until the
    /// hypergraph is linear.
    ///
    /// Whenever two edges share a pair `{a, b}`, their third vertices are
    /// merged (union-find, smaller id survives), repeated to a fixpoint.
    /// Merged vertices stay in the id space as isolated vertices.
    ///
    /// An edge collapsing to `{x, x, y}` is dropped; every 2-LO coloring
    /// gives `y` the top color there, so `y` is recorded as forced-top and
    /// [`lift_coloring`] raises it. The input is reported as not 2-LO
    /// colorable when an edge collapses to a single vertex, a forced-top
    /// vertex is also the repeated vertex of a collapse, or an edge holds
    /// two forced-top vertices.
    pub fn make_linear(&self) -> Result<(Hypergraph, MergeMap)> {
        let mut uf = UnionFind::new(self.n);
        loop {
            let mut pair_owner: HashMap<(usize, usize), usize> = HashMap::new();
            let mut seen = std::collections::HashSet::new();
            let mut changed = false;
            for (i, e) in self.edges.iter().enumerate() {
                let r = sorted([uf.find(e[0]), uf.find(e[1]), uf.find(e[2])]);
                if r[0] == r[2] {
                    return Err(Error::NotTwoLoColorable { edge: i });
                }
                if r[0] == r[1] || r[1] == r[2] || !seen.insert(r) {
                    continue;
                }
                for (pair, third) in [((r[0], r[1]), r[2]), ((r[0], r[2]), r[1]), ((r[1], r[2]), r[0])] {
                    match pair_owner.get(&pair) {
                        Some(&other) => {
                            if uf.union(other, third) {
                                changed = true;
                            }
                        }
                        None => {
                            pair_owner.insert(pair, third);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let representative: Vec<usize> = (0..self.n).map(|v| uf.find(v)).collect();
        let mut top = vec![false; self.n];
        let mut bottom = vec![None; self.n];
        let mut kept = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let r = sorted(e.map(|v| representative[v]));
            if r[0] == r[1] {
                top[r[2]] = true;
                bottom[r[0]] = Some(i);
            } else if r[1] == r[2] {
                top[r[0]] = true;
                bottom[r[1]] = Some(i);
            } else {
                kept.push(r);
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let r = e.map(|v| representative[v]);
            let tops = r.iter().filter(|&&x| top[x]).count();
            if tops >= 2 || r.iter().any(|&x| top[x] && bottom[x].is_some()) {
                let witness = r.iter().find_map(|&x| bottom[x].filter(|_| top[x])).unwrap_or(i);
                return Err(Error::NotTwoLoColorable { edge: witness });
            }
        }
        let forced_top = (0..self.n).filter(|&v| top[v]).collect();
        let map = MergeMap {
            representative,
            forced_top,
        };
        Ok((Hypergraph::new(self.n, kept)?, map))
    }
}

fn unique_max(ranks: &[i64]) -> bool {
    let max = ranks.iter().copied().max().unwrap_or(0);
    ranks.iter().filter(|&&r| r == max).count() == 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub average: f64,
    /// Δ̄ = 3|E|/|V|, the smallest bound with |E| <= Δ̄|V|/3.
    pub delta_bar: f64,
}

/// An induced subhypergraph together with its map back to parent ids.
#[derive(Debug, Clone)]
pub struct Induced {
    pub graph: Hypergraph,
    /// `vertices[i]` is the parent id of local vertex `i`.
    pub vertices: Vec<usize>,
    parent_n: usize,
}

impl Induced {
    /// Carries a coloring of the induced graph back to parent ids.
    pub fn lift(&self, local: &RankedColoring) -> RankedColoring {
        let mut out = RankedColoring::new(self.parent_n);
        for (i, &v) in self.vertices.iter().enumerate() {
            if let Some(r) = local.rank(i) {
                out.assign(v, r);
            }
        }
        out
    }

    /// Local ids of the given parent vertices (parent ids not in the
    /// subgraph are skipped).
    pub fn localize(&self, parent: &[usize]) -> Vec<usize> {
        parent
            .iter()
            .filter_map(|v| self.vertices.binary_search(v).ok())
            .collect()
    }
}

/// A (possibly partial) assignment of integer ranks; larger rank is a
/// larger color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedColoring {
    ranks: Vec<Option<i64>>,
}

impl RankedColoring {
    pub fn new(n: usize) -> Self {
        RankedColoring {
            ranks: vec![None; n],
        }
    }

    pub fn from_ranks(ranks: impl IntoIterator<Item = i64>) -> Self {
        RankedColoring {
            ranks: ranks.into_iter().map(Some).collect(),
        }
    }

    pub fn from_partial(ranks: Vec<Option<i64>>) -> Self {
        RankedColoring { ranks }
    }

    /// Number of vertices the coloring is defined over (assigned or not).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, v: usize) -> Option<i64> {
        self.ranks.get(v).copied().flatten()
    }

    pub fn assign(&mut self, v: usize, rank: i64) {
        self.ranks[v] = Some(rank);
    }

    pub fn is_assigned(&self, v: usize) -> bool {
        self.rank(v).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.ranks.iter().all(Option::is_some)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranks
            .iter()
            .enumerate()
            .filter_map(|(v, r)| r.map(|_| v))
    }

    pub fn unassigned(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranks
            .iter()
            .enumerate()
            .filter_map(|(v, r)| r.is_none().then_some(v))
    }

    pub fn distinct_ranks(&self) -> BTreeSet<i64> {
        self.ranks.iter().flatten().copied().collect()
    }

    pub fn num_colors(&self) -> usize {
        self.distinct_ranks().len()
    }

    pub fn max_rank(&self) -> Option<i64> {
        self.ranks.iter().flatten().copied().max()
    }

    pub fn min_rank(&self) -> Option<i64> {
        self.ranks.iter().flatten().copied().min()
    }

    pub fn as_slice(&self) -> &[Option<i64>] {
        &self.ranks
    }

    /// Adds `delta` to every assigned rank.
    pub fn shifted(&self, delta: i64) -> Self {
        RankedColoring {
            ranks: self.ranks.iter().map(|r| r.map(|x| x + delta)).collect(),
        }
    }

    /// Maps the distinct ranks order-preservingly onto `1..=k`.
    pub fn normalized(&self) -> Self {
        let order: HashMap<i64, i64> = self
            .distinct_ranks()
            .into_iter()
            .zip(1..)
            .collect();
        RankedColoring {
            ranks: self.ranks.iter().map(|r| r.map(|x| order[&x])).collect(),
        }
    }
}

/// Vertex identifications made by [`Hypergraph::make_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeMap {
    representative: Vec<usize>,
    /// Representatives that every 2-LO coloring puts on top of a collapsed
    /// edge; sorted.
    forced_top: Vec<usize>,
}

impl MergeMap {
    pub fn identity(n: usize) -> Self {
        MergeMap {
            representative: (0..n).collect(),
            forced_top: Vec::new(),
        }
    }

    /// Builds a map from arbitrary representative pointers, compressing
    /// chains so the result is idempotent.
    pub fn from_parents(parents: Vec<usize>) -> Self {
        let n = parents.len();
        let mut representative = parents;
        for v in 0..n {
            let mut r = v;
            let mut steps = 0;
            while representative[r] != r && steps <= n {
                r = representative[r];
                steps += 1;
            }
            representative[v] = r;
        }
        MergeMap {
            representative,
            forced_top: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }

    pub fn representative(&self, v: usize) -> usize {
        self.representative[v]
    }

    pub fn is_identity(&self) -> bool {
        self.forced_top.is_empty() && self.representative.iter().enumerate().all(|(v, &r)| v == r)
    }

    pub fn forced_top(&self) -> &[usize] {
        &self.forced_top
    }

    /// `self` followed by `next` (both over the same id space).
    pub fn then(&self, next: &MergeMap) -> MergeMap {
        let mut forced_top: Vec<usize> = self
            .forced_top
            .iter()
            .map(|&r| next.representative[r])
            .chain(next.forced_top.iter().copied())
            .collect();
        forced_top.sort_unstable();
        forced_top.dedup();
        MergeMap {
            representative: self
                .representative
                .iter()
                .map(|&r| next.representative[r])
                .collect(),
            forced_top,
        }
    }
}

/// Copies colors of representatives back onto the merged vertices, then
/// moves forced-top classes to a fresh rank above all others.
pub fn lift_coloring(map: &MergeMap, coloring: &RankedColoring) -> Result<RankedColoring> {
    let mut out = RankedColoring::new(map.len());
    for v in 0..map.len() {
        let r = map.representative(v);
        let rank = coloring.rank(r).ok_or(Error::Unassigned { vertex: r })?;
        out.assign(v, rank);
    }
    if !map.forced_top.is_empty() {
        let top = out.max_rank().unwrap_or(0) + 1;
        for v in 0..map.len() {
            if map.forced_top.binary_search(&map.representative(v)).is_ok() {
                out.assign(v, top);
            }
        }
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; the smaller root survives.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[Edge]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn validation_reports_first_offender() {
        assert!(validate_hypergraph(3, &[[0, 1, 2]]).is_ok());
        let err = validate_hypergraph(3, &[[0, 1, 1]]).unwrap_err();
        assert_eq!(err.to_string(), "repeated vertex in edge 0");
        let err = validate_hypergraph(2, &[[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { edge: 0, vertex: 2 }));
        let err = validate_hypergraph(4, &[[0, 1, 2], [2, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { edge: 1, first: 0 }));
    }

    #[test]
    fn construction_canonicalizes_and_dedups() {
        let g = h(4, &[[2, 0, 1], [1, 2, 0], [3, 1, 0]]);
        assert_eq!(g.edges(), &[[0, 1, 2], [0, 1, 3]]);
        assert!(Hypergraph::new_strict(4, vec![[2, 0, 1], [1, 2, 0]]).is_err());
    }

    #[test]
    fn linearity() {
        assert!(h(5, &[[0, 1, 2], [0, 3, 4]]).is_linear());
        assert!(!h(4, &[[0, 1, 2], [0, 1, 3]]).is_linear());
        assert!(h(0, &[]).is_linear());
    }

    #[test]
    fn make_linear_merges_third_vertices() {
        let (g, m) = h(4, &[[0, 1, 2], [0, 1, 3]]).make_linear().unwrap();
        assert_eq!(g.edges(), &[[0, 1, 2]]);
        assert_eq!(m.representative(3), 2);
        assert_eq!(m.representative(2), 2);
        assert!(g.is_linear());
    }

    #[test]
    fn make_linear_fixed_point_on_linear_input() {
        let g0 = h(5, &[[0, 1, 2], [0, 3, 4]]);
        let (g, m) = g0.make_linear().unwrap();
        assert_eq!(g, g0);
        assert!(m.is_identity());
    }

    #[test]
    fn make_linear_k4_is_witness() {
        let k4 = h(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert!(matches!(k4.make_linear(), Err(Error::NotTwoLoColorable { .. })));
    }

    #[test]
    fn collapse_to_two_vertices_forces_a_top() {
        // colorable with vertex 1 on top; merging 0 and 3 collapses the last edge
        let g0 = h(4, &[[1, 2, 3], [0, 1, 2], [0, 1, 3]]);
        let (g, m) = g0.make_linear().unwrap();
        assert_eq!(g.edges(), &[[0, 1, 2]]);
        assert_eq!(m.forced_top(), &[1]);
        assert!(!m.is_identity());
        // a valid coloring of the reduced graph that puts 2 on top still lifts
        let c = RankedColoring::from_ranks([1, 1, 2, 1]);
        assert!(g.check_lo(&c).unwrap());
        let lifted = lift_coloring(&m, &c).unwrap();
        assert_eq!(lifted.rank(1), Some(3));
        assert!(g0.check_lo(&lifted).unwrap());
    }

    #[test]
    fn two_forced_tops_in_one_edge_is_witness() {
        // 2..5 merge through the pair {0, 1}; {0,2,3} and {1,4,5} then
        // collapse with tops 0 and 1, which share an edge
        let g0 = h(6, &[[0, 2, 3], [0, 1, 2], [0, 1, 3], [1, 4, 5], [0, 1, 4], [0, 1, 5]]);
        assert!(matches!(g0.make_linear(), Err(Error::NotTwoLoColorable { .. })));
    }

    #[test]
    fn lift_through_representatives() {
        let m = MergeMap::from_parents(vec![0, 1, 2, 2]);
        let c = RankedColoring::from_partial(vec![Some(1), Some(1), Some(2), None]);
        let lifted = lift_coloring(&m, &c).unwrap();
        assert_eq!(lifted.rank(3), Some(2));
        let id = MergeMap::identity(3);
        let c = RankedColoring::from_ranks([3, 1, 2]);
        assert_eq!(lift_coloring(&id, &c).unwrap(), c);
        let unassigned = RankedColoring::from_partial(vec![Some(1), None, None, None]);
        assert!(matches!(lift_coloring(&m, &unassigned), Err(Error::Unassigned { vertex: 1 })));
    }

    #[test]
    fn from_parents_compresses_chains() {
        let m = MergeMap::from_parents(vec![0, 0, 1, 2, 4]);
        for v in 0..5 {
            assert_eq!(m.representative(m.representative(v)), m.representative(v));
        }
        assert_eq!(m.representative(3), 0);
    }

    #[test]
    fn induced_subgraphs() {
        let g = h(3, &[[0, 1, 2]]);
        let sub = g.induced(&[0, 1]);
        assert_eq!(sub.graph.n(), 2);
        assert_eq!(sub.graph.num_edges(), 0);
        assert_eq!(g.induced(&[0, 1, 2]).graph, g);
        let g = h(5, &[[0, 1, 2], [2, 3, 4]]);
        let sub = g.induced(&[2, 3, 4]);
        assert_eq!(sub.graph.edges(), &[[0, 1, 2]]);
        assert_eq!(sub.vertices, vec![2, 3, 4]);
        assert_eq!(sub.localize(&[3, 0]), vec![1]);
    }

    #[test]
    fn lo_checks() {
        let g = h(3, &[[0, 1, 2]]);
        assert!(g.check_lo(&RankedColoring::from_ranks([2, 1, 1])).unwrap());
        assert!(!g.check_lo(&RankedColoring::from_ranks([2, 2, 1])).unwrap());
        assert!(g.check_lo(&RankedColoring::from_ranks([1, 2, 3])).unwrap());
        let partial = RankedColoring::from_partial(vec![Some(1), None, None]);
        assert!(matches!(g.check_lo(&partial), Err(Error::Unassigned { vertex: 1 })));
    }

    #[test]
    fn partial_lo_checks() {
        let g = h(3, &[[0, 1, 2]]);
        assert!(g.check_partial_lo(&RankedColoring::from_partial(vec![Some(5), None, None])));
        assert!(!g.check_partial_lo(&RankedColoring::from_partial(vec![Some(1), Some(1), None])));
        assert!(g.check_partial_lo(&RankedColoring::new(3)));
    }

    #[test]
    fn independence_checks() {
        let g = h(3, &[[0, 1, 2]]);
        assert!(g.check_odd_is(&[0]) && !g.check_even_is(&[0]));
        assert!(!g.check_odd_is(&[0, 1]) && g.check_even_is(&[0, 1]));
        assert!(g.check_odd_is(&[]) && g.check_even_is(&[]));
    }

    #[test]
    fn degree_statistics() {
        assert_eq!(h(3, &[[0, 1, 2]]).degree_stats().delta_bar, 1.0);
        let g = h(6, &[[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]]);
        assert_eq!(g.degree_stats().delta_bar, 2.0);
        assert_eq!(h(0, &[]).degree_stats().delta_bar, 0.0);
    }

    #[test]
    fn normalization_preserves_order() {
        let c = RankedColoring::from_partial(vec![Some(-4), Some(10), None, Some(-4), Some(3)]);
        let n = c.normalized();
        assert_eq!(n.as_slice(), &[Some(1), Some(3), None, Some(1), Some(2)]);
        assert_eq!(n.num_colors(), 3);
    }
}
