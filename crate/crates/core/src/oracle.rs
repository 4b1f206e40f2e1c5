//! Ground truth at desk scale: exact MAP optimum by branch and bound, the cut
//! LP with every cut written out, and minimum uplink covers by enumeration.

use itertools::Itertools;
use serde::Serialize;

use crate::cut_lp;
use crate::dfs::DfsTree;
use crate::error::{Error, Result};
use crate::graph::{self, EdgeId, MapInstance, VertexId};
use crate::rational::Rational;

pub const MAX_ENUMERATION_VERTICES: usize = 12;
pub const MAX_COVER_BACK_EDGES: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub opt_cost: usize,
    /// All light edges plus the optimal heavy edges, ascending.
    pub witness: Vec<EdgeId>,
    pub nodes_explored: u64,
}

struct Search<'a> {
    inst: &'a MapInstance,
    heavy: Vec<EdgeId>,
    /// Heavy degree each vertex still needs: 2 minus its light degree.
    need: Vec<usize>,
    mask: Vec<bool>,
    chosen_deg: Vec<usize>,
    open_deg: Vec<usize>,
    chosen: usize,
    best: Option<(usize, Vec<EdgeId>)>,
    nodes: u64,
    budget: Option<u64>,
    root_lower: usize,
}

impl Search<'_> {
    /// Degree bound: each vertex needs `need[v]` heavy edges, each edge
    /// serves two vertices.
    fn lower_bound(&self) -> usize {
        let missing: usize = (0..self.need.len()).map(|v| self.need[v].saturating_sub(self.chosen_deg[v])).sum();
        self.chosen + missing.div_ceil(2)
    }

    fn degree_feasible(&self, e: EdgeId) -> bool {
        let (u, v) = self.inst.graph().endpoints(e);
        [u, v].iter().all(|&w| self.chosen_deg[w] + self.open_deg[w] >= self.need[w])
    }

    fn explore(&mut self, k: usize) -> Result<()> {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                return Err(Error::BudgetExceeded {
                    budget,
                    lower: self.root_lower,
                    best: self.best.as_ref().map(|b| b.0),
                });
            }
        }
        if let Some((best, _)) = &self.best {
            if self.lower_bound() >= *best {
                return Ok(());
            }
        }
        if k == self.heavy.len() {
            // mask holds lights + chosen heavy edges here.
            if graph::is_two_edge_connected_on(self.inst.graph(), Some(&self.mask)) {
                let witness = (0..self.mask.len()).filter(|&e| self.mask[e]).collect();
                self.best = Some((self.chosen, witness));
            }
            return Ok(());
        }
        let e = self.heavy[k];
        let (u, v) = self.inst.graph().endpoints(e);
        self.open_deg[u] -= 1;
        self.open_deg[v] -= 1;

        // Include first: reaching a good incumbent early sharpens pruning.
        self.chosen += 1;
        self.chosen_deg[u] += 1;
        self.chosen_deg[v] += 1;
        self.explore(k + 1)?;
        self.chosen_deg[u] -= 1;
        self.chosen_deg[v] -= 1;
        self.chosen -= 1;

        // Exclude: lights + chosen + undecided must stay 2-edge-connected.
        self.mask[e] = false;
        if self.degree_feasible(e) && self.remaining_is_two_edge_connected() {
            self.explore(k + 1)?;
        }
        self.mask[e] = true;
        self.open_deg[u] += 1;
        self.open_deg[v] += 1;
        Ok(())
    }

    /// `mask` keeps undecided heavy edges switched on, so this checks lights
    /// plus chosen plus undecided.
    fn remaining_is_two_edge_connected(&self) -> bool {
        graph::is_two_edge_connected_on(self.inst.graph(), Some(&self.mask))
    }
}

/// Exact MAP optimum by branch and bound over the heavy edges.
///
/// Branches include before exclude; an exclusion is kept only if the edges
/// not yet excluded still form a 2-edge-connected graph and still meet the
/// degree requirements. Pruning uses the degree lower bound against the
/// incumbent. `budget` caps the number of search nodes.
pub fn exact_opt(inst: &MapInstance, budget: Option<u64>) -> Result<OracleResult> {
    let g = inst.graph();
    if !graph::is_two_edge_connected(g) {
        return Err(Error::Infeasible("graph is not 2-edge-connected".into()));
    }
    let n = inst.vertex_count();
    let mut need = vec![2usize; n];
    for e in inst.light_edges() {
        let (u, v) = g.endpoints(e);
        need[u] = need[u].saturating_sub(1);
        need[v] = need[v].saturating_sub(1);
    }
    // Higher-degree endpoints first tends to find tours sooner.
    let degree: Vec<usize> = g.adjacency().iter().map(Vec::len).collect();
    let mut heavy = inst.heavy_edges();
    heavy.sort_by_key(|&e| {
        let (u, v) = g.endpoints(e);
        (degree[u].min(degree[v]), e)
    });
    let mut open_deg = vec![0usize; n];
    for &e in &heavy {
        let (u, v) = g.endpoints(e);
        open_deg[u] += 1;
        open_deg[v] += 1;
    }
    let mut search = Search {
        inst,
        heavy,
        need,
        mask: vec![true; g.edge_count()],
        chosen_deg: vec![0; n],
        open_deg,
        chosen: 0,
        best: None,
        nodes: 0,
        budget,
        root_lower: 0,
    };
    search.root_lower = search.lower_bound();
    search.explore(0)?;
    let (opt_cost, witness) = search.best.expect("the full edge set is feasible");
    Ok(OracleResult { opt_cost, witness, nodes_explored: search.nodes })
}

/// Every side `S` with `0 ∈ S ⊊ V`, one per cut `δ(S)`.
pub fn all_cut_sides(n: usize) -> Vec<Vec<VertexId>> {
    let full: u64 = (1u64 << (n - 1)) - 1;
    (0..full)
        .map(|rest| {
            let mut side = vec![0];
            side.extend((1..n).filter(|&v| rest >> (v - 1) & 1 == 1));
            side
        })
        .collect()
}

/// Optimum of the cut LP with all `2^(n−1) − 1` cuts listed explicitly.
pub fn exact_cut_lp_enumeration(inst: &MapInstance) -> Result<Rational> {
    let n = inst.vertex_count();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::SizeLimit { what: "vertex count", limit: MAX_ENUMERATION_VERTICES, actual: n });
    }
    if n < 2 {
        return Err(Error::Infeasible("fewer than two vertices".into()));
    }
    cut_lp::solve_with_cuts(inst, &all_cut_sides(n)).map(|s| s.objective)
}

/// Smallest number of back edges covering every tree edge, by enumerating
/// subsets in increasing size.
pub fn exact_uplink_cover(tree: &DfsTree) -> Result<usize> {
    let links = tree.back_edges.len();
    if links > MAX_COVER_BACK_EDGES {
        return Err(Error::SizeLimit { what: "back edge count", limit: MAX_COVER_BACK_EDGES, actual: links });
    }
    let tree_vertices: Vec<VertexId> = tree.non_root_vertices().collect();
    if tree_vertices.len() > 128 {
        return Err(Error::SizeLimit { what: "tree edge count", limit: 128, actual: tree_vertices.len() });
    }
    let masks: Vec<u128> = tree
        .back_edges
        .iter()
        .map(|b| {
            tree_vertices
                .iter()
                .enumerate()
                .filter(|(_, &v)| tree.covers(b, v))
                .fold(0u128, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let target: u128 = if tree_vertices.len() == 128 { u128::MAX } else { (1u128 << tree_vertices.len()) - 1 };
    if masks.iter().fold(0, |a, m| a | m) != target {
        let i = (0..tree_vertices.len()).find(|&i| masks.iter().all(|m| m >> i & 1 == 0)).expect("gap exists");
        return Err(Error::UncoverableTreeEdge { edge: tree.parent_edge[tree_vertices[i]].expect("non-root") });
    }
    for size in 0..=links {
        if masks.iter().combinations(size).any(|c| c.iter().fold(0u128, |a, m| a | **m) == target) {
            return Ok(size);
        }
    }
    unreachable!("the union of all links covers the tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut_lp::LpSolution;
    use crate::dfs::guided_dfs;
    use crate::graph::EdgeVector;
    use crate::rational::int;
    use crate::toolkit::generators::gen_gap_instance;

    fn four_cycle() -> MapInstance {
        MapInstance::from_triples(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]).unwrap()
    }

    fn triangle() -> MapInstance {
        MapInstance::from_triples(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap()
    }

    #[test]
    fn exact_opt_examples() {
        assert_eq!(exact_opt(&four_cycle(), None).unwrap().opt_cost, 2);
        assert_eq!(exact_opt(&triangle(), None).unwrap().opt_cost, 3);
        let gap = gen_gap_instance(1).unwrap();
        let res = exact_opt(&gap, None).unwrap();
        assert_eq!(res.opt_cost, 4);
        let mut mask = vec![false; gap.edge_count()];
        for &e in &res.witness {
            mask[e] = true;
        }
        assert!(graph::is_two_edge_connected_on(gap.graph(), Some(&mask)));
        assert_eq!(gap.heavy_cost(&res.witness), 4);
    }

    #[test]
    fn exact_opt_budget() {
        let gap = gen_gap_instance(1).unwrap();
        assert!(matches!(exact_opt(&gap, Some(2)), Err(Error::BudgetExceeded { budget: 2, .. })));
    }

    #[test]
    fn enumeration_lp_examples() {
        assert_eq!(exact_cut_lp_enumeration(&four_cycle()).unwrap(), int(2));
        assert_eq!(exact_cut_lp_enumeration(&triangle()).unwrap(), int(3));
        assert_eq!(exact_cut_lp_enumeration(&gen_gap_instance(1).unwrap()).unwrap(), int(3));
        assert_eq!(all_cut_sides(4).len(), 7);
    }

    #[test]
    fn enumeration_lp_size_limit() {
        let n = MAX_ENUMERATION_VERTICES + 1;
        let triples: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        let inst = MapInstance::from_triples(n, &triples).unwrap();
        assert!(matches!(exact_cut_lp_enumeration(&inst), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn uplink_cover_examples() {
        let fake = |x: EdgeVector| LpSolution {
            support: x.support(),
            objective: int(0),
            x,
            basis_certificate: Default::default(),
            dual: Default::default(),
            rounds: 0,
            cuts_used: 0,
        };
        let inst = four_cycle();
        let tree = guided_dfs(&inst, &fake(EdgeVector::ones(4)), 0).unwrap();
        assert_eq!(exact_uplink_cover(&tree).unwrap(), 1);

        let gap = gen_gap_instance(1).unwrap();
        let x = EdgeVector::new(
            (0..gap.edge_count())
                .map(|e| if gap.is_light(e) { int(1) } else { crate::rational::ratio(1, 2) })
                .collect(),
        )
        .unwrap();
        let tree = guided_dfs(&gap, &fake(x), 0).unwrap();
        assert_eq!(exact_uplink_cover(&tree).unwrap(), 2);
    }
}
