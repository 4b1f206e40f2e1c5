//! The LP-based algorithm end to end, solution verification, and the
//! per-run report with its tightness diagnostics.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cut_lp::{self, LpSolution};
use crate::dfs::{self, DfsRule, DfsTree};
use crate::error::{Error, Result};
use crate::graph::{self, EdgeId, EdgeVector, MapInstance, VertexId};
use crate::oracle;
use crate::rational::{self, serde_pq, Rational};
use crate::tap::{self, Augmentation, LinkValues};

/// Which non-tree edges the augmentation may draw from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum LinkPool {
    /// Back edges inside the LP support (or the DFS edge set for the
    /// unguided walk).
    #[default]
    Support,
    /// Every heavy non-tree edge of the graph that is an uplink of the tree.
    AllUplinks,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub root: VertexId,
    pub gamma: Rational,
    pub epsilon: Rational,
    pub diagnostics: bool,
    pub oracle: bool,
    pub oracle_budget: Option<u64>,
    pub dfs_rule: DfsRule,
    pub link_pool: LinkPool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            root: 0,
            gamma: rational::ratio(1, 1000),
            epsilon: rational::ratio(1, 10),
            diagnostics: false,
            oracle: false,
            oracle_budget: None,
            dfs_rule: DfsRule::Guided,
            link_pool: LinkPool::Support,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagnosticsBlock {
    #[serde(with = "serde_pq")]
    pub gamma: Rational,
    #[serde(with = "serde_pq")]
    pub epsilon: Rational,
    pub n_tight: usize,
    /// `(|S0|, |S1|, |S0+|, |S0-|)`.
    pub s_sizes: (usize, usize, usize, usize),
    /// `c(x*_T)`: LP value on heavy tree edges.
    #[serde(with = "serde_pq")]
    pub cost_in_tree: Rational,
    /// `c(x′)`.
    #[serde(with = "serde_pq")]
    pub x_prime_cost: Rational,
    /// `lp_cost/(1+γ) + γ·n_tight`.
    #[serde(with = "serde_pq")]
    pub x_prime_bound: Rational,
    pub x_prime_feasible: bool,
    /// Back edges crossing some γ-tight tree cut (kept at `x*`).
    pub tight_back_edges: Vec<EdgeId>,
    pub fractional_edge_count: usize,
    /// Count of α-fractional vertices for α = γ/16.
    pub alpha_fractional_count: usize,
    /// Light edges failing the child-edge test with α = γ, α′ = γ/16.
    pub node_cut_violations: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub n: usize,
    pub matching_size: usize,
    #[serde(with = "serde_pq")]
    pub lp_cost: Rational,
    pub tree_heavy_cost: usize,
    pub aug_size: usize,
    pub total_cost: usize,
    #[serde(with = "serde_pq")]
    pub ratio_vs_lp: Rational,
    #[serde(with = "serde_pq")]
    pub f_min_support: Rational,
    /// `Σ y_e` of the scaled fractional cover.
    #[serde(with = "serde_pq")]
    pub scaled_cover_value: Rational,
    pub fractional_edge_count: usize,
    pub diagnostics: Option<DiagnosticsBlock>,
    pub opt_cost: Option<usize>,
    #[serde(with = "serde_pq::option")]
    pub ratio_vs_opt: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// `H = T ∪ A`, ascending.
    pub edges: Vec<EdgeId>,
    pub report: SolveReport,
    pub lp: LpSolution,
    pub tree: DfsTree,
    pub augmentation: Augmentation,
}

/// Steps 1–3: extreme point, DFS on its support, optimal uplink cover.
pub fn solve(inst: &MapInstance, options: &SolveOptions) -> Result<Solution> {
    let validation = graph::validate_instance(inst);
    if !validation.is_valid() {
        return Err(Error::InvalidInstance(validation));
    }
    let lp = cut_lp::solve_cut_lp(inst)?;
    solve_with_lp(inst, lp, options)
}

/// Steps 2–3 on a precomputed LP solution.
pub fn solve_with_lp(inst: &MapInstance, lp: LpSolution, options: &SolveOptions) -> Result<Solution> {
    let tree = match options.dfs_rule {
        DfsRule::Guided => dfs::guided_dfs(inst, &lp, options.root)?,
        DfsRule::Lexicographic => dfs::lexicographic_dfs(inst, options.root)?,
    };
    let scaled = tap::scaled_solution(inst, &tree, &lp.x);
    // The unguided walk may leave light edges outside the tree; they are in H
    // regardless, so they cover for free.
    let free: Vec<EdgeId> = tree.back_edges.iter().map(|b| b.edge).filter(|&e| inst.is_light(e)).collect();
    let augmentation = match options.link_pool {
        LinkPool::Support => tap::optimal_uplink_cover_with_free(&tree, &free)?,
        LinkPool::AllUplinks => {
            let mut widened = with_all_uplinks(inst, &tree);
            widened.back_edges.extend(tree.back_edges.iter().filter(|b| free.contains(&b.edge)));
            tap::optimal_uplink_cover_with_free(&widened, &free)?
        }
    };

    let mut edges: Vec<EdgeId> = tree.tree_edges.iter().chain(&augmentation.chosen).copied().collect();
    edges.sort_unstable();
    edges.dedup();
    let mut in_h = vec![false; inst.edge_count()];
    for &e in &edges {
        in_h[e] = true;
    }
    // Light edges are free; keep the whole matching in H.
    for e in inst.light_edges() {
        if !in_h[e] {
            in_h[e] = true;
            edges.push(e);
        }
    }
    edges.sort_unstable();
    if !verify_solution(inst, &edges) {
        return Err(Error::Infeasible("tree plus augmentation is not 2-edge-connected".into()));
    }

    let tree_heavy_cost = inst.heavy_cost(&tree.tree_edges);
    let aug_size = inst.heavy_cost(&augmentation.chosen);
    let total_cost = inst.heavy_cost(&edges);
    let total = Rational::from_integer(total_cost.into());
    let ratio_vs_lp = if lp.objective.is_zero() { rational::zero() } else { &total / &lp.objective };
    let f_min_support = lp.support.iter().map(|&e| lp.x.get(e).clone()).min().unwrap_or_else(rational::one);
    let scaled_cover_value = match &scaled {
        Ok(s) => s.y.total(),
        Err(_) => rational::zero(),
    };

    let diagnostics = if options.diagnostics {
        Some(diagnostics(inst, &lp, &tree, &options.gamma, &options.epsilon)?)
    } else {
        None
    };
    let (opt_cost, ratio_vs_opt) = if options.oracle {
        let opt = oracle::exact_opt(inst, options.oracle_budget)?.opt_cost;
        let ratio = if opt == 0 { None } else { Some(&total / Rational::from_integer(opt.into())) };
        (Some(opt), ratio)
    } else {
        (None, None)
    };

    let report = SolveReport {
        n: inst.vertex_count(),
        matching_size: inst.matching_size(),
        lp_cost: lp.objective.clone(),
        tree_heavy_cost,
        aug_size,
        total_cost,
        ratio_vs_lp,
        f_min_support,
        scaled_cover_value,
        fractional_edge_count: cut_lp::fractional_edges(&lp.x).len(),
        diagnostics,
        opt_cost,
        ratio_vs_opt,
    };
    Ok(Solution { edges, report, lp, tree, augmentation })
}

/// The tree with its back-edge list widened to every heavy edge of the graph
/// joining a vertex to a proper ancestor.
fn with_all_uplinks(inst: &MapInstance, tree: &DfsTree) -> DfsTree {
    let mut widened = tree.clone();
    let mut in_tree = vec![false; inst.edge_count()];
    for &e in &tree.tree_edges {
        in_tree[e] = true;
    }
    widened.back_edges = (0..inst.edge_count())
        .filter(|&e| !in_tree[e] && !inst.is_light(e))
        .filter_map(|e| {
            let (a, b) = inst.graph().endpoints(e);
            if tree.is_ancestor(a, b) {
                Some(dfs::BackEdge { edge: e, ancestor: a, descendant: b })
            } else if tree.is_ancestor(b, a) {
                Some(dfs::BackEdge { edge: e, ancestor: b, descendant: a })
            } else {
                None
            }
        })
        .collect();
    widened
}

/// `x′`: back edges crossing a γ-tight tree cut keep `x*_e`, the rest are
/// scaled by `1/(1+γ)`. Returned with the indices (into `tree.back_edges`)
/// of the unscaled edges.
pub fn x_prime(inst: &MapInstance, tree: &DfsTree, x: &EdgeVector, gamma: &Rational) -> Result<(LinkValues, Vec<usize>)> {
    let report = dfs::tightness_report(inst, tree, x, gamma)?;
    let tight_lower: Vec<VertexId> = report
        .tight_edges()
        .into_iter()
        .map(|e| tree.lower_endpoint(e).expect("tree edge"))
        .collect();
    let scale = rational::one() + gamma;
    let mut kept = Vec::new();
    let values = tree
        .back_edges
        .iter()
        .enumerate()
        .map(|(i, b)| {
            if tight_lower.iter().any(|&v| tree.covers(b, v)) {
                kept.push(i);
                x.get(b.edge).clone()
            } else {
                x.get(b.edge) / &scale
            }
        })
        .collect();
    Ok((LinkValues(values), kept))
}

/// Tightness statistics, the scaled solution `x′`, and the extreme-point
/// counts for one LP solution and tree.
pub fn diagnostics(
    inst: &MapInstance,
    lp: &LpSolution,
    tree: &DfsTree,
    gamma: &Rational,
    epsilon: &Rational,
) -> Result<DiagnosticsBlock> {
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveParameter { name: "epsilon" });
    }
    let x = &lp.x;
    let report = dfs::tightness_report(inst, tree, x, gamma)?;
    let cost_in_tree: Rational =
        tree.tree_edges.iter().filter(|&&e| !inst.is_light(e)).map(|&e| x.get(e).clone()).sum();
    let (xp, kept) = x_prime(inst, tree, x, gamma)?;
    let x_prime_cost: Rational = tree
        .back_edges
        .iter()
        .zip(&xp.0)
        .filter(|(b, _)| !inst.is_light(b.edge))
        .map(|(_, v)| v.clone())
        .sum();
    let n_tight = report.tight_count;
    let x_prime_bound = &lp.objective / (rational::one() + gamma) + gamma * Rational::from_integer(n_tight.into());
    let alpha_prime = gamma / rational::int(16);
    Ok(DiagnosticsBlock {
        gamma: gamma.clone(),
        epsilon: epsilon.clone(),
        n_tight,
        s_sizes: (
            report.s0_light_tight.len(),
            report.s1_heavy_tight.len(),
            report.s0_plus.len(),
            report.s0_minus.len(),
        ),
        cost_in_tree,
        x_prime_cost,
        x_prime_bound,
        x_prime_feasible: xp.is_feasible(tree),
        tight_back_edges: kept.iter().map(|&i| tree.back_edges[i].edge).collect(),
        fractional_edge_count: cut_lp::fractional_edges(x).len(),
        alpha_fractional_count: cut_lp::alpha_fractional_vertices(inst.graph(), x, &alpha_prime)?.len(),
        node_cut_violations: dfs::node_cut_check(inst, tree, x, gamma, &alpha_prime)?,
    })
}

/// `M ⊆ H` and `H` is a spanning 2-edge-connected subgraph.
pub fn verify_solution(inst: &MapInstance, edges: &[EdgeId]) -> bool {
    let mut mask = vec![false; inst.edge_count()];
    for &e in edges {
        if e >= mask.len() {
            return false;
        }
        mask[e] = true;
    }
    inst.light_edges().iter().all(|&e| mask[e]) && graph::is_two_edge_connected_on(inst.graph(), Some(&mask))
}

/// Every per-run property of a guided run, checked exactly.
/// Returns a description of each failure; empty means all hold.
pub fn check_invariants(inst: &MapInstance, sol: &Solution) -> Vec<String> {
    let mut failures = Vec::new();
    let r = &sol.report;
    let mut fail = |msg: String| failures.push(msg);
    if !verify_solution(inst, &sol.edges) {
        fail("H is not a 2-edge-connected spanning subgraph containing M".into());
    }
    if r.total_cost != r.tree_heavy_cost + r.aug_size {
        fail(format!("total {} != tree {} + augmentation {}", r.total_cost, r.tree_heavy_cost, r.aug_size));
    }
    let lower = Rational::from_integer((inst.vertex_count() - inst.matching_size()).into());
    if r.lp_cost < lower {
        fail(format!("lp cost {} below n - |M| = {}", rational::to_pq(&r.lp_cost), lower));
    }
    let two = rational::int(2);
    if r.ratio_vs_lp >= two {
        fail(format!("ratio {} is not below 2", rational::to_pq(&r.ratio_vs_lp)));
    }
    if r.ratio_vs_lp > &two - &r.f_min_support {
        fail(format!(
            "ratio {} exceeds 2 - f = {}",
            rational::to_pq(&r.ratio_vs_lp),
            rational::to_pq(&(&two - &r.f_min_support))
        ));
    }
    if let Some(opt) = r.opt_cost {
        let opt_q = Rational::from_integer(opt.into());
        if r.lp_cost > opt_q {
            fail(format!("lp cost {} exceeds optimum {opt}", rational::to_pq(&r.lp_cost)));
        }
        if r.total_cost < opt {
            fail(format!("total {} below optimum {opt}", r.total_cost));
        }
    }
    if sol.tree.back_edges.iter().any(|b| sol.tree.tree_edges.contains(&b.edge)) {
        fail("an edge is both a tree edge and a back edge".into());
    }
    if inst.light_edges().iter().any(|e| !sol.tree.tree_edges.contains(e)) {
        fail("a light edge is missing from the DFS tree".into());
    }
    if r.tree_heavy_cost != inst.vertex_count() - 1 - inst.matching_size() {
        fail(format!("tree heavy cost {} != n - 1 - |M|", r.tree_heavy_cost));
    }
    let restricted = tap::restricted_solution(&sol.tree, &sol.lp.x);
    if !restricted.is_feasible(&sol.tree) {
        fail("x* restricted to back edges does not cover every tree edge".into());
    }
    match tap::scaled_solution(inst, &sol.tree, &sol.lp.x) {
        Ok(scaled) => {
            if !scaled.y.is_feasible(&sol.tree) {
                fail("scaled solution y does not cover every tree edge".into());
            }
            let size = Rational::from_integer(sol.augmentation.size.into());
            if size > scaled.y.total() {
                fail(format!("|A| = {} exceeds sum of y = {}", sol.augmentation.size, rational::to_pq(&scaled.y.total())));
            }
            if size > restricted.total() {
                fail("|A| exceeds the restricted fractional cover".into());
            }
            if scaled.denominators.iter().any(|d| d < &rational::one()) {
                fail("a scaling denominator is below 1".into());
            }
        }
        Err(e) => fail(format!("scaled solution failed: {e}")),
    }
    if let Some(d) = &r.diagnostics {
        if !d.x_prime_feasible {
            fail("x' does not cover every tree edge".into());
        }
        if d.x_prime_cost > d.x_prime_bound {
            fail(format!(
                "c(x') = {} exceeds lp/(1+gamma) + gamma*N_t = {}",
                rational::to_pq(&d.x_prime_cost),
                rational::to_pq(&d.x_prime_bound)
            ));
        }
        if d.cost_in_tree > r.lp_cost {
            fail("c(x*_T) exceeds the LP cost".into());
        }
        if !d.node_cut_violations.is_empty() {
            fail(format!("child-edge test failed at light edges {:?}", d.node_cut_violations));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::toolkit::generators::gen_gap_instance;

    fn four_cycle() -> MapInstance {
        MapInstance::from_triples(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]).unwrap()
    }

    fn with_diagnostics() -> SolveOptions {
        SolveOptions { diagnostics: true, oracle: true, ..Default::default() }
    }

    #[test]
    fn four_cycle_solve() {
        let sol = solve(&four_cycle(), &with_diagnostics()).unwrap();
        let r = &sol.report;
        assert_eq!((r.total_cost, r.lp_cost.clone(), r.ratio_vs_lp.clone()), (2, int(2), int(1)));
        let d = r.diagnostics.as_ref().unwrap();
        assert_eq!(d.n_tight, 3);
        assert_eq!(d.cost_in_tree, int(1));
        assert_eq!(d.x_prime_cost, int(1));
        assert_eq!(d.tight_back_edges, vec![3]);
        assert!(d.x_prime_feasible);
    }

    #[test]
    fn triangle_solve() {
        let tri = MapInstance::from_triples(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let r = solve(&tri, &with_diagnostics()).unwrap().report;
        assert_eq!((r.total_cost, r.lp_cost, r.ratio_vs_lp), (3, int(3), int(1)));
    }

    #[test]
    fn gap_solve() {
        let inst = gen_gap_instance(1).unwrap();
        let sol = solve(&inst, &with_diagnostics()).unwrap();
        let r = &sol.report;
        assert_eq!(r.lp_cost, int(3));
        assert_eq!(r.total_cost, 4);
        assert_eq!(r.ratio_vs_lp, ratio(4, 3));
        assert_eq!(r.opt_cost, Some(4));
        assert_eq!(r.tree_heavy_cost + r.aug_size, r.total_cost);
        let d = r.diagnostics.as_ref().unwrap();
        assert!(d.x_prime_feasible);
        assert!(d.x_prime_cost <= d.x_prime_bound);
    }

    #[test]
    fn gap_diagnostics_on_the_half_integral_point() {
        let inst = gen_gap_instance(1).unwrap();
        let x = EdgeVector::new(
            (0..inst.edge_count()).map(|e| if inst.is_light(e) { int(1) } else { ratio(1, 2) }).collect(),
        )
        .unwrap();
        let lp = LpSolution {
            support: x.support(),
            objective: int(3),
            x,
            basis_certificate: Default::default(),
            dual: Default::default(),
            rounds: 0,
            cuts_used: 0,
        };
        let tree = dfs::guided_dfs(&inst, &lp, 0).unwrap();
        let d = diagnostics(&inst, &lp, &tree, &ratio(1, 1000), &ratio(1, 10)).unwrap();
        assert_eq!(d.cost_in_tree, int(1));
        assert!(d.x_prime_feasible);
    }

    #[test]
    fn verify_examples() {
        let inst = four_cycle();
        assert!(verify_solution(&inst, &[0, 1, 2, 3]));
        assert!(!verify_solution(&inst, &[0, 1, 2]));
        assert!(!verify_solution(&inst, &[1, 3]));
    }

    #[test]
    fn invalid_instance_is_rejected() {
        let path = MapInstance::from_triples(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(matches!(solve(&path, &SolveOptions::default()), Err(Error::InvalidInstance(_))));
    }
}
