//! Augmenting a DFS tree with uplinks: the optimal integral cover, and the
//! fractional covers obtained from the LP solution.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::dfs::{self, DfsTree};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeVector, MapInstance, VertexId};
use crate::rational::{self, Rational};
use crate::simplex::{CoverRow, CoveringLp};

/// Back edges chosen to cover every tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Augmentation {
    /// Edge ids, ascending.
    pub chosen: Vec<EdgeId>,
    pub size: usize,
}

/// One value per back edge, aligned with `tree.back_edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkValues(pub Vec<Rational>);

impl LinkValues {
    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// Coverage `Σ_{b covers t} value_b` of each tree edge, keyed by the
    /// lower endpoint; the root's entry is zero.
    pub fn coverage(&self, tree: &DfsTree) -> Vec<Rational> {
        let mut cov = vec![Rational::zero(); tree.vertex_count()];
        for (b, value) in tree.back_edges.iter().zip(&self.0) {
            if value.is_zero() {
                continue;
            }
            for v in tree.covered_path(b) {
                cov[v] += value;
            }
        }
        cov
    }

    /// Every tree edge is covered at least once.
    pub fn is_feasible(&self, tree: &DfsTree) -> bool {
        let one = rational::one();
        let cov = self.coverage(tree);
        tree.non_root_vertices().all(|v| cov[v] >= one)
    }

    pub fn get(&self, tree: &DfsTree, edge: EdgeId) -> Option<&Rational> {
        tree.back_edges.iter().position(|b| b.edge == edge).map(|i| &self.0[i])
    }
}

/// Minimum-cardinality set of back edges covering all tree edges.
///
/// Vertices are processed in decreasing dfs index, so every tree edge below
/// `v` is settled before `parent(v)–v`. An uncovered edge gets the back edge
/// leaving `T_v` with the shallowest ancestor endpoint (smallest edge id on
/// ties), which covers a superset of what any other choice would add.
pub fn optimal_uplink_cover(tree: &DfsTree) -> Result<Augmentation> {
    optimal_uplink_cover_with_free(tree, &[])
}

/// Like [`optimal_uplink_cover`], but the back edges listed in `free` are
/// taken at no cost: the tree edges they cover need nothing more, and they
/// are not reported in the result.
pub fn optimal_uplink_cover_with_free(tree: &DfsTree, free: &[EdgeId]) -> Result<Augmentation> {
    let n = tree.vertex_count();
    let mut covered = vec![false; n];
    for b in tree.back_edges.iter().filter(|b| free.contains(&b.edge)) {
        for v in tree.covered_path(b) {
            covered[v] = true;
        }
    }
    // best[v] = (ancestor depth, edge id, back-edge index) over back edges
    // whose descendant endpoint lies in T_v.
    let mut best: Vec<Option<(usize, EdgeId, usize)>> = vec![None; n];
    for (i, b) in tree.back_edges.iter().enumerate().filter(|(_, b)| !free.contains(&b.edge)) {
        let key = (tree.depth[b.ancestor], b.edge, i);
        let slot = &mut best[b.descendant];
        if slot.is_none_or(|s| key < s) {
            *slot = Some(key);
        }
    }
    for &v in tree.order.iter().rev() {
        if let (Some(p), Some(kv)) = (tree.parent[v], best[v]) {
            if best[p].is_none_or(|kp| kv < kp) {
                best[p] = Some(kv);
            }
        }
    }

    let mut chosen = Vec::new();
    for &v in tree.order.iter().rev() {
        if tree.parent[v].is_none() || covered[v] {
            continue;
        }
        let edge = tree.parent_edge[v].expect("non-root vertex has a parent edge");
        let (depth, id, i) = match best[v] {
            Some(k) if k.0 < tree.depth[v] => k,
            _ => return Err(Error::UncoverableTreeEdge { edge }),
        };
        chosen.push(id);
        // Everything strictly below v is already covered; walk up to the link's ancestor.
        let top = tree.back_edges[i].ancestor;
        debug_assert_eq!(tree.depth[top], depth);
        let mut w = v;
        while w != top {
            covered[w] = true;
            w = tree.parent[w].expect("ancestor lies on the root path");
        }
    }
    chosen.sort_unstable();
    Ok(Augmentation { size: chosen.len(), chosen })
}

/// `x*` restricted to the back edges.
pub fn restricted_solution(tree: &DfsTree, x: &EdgeVector) -> LinkValues {
    LinkValues(tree.back_edges.iter().map(|b| x.get(b.edge).clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledTapSolution {
    /// `t_e` per back edge (aligned with `tree.back_edges`), as a tree edge id.
    pub t_choice: Vec<EdgeId>,
    /// `x(T(t_e)) − x_{t_e}` per back edge.
    pub denominators: Vec<Rational>,
    /// `z_t = Σ_{e: t_e = t} x*_e` for every tree edge `t`.
    pub z: BTreeMap<EdgeId, Rational>,
    pub y: LinkValues,
}

/// Scales each back edge by the smallest tree-cut slack along the path it
/// covers: `y_e = x*_e / (x(T(t_e)) − x*_{t_e})`. Since `t_e` minimises the
/// slack over the path, every tree edge `t` receives
/// `Σ_{e covers t} y_e ≥ (x(T(t)) − x_t) / (x(T(t)) − x_t) = 1`.
pub fn scaled_solution(inst: &MapInstance, tree: &DfsTree, x: &EdgeVector) -> Result<ScaledTapSolution> {
    let slack = dfs::tree_cut_slacks(inst, tree, x);
    let mut t_choice = Vec::with_capacity(tree.back_edges.len());
    let mut denominators = Vec::with_capacity(tree.back_edges.len());
    let mut y = Vec::with_capacity(tree.back_edges.len());
    let mut z: BTreeMap<EdgeId, Rational> =
        tree.tree_edges.iter().map(|&t| (t, Rational::zero())).collect();
    for b in &tree.back_edges {
        let path = tree.covered_path(b);
        let pick: VertexId = path
            .iter()
            .copied()
            .min_by(|&a, &c| slack[a].cmp(&slack[c]).then(tree.dfs_index[a].cmp(&tree.dfs_index[c])))
            .expect("a back edge covers at least one tree edge");
        let t = tree.parent_edge[pick].expect("non-root vertex has a parent edge");
        let denom = slack[pick].clone();
        if !denom.is_positive() {
            return Err(Error::ZeroDenominator { edge: b.edge });
        }
        let xe = x.get(b.edge).clone();
        *z.get_mut(&t).expect("tree edge") += &xe;
        y.push(&xe / &denom);
        t_choice.push(t);
        denominators.push(denom);
    }
    Ok(ScaledTapSolution { t_choice, denominators, z, y: LinkValues(y) })
}

/// Exact optimum of the covering LP over back edges:
/// `min Σ y_e` with coverage ≥ 1 per tree edge and `0 ≤ y ≤ 1`.
pub fn tap_fractional_optimum(tree: &DfsTree) -> Result<Rational> {
    let rows: Vec<CoverRow> = tree
        .non_root_vertices()
        .map(|v| CoverRow {
            coeffs: tree
                .back_edges
                .iter()
                .enumerate()
                .filter(|(_, b)| tree.covers(b, v))
                .map(|(i, _)| (i, rational::one()))
                .collect(),
            rhs: rational::one(),
        })
        .collect();
    if let Some(v) = tree.non_root_vertices().zip(&rows).find(|(_, r)| r.coeffs.is_empty()).map(|(v, _)| v) {
        return Err(Error::UncoverableTreeEdge { edge: tree.parent_edge[v].expect("non-root") });
    }
    let lp = CoveringLp { costs: vec![rational::one(); tree.back_edges.len()], rows };
    lp.solve()
        .map(|s| s.objective)
        .map_err(|_| Error::Infeasible("tree edges cannot all be covered".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut_lp::LpSolution;
    use crate::dfs::guided_dfs;
    use crate::rational::{int, ratio};
    use crate::toolkit::generators::gen_gap_instance;

    fn fake_lp(x: EdgeVector) -> LpSolution {
        LpSolution {
            support: x.support(),
            objective: int(0),
            x,
            basis_certificate: Default::default(),
            dual: Default::default(),
            rounds: 0,
            cuts_used: 0,
        }
    }

    fn four_cycle() -> (MapInstance, EdgeVector, DfsTree) {
        let inst = MapInstance::from_triples(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]).unwrap();
        let x = EdgeVector::ones(4);
        let tree = guided_dfs(&inst, &fake_lp(x.clone()), 0).unwrap();
        (inst, x, tree)
    }

    fn gap() -> (MapInstance, EdgeVector, DfsTree) {
        let inst = gen_gap_instance(1).unwrap();
        let x = EdgeVector::new(
            (0..inst.edge_count()).map(|e| if inst.is_light(e) { int(1) } else { ratio(1, 2) }).collect(),
        )
        .unwrap();
        let tree = guided_dfs(&inst, &fake_lp(x.clone()), 0).unwrap();
        (inst, x, tree)
    }

    #[test]
    fn four_cycle_cover() {
        let (inst, x, tree) = four_cycle();
        let aug = optimal_uplink_cover(&tree).unwrap();
        assert_eq!(aug, Augmentation { chosen: vec![3], size: 1 });
        assert_eq!(tap_fractional_optimum(&tree).unwrap(), int(1));

        let restricted = restricted_solution(&tree, &x);
        assert_eq!(restricted.0, vec![int(1)]);
        assert!(restricted.is_feasible(&tree));

        let scaled = scaled_solution(&inst, &tree, &x).unwrap();
        assert_eq!(scaled.denominators, vec![int(1)]);
        assert_eq!(scaled.y.0, vec![int(1)]);
        assert_eq!(scaled.y.total(), int(1));
    }

    #[test]
    fn gap_cover() {
        let (inst, x, tree) = gap();
        let aug = optimal_uplink_cover(&tree).unwrap();
        assert_eq!(aug.size, 2);
        assert_eq!(tap_fractional_optimum(&tree).unwrap(), int(2));

        let restricted = restricted_solution(&tree, &x);
        assert!(restricted.0.iter().all(|v| *v == ratio(1, 2)));
        let cov = restricted.coverage(&tree);
        assert_eq!(cov[3], int(1)); // a1b1 covered by a1a2 + a1a3

        let scaled = scaled_solution(&inst, &tree, &x).unwrap();
        assert!(scaled.denominators.iter().all(|d| *d == int(1)));
        assert!(scaled.y.0.iter().all(|v| *v == ratio(1, 2)));
        assert_eq!(scaled.y.total(), int(2));
        assert!(scaled.y.is_feasible(&tree));
        // every back edge picks a light tree edge
        for t in &scaled.t_choice {
            assert!(inst.is_light(*t));
        }
        let z_total: Rational = scaled.z.values().sum();
        assert_eq!(z_total, int(2));
    }

    #[test]
    fn uncoverable_edge_is_reported() {
        // Path 0-1-2 plus a doubled 1-2: tree edge 0-1 has no uplink.
        let inst = MapInstance::from_triples(3, &[(0, 1, 1), (1, 2, 1), (1, 2, 1)]).unwrap();
        let tree = crate::dfs::lexicographic_dfs(&inst, 0).unwrap();
        assert!(matches!(optimal_uplink_cover(&tree), Err(Error::UncoverableTreeEdge { edge: 0 })));
        assert!(matches!(tap_fractional_optimum(&tree), Err(Error::UncoverableTreeEdge { edge: 0 })));
    }
}
