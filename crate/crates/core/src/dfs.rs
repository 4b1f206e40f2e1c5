//! The LP-guided depth-first search, tree cuts `T(e)`, and the tightness
//! bookkeeping built on them.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cut_lp::{self, LpSolution};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeVector, MapInstance, VertexId};
use crate::rational::{self, Rational};

/// A non-tree edge between a vertex and one of its proper tree ancestors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BackEdge {
    pub edge: EdgeId,
    pub ancestor: VertexId,
    pub descendant: VertexId,
}

/// Rooted spanning tree produced by a DFS, with its back edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DfsTree {
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub parent_edge: Vec<Option<EdgeId>>,
    pub dfs_index: Vec<usize>,
    /// Vertices in visiting order; `order[dfs_index[v]] == v`.
    pub order: Vec<VertexId>,
    pub depth: Vec<usize>,
    pub subtree_size: Vec<usize>,
    /// Tree edge ids, ascending.
    pub tree_edges: Vec<EdgeId>,
    /// Back edges, ascending by edge id.
    pub back_edges: Vec<BackEdge>,
}

impl DfsTree {
    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// True when `a` is `d` or one of its ancestors.
    pub fn is_ancestor(&self, a: VertexId, d: VertexId) -> bool {
        let (ia, id) = (self.dfs_index[a], self.dfs_index[d]);
        ia <= id && id < ia + self.subtree_size[a]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.subtree_size[v] == 1
    }

    /// The child endpoint `v` of tree edge `uv`.
    pub fn lower_endpoint(&self, tree_edge: EdgeId) -> Option<VertexId> {
        (0..self.vertex_count()).find(|&v| self.parent_edge[v] == Some(tree_edge))
    }

    /// Vertex `v` for every non-root vertex, in ascending dfs index. The tree
    /// edge `parent_edge[v]` is identified with `v` throughout.
    pub fn non_root_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.order.iter().copied().skip(1)
    }

    /// Does back edge `b` cross the tree cut below vertex `v`?
    pub fn covers(&self, b: &BackEdge, v: VertexId) -> bool {
        self.is_ancestor(v, b.descendant) && !self.is_ancestor(v, b.ancestor)
    }

    /// Lower endpoints of the tree edges on the path covered by `b`, from the
    /// descendant upwards.
    pub fn covered_path(&self, b: &BackEdge) -> Vec<VertexId> {
        let mut path = Vec::new();
        let mut v = b.descendant;
        while v != b.ancestor {
            path.push(v);
            v = self.parent[v].expect("ancestor lies on the root path");
        }
        path
    }

    pub fn children(&self, v: VertexId) -> Vec<VertexId> {
        self.order.iter().copied().filter(|&w| self.parent[w] == Some(v)).collect()
    }

    pub fn back_edge_ids(&self) -> Vec<EdgeId> {
        self.back_edges.iter().map(|b| b.edge).collect()
    }
}

/// How the next edge is chosen among those leading to unvisited vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DfsRule {
    /// Light edge first, then the heavy edge with the largest `x*_e`, then
    /// the smallest edge id. Runs on the LP support plus the light edges.
    Guided,
    /// Smallest neighbor id, then smallest edge id. Ignores `x*` and weights
    /// and runs on every edge of the graph.
    Lexicographic,
}

/// LP-guided DFS from `root`.
///
/// The walk uses the support of `x*` together with every light edge. Light
/// edges with `x*_e = 0` can occur at a degenerate optimum; keeping them
/// explorable means the tree always contains the whole matching.
pub fn guided_dfs(inst: &MapInstance, lp: &LpSolution, root: VertexId) -> Result<DfsTree> {
    run_dfs(inst, &lp.x, root, DfsRule::Guided)
}

/// DFS ignoring the LP, used as the unguided comparator.
pub fn lexicographic_dfs(inst: &MapInstance, root: VertexId) -> Result<DfsTree> {
    run_dfs(inst, &EdgeVector::ones(inst.edge_count()), root, DfsRule::Lexicographic)
}

pub fn run_dfs(inst: &MapInstance, x: &EdgeVector, root: VertexId, rule: DfsRule) -> Result<DfsTree> {
    let n = inst.vertex_count();
    if root >= n {
        return Err(Error::UnknownVertex(root));
    }
    let g = inst.graph();
    let usable: Vec<bool> = match rule {
        DfsRule::Guided => (0..g.edge_count()).map(|e| inst.is_light(e) || !x.get(e).is_zero()).collect(),
        DfsRule::Lexicographic => vec![true; g.edge_count()],
    };
    let adj = g.adjacency();
    let better = |a: (VertexId, EdgeId), b: (VertexId, EdgeId)| -> bool {
        match rule {
            DfsRule::Guided => {
                let key = |(_, e): (VertexId, EdgeId)| inst.is_light(e);
                match (key(a), key(b)) {
                    (true, false) => true,
                    (false, true) => false,
                    _ => match x.get(a.1).cmp(x.get(b.1)) {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => a.1 < b.1,
                    },
                }
            }
            DfsRule::Lexicographic => a < b,
        }
    };

    let mut visited = vec![false; n];
    let mut parent = vec![None; n];
    let mut parent_edge = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut dfs_index = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    visited[root] = true;
    dfs_index[root] = 0;
    order.push(root);
    while let Some(&u) = stack.last() {
        let mut pick: Option<(VertexId, EdgeId)> = None;
        for &(w, e) in &adj[u] {
            if usable[e] && !visited[w] && pick.is_none_or(|p| better((w, e), p)) {
                pick = Some((w, e));
            }
        }
        match pick {
            Some((w, e)) => {
                visited[w] = true;
                parent[w] = Some(u);
                parent_edge[w] = Some(e);
                depth[w] = depth[u] + 1;
                dfs_index[w] = order.len();
                order.push(w);
                stack.push(w);
            }
            None => {
                stack.pop();
            }
        }
    }
    if order.len() != n {
        return Err(Error::SupportDisconnected);
    }

    let mut subtree_size = vec![1usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            subtree_size[p] += subtree_size[v];
        }
    }
    let mut is_tree = vec![false; g.edge_count()];
    for e in parent_edge.iter().flatten() {
        is_tree[*e] = true;
    }
    let tree_edges: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| is_tree[e]).collect();
    let mut back_edges = Vec::new();
    for e in 0..g.edge_count() {
        if is_tree[e] || !usable[e] {
            continue;
        }
        let (a, b) = g.endpoints(e);
        if rule == DfsRule::Guided && x.get(e).is_zero() {
            // A light edge outside the support that is not in the tree
            // cannot exist: light edges are taken on first visit.
            continue;
        }
        let (ancestor, descendant) = if depth[a] <= depth[b] { (a, b) } else { (b, a) };
        back_edges.push(BackEdge { edge: e, ancestor, descendant });
    }
    Ok(DfsTree { root, parent, parent_edge, dfs_index, order, depth, subtree_size, tree_edges, back_edges })
}

/// `x(T(e))` for every tree edge, keyed by the lower endpoint `v` of `e`
/// (the root's entry is zero). Each edge adds its value at both endpoints
/// and subtracts twice at their lowest common ancestor, so subtree sums give
/// the weight of `δ(T_v)`.
pub fn tree_cut_values(inst: &MapInstance, tree: &DfsTree, x: &EdgeVector) -> Vec<Rational> {
    let n = tree.vertex_count();
    let mut acc = vec![Rational::zero(); n];
    for (e, &(u, w)) in inst.graph().edges().iter().enumerate() {
        let value = x.get(e);
        if value.is_zero() {
            continue;
        }
        let l = lca(tree, u, w);
        acc[u] += value;
        acc[w] += value;
        acc[l] -= value * rational::int(2);
    }
    for &v in tree.order.iter().rev() {
        if let Some(p) = tree.parent[v] {
            let carried = acc[v].clone();
            acc[p] += carried;
        }
    }
    acc[tree.root] = Rational::zero();
    acc
}

fn lca(tree: &DfsTree, mut a: VertexId, mut b: VertexId) -> VertexId {
    while tree.depth[a] > tree.depth[b] {
        a = tree.parent[a].expect("non-root");
    }
    while tree.depth[b] > tree.depth[a] {
        b = tree.parent[b].expect("non-root");
    }
    while a != b {
        a = tree.parent[a].expect("non-root");
        b = tree.parent[b].expect("non-root");
    }
    a
}

/// `x(T(e)) − x_e`, the back-edge weight crossing each tree cut, keyed by
/// lower endpoint.
pub fn tree_cut_slacks(inst: &MapInstance, tree: &DfsTree, x: &EdgeVector) -> Vec<Rational> {
    let cuts = tree_cut_values(inst, tree, x);
    (0..tree.vertex_count())
        .map(|v| match tree.parent_edge[v] {
            Some(e) => &cuts[v] - x.get(e),
            None => Rational::zero(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    #[serde(with = "rational::serde_pq")]
    pub gamma: Rational,
    /// `(tree edge, x(T(e)))`, ascending by edge id.
    #[serde(serialize_with = "serialize_edge_values")]
    pub tree_cut_value: Vec<(EdgeId, Rational)>,
    pub tight_count: usize,
    /// γ-tight light tree edges.
    pub s0_light_tight: Vec<EdgeId>,
    /// γ-tight heavy tree edges.
    pub s1_heavy_tight: Vec<EdgeId>,
    pub s0_plus: Vec<EdgeId>,
    pub s0_minus: Vec<EdgeId>,
}

impl TightnessReport {
    pub fn tight_edges(&self) -> Vec<EdgeId> {
        let mut all: Vec<EdgeId> = self.s0_light_tight.iter().chain(&self.s1_heavy_tight).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn cut_value(&self, edge: EdgeId) -> Option<&Rational> {
        self.tree_cut_value.iter().find(|(e, _)| *e == edge).map(|(_, v)| v)
    }
}

fn serialize_edge_values<S: serde::Serializer>(values: &[(EdgeId, Rational)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(values.len()))?;
    for (e, v) in values {
        map.serialize_entry(&e.to_string(), &rational::to_pq(v))?;
    }
    map.end()
}

/// Tree edge `e = uv` is γ-tight when `x(T(e)) − x_e < 1 + γ`.
pub fn tightness_report(inst: &MapInstance, tree: &DfsTree, x: &EdgeVector, gamma: &Rational) -> Result<TightnessReport> {
    if !gamma.is_positive() {
        return Err(Error::NonPositiveParameter { name: "gamma" });
    }
    let cuts = tree_cut_values(inst, tree, x);
    let threshold = rational::one() + gamma;
    let mut tree_cut_value = Vec::new();
    let (mut s0, mut s1, mut s0_plus, mut s0_minus) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for v in tree.non_root_vertices() {
        let e = tree.parent_edge[v].expect("non-root vertex has a parent edge");
        tree_cut_value.push((e, cuts[v].clone()));
        if &cuts[v] - x.get(e) >= threshold {
            continue;
        }
        if inst.is_light(e) {
            s0.push(e);
            if tree.is_leaf(v) {
                s0_minus.push(e);
            } else {
                s0_plus.push(e);
            }
        } else {
            s1.push(e);
        }
    }
    tree_cut_value.sort_unstable_by_key(|(e, _)| *e);
    for list in [&mut s0, &mut s1, &mut s0_plus, &mut s0_minus] {
        list.sort_unstable();
    }
    Ok(TightnessReport {
        gamma: gamma.clone(),
        tight_count: s0.len() + s1.len(),
        tree_cut_value,
        s0_light_tight: s0,
        s1_heavy_tight: s1,
        s0_plus,
        s0_minus,
    })
}

/// For every α-tight light tree edge `uv` with `v` not a leaf and not
/// α′-fractional, some tree edge from `v` to a child must carry at least
/// `(1 − α)·α′`. Returns the light edges for which no child edge does.
pub fn node_cut_check(
    inst: &MapInstance,
    tree: &DfsTree,
    x: &EdgeVector,
    alpha: &Rational,
    alpha_prime: &Rational,
) -> Result<Vec<EdgeId>> {
    if !alpha_prime.is_positive() {
        return Err(Error::NonPositiveParameter { name: "alpha_prime" });
    }
    let report = tightness_report(inst, tree, x, alpha)?;
    let fractional = cut_lp::alpha_fractional_vertices(inst.graph(), x, alpha_prime)?;
    let bound = (rational::one() - alpha) * alpha_prime;
    let mut violations = Vec::new();
    for &e in &report.s0_plus {
        let v = tree.lower_endpoint(e).expect("tree edge");
        if fractional.contains(&v) {
            continue;
        }
        let ok = tree
            .children(v)
            .into_iter()
            .any(|w| x.get(tree.parent_edge[w].expect("child edge")) >= &bound);
        if !ok {
            violations.push(e);
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut_lp::solve_cut_lp;
    use crate::rational::{int, ratio};
    use crate::toolkit::generators::gen_gap_instance;

    fn four_cycle() -> MapInstance {
        MapInstance::from_triples(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]).unwrap()
    }

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

    fn gap_half() -> (MapInstance, EdgeVector) {
        let inst = gen_gap_instance(1).unwrap();
        let x = EdgeVector::new(
            (0..inst.edge_count()).map(|e| if inst.is_light(e) { int(1) } else { ratio(1, 2) }).collect(),
        )
        .unwrap();
        (inst, x)
    }

    #[test]
    fn four_cycle_tree() {
        let inst = four_cycle();
        let tree = guided_dfs(&inst, &fake_lp(EdgeVector::ones(4)), 0).unwrap();
        assert_eq!(tree.tree_edges, vec![0, 1, 2]);
        assert_eq!(tree.back_edges, vec![BackEdge { edge: 3, ancestor: 0, descendant: 3 }]);
        assert_eq!(tree.order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn gap_tree_follows_the_light_and_heavy_priorities() {
        let (inst, x) = gap_half();
        let tree = guided_dfs(&inst, &fake_lp(x), 0).unwrap();
        // a1 b1 b2 a2 a3 b3 with a_i = i-1, b_i = i+2.
        assert_eq!(tree.order, vec![0, 3, 4, 1, 2, 5]);
        assert_eq!(inst.heavy_cost(&tree.tree_edges), 2);
        let mut back: Vec<(VertexId, VertexId)> = tree.back_edges.iter().map(|b| (b.ancestor, b.descendant)).collect();
        back.sort_unstable();
        // a1a2, a1a3, b1b3, b2b3
        assert_eq!(back, vec![(0, 1), (0, 2), (3, 5), (4, 5)]);
    }

    #[test]
    fn triangle_tree() {
        let inst = MapInstance::from_triples(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let tree = guided_dfs(&inst, &fake_lp(EdgeVector::ones(3)), 0).unwrap();
        assert_eq!(tree.tree_edges, vec![0, 1]);
        assert_eq!(tree.back_edge_ids(), vec![2]);
    }

    #[test]
    fn tree_cut_values_examples() {
        let inst = four_cycle();
        let x = EdgeVector::ones(4);
        let tree = guided_dfs(&inst, &fake_lp(x.clone()), 0).unwrap();
        let cuts = tree_cut_values(&inst, &tree, &x);
        assert_eq!(&cuts[1..], &[int(2), int(2), int(2)]);

        let (inst, x) = gap_half();
        let tree = guided_dfs(&inst, &fake_lp(x.clone()), 0).unwrap();
        let cuts = tree_cut_values(&inst, &tree, &x);
        // subtree of b1 (vertex 3) is everything except a1
        assert_eq!(cuts[3], int(2));
        for v in tree.non_root_vertices() {
            assert!(cuts[v] >= int(2));
        }
    }

    #[test]
    fn tightness_on_four_cycle() {
        let inst = four_cycle();
        let x = EdgeVector::ones(4);
        let tree = guided_dfs(&inst, &fake_lp(x.clone()), 0).unwrap();
        let report = tightness_report(&inst, &tree, &x, &ratio(1, 1000)).unwrap();
        assert_eq!(report.tight_count, 3);
        assert_eq!(report.s0_light_tight, vec![0, 2]);
        assert_eq!(report.s1_heavy_tight, vec![1]);
        assert_eq!(report.s0_minus, vec![2]);
        assert_eq!(report.s0_plus, vec![0]);
        assert!(tightness_report(&inst, &tree, &x, &int(0)).is_err());
    }

    #[test]
    fn gap_light_root_edge_is_tight() {
        let (inst, x) = gap_half();
        let tree = guided_dfs(&inst, &fake_lp(x.clone()), 0).unwrap();
        let report = tightness_report(&inst, &tree, &x, &ratio(1, 1000)).unwrap();
        let a1b1 = tree.parent_edge[3].unwrap();
        assert!(report.s0_light_tight.contains(&a1b1));
        assert_eq!(report.cut_value(a1b1), Some(&int(2)));
    }

    #[test]
    fn node_cut_examples() {
        let gamma = ratio(1, 1000);
        let inst = four_cycle();
        let x = EdgeVector::ones(4);
        let tree = guided_dfs(&inst, &fake_lp(x.clone()), 0).unwrap();
        assert!(node_cut_check(&inst, &tree, &x, &gamma, &(&gamma / int(16))).unwrap().is_empty());

        let tri = MapInstance::from_triples(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let lp = solve_cut_lp(&tri).unwrap();
        let tree = guided_dfs(&tri, &lp, 0).unwrap();
        assert!(node_cut_check(&tri, &tree, &lp.x, &gamma, &(&gamma / int(16))).unwrap().is_empty());
    }

    #[test]
    fn lexicographic_ignores_weights() {
        let (inst, _) = gap_half();
        let tree = lexicographic_dfs(&inst, 0).unwrap();
        // 0 -> 1 (a2) -> 2 (a3) -> 5 (b3) -> 3 (b1) -> 4 (b2)
        assert_eq!(tree.order, vec![0, 1, 2, 5, 3, 4]);
    }

    #[test]
    fn rejects_unknown_root() {
        let inst = four_cycle();
        assert!(matches!(guided_dfs(&inst, &fake_lp(EdgeVector::ones(4)), 9), Err(Error::UnknownVertex(9))));
    }
}
