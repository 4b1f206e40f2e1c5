//! The cut LP relaxation of MAP,
//!
//! ```text
//! min Σ_{e heavy} x_e   s.t.   x(δ(S)) ≥ 2  for all ∅ ⊊ S ⊊ V,   0 ≤ x ≤ 1,
//! ```
//!
//! solved to an optimal extreme point by cutting planes: start from the
//! degree cuts, solve exactly, separate with a global minimum cut, repeat.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, EdgeId, EdgeVector, MapInstance, MultiGraph, VertexId};
use crate::rational::{self, Rational};
use crate::simplex::{self, CoverRow, CoveringLp, TightConstraint};

/// A vertex cut `δ(S)` together with its weight under some edge vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub side: Vec<VertexId>,
    #[serde(with = "rational::serde_pq")]
    pub value: Rational,
}

/// The constraints held at equality in the final basis. Their count equals
/// the number of edges and they determine `x` uniquely.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    /// Cuts with `x(δ(S)) = 2`.
    pub cuts: Vec<Vec<VertexId>>,
    /// Edges fixed by `x_e = 0`.
    pub at_zero: Vec<EdgeId>,
    /// Edges fixed by `x_e = 1`.
    pub at_one: Vec<EdgeId>,
}

impl BasisCertificate {
    pub fn len(&self) -> usize {
        self.cuts.len() + self.at_zero.len() + self.at_one.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of the certificate's constraint rows over the edge variables.
    pub fn rank(&self, g: &MultiGraph) -> usize {
        let m = g.edge_count();
        let mut rows = Vec::with_capacity(self.len());
        for side in &self.cuts {
            let inside = membership(g.vertex_count(), side);
            rows.push(
                g.edges()
                    .iter()
                    .map(|&(u, v)| if inside[u] != inside[v] { rational::one() } else { rational::zero() })
                    .collect(),
            );
        }
        for &e in self.at_zero.iter().chain(&self.at_one) {
            let mut row = vec![rational::zero(); m];
            row[e] = rational::one();
            rows.push(row);
        }
        simplex::rank(rows)
    }

    /// Every certificate constraint holds at equality under `x`.
    pub fn holds_at_equality(&self, g: &MultiGraph, x: &EdgeVector) -> bool {
        let two = rational::int(2);
        self.cuts.iter().all(|side| graph::crossing_sum(g, &membership(g.vertex_count(), side), x) == two)
            && self.at_zero.iter().all(|&e| x.get(e).is_zero())
            && self.at_one.iter().all(|&e| *x.get(e) == rational::one())
    }
}

/// Dual multipliers of the final relaxation. Any such vector padded with
/// zeros for the cuts never generated is dual feasible for the full LP, so
/// `Σ 2·y_S − Σ w_e = objective` proves optimality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualCertificate {
    pub cuts: Vec<(Vec<VertexId>, Rational)>,
    pub upper: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub x: EdgeVector,
    pub objective: Rational,
    pub support: Vec<EdgeId>,
    pub basis_certificate: BasisCertificate,
    pub dual: DualCertificate,
    /// LP solves performed by the cutting-plane loop.
    pub rounds: usize,
    /// Cuts in the final relaxation, degree cuts included.
    pub cuts_used: usize,
}

pub(crate) fn membership(n: usize, side: &[VertexId]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &v in side {
        inside[v] = true;
    }
    inside
}

/// Key identifying `δ(S)` regardless of which side is stored.
fn cut_key(n: usize, side: &[VertexId]) -> Vec<VertexId> {
    let inside = membership(n, side);
    let flip = inside[0];
    (0..n).filter(|&v| inside[v] != flip).collect()
}

pub(crate) fn cut_row(g: &MultiGraph, side: &[VertexId]) -> CoverRow {
    let inside = membership(g.vertex_count(), side);
    let coeffs = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| inside[u] != inside[v])
        .map(|(e, _)| (e, rational::one()))
        .collect();
    CoverRow { coeffs, rhs: rational::int(2) }
}

/// Solves the LP over an explicit cut family; shared with the enumeration
/// oracle.
pub(crate) fn solve_with_cuts(inst: &MapInstance, cuts: &[Vec<VertexId>]) -> Result<LpSolution> {
    let g = inst.graph();
    let costs = inst.weights().iter().map(|w| rational::int(i64::from(w.cost()))).collect();
    let rows = cuts.iter().map(|side| cut_row(g, side)).collect();
    let lp = CoveringLp { costs, rows };
    let sol = lp
        .solve()
        .map_err(|_| Error::Infeasible("no edge vector satisfies every cut constraint".into()))?;
    let x = EdgeVector::new(sol.x)?;
    let mut cert = BasisCertificate::default();
    for t in &sol.basis {
        match *t {
            TightConstraint::Row(k) => cert.cuts.push(cuts[k].clone()),
            TightConstraint::AtUpper(e) => cert.at_one.push(e),
            TightConstraint::AtLower(e) => cert.at_zero.push(e),
        }
    }
    cert.at_zero.sort_unstable();
    cert.at_one.sort_unstable();
    let dual = DualCertificate {
        cuts: cuts
            .iter()
            .zip(sol.row_duals)
            .filter(|(_, y)| !y.is_zero())
            .map(|(s, y)| (s.clone(), y))
            .collect(),
        upper: sol.upper_duals,
    };
    Ok(LpSolution {
        support: x.support(),
        objective: sol.objective,
        x,
        basis_certificate: cert,
        dual,
        rounds: 1,
        cuts_used: cuts.len(),
    })
}

/// Optimal extreme point of the cut LP via cutting planes.
pub fn solve_cut_lp(inst: &MapInstance) -> Result<LpSolution> {
    let g = inst.graph();
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Infeasible("fewer than two vertices".into()));
    }
    if !graph::is_two_edge_connected(g) {
        return Err(Error::Infeasible("graph is not 2-edge-connected".into()));
    }
    let mut cuts: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut seen: BTreeSet<Vec<VertexId>> = cuts.iter().map(|s| cut_key(n, s)).collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut sol = solve_with_cuts(inst, &cuts)?;
        let violated = violated_cuts(g, &sol.x);
        let mut added = false;
        for cut in violated {
            if seen.insert(cut_key(n, &cut.side)) {
                cuts.push(cut.side);
                added = true;
            }
        }
        if !added {
            sol.rounds = rounds;
            return Ok(sol);
        }
    }
}

struct MinCutRun {
    best: Option<Cut>,
    /// Every cut-of-the-phase, in discovery order.
    phases: Vec<Cut>,
}

/// Stoer–Wagner over exact rational capacities.
fn stoer_wagner(g: &MultiGraph, x: &EdgeVector) -> MinCutRun {
    let n = g.vertex_count();
    let mut cap = vec![vec![Rational::zero(); n]; n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let w = x.get(e);
        if !w.is_zero() {
            cap[u][v] += w;
            cap[v][u] += w;
        }
    }
    let mut members: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<VertexId> = (0..n).collect();
    let mut best: Option<Cut> = None;
    let mut phases = Vec::new();
    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut weight = vec![Rational::zero(); n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let mut pick: Option<VertexId> = None;
            for &v in &active {
                if !added[v] && pick.is_none_or(|p| weight[v] > weight[p]) {
                    pick = Some(v);
                }
            }
            let v = pick.expect("an unadded vertex remains");
            if step == active.len() - 1 {
                let mut side = members[v].clone();
                side.sort_unstable();
                let cut = Cut { side, value: weight[v].clone() };
                if best.as_ref().is_none_or(|b| cut.value < b.value) {
                    best = Some(cut.clone());
                }
                phases.push(cut);
            }
            added[v] = true;
            prev = last;
            last = v;
            for &w in &active {
                if !added[w] && !cap[v][w].is_zero() {
                    let c = cap[v][w].clone();
                    weight[w] += c;
                }
            }
        }
        // Merge the last vertex into the one added just before it.
        let (s, t) = (prev, last);
        let moved = std::mem::take(&mut members[t]);
        members[s].extend(moved);
        for &w in &active {
            if w != s && w != t {
                let c = cap[t][w].clone();
                cap[s][w] += &c;
                cap[w][s] += c;
            }
        }
        active.retain(|&v| v != t);
    }
    MinCutRun { best, phases }
}

/// A global minimum cut under capacities `x` when its value is below 2.
pub fn separate(g: &MultiGraph, x: &EdgeVector) -> Option<Cut> {
    if g.vertex_count() < 2 {
        return None;
    }
    let two = rational::int(2);
    stoer_wagner(g, x).best.filter(|c| c.value < two)
}

/// Every distinct cut-of-the-phase found by one Stoer–Wagner run whose value
/// is below 2. Empty exactly when [`separate`] returns `None`.
pub fn violated_cuts(g: &MultiGraph, x: &EdgeVector) -> Vec<Cut> {
    if g.vertex_count() < 2 {
        return Vec::new();
    }
    let two = rational::int(2);
    let n = g.vertex_count();
    let mut keys = BTreeSet::new();
    stoer_wagner(g, x)
        .phases
        .into_iter()
        .filter(|c| c.value < two && keys.insert(cut_key(n, &c.side)))
        .collect()
}

/// Edges with `0 < x_e < 1`, ascending.
pub fn fractional_edges(x: &EdgeVector) -> Vec<EdgeId> {
    let one = rational::one();
    (0..x.len()).filter(|&e| x.get(e).is_positive() && *x.get(e) < one).collect()
}

/// Vertices with strictly more than `1/alpha` incident fractional edges.
pub fn alpha_fractional_vertices(g: &MultiGraph, x: &EdgeVector, alpha: &Rational) -> Result<Vec<VertexId>> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveParameter { name: "alpha" });
    }
    let mut count = vec![0usize; g.vertex_count()];
    for e in fractional_edges(x) {
        let (u, v) = g.endpoints(e);
        count[u] += 1;
        count[v] += 1;
    }
    let limit = alpha.recip();
    Ok((0..g.vertex_count())
        .filter(|&v| Rational::from_integer(count[v].into()) > limit)
        .collect())
}

/// Support of `x` as an edge mask.
pub fn support_mask(x: &EdgeVector) -> Vec<bool> {
    x.values().iter().map(|v| !v.is_zero()).collect()
}
