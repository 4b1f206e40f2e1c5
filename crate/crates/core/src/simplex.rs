//! Dense exact simplex for covering LPs with unit upper bounds:
//!
//! ```text
//! min c·x   s.t.   A x ≥ b,   0 ≤ x ≤ 1,   c ≥ 0
//! ```
//!
//! The solver runs the primal simplex with Bland's rule on the dual
//!
//! ```text
//! max b·y − 1·w   s.t.   Aᵀy − w ≤ c,   y, w ≥ 0
//! ```
//!
//! whose slack basis is feasible because `c ≥ 0`. The primal solution is read
//! off the simplex multipliers of the optimal dual basis. Each basic dual
//! column names one primal constraint held at equality (a covering row, an
//! upper bound, or a lower bound), and those constraints are linearly
//! independent, so the recovered `x` is a basic solution of the primal.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug)]
pub(crate) struct CoverRow {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub(crate) struct CoveringLp {
    pub costs: Vec<Rational>,
    pub rows: Vec<CoverRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TightConstraint {
    Row(usize),
    AtUpper(usize),
    AtLower(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct CoveringSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Dual value per covering row.
    pub row_duals: Vec<Rational>,
    /// Dual value per upper bound `x_j ≤ 1`.
    pub upper_duals: Vec<Rational>,
    /// One primal constraint per basic dual column, `|x|` in total.
    pub basis: Vec<TightConstraint>,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) struct Infeasible;

impl CoveringLp {
    pub fn solve(&self) -> Result<CoveringSolution, Infeasible> {
        let m = self.costs.len();
        let r = self.rows.len();
        debug_assert!(self.costs.iter().all(|c| !c.is_negative()));
        // Dual columns: y_0..y_{r-1}, w_0..w_{m-1}, s_0..s_{m-1}.
        let cols = r + 2 * m;
        let mut tab = vec![vec![Rational::zero(); cols]; m];
        let mut rhs: Vec<Rational> = self.costs.clone();
        for (k, row) in self.rows.iter().enumerate() {
            for (j, a) in &row.coeffs {
                tab[*j][k] += a;
            }
        }
        for j in 0..m {
            tab[j][r + j] = -Rational::one();
            tab[j][r + m + j] = Rational::one();
        }
        // Reduced profits of the maximisation; optimal once none is positive.
        let mut profit = vec![Rational::zero(); cols];
        for (k, row) in self.rows.iter().enumerate() {
            profit[k] = row.rhs.clone();
        }
        for j in 0..m {
            profit[r + j] = -Rational::one();
        }
        let mut value = Rational::zero();
        let mut basis: Vec<usize> = (0..m).map(|j| r + m + j).collect();

        while let Some(enter) = (0..cols).find(|&c| profit[c].is_positive()) {
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..m {
                if !tab[i][enter].is_positive() {
                    continue;
                }
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((p, _)) = leave else {
                return Err(Infeasible);
            };

            let pivot = tab[p][enter].clone();
            if !pivot.is_one() {
                for a in tab[p].iter_mut() {
                    if !a.is_zero() {
                        *a /= &pivot;
                    }
                }
                rhs[p] /= &pivot;
            }
            let pivot_row = tab[p].clone();
            let pivot_rhs = rhs[p].clone();
            let nonzero: Vec<usize> = (0..cols).filter(|&c| !pivot_row[c].is_zero()).collect();
            for i in 0..m {
                if i == p || tab[i][enter].is_zero() {
                    continue;
                }
                let factor = tab[i][enter].clone();
                for &c in &nonzero {
                    let delta = &factor * &pivot_row[c];
                    tab[i][c] -= delta;
                }
                rhs[i] -= &factor * &pivot_rhs;
            }
            let factor = profit[enter].clone();
            for &c in &nonzero {
                let delta = &factor * &pivot_row[c];
                profit[c] -= delta;
            }
            value += &factor * &pivot_rhs;
            basis[p] = enter;
        }

        // Multiplier of dual row j is −(reduced profit of slack s_j).
        let x: Vec<Rational> = (0..m).map(|j| -profit[r + m + j].clone()).collect();
        let mut row_duals = vec![Rational::zero(); r];
        let mut upper_duals = vec![Rational::zero(); m];
        let mut tight = Vec::with_capacity(m);
        for (i, &col) in basis.iter().enumerate() {
            if col < r {
                row_duals[col] = rhs[i].clone();
                tight.push(TightConstraint::Row(col));
            } else if col < r + m {
                upper_duals[col - r] = rhs[i].clone();
                tight.push(TightConstraint::AtUpper(col - r));
            } else {
                tight.push(TightConstraint::AtLower(col - r - m));
            }
        }
        Ok(CoveringSolution { x, objective: value, row_duals, upper_duals, basis: tight })
    }
}

/// Rank of a dense rational matrix by fraction-exact Gaussian elimination.
pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &lead;
            let pivot_row = rows[rank].clone();
            for (c, p) in pivot_row.iter().enumerate().skip(col) {
                rows[i][c] -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn row(vars: &[usize], rhs: i64) -> CoverRow {
        CoverRow { coeffs: vars.iter().map(|&v| (v, int(1))).collect(), rhs: int(rhs) }
    }

    #[test]
    fn single_cover() {
        // min x0 + x1, x0 + x1 ≥ 1
        let lp = CoveringLp { costs: vec![int(1), int(1)], rows: vec![row(&[0, 1], 1)] };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, int(1));
        assert_eq!(sol.x.iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn triangle_vertex_cover_is_half_integral() {
        // Fractional vertex cover of a triangle: all halves, value 3/2.
        let lp = CoveringLp {
            costs: vec![int(1); 3],
            rows: vec![row(&[0, 1], 1), row(&[1, 2], 1), row(&[0, 2], 1)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, ratio(3, 2));
        assert_eq!(sol.x, vec![ratio(1, 2); 3]);
        assert_eq!(sol.basis.len(), 3);
    }

    #[test]
    fn upper_bounds_bind() {
        // min x0 + 5 x1, x0 + x1 ≥ 2 forces both to 1.
        let lp = CoveringLp { costs: vec![int(1), int(5)], rows: vec![row(&[0, 1], 2)] };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.x, vec![int(1), int(1)]);
        assert_eq!(sol.objective, int(6));
    }

    #[test]
    fn zero_costs_allowed() {
        let lp = CoveringLp { costs: vec![int(0), int(1)], rows: vec![row(&[0, 1], 1)] };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, int(0));
    }

    #[test]
    fn infeasible_detected() {
        let lp = CoveringLp { costs: vec![int(1)], rows: vec![row(&[0], 2)] };
        assert_eq!(lp.solve().unwrap_err(), Infeasible);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec![int(1), int(1)], vec![int(2), int(2)], vec![int(0), int(1)]];
        assert_eq!(rank(rows), 2);
    }
}
