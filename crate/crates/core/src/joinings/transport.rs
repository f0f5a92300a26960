//! Exact transportation simplex: maximize `Σ c_ij λ_ij` over couplings of two
//! discrete laws. North-west-corner start, dual potentials on the spanning
//! tree, Bland's rule for both entering and leaving cells.

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TransportSolution {
    pub plan: Vec<Vec<BigRational>>,
    pub value: BigRational,
    /// Dual potentials with `u_i + v_j ≥ c_ij` everywhere, equality on the basis.
    pub row_potentials: Vec<BigRational>,
    pub col_potentials: Vec<BigRational>,
    pub pivots: usize,
}

impl TransportSolution {
    /// Dual objective; equals `value` at optimality.
    pub fn dual_value(&self, supply: &[BigRational], demand: &[BigRational]) -> BigRational {
        let rows: BigRational = self.row_potentials.iter().zip(supply).map(|(u, a)| u * a).sum();
        let cols: BigRational = self.col_potentials.iter().zip(demand).map(|(v, b)| v * b).sum();
        rows + cols
    }
}

fn check_law(p: &[BigRational], what: &str) -> Result<()> {
    if p.is_empty() {
        return Err(Error::pre(format!("{what} is empty")));
    }
    if p.iter().any(|x| x.is_negative()) {
        return Err(Error::pre(format!("{what} has a negative entry")));
    }
    Ok(())
}

/// Basis cell list plus the tree walk between a column node and a row node.
struct Basis {
    rows: usize,
    cols: usize,
    cells: Vec<(usize, usize)>,
}

impl Basis {
    /// Tree path from column `j` to row `i` as a list of basic cells.
    fn path(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let nodes = self.rows + self.cols;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
        for (k, &(r, c)) in self.cells.iter().enumerate() {
            adj[r].push((self.rows + c, k));
            adj[self.rows + c].push((r, k));
        }
        let start = self.rows + j;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nodes];
        let mut seen = vec![false; nodes];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            if node == i {
                break;
            }
            for &(next, k) in &adj[node] {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((node, k));
                    queue.push_back(next);
                }
            }
        }
        let mut out = Vec::new();
        let mut node = i;
        while node != start {
            let (prev, k) = parent[node].expect("basis is a spanning tree");
            out.push(self.cells[k]);
            node = prev;
        }
        out.reverse();
        out
    }

    fn potentials(&self, cost: &[Vec<BigRational>]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut u: Vec<Option<BigRational>> = vec![None; self.rows];
        let mut v: Vec<Option<BigRational>> = vec![None; self.cols];
        u[0] = Some(BigRational::zero());
        let mut changed = true;
        while changed {
            changed = false;
            for &(r, c) in &self.cells {
                match (&u[r], &v[c]) {
                    (Some(ur), None) => {
                        v[c] = Some(&cost[r][c] - ur);
                        changed = true;
                    }
                    (None, Some(vc)) => {
                        u[r] = Some(&cost[r][c] - vc);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let unwrap = |x: Vec<Option<BigRational>>| x.into_iter().map(|p| p.expect("basis spans all nodes")).collect();
        (unwrap(u), unwrap(v))
    }
}

/// Maximizes `Σ cost[i][j]·λ[i][j]` subject to `Σ_j λ_ij = supply_i`,
/// `Σ_i λ_ij = demand_j`, `λ ≥ 0`. Totals must agree.
pub fn solve_max(
    cost: &[Vec<BigRational>],
    supply: &[BigRational],
    demand: &[BigRational],
) -> Result<TransportSolution> {
    check_law(supply, "supply")?;
    check_law(demand, "demand")?;
    let (m, n) = (supply.len(), demand.len());
    if cost.len() != m || cost.iter().any(|row| row.len() != n) {
        return Err(Error::pre("cost matrix shape does not match the marginals"));
    }
    if supply.iter().sum::<BigRational>() != demand.iter().sum::<BigRational>() {
        return Err(Error::pre("supply and demand totals differ"));
    }

    // North-west corner along a staircase: m + n − 1 cells, degenerate zeros kept.
    let mut plan = vec![vec![BigRational::zero(); n]; m];
    let mut cells = Vec::with_capacity(m + n - 1);
    let (mut a, mut b) = (supply.to_vec(), demand.to_vec());
    let (mut i, mut j) = (0, 0);
    loop {
        let x = a[i].clone().min(b[j].clone());
        a[i] -= &x;
        b[j] -= &x;
        plan[i][j] = x;
        cells.push((i, j));
        if i == m - 1 && j == n - 1 {
            break;
        }
        if i == m - 1 {
            j += 1;
        } else if j == n - 1 || a[i].is_zero() {
            i += 1;
        } else {
            j += 1;
        }
    }
    let mut basis = Basis { rows: m, cols: n, cells };

    let mut pivots = 0;
    loop {
        let (u, v) = basis.potentials(cost);
        let entering = (0..m)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .find(|&(r, c)| (&cost[r][c] - &u[r] - &v[c]).is_positive());
        let Some((ei, ej)) = entering else {
            let value = (0..m).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| &cost[r][c] * &plan[r][c]).sum();
            return Ok(TransportSolution { plan, value, row_potentials: u, col_potentials: v, pivots });
        };
        let path = basis.path(ei, ej);
        // Cells on the cycle alternate −, +, −, … after the entering `+` cell.
        let minus: Vec<(usize, usize)> = path.iter().step_by(2).copied().collect();
        let theta = minus.iter().map(|&(r, c)| plan[r][c].clone()).min().expect("cycle has a minus cell");
        let leaving = *minus.iter().filter(|&&(r, c)| plan[r][c] == theta).min().unwrap();
        plan[ei][ej] += &theta;
        for (k, &(r, c)) in path.iter().enumerate() {
            if k % 2 == 0 {
                plan[r][c] -= &theta;
            } else {
                plan[r][c] += &theta;
            }
        }
        let pos = basis.cells.iter().position(|&cell| cell == leaving).unwrap();
        basis.cells[pos] = (ei, ej);
        pivots += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    fn check_certificate(cost: &[Vec<BigRational>], a: &[BigRational], b: &[BigRational], s: &TransportSolution) {
        for (i, row) in s.plan.iter().enumerate() {
            assert_eq!(row.iter().sum::<BigRational>(), a[i]);
            for (j, x) in row.iter().enumerate() {
                assert!(!x.is_negative());
                assert!(&s.row_potentials[i] + &s.col_potentials[j] >= cost[i][j]);
            }
        }
        for j in 0..b.len() {
            assert_eq!(s.plan.iter().map(|r| &r[j]).sum::<BigRational>(), b[j]);
        }
        assert_eq!(s.dual_value(a, b), s.value);
    }

    #[test]
    fn two_by_two_monotone_coupling() {
        let cost = ints(&[&[1, -1], &[-1, 1]]);
        let half = vec![q(1, 2), q(1, 2)];
        let s = solve_max(&cost, &half, &half).unwrap();
        assert_eq!(s.value, q(1, 1));
        check_certificate(&cost, &half, &half, &s);
        let neg: Vec<Vec<BigRational>> = cost.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        assert_eq!(solve_max(&neg, &half, &half).unwrap().value, q(1, 1));
    }

    #[test]
    fn matches_brute_force_on_permutations() {
        // Uniform marginals on 4 points: the optimum is an assignment (Birkhoff).
        let cost = ints(&[&[3, 7, 1, 4], &[2, 2, 9, 0], &[5, 1, 1, 8], &[6, 3, 2, 2]]);
        let quarter = vec![q(1, 4); 4];
        let s = solve_max(&cost, &quarter, &quarter).unwrap();
        check_certificate(&cost, &quarter, &quarter, &s);
        let mut best = i64::MIN;
        let mut perm = [0usize, 1, 2, 3];
        fn permute(k: usize, p: &mut [usize; 4], cost: &[Vec<BigRational>], best: &mut i64) {
            if k == 4 {
                let v: BigRational = (0..4).map(|i| cost[i][p[i]].clone()).sum();
                *best = (*best).max(v.to_integer().try_into().unwrap());
                return;
            }
            for s in k..4 {
                p.swap(k, s);
                permute(k + 1, p, cost, best);
                p.swap(k, s);
            }
        }
        permute(0, &mut perm, &cost, &mut best);
        assert_eq!(s.value, q(best, 4));
    }

    #[test]
    fn degenerate_and_rectangular() {
        let cost = ints(&[&[1, 0, 2], &[0, 3, 1]]);
        let a = vec![q(1, 3), q(2, 3)];
        let b = vec![q(1, 3), q(1, 3), q(1, 3)];
        let s = solve_max(&cost, &a, &b).unwrap();
        check_certificate(&cost, &a, &b, &s);
        let a0 = vec![q(0, 1), q(1, 1)];
        let b0 = vec![q(1, 1), q(0, 1), q(0, 1)];
        let s0 = solve_max(&cost, &a0, &b0).unwrap();
        assert_eq!(s0.value, q(0, 1));
        assert!(solve_max(&cost, &a, &a).is_err());
    }
}
