//! Visit-order selection on the stage graph.
//!
//! Vertices are `0` (start), `1..=N` (targets) and `N + 1` (finish). Edge
//! `(i, j)` costs the minimum duration of the stage that leaves vertex `i`,
//! flies to `j` and offloads `D_i` on the way, so the matrix is asymmetric.
//! The visit order is the cheapest Hamiltonian path from start to finish.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::config::MissionConfig;
use crate::error::OrderError;
use crate::subtrajectory::{solve_stage_with_tol, SubTrajectory, DEFAULT_POS_TOL_M};

/// Largest `N` accepted by [`solve_order_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    n: usize,
    w: Vec<Vec<f64>>,
    stage_solutions: BTreeMap<(usize, usize), SubTrajectory>,
}

impl WeightMatrix {
    /// Wraps a raw `(N+2)×(N+2)` matrix. Entries for edges that do not exist
    /// (self loops, into the start, out of the finish, start to finish) are
    /// replaced by `+∞`.
    ///
    /// # Panics
    /// If the matrix is not square or smaller than 3×3.
    pub fn from_weights(mut w: Vec<Vec<f64>>) -> WeightMatrix {
        let size = w.len();
        assert!(size >= 3, "need at least one target");
        assert!(w.iter().all(|row| row.len() == size), "weight matrix must be square");
        let n = size - 2;
        for (i, row) in w.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                if !edge_exists(n, i, j) {
                    *x = f64::INFINITY;
                }
            }
        }
        WeightMatrix { n, w, stage_solutions: BTreeMap::new() }
    }

    /// Number of targets.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, from: usize, to: usize) -> f64 {
        self.w[from][to]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.w
    }

    pub fn stage(&self, from: usize, to: usize) -> Option<&SubTrajectory> {
        self.stage_solutions.get(&(from, to))
    }

    /// Path weight `start -> order[0] -> ... -> order[N-1] -> finish`,
    /// summed left to right.
    pub fn path_cost(&self, order: &[usize]) -> f64 {
        let mut cost = 0.0;
        let mut prev = 0;
        for &v in order {
            cost += self.w[prev][v];
            prev = v;
        }
        cost + self.w[prev][self.n + 1]
    }

    pub fn check_order(&self, order: &[usize]) -> Result<(), OrderError> {
        if is_permutation(order, self.n) {
            Ok(())
        } else {
            Err(OrderError::InvalidOrder(order.to_vec()))
        }
    }
}

fn edge_exists(n: usize, i: usize, j: usize) -> bool {
    let finish = n + 1;
    i != j && i != finish && j != 0 && !(i == 0 && j == finish)
}

/// True when `order` contains each of `1..=n` exactly once.
pub fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &v in order {
        if v == 0 || v > n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Target visit order and its path weight in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct VisitOrder {
    pub order: Vec<usize>,
    pub cost_s: f64,
}

impl VisitOrder {
    /// Prices `order` on `wm`.
    pub fn evaluate(order: Vec<usize>, wm: &WeightMatrix) -> Result<VisitOrder, OrderError> {
        wm.check_order(&order)?;
        let cost_s = wm.path_cost(&order);
        Ok(VisitOrder { order, cost_s })
    }
}

pub fn build_weight_matrix(cfg: &MissionConfig) -> WeightMatrix {
    build_weight_matrix_with_tol(cfg, DEFAULT_POS_TOL_M)
}

/// Solves every stage of the graph (in parallel) and keeps the solutions for
/// plan assembly.
pub fn build_weight_matrix_with_tol(cfg: &MissionConfig, pos_tol_m: f64) -> WeightMatrix {
    let n = cfg.n();
    let size = n + 2;
    let edges: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| edge_exists(n, i, j))
        .collect();
    let solved: Vec<((usize, usize), SubTrajectory)> = edges
        .into_par_iter()
        .map(|(i, j)| {
            let sub = solve_stage_with_tol(
                cfg.vertex_position(i),
                cfg.vertex_position(j),
                cfg.outgoing_volume(i),
                cfg,
                pos_tol_m,
            );
            ((i, j), sub)
        })
        .collect();

    let mut w = vec![vec![f64::INFINITY; size]; size];
    let mut stage_solutions = BTreeMap::new();
    for ((i, j), sub) in solved {
        w[i][j] = sub.duration_s;
        stage_solutions.insert((i, j), sub);
    }
    WeightMatrix { n, w, stage_solutions }
}

/// Pure flying-time weights, `‖p_i − p_j‖ / v_max`.
pub fn distance_matrix(cfg: &MissionConfig) -> WeightMatrix {
    let size = cfg.n() + 2;
    let w = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| cfg.vertex_position(i).distance(cfg.vertex_position(j)) / cfg.v_max)
                .collect()
        })
        .collect();
    WeightMatrix::from_weights(w)
}

/// Optimal path by depth-first enumeration in lexicographic order; the first
/// optimum found (lexicographically smallest) wins ties.
pub fn solve_order_exhaustive(wm: &WeightMatrix) -> Result<VisitOrder, OrderError> {
    let n = wm.n;
    if n > EXHAUSTIVE_LIMIT {
        return Err(OrderError::TooLarge { n, max: EXHAUSTIVE_LIMIT });
    }

    struct Search<'a> {
        wm: &'a WeightMatrix,
        used: Vec<bool>,
        prefix: Vec<usize>,
        best: Option<VisitOrder>,
    }

    impl Search<'_> {
        fn go(&mut self, last: usize, partial: f64) {
            let n = self.wm.n;
            if let Some(best) = &self.best {
                if partial > best.cost_s {
                    return;
                }
            }
            if self.prefix.len() == n {
                let cost = partial + self.wm.w[last][n + 1];
                if self.best.as_ref().is_none_or(|b| cost < b.cost_s) {
                    self.best = Some(VisitOrder { order: self.prefix.clone(), cost_s: cost });
                }
                return;
            }
            for v in 1..=n {
                if self.used[v] {
                    continue;
                }
                self.used[v] = true;
                self.prefix.push(v);
                self.go(v, partial + self.wm.w[last][v]);
                self.prefix.pop();
                self.used[v] = false;
            }
        }
    }

    let mut search = Search { wm, used: vec![false; n + 1], prefix: Vec::with_capacity(n), best: None };
    search.go(0, 0.0);
    Ok(search.best.expect("at least one permutation exists"))
}

/// Nearest-neighbour construction from the start vertex followed by local
/// search until no move shortens the path.
///
/// Moves are 2-opt segment reversals plus Or-opt block relocations (moving a
/// run of consecutive targets elsewhere without reversing it). Reversals
/// alone cannot shift a block past its neighbours, and on asymmetric weights
/// they also flip every edge inside the block, so they often stall where a
/// plain relocation would help. Each pass prices `O(N³)` candidates at
/// `O(N)` each and applies the best one.
pub fn solve_order_heuristic(wm: &WeightMatrix) -> VisitOrder {
    let n = wm.n;
    let mut used = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut cur = 0;
    for _ in 0..n {
        let mut next = 0;
        let mut best = f64::INFINITY;
        for (v, &taken) in used.iter().enumerate().skip(1) {
            if !taken && (next == 0 || wm.w[cur][v] < best) {
                next = v;
                best = wm.w[cur][v];
            }
        }
        used[next] = true;
        order.push(next);
        cur = next;
    }

    let mut cost = wm.path_cost(&order);
    let mut candidate = Vec::with_capacity(n);
    loop {
        let threshold = cost - 1e-12 * cost.abs().max(1.0);
        let mut best: Option<(Vec<usize>, f64)> = None;
        let mut consider = |candidate: &[usize]| {
            let c = wm.path_cost(candidate);
            if c < best.as_ref().map_or(threshold, |(_, b)| *b) {
                best = Some((candidate.to_vec(), c));
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                candidate.clear();
                candidate.extend_from_slice(&order);
                candidate[i..=j].reverse();
                consider(&candidate);
            }
        }
        for i in 0..n {
            for j in i..n {
                let block = &order[i..=j];
                let rest: Vec<usize> = order[..i].iter().chain(&order[j + 1..]).copied().collect();
                for k in 0..=rest.len() {
                    if k == i {
                        continue;
                    }
                    candidate.clear();
                    candidate.extend_from_slice(&rest[..k]);
                    candidate.extend_from_slice(block);
                    candidate.extend_from_slice(&rest[k..]);
                    consider(&candidate);
                }
            }
        }
        match best {
            Some((next, c)) => {
                order = next;
                cost = c;
            }
            None => break,
        }
    }
    let cost_s = wm.path_cost(&order);
    VisitOrder { order, cost_s }
}

/// Shortest-flying-distance visit order (exhaustive up to
/// [`EXHAUSTIVE_LIMIT`] targets, heuristic beyond). `cost_s` is the pure
/// flying time; re-price the order with [`VisitOrder::evaluate`] on the
/// stage matrix to compare it against transmission-aware orders.
pub fn solve_order_distance_tsp(cfg: &MissionConfig) -> VisitOrder {
    let dm = distance_matrix(cfg);
    if dm.n <= EXHAUSTIVE_LIMIT {
        solve_order_exhaustive(&dm).expect("size checked")
    } else {
        solve_order_heuristic(&dm)
    }
}
