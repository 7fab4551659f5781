//! Shared test support: a dense two-phase simplex and the definitional
//! brute-force dip oracle built on it.
//!
//! The oracle minimizes sup|F_n - U| over piecewise-linear unimodal CDFs
//! with knots at the data points plus refining midpoints, scanning the mode
//! over knots. Each fixed-mode subproblem is a linear program. It shares no
//! code with the envelope-based implementation it checks.

#![allow(dead_code)]

use rayon::prelude::*;

const EPS: f64 = 1e-9;

/// Minimize `c . x` subject to `A x <= b`, `x >= 0`.
/// Returns the optimum and a solution, or None if infeasible or unbounded.
///
/// The tableau method drifts on heavily degenerate instances, so the
/// returned point is always re-checked against the original rows; on
/// violation the solve is retried with the rows deterministically
/// reordered, which takes a different pivot path.
pub fn lp_min(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<(f64, Vec<f64>)> {
    let m = a.len();
    let mut order: Vec<usize> = (0..m).collect();
    for attempt in 0..8 {
        let (aa, bb): (Vec<Vec<f64>>, Vec<f64>) = (
            order.iter().map(|i| a[*i].clone()).collect(),
            order.iter().map(|i| b[*i]).collect(),
        );
        // Late attempts add a vanishing tie-breaking jitter; it relaxes rows
        // by well under the acceptance threshold below.
        let jitter = if attempt >= 4 { 1e-12 } else { 0.0 };
        if let Some((val, x)) = lp_min_once(c, &aa, &bb, jitter) {
            let worst = a
                .iter()
                .zip(b)
                .map(|(row, rhs)| {
                    row.iter().zip(&x).map(|(r, xi)| r * xi).sum::<f64>() - rhs
                })
                .fold(0.0f64, f64::max);
            if worst <= 1e-8 {
                return Some((val, x));
            }
        }
        // deterministic reshuffle so the next attempt pivots differently
        if attempt % 2 == 0 {
            order.reverse();
        } else {
            let shift = attempt + 1;
            order = (0..m).map(|i| (i * 2 + shift) % m).collect();
            let mut seen = vec![false; m];
            for v in order.iter() {
                seen[*v] = true;
            }
            if seen.iter().any(|s| !s) {
                order = (0..m).map(|i| (i + shift) % m).collect();
            }
        }
    }
    None
}

fn lp_min_once(c: &[f64], a: &[Vec<f64>], b: &[f64], jitter: f64) -> Option<(f64, Vec<f64>)> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);

    // Columns: structural | slack | artificial | rhs.
    let n_art = b.iter().filter(|v| **v < 0.0).count();
    let ncols = n + m + n_art + 1;
    let mut t = vec![vec![0.0f64; ncols]; m + 1];
    let mut basis = vec![0usize; m];

    let mut art_next = n + m;
    for i in 0..m {
        // Row equilibration keeps pivots well-scaled.
        let norm = a[i]
            .iter()
            .fold(b[i].abs(), |acc, v| acc.max(v.abs()))
            .max(1e-30);
        let flip = b[i] < 0.0;
        let sign = if flip { -1.0 } else { 1.0 } / norm;
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = sign;
        let mut z = (i as u64)
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(0xabcd);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        t[i][ncols - 1] = sign * b[i] + jitter * (1.0 + (z >> 11) as f64 / (1u64 << 53) as f64);
        if flip {
            t[i][art_next] = 1.0;
            basis[i] = art_next;
            art_next += 1;
        } else {
            basis[i] = n + i;
        }
    }

    // Phase 1: minimize the sum of artificials.
    if n_art > 0 {
        for j in 0..ncols {
            let mut z = 0.0;
            for i in 0..m {
                if basis[i] >= n + m {
                    z += t[i][j];
                }
            }
            t[m][j] = -z;
        }
        for col in n + m..n + m + n_art {
            t[m][col] += 1.0;
        }
        simplex(&mut t, &mut basis, ncols)?;
        let art_sum = -t[m][ncols - 1];
        if art_sum > 1e-6 {
            return None; // infeasible
        }
        // Drive any artificial still basic (at zero) out of the basis.
        for i in 0..m {
            if basis[i] >= n + m {
                if let Some(j) = (0..n + m).find(|j| t[i][*j].abs() > EPS) {
                    pivot(&mut t, &mut basis, i, j);
                }
            }
        }
        // Forbid artificials from re-entering.
        for row in t.iter_mut() {
            for col in n + m..n + m + n_art {
                row[col] = 0.0;
            }
        }
    }

    // Phase 2: install the real objective expressed in nonbasic variables.
    for j in 0..ncols {
        t[m][j] = 0.0;
    }
    for j in 0..n {
        t[m][j] = c[j];
    }
    for i in 0..m {
        let bj = basis[i];
        let cost = if bj < n { c[bj] } else { 0.0 };
        if cost != 0.0 {
            let factor = cost;
            for j in 0..ncols {
                t[m][j] -= factor * t[i][j];
            }
        }
    }
    simplex(&mut t, &mut basis, ncols)?;

    let mut x = vec![0.0f64; n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][ncols - 1];
        }
    }
    Some((-t[m][ncols - 1], x))
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], r: usize, c: usize) {
    let m = basis.len();
    let inv = 1.0 / t[r][c];
    for v in t[r].iter_mut() {
        *v *= inv;
    }
    for i in 0..=m {
        if i == r {
            continue;
        }
        let factor = t[i][c];
        if factor != 0.0 {
            for j in 0..t[i].len() {
                let delta = factor * t[r][j];
                t[i][j] -= delta;
            }
            t[i][c] = 0.0;
        }
    }
    basis[r] = c;
}

/// Run simplex iterations on a tableau whose last row is the objective.
/// Returns None on unboundedness.
fn simplex(t: &mut [Vec<f64>], basis: &mut [usize], ncols: usize) -> Option<()> {
    let m = basis.len();
    let max_dantzig = 8 * (m + ncols);
    let max_total = 150 * (m + ncols);
    let mut iter = 0usize;
    loop {
        // Entering column: Dantzig at first, Bland once iterations pile up.
        let cols = ncols - 1;
        let entering = if iter < max_dantzig {
            let mut best = None;
            let mut best_val = -EPS;
            for j in 0..cols {
                let rc = t[m][j];
                if rc < best_val {
                    best_val = rc;
                    best = Some(j);
                }
            }
            best
        } else {
            (0..cols).find(|j| t[m][*j] < -EPS)
        };
        let Some(col) = entering else {
            return Some(());
        };

        // Ratio test: exact minimum first, then Bland's smallest-basis-index
        // tie-break among rows at the minimum.
        let mut min_ratio = f64::INFINITY;
        for i in 0..m {
            if t[i][col] > EPS {
                let ratio = (t[i][ncols - 1] / t[i][col]).max(0.0);
                if ratio < min_ratio {
                    min_ratio = ratio;
                }
            }
        }
        if !min_ratio.is_finite() {
            return None; // unbounded
        }
        let mut row: Option<usize> = None;
        for i in 0..m {
            if t[i][col] > EPS {
                let ratio = (t[i][ncols - 1] / t[i][col]).max(0.0);
                if ratio <= min_ratio + 1e-12 {
                    row = match row {
                        None => Some(i),
                        Some(r) if basis[i] < basis[r] => Some(i),
                        keep => keep,
                    };
                }
            }
        }
        pivot(t, basis, row.unwrap(), col);
        iter += 1;
        if iter > max_total {
            return None;
        }
    }
}

/// Empirical CDF value at `z` (proportion of points <= z) for sorted data.
fn ecdf_at(sorted: &[f64], z: f64) -> f64 {
    sorted.partition_point(|x| *x <= z) as f64 / sorted.len() as f64
}

/// Left limit of the empirical CDF at `z` (proportion strictly below).
fn ecdf_below(sorted: &[f64], z: f64) -> f64 {
    sorted.partition_point(|x| *x < z) as f64 / sorted.len() as f64
}

/// Minimal sup-distance to a unimodal CDF with the mode pinned at knot `m`,
/// as a linear program.
///
/// Variables: u_0..u_{K-1} (knot values; at the mode this is the left
/// limit), v (the CDF value at the mode; a jump there is legal), and
/// s = 1 - t where t is the sup-band half-width. Working with s instead of
/// t makes every right-hand side nonnegative, so the slack basis is
/// feasible and no phase-1 pass is needed.
/// Constraints: monotone chain through the jump, convex second differences
/// left of the mode, concave right of it, values within [0,1], and the
/// sup-band |F_n - U| <= t expressed at knots and on the open intervals.
fn dip_lp_at_mode(sorted: &[f64], raw_knots: &[f64], mode: usize) -> Option<f64> {
    dip_lp_full(sorted, raw_knots, mode).map(|(t, _)| t)
}

fn dip_lp_full(sorted: &[f64], raw_knots: &[f64], mode: usize) -> Option<(f64, Vec<f64>)> {
    let k = raw_knots.len();
    let nv = k + 2; // u_0..u_{k-1}, v, s
    let iv = k;
    let is = k + 1;
    let f: Vec<f64> = raw_knots.iter().map(|z| ecdf_at(sorted, *z)).collect();
    let g: Vec<f64> = raw_knots.iter().map(|z| ecdf_below(sorted, *z)).collect();
    // The optimum is invariant under rescaling the abscissa; normalizing to
    // unit range keeps the convexity-row coefficients well conditioned.
    let span = raw_knots[k - 1] - raw_knots[0];
    let knots: Vec<f64> = raw_knots.iter().map(|z| (z - raw_knots[0]) / span).collect();

    let mut a: Vec<Vec<f64>> = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    let mut push = |coeffs: &[(usize, f64)], rhs: f64| {
        let mut row = vec![0.0; nv];
        for (j, c) in coeffs {
            row[*j] += *c;
        }
        a.push(row);
        b.push(rhs);
    };

    // Monotone chain with the jump at the mode.
    for i in 0..k - 1 {
        if i == mode {
            push(&[(i, 1.0), (iv, -1.0)], 0.0); // u_m <= v
            push(&[(iv, 1.0), (i + 1, -1.0)], 0.0); // v <= u_{m+1}
        } else {
            push(&[(i, 1.0), (i + 1, -1.0)], 0.0);
        }
    }
    if mode == k - 1 {
        push(&[(k - 1, 1.0), (iv, -1.0)], 0.0); // u_{K-1} <= v
        push(&[(iv, 1.0)], 1.0); // v <= 1
    } else {
        push(&[(k - 1, 1.0)], 1.0); // u_{K-1} <= 1
    }

    // Band constraints with t = 1 - s.
    for i in 0..k {
        if i == mode {
            push(&[(iv, -1.0), (is, 1.0)], 1.0 - f[i]); // v >= F_i - t
            push(&[(iv, 1.0), (is, 1.0)], f[i] + 1.0); // v <= F_i + t
            push(&[(i, 1.0), (is, 1.0)], g[i] + 1.0); // left limit <= G_i + t
        } else {
            push(&[(i, -1.0), (is, 1.0)], 1.0 - f[i]); // u_i >= F_i - t
            push(&[(i, 1.0), (is, 1.0)], g[i] + 1.0); // u_i <= G_i + t
        }
    }

    // Value at a knot as seen from the segments: the mode's left side uses
    // u_m, its right side uses v.
    let val = |j: usize, side_right: bool| -> usize {
        if j == mode && side_right {
            iv
        } else {
            j
        }
    };

    // Convexity left of the mode: slope(i-1,i) <= slope(i,i+1), i+1 <= mode.
    for i in 1..k - 1 {
        if i + 1 > mode {
            break;
        }
        let h_prev = knots[i] - knots[i - 1];
        let h_next = knots[i + 1] - knots[i];
        // (u_i - u_{i-1}) * h_next - (u_{i+1} - u_i) * h_prev <= 0
        let vi = val(i, false);
        let vim = val(i - 1, false);
        let vip = val(i + 1, false);
        push(
            &[
                (vi, h_next + h_prev),
                (vim, -h_next),
                (vip, -h_prev),
            ],
            0.0,
        );
    }

    // Concavity right of the mode: slope(i-1,i) >= slope(i,i+1), i-1 >= mode.
    for i in (1..k - 1).rev() {
        if i < mode + 1 {
            break;
        }
        let h_prev = knots[i] - knots[i - 1];
        let h_next = knots[i + 1] - knots[i];
        let vi = val(i, true);
        let vim = val(i - 1, true);
        let vip = val(i + 1, true);
        push(
            &[
                (vi, -(h_next + h_prev)),
                (vim, h_next),
                (vip, h_prev),
            ],
            0.0,
        );
    }

    // Minimize t = 1 - s, i.e. maximize s (s <= 1 is implied by the band
    // row at the last knot, where F = 1).
    let mut c = vec![0.0; nv];
    c[is] = -1.0;
    lp_min(&c, &a, &b).map(|(opt, x)| (1.0 + opt, x))
}

/// LP value for a peak placed strictly inside an interval: the knot grid is
/// the data values plus the single candidate peak position.
fn dip_lp_at_peak(sorted: &[f64], data_knots: &[f64], xi: f64) -> f64 {
    let pos = data_knots.partition_point(|z| *z < xi);
    let mut knots = Vec::with_capacity(data_knots.len() + 1);
    knots.extend_from_slice(&data_knots[..pos]);
    knots.push(xi);
    knots.extend_from_slice(&data_knots[pos..]);
    dip_lp_at_mode(sorted, &knots, pos).expect("dip LP is always feasible (t = 1 works)")
}

/// Exact sup-distance between the empirical CDF of `sorted` and the
/// piecewise-linear CDF defined by `(knots, u, v, mode)`: `u[i]` is the
/// value at knot i (the left limit at the mode), `v` the value at the mode
/// itself. Used to double-check fits claimed optimal by the LP.
pub fn verify_fit_sup(sorted: &[f64], knots: &[f64], u: &[f64], v: f64, mode: usize) -> f64 {
    let k = knots.len();
    let right = |i: usize| if i == mode { v } else { u[i] };
    let mut sup: f64 = u[0]; // left tail: F = 0, U rises to u[0]
    for i in 0..k {
        let f_at = ecdf_at(sorted, knots[i]);
        sup = sup.max((f_at - right(i)).abs());
        // open interval to the right of knot i
        if i + 1 < k {
            let upper_end = u[i + 1]; // left limit at the next knot
            sup = sup.max((f_at - right(i)).abs().max((f_at - upper_end).abs()));
        } else {
            sup = sup.max(1.0 - right(i)); // right tail: F = 1
        }
    }
    sup
}

/// Check a candidate (u, v, t) against the constraints of the fixed-mode
/// LP, returning the largest violation. Debug aid.
pub fn max_row_violation(
    sorted: &[f64],
    knots: &[f64],
    mode: usize,
    u: &[f64],
    v: f64,
    t: f64,
) -> f64 {
    let k = knots.len();
    let f: Vec<f64> = knots.iter().map(|z| ecdf_at(sorted, *z)).collect();
    let g: Vec<f64> = knots.iter().map(|z| ecdf_below(sorted, *z)).collect();
    let mut worst = 0.0f64;
    let mut check = |val: f64| {
        if val > worst {
            worst = val;
        }
    };
    for i in 0..k - 1 {
        if i == mode {
            check(u[i] - v);
            check(v - u[i + 1]);
        } else {
            check(u[i] - u[i + 1]);
        }
    }
    if mode == k - 1 {
        check(u[k - 1] - v);
        check(v - 1.0);
    } else {
        check(u[k - 1] - 1.0);
    }
    for i in 0..k {
        if i == mode {
            check(f[i] - t - v);
            check(v - f[i] - t);
            check(u[i] - g[i] - t);
        } else {
            check(f[i] - t - u[i]);
            check(u[i] - g[i] - t);
        }
    }
    let val = |j: usize, side_right: bool| if j == mode && side_right { v } else { u[j] };
    for i in 1..k - 1 {
        if i + 1 > mode {
            break;
        }
        let h_prev = knots[i] - knots[i - 1];
        let h_next = knots[i + 1] - knots[i];
        check(
            val(i, false) * (h_next + h_prev)
                - val(i - 1, false) * h_next
                - val(i + 1, false) * h_prev,
        );
    }
    for i in (1..k - 1).rev() {
        if i < mode + 1 {
            break;
        }
        let h_prev = knots[i] - knots[i - 1];
        let h_next = knots[i + 1] - knots[i];
        check(
            -val(i, true) * (h_next + h_prev)
                + val(i - 1, true) * h_next
                + val(i + 1, true) * h_prev,
        );
    }
    worst
}

/// Debug variant of the per-mode LP returning the fitted values.
pub fn dip_lp_solution(
    sorted: &[f64],
    knots: &[f64],
    mode: usize,
) -> Option<(f64, Vec<f64>, f64)> {
    let (t, x) = dip_lp_full(sorted, knots, mode)?;
    let k = knots.len();
    Some((t, x[..k].to_vec(), x[k]))
}

/// Definitional dip: minimize sup|F_n - U| over piecewise-linear unimodal
/// CDFs, scanning the mode over data knots and over a refining dyadic grid
/// of interior peak positions, stopping once the optimum moves by less than
/// 1e-7 in a refinement round. Values are floored at 1/(2n), matching the
/// convention that the reported dip never goes below the resolution of the
/// empirical CDF.
///
/// Interior knots away from the peak never change the optimum: restricting
/// any feasible piecewise-linear fit to its values at a knot subset stays
/// monotone, stays convex/concave on each side, and satisfies the same band
/// constraints (each open interval between adjacent data values has a
/// constant empirical CDF, so its band cap is inherited). The grid
/// therefore only ever needs the data values plus the peak candidate, which
/// keeps every subproblem small.
pub fn dip_oracle(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sorted.len();
    let floor = 1.0 / (2.0 * n as f64);

    let mut data_knots: Vec<f64> = Vec::new();
    for &x in &sorted {
        if data_knots.last() != Some(&x) {
            data_knots.push(x);
        }
    }
    let k0 = data_knots.len();
    if k0 == 1 {
        return floor;
    }

    // Modes at the data knots themselves (jumps at the mode are legal there).
    let knot_best = (0..k0)
        .into_par_iter()
        .map(|mode| {
            dip_lp_at_mode(&sorted, &data_knots, mode)
                .expect("dip LP is always feasible (t = 1 works)")
        })
        .min_by(|a, b| a.total_cmp(b))
        .unwrap();

    // Initial dyadic scan of peak positions inside every interval.
    const INITIAL_DENOM: usize = 16;
    struct IntervalState {
        lo: f64,
        width: f64,
        best_val: f64,
        best_xi: f64,
        spacing: f64,
    }
    let mut intervals: Vec<IntervalState> = (0..k0 - 1)
        .into_par_iter()
        .map(|i| {
            let lo = data_knots[i];
            let width = data_knots[i + 1] - data_knots[i];
            let mut best_val = f64::INFINITY;
            let mut best_xi = lo + width * 0.5;
            for j in 1..INITIAL_DENOM {
                let xi = lo + width * (j as f64 / INITIAL_DENOM as f64);
                let v = dip_lp_at_peak(&sorted, &data_knots, xi);
                if v < best_val {
                    best_val = v;
                    best_xi = xi;
                }
            }
            IntervalState {
                lo,
                width,
                best_val,
                best_xi,
                spacing: width / INITIAL_DENOM as f64,
            }
        })
        .collect();

    let mut best = intervals
        .iter()
        .map(|s| s.best_val)
        .fold(knot_best, f64::min);

    // Halve the peak grid locally around each competitive interval's best
    // position until a full round moves the optimum by less than 1e-7.
    for _round in 0..48 {
        let margin = 1e-4_f64;
        let round_start = best;
        for s in intervals.iter_mut() {
            if s.best_val > best + margin || s.spacing < 1e-12 * s.width {
                continue;
            }
            s.spacing *= 0.5;
            for dir in [-1.0, 1.0] {
                let xi = s.best_xi + dir * s.spacing;
                if xi <= s.lo || xi >= s.lo + s.width {
                    continue;
                }
                let v = dip_lp_at_peak(&sorted, &data_knots, xi);
                if v < s.best_val {
                    s.best_val = v;
                    s.best_xi = xi;
                }
            }
            if s.best_val < best {
                best = s.best_val;
            }
        }
        if round_start - best < 1e-7 {
            break;
        }
    }

    best.max(floor)
}

/// Enumerate all nondecreasing sequences of the given length over `alphabet`.
pub fn multisets(alphabet: &[f64], len: usize) -> Vec<Vec<f64>> {
    fn rec(alphabet: &[f64], start: usize, len: usize, cur: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..alphabet.len() {
            cur.push(alphabet[i]);
            rec(alphabet, i, len - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(alphabet, 0, len, &mut Vec::new(), &mut out);
    out
}
