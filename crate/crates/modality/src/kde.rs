//! Gaussian kernel density estimation on a fixed grid, and mode counting.

use crate::sample::Sample;

/// A kernel density estimate evaluated on an equispaced grid spanning the
/// data range extended by three bandwidths on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct KdeGrid {
    points: Vec<f64>,
    density: Vec<f64>,
    bandwidth: f64,
}

impl KdeGrid {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Trapezoid-rule integral of the density over the grid.
    pub fn integral(&self) -> f64 {
        let mut total = 0.0;
        for i in 1..self.points.len() {
            let dx = self.points[i] - self.points[i - 1];
            total += 0.5 * dx * (self.density[i] + self.density[i - 1]);
        }
        total
    }
}

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Gaussian KDE of a sample at bandwidth `h` on `grid_size` points.
pub fn kde_gaussian(sample: &Sample, h: f64, grid_size: usize) -> KdeGrid {
    kde_gaussian_slice(sample.values(), h, grid_size)
}

/// As [`kde_gaussian`], for an already-sorted slice (the bootstrap loop
/// avoids re-wrapping its resamples).
pub(crate) fn kde_gaussian_slice(sorted: &[f64], h: f64, grid_size: usize) -> KdeGrid {
    assert!(h > 0.0, "bandwidth must be positive");
    assert!(grid_size >= 2, "grid needs at least two points");
    let n = sorted.len();
    let lo = sorted[0] - 3.0 * h;
    let hi = sorted[n - 1] + 3.0 * h;
    let step = (hi - lo) / (grid_size - 1) as f64;

    let mut points = Vec::with_capacity(grid_size);
    let mut density = Vec::with_capacity(grid_size);
    let scale = INV_SQRT_2PI / (n as f64 * h);
    // Beyond 40 bandwidths exp underflows to exactly zero, so a window of
    // contributing points keeps small-h evaluations cheap without changing
    // any bit of the result.
    let cutoff = 40.0 * h;
    let mut win_lo = 0usize;
    let mut win_hi = 0usize;
    for g in 0..grid_size {
        let gx = lo + step * g as f64;
        while win_lo < n && sorted[win_lo] < gx - cutoff {
            win_lo += 1;
        }
        if win_hi < win_lo {
            win_hi = win_lo;
        }
        while win_hi < n && sorted[win_hi] <= gx + cutoff {
            win_hi += 1;
        }
        let mut acc = 0.0;
        for &x in &sorted[win_lo..win_hi] {
            let z = (gx - x) / h;
            acc += (-0.5 * z * z).exp();
        }
        points.push(gx);
        density.push(acc * scale);
    }
    KdeGrid {
        points,
        density,
        bandwidth: h,
    }
}

/// Number of local maxima of the density sequence. Runs of equal values
/// bounded by strictly smaller neighbors count as a single mode, and a
/// maximum at either grid boundary counts.
pub fn count_modes(grid: &KdeGrid) -> usize {
    count_modes_seq(grid.density())
}

pub(crate) fn count_modes_seq(density: &[f64]) -> usize {
    debug_assert!(density.len() >= 3, "grid has at least 3 points");
    // Compress plateaus, then count peaks of the strictly-changing sequence.
    let mut compressed = Vec::with_capacity(density.len());
    for &d in density {
        if compressed.last() != Some(&d) {
            compressed.push(d);
        }
    }
    let m = compressed.len();
    if m == 1 {
        return 1;
    }
    let mut modes = 0;
    for i in 0..m {
        let left_ok = i == 0 || compressed[i - 1] < compressed[i];
        let right_ok = i == m - 1 || compressed[i + 1] < compressed[i];
        if left_ok && right_ok {
            modes += 1;
        }
    }
    modes
}
