//! The dip statistic and its p-value against the uniform null.
//!
//! The dip of a sample is the smallest sup-distance between its empirical
//! CDF and any unimodal CDF (convex up to some mode, concave after). It is
//! computed here with the iterative convex-minorant / concave-majorant
//! algorithm: fit both envelopes over a shrinking modal interval, track the
//! largest discrepancy, and stop when the interval is stable. Degenerate
//! input (all values equal) reports the floor 1/(2n) rather than zero.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::sample::Sample;
use crate::tables::DipQuantileTable;
use crate::warning::Warning;

/// How the p-value of a [`DipTestResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PValueMethod {
    /// Interpolated from a simulated quantile table of uniform nulls.
    Table,
    /// Monte Carlo simulation with fresh uniform samples.
    MonteCarlo,
}

/// Outcome of the dip test.
#[derive(Debug, Clone, PartialEq)]
pub struct DipTestResult {
    /// The dip statistic D; always at least 1/(2n).
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
    pub method: PValueMethod,
    /// Monte Carlo repetitions used; 0 for the table path.
    pub reps: usize,
    pub warnings: Vec<Warning>,
}

impl DipTestResult {
    pub fn alternative_hypothesis(&self) -> &'static str {
        "non-unimodal, i.e., at least bimodal"
    }
}

/// Options for [`dip_test`].
#[derive(Debug, Clone)]
pub struct DipOptions {
    /// Simulate the p-value by Monte Carlo instead of table interpolation.
    pub simulate_pvalue: bool,
    /// Monte Carlo repetitions; ignored unless `simulate_pvalue` is set.
    pub reps: usize,
    /// Seed for the Monte Carlo path; a fixed default keeps unseeded runs
    /// reproducible.
    pub seed: Option<u64>,
}

impl Default for DipOptions {
    fn default() -> Self {
        DipOptions {
            simulate_pvalue: false,
            reps: 2000,
            seed: None,
        }
    }
}

/// Dip statistic of a sample. Needs n >= 2.
pub fn dip_statistic(sample: &Sample) -> Result<f64> {
    if sample.n() < 2 {
        return Err(Error::DegenerateSample {
            n: sample.n(),
            needed: 2,
        });
    }
    Ok(dip_sorted(sample.values()))
}

/// Dip of an already-sorted slice. The workhorse behind [`dip_statistic`]
/// and the table generator.
///
/// Internally all distances are kept in "count" units (2n times the CDF
/// scale) and divided out at the end, which keeps the slope comparisons in
/// exact integer-times-spacing arithmetic.
pub(crate) fn dip_sorted(x: &[f64]) -> f64 {
    let n = x.len();
    debug_assert!(n >= 1);
    debug_assert!(x.windows(2).all(|w| w[0] <= w[1]), "input must be sorted");
    if n < 2 || x[n - 1] == x[0] {
        return 1.0 / (2.0 * n as f64);
    }

    // mn[j]: previous knot of the greatest convex minorant ending at j.
    let mut mn = vec![0usize; n];
    for j in 1..n {
        mn[j] = j - 1;
        loop {
            let mnj = mn[j];
            if mnj == 0 {
                break;
            }
            let mnmnj = mn[mnj];
            if (x[j] - x[mnj]) * ((mnj - mnmnj) as f64)
                < (x[mnj] - x[mnmnj]) * ((j - mnj) as f64)
            {
                break;
            }
            mn[j] = mnmnj;
        }
    }

    // mj[k]: next knot of the least concave majorant starting at k.
    let mut mj = vec![0usize; n];
    mj[n - 1] = n - 1;
    for k in (0..n - 1).rev() {
        mj[k] = k + 1;
        loop {
            let mjk = mj[k];
            if mjk == n - 1 {
                break;
            }
            let mjmjk = mj[mjk];
            if (x[k] - x[mjk]) * (mjk as f64 - mjmjk as f64)
                < (x[mjk] - x[mjmjk]) * (k as f64 - mjk as f64)
            {
                break;
            }
            mj[k] = mjmjk;
        }
    }

    let mut low = 0usize;
    let mut high = n - 1;
    // Current dip in count units; 1.0 here is the 1/(2n) floor.
    let mut dip = 1.0f64;
    let mut gcm = vec![0usize; n + 1];
    let mut lcm = vec![0usize; n + 1];

    loop {
        if low >= high {
            break;
        }
        // Collect convex-minorant knots from high down to low, and
        // concave-majorant knots from low up to high.
        gcm[0] = high;
        let mut l_gcm = 1;
        while gcm[l_gcm - 1] > low {
            gcm[l_gcm] = mn[gcm[l_gcm - 1]];
            l_gcm += 1;
        }
        lcm[0] = low;
        let mut l_lcm = 1;
        while lcm[l_lcm - 1] < high {
            lcm[l_lcm] = mj[lcm[l_lcm - 1]];
            l_lcm += 1;
        }

        let mut ig = l_gcm - 1;
        let mut ih = l_lcm - 1;
        let mut ix = l_gcm as isize - 2;
        let mut iv = 1isize;

        // Largest vertical gap between the two envelopes over [low, high].
        let mut d = 0.0f64;
        if l_gcm == 2 && l_lcm == 2 {
            // Envelopes are identical chords: nothing between them.
            d = 1.0;
        } else {
            loop {
                let gcmix = gcm[ix as usize];
                let lcmiv = lcm[iv as usize];
                if gcmix > lcmiv {
                    // Next change point comes from the majorant; measure the
                    // gap against the minorant chord there.
                    let gcmi1 = gcm[ix as usize + 1];
                    let dx = (lcmiv as f64 - gcmi1 as f64 + 1.0)
                        - (x[lcmiv] - x[gcmi1]) * (gcmix - gcmi1) as f64
                            / (x[gcmix] - x[gcmi1]);
                    iv += 1;
                    if dx >= d {
                        d = dx;
                        ig = ix as usize + 1;
                        ih = iv as usize - 1;
                    }
                } else {
                    // Next change point comes from the minorant.
                    let lcmiv1 = lcm[iv as usize - 1];
                    let dx = (x[gcmix] - x[lcmiv1]) * (lcmiv as f64 - lcmiv1 as f64)
                        / (x[lcmiv] - x[lcmiv1])
                        - (gcmix as f64 - lcmiv1 as f64 - 1.0);
                    ix -= 1;
                    if dx >= d {
                        d = dx;
                        ig = (ix + 1) as usize;
                        ih = iv as usize;
                    }
                }
                if ix < 0 {
                    ix = 0;
                }
                if iv as usize > l_lcm - 1 {
                    iv = (l_lcm - 1) as isize;
                }
                if gcm[ix as usize] == lcm[iv as usize] {
                    break;
                }
            }
        }

        if d < dip {
            break;
        }

        // Deviation of the empirical CDF above the minorant, left of the
        // modal interval.
        let mut dip_l = 0.0f64;
        for j in ig..(l_gcm - 1) {
            let jb = gcm[j + 1];
            let je = gcm[j];
            let mut max_t = 1.0f64;
            if je - jb > 1 && x[je] != x[jb] {
                let c = (je - jb) as f64 / (x[je] - x[jb]);
                for jj in jb..=je {
                    let t = (jj - jb + 1) as f64 - (x[jj] - x[jb]) * c;
                    if t > max_t {
                        max_t = t;
                    }
                }
            }
            if dip_l < max_t {
                dip_l = max_t;
            }
        }

        // Deviation below the majorant, right of the modal interval.
        let mut dip_u = 0.0f64;
        for j in ih..(l_lcm - 1) {
            let jb = lcm[j];
            let je = lcm[j + 1];
            let mut max_t = 1.0f64;
            if je - jb > 1 && x[je] != x[jb] {
                let c = (je - jb) as f64 / (x[je] - x[jb]);
                for jj in jb..=je {
                    let t = (x[jj] - x[jb]) * c - (jj as f64 - jb as f64 - 1.0);
                    if t > max_t {
                        max_t = t;
                    }
                }
            }
            if dip_u < max_t {
                dip_u = max_t;
            }
        }

        let dipnew = if dip_u > dip_l { dip_u } else { dip_l };
        if dip < dipnew {
            dip = dipnew;
        }

        if low == gcm[ig] && high == lcm[ih] {
            break;
        }
        low = gcm[ig];
        high = lcm[ih];
    }

    dip / (2.0 * n as f64)
}

/// Monte Carlo p-value: dips of `reps` fresh uniform samples of size `n`,
/// scored with the (count + 1)/(reps + 1) convention so p is never zero.
///
/// Replications run in parallel over substreams indexed by replication
/// number; the result is identical for any worker count.
pub fn dip_pvalue_mc(d: f64, n: usize, reps: usize, rng: &RngState) -> Result<f64> {
    if reps < 1 {
        return Err(Error::Validation(
            "Monte Carlo repetitions must be at least 1".into(),
        ));
    }
    let exceed = (0..reps as u64)
        .into_par_iter()
        .map(|i| {
            let mut sub = rng.substream(i);
            let mut draw: Vec<f64> = (0..n).map(|_| sub.draw_uniform()).collect();
            draw.sort_unstable_by(|a, b| a.total_cmp(b));
            usize::from(dip_sorted(&draw) >= d)
        })
        .sum::<usize>();
    Ok((exceed + 1) as f64 / (reps + 1) as f64)
}

/// Table p-value via interpolation on the sqrt(n)-scaled quantile curves.
pub fn dip_pvalue_table(
    d: f64,
    n: usize,
    table: &DipQuantileTable,
) -> Result<(f64, Vec<Warning>)> {
    table.p_value(d, n)
}

/// Run the dip test: compute the statistic once and route the p-value to
/// the table or the Monte Carlo simulation.
pub fn dip_test(
    sample: &Sample,
    opts: &DipOptions,
    table: &DipQuantileTable,
) -> Result<DipTestResult> {
    let d = dip_statistic(sample)?;
    if opts.simulate_pvalue {
        let rng = RngState::new(opts.seed.unwrap_or(0));
        let p = dip_pvalue_mc(d, sample.n(), opts.reps, &rng)?;
        Ok(DipTestResult {
            statistic: d,
            p_value: p,
            n: sample.n(),
            method: PValueMethod::MonteCarlo,
            reps: opts.reps,
            warnings: Vec::new(),
        })
    } else {
        let (p, warnings) = dip_pvalue_table(d, sample.n(), table)?;
        Ok(DipTestResult {
            statistic: d,
            p_value: p,
            n: sample.n(),
            method: PValueMethod::Table,
            reps: 0,
            warnings,
        })
    }
}
