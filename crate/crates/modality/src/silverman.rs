//! Silverman's critical-bandwidth test, its smoothed-bootstrap p-value,
//! the k = 1 calibration adjustment, and sequential mode-count estimation.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kde::{count_modes_seq, kde_gaussian_slice};
use crate::rng::RngState;
use crate::sample::Sample;
use crate::tables::CalibrationCurve;
use crate::warning::Warning;

/// Grid resolution shared by every density evaluation in the test.
pub(crate) const GRID_SIZE: usize = 512;

/// Result of a critical-bandwidth search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalBandwidth {
    /// Smallest bandwidth at which the KDE has at most k modes.
    pub h_crit: f64,
    /// The lower bracket never exceeded k modes; `h_crit` is a search floor
    /// rather than a crossing point.
    pub at_floor: bool,
}

/// Outcome of the Silverman test. The null hypothesis is that the number of
/// modes is at most `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SilvermanTestResult {
    pub k: usize,
    /// The test statistic: the critical bandwidth of the data.
    pub h_crit: f64,
    pub p_value: f64,
    /// Bootstrap replications used.
    pub m: usize,
    /// Whether the reported p-value is the calibrated one.
    pub adjusted: bool,
    /// Rounding digits applied to the adjusted p-value.
    pub digits: u32,
    /// Seed actually used; recorded even when it was generated.
    pub seed: u64,
    pub warnings: Vec<Warning>,
}

impl SilvermanTestResult {
    pub fn null_hypothesis(&self) -> String {
        format!("number of modes <= {}", self.k)
    }
}

/// Options for [`silverman_test`].
#[derive(Debug, Clone)]
pub struct SilvermanOptions {
    /// Null hypothesis: number of modes <= k.
    pub k: usize,
    /// Bootstrap replications.
    pub m: usize,
    /// Apply the k = 1 calibration to the p-value.
    pub adjust: bool,
    /// Rounding digits for the adjusted p-value.
    pub digits: u32,
    /// RNG seed; when absent one is drawn from OS entropy and recorded.
    pub seed: Option<u64>,
}

impl Default for SilvermanOptions {
    fn default() -> Self {
        SilvermanOptions {
            k: 1,
            m: 999,
            adjust: false,
            digits: 6,
            seed: None,
        }
    }
}

fn count_modes_at(sorted: &[f64], h: f64) -> usize {
    count_modes_seq(kde_gaussian_slice(sorted, h, GRID_SIZE).density())
}

/// Smallest bandwidth at which the Gaussian KDE of the sample has at most
/// `k` modes, located by bracketing and bisection to relative width
/// `rel_tol`.
pub fn critical_bandwidth(sample: &Sample, k: usize, rel_tol: f64) -> Result<CriticalBandwidth> {
    if sample.n() < 2 {
        return Err(Error::DegenerateSample {
            n: sample.n(),
            needed: 2,
        });
    }
    if sample.sd()? == 0.0 {
        return Err(Error::DegenerateSpread);
    }
    assert!(k >= 1, "k must be at least 1");
    assert!(rel_tol > 0.0 && rel_tol < 0.1, "rel_tol out of range");

    let x = sample.values();
    let range = sample.max() - sample.min();

    // Upper bracket: heavy smoothing always reaches one mode eventually.
    let mut hi = range;
    let mut doublings = 0;
    while count_modes_at(x, hi) > k {
        hi *= 2.0;
        doublings += 1;
        if doublings > 64 {
            return Err(Error::Validation(
                "bandwidth upper bracket failed to reach k modes".into(),
            ));
        }
    }

    // Lower bracket: shrink until more than k modes appear. If the data
    // never shows more than k modes the search bottoms out.
    let mut lo = range / 1e4;
    if lo >= hi {
        lo = hi / 2.0;
    }
    let mut halvings = 0;
    while count_modes_at(x, lo) <= k {
        lo /= 2.0;
        halvings += 1;
        if halvings > 30 {
            return Ok(CriticalBandwidth {
                h_crit: lo,
                at_floor: true,
            });
        }
    }

    let mut iterations = 0;
    while hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if count_modes_at(x, mid) <= k {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
        if iterations > 200 {
            break;
        }
    }
    Ok(CriticalBandwidth {
        h_crit: hi,
        at_floor: false,
    })
}

/// Variance-preserving smoothed bootstrap: resample with replacement, add
/// kernel-scale Gaussian noise, and rescale so the draw's spread matches the
/// original sample's.
pub fn smoothed_bootstrap(sample: &Sample, h: f64, rng: &mut RngState) -> Result<Vec<f64>> {
    let sd = sample.sd()?;
    if sd == 0.0 {
        return Err(Error::DegenerateSpread);
    }
    let x = sample.values();
    let n = x.len();
    let mut resample = Vec::with_capacity(n);
    let mut mean = 0.0;
    for _ in 0..n {
        let v = x[rng.draw_index(n)];
        mean += v;
        resample.push(v);
    }
    mean /= n as f64;
    let shrink = 1.0 / (1.0 + h * h / (sd * sd)).sqrt();
    for v in resample.iter_mut() {
        let eps: f64 = rng.draw_normal();
        *v = mean + shrink * (*v - mean + h * eps);
    }
    Ok(resample)
}

/// Critical bandwidth plus smoothed-bootstrap p-value for the null of at
/// most `k` modes: the proportion of bootstrap KDEs at the data's critical
/// bandwidth showing more than `k` modes. Zero is attainable; no continuity
/// correction is applied.
///
/// Replications run on substreams indexed by replication number, so the
/// result is identical for any worker count.
pub fn silverman_pvalue(
    sample: &Sample,
    k: usize,
    m: usize,
    rng: &RngState,
) -> Result<(CriticalBandwidth, f64, Vec<Warning>)> {
    if m < 1 {
        return Err(Error::Validation(
            "bootstrap replications must be at least 1".into(),
        ));
    }
    let bw = critical_bandwidth(sample, k, 1e-6)?;
    let h0 = bw.h_crit;
    let exceed: usize = (0..m as u64)
        .into_par_iter()
        .map(|i| {
            let mut sub = rng.substream(i);
            let mut draw = smoothed_bootstrap(sample, h0, &mut sub)
                .expect("spread already validated");
            draw.sort_unstable_by(|a, b| a.total_cmp(b));
            usize::from(count_modes_at(&draw, h0) > k)
        })
        .sum();
    let mut warnings = Vec::new();
    if bw.at_floor {
        warnings.push(Warning::BandwidthAtSearchFloor);
    }
    Ok((bw, exceed as f64 / m as f64, warnings))
}

/// Calibrate an unadjusted k = 1 p-value through the curve.
///
/// Values below 0.005 round down to exactly zero. Within the curve's fitted
/// domain the monotone interpolant applies; above it the end-slope extension
/// is used (flagged), capped so the adjusted value never exceeds the
/// unadjusted one. The result is rounded to `digits` decimals.
pub fn hall_york_adjust(
    p: f64,
    curve: &CalibrationCurve,
    digits: u32,
) -> Result<(f64, Vec<Warning>)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Validation(format!(
            "p-value {p} outside [0, 1]"
        )));
    }
    if p < 0.005 {
        return Ok((0.0, Vec::new()));
    }
    let mut warnings = Vec::new();
    if p > curve.domain_max() {
        warnings.push(Warning::BeyondCalibrationDomain);
    }
    let raw = curve.eval(p).min(p).max(0.0);
    let scale = 10f64.powi(digits as i32);
    let rounded = (raw * scale).round() / scale;
    Ok((rounded, warnings))
}

/// Run the Silverman test end to end.
///
/// The calibration applies only under the unimodal null; requesting it with
/// k > 1 runs the unadjusted test and flags the skip. Passing no curve uses
/// the bundled simulated one.
pub fn silverman_test(
    sample: &Sample,
    opts: &SilvermanOptions,
    curve: Option<&CalibrationCurve>,
) -> Result<SilvermanTestResult> {
    assert!(opts.k >= 1, "k must be at least 1");
    let seed = opts.seed.unwrap_or_else(rand::random::<u64>);
    let rng = RngState::new(seed);
    let (bw, p_raw, mut warnings) = silverman_pvalue(sample, opts.k, opts.m, &rng)?;

    let mut adjusted = false;
    let p_value = if opts.adjust {
        if opts.k == 1 {
            let curve =
                curve.unwrap_or_else(|| crate::tables::default_calibration_curve());
            let (p_adj, aw) = hall_york_adjust(p_raw, curve, opts.digits)?;
            warnings.extend(aw);
            adjusted = true;
            p_adj
        } else {
            warnings.push(Warning::AdjustmentSkipped);
            p_raw
        }
    } else {
        p_raw
    };

    Ok(SilvermanTestResult {
        k: opts.k,
        h_crit: bw.h_crit,
        p_value,
        m: opts.m,
        adjusted,
        digits: opts.digits,
        seed,
        warnings,
    })
}

/// Sequential mode-count estimate with per-k p-values.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeEstimate {
    /// First k whose null was not rejected, or `k_max` when every test
    /// rejected.
    pub k: usize,
    /// True when every k up to `k_max` was rejected.
    pub inconclusive: bool,
    /// (k, h_crit, p) for each test performed, in order.
    pub trace: Vec<(usize, f64, f64)>,
}

/// Run unadjusted Silverman tests at k = 1, 2, ... and return the first k
/// whose p-value reaches `alpha`.
pub fn estimate_num_modes(
    sample: &Sample,
    alpha: f64,
    k_max: usize,
    m: usize,
    rng: &RngState,
) -> Result<ModeEstimate> {
    if !(0.0..1.0).contains(&alpha) || alpha == 0.0 {
        return Err(Error::Validation(format!(
            "alpha {alpha} outside (0, 1)"
        )));
    }
    if k_max < 1 {
        return Err(Error::Validation("k_max must be at least 1".into()));
    }
    let mut trace = Vec::new();
    for k in 1..=k_max {
        let (bw, p, _w) = silverman_pvalue(sample, k, m, &rng.substream(k as u64))?;
        trace.push((k, bw.h_crit, p));
        if p >= alpha {
            return Ok(ModeEstimate {
                k,
                inconclusive: false,
                trace,
            });
        }
    }
    Ok(ModeEstimate {
        k: k_max,
        inconclusive: true,
        trace,
    })
}
