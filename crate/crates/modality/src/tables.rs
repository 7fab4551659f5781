//! Simulated reference tables: dip quantiles under uniform nulls, and the
//! calibration curve that repairs the conservatism of the unadjusted
//! bandwidth test at k = 1.
//!
//! Both artifacts are deterministic functions of their seed and grid, and
//! both persist to delimited text with a version stamp and a checksum so a
//! result can always be traced to the exact table that produced it.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::dip::dip_sorted;
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::silverman;
use crate::warning::Warning;

/// Monte-Carlo quantiles of the dip statistic under uniform nulls, indexed
/// by sample size and probability.
#[derive(Debug, Clone, PartialEq)]
pub struct DipQuantileTable {
    sizes: Vec<usize>,
    probs: Vec<f64>,
    /// quantiles[i][j] = prob-j quantile of the dip for sizes[i].
    quantiles: Vec<Vec<f64>>,
    reps_used: usize,
    seed_used: u64,
}

/// Sample sizes used for the bundled default table. They bracket the desk
/// experiments (n = 150, 300) with headroom on both ends.
pub const DEFAULT_TABLE_SIZES: &[usize] = &[
    4, 5, 6, 7, 8, 9, 10, 15, 20, 30, 50, 100, 200, 500, 1000, 2000,
];

/// Probability grid for the bundled default table. The 0.9999 tail knot puts
/// the table floor at 1e-4.
pub const DEFAULT_TABLE_PROBS: &[f64] = &[
    0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.995, 0.999, 0.9999,
];

impl DipQuantileTable {
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn quantiles(&self) -> &[Vec<f64>] {
        &self.quantiles
    }

    pub fn reps_used(&self) -> usize {
        self.reps_used
    }

    pub fn seed_used(&self) -> u64 {
        self.seed_used
    }

    /// Smallest p-value the table can report: 1 - max tabulated probability.
    pub fn floor(&self) -> f64 {
        1.0 - self.probs[self.probs.len() - 1]
    }

    fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.probs.is_empty() {
            return Err(Error::CorruptTable("empty size or probability grid".into()));
        }
        if !self.sizes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::CorruptTable("sizes not strictly increasing".into()));
        }
        if !self
            .probs
            .windows(2)
            .all(|w| w[0] < w[1] && w[0] > 0.0 && w[1] < 1.0)
            || self.probs[0] <= 0.0
            || self.probs[self.probs.len() - 1] >= 1.0
        {
            return Err(Error::CorruptTable(
                "probabilities must be strictly increasing inside (0, 1)".into(),
            ));
        }
        if self.quantiles.len() != self.sizes.len() {
            return Err(Error::CorruptTable("row count does not match sizes".into()));
        }
        for (i, row) in self.quantiles.iter().enumerate() {
            if row.len() != self.probs.len() {
                return Err(Error::CorruptTable(format!(
                    "row for n = {} has wrong length",
                    self.sizes[i]
                )));
            }
            if !row.windows(2).all(|w| w[0] <= w[1]) {
                return Err(Error::CorruptTable(format!(
                    "row for n = {} is not nondecreasing",
                    self.sizes[i]
                )));
            }
            let lb = 1.0 / (2.0 * self.sizes[i] as f64);
            if row.iter().any(|q| *q < lb - 1e-12) {
                return Err(Error::CorruptTable(format!(
                    "row for n = {} dips below the 1/(2n) bound",
                    self.sizes[i]
                )));
            }
        }
        Ok(())
    }

    /// Interpolated p-value for dip `d` at sample size `n`.
    ///
    /// Quantile curves are interpolated between the two bracketing table
    /// sizes on the sqrt(n)-scaled axis, then the curve is inverted at
    /// sqrt(n) * d. The result is clamped to [floor, 1].
    pub fn p_value(&self, d: f64, n: usize) -> Result<(f64, Vec<Warning>)> {
        let min_size = self.sizes[0];
        if n < min_size {
            return Err(Error::UnsupportedSize { n, min: min_size });
        }
        let mut warnings = Vec::new();
        let max_size = *self.sizes.last().unwrap();
        let k = self.probs.len();

        let mut curve = vec![0.0f64; k];
        if n >= max_size {
            if n > max_size {
                warnings.push(Warning::SampleAboveTableSizes);
            }
            let row = &self.quantiles[self.sizes.len() - 1];
            let scale = (max_size as f64).sqrt();
            for j in 0..k {
                curve[j] = scale * row[j];
            }
        } else {
            let hi = self.sizes.partition_point(|s| *s < n);
            // n >= min_size and n < max_size, so 0 < hi < len when n is not a
            // grid point, and sizes[hi] == n when it is.
            if self.sizes[hi] == n {
                let scale = (n as f64).sqrt();
                for j in 0..k {
                    curve[j] = scale * self.quantiles[hi][j];
                }
            } else {
                let (n0, n1) = (self.sizes[hi - 1], self.sizes[hi]);
                let w = (n - n0) as f64 / (n1 - n0) as f64;
                let (s0, s1) = ((n0 as f64).sqrt(), (n1 as f64).sqrt());
                for j in 0..k {
                    curve[j] = (1.0 - w) * s0 * self.quantiles[hi - 1][j]
                        + w * s1 * self.quantiles[hi][j];
                }
            }
        }

        let s = (n as f64).sqrt() * d;
        let floor = self.floor();
        let p = if s < curve[0] {
            warnings.push(Warning::PValueClampedToOne);
            1.0
        } else if s > curve[k - 1] {
            warnings.push(Warning::PValueAtTableFloor);
            floor
        } else {
            let j = curve.partition_point(|c| *c < s);
            let prob = if j == 0 {
                self.probs[0]
            } else if curve[j] == curve[j - 1] {
                self.probs[j]
            } else {
                let frac = (s - curve[j - 1]) / (curve[j] - curve[j - 1]);
                self.probs[j - 1] + frac * (self.probs[j] - self.probs[j - 1])
            };
            (1.0 - prob).clamp(floor, 1.0)
        };
        Ok((p, warnings))
    }

    fn body(&self) -> String {
        let mut out = String::new();
        out.push_str("modality-dip-table v1\n");
        let _ = writeln!(out, "seed {}", self.seed_used);
        let _ = writeln!(out, "reps {}", self.reps_used);
        out.push_str("sizes");
        for s in &self.sizes {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
        out.push_str("probs");
        for p in &self.probs {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
        for (i, row) in self.quantiles.iter().enumerate() {
            let _ = write!(out, "row {}", self.sizes[i]);
            for q in row {
                let _ = write!(out, " {q}");
            }
            out.push('\n');
        }
        out
    }

    /// Serialize to the versioned, checksummed text format.
    pub fn to_text(&self) -> String {
        let body = self.body();
        let sum = sha256_hex(body.as_bytes());
        format!("{body}checksum {sum}\n")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Parse the text format, verifying version and checksum.
    pub fn from_text(text: &str) -> Result<Self> {
        let body = verify_checksum(text, "modality-dip-table v1")?;
        let mut seed_used = 0u64;
        let mut reps_used = 0usize;
        let mut sizes = Vec::new();
        let mut probs = Vec::new();
        let mut quantiles = Vec::new();
        for line in body.lines().skip(1) {
            let mut parts = line.split_ascii_whitespace();
            match parts.next() {
                Some("seed") => {
                    seed_used = parse_field(parts.next(), "seed")?;
                }
                Some("reps") => {
                    reps_used = parse_field(parts.next(), "reps")?;
                }
                Some("sizes") => {
                    sizes = parse_list(parts, "sizes")?;
                }
                Some("probs") => {
                    probs = parse_list(parts, "probs")?;
                }
                Some("row") => {
                    let _size: usize = parse_field(parts.next(), "row size")?;
                    quantiles.push(parse_list(parts, "row")?);
                }
                other => {
                    return Err(Error::CorruptTable(format!(
                        "unexpected line starting with {other:?}"
                    )))
                }
            }
        }
        let table = DipQuantileTable {
            sizes,
            probs,
            quantiles,
            reps_used,
            seed_used,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }
}

/// Simulate the dip quantile table: for each size, `reps` uniform samples
/// are drawn, their dips computed, and empirical quantiles recorded.
/// Replications are indexed by (size, replication) substreams, so the table
/// is a deterministic function of the seed and grid.
pub fn generate_dip_table(
    sizes: &[usize],
    probs: &[f64],
    reps: usize,
    rng: &RngState,
) -> Result<DipQuantileTable> {
    if sizes.is_empty() || sizes.iter().any(|s| *s < 4) {
        return Err(Error::Validation(
            "table sizes must all be at least 4".into(),
        ));
    }
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Validation(
            "table sizes must be strictly increasing".into(),
        ));
    }
    if probs.is_empty()
        || probs.iter().any(|p| *p <= 0.0 || *p >= 1.0)
        || !probs.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::Validation(
            "probabilities must be strictly increasing inside (0, 1)".into(),
        ));
    }
    if reps < 1 {
        return Err(Error::Validation("reps must be at least 1".into()));
    }

    let quantiles: Vec<Vec<f64>> = sizes
        .iter()
        .enumerate()
        .map(|(si, &n)| {
            let size_rng = rng.substream(si as u64);
            let mut dips: Vec<f64> = (0..reps as u64)
                .into_par_iter()
                .map(|rep| {
                    let mut sub = size_rng.substream(rep);
                    let mut draw: Vec<f64> = (0..n).map(|_| sub.draw_uniform()).collect();
                    draw.sort_unstable_by(|a, b| a.total_cmp(b));
                    dip_sorted(&draw)
                })
                .collect();
            dips.sort_unstable_by(|a, b| a.total_cmp(b));
            probs.iter().map(|p| quantile_sorted(&dips, *p)).collect()
        })
        .collect();

    Ok(DipQuantileTable {
        sizes: sizes.to_vec(),
        probs: probs.to_vec(),
        quantiles,
        reps_used: reps,
        seed_used: rng.master_seed(),
    })
}

/// Linear-interpolation quantile of an ascending slice (the convention used
/// by most statistical environments).
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

/// Where a calibration curve came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveProvenance {
    /// Derived by simulation in this crate.
    Simulated,
    /// Supplied by the user, e.g. transcribed published constants.
    UserSupplied,
}

/// Monotone map from the unadjusted bandwidth-test p-value to a calibrated
/// level. Knots are (threshold, level) pairs anchored at the origin;
/// evaluation uses a shape-preserving monotone cubic interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationCurve {
    /// Unadjusted p-value thresholds (the curve's input axis), anchored at 0.
    nominal_levels: Vec<f64>,
    /// Calibrated levels achieved at those thresholds, anchored at 0.
    calibrated_levels: Vec<f64>,
    /// Interpolant slopes at the knots.
    slopes: Vec<f64>,
    provenance: CurveProvenance,
    reps_used: usize,
    seed_used: u64,
}

impl CalibrationCurve {
    /// Build a curve from knots; the anchor at the origin must be included.
    pub fn from_knots(
        nominal: Vec<f64>,
        calibrated: Vec<f64>,
        provenance: CurveProvenance,
        reps_used: usize,
        seed_used: u64,
    ) -> Result<Self> {
        if nominal.len() != calibrated.len() {
            return Err(Error::CalibrationCurve(
                "knot sequences differ in length".into(),
            ));
        }
        if nominal.len() < 4 {
            return Err(Error::CalibrationCurve(format!(
                "need at least 4 knots, got {}",
                nominal.len()
            )));
        }
        if nominal[0] != 0.0 || calibrated[0] != 0.0 {
            return Err(Error::CalibrationCurve(
                "curve must be anchored at the origin".into(),
            ));
        }
        if !nominal.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::CalibrationCurve(
                "nominal levels must be strictly increasing".into(),
            ));
        }
        if !calibrated.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::CalibrationCurve(
                "calibrated levels must be strictly increasing".into(),
            ));
        }
        let slopes = pchip_slopes(&nominal, &calibrated);
        Ok(CalibrationCurve {
            nominal_levels: nominal,
            calibrated_levels: calibrated,
            slopes,
            provenance,
            reps_used,
            seed_used,
        })
    }

    pub fn nominal_levels(&self) -> &[f64] {
        &self.nominal_levels
    }

    pub fn calibrated_levels(&self) -> &[f64] {
        &self.calibrated_levels
    }

    pub fn provenance(&self) -> &CurveProvenance {
        &self.provenance
    }

    pub fn seed_used(&self) -> u64 {
        self.seed_used
    }

    pub fn reps_used(&self) -> usize {
        self.reps_used
    }

    /// Upper end of the fitted domain on the unadjusted-p axis.
    pub fn domain_max(&self) -> f64 {
        *self.nominal_levels.last().unwrap()
    }

    /// Evaluate the monotone interpolant. Inputs above the fitted domain are
    /// continued with the end knot's slope (still monotone, never above the
    /// identity once capped by the caller).
    pub fn eval(&self, p: f64) -> f64 {
        let xs = &self.nominal_levels;
        let ys = &self.calibrated_levels;
        let m = xs.len();
        if p <= 0.0 {
            return 0.0;
        }
        if p >= xs[m - 1] {
            return ys[m - 1] + self.slopes[m - 1] * (p - xs[m - 1]);
        }
        let j = xs.partition_point(|x| *x <= p) - 1;
        let h = xs[j + 1] - xs[j];
        let t = (p - xs[j]) / h;
        let (y0, y1) = (ys[j], ys[j + 1]);
        let (d0, d1) = (self.slopes[j], self.slopes[j + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    }

    fn body(&self) -> String {
        let mut out = String::new();
        out.push_str("modality-calibration-curve v1\n");
        let prov = match self.provenance {
            CurveProvenance::Simulated => "simulated",
            CurveProvenance::UserSupplied => "user_supplied",
        };
        let _ = writeln!(out, "provenance {prov}");
        let _ = writeln!(out, "seed {}", self.seed_used);
        let _ = writeln!(out, "reps {}", self.reps_used);
        for (x, y) in self.nominal_levels.iter().zip(&self.calibrated_levels) {
            let _ = writeln!(out, "knot {x} {y}");
        }
        out
    }

    pub fn to_text(&self) -> String {
        let body = self.body();
        let sum = sha256_hex(body.as_bytes());
        format!("{body}checksum {sum}\n")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let body = verify_checksum(text, "modality-calibration-curve v1")?;
        let mut provenance = CurveProvenance::UserSupplied;
        let mut seed_used = 0u64;
        let mut reps_used = 0usize;
        let mut nominal = Vec::new();
        let mut calibrated = Vec::new();
        for line in body.lines().skip(1) {
            let mut parts = line.split_ascii_whitespace();
            match parts.next() {
                Some("provenance") => {
                    provenance = match parts.next() {
                        Some("simulated") => CurveProvenance::Simulated,
                        Some("user_supplied") => CurveProvenance::UserSupplied,
                        other => {
                            return Err(Error::CorruptTable(format!(
                                "unknown provenance {other:?}"
                            )))
                        }
                    };
                }
                Some("seed") => seed_used = parse_field(parts.next(), "seed")?,
                Some("reps") => reps_used = parse_field(parts.next(), "reps")?,
                Some("knot") => {
                    nominal.push(parse_field(parts.next(), "knot x")?);
                    calibrated.push(parse_field(parts.next(), "knot y")?);
                }
                other => {
                    return Err(Error::CorruptTable(format!(
                        "unexpected line starting with {other:?}"
                    )))
                }
            }
        }
        Self::from_knots(nominal, calibrated, provenance, reps_used, seed_used)
            .map_err(|e| Error::CorruptTable(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }
}

/// Fritsch-Carlson slopes for a monotone piecewise-cubic interpolant.
fn pchip_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let m = xs.len();
    let mut h = vec![0.0; m - 1];
    let mut delta = vec![0.0; m - 1];
    for i in 0..m - 1 {
        h[i] = xs[i + 1] - xs[i];
        delta[i] = (ys[i + 1] - ys[i]) / h[i];
    }
    let mut d = vec![0.0; m];
    for i in 1..m - 1 {
        if delta[i - 1] * delta[i] <= 0.0 {
            d[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    d[0] = edge_slope(h[0], h.get(1).copied(), delta[0], delta.get(1).copied());
    d[m - 1] = edge_slope(
        h[m - 2],
        if m >= 3 { Some(h[m - 3]) } else { None },
        delta[m - 2],
        if m >= 3 { Some(delta[m - 3]) } else { None },
    );
    d
}

/// One-sided three-point end slope, clipped for shape preservation.
fn edge_slope(h0: f64, h1: Option<f64>, d0: f64, d1: Option<f64>) -> f64 {
    let (h1, d1) = match (h1, d1) {
        (Some(h1), Some(d1)) => (h1, d1),
        _ => return d0,
    };
    let mut s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if s * d0 <= 0.0 {
        s = 0.0;
    } else if d0 * d1 < 0.0 && s.abs() > 3.0 * d0.abs() {
        s = 3.0 * d0;
    }
    s
}

/// Derive a calibration curve by simulation: unadjusted k = 1 p-values on
/// `outer_reps` standard-normal null samples of size `n`, thresholded so
/// that rejecting when p <= t(alpha) has empirical level alpha.
pub fn derive_calibration_curve(
    alpha_grid: &[f64],
    n: usize,
    m_boot: usize,
    outer_reps: usize,
    rng: &RngState,
) -> Result<CalibrationCurve> {
    if alpha_grid.is_empty()
        || alpha_grid.iter().any(|a| *a <= 0.0 || *a > 0.1)
        || !alpha_grid.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::Validation(
            "alpha grid must be strictly increasing inside (0, 0.1]".into(),
        ));
    }
    if outer_reps < 500 {
        return Err(Error::Validation(
            "curve derivation needs at least 500 outer replications".into(),
        ));
    }

    let mut pvals: Vec<f64> = (0..outer_reps as u64)
        .into_par_iter()
        .map(|i| {
            let rep_rng = rng.substream(i);
            let mut data_rng = rep_rng.substream(0);
            let values: Vec<f64> = (0..n).map(|_| data_rng.draw_normal()).collect();
            let sample = crate::sample::Sample::from_values(values)
                .expect("normal draws are finite and nonempty");
            let boot_rng = rep_rng.substream(1);
            let (_h, p, _w) = silverman::silverman_pvalue(&sample, 1, m_boot, &boot_rng)
                .expect("simulated normal samples have positive spread");
            p
        })
        .collect();
    pvals.sort_unstable_by(|a, b| a.total_cmp(b));

    let mut nominal = vec![0.0];
    let mut calibrated = vec![0.0];
    for &alpha in alpha_grid {
        let rank = ((alpha * outer_reps as f64).ceil() as usize).clamp(1, outer_reps);
        let t = pvals[rank - 1];
        if t <= *nominal.last().unwrap() {
            // Atom in the null p distribution: keep the larger level for the
            // shared threshold.
            if t == *nominal.last().unwrap() && nominal.len() > 1 {
                *calibrated.last_mut().unwrap() = alpha;
            }
            continue;
        }
        nominal.push(t);
        calibrated.push(alpha);
    }

    CalibrationCurve::from_knots(
        nominal,
        calibrated,
        CurveProvenance::Simulated,
        outer_reps,
        rng.master_seed(),
    )
    .map_err(|e| {
        Error::CalibrationCurve(format!(
            "degenerate grid after deduplication ({e}); increase outer_reps or widen alphas"
        ))
    })
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Split off and verify the trailing checksum line; returns the body.
fn verify_checksum<'a>(text: &'a str, expected_header: &str) -> Result<&'a str> {
    let trimmed = text.trim_end_matches('\n');
    let (body_end, checksum_line) = match trimmed.rfind('\n') {
        Some(pos) => (pos + 1, &trimmed[pos + 1..]),
        None => {
            return Err(Error::CorruptTable(
                "file too short to contain a checksum".into(),
            ))
        }
    };
    let body = &text[..body_end];
    let sum = checksum_line
        .strip_prefix("checksum ")
        .ok_or_else(|| Error::CorruptTable("missing checksum line".into()))?;
    if sha256_hex(body.as_bytes()) != sum.trim() {
        return Err(Error::CorruptTable(
            "checksum mismatch; file is truncated or edited".into(),
        ));
    }
    match body.lines().next() {
        Some(header) if header == expected_header => Ok(body),
        Some(header) => Err(Error::CorruptTable(format!(
            "unsupported format or version: {header:?}"
        ))),
        None => Err(Error::CorruptTable("empty file".into())),
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, what: &str) -> Result<T> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::CorruptTable(format!("bad or missing {what} field")))
}

fn parse_list<'a, T: std::str::FromStr>(
    parts: impl Iterator<Item = &'a str>,
    what: &str,
) -> Result<Vec<T>> {
    parts
        .map(|f| {
            f.parse()
                .map_err(|_| Error::CorruptTable(format!("bad value in {what} list")))
        })
        .collect()
}

static DEFAULT_TABLE: std::sync::OnceLock<DipQuantileTable> = std::sync::OnceLock::new();
static DEFAULT_CURVE: std::sync::OnceLock<CalibrationCurve> = std::sync::OnceLock::new();

/// The bundled default dip quantile table (uniform nulls, seeded generation;
/// regenerable bit-for-bit with the gen-table command).
pub fn default_dip_table() -> &'static DipQuantileTable {
    DEFAULT_TABLE.get_or_init(|| {
        DipQuantileTable::from_text(include_str!("../data/dip_table_default.tab"))
            .expect("bundled dip table is valid")
    })
}

/// The bundled default calibration curve (simulated at n = 300, M = 999;
/// regenerable with the calibrate command).
pub fn default_calibration_curve() -> &'static CalibrationCurve {
    DEFAULT_CURVE.get_or_init(|| {
        CalibrationCurve::from_text(include_str!("../data/hall_york_default.curve"))
            .expect("bundled calibration curve is valid")
    })
}
