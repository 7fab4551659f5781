//! Replication harness for the reference experiments: Gaussian-mixture
//! suites (300 observations, unit variance, equal component proportions)
//! and the iris petal-width data.
//!
//! Single published p-values came from a random stream this crate does not
//! reproduce, so each check is statistical: the experiment is regenerated
//! over many seeds and the rate of the expected outcome is compared with a
//! fixed tolerance.

use rayon::prelude::*;

use crate::dip::{dip_statistic, dip_test, DipOptions};
use crate::error::Result;
use crate::rng::RngState;
use crate::sample::Sample;
use crate::silverman::{hall_york_adjust, silverman_pvalue};
use crate::tables::{CalibrationCurve, DipQuantileTable};

/// One pass/fail line of a replication report.
#[derive(Debug, Clone)]
pub struct CriterionCheck {
    pub name: String,
    /// The published value being replicated, for context.
    pub paper: String,
    pub observed: String,
    pub requirement: String,
    pub pass: bool,
}

impl CriterionCheck {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} | paper: {} | observed: {} | requires: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.paper,
            self.observed,
            self.requirement
        )
    }
}

/// Per-seed raw results for one Gaussian-suite replication.
#[derive(Debug, Clone)]
pub struct GaussianRun {
    pub seed_index: usize,
    pub one_norm_dip_p: f64,
    pub one_norm_unadj_p: f64,
    pub one_norm_adj_p: f64,
    pub two_norms1_dip_p: f64,
    pub two_norms1_unadj_p: f64,
    pub two_norms1_adj_p: f64,
    pub two_norms2_dip_p: f64,
    pub two_norms2_unadj_p: f64,
    pub two_norms2_adj_p: f64,
    pub two_norms2_k2_p: f64,
    pub three_norms_dip_p: f64,
    pub three_norms_unadj_p: f64,
    pub three_norms_adj_p: f64,
    pub three_norms_k2_p: f64,
    pub three_norms_k3_p: f64,
}

#[derive(Debug, Clone)]
pub struct GaussianSuiteReport {
    pub runs: Vec<GaussianRun>,
    pub checks: Vec<CriterionCheck>,
}

#[derive(Debug, Clone)]
pub struct IrisRun {
    pub seed_index: usize,
    pub unadj_k1_p: f64,
    pub adj_k1_p: f64,
    pub k2_p: f64,
}

#[derive(Debug, Clone)]
pub struct IrisSuiteReport {
    pub dip_statistic: f64,
    pub dip_p: f64,
    pub runs: Vec<IrisRun>,
    pub checks: Vec<CriterionCheck>,
}

impl GaussianSuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl IrisSuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Draw a unit-variance Gaussian mixture with the given component means and
/// equal counts per component.
pub fn gaussian_mixture(means: &[f64], per_component: usize, rng: &mut RngState) -> Sample {
    let mut values = Vec::with_capacity(means.len() * per_component);
    for &mu in means {
        for _ in 0..per_component {
            values.push(mu + rng.draw_normal());
        }
    }
    Sample::from_values(values).expect("normal draws are finite")
}

fn fraction(count: usize, total: usize) -> f64 {
    count as f64 / total as f64
}

fn rate_check(
    name: &str,
    paper: &str,
    count: usize,
    total: usize,
    requirement: &str,
    pass: bool,
) -> CriterionCheck {
    CriterionCheck {
        name: name.into(),
        paper: paper.into(),
        observed: format!("{:.3} ({count}/{total})", fraction(count, total)),
        requirement: requirement.into(),
        pass,
    }
}

/// Run the Gaussian-mixture suite over `n_seeds` regenerated datasets and
/// score the outcome rates against the replication tolerances.
pub fn run_gaussian_suite(
    master_seed: u64,
    n_seeds: usize,
    m_boot: usize,
    table: &DipQuantileTable,
    curve: &CalibrationCurve,
) -> Result<GaussianSuiteReport> {
    let root = RngState::new(master_seed);
    let runs: Vec<GaussianRun> = (0..n_seeds)
        .into_par_iter()
        .map(|i| -> Result<GaussianRun> {
            let run_rng = root.substream(i as u64);

            let mut one_norm_rng = run_rng.substream(0);
            let one_norm = gaussian_mixture(&[0.0], 300, &mut one_norm_rng);
            let mut two1_rng = run_rng.substream(1);
            let two_norms1 = gaussian_mixture(&[0.0, 2.0], 150, &mut two1_rng);
            let mut two2_rng = run_rng.substream(2);
            let two_norms2 = gaussian_mixture(&[0.0, 4.0], 150, &mut two2_rng);
            let mut three_rng = run_rng.substream(3);
            let three_norms = gaussian_mixture(&[0.0, 3.5, 7.0], 100, &mut three_rng);

            let dip_p = |s: &Sample| -> Result<f64> {
                Ok(table.p_value(dip_statistic(s)?, s.n())?.0)
            };
            let silv = |s: &Sample, k: usize, tag: u64| -> Result<(f64, f64)> {
                let rng = run_rng.substream(10 + tag);
                let (_bw, p, _w) = silverman_pvalue(s, k, m_boot, &rng)?;
                let (adj, _w) = hall_york_adjust(p, curve, 6)?;
                Ok((p, adj))
            };

            let (one_unadj, one_adj) = silv(&one_norm, 1, 0)?;
            let (two1_unadj, two1_adj) = silv(&two_norms1, 1, 1)?;
            let (two2_unadj, two2_adj) = silv(&two_norms2, 1, 2)?;
            let (two2_k2, _) = silv(&two_norms2, 2, 3)?;
            let (three_unadj, three_adj) = silv(&three_norms, 1, 4)?;
            let (three_k2, _) = silv(&three_norms, 2, 5)?;
            let (three_k3, _) = silv(&three_norms, 3, 6)?;

            Ok(GaussianRun {
                seed_index: i,
                one_norm_dip_p: dip_p(&one_norm)?,
                one_norm_unadj_p: one_unadj,
                one_norm_adj_p: one_adj,
                two_norms1_dip_p: dip_p(&two_norms1)?,
                two_norms1_unadj_p: two1_unadj,
                two_norms1_adj_p: two1_adj,
                two_norms2_dip_p: dip_p(&two_norms2)?,
                two_norms2_unadj_p: two2_unadj,
                two_norms2_adj_p: two2_adj,
                two_norms2_k2_p: two2_k2,
                three_norms_dip_p: dip_p(&three_norms)?,
                three_norms_unadj_p: three_unadj,
                three_norms_adj_p: three_adj,
                three_norms_k2_p: three_k2,
                three_norms_k3_p: three_k3,
            })
        })
        .collect::<Result<_>>()?;

    let n = runs.len();
    let count = |f: &dyn Fn(&GaussianRun) -> bool| runs.iter().filter(|r| f(r)).count();

    let mut checks = Vec::new();

    // oneNorm: all three tests should essentially never reject.
    let c = count(&|r| r.one_norm_dip_p < 0.05);
    checks.push(rate_check(
        "oneNorm: dip rejects at 0.05",
        "p = 0.7542",
        c,
        n,
        "rate <= 0.10",
        fraction(c, n) <= 0.10,
    ));
    let c = count(&|r| r.one_norm_unadj_p < 0.05);
    checks.push(rate_check(
        "oneNorm: unadjusted Silverman rejects at 0.05",
        "p = 0.5105",
        c,
        n,
        "rate <= 0.10",
        fraction(c, n) <= 0.10,
    ));
    let c = count(&|r| r.one_norm_adj_p < 0.05);
    checks.push(rate_check(
        "oneNorm: adjusted Silverman rejects at 0.05",
        "p = 0.4351",
        c,
        n,
        "rate <= 0.10",
        fraction(c, n) <= 0.10,
    ));

    // twoNorms2: both tests reject decisively.
    let c = count(&|r| r.two_norms2_dip_p < 0.001);
    checks.push(rate_check(
        "twoNorms2: dip p < 0.001",
        "p = 2.032e-6",
        c,
        n,
        "rate >= 0.90",
        fraction(c, n) >= 0.90,
    ));
    let c = count(&|r| r.two_norms2_unadj_p <= 0.005);
    checks.push(rate_check(
        "twoNorms2: unadjusted Silverman p <= 0.005",
        "p = 0",
        c,
        n,
        "rate >= 0.90",
        fraction(c, n) >= 0.90,
    ));

    // twoNorms1: calibration sharpens the borderline case; dip stays quiet.
    let c = count(&|r| r.two_norms1_adj_p < r.two_norms1_unadj_p);
    checks.push(rate_check(
        "twoNorms1: adjusted p < unadjusted p",
        "0.0546 < 0.1361",
        c,
        n,
        "rate >= 0.95",
        fraction(c, n) >= 0.95,
    ));
    let c = count(&|r| r.two_norms1_dip_p >= 0.05);
    checks.push(rate_check(
        "twoNorms1: dip fails to reject at 0.05",
        "p = 0.3146",
        c,
        n,
        "rate >= 0.60",
        fraction(c, n) >= 0.60,
    ));

    // threeNorms: calibration sharpens; sequential tests find three modes.
    let c = count(&|r| r.three_norms_adj_p < r.three_norms_unadj_p);
    checks.push(rate_check(
        "threeNorms: adjusted p < unadjusted p",
        "0.0118 < 0.0591",
        c,
        n,
        "rate >= 0.95",
        fraction(c, n) >= 0.95,
    ));
    let c = count(&|r| r.three_norms_k2_p < 0.05 && r.three_norms_k3_p >= 0.05);
    checks.push(rate_check(
        "threeNorms: k=2 rejects and k=3 fails to reject at 0.05",
        "0.0010 / 0.6607",
        c,
        n,
        "rate >= 0.80",
        fraction(c, n) >= 0.80,
    ));

    Ok(GaussianSuiteReport { runs, checks })
}

/// Run the iris petal-width suite: a deterministic dip check on the fixed
/// data plus seeded bandwidth-test replications.
pub fn run_iris_suite(
    master_seed: u64,
    n_seeds: usize,
    m_boot: usize,
    table: &DipQuantileTable,
    curve: &CalibrationCurve,
) -> Result<IrisSuiteReport> {
    let iris = crate::iris_petal_width();
    let dip_res = dip_test(&iris, &DipOptions::default(), table)?;

    let root = RngState::new(master_seed);
    let runs: Vec<IrisRun> = (0..n_seeds)
        .into_par_iter()
        .map(|i| -> Result<IrisRun> {
            let run_rng = root.substream(i as u64);
            let (_bw, p1, _w) = silverman_pvalue(&iris, 1, m_boot, &run_rng.substream(0))?;
            let (adj, _w) = hall_york_adjust(p1, curve, 6)?;
            let (_bw, p2, _w) = silverman_pvalue(&iris, 2, m_boot, &run_rng.substream(1))?;
            Ok(IrisRun {
                seed_index: i,
                unadj_k1_p: p1,
                adj_k1_p: adj,
                k2_p: p2,
            })
        })
        .collect::<Result<_>>()?;

    let n = runs.len();
    let mut checks = Vec::new();

    checks.push(CriterionCheck {
        name: "irisPW: dip p at the table floor".into(),
        paper: "p < 2.2e-16 (reference floor)".into(),
        observed: format!("p = {:.2e}", dip_res.p_value),
        requirement: "p <= 1e-4".into(),
        pass: dip_res.p_value <= 1e-4,
    });

    let mean_p1 = runs.iter().map(|r| r.unadj_k1_p).sum::<f64>() / n as f64;
    checks.push(CriterionCheck {
        name: "irisPW: unadjusted Silverman k=1 mean p".into(),
        paper: "p = 0.0030".into(),
        observed: format!("mean p = {mean_p1:.4} over {n} seeds"),
        requirement: "mean in [0, 0.02]".into(),
        pass: (0.0..=0.02).contains(&mean_p1),
    });

    // The floor rule maps every sub-0.005 bootstrap p to an exact zero; the
    // typical replication reproduces the published 0.
    let mut adj_sorted: Vec<f64> = runs.iter().map(|r| r.adj_k1_p).collect();
    adj_sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let median_adj = adj_sorted[n / 2];
    let floored = runs
        .iter()
        .filter(|r| r.unadj_k1_p < 0.005)
        .all(|r| r.adj_k1_p == 0.0);
    checks.push(CriterionCheck {
        name: "irisPW: adjusted k=1 p = 0 via the 0.005 floor rule".into(),
        paper: "p = 0".into(),
        observed: format!(
            "median adjusted p = {median_adj}; floor rule exact on all qualifying runs: {floored}"
        ),
        requirement: "median = 0 and every p < 0.005 maps to exactly 0".into(),
        pass: median_adj == 0.0 && floored,
    });

    let mean_p2 = runs.iter().map(|r| r.k2_p).sum::<f64>() / n as f64;
    checks.push(CriterionCheck {
        name: "irisPW: Silverman k=2 mean p".into(),
        paper: "p = 0.4775".into(),
        observed: format!("mean p = {mean_p2:.4} over {n} seeds"),
        requirement: "mean in [0.33, 0.63]".into(),
        pass: (0.33..=0.63).contains(&mean_p2),
    });

    Ok(IrisSuiteReport {
        dip_statistic: dip_res.statistic,
        dip_p: dip_res.p_value,
        runs,
        checks,
    })
}
