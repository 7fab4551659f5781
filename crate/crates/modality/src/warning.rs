use std::fmt;

/// Non-fatal conditions surfaced alongside test results. Reports must echo
/// these whenever a clamp, floor, or skipped adjustment changed what the
/// caller might otherwise assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// Statistic beyond the highest tabulated probability; p reported at the
    /// table floor.
    PValueAtTableFloor,
    /// Statistic below the smallest tabulated quantile; p clamped to 1.
    PValueClampedToOne,
    /// Sample size above the table grid; the largest size's row was used on
    /// the sqrt(n)-scale.
    SampleAboveTableSizes,
    /// Calibration requested with k != 1; the unadjusted test was run.
    AdjustmentSkipped,
    /// Unadjusted p-value above the calibration curve's fitted domain; the
    /// adjusted value comes from the curve's end-slope extension.
    BeyondCalibrationDomain,
    /// Bandwidth search hit its lower bracket without exceeding k modes; the
    /// reported h_crit is a search floor, not a crossing point.
    BandwidthAtSearchFloor,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Warning::PValueAtTableFloor => {
                "p-value beyond tabulated range; reported at the table floor"
            }
            Warning::PValueClampedToOne => {
                "statistic below the smallest tabulated quantile; p-value clamped to 1"
            }
            Warning::SampleAboveTableSizes => {
                "sample size above the table grid; asymptotic row used"
            }
            Warning::AdjustmentSkipped => "adjustment only defined for k = 1; unadjusted test run",
            Warning::BeyondCalibrationDomain => {
                "unadjusted p-value above the calibration domain; end-slope extension used"
            }
            Warning::BandwidthAtSearchFloor => {
                "bandwidth search reached its lower bracket; data shows at most k modes at every \
                 tested bandwidth"
            }
        };
        f.write_str(msg)
    }
}
