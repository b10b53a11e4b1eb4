use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Where a curve sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperTable,
    PaperText,
    DerivedFixture,
    Computed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PaperTable => "paper-table",
            Provenance::PaperText => "paper-text",
            Provenance::DerivedFixture => "derived-fixture",
            Provenance::Computed => "computed",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper-table" => Ok(Provenance::PaperTable),
            "paper-text" => Ok(Provenance::PaperText),
            "derived-fixture" => Ok(Provenance::DerivedFixture),
            "computed" => Ok(Provenance::Computed),
            _ => Err(format!("unknown source tag `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    /// Side length in pixels of the square `r x r` image.
    pub resolution: u32,
    pub accuracy: f64,
    pub source: Provenance,
}

impl CurveSample {
    pub fn new(resolution: u32, accuracy: f64, source: Provenance) -> Self {
        Self {
            resolution,
            accuracy,
            source,
        }
    }
}

/// How a curve is evaluated between its sampled resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpolation {
    /// Piecewise linear in `log2(r)`.
    #[default]
    LinearLogResolution,
    /// Piecewise linear in `r`.
    LinearResolution,
    /// Value of the nearest sample at or below `r`.
    StepPrevious,
}

impl Interpolation {
    pub fn as_str(self) -> &'static str {
        match self {
            Interpolation::LinearLogResolution => "linear-log-resolution",
            Interpolation::LinearResolution => "linear-resolution",
            Interpolation::StepPrevious => "step-previous",
        }
    }
}

impl fmt::Display for Interpolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Interpolation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear-log-resolution" | "log-linear" | "log" => Ok(Interpolation::LinearLogResolution),
            "linear-resolution" | "linear" => Ok(Interpolation::LinearResolution),
            "step-previous" | "step" => Ok(Interpolation::StepPrevious),
            _ => Err(format!(
                "unknown interpolation `{s}` (expected linear-log-resolution, linear-resolution or step-previous)"
            )),
        }
    }
}

/// Sampled recognizer accuracy as a function of resolution.
///
/// Samples are kept sorted by strictly increasing resolution and every
/// accuracy lies in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct AccuracyCurve {
    label: String,
    samples: Vec<CurveSample>,
}

#[derive(Serialize, Deserialize)]
struct RawCurve {
    label: String,
    samples: Vec<CurveSample>,
}

impl TryFrom<RawCurve> for AccuracyCurve {
    type Error = ModelError;

    fn try_from(raw: RawCurve) -> Result<Self, Self::Error> {
        AccuracyCurve::new(raw.label, raw.samples)
    }
}

impl From<AccuracyCurve> for RawCurve {
    fn from(c: AccuracyCurve) -> Self {
        RawCurve {
            label: c.label,
            samples: c.samples,
        }
    }
}

impl AccuracyCurve {
    /// Validates samples that are already in increasing resolution order.
    pub fn new(label: impl Into<String>, samples: Vec<CurveSample>) -> Result<Self, ModelError> {
        let label = label.into();
        if samples.is_empty() {
            return Err(ModelError::EmptyCurve(label));
        }
        for s in &samples {
            if s.resolution == 0 {
                return Err(ModelError::InvalidCurve {
                    label,
                    reason: "resolution must be positive".into(),
                });
            }
            if !(0.0..=1.0).contains(&s.accuracy) {
                return Err(ModelError::InvalidCurve {
                    label,
                    reason: format!("accuracy {} at r={} outside [0, 1]", s.accuracy, s.resolution),
                });
            }
        }
        for w in samples.windows(2) {
            if w[0].resolution == w[1].resolution {
                return Err(ModelError::DuplicateResolution {
                    label,
                    resolution: w[0].resolution,
                });
            }
            if w[0].resolution > w[1].resolution {
                return Err(ModelError::InvalidCurve {
                    label,
                    reason: "resolutions must be strictly increasing".into(),
                });
            }
        }
        Ok(Self { label, samples })
    }

    /// Sorts samples by resolution before validating.
    pub fn from_unsorted(
        label: impl Into<String>,
        mut samples: Vec<CurveSample>,
    ) -> Result<Self, ModelError> {
        samples.sort_by_key(|s| s.resolution);
        Self::new(label, samples)
    }

    /// A curve with the same accuracy at every resolution in `resolutions`.
    pub fn constant(
        label: impl Into<String>,
        resolutions: &[u32],
        accuracy: f64,
        source: Provenance,
    ) -> Result<Self, ModelError> {
        let samples = resolutions
            .iter()
            .map(|&r| CurveSample::new(r, accuracy, source))
            .collect();
        Self::from_unsorted(label, samples)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn resolutions(&self) -> impl Iterator<Item = u32> + '_ {
        self.samples.iter().map(|s| s.resolution)
    }

    /// Closed span `[first, last]` of sampled resolutions.
    pub fn domain(&self) -> (u32, u32) {
        (
            self.samples[0].resolution,
            self.samples[self.samples.len() - 1].resolution,
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn interpolate(&self, r: f64, mode: Interpolation) -> Result<f64, ModelError> {
        interpolate(self, r, mode)
    }
}

/// Evaluates `curve` at resolution `r`.
///
/// Exact at sample points. Resolutions outside the sampled span are an
/// error; curves are never extrapolated.
pub fn interpolate(curve: &AccuracyCurve, r: f64, mode: Interpolation) -> Result<f64, ModelError> {
    let samples = curve.samples();
    let Some(first) = samples.first() else {
        return Err(ModelError::EmptyCurve(curve.label().to_string()));
    };
    let last = samples[samples.len() - 1];
    let (lo, hi) = (f64::from(first.resolution), f64::from(last.resolution));
    if !r.is_finite() || r < lo || r > hi {
        return Err(ModelError::OutOfDomain {
            label: curve.label().to_string(),
            r,
            lo: first.resolution,
            hi: last.resolution,
        });
    }

    // index of the first sample with resolution >= r
    let idx = samples.partition_point(|s| f64::from(s.resolution) < r);
    let upper = samples[idx];
    if f64::from(upper.resolution) == r {
        return Ok(upper.accuracy);
    }
    let lower = samples[idx - 1];
    let value = match mode {
        Interpolation::StepPrevious => lower.accuracy,
        Interpolation::LinearResolution => {
            let (x0, x1) = (f64::from(lower.resolution), f64::from(upper.resolution));
            lerp(lower.accuracy, upper.accuracy, (r - x0) / (x1 - x0))
        }
        Interpolation::LinearLogResolution => {
            let (x0, x1) = (
                f64::from(lower.resolution).log2(),
                f64::from(upper.resolution).log2(),
            );
            lerp(lower.accuracy, upper.accuracy, (r.log2() - x0) / (x1 - x0))
        }
    };
    Ok(value.clamp(0.0, 1.0))
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + t * (b - a)
}
