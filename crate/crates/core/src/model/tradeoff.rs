use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::curve::{interpolate, AccuracyCurve, Interpolation};
use super::weights::ImportanceWeights;
use super::ModelError;

/// Default tolerance, in objective units, for [`optimal_range`].
pub const DEFAULT_EPSILON: f64 = 0.02;

/// Which kind of recognizer produced the privacy curves of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecognizerKind {
    Human,
    #[default]
    Machine,
    Mixed,
}

/// Everything needed to evaluate `S(r) = L_T(r) - λ Σ ω_i L_Pi(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffModel {
    task_curve: AccuracyCurve,
    privacy_curves: BTreeMap<String, AccuracyCurve>,
    weights: ImportanceWeights,
    lambda: f64,
    interpolation: Interpolation,
    privacy_recognizer: RecognizerKind,
    domain: (u32, u32),
}

impl TradeoffModel {
    pub fn new(
        task_curve: AccuracyCurve,
        privacy_curves: BTreeMap<String, AccuracyCurve>,
        weights: ImportanceWeights,
        lambda: f64,
        interpolation: Interpolation,
    ) -> Result<Self, ModelError> {
        check_lambda(lambda)?;
        let curve_ids: Vec<&str> = privacy_curves.keys().map(String::as_str).collect();
        let weight_ids: Vec<&str> = weights.ids().collect();
        if curve_ids != weight_ids {
            return Err(ModelError::ModelInconsistent(format!(
                "weight ids {weight_ids:?} do not match privacy curve ids {curve_ids:?}"
            )));
        }
        let (mut lo, mut hi) = task_curve.domain();
        for c in privacy_curves.values() {
            let (clo, chi) = c.domain();
            lo = lo.max(clo);
            hi = hi.min(chi);
        }
        if lo > hi {
            return Err(ModelError::ModelInconsistent(
                "curves share no common resolution span".into(),
            ));
        }
        Ok(Self {
            task_curve,
            privacy_curves,
            weights,
            lambda,
            interpolation,
            privacy_recognizer: RecognizerKind::default(),
            domain: (lo, hi),
        })
    }

    pub fn with_recognizer(mut self, kind: RecognizerKind) -> Self {
        self.privacy_recognizer = kind;
        self
    }

    /// Same model with a different scaling factor.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self, ModelError> {
        check_lambda(lambda)?;
        let mut m = self.clone();
        m.lambda = lambda;
        Ok(m)
    }

    pub fn task_curve(&self) -> &AccuracyCurve {
        &self.task_curve
    }

    pub fn privacy_curves(&self) -> &BTreeMap<String, AccuracyCurve> {
        &self.privacy_curves
    }

    pub fn weights(&self) -> &ImportanceWeights {
        &self.weights
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    pub fn privacy_recognizer(&self) -> RecognizerKind {
        self.privacy_recognizer
    }

    /// Closed resolution span on which every curve is evaluable.
    pub fn domain(&self) -> (u32, u32) {
        self.domain
    }

    /// Resolutions sampled by the task curve that fall inside [`domain`](Self::domain).
    pub fn default_grid(&self) -> Vec<u32> {
        let (lo, hi) = self.domain;
        self.task_curve
            .resolutions()
            .filter(|r| (lo..=hi).contains(r))
            .collect()
    }

    fn check_domain(&self, r: f64) -> Result<(), ModelError> {
        let (lo, hi) = self.domain;
        if !r.is_finite() || r < f64::from(lo) || r > f64::from(hi) {
            return Err(ModelError::OutOfDomain {
                label: "model".into(),
                r,
                lo,
                hi,
            });
        }
        Ok(())
    }

    pub fn task_term(&self, r: f64) -> Result<f64, ModelError> {
        self.check_domain(r)?;
        interpolate(&self.task_curve, r, self.interpolation)
    }

    /// Weighted privacy leakage `Σ ω_i L_Pi(r)`.
    pub fn privacy_term(&self, r: f64) -> Result<f64, ModelError> {
        self.check_domain(r)?;
        let mut total = 0.0;
        for (id, curve) in &self.privacy_curves {
            let w = self
                .weights
                .get(id)
                .ok_or_else(|| ModelError::ModelInconsistent(format!("no weight for `{id}`")))?;
            total += w * interpolate(curve, r, self.interpolation)?;
        }
        Ok(total)
    }

    pub fn objective(&self, r: f64) -> Result<f64, ModelError> {
        objective(self, r)
    }
}

fn check_lambda(lambda: f64) -> Result<(), ModelError> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidLambda(lambda))
    }
}

/// Evaluates the trade-off objective at resolution `r`.
pub fn objective(model: &TradeoffModel, r: f64) -> Result<f64, ModelError> {
    let task = model.task_term(r)?;
    let privacy = model.privacy_term(r)?;
    Ok(task - model.lambda * privacy)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectivePoint {
    pub resolution: u32,
    #[serde(rename = "S")]
    pub value: f64,
}

/// `S(r)` sampled over a resolution grid for one scaling factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveCurve {
    pub lambda: f64,
    pub points: Vec<ObjectivePoint>,
}

/// Evaluates the objective over `resolutions` once per entry of `lambdas`.
pub fn sweep(
    model: &TradeoffModel,
    resolutions: &[u32],
    lambdas: &[f64],
) -> Result<Vec<ObjectiveCurve>, ModelError> {
    if resolutions.is_empty() || lambdas.is_empty() {
        return Err(ModelError::EmptyGrid);
    }
    if resolutions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ModelError::InvalidGrid(
            "resolutions must be strictly increasing".into(),
        ));
    }
    // the task and privacy terms do not depend on λ
    let terms: Vec<(u32, f64, f64)> = resolutions
        .iter()
        .map(|&r| {
            let x = f64::from(r);
            Ok((r, model.task_term(x)?, model.privacy_term(x)?))
        })
        .collect::<Result<_, ModelError>>()?;
    lambdas
        .iter()
        .map(|&lambda| {
            check_lambda(lambda)?;
            let points = terms
                .iter()
                .map(|&(resolution, task, privacy)| ObjectivePoint {
                    resolution,
                    value: task - lambda * privacy,
                })
                .collect();
            Ok(ObjectiveCurve { lambda, points })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalRange {
    pub lambda: f64,
    pub argmax_resolution: u32,
    pub max_value: f64,
    /// Inclusive `(r_lo, r_hi)`.
    pub range: (u32, u32),
    pub epsilon: f64,
}

/// Locates the maximum of an objective curve and the contiguous run of
/// grid points around it that stay within `epsilon` of the maximum.
///
/// Equal maxima resolve to the smallest resolution.
pub fn optimal_range(curve: &ObjectiveCurve, epsilon: f64) -> Result<OptimalRange, ModelError> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(ModelError::InvalidEpsilon(epsilon));
    }
    let pts = &curve.points;
    if pts.is_empty() {
        return Err(ModelError::EmptyCurve(format!("objective λ={}", curve.lambda)));
    }
    let mut best = 0;
    for (i, p) in pts.iter().enumerate().skip(1) {
        if p.value > pts[best].value {
            best = i;
        }
    }
    let max_value = pts[best].value;
    let floor = max_value - epsilon;
    let mut lo = best;
    while lo > 0 && pts[lo - 1].value >= floor {
        lo -= 1;
    }
    let mut hi = best;
    while hi + 1 < pts.len() && pts[hi + 1].value >= floor {
        hi += 1;
    }
    Ok(OptimalRange {
        lambda: curve.lambda,
        argmax_resolution: pts[best].resolution,
        max_value,
        range: (pts[lo].resolution, pts[hi].resolution),
        epsilon,
    })
}
