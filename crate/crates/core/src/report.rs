//! Inequality reports and the tolerances that decide them.

use serde::Serialize;

use crate::error::{Error, Result};

/// Metadata value attached to a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum MetaValue {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(bool),
}

impl From<f64> for MetaValue {
    fn from(v: f64) -> Self {
        MetaValue::Num(v)
    }
}

impl From<usize> for MetaValue {
    fn from(v: usize) -> Self {
        MetaValue::Int(v as i64)
    }
}

impl From<i64> for MetaValue {
    fn from(v: i64) -> Self {
        MetaValue::Int(v)
    }
}

impl From<bool> for MetaValue {
    fn from(v: bool) -> Self {
        MetaValue::Flag(v)
    }
}

impl From<&str> for MetaValue {
    fn from(v: &str) -> Self {
        MetaValue::Text(v.to_string())
    }
}

impl From<String> for MetaValue {
    fn from(v: String) -> Self {
        MetaValue::Text(v)
    }
}

/// One checked inequality `lhs ≤ rhs`, passing when `rhs − lhs ≥ −tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub metadata: Vec<(String, MetaValue)>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = rhs - lhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            tolerance,
            pass: margin >= -tolerance,
            metadata: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<MetaValue>) -> Self {
        self.metadata.push((key.to_string(), value.into()));
        self
    }

    pub fn with_tolerances(mut self, tol: &Tolerances) -> Self {
        for (k, v) in tol.entries() {
            self.metadata.push((format!("tol.{k}"), MetaValue::Num(v)));
        }
        self
    }

    pub fn meta(&self, key: &str) -> Option<&MetaValue> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn meta_num(&self, key: &str) -> Option<f64> {
        match self.meta(key)? {
            MetaValue::Num(v) => Some(*v),
            MetaValue::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn meta_flag(&self, key: &str) -> Option<bool> {
        match self.meta(key)? {
            MetaValue::Flag(v) => Some(*v),
            _ => None,
        }
    }
}

/// Pass/fail thresholds; relative ones are fractions of the report's rhs or
/// of the quantity named in the field's doc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Reverse Hölder slack, relative to rhs.
    pub chiti_slack: f64,
    /// Band for flagging a suspected equality case in the reverse Hölder check.
    pub chiti_equality: f64,
    /// Saint-Venant slack, relative to rhs.
    pub torsion_slack: f64,
    /// Band for flagging a suspected equality case in the Saint-Venant check.
    pub torsion_equality: f64,
    /// Allowed excess of w⋆ over the cap warping function, relative to its sup.
    pub warping: f64,
    /// Relative slack on the derivative bound.
    pub derivative_slack: f64,
    /// Fraction of interior nodes that must satisfy the derivative bound.
    pub derivative_fraction: f64,
    /// Allowed relative excess of the cap volume over the domain volume.
    pub claim: f64,
    /// Crossing dead-band, relative to the sup of the scaled cap profile.
    pub crossing_deadband: f64,
    /// Isoperimetric slack, relative to rhs.
    pub isoperimetric: f64,
    /// Relative eigenvalue match between a domain and its comparison cap.
    pub eigen_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            chiti_slack: 1e-3,
            chiti_equality: 1e-3,
            torsion_slack: 1e-3,
            torsion_equality: 1e-2,
            warping: 1e-2,
            derivative_slack: 1e-2,
            derivative_fraction: 0.99,
            claim: 1e-3,
            crossing_deadband: 1e-4,
            isoperimetric: 1e-2,
            eigen_match: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn entries(&self) -> [(&'static str, f64); 11] {
        [
            ("chiti_slack", self.chiti_slack),
            ("chiti_equality", self.chiti_equality),
            ("torsion_slack", self.torsion_slack),
            ("torsion_equality", self.torsion_equality),
            ("warping", self.warping),
            ("derivative_slack", self.derivative_slack),
            ("derivative_fraction", self.derivative_fraction),
            ("claim", self.claim),
            ("crossing_deadband", self.crossing_deadband),
            ("isoperimetric", self.isoperimetric),
            ("eigen_match", self.eigen_match),
        ]
    }

    /// Overrides one tolerance by name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::range(value, "[0, inf) for a tolerance"));
        }
        let slot = match name {
            "chiti_slack" => &mut self.chiti_slack,
            "chiti_equality" => &mut self.chiti_equality,
            "torsion_slack" => &mut self.torsion_slack,
            "torsion_equality" => &mut self.torsion_equality,
            "warping" => &mut self.warping,
            "derivative_slack" => &mut self.derivative_slack,
            "derivative_fraction" => &mut self.derivative_fraction,
            "claim" => &mut self.claim,
            "crossing_deadband" => &mut self.crossing_deadband,
            "isoperimetric" => &mut self.isoperimetric,
            "eigen_match" => &mut self.eigen_match,
            other => return Err(Error::invalid(format!("unknown tolerance '{other}'"))),
        };
        *slot = value;
        Ok(())
    }
}
