//! Threshold and discrepancy results with their certificates.

use serde_json::{json, Value};

use crate::algebra::{Rational, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Exact,
    Lower,
    Upper,
    /// The true value lies in `[lower, upper]`.
    Sandwich,
}

impl CertKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertKind::Exact => "exact",
            CertKind::Lower => "lower",
            CertKind::Upper => "upper",
            CertKind::Sandwich => "sandwich",
        }
    }
}

/// What attains a minimum.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Exceptional divisor of a resolution, numbered in creation order
    /// from 1; `ord` is its order along the target.
    Exceptional {
        node: usize,
        k_e: i64,
        ord: i64,
        log_discrepancy: Rational,
    },
    /// Strict transform of a boundary or fiber component.
    Curve { poly: String, coeff: Rational },
    /// Exceptional divisor of a weighted blow-up.
    Weight(WeightVector),
    /// The first blow-up of the origin, in the mld convention.
    OriginBlowup,
    /// Newton polygon bound.
    Newton,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Exceptional {
                node,
                k_e,
                ord,
                log_discrepancy,
            } => json!({
                "type": "exceptional",
                "node": node,
                "kE": k_e,
                "ord": ord,
                "a": log_discrepancy.to_string(),
            }),
            Witness::Curve { poly, coeff } => json!({
                "type": "curve",
                "poly": poly,
                "coeff": coeff.to_string(),
            }),
            Witness::Weight(w) => json!({"type": "weight", "a1": w.a1, "a2": w.a2}),
            Witness::OriginBlowup => json!({"type": "origin-blowup"}),
            Witness::Newton => json!({"type": "newton"}),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LctResult {
    pub value: Rational,
    pub kind: CertKind,
    /// Present for sandwiches.
    pub lower: Option<Rational>,
    pub witness: Option<Witness>,
}

impl LctResult {
    pub fn exact(value: Rational, witness: Option<Witness>) -> Self {
        LctResult {
            value,
            kind: CertKind::Exact,
            lower: None,
            witness,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "value": self.value.to_string(),
            "kind": self.kind.as_str(),
        });
        if let Some(l) = &self.lower {
            v["lower"] = json!(l.to_string());
            v["upper"] = json!(self.value.to_string());
        }
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MldResult {
    Value { value: Rational, witness: Witness },
    NotLc { witness: Witness },
}

impl MldResult {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            MldResult::Value { value, .. } => Some(value),
            MldResult::NotLc { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MldResult::Value { value, witness } => json!({
                "value": value.to_string(),
                "kind": "exact",
                "witness": witness.to_json(),
            }),
            MldResult::NotLc { witness } => json!({
                "value": "not lc",
                "kind": "exact",
                "witness": witness.to_json(),
            }),
        }
    }
}
