//! End-to-end check of one catalog claim: build the ambient group, extract a
//! Sylow subgroup by brute force, build the model, compare.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{build_model, CatalogEntry, ModelOptions};
use crate::classical::{build, ClassicalSpec};
use crate::group::{fingerprint, Elem, Fingerprint};
use crate::iso::{is_isomorphic, replay, Disproof, IsoOutcome};
use crate::sylow::sylow;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL-ORDER")]
    FailOrder,
    #[serde(rename = "FAIL-ISO")]
    FailIso,
    #[serde(rename = "INAPPLICABLE")]
    Inapplicable,
    #[serde(rename = "BUDGET")]
    Budget,
}

impl Verdict {
    pub const ALL: [Verdict; 5] =
        [Verdict::Pass, Verdict::FailOrder, Verdict::FailIso, Verdict::Inapplicable, Verdict::Budget];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::FailOrder => "FAIL-ORDER",
            Verdict::FailIso => "FAIL-ISO",
            Verdict::Inapplicable => "INAPPLICABLE",
            Verdict::Budget => "BUDGET",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::FailOrder | Verdict::FailIso)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub m: usize,
    pub q: u64,
    pub eps: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprints {
    pub model: Option<Fingerprint>,
    pub sylow: Option<Fingerprint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub family: String,
    pub params: Params,
    pub prime: u64,
    pub entry: String,
    pub expected_order: Option<u64>,
    pub actual_order: Option<u64>,
    pub verdict: Verdict,
    /// Why the verdict is not PASS: the distinguishing invariant, the
    /// unmet applicability condition, or the exceeded budget.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    /// Generator images (model element, Sylow element) of an isomorphism.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<(Elem, Elem)>>,
    pub fingerprints: Fingerprints,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub reductions: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub constants: BTreeMap<String, u64>,
    pub model: Option<String>,
}

pub fn case_id(spec: &ClassicalSpec, prime: u64, entry: &str) -> String {
    format!("{spec}/p={prime}/{entry}")
}

fn disproof_text(d: &Disproof) -> String {
    match d {
        Disproof::Invariant { name, left, right } => format!("{name} differs: model {left}, Sylow {right}"),
        Disproof::Exhausted { nodes } => format!("no isomorphism after {nodes} partial maps"),
    }
}

/// Verifies that the Sylow `prime`-subgroups of `spec` are isomorphic to
/// the model of `entry`. Every outcome is a verdict; errors other than
/// budget and applicability are construction bugs and are returned.
pub fn verify_claim(
    spec: &ClassicalSpec,
    prime: u64,
    entry: &CatalogEntry,
    options: ModelOptions,
    limits: &Limits,
) -> Result<Report> {
    let mut report = Report {
        case: case_id(spec, prime, entry.id),
        family: spec.family.to_string(),
        params: Params {
            n: spec.dim,
            m: spec.dim / 2,
            q: spec.field.order(),
            eps: spec.sign.map(|s| s.symbol().to_string()),
        },
        prime,
        entry: entry.id.into(),
        expected_order: None,
        actual_order: None,
        verdict: Verdict::Inapplicable,
        detail: None,
        witness: None,
        fingerprints: Fingerprints { model: None, sylow: None },
        reductions: Vec::new(),
        constants: BTreeMap::new(),
        model: None,
    };
    let settle = |mut report: Report, err: Error| -> Result<Report> {
        report.verdict = match err {
            Error::Inapplicable(_) => Verdict::Inapplicable,
            ref e if e.is_budget() => Verdict::Budget,
            e => return Err(e),
        };
        report.detail = Some(err.to_string());
        Ok(report)
    };

    let model = match build_model(entry, spec, prime, options, limits) {
        Ok(m) => m,
        Err(e) => return settle(report, e),
    };
    report.expected_order = Some(model.group.order() as u64);
    report.reductions = model.reductions.clone();
    report.constants = model.constants.clone();
    report.model = Some(model.description.clone());

    let ambient = match build(spec, limits) {
        Ok(c) => c,
        Err(e) => return settle(report, e),
    };
    let syl = match sylow(&ambient.group, prime, limits.elements) {
        Ok(s) => s,
        Err(e) => return settle(report, e),
    };
    let p_group = syl.subgroup.group();
    report.actual_order = Some(p_group.order() as u64);
    report.fingerprints = Fingerprints {
        model: Some(fingerprint(&model.group, limits.elements)?),
        sylow: Some(fingerprint(&p_group, limits.elements)?),
    };

    if model.group.order() != p_group.order() {
        report.verdict = Verdict::FailOrder;
        report.detail = Some(format!(
            "model order {} vs Sylow order {}",
            model.group.order(),
            p_group.order()
        ));
        return Ok(report);
    }
    match is_isomorphic(&model.group, &p_group, limits) {
        Ok(IsoOutcome::Isomorphic(w)) => {
            if !replay(&model.group, &p_group, &w) {
                return Err(Error::Relation(format!("{}: witness failed replay", report.case)));
            }
            report.verdict = Verdict::Pass;
            report.witness = Some(w.pairs);
        }
        Ok(IsoOutcome::NotIsomorphic(d)) => {
            report.verdict = Verdict::FailIso;
            report.detail = Some(disproof_text(&d));
        }
        Err(e) => return settle(report, e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::classical::{Family, Sign};

    fn run(family: Family, dim: usize, q: u64, sign: Option<Sign>, p: u64, id: &str) -> Report {
        let spec = ClassicalSpec::new(family, dim, q, sign).unwrap();
        verify_claim(&spec, p, lookup(id).unwrap(), ModelOptions::default(), &Limits::default()).unwrap()
    }

    #[test]
    fn unitriangular_psl32() {
        let r = run(Family::PSL, 3, 2, None, 2, "PSL-p");
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!((r.expected_order, r.actual_order), (Some(8), Some(8)));
        assert_eq!(r.case, "PSL(3,2)/p=2/PSL-p");
        assert!(r.witness.is_some());
    }

    #[test]
    fn verdicts_without_exceptions() {
        assert_eq!(run(Family::PSL, 2, 5, None, 2, "PSL-l").verdict, Verdict::Inapplicable);
        let spec = ClassicalSpec::new(Family::PSL, 2, 3, None).unwrap();
        let opts = ModelOptions { allow_l2_psl: true };
        let r = verify_claim(&spec, 2, lookup("PSL-l").unwrap(), opts, &Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::FailOrder);
        assert_eq!((r.expected_order, r.actual_order), (Some(2), Some(4)));
        let tight = Limits { iso_order: 4, ..Limits::default() };
        let spec = ClassicalSpec::new(Family::PSL, 3, 2, None).unwrap();
        let r = verify_claim(&spec, 2, lookup("PSL-p").unwrap(), ModelOptions::default(), &tight).unwrap();
        assert_eq!(r.verdict, Verdict::Budget);
    }
}
