//! Batches of verification cases: the built-in acceptance list, order
//! sweeps, and user-supplied case files.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use sylow_core::catalog::{default_entry, lookup, ModelOptions};
use sylow_core::classical::{order_formula, ClassicalSpec, Family, Sign};
use sylow_core::field::{prime_factors, prime_power, FiniteField, MAX_FIELD_ORDER};
use sylow_core::matrix::MAX_DIM;
use sylow_core::verify::{verify_claim, Report, Verdict};
use sylow_core::{Error, Limits, Result};

/// One case as written in a case file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub family: Family,
    pub dim: usize,
    /// Order of the field the matrices live over.
    pub q: u64,
    #[serde(default)]
    pub eps: Option<Sign>,
    pub prime: u64,
    pub entry: String,
    #[serde(default)]
    pub quarantined: bool,
    /// Enables the `l = 2` override of the `PSL-l` and `SL-l` entries.
    #[serde(default)]
    pub allow_l2_psl: bool,
    #[serde(default)]
    pub criterion: Option<u8>,
}

impl CaseSpec {
    pub fn spec(&self) -> Result<ClassicalSpec> {
        ClassicalSpec::new(self.family, self.dim, self.q, self.eps)
    }
}

fn case(family: Family, dim: usize, q: u64, eps: Option<Sign>, prime: u64, entry: &str, criterion: u8) -> CaseSpec {
    CaseSpec {
        family,
        dim,
        q,
        eps,
        prime,
        entry: entry.into(),
        quarantined: false,
        allow_l2_psl: false,
        criterion: Some(criterion),
    }
}

fn quarantine(mut c: CaseSpec) -> CaseSpec {
    c.quarantined = true;
    c
}

/// The verification cases named by the acceptance criteria, tagged with
/// their criterion number.
pub fn acceptance_cases() -> Vec<CaseSpec> {
    use Family::*;
    const P: Option<Sign> = Some(Sign::Plus);
    const M: Option<Sign> = Some(Sign::Minus);
    let mut v = Vec::new();
    for (n, q) in [(2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (2, 9)] {
        let p = prime_power(q).unwrap().0;
        v.push(case(PSL, n, q, None, p, "PSL-p", 2));
    }
    for (n, q, l) in [(2, 4, 3), (2, 7, 3), (3, 4, 3), (2, 16, 5)] {
        v.push(case(PSL, n, q, None, l, "PSL-l", 3));
        v.push(case(SL, n, q, None, l, "SL-l", 3));
    }
    for (n, q, l) in [(2, 4, 3), (3, 2, 7), (4, 2, 5), (2, 3, 2)] {
        v.push(case(GL, n, q, None, l, "GL-l", 4));
    }
    for (n, q) in [(1, 3), (2, 2), (2, 3)] {
        let p = prime_power(q).unwrap().0;
        v.push(case(PSp, 2 * n, q, None, p, "PSp-p", 5));
    }
    for (n, q) in [(1, 3), (2, 3)] {
        v.push(case(PSp, 2 * n, q, None, 2, "PSp-2", 6));
    }
    v.push(quarantine(case(PSp, 2, 5, None, 2, "PSp-2", 6)));
    v.push(case(POmega, 4, 3, P, 3, "Omega-even-p", 7));
    v.push(case(POmega, 4, 3, M, 3, "Omega-even-p", 7));
    v.push(case(Omega, 4, 2, P, 2, "Omega-even-2", 7));
    v.push(case(Omega, 4, 2, M, 2, "Omega-even-2", 7));
    v.push(case(Omega, 3, 3, None, 3, "Omega-odd-p", 7));
    v.push(case(Omega, 5, 3, None, 3, "Omega-odd-p", 7));
    for (dim, q, l, eps) in [(4, 3, 5, M), (4, 4, 3, P), (4, 5, 3, P)] {
        v.push(case(POmega, dim, q, eps, l, "Omega-l-reduce", 8));
    }
    v.push(case(O, 2, 5, P, 2, "O-even-2", 9));
    v.push(case(O, 2, 3, M, 2, "O-even-2", 9));
    v.push(case(O, 2, 3, P, 2, "O-even-2", 9));
    v.push(case(O, 3, 3, None, 2, "O-odd-2", 9));
    v.push(case(O, 3, 5, None, 2, "O-odd-2", 9));
    v.push(case(U, 2, 4, None, 2, "U-even-p", 10));
    v.push(case(U, 3, 4, None, 2, "U-odd-p", 10));
    v.push(case(U, 2, 9, None, 3, "U-even-p", 10));
    v.push(case(PSU, 2, 4, None, 3, "PSU-l-reduce", 11));
    v.push(case(U, 2, 4, None, 3, "U-l-reduce", 11));
    v.push(case(PSU, 4, 4, None, 5, "PSU-l-reduce", 11));
    v.push(case(U, 4, 4, None, 5, "U-l-reduce", 11));
    v.push(case(U, 3, 4, None, 2, "U-l-reduce", 11));
    for q in [3, 5, 7] {
        let mut c = quarantine(case(PSL, 2, q, None, 2, "PSL-l", 12));
        c.allow_l2_psl = true;
        v.push(c);
    }
    v
}

/// Every buildable `(spec, prime)` with `|spec| <= max_order` and a
/// default catalog entry, in a fixed order.
pub fn sweep_cases(max_order: u128, allow_l2_psl: bool) -> Vec<CaseSpec> {
    let mut v = Vec::new();
    let fields: Vec<_> = (2..=MAX_FIELD_ORDER)
        .filter(|&q| prime_power(q).is_some())
        .map(|q| FiniteField::with_order(q).expect("prime power"))
        .collect();
    for family in Family::ALL {
        for dim in 1..=MAX_DIM {
            for f in &fields {
                let q = f.order();
                let signs: &[Option<Sign>] = if family.is_orthogonal() && dim % 2 == 0 {
                    &[Some(Sign::Plus), Some(Sign::Minus)]
                } else {
                    &[None]
                };
                for &eps in signs {
                    let Ok(spec) = ClassicalSpec::with_field(family, dim, f.clone(), eps) else { continue };
                    let Some(order) = order_formula(&spec).filter(|&o| o <= max_order) else { continue };
                    for l in prime_factors(order) {
                        let Ok(entry) = default_entry(&spec, l) else { continue };
                        v.push(CaseSpec {
                            family,
                            dim,
                            q,
                            eps,
                            prime: l,
                            entry: entry.id.into(),
                            quarantined: false,
                            allow_l2_psl,
                            criterion: None,
                        });
                    }
                }
            }
        }
    }
    v
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseReport {
    #[serde(flatten)]
    pub report: Report,
    pub quarantined: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub criterion: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub verdicts: BTreeMap<String, usize>,
    /// Non-quarantined FAIL verdicts.
    pub failures: usize,
    /// Non-quarantined BUDGET verdicts.
    pub budget: usize,
    pub quarantined: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl SuiteReport {
    /// 0 when every non-quarantined case passes or is inapplicable, 1 on
    /// any failure, otherwise 3 when some case ran out of budget.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failures > 0 {
            1
        } else if self.summary.budget > 0 {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy)]
#[derive(Default)]
pub struct SuiteConfig {
    /// Worker threads; 0 means the available parallelism.
    pub jobs: usize,
    pub timings: bool,
    pub limits: Limits,
}


pub fn run_case(c: &CaseSpec, config: &SuiteConfig) -> Result<CaseReport> {
    let start = Instant::now();
    let spec = c.spec()?;
    let entry = lookup(&c.entry).ok_or_else(|| Error::InvalidSpec(format!("unknown catalog entry {:?}", c.entry)))?;
    let options = ModelOptions { allow_l2_psl: c.allow_l2_psl };
    let report = verify_claim(&spec, c.prime, entry, options, &config.limits)?;
    Ok(CaseReport {
        report,
        quarantined: c.quarantined,
        criterion: c.criterion,
        ms: config.timings.then(|| start.elapsed().as_millis() as u64),
    })
}

pub fn summarize(cases: &[CaseReport]) -> Summary {
    let mut s = Summary { total: cases.len(), ..Summary::default() };
    for v in Verdict::ALL {
        s.verdicts.insert(v.as_str().into(), 0);
    }
    for c in cases {
        *s.verdicts.get_mut(c.report.verdict.as_str()).unwrap() += 1;
        if c.quarantined {
            s.quarantined += 1;
        } else if c.report.verdict.is_failure() {
            s.failures += 1;
        } else if c.report.verdict == Verdict::Budget {
            s.budget += 1;
        }
    }
    s
}

/// Runs the cases on a pool of `config.jobs` workers. Reports keep the
/// order of `cases`.
pub fn run_suite(cases: &[CaseSpec], config: &SuiteConfig) -> Result<SuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let reports = pool.install(|| cases.par_iter().map(|c| run_case(c, config)).collect::<Result<Vec<_>>>())?;
    let summary = summarize(&reports);
    Ok(SuiteReport { cases: reports, summary })
}

pub fn to_json(report: &SuiteReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_exits_zero() {
        let r = run_suite(&[], &SuiteConfig { jobs: 1, ..SuiteConfig::default() }).unwrap();
        assert_eq!(r.summary.total, 0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn acceptance_cases_are_valid() {
        for c in acceptance_cases() {
            c.spec().unwrap();
            assert_eq!(lookup(&c.entry).unwrap().family, c.family, "{c:?}");
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = sweep_cases(200, false);
        assert_eq!(a, sweep_cases(200, false));
        assert!(a.iter().any(|c| c.family == Family::PSL && c.dim == 2 && c.q == 5 && c.prime == 5));
    }

    #[test]
    fn case_files_round_trip() {
        let cases = acceptance_cases();
        let text = serde_json::to_string(&cases).unwrap();
        let back: Vec<CaseSpec> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cases);
    }
}
