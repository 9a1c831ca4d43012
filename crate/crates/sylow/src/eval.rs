//! Evaluation of group expressions.

use std::collections::BTreeMap;

use serde::Serialize;

use sylow_core::catalog::{self, build_model, lookup, ModelOptions};
use sylow_core::classical::build;
use sylow_core::field::FiniteField;
use sylow_core::group::{
    cyclic, dihedral, direct_product, fingerprint, quaternion, symmetric, sylow_of_symmetric, Fingerprint,
    Group,
};
use sylow_core::sylow::sylow;
use sylow_core::{Limits, Result};

use crate::expr::{Expr, MatrixKind};

#[derive(Debug, Clone, Copy, Default)]
pub struct Evaluator {
    pub limits: Limits,
    pub options: ModelOptions,
}

#[derive(Debug, Clone, Serialize)]
pub struct SylowSummary {
    pub prime: u64,
    pub ambient_order: u64,
    /// `|G| = prime^exponent * cofactor`.
    pub exponent: u32,
    pub cofactor: u64,
    /// Orders of the growing chain of p-subgroups.
    pub chain: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Description {
    pub expr: String,
    pub order: u64,
    pub fingerprint: Fingerprint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sylow: Option<SylowSummary>,
}

impl Evaluator {
    pub fn eval(&self, e: &Expr) -> Result<Group> {
        Ok(self.eval_traced(e)?.0)
    }

    fn eval_traced(&self, e: &Expr) -> Result<(Group, Option<SylowSummary>)> {
        let budget = self.limits.elements;
        let g = match e {
            Expr::Classical(spec) => build(spec, &self.limits)?.group,
            Expr::Syl(p, inner) => {
                let g = self.eval(inner)?;
                let r = sylow(&g, *p, budget)?;
                let exponent = r.p_part.ilog(*p as u128);
                let summary = SylowSummary {
                    prime: *p,
                    ambient_order: g.order() as u64,
                    exponent,
                    cofactor: (g.order() as u128 / r.p_part) as u64,
                    chain: r.chain,
                };
                return Ok((r.subgroup.group(), Some(summary)));
            }
            Expr::Model { entry, spec, prime } => {
                let entry = lookup(entry).expect("entry ids are checked while parsing");
                build_model(entry, spec, *prime, self.options, &self.limits)?.group
            }
            Expr::Q(k) => quaternion(*k as usize)?,
            Expr::D(k) => dihedral(*k as usize)?,
            Expr::C(k) => cyclic(*k as usize)?,
            Expr::S(n) => symmetric(*n as usize)?.group(),
            Expr::P(l, n) => sylow_of_symmetric(*l as usize, *n as usize, budget)?.group(),
            Expr::Matrices(kind, n, q) => {
                let f = FiniteField::with_order(*q)?;
                let n = *n as usize;
                let m = match kind {
                    MatrixKind::Up => catalog::up(&f, n, budget)?,
                    MatrixKind::Sym => catalog::sym(&f, n, budget)?,
                    MatrixKind::Antisym => catalog::antisym(&f, n, budget)?,
                    MatrixKind::Antisym0 => catalog::antisym0(&f, n, budget)?,
                    MatrixKind::AntisymStar => catalog::antisym_star(&f, n, budget)?,
                };
                m.group()
            }
            Expr::Product(a, b) => direct_product(&self.eval(a)?, &self.eval(b)?, budget)?,
        };
        Ok((g.with_name(e.to_string()), None))
    }

    pub fn describe(&self, e: &Expr) -> Result<Description> {
        let (g, sylow) = self.eval_traced(e)?;
        Ok(Description {
            expr: e.to_string(),
            order: g.order() as u64,
            fingerprint: fingerprint(&g, self.limits.elements)?,
            sylow,
        })
    }
}

/// Human-readable rendering of a fingerprint.
pub fn fingerprint_text(f: &Fingerprint) -> String {
    let hist: Vec<String> = f.order_histogram.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    let ab: Vec<String> = f.abelianization.iter().map(u64::to_string).collect();
    format!(
        "order {}\nelement orders {{{}}}\ncenter {}\nderived subgroup {}\nabelianization [{}]\nexponent {}",
        f.order,
        hist.join(", "),
        f.center,
        f.derived,
        ab.join(", "),
        f.exponent
    )
}

pub fn sylow_text(s: &SylowSummary) -> String {
    let chain: Vec<String> = s.chain.iter().map(usize::to_string).collect();
    format!(
        "|G| = {} = {}^{} * {}\nchain {}",
        s.ambient_order,
        s.prime,
        s.exponent,
        s.cofactor,
        chain.join(" < ")
    )
}

/// Catalog rows as emitted by `list-catalog`.
pub fn catalog_rows() -> Vec<BTreeMap<&'static str, String>> {
    catalog::CATALOG
        .iter()
        .map(|e| {
            BTreeMap::from([
                ("id", e.id.to_string()),
                ("locator", e.locator.to_string()),
                ("family", e.family.to_string()),
                ("applies", e.applies.to_string()),
                ("constants", e.constants.to_string()),
            ])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn order(text: &str) -> usize {
        Evaluator::default().eval(&parse(text).unwrap()).unwrap().order()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(order("Up(3,2)"), 8);
        assert_eq!(order("Syl(3, GL(2,4))"), 9);
        assert_eq!(order("C(1)"), 1);
        assert_eq!(order("Q(8) x C(2)"), 16);
        assert_eq!(order("P(2, S(4))"), 8);
        assert_eq!(order("AntisymStar(1,4)"), 2);
        assert_eq!(order("model(PSL-p; PSL(3,2), 2)"), 8);
    }

    #[test]
    fn sylow_description() {
        let d = Evaluator::default().describe(&parse("Syl(2, S(4))").unwrap()).unwrap();
        let s = d.sylow.unwrap();
        assert_eq!((s.ambient_order, s.exponent, s.cofactor), (24, 3, 3));
        assert_eq!(sylow_text(&s).lines().next(), Some("|G| = 24 = 2^3 * 3"));
    }
}
