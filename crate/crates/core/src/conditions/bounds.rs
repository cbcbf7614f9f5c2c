use serde::Serialize;

use crate::error::Result;
use crate::incidence::verify_A_square;
use crate::pgroup::{make_group, GroupSpec};
use crate::qrs::{search, QrsContext, SearchConfig, SearchMode};

/// Largest `r_H` for which the `nu_p = 0` base fact is enumerated.
const BASE_FACT_MAX_R: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct RuleOutcome {
    pub rule: &'static str,
    pub statement: &'static str,
    pub applies: bool,
    pub excluded: bool,
    pub detail: String,
}

/// One instance of the exponent-bound argument: for the quotient `H`,
/// `A_H nu = p^alpha d` collapses to `p^e nu = A_H d`, and a positive `e`
/// contradicts `nu_p = 0` on `H`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundDerivation {
    pub rule: &'static str,
    pub quotient: String,
    pub a_square_scalar: i64,
    pub a_square_holds: bool,
    pub exponent: i64,
    /// `nu_p = 0` for every QRS of `H`, when enumerated.
    pub base_fact_nu_zero: Option<bool>,
    pub candidates: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub group: String,
    pub structure: String,
    pub p: u64,
    pub beta: u32,
    pub alpha: Option<u32>,
    pub s: u32,
    pub excluded: bool,
    pub excluded_by: Vec<&'static str>,
    pub rules: Vec<RuleOutcome>,
    pub derivations: Vec<BoundDerivation>,
}

/// Classify `G` against the known nonexistence rules for GSHDS.
pub fn exponent_bound_report(g: &GroupSpec) -> Result<BoundReport> {
    let p = g.p();
    let beta = g.beta();
    let s = g.s();
    let alpha = g.alpha();
    let exps = g.exponents();
    let top = exps.iter().filter(|&&e| e == s).count();
    let mut rules = Vec::new();

    rules.push(RuleOutcome {
        rule: "square_order",
        statement: "no GSHDS exists when |G| is a square",
        applies: true,
        excluded: beta % 2 == 0,
        detail: format!("|G| = {p}^{beta}"),
    });
    rules.push(RuleOutcome {
        rule: "composite_order",
        statement: "|G| must be a prime power",
        applies: true,
        excluded: false,
        detail: format!("|G| = {p}^{beta} is a prime power"),
    });
    let cm_applies = s >= 2;
    rules.push(RuleOutcome {
        rule: "camion_mann",
        statement: "for exponent p^s with s >= 2 the two largest cyclic factors have equal order",
        applies: cm_applies,
        excluded: cm_applies && top < 2,
        detail: format!("exponents {exps:?}"),
    });
    match alpha {
        Some(a) => {
            rules.push(RuleOutcome {
                rule: "johnsen",
                statement: "s <= alpha + 1",
                applies: true,
                excluded: s > a + 1,
                detail: format!("s = {s}, alpha + 1 = {}", a + 1),
            });
            let csx = top >= 2;
            rules.push(RuleOutcome {
                rule: "chen_sehgal_xiang",
                statement: "2s <= alpha + 1 when two cyclic factors of order p^s exist",
                applies: csx,
                excluded: csx && 2 * s > a + 1,
                detail: format!("2s = {}, alpha + 1 = {}", 2 * s, a + 1),
            });
        }
        None => {
            for (rule, statement) in [("johnsen", "s <= alpha + 1"), ("chen_sehgal_xiang", "2s <= alpha + 1 when two cyclic factors of order p^s exist")] {
                rules.push(RuleOutcome { rule, statement, applies: false, excluded: false, detail: "alpha undefined for square order".into() });
            }
        }
    }

    let mut derivations = Vec::new();
    if let Some(a) = alpha {
        derivations.push(derive("johnsen", &make_group(p, &[s])?, s as i64 - 1 - a as i64)?);
        if top >= 2 {
            derivations.push(derive("chen_sehgal_xiang", &make_group(p, &[s, s])?, 2 * s as i64 - 1 - a as i64)?);
        }
    }

    let excluded_by: Vec<&'static str> = rules.iter().filter(|r| r.excluded).map(|r| r.rule).collect();
    Ok(BoundReport { group: g.dsl(), structure: g.structure(), p, beta, alpha, s, excluded: !excluded_by.is_empty(), excluded_by, rules, derivations })
}

fn derive(rule: &'static str, h: &GroupSpec, exponent: i64) -> Result<BoundDerivation> {
    let ctx = QrsContext::new(h)?;
    let sq = verify_A_square(&ctx.a)?;
    let (base, candidates) = if ctx.r() <= BASE_FACT_MAX_R {
        let rep = search(&ctx, &SearchConfig { mode: SearchMode::Exhaustive, jobs: 1, ..Default::default() })?;
        let ok = rep.complete && rep.nu_histogram.keys().all(|&v| v == 0);
        (Some(ok), rep.candidates_examined)
    } else {
        (None, 0)
    };
    Ok(BoundDerivation { rule, quotient: h.structure(), a_square_scalar: sq.scalar, a_square_holds: sq.holds, exponent, base_fact_nu_zero: base, candidates })
}
