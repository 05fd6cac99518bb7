//! The corpus verification suite: for every entry and prime it runs the
//! invariant battery (closure, expected values, the two hyperfocal routes,
//! containment chains, p-nilpotency agreement, Frobenius consistency, Sylow
//! conjugacy) and the theorem checkers (implication suites, the critical-
//! subgroup certificate, automizer generation instances). The output is a
//! deterministic structured report; two runs on the same corpus serialize to
//! byte-identical JSON.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::checkers::{
    automizer_generation_instances, checker_by_id, conjugacy_automizer_hypothesis,
    abelian_hyperfocal_hypothesis, intermediate_subgroups, CheckerInput,
};
use crate::corpus::CorpusEntry;
use crate::critical::{automizer_action, find_critical_subgroup};
use crate::error::{Error, Result};
use crate::fusion::{self, fusion_equal, fusion_equal_all_subgroups};
use crate::group::GroupTable;
use crate::plocal::{
    self, enumerate_subgroups, hyperfocal_from_automizers, hyperfocal_from_residual,
    sylow_subgroup, sylow_subgroup_from_seed, SubgroupFilter, DEFAULT_SUBGROUP_CAP,
};
use crate::subgroup::{are_conjugate_in, SubgroupHandle};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckLine {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EntryReport {
    pub name: String,
    pub order: u64,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub entries: Vec<EntryReport>,
    pub total_checks: usize,
    pub failed_checks: usize,
    pub pass: bool,
}

impl SuiteReport {
    pub fn from_entries(entries: Vec<EntryReport>) -> SuiteReport {
        let total_checks = entries.iter().map(|e| e.checks.len()).sum();
        let failed_checks = entries
            .iter()
            .map(|e| e.checks.iter().filter(|c| !c.pass).count())
            .sum();
        let pass = failed_checks == 0;
        SuiteReport {
            entries,
            total_checks,
            failed_checks,
            pass,
        }
    }
}

/// How many ⟨S, x⟩ extensions feed the intermediate-subgroup list per prime.
const INTERMEDIATE_EXTENSION_LIMIT: usize = 3;

struct Recorder {
    checks: Vec<CheckLine>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new() }
    }

    fn record(&mut self, check: &str, prime: Option<u64>, outcome: Result<(bool, Option<String>)>) {
        match outcome {
            Ok((pass, detail)) => self.checks.push(CheckLine {
                check: check.into(),
                prime,
                pass,
                detail,
            }),
            Err(e) => self.checks.push(CheckLine {
                check: check.into(),
                prime,
                pass: false,
                detail: Some(e.to_string()),
            }),
        }
    }
}

fn ok(pass: bool) -> Result<(bool, Option<String>)> {
    Ok((pass, None))
}

fn ok_with(pass: bool, detail: String) -> Result<(bool, Option<String>)> {
    Ok((pass, Some(detail)))
}

/// Runs the full battery on one corpus entry.
pub fn run_entry(entry: &CorpusEntry) -> EntryReport {
    let mut rec = Recorder::new();
    let table = &entry.group;

    rec.record("group_closure", None, entry.group.verify_closure().map(|_| (true, None)));
    rec.record("expected_values", None, entry.verify_expected().map(|_| (true, None)));

    for &p in &entry.primes {
        run_prime_checks(&mut rec, table, p);
    }

    let pass = rec.checks.iter().all(|c| c.pass);
    EntryReport {
        name: entry.name.clone(),
        order: entry.group.order(),
        pass,
        checks: rec.checks,
    }
}

fn run_prime_checks(rec: &mut Recorder, table: &Arc<GroupTable>, p: u64) {
    let sylow = match sylow_subgroup(table, p) {
        Ok(s) => s,
        Err(e) => {
            rec.record("sylow", Some(p), Err(e));
            return;
        }
    };
    rec.record(
        "sylow_order_is_p_part",
        Some(p),
        ok(sylow.order() == plocal::p_part(table.order(), p)),
    );

    // hyperfocal: two independent routes must agree bitset-for-bitset
    let hyper_res = hyperfocal_from_residual(table, &sylow, p);
    let hyper_aut = hyperfocal_from_automizers(table, &sylow, p);
    match (&hyper_res, &hyper_aut) {
        (Ok(a), Ok(b)) => {
            rec.record(
                "hyperfocal_routes_agree",
                Some(p),
                ok_with(
                    a == b,
                    format!("residual route order {}, automizer route order {}", a.order(), b.order()),
                ),
            );
        }
        _ => rec.record(
            "hyperfocal_routes_agree",
            Some(p),
            Err(Error::SelfCheckFailed("hyperfocal computation failed".into())),
        ),
    }
    let hyperfocal = match hyper_res {
        Ok(h) => h,
        Err(_) => return,
    };

    rec.record("hyperfocal_le_focal_le_sylow", Some(p), {
        match plocal::focal_subgroup(table, &sylow, p) {
            Ok(focal) => ok(hyperfocal.is_subgroup_of(&focal) && focal.is_subgroup_of(&sylow)),
            Err(e) => Err(e),
        }
    });

    rec.record("p_residual_properties", Some(p), {
        match plocal::p_residual(table, p) {
            Ok(res) => {
                let normal = res.is_normal_in_parent();
                let index_p_power =
                    plocal::is_p_power(table.order() / res.order(), p);
                let sub = res.to_group_table();
                let idempotent = match plocal::p_residual(&sub.table, p) {
                    Ok(inner) => inner.order() == res.order(),
                    Err(_) => false,
                };
                ok(normal && index_p_power && idempotent)
            }
            Err(e) => Err(e),
        }
    });

    rec.record("p_nilpotency_agreement", Some(p), {
        match (
            plocal::is_p_nilpotent(table, p),
            plocal::has_normal_p_complement_direct(table, p),
        ) {
            (Ok(a), Ok(b)) => ok_with(a == b, format!("hyperfocal criterion {}, direct {}", a, b)),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    });

    rec.record("frobenius_consistency", Some(p), {
        match (
            fusion_equal(table, &sylow, &sylow, p),
            plocal::is_p_nilpotent(table, p),
        ) {
            (Ok(diff), Ok(nilpotent)) => ok(diff.equal == nilpotent),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    });

    rec.record("sylow_seeds_conjugate", Some(p), sylow_seed_check(table, &sylow, p));

    rec.record("central_series_of_sylow", Some(p), {
        let series = sylow.upper_central_series();
        let ascending = series
            .terms
            .windows(2)
            .all(|w| w[0].is_subgroup_of(&w[1]) && w[0].order() < w[1].order());
        let normal = series.terms.iter().all(|t| t.is_normal_in(&sylow));
        let reaches = sylow.is_trivial() || series.last() == &sylow;
        ok(ascending && normal && reaches)
    });

    rec.record(
        "essential_implies_centric_radical",
        Some(p),
        essential_implication_check(table, &sylow, p),
    );

    rec.record(
        "fully_normalized_sylow_property",
        Some(p),
        fully_normalized_check(table, &sylow, p),
    );

    // theorem suites over the deterministic intermediate-subgroup list
    let h_list = intermediate_subgroups(table, &sylow, p, INTERMEDIATE_EXTENSION_LIMIT);
    rec.record("thm1_implications", Some(p), thm1_suite(table, &sylow, p, &h_list));
    rec.record("thm2_implications", Some(p), thm2_suite(table, &sylow, p));
    rec.record(
        "aut_chain_monotone",
        Some(p),
        aut_chain_check(table, &sylow, p, &h_list),
    );
    if p % 2 == 1 {
        rec.record(
            "conj_automizer_implications",
            Some(p),
            conj_automizer_suite(table, &sylow, p, &h_list),
        );
    }
    rec.record(
        "critical_subgroup_certificate",
        Some(p),
        critical_check(table, &sylow, p),
    );
    rec.record(
        "automizer_generation_instances",
        Some(p),
        generation_suite(table, &sylow, p, &h_list),
    );
    rec.record(
        "fusion_equal_matches_full_scan",
        Some(p),
        full_scan_check(table, &sylow, p, &h_list),
    );
}

fn sylow_seed_check(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<(bool, Option<String>)> {
    // climb again from the last maximal-order p-element instead of the first
    let mut seed = None;
    let mut best_order = 1u64;
    for i in 1..table.len() as u32 {
        let o = table.element_order(i) as u64;
        if plocal::is_p_power(o, p) && o >= best_order {
            best_order = o;
            seed = Some(i);
        }
    }
    let other = match seed {
        Some(s) => sylow_subgroup_from_seed(table, p, Some(s))?,
        None => return ok(sylow.is_trivial()),
    };
    let (conjugate, _) = are_conjugate_in(&table.full(), sylow, &other);
    ok(conjugate)
}

fn essential_implication_check(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<(bool, Option<String>)> {
    let subgroups = enumerate_subgroups(sylow, SubgroupFilter::All, DEFAULT_SUBGROUP_CAP)?;
    let mut essential_count = 0usize;
    for q in &subgroups {
        if fusion::is_essential(table, sylow, q, p)? {
            essential_count += 1;
            if !fusion::is_centric(table, sylow, q)? || !fusion::is_radical(table, sylow, q, p)? {
                return ok_with(false, format!("essential subgroup of order {} fails", q.order()));
            }
        }
    }
    ok_with(true, format!("{} essential subgroups", essential_count))
}

fn fully_normalized_check(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<(bool, Option<String>)> {
    for q in enumerate_subgroups(sylow, SubgroupFilter::All, DEFAULT_SUBGROUP_CAP)? {
        if fusion::is_fully_normalized(table, sylow, &q)? {
            let aut = fusion::automizer(table, &q, Some(sylow));
            let from_s = aut.from_s.as_ref().expect("S was supplied");
            if from_s.order() != plocal::p_part(aut.aut.order(), p) {
                return ok_with(
                    false,
                    format!(
                        "fully normalized Q of order {} has |Aut_S(Q)| = {} vs p-part {}",
                        q.order(),
                        from_s.order(),
                        plocal::p_part(aut.aut.order(), p)
                    ),
                );
            }
        }
    }
    ok(true)
}

fn thm1_suite(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
    h_list: &[SubgroupHandle],
) -> Result<(bool, Option<String>)> {
    let checker = checker_by_id("thm1").expect("registered");
    let mut hypothesis_true_pairs = 0usize;
    for h in h_list {
        let input = CheckerInput::new(Arc::clone(table), sylow.clone(), Some(h.clone()), p);
        let report = checker.run(&input)?;
        if !report.implication_ok {
            return ok_with(
                false,
                format!("implication violated for |H| = {}", h.order()),
            );
        }
        if report.hypothesis.holds {
            hypothesis_true_pairs += 1;
        }
    }
    ok_with(true, format!("{} hypothesis-true pairs", hypothesis_true_pairs))
}

fn thm2_suite(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<(bool, Option<String>)> {
    for id in ["thm2_normalizer", "thm2_inner"] {
        let checker = checker_by_id(id).expect("registered");
        let input = CheckerInput::new(Arc::clone(table), sylow.clone(), None, p);
        let report = checker.run(&input)?;
        if !report.implication_ok {
            return ok_with(false, format!("{} implication violated", id));
        }
    }
    ok(true)
}

fn aut_chain_check(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
    h_list: &[SubgroupHandle],
) -> Result<(bool, Option<String>)> {
    let _ = p;
    let subgroups = enumerate_subgroups(sylow, SubgroupFilter::All, DEFAULT_SUBGROUP_CAP)?;
    for q in subgroups.iter().take(8) {
        let aut_s = fusion::automizer_in(sylow, q, None).aut.order();
        let aut_g = fusion::automizer(table, q, None).aut.order();
        for h in h_list {
            let aut_h = fusion::automizer_in(h, q, None).aut.order();
            if !(aut_s <= aut_h && aut_h <= aut_g) {
                return ok_with(
                    false,
                    format!("automizer chain broken at Q of order {}", q.order()),
                );
            }
        }
    }
    ok(true)
}

fn conj_automizer_suite(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
    h_list: &[SubgroupHandle],
) -> Result<(bool, Option<String>)> {
    let checker = checker_by_id("conj_automizer").expect("registered");
    let mut hypothesis_true = 0usize;
    for h in h_list {
        let input = CheckerInput::new(Arc::clone(table), sylow.clone(), Some(h.clone()), p);
        let report = checker.run(&input)?;
        if !report.implication_ok {
            return ok_with(
                false,
                format!("implication violated for |H| = {}", h.order()),
            );
        }
        // the conjugacy/automizer hypothesis must be at least as strong as the
        // abelian-hyperfocal hypothesis
        if report.hypothesis.holds {
            hypothesis_true += 1;
            let (thm1_hyp, _) = abelian_hyperfocal_hypothesis(&CheckerInput::new(
                Arc::clone(table),
                sylow.clone(),
                Some(h.clone()),
                p,
            ))?;
            if !thm1_hyp {
                return ok_with(
                    false,
                    format!(
                        "conjugacy hypothesis holds but Hom-equality hypothesis fails for |H| = {}",
                        h.order()
                    ),
                );
            }
        }
    }
    ok_with(true, format!("{} hypothesis-true pairs", hypothesis_true))
}

fn critical_check(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<(bool, Option<String>)> {
    let action = automizer_action(table, sylow, p)?;
    let cert = find_critical_subgroup(&action, p)?;
    let flags_ok = cert.invariant_under_action
        && cert.exponent_ok
        && cert.class_condition
        && cert.faithful_p_prime_action;
    let audit_ok = cert
        .maximal_abelians
        .iter()
        .all(|a| a.normal_in_target && a.centralizer_is_p_group);
    ok_with(
        flags_ok && audit_ok,
        format!(
            "|D| = {}, {} maximal abelians",
            cert.d_order,
            cert.maximal_abelians.len()
        ),
    )
}

fn generation_suite(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
    h_list: &[SubgroupHandle],
) -> Result<(bool, Option<String>)> {
    let mut instances = 0usize;
    for h in h_list {
        for (big_p, q, verdict) in automizer_generation_instances(table, h, sylow, p)? {
            instances += 1;
            if !verdict {
                return ok_with(
                    false,
                    format!(
                        "generation fails for |H| = {}, |P| = {}, |Q| = {}",
                        h.order(),
                        big_p.order(),
                        q.order()
                    ),
                );
            }
        }
    }
    ok_with(true, format!("{} instances", instances))
}

fn full_scan_check(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
    h_list: &[SubgroupHandle],
) -> Result<(bool, Option<String>)> {
    for h in h_list {
        let by_classes = fusion_equal(table, h, sylow, p)?.equal;
        let by_scan = fusion_equal_all_subgroups(table, h, sylow, p)?;
        if by_classes != by_scan {
            return ok_with(false, format!("mismatch for |H| = {}", h.order()));
        }
    }
    ok(true)
}

/// Runs the suite over a corpus, filtered by a `*`-glob on entry names.
pub fn run_suite(entries: &[CorpusEntry], name_filter: Option<&str>) -> SuiteReport {
    let reports: Vec<EntryReport> = entries
        .iter()
        .filter(|e| name_filter.map_or(true, |f| glob_match(f, &e.name)))
        .map(run_entry)
        .collect();
    SuiteReport::from_entries(reports)
}

/// Minimal `*`-wildcard matcher (no character classes).
pub fn glob_match(pattern: &str, text: &str) -> bool {
    fn inner(p: &[u8], t: &[u8]) -> bool {
        match (p.first(), t.first()) {
            (None, None) => true,
            (Some(b'*'), _) => inner(&p[1..], t) || (!t.is_empty() && inner(p, &t[1..])),
            (Some(c), Some(d)) if c == d => inner(&p[1..], &t[1..]),
            _ => false,
        }
    }
    inner(pattern.as_bytes(), text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glob_matching() {
        assert!(glob_match("agl*", "agl_1_9"));
        assert!(glob_match("*", "anything"));
        assert!(glob_match("s3", "s3"));
        assert!(!glob_match("agl*", "s4"));
        assert!(!glob_match("s3", "s33"));
    }
}
