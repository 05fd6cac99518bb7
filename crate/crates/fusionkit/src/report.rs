//! JSON-facing report types for group analysis.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fusion::essential_class_representatives;
use crate::group::GroupTable;
use crate::plocal::PLocalProfile;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub name: String,
    pub order: u64,
    pub degree: u16,
    pub primes: Vec<PrimeAnalysis>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PrimeAnalysis {
    pub prime: u64,
    pub sylow_order: u64,
    pub p_residual_order: u64,
    pub hyperfocal_order: u64,
    pub focal_order: u64,
    pub p_nilpotent: bool,
    pub essential_classes: Vec<EssentialClass>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EssentialClass {
    pub representative: Vec<u32>,
    pub order: u64,
}

/// Computes the per-prime p-local profile and essential classes of a group.
pub fn analyze(table: &Arc<GroupTable>, name: &str, primes: &[u64]) -> Result<AnalysisReport> {
    let mut out = Vec::new();
    for &p in primes {
        let profile = PLocalProfile::compute(table, p)?;
        let essential = essential_class_representatives(table, &profile.sylow, p)?;
        out.push(PrimeAnalysis {
            prime: p,
            sylow_order: profile.sylow.order(),
            p_residual_order: profile.p_residual.order(),
            hyperfocal_order: profile.hyperfocal.order(),
            focal_order: profile.focal.order(),
            p_nilpotent: profile.is_p_nilpotent,
            essential_classes: essential
                .iter()
                .map(|q| EssentialClass {
                    representative: q.canonical_key(),
                    order: q.order(),
                })
                .collect(),
        });
    }
    Ok(AnalysisReport {
        name: name.into(),
        order: table.order(),
        degree: table.degree(),
        primes: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn analysis_report_round_trips_through_json() {
        let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let g = GroupTable::enumerate(3, &[a, b], 100).unwrap();
        let report = analyze(&g, "s3", &[2, 3]).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        assert_eq!(back.primes[0].hyperfocal_order, 1);
        assert!(back.primes[0].p_nilpotent);
        assert_eq!(back.primes[1].hyperfocal_order, 3);
    }
}
