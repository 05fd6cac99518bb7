//! Deterministic constructors for the example families: the affine and affine
//! semilinear groups over F_{p^n}, and SL(2,3) acting on the nonzero vectors
//! of F_3², together with the claim-verification reports the CLI exposes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::checkers::{abelian_hyperfocal_hypothesis, CheckerInput};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::fusion::{fusion_equal, hom_set, hom_set_in};
use crate::group::GroupTable;
use crate::perm::Permutation;
use crate::plocal::{
    enumerate_subgroups, hyperfocal_from_residual, sylow_subgroup, SubgroupFilter,
    DEFAULT_SUBGROUP_CAP,
};
use crate::subgroup::SubgroupHandle;

/// Desk-scale cap on the field order of the affine family.
pub const MAX_FIELD_ORDER: u64 = 512;

/// The affine semilinear group over F_q (q = p^n) with its distinguished
/// subgroups: G consists of all maps x ↦ a·x^(p^i) + b with a ≠ 0, ordered by
/// (i, a, b); `affine` is the subgroup with i = 0 and `translations` the
/// subgroup with i = 0, a = 1. The stabilizers of 0 give the multiplier
/// groups.
pub struct AffineFamily {
    pub prime: u64,
    pub degree_n: u32,
    pub field_order: u64,
    pub group: Arc<GroupTable>,
    /// H = all affine maps x ↦ ax + b.
    pub affine: SubgroupHandle,
    /// S = all translations x ↦ x + b; elementary abelian of order q.
    pub translations: SubgroupHandle,
    /// D = multiplications x ↦ ax; the stabilizer of 0 inside H.
    pub multipliers: SubgroupHandle,
    /// D̂ = the full stabilizer of 0: maps x ↦ a·x^(p^i).
    pub semilinear_multipliers: SubgroupHandle,
}

pub fn affine_semilinear_family(p: u64, n: u32) -> Result<AffineFamily> {
    if !crate::plocal::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n < 2 {
        return Err(Error::PreconditionViolated("n must be at least 2".into()));
    }
    if n as u64 % p == 0 {
        return Err(Error::PreconditionViolated(format!(
            "p = {} divides n = {}",
            p, n
        )));
    }
    let field = FiniteField::new(p, n)?;
    let q = field.order;
    if q > MAX_FIELD_ORDER {
        return Err(Error::PreconditionViolated(format!(
            "field order {} exceeds the desk cap {}",
            q, MAX_FIELD_ORDER
        )));
    }
    // elements in (i, a, b) order; (0, 1, 0) — the identity — comes first
    let mut elements = Vec::with_capacity((q * (q - 1) * n as u64) as usize);
    for i in 0..n {
        // frobenius^i as a table over field indices
        let frob: Vec<u64> = (0..q).map(|x| field.frobenius(x, i)).collect();
        for a in 1..q {
            for b in 0..q {
                let images: Vec<u16> = (0..q)
                    .map(|x| field.add(field.mul(a, frob[x as usize]), b) as u16)
                    .collect();
                elements.push(Permutation::new(images)?);
            }
        }
    }
    let pos = |i: u64, a: u64, b: u64| -> u32 { ((i * (q - 1) + (a - 1)) * q + b) as u32 };
    let omega = field.primitive_element();
    // generators: translations by the polynomial basis, multiplication by a
    // primitive element, and the frobenius map
    let mut gen_indices: Vec<u32> = (0..n).map(|k| pos(0, 1, field.p.pow(k))).collect();
    gen_indices.push(pos(0, omega, 0));
    gen_indices.push(pos(1, 1, 0));
    let group = GroupTable::from_closed_elements(q as u16, elements, gen_indices)?;

    let mut translations_set = crate::bitset::IndexSet::new(group.len() as u32);
    for b in 0..q {
        translations_set.insert(pos(0, 1, b));
    }
    let translations = SubgroupHandle::from_members(&group, translations_set);
    let mut affine_set = crate::bitset::IndexSet::new(group.len() as u32);
    for a in 1..q {
        for b in 0..q {
            affine_set.insert(pos(0, a, b));
        }
    }
    let affine = SubgroupHandle::from_members(&group, affine_set);
    let mut mult_set = crate::bitset::IndexSet::new(group.len() as u32);
    for a in 1..q {
        mult_set.insert(pos(0, a, 0));
    }
    let multipliers = SubgroupHandle::from_members(&group, mult_set);
    let mut semi_set = crate::bitset::IndexSet::new(group.len() as u32);
    for i in 0..n as u64 {
        for a in 1..q {
            semi_set.insert(pos(i, a, 0));
        }
    }
    let semilinear_multipliers = SubgroupHandle::from_members(&group, semi_set);
    Ok(AffineFamily {
        prime: p,
        degree_n: n,
        field_order: q,
        group,
        affine,
        translations,
        multipliers,
        semilinear_multipliers,
    })
}

/// One verified claim of the family report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClaimLine {
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AffineFamilyReport {
    pub prime: u64,
    pub degree_n: u32,
    pub field_order: u64,
    pub group_order: u64,
    pub claims: Vec<ClaimLine>,
    pub pass: bool,
}

fn claim_u64(claims: &mut Vec<ClaimLine>, name: &str, expected: u64, actual: u64) {
    claims.push(ClaimLine {
        claim: name.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        pass: expected == actual,
    });
}

fn claim_bool(claims: &mut Vec<ClaimLine>, name: &str, expected: bool, actual: bool) {
    claims.push(ClaimLine {
        claim: name.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        pass: expected == actual,
    });
}

/// Recomputes the family's quantitative claims and its control-of-fusion
/// pattern: the count of order-p subgroups of S, |Hom_H(A,B)| = p−1 on all of
/// them, hyperfocal = S, Hom equality between H and G on the order-p class,
/// and failure of full fusion control. Errors with `ClaimFailed` on the first
/// claim that does not match.
pub fn verify_affine_family_claims(p: u64, n: u32) -> Result<AffineFamilyReport> {
    let fam = affine_semilinear_family(p, n)?;
    let q = fam.field_order;
    let g = &fam.group;
    let mut claims = Vec::new();

    claim_u64(&mut claims, "group order = q(q-1)n", q * (q - 1) * n as u64, g.order());
    claim_u64(&mut claims, "affine subgroup order = q(q-1)", q * (q - 1), fam.affine.order());
    claim_u64(&mut claims, "translation subgroup order = q", q, fam.translations.order());
    claim_u64(
        &mut claims,
        "stabilizer of zero has order (q-1)n",
        (q - 1) * n as u64,
        fam.semilinear_multipliers.order(),
    );
    claim_bool(
        &mut claims,
        "translations are elementary abelian",
        true,
        fam.translations.is_elementary_abelian(p),
    );

    let order_p = enumerate_subgroups(&fam.translations, SubgroupFilter::CyclicPOr4, DEFAULT_SUBGROUP_CAP)?;
    let order_p: Vec<SubgroupHandle> = order_p.into_iter().filter(|h| h.order() == p).collect();
    claim_u64(
        &mut claims,
        "number of order-p subgroups of S = (q-1)/(p-1)",
        (q - 1) / (p - 1),
        order_p.len() as u64,
    );

    let mut hom_count_ok = true;
    let mut control_ok = true;
    for a in &order_p {
        for b in &order_p {
            let in_h = hom_set_in(&fam.affine, a, b);
            let in_g = hom_set(g, a, b);
            if in_h.len() as u64 != p - 1 {
                hom_count_ok = false;
            }
            if in_h != in_g {
                control_ok = false;
            }
        }
    }
    claim_bool(
        &mut claims,
        "|Hom_H(A,B)| = p-1 for all order-p A,B ≤ S",
        true,
        hom_count_ok,
    );
    claim_bool(
        &mut claims,
        "H controls fusion of the order-p subgroups",
        true,
        control_ok,
    );

    let sylow = sylow_subgroup(g, p)?;
    claim_bool(
        &mut claims,
        "S is the Sylow p-subgroup",
        true,
        sylow == fam.translations,
    );
    let hyperfocal = hyperfocal_from_residual(g, &sylow, p)?;
    claim_bool(&mut claims, "hyperfocal subgroup = S", true, hyperfocal == fam.translations);

    let diff = fusion_equal(g, &fam.affine, &fam.translations, p)?;
    claim_bool(&mut claims, "full fusion control fails", true, !diff.equal);

    let pass = claims.iter().all(|c| c.pass);
    let report = AffineFamilyReport {
        prime: p,
        degree_n: n,
        field_order: q,
        group_order: g.order(),
        claims,
        pass,
    };
    if let Some(bad) = report.claims.iter().find(|c| !c.pass) {
        return Err(Error::ClaimFailed {
            claim: bad.claim.clone(),
            expected: bad.expected.clone(),
            actual: bad.actual.clone(),
        });
    }
    Ok(report)
}

/// SL(2,3) as permutations of the 8 nonzero vectors of F_3², generated by the
/// two standard matrices [[1,1],[0,1]] and [[0,-1],[1,0]]. Returns the group
/// and its Sylow 2-subgroup (quaternion of order 8).
pub fn special_linear_2_3() -> (Arc<GroupTable>, SubgroupHandle) {
    fn point(x: u64, y: u64) -> u16 {
        (x + 3 * y - 1) as u16
    }
    fn vector(pt: u16) -> (u64, u64) {
        let v = pt as u64 + 1;
        (v % 3, v / 3)
    }
    fn matrix_perm(m: [u64; 4]) -> Permutation {
        let images: Vec<u16> = (0..8)
            .map(|pt| {
                let (x, y) = vector(pt);
                point((m[0] * x + m[1] * y) % 3, (m[2] * x + m[3] * y) % 3)
            })
            .collect();
        Permutation::new(images).expect("invertible matrices permute the nonzero vectors")
    }
    let gens = [matrix_perm([1, 1, 0, 1]), matrix_perm([0, 2, 1, 0])];
    let group = GroupTable::enumerate(8, &gens, 24).expect("SL(2,3) has order 24");
    let sylow = sylow_subgroup(&group, 2).expect("2 is prime");
    (group, sylow)
}

/// The obstruction demonstration on SL(2,3) at p = 2: with the hypothesis
/// class forced down to elementary abelian subgroups the hypothesis passes
/// while full fusion control fails, and with the correct exponent-≤4 class
/// the hypothesis fails with an order-4 witness pair.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ObstructionReport {
    pub elementary_hypothesis_holds: bool,
    pub exponent_four_hypothesis_holds: bool,
    pub full_fusion_equal: bool,
    pub witness_subgroup: Vec<u32>,
    pub witness_target: Vec<u32>,
    pub pass: bool,
}

pub fn quillen_obstruction_report() -> Result<ObstructionReport> {
    let (group, sylow) = special_linear_2_3();
    let mut input = CheckerInput::new(
        Arc::clone(&group),
        sylow.clone(),
        Some(sylow.clone()),
        2,
    );
    input.forced_elementary = true;
    let (elem_holds, _) = abelian_hyperfocal_hypothesis(&input)?;
    input.forced_elementary = false;
    let (exp4_holds, witness) = abelian_hyperfocal_hypothesis(&input)?;
    let diff = fusion_equal(&group, &sylow, &sylow, 2)?;
    let (wa, wb) = witness
        .map(|w| (w.a, w.b.unwrap_or_default()))
        .unwrap_or_default();
    let pass = elem_holds && !exp4_holds && !diff.equal;
    Ok(ObstructionReport {
        elementary_hypothesis_holds: elem_holds,
        exponent_four_hypothesis_holds: exp4_holds,
        full_fusion_equal: diff.equal,
        witness_subgroup: wa,
        witness_target: wb,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_family_orders_at_3_2() {
        let fam = affine_semilinear_family(3, 2).unwrap();
        assert_eq!(fam.group.order(), 144);
        assert_eq!(fam.affine.order(), 72);
        assert_eq!(fam.translations.order(), 9);
        assert_eq!(fam.multipliers.order(), 8);
        assert_eq!(fam.semilinear_multipliers.order(), 16);
    }

    #[test]
    fn affine_family_orders_at_2_3() {
        let fam = affine_semilinear_family(2, 3).unwrap();
        assert_eq!(fam.group.order(), 168);
        assert_eq!(fam.affine.order(), 56);
        assert_eq!(fam.translations.order(), 8);
        assert_eq!(fam.semilinear_multipliers.order(), 21);
    }

    #[test]
    fn affine_family_rejects_p_dividing_n() {
        assert!(matches!(
            affine_semilinear_family(2, 2),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            affine_semilinear_family(3, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn multipliers_act_freely_and_transitively_on_nonzero_points() {
        let fam = affine_semilinear_family(3, 2).unwrap();
        let g = &fam.group;
        // transitive: the orbit of point 1 under D covers all nonzero points;
        // free: only the identity fixes a nonzero point
        let mut orbit = std::collections::HashSet::new();
        for d in fam.multipliers.members().iter() {
            orbit.insert(g.element(d).image(1));
            for pt in 1..9u16 {
                if g.element(d).image(pt) == pt && d != 0 {
                    panic!("non-identity multiplier fixes a nonzero point");
                }
            }
        }
        assert_eq!(orbit.len(), 8);
    }

    #[test]
    fn frobenius_conjugation_raises_multipliers_to_p_th_power() {
        let fam = affine_semilinear_family(3, 2).unwrap();
        let g = &fam.group;
        let field = FiniteField::new(3, 2).unwrap();
        let q = 9u64;
        let pos = |i: u64, a: u64, b: u64| -> u32 { ((i * (q - 1) + (a - 1)) * q + b) as u32 };
        let sigma = pos(1, 1, 0);
        for a in 1..q {
            // σ (x↦ax) σ⁻¹ = (x ↦ a^p x), checked elementwise over D
            let conjugated = g.conj(pos(0, a, 0), g.inverse(sigma));
            assert_eq!(conjugated, pos(0, field.frobenius(a, 1), 0));
        }
    }

    #[test]
    fn sl23_structure() {
        let (g, s) = special_linear_2_3();
        assert_eq!(g.order(), 24);
        assert_eq!(s.order(), 8);
        let involutions = s
            .members()
            .iter()
            .filter(|&i| g.element_order(i) == 2)
            .count();
        assert_eq!(involutions, 1);
        assert_eq!(g.full().center().order(), 2);
        let q = crate::group::quotient_by_normal(&g, &g.full().center()).unwrap();
        assert_eq!(q.order(), 12);
        assert_eq!(
            crate::plocal::hyperfocal_from_residual(&g, &s, 2).unwrap().order(),
            8
        );
    }
}
