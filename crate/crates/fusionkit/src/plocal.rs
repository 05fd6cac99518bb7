//! p-local invariants: Sylow subgroups, the p-residual O^p(G), the hyperfocal
//! subgroup computed by two independent routes, the focal subgroup,
//! p-nilpotency, and filtered subgroup enumeration inside p-groups.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::fusion;
use crate::group::GroupTable;
use crate::subgroup::{subgroup_generated, SubgroupHandle};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut m = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        m *= p;
    }
    m
}

pub fn is_p_power(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

/// Default cap for p-group subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 100_000;

/// A Sylow p-subgroup found by normalizer climbing: start from a cyclic
/// subgroup on a p-element of maximal p-power order, then repeatedly extend by
/// a p-element of the normalizer whose image modulo the current subgroup has
/// order p. Candidates are scanned in element-index order, so the result is
/// deterministic. Returns the trivial subgroup when p does not divide |G|.
pub fn sylow_subgroup(table: &Arc<GroupTable>, p: u64) -> Result<SubgroupHandle> {
    sylow_subgroup_from_seed(table, p, None)
}

/// Same climb, but optionally seeded with a chosen starting p-element; used to
/// cross-check that Sylow subgroups found from different seeds are conjugate.
pub fn sylow_subgroup_from_seed(
    table: &Arc<GroupTable>,
    p: u64,
    seed: Option<u32>,
) -> Result<SubgroupHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(table.order(), p);
    if target == 1 {
        return Ok(table.trivial());
    }
    let start = match seed {
        Some(s) => {
            if !is_p_power(table.element_order(s) as u64, p) || s == 0 {
                return Err(Error::PreconditionViolated(
                    "seed must be a non-identity p-element".into(),
                ));
            }
            s
        }
        None => {
            let mut best = 0u32;
            let mut best_order = 1u64;
            for i in 1..table.len() as u32 {
                let o = table.element_order(i) as u64;
                if o > best_order && is_p_power(o, p) {
                    best = i;
                    best_order = o;
                }
            }
            best
        }
    };
    let full = table.full();
    let mut current = subgroup_generated(table, &[start]);
    while current.order() < target {
        let normalizer = full.normalizer_of(&current);
        let mut extended = false;
        for y in normalizer.members().iter() {
            if current.contains(y) {
                continue;
            }
            let o = table.element_order(y) as u64;
            if !is_p_power(o, p) {
                continue;
            }
            // image of y in N/current has order p exactly when y^p lands inside
            let yp = pow_index(table, y, p);
            if current.contains(yp) {
                let mut gens = current.generator_indices().to_vec();
                gens.push(y);
                current = subgroup_generated(table, &gens);
                extended = true;
                break;
            }
        }
        if !extended {
            // cannot happen for a correct table: Sylow theory guarantees an extension
            return Err(Error::SelfCheckFailed(format!(
                "normalizer climb stalled at order {} (target {})",
                current.order(),
                target
            )));
        }
    }
    Ok(current)
}

fn pow_index(table: &GroupTable, x: u32, e: u64) -> u32 {
    let mut acc = 0u32;
    for _ in 0..e {
        acc = table.mul(acc, x);
    }
    acc
}

/// O^p(G): the subgroup generated by every element of order coprime to p.
/// That generating set is closed under conjugation, so the result is normal
/// and is the smallest normal subgroup with p-group quotient.
pub fn p_residual(table: &Arc<GroupTable>, p: u64) -> Result<SubgroupHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let gens: Vec<u32> = (1..table.len() as u32)
        .filter(|&i| table.element_order(i) as u64 % p != 0)
        .collect();
    Ok(subgroup_generated(table, &gens))
}

fn ensure_sylow(table: &Arc<GroupTable>, sylow: &SubgroupHandle, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    sylow.assert_parent(table);
    let expected = p_part(table.order(), p);
    if sylow.order() != expected {
        return Err(Error::SylowMismatch {
            prime: p,
            actual: sylow.order(),
            expected,
        });
    }
    Ok(())
}

/// Hyperfocal subgroup via the residual route: `S ∩ O^p(G)`.
pub fn hyperfocal_from_residual(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<SubgroupHandle> {
    ensure_sylow(table, sylow, p)?;
    Ok(sylow.intersection(&p_residual(table, p)?))
}

/// Hyperfocal subgroup via the automizer route: the subgroup of S generated by
/// all elements `x⁻¹ φ(x)` with `x ∈ Q` and `φ ∈ O^p(Aut_G(Q))`, for Q ranging
/// over representatives of the S-conjugacy classes of subgroups of S. Class
/// representatives suffice; that claim is exercised against the residual route
/// by the test suite.
pub fn hyperfocal_from_automizers(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<SubgroupHandle> {
    ensure_sylow(table, sylow, p)?;
    let subgroups = enumerate_subgroups(sylow, SubgroupFilter::All, DEFAULT_SUBGROUP_CAP)?;
    let reps = s_class_representatives(sylow, &subgroups);
    let mut gens: Vec<u32> = Vec::new();
    for q in &reps {
        let aut = fusion::automizer(table, q, None);
        let op = p_residual(&aut.aut, p)?;
        let q_members = q.canonical_key();
        for phi_idx in op.members().iter() {
            let phi = aut.aut.element(phi_idx);
            for (pos, &x) in q_members.iter().enumerate() {
                let image = q_members[phi.image(pos as u16) as usize];
                let g = table.mul(table.inverse(x), image);
                if g != 0 {
                    gens.push(g);
                }
            }
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let result = subgroup_generated(table, &gens);
    debug_assert!(result.is_subgroup_of(sylow));
    Ok(result)
}

/// Representatives (least by order, then canonical key) of the conjugacy
/// classes of the given subgroups under the acting handle.
pub fn s_class_representatives(
    scope: &SubgroupHandle,
    subgroups: &[SubgroupHandle],
) -> Vec<SubgroupHandle> {
    let mut sorted: Vec<&SubgroupHandle> = subgroups.iter().collect();
    sorted.sort_by_cached_key(|h| h.sort_key());
    let mut reps = Vec::new();
    let mut claimed: Vec<SubgroupHandle> = Vec::new();
    for h in sorted {
        if claimed.contains(h) {
            continue;
        }
        reps.push(h.clone());
        for c in crate::subgroup::conjugation_orbit(scope, h) {
            if !claimed.contains(&c) {
                claimed.push(c);
            }
        }
    }
    reps
}

/// Focal subgroup `S ∩ [G, G]`.
pub fn focal_subgroup(
    table: &Arc<GroupTable>,
    sylow: &SubgroupHandle,
    p: u64,
) -> Result<SubgroupHandle> {
    ensure_sylow(table, sylow, p)?;
    Ok(sylow.intersection(&table.full().derived_subgroup()))
}

/// p-nilpotency decided by the hyperfocal criterion: G has a normal
/// p-complement iff `S ∩ O^p(G)` is trivial.
pub fn is_p_nilpotent(table: &Arc<GroupTable>, p: u64) -> Result<bool> {
    let sylow = sylow_subgroup(table, p)?;
    Ok(hyperfocal_from_residual(table, &sylow, p)?.is_trivial())
}

/// Definitional p-nilpotency check, independent of the residual machinery:
/// the set of all p′-elements is a normal p-complement iff it is closed under
/// multiplication. Kept as the test-suite oracle for [`is_p_nilpotent`].
pub fn has_normal_p_complement_direct(table: &Arc<GroupTable>, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pprime: Vec<u32> = (0..table.len() as u32)
        .filter(|&i| table.element_order(i) as u64 % p != 0)
        .collect();
    let mut set = IndexSet::new(table.len() as u32);
    for &i in &pprime {
        set.insert(i);
    }
    for &a in &pprime {
        for &b in &pprime {
            if !set.contains(table.mul(a, b)) {
                return Ok(false);
            }
        }
    }
    // closed: it is then the (unique) normal subgroup of full p′-order
    let k = SubgroupHandle::from_members(table, set);
    debug_assert_eq!(k.order(), table.order() / p_part(table.order(), p));
    debug_assert!(k.is_normal_in_parent());
    Ok(true)
}

/// Filters for p-group subgroup enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupFilter {
    All,
    ElementaryAbelian,
    /// Abelian of exponent 1, 2 or 4 (only meaningful inside 2-groups).
    AbelianExponentLe4,
    /// Cyclic of order exactly p, or exactly 4 when p = 2.
    CyclicPOr4,
    /// Abelian and maximal under inclusion among abelian subgroups.
    MaximalAbelian,
}

/// All subgroups of a p-group handle matching the filter, by layered cyclic
/// extension: each subgroup of order p^(k+1) arises from one of its maximal
/// subgroups H (necessarily normal in it) extended by an element x of
/// N_P(H) \ H with x^p ∈ H. Results are sorted by (order, canonical key).
pub fn enumerate_subgroups(
    p_group: &SubgroupHandle,
    filter: SubgroupFilter,
    cap: usize,
) -> Result<Vec<SubgroupHandle>> {
    let order = p_group.order();
    let p = match smallest_prime_factor(order) {
        Some(p) if is_p_power(order, p) => p,
        None => {
            // trivial group
            let all = vec![trivial_of(p_group)];
            return Ok(apply_filter(&all, filter, 2));
        }
        _ => return Err(Error::NotPGroup(order)),
    };
    let parent = p_group.parent();
    let mut all: Vec<SubgroupHandle> = vec![trivial_of(p_group)];
    let mut current = all.clone();
    while !current.is_empty() {
        let mut next: BTreeMap<Vec<u32>, SubgroupHandle> = BTreeMap::new();
        for h in &current {
            let normalizer = p_group.normalizer_of(h);
            for x in normalizer.members().iter() {
                if h.contains(x) {
                    continue;
                }
                let xp = pow_index(parent, x, p);
                if !h.contains(xp) {
                    continue;
                }
                let mut gens = h.generator_indices().to_vec();
                gens.push(x);
                let ext = subgroup_generated(parent, &gens);
                debug_assert_eq!(ext.order(), h.order() * p);
                next.entry(ext.canonical_key()).or_insert(ext);
            }
        }
        current = next.into_values().collect();
        if all.len() + current.len() > cap {
            return Err(Error::CapExceeded {
                cap,
                context: "enumerating subgroups of a p-group".into(),
            });
        }
        all.extend(current.iter().cloned());
    }
    all.sort_by_cached_key(|h| h.sort_key());
    Ok(apply_filter(&all, filter, p))
}

fn trivial_of(h: &SubgroupHandle) -> SubgroupHandle {
    SubgroupHandle::from_members(
        h.parent(),
        IndexSet::singleton(h.parent().len() as u32, 0),
    )
}

fn apply_filter(all: &[SubgroupHandle], filter: SubgroupFilter, p: u64) -> Vec<SubgroupHandle> {
    match filter {
        SubgroupFilter::All => all.to_vec(),
        SubgroupFilter::ElementaryAbelian => all
            .iter()
            .filter(|h| h.is_elementary_abelian(p))
            .cloned()
            .collect(),
        SubgroupFilter::AbelianExponentLe4 => all
            .iter()
            .filter(|h| h.is_abelian() && matches!(h.exponent(), 1 | 2 | 4))
            .cloned()
            .collect(),
        SubgroupFilter::CyclicPOr4 => all
            .iter()
            .filter(|h| {
                h.is_cyclic() && (h.order() == p || (p == 2 && h.order() == 4))
            })
            .cloned()
            .collect(),
        SubgroupFilter::MaximalAbelian => {
            let abelian: Vec<&SubgroupHandle> = all.iter().filter(|h| h.is_abelian()).collect();
            abelian
                .iter()
                .filter(|h| {
                    !abelian
                        .iter()
                        .any(|k| k.order() > h.order() && h.is_subgroup_of(k))
                })
                .map(|h| (*h).clone())
                .collect()
        }
    }
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

/// All p-local invariants of a group at one prime.
pub struct PLocalProfile {
    pub prime: u64,
    pub sylow: SubgroupHandle,
    pub p_residual: SubgroupHandle,
    pub hyperfocal: SubgroupHandle,
    pub focal: SubgroupHandle,
    pub is_p_nilpotent: bool,
}

impl PLocalProfile {
    pub fn compute(table: &Arc<GroupTable>, p: u64) -> Result<PLocalProfile> {
        let sylow = sylow_subgroup(table, p)?;
        let residual = p_residual(table, p)?;
        let hyperfocal = sylow.intersection(&residual);
        let focal = focal_subgroup(table, &sylow, p)?;
        let nilpotent = hyperfocal.is_trivial();
        debug_assert!(hyperfocal.is_subgroup_of(&focal));
        Ok(PLocalProfile {
            prime: p,
            sylow,
            p_residual: residual,
            hyperfocal,
            focal,
            is_p_nilpotent: nilpotent,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn s3() -> Arc<GroupTable> {
        let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        GroupTable::enumerate(3, &[a, b], 100).unwrap()
    }

    #[test]
    fn sylow_of_s3() {
        let g = s3();
        assert_eq!(sylow_subgroup(&g, 3).unwrap().order(), 3);
        assert_eq!(sylow_subgroup(&g, 2).unwrap().order(), 2);
        assert_eq!(sylow_subgroup(&g, 5).unwrap().order(), 1);
        assert!(matches!(sylow_subgroup(&g, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn residual_of_s3() {
        let g = s3();
        assert_eq!(p_residual(&g, 2).unwrap().order(), 3);
        assert_eq!(p_residual(&g, 3).unwrap().order(), 6);
    }

    #[test]
    fn residual_of_p_group_is_trivial() {
        let c4 = GroupTable::enumerate(
            4,
            &[Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()],
            10,
        )
        .unwrap();
        assert!(p_residual(&c4, 2).unwrap().is_trivial());
    }

    #[test]
    fn hyperfocal_of_s3_at_two_is_trivial() {
        let g = s3();
        let s = sylow_subgroup(&g, 2).unwrap();
        assert!(hyperfocal_from_residual(&g, &s, 2).unwrap().is_trivial());
    }

    #[test]
    fn sylow_mismatch_is_rejected() {
        let g = s3();
        let t = g.trivial();
        assert!(matches!(
            hyperfocal_from_residual(&g, &t, 2),
            Err(Error::SylowMismatch { .. })
        ));
    }

    #[test]
    fn focal_of_s3_at_three_is_a3() {
        let g = s3();
        let s = sylow_subgroup(&g, 3).unwrap();
        assert_eq!(focal_subgroup(&g, &s, 3).unwrap().order(), 3);
    }

    #[test]
    fn focal_of_abelian_group_is_trivial() {
        let c4 = GroupTable::enumerate(
            4,
            &[Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()],
            10,
        )
        .unwrap();
        let s = sylow_subgroup(&c4, 2).unwrap();
        assert!(focal_subgroup(&c4, &s, 2).unwrap().is_trivial());
    }

    #[test]
    fn p_nilpotency_of_s3() {
        let g = s3();
        assert!(is_p_nilpotent(&g, 2).unwrap());
        assert!(!is_p_nilpotent(&g, 3).unwrap());
        assert_eq!(has_normal_p_complement_direct(&g, 2).unwrap(), true);
        assert_eq!(has_normal_p_complement_direct(&g, 3).unwrap(), false);
    }

    #[test]
    fn c3xc3_has_four_order_three_subgroups() {
        let g = GroupTable::enumerate(
            6,
            &[
                Permutation::from_cycles(6, &[vec![0, 1, 2]]).unwrap(),
                Permutation::from_cycles(6, &[vec![3, 4, 5]]).unwrap(),
            ],
            20,
        )
        .unwrap();
        let cyclic =
            enumerate_subgroups(&g.full(), SubgroupFilter::CyclicPOr4, 1000).unwrap();
        assert_eq!(cyclic.len(), 4);
        assert!(cyclic.iter().all(|h| h.order() == 3));
        let all = enumerate_subgroups(&g.full(), SubgroupFilter::All, 1000).unwrap();
        assert_eq!(all.len(), 6);
    }
}
