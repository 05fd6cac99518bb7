//! Fusion data of a finite group: conjugation Hom-sets, automizers,
//! fully-normalized / centric / radical / essential predicates, and fusion
//! equality between a group and a subgroup of index prime to p.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::group::{quotient_by_normal, GroupTable};
use crate::perm::Permutation;
use crate::plocal::{
    self, enumerate_subgroups, is_p_power, p_part, SubgroupFilter, DEFAULT_SUBGROUP_CAP,
};
use crate::subgroup::{conjugation_orbit, subgroup_generated, SubgroupHandle, SubTable};

/// The set `Hom_G(A, B)` of conjugation-induced homomorphisms from A to B,
/// stored as deduplicated full function tables. A table maps the k-th member
/// of A (in ascending index order) to a parent element index inside B. Tables
/// are sorted lexicographically, so the set has one canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    pub domain_members: Vec<u32>,
    pub tables: Vec<Vec<u32>>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn contains(&self, table: &[u32]) -> bool {
        self.tables.binary_search_by(|t| t.as_slice().cmp(table)).is_ok()
    }

    /// Tables present in `self` but not in `other` (domains must agree).
    pub fn difference(&self, other: &HomSet) -> Vec<Vec<u32>> {
        debug_assert_eq!(self.domain_members, other.domain_members);
        self.tables
            .iter()
            .filter(|t| !other.contains(t))
            .cloned()
            .collect()
    }

    /// A map as (from, to) pairs of parent element indices.
    pub fn pairs(&self, table: &[u32]) -> Vec<(u32, u32)> {
        self.domain_members
            .iter()
            .copied()
            .zip(table.iter().copied())
            .collect()
    }
}

/// `Hom` computed by scanning every element of `scope`: the distinct
/// restrictions `c_g|_A : x ↦ g⁻¹xg` over all g ∈ scope with `A^g ≤ B`.
pub fn hom_set_in(scope: &SubgroupHandle, a: &SubgroupHandle, b: &SubgroupHandle) -> HomSet {
    let table = scope.parent();
    a.assert_parent(table);
    b.assert_parent(table);
    let domain_members = a.canonical_key();
    let gens = a.generator_indices();
    let mut seen_keys: HashSet<Vec<u32>> = HashSet::new();
    let mut tables: Vec<Vec<u32>> = Vec::new();
    for g in scope.members().iter() {
        // a homomorphism is determined by its generator images
        let mut key = Vec::with_capacity(gens.len());
        let mut ok = true;
        for &x in gens {
            let y = table.conj(x, g);
            if !b.contains(y) {
                ok = false;
                break;
            }
            key.push(y);
        }
        if !ok || !seen_keys.insert(key) {
            continue;
        }
        let full: Vec<u32> = domain_members.iter().map(|&x| table.conj(x, g)).collect();
        debug_assert!(full.iter().all(|&y| b.contains(y)));
        tables.push(full);
    }
    tables.sort();
    HomSet {
        domain_members,
        tables,
    }
}

/// `Hom_G(A, B)` over the whole group table.
pub fn hom_set(table: &Arc<GroupTable>, a: &SubgroupHandle, b: &SubgroupHandle) -> HomSet {
    hom_set_in(&table.full(), a, b)
}

/// The automizer `Aut_G(Q)`: the image of `N_G(Q)` acting on Q, realized as a
/// group table of permutations of Q's ascending member list. `inner` is the
/// image of Q itself and `from_s` the image of `N_S(Q)` when S is supplied.
pub struct Automizer {
    pub base: SubgroupHandle,
    /// Ascending member indices of the base; automizer permutations act on
    /// positions into this list.
    pub base_members: Vec<u32>,
    pub aut: Arc<GroupTable>,
    pub inner: SubgroupHandle,
    pub from_s: Option<SubgroupHandle>,
    pub normalizer_order: u64,
    pub centralizer_order: u64,
}

impl Automizer {
    /// Automizer permutation of `g` (which must normalize the base):
    /// position k ↦ position of `g·m_k·g⁻¹`. Left conjugation makes
    /// `g ↦ perm` a homomorphism under the table's composition convention.
    fn action_perm(
        table: &GroupTable,
        base_members: &[u32],
        pos_of: &HashMap<u32, u16>,
        g: u32,
    ) -> Permutation {
        let ginv = table.inverse(g);
        let images: Vec<u16> = base_members
            .iter()
            .map(|&m| pos_of[&table.conj(m, ginv)])
            .collect();
        Permutation::new(images).expect("conjugation acts bijectively")
    }

    /// Index in the automizer table of the permutation induced by `g`.
    pub fn image_of(&self, g: u32) -> Option<u32> {
        let table = self.base.parent();
        let pos_of: HashMap<u32, u16> = self
            .base_members
            .iter()
            .enumerate()
            .map(|(k, &m)| (m, k as u16))
            .collect();
        self.aut
            .index_of(&Self::action_perm(table, &self.base_members, &pos_of, g))
    }
}

/// Builds `Aut_scope(Q)` for any scope handle (the whole group via
/// [`automizer`]). Panics if handles disagree on the parent table.
pub fn automizer_in(
    scope: &SubgroupHandle,
    q: &SubgroupHandle,
    s: Option<&SubgroupHandle>,
) -> Automizer {
    let table = scope.parent();
    q.assert_parent(table);
    let base_members = q.canonical_key();
    let pos_of: HashMap<u32, u16> = base_members
        .iter()
        .enumerate()
        .map(|(k, &m)| (m, k as u16))
        .collect();
    let normalizer = scope.normalizer_of(q);
    let centralizer = scope.centralizer_of(q);
    let gen_perms: Vec<Permutation> = normalizer
        .generator_indices()
        .iter()
        .map(|&g| Automizer::action_perm(table, &base_members, &pos_of, g))
        .collect();
    let aut_order = (normalizer.order() / centralizer.order()) as usize;
    let aut = GroupTable::enumerate(base_members.len() as u16, &gen_perms, aut_order.max(1))
        .expect("automizer closure stays within |N|/|C|");
    debug_assert_eq!(aut.order(), aut_order as u64);
    let image_gens = |h: &SubgroupHandle| -> Vec<u32> {
        h.generator_indices()
            .iter()
            .map(|&g| {
                aut.index_of(&Automizer::action_perm(table, &base_members, &pos_of, g))
                    .expect("image of a normalizing element lies in the automizer")
            })
            .collect()
    };
    let inner = subgroup_generated(&aut, &image_gens(q));
    let from_s = s.map(|s_handle| {
        let ns_q = s_handle.normalizer_of(q);
        subgroup_generated(&aut, &image_gens(&ns_q))
    });
    Automizer {
        base: q.clone(),
        base_members,
        aut,
        inner,
        from_s,
        normalizer_order: normalizer.order(),
        centralizer_order: centralizer.order(),
    }
}

/// `Aut_G(Q)` over the whole table.
pub fn automizer(table: &Arc<GroupTable>, q: &SubgroupHandle, s: Option<&SubgroupHandle>) -> Automizer {
    automizer_in(&table.full(), q, s)
}

/// Verdict of a fusion-equality comparison, with a re-verified witness when
/// the two fusion systems differ.
#[derive(Debug, Clone)]
pub struct FusionDiff {
    pub equal: bool,
    pub witness: Option<FusionWitness>,
}

/// A subgroup Q ≤ S and a conjugation map in `Hom_G(Q,S) \ Hom_H(Q,S)`.
#[derive(Debug, Clone)]
pub struct FusionWitness {
    pub subgroup: SubgroupHandle,
    /// (from, to) pairs of parent element indices.
    pub map: Vec<(u32, u32)>,
}

fn check_fusion_preconditions(
    table: &Arc<GroupTable>,
    h: &SubgroupHandle,
    s: &SubgroupHandle,
    p: u64,
) -> Result<()> {
    if !plocal::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    h.assert_parent(table);
    s.assert_parent(table);
    if s.order() != p_part(table.order(), p) || !is_p_power(s.order(), p) {
        return Err(Error::PreconditionViolated(
            "S is not a Sylow p-subgroup of G".into(),
        ));
    }
    if !s.is_subgroup_of(h) {
        return Err(Error::PreconditionViolated("S is not contained in H".into()));
    }
    Ok(())
}

/// Decides `F_S(H) = F_S(G)` by comparing `Hom_H(Q,S)` with `Hom_G(Q,S)` for
/// Q over representatives of the H-conjugacy classes of subgroups of S
/// (pre/post-composition with H-maps makes representatives sufficient; the
/// all-subgroups scan is kept as [`fusion_equal_all_subgroups`]). On failure
/// the witness is the least failing subgroup (order, then canonical key) with
/// the lexicographically least missing map.
pub fn fusion_equal(
    table: &Arc<GroupTable>,
    h: &SubgroupHandle,
    s: &SubgroupHandle,
    p: u64,
) -> Result<FusionDiff> {
    check_fusion_preconditions(table, h, s, p)?;
    let subgroups = enumerate_subgroups(s, SubgroupFilter::All, DEFAULT_SUBGROUP_CAP)?;
    // H-conjugacy classes over the subgroups of S
    let mut sorted: Vec<SubgroupHandle> = subgroups;
    sorted.sort_by_cached_key(|x| x.sort_key());
    let mut class_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut classes: Vec<Vec<SubgroupHandle>> = Vec::new();
    for q in &sorted {
        if class_of.contains_key(&q.canonical_key()) {
            continue;
        }
        let id = classes.len();
        let mut class = Vec::new();
        for c in conjugation_orbit(h, q) {
            if c.is_subgroup_of(s) && !class_of.contains_key(&c.canonical_key()) {
                class_of.insert(c.canonical_key(), id);
                class.push(c);
            }
        }
        classes.push(class);
    }
    let mut failing: Vec<&SubgroupHandle> = Vec::new();
    for class in &classes {
        let rep = &class[0];
        let in_h = hom_set_in(h, rep, s);
        let in_g = hom_set(table, rep, s);
        if in_h != in_g {
            failing.extend(class.iter());
        }
    }
    if failing.is_empty() {
        return Ok(FusionDiff {
            equal: true,
            witness: None,
        });
    }
    failing.sort_by_cached_key(|x| x.sort_key());
    let q = failing[0].clone();
    let in_h = hom_set_in(h, &q, s);
    let in_g = hom_set(table, &q, s);
    let missing = in_g.difference(&in_h);
    let map_table = missing
        .first()
        .expect("Hom_H ⊆ Hom_G, so a failing class has a G-only map")
        .clone();
    debug_assert!(!in_h.contains(&map_table));
    Ok(FusionDiff {
        equal: false,
        witness: Some(FusionWitness {
            map: in_g.pairs(&map_table),
            subgroup: q,
        }),
    })
}

/// Exhaustive variant of [`fusion_equal`] comparing every subgroup of S
/// directly; the correctness oracle for the class-representative shortcut.
pub fn fusion_equal_all_subgroups(
    table: &Arc<GroupTable>,
    h: &SubgroupHandle,
    s: &SubgroupHandle,
    p: u64,
) -> Result<bool> {
    check_fusion_preconditions(table, h, s, p)?;
    let subgroups = enumerate_subgroups(s, SubgroupFilter::All, DEFAULT_SUBGROUP_CAP)?;
    for q in &subgroups {
        if hom_set_in(h, q, s) != hom_set(table, q, s) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ensure_q_in_s(q: &SubgroupHandle, s: &SubgroupHandle) -> Result<()> {
    if !q.is_subgroup_of(s) {
        return Err(Error::PreconditionViolated("Q is not contained in S".into()));
    }
    Ok(())
}

/// Q is fully normalized in `F_S(G)`: `|N_S(Q)|` is maximal among all
/// G-conjugates of Q lying inside S.
pub fn is_fully_normalized(
    table: &Arc<GroupTable>,
    s: &SubgroupHandle,
    q: &SubgroupHandle,
) -> Result<bool> {
    ensure_q_in_s(q, s)?;
    let own = s.normalizer_of(q).order();
    for c in conjugation_orbit(&table.full(), q) {
        if c.is_subgroup_of(s) && s.normalizer_of(&c).order() > own {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Q is centric in `F_S(G)`: every G-conjugate Q' ≤ S satisfies C_S(Q') ≤ Q'.
pub fn is_centric(
    table: &Arc<GroupTable>,
    s: &SubgroupHandle,
    q: &SubgroupHandle,
) -> Result<bool> {
    ensure_q_in_s(q, s)?;
    for c in conjugation_orbit(&table.full(), q) {
        if c.is_subgroup_of(s) && !s.centralizer_of(&c).is_subgroup_of(&c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The outer automizer `Out_F(Q) = Aut_G(Q) / Inn(Q)` as a group table.
pub fn outer_automizer(aut: &Automizer) -> Result<Arc<GroupTable>> {
    quotient_by_normal(&aut.aut, &aut.inner)
}

/// Largest normal p-subgroup, computed as the intersection of all Sylow
/// p-subgroups (the conjugates of any one of them).
pub fn p_core(table: &Arc<GroupTable>, p: u64) -> Result<SubgroupHandle> {
    let sylow = plocal::sylow_subgroup(table, p)?;
    let full = table.full();
    let mut core = sylow.members().clone();
    for c in conjugation_orbit(&full, &sylow) {
        core = core.intersection(c.members());
    }
    Ok(SubgroupHandle::from_members(table, core))
}

/// Q is radical in `F_S(G)`: `O_p(Out_F(Q)) = 1`.
pub fn is_radical(
    table: &Arc<GroupTable>,
    s: &SubgroupHandle,
    q: &SubgroupHandle,
    p: u64,
) -> Result<bool> {
    ensure_q_in_s(q, s)?;
    let aut = automizer(table, q, Some(s));
    let out = outer_automizer(&aut)?;
    Ok(p_core(&out, p)?.is_trivial())
}

/// Whether a group has a strongly p-embedded subgroup, decided by the
/// Sylow-intersection graph: vertices the Sylow p-subgroups, an edge where two
/// intersect non-trivially; strongly p-embedded subgroups exist iff p divides
/// the order and the graph is disconnected.
pub fn has_strongly_p_embedded(table: &Arc<GroupTable>, p: u64) -> Result<bool> {
    if table.order() % p != 0 {
        return Ok(false);
    }
    let sylow = plocal::sylow_subgroup(table, p)?;
    let sylows = conjugation_orbit(&table.full(), &sylow);
    if sylows.len() < 2 {
        return Ok(false);
    }
    // union-find over the intersection graph
    let mut comp: Vec<usize> = (0..sylows.len()).collect();
    fn find(comp: &mut Vec<usize>, i: usize) -> usize {
        if comp[i] != i {
            let r = find(comp, comp[i]);
            comp[i] = r;
        }
        comp[i]
    }
    for i in 0..sylows.len() {
        for j in i + 1..sylows.len() {
            if sylows[i].members().intersection(sylows[j].members()).len() > 1 {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let root = find(&mut comp, 0);
    Ok((1..sylows.len()).any(|i| find(&mut comp, i) != root))
}

/// Q is essential in `F_S(G)`: proper in S, centric, and `Out_F(Q)` has a
/// strongly p-embedded subgroup.
pub fn is_essential(
    table: &Arc<GroupTable>,
    s: &SubgroupHandle,
    q: &SubgroupHandle,
    p: u64,
) -> Result<bool> {
    ensure_q_in_s(q, s)?;
    if q.order() >= s.order() {
        return Ok(false);
    }
    if !is_centric(table, s, q)? {
        return Ok(false);
    }
    let aut = automizer(table, q, Some(s));
    let out = outer_automizer(&aut)?;
    has_strongly_p_embedded(&out, p)
}

/// Representatives (least by order, then key) of the G-conjugacy classes of
/// essential subgroups of S.
pub fn essential_class_representatives(
    table: &Arc<GroupTable>,
    s: &SubgroupHandle,
    p: u64,
) -> Result<Vec<SubgroupHandle>> {
    let subgroups = enumerate_subgroups(s, SubgroupFilter::All, DEFAULT_SUBGROUP_CAP)?;
    let mut essentials = Vec::new();
    for q in &subgroups {
        if is_essential(table, s, q, p)? {
            essentials.push(q.clone());
        }
    }
    Ok(plocal::s_class_representatives(&table.full(), &essentials))
}

/// `N_G(S)` re-indexed as its own group table together with S's handle inside
/// it — the group realizing the normalizer fusion system of S.
pub fn normalizer_fusion_group(
    table: &Arc<GroupTable>,
    s: &SubgroupHandle,
    p: u64,
) -> Result<(SubTable, SubgroupHandle)> {
    check_fusion_preconditions(table, &table.full(), s, p)?;
    let n = table.full().normalizer_of(s);
    let sub = n.to_group_table();
    let s_inside = sub.map_handle(s);
    Ok((sub, s_inside))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plocal::sylow_subgroup;

    fn s3() -> Arc<GroupTable> {
        let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        GroupTable::enumerate(3, &[a, b], 100).unwrap()
    }

    #[test]
    fn hom_from_trivial_subgroup_is_single_map() {
        let g = s3();
        let t = g.trivial();
        let f = g.full();
        assert_eq!(hom_set(&g, &t, &f).len(), 1);
    }

    #[test]
    fn automizer_of_central_subgroup_is_trivial() {
        let c4 = GroupTable::enumerate(
            4,
            &[Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()],
            10,
        )
        .unwrap();
        let z = c4.full().center();
        let aut = automizer(&c4, &z, None);
        assert_eq!(aut.aut.order(), 1);
    }

    #[test]
    fn fusion_equal_with_self_is_true() {
        let g = s3();
        let s = sylow_subgroup(&g, 3).unwrap();
        let diff = fusion_equal(&g, &g.full(), &s, 3).unwrap();
        assert!(diff.equal);
        assert!(diff.witness.is_none());
    }

    #[test]
    fn s3_inner_fusion_at_three_differs() {
        let g = s3();
        let s = sylow_subgroup(&g, 3).unwrap();
        let diff = fusion_equal(&g, &s, &s, 3).unwrap();
        assert!(!diff.equal);
        let w = diff.witness.unwrap();
        assert_eq!(w.subgroup.order(), 3);
    }

    #[test]
    fn normalizer_fusion_group_of_s3_at_three() {
        let g = s3();
        let s = sylow_subgroup(&g, 3).unwrap();
        let (sub, s_in) = normalizer_fusion_group(&g, &s, 3).unwrap();
        assert_eq!(sub.table.order(), 6);
        assert_eq!(s_in.order(), 3);
    }

    #[test]
    fn sylow_graph_criterion_on_s3_and_c3() {
        let g = s3();
        // S3 has three pairwise-trivially-intersecting Sylow 2-subgroups
        assert!(has_strongly_p_embedded(&g, 2).unwrap());
        // and a single (normal) Sylow 3-subgroup
        assert!(!has_strongly_p_embedded(&g, 3).unwrap());
        let c3 = GroupTable::enumerate(
            3,
            &[Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()],
            10,
        )
        .unwrap();
        assert!(!has_strongly_p_embedded(&c3, 3).unwrap());
    }
}
