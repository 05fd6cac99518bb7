//! Subgroups of an enumerated group as bitsets over element indices, and the
//! basic subgroup calculus: generation, conjugation, normalizers, centralizers,
//! centers, commutators, central series and element-order predicates.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::IndexSet;
use crate::group::GroupTable;
use crate::perm::Permutation;

/// A subgroup of a [`GroupTable`], identified by the bitset of its member
/// indices. Two handles over the same parent are equal iff their bitsets are.
/// The generator list is redundant data kept for fast scans; it always
/// generates exactly the member set.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Arc<GroupTable>,
    members: IndexSet,
    generators: Vec<u32>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}
impl Eq for SubgroupHandle {}

impl std::hash::Hash for SubgroupHandle {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent.order())
    }
}

/// Closure of the given element indices (plus the identity) inside `parent`.
pub fn subgroup_generated(parent: &Arc<GroupTable>, indices: &[u32]) -> SubgroupHandle {
    let members = close_indices(parent, std::iter::once(0).chain(indices.iter().copied()));
    let generators = reduce_generators(parent, &members, indices);
    SubgroupHandle {
        parent: Arc::clone(parent),
        members,
        generators,
    }
}

/// BFS closure of a set of element indices under the group operation.
fn close_indices(parent: &GroupTable, seed: impl IntoIterator<Item = u32>) -> IndexSet {
    let n = parent.len() as u32;
    let mut set = IndexSet::new(n);
    let mut queue: Vec<u32> = Vec::new();
    set.insert(0);
    queue.push(0);
    let mut gens: Vec<u32> = Vec::new();
    for s in seed {
        if !set.contains(s) {
            set.insert(s);
            queue.push(s);
        }
        if s != 0 {
            gens.push(s);
        }
    }
    // close under right multiplication by each seed generator; since the seed
    // set is finite this reaches exactly ⟨seed⟩
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        for &g in &gens {
            let w = parent.mul(e, g);
            if !set.contains(w) {
                set.insert(w);
                queue.push(w);
            }
        }
    }
    set
}

/// Greedy minimal-ish generating list: scan `preferred` then all members in
/// ascending order, keeping an element only if it enlarges the closure.
fn reduce_generators(parent: &Arc<GroupTable>, members: &IndexSet, preferred: &[u32]) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut have = IndexSet::singleton(parent.len() as u32, 0);
    let target = members.len();
    for i in preferred.iter().copied().chain(members.iter()) {
        if have.len() == target {
            break;
        }
        if !have.contains(i) {
            gens.push(i);
            have = close_indices(parent, gens.iter().copied());
        }
    }
    gens
}

impl SubgroupHandle {
    /// Wraps parts that are already known to describe a subgroup.
    pub(crate) fn from_raw_parts(
        parent: Arc<GroupTable>,
        members: IndexSet,
        generators: Vec<u32>,
    ) -> Self {
        SubgroupHandle {
            parent,
            members,
            generators,
        }
    }

    /// Builds a handle from a member set known to be closed (debug-asserted),
    /// deriving a generator list.
    pub fn from_members(parent: &Arc<GroupTable>, members: IndexSet) -> Self {
        debug_assert!(members.contains(0));
        let generators = reduce_generators(parent, &members, &[]);
        debug_assert_eq!(
            close_indices(parent, generators.iter().copied()).to_vec(),
            members.to_vec(),
            "member set is not closed"
        );
        SubgroupHandle {
            parent: Arc::clone(parent),
            members,
            generators,
        }
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn members(&self) -> &IndexSet {
        &self.members
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, i: u32) -> bool {
        self.members.contains(i)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// Sorted member indices — the canonical key of the subgroup.
    pub fn canonical_key(&self) -> Vec<u32> {
        self.members.to_vec()
    }

    /// Sort key `(order, canonical key)` used wherever subgroups are ordered.
    pub fn sort_key(&self) -> (u64, Vec<u32>) {
        (self.order(), self.canonical_key())
    }

    pub(crate) fn assert_parent(&self, table: &Arc<GroupTable>) {
        assert!(
            Arc::ptr_eq(&self.parent, table),
            "subgroup handle belongs to a different group table"
        );
    }

    fn assert_same_parent(&self, other: &SubgroupHandle) {
        assert!(
            Arc::ptr_eq(&self.parent, &other.parent),
            "subgroup handles belong to different group tables"
        );
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.assert_same_parent(other);
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SubgroupHandle) -> SubgroupHandle {
        self.assert_same_parent(other);
        SubgroupHandle::from_members(&self.parent, self.members.intersection(&other.members))
    }

    /// `self^g = g⁻¹ · self · g`, computed elementwise.
    pub fn conjugate_by(&self, g: u32) -> SubgroupHandle {
        let mut members = IndexSet::new(self.parent.len() as u32);
        for m in self.members.iter() {
            members.insert(self.parent.conj(m, g));
        }
        let generators = self.generators.iter().map(|&x| self.parent.conj(x, g)).collect();
        SubgroupHandle {
            parent: Arc::clone(&self.parent),
            members,
            generators,
        }
    }

    /// Elements of `self` normalizing `target` (both under the same parent):
    /// `g` qualifies iff conjugation by `g` maps `target` onto itself.
    pub fn normalizer_of(&self, target: &SubgroupHandle) -> SubgroupHandle {
        self.assert_same_parent(target);
        let mut members = IndexSet::new(self.parent.len() as u32);
        for g in self.members.iter() {
            // generator images suffice: ⟨gens⟩^g ⊆ T with equal order forces equality
            if target
                .generators
                .iter()
                .all(|&t| target.members.contains(self.parent.conj(t, g)))
            {
                members.insert(g);
            }
        }
        SubgroupHandle::from_members(&self.parent, members)
    }

    /// Elements of `self` commuting with every element of `target`.
    pub fn centralizer_of(&self, target: &SubgroupHandle) -> SubgroupHandle {
        self.assert_same_parent(target);
        let mut members = IndexSet::new(self.parent.len() as u32);
        for g in self.members.iter() {
            if target
                .generators
                .iter()
                .all(|&t| self.parent.conj(t, g) == t)
            {
                members.insert(g);
            }
        }
        SubgroupHandle::from_members(&self.parent, members)
    }

    /// Elements of `self` commuting with the single element `x`.
    pub fn centralizer_of_element(&self, x: u32) -> SubgroupHandle {
        let mut members = IndexSet::new(self.parent.len() as u32);
        for g in self.members.iter() {
            if self.parent.conj(x, g) == x {
                members.insert(g);
            }
        }
        SubgroupHandle::from_members(&self.parent, members)
    }

    pub fn center(&self) -> SubgroupHandle {
        let mut members = IndexSet::new(self.parent.len() as u32);
        for g in self.members.iter() {
            if self
                .generators
                .iter()
                .all(|&t| self.parent.conj(t, g) == t)
            {
                members.insert(g);
            }
        }
        SubgroupHandle::from_members(&self.parent, members)
    }

    pub fn is_normal_in(&self, scope: &SubgroupHandle) -> bool {
        self.assert_same_parent(scope);
        scope.generators.iter().all(|&g| {
            self.generators
                .iter()
                .all(|&t| self.members.contains(self.parent.conj(t, g)))
        })
    }

    pub fn is_normal_in_parent(&self) -> bool {
        (0..self.parent.len() as u32).all(|g| {
            self.generators
                .iter()
                .all(|&t| self.members.contains(self.parent.conj(t, g)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.parent.mul(a, b) == self.parent.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.members
            .iter()
            .any(|m| self.parent.element_order(m) as u64 == self.order())
    }

    /// Least common multiple of the member orders.
    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for m in self.members.iter() {
            e = lcm(e, self.parent.element_order(m) as u64);
        }
        e
    }

    /// Abelian with every non-identity element of order exactly `p`.
    /// The trivial subgroup qualifies.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.is_abelian()
            && self
                .members
                .iter()
                .all(|m| m == 0 || self.parent.element_order(m) as u64 == p)
    }

    /// Ascending central series `1 = Z₀ ≤ Z₁ ≤ …` up to the stable term.
    pub fn upper_central_series(&self) -> CentralSeries {
        let mut terms = vec![SubgroupHandle::from_members(
            &self.parent,
            IndexSet::singleton(self.parent.len() as u32, 0),
        )];
        loop {
            let prev = terms.last().unwrap();
            let mut next = IndexSet::new(self.parent.len() as u32);
            for x in self.members.iter() {
                // x ∈ Z_{i+1} ⟺ [x, g] ∈ Z_i for all g; generators suffice
                if self
                    .generators
                    .iter()
                    .all(|&g| prev.members.contains(self.parent.commutator(x, g)))
                {
                    next.insert(x);
                }
            }
            if next == prev.members {
                break;
            }
            terms.push(SubgroupHandle::from_members(&self.parent, next));
        }
        CentralSeries { terms }
    }

    /// Smallest subgroup containing `self` that is closed under conjugation by
    /// all of `scope`.
    pub fn normal_closure_in(&self, scope: &SubgroupHandle) -> SubgroupHandle {
        self.assert_same_parent(scope);
        let mut gens: Vec<u32> = self.generators.clone();
        let mut h = subgroup_generated(&self.parent, &gens);
        loop {
            let mut new = Vec::new();
            for &m in h.generator_indices() {
                for &g in scope.generator_indices() {
                    let c = self.parent.conj(m, g);
                    if !h.contains(c) {
                        new.push(c);
                    }
                }
            }
            if new.is_empty() {
                return h;
            }
            gens.extend(new);
            h = subgroup_generated(&self.parent, &gens);
        }
    }

    /// Subgroup generated by all commutators `[a, b]`, a ∈ self, b ∈ other.
    pub fn commutator_with(&self, other: &SubgroupHandle) -> SubgroupHandle {
        self.assert_same_parent(other);
        let mut gens = Vec::new();
        for a in self.members.iter() {
            for b in other.members.iter() {
                gens.push(self.parent.commutator(a, b));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        subgroup_generated(&self.parent, &gens)
    }

    /// Derived subgroup `[H, H]` via the normal closure of generator
    /// commutators — avoids the quadratic all-pairs scan on large groups.
    pub fn derived_subgroup(&self) -> SubgroupHandle {
        let gens = &self.generators;
        let mut comm = Vec::new();
        for &a in gens {
            for &b in gens {
                let c = self.parent.commutator(a, b);
                if c != 0 {
                    comm.push(c);
                }
            }
        }
        comm.sort_unstable();
        comm.dedup();
        subgroup_generated(&self.parent, &comm).normal_closure_in(self)
    }

    /// Re-indexes the subgroup as a standalone [`GroupTable`] whose element
    /// order is the ascending member order (so element 0 stays the identity).
    pub fn to_group_table(&self) -> SubTable {
        let to_parent: Vec<u32> = self.members.to_vec();
        let elements: Vec<Permutation> = to_parent
            .iter()
            .map(|&i| self.parent.element(i).clone())
            .collect();
        let mut from_parent = HashMap::new();
        for (k, &i) in to_parent.iter().enumerate() {
            from_parent.insert(i, k as u32);
        }
        let gen_indices = self.generators.iter().map(|&g| from_parent[&g]).collect();
        let table = GroupTable::from_closed_elements(self.parent.degree(), elements, gen_indices)
            .expect("subgroup member list is closed");
        SubTable {
            table,
            to_parent,
            from_parent,
        }
    }
}

/// A subgroup re-indexed as its own table, with index translation maps.
pub struct SubTable {
    pub table: Arc<GroupTable>,
    pub to_parent: Vec<u32>,
    pub from_parent: HashMap<u32, u32>,
}

impl SubTable {
    /// Maps a handle under the original parent into the re-indexed table.
    /// The handle must be contained in the subgroup this table was built from.
    pub fn map_handle(&self, h: &SubgroupHandle) -> SubgroupHandle {
        let mut members = IndexSet::new(self.table.len() as u32);
        for m in h.members().iter() {
            members.insert(
                *self
                    .from_parent
                    .get(&m)
                    .expect("handle is not contained in the re-indexed subgroup"),
            );
        }
        SubgroupHandle::from_members(&self.table, members)
    }
}

/// Ascending central series; the last term repeats nothing (it is the first
/// stable term).
pub struct CentralSeries {
    pub terms: Vec<SubgroupHandle>,
}

impl CentralSeries {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn last(&self) -> &SubgroupHandle {
        self.terms.last().unwrap()
    }
}

/// Decides conjugacy of two subgroups by scanning all of `scope`, with early
/// exits on order, exponent and abelianness mismatches. Returns a witness `g`
/// with `h^g = k` when conjugate.
pub fn are_conjugate_in(
    scope: &SubgroupHandle,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
) -> (bool, Option<u32>) {
    if h.order() != k.order()
        || h.is_abelian() != k.is_abelian()
        || h.exponent() != k.exponent()
    {
        return (false, None);
    }
    for g in scope.members().iter() {
        let all_in = h
            .generator_indices()
            .iter()
            .all(|&t| k.contains(h.parent().conj(t, g)));
        if all_in {
            // ⟨gens⟩^g ⊆ k with equal order forces h^g = k
            return (true, Some(g));
        }
    }
    (false, None)
}

/// Orbit of a subgroup under conjugation by `scope`, as deduplicated handles
/// in first-discovery order (BFS over scope's generators).
pub fn conjugation_orbit(scope: &SubgroupHandle, h: &SubgroupHandle) -> Vec<SubgroupHandle> {
    let mut seen: Vec<SubgroupHandle> = vec![h.clone()];
    let mut head = 0;
    while head < seen.len() {
        let cur = seen[head].clone();
        head += 1;
        for &g in scope.generator_indices() {
            let c = cur.conjugate_by(g);
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
    }
    seen
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
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

    fn three_cycle_index(g: &Arc<GroupTable>) -> u32 {
        g.index_of(&Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
            .unwrap()
    }

    #[test]
    fn empty_generation_is_trivial() {
        let g = s3();
        let t = subgroup_generated(&g, &[]);
        assert_eq!(t.order(), 1);
        assert!(t.contains(0));
    }

    #[test]
    fn three_cycle_generates_a3() {
        let g = s3();
        let h = subgroup_generated(&g, &[three_cycle_index(&g)]);
        assert_eq!(h.order(), 3);
    }

    #[test]
    fn transpositions_generate_s3() {
        let g = s3();
        let transpositions: Vec<u32> = (0..g.len() as u32)
            .filter(|&i| g.element_order(i) == 2)
            .collect();
        assert_eq!(transpositions.len(), 3);
        let h = subgroup_generated(&g, &transpositions);
        assert_eq!(h.order(), 6);
    }

    #[test]
    fn normalizer_of_a3_is_s3() {
        let g = s3();
        let a3 = subgroup_generated(&g, &[three_cycle_index(&g)]);
        assert_eq!(g.full().normalizer_of(&a3).order(), 6);
    }

    #[test]
    fn centralizer_of_trivial_is_whole_group() {
        let g = s3();
        let t = g.trivial();
        assert_eq!(g.full().centralizer_of(&t).order(), 6);
    }

    #[test]
    fn conjugate_by_identity_is_identity_map() {
        let g = s3();
        let a3 = subgroup_generated(&g, &[three_cycle_index(&g)]);
        assert_eq!(a3.conjugate_by(0), a3);
    }

    #[test]
    fn abelian_upper_central_series_has_length_two() {
        let c4 = GroupTable::enumerate(
            4,
            &[Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()],
            10,
        )
        .unwrap();
        let series = c4.full().upper_central_series();
        assert_eq!(series.len(), 2);
        assert_eq!(series.terms[0].order(), 1);
        assert_eq!(series.terms[1].order(), 4);
    }

    #[test]
    fn klein_four_is_not_cyclic() {
        let v4 = GroupTable::enumerate(
            4,
            &[
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
            10,
        )
        .unwrap();
        assert_eq!(v4.order(), 4);
        let f = v4.full();
        assert!(!f.is_cyclic());
        assert!(f.is_abelian());
        assert!(f.is_elementary_abelian(2));
        assert_eq!(f.exponent(), 2);
    }

    #[test]
    fn derived_subgroup_of_s3_is_a3() {
        let g = s3();
        let d = g.full().derived_subgroup();
        assert_eq!(d.order(), 3);
        assert!(d.contains(three_cycle_index(&g)));
    }
}
