//! Fully enumerated finite permutation groups with index-based arithmetic.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::subgroup::SubgroupHandle;

/// Default cap on the number of elements a closure may reach.
pub const DEFAULT_ENUMERATION_CAP: usize = 20_000;

/// A finite group given by the complete, deterministically ordered list of its
/// elements as permutations. `elements[0]` is always the identity, and the
/// order of the remaining elements is fixed by the constructor used, so every
/// index, bitset and witness derived from a table is reproducible.
pub struct GroupTable {
    degree: u16,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    generators: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
}

impl GroupTable {
    /// Breadth-first closure of `generators` starting from the identity,
    /// right-multiplying by the generators in input order. Errors with
    /// `CapExceeded` if the closure grows past `cap`.
    pub fn enumerate(degree: u16, generators: &[Permutation], cap: usize) -> Result<Arc<Self>> {
        if cap == 0 {
            return Err(Error::PreconditionViolated("cap must be ≥ 1".into()));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0u32);
        let mut head = 0usize;
        while head < elements.len() {
            for g in generators {
                let w = elements[head].mul(g);
                if !index.contains_key(&w) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded {
                            cap,
                            context: "closing generators into a group table".into(),
                        });
                    }
                    index.insert(w.clone(), elements.len() as u32);
                    elements.push(w);
                }
            }
            head += 1;
        }
        let gen_indices = generators
            .iter()
            .map(|g| index[g])
            .filter(|&i| i != 0)
            .collect();
        Ok(Arc::new(Self::finish(degree, elements, index, gen_indices)?))
    }

    /// Builds a table from an explicit element list that is already closed
    /// under the group operation. `elements[0]` must be the identity and the
    /// list must be duplicate-free; closure itself is only verified on demand
    /// via [`GroupTable::verify_closure`].
    pub fn from_closed_elements(
        degree: u16,
        elements: Vec<Permutation>,
        generator_indices: Vec<u32>,
    ) -> Result<Arc<Self>> {
        if elements.is_empty() || !elements[0].is_identity() {
            return Err(Error::PreconditionViolated(
                "element list must start with the identity".into(),
            ));
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if e.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "element {} has degree {}, expected {}",
                    i,
                    e.degree(),
                    degree
                )));
            }
            if index.insert(e.clone(), i as u32).is_some() {
                return Err(Error::PreconditionViolated(format!(
                    "duplicate element at position {}",
                    i
                )));
            }
        }
        Ok(Arc::new(Self::finish(
            degree,
            elements,
            index,
            generator_indices,
        )?))
    }

    fn finish(
        degree: u16,
        elements: Vec<Permutation>,
        index: HashMap<Permutation, u32>,
        generators: Vec<u32>,
    ) -> Result<Self> {
        let mut inverses = Vec::with_capacity(elements.len());
        for e in &elements {
            let inv = e.inverse();
            match index.get(&inv) {
                Some(&i) => inverses.push(i),
                None => {
                    return Err(Error::PreconditionViolated(
                        "element list is not closed under inversion".into(),
                    ))
                }
            }
        }
        let mut orders = Vec::with_capacity(elements.len());
        for e in &elements {
            let mut acc = e.clone();
            let mut n = 1u32;
            while !acc.is_identity() {
                acc = acc.mul(e);
                n += 1;
            }
            orders.push(n);
        }
        Ok(GroupTable {
            degree,
            elements,
            index,
            generators,
            inverses,
            orders,
        })
    }

    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    /// Index of the product `elements[a] · elements[b]` (apply `b` first).
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.elements[a as usize].mul(&self.elements[b as usize]);
        self.index[&p]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// Index of the conjugate `elements[a]^elements[g] = g⁻¹ a g`.
    pub fn conj(&self, a: u32, g: u32) -> u32 {
        let p = self.elements[a as usize].conj(&self.elements[g as usize]);
        self.index[&p]
    }

    /// Index of the commutator `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ia = self.inverses[a as usize];
        let ib = self.inverses[b as usize];
        self.mul(self.mul(self.mul(ia, ib), a), b)
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.orders[i as usize]
    }

    /// Exhaustively checks that the element list is closed under composition.
    /// Quadratic in the group order; intended for corpus self-audits.
    pub fn verify_closure(&self) -> Result<()> {
        for a in &self.elements {
            for b in &self.elements {
                if !self.index.contains_key(&a.mul(b)) {
                    return Err(Error::PreconditionViolated(format!(
                        "product {} · {} escapes the element list",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }

    /// Handle covering the whole group.
    pub fn full(self: &Arc<Self>) -> SubgroupHandle {
        SubgroupHandle::from_raw_parts(
            Arc::clone(self),
            IndexSet::full(self.len() as u32),
            self.generators.clone(),
        )
    }

    /// Handle for the trivial subgroup.
    pub fn trivial(self: &Arc<Self>) -> SubgroupHandle {
        SubgroupHandle::from_raw_parts(
            Arc::clone(self),
            IndexSet::singleton(self.len() as u32, 0),
            Vec::new(),
        )
    }
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupTable(degree {}, order {}, {} generators)",
            self.degree,
            self.order(),
            self.generators.len()
        )
    }
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<Arc<GroupTable>> {
    let degree = a.degree() + b.degree();
    let mut gens = Vec::new();
    for &gi in a.generator_indices() {
        let mut images: Vec<u16> = a.element(gi).images().to_vec();
        images.extend(a.degree()..degree);
        gens.push(Permutation::new(images)?);
    }
    for &gi in b.generator_indices() {
        let mut images: Vec<u16> = (0..a.degree()).collect();
        images.extend(b.element(gi).images().iter().map(|&x| x + a.degree()));
        gens.push(Permutation::new(images)?);
    }
    GroupTable::enumerate(degree, &gens, a.len() * b.len() + 1)
}

/// Image of the left-multiplication action of `table` on the left cosets of a
/// normal subgroup: the quotient group, realized as permutations of the coset
/// space. Coset labels follow the least element index in each coset.
pub fn quotient_by_normal(table: &Arc<GroupTable>, normal: &SubgroupHandle) -> Result<Arc<GroupTable>> {
    normal.assert_parent(table);
    if !normal.is_normal_in_parent() {
        return Err(Error::PreconditionViolated(
            "quotient requires a normal subgroup".into(),
        ));
    }
    let n = table.len() as u32;
    let mut coset_of = vec![u32::MAX; n as usize];
    let mut reps: Vec<u32> = Vec::new();
    for e in 0..n {
        if coset_of[e as usize] != u32::MAX {
            continue;
        }
        let label = reps.len() as u32;
        reps.push(e);
        for m in normal.members().iter() {
            coset_of[table.mul(e, m) as usize] = label;
        }
    }
    let coset_count = reps.len();
    let mut gen_perms = Vec::new();
    for &g in table.generator_indices() {
        let images: Vec<u16> = reps
            .iter()
            .map(|&r| coset_of[table.mul(g, r) as usize] as u16)
            .collect();
        gen_perms.push(Permutation::new(images)?);
    }
    GroupTable::enumerate(coset_count as u16, &gen_perms, coset_count + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<GroupTable> {
        let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        GroupTable::enumerate(3, &[a, b], 100).unwrap()
    }

    #[test]
    fn s3_has_order_six() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        g.verify_closure().unwrap();
    }

    #[test]
    fn c4_has_order_four() {
        let a = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let g = GroupTable::enumerate(4, &[a], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_order(g.generator_indices()[0]), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let a = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        match GroupTable::enumerate(3, &[a, b], 4) {
            Err(Error::CapExceeded { cap: 4, .. }) => {}
            other => panic!("expected CapExceeded, got {:?}", other.map(|g| g.order())),
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g1 = s3();
        let g2 = s3();
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn direct_product_order_multiplies() {
        let c2 = GroupTable::enumerate(
            2,
            &[Permutation::from_cycles(2, &[vec![0, 1]]).unwrap()],
            10,
        )
        .unwrap();
        let g = direct_product(&s3(), &c2).unwrap();
        assert_eq!(g.order(), 12);
        g.verify_closure().unwrap();
    }

    #[test]
    fn quotient_of_s3_by_a3_is_c2() {
        let g = s3();
        let a3 = crate::subgroup::subgroup_generated(
            &g,
            &[g.index_of(&Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
                .unwrap()],
        );
        let q = quotient_by_normal(&g, &a3).unwrap();
        assert_eq!(q.order(), 2);
    }
}
