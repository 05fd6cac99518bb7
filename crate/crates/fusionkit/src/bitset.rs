//! Fixed-capacity bitset over element indices of a `GroupTable`.

/// Set of element indices, backed by 64-bit words. Capacity is fixed at
/// construction and all set operations require equal capacities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    capacity: u32,
    words: Vec<u64>,
}

impl IndexSet {
    pub fn new(capacity: u32) -> Self {
        let n = (capacity as usize + 63) / 64;
        IndexSet {
            capacity,
            words: vec![0; n],
        }
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn insert(&mut self, i: u32) {
        debug_assert!(i < self.capacity);
        self.words[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: u32) {
        debug_assert!(i < self.capacity);
        self.words[(i / 64) as usize] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: u32) -> bool {
        i < self.capacity && self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.capacity, other.capacity);
        IndexSet {
            capacity: self.capacity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union_with(&mut self, other: &IndexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi as u32 * 64;
            (0..64).filter_map(move |b| {
                if w >> b & 1 == 1 {
                    Some(base + b)
                } else {
                    None
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn singleton(capacity: u32, i: u32) -> IndexSet {
        let mut s = IndexSet::new(capacity);
        s.insert(i);
        s
    }

    pub fn full(capacity: u32) -> IndexSet {
        let mut s = IndexSet::new(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }
}

impl std::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_iter() {
        let mut s = IndexSet::new(130);
        for i in [0, 63, 64, 129] {
            s.insert(i);
        }
        assert_eq!(s.to_vec(), vec![0, 63, 64, 129]);
        assert_eq!(s.len(), 4);
        assert!(s.contains(64));
        assert!(!s.contains(65));
    }

    #[test]
    fn subset_and_intersection() {
        let mut a = IndexSet::new(100);
        let mut b = IndexSet::new(100);
        for i in [1, 2, 3] {
            a.insert(i);
        }
        for i in [1, 2, 3, 50] {
            b.insert(i);
        }
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.intersection(&b).to_vec(), vec![1, 2, 3]);
    }
}
