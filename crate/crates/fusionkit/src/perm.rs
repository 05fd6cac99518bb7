//! Permutations on `{0, …, degree-1}` with cycle-notation parsing and display.

use crate::error::{Error, Result};

/// A permutation stored as its image array: `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// Builds a permutation from an image array, rejecting non-bijections.
    pub fn new(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if (im as usize) >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {}",
                    im, n
                )));
            }
            if seen[im as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} repeated (not a bijection)",
                    im
                )));
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: u16) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// From disjoint cycles on 0-based points; fixed points may be omitted.
    pub fn from_cycles(degree: u16, cycles: &[Vec<u16>]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree).collect();
        let mut moved = vec![false; degree as usize];
        for cyc in cycles {
            for (k, &pt) in cyc.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point {} out of range for degree {}",
                        pt, degree
                    )));
                }
                if moved[pt as usize] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears in two cycles",
                        pt
                    )));
                }
                moved[pt as usize] = true;
                images[pt as usize] = cyc[(k + 1) % cyc.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> u16 {
        self.images.len() as u16
    }

    pub fn image(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u16 == im)
    }

    /// Product `(self · other)(x) = self(other(x))` — apply `other` first.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.images.len(), other.images.len());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Permutation { images }
    }

    /// Right conjugate `self^g = g⁻¹ · self · g`.
    pub fn conj(&self, g: &Permutation) -> Permutation {
        g.inverse().mul(self).mul(g)
    }

    /// Disjoint cycles of length ≥ 2, each rotated to start at its least point,
    /// ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start as u16];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cyc.push(p as u16);
                p = self.images[p] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

impl std::fmt::Display for Permutation {
    /// Cycle notation on 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (k, pt) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
    }

    #[test]
    fn mul_applies_right_factor_first() {
        // a = (0 1), b = (1 2); (a·b)(2) = a(b(2)) = a(1) = 0
        let a = Permutation::new(vec![1, 0, 2]).unwrap();
        let b = Permutation::new(vec![0, 2, 1]).unwrap();
        assert_eq!(a.mul(&b).image(2), 0);
    }

    #[test]
    fn inverse_and_conj() {
        let a = Permutation::new(vec![1, 2, 0, 4, 3]).unwrap();
        assert!(a.mul(&a.inverse()).is_identity());
        let g = Permutation::new(vec![0, 2, 1, 3, 4]).unwrap();
        let c = a.conj(&g);
        assert_eq!(c, g.inverse().mul(&a).mul(&g));
    }

    #[test]
    fn cycle_round_trip() {
        let p = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![4, 5]]).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(5 6)");
        assert_eq!(p.cycles(), vec![vec![0, 1, 2], vec![4, 5]]);
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }
}
