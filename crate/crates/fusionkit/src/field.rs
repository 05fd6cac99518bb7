//! Arithmetic in F_{p^n} as polynomials over F_p modulo a fixed irreducible.
//! The modulus is the lexicographically least monic irreducible of degree n,
//! ordering coefficient vectors (c₀, …, c_{n-1}) by their base-p value, so
//! element tables are reproducible across runs.

use crate::error::{Error, Result};
use crate::plocal::is_prime;

/// The field F_{p^n}. Elements are identified with indices `0..p^n`, where
/// index k has coefficients given by the base-p digits of k (c₀ least
/// significant).
pub struct FiniteField {
    pub p: u64,
    pub n: u32,
    pub order: u64,
    /// Coefficients c₀..c_{n-1} of the monic modulus x^n + Σ cᵢ xⁱ.
    pub modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, n: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::PreconditionViolated("field degree must be ≥ 1".into()));
        }
        let order = p.checked_pow(n).ok_or_else(|| Error::PreconditionViolated(
            "field order overflows".into(),
        ))?;
        let modulus = least_irreducible(p, n)?;
        Ok(FiniteField { p, n, order, modulus })
    }

    pub fn coeffs(&self, index: u64) -> Vec<u64> {
        let mut v = index;
        (0..self.n)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn index(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = ca
            .iter()
            .zip(&cb)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let ca = self.coeffs(a);
        let neg: Vec<u64> = ca.iter().map(|&x| (self.p - x) % self.p).collect();
        self.index(&neg)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the monic modulus: x^n ≡ -Σ cᵢ xⁱ
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let sub = c * m % self.p;
                prod[k - n + i] = (prod[k - n + i] + self.p - sub) % self.p;
            }
        }
        self.index(&prod[..n])
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64; // index of the constant 1
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::PreconditionViolated("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Frobenius map a ↦ a^p iterated k times.
    pub fn frobenius(&self, a: u64, k: u32) -> u64 {
        let mut x = a;
        for _ in 0..k {
            x = self.pow(x, self.p);
        }
        x
    }

    pub fn multiplicative_order(&self, a: u64) -> u64 {
        assert!(a != 0);
        let mut acc = a;
        let mut o = 1;
        while acc != 1 {
            acc = self.mul(acc, a);
            o += 1;
        }
        o
    }

    /// Least field index (≥ 2) generating the multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        (1..self.order)
            .find(|&a| self.multiplicative_order(a) == self.order - 1)
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// Lexicographically least monic irreducible of degree n over F_p, by trial
/// division against all monic factors of degree ≤ n/2.
fn least_irreducible(p: u64, n: u32) -> Result<Vec<u64>> {
    let count = p.pow(n);
    for value in 0..count {
        let coeffs = digits(value, p, n);
        if is_irreducible(p, n, &coeffs) {
            return Ok(coeffs);
        }
    }
    Err(Error::SelfCheckFailed(format!(
        "no irreducible polynomial of degree {} over F_{}",
        n, p
    )))
}

fn digits(mut v: u64, p: u64, n: u32) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn is_irreducible(p: u64, n: u32, coeffs: &[u64]) -> bool {
    if n == 1 {
        return true;
    }
    // full polynomial, little-endian, with the monic leading 1
    let mut full: Vec<u64> = coeffs.to_vec();
    full.push(1);
    for d in 1..=(n / 2) {
        let divisors = p.pow(d);
        for value in 0..divisors {
            let mut div = digits(value, p, d);
            div.push(1);
            if poly_rem_is_zero(p, &full, &div) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u64, a: &[u64], b: &[u64]) -> bool {
    let mut rem: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    loop {
        while let Some(&0) = rem.last() {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
        let da = rem.len() - 1;
        let c = rem[da]; // b is monic
        for (i, &bi) in b.iter().enumerate() {
            let sub = c * bi % p;
            rem[da - db + i] = (rem[da - db + i] + p - sub) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chosen_moduli_are_the_least_irreducibles() {
        // x² + 1 over F_3 and x³ + x + 1 over F_2
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus, vec![1, 0]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus, vec![1, 1, 0]);
    }

    #[test]
    fn field_axioms_hold_for_small_orders() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 4), (5, 2)] {
            let f = FiniteField::new(p, n).unwrap();
            if f.order > 81 {
                continue;
            }
            for a in 0..f.order {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inverse(a).unwrap()), 1);
                }
                for b in 0..f.order {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..f.order {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_prime_field() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in 0..f.order {
            for b in 0..f.order {
                assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
            }
        }
        for c in 0..3 {
            assert_eq!(f.frobenius(c, 1), c);
        }
    }

    #[test]
    fn primitive_element_of_f9() {
        let f = FiniteField::new(3, 2).unwrap();
        let w = f.primitive_element();
        assert_eq!(f.multiplicative_order(w), 8);
        // with modulus x²+1 the least primitive element is 1 + x, index 4
        assert_eq!(w, 4);
    }
}
