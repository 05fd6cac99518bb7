//! Built-in corpus of concrete groups feeding the verification suites, plus
//! the on-disk corpus format: one group file per entry and a JSON manifest
//! carrying names, primes and expected quantities. Expected values are
//! re-verified on load, so a corrupted manifest fails loudly.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{direct_product, GroupTable, DEFAULT_ENUMERATION_CAP};
use crate::io::{group_to_text, parse_group_text};
use crate::perm::Permutation;
use crate::plocal::{
    focal_subgroup, hyperfocal_from_residual, is_p_nilpotent, p_residual, sylow_subgroup,
};

/// A named quantity the corpus pins for one entry, with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExpectedQuantity {
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub value: u64,
    pub provenance: String,
}

impl ExpectedQuantity {
    fn new(quantity: &str, prime: Option<u64>, value: u64, provenance: &str) -> Self {
        ExpectedQuantity {
            quantity: quantity.into(),
            prime,
            value,
            provenance: provenance.into(),
        }
    }
}

pub struct CorpusEntry {
    pub name: String,
    pub group: Arc<GroupTable>,
    pub primes: Vec<u64>,
    pub expected: Vec<ExpectedQuantity>,
}

impl CorpusEntry {
    /// Recomputes every expected quantity; errors with `ClaimFailed` on the
    /// first mismatch.
    pub fn verify_expected(&self) -> Result<()> {
        for e in &self.expected {
            let actual = match (e.quantity.as_str(), e.prime) {
                ("order", None) => self.group.order(),
                ("sylow_order", Some(p)) => sylow_subgroup(&self.group, p)?.order(),
                ("p_residual_order", Some(p)) => p_residual(&self.group, p)?.order(),
                ("hyperfocal_order", Some(p)) => {
                    let s = sylow_subgroup(&self.group, p)?;
                    hyperfocal_from_residual(&self.group, &s, p)?.order()
                }
                ("focal_order", Some(p)) => {
                    let s = sylow_subgroup(&self.group, p)?;
                    focal_subgroup(&self.group, &s, p)?.order()
                }
                ("p_nilpotent", Some(p)) => is_p_nilpotent(&self.group, p)? as u64,
                _ => {
                    return Err(Error::ClaimFailed {
                        claim: format!("{} (entry {})", e.quantity, self.name),
                        expected: "a known quantity name".into(),
                        actual: "unrecognized".into(),
                    })
                }
            };
            if actual != e.value {
                return Err(Error::ClaimFailed {
                    claim: format!(
                        "{}{} of corpus entry {}",
                        e.quantity,
                        e.prime.map(|p| format!(" at p={}", p)).unwrap_or_default(),
                        self.name
                    ),
                    expected: e.value.to_string(),
                    actual: actual.to_string(),
                });
            }
        }
        Ok(())
    }
}

fn cyclic(n: u16) -> Arc<GroupTable> {
    let cyc: Vec<u16> = (0..n).collect();
    GroupTable::enumerate(n, &[Permutation::from_cycles(n, &[cyc]).unwrap()], n as usize + 1)
        .unwrap()
}

fn dihedral(n: u16) -> Arc<GroupTable> {
    let rot: Vec<u16> = (0..n).collect();
    let reflect: Vec<u16> = (0..n).map(|i| (n - i) % n).collect();
    GroupTable::enumerate(
        n,
        &[
            Permutation::from_cycles(n, &[rot]).unwrap(),
            Permutation::new(reflect).unwrap(),
        ],
        2 * n as usize + 1,
    )
    .unwrap()
}

/// Group of order 2m with presentation ⟨a, b | a^m = 1, b a b⁻¹ = a^r,
/// b² = a^s⟩, realized by its left regular representation on the 2m labels
/// a^i b^j ↦ i + m·j. Covers Q8, Q16 and SD16.
fn metacyclic(m: u16, r: u16, s: u16) -> Arc<GroupTable> {
    let degree = 2 * m;
    let label = |i: u16, j: u16| -> u16 { i % m + m * j };
    // left multiplication by a
    let mut a_images = vec![0u16; degree as usize];
    let mut b_images = vec![0u16; degree as usize];
    for i in 0..m {
        for j in 0..2 {
            // a · aⁱbʲ = a^{i+1} bʲ
            a_images[label(i, j) as usize] = label(i + 1, j);
            // b · aⁱbʲ = a^{ri} b^{1+j}, with b² = a^s
            let ri = (r as u32 * i as u32 % m as u32) as u16;
            b_images[label(i, j) as usize] = if j == 0 {
                label(ri, 1)
            } else {
                label(ri + s, 0)
            };
        }
    }
    GroupTable::enumerate(
        degree,
        &[
            Permutation::new(a_images).unwrap(),
            Permutation::new(b_images).unwrap(),
        ],
        2 * m as usize + 1,
    )
    .unwrap()
}

fn frobenius_affine(modulus: u16, multiplier: u16) -> Arc<GroupTable> {
    let add: Vec<u16> = (0..modulus).map(|x| (x + 1) % modulus).collect();
    let mul: Vec<u16> = (0..modulus)
        .map(|x| (x as u32 * multiplier as u32 % modulus as u32) as u16)
        .collect();
    GroupTable::enumerate(
        modulus,
        &[Permutation::new(add).unwrap(), Permutation::new(mul).unwrap()],
        DEFAULT_ENUMERATION_CAP,
    )
    .unwrap()
}

fn symmetric(n: u16) -> Arc<GroupTable> {
    let cyc: Vec<u16> = (0..n).collect();
    GroupTable::enumerate(
        n,
        &[
            Permutation::from_cycles(n, &[cyc]).unwrap(),
            Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        ],
        DEFAULT_ENUMERATION_CAP,
    )
    .unwrap()
}

fn alternating_4() -> Arc<GroupTable> {
    GroupTable::enumerate(
        4,
        &[
            Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
        ],
        13,
    )
    .unwrap()
}

fn entry(
    name: &str,
    group: Arc<GroupTable>,
    primes: &[u64],
    expected: Vec<ExpectedQuantity>,
) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        group,
        primes: primes.to_vec(),
        expected,
    }
}

/// The deterministic built-in corpus. Every entry re-verifies its expected
/// quantities in the corpus suite.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let exp = ExpectedQuantity::new;
    let mut out = Vec::new();
    out.push(entry("c2", cyclic(2), &[2], vec![exp("order", None, 2, "trivial")]));
    out.push(entry("c3", cyclic(3), &[3], vec![exp("order", None, 3, "trivial")]));
    out.push(entry("c4", cyclic(4), &[2], vec![exp("order", None, 4, "trivial")]));
    out.push(entry("c9", cyclic(9), &[3], vec![exp("order", None, 9, "trivial")]));
    out.push(entry(
        "v4",
        direct_product(&cyclic(2), &cyclic(2)).unwrap(),
        &[2],
        vec![exp("order", None, 4, "trivial")],
    ));
    out.push(entry(
        "c2xc2xc2",
        direct_product(&direct_product(&cyclic(2), &cyclic(2)).unwrap(), &cyclic(2)).unwrap(),
        &[2],
        vec![exp("order", None, 8, "trivial")],
    ));
    out.push(entry(
        "c3xc3",
        direct_product(&cyclic(3), &cyclic(3)).unwrap(),
        &[3],
        vec![exp("order", None, 9, "trivial")],
    ));
    out.push(entry(
        "d8",
        dihedral(4),
        &[2],
        vec![
            exp("order", None, 8, "trivial"),
            exp("hyperfocal_order", Some(2), 1, "derived"),
        ],
    ));
    out.push(entry("d16", dihedral(8), &[2], vec![exp("order", None, 16, "trivial")]));
    out.push(entry(
        "q8",
        metacyclic(4, 3, 2),
        &[2],
        vec![
            exp("order", None, 8, "trivial"),
            exp("p_nilpotent", Some(2), 1, "trivial"),
        ],
    ));
    out.push(entry("q16", metacyclic(8, 7, 4), &[2], vec![exp("order", None, 16, "trivial")]));
    out.push(entry("sd16", metacyclic(8, 3, 0), &[2], vec![exp("order", None, 16, "trivial")]));
    out.push(entry(
        "s3",
        symmetric(3),
        &[2, 3],
        vec![
            exp("order", None, 6, "trivial"),
            exp("hyperfocal_order", Some(2), 1, "derived"),
            exp("p_nilpotent", Some(2), 1, "derived"),
            exp("hyperfocal_order", Some(3), 3, "derived"),
            exp("p_nilpotent", Some(3), 0, "derived"),
        ],
    ));
    out.push(entry(
        "a4",
        alternating_4(),
        &[2, 3],
        vec![
            exp("order", None, 12, "trivial"),
            exp("hyperfocal_order", Some(2), 4, "derived"),
            exp("p_nilpotent", Some(3), 1, "derived"),
        ],
    ));
    out.push(entry(
        "s4",
        symmetric(4),
        &[2, 3],
        vec![
            exp("order", None, 24, "trivial"),
            exp("sylow_order", Some(2), 8, "trivial"),
            exp("hyperfocal_order", Some(2), 4, "derived"),
            exp("focal_order", Some(2), 4, "derived"),
        ],
    ));
    out.push(entry(
        "s5",
        symmetric(5),
        &[2, 3, 5],
        vec![
            exp("order", None, 120, "trivial"),
            exp("hyperfocal_order", Some(2), 4, "derived"),
            exp("hyperfocal_order", Some(5), 5, "derived"),
        ],
    ));
    out.push(entry(
        "f20",
        frobenius_affine(5, 2),
        &[2, 5],
        vec![
            exp("order", None, 20, "trivial"),
            exp("p_nilpotent", Some(2), 1, "derived"),
            exp("hyperfocal_order", Some(5), 5, "derived"),
        ],
    ));
    out.push(entry(
        "c7_c3",
        frobenius_affine(7, 2),
        &[3, 7],
        vec![
            exp("order", None, 21, "trivial"),
            exp("p_nilpotent", Some(3), 1, "derived"),
            exp("hyperfocal_order", Some(7), 7, "derived"),
        ],
    ));
    let (sl23, _) = crate::families::special_linear_2_3();
    out.push(entry(
        "sl23",
        Arc::clone(&sl23),
        &[2, 3],
        vec![
            exp("order", None, 24, "derived"),
            exp("sylow_order", Some(2), 8, "paper"),
            exp("hyperfocal_order", Some(2), 8, "derived"),
            exp("p_nilpotent", Some(2), 0, "derived"),
        ],
    ));
    out.push(entry(
        "sl23xc2",
        direct_product(&sl23, &cyclic(2)).unwrap(),
        &[2, 3],
        vec![
            exp("order", None, 48, "derived"),
            exp("hyperfocal_order", Some(2), 8, "derived"),
        ],
    ));
    out.push(entry(
        "d8xc3",
        direct_product(&dihedral(4), &cyclic(3)).unwrap(),
        &[2, 3],
        vec![
            exp("order", None, 24, "trivial"),
            exp("p_nilpotent", Some(2), 1, "derived"),
            exp("p_nilpotent", Some(3), 1, "derived"),
        ],
    ));
    let agl9 = crate::families::affine_semilinear_family(3, 2).unwrap();
    out.push(entry(
        "agl_1_9",
        agl9.group,
        &[2, 3],
        vec![
            exp("order", None, 144, "paper"),
            exp("sylow_order", Some(3), 9, "paper"),
            exp("hyperfocal_order", Some(3), 9, "paper"),
            exp("p_nilpotent", Some(3), 0, "derived"),
        ],
    ));
    let agl8 = crate::families::affine_semilinear_family(2, 3).unwrap();
    out.push(entry(
        "agl_1_8",
        agl8.group,
        &[2, 3, 7],
        vec![
            exp("order", None, 168, "paper"),
            exp("sylow_order", Some(2), 8, "paper"),
            exp("hyperfocal_order", Some(2), 8, "paper"),
        ],
    ));
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub primes: Vec<u64>,
    pub expected: Vec<ExpectedQuantity>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

/// Writes the built-in corpus as group files plus `manifest.json`.
pub fn write_corpus_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut manifest = Manifest { entries: Vec::new() };
    for e in builtin_corpus() {
        let file = format!("{}.grp", e.name);
        std::fs::write(dir.join(&file), group_to_text(&e.group, &e.name))?;
        manifest.entries.push(ManifestEntry {
            name: e.name,
            file,
            primes: e.primes,
            expected: e.expected,
        });
    }
    let json = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(())
}

/// Loads a corpus directory and re-verifies every expected quantity.
pub fn load_corpus_dir(dir: &Path, cap: usize) -> Result<Vec<CorpusEntry>> {
    let manifest_path = dir.join("manifest.json");
    let text = std::fs::read_to_string(&manifest_path)?;
    let manifest: Manifest = serde_json::from_str(&text)?;
    let mut out = Vec::new();
    for m in manifest.entries {
        let group_text = std::fs::read_to_string(dir.join(&m.file))?;
        let group = parse_group_text(&group_text, cap)?;
        let entry = CorpusEntry {
            name: m.name,
            group,
            primes: m.primes,
            expected: m.expected,
        };
        entry.verify_expected()?;
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_enough_entries_and_verifies() {
        let corpus = builtin_corpus();
        assert!(corpus.len() >= 15, "corpus has {} entries", corpus.len());
        for e in &corpus {
            e.group.verify_closure().unwrap();
            e.verify_expected().unwrap();
        }
    }

    #[test]
    fn q16_has_unique_involution() {
        let q16 = metacyclic(8, 7, 4);
        assert_eq!(q16.order(), 16);
        let involutions = (0..q16.len() as u32)
            .filter(|&i| q16.element_order(i) == 2)
            .count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn sd16_has_elements_of_order_eight() {
        let sd16 = metacyclic(8, 3, 0);
        assert_eq!(sd16.order(), 16);
        assert!((0..16u32).any(|i| sd16.element_order(i) == 8));
        // distinguish from D16: SD16 has exactly 3 involutions… D16 has 9
        let involutions = (0..16u32).filter(|&i| sd16.element_order(i) == 2).count();
        assert_eq!(involutions, 3);
        let d16 = dihedral(8);
        let d16_involutions = (0..16u32).filter(|&i| d16.element_order(i) == 2).count();
        assert_eq!(d16_involutions, 9);
    }

    #[test]
    fn corpus_round_trips_through_directory() {
        let dir = std::env::temp_dir().join(format!("fusionkit-corpus-{}", std::process::id()));
        write_corpus_dir(&dir).unwrap();
        let loaded = load_corpus_dir(&dir, DEFAULT_ENUMERATION_CAP).unwrap();
        let builtin = builtin_corpus();
        assert_eq!(loaded.len(), builtin.len());
        for (l, b) in loaded.iter().zip(&builtin) {
            assert_eq!(l.name, b.name);
            assert_eq!(l.group.order(), b.group.order());
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn corrupted_expected_value_fails_verification() {
        let mut e = builtin_corpus().into_iter().next().unwrap();
        e.expected.push(ExpectedQuantity::new("order", None, 99, "derived"));
        assert!(matches!(e.verify_expected(), Err(Error::ClaimFailed { .. })));
    }
}
