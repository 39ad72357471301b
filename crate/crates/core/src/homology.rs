//! Homology profiles: free rank and prime-power torsion per degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::GradedComplex;
use crate::error::Result;
use crate::snf::{factor, smith_normal_form};

/// The cyclic group `ℤ_{p^e}`, identified by its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Self {
        Self { prime, exponent }
    }

    pub fn order(self) -> u64 {
        self.prime.pow(self.exponent)
    }

    /// Splits a prime-power order such as 8 into `(2, 3)`.
    pub fn from_order(order: u64) -> Option<Self> {
        if order < 2 {
            return None;
        }
        let f = factor(&num_bigint::BigUint::from(order));
        (f.len() == 1).then(|| Self::new(f[0].0, f[0].1))
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ℤ_{}", self.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DegreeHomology {
    pub free_rank: u64,
    /// Sorted ascending by `(prime, exponent)`.
    pub torsion: Vec<PrimePower>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    fn merge(&mut self, other: &DegreeHomology) {
        self.free_rank += other.free_rank;
        self.torsion.extend_from_slice(&other.torsion);
        self.torsion.sort_unstable();
    }
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(power("ℤ", self.free_rank));
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let g = self.torsion[i];
            let count = self.torsion[i..].iter().take_while(|&&h| h == g).count() as u64;
            parts.push(power(&alloc::format!("{g}"), count));
            i += count as usize;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

fn power(base: &str, count: u64) -> alloc::string::String {
    if count == 1 {
        base.into()
    } else {
        alloc::format!("{base}^{count}")
    }
}

/// Homology by degree; degrees with trivial homology are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyProfile(BTreeMap<i32, DegreeHomology>);

impl HomologyProfile {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `ℤ` in a single degree.
    pub fn free_at(degree: i32) -> Self {
        let mut p = Self::zero();
        p.insert(degree, DegreeHomology { free_rank: 1, torsion: Vec::new() });
        p
    }

    /// Every cyclic factor of `ℤ_q` placed at `degree` (nothing when `q = 1`).
    pub fn cyclic_at(degree: i32, q: u64) -> Self {
        let mut p = Self::zero();
        if q > 1 {
            let torsion = factor(&num_bigint::BigUint::from(q)).into_iter().map(|(p, e)| PrimePower::new(p, e)).collect();
            p.insert(degree, DegreeHomology { free_rank: 0, torsion });
        }
        p
    }

    pub fn insert(&mut self, degree: i32, h: DegreeHomology) {
        if h.is_zero() {
            return;
        }
        self.0.entry(degree).or_default().merge(&h);
    }

    pub fn get(&self, degree: i32) -> DegreeHomology {
        self.0.get(&degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &DegreeHomology)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn shifted(&self, k: i32) -> Self {
        Self(self.0.iter().map(|(d, h)| (d + k, h.clone())).collect())
    }

    /// Degree-wise sum.
    pub fn add(&mut self, other: &HomologyProfile) {
        for (d, h) in other.iter() {
            self.insert(d, h.clone());
        }
    }

    /// Reflection used for reversed torsion summands with top degree `top`:
    /// torsion in degree `k` moves to `top - 1 - k`, free rank to `top - k`.
    pub fn dual_flip(&self, top: i32) -> Self {
        let mut out = Self::zero();
        for (d, h) in self.iter() {
            out.insert(top - d, DegreeHomology { free_rank: h.free_rank, torsion: Vec::new() });
            out.insert(top - 1 - d, DegreeHomology { free_rank: 0, torsion: h.torsion.clone() });
        }
        out
    }

    pub fn total_free_rank(&self) -> u64 {
        self.0.values().map(|h| h.free_rank).sum()
    }

    /// `Σ (-1)^k rank H_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(d, h)| if d.rem_euclid(2) == 0 { h.free_rank as i64 } else { -(h.free_rank as i64) }).sum()
    }

    /// Exactly one `ℤ` and nothing else; returns its degree.
    pub fn single_free_class(&self) -> Option<i32> {
        match self.0.iter().collect::<Vec<_>>().as_slice() {
            [(d, h)] if h.free_rank == 1 && h.torsion.is_empty() => Some(**d),
            _ => None,
        }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, h)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "H_{d} = {h}")?;
        }
        Ok(())
    }
}

/// Exact integral homology of a complex.
pub fn homology_profile(c: &GradedComplex) -> Result<HomologyProfile> {
    c.check_complex()?;
    let degrees: Vec<i32> = c.degrees().collect();
    // SNF of the boundary leaving each degree
    let snfs: Vec<_> = degrees.iter().map(|&k| smith_normal_form(c.boundary(k).unwrap())).collect();
    let mut out = HomologyProfile::zero();
    for (i, &k) in degrees.iter().enumerate() {
        let out_rank = snfs[i].rank();
        let (in_rank, torsion) = match snfs.get(i + 1) {
            Some(s) => {
                let mut t: Vec<PrimePower> = s
                    .nontrivial
                    .iter()
                    .flat_map(factor)
                    .map(|(p, e)| PrimePower::new(p, e))
                    .collect();
                t.sort_unstable();
                (s.rank(), t)
            }
            None => (0, Vec::new()),
        };
        let free_rank = (c.dim(k) - out_rank - in_rank) as u64;
        out.insert(k, DegreeHomology { free_rank, torsion });
    }
    Ok(out)
}

/// `Σ (-1)^k dim C_k`.
pub fn euler_characteristic(c: &GradedComplex) -> i64 {
    c.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summand::build_summand;
    use crate::weights::WeightVector;
    use alloc::string::ToString;
    use alloc::vec;

    fn profile(w: &[u8]) -> HomologyProfile {
        homology_profile(build_summand(&WeightVector::new(w.to_vec()).unwrap()).unwrap().complex()).unwrap()
    }

    #[test]
    fn worked_profiles() {
        assert_eq!(profile(&[2, 3, 2, 3]), HomologyProfile::cyclic_at(2, 2));
        assert_eq!(profile(&[3, 2, 1]), HomologyProfile::free_at(3));
        assert!(profile(&[2, 2, 2]).is_zero());
        assert_eq!(profile(&[1, 2, 3]), HomologyProfile::free_at(0));
    }

    #[test]
    fn display_groups_torsion() {
        let h = DegreeHomology {
            free_rank: 49,
            torsion: vec![PrimePower::new(2, 1), PrimePower::new(2, 1), PrimePower::new(2, 2), PrimePower::new(3, 1)],
        };
        assert_eq!(h.to_string(), "ℤ^49 ⊕ ℤ_2^2 ⊕ ℤ_4 ⊕ ℤ_3");
    }

    #[test]
    fn cyclic_splits_into_prime_powers() {
        let p = HomologyProfile::cyclic_at(0, 12);
        assert_eq!(p.get(0).torsion, vec![PrimePower::new(2, 2), PrimePower::new(3, 1)]);
        assert!(HomologyProfile::cyclic_at(0, 1).is_zero());
    }

    #[test]
    fn dual_flip_moves_torsion() {
        let p = HomologyProfile::cyclic_at(2, 2);
        assert_eq!(p.dual_flip(6), HomologyProfile::cyclic_at(3, 2));
    }
}
