//! Brute-force ground truth via explicit element sets.
//!
//! An [`ElemSet`] is a subgroup materialized as the set of its coordinate
//! vectors, closed under addition. All operations here work on whole element
//! sets with nothing but vector addition and set algebra; they share no code
//! with the canonical-form machinery in [`crate::finite`] and
//! [`crate::windowed`], which is the point: tests and the CLI oracle mode
//! diff the two routes against each other.
//!
//! Over a prime field the additive closure of a set of vectors is already a
//! subspace (integer combinations exhaust scalar combinations mod p), so the
//! same machinery covers the field-mode carriers; dimensions are recovered as
//! base-p logarithms of set sizes.

use crate::extdist::ExtDist;
use crate::finite::subgroup::SubgroupRep;
use crate::finite::subspace::SubspaceRep;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A subgroup as a closed element set inside a fixed coordinate box.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElemSet {
    moduli: Vec<u64>,
    elems: BTreeSet<Vec<u64>>,
}

impl ElemSet {
    /// Closure of `gens` under addition, within `budget` elements.
    pub fn generate(moduli: &[u64], gens: &[Vec<u64>], budget: usize) -> Result<ElemSet> {
        for g in gens {
            assert_eq!(g.len(), moduli.len());
        }
        let zero = vec![0u64; moduli.len()];
        let mut elems: BTreeSet<Vec<u64>> = BTreeSet::new();
        elems.insert(zero.clone());
        let gens: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| g.iter().zip(moduli).map(|(&x, &m)| x % m).collect())
            .collect();
        let mut frontier = vec![zero];
        while let Some(v) = frontier.pop() {
            for g in &gens {
                let w: Vec<u64> = v
                    .iter()
                    .zip(g)
                    .zip(moduli)
                    .map(|((&a, &b), &m)| (a + b) % m)
                    .collect();
                if elems.insert(w.clone()) {
                    if elems.len() > budget {
                        return Err(Error::BudgetExceeded(format!(
                            "element-set closure exceeds budget {budget}"
                        )));
                    }
                    frontier.push(w);
                }
            }
        }
        Ok(ElemSet {
            moduli: moduli.to_vec(),
            elems,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains zero
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let reduced: Vec<u64> = v.iter().zip(&self.moduli).map(|(&x, &m)| x % m).collect();
        self.elems.contains(&reduced)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.elems.iter()
    }

    /// Set-level subgroup sum: closure of the union.
    pub fn sum(&self, other: &ElemSet, budget: usize) -> Result<ElemSet> {
        assert_eq!(self.moduli, other.moduli);
        let gens: Vec<Vec<u64>> = self.elems.iter().chain(other.elems.iter()).cloned().collect();
        ElemSet::generate(&self.moduli, &gens, budget)
    }

    /// Set intersection (already closed).
    pub fn intersect(&self, other: &ElemSet) -> ElemSet {
        assert_eq!(self.moduli, other.moduli);
        ElemSet {
            moduli: self.moduli.clone(),
            elems: self.elems.intersection(&other.elems).cloned().collect(),
        }
    }

    /// Image under an element map into a target box.
    pub fn image<F>(&self, dst_moduli: &[u64], f: F, budget: usize) -> Result<ElemSet>
    where
        F: Fn(&[u64]) -> Vec<u64>,
    {
        let gens: Vec<Vec<u64>> = self.elems.iter().map(|v| f(v)).collect();
        ElemSet::generate(dst_moduli, &gens, budget)
    }

    /// Preimage under an element map, by filtering an enumerated source box.
    pub fn preimage_from<F>(&self, src_all: &ElemSet, f: F) -> ElemSet
    where
        F: Fn(&[u64]) -> Vec<u64>,
    {
        let elems: BTreeSet<Vec<u64>> = src_all
            .elems
            .iter()
            .filter(|v| self.contains(&f(v)))
            .cloned()
            .collect();
        ElemSet {
            moduli: src_all.moduli.clone(),
            elems,
        }
    }

    /// `log [sup : self]` for `self ⊆ sup`, as an exact distance.
    pub fn log_index_in(&self, sup: &ElemSet) -> ExtDist {
        assert!(self.elems.is_subset(&sup.elems), "index of a non-subset");
        assert_eq!(sup.len() % self.len(), 0);
        ExtDist::log_int((sup.len() / self.len()) as u64)
    }

    /// Dimension difference `dim sup - dim self` over `F_p`.
    pub fn dim_gap_in(&self, sup: &ElemSet, p: u64) -> ExtDist {
        assert!(self.elems.is_subset(&sup.elems));
        let mut ratio = sup.len() / self.len();
        assert_eq!(sup.len() % self.len(), 0);
        let mut d = 0u64;
        while ratio > 1 {
            assert_eq!(ratio % p as usize, 0, "size ratio must be a power of p");
            ratio /= p as usize;
            d += 1;
        }
        ExtDist::dim(d)
    }

    /// The whole box as a set.
    pub fn full_box(moduli: &[u64], budget: usize) -> Result<ElemSet> {
        let gens: Vec<Vec<u64>> = (0..moduli.len())
            .map(|i| {
                let mut v = vec![0u64; moduli.len()];
                v[i] = 1;
                v
            })
            .collect();
        ElemSet::generate(moduli, &gens, budget)
    }
}

/// Materialize a canonical subgroup as an element set (via its generator
/// rows; the closure is recomputed from scratch by vector addition).
pub fn set_of_subgroup(rep: &SubgroupRep, budget: usize) -> Result<ElemSet> {
    ElemSet::generate(rep.moduli(), &rep.generators(), budget)
}

/// Materialize a canonical subspace as an element set over `F_p`.
pub fn set_of_subspace(rep: &SubspaceRep, budget: usize) -> Result<ElemSet> {
    let moduli = vec![rep.p(); rep.ambient()];
    ElemSet::generate(&moduli, rep.rows(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_index() {
        let m = [4u64, 2];
        let h = ElemSet::generate(&m, &[vec![2, 1]], 64).unwrap();
        assert_eq!(h.len(), 2);
        let full = ElemSet::full_box(&m, 64).unwrap();
        assert_eq!(full.len(), 8);
        assert_eq!(h.log_index_in(&full), ExtDist::log_int(4));
    }

    #[test]
    fn sum_is_closure_of_union() {
        let m = [4u64, 2];
        let a = ElemSet::generate(&m, &[vec![2, 0]], 64).unwrap();
        let b = ElemSet::generate(&m, &[vec![0, 1]], 64).unwrap();
        let s = a.sum(&b, 64).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(&[2, 1]));
    }

    #[test]
    fn dim_gap_over_f2() {
        let m = [2u64, 2, 2];
        let a = ElemSet::generate(&m, &[vec![1, 0, 0]], 64).unwrap();
        let f = ElemSet::full_box(&m, 64).unwrap();
        assert_eq!(a.dim_gap_in(&f, 2), ExtDist::dim(2));
    }
}
