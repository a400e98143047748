//! Exhaustive enumeration for small finite objects. Used as ground truth by
//! tests and by the oracle re-run mode of the CLI; all entry points are
//! budget-checked.

use crate::finite::subgroup::{FiniteAbelianGroup, GroupHom, SubgroupRep};
use crate::finite::subspace::{SubspaceRep, VectorSpace};
use crate::{Error, Result};
use num_integer::Integer;
use std::collections::BTreeSet;

/// The complete subgroup lattice, found by closing under one-element
/// extensions starting from the trivial subgroup. Requires the element count
/// to be within `elem_budget`.
pub fn enumerate_subgroups(
    group: &FiniteAbelianGroup,
    elem_budget: u64,
) -> Result<Vec<SubgroupRep>> {
    let elements = group.enumerate_elements(elem_budget)?;
    let mut seen: BTreeSet<SubgroupRep> = BTreeSet::new();
    let mut frontier = vec![SubgroupRep::trivial(group)];
    seen.insert(frontier[0].clone());
    while let Some(h) = frontier.pop() {
        for e in &elements {
            if h.contains_vec(e) {
                continue;
            }
            let mut gens = h.generators();
            gens.push(e.clone());
            let bigger = SubgroupRep::from_generators(group, &gens)?;
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The complete subspace lattice, by the same extension closure.
pub fn enumerate_subspaces(space: &VectorSpace, elem_budget: u64) -> Result<Vec<SubspaceRep>> {
    let full = SubspaceRep::full(space);
    let elements = full.elements(elem_budget)?;
    let mut seen: BTreeSet<SubspaceRep> = BTreeSet::new();
    let mut frontier = vec![SubspaceRep::zero(space)];
    seen.insert(frontier[0].clone());
    while let Some(h) = frontier.pop() {
        for e in &elements {
            if h.contains_vec(e) {
                continue;
            }
            let mut rows = h.rows().to_vec();
            rows.push(e.clone());
            let bigger = SubspaceRep::from_rows(space, &rows)?;
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every endomorphism of the group, as matrices. The number of valid matrices
/// is the product over entries (i, j) of gcd(m_i, m_j); errors if that
/// exceeds `budget`.
pub fn enumerate_endomorphisms(group: &FiniteAbelianGroup, budget: u64) -> Result<Vec<GroupHom>> {
    let r = group.rank();
    let m = group.moduli();
    // Entry (i, j) ranges over multiples of m_i / gcd(m_i, m_j).
    let mut choices: Vec<(u64, u64)> = Vec::with_capacity(r * r); // (step, count)
    let mut total: u64 = 1;
    for i in 0..r {
        for j in 0..r {
            let g = m[i].gcd(&m[j]);
            let step = m[i] / g;
            total = total.checked_mul(g).filter(|&t| t <= budget).ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "endomorphism count exceeds budget {budget}"
                ))
            })?;
            choices.push((step, g));
        }
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut counters = vec![0u64; r * r];
    loop {
        let matrix: Vec<Vec<u64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let idx = i * r + j;
                        counters[idx] * choices[idx].0
                    })
                    .collect()
            })
            .collect();
        out.push(GroupHom::endo(group, matrix).expect("enumerated matrix is a homomorphism"));
        let mut k = r * r;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            counters[k] += 1;
            if counters[k] < choices[k].1 {
                break;
            }
            counters[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_lattice_of_z4_x_z2_has_eight_members() {
        let g = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let subs = enumerate_subgroups(&g, 64).unwrap();
        assert_eq!(subs.len(), 8);
        let orders: Vec<u64> = subs
            .iter()
            .map(|s| num_traits::ToPrimitive::to_u64(s.order()).unwrap())
            .collect();
        let mut sorted = orders.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 2, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn subspace_lattice_of_f2_cubed_has_sixteen_members() {
        let s = VectorSpace::new(2, 3).unwrap();
        let subs = enumerate_subspaces(&s, 64).unwrap();
        // 1 + 7 + 7 + 1 subspaces by dimension.
        assert_eq!(subs.len(), 16);
    }

    #[test]
    fn endomorphism_count_of_z4_x_z2() {
        let g = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let endos = enumerate_endomorphisms(&g, 1 << 10).unwrap();
        // gcd products: 4 * 2 * 2 * 2 = 32.
        assert_eq!(endos.len(), 32);
    }

    #[test]
    fn budget_is_enforced() {
        let g = FiniteAbelianGroup::new(vec![1 << 20]).unwrap();
        assert!(enumerate_subgroups(&g, 1 << 10).is_err());
    }
}
