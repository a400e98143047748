//! Finite abelian groups, their subgroups, and the two subgroup carriers.
//!
//! A group is a product `Z/m_0 x ... x Z/m_{r-1}`; elements are coordinate
//! vectors. A subgroup is stored as the canonical Hermite basis of its lift
//! lattice in `Z^r` (see [`crate::intmat`]) plus a cached order, so equality
//! of subgroups is plain `==` on the struct.

use crate::carrier::{Carrier, CarrierFlags};
use crate::extdist::ExtDist;
use crate::finite::{MAX_MODULUS, MAX_RANK};
use crate::intmat;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, RngCore};
use std::collections::BTreeSet;
use std::fmt;

/// A finite abelian group presented as a product of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidInput("group needs at least one coordinate".into()));
        }
        if moduli.len() > MAX_RANK {
            return Err(Error::InvalidInput(format!(
                "rank {} exceeds the supported maximum {MAX_RANK}",
                moduli.len()
            )));
        }
        for &m in &moduli {
            if m < 2 || m > MAX_MODULUS {
                return Err(Error::InvalidInput(format!(
                    "modulus {m} outside supported range 2..={MAX_MODULUS}"
                )));
            }
        }
        Ok(FiniteAbelianGroup { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> BigUint {
        self.moduli.iter().map(|&m| BigUint::from(m)).product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        v.iter().zip(&self.moduli).map(|(&x, &m)| x % m).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
            .collect()
    }

    pub fn random_element(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        self.moduli.iter().map(|&m| rng.gen_range(0..m)).collect()
    }

    /// All elements in odometer order. Errors above the budget.
    pub fn enumerate_elements(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        let mut count: u64 = 1;
        for &m in &self.moduli {
            count = count
                .checked_mul(m)
                .filter(|&c| c <= budget)
                .ok_or_else(|| {
                    Error::BudgetExceeded(format!(
                        "group order exceeds enumeration budget {budget}"
                    ))
                })?;
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.moduli[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A subgroup in canonical form: the Hermite basis of its lift lattice plus
/// the cached order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupRep {
    moduli: Vec<u64>,
    basis: Vec<Vec<u64>>,
    order: BigUint,
}

impl SubgroupRep {
    pub(crate) fn from_lattice(moduli: Vec<u64>, basis: Vec<Vec<u64>>) -> Self {
        let order = group_order(&moduli) / intmat::diag_product(&basis);
        SubgroupRep { moduli, basis, order }
    }

    pub fn from_generators(group: &FiniteAbelianGroup, gens: &[Vec<u64>]) -> Result<Self> {
        for g in gens {
            if g.len() != group.rank() {
                return Err(Error::InvalidInput(format!(
                    "generator has {} coordinates, group has rank {}",
                    g.len(),
                    group.rank()
                )));
            }
        }
        let basis = intmat::hnf_mod(gens, group.moduli());
        Ok(SubgroupRep::from_lattice(group.moduli().to_vec(), basis))
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        SubgroupRep::from_generators(group, &[]).expect("trivial subgroup")
    }

    pub fn full(group: &FiniteAbelianGroup) -> Self {
        let gens: Vec<Vec<u64>> = (0..group.rank())
            .map(|i| {
                let mut v = group.zero();
                v[i] = 1;
                v
            })
            .collect();
        SubgroupRep::from_generators(group, &gens).expect("full subgroup")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub(crate) fn basis_rows(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Basis rows that are nonzero as group elements; they generate the
    /// subgroup. Pure-relation rows (zero mod the moduli) are dropped.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.moduli)
                    .map(|(&x, &m)| x % m)
                    .collect::<Vec<u64>>()
            })
            .filter(|row| row.iter().any(|&x| x != 0))
            .collect()
    }

    pub fn sum(&self, other: &SubgroupRep) -> SubgroupRep {
        assert_eq!(self.moduli, other.moduli, "subgroup sum across different groups");
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        let basis = intmat::hnf_mod(&gens, &self.moduli);
        SubgroupRep::from_lattice(self.moduli.clone(), basis)
    }

    pub fn intersect(&self, other: &SubgroupRep) -> SubgroupRep {
        assert_eq!(self.moduli, other.moduli, "subgroup meet across different groups");
        let basis = intmat::lattice_intersection(&self.basis, &other.basis, &self.moduli);
        SubgroupRep::from_lattice(self.moduli.clone(), basis)
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.moduli.len());
        let reduced: Vec<u64> = v.iter().zip(&self.moduli).map(|(&x, &m)| x % m).collect();
        intmat::member(&self.basis, &reduced)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupRep) -> bool {
        self.basis.iter().all(|row| other.contains_vec(row))
    }

    /// `[sup : self]` for `self ⊆ sup`; exact by construction.
    pub fn index_in(&self, sup: &SubgroupRep) -> BigUint {
        debug_assert!(self.is_subgroup_of(sup));
        let (q, r) = sup.order.div_rem(&self.order);
        debug_assert!(num_traits::Zero::is_zero(&r), "index must be exact");
        q
    }

    /// All elements, by closure under addition from the generators.
    pub fn elements(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        use num_traits::ToPrimitive;
        let n = self.order.to_u64().filter(|&n| n <= budget).ok_or_else(|| {
            Error::BudgetExceeded(format!("subgroup order {} exceeds budget {budget}", self.order))
        })?;
        let gens = self.generators();
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut frontier = vec![vec![0; self.moduli.len()]];
        seen.insert(frontier[0].clone());
        while let Some(v) = frontier.pop() {
            for g in &gens {
                let w: Vec<u64> = v
                    .iter()
                    .zip(g)
                    .zip(&self.moduli)
                    .map(|((&a, &b), &m)| (a + b) % m)
                    .collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        assert_eq!(seen.len() as u64, n, "cached order disagrees with closure");
        Ok(seen.into_iter().collect())
    }

    /// Structural canonical-form check used for membership auditing: upper
    /// triangular, pivots positive and dividing the moduli, entries above a
    /// pivot reduced modulo it, cached order consistent.
    pub fn is_canonical(&self) -> bool {
        let r = self.moduli.len();
        if self.basis.len() != r || self.basis.iter().any(|row| row.len() != r) {
            return false;
        }
        for i in 0..r {
            let p = self.basis[i][i];
            if p == 0 || self.moduli[i] % p != 0 {
                return false;
            }
            for j in 0..r {
                if j < i && self.basis[i][j] != 0 {
                    return false;
                }
            }
            for k in 0..i {
                if self.basis[k][i] >= p {
                    return false;
                }
            }
        }
        self.order == group_order(&self.moduli) / intmat::diag_product(&self.basis)
    }
}

impl fmt::Display for SubgroupRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        if gens.is_empty() {
            return write!(f, "<0>");
        }
        let parts: Vec<String> = gens
            .iter()
            .map(|g| {
                let coords: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", coords.join(","))
            })
            .collect();
        write!(f, "<{}>", parts.join(","))
    }
}

fn group_order(moduli: &[u64]) -> BigUint {
    moduli.iter().map(|&m| BigUint::from(m)).product()
}

/// A homomorphism between finite abelian groups, given by an integer matrix
/// acting on column vectors: `x -> A x` coordinatewise mod the target moduli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    src_moduli: Vec<u64>,
    dst_moduli: Vec<u64>,
    matrix: Vec<Vec<u64>>,
}

impl GroupHom {
    pub fn new(
        src: &FiniteAbelianGroup,
        dst: &FiniteAbelianGroup,
        matrix: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if matrix.len() != dst.rank() || matrix.iter().any(|row| row.len() != src.rank()) {
            return Err(Error::InvalidInput(format!(
                "matrix must be {} x {}",
                dst.rank(),
                src.rank()
            )));
        }
        let mut reduced = matrix;
        for (i, row) in reduced.iter_mut().enumerate() {
            let mi = dst.moduli()[i];
            for (j, entry) in row.iter_mut().enumerate() {
                *entry %= mi;
                // Well-definedness: the image of m_j * e_j must vanish, i.e.
                // entry * m_j ≡ 0 mod m_i.
                let mj = src.moduli()[j];
                let g = mi.gcd(&mj);
                if *entry % (mi / g) != 0 {
                    return Err(Error::InvalidInput(format!(
                        "matrix entry ({i},{j})={} does not define a homomorphism: \
                         must be a multiple of {}",
                        *entry,
                        mi / g
                    )));
                }
            }
        }
        Ok(GroupHom {
            src_moduli: src.moduli().to_vec(),
            dst_moduli: dst.moduli().to_vec(),
            matrix: reduced,
        })
    }

    pub fn endo(group: &FiniteAbelianGroup, matrix: Vec<Vec<u64>>) -> Result<Self> {
        GroupHom::new(group, group, matrix)
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.src_moduli.len());
        self.matrix
            .iter()
            .zip(&self.dst_moduli)
            .map(|(row, &m)| {
                let mut acc: u128 = 0;
                for (&a, &x) in row.iter().zip(v) {
                    acc += (a as u128) * (x as u128) % (m as u128);
                }
                (acc % (m as u128)) as u64
            })
            .collect()
    }

    pub fn image(&self, h: &SubgroupRep) -> SubgroupRep {
        assert_eq!(h.moduli(), &self.src_moduli[..], "image across different groups");
        let gens: Vec<Vec<u64>> = h.basis.iter().map(|row| self.apply_vec(row)).collect();
        let basis = intmat::hnf_mod(&gens, &self.dst_moduli);
        SubgroupRep::from_lattice(self.dst_moduli.clone(), basis)
    }

    pub fn preimage(&self, h: &SubgroupRep) -> SubgroupRep {
        assert_eq!(h.moduli(), &self.dst_moduli[..], "preimage across different groups");
        let basis = intmat::preimage_lattice(
            &self.matrix,
            &h.basis,
            &self.src_moduli,
            self.dst_moduli.len(),
        );
        SubgroupRep::from_lattice(self.src_moduli.clone(), basis)
    }

    /// Preimage by filtering enumerated elements; the cross-check route for
    /// the integer solver above. Budget-limited by the source group order.
    pub fn preimage_enumerate(&self, h: &SubgroupRep, budget: u64) -> Result<SubgroupRep> {
        let src = FiniteAbelianGroup::new(self.src_moduli.clone())?;
        let gens: Vec<Vec<u64>> = src
            .enumerate_elements(budget)?
            .into_iter()
            .filter(|v| h.contains_vec(&self.apply_vec(v)))
            .collect();
        SubgroupRep::from_generators(&src, &gens)
    }
}

fn sample_subgroup(group: &FiniteAbelianGroup, rng: &mut dyn RngCore) -> SubgroupRep {
    let k = rng.gen_range(0..=3);
    let gens: Vec<Vec<u64>> = (0..k).map(|_| group.random_element(rng)).collect();
    SubgroupRep::from_generators(group, &gens).expect("sampled generators are valid")
}

fn all_flags() -> CarrierFlags {
    CarrierFlags {
        order_convex: true,
        finite_valued: true,
        well_ordered_values: true,
    }
}

/// Subgroups of a finite abelian group ordered by inclusion: join is the
/// subgroup sum, distance is `log [x + y : x]`.
#[derive(Clone, Debug)]
pub struct SubgroupSumCarrier {
    pub group: FiniteAbelianGroup,
}

impl SubgroupSumCarrier {
    pub fn new(group: FiniteAbelianGroup) -> Self {
        SubgroupSumCarrier { group }
    }
}

impl Carrier for SubgroupSumCarrier {
    type Elem = SubgroupRep;

    fn describe(&self) -> String {
        format!("subgroups of {} by sum", self.group)
    }

    fn bottom(&self) -> SubgroupRep {
        SubgroupRep::trivial(&self.group)
    }

    fn join(&self, x: &SubgroupRep, y: &SubgroupRep) -> SubgroupRep {
        x.sum(y)
    }

    fn dist(&self, x: &SubgroupRep, y: &SubgroupRep) -> ExtDist {
        let join = x.sum(y);
        ExtDist::log_big(x.index_in(&join))
    }

    fn contains(&self, x: &SubgroupRep) -> bool {
        x.moduli() == self.group.moduli() && x.is_canonical()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> SubgroupRep {
        sample_subgroup(&self.group, rng)
    }

    fn flags(&self) -> CarrierFlags {
        all_flags()
    }
}

/// Subgroups ordered by reverse inclusion: join is intersection, bottom is
/// the whole group, distance is `log [x : x ∩ y]`.
#[derive(Clone, Debug)]
pub struct SubgroupMeetCarrier {
    pub group: FiniteAbelianGroup,
}

impl SubgroupMeetCarrier {
    pub fn new(group: FiniteAbelianGroup) -> Self {
        SubgroupMeetCarrier { group }
    }
}

impl Carrier for SubgroupMeetCarrier {
    type Elem = SubgroupRep;

    fn describe(&self) -> String {
        format!("subgroups of {} by intersection", self.group)
    }

    fn bottom(&self) -> SubgroupRep {
        SubgroupRep::full(&self.group)
    }

    fn join(&self, x: &SubgroupRep, y: &SubgroupRep) -> SubgroupRep {
        x.intersect(y)
    }

    fn dist(&self, x: &SubgroupRep, y: &SubgroupRep) -> ExtDist {
        let meet = x.intersect(y);
        ExtDist::log_big(meet.index_in(x))
    }

    fn contains(&self, x: &SubgroupRep) -> bool {
        x.moduli() == self.group.moduli() && x.is_canonical()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> SubgroupRep {
        sample_subgroup(&self.group, rng)
    }

    fn flags(&self) -> CarrierFlags {
        all_flags()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::leq;

    fn z4z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![4, 2]).unwrap()
    }

    #[test]
    fn canonical_equality_is_representation_identity() {
        let g = z4z2();
        let a = SubgroupRep::from_generators(&g, &[vec![2, 1], vec![2, 0]]).unwrap();
        let b = SubgroupRep::from_generators(&g, &[vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), &BigUint::from(4u32));
    }

    #[test]
    fn sum_and_intersection_match_hand_computation() {
        let g = z4z2();
        let h = SubgroupRep::from_generators(&g, &[vec![2, 0]]).unwrap();
        let k = SubgroupRep::from_generators(&g, &[vec![0, 1]]).unwrap();
        let sum = h.sum(&k);
        assert_eq!(sum.order(), &BigUint::from(4u32));
        let meet = h.intersect(&k);
        assert!(meet.is_trivial());
    }

    #[test]
    fn dist_is_log_index() {
        let g = z4z2();
        let c = SubgroupSumCarrier::new(g.clone());
        let h = SubgroupRep::from_generators(&g, &[vec![2, 0]]).unwrap();
        let full = SubgroupRep::full(&g);
        assert_eq!(c.dist(&h, &full), ExtDist::log_int(4));
        assert_eq!(c.dist(&full, &h), ExtDist::zero());
        assert!(leq(&c, &h, &full).unwrap());
        assert!(!leq(&c, &full, &h).unwrap());
    }

    #[test]
    fn meet_carrier_orders_by_reverse_inclusion() {
        let g = z4z2();
        let c = SubgroupMeetCarrier::new(g.clone());
        let h = SubgroupRep::from_generators(&g, &[vec![2, 0]]).unwrap();
        let full = SubgroupRep::full(&g);
        // In the meet carrier the whole group is bottom: below everything.
        assert!(leq(&c, &full, &h).unwrap());
        assert_eq!(c.dist(&h, &full), ExtDist::zero());
        assert_eq!(c.dist(&full, &h), ExtDist::log_int(4));
    }

    #[test]
    fn hom_validation_rejects_non_homomorphisms() {
        let g = z4z2();
        // e_1 has order 2; sending it to (1,0) of order 4 is not a hom.
        assert!(GroupHom::endo(&g, vec![vec![0, 1], vec![0, 0]]).is_err());
        // Sending it to (2,0) is fine.
        assert!(GroupHom::endo(&g, vec![vec![0, 2], vec![0, 0]]).is_ok());
    }

    #[test]
    fn image_and_preimage_agree_with_enumeration() {
        let g = z4z2();
        let f = GroupHom::endo(&g, vec![vec![2, 2], vec![1, 1]]).unwrap();
        let h = SubgroupRep::from_generators(&g, &[vec![2, 1]]).unwrap();
        let img = f.image(&h);
        let gens: Vec<Vec<u64>> = h
            .elements(64)
            .unwrap()
            .into_iter()
            .map(|v| f.apply_vec(&v))
            .collect();
        let img_oracle = SubgroupRep::from_generators(&g, &gens).unwrap();
        assert_eq!(img, img_oracle);

        let pre = f.preimage(&h);
        let pre_oracle = f.preimage_enumerate(&h, 64).unwrap();
        assert_eq!(pre, pre_oracle);
    }

    #[test]
    fn elements_listing_matches_order() {
        let g = z4z2();
        let h = SubgroupRep::from_generators(&g, &[vec![1, 1]]).unwrap();
        let elems = h.elements(64).unwrap();
        use num_traits::ToPrimitive;
        assert_eq!(elems.len() as u64, h.order().to_u64().unwrap());
        assert!(elems.contains(&vec![1, 1]));
        assert!(elems.contains(&vec![2, 0]));
        assert!(elems.contains(&vec![3, 1]));
    }
}
