//! Finite-dimensional vector spaces over prime fields and their subspace
//! carriers. Subspaces are stored in reduced row echelon form, so equality is
//! `==` on the basis matrix and the dimension is the row count. Distances are
//! dimension differences, in the `dim` unit system.

use crate::carrier::{Carrier, CarrierFlags};
use crate::extdist::ExtDist;
use crate::finite::{MAX_MODULUS, MAX_RANK};
use crate::{Error, Result};
use rand::{Rng, RngCore};
use std::fmt;

/// `F_p^dim` for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpace {
    p: u64,
    dim: usize,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl VectorSpace {
    pub fn new(p: u64, dim: usize) -> Result<Self> {
        if !is_prime(p) || p > MAX_MODULUS {
            return Err(Error::InvalidInput(format!(
                "field characteristic {p} must be a prime <= {MAX_MODULUS}"
            )));
        }
        if dim == 0 || dim > MAX_RANK {
            return Err(Error::InvalidInput(format!(
                "dimension {dim} outside supported range 1..={MAX_RANK}"
            )));
        }
        Ok(VectorSpace { p, dim })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn random_vector(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.dim).map(|_| rng.gen_range(0..self.p)).collect()
    }
}

impl fmt::Display for VectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.dim)
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a != 0 mod p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc: u64 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Reduced row echelon form; returns the nonzero rows.
pub(crate) fn rref(rows: &[Vec<u64>], p: u64, width: usize) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(r) = (pivot_row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = mod_inv(m[pivot_row][col], p);
        for c in col..width {
            m[pivot_row][c] = (m[pivot_row][c] as u128 * inv as u128 % p as u128) as u64;
        }
        for r2 in 0..m.len() {
            if r2 != pivot_row && m[r2][col] != 0 {
                let f = m[r2][col];
                for c in col..width {
                    let sub = (f as u128 * m[pivot_row][c] as u128) % p as u128;
                    m[r2][c] = ((m[r2][c] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

/// Basis (as rows) of the right kernel `{ x : M x = 0 }` over `F_p`.
pub(crate) fn kernel_fp(mat: &[Vec<u64>], p: u64, cols: usize) -> Vec<Vec<u64>> {
    let r = rref(mat, p, cols);
    let mut pivots = Vec::new();
    let mut pcol = vec![false; cols];
    for row in &r {
        let col = row.iter().position(|&x| x != 0).unwrap();
        pivots.push(col);
        pcol[col] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pcol[free] {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &col) in r.iter().zip(&pivots) {
            // pivot entry is 1, so the pivot coordinate is -row[free].
            v[col] = (p - row[free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// A subspace in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubspaceRep {
    p: u64,
    ambient: usize,
    rows: Vec<Vec<u64>>,
}

impl SubspaceRep {
    pub fn from_rows(space: &VectorSpace, rows: &[Vec<u64>]) -> Result<Self> {
        for r in rows {
            if r.len() != space.dim() {
                return Err(Error::InvalidInput(format!(
                    "row has {} coordinates, space has dimension {}",
                    r.len(),
                    space.dim()
                )));
            }
        }
        Ok(SubspaceRep {
            p: space.p(),
            ambient: space.dim(),
            rows: rref(rows, space.p(), space.dim()),
        })
    }

    pub(crate) fn from_rref(p: u64, ambient: usize, rows: Vec<Vec<u64>>) -> Self {
        SubspaceRep { p, ambient, rows }
    }

    pub fn zero(space: &VectorSpace) -> Self {
        SubspaceRep::from_rows(space, &[]).expect("zero subspace")
    }

    pub fn full(space: &VectorSpace) -> Self {
        let rows: Vec<Vec<u64>> = (0..space.dim())
            .map(|i| {
                let mut v = vec![0; space.dim()];
                v[i] = 1;
                v
            })
            .collect();
        SubspaceRep::from_rows(space, &rows).expect("full subspace")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn sum(&self, other: &SubspaceRep) -> SubspaceRep {
        assert_eq!((self.p, self.ambient), (other.p, other.ambient));
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SubspaceRep {
            p: self.p,
            ambient: self.ambient,
            rows: rref(&rows, self.p, self.ambient),
        }
    }

    pub fn intersect(&self, other: &SubspaceRep) -> SubspaceRep {
        assert_eq!((self.p, self.ambient), (other.p, other.ambient));
        // v is in the intersection iff it satisfies both membership
        // constraint systems K1 v = 0 and K2 v = 0.
        let mut constraints = membership_constraints(&self.rows, self.p, self.ambient);
        constraints.extend(membership_constraints(&other.rows, self.p, self.ambient));
        let rows = kernel_fp(&constraints, self.p, self.ambient);
        SubspaceRep {
            p: self.p,
            ambient: self.ambient,
            rows: rref(&rows, self.p, self.ambient),
        }
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rem: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        for row in &self.rows {
            let col = row.iter().position(|&x| x != 0).unwrap();
            if rem[col] != 0 {
                let f = rem[col];
                for c in 0..self.ambient {
                    let sub = (f as u128 * row[c] as u128) % self.p as u128;
                    rem[c] = ((rem[c] as u128 + self.p as u128 - sub) % self.p as u128) as u64;
                }
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &SubspaceRep) -> bool {
        self.rows.iter().all(|r| other.contains_vec(r))
    }

    /// All vectors of the subspace (odometer over coefficients).
    pub fn elements(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        let mut count: u64 = 1;
        for _ in 0..self.dim() {
            count = count.checked_mul(self.p).filter(|&c| c <= budget).ok_or_else(|| {
                Error::BudgetExceeded(format!("subspace size exceeds budget {budget}"))
            })?;
        }
        let k = self.dim();
        let mut out = Vec::with_capacity(count as usize);
        let mut coeff = vec![0u64; k];
        loop {
            let mut v = vec![0u64; self.ambient];
            for (c, row) in coeff.iter().zip(&self.rows) {
                for i in 0..self.ambient {
                    v[i] = ((v[i] as u128 + *c as u128 * row[i] as u128) % self.p as u128) as u64;
                }
            }
            out.push(v);
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                coeff[i] += 1;
                if coeff[i] < self.p {
                    break;
                }
                coeff[i] = 0;
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.rows == rref(&self.rows, self.p, self.ambient)
    }
}

/// Rows `K` such that `v` lies in the row space iff `K v = 0`.
fn membership_constraints(rows: &[Vec<u64>], p: u64, ambient: usize) -> Vec<Vec<u64>> {
    kernel_fp(rows, p, ambient)
}

impl fmt::Display for SubspaceRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "span{{}}");
        }
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|g| {
                let coords: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", coords.join(","))
            })
            .collect();
        write!(f, "span{{{}}}", parts.join(","))
    }
}

/// A linear map `x -> M x` between prime-field spaces over the same field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    p: u64,
    src_dim: usize,
    dst_dim: usize,
    matrix: Vec<Vec<u64>>,
}

impl LinMap {
    pub fn new(src: &VectorSpace, dst: &VectorSpace, matrix: Vec<Vec<u64>>) -> Result<Self> {
        if src.p() != dst.p() {
            return Err(Error::InvalidInput("source and target fields differ".into()));
        }
        if matrix.len() != dst.dim() || matrix.iter().any(|row| row.len() != src.dim()) {
            return Err(Error::InvalidInput(format!(
                "matrix must be {} x {}",
                dst.dim(),
                src.dim()
            )));
        }
        let p = src.p();
        let matrix = matrix
            .into_iter()
            .map(|row| row.into_iter().map(|x| x % p).collect())
            .collect();
        Ok(LinMap {
            p,
            src_dim: src.dim(),
            dst_dim: dst.dim(),
            matrix,
        })
    }

    pub fn endo(space: &VectorSpace, matrix: Vec<Vec<u64>>) -> Result<Self> {
        LinMap::new(space, space, matrix)
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.src_dim);
        self.matrix
            .iter()
            .map(|row| {
                let mut acc: u128 = 0;
                for (&a, &x) in row.iter().zip(v) {
                    acc += (a as u128) * (x as u128) % (self.p as u128);
                }
                (acc % self.p as u128) as u64
            })
            .collect()
    }

    pub fn image(&self, sub: &SubspaceRep) -> SubspaceRep {
        assert_eq!((sub.p, sub.ambient), (self.p, self.src_dim));
        let rows: Vec<Vec<u64>> = sub.rows.iter().map(|r| self.apply_vec(r)).collect();
        SubspaceRep {
            p: self.p,
            ambient: self.dst_dim,
            rows: rref(&rows, self.p, self.dst_dim),
        }
    }

    pub fn preimage(&self, sub: &SubspaceRep) -> SubspaceRep {
        assert_eq!((sub.p, sub.ambient), (self.p, self.dst_dim));
        // x is in the preimage iff K (M x) = 0 for the membership constraints
        // K of `sub`, i.e. x is in the kernel of K*M.
        let k = membership_constraints(&sub.rows, self.p, self.dst_dim);
        let km: Vec<Vec<u64>> = k
            .iter()
            .map(|krow| {
                (0..self.src_dim)
                    .map(|j| {
                        let mut acc: u128 = 0;
                        for (i, &kv) in krow.iter().enumerate() {
                            acc += kv as u128 * self.matrix[i][j] as u128 % self.p as u128;
                        }
                        (acc % self.p as u128) as u64
                    })
                    .collect()
            })
            .collect();
        let rows = kernel_fp(&km, self.p, self.src_dim);
        SubspaceRep {
            p: self.p,
            ambient: self.src_dim,
            rows: rref(&rows, self.p, self.src_dim),
        }
    }
}

fn sample_subspace(space: &VectorSpace, rng: &mut dyn RngCore) -> SubspaceRep {
    let k = rng.gen_range(0..=3);
    let rows: Vec<Vec<u64>> = (0..k).map(|_| space.random_vector(rng)).collect();
    SubspaceRep::from_rows(space, &rows).expect("sampled rows are valid")
}

fn all_flags() -> CarrierFlags {
    CarrierFlags {
        order_convex: true,
        finite_valued: true,
        well_ordered_values: true,
    }
}

/// Subspaces ordered by inclusion: join is the subspace sum, distance is
/// `dim(x + y) - dim(x)`.
#[derive(Clone, Debug)]
pub struct SubspaceSumCarrier {
    pub space: VectorSpace,
}

impl SubspaceSumCarrier {
    pub fn new(space: VectorSpace) -> Self {
        SubspaceSumCarrier { space }
    }
}

impl Carrier for SubspaceSumCarrier {
    type Elem = SubspaceRep;

    fn describe(&self) -> String {
        format!("subspaces of {} by sum", self.space)
    }

    fn bottom(&self) -> SubspaceRep {
        SubspaceRep::zero(&self.space)
    }

    fn join(&self, x: &SubspaceRep, y: &SubspaceRep) -> SubspaceRep {
        x.sum(y)
    }

    fn dist(&self, x: &SubspaceRep, y: &SubspaceRep) -> ExtDist {
        let join = x.sum(y);
        ExtDist::dim((join.dim() - x.dim()) as u64)
    }

    fn contains(&self, x: &SubspaceRep) -> bool {
        x.p == self.space.p() && x.ambient == self.space.dim() && x.is_canonical()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> SubspaceRep {
        sample_subspace(&self.space, rng)
    }

    fn flags(&self) -> CarrierFlags {
        all_flags()
    }
}

/// Subspaces ordered by reverse inclusion: join is intersection, bottom is
/// the whole space, distance is `dim(x) - dim(x ∩ y)`.
#[derive(Clone, Debug)]
pub struct SubspaceMeetCarrier {
    pub space: VectorSpace,
}

impl SubspaceMeetCarrier {
    pub fn new(space: VectorSpace) -> Self {
        SubspaceMeetCarrier { space }
    }
}

impl Carrier for SubspaceMeetCarrier {
    type Elem = SubspaceRep;

    fn describe(&self) -> String {
        format!("subspaces of {} by intersection", self.space)
    }

    fn bottom(&self) -> SubspaceRep {
        SubspaceRep::full(&self.space)
    }

    fn join(&self, x: &SubspaceRep, y: &SubspaceRep) -> SubspaceRep {
        x.intersect(y)
    }

    fn dist(&self, x: &SubspaceRep, y: &SubspaceRep) -> ExtDist {
        let meet = x.intersect(y);
        ExtDist::dim((x.dim() - meet.dim()) as u64)
    }

    fn contains(&self, x: &SubspaceRep) -> bool {
        x.p == self.space.p() && x.ambient == self.space.dim() && x.is_canonical()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> SubspaceRep {
        sample_subspace(&self.space, rng)
    }

    fn flags(&self) -> CarrierFlags {
        all_flags()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_3() -> VectorSpace {
        VectorSpace::new(2, 3).unwrap()
    }

    #[test]
    fn rref_canonicalizes() {
        let s = f2_3();
        let a = SubspaceRep::from_rows(&s, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = SubspaceRep::from_rows(&s, &[vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sum_and_intersection_dims() {
        let s = VectorSpace::new(2, 3).unwrap();
        let h = SubspaceRep::from_rows(&s, &[vec![1, 0, 0]]).unwrap();
        let k = SubspaceRep::from_rows(&s, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(h.sum(&k).dim(), 2);
        assert_eq!(h.intersect(&k).dim(), 0);
        let plane = SubspaceRep::from_rows(&s, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(h.intersect(&plane), h);
    }

    #[test]
    fn dist_examples_over_f2() {
        let s = f2_3();
        let c = SubspaceSumCarrier::new(s.clone());
        let h = SubspaceRep::from_rows(&s, &[vec![1, 0, 0]]).unwrap();
        let k = SubspaceRep::from_rows(&s, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(c.dist(&h, &k), ExtDist::dim(1));
        let cm = SubspaceMeetCarrier::new(s);
        assert_eq!(cm.dist(&h, &k), ExtDist::dim(1));
        assert_eq!(cm.dist(&h, &h), ExtDist::zero_dim());
    }

    #[test]
    fn preimage_matches_filtering() {
        let s = f2_3();
        // Nilpotent-ish shift on coordinates: e0 -> 0, e1 -> e0, e2 -> e1.
        let f = LinMap::endo(&s, vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let w = SubspaceRep::from_rows(&s, &[vec![1, 0, 0]]).unwrap();
        let pre = f.preimage(&w);
        let full = SubspaceRep::full(&s);
        let gens: Vec<Vec<u64>> = full
            .elements(8)
            .unwrap()
            .into_iter()
            .filter(|v| w.contains_vec(&f.apply_vec(v)))
            .collect();
        let pre_oracle = SubspaceRep::from_rows(&s, &gens).unwrap();
        assert_eq!(pre, pre_oracle);
        // Kernel of f is <e2>... in column convention f(x) = Mx with the
        // matrix above, f(e2)=e1, f(e1)=e0, f(e0)=0: kernel is <e0>.
        let ker = f.preimage(&SubspaceRep::zero(&s));
        assert_eq!(ker, SubspaceRep::from_rows(&s, &[vec![1, 0, 0]]).unwrap());
    }

    #[test]
    fn primality_check() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(31));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
        assert!(VectorSpace::new(6, 2).is_err());
    }
}
