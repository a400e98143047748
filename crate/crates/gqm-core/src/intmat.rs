//! Integer matrix arithmetic for the lattice-backed carriers.
//!
//! A subgroup of `Z/m_0 x ... x Z/m_{r-1}` is represented by the integer
//! lattice of its lifts in `Z^r`. Every such lattice contains
//! `diag(moduli) * Z^r`, which has two consequences used throughout:
//! the lattice always has full rank `r`, and any basis row may be reduced
//! coordinatewise modulo `m_i` without changing the lattice. The canonical
//! form is the row-style Hermite basis: upper triangular, positive pivots,
//! entries above each pivot reduced modulo it. Two subgroups are equal iff
//! their canonical bases are identical matrices.
//!
//! Elimination runs over `BigInt` so intermediate growth is a non-issue; the
//! finished Hermite shape reduces every entry below its column pivot, and
//! pivots divide the moduli, so the canonical basis re-enters `u64`.

use num_bigint::BigInt;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Canonical Hermite basis (`r x r`, upper triangular) of the lattice spanned
/// by `gens` together with `diag(moduli)`. Rows of `gens` must have length
/// `moduli.len()`; entries may be arbitrary `u64` and are reduced here.
pub fn hnf_mod(gens: &[Vec<u64>], moduli: &[u64]) -> Vec<Vec<u64>> {
    let r = moduli.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(gens.len() + r);
    for g in gens {
        assert_eq!(g.len(), r, "generator length mismatch");
        rows.push(
            g.iter()
                .zip(moduli)
                .map(|(&x, &m)| BigInt::from(x % m))
                .collect(),
        );
    }
    for (i, &m) in moduli.iter().enumerate() {
        let mut row = vec![BigInt::zero(); r];
        row[i] = BigInt::from(m);
        rows.push(row);
    }

    for col in 0..r {
        // `col` doubles as the pivot row index: every earlier column produced
        // exactly one pivot because the lattice has full rank.
        loop {
            let best = (col..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let best = best.expect("full-rank lattice must have a pivot in every column");
            rows.swap(col, best);
            let mut again = false;
            for i in col + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[col][col]);
                if !q.is_zero() {
                    for c in col..r {
                        let t = &rows[col][c] * &q;
                        rows[i][c] -= t;
                    }
                }
                if !rows[i][col].is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if rows[col][col].is_negative() {
            for c in col..r {
                rows[col][c] = -rows[col][c].clone();
            }
        }
        for i in 0..col {
            let q = rows[i][col].div_floor(&rows[col][col]);
            if !q.is_zero() {
                for c in col..r {
                    let t = &rows[col][c] * &q;
                    rows[i][c] -= t;
                }
            }
        }
    }

    rows.truncate(r);
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_u64().expect("canonical entry exceeds u64"))
                .collect()
        })
        .collect()
}

/// Product of the diagonal of a Hermite basis: the index `[Z^r : L]`.
pub fn diag_product(basis: &[Vec<u64>]) -> BigUint {
    let mut p = BigUint::one();
    for (i, row) in basis.iter().enumerate() {
        p *= BigUint::from(row[i]);
    }
    p
}

/// Membership of `v` (reduced coordinates) in the lattice with Hermite basis
/// `basis`. Back-substitution down the triangle; exactness at every pivot is
/// required.
pub fn member(basis: &[Vec<u64>], v: &[u64]) -> bool {
    let r = v.len();
    debug_assert_eq!(basis.len(), r);
    let mut rem: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for col in 0..r {
        if rem[col] == 0 {
            continue;
        }
        let p = basis[col][col] as i128;
        if rem[col] % p != 0 {
            return false;
        }
        let q = rem[col] / p;
        for c in col..r {
            rem[c] -= q * basis[col][c] as i128;
        }
    }
    true
}

/// Basis of the right kernel `{ x : M x = 0 }` of an integer matrix given by
/// rows. Column reduction with a tracked transformation matrix.
pub fn kernel(mat: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    for row in &a {
        assert_eq!(row.len(), cols);
    }
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut row = vec![BigInt::zero(); cols];
            row[i] = BigInt::one();
            row
        })
        .collect();
    // v is stored column-major-as-rows: v[j] is the j-th column of the
    // transformation, i.e. the combination of original columns that the
    // current column j equals.
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        v.swap(i, j);
    };
    let mut pc = 0usize;
    for row in 0..a.len() {
        if pc == cols {
            break;
        }
        loop {
            let best = (pc..cols)
                .filter(|&j| !a[row][j].is_zero())
                .min_by(|&x, &y| a[row][x].abs().cmp(&a[row][y].abs()));
            let Some(best) = best else {
                break;
            };
            swap_cols(&mut a, &mut v, pc, best);
            let mut again = false;
            let pivot = a[row][pc].clone();
            for j in pc + 1..cols {
                if a[row][j].is_zero() {
                    continue;
                }
                let q = a[row][j].div_floor(&pivot);
                if !q.is_zero() {
                    for rr in a.iter_mut() {
                        let t = &rr[pc] * &q;
                        rr[j] -= t;
                    }
                    for c in 0..cols {
                        let t = &v[pc][c] * &q;
                        v[j][c] -= t;
                    }
                }
                if !a[row][j].is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if !a[row][pc].is_zero() {
            pc += 1;
        }
    }
    v.split_off(pc)
}

/// Intersection of two lattices in `Z^r`, both containing `diag(moduli)`.
/// Bases are canonical Hermite matrices; the result is canonical as well.
pub fn lattice_intersection(b1: &[Vec<u64>], b2: &[Vec<u64>], moduli: &[u64]) -> Vec<Vec<u64>> {
    let r = moduli.len();
    // Solve x*b1 = y*b2: kernel of the r x 2r matrix whose columns are the
    // basis vectors of b1 and -b2.
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); 2 * r]; r];
    for (j, row) in b1.iter().enumerate() {
        for i in 0..r {
            m[i][j] = BigInt::from(row[i]);
        }
    }
    for (j, row) in b2.iter().enumerate() {
        for i in 0..r {
            m[i][r + j] = -BigInt::from(row[i]);
        }
    }
    let ker = kernel(&m, 2 * r);
    let mut gens: Vec<Vec<u64>> = Vec::with_capacity(ker.len());
    for combo in &ker {
        let mut g = vec![BigInt::zero(); r];
        for (j, row) in b1.iter().enumerate() {
            if combo[j].is_zero() {
                continue;
            }
            for c in 0..r {
                let t = BigInt::from(row[c]) * &combo[j];
                g[c] += t;
            }
        }
        gens.push(reduce_vec(&g, moduli));
    }
    hnf_mod(&gens, moduli)
}

/// Lattice `{ x in Z^src : A x in L }` where `L = rowspan(basis)` lives in
/// `Z^dst` and contains `diag(dst_moduli)`. `a` is `dst x src`. The result is
/// the canonical basis of a lattice in `Z^src` containing `diag(src_moduli)`.
pub fn preimage_lattice(
    a: &[Vec<u64>],
    basis: &[Vec<u64>],
    src_moduli: &[u64],
    dst_r: usize,
) -> Vec<Vec<u64>> {
    let src = src_moduli.len();
    let cols = src + dst_r;
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; dst_r];
    for (i, arow) in a.iter().enumerate() {
        for (j, &x) in arow.iter().enumerate() {
            m[i][j] = BigInt::from(x);
        }
    }
    for (j, row) in basis.iter().enumerate() {
        for i in 0..dst_r {
            m[i][src + j] = -BigInt::from(row[i]);
        }
    }
    let ker = kernel(&m, cols);
    let gens: Vec<Vec<u64>> = ker
        .iter()
        .map(|combo| reduce_vec(&combo[..src], src_moduli))
        .collect();
    hnf_mod(&gens, src_moduli)
}

fn reduce_vec(v: &[BigInt], moduli: &[u64]) -> Vec<u64> {
    v.iter()
        .zip(moduli)
        .map(|(x, &m)| {
            let m = BigInt::from(m);
            x.mod_floor(&m).to_u64().expect("reduced entry fits u64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_trivial_and_full() {
        let moduli = [4, 2];
        let trivial = hnf_mod(&[], &moduli);
        assert_eq!(trivial, vec![vec![4, 0], vec![0, 2]]);
        let full = hnf_mod(&[vec![1, 0], vec![0, 1]], &moduli);
        assert_eq!(full, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn hnf_is_generator_order_independent() {
        let moduli = [4, 2];
        let a = hnf_mod(&[vec![2, 1], vec![2, 0]], &moduli);
        let b = hnf_mod(&[vec![2, 0], vec![2, 1]], &moduli);
        let c = hnf_mod(&[vec![2, 1], vec![0, 1], vec![2, 0]], &moduli);
        assert_eq!(a, b);
        // <(2,1),(2,0)> contains (0,1), so adding it changes nothing.
        assert_eq!(a, c);
    }

    #[test]
    fn membership_and_index() {
        let moduli = [4, 2];
        // <(2,1)>: elements (0,0),(2,1): order 2, so diag product = 8/2 = 4.
        let b = hnf_mod(&[vec![2, 1]], &moduli);
        assert_eq!(diag_product(&b), BigUint::from(4u32));
        assert!(member(&b, &[2, 1]));
        assert!(member(&b, &[0, 0]));
        assert!(!member(&b, &[2, 0]));
        assert!(!member(&b, &[0, 1]));
    }

    #[test]
    fn intersection_of_cyclic_subgroups() {
        let moduli = [4, 2];
        let h = hnf_mod(&[vec![1, 0]], &moduli); // <(1,0)> order 4
        let k = hnf_mod(&[vec![2, 1]], &moduli); // <(2,1)> order 2
        let meet = lattice_intersection(&h, &k, &moduli);
        // Intersection is trivial: (2,1) is not in <(1,0)>.
        assert_eq!(diag_product(&meet), BigUint::from(8u32));
        let k2 = hnf_mod(&[vec![2, 0]], &moduli); // <(2,0)> ⊆ <(1,0)>
        let meet2 = lattice_intersection(&h, &k2, &moduli);
        assert_eq!(meet2, k2);
    }

    #[test]
    fn kernel_solves_homogeneous_systems() {
        // x + 2y = 0 over Z: kernel generated by (2, -1) up to sign.
        let m = vec![vec![BigInt::from(1), BigInt::from(2)]];
        let ker = kernel(&m, 2);
        assert_eq!(ker.len(), 1);
        let g = &ker[0];
        assert_eq!(&g[0] + BigInt::from(2) * &g[1], BigInt::zero());
        assert!(!g[0].is_zero() || !g[1].is_zero());
    }

    #[test]
    fn preimage_under_doubling() {
        let moduli = [4u64];
        // f: Z/4 -> Z/4, x -> 2x; preimage of <2> = {x : 2x in {0,2}} = all of Z/4.
        let a = vec![vec![2u64]];
        let sub = hnf_mod(&[vec![2]], &moduli);
        let pre = preimage_lattice(&a, &sub, &moduli, 1);
        assert_eq!(pre, vec![vec![1]]);
        // Preimage of trivial = kernel of doubling = <2>.
        let triv = hnf_mod(&[], &moduli);
        let pre2 = preimage_lattice(&a, &triv, &moduli, 1);
        assert_eq!(pre2, vec![vec![2]]);
    }
}
