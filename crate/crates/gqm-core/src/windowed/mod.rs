//! Carriers over doubly infinite coordinate lines.
//!
//! The windowed carrier holds the finite subgroups (or finite-dimensional
//! subspaces) of a direct sum `⊕_{i∈Z} Z/m` (or `⊕_{i∈Z} F_p`). An element
//! is a window: an offset into the coordinate line plus a finite block body.
//! Canonical form trims unused leading and trailing coordinates, so equal
//! subgroups have identical representations regardless of how they were
//! produced.
//!
//! One engine serves both unit systems. The [`Block`] trait is the small
//! surface the engine needs from a body type; group blocks are Hermite-form
//! subgroups of `(Z/m)^w` with log-index distances, field blocks are
//! row-echelon subspaces of `F_p^w` with dimension distances.
//!
//! The companion carrier over the countable product `∏_{i∈N} Z/m` lives in
//! [`profinite`]: open subgroups given by a finite-depth body, ordered by
//! reverse inclusion.

pub mod profinite;

use crate::carrier::{Carrier, CarrierFlags};
use crate::extdist::ExtDist;
use crate::finite::subgroup::SubgroupRep;
use crate::finite::subspace::{self, SubspaceRep, VectorSpace};
use crate::finite::{FiniteAbelianGroup, MAX_MODULUS};
use crate::intmat;
use crate::{Error, Result};
use rand::{Rng, RngCore};
use std::fmt;
use std::marker::PhantomData;

/// What the window and profinite engines need from a block body: a finite
/// lattice element inside `unit^width` with joins, meets, maps, and an exact
/// nestedness distance.
pub trait Block:
    Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static
{
    /// The scalar parameter: the modulus `m` or the prime `p`.
    fn unit(&self) -> u64;
    fn width(&self) -> usize;
    fn validate_unit(unit: u64) -> Result<()>;
    fn make_trivial(unit: u64, width: usize) -> Self;
    fn make_full(unit: u64, width: usize) -> Self;
    fn from_generators(unit: u64, width: usize, gens: &[Vec<u64>]) -> Result<Self>;
    /// Generating vectors (canonical, zero rows dropped).
    fn generators(&self) -> Vec<Vec<u64>>;
    fn is_trivial(&self) -> bool;
    fn is_canonical(&self) -> bool;
    fn join(&self, other: &Self) -> Self;
    fn meet(&self, other: &Self) -> Self;
    /// Exact distance `self -> sup` for nested `self ⊆ sup`: a log index in
    /// group mode, a dimension gap in field mode.
    fn dist_to_super(&self, sup: &Self) -> ExtDist;
    /// Embed with `left`/`right` fresh zero coordinates (subgroup unchanged).
    fn pad(&self, left: usize, right: usize) -> Self;
    /// Extend with `extra` full coordinates on the right (direct factor).
    fn pad_full_right(&self, extra: usize) -> Self;
    /// Whether any element of the body is nonzero at `col`.
    fn uses_col(&self, col: usize) -> bool;
    /// Drop columns outside `lo..hi`; only valid if they are all unused.
    fn restrict(&self, lo: usize, hi: usize) -> Self;
    /// Image under `x -> M x` into `unit^dst_width`; `matrix` is
    /// `dst_width x width`.
    fn image(&self, matrix: &[Vec<u64>], dst_width: usize) -> Self;
    /// Preimage `{ x in unit^src_width : M x in self }`; `matrix` is
    /// `width x src_width`.
    fn preimage(&self, matrix: &[Vec<u64>], src_width: usize) -> Self;
    fn contains_vec(&self, v: &[u64]) -> bool;
    fn elements(&self, budget: u64) -> Result<Vec<Vec<u64>>>;
}

impl Block for SubgroupRep {
    fn unit(&self) -> u64 {
        self.moduli()[0]
    }

    fn width(&self) -> usize {
        self.moduli().len()
    }

    fn validate_unit(unit: u64) -> Result<()> {
        if unit < 2 || unit > MAX_MODULUS {
            return Err(Error::InvalidInput(format!(
                "modulus {unit} outside supported range 2..={MAX_MODULUS}"
            )));
        }
        Ok(())
    }

    fn make_trivial(unit: u64, width: usize) -> Self {
        let moduli = vec![unit; width];
        let basis = intmat::hnf_mod(&[], &moduli);
        SubgroupRep::from_lattice(moduli, basis)
    }

    fn make_full(unit: u64, width: usize) -> Self {
        let moduli = vec![unit; width];
        let gens: Vec<Vec<u64>> = (0..width)
            .map(|i| {
                let mut v = vec![0; width];
                v[i] = 1;
                v
            })
            .collect();
        let basis = intmat::hnf_mod(&gens, &moduli);
        SubgroupRep::from_lattice(moduli, basis)
    }

    fn from_generators(unit: u64, width: usize, gens: &[Vec<u64>]) -> Result<Self> {
        for g in gens {
            if g.len() != width {
                return Err(Error::InvalidInput(format!(
                    "generator has {} coordinates, block width is {width}",
                    g.len()
                )));
            }
        }
        let moduli = vec![unit; width];
        let basis = intmat::hnf_mod(gens, &moduli);
        Ok(SubgroupRep::from_lattice(moduli, basis))
    }

    fn generators(&self) -> Vec<Vec<u64>> {
        SubgroupRep::generators(self)
    }

    fn is_trivial(&self) -> bool {
        SubgroupRep::is_trivial(self)
    }

    fn is_canonical(&self) -> bool {
        SubgroupRep::is_canonical(self)
    }

    fn join(&self, other: &Self) -> Self {
        self.sum(other)
    }

    fn meet(&self, other: &Self) -> Self {
        self.intersect(other)
    }

    fn dist_to_super(&self, sup: &Self) -> ExtDist {
        ExtDist::log_big(self.index_in(sup))
    }

    fn pad(&self, left: usize, right: usize) -> Self {
        let unit = if self.width() == 0 { 0 } else { self.unit() };
        debug_assert!(self.width() > 0 || (left == 0 && right == 0));
        let w = self.width() + left + right;
        let gens: Vec<Vec<u64>> = Block::generators(self)
            .into_iter()
            .map(|g| {
                let mut v = vec![0u64; w];
                v[left..left + g.len()].copy_from_slice(&g);
                v
            })
            .collect();
        let moduli = vec![unit; w];
        SubgroupRep::from_lattice(moduli.clone(), intmat::hnf_mod(&gens, &moduli))
    }

    fn pad_full_right(&self, extra: usize) -> Self {
        let w = self.width() + extra;
        let unit = self.unit();
        let mut gens: Vec<Vec<u64>> = Block::generators(self)
            .into_iter()
            .map(|g| {
                let mut v = vec![0u64; w];
                v[..g.len()].copy_from_slice(&g);
                v
            })
            .collect();
        for i in self.width()..w {
            let mut v = vec![0u64; w];
            v[i] = 1;
            gens.push(v);
        }
        let moduli = vec![unit; w];
        SubgroupRep::from_lattice(moduli.clone(), intmat::hnf_mod(&gens, &moduli))
    }

    fn uses_col(&self, col: usize) -> bool {
        let m = self.unit();
        self.basis_rows().iter().any(|row| row[col] % m != 0)
    }

    fn restrict(&self, lo: usize, hi: usize) -> Self {
        let unit = self.unit();
        let gens: Vec<Vec<u64>> = Block::generators(self)
            .into_iter()
            .map(|g| g[lo..hi].to_vec())
            .collect();
        let moduli = vec![unit; hi - lo];
        SubgroupRep::from_lattice(moduli.clone(), intmat::hnf_mod(&gens, &moduli))
    }

    fn image(&self, matrix: &[Vec<u64>], dst_width: usize) -> Self {
        let unit = self.unit();
        let gens: Vec<Vec<u64>> = self
            .basis_rows()
            .iter()
            .map(|row| apply_matrix(matrix, row, unit))
            .collect();
        let moduli = vec![unit; dst_width];
        SubgroupRep::from_lattice(moduli.clone(), intmat::hnf_mod(&gens, &moduli))
    }

    fn preimage(&self, matrix: &[Vec<u64>], src_width: usize) -> Self {
        let unit = self.unit();
        let src_moduli = vec![unit; src_width];
        let basis =
            intmat::preimage_lattice(matrix, self.basis_rows(), &src_moduli, self.width());
        SubgroupRep::from_lattice(src_moduli, basis)
    }

    fn contains_vec(&self, v: &[u64]) -> bool {
        SubgroupRep::contains_vec(self, v)
    }

    fn elements(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        SubgroupRep::elements(self, budget)
    }
}

impl Block for SubspaceRep {
    fn unit(&self) -> u64 {
        self.p()
    }

    fn width(&self) -> usize {
        self.ambient()
    }

    fn validate_unit(unit: u64) -> Result<()> {
        if !subspace::is_prime(unit) || unit > MAX_MODULUS {
            return Err(Error::InvalidInput(format!(
                "field characteristic {unit} must be a prime <= {MAX_MODULUS}"
            )));
        }
        Ok(())
    }

    fn make_trivial(unit: u64, width: usize) -> Self {
        SubspaceRep::from_rref(unit, width, Vec::new())
    }

    fn make_full(unit: u64, width: usize) -> Self {
        let rows: Vec<Vec<u64>> = (0..width)
            .map(|i| {
                let mut v = vec![0; width];
                v[i] = 1;
                v
            })
            .collect();
        SubspaceRep::from_rref(unit, width, rows)
    }

    fn from_generators(unit: u64, width: usize, gens: &[Vec<u64>]) -> Result<Self> {
        for g in gens {
            if g.len() != width {
                return Err(Error::InvalidInput(format!(
                    "generator has {} coordinates, block width is {width}",
                    g.len()
                )));
            }
        }
        Ok(SubspaceRep::from_rref(
            unit,
            width,
            subspace::rref(gens, unit, width),
        ))
    }

    fn generators(&self) -> Vec<Vec<u64>> {
        self.rows().to_vec()
    }

    fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    fn is_canonical(&self) -> bool {
        SubspaceRep::is_canonical(self)
    }

    fn join(&self, other: &Self) -> Self {
        self.sum(other)
    }

    fn meet(&self, other: &Self) -> Self {
        self.intersect(other)
    }

    fn dist_to_super(&self, sup: &Self) -> ExtDist {
        debug_assert!(self.is_subspace_of(sup));
        ExtDist::dim((sup.dim() - self.dim()) as u64)
    }

    fn pad(&self, left: usize, right: usize) -> Self {
        let w = self.width() + left + right;
        let rows: Vec<Vec<u64>> = self
            .rows()
            .iter()
            .map(|g| {
                let mut v = vec![0u64; w];
                v[left..left + g.len()].copy_from_slice(g);
                v
            })
            .collect();
        // Inserting zero columns preserves echelon form.
        SubspaceRep::from_rref(self.unit(), w, rows)
    }

    fn pad_full_right(&self, extra: usize) -> Self {
        let w = self.width() + extra;
        let p = self.unit();
        let mut rows: Vec<Vec<u64>> = self
            .rows()
            .iter()
            .map(|g| {
                let mut v = vec![0u64; w];
                v[..g.len()].copy_from_slice(g);
                v
            })
            .collect();
        for i in self.width()..w {
            let mut v = vec![0u64; w];
            v[i] = 1;
            rows.push(v);
        }
        SubspaceRep::from_rref(p, w, subspace::rref(&rows, p, w))
    }

    fn uses_col(&self, col: usize) -> bool {
        self.rows().iter().any(|row| row[col] != 0)
    }

    fn restrict(&self, lo: usize, hi: usize) -> Self {
        let p = self.unit();
        let rows: Vec<Vec<u64>> = self.rows().iter().map(|g| g[lo..hi].to_vec()).collect();
        SubspaceRep::from_rref(p, hi - lo, subspace::rref(&rows, p, hi - lo))
    }

    fn image(&self, matrix: &[Vec<u64>], dst_width: usize) -> Self {
        let p = self.unit();
        let rows: Vec<Vec<u64>> = self
            .rows()
            .iter()
            .map(|row| apply_matrix(matrix, row, p))
            .collect();
        SubspaceRep::from_rref(p, dst_width, subspace::rref(&rows, p, dst_width))
    }

    fn preimage(&self, matrix: &[Vec<u64>], src_width: usize) -> Self {
        let p = self.unit();
        // x is in the preimage iff K M x = 0, where K are the membership
        // constraints of this subspace.
        let k = subspace::kernel_fp(self.rows(), p, self.width());
        let km: Vec<Vec<u64>> = k
            .iter()
            .map(|krow| {
                (0..src_width)
                    .map(|j| {
                        let mut acc: u128 = 0;
                        for (i, &kv) in krow.iter().enumerate() {
                            acc += kv as u128 * matrix[i][j] as u128 % p as u128;
                        }
                        (acc % p as u128) as u64
                    })
                    .collect()
            })
            .collect();
        let rows = subspace::kernel_fp(&km, p, src_width);
        SubspaceRep::from_rref(p, src_width, subspace::rref(&rows, p, src_width))
    }

    fn contains_vec(&self, v: &[u64]) -> bool {
        SubspaceRep::contains_vec(self, v)
    }

    fn elements(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        SubspaceRep::elements(self, budget)
    }
}

fn apply_matrix(matrix: &[Vec<u64>], v: &[u64], unit: u64) -> Vec<u64> {
    matrix
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), v.len());
            let mut acc: u128 = 0;
            for (&a, &x) in row.iter().zip(v) {
                acc += (a as u128) * (x as u128) % (unit as u128);
            }
            (acc % unit as u128) as u64
        })
        .collect()
}

/// A finite subgroup (or subspace) of the direct sum over `Z`, stored as an
/// offset plus a block body whose first and last coordinates are in use.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindowElement<B: Block> {
    unit: u64,
    offset: i64,
    body: B,
}

impl<B: Block> WindowElement<B> {
    /// Canonicalize: trim unused edge coordinates, collapse the trivial body
    /// to the empty window at offset zero.
    pub(crate) fn canonical(unit: u64, offset: i64, body: B) -> Self {
        let w = body.width();
        if w == 0 || body.is_trivial() {
            return WindowElement {
                unit,
                offset: 0,
                body: B::make_trivial(unit, 0),
            };
        }
        let lo = (0..w).find(|&c| body.uses_col(c)).expect("nontrivial body");
        let hi = (0..w).rfind(|&c| body.uses_col(c)).unwrap() + 1;
        if lo == 0 && hi == w {
            WindowElement { unit, offset, body }
        } else {
            WindowElement {
                unit,
                offset: offset + lo as i64,
                body: body.restrict(lo, hi),
            }
        }
    }

    pub fn empty(unit: u64) -> Self {
        WindowElement {
            unit,
            offset: 0,
            body: B::make_trivial(unit, 0),
        }
    }

    /// Build from generators living in a window starting at `offset`.
    pub fn from_generators(unit: u64, offset: i64, gens: &[Vec<u64>]) -> Result<Self> {
        B::validate_unit(unit)?;
        let width = gens.iter().map(|g| g.len()).max().unwrap_or(0);
        let padded: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| {
                let mut v = g.clone();
                v.resize(width, 0);
                v
            })
            .collect();
        let body = B::from_generators(unit, width, &padded)?;
        Ok(WindowElement::canonical(unit, offset, body))
    }

    /// The finite subgroup spanned by the basis vectors `e_offset ..
    /// e_{offset+count-1}`.
    pub fn span_of_basis_vectors(unit: u64, offset: i64, count: usize) -> Result<Self> {
        let gens: Vec<Vec<u64>> = (0..count)
            .map(|i| {
                let mut v = vec![0u64; count];
                v[i] = 1;
                v
            })
            .collect();
        WindowElement::from_generators(unit, offset, &gens)
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn width(&self) -> usize {
        self.body.width()
    }

    pub fn body(&self) -> &B {
        &self.body
    }

    pub fn is_empty(&self) -> bool {
        self.body.width() == 0
    }

    /// Translate along the coordinate line. A translation is an isometric
    /// automorphism of the whole carrier.
    pub fn translate(&self, by: i64) -> Self {
        if self.is_empty() {
            self.clone()
        } else {
            WindowElement {
                unit: self.unit,
                offset: self.offset + by,
                body: self.body.clone(),
            }
        }
    }

    /// The body of this element embedded in the window `[lo, lo + width)`,
    /// which must cover it.
    pub(crate) fn body_in_frame(&self, lo: i64, width: usize) -> B {
        if self.is_empty() {
            return B::make_trivial(self.unit, width);
        }
        let left = usize::try_from(self.offset - lo).expect("frame must cover element");
        let right = width - left - self.width();
        self.body.pad(left, right)
    }
}

impl<B: Block> fmt::Display for WindowElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "win[]");
        }
        let gens = self.body.generators();
        let parts: Vec<String> = gens
            .iter()
            .map(|g| {
                let coords: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", coords.join(","))
            })
            .collect();
        write!(
            f,
            "win[{}..{}]<{}>",
            self.offset,
            self.offset + self.width() as i64,
            parts.join(",")
        )
    }
}

/// A banded endomorphism of the direct sum: `f(e_i) = sum_j c_j e_{i+j}`
/// over a finite set of band offsets `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandedEndo {
    unit: u64,
    lo: i64,
    coeffs: Vec<u64>, // dense over lo..lo+len, first and last entries nonzero
}

impl BandedEndo {
    pub fn new(unit: u64, terms: &[(i64, u64)]) -> Result<Self> {
        let mut terms: Vec<(i64, u64)> = terms
            .iter()
            .map(|&(j, c)| (j, c % unit))
            .filter(|&(_, c)| c != 0)
            .collect();
        terms.sort();
        for pair in terms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidInput(format!(
                    "duplicate band offset {}",
                    pair[0].0
                )));
            }
        }
        if terms.is_empty() {
            return Ok(BandedEndo {
                unit,
                lo: 0,
                coeffs: Vec::new(),
            });
        }
        let lo = terms[0].0;
        let hi = terms[terms.len() - 1].0;
        let len = usize::try_from(hi - lo).unwrap() + 1;
        if len > 64 {
            return Err(Error::InvalidInput("band width exceeds 64".into()));
        }
        let mut coeffs = vec![0u64; len];
        for (j, c) in terms {
            coeffs[usize::try_from(j - lo).unwrap()] = c;
        }
        Ok(BandedEndo { unit, lo, coeffs })
    }

    /// The right shift `e_i -> e_{i+1}`.
    pub fn shift(unit: u64) -> Self {
        BandedEndo::new(unit, &[(1, 1)]).expect("shift band")
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn terms(&self) -> Vec<(i64, u64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.lo + i as i64, c))
            .collect()
    }

    pub fn apply<B: Block>(&self, x: &WindowElement<B>) -> WindowElement<B> {
        assert_eq!(self.unit, x.unit(), "band and element have different units");
        if x.is_empty() || self.coeffs.is_empty() {
            return WindowElement::empty(x.unit());
        }
        let w = x.width();
        let dst_w = w + self.coeffs.len() - 1;
        let mut matrix = vec![vec![0u64; w]; dst_w];
        for i in 0..w {
            for (jr, &c) in self.coeffs.iter().enumerate() {
                if c != 0 {
                    matrix[i + jr][i] = c;
                }
            }
        }
        let body = x.body().image(&matrix, dst_w);
        WindowElement::canonical(x.unit(), x.offset() + self.lo, body)
    }
}

impl fmt::Display for BandedEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "band{{0}}");
        }
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|(j, c)| format!("{c}*s^{j}"))
            .collect();
        write!(f, "band{{{}}}", parts.join("+"))
    }
}

/// The sum-ordered carrier of finite subgroups/subspaces of the direct sum.
#[derive(Clone, Debug)]
pub struct WindowCarrier<B: Block> {
    unit: u64,
    _marker: PhantomData<B>,
}

/// Group mode: finite subgroups of `⊕_{i∈Z} Z/m`.
pub type GroupWindowCarrier = WindowCarrier<SubgroupRep>;
/// Field mode: finite-dimensional subspaces of `⊕_{i∈Z} F_p`.
pub type FieldWindowCarrier = WindowCarrier<SubspaceRep>;

impl<B: Block> WindowCarrier<B> {
    pub fn new(unit: u64) -> Result<Self> {
        B::validate_unit(unit)?;
        Ok(WindowCarrier {
            unit,
            _marker: PhantomData,
        })
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    fn mode_name(&self) -> &'static str {
        if std::any::TypeId::of::<B>() == std::any::TypeId::of::<SubspaceRep>() {
            "F"
        } else {
            "Z/"
        }
    }
}

impl<B: Block> Carrier for WindowCarrier<B> {
    type Elem = WindowElement<B>;

    fn describe(&self) -> String {
        format!(
            "finite windows of the direct sum of {}{} over Z",
            self.mode_name(),
            self.unit
        )
    }

    fn bottom(&self) -> WindowElement<B> {
        WindowElement::empty(self.unit)
    }

    fn join(&self, x: &WindowElement<B>, y: &WindowElement<B>) -> WindowElement<B> {
        if x.is_empty() {
            return y.clone();
        }
        if y.is_empty() {
            return x.clone();
        }
        let lo = x.offset().min(y.offset());
        let hi = (x.offset() + x.width() as i64).max(y.offset() + y.width() as i64);
        let w = usize::try_from(hi - lo).unwrap();
        let bx = x.body_in_frame(lo, w);
        let by = y.body_in_frame(lo, w);
        WindowElement::canonical(self.unit, lo, bx.join(&by))
    }

    fn dist(&self, x: &WindowElement<B>, y: &WindowElement<B>) -> ExtDist {
        let join = self.join(x, y);
        if join.is_empty() {
            // Both empty: distance zero in the block's unit system.
            let t = B::make_trivial(self.unit, 0);
            return t.dist_to_super(&t);
        }
        let bx = x.body_in_frame(join.offset(), join.width());
        bx.dist_to_super(join.body())
    }

    fn contains(&self, x: &WindowElement<B>) -> bool {
        if x.unit() != self.unit {
            return false;
        }
        if x.is_empty() {
            return x.offset() == 0 && x.body().is_canonical();
        }
        x.body().is_canonical()
            && !x.body().is_trivial()
            && x.body().uses_col(0)
            && x.body().uses_col(x.width() - 1)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> WindowElement<B> {
        let w = rng.gen_range(0..=4usize);
        if w == 0 {
            return self.bottom();
        }
        let offset = rng.gen_range(-4..=4i64);
        let k = rng.gen_range(0..=2usize);
        let gens: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..w).map(|_| rng.gen_range(0..self.unit)).collect())
            .collect();
        let body = B::from_generators(self.unit, w, &gens).expect("sampled generators are valid");
        WindowElement::canonical(self.unit, offset, body)
    }

    fn flags(&self) -> CarrierFlags {
        CarrierFlags {
            order_convex: true,
            finite_valued: true,
            well_ordered_values: true,
        }
    }
}

/// Convenience: the group-mode carrier for `⊕ Z/m`.
pub fn group_window_carrier(m: u64) -> Result<GroupWindowCarrier> {
    WindowCarrier::new(m)
}

/// Convenience: the field-mode carrier for `⊕ F_p`.
pub fn field_window_carrier(p: u64) -> Result<FieldWindowCarrier> {
    WindowCarrier::new(p)
}

/// Materialize a window element as a concrete subgroup of a finite box
/// `(Z/m)^width` covering `[lo, lo+width)`; oracle support.
pub fn window_as_box_subgroup(
    x: &WindowElement<SubgroupRep>,
    lo: i64,
    width: usize,
) -> Result<(FiniteAbelianGroup, SubgroupRep)> {
    let group = FiniteAbelianGroup::new(vec![x.unit(); width])?;
    if !x.is_empty() {
        let covered = x.offset() >= lo && x.offset() + x.width() as i64 <= lo + width as i64;
        if !covered {
            return Err(Error::InvalidInput(format!(
                "window [{}..{}) not covered by box [{lo}..{})",
                x.offset(),
                x.offset() + x.width() as i64,
                lo + width as i64
            )));
        }
    }
    Ok((group, x.body_in_frame(lo, width)))
}

/// Materialize a field-mode window element in a finite box `F_p^width`.
pub fn window_as_box_subspace(
    x: &WindowElement<SubspaceRep>,
    lo: i64,
    width: usize,
) -> Result<(VectorSpace, SubspaceRep)> {
    let space = VectorSpace::new(x.unit(), width)?;
    if !x.is_empty() {
        let covered = x.offset() >= lo && x.offset() + x.width() as i64 <= lo + width as i64;
        if !covered {
            return Err(Error::InvalidInput("window not covered by box".into()));
        }
    }
    Ok((space, x.body_in_frame(lo, width)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{close, leq};

    fn e0(m: u64) -> WindowElement<SubgroupRep> {
        WindowElement::span_of_basis_vectors(m, 0, 1).unwrap()
    }

    #[test]
    fn canonical_trimming() {
        // Generators (0,1,0) in a window starting at -1: trims to <e_0>.
        let x =
            WindowElement::<SubgroupRep>::from_generators(2, -1, &[vec![0, 1, 0]]).unwrap();
        assert_eq!(x, e0(2));
        assert_eq!(x.offset(), 0);
        assert_eq!(x.width(), 1);
    }

    #[test]
    fn join_aligns_offsets() {
        let c = group_window_carrier(2).unwrap();
        let a = e0(2);
        let b = a.translate(2);
        let j = c.join(&a, &b);
        assert_eq!(j.offset(), 0);
        assert_eq!(j.width(), 3);
        assert_eq!(c.dist(&a, &b), ExtDist::log_int(2));
        assert_eq!(c.dist(&j, &a), ExtDist::zero());
        assert!(leq(&c, &a, &j).unwrap());
    }

    #[test]
    fn closeness_example() {
        let c = group_window_carrier(2).unwrap();
        let a = e0(2);
        let ab = WindowElement::span_of_basis_vectors(2, 0, 2).unwrap();
        assert!(close(&c, &a, &ab).unwrap());
        assert_eq!(c.dist(&a, &ab), ExtDist::log_int(2));
        assert_eq!(c.dist(&ab, &a), ExtDist::zero());
    }

    #[test]
    fn shift_moves_windows() {
        let beta = BandedEndo::shift(2);
        let a = e0(2);
        let b = beta.apply(&a);
        assert_eq!(b, a.translate(1));
        // Two applications: offset 2.
        assert_eq!(beta.apply(&b), a.translate(2));
    }

    #[test]
    fn pascal_band_grows_windows() {
        // f = 1 + shift on F_2 coordinates: f(e_i) = e_i + e_{i+1}.
        let f = BandedEndo::new(2, &[(0, 1), (1, 1)]).unwrap();
        let a = e0(2);
        let fa = f.apply(&a);
        assert_eq!(fa.width(), 2);
        assert_eq!(fa.offset(), 0);
        let c = group_window_carrier(2).unwrap();
        assert_eq!(c.dist(&a, &fa), ExtDist::log_int(2));
    }

    #[test]
    fn negative_band_offsets() {
        let back = BandedEndo::new(3, &[(-1, 2)]).unwrap();
        let a = e0(3);
        let b = back.apply(&a);
        assert_eq!(b.offset(), -1);
        assert_eq!(b.width(), 1);
        // 2*e_{-1} generates the same subgroup as e_{-1} in Z/3.
        let e_m1 = WindowElement::<SubgroupRep>::span_of_basis_vectors(3, -1, 1).unwrap();
        assert_eq!(b, e_m1);
    }

    #[test]
    fn field_mode_windows() {
        let c = field_window_carrier(2).unwrap();
        let a = WindowElement::<SubspaceRep>::span_of_basis_vectors(2, 0, 1).unwrap();
        let b = a.translate(1);
        assert_eq!(c.dist(&a, &b), ExtDist::dim(1));
        let j = c.join(&a, &b);
        assert_eq!(j.width(), 2);
    }

    #[test]
    fn zero_band_collapses_everything() {
        let z = BandedEndo::new(2, &[]).unwrap();
        let a = e0(2);
        assert!(z.apply(&a).is_empty());
    }
}
