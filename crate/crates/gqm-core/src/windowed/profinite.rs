//! Open subgroups of the countable product `∏_{i∈N} Z/m` (or the linearly
//! compact `∏ F_p` in field mode), ordered by reverse inclusion.
//!
//! An open subgroup is the preimage of a block body under the projection onto
//! the first `depth` coordinates. Canonical form uses the minimal depth: the
//! body never contains the full last factor. The semilattice join is
//! intersection, bottom is the whole product, and the distance is the log of
//! the (always finite) relative index `[x : x ∩ y]`.

use crate::carrier::{Carrier, CarrierFlags};
use crate::extdist::ExtDist;
use crate::finite::subgroup::SubgroupRep;
use crate::finite::subspace::SubspaceRep;
use crate::windowed::Block;
use crate::{Error, Result};
use rand::{Rng, RngCore};
use std::fmt;
use std::marker::PhantomData;

/// An open subgroup: all sequences whose first `depth` coordinates land in
/// `body`. Depth zero is the whole product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenSubgroup<B: Block> {
    unit: u64,
    body: B,
}

impl<B: Block> OpenSubgroup<B> {
    /// Canonicalize to minimal depth: while the body contains the full last
    /// factor, project it away.
    pub(crate) fn canonical(unit: u64, mut body: B) -> Self {
        loop {
            let w = body.width();
            if w == 0 {
                break;
            }
            let mut last = vec![0u64; w];
            last[w - 1] = 1;
            if !body.contains_vec(&last) {
                break;
            }
            // Dropping the last coordinate: image under [I | 0].
            let mut proj = vec![vec![0u64; w]; w - 1];
            for (i, row) in proj.iter_mut().enumerate() {
                row[i] = 1;
            }
            body = body.image(&proj, w - 1);
        }
        OpenSubgroup { unit, body }
    }

    /// The whole product.
    pub fn whole(unit: u64) -> Self {
        OpenSubgroup {
            unit,
            body: B::make_trivial(unit, 0),
        }
    }

    /// Open subgroup with the given body generators at the given depth.
    pub fn from_generators(unit: u64, depth: usize, gens: &[Vec<u64>]) -> Result<Self> {
        B::validate_unit(unit)?;
        for g in gens {
            if g.len() != depth {
                return Err(Error::InvalidInput(format!(
                    "generator has {} coordinates, depth is {depth}",
                    g.len()
                )));
            }
        }
        let body = B::from_generators(unit, depth, gens)?;
        Ok(OpenSubgroup::canonical(unit, body))
    }

    /// The depth-`k` zero cylinder: all sequences vanishing on the first `k`
    /// coordinates.
    pub fn zero_cylinder(unit: u64, k: usize) -> Result<Self> {
        OpenSubgroup::from_generators(unit, k, &[])
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn depth(&self) -> usize {
        self.body.width()
    }

    pub fn body(&self) -> &B {
        &self.body
    }

    pub fn is_whole(&self) -> bool {
        self.depth() == 0
    }

    /// The body viewed at a depth `>=` the canonical one.
    pub(crate) fn body_at_depth(&self, depth: usize) -> B {
        debug_assert!(depth >= self.depth());
        if depth == self.depth() {
            self.body.clone()
        } else if self.is_whole() {
            B::make_full(self.unit, depth)
        } else {
            self.body.pad_full_right(depth - self.depth())
        }
    }
}

impl<B: Block> fmt::Display for OpenSubgroup<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_whole() {
            return write!(f, "cyl[whole]");
        }
        let gens = self.body.generators();
        let parts: Vec<String> = gens
            .iter()
            .map(|g| {
                let coords: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", coords.join(","))
            })
            .collect();
        write!(f, "cyl[depth {}]<{}>", self.depth(), parts.join(","))
    }
}

/// A continuous endomorphism of the product given by a causal band:
/// `f(x)_i = sum_{j>=0} c_j x_{i+j}`. Causality (no negative offsets) makes
/// each output coordinate depend on finitely many inputs, so preimages of
/// open subgroups are open with depth increased by at most the band width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandedCausalEndo {
    unit: u64,
    coeffs: Vec<u64>, // offset j -> c_j, trailing zeros trimmed
}

impl BandedCausalEndo {
    pub fn new(unit: u64, coeffs: &[u64]) -> Result<Self> {
        let mut coeffs: Vec<u64> = coeffs.iter().map(|&c| c % unit).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() > 64 {
            return Err(Error::InvalidInput("band width exceeds 64".into()));
        }
        Ok(BandedCausalEndo { unit, coeffs })
    }

    /// The one-sided shift `f(x)_i = x_{i+1}`.
    pub fn shift(unit: u64) -> Self {
        BandedCausalEndo::new(unit, &[0, 1]).expect("shift band")
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `f^{-1}(u)`: open, with depth at most `u.depth() + band width`.
    pub fn preimage_of<B: Block>(&self, u: &OpenSubgroup<B>) -> OpenSubgroup<B> {
        assert_eq!(self.unit, u.unit(), "band and element have different units");
        if u.is_whole() || self.coeffs.is_empty() {
            // Zero maps land in every subgroup; preimage is everything.
            return OpenSubgroup::whole(u.unit());
        }
        let k = u.depth();
        let span = self.coeffs.len(); // offsets 0..span
        let src_w = k + span - 1;
        let mut matrix = vec![vec![0u64; src_w]; k];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, &c) in self.coeffs.iter().enumerate() {
                if c != 0 {
                    row[i + j] = c;
                }
            }
        }
        let body = u.body().preimage(&matrix, src_w);
        OpenSubgroup::canonical(u.unit(), body)
    }
}

impl fmt::Display for BandedCausalEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "causal{{0}}");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, c)| format!("{c}*s^{j}"))
            .collect();
        write!(f, "causal{{{}}}", parts.join("+"))
    }
}

/// The intersection-ordered carrier of open subgroups of the product.
#[derive(Clone, Debug)]
pub struct ProfiniteCarrier<B: Block> {
    unit: u64,
    _marker: PhantomData<B>,
}

/// Group mode: open subgroups of `∏_{i∈N} Z/m`.
pub type GroupProfiniteCarrier = ProfiniteCarrier<SubgroupRep>;
/// Field mode: open subspaces of `∏_{i∈N} F_p`.
pub type FieldProfiniteCarrier = ProfiniteCarrier<SubspaceRep>;

impl<B: Block> ProfiniteCarrier<B> {
    pub fn new(unit: u64) -> Result<Self> {
        B::validate_unit(unit)?;
        Ok(ProfiniteCarrier {
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

impl<B: Block> Carrier for ProfiniteCarrier<B> {
    type Elem = OpenSubgroup<B>;

    fn describe(&self) -> String {
        format!(
            "open subgroups of the product of {}{} over N by intersection",
            self.mode_name(),
            self.unit
        )
    }

    fn bottom(&self) -> OpenSubgroup<B> {
        OpenSubgroup::whole(self.unit)
    }

    fn join(&self, x: &OpenSubgroup<B>, y: &OpenSubgroup<B>) -> OpenSubgroup<B> {
        if x.is_whole() {
            return y.clone();
        }
        if y.is_whole() {
            return x.clone();
        }
        let k = x.depth().max(y.depth());
        let bx = x.body_at_depth(k);
        let by = y.body_at_depth(k);
        OpenSubgroup::canonical(self.unit, bx.meet(&by))
    }

    fn dist(&self, x: &OpenSubgroup<B>, y: &OpenSubgroup<B>) -> ExtDist {
        // log [x : x ∩ y], measured in the common finite quotient.
        let meet = self.join(x, y);
        let k = x.depth().max(meet.depth());
        let bm = meet.body_at_depth(k);
        let bx = x.body_at_depth(k);
        bm.dist_to_super(&bx)
    }

    fn contains(&self, x: &OpenSubgroup<B>) -> bool {
        if x.unit() != self.unit || !x.body().is_canonical() {
            return false;
        }
        let w = x.depth();
        if w == 0 {
            return true;
        }
        let mut last = vec![0u64; w];
        last[w - 1] = 1;
        !x.body().contains_vec(&last)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> OpenSubgroup<B> {
        let depth = rng.gen_range(0..=4usize);
        if depth == 0 {
            return self.bottom();
        }
        let k = rng.gen_range(0..=2usize);
        let gens: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..depth).map(|_| rng.gen_range(0..self.unit)).collect())
            .collect();
        let body = B::from_generators(self.unit, depth, &gens).expect("sampled generators");
        OpenSubgroup::canonical(self.unit, body)
    }

    fn flags(&self) -> CarrierFlags {
        CarrierFlags {
            order_convex: true,
            finite_valued: true,
            well_ordered_values: true,
        }
    }
}

/// Convenience: group-mode profinite carrier over `∏ Z/m`.
pub fn group_profinite_carrier(m: u64) -> Result<GroupProfiniteCarrier> {
    ProfiniteCarrier::new(m)
}

/// Convenience: field-mode profinite carrier over `∏ F_p`.
pub fn field_profinite_carrier(p: u64) -> Result<FieldProfiniteCarrier> {
    ProfiniteCarrier::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{close, leq};

    #[test]
    fn canonical_depth_is_minimal() {
        // Body {x_0 = 0} stated at depth 3: x_1, x_2 unconstrained.
        let u = OpenSubgroup::<SubgroupRep>::from_generators(
            2,
            3,
            &[vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(u.depth(), 1);
        assert_eq!(u, OpenSubgroup::zero_cylinder(2, 1).unwrap());
    }

    #[test]
    fn whole_group_is_bottom() {
        let c = group_profinite_carrier(2).unwrap();
        let u = OpenSubgroup::zero_cylinder(2, 1).unwrap();
        // d(u, whole) = 0 (whole is below everything); d(whole, u) = log 2.
        assert_eq!(c.dist(&u, &c.bottom()), ExtDist::zero());
        assert_eq!(c.dist(&c.bottom(), &u), ExtDist::log_int(2));
        assert!(leq(&c, &c.bottom(), &u).unwrap());
        assert!(close(&c, &c.bottom(), &u).unwrap());
    }

    #[test]
    fn intersection_is_join() {
        let c = group_profinite_carrier(3).unwrap();
        let u1 = OpenSubgroup::<SubgroupRep>::zero_cylinder(3, 1).unwrap();
        let u2 = OpenSubgroup::from_generators(3, 2, &[vec![1, 0]]).unwrap();
        let j = c.join(&u1, &u2);
        // {x0=0} ∩ ({x1=0} + <e0>) = {x0=0, x1=0}... the second subgroup is
        // generated by e0 at depth 2, i.e. {x : x1 = 0} + e0 Z/3 = {x1=0}.
        assert_eq!(j.depth(), 2);
        assert_eq!(c.dist(&u1, &j), ExtDist::log_int(3));
    }

    #[test]
    fn one_sided_shift_preimage() {
        let sigma = BandedCausalEndo::shift(5);
        let u = OpenSubgroup::<SubgroupRep>::zero_cylinder(5, 1).unwrap();
        // sigma^{-1}{x0=0} = {x1=0}: depth 2, body <e0>.
        let pre = sigma.preimage_of(&u);
        assert_eq!(pre.depth(), 2);
        assert_eq!(
            pre,
            OpenSubgroup::from_generators(5, 2, &[vec![1, 0]]).unwrap()
        );
        let c = group_profinite_carrier(5).unwrap();
        let both = c.join(&u, &pre);
        assert_eq!(both, OpenSubgroup::zero_cylinder(5, 2).unwrap());
        assert_eq!(c.dist(&u, &both), ExtDist::log_int(5));
    }

    #[test]
    fn causal_preimage_depth_bound() {
        // f(x)_i = x_i + 2 x_{i+2} on Z/4: band width 2.
        let f = BandedCausalEndo::new(4, &[1, 0, 2]).unwrap();
        let u = OpenSubgroup::<SubgroupRep>::zero_cylinder(4, 3).unwrap();
        let pre = f.preimage_of(&u);
        assert!(pre.depth() <= 3 + 2);
    }

    #[test]
    fn zero_map_preimage_is_whole() {
        let z = BandedCausalEndo::new(2, &[]).unwrap();
        let u = OpenSubgroup::<SubgroupRep>::zero_cylinder(2, 2).unwrap();
        assert!(z.preimage_of(&u).is_whole());
    }

    #[test]
    fn field_mode_cylinders() {
        let c = field_profinite_carrier(3).unwrap();
        let u = OpenSubgroup::<SubspaceRep>::zero_cylinder(3, 2).unwrap();
        assert_eq!(c.dist(&c.bottom(), &u), ExtDist::dim(2));
    }
}
