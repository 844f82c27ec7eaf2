//! The reverse permutation and the structure it induces on F4^n.
//!
//! F4^n is a module over R = F4[x]/(x²+1) with x acting as the reverse map
//! `r`. Reversible codes are exactly the submodules. With `T = r + id`,
//! `K = ker T` is the space of palindromes and `I = im T ⊆ K`; the socle of
//! a submodule `M` is `M ∩ K`, and every submodule decomposes as
//! `tR ⊕ sF` with `dim M = 2t + s` and `dim soc(M) = t + s`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subspace::{dual, subspace_intersect, Subspace};
use crate::vector::GfVector;

/// `r(v)`: coordinates in reverse order.
pub fn reverse_map(v: &GfVector) -> GfVector {
    v.reversed()
}

/// `T(v) = r(v) + v`.
pub fn t_map(v: &GfVector) -> GfVector {
    &v.reversed() + v
}

/// Keeps the first `⌊n/2⌋` coordinates and zeroes the rest.
pub fn hat(v: &GfVector) -> GfVector {
    let n = v.len();
    let mut out = GfVector::zeros(n);
    for i in 0..n / 2 {
        out.set(i, v.get(i));
    }
    out
}

/// The subspaces `K` and `I` and related vectors for a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReverseSpace {
    n: usize,
    k: Subspace,
    i: Subspace,
    repetition: GfVector,
    middle_unit: Option<GfVector>,
}

impl ReverseSpace {
    pub fn new(n: usize) -> Result<ReverseSpace> {
        if n < 2 {
            return Err(Error::out_of_range(format!("length must be at least 2, got {n}")));
        }
        // γ = { e_i + r(e_i) : i < ⌊n/2⌋ }
        let gamma: Vec<GfVector> = (0..n / 2).map(|i| t_map(&GfVector::unit(n, i))).collect();
        let middle_unit = (n % 2 == 1).then(|| GfVector::unit(n, n / 2));
        let mut k_rows = gamma.clone();
        k_rows.extend(middle_unit.iter().cloned());
        Ok(ReverseSpace {
            n,
            k: Subspace::from_rows(n, k_rows)?,
            i: Subspace::from_rows(n, gamma)?,
            repetition: GfVector::ones(n),
            middle_unit,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K = ker T`, the palindromes; dimension `⌈n/2⌉`.
    pub fn k(&self) -> &Subspace {
        &self.k
    }

    /// `I = im T`; dimension `⌊n/2⌋`.
    pub fn i(&self) -> &Subspace {
        &self.i
    }

    pub fn repetition(&self) -> &GfVector {
        &self.repetition
    }

    /// The unit vector at the middle coordinate, present only for odd `n`.
    pub fn middle_unit(&self) -> Option<&GfVector> {
        self.middle_unit.as_ref()
    }

    /// `⌊n/2⌋`
    pub fn floor_half(&self) -> usize {
        self.n / 2
    }

    /// `⌈n/2⌉`
    pub fn ceil_half(&self) -> usize {
        self.n.div_ceil(2)
    }

    /// Whether the all-ones vector lies in `I` (true exactly for even `n`).
    pub fn ones_in_i(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    fn check(&self, m: &Subspace) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: m.n(),
            });
        }
        Ok(())
    }
}

pub fn build_reverse_space(n: usize) -> Result<ReverseSpace> {
    ReverseSpace::new(n)
}

pub fn is_invariant(m: &Subspace) -> bool {
    m.basis().iter().all(|b| m.contains(&b.reversed()))
}

pub fn contains_one(m: &Subspace) -> bool {
    m.contains(&GfVector::ones(m.n()))
}

pub fn is_self_orthogonal(m: &Subspace) -> bool {
    let b = m.basis();
    (0..b.len()).all(|i| (i..b.len()).all(|j| b[i].dot(&b[j]).is_zero()))
}

/// `soc(M) = M ∩ K`; `M` must be reversible.
pub fn socle(m: &Subspace, rs: &ReverseSpace) -> Result<Subspace> {
    rs.check(m)?;
    if !is_invariant(m) {
        return Err(Error::NotInvariant);
    }
    subspace_intersect(m, rs.k())
}

/// Isomorphism type `(t, s)` of a module `tR ⊕ sF`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IsoType {
    pub t: usize,
    pub s: usize,
}

impl IsoType {
    pub fn new(t: usize, s: usize) -> IsoType {
        IsoType { t, s }
    }

    pub fn dim(self) -> usize {
        2 * self.t + self.s
    }

    pub fn socle_dim(self) -> usize {
        self.t + self.s
    }

    /// All types `(t, s)` with `t + s ≥ 1` realizable in length `n`, ordered
    /// by `t` then `s`.
    pub fn all_for(n: usize) -> Vec<IsoType> {
        let (f, h) = (n / 2, n.div_ceil(2));
        (0..=f)
            .flat_map(|t| (0..=h - t).map(move |s| IsoType::new(t, s)))
            .filter(|ty| ty.t + ty.s >= 1)
            .collect()
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        self.t <= n / 2 && self.t + self.s <= n.div_ceil(2)
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.s)
    }
}

fn type_from_dims(dim: usize, soc_dim: usize) -> IsoType {
    IsoType {
        t: dim - soc_dim,
        s: 2 * soc_dim - dim,
    }
}

pub fn iso_type(m: &Subspace, rs: &ReverseSpace) -> Result<IsoType> {
    let soc = socle(m, rs)?;
    Ok(type_from_dims(m.dim(), soc.dim()))
}

/// A reversible code with its socle and isomorphism type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReversibleCode {
    space: Subspace,
    socle: Subspace,
    iso: IsoType,
    contains_one: bool,
}

impl ReversibleCode {
    pub fn new(space: Subspace, rs: &ReverseSpace) -> Result<ReversibleCode> {
        let socle = socle(&space, rs)?;
        let iso = type_from_dims(space.dim(), socle.dim());
        let contains_one = space.contains(rs.repetition());
        Ok(ReversibleCode {
            space,
            socle,
            iso,
            contains_one,
        })
    }

    /// Assembles a code whose socle and type are already known.
    pub(crate) fn from_parts(space: Subspace, socle: Subspace, contains_one: bool) -> ReversibleCode {
        let iso = type_from_dims(space.dim(), socle.dim());
        debug_assert!(is_invariant(&space));
        debug_assert!(socle.is_subspace_of(&space));
        ReversibleCode {
            space,
            socle,
            iso,
            contains_one,
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn socle(&self) -> &Subspace {
        &self.socle
    }

    pub fn iso_type(&self) -> IsoType {
        self.iso
    }

    pub fn iso_t(&self) -> usize {
        self.iso.t
    }

    pub fn iso_s(&self) -> usize {
        self.iso.s
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `T(M)`: for a submodule this is the socle of its `tR` part.
pub fn t_image(m: &Subspace) -> Subspace {
    let rows = m.basis().iter().map(t_map).collect();
    Subspace::from_rows(m.n(), rows).expect("same length")
}

/// Dual code; reversible codes have reversible duals.
pub fn dual_code(m: &Subspace) -> Subspace {
    dual(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf4::Gf4;
    use rand::{Rng, SeedableRng};

    fn v(s: &str) -> GfVector {
        s.parse().unwrap()
    }

    fn sp(n: usize, rows: &[&str]) -> Subspace {
        Subspace::from_rows(n, rows.iter().map(|r| v(r)).collect()).unwrap()
    }

    fn random_vector(rng: &mut impl Rng, n: usize) -> GfVector {
        let e: Vec<Gf4> = (0..n).map(|_| Gf4::from_bits(rng.gen_range(0..4))).collect();
        GfVector::from_entries(&e)
    }

    #[test]
    fn reverse_map_examples() {
        assert_eq!(reverse_map(&v("10a0")), v("0a01"));
        assert_eq!(reverse_map(&v("1aa1")), v("1aa1"));
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let x = random_vector(&mut rng, 9);
            assert_eq!(reverse_map(&reverse_map(&x)), x);
        }
    }

    #[test]
    fn t_map_examples() {
        assert_eq!(t_map(&v("100")), v("101"));
        let rs = ReverseSpace::new(5).unwrap();
        for k in rs.k().codewords() {
            assert!(t_map(&k).is_zero());
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let x = random_vector(&mut rng, 8);
            assert!(t_map(&t_map(&x)).is_zero());
        }
    }

    #[test]
    fn build_examples() {
        let rs = ReverseSpace::new(2).unwrap();
        assert_eq!(rs.k(), &sp(2, &["11"]));
        assert_eq!(rs.i(), rs.k());
        assert!(rs.middle_unit().is_none());

        let rs = ReverseSpace::new(3).unwrap();
        assert_eq!(rs.i(), &sp(3, &["101"]));
        assert_eq!(rs.k(), &sp(3, &["101", "010"]));
        assert_eq!(rs.middle_unit(), Some(&v("010")));

        let rs = ReverseSpace::new(4).unwrap();
        assert_eq!(rs.i(), &sp(4, &["1001", "0110"]));
        assert_eq!(rs.k(), rs.i());

        assert!(matches!(ReverseSpace::new(1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn structure_for_lengths_two_to_ten() {
        for n in 2..=10 {
            let rs = ReverseSpace::new(n).unwrap();
            assert_eq!(rs.k().dim(), n.div_ceil(2));
            assert_eq!(rs.i().dim(), n / 2);
            assert!(rs.i().is_subspace_of(rs.k()));
            assert_eq!(n % 2 == 0, rs.i() == rs.k());
            assert_eq!(&dual(rs.i()), rs.k());
            assert!(is_self_orthogonal(rs.i()));
            // K is exactly the fixed points of r.
            assert!(rs.k().basis().iter().all(|b| &b.reversed() == b));
            // T applied to the standard basis spans I.
            assert_eq!(&t_image(&Subspace::full(n)), rs.i());
        }
    }

    #[test]
    fn socle_examples() {
        let rs = ReverseSpace::new(3).unwrap();
        let m = sp(3, &["101"]);
        assert_eq!(socle(&m, &rs).unwrap(), m);
        assert_eq!(&socle(&Subspace::full(3), &rs).unwrap(), rs.k());
        assert_eq!(socle(&sp(3, &["100", "001"]), &rs).unwrap(), sp(3, &["101"]));
        assert_eq!(socle(&sp(3, &["100"]), &rs), Err(Error::NotInvariant));
    }

    #[test]
    fn socle_matches_brute_force_intersection() {
        let rs = ReverseSpace::new(3).unwrap();
        let m = sp(3, &["100", "001"]);
        let fixed: Vec<GfVector> = m.codewords().filter(|c| &c.reversed() == c).collect();
        assert_eq!(fixed.len(), 4);
        let soc = socle(&m, &rs).unwrap();
        assert!(fixed.iter().all(|c| soc.contains(c)));
        assert_eq!(1 << (2 * soc.dim()), fixed.len());
    }

    #[test]
    fn iso_type_examples() {
        let rs4 = ReverseSpace::new(4).unwrap();
        assert_eq!(iso_type(&Subspace::full(4), &rs4).unwrap(), IsoType::new(2, 0));
        let rs3 = ReverseSpace::new(3).unwrap();
        assert_eq!(iso_type(&Subspace::full(3), &rs3).unwrap(), IsoType::new(1, 1));
        let rep = Subspace::span_of(rs3.repetition());
        assert_eq!(iso_type(&rep, &rs3).unwrap(), IsoType::new(0, 1));
        assert_eq!(iso_type(&sp(3, &["100"]), &rs3), Err(Error::NotInvariant));
    }

    #[test]
    fn dual_examples() {
        for n in 2..=10 {
            let rs = ReverseSpace::new(n).unwrap();
            assert_eq!(&dual_code(rs.i()), rs.k());
            assert_eq!(dual_code(&Subspace::full(n)), Subspace::zero(n));
            assert_eq!(dual_code(&Subspace::zero(n)), Subspace::full(n));
        }
    }

    #[test]
    fn hat_examples() {
        assert_eq!(hat(&v("1aa1")), v("1a00"));
        assert_eq!(hat(&v("010")), v("000"));
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let x = random_vector(&mut rng, 7);
            let y = random_vector(&mut rng, 7);
            assert_eq!(hat(&hat(&x)), hat(&x));
            assert_eq!(hat(&(&x + &y)), &hat(&x) + &hat(&y));
        }
    }

    #[test]
    fn predicate_examples() {
        for n in 2..=10 {
            let rs = ReverseSpace::new(n).unwrap();
            assert!(is_self_orthogonal(rs.i()));
            let rep = Subspace::span_of(rs.repetition());
            assert!(is_invariant(&rep));
            assert!(contains_one(&rep));
            assert!(!is_invariant(&Subspace::span_of(&GfVector::unit(n, 0))));
        }
    }

    #[test]
    fn iso_types_in_range() {
        assert_eq!(
            IsoType::all_for(3),
            vec![IsoType::new(0, 1), IsoType::new(0, 2), IsoType::new(1, 0), IsoType::new(1, 1)]
        );
        assert_eq!(IsoType::all_for(2), vec![IsoType::new(0, 1), IsoType::new(1, 0)]);
    }
}
