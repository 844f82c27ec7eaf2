//! Bit-packed vectors over GF(4).
//!
//! Entries are stored two bits each, 32 per `u64`, with entry 0 in the most
//! significant bits of word 0. That layout makes the derived ordering on the
//! word array coincide with the lexicographic order on entries
//! (0 < 1 < α < α²), so canonical forms sort without unpacking.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf4::Gf4;

const PER_WORD: usize = 32;
const LOW_BITS: u64 = 0x5555_5555_5555_5555;

type Words = SmallVec<[u64; 2]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfVector {
    len: usize,
    words: Words,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(PER_WORD)
}

#[inline]
fn shift_of(i: usize) -> u32 {
    (62 - 2 * (i % PER_WORD)) as u32
}

#[inline]
fn mul_alpha_word(w: u64) -> u64 {
    // (a0 + a1·α)·α = a1 + (a0 + a1)·α
    let lo = w & LOW_BITS;
    let hi = (w >> 1) & LOW_BITS;
    hi | ((lo ^ hi) << 1)
}

#[inline]
fn mul_alpha_sq_word(w: u64) -> u64 {
    // (a0 + a1·α)·(1 + α) = (a0 + a1) + a0·α
    let lo = w & LOW_BITS;
    let hi = (w >> 1) & LOW_BITS;
    (lo ^ hi) | (lo << 1)
}

#[inline]
fn scale_word(w: u64, c: Gf4) -> u64 {
    match c.bits() {
        0 => 0,
        1 => w,
        2 => mul_alpha_word(w),
        _ => mul_alpha_sq_word(w),
    }
}

impl GfVector {
    pub fn zeros(len: usize) -> GfVector {
        GfVector {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    /// The all-ones vector (the generator of the repetition code).
    pub fn ones(len: usize) -> GfVector {
        let mut v = GfVector::zeros(len);
        for i in 0..len {
            v.set(i, Gf4::ONE);
        }
        v
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> GfVector {
        let mut v = GfVector::zeros(len);
        v.set(i, Gf4::ONE);
        v
    }

    pub fn from_entries(entries: &[Gf4]) -> GfVector {
        let mut v = GfVector::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            v.set(i, x);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Gf4 {
        debug_assert!(i < self.len);
        Gf4::from_bits((self.words[i / PER_WORD] >> shift_of(i)) as u8)
    }

    #[inline]
    pub fn set(&mut self, i: usize, x: Gf4) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / PER_WORD];
        let sh = shift_of(i);
        *w = (*w & !(3u64 << sh)) | ((x.bits() as u64) << sh);
    }

    pub fn entries(&self) -> impl Iterator<Item = Gf4> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight: the number of nonzero entries.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words
            .iter()
            .map(|&w| ((w | (w >> 1)) & LOW_BITS).count_ones() as usize)
            .sum()
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.words.iter().enumerate().find_map(|(k, &w)| {
            (w != 0).then(|| k * PER_WORD + (w.leading_zeros() / 2) as usize)
        })
    }

    pub fn scaled(&self, c: Gf4) -> GfVector {
        GfVector {
            len: self.len,
            words: self.words.iter().map(|&w| scale_word(w, c)).collect(),
        }
    }

    pub fn scale_in_place(&mut self, c: Gf4) {
        for w in self.words.iter_mut() {
            *w = scale_word(*w, c);
        }
    }

    /// `self += c · other`.
    #[inline]
    pub fn add_scaled(&mut self, other: &GfVector, c: Gf4) {
        debug_assert_eq!(self.len, other.len);
        for (w, &o) in self.words.iter_mut().zip(other.words.iter()) {
            *w ^= scale_word(o, c);
        }
    }

    pub fn checked_add(&self, other: &GfVector) -> Result<GfVector> {
        self.check_len(other)?;
        Ok(self + other)
    }

    /// Standard (non-Hermitian) dot product.
    pub fn dot(&self, other: &GfVector) -> Gf4 {
        debug_assert_eq!(self.len, other.len);
        let mut lo_par = 0u32;
        let mut hi_par = 0u32;
        for (&a, &b) in self.words.iter().zip(other.words.iter()) {
            let (a0, a1) = (a & LOW_BITS, (a >> 1) & LOW_BITS);
            let (b0, b1) = (b & LOW_BITS, (b >> 1) & LOW_BITS);
            // (a0 + a1α)(b0 + b1α) = (a0b0 + a1b1) + (a0b1 + a1b0 + a1b1)α
            lo_par ^= ((a0 & b0) ^ (a1 & b1)).count_ones();
            hi_par ^= ((a0 & b1) ^ (a1 & b0) ^ (a1 & b1)).count_ones();
        }
        Gf4::from_bits(((hi_par & 1) << 1 | (lo_par & 1)) as u8)
    }

    /// Entries in reverse order.
    pub fn reversed(&self) -> GfVector {
        let mut out = GfVector::zeros(self.len);
        for i in 0..self.len {
            out.set(self.len - 1 - i, self.get(i));
        }
        out
    }

    pub(crate) fn check_len(&self, other: &GfVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }
}

impl AddAssign<&GfVector> for GfVector {
    #[inline]
    fn add_assign(&mut self, rhs: &GfVector) {
        assert_eq!(self.len, rhs.len, "vector length mismatch");
        for (w, &o) in self.words.iter_mut().zip(rhs.words.iter()) {
            *w ^= o;
        }
    }
}

impl Add for &GfVector {
    type Output = GfVector;
    fn add(self, rhs: &GfVector) -> GfVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl fmt::Display for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.entries() {
            write!(f, "{}", x.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for GfVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<GfVector> {
        let entries = s
            .chars()
            .map(|c| Gf4::from_symbol(c).ok_or_else(|| Error::syntax(1, format!("bad symbol {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GfVector::from_entries(&entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_vector(len: usize) -> impl Strategy<Value = GfVector> {
        proptest::collection::vec(0u8..4, len)
            .prop_map(|v| GfVector::from_entries(&v.into_iter().map(Gf4::from_bits).collect::<Vec<_>>()))
    }

    #[test]
    fn get_set_across_word_boundary() {
        let mut v = GfVector::zeros(70);
        v.set(31, Gf4::ALPHA);
        v.set(32, Gf4::ALPHA_SQ);
        v.set(69, Gf4::ONE);
        assert_eq!(v.get(31), Gf4::ALPHA);
        assert_eq!(v.get(32), Gf4::ALPHA_SQ);
        assert_eq!(v.get(69), Gf4::ONE);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.leading_index(), Some(31));
    }

    #[test]
    fn parse_and_display() {
        let v: GfVector = "10ab".parse().unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v.to_string(), "10ab");
        assert!("10x".parse::<GfVector>().is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let vs: Vec<GfVector> = ["0b", "10", "1a", "a0", "b1"].iter().map(|s| s.parse().unwrap()).collect();
        let mut sorted = vs.clone();
        sorted.sort();
        assert_eq!(vs, sorted);
    }

    #[test]
    fn checked_add_rejects_mismatch() {
        let a = GfVector::zeros(3);
        let b = GfVector::zeros(4);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::LengthMismatch { expected: 3, found: 4 })
        );
    }

    proptest! {
        #[test]
        fn packed_ops_match_scalar(a in arb_vector(40), b in arb_vector(40), c in 0u8..4) {
            let c = Gf4::from_bits(c);
            let sum = &a + &b;
            let scaled = a.scaled(c);
            let mut dot = Gf4::ZERO;
            for i in 0..40 {
                prop_assert_eq!(sum.get(i), a.get(i) + b.get(i));
                prop_assert_eq!(scaled.get(i), a.get(i) * c);
                dot += a.get(i) * b.get(i);
            }
            prop_assert_eq!(a.dot(&b), dot);
            prop_assert_eq!(a.weight(), a.entries().filter(|x| !x.is_zero()).count());
        }

        #[test]
        fn reverse_is_involution(a in arb_vector(37)) {
            prop_assert_eq!(a.reversed().reversed(), a);
        }
    }
}
