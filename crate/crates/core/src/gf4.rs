//! The field GF(4) = {0, 1, α, α²} with α² = α + 1.
//!
//! Elements are encoded in two bits over the polynomial basis {1, α}:
//!
//! | element | bits | symbol |
//! |---------|------|--------|
//! | 0       | 00   | `0`    |
//! | 1       | 01   | `1`    |
//! | α       | 10   | `a`    |
//! | α²      | 11   | `b`    |
//!
//! With this encoding addition is XOR of the codes, which is what the packed
//! vector kernels in [`crate::vector`] rely on.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf4(u8);

//      0  1  α  α²
const MUL: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
];

const INV: [u8; 4] = [0, 1, 3, 2];

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const ALPHA: Gf4 = Gf4(2);
    pub const ALPHA_SQ: Gf4 = Gf4(3);

    /// All four elements in the canonical order 0 < 1 < α < α².
    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::ALPHA, Gf4::ALPHA_SQ];

    /// The three nonzero elements.
    pub const NONZERO: [Gf4; 3] = [Gf4::ONE, Gf4::ALPHA, Gf4::ALPHA_SQ];

    /// Builds an element from its 2-bit code; higher bits are ignored.
    #[inline]
    pub const fn from_bits(bits: u8) -> Gf4 {
        Gf4(bits & 3)
    }

    #[inline]
    pub const fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn inv(self) -> Result<Gf4> {
        if self.0 == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(Gf4(INV[self.0 as usize]))
        }
    }

    pub fn symbol(self) -> char {
        ['0', '1', 'a', 'b'][self.0 as usize]
    }

    pub fn from_symbol(c: char) -> Option<Gf4> {
        match c {
            '0' => Some(Gf4::ZERO),
            '1' => Some(Gf4::ONE),
            'a' => Some(Gf4::ALPHA),
            'b' => Some(Gf4::ALPHA_SQ),
            _ => None,
        }
    }
}

pub fn gf4_add(a: Gf4, b: Gf4) -> Gf4 {
    a + b
}

pub fn gf4_mul(a: Gf4, b: Gf4) -> Gf4 {
    a * b
}

pub fn gf4_inv(a: Gf4) -> Result<Gf4> {
    a.inv()
}

impl Add for Gf4 {
    type Output = Gf4;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

// Characteristic 2: subtraction is addition.
impl Sub for Gf4 {
    type Output = Gf4;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf4 {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf4) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    #[inline]
    fn mul(self, rhs: Gf4) -> Gf4 {
        Gf4(MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl MulAssign for Gf4 {
    #[inline]
    fn mul_assign(&mut self, rhs: Gf4) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}
