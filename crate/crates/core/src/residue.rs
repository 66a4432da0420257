//! Exact arithmetic in Z_m.
//!
//! Residues are plain `u64` values kept in `[0, m)`; the [`Modulus`] they
//! belong to is always passed alongside. Products go through `u128` so any
//! modulus below 2^63 is handled without overflow.

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound (exclusive) on accepted moduli.
pub const MODULUS_LIMIT: u64 = 1 << 63;

/// The ring size `m`, with `2 <= m < 2^63`. Primality is not required.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if (2..MODULUS_LIMIT).contains(&m) {
            Ok(Self(m))
        } else {
            Err(Error::InvalidModulus(m))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical representative of `x` in `[0, m)`, including for negative `x`.
    #[inline]
    pub fn reduce(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        let m = self.0;
        if a >= b {
            a - b
        } else {
            m - (b - a)
        }
    }

    /// True when `value` is already a canonical residue.
    #[inline]
    pub fn contains(self, value: u64) -> bool {
        value < self.0
    }

    /// Checks every entry of `values` is a canonical residue.
    pub fn check_reduced(self, values: &[u64]) -> Result<()> {
        match values.iter().position(|&v| v >= self.0) {
            Some(index) => Err(Error::NotReduced {
                index,
                value: values[index],
                modulus: self.0,
            }),
            None => Ok(()),
        }
    }

    /// Number of bits needed to hold any residue, `ceil(log2 m)`.
    pub fn residue_bits(self) -> u32 {
        64 - (self.0 - 1).leading_zeros()
    }

    /// Largest `w` with `2^w <= m`, i.e. `floor(log2 m)`.
    pub fn symbol_bits(self) -> u32 {
        63 - self.0.leading_zeros()
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(m: u64) -> Result<Self> {
        Self::new(m)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn reduce(x: i128, m: Modulus) -> u64 {
    m.reduce(x)
}

pub fn mul_mod(a: u64, b: u64, m: Modulus) -> u64 {
    m.mul(a, b)
}

/// `sum(u[i] * v[i]) mod m`.
pub fn dot_mod(u: &[u64], v: &[u64], m: Modulus) -> Result<u64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    let modulus = m.get() as u128;
    // acc < 2^63 and each product < 2^126, so the sum never wraps.
    let acc = u.iter().zip(v).fold(0u128, |acc, (&a, &b)| {
        (acc + a as u128 * b as u128) % modulus
    });
    Ok(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn modulus_bounds() {
        assert!(matches!(Modulus::new(0), Err(Error::InvalidModulus(0))));
        assert!(matches!(Modulus::new(1), Err(Error::InvalidModulus(1))));
        assert!(Modulus::new(2).is_ok());
        assert!(Modulus::new(MODULUS_LIMIT - 1).is_ok());
        assert!(Modulus::new(MODULUS_LIMIT).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(8, m(7)), 1);
        assert_eq!(reduce(0, m(41)), 0);
        assert_eq!(reduce(-1, m(29)), 28);
        assert_eq!(reduce(-29, m(29)), 0);
        assert_eq!(reduce(i128::MIN, m(7)), (i128::MIN).rem_euclid(7) as u64);
    }

    #[test]
    fn mul_mod_examples() {
        assert_eq!(mul_mod(28, 20, m(41)), 27);
        assert_eq!(mul_mod(0, 5, m(7)), 0);
        assert_eq!(mul_mod(78, 54, m(103)), 92);
        let big = m(MODULUS_LIMIT - 25);
        assert_eq!(mul_mod(big.get() - 1, big.get() - 1, big), 1);
    }

    #[test]
    fn dot_mod_examples() {
        assert_eq!(dot_mod(&[0, 2, 0, 1], &[1, 1, 1, 1], m(7)).unwrap(), 3);
        assert_eq!(dot_mod(&[], &[], m(7)).unwrap(), 0);
        let u = [3, 5, 10, 20, 40];
        assert_eq!(dot_mod(&u, &u, m(79)).unwrap(), 1);
        assert!(matches!(
            dot_mod(&[1, 2], &[1], m(7)),
            Err(Error::LengthMismatch {
                expected: 2,
                actual: 1
            })
        ));
    }

    #[test]
    fn add_sub_wrap() {
        let q = m(7);
        assert_eq!(q.add(6, 6), 5);
        assert_eq!(q.sub(2, 5), 4);
        assert_eq!(q.sub(5, 5), 0);
    }

    #[test]
    fn bit_widths() {
        let cases = [
            (2, 1, 1),
            (3, 1, 2),
            (4, 2, 2),
            (7, 2, 3),
            (8, 3, 3),
            (103, 6, 7),
            (256, 8, 8),
        ];
        for (modulus, w, big_w) in cases {
            assert_eq!(m(modulus).symbol_bits(), w, "floor log2 {modulus}");
            assert_eq!(m(modulus).residue_bits(), big_w, "ceil log2 {modulus}");
        }
    }

    #[test]
    fn check_reduced_reports_position() {
        assert!(m(7).check_reduced(&[0, 6, 3]).is_ok());
        assert!(matches!(
            m(7).check_reduced(&[0, 7, 3]),
            Err(Error::NotReduced {
                index: 1,
                value: 7,
                modulus: 7
            })
        ));
    }
}
