//! Orthogonality conditions for NHT coefficient vectors.
//!
//! Row 0 of an `n x n` NHT matrix is `0, u0, 0, u1, ..., 0, u(h-1)` with
//! `h = n / 2`. Every odd-lag entry of `N N^T` vanishes identically, and the
//! entry at even lag `2l` is the cyclic autocorrelation of `u` at lag `l`.
//! So `N N^T = I (mod m)` holds exactly when
//!
//! ```text
//! R(0) = sum u_i^2          = 1 (mod m)
//! R(l) = sum u_i u_(i+l)    = 0 (mod m)   for l = 1 ..= h/2
//! ```
//!
//! Lags above `h/2` mirror lower ones (`R(l) = R(h - l)`) and are not checked
//! separately.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::residue::Modulus;

/// The `h = n/2` coefficients occupying the odd positions of row 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffVector(Vec<u64>);

impl CoeffVector {
    /// Requires at least two entries, not all zero.
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewCoefficients(values.len()));
        }
        if values.iter().all(|&v| v == 0) {
            return Err(Error::AllZero);
        }
        Ok(Self(values))
    }

    /// Like [`CoeffVector::new`], additionally requiring every entry `< m`.
    pub fn with_modulus(values: Vec<u64>, m: Modulus) -> Result<Self> {
        m.check_reduced(&values)?;
        Self::new(values)
    }

    pub fn h(&self) -> usize {
        self.0.len()
    }

    /// Matrix size `n = 2h`.
    pub fn block_size(&self) -> usize {
        2 * self.0.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

impl Deref for CoeffVector {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl AsRef<[u64]> for CoeffVector {
    fn as_ref(&self) -> &[u64] {
        &self.0
    }
}

/// Letter name for coefficient `i`: `a`, `b`, ... then `u26`, `u27`, ...
pub fn coefficient_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("u{i}")
    }
}

/// Product terms `u_i * u_j` contributing to one autocorrelation lag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagTerms {
    pub lag: usize,
    /// Ordered pairs `(i, (i + lag) mod h)`, one per `i`.
    pub terms: Vec<(usize, usize)>,
}

impl LagTerms {
    /// Unordered pairs `(min, max)` with their multiplicity.
    pub fn monomials(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for &(i, j) in &self.terms {
            *out.entry((i.min(j), i.max(j))).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for LagTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .monomials()
            .into_iter()
            .map(|((i, j), count)| {
                let var = if i == j {
                    format!("{}^2", coefficient_name(i))
                } else {
                    format!("{}{}", coefficient_name(i), coefficient_name(j))
                };
                if count == 1 {
                    var
                } else {
                    format!("{count}{var}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Symbolic form of every condition for a given `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionSet {
    pub h: usize,
    /// Pairs `(i, i)`; their sum must be 1 mod m.
    pub diagonal: LagTerms,
    /// Lags `1 ..= h/2`; each sum must be 0 mod m.
    pub lags: Vec<LagTerms>,
}

pub fn condition_set(h: usize) -> Result<ConditionSet> {
    if h < 2 {
        return Err(Error::TooFewCoefficients(h));
    }
    let lag_terms = |lag: usize| LagTerms {
        lag,
        terms: (0..h).map(|i| (i, (i + lag) % h)).collect(),
    };
    Ok(ConditionSet {
        h,
        diagonal: lag_terms(0),
        lags: (1..=h / 2).map(lag_terms).collect(),
    })
}

/// Cyclic autocorrelation `sum u_i * u_((i + lag) mod h)` reduced mod `m`.
pub fn autocorrelation(u: &[u64], lag: usize, m: Modulus) -> Result<u64> {
    let h = u.len();
    if lag >= h {
        return Err(Error::LagOutOfRange { lag, h });
    }
    m.check_reduced(u)?;
    Ok(raw_autocorrelation(u, lag, m))
}

#[inline]
fn raw_autocorrelation(u: &[u64], lag: usize, m: Modulus) -> u64 {
    let h = u.len();
    let modulus = m.get() as u128;
    let mut acc = 0u128;
    for i in 0..h {
        let j = if i + lag < h { i + lag } else { i + lag - h };
        acc = (acc + u[i] as u128 * u[j] as u128) % modulus;
    }
    acc as u64
}

/// Outcome of checking a coefficient vector, with every residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    /// `(sum u_i^2 - 1) mod m`.
    pub diagonal_residual: u64,
    /// Autocorrelation at lags `1 ..= h/2`, in order.
    pub lag_residuals: Vec<u64>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: diagonal-1 = {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.diagonal_residual
        )?;
        for (k, r) in self.lag_residuals.iter().enumerate() {
            write!(f, ", lag {} = {}", k + 1, r)?;
        }
        Ok(())
    }
}

pub fn check_solution(u: &[u64], m: Modulus) -> Result<Verdict> {
    if u.len() < 2 {
        return Err(Error::TooFewCoefficients(u.len()));
    }
    m.check_reduced(u)?;
    let h = u.len();
    let diagonal_residual = m.sub(raw_autocorrelation(u, 0, m), 1 % m.get());
    let lag_residuals: Vec<u64> = (1..=h / 2).map(|l| raw_autocorrelation(u, l, m)).collect();
    let pass = diagonal_residual == 0 && lag_residuals.iter().all(|&r| r == 0);
    Ok(Verdict {
        pass,
        diagonal_residual,
        lag_residuals,
    })
}

/// Allocation-free pass/fail test for search loops. Entries must be reduced.
#[inline]
pub fn is_solution(u: &[u64], m: Modulus) -> bool {
    let h = u.len();
    let modulus = m.get();
    let max = (modulus - 1) as u128;
    if max * max * (h as u128) < u64::MAX as u128 {
        // Whole sums fit in a u64: reduce once per lag.
        let sum = |lag: usize| -> u64 {
            let mut acc = 0u64;
            for i in 0..h {
                let j = if i + lag < h { i + lag } else { i + lag - h };
                acc += u[i] * u[j];
            }
            acc % modulus
        };
        if sum(0) != 1 {
            return false;
        }
        (1..=h / 2).all(|l| sum(l) == 0)
    } else {
        if raw_autocorrelation(u, 0, m) != 1 {
            return false;
        }
        (1..=h / 2).all(|l| raw_autocorrelation(u, l, m) == 0)
    }
}
