//! Forward/inverse NHT block transforms and byte-stream scrambling.
//!
//! With row 0 of `N` equal to `0, u0, 0, u1, ...`, the forward transform is
//! `G[j] = sum_i u_i * F[(j + 2i + 1) mod n]` and, for a valid key, the
//! inverse through `N^T` is `F[j] = sum_i u_i * G[(j - 2i - 1) mod n]`.

use rayon::prelude::*;

use crate::circulant::NhtMatrix;
use crate::conditions::check_solution;
use crate::container::{pack_bits, unpack_bits, ContainerHeader, ScrambleContainer};
use crate::error::{Error, Result};
use crate::residue::Modulus;

/// Blocks per rayon task when transforming streams.
const BLOCKS_PER_TASK: usize = 1024;

/// A coefficient vector that passed every orthogonality condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrambleKey {
    matrix: NhtMatrix,
}

impl ScrambleKey {
    pub fn new(n: usize, m: Modulus, coeffs: &[u64]) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidBlockSize(n));
        }
        if coeffs.len() != n / 2 {
            return Err(Error::LengthMismatch {
                expected: n / 2,
                actual: coeffs.len(),
            });
        }
        Self::from_matrix(NhtMatrix::from_coeffs(m, coeffs)?)
    }

    pub fn from_matrix(matrix: NhtMatrix) -> Result<Self> {
        let verdict = check_solution(matrix.coeffs(), matrix.modulus())?;
        if !verdict.pass {
            return Err(Error::InvalidKey(verdict));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &NhtMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn modulus(&self) -> Modulus {
        self.matrix.modulus()
    }

    pub fn coeffs(&self) -> &[u64] {
        self.matrix.coeffs()
    }
}

fn check_block(matrix: &NhtMatrix, block: &[u64]) -> Result<()> {
    if block.len() != matrix.n() {
        return Err(Error::LengthMismatch {
            expected: matrix.n(),
            actual: block.len(),
        });
    }
    matrix.modulus().check_reduced(block)
}

/// `out = N x` (or `N^T x` when `transpose`). Inputs must be reduced.
fn apply(matrix: &NhtMatrix, x: &[u64], out: &mut [u64], transpose: bool) {
    let n = x.len();
    let m = matrix.modulus();
    let modulus = m.get() as u128;
    let coeffs = matrix.coeffs();
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = 0u128;
        for (i, &c) in coeffs.iter().enumerate() {
            let offset = 2 * i + 1;
            let k = if transpose {
                (j + n - offset) % n
            } else {
                (j + offset) % n
            };
            acc = (acc + c as u128 * x[k] as u128) % modulus;
        }
        *slot = acc as u64;
    }
}

/// `G = N F mod m` for a validated key.
pub fn forward(key: &ScrambleKey, f: &[u64]) -> Result<Vec<u64>> {
    forward_unvalidated(&key.matrix, f)
}

/// `G = N F mod m` for any coefficient vector, valid key or not. Used to
/// reproduce published tables whose keys fail the conditions.
pub fn forward_unvalidated(matrix: &NhtMatrix, f: &[u64]) -> Result<Vec<u64>> {
    check_block(matrix, f)?;
    let mut g = vec![0; f.len()];
    apply(matrix, f, &mut g, false);
    Ok(g)
}

/// `F = N^T G mod m`.
pub fn inverse(key: &ScrambleKey, g: &[u64]) -> Result<Vec<u64>> {
    check_block(&key.matrix, g)?;
    let mut f = vec![0; g.len()];
    apply(&key.matrix, g, &mut f, true);
    Ok(f)
}

fn transform_blocks(matrix: &NhtMatrix, input: &[u64], transpose: bool) -> Vec<u64> {
    let n = matrix.n();
    let mut output = vec![0u64; input.len()];
    output
        .par_chunks_mut(n * BLOCKS_PER_TASK)
        .zip(input.par_chunks(n * BLOCKS_PER_TASK))
        .for_each(|(out, inp)| {
            for (o, i) in out.chunks_mut(n).zip(inp.chunks(n)) {
                apply(matrix, i, o, transpose);
            }
        });
    output
}

/// Splits `bytes` into `floor(log2 m)`-bit symbols, pads to whole blocks and
/// transforms each block.
pub fn scramble_stream(key: &ScrambleKey, bytes: &[u8]) -> ScrambleContainer {
    let m = key.modulus();
    let n = key.n();
    let header = ContainerHeader {
        n,
        m,
        coeffs: key.coeffs().to_vec(),
        original_len: bytes.len() as u64,
    };
    let padded = (header.block_count() as usize) * n;
    let symbols = unpack_bits(bytes, m.symbol_bits(), padded);
    let residues = transform_blocks(&key.matrix, &symbols, false);
    ScrambleContainer {
        payload: pack_bits(&residues, m.residue_bits()),
        header,
    }
}

/// Recovers the original bytes. Fails without producing output on any
/// header/key mismatch or payload inconsistency.
pub fn descramble_stream(container: &ScrambleContainer, key: &ScrambleKey) -> Result<Vec<u8>> {
    let header = &container.header;
    if header.n != key.n() {
        return Err(Error::KeyMismatch(format!(
            "container n = {}, key n = {}",
            header.n,
            key.n()
        )));
    }
    if header.m != key.modulus() {
        return Err(Error::KeyMismatch(format!(
            "container modulus {}, key modulus {}",
            header.m,
            key.modulus()
        )));
    }
    if header.coeffs != key.coeffs() {
        return Err(Error::KeyMismatch("coefficients differ".into()));
    }
    let expected = header.payload_len();
    if (container.payload.len() as u128) != expected {
        return Err(Error::Truncated {
            expected: expected.min(u64::MAX as u128) as u64,
            actual: container.payload.len() as u64,
        });
    }

    let m = header.m;
    let w = m.symbol_bits();
    let big_w = m.residue_bits();
    let padded = (header.block_count() as usize) * header.n;
    let residues = unpack_bits(&container.payload, big_w, padded);
    if let Some(bad) = residues.iter().find(|&&r| r >= m.get()) {
        return Err(Error::CorruptPayload(format!(
            "residue {bad} not below modulus {m}"
        )));
    }
    let tail_bits = padded as u128 * big_w as u128 % 8;
    if tail_bits != 0
        && container
            .payload
            .last()
            .is_some_and(|&b| b >> tail_bits != 0)
    {
        return Err(Error::CorruptPayload("nonzero padding bits".into()));
    }

    let symbols = transform_blocks(&key.matrix, &residues, true);
    if let Some(bad) = symbols.iter().find(|&&s| s >> w != 0) {
        return Err(Error::CorruptPayload(format!(
            "decoded symbol {bad} exceeds {w} bits"
        )));
    }
    let data_symbols = header.symbol_count() as usize;
    if symbols[data_symbols..].iter().any(|&s| s != 0) {
        return Err(Error::CorruptPayload("nonzero block padding".into()));
    }
    let mut bytes = pack_bits(&symbols[..data_symbols], w);
    let len = header.original_len as usize;
    if bytes[len..].iter().any(|&b| b != 0) {
        return Err(Error::CorruptPayload(
            "nonzero bits past original length".into(),
        ));
    }
    bytes.truncate(len);
    Ok(bytes)
}
