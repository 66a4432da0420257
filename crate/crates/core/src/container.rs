//! On-disk layout of a scrambled stream.
//!
//! All integers are little-endian.
//!
//! ```text
//! offset  size     field
//! 0       4        magic "NHT1"
//! 4       1        version (1)
//! 5       1        reserved (0)
//! 6       2        n, u16
//! 8       8        m, u64
//! 16      8 * n/2  coefficients u0 .. u(h-1), u64 each
//! ..      8        original byte length, u64
//! ..      ..       residues, ceil(log2 m) bits each, LSB-first, zero-padded
//! ```

use std::io::Write;

use crate::error::{Error, Result};
use crate::residue::{Modulus, MODULUS_LIMIT};

pub const MAGIC: [u8; 4] = *b"NHT1";
pub const VERSION: u8 = 1;

const FIXED_HEADER_LEN: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerHeader {
    pub n: usize,
    pub m: Modulus,
    pub coeffs: Vec<u64>,
    /// Byte length of the unscrambled input.
    pub original_len: u64,
}

impl ContainerHeader {
    pub fn encoded_len(&self) -> usize {
        FIXED_HEADER_LEN + 8 * self.coeffs.len() + 8
    }

    /// Input symbols of `floor(log2 m)` bits before block padding.
    pub fn symbol_count(&self) -> u128 {
        let w = self.m.symbol_bits() as u128;
        (self.original_len as u128 * 8).div_ceil(w)
    }

    pub fn block_count(&self) -> u128 {
        self.symbol_count().div_ceil(self.n as u128)
    }

    /// Exact payload size implied by the header.
    pub fn payload_len(&self) -> u128 {
        let bits = self.block_count() * self.n as u128 * self.m.residue_bits() as u128;
        bits.div_ceil(8)
    }

    fn write_to(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(0);
        out.extend_from_slice(&(self.n as u16).to_le_bytes());
        out.extend_from_slice(&self.m.get().to_le_bytes());
        for c in &self.coeffs {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out.extend_from_slice(&self.original_len.to_le_bytes());
    }

    fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < FIXED_HEADER_LEN {
            return Err(Error::Truncated {
                expected: FIXED_HEADER_LEN as u64,
                actual: bytes.len() as u64,
            });
        }
        if bytes[0..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        if bytes[4] != VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        if bytes[5] != 0 {
            return Err(Error::HeaderCorrupt(format!(
                "reserved byte is {}",
                bytes[5]
            )));
        }
        let n = u16::from_le_bytes([bytes[6], bytes[7]]) as usize;
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::HeaderCorrupt(format!("block size {n}")));
        }
        let m = read_u64(bytes, 8);
        if !(2..MODULUS_LIMIT).contains(&m) {
            return Err(Error::HeaderCorrupt(format!("modulus {m}")));
        }
        let m = Modulus::new(m)?;
        let h = n / 2;
        let header_len = FIXED_HEADER_LEN + 8 * h + 8;
        if bytes.len() < header_len {
            return Err(Error::Truncated {
                expected: header_len as u64,
                actual: bytes.len() as u64,
            });
        }
        let coeffs: Vec<u64> = (0..h)
            .map(|i| read_u64(bytes, FIXED_HEADER_LEN + 8 * i))
            .collect();
        if let Some(c) = coeffs.iter().find(|&&c| c >= m.get()) {
            return Err(Error::HeaderCorrupt(format!(
                "coefficient {c} not below modulus {m}"
            )));
        }
        let original_len = read_u64(bytes, header_len - 8);
        Ok(Self {
            n,
            m,
            coeffs,
            original_len,
        })
    }
}

fn read_u64(bytes: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(bytes[at..at + 8].try_into().expect("8-byte slice"))
}

/// Parsed container: header plus packed residue payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrambleContainer {
    pub header: ContainerHeader,
    pub payload: Vec<u8>,
}

impl ScrambleContainer {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.header.encoded_len() + self.payload.len());
        self.header.write_to(&mut out);
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn write_to<W: Write>(&self, mut writer: W) -> Result<()> {
        writer.write_all(&self.to_bytes())?;
        Ok(())
    }

    /// Strict parse: the payload must have exactly the length the header implies.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let header = ContainerHeader::parse(bytes)?;
        let start = header.encoded_len();
        let expected = header.payload_len();
        let actual = (bytes.len() - start) as u128;
        if expected > u64::MAX as u128 {
            return Err(Error::HeaderCorrupt(format!(
                "original length {} is implausible",
                header.original_len
            )));
        }
        if actual < expected {
            return Err(Error::Truncated {
                expected: (start as u128 + expected) as u64,
                actual: bytes.len() as u64,
            });
        }
        if actual > expected {
            return Err(Error::CorruptPayload(format!(
                "{} trailing bytes after payload",
                actual - expected
            )));
        }
        Ok(Self {
            header,
            payload: bytes[start..].to_vec(),
        })
    }
}

/// Packs `values` at `width` bits each, LSB-first, zero-padding the last byte.
pub fn pack_bits(values: &[u64], width: u32) -> Vec<u8> {
    debug_assert!((1..=64).contains(&width));
    let total_bits = values.len() as u128 * width as u128;
    let mut out = Vec::with_capacity(total_bits.div_ceil(8) as usize);
    let mut acc: u128 = 0;
    let mut filled: u32 = 0;
    for &v in values {
        acc |= (v as u128) << filled;
        filled += width;
        while filled >= 8 {
            out.push(acc as u8);
            acc >>= 8;
            filled -= 8;
        }
    }
    if filled > 0 {
        out.push(acc as u8);
    }
    out
}

/// Reads `count` values of `width` bits, LSB-first. Bits past the end of
/// `bytes` read as zero.
pub fn unpack_bits(bytes: &[u8], width: u32, count: usize) -> Vec<u64> {
    debug_assert!((1..=64).contains(&width));
    let mask: u128 = (1u128 << width) - 1;
    let mut out = Vec::with_capacity(count);
    let mut source = bytes.iter();
    let mut acc: u128 = 0;
    let mut filled: u32 = 0;
    for _ in 0..count {
        while filled < width {
            acc |= (*source.next().unwrap_or(&0) as u128) << filled;
            filled += 8;
        }
        out.push((acc & mask) as u64);
        acc >>= width;
        filled -= width;
    }
    out
}
