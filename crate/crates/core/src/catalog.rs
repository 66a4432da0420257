//! Solution catalogs: a strict line-oriented text format plus the built-in
//! set of published coefficient vectors.
//!
//! Each line is `n m u0 u1 ... u(h-1)` in decimal, separated by single
//! spaces. Lines starting with `#` are comments. Entries are written sorted
//! by `(n, m, coeffs)` with a trailing newline.
//!
//! The `verified` flag is never read from disk; it is recomputed whenever an
//! entry is constructed.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::conditions::check_solution;
use crate::error::{Error, Result};
use crate::residue::Modulus;
use crate::search::SolutionRecord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Where the vector was printed (table and row, or text passage).
    Published(&'static str),
    Searched,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Published(tag) => f.write_str(tag),
            Source::Searched => f.write_str("searched"),
        }
    }
}

type EntryKey = (usize, u64, Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    n: usize,
    m: Modulus,
    coeffs: Vec<u64>,
    source: Source,
    verified: bool,
}

impl CatalogEntry {
    pub fn new(n: usize, m: Modulus, coeffs: Vec<u64>, source: Source) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidBlockSize(n));
        }
        if coeffs.len() != n / 2 {
            return Err(Error::LengthMismatch {
                expected: n / 2,
                actual: coeffs.len(),
            });
        }
        let verified = check_solution(&coeffs, m)?.pass;
        Ok(Self {
            n,
            m,
            coeffs,
            source,
            verified,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    fn key(&self) -> EntryKey {
        (self.n, self.m.get(), self.coeffs.clone())
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.n, self.m)?;
        for c in &self.coeffs {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl TryFrom<&SolutionRecord> for CatalogEntry {
    type Error = Error;

    fn try_from(r: &SolutionRecord) -> Result<Self> {
        CatalogEntry::new(r.n, r.m, r.coeffs.to_vec(), Source::Searched)
    }
}

/// Set of entries keyed on `(n, m, coeffs)`, iterated in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: BTreeMap<EntryKey, CatalogEntry>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn get(&self, n: usize, m: u64, coeffs: &[u64]) -> Option<&CatalogEntry> {
        self.entries.get(&(n, m, coeffs.to_vec()))
    }

    /// Adds `entry`; an existing published source tag wins over `Searched`.
    pub fn insert(&mut self, entry: CatalogEntry) {
        match self.entries.get_mut(&entry.key()) {
            Some(existing) => {
                if existing.source == Source::Searched {
                    existing.source = entry.source;
                }
            }
            None => {
                self.entries.insert(entry.key(), entry);
            }
        }
    }

    pub fn merge(&mut self, other: Catalog) {
        for entry in other.entries.into_values() {
            self.insert(entry);
        }
    }

    pub fn save<W: Write>(&self, mut writer: W) -> Result<()> {
        for entry in self.entries() {
            writeln!(writer, "{entry}")?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn save_to_path(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut buf = Vec::new();
        self.save(&mut buf)?;
        fs::write(path, buf)?;
        Ok(())
    }

    pub fn load<R: Read>(mut reader: R) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        let body = text.strip_suffix('\n').unwrap_or(&text);
        let mut catalog = Catalog::new();
        if text.is_empty() {
            return Ok(catalog);
        }
        for (index, line) in body.split('\n').enumerate() {
            if let Some(entry) = parse_line(line, index + 1)? {
                catalog.insert(entry);
            }
        }
        Ok(catalog)
    }

    pub fn load_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::load(fs::File::open(path)?)
    }
}

impl FromIterator<CatalogEntry> for Catalog {
    fn from_iter<I: IntoIterator<Item = CatalogEntry>>(iter: I) -> Self {
        let mut catalog = Catalog::new();
        for entry in iter {
            catalog.insert(entry);
        }
        catalog
    }
}

fn parse_line(line: &str, line_no: usize) -> Result<Option<CatalogEntry>> {
    let syntax = |message: String| Error::CatalogSyntax {
        line: line_no,
        message,
    };
    if line.starts_with('#') {
        return Ok(None);
    }
    if line.is_empty() {
        return Err(syntax("empty line".into()));
    }
    let mut numbers = Vec::new();
    for token in line.split(' ') {
        if token.is_empty() {
            return Err(syntax("fields must be separated by single spaces".into()));
        }
        if !token.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(format!("not a decimal number: {token:?}")));
        }
        let value: u64 = token
            .parse()
            .map_err(|_| syntax(format!("number out of range: {token}")))?;
        numbers.push(value);
    }
    if numbers.len() < 2 {
        return Err(syntax("expected `n m u0 ...`".into()));
    }
    let n = numbers[0] as usize;
    if !n.is_multiple_of(2) {
        return Err(syntax(format!("odd block size {n}")));
    }
    if n < 4 {
        return Err(syntax(format!("block size {n} below 4")));
    }
    let m =
        Modulus::new(numbers[1]).map_err(|_| syntax(format!("invalid modulus {}", numbers[1])))?;
    let coeffs = numbers[2..].to_vec();
    if coeffs.len() != n / 2 {
        return Err(syntax(format!(
            "expected {} coefficients for n = {n}, found {}",
            n / 2,
            coeffs.len()
        )));
    }
    if let Some(c) = coeffs.iter().find(|&&c| c >= m.get()) {
        return Err(syntax(format!("coefficient {c} is not below modulus {m}")));
    }
    CatalogEntry::new(n, m, coeffs, Source::Searched).map(Some)
}

/// Every coefficient vector printed in the published tables and text, as
/// printed (row order preserved), with its origin.
const PUBLISHED: &[(usize, u64, &[u64], &str)] = &[
    (10, 5, &[1, 4, 2, 4, 3], "Table 2 row 1"),
    (
        10,
        41,
        &[28, 20, 6, 14, 15],
        "Table 2 row 2; Table 3 caption",
    ),
    (10, 41, &[1, 20, 19, 35, 8], "Table 2 row 3"),
    (10, 61, &[28, 55, 49, 37, 13], "Table 2 row 4"),
    (10, 13, &[2, 8, 3, 8, 4], "Table 2 row 5"),
    (
        12,
        11,
        &[1, 1, 2, 4, 8, 5],
        "Table 4 row 1; Table 5 caption",
    ),
    (12, 37, &[33, 30, 23, 9, 18, 36], "Table 4 row 2"),
    (12, 43, &[2, 4, 23, 16, 32, 8], "Table 4 row 3"),
    (12, 13, &[2, 5, 10, 7, 1, 2], "Table 4 row 4"),
    (12, 67, &[26, 51, 12, 6, 35, 3], "Table 4 row 5"),
    (
        10,
        7,
        &[2, 1, 2, 5, 3],
        "Table 1 caption; 10-point worked example",
    ),
    (12, 29, &[14, 18, 28, 27, 7, 23], "Table 6 caption"),
    (10, 79, &[3, 5, 10, 20, 40], "10-point text, mod 79"),
    (
        12,
        103,
        &[78, 54, 5, 10, 20, 40],
        "12-point text, mod 103 (printed \"e=20 and e=40\", read as e=20 f=40)",
    ),
];

/// The published coefficient vectors, each re-checked now.
pub fn builtin_catalog() -> Catalog {
    PUBLISHED
        .iter()
        .map(|&(n, m, coeffs, tag)| {
            let m = Modulus::new(m).expect("published modulus");
            CatalogEntry::new(n, m, coeffs.to_vec(), Source::Published(tag))
                .expect("well-formed entry")
        })
        .collect()
}
