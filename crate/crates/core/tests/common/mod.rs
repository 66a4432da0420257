//! Independent oracles. Nothing here calls into the library's arithmetic,
//! condition or transform code; everything is done with plain nested loops
//! over explicitly built dense matrices.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Dense NHT matrix from a coefficient vector, built entry by entry:
/// row 0 holds `u[i]` at column `2i + 1`, and row `j` is row `j - 1`
/// shifted right by one.
pub fn dense_nht(u: &[u64]) -> Vec<Vec<u64>> {
    let n = 2 * u.len();
    let mut row0 = vec![0u64; n];
    for (i, &c) in u.iter().enumerate() {
        row0[2 * i + 1] = c;
    }
    let mut rows = vec![row0];
    for j in 1..n {
        let prev = &rows[j - 1];
        let mut next = vec![0u64; n];
        for k in 0..n {
            next[(k + 1) % n] = prev[k];
        }
        rows.push(next);
    }
    rows
}

/// `(N N^T)[i][j] mod m` by naive multiplication.
fn gram_entry(rows: &[Vec<u64>], i: usize, j: usize, m: u64) -> u64 {
    let mut acc: u128 = 0;
    for k in 0..rows.len() {
        acc += rows[i][k] as u128 * rows[j][k] as u128;
    }
    (acc % m as u128) as u64
}

pub fn dense_gram(u: &[u64], m: u64) -> Vec<Vec<u64>> {
    let rows = dense_nht(u);
    let n = rows.len();
    (0..n)
        .map(|i| (0..n).map(|j| gram_entry(&rows, i, j, m)).collect())
        .collect()
}

/// `N N^T = I (mod m)`, checked entry by entry with early exit.
pub fn dense_is_orthogonal(u: &[u64], m: u64) -> bool {
    let rows = dense_nht(u);
    let n = rows.len();
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1 % m } else { 0 };
            if gram_entry(&rows, i, j, m) != want {
                return false;
            }
        }
    }
    true
}

/// `G = N F mod m` by dense matrix-vector product.
pub fn dense_forward(u: &[u64], m: u64, f: &[u64]) -> Vec<u64> {
    dense_nht(u)
        .iter()
        .map(|row| {
            let acc: u128 = row
                .iter()
                .zip(f)
                .map(|(&a, &b)| a as u128 * b as u128)
                .sum();
            (acc % m as u128) as u64
        })
        .collect()
}

/// Every tuple in `[0, m)^h`, lexicographic, by explicit counting.
pub fn all_tuples(h: usize, m: u64) -> Vec<Vec<u64>> {
    let total = (m as usize).pow(h as u32);
    (0..total)
        .map(|mut idx| {
            let mut u = vec![0u64; h];
            for slot in u.iter_mut().rev() {
                *slot = (idx % m as usize) as u64;
                idx /= m as usize;
            }
            u
        })
        .collect()
}

pub fn brute_force_solutions(h: usize, m: u64) -> Vec<Vec<u64>> {
    all_tuples(h, m)
        .into_iter()
        .filter(|u| dense_is_orthogonal(u, m))
        .collect()
}

/// Expands a printed polynomial such as `(b+e)a + (c+e)d + bc` or
/// `2(ad + be + fc)` into a multiset of monomials. Each monomial is the
/// sorted list of its letters (`a` = 0, `b` = 1, ...), so `e a` and `a e`
/// coincide.
pub fn expand_expression(text: &str) -> BTreeMap<Vec<usize>, i64> {
    let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let poly = parse_sum(&tokens, &mut pos);
    assert_eq!(pos, tokens.len(), "trailing input in {text:?}");
    poly.into_iter().filter(|(_, c)| *c != 0).collect()
}

type Poly = BTreeMap<Vec<usize>, i64>;

fn parse_sum(t: &[char], pos: &mut usize) -> Poly {
    let mut out = parse_product(t, pos);
    while *pos < t.len() && t[*pos] == '+' {
        *pos += 1;
        for (k, v) in parse_product(t, pos) {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

fn parse_product(t: &[char], pos: &mut usize) -> Poly {
    let mut out: Poly = BTreeMap::from([(Vec::new(), 1)]);
    let mut any = false;
    while *pos < t.len() {
        let factor: Poly = match t[*pos] {
            '(' => {
                *pos += 1;
                let inner = parse_sum(t, pos);
                assert_eq!(t[*pos], ')');
                *pos += 1;
                inner
            }
            c if c.is_ascii_digit() => {
                let mut value = 0i64;
                while *pos < t.len() && t[*pos].is_ascii_digit() {
                    value = value * 10 + t[*pos].to_digit(10).unwrap() as i64;
                    *pos += 1;
                }
                BTreeMap::from([(Vec::new(), value)])
            }
            c if c.is_ascii_lowercase() => {
                *pos += 1;
                let var = (c as u8 - b'a') as usize;
                if *pos < t.len() && t[*pos] == '^' {
                    *pos += 1;
                    let exp = t[*pos].to_digit(10).unwrap() as usize;
                    *pos += 1;
                    BTreeMap::from([(vec![var; exp], 1)])
                } else {
                    BTreeMap::from([(vec![var], 1)])
                }
            }
            _ => break,
        };
        any = true;
        let mut next = Poly::new();
        for (ka, va) in &out {
            for (kb, vb) in &factor {
                let mut key = ka.clone();
                key.extend(kb);
                key.sort_unstable();
                *next.entry(key).or_insert(0) += va * vb;
            }
        }
        out = next;
    }
    assert!(any, "empty product at {pos}");
    out
}

/// Small deterministic generator for test data (xorshift64*).
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn below(&mut self, m: u64) -> u64 {
        self.next_u64() % m
    }

    pub fn block(&mut self, n: usize, m: u64) -> Vec<u64> {
        (0..n).map(|_| self.below(m)).collect()
    }

    pub fn bytes(&mut self, len: usize) -> Vec<u8> {
        (0..len).map(|_| self.next_u64() as u8).collect()
    }
}
