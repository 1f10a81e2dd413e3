use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A finite binary string.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        Self(alloc::vec![false; n])
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(alloc::format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// All strings of length `n`, in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = Bits> {
        (0u64..(1u64 << n)).map(move |v| {
            let mut b = Bits::new();
            b.push_uint(v, n);
            b
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    pub fn extend_from(&mut self, other: &Bits) {
        self.0.extend_from_slice(&other.0);
    }

    /// Appends the low `width` bits of `v`, most significant first.
    pub fn push_uint(&mut self, v: u64, width: usize) {
        for i in (0..width).rev() {
            self.0.push(i < 64 && (v >> i) & 1 == 1);
        }
    }

    pub fn prefix(&self, n: usize) -> Bits {
        Bits(self.0[..n.min(self.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Bits) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Packs into bytes, most significant bit first, zero padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i))))
            .collect()
    }

    pub fn from_bytes(bytes: &[u8]) -> Bits {
        Bits(bytes.iter().flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1)).collect())
    }
}

impl From<Vec<bool>> for Bits {
    fn from(v: Vec<bool>) -> Self {
        Self(v)
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

/// Elias gamma code of `n ≥ 1`: `⌊log₂ n⌋` zeros, then `n` in binary.
pub fn elias_gamma(n: u64, out: &mut Bits) {
    debug_assert!(n >= 1);
    let width = 64 - n.leading_zeros() as usize;
    for _ in 1..width {
        out.push(false);
    }
    out.push_uint(n, width);
}

pub(crate) fn gamma_len(n: u64) -> usize {
    2 * (64 - n.leading_zeros() as usize) - 1
}

/// Reads a gamma code at `*pos`, advancing it.
pub fn read_elias_gamma(bits: &Bits, pos: &mut usize) -> Option<u64> {
    let mut zeros = 0;
    while !bits.get(*pos + zeros)? {
        zeros += 1;
        if zeros >= 64 {
            return None;
        }
    }
    let mut v = 0u64;
    for i in 0..=zeros {
        v = (v << 1) | u64::from(bits.get(*pos + zeros + i)?);
    }
    *pos += 2 * zeros + 1;
    Some(v)
}
