use alloc::vec::Vec;

use super::bits::{elias_gamma, gamma_len, read_elias_gamma, Bits};
use crate::{Error, Result};

/// A total injective map on bit strings with decidable domain and image.
pub trait Compressor: Send + Sync {
    fn id(&self) -> &str;

    fn in_domain(&self, _s: &Bits) -> bool {
        true
    }

    fn encode(&self, s: &Bits) -> Result<Bits>;

    /// Inverse on the image, `None` elsewhere.
    fn decode(&self, t: &Bits) -> Option<Bits>;

    fn in_image(&self, t: &Bits) -> bool {
        self.decode(t).is_some()
    }

    /// Whether injectivity and the domain/image tests are guaranteed.
    fn certified(&self) -> bool {
        true
    }
}

/// `C_M(σ) = |M(σ)|`.
pub fn compress_len(m: &dyn Compressor, s: &Bits) -> Result<usize> {
    if !m.in_domain(s) {
        return Err(Error::OutsideDomain);
    }
    Ok(m.encode(s)?.len())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl Compressor for Identity {
    fn id(&self) -> &str {
        "identity"
    }

    fn encode(&self, s: &Bits) -> Result<Bits> {
        Ok(s.clone())
    }

    fn decode(&self, t: &Bits) -> Option<Bits> {
        Some(t.clone())
    }
}

/// First bit, then each run length as little-endian 8-bit blocks holding a
/// continuation flag and 7 payload bits.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunLength;

fn push_varint(mut v: u64, out: &mut Bits) {
    loop {
        let group = v & 0x7f;
        v >>= 7;
        out.push(v != 0);
        out.push_uint(group, 7);
        if v == 0 {
            break;
        }
    }
}

fn read_varint(t: &Bits, pos: &mut usize) -> Option<u64> {
    let mut v = 0u64;
    let mut shift = 0u32;
    loop {
        if *pos + 8 > t.len() || shift > 56 {
            return None;
        }
        let more = t.get(*pos)?;
        let mut group = 0u64;
        for i in 1..8 {
            group = (group << 1) | u64::from(t.get(*pos + i)?);
        }
        *pos += 8;
        // a trailing zero group would be a second spelling of the same value
        if !more && group == 0 && shift > 0 {
            return None;
        }
        v |= group << shift;
        shift += 7;
        if !more {
            return Some(v);
        }
    }
}

impl Compressor for RunLength {
    fn id(&self) -> &str {
        "run-length"
    }

    fn encode(&self, s: &Bits) -> Result<Bits> {
        let mut out = Bits::new();
        let Some(first) = s.get(0) else {
            return Ok(out);
        };
        out.push(first);
        let bits = s.as_slice();
        let mut i = 0;
        while i < bits.len() {
            let run = bits[i..].iter().take_while(|&&b| b == bits[i]).count();
            push_varint(run as u64, &mut out);
            i += run;
        }
        Ok(out)
    }

    fn decode(&self, t: &Bits) -> Option<Bits> {
        let mut out = Bits::new();
        let Some(mut bit) = t.get(0) else {
            return Some(out);
        };
        let mut pos = 1;
        while pos < t.len() {
            let run = read_varint(t, &mut pos)?;
            if run == 0 {
                return None;
            }
            for _ in 0..run {
                out.push(bit);
            }
            bit = !bit;
        }
        (!out.is_empty()).then_some(out)
    }
}

/// Greedy longest-match parser over earlier output.
///
/// Tokens are `0 γ(len) <len literal bits>` or `1 γ(offset) γ(len - 7)`,
/// `γ` the Elias gamma code. A match of length at least 8 is taken when its
/// token is at least 16 bits shorter than the bits it replaces, which pays
/// for splitting a literal run; candidates are the 32 most recent positions
/// with the same next 8 bits.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dictionary;

const MIN_MATCH: usize = 8;
const CHAIN: usize = 32;
const SPLIT_COST: usize = 16;

fn key(bits: &[bool], i: usize) -> usize {
    bits[i..i + MIN_MATCH].iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
}

fn flush_literals(bits: &[bool], from: usize, to: usize, out: &mut Bits) {
    if to > from {
        out.push(false);
        elias_gamma((to - from) as u64, out);
        for &b in &bits[from..to] {
            out.push(b);
        }
    }
}

impl Compressor for Dictionary {
    fn id(&self) -> &str {
        "dictionary"
    }

    fn encode(&self, s: &Bits) -> Result<Bits> {
        let bits = s.as_slice();
        let n = bits.len();
        let mut buckets: Vec<Vec<usize>> = alloc::vec![Vec::new(); 1 << MIN_MATCH];
        let mut out = Bits::new();
        let mut literal_start = 0;
        let mut i = 0;
        while i < n {
            let mut best: Option<(usize, usize)> = None;
            if i + MIN_MATCH <= n {
                for &j in buckets[key(bits, i)].iter().rev().take(CHAIN) {
                    let len = (0..n - i).take_while(|&t| bits[j + t] == bits[i + t]).count();
                    if best.is_none_or(|(l, _)| len > l) {
                        best = Some((len, i - j));
                    }
                }
            }
            let take = best.filter(|&(len, off)| {
                len >= MIN_MATCH && 1 + gamma_len(off as u64) + gamma_len((len - MIN_MATCH + 1) as u64) + SPLIT_COST < len
            });
            let step = match take {
                Some((len, off)) => {
                    flush_literals(bits, literal_start, i, &mut out);
                    out.push(true);
                    elias_gamma(off as u64, &mut out);
                    elias_gamma((len - MIN_MATCH + 1) as u64, &mut out);
                    literal_start = i + len;
                    len
                }
                None => 1,
            };
            for p in i..i + step {
                if p + MIN_MATCH <= n {
                    buckets[key(bits, p)].push(p);
                }
            }
            i += step;
        }
        flush_literals(bits, literal_start, n, &mut out);
        Ok(out)
    }

    fn decode(&self, t: &Bits) -> Option<Bits> {
        let mut out: Vec<bool> = Vec::new();
        let mut pos = 0;
        while pos < t.len() {
            let is_match = t.get(pos)?;
            pos += 1;
            if is_match {
                let off = read_elias_gamma(t, &mut pos)? as usize;
                let len = read_elias_gamma(t, &mut pos)? as usize + MIN_MATCH - 1;
                if off > out.len() {
                    return None;
                }
                let start = out.len() - off;
                for k in 0..len {
                    out.push(out[start + k]);
                }
            } else {
                let len = read_elias_gamma(t, &mut pos)? as usize;
                if pos + len > t.len() {
                    return None;
                }
                out.extend_from_slice(&t.as_slice()[pos..pos + len]);
                pos += len;
            }
        }
        let decoded = Bits::from(out);
        // only the encoder's own parse is in the image
        (self.encode(&decoded).ok()? == *t).then_some(decoded)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all(m: &dyn Compressor, max: usize) {
        let mut seen = alloc::collections::BTreeMap::new();
        for n in 0..=max {
            for s in Bits::all_of_len(n) {
                let t = m.encode(&s).unwrap();
                assert_eq!(m.decode(&t), Some(s.clone()), "{} on {s}", m.id());
                assert!(m.in_image(&t));
                assert!(seen.insert(t, s).is_none(), "{} not injective", m.id());
            }
        }
    }

    #[test]
    fn injective_up_to_twelve_bits() {
        all(&Identity, 12);
        all(&RunLength, 12);
        all(&Dictionary, 12);
    }

    #[test]
    fn run_length_of_zeros() {
        assert_eq!(compress_len(&RunLength, &Bits::zeros(64)).unwrap(), 9);
        assert_eq!(compress_len(&RunLength, &Bits::zeros(200)).unwrap(), 17);
        assert_eq!(compress_len(&Identity, &Bits::parse("0110100").unwrap()).unwrap(), 7);
    }

    #[test]
    fn non_canonical_varints_are_outside_the_image() {
        // run of 1 spelled with an extra zero group
        let t = Bits::parse("0").unwrap();
        let mut t2 = t.clone();
        t2.extend_from(&Bits::parse("1000000100000000").unwrap());
        assert!(!RunLength.in_image(&t2));
        let mut t3 = t.clone();
        t3.extend_from(&Bits::parse("00000001").unwrap());
        assert!(RunLength.in_image(&t3));
        assert!(!RunLength.in_image(&Bits::parse("0101").unwrap()));
    }

    #[test]
    fn dictionary_shrinks_repetition() {
        let periodic: Bits = (0..1024).map(|i| i % 3 == 0).collect();
        let c = compress_len(&Dictionary, &periodic).unwrap();
        assert!(c < 64, "{c}");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let noise: Bits = (0..1024).map(|_| rng.gen::<bool>()).collect();
        let t = Dictionary.encode(&noise).unwrap();
        assert!(t.len() < 1024 + 40, "{}", t.len());
        assert_eq!(Dictionary.decode(&t), Some(noise));
    }

    #[test]
    fn dictionary_rejects_other_parses() {
        // 64 zeros as a single literal run, where the encoder would match
        let mut t = Bits::new();
        t.push(false);
        elias_gamma(64, &mut t);
        for _ in 0..64 {
            t.push(false);
        }
        assert_ne!(Dictionary.encode(&Bits::zeros(64)).unwrap(), t);
        assert!(!Dictionary.in_image(&t));
    }
}
