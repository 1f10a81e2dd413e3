use alloc::vec::Vec;

use num_bigint::BigInt;

use super::bits::Bits;
use super::compressor::{compress_len, Compressor};
use crate::rational::Rational;
use crate::{Error, Result};

/// For each `k ≤ k_max`: is there `n ∈ [g(k), g(k+1))` with
/// `(C_M(x↾n) + k) / n < s`?
pub fn co_compressible_check(
    x: &Bits,
    m: &dyn Compressor,
    g: &dyn Fn(u32) -> u64,
    s: &Rational,
    k_max: u32,
) -> Result<Vec<bool>> {
    let bounds: Vec<u64> = (0..=k_max + 1).map(g).collect();
    if bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("g must be strictly increasing".into()));
    }
    let needed = bounds[bounds.len() - 1] as usize;
    if x.len() < needed {
        return Err(Error::PrefixTooShort { needed, have: x.len() });
    }
    (0..=k_max)
        .map(|k| {
            let (lo, hi) = (bounds[k as usize], bounds[k as usize + 1]);
            for n in lo.max(1)..hi {
                let c = compress_len(m, &x.prefix(n as usize))? as u64;
                let lhs = Rational::from_integer(BigInt::from(c + u64::from(k)));
                if lhs < s * Rational::from_integer(BigInt::from(n)) {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithmic::{Identity, RunLength};
    use crate::rational::{int, ratio};

    fn g(k: u32) -> u64 {
        1 << (k + 4)
    }

    #[test]
    fn zero_stream_run_length() {
        let x = Bits::zeros(1 << 9);
        let r = co_compressible_check(&x, &RunLength, &g, &ratio(1, 2), 4).unwrap();
        assert!(r.iter().all(|&b| b));
        let r = co_compressible_check(&x, &RunLength, &g, &int(0), 4).unwrap();
        assert!(r.iter().all(|&b| !b));
    }

    #[test]
    fn identity_never_halves() {
        let x = Bits::zeros(1 << 9);
        let r = co_compressible_check(&x, &Identity, &g, &ratio(1, 2), 4).unwrap();
        assert!(r.iter().all(|&b| !b));
    }

    #[test]
    fn preconditions() {
        let x = Bits::zeros(10);
        assert_eq!(
            co_compressible_check(&x, &Identity, &g, &int(1), 0),
            Err(Error::PrefixTooShort { needed: 32, have: 10 })
        );
        assert!(co_compressible_check(&x, &Identity, &|_| 3, &int(1), 0).is_err());
    }
}
