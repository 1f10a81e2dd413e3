use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bits::Bits;
use super::compressor::Compressor;
use crate::rational::Rational;
use crate::{Error, Result};

fn push_bplus(n: usize, out: &mut Bits) {
    if n == 0 {
        return;
    }
    let width = usize::BITS as usize - n.leading_zeros() as usize;
    for i in (0..width).rev() {
        out.push((n >> i) & 1 == 1);
        out.push(false);
    }
}

/// Binary `n` with a `0` after every bit.
pub fn bplus(n: usize) -> Result<Bits> {
    if n == 0 {
        return Err(Error::InvalidArgument("b+ needs n ≥ 1".into()));
    }
    let mut out = Bits::new();
    push_bplus(n, &mut out);
    Ok(out)
}

/// `C + 2⌈log₂(C + 1)⌉ + 2`.
pub fn transform_bound(c: usize) -> usize {
    let ceil_log = usize::BITS as usize - c.leading_zeros() as usize;
    // ⌈log₂(c+1)⌉ is the bit width of c
    c + 2 * ceil_log + 2
}

/// The prefix-free machine `N(b⁺_{|w|} 11 w) = D(w)`, where the machine
/// `D` decompresses: it inverts the base compressor on its image, so
/// `C_D(τ)` is the compressed length of `τ` and `K_N(τ) = transform_bound(C_D(τ))`.
///
/// `b⁺_0` is empty, so the empty payload has code `11`; every other code
/// starts with `10`.
pub struct PrefixFreeMachine<'a> {
    base: &'a dyn Compressor,
}

impl<'a> PrefixFreeMachine<'a> {
    pub fn new(base: &'a dyn Compressor) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &dyn Compressor {
        self.base
    }

    pub fn code(&self, payload: &Bits) -> Bits {
        let mut out = Bits::new();
        push_bplus(payload.len(), &mut out);
        out.push(true);
        out.push(true);
        out.extend_from(payload);
        out
    }

    /// Splits a code into its payload; `None` if `code` is not a code.
    pub fn payload(&self, code: &Bits) -> Option<Bits> {
        let mut n = 0usize;
        let mut pos = 0;
        loop {
            let a = code.get(pos)?;
            let b = code.get(pos + 1)?;
            pos += 2;
            if a && b {
                break;
            }
            if b || (pos == 2 && !a) {
                // a pair `01`, or a leading `00`
                return None;
            }
            n = n.checked_mul(2)?.checked_add(usize::from(a))?;
        }
        (code.len() == pos + n).then(|| Bits::from(code.as_slice()[pos..].to_vec()))
    }

    /// `N(code)`.
    pub fn run(&self, code: &Bits) -> Option<Bits> {
        self.base.decode(&self.payload(code)?)
    }

    /// `K_N(τ)`: length of the unique code producing `τ`.
    pub fn complexity(&self, tau: &Bits) -> Result<usize> {
        Ok(self.code(&self.base.encode(tau)?).len())
    }

    /// All codes with payload length at most `max`.
    pub fn codes(&self, max: usize) -> Vec<Bits> {
        (0..=max)
            .flat_map(|n| Bits::all_of_len(n).map(|s| self.code(&s)).collect::<Vec<_>>())
            .collect()
    }

    /// `Σ 2^{-|code|}` over payloads of length `n`, for `n = 0..=max`,
    /// accumulated: the halting probability up to each stage.
    pub fn halting_partial_sums(&self, max: usize) -> Vec<Rational> {
        let mut acc = Rational::zero();
        (0..=max)
            .map(|n| {
                let len = self.code(&Bits::zeros(n)).len();
                acc += Rational::new(BigInt::one() << n, BigInt::one() << len);
                acc.clone()
            })
            .collect()
    }
}
