//! Closed-form valuations of `3^n ± 1` at 2, `2^n ± 1` at 3, and
//! `(m-1)^n - 1` at odd `m >= 3`, together with the divisibility law
//! `p^m - 1 | p^n - 1  ⟺  m | n`.
//!
//! Each predicted value is a pure function of the exponent's shape
//! `n = 2^{e2} * m^{em} * l` (with `l` odd and coprime to `m`) and is meant
//! to be checked against the naive oracle in [`crate::arith`]; the
//! [`crate::suites`] module does exactly that over fixed ranges.
//!
//! The exact identities implemented:
//!
//! * `v_2(3^n - 1) = e2 + 2` for even `n`, and `1` for odd `n`;
//! * `v_2(3^n + 1) = 2` for odd `n`, and `1` for even `n`;
//! * `v_3(2^n - 1) = e3 + 1` for even `n` (where `e3 = v_3(n)`), and `0` for odd `n`;
//! * `v_3(2^n + 1) = v_3(n) + 1` for odd `n`, and `0` for even `n`;
//! * `v_m((m-1)^n - 1) = v_m(n) + 1` for even `n` and odd `m >= 3`, and `0`
//!   for odd `n` (the odd-`n` statement holds for every base `m >= 3`).
//!
//! The odd-base restriction in the last identity is essential: for even
//! `m = 2^k p` (`p` odd) the exponent `n = m` itself already gives
//! `m^2 | (m-1)^m - 1`, which [`even_base_divides_square`] verifies.

use num_traits::Zero;

use crate::arith::{nat_pow, valuation, Natural};
use crate::Error;

/// The shape `n = 2^two_exponent * base^base_exponent * cofactor` with the
/// cofactor odd and coprime to the base. This is the exponent decomposition
/// the closed-form valuations are driven by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentFactorization {
    /// `v_2(n)`.
    pub two_exponent: u64,
    /// `v_base(n / 2^two_exponent)`.
    pub base_exponent: u64,
    /// The residual factor; odd and not divisible by the base.
    pub cofactor: u64,
    /// The odd base (>= 3) the middle factor is taken in.
    pub base: u64,
    /// The decomposed exponent.
    pub n: u64,
}

impl ExponentFactorization {
    /// Recompose `2^two_exponent * base^base_exponent * cofactor`.
    pub fn recompose(&self) -> u64 {
        (1u64 << self.two_exponent) * self.base.pow(self.base_exponent as u32) * self.cofactor
    }
}

/// Split `n >= 1` as `2^e2 * base^eb * l` with `l` odd and `base ∤ l`.
/// The base must be odd and at least 3; the factorization is unique.
pub fn factor_exponent(n: u64, base: u64) -> ExponentFactorization {
    assert!(n >= 1, "exponent must be positive");
    assert!(base >= 3 && base % 2 == 1, "base must be odd and >= 3");
    let two_exponent = u64::from(n.trailing_zeros());
    let mut cofactor = n >> two_exponent;
    let mut base_exponent = 0;
    while cofactor % base == 0 {
        cofactor /= base;
        base_exponent += 1;
    }
    ExponentFactorization {
        two_exponent,
        base_exponent,
        cofactor,
        base,
        n,
    }
}

/// Predicted `v_2(3^n - 1)` for `n >= 1`.
pub fn predicted_v2_pow3_minus1(n: u64) -> u64 {
    assert!(n >= 1);
    let e = u64::from(n.trailing_zeros());
    if e == 0 {
        1
    } else {
        e + 2
    }
}

/// Predicted `v_2(3^n + 1)` for `n >= 1`.
pub fn predicted_v2_pow3_plus1(n: u64) -> u64 {
    assert!(n >= 1);
    if n % 2 == 1 {
        2
    } else {
        1
    }
}

/// Predicted `v_3(2^n - 1)` for `n >= 1`.
pub fn predicted_v3_pow2_minus1(n: u64) -> u64 {
    assert!(n >= 1);
    if n % 2 == 1 {
        0
    } else {
        factor_exponent(n, 3).base_exponent + 1
    }
}

/// Predicted `v_3(2^n + 1)` for `n >= 1`.
pub fn predicted_v3_pow2_plus1(n: u64) -> u64 {
    assert!(n >= 1);
    if n % 2 == 0 {
        0
    } else {
        factor_exponent(n, 3).base_exponent + 1
    }
}

/// Predicted `v_base((base-1)^n - 1)` for odd `base >= 3` and `n >= 1`.
///
/// Even bases are rejected: the even-base behavior is genuinely different
/// (see [`even_base_divides_square`]) and guessing would be wrong.
pub fn predicted_vm_pow_minus1(base: u64, n: u64) -> Result<u64, Error> {
    if base % 2 == 0 {
        return Err(Error::RequiresOddBase);
    }
    assert!(base >= 3, "base must be >= 3");
    assert!(n >= 1);
    if n % 2 == 1 {
        Ok(0)
    } else {
        Ok(factor_exponent(n, base).base_exponent + 1)
    }
}

/// For even `base >= 4`: does `base^2` divide `(base-1)^base - 1`?
///
/// Writing `base = 2^k p` with `p` odd, the exponent `2^k p` is the base
/// itself, and the answer is always yes — which is exactly why the odd-base
/// valuation formula cannot extend to even bases unchanged.
pub fn even_base_divides_square(base: u64) -> Result<bool, Error> {
    if base % 2 == 1 {
        return Err(Error::RequiresEvenBase);
    }
    assert!(base >= 4, "base must be >= 4");
    let value = nat_pow(&Natural::from(base - 1), base) - 1u32;
    let square = Natural::from(base) * base;
    Ok((value % square).is_zero())
}

/// Does `p^m - 1` divide `p^n - 1`? Computed exactly; equivalent to `m | n`
/// (the geometric-sum factorization gives one direction, a remainder
/// argument the other), and the suites assert that equivalence.
pub fn divisibility_law(p: u64, m: u64, n: u64) -> bool {
    assert!(p >= 2, "base must be >= 2");
    assert!(m >= 1, "divisor exponent must be positive");
    let divisor = nat_pow(&Natural::from(p), m) - 1u32;
    let dividend = nat_pow(&Natural::from(p), n) - 1u32;
    (dividend % divisor).is_zero()
}

// Naive oracle shorthands used by the tests and suites.
pub(crate) fn naive_minus(m: u64, a: u64, n: u64) -> u64 {
    valuation(m, &(nat_pow(&Natural::from(a), n) - 1u32)).expect("a^n - 1 >= 1")
}

pub(crate) fn naive_plus(m: u64, a: u64, n: u64) -> u64 {
    valuation(m, &(nat_pow(&Natural::from(a), n) + 1u32)).expect("a^n + 1 >= 1")
}
