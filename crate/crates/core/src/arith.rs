//! Exact arbitrary-precision arithmetic and base-m valuations.
//!
//! Valuations come in two flavors. The naive path materializes the integer
//! and strips factors of the base by repeated exact division. The fast path
//! computes `v_m(a^n ± 1)` as the largest `k` with `a^n ≡ ±1 (mod m^k)`,
//! probing `k` geometrically and then binary-searching, so `a^n` itself is
//! never constructed. The quantity `a^n ± 1` grows exponentially in `n`
//! while its valuation grows only logarithmically, which is what makes the
//! residue route worthwhile. The two paths must agree exactly and the test
//! suites hold them to that.

use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::Error;

/// Arbitrary-precision nonnegative integer: the substrate for every value
/// in this crate. Arithmetic is exact; there is no rounding and no overflow.
pub type Natural = num_bigint::BigUint;

/// Levels probed by the naive fallback of [`valuation_pow_plus_one`] when
/// `a^n` is not congruent to -1 modulo the base.
const PLUS_FALLBACK_LEVELS: u64 = 4;

/// `base^exp` as an exact natural.
pub fn nat_pow(base: &Natural, exp: u64) -> Natural {
    Pow::pow(base, exp)
}

/// `a^n mod modulus` in O(log n) multiplications.
///
/// `modulus` must be at least 1; a modulus of 1 yields 0.
pub fn modpow(a: &Natural, n: &Natural, modulus: &Natural) -> Natural {
    assert!(!modulus.is_zero(), "modpow requires modulus >= 1");
    a.modpow(n, modulus)
}

/// Certificate for `v = v_base(x)`: `base^v` divides the certified value and
/// `base^(v+1)` does not.
///
/// The fast probing paths record the residue of `a^n` modulo `base^(v+1)` as
/// the witness that divisibility fails one level up (for the `-1` form the
/// witness is never 1, for the `+1` form never `base^(v+1) - 1`). The naive
/// fallback performs no level-`v+1` probe and records no witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationCertificate {
    pub base: u64,
    pub exponent: u64,
    pub witness_residue: Option<Natural>,
}

/// `v_m(x)`: the largest `k` with `m^k | x`, by repeated exact division.
///
/// Defined for every `x >= 1` (it is 0 whenever `m` does not divide `x`,
/// in particular for all `x < m`). `x = 0` is rejected: every power of `m`
/// divides 0.
pub fn valuation(m: u64, x: &Natural) -> Result<u64, Error> {
    assert!(m >= 2, "valuation base must be >= 2");
    if x.is_zero() {
        return Err(Error::ValuationUndefinedAtZero);
    }
    let m = Natural::from(m);
    let mut v = 0u64;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(&m);
        if !r.is_zero() {
            return Ok(v);
        }
        v += 1;
        rest = q;
    }
}

/// True iff `m^k | x` and `m^(k+1) ∤ x`, i.e. `v_m(x) = k`.
pub fn exact_divides(m: u64, k: u64, x: &Natural) -> Result<bool, Error> {
    assert!(m >= 2, "base must be >= 2");
    if x.is_zero() {
        return Err(Error::ValuationUndefinedAtZero);
    }
    // m^k >= 2^(k*floor(log2 m)) > x already rules divisibility out.
    let log2_floor = 63 - u64::from(m.leading_zeros());
    if k > 0 && k.saturating_mul(log2_floor) >= x.bits() {
        return Ok(false);
    }
    let mk = nat_pow(&Natural::from(m), k);
    if !(x % &mk).is_zero() {
        return Ok(false);
    }
    Ok(!(x % (mk * m)).is_zero())
}

// An a-priori cap on v_m(a^n ± 1), from sizes alone:
// m^v <= a^n + 1 gives v <= n*log2(a)/log2(m) + 1 < n*bits(a)/floor(log2 m) + 2.
fn probe_ceiling(m: u64, a: u64, n: u64) -> u64 {
    let bits_a = u128::from(64 - a.leading_zeros());
    let log2_m = u128::from(63 - m.leading_zeros()); // >= 1 since m >= 2
    let cap = u128::from(n) * bits_a / log2_m + 2;
    cap.min(u128::from(u64::MAX)) as u64
}

// Largest k with pred(k) true, given that pred(0) is true, pred is monotone
// (true up to some point, false beyond), and pred(ceiling) is false.
fn max_true<F: Fn(u64) -> bool>(pred: F, ceiling: u64) -> u64 {
    let mut lo = 0u64;
    let mut hi = 1u64.min(ceiling);
    while pred(hi) {
        lo = hi;
        if hi == ceiling {
            return lo;
        }
        hi = hi.saturating_mul(2).min(ceiling);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `v_m(a^n - 1)` with certificate, computed as the largest `k` with
/// `a^n ≡ 1 (mod m^k)`. `a^n` is never materialized; the result agrees
/// exactly with `valuation(m, a^n - 1)`.
pub fn valuation_pow_minus_one(m: u64, a: u64, n: u64) -> ValuationCertificate {
    assert!(m >= 2 && a >= 2 && n >= 1);
    let base = Natural::from(m);
    let a_nat = Natural::from(a);
    let n_nat = Natural::from(n);
    let congruent_to_one = |k: u64| -> bool {
        if k == 0 {
            return true;
        }
        a_nat.modpow(&n_nat, &nat_pow(&base, k)).is_one()
    };
    let v = max_true(congruent_to_one, probe_ceiling(m, a, n));
    let witness = a_nat.modpow(&n_nat, &nat_pow(&base, v + 1));
    ValuationCertificate {
        base: m,
        exponent: v,
        witness_residue: Some(witness),
    }
}

/// `v_m(a^n + 1)` with certificate, computed as the largest `k` with
/// `a^n ≡ -1 (mod m^k)`.
///
/// When `a^n ≢ -1 (mod m)` no power of `m` beyond `m^0` can divide
/// `a^n + 1`; that case is settled naively on the residues
/// `(a^n + 1) mod m^j` for the first few levels `j` and carries no witness.
pub fn valuation_pow_plus_one(m: u64, a: u64, n: u64) -> ValuationCertificate {
    assert!(m >= 2 && a >= 2 && n >= 1);
    let base = Natural::from(m);
    let a_nat = Natural::from(a);
    let n_nat = Natural::from(n);
    let congruent_to_minus_one = |k: u64| -> bool {
        if k == 0 {
            return true;
        }
        let modulus = nat_pow(&base, k);
        a_nat.modpow(&n_nat, &modulus) + 1u32 == modulus
    };
    if !congruent_to_minus_one(1) {
        let mut v = 0;
        for level in 1..=PLUS_FALLBACK_LEVELS {
            let modulus = nat_pow(&base, level);
            let residue = (a_nat.modpow(&n_nat, &modulus) + 1u32) % &modulus;
            if !residue.is_zero() {
                break;
            }
            v = level;
        }
        return ValuationCertificate {
            base: m,
            exponent: v,
            witness_residue: None,
        };
    }
    let v = max_true(congruent_to_minus_one, probe_ceiling(m, a, n));
    let witness = a_nat.modpow(&n_nat, &nat_pow(&base, v + 1));
    ValuationCertificate {
        base: m,
        exponent: v,
        witness_residue: Some(witness),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(x: u64) -> Natural {
        Natural::from(x)
    }

    #[test]
    fn modpow_small_cases() {
        assert_eq!(modpow(&nat(3), &nat(2), &nat(8)), nat(1));
        assert_eq!(modpow(&nat(5), &nat(0), &nat(7)), nat(1));
        assert_eq!(modpow(&nat(5), &nat(0), &nat(1)), nat(0));
        assert_eq!(modpow(&nat(2), &nat(6), &nat(27)), nat(10)); // 64 mod 27
    }

    #[test]
    #[should_panic]
    fn modpow_rejects_zero_modulus() {
        modpow(&nat(2), &nat(3), &nat(0));
    }

    #[test]
    fn valuation_small_cases() {
        assert_eq!(valuation(2, &nat(8)).unwrap(), 3);
        assert_eq!(valuation(3, &nat(63)).unwrap(), 2);
        assert_eq!(valuation(5, &nat(7)).unwrap(), 0);
        assert_eq!(valuation(2, &nat(1)).unwrap(), 0);
    }

    #[test]
    fn valuation_rejects_zero() {
        assert_eq!(
            valuation(2, &Natural::zero()),
            Err(Error::ValuationUndefinedAtZero)
        );
    }

    #[test]
    fn exact_divides_cases() {
        assert!(exact_divides(2, 3, &nat(8)).unwrap());
        assert!(exact_divides(3, 2, &nat(63)).unwrap());
        assert!(!exact_divides(3, 1, &nat(63)).unwrap());
        assert!(!exact_divides(2, 4, &nat(8)).unwrap());
        assert!(exact_divides(7, 0, &nat(5)).unwrap());
        // Absurdly large k short-circuits without constructing m^k.
        assert!(!exact_divides(2, u64::MAX, &nat(8)).unwrap());
        assert_eq!(
            exact_divides(2, 1, &Natural::zero()),
            Err(Error::ValuationUndefinedAtZero)
        );
    }

    #[test]
    fn fast_minus_matches_known_values() {
        assert_eq!(valuation_pow_minus_one(3, 2, 6).exponent, 2); // v3(63)
        assert_eq!(valuation_pow_minus_one(2, 3, 2).exponent, 3); // v2(8)
        assert_eq!(valuation_pow_minus_one(9, 8, 2).exponent, 1); // v9(63)
    }

    #[test]
    fn fast_plus_matches_known_values() {
        assert_eq!(valuation_pow_plus_one(3, 2, 3).exponent, 2); // v3(9)
        assert_eq!(valuation_pow_plus_one(2, 3, 5).exponent, 2); // v2(244)
        assert_eq!(valuation_pow_plus_one(3, 2, 2).exponent, 0); // 3 does not divide 5
    }

    #[test]
    fn minus_certificate_witness_is_never_one() {
        for m in 2..=12 {
            for a in 2..=12 {
                for n in 1..=40 {
                    let cert = valuation_pow_minus_one(m, a, n);
                    let witness = cert.witness_residue.expect("probing path records witness");
                    assert_ne!(witness, Natural::one(), "m={m} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn plus_fallback_has_no_witness() {
        let cert = valuation_pow_plus_one(3, 2, 2);
        assert_eq!(cert.exponent, 0);
        assert_eq!(cert.witness_residue, None);
    }

    #[test]
    fn certificates_divide_exactly() {
        for m in 2..=9 {
            for a in 2..=9 {
                for n in 1..=30 {
                    let value = nat_pow(&nat(a), n) - 1u32;
                    let cert = valuation_pow_minus_one(m, a, n);
                    assert!(
                        exact_divides(m, cert.exponent, &value).unwrap(),
                        "minus m={m} a={a} n={n} v={}",
                        cert.exponent
                    );
                    let value = nat_pow(&nat(a), n) + 1u32;
                    let cert = valuation_pow_plus_one(m, a, n);
                    assert!(
                        exact_divides(m, cert.exponent, &value).unwrap(),
                        "plus m={m} a={a} n={n} v={}",
                        cert.exponent
                    );
                }
            }
        }
    }
}
