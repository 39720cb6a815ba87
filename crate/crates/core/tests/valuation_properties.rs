//! The fast residue-probing valuations against the naive exact-division
//! oracle, and the definitional properties of valuation and exact
//! divisibility.

use expdio::{
    exact_divides, modpow, nat_pow, valuation, valuation_pow_minus_one, valuation_pow_plus_one,
    Natural,
};
use proptest::prelude::*;

fn nat(x: u64) -> Natural {
    Natural::from(x)
}

/// Fast path equals the naive oracle for both signs on a dense grid.
/// (The full acceptance grid runs m, a up to 12 and n up to 200; this keeps
/// the everyday test cycle snappy.)
#[test]
fn fast_equals_naive_on_grid() {
    for m in 2..=9u64 {
        for a in 2..=9u64 {
            let mut power = Natural::from(1u32);
            for n in 1..=80u64 {
                power *= a;
                let minus = valuation_pow_minus_one(m, a, n);
                assert_eq!(
                    minus.exponent,
                    valuation(m, &(&power - 1u32)).unwrap(),
                    "minus m={m} a={a} n={n}"
                );
                let plus = valuation_pow_plus_one(m, a, n);
                assert_eq!(
                    plus.exponent,
                    valuation(m, &(&power + 1u32)).unwrap(),
                    "plus m={m} a={a} n={n}"
                );
            }
        }
    }
}

/// Certificates really certify: base^v divides, base^(v+1) does not, and
/// the recorded witness is the residue of a^n at level v+1.
#[test]
fn certificates_are_sound() {
    for m in 2..=12u64 {
        for a in 2..=12u64 {
            for n in [1u64, 2, 3, 6, 12, 54] {
                let value = nat_pow(&nat(a), n) - 1u32;
                let cert = valuation_pow_minus_one(m, a, n);
                assert!(exact_divides(m, cert.exponent, &value).unwrap());
                let level = nat_pow(&nat(m), cert.exponent + 1);
                assert_eq!(
                    cert.witness_residue.unwrap(),
                    nat_pow(&nat(a), n) % level,
                    "minus witness m={m} a={a} n={n}"
                );

                let value = nat_pow(&nat(a), n) + 1u32;
                let cert = valuation_pow_plus_one(m, a, n);
                assert!(exact_divides(m, cert.exponent, &value).unwrap());
            }
        }
    }
}

proptest! {
    /// modpow agrees with exact exponentiation followed by reduction.
    #[test]
    fn modpow_matches_exact(a in 0u64..1024, n in 0u64..1024, modulus in 1u64..65536) {
        let exact = nat_pow(&nat(a), n) % nat(modulus);
        prop_assert_eq!(modpow(&nat(a), &nat(n), &nat(modulus)), exact);
    }

    /// m^v | x and m^(v+1) ∤ x, definitionally.
    #[test]
    fn valuation_is_definitional(m in 2u64..50, x in 1u64..1_000_000_000) {
        let x = nat(x);
        let v = valuation(m, &x).unwrap();
        let mv = nat_pow(&nat(m), v);
        prop_assert!((&x % &mv) == Natural::from(0u32));
        prop_assert!((&x % (mv * m)) != Natural::from(0u32));
    }

    /// exact_divides(m, k, x) ⟺ valuation(m, x) = k.
    #[test]
    fn exact_divides_matches_valuation(m in 2u64..20, k in 0u64..40, x in 1u64..1_000_000_000) {
        let x = nat(x);
        prop_assert_eq!(
            exact_divides(m, k, &x).unwrap(),
            valuation(m, &x).unwrap() == k
        );
    }

    /// Construct x = m^k * c with m ∤ c; the valuation must come back as k.
    #[test]
    fn valuation_recovers_planted_exponent(m in 2u64..12, k in 0u64..12, c in 1u64..10_000) {
        prop_assume!(c % m != 0);
        let x = nat_pow(&nat(m), k) * nat(c);
        prop_assert_eq!(valuation(m, &x).unwrap(), k);
        prop_assert!(exact_divides(m, k, &x).unwrap());
    }
}
