//! Self-checking suites for the closed-form valuations and the
//! divisibility law, run over fixed ranges against the naive big-integer
//! oracle. `expdio verify-lemmas` is a thin front end over [`run_all`].

use num_traits::Zero;

use crate::arith::{nat_pow, Natural};
use crate::lemmas::{
    divisibility_law, even_base_divides_square, factor_exponent, naive_minus, naive_plus,
    predicted_v2_pow3_minus1, predicted_v2_pow3_plus1, predicted_v3_pow2_minus1,
    predicted_v3_pow2_plus1, predicted_vm_pow_minus1,
};
use crate::Error;

/// Result of one suite: how many checks ran and which ones failed.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: u64,
    /// One line per counterexample; empty means the suite passed.
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, condition: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !condition {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Names of all suites, in [`run_all`] order.
pub const SUITE_NAMES: [&str; 7] = [
    "cyclotomic_divisibility",
    "v2_pow3_minus",
    "v2_pow3_plus",
    "v3_pow2_minus",
    "v3_pow2_plus",
    "vm_pow_minus",
    "even_base_square",
];

/// `p^m - 1 | p^n - 1 ⟺ m | n` for `p` in `[2,7]`, `m` in `[1,48]`,
/// `n` in `[0,48]`.
pub fn cyclotomic_divisibility() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("cyclotomic_divisibility");
    for p in 2..=7u64 {
        for m in 1..=48u64 {
            for n in 0..=48u64 {
                let divides = divisibility_law(p, m, n);
                let expected = n % m == 0;
                out.check(divides == expected, || {
                    format!("p={p} m={m} n={n}: division gave {divides}, m|n gives {expected}")
                });
            }
        }
    }
    out
}

/// `v_2(3^n - 1)` against the oracle: the lemma grid `n = 2^e k` with
/// `e` in `[1,8]` and odd `k <= 9`, plus every odd `n <= 99`.
pub fn v2_pow3_minus() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("v2_pow3_minus");
    for e in 1..=8u64 {
        for k in [1u64, 3, 5, 7, 9] {
            let n = (1u64 << e) * k;
            let predicted = predicted_v2_pow3_minus1(n);
            let naive = naive_minus(2, 3, n);
            out.check(predicted == naive && predicted == e + 2, || {
                format!("n=2^{e}*{k}: predicted {predicted}, naive {naive}, expected {}", e + 2)
            });
        }
    }
    for n in (1..=99u64).step_by(2) {
        let predicted = predicted_v2_pow3_minus1(n);
        let naive = naive_minus(2, 3, n);
        out.check(predicted == naive, || {
            format!("odd n={n}: predicted {predicted}, naive {naive}")
        });
    }
    out
}

/// `v_2(3^n + 1)` against the oracle for all `n <= 99`.
pub fn v2_pow3_plus() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("v2_pow3_plus");
    for n in 1..=99u64 {
        let predicted = predicted_v2_pow3_plus1(n);
        let naive = naive_plus(2, 3, n);
        out.check(predicted == naive, || {
            format!("n={n}: predicted {predicted}, naive {naive}")
        });
    }
    out
}

/// `v_3(2^n - 1)` against the oracle: the grid `n = 2^e1 3^e3 l` with
/// `e1` in `[1,5]`, `e3` in `[0,4]`, `l` in `{1,5,7,11}`, plus every odd
/// `n <= 99`.
pub fn v3_pow2_minus() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("v3_pow2_minus");
    for e1 in 1..=5u64 {
        for e3 in 0..=4u32 {
            for l in [1u64, 5, 7, 11] {
                let n = (1u64 << e1) * 3u64.pow(e3) * l;
                let predicted = predicted_v3_pow2_minus1(n);
                let naive = naive_minus(3, 2, n);
                out.check(
                    predicted == naive && predicted == u64::from(e3) + 1,
                    || {
                        format!(
                            "n=2^{e1}*3^{e3}*{l}: predicted {predicted}, naive {naive}, expected {}",
                            e3 + 1
                        )
                    },
                );
            }
        }
    }
    for n in (1..=99u64).step_by(2) {
        let predicted = predicted_v3_pow2_minus1(n);
        let naive = naive_minus(3, 2, n);
        out.check(predicted == naive && predicted == 0, || {
            format!("odd n={n}: predicted {predicted}, naive {naive}")
        });
    }
    out
}

/// `v_3(2^n + 1)` against the oracle: the grid `n = 3^e3 l` with `e3` in
/// `[0,4]`, `l` in `{1,5,7,11,13}`, plus every even `n <= 98`.
pub fn v3_pow2_plus() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("v3_pow2_plus");
    for e3 in 0..=4u32 {
        for l in [1u64, 5, 7, 11, 13] {
            let n = 3u64.pow(e3) * l;
            let predicted = predicted_v3_pow2_plus1(n);
            let naive = naive_plus(3, 2, n);
            out.check(
                predicted == naive && predicted == u64::from(e3) + 1,
                || {
                    format!(
                        "n=3^{e3}*{l}: predicted {predicted}, naive {naive}, expected {}",
                        e3 + 1
                    )
                },
            );
        }
    }
    for n in (2..=98u64).step_by(2) {
        let predicted = predicted_v3_pow2_plus1(n);
        let naive = naive_plus(3, 2, n);
        out.check(predicted == naive && predicted == 0, || {
            format!("even n={n}: predicted {predicted}, naive {naive}")
        });
    }
    out
}

/// `v_m((m-1)^n - 1)` against the oracle for the default odd bases
/// (composite ones included) and all `n <= 60`; additionally checks that for
/// *every* base in `[3,20]`, odd or even, odd exponents give no factor at
/// all: `m ∤ (m-1)^n - 1` for odd `n < 60`.
pub fn vm_pow_minus() -> SuiteOutcome {
    vm_pow_minus_with_bases(&[3, 5, 7, 9, 11, 13, 15]).expect("default bases are odd")
}

/// [`vm_pow_minus`] with a caller-chosen odd base list. Even bases are
/// rejected, since the formula being checked is false there.
pub fn vm_pow_minus_with_bases(bases: &[u64]) -> Result<SuiteOutcome, Error> {
    for &base in bases {
        if base % 2 == 0 {
            return Err(Error::RequiresOddBase);
        }
        assert!(base >= 3, "base must be >= 3");
    }
    let mut out = SuiteOutcome::new("vm_pow_minus");
    for &base in bases {
        for n in 1..=60u64 {
            let predicted = predicted_vm_pow_minus1(base, n).expect("odd base");
            let naive = naive_minus(base, base - 1, n);
            out.check(predicted == naive, || {
                format!("base={base} n={n}: predicted {predicted}, naive {naive}")
            });
            if n % 2 == 0 {
                let f = factor_exponent(n, base);
                out.check(predicted == f.base_exponent + 1, || {
                    format!("base={base} n={n}: predicted {predicted} != v_base(n)+1")
                });
            }
        }
    }
    // The odd-exponent half survives for even bases too.
    for base in 3..=20u64 {
        for n in (1..60u64).step_by(2) {
            let value = nat_pow(&Natural::from(base - 1), n) - 1u32;
            let divisible = (value % Natural::from(base)).is_zero();
            out.check(!divisible, || {
                format!("base={base} odd n={n}: base divides (base-1)^n - 1")
            });
        }
    }
    Ok(out)
}

/// `base^2 | (base-1)^base - 1` for every even base in `[4,20]`.
pub fn even_base_square() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("even_base_square");
    for base in (4..=20u64).step_by(2) {
        let divides = even_base_divides_square(base).expect("even base");
        out.check(divides, || {
            format!("base={base}: base^2 does not divide (base-1)^base - 1")
        });
    }
    out
}

/// Run every suite in [`SUITE_NAMES`] order.
pub fn run_all() -> Vec<SuiteOutcome> {
    vec![
        cyclotomic_divisibility(),
        v2_pow3_minus(),
        v2_pow3_plus(),
        v3_pow2_minus(),
        v3_pow2_plus(),
        vm_pow_minus(),
        even_base_square(),
    ]
}

/// Look a suite up by name (separator- and case-insensitive).
pub fn by_name(name: &str) -> Option<fn() -> SuiteOutcome> {
    let key: String = name
        .chars()
        .filter(|ch| *ch != '-' && *ch != '_')
        .map(|ch| ch.to_ascii_lowercase())
        .collect();
    let table: [(&str, fn() -> SuiteOutcome); 7] = [
        ("cyclotomicdivisibility", cyclotomic_divisibility),
        ("v2pow3minus", v2_pow3_minus),
        ("v2pow3plus", v2_pow3_plus),
        ("v3pow2minus", v3_pow2_minus),
        ("v3pow2plus", v3_pow2_plus),
        ("vmpowminus", vm_pow_minus),
        ("evenbasesquare", even_base_square),
    ];
    table
        .into_iter()
        .find(|(candidate, _)| *candidate == key)
        .map(|(_, suite)| suite)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for outcome in run_all() {
            assert!(
                outcome.passed(),
                "{} failed: {:?}",
                outcome.name,
                outcome.failures
            );
            assert!(outcome.checks > 0);
        }
    }

    #[test]
    fn even_base_list_is_rejected() {
        assert!(matches!(
            vm_pow_minus_with_bases(&[3, 4]),
            Err(Error::RequiresOddBase)
        ));
    }

    #[test]
    fn lookup_by_name() {
        assert!(by_name("v3-pow2-minus").is_some());
        assert!(by_name("V3_POW2_MINUS").is_some());
        assert!(by_name("unknown").is_none());
    }
}
