//! Bounded solvers and searches.
//!
//! The two equation solvers enumerate a box of exponents but prune it with
//! the same facts that make the full solution sets provably complete:
//! divisibility of exponents (`p^m - 1 | p^n - 1` forces `m | n`), the
//! geometric-cofactor identity, and the growth inequality between the
//! power being factored and the valuation its cofactor can carry. Every
//! pruned candidate is re-checked by exact arithmetic in debug builds, so
//! the pruning can never silently drop a solution. Within their boxes the
//! solvers are complete; the default boxes comfortably contain the known
//! complete solution sets `{(1,1,2), (2,3,6)}` and
//! `{(2,3,6,1)} ∪ {(1,1,2,n)}`.
//!
//! The case searches brute-force the seven reduced equations, deduplicate
//! solutions that differ only by swapping the interchangeable terms of a
//! side, and emit them in a canonical sorted order that is independent of
//! the worker count.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{nat_pow, valuation_pow_minus_one, Natural};
use crate::equation::{CaseId, CaseInstance, ExponentTuple};
use crate::Error;

/// Bit budget below which the conjecture inequality is compared exactly;
/// above it, integer log bounds are tried first.
const EXACT_COMPARE_BITS: u64 = 4096;

/// A solution of `3^k (2^m - 1) = 2^n - 1` in positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prop6Solution {
    pub k: u64,
    pub m: u64,
    pub n: u64,
}

/// A solution of `(2n+1)^k ((2n)^p - 1) = (2n)^q - 1` in positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prop9Solution {
    pub k: u64,
    pub p: u64,
    pub q: u64,
    pub n: u64,
}

/// Bounds and parallelism for the case and master searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Inclusive upper bound on every exponent.
    pub bound: u64,
    /// Worker threads; results are byte-identical for any value.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            bound: 12,
            workers: 1,
        }
    }
}

/// Evidence report for one even base `m`: for which `n <= n_max` does
/// `(m^{v_m((m-1)^n - 1)})^2 <= (m-1)^n - 1` fail, and from which `N`
/// onward was no failure observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub base: u64,
    pub n_max: u64,
    /// All violating `n`, ascending.
    pub violations: Vec<u64>,
    /// Least `N` with no violation in `[N, n_max]`; `None` when the last
    /// scanned `n` itself violates, i.e. the scan gives no such threshold.
    pub minimal_n: Option<u64>,
}

fn run_with_workers<T: Send>(workers: usize, task: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("worker pool");
    pool.install(task)
}

/// Exact check of `3^k (2^m - 1) = 2^n - 1`.
pub fn check_prop6(k: u64, m: u64, n: u64) -> bool {
    assert!(k >= 1 && m >= 1 && n >= 1);
    let two = Natural::from(2u32);
    let three = Natural::from(3u32);
    nat_pow(&three, k) * (nat_pow(&two, m) - 1u32) == nat_pow(&two, n) - 1u32
}

/// `1 + 2^m + 2^2m + ... + 2^(l-1)m`, the cofactor `(2^(lm) - 1)/(2^m - 1)`.
/// The summed and divided forms are checked against each other in debug
/// builds.
pub fn geometric_cofactor(m: u64, l: u64) -> Natural {
    assert!(m >= 1 && l >= 1);
    let mut sum = Natural::zero();
    for i in 0..l {
        sum.set_bit(i * m, true);
    }
    debug_assert_eq!(
        &sum * (nat_pow(&Natural::from(2u32), m) - 1u32),
        nat_pow(&Natural::from(2u32), l * m) - 1u32,
    );
    sum
}

/// All solutions of `3^k (2^m - 1) = 2^n - 1` with `k <= k_max`,
/// `m <= m_max`, `n <= n_max`, in ascending `(k, m, n)` order.
///
/// Candidates are pruned by: `n` even (3 divides `2^n - 1` only then),
/// `m | n` with cofactor length `l = n/m >= 2`, and `3^(2k) > 2^n - 1`
/// (the cofactor of any solution exceeds `2^m - 1`, forcing that
/// inequality). Surviving candidates are decided by the exact cofactor
/// identity `3^k = (2^n - 1)/(2^m - 1)`. In debug builds every pruned
/// candidate is confirmed non-solving by exact arithmetic.
pub fn solve_prop6(k_max: u64, m_max: u64, n_max: u64) -> Vec<Prop6Solution> {
    let two = Natural::from(2u32);
    let three = Natural::from(3u32);
    let mut solutions = Vec::new();
    for k in 1..=k_max {
        let three_k = nat_pow(&three, k);
        let three_2k = &three_k * &three_k;
        for m in 1..=m_max {
            for n in 1..=n_max {
                let skip_is_sound = || {
                    debug_assert!(
                        !check_prop6(k, m, n),
                        "pruning discarded a solution ({k},{m},{n})"
                    );
                };
                if n % 2 == 1 {
                    skip_is_sound();
                    continue;
                }
                if n % m != 0 || n / m < 2 {
                    skip_is_sound();
                    continue;
                }
                if three_2k <= nat_pow(&two, n) - 1u32 {
                    skip_is_sound();
                    continue;
                }
                let hit = three_k == geometric_cofactor(m, n / m);
                debug_assert_eq!(hit, check_prop6(k, m, n));
                if hit {
                    solutions.push(Prop6Solution { k, m, n });
                }
            }
        }
    }
    solutions
}

/// Exact check of `(2n+1)^k ((2n)^p - 1) = (2n)^q - 1`.
pub fn check_prop9(k: u64, p: u64, q: u64, n: u64) -> bool {
    assert!(k >= 1 && p >= 1 && q >= 1 && n >= 1);
    let base = Natural::from(2 * n);
    let odd = Natural::from(2 * n + 1);
    nat_pow(&odd, k) * (nat_pow(&base, p) - 1u32) == nat_pow(&base, q) - 1u32
}

/// All solutions of `(2n+1)^k ((2n)^p - 1) = (2n)^q - 1` within the box,
/// in ascending `(k, p, q, n)` order.
///
/// Pruning mirrors [`solve_prop6`] with the base 2 replaced by `2n`:
/// `p | q` with `l = q/p >= 2`, and `(2n+1)^k > (2n)^p - 1`. Surviving
/// candidates are decided by the exact cofactor identity; in debug builds
/// every pruned candidate is confirmed non-solving.
pub fn solve_prop9(k_max: u64, p_max: u64, q_max: u64, n_max: u64) -> Vec<Prop9Solution> {
    let mut solutions = Vec::new();
    for k in 1..=k_max {
        for p in 1..=p_max {
            for q in 1..=q_max {
                for n in 1..=n_max {
                    let skip_is_sound = || {
                        debug_assert!(
                            !check_prop9(k, p, q, n),
                            "pruning discarded a solution ({k},{p},{q},{n})"
                        );
                    };
                    if q % p != 0 || q / p < 2 {
                        skip_is_sound();
                        continue;
                    }
                    let base = Natural::from(2 * n);
                    let odd_pow_k = nat_pow(&Natural::from(2 * n + 1), k);
                    if odd_pow_k <= nat_pow(&base, p) - 1u32 {
                        skip_is_sound();
                        continue;
                    }
                    let l = q / p;
                    let mut cofactor = Natural::zero();
                    for i in 0..l {
                        cofactor += nat_pow(&base, i * p);
                    }
                    debug_assert_eq!(
                        &cofactor * (nat_pow(&base, p) - 1u32),
                        nat_pow(&base, q) - 1u32
                    );
                    let hit = odd_pow_k == cofactor;
                    debug_assert_eq!(hit, check_prop9(k, p, q, n));
                    if hit {
                        solutions.push(Prop9Solution { k, p, q, n });
                    }
                }
            }
        }
    }
    solutions
}

/// Exact verification of `x^6 < (x-1)^(2x^2) - 1` for every odd `x` in
/// `[3, x_max]` — the growth fact seeding the solvers' inequality pruning.
pub fn verify_growth_base_case(x_max: u64) -> bool {
    assert!(x_max >= 3);
    let mut x = 3u64;
    while x <= x_max {
        let lhs = nat_pow(&Natural::from(x), 6);
        let exponent = 2u64
            .checked_mul(x)
            .and_then(|t| t.checked_mul(x))
            .expect("exponent 2x^2 overflows u64");
        let rhs = nat_pow(&Natural::from(x - 1), exponent) - 1u32;
        if lhs >= rhs {
            return false;
        }
        x += 2;
    }
    true
}

// Dedup key for case solutions: the term multiset of each side, sides kept
// in place. Two bindings collide exactly when they differ by swapping the
// interchangeable terms of a side.
type SideKey = ([(u64, u64); 2], [(u64, u64); 2]);

fn side_key(tuple: ExponentTuple) -> SideKey {
    let v = tuple.values();
    let mut left = [(v[0], v[1]), (v[2], v[3])];
    let mut right = [(v[4], v[5]), (v[6], v[7])];
    left.sort_unstable();
    right.sort_unstable();
    (left, right)
}

fn merge_max(
    mut into: BTreeMap<SideKey, [u64; 4]>,
    from: BTreeMap<SideKey, [u64; 4]>,
) -> BTreeMap<SideKey, [u64; 4]> {
    for (key, values) in from {
        into.entry(key)
            .and_modify(|existing| {
                if values > *existing {
                    *existing = values;
                }
            })
            .or_insert(values);
    }
    into
}

/// Every binding of the case's four variables with all values `<= bound`
/// that satisfies the reduced equation, deduplicated under within-side term
/// permutation (the representative is the greatest equivalent binding) and
/// sorted ascending. Output is identical for any worker count.
pub fn search_case(case: CaseId, config: &SearchConfig) -> Vec<CaseInstance> {
    let bound = config.bound;
    let groups = run_with_workers(config.workers, || {
        (0..=bound)
            .into_par_iter()
            .map(|v0| {
                let mut local: BTreeMap<SideKey, [u64; 4]> = BTreeMap::new();
                for v1 in 0..=bound {
                    for v2 in 0..=bound {
                        for v3 in 0..=bound {
                            let instance = CaseInstance {
                                case,
                                values: [v0, v1, v2, v3],
                            };
                            if !instance.holds() {
                                continue;
                            }
                            let key = side_key(instance.to_tuple());
                            local
                                .entry(key)
                                .and_modify(|existing| {
                                    if instance.values > *existing {
                                        *existing = instance.values;
                                    }
                                })
                                .or_insert(instance.values);
                        }
                    }
                }
                local
            })
            .reduce(BTreeMap::new, merge_max)
    });
    let mut out: Vec<CaseInstance> = groups
        .into_values()
        .map(|values| CaseInstance { case, values })
        .collect();
    out.sort_unstable_by_key(|instance| instance.values);
    out
}

/// Every tuple with all eight exponents `<= bound` that satisfies the
/// master equation, normalized, canonicalized and deduplicated, each paired
/// with its case classification. Sorted by tuple; identical for any worker
/// count.
///
/// Enumeration meets in the middle: all two-term sums are bucketed by
/// value, and each bucket contributes every (left pair, right pair)
/// combination.
pub fn search_master(config: &SearchConfig) -> Vec<(ExponentTuple, CaseInstance)> {
    let bound = config.bound;
    let mut terms: Vec<((u64, u64), Natural)> = Vec::new();
    for x in 0..=bound {
        for y in 0..=bound {
            let value =
                nat_pow(&Natural::from(2u32), x) * nat_pow(&Natural::from(3u32), y);
            terms.push(((x, y), value));
        }
    }
    let mut by_sum: HashMap<Natural, Vec<[(u64, u64); 2]>> = HashMap::new();
    for i in 0..terms.len() {
        for j in i..terms.len() {
            let sum = &terms[i].1 + &terms[j].1;
            by_sum.entry(sum).or_default().push([terms[i].0, terms[j].0]);
        }
    }
    let buckets: Vec<Vec<[(u64, u64); 2]>> = by_sum.into_values().collect();
    let tuples = run_with_workers(config.workers, || {
        buckets
            .par_iter()
            .map(|pairs| {
                let mut local = BTreeSet::new();
                for left in pairs {
                    for right in pairs {
                        let tuple = ExponentTuple::new([
                            left[0].0, left[0].1, left[1].0, left[1].1, right[0].0, right[0].1,
                            right[1].0, right[1].1,
                        ]);
                        local.insert(tuple.normalize().canonical_form());
                    }
                }
                local
            })
            .reduce(BTreeSet::new, |mut into, from| {
                into.extend(from);
                into
            })
    });
    tuples
        .into_iter()
        .map(|tuple| {
            let instance = tuple
                .classify()
                .expect("canonical form of a normalized tuple is normalized")
                .expect("holding tuples always classify");
            (tuple, instance)
        })
        .collect()
}

// m^(2v) <= (m-1)^n - 1, decided exactly for small sizes and by integer
// log2 bounds first for large ones (falling back to the exact comparison
// whenever the bounds are inconclusive).
fn conjecture_inequality_holds(m: u64, n: u64, v: u64) -> bool {
    let bits = |x: u64| u64::from(64 - x.leading_zeros());
    let exact = || {
        let lhs = nat_pow(&Natural::from(m), 2 * v);
        let rhs = nat_pow(&Natural::from(m - 1), n) - 1u32;
        lhs <= rhs
    };
    if n.saturating_mul(bits(m - 1)) <= EXACT_COMPARE_BITS {
        return exact();
    }
    // m^(2v) < 2^(2v*bits(m)) and (m-1)^n >= 2^(n*(bits(m-1)-1)), so the
    // bit bounds alone settle the "holds" direction.
    if 2u64.saturating_mul(v).saturating_mul(bits(m)) <= n.saturating_mul(bits(m - 1) - 1) {
        return true;
    }
    exact()
}

/// Scan every even `m` in `[m_min, m_max]` and every `n` in `[1, n_max]`,
/// recording the `n` for which `(m^{v_m((m-1)^n - 1)})^2 <= (m-1)^n - 1`
/// fails. Valuations take the residue-probing path; `(m-1)^n` is only
/// materialized when the inequality has to be compared exactly.
pub fn scan_conjecture(
    m_min: u64,
    m_max: u64,
    n_max: u64,
    workers: usize,
) -> Result<Vec<ConjectureReport>, Error> {
    for bound in [m_min, m_max] {
        if bound % 2 != 0 || bound <= 3 {
            return Err(Error::InvalidConjectureBase(bound));
        }
    }
    let bases: Vec<u64> = (m_min..=m_max).step_by(2).collect();
    let reports = run_with_workers(workers, || {
        bases
            .par_iter()
            .map(|&base| scan_conjecture_single(base, n_max))
            .collect::<Vec<_>>()
    });
    Ok(reports)
}

fn scan_conjecture_single(base: u64, n_max: u64) -> ConjectureReport {
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let v = valuation_pow_minus_one(base, base - 1, n).exponent;
        if !conjecture_inequality_holds(base, n, v) {
            violations.push(n);
        }
    }
    let minimal_n = match violations.last() {
        None => Some(1),
        Some(&last) if last < n_max => Some(last + 1),
        Some(_) => None,
    };
    ConjectureReport {
        base,
        n_max,
        violations,
        minimal_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_prop6_cases() {
        assert!(check_prop6(1, 1, 2));
        assert!(check_prop6(2, 3, 6));
        assert!(!check_prop6(1, 2, 3));
    }

    #[test]
    fn solve_prop6_reference_boxes() {
        let expected = vec![
            Prop6Solution { k: 1, m: 1, n: 2 },
            Prop6Solution { k: 2, m: 3, n: 6 },
        ];
        assert_eq!(solve_prop6(10, 60, 60), expected);
        assert_eq!(solve_prop6(2, 3, 6), expected);
        assert_eq!(solve_prop6(1, 1, 1), vec![]);
    }

    #[test]
    fn geometric_cofactor_cases() {
        assert_eq!(geometric_cofactor(3, 2), Natural::from(9u32));
        assert_eq!(geometric_cofactor(7, 1), Natural::from(1u32));
        assert_eq!(geometric_cofactor(1, 2), Natural::from(3u32));
    }

    #[test]
    fn check_prop9_cases() {
        assert!(check_prop9(2, 3, 6, 1));
        assert!(check_prop9(1, 1, 2, 5)); // 11 * 9 = 99 = 10^2 - 1
        assert!(!check_prop9(1, 2, 2, 1));
    }

    #[test]
    fn solve_prop9_reference_boxes() {
        let mut expected: Vec<Prop9Solution> = (1..=12)
            .map(|n| Prop9Solution { k: 1, p: 1, q: 2, n })
            .collect();
        expected.push(Prop9Solution {
            k: 2,
            p: 3,
            q: 6,
            n: 1,
        });
        assert_eq!(solve_prop9(8, 40, 40, 12), expected);

        let family: Vec<Prop9Solution> = (1..=3)
            .map(|n| Prop9Solution { k: 1, p: 1, q: 2, n })
            .collect();
        assert_eq!(solve_prop9(1, 1, 2, 3), family);

        // q_max = 5 excludes (2,3,6,1) but keeps the q = 2 family.
        assert_eq!(
            solve_prop9(8, 40, 5, 1),
            vec![Prop9Solution { k: 1, p: 1, q: 2, n: 1 }]
        );
    }

    #[test]
    fn growth_base_case_small() {
        assert!(verify_growth_base_case(3)); // 729 < 2^18 - 1
        assert!(verify_growth_base_case(9));
        assert!(verify_growth_base_case(15));
    }

    #[test]
    fn search_case_reference_sets() {
        let config = SearchConfig {
            bound: 6,
            workers: 1,
        };
        let found = search_case(CaseId::OnePlusOne, &config);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].values, [0, 0, 0, 0]);

        let config = SearchConfig {
            bound: 2,
            workers: 1,
        };
        let found = search_case(CaseId::Identity, &config);
        let expected: Vec<[u64; 4]> = (0..=2u64)
            .flat_map(|s| (0..=2u64).map(move |t| [s, t, s, t]))
            .collect();
        let mut expected = expected;
        expected.sort_unstable();
        assert_eq!(
            found.iter().map(|i| i.values).collect::<Vec<_>>(),
            expected
        );

        let config = SearchConfig {
            bound: 3,
            workers: 1,
        };
        let found = search_case(CaseId::Pow3Pow3, &config);
        assert_eq!(
            found.iter().map(|i| i.values).collect::<Vec<_>>(),
            vec![
                [0, 0, 0, 0],
                [1, 0, 1, 1],
                [1, 1, 2, 1],
                [2, 0, 3, 1],
                [2, 1, 3, 2]
            ]
        );
    }

    #[test]
    fn search_results_reverify() {
        let config = SearchConfig {
            bound: 5,
            workers: 1,
        };
        for case in CaseId::ALL {
            for instance in search_case(case, &config) {
                assert!(instance.holds(), "{instance} does not satisfy its case");
            }
        }
    }

    #[test]
    fn search_master_bound_zero() {
        let config = SearchConfig {
            bound: 0,
            workers: 1,
        };
        let found = search_master(&config);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].0, ExponentTuple::new([0; 8]));
        assert_eq!(found[0].1.case, CaseId::OnePlusOne);
    }

    #[test]
    fn search_master_contains_mixed_example() {
        let config = SearchConfig {
            bound: 3,
            workers: 1,
        };
        let found = search_master(&config);
        let canonical = ExponentTuple::new([0, 0, 1, 1, 2, 0, 0, 1]).canonical_form();
        let entry = found
            .iter()
            .find(|(tuple, _)| *tuple == canonical)
            .expect("1 + 6 = 4 + 3 appears at bound 3");
        assert_eq!(entry.1.case, CaseId::Pow3Pow2Mixed);
        for (tuple, instance) in &found {
            assert!(tuple.holds());
            assert!(instance.holds());
        }
    }

    #[test]
    fn conjecture_scan_base_four() {
        let reports = scan_conjecture(4, 4, 100, 1).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].violations, vec![2, 4]);
        assert_eq!(reports[0].minimal_n, Some(5));

        let reports = scan_conjecture(4, 4, 1, 1).unwrap();
        assert_eq!(reports[0].violations, Vec::<u64>::new());
        assert_eq!(reports[0].minimal_n, Some(1));
    }

    #[test]
    fn conjecture_scan_rejects_odd_bounds() {
        assert_eq!(
            scan_conjecture(5, 8, 10, 1),
            Err(Error::InvalidConjectureBase(5))
        );
        assert_eq!(
            scan_conjecture(4, 2, 10, 1),
            Err(Error::InvalidConjectureBase(2))
        );
    }

    #[test]
    fn conjecture_scan_violation_at_end_has_no_threshold() {
        // For m = 4 the violations are {2, 4}; cutting the scan at n = 4
        // leaves no violation-free tail inside the scanned range.
        let reports = scan_conjecture(4, 4, 4, 1).unwrap();
        assert_eq!(reports[0].violations, vec![2, 4]);
        assert_eq!(reports[0].minimal_n, None);
    }
}
