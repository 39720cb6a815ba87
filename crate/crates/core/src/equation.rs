//! The master equation `2^a 3^b + 2^c 3^d = 2^e 3^f + 2^g 3^h`: evaluation,
//! normalization, canonical forms, and the seven-way case split.
//!
//! Normalization divides both sides by the largest common monomial, i.e.
//! subtracts `min{a,c,e,g}` from the 2-exponents and `min{b,d,f,h}` from the
//! 3-exponents, so each family contains a zero. For a tuple that satisfies
//! the equation, each family must in fact contain at least *two* zeros:
//! with exactly one zero, three of the four terms would share a factor of 2
//! (or 3) and the two sides would disagree modulo that factor. Splitting on
//! where those zeros sit, and merging configurations that differ only by
//! permuting summands, leaves seven reduced equations:
//!
//! ```text
//! 1    + 1   = 2^e 3^f + 2^g 3^h
//! 1    + 3^d = 2^e     + 2^g 3^h
//! 3^b  + 3^d = 2^e     + 2^g
//! 1    + 2^c = 3^f     + 2^g 3^h
//! 1 + 2^c 3^d = 1      + 2^g 3^h
//! 3^b  + 2^c = 1       + 2^g 3^h
//! 3^b  + 2^c = 3^f     + 2^g
//! ```
//!
//! [`ExponentTuple::classify`] maps a normalized tuple onto the first of
//! these (in the order above) that matches up to swapping the two terms of
//! either side and swapping the two sides.

use std::fmt;
use std::str::FromStr;

use crate::arith::{nat_pow, Natural};
use crate::Error;

/// A term's pair of exponents: `(x, y)` stands for `2^x 3^y`.
type Term = (u64, u64);
/// Left and right side, two terms each.
type Sides = [[Term; 2]; 2];

/// The eight exponents of `2^a 3^b + 2^c 3^d = 2^e 3^f + 2^g 3^h`.
///
/// Any combination of nonnegative exponents is representable; whether the
/// equation actually holds is the separate predicate [`holds`](Self::holds).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentTuple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    pub h: u64,
}

impl ExponentTuple {
    pub fn new(v: [u64; 8]) -> Self {
        Self {
            a: v[0],
            b: v[1],
            c: v[2],
            d: v[3],
            e: v[4],
            f: v[5],
            g: v[6],
            h: v[7],
        }
    }

    pub fn values(&self) -> [u64; 8] {
        [
            self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h,
        ]
    }

    fn sides(&self) -> Sides {
        [
            [(self.a, self.b), (self.c, self.d)],
            [(self.e, self.f), (self.g, self.h)],
        ]
    }

    fn from_sides(s: Sides) -> Self {
        Self::new([
            s[0][0].0, s[0][0].1, s[0][1].0, s[0][1].1, s[1][0].0, s[1][0].1, s[1][1].0, s[1][1].1,
        ])
    }

    /// Both sides as exact naturals.
    pub fn evaluate(&self) -> (Natural, Natural) {
        let [left, right] = self.sides();
        (
            term_value(left[0]) + term_value(left[1]),
            term_value(right[0]) + term_value(right[1]),
        )
    }

    /// Does the equation hold?
    pub fn holds(&self) -> bool {
        let (left, right) = self.evaluate();
        left == right
    }

    /// Subtract `min{a,c,e,g}` from the 2-exponents and `min{b,d,f,h}` from
    /// the 3-exponents. Leaves a zero in each family and preserves
    /// [`holds`](Self::holds).
    pub fn normalize(&self) -> Self {
        let min2 = self.a.min(self.c).min(self.e).min(self.g);
        let min3 = self.b.min(self.d).min(self.f).min(self.h);
        Self {
            a: self.a - min2,
            b: self.b - min3,
            c: self.c - min2,
            d: self.d - min3,
            e: self.e - min2,
            f: self.f - min3,
            g: self.g - min2,
            h: self.h - min3,
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Number of zeros among the 2-exponents `{a,c,e,g}` and among the
    /// 3-exponents `{b,d,f,h}` of a normalized tuple.
    pub fn zero_pattern(&self) -> Result<(u32, u32), Error> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let zeros2 = [self.a, self.c, self.e, self.g]
            .iter()
            .filter(|x| **x == 0)
            .count() as u32;
        let zeros3 = [self.b, self.d, self.f, self.h]
            .iter()
            .filter(|x| **x == 0)
            .count() as u32;
        Ok((zeros2, zeros3))
    }

    /// Sort the two terms of each side by `(2-exponent, 3-exponent)`, then
    /// order the two sides by the same order on their sorted term lists.
    /// Idempotent, preserves [`holds`](Self::holds), and identifies tuples
    /// that differ only by summand permutations.
    pub fn canonical_form(&self) -> Self {
        let mut sides = self.sides();
        sides[0].sort_unstable();
        sides[1].sort_unstable();
        if sides[1] < sides[0] {
            sides.swap(0, 1);
        }
        Self::from_sides(sides)
    }

    /// Match a normalized tuple against the seven reduced equations.
    ///
    /// Requires at least two zeros in each exponent family; otherwise the
    /// tuple belongs to no case and `None` is returned (which the zero-count
    /// argument rules out for any tuple that satisfies the equation).
    /// Matching is up to swapping the two terms within either side and
    /// swapping the two sides; the first case in display order that matches
    /// wins, and among multiple matching bindings for that case the
    /// lexicographically greatest is returned, so the result is
    /// deterministic and agrees with the representatives emitted by the
    /// case searches.
    pub fn classify(&self) -> Result<Option<CaseInstance>, Error> {
        let (zeros2, zeros3) = self.zero_pattern()?;
        if zeros2 < 2 || zeros3 < 2 {
            return Ok(None);
        }
        let images = symmetry_images(self.sides());
        for case in CaseId::ALL {
            let pattern = case.pattern();
            let best = images
                .iter()
                .filter_map(|image| pattern.matches(image))
                .max();
            if let Some(values) = best {
                return Ok(Some(CaseInstance { case, values }));
            }
        }
        unreachable!("two zeros in each exponent family always match a case")
    }
}

fn term_value((x, y): Term) -> Natural {
    nat_pow(&Natural::from(2u32), x) * nat_pow(&Natural::from(3u32), y)
}

// The eight images of a tuple under swapping the terms of either side and
// swapping the two sides.
fn symmetry_images(sides: Sides) -> [Sides; 8] {
    let mut images = [sides; 8];
    for (index, image) in images.iter_mut().enumerate() {
        if index & 1 != 0 {
            image[0].swap(0, 1);
        }
        if index & 2 != 0 {
            image[1].swap(0, 1);
        }
        if index & 4 != 0 {
            image.swap(0, 1);
        }
    }
    images
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.values();
        write!(
            out,
            "{},{},{},{},{},{},{},{}",
            v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]
        )
    }
}

impl FromStr for ExponentTuple {
    type Err = Error;

    /// Parse the fixed text form `a,b,c,d,e,f,g,h` (decimal, no spaces).
    fn from_str(text: &str) -> Result<Self, Error> {
        let mut values = [0u64; 8];
        let mut count = 0;
        for part in text.split(',') {
            if count == 8 {
                return Err(Error::MalformedTuple(format!(
                    "expected 8 exponents, got more in {text:?}"
                )));
            }
            values[count] = part
                .parse::<u64>()
                .map_err(|err| Error::MalformedTuple(format!("{part:?}: {err}")))?;
            count += 1;
        }
        if count != 8 {
            return Err(Error::MalformedTuple(format!(
                "expected 8 exponents, got {count} in {text:?}"
            )));
        }
        Ok(Self::new(values))
    }
}

/// One exponent slot of a case pattern: forced to zero, or bound to the
/// case variable with the given index.
#[derive(Clone, Copy)]
enum Slot {
    Zero,
    Var(usize),
}

struct Pattern {
    /// `(2-exponent, 3-exponent)` slots for the terms L1, L2, R1, R2.
    slots: [[Slot; 2]; 4],
    vars: [char; 4],
    equation: &'static str,
    name: &'static str,
}

impl Pattern {
    fn matches(&self, sides: &Sides) -> Option<[u64; 4]> {
        let terms = [sides[0][0], sides[0][1], sides[1][0], sides[1][1]];
        let mut values = [0u64; 4];
        for (slots, term) in self.slots.iter().zip(terms) {
            for (slot, exponent) in [(slots[0], term.0), (slots[1], term.1)] {
                match slot {
                    Slot::Zero => {
                        if exponent != 0 {
                            return None;
                        }
                    }
                    Slot::Var(index) => values[index] = exponent,
                }
            }
        }
        Some(values)
    }
}

use Slot::{Var, Zero};

static PATTERNS: [Pattern; 7] = [
    Pattern {
        // 1 + 1 = 2^e 3^f + 2^g 3^h
        slots: [
            [Zero, Zero],
            [Zero, Zero],
            [Var(0), Var(1)],
            [Var(2), Var(3)],
        ],
        vars: ['e', 'f', 'g', 'h'],
        equation: "1 + 1 = 2^e 3^f + 2^g 3^h",
        name: "1plus1",
    },
    Pattern {
        // 1 + 3^d = 2^e + 2^g 3^h
        slots: [
            [Zero, Zero],
            [Zero, Var(0)],
            [Var(1), Zero],
            [Var(2), Var(3)],
        ],
        vars: ['d', 'e', 'g', 'h'],
        equation: "1 + 3^d = 2^e + 2^g 3^h",
        name: "1_3d",
    },
    Pattern {
        // 3^b + 3^d = 2^e + 2^g
        slots: [
            [Zero, Var(0)],
            [Zero, Var(1)],
            [Var(2), Zero],
            [Var(3), Zero],
        ],
        vars: ['b', 'd', 'e', 'g'],
        equation: "3^b + 3^d = 2^e + 2^g",
        name: "3b3d",
    },
    Pattern {
        // 1 + 2^c = 3^f + 2^g 3^h
        slots: [
            [Zero, Zero],
            [Var(0), Zero],
            [Zero, Var(1)],
            [Var(2), Var(3)],
        ],
        vars: ['c', 'f', 'g', 'h'],
        equation: "1 + 2^c = 3^f + 2^g 3^h",
        name: "1_2c",
    },
    Pattern {
        // 1 + 2^c 3^d = 1 + 2^g 3^h
        slots: [
            [Zero, Zero],
            [Var(0), Var(1)],
            [Zero, Zero],
            [Var(2), Var(3)],
        ],
        vars: ['c', 'd', 'g', 'h'],
        equation: "1 + 2^c 3^d = 1 + 2^g 3^h",
        name: "identity",
    },
    Pattern {
        // 3^b + 2^c = 1 + 2^g 3^h
        slots: [
            [Zero, Var(0)],
            [Var(1), Zero],
            [Zero, Zero],
            [Var(2), Var(3)],
        ],
        vars: ['b', 'c', 'g', 'h'],
        equation: "3^b + 2^c = 1 + 2^g 3^h",
        name: "3b2c_mixed",
    },
    Pattern {
        // 3^b + 2^c = 3^f + 2^g
        slots: [
            [Zero, Var(0)],
            [Var(1), Zero],
            [Zero, Var(2)],
            [Var(3), Zero],
        ],
        vars: ['b', 'c', 'f', 'g'],
        equation: "3^b + 2^c = 3^f + 2^g",
        name: "3b2c_split",
    },
];

/// Identifier of one of the seven reduced equations, in display order.
/// Every case binds exactly four free exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    /// `1 + 1 = 2^e 3^f + 2^g 3^h`
    OnePlusOne,
    /// `1 + 3^d = 2^e + 2^g 3^h`
    OnePlusPow3,
    /// `3^b + 3^d = 2^e + 2^g`
    Pow3Pow3,
    /// `1 + 2^c = 3^f + 2^g 3^h`
    OnePlusPow2,
    /// `1 + 2^c 3^d = 1 + 2^g 3^h`
    Identity,
    /// `3^b + 2^c = 1 + 2^g 3^h`
    Pow3Pow2Mixed,
    /// `3^b + 2^c = 3^f + 2^g`
    Pow3Pow2Split,
}

impl CaseId {
    pub const ALL: [CaseId; 7] = [
        CaseId::OnePlusOne,
        CaseId::OnePlusPow3,
        CaseId::Pow3Pow3,
        CaseId::OnePlusPow2,
        CaseId::Identity,
        CaseId::Pow3Pow2Mixed,
        CaseId::Pow3Pow2Split,
    ];

    fn index(self) -> usize {
        Self::ALL.iter().position(|case| *case == self).unwrap()
    }

    fn pattern(self) -> &'static Pattern {
        &PATTERNS[self.index()]
    }

    /// The case's four free variables, in the order bindings are stored.
    pub fn variables(self) -> [char; 4] {
        self.pattern().vars
    }

    /// Human-readable form of the reduced equation.
    pub fn equation(self) -> &'static str {
        self.pattern().equation
    }

    /// Short name used by the CLI and in serialized records.
    pub fn name(self) -> &'static str {
        self.pattern().name
    }

    /// Parse a case name, ignoring case and `-`/`_` separators, so
    /// `3b3d`, `3B_3D` and `3b-3d` all name the same case.
    pub fn parse_name(text: &str) -> Option<CaseId> {
        let key: String = text
            .chars()
            .filter(|ch| *ch != '-' && *ch != '_')
            .map(|ch| ch.to_ascii_lowercase())
            .collect();
        CaseId::ALL.into_iter().find(|case| {
            case.name()
                .chars()
                .filter(|ch| *ch != '-' && *ch != '_')
                .collect::<String>()
                == key
        })
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        Self::parse_name(text).ok_or_else(|| Error::MalformedTuple(format!("unknown case {text:?}")))
    }
}

/// A case together with values for its four free variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseInstance {
    pub case: CaseId,
    pub values: [u64; 4],
}

impl CaseInstance {
    /// Variable names paired with their values.
    pub fn binding(&self) -> [(char, u64); 4] {
        let vars = self.case.variables();
        [
            (vars[0], self.values[0]),
            (vars[1], self.values[1]),
            (vars[2], self.values[2]),
            (vars[3], self.values[3]),
        ]
    }

    /// Embed the instance back into the master equation, zeros in the
    /// forced slots.
    pub fn to_tuple(&self) -> ExponentTuple {
        let pattern = self.case.pattern();
        let mut sides: Sides = [[(0, 0); 2]; 2];
        for (term_index, slots) in pattern.slots.iter().enumerate() {
            let term = &mut sides[term_index / 2][term_index % 2];
            if let Var(index) = slots[0] {
                term.0 = self.values[index];
            }
            if let Var(index) = slots[1] {
                term.1 = self.values[index];
            }
        }
        ExponentTuple::from_sides(sides)
    }

    /// Does the bound instance satisfy its equation?
    pub fn holds(&self) -> bool {
        self.to_tuple().holds()
    }
}

impl fmt::Display for CaseInstance {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}:", self.case.name())?;
        for (var, value) in self.binding() {
            write!(out, " {var}={value}")?;
        }
        Ok(())
    }
}
