//! Numerical semigroups in normal form.
//!
//! A numerical semigroup is an additive submonoid of ℕ whose complement (the
//! set of gaps) is finite. The normal form stores the minimal generators, the
//! conductor (least `c` with `[c, ∞) ⊆ S`) and a dense membership table for
//! `[0, conductor)`; the Frobenius number, genus and multiplicity are cached
//! at construction. The conventions for the full semigroup ℕ are
//! `frobenius = -1`, `conductor = 0` and `multiplicity = 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::Error;

/// A cofinite additive submonoid of ℕ in canonical normal form.
///
/// Values are immutable after construction; every constructor recomputes the
/// normal form, so two values describing the same subset of ℕ compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    min_generators: Vec<i64>,
    conductor: i64,
    membership: Vec<bool>,
    genus: i64,
    multiplicity: i64,
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Parses a comma-separated list of integers, e.g. `"6,7,9,17"`.
pub(crate) fn parse_int_list(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("invalid integer `{}`", tok)))
        })
        .collect()
}

impl NumericalSemigroup {
    /// The smallest numerical semigroup containing `gens`.
    ///
    /// Requires a nonempty list of positive integers with gcd 1; redundant
    /// generators are dropped by the normal form.
    pub fn from_generators(gens: &[i64]) -> Result<Self, Error> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&g| g <= 0) {
            return Err(Error::InvalidGenerator(bad));
        }
        let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }

        let mult = *gens.iter().min().unwrap() as usize;
        let max = *gens.iter().max().unwrap() as usize;
        // Grow the sieve until a run of `mult` consecutive members shows up;
        // from there on every integer is a member.
        let mut cap = 2 * max + 2;
        loop {
            let mut table = vec![false; cap];
            table[0] = true;
            let mut run = 0usize;
            let mut stop = None;
            for n in 1..cap {
                table[n] = gens
                    .iter()
                    .any(|&g| n as i64 >= g && table[n - g as usize]);
                if table[n] {
                    run += 1;
                    if run == mult {
                        stop = Some(n + 1);
                        break;
                    }
                } else {
                    run = 0;
                }
            }
            if let Some(end) = stop {
                table.truncate(end);
                return Ok(Self::from_membership(table));
            }
            cap *= 2;
        }
    }

    /// The full semigroup ℕ.
    pub fn natural() -> Self {
        Self::from_membership(Vec::new())
    }

    /// Builds the normal form from a membership table over `[0, table.len())`,
    /// under the promise that every integer `>= table.len()` is a member.
    pub(crate) fn from_membership(mut table: Vec<bool>) -> Self {
        assert!(*table.first().unwrap_or(&true), "0 must be a member");
        while table.last() == Some(&true) {
            table.pop();
        }
        let conductor = table.len() as i64;
        let genus = table.iter().filter(|&&b| !b).count() as i64;
        let member = |n: i64| n >= 0 && (n >= conductor || table[n as usize]);

        let multiplicity = (1..=conductor).find(|&n| member(n)).unwrap_or(conductor.max(1));

        // Minimal generators are the members of M that are not sums of two
        // members of M; all of them lie below conductor + multiplicity.
        let min_generators = if conductor == 0 {
            vec![1]
        } else {
            (1..conductor + multiplicity)
                .filter(|&n| member(n) && !(1..n).any(|a| member(a) && member(n - a)))
                .collect()
        };

        #[cfg(debug_assertions)]
        {
            for a in 0..=conductor {
                for b in a..=conductor {
                    if member(a) && member(b) {
                        debug_assert!(member(a + b), "not closed at {} + {}", a, b);
                    }
                }
            }
        }

        NumericalSemigroup {
            min_generators,
            conductor,
            membership: table,
            genus,
            multiplicity,
        }
    }

    /// Membership test; negative integers are never members and everything at
    /// or beyond the conductor always is.
    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && (n >= self.conductor || self.membership[n as usize])
    }

    pub fn min_generators(&self) -> &[i64] {
        &self.min_generators
    }

    /// Least `c` with `[c, ∞) ⊆ S`; zero exactly for ℕ.
    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// `max(ℤ ∖ S)`, with the convention `-1` for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }

    /// Number of gaps `|ℕ ∖ S|`.
    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// Least nonzero member; `1` for ℕ.
    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    pub fn embedding_dimension(&self) -> i64 {
        self.min_generators.len() as i64
    }

    pub fn is_natural(&self) -> bool {
        self.genus == 0
    }

    /// The gaps of the semigroup, in increasing order.
    pub fn gaps(&self) -> Vec<i64> {
        (0..self.conductor).filter(|&n| !self.contains(n)).collect()
    }

    /// The pseudo-Frobenius numbers `{z ∈ ℤ ∖ S : z + M ⊆ S}`.
    ///
    /// For ℕ this is `{-1}`. Since `M` is generated by the minimal generators
    /// as an ideal, it suffices to test `z + g` for each minimal generator.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        if self.is_natural() {
            return vec![-1];
        }
        self.gaps()
            .into_iter()
            .filter(|&z| self.min_generators.iter().all(|&g| self.contains(z + g)))
            .collect()
    }

    /// The type: number of pseudo-Frobenius numbers (1 for ℕ).
    pub fn semigroup_type(&self) -> i64 {
        self.pseudo_frobenius().len() as i64
    }

    /// Maximal embedding dimension: the embedding dimension equals the
    /// multiplicity, equivalently `e + M = M + M`. Both routes are computed
    /// and must agree.
    pub fn is_med(&self) -> bool {
        let by_dimension = self.embedding_dimension() == self.multiplicity;
        let by_doubling = self.med_by_doubling();
        assert_eq!(
            by_dimension, by_doubling,
            "is_med routes disagree on {}: dimension route {}, set route {}",
            self, by_dimension, by_doubling
        );
        by_dimension
    }

    /// Set route for MED: `e + M` and `M + M` agree everywhere (both contain
    /// every integer beyond `conductor + e`, so a finite scan decides).
    fn med_by_doubling(&self) -> bool {
        let e = self.multiplicity;
        (0..=self.conductor + e).all(|n| {
            let shifted = n - e >= 1 && self.contains(n - e);
            let doubled = (1..n).any(|a| self.contains(a) && self.contains(n - a));
            shifted == doubled
        })
    }
}

impl fmt::Display for NumericalSemigroup {
    /// Canonical text encoding: minimal generators, comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for g in &self.min_generators {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", g)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalSemigroup({})", self)
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::from_generators(&parse_int_list(s)?)
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
