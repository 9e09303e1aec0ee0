//! Relative ideals of a numerical semigroup.
//!
//! A relative ideal of `S` is a set `E ⊆ ℤ` that is bounded below, closed
//! under addition by `S`, and eventually full (`s + E ⊆ S` for some `s ∈ S`
//! forces the complement of `E` to be bounded above). The windowed normal
//! form stores the least element `m(E)`, the Frobenius number
//! `F(E) = max(ℤ ∖ E)` and the sorted list of members in `[m(E), F(E)]`;
//! every integer beyond `F(E)` is a member implicitly.
//!
//! The window form makes the colon-style difference
//! `E - F = {z : z + F ⊆ E}` a finite computation: every `z > F(E) - m(F)`
//! belongs to the difference, and inside the window the tail of `F` forces
//! `z >= F(E) - F(F)`.
//!
//! Ideals carry a shared handle to their base semigroup. Operations on ideals
//! over different bases are rejected; moving an ideal to a larger base is the
//! explicit [`RelativeIdeal::rebase`] step.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::semigroup::{parse_int_list, NumericalSemigroup};
use crate::Error;

/// A relative ideal of a numerical semigroup, in windowed normal form.
///
/// Equality is set equality over the same base (no implicit shift
/// identification); use [`RelativeIdeal::is_shift_of`] for equality up to
/// translation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelativeIdeal {
    base: Arc<NumericalSemigroup>,
    min_element: i64,
    frobenius: i64,
    window: Vec<i64>,
}

impl RelativeIdeal {
    /// Normalizes a dense table into window form. The table covers
    /// `[lo, lo + table.len())` and every integer at or beyond the end of the
    /// table is promised to be a member.
    pub(crate) fn from_table(base: Arc<NumericalSemigroup>, lo: i64, table: Vec<bool>) -> Self {
        let end = lo + table.len() as i64;
        let min_element = table
            .iter()
            .position(|&b| b)
            .map(|i| lo + i as i64)
            .unwrap_or(end);
        let frobenius = table
            .iter()
            .rposition(|&b| !b)
            .map(|i| lo + i as i64)
            .unwrap_or(lo - 1)
            .max(min_element - 1);
        let window = (min_element..=frobenius)
            .filter(|&n| table[(n - lo) as usize])
            .collect();
        let ideal = RelativeIdeal {
            base,
            min_element,
            frobenius,
            window,
        };
        debug_assert!(ideal.is_valid(), "not an ideal: {:?}", ideal);
        ideal
    }

    /// The ideal generated by `gens` over `base`: the union of `g + S`.
    pub fn from_generators(
        base: Arc<NumericalSemigroup>,
        gens: &[i64],
    ) -> Result<Self, Error> {
        if gens.is_empty() {
            return Err(Error::EmptyIdealGenerators);
        }
        let lo = *gens.iter().min().unwrap();
        let hi = *gens.iter().max().unwrap() + base.conductor();
        let mut table = vec![false; (hi - lo) as usize];
        for &g in gens {
            for n in g..hi {
                if base.contains(n - g) {
                    table[(n - lo) as usize] = true;
                }
            }
        }
        Ok(Self::from_table(base, lo, table))
    }

    /// The principal ideal `g + S`.
    pub fn principal(base: &Arc<NumericalSemigroup>, g: i64) -> Self {
        let table = (0..base.conductor()).map(|n| base.contains(n)).collect();
        Self::from_table(base.clone(), g, table)
    }

    /// The maximal ideal `M = S ∖ {0}`.
    pub fn maximal(base: &Arc<NumericalSemigroup>) -> Self {
        let table = (1..base.conductor()).map(|n| base.contains(n)).collect();
        Self::from_table(base.clone(), 1, table)
    }

    /// The standard canonical ideal `K(S) = {z ∈ ℕ : F(S) - z ∉ S}`.
    ///
    /// Satisfies `F(K) = F(S)` and `S ⊆ K ⊆ ℕ`; equals `S` exactly when `S`
    /// is symmetric. For ℕ it is ℕ itself.
    pub fn canonical(base: &Arc<NumericalSemigroup>) -> Self {
        let f = base.frobenius();
        let table = (0..=f).map(|z| !base.contains(f - z)).collect();
        Self::from_table(base.clone(), 0, table)
    }

    pub fn base(&self) -> &NumericalSemigroup {
        &self.base
    }

    pub fn base_handle(&self) -> &Arc<NumericalSemigroup> {
        &self.base
    }

    /// Least element `m(E)`.
    pub fn min_element(&self) -> i64 {
        self.min_element
    }

    /// `F(E) = max(ℤ ∖ E)`; equals `m(E) - 1` when `E = [m(E), ∞)`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// The members of `E` in `[m(E), F(E)]`.
    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn contains(&self, n: i64) -> bool {
        n > self.frobenius || self.window.binary_search(&n).is_ok()
    }

    /// Members of `E` up to and including `hi`.
    fn elements_up_to(&self, hi: i64) -> impl Iterator<Item = i64> + '_ {
        self.window
            .iter()
            .copied()
            .filter(move |&e| e <= hi)
            .chain((self.frobenius + 1)..=hi)
    }

    fn check_same_base(&self, other: &RelativeIdeal) -> Result<(), Error> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    /// Minkowski sum `E + F = {e + f}`.
    ///
    /// The complement of the sum lies in `[m(E)+m(F), F(E)+F(F)+1]`.
    pub fn add(&self, other: &RelativeIdeal) -> Result<RelativeIdeal, Error> {
        self.check_same_base(other)?;
        let lo = self.min_element + other.min_element;
        let hi = self.frobenius + other.frobenius + 1;
        let mut table = vec![false; (hi - lo + 1).max(0) as usize];
        for e in self.elements_up_to(hi - other.min_element) {
            for f in other.elements_up_to(hi - e) {
                table[(e + f - lo) as usize] = true;
            }
        }
        Ok(Self::from_table(self.base.clone(), lo, table))
    }

    /// Difference `E - F = {z ∈ ℤ : z + F ⊆ E}`.
    ///
    /// Decided over the window `[m(E)-m(F), F(E)-m(F)]`: any larger `z` pushes
    /// all of `z + F` past `F(E)`, and the infinite tail of `F` rules out
    /// every `z < F(E) - F(F)`.
    pub fn diff(&self, other: &RelativeIdeal) -> Result<RelativeIdeal, Error> {
        self.check_same_base(other)?;
        let lo = self.min_element - other.min_element;
        let hi = self.frobenius - other.min_element;
        let tail_bound = self.frobenius - other.frobenius;
        let mut table = vec![false; (hi - lo + 1).max(0) as usize];
        for z in lo..=hi {
            if z >= tail_bound && other.window.iter().all(|&f| self.contains(z + f)) {
                table[(z - lo) as usize] = true;
            }
        }
        Ok(Self::from_table(self.base.clone(), lo, table))
    }

    /// The translate `d + E`.
    pub fn shifted(&self, d: i64) -> RelativeIdeal {
        RelativeIdeal {
            base: self.base.clone(),
            min_element: self.min_element + d,
            frobenius: self.frobenius + d,
            window: self.window.iter().map(|&e| e + d).collect(),
        }
    }

    /// The unique translate of `E` whose Frobenius number is `F(S)`.
    pub fn normalized(&self) -> RelativeIdeal {
        self.shifted(self.base.frobenius() - self.frobenius)
    }

    /// Set containment `other ⊆ self` (bases are not compared).
    pub fn contains_ideal(&self, other: &RelativeIdeal) -> bool {
        other.frobenius >= self.frobenius && other.window.iter().all(|&e| self.contains(e))
    }

    /// `|self ∖ sub|`; errors unless `sub ⊆ self`.
    pub fn card_diff(&self, sub: &RelativeIdeal) -> Result<i64, Error> {
        self.check_same_base(sub)?;
        if !self.contains_ideal(sub) {
            return Err(Error::NotContained);
        }
        Ok(self
            .elements_up_to(sub.frobenius)
            .filter(|&e| !sub.contains(e))
            .count() as i64)
    }

    /// The type `t(E) = |(E - M) ∖ E|`; always at least 1 and invariant
    /// under translation.
    pub fn ideal_type(&self) -> i64 {
        let m = RelativeIdeal::maximal(&self.base);
        let socle = self.diff(&m).expect("same base");
        socle.card_diff(self).expect("E is contained in E - M")
    }

    /// The minimal generators of `E` over `S`, i.e. `E ∖ (E + M)`.
    pub fn generators(&self) -> Vec<i64> {
        let e = self.base.multiplicity();
        self.elements_up_to(self.frobenius + e)
            .filter(|&x| {
                !(e..=x - self.min_element)
                    .any(|s| self.base.contains(s) && self.contains(x - s))
            })
            .collect()
    }

    /// Whether `self = d + other` for some integer `d`.
    pub fn is_shift_of(&self, other: &RelativeIdeal) -> bool {
        if self.base != other.base {
            return false;
        }
        let d = self.min_element - other.min_element;
        self.frobenius == other.frobenius + d
            && self.window.len() == other.window.len()
            && self
                .window
                .iter()
                .zip(&other.window)
                .all(|(&a, &b)| a == b + d)
    }

    /// Reinterprets the ideal over a larger semigroup `T ⊇ S`, after checking
    /// that `E + T ⊆ E`. The element set is unchanged.
    pub fn rebase(&self, new_base: &Arc<NumericalSemigroup>) -> Result<RelativeIdeal, Error> {
        let extends = self
            .base
            .min_generators()
            .iter()
            .all(|&g| new_base.contains(g));
        let stable = new_base
            .min_generators()
            .iter()
            .all(|&g| self.window.iter().all(|&w| self.contains(w + g)));
        if !extends || !stable {
            return Err(Error::RebaseIncompatible);
        }
        Ok(RelativeIdeal {
            base: new_base.clone(),
            min_element: self.min_element,
            frobenius: self.frobenius,
            window: self.window.clone(),
        })
    }

    /// Structural sanity: window sorted inside `[m, F]`, endpoints right, and
    /// the window closed under adding base generators.
    pub fn is_valid(&self) -> bool {
        let endpoints_ok = if self.window.is_empty() {
            self.frobenius == self.min_element - 1
        } else {
            self.window.first() == Some(&self.min_element)
                && self.window.windows(2).all(|w| w[0] < w[1])
                && *self.window.last().unwrap() < self.frobenius
        };
        endpoints_ok
            && self.window.iter().all(|&w| {
                self.base
                    .min_generators()
                    .iter()
                    .all(|&g| self.contains(w + g))
            })
    }
}

impl fmt::Display for RelativeIdeal {
    /// Text encoding `gens @ base`, e.g. `0,1,3 @ 6,7,9,17`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        let mut first = true;
        for g in gens {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", g)?;
            first = false;
        }
        write!(f, " @ {}", self.base)
    }
}

impl fmt::Debug for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RelativeIdeal(m={}, F={}, window={:?} @ {})",
            self.min_element, self.frobenius, self.window, self.base
        )
    }
}

impl FromStr for RelativeIdeal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (gens, base) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse("expected `gens @ generators` form".into()))?;
        let base: NumericalSemigroup = base.trim().parse()?;
        RelativeIdeal::from_generators(Arc::new(base), &parse_int_list(gens.trim())?)
    }
}

impl Serialize for RelativeIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
