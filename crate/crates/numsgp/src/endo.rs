//! The endomorphism semigroup `T = M - M` and the checks tying a semigroup
//! to it.
//!
//! `T` is the set of integers that map the maximal ideal `M` into itself; it
//! is again a numerical semigroup containing `S`. The central executable
//! facts, each expected to hold for every numerical semigroup, are:
//!
//! - `Ω = (K(S) - T) - e`, viewed over `T`, is a translate of the standard
//!   canonical ideal of `T` and sits between `T` and ℕ;
//! - `S` is almost symmetric iff `Ω = M - e`, iff `M` over `T` is a translate
//!   of `K(T)`; and `T` is symmetric iff `S` is almost symmetric with maximal
//!   embedding dimension;
//! - `S` is GAS iff `M` is an almost canonical ideal of `T` (the main
//!   equivalence);
//! - almost symmetry of `T` forces `S` to be GAS, and is equivalent to it
//!   when `S` has maximal embedding dimension;
//! - under maximal embedding dimension, `S` is 2-AGL iff it is GAS but not
//!   almost symmetric.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::classify;
use crate::ideal::RelativeIdeal;
use crate::semigroup::NumericalSemigroup;
use crate::Error;

/// The semigroup `T = M - M`, always containing `S` and equal to ℕ exactly
/// when `M - e` is all of ℕ.
pub fn endomorphism_semigroup(s: &Arc<NumericalSemigroup>) -> NumericalSemigroup {
    let m = RelativeIdeal::maximal(s);
    let t = m.diff(&m).expect("same base");
    debug_assert_eq!(t.min_element(), 0);
    let table = (0..=t.frobenius()).map(|n| t.contains(n)).collect();
    NumericalSemigroup::from_membership(table)
}

/// `M - M` kept as a relative ideal over `S` itself.
fn endomorphism_ideal(s: &Arc<NumericalSemigroup>) -> RelativeIdeal {
    let m = RelativeIdeal::maximal(s);
    m.diff(&m).expect("same base")
}

/// The canonical ideal of `T` induced from `S`: `Ω = (K(S) - T) - e`,
/// rebased over `T`. Not defined for `S = ℕ`.
pub fn endo_canonical_ideal(s: &Arc<NumericalSemigroup>) -> Result<RelativeIdeal, Error> {
    if s.is_natural() {
        return Err(Error::FullSemigroup);
    }
    let t = Arc::new(endomorphism_semigroup(s));
    Ok(endo_canonical_over(s, &t))
}

fn endo_canonical_over(
    s: &Arc<NumericalSemigroup>,
    t: &Arc<NumericalSemigroup>,
) -> RelativeIdeal {
    let k = RelativeIdeal::canonical(s);
    k.diff(&endomorphism_ideal(s))
        .expect("same base")
        .shifted(-s.multiplicity())
        .rebase(t)
        .expect("omega is stable under T")
}

/// Named verdicts of the endomorphism-side checks; every field is expected
/// to be `true` on every numerical semigroup.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EndoVerdicts {
    /// `T ⊆ Ω ⊆ ℕ` and `Ω` normalizes to `K(T)` (vacuous for ℕ).
    pub canonical_postconditions: bool,
    /// Almost symmetry of `S` is equivalent to `Ω = M - e` (vacuous for ℕ).
    pub almost_symmetric_part1: bool,
    /// Almost symmetry of `S` is equivalent to `M` over `T` being a translate of `K(T)`.
    pub almost_symmetric_part2: bool,
    /// `T` symmetric is equivalent to `S` almost symmetric with maximal embedding dimension.
    pub symmetric_endo_part3: bool,
    /// `S` GAS is equivalent to `M` almost canonical over `T`.
    pub main_theorem: bool,
    /// AS(T) implies GAS(S); under maximal embedding dimension they agree.
    pub final_corollary: bool,
    /// Under maximal embedding dimension, 2-AGL(S) is GAS(S) and not AS(S).
    pub two_agl_under_med: bool,
}

impl EndoVerdicts {
    pub fn all_hold(&self) -> bool {
        self.canonical_postconditions
            && self.almost_symmetric_part1
            && self.almost_symmetric_part2
            && self.symmetric_endo_part3
            && self.main_theorem
            && self.final_corollary
            && self.two_agl_under_med
    }
}

/// Everything the endomorphism side knows about one semigroup.
#[derive(Clone, Debug)]
pub struct EndoReport {
    pub semigroup: Arc<NumericalSemigroup>,
    pub t: Arc<NumericalSemigroup>,
    /// The maximal ideal of `T`, over `T`.
    pub n: RelativeIdeal,
    /// `Ω` over `T`; `None` exactly for `S = ℕ`.
    pub omega: Option<RelativeIdeal>,
    pub symmetric_t: bool,
    pub almost_symmetric_t: bool,
    pub verdicts: EndoVerdicts,
}

pub fn endo_report(s: &Arc<NumericalSemigroup>) -> EndoReport {
    let t = Arc::new(endomorphism_semigroup(s));
    let n = RelativeIdeal::maximal(&t);
    let symmetric_t = classify::is_symmetric(&t);
    let almost_symmetric_t = classify::is_almost_symmetric(&t);
    let as_s = classify::is_almost_symmetric(s);
    let gas = classify::is_gas(s);
    let med = s.is_med();

    let m_over_t = RelativeIdeal::maximal(s)
        .rebase(&t)
        .expect("M is stable under T");

    let (omega, canonical_postconditions, almost_symmetric_part1) = if s.is_natural() {
        (None, true, true)
    } else {
        let omega = endo_canonical_over(s, &t);
        let whole_t = RelativeIdeal::principal(&t, 0);
        let post = omega.contains_ideal(&whole_t)
            && omega.min_element() >= 0
            && omega.normalized() == RelativeIdeal::canonical(&t);
        let m_shifted = RelativeIdeal::maximal(s)
            .shifted(-s.multiplicity())
            .rebase(&t)
            .expect("M - e is stable under T");
        let part1 = as_s == (omega == m_shifted);
        (Some(omega), post, part1)
    };

    let almost_symmetric_part2 =
        as_s == m_over_t.is_shift_of(&RelativeIdeal::canonical(&t));
    let symmetric_endo_part3 = symmetric_t == (as_s && med);
    let main_theorem = gas == classify::is_almost_canonical(&m_over_t);
    let final_corollary = (!almost_symmetric_t || gas) && (!med || (almost_symmetric_t == gas));
    let two_agl_under_med = !med || (classify::is_two_agl(s) == (gas && !as_s));

    EndoReport {
        semigroup: s.clone(),
        t,
        n,
        omega,
        symmetric_t,
        almost_symmetric_t,
        verdicts: EndoVerdicts {
            canonical_postconditions,
            almost_symmetric_part1,
            almost_symmetric_part2,
            symmetric_endo_part3,
            main_theorem,
            final_corollary,
            two_agl_under_med,
        },
    }
}

/// The three equivalences about `Ω` and `T`, as one tuple.
pub fn check_almost_symmetric_endo(s: &Arc<NumericalSemigroup>) -> (bool, bool, bool) {
    let v = endo_report(s).verdicts;
    (
        v.almost_symmetric_part1,
        v.almost_symmetric_part2,
        v.symmetric_endo_part3,
    )
}

/// GAS(S) is equivalent to `M` being almost canonical over `T`.
pub fn check_main_theorem(s: &Arc<NumericalSemigroup>) -> bool {
    endo_report(s).verdicts.main_theorem
}

/// AS(T) implies GAS(S), with the converse under maximal embedding dimension.
pub fn check_final_corollary(s: &Arc<NumericalSemigroup>) -> bool {
    endo_report(s).verdicts.final_corollary
}

/// Under maximal embedding dimension, 2-AGL is GAS minus almost symmetry.
pub fn check_two_agl_under_med(s: &Arc<NumericalSemigroup>) -> bool {
    endo_report(s).verdicts.two_agl_under_med
}

impl Serialize for EndoReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("EndoReport", 7)?;
        st.serialize_field("semigroup", &self.semigroup.to_string())?;
        st.serialize_field("t", &self.t.to_string())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("omega", &self.omega)?;
        st.serialize_field("symmetric_t", &self.symmetric_t)?;
        st.serialize_field("almost_symmetric_t", &self.almost_symmetric_t)?;
        st.serialize_field("verdicts", &self.verdicts)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sgp(gens: &[i64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::from_generators(gens).unwrap())
    }

    #[test]
    fn endomorphism_semigroup_examples() {
        assert_eq!(
            endomorphism_semigroup(&sgp(&[5, 6, 9, 13])).min_generators(),
            &[4, 5, 6, 7]
        );
        assert_eq!(
            endomorphism_semigroup(&sgp(&[6, 7, 15, 17])).min_generators(),
            &[6, 7, 8, 11]
        );
        assert!(endomorphism_semigroup(&sgp(&[3, 4, 5])).is_natural());
        assert!(endomorphism_semigroup(&sgp(&[1])).is_natural());
        assert_eq!(
            endomorphism_semigroup(&sgp(&[6, 7, 9, 17])).min_generators(),
            &[6, 7, 8, 9, 10, 11]
        );
    }

    #[test]
    fn genus_never_grows() {
        for gens in [&[2, 3][..], &[3, 5, 7], &[6, 7, 9, 17], &[4, 17, 18, 19]] {
            let s = sgp(gens);
            let t = endomorphism_semigroup(&s);
            assert!(t.genus() <= s.genus());
            // S sits inside T
            assert!(s.min_generators().iter().all(|&g| t.contains(g)));
        }
    }

    #[test]
    fn omega_of_flagship_example() {
        let s = sgp(&[6, 7, 9, 17]);
        let omega = endo_canonical_ideal(&s).unwrap();
        assert_eq!(omega.base().min_generators(), &[6, 7, 8, 9, 10, 11]);
        assert_eq!(omega.generators(), vec![0, 1, 2, 3, 4]);
        let t = Arc::new(endomorphism_semigroup(&s));
        assert_eq!(omega, RelativeIdeal::canonical(&t));
    }

    #[test]
    fn omega_undefined_for_naturals() {
        assert!(matches!(
            endo_canonical_ideal(&sgp(&[1])),
            Err(Error::FullSemigroup)
        ));
    }

    #[test]
    fn omega_tracks_almost_symmetry() {
        // Almost symmetric with maximal embedding dimension: T is symmetric.
        let s = sgp(&[3, 5, 7]);
        let (p1, p2, p3) = check_almost_symmetric_endo(&s);
        assert!(p1 && p2 && p3);
        let t = Arc::new(endomorphism_semigroup(&s));
        assert!(classify::is_symmetric(&t));

        // GAS but not almost symmetric: T is almost symmetric, not symmetric.
        let s = sgp(&[5, 6, 9, 13]);
        let (p1, p2, p3) = check_almost_symmetric_endo(&s);
        assert!(p1 && p2 && p3);
        let r = endo_report(&s);
        assert!(r.almost_symmetric_t && !r.symmetric_t);

        let (p1, p2, p3) = check_almost_symmetric_endo(&sgp(&[2, 3]));
        assert!(p1 && p2 && p3);
    }

    #[test]
    fn main_theorem_examples() {
        // both sides true
        let s = sgp(&[6, 7, 9, 17]);
        assert!(check_main_theorem(&s));
        let t = Arc::new(endomorphism_semigroup(&s));
        let m_over_t = RelativeIdeal::maximal(&s).rebase(&t).unwrap();
        assert!(classify::is_gas(&s));
        assert!(classify::is_almost_canonical(&m_over_t));

        // both sides false
        let s = sgp(&[4, 17, 18, 19]);
        assert!(check_main_theorem(&s));
        let t = Arc::new(endomorphism_semigroup(&s));
        let m_over_t = RelativeIdeal::maximal(&s).rebase(&t).unwrap();
        assert!(!classify::is_gas(&s));
        assert!(!classify::is_almost_canonical(&m_over_t));

        assert!(check_main_theorem(&sgp(&[1])));
    }

    #[test]
    fn final_corollary_examples() {
        // strictness witness: GAS without AS(T), possible without MED
        let s = sgp(&[6, 7, 15, 17]);
        assert!(check_final_corollary(&s));
        let r = endo_report(&s);
        assert!(classify::is_gas(&s) && !r.almost_symmetric_t && !s.is_med());

        // AS(T) without MED(S)
        let s = sgp(&[5, 6, 9, 13]);
        assert!(check_final_corollary(&s));
        assert!(endo_report(&s).almost_symmetric_t && !s.is_med());

        assert!(check_final_corollary(&sgp(&[3, 5, 7])));
    }

    #[test]
    fn two_agl_under_med_examples() {
        assert!(check_two_agl_under_med(&sgp(&[3, 5, 7])));
        assert!(check_two_agl_under_med(&sgp(&[6, 7, 9, 17])));
        assert!(check_two_agl_under_med(&sgp(&[1])));
    }

    #[test]
    fn med_transfer() {
        // MED(S) exactly when T equals M - e as a set.
        for gens in [&[3, 5, 7][..], &[2, 3], &[6, 7, 9, 17], &[5, 6, 9, 13]] {
            let s = sgp(gens);
            let t_ideal = endomorphism_ideal(&s);
            let shifted = RelativeIdeal::maximal(&s).shifted(-s.multiplicity());
            assert_eq!(s.is_med(), t_ideal == shifted, "on {}", s);
        }
    }

    #[test]
    fn report_serializes() {
        let r = endo_report(&sgp(&[6, 7, 9, 17]));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["t"], "6,7,8,9,10,11");
        assert_eq!(v["omega"], "0,1,2,3,4 @ 6,7,8,9,10,11");
        assert_eq!(v["verdicts"]["main_theorem"], true);

        let r = endo_report(&sgp(&[1]));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["omega"], serde_json::Value::Null);
        assert!(r.verdicts.all_hold());
    }
}
