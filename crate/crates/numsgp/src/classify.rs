//! Classification predicates built on canonical-ideal duality.
//!
//! Each nontrivial predicate is computed along several independent routes and
//! the routes must agree: the redundancy turns the equivalences the routes
//! encode into executable checks. The `*_routes` functions expose the raw
//! per-route verdicts for the verification harness; the `is_*` wrappers
//! assert agreement and abort with a diagnostic on disagreement, which always
//! signals an implementation bug rather than a mathematical outcome.
//!
//! Conventions for ℕ (the semigroup of a discrete valuation ring): symmetric,
//! almost symmetric and GAS all hold, 2-AGL does not.

use std::sync::Arc;

use serde::Serialize;

use crate::ideal::RelativeIdeal;
use crate::semigroup::NumericalSemigroup;

/// Route names paired with verdicts; all verdicts of a sound build agree.
pub type Routes = Vec<(&'static str, bool)>;

fn routes_agree(routes: &Routes) -> bool {
    routes.iter().all(|r| r.1 == routes[0].1)
}

/// `S` is symmetric when its standard canonical ideal is `S` itself.
pub fn is_symmetric(s: &Arc<NumericalSemigroup>) -> bool {
    RelativeIdeal::canonical(s) == RelativeIdeal::principal(s, 0)
}

/// `K(S) ∪ {F(S)}` as a relative ideal. Only defined for `S ≠ ℕ`.
pub(crate) fn canonical_with_frobenius(s: &Arc<NumericalSemigroup>) -> RelativeIdeal {
    debug_assert!(!s.is_natural());
    let f = s.frobenius();
    let table = (0..=f).map(|z| z == f || !s.contains(f - z)).collect();
    RelativeIdeal::from_table(s.clone(), 0, table)
}

/// `|(K + K) ∖ K|`: zero exactly for symmetric semigroups, at most one
/// exactly for almost symmetric ones.
pub fn agl_length(s: &Arc<NumericalSemigroup>) -> i64 {
    let k = RelativeIdeal::canonical(s);
    let kk = k.add(&k).expect("same base");
    kk.card_diff(&k).expect("K is contained in K + K")
}

/// Whether `K + K = K + K + K`.
pub fn omega_stable(s: &Arc<NumericalSemigroup>) -> bool {
    let k = RelativeIdeal::canonical(s);
    let kk = k.add(&k).expect("same base");
    kk == kk.add(&k).expect("same base")
}

/// Per-route verdicts for almost symmetry:
/// `s_minus_m`: `S - M = K(S) ∪ {F(S)}`;
/// `m_plus_k`: `M + K ⊆ M`;
/// `agl_length`: `|(K+K) ∖ K| ≤ 1`.
pub fn almost_symmetric_routes(s: &Arc<NumericalSemigroup>) -> Routes {
    if s.is_natural() {
        return vec![("dvr_convention", true)];
    }
    let k = RelativeIdeal::canonical(s);
    let m = RelativeIdeal::maximal(s);
    let whole = RelativeIdeal::principal(s, 0);

    let socle = whole.diff(&m).expect("same base") == canonical_with_frobenius(s);
    let trace = m.contains_ideal(&m.add(&k).expect("same base"));
    let kk = k.add(&k).expect("same base");
    let short = kk.card_diff(&k).expect("K in K + K") <= 1;
    vec![
        ("s_minus_m", socle),
        ("m_plus_k", trace),
        ("agl_length", short),
    ]
}

pub fn is_almost_symmetric(s: &Arc<NumericalSemigroup>) -> bool {
    let routes = almost_symmetric_routes(s);
    assert!(
        routes_agree(&routes),
        "almost-symmetric routes disagree on {}: {:?}",
        s, routes
    );
    routes[0].1
}

/// The 2-AGL test: `K + K = K + K + K` with `|(K+K) ∖ K| = 2`.
pub fn is_two_agl(s: &Arc<NumericalSemigroup>) -> bool {
    omega_stable(s) && agl_length(s) == 2
}

/// Per-route verdicts for the GAS property:
/// `pairwise_differences`: `x - y` avoids the maximal ideal of `M - M` for
/// all `x, y ∈ M ∖ (S - K)`;
/// `colon_sandwich` (non-symmetric only): `2M ⊆ S - K ⊆ M` and the maximal
/// ideal of `M - M` sits inside `(S - K) - M`;
/// `triple_product`: `M + K + N ⊆ S` where `N` is the maximal ideal of
/// `M - M` viewed as an ideal of `S`.
pub fn gas_routes(s: &Arc<NumericalSemigroup>) -> Routes {
    if s.is_natural() {
        return vec![("dvr_convention", true)];
    }
    let k = RelativeIdeal::canonical(s);
    let m = RelativeIdeal::maximal(s);
    let whole = RelativeIdeal::principal(s, 0);
    let endo = m.diff(&m).expect("same base");
    let nonzero_endo = nonzero_part(&endo);
    let s_minus_k = whole.diff(&k).expect("same base");

    let leftovers: Vec<i64> = (m.min_element()..=s.frobenius())
        .filter(|&x| m.contains(x) && !s_minus_k.contains(x))
        .collect();
    let pairwise = leftovers.iter().all(|&x| {
        leftovers
            .iter()
            .all(|&y| x == y || !endo.contains(x - y))
    });

    let mut routes = vec![("pairwise_differences", pairwise)];
    if is_symmetric(s) {
        routes.push(("symmetric", true));
    } else {
        let mm = m.add(&m).expect("same base");
        let sandwich = s_minus_k.contains_ideal(&mm)
            && m.contains_ideal(&s_minus_k)
            && s_minus_k
                .diff(&m)
                .expect("same base")
                .contains_ideal(&nonzero_endo);
        routes.push(("colon_sandwich", sandwich));
    }
    let triple = whole.contains_ideal(
        &m.add(&k)
            .and_then(|mk| mk.add(&nonzero_endo))
            .expect("same base"),
    );
    routes.push(("triple_product", triple));
    routes
}

pub fn is_gas(s: &Arc<NumericalSemigroup>) -> bool {
    let routes = gas_routes(s);
    assert!(
        routes_agree(&routes),
        "GAS routes disagree on {}: {:?}",
        s, routes
    );
    routes[0].1
}

/// The nonzero part of an ideal that contains 0 and nothing negative
/// (used for the maximal ideal of `M - M` over the original base).
fn nonzero_part(e: &RelativeIdeal) -> RelativeIdeal {
    debug_assert_eq!(e.min_element(), 0);
    let table = (1..=e.frobenius()).map(|n| e.contains(n)).collect();
    RelativeIdeal::from_table(e.base_handle().clone(), 1, table)
}

/// Per-route verdicts for almost canonicity of an ideal `E` over its base:
/// `socle_dual`: `Ẽ - M = K ∪ {F(S)}`;
/// `endo_colon`: `K - (M - M) ⊆ Ẽ`;
/// `colon_match`: `K - M = Ẽ - M`;
/// `m_plus_k`: `M + K ⊆ Ẽ`.
///
/// Over ℕ every ideal is canonical, hence almost canonical.
pub fn almost_canonical_routes(e: &RelativeIdeal) -> Routes {
    let s = e.base_handle().clone();
    if s.is_natural() {
        return vec![("dvr_convention", true)];
    }
    let k = RelativeIdeal::canonical(&s);
    let m = RelativeIdeal::maximal(&s);
    let tilde = e.normalized();
    let endo = m.diff(&m).expect("same base");

    let socle = tilde.diff(&m).expect("same base") == canonical_with_frobenius(&s);
    let endo_colon = tilde.contains_ideal(&k.diff(&endo).expect("same base"));
    let colon_match =
        k.diff(&m).expect("same base") == tilde.diff(&m).expect("same base");
    let trace = tilde.contains_ideal(&m.add(&k).expect("same base"));
    vec![
        ("socle_dual", socle),
        ("endo_colon", endo_colon),
        ("colon_match", colon_match),
        ("m_plus_k", trace),
    ]
}

pub fn is_almost_canonical(e: &RelativeIdeal) -> bool {
    let routes = almost_canonical_routes(e);
    assert!(
        routes_agree(&routes),
        "almost-canonical routes disagree on {} over {}: {:?}",
        e,
        e.base(),
        routes
    );
    routes[0].1
}

/// All predicate verdicts and numeric invariants for one semigroup.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub semigroup: NumericalSemigroup,
    pub is_symmetric: bool,
    pub is_almost_symmetric: bool,
    pub is_gas: bool,
    pub is_med: bool,
    #[serde(rename = "is_2agl")]
    pub is_two_agl: bool,
    pub agl_length: i64,
    pub omega_stable: bool,
    #[serde(rename = "type")]
    pub semigroup_type: i64,
    pub genus: i64,
    pub frobenius: i64,
}

pub fn classify(s: &Arc<NumericalSemigroup>) -> ClassificationReport {
    let k = RelativeIdeal::canonical(s);
    let kk = k.add(&k).expect("same base");
    let agl = kk.card_diff(&k).expect("K in K + K");
    let stable = kk == kk.add(&k).expect("same base");
    ClassificationReport {
        semigroup: (**s).clone(),
        is_symmetric: is_symmetric(s),
        is_almost_symmetric: is_almost_symmetric(s),
        is_gas: is_gas(s),
        is_med: s.is_med(),
        is_two_agl: stable && agl == 2,
        agl_length: agl,
        omega_stable: stable,
        semigroup_type: s.semigroup_type(),
        genus: s.genus(),
        frobenius: s.frobenius(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sgp(gens: &[i64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::from_generators(gens).unwrap())
    }

    #[test]
    fn symmetric_examples() {
        assert!(is_symmetric(&sgp(&[2, 3])));
        assert!(is_symmetric(&sgp(&[4, 6, 7])));
        assert!(!is_symmetric(&sgp(&[3, 4, 5])));
        assert!(is_symmetric(&sgp(&[1])));
    }

    #[test]
    fn almost_symmetric_examples() {
        assert!(is_almost_symmetric(&sgp(&[3, 4, 5])));
        assert!(!is_almost_symmetric(&sgp(&[6, 7, 9, 17])));
        assert!(is_almost_symmetric(&sgp(&[1])));
        assert!(is_almost_symmetric(&sgp(&[2, 3])));
        assert!(!is_almost_symmetric(&sgp(&[5, 6, 9, 13])));
    }

    #[test]
    fn two_agl_examples() {
        assert!(is_two_agl(&sgp(&[6, 7, 15, 17])));
        assert!(!is_two_agl(&sgp(&[6, 7, 9, 17])));
        assert!(!is_two_agl(&sgp(&[2, 3])));
        assert!(!is_two_agl(&sgp(&[1])));
    }

    #[test]
    fn omega_powers() {
        let s = sgp(&[6, 7, 9, 17]);
        assert_eq!(agl_length(&s), 3);
        assert!(!omega_stable(&s));
        let s = sgp(&[6, 7, 15, 17]);
        assert_eq!(agl_length(&s), 2);
        assert!(omega_stable(&s));
    }

    #[test]
    fn gas_examples() {
        assert!(is_gas(&sgp(&[6, 7, 9, 17])));
        assert!(!is_gas(&sgp(&[4, 17, 18, 19])));
        assert!(is_gas(&sgp(&[5, 6, 9, 13])));
        assert!(is_gas(&sgp(&[1])));
        assert!(is_gas(&sgp(&[2, 3])));
    }

    #[test]
    fn almost_canonical_examples() {
        for gens in [&[2, 3][..], &[3, 4, 5], &[6, 7, 9, 17], &[5, 6, 9, 13]] {
            let s = sgp(gens);
            assert!(is_almost_canonical(&RelativeIdeal::canonical(&s)));
        }
        assert!(is_almost_canonical(&RelativeIdeal::principal(&sgp(&[3, 4, 5]), 0)));
        assert!(!is_almost_canonical(&RelativeIdeal::principal(
            &sgp(&[6, 7, 9, 17]),
            0
        )));
        // over ℕ everything is almost canonical
        let n = sgp(&[1]);
        assert!(is_almost_canonical(&RelativeIdeal::principal(&n, 4)));
    }

    #[test]
    fn report_is_consistent() {
        for gens in [
            &[1][..],
            &[2, 3],
            &[3, 4, 5],
            &[6, 7, 9, 17],
            &[6, 7, 15, 17],
            &[5, 6, 9, 13],
            &[4, 17, 18, 19],
        ] {
            let s = sgp(gens);
            let r = classify(&s);
            if r.is_symmetric {
                assert!(r.is_almost_symmetric);
            }
            if r.is_almost_symmetric {
                assert!(r.is_gas);
            }
            if r.is_two_agl {
                assert!(r.is_gas && !r.is_almost_symmetric);
            }
            assert_eq!(r.agl_length == 0, r.is_symmetric);
            assert_eq!(r.agl_length <= 1, r.is_almost_symmetric);
            assert_eq!(r.semigroup_type == 1, r.is_symmetric);
        }
    }

    #[test]
    fn report_serializes_flat() {
        let r = classify(&sgp(&[6, 7, 9, 17]));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["semigroup"], "6,7,9,17");
        assert_eq!(v["is_gas"], true);
        assert_eq!(v["is_2agl"], false);
        assert_eq!(v["agl_length"], 3);
        assert_eq!(v["type"], 3);
        assert_eq!(v["genus"], 8);
        assert_eq!(v["frobenius"], 11);
    }
}
