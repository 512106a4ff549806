//! Exhaustive lists of actions, relaxations, relaxed actions and factor
//! systems between two small monoids.
//!
//! Relaxed data is listed with every value replaced by its class
//! representative, so each class appears exactly once.

use itertools::Itertools;

use crate::congruence::{check_congruence, Congruence};
use crate::iso::all_homs;
use crate::monoid::{FiniteMonoid, MonoidRef};
use crate::relaxed::{check_compatible_action, check_relaxation, check_ws_factor_system, Relaxation, RelaxedAction, WSFactorSystem};
use crate::strict::{check_action, check_factor_system, Action, FactorSystem};

/// Restricted growth strings of length `n`: every set partition once.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max.min(n) {
            cur.push(c);
            go(i + 1, n, if c == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `N` closed under left multiplication.
pub fn left_congruences(n: &FiniteMonoid) -> Vec<Vec<usize>> {
    set_partitions(n.size())
        .into_iter()
        .filter(|p| {
            n.elements().all(|a| {
                n.elements()
                    .filter(|&b| p[a] == p[b])
                    .all(|b| n.elements().all(|x| p[n.mul(x, a)] == p[n.mul(x, b)]))
            })
        })
        .collect()
}

/// Two-sided congruences of `N`.
pub fn congruences(n: &FiniteMonoid) -> Vec<Vec<usize>> {
    set_partitions(n.size())
        .into_iter()
        .filter(|p| check_congruence(n, &Congruence::from_labels(p)).is_ok())
        .collect()
}

/// Every action of `h` on `n`, in lexicographic order of the table.
pub fn enumerate_actions(h: &MonoidRef, n: &MonoidRef) -> Vec<Action> {
    let ends = all_homs(n, n);
    let id_row: Vec<usize> = n.elements().collect();
    let rows: Vec<Vec<Vec<usize>>> =
        h.elements().map(|x| if x == h.identity() { vec![id_row.clone()] } else { ends.clone() }).collect();
    rows.into_iter()
        .multi_cartesian_product()
        .map(|r| r.concat())
        .filter(|alpha| check_action(h, n, alpha).is_ok())
        .map(|alpha| Action { quotient: h.clone(), kernel: n.clone(), alpha })
        .collect()
}

/// Families of left-congruence partitions with equality over `1`; when
/// `monotone`, only those passing every relaxation condition.
fn partition_families(h: &MonoidRef, n: &MonoidRef, monotone: bool) -> Vec<Relaxation> {
    let lc = left_congruences(n);
    let eq: Vec<usize> = n.elements().collect();
    h.elements()
        .map(|x| if x == h.identity() { vec![eq.clone()] } else { lc.clone() })
        .multi_cartesian_product()
        .map(|labels| Relaxation::from_labels(h.clone(), n.clone(), &labels).expect("shapes match"))
        .filter(|r| !monotone || check_relaxation(r).is_ok())
        .collect()
}

pub fn enumerate_relaxations(h: &MonoidRef, n: &MonoidRef) -> Vec<Relaxation> {
    partition_families(h, n, true)
}

/// Sorted class representatives over `x`.
fn reps(r: &Relaxation, x: usize) -> Vec<usize> {
    (0..r.class_count(x)).map(|c| r.representative(x, c)).sorted().collect()
}

/// Tables `alpha` with `alpha(1, n) = n` and every other value a class
/// representative over its `h`.
fn canonical_alphas(r: &Relaxation) -> Vec<Vec<usize>> {
    let (h, n) = (&*r.quotient, &*r.kernel);
    h.elements()
        .flat_map(|x| {
            n.elements().map(move |m| if x == h.identity() { vec![m] } else { reps(r, x) })
        })
        .multi_cartesian_product()
        .collect()
}

/// Every relaxed action `(E, [alpha])`, one representative per class.
pub fn enumerate_relaxed_actions(h: &MonoidRef, n: &MonoidRef) -> Vec<RelaxedAction> {
    let mut out = Vec::new();
    for r in enumerate_relaxations(h, n) {
        for alpha in canonical_alphas(&r) {
            if check_compatible_action(&r, &alpha).is_ok() {
                out.push(RelaxedAction { relaxation: r.clone(), alpha });
            }
        }
    }
    out
}

/// Normalized `chi` tables with values drawn per entry from `values(h1 h2)`.
fn chis(h: &FiniteMonoid, n: &FiniteMonoid, values: &dyn Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let one = h.identity();
    h.elements()
        .flat_map(|x| h.elements().map(move |y| (x, y)))
        .map(|(x, y)| if x == one || y == one { vec![n.identity()] } else { values(h.mul(x, y)) })
        .multi_cartesian_product()
        .collect()
}

/// Every strict factor system `(alpha, chi)`; `alpha` need not be an action.
pub fn enumerate_factor_systems(h: &MonoidRef, n: &MonoidRef) -> Vec<FactorSystem> {
    let maps: Vec<Vec<usize>> = all_homs(n, n);
    let id_row: Vec<usize> = n.elements().collect();
    let alphas: Vec<Vec<usize>> = h
        .elements()
        .map(|x| if x == h.identity() { vec![id_row.clone()] } else { maps.clone() })
        .multi_cartesian_product()
        .map(|r| r.concat())
        .collect();
    let all: Vec<usize> = n.elements().collect();
    let chi_list = chis(h, n, &|_| all.clone());
    let mut out = Vec::new();
    for alpha in alphas {
        for chi in &chi_list {
            let fs = FactorSystem { quotient: h.clone(), kernel: n.clone(), alpha: alpha.clone(), chi: chi.clone() };
            if check_factor_system(&fs).is_ok() {
                out.push(fs);
            }
        }
    }
    out
}

/// The conditions of a weakly Schreier factor system that involve `alpha`
/// alone: right translation by values of `alpha`, the endomorphism law and
/// `alpha(h, 1) ~^h 1`.
fn alpha_only_ok(r: &Relaxation, alpha: &[usize]) -> bool {
    let (h, n) = (&*r.quotient, &*r.kernel);
    let ns = n.size();
    let a = |x: usize, m: usize| alpha[x * ns + m];
    h.elements().all(|x| {
        r.related(x, a(x, n.identity()), n.identity())
            && n.elements().all(|m1| {
                n.elements().all(|m2| {
                    r.related(x, a(x, n.mul(m1, m2)), n.mul(a(x, m1), a(x, m2)))
                        && (!r.related(x, m1, m2)
                            || n.elements().all(|m| r.related(x, n.mul(m1, a(x, m)), n.mul(m2, a(x, m)))))
                })
            })
    })
}

/// Every weakly Schreier factor system `(E, alpha, chi)` with `alpha` and
/// `chi` valued in class representatives.
pub fn enumerate_ws_factor_systems(h: &MonoidRef, n: &MonoidRef) -> Vec<WSFactorSystem> {
    let mut out = Vec::new();
    for r in partition_families(h, n, false) {
        let chi_list = chis(h, n, &|x| reps(&r, x));
        for alpha in canonical_alphas(&r) {
            if !alpha_only_ok(&r, &alpha) {
                continue;
            }
            for chi in &chi_list {
                let fs = WSFactorSystem { relaxation: r.clone(), alpha: alpha.clone(), chi: chi.clone() };
                if check_ws_factor_system(&fs).is_ok() {
                    out.push(fs);
                }
            }
        }
    }
    out
}
