//! `H`-relaxations, relaxed actions, weakly Schreier factor systems and their
//! crossed products.
//!
//! A relaxed product lives on the disjoint union of `N / ~^h` over `h`,
//! listed `h` by `h`, with classes in order of first appearance. Under the
//! equality relaxation this is exactly the `h * |N| + n` layout used by
//! [`crate::strict`].

use serde::Serialize;

use crate::congruence::normalize_labels;
use crate::error::{Error, Result};
use crate::extension::{classify, is_extension_isomorphism, ExtensionDiagram};
use crate::monoid::{FiniteMonoid, MonoidRef};
use crate::strict::{gamma_candidates, Action, FactorSystem, GammaWitness};
use crate::violation::{Check, Violation};

/// One partition of `N` per element of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relaxation {
    pub quotient: MonoidRef,
    pub kernel: MonoidRef,
    classes: Vec<Vec<usize>>,
    counts: Vec<usize>,
}

impl Relaxation {
    /// Builds from arbitrary labels per `h` (renumbered by first appearance)
    /// without checking any of the relaxation conditions.
    pub fn from_labels(quotient: MonoidRef, kernel: MonoidRef, labels: &[Vec<usize>]) -> Result<Self> {
        if labels.len() != quotient.size() || labels.iter().any(|l| l.len() != kernel.size()) {
            return Err(Error::Shape(format!(
                "relaxation needs {} partitions of {} elements",
                quotient.size(),
                kernel.size()
            )));
        }
        let (classes, counts) = labels.iter().map(|l| normalize_labels(l)).unzip();
        Ok(Relaxation { quotient, kernel, classes, counts })
    }

    /// Like [`Relaxation::from_labels`], then checks [`check_relaxation`].
    pub fn new(quotient: MonoidRef, kernel: MonoidRef, labels: &[Vec<usize>]) -> Result<Self> {
        let r = Self::from_labels(quotient, kernel, labels)?;
        check_relaxation(&r).map_err(Error::InvalidRelaxation)?;
        Ok(r)
    }

    pub fn equality(quotient: MonoidRef, kernel: MonoidRef) -> Self {
        let ns = kernel.size();
        let classes = vec![(0..ns).collect(); quotient.size()];
        let counts = vec![ns; quotient.size()];
        Relaxation { quotient, kernel, classes, counts }
    }

    #[inline]
    pub fn related(&self, h: usize, a: usize, b: usize) -> bool {
        self.classes[h][a] == self.classes[h][b]
    }

    #[inline]
    pub fn class_of(&self, h: usize, n: usize) -> usize {
        self.classes[h][n]
    }

    pub fn class_count(&self, h: usize) -> usize {
        self.counts[h]
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Members of class `c` over `h`, ascending.
    pub fn members(&self, h: usize, c: usize) -> Vec<usize> {
        self.kernel.elements().filter(|&n| self.classes[h][n] == c).collect()
    }

    /// The identity if the class contains it, else its least element.
    pub fn representative(&self, h: usize, c: usize) -> usize {
        let one = self.kernel.identity();
        if self.classes[h][one] == c {
            one
        } else {
            self.kernel.elements().find(|&n| self.classes[h][n] == c).expect("class is inhabited")
        }
    }

    pub(crate) fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.counts
            .iter()
            .map(|&c| {
                let o = acc;
                acc += c;
                o
            })
            .collect()
    }

    /// Total number of classes, the size of the relaxed carrier.
    pub fn carrier_size(&self) -> usize {
        self.counts.iter().sum()
    }
}

fn shape(r: &Relaxation, alpha: &[usize], chi: Option<&[usize]>) -> Check {
    let (hs, ns) = (r.quotient.size(), r.kernel.size());
    let ok_a = alpha.len() == hs * ns && alpha.iter().all(|&x| x < ns);
    let ok_c = chi.is_none_or(|c| c.len() == hs * hs && c.iter().all(|&x| x < ns));
    if ok_a && ok_c {
        Ok(())
    } else {
        Err(Violation::new(0, "alpha is |H| x |N| and chi is |H| x |H| over N", vec![]))
    }
}

/// Conditions shared by relaxations and factor systems: equality at `1`
/// and left congruence.
fn check_left_partitions(r: &Relaxation) -> Check {
    let (h, n) = (&*r.quotient, &*r.kernel);
    if r.class_count(h.identity()) != n.size() {
        let (a, b) = pair_in_class(r, h.identity()).expect("a class has two members");
        return Err(Violation::new(1, "n1 ~^1 n2 implies n1 = n2", [a, b]));
    }
    for x in h.elements() {
        for a in n.elements() {
            for b in n.elements().filter(|&b| b > a && r.related(x, a, b)) {
                for m in n.elements() {
                    if !r.related(x, n.mul(m, a), n.mul(m, b)) {
                        return Err(Violation::new(2, "n1 ~^h n2 implies x n1 ~^h x n2", [x, a, b, m]));
                    }
                }
            }
        }
    }
    Ok(())
}

fn pair_in_class(r: &Relaxation, h: usize) -> Option<(usize, usize)> {
    let n = &*r.kernel;
    n.elements()
        .flat_map(|a| n.elements().filter(move |&b| b > a).map(move |b| (a, b)))
        .find(|&(a, b)| r.related(h, a, b))
}

/// Checks the three relaxation conditions:
///
/// 1. `n1 ~^1 n2` implies `n1 = n2`
/// 2. `n1 ~^h n2` implies `x n1 ~^h x n2`
/// 3. `n1 ~^h1 n2` implies `n1 ~^(h1 h2) n2`
pub fn check_relaxation(r: &Relaxation) -> Check {
    check_left_partitions(r)?;
    let (h, n) = (&*r.quotient, &*r.kernel);
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for a in n.elements() {
                for b in n.elements().filter(|&b| b > a && r.related(h1, a, b)) {
                    if !r.related(h12, a, b) {
                        return Err(Violation::new(
                            3,
                            "n1 ~^h1 n2 implies n1 ~^(h1 h2) n2",
                            [h1, h2, a, b],
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A compatible action over a relaxation, identified with every `alpha'`
/// satisfying `alpha'(h, n) ~^h alpha(h, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedAction {
    pub relaxation: Relaxation,
    pub alpha: Vec<usize>,
}

impl RelaxedAction {
    pub fn new(relaxation: Relaxation, alpha: Vec<usize>) -> Result<Self> {
        check_relaxation(&relaxation).map_err(Error::InvalidRelaxation)?;
        check_compatible_action(&relaxation, &alpha).map_err(Error::InvalidRelaxedAction)?;
        Ok(RelaxedAction { relaxation, alpha })
    }

    /// A strict action over the equality relaxation.
    pub fn from_action(action: &Action) -> Self {
        RelaxedAction {
            relaxation: Relaxation::equality(action.quotient.clone(), action.kernel.clone()),
            alpha: action.alpha.clone(),
        }
    }

    #[inline]
    pub fn get(&self, h: usize, n: usize) -> usize {
        self.alpha[h * self.relaxation.kernel.size() + n]
    }

    /// Replaces each `alpha(h, n)` by the representative of its `~^h` class.
    pub fn canonical(&self) -> Self {
        let r = &self.relaxation;
        let ns = r.kernel.size();
        let alpha = (0..self.alpha.len())
            .map(|i| {
                let h = i / ns;
                r.representative(h, r.class_of(h, self.alpha[i]))
            })
            .collect();
        RelaxedAction { relaxation: r.clone(), alpha }
    }
}

/// `alpha1(h, n) ~^h alpha2(h, n)` everywhere, over the same relaxation.
pub fn relaxed_actions_equal(a1: &RelaxedAction, a2: &RelaxedAction) -> bool {
    let r = &a1.relaxation;
    if *r != a2.relaxation || a1.alpha.len() != a2.alpha.len() {
        return false;
    }
    let ns = r.kernel.size();
    (0..a1.alpha.len()).all(|i| r.related(i / ns, a1.alpha[i], a2.alpha[i]))
}

/// Checks the six compatible-action conditions:
///
/// 1. `n1 ~^h n2` implies `n1 alpha(h, n) ~^h n2 alpha(h, n)`
/// 2. `n1 ~^h2 n2` implies `alpha(h1, n1) ~^(h1 h2) alpha(h1, n2)`
/// 3. `alpha(h, n1 n2) ~^h alpha(h, n1) alpha(h, n2)`
/// 4. `alpha(h1 h2, n) ~^(h1 h2) alpha(h1, alpha(h2, n))`
/// 5. `alpha(h, 1) ~^h 1`
/// 6. `alpha(1, n) ~^1 n`
pub fn check_compatible_action(r: &Relaxation, alpha: &[usize]) -> Check {
    shape(r, alpha, None)?;
    let (h, n) = (&*r.quotient, &*r.kernel);
    let ns = n.size();
    let a = |x: usize, m: usize| alpha[x * ns + m];
    for x in h.elements() {
        for n1 in n.elements() {
            for n2 in n.elements().filter(|&n2| n2 > n1 && r.related(x, n1, n2)) {
                for m in n.elements() {
                    if !r.related(x, n.mul(n1, a(x, m)), n.mul(n2, a(x, m))) {
                        return Err(Violation::new(
                            1,
                            "n1 ~^h n2 implies n1 alpha(h, n) ~^h n2 alpha(h, n)",
                            [x, n1, n2, m],
                        ));
                    }
                }
            }
        }
    }
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for n1 in n.elements() {
                for n2 in n.elements().filter(|&n2| n2 > n1 && r.related(h2, n1, n2)) {
                    if !r.related(h12, a(h1, n1), a(h1, n2)) {
                        return Err(Violation::new(
                            2,
                            "n1 ~^h2 n2 implies alpha(h1, n1) ~^(h1 h2) alpha(h1, n2)",
                            [h1, h2, n1, n2],
                        ));
                    }
                }
            }
        }
    }
    for x in h.elements() {
        for n1 in n.elements() {
            for n2 in n.elements() {
                if !r.related(x, a(x, n.mul(n1, n2)), n.mul(a(x, n1), a(x, n2))) {
                    return Err(Violation::new(
                        3,
                        "alpha(h, n1 n2) ~^h alpha(h, n1) alpha(h, n2)",
                        [x, n1, n2],
                    ));
                }
            }
        }
    }
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for m in n.elements() {
                if !r.related(h12, a(h12, m), a(h1, a(h2, m))) {
                    return Err(Violation::new(
                        4,
                        "alpha(h1 h2, n) ~^(h1 h2) alpha(h1, alpha(h2, n))",
                        [h1, h2, m],
                    ));
                }
            }
        }
    }
    for x in h.elements() {
        if !r.related(x, a(x, n.identity()), n.identity()) {
            return Err(Violation::new(5, "alpha(h, 1) ~^h 1", [x]));
        }
    }
    for m in n.elements() {
        if !r.related(h.identity(), a(h.identity(), m), m) {
            return Err(Violation::new(6, "alpha(1, n) ~^1 n", [m]));
        }
    }
    Ok(())
}

/// Builds `([n1], h1)([n2], h2) = ([n1 alpha(h1, n2) chi(h1, h2)], h1 h2)`,
/// checking that every choice of representatives gives the same class.
fn relaxed_product(r: &Relaxation, alpha: &[usize], chi: Option<&[usize]>) -> Result<ExtensionDiagram> {
    let (h, n) = (&r.quotient, &r.kernel);
    let (hs, ns) = (h.size(), n.size());
    let offsets = r.offsets();
    let size = r.carrier_size();
    let idx = |x: usize, m: usize| offsets[x] + r.class_of(x, m);
    let mut table = vec![usize::MAX; size * size];
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for n1 in n.elements() {
                for n2 in n.elements() {
                    let mut v = n.mul(n1, alpha[h1 * ns + n2]);
                    if let Some(chi) = chi {
                        v = n.mul(v, chi[h1 * hs + h2]);
                    }
                    let cell = &mut table[idx(h1, n1) * size + idx(h2, n2)];
                    let out = idx(h12, v);
                    if *cell == usize::MAX {
                        *cell = out;
                    } else if *cell != out {
                        return Err(Error::InvalidWSFactorSystem(Violation::new(
                            0,
                            "the product does not depend on class representatives",
                            [h1, n1, h2, n2],
                        )));
                    }
                }
            }
        }
    }
    let identity = idx(h.identity(), n.identity());
    let g = FiniteMonoid::from_flat(size, identity, table)?.shared();
    let k = n.elements().map(|m| idx(h.identity(), m)).collect();
    let mut e = Vec::with_capacity(size);
    for x in h.elements() {
        e.extend(std::iter::repeat_n(x, r.class_count(x)));
    }
    let s = chi.is_none().then(|| h.elements().map(|x| idx(x, n.identity())).collect());
    Ok(ExtensionDiagram::assemble(n.clone(), g, h.clone(), k, e, s))
}

/// The carrier element `([n], h)`.
pub fn relaxed_index(r: &Relaxation, h: usize, n: usize) -> usize {
    r.offsets()[h] + r.class_of(h, n)
}

/// Relaxed semidirect product with `k(n) = ([n], 1)`, `e([n], h) = h`, `s(h) = ([1], h)`.
pub fn relaxed_semidirect(action: &RelaxedAction) -> Result<ExtensionDiagram> {
    check_relaxation(&action.relaxation).map_err(Error::InvalidRelaxation)?;
    check_compatible_action(&action.relaxation, &action.alpha).map_err(Error::InvalidRelaxedAction)?;
    relaxed_product(&action.relaxation, &action.alpha, None)
}

/// Reads off `n1 ~^h n2 iff k(n1) s(h) = k(n2) s(h)` and the least `alpha(h, n)`
/// with `k(alpha(h, n)) s(h) = s(h) k(n)`.
pub fn extract_relaxed_action(d: &ExtensionDiagram) -> Result<RelaxedAction> {
    let class = classify(d)?;
    if class.is_weakly_schreier_split != Some(true) {
        return Err(Error::NotWeaklySchreierSplit);
    }
    let s = d.splitting().expect("split flag implies a splitting").to_vec();
    let (relaxation, alpha) = relaxation_and_alpha(d, &s);
    Ok(RelaxedAction { relaxation, alpha })
}

/// `E` and the least `alpha` read off an arbitrary unit-preserving section
/// `u` of `e`; `None` when some `u(h) k(n)` is not of the form `k(n') u(h)`.
pub fn relaxed_action_for_section(d: &ExtensionDiagram, u: &[usize]) -> Option<RelaxedAction> {
    let (h, n) = (d.quotient(), d.kernel());
    let covered = h.elements().all(|x| n.elements().all(|m| d.factorizations(d.g_mul(u[x], d.k(m)), u[x]).next().is_some()));
    if !covered {
        return None;
    }
    let (relaxation, alpha) = relaxation_and_alpha(d, u);
    Some(RelaxedAction { relaxation, alpha })
}

fn relaxation_and_alpha(d: &ExtensionDiagram, u: &[usize]) -> (Relaxation, Vec<usize>) {
    let (h, n) = (d.quotient(), d.kernel());
    let labels: Vec<Vec<usize>> =
        h.elements().map(|x| n.elements().map(|m| d.g_mul(d.k(m), u[x])).collect()).collect();
    let relaxation = Relaxation::from_labels(h.clone(), n.clone(), &labels).expect("shapes match");
    let mut alpha = Vec::with_capacity(h.size() * n.size());
    for x in h.elements() {
        for m in n.elements() {
            let target = d.g_mul(u[x], d.k(m));
            alpha.push(d.factorizations(target, u[x]).next().expect("weak generator"));
        }
    }
    (relaxation, alpha)
}

/// A triple `(E, alpha, chi)`; `E` need only satisfy the conditions of
/// [`check_ws_factor_system`], not the full relaxation axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSFactorSystem {
    pub relaxation: Relaxation,
    pub alpha: Vec<usize>,
    pub chi: Vec<usize>,
}

impl WSFactorSystem {
    pub fn new(relaxation: Relaxation, alpha: Vec<usize>, chi: Vec<usize>) -> Result<Self> {
        let fs = WSFactorSystem { relaxation, alpha, chi };
        check_ws_factor_system(&fs).map_err(Error::InvalidWSFactorSystem)?;
        Ok(fs)
    }

    /// `chi = 1`.
    pub fn from_relaxed_action(action: &RelaxedAction) -> Self {
        let hs = action.relaxation.quotient.size();
        WSFactorSystem {
            relaxation: action.relaxation.clone(),
            alpha: action.alpha.clone(),
            chi: vec![action.relaxation.kernel.identity(); hs * hs],
        }
    }

    /// The equality relaxation around a strict factor system.
    pub fn from_strict(fs: &FactorSystem) -> Self {
        WSFactorSystem {
            relaxation: Relaxation::equality(fs.quotient.clone(), fs.kernel.clone()),
            alpha: fs.alpha.clone(),
            chi: fs.chi.clone(),
        }
    }

    pub fn quotient(&self) -> &MonoidRef {
        &self.relaxation.quotient
    }

    pub fn kernel(&self) -> &MonoidRef {
        &self.relaxation.kernel
    }

    #[inline]
    pub fn alpha(&self, h: usize, n: usize) -> usize {
        self.alpha[h * self.relaxation.kernel.size() + n]
    }

    #[inline]
    pub fn chi(&self, h1: usize, h2: usize) -> usize {
        self.chi[h1 * self.relaxation.quotient.size() + h2]
    }
}

/// Checks the eleven factor-system conditions:
///
/// 1. `n1 ~^1 n2` implies `n1 = n2`
/// 2. `n1 ~^h n2` implies `x n1 ~^h x n2`
/// 3. `n1 ~^h1 n2` implies `n1 chi(h1, h2) ~^(h1 h2) n2 chi(h1, h2)`
/// 4. `n1 ~^h n2` implies `n1 alpha(h, n) ~^h n2 alpha(h, n)`
/// 5. `n1 ~^h2 n2` implies `alpha(h1, n1) chi(h1, h2) ~^(h1 h2) alpha(h1, n2) chi(h1, h2)`
/// 6. `alpha(h, n1 n2) ~^h alpha(h, n1) alpha(h, n2)`
/// 7. `chi(h1, h2) alpha(h1 h2, n) ~^(h1 h2) alpha(h1, alpha(h2, n)) chi(h1, h2)`
/// 8. `alpha(h, 1) ~^h 1`
/// 9. `alpha(1, n) ~^1 n`
/// 10. `chi(1, h) ~^h 1 ~^h chi(h, 1)`
/// 11. `chi(x, y) chi(xy, z) ~^(xyz) alpha(x, chi(y, z)) chi(x, yz)`
pub fn check_ws_factor_system(fs: &WSFactorSystem) -> Check {
    let r = &fs.relaxation;
    shape(r, &fs.alpha, Some(&fs.chi))?;
    check_left_partitions(r)?;
    let (h, n) = (&*r.quotient, &*r.kernel);
    let a = |x: usize, m: usize| fs.alpha(x, m);
    let c = |x: usize, y: usize| fs.chi(x, y);
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for n1 in n.elements() {
                for n2 in n.elements().filter(|&n2| n2 > n1 && r.related(h1, n1, n2)) {
                    if !r.related(h12, n.mul(n1, c(h1, h2)), n.mul(n2, c(h1, h2))) {
                        return Err(Violation::new(
                            3,
                            "n1 ~^h1 n2 implies n1 chi(h1, h2) ~^(h1 h2) n2 chi(h1, h2)",
                            [h1, h2, n1, n2],
                        ));
                    }
                }
            }
        }
    }
    for x in h.elements() {
        for n1 in n.elements() {
            for n2 in n.elements().filter(|&n2| n2 > n1 && r.related(x, n1, n2)) {
                for m in n.elements() {
                    if !r.related(x, n.mul(n1, a(x, m)), n.mul(n2, a(x, m))) {
                        return Err(Violation::new(
                            4,
                            "n1 ~^h n2 implies n1 alpha(h, n) ~^h n2 alpha(h, n)",
                            [x, n1, n2, m],
                        ));
                    }
                }
            }
        }
    }
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for n1 in n.elements() {
                for n2 in n.elements().filter(|&n2| n2 > n1 && r.related(h2, n1, n2)) {
                    if !r.related(h12, n.mul(a(h1, n1), c(h1, h2)), n.mul(a(h1, n2), c(h1, h2))) {
                        return Err(Violation::new(
                            5,
                            "n1 ~^h2 n2 implies alpha(h1, n1) chi(h1, h2) ~^(h1 h2) alpha(h1, n2) chi(h1, h2)",
                            [h1, h2, n1, n2],
                        ));
                    }
                }
            }
        }
    }
    for x in h.elements() {
        for n1 in n.elements() {
            for n2 in n.elements() {
                if !r.related(x, a(x, n.mul(n1, n2)), n.mul(a(x, n1), a(x, n2))) {
                    return Err(Violation::new(
                        6,
                        "alpha(h, n1 n2) ~^h alpha(h, n1) alpha(h, n2)",
                        [x, n1, n2],
                    ));
                }
            }
        }
    }
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for m in n.elements() {
                let lhs = n.mul(c(h1, h2), a(h12, m));
                let rhs = n.mul(a(h1, a(h2, m)), c(h1, h2));
                if !r.related(h12, lhs, rhs) {
                    return Err(Violation::new(
                        7,
                        "chi(h1, h2) alpha(h1 h2, n) ~^(h1 h2) alpha(h1, alpha(h2, n)) chi(h1, h2)",
                        [h1, h2, m],
                    ));
                }
            }
        }
    }
    for x in h.elements() {
        if !r.related(x, a(x, n.identity()), n.identity()) {
            return Err(Violation::new(8, "alpha(h, 1) ~^h 1", [x]));
        }
    }
    for m in n.elements() {
        if !r.related(h.identity(), a(h.identity(), m), m) {
            return Err(Violation::new(9, "alpha(1, n) ~^1 n", [m]));
        }
    }
    for x in h.elements() {
        let one = n.identity();
        if !r.related(x, c(h.identity(), x), one) || !r.related(x, c(x, h.identity()), one) {
            return Err(Violation::new(10, "chi(1, h) ~^h 1 ~^h chi(h, 1)", [x]));
        }
    }
    for x in h.elements() {
        for y in h.elements() {
            let xy = h.mul(x, y);
            for z in h.elements() {
                let xyz = h.mul(xy, z);
                let lhs = n.mul(c(x, y), c(xy, z));
                let rhs = n.mul(a(x, c(y, z)), c(x, h.mul(y, z)));
                if !r.related(xyz, lhs, rhs) {
                    return Err(Violation::new(
                        11,
                        "chi(x, y) chi(xy, z) ~^(xyz) alpha(x, chi(y, z)) chi(x, yz)",
                        [x, y, z],
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Relaxed crossed product with `k(n) = ([n], 1)` and `e([n], h) = h`.
pub fn relaxed_crossed_product(fs: &WSFactorSystem) -> Result<ExtensionDiagram> {
    check_ws_factor_system(fs).map_err(Error::InvalidWSFactorSystem)?;
    relaxed_product(&fs.relaxation, &fs.alpha, Some(&fs.chi))
}

/// Factor system of a weakly Schreier extension with respect to weak
/// generators `u_h` (default: smallest index per fiber, `u_1 = 1`).
///
/// `([n], h) -> k(n) u_h` is an isomorphism from the relaxed crossed product
/// of the result onto `d`.
pub fn extract_ws_factor_system(d: &ExtensionDiagram, generators: Option<&[usize]>) -> Result<WSFactorSystem> {
    let class = classify(d)?;
    if !class.is_weakly_schreier {
        return Err(Error::NotWeaklySchreier);
    }
    let gens: Vec<usize> = match generators {
        Some(g) => g.to_vec(),
        None => d.default_generators(false).expect("weakly Schreier extensions have generators"),
    };
    d.validate_generators(&gens, false)?;
    let (relaxation, alpha) = relaxation_and_alpha(d, &gens);
    let h = d.quotient();
    let one = d.kernel().identity();
    let mut chi = Vec::with_capacity(h.size() * h.size());
    for x in h.elements() {
        for y in h.elements() {
            if x == h.identity() || y == h.identity() {
                chi.push(one);
            } else {
                let target = d.g_mul(gens[x], gens[y]);
                chi.push(d.factorizations(target, gens[h.mul(x, y)]).next().expect("weak generator"));
            }
        }
    }
    Ok(WSFactorSystem { relaxation, alpha, chi })
}

/// `([n], h) -> k(n) u_h` for the factor system extracted with `generators`.
pub fn ws_reconstruction_map(fs: &WSFactorSystem, d: &ExtensionDiagram, generators: &[usize]) -> Vec<usize> {
    let r = &fs.relaxation;
    let mut map = Vec::with_capacity(r.carrier_size());
    for x in r.quotient.elements() {
        for c in 0..r.class_count(x) {
            map.push(d.g_mul(d.k(r.representative(x, c)), generators[x]));
        }
    }
    map
}

/// Everything the equivalence search learns about one `gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaDiagnostic {
    pub gamma: Vec<usize>,
    /// `n gamma(h)` respects the classes: `n1 ~^h n2` gives `n1 gamma(h) ~'^h n2 gamma(h)`.
    pub well_defined: bool,
    /// The compatibility identity holds for all `n1, n2, h1, h2`.
    pub compatible: bool,
    /// Some `lambda(h)` with `gamma(h) lambda(h) ~^h 1` in the first system, for every `h`.
    pub right_invertible: bool,
    /// Some `lambda(h)` with `lambda(h) gamma(h) ~'^h 1` in the second system, for every `h`.
    pub left_invertible: bool,
    /// Same as `left_invertible` with `~'^1` (equality) in place of `~'^h`.
    pub left_invertible_at_identity: bool,
    /// One `lambda` witnesses both one-sided conditions.
    pub common_lambda: bool,
    /// The induced map is an extension isomorphism of the crossed products.
    pub isomorphism: bool,
}

/// `([n], h) -> ([n gamma(h)]', h)` between relaxed carriers.
pub fn ws_gamma_map(fs1: &WSFactorSystem, fs2: &WSFactorSystem, gamma: &[usize]) -> Vec<usize> {
    let (r1, r2) = (&fs1.relaxation, &fs2.relaxation);
    let n = &*r1.kernel;
    let off2 = r2.offsets();
    let mut map = Vec::with_capacity(r1.carrier_size());
    for x in r1.quotient.elements() {
        for c in 0..r1.class_count(x) {
            let m = n.mul(r1.representative(x, c), gamma[x]);
            map.push(off2[x] + r2.class_of(x, m));
        }
    }
    map
}

fn ws_gamma_well_defined(fs1: &WSFactorSystem, fs2: &WSFactorSystem, gamma: &[usize]) -> bool {
    let (r1, r2) = (&fs1.relaxation, &fs2.relaxation);
    let n = &*r1.kernel;
    r1.quotient.elements().all(|x| {
        n.elements().all(|a| {
            n.elements()
                .filter(|&b| r1.related(x, a, b))
                .all(|b| r2.related(x, n.mul(a, gamma[x]), n.mul(b, gamma[x])))
        })
    })
}

/// `n1 alpha(h1, n2) chi(h1, h2) gamma(h1 h2) ~'^(h1 h2) n1 gamma(h1) alpha'(h1, n2 gamma(h2)) chi'(h1, h2)`.
pub fn ws_gamma_identity_holds(fs1: &WSFactorSystem, fs2: &WSFactorSystem, gamma: &[usize]) -> bool {
    let r2 = &fs2.relaxation;
    let (h, n) = (&*r2.quotient, &*r2.kernel);
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for n1 in n.elements() {
                for n2 in n.elements() {
                    let lhs = n.product([n1, fs1.alpha(h1, n2), fs1.chi(h1, h2), gamma[h12]]);
                    let rhs =
                        n.product([n1, gamma[h1], fs2.alpha(h1, n.mul(n2, gamma[h2])), fs2.chi(h1, h2)]);
                    if !r2.related(h12, lhs, rhs) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn same_signature(fs1: &WSFactorSystem, fs2: &WSFactorSystem) -> bool {
    let (r1, r2) = (&fs1.relaxation, &fs2.relaxation);
    *r1.quotient == *r2.quotient
        && *r1.kernel == *r2.kernel
        && r1.quotient.elements().all(|x| r1.class_count(x) == r2.class_count(x))
}

fn diagnose(
    fs1: &WSFactorSystem,
    fs2: &WSFactorSystem,
    d: &(ExtensionDiagram, ExtensionDiagram),
    gamma: Vec<usize>,
) -> GammaDiagnostic {
    let (r1, r2) = (&fs1.relaxation, &fs2.relaxation);
    let (h, n) = (&*r1.quotient, &*r1.kernel);
    let one = n.identity();
    let right = |x: usize, l: usize| r1.related(x, n.mul(gamma[x], l), one);
    let left = |x: usize, l: usize| r2.related(x, n.mul(l, gamma[x]), one);
    let right_invertible = h.elements().all(|x| n.elements().any(|l| right(x, l)));
    let left_invertible = h.elements().all(|x| n.elements().any(|l| left(x, l)));
    let left_invertible_at_identity =
        h.elements().all(|x| n.elements().any(|l| n.mul(l, gamma[x]) == one));
    let common_lambda = h.elements().all(|x| n.elements().any(|l| right(x, l) && left(x, l)));
    let well_defined = ws_gamma_well_defined(fs1, fs2, &gamma);
    let compatible = well_defined && ws_gamma_identity_holds(fs1, fs2, &gamma);
    let isomorphism = well_defined && is_extension_isomorphism(&d.0, &d.1, &ws_gamma_map(fs1, fs2, &gamma), false);
    GammaDiagnostic {
        gamma,
        well_defined,
        compatible,
        right_invertible,
        left_invertible,
        left_invertible_at_identity,
        common_lambda,
        isomorphism,
    }
}

/// One diagnostic per candidate `gamma`, in search order; empty when the two
/// systems cannot be compared.
pub fn ws_gamma_diagnostics(fs1: &WSFactorSystem, fs2: &WSFactorSystem) -> Vec<GammaDiagnostic> {
    if !same_signature(fs1, fs2) {
        return Vec::new();
    }
    let (Ok(d1), Ok(d2)) = (relaxed_crossed_product(fs1), relaxed_crossed_product(fs2)) else {
        return Vec::new();
    };
    let d = (d1, d2);
    let (h, n) = (&**fs1.quotient(), &**fs1.kernel());
    let all: Vec<usize> = n.elements().collect();
    gamma_candidates(h, n, &all).into_iter().map(|g| diagnose(fs1, fs2, &d, g)).collect()
}

/// First `gamma` that is right invertible relative to `h` in the first
/// system, left invertible relative to `h` in the second, satisfies the
/// compatibility identity, and induces an extension isomorphism.
pub fn ws_factor_systems_equivalent(fs1: &WSFactorSystem, fs2: &WSFactorSystem) -> Option<GammaWitness> {
    if !same_signature(fs1, fs2) {
        return None;
    }
    let d = (relaxed_crossed_product(fs1).ok()?, relaxed_crossed_product(fs2).ok()?);
    let (h, n) = (&**fs1.quotient(), &**fs1.kernel());
    let all: Vec<usize> = n.elements().collect();
    for gamma in gamma_candidates(h, n, &all) {
        let diag = diagnose(fs1, fs2, &d, gamma);
        if diag.right_invertible && diag.left_invertible && diag.compatible && diag.isomorphism {
            return Some(GammaWitness { gamma: diag.gamma, invertible: true });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::extension::{artin_glueing, find_extension_isomorphism, find_extension_morphism};
    use crate::iso::are_isomorphic;
    use crate::monoid::direct_product;
    use crate::strict::{crossed_product, semidirect};

    fn z2() -> MonoidRef {
        catalog::cyclic_group(2).shared()
    }

    fn two() -> MonoidRef {
        catalog::meet_two().shared()
    }

    /// `~^top` equality, `~^bot` total on `Z2` over `2`.
    fn w3_relaxation() -> Relaxation {
        Relaxation::new(two(), z2(), &[vec![0, 1], vec![0, 0]]).unwrap()
    }

    fn w3_action() -> RelaxedAction {
        RelaxedAction::new(w3_relaxation(), vec![0, 1, 0, 0]).unwrap()
    }

    fn w3_system(chi_bb: usize) -> WSFactorSystem {
        WSFactorSystem::new(w3_relaxation(), vec![0, 1, 0, 0], vec![0, 0, 0, chi_bb]).unwrap()
    }

    #[test]
    fn relaxation_examples() {
        assert!(check_relaxation(&Relaxation::equality(two(), z2())).is_ok());
        assert!(check_relaxation(&w3_relaxation()).is_ok());
        let bad = Relaxation::from_labels(two(), z2(), &[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(check_relaxation(&bad).unwrap_err().condition, 1);
    }

    #[test]
    fn representatives() {
        let r = w3_relaxation();
        assert_eq!(r.class_count(1), 1);
        assert_eq!(r.representative(1, 0), 0);
        assert_eq!(r.members(1, 0), vec![0, 1]);
        assert_eq!(r.carrier_size(), 3);
    }

    #[test]
    fn compatible_action_examples() {
        let eq = Relaxation::equality(two(), z2());
        assert!(check_compatible_action(&eq, &Action::trivial(two(), z2()).alpha).is_ok());
        assert!(check_compatible_action(&w3_relaxation(), &[0, 1, 0, 0]).is_ok());
        let eq22 = Relaxation::equality(z2(), z2());
        assert!(check_compatible_action(&eq22, &[0, 1, 1, 0]).is_err());
    }

    #[test]
    fn relaxed_semidirect_examples() {
        let triv = RelaxedAction::from_action(&Action::trivial(two(), z2()));
        let d = relaxed_semidirect(&triv).unwrap();
        assert!(are_isomorphic(d.total(), &direct_product(&z2(), &two())));

        let d = relaxed_semidirect(&w3_action()).unwrap();
        assert!(are_isomorphic(d.total(), &catalog::w3()));
        assert_eq!(classify(&d).unwrap().is_weakly_schreier_split, Some(true));

        let zero = Action::new(two(), z2(), vec![0, 1, 0, 0]).unwrap();
        let relaxed = relaxed_semidirect(&RelaxedAction::from_action(&zero)).unwrap();
        assert_eq!(relaxed.total(), semidirect(&zero).unwrap().total());
    }

    #[test]
    fn representative_choice_is_immaterial() {
        let a = w3_action();
        let b = RelaxedAction { relaxation: a.relaxation.clone(), alpha: vec![0, 1, 1, 0] };
        assert!(relaxed_actions_equal(&a, &b));
        assert_eq!(relaxed_semidirect(&a).unwrap().total(), relaxed_semidirect(&b).unwrap().total());
    }

    #[test]
    fn extract_relaxed_action_examples() {
        let d = relaxed_semidirect(&w3_action()).unwrap();
        let ra = extract_relaxed_action(&d).unwrap();
        assert!(relaxed_actions_equal(&ra, &w3_action()));

        let glued = artin_glueing(&two(), &two(), &[0, 1]).unwrap();
        let ra = extract_relaxed_action(&glued).unwrap();
        assert_eq!(ra.relaxation.class_count(1), 1);
        assert_eq!(ra.relaxation.class_count(0), 2);
    }

    #[test]
    fn ws_factor_system_examples() {
        assert!(check_ws_factor_system(&WSFactorSystem::from_relaxed_action(&w3_action())).is_ok());
        let z4 = FactorSystem::new(z2(), z2(), vec![0, 1, 0, 1], vec![0, 0, 0, 1]).unwrap();
        let embedded = WSFactorSystem::from_strict(&z4);
        assert!(check_ws_factor_system(&embedded).is_ok());
        assert_eq!(relaxed_crossed_product(&embedded).unwrap().total(), crossed_product(&z4).unwrap().total());
        assert!(check_ws_factor_system(&w3_system(1)).is_ok());
        assert!(are_isomorphic(relaxed_crossed_product(&w3_system(1)).unwrap().total(), &catalog::w3()));
    }

    #[test]
    fn extract_ws_from_w3() {
        let w3 = catalog::w3().shared();
        let d = ExtensionDiagram::from_parts(z2(), w3, two(), vec![0, 1], vec![0, 0, 1], None).unwrap();
        let fs = extract_ws_factor_system(&d, Some(&[0, 2])).unwrap();
        assert_eq!(fs.relaxation.class_count(1), 1);
        let back = relaxed_crossed_product(&fs).unwrap();
        let map = ws_reconstruction_map(&fs, &d, &[0, 2]);
        assert!(is_extension_isomorphism(&back, &d, &map, false));
    }

    #[test]
    fn ws_equivalence_examples() {
        let w = ws_factor_systems_equivalent(&w3_system(1), &w3_system(1)).unwrap();
        assert_eq!(w.gamma, vec![0, 0]);
        assert!(ws_factor_systems_equivalent(&w3_system(0), &w3_system(1)).is_some());
        let dp = WSFactorSystem::from_relaxed_action(&RelaxedAction::from_action(&Action::trivial(two(), z2())));
        assert!(ws_factor_systems_equivalent(&w3_system(0), &dp).is_none());
    }

    #[test]
    fn split_short_five_lemma_fails() {
        let dp = relaxed_semidirect(&RelaxedAction::from_action(&Action::trivial(two(), z2()))).unwrap();
        let w3 = relaxed_semidirect(&w3_action()).unwrap();
        let f = find_extension_morphism(&dp, &w3, true).unwrap();
        assert!(f.len() == 4 && find_extension_isomorphism(&dp, &w3, true).is_none());
    }
}
