//! Monoid actions, semidirect products, Schreier factor systems and crossed
//! products, together with their extraction from Schreier extensions.
//!
//! Products on `N x H` index the pair `(n, h)` as `h * |N| + n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{classify, is_extension_isomorphism, ExtensionDiagram};
use crate::monoid::{FiniteMonoid, MonoidRef};
use crate::violation::{Check, Violation};

/// A map `alpha: H x N -> N`, stored row-major as `alpha[h * |N| + n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub quotient: MonoidRef,
    pub kernel: MonoidRef,
    pub alpha: Vec<usize>,
}

impl Action {
    pub fn new(quotient: MonoidRef, kernel: MonoidRef, alpha: Vec<usize>) -> Result<Self> {
        check_action(&quotient, &kernel, &alpha).map_err(Error::ActionInvalid)?;
        Ok(Action { quotient, kernel, alpha })
    }

    /// `alpha(h, n) = n`.
    pub fn trivial(quotient: MonoidRef, kernel: MonoidRef) -> Self {
        let alpha = quotient.elements().flat_map(|_| kernel.elements()).collect();
        Action { quotient, kernel, alpha }
    }

    #[inline]
    pub fn get(&self, h: usize, n: usize) -> usize {
        self.alpha[h * self.kernel.size() + n]
    }
}

fn shape_ok(len: usize, rows: usize, cols: usize, range: usize, t: &[usize]) -> bool {
    t.len() == rows * cols && t.iter().all(|&x| x < range) && len == t.len()
}

/// Checks the action laws:
///
/// 1. `alpha(1, n) = n`
/// 2. `alpha(h, 1) = 1`
/// 3. `alpha(h, n1 n2) = alpha(h, n1) alpha(h, n2)`
/// 4. `alpha(h1 h2, n) = alpha(h1, alpha(h2, n))`
///
/// Condition 0 reports a malformed table.
pub fn check_action(h: &FiniteMonoid, n: &FiniteMonoid, alpha: &[usize]) -> Check {
    let (hs, ns) = (h.size(), n.size());
    if !shape_ok(alpha.len(), hs, ns, ns, alpha) {
        return Err(Violation::new(0, "alpha is an |H| x |N| table of N elements", vec![]));
    }
    let a = |x: usize, m: usize| alpha[x * ns + m];
    check_action_core(h, n, &a)?;
    for h1 in h.elements() {
        for h2 in h.elements() {
            for m in n.elements() {
                if a(h.mul(h1, h2), m) != a(h1, a(h2, m)) {
                    return Err(Violation::new(
                        4,
                        "alpha(h1 h2, n) = alpha(h1, alpha(h2, n))",
                        [h1, h2, m],
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_action_core(h: &FiniteMonoid, n: &FiniteMonoid, a: &dyn Fn(usize, usize) -> usize) -> Check {
    for m in n.elements() {
        if a(h.identity(), m) != m {
            return Err(Violation::new(1, "alpha(1, n) = n", [m]));
        }
    }
    for x in h.elements() {
        if a(x, n.identity()) != n.identity() {
            return Err(Violation::new(2, "alpha(h, 1) = 1", [x]));
        }
    }
    for x in h.elements() {
        for m1 in n.elements() {
            for m2 in n.elements() {
                if a(x, n.mul(m1, m2)) != n.mul(a(x, m1), a(x, m2)) {
                    return Err(Violation::new(
                        3,
                        "alpha(h, n1 n2) = alpha(h, n1) alpha(h, n2)",
                        [x, m1, m2],
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Builds `N x H` with `(n1, h1)(n2, h2) = (n1 alpha(h1, n2) chi(h1, h2), h1 h2)`.
fn twisted_product(
    h: &MonoidRef,
    n: &MonoidRef,
    alpha: &[usize],
    chi: Option<&[usize]>,
) -> Result<ExtensionDiagram> {
    let (hs, ns) = (h.size(), n.size());
    let size = hs * ns;
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (h1, n1) = (x / ns, x % ns);
        for y in 0..size {
            let (h2, n2) = (y / ns, y % ns);
            let mut v = n.mul(n1, alpha[h1 * ns + n2]);
            if let Some(chi) = chi {
                v = n.mul(v, chi[h1 * hs + h2]);
            }
            table.push(h.mul(h1, h2) * ns + v);
        }
    }
    let identity = h.identity() * ns + n.identity();
    let g = FiniteMonoid::from_flat(size, identity, table)?.shared();
    let k = n.elements().map(|m| h.identity() * ns + m).collect();
    let e = (0..size).map(|x| x / ns).collect();
    let s = chi.is_none().then(|| h.elements().map(|y| y * ns + n.identity()).collect());
    Ok(ExtensionDiagram::assemble(n.clone(), g, h.clone(), k, e, s))
}

/// Semidirect product `N ⋊_alpha H` with `k(n) = (n, 1)`, `e(n, h) = h`, `s(h) = (1, h)`.
pub fn semidirect(action: &Action) -> Result<ExtensionDiagram> {
    check_action(&action.quotient, &action.kernel, &action.alpha).map_err(Error::ActionInvalid)?;
    twisted_product(&action.quotient, &action.kernel, &action.alpha, None)
}

/// The unique action of a Schreier split extension: `s(h) k(n) = k(alpha(h, n)) s(h)`.
pub fn extract_action(d: &ExtensionDiagram) -> Result<Action> {
    let class = classify(d)?;
    if class.is_schreier_split != Some(true) {
        return Err(Error::NotSchreierSplit);
    }
    let s = d.splitting().expect("split flag implies a splitting");
    let (h, n) = (d.quotient(), d.kernel());
    let mut alpha = Vec::with_capacity(h.size() * n.size());
    for x in h.elements() {
        for m in n.elements() {
            let target = d.g_mul(s[x], d.k(m));
            let found = d.factorizations(target, s[x]).next().expect("Schreier split");
            alpha.push(found);
        }
    }
    Ok(Action { quotient: h.clone(), kernel: n.clone(), alpha })
}

/// The `alpha` with `s(h) k(n) = k(alpha(h, n)) s(h)` for an arbitrary
/// unit-preserving section `s`; `None` unless every solution is unique.
pub fn action_for_section(d: &ExtensionDiagram, s: &[usize]) -> Option<Vec<usize>> {
    let (h, n) = (d.quotient(), d.kernel());
    let mut alpha = Vec::with_capacity(h.size() * n.size());
    for x in h.elements() {
        for m in n.elements() {
            let mut sols = d.factorizations(d.g_mul(s[x], d.k(m)), s[x]);
            let first = sols.next()?;
            if sols.next().is_some() {
                return None;
            }
            alpha.push(first);
        }
    }
    Some(alpha)
}

/// A pair `(alpha, chi)` of tables; `chi[h1 * |H| + h2]`.
///
/// `alpha` is not required to be an action: only the factor-system
/// conditions of [`check_factor_system`] are imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSystem {
    pub quotient: MonoidRef,
    pub kernel: MonoidRef,
    pub alpha: Vec<usize>,
    pub chi: Vec<usize>,
}

impl FactorSystem {
    pub fn new(quotient: MonoidRef, kernel: MonoidRef, alpha: Vec<usize>, chi: Vec<usize>) -> Result<Self> {
        let fs = FactorSystem { quotient, kernel, alpha, chi };
        check_factor_system(&fs).map_err(Error::FactorSystemInvalid)?;
        Ok(fs)
    }

    /// `chi = 1` over the given action.
    pub fn from_action(action: &Action) -> Self {
        let id = action.kernel.identity();
        FactorSystem {
            quotient: action.quotient.clone(),
            kernel: action.kernel.clone(),
            alpha: action.alpha.clone(),
            chi: vec![id; action.quotient.size() * action.quotient.size()],
        }
    }

    #[inline]
    pub fn alpha(&self, h: usize, n: usize) -> usize {
        self.alpha[h * self.kernel.size() + n]
    }

    #[inline]
    pub fn chi(&self, h1: usize, h2: usize) -> usize {
        self.chi[h1 * self.quotient.size() + h2]
    }
}

/// Checks the six factor-system conditions:
///
/// 1. `alpha(1, n) = n`
/// 2. `alpha(h, 1) = 1`
/// 3. `alpha(h, n1 n2) = alpha(h, n1) alpha(h, n2)`
/// 4. `chi(h1, h2) alpha(h1 h2, n) = alpha(h1, alpha(h2, n)) chi(h1, h2)`
/// 5. `chi(1, h) = 1 = chi(h, 1)`
/// 6. `chi(x, y) chi(xy, z) = alpha(x, chi(y, z)) chi(x, yz)`
pub fn check_factor_system(fs: &FactorSystem) -> Check {
    let (h, n) = (&*fs.quotient, &*fs.kernel);
    let (hs, ns) = (h.size(), n.size());
    if !shape_ok(fs.alpha.len(), hs, ns, ns, &fs.alpha) || !shape_ok(fs.chi.len(), hs, hs, ns, &fs.chi)
    {
        return Err(Violation::new(0, "alpha is |H| x |N| and chi is |H| x |H| over N", vec![]));
    }
    let a = |x: usize, m: usize| fs.alpha(x, m);
    check_action_core(h, n, &a)?;
    for h1 in h.elements() {
        for h2 in h.elements() {
            let c = fs.chi(h1, h2);
            for m in n.elements() {
                let lhs = n.mul(c, a(h.mul(h1, h2), m));
                let rhs = n.mul(a(h1, a(h2, m)), c);
                if lhs != rhs {
                    return Err(Violation::new(
                        4,
                        "chi(h1, h2) alpha(h1 h2, n) = alpha(h1, alpha(h2, n)) chi(h1, h2)",
                        [h1, h2, m],
                    ));
                }
            }
        }
    }
    for x in h.elements() {
        if fs.chi(h.identity(), x) != n.identity() || fs.chi(x, h.identity()) != n.identity() {
            return Err(Violation::new(5, "chi(1, h) = 1 = chi(h, 1)", [x]));
        }
    }
    for x in h.elements() {
        for y in h.elements() {
            for z in h.elements() {
                let lhs = n.mul(fs.chi(x, y), fs.chi(h.mul(x, y), z));
                let rhs = n.mul(a(x, fs.chi(y, z)), fs.chi(x, h.mul(y, z)));
                if lhs != rhs {
                    return Err(Violation::new(
                        6,
                        "chi(x, y) chi(xy, z) = alpha(x, chi(y, z)) chi(x, yz)",
                        [x, y, z],
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Crossed product `N ⋊_alpha^chi H` with `k(n) = (n, 1)` and `e(n, h) = h`.
/// The elements `(1, h)` are generators of their fibers.
pub fn crossed_product(fs: &FactorSystem) -> Result<ExtensionDiagram> {
    check_factor_system(fs).map_err(Error::FactorSystemInvalid)?;
    twisted_product(&fs.quotient, &fs.kernel, &fs.alpha, Some(&fs.chi))
}

/// Solves `k(alpha(h, n)) u_h = u_h k(n)` and `k(chi(h1, h2)) u_{h1 h2} = u_{h1} u_{h2}`
/// for the given generators (default: smallest index per fiber, `u_1 = 1`).
pub fn extract_factor_system(d: &ExtensionDiagram, generators: Option<&[usize]>) -> Result<FactorSystem> {
    let class = classify(d)?;
    if !class.is_schreier {
        return Err(Error::NotSchreier);
    }
    let gens: Vec<usize> = match generators {
        Some(g) => g.to_vec(),
        None => d.default_generators(true).expect("Schreier extensions have generators"),
    };
    d.validate_generators(&gens, true)?;
    let (h, n) = (d.quotient(), d.kernel());
    let solve = |target: usize, u: usize| d.factorizations(target, u).next().expect("unique factorization");
    let mut alpha = Vec::with_capacity(h.size() * n.size());
    for x in h.elements() {
        for m in n.elements() {
            alpha.push(solve(d.g_mul(gens[x], d.k(m)), gens[x]));
        }
    }
    let mut chi = Vec::with_capacity(h.size() * h.size());
    for x in h.elements() {
        for y in h.elements() {
            chi.push(solve(d.g_mul(gens[x], gens[y]), gens[h.mul(x, y)]));
        }
    }
    Ok(FactorSystem { quotient: h.clone(), kernel: n.clone(), alpha, chi })
}

/// A map `gamma: H -> N` with `gamma(1) = 1` inducing `f(n, h) = (n gamma(h), h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaWitness {
    pub gamma: Vec<usize>,
    /// Every `gamma(h)` is a unit of `N`.
    pub invertible: bool,
}

/// In `N x H` index form, `f(n, h) = (n gamma(h), h)`.
pub fn gamma_induced_map(n: &FiniteMonoid, hs: usize, gamma: &[usize]) -> Vec<usize> {
    let ns = n.size();
    (0..hs * ns).map(|x| (x / ns) * ns + n.mul(x % ns, gamma[x / ns])).collect()
}

/// The identity making `f(n, h) = (n gamma(h), h)` a hom from the crossed
/// product of `fs1` into that of `fs2`:
/// `n1 alpha1(h1, n2) chi1(h1, h2) gamma(h1 h2) = n1 gamma(h1) alpha2(h1, n2 gamma(h2)) chi2(h1, h2)`.
pub fn gamma_identity_holds(fs1: &FactorSystem, fs2: &FactorSystem, gamma: &[usize]) -> bool {
    let (h, n) = (&*fs1.quotient, &*fs1.kernel);
    for h1 in h.elements() {
        for h2 in h.elements() {
            let h12 = h.mul(h1, h2);
            for n1 in n.elements() {
                for n2 in n.elements() {
                    let lhs = n.product([n1, fs1.alpha(h1, n2), fs1.chi(h1, h2), gamma[h12]]);
                    let rhs = n.product([
                        n1,
                        gamma[h1],
                        fs2.alpha(h1, n.mul(n2, gamma[h2])),
                        fs2.chi(h1, h2),
                    ]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every `gamma: H -> N` with `gamma(1) = 1`, values drawn from `values`, in
/// lexicographic order.
pub(crate) fn gamma_candidates(h: &FiniteMonoid, n: &FiniteMonoid, values: &[usize]) -> Vec<Vec<usize>> {
    let free: Vec<usize> = h.elements().filter(|&x| x != h.identity()).collect();
    let mut out = Vec::new();
    let mut cur = vec![n.identity(); h.size()];
    fn go(i: usize, free: &[usize], values: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == free.len() {
            out.push(cur.clone());
            return;
        }
        for &v in values {
            cur[free[i]] = v;
            go(i + 1, free, values, cur, out);
        }
    }
    go(0, &free, values, &mut cur, &mut out);
    out
}

/// Searches for `gamma` making the crossed products of `fs1` and `fs2`
/// isomorphic as extensions via `f(n, h) = (n gamma(h), h)`.
///
/// With `require_invertible`, only unit-valued `gamma` are tried; otherwise
/// any `gamma` whose induced `f` is bijective qualifies. Each qualifying
/// candidate is re-verified as an isomorphism of the constructed diagrams.
pub fn factor_systems_equivalent(
    fs1: &FactorSystem,
    fs2: &FactorSystem,
    require_invertible: bool,
) -> Option<GammaWitness> {
    if *fs1.quotient != *fs2.quotient || *fs1.kernel != *fs2.kernel {
        return None;
    }
    let d1 = crossed_product(fs1).ok()?;
    let d2 = crossed_product(fs2).ok()?;
    let (h, n) = (&*fs1.quotient, &*fs1.kernel);
    let values: Vec<usize> = if require_invertible { n.units() } else { n.elements().collect() };
    for gamma in gamma_candidates(h, n, &values) {
        if !gamma_identity_holds(fs1, fs2, &gamma) {
            continue;
        }
        let map = gamma_induced_map(n, h.size(), &gamma);
        if is_extension_isomorphism(&d1, &d2, &map, false) {
            let invertible = gamma.iter().all(|&g| n.is_unit(g));
            return Some(GammaWitness { gamma, invertible });
        }
    }
    None
}
