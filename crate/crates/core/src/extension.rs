//! Extension diagrams `N --k--> G --e--> H` (optionally split by `s`) and
//! the Schreier-type classification of them.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::congruence::{congruence_generated, kernel_pair};
use crate::error::{Error, Result};
use crate::iso::search_hom;
use crate::monoid::{check_hom_map, trusted, FiniteMonoid, MonoidHom, MonoidRef};

/// A pair of composable homs `k: N -> G`, `e: G -> H` and an optional
/// splitting `s: H -> G`. Each hom is checked on construction; whether the
/// diagram is an extension is decided by [`check_extension`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDiagram {
    kernel: MonoidRef,
    total: MonoidRef,
    quotient: MonoidRef,
    k: Vec<usize>,
    e: Vec<usize>,
    s: Option<Vec<usize>>,
    fibers: Vec<Vec<usize>>,
}

impl ExtensionDiagram {
    pub fn new(k: MonoidHom, e: MonoidHom, s: Option<MonoidHom>) -> Result<Self> {
        if *k.codomain != *e.domain {
            return Err(Error::Incompatible("codomain of k is not the domain of e".into()));
        }
        if let Some(s) = &s {
            if *s.domain != *e.codomain || *s.codomain != *e.domain {
                return Err(Error::Incompatible("splitting must map H into G".into()));
            }
        }
        Self::from_parts(k.domain, k.codomain, e.codomain, k.map, e.map, s.map(|s| s.map))
    }

    pub fn from_parts(
        kernel: MonoidRef,
        total: MonoidRef,
        quotient: MonoidRef,
        k: Vec<usize>,
        e: Vec<usize>,
        s: Option<Vec<usize>>,
    ) -> Result<Self> {
        check_hom_map(&kernel, &total, &k).map_err(Error::NotAHom)?;
        check_hom_map(&total, &quotient, &e).map_err(Error::NotAHom)?;
        if let Some(s) = &s {
            check_hom_map(&quotient, &total, s).map_err(Error::NotAHom)?;
        }
        Ok(Self::assemble(kernel, total, quotient, k, e, s))
    }

    /// Skips hom validation; for constructors that build homs by design.
    pub(crate) fn assemble(
        kernel: MonoidRef,
        total: MonoidRef,
        quotient: MonoidRef,
        k: Vec<usize>,
        e: Vec<usize>,
        s: Option<Vec<usize>>,
    ) -> Self {
        debug_assert!(check_hom_map(&kernel, &total, &k).is_ok());
        debug_assert!(check_hom_map(&total, &quotient, &e).is_ok());
        debug_assert!(s.as_ref().is_none_or(|s| check_hom_map(&quotient, &total, s).is_ok()));
        let mut fibers = vec![Vec::new(); quotient.size()];
        for g in total.elements() {
            fibers[e[g]].push(g);
        }
        ExtensionDiagram { kernel, total, quotient, k, e, s, fibers }
    }

    pub fn kernel(&self) -> &MonoidRef {
        &self.kernel
    }

    pub fn total(&self) -> &MonoidRef {
        &self.total
    }

    pub fn quotient(&self) -> &MonoidRef {
        &self.quotient
    }

    #[inline]
    pub fn k(&self, n: usize) -> usize {
        self.k[n]
    }

    #[inline]
    pub fn e(&self, g: usize) -> usize {
        self.e[g]
    }

    pub fn k_map(&self) -> &[usize] {
        &self.k
    }

    pub fn e_map(&self) -> &[usize] {
        &self.e
    }

    pub fn splitting(&self) -> Option<&[usize]> {
        self.s.as_deref()
    }

    pub fn k_hom(&self) -> MonoidHom {
        MonoidHom { domain: self.kernel.clone(), codomain: self.total.clone(), map: self.k.clone() }
    }

    pub fn e_hom(&self) -> MonoidHom {
        MonoidHom { domain: self.total.clone(), codomain: self.quotient.clone(), map: self.e.clone() }
    }

    pub fn s_hom(&self) -> Option<MonoidHom> {
        self.s.as_ref().map(|s| MonoidHom {
            domain: self.quotient.clone(),
            codomain: self.total.clone(),
            map: s.clone(),
        })
    }

    pub fn with_splitting(&self, s: Vec<usize>) -> Result<Self> {
        check_hom_map(&self.quotient, &self.total, &s).map_err(Error::NotAHom)?;
        let mut d = self.clone();
        d.s = Some(s);
        Ok(d)
    }

    pub fn without_splitting(&self) -> Self {
        let mut d = self.clone();
        d.s = None;
        d
    }

    /// `e^{-1}(h)` in increasing element order.
    pub fn fiber(&self, h: usize) -> &[usize] {
        &self.fibers[h]
    }

    #[inline]
    pub(crate) fn g_mul(&self, a: usize, b: usize) -> usize {
        self.total.mul(a, b)
    }

    /// Kernel elements `n` with `k(n) * u = g`.
    pub fn factorizations(&self, g: usize, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.kernel.elements().filter(move |&n| self.g_mul(self.k[n], u) == g)
    }

    fn covers_fiber(&self, u: usize, unique: bool) -> bool {
        let h = self.e[u];
        let mut count = vec![0usize; self.total.size()];
        for n in self.kernel.elements() {
            count[self.g_mul(self.k[n], u)] += 1;
        }
        self.fibers[h].iter().all(|&g| if unique { count[g] == 1 } else { count[g] >= 1 })
    }

    /// `u` is a (strict) generator of its fiber: every fiber element is
    /// `k(n) u` for exactly one `n`.
    pub fn is_schreier_generator(&self, u: usize) -> bool {
        self.covers_fiber(u, true)
    }

    /// `u` is a weak generator: every fiber element is `k(n) u` for some `n`.
    pub fn is_weak_generator(&self, u: usize) -> bool {
        self.covers_fiber(u, false)
    }

    /// All generators of `e^{-1}(h)`, strict or weak.
    pub fn generators_of(&self, h: usize, strict: bool) -> Vec<usize> {
        self.fibers[h]
            .iter()
            .copied()
            .filter(|&u| if strict { self.is_schreier_generator(u) } else { self.is_weak_generator(u) })
            .collect()
    }

    /// Default generator per fiber: the identity over the identity of `H`,
    /// otherwise the smallest valid element index.
    pub fn default_generators(&self, strict: bool) -> Option<Vec<usize>> {
        self.quotient
            .elements()
            .map(|h| {
                if h == self.quotient.identity() {
                    Some(self.total.identity())
                } else {
                    self.generators_of(h, strict).first().copied()
                }
            })
            .collect()
    }

    /// Every choice of one generator per fiber with `u_1 = 1`.
    pub fn all_generator_choices(&self, strict: bool) -> Vec<Vec<usize>> {
        let per_fiber: Vec<Vec<usize>> = self
            .quotient
            .elements()
            .map(|h| {
                if h == self.quotient.identity() {
                    vec![self.total.identity()]
                } else {
                    self.generators_of(h, strict)
                }
            })
            .collect();
        per_fiber.into_iter().multi_cartesian_product().collect()
    }

    /// Every set-theoretic section of `e` preserving the unit.
    pub fn unit_preserving_sections(&self) -> Vec<Vec<usize>> {
        let per_fiber: Vec<Vec<usize>> = self
            .quotient
            .elements()
            .map(|h| {
                if h == self.quotient.identity() {
                    vec![self.total.identity()]
                } else {
                    self.fibers[h].clone()
                }
            })
            .collect();
        per_fiber.into_iter().multi_cartesian_product().collect()
    }

    /// Checks that a generator choice has `u_1 = 1` and picks a generator
    /// of each fiber; reports the first bad `h`.
    pub(crate) fn validate_generators(&self, gens: &[usize], strict: bool) -> Result<()> {
        if gens.len() != self.quotient.size() {
            return Err(Error::Shape("one generator per quotient element is required".into()));
        }
        for (h, &u) in gens.iter().enumerate() {
            let ok = if h == self.quotient.identity() {
                u == self.total.identity()
            } else {
                u < self.total.size()
                    && self.e[u] == h
                    && if strict { self.is_schreier_generator(u) } else { self.is_weak_generator(u) }
            };
            if !ok {
                return Err(Error::BadGeneratorChoice(h));
            }
        }
        Ok(())
    }
}

/// Monoid kernel of `e`: the submonoid `e^{-1}(1)` with its inclusion.
pub fn kernel(e: &MonoidHom) -> (MonoidRef, MonoidHom) {
    let g = &e.domain;
    let elems: Vec<usize> = g.elements().filter(|&x| e.map[x] == e.codomain.identity()).collect();
    let pos = |x: usize| elems.binary_search(&x).expect("kernel is a submonoid");
    let size = elems.len();
    let mut table = Vec::with_capacity(size * size);
    for &a in &elems {
        for &b in &elems {
            table.push(pos(g.mul(a, b)));
        }
    }
    let n = trusted(size, pos(g.identity()), table).shared();
    let inclusion = MonoidHom { domain: n.clone(), codomain: g.clone(), map: elems };
    (n, inclusion)
}

/// Which extension invariant a diagram violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum ExtensionViolation {
    KernelMapNotInjective { a: usize, b: usize },
    QuotientMapNotSurjective { h: usize },
    ImageIsNotKernel { g: usize },
    NotCokernel { g1: usize, g2: usize },
    NotASection { h: usize },
}

impl fmt::Display for ExtensionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::KernelMapNotInjective { a, b } => write!(f, "k({a}) = k({b})"),
            Self::QuotientMapNotSurjective { h } => write!(f, "{h} is not in the image of e"),
            Self::ImageIsNotKernel { g } => {
                write!(f, "element {g} is in exactly one of image(k) and kernel(e)")
            }
            Self::NotCokernel { g1, g2 } => write!(
                f,
                "{g1} and {g2} are identified by exactly one of e and the congruence generated by k"
            ),
            Self::NotASection { h } => write!(f, "e(s({h})) != {h}"),
        }
    }
}

pub fn check_extension(d: &ExtensionDiagram) -> std::result::Result<(), ExtensionViolation> {
    let (n, g, h) = (&d.kernel, &d.total, &d.quotient);
    let mut preimage = vec![usize::MAX; g.size()];
    for a in n.elements() {
        let x = d.k[a];
        if preimage[x] != usize::MAX {
            return Err(ExtensionViolation::KernelMapNotInjective { a: preimage[x], b: a });
        }
        preimage[x] = a;
    }
    if let Some(h) = h.elements().find(|&y| d.fibers[y].is_empty()) {
        return Err(ExtensionViolation::QuotientMapNotSurjective { h });
    }
    for x in g.elements() {
        let in_image = preimage[x] != usize::MAX;
        let in_kernel = d.e[x] == h.identity();
        if in_image != in_kernel {
            return Err(ExtensionViolation::ImageIsNotKernel { g: x });
        }
    }
    let pairs: Vec<(usize, usize)> = d.k.iter().map(|&x| (x, g.identity())).collect();
    let generated = congruence_generated(g, &pairs);
    let kp = kernel_pair(&d.e_hom());
    for a in g.elements() {
        for b in a + 1..g.size() {
            if generated.same(a, b) != kp.same(a, b) {
                return Err(ExtensionViolation::NotCokernel { g1: a, g2: b });
            }
        }
    }
    if let Some(s) = &d.s {
        if let Some(y) = h.elements().find(|&y| d.e[s[y]] != y) {
            return Err(ExtensionViolation::NotASection { h: y });
        }
    }
    Ok(())
}

/// Classification flags of an extension.
///
/// `is_leech_normal` is `None` when the kernel is not a group. The split
/// flags are `None` when the diagram carries no splitting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionClass {
    pub is_extension: bool,
    pub is_schreier: bool,
    pub is_weakly_schreier: bool,
    pub is_special_schreier: bool,
    pub is_special_weakly_schreier: bool,
    pub is_leech_normal: Option<bool>,
    pub generators: Option<Vec<usize>>,
    pub is_schreier_split: Option<bool>,
    pub is_weakly_schreier_split: Option<bool>,
}

pub fn classify(d: &ExtensionDiagram) -> Result<ExtensionClass> {
    check_extension(d).map_err(Error::NotAnExtension)?;
    let g = &d.total;
    let strict = d.default_generators(true);
    let weak = d.default_generators(false);
    let is_schreier = strict.is_some();
    let is_weakly_schreier = weak.is_some();

    let mut special_strict = true;
    let mut special_weak = true;
    'outer: for fiber in &d.fibers {
        for &g1 in fiber {
            for &g2 in fiber {
                let c = d.factorizations(g1, g2).count();
                special_strict &= c == 1;
                special_weak &= c >= 1;
                if !special_weak {
                    break 'outer;
                }
            }
        }
    }

    let is_leech_normal = d.kernel.is_group().then(|| {
        g.elements().all(|x| {
            let left: Vec<usize> = d.k.iter().map(|&kn| g.mul(kn, x)).sorted().dedup().collect();
            let right: Vec<usize> = d.k.iter().map(|&kn| g.mul(x, kn)).sorted().dedup().collect();
            left == right
        })
    });

    let (is_schreier_split, is_weakly_schreier_split) = match &d.s {
        None => (None, None),
        Some(s) => {
            let counts: Vec<usize> =
                g.elements().map(|x| d.factorizations(x, s[d.e[x]]).count()).collect();
            (Some(counts.iter().all(|&c| c == 1)), Some(counts.iter().all(|&c| c >= 1)))
        }
    };

    Ok(ExtensionClass {
        is_extension: true,
        is_schreier,
        is_weakly_schreier,
        is_special_schreier: special_strict,
        is_special_weakly_schreier: special_weak,
        is_leech_normal,
        generators: strict.or(weak),
        is_schreier_split,
        is_weakly_schreier_split,
    })
}

/// `{g : g S ⊆ S g}`.
pub fn right_normaliser(g: &FiniteMonoid, s: &[usize]) -> Vec<usize> {
    g.elements()
        .filter(|&x| {
            s.iter().all(|&n| {
                let gx = g.mul(x, n);
                s.iter().any(|&m| g.mul(m, x) == gx)
            })
        })
        .collect()
}

/// The split extension `N -> Gl(f) -> H` of meet-semilattices, where
/// `Gl(f) = {(n, h) : n <= f(h)}` with pointwise meet.
///
/// Elements of `Gl(f)` are ordered by `h`, then by `n`.
pub fn artin_glueing(h: &MonoidRef, n: &MonoidRef, f: &[usize]) -> Result<ExtensionDiagram> {
    if !h.is_semilattice() || !n.is_semilattice() {
        return Err(Error::NotASemilattice);
    }
    if f.len() != h.size() || f.iter().any(|&x| x >= n.size()) {
        return Err(Error::Shape("glueing map must send each element of H into N".into()));
    }
    if f[h.identity()] != n.identity() {
        return Err(Error::NotMeetPreserving(h.identity(), h.identity()));
    }
    for a in h.elements() {
        for b in h.elements() {
            if f[h.mul(a, b)] != n.mul(f[a], f[b]) {
                return Err(Error::NotMeetPreserving(a, b));
            }
        }
    }
    let below = |x: usize, y: usize| n.mul(x, y) == x;
    let elems: Vec<(usize, usize)> = h
        .elements()
        .flat_map(|y| n.elements().filter(move |&x| below(x, f[y])).map(move |x| (x, y)))
        .collect();
    let pos = |p: (usize, usize)| elems.iter().position(|&q| q == p).expect("closed under meet");
    let size = elems.len();
    let mut table = Vec::with_capacity(size * size);
    for &(x1, y1) in &elems {
        for &(x2, y2) in &elems {
            table.push(pos((n.mul(x1, x2), h.mul(y1, y2))));
        }
    }
    let gl = trusted(size, pos((n.identity(), h.identity())), table).shared();
    let k = n.elements().map(|x| pos((x, h.identity()))).collect();
    let e = elems.iter().map(|&(_, y)| y).collect();
    let s = h.elements().map(|y| pos((f[y], y))).collect();
    Ok(ExtensionDiagram::assemble(n.clone(), gl, h.clone(), k, e, Some(s)))
}

fn morphism_candidates(
    d1: &ExtensionDiagram,
    d2: &ExtensionDiagram,
    respect_splitting: bool,
) -> Option<Vec<Vec<usize>>> {
    if *d1.kernel != *d2.kernel || *d1.quotient != *d2.quotient {
        return None;
    }
    let (s1, s2) = match (respect_splitting, &d1.s, &d2.s) {
        (false, _, _) => (None, None),
        (true, Some(a), Some(b)) => (Some(a), Some(b)),
        (true, _, _) => return None,
    };
    let mut cand: Vec<Vec<usize>> = d1.total.elements().map(|g| d2.fibers[d1.e[g]].clone()).collect();
    for n in d1.kernel.elements() {
        cand[d1.k[n]] = vec![d2.k[n]];
    }
    if let (Some(s1), Some(s2)) = (s1, s2) {
        for h in d1.quotient.elements() {
            if cand[s1[h]].contains(&s2[h]) {
                cand[s1[h]] = vec![s2[h]];
            } else {
                return None;
            }
        }
    }
    Some(cand)
}

/// A hom `G1 -> G2` commuting with `k`, `e` (and `s` when asked), not
/// necessarily bijective.
pub fn find_extension_morphism(
    d1: &ExtensionDiagram,
    d2: &ExtensionDiagram,
    respect_splitting: bool,
) -> Option<Vec<usize>> {
    let cand = morphism_candidates(d1, d2, respect_splitting)?;
    search_hom(&d1.total, &d2.total, &cand, false)
}

/// An isomorphism of (split) extensions, first in lexicographic order.
pub fn find_extension_isomorphism(
    d1: &ExtensionDiagram,
    d2: &ExtensionDiagram,
    respect_splitting: bool,
) -> Option<Vec<usize>> {
    if d1.total.size() != d2.total.size() {
        return None;
    }
    let cand = morphism_candidates(d1, d2, respect_splitting)?;
    if d1.fibers.iter().zip(&d2.fibers).any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    search_hom(&d1.total, &d2.total, &cand, true)
}

/// Checks that `map` is an isomorphism of extensions `d1 -> d2`.
pub fn is_extension_isomorphism(
    d1: &ExtensionDiagram,
    d2: &ExtensionDiagram,
    map: &[usize],
    respect_splitting: bool,
) -> bool {
    let hom = MonoidHom { domain: d1.total.clone(), codomain: d2.total.clone(), map: map.to_vec() };
    if crate::monoid::check_hom(&hom).is_err() || !hom.is_bijective() {
        return false;
    }
    if *d1.kernel != *d2.kernel || *d1.quotient != *d2.quotient {
        return false;
    }
    let k_ok = d1.kernel.elements().all(|n| map[d1.k[n]] == d2.k[n]);
    let e_ok = d1.total.elements().all(|g| d2.e[map[g]] == d1.e[g]);
    let s_ok = !respect_splitting
        || match (&d1.s, &d2.s) {
            (Some(a), Some(b)) => d1.quotient.elements().all(|h| map[a[h]] == b[h]),
            _ => false,
        };
    k_ok && e_ok && s_ok
}

impl fmt::Display for ExtensionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "extension {} -> {} -> {}",
            self.kernel.size(),
            self.total.size(),
            self.quotient.size()
        )?;
        writeln!(f, "  k = {:?}", self.k)?;
        writeln!(f, "  e = {:?}", self.e)?;
        if let Some(s) = &self.s {
            writeln!(f, "  s = {:?}", s)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::iso::are_isomorphic;
    use crate::monoid::direct_product;

    /// `Z2 -> Z2 x 2 -> 2` with inclusion, projection and the zero splitting.
    pub(crate) fn direct_product_diagram() -> ExtensionDiagram {
        let z2 = catalog::cyclic_group(2).shared();
        let two = catalog::meet_two().shared();
        let g = direct_product(&z2, &two).shared();
        // (a, b) = 2a + b
        ExtensionDiagram::from_parts(z2, g, two, vec![0, 2], vec![0, 1, 0, 1], Some(vec![0, 1]))
            .unwrap()
    }

    pub(crate) fn w3_diagram() -> ExtensionDiagram {
        let z2 = catalog::cyclic_group(2).shared();
        let w3 = catalog::w3().shared();
        let two = catalog::meet_two().shared();
        ExtensionDiagram::from_parts(z2, w3, two, vec![0, 1], vec![0, 0, 1], Some(vec![0, 2]))
            .unwrap()
    }

    #[test]
    fn kernels() {
        let d = direct_product_diagram();
        let (n, inc) = kernel(&d.e_hom());
        assert!(are_isomorphic(&n, &catalog::cyclic_group(2)));
        assert!(inc.is_injective());

        let (n, _) = kernel(&w3_diagram().e_hom());
        assert!(are_isomorphic(&n, &catalog::cyclic_group(2)));

        let m = catalog::klein_four().shared();
        let (n, _) = kernel(&MonoidHom::identity_on(&m));
        assert_eq!(n.size(), 1);
    }

    #[test]
    fn extension_checks() {
        assert_eq!(check_extension(&direct_product_diagram()), Ok(()));
        assert_eq!(check_extension(&w3_diagram()), Ok(()));
        let d = direct_product_diagram();
        let bad = ExtensionDiagram::from_parts(
            d.kernel().clone(),
            d.total().clone(),
            d.quotient().clone(),
            d.k_map().to_vec(),
            vec![0; 4],
            None,
        )
        .unwrap();
        assert!(check_extension(&bad).is_err());
    }

    #[test]
    fn classify_direct_product() {
        let c = classify(&direct_product_diagram()).unwrap();
        assert!(c.is_schreier && c.is_special_schreier);
        assert_eq!(c.is_schreier_split, Some(true));
        assert_eq!(c.is_leech_normal, Some(true));
    }

    #[test]
    fn classify_w3() {
        let c = classify(&w3_diagram()).unwrap();
        assert!(c.is_weakly_schreier && !c.is_schreier);
        assert!(c.is_special_weakly_schreier && !c.is_special_schreier);
        assert_eq!(c.is_leech_normal, Some(true));
        assert_eq!(c.is_weakly_schreier_split, Some(true));
        assert_eq!(c.is_schreier_split, Some(false));
        assert_eq!(c.generators, Some(vec![0, 2]));
    }

    #[test]
    fn leech_normal_is_not_applicable_for_non_group_kernel() {
        let two = catalog::meet_two().shared();
        let triv = catalog::trivial().shared();
        let d = ExtensionDiagram::from_parts(
            two.clone(),
            two.clone(),
            triv,
            vec![0, 1],
            vec![0, 0],
            Some(vec![0]),
        )
        .unwrap();
        let c = classify(&d).unwrap();
        assert_eq!(c.is_leech_normal, None);
        assert!(c.is_schreier);
    }

    #[test]
    fn normalisers() {
        let g = catalog::klein_four();
        assert_eq!(right_normaliser(&g, &[0, 1]), vec![0, 1, 2, 3]);
        assert_eq!(right_normaliser(&catalog::w3(), &[0, 1]), vec![0, 1, 2]);
        // in the full transformations of two points, the constants do not
        // normalise the swap subgroup from the left: c*swap = c, swap*c != c
        let t = catalog::full_transformations(2);
        let units = t.units();
        let norm = right_normaliser(&t, &units);
        assert!(norm.contains(&t.identity()));
        assert!(t.is_submonoid(&norm));
    }

    #[test]
    fn glueing_identity_map_is_three_chain() {
        let two = catalog::meet_two().shared();
        let d = artin_glueing(&two, &two, &[0, 1]).unwrap();
        assert_eq!(d.total().size(), 3);
        assert!(are_isomorphic(d.total(), &catalog::chain(3)));
        let c = classify(&d).unwrap();
        assert_eq!(c.is_weakly_schreier_split, Some(true));
        assert_eq!(c.is_schreier_split, Some(false));
    }

    #[test]
    fn glueing_constant_top_is_direct_product() {
        let two = catalog::meet_two().shared();
        let d = artin_glueing(&two, &two, &[0, 0]).unwrap();
        assert!(are_isomorphic(d.total(), &direct_product(&two, &two)));
    }

    #[test]
    fn glueing_into_three_chain() {
        let two = catalog::meet_two().shared();
        let c3 = catalog::chain(3).shared();
        let d = artin_glueing(&two, &c3, &[0, 1]).unwrap();
        assert_eq!(d.total().size(), 5);
        assert_eq!(classify(&d).unwrap().is_weakly_schreier_split, Some(true));
    }

    #[test]
    fn glueing_rejects_bad_maps() {
        let two = catalog::meet_two().shared();
        let z2 = catalog::cyclic_group(2).shared();
        assert_eq!(artin_glueing(&z2, &two, &[0, 1]).unwrap_err(), Error::NotASemilattice);
        let c3 = catalog::chain(3).shared();
        let sq = direct_product(&two, &two).shared();
        // sq elements: 0 = (top,top), 1 = (top,bot), 2 = (bot,top), 3 = (bot,bot)
        // f(1) = 1, f(2) = 2 but f(1 ^ 2) = f(2) = 2 != 1 ^ 2 = 3
        let err = artin_glueing(&c3, &sq, &[0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::NotMeetPreserving(_, _)));
    }

    #[test]
    fn extension_isomorphism_respects_structure() {
        let d = w3_diagram();
        let m = find_extension_isomorphism(&d, &d, true).unwrap();
        assert_eq!(m, vec![0, 1, 2]);
        assert!(find_extension_isomorphism(&direct_product_diagram(), &d, false).is_none());
        // a non-bijective morphism of split extensions: Z2 x 2 -> W3
        let f = find_extension_morphism(&direct_product_diagram(), &d, true).unwrap();
        assert_eq!(f, vec![0, 2, 1, 2]);
    }
}
