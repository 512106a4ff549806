//! Every extension of `H` by `N` up to a total size, grouped into
//! isomorphism classes of extensions.
//!
//! The main search fills the multiplication table of `G` directly: the
//! carrier is laid out fiber by fiber, the identity fiber holding `k(N)` as
//! `k(i) = i`, then one block per other `h` in ascending order. Products are
//! constrained to the fiber `e(x) e(y)`. In split mode `s(h)` is the first
//! element of its fiber and `s` is fixed to be a hom up front.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{check_extension, classify, find_extension_isomorphism, ExtensionClass, ExtensionDiagram};
use crate::iso::{element_profile, for_each_hom, ElementProfile};
use crate::monoid::{trusted, FiniteMonoid, MonoidRef};

use super::monoids::{enumerate_monoids, PartialTable};
use super::{MAX_MONOID_ORDER, MAX_TOTAL_SIZE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Extensions `(k, e)`.
    All,
    /// Split extensions `(k, e, s)`.
    Split,
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub diagram: ExtensionDiagram,
    pub class: ExtensionClass,
    pub iso_class_id: usize,
}

/// One entry per isomorphism class, in discovery order; `iso_class_id` is
/// the entry's position.
#[derive(Clone, Debug)]
pub struct ExtensionCensus {
    pub kernel: MonoidRef,
    pub quotient: MonoidRef,
    pub mode: CensusMode,
    pub entries: Vec<CensusEntry>,
    keys: Vec<Key>,
}

type Key = Vec<(usize, ElementProfile)>;

fn diagram_key(d: &ExtensionDiagram) -> Key {
    let g = d.total();
    let mut key: Key = g.elements().map(|x| (d.e(x), element_profile(g, x))).collect();
    key.sort();
    key
}

/// Accumulates diagrams into isomorphism classes.
struct Classes {
    mode: CensusMode,
    reps: Vec<ExtensionDiagram>,
    buckets: HashMap<Key, Vec<usize>>,
    entries: Vec<CensusEntry>,
}

impl Classes {
    fn new(mode: CensusMode) -> Self {
        Classes { mode, reps: Vec::new(), buckets: HashMap::new(), entries: Vec::new() }
    }

    /// Adds `d` unless it is isomorphic to a diagram seen before; rejected
    /// non-extensions are remembered so their relabelings are skipped too.
    fn offer(&mut self, d: ExtensionDiagram) {
        let split = self.mode == CensusMode::Split;
        let key = diagram_key(&d);
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| find_extension_isomorphism(&self.reps[i], &d, split).is_some()) {
            return;
        }
        bucket.push(self.reps.len());
        if check_extension(&d).is_ok() {
            let class = classify(&d).expect("checked extension");
            let id = self.entries.len();
            self.entries.push(CensusEntry { diagram: d.clone(), class, iso_class_id: id });
        }
        self.reps.push(d);
    }
}

impl Classes {
    fn finish(self, n: &MonoidRef, h: &MonoidRef) -> ExtensionCensus {
        let keys = self.entries.iter().map(|e| diagram_key(&e.diagram)).collect();
        ExtensionCensus { kernel: n.clone(), quotient: h.clone(), mode: self.mode, entries: self.entries, keys }
    }
}

impl ExtensionCensus {
    /// The class of an arbitrary diagram over the same `N` and `H`.
    pub fn locate(&self, d: &ExtensionDiagram) -> Option<usize> {
        let split = self.mode == CensusMode::Split;
        let key = diagram_key(d);
        self.entries
            .iter()
            .zip(&self.keys)
            .filter(|(_, k)| **k == key)
            .find(|(e, _)| find_extension_isomorphism(&e.diagram, d, split).is_some())
            .map(|(e, _)| e.iso_class_id)
    }

    pub fn count(&self, pred: impl Fn(&ExtensionClass) -> bool) -> usize {
        self.entries.iter().filter(|e| pred(&e.class)).count()
    }
}

/// Fiber sizes for the non-identity elements of `H`, each in `1..=cap`,
/// with total size at most `max_total`.
fn fiber_layouts(others: usize, ns: usize, cap: usize, max_total: usize) -> Vec<Vec<usize>> {
    if ns > max_total {
        return Vec::new();
    }
    if others == 0 {
        return vec![Vec::new()];
    }
    (0..others)
        .map(|_| 1..=cap)
        .multi_cartesian_product()
        .filter(|sizes| ns + sizes.iter().sum::<usize>() <= max_total)
        .collect()
}

const UNSET: usize = usize::MAX;

/// Restricts fiber `h` to the orbit `N u_h` of its first element, labelled
/// in order of first appearance as `n` runs through `N`.
struct Cover {
    /// Fiber whose orbit the cell at this position extends.
    orbit_cell: Vec<Option<usize>>,
    /// Position of the last orbit cell of each fiber.
    last: Vec<usize>,
    /// Largest label offset used so far in each fiber.
    seen: Vec<usize>,
}

struct FiberSearch<'a> {
    n: &'a MonoidRef,
    h: &'a MonoidRef,
    fiber_of: Vec<usize>,
    fibers: Vec<Vec<usize>>,
    splitting: Option<Vec<usize>>,
    cells: Vec<(usize, usize)>,
    pt: PartialTable,
    cover: Option<Cover>,
}

impl FiberSearch<'_> {
    fn run(&mut self, i: usize, out: &mut Classes) {
        if i == self.cells.len() {
            let g = trusted(self.pt.n, self.n.identity(), self.pt.t.clone()).shared();
            let k = self.n.elements().collect();
            let d = ExtensionDiagram::assemble(
                self.n.clone(),
                g,
                self.h.clone(),
                k,
                self.fiber_of.clone(),
                self.splitting.clone(),
            );
            out.offer(d);
            return;
        }
        let (a, b) = self.cells[i];
        let target = self.h.mul(self.fiber_of[a], self.fiber_of[b]);
        let size = self.fibers[target].len();
        let orbit = self.cover.as_ref().and_then(|c| c.orbit_cell[i]);
        let limit = match (orbit, &self.cover) {
            (Some(y), Some(c)) => (c.seen[y] + 2).min(size),
            _ => size,
        };
        for j in 0..limit {
            let v = self.fibers[target][j];
            self.pt.t[a * self.pt.n + b] = v;
            if !self.pt.consistent_at(a, b) {
                continue;
            }
            match (orbit, self.cover.as_mut()) {
                (Some(y), Some(c)) => {
                    let old = c.seen[y];
                    c.seen[y] = old.max(j);
                    if i != c.last[y] || c.seen[y] + 1 == size {
                        self.run(i + 1, out);
                    }
                    if let Some(c) = self.cover.as_mut() {
                        c.seen[y] = old;
                    }
                }
                _ => self.run(i + 1, out),
            }
        }
        self.pt.t[a * self.pt.n + b] = UNSET;
    }
}

fn search_layout(n: &MonoidRef, h: &MonoidRef, sizes: &[usize], mode: CensusMode, covered: bool, out: &mut Classes) {
    let (ns, one) = (n.size(), h.identity());
    let others: Vec<usize> = h.elements().filter(|&x| x != one).collect();
    let mut fiber_of = vec![one; ns];
    let mut fibers = vec![Vec::new(); h.size()];
    fibers[one] = (0..ns).collect();
    for (&x, &size) in others.iter().zip(sizes) {
        let start = fiber_of.len();
        fibers[x] = (start..start + size).collect();
        fiber_of.extend(std::iter::repeat_n(x, size));
    }
    let m = fiber_of.len();
    let id = n.identity();
    if covered && ns == 1 && m > h.size() {
        return;
    }
    let mut t = vec![UNSET; m * m];
    for a in 0..ns {
        for b in 0..ns {
            t[a * m + b] = n.mul(a, b);
        }
    }
    for x in 0..m {
        t[id * m + x] = x;
        t[x * m + id] = x;
    }
    let splitting = (mode == CensusMode::Split).then(|| {
        let s: Vec<usize> = h.elements().map(|x| if x == one { id } else { fibers[x][0] }).collect();
        for x in h.elements() {
            for y in h.elements() {
                t[s[x] * m + s[y]] = s[h.mul(x, y)];
            }
        }
        s
    });
    let pt = PartialTable { n: m, t };
    for a in 0..m {
        for b in 0..m {
            if pt.get(a, b) != UNSET && !pt.consistent_at(a, b) {
                return;
            }
        }
    }
    // row-major, so the orbit cells `(n, u_h)` come in ascending `n`
    let cells: Vec<(usize, usize)> =
        (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&(a, b)| pt.get(a, b) == UNSET).collect();
    let cover = covered.then(|| {
        let mut orbit_cell = vec![None; cells.len()];
        let mut last = vec![usize::MAX; h.size()];
        for (i, &(a, b)) in cells.iter().enumerate() {
            if a < ns && fiber_of[b] != one && fibers[fiber_of[b]][0] == b {
                orbit_cell[i] = Some(fiber_of[b]);
                last[fiber_of[b]] = i;
            }
        }
        Cover { orbit_cell, last, seen: vec![0; h.size()] }
    });
    let mut search = FiberSearch { n, h, fiber_of, fibers, splitting, cells, pt, cover };
    search.run(0, out);
}

fn check_bounds(max_total_size: usize) -> Result<()> {
    if max_total_size > MAX_TOTAL_SIZE {
        return Err(Error::OrderTooLarge(max_total_size));
    }
    Ok(())
}

/// Every extension (or split extension) of `h` by `n` with `|G| <= max_total_size`.
pub fn enumerate_extensions(
    n: &MonoidRef,
    h: &MonoidRef,
    mode: CensusMode,
    max_total_size: usize,
) -> Result<ExtensionCensus> {
    check_bounds(max_total_size)?;
    enumerate_with_fiber_cap(n, h, mode, max_total_size, max_total_size)
}

/// As [`enumerate_extensions`], with every fiber holding at most
/// `fiber_cap` elements. Fibers of weakly Schreier extensions have at most
/// `|N|` elements, so `fiber_cap = |N|` still finds all of those.
pub fn enumerate_with_fiber_cap(
    n: &MonoidRef,
    h: &MonoidRef,
    mode: CensusMode,
    max_total_size: usize,
    fiber_cap: usize,
) -> Result<ExtensionCensus> {
    check_bounds(max_total_size)?;
    let mut classes = Classes::new(mode);
    let cap = fiber_cap.min(max_total_size);
    for sizes in fiber_layouts(h.size() - 1, n.size(), cap, max_total_size) {
        search_layout(n, h, &sizes, mode, false, &mut classes);
    }
    Ok(classes.finish(n, h))
}

/// The weakly Schreier extensions of `h` by `n` (in split mode, the weakly
/// Schreier split ones), one per isomorphism class.
///
/// Each fiber is searched as the orbit `N u_h` of a fixed generator (in
/// split mode `u_h = s(h)`), which removes the relabelings inside fibers.
pub fn enumerate_weakly_schreier(
    n: &MonoidRef,
    h: &MonoidRef,
    mode: CensusMode,
    max_total_size: usize,
) -> Result<ExtensionCensus> {
    check_bounds(max_total_size)?;
    let mut classes = Classes::new(mode);
    for sizes in fiber_layouts(h.size() - 1, n.size(), n.size(), max_total_size) {
        search_layout(n, h, &sizes, mode, true, &mut classes);
    }
    classes.entries.retain(|e| match mode {
        CensusMode::All => e.class.is_weakly_schreier,
        CensusMode::Split => e.class.is_weakly_schreier_split == Some(true),
    });
    for (i, e) in classes.entries.iter_mut().enumerate() {
        e.iso_class_id = i;
    }
    Ok(classes.finish(n, h))
}

/// Same census built from the monoid catalog: every `G` of order up to
/// `max_total_size`, every injective `k`, surjective `e` and (in split mode)
/// every splitting `s`.
pub fn enumerate_extensions_via_catalog(
    n: &MonoidRef,
    h: &MonoidRef,
    mode: CensusMode,
    max_total_size: usize,
) -> Result<ExtensionCensus> {
    if max_total_size > MAX_MONOID_ORDER {
        return Err(Error::OrderTooLarge(max_total_size));
    }
    let mut classes = Classes::new(mode);
    for order in n.size().max(h.size())..=max_total_size {
        for g in enumerate_monoids(order)?.monoids {
            let g = g.shared();
            for_homs_from(n, &g, true, &mut |k| {
                for_homs_from(&g, h, false, &mut |e| {
                    if !h.elements().all(|y| e.contains(&y)) {
                        return;
                    }
                    let base = ExtensionDiagram::assemble(n.clone(), g.clone(), h.clone(), k.to_vec(), e.to_vec(), None);
                    match mode {
                        CensusMode::All => classes.offer(base),
                        CensusMode::Split => {
                            let cand: Vec<Vec<usize>> = h
                                .elements()
                                .map(|y| {
                                    if y == h.identity() {
                                        vec![g.identity()]
                                    } else {
                                        g.elements().filter(|&x| e[x] == y).collect()
                                    }
                                })
                                .collect();
                            let mut sections = Vec::new();
                            for_each_hom(h, &g, &cand, false, &mut |s| {
                                sections.push(s.to_vec());
                                true
                            });
                            for s in sections {
                                classes.offer(base.with_splitting(s).expect("section of e"));
                            }
                        }
                    }
                });
            });
        }
    }
    Ok(classes.finish(n, h))
}

fn for_homs_from(dom: &FiniteMonoid, cod: &FiniteMonoid, injective: bool, visit: &mut dyn FnMut(&[usize])) {
    let cand: Vec<Vec<usize>> = dom
        .elements()
        .map(|x| if x == dom.identity() { vec![cod.identity()] } else { cod.elements().collect() })
        .collect();
    for_each_hom(dom, cod, &cand, injective, &mut |m| {
        visit(m);
        true
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_pair_has_one_class() {
        let t = catalog::trivial().shared();
        for mode in [CensusMode::All, CensusMode::Split] {
            assert_eq!(enumerate_extensions(&t, &t, mode, 4).unwrap().entries.len(), 1);
        }
    }

    #[test]
    fn z2_by_two_split() {
        let (z2, two) = (catalog::cyclic_group(2).shared(), catalog::meet_two().shared());
        let c = enumerate_extensions(&z2, &two, CensusMode::Split, 4).unwrap();
        assert_eq!(c.count(|k| k.is_weakly_schreier_split == Some(true)), 3);
        assert_eq!(c.count(|k| k.is_schreier_split == Some(true)), 2);
    }

    #[test]
    fn z2_by_z2_special_classes() {
        let z2 = catalog::cyclic_group(2).shared();
        let c = enumerate_extensions(&z2, &z2, CensusMode::All, 4).unwrap();
        assert_eq!(c.count(|k| k.is_special_schreier), 2);
    }

    #[test]
    fn orbit_search_finds_every_weakly_schreier_class() {
        let (z2, two) = (catalog::cyclic_group(2).shared(), catalog::meet_two().shared());
        let z3 = catalog::cyclic_group(3).shared();
        for (n, h) in [(&z2, &two), (&z2, &z2), (&two, &two), (&two, &z3), (&z3, &two)] {
            let max = n.size() * h.size();
            for mode in [CensusMode::All, CensusMode::Split] {
                let full = enumerate_with_fiber_cap(n, h, mode, max, n.size()).unwrap();
                let ws = enumerate_weakly_schreier(n, h, mode, max).unwrap();
                let wanted = |c: &ExtensionClass| match mode {
                    CensusMode::All => c.is_weakly_schreier,
                    CensusMode::Split => c.is_weakly_schreier_split == Some(true),
                };
                assert_eq!(ws.entries.len(), full.count(wanted));
                for e in full.entries.iter().filter(|e| wanted(&e.class)) {
                    assert!(ws.locate(&e.diagram).is_some());
                }
            }
        }
    }

    #[test]
    fn catalog_census_agrees() {
        let (z2, two) = (catalog::cyclic_group(2).shared(), catalog::meet_two().shared());
        for mode in [CensusMode::All, CensusMode::Split] {
            let a = enumerate_extensions(&z2, &two, mode, 5).unwrap();
            let b = enumerate_extensions_via_catalog(&z2, &two, mode, 5).unwrap();
            assert_eq!(a.entries.len(), b.entries.len());
            for e in &b.entries {
                assert!(a.locate(&e.diagram).is_some());
            }
        }
    }
}
