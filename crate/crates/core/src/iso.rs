//! Backtracking search for homomorphisms and isomorphisms.

use crate::monoid::{FiniteMonoid, MonoidHom, MonoidRef};

/// Visits every hom `dom -> cod` whose value at each `x` is drawn from
/// `candidates[x]`, in lexicographic order; `visit` returns `false` to stop.
pub(crate) fn for_each_hom(
    dom: &FiniteMonoid,
    cod: &FiniteMonoid,
    candidates: &[Vec<usize>],
    injective: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = dom.size();
    debug_assert_eq!(candidates.len(), n);
    // pairs (a, b) whose constraint becomes checkable once max(a, b, ab) is assigned
    let mut due: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            let last = a.max(b).max(dom.mul(a, b));
            due[last].push((a, b));
        }
    }
    struct Search<'a> {
        dom: &'a FiniteMonoid,
        cod: &'a FiniteMonoid,
        candidates: &'a [Vec<usize>],
        due: Vec<Vec<(usize, usize)>>,
        injective: bool,
        map: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn go(&mut self, x: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if x == self.map.len() {
                return visit(&self.map);
            }
            for i in 0..self.candidates[x].len() {
                let y = self.candidates[x][i];
                if self.injective && self.used[y] {
                    continue;
                }
                self.map[x] = y;
                let (dom, cod, map) = (self.dom, self.cod, &self.map);
                if self.due[x].iter().all(|&(a, b)| map[dom.mul(a, b)] == cod.mul(map[a], map[b])) {
                    self.used[y] = true;
                    let go_on = self.go(x + 1, visit);
                    self.used[y] = false;
                    if !go_on {
                        return false;
                    }
                }
            }
            self.map[x] = usize::MAX;
            true
        }
    }
    let mut s = Search {
        dom,
        cod,
        candidates,
        due,
        injective,
        map: vec![usize::MAX; n],
        used: vec![false; cod.size()],
    };
    s.go(0, visit);
}

/// The lexicographically first hom allowed by `candidates`.
pub(crate) fn search_hom(
    dom: &FiniteMonoid,
    cod: &FiniteMonoid,
    candidates: &[Vec<usize>],
    injective: bool,
) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_hom(dom, cod, candidates, injective, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// Every hom `dom -> cod` sending the identity to the identity, in
/// lexicographic order.
pub fn all_homs(dom: &FiniteMonoid, cod: &FiniteMonoid) -> Vec<Vec<usize>> {
    let candidates: Vec<Vec<usize>> = dom
        .elements()
        .map(|x| if x == dom.identity() { vec![cod.identity()] } else { cod.elements().collect() })
        .collect();
    let mut out = Vec::new();
    for_each_hom(dom, cod, &candidates, false, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

/// Isomorphism-invariant profile of an element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementProfile {
    pub idempotent: bool,
    pub unit: bool,
    pub index: usize,
    pub period: usize,
    left_fixed: usize,
    right_fixed: usize,
    square_roots: usize,
}

pub fn element_profile(m: &FiniteMonoid, x: usize) -> ElementProfile {
    let (index, period) = m.index_and_period(x);
    ElementProfile {
        idempotent: m.is_idempotent(x),
        unit: m.is_unit(x),
        index,
        period,
        left_fixed: m.elements().filter(|&y| m.mul(y, x) == x).count(),
        right_fixed: m.elements().filter(|&y| m.mul(x, y) == x).count(),
        square_roots: m.elements().filter(|&y| m.mul(y, y) == x).count(),
    }
}

/// Sorted multiset of element profiles; equal for isomorphic monoids.
pub fn monoid_profile(m: &FiniteMonoid) -> Vec<ElementProfile> {
    let mut p: Vec<ElementProfile> = m.elements().map(|x| element_profile(m, x)).collect();
    p.sort();
    p
}

/// First bijective homomorphism `a -> b` in lexicographic order, if any.
pub fn find_isomorphism_map(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let pa: Vec<ElementProfile> = a.elements().map(|x| element_profile(a, x)).collect();
    let pb: Vec<ElementProfile> = b.elements().map(|x| element_profile(b, x)).collect();
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let candidates: Vec<Vec<usize>> = a
        .elements()
        .map(|x| {
            if x == a.identity() {
                vec![b.identity()]
            } else {
                b.elements().filter(|&y| pb[y] == pa[x]).collect()
            }
        })
        .collect();
    search_hom(a, b, &candidates, true)
}

/// Same as [`find_isomorphism_map`], packaged as a hom between shared monoids.
pub fn find_isomorphism(a: &MonoidRef, b: &MonoidRef) -> Option<MonoidHom> {
    find_isomorphism_map(a, b).map(|map| MonoidHom { domain: a.clone(), codomain: b.clone(), map })
}

pub fn are_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    find_isomorphism_map(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::monoid::check_hom;

    #[test]
    fn endomorphisms_of_small_monoids() {
        assert_eq!(all_homs(&catalog::cyclic_group(2), &catalog::cyclic_group(2)).len(), 2);
        assert_eq!(all_homs(&catalog::cyclic_group(3), &catalog::cyclic_group(3)).len(), 3);
        // 2 -> 2: the identity and the constant map at top
        assert_eq!(all_homs(&catalog::meet_two(), &catalog::meet_two()), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn z2_to_itself_is_identity() {
        let z2 = catalog::cyclic_group(2).shared();
        let f = find_isomorphism(&z2, &z2).unwrap();
        assert_eq!(f.map, vec![0, 1]);
    }

    #[test]
    fn z4_is_not_klein() {
        assert!(!are_isomorphic(&catalog::cyclic_group(4), &catalog::klein_four()));
    }

    #[test]
    fn w3_is_not_z3() {
        assert!(!are_isomorphic(&catalog::w3(), &catalog::cyclic_group(3)));
    }

    #[test]
    fn relabelled_s3_is_found() {
        let s3 = catalog::symmetric_group(3);
        // conjugate the table by a permutation fixing the identity
        let p = [0, 3, 5, 1, 2, 4];
        let mut inv = [0; 6];
        for (i, &pi) in p.iter().enumerate() {
            inv[pi] = i;
        }
        let table: Vec<usize> =
            (0..36).map(|x| p[s3.mul(inv[x / 6], inv[x % 6])]).collect();
        let t = FiniteMonoid::from_flat(6, 0, table).unwrap().shared();
        let s3 = s3.shared();
        let f = find_isomorphism(&s3, &t).unwrap();
        check_hom(&f).unwrap();
        assert!(f.is_bijective());
    }
}
