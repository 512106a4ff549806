//! Congruences on finite monoids and the quotients they define.

use crate::monoid::{trusted, FiniteMonoid, MonoidHom, MonoidRef};

/// A partition of a monoid's elements compatible with multiplication.
///
/// Class indices are assigned in order of first appearance, so two equal
/// congruences always have identical `class_of` vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub class_of: Vec<usize>,
    pub class_count: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Renumbers arbitrary labels into first-appearance order.
pub(crate) fn normalize_labels(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::with_capacity(labels.len());
    for &l in labels {
        let id = match seen.iter().find(|(k, _)| *k == l) {
            Some(&(_, id)) => id,
            None => {
                seen.push((l, seen.len()));
                seen.len() - 1
            }
        };
        out.push(id);
    }
    (out, seen.len())
}

impl Congruence {
    pub fn from_labels(labels: &[usize]) -> Self {
        let (class_of, class_count) = normalize_labels(labels);
        Congruence { class_of, class_count }
    }

    pub fn equality(size: usize) -> Self {
        Congruence { class_of: (0..size).collect(), class_count: size }
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == class).collect()
    }
}

/// Verifies the congruence invariants; returns the offending quadruple
/// `(a, a', b, b')` when compatibility fails.
pub fn check_congruence(m: &FiniteMonoid, c: &Congruence) -> Result<(), Option<[usize; 4]>> {
    if c.class_of.len() != m.size() || c.class_of.iter().any(|&k| k >= c.class_count) {
        return Err(None);
    }
    let mut hit = vec![false; c.class_count];
    for &k in &c.class_of {
        hit[k] = true;
    }
    if hit.iter().any(|&h| !h) {
        return Err(None);
    }
    for a in m.elements() {
        for a2 in m.elements().filter(|&a2| c.same(a, a2)) {
            for b in m.elements() {
                for b2 in m.elements().filter(|&b2| c.same(b, b2)) {
                    if !c.same(m.mul(a, b), m.mul(a2, b2)) {
                        return Err(Some([a, a2, b, b2]));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The smallest congruence relating every given pair.
pub fn congruence_generated(m: &FiniteMonoid, pairs: &[(usize, usize)]) -> Congruence {
    let n = m.size();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    // Every class is the equivalence closure of (x, root(x)); closing those
    // generating pairs under one-sided translations closes the whole relation.
    loop {
        let mut changed = false;
        for a in 0..n {
            let r = uf.find(a);
            if r == a {
                continue;
            }
            for x in 0..n {
                changed |= uf.union(m.mul(x, a), m.mul(x, r));
                changed |= uf.union(m.mul(a, x), m.mul(r, x));
            }
        }
        if !changed {
            break;
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_labels(&roots)
}

/// Quotient monoid on class indices together with the projection.
pub fn quotient(m: &MonoidRef, c: &Congruence) -> (MonoidRef, MonoidHom) {
    let k = c.class_count;
    let reps: Vec<usize> = (0..k).map(|cls| c.class_of.iter().position(|&x| x == cls).unwrap()).collect();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(c.class_of[m.mul(a, b)]);
        }
    }
    let q = trusted(k, c.class_of[m.identity()], table).shared();
    let proj = MonoidHom { domain: m.clone(), codomain: q.clone(), map: c.class_of.clone() };
    (q, proj)
}

/// Kernel-pair congruence of a hom: `a ~ b` iff `f(a) = f(b)`.
pub fn kernel_pair(f: &MonoidHom) -> Congruence {
    Congruence::from_labels(&f.map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::iso::find_isomorphism;
    use crate::monoid::{check_hom, direct_product};

    #[test]
    fn empty_pairs_give_equality() {
        let m = catalog::w3();
        let c = congruence_generated(&m, &[]);
        assert_eq!(c.class_count, 3);
        assert_eq!(c, Congruence::equality(3));
    }

    #[test]
    fn z2_times_two_collapses_kernel() {
        let z2 = catalog::cyclic_group(2);
        let two = catalog::meet_two();
        let p = direct_product(&z2, &two).shared();
        // (1, top) = 1*2 + 0 = 2, (0, top) = 0
        let c = congruence_generated(&p, &[(2, 0)]);
        assert_eq!(c.class_count, 2);
        assert!(c.same(0, 2) && c.same(1, 3) && !c.same(0, 1));
        check_congruence(&p, &c).unwrap();
        let (q, proj) = quotient(&p, &c);
        assert!(find_isomorphism(&q, &two.shared()).is_some());
        assert!(proj.is_surjective());
        check_hom(&proj).unwrap();
    }

    #[test]
    fn total_congruence_on_two() {
        let two = catalog::meet_two().shared();
        let c = congruence_generated(&two, &[(0, 1)]);
        assert_eq!(c.class_count, 1);
        let (q, _) = quotient(&two, &c);
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn quotient_by_equality_is_isomorphic() {
        let m = catalog::symmetric_group(3).shared();
        let (q, proj) = quotient(&m, &Congruence::equality(6));
        assert!(find_isomorphism(&q, &m).is_some());
        assert!(proj.is_bijective());
    }
}
