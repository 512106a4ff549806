//! All monoids of a small order, up to isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::iso::{are_isomorphic, monoid_profile, ElementProfile};
use crate::monoid::{trusted, FiniteMonoid};

use super::MAX_MONOID_ORDER;

/// Pairwise non-isomorphic monoids of one order, in discovery order.
#[derive(Clone, Debug)]
pub struct MonoidCatalog {
    pub order: usize,
    pub monoids: Vec<FiniteMonoid>,
}

const UNSET: usize = usize::MAX;

/// Partial multiplication table with identity `0`.
pub(crate) struct PartialTable {
    pub n: usize,
    pub t: Vec<usize>,
}

impl PartialTable {
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b]
    }

    /// Checks every associativity instance that uses the cell `(a, b)` and
    /// whose lookups are all defined.
    pub fn consistent_at(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let assoc = |x: usize, y: usize, z: usize| -> bool {
            let xy = self.get(x, y);
            if xy == UNSET {
                return true;
            }
            let l = self.get(xy, z);
            if l == UNSET {
                return true;
            }
            let yz = self.get(y, z);
            if yz == UNSET {
                return true;
            }
            let r = self.get(x, yz);
            r == UNSET || l == r
        };
        for z in 0..n {
            if !assoc(a, b, z) || !assoc(z, a, b) {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                // (xy) z with xy = a, z = b
                if self.get(x, y) == a && !assoc(x, y, b) {
                    return false;
                }
                // x (yz) with x = a, yz = b
                if self.get(x, y) == b && !assoc(a, x, y) {
                    return false;
                }
            }
        }
        true
    }
}

/// Every monoid table on `{0, .., n-1}` with identity `0`, each visited once.
pub(crate) fn for_each_labelled_monoid(n: usize, visit: &mut dyn FnMut(&[usize])) {
    let mut t = vec![UNSET; n * n];
    for x in 0..n {
        t[x] = x;
        t[x * n] = x;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let mut pt = PartialTable { n, t };
    fn go(pt: &mut PartialTable, cells: &[(usize, usize)], i: usize, visit: &mut dyn FnMut(&[usize])) {
        if i == cells.len() {
            visit(&pt.t);
            return;
        }
        let (a, b) = cells[i];
        for v in 0..pt.n {
            pt.t[a * pt.n + b] = v;
            if pt.consistent_at(a, b) {
                go(pt, cells, i + 1, visit);
            }
        }
        pt.t[a * pt.n + b] = UNSET;
    }
    go(&mut pt, &cells, 0, visit);
}

/// All monoids of order `n` up to isomorphism.
///
/// The catalog for orders 1 to 5 has 1, 2, 7, 35 and 228 members.
pub fn enumerate_monoids(n: usize) -> Result<MonoidCatalog> {
    if n == 0 || n > MAX_MONOID_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let mut monoids: Vec<FiniteMonoid> = Vec::new();
    let mut buckets: HashMap<Vec<ElementProfile>, Vec<usize>> = HashMap::new();
    for_each_labelled_monoid(n, &mut |t| {
        let m = trusted(n, 0, t.to_vec());
        let key = monoid_profile(&m);
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().all(|&i| !are_isomorphic(&monoids[i], &m)) {
            bucket.push(monoids.len());
            monoids.push(m);
        }
    });
    Ok(MonoidCatalog { order: n, monoids })
}
