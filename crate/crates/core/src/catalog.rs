//! Small named monoids used throughout examples and tests.

use itertools::Itertools;

use crate::monoid::{trusted, FiniteMonoid};

fn named(m: FiniteMonoid, names: &[&str]) -> FiniteMonoid {
    m.with_names(names.iter().map(|s| s.to_string()).collect()).expect("name count matches")
}

pub fn trivial() -> FiniteMonoid {
    trusted(1, 0, vec![0])
}

/// Additive cyclic group `Z_n`, element `i` is the residue `i`.
pub fn cyclic_group(n: usize) -> FiniteMonoid {
    assert!(n > 0);
    let table = (0..n * n).map(|x| (x / n + x % n) % n).collect();
    trusted(n, 0, table)
}

/// `Z_2 x Z_2`.
pub fn klein_four() -> FiniteMonoid {
    trusted(4, 0, (0..16).map(|x| (x / 4) ^ (x % 4)).collect())
}

/// The chain `top = 0 > 1 > ... > n-1` under meet; identity is the top.
pub fn chain(n: usize) -> FiniteMonoid {
    assert!(n > 0);
    trusted(n, 0, (0..n * n).map(|x| (x / n).max(x % n)).collect())
}

/// `2 = {top, bot}` under meet.
pub fn meet_two() -> FiniteMonoid {
    named(chain(2), &["top", "bot"])
}

/// `m` with a new absorbing element appended at index `m.size()`.
pub fn adjoin_zero(m: &FiniteMonoid) -> FiniteMonoid {
    let n = m.size();
    let z = n;
    let mut table = Vec::with_capacity((n + 1) * (n + 1));
    for a in 0..=n {
        for b in 0..=n {
            table.push(if a == z || b == z { z } else { m.mul(a, b) });
        }
    }
    trusted(n + 1, m.identity(), table)
}

/// `Z_2` with an absorbing element: `{0, 1, inf}`.
pub fn w3() -> FiniteMonoid {
    named(adjoin_zero(&cyclic_group(2)), &["0", "1", "inf"])
}

/// The symmetric group on `n` points; permutations in lexicographic order,
/// with `(a*b)(i) = a(b(i))`.
pub fn symmetric_group(n: usize) -> FiniteMonoid {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let mut table = Vec::with_capacity(perms.len() * perms.len());
    for a in &perms {
        for b in &perms {
            let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
            table.push(index(&c));
        }
    }
    trusted(perms.len(), 0, table)
}

/// Full transformation monoid on `n` points, maps in lexicographic order of
/// their image vectors, `(a*b)(i) = a(b(i))`.
pub fn full_transformations(n: usize) -> FiniteMonoid {
    let maps: Vec<Vec<usize>> =
        (0..n).map(|_| 0..n).multi_cartesian_product().collect();
    let maps = if n == 0 { vec![vec![]] } else { maps };
    let index = |p: &[usize]| maps.iter().position(|q| q == p).unwrap();
    let identity = index(&(0..n).collect::<Vec<_>>());
    let mut table = Vec::with_capacity(maps.len() * maps.len());
    for a in &maps {
        for b in &maps {
            let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
            table.push(index(&c));
        }
    }
    trusted(maps.len(), identity, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_validate() {
        for m in [
            trivial(),
            cyclic_group(3),
            klein_four(),
            chain(3),
            meet_two(),
            w3(),
            symmetric_group(3),
            full_transformations(2),
        ] {
            FiniteMonoid::from_flat(m.size(), m.identity(), m.table().to_vec()).unwrap();
        }
    }

    #[test]
    fn s3_is_a_nonabelian_group() {
        let s3 = symmetric_group(3);
        assert_eq!(s3.size(), 6);
        assert!(s3.is_group());
        assert!(!s3.is_commutative());
    }
}
