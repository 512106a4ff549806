//! Finite monoids stored as multiplication tables, and homomorphisms between them.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite monoid on the elements `0..size` with an explicit identity.
///
/// The identity is not required to be element `0`; imported tables keep
/// whatever order they were written in.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    table: Vec<usize>,
    names: Option<Vec<String>>,
}

/// Shared handle used wherever a monoid is referenced by several homs.
pub type MonoidRef = Arc<FiniteMonoid>;

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        // names are display labels only
        self.size == other.size && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FiniteMonoid {}

impl Hash for FiniteMonoid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.identity.hash(state);
        self.table.hash(state);
    }
}

/// Validates a row-major table and returns the monoid it describes.
pub fn validate_monoid(size: usize, identity: usize, table: &[Vec<usize>]) -> Result<FiniteMonoid> {
    if size == 0 {
        return Err(Error::Shape("a monoid needs at least one element".into()));
    }
    if table.len() != size || table.iter().any(|row| row.len() != size) {
        return Err(Error::Shape(format!("table must be {size}x{size}")));
    }
    let flat: Vec<usize> = table.iter().flatten().copied().collect();
    FiniteMonoid::from_flat(size, identity, flat)
}

impl FiniteMonoid {
    /// Builds a monoid from a row-major flat table of length `size * size`.
    pub fn from_flat(size: usize, identity: usize, table: Vec<usize>) -> Result<Self> {
        if size == 0 || table.len() != size * size {
            return Err(Error::Shape(format!("table must hold {} entries", size * size)));
        }
        if let Some(pos) = table.iter().position(|&v| v >= size) {
            return Err(Error::OutOfRange { a: pos / size, b: pos % size });
        }
        if identity >= size {
            return Err(Error::BadIdentity(identity));
        }
        let m = FiniteMonoid { size, identity, table, names: None };
        for x in 0..size {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(Error::BadIdentity(x));
            }
        }
        if let Some((a, b, c)) = m.associativity_failure() {
            return Err(Error::NotAssociative { a, b, c });
        }
        Ok(m)
    }

    pub fn from_rows(identity: usize, rows: &[Vec<usize>]) -> Result<Self> {
        validate_monoid(rows.len(), identity, rows)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::Shape(format!("expected {} names, got {}", self.size, names.len())));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn shared(self) -> MonoidRef {
        Arc::new(self)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.size {
            for b in 0..self.size {
                let ab = self.mul(a, b);
                for c in 0..self.size {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (a + 1..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// Two-sided inverse of `x`, if it has one.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        (0..self.size).find(|&y| self.mul(x, y) == self.identity && self.mul(y, x) == self.identity)
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.inverse(x).is_some()
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_unit(x)).collect()
    }

    pub fn is_group(&self) -> bool {
        (0..self.size).all(|x| self.is_unit(x))
    }

    pub fn is_abelian_group(&self) -> bool {
        self.is_group() && self.is_commutative()
    }

    /// True when every element is idempotent and the monoid is commutative,
    /// i.e. the monoid is a meet-semilattice with the identity as top.
    pub fn is_semilattice(&self) -> bool {
        self.is_commutative() && (0..self.size).all(|x| self.is_idempotent(x))
    }

    /// `(index, period)` of the cyclic submonoid generated by `x`:
    /// the powers `x^1, x^2, ...` first repeat at `x^(index + period) = x^index`.
    pub fn index_and_period(&self, x: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.size];
        let mut power = x;
        let mut exponent = 1;
        loop {
            if seen[power] != usize::MAX {
                return (seen[power], exponent - seen[power]);
            }
            seen[power] = exponent;
            power = self.mul(power, x);
            exponent += 1;
        }
    }

    /// Checks that a set of elements is closed under products and contains the identity.
    pub fn is_submonoid(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &x in elems {
            if x >= self.size {
                return false;
            }
            member[x] = true;
        }
        member[self.identity]
            && elems.iter().all(|&a| elems.iter().all(|&b| member[self.mul(a, b)]))
    }
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "monoid of order {} (identity {})", self.size, self.name(self.identity))?;
        for a in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|b| self.name(self.mul(a, b))).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A map between finite monoids given by the image of each domain element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    pub domain: MonoidRef,
    pub codomain: MonoidRef,
    pub map: Vec<usize>,
}

/// Reason a map fails to be a monoid homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum HomViolation {
    Shape { expected: usize, found: usize },
    OutOfRange { element: usize },
    Identity,
    Product { a: usize, b: usize },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Shape { expected, found } => {
                write!(f, "map has {found} entries, domain has {expected} elements")
            }
            HomViolation::OutOfRange { element } => {
                write!(f, "image of {element} is outside the codomain")
            }
            HomViolation::Identity => write!(f, "identity is not preserved"),
            HomViolation::Product { a, b } => write!(f, "f({a}*{b}) != f({a})*f({b})"),
        }
    }
}

impl MonoidHom {
    /// Builds the hom after checking it with [`check_hom`].
    pub fn new(domain: MonoidRef, codomain: MonoidRef, map: Vec<usize>) -> Result<Self> {
        let hom = MonoidHom { domain, codomain, map };
        check_hom(&hom).map_err(Error::NotAHom)?;
        Ok(hom)
    }

    pub fn identity_on(m: &MonoidRef) -> Self {
        MonoidHom { domain: m.clone(), codomain: m.clone(), map: m.elements().collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonoidHom) -> Result<MonoidHom> {
        if *self.codomain != *other.domain {
            return Err(Error::Incompatible("composed homs do not meet".into()));
        }
        Ok(MonoidHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }
}

/// Checks both homomorphism laws, reporting the first failing pair.
pub fn check_hom(f: &MonoidHom) -> std::result::Result<(), HomViolation> {
    check_hom_map(&f.domain, &f.codomain, &f.map)
}

pub(crate) fn check_hom_map(
    dom: &FiniteMonoid,
    cod: &FiniteMonoid,
    map: &[usize],
) -> std::result::Result<(), HomViolation> {
    if map.len() != dom.size() {
        return Err(HomViolation::Shape { expected: dom.size(), found: map.len() });
    }
    if let Some(element) = map.iter().position(|&y| y >= cod.size()) {
        return Err(HomViolation::OutOfRange { element });
    }
    if map[dom.identity()] != cod.identity() {
        return Err(HomViolation::Identity);
    }
    for a in dom.elements() {
        for b in dom.elements() {
            if map[dom.mul(a, b)] != cod.mul(map[a], map[b]) {
                return Err(HomViolation::Product { a, b });
            }
        }
    }
    Ok(())
}

/// Componentwise product; `(a, b)` is encoded as `a * |B| + b`.
pub fn direct_product(a: &FiniteMonoid, b: &FiniteMonoid) -> FiniteMonoid {
    let (na, nb) = (a.size(), b.size());
    let mut table = Vec::with_capacity(na * nb * na * nb);
    for x in 0..na * nb {
        for y in 0..na * nb {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            table.push(a.mul(xa, ya) * nb + b.mul(xb, yb));
        }
    }
    let names = match (a.names(), b.names()) {
        (None, None) => None,
        _ => Some(
            (0..na * nb).map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb))).collect(),
        ),
    };
    FiniteMonoid {
        size: na * nb,
        identity: a.identity() * nb + b.identity(),
        table,
        names,
    }
}

/// Multiplication tables that are already known to be valid, built by
/// constructors in this crate. Associativity is still debug-checked.
pub(crate) fn trusted(size: usize, identity: usize, table: Vec<usize>) -> FiniteMonoid {
    let m = FiniteMonoid { size, identity, table, names: None };
    debug_assert!(m.associativity_failure().is_none());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn z2_and_meet_monoid_are_valid() {
        let z2 = validate_monoid(2, 0, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(z2.is_group() && z2.is_commutative());
        let two = validate_monoid(2, 0, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(!two.is_group());
        assert_eq!(two.units(), vec![0]);
    }

    #[test]
    fn wrong_identity_is_rejected() {
        let err = validate_monoid(2, 1, &[vec![0, 1], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::BadIdentity(_)));
    }

    #[test]
    fn out_of_range_and_non_associative() {
        let err = validate_monoid(2, 0, &[vec![0, 5], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::OutOfRange { a: 0, b: 1 });
        // identity 0; 1*1 = 2, 2*x = 1, 1*2 = 1 ...
        let rows = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
        let err = validate_monoid(3, 0, &rows).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }));
    }

    #[test]
    fn w3_is_not_a_group() {
        let w3 = catalog::w3();
        assert!(!w3.is_group());
        assert_eq!(w3.units(), vec![0, 1]);
        assert!(w3.is_commutative());
    }

    #[test]
    fn hom_checks() {
        let z2 = catalog::cyclic_group(2).shared();
        assert!(check_hom(&MonoidHom::identity_on(&z2)).is_ok());
        let bad = MonoidHom { domain: z2.clone(), codomain: z2.clone(), map: vec![1, 1] };
        assert_eq!(check_hom(&bad), Err(HomViolation::Identity));

        let w3 = catalog::w3().shared();
        let two = catalog::meet_two().shared();
        let e = MonoidHom { domain: w3, codomain: two, map: vec![0, 0, 1] };
        assert!(check_hom(&e).is_ok());
    }

    #[test]
    fn direct_products() {
        let z2 = catalog::cyclic_group(2);
        let p = direct_product(&z2, &catalog::trivial());
        assert_eq!(p.size(), 2);
        let two = catalog::meet_two();
        let z2x2 = direct_product(&z2, &two);
        assert_eq!(z2x2.size(), 4);
        assert!(z2x2.is_commutative());
        let sq = direct_product(&two, &two);
        assert!(sq.is_semilattice());
        assert_eq!(sq.units(), vec![sq.identity()]);
    }

    #[test]
    fn index_and_period_of_cyclic_elements() {
        let z4 = catalog::cyclic_group(4);
        assert_eq!(z4.index_and_period(1), (1, 4));
        assert_eq!(z4.index_and_period(2), (1, 2));
        let w3 = catalog::w3();
        assert_eq!(w3.index_and_period(2), (1, 1));
    }
}
