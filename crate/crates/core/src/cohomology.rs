//! Second cohomology of `H` with coefficients in an abelian group `N`, over a
//! strict action or a relaxed action.
//!
//! Both settings run through one code path over an `H`-indexed partition of
//! `N`; the strict setting uses the equality partition. Factor sets are
//! stored with every entry `chi(h1, h2)` replaced by the representative of
//! its `~^(h1 h2)` class.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{classify, find_extension_isomorphism, ExtensionDiagram};
use crate::monoid::{FiniteMonoid, MonoidRef};
use crate::relaxed::{
    check_compatible_action, check_relaxation, extract_ws_factor_system, relaxed_actions_equal,
    relaxed_crossed_product, RelaxedAction, WSFactorSystem,
};
use crate::strict::{check_action, crossed_product, extract_factor_system, Action, FactorSystem};

/// The action the factor sets are taken relative to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    Strict(Action),
    Relaxed(RelaxedAction),
}

impl Setting {
    pub fn quotient(&self) -> &MonoidRef {
        match self {
            Setting::Strict(a) => &a.quotient,
            Setting::Relaxed(a) => &a.relaxation.quotient,
        }
    }

    pub fn kernel(&self) -> &MonoidRef {
        match self {
            Setting::Strict(a) => &a.kernel,
            Setting::Relaxed(a) => &a.relaxation.kernel,
        }
    }

    /// The setting as a relaxed action (equality relaxation when strict).
    pub fn relaxed(&self) -> RelaxedAction {
        match self {
            Setting::Strict(a) => RelaxedAction::from_action(a),
            Setting::Relaxed(a) => a.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.kernel().is_abelian_group() {
            return Err(Error::KernelNotAbelianGroup);
        }
        match self {
            Setting::Strict(a) => check_action(&a.quotient, &a.kernel, &a.alpha).map_err(Error::ActionInvalid),
            Setting::Relaxed(a) => {
                check_relaxation(&a.relaxation).map_err(Error::InvalidRelaxation)?;
                check_compatible_action(&a.relaxation, &a.alpha).map_err(Error::InvalidRelaxedAction)
            }
        }
    }

    /// The (relaxed) crossed product of `chi` over this setting.
    pub fn crossed(&self, chi: &[usize]) -> Result<ExtensionDiagram> {
        match self {
            Setting::Strict(a) => crossed_product(&FactorSystem {
                quotient: a.quotient.clone(),
                kernel: a.kernel.clone(),
                alpha: a.alpha.clone(),
                chi: chi.to_vec(),
            }),
            Setting::Relaxed(a) => relaxed_crossed_product(&WSFactorSystem {
                relaxation: a.relaxation.clone(),
                alpha: a.alpha.clone(),
                chi: chi.to_vec(),
            }),
        }
    }
}

/// Precomputed data shared by the enumerations.
struct Ctx {
    action: RelaxedAction,
    h: MonoidRef,
    n: MonoidRef,
}

impl Ctx {
    fn new(setting: &Setting) -> Result<Self> {
        setting.validate()?;
        Ok(Ctx { action: setting.relaxed(), h: setting.quotient().clone(), n: setting.kernel().clone() })
    }

    fn canon(&self, h: usize, x: usize) -> usize {
        let r = &self.action.relaxation;
        r.representative(h, r.class_of(h, x))
    }

    fn canonical(&self, chi: &[usize]) -> Vec<usize> {
        let hs = self.h.size();
        (0..chi.len()).map(|i| self.canon(self.h.mul(i / hs, i % hs), chi[i])).collect()
    }

    fn related(&self, h: usize, a: usize, b: usize) -> bool {
        self.action.relaxation.related(h, a, b)
    }

    /// `chi(x, y) chi(xy, z) ~^(xyz) alpha(x, chi(y, z)) chi(x, yz)`.
    fn cocycle_at(&self, chi: &[usize], x: usize, y: usize, z: usize) -> bool {
        let (h, n, hs) = (&*self.h, &*self.n, self.h.size());
        let c = |a: usize, b: usize| chi[a * hs + b];
        let xy = h.mul(x, y);
        let lhs = n.mul(c(x, y), c(xy, z));
        let rhs = n.mul(self.action.get(x, c(y, z)), c(x, h.mul(y, z)));
        self.related(h.mul(xy, z), lhs, rhs)
    }

    fn mul(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let prod: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| self.n.mul(x, y)).collect();
        self.canonical(&prod)
    }
}

/// All factor sets of a setting, one per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSet {
    pub setting: Setting,
    /// Tables `chi[h1 * |H| + h2]`, in lexicographic order of the
    /// non-identity entries.
    pub cocycles: Vec<Vec<usize>>,
}

/// Normalized factor sets: `chi(1, h) = chi(h, 1) = 1` and the cocycle
/// condition up to `~^(xyz)`.
pub fn cocycles(setting: &Setting) -> Result<CocycleSet> {
    let ctx = Ctx::new(setting)?;
    let (h, n) = (&*ctx.h, &*ctx.n);
    let hs = h.size();
    let one = h.identity();
    let free: Vec<usize> = (0..hs * hs).filter(|&i| i / hs != one && i % hs != one).collect();
    let mut pos = vec![usize::MAX; hs * hs];
    for (p, &i) in free.iter().enumerate() {
        pos[i] = p;
    }
    // each cocycle instance becomes checkable once its last free entry is set
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); free.len().max(1)];
    let mut always = Vec::new();
    for x in h.elements() {
        for y in h.elements() {
            for z in h.elements() {
                let entries = [x * hs + y, h.mul(x, y) * hs + z, y * hs + z, x * hs + h.mul(y, z)];
                match entries.iter().filter(|&&i| pos[i] != usize::MAX).map(|&i| pos[i]).max() {
                    Some(p) => due[p].push((x, y, z)),
                    None => always.push((x, y, z)),
                }
            }
        }
    }
    let values: Vec<Vec<usize>> = free
        .iter()
        .map(|&i| {
            let target = h.mul(i / hs, i % hs);
            let r = &ctx.action.relaxation;
            (0..r.class_count(target)).map(|c| r.representative(target, c)).collect::<Vec<_>>()
        })
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    let mut chi = vec![n.identity(); hs * hs];
    let mut out = Vec::new();
    if always.iter().all(|&(x, y, z)| ctx.cocycle_at(&chi, x, y, z)) {
        fill(&ctx, &free, &values, &due, 0, &mut chi, &mut out);
    }
    Ok(CocycleSet { setting: setting.clone(), cocycles: out })
}

fn fill(
    ctx: &Ctx,
    free: &[usize],
    values: &[Vec<usize>],
    due: &[Vec<(usize, usize, usize)>],
    p: usize,
    chi: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p == free.len() {
        out.push(chi.clone());
        return;
    }
    for &v in &values[p] {
        chi[free[p]] = v;
        if due[p].iter().all(|&(x, y, z)| ctx.cocycle_at(chi, x, y, z)) {
            fill(ctx, free, values, due, p + 1, chi, out);
        }
    }
    chi[free[p]] = ctx.n.identity();
}

/// `delta t(h1, h2) = t(h1) alpha(h1, t(h2)) t(h1 h2)^-1` for a map `t` with `t(1) = 1`.
pub fn coboundary(setting: &Setting, t: &[usize]) -> Result<Vec<usize>> {
    let ctx = Ctx::new(setting)?;
    Ok(coboundary_in(&ctx, t))
}

fn coboundary_in(ctx: &Ctx, t: &[usize]) -> Vec<usize> {
    let (h, n) = (&*ctx.h, &*ctx.n);
    let mut chi = Vec::with_capacity(h.size() * h.size());
    for h1 in h.elements() {
        for h2 in h.elements() {
            let inv = n.inverse(t[h.mul(h1, h2)]).expect("kernel is a group");
            chi.push(n.product([t[h1], ctx.action.get(h1, t[h2]), inv]));
        }
    }
    ctx.canonical(&chi)
}

/// The distinct inner factor sets, sorted.
pub fn inner_factor_sets(setting: &Setting) -> Result<CocycleSet> {
    let ctx = Ctx::new(setting)?;
    let (h, n) = (&*ctx.h, &*ctx.n);
    let all: Vec<usize> = n.elements().collect();
    let mut out: Vec<Vec<usize>> = crate::strict::gamma_candidates(h, n, &all)
        .iter()
        .map(|t| coboundary_in(&ctx, t))
        .collect();
    out.sort();
    out.dedup();
    Ok(CocycleSet { setting: setting.clone(), cocycles: out })
}

/// Factor sets modulo inner factor sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub cocycle_count: usize,
    pub coboundary_count: usize,
    pub h2_order: usize,
    /// One representative per class, the trivial class first, the others
    /// ordered by their lexicographically least member (which represents them).
    pub h2_classes: Vec<Vec<usize>>,
    /// Multiplication of classes by index; class `0` is the identity.
    pub group_table: Vec<Vec<usize>>,
    #[serde(skip)]
    class_of: HashMap<Vec<usize>, usize>,
}

impl CohomologyResult {
    /// Class index of a factor set already in canonical form.
    pub fn class_index(&self, chi: &[usize]) -> Option<usize> {
        self.class_of.get(chi).copied()
    }

    pub fn group(&self) -> FiniteMonoid {
        FiniteMonoid::from_rows(0, &self.group_table).expect("verified group table")
    }
}

/// Canonical form of `chi` in a setting: every entry replaced by its class representative.
pub fn canonical_factor_set(setting: &Setting, chi: &[usize]) -> Result<Vec<usize>> {
    let ctx = Ctx::new(setting)?;
    Ok(ctx.canonical(chi))
}

pub fn h2(setting: &Setting) -> Result<CohomologyResult> {
    let ctx = Ctx::new(setting)?;
    let z = cocycles(setting)?.cocycles;
    let b = inner_factor_sets(setting)?.cocycles;
    let identity = vec![ctx.n.identity(); ctx.h.size() * ctx.h.size()];
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut order = vec![identity.clone()];
    order.extend(z.iter().filter(|c| **c != identity).cloned());
    for chi in order {
        if class_of.contains_key(&chi) {
            continue;
        }
        let id = reps.len();
        for beta in &b {
            let member = ctx.mul(&chi, beta);
            debug_assert!(z.binary_search(&member).is_ok(), "coset leaves the cocycles");
            class_of.insert(member, id);
        }
        reps.push(chi);
    }
    let k = reps.len();
    let group_table: Vec<Vec<usize>> =
        (0..k).map(|i| (0..k).map(|j| class_of[&ctx.mul(&reps[i], &reps[j])]).collect()).collect();
    let g = FiniteMonoid::from_rows(0, &group_table)?;
    if !g.is_abelian_group() {
        return Err(Error::Incompatible("cohomology classes do not form an abelian group".into()));
    }
    Ok(CohomologyResult {
        cocycle_count: z.len(),
        coboundary_count: b.len(),
        h2_order: k,
        h2_classes: reps,
        group_table,
        class_of,
    })
}

/// Pointwise product of two factor sets, in canonical form.
pub fn factor_set_product(setting: &Setting, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    let ctx = Ctx::new(setting)?;
    Ok(ctx.mul(a, b))
}

/// The setting and factor set of a special (weakly) Schreier extension with
/// abelian group kernel, for the given generators (default if `None`).
pub fn factor_set_of(d: &ExtensionDiagram, generators: Option<&[usize]>) -> Result<(Setting, Vec<usize>)> {
    if !d.kernel().is_abelian_group() {
        return Err(Error::KernelNotAbelianGroup);
    }
    let class = classify(d)?;
    if class.is_special_schreier {
        let fs = extract_factor_system(d, generators)?;
        let action = Action { quotient: fs.quotient.clone(), kernel: fs.kernel.clone(), alpha: fs.alpha };
        Ok((Setting::Strict(action), fs.chi))
    } else if class.is_special_weakly_schreier {
        let fs = extract_ws_factor_system(d, generators)?;
        let action = RelaxedAction { relaxation: fs.relaxation, alpha: fs.alpha };
        let chi = canonical_factor_set(&Setting::Relaxed(action.clone()), &fs.chi)?;
        Ok((Setting::Relaxed(action), chi))
    } else {
        Err(Error::NotSpecial)
    }
}

fn same_action(a: &Setting, b: &Setting) -> bool {
    match (a, b) {
        (Setting::Strict(x), Setting::Strict(y)) => x == y,
        (Setting::Relaxed(x), Setting::Relaxed(y)) => relaxed_actions_equal(x, y),
        _ => false,
    }
}

fn baer_sum_with(d1: &ExtensionDiagram, d2: &ExtensionDiagram, g1: Option<&[usize]>, g2: Option<&[usize]>) -> Result<ExtensionDiagram> {
    let (s1, c1) = factor_set_of(d1, g1)?;
    let (s2, c2) = factor_set_of(d2, g2)?;
    if *s1.kernel() != *s2.kernel() || *s1.quotient() != *s2.quotient() {
        return Err(Error::Incompatible("extensions have different kernels or quotients".into()));
    }
    if !same_action(&s1, &s2) {
        return Err(Error::ActionsDiffer);
    }
    let sum = factor_set_product(&s1, &c1, &c2)?;
    s1.crossed(&sum)
}

/// Baer sum: multiply the factor sets pointwise and rebuild the crossed
/// product. The result is checked against the sum taken with the last
/// available generator choice of each summand.
pub fn baer_sum(d1: &ExtensionDiagram, d2: &ExtensionDiagram) -> Result<ExtensionDiagram> {
    let sum = baer_sum_with(d1, d2, None, None)?;
    let strict = classify(d1)?.is_special_schreier && classify(d2)?.is_special_schreier;
    let alt1 = d1.all_generator_choices(strict).pop();
    let alt2 = d2.all_generator_choices(strict).pop();
    let alt = baer_sum_with(d1, d2, alt1.as_deref(), alt2.as_deref())?;
    if find_extension_isomorphism(&sum, &alt, false).is_none() {
        return Err(Error::Incompatible("Baer sum depends on the generator choice".into()));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::iso::are_isomorphic;
    use crate::relaxed::Relaxation;
    use crate::strict::semidirect;

    fn trivial_setting(h: FiniteMonoid, n: FiniteMonoid) -> Setting {
        Setting::Strict(Action::trivial(h.shared(), n.shared()))
    }

    fn w3_setting() -> Setting {
        let (two, z2) = (catalog::meet_two().shared(), catalog::cyclic_group(2).shared());
        let r = Relaxation::new(two, z2, &[vec![0, 1], vec![0, 0]]).unwrap();
        Setting::Relaxed(RelaxedAction::new(r, vec![0, 1, 0, 0]).unwrap())
    }

    #[test]
    fn trivial_quotient_has_one_cocycle() {
        let s = trivial_setting(catalog::trivial(), catalog::cyclic_group(3));
        assert_eq!(cocycles(&s).unwrap().cocycles.len(), 1);
        assert_eq!(h2(&s).unwrap().h2_order, 1);
    }

    #[test]
    fn z2_by_z2() {
        let s = trivial_setting(catalog::cyclic_group(2), catalog::cyclic_group(2));
        assert_eq!(cocycles(&s).unwrap().cocycles, vec![vec![0, 0, 0, 0], vec![0, 0, 0, 1]]);
        assert_eq!(inner_factor_sets(&s).unwrap().cocycles, vec![vec![0, 0, 0, 0]]);
        let r = h2(&s).unwrap();
        assert_eq!((r.cocycle_count, r.coboundary_count, r.h2_order), (2, 1, 2));
        assert!(are_isomorphic(s.crossed(&r.h2_classes[1]).unwrap().total(), &catalog::cyclic_group(4)));
    }

    #[test]
    fn z2_by_z3_is_trivial() {
        let s = trivial_setting(catalog::cyclic_group(2), catalog::cyclic_group(3));
        let r = h2(&s).unwrap();
        assert_eq!((r.cocycle_count, r.coboundary_count, r.h2_order), (3, 3, 1));
    }

    #[test]
    fn non_abelian_kernel_is_rejected() {
        let s = trivial_setting(catalog::cyclic_group(2), catalog::symmetric_group(3));
        assert_eq!(cocycles(&s).unwrap_err(), Error::KernelNotAbelianGroup);
        let s = trivial_setting(catalog::cyclic_group(2), catalog::meet_two());
        assert_eq!(h2(&s).unwrap_err(), Error::KernelNotAbelianGroup);
    }

    #[test]
    fn w3_relaxed_setting() {
        let s = w3_setting();
        assert_eq!(cocycles(&s).unwrap().cocycles.len(), 1);
        assert_eq!(h2(&s).unwrap().h2_order, 1);
    }

    #[test]
    fn baer_sums() {
        let s = trivial_setting(catalog::cyclic_group(2), catalog::cyclic_group(2));
        let z4 = s.crossed(&[0, 0, 0, 1]).unwrap();
        let klein = s.crossed(&[0, 0, 0, 0]).unwrap();
        let sum = baer_sum(&z4, &z4).unwrap();
        assert!(find_extension_isomorphism(&sum, &klein, false).is_some());
        let Setting::Strict(a) = &s else { unreachable!() };
        let semi = semidirect(a).unwrap();
        assert!(find_extension_isomorphism(&baer_sum(&z4, &semi).unwrap(), &z4, false).is_some());

        let w = w3_setting().crossed(&[0, 0, 0, 0]).unwrap();
        let ww = baer_sum(&w, &w).unwrap();
        assert!(find_extension_isomorphism(&ww, &w, false).is_some());
        assert_eq!(baer_sum(&w, &z4).unwrap_err(), Error::Incompatible("extensions have different kernels or quotients".into()));
    }
}
