//! Census comparison: every algebraic classification is matched class by
//! class against the brute-force census.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cohomology::{factor_set_of, h2, Setting};
use crate::extension::{ExtensionClass, ExtensionDiagram};
use crate::monoid::MonoidRef;
use crate::relaxed::{
    relaxed_actions_equal, relaxed_crossed_product, relaxed_semidirect, ws_factor_systems_equivalent,
    ws_gamma_diagnostics, RelaxedAction,
};
use crate::strict::{crossed_product, extract_action, factor_systems_equivalent, semidirect};

use super::algebra::{enumerate_actions, enumerate_factor_systems, enumerate_relaxed_actions, enumerate_ws_factor_systems};
use super::census::{enumerate_weakly_schreier, CensusMode, ExtensionCensus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub name: String,
    /// Count of algebraic data (actions, systems modulo equivalence, classes).
    pub algebraic: usize,
    /// Count of matching isomorphism classes in the census.
    pub census: usize,
    pub ok: bool,
}

/// Tallies over every `gamma` examined while comparing weakly Schreier
/// factor systems inside one census class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GammaTally {
    pub examined: usize,
    /// The invertibility and compatibility conditions disagree with the
    /// induced map being an extension isomorphism.
    pub condition_mismatches: usize,
    /// Both one-sided inverses exist but no single `lambda` serves both.
    pub without_common_lambda: usize,
    /// Left invertibility up to `~^h` and up to equality disagree.
    pub index_readings_differ: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub kernel_size: usize,
    pub quotient_size: usize,
    pub checks: Vec<CountCheck>,
    pub gamma: GammaTally,
    pub failures: Vec<String>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks.iter().all(|c| c.ok)
    }
}

struct Ctx {
    split: ExtensionCensus,
    all: ExtensionCensus,
    failures: Vec<String>,
    checks: Vec<CountCheck>,
}

impl Ctx {
    fn push(&mut self, name: &str, algebraic: usize, census: usize, extra_ok: bool) {
        let ok = algebraic == census && extra_ok;
        if !ok {
            self.failures.push(format!("{name}: {algebraic} algebraic vs {census} census"));
        }
        self.checks.push(CountCheck { name: name.to_string(), algebraic, census, ok });
    }

    /// Maps each constructed diagram to its census class and checks the map
    /// is a bijection onto `target`.
    fn bijection(&mut self, name: &str, split: bool, built: Vec<(String, ExtensionDiagram)>, target: BTreeSet<usize>) {
        let census = if split { &self.split } else { &self.all };
        let mut hit = BTreeSet::new();
        let mut ok = true;
        for (label, d) in &built {
            match census.locate(d) {
                Some(i) if target.contains(&i) => {
                    if !hit.insert(i) {
                        ok = false;
                        self.failures.push(format!("{name}: {label} lands in an already used class {i}"));
                    }
                }
                other => {
                    ok = false;
                    self.failures.push(format!("{name}: {label} lands outside the expected classes ({other:?})"));
                }
            }
        }
        let (a, c) = (built.len(), target.len());
        self.push(name, a, c, ok && hit == target);
    }
}

/// Compares actions, relaxed actions, factor systems and cohomology of `h`
/// on `n` with the census of weakly Schreier (split) extensions of `h` by `n`.
pub fn census_check(n: &MonoidRef, h: &MonoidRef) -> CensusReport {
    let (ns, hs) = (n.size(), h.size());
    let max = ns * hs;
    let split = enumerate_weakly_schreier(n, h, CensusMode::Split, max).expect("size within bounds");
    let all = enumerate_weakly_schreier(n, h, CensusMode::All, max).expect("size within bounds");
    let mut ctx = Ctx { split, all, failures: Vec::new(), checks: Vec::new() };

    // (a) actions and Schreier split extensions
    let actions = enumerate_actions(h, n);
    let mut built = Vec::new();
    for a in &actions {
        let d = semidirect(a).expect("valid action");
        match extract_action(&d) {
            Ok(b) if b == *a => {}
            _ => ctx.failures.push(format!("extract_action does not invert semidirect at {:?}", a.alpha)),
        }
        built.push((format!("action {:?}", a.alpha), d));
    }
    let target = ids(&ctx.split, |c| c.is_schreier_split == Some(true));
    ctx.bijection("actions = Schreier split classes", true, built, target);

    // (b) relaxed actions and weakly Schreier split extensions
    let relaxed = enumerate_relaxed_actions(h, n);
    let built = relaxed
        .iter()
        .map(|a| (format!("relaxed action {:?} {:?}", a.relaxation.labels(), a.alpha), relaxed_semidirect(a).expect("valid")))
        .collect();
    let target = ids(&ctx.split, |c| c.is_weakly_schreier_split == Some(true));
    ctx.bijection("relaxed actions = weakly Schreier split classes", true, built, target);

    // (c) weakly Schreier factor systems modulo equivalence
    let mut gamma = GammaTally::default();
    let systems = enumerate_ws_factor_systems(h, n);
    let mut leaders: BTreeMap<usize, usize> = BTreeMap::new();
    let mut ok = true;
    for (i, fs) in systems.iter().enumerate() {
        let d = match relaxed_crossed_product(fs) {
            Ok(d) => d,
            Err(e) => {
                ok = false;
                ctx.failures.push(format!("relaxed crossed product failed: {e}"));
                continue;
            }
        };
        let Some(c) = ctx.all.locate(&d).filter(|&c| ctx.all.entries[c].class.is_weakly_schreier) else {
            ok = false;
            ctx.failures.push(format!("factor system {i} builds no weakly Schreier census class"));
            continue;
        };
        match leaders.get(&c) {
            None => {
                leaders.insert(c, i);
            }
            Some(&l) => {
                for diag in ws_gamma_diagnostics(&systems[l], fs) {
                    gamma.examined += 1;
                    let conditions = diag.right_invertible && diag.left_invertible && diag.compatible;
                    if conditions != diag.isomorphism {
                        gamma.condition_mismatches += 1;
                    }
                    if diag.right_invertible && diag.left_invertible && !diag.common_lambda {
                        gamma.without_common_lambda += 1;
                    }
                    if diag.left_invertible != diag.left_invertible_at_identity {
                        gamma.index_readings_differ += 1;
                    }
                }
                if ws_factor_systems_equivalent(&systems[l], fs).is_none() {
                    ok = false;
                    ctx.failures.push(format!("factor systems {l} and {i} build class {c} but are not equivalent"));
                }
            }
        }
    }
    let reps: Vec<usize> = leaders.values().copied().collect();
    for (x, &a) in reps.iter().enumerate() {
        for &b in &reps[x + 1..] {
            if ws_factor_systems_equivalent(&systems[a], &systems[b]).is_some() {
                ok = false;
                ctx.failures.push(format!("factor systems {a} and {b} are equivalent across classes"));
            }
        }
    }
    let ws_classes = ctx.all.count(|c| c.is_weakly_schreier);
    ctx.push("factor systems / equivalence = weakly Schreier classes", leaders.len(), ws_classes, ok);

    // strict factor systems modulo invertible gamma
    let strict = enumerate_factor_systems(h, n);
    let mut leaders: BTreeMap<usize, usize> = BTreeMap::new();
    let mut ok = true;
    for (i, fs) in strict.iter().enumerate() {
        let d = crossed_product(fs).expect("valid factor system");
        let Some(c) = ctx.all.locate(&d).filter(|&c| ctx.all.entries[c].class.is_schreier) else {
            ok = false;
            ctx.failures.push(format!("strict factor system {i} builds no Schreier census class"));
            continue;
        };
        match leaders.get(&c) {
            None => {
                leaders.insert(c, i);
            }
            Some(&l) => {
                let units = factor_systems_equivalent(&strict[l], fs, true);
                let bijective = factor_systems_equivalent(&strict[l], fs, false);
                if units.is_none() {
                    ok = false;
                    ctx.failures.push(format!("strict systems {l} and {i} build class {c} but are not equivalent"));
                }
                if units.is_some() != bijective.is_some() {
                    ok = false;
                    ctx.failures.push(format!("invertibility readings disagree on systems {l} and {i}"));
                }
            }
        }
    }
    let schreier = ctx.all.count(|c| c.is_schreier);
    ctx.push("strict factor systems / equivalence = Schreier classes", leaders.len(), schreier, ok);

    // (d) cohomology per action
    if n.is_abelian_group() {
        let extracted: Vec<Option<RelaxedAction>> = ctx
            .all
            .entries
            .iter()
            .map(|e| {
                if !e.class.is_special_weakly_schreier {
                    return None;
                }
                factor_set_of(&e.diagram, None).ok().map(|(s, _)| s.relaxed().canonical())
            })
            .collect();
        for a in &actions {
            let setting = Setting::Strict(a.clone());
            let target = RelaxedAction::from_action(a);
            check_h2(&mut ctx, &setting, &extracted, &target, &format!("H2 strict {:?}", a.alpha), true);
        }
        for a in &relaxed {
            let setting = Setting::Relaxed(a.clone());
            let label = format!("H2 relaxed {:?} {:?}", a.relaxation.labels(), a.alpha);
            check_h2(&mut ctx, &setting, &extracted, a, &label, false);
        }
    }

    CensusReport { kernel_size: ns, quotient_size: hs, checks: ctx.checks, gamma, failures: ctx.failures }
}

fn check_h2(
    ctx: &mut Ctx,
    setting: &Setting,
    extracted: &[Option<RelaxedAction>],
    target: &RelaxedAction,
    label: &str,
    strict: bool,
) {
    let result = match h2(setting) {
        Ok(r) => r,
        Err(e) => {
            ctx.failures.push(format!("{label}: {e}"));
            return;
        }
    };
    let built = result
        .h2_classes
        .iter()
        .map(|chi| (format!("class {chi:?}"), setting.crossed(chi).expect("cocycle builds")))
        .collect();
    let special = |c: &ExtensionClass| if strict { c.is_special_schreier } else { c.is_special_weakly_schreier };
    let target = ctx
        .all
        .entries
        .iter()
        .filter(|e| special(&e.class))
        .filter(|e| extracted[e.iso_class_id].as_ref().is_some_and(|a| relaxed_actions_equal(a, target)))
        .map(|e| e.iso_class_id)
        .collect();
    ctx.bijection(label, false, built, target);
}

fn ids(census: &ExtensionCensus, pred: impl Fn(&ExtensionClass) -> bool) -> BTreeSet<usize> {
    census.entries.iter().filter(|e| pred(&e.class)).map(|e| e.iso_class_id).collect()
}
