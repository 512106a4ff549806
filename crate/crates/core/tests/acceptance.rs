//! Acceptance suite: one PASS/FAIL line per criterion, each with its time limit.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use schreier::catalog;
use schreier::cohomology::{baer_sum, factor_set_of, h2, Setting};
use schreier::extension::{find_extension_isomorphism, is_extension_isomorphism, ExtensionClass};
use schreier::iso::are_isomorphic;
use schreier::monoid::validate_monoid;
use schreier::oracle::{
    census_check, enumerate_actions, enumerate_monoids, enumerate_relaxed_actions, enumerate_weakly_schreier,
    CensusMode, ExtensionCensus,
};
use schreier::relaxed::{
    extract_ws_factor_system, relaxed_action_for_section, relaxed_actions_equal, relaxed_crossed_product,
    relaxed_index, relaxed_semidirect, ws_factor_systems_equivalent, ws_reconstruction_map, Relaxation,
    RelaxedAction, WSFactorSystem,
};
use schreier::strict::{extract_action, semidirect, Action};
use schreier::{classify, ExtensionDiagram, MonoidRef};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Monoids of order 1 to `max`, labelled `order.index`.
fn catalog_upto(max: usize) -> Vec<(String, MonoidRef)> {
    (1..=max)
        .flat_map(|order| {
            enumerate_monoids(order)
                .expect("order within bounds")
                .monoids
                .into_iter()
                .enumerate()
                .map(move |(i, m)| (format!("{order}.{i}"), m.shared()))
        })
        .collect()
}

fn pairs(max: usize) -> Vec<((String, MonoidRef), (String, MonoidRef))> {
    let cat = catalog_upto(max);
    let mut out = Vec::new();
    for h in &cat {
        for n in &cat {
            if h.1.size() * n.1.size() <= 9 {
                out.push((h.clone(), n.clone()));
            }
        }
    }
    out
}

fn ids(census: &ExtensionCensus, pred: impl Fn(&ExtensionClass) -> bool) -> BTreeSet<usize> {
    census.entries.iter().filter(|e| pred(&e.class)).map(|e| e.iso_class_id).collect()
}

/// Checks that `built` hits every class in `target` exactly once.
fn bijection(census: &ExtensionCensus, target: &BTreeSet<usize>, built: &[ExtensionDiagram], what: &str) -> Result<(), String> {
    let mut hit = BTreeSet::new();
    for (i, d) in built.iter().enumerate() {
        match census.locate(d) {
            Some(c) if target.contains(&c) && hit.insert(c) => {}
            other => return Err(format!("{what} #{i} lands in {other:?}")),
        }
    }
    ensure(hit == *target, || format!("{what}: {} built, {} classes", built.len(), target.len()))
}

fn z2() -> MonoidRef {
    catalog::cyclic_group(2).shared()
}

fn two() -> MonoidRef {
    catalog::meet_two().shared()
}

fn w3_action() -> RelaxedAction {
    let r = Relaxation::new(two(), z2(), &[vec![0, 1], vec![0, 0]]).expect("relaxation");
    RelaxedAction::new(r, vec![0, 1, 0, 0]).expect("compatible action")
}

fn w3_diagram() -> ExtensionDiagram {
    ExtensionDiagram::from_parts(z2(), catalog::w3().shared(), two(), vec![0, 1], vec![0, 0, 1], Some(vec![0, 2]))
        .expect("homs")
}

fn zero_action() -> Action {
    Action::new(two(), z2(), vec![0, 1, 0, 0]).expect("action")
}

fn criterion_1() -> Check {
    let mut total = 0;
    let all = pairs(3);
    for ((hn, h), (nn, n)) in &all {
        let census = enumerate_weakly_schreier(n, h, CensusMode::Split, n.size() * h.size()).map_err(|e| e.to_string())?;
        let target = ids(&census, |c| c.is_schreier_split == Some(true));
        let actions = enumerate_actions(h, n);
        let mut built = Vec::new();
        for a in &actions {
            let d = semidirect(a).map_err(|e| e.to_string())?;
            let back = extract_action(&d).map_err(|e| e.to_string())?;
            ensure(back == *a, || format!("H={hn} N={nn}: extract_action does not invert {:?}", a.alpha))?;
            built.push(d);
        }
        bijection(&census, &target, &built, &format!("H={hn} N={nn} action"))?;
        total += actions.len();
    }
    Ok(format!("{} pairs, {total} actions, each a distinct Schreier split class", all.len()))
}

fn criterion_2(systems: &mut Vec<WSFactorSystem>) -> Check {
    let (h, n) = (two(), z2());
    let relaxed = enumerate_relaxed_actions(&h, &n);
    let census = enumerate_weakly_schreier(&n, &h, CensusMode::Split, 4).map_err(|e| e.to_string())?;
    let target = ids(&census, |c| c.is_weakly_schreier_split == Some(true));
    ensure(relaxed.len() == 3 && target.len() == 3, || {
        format!("(2, Z2): {} relaxed actions, {} classes", relaxed.len(), target.len())
    })?;
    let named = [
        semidirect(&Action::trivial(h.clone(), n.clone())).map_err(|e| e.to_string())?,
        semidirect(&zero_action()).map_err(|e| e.to_string())?,
        w3_diagram(),
    ];
    bijection(&census, &target, &named, "(2, Z2) named extension")?;
    let built: Vec<ExtensionDiagram> = relaxed.iter().map(|a| relaxed_semidirect(a).expect("valid")).collect();
    bijection(&census, &target, &built, "(2, Z2) relaxed action")?;

    let all = pairs(3);
    let mut total = 0;
    for ((hn, h), (nn, n)) in &all {
        let census = enumerate_weakly_schreier(n, h, CensusMode::Split, n.size() * h.size()).map_err(|e| e.to_string())?;
        let target = ids(&census, |c| c.is_weakly_schreier_split == Some(true));
        let relaxed = enumerate_relaxed_actions(h, n);
        let mut built = Vec::new();
        for a in &relaxed {
            built.push(relaxed_semidirect(a).map_err(|e| e.to_string())?);
            systems.push(WSFactorSystem::from_relaxed_action(a));
        }
        bijection(&census, &target, &built, &format!("H={hn} N={nn} relaxed action"))?;
        total += relaxed.len();
    }
    Ok(format!("(2, Z2): 3 relaxed actions = Z2x2, zero action, W3; {} pairs, {total} relaxed actions", all.len()))
}

fn same_extension(a: &ExtensionDiagram, b: &ExtensionDiagram) -> bool {
    find_extension_isomorphism(a, b, false).is_some()
}

fn criterion_3() -> Check {
    let setting = Setting::Strict(Action::trivial(z2(), z2()));
    let r = h2(&setting).map_err(|e| e.to_string())?;
    ensure(r.h2_order == 2, || format!("h2(Z2, Z2) has order {}", r.h2_order))?;
    let classes: Vec<ExtensionDiagram> =
        r.h2_classes.iter().map(|chi| setting.crossed(chi).expect("cocycle")).collect();
    ensure(are_isomorphic(classes[0].total(), &catalog::klein_four()), || "trivial class is not Klein four".into())?;
    ensure(are_isomorphic(classes[1].total(), &catalog::cyclic_group(4)), || "other class is not Z4".into())?;

    let z3 = catalog::cyclic_group(3).shared();
    for (h, n) in [(z2(), z3.clone()), (z3.clone(), z2())] {
        let order = h2(&Setting::Strict(Action::trivial(h.clone(), n.clone()))).map_err(|e| e.to_string())?.h2_order;
        ensure(order == 1, || format!("h2 with |H| = {} and |N| = {} has order {order}", h.size(), n.size()))?;
    }

    let sum = |a: &ExtensionDiagram, b: &ExtensionDiagram| baer_sum(a, b).map_err(|e| e.to_string());
    let class_of = |d: &ExtensionDiagram| classes.iter().position(|c| same_extension(c, d));
    let zero = &classes[0];
    for (i, x) in classes.iter().enumerate() {
        ensure(class_of(&sum(zero, x)?) == Some(i) && class_of(&sum(x, zero)?) == Some(i), || {
            format!("trivial class is not neutral for class {i}")
        })?;
        let mut has_inverse = false;
        for y in &classes {
            has_inverse |= class_of(&sum(x, y)?) == Some(0);
            ensure(class_of(&sum(x, y)?) == class_of(&sum(y, x)?), || "Baer sum is not commutative".into())?;
            for z in &classes {
                let left = sum(&sum(x, y)?, z)?;
                let right = sum(x, &sum(y, z)?)?;
                ensure(same_extension(&left, &right), || "Baer sum is not associative".into())?;
            }
        }
        ensure(has_inverse, || format!("class {i} has no inverse"))?;
    }
    ensure(class_of(&sum(&classes[1], &classes[1])?) == Some(0), || "Z4 + Z4 is not the trivial class".into())?;
    Ok("h2(Z2, Z2) = {Klein, Z4}, h2 trivial for Z3 against Z2, Baer sum laws hold".into())
}

fn criterion_4(systems: &mut Vec<WSFactorSystem>) -> Check {
    let action = w3_action();
    let setting = Setting::Relaxed(action.clone());
    let r = h2(&setting).map_err(|e| e.to_string())?;
    ensure(r.h2_order == 1, || format!("h2 of the W3 action has order {}", r.h2_order))?;
    for chi in &r.h2_classes {
        systems.push(WSFactorSystem { relaxation: action.relaxation.clone(), alpha: action.alpha.clone(), chi: chi.clone() });
    }

    let census = enumerate_weakly_schreier(&z2(), &two(), CensusMode::All, 4).map_err(|e| e.to_string())?;
    let with_action = census
        .entries
        .iter()
        .filter(|e| e.class.is_special_weakly_schreier)
        .filter(|e| {
            factor_set_of(&e.diagram, None).is_ok_and(|(s, _)| relaxed_actions_equal(&s.relaxed().canonical(), &action))
        })
        .count();
    ensure(with_action == 1, || format!("{with_action} special weakly Schreier classes carry the W3 action"))?;

    let z3 = catalog::cyclic_group(3).shared();
    let settings = [(z2(), two()), (z2(), z2()), (z3.clone(), two()), (z2(), z3.clone()), (z3, z2())];
    let mut sections = 0;
    for (n, h) in &settings {
        let census = enumerate_weakly_schreier(n, h, CensusMode::All, n.size() * h.size()).map_err(|e| e.to_string())?;
        for e in census.entries.iter().filter(|e| e.class.is_special_weakly_schreier) {
            let d = &e.diagram;
            let gens = d.default_generators(false).expect("weakly Schreier");
            let base = relaxed_action_for_section(d, &gens).expect("generators");
            for u in d.unit_preserving_sections() {
                sections += 1;
                let a = relaxed_action_for_section(d, &u)
                    .ok_or_else(|| format!("section {u:?} does not generate the fibers"))?;
                ensure(a.relaxation == base.relaxation && relaxed_actions_equal(&a, &base), || {
                    format!("section {u:?} of class {} induces a different relaxed action", e.iso_class_id)
                })?;
            }
        }
    }
    Ok(format!("h2 trivial, one class with the W3 action, {sections} sections agree"))
}

fn criterion_5(systems: &mut Vec<WSFactorSystem>) -> Check {
    let small: Vec<MonoidRef> = vec![catalog::trivial().shared(), z2(), two()];
    let mut classes = 0;
    let mut extractions = 0;
    for n in &small {
        for h in &small {
            let census = enumerate_weakly_schreier(n, h, CensusMode::All, 4).map_err(|e| e.to_string())?;
            let mut leaders = Vec::new();
            for e in &census.entries {
                let d = &e.diagram;
                let mut first: Option<WSFactorSystem> = None;
                for gens in d.all_generator_choices(false) {
                    let fs = extract_ws_factor_system(d, Some(&gens)).map_err(|e| e.to_string())?;
                    let rebuilt = relaxed_crossed_product(&fs).map_err(|e| e.to_string())?;
                    let map = ws_reconstruction_map(&fs, d, &gens);
                    ensure(is_extension_isomorphism(&rebuilt, d, &map, false), || {
                        format!("|N|={} |H|={} class {}: reconstruction fails for {gens:?}", n.size(), h.size(), e.iso_class_id)
                    })?;
                    if let Some(f) = &first {
                        ensure(ws_factor_systems_equivalent(f, &fs).is_some(), || {
                            format!("class {}: extractions for different generators are not equivalent", e.iso_class_id)
                        })?;
                    }
                    extractions += 1;
                    systems.push(fs.clone());
                    first.get_or_insert(fs);
                }
                leaders.push(first.expect("weakly Schreier extensions have generators"));
            }
            for (i, a) in leaders.iter().enumerate() {
                for b in &leaders[i + 1..] {
                    ensure(ws_factor_systems_equivalent(a, b).is_none(), || {
                        format!("|N|={} |H|={}: non-isomorphic classes are equivalent", n.size(), h.size())
                    })?;
                }
            }
            classes += leaders.len();
        }
    }
    Ok(format!("{classes} classes, {extractions} extractions reconstruct and agree"))
}

/// Recomputes each product of the relaxed crossed product from every pair of
/// class representatives.
fn well_defined(fs: &WSFactorSystem) -> Result<(), String> {
    let r = &fs.relaxation;
    let (h, n) = (&r.quotient, &r.kernel);
    let size = r.carrier_size();
    let mut rows = vec![vec![usize::MAX; size]; size];
    for h1 in h.elements() {
        for h2 in h.elements() {
            for n1 in n.elements() {
                for n2 in n.elements() {
                    let v = n.mul(n.mul(n1, fs.alpha(h1, n2)), fs.chi(h1, h2));
                    let out = relaxed_index(r, h.mul(h1, h2), v);
                    let cell = &mut rows[relaxed_index(r, h1, n1)][relaxed_index(r, h2, n2)];
                    if *cell != usize::MAX && *cell != out {
                        return Err(format!("product depends on representatives at {:?}", (h1, n1, h2, n2)));
                    }
                    *cell = out;
                }
            }
        }
    }
    let identity = relaxed_index(r, h.identity(), n.identity());
    let m = validate_monoid(size, identity, &rows).map_err(|e| e.to_string())?;
    let built = relaxed_crossed_product(fs).map_err(|e| e.to_string())?;
    ensure(*built.total().as_ref() == m, || "table differs from the relaxed crossed product".into())
}

fn criterion_6(systems: &[WSFactorSystem]) -> Check {
    for (i, fs) in systems.iter().enumerate() {
        well_defined(fs).map_err(|e| format!("system {i}: {e}"))?;
    }
    Ok(format!("{} factor systems well defined", systems.len()))
}

fn criterion_7() -> Check {
    let w3 = classify(&w3_diagram()).map_err(|e| e.to_string())?;
    ensure(
        w3.is_weakly_schreier && !w3.is_schreier && w3.is_special_weakly_schreier && w3.is_leech_normal == Some(true),
        || format!("W3 flags: {w3:?}"),
    )?;
    let zero = classify(&semidirect(&zero_action()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(
        zero.is_schreier_split == Some(true) && zero.is_special_schreier && zero.is_leech_normal == Some(false),
        || format!("zero action flags: {zero:?}"),
    )?;
    Ok("W3 and zero-action flags match".into())
}

fn criterion_8() -> Check {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate_monoids(n).expect("bounded").monoids.len()).collect();
    ensure(counts == [1, 2, 7, 35], || format!("catalog counts {counts:?}"))?;
    let all = pairs(3);
    for ((hn, h), (nn, n)) in &all {
        let report = census_check(n, h);
        ensure(report.passed(), || format!("H={hn} N={nn}: {:?}", report.failures))?;
    }
    Ok(format!("catalog counts {counts:?}, census_check passes on {} pairs", all.len()))
}

fn report(number: usize, limit: Duration, run: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let (ok, detail) = match result {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("{d}; over the time limit")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {number}: {} ({:.2}s, limit {}s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let start = Instant::now();
    let mut systems = Vec::new();
    let mut ok = true;
    ok &= report(1, secs(300), criterion_1);
    ok &= report(2, secs(600), || criterion_2(&mut systems));
    ok &= report(3, secs(60), criterion_3);
    ok &= report(4, secs(60), || criterion_4(&mut systems));
    ok &= report(5, secs(600), || criterion_5(&mut systems));
    ok &= report(6, secs(600), || criterion_6(&systems));
    ok &= report(7, secs(1), criterion_7);
    ok &= report(8, secs(900), criterion_8);
    let total = start.elapsed();
    let in_time = total <= secs(900);
    println!(
        "suite: {} ({:.2}s, limit 900s)",
        if ok && in_time { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    if ok && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
