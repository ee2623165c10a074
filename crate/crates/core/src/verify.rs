//! Differential suite: every fast algorithm against the exhaustive oracle
//! on one instance.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::gale_shapley::is_stable;
use crate::leveling::{assign_levels_traced, check_conditions, LevelMode};
use crate::model::{normalize_critical_side, Instance, Matching, Vertex};
use crate::oracle::{self, PopularityAnalysis};
use crate::partition::{level_drift_violations, run_partition};
use crate::popular_edge::PopularEdgeSolver;
use crate::reductions::{build, ReducedInstance, ReductionKind};
use crate::stable_pairs::stable_pairs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyResult {
    fn new(name: &'static str) -> Self {
        PropertyResult {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

pub const PROPERTIES: [&str; 8] = [
    "min_size_image",
    "dominant_image",
    "popular_edges",
    "witnesses",
    "stable_pairs",
    "surjectivity_min",
    "surjectivity_dominant",
    "partition",
];

fn show(inst: &Instance, m: &Matching) -> String {
    m.display(inst).to_string()
}

fn round_trip(inst: &Instance, red: &ReducedInstance, m: &Matching, mode: LevelMode) -> std::result::Result<(), String> {
    let (lv, _) = assign_levels_traced(inst, m, mode).map_err(|e| e.to_string())?;
    if let Some(v) = check_conditions(inst, m, &lv, mode).first_violation() {
        return Err(v.detail.clone());
    }
    let pre = red.preimage(m, &lv).map_err(|e| e.to_string())?;
    if !is_stable(red.inst(), &pre) {
        return Err("preimage is not stable".into());
    }
    if red.image(&pre).map_err(|e| e.to_string())? != *m {
        return Err("preimage maps elsewhere".into());
    }
    Ok(())
}

/// Runs every property. Fails only on oracle errors (too many edges) or an
/// infeasible instance; property failures are reported, not raised.
pub fn differential_suite(inst: &Instance, cap: usize) -> Result<SuiteReport> {
    let truth = oracle::analyze(inst, cap)?;
    let solver = PopularEdgeSolver::new(inst)?;
    let mut props = Vec::new();

    let mut p = PropertyResult::new("min_size_image");
    let min = solver.min_size_pfm()?;
    p.check(truth.is_min_size(&min), || format!("{} is not a minimum-size PFM", show(inst, &min)));
    props.push(p);

    let mut p = PropertyResult::new("dominant_image");
    let dom = solver.dominant_fm()?;
    p.check(truth.is_dominant(&dom), || format!("{} is not dominant", show(inst, &dom)));
    props.push(p);

    let mut p = PropertyResult::new("popular_edges");
    let mut w = PropertyResult::new("witnesses");
    for e in inst.edges() {
        let d = solver.decide(e)?;
        let expected = truth.popular_edges.contains(&e);
        let pair = || format!("({}, {})", inst.man_name(e.man), inst.woman_name(e.woman));
        p.check(d.popular == expected, || format!("{}: solver {} oracle {}", pair(), d.popular, expected));
        match solver.witness(e) {
            Ok(Some(wit)) => w.check(wit.matching.contains(e) && truth.is_popular(&wit.matching), || {
                format!("{}: witness {} is not a PFM containing it", pair(), show(inst, &wit.matching))
            }),
            Ok(None) => {}
            Err(err) => w.check(false, || format!("{}: {err}", pair())),
        }
    }
    props.push(p);
    props.push(w);

    let mut p = PropertyResult::new("stable_pairs");
    let fast = stable_pairs(inst);
    let slow: BTreeSet<_> = oracle::stable_edges(inst, cap)?;
    p.check(fast == slow, || format!("{} stable pairs found, oracle has {}", fast.len(), slow.len()));
    props.push(p);

    let (norm, swapped) = normalize_critical_side(inst);
    let orient = |m: &Matching| if swapped { m.swap_sides() } else { m.clone() };
    for (name, kind, mode, family) in [
        ("surjectivity_min", ReductionKind::GPrime, LevelMode::Min, &truth.min_size),
        ("surjectivity_dominant", ReductionKind::GDoublePrime, LevelMode::Dom, &truth.dominant),
    ] {
        let mut p = PropertyResult::new(name);
        let red = build(&norm, kind)?;
        for m in family {
            let m = orient(m);
            let outcome = round_trip(&norm, &red, &m, mode);
            p.check(outcome.is_ok(), || format!("{}: {}", show(&norm, &m), outcome.clone().unwrap_err()));
        }
        props.push(p);
    }

    props.push(partition_property(&norm, &truth, &orient));
    Ok(SuiteReport { properties: props })
}

fn partition_property(norm: &Instance, truth: &PopularityAnalysis, orient: &dyn Fn(&Matching) -> Matching) -> PropertyResult {
    let mut p = PropertyResult::new("partition");
    for m in truth.popular.iter().filter(|m| !truth.is_min_size(m) && !truth.is_dominant(m)) {
        let m = orient(m);
        let tag = show(norm, &m);
        let out = match run_partition(norm, &m) {
            Ok(out) => out,
            Err(e) => {
                p.check(false, || format!("{tag}: {e}"));
                continue;
            }
        };
        let srap: BTreeSet<Vertex> = out.paths.sraps.iter().flat_map(|c| c.vertices.iter().copied()).collect();
        let disjoint = out.paths.siaps.iter().flat_map(|c| &c.vertices).all(|v| !srap.contains(v));
        let part = &out.partition;
        let min_ok = truth.is_min_size(&orient(&out.min_size))
            && out.min_size.contains_all(&part.m_m)
            && out.min_size.contains_all(&part.m_r);
        let dom_ok = truth.is_dominant(&orient(&out.dominant))
            && out.dominant.contains_all(&part.m_d)
            && out.dominant.contains_all(&part.m_r);
        let drift = level_drift_violations(norm, part, &out.levels, &out.t1, &out.t2);
        let mut problems = Vec::new();
        if !disjoint {
            problems.push("SRAP and SIAP share a vertex".to_string());
        }
        if !out.cross_violations.is_empty() {
            problems.push(format!("{} cross-edge violations", out.cross_violations.len()));
        }
        if !min_ok {
            problems.push(format!("transformation 1 gave {}", show(norm, &out.min_size)));
        }
        if !dom_ok {
            problems.push(format!("transformation 2 gave {}", show(norm, &out.dominant)));
        }
        if let Some(&v) = drift.first() {
            problems.push(format!("level drift at {}", norm.vertex_name(v)));
        }
        p.check(problems.is_empty(), || format!("{tag}: {}", problems.join("; ")));
    }
    p
}
