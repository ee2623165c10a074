//! Level assignments that certify minimum-size and dominant feasible
//! matchings, and checkers for the conditions such certificates satisfy.

use crate::error::{Error, Result};
use crate::model::{Edge, Instance, Matching, Vertex};
use crate::reductions::LevelAssignment;
use crate::voting::label;

/// Which certificate a leveling run produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelMode {
    /// Everyone starts at 0; levels ≤ ℓ and non-critical men end at 0.
    Min,
    /// Unmatched men start at 1; levels ≤ ℓ + 1 and non-critical men ≤ 1.
    Dom,
    /// Starts like `Min` but accepts any popular feasible matching:
    /// levels ≤ ℓ + 1 and non-critical men ≤ 1.
    Popular,
}

impl LevelMode {
    fn bound(self, ell: u32) -> u32 {
        match self {
            LevelMode::Min => ell,
            LevelMode::Dom | LevelMode::Popular => ell + 1,
        }
    }

    fn non_critical_bound(self) -> u32 {
        match self {
            LevelMode::Min => 0,
            LevelMode::Dom | LevelMode::Popular => 1,
        }
    }
}

/// One promotion of the pair `(w, M(w))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Promotion {
    pub phase: u8,
    pub edge: Edge,
    pub from: u32,
    pub to: u32,
}

/// Leveling for a minimum-size popular feasible matching.
pub fn assign_levels_min(inst: &Instance, m: &Matching) -> Result<LevelAssignment> {
    assign_levels_traced(inst, m, LevelMode::Min).map(|(lv, _)| lv)
}

/// Leveling for a dominant feasible matching.
pub fn assign_levels_dom(inst: &Instance, m: &Matching) -> Result<LevelAssignment> {
    assign_levels_traced(inst, m, LevelMode::Dom).map(|(lv, _)| lv)
}

/// Leveling of an arbitrary popular feasible matching, as used before
/// partitioning.
pub fn assign_levels_pfm(inst: &Instance, m: &Matching) -> Result<LevelAssignment> {
    assign_levels_traced(inst, m, LevelMode::Popular).map(|(lv, _)| lv)
}

/// Runs the three promotion phases to a fixpoint and returns the levels
/// together with every promotion in the order it happened.
pub fn assign_levels_traced(
    inst: &Instance,
    m: &Matching,
    mode: LevelMode,
) -> Result<(LevelAssignment, Vec<Promotion>)> {
    m.validate(inst)?;
    let ell = inst.critical_count() as u32;
    let bound = mode.bound(ell);
    let mut lv = LevelAssignment::zeros(inst);
    if mode == LevelMode::Dom {
        for a in 0..inst.n_men() {
            if m.man_partner(a).is_none() {
                lv.set(Vertex::Man(a), 1);
            }
        }
    }
    let edges: Vec<Edge> = inst.edges().into_iter().filter(|&e| !m.contains(e)).collect();
    let labels: Vec<_> = edges.iter().map(|&e| label(inst, m, e)).collect();

    let max_rounds = (ell as usize + 2) * inst.n_vertices().max(1);
    let mut trace = Vec::new();
    for _ in 0..max_rounds {
        let mut fired = false;
        for phase in 1..=3u8 {
            loop {
                let hit = edges.iter().zip(&labels).find_map(|(&e, l)| {
                    let i = lv.man(e.man);
                    let j = lv.woman(e.woman);
                    let target = match phase {
                        1 if l.is_plus_plus() && j <= i => i + 1,
                        2 if l.is_mixed() && j < i => i,
                        3 if l.is_minus_minus() && j + 2 <= i => i - 1,
                        _ => return None,
                    };
                    Some((e, j, target))
                });
                let Some((e, from, to)) = hit else { break };
                let Some(partner) = m.woman_partner(e.woman) else {
                    return Err(rejected(
                        inst,
                        e,
                        format!("phase {phase} would promote an unmatched woman"),
                    ));
                };
                if to > bound {
                    return Err(rejected(
                        inst,
                        e,
                        format!("phase {phase} would raise a level to {to}, above {bound}"),
                    ));
                }
                lv.set(Vertex::Woman(e.woman), to);
                lv.set(Vertex::Man(partner), to);
                trace.push(Promotion {
                    phase,
                    edge: e,
                    from,
                    to,
                });
                fired = true;
            }
        }
        if !fired {
            let cap = mode.non_critical_bound();
            for a in 0..inst.n_men() {
                if !inst.is_critical_man(a) && lv.man(a) > cap {
                    return Err(Error::NonCriticalLevel {
                        vertex: inst.man_name(a).to_string(),
                        level: lv.man(a),
                    });
                }
            }
            return Ok((lv, trace));
        }
    }
    Err(Error::LevelingDiverged(max_rounds))
}

fn rejected(inst: &Instance, e: Edge, reason: String) -> Error {
    Error::CertificateRejected {
        man: inst.man_name(e.man).to_string(),
        woman: inst.woman_name(e.woman).to_string(),
        reason,
    }
}

/// The checked condition families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Every `(+1,+1)` edge climbs: woman's level above man's.
    PlusPlusClimbs,
    /// Edges one level down are `(-1,-1)`.
    OneDownIsMinusMinus,
    /// No edge drops two levels; matched pairs share a level.
    NoSteepDrop,
    /// Unmatched men sit at the base level (0, or 1 for dominance).
    UnmatchedMenLevel,
    /// Levels stay within the copy range of the reduced instance and
    /// unmatched women sit at 0.
    LevelRange,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::PlusPlusClimbs,
        Condition::OneDownIsMinusMinus,
        Condition::NoSteepDrop,
        Condition::UnmatchedMenLevel,
        Condition::LevelRange,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Condition::PlusPlusClimbs => "1",
            Condition::OneDownIsMinusMinus => "2",
            Condition::NoSteepDrop => "3",
            Condition::UnmatchedMenLevel => "4",
            Condition::LevelRange => "range",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub vertex: Vertex,
    pub edge: Option<Edge>,
    pub detail: String,
}

/// Outcome per condition: `None` passes, otherwise the first witness found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub results: Vec<(Condition, Option<Violation>)>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, v)| v.is_none())
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.results.iter().find_map(|(_, v)| v.as_ref())
    }

    pub fn get(&self, c: Condition) -> Option<&Violation> {
        self.results.iter().find(|(k, _)| *k == c).and_then(|(_, v)| v.as_ref())
    }
}

pub fn check_min_conditions(inst: &Instance, m: &Matching, lv: &LevelAssignment) -> ConditionReport {
    check_conditions(inst, m, lv, LevelMode::Min)
}

pub fn check_dom_conditions(inst: &Instance, m: &Matching, lv: &LevelAssignment) -> ConditionReport {
    check_conditions(inst, m, lv, LevelMode::Dom)
}

pub fn check_conditions(
    inst: &Instance,
    m: &Matching,
    lv: &LevelAssignment,
    mode: LevelMode,
) -> ConditionReport {
    let mut results: Vec<(Condition, Option<Violation>)> =
        Condition::ALL.iter().map(|&c| (c, None)).collect();
    let mut note = |c: Condition, vertex: Vertex, edge: Option<Edge>, detail: String| {
        let slot = &mut results.iter_mut().find(|(k, _)| *k == c).unwrap().1;
        if slot.is_none() {
            *slot = Some(Violation {
                condition: c,
                vertex,
                edge,
                detail,
            });
        }
    };
    let ename = |e: Edge| format!("({}, {})", inst.man_name(e.man), inst.woman_name(e.woman));

    for e in inst.edges() {
        let (i, j) = (lv.man(e.man), lv.woman(e.woman));
        if m.contains(e) {
            if i != j {
                note(
                    Condition::NoSteepDrop,
                    Vertex::Man(e.man),
                    Some(e),
                    format!("matched edge {} joins levels {i} and {j}", ename(e)),
                );
            }
            continue;
        }
        let l = label(inst, m, e);
        if l.is_plus_plus() && j <= i {
            note(
                Condition::PlusPlusClimbs,
                Vertex::Man(e.man),
                Some(e),
                format!("(+1,+1) edge {} goes from level {i} to level {j}", ename(e)),
            );
        }
        if j + 1 == i && !l.is_minus_minus() {
            note(
                Condition::OneDownIsMinusMinus,
                Vertex::Man(e.man),
                Some(e),
                format!("edge {} drops one level but is labeled {l}", ename(e)),
            );
        }
        if j + 2 <= i {
            note(
                Condition::NoSteepDrop,
                Vertex::Man(e.man),
                Some(e),
                format!("edge {} drops from level {i} to level {j}", ename(e)),
            );
        }
    }

    let base = if mode == LevelMode::Dom { 1 } else { 0 };
    for a in 0..inst.n_men() {
        if m.man_partner(a).is_none() && lv.man(a) != base {
            note(
                Condition::UnmatchedMenLevel,
                Vertex::Man(a),
                None,
                format!("unmatched {} is at level {}, not {base}", inst.man_name(a), lv.man(a)),
            );
        }
    }

    let ell = inst.critical_count() as u32;
    let bound = mode.bound(ell);
    let cap = mode.non_critical_bound();
    for a in 0..inst.n_men() {
        let limit = if inst.is_critical_man(a) { bound } else { cap };
        if lv.man(a) > limit {
            note(
                Condition::LevelRange,
                Vertex::Man(a),
                None,
                format!("{} is at level {}, above {limit}", inst.man_name(a), lv.man(a)),
            );
        }
    }
    for b in 0..inst.n_women() {
        if m.woman_partner(b).is_none() && lv.woman(b) != 0 {
            note(
                Condition::LevelRange,
                Vertex::Woman(b),
                None,
                format!("unmatched {} is at level {}", inst.woman_name(b), lv.woman(b)),
            );
        }
    }
    ConditionReport { results }
}
