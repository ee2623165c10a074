//! Minimum-size and dominant feasible matchings, and the popular-edge
//! decision with an optional witness.
//!
//! The free functions expect critical vertices on the men's side;
//! [`PopularEdgeSolver`] accepts either orientation and answers in the
//! caller's orientation.

use std::cell::OnceCell;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gale_shapley::{first_blocking_pair, propose_man_optimal};
use crate::leveling::{check_conditions, LevelMode};
use crate::model::{is_feasible, normalize_critical_side, Edge, Instance, Matching};
use crate::oracle;
use crate::reductions::{build, LevelAssignment, ReducedInstance, ReductionKind};
use crate::stable_pairs::{rotation_chain, stable_pairs, StablePairMethod};

/// Which family produced a positive answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Via {
    Min,
    Dominant,
    None,
}

impl Via {
    pub fn name(self) -> &'static str {
        match self {
            Via::Min => "min",
            Via::Dominant => "dominant",
            Via::None => "none",
        }
    }

    fn kind(self) -> Option<ReductionKind> {
        match self {
            Via::Min => Some(ReductionKind::GPrime),
            Via::Dominant => Some(ReductionKind::GDoublePrime),
            Via::None => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub popular: bool,
    pub via: Via,
}

/// A popular feasible matching containing the queried edge, with the
/// levels that certify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub matching: Matching,
    pub levels: LevelAssignment,
    pub via: Via,
}

pub fn min_size_pfm(inst: &Instance) -> Result<Matching> {
    let red = build(inst, ReductionKind::GPrime)?;
    red.image(&propose_man_optimal(red.inst()))
}

pub fn dominant_fm(inst: &Instance) -> Result<Matching> {
    let red = build(inst, ReductionKind::GDoublePrime)?;
    red.image(&propose_man_optimal(red.inst()))
}

pub fn edge_in_min_pfm(inst: &Instance, e: Edge) -> Result<bool> {
    PopularEdgeSolver::new(inst)?.edge_in(ReductionKind::GPrime, e)
}

pub fn edge_in_dfm(inst: &Instance, e: Edge) -> Result<bool> {
    PopularEdgeSolver::new(inst)?.edge_in(ReductionKind::GDoublePrime, e)
}

pub fn decide_popular_edge(inst: &Instance, e: Edge) -> Result<Decision> {
    PopularEdgeSolver::new(inst)?.decide(e)
}

pub fn witness(inst: &Instance, e: Edge) -> Result<Option<Witness>> {
    PopularEdgeSolver::new(inst)?.witness(e)
}

/// Builds both reductions once and answers any number of edge queries.
pub struct PopularEdgeSolver {
    original: Instance,
    swapped: bool,
    gprime: ReducedInstance,
    gpp: ReducedInstance,
    method: StablePairMethod,
    pairs_min: OnceCell<BTreeSet<Edge>>,
    pairs_dom: OnceCell<BTreeSet<Edge>>,
}

impl PopularEdgeSolver {
    pub fn new(inst: &Instance) -> Result<Self> {
        PopularEdgeSolver::with_method(inst, StablePairMethod::Rotations)
    }

    pub fn with_method(inst: &Instance, method: StablePairMethod) -> Result<Self> {
        let (norm, swapped) = normalize_critical_side(inst);
        let gprime = build(&norm, ReductionKind::GPrime)?;
        let gpp = build(&norm, ReductionKind::GDoublePrime)?;
        Ok(PopularEdgeSolver {
            original: inst.clone(),
            swapped,
            gprime,
            gpp,
            method,
            pairs_min: OnceCell::new(),
            pairs_dom: OnceCell::new(),
        })
    }

    /// The instance as given.
    pub fn instance(&self) -> &Instance {
        &self.original
    }

    /// The instance with critical vertices on the men's side.
    pub fn normalized(&self) -> &Instance {
        self.gprime.base()
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn reduced(&self, kind: ReductionKind) -> &ReducedInstance {
        match kind {
            ReductionKind::GPrime => &self.gprime,
            ReductionKind::GDoublePrime => &self.gpp,
        }
    }

    fn to_norm(&self, e: Edge) -> Edge {
        if self.swapped {
            Edge::new(e.woman, e.man)
        } else {
            e
        }
    }

    fn from_norm(&self, m: Matching) -> Matching {
        if self.swapped {
            m.swap_sides()
        } else {
            m
        }
    }

    fn levels_from_norm(&self, lv: LevelAssignment) -> LevelAssignment {
        if self.swapped {
            lv.swap_sides()
        } else {
            lv
        }
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        if self.original.is_edge(e) {
            Ok(())
        } else {
            Err(Error::UnknownEdge {
                man: name(self.original.men(), e.man),
                woman: name(self.original.women(), e.woman),
            })
        }
    }

    fn pairs(&self, kind: ReductionKind) -> Result<&BTreeSet<Edge>> {
        let (cell, red) = match kind {
            ReductionKind::GPrime => (&self.pairs_min, &self.gprime),
            ReductionKind::GDoublePrime => (&self.pairs_dom, &self.gpp),
        };
        if cell.get().is_none() {
            let pairs = match self.method {
                StablePairMethod::Rotations => stable_pairs(red.inst()),
                StablePairMethod::Exhaustive { cap } => oracle::stable_edges(red.inst(), cap)?,
            };
            let _ = cell.set(pairs);
        }
        Ok(cell.get().unwrap())
    }

    /// A minimum-size popular feasible matching, in the caller's orientation.
    pub fn min_size_pfm(&self) -> Result<Matching> {
        self.image_of_man_optimal(ReductionKind::GPrime)
    }

    /// A dominant feasible matching, in the caller's orientation.
    pub fn dominant_fm(&self) -> Result<Matching> {
        self.image_of_man_optimal(ReductionKind::GDoublePrime)
    }

    fn image_of_man_optimal(&self, kind: ReductionKind) -> Result<Matching> {
        let red = self.reduced(kind);
        Ok(self.from_norm(red.image(&propose_man_optimal(red.inst()))?))
    }

    /// Whether some lifted copy of `e` is a stable pair of the reduction.
    pub fn edge_in(&self, kind: ReductionKind, e: Edge) -> Result<bool> {
        Ok(self.lifted_stable_pair(kind, e)?.is_some())
    }

    fn lifted_stable_pair(&self, kind: ReductionKind, e: Edge) -> Result<Option<Edge>> {
        self.check_edge(e)?;
        let red = self.reduced(kind);
        let lifted = red.lift_edge(self.to_norm(e))?;
        let pairs = self.pairs(kind)?;
        Ok(lifted.into_iter().find(|l| pairs.contains(l)))
    }

    /// Minimum-size family first, then dominant.
    pub fn decide(&self, e: Edge) -> Result<Decision> {
        for via in [Via::Min, Via::Dominant] {
            if self.edge_in(via.kind().unwrap(), e)? {
                return Ok(Decision { popular: true, via });
            }
        }
        Ok(Decision {
            popular: false,
            via: Via::None,
        })
    }

    /// A verified popular feasible matching containing `e`, or `None` when
    /// no such matching exists.
    pub fn witness(&self, e: Edge) -> Result<Option<Witness>> {
        let decision = self.decide(e)?;
        let Some(kind) = decision.via.kind() else {
            return Ok(None);
        };
        let lifted = self
            .lifted_stable_pair(kind, e)?
            .expect("decision found a lifted stable pair");
        let red = self.reduced(kind);
        let mred = match forced_stable_matching(red.inst(), lifted)? {
            Some(m) => m,
            None => rotation_chain(red.inst())
                .into_iter()
                .find(|m| m.contains(lifted))
                .ok_or_else(|| {
                    Error::Verification(format!(
                        "no stable matching of {} contains ({}, {})",
                        kind.name(),
                        red.inst().man_name(lifted.man),
                        red.inst().woman_name(lifted.woman)
                    ))
                })?,
        };
        let base = red.base();
        let matching = red.image(&mred)?;
        let levels = red.image_levels(&mred)?;
        let norm_edge = self.to_norm(e);
        if !matching.contains(norm_edge) {
            return Err(Error::Verification("witness does not contain the edge".into()));
        }
        if !is_feasible(base, &matching) {
            return Err(Error::Verification("witness is not feasible".into()));
        }
        let mode = match kind {
            ReductionKind::GPrime => LevelMode::Min,
            ReductionKind::GDoublePrime => LevelMode::Dom,
        };
        let report = check_conditions(base, &matching, &levels, mode);
        if let Some(v) = report.first_violation() {
            return Err(Error::Verification(format!(
                "witness certificate fails: {}",
                v.detail
            )));
        }
        Ok(Some(Witness {
            matching: self.from_norm(matching),
            levels: self.levels_from_norm(levels),
            via: decision.via,
        }))
    }
}

fn name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("#{i}"))
}

/// Deferred acceptance with `e.woman` refusing everyone below `e.man`.
/// When `e` is a stable pair the result is the stable matching that gives
/// her exactly `e.man`; anything else is reported as `None`.
fn forced_stable_matching(inst: &Instance, e: Edge) -> Result<Option<Matching>> {
    let truncated = inst.truncate_woman_list(e.woman, e.man)?;
    let m = propose_man_optimal(&truncated);
    if m.contains(e) && first_blocking_pair(inst, &m).is_none() {
        Ok(Some(m))
    } else {
        Ok(None)
    }
}
