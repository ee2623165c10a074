//! Splitting a popular feasible matching that is neither minimum-size nor
//! dominant into three parts, and the two leveled proposal procedures that
//! turn it into one of each while keeping the queried edge.
//!
//! Levels come from [`assign_levels_pfm`] on the input matching and are
//! kept fixed while partitioning.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::leveling::assign_levels_pfm;
use crate::model::{Edge, Instance, Matching, Vertex};
use crate::popular_edge::{dominant_fm, min_size_pfm};
use crate::reductions::LevelAssignment;
use crate::voting::{label, symmetric_difference, AltComponent, ComponentKind, EdgeLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// Moves down in level: becomes part of the minimum-size matching.
    D,
    /// Moves up in level: becomes part of the dominant matching.
    M,
    /// Untouched by either transformation.
    R,
}

impl Part {
    pub fn name(self) -> &'static str {
        match self {
            Part::D => "d",
            Part::M => "m",
            Part::R => "r",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathClass {
    /// Size-reducing: one more `(+1,+1)` than `(-1,-1)` edge, from a matched
    /// level-0 woman to a non-critical level-1 man.
    Srap,
    /// Size-increasing: balanced labels, both endpoints unmatched.
    Siap,
    Other,
}

impl PathClass {
    pub fn name(self) -> &'static str {
        match self {
            PathClass::Srap => "srap",
            PathClass::Siap => "siap",
            PathClass::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedPath {
    pub component: AltComponent,
    pub class: PathClass,
}

/// Classifies one component of `M ⊕ N`. SRAPs are oriented woman to man,
/// SIAPs unmatched man to unmatched woman.
pub fn classify(inst: &Instance, m: &Matching, lv: &LevelAssignment, c: &AltComponent) -> ClassifiedPath {
    let other = ClassifiedPath {
        component: c.clone(),
        class: PathClass::Other,
    };
    if c.kind != ComponentKind::Path || c.vertices.len() < 2 {
        return other;
    }
    let (a, b) = (c.vertices[0], *c.vertices.last().unwrap());
    let (man_end, woman_end, man_first) = match (a, b) {
        (Vertex::Man(x), Vertex::Woman(y)) => (x, y, true),
        (Vertex::Woman(y), Vertex::Man(x)) => (x, y, false),
        _ => return other,
    };
    let man_matched = m.man_partner(man_end).is_some();
    let woman_matched = m.woman_partner(woman_end).is_some();
    if man_matched
        && woman_matched
        && c.plus_plus == c.minus_minus + 1
        && lv.woman(woman_end) == 0
        && !inst.is_critical_man(man_end)
        && lv.man(man_end) == 1
    {
        return ClassifiedPath {
            component: if man_first { c.reversed() } else { c.clone() },
            class: PathClass::Srap,
        };
    }
    if !man_matched && !woman_matched && c.plus_plus == c.minus_minus {
        return ClassifiedPath {
            component: if man_first { c.clone() } else { c.reversed() },
            class: PathClass::Siap,
        };
    }
    other
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPaths {
    pub sraps: Vec<AltComponent>,
    pub siaps: Vec<AltComponent>,
    /// Every component examined, in discovery order.
    pub classified: Vec<ClassifiedPath>,
}

/// Finds SRAPs in `M ⊕ M_min` and SIAPs in `M ⊕ M_dom`, where the two
/// references are the images of the man-optimal stable matchings of G′ and
/// G″. Components of both differences are classified and deduplicated.
pub fn find_srap_siap(inst: &Instance, m: &Matching, lv: &LevelAssignment) -> Result<AlternatingPaths> {
    for a in 0..inst.n_men() {
        if !inst.is_critical_man(a) && lv.man(a) > 1 {
            return Err(Error::NonCriticalLevel {
                vertex: inst.man_name(a).to_string(),
                level: lv.man(a),
            });
        }
    }
    let m_min = min_size_pfm(inst)?;
    let m_dom = dominant_fm(inst)?;
    let mut classified: Vec<ClassifiedPath> = Vec::new();
    for reference in [&m_min, &m_dom] {
        for c in symmetric_difference(inst, m, reference) {
            let cp = classify(inst, m, lv, &c);
            if !classified.iter().any(|x| x.component == cp.component) {
                classified.push(cp);
            }
        }
    }
    let pick = |class: PathClass| -> Vec<AltComponent> {
        classified
            .iter()
            .filter(|c| c.class == class)
            .map(|c| c.component.clone())
            .collect()
    };
    let sraps = pick(PathClass::Srap);
    let siaps = pick(PathClass::Siap);
    if sraps.is_empty() {
        return Err(Error::NoSrap);
    }
    if siaps.is_empty() {
        return Err(Error::NoSiap);
    }
    Ok(AlternatingPaths {
        sraps,
        siaps,
        classified,
    })
}

/// The three-way split and the sub-matchings it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition3 {
    men: Vec<Part>,
    women: Vec<Part>,
    pub m_d: Matching,
    pub m_m: Matching,
    pub m_r: Matching,
}

impl Partition3 {
    pub fn part(&self, v: Vertex) -> Part {
        match v {
            Vertex::Man(a) => self.men[a],
            Vertex::Woman(b) => self.women[b],
        }
    }

    pub fn men(&self) -> &[Part] {
        &self.men
    }

    pub fn women(&self) -> &[Part] {
        &self.women
    }

    pub fn sub_matching(&self, p: Part) -> &Matching {
        match p {
            Part::D => &self.m_d,
            Part::M => &self.m_m,
            Part::R => &self.m_r,
        }
    }

    pub fn vertices(&self, p: Part) -> Vec<Vertex> {
        let men = (0..self.men.len()).filter(|&a| self.men[a] == p).map(Vertex::Man);
        let women = (0..self.women.len()).filter(|&b| self.women[b] == p).map(Vertex::Woman);
        men.chain(women).collect()
    }

    /// The sub-matching lying in part `p`, as edges.
    pub fn edges(&self, p: Part) -> Vec<Edge> {
        self.sub_matching(p).edges().collect()
    }
}

struct Assign<'a> {
    inst: &'a Instance,
    men: Vec<Option<Part>>,
    women: Vec<Option<Part>>,
}

impl Assign<'_> {
    fn put(&mut self, v: Vertex, p: Part) -> Result<()> {
        let slot = match v {
            Vertex::Man(a) => &mut self.men[a],
            Vertex::Woman(b) => &mut self.women[b],
        };
        match *slot {
            Some(q) if q != p => Err(Error::PartitionConflict(self.inst.vertex_name(v).to_string())),
            _ => {
                *slot = Some(p);
                Ok(())
            }
        }
    }
}

/// Which edges trigger the two closure steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ClosureRule {
    /// Only `(+1,+1)` edges with `level(w) ≤ level(m) + 1`, to any woman.
    PlusPlusOnly,
    /// Also any edge with `level(w) ≤ level(m)`, and the `d` closure only
    /// looks at women already in `d`. Without this, edges in `A_r × B_d` and
    /// `A_m × B_r` can end up at equal or falling levels with a label other
    /// than `(-1,-1)`.
    #[default]
    LevelClosed,
}

impl ClosureRule {
    fn triggers(self, l: EdgeLabel, i: u32, j: u32) -> bool {
        match self {
            ClosureRule::PlusPlusOnly => l.is_plus_plus() && j <= i + 1,
            ClosureRule::LevelClosed => j <= i || (l.is_plus_plus() && j == i + 1),
        }
    }
}

/// [`partition_with`] under the default closure rule.
pub fn partition(
    inst: &Instance,
    m: &Matching,
    lv: &LevelAssignment,
    sraps: &[AltComponent],
    siaps: &[AltComponent],
) -> Result<Partition3> {
    partition_with(inst, m, lv, sraps, siaps, ClosureRule::default())
}

/// Runs the partition steps in order: unmatched vertices to `m`, SRAP
/// vertices to `d`, SIAP vertices to `m`, the `d` closure over unassigned
/// men, the `m` closure over unassigned women, and the rest to `r`.
pub fn partition_with(
    inst: &Instance,
    m: &Matching,
    lv: &LevelAssignment,
    sraps: &[AltComponent],
    siaps: &[AltComponent],
    rule: ClosureRule,
) -> Result<Partition3> {
    m.validate(inst)?;
    let mut asg = Assign {
        inst,
        men: vec![None; inst.n_men()],
        women: vec![None; inst.n_women()],
    };
    for a in 0..inst.n_men() {
        if m.man_partner(a).is_none() {
            asg.put(Vertex::Man(a), Part::M)?;
        }
    }
    for b in 0..inst.n_women() {
        if m.woman_partner(b).is_none() {
            asg.put(Vertex::Woman(b), Part::M)?;
        }
    }
    for path in sraps {
        for &v in &path.vertices {
            asg.put(v, Part::D)?;
        }
    }
    for path in siaps {
        for &v in &path.vertices {
            asg.put(v, Part::M)?;
        }
    }

    let candidates: Vec<(Edge, EdgeLabel)> = inst
        .edges()
        .into_iter()
        .filter(|&e| !m.contains(e))
        .map(|e| (e, label(inst, m, e)))
        .collect();
    let fires = |e: Edge, l: EdgeLabel| rule.triggers(l, lv.man(e.man), lv.woman(e.woman));

    loop {
        let hit = candidates.iter().find(|&&(e, l)| {
            asg.men[e.man].is_none()
                && (rule == ClosureRule::PlusPlusOnly || asg.women[e.woman] == Some(Part::D))
                && fires(e, l)
        });
        let Some(&(e, _)) = hit else { break };
        asg.put(Vertex::Man(e.man), Part::D)?;
        if let Some(w) = m.man_partner(e.man) {
            asg.put(Vertex::Woman(w), Part::D)?;
        }
    }
    loop {
        let hit = candidates
            .iter()
            .find(|&&(e, l)| asg.men[e.man] == Some(Part::M) && asg.women[e.woman].is_none() && fires(e, l));
        let Some(&(e, _)) = hit else { break };
        asg.put(Vertex::Woman(e.woman), Part::M)?;
        if let Some(a) = m.woman_partner(e.woman) {
            asg.put(Vertex::Man(a), Part::M)?;
        }
    }

    let men: Vec<Part> = asg.men.into_iter().map(|p| p.unwrap_or(Part::R)).collect();
    let women: Vec<Part> = asg.women.into_iter().map(|p| p.unwrap_or(Part::R)).collect();
    let mut subs = [Matching::empty(inst), Matching::empty(inst), Matching::empty(inst)];
    for e in m.edges() {
        let (p, q) = (men[e.man], women[e.woman]);
        if p != q {
            return Err(Error::Verification(format!(
                "matched edge ({}, {}) crosses parts {} and {}",
                inst.man_name(e.man),
                inst.woman_name(e.woman),
                p.name(),
                q.name()
            )));
        }
        subs[p as usize].insert(e);
    }
    let [m_d, m_m, m_r] = subs;
    Ok(Partition3 {
        men,
        women,
        m_d,
        m_m,
        m_r,
    })
}

/// One failed level relation on an edge between two parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossEdgeViolation {
    pub edge: Edge,
    pub parts: (Part, Part),
    pub clause: &'static str,
}

/// Checks edges in `A_m × B_d`, `A_r × B_d` and `A_m × B_r`: a level-`i` man
/// has no `(+1,+1)` edge to a level-`(i+1)` woman, no neighbor at level
/// `i-1` or below, and only `(-1,-1)` edges to level-`i` women.
pub fn check_cross_edges(
    inst: &Instance,
    m: &Matching,
    lv: &LevelAssignment,
    p: &Partition3,
) -> Vec<CrossEdgeViolation> {
    let mut out = Vec::new();
    for e in inst.edges() {
        let parts = (p.men[e.man], p.women[e.woman]);
        let watched = matches!(parts, (Part::M, Part::D) | (Part::R, Part::D) | (Part::M, Part::R));
        if !watched || m.contains(e) {
            continue;
        }
        let (i, j) = (lv.man(e.man), lv.woman(e.woman));
        let l = label(inst, m, e);
        if j == i + 1 && l.is_plus_plus() {
            out.push(CrossEdgeViolation {
                edge: e,
                parts,
                clause: "(+1,+1) edge one level up",
            });
        }
        if j < i {
            out.push(CrossEdgeViolation {
                edge: e,
                parts,
                clause: "woman one or more levels below the man",
            });
        }
        if j == i && !l.is_minus_minus() {
            out.push(CrossEdgeViolation {
                edge: e,
                parts,
                clause: "same-level edge not (-1,-1)",
            });
        }
    }
    out
}

/// Result of a transformation on one part: the new sub-matching and the
/// levels it ends with (women take their partner's level, or 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub matching: Matching,
    pub levels: LevelAssignment,
}

/// Leveled deferred acceptance inside one part. A woman ranks proposers by
/// level first and her own list second.
struct Proposals<'a> {
    inst: &'a Instance,
    in_part: Vec<bool>,
    level: Vec<u32>,
    next: Vec<usize>,
    matching: Matching,
    steps: usize,
    bound: usize,
}

impl Proposals<'_> {
    fn accepts(&self, w: usize, a: usize) -> bool {
        match self.matching.woman_partner(w) {
            None => true,
            Some(rival) => {
                let mine = (self.level[a], std::cmp::Reverse(self.inst.woman_rank(w, a)));
                let theirs = (self.level[rival], std::cmp::Reverse(self.inst.woman_rank(w, rival)));
                mine > theirs
            }
        }
    }

    /// Serves free men until none can move; `promote` decides whether an
    /// exhausted man climbs a level and restarts.
    fn run(&mut self, mut queue: VecDeque<usize>, promote: impl Fn(usize, u32) -> bool) -> Result<()> {
        while let Some(a) = queue.pop_front() {
            loop {
                let list = self.inst.man_prefs(a);
                if self.next[a] >= list.len() {
                    if promote(a, self.level[a]) {
                        self.level[a] += 1;
                        self.next[a] = 0;
                        continue;
                    }
                    break;
                }
                let w = list[self.next[a]];
                self.next[a] += 1;
                if !self.in_part[w] {
                    continue;
                }
                self.steps += 1;
                if self.steps > self.bound {
                    return Err(Error::ProposalBound(self.bound));
                }
                if self.accepts(w, a) {
                    if let Some(rival) = self.matching.woman_partner(w) {
                        self.matching.remove(Edge::new(rival, w));
                        queue.push_back(rival);
                    }
                    self.matching.insert(Edge::new(a, w));
                    break;
                }
            }
        }
        Ok(())
    }

    fn levels(&self, part_men: &[usize], part_women: &[usize], lv: &LevelAssignment) -> LevelAssignment {
        let mut out = lv.clone();
        for &a in part_men {
            out.set(Vertex::Man(a), self.level[a]);
        }
        for &b in part_women {
            let l = self.matching.woman_partner(b).map_or(0, |a| self.level[a]);
            out.set(Vertex::Woman(b), l);
        }
        out
    }
}

fn part_members(p: &Partition3, part: Part) -> (Vec<usize>, Vec<usize>) {
    let men = (0..p.men.len()).filter(|&a| p.men[a] == part).collect();
    let women = (0..p.women.len()).filter(|&b| p.women[b] == part).collect();
    (men, women)
}

fn proposal_bound(inst: &Instance) -> usize {
    (inst.critical_count() + 2) * inst.n_edges().max(1)
}

/// Transformation of the `d` part: matched pairs drop one level, level-0
/// pairs dissolve, and the freed men propose within the part. An exhausted
/// critical man below level ℓ climbs and restarts.
pub fn transform1(inst: &Instance, p: &Partition3, lv: &LevelAssignment) -> Result<Transformed> {
    let (men, women) = part_members(p, Part::D);
    let mut in_part = vec![false; inst.n_women()];
    for &b in &women {
        in_part[b] = true;
    }
    let mut level = lv.men().to_vec();
    let mut matching = Matching::empty(inst);
    let mut next = vec![0usize; inst.n_men()];
    let mut queue = VecDeque::new();
    for &a in &men {
        let l = lv.man(a);
        match p.m_d.man_partner(a) {
            Some(w) if l >= 1 => {
                level[a] = l - 1;
                matching.insert(Edge::new(a, w));
                next[a] = inst.man_rank(a, w).unwrap() + 1;
            }
            _ => {
                level[a] = 0;
                queue.push_back(a);
            }
        }
    }
    let mut run = Proposals {
        inst,
        in_part,
        level,
        next,
        matching,
        steps: 0,
        bound: proposal_bound(inst),
    };
    let ell = inst.critical_count() as u32;
    run.run(queue, |a, l| inst.is_critical_man(a) && l < ell)?;
    let levels = run.levels(&men, &women, lv);
    Ok(Transformed {
        matching: run.matching,
        levels,
    })
}

/// Transformation of the `m` part: unmatched men enter at level 1 and
/// propose within the part; displaced men continue down their lists. An
/// exhausted critical man climbs while below ℓ + 1; an exhausted
/// non-critical man at level 0 climbs once.
pub fn transform2(inst: &Instance, p: &Partition3, lv: &LevelAssignment) -> Result<Transformed> {
    let (men, women) = part_members(p, Part::M);
    let mut in_part = vec![false; inst.n_women()];
    for &b in &women {
        in_part[b] = true;
    }
    let mut level = lv.men().to_vec();
    let mut matching = Matching::empty(inst);
    let mut next = vec![0usize; inst.n_men()];
    let mut queue = VecDeque::new();
    for &a in &men {
        match p.m_m.man_partner(a) {
            Some(w) => {
                matching.insert(Edge::new(a, w));
                next[a] = inst.man_rank(a, w).unwrap() + 1;
            }
            None => {
                level[a] = 1;
                queue.push_back(a);
            }
        }
    }
    let mut run = Proposals {
        inst,
        in_part,
        level,
        next,
        matching,
        steps: 0,
        bound: proposal_bound(inst),
    };
    let top = inst.critical_count() as u32 + 1;
    run.run(queue, |a, l| if inst.is_critical_man(a) { l < top } else { l == 0 })?;
    let levels = run.levels(&men, &women, lv);
    Ok(Transformed {
        matching: run.matching,
        levels,
    })
}

fn union(inst: &Instance, parts: &[&Matching]) -> Matching {
    let mut out = Matching::empty(inst);
    for m in parts {
        for e in m.edges() {
            out.insert(e);
        }
    }
    out
}

/// Every intermediate object of the partition pipeline.
#[derive(Clone, Debug)]
pub struct PartitionOutcome {
    pub levels: LevelAssignment,
    pub paths: AlternatingPaths,
    pub partition: Partition3,
    pub cross_violations: Vec<CrossEdgeViolation>,
    pub t1: Transformed,
    pub t2: Transformed,
    /// `T1(M_d) ∪ M_m ∪ M_r`, a minimum-size popular feasible matching.
    pub min_size: Matching,
    /// `M_d ∪ T2(M_m) ∪ M_r`, a dominant feasible matching.
    pub dominant: Matching,
}

impl PartitionOutcome {
    /// The transformed matching that keeps `e`: `M_m` and `M_r` edges survive
    /// the first transformation, `M_d` edges the second.
    pub fn preserving(&self, e: Edge) -> Option<&Matching> {
        if self.partition.m_d.contains(e) {
            Some(&self.dominant)
        } else if self.partition.m_m.contains(e) || self.partition.m_r.contains(e) {
            Some(&self.min_size)
        } else {
            None
        }
    }
}

/// Levels, paths, partition and both transformations for a popular
/// feasible matching that is neither minimum-size nor dominant.
pub fn run_partition(inst: &Instance, m: &Matching) -> Result<PartitionOutcome> {
    run_partition_with(inst, m, ClosureRule::default())
}

pub fn run_partition_with(inst: &Instance, m: &Matching, rule: ClosureRule) -> Result<PartitionOutcome> {
    let levels = assign_levels_pfm(inst, m)?;
    let paths = find_srap_siap(inst, m, &levels)?;
    let partition = partition_with(inst, m, &levels, &paths.sraps, &paths.siaps, rule)?;
    let cross_violations = check_cross_edges(inst, m, &levels, &partition);
    let t1 = transform1(inst, &partition, &levels)?;
    let t2 = transform2(inst, &partition, &levels)?;
    let min_size = union(inst, &[&t1.matching, &partition.m_m, &partition.m_r]);
    let dominant = union(inst, &[&partition.m_d, &t2.matching, &partition.m_r]);
    Ok(PartitionOutcome {
        levels,
        paths,
        partition,
        cross_violations,
        t1,
        t2,
        min_size,
        dominant,
    })
}

/// Level moves that leave the allowed window: `d` vertices that started above
/// 0 stay within `{i-1, i}`, `m` vertices within `{i, i+1}`.
pub fn level_drift_violations(
    inst: &Instance,
    p: &Partition3,
    before: &LevelAssignment,
    t1: &Transformed,
    t2: &Transformed,
) -> Vec<Vertex> {
    let mut out = Vec::new();
    let all = (0..inst.n_men()).map(Vertex::Man).chain((0..inst.n_women()).map(Vertex::Woman));
    for v in all {
        let i = before.get(v);
        let ok = match p.part(v) {
            Part::D => {
                let after = t1.levels.get(v);
                i == 0 || after + 1 == i || after == i
            }
            Part::M => {
                let after = t2.levels.get(v);
                after == i || after == i + 1
            }
            Part::R => true,
        };
        if !ok {
            out.push(v);
        }
    }
    out
}
