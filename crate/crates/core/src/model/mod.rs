//! Marriage instances with critical vertices, and matchings over them.
//!
//! Vertices are addressed by dense indices (`Vertex::Man(i)`, `Vertex::Woman(j)`);
//! the declared order of the input is the index order and is the order used
//! for every deterministic scan in the crate. Names are kept only for I/O.

mod generate;
mod text;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use generate::{generate_random, GenSpec};
pub use text::{
    parse_instance, parse_instance_with, parse_matching, serialize_instance, serialize_matching,
    IdPolicy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Men,
    Women,
}

/// Men sort before women; within a side, declared order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Man(usize),
    Woman(usize),
}

impl Vertex {
    pub fn side(self) -> Side {
        match self {
            Vertex::Man(_) => Side::Men,
            Vertex::Woman(_) => Side::Women,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub man: usize,
    pub woman: usize,
}

impl Edge {
    pub fn new(man: usize, woman: usize) -> Self {
        Edge { man, woman }
    }
}

/// A preference list together with a rank lookup sorted by neighbor index.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PrefList {
    order: Vec<usize>,
    ranks: Vec<(usize, usize)>,
}

impl PrefList {
    fn new(order: Vec<usize>) -> Self {
        let mut ranks: Vec<(usize, usize)> =
            order.iter().enumerate().map(|(r, &v)| (v, r)).collect();
        ranks.sort_unstable();
        PrefList { order, ranks }
    }

    fn rank(&self, other: usize) -> Option<usize> {
        self.ranks
            .binary_search_by_key(&other, |&(v, _)| v)
            .ok()
            .map(|i| self.ranks[i].1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    men: Vec<String>,
    women: Vec<String>,
    man_prefs: Vec<PrefList>,
    woman_prefs: Vec<PrefList>,
    critical_men: Vec<bool>,
    critical_women: Vec<bool>,
    index: HashMap<String, Vertex>,
}

impl Instance {
    /// Builds an instance from index-based lists, checking every structural
    /// invariant except id syntax.
    pub fn from_indexed(
        men: Vec<String>,
        women: Vec<String>,
        man_prefs: Vec<Vec<usize>>,
        woman_prefs: Vec<Vec<usize>>,
        critical_men: Vec<bool>,
        critical_women: Vec<bool>,
    ) -> Result<Self> {
        if man_prefs.len() != men.len() || critical_men.len() != men.len() {
            return Err(Error::InvalidMatching(
                "men, their lists and their critical flags disagree in length".into(),
            ));
        }
        if woman_prefs.len() != women.len() || critical_women.len() != women.len() {
            return Err(Error::InvalidMatching(
                "women, their lists and their critical flags disagree in length".into(),
            ));
        }

        let mut index = HashMap::with_capacity(men.len() + women.len());
        for (i, name) in men.iter().enumerate() {
            if index.insert(name.clone(), Vertex::Man(i)).is_some() {
                return Err(Error::DuplicateId(name.clone()));
            }
        }
        for (j, name) in women.iter().enumerate() {
            if index.insert(name.clone(), Vertex::Woman(j)).is_some() {
                return Err(Error::DuplicateId(name.clone()));
            }
        }

        let man_prefs: Vec<PrefList> = man_prefs.into_iter().map(PrefList::new).collect();
        let woman_prefs: Vec<PrefList> = woman_prefs.into_iter().map(PrefList::new).collect();

        for (m, list) in man_prefs.iter().enumerate() {
            check_list(&men[m], list, women.len(), &women)?;
        }
        for (w, list) in woman_prefs.iter().enumerate() {
            check_list(&women[w], list, men.len(), &men)?;
        }
        for (m, list) in man_prefs.iter().enumerate() {
            for &w in &list.order {
                if woman_prefs[w].rank(m).is_none() {
                    return Err(Error::NonMutualAdjacency {
                        from: men[m].clone(),
                        to: women[w].clone(),
                    });
                }
            }
        }
        for (w, list) in woman_prefs.iter().enumerate() {
            for &m in &list.order {
                if man_prefs[m].rank(w).is_none() {
                    return Err(Error::NonMutualAdjacency {
                        from: women[w].clone(),
                        to: men[m].clone(),
                    });
                }
            }
        }

        if let (Some(m), Some(w)) = (
            critical_men.iter().position(|&c| c),
            critical_women.iter().position(|&c| c),
        ) {
            return Err(Error::CriticalOnBothSides {
                man: men[m].clone(),
                woman: women[w].clone(),
            });
        }

        Ok(Instance {
            men,
            women,
            man_prefs,
            woman_prefs,
            critical_men,
            critical_women,
            index,
        })
    }

    /// Convenience constructor from names; `prefs` may omit vertices with
    /// empty lists.
    pub fn from_names(
        men: &[&str],
        women: &[&str],
        prefs: &[(&str, &[&str])],
        critical: &[&str],
    ) -> Result<Self> {
        let men: Vec<String> = men.iter().map(|s| s.to_string()).collect();
        let women: Vec<String> = women.iter().map(|s| s.to_string()).collect();
        for id in men.iter().chain(women.iter()) {
            text::check_id(id, IdPolicy::Base)?;
        }
        let lookup = |name: &str| -> Result<Vertex> {
            if let Some(i) = men.iter().position(|m| m == name) {
                Ok(Vertex::Man(i))
            } else if let Some(j) = women.iter().position(|w| w == name) {
                Ok(Vertex::Woman(j))
            } else {
                Err(Error::UnknownVertex(name.to_string()))
            }
        };
        let mut man_prefs = vec![Vec::new(); men.len()];
        let mut woman_prefs = vec![Vec::new(); women.len()];
        for (owner, list) in prefs {
            match lookup(owner)? {
                Vertex::Man(m) => {
                    for name in list.iter() {
                        match lookup(name)? {
                            Vertex::Woman(w) => man_prefs[m].push(w),
                            Vertex::Man(_) => return Err(Error::UnknownVertex(name.to_string())),
                        }
                    }
                }
                Vertex::Woman(w) => {
                    for name in list.iter() {
                        match lookup(name)? {
                            Vertex::Man(m) => woman_prefs[w].push(m),
                            Vertex::Woman(_) => {
                                return Err(Error::UnknownVertex(name.to_string()))
                            }
                        }
                    }
                }
            }
        }
        let mut critical_men = vec![false; men.len()];
        let mut critical_women = vec![false; women.len()];
        for name in critical {
            match lookup(name)? {
                Vertex::Man(m) => critical_men[m] = true,
                Vertex::Woman(w) => critical_women[w] = true,
            }
        }
        Instance::from_indexed(
            men,
            women,
            man_prefs,
            woman_prefs,
            critical_men,
            critical_women,
        )
    }

    pub fn n_men(&self) -> usize {
        self.men.len()
    }

    pub fn n_women(&self) -> usize {
        self.women.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.men.len() + self.women.len()
    }

    pub fn men(&self) -> &[String] {
        &self.men
    }

    pub fn women(&self) -> &[String] {
        &self.women
    }

    pub fn man_name(&self, m: usize) -> &str {
        &self.men[m]
    }

    pub fn woman_name(&self, w: usize) -> &str {
        &self.women[w]
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        match v {
            Vertex::Man(m) => &self.men[m],
            Vertex::Woman(w) => &self.women[w],
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    pub fn lookup_man(&self, name: &str) -> Result<usize> {
        match self.lookup(name) {
            Some(Vertex::Man(m)) => Ok(m),
            _ => Err(Error::UnknownVertex(name.to_string())),
        }
    }

    pub fn lookup_woman(&self, name: &str) -> Result<usize> {
        match self.lookup(name) {
            Some(Vertex::Woman(w)) => Ok(w),
            _ => Err(Error::UnknownVertex(name.to_string())),
        }
    }

    /// Resolves a `(man, woman)` pair of names to an edge of the instance.
    pub fn edge_by_names(&self, man: &str, woman: &str) -> Result<Edge> {
        let m = self.lookup_man(man)?;
        let w = self.lookup_woman(woman)?;
        let e = Edge::new(m, w);
        if self.is_edge(e) {
            Ok(e)
        } else {
            Err(Error::UnknownEdge {
                man: man.to_string(),
                woman: woman.to_string(),
            })
        }
    }

    pub fn man_prefs(&self, m: usize) -> &[usize] {
        &self.man_prefs[m].order
    }

    pub fn woman_prefs(&self, w: usize) -> &[usize] {
        &self.woman_prefs[w].order
    }

    /// Position of `w` in `m`'s list, most preferred = 0.
    pub fn man_rank(&self, m: usize, w: usize) -> Option<usize> {
        self.man_prefs[m].rank(w)
    }

    pub fn woman_rank(&self, w: usize, m: usize) -> Option<usize> {
        self.woman_prefs[w].rank(m)
    }

    pub fn is_edge(&self, e: Edge) -> bool {
        e.man < self.men.len() && e.woman < self.women.len() && self.man_rank(e.man, e.woman).is_some()
    }

    /// All edges, ordered by man index then woman index.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for m in 0..self.men.len() {
            let mut ws: Vec<usize> = self.man_prefs[m].order.clone();
            ws.sort_unstable();
            out.extend(ws.into_iter().map(|w| Edge::new(m, w)));
        }
        out
    }

    pub fn n_edges(&self) -> usize {
        self.man_prefs.iter().map(|l| l.order.len()).sum()
    }

    pub fn is_critical(&self, v: Vertex) -> bool {
        match v {
            Vertex::Man(m) => self.critical_men[m],
            Vertex::Woman(w) => self.critical_women[w],
        }
    }

    pub fn is_critical_man(&self, m: usize) -> bool {
        self.critical_men[m]
    }

    pub fn is_critical_woman(&self, w: usize) -> bool {
        self.critical_women[w]
    }

    pub fn critical_men(&self) -> impl Iterator<Item = usize> + '_ {
        self.critical_men
            .iter()
            .enumerate()
            .filter_map(|(m, &c)| c.then_some(m))
    }

    pub fn critical_women(&self) -> impl Iterator<Item = usize> + '_ {
        self.critical_women
            .iter()
            .enumerate()
            .filter_map(|(w, &c)| c.then_some(w))
    }

    /// ℓ, the number of critical vertices.
    pub fn critical_count(&self) -> usize {
        self.critical_men.iter().filter(|&&c| c).count()
            + self.critical_women.iter().filter(|&&c| c).count()
    }

    pub fn critical_side(&self) -> Option<Side> {
        if self.critical_men.iter().any(|&c| c) {
            Some(Side::Men)
        } else if self.critical_women.iter().any(|&c| c) {
            Some(Side::Women)
        } else {
            None
        }
    }

    /// Same graph and preferences with a different critical set.
    pub fn with_critical(&self, critical: &[Vertex]) -> Result<Self> {
        let mut critical_men = vec![false; self.n_men()];
        let mut critical_women = vec![false; self.n_women()];
        for &v in critical {
            match v {
                Vertex::Man(m) => critical_men[m] = true,
                Vertex::Woman(w) => critical_women[w] = true,
            }
        }
        Instance::from_indexed(
            self.men.clone(),
            self.women.clone(),
            self.man_prefs.iter().map(|l| l.order.clone()).collect(),
            self.woman_prefs.iter().map(|l| l.order.clone()).collect(),
            critical_men,
            critical_women,
        )
    }

    /// Drops every man `w` ranks below `keep_through` from her list (and her
    /// from theirs).
    pub fn truncate_woman_list(&self, w: usize, keep_through: usize) -> Result<Self> {
        let cut = self.woman_rank(w, keep_through).ok_or_else(|| Error::UnknownEdge {
            man: self.men[keep_through].clone(),
            woman: self.women[w].clone(),
        })?;
        let dropped: Vec<usize> = self.woman_prefs[w].order[cut + 1..].to_vec();
        let mut man_prefs: Vec<Vec<usize>> =
            self.man_prefs.iter().map(|l| l.order.clone()).collect();
        let mut woman_prefs: Vec<Vec<usize>> =
            self.woman_prefs.iter().map(|l| l.order.clone()).collect();
        woman_prefs[w].truncate(cut + 1);
        for m in dropped {
            man_prefs[m].retain(|&x| x != w);
        }
        Instance::from_indexed(
            self.men.clone(),
            self.women.clone(),
            man_prefs,
            woman_prefs,
            self.critical_men.clone(),
            self.critical_women.clone(),
        )
    }

    /// The mirror instance: men become women and vice versa.
    pub fn swap_sides(&self) -> Self {
        Instance {
            men: self.women.clone(),
            women: self.men.clone(),
            man_prefs: self.woman_prefs.clone(),
            woman_prefs: self.man_prefs.clone(),
            critical_men: self.critical_women.clone(),
            critical_women: self.critical_men.clone(),
            index: self
                .index
                .iter()
                .map(|(k, v)| {
                    let flipped = match *v {
                        Vertex::Man(i) => Vertex::Woman(i),
                        Vertex::Woman(j) => Vertex::Man(j),
                    };
                    (k.clone(), flipped)
                })
                .collect(),
        }
    }
}

fn check_list(owner: &str, list: &PrefList, bound: usize, names: &[String]) -> Result<()> {
    for &v in &list.order {
        if v >= bound {
            return Err(Error::UnknownVertex(format!("#{v} in list of {owner}")));
        }
    }
    for pair in list.ranks.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::RepeatedPreference {
                vertex: owner.to_string(),
                entry: names[pair[0].0].clone(),
            });
        }
    }
    Ok(())
}

/// A set of vertex-disjoint edges, stored as partner tables on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    man_partner: Vec<Option<usize>>,
    woman_partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(inst: &Instance) -> Self {
        Matching::with_sides(inst.n_men(), inst.n_women())
    }

    pub fn with_sides(n_men: usize, n_women: usize) -> Self {
        Matching {
            man_partner: vec![None; n_men],
            woman_partner: vec![None; n_women],
        }
    }

    /// Builds and validates a matching of `inst` from its edges.
    pub fn from_edges(inst: &Instance, edges: &[Edge]) -> Result<Self> {
        let mut out = Matching::empty(inst);
        for &e in edges {
            if !inst.is_edge(e) {
                return Err(Error::InvalidMatching(format!(
                    "({}, {}) is not an edge",
                    inst.man_name(e.man),
                    inst.woman_name(e.woman)
                )));
            }
            if out.man_partner[e.man].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "{} is matched twice",
                    inst.man_name(e.man)
                )));
            }
            if out.woman_partner[e.woman].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "{} is matched twice",
                    inst.woman_name(e.woman)
                )));
            }
            out.insert(e);
        }
        Ok(out)
    }

    /// Builds a matching from `(man, woman)` name pairs.
    pub fn from_names(inst: &Instance, pairs: &[(&str, &str)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|(m, w)| Ok(Edge::new(inst.lookup_man(m)?, inst.lookup_woman(w)?)))
            .collect::<Result<Vec<_>>>()?;
        Matching::from_edges(inst, &edges)
    }

    /// Inserts an edge, replacing nothing: both endpoints must be free.
    pub(crate) fn insert(&mut self, e: Edge) {
        debug_assert!(self.man_partner[e.man].is_none());
        debug_assert!(self.woman_partner[e.woman].is_none());
        self.man_partner[e.man] = Some(e.woman);
        self.woman_partner[e.woman] = Some(e.man);
    }

    pub(crate) fn remove(&mut self, e: Edge) {
        debug_assert_eq!(self.man_partner[e.man], Some(e.woman));
        self.man_partner[e.man] = None;
        self.woman_partner[e.woman] = None;
    }

    pub fn n_men(&self) -> usize {
        self.man_partner.len()
    }

    pub fn n_women(&self) -> usize {
        self.woman_partner.len()
    }

    pub fn man_partner(&self, m: usize) -> Option<usize> {
        self.man_partner[m]
    }

    pub fn woman_partner(&self, w: usize) -> Option<usize> {
        self.woman_partner[w]
    }

    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        match v {
            Vertex::Man(m) => self.man_partner[m].map(Vertex::Woman),
            Vertex::Woman(w) => self.woman_partner[w].map(Vertex::Man),
        }
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.partner(v).is_some()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.man_partner.get(e.man).copied().flatten() == Some(e.woman)
    }

    /// Edges by ascending man index.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.man_partner
            .iter()
            .enumerate()
            .filter_map(|(m, w)| w.map(|w| Edge::new(m, w)))
    }

    pub fn len(&self) -> usize {
        self.man_partner.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True if every edge of `other` is also in `self`.
    pub fn contains_all(&self, other: &Matching) -> bool {
        other.edges().all(|e| self.contains(e))
    }

    /// Checks the matching against `inst`: dimensions agree and every pair is an edge.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.n_men() != inst.n_men() || self.n_women() != inst.n_women() {
            return Err(Error::InvalidMatching(
                "matching dimensions differ from the instance".into(),
            ));
        }
        for e in self.edges() {
            if !inst.is_edge(e) {
                return Err(Error::InvalidMatching(format!(
                    "({}, {}) is not an edge",
                    inst.man_name(e.man),
                    inst.woman_name(e.woman)
                )));
            }
        }
        Ok(())
    }

    /// Mirror of [`Instance::swap_sides`].
    pub fn swap_sides(&self) -> Self {
        Matching {
            man_partner: self.woman_partner.clone(),
            woman_partner: self.man_partner.clone(),
        }
    }

    pub fn display<'a>(&'a self, inst: &'a Instance) -> MatchingDisplay<'a> {
        MatchingDisplay { matching: self, inst }
    }
}

pub struct MatchingDisplay<'a> {
    matching: &'a Matching,
    inst: &'a Instance,
}

impl fmt::Display for MatchingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.matching.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "({}, {})",
                self.inst.man_name(e.man),
                self.inst.woman_name(e.woman)
            )?;
        }
        write!(f, "}}")
    }
}

/// True iff every critical vertex is matched.
pub fn is_feasible(inst: &Instance, matching: &Matching) -> bool {
    inst.critical_men().all(|m| matching.man_partner(m).is_some())
        && inst.critical_women().all(|w| matching.woman_partner(w).is_some())
}

/// Whether some matching saturates the critical set.
pub fn has_feasible(inst: &Instance) -> bool {
    feasible_matching(inst).is_some()
}

/// A matching saturating the critical set, grown by augmenting paths from
/// critical vertices only.
pub fn feasible_matching(inst: &Instance) -> Option<Matching> {
    match inst.critical_side() {
        None => Some(Matching::empty(inst)),
        Some(Side::Men) => saturate_critical_men(inst),
        Some(Side::Women) => saturate_critical_men(&inst.swap_sides()).map(|m| m.swap_sides()),
    }
}

fn saturate_critical_men(inst: &Instance) -> Option<Matching> {
    let mut matching = Matching::empty(inst);
    for m in inst.critical_men().collect::<Vec<_>>() {
        let mut seen = vec![false; inst.n_women()];
        if !augment(inst, &mut matching, m, &mut seen) {
            return None;
        }
    }
    Some(matching)
}

fn augment(inst: &Instance, matching: &mut Matching, m: usize, seen: &mut [bool]) -> bool {
    for &w in inst.man_prefs(m) {
        if seen[w] {
            continue;
        }
        seen[w] = true;
        let free = match matching.woman_partner(w) {
            None => true,
            Some(rival) => augment(inst, matching, rival, seen),
        };
        if free {
            if let Some(old) = matching.man_partner(m) {
                matching.woman_partner[old] = None;
            }
            matching.man_partner[m] = Some(w);
            matching.woman_partner[w] = Some(m);
            return true;
        }
    }
    false
}

/// Orients the instance so that critical vertices are men. Returns the
/// instance and whether sides were swapped.
pub fn normalize_critical_side(inst: &Instance) -> (Instance, bool) {
    match inst.critical_side() {
        Some(Side::Women) => (inst.swap_sides(), true),
        _ => (inst.clone(), false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i1() -> Instance {
        Instance::from_names(&["m1"], &["w1"], &[("m1", &["w1"]), ("w1", &["m1"])], &["m1"])
            .unwrap()
    }

    fn i3() -> Instance {
        Instance::from_names(
            &["m1", "m2"],
            &["w1"],
            &[("m1", &["w1"]), ("m2", &["w1"]), ("w1", &["m1", "m2"])],
            &["m2"],
        )
        .unwrap()
    }

    #[test]
    fn feasibility_of_fixtures() {
        let inst = i1();
        let m = Matching::from_names(&inst, &[("m1", "w1")]).unwrap();
        assert!(is_feasible(&inst, &m));

        let inst = i3();
        let m = Matching::from_names(&inst, &[("m1", "w1")]).unwrap();
        assert!(!is_feasible(&inst, &m));
        assert!(has_feasible(&inst));
        let f = feasible_matching(&inst).unwrap();
        assert!(f.contains(Edge::new(1, 0)));
    }

    #[test]
    fn empty_critical_set_is_always_feasible() {
        let inst = i3().with_critical(&[]).unwrap();
        assert!(is_feasible(&inst, &Matching::empty(&inst)));
        assert!(has_feasible(&inst));
    }

    #[test]
    fn hall_violation_is_infeasible() {
        let inst = Instance::from_names(
            &["m1", "m2"],
            &["w1"],
            &[("m1", &["w1"]), ("m2", &["w1"]), ("w1", &["m1", "m2"])],
            &["m1", "m2"],
        )
        .unwrap();
        assert!(!has_feasible(&inst));
    }

    #[test]
    fn augmenting_reassigns_earlier_critical_men() {
        // m1 grabs w1 first, m2 can only use w1, so m1 must move to w2.
        let inst = Instance::from_names(
            &["m1", "m2"],
            &["w1", "w2"],
            &[
                ("m1", &["w1", "w2"]),
                ("m2", &["w1"]),
                ("w1", &["m1", "m2"]),
                ("w2", &["m1"]),
            ],
            &["m1", "m2"],
        )
        .unwrap();
        let f = feasible_matching(&inst).unwrap();
        assert_eq!(f.len(), 2);
        assert!(is_feasible(&inst, &f));
    }

    #[test]
    fn normalize_swaps_only_for_critical_women() {
        let (same, swapped) = normalize_critical_side(&i1());
        assert!(!swapped);
        assert_eq!(same, i1());

        let mirror =
            Instance::from_names(&["w1"], &["m1"], &[("w1", &["m1"]), ("m1", &["w1"])], &["m1"])
                .unwrap();
        let (norm, swapped) = normalize_critical_side(&mirror);
        assert!(swapped);
        assert_eq!(norm, i1());
    }

    #[test]
    fn critical_on_both_sides_is_rejected() {
        let err = Instance::from_names(
            &["m1"],
            &["w1"],
            &[("m1", &["w1"]), ("w1", &["m1"])],
            &["m1", "w1"],
        )
        .unwrap_err();
        assert!(matches!(err, Error::CriticalOnBothSides { .. }));
    }

    #[test]
    fn matching_rejects_shared_vertices_and_non_edges() {
        let inst = i3();
        assert!(Matching::from_names(&inst, &[("m1", "w1"), ("m2", "w1")]).is_err());
        let lonely = Instance::from_names(&["m1"], &["w1"], &[], &[]).unwrap();
        assert!(Matching::from_names(&lonely, &[("m1", "w1")]).is_err());
    }

    #[test]
    fn truncation_keeps_the_pivot() {
        let inst = i3();
        let cut = inst.truncate_woman_list(0, 0).unwrap();
        assert_eq!(cut.woman_prefs(0), &[0]);
        assert!(cut.man_prefs(1).is_empty());
    }
}
