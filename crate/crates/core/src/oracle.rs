//! Exhaustive ground truth over every matching of a small instance.
//!
//! Everything here is exponential in the number of edges and guarded by an
//! explicit cap; nothing is truncated silently.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::gale_shapley::is_stable;
use crate::model::{is_feasible, serialize_instance, Edge, Instance, Matching};

pub const DEFAULT_EDGE_CAP: usize = 24;

fn check_cap(inst: &Instance, cap: usize) -> Result<()> {
    if inst.n_edges() > cap {
        Err(Error::OracleCap {
            edges: inst.n_edges(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Every matching exactly once. Men are decided in index order; each man
/// is first left single, then tried with his free neighbors by ascending
/// index.
pub fn enumerate_matchings(inst: &Instance, feasible_only: bool, cap: usize) -> Result<Vec<Matching>> {
    check_cap(inst, cap)?;
    let sorted: Vec<Vec<usize>> = (0..inst.n_men())
        .map(|m| {
            let mut l = inst.man_prefs(m).to_vec();
            l.sort_unstable();
            l
        })
        .collect();
    // Critical men may not stay single when only feasible matchings are wanted.
    let must_match: Vec<bool> = (0..inst.n_men())
        .map(|m| feasible_only && inst.is_critical_man(m))
        .collect();
    let mut out = Vec::new();
    let mut cur = Matching::empty(inst);
    recurse(inst, &sorted, &must_match, 0, &mut cur, &mut out);
    if feasible_only {
        out.retain(|m| is_feasible(inst, m));
    }
    Ok(out)
}

fn recurse(
    inst: &Instance,
    lists: &[Vec<usize>],
    must_match: &[bool],
    m: usize,
    cur: &mut Matching,
    out: &mut Vec<Matching>,
) {
    if m == inst.n_men() {
        out.push(cur.clone());
        return;
    }
    if !must_match[m] {
        recurse(inst, lists, must_match, m + 1, cur, out);
    }
    for k in 0..lists[m].len() {
        let w = lists[m][k];
        if cur.woman_partner(w).is_none() {
            let e = Edge::new(m, w);
            cur.insert(e);
            recurse(inst, lists, must_match, m + 1, cur, out);
            cur.remove(e);
        }
    }
}

/// Compact rank vector used for fast head-to-head counts: one entry per
/// vertex, `u16::MAX` when unmatched.
struct Ranks(Vec<u16>);

impl Ranks {
    fn of(inst: &Instance, m: &Matching) -> Self {
        let mut v = Vec::with_capacity(inst.n_vertices());
        for a in 0..inst.n_men() {
            v.push(
                m.man_partner(a)
                    .and_then(|w| inst.man_rank(a, w))
                    .map_or(u16::MAX, |r| r as u16),
            );
        }
        for b in 0..inst.n_women() {
            v.push(
                m.woman_partner(b)
                    .and_then(|x| inst.woman_rank(b, x))
                    .map_or(u16::MAX, |r| r as u16),
            );
        }
        Ranks(v)
    }

    /// `(φ(self, other), φ(other, self))`.
    fn votes(&self, other: &Ranks) -> (usize, usize) {
        let mut a = 0;
        let mut b = 0;
        for (x, y) in self.0.iter().zip(&other.0) {
            if x < y {
                a += 1;
            } else if y < x {
                b += 1;
            }
        }
        (a, b)
    }
}

/// Popularity ground truth for one instance.
#[derive(Clone, Debug)]
pub struct PopularityAnalysis {
    pub feasible: Vec<Matching>,
    pub popular: Vec<Matching>,
    pub min_size: Vec<Matching>,
    pub dominant: Vec<Matching>,
    pub popular_edges: BTreeSet<Edge>,
}

impl PopularityAnalysis {
    pub fn is_popular(&self, m: &Matching) -> bool {
        self.popular.binary_search(m).is_ok()
    }

    pub fn is_min_size(&self, m: &Matching) -> bool {
        self.min_size.binary_search(m).is_ok()
    }

    pub fn is_dominant(&self, m: &Matching) -> bool {
        self.dominant.binary_search(m).is_ok()
    }
}

/// Computes every popular feasible matching and the derived sets. All
/// matching lists are sorted.
pub fn analyze(inst: &Instance, cap: usize) -> Result<PopularityAnalysis> {
    let mut feasible = enumerate_matchings(inst, true, cap)?;
    feasible.sort();
    let ranks: Vec<Ranks> = feasible.iter().map(|m| Ranks::of(inst, m)).collect();
    let sizes: Vec<usize> = feasible.iter().map(Matching::len).collect();

    let mut popular_idx = Vec::new();
    for (i, ri) in ranks.iter().enumerate() {
        if ranks.iter().all(|rj| {
            let (mine, theirs) = ri.votes(rj);
            theirs <= mine
        }) {
            popular_idx.push(i);
        }
    }
    let popular: Vec<Matching> = popular_idx.iter().map(|&i| feasible[i].clone()).collect();
    let min_len = popular_idx.iter().map(|&i| sizes[i]).min();
    let min_size = popular_idx
        .iter()
        .filter(|&&i| Some(sizes[i]) == min_len)
        .map(|&i| feasible[i].clone())
        .collect();
    let dominant = popular_idx
        .iter()
        .filter(|&&i| {
            (0..feasible.len()).filter(|&j| sizes[j] > sizes[i]).all(|j| {
                let (mine, theirs) = ranks[i].votes(&ranks[j]);
                mine > theirs
            })
        })
        .map(|&i| feasible[i].clone())
        .collect();
    let popular_edges = popular.iter().flat_map(|m| m.edges()).collect();
    Ok(PopularityAnalysis {
        feasible,
        popular,
        min_size,
        dominant,
        popular_edges,
    })
}

/// `M` is feasible and no feasible matching wins a head-to-head vote.
pub fn is_popular_feasible(inst: &Instance, m: &Matching, cap: usize) -> Result<bool> {
    if !is_feasible(inst, m) {
        return Err(Error::InvalidMatching("matching is not feasible".into()));
    }
    let mine = Ranks::of(inst, m);
    Ok(enumerate_matchings(inst, true, cap)?.iter().all(|n| {
        let (a, b) = mine.votes(&Ranks::of(inst, n));
        b <= a
    }))
}

pub fn min_size_pfms(inst: &Instance, cap: usize) -> Result<Vec<Matching>> {
    analyze(inst, cap).map(|a| a.min_size)
}

pub fn dominant_fms(inst: &Instance, cap: usize) -> Result<Vec<Matching>> {
    analyze(inst, cap).map(|a| a.dominant)
}

pub fn popular_edges(inst: &Instance, cap: usize) -> Result<BTreeSet<Edge>> {
    analyze(inst, cap).map(|a| a.popular_edges)
}

/// All stable matchings, sorted. Critical flags are ignored.
pub fn enumerate_stable(inst: &Instance, cap: usize) -> Result<Vec<Matching>> {
    let mut out: Vec<Matching> = enumerate_matchings(inst, false, cap)?
        .into_iter()
        .filter(|m| is_stable(inst, m))
        .collect();
    out.sort();
    Ok(out)
}

/// Edges contained in at least one stable matching.
pub fn stable_edges(inst: &Instance, cap: usize) -> Result<BTreeSet<Edge>> {
    Ok(enumerate_stable(inst, cap)?.iter().flat_map(|m| m.edges()).collect())
}

/// Whether any feasible matching exists, by enumeration.
pub fn exists_feasible(inst: &Instance, cap: usize) -> Result<bool> {
    Ok(!enumerate_matchings(inst, true, cap)?.is_empty())
}

/// Memoizes [`analyze`] by the canonical text of the instance.
pub struct Oracle {
    cap: usize,
    cache: Mutex<HashMap<String, Arc<PopularityAnalysis>>>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(DEFAULT_EDGE_CAP)
    }
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle {
            cap,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn analyze(&self, inst: &Instance) -> Result<Arc<PopularityAnalysis>> {
        let key = serialize_instance(inst);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let fresh = Arc::new(analyze(inst, self.cap)?);
        self.cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&fresh));
        Ok(fresh)
    }

    pub fn clear(&self) {
        self.cache.lock().unwrap().clear();
    }

    pub fn len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_random, has_feasible, GenSpec};
    use proptest::prelude::*;

    const CAP: usize = DEFAULT_EDGE_CAP;

    fn i1() -> Instance {
        Instance::from_names(&["m1"], &["w1"], &[("m1", &["w1"]), ("w1", &["m1"])], &["m1"])
            .unwrap()
    }

    fn i2() -> Instance {
        Instance::from_names(
            &["a1", "a2"],
            &["b1", "b2"],
            &[
                ("a1", &["b1", "b2"]),
                ("a2", &["b1"]),
                ("b1", &["a1", "a2"]),
                ("b2", &["a1"]),
            ],
            &[],
        )
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
    fn enumeration_counts() {
        let inst = i1();
        let all = enumerate_matchings(&inst, false, CAP).unwrap();
        assert_eq!(all, vec![Matching::empty(&inst), Matching::from_names(&inst, &[("m1", "w1")]).unwrap()]);
        assert_eq!(enumerate_matchings(&inst, true, CAP).unwrap().len(), 1);
        // ∅, three singletons and {(a1,b2),(a2,b1)}.
        assert_eq!(enumerate_matchings(&i2(), false, CAP).unwrap().len(), 5);
        let inst = i3();
        assert_eq!(
            enumerate_matchings(&inst, true, CAP).unwrap(),
            vec![Matching::from_names(&inst, &[("m2", "w1")]).unwrap()]
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_matchings(&i2(), false, 2),
            Err(Error::OracleCap { edges: 3, cap: 2 })
        ));
    }

    #[test]
    fn popularity_examples() {
        let inst = i2();
        let stable = Matching::from_names(&inst, &[("a1", "b1")]).unwrap();
        let weak = Matching::from_names(&inst, &[("a1", "b2")]).unwrap();
        assert!(is_popular_feasible(&inst, &stable, CAP).unwrap());
        assert!(!is_popular_feasible(&inst, &weak, CAP).unwrap());
        let a = analyze(&inst, CAP).unwrap();
        assert_eq!(a.min_size, vec![stable.clone()]);
        assert_eq!(
            a.dominant,
            vec![Matching::from_names(&inst, &[("a1", "b2"), ("a2", "b1")]).unwrap()]
        );
        assert_eq!(a.popular_edges.len(), 3);
        assert_eq!(enumerate_stable(&inst, CAP).unwrap(), vec![stable]);

        let inst = i3();
        let only = Matching::from_names(&inst, &[("m2", "w1")]).unwrap();
        assert!(is_popular_feasible(&inst, &only, CAP).unwrap());
        let a = analyze(&inst, CAP).unwrap();
        assert_eq!(a.min_size, vec![only.clone()]);
        assert_eq!(a.dominant, vec![only]);
        assert_eq!(a.popular_edges.into_iter().collect::<Vec<_>>(), vec![Edge::new(1, 0)]);

        let inst = i1();
        let a = analyze(&inst, CAP).unwrap();
        assert_eq!(a.min_size.len(), 1);
        assert_eq!(a.dominant.len(), 1);
        assert_eq!(enumerate_stable(&inst, CAP).unwrap().len(), 1);
    }

    #[test]
    fn crossed_pair_has_two_stable_matchings() {
        let inst = Instance::from_names(
            &["m1", "m2"],
            &["w1", "w2"],
            &[
                ("m1", &["w1", "w2"]),
                ("m2", &["w2", "w1"]),
                ("w1", &["m2", "m1"]),
                ("w2", &["m1", "m2"]),
            ],
            &[],
        )
        .unwrap();
        assert_eq!(enumerate_stable(&inst, CAP).unwrap().len(), 2);
        assert_eq!(stable_edges(&inst, CAP).unwrap().len(), 4);
    }

    #[test]
    fn cache_reuses_results() {
        let oracle = Oracle::default();
        let a = oracle.analyze(&i2()).unwrap();
        let b = oracle.analyze(&i2()).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(oracle.len(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn structural_facts(seed in 0u64..100_000, crit in 0usize..3, density in 0.3f64..1.0) {
            let Ok(inst) = generate_random(&GenSpec::new(4, 4, density, crit, seed)) else {
                return Ok(());
            };
            let a = analyze(&inst, CAP).unwrap();
            prop_assert!(!a.popular.is_empty());
            prop_assert!(!a.min_size.is_empty());
            prop_assert!(!a.dominant.is_empty());
            let max_popular = a.popular.iter().map(Matching::len).max().unwrap();
            for d in &a.dominant {
                prop_assert_eq!(d.len(), max_popular);
            }
            if crit == 0 {
                for s in enumerate_stable(&inst, CAP).unwrap() {
                    prop_assert!(a.is_popular(&s));
                }
            }
        }

        #[test]
        fn augmenting_feasibility_matches_enumeration(
            seed in 0u64..100_000,
            crit in 0usize..5,
            density in 0.1f64..0.9,
        ) {
            // Build without the generator's feasibility filter.
            let base = generate_random(&GenSpec::new(5, 5, density, 0, seed)).unwrap();
            let chosen: Vec<_> = (0..5)
                .filter(|&m| !base.man_prefs(m).is_empty())
                .take(crit)
                .map(crate::model::Vertex::Man)
                .collect();
            let inst = base.with_critical(&chosen).unwrap();
            prop_assert_eq!(has_feasible(&inst), exists_feasible(&inst, 25).unwrap());
        }
    }
}
