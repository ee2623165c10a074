//! Stable pairs by rotation elimination.
//!
//! Starting from the man-optimal matching, an exposed rotation is
//! eliminated until none is left (the woman-optimal matching). Every
//! rotation of the instance is eliminated on any such chain, so the pairs
//! seen along one chain are exactly the stable pairs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gale_shapley::propose_man_optimal;
use crate::model::{Edge, Instance, Matching};
use crate::oracle;

/// A cycle `(m_0, w_0), …, (m_{k-1}, w_{k-1})` of matched pairs; eliminating
/// it gives `m_i` the woman `w_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rotation {
    pub pairs: Vec<Edge>,
}

impl Rotation {
    /// The pairs created by elimination.
    pub fn produced(&self) -> Vec<Edge> {
        let k = self.pairs.len();
        (0..k)
            .map(|i| Edge::new(self.pairs[i].man, self.pairs[(i + 1) % k].woman))
            .collect()
    }

    pub fn eliminate(&self, m: &Matching) -> Matching {
        let mut out = m.clone();
        for &e in &self.pairs {
            out.remove(e);
        }
        for e in self.produced() {
            out.insert(e);
        }
        out
    }
}

/// `s(m)`: the first woman after `M(m)` on `m`'s list who prefers `m` to her
/// partner. `None` when there is none or she is single (then no rotation
/// can move `m`).
fn successor(inst: &Instance, m: &Matching, man: usize) -> Option<usize> {
    let cur = inst.man_rank(man, m.man_partner(man)?)?;
    for &w in &inst.man_prefs(man)[cur + 1..] {
        match m.woman_partner(w) {
            None => return None,
            Some(rival) => {
                if inst.woman_rank(w, man) < inst.woman_rank(w, rival) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Rotations exposed in the stable matching `m`, each starting at its
/// smallest man, ordered by that man.
pub fn exposed_rotations(inst: &Instance, m: &Matching) -> Vec<Rotation> {
    let n = inst.n_men();
    let next: Vec<Option<usize>> = (0..n)
        .map(|a| successor(inst, m, a).and_then(|w| m.woman_partner(w)))
        .collect();
    // 0 = unvisited, 1 = on current walk, 2 = done.
    let mut state = vec![0u8; n];
    let mut out = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(a) = cur {
            match state[a] {
                0 => {
                    state[a] = 1;
                    walk.push(a);
                    cur = next[a];
                }
                1 => {
                    let pos = walk.iter().position(|&x| x == a).unwrap();
                    let mut cycle: Vec<usize> = walk[pos..].to_vec();
                    let min_at = cycle
                        .iter()
                        .enumerate()
                        .min_by_key(|&(_, &x)| x)
                        .map(|(i, _)| i)
                        .unwrap();
                    cycle.rotate_left(min_at);
                    out.push(Rotation {
                        pairs: cycle
                            .into_iter()
                            .map(|x| Edge::new(x, m.man_partner(x).unwrap()))
                            .collect(),
                    });
                    break;
                }
                _ => break,
            }
        }
        for a in walk {
            state[a] = 2;
        }
    }
    out.sort_by_key(|r| r.pairs[0].man);
    out
}

/// The stable matchings visited from the man-optimal to the woman-optimal
/// matching, eliminating the first exposed rotation each time.
pub fn rotation_chain(inst: &Instance) -> Vec<Matching> {
    let mut cur = propose_man_optimal(inst);
    let mut chain = vec![cur.clone()];
    // Each elimination moves some man strictly down his list.
    let bound = inst.n_edges() + 1;
    for _ in 0..bound {
        let rotations = exposed_rotations(inst, &cur);
        let Some(r) = rotations.first() else { break };
        cur = r.eliminate(&cur);
        chain.push(cur.clone());
    }
    chain
}

/// Every stable matching, by walking the rotation lattice from the
/// man-optimal matching. Sorted; exponential in the worst case.
pub fn all_stable_matchings(inst: &Instance) -> Vec<Matching> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![propose_man_optimal(inst)];
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        for r in exposed_rotations(inst, &m) {
            stack.push(r.eliminate(&m));
        }
    }
    seen.into_iter().collect()
}

/// Every edge that lies in some stable matching.
pub fn stable_pairs(inst: &Instance) -> BTreeSet<Edge> {
    rotation_chain(inst).iter().flat_map(|m| m.edges()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StablePairMethod {
    Rotations,
    /// Enumerate every stable matching; for cross-validation only.
    Exhaustive { cap: usize },
}

/// Per-instance memo of the stable-pair set.
pub struct StablePairs<'a> {
    inst: &'a Instance,
    method: StablePairMethod,
    pairs: Option<BTreeSet<Edge>>,
    chain: Option<Vec<Matching>>,
}

impl<'a> StablePairs<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        StablePairs::with_method(inst, StablePairMethod::Rotations)
    }

    pub fn with_method(inst: &'a Instance, method: StablePairMethod) -> Self {
        StablePairs {
            inst,
            method,
            pairs: None,
            chain: None,
        }
    }

    pub fn pairs(&mut self) -> Result<&BTreeSet<Edge>> {
        if self.pairs.is_none() {
            let pairs = match self.method {
                StablePairMethod::Rotations => self.chain().iter().flat_map(|m| m.edges()).collect(),
                StablePairMethod::Exhaustive { cap } => oracle::stable_edges(self.inst, cap)?,
            };
            self.pairs = Some(pairs);
        }
        Ok(self.pairs.as_ref().unwrap())
    }

    /// Stable matchings along one rotation chain.
    pub fn chain(&mut self) -> &[Matching] {
        if self.chain.is_none() {
            self.chain = Some(rotation_chain(self.inst));
        }
        self.chain.as_ref().unwrap()
    }

    pub fn is_stable_pair(&mut self, e: Edge) -> Result<bool> {
        if !self.inst.is_edge(e) {
            return Err(Error::UnknownEdge {
                man: self.inst.man_name(e.man).to_string(),
                woman: self.inst.woman_name(e.woman).to_string(),
            });
        }
        Ok(self.pairs()?.contains(&e))
    }
}

pub fn is_stable_pair(inst: &Instance, e: Edge) -> Result<bool> {
    StablePairs::new(inst).is_stable_pair(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gale_shapley::{is_stable, propose_woman_optimal};
    use crate::model::{generate_random, GenSpec};
    use crate::voting::compare_ranks;
    use proptest::prelude::*;

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

    fn crossed() -> Instance {
        Instance::from_names(
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
        .unwrap()
    }

    #[test]
    fn fixtures() {
        let inst = i2();
        assert_eq!(stable_pairs(&inst).into_iter().collect::<Vec<_>>(), vec![Edge::new(0, 0)]);
        assert!(!is_stable_pair(&inst, Edge::new(1, 0)).unwrap());
        assert!(is_stable_pair(&inst, Edge::new(1, 1)).is_err());

        let inst = crossed();
        assert_eq!(stable_pairs(&inst).len(), 4);
        assert!(is_stable_pair(&inst, Edge::new(0, 0)).unwrap());
        let m0 = propose_man_optimal(&inst);
        let rots = exposed_rotations(&inst, &m0);
        assert_eq!(rots.len(), 1);
        assert_eq!(rots[0].pairs, vec![Edge::new(0, 0), Edge::new(1, 1)]);

        let i1 = Instance::from_names(&["m1"], &["w1"], &[("m1", &["w1"]), ("w1", &["m1"])], &[]).unwrap();
        assert!(is_stable_pair(&i1, Edge::new(0, 0)).unwrap());
    }

    #[test]
    fn exhaustive_method_agrees() {
        let inst = crossed();
        let mut a = StablePairs::new(&inst);
        let mut b = StablePairs::with_method(&inst, StablePairMethod::Exhaustive { cap: 24 });
        assert_eq!(a.pairs().unwrap(), b.pairs().unwrap());
    }

    proptest! {
        #[test]
        fn chain_is_monotone_and_ends_woman_optimal(seed in 0u64..20_000, density in 0.3f64..1.0) {
            let inst = generate_random(&GenSpec::new(6, 6, density, 0, seed)).unwrap();
            let chain = rotation_chain(&inst);
            for m in &chain {
                prop_assert!(is_stable(&inst, m));
            }
            prop_assert_eq!(chain.last().unwrap(), &propose_woman_optimal(&inst));
            for pair in chain.windows(2) {
                let (before, after) = (&pair[0], &pair[1]);
                for e in before.edges().filter(|&e| !after.contains(e)) {
                    let newer = after.man_partner(e.man).unwrap();
                    prop_assert!(compare_ranks(inst.man_rank(e.man, e.woman), inst.man_rank(e.man, newer)) > 0);
                    let suitor = after.woman_partner(e.woman).unwrap();
                    prop_assert!(compare_ranks(inst.woman_rank(e.woman, suitor), inst.woman_rank(e.woman, e.man)) > 0);
                }
            }
        }

        #[test]
        fn lattice_walk_finds_every_stable_matching(seed in 0u64..20_000, density in 0.3f64..1.0) {
            let inst = generate_random(&GenSpec::new(5, 5, density, 0, seed)).unwrap();
            let mut expected = oracle::enumerate_stable(&inst, 25).unwrap();
            expected.sort();
            prop_assert_eq!(all_stable_matchings(&inst), expected);
        }

        #[test]
        fn matches_enumeration(seed in 0u64..20_000, density in 0.2f64..1.0) {
            let inst = generate_random(&GenSpec::new(5, 5, density, 0, seed)).unwrap();
            prop_assert_eq!(stable_pairs(&inst), oracle::stable_edges(&inst, 25).unwrap());
        }
    }
}
