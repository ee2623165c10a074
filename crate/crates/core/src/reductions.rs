//! The copy-and-dummy constructions G′ and G″, and the maps between their
//! stable matchings and base matchings with levels.
//!
//! A man with top level `t` gets copies `m#0..=m#t` and dummies
//! `d(m)#1..=d(m)#t`. Copy `m#i` ranks `d(m)#i`, then his base list, then
//! `d(m)#(i+1)`; each dummy `d(m)#i` ranks `m#(i-1)` above `m#i`; a base
//! woman ranks every level-`t` copy above every level-`(t-1)` copy, keeping
//! her own order within a level. G′ uses `t = ℓ` for critical men and `0`
//! otherwise; G″ uses `ℓ + 1` and `1`.

use crate::error::{Error, Result};
use crate::gale_shapley::first_blocking_pair;
use crate::model::{has_feasible, Edge, Instance, Matching, Side, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    /// Stable matchings map onto minimum-size popular feasible matchings.
    GPrime,
    /// Stable matchings map onto dominant feasible matchings.
    GDoublePrime,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::GPrime => "gprime",
            ReductionKind::GDoublePrime => "gpp",
        }
    }
}

/// Per-vertex levels of a base instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelAssignment {
    men: Vec<u32>,
    women: Vec<u32>,
}

impl LevelAssignment {
    pub fn zeros(inst: &Instance) -> Self {
        LevelAssignment {
            men: vec![0; inst.n_men()],
            women: vec![0; inst.n_women()],
        }
    }

    pub fn from_vecs(men: Vec<u32>, women: Vec<u32>) -> Self {
        LevelAssignment { men, women }
    }

    pub fn man(&self, m: usize) -> u32 {
        self.men[m]
    }

    pub fn woman(&self, w: usize) -> u32 {
        self.women[w]
    }

    pub fn get(&self, v: Vertex) -> u32 {
        match v {
            Vertex::Man(m) => self.men[m],
            Vertex::Woman(w) => self.women[w],
        }
    }

    pub fn set(&mut self, v: Vertex, level: u32) {
        match v {
            Vertex::Man(m) => self.men[m] = level,
            Vertex::Woman(w) => self.women[w] = level,
        }
    }

    pub fn men(&self) -> &[u32] {
        &self.men
    }

    pub fn women(&self) -> &[u32] {
        &self.women
    }

    pub fn max_level(&self) -> u32 {
        self.men.iter().chain(self.women.iter()).copied().max().unwrap_or(0)
    }

    /// Mirror of [`Instance::swap_sides`].
    pub fn swap_sides(&self) -> Self {
        LevelAssignment {
            men: self.women.clone(),
            women: self.men.clone(),
        }
    }

    /// `vertex level` lines, men then women in declared order.
    pub fn to_lines(&self, inst: &Instance) -> String {
        let mut out = String::new();
        for (m, l) in self.men.iter().enumerate() {
            out.push_str(&format!("{} {}\n", inst.man_name(m), l));
        }
        for (w, l) in self.women.iter().enumerate() {
            out.push_str(&format!("{} {}\n", inst.woman_name(w), l));
        }
        out
    }
}

/// A reduced instance with its back-mapping tables. Base women keep their
/// indices; reduced women past `base.n_women()` are dummies.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    kind: ReductionKind,
    base: Instance,
    inst: Instance,
    top: Vec<u32>,
    copies: Vec<Vec<usize>>,
    dummies: Vec<Vec<usize>>,
    copy_of: Vec<(usize, u32)>,
    dummy_of: Vec<Option<(usize, u32)>>,
}

pub fn build_gprime(inst: &Instance) -> Result<ReducedInstance> {
    build(inst, ReductionKind::GPrime)
}

pub fn build_gdoubleprime(inst: &Instance) -> Result<ReducedInstance> {
    build(inst, ReductionKind::GDoublePrime)
}

pub fn build(inst: &Instance, kind: ReductionKind) -> Result<ReducedInstance> {
    if inst.critical_side() == Some(Side::Women) {
        return Err(Error::NotNormalized);
    }
    if !has_feasible(inst) {
        return Err(Error::Infeasible);
    }
    let ell = inst.critical_count() as u32;
    let top: Vec<u32> = (0..inst.n_men())
        .map(|m| match (kind, inst.is_critical_man(m)) {
            (ReductionKind::GPrime, true) => ell,
            (ReductionKind::GPrime, false) => 0,
            (ReductionKind::GDoublePrime, true) => ell + 1,
            (ReductionKind::GDoublePrime, false) => 1,
        })
        .collect();

    let mut men = Vec::new();
    let mut copies = vec![Vec::new(); inst.n_men()];
    let mut copy_of = Vec::new();
    for m in 0..inst.n_men() {
        for i in 0..=top[m] {
            copies[m].push(men.len());
            copy_of.push((m, i));
            men.push(format!("{}#{}", inst.man_name(m), i));
        }
    }
    let mut women: Vec<String> = inst.women().to_vec();
    let mut dummies = vec![Vec::new(); inst.n_men()];
    let mut dummy_of = vec![None; inst.n_women()];
    for m in 0..inst.n_men() {
        for i in 1..=top[m] {
            dummies[m].push(women.len());
            dummy_of.push(Some((m, i)));
            women.push(format!("d({})#{}", inst.man_name(m), i));
        }
    }

    let dummy = |m: usize, i: u32| dummies[m][(i - 1) as usize];
    let mut man_prefs = Vec::with_capacity(men.len());
    for m in 0..inst.n_men() {
        for i in 0..=top[m] {
            let mut list = Vec::with_capacity(inst.man_prefs(m).len() + 2);
            if i >= 1 {
                list.push(dummy(m, i));
            }
            list.extend_from_slice(inst.man_prefs(m));
            if i < top[m] {
                list.push(dummy(m, i + 1));
            }
            man_prefs.push(list);
        }
    }
    let max_top = top.iter().copied().max().unwrap_or(0);
    let mut woman_prefs = Vec::with_capacity(women.len());
    for w in 0..inst.n_women() {
        let mut list = Vec::new();
        for level in (0..=max_top).rev() {
            for &m in inst.woman_prefs(w) {
                if top[m] >= level {
                    list.push(copies[m][level as usize]);
                }
            }
        }
        woman_prefs.push(list);
    }
    for m in 0..inst.n_men() {
        for i in 1..=top[m] {
            woman_prefs.push(vec![copies[m][(i - 1) as usize], copies[m][i as usize]]);
        }
    }

    let n_red_men = men.len();
    let n_red_women = women.len();
    let reduced = Instance::from_indexed(
        men,
        women,
        man_prefs,
        woman_prefs,
        vec![false; n_red_men],
        vec![false; n_red_women],
    )?;
    Ok(ReducedInstance {
        kind,
        base: inst.clone(),
        inst: reduced,
        top,
        copies,
        dummies,
        copy_of,
        dummy_of,
    })
}

impl ReducedInstance {
    pub fn kind(&self) -> ReductionKind {
        self.kind
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    /// The reduced graph as a plain marriage instance.
    pub fn inst(&self) -> &Instance {
        &self.inst
    }

    /// Highest copy level of base man `m`.
    pub fn top(&self, m: usize) -> u32 {
        self.top[m]
    }

    /// Reduced index of copy `m#i`.
    pub fn copy(&self, m: usize, i: u32) -> usize {
        self.copies[m][i as usize]
    }

    /// Reduced index of dummy `d(m)#i`, `1 ≤ i ≤ top(m)`.
    pub fn dummy(&self, m: usize, i: u32) -> usize {
        self.dummies[m][(i - 1) as usize]
    }

    /// Base man and level of a reduced man.
    pub fn copy_of(&self, reduced_man: usize) -> (usize, u32) {
        self.copy_of[reduced_man]
    }

    /// Base man and level if the reduced woman is a dummy.
    pub fn dummy_of(&self, reduced_woman: usize) -> Option<(usize, u32)> {
        self.dummy_of[reduced_woman]
    }

    pub fn is_dummy(&self, reduced_woman: usize) -> bool {
        reduced_woman >= self.base.n_women()
    }

    fn check_stable(&self, mred: &Matching) -> Result<()> {
        mred.validate(&self.inst)?;
        if let Some(e) = first_blocking_pair(&self.inst, mred) {
            return Err(Error::NotStable {
                man: self.inst.man_name(e.man).to_string(),
                woman: self.inst.woman_name(e.woman).to_string(),
            });
        }
        Ok(())
    }

    /// Base matching formed by the copies matched to non-dummy women.
    pub fn image(&self, mred: &Matching) -> Result<Matching> {
        self.check_stable(mred)?;
        self.image_unchecked(mred)
    }

    fn image_unchecked(&self, mred: &Matching) -> Result<Matching> {
        let mut out = Matching::empty(&self.base);
        for e in mred.edges() {
            if self.is_dummy(e.woman) {
                continue;
            }
            let (m, _) = self.copy_of[e.man];
            if out.man_partner(m).is_some() {
                return Err(Error::TwoActiveCopies(self.base.man_name(m).to_string()));
            }
            out.insert(Edge::new(m, e.woman));
        }
        Ok(out)
    }

    /// Levels read off a stable matching: the level of the active copy, or
    /// of the single copy left unmatched; unmatched women sit at 0.
    pub fn image_levels(&self, mred: &Matching) -> Result<LevelAssignment> {
        self.check_stable(mred)?;
        let image = self.image_unchecked(mred)?;
        let mut lv = LevelAssignment::zeros(&self.base);
        for m in 0..self.base.n_men() {
            let level = match image.man_partner(m) {
                Some(w) => {
                    let rm = mred.woman_partner(w).expect("image edge comes from a copy");
                    self.copy_of[rm].1
                }
                None => {
                    let free: Vec<u32> = (0..=self.top[m])
                        .filter(|&i| mred.man_partner(self.copy(m, i)).is_none())
                        .collect();
                    if free.len() != 1 {
                        return Err(Error::Verification(format!(
                            "{} has {} unmatched copies in a stable matching",
                            self.base.man_name(m),
                            free.len()
                        )));
                    }
                    free[0]
                }
            };
            lv.set(Vertex::Man(m), level);
            if let Some(w) = image.man_partner(m) {
                lv.set(Vertex::Woman(w), level);
            }
        }
        Ok(lv)
    }

    /// All reduced edges `(m#i, w)` over a base edge, by ascending `i`.
    pub fn lift_edge(&self, e: Edge) -> Result<Vec<Edge>> {
        if !self.base.is_edge(e) {
            return Err(Error::UnknownEdge {
                man: self.base.man_name(e.man).to_string(),
                woman: self.base.woman_name(e.woman).to_string(),
            });
        }
        Ok((0..=self.top[e.man])
            .map(|i| Edge::new(self.copy(e.man, i), e.woman))
            .collect())
    }

    /// Builds the reduced matching that realizes `(M, lv)`: the active copy
    /// takes `M(m)` (or stays single), lower copies take their upper dummy
    /// and higher copies their lower dummy.
    pub fn preimage(&self, matching: &Matching, lv: &LevelAssignment) -> Result<Matching> {
        matching.validate(&self.base)?;
        for m in 0..self.base.n_men() {
            let level = lv.man(m);
            if level > self.top[m] {
                return Err(Error::LevelOutOfRange {
                    vertex: self.base.man_name(m).to_string(),
                    level,
                    max: self.top[m],
                });
            }
            if let Some(w) = matching.man_partner(m) {
                if lv.woman(w) != level {
                    return Err(Error::LevelMismatch {
                        man: self.base.man_name(m).to_string(),
                        woman: self.base.woman_name(w).to_string(),
                        man_level: level,
                        woman_level: lv.woman(w),
                    });
                }
            }
        }
        let mut out = Matching::empty(&self.inst);
        for m in 0..self.base.n_men() {
            let a = lv.man(m);
            for j in 0..=self.top[m] {
                let copy = self.copy(m, j);
                if j < a {
                    out.insert(Edge::new(copy, self.dummy(m, j + 1)));
                } else if j > a {
                    out.insert(Edge::new(copy, self.dummy(m, j)));
                } else if let Some(w) = matching.man_partner(m) {
                    out.insert(Edge::new(copy, w));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gale_shapley::{is_stable, propose_man_optimal};
    use crate::model::{generate_random, serialize_instance, GenSpec};
    use proptest::prelude::*;

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

    fn names(inst: &Instance, list: &[usize], men: bool) -> Vec<String> {
        list.iter()
            .map(|&x| if men { inst.man_name(x) } else { inst.woman_name(x) }.to_string())
            .collect()
    }

    #[test]
    fn gprime_of_i1() {
        let red = build_gprime(&i1()).unwrap();
        let text = serialize_instance(red.inst());
        assert_eq!(
            text,
            "men m1#0 m1#1\nwomen w1 d(m1)#1\n\
             pref m1#0: w1 d(m1)#1\npref m1#1: d(m1)#1 w1\n\
             pref w1: m1#1 m1#0\npref d(m1)#1: m1#0 m1#1\n"
        );
    }

    #[test]
    fn gprime_without_critical_is_the_base_graph() {
        let base = i2();
        let red = build_gprime(&base).unwrap();
        assert_eq!(red.inst().n_men(), 2);
        assert_eq!(red.inst().n_women(), 2);
        for m in 0..2 {
            assert_eq!(red.inst().man_prefs(m), base.man_prefs(m));
        }
        for w in 0..2 {
            assert_eq!(red.inst().woman_prefs(w), base.woman_prefs(w));
        }
    }

    #[test]
    fn gprime_of_i3_orders_w1_by_level() {
        let red = build_gprime(&i3()).unwrap();
        let r = red.inst();
        assert_eq!(names(r, r.woman_prefs(0), true), vec!["m2#1", "m1#0", "m2#0"]);
    }

    #[test]
    fn gdoubleprime_of_i2() {
        let red = build_gdoubleprime(&i2()).unwrap();
        let r = red.inst();
        assert_eq!(r.men(), &["a1#0", "a1#1", "a2#0", "a2#1"].map(String::from));
        assert_eq!(r.women(), &["b1", "b2", "d(a1)#1", "d(a2)#1"].map(String::from));
        assert_eq!(names(r, r.woman_prefs(0), true), vec!["a1#1", "a2#1", "a1#0", "a2#0"]);
        // a2 has the one-entry list b1.
        assert_eq!(names(r, r.man_prefs(2), false), vec!["b1", "d(a2)#1"]);
        assert_eq!(names(r, r.man_prefs(3), false), vec!["d(a2)#1", "b1"]);
    }

    #[test]
    fn gdoubleprime_of_i1_has_three_copies() {
        let red = build_gdoubleprime(&i1()).unwrap();
        assert_eq!(red.top(0), 2);
        assert_eq!(red.inst().men(), &["m1#0", "m1#1", "m1#2"].map(String::from));
        assert_eq!(red.inst().women(), &["w1", "d(m1)#1", "d(m1)#2"].map(String::from));
    }

    #[test]
    fn images_of_man_optimal_matchings() {
        let red = build_gprime(&i1()).unwrap();
        let mred = propose_man_optimal(red.inst());
        assert!(mred.contains(Edge::new(0, 0)) && mred.contains(Edge::new(1, 1)));
        let inst = i1();
        assert_eq!(red.image(&mred).unwrap(), Matching::from_names(&inst, &[("m1", "w1")]).unwrap());
        assert_eq!(red.image_levels(&mred).unwrap(), LevelAssignment::zeros(&inst));

        let base = i3();
        let red = build_gprime(&base).unwrap();
        let mred = propose_man_optimal(red.inst());
        let r = red.inst();
        assert!(mred.contains(r.edge_by_names("m2#1", "w1").unwrap()));
        assert!(mred.contains(r.edge_by_names("m2#0", "d(m2)#1").unwrap()));
        assert_eq!(mred.len(), 2);
        assert_eq!(red.image(&mred).unwrap(), Matching::from_names(&base, &[("m2", "w1")]).unwrap());
        let lv = red.image_levels(&mred).unwrap();
        assert_eq!(lv.men(), &[0, 1]);
        assert_eq!(lv.women(), &[1]);

        let base = i2();
        let red = build_gdoubleprime(&base).unwrap();
        let mred = propose_man_optimal(red.inst());
        assert_eq!(
            red.image(&mred).unwrap(),
            Matching::from_names(&base, &[("a1", "b2"), ("a2", "b1")]).unwrap()
        );
        let lv = red.image_levels(&mred).unwrap();
        assert_eq!(lv.men(), &[0, 1]);
        assert_eq!(lv.women(), &[1, 0]);
    }

    #[test]
    fn image_rejects_unstable_input() {
        let red = build_gprime(&i3()).unwrap();
        let empty = Matching::empty(red.inst());
        assert!(matches!(red.image(&empty), Err(Error::NotStable { .. })));
    }

    #[test]
    fn lifting() {
        let red = build_gprime(&i1()).unwrap();
        assert_eq!(red.lift_edge(Edge::new(0, 0)).unwrap(), vec![Edge::new(0, 0), Edge::new(1, 0)]);
        let red = build_gdoubleprime(&i2()).unwrap();
        assert_eq!(red.lift_edge(Edge::new(1, 0)).unwrap(), vec![Edge::new(2, 0), Edge::new(3, 0)]);
        let red = build_gprime(&i2()).unwrap();
        assert_eq!(red.lift_edge(Edge::new(0, 1)).unwrap(), vec![Edge::new(0, 1)]);
        assert!(red.lift_edge(Edge::new(1, 1)).is_err());
    }

    #[test]
    fn preimages() {
        let base = i3();
        let red = build_gprime(&base).unwrap();
        let m = Matching::from_names(&base, &[("m2", "w1")]).unwrap();
        let lv = LevelAssignment::from_vecs(vec![0, 1], vec![1]);
        let pre = red.preimage(&m, &lv).unwrap();
        let r = red.inst();
        let expect = Matching::from_names(r, &[("m2#1", "w1"), ("m2#0", "d(m2)#1")]).unwrap();
        assert_eq!(pre, expect);
        assert!(is_stable(r, &pre));

        let base = i1();
        let red = build_gprime(&base).unwrap();
        let m = Matching::from_names(&base, &[("m1", "w1")]).unwrap();
        let pre = red.preimage(&m, &LevelAssignment::zeros(&base)).unwrap();
        let expect = Matching::from_names(red.inst(), &[("m1#0", "w1"), ("m1#1", "d(m1)#1")]).unwrap();
        assert_eq!(pre, expect);
        assert!(is_stable(red.inst(), &pre));

        let base = i2();
        let red = build_gdoubleprime(&base).unwrap();
        let m = Matching::from_names(&base, &[("a1", "b2"), ("a2", "b1")]).unwrap();
        let lv = LevelAssignment::from_vecs(vec![0, 1], vec![1, 0]);
        let pre = red.preimage(&m, &lv).unwrap();
        let expect = Matching::from_names(
            red.inst(),
            &[("a1#0", "b2"), ("a1#1", "d(a1)#1"), ("a2#1", "b1"), ("a2#0", "d(a2)#1")],
        )
        .unwrap();
        assert_eq!(pre, expect);
        assert!(is_stable(red.inst(), &pre));
    }

    #[test]
    fn preimage_errors() {
        let base = i3();
        let red = build_gprime(&base).unwrap();
        let m = Matching::from_names(&base, &[("m2", "w1")]).unwrap();
        let too_high = LevelAssignment::from_vecs(vec![0, 2], vec![2]);
        assert!(matches!(red.preimage(&m, &too_high), Err(Error::LevelOutOfRange { .. })));
        let split = LevelAssignment::from_vecs(vec![0, 1], vec![0]);
        assert!(matches!(red.preimage(&m, &split), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn infeasible_and_unnormalized_inputs_are_rejected() {
        let bad = Instance::from_names(
            &["m1", "m2"],
            &["w1"],
            &[("m1", &["w1"]), ("m2", &["w1"]), ("w1", &["m1", "m2"])],
            &["m1", "m2"],
        )
        .unwrap();
        assert!(matches!(build_gprime(&bad), Err(Error::Infeasible)));
        let women = i1().swap_sides();
        assert!(matches!(build_gdoubleprime(&women), Err(Error::NotNormalized)));
    }

    proptest! {
        #[test]
        fn stable_matchings_saturate_dummies_and_activate_one_copy(
            seed in 0u64..4000,
            crit in 0usize..3,
            dom in any::<bool>(),
        ) {
            let Ok(base) = generate_random(&GenSpec::new(5, 5, 0.6, crit, seed)) else {
                return Ok(());
            };
            let red = if dom { build_gdoubleprime(&base) } else { build_gprime(&base) }.unwrap();
            for mred in [propose_man_optimal(red.inst()), crate::gale_shapley::propose_woman_optimal(red.inst())] {
                for w in base.n_women()..red.inst().n_women() {
                    prop_assert!(mred.woman_partner(w).is_some());
                }
                let image = red.image(&mred).unwrap();
                let lv = red.image_levels(&mred).unwrap();
                prop_assert!(crate::model::is_feasible(&base, &image));
                // Round trip through the pre-image.
                prop_assert_eq!(red.preimage(&image, &lv).unwrap(), mred);
            }
        }
    }
}
