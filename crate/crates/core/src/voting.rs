//! Edge labels, head-to-head vote counts and the alternating decomposition
//! of `M ⊕ N`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{Edge, Instance, Matching, Vertex};

/// Compares two optional partners of `u`: `+1` if `u` strictly prefers `p`,
/// `-1` if it prefers `q`, `0` if they are identical. Being unmatched loses
/// to any neighbor.
pub fn prefers(inst: &Instance, u: Vertex, p: Option<usize>, q: Option<usize>) -> Result<i8> {
    let rank = |x: usize| -> Result<usize> {
        let r = match u {
            Vertex::Man(m) => inst.man_rank(m, x),
            Vertex::Woman(w) => inst.woman_rank(w, x),
        };
        r.ok_or_else(|| {
            let other = match u {
                Vertex::Man(_) => Vertex::Woman(x),
                Vertex::Woman(_) => Vertex::Man(x),
            };
            Error::UnknownEdge {
                man: name_or_index(inst, u, other, true),
                woman: name_or_index(inst, u, other, false),
            }
        })
    };
    let rp = p.map(rank).transpose()?;
    let rq = q.map(rank).transpose()?;
    Ok(compare_ranks(rp, rq))
}

fn name_or_index(inst: &Instance, u: Vertex, other: Vertex, want_man: bool) -> String {
    let pick = match (u, want_man) {
        (Vertex::Man(_), true) | (Vertex::Woman(_), false) => u,
        _ => other,
    };
    match pick {
        Vertex::Man(m) if m < inst.n_men() => inst.man_name(m).to_string(),
        Vertex::Woman(w) if w < inst.n_women() => inst.woman_name(w).to_string(),
        Vertex::Man(m) => format!("man #{m}"),
        Vertex::Woman(w) => format!("woman #{w}"),
    }
}

/// Lower rank is better; `None` is worse than everything.
pub(crate) fn compare_ranks(p: Option<usize>, q: Option<usize>) -> i8 {
    match (p, q) {
        (None, None) => 0,
        (Some(_), None) => 1,
        (None, Some(_)) => -1,
        (Some(a), Some(b)) => match a.cmp(&b) {
            Ordering::Less => 1,
            Ordering::Greater => -1,
            Ordering::Equal => 0,
        },
    }
}

/// The two votes an edge outside `M` casts against `M`; the first comes from
/// the man.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLabel {
    pub man_vote: i8,
    pub woman_vote: i8,
}

impl EdgeLabel {
    pub fn is_plus_plus(self) -> bool {
        self.man_vote > 0 && self.woman_vote > 0
    }

    pub fn is_minus_minus(self) -> bool {
        self.man_vote < 0 && self.woman_vote < 0
    }

    pub fn is_mixed(self) -> bool {
        self.man_vote != self.woman_vote
    }
}

impl std::fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |v: i8| if v > 0 { "+1" } else { "-1" };
        write!(f, "({},{})", s(self.man_vote), s(self.woman_vote))
    }
}

/// Checked labeling: `e` must be an edge and must not be in `M`.
pub fn label_edge(inst: &Instance, matching: &Matching, e: Edge) -> Result<EdgeLabel> {
    if !inst.is_edge(e) {
        return Err(Error::UnknownEdge {
            man: name_or_index(inst, Vertex::Man(e.man), Vertex::Woman(e.woman), true),
            woman: name_or_index(inst, Vertex::Man(e.man), Vertex::Woman(e.woman), false),
        });
    }
    if matching.contains(e) {
        return Err(Error::InvalidMatching(format!(
            "({}, {}) is in the reference matching and has no label",
            inst.man_name(e.man),
            inst.woman_name(e.woman)
        )));
    }
    Ok(label(inst, matching, e))
}

/// Unchecked labeling for hot loops; `e` must be a non-matching edge.
pub(crate) fn label(inst: &Instance, matching: &Matching, e: Edge) -> EdgeLabel {
    let man_vote = compare_ranks(
        inst.man_rank(e.man, e.woman),
        matching.man_partner(e.man).and_then(|w| inst.man_rank(e.man, w)),
    );
    let woman_vote = compare_ranks(
        inst.woman_rank(e.woman, e.man),
        matching.woman_partner(e.woman).and_then(|m| inst.woman_rank(e.woman, m)),
    );
    EdgeLabel {
        man_vote,
        woman_vote,
    }
}

/// `for_first = φ(M, N)`, `for_second = φ(N, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct VoteTally {
    pub for_first: usize,
    pub for_second: usize,
}

impl VoteTally {
    pub fn reversed(self) -> Self {
        VoteTally {
            for_first: self.for_second,
            for_second: self.for_first,
        }
    }
}

/// Counts the vertices preferring `M` and those preferring `N`.
pub fn tally(inst: &Instance, m: &Matching, n: &Matching) -> VoteTally {
    let mut out = VoteTally::default();
    let mut add = |v: i8| match v {
        1 => out.for_first += 1,
        -1 => out.for_second += 1,
        _ => {}
    };
    for a in 0..inst.n_men() {
        let (p, q) = (m.man_partner(a), n.man_partner(a));
        if p != q {
            add(compare_ranks(
                p.and_then(|w| inst.man_rank(a, w)),
                q.and_then(|w| inst.man_rank(a, w)),
            ));
        }
    }
    for b in 0..inst.n_women() {
        let (p, q) = (m.woman_partner(b), n.woman_partner(b));
        if p != q {
            add(compare_ranks(
                p.and_then(|x| inst.woman_rank(b, x)),
                q.and_then(|x| inst.woman_rank(b, x)),
            ));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// One connected component of `M ⊕ N`. For a cycle the closing edge runs
/// from the last vertex back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltComponent {
    pub kind: ComponentKind,
    pub vertices: Vec<Vertex>,
    /// `(+1,+1)` labels among the component's `N`-edges, relative to `M`.
    pub plus_plus: usize,
    pub minus_minus: usize,
}

impl AltComponent {
    /// Consecutive vertex pairs as edges (closing edge included for cycles).
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        let steps = match self.kind {
            ComponentKind::Path => k.saturating_sub(1),
            ComponentKind::Cycle => k,
        };
        (0..steps)
            .map(|i| as_edge(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        AltComponent {
            vertices,
            ..self.clone()
        }
    }
}

pub(crate) fn as_edge(a: Vertex, b: Vertex) -> Edge {
    match (a, b) {
        (Vertex::Man(m), Vertex::Woman(w)) | (Vertex::Woman(w), Vertex::Man(m)) => Edge::new(m, w),
        _ => panic!("alternating components only join a man and a woman"),
    }
}

/// Decomposes `M ⊕ N` into alternating paths and cycles, ordered by their
/// smallest vertex. Paths start at their smaller endpoint; cycles start at
/// their smallest vertex and head toward its smaller neighbor.
pub fn symmetric_difference(inst: &Instance, m: &Matching, n: &Matching) -> Vec<AltComponent> {
    let nm = inst.n_men();
    let total = inst.n_vertices();
    let to_vertex = |i: usize| {
        if i < nm {
            Vertex::Man(i)
        } else {
            Vertex::Woman(i - nm)
        }
    };
    let to_id = |v: Vertex| match v {
        Vertex::Man(i) => i,
        Vertex::Woman(j) => nm + j,
    };

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for e in m.edges().filter(|&e| !n.contains(e)).chain(n.edges().filter(|&e| !m.contains(e))) {
        let (a, b) = (e.man, nm + e.woman);
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for start in 0..total {
        if seen[start] || adj[start].is_empty() {
            continue;
        }
        // Collect the component, then decide its shape.
        let mut members = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < members.len() {
            for &x in &adj[members[i]] {
                if !seen[x] {
                    seen[x] = true;
                    members.push(x);
                }
            }
            i += 1;
        }
        let endpoints: Vec<usize> = {
            let mut e: Vec<usize> = members.iter().copied().filter(|&x| adj[x].len() == 1).collect();
            e.sort_unstable();
            e
        };
        let (kind, first, second) = if endpoints.is_empty() {
            let s = *members.iter().min().unwrap();
            (ComponentKind::Cycle, s, adj[s][0])
        } else {
            let s = endpoints[0];
            (ComponentKind::Path, s, adj[s][0])
        };
        let mut order = vec![first, second];
        loop {
            let cur = *order.last().unwrap();
            let prev = order[order.len() - 2];
            match adj[cur].iter().find(|&&x| x != prev) {
                Some(&next) if next != first => order.push(next),
                _ => break,
            }
        }
        let vertices: Vec<Vertex> = order.into_iter().map(to_vertex).collect();
        let mut comp = AltComponent {
            kind,
            vertices,
            plus_plus: 0,
            minus_minus: 0,
        };
        for e in comp.edges() {
            if n.contains(e) {
                let l = label(inst, m, e);
                if l.is_plus_plus() {
                    comp.plus_plus += 1;
                } else if l.is_minus_minus() {
                    comp.minus_minus += 1;
                }
            }
        }
        debug_assert!(comp.vertices.iter().all(|&v| to_id(v) < total));
        out.push(comp);
    }
    // `start` scans ids in vertex order, so components are already ordered
    // by their smallest vertex.
    out
}

/// Votes restricted to the vertices of one component.
pub fn component_tally(inst: &Instance, m: &Matching, n: &Matching, c: &AltComponent) -> VoteTally {
    let mut out = VoteTally::default();
    for &v in &c.vertices {
        let r = match v {
            Vertex::Man(a) => compare_ranks(
                m.man_partner(a).and_then(|w| inst.man_rank(a, w)),
                n.man_partner(a).and_then(|w| inst.man_rank(a, w)),
            ),
            Vertex::Woman(b) => compare_ranks(
                m.woman_partner(b).and_then(|x| inst.woman_rank(b, x)),
                n.woman_partner(b).and_then(|x| inst.woman_rank(b, x)),
            ),
        };
        match r {
            1 => out.for_first += 1,
            -1 => out.for_second += 1,
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_random, GenSpec};
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
    fn prefers_examples() {
        let inst = i2();
        assert_eq!(prefers(&inst, Vertex::Man(0), Some(0), Some(1)).unwrap(), 1);
        assert_eq!(prefers(&inst, Vertex::Man(0), Some(1), Some(1)).unwrap(), 0);
        assert_eq!(prefers(&inst, Vertex::Man(1), Some(0), None).unwrap(), 1);
        assert!(prefers(&inst, Vertex::Man(1), Some(1), None).is_err());
    }

    #[test]
    fn label_examples() {
        let inst = i2();
        let m = Matching::from_names(&inst, &[("a1", "b1")]).unwrap();
        let l = label_edge(&inst, &m, Edge::new(1, 0)).unwrap();
        assert_eq!((l.man_vote, l.woman_vote), (1, -1));
        let l = label_edge(&inst, &m, Edge::new(0, 1)).unwrap();
        assert_eq!((l.man_vote, l.woman_vote), (-1, 1));
        assert!(label_edge(&inst, &m, Edge::new(0, 0)).is_err());
        let empty = Matching::empty(&inst);
        for e in inst.edges() {
            assert!(label_edge(&inst, &empty, e).unwrap().is_plus_plus());
        }
    }

    #[test]
    fn tally_examples() {
        let inst = i2();
        let m = Matching::from_names(&inst, &[("a1", "b1")]).unwrap();
        let n = Matching::from_names(&inst, &[("a1", "b2"), ("a2", "b1")]).unwrap();
        assert_eq!(tally(&inst, &m, &n), VoteTally { for_first: 2, for_second: 2 });
        assert_eq!(tally(&inst, &m, &m), VoteTally::default());

        let inst = i3();
        let m = Matching::from_names(&inst, &[("m2", "w1")]).unwrap();
        let n = Matching::from_names(&inst, &[("m1", "w1")]).unwrap();
        assert_eq!(tally(&inst, &m, &n), VoteTally { for_first: 1, for_second: 2 });
    }

    #[test]
    fn i2_symmetric_difference_is_one_balanced_path() {
        let inst = i2();
        let m = Matching::from_names(&inst, &[("a1", "b1")]).unwrap();
        let n = Matching::from_names(&inst, &[("a1", "b2"), ("a2", "b1")]).unwrap();
        assert!(symmetric_difference(&inst, &m, &m).is_empty());
        let comps = symmetric_difference(&inst, &m, &n);
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(c.kind, ComponentKind::Path);
        assert_eq!(
            c.vertices,
            vec![Vertex::Man(1), Vertex::Woman(0), Vertex::Man(0), Vertex::Woman(1)]
        );
        assert_eq!((c.plus_plus, c.minus_minus), (0, 0));
    }

    #[test]
    fn cycles_start_at_smallest_vertex_toward_smaller_neighbor() {
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
        let m = Matching::from_names(&inst, &[("m1", "w1"), ("m2", "w2")]).unwrap();
        let n = Matching::from_names(&inst, &[("m1", "w2"), ("m2", "w1")]).unwrap();
        let comps = symmetric_difference(&inst, &m, &n);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Cycle);
        assert_eq!(
            comps[0].vertices,
            vec![Vertex::Man(0), Vertex::Woman(0), Vertex::Man(1), Vertex::Woman(1)]
        );
        assert_eq!(comps[0].edges().len(), 4);
    }

    fn random_matching(inst: &Instance, picks: &[usize]) -> Matching {
        let mut out = Matching::empty(inst);
        for (m, &p) in picks.iter().enumerate().take(inst.n_men()) {
            let list = inst.man_prefs(m);
            if list.is_empty() {
                continue;
            }
            let w = list[p % (list.len() + 1)..].first().copied();
            if let Some(w) = w {
                if out.woman_partner(w).is_none() {
                    out.insert(Edge::new(m, w));
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn tally_is_antisymmetric_and_splits_over_components(
            seed in 0u64..5000,
            a in proptest::collection::vec(0usize..6, 5),
            b in proptest::collection::vec(0usize..6, 5),
        ) {
            let inst = generate_random(&GenSpec::new(5, 5, 0.6, 0, seed)).unwrap();
            let m = random_matching(&inst, &a);
            let n = random_matching(&inst, &b);
            let t = tally(&inst, &m, &n);
            prop_assert_eq!(t, tally(&inst, &n, &m).reversed());
            let mut sum = VoteTally::default();
            let comps = symmetric_difference(&inst, &m, &n);
            for c in &comps {
                let part = component_tally(&inst, &m, &n, c);
                sum.for_first += part.for_first;
                sum.for_second += part.for_second;
                for e in c.edges() {
                    prop_assert!(m.contains(e) != n.contains(e));
                }
                if c.kind == ComponentKind::Cycle {
                    prop_assert!(c.vertices.len() >= 4 && c.vertices.len() % 2 == 0);
                }
            }
            prop_assert_eq!(sum, t);
            let covered: usize = comps.iter().map(|c| c.vertices.len()).sum();
            let touched = (0..inst.n_men()).filter(|&x| m.man_partner(x) != n.man_partner(x)).count()
                + (0..inst.n_women()).filter(|&x| m.woman_partner(x) != n.woman_partner(x)).count();
            prop_assert_eq!(covered, touched);
        }

        #[test]
        fn labels_never_abstain(seed in 0u64..5000, a in proptest::collection::vec(0usize..6, 5)) {
            let inst = generate_random(&GenSpec::new(5, 5, 0.7, 0, seed)).unwrap();
            let m = random_matching(&inst, &a);
            for e in inst.edges().into_iter().filter(|&e| !m.contains(e)) {
                let l = label_edge(&inst, &m, e).unwrap();
                prop_assert!(l.man_vote != 0 && l.woman_vote != 0);
            }
        }
    }
}
