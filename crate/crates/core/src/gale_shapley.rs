//! Deferred acceptance and stability checks.

use std::collections::VecDeque;

use crate::model::{Edge, Instance, Matching};
use crate::voting::label;

/// Man-proposing deferred acceptance. Free men are served from a queue
/// seeded in declared order; a man who runs out of list stays single.
pub fn propose_man_optimal(inst: &Instance) -> Matching {
    let mut matching = Matching::empty(inst);
    let mut next = vec![0usize; inst.n_men()];
    let mut queue: VecDeque<usize> = (0..inst.n_men()).collect();
    while let Some(m) = queue.pop_front() {
        let list = inst.man_prefs(m);
        while next[m] < list.len() {
            let w = list[next[m]];
            next[m] += 1;
            match matching.woman_partner(w) {
                None => {
                    matching.insert(Edge::new(m, w));
                    break;
                }
                Some(rival) => {
                    if inst.woman_rank(w, m) < inst.woman_rank(w, rival) {
                        matching.remove(Edge::new(rival, w));
                        matching.insert(Edge::new(m, w));
                        queue.push_back(rival);
                        break;
                    }
                }
            }
        }
    }
    matching
}

/// Woman-proposing deferred acceptance, run on the mirrored instance.
pub fn propose_woman_optimal(inst: &Instance) -> Matching {
    propose_man_optimal(&inst.swap_sides()).swap_sides()
}

/// Edges outside `M` whose two endpoints both prefer each other.
pub fn blocking_pairs(inst: &Instance, matching: &Matching) -> Vec<Edge> {
    inst.edges()
        .into_iter()
        .filter(|&e| !matching.contains(e) && label(inst, matching, e).is_plus_plus())
        .collect()
}

pub fn first_blocking_pair(inst: &Instance, matching: &Matching) -> Option<Edge> {
    for m in 0..inst.n_men() {
        let cur = matching.man_partner(m).and_then(|w| inst.man_rank(m, w));
        for (r, &w) in inst.man_prefs(m).iter().enumerate() {
            if cur.is_some_and(|c| r >= c) {
                break;
            }
            let wants = match matching.woman_partner(w) {
                None => true,
                Some(rival) => inst.woman_rank(w, m) < inst.woman_rank(w, rival),
            };
            if wants {
                return Some(Edge::new(m, w));
            }
        }
    }
    None
}

pub fn is_stable(inst: &Instance, matching: &Matching) -> bool {
    first_blocking_pair(inst, matching).is_none()
}
