//! Shellability of triangulated 3-spheres: order verification and
//! backtracking search.
//!
//! An order σ₁,…,σₙ of the tetrahedra is accepted when, for each k < n, the
//! intersection of σₖ with the union of its predecessors is generated by j
//! complete triangles of σₖ with 1 ≤ j ≤ 3 and carries no stray lower faces;
//! the last tetrahedron must meet the union in its whole boundary. For pure
//! closed pseudomanifolds this facet-intersection criterion is equivalent to
//! the topological requirement that every initial union be a 3-ball: a union
//! of 1–3 facet triangles is a disk on the tetrahedron's boundary, so each
//! step glues a ball to a ball along a disk.

use crate::complex::Triangulation;
use crate::{Edge, Tet, Triangle, Vertex};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShellingError {
    #[error("order is not a permutation of the tetrahedra (unknown or repeated {0:?})")]
    NotAPermutation(Tet),
}

/// A verified shelling order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingOrder {
    pub order: Vec<Tet>,
}

/// Why a prefix stops being a ball.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellDefect {
    #[error("tetrahedron shares {found} complete triangles with the union, need 1..=3")]
    BadTriangleCount { found: usize },
    #[error("edge {0:?} of the tetrahedron lies in the union but in none of the shared triangles")]
    StrayEdge(Edge),
    #[error("vertex {0} of the tetrahedron lies in the union but in none of the shared triangles")]
    StrayVertex(Vertex),
    #[error("final tetrahedron must meet the union in its full boundary, found {found} triangles")]
    BadClosure { found: usize },
}

/// Outcome of [`verify_shelling`]: pass, or the first failing 1-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShellingCheck {
    Pass,
    FailAt { index: usize, defect: ShellDefect },
}

impl ShellingCheck {
    pub fn passed(&self) -> bool {
        matches!(self, ShellingCheck::Pass)
    }
}

fn triangles_of(t: &Tet) -> [Triangle; 4] {
    std::array::from_fn(|skip| {
        let mut it = (0..4).filter(|&i| i != skip);
        std::array::from_fn(|_| t[it.next().unwrap()])
    })
}

fn edges_of(t: &Tet) -> [Edge; 6] {
    let mut out = [[0; 2]; 6];
    let mut k = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            out[k] = [t[i], t[j]];
            k += 1;
        }
    }
    out
}

/// Incremental face bookkeeping for the union of a prefix.
#[derive(Debug, Default, Clone)]
struct Union {
    triangles: BTreeSet<Triangle>,
    edges: BTreeSet<Edge>,
    vertices: BTreeSet<Vertex>,
}

impl Union {
    fn add(&mut self, t: &Tet) {
        for tri in triangles_of(t) {
            self.triangles.insert(tri);
        }
        for e in edges_of(t) {
            self.edges.insert(e);
        }
        for &v in t {
            self.vertices.insert(v);
        }
    }

    /// Checks the gluing condition for the next tetrahedron against the
    /// current union; `last` switches to the full-boundary closure rule.
    fn admissible(&self, t: &Tet, last: bool) -> Result<(), ShellDefect> {
        let shared: Vec<Triangle> = triangles_of(t)
            .into_iter()
            .filter(|tri| self.triangles.contains(tri))
            .collect();
        if last {
            if shared.len() != 4 {
                return Err(ShellDefect::BadClosure { found: shared.len() });
            }
            return Ok(());
        }
        if shared.is_empty() || shared.len() > 3 {
            return Err(ShellDefect::BadTriangleCount { found: shared.len() });
        }
        for e in edges_of(t) {
            if self.edges.contains(&e)
                && !shared.iter().any(|tri| tri.contains(&e[0]) && tri.contains(&e[1]))
            {
                return Err(ShellDefect::StrayEdge(e));
            }
        }
        for &v in t {
            if self.vertices.contains(&v) && !shared.iter().any(|tri| tri.contains(&v)) {
                return Err(ShellDefect::StrayVertex(v));
            }
        }
        Ok(())
    }
}

/// Verifies a proposed shelling order; reports the first failing index.
pub fn verify_shelling(t: &Triangulation, order: &[Tet]) -> Result<ShellingCheck, ShellingError> {
    let as_set: BTreeSet<Tet> = order.iter().copied().collect();
    if order.len() != t.n() || as_set.len() != t.n() {
        let offender = order
            .iter()
            .find(|x| !t.contains_tet(x))
            .or_else(|| order.iter().find(|x| order.iter().filter(|o| o == x).count() > 1))
            .copied()
            .unwrap_or([0; 4]);
        return Err(ShellingError::NotAPermutation(offender));
    }
    if let Some(x) = order.iter().find(|x| !t.contains_tet(x)) {
        return Err(ShellingError::NotAPermutation(*x));
    }
    let n = order.len();
    let mut union = Union::default();
    union.add(&order[0]);
    for (i, tet) in order.iter().enumerate().skip(1) {
        if let Err(defect) = union.admissible(tet, i + 1 == n) {
            return Ok(ShellingCheck::FailAt { index: i + 1, defect });
        }
        union.add(tet);
    }
    Ok(ShellingCheck::Pass)
}

/// Result of the backtracking search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FindOutcome {
    Found(ShellingOrder),
    /// The whole search space was exhausted: no shelling exists.
    NoneExists { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

/// Default search budget (nodes tried), chosen so the tool always
/// terminates at desk scale.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Backtracking search for a shelling order using the incremental gluing
/// criterion. Deterministic: candidates are tried by (shared triangle count
/// descending, label ascending). Every returned order re-verifies.
pub fn find_shelling(t: &Triangulation, budget: u64) -> FindOutcome {
    let tets = t.tetrahedra();
    let n = tets.len();
    let mut nodes: u64 = 0;
    let mut union = Union::default();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    // Depth-first over prefixes; at each depth, candidate indices are
    // ordered by the heuristic. The stack holds (candidate list, cursor).
    struct Frame {
        candidates: Vec<usize>,
        cursor: usize,
    }

    let order_candidates = |union: &Union, used: &[bool], depth: usize| -> Vec<usize> {
        let mut c: Vec<(usize, usize)> = (0..n)
            .filter(|&i| !used[i])
            .filter_map(|i| {
                if depth == 0 {
                    return Some((0, i));
                }
                let shared = triangles_of(&tets[i])
                    .into_iter()
                    .filter(|tri| union.triangles.contains(tri))
                    .count();
                match union.admissible(&tets[i], depth + 1 == n) {
                    Ok(()) => Some((shared, i)),
                    Err(_) => None,
                }
            })
            .collect();
        c.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        c.into_iter().map(|(_, i)| i).collect()
    };

    let mut stack = vec![Frame { candidates: order_candidates(&union, &used, 0), cursor: 0 }];
    while let Some(frame) = stack.last_mut() {
        if frame.cursor >= frame.candidates.len() {
            stack.pop();
            if let Some(i) = chosen.pop() {
                used[i] = false;
                // Rebuild the union from scratch: simple and cheap at the
                // sizes the search runs on compared to pivot work.
                union = Union::default();
                for &j in &chosen {
                    union.add(&tets[j]);
                }
            }
            continue;
        }
        let i = frame.candidates[frame.cursor];
        frame.cursor += 1;
        nodes += 1;
        if nodes > budget {
            return FindOutcome::BudgetExhausted { nodes };
        }
        used[i] = true;
        chosen.push(i);
        union.add(&tets[i]);
        if chosen.len() == n {
            let order: Vec<Tet> = chosen.iter().map(|&j| tets[j]).collect();
            debug_assert!(matches!(verify_shelling(t, &order), Ok(ShellingCheck::Pass)));
            return FindOutcome::Found(ShellingOrder { order });
        }
        let candidates = order_candidates(&union, &used, chosen.len());
        stack.push(Frame { candidates, cursor: 0 });
    }
    FindOutcome::NoneExists { nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cyclic_polytope_boundary, join_of_triangles, simplex_boundary};
    use itertools::Itertools;

    #[test]
    fn every_order_of_the_simplex_boundary_shells() {
        // Exhaustive oracle over all 120 permutations rather than asserting
        // extendable shellability.
        let t = simplex_boundary().triangulation;
        let tets: Vec<Tet> = t.tetrahedra().to_vec();
        for perm in tets.iter().permutations(5) {
            let order: Vec<Tet> = perm.into_iter().copied().collect();
            let check = verify_shelling(&t, &order).unwrap();
            assert!(check.passed(), "{order:?}: {check:?}");
        }
    }

    #[test]
    fn non_adjacent_second_tetrahedron_fails_at_index_two() {
        let g = join_of_triangles();
        let t = &g.triangulation;
        let tets = t.tetrahedra();
        let first = tets[0];
        let disjointish = tets
            .iter()
            .find(|x| {
                let shared: Vec<_> =
                    x.iter().filter(|v| first.contains(v)).collect();
                shared.len() < 3 && **x != first
            })
            .copied()
            .expect("some tetrahedron shares no triangle with the first");
        let mut order = vec![first, disjointish];
        order.extend(tets.iter().filter(|x| **x != first && **x != disjointish));
        match verify_shelling(t, &order).unwrap() {
            ShellingCheck::FailAt { index: 2, .. } => {}
            other => panic!("expected failure at index 2, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_permutations() {
        let t = simplex_boundary().triangulation;
        let mut order = t.tetrahedra().to_vec();
        order[0] = order[1];
        assert!(verify_shelling(&t, &order).is_err());
        let short = &t.tetrahedra()[..3];
        assert!(verify_shelling(&t, short).is_err());
    }

    #[test]
    fn search_finds_orders_on_polytopal_fixtures() {
        for t in [
            simplex_boundary().triangulation,
            join_of_triangles().triangulation,
            cyclic_polytope_boundary(7).unwrap().triangulation,
        ] {
            match find_shelling(&t, DEFAULT_BUDGET) {
                FindOutcome::Found(o) => {
                    assert!(verify_shelling(&t, &o.order).unwrap().passed());
                    // Reversal of a shelling of a closed sphere complex:
                    // checked, not assumed.
                    let rev: Vec<Tet> = o.order.iter().rev().copied().collect();
                    assert!(
                        verify_shelling(&t, &rev).unwrap().passed(),
                        "reversed order rejected on {} tets",
                        t.n()
                    );
                }
                other => panic!("no shelling found: {other:?}"),
            }
        }
    }

    #[test]
    fn zero_budget_exhausts_immediately() {
        let t = simplex_boundary().triangulation;
        assert!(matches!(find_shelling(&t, 0), FindOutcome::BudgetExhausted { .. }));
    }
}
