//! Edge contractions, expansions, stellar subdivisions and bistellar flips,
//! plus transport of a link through a move.
//!
//! An expansion splits a vertex `v` into an edge `{a, b}`: the link sphere of
//! `v` is partitioned into two disks sharing a boundary cycle, `a` keeps the
//! triangles of one disk, `b` those of the other, and the new edge is coned
//! over the boundary cycle. Contraction is the inverse; its validity
//! criterion is the link condition lk(a) ∩ lk(b) = lk({a,b}), the standard
//! necessary-and-sufficient condition for the contraction of a combinatorial
//! manifold to stay a combinatorial manifold of the same PL type.
//!
//! Stellar subdivisions of any positive-dimensional simplex are expansions;
//! the derived [`ExpansionSpec`] is recorded alongside the direct
//! construction. The 2-3, 3-2 and 4-1 bistellar flips are provided for
//! fixture generation only — they are not expansions (they do not add a
//! vertex) and are recorded distinctly.

use crate::complex::{ComplexError, Triangulation};
use crate::linkset::{check_link, EdgeLink, LinkError};
use crate::{Edge, Tet, Triangle, Vertex};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("edge {0:?} is not in the triangulation")]
    UnknownEdge(Edge),
    #[error("simplex {0:?} is not in the triangulation")]
    UnknownSimplex(Vec<Vertex>),
    #[error("vertex {0} is not in the triangulation")]
    UnknownVertex(Vertex),
    #[error(
        "link condition fails for edge {edge:?}: simplex {witness:?} lies in lk({a}) ∩ lk({b}) \
         but not in lk(edge)"
    )]
    LinkCondition { edge: Edge, a: Vertex, b: Vertex, witness: Vec<Vertex> },
    #[error("expansion spec invalid: {0}")]
    Spec(#[from] SpecError),
    #[error("flip not applicable: {0}")]
    FlipNotApplicable(String),
    #[error("move record of this kind cannot transport a link")]
    UnsupportedRecord,
    #[error("record does not match the link's host: {0}")]
    RecordMismatch(String),
    #[error("link passes through the collapsed edge {edge:?} non-locally")]
    NonLocalLink { edge: Edge },
    #[error("transported cycles are not a valid link in the target: {0}")]
    TransportInvalid(#[from] LinkError),
    #[error("move result is structurally malformed: {0}")]
    Structural(#[from] ComplexError),
}

/// Diagnostics for a disk that fails the Euler-formula test.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("split vertex {0} is missing")]
    SplitVertexMissing(Vertex),
    #[error("new label {0} is already a vertex")]
    NewLabelInUse(Vertex),
    #[error("link of vertex {0} is not a 2-sphere")]
    LinkNotSphere(Vertex),
    #[error("disk {side} is empty")]
    EmptyDisk { side: char },
    #[error("triangle {0:?} is not part of an exact partition of the link")]
    NotAPartition(Triangle),
    #[error(
        "disk {side} is not a disk: {triangles} triangles, {edges} edges, {vertices} vertices \
         give Euler characteristic {euler} (need 1) in {pieces} connected piece(s)"
    )]
    NotADisk { side: char, triangles: usize, edges: usize, vertices: usize, euler: i64, pieces: usize },
    #[error("disk {side} has boundary {found:?} but the spec declares {declared:?}")]
    BoundaryMismatch { side: char, found: Vec<Edge>, declared: Vec<Edge> },
    #[error("boundary cycle is not a simple cycle of length ≥ 3")]
    BoundaryCycleInvalid,
}

/// Data of a vertex split: the link sphere of `vertex` partitioned into two
/// disks along `boundary_cycle`; `vertex` keeps disk A, `new_label` takes
/// disk B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub vertex: Vertex,
    pub disk_a: Vec<Triangle>,
    pub disk_b: Vec<Triangle>,
    pub boundary_cycle: Vec<Vertex>,
    pub new_label: Vertex,
}

/// Replayable record of a move. Contractions carry the expansion that
/// reconstructs the input bit-exactly; expansions are inverted by
/// contracting {vertex, new_label}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveRecord {
    Contract { edge: Edge, inverse: ExpansionSpec },
    Expand { spec: ExpansionSpec },
    Stellar { simplex: Vec<Vertex>, new_vertex: Vertex, as_expansion: ExpansionSpec },
    Pachner14 { tet: Tet, new_vertex: Vertex },
    Pachner23 { triangle: Triangle, new_edge: Edge },
    Pachner32 { edge: Edge, new_triangle: Triangle },
    Pachner41 { vertex: Vertex, new_tet: Tet },
}

fn sorted_edge(a: Vertex, b: Vertex) -> Edge {
    [a.min(b), a.max(b)]
}

/// All faces (vertices, edges, triangles) of a set of link triangles, as
/// sorted label tuples.
fn face_closure(triangles: &[Triangle]) -> BTreeSet<Vec<Vertex>> {
    let mut faces = BTreeSet::new();
    for t in triangles {
        for i in 0..3 {
            faces.insert(vec![t[i]]);
            for j in (i + 1)..3 {
                faces.insert(vec![t[i], t[j]]);
            }
        }
        faces.insert(t.to_vec());
    }
    faces
}

fn face_closure_edges(edges: &[Edge]) -> BTreeSet<Vec<Vertex>> {
    let mut faces = BTreeSet::new();
    for e in edges {
        faces.insert(vec![e[0]]);
        faces.insert(vec![e[1]]);
        faces.insert(e.to_vec());
    }
    faces
}

/// Reconstructs the vertex cycle from a set of cycle edges; `None` unless
/// the edges form exactly one simple cycle covering every endpoint twice.
pub fn cycle_from_edges(edges: &[Edge]) -> Option<Vec<Vertex>> {
    if edges.len() < 3 {
        return None;
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in edges {
        adj.entry(e[0]).or_default().push(e[1]);
        adj.entry(e[1]).or_default().push(e[0]);
    }
    if adj.values().any(|nb| nb.len() != 2) {
        return None;
    }
    let start = *adj.keys().next().unwrap();
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = *adj[&start].iter().min().unwrap();
    while cur != start {
        cycle.push(cur);
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    if cycle.len() != adj.len() {
        return None; // more than one cycle
    }
    Some(cycle)
}

fn canonical_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let n = cycle.len();
    let (min_pos, _) = cycle.iter().enumerate().min_by_key(|(_, v)| **v).unwrap();
    let succ = cycle[(min_pos + 1) % n];
    let pred = cycle[(min_pos + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if succ <= pred {
        for i in 0..n {
            out.push(cycle[(min_pos + i) % n]);
        }
    } else {
        for i in 0..n {
            out.push(cycle[(min_pos + n - i) % n]);
        }
    }
    out
}

/// Removes the open star of `edge` and identifies the two endpoints (the
/// smaller label survives). Errors name a witness simplex when the link
/// condition fails.
pub fn contract_edge(t: &Triangulation, edge: &Edge) -> Result<(Triangulation, MoveRecord), MoveError> {
    let e = sorted_edge(edge[0], edge[1]);
    if !t.contains_edge(&e) {
        return Err(MoveError::UnknownEdge(e));
    }
    let (a, b) = (e[0], e[1]);
    let lk_a = face_closure(&t.vertex_link(a));
    let lk_b = face_closure(&t.vertex_link(b));
    let lk_e = face_closure_edges(&t.edge_link(&e));
    if let Some(witness) = lk_a.intersection(&lk_b).find(|s| !lk_e.contains(*s)) {
        return Err(MoveError::LinkCondition { edge: e, a, b, witness: witness.clone() });
    }

    // Inverse expansion, phrased in the contracted complex.
    let disk_a: Vec<Triangle> = t.vertex_link(a).into_iter().filter(|tr| !tr.contains(&b)).collect();
    let disk_b: Vec<Triangle> = t.vertex_link(b).into_iter().filter(|tr| !tr.contains(&a)).collect();
    let boundary_edges = t.edge_link(&e);
    let cycle = cycle_from_edges(&boundary_edges).ok_or(SpecError::BoundaryCycleInvalid)?;
    let inverse = ExpansionSpec {
        vertex: a,
        disk_a: sorted(disk_a),
        disk_b: sorted(disk_b),
        boundary_cycle: canonical_cycle(&cycle),
        new_label: b,
    };

    let mut tets = Vec::new();
    for tet in t.tetrahedra() {
        if tet.contains(&a) && tet.contains(&b) {
            continue; // star of the edge
        }
        let mut new_tet = *tet;
        for v in new_tet.iter_mut() {
            if *v == b {
                *v = a;
            }
        }
        tets.push(new_tet);
    }
    let out = Triangulation::from_tetrahedra(tets)?;
    Ok((out, MoveRecord::Contract { edge: e, inverse }))
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v
}

fn check_disk(
    side: char,
    triangles: &[Triangle],
    declared_boundary: &BTreeSet<Edge>,
) -> Result<(), SpecError> {
    if triangles.is_empty() {
        return Err(SpecError::EmptyDisk { side });
    }
    let mut edge_count: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut verts: BTreeSet<Vertex> = BTreeSet::new();
    for tr in triangles {
        for i in 0..3 {
            verts.insert(tr[i]);
            for j in (i + 1)..3 {
                *edge_count.entry([tr[i], tr[j]]).or_insert(0) += 1;
            }
        }
    }
    // Connectivity across shared edges.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, tr) in triangles.iter().enumerate() {
        for a in 0..3 {
            for b in (a + 1)..3 {
                by_edge.entry([tr[a], tr[b]]).or_default().push(i);
            }
        }
    }
    for ids in by_edge.values() {
        for &x in ids {
            for &y in ids {
                if x != y {
                    adj.entry(x).or_default().push(y);
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![0usize];
    seen.insert(0usize);
    while let Some(x) = stack.pop() {
        if let Some(nbs) = adj.get(&x) {
            for &y in nbs {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    let pieces = if seen.len() == triangles.len() { 1 } else { 2 };
    let euler = verts.len() as i64 - edge_count.len() as i64 + triangles.len() as i64;
    if pieces != 1 || euler != 1 {
        return Err(SpecError::NotADisk {
            side,
            triangles: triangles.len(),
            edges: edge_count.len(),
            vertices: verts.len(),
            euler,
            pieces,
        });
    }
    let found: BTreeSet<Edge> = edge_count
        .iter()
        .filter(|(_, c)| **c == 1)
        .map(|(e, _)| *e)
        .collect();
    if &found != declared_boundary {
        return Err(SpecError::BoundaryMismatch {
            side,
            found: found.into_iter().collect(),
            declared: declared_boundary.iter().copied().collect(),
        });
    }
    Ok(())
}

fn validate_spec(t: &Triangulation, spec: &ExpansionSpec) -> Result<(), SpecError> {
    let v = spec.vertex;
    if !t.vertices().contains(&v) {
        return Err(SpecError::SplitVertexMissing(v));
    }
    if t.vertices().contains(&spec.new_label) {
        return Err(SpecError::NewLabelInUse(spec.new_label));
    }
    let link = sorted(t.vertex_link(v));
    // The link must be a closed connected surface with χ = 2.
    {
        let mut edge_count: BTreeMap<Edge, usize> = BTreeMap::new();
        let mut verts: BTreeSet<Vertex> = BTreeSet::new();
        for tr in &link {
            for i in 0..3 {
                verts.insert(tr[i]);
                for j in (i + 1)..3 {
                    *edge_count.entry([tr[i], tr[j]]).or_insert(0) += 1;
                }
            }
        }
        let closed = edge_count.values().all(|&c| c == 2);
        let chi = verts.len() as i64 - edge_count.len() as i64 + link.len() as i64;
        if !closed || chi != 2 {
            return Err(SpecError::LinkNotSphere(v));
        }
    }
    // Exact partition.
    let a_set: BTreeSet<Triangle> = spec.disk_a.iter().copied().collect();
    let b_set: BTreeSet<Triangle> = spec.disk_b.iter().copied().collect();
    if a_set.len() != spec.disk_a.len() || b_set.len() != spec.disk_b.len() {
        let dup = *spec.disk_a.iter().find(|tr| spec.disk_a.iter().filter(|o| o == tr).count() > 1)
            .or_else(|| spec.disk_b.iter().find(|tr| spec.disk_b.iter().filter(|o| o == tr).count() > 1))
            .unwrap();
        return Err(SpecError::NotAPartition(dup));
    }
    let link_set: BTreeSet<Triangle> = link.iter().copied().collect();
    if let Some(tr) = a_set.intersection(&b_set).next() {
        return Err(SpecError::NotAPartition(*tr));
    }
    for tr in a_set.iter().chain(b_set.iter()) {
        if !link_set.contains(tr) {
            return Err(SpecError::NotAPartition(*tr));
        }
    }
    if a_set.len() + b_set.len() != link_set.len() {
        let missing = *link_set.iter().find(|tr| !a_set.contains(*tr) && !b_set.contains(*tr)).unwrap();
        return Err(SpecError::NotAPartition(missing));
    }
    // Boundary cycle and the two disks.
    let cyc = &spec.boundary_cycle;
    if cyc.len() < 3 || cyc.iter().collect::<BTreeSet<_>>().len() != cyc.len() {
        return Err(SpecError::BoundaryCycleInvalid);
    }
    let declared: BTreeSet<Edge> = (0..cyc.len())
        .map(|i| sorted_edge(cyc[i], cyc[(i + 1) % cyc.len()]))
        .collect();
    check_disk('A', &spec.disk_a, &declared)?;
    check_disk('B', &spec.disk_b, &declared)?;
    Ok(())
}

/// Splits `spec.vertex` along the declared disk partition of its link.
/// The new edge {vertex, new_label} has the boundary cycle as its link, and
/// contracting it reproduces the input bit-exactly.
pub fn expand(t: &Triangulation, spec: &ExpansionSpec) -> Result<(Triangulation, MoveRecord), MoveError> {
    validate_spec(t, spec)?;
    let a = spec.vertex;
    let b = spec.new_label;
    let mut tets: Vec<Tet> = t
        .tetrahedra()
        .iter()
        .filter(|tet| !tet.contains(&a))
        .copied()
        .collect();
    for tr in &spec.disk_a {
        tets.push(sorted_tet_from(a, tr));
    }
    for tr in &spec.disk_b {
        tets.push(sorted_tet_from(b, tr));
    }
    let cyc = &spec.boundary_cycle;
    for i in 0..cyc.len() {
        let (x, y) = (cyc[i], cyc[(i + 1) % cyc.len()]);
        let mut tet = [a, b, x, y];
        tet.sort_unstable();
        tets.push(tet);
    }
    let out = Triangulation::from_tetrahedra(tets)?;
    Ok((out, MoveRecord::Expand { spec: spec.clone() }))
}

fn sorted_tet_from(apex: Vertex, tr: &Triangle) -> Tet {
    let mut tet = [apex, tr[0], tr[1], tr[2]];
    tet.sort_unstable();
    tet
}

/// Replaces the star of `sigma` (dimension 1..3) with the cone from a fresh
/// vertex over ∂sigma ∗ lk(sigma). For a tetrahedron this is the 1-4 move.
/// The record carries the equivalent expansion at the minimum vertex of
/// `sigma`.
pub fn stellar_subdivide(t: &Triangulation, sigma: &[Vertex]) -> Result<(Triangulation, MoveRecord), MoveError> {
    let s = sorted(sigma.to_vec());
    let present = match s.len() {
        2 => t.contains_edge(&[s[0], s[1]]),
        3 => t.contains_triangle(&[s[0], s[1], s[2]]),
        4 => t.contains_tet(&[s[0], s[1], s[2], s[3]]),
        _ => false,
    };
    if !present {
        return Err(MoveError::UnknownSimplex(s));
    }
    let w = t.fresh_label();
    let star = t.star(&s);
    let mut tets: Vec<Tet> = t
        .tetrahedra()
        .iter()
        .filter(|tet| !star.contains(tet))
        .copied()
        .collect();
    for tet in &star {
        for &drop in &s {
            let mut new_tet: Tet = {
                let mut it = tet.iter().copied().filter(|&x| x != drop).chain(std::iter::once(w));
                std::array::from_fn(|_| it.next().unwrap())
            };
            new_tet.sort_unstable();
            tets.push(new_tet);
        }
    }
    let out = Triangulation::from_tetrahedra(tets)?;

    // Derived expansion at the minimum vertex of sigma.
    let anchor = s[0];
    let disk_a: Vec<Triangle> = out.vertex_link(anchor).into_iter().filter(|tr| !tr.contains(&w)).collect();
    let disk_b: Vec<Triangle> = out.vertex_link(w).into_iter().filter(|tr| !tr.contains(&anchor)).collect();
    let boundary = out.edge_link(&sorted_edge(anchor, w));
    let cycle = cycle_from_edges(&boundary).ok_or(SpecError::BoundaryCycleInvalid)?;
    let as_expansion = ExpansionSpec {
        vertex: anchor,
        disk_a: sorted(disk_a),
        disk_b: sorted(disk_b),
        boundary_cycle: canonical_cycle(&cycle),
        new_label: w,
    };
    Ok((out, MoveRecord::Stellar { simplex: s, new_vertex: w, as_expansion }))
}

/// 1-4 bistellar flip: stellar subdivision of a tetrahedron.
pub fn pachner_14(t: &Triangulation, tet: &Tet) -> Result<(Triangulation, MoveRecord), MoveError> {
    if !t.contains_tet(tet) {
        return Err(MoveError::UnknownSimplex(tet.to_vec()));
    }
    let w = t.fresh_label();
    let mut tets: Vec<Tet> = t.tetrahedra().iter().filter(|x| *x != tet).copied().collect();
    for drop in 0..4 {
        let mut new_tet: Tet = {
            let mut it = (0..4).filter(|&i| i != drop).map(|i| tet[i]).chain(std::iter::once(w));
            std::array::from_fn(|_| it.next().unwrap())
        };
        new_tet.sort_unstable();
        tets.push(new_tet);
    }
    let out = Triangulation::from_tetrahedra(tets)?;
    Ok((out, MoveRecord::Pachner14 { tet: *tet, new_vertex: w }))
}

/// 2-3 bistellar flip across a triangle; applicable iff the opposite apexes
/// are not already joined by an edge.
pub fn pachner_23(t: &Triangulation, triangle: &Triangle) -> Result<(Triangulation, MoveRecord), MoveError> {
    if !t.contains_triangle(triangle) {
        return Err(MoveError::UnknownSimplex(triangle.to_vec()));
    }
    let star = t.star(triangle);
    if star.len() != 2 {
        return Err(MoveError::FlipNotApplicable(format!(
            "triangle {triangle:?} lies in {} tetrahedra",
            star.len()
        )));
    }
    let apex = |tet: &Tet| *tet.iter().find(|v| !triangle.contains(v)).unwrap();
    let (a, b) = (apex(&star[0]), apex(&star[1]));
    let new_edge = sorted_edge(a, b);
    if t.contains_edge(&new_edge) {
        return Err(MoveError::FlipNotApplicable(format!(
            "apex edge {new_edge:?} already present"
        )));
    }
    let mut tets: Vec<Tet> = t.tetrahedra().iter().filter(|x| !star.contains(x)).copied().collect();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut tet = [a, b, triangle[i], triangle[j]];
            tet.sort_unstable();
            tets.push(tet);
        }
    }
    let out = Triangulation::from_tetrahedra(tets)?;
    Ok((out, MoveRecord::Pachner23 { triangle: *triangle, new_edge }))
}

/// 3-2 bistellar flip around an edge in exactly three tetrahedra;
/// applicable iff the opposite triangle is absent.
pub fn pachner_32(t: &Triangulation, edge: &Edge) -> Result<(Triangulation, MoveRecord), MoveError> {
    if !t.contains_edge(edge) {
        return Err(MoveError::UnknownEdge(*edge));
    }
    let star = t.star(edge);
    if star.len() != 3 {
        return Err(MoveError::FlipNotApplicable(format!(
            "edge {edge:?} lies in {} tetrahedra",
            star.len()
        )));
    }
    let ring: BTreeSet<Vertex> = star
        .iter()
        .flat_map(|tet| tet.iter().copied())
        .filter(|v| !edge.contains(v))
        .collect();
    if ring.len() != 3 {
        return Err(MoveError::FlipNotApplicable(format!(
            "edge link of {edge:?} has {} vertices",
            ring.len()
        )));
    }
    let tri: Triangle = {
        let mut it = ring.into_iter();
        std::array::from_fn(|_| it.next().unwrap())
    };
    if t.contains_triangle(&tri) {
        return Err(MoveError::FlipNotApplicable(format!(
            "opposite triangle {tri:?} already present"
        )));
    }
    let mut tets: Vec<Tet> = t.tetrahedra().iter().filter(|x| !star.contains(x)).copied().collect();
    for &endpoint in edge {
        tets.push(sorted_tet_from(endpoint, &tri));
    }
    let out = Triangulation::from_tetrahedra(tets)?;
    Ok((out, MoveRecord::Pachner32 { edge: *edge, new_triangle: tri }))
}

/// 4-1 bistellar flip at a vertex of star size four; applicable iff the
/// surrounding tetrahedron is absent.
pub fn pachner_41(t: &Triangulation, vertex: Vertex) -> Result<(Triangulation, MoveRecord), MoveError> {
    if !t.vertices().contains(&vertex) {
        return Err(MoveError::UnknownVertex(vertex));
    }
    let star = t.star(&[vertex]);
    if star.len() != 4 {
        return Err(MoveError::FlipNotApplicable(format!(
            "vertex {vertex} lies in {} tetrahedra",
            star.len()
        )));
    }
    let around: BTreeSet<Vertex> = star
        .iter()
        .flat_map(|tet| tet.iter().copied())
        .filter(|&v| v != vertex)
        .collect();
    if around.len() != 4 {
        return Err(MoveError::FlipNotApplicable(format!(
            "link of vertex {vertex} has {} vertices",
            around.len()
        )));
    }
    let new_tet: Tet = {
        let mut it = around.into_iter();
        std::array::from_fn(|_| it.next().unwrap())
    };
    if t.contains_tet(&new_tet) {
        return Err(MoveError::FlipNotApplicable(format!(
            "surrounding tetrahedron {new_tet:?} already present"
        )));
    }
    let mut tets: Vec<Tet> = t.tetrahedra().iter().filter(|x| !star.contains(x)).copied().collect();
    tets.push(new_tet);
    let out = Triangulation::from_tetrahedra(tets)?;
    Ok((out, MoveRecord::Pachner41 { vertex, new_tet }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

/// Carries a link through a move. For an expansion (or stellar subdivision)
/// record, `target` is the expanded complex and the transported link has at
/// most one extra edge. For a contraction record, `target` is the contracted
/// complex and the transport is the inverse operation.
pub fn transport_link(target: &Triangulation, l: &EdgeLink, rec: &MoveRecord) -> Result<EdgeLink, MoveError> {
    match rec {
        MoveRecord::Expand { spec } => transport_through_expansion(target, l, spec),
        MoveRecord::Stellar { as_expansion, .. } => transport_through_expansion(target, l, as_expansion),
        MoveRecord::Contract { edge, .. } => transport_through_contraction(target, l, edge),
        _ => Err(MoveError::UnsupportedRecord),
    }
}

fn transport_through_expansion(
    target: &Triangulation,
    l: &EdgeLink,
    spec: &ExpansionSpec,
) -> Result<EdgeLink, MoveError> {
    let v = spec.vertex;
    let a = spec.vertex;
    let b = spec.new_label;
    let boundary: BTreeSet<Vertex> = spec.boundary_cycle.iter().copied().collect();
    let in_a: BTreeSet<Vertex> = spec.disk_a.iter().flatten().copied().collect();
    let in_b: BTreeSet<Vertex> = spec.disk_b.iter().flatten().copied().collect();
    // Boundary vertices are adjacent to both sides; side A by convention.
    let side_of = |x: Vertex| -> Option<Side> {
        if boundary.contains(&x) {
            Some(Side::A)
        } else if in_a.contains(&x) {
            Some(Side::A)
        } else if in_b.contains(&x) {
            Some(Side::B)
        } else {
            None
        }
    };
    let mut cycles: Vec<Vec<Vertex>> = Vec::with_capacity(l.component_count());
    for comp in l.components() {
        match comp.iter().position(|&x| x == v) {
            None => cycles.push(comp.clone()),
            Some(pos) => {
                let n = comp.len();
                let x = comp[(pos + n - 1) % n];
                let y = comp[(pos + 1) % n];
                let sx = side_of(x).ok_or_else(|| {
                    MoveError::RecordMismatch(format!("vertex {x} is not in the split link"))
                })?;
                let sy = side_of(y).ok_or_else(|| {
                    MoveError::RecordMismatch(format!("vertex {y} is not in the split link"))
                })?;
                let replacement: Vec<Vertex> = match (sx, sy) {
                    (Side::A, Side::A) => vec![a],
                    (Side::B, Side::B) => vec![b],
                    (Side::A, Side::B) => vec![a, b],
                    (Side::B, Side::A) => vec![b, a],
                };
                let mut cyc = Vec::with_capacity(n + 1);
                for (i, &u) in comp.iter().enumerate() {
                    if i == pos {
                        cyc.extend_from_slice(&replacement);
                    } else {
                        cyc.push(u);
                    }
                }
                cycles.push(cyc);
            }
        }
    }
    Ok(check_link(target, &cycles)?)
}

fn transport_through_contraction(
    target: &Triangulation,
    l: &EdgeLink,
    edge: &Edge,
) -> Result<EdgeLink, MoveError> {
    let (a, b) = (edge[0], edge[1]);
    let mut cycles: Vec<Vec<Vertex>> = Vec::with_capacity(l.component_count());
    for comp in l.components() {
        let has_a = comp.contains(&a);
        let has_b = comp.contains(&b);
        if !has_b {
            cycles.push(comp.clone());
            continue;
        }
        if has_a {
            let n = comp.len();
            let pa = comp.iter().position(|&x| x == a).unwrap();
            let pb = comp.iter().position(|&x| x == b).unwrap();
            let adjacent = (pa + 1) % n == pb || (pb + 1) % n == pa;
            if !adjacent {
                return Err(MoveError::NonLocalLink { edge: *edge });
            }
            cycles.push(comp.iter().copied().filter(|&x| x != b).collect());
        } else {
            cycles.push(comp.iter().map(|&x| if x == b { a } else { x }).collect());
        }
    }
    Ok(check_link(target, &cycles)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use itertools::Itertools;

    fn simplex_boundary() -> Triangulation {
        let tets: Vec<[Vertex; 4]> = (1..=5)
            .combinations(4)
            .map(|c| [c[0], c[1], c[2], c[3]])
            .collect();
        Triangulation::from_tetrahedra(tets).unwrap()
    }

    #[test]
    fn contraction_in_simplex_boundary_violates_link_condition() {
        // lk(1) and lk(2) share the whole triangle {3,4,5}, which is not in
        // lk({1,2}); the witness itself is enumerable by hand.
        let t = simplex_boundary();
        for e in t.edges().to_vec() {
            let err = contract_edge(&t, &e).unwrap_err();
            assert!(matches!(err, MoveError::LinkCondition { .. }), "{e:?}: {err:?}");
        }
        match contract_edge(&t, &[1, 2]).unwrap_err() {
            MoveError::LinkCondition { witness, .. } => assert_eq!(witness, vec![3, 4, 5]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn join_edge_between_the_triangles_contracts_cleanly() {
        // The link condition for {1,4} holds by explicit enumeration:
        // lk(1) ∩ lk(4) is exactly the 4-cycle link of the edge, and the
        // contraction collapses the join to a 4-simplex boundary.
        let a_edges = [[1i64, 2], [1, 3], [2, 3]];
        let b_edges = [[4i64, 5], [4, 6], [5, 6]];
        let mut tets = Vec::new();
        for ae in a_edges {
            for be in b_edges {
                tets.push([ae[0], ae[1], be[0], be[1]]);
            }
        }
        let t = Triangulation::from_tetrahedra(tets).unwrap();
        let (out, _) = contract_edge(&t, &[1, 4]).unwrap();
        assert_eq!(out.n(), 5);
        assert!(validate(&out).is_valid());
        // Every 4-subset of {1,2,3,5,6} is a tetrahedron.
        assert_eq!(out.vertices(), &[1, 2, 3, 5, 6]);
        assert_eq!(out.tetrahedra().len(), 5);
    }

    #[test]
    fn stellar_tet_then_contract_restores_simplex_boundary() {
        let t = simplex_boundary();
        let (subdivided, rec) = stellar_subdivide(&t, &[2, 3, 4, 5]).unwrap();
        assert_eq!(subdivided.n(), 8);
        assert_eq!(subdivided.f_vector().f0, 6);
        assert!(validate(&subdivided).is_valid());
        match &rec {
            MoveRecord::Stellar { new_vertex, .. } => assert_eq!(*new_vertex, 6),
            other => panic!("unexpected {other:?}"),
        }
        let (restored, _) = contract_edge(&subdivided, &[2, 6]).unwrap();
        assert_eq!(restored, t, "bit-exact restoration");
    }

    #[test]
    fn stellar_counts_by_dimension() {
        let t = simplex_boundary();
        let (tri_sub, _) = stellar_subdivide(&t, &[1, 2, 3]).unwrap();
        assert_eq!(tri_sub.n(), 9, "star of a triangle: 2 tets replaced by 6");
        assert!(validate(&tri_sub).is_valid());
        let (edge_sub, _) = stellar_subdivide(&t, &[1, 2]).unwrap();
        assert_eq!(edge_sub.n(), 8, "star of an edge in 3 tets: replaced by 6");
        assert!(validate(&edge_sub).is_valid());
    }

    #[test]
    fn stellar_matches_its_derived_expansion() {
        let t = simplex_boundary();
        for sigma in [vec![2, 3, 4, 5], vec![1, 2, 3], vec![1, 2]] {
            let (direct, rec) = stellar_subdivide(&t, &sigma).unwrap();
            let MoveRecord::Stellar { as_expansion, .. } = &rec else { panic!() };
            let (via_expand, _) = expand(&t, as_expansion).unwrap();
            assert_eq!(direct, via_expand, "sigma {sigma:?}");
        }
    }

    #[test]
    fn expand_contract_roundtrip_on_simplex_boundary() {
        let t = simplex_boundary();
        // Split vertex 1: one link triangle on side A, three on side B.
        let link = t.vertex_link(1);
        let spec = ExpansionSpec {
            vertex: 1,
            disk_a: vec![link[0]],
            disk_b: sorted(link[1..].to_vec()),
            boundary_cycle: link[0].to_vec(),
            new_label: 6,
        };
        let (expanded, _) = expand(&t, &spec).unwrap();
        assert!(validate(&expanded).is_valid());
        assert_eq!(expanded.f_vector().f0, 6);
        let (restored, rec) = contract_edge(&expanded, &[1, 6]).unwrap();
        assert_eq!(restored, t);
        // The contraction's recorded inverse re-expands bit-exactly.
        let MoveRecord::Contract { inverse, .. } = rec else { panic!() };
        let (re_expanded, _) = expand(&restored, &inverse).unwrap();
        assert_eq!(re_expanded, expanded);
    }

    #[test]
    fn disconnected_disk_is_rejected_with_diagnostics() {
        let t = simplex_boundary();
        let link = sorted(t.vertex_link(1)); // [2,3,4],[2,3,5],[2,4,5],[3,4,5]
        // {2,3,4} and its opposite {3,4,5}? They share edge {3,4}; pick the
        // genuinely disjoint pair: {2,3,4} vs {2,4,5} share {2,4}. In ∂Δ³
        // every pair of triangles shares an edge, so force failure via a
        // wrong boundary declaration instead.
        let spec = ExpansionSpec {
            vertex: 1,
            disk_a: vec![link[0], link[3]],
            disk_b: vec![link[1], link[2]],
            boundary_cycle: vec![2, 3, 4],
            new_label: 6,
        };
        let err = expand(&t, &spec).unwrap_err();
        assert!(matches!(err, MoveError::Spec(SpecError::BoundaryMismatch { .. })), "{err:?}");
    }

    #[test]
    fn empty_disk_is_rejected() {
        let t = simplex_boundary();
        let link = sorted(t.vertex_link(1));
        let spec = ExpansionSpec {
            vertex: 1,
            disk_a: vec![],
            disk_b: link,
            boundary_cycle: vec![2, 3, 4],
            new_label: 6,
        };
        let err = expand(&t, &spec).unwrap_err();
        assert!(matches!(err, MoveError::Spec(SpecError::EmptyDisk { side: 'A' })), "{err:?}");
    }

    #[test]
    fn pachner_23_and_32_are_mutually_inverse_here() {
        let t = simplex_boundary();
        // First subdivide so a 2-3 flip becomes applicable somewhere.
        let (t1, _) = pachner_14(&t, &[2, 3, 4, 5]).unwrap();
        let tri = t1
            .triangles()
            .iter()
            .find(|tr| {
                pachner_23(&t1, tr).is_ok()
            })
            .copied()
            .expect("some 2-3 flip applicable");
        let (t2, rec) = pachner_23(&t1, &tri).unwrap();
        assert!(validate(&t2).is_valid());
        assert_eq!(t2.n(), t1.n() + 1);
        let MoveRecord::Pachner23 { new_edge, .. } = rec else { panic!() };
        let (t3, _) = pachner_32(&t2, &new_edge).unwrap();
        assert_eq!(t3, t1);
    }

    #[test]
    fn pachner_41_undoes_14() {
        let t = simplex_boundary();
        let (t1, rec) = pachner_14(&t, &[2, 3, 4, 5]).unwrap();
        let MoveRecord::Pachner14 { new_vertex, .. } = rec else { panic!() };
        let (t2, _) = pachner_41(&t1, new_vertex).unwrap();
        assert_eq!(t2, t);
    }

    #[test]
    fn transport_through_expansion_and_back() {
        let t = simplex_boundary();
        let link = sorted(t.vertex_link(1));
        let spec = ExpansionSpec {
            vertex: 1,
            disk_a: vec![link[0]],
            disk_b: sorted(link[1..].to_vec()),
            boundary_cycle: link[0].to_vec(),
            new_label: 6,
        };
        let (expanded, rec) = expand(&t, &spec).unwrap();

        // A cycle avoiding the split vertex is untouched.
        let away = check_link(&t, &[vec![2, 3, 4]]).unwrap();
        let moved = transport_link(&expanded, &away, &rec).unwrap();
        assert_eq!(moved, away);

        // Cycles through the split vertex gain at most one edge and return
        // exactly under the inverse contraction.
        for tri in t.triangles().to_vec() {
            if !tri.contains(&1) {
                continue;
            }
            let l = check_link(&t, &[tri.to_vec()]).unwrap();
            let fwd = transport_link(&expanded, &l, &rec).unwrap();
            assert!(fwd.edge_count() <= l.edge_count() + 1, "{tri:?}");
            let back_rec = MoveRecord::Contract {
                edge: [1, 6],
                inverse: spec.clone(),
            };
            let back = transport_link(&t, &fwd, &back_rec).unwrap();
            assert_eq!(back, l, "{tri:?}");
        }
    }

    #[test]
    fn transport_uses_the_new_edge_when_sides_differ() {
        // Stellar-subdivide a triangle containing vertex 1 so that some link
        // neighbors land on opposite sides of the split.
        let t = simplex_boundary();
        let (out, rec) = stellar_subdivide(&t, &[1, 2, 3]).unwrap();
        let MoveRecord::Stellar { as_expansion, new_vertex, .. } = &rec else { panic!() };
        assert_eq!(as_expansion.vertex, 1);
        // Find a triangle through vertex 1 whose other vertices split sides.
        let in_b: BTreeSet<Vertex> = as_expansion.disk_b.iter().flatten().copied().collect();
        let boundary: BTreeSet<Vertex> = as_expansion.boundary_cycle.iter().copied().collect();
        let interior_b: BTreeSet<Vertex> = in_b.difference(&boundary).copied().collect();
        let candidate = t
            .triangles()
            .iter()
            .find(|tr| tr.contains(&1) && tr.iter().any(|v| interior_b.contains(v)))
            .copied();
        if let Some(tr) = candidate {
            let l = check_link(&t, &[tr.to_vec()]).unwrap();
            let fwd = transport_link(&out, &l, &rec).unwrap();
            let uses_new_edge = fwd
                .edges()
                .iter()
                .any(|e| e.contains(&1) && e.contains(new_vertex));
            assert!(fwd.edge_count() == l.edge_count() + 1);
            assert!(uses_new_edge);
        }
    }
}
