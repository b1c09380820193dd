//! Simplicial triangulations of closed 3-manifolds: representation,
//! validation, skeleta and the dual graph.
//!
//! A [`Triangulation`] is an abstract pure simplicial 3-complex given by its
//! tetrahedra over integer vertex labels. Faces are stored canonically as
//! sorted vertex tuples; orientation is never tracked combinatorially (the
//! diagram pipeline derives signs from geometry). Values are immutable after
//! construction and every operation is a pure function.
//!
//! [`validate`] certifies the combinatorial conditions for a triangulation of
//! a closed 3-manifold: closed pseudomanifold, connected, all vertex links
//! 2-spheres, χ = 0. Sphere recognition proper is out of scope: built-in
//! generators produce genuine S³ triangulations by construction, while
//! user-supplied complexes are certified as closed 3-manifolds with S³
//! assumed (reports carry that tag).

use crate::{Edge, Tet, Triangle, Vertex};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("tetrahedron {0:?} has a repeated vertex")]
    DuplicateVertexInTet([Vertex; 4]),
    #[error("duplicate tetrahedron {0:?}")]
    DuplicateTet(Tet),
    #[error("tetrahedron {tet:?} uses vertex {vertex} missing from the vertex set")]
    UnknownVertex { tet: Tet, vertex: Vertex },
    #[error("vertex {0} lies in no tetrahedron")]
    IsolatedVertex(Vertex),
    #[error("duplicate vertex label {0}")]
    DuplicateVertexLabel(Vertex),
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("triangle {triangle:?} lies in {count} tetrahedra, expected 2")]
    UnpairedTriangle { triangle: Triangle, count: usize },
}

/// Abstract simplicial 3-complex: tetrahedra over integer vertex labels.
///
/// Canonical form: `vertices` sorted ascending, each tetrahedron sorted
/// ascending, the tetrahedron list sorted lexicographically. The 1- and
/// 2-skeleton are derived at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    vertices: Vec<Vertex>,
    tetrahedra: Vec<Tet>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
}

fn sort_tet(raw: [Vertex; 4]) -> Result<Tet, ComplexError> {
    let mut t = raw;
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] || t[2] == t[3] {
        return Err(ComplexError::DuplicateVertexInTet(raw));
    }
    Ok(t)
}

impl Triangulation {
    /// Builds a triangulation from raw data, canonicalizing order.
    pub fn new(vertices: Vec<Vertex>, tetrahedra: Vec<[Vertex; 4]>) -> Result<Self, ComplexError> {
        if tetrahedra.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut vs = vertices;
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertexLabel(w[0]));
        }
        let mut tets = Vec::with_capacity(tetrahedra.len());
        for raw in tetrahedra {
            tets.push(sort_tet(raw)?);
        }
        tets.sort_unstable();
        if let Some(w) = tets.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateTet(w[0]));
        }
        let vset: BTreeSet<Vertex> = vs.iter().copied().collect();
        let mut used: BTreeSet<Vertex> = BTreeSet::new();
        for t in &tets {
            for &v in t {
                if !vset.contains(&v) {
                    return Err(ComplexError::UnknownVertex { tet: *t, vertex: v });
                }
                used.insert(v);
            }
        }
        if let Some(&v) = vs.iter().find(|v| !used.contains(v)) {
            return Err(ComplexError::IsolatedVertex(v));
        }

        let mut edges = BTreeSet::new();
        let mut triangles = BTreeSet::new();
        for t in &tets {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    edges.insert([t[i], t[j]]);
                }
                let tri: Triangle = {
                    let mut it = (0..4).filter(|&k| k != i);
                    std::array::from_fn(|_| t[it.next().unwrap()])
                };
                triangles.insert(tri);
            }
        }
        Ok(Triangulation {
            vertices: vs,
            tetrahedra: tets,
            edges: edges.into_iter().collect(),
            triangles: triangles.into_iter().collect(),
        })
    }

    /// Builds a triangulation whose vertex set is derived from the tetrahedra.
    pub fn from_tetrahedra(tetrahedra: Vec<[Vertex; 4]>) -> Result<Self, ComplexError> {
        let vs: BTreeSet<Vertex> = tetrahedra.iter().flatten().copied().collect();
        Triangulation::new(vs.into_iter().collect(), tetrahedra)
    }

    /// Number of tetrahedra (the paper-facing size parameter n).
    pub fn n(&self) -> usize {
        self.tetrahedra.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn tetrahedra(&self) -> &[Tet] {
        &self.tetrahedra
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn max_label(&self) -> Vertex {
        *self.vertices.last().expect("nonempty")
    }

    /// Next unused vertex label.
    pub fn fresh_label(&self) -> Vertex {
        self.max_label() + 1
    }

    pub fn contains_tet(&self, t: &Tet) -> bool {
        self.tetrahedra.binary_search(t).is_ok()
    }

    pub fn contains_triangle(&self, t: &Triangle) -> bool {
        self.triangles.binary_search(t).is_ok()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn f_vector(&self) -> FVector {
        FVector {
            f0: self.vertices.len(),
            f1: self.edges.len(),
            f2: self.triangles.len(),
            f3: self.tetrahedra.len(),
        }
    }

    /// Tetrahedra containing every vertex of `simplex`.
    pub fn star(&self, simplex: &[Vertex]) -> Vec<Tet> {
        self.tetrahedra
            .iter()
            .filter(|t| simplex.iter().all(|v| t.contains(v)))
            .copied()
            .collect()
    }

    /// Triangles of the link of a vertex: for each tetrahedron containing
    /// `v`, the face opposite `v`.
    pub fn vertex_link(&self, v: Vertex) -> Vec<Triangle> {
        self.tetrahedra
            .iter()
            .filter(|t| t.contains(&v))
            .map(|t| {
                let mut it = t.iter().copied().filter(|&x| x != v);
                std::array::from_fn(|_| it.next().unwrap())
            })
            .collect()
    }

    /// Edges of the link of an edge: for each tetrahedron containing `e`,
    /// the opposite edge. In a closed 3-manifold these form a cycle.
    pub fn edge_link(&self, e: &Edge) -> Vec<Edge> {
        self.tetrahedra
            .iter()
            .filter(|t| t.contains(&e[0]) && t.contains(&e[1]))
            .map(|t| {
                let mut it = t.iter().copied().filter(|x| !e.contains(x));
                std::array::from_fn(|_| it.next().unwrap())
            })
            .collect()
    }

    /// Sorted neighbor lists in the 1-skeleton.
    pub fn adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e[0]).or_default().push(e[1]);
            adj.entry(e[1]).or_default().push(e[0]);
        }
        for nb in adj.values_mut() {
            nb.sort_unstable();
        }
        adj
    }

    /// Map triangle → indices of tetrahedra containing it.
    pub fn triangle_incidence(&self) -> BTreeMap<Triangle, Vec<usize>> {
        let mut inc: BTreeMap<Triangle, Vec<usize>> = BTreeMap::new();
        for (i, t) in self.tetrahedra.iter().enumerate() {
            for skip in 0..4 {
                let tri: Triangle = {
                    let mut it = (0..4).filter(|&k| k != skip);
                    std::array::from_fn(|_| t[it.next().unwrap()])
                };
                inc.entry(tri).or_default().push(i);
            }
        }
        inc
    }
}

/// Exact face counts by dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FVector {
    pub f0: usize,
    pub f1: usize,
    pub f2: usize,
    pub f3: usize,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.f0 as i64 - self.f1 as i64 + self.f2 as i64 - self.f3 as i64
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.f0, self.f1, self.f2, self.f3)
    }
}

/// A located defect found during validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Defect {
    #[error("triangle {triangle:?} lies in {count} tetrahedra, expected 2")]
    TriangleCount { triangle: Triangle, count: usize },
    #[error("complex is disconnected: tetrahedra {0:?} and {1:?} lie in different components")]
    Disconnected(Tet, Tet),
    #[error("link of vertex {vertex} is not closed: link edge {edge:?} lies in {count} link triangles")]
    LinkNotClosed { vertex: Vertex, edge: Edge, count: usize },
    #[error("link of vertex {vertex} is disconnected")]
    LinkDisconnected { vertex: Vertex },
    #[error("link of vertex {vertex} has Euler characteristic {chi}, expected 2")]
    LinkWrongEuler { vertex: Vertex, chi: i64 },
    #[error("Euler characteristic is {0}, expected 0")]
    NonzeroEuler(i64),
}

/// Result of [`validate`]: flags, exact counts and located defects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_closed_pseudomanifold: bool,
    pub is_connected: bool,
    pub vertex_links_are_2spheres: bool,
    pub euler_characteristic: i64,
    pub f_vector: FVector,
    pub failures: Vec<Defect>,
}

impl ValidationReport {
    /// All flags hold and χ = 0: the complex is a closed connected
    /// 3-manifold (S³ assumed, not recognized).
    pub fn is_valid(&self) -> bool {
        self.is_closed_pseudomanifold
            && self.is_connected
            && self.vertex_links_are_2spheres
            && self.euler_characteristic == 0
    }
}

fn connected_components<K: Ord + Copy>(nodes: &[K], adjacency: &BTreeMap<K, Vec<K>>) -> usize {
    let mut seen: BTreeSet<K> = BTreeSet::new();
    let mut components = 0;
    for &start in nodes {
        if seen.contains(&start) {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(x) = stack.pop() {
            if let Some(nbs) = adjacency.get(&x) {
                for &y in nbs {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
    }
    components
}

fn check_vertex_link(t: &Triangulation, v: Vertex, failures: &mut Vec<Defect>) -> bool {
    let tris = t.vertex_link(v);
    let mut edge_count: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut verts: BTreeSet<Vertex> = BTreeSet::new();
    for tri in &tris {
        for i in 0..3 {
            for j in (i + 1)..3 {
                *edge_count.entry([tri[i], tri[j]]).or_insert(0) += 1;
            }
            verts.insert(tri[i]);
        }
    }
    let mut ok = true;
    for (e, c) in &edge_count {
        if *c != 2 {
            failures.push(Defect::LinkNotClosed { vertex: v, edge: *e, count: *c });
            ok = false;
        }
    }
    // Connectivity of the link surface via shared edges.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, tri) in tris.iter().enumerate() {
        for a in 0..3 {
            for b in (a + 1)..3 {
                by_edge.entry([tri[a], tri[b]]).or_default().push(i);
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
    let ids: Vec<usize> = (0..tris.len()).collect();
    if connected_components(&ids, &adj) != 1 {
        failures.push(Defect::LinkDisconnected { vertex: v });
        ok = false;
    }
    let chi = verts.len() as i64 - edge_count.len() as i64 + tris.len() as i64;
    if chi != 2 {
        failures.push(Defect::LinkWrongEuler { vertex: v, chi });
        ok = false;
    }
    ok
}

/// Checks the combinatorial conditions for a triangulation of a closed
/// 3-manifold. Pure: repeated calls agree.
pub fn validate(t: &Triangulation) -> ValidationReport {
    let mut failures = Vec::new();
    let f_vector = t.f_vector();

    let inc = t.triangle_incidence();
    let mut is_closed = true;
    for (tri, tets) in &inc {
        if tets.len() != 2 {
            failures.push(Defect::TriangleCount { triangle: *tri, count: tets.len() });
            is_closed = false;
        }
    }

    // Connectivity via tetrahedron adjacency across shared triangles.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ids in inc.values() {
        for &x in ids {
            for &y in ids {
                if x != y {
                    adj.entry(x).or_default().push(y);
                }
            }
        }
    }
    let ids: Vec<usize> = (0..t.n()).collect();
    let n_components = connected_components(&ids, &adj);
    let is_connected = n_components == 1;
    if !is_connected {
        // Name one representative pair from distinct components.
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
        if let Some(&other) = ids.iter().find(|i| !seen.contains(i)) {
            failures.push(Defect::Disconnected(t.tetrahedra()[0], t.tetrahedra()[other]));
        }
    }

    let mut links_ok = true;
    for &v in t.vertices() {
        if !check_vertex_link(t, v, &mut failures) {
            links_ok = false;
        }
    }

    let chi = f_vector.euler_characteristic();
    if chi != 0 {
        failures.push(Defect::NonzeroEuler(chi));
    }

    ValidationReport {
        is_closed_pseudomanifold: is_closed,
        is_connected,
        vertex_links_are_2spheres: links_ok,
        euler_characteristic: chi,
        f_vector,
        failures,
    }
}

/// The 1-skeleton of the dual cellular decomposition: one node per
/// tetrahedron, one arc per triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<Tet>,
    /// (node index, node index, shared triangle), node indices ascending.
    pub arcs: Vec<(usize, usize, Triangle)>,
}

impl DualGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.nodes.len()];
        for (a, b, _) in &self.arcs {
            d[*a] += 1;
            d[*b] += 1;
        }
        d
    }

    pub fn is_four_regular(&self) -> bool {
        self.degrees().iter().all(|&d| d == 4)
    }
}

/// Builds the dual graph. Errors on the first triangle not shared by
/// exactly two tetrahedra.
pub fn dual_graph(t: &Triangulation) -> Result<DualGraph, ComplexError> {
    let inc = t.triangle_incidence();
    let mut arcs = Vec::with_capacity(inc.len());
    for (tri, ids) in &inc {
        if ids.len() != 2 {
            return Err(ComplexError::UnpairedTriangle { triangle: *tri, count: ids.len() });
        }
        let (a, b) = (ids[0].min(ids[1]), ids[0].max(ids[1]));
        arcs.push((a, b, *tri));
    }
    Ok(DualGraph { nodes: t.tetrahedra().to_vec(), arcs })
}
