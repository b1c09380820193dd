//! Reference triangulations with known polytopality status and, where
//! applicable, exact 4D polytope coordinates.
//!
//! Every generator output passes validation. Generators that emit a
//! coordinate witness (`coords4`) certify polytopality constructively: the
//! points are in convex position and each tetrahedron spans a facet of their
//! convex hull, which [`crate::realize::verify_polytopal_witness`] checks
//! exactly.

use crate::complex::Triangulation;
use crate::moves::{self, MoveError};
use crate::realize::{admissible_beyond, beyond_point, verify_polytopal_witness, CoordMap4};
use crate::rng::Lcg64;
use crate::scalar::{Int, Rat, Scalar};
use crate::{Edge, Tet, Triangle, Vertex};
use itertools::Itertools;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("cyclic polytope needs m ≥ 5, got {0}")]
    TooFewVertices(usize),
    #[error("no admissible beyond point found for facet {0:?}")]
    NoBeyondPoint(Tet),
    #[error("no applicable flip at step {0}")]
    NoFlip(u32),
    #[error("complex carries no coordinate witness")]
    NoWitness,
    #[error("move failed during generation: {0}")]
    Move(#[from] MoveError),
}

/// Where a generated complex came from; determines the label conventions
/// documented per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Simplex,
    Cyclic { m: usize },
    JoinOfTriangles,
    Stacked { steps: u32, seed: u64 },
    PachnerWalk { seed: u64, steps: u32 },
}

/// A triangulation plus (when the generator certifies polytopality) an exact
/// coordinate witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedComplex {
    pub triangulation: Triangulation,
    pub coords4: Option<CoordMap4<Rat>>,
    pub provenance: Provenance,
}

fn rat(n: i64) -> Rat {
    Rat::from_int(n)
}

/// Boundary of the 4-simplex: vertices 1..5, all five 4-subsets as
/// tetrahedra. Vertex 1 sits at the origin, vertices 2..5 at the unit
/// points e1..e4.
pub fn simplex_boundary() -> GeneratedComplex {
    let tets: Vec<[Vertex; 4]> = (1..=5)
        .combinations(4)
        .map(|c| [c[0], c[1], c[2], c[3]])
        .collect();
    let mut coords: CoordMap4<Rat> = BTreeMap::new();
    coords.insert(1, [rat(0), rat(0), rat(0), rat(0)]);
    for i in 1..=4i64 {
        coords.insert(1 + i, std::array::from_fn(|k| rat((k as i64 + 1 == i) as i64)));
    }
    GeneratedComplex {
        triangulation: Triangulation::from_tetrahedra(tets).expect("simplex boundary"),
        coords4: Some(coords),
        provenance: Provenance::Simplex,
    }
}

/// Gale evenness for the cyclic 4-polytope on the ordered ground set 1..m:
/// a 4-subset is a facet iff any two elements outside it are separated by an
/// even number of its elements.
pub fn gale_even(subset: &Tet, m: usize) -> bool {
    let outside: Vec<Vertex> = (1..=m as Vertex).filter(|v| !subset.contains(v)).collect();
    for (i, &x) in outside.iter().enumerate() {
        for &y in &outside[i + 1..] {
            let between = subset.iter().filter(|&&s| x < s && s < y).count();
            if between % 2 != 0 {
                return false;
            }
        }
    }
    true
}

/// Boundary of the cyclic polytope C(4, m) with moment-curve coordinates
/// (i, i², i³, i⁴) at vertex i; facets by Gale evenness.
pub fn cyclic_polytope_boundary(m: usize) -> Result<GeneratedComplex, GenError> {
    if m < 5 {
        return Err(GenError::TooFewVertices(m));
    }
    let tets: Vec<Tet> = (1..=m as Vertex)
        .combinations(4)
        .map(|c| [c[0], c[1], c[2], c[3]])
        .filter(|t| gale_even(t, m))
        .collect();
    let mut coords: CoordMap4<Rat> = BTreeMap::new();
    for i in 1..=m as i64 {
        coords.insert(i, [rat(i), rat(i * i), rat(i * i * i), rat(i * i * i * i)]);
    }
    Ok(GeneratedComplex {
        triangulation: Triangulation::from_tetrahedra(tets).expect("cyclic boundary"),
        coords4: Some(coords),
        provenance: Provenance::Cyclic { m },
    })
}

/// Join of two triangle boundaries: vertices 1,2,3 (triangle A) and 4,5,6
/// (triangle B); one tetrahedron per pair of an A-edge and a B-edge (nine in
/// total). Coordinates realize the free sum of two triangles, each holding
/// the origin in its relative interior, so the cycles (1,2,3) and (4,5,6)
/// form a Hopf link in the 1-skeleton.
pub fn join_of_triangles() -> GeneratedComplex {
    let a_edges: [Edge; 3] = [[1, 2], [1, 3], [2, 3]];
    let b_edges: [Edge; 3] = [[4, 5], [4, 6], [5, 6]];
    let mut tets = Vec::with_capacity(9);
    for ae in a_edges {
        for be in b_edges {
            tets.push([ae[0], ae[1], be[0], be[1]]);
        }
    }
    let mut coords: CoordMap4<Rat> = BTreeMap::new();
    coords.insert(1, [rat(2), rat(0), rat(0), rat(0)]);
    coords.insert(2, [rat(-1), rat(1), rat(0), rat(0)]);
    coords.insert(3, [rat(-1), rat(-1), rat(0), rat(0)]);
    coords.insert(4, [rat(0), rat(0), rat(2), rat(0)]);
    coords.insert(5, [rat(0), rat(0), rat(-1), rat(1)]);
    coords.insert(6, [rat(0), rat(0), rat(-1), rat(-1)]);
    GeneratedComplex {
        triangulation: Triangulation::from_tetrahedra(tets).expect("join of triangles"),
        coords4: Some(coords),
        provenance: Provenance::JoinOfTriangles,
    }
}

/// Floors each coordinate to denominator 10^d.
fn floor_to_denominator(x: &[Rat; 4], d: u32) -> [Rat; 4] {
    let scale = Int::from(10).pow(d);
    std::array::from_fn(|i| {
        let scaled = x[i].clone() * Rat::from_integer(scale.clone());
        Rat::new(scaled.floor().to_integer(), scale.clone())
    })
}

/// Beyond point for the next stacking step, simplified to a small
/// denominator: starts from the exact centroid-plus-half-supremum point and
/// accepts the coarsest coordinate-wise rounding that stays strictly beyond
/// the facet and strictly beneath every other facet. Exactness is preserved
/// because every candidate is re-verified with exact predicates.
fn simplified_beyond_point(
    coords: &CoordMap4<Rat>,
    facets: &[Tet],
    facet: &Tet,
) -> Result<[Rat; 4], GenError> {
    let exact = beyond_point(coords, facets, facet).map_err(|_| GenError::NoBeyondPoint(*facet))?;
    for d in 0..=16u32 {
        let candidate = floor_to_denominator(&exact, d);
        if admissible_beyond(coords, facets, facet, &candidate).unwrap_or(false) {
            return Ok(candidate);
        }
    }
    Ok(exact)
}

/// Iterated stellar subdivision of seeded-randomly chosen tetrahedra,
/// starting from the 4-simplex boundary; n = 5 + 3·steps. Each new vertex is
/// placed beyond the subdivided facet, so the output stays certified
/// polytopal (convex position is re-verified exactly after every step).
pub fn stacked_sphere(steps: u32, seed: u64) -> Result<GeneratedComplex, GenError> {
    let base = simplex_boundary();
    let mut t = base.triangulation;
    let mut coords = base.coords4.expect("simplex witness");
    let mut rng = Lcg64::new(seed);
    for _ in 0..steps {
        let facets = t.tetrahedra().to_vec();
        let facet = facets[rng.index(facets.len())];
        let mut x = simplified_beyond_point(&coords, &facets, &facet)?;
        let (next, rec) = moves::stellar_subdivide(&t, &facet)?;
        let new_vertex = match rec {
            moves::MoveRecord::Stellar { new_vertex, .. } => new_vertex,
            _ => unreachable!(),
        };
        let mut next_coords = coords.clone();
        next_coords.insert(new_vertex, x.clone());
        // The rounded point must keep the whole new complex a certified hull
        // boundary (in particular no old vertex may become coplanar with a
        // new facet). Fall back to the exact point if rounding trips that.
        if verify_polytopal_witness(&next, &next_coords).is_err() {
            x = beyond_point(&coords, &facets, &facet).map_err(|_| GenError::NoBeyondPoint(facet))?;
            next_coords.insert(new_vertex, x.clone());
            verify_polytopal_witness(&next, &next_coords)
                .map_err(|_| GenError::NoBeyondPoint(facet))?;
        }
        t = next;
        coords = next_coords;
    }
    Ok(GeneratedComplex {
        triangulation: t,
        coords4: Some(coords),
        provenance: Provenance::Stacked { steps, seed },
    })
}

/// A bistellar flip location, in the canonical candidate order used by
/// [`pachner_walk`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flip {
    OneFour(Tet),
    TwoThree(Triangle),
    ThreeTwo(Edge),
    FourOne(Vertex),
}

/// All flips applicable to `t`, in canonical order: 1-4 over tetrahedra,
/// 2-3 over triangles, 3-2 over edges, 4-1 over vertices, each sorted.
pub fn applicable_flips(t: &Triangulation) -> Vec<Flip> {
    let mut flips: Vec<Flip> = t.tetrahedra().iter().map(|x| Flip::OneFour(*x)).collect();

    let inc = t.triangle_incidence();
    for (tri, ids) in &inc {
        if ids.len() != 2 {
            continue;
        }
        let apex = |i: usize| -> Vertex {
            *t.tetrahedra()[i].iter().find(|v| !tri.contains(v)).unwrap()
        };
        let (a, b) = (apex(ids[0]), apex(ids[1]));
        if !t.contains_edge(&[a.min(b), a.max(b)]) {
            flips.push(Flip::TwoThree(*tri));
        }
    }

    let mut edge_star: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    let mut vertex_star: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, tet) in t.tetrahedra().iter().enumerate() {
        for a in 0..4 {
            vertex_star.entry(tet[a]).or_default().push(i);
            for b in (a + 1)..4 {
                edge_star.entry([tet[a], tet[b]]).or_default().push(i);
            }
        }
    }
    for (e, ids) in &edge_star {
        if ids.len() != 3 {
            continue;
        }
        let ring: std::collections::BTreeSet<Vertex> = ids
            .iter()
            .flat_map(|&i| t.tetrahedra()[i].iter().copied())
            .filter(|v| !e.contains(v))
            .collect();
        if ring.len() == 3 {
            let tri: Triangle = {
                let mut it = ring.into_iter();
                std::array::from_fn(|_| it.next().unwrap())
            };
            if !t.contains_triangle(&tri) {
                flips.push(Flip::ThreeTwo(*e));
            }
        }
    }
    for (&v, ids) in &vertex_star {
        if ids.len() != 4 {
            continue;
        }
        let around: std::collections::BTreeSet<Vertex> = ids
            .iter()
            .flat_map(|&i| t.tetrahedra()[i].iter().copied())
            .filter(|&x| x != v)
            .collect();
        if around.len() == 4 {
            let tet: Tet = {
                let mut it = around.into_iter();
                std::array::from_fn(|_| it.next().unwrap())
            };
            if !t.contains_tet(&tet) {
                flips.push(Flip::FourOne(v));
            }
        }
    }
    flips
}

pub fn apply_flip(t: &Triangulation, flip: &Flip) -> Result<Triangulation, MoveError> {
    let out = match flip {
        Flip::OneFour(tet) => moves::pachner_14(t, tet)?,
        Flip::TwoThree(tri) => moves::pachner_23(t, tri)?,
        Flip::ThreeTwo(e) => moves::pachner_32(t, e)?,
        Flip::FourOne(v) => moves::pachner_41(t, *v)?,
    };
    Ok(out.0)
}

/// Applies `steps` seeded-uniform applicable bistellar flips. The output
/// carries no coordinate witness: its polytopality is unknown.
pub fn pachner_walk(start: &Triangulation, steps: u32, seed: u64) -> Result<Triangulation, GenError> {
    let mut t = start.clone();
    let mut rng = Lcg64::new(seed);
    for step in 0..steps {
        let flips = applicable_flips(&t);
        if flips.is_empty() {
            return Err(GenError::NoFlip(step));
        }
        let flip = &flips[rng.index(flips.len())];
        t = apply_flip(&t, flip)?;
    }
    Ok(t)
}
