//! Straight-line realization of polytope boundaries in R³ and exact
//! embedding verification.
//!
//! Given a triangulation whose tetrahedra span the facets of a convex
//! 4-polytope (witnessed by exact rational coordinates), [`schlegel`]
//! centrally projects the boundary minus one facet onto that facet's
//! supporting hyperplane from a point beyond it, producing a straight-line
//! simplicial complex in R³. [`verify_embedding`] then certifies, in exact
//! arithmetic, that the image is an embedding: every retained tetrahedron is
//! non-degenerate and every pair of retained tetrahedra intersects exactly in
//! the image of its shared face.
//!
//! No floating point appears anywhere in this module. The pairwise
//! intersection test is a feasibility/optimization question over rationals
//! (see [`tet_pair_proper`]); barycentric coordinates inside a tetrahedron
//! are unique, so a pair intersects properly iff no point of the common
//! region carries weight outside the shared vertices.

use crate::complex::Triangulation;
use crate::geom::{
    add4, centroid4, dot4, lp, orient3d, scale4, solve_linear, sub4, Hyperplane4, V3, V4,
};
use crate::scalar::Scalar;
use crate::{Tet, Vertex};
use std::collections::BTreeMap;
use thiserror::Error;

pub type CoordMap4<S> = BTreeMap<Vertex, V4<S>>;
pub type CoordMap3<S> = BTreeMap<Vertex, V3<S>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("no coordinates for vertex {0}")]
    MissingCoordinates(Vertex),
    #[error("facet {0:?} is not a tetrahedron of the triangulation")]
    UnknownFacet(Tet),
    #[error("facet {0:?} spans a degenerate (affinely dependent) point set")]
    DegenerateFacet(Tet),
    #[error("vertex {point} lies on the supporting hyperplane of facet {facet:?}")]
    PointOnFacetHyperplane { facet: Tet, point: Vertex },
    #[error(
        "facet {facet:?} is not a hull facet: vertices {beneath} and {beyond} lie on opposite sides \
         (points not in convex position, or a wrong facet list)"
    )]
    NotAHullFacet { facet: Tet, beneath: Vertex, beyond: Vertex },
}

/// Supporting hyperplane of a claimed hull facet, oriented outward: every
/// vertex not on the facet evaluates strictly negative (beneath).
///
/// Succeeding for every tetrahedron of a closed triangulation certifies that
/// the points are in convex position with the triangulation as their
/// (simplicial) hull boundary.
pub fn outward_facet_hyperplane<S: Scalar>(
    coords: &CoordMap4<S>,
    facet: &Tet,
) -> Result<Hyperplane4<S>, RealizeError> {
    let pts: [V4<S>; 4] = facet_points(coords, facet)?;
    let h = Hyperplane4::through(&pts).ok_or(RealizeError::DegenerateFacet(*facet))?;
    let mut oriented: Option<(Hyperplane4<S>, Vertex)> = None;
    for (&v, p) in coords.iter() {
        if facet.contains(&v) {
            continue;
        }
        let side = h.side(p);
        match side {
            0 => return Err(RealizeError::PointOnFacetHyperplane { facet: *facet, point: v }),
            _ => match &oriented {
                None => {
                    let flipped = if side > 0 { h.clone().flip() } else { h.clone() };
                    oriented = Some((flipped, v));
                }
                Some((oh, first)) => {
                    if oh.side(p) > 0 {
                        return Err(RealizeError::NotAHullFacet {
                            facet: *facet,
                            beneath: *first,
                            beyond: v,
                        });
                    }
                }
            },
        }
    }
    // A facet list always has ≥ 5 points in play, so orientation is fixed.
    Ok(oriented.expect("at least one point off the facet").0)
}

fn facet_points<S: Scalar>(
    coords: &CoordMap4<S>,
    facet: &Tet,
) -> Result<[V4<S>; 4], RealizeError> {
    let mut pts = Vec::with_capacity(4);
    for &v in facet {
        pts.push(
            coords
                .get(&v)
                .cloned()
                .ok_or(RealizeError::MissingCoordinates(v))?,
        );
    }
    Ok(pts.try_into().unwrap())
}

/// Verifies the polytopal witness: every tetrahedron of `t` spans a hull
/// facet of the coordinate points, all other points strictly beneath.
/// Returns the outward hyperplanes in tetrahedron order.
pub fn verify_polytopal_witness<S: Scalar>(
    t: &Triangulation,
    coords: &CoordMap4<S>,
) -> Result<Vec<Hyperplane4<S>>, RealizeError> {
    for &v in t.vertices() {
        if !coords.contains_key(&v) {
            return Err(RealizeError::MissingCoordinates(v));
        }
    }
    t.tetrahedra()
        .iter()
        .map(|f| outward_facet_hyperplane(coords, f))
        .collect()
}

/// A point strictly beyond `facet`'s hyperplane and strictly beneath every
/// other claimed facet's hyperplane: the viewpoint of the Schlegel
/// construction.
///
/// The point is the facet centroid displaced along the outward normal by
/// λ = half the supremum admissible value from the linear constraints
/// (λ = 1 when no other facet constrains the ray).
pub fn beyond_point<S: Scalar>(
    coords: &CoordMap4<S>,
    facets: &[Tet],
    facet: &Tet,
) -> Result<V4<S>, RealizeError> {
    if !facets.contains(facet) {
        return Err(RealizeError::UnknownFacet(*facet));
    }
    let h_facet = outward_facet_hyperplane(coords, facet)?;
    let pts = facet_points(coords, facet)?;
    let centroid = centroid4(&pts);
    let mut lambda_sup: Option<S> = None;
    for g in facets {
        if g == facet {
            continue;
        }
        let hg = outward_facet_hyperplane(coords, g)?;
        let slope = dot4(&hg.normal, &h_facet.normal);
        if slope.is_positive() {
            // centroid is strictly beneath g, so the bound is positive.
            let bound = -hg.eval(&centroid) / slope;
            debug_assert!(bound.is_positive());
            lambda_sup = match lambda_sup {
                None => Some(bound),
                Some(cur) => Some(cur.min(bound)),
            };
        }
    }
    let lambda = match lambda_sup {
        Some(sup) => sup / S::from_int(2),
        None => S::one(),
    };
    Ok(add4(&centroid, &scale4(&lambda, &h_facet.normal)))
}

/// True iff `x` is strictly beyond `facet` and strictly beneath every other
/// facet in the list. Exact; used to re-verify simplified beyond points.
pub fn admissible_beyond<S: Scalar>(
    coords: &CoordMap4<S>,
    facets: &[Tet],
    facet: &Tet,
    x: &V4<S>,
) -> Result<bool, RealizeError> {
    for g in facets {
        let hg = outward_facet_hyperplane(coords, g)?;
        let side = hg.side(x);
        if g == facet {
            if side <= 0 {
                return Ok(false);
            }
        } else if side >= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A straight-line realization of a triangulation (minus at most one
/// tetrahedron) in R³.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization3<S: Scalar> {
    pub host: Triangulation,
    pub coords: CoordMap3<S>,
    /// The tetrahedron removed by the Schlegel construction; absent for
    /// directly supplied embeddings.
    pub omitted_facet: Option<Tet>,
}

impl<S: Scalar> Realization3<S> {
    /// Wraps directly supplied 3D coordinates (no 4D witness). Downstream
    /// bound certificates then degrade from "polytopal" to "straight-line
    /// embedded".
    pub fn from_coords(host: Triangulation, coords: CoordMap3<S>) -> Result<Self, RealizeError> {
        for &v in host.vertices() {
            if !coords.contains_key(&v) {
                return Err(RealizeError::MissingCoordinates(v));
            }
        }
        Ok(Realization3 { host, coords, omitted_facet: None })
    }

    /// Tetrahedra that carry coordinates: all of the host's except the
    /// omitted facet.
    pub fn retained_tets(&self) -> Vec<Tet> {
        self.host
            .tetrahedra()
            .iter()
            .filter(|t| Some(**t) != self.omitted_facet)
            .copied()
            .collect()
    }

    pub fn point(&self, v: Vertex) -> &V3<S> {
        &self.coords[&v]
    }
}

/// Central projection of the polytope boundary minus `facet` onto `facet`'s
/// hyperplane, from the beyond point; output expressed in the affine frame of
/// the facet (minimum-label vertex at the origin, edges to the next three as
/// basis). Deterministic: same input bits, same output rationals.
pub fn schlegel<S: Scalar>(
    t: &Triangulation,
    coords: &CoordMap4<S>,
    facet: &Tet,
) -> Result<Realization3<S>, RealizeError> {
    if !t.contains_tet(facet) {
        return Err(RealizeError::UnknownFacet(*facet));
    }
    let viewpoint = beyond_point(coords, t.tetrahedra(), facet)?;
    let h = outward_facet_hyperplane(coords, facet)?;
    let frame = facet_points(coords, facet)?;
    let c_minus_nx = -h.eval(&viewpoint); // negative of the beyond excess

    let mut out: CoordMap3<S> = BTreeMap::new();
    for &v in t.vertices() {
        let p = coords
            .get(&v)
            .ok_or(RealizeError::MissingCoordinates(v))?;
        if let Some(i) = facet.iter().position(|&f| f == v) {
            // Facet vertices are the frame: origin and unit points.
            out.insert(v, std::array::from_fn(|k| S::from_int((k + 1 == i) as i64)));
            continue;
        }
        // Intersect the ray viewpoint → p with the facet hyperplane.
        let denom = dot4(&h.normal, &sub4(p, &viewpoint));
        debug_assert!(!denom.is_zero());
        let s = c_minus_nx.clone() / denom;
        let q = add4(&viewpoint, &scale4(&s, &sub4(p, &viewpoint)));
        // Barycentric coordinates of q with respect to the facet points.
        let mut rows: Vec<Vec<S>> = (0..4)
            .map(|d| (0..4).map(|j| frame[j][d].clone()).collect())
            .collect();
        rows.push(vec![S::one(), S::one(), S::one(), S::one()]);
        let mut rhs: Vec<S> = q.to_vec();
        rhs.push(S::one());
        let mu = solve_linear(&rows, &rhs).expect("facet points are affinely independent");
        out.insert(v, [mu[1].clone(), mu[2].clone(), mu[3].clone()]);
    }
    Ok(Realization3 { host: t.clone(), coords: out, omitted_facet: Some(*facet) })
}

/// Exact proper-intersection test for two non-degenerate geometric
/// tetrahedra: their convex hulls meet exactly in the convex hull of the
/// shared vertices (possibly empty).
///
/// Barycentric coordinates in a non-degenerate simplex are unique, so the
/// intersection exceeds the shared face iff some common point carries
/// positive weight on a non-shared vertex of the first simplex. That maximum
/// weight is a linear program over the common-point polytope.
pub fn tet_pair_proper<S: Scalar>(
    a_labels: &Tet,
    a_pts: &[V3<S>; 4],
    b_labels: &Tet,
    b_pts: &[V3<S>; 4],
) -> bool {
    let shared: Vec<Vertex> = a_labels
        .iter()
        .copied()
        .filter(|v| b_labels.contains(v))
        .collect();
    // Rows: 3 coordinate balances, then the two barycentric sums.
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(5);
    for d in 0..3 {
        let mut row = Vec::with_capacity(8);
        for i in 0..4 {
            row.push(a_pts[i][d].clone());
        }
        for j in 0..4 {
            row.push(-b_pts[j][d].clone());
        }
        rows.push(row);
    }
    let mut sum_a = vec![S::zero(); 8];
    for e in sum_a.iter_mut().take(4) {
        *e = S::one();
    }
    let mut sum_b = vec![S::zero(); 8];
    for e in sum_b.iter_mut().skip(4) {
        *e = S::one();
    }
    rows.push(sum_a);
    rows.push(sum_b);
    let b_rhs = vec![S::zero(), S::zero(), S::zero(), S::one(), S::one()];
    let mut cost = vec![S::zero(); 8];
    for (i, v) in a_labels.iter().enumerate() {
        if !shared.contains(v) {
            cost[i] = S::one();
        }
    }
    match lp::simplex_max(&rows, &b_rhs, &cost) {
        lp::LpResult::Infeasible => true,
        lp::LpResult::Optimal { value, .. } => value.is_zero(),
        lp::LpResult::Unbounded => unreachable!("objective bounded by barycentric sum"),
    }
}

/// Outcome of [`verify_embedding`]: failures are reported in-band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// Retained tetrahedra whose image is degenerate (zero orientation
    /// determinant).
    pub degenerate: Vec<Tet>,
    /// Pairs of retained tetrahedra whose images intersect beyond the image
    /// of their shared face.
    pub improper_pairs: Vec<(Tet, Tet)>,
    pub checked_tets: usize,
    pub checked_pairs: usize,
}

impl EmbeddingReport {
    pub fn pass(&self) -> bool {
        self.degenerate.is_empty() && self.improper_pairs.is_empty()
    }
}

/// Exact-arithmetic embedding verification: (a) every retained tetrahedron
/// non-degenerate; (b) every pair of retained tetrahedra intersects exactly
/// in the image of the shared face. Pair checking suffices for the whole
/// complex: the host is pure, so every lower face lies in some tetrahedron,
/// and faces of a geometric simplex intersect properly within it.
pub fn verify_embedding<S: Scalar>(r: &Realization3<S>) -> EmbeddingReport {
    let tets = r.retained_tets();
    let pts: Vec<[V3<S>; 4]> = tets
        .iter()
        .map(|t| std::array::from_fn(|i| r.coords[&t[i]].clone()))
        .collect();
    let mut degenerate = Vec::new();
    for (t, p) in tets.iter().zip(&pts) {
        if orient3d(&p[0], &p[1], &p[2], &p[3]) == 0 {
            degenerate.push(*t);
        }
    }
    let mut improper_pairs = Vec::new();
    let mut checked_pairs = 0;
    if degenerate.is_empty() {
        for i in 0..tets.len() {
            for j in (i + 1)..tets.len() {
                checked_pairs += 1;
                if !tet_pair_proper(&tets[i], &pts[i], &tets[j], &pts[j]) {
                    improper_pairs.push((tets[i], tets[j]));
                }
            }
        }
    }
    EmbeddingReport { degenerate, improper_pairs, checked_tets: tets.len(), checked_pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use itertools::Itertools;

    fn rat(n: i64) -> Rat {
        Rat::from_int(n)
    }

    /// Standard 4-simplex: origin and the four unit points, labels 1..5.
    fn simplex_coords() -> CoordMap4<Rat> {
        let mut m = BTreeMap::new();
        m.insert(1, [rat(0), rat(0), rat(0), rat(0)]);
        for i in 1..=4i64 {
            m.insert(1 + i, std::array::from_fn(|k| rat((k as i64 + 1 == i) as i64)));
        }
        m
    }

    fn simplex_boundary() -> Triangulation {
        let tets: Vec<[Vertex; 4]> = (1..=5)
            .combinations(4)
            .map(|c| [c[0], c[1], c[2], c[3]])
            .collect();
        Triangulation::from_tetrahedra(tets).unwrap()
    }

    #[test]
    fn beyond_point_over_the_far_facet() {
        // Facet {e1..e4} = labels {2,3,4,5}: beyond means coordinate sum > 1,
        // beneath the other facets means all coordinates positive.
        let t = simplex_boundary();
        let x = beyond_point(&simplex_coords(), t.tetrahedra(), &[2, 3, 4, 5]).unwrap();
        let sum: Rat = x.iter().cloned().fold(rat(0), |a, b| a + b);
        assert!(sum > rat(1));
        assert!(x.iter().all(|c| c > &rat(0)));
    }

    #[test]
    fn beyond_point_over_a_coordinate_facet() {
        // Facet {0,e1,e2,e3} = labels {1,2,3,4}: beyond means x4 < 0; the
        // other constraints stay satisfied.
        let t = simplex_boundary();
        let coords = simplex_coords();
        let x = beyond_point(&coords, t.tetrahedra(), &[1, 2, 3, 4]).unwrap();
        assert!(x[3] < rat(0));
        assert!(admissible_beyond(&coords, t.tetrahedra(), &[1, 2, 3, 4], &x).unwrap());
    }

    #[test]
    fn beyond_point_rejects_non_facets() {
        let t = simplex_boundary();
        let err = beyond_point(&simplex_coords(), t.tetrahedra(), &[1, 2, 3, 9]).unwrap_err();
        assert_eq!(err, RealizeError::UnknownFacet([1, 2, 3, 9]));
    }

    #[test]
    fn convex_position_violations_are_named() {
        // Points on both sides of a claimed facet: not a hull facet.
        let mut coords = simplex_coords();
        coords.insert(6, [rat(0), rat(0), rat(0), rat(-1)]);
        let e = outward_facet_hyperplane(&coords, &[1, 2, 3, 4]);
        assert!(matches!(e, Err(RealizeError::NotAHullFacet { .. })), "{e:?}");

        // A point on the supporting hyperplane: non-simplicial contact.
        let mut coords = simplex_coords();
        coords.insert(6, [rat(5), rat(0), rat(0), rat(0)]);
        let e = outward_facet_hyperplane(&coords, &[1, 2, 3, 4]);
        assert_eq!(
            e,
            Err(RealizeError::PointOnFacetHyperplane { facet: [1, 2, 3, 4], point: 6 })
        );

        // Affinely dependent facet points.
        let mut coords = simplex_coords();
        coords.insert(3, [rat(2), rat(0), rat(0), rat(0)]); // on the 1–2 line
        let e = outward_facet_hyperplane(&coords, &[1, 2, 3, 4]);
        assert_eq!(e, Err(RealizeError::DegenerateFacet([1, 2, 3, 4])));
    }

    #[test]
    fn schlegel_sends_fifth_vertex_to_barycenter() {
        let t = simplex_boundary();
        let r = schlegel(&t, &simplex_coords(), &[2, 3, 4, 5]).unwrap();
        let quarter = Rat::new(1.into(), 4.into());
        assert_eq!(r.point(1), &[quarter.clone(), quarter.clone(), quarter]);
        assert_eq!(r.point(2), &[rat(0), rat(0), rat(0)]);
        assert_eq!(r.point(3), &[rat(1), rat(0), rat(0)]);
        assert_eq!(r.omitted_facet, Some([2, 3, 4, 5]));
        assert!(verify_embedding(&r).pass());
    }

    #[test]
    fn schlegel_embeds_for_every_facet_choice() {
        let t = simplex_boundary();
        let coords = simplex_coords();
        for facet in t.tetrahedra() {
            let r = schlegel(&t, &coords, facet).unwrap();
            let rep = verify_embedding(&r);
            assert!(rep.pass(), "facet {facet:?}: {rep:?}");
            assert_eq!(rep.checked_tets, 4);
        }
    }

    #[test]
    fn degenerate_tetrahedron_fails_part_a() {
        let host = Triangulation::from_tetrahedra(vec![[1, 2, 3, 4]]).unwrap();
        let mut coords: CoordMap3<Rat> = BTreeMap::new();
        coords.insert(1, [rat(0), rat(0), rat(0)]);
        coords.insert(2, [rat(1), rat(0), rat(0)]);
        coords.insert(3, [rat(0), rat(1), rat(0)]);
        coords.insert(4, [rat(1), rat(1), rat(0)]); // coplanar
        let r = Realization3::from_coords(host, coords).unwrap();
        let rep = verify_embedding(&r);
        assert_eq!(rep.degenerate, vec![[1, 2, 3, 4]]);
        assert!(!rep.pass());
    }

    #[test]
    fn overlapping_disjoint_tets_fail_part_b() {
        let host = Triangulation::from_tetrahedra(vec![[1, 2, 3, 4], [5, 6, 7, 8]]).unwrap();
        let unit: [[Rat; 3]; 4] = [
            [rat(0), rat(0), rat(0)],
            [rat(1), rat(0), rat(0)],
            [rat(0), rat(1), rat(0)],
            [rat(0), rat(0), rat(1)],
        ];
        let mut coords: CoordMap3<Rat> = BTreeMap::new();
        for (i, p) in unit.iter().enumerate() {
            coords.insert(1 + i as Vertex, p.clone());
        }
        for (i, p) in unit.iter().enumerate() {
            // Shifted by 1/10 along x: overlaps the first tetrahedron.
            let mut q = p.clone();
            q[0] = q[0].clone() + Rat::new(1.into(), 10.into());
            coords.insert(5 + i as Vertex, q);
        }
        let r = Realization3::from_coords(host, coords).unwrap();
        let rep = verify_embedding(&r);
        assert_eq!(rep.improper_pairs, vec![([1, 2, 3, 4], [5, 6, 7, 8])]);
    }

    #[test]
    fn separated_tets_pass() {
        let host = Triangulation::from_tetrahedra(vec![[1, 2, 3, 4], [5, 6, 7, 8]]).unwrap();
        let unit: [[Rat; 3]; 4] = [
            [rat(0), rat(0), rat(0)],
            [rat(1), rat(0), rat(0)],
            [rat(0), rat(1), rat(0)],
            [rat(0), rat(0), rat(1)],
        ];
        let mut coords: CoordMap3<Rat> = BTreeMap::new();
        for (i, p) in unit.iter().enumerate() {
            coords.insert(1 + i as Vertex, p.clone());
            let mut q = p.clone();
            q[0] = q[0].clone() + rat(10);
            coords.insert(5 + i as Vertex, q);
        }
        let r = Realization3::from_coords(host, coords).unwrap();
        assert!(verify_embedding(&r).pass());
    }

    #[test]
    fn shared_face_contact_is_proper() {
        // Two tets glued along a triangle, one on each side of the plane.
        let host = Triangulation::from_tetrahedra(vec![[1, 2, 3, 4], [1, 2, 3, 5]]).unwrap();
        let mut coords: CoordMap3<Rat> = BTreeMap::new();
        coords.insert(1, [rat(0), rat(0), rat(0)]);
        coords.insert(2, [rat(1), rat(0), rat(0)]);
        coords.insert(3, [rat(0), rat(1), rat(0)]);
        coords.insert(4, [rat(0), rat(0), rat(1)]);
        coords.insert(5, [rat(0), rat(0), rat(-1)]);
        let r = Realization3::from_coords(host, coords).unwrap();
        assert!(verify_embedding(&r).pass());
    }

    #[test]
    fn folded_pair_across_shared_face_is_improper() {
        // Same tets but the far vertices on the same side: images overlap.
        let host = Triangulation::from_tetrahedra(vec![[1, 2, 3, 4], [1, 2, 3, 5]]).unwrap();
        let mut coords: CoordMap3<Rat> = BTreeMap::new();
        coords.insert(1, [rat(0), rat(0), rat(0)]);
        coords.insert(2, [rat(1), rat(0), rat(0)]);
        coords.insert(3, [rat(0), rat(1), rat(0)]);
        coords.insert(4, [rat(0), rat(0), rat(1)]);
        coords.insert(5, [Rat::new(1.into(), 8.into()), Rat::new(1.into(), 8.into()), rat(1)]);
        let r = Realization3::from_coords(host, coords).unwrap();
        let rep = verify_embedding(&r);
        assert!(!rep.pass());
    }
}
