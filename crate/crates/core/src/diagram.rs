//! Link diagrams by generic orthogonal projection of a straight-line
//! realized link.
//!
//! Projection directions are drawn from the rational moment curve
//! (1, t, t²), t = 1, 2, 3, …, and the first direction passing every exact
//! genericity predicate wins. The curve meets any fixed degeneracy
//! hyperplane in at most two points, so rejections are provably sparse and
//! the search is deterministic.
//!
//! Crossing sign convention (the construction fixes one explicitly): a
//! crossing is +1 when the over-strand direction, rotated +90° in the
//! projection plane, aligns with the under-strand direction. The projection
//! frame is u = (-d₁, d₀, 0), v = d × u, so the plane orientation is
//! consistent across directions and off-diagonal linking numbers are
//! direction-independent.

use crate::geom::{add3, cross2, cross3, dot3, scale3, sub2, sub3, V2, V3};
use crate::linkset::{check_link, EdgeLink};
use crate::realize::Realization3;
use crate::scalar::{sign, Scalar};
use crate::Vertex;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("link is not valid in the realization's host: {0}")]
    BadLink(#[from] crate::linkset::LinkError),
    #[error("no coordinates for vertex {0}")]
    MissingCoordinates(Vertex),
    #[error("direction candidate cap ({tried}) exhausted; last failure: {last}")]
    CandidateCapExceeded { tried: u32, last: String },
    #[error("direction fails genericity: {0}")]
    NotGeneric(String),
}

/// Safety cap on moment-curve candidates; degenerate directions form a
/// measure-zero set, so the cap exists only to guarantee termination with
/// diagnostics.
const CANDIDATE_CAP: u32 = 10_000;

/// One crossing of the diagram: a transversal interior intersection of two
/// non-adjacent segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing<S: Scalar> {
    /// Global 1-based segment ids, ascending.
    pub segments: [usize; 2],
    /// Which of `segments` passes over.
    pub over: usize,
    pub point: V2<S>,
    pub sign: i8,
    /// Component index of segments[0] and segments[1].
    pub components: [usize; 2],
}

/// One passage of a strand through a crossing, located on a segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Passage<S: Scalar> {
    /// Global 1-based segment id.
    pub segment: usize,
    /// Parameter along the segment, strictly inside (0, 1).
    pub s: S,
    /// 1-based crossing id.
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussEntry {
    pub over: bool,
    pub crossing: usize,
    pub sign: i8,
}

/// Planar projection data of a realized link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram<S: Scalar> {
    /// Canonical vertex cycles, one per component.
    pub components: Vec<Vec<Vertex>>,
    /// Projected vertex images per component, parallel to `components`.
    pub strands: Vec<Vec<V2<S>>>,
    pub crossings: Vec<Crossing<S>>,
    /// All passages sorted by (segment, parameter).
    pub passages: Vec<Passage<S>>,
    /// PD code: X[a,b,c,d] rows, lexicographically sorted.
    pub pd_code: Vec<[usize; 4]>,
    /// Per-component Gauss code.
    pub gauss_code: Vec<Vec<GaussEntry>>,
    pub direction: V3<S>,
    pub segment_count: usize,
    /// Component index of each segment, by global id - 1.
    pub segment_component: Vec<usize>,
}

impl<S: Scalar> Diagram<S> {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

/// Symmetric integer matrix indexed by components: off-diagonal entries are
/// linking numbers (direction-independent isotopy invariants), the diagonal
/// holds per-component writhes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    pub entries: Vec<Vec<i64>>,
}

struct Seg<S: Scalar> {
    comp: usize,
    from: Vertex,
    to: Vertex,
    p3: V3<S>,
    q3: V3<S>,
    p2: V2<S>,
    q2: V2<S>,
}

impl<S: Scalar> Seg<S> {
    fn adjacent(&self, other: &Seg<S>) -> bool {
        self.from == other.from
            || self.from == other.to
            || self.to == other.from
            || self.to == other.to
    }

    fn dir2(&self) -> V2<S> {
        sub2(&self.q2, &self.p2)
    }
}

fn project_point<S: Scalar>(u: &V3<S>, v: &V3<S>, p: &V3<S>) -> V2<S> {
    [dot3(u, p), dot3(v, p)]
}

/// Plane frame orthogonal to d: u = (-d₁, d₀, 0), v = d × u. Fixed formula,
/// right-handed with respect to d.
fn frame<S: Scalar>(d: &V3<S>) -> (V3<S>, V3<S>) {
    let u = [-d[1].clone(), d[0].clone(), S::zero()];
    let v = cross3(d, &u);
    (u, v)
}

struct Analysis<S: Scalar> {
    segs: Vec<Seg<S>>,
    /// (seg index a, seg index b, point, s_a, s_b, over_is_a, sign)
    crossings: Vec<(usize, usize, V2<S>, S, S, bool, i8)>,
}

enum PairKind<S: Scalar> {
    Disjoint,
    Proper { point: V2<S>, s_a: S, s_b: S },
    Degenerate(String),
}

fn minmax<S: Scalar>(a: S, b: S) -> (S, S) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn classify_pair<S: Scalar>(a: &Seg<S>, b: &Seg<S>) -> PairKind<S> {
    let da = a.dir2();
    let db = b.dir2();
    let d1 = sign(&cross2(&db, &sub2(&a.p2, &b.p2)));
    let d2 = sign(&cross2(&db, &sub2(&a.q2, &b.p2)));
    let d3 = sign(&cross2(&da, &sub2(&b.p2, &a.p2)));
    let d4 = sign(&cross2(&da, &sub2(&b.q2, &a.p2)));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        // Transversal interior crossing; solve for the parameters.
        let denom = cross2(&da, &db);
        let s_a = cross2(&sub2(&b.p2, &a.p2), &db) / denom.clone();
        let s_b = cross2(&sub2(&b.p2, &a.p2), &da) / denom;
        let point = [
            a.p2[0].clone() + s_a.clone() * da[0].clone(),
            a.p2[1].clone() + s_a.clone() * da[1].clone(),
        ];
        return PairKind::Proper { point, s_a, s_b };
    }
    if d1 == 0 && d2 == 0 {
        // Collinear projections: any 1D overlap is degenerate.
        let axis = if db[0].is_zero() { 1 } else { 0 };
        let (alo, ahi) = minmax(a.p2[axis].clone(), a.q2[axis].clone());
        let (blo, bhi) = minmax(b.p2[axis].clone(), b.q2[axis].clone());
        if ahi < blo || bhi < alo {
            return PairKind::Disjoint;
        }
        return PairKind::Degenerate("collinear overlapping projections".into());
    }
    if (d1 == d2 && d1 != 0) || (d3 == d4 && d3 != 0) {
        return PairKind::Disjoint;
    }
    // Some orientation vanished: an endpoint lies on the other segment's
    // supporting line. Contact within the segment is a non-interior
    // intersection; otherwise the segments miss each other.
    let within = |z: i8, seg: (&V2<S>, &V2<S>), pt: &V2<S>| -> bool {
        if z != 0 {
            return false;
        }
        let (p, q) = seg;
        let t0 = sub2(pt, p);
        let t1 = sub2(q, p);
        let dp = t0[0].clone() * t1[0].clone() + t0[1].clone() * t1[1].clone();
        let len2 = t1[0].clone() * t1[0].clone() + t1[1].clone() * t1[1].clone();
        !dp.is_negative() && dp <= len2
    };
    if within(d1, (&b.p2, &b.q2), &a.p2)
        || within(d2, (&b.p2, &b.q2), &a.q2)
        || within(d3, (&a.p2, &a.q2), &b.p2)
        || within(d4, (&a.p2, &a.q2), &b.q2)
    {
        return PairKind::Degenerate("endpoint contact between projections".into());
    }
    PairKind::Disjoint
}

/// Runs every genericity predicate for direction `d` and collects crossing
/// data; `Err` names the violated predicate.
fn analyze<S: Scalar>(r: &Realization3<S>, l: &EdgeLink, d: &V3<S>) -> Result<Analysis<S>, String> {
    let (u, v) = frame(d);
    let mut segs: Vec<Seg<S>> = Vec::new();
    for (ci, comp) in l.components().iter().enumerate() {
        for i in 0..comp.len() {
            let from = comp[i];
            let to = comp[(i + 1) % comp.len()];
            let p3 = r.coords[&from].clone();
            let q3 = r.coords[&to].clone();
            let p2 = project_point(&u, &v, &p3);
            let q2 = project_point(&u, &v, &q3);
            segs.push(Seg { comp: ci, from, to, p3, q3, p2, q2 });
        }
    }
    // No link segment parallel to the direction.
    for (i, s) in segs.iter().enumerate() {
        let dir3 = sub3(&s.q3, &s.p3);
        if cross3(&dir3, d).iter().all(|c| c.is_zero()) {
            return Err(format!(
                "segment {} ({}–{}) is parallel to the direction",
                i + 1,
                s.from,
                s.to
            ));
        }
    }
    let mut crossings = Vec::new();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (a, b) = (&segs[i], &segs[j]);
            if a.adjacent(b) {
                // Adjacent segments may meet only at the shared endpoint's
                // image: collinear same-direction projections fold over.
                let w = [a.from, a.to]
                    .into_iter()
                    .find(|x| *x == b.from || *x == b.to)
                    .expect("adjacent");
                let wa = if a.from == w { &a.q2 } else { &a.p2 };
                let wb = if b.from == w { &b.q2 } else { &b.p2 };
                let wp = if a.from == w { &a.p2 } else { &a.q2 };
                let e1 = sub2(wa, wp);
                let e2 = sub2(wb, wp);
                let collinear = cross2(&e1, &e2).is_zero();
                let same_dir =
                    (e1[0].clone() * e2[0].clone() + e1[1].clone() * e2[1].clone()).is_positive();
                if collinear && same_dir {
                    return Err(format!(
                        "adjacent segments {} and {} overlap beyond their shared vertex {w}",
                        i + 1,
                        j + 1
                    ));
                }
                continue;
            }
            match classify_pair(a, b) {
                PairKind::Disjoint => {}
                PairKind::Degenerate(why) => {
                    return Err(format!("segments {} and {}: {why}", i + 1, j + 1));
                }
                PairKind::Proper { point, s_a, s_b } => {
                    // Strict depth comparison along d at the crossing.
                    let depth = |seg: &Seg<S>, s: &S| -> S {
                        let at = add3(&seg.p3, &scale3(s, &sub3(&seg.q3, &seg.p3)));
                        dot3(d, &at)
                    };
                    let za = depth(a, &s_a);
                    let zb = depth(b, &s_b);
                    if za == zb {
                        return Err(format!(
                            "segments {} and {} are at equal depth over their crossing",
                            i + 1,
                            j + 1
                        ));
                    }
                    let over_is_a = za > zb;
                    let (od, ud) = if over_is_a {
                        (a.dir2(), b.dir2())
                    } else {
                        (b.dir2(), a.dir2())
                    };
                    let sgn = sign(&cross2(&od, &ud));
                    debug_assert!(sgn != 0);
                    crossings.push((i, j, point, s_a, s_b, over_is_a, sgn));
                }
            }
        }
    }
    // No triple points: crossing points pairwise distinct and clear of every
    // vertex image.
    for x in 0..crossings.len() {
        for y in (x + 1)..crossings.len() {
            if crossings[x].2 == crossings[y].2 {
                return Err("two crossings coincide (triple point)".into());
            }
        }
        for s in &segs {
            if crossings[x].2 == s.p2 {
                return Err(format!("crossing coincides with the image of vertex {}", s.from));
            }
        }
    }
    Ok(Analysis { segs, crossings })
}

fn moment_direction<S: Scalar>(t: i64) -> V3<S> {
    [S::one(), S::from_int(t), S::from_int(t * t)]
}

/// First moment-curve direction passing all genericity predicates.
pub fn generic_direction<S: Scalar>(r: &Realization3<S>, l: &EdgeLink) -> Result<V3<S>, DiagramError> {
    Ok(generic_directions(r, l, 1)?.pop().expect("one direction"))
}

/// First `count` distinct generic directions, ascending along the moment
/// curve. Deterministic.
pub fn generic_directions<S: Scalar>(
    r: &Realization3<S>,
    l: &EdgeLink,
    count: usize,
) -> Result<Vec<V3<S>>, DiagramError> {
    let l = check_link(&r.host, l.components())?;
    for &v in l.components().iter().flatten() {
        if !r.coords.contains_key(&v) {
            return Err(DiagramError::MissingCoordinates(v));
        }
    }
    let mut out = Vec::with_capacity(count);
    let mut last = String::from("no candidate tried");
    for t in 1..=CANDIDATE_CAP as i64 {
        let d = moment_direction::<S>(t);
        match analyze(r, &l, &d) {
            Ok(_) => {
                out.push(d);
                if out.len() == count {
                    return Ok(out);
                }
            }
            Err(why) => last = format!("t = {t}: {why}"),
        }
    }
    Err(DiagramError::CandidateCapExceeded { tried: CANDIDATE_CAP, last })
}

/// Projects the link along `d` onto the orthogonal plane and assembles the
/// diagram: exact crossings with over/under and signs, PD and Gauss codes.
/// Errors if `d` violates a genericity predicate.
pub fn project<S: Scalar>(
    r: &Realization3<S>,
    l: &EdgeLink,
    d: &V3<S>,
) -> Result<Diagram<S>, DiagramError> {
    let l = check_link(&r.host, l.components())?;
    for &v in l.components().iter().flatten() {
        if !r.coords.contains_key(&v) {
            return Err(DiagramError::MissingCoordinates(v));
        }
    }
    let analysis = analyze(r, &l, d).map_err(DiagramError::NotGeneric)?;
    let segs = &analysis.segs;

    // Crossing ids by first encounter along the canonical traversal.
    let mut passage_raw: Vec<(usize, S, usize, bool)> = Vec::new();
    for (raw, (i, j, _, s_a, s_b, over_is_a, _)) in analysis.crossings.iter().enumerate() {
        passage_raw.push((*i, s_a.clone(), raw, *over_is_a));
        passage_raw.push((*j, s_b.clone(), raw, !*over_is_a));
    }
    passage_raw.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut crossing_id = vec![0usize; analysis.crossings.len()];
    let mut next_id = 0usize;
    for (_, _, raw, _) in &passage_raw {
        if crossing_id[*raw] == 0 {
            next_id += 1;
            crossing_id[*raw] = next_id;
        }
    }

    let mut crossings: Vec<Option<Crossing<S>>> = vec![None; analysis.crossings.len()];
    for (raw, (i, j, point, _, _, over_is_a, sgn)) in analysis.crossings.iter().enumerate() {
        let id = crossing_id[raw];
        crossings[id - 1] = Some(Crossing {
            segments: [i + 1, j + 1],
            over: if *over_is_a { i + 1 } else { j + 1 },
            point: point.clone(),
            sign: *sgn,
            components: [segs[*i].comp, segs[*j].comp],
        });
    }
    let crossings: Vec<Crossing<S>> = crossings.into_iter().map(|c| c.unwrap()).collect();

    let passages: Vec<Passage<S>> = passage_raw
        .iter()
        .map(|(seg, s, raw, over)| Passage {
            segment: seg + 1,
            s: s.clone(),
            crossing: crossing_id[*raw],
            over: *over,
        })
        .collect();

    // PD code: arcs between consecutive passages, numbered consecutively
    // through the components. A crossing-free component has a single closed
    // arc and contributes no PD rows.
    let comp_of_seg: Vec<usize> = segs.iter().map(|s| s.comp).collect();
    let mut pd_slots: Vec<[usize; 4]> = vec![[0; 4]; crossings.len()];
    let mut gauss: Vec<Vec<GaussEntry>> = vec![Vec::new(); l.components().len()];
    let mut edge_base = 0usize;
    for ci in 0..l.components().len() {
        let comp_passages: Vec<&Passage<S>> = passages
            .iter()
            .filter(|p| comp_of_seg[p.segment - 1] == ci)
            .collect(); // ordered by (segment, s) within the component
        let m = comp_passages.len();
        for (idx, p) in comp_passages.iter().enumerate() {
            let incoming = edge_base + idx + 1;
            let outgoing = edge_base + (idx + 1) % m + 1;
            let x = &mut pd_slots[p.crossing - 1];
            if p.over {
                x[1] = incoming; // over-in (placed by sign below)
                x[3] = outgoing; // over-out
            } else {
                x[0] = incoming; // under-in
                x[2] = outgoing; // under-out
            }
            let c = &crossings[p.crossing - 1];
            gauss[ci].push(GaussEntry { over: p.over, crossing: p.crossing, sign: c.sign });
        }
        edge_base += m;
    }
    let mut pd_code: Vec<[usize; 4]> = Vec::with_capacity(crossings.len());
    for (k, c) in crossings.iter().enumerate() {
        let [a, over_in, cc, over_out] = pd_slots[k];
        // Counterclockwise from the incoming under-arc, the over-arcs land
        // in sign-dependent slots.
        let row = if c.sign > 0 {
            [a, over_out, cc, over_in]
        } else {
            [a, over_in, cc, over_out]
        };
        pd_code.push(row);
    }
    pd_code.sort_unstable();

    let (u, v) = frame(d);
    let strands: Vec<Vec<V2<S>>> = l
        .components()
        .iter()
        .map(|comp| comp.iter().map(|vx| project_point(&u, &v, &r.coords[vx])).collect())
        .collect();

    Ok(Diagram {
        components: l.components().to_vec(),
        strands,
        crossings,
        passages,
        pd_code,
        gauss_code: gauss,
        direction: d.clone(),
        segment_count: segs.len(),
        segment_component: comp_of_seg,
    })
}

/// Crossing count of one diagram: an upper-bound witness for the crossing
/// number of the link.
pub fn crossing_count<S: Scalar>(dg: &Diagram<S>) -> usize {
    dg.crossings.len()
}

/// Linking matrix: entry (i,j), i≠j, is half the signed sum of crossings
/// between components i and j; entry (i,i) is the writhe of component i.
pub fn linking_matrix<S: Scalar>(dg: &Diagram<S>) -> LinkingMatrix {
    let n = dg.components.len();
    let mut entries = vec![vec![0i64; n]; n];
    for c in &dg.crossings {
        let [i, j] = c.components;
        if i == j {
            entries[i][i] += c.sign as i64;
        } else {
            entries[i][j] += c.sign as i64;
            entries[j][i] += c.sign as i64;
        }
    }
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if i != j {
                debug_assert_eq!(*e % 2, 0, "inter-component signs sum to even");
                *e /= 2;
            }
        }
    }
    LinkingMatrix { entries }
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Deterministic SVG with gaps on the under-strand at each crossing.
/// Floating point appears only here, at serialization; every structural
/// decision was already made exactly.
pub fn render_svg<S: Scalar + ToPrimitive>(dg: &Diagram<S>) -> String {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for strand in &dg.strands {
        for p in strand {
            pts.push((p[0].to_f64().unwrap_or(0.0), p[1].to_f64().unwrap_or(0.0)));
        }
    }
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if !pts.is_empty() {
        lo_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        hi_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        lo_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        hi_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    }
    let extent = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let pad = extent / 10.0;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt_f64(lo_x - pad),
        fmt_f64(lo_y - pad),
        fmt_f64(hi_x - lo_x + 2.0 * pad),
        fmt_f64(hi_y - lo_y + 2.0 * pad)
    ));
    out.push_str(&format!(
        "<g fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"{}\" stroke-linecap=\"round\">\n",
        fmt_f64(extent / 120.0)
    ));

    let mut seg_id = 0usize;
    for strand in dg.strands.iter() {
        let n = strand.len();
        for i in 0..n {
            seg_id += 1;
            let p = &strand[i];
            let q = &strand[(i + 1) % n];
            let mut unders: Vec<f64> = dg
                .passages
                .iter()
                .filter(|pa| pa.segment == seg_id && !pa.over)
                .map(|pa| pa.s.to_f64().unwrap_or(0.5))
                .collect();
            unders.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // Visible parameter intervals: cut a gap around each under
            // passage, bounded by midpoints to neighboring passages.
            let mut intervals: Vec<(f64, f64)> = Vec::with_capacity(unders.len() + 1);
            let mut cursor = 0.0f64;
            for (k, &s) in unders.iter().enumerate() {
                let lo = if k == 0 { 0.0 } else { (unders[k - 1] + s) / 2.0 };
                let hi = if k + 1 == unders.len() { 1.0 } else { (s + unders[k + 1]) / 2.0 };
                let g = ((s - lo) / 2.0).min((hi - s) / 2.0).min(1.0 / 12.0);
                intervals.push((cursor, s - g));
                cursor = s + g;
            }
            intervals.push((cursor, 1.0));
            let px = p[0].to_f64().unwrap_or(0.0);
            let py = p[1].to_f64().unwrap_or(0.0);
            let qx = q[0].to_f64().unwrap_or(0.0);
            let qy = q[1].to_f64().unwrap_or(0.0);
            for (a, b) in intervals {
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                    fmt_f64(px + (qx - px) * a),
                    fmt_f64(py + (qy - py) * a),
                    fmt_f64(px + (qx - px) * b),
                    fmt_f64(py + (qy - py) * b)
                ));
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
