//! Canonical file formats.
//!
//! Data artifacts are pinned byte formats, written by hand so key order and
//! spacing never drift:
//!
//! - triangulation: `{"vertices":[v,…],"tetrahedra":[[a,b,c,d],…]}` with each
//!   tetrahedron sorted ascending and the list sorted lexicographically;
//!   strict parsing rejects unsorted input, `normalize` re-canonicalizes;
//! - link: `{"components":[[v,…],…]}` in canonical cycle form;
//! - coordinates: `{"coords4":{"v":["p/q","p/q","p/q","p/q"],…}}` (same for
//!   `coords3`), rationals always as `p/q` with positive denominator.
//!
//! Report artifacts (validation, diagram, bounds) are serde_json values with
//! deterministic (alphabetical) key order and carry a `meta` header with the
//! tool version and config hash.

use crate::bounds::{BoundKey, BoundReport, BoundValue, CertificateKind};
use crate::complex::{Triangulation, ValidationReport};
use crate::diagram::{Diagram, GaussEntry};
use crate::geom::{V3, V4};
use crate::linkset::EdgeLink;
use crate::moves::{ExpansionSpec, MoveRecord};
use crate::realize::Realization3;
use crate::scalar::{Int, Rat};
use crate::{Tet, Triangle, Vertex, VERSION};
use num_traits::One;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error("not in canonical form: {0}")]
    NotCanonical(String),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}

fn format_err(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

// ---------------------------------------------------------------- rationals

/// Always `p/q`, reduced, q ≥ 1.
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rat_from_str(s: &str) -> Result<Rat, IoError> {
    if let Some((p, q)) = s.split_once('/') {
        let num = Int::from_str(p.trim()).map_err(|e| format_err(format!("bad numerator {p:?}: {e}")))?;
        let den = Int::from_str(q.trim()).map_err(|e| format_err(format!("bad denominator {q:?}: {e}")))?;
        if den == Int::from(0) {
            return Err(format_err("zero denominator"));
        }
        Ok(Rat::new(num, den))
    } else {
        let num = Int::from_str(s.trim()).map_err(|e| format_err(format!("bad rational {s:?}: {e}")))?;
        Ok(Rat::new(num, Int::one()))
    }
}

// ------------------------------------------------------------ triangulation

/// Canonical byte form.
pub fn triangulation_to_json(t: &Triangulation) -> String {
    let mut s = String::from("{\"vertices\":[");
    for (i, v) in t.vertices().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{v}");
    }
    s.push_str("],\"tetrahedra\":[");
    for (i, tet) in t.tetrahedra().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "[{},{},{},{}]", tet[0], tet[1], tet[2], tet[3]);
    }
    s.push_str("]}");
    s
}

fn as_i64(v: &Value, what: &str) -> Result<i64, IoError> {
    v.as_i64().ok_or_else(|| format_err(format!("{what} must be an integer, got {v}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| format_err(format!("{what} must be an array, got {v}")))
}

/// Parses a triangulation. In strict mode, unsorted vertices, unsorted
/// tetrahedron entries or an unsorted tetrahedron list are rejected; with
/// `strict = false` the input is re-canonicalized.
pub fn triangulation_from_json(text: &str, strict: bool) -> Result<Triangulation, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root.as_object().ok_or_else(|| format_err("top level must be an object"))?;
    let verts_v = obj.get("vertices").ok_or_else(|| format_err("missing \"vertices\""))?;
    let tets_v = obj.get("tetrahedra").ok_or_else(|| format_err("missing \"tetrahedra\""))?;
    let vertices: Vec<Vertex> = as_array(verts_v, "vertices")?
        .iter()
        .map(|x| as_i64(x, "vertex"))
        .collect::<Result<_, _>>()?;
    let mut tets: Vec<[Vertex; 4]> = Vec::new();
    for item in as_array(tets_v, "tetrahedra")? {
        let arr = as_array(item, "tetrahedron")?;
        if arr.len() != 4 {
            return Err(format_err(format!("tetrahedron needs 4 vertices, got {}", arr.len())));
        }
        let mut tet = [0i64; 4];
        for (k, x) in arr.iter().enumerate() {
            tet[k] = as_i64(x, "tetrahedron vertex")?;
        }
        tets.push(tet);
    }
    if strict {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(IoError::NotCanonical("vertices are not strictly ascending".into()));
        }
        for tet in &tets {
            if tet.windows(2).any(|w| w[0] >= w[1]) {
                return Err(IoError::NotCanonical(format!("tetrahedron {tet:?} is not sorted")));
            }
        }
        if tets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(IoError::NotCanonical("tetrahedron list is not sorted".into()));
        }
    }
    Ok(Triangulation::new(vertices, tets)?)
}

// ------------------------------------------------------------------- links

pub fn link_to_json(l: &EdgeLink) -> String {
    let mut s = String::from("{\"components\":[");
    for (i, comp) in l.components().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push('[');
        for (j, v) in comp.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            let _ = write!(s, "{v}");
        }
        s.push(']');
    }
    s.push_str("]}");
    s
}

/// Raw cycles; validate against a host with [`crate::linkset::check_link`].
pub fn link_cycles_from_json(text: &str) -> Result<Vec<Vec<Vertex>>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root.as_object().ok_or_else(|| format_err("top level must be an object"))?;
    let comps = obj.get("components").ok_or_else(|| format_err("missing \"components\""))?;
    as_array(comps, "components")?
        .iter()
        .map(|c| {
            as_array(c, "component")?
                .iter()
                .map(|x| as_i64(x, "vertex"))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

// ------------------------------------------------------------- coordinates

fn coords_to_json_generic<const N: usize>(
    key: &str,
    coords: &BTreeMap<Vertex, [Rat; N]>,
) -> String {
    let mut s = format!("{{\"{key}\":{{");
    for (i, (v, p)) in coords.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "\"{v}\":[");
        for (j, c) in p.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            let _ = write!(s, "\"{}\"", rat_to_string(c));
        }
        s.push(']');
    }
    s.push_str("}}");
    s
}

pub fn coords4_to_json(coords: &BTreeMap<Vertex, V4<Rat>>) -> String {
    coords_to_json_generic("coords4", coords)
}

pub fn coords3_to_json(coords: &BTreeMap<Vertex, V3<Rat>>) -> String {
    coords_to_json_generic("coords3", coords)
}

fn coords_from_value<const N: usize>(v: &Value, what: &str) -> Result<BTreeMap<Vertex, [Rat; N]>, IoError> {
    let obj = v.as_object().ok_or_else(|| format_err(format!("{what} must be an object")))?;
    let mut out = BTreeMap::new();
    for (key, val) in obj {
        let vertex: Vertex = key
            .parse()
            .map_err(|_| format_err(format!("bad vertex key {key:?}")))?;
        let arr = as_array(val, "coordinate tuple")?;
        if arr.len() != N {
            return Err(format_err(format!("vertex {key}: expected {N} coordinates, got {}", arr.len())));
        }
        let mut pt: Vec<Rat> = Vec::with_capacity(N);
        for c in arr {
            let s = c.as_str().ok_or_else(|| format_err("coordinates must be \"p/q\" strings"))?;
            pt.push(rat_from_str(s)?);
        }
        out.insert(vertex, pt.try_into().map_err(|_| format_err("bad tuple"))?);
    }
    Ok(out)
}

pub fn coords4_from_json(text: &str) -> Result<BTreeMap<Vertex, V4<Rat>>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let v = root
        .get("coords4")
        .ok_or_else(|| format_err("missing \"coords4\""))?;
    coords_from_value(v, "coords4")
}

// ------------------------------------------------------------- realization

pub fn realization_to_json(r: &Realization3<Rat>) -> String {
    let mut s = String::from("{\"triangulation\":");
    s.push_str(&triangulation_to_json(&r.host));
    s.push_str(",\"coords3\":{");
    for (i, (v, p)) in r.coords.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "\"{v}\":[");
        for (j, c) in p.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            let _ = write!(s, "\"{}\"", rat_to_string(c));
        }
        s.push(']');
    }
    s.push_str("},\"omitted_facet\":");
    match r.omitted_facet {
        Some(f) => {
            let _ = write!(s, "[{},{},{},{}]", f[0], f[1], f[2], f[3]);
        }
        None => s.push_str("null"),
    }
    s.push('}');
    s
}

pub fn realization_from_json(text: &str) -> Result<Realization3<Rat>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let tri_v = root
        .get("triangulation")
        .ok_or_else(|| format_err("missing \"triangulation\""))?;
    let host = triangulation_from_json(&tri_v.to_string(), false)?;
    let coords_v = root.get("coords3").ok_or_else(|| format_err("missing \"coords3\""))?;
    let coords: BTreeMap<Vertex, V3<Rat>> = coords_from_value(coords_v, "coords3")?;
    let omitted = match root.get("omitted_facet") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_tet(v)?),
    };
    for &v in host.vertices() {
        if !coords.contains_key(&v) {
            return Err(format_err(format!("no coordinates for vertex {v}")));
        }
    }
    Ok(Realization3 { host, coords, omitted_facet: omitted })
}

fn parse_tet(v: &Value) -> Result<Tet, IoError> {
    let arr = as_array(v, "tetrahedron")?;
    if arr.len() != 4 {
        return Err(format_err("tetrahedron needs 4 vertices"));
    }
    let mut tet = [0i64; 4];
    for (k, x) in arr.iter().enumerate() {
        tet[k] = as_i64(x, "vertex")?;
    }
    Ok(tet)
}

fn parse_triangle(v: &Value) -> Result<Triangle, IoError> {
    let arr = as_array(v, "triangle")?;
    if arr.len() != 3 {
        return Err(format_err("triangle needs 3 vertices"));
    }
    let mut tri = [0i64; 3];
    for (k, x) in arr.iter().enumerate() {
        tri[k] = as_i64(x, "vertex")?;
    }
    Ok(tri)
}

// ------------------------------------------------------------ move records

fn spec_to_value(spec: &ExpansionSpec) -> Value {
    json!({
        "vertex": spec.vertex,
        "disk_a": spec.disk_a,
        "disk_b": spec.disk_b,
        "boundary_cycle": spec.boundary_cycle,
        "new_label": spec.new_label,
    })
}

fn spec_from_value(v: &Value) -> Result<ExpansionSpec, IoError> {
    let vertex = as_i64(v.get("vertex").ok_or_else(|| format_err("spec: missing vertex"))?, "vertex")?;
    let new_label = as_i64(
        v.get("new_label").ok_or_else(|| format_err("spec: missing new_label"))?,
        "new_label",
    )?;
    let tri_list = |key: &str| -> Result<Vec<Triangle>, IoError> {
        as_array(v.get(key).ok_or_else(|| format_err(format!("spec: missing {key}")))?, key)?
            .iter()
            .map(parse_triangle)
            .collect()
    };
    let boundary_cycle: Vec<Vertex> = as_array(
        v.get("boundary_cycle").ok_or_else(|| format_err("spec: missing boundary_cycle"))?,
        "boundary_cycle",
    )?
    .iter()
    .map(|x| as_i64(x, "vertex"))
    .collect::<Result<_, _>>()?;
    Ok(ExpansionSpec {
        vertex,
        disk_a: tri_list("disk_a")?,
        disk_b: tri_list("disk_b")?,
        boundary_cycle,
        new_label,
    })
}

pub fn move_record_to_json(rec: &MoveRecord) -> String {
    let v = match rec {
        MoveRecord::Contract { edge, inverse } => json!({
            "kind": "contract", "edge": edge, "inverse": spec_to_value(inverse),
        }),
        MoveRecord::Expand { spec } => json!({
            "kind": "expand", "spec": spec_to_value(spec),
        }),
        MoveRecord::Stellar { simplex, new_vertex, as_expansion } => json!({
            "kind": "stellar", "simplex": simplex, "new_vertex": new_vertex,
            "as_expansion": spec_to_value(as_expansion),
        }),
        MoveRecord::Pachner14 { tet, new_vertex } => json!({
            "kind": "pachner_14", "tet": tet, "new_vertex": new_vertex,
        }),
        MoveRecord::Pachner23 { triangle, new_edge } => json!({
            "kind": "pachner_23", "triangle": triangle, "new_edge": new_edge,
        }),
        MoveRecord::Pachner32 { edge, new_triangle } => json!({
            "kind": "pachner_32", "edge": edge, "new_triangle": new_triangle,
        }),
        MoveRecord::Pachner41 { vertex, new_tet } => json!({
            "kind": "pachner_41", "vertex": vertex, "new_tet": new_tet,
        }),
    };
    v.to_string()
}

pub fn move_record_from_json(text: &str) -> Result<MoveRecord, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let kind = v
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| format_err("record: missing kind"))?;
    let edge_of = |key: &str| -> Result<[Vertex; 2], IoError> {
        let arr = as_array(v.get(key).ok_or_else(|| format_err(format!("record: missing {key}")))?, key)?;
        if arr.len() != 2 {
            return Err(format_err("edge needs 2 vertices"));
        }
        Ok([as_i64(&arr[0], "vertex")?, as_i64(&arr[1], "vertex")?])
    };
    match kind {
        "contract" => Ok(MoveRecord::Contract {
            edge: edge_of("edge")?,
            inverse: spec_from_value(v.get("inverse").ok_or_else(|| format_err("record: missing inverse"))?)?,
        }),
        "expand" => Ok(MoveRecord::Expand {
            spec: spec_from_value(v.get("spec").ok_or_else(|| format_err("record: missing spec"))?)?,
        }),
        "stellar" => {
            let simplex: Vec<Vertex> = as_array(
                v.get("simplex").ok_or_else(|| format_err("record: missing simplex"))?,
                "simplex",
            )?
            .iter()
            .map(|x| as_i64(x, "vertex"))
            .collect::<Result<_, _>>()?;
            Ok(MoveRecord::Stellar {
                simplex,
                new_vertex: as_i64(
                    v.get("new_vertex").ok_or_else(|| format_err("record: missing new_vertex"))?,
                    "new_vertex",
                )?,
                as_expansion: spec_from_value(
                    v.get("as_expansion").ok_or_else(|| format_err("record: missing as_expansion"))?,
                )?,
            })
        }
        "pachner_14" => Ok(MoveRecord::Pachner14 {
            tet: parse_tet(v.get("tet").ok_or_else(|| format_err("record: missing tet"))?)?,
            new_vertex: as_i64(
                v.get("new_vertex").ok_or_else(|| format_err("record: missing new_vertex"))?,
                "new_vertex",
            )?,
        }),
        "pachner_23" => Ok(MoveRecord::Pachner23 {
            triangle: parse_triangle(v.get("triangle").ok_or_else(|| format_err("record: missing triangle"))?)?,
            new_edge: edge_of("new_edge")?,
        }),
        "pachner_32" => Ok(MoveRecord::Pachner32 {
            edge: edge_of("edge")?,
            new_triangle: parse_triangle(
                v.get("new_triangle").ok_or_else(|| format_err("record: missing new_triangle"))?,
            )?,
        }),
        "pachner_41" => Ok(MoveRecord::Pachner41 {
            vertex: as_i64(v.get("vertex").ok_or_else(|| format_err("record: missing vertex"))?, "vertex")?,
            new_tet: parse_tet(v.get("new_tet").ok_or_else(|| format_err("record: missing new_tet"))?)?,
        }),
        other => Err(format_err(format!("unknown record kind {other:?}"))),
    }
}

// ---------------------------------------------------------- shelling order

pub fn shelling_to_json(order: &[Tet]) -> String {
    let mut s = String::from("{\"order\":[");
    for (i, tet) in order.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "[{},{},{},{}]", tet[0], tet[1], tet[2], tet[3]);
    }
    s.push_str("]}");
    s
}

pub fn shelling_from_json(text: &str) -> Result<Vec<Tet>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let order = root.get("order").ok_or_else(|| format_err("missing \"order\""))?;
    as_array(order, "order")?.iter().map(parse_tet).collect()
}

// ----------------------------------------------------------------- reports

/// Header for report artifacts: tool version plus a deterministic hash of
/// the resolved run configuration.
pub fn meta_value(config_hash: u64) -> Value {
    json!({
        "tool": "trilink",
        "version": VERSION,
        "config_hash": format!("{config_hash:016x}"),
    })
}

/// 64-bit FNV-1a, used solely to fingerprint resolved configurations.
pub fn fnv1a64(data: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub fn validation_report_to_value(r: &ValidationReport, s3_assumed: bool) -> Value {
    json!({
        "is_closed_pseudomanifold": r.is_closed_pseudomanifold,
        "is_connected": r.is_connected,
        "vertex_links_are_2spheres": r.vertex_links_are_2spheres,
        "euler_characteristic": r.euler_characteristic,
        "f_vector": [r.f_vector.f0, r.f_vector.f1, r.f_vector.f2, r.f_vector.f3],
        "valid": r.is_valid(),
        "certifies": if r.is_valid() {
            if s3_assumed { "closed 3-manifold (S³ assumed, not recognized)" } else { "closed 3-manifold" }
        } else { "nothing" },
        "failures": r.failures.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

pub fn bound_value_to_value(v: &BoundValue) -> Value {
    match v {
        BoundValue::Int(x) => json!({ "dec": x.to_string() }),
        BoundValue::Pow2 { exponent } => match v.decimal_digits() {
            Some(d) => json!({ "pow2": exponent, "digits": d }),
            None => json!({ "pow2": exponent }),
        },
        BoundValue::Pow2MinusOne { exponent } => match v.decimal_digits() {
            Some(d) => json!({ "pow2_minus_1": exponent, "digits": d }),
            None => json!({ "pow2_minus_1": exponent }),
        },
    }
}

pub fn bound_value_from_value(v: &Value) -> Result<BoundValue, IoError> {
    if let Some(dec) = v.get("dec") {
        let s = dec.as_str().ok_or_else(|| format_err("dec must be a string"))?;
        let x = Int::from_str(s).map_err(|e| format_err(format!("bad integer: {e}")))?;
        return Ok(BoundValue::Int(x));
    }
    if let Some(e) = v.get("pow2") {
        return Ok(BoundValue::Pow2 { exponent: e.as_u64().ok_or_else(|| format_err("bad exponent"))? });
    }
    if let Some(e) = v.get("pow2_minus_1") {
        return Ok(BoundValue::Pow2MinusOne {
            exponent: e.as_u64().ok_or_else(|| format_err("bad exponent"))?,
        });
    }
    Err(format_err("unrecognized bound value"))
}

fn certificate_name(c: CertificateKind) -> &'static str {
    match c {
        CertificateKind::Polytopal => "polytopal",
        CertificateKind::Shellable => "shellable",
        CertificateKind::None => "none",
    }
}

fn bound_key_name(k: BoundKey) -> &'static str {
    match k {
        BoundKey::Polytopal => "polytopal",
        BoundKey::Shellable => "shellable",
        BoundKey::General => "general",
        BoundKey::ViaPolytopality => "via_polytopality",
    }
}

/// Bound report as JSON, big integers as decimal strings, exponentials
/// symbolic.
pub fn bound_report_to_value(r: &BoundReport) -> Value {
    let mut cr = Map::new();
    cr.insert("polytopal".into(), json!({ "dec": r.cr.polytopal.to_string() }));
    cr.insert("shellable".into(), json!({ "dec": r.cr.shellable.to_string() }));
    cr.insert("general".into(), bound_value_to_value(&r.cr.general));
    cr.insert(
        "via_polytopality".into(),
        match &r.cr.via_polytopality {
            Some(x) => json!({ "dec": x.to_string() }),
            None => Value::Null,
        },
    );
    json!({
        "n": r.n,
        "k": r.k,
        "certificate": certificate_name(r.certificate),
        "p_interval": {
            "lo": r.p.lo.to_string(),
            "hi": bound_value_to_value(&r.p.hi),
        },
        "d_interval": {
            "lo_exclusive": rat_to_string(&r.d.lo_exclusive),
            "hi": r.d.hi.as_ref().map(|x| x.to_string()),
        },
        "cr_bounds": Value::Object(cr),
        "checks": {
            "quadratic_display": r.cr.quadratic_display_ok,
            "exponential_display": r.cr.exponential_display_ok,
        },
        "achieved": r.achieved,
        "applicable": r.applicable.iter().map(|k| bound_key_name(*k)).collect::<Vec<_>>(),
    })
}

fn certificate_from_name(s: &str) -> Result<CertificateKind, IoError> {
    match s {
        "polytopal" => Ok(CertificateKind::Polytopal),
        "shellable" => Ok(CertificateKind::Shellable),
        "none" => Ok(CertificateKind::None),
        other => Err(format_err(format!("unknown certificate {other:?}"))),
    }
}

fn bound_key_from_name(s: &str) -> Result<BoundKey, IoError> {
    match s {
        "polytopal" => Ok(BoundKey::Polytopal),
        "shellable" => Ok(BoundKey::Shellable),
        "general" => Ok(BoundKey::General),
        "via_polytopality" => Ok(BoundKey::ViaPolytopality),
        other => Err(format_err(format!("unknown bound key {other:?}"))),
    }
}

fn int_from_value(v: &Value, what: &str) -> Result<Int, IoError> {
    let s = v.as_str().ok_or_else(|| format_err(format!("{what} must be a decimal string")))?;
    Int::from_str(s).map_err(|e| format_err(format!("{what}: {e}")))
}

/// Inverse of [`bound_report_to_value`]; serialization is lossless.
pub fn bound_report_from_value(v: &Value) -> Result<BoundReport, IoError> {
    let get = |key: &str| v.get(key).ok_or_else(|| format_err(format!("report: missing {key}")));
    let n = get("n")?.as_u64().ok_or_else(|| format_err("bad n"))? as usize;
    let k = get("k")?.as_u64().ok_or_else(|| format_err("bad k"))? as usize;
    let certificate = certificate_from_name(
        get("certificate")?.as_str().ok_or_else(|| format_err("bad certificate"))?,
    )?;
    let p_v = get("p_interval")?;
    let p = crate::bounds::PInterval {
        lo: int_from_value(p_v.get("lo").ok_or_else(|| format_err("missing p lo"))?, "p lo")?,
        hi: bound_value_from_value(p_v.get("hi").ok_or_else(|| format_err("missing p hi"))?)?,
    };
    let d_v = get("d_interval")?;
    let lo_s = d_v
        .get("lo_exclusive")
        .and_then(|x| x.as_str())
        .ok_or_else(|| format_err("missing d lo"))?;
    let d = crate::bounds::DInterval {
        lo_exclusive: rat_from_str(lo_s)?,
        hi: match d_v.get("hi") {
            None | Some(Value::Null) => None,
            Some(x) => Some(int_from_value(x, "d hi")?),
        },
    };
    let cr_v = get("cr_bounds")?;
    let checks = get("checks")?;
    let cr = crate::bounds::CrBounds {
        polytopal: int_from_value(
            cr_v.get("polytopal").and_then(|x| x.get("dec")).ok_or_else(|| format_err("missing polytopal"))?,
            "polytopal bound",
        )?,
        shellable: int_from_value(
            cr_v.get("shellable").and_then(|x| x.get("dec")).ok_or_else(|| format_err("missing shellable"))?,
            "shellable bound",
        )?,
        general: bound_value_from_value(
            cr_v.get("general").ok_or_else(|| format_err("missing general"))?,
        )?,
        via_polytopality: match cr_v.get("via_polytopality") {
            None | Some(Value::Null) => None,
            Some(x) => Some(int_from_value(
                x.get("dec").ok_or_else(|| format_err("via_polytopality must be exact"))?,
                "via_polytopality",
            )?),
        },
        quadratic_display_ok: checks
            .get("quadratic_display")
            .and_then(|x| x.as_bool())
            .ok_or_else(|| format_err("missing quadratic check"))?,
        exponential_display_ok: match checks.get("exponential_display") {
            None | Some(Value::Null) => None,
            Some(x) => Some(x.as_bool().ok_or_else(|| format_err("bad exponential check"))?),
        },
    };
    let achieved = match get("achieved")? {
        Value::Null => None,
        x => Some(x.as_u64().ok_or_else(|| format_err("bad achieved"))? as usize),
    };
    let applicable = as_array(get("applicable")?, "applicable")?
        .iter()
        .map(|x| {
            bound_key_from_name(x.as_str().ok_or_else(|| format_err("bad bound key"))?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BoundReport { n, k, certificate, p, d, cr, achieved, applicable })
}

// ------------------------------------------------------------------ diagram

pub fn gauss_entry_to_string(e: &GaussEntry) -> String {
    format!(
        "{}{}{}",
        if e.over { 'O' } else { 'U' },
        e.crossing,
        if e.sign > 0 { '+' } else { '-' }
    )
}

/// PD code text: `X[a,b,c,d]` lines, already lexicographically sorted.
pub fn pd_code_text(dg: &Diagram<Rat>) -> String {
    let mut s = String::new();
    for row in &dg.pd_code {
        let _ = writeln!(s, "X[{},{},{},{}]", row[0], row[1], row[2], row[3]);
    }
    s
}

/// Gauss code text: one line per component, tokens separated by spaces.
pub fn gauss_code_text(dg: &Diagram<Rat>) -> String {
    let mut s = String::new();
    for comp in &dg.gauss_code {
        let tokens: Vec<String> = comp.iter().map(gauss_entry_to_string).collect();
        let _ = writeln!(s, "{}", tokens.join(" "));
    }
    s
}

pub fn diagram_to_value(dg: &Diagram<Rat>) -> Value {
    json!({
        "direction": dg.direction.iter().map(rat_to_string).collect::<Vec<_>>(),
        "components": dg.components,
        "strands": dg
            .strands
            .iter()
            .map(|strand| {
                strand
                    .iter()
                    .map(|p| vec![rat_to_string(&p[0]), rat_to_string(&p[1])])
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
        "crossings": dg
            .crossings
            .iter()
            .map(|c| {
                json!({
                    "segments": c.segments,
                    "over": c.over,
                    "point": [rat_to_string(&c.point[0]), rat_to_string(&c.point[1])],
                    "sign": c.sign,
                    "components": c.components,
                })
            })
            .collect::<Vec<_>>(),
        "pd": dg.pd_code,
        "gauss": dg
            .gauss_code
            .iter()
            .map(|comp| comp.iter().map(gauss_entry_to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "crossing_count": dg.crossing_count(),
    })
}
