//! Cross-module integration: full pipelines from generators to bound
//! reports, file-format round trips, and the CLI surface driven through
//! `cli::run` with real files.

use std::collections::BTreeSet;

use trilink::bounds::{self, BoundKey, CertificateKind, Evidence};
use trilink::cli::Cli;
use trilink::complex::validate;
use trilink::diagram::{generic_direction, project};
use trilink::generators::{
    cyclic_polytope_boundary, join_of_triangles, pachner_walk, simplex_boundary, stacked_sphere,
};
use trilink::io;
use trilink::linkset::check_link;
use trilink::realize::{schlegel, verify_embedding};

#[test]
fn report_on_the_hopf_fixture_is_polytopal() {
    let g = join_of_triangles();
    let t = &g.triangulation;
    let coords = g.coords4.as_ref().unwrap();
    let l = check_link(t, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
    let r = schlegel(t, coords, &t.tetrahedra()[0]).unwrap();
    assert!(verify_embedding(&r).pass());
    let d = generic_direction(&r, &l).unwrap();
    let dg = project(&r, &l, &d).unwrap();

    let rep = bounds::report(t, &l, &Evidence {
        coords4: Some(coords),
        shelling: None,
        diagram: Some(&dg),
    })
    .unwrap();
    assert_eq!(rep.certificate, CertificateKind::Polytopal);
    assert_eq!(rep.cr.polytopal, trilink::scalar::Int::from(324));
    let achieved = rep.achieved.unwrap();
    assert!(achieved <= 15 && achieved < 324);
    assert!(rep.applicable.contains(&BoundKey::Polytopal));

    // Serialize → parse is lossless.
    let v = io::bound_report_to_value(&rep);
    let back = io::bound_report_from_value(&v).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn report_without_evidence_only_grants_the_general_bound() {
    let base = simplex_boundary().triangulation;
    let t = pachner_walk(&base, 30, 17).unwrap();
    assert!(validate(&t).is_valid());
    // Some triangle in the 1-skeleton.
    let tri = t.triangles()[0];
    let l = check_link(&t, &[tri.to_vec()]).unwrap();
    let rep = bounds::report(&t, &l, &Evidence::default()).unwrap();
    assert_eq!(rep.certificate, CertificateKind::None);
    assert_eq!(rep.applicable, vec![BoundKey::General]);
    let v = io::bound_report_to_value(&rep);
    let back = io::bound_report_from_value(&v).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn report_on_the_simplex_with_full_evidence_achieves_zero() {
    let g = simplex_boundary();
    let t = &g.triangulation;
    let coords = g.coords4.as_ref().unwrap();
    let l = check_link(t, &[vec![1, 2, 3]]).unwrap();
    let r = schlegel(t, coords, &t.tetrahedra()[0]).unwrap();
    let d = generic_direction(&r, &l).unwrap();
    let dg = project(&r, &l, &d).unwrap();
    let rep = bounds::report(t, &l, &Evidence {
        coords4: Some(coords),
        shelling: None,
        diagram: Some(&dg),
    })
    .unwrap();
    assert_eq!(rep.achieved, Some(0));
    assert_eq!(rep.cr.polytopal, trilink::scalar::Int::from(100));
}

#[test]
fn shelling_evidence_grants_the_shellable_branch() {
    let g = join_of_triangles();
    let t = &g.triangulation;
    let l = check_link(t, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
    let order = match trilink::shelling::find_shelling(t, trilink::shelling::DEFAULT_BUDGET) {
        trilink::shelling::FindOutcome::Found(o) => o.order,
        other => panic!("{other:?}"),
    };
    let rep = bounds::report(t, &l, &Evidence {
        coords4: None,
        shelling: Some(&order),
        diagram: None,
    })
    .unwrap();
    assert_eq!(rep.certificate, CertificateKind::Shellable);
    assert_eq!(
        rep.applicable,
        vec![BoundKey::Shellable, BoundKey::General, BoundKey::ViaPolytopality]
    );
    // p ∈ [9, 63] under a shelling certificate.
    assert_eq!(rep.p.lo, trilink::scalar::Int::from(9));
    assert_eq!(rep.p.hi.expand().unwrap(), trilink::scalar::Int::from(63));
}

#[test]
fn schlegel_embeds_for_every_facet_on_small_witnessed_fixtures() {
    let fixtures = vec![
        simplex_boundary(),
        join_of_triangles(),
        cyclic_polytope_boundary(6).unwrap(),
        cyclic_polytope_boundary(7).unwrap(),
        stacked_sphere(2, 3).unwrap(),
    ];
    for g in &fixtures {
        let t = &g.triangulation;
        if t.n() > 14 {
            continue;
        }
        let coords = g.coords4.as_ref().unwrap();
        for facet in t.tetrahedra() {
            let r = schlegel(t, coords, facet).unwrap();
            let rep = verify_embedding(&r);
            assert!(rep.pass(), "{:?} facet {facet:?}: {rep:?}", g.provenance);
        }
    }
}

#[test]
fn realization_json_roundtrip_is_bit_exact() {
    let g = join_of_triangles();
    let t = &g.triangulation;
    let r = schlegel(t, g.coords4.as_ref().unwrap(), &t.tetrahedra()[2]).unwrap();
    let s = io::realization_to_json(&r);
    let back = io::realization_from_json(&s).unwrap();
    assert_eq!(back, r);
    assert_eq!(io::realization_to_json(&back), s);
}

#[test]
fn enumeration_is_duplicate_free_on_small_fixtures() {
    for t in [
        simplex_boundary().triangulation,
        join_of_triangles().triangulation,
        cyclic_polytope_boundary(6).unwrap().triangulation,
    ] {
        let links = trilink::linkset::enumerate_links(&t, 2, 8);
        let unique: BTreeSet<_> = links.iter().cloned().collect();
        assert_eq!(unique.len(), links.len());
        for l in &links {
            assert_eq!(&check_link(&t, l.components()).unwrap(), l);
            assert!(l.edge_count() <= t.f_vector().f1);
        }
    }
}

// ------------------------------------------------------------- CLI surface

use clap::Parser;

fn run_cli(args: &[&str]) -> Result<(), String> {
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    trilink::cli::run(cli).map_err(|e| e.to_string())
}

#[test]
fn cli_end_to_end_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();

    run_cli(&["trilink", "gen", "join", "--out", &path("t.json"), "--coords-out", &path("c.json")])
        .unwrap();
    run_cli(&["trilink", "validate", "--tri", &path("t.json"), "--strict"]).unwrap();

    std::fs::write(path("l.json"), "{\"components\":[[1,2,3],[4,5,6]]}").unwrap();
    run_cli(&["trilink", "links", "check", "--tri", &path("t.json"), "--link", &path("l.json")])
        .unwrap();
    run_cli(&[
        "trilink", "links", "enum", "--tri", &path("t.json"),
        "--max-comp", "2", "--max-edges", "6", "--out", &path("links.txt"),
    ])
    .unwrap();
    let lines = std::fs::read_to_string(path("links.txt")).unwrap();
    assert!(lines.lines().any(|l| l == "{\"components\":[[1,2,3],[4,5,6]]}"));

    run_cli(&[
        "trilink", "realize", "--tri", &path("t.json"), "--coords", &path("c.json"),
        "--out", &path("r.json"),
    ])
    .unwrap();
    run_cli(&["trilink", "verify-embedding", "--realization", &path("r.json")]).unwrap();

    for fmt in ["svg", "pd", "gauss", "json"] {
        run_cli(&[
            "trilink", "diagram", "--realization", &path("r.json"), "--link", &path("l.json"),
            "--format", fmt, "--out", &path(&format!("d.{fmt}")),
        ])
        .unwrap();
    }
    let svg = std::fs::read_to_string(path("d.svg")).unwrap();
    assert!(svg.starts_with("<?xml"));
    let pd = std::fs::read_to_string(path("d.pd")).unwrap();
    assert!(pd.lines().all(|l| l.starts_with("X[")));

    // Deterministic artifacts: re-running produces identical bytes.
    run_cli(&[
        "trilink", "diagram", "--realization", &path("r.json"), "--link", &path("l.json"),
        "--format", "svg", "--out", &path("d2.svg"),
    ])
    .unwrap();
    assert_eq!(svg, std::fs::read_to_string(path("d2.svg")).unwrap());

    run_cli(&[
        "trilink", "shelling", "find", "--tri", &path("t.json"), "--out", &path("o.json"),
    ])
    .unwrap();
    run_cli(&[
        "trilink", "shelling", "verify", "--tri", &path("t.json"), "--order", &path("o.json"),
    ])
    .unwrap();

    run_cli(&[
        "trilink", "bounds", "report", "--tri", &path("t.json"), "--link", &path("l.json"),
        "--coords", &path("c.json"), "--diagram", &path("r.json"), "--out", &path("rep.json"),
    ])
    .unwrap();
    let rep: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path("rep.json")).unwrap()).unwrap();
    assert_eq!(rep["certificate"], "polytopal");
    assert_eq!(rep["cr_bounds"]["polytopal"]["dec"], "324");
    assert_eq!(rep["meta"]["tool"], "trilink");

    run_cli(&["trilink", "demo", "thm1", "--fixture", "join"]).unwrap();
}

#[test]
fn cli_moves_and_transport() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();

    run_cli(&["trilink", "gen", "simplex", "--out", &path("s.json")]).unwrap();
    run_cli(&[
        "trilink", "move", "stellar", "--tri", &path("s.json"), "--simplex", "2,3,4,5",
        "--out", &path("s14.json"), "--record", &path("rec.json"),
    ])
    .unwrap();
    std::fs::write(path("l.json"), "{\"components\":[[2,3,4]]}").unwrap();
    run_cli(&[
        "trilink", "move", "transport", "--tri", &path("s14.json"), "--link", &path("l.json"),
        "--record", &path("rec.json"), "--out", &path("l2.json"),
    ])
    .unwrap();
    let moved = std::fs::read_to_string(path("l2.json")).unwrap();
    let cycles = io::link_cycles_from_json(&moved).unwrap();
    assert!(cycles[0].len() == 3 || cycles[0].len() == 4, "k or k+1 edges");

    // Contracting the subdivision edge restores the simplex boundary.
    run_cli(&[
        "trilink", "move", "contract", "--tri", &path("s14.json"), "--edge", "2,6",
        "--out", &path("restored.json"),
    ])
    .unwrap();
    assert_eq!(
        std::fs::read_to_string(path("restored.json")).unwrap(),
        std::fs::read_to_string(path("s.json")).unwrap(),
        "bit-exact restoration through the CLI"
    );

    // Contraction in the simplex boundary itself violates the link
    // condition and must fail as a domain error.
    let err = run_cli(&[
        "trilink", "move", "contract", "--tri", &path("s.json"), "--edge", "1,2",
    ])
    .unwrap_err();
    assert!(err.contains("link condition"), "{err}");
}

#[test]
fn cli_walk_and_unvalidated_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();

    run_cli(&[
        "trilink", "gen", "walk", "--steps", "40", "--seed", "11", "--out", &path("w.json"),
    ])
    .unwrap();
    run_cli(&["trilink", "validate", "--tri", &path("w.json")]).unwrap();

    // Pick a triangle of the walk output as a link.
    let t = io::triangulation_from_json(&std::fs::read_to_string(path("w.json")).unwrap(), true)
        .unwrap();
    let tri = t.triangles()[0];
    std::fs::write(
        path("wl.json"),
        format!("{{\"components\":[[{},{},{}]]}}", tri[0], tri[1], tri[2]),
    )
    .unwrap();
    run_cli(&[
        "trilink", "bounds", "report", "--tri", &path("w.json"), "--link", &path("wl.json"),
        "--out", &path("wrep.json"),
    ])
    .unwrap();
    let rep: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path("wrep.json")).unwrap()).unwrap();
    assert_eq!(rep["certificate"], "none");
    assert_eq!(rep["applicable"], serde_json::json!(["general"]));
}

#[test]
fn cli_gen_outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    for run in ["a", "b"] {
        run_cli(&[
            "trilink", "gen", "stacked", "--steps", "6", "--seed", "42",
            "--out", &path(&format!("{run}.json")),
            "--coords-out", &path(&format!("{run}c.json")),
        ])
        .unwrap();
    }
    assert_eq!(
        std::fs::read_to_string(path("a.json")).unwrap(),
        std::fs::read_to_string(path("b.json")).unwrap()
    );
    assert_eq!(
        std::fs::read_to_string(path("ac.json")).unwrap(),
        std::fs::read_to_string(path("bc.json")).unwrap()
    );
}

#[test]
fn cli_rejects_bad_inputs_as_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    std::fs::write(path("bad.json"), "{\"vertices\":[1,2").unwrap();
    let err = run_cli(&["trilink", "validate", "--tri", &path("bad.json")]).unwrap_err();
    assert!(err.contains("invalid JSON"), "{err}");

    std::fs::write(
        path("unsorted.json"),
        "{\"vertices\":[1,2,3,4,5],\"tetrahedra\":[[2,1,3,4],[1,2,3,5],[1,2,4,5],[1,3,4,5],[2,3,4,5]]}",
    )
    .unwrap();
    let err =
        run_cli(&["trilink", "validate", "--tri", &path("unsorted.json"), "--strict"]).unwrap_err();
    assert!(err.contains("canonical"), "{err}");
    // normalize accepts the same bytes and re-canonicalizes.
    run_cli(&[
        "trilink", "validate", "--tri", &path("unsorted.json"), "--normalize",
        "--out", &path("norm.json"),
    ])
    .unwrap();
    let norm = std::fs::read_to_string(path("norm.json")).unwrap();
    assert!(norm.starts_with("{\"vertices\":[1,2,3,4,5],\"tetrahedra\":[[1,2,3,4],"));
}
