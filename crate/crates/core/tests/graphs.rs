use std::path::PathBuf;

use renorm::graphs::{toy_graph_character, Catalog, GraphInstance};
use renorm::hopf::{birkhoff, bphz, convolve, inverse, HopfInstance};
use renorm::laurent::Context;
use renorm::rg::{check_mu_independence, rg_report};

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

#[test]
fn shipped_catalog_matches_builtin() {
    let from_disk = GraphInstance::from_catalog(&Catalog::load_dir(&catalog_dir()).unwrap()).unwrap();
    let builtin = GraphInstance::builtin();
    let names = |i: &GraphInstance| i.all().map(|g| g.to_string()).collect::<Vec<_>>();
    assert_eq!(names(&from_disk), names(&builtin));
    assert!(builtin.fully_named());
}

#[test]
fn bphz_equals_birkhoff_on_every_graph() {
    let ctx = Context::standard();
    let inst = GraphInstance::builtin();
    let phi = toy_graph_character(&inst, &ctx, inst.max_loops(), 10).unwrap();
    assert_eq!(phi.generators().count(), inst.all().count());
    let pair = birkhoff(&inst, &phi).unwrap();
    let triple = bphz(&inst, &phi).unwrap();
    assert_eq!(triple.counterterm, pair.negative);
    assert_eq!(triple.renormalized, pair.positive);
    let back = convolve(&inst, &inverse(&inst, &pair.negative).unwrap(), &pair.positive).unwrap();
    assert!(back.agrees_with(&phi));
    assert_eq!(check_mu_independence(&pair), 0);
}

#[test]
fn graph_rg_report_on_a_reduced_catalog() {
    let dir = std::env::temp_dir().join(format!("renorm-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["bubble", "triangle", "nested2"] {
        std::fs::copy(
            catalog_dir().join(format!("{name}.json")),
            dir.join(format!("{name}.json")),
        )
        .unwrap();
    }
    let inst = GraphInstance::from_catalog(&Catalog::load_dir(&dir).unwrap()).unwrap();
    let ctx = Context::standard();
    let d = inst.max_loops();
    let phi = toy_graph_character(&inst, &ctx, d, 10).unwrap();
    let report = rg_report(&inst, &phi, d).unwrap();
    assert!(report.reconstruction_matches());
    assert!(inst.generators(d).len() >= 5);

    let out = renorm::cli::run([
        "renorm",
        "rg-report",
        "--instance",
        "graphs",
        "--catalog",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("nested2{s0}"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn broken_catalog_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("renorm-bad-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("loose.json"), r#"{"vertices": [], "internalEdges": [[0, 1]]}"#).unwrap();
    assert!(Catalog::load_dir(&dir).is_err());
    let out = renorm::cli::run([
        "renorm",
        "bphz",
        "--instance",
        "graphs",
        "--catalog",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
