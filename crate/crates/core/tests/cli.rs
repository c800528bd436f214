use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use morsekit::cli::run;
use morsekit::complex::SimplicialComplex;
use morsekit::families::connected_oriented_deg3;
use morsekit::io::{read_atlas, read_dgr, read_grad, read_smax, write_atlas, write_dgr, write_grad, write_smax};
use morsekit::reductions::{build_k_full, classic_dunce_hat, modified_dunce_hat, dunce_gradient};
use morsekit::graph::EdgeOrder;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("morsekit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gadget_then_stats() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("d.smax");
    assert_eq!(call(&["gadget", "--out", s(&d)]).0, 0);
    let (code, out, _) = call(&["stats", s(&d)]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "f-vector: 7 19 13"), "{out}");
    assert_eq!(call(&["betti", s(&d)]).1, "betti: 1 0 0\n");
    assert_eq!(call(&["collapse", s(&d)]).0, 0);
}

#[test]
fn single_edge_build_matches_the_gadget() {
    let dir = TempDir::new().unwrap();
    let k = dir.path().join("k.smax");
    assert_eq!(call(&["build-k", s(&data("single_edge.dgr")), "--out", s(&k)]).0, 0);
    let built = read_smax(&fs::read_to_string(&k).unwrap()).unwrap();
    let gadget = modified_dunce_hat();
    assert_eq!(built.f_vector(), gadget.complex().f_vector());
    // up to renaming: strip the edge prefix from every vertex
    let renamed = SimplicialComplex::from_simplices(
        built
            .simplices()
            .iter()
            .map(|x| x.map(|v| morsekit::complex::VertexId::new(v.as_str().rsplit('/').next().unwrap()).unwrap())),
    );
    assert_eq!(&renamed, gadget.complex());
}

#[test]
fn fas_exact_on_the_three_cycle() {
    assert_eq!(call(&["fas-exact", s(&data("c3.dgr"))]).1, "minfas=1\n");
    assert_eq!(call(&["fas-exact", s(&data("path2.dgr"))]).1, "minfas=0\n");
}

#[test]
fn build_witness_verify_pipeline() {
    let dir = TempDir::new().unwrap();
    for (i, g) in connected_oriented_deg3(4).iter().enumerate() {
        let gp = dir.path().join(format!("g{i}.dgr"));
        fs::write(&gp, write_dgr(g)).unwrap();
        let k = dir.path().join(format!("k{i}.smax"));
        let v = dir.path().join(format!("v{i}.grad"));
        assert_eq!(call(&["build-k", s(&gp), "--out", s(&k)]).0, 0);
        assert_eq!(call(&["witness", s(&gp), "--out", s(&v)]).0, 0);
        let (code, out, err) = call(&["verify-gradient", s(&k), s(&v)]);
        assert_eq!(code, 0, "{out}{err}");
        let (code, mapped, _) = call(&["map-solution", s(&gp), s(&v)]);
        assert_eq!(code, 0);
        assert!(read_dgr(&mapped).unwrap().is_acyclic());
        assert_eq!(call(&["audit", s(&gp), "--fuzz", "5", "--jobs", "2"]).0, 0);
    }
}

#[test]
fn the_binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_morsekit");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["erase", s(&data("dunce_hat.smax"))]);
    assert_eq!(ok.status.code(), Some(1));
    let bad = status(&["fas-exact", s(&data("malformed.dgr"))]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
    let good = status(&["fas-exact", s(&data("c3.dgr"))]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&good.stdout), "minfas=1\n");
}

#[test]
fn predicates_use_exit_codes() {
    let dir = TempDir::new().unwrap();
    let dunce = data("dunce_hat.smax");
    assert_eq!(call(&["collapse", s(&dunce)]).0, 1);
    assert_eq!(call(&["erase", s(&dunce)]).0, 1);
    let (code, _, err) = call(&["verify-gradient", s(&dunce), s(&data("malformed.grad"))]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let cyclic = dir.path().join("cyclic.grad");
    fs::write(&cyclic, "{1} -> {1,2}\n{2} -> {2,3}\n{3} -> {1,3}\n").unwrap();
    let (code, _, err) = call(&["verify-gradient", s(&dunce), s(&cyclic)]);
    assert_eq!(code, 1);
    assert!(err.contains("cycle"), "{err}");
    let twice = dir.path().join("twice.grad");
    fs::write(&twice, "{1} -> {1,2}\n{1} -> {1,3}\n").unwrap();
    let (code, _, err) = call(&["verify-gradient", s(&dunce), s(&twice)]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
    let path = dir.path().join("path.smax");
    fs::write(&path, "a b\nb c\n").unwrap();
    assert_eq!(call(&["collapse", s(&path)]).0, 0);
    assert_eq!(call(&["erase", s(&path)]).0, 0);
    assert_eq!(call(&["erase", s(&path), "--seed", "4"]).0, 0);
    assert_eq!(call(&["stats", s(&path), "--no-such-flag"]).0, 2);
}

#[test]
fn orders_and_subgraphs() {
    let dir = TempDir::new().unwrap();
    let g = data("c3_tail.dgr");
    let lex = call(&["build-k", s(&g)]).1;
    let rev = call(&["build-k", s(&g), "--order", "rev"]).1;
    let random = call(&["build-k", s(&g), "--order", "random", "--seed", "5"]).1;
    let f = |t: &str| read_smax(t).unwrap().f_vector();
    assert_eq!(f(&lex), f(&rev));
    assert_eq!(f(&lex), f(&random));
    assert_eq!(random, call(&["build-k", s(&g), "--order", "random", "--seed", "5"]).1);
    let order = dir.path().join("order.txt");
    fs::write(&order, "c d\nc a\nb c\na b\n").unwrap();
    assert_eq!(call(&["build-k", s(&g), "--order", s(&order)]).0, 0);
    fs::write(&order, "c d\nc a\n").unwrap();
    assert_eq!(call(&["build-k", s(&g), "--order", s(&order)]).0, 2);
    let h = dir.path().join("h.dgr");
    fs::write(&h, "a b\nb c\n").unwrap();
    let k = dir.path().join("k.smax");
    assert_eq!(call(&["build-k", s(&g), "--subgraph", s(&h), "--out", s(&k)]).0, 0);
    assert_eq!(call(&["erase", s(&k)]).0, 0);
    let full = dir.path().join("full.smax");
    assert_eq!(call(&["build-k", s(&g), "--out", s(&full)]).0, 0);
    assert_eq!(call(&["erase", s(&full)]).0, 1);
    assert_eq!(call(&["er-exact", s(&full)]).1, "er=1\n");
}

#[test]
fn remaining_subcommands() {
    let dir = TempDir::new().unwrap();
    let g = data("c3.dgr");
    let kt = dir.path().join("kt.smax");
    let atlas = dir.path().join("kt.atlas");
    assert_eq!(call(&["build-k-tilde", s(&g), "--out", s(&kt), "--atlas", s(&atlas)]).0, 0);
    assert_eq!(call(&["betti", s(&kt)]).1, "betti: 1 1 0\n");
    read_atlas(&fs::read_to_string(&atlas).unwrap()).unwrap();
    let tri = dir.path().join("tri.smax");
    fs::write(&tri, "a b c\n").unwrap();
    let big = dir.path().join("big.smax");
    assert_eq!(call(&["amplify", s(&tri), "--c", "2", "--out", s(&big)]).0, 0);
    assert_eq!(read_smax(&fs::read_to_string(&big).unwrap()).unwrap().len(), 43);
    assert_eq!(call(&["amplify", s(&tri), "--c", "0"]).0, 2);
    let v = dir.path().join("v.grad");
    let (code, out, _) = call(&["solve-max", s(&tri), "--out", s(&v)]);
    assert_eq!((code, out.as_str()), (0, "critical=1\nregular=6\n"));
    assert_eq!(call(&["collapse", s(&tri), "--gradient", s(&v)]).0, 0);
    let (code, _, _) = call(&["solve-max", s(&data("dunce_hat.smax")), "--nodes", "1"]);
    assert!(code == 0 || code == 1);
    let mg = dir.path().join("mg.dgr");
    fs::write(&mg, "u v\nv u\nv w\nw w\n").unwrap();
    let (code, f, _) = call(&["omas-f", s(&mg)]);
    assert_eq!(code, 0);
    assert!(f.contains("# antiparallel_pairs=1"));
    assert_eq!(read_dgr(&f).unwrap().edge_count(), 1);
    let a = dir.path().join("a.dgr");
    fs::write(&a, "v w\n").unwrap();
    let (code, lifted, _) = call(&["omas-g", s(&mg), s(&a)]);
    assert_eq!(code, 0);
    let lifted = read_dgr(&lifted).unwrap();
    assert_eq!(lifted.edge_count(), 2);
    assert!(lifted.is_acyclic());
    let (code, audit, _) = call(&["audit", s(&g), "--fuzz", "10", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(audit.ends_with("fuzz_failures=0\n"), "{audit}");
    assert_eq!(call(&["audit", s(&g), "--fuzz", "10", "--seed", "1", "--jobs", "3"]).1, audit);
}

#[test]
fn formats_round_trip() {
    let dunce = read_smax(&fs::read_to_string(data("dunce_hat.smax")).unwrap()).unwrap();
    assert_eq!(dunce, classic_dunce_hat());
    assert_eq!(read_smax(&write_smax(&dunce)).unwrap(), dunce);
    let gadget = modified_dunce_hat();
    let v = dunce_gradient(&gadget);
    let text = write_grad(gadget.complex(), &v);
    let back = read_grad(gadget.complex(), &text).unwrap();
    assert_eq!(back, v);
    assert_eq!(write_grad(gadget.complex(), &back), text);
    for g in connected_oriented_deg3(4) {
        let text = write_dgr(&g);
        assert_eq!(write_dgr(&read_dgr(&text).unwrap()), text);
        let (k, atlas) = build_k_full(&g, &EdgeOrder::lexicographic(&g)).unwrap();
        let a = write_atlas(&atlas);
        assert_eq!(write_atlas(&read_atlas(&a).unwrap()), a);
        let sm = write_smax(&k);
        assert_eq!(write_smax(&read_smax(&sm).unwrap()), sm);
    }
}
