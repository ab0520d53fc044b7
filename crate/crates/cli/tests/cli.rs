use std::io::Write;
use std::process::Command;

use artin_cli::json::*;
use artin_cli::{run, Cli, CliError, Output};
use artin_core::homology::{h1_of_artin, h2_fast, homology_at, AbelianGroup};
use artin_core::modeltheory::{distinguish_irreducible, retract_obstruction, torsion_profile};
use artin_core::{build_complex, classify, preset_graph, CoxeterType};
use clap::Parser;

fn invoke(args: &[&str]) -> Result<Output, CliError> {
    let mut argv = vec!["artin"];
    argv.extend_from_slice(args);
    run(&Cli::try_parse_from(argv).expect("valid arguments"))
}

fn stdout(args: &[&str]) -> String {
    invoke(args).unwrap().stdout
}

fn ty(s: &str) -> CoxeterType {
    s.parse().unwrap()
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_artin")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn documented_invocations() {
    let (code, out, _) = binary(&["h2", "~D4"]);
    assert_eq!((code, out.trim()), (0, "(Z/2)^6"));
    let (code, out, _) = binary(&["homology", "--degree", "2", "~A2"]);
    assert_eq!((code, out.trim()), (0, "Z"));
    let (code, _, err) = binary(&["h2", "B3"]);
    assert_eq!(code, 1);
    assert!(err.contains("B3") && err.contains("not simply laced"), "{err}");
}

#[test]
fn exit_codes_separate_input_and_domain_errors() {
    assert_eq!(binary(&["h2", "Q7"]).0, 2);
    assert_eq!(binary(&["classify", "A3+"]).0, 2);
    assert_eq!(binary(&["torsion", "~A3"]).0, 1);
    assert_eq!(binary(&["poincare", "~E6"]).0, 1);
    assert_eq!(binary(&["homology", "~A2"]).0, 2);
    assert_eq!(binary(&["classify"]).0, 2);
    assert_eq!(binary(&["h1", "--file", "/nonexistent/graph.txt"]).0, 2);
    assert_eq!(binary(&["retract", "~A5", "A5"]).0, 1);
    assert_eq!(binary(&["distinguish", "A3", "~A3"]).0, 1);
}

#[test]
fn text_output_matches_library() {
    for p in ["A3+B2", "~D5", "E8+I2(7)", "~A1+A1", "H4"] {
        let g = preset_graph(p).unwrap();
        assert_eq!(stdout(&["classify", p]), classify(&g).to_string());
        assert_eq!(stdout(&["h1", p]), h1_of_artin(&g).to_string());
        let h2 = homology_at(&build_complex(&g, 2).unwrap(), 2).unwrap();
        assert_eq!(stdout(&["homology", "--degree", "2", p]), h2.to_string());
    }
    for p in ["~A6", "~E7", "D5", "A2"] {
        let g = preset_graph(p).unwrap();
        assert_eq!(stdout(&["h2", p]), h2_fast(&g).unwrap().to_string());
    }
    for p in ["E7", "D7", "I2(9)", "A1"] {
        assert_eq!(stdout(&["torsion", p]), torsion_profile(&ty(p)).unwrap().to_string());
    }
}

#[test]
fn json_output_matches_library_and_round_trips() {
    let g = preset_graph("~D4").unwrap();
    let text = stdout(&["--format", "json", "h2", "~D4"]);
    let parsed: GroupJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.to_group().unwrap(), h2_fast(&g).unwrap());
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text);

    let text = stdout(&["--format", "json", "homology", "--degree", "1", "~A1"]);
    let parsed: HomologyJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.group.to_group().unwrap(), "Z^2".parse::<AbelianGroup>().unwrap());
    assert!(parsed.unconditional);

    let text = stdout(&["--format", "json", "distinguish", "D6", "H3"]);
    let parsed: CertificateJson = serde_json::from_str(&text).unwrap();
    let direct = distinguish_irreducible(&ty("D6"), &ty("H3")).unwrap();
    assert_eq!(parsed, CertificateJson::from(&direct));
    assert_eq!(parsed.verdict, "Distinguished");
    assert_eq!(parsed.method.as_deref(), Some("Abelianization"));
    assert_eq!(parsed.witness, WitnessJson::CyclicOrders { first: 30, second: 15 });

    let text = stdout(&["--format", "json", "retract", "~D5", "~A2"]);
    let parsed: RetractJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, RetractJson::from(&retract_obstruction(&ty("~D5"), &ty("~A2")).unwrap()));

    let text = stdout(&["--format", "json", "eqe-affine", "~A4", "~A7"]);
    let parsed: DecisionJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.decision, "NotEquivalent");
    assert_eq!(
        parsed.certificate,
        Some(EqeCertificateJson::RankMismatch { first: 4, second: 7 })
    );

    let text = stdout(&["--format", "json", "classify", "A3+B2"]);
    let parsed: ClassifyJson = serde_json::from_str(&text).unwrap();
    let types: Vec<&str> = parsed.components.iter().map(|c| c.ty.as_str()).collect();
    assert_eq!(types, ["A3", "B2"]);
    assert!(parsed.spherical);
}

#[test]
fn complex_dump_schema() {
    let text = stdout(&["--format", "json", "complex", "--degree", "1", "A2"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let degrees = value["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 3);
    for d in degrees {
        assert!(d["k"].is_u64() && d["basis"].is_array() && d["boundary"].is_array());
    }
    let parsed: ComplexJson = serde_json::from_str(&text).unwrap();
    let direct = build_complex(&preset_graph("A2").unwrap(), 1).unwrap().dump();
    assert_eq!(parsed, ComplexJson::from(&direct));
    assert_eq!(parsed.degrees[2].basis, vec![vec!["s1".to_string(), "s2".to_string()]]);
    assert_eq!(serde_json::to_value(&parsed.degrees[2].boundary).unwrap(), serde_json::json!([[-1], [1]]));
}

#[test]
fn poincare_forms() {
    assert_eq!(
        stdout(&["poincare", "A2+A1"]),
        "(1 + q)^2(1 + q + q^2) = 1 + 3q + 4q^2 + 3q^3 + q^4"
    );
    let text = stdout(&["--format", "json", "poincare", "A3"]);
    let parsed: PoincareJson = serde_json::from_str(&text).unwrap();
    let coeffs: Vec<i64> = parsed.expanded.iter().map(|c| i64::try_from(&c.0).unwrap()).collect();
    assert_eq!(coeffs, [1, 3, 5, 6, 5, 3, 1]);
    assert_eq!(parsed.factors[0].exponents, [1, 2, 3]);
    let order: i64 = coeffs.iter().sum();
    assert_eq!(order, 24);
}

#[test]
fn graph_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# the affine D4 star").unwrap();
    writeln!(f, "vertices: c a b d e").unwrap();
    for leaf in ["a", "b", "d", "e"] {
        writeln!(f, "edge c {leaf} 3").unwrap();
    }
    let path = f.path().to_str().unwrap();
    assert_eq!(stdout(&["--file", path, "classify"]), "~D4");
    assert_eq!(stdout(&["h2", "--file", path]), "(Z/2)^6");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "vertices: a b\nedge a z 3").unwrap();
    let err = invoke(&["--file", bad.path().to_str().unwrap(), "h1"]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("unknown vertex `z`"), "{err}");

    assert_eq!(invoke(&["--file", path, "h1", "A2"]).unwrap_err().exit_code(), 2);
}

#[test]
fn conditional_homology_is_flagged() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "vertices: a b c\nedge a b 4\nedge b c 4\nedge a c 4").unwrap();
    let out = invoke(&["--file", f.path().to_str().unwrap(), "homology", "--degree", "1"]).unwrap();
    assert_eq!(out.stdout, "Z^3");
    assert_eq!(out.warnings.len(), 1);
    assert!(invoke(&["homology", "--degree", "1", "~D5+A3"]).unwrap().warnings.is_empty());
}

#[test]
fn reproduce_report() {
    let out = stdout(&["reproduce"]);
    assert!(out.ends_with("25 checks, 0 mismatches"), "{out}");
    let out = stdout(&["reproduce", "--table", "affine"]);
    assert!(out.ends_with("7 checks, 0 mismatches"), "{out}");
    assert_eq!(out.lines().count(), 8);

    match invoke(&["reproduce", "--inject-mismatch"]) {
        Err(CliError::Mismatch(report)) => assert!(report.ends_with("25 checks, 1 mismatches"), "{report}"),
        other => panic!("expected a mismatch, got {other:?}"),
    }
    let (code, out, _) = binary(&["reproduce", "--table", "torsion", "--inject-mismatch"]);
    assert_eq!(code, 1);
    assert!(out.trim().ends_with("12 checks, 1 mismatches"));

    let text = stdout(&["--format", "json", "reproduce", "--table", "poincare"]);
    let parsed: ReportJson = serde_json::from_str(&text).unwrap();
    assert_eq!((parsed.total, parsed.mismatches), (6, 0));
}

#[test]
fn catalog_lists_templates() {
    let text = stdout(&["--format", "json", "catalog", "--max-rank", "8"]);
    let entries: Vec<CatalogEntryJson> = serde_json::from_str(&text).unwrap();
    let e8 = entries.iter().find(|e| e.ty == "E8").unwrap();
    assert_eq!(e8.order.as_ref().unwrap().0, 696_729_600u64.into());
    let aff = entries.iter().find(|e| e.ty == "~E8").unwrap();
    assert_eq!((aff.vertices, aff.spherical, aff.affine), (9, false, true));
    for e in &entries {
        let g = artin_core::CoxeterGraph::parse(&e.graph).unwrap();
        assert_eq!(classify(&g).to_string(), e.ty);
    }
}

#[test]
fn large_integers_survive_json() {
    let big = BigNum("123456789012345678901234567890".parse().unwrap());
    let text = serde_json::to_string(&big).unwrap();
    assert_eq!(text, "\"123456789012345678901234567890\"");
    assert_eq!(serde_json::from_str::<BigNum>(&text).unwrap(), big);
    assert_eq!(serde_json::to_string(&BigNum((-7).into())).unwrap(), "-7");
}
