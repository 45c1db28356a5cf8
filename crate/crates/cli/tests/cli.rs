use std::fs;
use std::str::FromStr;

use rumin_cli::commands::{BggJson, CalculusJson, CohomologyJson, QcJson, RuminReportJson, StripsJson, TruncateJson, ValidateJson};
use rumin_cli::format::{AlgebraFile, PackageFile};
use rumin_cli::run;
use rumin_core::exterior::bgg_fiber;
use rumin_core::tables::StripBound;
use rumin_core::{builtin, Model, Rational};
use tempfile::TempDir;

fn rumin(args: &[&str]) -> rumin_cli::Outcome {
    run(std::iter::once("rumin").chain(args.iter().copied()))
}

#[test]
fn bgg_csv_heisenberg() {
    let o = rumin(&["bgg", "heisenberg:2", "--format", "csv"]);
    assert_eq!(o.code, 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["degree", "weight", "rank"]);
    let rows: Vec<(usize, usize, usize)> = r.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows, [(0, 0, 1), (1, 1, 2), (2, 3, 2), (3, 4, 1)]);
}

#[test]
fn validate_reports_antisymmetry_witness() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(
        &path,
        r#"{"name": "broken", "layers": [2, 1],
            "brackets": [{"a": 1, "b": 2, "terms": [{"k": 3, "c": "1"}]},
                         {"a": 2, "b": 1, "terms": [{"k": 3, "c": "1"}]}]}"#,
    )
    .unwrap();
    let o = rumin(&["algebra", "validate", path.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    let v: ValidateJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v.status, "invalid");
    assert_eq!(v.violations[0].axiom, "antisymmetry");
    assert_eq!(v.violations[0].witness, [1, 2, 3]);
    // The same file is an input error everywhere else.
    assert_eq!(rumin(&["bgg", path.to_str().unwrap()]).code, 2);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let float = dir.path().join("float.json");
    fs::write(&float, r#"{"name": "f", "layers": [2, 1], "brackets": [{"a": 1, "b": 2, "terms": [{"k": 3, "c": 0.5}]}]}"#).unwrap();
    let o = rumin(&["algebra", "validate", float.to_str().unwrap()]);
    assert_eq!(o.code, 2, "{}", o.stderr);
    assert!(o.stderr.contains("exact rational"));
    for args in [
        vec!["bgg", "klein:4"],
        vec!["bgg", "heisenberg:x"],
        vec!["bgg", "nonexistent.json"],
        vec!["truncate", "abelian:4"],
        vec!["calculus", "verify", "abelian:2", "--format", "csv"],
        vec!["strips", "heisenberg:2", "--max-monomials", "0"],
        vec!["strips", "heisenberg:2", "--budget-seconds", "-1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(rumin(&args).code, 2, "{:?}", args);
    }
}

#[test]
fn algebra_show_round_trips() {
    let dir = TempDir::new().unwrap();
    for id in ["abelian:3", "heisenberg:3", "quaternionic:2", "octonionic"] {
        let shown = rumin(&["algebra", "show", id]);
        assert_eq!(shown.code, 0);
        let file: AlgebraFile = serde_json::from_str(&shown.stdout).unwrap();
        let (m, n) = id.split_once(':').unwrap_or((id, "1"));
        assert_eq!(file.to_raw().unwrap(), builtin(Model::parse(m).unwrap(), n.parse().unwrap()).unwrap().to_raw());
        let path = dir.path().join("alg.json");
        fs::write(&path, &shown.stdout).unwrap();
        assert_eq!(rumin(&["algebra", "show", path.to_str().unwrap()]).stdout, shown.stdout);
        assert_eq!(rumin(&["algebra", "validate", path.to_str().unwrap()]).code, 0);
    }
}

#[test]
fn tables_reparse() {
    let alg = builtin(Model::Heisenberg, 3).unwrap();
    let bgg: BggJson = serde_json::from_str(&rumin(&["bgg", "heisenberg:3"]).stdout).unwrap();
    let lib = bgg_fiber(&alg).unwrap();
    assert_eq!(bgg.entries.iter().map(|e| (e.degree, e.weight, e.rank)).collect::<Vec<_>>(),
        lib.entries.iter().map(|e| (e.degree, e.weight, e.rank)).collect::<Vec<_>>());

    let strips: StripsJson = serde_json::from_str(&rumin(&["strips", "heisenberg:3"]).stdout).unwrap();
    for r in &strips.rows {
        let parsed = if r.bound == "inf" { StripBound::Infinite } else { StripBound::Finite(Rational::from_str(&r.bound).unwrap()) };
        assert_eq!(parsed, StripBound::new(strips.homogeneous_dimension, r.weight));
    }
    let csv_out = rumin(&["strips", "heisenberg:3", "--format", "csv"]).stdout;
    let mut reader = csv::Reader::from_reader(csv_out.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["degree", "weight", "rank", "bound_num", "bound_den", "exceptional"]);
    let rows: Vec<(usize, usize, usize, i64, i64, bool)> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), strips.rows.len());
    for (c, j) in rows.iter().zip(&strips.rows) {
        let expected = if c.4 == 0 { "inf".to_string() } else { Rational::new(c.3, c.4).to_string() };
        assert_eq!(expected, j.bound);
    }

    let coh: CohomologyJson = serde_json::from_str(&rumin(&["cohomology", "heisenberg:3", "--pairs", "20"]).stdout).unwrap();
    assert_eq!(coh.betti, [1, 4, 5, 5, 4, 1]);
    assert_eq!(coh.status, "pass");

    let t: TruncateJson = serde_json::from_str(&rumin(&["truncate", "heisenberg:2"]).stdout).unwrap();
    assert_eq!(t.degree_totals, [1, 2, 2]);
    assert!(t.note.contains("not verified"));
}

#[test]
fn calculus_verify_report() {
    let o = rumin(&["calculus", "verify", "heisenberg:2", "--max-poly-degree", "2"]);
    assert_eq!(o.code, 0);
    let r: CalculusJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(r.status, "pass");
    assert_eq!(r.checks.len(), 6);
    assert!(r.budget.is_none());
    let o = rumin(&["calculus", "verify", "heisenberg:3", "--max-monomials", "10"]);
    assert_eq!(o.code, 3);
    let r: CalculusJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(r.status, "interrupted");
    assert!(r.budget.is_some());
}

#[test]
fn rumin_package_round_trip_and_tamper() {
    let dir = TempDir::new().unwrap();
    let pkg = dir.path().join("pkg.json");
    let o = rumin(&["rumin", "build", "heisenberg:2", "--max-poly-degree", "2", "--out", pkg.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let built: RuminReportJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(built.status, "pass");

    let text = fs::read_to_string(&pkg).unwrap();
    let file: PackageFile = serde_json::from_str(&text).unwrap();
    assert_eq!(PackageFile::from_package(&file.to_package().unwrap()), file);

    let o = rumin(&["rumin", "verify", pkg.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let verified: RuminReportJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(verified, built);

    // Scale one q column: the identity suite must now fail with a witness.
    let mut bad = file.clone();
    let col = bad.q.iter_mut().find(|c| !c.image.is_empty()).unwrap();
    col.image[0].c = format!("{}", Rational::from_str(&col.image[0].c).unwrap() * Rational::from(2));
    let bad_path = dir.path().join("bad.json");
    fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let o = rumin(&["rumin", "verify", bad_path.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    let r: RuminReportJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(r.status, "fail");
    assert!(r.checks.iter().any(|c| c.status == "fail" && c.counterexample.is_some()));
}

#[test]
fn rumin_build_budget_marker() {
    let o = rumin(&["rumin", "build", "heisenberg:3", "--max-monomials", "50"]);
    assert_eq!(o.code, 3);
    let r: RuminReportJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(r.status, "interrupted");
    assert!(r.budget.unwrap().contains("limit"));
    let o = rumin(&["bgg", "octonionic", "--max-monomials", "1000"]);
    assert_eq!(o.code, 3);
    assert!(o.stdout.contains("\"budget\""));
}

#[test]
fn qc_check_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("m.json");
    // theta_2 followed by 1 + ad(e1) on heisenberg(2).
    fs::write(
        &path,
        r#"{"algebra": "heisenberg:2", "matrix": [["2","0","0"],["0","2","0"],["0","2","4"]]}"#,
    )
    .unwrap();
    let o = rumin(&["qc-check", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r: QcJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(r.decision, "yes");
    assert_eq!(r.t, Some(serde_json::json!("2")));
    assert_eq!(r.y, Some(vec![serde_json::json!("1"), serde_json::json!("0"), serde_json::json!("0")]));

    fs::write(
        &path,
        r#"{"algebra": {"name": "h", "layers": [2, 1], "brackets": [{"a": 1, "b": 2, "terms": [{"k": 3, "c": "1"}]}]},
            "matrix": [["1","0","1/2"],["0","1","0"],["0","0","1"]]}"#,
    )
    .unwrap();
    let r: QcJson = serde_json::from_str(&rumin(&["qc-check", path.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(r.decision, "no");
    assert!(r.obstruction.unwrap().contains("layer-2 to layer-1"));
}
