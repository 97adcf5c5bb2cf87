#![allow(clippy::approx_constant)]

use xxchain_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("xxchain").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .unwrap()
        .iter()
        .map(str::to_string)
        .collect();
    let rows = reader
        .records()
        .map(|r| {
            r.unwrap()
                .iter()
                .map(|f| f.parse::<f64>().unwrap())
                .collect()
        })
        .collect();
    (header, rows)
}

#[test]
fn crossings_three_sites() {
    let (code, out, _) = invoke(&["crossings", "--n", "3"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["k", "b_k"]);
    let expected = [(1.0, 0.707106781187), (2.0, 0.0), (3.0, -0.707106781187)];
    assert_eq!(rows.len(), 3);
    for (row, (k, b)) in rows.iter().zip(expected) {
        assert_eq!(row[0], k);
        assert!((row[1] - b).abs() < 1e-12);
    }
}

#[test]
fn concurrence_sweep_has_one_row_per_region() {
    let (code, out, _) = invoke(&[
        "concurrence",
        "--n",
        "19",
        "--l",
        "9",
        "--m",
        "10",
        "--sweep",
    ]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["b", "concurrence", "k"]);
    assert_eq!(rows.len(), 20);
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    // both fully polarized regions are unentangled
    assert_eq!(rows[0][1], 0.0);
    assert_eq!(rows[19][1], 0.0);
    assert!(rows.iter().any(|r| r[1] > 0.1));
}

#[test]
fn bulk_nearest_neighbour_concurrence() {
    let (code, out, _) = invoke(&[
        "thermo",
        "--observable",
        "concurrence",
        "--r",
        "1",
        "--b",
        "0",
    ]);
    assert_eq!(code, 0);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    assert!((rows[0][1] - 0.339).abs() < 0.0005, "{}", rows[0][1]);
}

#[test]
fn csv_and_json_carry_identical_bits() {
    let cases: [&[&str]; 4] = [
        &["fidelity", "--n", "12", "--site", "6"],
        &[
            "energy", "--n", "9", "--b-min", "-1.3", "--b-max", "1.3", "--steps", "17",
        ],
        &[
            "corr", "--n", "11", "--b", "0.2", "--kind", "xx", "--l", "2",
        ],
        &[
            "thermo",
            "--observable",
            "xx",
            "--b",
            "0.3",
            "--r",
            "1",
            "--r-max",
            "12",
        ],
    ];
    for args in cases {
        let (code, csv_text, _) = invoke(args);
        assert_eq!(code, 0);
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let (code, json_text, _) = invoke(&json_args);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&json_text).unwrap();
        let (header, rows) = csv_rows(&csv_text);
        assert_eq!(doc["meta"]["columns"], serde_json::json!(header));
        let json_rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), json_rows.len());
        for (c, j) in rows.iter().zip(json_rows) {
            for (x, y) in c.iter().zip(j.as_array().unwrap()) {
                match y.as_f64() {
                    Some(y) => assert_eq!(x.to_bits(), y.to_bits(), "{args:?}"),
                    None => assert!(x.is_infinite(), "{args:?}"),
                }
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["tangle", "--n", "30", "--l", "4", "--format", "json"];
    let first = invoke(&args);
    for _ in 0..3 {
        assert_eq!(invoke(&args), first);
    }
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("xxchain-cli-{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, out, _) = invoke(&["crossings", "--n", "4", "--out", path_str]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, invoke(&["crossings", "--n", "4"]).1);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (code, out, err) = invoke(&["crossings", "--n", "3", "--bogus"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Usage"), "{err}");
}

#[test]
fn domain_errors_name_the_bound() {
    let (code, _, err) = invoke(&["thermo", "--observable", "zz", "--b", "1.5"]);
    assert_eq!(code, 2);
    assert!(err.contains("[-1, 1]"), "{err}");

    let (code, _, err) = invoke(&["validate", "--n-max", "15"]);
    assert_eq!(code, 2);
    assert!(err.contains("14"), "{err}");

    let (code, _, err) = invoke(&["tangle", "--n", "5", "--l", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains('5'), "{err}");
}

#[test]
fn validate_reports_each_check() {
    let (code, out, err) = invoke(&["validate", "--n-max", "5", "--cases-per-region", "2"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header.len(), 11);
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[10] == 1.0));
    assert_eq!(err.lines().filter(|l| l.ends_with("PASS")).count(), 8);
}

#[test]
fn help_documents_crossing_convention() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("strictly above"));
}
