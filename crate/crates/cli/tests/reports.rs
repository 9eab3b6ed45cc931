use abscon::instance::{resolve, InstanceFile};
use abscon::plot::{emit_plot_data, Sampling};
use abscon::report::{run_instance, Report};
use abscon::scenarios::{load_scenario, names, run_scenario};
use abscon_core::numeric::rational::parse_rational;
use abscon_core::numeric::Rational;
use abscon_core::report::Verdict;

#[test]
fn every_builtin_passes_and_is_reproducible() {
    for name in names() {
        let a = run_scenario(name).unwrap();
        assert_eq!(a.status, Verdict::Pass, "{}", a.render_text());
        let b = run_scenario(name).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn reports_round_trip() {
    for name in names() {
        let json = serde_json::to_string_pretty(&run_scenario(name).unwrap()).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }
}

#[test]
fn failures_carry_witnesses() {
    let text = r#"{
        "name": "broken",
        "domain": { "backend": "grid", "points": [-1, 0, 1] },
        "families": { "L": ["-x", "0", "x"] },
        "functions": { "abs": { "expr": "abs(x)" } },
        "checks": [
            { "check": "operator-monotone", "family": "L", "pairs": [[0, "x"], [1, "-x"]] },
            { "check": "moreau", "function": "abs", "family": "L", "at": [0], "expect": { "conclusion": "violated" } },
            { "check": "subdifferential", "function": "abs", "family": "L", "at": 0, "expect": { "error": "never" } }
        ]
    }"#;
    let report = run_instance(&resolve(InstanceFile::parse(text, "inline").unwrap()).unwrap());
    assert_eq!(report.status, Verdict::Fail);
    for entry in &report.checks {
        assert_eq!(entry.status, Verdict::Fail, "{}", entry.name);
        let witnessed = entry.report.as_ref().is_some_and(|r| !r.witnesses.is_empty());
        assert!(witnessed || !entry.mismatches.is_empty(), "{}", entry.name);
    }
    // The monotonicity witness re-verifies: x(0) - x(1) + (-x)(1) - (-x)(0) = -2.
    let w = &report.checks[0].report.as_ref().unwrap().witnesses[0];
    assert_eq!(w.what, "gap -2");
    assert_eq!(w.functions, vec!["x", "-x"]);
    assert_eq!(w.points, vec!["0", "1"]);
}

#[test]
fn fig1_plot_data_has_33_rows_of_5_columns() {
    let inst = load_scenario("fig1-separation").unwrap();
    let csv = emit_plot_data(&inst, &["H".into()], &Sampling::parse("-4:4", "1/4").unwrap()).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 34);
    assert!(rows.iter().all(|r| r.split(',').count() == 5));
    assert_eq!(rows[1], "-4,-3,-1,-2,0");
    assert_eq!(rows[17], "0,1,1,2,0");
}

#[test]
fn empty_function_list_gives_a_header() {
    let inst = load_scenario("fig1-separation").unwrap();
    let csv = emit_plot_data(&inst, &[], &Sampling::parse("-4:4", "1").unwrap()).unwrap();
    assert_eq!(csv, "x\n");
}

#[test]
fn fig2_plot_data_matches_direct_evaluation() {
    let inst = load_scenario("fig2-maxrule").unwrap();
    let csv = emit_plot_data(&inst, &["abs".into(), "max(0, x) - 1".into()], &Sampling::parse("-2:2", "1/3").unwrap()).unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let mut rows = 0;
    for record in reader.records() {
        let record = record.unwrap();
        let x: Rational = decimal(&record[0]);
        let zero = Rational::default();
        assert_eq!(decimal(&record[1]), if x < zero { -x.clone() } else { x.clone() });
        assert_eq!(decimal(&record[2]), if x > zero { x - Rational::from_integer(1.into()) } else { -Rational::from_integer(1.into()) });
        rows += 1;
    }
    assert_eq!(rows, 13);
}

/// Reads `p/q` or a terminating decimal.
fn decimal(text: &str) -> Rational {
    match text.split_once('.') {
        None => parse_rational(text).unwrap(),
        Some((whole, frac)) => {
            let negative = whole.starts_with('-');
            let scale = Rational::from_integer(10u32.pow(frac.len() as u32).into());
            let magnitude = parse_rational(whole.trim_start_matches('-')).unwrap() + parse_rational(frac).unwrap() / scale;
            if negative { -magnitude } else { magnitude }
        }
    }
}
