use std::io::Write;

use abscon::instance::{load_instance, resolve, InstanceFile};
use abscon::scenarios::load_scenario;
use abscon::CliError;

fn parse(text: &str) -> Result<abscon::instance::Instance, CliError> {
    resolve(InstanceFile::parse(text, "inline")?)
}

#[test]
fn fig1_has_four_members_and_two_sets() {
    let inst = load_scenario("fig1-separation").unwrap();
    assert_eq!(inst.families["H"].len(), 4);
    assert_eq!(inst.member_sets["A"].len(), 2);
    assert_eq!(inst.member_sets["B"].len(), 2);
}

#[test]
fn zero_denominator_is_rejected() {
    let text = r#"{ "name": "t", "domain": { "backend": "grid", "points": ["1/0", 1] } }"#;
    let err = parse(text).unwrap_err();
    assert!(matches!(err, CliError::Parse { .. }), "{err}");
}

#[test]
fn floats_are_rejected() {
    let text = r#"{ "name": "t", "domain": { "backend": "grid", "points": [0.5, 1] } }"#;
    assert!(matches!(parse(text), Err(CliError::Parse { .. })));
}

#[test]
fn parse_errors_carry_a_location() {
    let text = "{ \"name\": \"t\",\n  \"domain\": { \"backend\": \"grid\", \"points\": [0, 1] },\n  \"bogus\": 1 }";
    match parse(text) {
        Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn undefined_family_is_rejected() {
    let text = r#"{
        "name": "t",
        "domain": { "backend": "grid", "points": [0, 1] },
        "functions": { "f": { "expr": "x" } },
        "checks": [{ "check": "subdifferential", "function": "f", "family": "L", "at": 0 }]
    }"#;
    match parse(text) {
        Err(CliError::Unresolved { kind, name }) => assert_eq!((kind, name.as_str()), ("family", "L")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn names_are_unique_across_kinds() {
    let text = r#"{
        "name": "t",
        "domain": { "backend": "grid", "points": [0, 1] },
        "families": { "f": ["x"] },
        "functions": { "f": { "expr": "x" } }
    }"#;
    assert!(matches!(parse(text), Err(CliError::DuplicateName(n)) if n == "f"));
    let twice = r#"{ "name": "t", "domain": { "backend": "real_line" }, "families": { "L": ["x"], "L": ["0"] } }"#;
    assert!(matches!(parse(twice), Err(CliError::Parse { .. })));
}

#[test]
fn self_reference_is_rejected() {
    let text = r#"{
        "name": "t",
        "domain": { "backend": "grid", "points": [0, 1] },
        "families": { "L": ["x"] },
        "functions": { "f": { "hull": { "function": "f", "family": "L" } } }
    }"#;
    assert!(matches!(parse(text), Err(CliError::Invalid(_))));
}

#[test]
fn derived_families_and_tables_resolve() {
    let text = r#"{
        "name": "t",
        "domain": { "backend": "grid", "points": [-1, 0, 1] },
        "families": {
            "L": ["-x", "0", "x"],
            "P": { "pin": { "family": "L", "at": 1 } },
            "S": { "sum": ["L", "L"] },
            "U": { "union": ["L", "P"] }
        },
        "functions": { "t": { "table": [1, "inf", "1/2"] } },
        "point_sets": { "C": { "points": [0, 1] } },
        "member_sets": { "M": { "family": "L", "members": ["x", "0"] } }
    }"#;
    let inst = parse(text).unwrap();
    assert_eq!(inst.families["S"].len(), 5);
    assert_eq!(inst.families["P"].len(), 3);
    // P = {1 - x, 0, x - 1} shares the zero member with L.
    assert_eq!(inst.families["U"].len(), 5);
    assert_eq!(inst.member_sets["M"].len(), 2);
}

#[test]
fn files_load_from_disk() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(include_bytes!("../scenarios/sum-rule.json")).unwrap();
    let inst = load_instance(file.path()).unwrap();
    assert_eq!(inst.name, "sum-rule");
    assert!(matches!(load_instance(std::path::Path::new("/no/such/file.json")), Err(CliError::Io { .. })));
}
