//! The built-in scenario catalogue.

use std::path::Path;

use crate::error::{CliError, Result};
use crate::instance::{load_instance, resolve, Instance, InstanceFile};
use crate::report::{run_instance, Report};

/// Built-in scenarios, in catalogue order.
pub const CATALOG: &[(&str, &str)] = &[
    ("fig1-separation", include_str!("../scenarios/fig1-separation.json")),
    ("fig2-maxrule", include_str!("../scenarios/fig2-maxrule.json")),
    ("moreau", include_str!("../scenarios/moreau.json")),
    ("epi-conjugate", include_str!("../scenarios/epi-conjugate.json")),
    ("restriction", include_str!("../scenarios/restriction.json")),
    ("shift-rules", include_str!("../scenarios/shift-rules.json")),
    ("sum-rule", include_str!("../scenarios/sum-rule.json")),
    ("composition", include_str!("../scenarios/composition.json")),
    ("normal-sum", include_str!("../scenarios/normal-sum.json")),
    ("monotone-algebra", include_str!("../scenarios/monotone-algebra.json")),
    ("maximality", include_str!("../scenarios/maximality.json")),
    ("bronsted-rockafellar", include_str!("../scenarios/bronsted-rockafellar.json")),
    ("zero-subgradient", include_str!("../scenarios/zero-subgradient.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

/// A built-in scenario by name, or an instance file by path.
pub fn load_scenario(name_or_path: &str) -> Result<Instance> {
    if let Some((name, text)) = CATALOG.iter().find(|(n, _)| *n == name_or_path) {
        return resolve(InstanceFile::parse(text, name)?);
    }
    let path = Path::new(name_or_path);
    if path.is_file() {
        return load_instance(path);
    }
    Err(CliError::UnknownScenario(name_or_path.to_string()))
}

pub fn run_scenario(name_or_path: &str) -> Result<Report> {
    Ok(run_instance(&load_scenario(name_or_path)?))
}
