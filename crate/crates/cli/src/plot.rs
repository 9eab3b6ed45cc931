//! Sampled function values as CSV, for plotting.

use abscon_core::domain::{Domain, Point};
use abscon_core::function::{ElementaryFunction, TargetFunction};
use abscon_core::numeric::rational::{format_decimal, parse_rational};
use abscon_core::numeric::{ExtReal, Rational};
use num_traits::Signed;

use crate::error::{CliError, Result};
use crate::instance::Instance;

/// A sampling window `lo..=hi` with a positive step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sampling {
    pub lo: Rational,
    pub hi: Rational,
    pub step: Rational,
}

impl Sampling {
    /// Parses `lo:hi` and a step.
    pub fn parse(range: &str, step: &str) -> Result<Sampling> {
        let (lo, hi) = range.split_once(':').ok_or_else(|| CliError::Invalid(format!("range `{range}` is not `lo:hi`")))?;
        let num = |t: &str| parse_rational(t.trim()).map_err(CliError::core(format!("range `{range}`")));
        let s = Sampling { lo: num(lo)?, hi: num(hi)?, step: parse_rational(step.trim()).map_err(CliError::core("step"))? };
        if !s.step.is_positive() {
            return Err(CliError::Invalid("step must be positive".into()));
        }
        if s.lo > s.hi {
            return Err(CliError::Invalid(format!("empty range `{range}`")));
        }
        Ok(s)
    }

    pub fn points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut x = self.lo.clone();
        while x <= self.hi {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }
}

/// Columns named by a function, a family (one column per member), a
/// member set, or else read as an expression.
fn columns(inst: &Instance, name: &str) -> Result<Vec<(String, TargetFunction)>> {
    let domain = &inst.domain;
    let member = |m: &ElementaryFunction| (m.label().to_string(), TargetFunction::from_form(domain.clone(), m.form()));
    if let Some(f) = inst.functions.get(name) {
        return Ok(vec![(name.to_string(), f.clone())]);
    }
    if let Some(fam) = inst.families.get(name) {
        return Ok(fam.members().iter().map(member).collect());
    }
    if let Some(set) = inst.member_sets.get(name) {
        return Ok(set.members().map(member).collect());
    }
    let f = TargetFunction::parse(name, domain.clone()).map_err(CliError::core(format!("column `{name}`")))?;
    Ok(vec![(name.to_string(), f)])
}

fn cell(v: &ExtReal) -> String {
    match v {
        ExtReal::Finite(r) => format_decimal(r),
        other => other.to_string(),
    }
}

/// CSV with an `x` column and one column per requested function.
pub fn emit_plot_data(inst: &Instance, functions: &[String], sampling: &Sampling) -> Result<String> {
    if !matches!(*inst.domain, Domain::RealLine) {
        return Err(CliError::Invalid("plot data needs the real_line backend".into()));
    }
    let mut cols = Vec::new();
    for name in functions {
        cols.extend(columns(inst, name)?);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Invalid(format!("csv: {e}"));
    if cols.is_empty() {
        // Header only.
        w.write_record(["x"]).map_err(csv_err)?;
    } else {
        let header: Vec<&str> = std::iter::once("x").chain(cols.iter().map(|(n, _)| n.as_str())).collect();
        w.write_record(&header).map_err(csv_err)?;
        for x in sampling.points() {
            let p = Point::Real(x.clone());
            let row: Vec<String> = std::iter::once(format_decimal(&x)).chain(cols.iter().map(|(_, f)| cell(&f.eval(&p)))).collect();
            w.write_record(&row).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
