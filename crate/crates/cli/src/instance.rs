//! Instance files: a JSON document naming a domain, families, functions,
//! member and point sets, maps, parameters and a list of checks.
//!
//! Rationals are exact: strings `"p/q"` or JSON integers. Floats are
//! rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;
use std::sync::Arc;

use abscon_core::domain::{Domain, Point, PointSet};
use abscon_core::family::{FunctionFamily, MemberSet, PointMap};
use abscon_core::function::{ElementaryFunction, TargetFunction, TargetValues};
use abscon_core::hull::envelope;
use abscon_core::calculus::abstract_hull;
use abscon_core::numeric::rational::parse_rational;
use abscon_core::numeric::{int, ExtReal, IntervalSet, Rational};
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::checks::CheckSpec;
use crate::error::{CliError, Result};

/// An exact rational read from a string or an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rational);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Num, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Num, E> {
                parse_rational(s).map(Num).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
                Ok(Num(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// A table entry: a rational or `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry(pub ExtReal);

impl<'de> Deserialize<'de> for TableEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<TableEntry, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = TableEntry;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational or \"inf\"")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<TableEntry, E> {
                match s.trim() {
                    "inf" | "+inf" => Ok(TableEntry(ExtReal::PosInf)),
                    t => parse_rational(t).map(|r| TableEntry(ExtReal::Finite(r))).map_err(E::custom),
                }
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<TableEntry, E> {
                Ok(TableEntry(ExtReal::Finite(int(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<TableEntry, E> {
                Ok(TableEntry(ExtReal::Finite(Rational::from_integer(v.into()))))
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for TableEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// A point: one rational, or a list of coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpec(pub Vec<Rational>);

impl<'de> Deserialize<'de> for PointSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<PointSpec, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PointSpec;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational or a list of rational coordinates")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<PointSpec, E> {
                parse_rational(s).map(|r| PointSpec(vec![r])).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<PointSpec, E> {
                Ok(PointSpec(vec![int(v)]))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<PointSpec, E> {
                Ok(PointSpec(vec![Rational::from_integer(v.into())]))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<PointSpec, A::Error> {
                let mut coords = Vec::new();
                while let Some(Num(r)) = seq.next_element()? {
                    coords.push(r);
                }
                Ok(PointSpec(coords))
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for PointSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.as_slice() {
            [x] => s.serialize_str(&x.to_string()),
            coords => s.collect_seq(coords.iter().map(|c| c.to_string())),
        }
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [x] => write!(f, "{x}"),
            coords => {
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// A JSON object whose keys must be distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueMap<V>(pub BTreeMap<String, V>);

impl<V> Default for UniqueMap<V> {
    fn default() -> Self {
        UniqueMap(BTreeMap::new())
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<UniqueMap<V>, D::Error> {
        struct Vis<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for Vis<V> {
            type Value = UniqueMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with distinct keys")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<UniqueMap<V>, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = map.next_entry::<String, V>()? {
                    if out.contains_key(&k) {
                        return Err(de::Error::custom(format!("name `{k}` is declared twice")));
                    }
                    out.insert(k, v);
                }
                Ok(UniqueMap(out))
            }
        }
        d.deserialize_map(Vis(PhantomData))
    }
}

impl<V: Serialize> Serialize for UniqueMap<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    RealLine,
    /// Points of the line.
    Grid { points: Vec<Num> },
    /// Points of `ℝ^dim`.
    Finite { dim: usize, points: Vec<PointSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Members(Vec<String>),
    Derived(DerivedFamily),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum DerivedFamily {
    /// `{l - l(at)}`.
    Pin { family: String, at: PointSpec },
    Sum([String; 2]),
    Union([String; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    Expr(String),
    /// The envelope of a named member set.
    Envelope(String),
    /// Values at the domain points, in declaration order.
    Table(Vec<TableEntry>),
    /// The indicator of a named point set.
    Indicator(String),
    /// The hull over all vertical shifts of a family.
    Hull { function: String, family: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberSetSpec {
    pub family: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum PointSetSpec {
    Points(Vec<PointSpec>),
    /// Interval notation, e.g. `"[-1, 1] U (2, +inf)"`.
    Intervals(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: DomainSpec,
    /// The image of each source point, as a point of the instance domain.
    pub images: Vec<PointSpec>,
}

/// Defaults for the parameters of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Num>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c_samples: Vec<Num>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub domain: DomainSpec,
    #[serde(default)]
    pub families: UniqueMap<FamilySpec>,
    #[serde(default)]
    pub functions: UniqueMap<FunctionSpec>,
    #[serde(default)]
    pub member_sets: UniqueMap<MemberSetSpec>,
    #[serde(default)]
    pub point_sets: UniqueMap<PointSetSpec>,
    #[serde(default)]
    pub maps: UniqueMap<MapSpec>,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

impl InstanceFile {
    pub fn parse(text: &str, origin: &str) -> Result<InstanceFile> {
        serde_json::from_str(text).map_err(|e| CliError::from_json(origin, e))
    }
}

/// A fully resolved instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub description: String,
    pub domain: Arc<Domain>,
    pub families: BTreeMap<String, Arc<FunctionFamily>>,
    pub functions: BTreeMap<String, TargetFunction>,
    pub member_sets: BTreeMap<String, MemberSet>,
    pub point_sets: BTreeMap<String, PointSet>,
    pub maps: BTreeMap<String, PointMap>,
    pub parameters: Parameters,
    pub checks: Vec<CheckSpec>,
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    resolve(InstanceFile::parse(&text, &shown)?)
}

pub fn build_domain(spec: &DomainSpec) -> Result<Arc<Domain>> {
    let domain = match spec {
        DomainSpec::RealLine => Domain::RealLine,
        DomainSpec::Grid { points } => Domain::grid(points.iter().map(|n| n.0.clone()).collect()).map_err(CliError::core("domain"))?,
        DomainSpec::Finite { dim, points } => {
            Domain::finite(*dim, points.iter().map(|p| p.0.clone()).collect()).map_err(CliError::core("domain"))?
        }
    };
    Ok(Arc::new(domain))
}

pub fn locate(domain: &Domain, p: &PointSpec) -> Result<Point> {
    domain
        .locate(&p.0)
        .ok_or_else(|| CliError::Unresolved { kind: "point", name: p.to_string() })
}

/// Resolves every declaration; references may appear in any order.
pub fn resolve(file: InstanceFile) -> Result<Instance> {
    let mut names = BTreeSet::new();
    let declared = file
        .families
        .0
        .keys()
        .chain(file.functions.0.keys())
        .chain(file.member_sets.0.keys())
        .chain(file.point_sets.0.keys())
        .chain(file.maps.0.keys());
    for name in declared {
        if !names.insert(name.clone()) {
            return Err(CliError::DuplicateName(name.clone()));
        }
    }
    let domain = build_domain(&file.domain)?;
    let mut r = Resolver { file: &file, domain: domain.clone(), instance: Default::default(), pending: BTreeSet::new() };
    for name in file.families.0.keys() {
        r.family(name)?;
    }
    for name in file.point_sets.0.keys() {
        r.point_set(name)?;
    }
    for name in file.member_sets.0.keys() {
        r.member_set(name)?;
    }
    for name in file.functions.0.keys() {
        r.function(name)?;
    }
    for (name, spec) in &file.maps.0 {
        let source = build_domain(&spec.source)?;
        let coords: Vec<Vec<Rational>> = spec.images.iter().map(|p| p.0.clone()).collect();
        let map = PointMap::from_coords(source, domain.clone(), &coords).map_err(CliError::core(format!("map `{name}`")))?;
        r.instance.maps.insert(name.clone(), map);
    }
    for check in &file.checks {
        check.validate(&r.instance)?;
    }
    let Resolved { families, functions, member_sets, point_sets, maps } = r.instance;
    Ok(Instance {
        name: file.name.clone(),
        description: file.description.clone(),
        domain,
        families,
        functions,
        member_sets,
        point_sets,
        maps,
        parameters: file.parameters.clone(),
        checks: file.checks.clone(),
    })
}

/// The resolved declarations, used while resolving and validating.
#[derive(Debug, Default)]
pub struct Resolved {
    pub families: BTreeMap<String, Arc<FunctionFamily>>,
    pub functions: BTreeMap<String, TargetFunction>,
    pub member_sets: BTreeMap<String, MemberSet>,
    pub point_sets: BTreeMap<String, PointSet>,
    pub maps: BTreeMap<String, PointMap>,
}

struct Resolver<'a> {
    file: &'a InstanceFile,
    domain: Arc<Domain>,
    instance: Resolved,
    pending: BTreeSet<String>,
}

impl Resolver<'_> {
    fn enter(&mut self, name: &str) -> Result<()> {
        if !self.pending.insert(name.to_string()) {
            return Err(CliError::Invalid(format!("`{name}` is defined in terms of itself")));
        }
        Ok(())
    }

    fn family(&mut self, name: &str) -> Result<Arc<FunctionFamily>> {
        if let Some(f) = self.instance.families.get(name) {
            return Ok(f.clone());
        }
        let spec = self.file.families.0.get(name).ok_or_else(|| CliError::Unresolved { kind: "family", name: name.into() })?;
        self.enter(name)?;
        let context = format!("family `{name}`");
        let family = match spec {
            FamilySpec::Members(exprs) => FunctionFamily::parse(self.domain.clone(), exprs).map_err(CliError::core(context))?,
            FamilySpec::Derived(DerivedFamily::Pin { family, at }) => {
                let base = self.family(family)?;
                let p = locate(&self.domain, at)?;
                base.pin(&p).map_err(CliError::core(context))?
            }
            FamilySpec::Derived(DerivedFamily::Sum([a, b])) => {
                let (a, b) = (self.family(a)?, self.family(b)?);
                FunctionFamily::sum(&a, &b).map_err(CliError::core(context))?
            }
            FamilySpec::Derived(DerivedFamily::Union([a, b])) => {
                let (a, b) = (self.family(a)?, self.family(b)?);
                a.union(&b).map_err(CliError::core(context))?
            }
        };
        let family = Arc::new(family);
        self.pending.remove(name);
        self.instance.families.insert(name.to_string(), family.clone());
        Ok(family)
    }

    fn point_set(&mut self, name: &str) -> Result<PointSet> {
        if let Some(s) = self.instance.point_sets.get(name) {
            return Ok(s.clone());
        }
        let spec = self.file.point_sets.0.get(name).ok_or_else(|| CliError::Unresolved { kind: "point set", name: name.into() })?;
        let set = match (spec, &*self.domain) {
            (PointSetSpec::Points(ps), Domain::Finite(_)) => {
                let mut idx = BTreeSet::new();
                for p in ps {
                    idx.insert(locate(&self.domain, p)?.grid_index().expect("finite domain"));
                }
                PointSet::Grid(idx)
            }
            (PointSetSpec::Intervals(text), Domain::RealLine) => {
                PointSet::Line(text.parse::<IntervalSet>().map_err(CliError::core(format!("point set `{name}`")))?)
            }
            _ => return Err(CliError::Invalid(format!("point set `{name}` does not fit the domain backend"))),
        };
        self.instance.point_sets.insert(name.to_string(), set.clone());
        Ok(set)
    }

    fn member_set(&mut self, name: &str) -> Result<MemberSet> {
        if let Some(s) = self.instance.member_sets.get(name) {
            return Ok(s.clone());
        }
        let spec = self.file.member_sets.0.get(name).ok_or_else(|| CliError::Unresolved { kind: "member set", name: name.into() })?;
        let family = self.family(&spec.family)?;
        let mut idx = BTreeSet::new();
        for text in &spec.members {
            idx.insert(member_index(&family, text)?);
        }
        let set = MemberSet::new(family, idx).map_err(CliError::core(format!("member set `{name}`")))?;
        self.instance.member_sets.insert(name.to_string(), set.clone());
        Ok(set)
    }

    fn function(&mut self, name: &str) -> Result<TargetFunction> {
        if let Some(f) = self.instance.functions.get(name) {
            return Ok(f.clone());
        }
        let spec = self.file.functions.0.get(name).ok_or_else(|| CliError::Unresolved { kind: "function", name: name.into() })?;
        self.enter(name)?;
        let context = format!("function `{name}`");
        let f = match spec {
            FunctionSpec::Expr(text) => TargetFunction::parse(text, self.domain.clone()).map_err(CliError::core(context))?,
            FunctionSpec::Envelope(set) => envelope(&self.member_set(set)?),
            FunctionSpec::Table(values) => {
                let values = values.iter().map(|v| v.0.clone()).collect();
                TargetFunction::new(self.domain.clone(), TargetValues::Table(values)).map_err(CliError::core(context))?
            }
            FunctionSpec::Indicator(set) => match self.point_set(set)? {
                PointSet::Grid(idx) => TargetFunction::indicator(self.domain.clone(), &idx).map_err(CliError::core(context))?,
                PointSet::Line(_) => return Err(CliError::Invalid(format!("{context}: indicators need a finite domain"))),
            },
            FunctionSpec::Hull { function, family } => {
                let (g, l) = (self.function(function)?, self.family(family)?);
                abstract_hull(&g, &l).map_err(CliError::core(context))?
            }
        };
        self.pending.remove(name);
        self.instance.functions.insert(name.to_string(), f.clone());
        Ok(f)
    }
}

/// The index of the member of `family` equal to the expression.
pub fn member_index(family: &FunctionFamily, text: &str) -> Result<usize> {
    let e = ElementaryFunction::parse(text, family.domain()).map_err(CliError::core(format!("member `{text}`")))?;
    family
        .index_of(e.form())
        .ok_or_else(|| CliError::Unresolved { kind: "member", name: text.to_string() })
}
