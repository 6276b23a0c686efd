//! The `gb`, `bound` and `solve` commands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use almostcover::bounds::{cor_bounds, counting_lower_bound, cube_counting_lower_bound, BoundReport};
use almostcover::cover::{ac_numbers, CoverContext, CoverMode, CoverSolution, DEFAULT_BUDGET};
use almostcover::families::{generate, symmetry_generators, FamilySpec};
use almostcover::vanishing::buchberger_moller;
use almostcover::{Error, FieldSpec, PointSet};
use serde_json::{json, Map, Value};

use crate::pointfile::parse_point_set;
use crate::report::ReportDocument;

/// Exit code for usage and parse errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for internal invariant violations.
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVARIANT, message: message.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::DimensionMismatch { .. }
            | Error::DuplicatePoint(_)
            | Error::Empty
            | Error::PointNotInSet(_)
            | Error::InvalidArgument(_)
            | Error::NoDeclaredSymmetry(_)
            | Error::TooManyPoints(_)
            | Error::FieldMismatch(..)
            | Error::Parse(_) => CliError::usage(e.to_string()),
            _ => CliError::invariant(e.to_string()),
        }
    }
}

/// A point set together with where it came from.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub set: PointSet,
    pub label: String,
    pub family: Option<FamilySpec>,
}

pub fn load(file: Option<&Path>, family: Option<&str>, field: Option<FieldSpec>) -> Result<Loaded, CliError> {
    match (file, family) {
        (Some(_), Some(_)) => Err(CliError::usage("give either an input file or --family, not both")),
        (None, None) => Err(CliError::usage("missing input: give a point-set file or --family")),
        (None, Some(text)) => {
            let spec = FamilySpec::parse(text, field)?;
            let set = generate(&spec)?;
            Ok(Loaded { set, label: format!("family:{spec}"), family: Some(spec) })
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let set = parse_point_set(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            if let Some(f) = field {
                if f != set.field() {
                    return Err(CliError::usage(format!("--field {f} conflicts with `field {}` in the file", set.field())));
                }
            }
            Ok(Loaded { set, label: PathBuf::from(path).display().to_string(), family: None })
        }
    }
}

fn document(command: &str, input: &Loaded, results: Value) -> ReportDocument {
    ReportDocument::new(command, &input.label, &input.set.field().to_string(), Some(input.set.dim()), results)
}

fn check_point(input: &Loaded, idx: usize) -> Result<(), CliError> {
    if idx >= input.set.len() {
        return Err(CliError::usage(format!("point index {idx} out of range (0..{})", input.set.len())));
    }
    Ok(())
}

pub fn gb(input: &Loaded) -> Result<ReportDocument, CliError> {
    let started = Instant::now();
    let g = buchberger_moller(&input.set)?;
    if g.sm().len() != input.set.len() {
        return Err(CliError::invariant(format!(
            "{} standard monomials for {} points",
            g.sm().len(),
            input.set.len()
        )));
    }
    let results = json!({
        "points": input.set.len().to_string(),
        "basis": g.basis().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "sm": g.sm().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "max_sm_degree": g.max_sm_degree().to_string(),
    });
    let mut doc = document("gb", input, results);
    doc.record_timing("groebner", started);
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BoundSelection {
    Count,
    Cube,
    Cert,
    All,
}

fn bound_json(r: &BoundReport) -> Value {
    let mut obj = Map::new();
    obj.insert("method".into(), r.method.name().into());
    obj.insert("value".into(), r.value.to_string().into());
    if let Some(p) = &r.certificate_point {
        obj.insert("point".into(), p.to_string().into());
    }
    let details: Map<String, Value> = r.details.iter().map(|(k, v)| (k.clone(), v.to_string().into())).collect();
    obj.insert("details".into(), details.into());
    Value::Object(obj)
}

pub fn bound(input: &Loaded, method: BoundSelection, point: Option<usize>) -> Result<ReportDocument, CliError> {
    let started = Instant::now();
    let set = &input.set;
    let n = u32::try_from(set.dim()).map_err(|_| CliError::usage("dimension too large"))?;
    let size = set.len() as u64;
    if let Some(i) = point {
        check_point(input, i)?;
    }
    let zero_one = set.is_zero_one();
    if method == BoundSelection::Cube && !zero_one {
        return Err(CliError::usage("the cube counting bound needs a 0-1 point set"));
    }
    let mut reports = Vec::new();
    let mut count = None;
    let mut cube = None;
    let mut cert = None;
    if matches!(method, BoundSelection::Count | BoundSelection::All) {
        let r = counting_lower_bound(n, size)?;
        count = Some(r.value);
        reports.push(r);
    }
    if matches!(method, BoundSelection::Cube) || (method == BoundSelection::All && zero_one) {
        let r = cube_counting_lower_bound(n, size)?;
        cube = Some(r.value);
        reports.push(r);
    }
    if matches!(method, BoundSelection::Cert | BoundSelection::All) {
        let g = buchberger_moller(set)?;
        let v = point.map(|i| &set.points()[i]);
        let r = g.certificate_lower_bound(v)?;
        cert = Some(r.value);
        reports.push(r);
    }
    let mut results = Map::new();
    if method == BoundSelection::All {
        let cor = cor_bounds(n, size)?;
        reports.extend(cor.reports(n));
        // Each bound in the chain must not exceed the next one.
        let chain: Vec<u64> = [Some(cor.cor_e_bound), count, cube, cert].into_iter().flatten().collect();
        let holds = chain.windows(2).all(|w| w[0] <= w[1]);
        let names: Vec<&str> = ["cor_e", "count"]
            .into_iter()
            .chain(cube.map(|_| "cube_count"))
            .chain(["certificate"])
            .collect();
        results.insert("chain".into(), names.join(" <= ").into());
        results.insert("chain_holds".into(), holds.into());
        if !holds {
            return Err(CliError::invariant(format!("bound ordering violated: {chain:?}")));
        }
    }
    results.insert("bounds".into(), reports.iter().map(bound_json).collect::<Vec<_>>().into());
    let mut doc = document("bound", input, Value::Object(results));
    doc.record_timing("bounds", started);
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveTarget {
    Point(usize),
    All,
}

fn solution_json(set: &PointSet, idx: usize, s: &CoverSolution) -> Value {
    json!({
        "index": idx.to_string(),
        "point": set.points()[idx].to_string(),
        "size": s.size.to_string(),
        "lower_bound": s.lower_bound_used.to_string(),
        "nodes": s.nodes.to_string(),
        "optimal": s.optimal,
        "hyperplanes": s.hyperplanes.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    })
}

const BUDGET_WARNING: &str = "search budget exhausted: reported sizes are upper bounds";

pub fn solve(input: &Loaded, target: SolveTarget, budget: Option<u64>) -> Result<ReportDocument, CliError> {
    let set = &input.set;
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let started = Instant::now();
    let (results, optimal) = match target {
        SolveTarget::Point(i) => {
            check_point(input, i)?;
            let ctx = CoverContext::new(set, CoverMode::ClosedSets)?;
            let s = ctx.solve(i, budget)?;
            (solution_json(set, i, &s), s.optimal)
        }
        SolveTarget::All => {
            let gens = match &input.family {
                Some(spec) => match symmetry_generators(spec) {
                    Ok(g) => Some(g),
                    Err(Error::NoDeclaredSymmetry(_)) => None,
                    Err(e) => return Err(e.into()),
                },
                None => None,
            };
            let ac = ac_numbers(set, gens.as_deref(), Some(budget))?;
            let per_point: Vec<Value> = ac
                .per_point
                .iter()
                .enumerate()
                .map(|(i, v)| json!({"index": i.to_string(), "point": set.points()[i].to_string(), "value": v.to_string()}))
                .collect();
            let mut obj = Map::new();
            obj.insert("AC".into(), ac.ac_max.to_string().into());
            obj.insert("ac".into(), ac.ac_min.to_string().into());
            obj.insert("per_point".into(), per_point.into());
            obj.insert(
                "witnesses".into(),
                ac.solutions.iter().map(|(i, s)| solution_json(set, *i, s)).collect::<Vec<_>>().into(),
            );
            if let Some(o) = &ac.orbits {
                obj.insert("orbits".into(), o.orbits.len().to_string().into());
                obj.insert("transitive".into(), o.is_transitive.into());
            }
            (Value::Object(obj), ac.optimal)
        }
    };
    let mut doc = document("solve", input, results);
    doc.optimal = Some(optimal);
    if !optimal {
        doc.warning = Some(BUDGET_WARNING.into());
    }
    doc.record_timing("solve", started);
    Ok(doc)
}
