//! Verification suites: fixed parameter grids checked with exact arithmetic.

use std::time::Instant;

use almostcover::bounds::{
    binomial, check_binomial_inequalities, counting_lower_bound, cube_counting_lower_bound,
};
use almostcover::cover::{ac_numbers, ac_numbers_with, verify_cover, AcNumbers, CoverMode};
use almostcover::families::{generate, sharp_cover_vnk, symmetry_generators, szw_sharp_polynomial, FamilyKind, FamilySpec};
use almostcover::vanishing::buchberger_moller;
use almostcover::{FieldSpec, Point, PointSet};
use serde_json::{json, Value};

use crate::commands::CliError;
use crate::report::ReportDocument;

pub const SUITES: [&str; 7] = ["main", "main2", "main3", "main4", "sharpness", "binomial", "szw"];

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn check(name: String, outcome: Outcome) -> Check {
    match outcome {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn family(text: &str) -> Result<(FamilySpec, PointSet), String> {
    let spec = FamilySpec::parse(text, None).map_err(e)?;
    let set = generate(&spec).map_err(e)?;
    Ok((spec, set))
}

fn exact_ac(set: &PointSet) -> Result<AcNumbers, String> {
    let ac = ac_numbers(set, None, None).map_err(e)?;
    if !ac.optimal {
        return Err("search budget exhausted".into());
    }
    for (i, s) in &ac.solutions {
        if !verify_cover(set, &set.points()[*i], &s.hyperplanes) {
            return Err(format!("witness at point {i} is not an almost cover"));
        }
    }
    Ok(ac)
}

fn default_max_n(suite: &str) -> usize {
    match suite {
        "main" | "szw" => 5,
        "binomial" => 30,
        _ => 4,
    }
}

/// Separating degree `k+1` at every extra vertex of `V(n,k) ∪ {v}`.
fn suite_main(max_n: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=max_n {
        for k in 0..n {
            checks.push(check(format!("V({n},{k},T)"), main_case(n, k)));
        }
    }
    checks
}

fn main_case(n: usize, k: usize) -> Outcome {
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if support.len() <= k {
            continue;
        }
        let t = support.iter().map(|i| i + 1).collect();
        let spec = FamilySpec::rational(FamilyKind::Vnkt { n, k, t }).map_err(e)?;
        let set = generate(&spec).map_err(e)?;
        let coords: Vec<i64> = (0..n).map(|i| i64::from(mask >> i & 1)).collect();
        let v = Point::from_i64(FieldSpec::Rational, &coords);
        let g = buchberger_moller(&set).map_err(e)?;
        let deg = g.separating_degree(&v).map_err(e)? as usize;
        if deg != k + 1 {
            return Err(format!("separating degree {deg} at {v}, expected {}", k + 1));
        }
        let extra: Vec<_> = g.sm().iter().filter(|m| m.degree() as usize > k).collect();
        let ok = extra.len() == 1
            && extra[0].degree() as usize == k + 1
            && extra[0].support().iter().all(|i| support.contains(i));
        if !ok {
            return Err(format!("extra standard monomials at {v} are not a single x_M with M in supp(v)"));
        }
        count += 1;
    }
    Ok(format!("{count} vertices, separating degree {}", k + 1))
}

/// Counting bound versus exact AC on the J(n,q) grid.
fn suite_main2(max_n: usize) -> Vec<Check> {
    [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]
        .into_iter()
        .filter(|&(n, _)| n <= max_n)
        .map(|(n, q)| {
            check(format!("jnq:{n}:{q}"), (|| {
                let (_, set) = family(&format!("jnq:{n}:{q}"))?;
                let bound = counting_lower_bound(n as u32, set.len() as u64).map_err(e)?.value as usize;
                let ac = exact_ac(&set)?.ac_max;
                if bound > ac {
                    return Err(format!("counting bound {bound} exceeds AC {ac}"));
                }
                if bound != q - 1 || ac != q - 1 {
                    return Err(format!("bound {bound}, AC {ac}, expected {}", q - 1));
                }
                Ok(format!("counting bound = AC = {ac}"))
            })())
        })
        .collect()
}

/// Cube counting bound versus exact AC on V(n,k) and the full cube.
fn suite_main3(max_n: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=max_n.min(4) {
        for k in 0..=n {
            let label = if k == n { format!("cube:{n}") } else { format!("vnk:{n}:{k}") };
            checks.push(check(label.clone(), (|| {
                let (_, set) = family(&label)?;
                let bound = cube_counting_lower_bound(n as u32, set.len() as u64).map_err(e)?.value as usize;
                let ac = exact_ac(&set)?.ac_max;
                if bound > ac || ac != k {
                    return Err(format!("cube bound {bound}, AC {ac}, expected AC {k}"));
                }
                if k < n {
                    let size: u64 = (0..=k as i64).map(|i| u64::try_from(binomial(n as i64, i)).unwrap()).sum();
                    let next = cube_counting_lower_bound(n as u32, size + 1).map_err(e)?.value as usize;
                    if next != k + 1 {
                        return Err(format!("cube bound at |V|+1 is {next}, expected {}", k + 1));
                    }
                }
                Ok(format!("cube bound {bound} <= AC {ac}"))
            })()));
        }
    }
    checks
}

/// AC(V, v) is constant when the symmetries act transitively.
fn suite_main4(max_n: usize) -> Vec<Check> {
    let mut labels: Vec<String> = Vec::new();
    labels.extend((3..=max_n.min(4)).map(|n| format!("perm:{n}")));
    labels.extend((1..=max_n.min(4)).map(|n| format!("cube:{n}")));
    labels.extend(
        [(2, 2), (2, 3), (3, 2)].into_iter().filter(|&(n, _)| n <= max_n).map(|(n, q)| format!("ag:{n}:{q}")),
    );
    labels
        .into_iter()
        .map(|label| {
            check(label.clone(), (|| {
                let (spec, set) = family(&label)?;
                let gens = symmetry_generators(&spec).map_err(e)?;
                let reduced = ac_numbers(&set, Some(&gens), None).map_err(e)?;
                if !reduced.orbits.as_ref().is_some_and(|o| o.is_transitive) {
                    return Err("symmetries are not transitive".into());
                }
                let full = exact_ac(&set)?;
                if full.ac_max != full.ac_min {
                    return Err(format!("per-point values not constant: {:?}", full.per_point));
                }
                if full.per_point != reduced.per_point {
                    return Err("orbit-reduced table differs from the full table".into());
                }
                if label.starts_with("ag:") {
                    let ex = ac_numbers_with(&set, None, None, CoverMode::ExhaustiveHyperplanes).map_err(e)?;
                    if ex.per_point != full.per_point {
                        return Err("exhaustive-hyperplane mode disagrees".into());
                    }
                }
                Ok(format!("AC(V, v) = {} for all {} points", full.ac_max, set.len()))
            })())
        })
        .collect()
}

/// Explicit sharp covers and exact AC for V(n,k) and J(n,q).
fn suite_sharpness(max_n: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=max_n.min(4) {
        for k in 0..n {
            checks.push(check(format!("vnk:{n}:{k}"), (|| {
                let (_, set) = family(&format!("vnk:{n}:{k}"))?;
                let origin = Point::from_i64(FieldSpec::Rational, &vec![0; n]);
                let cover = sharp_cover_vnk(n, k, FieldSpec::Rational).map_err(e)?;
                if cover.len() != k || !verify_cover(&set, &origin, &cover) {
                    return Err("explicit cover is not an almost cover of size k".into());
                }
                let ac = exact_ac(&set)?.ac_max;
                if ac != k {
                    return Err(format!("AC = {ac}, expected {k}"));
                }
                Ok(format!("AC = {k}"))
            })()));
        }
    }
    checks.extend(suite_main2(max_n));
    checks
}

fn suite_binomial(max_n: usize) -> Vec<Check> {
    (1..=max_n as i64)
        .map(|n| {
            check(format!("n={n}"), (|| {
                for k in 1..=n {
                    let v = check_binomial_inequalities(n, k).map_err(e)?;
                    if !v.passed() {
                        return Err(format!("k={k}: {v:?}"));
                    }
                }
                Ok(format!("1 <= k <= {n}"))
            })())
        })
        .collect()
}

fn suite_szw(max_n: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=max_n {
        for k in 0..n {
            checks.push(check(format!("n={n} k={k}"), (|| {
                let f = szw_sharp_polynomial(n, k).map_err(e)?;
                let (_, set) = family(&format!("vnk:{n}:{k}"))?;
                let nf = buchberger_moller(&set).map_err(e)?.normal_form(&f).map_err(e)?;
                if !nf.is_zero() {
                    return Err(format!("normal form {nf}"));
                }
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize > k {
                        let c: Vec<i64> = (0..n).map(|i| i64::from(mask >> i & 1)).collect();
                        if f.eval(&Point::from_i64(FieldSpec::Rational, &c)).map_err(e)?.is_zero() {
                            return Err(format!("vanishes at {c:?}"));
                        }
                    }
                }
                Ok(format!("deg {}", f.degree().map_or(-1, i64::from)))
            })()));
        }
    }
    checks
}

pub fn run_checks(suite: &str, max_n: Option<usize>) -> Result<Vec<Check>, CliError> {
    let max_n = max_n.unwrap_or_else(|| default_max_n(suite));
    Ok(match suite {
        "main" => suite_main(max_n),
        "main2" => suite_main2(max_n),
        "main3" => suite_main3(max_n),
        "main4" => suite_main4(max_n),
        "sharpness" => suite_sharpness(max_n),
        "binomial" => suite_binomial(max_n),
        "szw" => suite_szw(max_n),
        other => {
            return Err(CliError::usage(format!("unknown suite `{other}` (known: {})", SUITES.join(", "))));
        }
    })
}

/// Runs a suite; `results.passed` is false if any check failed.
pub fn verify(suite: &str, max_n: Option<usize>) -> Result<ReportDocument, CliError> {
    let started = Instant::now();
    let checks = run_checks(suite, max_n)?;
    let passed = checks.iter().all(|c| c.passed);
    let list: Vec<Value> = checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let results = json!({
        "suite": suite,
        "passed": passed,
        "checks_run": checks.len().to_string(),
        "checks_failed": failed.to_string(),
        "checks": list,
    });
    let field = if suite == "main4" { "mixed" } else { "rational" };
    let mut doc = ReportDocument::new("verify", suite, field, None, results);
    doc.record_timing("suite", started);
    Ok(doc)
}
