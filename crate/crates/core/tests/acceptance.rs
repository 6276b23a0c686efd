//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

mod common;

use std::time::Instant;

use almostcover::bounds::{
    check_binomial_inequalities, cor_bounds, counting_lower_bound, cube_counting_lower_bound, binomial,
};
use almostcover::cover::{ac_numbers, ac_numbers_with, verify_cover, AcNumbers, CoverContext, CoverMode, DEFAULT_BUDGET};
use almostcover::families::{generate, symmetry_generators, szw_sharp_polynomial, FamilyKind, FamilySpec};
use almostcover::poly::Monomial;
use almostcover::vanishing::buchberger_moller;
use almostcover::{FieldSpec, Point, PointSet};
use itertools::Itertools;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_force_min_cover, cube_vectors, random_point_set};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn family(s: &str) -> (FamilySpec, PointSet) {
    let spec = FamilySpec::parse(s, None).expect("valid family");
    let set = generate(&spec).expect("family generates");
    (spec, set)
}

fn q() -> FieldSpec {
    FieldSpec::Rational
}

/// Exact AC data of a family instance, kept for the bound-ordering check.
struct Solved {
    label: String,
    set: PointSet,
    ac: AcNumbers,
}

fn solve_all(label: &str, set: &PointSet) -> Result<Solved, String> {
    let ac = ac_numbers(set, None, None).map_err(|e| format!("{label}: {e}"))?;
    ensure!(ac.optimal, "{label}: search budget exhausted");
    for (i, sol) in &ac.solutions {
        ensure!(
            verify_cover(set, &set.points()[*i], &sol.hyperplanes),
            "{label}: witness at point {i} is not an almost cover"
        );
        ensure!(sol.size == sol.hyperplanes.len(), "{label}: size/witness mismatch");
    }
    Ok(Solved { label: label.to_string(), set: set.clone(), ac })
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for k in 0..n {
            let (_, v) = family(&format!("vnk:{n}:{k}"));
            let sm = buchberger_moller(&v).map_err(|e| e.to_string())?.sm().to_vec();
            let mut expected: Vec<Monomial> = (0..=k)
                .flat_map(|size| (0..n).combinations(size))
                .map(|set| Monomial::square_free(n, &set))
                .collect();
            expected.sort();
            ensure!(sm == expected, "Sm(V({n},{k})) differs from the square-free monomials of degree <= {k}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (n,k) pairs"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for k in 0..n {
            for c in cube_vectors(n) {
                let support: Vec<usize> = (0..n).filter(|&i| c[i] == 1).collect();
                if support.len() <= k {
                    continue;
                }
                let t: Vec<usize> = support.iter().map(|i| i + 1).collect();
                let spec = FamilySpec::rational(FamilyKind::Vnkt { n, k, t }).map_err(|e| e.to_string())?;
                let set = generate(&spec).map_err(|e| e.to_string())?;
                let g = buchberger_moller(&set).map_err(|e| e.to_string())?;
                let v = Point::from_i64(q(), &c);
                let deg = g.separating_degree(&v).map_err(|e| e.to_string())?;
                ensure!(deg as usize == k + 1, "V({n},{k}) + {v}: separating degree {deg}, expected {}", k + 1);
                let extra: Vec<&Monomial> = g.sm().iter().filter(|m| m.degree() as usize > k).collect();
                ensure!(extra.len() == 1, "V({n},{k}) + {v}: {} standard monomials above degree {k}", extra.len());
                let m = extra[0];
                ensure!(
                    m.is_square_free() && m.degree() as usize == k + 1 && m.support().iter().all(|i| support.contains(i)),
                    "V({n},{k}) + {v}: extra standard monomial {m} is not x_M with M in supp(v), |M| = {}",
                    k + 1
                );
                ensure!(g.sm().iter().all(|s| s.is_square_free()), "non-square-free standard monomial");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n,k,v) triples"))
}

fn criterion_3(solved: &mut Vec<Solved>) -> Outcome {
    for n in 1..=4 {
        for k in 0..n {
            let label = format!("vnk:{n}:{k}");
            let (_, v) = family(&label);
            let s = solve_all(&label, &v)?;
            ensure!(s.ac.ac_max == k, "{label}: AC = {}, expected {k}", s.ac.ac_max);
            let size: u64 = (0..=k as i64).map(|i| u64::try_from(binomial(n as i64, i)).unwrap()).sum();
            let bound = cube_counting_lower_bound(n as u32, size + 1).map_err(|e| e.to_string())?.value;
            ensure!(bound as usize == k + 1, "{label}: cube bound at |V|+1 is {bound}, expected {}", k + 1);
            solved.push(s);
        }
    }
    Ok("AC(V(n,k)) = k for n <= 4".into())
}

fn criterion_4(solved: &mut Vec<Solved>) -> Outcome {
    for n in 1..=4 {
        let label = format!("cube:{n}");
        let (_, v) = family(&label);
        let s = solve_all(&label, &v)?;
        ensure!(
            s.ac.per_point.iter().all(|&x| x == n),
            "{label}: per-point values {:?}, expected all {n}",
            s.ac.per_point
        );
        let bound = cube_counting_lower_bound(n as u32, 1 << n).map_err(|e| e.to_string())?.value;
        ensure!(bound as usize == n, "{label}: cube bound {bound}");
        solved.push(s);
    }
    Ok("AC({0,1}^n, v) = n for every v, n <= 4".into())
}

fn criterion_5(solved: &mut Vec<Solved>) -> Outcome {
    for (n, qq) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let label = format!("jnq:{n}:{qq}");
        let (_, v) = family(&label);
        let s = solve_all(&label, &v)?;
        ensure!(s.ac.ac_max == qq - 1, "{label}: AC = {}, expected {}", s.ac.ac_max, qq - 1);
        let size = u64::try_from(binomial((n + qq - 1) as i64, (qq - 1) as i64)).unwrap();
        let bound = counting_lower_bound(n as u32, size).map_err(|e| e.to_string())?.value;
        ensure!(bound as usize == qq - 1, "{label}: counting bound {bound}");
        solved.push(s);
    }
    Ok("AC(J(n,q)) = q - 1 on the grid".into())
}

fn criterion_6(solved: &mut Vec<Solved>) -> Outcome {
    for (n, qq) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let label = format!("ag:{n}:{qq}");
        let (_, v) = family(&label);
        let expect = (qq - 1) * n;
        let closed = solve_all(&label, &v)?;
        let exhaustive =
            ac_numbers_with(&v, None, None, CoverMode::ExhaustiveHyperplanes).map_err(|e| e.to_string())?;
        ensure!(exhaustive.optimal, "{label}: exhaustive search not optimal");
        for (i, sol) in &exhaustive.solutions {
            ensure!(verify_cover(&v, &v.points()[*i], &sol.hyperplanes), "{label}: exhaustive witness invalid");
        }
        ensure!(
            closed.ac.per_point == exhaustive.per_point,
            "{label}: closed-set {:?} vs exhaustive {:?}",
            closed.ac.per_point,
            exhaustive.per_point
        );
        ensure!(
            closed.ac.per_point.iter().all(|&x| x == expect),
            "{label}: per-point {:?}, expected all {expect}",
            closed.ac.per_point
        );
        solved.push(closed);
    }
    Ok("AC(AG(n,q), v) = (q-1)n in both search modes".into())
}

fn criterion_7(solved: &mut Vec<Solved>) -> Outcome {
    for (n, expect) in [(3usize, 3usize), (4, 6)] {
        let label = format!("perm:{n}");
        let (spec, v) = family(&label);
        let s = solve_all(&label, &v)?;
        ensure!(s.ac.ac_min == expect, "{label}: ac = {}, expected {expect}", s.ac.ac_min);
        ensure!(
            s.ac.per_point.iter().all(|&x| x == expect),
            "{label}: per-point values not constant: {:?}",
            s.ac.per_point
        );
        let gens = symmetry_generators(&spec).map_err(|e| e.to_string())?;
        let reduced = ac_numbers(&v, Some(&gens), None).map_err(|e| e.to_string())?;
        ensure!(
            reduced.orbits.as_ref().is_some_and(|o| o.is_transitive),
            "{label}: coordinate permutations not transitive"
        );
        ensure!(reduced.per_point == s.ac.per_point, "{label}: orbit-reduced table differs");
        solved.push(s);
    }
    Ok("ac(perm 3) = 3, ac(perm 4) = 6, constant per point".into())
}

fn criterion_8(solved: &[Solved]) -> Outcome {
    for s in solved {
        let label = &s.label;
        let n = s.set.dim() as u32;
        let size = s.set.len() as u64;
        let cor = cor_bounds(n, size).map_err(|e| e.to_string())?;
        let count = counting_lower_bound(n, size).map_err(|e| e.to_string())?.value;
        let g = buchberger_moller(&s.set).map_err(|e| e.to_string())?;
        let cert = g.certificate_lower_bound(None).map_err(|e| e.to_string())?.value;
        let exact = s.ac.ac_max as u64;
        ensure!(cor.cor_e <= BigRational::from_integer(count.into()), "{label}: cor_e {} > count {count}", cor.cor_e);
        ensure!(cor.cor_e_bound <= count, "{label}: cor_e bound {} > count {count}", cor.cor_e_bound);
        if cor.cor_4n {
            ensure!(count > n as u64, "{label}: 4^n corollary inconsistent with count");
        }
        let mid = if s.set.is_zero_one() {
            let cube = cube_counting_lower_bound(n, size).map_err(|e| e.to_string())?.value;
            ensure!(count <= cube, "{label}: count {count} > cube {cube}");
            cube
        } else {
            count
        };
        ensure!(mid <= cert, "{label}: counting {mid} > certificate {cert}");
        ensure!(cert <= exact, "{label}: certificate {cert} > exact {exact}");
        // per-point sandwich
        for (i, p) in s.set.points().iter().enumerate() {
            let local = g.separating_degree(p).map_err(|e| e.to_string())? as usize;
            ensure!(local <= s.ac.per_point[i], "{label}: certificate at {p} exceeds AC(V, v)");
        }
        let tight = ["vnk:", "cube:", "jnq:"].iter().any(|p| label.starts_with(p));
        if tight {
            ensure!(cert == exact, "{label}: certificate {cert} != exact {exact}");
        }
    }
    Ok(format!("{} instances", solved.len()))
}

fn criterion_9() -> Outcome {
    for n in 1..=30i64 {
        for k in 1..=n {
            let v = check_binomial_inequalities(n, k).map_err(|e| e.to_string())?;
            ensure!(v.upper == Some(true), "C({n},{k}) < (ne/k)^k not certified");
            ensure!(v.shifted == Some(true), "C({},{n}) < e^n (1+{k}/{n})^n not certified", n + k);
        }
    }
    Ok("1 <= k <= n <= 30".into())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a1c0);
    let mut solves = 0;
    for round in 0..200 {
        let field = if round % 2 == 0 { q() } else { FieldSpec::Prime(3) };
        let set = random_point_set(&mut rng, field, 8);
        let ctx = CoverContext::new(&set, CoverMode::ClosedSets).map_err(|e| e.to_string())?;
        let exhaustive = match field {
            FieldSpec::Prime(_) => Some(CoverContext::new(&set, CoverMode::ExhaustiveHyperplanes).map_err(|e| e.to_string())?),
            FieldSpec::Rational => None,
        };
        let all: u128 = (1u128 << set.len()) - 1;
        for v in 0..set.len() {
            let fam = ctx.trace_family(v).expect("closed-set mode");
            let oracle = brute_force_min_cover(all & !(1 << v), &fam.masks)
                .ok_or_else(|| format!("round {round}: trace family does not cover"))?;
            let sol = ctx.solve(v, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure!(sol.optimal, "round {round}: not optimal");
            ensure!(sol.size == oracle, "round {round}, v={v}: branch-and-bound {} vs brute force {oracle}", sol.size);
            ensure!(verify_cover(&set, &set.points()[v], &sol.hyperplanes), "round {round}: invalid witness");
            if let Some(ex) = &exhaustive {
                let other = ex.solve(v, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                ensure!(other.size == oracle, "round {round}: exhaustive-hyperplane mode {} vs {oracle}", other.size);
            }
            solves += 1;
        }
    }
    Ok(format!("200 random sets, {solves} point solves"))
}

fn criterion_11() -> Outcome {
    for n in 1..=5 {
        for k in 0..n {
            let f = szw_sharp_polynomial(n, k).map_err(|e| e.to_string())?;
            let (_, v) = family(&format!("vnk:{n}:{k}"));
            let nf = buchberger_moller(&v).map_err(|e| e.to_string())?.normal_form(&f).map_err(|e| e.to_string())?;
            ensure!(nf.is_zero(), "n={n} k={k}: normal form {nf}");
            for c in cube_vectors(n) {
                if c.iter().sum::<i64>() as usize > k {
                    let value = f.eval(&Point::from_i64(q(), &c)).map_err(|e| e.to_string())?;
                    ensure!(!value.is_zero(), "n={n} k={k}: vanishes at {c:?}");
                }
            }
        }
    }
    Ok("n <= 5".into())
}

fn main() {
    let start = Instant::now();
    let mut solved = Vec::new();
    let mut failures = 0;
    let mut report = |id: u32, title: &str, outcome: Outcome, t: Instant| {
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {title} [{detail}] ({secs:.1}s)"),
            Err(why) => {
                failures += 1;
                println!("criterion {id:>2} FAIL  {title}: {why} ({secs:.1}s)");
            }
        }
    };

    let t = Instant::now();
    report(1, "standard monomials of V(n,k)", criterion_1(), t);
    let t = Instant::now();
    report(2, "separating degree k+1 on V(n,k,T)", criterion_2(), t);
    let t = Instant::now();
    report(3, "sharpness of the 0-1 counting bound", criterion_3(&mut solved), t);
    let t = Instant::now();
    report(4, "cube vertices need n hyperplanes", criterion_4(&mut solved), t);
    let t = Instant::now();
    report(5, "sharpness of the counting bound on J(n,q)", criterion_5(&mut solved), t);
    let t = Instant::now();
    report(6, "affine spaces over GF(q) need (q-1)n", criterion_6(&mut solved), t);
    let t = Instant::now();
    report(7, "permutohedron ac and per-point constancy", criterion_7(&mut solved), t);
    let t = Instant::now();
    report(8, "bound ordering chain", criterion_8(&solved), t);
    let t = Instant::now();
    report(9, "binomial inequalities", criterion_9(), t);
    let t = Instant::now();
    report(10, "branch-and-bound vs brute force", criterion_10(), t);
    let t = Instant::now();
    report(11, "sharp polynomial for V(n,k)", criterion_11(), t);

    println!("acceptance: {} failed, total {:.1}s", failures, start.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
