//! Named point families and their sharpness witnesses.
//!
//! Inline grammar (`kind:params`):
//!
//! | family              | points                                                      |
//! |---------------------|-------------------------------------------------------------|
//! | `cube:n`            | `{0,1}^n`                                                   |
//! | `vnk:n:k`           | characteristic vectors of subsets of `[n]` of size `<= k`   |
//! | `vnkt:n:k:t1,t2,..` | `vnk:n:k` plus the characteristic vector of `T`             |
//! | `jnq:n:q[:e1,..]`   | non-decreasing sequences over `[q]` mapped through `i -> e_i` |
//! | `inq:n:q`           | non-decreasing sequences over `[q]`, unembedded              |
//! | `perm:n`            | permutations of `(1, ..., n)`                                |
//! | `ag:n:q`            | all of `GF(q)^n`                                             |

use std::fmt;

use itertools::Itertools;

use crate::bounds::binomial;
use crate::cover::AffineMap;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geometry::{Hyperplane, Point, PointSet};
use crate::linalg::Matrix;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Cube { n: usize },
    Vnk { n: usize, k: usize },
    /// `t` holds 1-based coordinates.
    Vnkt { n: usize, k: usize, t: Vec<usize> },
    /// `embedding[i - 1]` is the image of `i ∈ [q]`; `None` is the identity.
    Jnq { n: usize, q: usize, embedding: Option<Vec<Scalar>> },
    Inq { n: usize, q: usize },
    Perm { n: usize },
    Ag { n: usize, q: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub field: FieldSpec,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("invalid {what} `{s}`")))
}

impl FamilySpec {
    /// Parses `kind:params`. `field` overrides the default field (rationals,
    /// or `GF(q)` for `ag`).
    pub fn parse(text: &str, field: Option<FieldSpec>) -> Result<FamilySpec> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        let arity = |want: &[usize]| {
            if want.contains(&(parts.len() - 1)) {
                Ok(())
            } else {
                Err(Error::Parse(format!("`{text}`: wrong number of parameters for `{}`", parts[0])))
            }
        };
        let field_or_q = field.unwrap_or(FieldSpec::Rational);
        let kind = match parts[0] {
            "cube" => {
                arity(&[1])?;
                FamilyKind::Cube { n: num(parts[1], "n")? }
            }
            "vnk" => {
                arity(&[2])?;
                FamilyKind::Vnk { n: num(parts[1], "n")?, k: num(parts[2], "k")? }
            }
            "vnkt" => {
                arity(&[3])?;
                let t = parts[3].split(',').map(|x| num(x, "coordinate")).collect::<Result<Vec<usize>>>()?;
                FamilyKind::Vnkt { n: num(parts[1], "n")?, k: num(parts[2], "k")?, t }
            }
            "jnq" => {
                arity(&[2, 3])?;
                let embedding = match parts.get(3) {
                    Some(list) => Some(
                        list.split(',').map(|x| field_or_q.parse_scalar(x)).collect::<Result<Vec<Scalar>>>()?,
                    ),
                    None => None,
                };
                FamilyKind::Jnq { n: num(parts[1], "n")?, q: num(parts[2], "q")?, embedding }
            }
            "inq" => {
                arity(&[2])?;
                FamilyKind::Inq { n: num(parts[1], "n")?, q: num(parts[2], "q")? }
            }
            "perm" => {
                arity(&[1])?;
                FamilyKind::Perm { n: num(parts[1], "n")? }
            }
            "ag" => {
                arity(&[2])?;
                let q: u64 = num(parts[2], "q")?;
                let f = match field {
                    None => FieldSpec::prime(q)?,
                    Some(f) if f == FieldSpec::Prime(q) => f,
                    Some(f) => return Err(bad(format!("ag:{}:{q} lives over gf:{q}, not {f}", parts[1]))),
                };
                let spec = FamilySpec { kind: FamilyKind::Ag { n: num(parts[1], "n")?, q }, field: f };
                spec.validate()?;
                return Ok(spec);
            }
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        };
        let spec = FamilySpec { kind, field: field_or_q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn new(kind: FamilyKind, field: FieldSpec) -> Result<FamilySpec> {
        let spec = FamilySpec { kind, field };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rational(kind: FamilyKind) -> Result<FamilySpec> {
        FamilySpec::new(kind, FieldSpec::Rational)
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            FamilyKind::Cube { n }
            | FamilyKind::Vnk { n, .. }
            | FamilyKind::Vnkt { n, .. }
            | FamilyKind::Jnq { n, .. }
            | FamilyKind::Inq { n, .. }
            | FamilyKind::Perm { n }
            | FamilyKind::Ag { n, .. } => *n,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim() == 0 {
            return Err(bad("dimension must be at least 1"));
        }
        match &self.kind {
            FamilyKind::Vnk { n, k } if k >= n => Err(bad(format!("vnk needs k < n (got n={n}, k={k})"))),
            FamilyKind::Vnkt { n, k, t } => {
                if k >= n {
                    return Err(bad(format!("vnkt needs k < n (got n={n}, k={k})")));
                }
                if t.iter().any(|&i| i == 0 || i > *n) || !t.iter().all_unique() {
                    return Err(bad("T must be a set of coordinates in 1..=n"));
                }
                if t.len() <= *k {
                    return Err(bad(format!("vnkt needs |T| > k (got |T|={}, k={k})", t.len())));
                }
                Ok(())
            }
            FamilyKind::Jnq { q, embedding, .. } => {
                if *q < 2 {
                    return Err(bad("q must exceed 1"));
                }
                let image: Vec<Scalar> = match embedding {
                    Some(e) => {
                        if e.len() != *q {
                            return Err(bad(format!("embedding needs {q} values, got {}", e.len())));
                        }
                        e.clone()
                    }
                    None => (1..=*q as i64).map(|i| self.field.from_i64(i)).collect(),
                };
                if !image.iter().all_unique() {
                    return Err(bad("embedding of [q] is not injective in this field"));
                }
                Ok(())
            }
            FamilyKind::Inq { q, .. } => {
                if *q < 2 {
                    return Err(bad("q must exceed 1"));
                }
                if self.field.order().is_some_and(|p| p < *q as u64) {
                    return Err(bad("[q] does not embed injectively in this field"));
                }
                Ok(())
            }
            FamilyKind::Perm { n } => {
                if self.field.order().is_some_and(|p| p < *n as u64) {
                    return Err(bad("coordinates 1..=n are not distinct in this field"));
                }
                Ok(())
            }
            FamilyKind::Ag { q, .. } => {
                if self.field != FieldSpec::Prime(*q) {
                    return Err(bad(format!("ag needs the field gf:{q}")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Closed-form size of the generated set.
    pub fn expected_size(&self) -> u128 {
        let to = |b: num_bigint::BigUint| u128::try_from(b).unwrap_or(u128::MAX);
        match &self.kind {
            FamilyKind::Cube { n } => 1u128 << n,
            FamilyKind::Vnk { n, k } => (0..=*k as i64).map(|i| to(binomial(*n as i64, i))).sum(),
            FamilyKind::Vnkt { n, k, .. } => (0..=*k as i64).map(|i| to(binomial(*n as i64, i))).sum::<u128>() + 1,
            FamilyKind::Jnq { n, q, .. } | FamilyKind::Inq { n, q } => to(binomial((n + q - 1) as i64, (q - 1) as i64)),
            FamilyKind::Perm { n } => (1..=*n as u128).product(),
            FamilyKind::Ag { n, q } => (*q as u128).pow(*n as u32),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Cube { n } => write!(f, "cube:{n}"),
            FamilyKind::Vnk { n, k } => write!(f, "vnk:{n}:{k}"),
            FamilyKind::Vnkt { n, k, t } => write!(f, "vnkt:{n}:{k}:{}", t.iter().join(",")),
            FamilyKind::Jnq { n, q, embedding: None } => write!(f, "jnq:{n}:{q}"),
            FamilyKind::Jnq { n, q, embedding: Some(e) } => write!(f, "jnq:{n}:{q}:{}", e.iter().join(",")),
            FamilyKind::Inq { n, q } => write!(f, "inq:{n}:{q}"),
            FamilyKind::Perm { n } => write!(f, "perm:{n}"),
            FamilyKind::Ag { n, q } => write!(f, "ag:{n}:{q}"),
        }
    }
}

/// All 0-1 vectors of length `n` in lexicographic order.
fn zero_one_vectors(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..1u64 << n).map(move |b| (0..n).map(|i| ((b >> (n - 1 - i)) & 1) as i64).collect())
}

/// Non-decreasing sequences over `1..=q` of length `n`, lexicographically.
fn nondecreasing(n: usize, q: usize) -> Vec<Vec<usize>> {
    (1..=q).combinations_with_replacement(n).collect()
}

pub fn generate(spec: &FamilySpec) -> Result<PointSet> {
    spec.validate()?;
    let f = spec.field;
    let n = spec.dim();
    let ints = |rows: Vec<Vec<i64>>| rows.into_iter().map(|c| Point::from_i64(f, &c)).collect::<Vec<_>>();
    let points = match &spec.kind {
        FamilyKind::Cube { .. } => ints(zero_one_vectors(n).collect()),
        FamilyKind::Vnk { k, .. } => {
            ints(zero_one_vectors(n).filter(|v| v.iter().sum::<i64>() <= *k as i64).collect())
        }
        FamilyKind::Vnkt { k, t, .. } => ints(
            zero_one_vectors(n)
                .filter(|v| {
                    v.iter().sum::<i64>() <= *k as i64
                        || (0..n).all(|i| (v[i] == 1) == t.contains(&(i + 1)))
                })
                .collect(),
        ),
        FamilyKind::Jnq { q, embedding, .. } => {
            let image: Vec<Scalar> = match embedding {
                Some(e) => e.clone(),
                None => (1..=*q as i64).map(|i| f.from_i64(i)).collect(),
            };
            nondecreasing(n, *q)
                .into_iter()
                .map(|s| Point::new(s.iter().map(|&i| image[i - 1].clone()).collect()))
                .collect()
        }
        FamilyKind::Inq { q, .. } => {
            ints(nondecreasing(n, *q).into_iter().map(|s| s.into_iter().map(|i| i as i64).collect()).collect())
        }
        FamilyKind::Perm { .. } => {
            ints((1..=n as i64).permutations(n).collect())
        }
        FamilyKind::Ag { q, .. } => ints(
            (0..n)
                .map(|_| 0..*q as i64)
                .multi_cartesian_product()
                .collect(),
        ),
    };
    let set = PointSet::new(f, n, points)?;
    debug_assert_eq!(set.len() as u128, spec.expected_size());
    Ok(set)
}

fn sum_form(field: FieldSpec, n: usize, offset: i64) -> Result<Hyperplane> {
    Hyperplane::new(vec![field.one(); n], field.from_i64(offset))
}

/// The `k` hyperplanes `x1 + ... + xn = i`, `1 <= i <= k`, which almost cover
/// `V(n, k)` at the origin.
pub fn sharp_cover_vnk(n: usize, k: usize, field: FieldSpec) -> Result<Vec<Hyperplane>> {
    if n == 0 || k >= n {
        return Err(bad(format!("need 0 <= k < n (got n={n}, k={k})")));
    }
    (1..=k as i64).map(|i| sum_form(field, n, i)).collect()
}

/// `prod_{j=0}^{k} (x1 + ... + xn - j)` over the rationals: degree `k + 1`,
/// zero on `V(n, k)`, nonzero on every other 0-1 vector.
pub fn szw_sharp_polynomial(n: usize, k: usize) -> Result<Polynomial> {
    if n == 0 || k >= n {
        return Err(bad(format!("need 0 <= k < n (got n={n}, k={k})")));
    }
    let q = FieldSpec::Rational;
    let sum = (0..n).fold(Polynomial::zero(q, n), |acc, i| acc.add(&Polynomial::var(q, n, i)).expect("same ring"));
    let mut f = Polynomial::constant(q, n, q.one());
    for j in 0..=k as i64 {
        let factor = sum.sub(&Polynomial::constant(q, n, q.from_i64(j)))?;
        f = f.mul(&factor)?;
    }
    for v in zero_one_vectors(n) {
        let weight = v.iter().sum::<i64>() as usize;
        let value = f.eval(&Point::from_i64(q, &v))?;
        if value.is_zero() != (weight <= k) {
            return Err(bad(format!("sharp polynomial check failed at {v:?}")));
        }
    }
    Ok(f)
}

/// Generators of an affine group acting transitively on the family.
pub fn symmetry_generators(spec: &FamilySpec) -> Result<Vec<AffineMap>> {
    let f = spec.field;
    let n = spec.dim();
    let swaps = || (0..n.saturating_sub(1)).map(|i| AffineMap::swap(f, n, i, i + 1));
    let gens: Vec<AffineMap> = match &spec.kind {
        FamilyKind::Cube { .. } => swaps().chain((0..n).map(|i| AffineMap::flip(f, n, i))).collect(),
        FamilyKind::Perm { .. } => swaps().collect(),
        FamilyKind::Ag { q, .. } => {
            let mut gens: Vec<AffineMap> = (0..n)
                .map(|i| {
                    let mut t = vec![f.zero(); n];
                    t[i] = f.one();
                    AffineMap::translation(f, t)
                })
                .collect();
            gens.extend(swaps());
            if *q > 2 {
                let mut rows = Matrix::identity(f, n).into_rows();
                rows[0][0] = primitive_root(f, *q);
                gens.push(AffineMap::new(Matrix::new(f, n, rows)?, vec![f.zero(); n])?);
            }
            if n > 1 {
                let mut rows = Matrix::identity(f, n).into_rows();
                rows[0][1] = f.one();
                gens.push(AffineMap::new(Matrix::new(f, n, rows)?, vec![f.zero(); n])?);
            }
            gens
        }
        _ => return Err(Error::NoDeclaredSymmetry(spec.to_string())),
    };
    crate::cover::orbit_reduce(&generate(spec)?, &gens)?;
    Ok(gens)
}

fn primitive_root(f: FieldSpec, q: u64) -> Scalar {
    (2..q)
        .map(|g| f.from_i64(g as i64))
        .find(|g| {
            let mut x = g.clone();
            let mut order = 1;
            while !x.is_one() {
                x = &x * g;
                order += 1;
            }
            order == q - 1
        })
        .unwrap_or_else(|| f.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{orbit_reduce, verify_cover};
    use crate::vanishing::buchberger_moller;

    fn fam(s: &str) -> PointSet {
        generate(&FamilySpec::parse(s, None).unwrap()).unwrap()
    }

    fn render(v: &PointSet) -> Vec<String> {
        v.points().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn small_families() {
        assert_eq!(
            render(&fam("jnq:2:3")),
            ["(1, 1)", "(1, 2)", "(1, 3)", "(2, 2)", "(2, 3)", "(3, 3)"]
        );
        assert_eq!(render(&fam("vnk:3:1")), ["(0, 0, 0)", "(0, 0, 1)", "(0, 1, 0)", "(1, 0, 0)"]);
        let perm = fam("perm:3");
        assert_eq!(perm.len(), 6);
        assert_eq!(render(&perm)[0], "(1, 2, 3)");
        assert_eq!(render(&perm)[5], "(3, 2, 1)");
        assert_eq!(render(&fam("vnkt:3:1:1,2")).len(), 5);
        assert!(fam("vnkt:3:1:1,2").contains(&Point::from_i64(FieldSpec::Rational, &[1, 1, 0])));
        assert_eq!(fam("ag:2:3").field(), FieldSpec::Prime(3));
        assert_eq!(render(&fam("jnq:2:2:0,5")), ["(0, 0)", "(0, 5)", "(5, 5)"]);
    }

    #[test]
    fn invalid_specs() {
        for s in ["vnk:3:3", "vnkt:3:1:1", "vnkt:3:1:1,4", "jnq:2:1", "ag:2:4", "perm:x", "blob:2", "cube:1:2", "cube:0"] {
            assert!(FamilySpec::parse(s, None).is_err(), "{s}");
        }
        assert!(FamilySpec::parse("ag:2:3", Some(FieldSpec::Rational)).is_err());
        assert!(FamilySpec::parse("jnq:2:3", Some(FieldSpec::Prime(2))).is_err());
        assert!(FamilySpec::parse("jnq:2:2:1,1", None).is_err());
        assert!(FamilySpec::parse("jnq:2:3", Some(FieldSpec::Prime(3))).is_ok());
    }

    #[test]
    fn round_trip_display() {
        for s in ["cube:3", "vnk:4:2", "vnkt:4:1:2,3", "jnq:2:3", "jnq:2:2:0,5", "inq:3:2", "perm:3", "ag:2:3"] {
            assert_eq!(FamilySpec::parse(s, None).unwrap().to_string(), s);
        }
    }

    #[test]
    fn sizes_match_closed_forms() {
        let q = FieldSpec::Rational;
        for n in 1..=5 {
            let mut specs = vec![FamilyKind::Cube { n }, FamilyKind::Perm { n }];
            for k in 0..n {
                specs.push(FamilyKind::Vnk { n, k });
                specs.push(FamilyKind::Vnkt { n, k, t: (1..=k + 1).collect() });
            }
            for qq in 2..=4 {
                specs.push(FamilyKind::Jnq { n, q: qq, embedding: None });
                specs.push(FamilyKind::Inq { n, q: qq });
            }
            for kind in specs {
                let spec = FamilySpec::new(kind, q).unwrap();
                assert_eq!(generate(&spec).unwrap().len() as u128, spec.expected_size(), "{spec}");
            }
            for p in [2u64, 3] {
                let spec = FamilySpec::new(FamilyKind::Ag { n, q: p }, FieldSpec::Prime(p)).unwrap();
                assert_eq!(generate(&spec).unwrap().len() as u128, (p as u128).pow(n as u32));
            }
        }
        assert_eq!(FamilySpec::parse("jnq:2:3", None).unwrap().expected_size(), 6);
        assert_eq!(FamilySpec::parse("perm:4", None).unwrap().expected_size(), 24);
    }

    #[test]
    fn sharp_covers() {
        let q = FieldSpec::Rational;
        assert_eq!(sharp_cover_vnk(3, 1, q).unwrap().iter().map(|h| h.to_string()).collect::<Vec<_>>(), ["x1 + x2 + x3 = 1"]);
        assert_eq!(sharp_cover_vnk(4, 2, q).unwrap().len(), 2);
        assert!(sharp_cover_vnk(3, 0, q).unwrap().is_empty());
        assert!(sharp_cover_vnk(3, 3, q).is_err());
        for n in 1..=5 {
            for k in 0..n {
                let v = fam(&format!("vnk:{n}:{k}"));
                let origin = Point::from_i64(q, &vec![0; n]);
                assert!(verify_cover(&v, &origin, &sharp_cover_vnk(n, k, q).unwrap()));
            }
        }
    }

    #[test]
    fn szw_polynomials() {
        let q = FieldSpec::Rational;
        let f = szw_sharp_polynomial(2, 1).unwrap();
        assert_eq!(f, Polynomial::parse(q, 2, "x1^2 + 2*x1*x2 + x2^2 - x1 - x2").unwrap());
        assert_eq!(f.eval(&Point::from_i64(q, &[1, 1])).unwrap(), q.from_i64(2));
        assert_eq!(szw_sharp_polynomial(3, 0).unwrap(), Polynomial::parse(q, 3, "x1 + x2 + x3").unwrap());
        let g = szw_sharp_polynomial(3, 2).unwrap();
        assert_eq!(g.degree(), Some(3));
        let nonzero: Vec<Vec<i64>> = zero_one_vectors(3).filter(|v| !g.eval(&Point::from_i64(q, v)).unwrap().is_zero()).collect();
        assert_eq!(nonzero, vec![vec![1, 1, 1]]);
        let v = fam("vnk:3:2");
        assert!(buchberger_moller(&v).unwrap().normal_form(&g).unwrap().is_zero());
    }

    #[test]
    fn declared_symmetries() {
        for s in ["cube:2", "cube:3", "perm:3", "perm:4", "ag:2:3", "ag:3:2", "ag:2:5"] {
            let spec = FamilySpec::parse(s, None).unwrap();
            let gens = symmetry_generators(&spec).unwrap();
            assert!(orbit_reduce(&generate(&spec).unwrap(), &gens).unwrap().is_transitive, "{s}");
        }
        let q = FieldSpec::Rational;
        let flips = [AffineMap::flip(q, 2, 0), AffineMap::flip(q, 2, 1)];
        assert!(orbit_reduce(&fam("cube:2"), &flips).unwrap().is_transitive);
        for s in ["vnk:3:1", "jnq:2:3"] {
            let err = symmetry_generators(&FamilySpec::parse(s, None).unwrap()).unwrap_err();
            assert!(matches!(err, Error::NoDeclaredSymmetry(_)));
        }
    }
}
