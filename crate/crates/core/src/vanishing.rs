//! Gröbner bases of vanishing ideals of finite point sets.
//!
//! Monomials are scanned in increasing deglex order. A monomial whose
//! evaluation vector on the points is independent of the standard monomials
//! accepted so far becomes standard; otherwise the linear dependency gives a
//! basis element with that monomial as leading term. Only multiples `x_i * s`
//! of standard monomials `s` that are not divisible by a known leading
//! monomial are ever examined, so the basis comes out reduced.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geometry::{Point, PointSet};
use crate::linalg::Matrix;
use crate::poly::{reduce, Monomial, Polynomial, TermOrder};

/// Reduced deglex Gröbner basis of `I(V)` together with the standard
/// monomials and the inverse evaluation matrix used for indicator expansions.
#[derive(Clone, Debug)]
pub struct GroebnerData {
    source: PointSet,
    basis: Vec<Polynomial>,
    sm: Vec<Monomial>,
    /// Column `w` holds the coefficients of the indicator function of point `w`.
    inverse: Matrix,
}

/// `chi_w = sum_m c_m * m` over the standard monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorExpansion {
    pub point: Point,
    pub coefficients: Vec<(Monomial, Scalar)>,
}

impl IndicatorExpansion {
    pub fn polynomial(&self, field: FieldSpec) -> Polynomial {
        let nvars = self.point.dim();
        Polynomial::from_terms(field, nvars, self.coefficients.iter().cloned()).expect("consistent ring")
    }

    /// Largest degree among monomials with a nonzero coefficient.
    pub fn degree(&self) -> u32 {
        self.coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }
}

/// Row of the incremental echelon form: a reduced evaluation vector with
/// pivot 1 and its expression in terms of the standard monomials.
struct EchelonRow {
    pivot: usize,
    values: Vec<Scalar>,
    combo: Vec<Scalar>,
}

pub fn buchberger_moller(points: &PointSet) -> Result<GroebnerData> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let field = points.field();
    let n = points.dim();
    let npts = points.len();

    let mut sm: Vec<Monomial> = Vec::new();
    let mut rows: Vec<EchelonRow> = Vec::new();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut queue: BTreeSet<Monomial> = BTreeSet::new();
    let mut seen: HashSet<Monomial> = HashSet::new();
    queue.insert(Monomial::one(n));

    while let Some(t) = queue.pop_first() {
        if leads.iter().any(|l| l.divides(&t)) {
            continue;
        }
        let mut values: Vec<Scalar> = points.points().iter().map(|p| t.eval(p)).collect();
        let mut combo = vec![field.zero(); sm.len()];
        for row in &rows {
            let factor = values[row.pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, r) in values.iter_mut().zip(&row.values) {
                if !r.is_zero() {
                    *v -= &(&factor * r);
                }
            }
            for (c, r) in combo.iter_mut().zip(&row.combo) {
                if !r.is_zero() {
                    *c -= &(&factor * r);
                }
            }
        }
        // values = eval(t) + sum_i combo[i] * eval(sm[i])
        match values.iter().position(|v| !v.is_zero()) {
            None => {
                let terms = std::iter::once((t.clone(), field.one()))
                    .chain(sm.iter().cloned().zip(combo));
                basis.push(Polynomial::from_terms(field, n, terms)?);
                leads.push(t);
            }
            Some(pivot) => {
                let inv = values[pivot].inv().expect("pivot nonzero");
                combo.push(field.one());
                let row = EchelonRow {
                    pivot,
                    values: values.iter().map(|v| v * &inv).collect(),
                    combo: combo.iter().map(|c| c * &inv).collect(),
                };
                for r in rows.iter_mut() {
                    r.combo.push(field.zero());
                }
                rows.push(row);
                for i in 0..n {
                    let next = t.times_var(i);
                    if seen.insert(next.clone()) {
                        queue.insert(next);
                    }
                }
                sm.push(t);
            }
        }
    }
    if sm.len() != npts {
        return Err(Error::InvalidArgument("evaluation matrix is singular".into()));
    }

    let eval = Matrix::new(
        field,
        npts,
        points.points().iter().map(|p| sm.iter().map(|m| m.eval(p)).collect()).collect(),
    )?;
    let inverse = eval.inverse().expect("standard monomials are a basis of the function space");
    Ok(GroebnerData { source: points.clone(), basis, sm, inverse })
}

/// Standard monomials of `I(V)` in increasing deglex order.
pub fn standard_monomials(points: &PointSet) -> Result<Vec<Monomial>> {
    Ok(buchberger_moller(points)?.sm)
}

impl GroebnerData {
    pub fn source(&self) -> &PointSet {
        &self.source
    }

    pub fn order(&self) -> TermOrder {
        TermOrder::Deglex
    }

    /// Reduced basis, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn sm(&self) -> &[Monomial] {
        &self.sm
    }

    /// Largest total degree of a standard monomial.
    pub fn max_sm_degree(&self) -> u32 {
        self.sm.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn indicator_expansion(&self, w: &Point) -> Result<IndicatorExpansion> {
        let col = self.source.require(w)?;
        Ok(self.expansion_at(col))
    }

    fn expansion_at(&self, col: usize) -> IndicatorExpansion {
        let coefficients = self
            .sm
            .iter()
            .zip(self.inverse.rows())
            .map(|(m, row)| (m.clone(), row[col].clone()))
            .collect();
        IndicatorExpansion { point: self.source.points()[col].clone(), coefficients }
    }

    /// Indicator expansions of every point, in point order.
    pub fn all_indicator_expansions(&self) -> Vec<IndicatorExpansion> {
        (0..self.source.len()).map(|i| self.expansion_at(i)).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.field() != self.source.field() {
            return Err(Error::FieldMismatch(self.source.field().to_string(), f.field().to_string()));
        }
        if f.nvars() != self.source.dim() {
            return Err(Error::DimensionMismatch { expected: self.source.dim(), got: f.nvars() });
        }
        reduce(f, &self.basis, TermOrder::Deglex)
    }

    /// Degree of the normal form of the indicator of `v`: the least degree of
    /// a polynomial vanishing on `V \ {v}` but not at `v`.
    pub fn separating_degree(&self, v: &Point) -> Result<u32> {
        Ok(self.indicator_expansion(v)?.degree())
    }
}

/// Convenience wrapper computing the basis first.
pub fn separating_degree(points: &PointSet, v: &Point) -> Result<u32> {
    points.require(v)?;
    buchberger_moller(points)?.separating_degree(v)
}
