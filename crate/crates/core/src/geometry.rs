//! Points, point sets, affine subspaces and hyperplanes.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{dot, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &Point) -> Vec<Scalar> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    /// True when every coordinate is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.0.iter().all(Scalar::is_binary)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite, duplicate-free, ordered set of points in `F^n`.
#[derive(Clone, Debug)]
pub struct PointSet {
    field: FieldSpec,
    dim: usize,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    /// Validates field, dimension and distinctness. Duplicates are an error.
    pub fn new(field: FieldSpec, dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::Empty);
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
            if let Some(c) = p.coords().iter().find(|c| c.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(p.to_string()));
            }
        }
        Ok(PointSet { field, dim, points, index })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Like [`index_of`](Self::index_of) but reports a missing point as an error.
    pub fn require(&self, p: &Point) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::PointNotInSet(p.to_string()))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_zero_one(&self) -> bool {
        self.points.iter().all(Point::is_zero_one)
    }

    /// Returns a new set with `p` appended.
    pub fn with_point(&self, p: Point) -> Result<PointSet> {
        let mut pts = self.points.clone();
        pts.push(p);
        PointSet::new(self.field, self.dim, pts)
    }
}

/// The affine hyperplane `normal · x = offset`, stored with the first nonzero
/// normal entry equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Scalar>,
    offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Result<Self> {
        let lead = normal.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroNormal)?;
        let inv = lead.inv().expect("nonzero");
        Ok(Hyperplane {
            normal: normal.iter().map(|x| x * &inv).collect(),
            offset: &offset * &inv,
        })
    }

    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal · v − offset`; zero exactly when `v` lies on the hyperplane.
    pub fn eval(&self, v: &Point) -> Result<Scalar> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        let field = self.offset.field();
        Ok(&dot(field, &self.normal, v.coords()) - &self.offset)
    }

    pub fn contains(&self, v: &Point) -> bool {
        self.eval(v).map(|x| x.is_zero()).unwrap_or(false)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "{mag}*x{}", i + 1)?;
            }
            first = false;
        }
        write!(f, " = {}", self.offset)
    }
}

/// `base + span(directions)` with linearly independent directions.
#[derive(Clone, Debug)]
pub struct AffineSubspace {
    base: Point,
    directions: Vec<Vec<Scalar>>,
    /// Normals of a defining system `a · (x − base) = 0`.
    equations: Vec<Vec<Scalar>>,
}

impl AffineSubspace {
    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn directions(&self) -> &[Vec<Scalar>] {
        &self.directions
    }

    pub fn dim_sub(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn contains(&self, p: &Point) -> bool {
        let field = self.field();
        let diff = p.sub(&self.base);
        self.equations.iter().all(|a| dot(field, a, &diff).is_zero())
    }

    fn field(&self) -> FieldSpec {
        self.base.coords()[0].field()
    }
}

/// Smallest affine subspace containing `points`.
pub fn affine_span(points: &[Point]) -> Result<AffineSubspace> {
    let base = points.first().ok_or(Error::Empty)?.clone();
    let n = base.dim();
    let field = base.coords().first().ok_or(Error::Empty)?.field();
    let diffs = points[1..]
        .iter()
        .map(|p| {
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
            }
            Ok(p.sub(&base))
        })
        .collect::<Result<Vec<_>>>()?;
    let reduced = Matrix::new(field, n, diffs)?.rref();
    let directions: Vec<Vec<Scalar>> = reduced.matrix.into_rows().into_iter().take(reduced.rank).collect();
    let equations = if directions.is_empty() {
        Matrix::identity(field, n).into_rows()
    } else {
        Matrix::new(field, n, directions.clone())?.nullspace()
    };
    Ok(AffineSubspace { base, directions, equations })
}

/// A hyperplane containing `s` and missing `v`. The normal is the first
/// vector of the canonical orthogonal complement of `s` that separates `v`.
pub fn hyperplane_containing_avoiding(s: &AffineSubspace, v: &Point) -> Result<Hyperplane> {
    if v.dim() != s.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: s.ambient_dim(), got: v.dim() });
    }
    if s.dim_sub() == s.ambient_dim() {
        return Err(Error::NoProperHyperplane);
    }
    let field = s.field();
    let diff = v.sub(&s.base);
    let normal = s
        .equations
        .iter()
        .find(|a| !dot(field, a, &diff).is_zero())
        .ok_or(Error::Inseparable)?;
    Hyperplane::new(normal.clone(), dot(field, normal, s.base.coords()))
}

/// `normal · v − offset`.
pub fn eval_form(h: &Hyperplane, v: &Point) -> Result<Scalar> {
    h.eval(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(c: &[i64]) -> Point {
        Point::from_i64(FieldSpec::Rational, c)
    }

    fn q(x: i64) -> Scalar {
        FieldSpec::Rational.from_i64(x)
    }

    #[test]
    fn span_dimensions() {
        assert_eq!(affine_span(&[qp(&[0, 0])]).unwrap().dim_sub(), 0);
        let line = affine_span(&[qp(&[0, 0]), qp(&[1, 1]), qp(&[2, 2])]).unwrap();
        assert_eq!(line.dim_sub(), 1);
        assert_eq!(line.directions(), &[vec![q(1), q(1)]]);
        let plane = affine_span(&[qp(&[0, 0, 0]), qp(&[1, 0, 0]), qp(&[0, 1, 0])]).unwrap();
        assert_eq!(plane.dim_sub(), 2);
        assert!(plane.contains(&qp(&[5, -3, 0])));
        assert!(!plane.contains(&qp(&[0, 0, 1])));
        assert_eq!(affine_span(&[]).unwrap_err(), Error::Empty);
    }

    #[test]
    fn separating_hyperplanes() {
        let s = affine_span(&[qp(&[1, 0])]).unwrap();
        let h = hyperplane_containing_avoiding(&s, &qp(&[0, 0])).unwrap();
        assert_eq!(h, Hyperplane::new(vec![q(1), q(0)], q(1)).unwrap());
        assert_eq!(h.to_string(), "x1 = 1");

        let s = affine_span(&[qp(&[0, 1]), qp(&[1, 2])]).unwrap();
        let h = hyperplane_containing_avoiding(&s, &qp(&[0, 0])).unwrap();
        // x2 - x1 = 1, stored with leading coefficient 1
        assert_eq!(h, Hyperplane::new(vec![q(-1), q(1)], q(1)).unwrap());
        assert!(h.contains(&qp(&[0, 1])) && h.contains(&qp(&[1, 2])));
        assert!(!h.contains(&qp(&[0, 0])));

        let s = affine_span(&[qp(&[0, 0])]).unwrap();
        assert_eq!(hyperplane_containing_avoiding(&s, &qp(&[0, 0])).unwrap_err(), Error::Inseparable);

        let full = affine_span(&[qp(&[0, 0]), qp(&[1, 0]), qp(&[0, 1])]).unwrap();
        assert_eq!(
            hyperplane_containing_avoiding(&full, &qp(&[3, 3])).unwrap_err(),
            Error::NoProperHyperplane
        );
    }

    #[test]
    fn form_evaluation() {
        let h = Hyperplane::new(vec![q(1), q(0)], q(1)).unwrap();
        assert!(eval_form(&h, &qp(&[1, 5])).unwrap().is_zero());
        let h = Hyperplane::new(vec![q(1), q(1)], q(1)).unwrap();
        assert_eq!(eval_form(&h, &qp(&[0, 0])).unwrap(), q(-1));
        assert!(eval_form(&h, &qp(&[0, 0, 0])).is_err());
        let f = FieldSpec::prime(3).unwrap();
        let h = Hyperplane::new(vec![f.one(), f.one()], f.one()).unwrap();
        assert!(eval_form(&h, &Point::from_i64(f, &[2, 2])).unwrap().is_zero());
    }

    #[test]
    fn duplicates_rejected() {
        let err = PointSet::new(FieldSpec::Rational, 2, vec![qp(&[1, 2]), qp(&[1, 2])]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint(_)));
    }

    proptest! {
        #[test]
        fn proportional_hyperplanes_coincide(a in -3i64..4, b in -3i64..4, c in -3i64..4, s in prop_oneof![-3i64..0, 1i64..4]) {
            prop_assume!(a != 0 || b != 0);
            let h1 = Hyperplane::new(vec![q(a), q(b)], q(c)).unwrap();
            let h2 = Hyperplane::new(vec![q(a * s), q(b * s)], q(c * s)).unwrap();
            prop_assert_eq!(h1, h2);
        }

        #[test]
        fn separation_and_monotone_span(pts in proptest::collection::vec(proptest::collection::vec(-2i64..3, 3), 1..5),
                                        extra in proptest::collection::vec(-2i64..3, 3),
                                        v in proptest::collection::vec(-2i64..3, 3)) {
            let pts: Vec<Point> = pts.iter().map(|c| qp(c)).collect();
            let s = affine_span(&pts).unwrap();
            for p in &pts {
                prop_assert!(s.contains(p));
            }
            let mut bigger = pts.clone();
            bigger.push(qp(&extra));
            let t = affine_span(&bigger).unwrap();
            prop_assert!(pts.iter().all(|p| t.contains(p)));
            prop_assert!(t.dim_sub() >= s.dim_sub());

            let v = qp(&v);
            match hyperplane_containing_avoiding(&s, &v) {
                Ok(h) => {
                    prop_assert!(pts.iter().all(|p| h.contains(p)));
                    prop_assert!(!h.contains(&v));
                }
                Err(Error::Inseparable) => prop_assert!(s.contains(&v)),
                Err(Error::NoProperHyperplane) => prop_assert_eq!(s.dim_sub(), 3),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
