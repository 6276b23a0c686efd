//! Exact minimum almost covers.
//!
//! A hyperplane missing `v` meets `V` in an affinely closed set: a subset `C`
//! with `span(C) ∩ V = C`. Conversely, for a closed `C ⊆ V \ {v}` the point
//! `v` is not in `span(C)` (otherwise `v ∈ span(C) ∩ V = C`), so some
//! hyperplane contains `C` and misses `v`. Minimum almost covers at `v` are
//! therefore minimum set covers of `V \ {v}` by closed sets avoiding `v`, and
//! only the inclusion-maximal ones (the trace family) are needed.
//!
//! Every closed set of affine dimension `d < n` is the closure of `d + 1`
//! affinely independent points, so closures of subsets of size at most `n`
//! enumerate all of them. This costs `O(|V|^n)` span computations.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geometry::{affine_span, hyperplane_containing_avoiding, Hyperplane, Point, PointSet};
use crate::linalg::Matrix;
use crate::vanishing::{buchberger_moller, GroebnerData};

/// Subsets of a point set as bit masks over point indices.
pub type Mask = u128;

pub const MAX_POINTS: usize = 128;

/// Default node limit of the branch-and-bound search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

fn mask_indices(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

fn full_mask(len: usize) -> Mask {
    if len >= MAX_POINTS {
        Mask::MAX
    } else {
        (1 << len) - 1
    }
}

fn check_size(points: &PointSet) -> Result<()> {
    if points.len() > MAX_POINTS {
        Err(Error::TooManyPoints(points.len()))
    } else {
        Ok(())
    }
}

/// Every nonempty closed subset of `V` whose affine span is a proper subspace
/// of the ambient space.
#[derive(Clone, Debug)]
pub struct ClosedSets {
    masks: Vec<Mask>,
}

impl ClosedSets {
    pub fn enumerate(points: &PointSet) -> Result<ClosedSets> {
        check_size(points)?;
        let mut found: HashSet<Mask> = HashSet::new();
        let mut chosen = Vec::with_capacity(points.dim());
        for start in 0..points.len() {
            chosen.push(start);
            extend_closures(points, &mut chosen, &mut found)?;
            chosen.pop();
        }
        let mut masks: Vec<Mask> = found.into_iter().collect();
        masks.sort_by_key(|&m| mask_indices(m));
        Ok(ClosedSets { masks })
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    /// Maximal closed sets not containing point `v`.
    pub fn traces_for(&self, points: &PointSet, v: usize) -> TraceFamily {
        let bit: Mask = 1 << v;
        let mut candidates: Vec<Mask> = self.masks.iter().copied().filter(|m| m & bit == 0).collect();
        candidates.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        let mut kept: Vec<Mask> = Vec::new();
        for c in candidates {
            if !kept.iter().any(|k| k & c == c) {
                kept.push(c);
            }
        }
        kept.sort_by_key(|&m| mask_indices(m));
        TraceFamily {
            excluded: points.points()[v].clone(),
            excluded_index: v,
            traces: kept.iter().map(|&m| mask_indices(m)).collect(),
            masks: kept,
        }
    }
}

fn closure_mask(points: &PointSet, chosen: &[usize]) -> Result<(Mask, usize)> {
    let pts: Vec<Point> = chosen.iter().map(|&i| points.points()[i].clone()).collect();
    let span = affine_span(&pts)?;
    let mut mask: Mask = 0;
    for (i, p) in points.points().iter().enumerate() {
        if span.contains(p) {
            mask |= 1 << i;
        }
    }
    Ok((mask, span.dim_sub()))
}

fn extend_closures(points: &PointSet, chosen: &mut Vec<usize>, found: &mut HashSet<Mask>) -> Result<()> {
    let (mask, dim) = closure_mask(points, chosen)?;
    if dim >= points.dim() {
        return Ok(());
    }
    found.insert(mask);
    if chosen.len() == points.dim() {
        return Ok(());
    }
    let last = *chosen.last().expect("nonempty");
    for j in last + 1..points.len() {
        if mask & (1 << j) != 0 {
            continue;
        }
        chosen.push(j);
        extend_closures(points, chosen, found)?;
        chosen.pop();
    }
    Ok(())
}

/// The maximal closed subsets of `V \ {v}` (each the trace of a hyperplane
/// missing `v`), sorted by their point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFamily {
    pub excluded: Point,
    pub excluded_index: usize,
    pub traces: Vec<Vec<usize>>,
    pub masks: Vec<Mask>,
}

pub fn trace_family(points: &PointSet, v: &Point) -> Result<TraceFamily> {
    let idx = points.require(v)?;
    Ok(ClosedSets::enumerate(points)?.traces_for(points, idx))
}

/// A hyperplane through the trace that misses the excluded point.
pub fn realize_trace(points: &PointSet, trace: &[usize], v: &Point) -> Result<Hyperplane> {
    let pts: Vec<Point> = trace.iter().map(|&i| points.points()[i].clone()).collect();
    hyperplane_containing_avoiding(&affine_span(&pts)?, v)
}

/// Outcome of the set-cover search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverResult {
    /// Indices of the chosen sets.
    pub chosen: Vec<usize>,
    pub optimal: bool,
    /// Best proven lower bound on the cover size.
    pub lower_bound: usize,
    pub nodes: u64,
}

struct Search<'a> {
    sets: &'a [Mask],
    containing: Vec<Vec<usize>>,
    floor: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best: Vec<usize>,
    stack: Vec<usize>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.exhausted || self.best.len() <= self.floor
    }

    fn dfs(&mut self, uncovered: Mask) {
        if uncovered == 0 {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let depth = self.stack.len();
        let widest = self.sets.iter().map(|s| (s & uncovered).count_ones()).max().unwrap_or(0);
        if widest == 0 {
            return;
        }
        let need = uncovered.count_ones().div_ceil(widest) as usize;
        if depth + need >= self.best.len() {
            return;
        }
        let pivot = mask_indices(uncovered)
            .into_iter()
            .min_by_key(|&e| (self.containing[e].len(), e))
            .expect("uncovered is nonempty");
        let mut options: Vec<(u32, usize)> = self.containing[pivot]
            .iter()
            .map(|&s| ((self.sets[s] & uncovered).count_ones(), s))
            .collect();
        options.sort_by_key(|&(gain, s)| (std::cmp::Reverse(gain), s));
        for (_, s) in options {
            self.stack.push(s);
            self.dfs(uncovered & !self.sets[s]);
            self.stack.pop();
            if self.done() {
                return;
            }
        }
    }
}

fn greedy_cover(universe: Mask, sets: &[Mask]) -> Option<Vec<usize>> {
    let mut left = universe;
    let mut chosen = Vec::new();
    while left != 0 {
        let (gain, idx) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| ((s & left).count_ones(), std::cmp::Reverse(i)))
            .max()?;
        if gain == 0 {
            return None;
        }
        chosen.push(idx.0);
        left &= !sets[idx.0];
    }
    Some(chosen)
}

/// Minimum cover of `universe` by `sets`, searching at most `budget` nodes.
///
/// `floor` is a known lower bound; the search stops as soon as a cover of
/// that size is found. Returns `None` when the sets cannot cover the universe.
pub fn min_set_cover(universe: Mask, sets: &[Mask], floor: usize, budget: u64) -> Option<SetCoverResult> {
    let greedy = greedy_cover(universe, sets)?;
    let widest = sets.iter().map(|s| (s & universe).count_ones()).max().unwrap_or(0);
    let root_bound = if universe == 0 { 0 } else { universe.count_ones().div_ceil(widest) as usize };
    let floor = floor.max(root_bound);
    let mut containing = vec![Vec::new(); MAX_POINTS];
    for (i, s) in sets.iter().enumerate() {
        for e in mask_indices(s & universe) {
            containing[e].push(i);
        }
    }
    let mut search = Search {
        sets,
        containing,
        floor,
        budget,
        nodes: 0,
        exhausted: false,
        best: greedy,
        stack: Vec::new(),
    };
    if !search.done() {
        search.dfs(universe);
    }
    let optimal = !search.exhausted || search.best.len() <= floor;
    let lower_bound = if optimal { search.best.len() } else { floor };
    Some(SetCoverResult { chosen: search.best, optimal, lower_bound, nodes: search.nodes })
}

/// Which family of sets the cover search runs over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoverMode {
    /// Maximal affinely closed sets.
    #[default]
    ClosedSets,
    /// Traces of every hyperplane of `GF(p)^n`; prime fields only.
    ExhaustiveHyperplanes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    pub excluded: Point,
    pub size: usize,
    pub hyperplanes: Vec<Hyperplane>,
    /// Lower bound the search started from: the Gröbner certificate at the
    /// excluded point, raised by the root counting bound.
    pub lower_bound_used: usize,
    pub optimal: bool,
    pub nodes: u64,
}

/// Turns the index of a chosen set into its witness hyperplane.
type Realizer<'a> = Box<dyn Fn(usize) -> Result<Hyperplane> + 'a>;

/// Shared data for solving every point of one set.
#[derive(Clone, Debug)]
pub struct CoverContext {
    points: PointSet,
    groebner: GroebnerData,
    closed: Option<ClosedSets>,
    mode: CoverMode,
}

impl CoverContext {
    pub fn new(points: &PointSet, mode: CoverMode) -> Result<Self> {
        check_size(points)?;
        let closed = match mode {
            CoverMode::ClosedSets => Some(ClosedSets::enumerate(points)?),
            CoverMode::ExhaustiveHyperplanes => {
                if points.field().order().is_none() {
                    return Err(Error::InvalidArgument("exhaustive hyperplane mode needs a prime field".into()));
                }
                None
            }
        };
        Ok(CoverContext { points: points.clone(), groebner: buchberger_moller(points)?, closed, mode })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn groebner(&self) -> &GroebnerData {
        &self.groebner
    }

    pub fn trace_family(&self, v: usize) -> Option<TraceFamily> {
        self.closed.as_ref().map(|c| c.traces_for(&self.points, v))
    }

    pub fn solve(&self, v: usize, budget: u64) -> Result<CoverSolution> {
        let excluded = self.points.points()[v].clone();
        let universe = full_mask(self.points.len()) & !(1 << v);
        let (sets, realize): (Vec<Mask>, Realizer<'_>) = match self.mode {
            CoverMode::ClosedSets => {
                let family = self.trace_family(v).expect("closed sets enumerated");
                let masks = family.masks.clone();
                let excluded = excluded.clone();
                (masks, Box::new(move |i| realize_trace(&self.points, &family.traces[i], &excluded)))
            }
            CoverMode::ExhaustiveHyperplanes => {
                let (masks, planes) = hyperplane_traces(&self.points, v)?;
                (masks, Box::new(move |i| Ok(planes[i].clone())))
            }
        };
        let certificate = self.groebner.separating_degree(&excluded)? as usize;
        let result = min_set_cover(universe, &sets, certificate, budget)
            .ok_or_else(|| Error::InvalidArgument("trace family does not cover the point set".into()))?;
        let hyperplanes = result.chosen.iter().map(|&i| realize(i)).collect::<Result<Vec<_>>>()?;
        let widest = sets.iter().map(|s| (s & universe).count_ones()).max().unwrap_or(0);
        let root = if universe == 0 { 0 } else { universe.count_ones().div_ceil(widest) as usize };
        Ok(CoverSolution {
            excluded,
            size: hyperplanes.len(),
            hyperplanes,
            lower_bound_used: certificate.max(root),
            optimal: result.optimal,
            nodes: result.nodes,
        })
    }
}

/// Distinct nonempty traces `H ∩ V` over all hyperplanes `H` of `GF(p)^n`
/// missing point `v`, with one witness hyperplane each.
pub fn hyperplane_traces(points: &PointSet, v: usize) -> Result<(Vec<Mask>, Vec<Hyperplane>)> {
    let elements = points
        .field()
        .elements()
        .ok_or_else(|| Error::InvalidArgument("exhaustive hyperplane mode needs a prime field".into()))?;
    let n = points.dim();
    let excluded = &points.points()[v];
    let mut seen = HashSet::new();
    let mut masks = Vec::new();
    let mut planes = Vec::new();
    for normal in canonical_normals(&elements, n) {
        for offset in &elements {
            let h = Hyperplane::new(normal.clone(), offset.clone())?;
            if h.contains(excluded) {
                continue;
            }
            let mut mask: Mask = 0;
            for (i, p) in points.points().iter().enumerate() {
                if h.contains(p) {
                    mask |= 1 << i;
                }
            }
            if mask != 0 && seen.insert(mask) {
                masks.push(mask);
                planes.push(h);
            }
        }
    }
    Ok((masks, planes))
}

/// Nonzero vectors whose first nonzero entry is 1, in lexicographic order of
/// the residues.
fn canonical_normals(elements: &[Scalar], n: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    let zero = elements[0].clone();
    let one = elements[1].clone();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = elements.len().pow(free as u32);
        for code in 0..count {
            let mut v = vec![zero.clone(); n];
            v[lead] = one.clone();
            let mut c = code;
            for j in (lead + 1..n).rev() {
                v[j] = elements[c % elements.len()].clone();
                c /= elements.len();
            }
            out.push(v);
        }
    }
    out
}

pub fn min_almost_cover(points: &PointSet, v: &Point, budget: Option<u64>) -> Result<CoverSolution> {
    let idx = points.require(v)?;
    CoverContext::new(points, CoverMode::ClosedSets)?.solve(idx, budget.unwrap_or(DEFAULT_BUDGET))
}

/// True iff every point of `V \ {v}` lies on some hyperplane and `v` on none.
pub fn verify_cover(points: &PointSet, v: &Point, hyperplanes: &[Hyperplane]) -> bool {
    if v.dim() != points.dim() || hyperplanes.iter().any(|h| h.dim() != points.dim()) {
        return false;
    }
    if hyperplanes.iter().any(|h| h.contains(v)) {
        return false;
    }
    points.points().iter().filter(|p| *p != v).all(|p| hyperplanes.iter().any(|h| h.contains(p)))
}

/// An invertible affine map `x ↦ M x + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Matrix,
    translation: Vec<Scalar>,
}

impl AffineMap {
    pub fn new(matrix: Matrix, translation: Vec<Scalar>) -> Result<Self> {
        let n = matrix.ncols();
        if matrix.nrows() != n {
            return Err(Error::DimensionMismatch { expected: n, got: matrix.nrows() });
        }
        if translation.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: translation.len() });
        }
        if matrix.rank() != n {
            return Err(Error::SingularMap);
        }
        Ok(AffineMap { matrix, translation })
    }

    /// `x_i ↔ x_j`.
    pub fn swap(field: FieldSpec, n: usize, i: usize, j: usize) -> Self {
        let mut rows = Matrix::identity(field, n).into_rows();
        rows.swap(i, j);
        AffineMap { matrix: Matrix::new(field, n, rows).expect("square"), translation: vec![field.zero(); n] }
    }

    /// `x_i ↦ 1 − x_i`.
    pub fn flip(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut rows = Matrix::identity(field, n).into_rows();
        rows[i][i] = field.from_i64(-1);
        let mut translation = vec![field.zero(); n];
        translation[i] = field.one();
        AffineMap { matrix: Matrix::new(field, n, rows).expect("square"), translation }
    }

    /// `x ↦ x + t`.
    pub fn translation(field: FieldSpec, t: Vec<Scalar>) -> Self {
        let n = t.len();
        AffineMap { matrix: Matrix::identity(field, n), translation: t }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn translation_vector(&self) -> &[Scalar] {
        &self.translation
    }

    pub fn apply(&self, p: &Point) -> Point {
        let image = self.matrix.mul_vec(p.coords());
        Point::new(image.iter().zip(&self.translation).map(|(a, b)| a + b).collect())
    }
}

/// Orbits of the group generated by the maps, as sorted index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub orbits: Vec<Vec<usize>>,
    pub is_transitive: bool,
}

pub fn orbit_reduce(points: &PointSet, gens: &[AffineMap]) -> Result<Orbits> {
    let mut images: Vec<Vec<usize>> = Vec::with_capacity(gens.len());
    for g in gens {
        if g.matrix.ncols() != points.dim() || g.matrix.field() != points.field() {
            return Err(Error::InvalidArgument("generator does not act on this space".into()));
        }
        let img = points
            .points()
            .iter()
            .map(|p| points.index_of(&g.apply(p)).ok_or_else(|| Error::NotASymmetry(p.to_string())))
            .collect::<Result<Vec<_>>>()?;
        images.push(img);
    }
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for img in &images {
                let y = img[x];
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let is_transitive = orbits.len() == 1;
    Ok(Orbits { orbits, is_transitive })
}

/// `AC(V) = max_v AC(V, v)` and `ac(V) = min_v AC(V, v)` with the per-point table.
#[derive(Clone, Debug)]
pub struct AcNumbers {
    pub ac_max: usize,
    pub ac_min: usize,
    /// `AC(V, v)` for every point, in point order.
    pub per_point: Vec<usize>,
    /// One solution per solved point (orbit representatives when reduced).
    pub solutions: Vec<(usize, CoverSolution)>,
    pub optimal: bool,
    pub orbits: Option<Orbits>,
}

pub fn ac_numbers(points: &PointSet, gens: Option<&[AffineMap]>, budget: Option<u64>) -> Result<AcNumbers> {
    ac_numbers_with(points, gens, budget, CoverMode::ClosedSets)
}

/// Solves one point per orbit (every point without generators), in parallel.
pub fn ac_numbers_with(
    points: &PointSet,
    gens: Option<&[AffineMap]>,
    budget: Option<u64>,
    mode: CoverMode,
) -> Result<AcNumbers> {
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let orbits = gens.map(|g| orbit_reduce(points, g)).transpose()?;
    let reps: Vec<usize> = match &orbits {
        Some(o) => o.orbits.iter().map(|orb| orb[0]).collect(),
        None => (0..points.len()).collect(),
    };
    let ctx = CoverContext::new(points, mode)?;
    let solutions = reps
        .par_iter()
        .map(|&r| ctx.solve(r, budget).map(|s| (r, s)))
        .collect::<Result<Vec<_>>>()?;
    let mut per_point = vec![0; points.len()];
    match &orbits {
        Some(o) => {
            for (orb, (_, sol)) in o.orbits.iter().zip(&solutions) {
                for &i in orb {
                    per_point[i] = sol.size;
                }
            }
        }
        None => {
            for (r, sol) in &solutions {
                per_point[*r] = sol.size;
            }
        }
    }
    let optimal = solutions.iter().all(|(_, s)| s.optimal);
    Ok(AcNumbers {
        ac_max: *per_point.iter().max().expect("nonempty"),
        ac_min: *per_point.iter().min().expect("nonempty"),
        per_point,
        solutions,
        optimal,
        orbits,
    })
}
