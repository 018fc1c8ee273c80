//! Floating-point geometry: unfolding billiard paths into straight lines,
//! derivative holonomy of side reflections, and SVG output.
//!
//! Tolerances: 1e-9 for incidence and orthogonality, 1e-12 for degeneracy.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use nalgebra::{Matrix2, Vector2};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::angles::{AngleError, AngleValue, AngleVector, IrrationalBasis, Rational};

pub const INCIDENCE_TOL: f64 = 1e-9;
pub const DEGENERACY_TOL: f64 = 1e-12;

pub type Point = Vector2<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnfoldError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("vertices are listed clockwise")]
    Clockwise,
    #[error("vertices around {0} are collinear")]
    Collinear(usize),
    #[error("sides {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("start point is not strictly inside the polygon")]
    StartOutside,
    #[error("direction must be a nonzero finite vector")]
    BadDirection,
    #[error("side index {0} is out of range")]
    SideOutOfRange(usize),
    #[error("angle at vertex {vertex} ({measured}π) matches both {first} and {second}")]
    AmbiguousAngle { vertex: usize, measured: f64, first: String, second: String },
    #[error("only vertex {0} has no rational match; the angle sum forces it to be rational, so loosen the tolerance")]
    SingleIrrational(usize),
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error("writing {path}: {reason}")]
    Io { path: String, reason: String },
}

fn cross(a: &Point, b: &Point) -> f64 {
    a.x * b.y - a.y * b.x
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometricPolygon {
    vertices: Vec<Point>,
}

impl GeometricPolygon {
    /// Counterclockwise, simple, no collinear consecutive triples.
    pub fn new(coords: &[[f64; 2]]) -> Result<Self, UnfoldError> {
        let n = coords.len();
        if n < 3 {
            return Err(UnfoldError::TooFewVertices(n));
        }
        if let Some(i) = coords.iter().position(|c| !c[0].is_finite() || !c[1].is_finite()) {
            return Err(UnfoldError::NonFinite(i));
        }
        let vertices: Vec<Point> = coords.iter().map(|c| Point::new(c[0], c[1])).collect();
        for i in 0..n {
            let e1 = vertices[i] - vertices[(i + n - 1) % n];
            let e2 = vertices[(i + 1) % n] - vertices[i];
            let scale = e1.norm() * e2.norm();
            if scale < DEGENERACY_TOL || cross(&e1, &e2).abs() <= DEGENERACY_TOL * scale {
                return Err(UnfoldError::Collinear(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_touch(&a, &b, &c, &d) {
                    return Err(UnfoldError::SelfIntersecting(i, j));
                }
            }
        }
        let p = Self { vertices };
        if p.signed_area() < 0.0 {
            return Err(UnfoldError::Clockwise);
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Side i joins vertex i to vertex i+1.
    pub fn side(&self, i: usize) -> (Point, Point) {
        (self.vertices[i], self.vertices[(i + 1) % self.len()])
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.len();
        (0..n).map(|i| cross(&self.vertices[i], &self.vertices[(i + 1) % n])).sum::<f64>() / 2.0
    }

    /// Interior angle at vertex i divided by π, in (0, 2).
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let e1 = self.vertices[i] - self.vertices[(i + n - 1) % n];
        let e2 = self.vertices[(i + 1) % n] - self.vertices[i];
        let turn = cross(&e1, &e2).atan2(e1.dot(&e2));
        1.0 - turn / std::f64::consts::PI
    }

    /// Winding-number test.
    pub fn contains(&self, p: &Point) -> bool {
        let n = self.len();
        let mut winding = 0i32;
        for i in 0..n {
            let (a, b) = self.side(i);
            let side = cross(&(b - a), &(p - a));
            if a.y <= p.y {
                if b.y > p.y && side > 0.0 {
                    winding += 1;
                }
            } else if b.y <= p.y && side < 0.0 {
                winding -= 1;
            }
        }
        winding != 0
    }

    pub fn distance_to_boundary(&self, p: &Point) -> f64 {
        (0..self.len()).map(|i| {
            let (a, b) = self.side(i);
            point_segment_distance(p, &a, &b)
        })
        .fold(f64::INFINITY, f64::min)
    }

    fn transformed(&self, iso: &PlanarIsometry) -> Vec<Point> {
        self.vertices.iter().map(|v| iso.apply(v)).collect()
    }
}

fn point_segment_distance(p: &Point, a: &Point, b: &Point) -> f64 {
    let e = b - a;
    let len2 = e.norm_squared();
    let t = if len2 == 0.0 { 0.0 } else { ((p - a).dot(&e) / len2).clamp(0.0, 1.0) };
    (a + e * t - p).norm()
}

fn segments_touch(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o = |p: &Point, q: &Point, r: &Point| cross(&(q - p), &(r - p));
    let (d1, d2, d3, d4) = (o(c, d, a), o(c, d, b), o(a, b, c), o(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    point_segment_distance(a, c, d) < DEGENERACY_TOL
        || point_segment_distance(b, c, d) < DEGENERACY_TOL
        || point_segment_distance(c, a, b) < DEGENERACY_TOL
        || point_segment_distance(d, a, b) < DEGENERACY_TOL
}

/// x ↦ matrix·x + translation.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarIsometry {
    pub matrix: Matrix2<f64>,
    pub translation: Vector2<f64>,
}

impl PlanarIsometry {
    pub fn identity() -> Self {
        Self { matrix: Matrix2::identity(), translation: Vector2::zeros() }
    }

    /// Reflection across the line through a and b.
    pub fn reflection(a: &Point, b: &Point) -> Self {
        let u = (b - a).normalize();
        let matrix = linear_reflection(&u);
        Self { translation: a - matrix * a, matrix }
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.matrix * p + self.translation
    }

    pub fn apply_linear(&self, v: &Vector2<f64>) -> Vector2<f64> {
        self.matrix * v
    }

    /// self ∘ other
    pub fn compose(&self, other: &Self) -> Self {
        Self { matrix: self.matrix * other.matrix, translation: self.matrix * other.translation + self.translation }
    }

    pub fn inverse(&self) -> Self {
        let mt = self.matrix.transpose();
        Self { translation: -(mt * self.translation), matrix: mt }
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn is_orthogonal(&self) -> bool {
        (self.matrix.transpose() * self.matrix - Matrix2::identity()).amax() < INCIDENCE_TOL
            && (self.determinant().abs() - 1.0).abs() < INCIDENCE_TOL
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.matrix - other.matrix).amax() < tol && (self.translation - other.translation).amax() < tol
    }
}

/// Linear reflection fixing the unit vector u.
fn linear_reflection(u: &Vector2<f64>) -> Matrix2<f64> {
    Matrix2::new(2.0 * u.x * u.x - 1.0, 2.0 * u.x * u.y, 2.0 * u.x * u.y, 2.0 * u.y * u.y - 1.0)
}

/// iso followed by the reflection across the image of `side` under iso.
pub fn reflect_across_side(p: &GeometricPolygon, iso: &PlanarIsometry, side: usize) -> Result<PlanarIsometry, UnfoldError> {
    if side >= p.len() {
        return Err(UnfoldError::SideOutOfRange(side));
    }
    let (a, b) = p.side(side);
    Ok(PlanarIsometry::reflection(&iso.apply(&a), &iso.apply(&b)).compose(iso))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaltReason {
    StepBudget,
    CornerHit,
    ClosedUp,
}

impl HaltReason {
    pub fn name(self) -> &'static str {
        match self {
            HaltReason::StepBudget => "step budget",
            HaltReason::CornerHit => "corner hit",
            HaltReason::ClosedUp => "closed up",
        }
    }
}

/// A polygon copy in the unfolding; `entered_through` is the side of the
/// previous copy that was crossed (None for the starting copy).
#[derive(Clone, Debug, PartialEq)]
pub struct UnfoldCopy {
    pub isometry: PlanarIsometry,
    pub entered_through: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnfoldingRecord {
    pub start: Point,
    pub direction: Vector2<f64>,
    /// Start point, then one point per side crossing, then the corner for a corner hit.
    pub points: Vec<Point>,
    pub copies: Vec<UnfoldCopy>,
    pub halt: HaltReason,
    /// Crossings after which the billiard state first repeated, if seen.
    pub period: Option<usize>,
}

impl UnfoldingRecord {
    pub fn crossings(&self) -> usize {
        self.copies.len() - 1
    }

    /// Largest distance of a recorded point from the initial line.
    pub fn collinearity_defect(&self) -> f64 {
        let normal = Vector2::new(-self.direction.y, self.direction.x);
        self.points.iter().map(|p| (p - self.start).dot(&normal).abs()).fold(0.0, f64::max)
    }
}

/// Unfolds for `max_steps` crossings or until a corner; a repeating billiard
/// state is recorded in `period` but does not stop the walk.
pub fn unfold_trajectory(p: &GeometricPolygon, start: Point, direction: Vector2<f64>, max_steps: usize) -> Result<UnfoldingRecord, UnfoldError> {
    unfold(p, start, direction, max_steps, false)
}

/// As [`unfold_trajectory`], but halts with `ClosedUp` once the state repeats.
pub fn unfold_until_closed(p: &GeometricPolygon, start: Point, direction: Vector2<f64>, max_steps: usize) -> Result<UnfoldingRecord, UnfoldError> {
    unfold(p, start, direction, max_steps, true)
}

fn unfold(p: &GeometricPolygon, start: Point, direction: Vector2<f64>, max_steps: usize, stop_when_closed: bool) -> Result<UnfoldingRecord, UnfoldError> {
    let norm = direction.norm();
    if !norm.is_finite() || norm < DEGENERACY_TOL {
        return Err(UnfoldError::BadDirection);
    }
    if !start.x.is_finite() || !start.y.is_finite() || !p.contains(&start) || p.distance_to_boundary(&start) <= INCIDENCE_TOL {
        return Err(UnfoldError::StartOutside);
    }
    let d = direction / norm;
    let n = p.len();
    let mut iso = PlanarIsometry::identity();
    let mut copies = vec![UnfoldCopy { isometry: iso.clone(), entered_through: None }];
    let mut points = vec![start];
    let mut t_cur = 0.0;
    let mut entry: Option<usize> = None;
    // (side, folded point) of the first crossing, for closing detection
    let mut first: Option<(usize, Point, Matrix2<f64>)> = None;
    let mut period = None;
    for _ in 0..max_steps {
        let verts = p.transformed(&iso);
        let mut best: Option<(f64, usize)> = None;
        for i in 0..n {
            if Some(i) == entry {
                continue;
            }
            let (a, b) = (verts[i], verts[(i + 1) % n]);
            let e = b - a;
            let denom = cross(&d, &e);
            if denom.abs() < DEGENERACY_TOL * e.norm() {
                continue;
            }
            let w = a - start;
            let t = cross(&w, &e) / denom;
            let u = cross(&w, &d) / denom;
            if t > t_cur + DEGENERACY_TOL && (-DEGENERACY_TOL..=1.0 + DEGENERACY_TOL).contains(&u) && best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t, i));
            }
        }
        let Some((t, side)) = best else {
            // numerically lost: the line left the copy through a vertex
            return Ok(UnfoldingRecord { start, direction: d, points, copies, halt: HaltReason::CornerHit, period });
        };
        let x = start + d * t;
        let prev = *points.last().expect("nonempty");
        if let Some(v) = verts.iter().find(|v| point_segment_distance(v, &prev, &x) < INCIDENCE_TOL) {
            points.push(*v);
            return Ok(UnfoldingRecord { start, direction: d, points, copies, halt: HaltReason::CornerHit, period });
        }
        let folded = iso.inverse().apply(&x);
        points.push(x);
        t_cur = t;
        iso = reflect_across_side(p, &iso, side)?;
        copies.push(UnfoldCopy { isometry: iso.clone(), entered_through: Some(side) });
        entry = Some(side);
        match &first {
            None => first = Some((side, folded, iso.matrix)),
            Some((s0, f0, m0)) => {
                if period.is_none() && *s0 == side && (folded - f0).norm() < INCIDENCE_TOL && (iso.matrix - m0).amax() < INCIDENCE_TOL {
                    period = Some(copies.len() - 2);
                    if stop_when_closed {
                        return Ok(UnfoldingRecord { start, direction: d, points, copies, halt: HaltReason::ClosedUp, period });
                    }
                }
            }
        }
    }
    Ok(UnfoldingRecord { start, direction: d, points, copies, halt: HaltReason::StepBudget, period })
}

/// One bounce of the billiard path recovered from an unfolding.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounce {
    pub side: usize,
    pub point: Point,
    pub incoming: Vector2<f64>,
    pub outgoing: Vector2<f64>,
}

/// Folds the straight line back into the polygon through the recorded copies.
pub fn fold_back(record: &UnfoldingRecord) -> Vec<Bounce> {
    let mut out = Vec::new();
    for k in 1..record.copies.len() {
        let before = &record.copies[k - 1].isometry;
        let after = &record.copies[k].isometry;
        let side = record.copies[k].entered_through.expect("later copies are entered through a side");
        out.push(Bounce {
            side,
            point: before.inverse().apply(&record.points[k]),
            incoming: before.matrix.transpose() * record.direction,
            outgoing: after.matrix.transpose() * record.direction,
        });
    }
    out
}

/// Checks that the folded path stays in the polygon and obeys the reflection law.
pub fn check_fold_back(p: &GeometricPolygon, record: &UnfoldingRecord) -> Result<(), String> {
    let bounces = fold_back(record);
    let mut prev = record.start;
    for (k, b) in bounces.iter().enumerate() {
        let (a, c) = p.side(b.side);
        let dist = point_segment_distance(&b.point, &a, &c);
        if dist > INCIDENCE_TOL {
            return Err(format!("bounce {k} is {dist:e} from side {}", b.side));
        }
        let mid = (prev + b.point) / 2.0;
        if !p.contains(&mid) && p.distance_to_boundary(&mid) > INCIDENCE_TOL {
            return Err(format!("segment before bounce {k} leaves the polygon"));
        }
        let reflected = linear_reflection(&(c - a).normalize()) * b.incoming;
        if (reflected - b.outgoing).amax() > INCIDENCE_TOL {
            return Err(format!("reflection law fails at bounce {k}"));
        }
        prev = b.point;
    }
    for c in &record.copies {
        if !c.isometry.is_orthogonal() {
            return Err("non-orthogonal isometry".into());
        }
    }
    for w in record.copies.windows(2) {
        if (w[0].isometry.determinant() + w[1].isometry.determinant()).abs() > INCIDENCE_TOL {
            return Err("determinant does not alternate".into());
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectionOrbit {
    pub elements: Vec<Matrix2<f64>>,
    /// Number of elements after each generation 0..=depth.
    pub generation_sizes: Vec<usize>,
    /// Some(order) when one more generation adds nothing.
    pub closed: Option<usize>,
}

impl DirectionOrbit {
    pub fn verdict(&self) -> String {
        match self.closed {
            Some(k) => format!("finite, order {k}"),
            None => "not closed at depth".to_string(),
        }
    }
}

/// Linear parts reachable by at most `depth` side reflections.
pub fn direction_orbit(p: &GeometricPolygon, depth: usize) -> DirectionOrbit {
    let gens: Vec<Matrix2<f64>> = (0..p.len())
        .map(|i| {
            let (a, b) = p.side(i);
            linear_reflection(&(b - a).normalize())
        })
        .collect();
    let mut elements = vec![Matrix2::identity()];
    let mut frontier = elements.clone();
    let mut sizes = vec![1];
    let known = |set: &[Matrix2<f64>], m: &Matrix2<f64>| set.iter().any(|e| (e - m).amax() < INCIDENCE_TOL);
    let mut closed = None;
    for generation in 1..=depth + 1 {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &gens {
                let m = g * f;
                if !known(&elements, &m) && !known(&next, &m) {
                    next.push(m);
                }
            }
        }
        if next.is_empty() {
            closed = Some(elements.len());
            break;
        }
        if generation > depth {
            break;
        }
        elements.extend(next.iter().cloned());
        sizes.push(elements.len());
        frontier = next;
    }
    DirectionOrbit { elements, generation_sizes: sizes, closed }
}

/// How one measured angle was classified.
#[derive(Clone, Debug, PartialEq)]
pub enum AngleKind {
    Rational { num: i64, den: i64 },
    /// No rational p/q with q ≤ qMax within tol.
    Irrational { symbol: String },
    /// Fixed by the angle sum: N − 2 minus all the others.
    Dependent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleMeasurement {
    pub vertex: usize,
    /// Interior angle divided by π.
    pub measured: f64,
    pub kind: AngleKind,
}

#[derive(Clone, Debug)]
pub struct MeasuredAngles {
    pub angles: AngleVector,
    pub measurements: Vec<AngleMeasurement>,
    /// Numeric values of the fresh symbols, in basis order.
    pub symbol_values: Vec<f64>,
    /// `(vertex, measured, implied)` for the angle set by the sum.
    pub adjustment: Option<(usize, f64, f64)>,
    pub q_max: i64,
    pub tol: f64,
}

impl MeasuredAngles {
    pub fn disclosure(&self) -> Vec<String> {
        let mut out = Vec::new();
        for m in &self.measurements {
            let line = match &m.kind {
                AngleKind::Rational { num, den } => format!("vertex {}: {:.12}π matched {num}/{den}", m.vertex, m.measured),
                AngleKind::Irrational { symbol } => format!(
                    "vertex {}: {:.12}π, no rational p/q with q ≤ {} within {:e}; symbol {symbol}",
                    m.vertex, m.measured, self.q_max, self.tol
                ),
                AngleKind::Dependent => format!("vertex {}: {:.12}π, set by the angle sum", m.vertex, m.measured),
            };
            out.push(line);
        }
        if let Some((v, measured, implied)) = self.adjustment {
            out.push(format!("vertex {v}: exact value taken as N−2 minus the others; implied {implied:.12}π vs measured {measured:.12}π"));
        }
        out
    }
}

/// Convergents p/q of x with q ≤ q_max.
fn convergents(x: f64, q_max: i64) -> Vec<(i64, i64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    let mut out = Vec::new();
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1).and_then(|v| v.checked_add(h0)), a.checked_mul(k1).and_then(|v| v.checked_add(k0)));
        let (Some(h2), Some(k2)) = (h2, k2) else { break };
        if k2 > q_max {
            break;
        }
        out.push((h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Rational detection by continued fractions, with fresh symbols for the rest.
pub fn angles_from_vertices(p: &GeometricPolygon, q_max: i64, tol: f64) -> Result<MeasuredAngles, UnfoldError> {
    let n = p.len();
    let measured: Vec<f64> = (0..n).map(|i| p.interior_angle(i)).collect();
    let mut matched: Vec<Option<(i64, i64)>> = Vec::with_capacity(n);
    for (i, &x) in measured.iter().enumerate() {
        let hits: Vec<(i64, i64)> = convergents(x, q_max).into_iter().filter(|(a, b)| (x - *a as f64 / *b as f64).abs() < tol).collect();
        match hits.as_slice() {
            [] => matched.push(None),
            [one] => matched.push(Some(*one)),
            [a, b, ..] => {
                return Err(UnfoldError::AmbiguousAngle { vertex: i, measured: x, first: format!("{}/{}", a.0, a.1), second: format!("{}/{}", b.0, b.1) })
            }
        }
    }
    let irr: Vec<usize> = (0..n).filter(|&i| matched[i].is_none()).collect();
    if irr.len() == 1 {
        return Err(UnfoldError::SingleIrrational(irr[0]));
    }
    let names: Vec<String> = (1..irr.len()).map(|k| format!("t{k}")).collect();
    let basis = Arc::new(IrrationalBasis::new(names.iter().cloned())?);
    let s = basis.len();
    let mut values: Vec<Option<AngleValue>> = vec![None; n];
    let mut measurements = Vec::with_capacity(n);
    let mut rational_total = Rational::zero();
    for i in 0..n {
        if let Some((a, b)) = matched[i] {
            let q = Rational::new(BigInt::from(a), BigInt::from(b));
            rational_total += &q;
            values[i] = Some(AngleValue::rational(&basis, q));
            measurements.push(AngleMeasurement { vertex: i, measured: measured[i], kind: AngleKind::Rational { num: a, den: b } });
        } else {
            measurements.push(AngleMeasurement { vertex: i, measured: measured[i], kind: AngleKind::Dependent });
        }
    }
    let mut adjustment = None;
    if let Some((&last, rest)) = irr.split_last() {
        for (k, &i) in rest.iter().enumerate() {
            values[i] = Some(AngleValue::symbol(&basis, k));
            measurements[i].kind = AngleKind::Irrational { symbol: names[k].clone() };
        }
        let mut coeffs = vec![Rational::from_integer(BigInt::from(n as i64 - 2)) - &rational_total];
        coeffs.extend((0..s).map(|_| Rational::from_integer(BigInt::from(-1))));
        values[last] = Some(AngleValue::from_coeffs(&basis, coeffs));
        let implied = (n as f64 - 2.0) - (0..n).filter(|&j| j != last).map(|j| measured[j]).sum::<f64>();
        adjustment = Some((last, measured[last], implied));
    }
    let symbol_values = irr.iter().take(s).map(|&i| measured[i]).collect();
    let angles = AngleVector::new(&basis, values.into_iter().map(|v| v.expect("every vertex assigned")).collect())?;
    Ok(MeasuredAngles { angles, measurements, symbol_values, adjustment, q_max, tol })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgStyle {
    pub polygon_stroke: String,
    pub polygon_fill: String,
    pub trajectory_stroke: String,
    pub stroke_width: f64,
    /// Output width in pixels; height follows the aspect ratio.
    pub width: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            polygon_stroke: "#555555".into(),
            polygon_fill: "#e8eef7".into(),
            trajectory_stroke: "#c0392b".into(),
            stroke_width: 1.5,
            width: 800.0,
        }
    }
}

struct Frame {
    min: Point,
    scale: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn fit<'a>(points: impl Iterator<Item = &'a Point>, width: f64) -> Self {
        let (mut lo, mut hi) = (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let span = (hi - lo).map(|v| v.max(1e-9));
        let pad = 0.05 * span.x.max(span.y);
        let min = lo - Point::new(pad, pad);
        let extent = span + Point::new(2.0 * pad, 2.0 * pad);
        let scale = width / extent.x;
        Self { min, scale, width, height: extent.y * scale }
    }

    // SVG y grows downwards
    fn map(&self, p: &Point) -> (f64, f64) {
        ((p.x - self.min.x) * self.scale, self.height - (p.y - self.min.y) * self.scale)
    }
}

fn svg_header(frame: &Frame) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.3}\" height=\"{h:.3}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n",
        w = frame.width,
        h = frame.height
    )
}

/// Polygon copies and the straight trajectory.
pub fn render_unfolding_svg(p: &GeometricPolygon, record: &UnfoldingRecord, style: &SvgStyle) -> String {
    let copies: Vec<Vec<Point>> = record.copies.iter().map(|c| p.transformed(&c.isometry)).collect();
    let frame = Frame::fit(copies.iter().flatten().chain(&record.points), style.width);
    let mut s = svg_header(&frame);
    let _ = writeln!(
        s,
        "  <g fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\" fill-opacity=\"0.6\">",
        style.polygon_fill, style.polygon_stroke, style.stroke_width
    );
    for poly in &copies {
        let pts: Vec<String> = poly.iter().map(|v| {
            let (x, y) = frame.map(v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
        let _ = writeln!(s, "    <polygon points=\"{}\"/>", pts.join(" "));
    }
    s.push_str("  </g>\n");
    if record.points.len() > 1 {
        let pts: Vec<String> = record.points.iter().map(|v| {
            let (x, y) = frame.map(v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
        let _ = writeln!(
            s,
            "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" points=\"{}\"/>",
            style.trajectory_stroke,
            style.stroke_width,
            pts.join(" ")
        );
    }
    let (sx, sy) = frame.map(&record.start);
    let _ = writeln!(s, "  <circle cx=\"{sx:.3}\" cy=\"{sy:.3}\" r=\"{:.3}\" fill=\"{}\"/>", 2.0 * style.stroke_width, style.trajectory_stroke);
    s.push_str("</svg>\n");
    s
}

/// One unit ray per orbit element: the image of the x-axis direction.
pub fn render_orbit_svg(orbit: &DirectionOrbit, style: &SvgStyle) -> String {
    let corners = [Point::new(-1.0, -1.0), Point::new(1.0, 1.0)];
    let frame = Frame::fit(corners.iter(), style.width);
    let mut s = svg_header(&frame);
    let (cx, cy) = frame.map(&Point::zeros());
    let _ = writeln!(s, "  <g stroke=\"{}\" stroke-width=\"{}\">", style.trajectory_stroke, style.stroke_width);
    for m in &orbit.elements {
        let tip = m * Vector2::new(1.0, 0.0);
        let (x, y) = frame.map(&tip);
        let dashed = if m.determinant() < 0.0 { " stroke-dasharray=\"4 3\"" } else { "" };
        let _ = writeln!(s, "    <line x1=\"{cx:.3}\" y1=\"{cy:.3}\" x2=\"{x:.3}\" y2=\"{y:.3}\"{dashed}/>");
    }
    s.push_str("  </g>\n</svg>\n");
    s
}

pub fn write_svg(path: &Path, svg: &str) -> Result<(), UnfoldError> {
    std::fs::write(path, svg).map_err(|e| UnfoldError::Io { path: path.display().to_string(), reason: e.to_string() })
}
