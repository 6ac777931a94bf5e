//! Polygons and star-shaped graphs in `R^N` together with their vertex
//! curvature measures.
//!
//! A closed polygon is a cyclic list of vertices `A_0, ..., A_{n-1}`; all
//! indices are 0-based and wrap modulo `n`, so edge `i` joins vertex `i` to
//! vertex `i + 1 mod n`. The generalized curvature of the associated
//! 1-varifold concentrates on the vertices: at vertex `i` it is the vector
//!
//! ```text
//! H_i = (A_i - A_{i-1}) / |A_i - A_{i-1}|  +  (A_i - A_{i+1}) / |A_i - A_{i+1}|
//! ```
//!
//! i.e. the sum of the two unit vectors pointing from the neighbours into
//! the vertex. Its norm is `sqrt(2 (1 + cos phi))` with `phi` the angle
//! between those two unit vectors, or equivalently `sqrt(2 (1 - cos psi))`
//! for the supplementary angle `psi` between the incoming and outgoing edge
//! directions. The two cosine conventions are easy to mix up, so nothing in
//! this crate evaluates an angle formula: `|H_i|` is always computed from
//! the explicit vector sum.
//!
//! A star-shaped graph is a center `A_0` with leaves `A_1, ..., A_n`. Its
//! curvature is the unit tangent `tau_i = (A_i - A_0) / l_i` at each leaf
//! and `-sum tau_i` at the center.

use crate::error::Error;

/// A point of `R^N`, `N >= 2`, as a plain coordinate vector.
pub type Point = Vec<f64>;

/// Relative threshold below which an edge counts as degenerate.
pub const EDGE_DEGENERACY_TOL: f64 = 1e-14;

/// Relative tolerance of the planar segment-pair intersection test.
pub const INTERSECTION_TOL: f64 = 1e-12;

/// Relative tolerance of the affine-rank computation.
pub const RANK_TOL: f64 = 1e-10;

pub(crate) mod vecn {
    //! Dimension-agnostic dense vector helpers.

    pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn norm(a: &[f64]) -> f64 {
        dot(a, a).sqrt()
    }

    pub fn dist(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
        a.iter().map(|x| x * s).collect()
    }

    /// `a -= s * b`, in place.
    pub fn axpy_neg(a: &mut [f64], s: f64, b: &[f64]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x -= s * y;
        }
    }
}

use vecn::{dist, dot, norm, scale, sub};

/// A closed polygon with `n >= 3` vertices and strictly positive edges.
///
/// Derived quantities (edge lengths, unit edge directions, perimeter) are
/// computed once at construction and kept alongside the vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    edge_lengths: Vec<f64>,
    unit_directions: Vec<Vec<f64>>,
    perimeter: f64,
}

impl Polygon {
    /// Validates a vertex list and builds the polygon. See [`validate_polygon`].
    pub fn new(vertices: Vec<Point>) -> Result<Self, Error> {
        validate_polygon(vertices)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of vertices (equals the number of edges).
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Ambient dimension `N`.
    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// `l_i = |A_{i+1} - A_i|`, cyclically.
    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    /// Unit direction of edge `i`, `nu_i = (A_{i+1} - A_i) / l_i`.
    pub fn unit_directions(&self) -> &[Vec<f64>] {
        &self.unit_directions
    }

    /// Total length of the polygon (its one-dimensional mass).
    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// Largest coordinate magnitude, used as the scale of all relative
    /// tolerances.
    pub fn coordinate_scale(&self) -> f64 {
        coordinate_scale(&self.vertices)
    }

    /// The polygon translated by `t`. Congruent to `self`; derived fields
    /// are recomputed, validation is not repeated.
    pub fn translated(&self, t: &[f64]) -> Polygon {
        let vertices = self
            .vertices
            .iter()
            .map(|v| vecn::add(v, t))
            .collect::<Vec<_>>();
        Polygon::from_vertices_unchecked(vertices)
    }

    /// Rebuilds the derived fields for a vertex list already known to be a
    /// valid polygon (used for congruent transforms of validated input).
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Polygon {
        let (edge_lengths, unit_directions) = derived_edges(&vertices);
        let perimeter = edge_lengths.iter().sum();
        Polygon {
            vertices,
            edge_lengths,
            unit_directions,
            perimeter,
        }
    }
}

fn derived_edges(vertices: &[Point]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = vertices.len();
    let mut lengths = Vec::with_capacity(n);
    let mut dirs = Vec::with_capacity(n);
    for i in 0..n {
        let e = sub(&vertices[(i + 1) % n], &vertices[i]);
        let l = norm(&e);
        lengths.push(l);
        dirs.push(scale(&e, 1.0 / l));
    }
    (lengths, dirs)
}

fn coordinate_scale(vertices: &[Point]) -> f64 {
    vertices
        .iter()
        .flat_map(|v| v.iter())
        .fold(0.0f64, |m, &c| m.max(c.abs()))
}

fn check_points(points: &[Point]) -> Result<usize, Error> {
    let dim = points[0].len();
    for (index, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                index,
                expected: dim,
                got: p.len(),
            });
        }
        for (coord, &c) in p.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteCoordinate { index, coord });
            }
        }
    }
    if dim < 2 {
        return Err(Error::out_of_range(format!(
            "ambient dimension must be at least 2, got {dim}"
        )));
    }
    Ok(dim)
}

/// Validates a cyclic vertex list and returns the polygon with its derived
/// fields populated.
///
/// Checks, in order: at least 3 vertices, consistent ambient dimension with
/// finite coordinates, no degenerate edge (relative threshold
/// [`EDGE_DEGENERACY_TOL`]), no pair of adjacent edges folding back onto each
/// other, and — for planar input — no intersection between non-adjacent
/// edges. For `N > 2` the exhaustive pair test is skipped: the spectral
/// theory below only ever needs simplicity in the plane, and non-planar
/// inputs remain useful as test cases.
pub fn validate_polygon(vertices: Vec<Point>) -> Result<Polygon, Error> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::TooFewVertices { got: n });
    }
    let dim = check_points(&vertices)?;

    let scale = coordinate_scale(&vertices);
    let (edge_lengths, unit_directions) = derived_edges(&vertices);
    for (index, &l) in edge_lengths.iter().enumerate() {
        if l <= EDGE_DEGENERACY_TOL * scale {
            return Err(Error::ZeroLengthEdge { index, length: l });
        }
    }

    // Adjacent edges may only meet at the shared vertex: edge i folds back
    // onto edge i-1 exactly when nu_i = -nu_{i-1}, i.e. the two unit vectors
    // pointing into vertex i coincide. A straight vertex (nu_i = nu_{i-1},
    // H_i = 0) is fine.
    for i in 0..n {
        let u = &unit_directions[(i + n - 1) % n];
        let v = &unit_directions[i];
        if norm(&vecn::add(u, v)) <= INTERSECTION_TOL {
            return Err(Error::SelfIntersection {
                edge_a: (i + n - 1) % n,
                edge_b: i,
            });
        }
    }

    if dim == 2 {
        planar_simplicity(&vertices, scale)?;
    }

    let perimeter = edge_lengths.iter().sum();
    Ok(Polygon {
        vertices,
        edge_lengths,
        unit_directions,
        perimeter,
    })
}

/// O(n^2) segment-pair test over all non-adjacent edges.
fn planar_simplicity(vertices: &[Point], scale: f64) -> Result<(), Error> {
    let n = vertices.len();
    let tol = INTERSECTION_TOL * scale.max(f64::MIN_POSITIVE);
    for i in 0..n {
        for j in (i + 1)..n {
            // skip the shared-vertex pairs (i, i+1) and the wrap pair (0, n-1)
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a1, a2) = (&vertices[i], &vertices[(i + 1) % n]);
            let (b1, b2) = (&vertices[j], &vertices[(j + 1) % n]);
            if segments_intersect_2d(a1, a2, b1, b2, tol) {
                return Err(Error::SelfIntersection {
                    edge_a: i,
                    edge_b: j,
                });
            }
        }
    }
    Ok(())
}

fn cross2(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Closed-segment intersection in the plane. `tol` is an absolute distance:
/// points within `tol` of a segment count as touching it.
fn segments_intersect_2d(a1: &[f64], a2: &[f64], b1: &[f64], b2: &[f64], tol: f64) -> bool {
    let da = sub(a2, a1);
    let db = sub(b2, b1);
    let la = norm(&da);
    let lb = norm(&db);
    // signed area = |segment| * distance(point, line)
    let d1 = cross2(&db, &sub(a1, b1));
    let d2 = cross2(&db, &sub(a2, b1));
    let d3 = cross2(&da, &sub(b1, a1));
    let d4 = cross2(&da, &sub(b2, a1));
    let tb = tol * lb;
    let ta = tol * la;

    let strict = ((d1 > tb && d2 < -tb) || (d1 < -tb && d2 > tb))
        && ((d3 > ta && d4 < -ta) || (d3 < -ta && d4 > ta));
    if strict {
        return true;
    }
    // touching / collinear overlap cases
    (d1.abs() <= tb && point_on_segment(b1, b2, a1, tol))
        || (d2.abs() <= tb && point_on_segment(b1, b2, a2, tol))
        || (d3.abs() <= ta && point_on_segment(a1, a2, b1, tol))
        || (d4.abs() <= ta && point_on_segment(a1, a2, b2, tol))
}

/// Whether `x` lies within `tol` of the closed segment `[p, q]`.
fn point_on_segment(p: &[f64], q: &[f64], x: &[f64], tol: f64) -> bool {
    let d = sub(q, p);
    let l = norm(&d);
    let r = sub(x, p);
    if cross2(&d, &r).abs() > tol * l {
        return false;
    }
    let t = dot(&d, &r);
    t >= -tol * l && t <= l * l + tol * l
}

/// A star-shaped graph: a center `A_0` joined to `n >= 2` leaves by straight
/// segments. No two segments may point in the same direction from the
/// center, otherwise one would contain the other.
#[derive(Debug, Clone, PartialEq)]
pub struct StarGraph {
    center: Point,
    leaves: Vec<Point>,
    edge_lengths: Vec<f64>,
    unit_tangents: Vec<Vec<f64>>,
}

impl StarGraph {
    pub fn new(center: Point, leaves: Vec<Point>) -> Result<Self, Error> {
        if leaves.len() < 2 {
            return Err(Error::TooFewLeaves { got: leaves.len() });
        }
        let mut all = Vec::with_capacity(leaves.len() + 1);
        all.push(center.clone());
        all.extend(leaves.iter().cloned());
        check_points(&all)?;

        let scale = coordinate_scale(&all);
        let mut edge_lengths = Vec::with_capacity(leaves.len());
        let mut unit_tangents = Vec::with_capacity(leaves.len());
        for (index, leaf) in leaves.iter().enumerate() {
            let e = sub(leaf, &center);
            let l = norm(&e);
            if l <= EDGE_DEGENERACY_TOL * scale {
                return Err(Error::ZeroLengthEdge { index, length: l });
            }
            edge_lengths.push(l);
            unit_tangents.push(scale_unit(&e, l));
        }
        for i in 0..leaves.len() {
            for j in (i + 1)..leaves.len() {
                if dist(&unit_tangents[i], &unit_tangents[j]) <= INTERSECTION_TOL {
                    return Err(Error::NestedStarEdge { i, j });
                }
            }
        }
        Ok(StarGraph {
            center,
            leaves,
            edge_lengths,
            unit_tangents,
        })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn leaves(&self) -> &[Point] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `l_i = |A_i - A_0|` for each leaf.
    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    /// Unit tangents `tau_i = (A_i - A_0) / l_i`.
    pub fn unit_tangents(&self) -> &[Vec<f64>] {
        &self.unit_tangents
    }

    /// Total length of the graph.
    pub fn total_length(&self) -> f64 {
        self.edge_lengths.iter().sum()
    }

    /// `sum tau_i`; the graph is stationary at the center when this vanishes.
    pub fn tangent_sum(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.dim()];
        for t in &self.unit_tangents {
            for (a, b) in s.iter_mut().zip(t) {
                *a += b;
            }
        }
        s
    }
}

fn scale_unit(e: &[f64], l: f64) -> Vec<f64> {
    scale(e, 1.0 / l)
}

/// Per-vertex curvature vectors of a polygon or star graph.
///
/// `vectors[i]` belongs to vertex `i`. For a star graph index 0 is the
/// center and indices `1..=n` are the leaves, matching the row ordering of
/// the star Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureMeasure {
    pub vectors: Vec<Vec<f64>>,
}

impl CurvatureMeasure {
    /// `|H_i|` for each vertex.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.vectors.iter().map(|h| norm(h)).collect()
    }

    /// Curvature energy `sum |H_i|^2`.
    pub fn energy(&self) -> f64 {
        self.vectors.iter().map(|h| dot(h, h)).sum()
    }

    /// `sum H_i`; telescopes to zero for every polygon.
    pub fn total(&self) -> Vec<f64> {
        let dim = self.vectors.first().map_or(0, |v| v.len());
        let mut s = vec![0.0; dim];
        for h in &self.vectors {
            for (a, b) in s.iter_mut().zip(h) {
                *a += b;
            }
        }
        s
    }
}

/// Curvature vectors of a polygon: `H_i = nu_{i-1} - nu_i`, the sum of the
/// two unit vectors pointing from the neighbours into vertex `i`.
pub fn curvature_vectors(p: &Polygon) -> CurvatureMeasure {
    let n = p.vertex_count();
    let dirs = p.unit_directions();
    let vectors = (0..n)
        .map(|i| sub(&dirs[(i + n - 1) % n], &dirs[i]))
        .collect();
    CurvatureMeasure { vectors }
}

/// Curvature vectors of a star graph: `tau_i` at each leaf, `-sum tau_i` at
/// the center (index 0).
pub fn curvature_vectors_star(g: &StarGraph) -> CurvatureMeasure {
    let mut vectors = Vec::with_capacity(g.leaf_count() + 1);
    vectors.push(scale(&g.tangent_sum(), -1.0));
    vectors.extend(g.unit_tangents().iter().cloned());
    CurvatureMeasure { vectors }
}

/// Translates the polygon so that the plain vertex average is the origin,
/// i.e. `sum A_i = 0`. The output is congruent to the input.
///
/// Note this is the barycenter of the vertex counting measure, not of arc
/// length; the equality analysis in [`crate::reilly`] is stated for exactly
/// this normalization.
pub fn center_at_vertex_barycenter(p: &Polygon) -> Polygon {
    let n = p.vertex_count() as f64;
    let dim = p.dim();
    let mut mean = vec![0.0; dim];
    for v in p.vertices() {
        for (m, c) in mean.iter_mut().zip(v) {
            *m += c / n;
        }
    }
    let t: Vec<f64> = mean.iter().map(|m| -m).collect();
    p.translated(&t)
}

/// Dimension of the affine span of the vertices: the rank of the centered
/// vertex matrix, with singular directions discarded below
/// `RANK_TOL * scale`. Uses modified Gram-Schmidt with one
/// reorthogonalization pass.
pub fn planar_dimension(p: &Polygon) -> usize {
    let n = p.vertex_count() as f64;
    let dim = p.dim();
    let mut mean = vec![0.0; dim];
    for v in p.vertices() {
        for (m, c) in mean.iter_mut().zip(v) {
            *m += c / n;
        }
    }
    let rows: Vec<Vec<f64>> = p.vertices().iter().map(|v| sub(v, &mean)).collect();
    let scale = rows.iter().map(|r| norm(r)).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let tol = RANK_TOL * scale;

    let mut basis: Vec<Vec<f64>> = Vec::new();
    for row in &rows {
        let mut v = row.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&v, b);
                vecn::axpy_neg(&mut v, c, b);
            }
        }
        let l = norm(&v);
        if l > tol {
            basis.push(scale_unit(&v, l));
        }
        if basis.len() == dim {
            break;
        }
    }
    basis.len()
}
