//! Planar points, isometries, convex polygons and vertex coronae over an
//! exact [`Scalar`] field.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{Scalar, Sign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Point2 { x, y }
    }

    pub fn origin() -> Self {
        Point2::new(S::zero(), S::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() + &o.x, self.y.clone() + &o.y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() - &o.x, self.y.clone() - &o.y)
    }

    pub fn scale(&self, k: &S) -> Self {
        Point2::new(self.x.clone() * k, self.y.clone() * k)
    }

    pub fn neg(&self) -> Self {
        Point2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * &o.x + &(self.y.clone() * &o.y)
    }

    pub fn cross(&self, o: &Self) -> S {
        self.x.clone() * &o.y - &(self.y.clone() * &o.x)
    }

    pub fn norm2(&self) -> S {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn midpoint(&self, o: &Self) -> Self {
        let half = S::from_ratio(1, 2);
        self.add(o).scale(&half)
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.approx(), self.y.approx())
    }

    /// Total order on representations, for canonical keys.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.x
            .canonical_cmp(&o.x)
            .then_with(|| self.y.canonical_cmp(&o.y))
    }

    /// Sort key for the direction of a nonzero vector: half-plane first.
    fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Same direction (parallel and pointing the same way).
    pub fn same_direction(&self, o: &Self) -> bool {
        self.cross(o).is_zero() && self.dot(o).is_positive()
    }
}

/// Compares the polar angles of two nonzero vectors in `[0, 2π)`.
pub fn angle_cmp<S: Scalar>(u: &Point2<S>, v: &Point2<S>) -> Ordering {
    u.half().cmp(&v.half()).then_with(|| match u.cross(v).sign() {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    })
}

impl<S: Scalar> fmt::Debug for Point2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orientation-preserving (`direct`) or reversing isometry `x ↦ Ax + b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Isometry2<S> {
    /// Row-major `[[a00, a01], [a10, a11]]`.
    pub linear: [[S; 2]; 2],
    pub shift: Point2<S>,
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),
    #[error("tile does not contain the corona center on its boundary")]
    CenterNotOnTile,
    #[error("tiles around the center do not close up to a full turn")]
    AngleSumNot2Pi,
    #[error("rotation/reflection direction vector is zero")]
    ZeroDirection,
}

impl<S: Scalar> Isometry2<S> {
    pub fn from_parts(linear: [[S; 2]; 2], shift: Point2<S>) -> Result<Self, GeometryError> {
        let c0 = Point2::new(linear[0][0].clone(), linear[1][0].clone());
        let c1 = Point2::new(linear[0][1].clone(), linear[1][1].clone());
        if !(c0.norm2() == S::one() && c1.norm2() == S::one() && c0.dot(&c1).is_zero()) {
            return Err(GeometryError::NotOrthogonal);
        }
        let det = c0.cross(&c1);
        Ok(Isometry2 {
            linear,
            shift,
            direct: det.is_positive(),
        })
    }

    pub fn identity() -> Self {
        Isometry2 {
            linear: [[S::one(), S::zero()], [S::zero(), S::one()]],
            shift: Point2::origin(),
            direct: true,
        }
    }

    pub fn translation(v: Point2<S>) -> Self {
        Isometry2 {
            shift: v,
            ..Isometry2::identity()
        }
    }

    /// Rotation with the given cosine/sine about `center`.
    pub fn rotation(cos: S, sin: S, center: &Point2<S>) -> Result<Self, GeometryError> {
        let linear = [[cos.clone(), -sin.clone()], [sin, cos]];
        let about_origin = Isometry2::from_parts(linear, Point2::origin())?;
        Ok(about_origin.conjugate_by_translation(center))
    }

    /// Rotation taking direction `from` to direction `to` (equal lengths).
    pub fn rotation_between(
        from: &Point2<S>,
        to: &Point2<S>,
        center: &Point2<S>,
    ) -> Result<Self, GeometryError> {
        let n = from.norm2();
        if n.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        let cos = from.dot(to) / n.clone();
        let sin = from.cross(to) / n;
        Isometry2::rotation(cos, sin, center)
    }

    pub fn half_turn(center: &Point2<S>) -> Self {
        let m1 = -S::one();
        let linear = [[m1.clone(), S::zero()], [S::zero(), m1]];
        Isometry2 {
            linear,
            shift: center.scale(&S::from_int(2)),
            direct: true,
        }
    }

    /// Reflection in the line through `a` and `b`.
    pub fn reflection(a: &Point2<S>, b: &Point2<S>) -> Result<Self, GeometryError> {
        let d = b.sub(a);
        let n = d.norm2();
        if n.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        let c = (d.x.clone() * &d.x - &(d.y.clone() * &d.y)) / n.clone();
        let s = (S::from_int(2) * &d.x * &d.y) / n;
        let linear = [[c.clone(), s.clone()], [s, -c]];
        let about_origin = Isometry2::from_parts(linear, Point2::origin())?;
        Ok(about_origin.conjugate_by_translation(a))
    }

    /// Reflection `x ↦ Ax` whose matrix maps `u` onto `v` (equal lengths).
    pub fn reflection_between(u: &Point2<S>, v: &Point2<S>) -> Result<Self, GeometryError> {
        let n = u.norm2();
        if n.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        let c = (u.x.clone() * &v.x - &(u.y.clone() * &v.y)) / n.clone();
        let s = (u.y.clone() * &v.x + &(u.x.clone() * &v.y)) / n;
        Isometry2::from_parts([[c.clone(), s.clone()], [s, -c]], Point2::origin())
    }

    /// `T_c ∘ self ∘ T_{-c}`: the same linear motion but about `c`.
    fn conjugate_by_translation(self, c: &Point2<S>) -> Self {
        let moved = self.apply_linear(c);
        Isometry2 {
            shift: self.shift.add(c).sub(&moved),
            ..self
        }
    }

    pub fn apply_linear(&self, p: &Point2<S>) -> Point2<S> {
        let [[a, b], [c, d]] = &self.linear;
        Point2::new(
            a.clone() * &p.x + &(b.clone() * &p.y),
            c.clone() * &p.x + &(d.clone() * &p.y),
        )
    }

    pub fn apply(&self, p: &Point2<S>) -> Point2<S> {
        self.apply_linear(p).add(&self.shift)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let [[a, b], [c, d]] = &self.linear;
        let [[e, f], [g, h]] = &other.linear;
        let linear = [
            [
                a.clone() * e + &(b.clone() * g),
                a.clone() * f + &(b.clone() * h),
            ],
            [
                c.clone() * e + &(d.clone() * g),
                c.clone() * f + &(d.clone() * h),
            ],
        ];
        Isometry2 {
            linear,
            shift: self.apply(&other.shift),
            direct: self.direct == other.direct,
        }
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = &self.linear;
        let linear = [[a.clone(), c.clone()], [b.clone(), d.clone()]];
        let t = Isometry2 {
            linear,
            shift: Point2::origin(),
            direct: self.direct,
        };
        let shift = t.apply_linear(&self.shift).neg();
        Isometry2 { shift, ..t }
    }

    pub fn linear_is_identity(&self) -> bool {
        let [[a, b], [c, d]] = &self.linear;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.linear_is_identity() && self.shift.is_zero()
    }

    pub fn is_translation(&self) -> bool {
        self.linear_is_identity()
    }

    /// Order of the linear part (1, 2, 3, 4, 6, ...); `None` above 12.
    pub fn linear_order(&self) -> Option<u32> {
        let mut power = Isometry2 {
            shift: Point2::origin(),
            ..self.clone()
        };
        let base = power.clone();
        for k in 1..=12 {
            if power.linear_is_identity() {
                return Some(k);
            }
            power = power.compose(&base);
        }
        None
    }

    /// Fixed point of a direct non-translation isometry (rotation center).
    pub fn rotation_center(&self) -> Option<Point2<S>> {
        if !self.direct || self.linear_is_identity() {
            return None;
        }
        // (I - A) c = b
        let [[a, b], [c, d]] = &self.linear;
        let m00 = S::one() - a.clone();
        let m01 = -b.clone();
        let m10 = -c.clone();
        let m11 = S::one() - d.clone();
        let det = m00.clone() * &m11 - &(m01.clone() * &m10);
        let x = (self.shift.x.clone() * &m11 - &(m01 * &self.shift.y)) / det.clone();
        let y = (m00 * &self.shift.y - &(m10 * &self.shift.x)) / det;
        Some(Point2::new(x, y))
    }

    /// For an indirect isometry: the unit-free axis direction `u` (A u = u).
    pub fn axis_direction(&self) -> Option<Point2<S>> {
        if self.direct {
            return None;
        }
        let [[a, b], [c, d]] = &self.linear;
        // Columns of (A + I) span the +1 eigenspace.
        let c0 = Point2::new(a.clone() + &S::one(), c.clone());
        if !c0.is_zero() {
            return Some(c0);
        }
        Some(Point2::new(b.clone(), d.clone() + &S::one()))
    }

    /// Splits an indirect isometry into glide vector (along the axis) and
    /// the perpendicular part; the isometry is a reflection iff the glide
    /// vector vanishes.
    pub fn glide_decomposition(&self) -> Option<(Point2<S>, Point2<S>)> {
        let u = self.axis_direction()?;
        let along = u.scale(&(self.shift.dot(&u) / u.norm2()));
        let perp = self.shift.sub(&along);
        Some((along, perp))
    }

    pub fn is_reflection(&self) -> bool {
        match self.glide_decomposition() {
            Some((along, _)) => along.is_zero(),
            None => false,
        }
    }
}

impl<S: Scalar> fmt::Debug for Isometry2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.linear;
        write!(
            f,
            "Iso[{}; [{a}, {b}; {c}, {d}] + {:?}]",
            if self.direct { "direct" } else { "indirect" },
            self.shift
        )
    }
}

/// Where a point lies relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    Vertex(usize),
    /// Relative interior of edge `i` (from vertex `i` to `i + 1`).
    Edge(usize),
    Interior,
    Outside,
}

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polygon<S> {
    vertices: Vec<Point2<S>>,
}

impl<S: Scalar> Polygon<S> {
    /// Accepts either orientation; stores counterclockwise.
    pub fn new(mut vertices: Vec<Point2<S>>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if signed_area2(&vertices).is_negative() {
            vertices.reverse();
        }
        for i in 0..n {
            let a = &vertices[(i + n - 1) % n];
            let b = &vertices[i];
            let c = &vertices[(i + 1) % n];
            if !b.sub(a).cross(&c.sub(b)).is_positive() {
                return Err(GeometryError::NotConvex(i));
            }
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[Point2<S>] {
        &self.vertices
    }

    pub fn n_gon(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &Point2<S> {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn edge_vector(&self, i: usize) -> Point2<S> {
        self.vertex(i + 1).sub(self.vertex(i))
    }

    pub fn area2(&self) -> S {
        signed_area2(&self.vertices)
    }

    pub fn incidence(&self, p: &Point2<S>) -> Incidence {
        let n = self.vertices.len();
        let mut on_edge = None;
        for i in 0..n {
            let a = &self.vertices[i];
            if a == p {
                return Incidence::Vertex(i);
            }
            let b = &self.vertices[(i + 1) % n];
            match b.sub(a).cross(&p.sub(a)).sign() {
                Sign::Negative => return Incidence::Outside,
                Sign::Zero => on_edge = Some(i),
                Sign::Positive => {}
            }
        }
        match on_edge {
            Some(i) => Incidence::Edge(i),
            None => Incidence::Interior,
        }
    }

    pub fn transformed(&self, iso: &Isometry2<S>) -> Self {
        let mut vertices: Vec<_> = self.vertices.iter().map(|v| iso.apply(v)).collect();
        if !iso.direct {
            vertices.reverse();
        }
        Polygon { vertices }
    }

    /// Vertex list sorted by the canonical point order; identifies the tile.
    pub fn key(&self) -> Vec<Point2<S>> {
        let mut k = self.vertices.clone();
        k.sort_by(|a, b| a.canonical_cmp(b));
        k
    }

    /// Upper bound on the diameter (max L1 distance between vertices).
    pub fn diameter_bound(&self) -> S {
        let mut best = S::zero();
        for a in &self.vertices {
            for b in &self.vertices {
                let d = b.sub(a);
                let l1 = abs(&d.x) + &abs(&d.y);
                if l1 > best {
                    best = l1;
                }
            }
        }
        best
    }

    pub fn vertex_mean(&self) -> Point2<S> {
        let mut sum = Point2::origin();
        for v in &self.vertices {
            sum = sum.add(v);
        }
        sum.scale(&(S::one() / S::from_int(self.vertices.len() as i64)))
    }

    /// Squared edge lengths in boundary order.
    pub fn edge_lengths2(&self) -> Vec<S> {
        (0..self.n_gon()).map(|i| self.edge_vector(i).norm2()).collect()
    }
}

impl<S: Scalar> fmt::Debug for Polygon<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vertices.iter()).finish()
    }
}

pub fn abs<S: Scalar>(x: &S) -> S {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}

fn signed_area2<S: Scalar>(vs: &[Point2<S>]) -> S {
    let n = vs.len();
    let mut acc = S::zero();
    for i in 0..n {
        acc = acc + &vs[i].cross(&vs[(i + 1) % n]);
    }
    acc
}

/// Which congruence notion to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Orientation-preserving motions only.
    Direct,
    /// Mirror images allowed.
    Full,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Direct => "direct",
            Mode::Full => "full",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(Mode::Direct),
            "full" => Ok(Mode::Full),
            _ => Err(format!("unknown mode {s:?} (expected direct or full)")),
        }
    }
}

/// Finds an isometry mapping `p` onto `q`; checked vertex by vertex.
pub fn polygon_congruence<S: Scalar>(
    p: &Polygon<S>,
    q: &Polygon<S>,
    mode: Mode,
) -> Option<Isometry2<S>> {
    let n = p.n_gon();
    if n != q.n_gon() {
        return None;
    }
    let u = p.edge_vector(0);
    let p0 = p.vertex(0);
    for i in 0..n {
        // Direct: p_j -> q_{i+j}.
        let v = q.edge_vector(i);
        if u.norm2() == v.norm2() {
            if let Ok(rot) = Isometry2::rotation_between(&u, &v, &Point2::origin()) {
                let shift = q.vertex(i).sub(&rot.apply(p0));
                let iso = Isometry2 { shift, ..rot };
                if (0..n).all(|j| iso.apply(p.vertex(j)) == *q.vertex(i + j)) {
                    return Some(iso);
                }
            }
        }
        if mode == Mode::Full {
            // Indirect: p_j -> q_{i-j}.
            let v = q.vertex(i + n - 1).sub(q.vertex(i));
            if u.norm2() == v.norm2() {
                if let Ok(refl) = Isometry2::reflection_between(&u, &v) {
                    let shift = q.vertex(i).sub(&refl.apply(p0));
                    let iso = Isometry2 { shift, ..refl };
                    if (0..n).all(|j| iso.apply(p.vertex(j)) == *q.vertex(i + n - j)) {
                        return Some(iso);
                    }
                }
            }
        }
    }
    None
}

/// A point together with the tiles containing it, in counterclockwise
/// order of their angular wedges.
#[derive(Clone, PartialEq, Eq)]
pub struct Corona<S> {
    center: Point2<S>,
    tiles: Vec<Polygon<S>>,
}

/// Tile shapes and relative corner positions of a corona, counterclockwise.
struct Reading<S> {
    structure: Vec<(usize, i64)>,
    offsets: Vec<usize>,
    points: Vec<Point2<S>>,
}

impl<S: Scalar> Reading<S> {
    fn structure_matches(&self, other: &Reading<S>, start: usize) -> bool {
        let m = self.structure.len();
        m == other.structure.len() && (0..m).all(|k| self.structure[(start + k) % m] == other.structure[k])
    }

    /// Structure and coordinates read from tile `start`, relative to the
    /// center, invariant under rotations about it.
    fn descriptor(&self, start: usize) -> CanonicalSignature<S> {
        let m = self.structure.len();
        let mut values = Vec::with_capacity(2 * m + 2 * self.points.len());
        for k in 0..m {
            let (n, flat) = self.structure[(start + k) % m];
            values.push(S::from_int(n as i64));
            values.push(S::from_int(flat));
        }
        let total = self.points.len();
        let first = self.offsets[start];
        let q1 = &self.points[first];
        values.push(q1.norm2());
        for j in 1..total {
            let p = &self.points[(first + j) % total];
            values.push(q1.dot(p));
            values.push(q1.cross(p));
        }
        CanonicalSignature { values }
    }

    fn first_point(&self, start: usize) -> &Point2<S> {
        &self.points[self.offsets[start]]
    }
}

/// The angular wedge a tile occupies at a point on its boundary.
struct Wedge<S> {
    start: Point2<S>,
    end: Point2<S>,
}

fn wedge_at<S: Scalar>(tile: &Polygon<S>, c: &Point2<S>) -> Option<Wedge<S>> {
    let n = tile.n_gon();
    match tile.incidence(c) {
        Incidence::Vertex(i) => Some(Wedge {
            start: tile.vertex(i + 1).sub(c),
            end: tile.vertex(i + n - 1).sub(c),
        }),
        Incidence::Edge(i) => Some(Wedge {
            start: tile.vertex(i + 1).sub(c),
            end: tile.vertex(i).sub(c),
        }),
        _ => None,
    }
}

/// True iff the wedges of `tiles` at `c` cover all directions exactly once.
/// `tiles` must already be sorted by wedge start.
fn wedges_close<S: Scalar>(c: &Point2<S>, tiles: &[Polygon<S>]) -> bool {
    let wedges: Option<Vec<_>> = tiles.iter().map(|t| wedge_at(t, c)).collect();
    let Some(wedges) = wedges else { return false };
    if wedges.is_empty() {
        return false;
    }
    let m = wedges.len();
    for i in 0..m {
        if i + 1 < m && angle_cmp(&wedges[i].start, &wedges[i + 1].start) != Ordering::Less {
            return false;
        }
        if !wedges[i].end.same_direction(&wedges[(i + 1) % m].start) {
            return false;
        }
    }
    // One wedge alone would need an angle of 2π.
    m >= 2
}

impl<S: Scalar> Corona<S> {
    /// Sorts the tiles counterclockwise and checks the angle sum is 2π.
    pub fn new(center: Point2<S>, mut tiles: Vec<Polygon<S>>) -> Result<Self, GeometryError> {
        let mut keyed = Vec::with_capacity(tiles.len());
        for t in tiles.drain(..) {
            let w = wedge_at(&t, &center).ok_or(GeometryError::CenterNotOnTile)?;
            keyed.push((w.start, t));
        }
        keyed.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        let tiles: Vec<_> = keyed.into_iter().map(|(_, t)| t).collect();
        if !wedges_close(&center, &tiles) {
            return Err(GeometryError::AngleSumNot2Pi);
        }
        Ok(Corona { center, tiles })
    }

    pub fn center(&self) -> &Point2<S> {
        &self.center
    }

    pub fn tiles(&self) -> &[Polygon<S>] {
        &self.tiles
    }

    /// Gon sizes of tiles having the center as a vertex, and the gon size of
    /// the tile having it in an edge interior, if any.
    pub fn gon_sizes(&self) -> (Vec<usize>, Option<usize>) {
        let mut at_vertex = Vec::new();
        let mut flat = None;
        for t in &self.tiles {
            match t.incidence(&self.center) {
                Incidence::Vertex(_) => at_vertex.push(t.n_gon()),
                _ => flat = Some(t.n_gon()),
            }
        }
        (at_vertex, flat)
    }

    pub fn transformed(&self, iso: &Isometry2<S>) -> Self {
        let tiles = self.tiles.iter().map(|t| t.transformed(iso)).collect();
        Corona::new(iso.apply(&self.center), tiles).expect("isometric image of a corona")
    }

    /// The mirror image in the horizontal line through the center.
    pub fn mirrored(&self) -> Self {
        let a = self.center.clone();
        let b = Point2::new(a.x.clone() + &S::one(), a.y.clone());
        let m = Isometry2::reflection(&a, &b).expect("nonzero direction");
        self.transformed(&m)
    }

    fn reading(&self) -> Reading<S> {
        let mut structure = Vec::with_capacity(self.tiles.len());
        let mut offsets = Vec::with_capacity(self.tiles.len());
        let mut points = Vec::new();
        for tile in &self.tiles {
            let n = tile.n_gon();
            let (first, count, flat) = match tile.incidence(&self.center) {
                Incidence::Vertex(i) => (i + 1, n - 1, 0),
                Incidence::Edge(i) => (i + 1, n, 1),
                _ => unreachable!("corona tiles contain the center"),
            };
            structure.push((n, flat));
            offsets.push(points.len());
            for j in 0..count {
                points.push(tile.vertex(first + j).sub(&self.center));
            }
        }
        Reading {
            structure,
            offsets,
            points,
        }
    }

    fn direct_signature(&self) -> CanonicalSignature<S> {
        let r = self.reading();
        (0..self.tiles.len())
            .map(|k| r.descriptor(k))
            .min()
            .expect("corona has tiles")
    }

    /// Canonical key: equal keys iff congruent in `mode`.
    pub fn signature(&self, mode: Mode) -> CanonicalSignature<S> {
        let direct = self.direct_signature();
        match mode {
            Mode::Direct => direct,
            Mode::Full => direct.min(self.mirrored().direct_signature()),
        }
    }

    /// All isometries (in `mode`) mapping this corona onto `other`.
    pub fn alignments(&self, other: &Corona<S>, mode: Mode) -> Vec<Isometry2<S>> {
        let mut out = Vec::new();
        if self.tiles.len() != other.tiles.len() {
            return out;
        }
        let own = self.reading();
        let reference = own.descriptor(0);
        let q_self = own.first_point(0).clone();
        let q_len = q_self.norm2();
        let mut try_target = |target: &Corona<S>, post: Option<&Isometry2<S>>| {
            let r = target.reading();
            for k in 0..target.tiles.len() {
                if !r.structure_matches(&own, k) || r.first_point(k).norm2() != q_len {
                    continue;
                }
                if r.descriptor(k) != reference {
                    continue;
                }
                let q_t = r.first_point(k);
                let rot = Isometry2::rotation_between(&q_self, q_t, &Point2::origin())
                    .expect("descriptor equality implies equal lengths");
                let shift = target.center.sub(&rot.apply(&self.center));
                let iso = Isometry2 { shift, ..rot };
                out.push(match post {
                    Some(p) => p.compose(&iso),
                    None => iso,
                });
            }
        };
        try_target(other, None);
        if mode == Mode::Full {
            let a = other.center.clone();
            let b = Point2::new(a.x.clone() + &S::one(), a.y.clone());
            let m = Isometry2::reflection(&a, &b).expect("nonzero direction");
            let mirrored = other.transformed(&m);
            try_target(&mirrored, Some(&m));
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for Corona<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Corona")
            .field("center", &self.center)
            .field("tiles", &self.tiles)
            .finish()
    }
}

/// Isometry-invariant key of a corona; compared in the canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalSignature<S> {
    values: Vec<S>,
}

impl<S: Scalar> CanonicalSignature<S> {
    pub fn values(&self) -> &[S] {
        &self.values
    }
}

impl<S: Scalar> Ord for CanonicalSignature<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            let o = a.canonical_cmp(b);
            if o != Ordering::Equal {
                return o;
            }
        }
        self.values.len().cmp(&other.values.len())
    }
}

impl<S: Scalar> PartialOrd for CanonicalSignature<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> fmt::Debug for CanonicalSignature<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sig[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::cos_sin_15;
    use crate::{q, QScalar};

    type P = Point2<QScalar>;

    fn pt(x: i64, y: i64) -> P {
        Point2::new(QScalar::from_int(x), QScalar::from_int(y))
    }

    fn poly(vs: &[(i64, i64)]) -> Polygon<QScalar> {
        Polygon::new(vs.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let id = Isometry2::identity();
        assert_eq!(id.apply(&pt(1, 2)), pt(1, 2));
        let half = Isometry2::half_turn(&P::origin());
        assert_eq!(half.apply(&pt(1, 0)), pt(-1, 0));
        let refl = Isometry2::reflection(&pt(0, 0), &pt(1, 0)).unwrap();
        let p = Point2::new(QScalar::sqrt2(), QScalar::sqrt3());
        assert_eq!(refl.apply(&p), Point2::new(QScalar::sqrt2(), -QScalar::sqrt3()));
    }

    #[test]
    fn compose_examples() {
        let refl = Isometry2::reflection(&pt(0, 1), &pt(3, 4)).unwrap();
        let twice = refl.compose(&refl);
        assert!(twice.is_identity() && twice.direct);

        let (c, s) = cos_sin_15(6);
        let rot = Isometry2::rotation(c, s, &P::origin()).unwrap();
        let mixed = refl.compose(&rot);
        assert!(!mixed.direct);

        let t = Isometry2::translation(pt(1, 0)).compose(&Isometry2::translation(pt(0, 1)));
        assert_eq!(t, Isometry2::translation(pt(1, 1)));
    }

    #[test]
    fn inverse_and_center() {
        let (c, s) = cos_sin_15(4);
        let rot = Isometry2::rotation(c, s, &pt(2, -1)).unwrap();
        assert!(rot.compose(&rot.inverse()).is_identity());
        assert_eq!(rot.rotation_center(), Some(pt(2, -1)));
        assert_eq!(rot.linear_order(), Some(6));
    }

    #[test]
    fn rejects_bad_polygons() {
        assert!(matches!(
            Polygon::new(vec![pt(0, 0), pt(1, 0)]),
            Err(GeometryError::TooFewVertices(2))
        ));
        assert!(Polygon::new(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(1, 1)]).is_err());
        assert!(Polygon::new(vec![pt(0, 0), pt(2, 0), pt(1, 1), pt(2, 2), pt(0, 2)]).is_err());
        // Clockwise input is reoriented.
        let p = poly(&[(0, 0), (0, 1), (1, 0)]);
        assert!(p.area2().is_positive());
    }

    #[test]
    fn congruence_examples() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let moved = poly(&[(5, 2), (6, 2), (6, 3), (5, 3)]);
        let iso = polygon_congruence(&sq, &moved, Mode::Direct).unwrap();
        assert!(iso.direct);

        let scalene = poly(&[(0, 0), (4, 0), (1, 2)]);
        let mirror = poly(&[(0, 0), (-4, 0), (-1, 2)]);
        assert!(polygon_congruence(&scalene, &mirror, Mode::Direct).is_none());
        let found = polygon_congruence(&scalene, &mirror, Mode::Full).unwrap();
        assert!(!found.direct);
        assert_eq!(scalene.transformed(&found).key(), mirror.key());

        let same_perimeter = Polygon::new(vec![
            Point2::new(q(0, 1), q(0, 1)),
            Point2::new(q(4, 1), q(0, 1)),
            Point2::new(q(0, 1), q(3, 1)),
        ])
        .unwrap();
        let scaled = poly(&[(0, 0), (8, 0), (0, 6)]);
        assert!(polygon_congruence(&same_perimeter, &scaled, Mode::Full).is_none());
    }

    fn square_corona() -> Corona<QScalar> {
        let tiles = vec![
            poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]),
            poly(&[(0, 0), (0, 1), (-1, 1), (-1, 0)]),
            poly(&[(0, 0), (-1, 0), (-1, -1), (0, -1)]),
            poly(&[(0, 0), (0, -1), (1, -1), (1, 0)]),
        ];
        Corona::new(pt(0, 0), tiles).unwrap()
    }

    #[test]
    fn corona_closure_is_checked() {
        let c = square_corona();
        assert_eq!(c.gon_sizes(), (vec![4, 4, 4, 4], None));
        let three = c.tiles()[..3].to_vec();
        assert_eq!(
            Corona::new(pt(0, 0), three).unwrap_err(),
            GeometryError::AngleSumNot2Pi
        );
    }

    #[test]
    fn alignments_of_square_corona() {
        let c = square_corona();
        assert_eq!(c.alignments(&c, Mode::Direct).len(), 4);
        assert_eq!(c.alignments(&c, Mode::Full).len(), 8);
    }
}
