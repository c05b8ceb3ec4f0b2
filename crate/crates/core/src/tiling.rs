//! Finite patches grown from a motif and generating isometries, corona
//! extraction and monocoronality checks.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_traits::Zero;

use crate::field::Scalar;
use crate::geometry::{abs, CanonicalSignature, Corona, GeometryError, Incidence, Mode};
use crate::layers::LayerDescription;
use crate::{Isometry, Point, Polygon, QScalar};

/// Motif plus generating isometries; the orbit of the motif tiles the plane
/// (or, for layered windows, a horizontal strip).
#[derive(Debug, Clone)]
pub struct TilingSpec {
    pub motif: Vec<Polygon>,
    pub generators: Vec<Isometry>,
    pub periodicity_rank: u8,
    pub layers: Option<LayerDescription>,
}

impl TilingSpec {
    pub fn new(motif: Vec<Polygon>, generators: Vec<Isometry>, periodicity_rank: u8) -> Self {
        TilingSpec {
            motif,
            generators,
            periodicity_rank,
            layers: None,
        }
    }

    /// Largest L1 diameter among motif tiles; bounds every tile's diameter.
    pub fn tile_bound(&self) -> QScalar {
        self.motif
            .iter()
            .map(Polygon::diameter_bound)
            .fold(QScalar::from_int(0), |a, b| if b > a { b } else { a })
    }

    /// The same tiling moved by `iso`.
    pub fn transformed(&self, iso: &Isometry) -> TilingSpec {
        let inv = iso.inverse();
        TilingSpec {
            motif: self.motif.iter().map(|t| t.transformed(iso)).collect(),
            generators: self
                .generators
                .iter()
                .map(|g| iso.compose(g).compose(&inv))
                .collect(),
            periodicity_rank: self.periodicity_rank,
            layers: self.layers.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TilingError {
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("tiles {0:?} and {1:?} overlap")]
    Overlap(Vec<(f64, f64)>, Vec<(f64, f64)>),
    #[error("gap in the patch at vertex {0:?}")]
    Gap((f64, f64)),
    #[error("vertex {0:?} is not an interior vertex of the patch")]
    BoundaryVertex((f64, f64)),
    #[error("orbit exceeded {0} tiles")]
    TooManyTiles(usize),
    #[error("patch file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

const MAX_TILES: usize = 200_000;

/// A finite, interior-disjoint set of tiles covering a disc.
#[derive(Debug, Clone)]
pub struct Patch {
    tiles: Vec<Polygon>,
    /// Tiles containing each point (as a corner or in an edge).
    vertex_index: HashMap<Point, Vec<usize>>,
    /// Pairs of tiles sharing a boundary segment of positive length.
    adjacency: Vec<(usize, usize)>,
    origin: Point,
    radius: QScalar,
    interior: Vec<Point>,
    key_index: HashMap<Vec<Point>, usize>,
}

fn approx_poly(p: &Polygon) -> Vec<(f64, f64)> {
    p.vertices().iter().map(Point::approx).collect()
}

/// Exact separating-axis test for convex polygons.
pub fn interiors_overlap(a: &Polygon, b: &Polygon) -> bool {
    fn separated(a: &Polygon, b: &Polygon) -> bool {
        let n = a.n_gon();
        (0..n).any(|i| {
            let p = a.vertex(i);
            let e = a.edge_vector(i);
            b.vertices().iter().all(|v| !e.cross(&v.sub(p)).is_positive())
        })
    }
    !(separated(a, b) || separated(b, a))
}

/// Spatial hash on approximate coordinates, used only to prune pair tests.
struct Grid {
    cell: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl Grid {
    fn new(cell: f64) -> Self {
        Grid {
            cell: cell.max(1e-9),
            cells: HashMap::new(),
        }
    }

    fn range(&self, lo: (f64, f64), hi: (f64, f64)) -> impl Iterator<Item = (i64, i64)> {
        let c = self.cell;
        let (x0, y0) = ((lo.0 / c).floor() as i64 - 1, (lo.1 / c).floor() as i64 - 1);
        let (x1, y1) = ((hi.0 / c).floor() as i64 + 1, (hi.1 / c).floor() as i64 + 1);
        (x0..=x1).flat_map(move |x| (y0..=y1).map(move |y| (x, y)))
    }

    fn insert_box(&mut self, id: usize, lo: (f64, f64), hi: (f64, f64)) {
        let c = self.cell;
        let (x0, y0) = ((lo.0 / c).floor() as i64, (lo.1 / c).floor() as i64);
        let (x1, y1) = ((hi.0 / c).floor() as i64, (hi.1 / c).floor() as i64);
        for x in x0..=x1 {
            for y in y0..=y1 {
                self.cells.entry((x, y)).or_default().push(id);
            }
        }
    }

    fn near(&self, lo: (f64, f64), hi: (f64, f64)) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .range(lo, hi)
            .filter_map(|k| self.cells.get(&k))
            .flatten()
            .copied()
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn bbox(p: &Polygon) -> ((f64, f64), (f64, f64)) {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (x, y) in approx_poly(p) {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    (lo, hi)
}

fn l1(p: &Point) -> QScalar {
    abs(&p.x) + &abs(&p.y)
}

/// Grows the orbit of the motif around the origin and checks it tiles the
/// disc of the given radius.
pub fn build_patch(spec: &TilingSpec, radius: &QScalar) -> Result<Patch, TilingError> {
    build_patch_at(spec, &Point::origin(), radius)
}

pub fn build_patch_at(spec: &TilingSpec, origin: &Point, radius: &QScalar) -> Result<Patch, TilingError> {
    if !radius.is_positive() {
        return Err(TilingError::NonPositiveRadius);
    }
    let m = spec.tile_bound();
    let keep = radius.clone() + &m;
    let keep2 = keep.square();
    // Largest displacement of a motif corner under one generator.
    let mut step = QScalar::from_int(0);
    let mut gens = Vec::new();
    for g in &spec.generators {
        gens.push(g.clone());
        gens.push(g.inverse());
    }
    for g in &gens {
        for t in &spec.motif {
            let d = l1(&g.apply(t.vertex(0)).sub(t.vertex(0)));
            if d > step {
                step = d;
            }
        }
    }
    let explore = keep.clone() + &step + &m;
    let explore2 = explore.square();

    let mut seen: HashSet<Vec<Point>> = HashSet::new();
    let mut queue: VecDeque<Polygon> = VecDeque::new();
    let mut kept: Vec<Polygon> = Vec::new();
    for t in &spec.motif {
        if seen.insert(t.key()) {
            queue.push_back(t.clone());
        }
    }
    while let Some(t) = queue.pop_front() {
        let d2 = t.vertex(0).sub(origin).norm2();
        if d2 > explore2 {
            continue;
        }
        if d2 <= keep2 {
            kept.push(t.clone());
            if kept.len() > MAX_TILES {
                return Err(TilingError::TooManyTiles(MAX_TILES));
            }
        }
        for g in &gens {
            let img = t.transformed(g);
            if seen.insert(img.key()) {
                queue.push_back(img);
            }
        }
    }
    kept.sort_by(|a, b| cmp_keys(&a.key(), &b.key()));
    let patch = Patch::from_tiles(kept, origin.clone(), radius.clone())?;
    patch.check_gaps()?;
    Ok(patch)
}

fn cmp_keys(a: &[Point], b: &[Point]) -> std::cmp::Ordering {
    for (p, q) in a.iter().zip(b) {
        let o = p.canonical_cmp(q);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

impl Patch {
    /// Indexes a tile set; fails if two tiles overlap. Gaps are not checked.
    pub fn from_tiles(tiles: Vec<Polygon>, origin: Point, radius: QScalar) -> Result<Self, TilingError> {
        let mut cell = 0.0f64;
        let boxes: Vec<_> = tiles.iter().map(bbox).collect();
        for (lo, hi) in &boxes {
            cell = cell.max(hi.0 - lo.0).max(hi.1 - lo.1);
        }
        let mut grid = Grid::new(cell);
        for (i, (lo, hi)) in boxes.iter().enumerate() {
            grid.insert_box(i, *lo, *hi);
        }
        let eps = 1e-9 * (1.0 + cell);
        let mut adjacency = Vec::new();
        let mut key_index = HashMap::new();
        for (i, t) in tiles.iter().enumerate() {
            if key_index.insert(t.key(), i).is_some() {
                return Err(TilingError::Overlap(approx_poly(t), approx_poly(t)));
            }
        }
        for (i, a) in tiles.iter().enumerate() {
            let (lo, hi) = boxes[i];
            for j in grid.near(lo, hi) {
                if j <= i {
                    continue;
                }
                let (lo2, hi2) = boxes[j];
                if lo2.0 > hi.0 + eps || lo.0 > hi2.0 + eps || lo2.1 > hi.1 + eps || lo.1 > hi2.1 + eps {
                    continue;
                }
                let b = &tiles[j];
                if interiors_overlap(a, b) {
                    return Err(TilingError::Overlap(approx_poly(a), approx_poly(b)));
                }
                if share_segment(a, b) {
                    adjacency.push((i, j));
                }
            }
        }

        let mut vertex_index: HashMap<Point, Vec<usize>> = HashMap::new();
        for (i, t) in tiles.iter().enumerate() {
            for v in t.vertices() {
                vertex_index.entry(v.clone()).or_default().push(i);
            }
        }
        // Corners lying inside another tile's edge.
        let mut points: Vec<Point> = vertex_index.keys().cloned().collect();
        points.sort_by(|a, b| a.canonical_cmp(b));
        let mut pgrid = Grid::new(cell);
        for (k, p) in points.iter().enumerate() {
            let a = p.approx();
            pgrid.insert_box(k, a, a);
        }
        for (i, t) in tiles.iter().enumerate() {
            let (lo, hi) = boxes[i];
            for k in pgrid.near(lo, hi) {
                let p = &points[k];
                if let Incidence::Edge(_) = t.incidence(p) {
                    vertex_index.get_mut(p).expect("indexed").push(i);
                }
            }
        }
        for list in vertex_index.values_mut() {
            list.sort_unstable();
            list.dedup();
        }
        let r2 = radius.square();
        let mut interior: Vec<Point> = points
            .into_iter()
            .filter(|p| p.sub(&origin).norm2() <= r2)
            .collect();
        interior.sort_by(|a, b| {
            a.sub(&origin)
                .norm2()
                .partial_cmp(&b.sub(&origin).norm2())
                .expect("total on the field")
                .then_with(|| a.canonical_cmp(b))
        });
        Ok(Patch {
            tiles,
            vertex_index,
            adjacency,
            origin,
            radius,
            interior,
            key_index,
        })
    }

    fn check_gaps(&self) -> Result<(), TilingError> {
        for v in &self.interior {
            if self.vertex_corona(v).is_err() {
                return Err(TilingError::Gap(v.approx()));
            }
        }
        Ok(())
    }

    pub fn tiles(&self) -> &[Polygon] {
        &self.tiles
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn radius(&self) -> &QScalar {
        &self.radius
    }

    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// Indices of tiles containing `p` on their boundary.
    pub fn incident(&self, p: &Point) -> &[usize] {
        self.vertex_index.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Vertices within the patch radius, nearest the origin first.
    pub fn interior_vertices(&self) -> &[Point] {
        &self.interior
    }

    pub fn contains_tile(&self, t: &Polygon) -> bool {
        self.key_index.contains_key(&t.key())
    }

    pub fn tile_index(&self, t: &Polygon) -> Option<usize> {
        self.key_index.get(&t.key()).copied()
    }

    pub fn vertex_corona(&self, v: &Point) -> Result<Corona<QScalar>, TilingError> {
        let inc = self.incident(v);
        if inc.is_empty() {
            return Err(TilingError::BoundaryVertex(v.approx()));
        }
        let tiles = inc.iter().map(|&i| self.tiles[i].clone()).collect();
        Corona::new(v.clone(), tiles).map_err(|_| TilingError::BoundaryVertex(v.approx()))
    }

    /// True iff no corner of a tile lies inside an edge of another tile.
    pub fn is_face_to_face(&self) -> bool {
        self.vertex_index.iter().all(|(p, list)| {
            list.iter()
                .all(|&i| matches!(self.tiles[i].incidence(p), Incidence::Vertex(_)))
        })
    }

    /// Interior vertices that lie in the relative interior of exactly one
    /// tile edge, and those that lie in none.
    pub fn flat_vertex_counts(&self) -> (usize, usize) {
        let mut one = 0;
        let mut none = 0;
        for v in &self.interior {
            let flat = self
                .incident(v)
                .iter()
                .filter(|&&i| matches!(self.tiles[i].incidence(v), Incidence::Edge(_)))
                .count();
            match flat {
                0 => none += 1,
                1 => one += 1,
                _ => {}
            }
        }
        (one, none)
    }

    /// Serializes to the versioned text format.
    pub fn export(&self) -> String {
        let mut s = String::new();
        s.push_str(PATCH_HEADER);
        s.push('\n');
        let _ = writeln!(s, "origin {} {}", coord(&self.origin.x), coord(&self.origin.y));
        let _ = writeln!(s, "radius {}", coord(&self.radius));
        let _ = writeln!(s, "tiles {}", self.tiles.len());
        for t in &self.tiles {
            let _ = write!(s, "tile {}", t.n_gon());
            for v in t.vertices() {
                let _ = write!(s, " {} {}", coord(&v.x), coord(&v.y));
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text format and re-indexes the tiles (overlaps rejected).
    pub fn import(text: &str) -> Result<Patch, TilingError> {
        let perr = |line: usize, msg: &str| TilingError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty patch file"))?;
        if header != PATCH_HEADER {
            return Err(perr(ln, "missing or unsupported header"));
        }
        let mut origin = None;
        let mut radius = None;
        let mut declared = None;
        let mut tiles = Vec::new();
        for (ln, line) in lines {
            let mut words = line.split_whitespace();
            match words.next() {
                Some("origin") => {
                    let x = parse_coord(words.next(), ln)?;
                    let y = parse_coord(words.next(), ln)?;
                    origin = Some(Point::new(x, y));
                }
                Some("radius") => radius = Some(parse_coord(words.next(), ln)?),
                Some("tiles") => {
                    let n: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| perr(ln, "expected tile count"))?;
                    declared = Some(n);
                }
                Some("tile") => {
                    let n: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| perr(ln, "expected gon size"))?;
                    let mut vs = Vec::with_capacity(n);
                    for _ in 0..n {
                        let x = parse_coord(words.next(), ln)?;
                        let y = parse_coord(words.next(), ln)?;
                        vs.push(Point::new(x, y));
                    }
                    if words.next().is_some() {
                        return Err(perr(ln, "trailing data after tile"));
                    }
                    tiles.push(Polygon::new(vs).map_err(|e| perr(ln, &e.to_string()))?);
                }
                Some(other) => return Err(perr(ln, &format!("unknown record {other:?}"))),
                None => {}
            }
        }
        let last = text.lines().count().max(1);
        let origin = origin.ok_or_else(|| perr(last, "missing origin record"))?;
        let radius = radius.ok_or_else(|| perr(last, "missing radius record"))?;
        if declared != Some(tiles.len()) {
            return Err(perr(last, "tile count does not match the tiles record"));
        }
        Patch::from_tiles(tiles, origin, radius)
    }
}

fn share_segment(a: &Polygon, b: &Polygon) -> bool {
    for i in 0..a.n_gon() {
        let p = a.vertex(i);
        let d = a.edge_vector(i);
        for j in 0..b.n_gon() {
            let q = b.vertex(j);
            let e = b.edge_vector(j);
            if !d.cross(&e).is_zero() || !d.cross(&q.sub(p)).is_zero() {
                continue;
            }
            // Collinear: project onto d and test for positive-length overlap.
            let dd = d.norm2();
            let t0 = q.sub(p).dot(&d);
            let t1 = b.vertex(j + 1).sub(p).dot(&d);
            let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
            let zero = QScalar::from_int(0);
            let lo = if lo > zero { lo } else { zero.clone() };
            let hi = if hi < dd { hi } else { dd };
            if lo < hi {
                return true;
            }
        }
    }
    false
}

pub const PATCH_HEADER: &str = "monocoronal-patch v1";

/// `[a,b,c,d]` for `a + b√2 + c√3 + d√6`.
fn coord(s: &QScalar) -> String {
    let c = s.coeffs();
    format!("[{},{},{},{}]", c[0], c[1], c[2], c[3])
}

fn parse_coord(word: Option<&str>, line: usize) -> Result<QScalar, TilingError> {
    let err = |msg: &str| TilingError::Parse {
        line,
        msg: msg.to_string(),
    };
    let w = word.ok_or_else(|| err("missing coordinate"))?;
    let inner = w
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err("coordinate must look like [a,b,c,d]"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 4 {
        return Err(err("coordinate needs four rationals"));
    }
    let mut c = Vec::with_capacity(4);
    for p in parts {
        c.push(
            <crate::Rational as crate::field::Coefficient>::parse_ratio(p)
                .ok_or_else(|| err("bad rational"))?,
        );
    }
    let d = c.pop().expect("4");
    let cc = c.pop().expect("3");
    let b = c.pop().expect("2");
    let a = c.pop().expect("1");
    Ok(QScalar::new(a, b, cc, d))
}

/// Outcome of comparing the coronae of all interior vertices.
#[derive(Debug, Clone)]
pub struct MonocoronalReport {
    pub mode: Mode,
    pub verdict: bool,
    pub witness: Option<(Point, Point)>,
    pub corona_signature: Option<CanonicalSignature<QScalar>>,
    pub vertices_checked: usize,
}

pub fn verify_monocoronal(patch: &Patch, mode: Mode) -> Result<MonocoronalReport, TilingError> {
    let verts = patch.interior_vertices();
    let mut reference: Option<(Point, CanonicalSignature<QScalar>)> = None;
    for v in verts {
        let sig = patch.vertex_corona(v)?.signature(mode);
        match &reference {
            None => reference = Some((v.clone(), sig)),
            Some((v0, s0)) => {
                if *s0 != sig {
                    return Ok(MonocoronalReport {
                        mode,
                        verdict: false,
                        witness: Some((v0.clone(), v.clone())),
                        corona_signature: None,
                        vertices_checked: verts.len(),
                    });
                }
            }
        }
    }
    Ok(MonocoronalReport {
        mode,
        verdict: reference.is_some(),
        witness: None,
        corona_signature: reference.map(|(_, s)| s),
        vertices_checked: verts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(q(x, 1), q(y, 1))
    }

    fn unit_square_spec() -> TilingSpec {
        let sq = Polygon::new(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]).unwrap();
        TilingSpec::new(
            vec![sq],
            vec![
                Isometry::translation(pt(1, 0)),
                Isometry::translation(pt(0, 1)),
            ],
            2,
        )
    }

    #[test]
    fn square_grid_patch() {
        let p = build_patch(&unit_square_spec(), &q(3, 1)).unwrap();
        assert!(p.tiles().len() >= 25);
        assert!(p.is_face_to_face());
        let c = p.vertex_corona(&pt(0, 0)).unwrap();
        assert_eq!(c.gon_sizes(), (vec![4, 4, 4, 4], None));
        assert!(verify_monocoronal(&p, Mode::Direct).unwrap().verdict);
    }

    #[test]
    fn broken_generator_overlaps() {
        let mut spec = unit_square_spec();
        spec.generators[0] = Isometry::translation(Point::new(q(1, 2), q(0, 1)));
        assert!(matches!(
            build_patch(&spec, &q(2, 1)),
            Err(TilingError::Overlap(..))
        ));
    }

    #[test]
    fn missing_generator_leaves_gaps() {
        let mut spec = unit_square_spec();
        spec.generators[1] = Isometry::translation(pt(0, 2));
        assert!(matches!(build_patch(&spec, &q(2, 1)), Err(TilingError::Gap(_))));
    }

    #[test]
    fn running_bond_is_not_face_to_face() {
        let brick = Polygon::new(vec![pt(0, 0), pt(2, 0), pt(2, 1), pt(0, 1)]).unwrap();
        let spec = TilingSpec::new(
            vec![brick],
            vec![
                Isometry::translation(pt(2, 0)),
                Isometry::translation(pt(1, 1)),
            ],
            2,
        );
        let p = build_patch(&spec, &q(3, 1)).unwrap();
        assert!(!p.is_face_to_face());
        let c = p.vertex_corona(&pt(0, 0)).unwrap();
        assert_eq!(c.gon_sizes(), (vec![4, 4], Some(4)));
        let (one, none) = p.flat_vertex_counts();
        assert_eq!(none, 0);
        assert_eq!(one, p.interior_vertices().len());
    }

    #[test]
    fn export_round_trip() {
        let p = build_patch(&unit_square_spec(), &q(2, 1)).unwrap();
        let text = p.export();
        let back = Patch::import(&text).unwrap();
        assert_eq!(back.export(), text);
        let bad = text.replacen("tile 4", "tile 5", 1);
        assert!(matches!(Patch::import(&bad), Err(TilingError::Parse { .. })));
    }
}
