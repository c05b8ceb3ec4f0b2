//! Symmetry discovery on finite patches and orbifold classification.

mod names;

use std::collections::HashSet;
use std::fmt;

pub use names::{GroupName, UnknownGroup};

use num_traits::Zero;

use crate::field::Scalar;
use crate::tiling::{Patch, TilingError, TilingSpec};
use crate::{Isometry, Point, QScalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymmetryError {
    #[error("patch too small: certification radius {have:.3} is below the motif diameter {need:.3}")]
    PatchTooSmall { have: f64, need: f64 },
    #[error("patch has no interior vertex")]
    NoVertices,
    #[error("declared generator {0} is not a symmetry of the patch")]
    UnverifiedGenerator(usize),
    #[error("expected translation rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },
    #[error("inconsistent symmetry set: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Kind of a single plane isometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementKind {
    Identity,
    Translation(Point),
    Rotation { centre: Point, order: u32 },
    /// Axis through `point` with direction `direction`.
    Reflection { point: Point, direction: Point },
    Glide { point: Point, direction: Point, glide: Point },
}

impl ElementKind {
    pub fn of(g: &Isometry) -> ElementKind {
        if g.is_translation() {
            if g.shift.is_zero() {
                return ElementKind::Identity;
            }
            return ElementKind::Translation(g.shift.clone());
        }
        if g.direct {
            let centre = g.rotation_center().expect("direct non-translation");
            let order = g.linear_order().unwrap_or(0);
            return ElementKind::Rotation { centre, order };
        }
        let (along, perp) = g.glide_decomposition().expect("indirect");
        let direction = g.axis_direction().expect("indirect");
        let point = perp.scale(&QScalar::from_ratio(1, 2));
        if along.is_zero() {
            ElementKind::Reflection { point, direction }
        } else {
            ElementKind::Glide {
                point,
                direction,
                glide: along,
            }
        }
    }
}

fn fmt_point(p: &Point) -> String {
    let (x, y) = p.approx();
    format!("({x:.6}, {y:.6})")
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Identity => write!(f, "identity"),
            ElementKind::Translation(v) => write!(f, "translation by {}", fmt_point(v)),
            ElementKind::Rotation { centre, order } => {
                write!(f, "rotation of order {order} about {}", fmt_point(centre))
            }
            ElementKind::Reflection { point, direction } => {
                write!(f, "reflection in axis through {} along {}", fmt_point(point), fmt_point(direction))
            }
            ElementKind::Glide {
                point,
                direction,
                glide,
            } => write!(
                f,
                "glide reflection in axis through {} along {} by {}",
                fmt_point(point),
                fmt_point(direction),
                fmt_point(glide)
            ),
        }
    }
}

fn round_exact(x: &QScalar) -> i64 {
    // floor(x + 1/2), corrected exactly around the f64 estimate
    let y = x.clone() + &QScalar::from_ratio(1, 2);
    let mut k = y.approx().floor() as i64;
    while (y.clone() - &QScalar::from_int(k)).is_negative() {
        k -= 1;
    }
    while !(y.clone() - &QScalar::from_int(k + 1)).is_negative() {
        k += 1;
    }
    k
}

/// Translation lattice with 0, 1 or 2 basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<Point>,
}

impl Lattice {
    pub fn new(basis: Vec<Point>) -> Self {
        assert!(basis.len() <= 2);
        Lattice { basis }
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the basis when `v` lies in its real span.
    pub fn coords(&self, v: &Point) -> Option<Vec<QScalar>> {
        match self.basis.as_slice() {
            [] => v.is_zero().then(Vec::new),
            [t] => {
                if !t.cross(v).is_zero() {
                    return None;
                }
                Some(vec![t.dot(v) / t.norm2()])
            }
            [t1, t2] => {
                let det = t1.cross(t2);
                Some(vec![v.cross(t2) / det.clone(), t1.cross(v) / det])
            }
            _ => unreachable!(),
        }
    }

    pub fn contains(&self, v: &Point) -> bool {
        self.coords(v)
            .is_some_and(|c| c.iter().all(|x| x.to_integer().is_some()))
    }

    pub fn combination(&self, coeffs: &[i64]) -> Point {
        let mut p = Point::origin();
        for (t, &k) in self.basis.iter().zip(coeffs) {
            p = p.add(&t.scale(&QScalar::from_int(k)));
        }
        p
    }

    /// Lattice vector nearest to `v` in basis coordinates (the component
    /// outside the span is ignored).
    pub fn nearest(&self, v: &Point) -> Point {
        let coeffs: Vec<i64> = match self.basis.as_slice() {
            [] => vec![],
            [t] => vec![round_exact(&(t.dot(v) / t.norm2()))],
            _ => self
                .coords(v)
                .expect("rank 2 spans the plane")
                .iter()
                .map(round_exact)
                .collect(),
        };
        self.combination(&coeffs)
    }

    /// Lattice vectors with coefficients in `-k..=k`.
    pub fn small_vectors(&self, k: i64) -> Vec<Point> {
        match self.basis.len() {
            0 => vec![Point::origin()],
            1 => (-k..=k).map(|a| self.combination(&[a])).collect(),
            _ => (-k..=k)
                .flat_map(|a| (-k..=k).map(move |b| (a, b)))
                .map(|(a, b)| self.combination(&[a, b]))
                .collect(),
        }
    }
}

/// Translation lattice plus point-symmetry coset representatives.
///
/// Each representative `g` is normalised so that `g(anchor) - anchor` is
/// the shortest vector of its class modulo the lattice.
#[derive(Debug, Clone)]
pub struct SymmetrySet {
    lattice: Lattice,
    point_symmetries: Vec<Isometry>,
    anchor: Point,
}

impl SymmetrySet {
    pub fn new(lattice: Lattice, reps: Vec<Isometry>, anchor: Point) -> Self {
        let mut set = SymmetrySet {
            lattice,
            point_symmetries: Vec::new(),
            anchor,
        };
        let mut seen = HashSet::new();
        for g in reps {
            if g.is_translation() {
                continue;
            }
            let r = set.reduce(&g);
            if seen.insert(r.clone()) {
                set.point_symmetries.push(r);
            }
        }
        set.point_symmetries.sort_by(|a, b| {
            (a.direct, a.linear_order())
                .cmp(&(b.direct, b.linear_order()))
                .reverse()
                .then_with(|| a.shift.canonical_cmp(&b.shift))
        });
        set
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn translations(&self) -> &[Point] {
        self.lattice.basis()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Coset representatives of non-translation symmetries.
    pub fn point_symmetries(&self) -> &[Isometry] {
        &self.point_symmetries
    }

    /// Canonical representative of `g` modulo the lattice.
    pub fn reduce(&self, g: &Isometry) -> Isometry {
        let moved = g.apply(&self.anchor).sub(&self.anchor);
        let t = self.lattice.nearest(&moved);
        Isometry::translation(t.neg()).compose(g)
    }

    /// True iff `g` is (exactly) an element of the group.
    pub fn contains(&self, g: &Isometry) -> bool {
        if g.is_translation() {
            return self.lattice.contains(&g.shift);
        }
        let r = self.reduce(g);
        self.point_symmetries.contains(&r)
    }

    /// Products of representatives stay in the set.
    pub fn is_closed(&self) -> bool {
        let all: Vec<Isometry> = std::iter::once(Isometry::identity())
            .chain(self.point_symmetries.iter().cloned())
            .collect();
        all.iter()
            .all(|a| all.iter().all(|b| self.contains(&a.compose(b))) && self.contains(&a.inverse()))
            && self.point_symmetries.iter().all(|g| {
                self.lattice
                    .basis()
                    .iter()
                    .all(|t| self.lattice.contains(&g.apply_linear(t)))
            })
    }

    /// Group elements `τ_t ∘ g` for representatives `g` and small lattice `t`.
    fn elements_near(&self, k: i64) -> Vec<Isometry> {
        let ts = self.lattice.small_vectors(k);
        self.point_symmetries
            .iter()
            .flat_map(|g| ts.iter().map(move |t| Isometry::translation(t.clone()).compose(g)))
            .collect()
    }

    pub fn max_rotation_order(&self) -> u32 {
        self.point_symmetries
            .iter()
            .filter(|g| g.direct)
            .filter_map(Isometry::linear_order)
            .max()
            .unwrap_or(1)
    }

    fn indirect(&self) -> impl Iterator<Item = &Isometry> {
        self.point_symmetries.iter().filter(|g| !g.direct)
    }

    fn reflections(&self) -> Vec<Isometry> {
        self.elements_near(2)
            .into_iter()
            .filter(Isometry::is_reflection)
            .collect()
    }

    /// Some indirect element has a glide vector outside the lattice, i.e.
    /// an axis that is not a mirror.
    fn has_proper_glide_axis(&self) -> bool {
        self.elements_near(2).iter().any(|g| {
            !g.direct && {
                let (along, _) = g.glide_decomposition().expect("indirect");
                !self.lattice.contains(&along)
            }
        })
    }

    fn mirror_directions(&self) -> Vec<Point> {
        let mut dirs: Vec<Point> = Vec::new();
        for m in self.reflections() {
            let d = m.axis_direction().expect("indirect");
            if !dirs.iter().any(|e| e.cross(&d).is_zero()) {
                dirs.push(d);
            }
        }
        dirs
    }

    fn on_mirror(&self, c: &Point) -> bool {
        self.indirect().any(|g| {
            let t = c.sub(&g.apply(c));
            self.lattice.contains(&t)
        })
    }

    fn rotation_centres(&self, order: u32) -> Vec<Point> {
        let ts = self.lattice.small_vectors(4);
        self.point_symmetries
            .iter()
            .filter(|g| g.direct && g.linear_order() == Some(order))
            .flat_map(|g| {
                ts.iter()
                    .map(move |t| Isometry::translation(t.clone()).compose(g).rotation_center().expect("rotation"))
            })
            .collect()
    }

    fn check_orders(&self) -> Result<(), SymmetryError> {
        for g in &self.point_symmetries {
            if g.direct {
                match g.linear_order() {
                    Some(2 | 3 | 4 | 6) => {}
                    o => return Err(SymmetryError::Inconsistent(format!("rotation of order {o:?}"))),
                }
            }
        }
        Ok(())
    }

    /// Human-readable generators: lattice basis then representatives.
    pub fn describe(&self) -> Vec<ElementKind> {
        self.lattice
            .basis()
            .iter()
            .map(|t| ElementKind::Translation(t.clone()))
            .chain(self.point_symmetries.iter().map(ElementKind::of))
            .collect()
    }
}

/// Wallpaper group of a doubly periodic symmetry set.
pub fn classify_wallpaper(s: &SymmetrySet) -> Result<GroupName, SymmetryError> {
    if s.rank() != 2 {
        return Err(SymmetryError::Rank {
            expected: 2,
            found: s.rank(),
        });
    }
    s.check_orders()?;
    let n = s.max_rotation_order();
    let mirrors = s.mirror_directions();
    let indirect = s.indirect().next().is_some();
    let all_on_mirrors = |order: u32| s.rotation_centres(order).iter().all(|c| s.on_mirror(c));
    let name = match (n, mirrors.is_empty()) {
        (1, true) if indirect => GroupName::CrossCross,
        (1, true) => GroupName::Circle,
        (1, false) if s.has_proper_glide_axis() => GroupName::StarCross,
        (1, false) => GroupName::StarStar,
        (2, true) if indirect => GroupName::TwoTwoCross,
        (2, true) => GroupName::G2222,
        (2, false) if mirrors.len() == 1 => GroupName::TwoTwoStar,
        (2, false) if all_on_mirrors(2) => GroupName::Star2222,
        (2, false) => GroupName::TwoStar22,
        (3, true) => GroupName::G333,
        (3, false) if all_on_mirrors(3) => GroupName::Star333,
        (3, false) => GroupName::ThreeStar3,
        (4, true) => GroupName::G442,
        (4, false) if all_on_mirrors(4) => GroupName::Star442,
        (4, false) => GroupName::FourStar2,
        (6, true) => GroupName::G632,
        (6, false) => GroupName::Star632,
        _ => return Err(SymmetryError::Inconsistent(format!("rotation order {n}"))),
    };
    if n > 2 && mirrors.is_empty() && indirect {
        return Err(SymmetryError::Inconsistent("glides without mirrors at order > 2".into()));
    }
    Ok(name)
}

/// Frieze group of a singly periodic symmetry set.
pub fn classify_frieze(s: &SymmetrySet) -> Result<GroupName, SymmetryError> {
    if s.rank() != 1 {
        return Err(SymmetryError::Rank {
            expected: 1,
            found: s.rank(),
        });
    }
    let t = &s.translations()[0];
    let mut rotation = false;
    let mut h_mirror = false;
    let mut v_mirror = false;
    let mut glide = false;
    for g in s.point_symmetries() {
        if g.direct {
            if g.linear_order() != Some(2) {
                return Err(SymmetryError::Inconsistent("frieze rotation of order > 2".into()));
            }
            rotation = true;
            continue;
        }
        let u = g.axis_direction().expect("indirect");
        let (along, _) = g.glide_decomposition().expect("indirect");
        if u.cross(t).is_zero() {
            if s.lattice().contains(&along) {
                h_mirror = true;
            } else {
                glide = true;
            }
        } else if u.dot(t).is_zero() && along.is_zero() {
            v_mirror = true;
        } else {
            return Err(SymmetryError::Inconsistent("oblique axis in a frieze".into()));
        }
    }
    Ok(match (h_mirror, v_mirror, rotation, glide) {
        (true, true, _, _) => GroupName::StarTwoTwoInf,
        (true, false, _, _) => GroupName::InfStar,
        (false, true, true, _) => GroupName::TwoStarInf,
        (false, true, false, _) => GroupName::StarInfInf,
        (false, false, false, true) => GroupName::InfCross,
        (false, false, true, false) => GroupName::TwoTwoInf,
        (false, false, false, false) => GroupName::InfInf,
        (false, false, true, true) => {
            return Err(SymmetryError::Inconsistent("half-turn and glide without mirror".into()))
        }
    })
}

/// Frieze or wallpaper group according to the translation rank.
pub fn classify(s: &SymmetrySet) -> Result<GroupName, SymmetryError> {
    match s.rank() {
        1 => classify_frieze(s),
        _ => classify_wallpaper(s),
    }
}

/// All vertices of one translation cell lie in a single orbit.
pub fn vertex_transitive(patch: &Patch, s: &SymmetrySet) -> bool {
    if s.rank() != 2 {
        return false;
    }
    let Some(v0) = patch.interior_vertices().first() else {
        return false;
    };
    let lattice = s.lattice();
    let images: Vec<Point> = std::iter::once(v0.clone())
        .chain(s.point_symmetries().iter().map(|g| g.apply(v0)))
        .collect();
    let in_cell = |w: &Point| {
        let c = lattice.coords(&w.sub(v0)).expect("rank 2");
        c.iter()
            .all(|x| !x.is_negative() && (x.clone() - &QScalar::from_int(1)).is_negative())
    };
    let cell: Vec<&Point> = patch.interior_vertices().iter().filter(|w| in_cell(w)).collect();
    cell.iter()
        .all(|w| images.iter().any(|img| lattice.contains(&w.sub(img))))
}

/// Approximate tile-centre index for fast rejection before exact lookup.
struct ApproxIndex {
    cells: HashSet<(i64, i64)>,
    scale: f64,
}

impl ApproxIndex {
    fn new(points: impl Iterator<Item = (f64, f64)>) -> Self {
        let scale = 1e5;
        let cells = points
            .map(|(x, y)| ((x * scale).round() as i64, (y * scale).round() as i64))
            .collect();
        ApproxIndex { cells, scale }
    }

    fn maybe_contains(&self, (x, y): (f64, f64)) -> bool {
        let (cx, cy) = ((x * self.scale).round() as i64, (y * self.scale).round() as i64);
        (-1..=1).any(|dx| (-1..=1).any(|dy| self.cells.contains(&(cx + dx, cy + dy))))
    }
}

struct Verifier<'a> {
    patch: &'a Patch,
    /// Tiles with their f64 centres and distances from the patch origin.
    order: Vec<(usize, f64)>,
    centres: Vec<(f64, f64)>,
    index: ApproxIndex,
    radius: f64,
    origin: (f64, f64),
}

impl<'a> Verifier<'a> {
    fn new(patch: &'a Patch) -> Self {
        let origin = patch.origin().approx();
        let centres: Vec<(f64, f64)> = patch.tiles().iter().map(|t| t.vertex_mean().approx()).collect();
        let mut order: Vec<(usize, f64)> = centres
            .iter()
            .enumerate()
            .map(|(i, c)| (i, (c.0 - origin.0).hypot(c.1 - origin.1)))
            .collect();
        order.sort_by(|a, b| a.1.total_cmp(&b.1));
        Verifier {
            patch,
            order,
            index: ApproxIndex::new(centres.iter().copied()),
            centres,
            radius: patch.radius().approx(),
            origin,
        }
    }

    /// Radius of the disc on which `g` can be certified.
    fn reach(&self, g: &Isometry) -> f64 {
        let o = self.patch.origin();
        let (dx, dy) = g.apply(o).sub(o).approx();
        self.radius - dx.hypot(dy)
    }

    fn approx_apply(g: &Isometry, p: (f64, f64)) -> (f64, f64) {
        let [[a, b], [c, d]] = &g.linear;
        let (sx, sy) = g.shift.approx();
        (
            a.approx() * p.0 + b.approx() * p.1 + sx,
            c.approx() * p.0 + d.approx() * p.1 + sy,
        )
    }

    /// Every tile centred within the certification disc maps onto a tile.
    fn certifies(&self, g: &Isometry, reach: f64) -> bool {
        let limit = reach - 1e-9 * (1.0 + self.radius);
        let core: Vec<usize> = self
            .order
            .iter()
            .take_while(|(_, d)| *d <= limit)
            .map(|(i, _)| *i)
            .collect();
        let _ = self.origin;
        if !core
            .iter()
            .all(|&i| self.index.maybe_contains(Self::approx_apply(g, self.centres[i])))
        {
            return false;
        }
        core.iter()
            .all(|&i| self.patch.contains_tile(&self.patch.tiles()[i].transformed(g)))
    }
}

fn norm(p: &Point) -> f64 {
    let (x, y) = p.approx();
    x.hypot(y)
}

fn generator_reach(spec: &TilingSpec) -> f64 {
    spec.generators
        .iter()
        .flat_map(|g| spec.motif.iter().map(move |t| norm(&g.apply(t.vertex(0)).sub(t.vertex(0)))))
        .fold(0.0, f64::max)
}

/// Motif diameter: longest generator displacement plus the tile bound.
pub fn motif_diameter(spec: &TilingSpec) -> f64 {
    generator_reach(spec) + spec.tile_bound().approx()
}

/// A patch radius (about the origin) large enough for [`find_symmetries`]
/// on `spec`: room for the longest period plus a certified cell.
pub fn certification_radius(spec: &TilingSpec) -> QScalar {
    let m = spec.tile_bound().approx();
    let g = generator_reach(spec);
    let shortest = spec
        .generators
        .iter()
        .map(|g| norm(&g.shift))
        .fold(f64::INFINITY, f64::min);
    let shortest = if shortest.is_finite() { shortest.min(g) } else { g };
    QScalar::from_int((1.5 * g + 0.5 * shortest + 3.0 * m).ceil() as i64)
}

/// Radius of a disc around a lattice point that certifies a whole
/// translation cell, tiles included.
fn cell_radius(basis: &[&Point], tile: f64) -> f64 {
    basis.iter().map(|t| norm(t)).sum::<f64>() / 2.0 + tile
}

/// Finds the symmetry group of the tiling described by `spec`, certified
/// on `patch` (which must be built from `spec`).
///
/// Candidates map the corona of the vertex nearest the patch origin onto
/// congruent coronae; each is accepted when every tile in its certification
/// disc maps onto a tile and it preserves the translation lattice.
pub fn find_symmetries(spec: &TilingSpec, patch: &Patch) -> Result<SymmetrySet, SymmetryError> {
    let v0 = patch.interior_vertices().first().ok_or(SymmetryError::NoVertices)?;
    let tile = spec.tile_bound().approx();
    let offset = norm(&v0.sub(patch.origin()));
    let set = discover(patch, tile, generator_reach(spec) + 2.0 * offset + tile)?;
    for (i, g) in spec.generators.iter().enumerate() {
        if !set.contains(g) {
            return Err(SymmetryError::UnverifiedGenerator(i));
        }
    }
    if set.rank() != spec.periodicity_rank as usize {
        return Err(SymmetryError::Rank {
            expected: spec.periodicity_rank as usize,
            found: set.rank(),
        });
    }
    Ok(set)
}

/// Symmetries of a bare patch, without the spec that produced it. Periods
/// are sought up to a third of the patch radius.
pub fn find_patch_symmetries(patch: &Patch) -> Result<SymmetrySet, SymmetryError> {
    let tile = patch
        .tiles()
        .iter()
        .map(|t| t.diameter_bound().approx())
        .fold(0.0, f64::max);
    discover(patch, tile, patch.radius().approx() / 3.0)
}

fn discover(patch: &Patch, tile: f64, search: f64) -> Result<SymmetrySet, SymmetryError> {
    let v0 = patch.interior_vertices().first().ok_or(SymmetryError::NoVertices)?.clone();
    let c0 = patch.vertex_corona(&v0)?;
    let verifier = Verifier::new(patch);
    let too_small = |have: f64, need: f64| SymmetryError::PatchTooSmall { have, need };

    let mut translations: Vec<Isometry> = Vec::new();
    let mut others: Vec<Isometry> = Vec::new();
    for w in patch.interior_vertices() {
        if norm(&w.sub(&v0)) > search + 1e-9 {
            continue;
        }
        let cw = patch.vertex_corona(w)?;
        for g in c0.alignments(&cw, crate::Mode::Full) {
            if g.is_identity() {
                continue;
            }
            if g.is_translation() {
                translations.push(g);
            } else {
                others.push(g);
            }
        }
    }

    translations.sort_by(|a, b| {
        a.shift
            .norm2()
            .partial_cmp(&b.shift.norm2())
            .expect("total")
            .then_with(|| a.shift.canonical_cmp(&b.shift))
    });
    translations.dedup();
    let mut basis: Vec<Point> = Vec::new();
    for g in &translations {
        let t = &g.shift;
        let need = match basis.as_slice() {
            [] => cell_radius(&[t], tile),
            [b] if b.cross(t).is_zero() => continue,
            [b] => cell_radius(&[b, t], tile),
            _ => break,
        };
        let reach = verifier.reach(g);
        if reach < need {
            return Err(too_small(reach, need));
        }
        if verifier.certifies(g, reach) {
            basis.push(t.clone());
        }
    }
    // Lagrange-Gauss reduction keeps the basis short and canonical.
    if basis.len() == 2 {
        basis = gauss_reduce(basis[0].clone(), basis[1].clone());
    }
    let need = cell_radius(&basis.iter().collect::<Vec<_>>(), tile);
    if let Some(t) = basis.iter().map(|t| verifier.reach(&Isometry::translation(t.clone()))).reduce(f64::min) {
        if t < need {
            return Err(too_small(t, need));
        }
    }
    let lattice = Lattice::new(basis);

    let staging = SymmetrySet::new(lattice.clone(), Vec::new(), v0.clone());
    let mut classes: HashSet<Isometry> = HashSet::new();
    let mut reps = Vec::new();
    for g in others {
        let r = staging.reduce(&g);
        if !classes.insert(r.clone()) {
            continue;
        }
        if !lattice
            .basis()
            .iter()
            .all(|t| lattice.contains(&r.apply_linear(t)))
        {
            continue;
        }
        let reach = verifier.reach(&r);
        if reach < need {
            return Err(too_small(reach, need));
        }
        if verifier.certifies(&r, reach) {
            reps.push(r);
        }
    }
    Ok(SymmetrySet::new(lattice, reps, v0))
}

fn gauss_reduce(mut a: Point, mut b: Point) -> Vec<Point> {
    if b.norm2() < a.norm2() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let mu = round_exact(&(a.dot(&b) / a.norm2()));
        b = b.sub(&a.scale(&QScalar::from_int(mu)));
        if b.norm2() < a.norm2() {
            std::mem::swap(&mut a, &mut b);
        } else {
            break;
        }
    }
    vec![a, b]
}
