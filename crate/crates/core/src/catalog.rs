//! Declarative catalog of monocoronal tiling families.
//!
//! Each record names its free parameters, derived quantities, exact
//! constraints and either an explicit construction (named points, tiles
//! spanned by those points, generating isometries) or a layered one. The
//! builtin catalog lives in `data/catalog.toml`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    alternation_rule, extension_search, solve_f2f, solve_nonf2f, CombinatoricsError, CoronaKind, CoronaType,
    FeasibilityVerdict, Status,
};
use crate::expr::{Condition, Env, Expr, ExprError};
use crate::field::Scalar;
use crate::layers::{BiSequence, LayerPair, SequenceError, StackGeometry};
use crate::tiling::TilingSpec;
use crate::{Isometry, Point, Polygon, QScalar};

const BUILTIN: &str = include_str!("../data/catalog.toml");

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog file: {0}")]
    Format(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family}: unknown parameter {name:?}")]
    UnknownParameter { family: String, name: String },
    #[error("family {family}: constraint `{constraint}` is violated")]
    Constraint { family: String, constraint: String },
    #[error("family {family}: {source}")]
    Expr {
        family: String,
        #[source]
        source: ExprError,
    },
    #[error("family {family}: invalid generator `{text}`: {msg}")]
    Generator { family: String, text: String, msg: String },
    #[error("family {family}: tile {index}: {msg}")]
    Tile { family: String, index: usize, msg: String },
    #[error("family {family}: no special case matches {requested:?}")]
    NoSpecialCase { family: String, requested: Vec<String> },
    #[error("family {family}: special case {name:?} does not satisfy `{constraint}`")]
    Inconsistent { family: String, name: String, constraint: String },
    #[error("family {family}: {source}")]
    Sequence {
        family: String,
        #[source]
        source: SequenceError,
    },
    #[error("family {0}: a layer sequence only applies to layered families")]
    NotLayered(String),
}

/// Flags of a family: `D` when all coronae are directly congruent, `NC`
/// when the family contains tilings with a single direction of translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub direct: bool,
    pub nc: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub name: String,
    pub default: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedExpr {
    pub name: String,
    pub expr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    /// Alternatively, the image of point `of` under the isometry `by`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub by: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub pair: String,
    pub sequence: String,
    pub window: usize,
}

/// A degenerate sub-family reached by imposing extra equalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCase {
    pub name: String,
    pub equalities: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub id: String,
    pub figure: String,
    #[serde(default)]
    pub flags: Vec<String>,
    pub corona: CoronaType,
    pub summary: String,
    #[serde(default = "default_rank")]
    pub rank: u8,
    #[serde(default)]
    pub params: Vec<ParamSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vars: Vec<NamedExpr>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    /// Strict conditions met by the defaults so that no extra symmetry
    /// appears; special cases may violate them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generic: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tiles: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<LayerSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub special: Vec<SpecialCase>,
}

fn default_rank() -> u8 {
    2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub family: Vec<FamilyEntry>,
}

/// A concrete assignment of a family's parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub values: Vec<(String, QScalar)>,
    pub sequence: Option<BiSequence>,
    pub window: Option<usize>,
}

impl Params {
    pub fn get(&self, name: &str) -> Option<&QScalar> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// Overwrites an existing parameter; returns false for unknown names.
    pub fn set(&mut self, name: &str, value: QScalar) -> bool {
        match self.values.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => {
                slot.1 = value;
                true
            }
            None => false,
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.values.iter().map(|(n, v)| format!("{n}={v}")).collect();
        if let Some(s) = &self.sequence {
            parts.push(format!("seq={s}"));
        }
        if let Some(w) = self.window {
            parts.push(format!("window={w}"));
        }
        f.write_str(&parts.join(", "))
    }
}

impl FamilyEntry {
    pub fn flags(&self) -> Flags {
        Flags {
            direct: self.flags.iter().any(|f| f == "D"),
            nc: self.flags.iter().any(|f| f == "NC"),
        }
    }

    pub fn is_face_to_face(&self) -> bool {
        self.id.starts_with("f2f/")
    }

    pub fn is_layered(&self) -> bool {
        self.layers.is_some()
    }

    fn expr_err(&self, source: ExprError) -> CatalogError {
        CatalogError::Expr {
            family: self.id.clone(),
            source,
        }
    }

    fn parse_expr(&self, text: &str) -> Result<Expr, CatalogError> {
        Expr::parse(text).map_err(|e| self.expr_err(e))
    }

    fn parse_condition(&self, text: &str) -> Result<Condition, CatalogError> {
        Condition::parse(text).map_err(|e| self.expr_err(e))
    }

    pub fn default_params(&self) -> Result<Params, CatalogError> {
        let mut env = Env::new();
        let mut values = Vec::new();
        for p in &self.params {
            let v = self.parse_expr(&p.default)?.eval(&env).map_err(|e| self.expr_err(e))?;
            env.set(&p.name, v.clone());
            values.push((p.name.clone(), v));
        }
        let sequence = match &self.layers {
            Some(l) => Some(self.parse_sequence(&l.sequence)?),
            None => None,
        };
        Ok(Params {
            values,
            sequence,
            window: None,
        })
    }

    fn parse_sequence(&self, text: &str) -> Result<BiSequence, CatalogError> {
        text.parse().map_err(|source| CatalogError::Sequence {
            family: self.id.clone(),
            source,
        })
    }

    /// Parameters plus derived quantities.
    pub fn environment(&self, params: &Params) -> Result<Env, CatalogError> {
        let mut env = Env::new();
        for (name, v) in &params.values {
            if !self.params.iter().any(|p| &p.name == name) {
                return Err(CatalogError::UnknownParameter {
                    family: self.id.clone(),
                    name: name.clone(),
                });
            }
            env.set(name, v.clone());
        }
        for p in &self.params {
            if env.get(&p.name).is_none() {
                let v = self.parse_expr(&p.default)?.eval(&env).map_err(|e| self.expr_err(e))?;
                env.set(&p.name, v);
            }
        }
        for v in &self.vars {
            let value = self.parse_expr(&v.expr)?.eval(&env).map_err(|e| self.expr_err(e))?;
            env.set(&v.name, value);
        }
        Ok(env)
    }

    /// First violated condition among `conditions`, if any.
    fn violated<'a>(&self, conditions: &'a [String], env: &Env) -> Result<Option<&'a String>, CatalogError> {
        for c in conditions {
            if !self.parse_condition(c)?.holds(env).map_err(|e| self.expr_err(e))? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    pub fn check(&self, params: &Params) -> Result<Env, CatalogError> {
        let env = self.environment(params)?;
        if let Some(c) = self.violated(&self.constraints, &env)? {
            return Err(CatalogError::Constraint {
                family: self.id.clone(),
                constraint: c.clone(),
            });
        }
        Ok(env)
    }

    /// Whether `params` satisfy the genericity conditions as well.
    pub fn is_generic(&self, params: &Params) -> Result<bool, CatalogError> {
        let env = self.check(params)?;
        Ok(self.violated(&self.generic, &env)?.is_none())
    }

    pub fn instantiate(&self, params: &Params) -> Result<TilingSpec, CatalogError> {
        self.instantiate_with_radius(params).map(|(spec, _)| spec)
    }

    /// The instance together with a patch radius that certifies it.
    pub fn instantiate_with_radius(&self, params: &Params) -> Result<(TilingSpec, QScalar), CatalogError> {
        if let Some(l) = &self.layers {
            return self.instantiate_layered(l, params, &self.check(params)?);
        }
        let spec = self.build(params)?;
        let radius = crate::symmetry::certification_radius(&spec);
        Ok((spec, radius))
    }

    fn build(&self, params: &Params) -> Result<TilingSpec, CatalogError> {
        let mut env = self.check(params)?;
        if params.sequence.is_some() {
            return Err(CatalogError::NotLayered(self.id.clone()));
        }
        for p in &self.points {
            let point = self.point(p, &env)?;
            env.set_point(&p.name, point);
        }
        let mut motif = Vec::new();
        for (index, names) in self.tiles.iter().enumerate() {
            let tile_err = |msg: String| CatalogError::Tile {
                family: self.id.clone(),
                index,
                msg,
            };
            let pts = names
                .iter()
                .map(|n| env.point(n).cloned().ok_or_else(|| tile_err(format!("unknown point {n:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            motif.push(Polygon::new(angular_order(pts)).map_err(|e| tile_err(e.to_string()))?);
        }
        let generators = self
            .generators
            .iter()
            .map(|g| parse_generator(g, &env).map_err(|msg| CatalogError::Generator {
                family: self.id.clone(),
                text: g.clone(),
                msg,
            }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TilingSpec::new(motif, generators, self.rank))
    }

    fn point(&self, p: &PointSpec, env: &Env) -> Result<Point, CatalogError> {
        let bad = |msg: &str| CatalogError::Format(format!("family {}: point {}: {msg}", self.id, p.name));
        match (&p.x, &p.y, &p.of, &p.by) {
            (Some(x), Some(y), None, None) => {
                let x = self.parse_expr(x)?.eval(env).map_err(|e| self.expr_err(e))?;
                let y = self.parse_expr(y)?.eval(env).map_err(|e| self.expr_err(e))?;
                Ok(Point::new(x, y))
            }
            (None, None, Some(of), Some(by)) => {
                let base = env.point(of).ok_or_else(|| bad("unknown base point"))?;
                let iso = parse_generator(by, env).map_err(|msg| CatalogError::Generator {
                    family: self.id.clone(),
                    text: by.clone(),
                    msg,
                })?;
                Ok(iso.apply(base))
            }
            _ => Err(bad("needs either x and y or of and by")),
        }
    }

    fn instantiate_layered(
        &self,
        l: &LayerSpec,
        params: &Params,
        env: &Env,
    ) -> Result<(TilingSpec, QScalar), CatalogError> {
        let pair: LayerPair = l.pair.parse().map_err(|source| CatalogError::Sequence {
            family: self.id.clone(),
            source,
        })?;
        let seq = match &params.sequence {
            Some(s) => s.clone(),
            None => self.parse_sequence(&l.sequence)?,
        };
        let mut geometry = StackGeometry::default_for(pair);
        let fields: [(&str, &mut QScalar); 4] = [
            ("width", &mut geometry.width),
            ("symmetric_height", &mut geometry.symmetric_height),
            ("chiral_height", &mut geometry.chiral_height),
            ("shift", &mut geometry.chiral_shift),
        ];
        for (name, slot) in fields {
            if let Some(v) = env.get(name) {
                *slot = v.clone();
            }
        }
        Ok(match (params.window, seq.is_periodic()) {
            (Some(w), _) => {
                let spec = geometry.spec(&seq, w);
                let radius = crate::symmetry::certification_radius(&spec);
                (spec, radius)
            }
            (None, true) => geometry.setup(&seq, l.window),
            (None, false) => geometry.setup(&seq, 0),
        })
    }

    /// Parameters of the special case whose equalities are exactly
    /// `requested` (in any order, either side first). Failing that, accepts
    /// equalities of the form `param = value` applied to the defaults.
    pub fn special_case(&self, requested: &[&str]) -> Result<Params, CatalogError> {
        let wanted = requested
            .iter()
            .map(|r| self.parse_condition(r))
            .collect::<Result<Vec<_>, _>>()?;
        let same_set = |case: &SpecialCase| -> Result<bool, CatalogError> {
            let have = case
                .equalities
                .iter()
                .map(|e| self.parse_condition(e))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(have.len() == wanted.len()
                && wanted.iter().all(|w| have.iter().any(|h| h.equivalent(w)))
                && have.iter().all(|h| wanted.iter().any(|w| w.equivalent(h))))
        };
        for case in &self.special {
            if same_set(case)? {
                return self.special_params(case);
            }
        }
        let mut params = self.default_params()?;
        for (text, cond) in requested.iter().zip(&wanted) {
            let name = match &cond.lhs {
                Expr::Var(n) if self.params.iter().any(|p| &p.name == n) => n.clone(),
                _ => {
                    return Err(CatalogError::NoSpecialCase {
                        family: self.id.clone(),
                        requested: requested.iter().map(|s| s.to_string()).collect(),
                    })
                }
            };
            let env = self.environment(&params)?;
            let value = cond.rhs.eval(&env).map_err(|e| self.expr_err(e))?;
            if cond.rel != crate::expr::Rel::Eq {
                return Err(CatalogError::NoSpecialCase {
                    family: self.id.clone(),
                    requested: vec![text.to_string()],
                });
            }
            params.set(&name, value);
        }
        let env = self.check(&params)?;
        if let Some(c) = self.violated(&requested.iter().map(|s| s.to_string()).collect::<Vec<_>>(), &env)? {
            return Err(CatalogError::Inconsistent {
                family: self.id.clone(),
                name: "direct assignment".into(),
                constraint: c.clone(),
            });
        }
        Ok(params)
    }

    /// Parameters of a named special case, checked against its equalities.
    pub fn special_params(&self, case: &SpecialCase) -> Result<Params, CatalogError> {
        let mut params = self.default_params()?;
        let mut env = Env::new();
        for (name, v) in &params.values {
            env.set(name, v.clone());
        }
        for (name, text) in &case.params {
            let v = self.parse_expr(text)?.eval(&env).map_err(|e| self.expr_err(e))?;
            if !params.set(name, v) {
                return Err(CatalogError::UnknownParameter {
                    family: self.id.clone(),
                    name: name.clone(),
                });
            }
        }
        if let Some(s) = &case.sequence {
            if self.layers.is_none() {
                return Err(CatalogError::NotLayered(self.id.clone()));
            }
            params.sequence = Some(self.parse_sequence(s)?);
        }
        let env = self.check(&params)?;
        if let Some(c) = self.violated(&case.equalities, &env)? {
            return Err(CatalogError::Inconsistent {
                family: self.id.clone(),
                name: case.name.clone(),
                constraint: c.clone(),
            });
        }
        Ok(params)
    }

    pub fn special_named(&self, name: &str) -> Option<&SpecialCase> {
        self.special.iter().find(|c| c.name == name)
    }
}

/// Sorts the corners of a convex polygon by angle about their centroid,
/// so catalog tiles may list them in any order.
fn angular_order(mut pts: Vec<Point>) -> Vec<Point> {
    let n = pts.len() as f64;
    let (cx, cy) = pts.iter().fold((0.0, 0.0), |(x, y), p| {
        let (px, py) = p.approx();
        (x + px / n, y + py / n)
    });
    pts.sort_by(|a, b| {
        let angle = |p: &Point| {
            let (x, y) = p.approx();
            (y - cy).atan2(x - cx)
        };
        angle(a).total_cmp(&angle(b))
    });
    pts
}

/// Splits at top-level occurrences of `sep`.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

enum Arg {
    Scalar(QScalar),
    Point(Point),
}

/// Isometry template: a product `f * g * …` (rightmost applied first) of
/// `translate(dx, dy)`, `move(P, Q)`, `halfturn(P)`, `rotate(k, P)` (by
/// `k·15°`), `reflect(P, Q)` (in the line `PQ`) and `glide(P, Q)`
/// (reflection in `PQ`, then translation by `Q − P`). A point argument is
/// either a point name or two coordinates.
pub fn parse_generator(text: &str, env: &Env) -> Result<Isometry, String> {
    let mut result = Isometry::identity();
    for factor in split_top(text, '*') {
        let factor = factor.trim();
        let open = factor.find('(').ok_or("expected name(args)")?;
        let inner = factor[open + 1..].strip_suffix(')').ok_or("missing ')'")?;
        let name = factor[..open].trim();
        let mut args = Vec::new();
        for a in split_top(inner, ',') {
            let a = a.trim();
            if let Some(p) = env.point(a) {
                args.push(Arg::Point(p.clone()));
            } else {
                let v = Expr::parse(a)
                    .and_then(|e| e.eval(env))
                    .map_err(|e| e.to_string())?;
                args.push(Arg::Scalar(v));
            }
        }
        let mut points = Vec::new();
        let mut scalars = Vec::new();
        let mut pending: Option<QScalar> = None;
        let takes_count = name == "rotate";
        for (i, a) in args.into_iter().enumerate() {
            match a {
                Arg::Scalar(v) if takes_count && i == 0 => scalars.push(v),
                Arg::Scalar(v) if name == "translate" => scalars.push(v),
                Arg::Scalar(v) => match pending.take() {
                    Some(x) => points.push(Point::new(x, v)),
                    None => pending = Some(v),
                },
                Arg::Point(p) => points.push(p),
            }
        }
        if pending.is_some() {
            return Err("odd number of coordinates".into());
        }
        let iso = match (name, points.len(), scalars.len()) {
            ("translate", 0, 2) => Isometry::translation(Point::new(scalars[0].clone(), scalars[1].clone())),
            ("move", 2, 0) => Isometry::translation(points[1].sub(&points[0])),
            ("halfturn", 1, 0) => Isometry::half_turn(&points[0]),
            ("rotate", 1, 1) => {
                let k = scalars[0].to_integer().ok_or("rotation count must be an integer")?;
                let (c, s) = crate::field::cos_sin_15::<crate::Rational>(k);
                Isometry::rotation(c, s, &points[0]).map_err(|e| e.to_string())?
            }
            ("reflect", 2, 0) => Isometry::reflection(&points[0], &points[1]).map_err(|e| e.to_string())?,
            ("glide", 2, 0) => {
                let r = Isometry::reflection(&points[0], &points[1]).map_err(|e| e.to_string())?;
                Isometry::translation(points[1].sub(&points[0])).compose(&r)
            }
            _ => return Err(format!("unsupported form {name}/{}", points.len() + scalars.len())),
        };
        result = result.compose(&iso);
    }
    Ok(result)
}

impl Catalog {
    pub fn from_toml(text: &str) -> Result<Catalog, CatalogError> {
        let cat: Catalog = toml::from_str(text).map_err(|e| CatalogError::Format(e.to_string()))?;
        let mut ids = std::collections::HashSet::new();
        for f in &cat.family {
            if !ids.insert(f.id.clone()) {
                return Err(CatalogError::Format(format!("duplicate family {}", f.id)));
            }
            if f.layers.is_none() && (f.tiles.is_empty() || f.generators.is_empty()) {
                return Err(CatalogError::Format(format!("family {} has no construction", f.id)));
            }
        }
        Ok(cat)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("catalog serializes")
    }

    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| Catalog::from_toml(BUILTIN).expect("builtin catalog is valid"))
    }

    pub fn get(&self, id: &str) -> Result<&FamilyEntry, CatalogError> {
        self.family
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| CatalogError::UnknownFamily(id.to_string()))
    }
}

pub fn list_families() -> &'static [FamilyEntry] {
    &Catalog::builtin().family
}

pub fn default_params(id: &str) -> Result<Params, CatalogError> {
    Catalog::builtin().get(id)?.default_params()
}

pub fn instantiate(id: &str, params: &Params) -> Result<TilingSpec, CatalogError> {
    Catalog::builtin().get(id)?.instantiate(params)
}

pub fn special_case(id: &str, equalities: &[&str]) -> Result<Params, CatalogError> {
    Catalog::builtin().get(id)?.special_case(equalities)
}

/// One corona type with its feasibility verdict and realizing families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub corona: CoronaType,
    pub status: Status,
    pub reason: String,
    pub families: Vec<String>,
}

fn obstruction(t: &CoronaType) -> Result<Option<FeasibilityVerdict>, CombinatoricsError> {
    if t.kind != CoronaKind::FaceToFace {
        return Ok(None);
    }
    match alternation_rule(t) {
        Ok(v) if v.status == Status::Infeasible => return Ok(Some(v)),
        Ok(_) | Err(CombinatoricsError::UnsupportedArity(_)) => {}
        Err(e) => return Err(e),
    }
    for rings in 1..=2 {
        let v = extension_search(t, rings)?;
        if v.status == Status::Infeasible {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Every corona type of `kind`, in solver order. A type is infeasible when
/// the alternation rule or the extension search rules it out, realizable
/// when a catalog family carries it, and unknown otherwise.
pub fn corona_table(kind: CoronaKind) -> Result<Vec<TableRow>, CombinatoricsError> {
    let types = match kind {
        CoronaKind::FaceToFace => solve_f2f(),
        CoronaKind::NonFaceToFace => solve_nonf2f(),
    };
    types
        .into_iter()
        .map(|t| {
            let families: Vec<String> = list_families()
                .iter()
                .filter(|f| f.corona == t)
                .map(|f| f.id.clone())
                .collect();
            let (status, reason) = match obstruction(&t)? {
                Some(v) => (Status::Infeasible, v.reason),
                None if !families.is_empty() => (Status::Realizable, format!("{} catalog families", families.len())),
                None => (Status::Unknown, "no obstruction and no family".to_string()),
            };
            Ok(TableRow {
                corona: t,
                status,
                reason,
                families,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn generator_templates() {
        let mut env = Env::new();
        env.set_point("A", Point::new(q(0, 1), q(0, 1)));
        env.set_point("B", Point::new(q(2, 1), q(0, 1)));
        let p = Point::new(q(1, 1), q(1, 1));
        let t = parse_generator("move(A, B)", &env).unwrap();
        assert_eq!(t.apply(&p), Point::new(q(3, 1), q(1, 1)));
        let g = parse_generator("glide(A, B)", &env).unwrap();
        assert_eq!(g.apply(&p), Point::new(q(3, 1), q(-1, 1)));
        let r = parse_generator("rotate(6, 0, 0)", &env).unwrap();
        assert_eq!(r.apply(&p), Point::new(q(-1, 1), q(1, 1)));
        let c = parse_generator("translate(1, 0) * halfturn(A)", &env).unwrap();
        assert_eq!(c.apply(&p), Point::new(q(0, 1), q(-1, 1)));
        assert!(parse_generator("spin(A)", &env).is_err());
        assert!(parse_generator("halfturn(1)", &env).is_err());
    }

    #[test]
    fn builtin_round_trip() {
        let cat = Catalog::builtin();
        let text = cat.to_toml();
        let back = Catalog::from_toml(&text).unwrap();
        assert_eq!(&back, cat);
        assert_eq!(back.to_toml(), text);
    }

    #[test]
    fn corona_table_verdicts() {
        let rows = corona_table(CoronaKind::FaceToFace).unwrap();
        assert_eq!(rows.len(), 17);
        let infeasible: Vec<Vec<u32>> = rows
            .iter()
            .filter(|r| r.status == Status::Infeasible)
            .map(|r| r.corona.sizes().to_vec())
            .collect();
        let expected: Vec<Vec<u32>> = vec![
            vec![3, 3, 4, 12],
            vec![3, 7, 42],
            vec![3, 8, 24],
            vec![3, 9, 18],
            vec![3, 10, 15],
            vec![4, 5, 20],
            vec![5, 5, 10],
        ];
        let mut got = infeasible.clone();
        got.sort();
        assert_eq!(got, expected);
        for r in rows.iter().filter(|r| r.status != Status::Infeasible) {
            assert_eq!(r.status, Status::Realizable, "{}", r.corona);
        }
        let non = corona_table(CoronaKind::NonFaceToFace).unwrap();
        assert_eq!(non.len(), 3);
        assert!(non.iter().all(|r| r.status == Status::Realizable));
    }
}
