//! Products and layer stacks of planar tilings in higher dimensions, handled
//! symbolically: period rank and vertex-corona census are computed from the
//! expression, while the planar factors are checked geometrically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use crate::catalog::Catalog;
use crate::geometry::Mode;
use crate::layers::{BiSequence, StackGeometry};
use crate::tiling::{build_patch, verify_monocoronal, TilingSpec};
use crate::{Isometry, Point, Polygon, QScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HighDimError {
    #[error("malformed expression: {0}")]
    Malformed(String),
    #[error("dimension {d} is not supported by this construction (needs at least {min})")]
    Dimension { d: usize, min: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("planar factor {label}: {msg}")]
    Factor { label: String, msg: String },
}

/// Cell label to multiplicity.
pub type Census = BTreeMap<String, u32>;

/// The cells around a vertex, counted by type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicCorona {
    pub cells: Census,
    /// Whether the corona is carried onto itself by some reflection.
    pub mirror_symmetric: bool,
}

impl SymbolicCorona {
    pub fn total(&self) -> u32 {
        self.cells.values().sum()
    }

    fn product(&self, other: &SymbolicCorona) -> SymbolicCorona {
        let mut cells = Census::new();
        for (a, m) in &self.cells {
            for (b, n) in &other.cells {
                *cells.entry(format!("{a}×{b}")).or_default() += m * n;
            }
        }
        SymbolicCorona {
            cells,
            mirror_symmetric: self.mirror_symmetric || other.mirror_symmetric,
        }
    }
}

impl fmt::Display for SymbolicCorona {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cells.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if self.mirror_symmetric {
            write!(f, " mirror-symmetric")?;
        }
        Ok(())
    }
}

/// A planar tiling reduced to what the symbolic layer needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarFactor {
    pub label: String,
    pub rank: u8,
    /// Census of the common corona; `None` unless monocoronal.
    pub corona: Option<SymbolicCorona>,
    /// Monocoronal up to rigid motions.
    pub direct: bool,
    /// Only unit squares and right isosceles triangles with unit legs.
    pub cube_compatible: bool,
}

fn gon_label(n: usize) -> String {
    match n {
        3 => "triangle".into(),
        4 => "quadrilateral".into(),
        5 => "pentagon".into(),
        6 => "hexagon".into(),
        8 => "octagon".into(),
        12 => "dodecagon".into(),
        _ => format!("{n}-gon"),
    }
}

fn unit_cell(p: &Polygon) -> bool {
    let one = QScalar::from_int(1);
    let two = QScalar::from_int(2);
    let e = p.edge_lengths2();
    let count = |v: &QScalar| e.iter().filter(|x| *x == v).count();
    match p.n_gon() {
        3 => count(&one) == 2 && count(&two) == 1,
        4 => count(&one) == 4 && p.edge_vector(0).dot(&p.edge_vector(1)) == QScalar::from_int(0),
        _ => false,
    }
}

impl PlanarFactor {
    /// Builds a certified patch of `spec` and reads off the common corona.
    pub fn from_spec(label: &str, spec: &TilingSpec, radius: &QScalar) -> Result<Self, HighDimError> {
        let err = |msg: String| HighDimError::Factor {
            label: label.to_string(),
            msg,
        };
        let patch = build_patch(spec, radius).map_err(|e| err(e.to_string()))?;
        let full = verify_monocoronal(&patch, Mode::Full).map_err(|e| err(e.to_string()))?;
        let direct = verify_monocoronal(&patch, Mode::Direct).map_err(|e| err(e.to_string()))?;
        let corona = match (full.verdict, patch.interior_vertices().first()) {
            (true, Some(v)) => {
                let c = patch.vertex_corona(v).map_err(|e| err(e.to_string()))?;
                let mut cells = Census::new();
                for t in c.tiles() {
                    *cells.entry(gon_label(t.n_gon())).or_default() += 1;
                }
                let mirror_symmetric = c.signature(Mode::Direct) == c.mirrored().signature(Mode::Direct);
                Some(SymbolicCorona { cells, mirror_symmetric })
            }
            _ => None,
        };
        Ok(PlanarFactor {
            label: label.to_string(),
            rank: spec.periodicity_rank,
            corona,
            direct: direct.verdict,
            cube_compatible: spec.motif.iter().all(unit_cell),
        })
    }

    /// A catalog family at its defaults or at a named special case.
    pub fn from_family(id: &str, special: Option<&str>) -> Result<Self, HighDimError> {
        let err = |msg: String| HighDimError::Factor {
            label: id.to_string(),
            msg,
        };
        let fam = Catalog::builtin().get(id).map_err(|e| err(e.to_string()))?;
        let params = match special {
            None => fam.default_params(),
            Some(name) => {
                let case = fam
                    .special_named(name)
                    .ok_or_else(|| err(format!("no special case named {name:?}")))?;
                fam.special_params(case)
            }
        }
        .map_err(|e| err(e.to_string()))?;
        let (spec, radius) = fam.instantiate_with_radius(&params).map_err(|e| err(e.to_string()))?;
        let label = match special {
            Some(s) => format!("{id}[{s}]"),
            None => id.to_string(),
        };
        PlanarFactor::from_spec(&label, &spec, &radius)
    }

    pub fn square_grid() -> Self {
        let p = |x: i64, y: i64| Point::new(QScalar::from_int(x), QScalar::from_int(y));
        let sq = Polygon::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).expect("unit square");
        let spec = TilingSpec::new(
            vec![sq],
            vec![Isometry::translation(p(1, 0)), Isometry::translation(p(0, 1))],
            2,
        );
        PlanarFactor::from_spec("square-grid", &spec, &QScalar::from_int(4)).expect("square grid")
    }

    pub fn hexagon_grid() -> Self {
        let r3 = QScalar::sqrt3();
        let half = QScalar::from_ratio(1, 2);
        let h = r3.clone() * &half;
        let p = |x: QScalar, y: QScalar| Point::new(x, y);
        let z = QScalar::from_int(0);
        let one = QScalar::from_int(1);
        let hex = Polygon::new(vec![
            p(one.clone(), z.clone()),
            p(half.clone(), h.clone()),
            p(-half.clone(), h.clone()),
            p(-one.clone(), z.clone()),
            p(-half.clone(), -h.clone()),
            p(half.clone(), -h.clone()),
        ])
        .expect("regular hexagon");
        let three_halves = QScalar::from_ratio(3, 2);
        let spec = TilingSpec::new(
            vec![hex],
            vec![
                Isometry::translation(p(three_halves.clone(), h.clone())),
                Isometry::translation(p(z, r3)),
            ],
            2,
        );
        PlanarFactor::from_spec("hexagon-grid", &spec, &QScalar::from_int(6)).expect("hexagon grid")
    }

    /// The one-periodic strip of unit squares and right isosceles triangles
    /// whose diagonals flip once.
    pub fn unit_block() -> Self {
        let seq = BiSequence::sandwich(0, &[1], 1).expect("binary");
        let (spec, radius) = StackGeometry::unit_block().setup(&seq, 0);
        PlanarFactor::from_spec("unit-block", &spec, &radius).expect("unit block")
    }
}

fn cached(cell: &'static OnceLock<PlanarFactor>, make: fn() -> PlanarFactor) -> PlanarFactor {
    cell.get_or_init(make).clone()
}

fn block() -> PlanarFactor {
    static CELL: OnceLock<PlanarFactor> = OnceLock::new();
    cached(&CELL, PlanarFactor::unit_block)
}

fn skew_quad_strip() -> PlanarFactor {
    static CELL: OnceLock<PlanarFactor> = OnceLock::new();
    cached(&CELL, || {
        PlanarFactor::from_family("f2f/4quad-nonperiodic", Some("one-periodic")).expect("catalog family")
    })
}

/// Finite presentation of a bi-infinite sequence over a small alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Choices {
    Periodic(Vec<u8>),
    Sandwich { left: u8, middle: Vec<u8>, right: u8 },
}

impl Choices {
    pub fn periodic(word: &[u8]) -> Result<Self, HighDimError> {
        if word.is_empty() {
            return Err(HighDimError::Malformed("empty periodic word".into()));
        }
        let n = word.len();
        let d = (1..=n)
            .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| word[i] == word[i % d]))
            .unwrap_or(n);
        let root = &word[..d];
        let least = (0..d)
            .map(|r| (0..d).map(|i| root[(r + i) % d]).collect::<Vec<u8>>())
            .min()
            .unwrap_or_default();
        Ok(Choices::Periodic(least))
    }

    pub fn sandwich(left: u8, middle: &[u8], right: u8) -> Self {
        let start = middle.iter().take_while(|&&b| b == left).count();
        let mut end = middle.len();
        while end > start && middle[end - 1] == right {
            end -= 1;
        }
        if start == end && left == right {
            return Choices::Periodic(vec![left]);
        }
        Choices::Sandwich {
            left,
            middle: middle[start..end].to_vec(),
            right,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Choices::Periodic(_))
    }

    /// Every symbol that occurs infinitely or finitely often.
    pub fn symbols(&self) -> BTreeSet<u8> {
        match self {
            Choices::Periodic(w) => w.iter().copied().collect(),
            Choices::Sandwich { left, middle, right } => {
                let mut s: BTreeSet<u8> = middle.iter().copied().collect();
                s.insert(*left);
                s.insert(*right);
                s
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, HighDimError> {
        let bad = || HighDimError::Malformed(format!("bad choice sequence {text:?}"));
        let word = |s: &str| -> Result<Vec<u8>, HighDimError> {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect()
        };
        if let Some(w) = text.strip_prefix("per:") {
            return Choices::periodic(&word(w)?);
        }
        if let Some(rest) = text.strip_prefix("sand:") {
            let parts: Vec<&str> = rest.split('|').collect();
            if parts.len() != 3 || parts[0].len() != 1 || parts[2].len() != 1 {
                return Err(bad());
            }
            let (l, m, r) = (word(parts[0])?, word(parts[1])?, word(parts[2])?);
            return Ok(Choices::sandwich(l[0], &m, r[0]));
        }
        Err(bad())
    }
}

impl From<&BiSequence> for Choices {
    fn from(s: &BiSequence) -> Self {
        match s {
            BiSequence::Periodic(w) => Choices::Periodic(w.clone()),
            BiSequence::Sandwich { left, middle, right } => Choices::Sandwich {
                left: *left,
                middle: middle.clone(),
                right: *right,
            },
        }
    }
}

impl fmt::Display for Choices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &[u8]| w.iter().map(|b| char::from(b'0' + b)).collect::<String>();
        match self {
            Choices::Periodic(w) => write!(f, "per:{}", word(w)),
            Choices::Sandwich { left, middle, right } => write!(f, "sand:{left}|{}|{right}", word(middle)),
        }
    }
}

/// A tiling of some ℝ^d built from planar pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingExpr {
    Base2D(PlanarFactor),
    /// Unit intervals on a line.
    Interval1D,
    Product(Vec<TilingExpr>),
    /// Slabs of ℝ^dim alternating between unit cubes and copies of
    /// `layer` times unit intervals. Choice `k` of the sequence says along
    /// which horizontal axis that copy is non-periodic; in ℝ³ the two
    /// choices are the quarter-turn orientations.
    Stack { dim: usize, layer: PlanarFactor, choices: Choices },
}

/// Whether coronae are compared up to congruence or up to rigid motions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Congruence,
    Rigid,
}

impl std::str::FromStr for Construction {
    type Err = HighDimError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "congruence" | "full" => Ok(Construction::Congruence),
            "rigid" | "direct" => Ok(Construction::Rigid),
            _ => Err(HighDimError::Malformed(format!("unknown mode {s:?}"))),
        }
    }
}

impl TilingExpr {
    pub fn dim(&self) -> usize {
        match self {
            TilingExpr::Base2D(_) => 2,
            TilingExpr::Interval1D => 1,
            TilingExpr::Product(fs) => fs.iter().map(TilingExpr::dim).sum(),
            TilingExpr::Stack { dim, .. } => *dim,
        }
    }

    pub fn validate(&self) -> Result<(), HighDimError> {
        match self {
            TilingExpr::Base2D(f) if f.rank > 2 => {
                Err(HighDimError::Malformed(format!("{} declares rank {}", f.label, f.rank)))
            }
            TilingExpr::Base2D(_) | TilingExpr::Interval1D => Ok(()),
            TilingExpr::Product(fs) if fs.is_empty() => Err(HighDimError::Malformed("empty product".into())),
            TilingExpr::Product(fs) => fs.iter().try_for_each(TilingExpr::validate),
            TilingExpr::Stack { dim, layer, choices } => {
                if *dim < 3 {
                    return Err(HighDimError::Dimension { d: *dim, min: 3 });
                }
                if layer.rank != 1 {
                    return Err(HighDimError::Malformed(format!(
                        "stack layer {} must be one-periodic",
                        layer.label
                    )));
                }
                match choices.symbols().iter().max() {
                    Some(&m) if (m as usize) < dim - 1 => Ok(()),
                    _ => Err(HighDimError::Malformed(format!(
                        "choices {choices} need symbols below {}",
                        dim - 1
                    ))),
                }
            }
        }
    }

    /// All vertex coronae agree up to congruence.
    pub fn is_monocoronal(&self) -> bool {
        symbolic_corona(self).is_some()
    }

    /// All vertex coronae agree up to rigid motions.
    pub fn is_direct(&self) -> bool {
        match self {
            TilingExpr::Base2D(f) => f.direct,
            TilingExpr::Interval1D => true,
            TilingExpr::Product(fs) => {
                fs.iter().all(TilingExpr::is_monocoronal)
                    && (fs.iter().all(TilingExpr::is_direct)
                        || symbolic_corona(self).is_some_and(|c| c.mirror_symmetric))
            }
            TilingExpr::Stack { .. } => {
                // Vertices on the two faces of a layer differ by a reflection
                // across the layer, so a proper match needs a mirror in the corona.
                symbolic_corona(self).is_some_and(|c| c.mirror_symmetric)
            }
        }
    }
}

impl fmt::Display for TilingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingExpr::Base2D(p) => write!(f, "(base {})", p.label),
            TilingExpr::Interval1D => write!(f, "interval"),
            TilingExpr::Product(fs) => {
                write!(f, "(product")?;
                for e in fs {
                    write!(f, " {e}")?;
                }
                write!(f, ")")
            }
            TilingExpr::Stack { dim, layer, choices } => write!(f, "(stack {dim} {choices} {})", layer.label),
        }
    }
}

/// Dimension of the translation subgroup.
pub fn period_rank(e: &TilingExpr) -> Result<usize, HighDimError> {
    e.validate()?;
    Ok(rank_unchecked(e))
}

fn rank_unchecked(e: &TilingExpr) -> usize {
    match e {
        TilingExpr::Base2D(f) => f.rank as usize,
        TilingExpr::Interval1D => 1,
        TilingExpr::Product(fs) => fs.iter().map(rank_unchecked).sum(),
        TilingExpr::Stack { dim, choices, .. } => {
            let vertical = usize::from(choices.is_periodic());
            // Each choice kills the period along its own axis.
            let horizontal = (dim - 1).saturating_sub(choices.symbols().len());
            vertical + horizontal
        }
    }
}

/// Census of the common vertex corona, or `None` when the construction is
/// not monocoronal (or its pieces do not fit together).
pub fn symbolic_corona(e: &TilingExpr) -> Option<SymbolicCorona> {
    e.validate().ok()?;
    match e {
        TilingExpr::Base2D(f) => f.corona.clone(),
        TilingExpr::Interval1D => Some(SymbolicCorona {
            cells: Census::from([("interval".to_string(), 2)]),
            mirror_symmetric: true,
        }),
        TilingExpr::Product(fs) => {
            let mut acc = symbolic_corona(&fs[0])?;
            for f in &fs[1..] {
                acc = acc.product(&symbolic_corona(f)?);
            }
            Some(acc)
        }
        TilingExpr::Stack { dim, layer, .. } => {
            let planar = layer.corona.as_ref()?;
            if !layer.cube_compatible {
                return None;
            }
            // A vertex sits on one face of a layer: the cube slab gives a
            // full (d-1)-cube star, the other slab the planar corona times
            // the d-3 inner interval factors.
            let inner = 1u32 << (dim - 3);
            let mut cells = Census::new();
            cells.insert("even-cube".into(), 1 << (dim - 1));
            for (kind, n) in &planar.cells {
                let label = match kind.as_str() {
                    "quadrilateral" => "odd-cube",
                    "triangle" => "prism",
                    _ => return None,
                };
                *cells.entry(label.into()).or_default() += n * inner;
            }
            Some(SymbolicCorona {
                cells,
                mirror_symmetric: planar.mirror_symmetric || *dim > 3,
            })
        }
    }
}

fn repeat(e: TilingExpr, n: usize) -> Vec<TilingExpr> {
    vec![e; n]
}

/// Face-to-face products of one-periodic planar tilings (plus a line of
/// intervals to fix parity).
pub fn construct_thm4(d: usize, mode: Construction) -> Result<TilingExpr, HighDimError> {
    match mode {
        Construction::Congruence => {
            if d < 2 {
                return Err(HighDimError::Dimension { d, min: 2 });
            }
            let mut fs = repeat(TilingExpr::Base2D(block()), d / 2);
            if d % 2 == 1 {
                fs.push(TilingExpr::Interval1D);
            }
            Ok(TilingExpr::Product(fs))
        }
        Construction::Rigid => {
            if d < 3 {
                return Err(HighDimError::Dimension { d, min: 3 });
            }
            let mut fs = vec![TilingExpr::Base2D(skew_quad_strip()), TilingExpr::Interval1D];
            fs.extend(repeat(TilingExpr::Base2D(block()), (d - 3) / 2));
            if d.is_multiple_of(2) {
                fs.push(TilingExpr::Interval1D);
            }
            Ok(TilingExpr::Product(fs))
        }
    }
}

/// Non face-to-face stacks whose layer choices follow `choices`.
pub fn construct_thm5(d: usize, mode: Construction, choices: &Choices) -> Result<TilingExpr, HighDimError> {
    let min = match mode {
        Construction::Congruence => 3,
        Construction::Rigid => 4,
    };
    if d < min {
        return Err(HighDimError::Dimension { d, min });
    }
    let e = TilingExpr::Stack {
        dim: d,
        layer: block(),
        choices: choices.clone(),
    };
    e.validate()?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> HighDimError {
        HighDimError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn token(&mut self) -> Result<&'a str, HighDimError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a word"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<usize, HighDimError> {
        let at = self.pos;
        let t = self.token()?;
        t.parse().map_err(|_| HighDimError::Syntax {
            pos: at,
            msg: format!("expected a dimension, found {t:?}"),
        })
    }

    fn close(&mut self) -> Result<(), HighDimError> {
        if self.peek() == Some(')') {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err("expected ')'"))
        }
    }

    fn expr(&mut self) -> Result<TilingExpr, HighDimError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(')') => Err(self.err("unexpected ')'")),
            Some('(') => {
                self.pos += 1;
                let at = self.pos;
                let head = self.token()?;
                let e = match head {
                    "base" => {
                        let id = self.token()?;
                        let special = if self.peek() == Some(')') { None } else { Some(self.token()?) };
                        TilingExpr::Base2D(PlanarFactor::from_family(id, special)?)
                    }
                    "product" => {
                        let mut fs = Vec::new();
                        while self.peek() != Some(')') {
                            fs.push(self.expr()?);
                        }
                        TilingExpr::Product(fs)
                    }
                    "stack" => {
                        let dim = self.number()?;
                        let choices = Choices::parse(self.token()?)?;
                        let layer = if self.peek() == Some(')') {
                            block()
                        } else {
                            match self.expr()? {
                                TilingExpr::Base2D(f) => f,
                                _ => return Err(self.err("stack layer must be a planar tiling")),
                            }
                        };
                        TilingExpr::Stack { dim, layer, choices }
                    }
                    "thm4" => {
                        let d = self.number()?;
                        construct_thm4(d, self.token()?.parse()?)?
                    }
                    "thm5" => {
                        let d = self.number()?;
                        let mode = self.token()?.parse()?;
                        construct_thm5(d, mode, &Choices::parse(self.token()?)?)?
                    }
                    other => {
                        return Err(HighDimError::Syntax {
                            pos: at,
                            msg: format!("unknown form {other:?}"),
                        })
                    }
                };
                self.close()?;
                Ok(e)
            }
            Some(_) => {
                let at = self.pos;
                match self.token()? {
                    "interval" => Ok(TilingExpr::Interval1D),
                    "square-grid" => Ok(TilingExpr::Base2D(PlanarFactor::square_grid())),
                    "hexagon-grid" => Ok(TilingExpr::Base2D(PlanarFactor::hexagon_grid())),
                    "unit-block" => Ok(TilingExpr::Base2D(block())),
                    other => Err(HighDimError::Syntax {
                        pos: at,
                        msg: format!("unknown atom {other:?}"),
                    }),
                }
            }
        }
    }
}

/// Reads the prefix notation, for example
/// `(product (base f2f/4quad-nonperiodic one-periodic) interval)`.
///
/// ```text
/// expr  := atom | "(" form ")"
/// atom  := interval | square-grid | hexagon-grid | unit-block
/// form  := base FAMILY [SPECIAL] | product expr* | stack D SEQ [expr]
///        | thm4 D MODE | thm5 D MODE SEQ
/// MODE  := congruence | rigid
/// SEQ   := per:DIGITS | sand:DIGIT|DIGITS|DIGIT
/// ```
pub fn parse_expr(src: &str) -> Result<TilingExpr, HighDimError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
