//! Bi-infinite 0/1 sequences driving stacks of alternating symmetric and
//! chiral layers, their invariances, and the resulting symmetry groups.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::field::Scalar;
use crate::symmetry::GroupName;
use crate::tiling::TilingSpec;
use crate::{Isometry, Point, Polygon, QScalar};

/// Finite presentation of a bi-infinite binary sequence, up to shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BiSequence {
    /// `i_k = word[k mod |word|]`; primitive, lexicographically least rotation.
    Periodic(Vec<u8>),
    /// `left` for `k < 0`, `middle` on `0..len`, `right` afterwards. The
    /// middle never starts with `left` nor ends with `right`.
    Sandwich { left: u8, middle: Vec<u8>, right: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("invalid sequence literal {0:?} (expected per:WORD or sand:L|WORD|R)")]
    Literal(String),
    #[error("symbols must be 0 or 1")]
    Symbol,
    #[error("periodic word must not be empty")]
    EmptyWord,
    #[error("invalid layer pair {0:?} (expected one of I,P I,T R,P R,T)")]
    Pair(String),
}

fn check_symbols(w: &[u8]) -> Result<(), SequenceError> {
    if w.iter().all(|&b| b <= 1) {
        Ok(())
    } else {
        Err(SequenceError::Symbol)
    }
}

fn least_rotation(w: &[u8]) -> Vec<u8> {
    let n = w.len();
    (0..n)
        .map(|r| (0..n).map(|i| w[(r + i) % n]).collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

fn primitive_root(w: &[u8]) -> &[u8] {
    let n = w.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (0..n).all(|i| w[i] == w[i % d]) {
            return &w[..d];
        }
    }
    w
}

fn complement(w: &[u8]) -> Vec<u8> {
    w.iter().map(|&b| 1 - b).collect()
}

fn reversed(w: &[u8]) -> Vec<u8> {
    w.iter().rev().copied().collect()
}

impl BiSequence {
    pub fn periodic(word: &[u8]) -> Result<Self, SequenceError> {
        if word.is_empty() {
            return Err(SequenceError::EmptyWord);
        }
        check_symbols(word)?;
        Ok(BiSequence::Periodic(least_rotation(primitive_root(word))))
    }

    pub fn sandwich(left: u8, middle: &[u8], right: u8) -> Result<Self, SequenceError> {
        check_symbols(&[left, right])?;
        check_symbols(middle)?;
        let start = middle.iter().take_while(|&&b| b == left).count();
        let mut end = middle.len();
        while end > start && middle[end - 1] == right {
            end -= 1;
        }
        let middle = middle[start..end].to_vec();
        if middle.is_empty() && left == right {
            return Ok(BiSequence::Periodic(vec![left]));
        }
        Ok(BiSequence::Sandwich { left, middle, right })
    }

    /// Symbol at index `k` (in the presentation's own indexing).
    pub fn at(&self, k: i64) -> u8 {
        match self {
            BiSequence::Periodic(w) => w[k.rem_euclid(w.len() as i64) as usize],
            BiSequence::Sandwich { left, middle, right } => {
                if k < 0 {
                    *left
                } else if (k as usize) < middle.len() {
                    middle[k as usize]
                } else {
                    *right
                }
            }
        }
    }

    pub fn act(&self, action: SeqAction) -> BiSequence {
        match (self, action) {
            (_, SeqAction::Shift(_)) => self.clone(),
            (BiSequence::Periodic(w), SeqAction::Reverse) => {
                BiSequence::periodic(&reversed(w)).expect("valid")
            }
            (BiSequence::Periodic(w), SeqAction::Complement) => {
                BiSequence::periodic(&complement(w)).expect("valid")
            }
            (BiSequence::Sandwich { left, middle, right }, SeqAction::Reverse) => {
                BiSequence::sandwich(*right, &reversed(middle), *left).expect("valid")
            }
            (BiSequence::Sandwich { left, middle, right }, SeqAction::Complement) => {
                BiSequence::sandwich(1 - left, &complement(middle), 1 - right).expect("valid")
            }
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, BiSequence::Periodic(_))
    }

    pub fn profile(&self) -> InvarianceProfile {
        match self {
            BiSequence::Periodic(w) => {
                let p = w.len();
                let pi = p as i64;
                let find_reflection = |comp: u8| {
                    (0..pi).find(|&m| {
                        (0..pi).all(|k| w[((k + m).rem_euclid(pi)) as usize] == w[((-k).rem_euclid(pi)) as usize] ^ comp)
                    })
                };
                InvarianceProfile {
                    shift_invariant: Some(p),
                    reverse_invariant: find_reflection(0),
                    reverse_complement_invariant: find_reflection(1),
                    shift_complement_invariant: (1..p).find(|&m| (0..p).all(|k| w[(k + m) % p] == 1 - w[k])),
                }
            }
            BiSequence::Sandwich { left, middle, right } => {
                let offset = middle.len() as i64 - 1;
                let rev = left == right && *middle == reversed(middle);
                let revc = *left == 1 - right && *middle == complement(&reversed(middle));
                InvarianceProfile {
                    shift_invariant: None,
                    reverse_invariant: rev.then_some(offset),
                    reverse_complement_invariant: revc.then_some(offset),
                    shift_complement_invariant: None,
                }
            }
        }
    }
}

impl fmt::Display for BiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &[u8]| w.iter().map(|b| char::from(b'0' + b)).collect::<String>();
        match self {
            BiSequence::Periodic(w) => write!(f, "per:{}", word(w)),
            BiSequence::Sandwich { left, middle, right } => {
                write!(f, "sand:{left}|{}|{right}", word(middle))
            }
        }
    }
}

fn parse_word(s: &str) -> Option<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        })
        .collect()
}

impl FromStr for BiSequence {
    type Err = SequenceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SequenceError::Literal(s.to_string());
        let s = s.trim();
        if let Some(w) = s.strip_prefix("per:") {
            return BiSequence::periodic(&parse_word(w).ok_or_else(err)?);
        }
        if let Some(rest) = s.strip_prefix("sand:") {
            let parts: Vec<&str> = rest.split('|').collect();
            if parts.len() != 3 {
                return Err(err());
            }
            let l = parse_word(parts[0]).filter(|w| w.len() == 1).ok_or_else(err)?;
            let m = parse_word(parts[1]).ok_or_else(err)?;
            let r = parse_word(parts[2]).filter(|w| w.len() == 1).ok_or_else(err)?;
            return BiSequence::sandwich(l[0], &m, r[0]);
        }
        Err(err())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqAction {
    /// `i'_k = i_{k+m}`
    Shift(i64),
    /// `i'_k = i_{-k}`
    Reverse,
    /// `i'_k = 1 - i_k`
    Complement,
}

/// Which operations fix the sequence, with the witnessing offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceProfile {
    /// Least `m > 0` with `i_{k+m} = i_k`.
    pub shift_invariant: Option<usize>,
    /// Some `m` with `i_{k+m} = i_{-k}`.
    pub reverse_invariant: Option<i64>,
    /// Some `m` with `i_{k+m} = 1 - i_{-k}`.
    pub reverse_complement_invariant: Option<i64>,
    /// Least `m > 0` with `i_{k+m} = 1 - i_k`.
    pub shift_complement_invariant: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetricLayer {
    /// Isosceles triangles.
    I,
    /// Rectangles.
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChiralLayer {
    /// Parallelograms.
    P,
    /// Non-isosceles triangles.
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LayerPair {
    pub symmetric: SymmetricLayer,
    pub chiral: ChiralLayer,
}

impl LayerPair {
    pub const ALL: [LayerPair; 4] = [
        LayerPair::new(SymmetricLayer::I, ChiralLayer::P),
        LayerPair::new(SymmetricLayer::I, ChiralLayer::T),
        LayerPair::new(SymmetricLayer::R, ChiralLayer::P),
        LayerPair::new(SymmetricLayer::R, ChiralLayer::T),
    ];

    pub const fn new(symmetric: SymmetricLayer, chiral: ChiralLayer) -> Self {
        LayerPair { symmetric, chiral }
    }
}

impl fmt::Display for LayerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.symmetric {
            SymmetricLayer::I => "I",
            SymmetricLayer::R => "R",
        };
        let c = match self.chiral {
            ChiralLayer::P => "P",
            ChiralLayer::T => "T",
        };
        write!(f, "{s},{c}")
    }
}

impl FromStr for LayerPair {
    type Err = SequenceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        let (a, b) = compact
            .split_once(',')
            .ok_or_else(|| SequenceError::Pair(s.to_string()))?;
        let symmetric = match a {
            "I" => SymmetricLayer::I,
            "R" => SymmetricLayer::R,
            _ => return Err(SequenceError::Pair(s.to_string())),
        };
        let chiral = match b {
            "P" => ChiralLayer::P,
            "T" => ChiralLayer::T,
            _ => return Err(SequenceError::Pair(s.to_string())),
        };
        Ok(LayerPair { symmetric, chiral })
    }
}

/// Symmetry group of the stack `…, S, C_{i_0}, S, C_{i_1}, …`.
///
/// A half-turn about the centre of a layer reverses the sequence; a mirror
/// through a symmetric layer reverses and complements it (an `I` layer only
/// admits the glide by half a tile); a glide across the layers complements
/// and shifts it. No mirror across the layers exists because it complements
/// without shifting. Any two of these three invariances imply the third.
pub fn stacked_group(layers: LayerPair, seq: &BiSequence) -> GroupName {
    let p = seq.profile();
    let rot = p.reverse_invariant.is_some();
    let par = p.reverse_complement_invariant.is_some();
    let across = p.shift_complement_invariant.is_some();
    let rect = layers.symmetric == SymmetricLayer::R;
    match seq {
        BiSequence::Periodic(_) => match (rot, par, across) {
            (true, true, true) if rect => GroupName::TwoTwoStar,
            (true, true, true) => GroupName::TwoTwoCross,
            (true, false, false) => GroupName::G2222,
            (false, true, false) if rect => GroupName::StarStar,
            (false, true, false) | (false, false, true) => GroupName::CrossCross,
            (false, false, false) => GroupName::Circle,
            _ => unreachable!("two of the three invariances imply the third"),
        },
        BiSequence::Sandwich { .. } => {
            if rot {
                GroupName::TwoTwoInf
            } else if par && rect {
                GroupName::InfStar
            } else if par {
                GroupName::InfCross
            } else {
                GroupName::InfInf
            }
        }
    }
}

/// Shapes and sizes of the layers. Horizontal period is `width`; a chiral
/// layer with symbol 0 moves the vertex row by `chiral_shift`, symbol 1 by
/// its mirror value. A zero `chiral_height` turns chiral layers into plain
/// offsets between consecutive symmetric layers (non face-to-face stacks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackGeometry {
    pub pair: LayerPair,
    pub width: QScalar,
    pub symmetric_height: QScalar,
    pub chiral_height: QScalar,
    pub chiral_shift: QScalar,
}

impl StackGeometry {
    pub fn default_for(pair: LayerPair) -> Self {
        let symmetric_height = match pair.symmetric {
            SymmetricLayer::R => QScalar::from_ratio(1, 2),
            SymmetricLayer::I => QScalar::from_int(1),
        };
        StackGeometry {
            pair,
            width: QScalar::from_int(2),
            symmetric_height,
            chiral_height: QScalar::from_ratio(1, 2),
            chiral_shift: QScalar::from_ratio(1, 2),
        }
    }

    /// Unit squares under right isosceles triangles with legs 1, the
    /// diagonal leaning by the symbol. Every vertex lies on the integer
    /// lattice, so the strips stack onto layers of unit cubes.
    pub fn unit_block() -> Self {
        StackGeometry {
            pair: LayerPair {
                symmetric: SymmetricLayer::R,
                chiral: ChiralLayer::T,
            },
            width: QScalar::from_int(1),
            symmetric_height: QScalar::from_int(1),
            chiral_height: QScalar::from_int(1),
            chiral_shift: QScalar::from_int(0),
        }
    }

    fn chiral_offset(&self, symbol: u8) -> QScalar {
        match (self.pair.chiral, symbol) {
            (_, 0) => self.chiral_shift.clone(),
            (ChiralLayer::P, _) => -self.chiral_shift.clone(),
            (ChiralLayer::T, _) => self.width.clone() - &self.chiral_shift,
        }
    }

    fn pair_height(&self) -> QScalar {
        self.symmetric_height.clone() + &self.chiral_height
    }

    /// One horizontal period of symmetric layer `k` and chiral layer `k`
    /// (carrying `symbol`), starting at bottom offset `s`; returns the
    /// offset of the row above.
    fn push_pair(&self, k: i64, symbol: u8, s: QScalar, out: &mut Vec<Polygon>) -> QScalar {
        let w = &self.width;
        let y0 = self.pair_height() * &QScalar::from_int(k);
        let y1 = y0.clone() + &self.symmetric_height;
        let y2 = y1.clone() + &self.chiral_height;
        let half = w.clone() / QScalar::from_int(2);
        let p = |x: QScalar, y: &QScalar| Point::new(x, y.clone());
        let poly = |vs: Vec<Point>| Polygon::new(vs).expect("stack tiles are convex");
        let s1 = match self.pair.symmetric {
            SymmetricLayer::R => {
                out.push(poly(vec![
                    p(s.clone(), &y0),
                    p(s.clone() + w, &y0),
                    p(s.clone() + w, &y1),
                    p(s.clone(), &y1),
                ]));
                s.clone()
            }
            SymmetricLayer::I => {
                let apex = s.clone() + &half;
                out.push(poly(vec![p(s.clone(), &y0), p(s.clone() + w, &y0), p(apex.clone(), &y1)]));
                out.push(poly(vec![
                    p(s.clone() + w, &y0),
                    p(apex.clone() + w, &y1),
                    p(apex.clone(), &y1),
                ]));
                apex
            }
        };
        let d = self.chiral_offset(symbol);
        if self.chiral_height.is_zero() {
            return s1 + &d;
        }
        match self.pair.chiral {
            ChiralLayer::P => {
                out.push(poly(vec![
                    p(s1.clone(), &y1),
                    p(s1.clone() + w, &y1),
                    p(s1.clone() + w + &d, &y2),
                    p(s1.clone() + &d, &y2),
                ]));
            }
            ChiralLayer::T => {
                let top = s1.clone() + &d;
                out.push(poly(vec![p(s1.clone(), &y1), p(s1.clone() + w, &y1), p(top.clone(), &y2)]));
                out.push(poly(vec![p(s1.clone() + w, &y1), p(top.clone() + w, &y2), p(top.clone(), &y2)]));
            }
        }
        s1 + &d
    }

    /// A spec together with a patch radius large enough to certify it.
    /// Sandwiches get a window wide enough that the patch never leaves it.
    pub fn setup(&self, seq: &BiSequence, periods: usize) -> (TilingSpec, QScalar) {
        match seq {
            BiSequence::Periodic(_) => {
                let spec = self.spec(seq, periods.max(2));
                let radius = crate::symmetry::certification_radius(&spec);
                (spec, radius)
            }
            BiSequence::Sandwich { middle, .. } => {
                let h = self.pair_height().approx();
                let probe = self.spec(seq, 1);
                let m = probe.tile_bound().approx();
                let base = crate::symmetry::certification_radius(&probe).approx();
                let cover = (middle.len() as f64 / 2.0 + 2.0) * h + 2.0 * m;
                let radius = (base + m).max(cover).ceil();
                let window = ((radius + 2.0 * m) / h).ceil() as usize + 2 + periods;
                (self.spec(seq, window), QScalar::from_int(radius as i64))
            }
        }
    }

    /// Builds the stack for `seq`. Periodic sequences give a doubly periodic
    /// spec with `window` periods in the motif and a vertical generator of
    /// one period; sandwiches give a strip with `window` constant pairs on
    /// each side of the middle word.
    pub fn spec(&self, seq: &BiSequence, window: usize) -> TilingSpec {
        let window = window.max(1);
        let mut motif = Vec::new();
        let h = self.pair_height();
        let (first, count) = match seq {
            BiSequence::Periodic(w) => (0i64, (w.len() * window) as i64),
            BiSequence::Sandwich { middle, .. } => (-(window as i64), (middle.len() + 2 * window) as i64),
        };
        let mut s = QScalar::from_int(0);
        let mut period_shift = None;
        for k in first..first + count {
            s = self.push_pair(k, seq.at(k), s, &mut motif);
            // keep the column near the vertical axis
            while !(s.clone() - &self.width).is_negative() {
                s = s - &self.width;
            }
            while s.is_negative() {
                s = s + &self.width;
            }
            if let BiSequence::Periodic(w) = seq {
                if k + 1 == w.len() as i64 {
                    period_shift = Some(s.clone());
                }
            }
        }
        // Centre the stack vertically on the origin.
        let y_lo = h.clone() * &QScalar::from_int(first);
        let y_hi = h.clone() * &QScalar::from_int(first + count);
        let centre = (y_lo + &y_hi) / QScalar::from_int(2);
        let shift = Isometry::translation(Point::new(QScalar::from_int(0), -centre));
        let motif: Vec<Polygon> = motif.iter().map(|t| t.transformed(&shift)).collect();
        let mut generators = vec![Isometry::translation(Point::new(self.width.clone(), QScalar::from_int(0)))];
        let rank = if let BiSequence::Periodic(w) = seq {
            let height = h * &QScalar::from_int(w.len() as i64);
            let shift = period_shift.expect("motif holds a full period");
            generators.push(Isometry::translation(Point::new(shift, height)));
            2
        } else {
            1
        };
        let mut spec = TilingSpec::new(motif, generators, rank);
        spec.layers = Some(LayerDescription {
            geometry: self.clone(),
            seq: seq.clone(),
            window,
        });
        spec
    }
}

/// Stack for `seq` together with a patch radius suited to symmetry
/// detection. Sandwich strips get enough constant pairs on each side for
/// the disc to fit, and the disc covers the whole middle word.
pub fn stacked_setup(layers: LayerPair, seq: &BiSequence, periods: usize) -> (TilingSpec, QScalar) {
    StackGeometry::default_for(layers).setup(seq, periods)
}

/// The layered structure behind a spec, for symbolic cross-checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDescription {
    pub geometry: StackGeometry,
    pub seq: BiSequence,
    pub window: usize,
}

/// Stack with the default layer shapes for `layers`.
pub fn stacked_spec(layers: LayerPair, seq: &BiSequence, window: usize) -> TilingSpec {
    StackGeometry::default_for(layers).spec(seq, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BiSequence {
        s.parse().unwrap()
    }

    fn pair(s: &str) -> LayerPair {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(seq("per:101100"), BiSequence::Periodic(vec![0, 0, 1, 0, 1, 1]));
        assert_eq!(seq("per:0101"), seq("per:10"));
        assert_eq!(seq("sand:0|00110100|0"), seq("sand:0|1101|0"));
        assert_eq!(seq("sand:1||1"), seq("per:1"));
        assert_eq!(seq("sand:0|110100|0").to_string(), "sand:0|1101|0");
        assert!("per:".parse::<BiSequence>().is_err());
        assert!("sand:0|12|0".parse::<BiSequence>().is_err());
        assert!("foo".parse::<BiSequence>().is_err());
    }

    #[test]
    fn act_examples() {
        let alt = seq("per:01");
        assert_eq!(alt.act(SeqAction::Complement), alt);
        assert_eq!(alt.profile().shift_complement_invariant, Some(1));
        let single = seq("sand:0|1|0");
        assert_eq!(single.act(SeqAction::Reverse), single);
        let p = seq("per:101100");
        assert_eq!(p.act(SeqAction::Shift(6)), p);
    }

    #[test]
    fn profile_examples() {
        let p = seq("per:0001011").profile();
        assert_eq!(p.shift_invariant, Some(7));
        assert_eq!(p.reverse_invariant, None);
        assert_eq!(p.reverse_complement_invariant, None);
        assert_eq!(p.shift_complement_invariant, None);

        let p = seq("per:111011000100").profile();
        assert_eq!(p.shift_invariant, Some(12));
        assert_eq!(p.shift_complement_invariant, Some(6));
        assert_eq!(p.reverse_invariant, None);
        assert_eq!(p.reverse_complement_invariant, None);

        let p = seq("sand:0||1").profile();
        assert!(p.reverse_complement_invariant.is_some());
        assert_eq!(p.reverse_invariant, None);
        assert_eq!(p.shift_invariant, None);
        assert_eq!(p.shift_complement_invariant, None);
    }

    /// Brute-force oracle on explicit symbols over a long window.
    fn oracle(s: &BiSequence) -> (bool, bool, bool) {
        let span = 40i64;
        let check = |f: &dyn Fn(i64, i64) -> bool| (-span..=span).any(|m| (-span..=span).all(|k| f(k, m)));
        let rev = check(&|k, m| s.at(k + m) == s.at(-k));
        let revc = check(&|k, m| s.at(k + m) == 1 - s.at(-k));
        let shc = (1..=span).any(|m| (-span..=span).all(|k| s.at(k + m) == 1 - s.at(k)));
        (rev, revc, shc)
    }

    #[test]
    fn profile_matches_oracle() {
        for lit in [
            "per:0", "per:01", "per:0011", "per:101100", "per:111011000100", "per:0001011", "per:001",
            "sand:0|1|0", "sand:0||1", "sand:0|1101|0", "sand:1|0110|0", "sand:0|10|1",
        ] {
            let s = seq(lit);
            let p = s.profile();
            let got = (
                p.reverse_invariant.is_some(),
                p.reverse_complement_invariant.is_some(),
                p.shift_complement_invariant.is_some(),
            );
            assert_eq!(got, oracle(&s), "{lit}");
        }
    }

    #[test]
    fn stacked_group_examples() {
        let rp = pair("R,P");
        assert_eq!(stacked_group(rp, &seq("per:101100")), GroupName::StarStar);
        assert_eq!(stacked_group(rp, &seq("per:111011000100")), GroupName::CrossCross);
        assert_eq!(stacked_group(rp, &seq("per:0001011")), GroupName::Circle);
        assert_eq!(stacked_group(rp, &seq("sand:0|110100|0")), GroupName::InfInf);
        assert_eq!(stacked_group(rp, &seq("sand:0||1")), GroupName::InfStar);
        assert_eq!(stacked_group(rp, &seq("sand:0|1|0")), GroupName::TwoTwoInf);
        assert_eq!(stacked_group(pair("I,P"), &seq("sand:0||1")), GroupName::InfCross);
    }

    #[test]
    fn stacked_spec_ranks() {
        let s = stacked_spec(pair("I,P"), &seq("per:0"), 2);
        assert_eq!(s.periodicity_rank, 2);
        let s = stacked_spec(pair("R,T"), &seq("sand:0|1|0"), 3);
        assert_eq!(s.periodicity_rank, 1);
        assert_eq!(s.generators.len(), 1);
    }
}
