//! Combinatorial types of vertex coronae: the angle-count equations for
//! face-to-face and non face-to-face vertices, and feasibility rules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoronaKind {
    #[serde(rename = "f2f")]
    FaceToFace,
    #[serde(rename = "nonf2f")]
    NonFaceToFace,
}

impl CoronaKind {
    pub fn tag(self) -> &'static str {
        match self {
            CoronaKind::FaceToFace => "f2f",
            CoronaKind::NonFaceToFace => "nonf2f",
        }
    }
}

/// Gon sizes of the polygons having the vertex as a corner. For a non
/// face-to-face vertex the polygon containing it in an edge is not listed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoronaType {
    pub kind: CoronaKind,
    sizes: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("invalid corona type literal {0:?}")]
    Parse(String),
    #[error("gon sizes must be at least 3")]
    SmallGon,
    #[error("the alternation rule applies to 3 or 4 tiles, got {0}")]
    UnsupportedArity(usize),
    #[error("extension search needs a face-to-face type")]
    UnsupportedKind,
    #[error("rings must be between 1 and 3, got {0}")]
    Rings(u32),
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(u64),
}

impl CoronaType {
    pub fn new(kind: CoronaKind, mut sizes: Vec<u32>) -> Result<Self, CombinatoricsError> {
        if sizes.iter().any(|&s| s < 3) {
            return Err(CombinatoricsError::SmallGon);
        }
        sizes.sort_unstable();
        Ok(CoronaType { kind, sizes })
    }

    pub fn f2f(sizes: &[u32]) -> Self {
        CoronaType::new(CoronaKind::FaceToFace, sizes.to_vec()).expect("valid sizes")
    }

    pub fn nonf2f(sizes: &[u32]) -> Self {
        CoronaType::new(CoronaKind::NonFaceToFace, sizes.to_vec()).expect("valid sizes")
    }

    /// Sorted gon sizes.
    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    /// Map `i ↦ k_i`.
    pub fn gon_counts(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &s in &self.sizes {
            *m.entry(s).or_insert(0) += 1;
        }
        m
    }

    /// Checks `Σ k_i / i` against the angle-count identity for the kind.
    pub fn satisfies_equation(&self) -> bool {
        let lhs: Ratio<i64> = self
            .sizes
            .iter()
            .map(|&a| Ratio::new(1, a as i64))
            .sum();
        let n = self.n() as i64;
        let rhs = match self.kind {
            CoronaKind::FaceToFace => Ratio::new(n - 2, 2),
            CoronaKind::NonFaceToFace => Ratio::new(n - 1, 2),
        };
        lhs == rhs
    }

    /// Human-readable `k_i` listing, e.g. `k3=1 k7=1 k42=1`.
    pub fn counts_string(&self) -> String {
        self.gon_counts()
            .iter()
            .map(|(i, k)| format!("k{i}={k}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for CoronaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.sizes.iter().map(u32::to_string).collect();
        write!(f, "{}:{}", self.kind.tag(), body.join(","))
    }
}

impl FromStr for CoronaType {
    type Err = CombinatoricsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CombinatoricsError::Parse(s.to_string());
        let (kind, body) = s.split_once(':').ok_or_else(err)?;
        let kind = match kind.trim() {
            "f2f" => CoronaKind::FaceToFace,
            "nonf2f" => CoronaKind::NonFaceToFace,
            _ => return Err(err()),
        };
        let sizes = body
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        CoronaType::new(kind, sizes)
    }
}

impl Serialize for CoronaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoronaType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All nondecreasing `a_1 ≤ … ≤ a_k` with `a_1 ≥ min` and `Σ 1/a_i = target`.
fn unit_fractions(target: Ratio<i64>, k: usize, min: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let zero = Ratio::from_integer(0);
    if k == 0 {
        if target == zero {
            out.push(prefix.clone());
        }
        return;
    }
    if target <= zero {
        return;
    }
    if k == 1 {
        let inv = target.recip();
        if inv.is_integer() && *inv.numer() >= min {
            prefix.push(*inv.numer() as u32);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    // Smallest entry: 1/a ≤ target forces a ≥ 1/target; k/a ≥ target forces
    // a ≤ k/target.
    let lo = min.max((target.recip()).ceil().to_integer());
    let hi = (Ratio::from_integer(k as i64) / target).floor().to_integer();
    for a in lo..=hi {
        prefix.push(a as u32);
        unit_fractions(target - Ratio::new(1, a), k - 1, a, prefix, out);
        prefix.pop();
    }
}

/// Every face-to-face corona type: `Σ 1/a_i = n/2 − 1`, `a_i ≥ 3`.
/// Ordered by descending `n`, then lexicographically.
pub fn solve_f2f() -> Vec<CoronaType> {
    // With a_i ≥ 3 the left side is at most n/3, so n ≤ 6.
    let mut all = Vec::new();
    for n in (3..=6usize).rev() {
        let mut found = Vec::new();
        unit_fractions(Ratio::new(n as i64 - 2, 2), n, 3, &mut Vec::new(), &mut found);
        found.sort();
        all.extend(found.into_iter().map(|s| CoronaType::f2f(&s)));
    }
    all
}

/// Every non face-to-face corona type: `Σ 1/a_i = (n − 1)/2`, `a_i ≥ 3`.
pub fn solve_nonf2f() -> Vec<CoronaType> {
    // n/3 ≥ (n − 1)/2 forces n ≤ 3.
    let mut all = Vec::new();
    for n in (2..=3usize).rev() {
        let mut found = Vec::new();
        unit_fractions(Ratio::new(n as i64 - 1, 2), n, 3, &mut Vec::new(), &mut found);
        found.sort();
        all.extend(found.into_iter().map(|s| CoronaType::nonf2f(&s)));
    }
    all
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Realizable,
    Infeasible,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Realizable => "realizable",
            Status::Infeasible => "infeasible",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub status: Status,
    pub reason: String,
}

impl FeasibilityVerdict {
    fn new(status: Status, reason: impl Into<String>) -> Self {
        FeasibilityVerdict {
            status,
            reason: reason.into(),
        }
    }
}

/// Distinct cyclic arrangements of a multiset, up to rotation and reversal.
pub fn arrangements(sizes: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut perm = sizes.to_vec();
    perm.sort_unstable();
    loop {
        let canon = canonical_cycle(&perm);
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn canonical_cycle(seq: &[u32]) -> Vec<u32> {
    let n = seq.len();
    let mut best: Option<Vec<u32>> = None;
    let rev: Vec<u32> = seq.iter().rev().copied().collect();
    for base in [seq, &rev[..]] {
        for r in 0..n {
            let cand: Vec<u32> = (0..n).map(|i| base[(r + i) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Can an `a`-gon carry edge-neighbour labels in cyclic order such that
/// every consecutive pair is one of `pairs`?
fn boundary_labelling_exists(a: u32, pairs: &BTreeSet<(u32, u32)>) -> bool {
    if pairs.is_empty() {
        return false;
    }
    if a.is_multiple_of(2) || pairs.iter().any(|(x, y)| x == y) {
        return true;
    }
    // Odd length: needs an odd closed walk, i.e. a non-bipartite graph.
    let mut colour: BTreeMap<u32, bool> = BTreeMap::new();
    let nodes: BTreeSet<u32> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
    for &start in &nodes {
        if colour.contains_key(&start) {
            continue;
        }
        colour.insert(start, false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let cu = colour[&u];
            for &(x, y) in pairs {
                let other = if x == u {
                    y
                } else if y == u {
                    x
                } else {
                    continue;
                };
                match colour.get(&other) {
                    Some(&c) if c == cu => return true,
                    Some(_) => {}
                    None => {
                        colour.insert(other, !cu);
                        stack.push(other);
                    }
                }
            }
        }
    }
    false
}

/// First tile size whose boundary cannot be labelled under `arr`, if any.
fn arrangement_obstruction(arr: &[u32]) -> Option<u32> {
    let n = arr.len();
    let mut pairs: BTreeMap<u32, BTreeSet<(u32, u32)>> = BTreeMap::new();
    for i in 0..n {
        let l = arr[(i + n - 1) % n];
        let r = arr[(i + 1) % n];
        pairs.entry(arr[i]).or_default().insert((l.min(r), l.max(r)));
    }
    pairs
        .iter()
        .find(|(&a, p)| !boundary_labelling_exists(a, p))
        .map(|(&a, _)| a)
}

/// Edge-alternation test: each edge of a tile is shared with exactly one
/// neighbour, and the two neighbours at each corner are dictated by the
/// arrangement around the vertex.
pub fn alternation_rule(t: &CoronaType) -> Result<FeasibilityVerdict, CombinatoricsError> {
    let n = t.n();
    if n != 3 && n != 4 {
        return Err(CombinatoricsError::UnsupportedArity(n));
    }
    let arrs = arrangements(t.sizes());
    let mut reasons = Vec::new();
    for arr in &arrs {
        match arrangement_obstruction(arr) {
            Some(a) => reasons.push(format!(
                "arrangement {arr:?}: edges of a {a}-gon cannot alternate consistently"
            )),
            None => {
                return Ok(FeasibilityVerdict::new(
                    Status::Unknown,
                    format!("arrangement {arr:?} admits a consistent edge labelling"),
                ))
            }
        }
    }
    Ok(FeasibilityVerdict::new(
        Status::Infeasible,
        format!("alternation: {}", reasons.join("; ")),
    ))
}

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Node budget, overridable through `MONOCORONAL_NODE_BUDGET`.
pub fn node_budget() -> u64 {
    std::env::var("MONOCORONAL_NODE_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// Backtracking over planar face-to-face maps grown around a vertex, ring by
/// ring. Every completed vertex must show the same cyclic arrangement of
/// gon sizes up to reversal. Exhausting the tree proves infeasibility.
pub fn extension_search(t: &CoronaType, rings: u32) -> Result<FeasibilityVerdict, CombinatoricsError> {
    extension_search_with_budget(t, rings, node_budget())
}

pub fn extension_search_with_budget(
    t: &CoronaType,
    rings: u32,
    budget: u64,
) -> Result<FeasibilityVerdict, CombinatoricsError> {
    if t.kind != CoronaKind::FaceToFace {
        return Err(CombinatoricsError::UnsupportedKind);
    }
    if !(1..=3).contains(&rings) {
        return Err(CombinatoricsError::Rings(rings));
    }
    let mut nodes = 0u64;
    for arr in arrangements(t.sizes()) {
        let mut search = MapSearch::new(&arr, rings, budget);
        let found = search.run()?;
        nodes += search.nodes;
        if found {
            return Ok(FeasibilityVerdict::new(
                Status::Unknown,
                format!("arrangement {arr:?} extends to {rings} ring(s)"),
            ));
        }
    }
    Ok(FeasibilityVerdict::new(
        Status::Infeasible,
        format!("extension search exhausted at {rings} ring(s) after {nodes} nodes"),
    ))
}

#[derive(Clone)]
struct MapState {
    /// Counterclockwise vertex ids per face.
    faces: Vec<Vec<usize>>,
    complete: Vec<bool>,
}

struct MapSearch {
    /// Allowed cyclic size sequences (every rotation, both directions).
    allowed_cycles: BTreeSet<Vec<u32>>,
    /// Contiguous sub-words of allowed cycles, for partial fans.
    allowed_paths: BTreeSet<Vec<u32>>,
    sizes: Vec<u32>,
    counts: BTreeMap<u32, usize>,
    n: usize,
    rings: u32,
    budget: u64,
    nodes: u64,
    start: Vec<u32>,
}

enum VertexFan {
    Invalid,
    Cycle,
    /// Faces without a counterclockwise successor at the vertex.
    Open(Vec<usize>),
}

impl MapSearch {
    fn new(arr: &[u32], rings: u32, budget: u64) -> Self {
        let n = arr.len();
        let mut allowed_cycles = BTreeSet::new();
        let mut allowed_paths = BTreeSet::new();
        let rev: Vec<u32> = arr.iter().rev().copied().collect();
        for base in [arr.to_vec(), rev] {
            for r in 0..n {
                let rot: Vec<u32> = (0..n).map(|i| base[(r + i) % n]).collect();
                for len in 1..=n {
                    allowed_paths.insert(rot[..len].to_vec());
                }
                allowed_cycles.insert(rot);
            }
        }
        let mut counts = BTreeMap::new();
        for &s in arr {
            *counts.entry(s).or_insert(0) += 1;
        }
        MapSearch {
            allowed_cycles,
            allowed_paths,
            sizes: counts.keys().copied().collect(),
            counts,
            n,
            rings,
            budget,
            nodes: 0,
            start: arr.to_vec(),
        }
    }

    fn run(&mut self) -> Result<bool, CombinatoricsError> {
        // Center vertex 0 with spokes 1..=n; face i spans spokes i and i+1.
        let n = self.n;
        let mut state = MapState {
            faces: Vec::new(),
            complete: vec![false; n + 1],
        };
        for i in 0..n {
            let size = self.start[i] as usize;
            let spoke_a = 1 + i;
            let spoke_b = 1 + (i + 1) % n;
            let mut face = vec![0, spoke_a];
            for _ in 0..size - 3 {
                face.push(state.complete.len());
                state.complete.push(false);
            }
            face.push(spoke_b);
            state.faces.push(face);
        }
        if !self.valid(&state) {
            return Ok(false);
        }
        self.dfs(state)
    }

    fn fresh(state: &mut MapState) -> usize {
        state.complete.push(false);
        state.complete.len() - 1
    }

    /// Vertices within `rings` face-steps of the center, in id order.
    fn required(&self, state: &MapState) -> Vec<usize> {
        let mut level: BTreeSet<usize> = BTreeSet::from([0]);
        for _ in 0..self.rings {
            let mut next = level.clone();
            for f in &state.faces {
                if f.iter().any(|v| level.contains(v)) {
                    next.extend(f.iter().copied());
                }
            }
            level = next;
        }
        level.into_iter().collect()
    }

    fn fan(&self, state: &MapState, v: usize) -> VertexFan {
        // (face, next, prev) for faces at v
        let mut inc = Vec::new();
        for (fi, f) in state.faces.iter().enumerate() {
            let k = f.len();
            let mut hit = None;
            for (p, &u) in f.iter().enumerate() {
                if u == v {
                    if hit.is_some() {
                        return VertexFan::Invalid;
                    }
                    hit = Some(p);
                }
            }
            if let Some(p) = hit {
                inc.push((fi, f[(p + 1) % k], f[(p + k - 1) % k]));
            }
        }
        if inc.len() > self.n {
            return VertexFan::Invalid;
        }
        let mut per_size: BTreeMap<u32, usize> = BTreeMap::new();
        for &(fi, _, _) in &inc {
            let s = state.faces[fi].len() as u32;
            let c = per_size.entry(s).or_insert(0);
            *c += 1;
            if *c > self.counts.get(&s).copied().unwrap_or(0) {
                return VertexFan::Invalid;
            }
        }
        // succ: f -> g when prev_f == next_g
        let m = inc.len();
        let mut succ = vec![None; m];
        let mut has_pred = vec![false; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && inc[i].2 == inc[j].1 {
                    if succ[i].is_some() || has_pred[j] {
                        return VertexFan::Invalid;
                    }
                    succ[i] = Some(j);
                    has_pred[j] = true;
                }
            }
        }
        let size = |i: usize| state.faces[inc[i].0].len() as u32;
        let starts: Vec<usize> = (0..m).filter(|&i| !has_pred[i]).collect();
        if starts.is_empty() {
            // All faces lie on cycles; there must be exactly one full cycle.
            let mut seq = vec![size(0)];
            let mut cur = succ[0].expect("cycle");
            while cur != 0 {
                seq.push(size(cur));
                cur = succ[cur].expect("cycle");
            }
            if seq.len() == m && self.allowed_cycles.contains(&seq) {
                return VertexFan::Cycle;
            }
            return VertexFan::Invalid;
        }
        let mut covered = 0;
        let mut open = Vec::new();
        for &s in &starts {
            let mut seq = vec![size(s)];
            let mut cur = s;
            while let Some(nx) = succ[cur] {
                seq.push(size(nx));
                cur = nx;
            }
            covered += seq.len();
            if !self.allowed_paths.contains(&seq) {
                return VertexFan::Invalid;
            }
            open.push(inc[cur].0);
        }
        if covered != m {
            // A cycle coexisting with open chains.
            return VertexFan::Invalid;
        }
        VertexFan::Open(open)
    }

    fn valid(&self, state: &MapState) -> bool {
        let mut directed = BTreeSet::new();
        for f in &state.faces {
            let k = f.len();
            for p in 0..k {
                if !directed.insert((f[p], f[(p + 1) % k])) {
                    return false;
                }
            }
        }
        // Two faces meet in a common edge, a single vertex, or not at all.
        for (i, f) in state.faces.iter().enumerate() {
            for g in &state.faces[i + 1..] {
                let shared: Vec<usize> = f.iter().copied().filter(|v| g.contains(v)).collect();
                match shared.len() {
                    0 | 1 => {}
                    2 => {
                        let (a, b) = (shared[0], shared[1]);
                        let adj = |h: &Vec<usize>| {
                            let k = h.len();
                            (0..k).any(|p| {
                                (h[p] == a && h[(p + 1) % k] == b) || (h[p] == b && h[(p + 1) % k] == a)
                            })
                        };
                        if !adj(f) || !adj(g) {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        let mut seen = BTreeSet::new();
        for f in &state.faces {
            for &v in f {
                if !seen.insert(v) {
                    continue;
                }
                match self.fan(state, v) {
                    VertexFan::Invalid => return false,
                    VertexFan::Open(_) if state.complete[v] => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn merge(state: &MapState, from: usize, into: usize) -> Option<MapState> {
        if from == into {
            return Some(state.clone());
        }
        if state.complete[from] || state.complete[into] {
            return None;
        }
        let (keep, gone) = (from.min(into), from.max(into));
        let mut s = state.clone();
        for f in &mut s.faces {
            for v in f.iter_mut() {
                if *v == gone {
                    *v = keep;
                }
            }
        }
        Some(s)
    }

    fn dfs(&mut self, mut state: MapState) -> Result<bool, CombinatoricsError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CombinatoricsError::BudgetExceeded(self.budget));
        }
        loop {
            let target = self
                .required(&state)
                .into_iter()
                .find(|&v| !state.complete[v]);
            let Some(v) = target else { return Ok(true) };
            let open = match self.fan(&state, v) {
                VertexFan::Invalid => return Ok(false),
                VertexFan::Cycle => {
                    state.complete[v] = true;
                    if !self.valid(&state) {
                        return Ok(false);
                    }
                    continue;
                }
                VertexFan::Open(open) => open,
            };
            let f = &state.faces[open[0]];
            let k = f.len();
            let p = f.iter().position(|&u| u == v).expect("incident");
            let w = f[(p + k - 1) % k];
            // The face across edge v–w, counterclockwise after f around v.
            let mut children = Vec::new();
            for (gi, g) in state.faces.iter().enumerate() {
                let kg = g.len();
                for q in 0..kg {
                    let (a, b) = (g[q], g[(q + 1) % kg]);
                    if a == v && b == w {
                        continue;
                    }
                    if gi == open[0] {
                        continue;
                    }
                    let Some(s1) = MapSearch::merge(&state, a, v) else { continue };
                    let (b1, w1) = (ren(b, a, v), ren(w, a, v));
                    let Some(s2) = MapSearch::merge(&s1, b1, w1) else { continue };
                    children.push(s2);
                }
            }
            for &size in &self.sizes {
                let mut s = state.clone();
                let mut face = vec![v, w];
                for _ in 0..size - 2 {
                    face.push(MapSearch::fresh(&mut s));
                }
                s.faces.push(face);
                children.push(s);
            }
            for child in children {
                if self.valid(&child) && self.dfs(child)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
    }
}

/// Id of `x` after merging `a` with `v` (the smaller id survives).
fn ren(x: usize, a: usize, v: usize) -> usize {
    let (keep, gone) = (a.min(v), a.max(v));
    if x == gone {
        keep
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2f_table_rows() {
        let rows = solve_f2f();
        assert_eq!(rows.len(), 17);
        assert_eq!(rows[0], CoronaType::f2f(&[3, 3, 3, 3, 3, 3]));
        assert!(rows.contains(&CoronaType::f2f(&[3, 7, 42])));
        let per_n: Vec<usize> = (3..=6).map(|n| rows.iter().filter(|t| t.n() == n).count()).collect();
        assert_eq!(per_n, vec![10, 4, 2, 1]);
        assert!(rows.iter().all(CoronaType::satisfies_equation));
    }

    #[test]
    fn f2f_matches_brute_force() {
        // Independent enumeration of nondecreasing tuples with entries ≤ 42.
        let mut brute = BTreeSet::new();
        fn rec(n: usize, min: u32, cur: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
            if cur.len() == n {
                let sum: Ratio<i64> = cur.iter().map(|&a| Ratio::new(1, a as i64)).sum();
                if sum * 2 == Ratio::from_integer(n as i64 - 2) {
                    out.insert(cur.clone());
                }
                return;
            }
            for a in min..=42 {
                cur.push(a);
                rec(n, a, cur, out);
                cur.pop();
            }
        }
        for n in 3..=6 {
            rec(n, 3, &mut Vec::new(), &mut brute);
        }
        let solved: BTreeSet<Vec<u32>> = solve_f2f().iter().map(|t| t.sizes().to_vec()).collect();
        assert_eq!(solved, brute);
    }

    #[test]
    fn nonf2f_rows() {
        let rows = solve_nonf2f();
        assert_eq!(
            rows,
            vec![
                CoronaType::nonf2f(&[3, 3, 3]),
                CoronaType::nonf2f(&[3, 6]),
                CoronaType::nonf2f(&[4, 4]),
            ]
        );
        assert!(rows.iter().all(CoronaType::satisfies_equation));
    }

    #[test]
    fn literal_round_trip() {
        let t: CoronaType = "f2f:42,3,7".parse().unwrap();
        assert_eq!(t.to_string(), "f2f:3,7,42");
        assert_eq!(t.counts_string(), "k3=1 k7=1 k42=1");
        assert!("f2f:2,3".parse::<CoronaType>().is_err());
        assert!("x:3".parse::<CoronaType>().is_err());
    }

    #[test]
    fn arrangement_counts() {
        assert_eq!(arrangements(&[3, 3, 4, 12]).len(), 2);
        assert_eq!(arrangements(&[3, 4, 4, 6]).len(), 2);
        assert_eq!(arrangements(&[4, 4, 4, 4]).len(), 1);
        assert_eq!(arrangements(&[3, 7, 42]).len(), 1);
    }

    #[test]
    fn alternation_examples() {
        let v = |s: &[u32]| alternation_rule(&CoronaType::f2f(s)).unwrap().status;
        assert_eq!(v(&[3, 7, 42]), Status::Infeasible);
        assert_eq!(v(&[4, 6, 12]), Status::Unknown);
        assert_eq!(v(&[3, 3, 4, 12]), Status::Infeasible);
        assert_eq!(v(&[3, 12, 12]), Status::Unknown);
        assert_eq!(v(&[3, 4, 4, 6]), Status::Unknown);
        assert!(alternation_rule(&CoronaType::f2f(&[3, 3, 3, 3, 3, 3])).is_err());
    }

    #[test]
    fn extension_examples() {
        let v = |s: &[u32], r| extension_search(&CoronaType::f2f(s), r).unwrap().status;
        assert_eq!(v(&[3, 7, 42], 1), Status::Infeasible);
        assert_eq!(v(&[5, 5, 10], 1), Status::Infeasible);
        assert_eq!(v(&[6, 6, 6], 2), Status::Unknown);
        assert_eq!(v(&[4, 4, 4, 4], 2), Status::Unknown);
    }

    #[test]
    fn budget_is_enforced() {
        let r = extension_search_with_budget(&CoronaType::f2f(&[6, 6, 6]), 2, 3);
        assert_eq!(r, Err(CombinatoricsError::BudgetExceeded(3)));
    }
}
