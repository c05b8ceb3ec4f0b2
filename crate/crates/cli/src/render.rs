//! Deterministic SVG output for patches.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use monocoronal::tiling::Patch;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("invalid style: {0}")]
    Style(String),
    #[error("no fill colour for {0}-gons")]
    MissingFill(usize),
    #[error("patch has no tiles")]
    Empty,
}

/// Presentation settings. Coordinates stay exact until they are printed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderStyle {
    /// Stroke width in user units.
    pub stroke_width: f64,
    pub stroke: String,
    /// Fill colour per gon size.
    pub palette: BTreeMap<usize, String>,
    /// User units per coordinate unit.
    pub scale: f64,
    pub margin: f64,
    pub decimals: usize,
}

impl Default for RenderStyle {
    fn default() -> Self {
        let palette = [
            (3, "#f2c14e"),
            (4, "#7fb7be"),
            (5, "#d3a588"),
            (6, "#f78154"),
            (7, "#b4adea"),
            (8, "#5d9cec"),
            (9, "#c9e4ca"),
            (10, "#e6aace"),
            (12, "#9c89b8"),
        ]
        .into_iter()
        .map(|(k, v)| (k, v.to_string()))
        .collect();
        RenderStyle {
            stroke_width: 1.0,
            stroke: "#222222".into(),
            palette,
            scale: 40.0,
            margin: 10.0,
            decimals: 6,
        }
    }
}

impl RenderStyle {
    pub fn from_toml(text: &str) -> Result<Self, RenderError> {
        let s: RenderStyle = toml::from_str(text).map_err(|e| RenderError::Style(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(RenderError::Style("scale must be positive".into()));
        }
        if !(self.stroke_width > 0.0 && self.stroke_width.is_finite()) {
            return Err(RenderError::Style("stroke width must be positive".into()));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(RenderError::Style("margin must be non-negative".into()));
        }
        if self.decimals > 12 {
            return Err(RenderError::Style("at most 12 decimals".into()));
        }
        Ok(())
    }
}

/// Prints `x` with `d` decimals, never as `-0`.
fn num(x: f64, d: usize) -> String {
    let s = format!("{x:.d$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// One `<path>` per tile, in patch order, y axis pointing up.
pub fn render_svg(patch: &Patch, style: &RenderStyle) -> Result<String, RenderError> {
    style.validate()?;
    let tiles = patch.tiles();
    if tiles.is_empty() {
        return Err(RenderError::Empty);
    }
    let pts: Vec<Vec<(f64, f64)>> = tiles
        .iter()
        .map(|t| t.vertices().iter().map(|v| v.approx()).collect())
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in pts.iter().flatten() {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let d = style.decimals;
    let m = style.margin;
    let k = style.scale;
    let w = (x1 - x0) * k + 2.0 * m;
    let h = (y1 - y0) * k + 2.0 * m;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w, d),
        num(h, d),
        num(w, d),
        num(h, d)
    );
    let _ = writeln!(
        out,
        r#"<g stroke="{}" stroke-width="{}" stroke-linejoin="round">"#,
        style.stroke,
        num(style.stroke_width, d)
    );
    for (tile, vs) in tiles.iter().zip(&pts) {
        let n = tile.n_gon();
        let fill = style.palette.get(&n).ok_or(RenderError::MissingFill(n))?;
        let mut path = String::new();
        for (i, &(x, y)) in vs.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(path, "{cmd}{} {} ", num((x - x0) * k + m, d), num((y1 - y) * k + m, d));
        }
        path.push('Z');
        let _ = writeln!(out, r#"<path d="{path}" fill="{fill}"/>"#);
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use monocoronal::tiling::{build_patch, TilingSpec};
    use monocoronal::{Isometry, Point, Polygon, QScalar, Scalar};

    fn squares() -> Patch {
        let p = |x: i64, y: i64| Point::new(QScalar::from_int(x), QScalar::from_int(y));
        let sq = Polygon::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        let spec = TilingSpec::new(
            vec![sq],
            vec![Isometry::translation(p(1, 0)), Isometry::translation(p(0, 1))],
            2,
        );
        build_patch(&spec, &QScalar::from_int(2)).unwrap()
    }

    #[test]
    fn square_grid_paths_are_axis_aligned() {
        let patch = squares();
        let svg = render_svg(&patch, &RenderStyle::default()).unwrap();
        let paths: Vec<&str> = svg.lines().filter(|l| l.starts_with("<path")).collect();
        assert_eq!(paths.len(), patch.tiles().len());
        for line in paths {
            let d = line.split('"').nth(1).unwrap();
            let coords: Vec<f64> = d
                .trim_end_matches('Z')
                .split(['M', 'L'])
                .filter(|s| !s.trim().is_empty())
                .flat_map(|s| s.split_whitespace().map(|v| v.parse::<f64>().unwrap()))
                .collect();
            assert_eq!(coords.len(), 8);
            let xs: Vec<f64> = coords.iter().step_by(2).copied().collect();
            let ys: Vec<f64> = coords.iter().skip(1).step_by(2).copied().collect();
            for i in 0..4 {
                let j = (i + 1) % 4;
                assert!(xs[i] == xs[j] || ys[i] == ys[j]);
            }
        }
    }

    #[test]
    fn deterministic_and_rounded() {
        let patch = squares();
        let style = RenderStyle {
            decimals: 2,
            ..RenderStyle::default()
        };
        let a = render_svg(&patch, &style).unwrap();
        assert_eq!(a, render_svg(&patch, &style).unwrap());
        assert!(a.contains("M10.00 "));
    }

    #[test]
    fn style_validation() {
        let mut s = RenderStyle::default();
        s.palette.remove(&4);
        assert!(matches!(render_svg(&squares(), &s), Err(RenderError::MissingFill(4))));
        assert!(RenderStyle::from_toml("scale = -1.0").is_err());
        assert!(RenderStyle::from_toml("colour = 3").is_err());
        let s = RenderStyle::from_toml("scale = 10.0\n[palette]\n4 = \"red\"\n").unwrap();
        assert_eq!(s.palette.len(), 1);
    }

    #[test]
    fn negative_zero_is_printed_as_zero() {
        assert_eq!(num(-0.0000001, 6), "0.000000");
        assert_eq!(num(-1.5, 1), "-1.5");
    }
}
