//! Command-line front end: argument model, command dispatch and SVG output.

pub mod render;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use monocoronal::catalog::{corona_table, list_families, Catalog, FamilyEntry, Params};
use monocoronal::combinatorics::{CombinatoricsError, CoronaKind};
use monocoronal::expr::parse_value;
use monocoronal::highdim::{parse_expr, period_rank, symbolic_corona};
use monocoronal::layers::{stacked_group, stacked_setup, BiSequence, LayerPair};
use monocoronal::symmetry::{classify, find_patch_symmetries, find_symmetries, SymmetryError, SymmetrySet};
use monocoronal::tiling::{build_patch, verify_monocoronal, Patch, TilingError, TilingSpec};
use monocoronal::{Mode, QScalar};

use render::{render_svg, RenderStyle};

#[derive(Debug, Parser)]
#[command(name = "monocoronal", version, about = "Monocoronal tilings: enumerate, generate, verify, classify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    F2f,
    Nonf2f,
}

impl From<Kind> for CoronaKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::F2f => CoronaKind::FaceToFace,
            Kind::Nonf2f => CoronaKind::NonFaceToFace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Direct,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Direct => Mode::Direct,
        }
    }
}

/// How to pick a family instance.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Instance {
    /// Parameter override `name=value`, value as `a+b*r2+c*r3+d*r6`.
    #[arg(long = "params", value_name = "KEY=VAL")]
    pub params: Vec<String>,
    /// Named special case of the family.
    #[arg(long)]
    pub special: Option<String>,
    /// Special case given by its equalities, e.g. `a = b`.
    #[arg(long = "equal", value_name = "EQ")]
    pub equalities: Vec<String>,
    /// Layer sequence for layered families, `per:WORD` or `sand:L|WORD|R`.
    #[arg(long)]
    pub seq: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Corona types with feasibility verdicts and realizing families.
    Enumerate {
        #[arg(value_enum, default_value = "f2f")]
        kind: Kind,
    },
    /// Catalog families.
    Families {
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Writes a patch of a family instance.
    Generate {
        family: String,
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value = "3")]
        radius: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Checks that all interior vertex coronae of a patch agree.
    Verify {
        patch: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
    },
    /// Symmetry group of a family instance or of a patch file.
    Symmetry {
        family: Option<String>,
        #[command(flatten)]
        instance: Instance,
        #[arg(long, conflicts_with = "family")]
        patch: Option<PathBuf>,
    },
    /// Group of a layer stack.
    Stack {
        /// Layer pair: I,P  I,T  R,P or R,T.
        pair: String,
        #[arg(long)]
        seq: String,
        /// Also classify a built window geometrically.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 2)]
        periods: usize,
    },
    /// Period rank and corona census of a higher-dimensional expression.
    Rank { expr: String },
    /// SVG drawing of a patch file.
    Render {
        patch: PathBuf,
        /// TOML file with stroke_width, stroke, scale, margin, decimals, [palette].
        #[arg(long)]
        style: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<TilingError> for CliError {
    fn from(e: TilingError) -> Self {
        match e {
            TilingError::TooManyTiles(_) => CliError::Limit(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::PatchTooSmall { .. } => CliError::Limit(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<CombinatoricsError> for CliError {
    fn from(e: CombinatoricsError) -> Self {
        match e {
            CombinatoricsError::BudgetExceeded(_) => CliError::Limit(e.to_string()),
            _ => usage(e),
        }
    }
}

/// Standard output of a command and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }

    fn verdict(stdout: String, ok: bool) -> Self {
        Outcome {
            stdout,
            code: if ok { 0 } else { 1 },
        }
    }
}

fn family(id: &str) -> Result<&'static FamilyEntry, CliError> {
    Catalog::builtin().get(id).map_err(usage)
}

/// Resolves the instance flags to concrete parameters.
pub fn resolve(fam: &FamilyEntry, inst: &Instance) -> Result<Params, CliError> {
    let mut params = match (&inst.special, inst.equalities.is_empty()) {
        (Some(_), false) => return Err(usage("use either --special or --equal, not both")),
        (Some(name), true) => {
            let case = fam
                .special_named(name)
                .ok_or_else(|| usage(format!("family {} has no special case {name:?}", fam.id)))?;
            fam.special_params(case).map_err(usage)?
        }
        (None, false) => {
            let eqs: Vec<&str> = inst.equalities.iter().map(String::as_str).collect();
            fam.special_case(&eqs).map_err(usage)?
        }
        (None, true) => fam.default_params().map_err(usage)?,
    };
    for kv in &inst.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("--params expects KEY=VAL, got {kv:?}")))?;
        let value = parse_value(v.trim()).map_err(usage)?;
        if !params.set(k.trim(), value) {
            return Err(usage(format!("family {} has no parameter {:?}", fam.id, k.trim())));
        }
    }
    if let Some(s) = &inst.seq {
        if !fam.is_layered() {
            return Err(usage(format!("family {} is not layered", fam.id)));
        }
        params.sequence = Some(s.parse::<BiSequence>().map_err(usage)?);
    }
    fam.check(&params).map_err(usage)?;
    Ok(params)
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_or_return(output: &Option<PathBuf>, text: String) -> Result<String, CliError> {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

fn load_patch(path: &PathBuf) -> Result<Patch, CliError> {
    Patch::import(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn instance_spec(id: &str, inst: &Instance) -> Result<(TilingSpec, QScalar), CliError> {
    let fam = family(id)?;
    let params = resolve(fam, inst)?;
    fam.instantiate_with_radius(&params).map_err(usage)
}

fn symmetry_report(out: &mut String, set: &SymmetrySet) -> Result<(), CliError> {
    let group = classify(set)?;
    let _ = writeln!(out, "group: {}", group.orbifold());
    let _ = writeln!(out, "translation rank: {}", set.rank());
    let mut lines: Vec<String> = set.describe().iter().map(ToString::to_string).collect();
    lines.dedup();
    for g in lines {
        let _ = writeln!(out, "  {g}");
    }
    Ok(())
}

/// Runs one command. Errors carry their exit code.
pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Enumerate { kind } => {
            let rows = corona_table(kind.into())?;
            let mut out = String::new();
            let _ = writeln!(out, "{:<22} {:<12} families", "type", "status");
            for r in rows {
                let fams = if r.families.is_empty() { "-".to_string() } else { r.families.join(",") };
                let _ = writeln!(out, "{:<22} {:<12} {}", r.corona.to_string(), r.status.to_string(), fams);
            }
            Ok(Outcome::ok(out))
        }
        Command::Families { kind } => {
            let mut out = String::new();
            for f in list_families() {
                if kind.is_some_and(|k| f.is_face_to_face() != (k == Kind::F2f)) {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "{:<40} {:<4} {:<22} {}",
                    f.id,
                    f.flags.join(""),
                    f.corona.to_string(),
                    f.summary
                );
            }
            Ok(Outcome::ok(out))
        }
        Command::Generate {
            family,
            instance,
            radius,
            output,
        } => {
            let (spec, _) = instance_spec(&family, &instance)?;
            let r = parse_value(&radius).map_err(usage)?;
            let patch = build_patch(&spec, &r)?;
            Ok(Outcome::ok(write_or_return(&output, patch.export())?))
        }
        Command::Verify { patch, mode } => {
            let p = load_patch(&patch)?;
            let report = verify_monocoronal(&p, mode.into())?;
            let mut out = String::new();
            let _ = writeln!(out, "mode: {}", report.mode.name());
            let _ = writeln!(out, "vertices checked: {}", report.vertices_checked);
            let _ = writeln!(out, "face-to-face: {}", p.is_face_to_face());
            let _ = writeln!(out, "monocoronal: {}", report.verdict);
            if let Some((a, b)) = &report.witness {
                let _ = writeln!(out, "witness: {:?} vs {:?}", a.approx(), b.approx());
            }
            Ok(Outcome::verdict(out, report.verdict))
        }
        Command::Symmetry {
            family,
            instance,
            patch,
        } => {
            let mut out = String::new();
            let set = match (family, patch) {
                (Some(id), None) => {
                    let (spec, radius) = instance_spec(&id, &instance)?;
                    let p = build_patch(&spec, &radius)?;
                    find_symmetries(&spec, &p)?
                }
                (None, Some(path)) => find_patch_symmetries(&load_patch(&path)?)?,
                _ => return Err(usage("give a family id or --patch FILE")),
            };
            symmetry_report(&mut out, &set)?;
            Ok(Outcome::ok(out))
        }
        Command::Stack {
            pair,
            seq,
            check,
            periods,
        } => {
            let pair: LayerPair = pair.parse().map_err(usage)?;
            let seq: BiSequence = seq.parse().map_err(usage)?;
            let group = stacked_group(pair, &seq);
            let mut out = String::new();
            let _ = writeln!(out, "group: {}", group.orbifold());
            if !check {
                return Ok(Outcome::ok(out));
            }
            let (spec, radius) = stacked_setup(pair, &seq, periods);
            let p = build_patch(&spec, &radius)?;
            let geometric = classify(&find_symmetries(&spec, &p)?)?;
            let _ = writeln!(out, "geometric: {}", geometric.orbifold());
            Ok(Outcome::verdict(out, geometric == group))
        }
        Command::Rank { expr } => {
            let e = parse_expr(&expr).map_err(usage)?;
            let rank = period_rank(&e).map_err(usage)?;
            let mut out = String::new();
            let _ = writeln!(out, "dimension: {}", e.dim());
            let _ = writeln!(out, "period rank: {rank}");
            match symbolic_corona(&e) {
                Some(c) => {
                    let _ = writeln!(out, "corona: {c}");
                    let _ = writeln!(out, "monocoronal up to rigid motions: {}", e.is_direct());
                }
                None => {
                    let _ = writeln!(out, "corona: none (not monocoronal)");
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Render { patch, style, output } => {
            let p = load_patch(&patch)?;
            let style = match style {
                Some(s) => RenderStyle::from_toml(&read(&s)?).map_err(usage)?,
                None => RenderStyle::default(),
            };
            let svg = render_svg(&p, &style).map_err(usage)?;
            Ok(Outcome::ok(write_or_return(&output, svg)?))
        }
    }
}
