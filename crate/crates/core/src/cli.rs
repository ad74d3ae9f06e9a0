//! The `celldraw` command line: argument grammar and dispatch onto the library.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cells::{census, parse_type, CellType};
use crate::constructions::{
    convex_5_2_free, crossing_gadget_rewrite, cylinder_quasiplanar, cylinder_threezero_free, doubled_triangulation,
    fourone_free, geodesic_base, hexgrid_cylinder, wedge_complete, Construction,
};
use crate::geometry::format_rational;
use crate::io::{geo_to_string, load_str, map_to_string, render_svg, Document, Layout, RenderOptions};
use crate::map::Drawing;
use crate::properties::{
    is_celltype_free, is_connected_drawing, is_non_homotopic, is_quasiplanar, is_simple_drawing, Witness,
};
use crate::verifiers::{
    density_report, run_discharging, verify_corridor_inequality, verify_fivezero_chain,
    verify_small_cell_classification, verify_vertex_cell_identity, DischargeMode, VerifierReport, VerifyError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "celldraw", version, about = "Cells, cell types and extremal constructions for drawings of multigraphs")]
pub struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a drawing from one of the constructions.
    Generate(GenerateArgs),
    /// Turn a geometric drawing into its planarized map.
    Planarize(IoArgs),
    /// Count the cells of a drawing by type and size.
    Census(InputArg),
    /// Test drawing-style predicates; exit 1 with a witness when one fails.
    Check(CheckArgs),
    /// Replay a counting claim exactly on a drawing.
    Verify(VerifyArgs),
    /// Draw a drawing as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConstructionKind {
    WedgeKn,
    Convex52Kn,
    Gadget,
    DoubleTri,
    HexgridCyl,
    QuasiCyl,
    ThreezeroCyl,
    FouroneFree,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub construction: ConstructionKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Subdivision level of the icosahedron for `double-tri` (1 is the icosahedron itself).
    #[arg(long, default_value_t = 1)]
    pub subdiv: usize,
    /// Double every edge twice instead of once.
    #[arg(long)]
    pub multi: bool,
    /// Drawing to rewrite (for `gadget`); `-` reads standard input.
    #[arg(long)]
    pub input: Option<String>,
    /// Map output; standard output when absent or `-`.
    #[arg(short, long)]
    pub output: Option<String>,
    /// Also write the exact geometry here, when the construction has one.
    #[arg(long)]
    pub geo_output: Option<String>,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Input document; standard input when absent or `-`.
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct IoArgs {
    pub input: Option<String>,
    #[arg(short, long)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: Option<String>,
    #[arg(long)]
    pub simple_drawing: bool,
    #[arg(long)]
    pub non_homotopic: bool,
    #[arg(long)]
    pub quasiplanar: bool,
    #[arg(long)]
    pub connected: bool,
    /// Forbidden cell type, as a word (`VXX`) or shorthand (`3_1`); repeatable.
    #[arg(long)]
    pub forbid: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Claim {
    VertexCells,
    Corridor,
    SmallCells,
    FivezeroChain,
    DischargingNh,
    DischargingSimple,
    Density,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: Option<String>,
    #[arg(long, value_enum)]
    pub claim: Claim,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LayoutArg {
    Given,
    Embed,
    Spring,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: Option<String>,
    #[arg(long)]
    pub shade: Option<String>,
    #[arg(long, value_enum)]
    pub layout: Option<LayoutArg>,
    #[arg(short, long)]
    pub output: Option<String>,
}

/// Anything that ends the run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read `{path}`: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write `{path}`: {source}")]
    Write { path: String, source: std::io::Error },
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

/// Standard streams, replaceable in tests.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, io: &mut Streams) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { io.stderr.write_all(text.as_bytes()) } else { io.stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, io) {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                let _ = writeln!(io.stdout, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn execute(cli: &Cli, io: &mut Streams) -> Result<i32, CliError> {
    match &cli.command {
        Command::Generate(a) => generate(a, io),
        Command::Planarize(a) => {
            let drawing = read_drawing(a.input.as_deref(), io)?;
            emit(a.output.as_deref(), &map_to_string(&drawing), io)?;
            Ok(EXIT_OK)
        }
        Command::Census(a) => census_cmd(cli.json, read_drawing(a.input.as_deref(), io)?, io),
        Command::Check(a) => check(cli.json, a, io),
        Command::Verify(a) => verify(cli.json, a, io),
        Command::Render(a) => render(a, io),
    }
}

fn read_text(path: Option<&str>, io: &mut Streams) -> Result<String, CliError> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            io.stdin.read_to_string(&mut s).map_err(|source| CliError::Read { path: "-".into(), source })?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).map_err(|source| CliError::Read { path: p.into(), source }),
    }
}

fn read_document(path: Option<&str>, io: &mut Streams) -> Result<Document, CliError> {
    load_str(&read_text(path, io)?).map_err(invalid)
}

fn read_drawing(path: Option<&str>, io: &mut Streams) -> Result<Drawing, CliError> {
    read_document(path, io)?.into_drawing().map_err(invalid)
}

fn emit(path: Option<&str>, text: &str, io: &mut Streams) -> Result<(), CliError> {
    match path {
        None | Some("-") => io.stdout.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "-".into(), source }),
        Some(p) => fs::write(p, text).map_err(|source| CliError::Write { path: p.into(), source }),
    }
}

fn need(value: Option<usize>, flag: &str, construction: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Invalid(format!("`{construction}` needs --{flag}")))
}

fn generate(a: &GenerateArgs, io: &mut Streams) -> Result<i32, CliError> {
    let built: Construction = match a.construction {
        ConstructionKind::WedgeKn => wedge_complete(need(a.n, "n", "wedge-kn")?),
        ConstructionKind::Convex52Kn => convex_5_2_free(need(a.n, "n", "convex52-kn")?),
        ConstructionKind::Gadget => {
            let d = read_drawing(Some(a.input.as_deref().unwrap_or("-")), io)?;
            crossing_gadget_rewrite(&d)
        }
        ConstructionKind::DoubleTri => geodesic_base(a.subdiv).and_then(|b| doubled_triangulation(&b, a.multi)),
        ConstructionKind::HexgridCyl => hexgrid_cylinder(need(a.m, "m", "hexgrid-cyl")?),
        ConstructionKind::QuasiCyl => cylinder_quasiplanar(need(a.n, "n", "quasi-cyl")?),
        ConstructionKind::ThreezeroCyl => cylinder_threezero_free(need(a.n, "n", "threezero-cyl")?),
        ConstructionKind::FouroneFree => fourone_free(need(a.k, "k", "fourone-free")?),
    }
    .map_err(invalid)?;
    log::info!("built {}", built.name);
    emit(a.output.as_deref(), &map_to_string(&built.drawing), io)?;
    if let Some(path) = &a.geo_output {
        match &built.geometry {
            Some(g) => emit(Some(path), &geo_to_string(g), io)?,
            None => return Err(CliError::Invalid(format!("{} has no geometry to write", built.name))),
        }
    }
    Ok(EXIT_OK)
}

fn census_cmd(json_out: bool, d: Drawing, io: &mut Streams) -> Result<i32, CliError> {
    let c = census(&d).map_err(invalid)?;
    let out = if json_out {
        let types: Vec<Value> = c
            .by_type
            .iter()
            .map(|(t, count)| {
                let mut v = json!({ "type": t.word(), "size": t.size(), "count": count });
                if t.shorthand_is_unique() {
                    v["shorthand"] = json!(t.shorthand());
                }
                v
            })
            .collect();
        let sizes: serde_json::Map<String, Value> =
            c.size_histogram().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let report = json!({
            "n": c.n,
            "edges": c.edge_count,
            "crossings": c.crossing_count,
            "cells": c.cells.len(),
            "types": types,
            "sizes": sizes,
        });
        format!("{}\n", serde_json::to_string_pretty(&report).expect("JSON values always serialize"))
    } else {
        let mut s = format!(
            "n = {}, |E| = {}, crossings = {}, cells = {}\n",
            c.n,
            c.edge_count,
            c.crossing_count,
            c.cells.len()
        );
        for (t, count) in &c.by_type {
            let short = if t.shorthand_is_unique() { format!(" ({})", t.shorthand()) } else { String::new() };
            s.push_str(&format!("{:>8}{short}: {count}\n", t.word()));
        }
        s
    };
    emit(None, &out, io)?;
    Ok(EXIT_OK)
}

fn witness_kind(w: &Witness) -> &'static str {
    match w {
        Witness::CommonPoints { .. } => "common-points",
        Witness::EmptyLens(_) => "empty-lens",
        Witness::CrossingTriple(_) => "crossing-triple",
        Witness::Cell { .. } => "cell",
    }
}

fn check(json_out: bool, a: &CheckArgs, io: &mut Streams) -> Result<i32, CliError> {
    let forbidden: Vec<CellType> = a.forbid.iter().map(|s| parse_type(s)).collect::<Result<_, _>>().map_err(invalid)?;
    let d = read_drawing(a.input.as_deref(), io)?;
    let mut results: Vec<(String, Result<(), Value>)> = Vec::new();
    let witness = |check: Result<(), Witness>| {
        check.map_err(|w| json!({ "kind": witness_kind(&w), "description": w.describe(&d) }))
    };
    if a.simple_drawing {
        results.push(("simple-drawing".into(), witness(is_simple_drawing(&d))));
    }
    if a.non_homotopic {
        results.push(("non-homotopic".into(), witness(is_non_homotopic(&d))));
    }
    if a.quasiplanar {
        results.push(("quasiplanar".into(), witness(is_quasiplanar(&d))));
    }
    if a.connected {
        let outcome = if is_connected_drawing(&d) {
            Ok(())
        } else {
            let (parts, _) = d.map().components();
            Err(json!({ "kind": "components", "description": format!("the drawing has {parts} connected components") }))
        };
        results.push(("connected".into(), outcome));
    }
    for t in &forbidden {
        let outcome = is_celltype_free(&d, t).map_err(invalid)?;
        results.push((format!("{}-free", t.word()), witness(outcome)));
    }
    if results.is_empty() {
        return Err(CliError::Invalid(
            "nothing to check; pass --simple-drawing, --non-homotopic, --quasiplanar, --connected or --forbid".into(),
        ));
    }
    let all = results.iter().all(|(_, r)| r.is_ok());
    let out = if json_out {
        let rows: Vec<Value> = results
            .iter()
            .map(|(name, r)| match r {
                Ok(()) => json!({ "check": name, "holds": true }),
                Err(w) => json!({ "check": name, "holds": false, "witness": w }),
            })
            .collect();
        format!("{}\n", serde_json::to_string_pretty(&json!({ "holds": all, "checks": rows })).expect("serializable"))
    } else {
        results
            .iter()
            .map(|(name, r)| match r {
                Ok(()) => format!("{name}: holds\n"),
                Err(w) => format!("{name}: FAILS, witness: {}\n", w["description"].as_str().unwrap_or_default()),
            })
            .collect()
    };
    emit(None, &out, io)?;
    Ok(if all { EXIT_OK } else { EXIT_FALSE })
}

fn report_json(r: &VerifierReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "lhs": format_rational(&c.lhs),
                "relation": c.relation.to_string(),
                "rhs": format_rational(&c.rhs),
                "pass": c.pass,
                "witness": c.witness,
            })
        })
        .collect();
    json!({ "claim": r.claim, "pass": r.pass(), "checks": checks })
}

fn verify(json_out: bool, a: &VerifyArgs, io: &mut Streams) -> Result<i32, CliError> {
    let d = read_drawing(a.input.as_deref(), io)?;
    if let Claim::Density = a.claim {
        let r = density_report(&d);
        let ok = r.violations().next().is_none();
        let out = if json_out {
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "label": row.label,
                        "formula": row.formula,
                        "edges": row.edges,
                        "bound": row.bound.as_ref().map(format_rational),
                        "holds": row.holds,
                        "tight": row.tight,
                    })
                })
                .collect();
            let report = json!({
                "claim": "density",
                "pass": ok,
                "n": r.n,
                "edges": r.edges,
                "crossings": r.crossings,
                "connected": r.connected,
                "simple_drawing": r.simple_drawing,
                "non_homotopic": r.non_homotopic,
                "simple_graph": r.simple_graph,
                "quasiplanar": r.quasiplanar,
                "free_of": r.free_of.iter().map(CellType::word).collect::<Vec<_>>(),
                "rows": rows,
            });
            format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"))
        } else {
            let mut s = format!("density: {}\n  n = {}, |E| = {}, crossings = {}\n", if ok { "pass" } else { "FAIL" }, r.n, r.edges, r.crossings);
            for row in &r.rows {
                s.push_str(&format!("  {row}\n"));
            }
            s
        };
        emit(None, &out, io)?;
        return Ok(if ok { EXIT_OK } else { EXIT_FALSE });
    }
    let result = match a.claim {
        Claim::VertexCells => verify_vertex_cell_identity(&d),
        Claim::Corridor => verify_corridor_inequality(&d),
        Claim::SmallCells => verify_small_cell_classification(&d),
        Claim::FivezeroChain => verify_fivezero_chain(&d),
        Claim::DischargingNh => run_discharging(&d, DischargeMode::NonHomotopic).map(|(_, r)| r),
        Claim::DischargingSimple => run_discharging(&d, DischargeMode::Simple).map(|(_, r)| r),
        Claim::Density => unreachable!("handled above"),
    };
    match result {
        Ok(r) => {
            let out = if json_out {
                format!("{}\n", serde_json::to_string_pretty(&report_json(&r)).expect("serializable"))
            } else {
                r.to_string()
            };
            emit(None, &out, io)?;
            Ok(if r.pass() { EXIT_OK } else { EXIT_FALSE })
        }
        Err(VerifyError::Precondition { requirement, witness }) => {
            let out = if json_out {
                let v = json!({ "pass": false, "precondition": requirement, "witness": witness });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else {
                format!("precondition `{requirement}` fails, witness: {witness}\n")
            };
            emit(None, &out, io)?;
            Ok(EXIT_FALSE)
        }
        Err(e) => Err(invalid(e)),
    }
}

fn render(a: &RenderArgs, io: &mut Streams) -> Result<i32, CliError> {
    let doc = read_document(a.input.as_deref(), io)?;
    let shade = a.shade.as_deref().map(parse_type).transpose().map_err(invalid)?;
    let layout = match a.layout {
        Some(LayoutArg::Given) => Layout::Given,
        Some(LayoutArg::Embed) => Layout::Embed,
        Some(LayoutArg::Spring) => Layout::Spring,
        None if matches!(doc, Document::Geo(_)) => Layout::Given,
        None => Layout::Embed,
    };
    let svg = render_svg(&doc, &RenderOptions { layout, shade }).map_err(invalid)?;
    for w in &svg.warnings {
        let _ = writeln!(io.stderr, "warning: {w}");
    }
    emit(a.output.as_deref(), &svg.document, io)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("celldraw").chain(args.iter().copied()),
            &mut Streams { stdin: &mut input, stdout: &mut out, stderr: &mut err },
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn generate_then_census_through_pipes() {
        let (code, map, _) = call(&["generate", "--construction", "wedge-kn", "--n", "6"], "");
        assert_eq!(code, 0);
        let (code, out, _) = call(&["census", "--json"], &map);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["n"], 6);
        assert_eq!(v["edges"], 15);
    }

    #[test]
    fn failed_check_exits_one_with_witness() {
        let (_, map, _) = call(&["generate", "--construction", "double-tri", "--subdiv", "1"], "");
        let (code, out, _) = call(&["check", "--json", "--forbid", "3_0"], &map);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["checks"][0]["witness"]["kind"], "cell");
    }

    #[test]
    fn usage_and_input_errors_exit_two() {
        assert_eq!(call(&["census", "/nonexistent/missing.json"], "").0, 2);
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["generate", "--construction", "wedge-kn"], "").0, 2);
        assert_eq!(call(&["census"], "{").0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("generate"));
    }
}
