//! The `steiner` command line.

mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::acceptance;
use crate::connectivity::{essentially_disconnects, is_indecomposable_f, Selection};
use crate::error::{Error, Result};
use crate::numeric::{fmt_sig, measures_agree, Arithmetic, Measure, Rational, Scalar, MEASURE_REL_TOL};
use crate::perimeter::{oracle_perimeter, perimeter_formula, FormulaArgs, Mode, PerimeterBreakdown, Region};
use crate::polyset::{build_w, min_translate_symdiff, steiner_symmetral};
use crate::pwfield::{classify_facets, CellId, PwAffineField};
use crate::rigidity::{
    check_equality_case, construct_witness, cut_eps, decide_rigidity, exhaustive_witness_search, gallery, ClassHint,
    Status,
};
use crate::scene::{parse_any, scene_of_set, AnyScene, Scene};

#[derive(Parser, Debug)]
#[command(name = "steiner", version, about = "Perimeter, equality cases and rigidity for Steiner symmetrization")]
pub struct Cli {
    /// rational (exact) or double
    #[arg(long, global = true)]
    arithmetic: Option<String>,
    /// Write a figure of the input.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Write the per-cell and per-facet ledger.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Steiner symmetral of the scene's slice length.
    Symmetrize {
        scene: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perimeter by the closed formula, checked against the polyhedral oracle.
    Perimeter {
        scene: Option<PathBuf>,
        #[arg(long, default_value = "F")]
        mode: String,
        /// Restrict to these cells and the facets touching them.
        #[arg(long, value_delimiter = ',')]
        cells: Vec<String>,
    },
    /// Decide rigidity of the slice length `v`.
    Rigidity {
        scene: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        class: String,
        /// rigid or non_rigid; a different verdict exits with 2.
        #[arg(long)]
        expect: Option<String>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        /// Also run the exhaustive cut search.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check that the scene's set is an equality case for its `v`.
    VerifyEquality { scene: Option<PathBuf> },
    /// Lift `F[v]` over the given cells.
    Witness {
        scene: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        plus: Vec<String>,
        /// Offset; defaults to half the cut threshold (or 1).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Does a facet selection essentially disconnect a set of cells?
    CheckConnect {
        scene: Option<PathBuf>,
        /// zero, jump, zero+jump, jump>EPS or zero+jump>EPS
        #[arg(long, default_value = "zero+jump")]
        k: String,
        /// Defaults to the support of `v`.
        #[arg(long, value_delimiter = ',')]
        cells: Vec<String>,
    },
    /// Print a named construction as a scene.
    Gallery {
        name: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Selftest,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `argv` (program name first) with `stdin` as the
/// scene source when no path is given.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    match execute(cli, &echo, stdin) {
        Ok(o) => o,
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn parse_arithmetic(s: &Option<String>) -> Result<Option<Arithmetic>> {
    match s.as_deref() {
        None => Ok(None),
        Some("rational") => Ok(Some(Arithmetic::Rational)),
        Some("double") => Ok(Some(Arithmetic::Double)),
        Some(other) => Err(Error::InvalidMode(format!("unknown arithmetic {other}"))),
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
            Ok(s)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

struct Ctx {
    svg: Option<PathBuf>,
    csv: Option<PathBuf>,
}

fn execute(cli: Cli, echo: &str, stdin: &mut dyn Read) -> Result<Outcome> {
    let start = Instant::now();
    let arithmetic = parse_arithmetic(&cli.arithmetic)?;
    let ctx = Ctx { svg: cli.svg.clone(), csv: cli.csv.clone() };
    let scene_path = match &cli.command {
        Command::Symmetrize { scene, .. }
        | Command::Perimeter { scene, .. }
        | Command::Rigidity { scene, .. }
        | Command::VerifyEquality { scene }
        | Command::Witness { scene, .. }
        | Command::CheckConnect { scene, .. } => Some(scene.clone()),
        Command::Gallery { .. } | Command::Selftest => None,
    };
    let (digest, mode, (result, code)) = match (&cli.command, scene_path) {
        (Command::Selftest, _) => return Ok(selftest()),
        (Command::Gallery { name, depth, out }, _) => {
            return match arithmetic.unwrap_or_default() {
                Arithmetic::Rational => emit_gallery::<Rational>(name, *depth, out, &ctx),
                Arithmetic::Double => emit_gallery::<f64>(name, *depth, out, &ctx),
            }
        }
        (cmd, Some(path)) => {
            let text = read_input(&path, stdin)?;
            let digest = hex::encode(Sha256::digest(text.as_bytes()));
            match parse_any(&text, arithmetic)? {
                AnyScene::Rational(s) => (digest, Arithmetic::Rational, dispatch(cmd, &s, &ctx)?),
                AnyScene::Double(s) => (digest, Arithmetic::Double, dispatch(cmd, &s, &ctx)?),
            }
        }
        _ => unreachable!("every other command reads a scene"),
    };
    let mut report = Map::new();
    report.insert("command".into(), json!(echo));
    report.insert("input_sha256".into(), json!(digest));
    report.insert("arithmetic".into(), json!(mode.to_string()));
    report.insert("result".into(), result);
    if cli.timing {
        report.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    let stdout = serde_json::to_string_pretty(&Value::Object(report)).expect("json") + "\n";
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn selftest() -> Outcome {
    let outcomes = acceptance::run_all();
    let mut stdout = String::new();
    for o in &outcomes {
        stdout.push_str(&o.line());
        stdout.push('\n');
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    stdout.push_str(&format!("{} of {} criteria passed\n", outcomes.len() - failed, outcomes.len()));
    Outcome { code: i32::from(failed > 0), stdout, stderr: String::new() }
}

fn emit_gallery<S: Scalar>(name: &str, depth: Option<usize>, out: &Option<PathBuf>, ctx: &Ctx) -> Result<Outcome> {
    let entry = gallery::<S>(name, depth)?;
    let text = entry.scene.to_json_string();
    side_outputs(&entry.scene, ctx, None)?;
    match out {
        Some(p) => {
            write_file(p, &text)?;
            let report = json!({"name": name, "expected": entry.expected.to_string(), "file": p.display().to_string()});
            Ok(Outcome { code: 0, stdout: serde_json::to_string_pretty(&report).expect("json") + "\n", stderr: String::new() })
        }
        None => Ok(Outcome { code: 0, stdout: text, stderr: String::new() }),
    }
}

pub(crate) fn fmt_scalar<S: Scalar>(x: &S) -> String {
    match S::MODE {
        Arithmetic::Rational => x.to_string(),
        Arithmetic::Double => fmt_sig(x.to_f64()),
    }
}

pub(crate) fn fmt_measure<S: Scalar>(m: &S::Measure) -> String {
    match S::MODE {
        Arithmetic::Rational => m.to_string(),
        Arithmetic::Double => fmt_sig(m.to_f64()),
    }
}

fn names<S: Scalar>(scene: &Scene<S>, cells: &[CellId]) -> Value {
    json!(cells.iter().map(|&c| scene.complex.cells[c].name.clone()).collect::<Vec<_>>())
}

fn cell_ids<S: Scalar>(scene: &Scene<S>, names: &[String]) -> Result<Vec<CellId>> {
    names
        .iter()
        .map(|n| scene.complex.cell_id(n).ok_or_else(|| Error::UnknownCell(n.clone())))
        .collect()
}

fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    S::parse_text(text).ok_or_else(|| Error::InvalidMode(format!("cannot read number {text}")))
}

fn breakdown_json<S: Scalar>(scene: &Scene<S>, p: &PerimeterBreakdown<S>) -> Value {
    let cells: Vec<Value> = p
        .cells
        .iter()
        .map(|c| json!({"id": scene.complex.cells[c.cell].name, "measure": fmt_scalar(&c.measure), "ac": fmt_measure::<S>(&c.ac)}))
        .collect();
    let facets: Vec<Value> = p
        .facets
        .iter()
        .map(|f| {
            json!({
                "id": f.facet,
                "measure": fmt_measure::<S>(&f.measure),
                "jump": fmt_measure::<S>(&f.jump),
                "boundary": fmt_measure::<S>(&f.boundary),
                "v_inf": fmt_scalar(&f.v_inf),
                "v_sup": fmt_scalar(&f.v_sup),
                "jump_essinf": f.jump_essinf.as_ref().map_or("inf".to_string(), fmt_scalar),
                "crossable": f.crossable,
            })
        })
        .collect();
    json!({
        "mode": p.mode.to_string(),
        "total": fmt_measure::<S>(&p.total),
        "total_approx": fmt_sig(p.total.to_f64()),
        "ac_part": fmt_measure::<S>(&p.ac_part),
        "jump_part": fmt_measure::<S>(&p.jump_part),
        "boundary_zero_part": fmt_measure::<S>(&p.boundary_zero_part),
        "cells": cells,
        "facets": facets,
    })
}

fn csv_ledger<S: Scalar>(scene: &Scene<S>, p: &PerimeterBreakdown<S>) -> String {
    let mut out = String::from("kind,id,measure,ac_term,jump_term,boundary_term,v_inf,v_sup,jump_essinf,crossable\n");
    for c in &p.cells {
        out.push_str(&format!(
            "cell,{},{},{},,,,,,\n",
            scene.complex.cells[c.cell].name,
            fmt_scalar(&c.measure),
            fmt_measure::<S>(&c.ac)
        ));
    }
    for f in &p.facets {
        out.push_str(&format!(
            "facet,{},{},,{},{},{},{},{},{}\n",
            f.facet,
            fmt_measure::<S>(&f.measure),
            fmt_measure::<S>(&f.jump),
            fmt_measure::<S>(&f.boundary),
            fmt_scalar(&f.v_inf),
            fmt_scalar(&f.v_sup),
            f.jump_essinf.as_ref().map_or("inf".to_string(), fmt_scalar),
            f.crossable
        ));
    }
    out
}

/// SVG and CSV side outputs; the ledger defaults to mode F of the slice
/// length.
fn side_outputs<S: Scalar>(scene: &Scene<S>, ctx: &Ctx, ledger: Option<&PerimeterBreakdown<S>>) -> Result<()> {
    if ctx.svg.is_none() && ctx.csv.is_none() {
        return Ok(());
    }
    let v = scene.slice_length()?;
    if let Some(path) = &ctx.svg {
        let b = scene.set().ok().map(|e| e.barycenter());
        write_file(path, &svg::render(&v, b.as_ref()))?;
    }
    if let Some(path) = &ctx.csv {
        let own;
        let p = match ledger {
            Some(p) => p,
            None => {
                own = perimeter_formula(FormulaArgs::F { v: &v }, None)?;
                &own
            }
        };
        write_file(path, &csv_ledger(scene, p))?;
    }
    Ok(())
}

fn dispatch<S: Scalar>(cmd: &Command, scene: &Scene<S>, ctx: &Ctx) -> Result<(Value, i32)> {
    match cmd {
        Command::Symmetrize { out, .. } => {
            let v = scene.slice_length()?;
            let f = steiner_symmetral(&v)?;
            let p = perimeter_formula(FormulaArgs::F { v: &v }, None)?;
            let sym = Scene::new(scene.complex.clone())
                .named("symmetral")
                .with_field("v", v.clone())
                .with_field("u1", f.u1().clone())
                .with_field("u2", f.u2().clone());
            side_outputs(scene, ctx, Some(&p))?;
            let mut result = json!({
                "volume": fmt_scalar(&f.volume()),
                "perimeter": fmt_measure::<S>(&p.total),
            });
            match out {
                Some(path) => {
                    write_file(path, &sym.to_json_string())?;
                    result["file"] = json!(path.display().to_string());
                }
                None => result["scene"] = sym.to_json(),
            }
            Ok((result, 0))
        }
        Command::Perimeter { mode, cells, .. } => {
            let mode: Mode = mode.parse()?;
            let v = scene.slice_length()?;
            let b = match (mode, scene.fields.get("b")) {
                (Mode::W, Some(b)) => Some(b.clone()),
                (Mode::W, None) => Some(scene.set()?.barycenter()),
                _ => None,
            };
            let set = match mode {
                Mode::F => steiner_symmetral(&v)?,
                Mode::W => build_w(&v, b.as_ref().expect("mode W"))?,
                Mode::U => scene.set()?,
            };
            let args = match mode {
                Mode::F => FormulaArgs::F { v: &v },
                Mode::W => FormulaArgs::W { v: &v, b: b.as_ref().expect("mode W") },
                Mode::U => FormulaArgs::U { u1: set.u1(), u2: set.u2() },
            };
            let region = if cells.is_empty() {
                None
            } else {
                let ids = cell_ids(scene, cells)?;
                let facets = scene
                    .complex
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.sides().iter().any(|s| s.cell().is_some_and(|c| ids.contains(&c))))
                    .map(|(i, _)| i);
                Some(Region::new(ids.iter().copied(), facets))
            };
            let p = perimeter_formula(args, region.as_ref())?;
            side_outputs(scene, ctx, Some(&p))?;
            let mut result = breakdown_json(scene, &p);
            if cells.is_empty() {
                let oracle = oracle_perimeter(&set);
                result["oracle"] = json!(fmt_measure::<S>(&oracle));
                result["agrees"] = json!(measures_agree::<S>(&p.total, &oracle, MEASURE_REL_TOL));
            }
            Ok((result, 0))
        }
        Command::Rigidity { class, expect, emit_witness, exhaustive, .. } => {
            let hint: ClassHint = class.parse()?;
            let v = scene.slice_length()?;
            let verdict = decide_rigidity(&v, hint)?;
            side_outputs(scene, ctx, None)?;
            let mut result = json!({
                "verdict": verdict.status.to_string(),
                "path": verdict.path.to_string(),
                "notes": verdict.notes,
            });
            if let Some(w) = &verdict.witness {
                result["eps"] = json!(w.eps.as_ref().map_or("inf".to_string(), fmt_scalar));
                result["t"] = json!(fmt_scalar(&w.offsets[1]));
                result["witness"] = json!({
                    "plus": names(scene, &w.plus),
                    "minus": names(scene, &w.minus),
                    "offsets": [fmt_scalar(&w.offsets[0]), fmt_scalar(&w.offsets[1])],
                    "perimeter": fmt_measure::<S>(&oracle_perimeter(&w.set)),
                });
                if let Some(path) = emit_witness {
                    write_file(path, &scene_of_set(&w.set).named("witness").to_json_string())?;
                }
            }
            if *exhaustive {
                result["exhaustive"] = match exhaustive_witness_search(&v)? {
                    Some((plus, t)) => json!({"plus": names(scene, &plus), "t": fmt_scalar(&t)}),
                    None => Value::Null,
                };
            }
            let code = match expect.as_deref() {
                None => 0,
                Some(want) => {
                    let want = match want {
                        "rigid" => Status::Rigid,
                        "non_rigid" | "non-rigid" => Status::NonRigid,
                        other => return Err(Error::InvalidMode(format!("unknown expectation {other}"))),
                    };
                    result["expected"] = json!(want.to_string());
                    if want == verdict.status {
                        0
                    } else {
                        2
                    }
                }
            };
            Ok((result, code))
        }
        Command::VerifyEquality { .. } => {
            let v = scene.slice_length()?;
            let e = scene.set()?;
            let report = check_equality_case(&e, &v)?;
            side_outputs(scene, ctx, None)?;
            let (oracle_e, oracle_f) = (oracle_perimeter(&e), oracle_perimeter(&steiner_symmetral(&v)?));
            let (t, gap) = min_translate_symdiff(&e, &v)?;
            let facet_ids: Vec<usize> = report.facet_violations.clone();
            let result = json!({
                "status": if report.holds { "pass" } else { "fail" },
                "holds": report.holds,
                "gradient_violations": names(scene, &report.gradient_violations),
                "facet_violations": facet_ids,
                "perimeter_e": fmt_measure::<S>(&report.perimeter_e),
                "perimeter_f": fmt_measure::<S>(&report.perimeter_f),
                "oracle_e": fmt_measure::<S>(&oracle_e),
                "oracle_f": fmt_measure::<S>(&oracle_f),
                "oracle_agrees": measures_agree::<S>(&oracle_e, &oracle_f, MEASURE_REL_TOL),
                "nearest_translate": {"t": fmt_scalar(&t), "symdiff": fmt_scalar(&gap)},
            });
            Ok((result, if report.holds { 0 } else { 2 }))
        }
        Command::Witness { plus, t, out, .. } => {
            let v = scene.slice_length()?;
            let plus = cell_ids(scene, plus)?;
            let eps = cut_eps(&v, &plus)?;
            let t: S = match t {
                Some(text) => parse_scalar(text)?,
                None => eps.as_ref().map_or(S::one(), |e| e.half()),
            };
            let w = construct_witness(&v, &plus, &t)?;
            side_outputs(scene, ctx, None)?;
            let equality = check_equality_case(&w, &v)?;
            let (_, gap) = min_translate_symdiff(&w, &v)?;
            let minus: Vec<CellId> = v.support().into_iter().filter(|c| !plus.contains(c)).collect();
            let mut result = json!({
                "plus": names(scene, &plus),
                "minus": names(scene, &minus),
                "t": fmt_scalar(&t),
                "eps": eps.as_ref().map_or("inf".to_string(), fmt_scalar),
                "perimeter_witness": fmt_measure::<S>(&oracle_perimeter(&w)),
                "perimeter_f": fmt_measure::<S>(&oracle_perimeter(&steiner_symmetral(&v)?)),
                "equality": equality.holds,
                "translate_symdiff": fmt_scalar(&gap),
            });
            let doc = scene_of_set(&w).named("witness");
            match out {
                Some(path) => {
                    write_file(path, &doc.to_json_string())?;
                    result["file"] = json!(path.display().to_string());
                }
                None => result["scene"] = doc.to_json(),
            }
            Ok((result, 0))
        }
        Command::CheckConnect { k, cells, .. } => {
            let v = scene.slice_length()?;
            let selection = parse_selection(k, &v)?;
            let cells = if cells.is_empty() { v.support() } else { cell_ids(scene, cells)? };
            let d = essentially_disconnects(&scene.complex, &selection, &cells)?;
            side_outputs(scene, ctx, None)?;
            let mut result = json!({
                "k": k,
                "cells": names(scene, &cells),
                "disconnects": d.disconnects,
                "indecomposable_f": is_indecomposable_f(&v)?,
            });
            if let Some((plus, minus)) = &d.witness {
                result["plus"] = names(scene, plus);
                result["minus"] = names(scene, minus);
            }
            Ok((result, 0))
        }
        Command::Gallery { .. } | Command::Selftest => unreachable!("handled before parsing a scene"),
    }
}

fn parse_selection<S: Scalar>(spec: &str, v: &PwAffineField<S>) -> Result<Selection<S>> {
    let labels = classify_facets(v);
    let mut out = Selection::new();
    for part in spec.split('+') {
        let piece = match part {
            "zero" => Selection::zero_set(&labels),
            "jump" => Selection::jump_set(&labels),
            p if p.starts_with("jump>") => Selection::jump_above(v, &parse_scalar(&p["jump>".len()..])?),
            other => return Err(Error::InvalidMode(format!("unknown selection {other}"))),
        };
        out = out.union(&piece);
    }
    Ok(out)
}
