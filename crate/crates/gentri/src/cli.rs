//! Command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::enumeration::{
    basis_at_vertex, basis_table, basis_triangulation, dimension_generalized,
    dimension_triangulation,
};
use crate::error::Error;
use crate::quiver::{export_dot, load_gtq, quiver_isomorphic, render_gtq, validate, GenTriQuiver};
use crate::relations::{relations_generalized, relations_lambda_dblprime, relations_triangulation};
use crate::star::{orbit_data, render_cycle, star_quiver};
use crate::surface::{parse_surface, surface_to_quiver};
use crate::transforms::{
    delta_construction, detect_exceptional, mutate_stage1, mutate_stage2, roundtrip_check,
};
use crate::weights::{parse_weights, validate_weights, virtual_arrows, WeightData};

#[derive(Parser, Debug)]
#[command(
    name = "gentri",
    version,
    about = "Generalized triangulation quivers and their algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct WeightArgs {
    /// Weight file; omitted entries get symbolic defaults.
    #[arg(short = 'w', long = "weights")]
    pub weights: Option<PathBuf>,
    /// Give a symbol a value, e.g. `--set m=2`.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the structural invariants of a glued quiver.
    Validate { quiver: PathBuf },
    /// Print Q*, the f-orbits, the g-orbits and the border.
    Orbits { quiver: PathBuf },
    /// Print and check weight, parameter and border functions.
    Weights {
        quiver: PathBuf,
        #[command(flatten)]
        w: WeightArgs,
    },
    /// Print the defining relations.
    Relations {
        quiver: PathBuf,
        #[command(flatten)]
        w: WeightArgs,
        /// Relations of the weighted triangulation algebra.
        #[arg(long, conflicts_with = "dblprime")]
        triangulation: bool,
        /// Relations of the stage-1 algebra after reduction.
        #[arg(long)]
        dblprime: bool,
    },
    /// Enumerate bases of the indecomposable projectives.
    Basis {
        quiver: PathBuf,
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long)]
        vertex: Option<String>,
        /// Use the triangulation algebra basis.
        #[arg(long)]
        triangulation: bool,
    },
    /// Print the dimension of the algebra.
    Dim {
        quiver: PathBuf,
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long)]
        triangulation: bool,
    },
    /// Build the associated triangulation quiver Q^Delta.
    Delta {
        quiver: PathBuf,
        #[command(flatten)]
        w: WeightArgs,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Run the mutation stages.
    Mutate {
        quiver: PathBuf,
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        stage: u8,
    },
    /// Delta, stage 1 and stage 2, then compare with the input.
    Roundtrip {
        quiver: PathBuf,
        #[command(flatten)]
        w: WeightArgs,
    },
    /// Build the quiver of a marked triangulated surface.
    Surface {
        surface: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Decide whether two quivers are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Export Graphviz DOT.
    Dot {
        quiver: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Run the bundled example checks.
    Verify {
        #[arg(default_value = "data")]
        dir: PathBuf,
    },
}

/// Exit code and rendered report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn status(pass: bool, stdout: String) -> Self {
        Outcome {
            code: if pass { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownKind(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

pub type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: crate::error::Result<T>) -> Res<T> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Check(m) => Failure::Check(format!("{}: {m}", path.display())),
    })
}

fn quiver(path: &Path) -> Res<GenTriQuiver> {
    with_path(path, load_gtq(&read(path)?))
}

fn weights(q: &GenTriQuiver, args: &WeightArgs) -> Res<WeightData> {
    let sq = star_quiver(q)?;
    let od = orbit_data(&sq);
    let mut w = match &args.weights {
        Some(p) => with_path(p, parse_weights(&read(p)?, q, &od))?,
        None => WeightData::symbolic(q, &od),
    };
    if !args.set.is_empty() {
        let mut values = BTreeMap::new();
        for s in &args.set {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("expected NAME=VALUE, got `{s}`")))?;
            let v: u64 = v
                .parse()
                .map_err(|_| Failure::Usage(format!("invalid value in `{s}`")))?;
            values.insert(k.to_string(), v);
        }
        w = w.instantiate(&values);
    }
    Ok(w)
}

pub fn run(cmd: &Command) -> Outcome {
    match dispatch(cmd) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Check(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn dispatch(cmd: &Command) -> Res<Outcome> {
    match cmd {
        Command::Validate { quiver: p } => {
            let q = quiver(p)?;
            let diags = validate(&q);
            let mut out = String::new();
            for d in &diags {
                writeln!(out, "{d}").ok();
            }
            if diags.is_empty() {
                writeln!(
                    out,
                    "valid: {} vertices, {} arrows, {} blocks, {} marked triangles",
                    q.vertices().len(),
                    q.arrows().len(),
                    q.blocks().len(),
                    q.marking().len()
                )
                .ok();
            }
            Ok(Outcome::status(diags.is_empty(), out))
        }
        Command::Orbits { quiver: p } => {
            let q = quiver(p)?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let mut out = String::new();
            let removed: Vec<String> = q.removed_vertices().into_iter().collect();
            writeln!(out, "Q* removes vertices: {}", removed.join(" ")).ok();
            writeln!(out, "f-orbits:").ok();
            for o in &od.f_orbits {
                writeln!(out, "  {}", render_cycle(&q, o)).ok();
            }
            writeln!(out, "g-orbits:").ok();
            for o in &od.g_orbits {
                writeln!(out, "  n={} {}", o.len(), render_cycle(&q, o)).ok();
            }
            let border: Vec<&str> = od.border.iter().map(String::as_str).collect();
            writeln!(out, "border: {{{}}}", border.join(", ")).ok();
            Ok(Outcome::ok(out))
        }
        Command::Weights { quiver: p, w } => {
            let q = quiver(p)?;
            let wd = weights(&q, w)?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let diags = validate_weights(&sq, &od, &wd);
            let mut out = wd.render();
            let mut hard = false;
            for d in &diags {
                hard |= !d.invariant.starts_with("cannot verify");
                writeln!(out, "{d}").ok();
            }
            if let Ok(v) = virtual_arrows(&sq, &od, &wd) {
                let ids: Vec<&str> = v.iter().map(|&a| q.arrows()[a].id.as_str()).collect();
                writeln!(out, "virtual: {}", ids.join(" ")).ok();
            }
            Ok(Outcome::status(!hard, out))
        }
        Command::Relations {
            quiver: p,
            w,
            triangulation,
            dblprime,
        } => {
            let q = quiver(p)?;
            let wd = weights(&q, w)?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let rs = if *dblprime {
                let d = delta_construction(&sq, &od, &wd)?;
                relations_lambda_dblprime(&mutate_stage1(&d)?)?
            } else if *triangulation {
                relations_triangulation(&sq, &od, &wd)?
            } else {
                relations_generalized(&sq, &od, &wd)?
            };
            Ok(Outcome::ok(rs.render()))
        }
        Command::Basis {
            quiver: p,
            w,
            vertex,
            triangulation,
        } => {
            let q = quiver(p)?;
            let wd = weights(&q, w)?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let mut out = String::new();
            if let Some(v) = vertex {
                let b = if *triangulation {
                    basis_triangulation(&sq, &od, &wd, v)?
                } else {
                    basis_at_vertex(&sq, &od, &wd, v)?
                };
                writeln!(
                    out,
                    "vertex {} ({}): {} elements",
                    b.vertex,
                    b.case_tag,
                    b.len()
                )
                .ok();
                for e in &b.elements {
                    writeln!(out, "  {e}").ok();
                }
                return Ok(Outcome::ok(out));
            }
            if *triangulation {
                let mut total = 0;
                for v in q.vertices() {
                    let b = basis_triangulation(&sq, &od, &wd, &v.id)?;
                    writeln!(out, "{} {} {}", v.id, b.case_tag, b.len()).ok();
                    total += b.len();
                }
                let dim = dimension_triangulation(&sq, &od, &wd)?;
                writeln!(out, "total {total}; dimension formula {dim}").ok();
                let pass = dim.value() == Some(total as i64);
                return Ok(Outcome::status(pass, out));
            }
            let rows = basis_table(&sq, &od, &wd)?;
            let mut pass = true;
            let mut total = 0;
            for r in &rows {
                let same = r.closed.value() == Some(r.enumerated as i64);
                pass &= same;
                total += r.enumerated;
                writeln!(
                    out,
                    "{} {} enumerated={} closed={}{}",
                    r.vertex,
                    r.case_tag,
                    r.enumerated,
                    r.closed,
                    if same { "" } else { " MISMATCH" }
                )
                .ok();
            }
            let dim = dimension_generalized(&sq, &od, &wd)?;
            pass &= dim.value() == Some(total as i64);
            writeln!(out, "total {total}; dimension formula {dim}").ok();
            Ok(Outcome::status(pass, out))
        }
        Command::Dim {
            quiver: p,
            w,
            triangulation,
        } => {
            let q = quiver(p)?;
            let wd = weights(&q, w)?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let dim = if *triangulation {
                dimension_triangulation(&sq, &od, &wd)?
            } else {
                dimension_generalized(&sq, &od, &wd)?
            };
            Ok(Outcome::ok(format!("{dim}\n")))
        }
        Command::Delta {
            quiver: p,
            w,
            output,
        } => {
            let q = quiver(p)?;
            let wd = weights(&q, w)?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let d = delta_construction(&sq, &od, &wd)?;
            let text = render_gtq(&d.quiver);
            let mut out = String::new();
            match output {
                Some(o) => write_file(o, &text)?,
                None => out.push_str(&text),
            }
            let dsq = star_quiver(&d.quiver)?;
            let dod = orbit_data(&dsq);
            writeln!(out, "g-orbits:").ok();
            for o in &dod.g_orbits {
                writeln!(out, "  n={} {}", o.len(), render_cycle(&d.quiver, o)).ok();
            }
            out.push_str(&d.weights.render());
            for line in detect_exceptional(&d) {
                writeln!(out, "warning: {line}").ok();
            }
            Ok(Outcome::ok(out))
        }
        Command::Mutate {
            quiver: p,
            w,
            stage,
        } => {
            let q = quiver(p)?;
            let wd = weights(&q, w)?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let d = delta_construction(&sq, &od, &wd)?;
            let m1 = mutate_stage1(&d)?;
            let mut out = String::new();
            writeln!(out, "virtual sequence: {}", m1.virtual_sequence.join(" ")).ok();
            let m = if *stage == 1 { m1 } else { mutate_stage2(&m1)? };
            out.push_str(&render_gtq(&m.quiver));
            out.push_str(&m.weights.render());
            for (arrow, expr) in &m.hat {
                writeln!(out, "hat {arrow} = {expr}").ok();
            }
            Ok(Outcome::ok(out))
        }
        Command::Roundtrip { quiver: p, w } => {
            let q = quiver(p)?;
            let wd = weights(&q, w)?;
            let report = roundtrip_check(&q, &wd);
            Ok(Outcome::status(report.passed, report.render()))
        }
        Command::Surface { surface, output } => {
            let s = with_path(surface, parse_surface(&read(surface)?))?;
            let sqv = surface_to_quiver(&s)?;
            let mut text = String::new();
            for r in &sqv.applied {
                writeln!(text, "# {r}").ok();
            }
            text.push_str(&render_gtq(&sqv.quiver));
            match output {
                Some(o) => {
                    write_file(o, &text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Iso { first, second } => {
            let (a, b) = (quiver(first)?, quiver(second)?);
            match quiver_isomorphic(&a, &b) {
                Some(iso) => {
                    let mut out = "isomorphic\n".to_string();
                    for (x, y) in &iso.vertices {
                        writeln!(out, "  vertex {x} -> {y}").ok();
                    }
                    for (x, y) in &iso.arrows {
                        writeln!(out, "  arrow {x} -> {y}").ok();
                    }
                    Ok(Outcome::ok(out))
                }
                None => Ok(Outcome::status(false, "not isomorphic\n".into())),
            }
        }
        Command::Dot { quiver: p, output } => {
            let dot = export_dot(&quiver(p)?);
            match output {
                Some(o) => {
                    write_file(o, &dot)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(dot)),
            }
        }
        Command::Verify { dir } => {
            let checks = verify_examples(dir)?;
            let mut out = String::new();
            let mut pass = true;
            for c in &checks {
                pass &= c.passed;
                writeln!(
                    out,
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
                .ok();
            }
            Ok(Outcome::status(pass, out))
        }
    }
}

/// Outcome of one bundled example check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Res<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(Failure::Usage(m) | Failure::Check(m)) => Check {
            name,
            passed: false,
            detail: m,
        },
    }
}

fn weighted_file(dir: &Path, stem: &str) -> Res<(GenTriQuiver, WeightData)> {
    let q = quiver(&dir.join(format!("{stem}.gtq")))?;
    let wpath = dir.join(format!("{stem}.wts"));
    let args = WeightArgs {
        weights: wpath.exists().then_some(wpath),
        set: Vec::new(),
    };
    let w = weights(&q, &args)?;
    Ok((q, w))
}

fn orbit_lengths(q: &GenTriQuiver) -> Res<Vec<usize>> {
    let sq = star_quiver(q)?;
    let mut l: Vec<usize> = orbit_data(&sq).g_orbits.iter().map(Vec::len).collect();
    l.sort_unstable_by(|a, b| b.cmp(a));
    Ok(l)
}

/// Regression checks over the example files in `dir`.
pub fn verify_examples(dir: &Path) -> Res<Vec<Check>> {
    let empty = fs::read_dir(dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
        .next()
        .is_none();
    if empty {
        return Err(Failure::Usage(format!(
            "{}: no example files",
            dir.display()
        )));
    }
    let mut checks = vec![
        check("thirteen_blocks orbits", || {
            let l = orbit_lengths(&quiver(&dir.join("thirteen_blocks.gtq"))?)?;
            Ok((l == [17, 15, 2, 2, 1], format!("g-orbit lengths {l:?}")))
        }),
        check("seven_blocks orbits", || {
            let q = quiver(&dir.join("seven_blocks.gtq"))?;
            let l = orbit_lengths(&q)?;
            let border = orbit_data(&star_quiver(&q)?).border.len();
            Ok((
                l == [11, 7, 1] && border == 1,
                format!("g-orbit lengths {l:?}, {border} border vertex"),
            ))
        }),
        check("type3_type5 delta dimension", || {
            let (q, w) = weighted_file(dir, "type3_type5")?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let d = delta_construction(&sq, &od, &w)?;
            let dsq = star_quiver(&d.quiver)?;
            let dim = dimension_triangulation(&dsq, &orbit_data(&dsq), &d.weights)?.to_string();
            Ok((dim == "36*m + n + 13", dim))
        }),
        check("type3_type5 weights", || {
            let (q, w) = weighted_file(dir, "type3_type5")?;
            let sq = star_quiver(&q)?;
            let od = orbit_data(&sq);
            let hard: Vec<String> = validate_weights(&sq, &od, &w)
                .into_iter()
                .filter(|d| !d.invariant.starts_with("cannot verify"))
                .map(|d| d.to_string())
                .collect();
            Ok((
                hard.is_empty(),
                if hard.is_empty() {
                    "ok".into()
                } else {
                    hard.join("; ")
                },
            ))
        }),
    ];
    for stem in ["type3_type5", "seven_blocks", "two_iv"] {
        let name = match stem {
            "type3_type5" => "type3_type5 roundtrip",
            "seven_blocks" => "seven_blocks roundtrip",
            _ => "two_iv roundtrip",
        };
        checks.push(check(name, || {
            let (q, w) = weighted_file(dir, stem)?;
            let mut values = BTreeMap::new();
            for s in w.symbols() {
                values.insert(s, 2);
            }
            let r = roundtrip_check(&q, &w.instantiate(&values));
            let last = r.lines.last().cloned().unwrap_or_default();
            Ok((r.passed, last))
        }));
    }
    checks.push(check("two_marked_folds surface", || {
        let p = dir.join("two_marked_folds.surf");
        let s = with_path(&p, parse_surface(&read(&p)?))?;
        let q = surface_to_quiver(&s)?.quiver;
        let iso = quiver_isomorphic(&q, &quiver(&dir.join("type3_type5.gtq"))?).is_some();
        Ok((iso, format!("isomorphic to type3_type5: {iso}")))
    }));
    checks.push(check("tetrahedral surface", || {
        let load = |n: &str| -> Res<GenTriQuiver> {
            let p = dir.join(n);
            Ok(surface_to_quiver(&with_path(&p, parse_surface(&read(&p)?))?)?.quiver)
        };
        let (a, b) = (load("tetra.surf")?, load("tetra_marked.surf")?);
        let iso = quiver_isomorphic(&a, &b).is_some();
        Ok((
            iso && a.vertices().len() == 6,
            format!("{} vertices, isomorphic: {iso}", a.vertices().len()),
        ))
    }));
    checks.push(check("disc surface", || {
        let p = dir.join("disc.surf");
        let q = surface_to_quiver(&with_path(&p, parse_surface(&read(&p)?))?)?.quiver;
        let loops = q.arrows().iter().filter(|a| a.source == a.target).count();
        Ok((
            loops == 3 && q.arrows().len() == 6,
            format!("{loops} loops, {} arrows", q.arrows().len()),
        ))
    }));
    Ok(checks)
}
