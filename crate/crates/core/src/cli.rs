//! The `quandle` command-line tool.
//!
//! Exit status: 0 on success, 1 when well-formed input fails an algebraic
//! requirement (not a quandle, not a subquandle, bad evaluation point), 2 on
//! unreadable or malformed input and usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::constructors::{self, Group};
use crate::enumeration::{check_latin_conjecture, enumerate};
use crate::error::{Error, Result};
use crate::homomorphism::all_homs;
use crate::iso::is_isomorphic;
use crate::link::{colorings, phi_qp, LinkDiagram};
use crate::polynomial::{col_poly, conventionally_zero, qp, row_poly, sub_qp};
use crate::table::{format_subset, QuandleTable};

#[derive(Debug, Parser)]
#[command(name = "quandle", version, about = "Finite quandle polynomial toolkit")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for enumeration (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report which of the shelf/rack/quandle/Latin/connected conditions hold.
    Verify { quandle: PathBuf },
    /// Quandle polynomial, its row/column specializations, or its value.
    Qp {
        quandle: PathBuf,
        #[arg(long, num_args = 2, value_names = ["S", "T"], allow_negative_numbers = true)]
        spec: Option<Vec<i64>>,
        #[arg(long)]
        row: bool,
        #[arg(long)]
        col: bool,
    },
    /// Subquandle polynomial of a closed subset (1-based, comma separated).
    Subqp {
        quandle: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Orbit decomposition.
    Orbits { quandle: PathBuf },
    /// Isomorphism test; prints a witness map when one exists.
    Iso { first: PathBuf, second: PathBuf },
    /// All quandles of order n up to isomorphism, with their polynomials.
    Enumerate {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for non-Latin quandles with qp = n·st up to the given order.
    Conjecture { nmax: usize },
    /// All homomorphisms between two quandles.
    Hom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        kqp: bool,
    },
    /// Build a standard family: trivial N | alexander N A | dihedral N |
    /// conjugation GROUP [K] | homogeneous GROUP IMAGES | symplectic P [DIM] |
    /// constant-rack N K.
    Construct {
        family: String,
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Colorings of a link diagram by a quandle.
    Color {
        link: PathBuf,
        quandle: PathBuf,
        #[arg(long)]
        list: bool,
    },
    /// The multiset of image subquandle polynomials, or its specialization.
    Phi {
        link: PathBuf,
        quandle: PathBuf,
        #[arg(long, num_args = 2, value_names = ["S0", "T0"], allow_negative_numbers = true)]
        spec: Option<Vec<i64>>,
    },
}

struct Report {
    text: String,
    json: Value,
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if let Some(threads) = cli.threads {
        // a second configuration attempt in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match execute(cli.command) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(out, "{}", report.json)
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse_error() || matches!(e, Error::Io(_)) {
                2
            } else {
                1
            }
        }
    }
}

fn read_quandle(path: &Path) -> Result<QuandleTable> {
    fs::read_to_string(path)?.parse()
}

fn read_link(path: &Path) -> Result<LinkDiagram> {
    LinkDiagram::parse(&fs::read_to_string(path)?)
}

fn one_based(elems: &[usize]) -> Vec<usize> {
    elems.iter().map(|x| x + 1).collect()
}

fn spec_pair(spec: &[i64]) -> (i64, i64) {
    (spec[0], spec[1])
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Verify { quandle } => verify(&read_quandle(&quandle)?),
        Command::Qp {
            quandle,
            spec,
            row,
            col,
        } => qp_report(
            &read_quandle(&quandle)?,
            spec.as_deref().map(spec_pair),
            row,
            col,
        ),
        Command::Subqp { quandle, subset } => subqp_report(&read_quandle(&quandle)?, &subset),
        Command::Orbits { quandle } => {
            let q = read_quandle(&quandle)?;
            q.require_rack()?;
            let orbits = q.orbits();
            let text: Vec<String> = orbits.iter().map(|o| format_subset(o)).collect();
            Ok(Report {
                text: format!("{}\n", text.join(" ")),
                json: json!({ "orbits": orbits.iter().map(|o| one_based(o)).collect::<Vec<_>>() }),
            })
        }
        Command::Iso { first, second } => {
            let (a, b) = (read_quandle(&first)?, read_quandle(&second)?);
            let map = is_isomorphic(&a, &b);
            let text = match &map {
                Some(f) => {
                    let pairs: Vec<String> = f
                        .iter()
                        .enumerate()
                        .map(|(x, y)| format!("{}->{}", x + 1, y + 1))
                        .collect();
                    format!("isomorphic: {}\n", pairs.join(" "))
                }
                None => "not isomorphic\n".to_string(),
            };
            Ok(Report {
                text,
                json: json!({ "isomorphic": map.is_some(), "map": map.map(|f| one_based(&f)) }),
            })
        }
        Command::Enumerate { n, out } => enumerate_report(n, out.as_deref()),
        Command::Conjecture { nmax } => conjecture_report(nmax),
        Command::Hom {
            source,
            target,
            kqp,
        } => hom_report(&read_quandle(&source)?, &read_quandle(&target)?, kqp),
        Command::Construct { family, params } => construct_report(&family, &params),
        Command::Color {
            link,
            quandle,
            list,
        } => {
            let (d, q) = (read_link(&link)?, read_quandle(&quandle)?);
            q.require_quandle()?;
            let set = colorings(&d, &q);
            let mut text = format!("{}\n", set.len());
            let mut json = json!({ "count": set.len() });
            if list {
                for c in set.colorings() {
                    text += &format!("{}\n", join(&one_based(c)));
                }
                json["colorings"] = json!(set
                    .colorings()
                    .iter()
                    .map(|c| one_based(c))
                    .collect::<Vec<_>>());
            }
            Ok(Report { text, json })
        }
        Command::Phi {
            link,
            quandle,
            spec,
        } => {
            let (d, q) = (read_link(&link)?, read_quandle(&quandle)?);
            q.require_quandle()?;
            let phi = phi_qp(&d, &q);
            match spec.as_deref().map(spec_pair) {
                None => Ok(Report {
                    text: format!("{phi}\n"),
                    json: json!({ "count": phi.total(), "phi": phi.to_json() }),
                }),
                Some((s0, t0)) => {
                    let z = phi.specialize(s0, t0)?;
                    Ok(Report {
                        text: format!("{z}\n"),
                        json: json!({ "phi": z.to_json(), "s0": s0, "t0": t0 }),
                    })
                }
            }
        }
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn verify(q: &QuandleTable) -> Result<Report> {
    let class = q.classify();
    Ok(Report {
        text: format!("{}\n", class.describe()),
        json: json!({
            "class": class.describe(),
            "connected": class.is_connected,
            "latin": class.is_latin,
            "order": q.order(),
            "quandle": class.is_quandle,
            "rack": class.is_rack,
            "shelf": class.is_shelf,
        }),
    })
}

fn qp_report(q: &QuandleTable, spec: Option<(i64, i64)>, row: bool, col: bool) -> Result<Report> {
    q.require_rack()?;
    let poly = qp(q);
    let zero_reading = conventionally_zero(q);
    let mut json = json!({
        "conventionally_zero": zero_reading,
        "qp": poly.to_json(),
        "text": poly.to_string(),
    });
    let mut lines = Vec::new();
    if row {
        let p = row_poly(q);
        lines.push(p.to_string());
        json["row"] = p.to_json();
    }
    if col {
        let p = col_poly(q);
        lines.push(p.to_string());
        json["col"] = p.to_json();
    }
    if let Some((s0, t0)) = spec {
        let v = poly.evaluate(s0, t0)?;
        lines.push(v.to_string());
        json["value"] = crate::polynomial::bigint_json(&v);
    }
    if lines.is_empty() {
        lines.push(poly.to_string());
    }
    if zero_reading {
        lines.push("conventional value 0 (every row and column count is 0)".to_string());
    }
    Ok(Report {
        text: lines.join("\n") + "\n",
        json,
    })
}

fn subqp_report(q: &QuandleTable, subset: &[usize]) -> Result<Report> {
    q.require_rack()?;
    let elems = subset
        .iter()
        .map(|&x| {
            if x == 0 || x > q.order() {
                Err(Error::InvalidParameter(format!(
                    "element {x} outside 1..={}",
                    q.order()
                )))
            } else {
                Ok(x - 1)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let p = sub_qp(q, &elems)?;
    Ok(Report {
        text: format!("{p}\n"),
        json: json!({ "qp": p.to_json(), "text": p.to_string() }),
    })
}

fn enumerate_report(n: usize, out: Option<&Path>) -> Result<Report> {
    let catalog = enumerate(n)?;
    if let Some(dir) = out {
        catalog.save(dir)?;
    }
    let mut text = String::new();
    for (k, e) in catalog.entries.iter().enumerate() {
        let mut flags = Vec::new();
        if e.class.is_latin {
            flags.push("latin");
        }
        if e.class.is_connected {
            flags.push("connected");
        }
        text += &format!("# {}  qp = {}", k + 1, e.qp);
        if !flags.is_empty() {
            text += &format!("  [{}]", flags.join(", "));
        }
        text.push('\n');
        for row in e.table.to_one_based() {
            text += &format!("{}\n", join(&row));
        }
    }
    let collisions = catalog.qp_collisions();
    let distinct = catalog.len() - collisions.iter().map(|(_, c)| c.len() - 1).sum::<usize>();
    text += &format!(
        "{} isomorphism classes of order {n}, {distinct} distinct polynomials\n",
        catalog.len()
    );
    for (p, classes) in &collisions {
        text += &format!("shared: {p} by classes {}\n", join(&one_based(classes)));
    }
    let json = json!({
        "classes": catalog.index_json(),
        "collisions": collisions
            .iter()
            .map(|(p, c)| json!({ "classes": one_based(c), "qp": p.to_string() }))
            .collect::<Vec<_>>(),
        "count": catalog.len(),
        "order": n,
    });
    Ok(Report { text, json })
}

fn conjecture_report(nmax: usize) -> Result<Report> {
    let report = check_latin_conjecture(nmax)?;
    let mut text = String::new();
    for r in &report.rows {
        text += &format!(
            "order {}: {} classes, {} with qp = {}st, {} latin, {} non-latin with qp = {}st\n",
            r.order,
            r.classes,
            r.with_nst,
            r.order,
            r.latin,
            r.counterexamples.len(),
            r.order
        );
        for q in &r.counterexamples {
            text += &q.to_string();
        }
    }
    let total = report.counterexample_count();
    if total == 0 {
        text += &format!("no counterexamples through order {nmax}\n");
    } else {
        text += &format!("{total} counterexample(s) found\n");
    }
    Ok(Report {
        text,
        json: json!({ "counterexamples": total, "nmax": nmax, "orders": report.to_json() }),
    })
}

fn hom_report(src: &QuandleTable, dst: &QuandleTable, with_kqp: bool) -> Result<Report> {
    src.require_quandle()?;
    dst.require_quandle()?;
    let homs = all_homs(src, dst);
    let mut text = String::new();
    let mut items = Vec::with_capacity(homs.len());
    for f in &homs {
        let kind = f.kind();
        let mut item = json!({
            "injective": kind.injective,
            "map": one_based(f.map()),
            "surjective": kind.surjective,
        });
        text += &join(&one_based(f.map()));
        if with_kqp {
            let k = f.kqp();
            text += &format!("\t{k}");
            item["kqp"] = Value::String(k.to_string());
        }
        text.push('\n');
        items.push(item);
    }
    Ok(Report {
        text,
        json: json!({ "count": homs.len(), "homs": items }),
    })
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, name: &str) -> Result<T> {
    let raw = params
        .get(i)
        .ok_or_else(|| Error::Malformed(format!("missing parameter {name}")))?;
    raw.parse()
        .map_err(|_| Error::Malformed(format!("bad value {raw:?} for {name}")))
}

fn optional_param<T: std::str::FromStr>(
    params: &[String],
    i: usize,
    name: &str,
    default: T,
) -> Result<T> {
    if params.len() > i {
        param(params, i, name)
    } else {
        Ok(default)
    }
}

fn expect_params(params: &[String], min: usize, max: usize) -> Result<()> {
    if params.len() < min || params.len() > max {
        return Err(Error::Malformed(format!(
            "expected {min}..={max} parameters, got {}",
            params.len()
        )));
    }
    Ok(())
}

fn construct_report(family: &str, params: &[String]) -> Result<Report> {
    let table = match family {
        "trivial" => {
            expect_params(params, 1, 1)?;
            constructors::trivial(param(params, 0, "N")?)?
        }
        "alexander" => {
            expect_params(params, 2, 2)?;
            constructors::alexander_cyclic(param(params, 0, "N")?, param(params, 1, "A")?)?
        }
        "dihedral" => {
            expect_params(params, 1, 1)?;
            constructors::dihedral(param(params, 0, "N")?)?
        }
        "conjugation" => {
            expect_params(params, 1, 2)?;
            let group = Group::from_table(read_quandle(Path::new(&params[0]))?)?;
            constructors::conjugation(&group, optional_param(params, 1, "K", 1)?)?
        }
        "homogeneous" => {
            expect_params(params, 2, 2)?;
            let group = Group::from_table(read_quandle(Path::new(&params[0]))?)?;
            let images = params[1]
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Malformed(format!("bad image {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            constructors::homogeneous(&group, &images)?
        }
        "symplectic" => {
            expect_params(params, 1, 2)?;
            constructors::symplectic(param(params, 0, "P")?, optional_param(params, 1, "DIM", 4)?)?
        }
        "constant-rack" => {
            expect_params(params, 2, 2)?;
            constructors::constant_rack(param(params, 0, "N")?, param(params, 1, "K")?)?
        }
        other => return Err(Error::Malformed(format!("unknown family {other:?}"))),
    };
    Ok(Report {
        text: table.to_string(),
        json: json!({ "matrix": table.to_one_based(), "order": table.order() }),
    })
}
