//! `ajs`: batch front end for the alcove, character and category engines.
//!
//! Exit codes: 0 ok, 1 bad input, 2 verification mismatch, 3 window or
//! degree cap exhausted.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use ajs_core::ajs_category::hom::endomorphism_dimension;
use ajs_core::ajs_category::{build_qa, modular_multiplicity, recipe};
use ajs_core::alcove_geom::{Alcove, Geometry};
use ajs_core::order_topology::{leq_unbounded, special_minimum, AlcoveWindow, BaseRingMode};
use ajs_core::root_system::{gkm_check, Pt, TypeTag, Q};
use ajs_core::structure_algebra::{graded_dims, graded_rank_formula, open_orbit_sets, predicted_dims, MomentSpec};
use ajs_core::AjsError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ajs", version, about = "Alcove combinatorics and the AJS category K")]
struct Cli {
    #[command(flatten)]
    job: Job,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Job {
    /// Root system: A1, A2, B2 or G2.
    #[arg(long = "type", global = true, default_value = "A1")]
    ty: String,
    /// Characteristic: 0 or a prime passing the GKM condition.
    #[arg(long, global = true, default_value_t = 0)]
    p: u64,
    /// Base ring: generic, subgeneric:<root index> or full.
    #[arg(long, global = true, default_value = "full")]
    mode: String,
    /// Alcove window: `N..M` (Ã1 alcove indices) or a box radius around A_e such as `3/2`.
    #[arg(long, global = true)]
    window: Option<String>,
    /// Highest degree for structure-algebra solves, or the denominator cap of the
    /// endomorphism check.
    #[arg(long = "degree-cap", global = true)]
    degree_cap: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded rank of the structure algebra, checked against brute force.
    StructureRank {
        /// Weight `μ` in fundamental-weight coordinates, e.g. `0,0`.
        #[arg(long, default_value = "0")]
        mu: String,
        /// `all`, `open` (every open orbit set) or a comma list of orbit ids.
        #[arg(long, default_value = "all")]
        orbits: String,
    },
    /// The object Q(A) as JSON, with its rank table.
    Qobject {
        /// Alcove label (strip coordinates, e.g. `-1` or `0,-1,-1`).
        #[arg(long, conflicts_with = "mu")]
        alcove: Option<String>,
        /// Use A_μ^- for this weight instead of a label.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Table of rk Q(A_x)(A_w) for all alcove pairs in the window.
    Multiplicities,
}

enum Failure {
    Input(String),
    Mismatch(String),
    Exhausted(String),
}

impl From<AjsError> for Failure {
    fn from(e: AjsError) -> Failure {
        match e {
            AjsError::Window(_) | AjsError::DegreeCap(_) => Failure::Exhausted(e.to_string()),
            AjsError::Mismatch(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn parse_coords(s: &str, r: usize) -> Outcome<Vec<i64>> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::Input(format!("bad integer list `{s}`"))))
        .collect::<Outcome<_>>()?;
    if v.len() != r {
        return Err(Failure::Input(format!("`{s}` needs {r} coordinates")));
    }
    Ok(v)
}

fn parse_mode(geo: &Geometry, s: &str) -> Outcome<BaseRingMode> {
    match s {
        "generic" => Ok(BaseRingMode::generic()),
        "full" => Ok(BaseRingMode::full(geo)),
        _ => {
            let b = s
                .strip_prefix("subgeneric:")
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&b| b < geo.rs.num_positive_roots())
                .ok_or_else(|| Failure::Input(format!("bad mode `{s}`")))?;
            Ok(BaseRingMode::subgeneric(b))
        }
    }
}

fn parse_window(geo: &Geometry, s: &str) -> Outcome<AlcoveWindow> {
    if let Some((lo, hi)) = s.split_once("..") {
        if geo.rank() != 1 {
            return Err(Failure::Input("`N..M` windows are for A1; use a radius".into()));
        }
        let lo = lo.trim().parse().map_err(|_| Failure::Input(format!("bad window `{s}`")))?;
        let hi = hi.trim().parse().map_err(|_| Failure::Input(format!("bad window `{s}`")))?;
        return Ok(AlcoveWindow::a1(geo, lo, hi));
    }
    let r: Q = s.trim().parse().map_err(|_| Failure::Input(format!("bad window `{s}`")))?;
    Ok(AlcoveWindow::around(geo, &geo.fundamental(), r))
}

fn weight(geo: &Geometry, s: &str) -> Outcome<Pt> {
    Ok(geo.rs.weight(&parse_coords(s, geo.rank())?))
}

fn structure_rank(geo: &Geometry, job: &Job, mu: &str, orbits: &str) -> Outcome<(Value, String)> {
    let mode = parse_mode(geo, &job.mode)?;
    let mu_pt = weight(geo, mu)?;
    let max_degree = job.degree_cap.unwrap_or(6);
    let around: Vec<u16> = geo.alcoves_around(&mu_pt).iter().map(|a| a.elem.w).collect();
    let sets: Vec<BTreeSet<u16>> = match orbits {
        "all" => vec![around.iter().copied().collect()],
        "open" => open_orbit_sets(geo, &mu_pt, &mode)?,
        list => vec![list
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Failure::Input(format!("bad orbit list `{list}`"))))
            .collect::<Outcome<_>>()?],
    };
    let mut rows = Vec::new();
    let mut tsv = String::from("orbits\trank\tdegree\tbrute\tpredicted\n");
    let mut all_ok = true;
    for y in &sets {
        let rank = graded_rank_formula(geo, y, &mu_pt, &mode)?;
        let brute: Vec<i64> = graded_dims(geo, &MomentSpec::new(geo, y, &mode), max_degree).into_iter().map(|d| d as i64).collect();
        let predicted = predicted_dims(&rank, geo.rank(), max_degree);
        let ok = brute == predicted;
        all_ok &= ok;
        let ids: Vec<String> = y.iter().map(u16::to_string).collect();
        let ids = if ids.is_empty() { "-".to_string() } else { ids.join(",") };
        for (k, (b, p)) in brute.iter().zip(&predicted).enumerate() {
            tsv.push_str(&format!("{ids}\t{rank}\t{}\t{b}\t{p}\n", 2 * k));
        }
        rows.push(json!({
            "orbits": y,
            "rank": rank,
            "rank_display": rank.to_string(),
            "brute": brute,
            "predicted": predicted,
            "verified": ok,
        }));
    }
    let doc = json!({"type": job.ty, "mode": job.mode, "mu": mu, "max_degree": max_degree, "sets": rows});
    if !all_ok {
        return Err(Failure::Mismatch(format!("brute-force dimensions disagree with the formula\n{doc}")));
    }
    Ok((doc, tsv))
}

fn qobject(geo: &Geometry, job: &Job, alcove: Option<&str>, mu: Option<&str>) -> Outcome<(Value, String)> {
    let a = match (alcove, mu) {
        (Some(l), _) => geo.parse_label(l)?,
        (None, Some(m)) => special_minimum(geo, &weight(geo, m)?),
        (None, None) => return Err(Failure::Input("give --alcove or --mu".into())),
    };
    let window = job.window.as_deref().map(|w| parse_window(geo, w)).transpose()?;
    let rec = recipe(geo, &a)?;
    let q = build_qa(geo, &a, window.as_ref())?;
    let cap = job.degree_cap.unwrap_or(0);
    let end = endomorphism_dimension(geo, &q, cap);
    let full = BaseRingMode::full(geo);
    let upper = q.support().all(|b| leq_unbounded(geo, &a, b, &full));
    let mut tsv = String::from("alcove\trank\n");
    for (b, r) in q.ranks() {
        tsv.push_str(&format!("{}\t{r}\n", geo.label(b)));
    }
    let doc = json!({
        "type": job.ty,
        "alcove": geo.label(&a),
        "start": geo.label(&rec.start),
        "word": rec.word,
        "rank_at_alcove": q.rank(&a),
        "support_above_alcove": upper,
        "end_dimension": end,
        "degree_cap": cap,
        "object": q.to_json(geo),
    });
    if q.rank(&a) != 1 || !upper || end != 1 {
        return Err(Failure::Mismatch(format!("Q(A) axioms fail\n{doc}")));
    }
    Ok((doc, tsv))
}

fn multiplicities(geo: &Geometry, job: &Job) -> Outcome<(Value, String)> {
    if job.p == 0 {
        return Err(Failure::Input("multiplicities need --p".into()));
    }
    let spec = job.window.as_deref().ok_or_else(|| Failure::Input("multiplicities need --window".into()))?;
    let window = parse_window(geo, spec)?;
    let alcoves: Vec<Alcove> = window.alcoves().to_vec();
    let mut rows = Vec::new();
    let mut tsv = String::from("w\tx\tA\tB\tmultiplicity\n");
    for x in &alcoves {
        let a = geo.dot_p_alcove(&x.elem, job.p)?;
        for w in &alcoves {
            let b = geo.dot_p_alcove(&w.elem, job.p)?;
            let m = modular_multiplicity(geo, &w.elem, &x.elem, job.p)?;
            let (lw, lx, la, lb) = (geo.label(w), geo.label(x), geo.label(&a), geo.label(&b));
            tsv.push_str(&format!("{lw}\t{lx}\t{la}\t{lb}\t{m}\n"));
            rows.push(json!({"w": lw, "x": lx, "A": la, "B": lb, "multiplicity": m}));
        }
    }
    Ok((json!({"type": job.ty, "p": job.p, "entries": rows}), tsv))
}

fn run(cli: &Cli) -> Outcome<String> {
    let job = &cli.job;
    let tag: TypeTag = job.ty.parse()?;
    let geo = Geometry::of_type(tag);
    if job.p != 0 && !gkm_check(&geo.rs, job.p) {
        return Err(Failure::Input(format!("p = {} violates the GKM condition for {tag}", job.p)));
    }
    let (doc, tsv) = match &cli.cmd {
        Cmd::StructureRank { mu, orbits } => structure_rank(&geo, job, mu, orbits)?,
        Cmd::Qobject { alcove, mu } => qobject(&geo, job, alcove.as_deref(), mu.as_deref())?,
        Cmd::Multiplicities => multiplicities(&geo, job)?,
    };
    Ok(match job.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Format::Tsv => tsv,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let written = match &cli.job.out {
                Some(path) => fs::write(path, &text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("ajs: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("ajs: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("ajs: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Exhausted(m)) => {
            eprintln!("ajs: {m}");
            ExitCode::from(3)
        }
    }
}
