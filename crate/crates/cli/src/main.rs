//! `ivi`: verify, build, integrate and search exact Hodge-theoretic data
//! stored as JSON files. Exit status 0 when every check passes, 1 when a
//! verification fails, 2 on malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use ivi_core::asymptotic::{self, check_integrability, first_nonintegrable_pair, integrate_ivi};
use ivi_core::constructions::{self as build, CatalogRow};
use ivi_core::filtration::{self, check_weight_filtration, verify_phs};
use ivi_core::mixed::{self, deligne_bigrading};
use ivi_core::search::{greedy_max_abelian, SearchConfig};
use ivi_core::{io, lie, Error, Report};

#[derive(Parser)]
#[command(name = "ivi", version, about = "Exact verification and construction of IVIs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a structure stored in FILE.
    Verify {
        #[command(subcommand)]
        what: VerifyKind,
    },
    /// Print the weight filtration W(N) of the matrix "N" in FILE.
    Wfilt { file: PathBuf },
    /// Print the Deligne bigrading of the mixed Hodge structure in FILE.
    Deligne { file: PathBuf },
    /// Integrate an IVI to its polynomial map and check integrability.
    Integrate {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit a constructed structure.
    Build {
        #[command(subcommand)]
        what: BuildKind,
        /// Write to this file instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Print a dimension bound.
    Bound {
        #[command(subcommand)]
        what: BoundKind,
    },
    /// Reproduce a catalog of maximal IVIs.
    Catalog {
        #[command(subcommand)]
        what: CatalogKind,
    },
    /// Greedy search for a large IVI over the orbit in FILE.
    Search {
        file: PathBuf,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    Hs { file: PathBuf },
    Mhs { file: PathBuf },
    Pmhs { file: PathBuf },
    Orbit { file: PathBuf },
    Ivi { file: PathBuf },
}

#[derive(Subcommand)]
enum BuildKind {
    Cktm {
        #[arg(long)]
        h20: usize,
        #[arg(long)]
        h11: usize,
    },
    HodgeTate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    SymFamily {
        #[arg(long)]
        d: usize,
    },
    DiagCone {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand)]
enum BoundKind {
    Cktm {
        #[arg(long)]
        h20: usize,
        #[arg(long)]
        h11: usize,
    },
    Symmetric {
        #[arg(long)]
        n: usize,
    },
    Ct {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CatalogKind {
    Table1 {
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Args, Clone, Copy)]
struct SearchOpts {
    #[arg(long, default_value_t = 200)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    max_steps: usize,
}

impl From<SearchOpts> for SearchConfig {
    fn from(o: SearchOpts) -> Self {
        SearchConfig {
            restarts: o.restarts,
            seed: o.seed,
            max_steps: o.max_steps,
        }
    }
}

/// Outcome of a command: the JSON to print and whether all checks passed.
struct Output {
    value: Value,
    passed: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, passed: true }
    }

    fn report(r: &Report) -> Self {
        Output {
            value: r.to_json(),
            passed: r.passed(),
        }
    }
}

/// Failures that are the input's fault, as opposed to failed checks.
struct Malformed(String);

impl From<Error> for Malformed {
    fn from(e: Error) -> Self {
        Malformed(e.to_string())
    }
}

type CmdResult = Result<Output, Malformed>;

fn read_json(path: &Path) -> Result<Value, Malformed> {
    let text = fs::read_to_string(path).map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<(), Malformed> {
    fs::write(path, render(v)).map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn verify(what: VerifyKind) -> CmdResult {
    match what {
        VerifyKind::Hs { file } => {
            let (h, q) = io::hs_from_json(&read_json(&file)?)?;
            Ok(Output::report(&verify_phs(&h, &q)?))
        }
        VerifyKind::Mhs { file } => {
            let m = io::mhs_from_json(&read_json(&file)?)?;
            Ok(Output::report(&mixed::verify_mhs(&m)?))
        }
        VerifyKind::Pmhs { file } => {
            let d = io::pmhs_from_json(&read_json(&file)?)?;
            Ok(Output::report(&mixed::verify_pmhs(&d)?))
        }
        VerifyKind::Orbit { file } => {
            let o = io::orbit_from_json(&read_json(&file)?)?;
            Ok(Output::report(&asymptotic::verify_orbit(&o, &[])?))
        }
        VerifyKind::Ivi { file } => {
            let (v, given) = io::ivi_from_json(&read_json(&file)?)?;
            let mut rep = asymptotic::verify_ivi(&v)?;
            // name offending pairs by their position in the file
            match lie::first_noncommuting(&given) {
                None => rep.pass("abelian_basis commutes"),
                Some((i, j)) => {
                    rep.check(
                        "abelian_basis commutes",
                        false,
                        format!("abelian_basis[{i}] and abelian_basis[{j}] do not commute"),
                    );
                    rep.set("noncommuting_pair", json!([i, j]));
                }
            }
            Ok(Output::report(&rep))
        }
    }
}

fn wfilt(file: &Path) -> CmdResult {
    let v = read_json(file)?;
    let n = io::matrix_from_json(v.get("N").ok_or_else(|| Malformed("missing field \"N\"".into()))?)?;
    let w = filtration::weight_filtration(&n)?;
    let mut rep = Report::new("weight filtration W(N)");
    match check_weight_filtration(&n, &w) {
        Ok(()) => rep.pass("defining properties"),
        Err(e) => rep.check("defining properties", false, e),
    }
    rep.set("W", io::inc_filtration_to_json(&w));
    Ok(Output::report(&rep))
}

fn deligne(file: &Path) -> CmdResult {
    let m = io::mhs_from_json(&read_json(file)?)?;
    let mut rep = Report::new("Deligne bigrading");
    match deligne_bigrading(&m) {
        Ok(split) => {
            rep.pass("splitting");
            let dims: Map<String, Value> = split
                .grading
                .parts()
                .iter()
                .map(|((p, q), s)| (format!("{p},{q}"), json!(s.dim())))
                .collect();
            rep.set("dims", Value::Object(dims));
            rep.set("bigrading", io::bigrading_to_json(&split.grading));
        }
        Err(Error::NotMixedHodge(why)) | Err(Error::Postcondition(why)) => rep.check("splitting", false, why),
        Err(e) => return Err(e.into()),
    }
    Ok(Output::report(&rep))
}

fn integrate(file: &Path, out: &Path) -> CmdResult {
    let (v, _) = io::ivi_from_json(&read_json(file)?)?;
    let mut rep = Report::new("integration of an IVI");
    match integrate_ivi(&v) {
        Ok(x) => {
            let ok = check_integrability(&x);
            let detail = first_nonintegrable_pair(&x).map(|p| format!("{p:?}")).unwrap_or_default();
            rep.check("integrability", ok, detail);
            rep.check("a_infinity = a", asymptotic::a_infinity(&x) == v.a, "");
            write_json(out, &io::polymap_to_json(&x))?;
            rep.set("out", json!(out.display().to_string()));
        }
        Err(Error::Verification(why)) => rep.check("input is an IVI", false, why),
        Err(e) => return Err(e.into()),
    }
    Ok(Output::report(&rep))
}

fn build_cmd(what: BuildKind) -> CmdResult {
    let value = match what {
        BuildKind::Cktm { h20, h11 } => io::ivi_to_json(&build::build_max_ivi_k2(h20, h11)?),
        BuildKind::HodgeTate { k, n } => io::orbit_to_json(&build::hodge_tate_orbit(k, n)?),
        BuildKind::SymFamily { d } => io::ivi_to_json(&build::symmetric_family_ivi(d)?),
        BuildKind::DiagCone { d } => io::ivi_to_json(&build::diagonal_cone_orbit(d)?.1),
    };
    Ok(Output::ok(value))
}

fn bound(what: BoundKind) -> CmdResult {
    let v = match what {
        BoundKind::Cktm { h20, h11 } => build::cktm_bound_k2(h20, h11)?,
        BoundKind::Symmetric { n } => build::max_dim_symmetric(n),
        BoundKind::Ct { n } => build::carlson_toledo_bound(n),
    };
    Ok(Output::ok(json!(v)))
}

fn catalog_row(row: &CatalogRow, search: Option<SearchConfig>) -> Result<(Value, bool), Malformed> {
    let mut passed = true;
    let mut witnesses = Vec::new();
    let mut best: Option<usize> = None;
    for (v, r) in row.per_cone.iter().zip(&row.cone_dims_available) {
        let ok = asymptotic::verify_ivi(v)?.passed();
        passed &= ok;
        let mut entry = json!({"cone_dim": r, "dim": v.dim(), "verified": ok});
        if let (Some(cfg), false) = (search, v.orbit.cone.is_empty()) {
            let res = greedy_max_abelian(&v.orbit, &cfg)?;
            let top = res.dims_per_restart.iter().copied().max().unwrap_or(0);
            passed &= top <= row.expected_max;
            best = Some(best.map_or(top, |b: usize| b.max(top)));
            entry["search_best"] = json!(top);
            entry["search_certified"] = json!(res.certified_maximal);
        }
        witnesses.push(entry);
    }
    let dims: Map<String, Value> = row
        .dims
        .entries()
        .iter()
        .map(|((a, b), d)| (format!("{a},{b}"), json!(d)))
        .collect();
    let mut v = json!({
        "label": row.label,
        "j": dims,
        "cone_dims": row.cone_dims_available,
        "max_dim": row.expected_max,
        "witnesses": witnesses,
    });
    if let Some(b) = best {
        v["search_best"] = json!(b);
        v["search_exceeds_max"] = json!(b > row.expected_max);
    }
    Ok((v, passed))
}

fn catalog(what: CatalogKind) -> CmdResult {
    let CatalogKind::Table1 { search, opts } = what;
    let cfg = search.then(|| SearchConfig::from(opts));
    let rows = build::table1_catalog()?;
    let mut passed = true;
    let mut out = Vec::new();
    for row in &rows {
        let (v, ok) = catalog_row(row, cfg)?;
        passed &= ok;
        out.push(v);
    }
    let value = json!({
        "subject": "weight 2, h20 = h11 = 3",
        "rows": out,
        "search": cfg.map(|c| json!({"restarts": c.restarts, "seed": c.seed, "max_steps": c.max_steps})),
        "summary": if passed { "pass" } else { "fail" },
    });
    Ok(Output { value, passed })
}

fn search(file: &Path, opts: SearchOpts) -> CmdResult {
    let orbit = io::orbit_from_json(&read_json(file)?)?;
    let res = greedy_max_abelian(&orbit, &SearchConfig::from(opts))?;
    let v = res.ivi(&orbit)?;
    let mut rep = asymptotic::verify_ivi(&v)?;
    rep.subject = "greedy search".into();
    rep.set("dim", json!(res.dim));
    rep.set("restart", json!(res.restart));
    rep.set("certified_maximal", json!(res.certified_maximal));
    rep.set("dims_per_restart", json!(res.dims_per_restart));
    rep.set(
        "abelian_basis",
        Value::Array(res.basis.iter().map(io::matrix_to_json).collect()),
    );
    Ok(Output::report(&rep))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Verify { what } => verify(what),
        Command::Wfilt { file } => wfilt(&file),
        Command::Deligne { file } => deligne(&file),
        Command::Integrate { file, out } => integrate(&file, &out),
        Command::Build { what, out } => {
            let o = build_cmd(what)?;
            if let Some(path) = out {
                write_json(&path, &o.value)?;
                return Ok(Output::ok(json!({"written": path.display().to_string()})));
            }
            Ok(o)
        }
        Command::Bound { what } => bound(what),
        Command::Catalog { what } => catalog(what),
        Command::Search { file, opts } => search(&file, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", render(&o.value));
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
