//! `octad`: identity checks, censuses, multiplication tables and lattice
//! queries from the command line.

mod report;
mod spec;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octad::conic::format_coords;
use octad::cubic::{axiom_identities, CubicData};
use octad::her3::{census_f2_cubic, Her3Count};
use octad::identity::{check_sampled, check_strict, AlgebraOps};
use octad::zorders::{to_eps, ZLattice};
use octad::zorn::{census, ZornCensus};
use octad::{ConicAlgebra, ConicIdentity, Identity, RingDescriptor, Scalar, Verdict, DEFAULT_SEED};
use report::{verdict_word, witness_json, witness_text, Report, Status};
use serde_json::{json, Value};
use spec::Algebra;

#[derive(Parser)]
#[command(name = "octad", version, about = "Composition algebras, cubic Jordan structures and octonion lattices")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit wall-clock timing so repeated runs print identical output.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Seed for sampled checks (default: $OCTAD_SEED, then a built-in seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountTarget {
    ZornUnits,
    ZornNorm1,
    ZornElid,
    Her3Rank1,
    Her3Elid,
    LatticeUnits,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeAction {
    Gram,
    Disc,
    Closure,
    Units,
    Member,
    Export,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity suite on an algebra.
    Identities {
        /// Algebra spec, e.g. "cay(Q;-1,-1,-1)" or "her3(zorn(Z),1)".
        algebra: String,
        /// Identity or suite name, e.g. moufang, norm-comp, adjoint, axioms, all.
        suite: String,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
        /// Sample count for sampled mode.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Count special elements.
    Count {
        #[arg(value_enum)]
        target: CountTarget,
        /// Prime for Zorn censuses.
        #[arg(long)]
        p: Option<u64>,
        /// Coefficient algebra over F2 for Her3 censuses, e.g. f2, split(F2), zorn(F2).
        #[arg(long, default_value = "f2")]
        coeff: String,
        /// Diagonal entries for Her3 censuses, comma separated.
        #[arg(long, default_value = "1")]
        gamma: String,
        /// Lattice name for lattice-units.
        #[arg(long)]
        lattice: Option<String>,
    },
    /// Print the multiplication table or cubic structure of an algebra.
    Table { algebra: String },
    /// Query one of the built-in lattices.
    Lattice {
        #[arg(value_enum)]
        action: LatticeAction,
        /// gaussian, hurwitz, dico, dico-p, dico-q or kirmse.
        name: String,
        /// Ambient coordinates for `member`, comma separated (fractions allowed).
        coords: Option<String>,
    },
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("OCTAD_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| format!("OCTAD_SEED is not an unsigned integer: '{v}'")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn conic_suite(name: &str) -> Result<Vec<ConicIdentity>, String> {
    use ConicIdentity::*;
    let ids = match name {
        "all" => ConicIdentity::ALL.to_vec(),
        "moufang" => vec![MoufangLeft, MoufangMiddle, MoufangRight],
        "alternative" => vec![LeftAlternative, RightAlternative],
        "norm-comp" => vec![NormComposition],
        "norm-assoc" => vec![NormAssociativity],
        "assoc" => vec![Associativity],
        other => match ConicIdentity::parse(other) {
            Some(id) => vec![id],
            None => {
                let names: Vec<&str> = ConicIdentity::ALL.iter().map(|i| i.name()).collect();
                return fail(format!(
                    "unknown identity '{other}' for a conic algebra (suites: all, moufang, alternative, norm-comp; identities: {})",
                    names.join(", ")
                ));
            }
        },
    };
    Ok(ids)
}

/// Selects cubic axioms by name; `None` means all of them with the default plan.
fn cubic_suite(name: &str) -> Result<Option<Vec<Identity>>, String> {
    if name == "axioms" || name == "all" {
        return Ok(None);
    }
    let wanted = name.replace('-', " ");
    let found: Vec<Identity> = axiom_identities()
        .into_iter()
        .filter(|id| id.name == wanted || id.name == format!("{wanted} identity") || id.name == format!("{wanted} formula"))
        .collect();
    if found.is_empty() {
        let names: Vec<String> = axiom_identities().iter().map(|i| i.name.replace(' ', "-")).collect();
        return fail(format!("unknown identity '{name}' for a cubic algebra (axioms, {})", names.join(", ")));
    }
    Ok(Some(found))
}

struct CheckRun {
    name: String,
    mode: &'static str,
    verdict: Verdict,
}

fn run_identities(rep: &mut Report, alg: &Algebra, suite: &str, mode: Mode, samples: usize) -> Result<(), String> {
    let seed = rep.seed;
    let mut runs = Vec::new();
    let labels: Vec<String>;
    match alg {
        Algebra::Conic(c) => {
            labels = c.labels().to_vec();
            for id in conic_suite(suite)? {
                let ident = id.identity();
                let (verdict, m) = run_one(&**c, &ident, mode, samples, seed)?;
                runs.push(CheckRun { name: id.name().to_string(), mode: m, verdict });
            }
        }
        Algebra::Cubic(d) => {
            labels = d.labels().to_vec();
            match cubic_suite(suite)? {
                Some(ids) => {
                    for id in ids {
                        let (verdict, m) = run_one(&**d, &id, mode, samples, seed)?;
                        runs.push(CheckRun { name: id.name.replace(' ', "-"), mode: m, verdict });
                    }
                }
                None => {
                    let plan = d.strict_plan();
                    for (id, strict_ok) in axiom_identities().iter().zip(plan) {
                        let chosen = match mode {
                            Mode::Strict if !strict_ok => Mode::Sampled,
                            m => m,
                        };
                        let n = if matches!(mode, Mode::Strict) { samples.max(octad::cubic::FALLBACK_SAMPLES) } else { samples };
                        let (verdict, m) = run_one(&**d, id, chosen, n, seed)?;
                        runs.push(CheckRun { name: id.name.replace(' ', "-"), mode: m, verdict });
                    }
                }
            }
        }
    }
    let failed = runs.iter().find(|r| !r.verdict.holds());
    let overall = if failed.is_some() { "Fails" } else { "Holds" };
    rep.field("verdict", overall);
    rep.field(
        "checks",
        Value::Array(
            runs.iter()
                .map(|r| json!({"identity": r.name, "mode": r.mode, "verdict": verdict_word(&r.verdict)}))
                .collect(),
        ),
    );
    rep.line(format!("algebra: {} (dim {})", alg.name(), labels.len()));
    for r in &runs {
        rep.line(format!("  {:<28} {:<8} {}", r.name, r.mode, verdict_word(&r.verdict)));
    }
    rep.line(format!("verdict: {overall}"));
    if let Some(r) = failed {
        let f = r.verdict.failure().expect("failed run");
        let mut w = witness_json(&f.witness, &labels);
        w["identity"] = json!(r.name);
        rep.field("witness", w);
        rep.line(format!("witness ({}): {}", r.name, witness_text(&f.witness, &labels)));
        rep.status = Status::Fails;
    }
    Ok(())
}

fn run_one<A: AlgebraOps + ?Sized>(
    alg: &A,
    id: &Identity,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<(Verdict, &'static str), String> {
    let out = match mode {
        Mode::Strict => (check_strict(alg, id), "strict"),
        Mode::Sampled => (check_sampled(alg, id, samples, seed), "sampled"),
    };
    Ok((out.0.map_err(|e| e.to_string())?, out.1))
}

fn zorn_count(rep: &mut Report, target: CountTarget, p: Option<u64>) -> Result<(), String> {
    let Some(p) = p else { return fail("zorn censuses need --p") };
    rep.param("p", p);
    let c: ZornCensus = census(p).map_err(|e| e.to_string())?;
    let (count, formula, what) = match target {
        CountTarget::ZornUnits => (c.invertibles, c.formula_invertibles(), "invertible elements"),
        CountTarget::ZornNorm1 => (c.norm_one, c.formula_norm_one(), "elements of norm 1"),
        _ => (c.elementary_idempotents, c.formula_elementary_idempotents(), "elementary idempotents"),
    };
    rep.field("count", count);
    rep.field("formula", formula);
    rep.line(format!("Zorn(F{p}): {count} {what} (closed form {formula})"));
    if count != formula {
        rep.status = Status::Fails;
    }
    Ok(())
}

fn her3_count(rep: &mut Report, target: CountTarget, coeff: &str, gamma: &str) -> Result<(), String> {
    let what = match target {
        CountTarget::Her3Rank1 => Her3Count::RankOne,
        _ => Her3Count::ElementaryIdempotents,
    };
    let coeff_spec = if coeff.eq_ignore_ascii_case("f2") { "F2" } else { coeff };
    let gammas: Vec<&str> = gamma.split(',').map(str::trim).collect();
    rep.param("coeff", coeff);
    rep.param("gamma", gamma);
    let data = spec::her3_spec(coeff_spec, &gammas)?;
    if data.ring() != &RingDescriptor::PrimeField(2) {
        return fail(format!("Her3 censuses run over F2, got {}", data.ring()));
    }
    let count = census_f2_cubic(&data, what).map_err(|e| e.to_string())?;
    rep.field("count", count);
    let noun = if what == Her3Count::RankOne { "rank-one elements" } else { "elementary idempotents" };
    rep.line(format!("{}: {count} {noun}", data.name()));
    Ok(())
}

/// Units split by whether all coordinates are integers (in the ε-frame for
/// octonion lattices).
fn unit_split(lat: &ZLattice, units: &[octad::ConicElement]) -> (usize, usize) {
    let integral = |c: &[Scalar]| -> bool {
        if lat.ambient().dim() == 8 {
            to_eps(c).iter().all(Scalar::is_integral)
        } else {
            c.iter().all(Scalar::is_integral)
        }
    };
    let whole = units.iter().filter(|u| integral(u.coords())).count();
    (whole, units.len() - whole)
}

fn lattice_units(rep: &mut Report, lat: &ZLattice) -> Result<(), String> {
    let units = lat.enumerate_units().map_err(|e| e.to_string())?;
    let (whole, half) = unit_split(lat, &units);
    rep.field("count", units.len());
    rep.field("split", json!([whole, half]));
    rep.line(format!("{}: {} units ({whole} integer, {half} half-integer)", lat.name(), units.len()));
    Ok(())
}

fn matrix_json(m: &[Vec<Scalar>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|s| json!(s.to_string())).collect())).collect())
}

fn matrix_lines(m: &[Vec<Scalar>]) -> Vec<String> {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells.iter().map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" ")).collect()
}

fn run_lattice(rep: &mut Report, action: LatticeAction, name: &str, coords: Option<&str>) -> Result<(), String> {
    let lat = spec::lattice(name)?;
    rep.param("lattice", lat.name());
    match action {
        LatticeAction::Gram => {
            rep.field("gram", matrix_json(lat.gram()));
            rep.line(format!("Gram matrix of {} (basis {}):", lat.name(), lat.labels().join(", ")));
            for l in matrix_lines(lat.gram()) {
                rep.line(format!("  {l}"));
            }
        }
        LatticeAction::Disc => {
            let d = lat.disc();
            rep.field("disc", d.to_string());
            rep.line(format!("{}: discriminant {d}", lat.name()));
        }
        LatticeAction::Closure => {
            let v = lat.closed_under_mul();
            rep.field("verdict", verdict_word(&v));
            rep.line(format!("{}: closed under multiplication: {}", lat.name(), verdict_word(&v)));
            if let Some(f) = v.failure() {
                rep.field("witness", witness_json(&f.witness, lat.ambient().labels()));
                rep.line(format!("witness: {}", witness_text(&f.witness, lat.ambient().labels())));
                rep.status = Status::Fails;
            }
        }
        LatticeAction::Units => lattice_units(rep, &lat)?,
        LatticeAction::Member => {
            let Some(raw) = coords else { return fail("member needs coordinates, e.g. \"1/2,1/2,0,0,0,0,0,0\"") };
            let k = lat.ambient().ring().clone();
            let x = raw.split(',').map(|c| spec::scalar(&k, c)).collect::<Result<Vec<_>, _>>()?;
            if x.len() != lat.ambient().dim() {
                return fail(format!("expected {} coordinates, got {}", lat.ambient().dim(), x.len()));
            }
            rep.param("coords", raw);
            let inside = lat.contains_coords(&x);
            rep.field("member", inside);
            match lat.coefficients(&x) {
                Ok(c) if inside => {
                    let c: Vec<String> = c.iter().map(|s| s.to_string()).collect();
                    rep.line(format!("in {}: coefficients ({})", lat.name(), c.join(", ")));
                    rep.field("coefficients", json!(c));
                }
                _ => rep.line(format!("not in {}", lat.name())),
            }
        }
        LatticeAction::Export => {
            let v = lat.to_json();
            rep.line(serde_json::to_string_pretty(&v).expect("lattice serializes"));
            rep.field("lattice", v);
        }
    }
    Ok(())
}

fn cubic_text(d: &CubicData) -> Vec<String> {
    let labels = d.labels();
    let (mut coeffs, mut monomials) = (Vec::new(), Vec::new());
    for (i, c) in d.norm_diag().iter().enumerate() {
        coeffs.push(c.clone());
        monomials.push(format!("{}^3", labels[i]));
    }
    for (i, j, c) in d.norm_dir() {
        coeffs.push(c.clone());
        monomials.push(format!("{}^2*{}", labels[*i], labels[*j]));
    }
    for (i, j, k, c) in d.norm_triple() {
        coeffs.push(c.clone());
        monomials.push(format!("{}*{}*{}", labels[*i], labels[*j], labels[*k]));
    }
    vec![
        format!("{} over {} (dim {})", d.name(), d.ring(), d.dim()),
        format!("basis: {}", labels.join(", ")),
        format!("basepoint: {}", format_coords(d.basepoint(), labels)),
        format!("norm: {}", format_coords(&coeffs, &monomials)),
        format!("trace: {}", format_coords(d.trace_coeffs(), labels)),
    ]
}

fn conic_table(rep: &mut Report, c: &ConicAlgebra) {
    rep.field("algebra", c.to_json());
    rep.line(format!("{} over {} (dim {})", c.name(), c.ring(), c.dim()));
    for l in c.table_text().lines() {
        rep.line(l);
    }
}

fn run(cli: Cli) -> Result<(String, Status), String> {
    let seed = resolve_seed(cli.seed)?;
    let mut rep;
    match &cli.command {
        Command::Identities { algebra, suite, mode, samples } => {
            rep = Report::new("identities".into(), seed);
            rep.param("algebra", algebra.as_str());
            rep.param("suite", suite.as_str());
            rep.param("mode", if matches!(mode, Mode::Strict) { "strict" } else { "sampled" });
            if matches!(mode, Mode::Sampled) {
                rep.param("samples", *samples);
            }
            let alg = spec::algebra(algebra)?;
            run_identities(&mut rep, &alg, suite, *mode, *samples)?;
        }
        Command::Count { target, p, coeff, gamma, lattice } => {
            rep = Report::new("count".into(), seed);
            let name = target.to_possible_value().expect("named").get_name().to_string();
            rep.param("target", name);
            match target {
                CountTarget::ZornUnits | CountTarget::ZornNorm1 | CountTarget::ZornElid => zorn_count(&mut rep, *target, *p)?,
                CountTarget::Her3Rank1 | CountTarget::Her3Elid => her3_count(&mut rep, *target, coeff, gamma)?,
                CountTarget::LatticeUnits => {
                    let Some(name) = lattice else { return fail("lattice-units needs --lattice") };
                    let lat = spec::lattice(name)?;
                    rep.param("lattice", lat.name());
                    lattice_units(&mut rep, &lat)?;
                }
            }
        }
        Command::Table { algebra } => {
            rep = Report::new("table".into(), seed);
            rep.param("algebra", algebra.as_str());
            match spec::algebra(algebra)? {
                Algebra::Conic(c) => conic_table(&mut rep, &c),
                Algebra::Cubic(d) => {
                    rep.field("algebra", d.to_json());
                    for l in cubic_text(&d) {
                        rep.line(l);
                    }
                }
            }
        }
        Command::Lattice { action, name, coords } => {
            rep = Report::new("lattice".into(), seed);
            rep.param("action", action.to_possible_value().expect("named").get_name().to_string());
            run_lattice(&mut rep, *action, name, coords.as_deref())?;
        }
    }
    Ok((rep.render(cli.json, !cli.no_timing), rep.status))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, status)) => {
            println!("{out}");
            ExitCode::from(status.code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
