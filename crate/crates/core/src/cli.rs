//! Command-line front end. Output is deterministic for fixed arguments.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad
//! arguments or input, 3 an internal invariant broke.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bcmap::{
    assembly_map, check_witness, coinvariance_witness, fmt_rational, k_report, random_config, reports_to_csv,
    reports_to_json, trace_image, verify_kernel_lemma, BcError, TruncatedModule,
};
use crate::freegroup::{all_generators, ReducedWord};
use crate::grouprep::{FiniteGroupSpec, Side};
use crate::orbits::{canonicalize, enumerate_canonical, orbit_oracle, OrbitError};
use crate::telescope::{
    build_telescope, check_conjugation, check_phi_equivariance, fundamental_domain_cells, CellComplex, CellKind,
    GluingScheme, HomologyGroup, TelescopeError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wreath-bc", version, about = "K-theory, orbit and telescope computations for F wr F_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Analytic,
    Topological,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Positive,
    Outward,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// K-group bases of one or both sides over a truncation ball.
    K {
        /// Built-in group name or path to a group document (.toml or .json).
        #[arg(long)]
        group: String,
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Kernel lemma, orbit oracle, coinvariance witnesses and assembly checks.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random configurations per randomized check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Builds a truncated telescope and reports its homology and census.
    Telescope {
        #[arg(long)]
        group: String,
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value = "positive")]
        scheme: SchemeArg,
        /// Writes the cell complex as JSON.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Trace values of canonical configurations with bounded support.
    Trace {
        #[arg(long)]
        group: String,
        #[arg(long)]
        bound: usize,
    },
}

/// An error together with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Failure {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }

    fn internal(e: impl std::fmt::Display) -> Failure {
        Failure { code: EXIT_INTERNAL, message: e.to_string() }
    }
}

impl From<BcError> for Failure {
    fn from(e: BcError) -> Failure {
        match e {
            BcError::Group(_) | BcError::ZeroRank | BcError::TooLarge { .. } => Failure::usage(e),
            BcError::Orbit(OrbitError::TooLarge { .. }) => Failure::usage(e),
            _ => Failure::internal(e),
        }
    }
}

impl From<TelescopeError> for Failure {
    fn from(e: TelescopeError) -> Failure {
        match e {
            TelescopeError::Gluing(_) | TelescopeError::BoundaryNotZero | TelescopeError::LevelOverflow { .. } => {
                Failure::internal(e)
            }
            _ => Failure::usage(e),
        }
    }
}

/// A built-in name, or a path to a group document if the path exists.
pub fn load_group(arg: &str) -> Result<FiniteGroupSpec, Failure> {
    let path = Path::new(arg);
    let spec = if path.exists() { FiniteGroupSpec::from_path(path) } else { FiniteGroupSpec::builtin(arg) };
    spec.map_err(Failure::usage)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs one command, returning its output and exit code.
pub fn execute(cmd: &Command) -> Result<(String, i32), Failure> {
    match cmd {
        Command::K { group, n, radius, side, format } => cmd_k(&load_group(group)?, *n, *radius, *side, *format),
        Command::Verify { group, n, radius, seed, samples } => {
            cmd_verify(&load_group(group)?, *n, *radius, *seed, *samples)
        }
        Command::Telescope { group, n, radius, levels, scheme, export } => {
            let scheme = match scheme {
                SchemeArg::Positive => GluingScheme::Positive,
                SchemeArg::Outward => GluingScheme::Outward,
            };
            cmd_telescope(&load_group(group)?, *n, *radius, *levels, scheme, export.as_deref())
        }
        Command::Trace { group, bound } => cmd_trace(&load_group(group)?, *bound),
    }
}

pub fn cmd_k(
    spec: &FiniteGroupSpec,
    n: u32,
    radius: usize,
    side: SideArg,
    format: Format,
) -> Result<(String, i32), Failure> {
    let sides = match side {
        SideArg::Analytic => vec![Side::Analytic],
        SideArg::Topological => vec![Side::Topological],
        SideArg::Both => vec![Side::Analytic, Side::Topological],
    };
    let mut docs = Vec::new();
    for s in sides {
        docs.push(k_report(spec, s, n, radius)?.to_document());
    }
    let mut text = match format {
        Format::Json => reports_to_json(&docs),
        Format::Csv => reports_to_csv(&docs),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok((text, EXIT_OK))
}

struct Checks {
    text: String,
    failed: bool,
}

impl Checks {
    fn line(&mut self, ok: bool, name: &str, detail: impl std::fmt::Display) {
        self.failed |= !ok;
        let _ = writeln!(self.text, "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

pub fn cmd_verify(
    spec: &FiniteGroupSpec,
    n: u32,
    radius: usize,
    seed: u64,
    samples: usize,
) -> Result<(String, i32), Failure> {
    let mut checks = Checks { text: String::new(), failed: false };
    let _ = writeln!(checks.text, "group {} n={n} radius={radius} seed={seed}", spec.name());
    let module = TruncatedModule::new(spec, Side::Analytic, n, radius)?;
    let labels = module.labels().clone();

    let cert = verify_kernel_lemma(&module);
    checks.line(
        cert.holds,
        "kernel-lemma",
        format!("{} configurations, kernel rank {}, indicator determinant {}", module.len(), cert.kernel_rank, cert.det),
    );

    let basis = enumerate_canonical(&labels, n, radius).map_err(|e| Failure::from(BcError::from(e)))?;
    let known: BTreeSet<_> = basis.iter().cloned().collect();
    match orbit_oracle(&labels, n, radius) {
        Ok(partition) => {
            let bad = partition.classes.iter().find(|class| class.iter().filter(|c| known.contains(*c)).count() != 1);
            let detail = match bad {
                None => format!("{} classes, {} canonical forms", partition.class_count(), basis.len()),
                Some(class) => format!(
                    "class of {} has {} canonical members",
                    class[0].render(&labels),
                    class.iter().filter(|c| known.contains(*c)).count()
                ),
            };
            checks.line(bad.is_none() && partition.class_count() == basis.len(), "orbit-oracle", detail);
        }
        Err(OrbitError::TooLarge { words, limit }) => {
            let _ = writeln!(checks.text, "SKIP orbit-oracle: {} labels on {words} words exceeds {limit}", labels.len());
        }
        Err(e) => return Err(Failure::internal(e)),
    }

    let mut bad_witness = None;
    for x in module.basis() {
        let (c, w) = coinvariance_witness(x);
        if !known.contains(&c) || !check_witness(x, &c, &w) {
            bad_witness = Some(x.render(&labels));
            break;
        }
    }
    checks.line(
        bad_witness.is_none(),
        "coinvariance",
        bad_witness.map_or(format!("witnesses for all {} configurations", module.len()), |x| format!("no witness for {x}")),
    );

    let psi = crate::bcmap::psi_matrix(&module);
    let (_, torsion) = crate::intlin::cokernel_invariants(&psi.matrix);
    checks.line(
        torsion.is_empty(),
        "torsion-free",
        if torsion.is_empty() {
            "cokernel of psi is free".to_string()
        } else {
            format!("torsion {}", torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","))
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<_> = all_generators(n).collect();
    let mut counterexample = None;
    for _ in 0..samples {
        let x = random_config(&mut rng, labels.len(), n, radius);
        let len = rng.gen_range(0..=2 * radius + 2);
        let letters: Vec<_> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        let g = ReducedWord::from_letters(n, &letters).expect("letters in range");
        let moved = x.translate(&g);
        let (c, w) = coinvariance_witness(&moved);
        if canonicalize(&x).0 != c || !check_witness(&moved, &c, &w) {
            counterexample = Some(format!("{} moved by {g}", x.render(&labels)));
            break;
        }
    }
    checks.line(
        counterexample.is_none(),
        "random-equivariance",
        counterexample.unwrap_or_else(|| format!("{samples} translated samples")),
    );

    let assembly = assembly_map(spec, n, radius)?;
    checks.line(
        assembly.bijective,
        "assembly",
        format!(
            "{} topological onto {} analytic; {}",
            assembly.pairs.len(),
            assembly.analytic_basis.len(),
            assembly.degree_one.iter().map(|(v, u)| format!("{v}->{u}")).collect::<Vec<_>>().join(" ")
        ),
    );

    let code = if checks.failed { EXIT_CHECK_FAILED } else { EXIT_OK };
    Ok((checks.text, code))
}

fn fmt_homology(h: &HomologyGroup) -> String {
    let mut parts = Vec::new();
    match h.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn telescope_summary(cx: &CellComplex) -> Result<(String, bool), Failure> {
    let h = cx.homology()?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "telescope {} n={} radius={} levels={} support-radius={} scheme={}",
        cx.group,
        cx.rank,
        cx.radius,
        cx.levels,
        cx.support_radius,
        match cx.scheme {
            GluingScheme::Positive => "positive",
            GluingScheme::Outward => "outward",
        }
    );
    for kind in [CellKind::TreeVertex, CellKind::TreeEdge, CellKind::VerticalEdge, CellKind::Square] {
        let _ = writeln!(text, "cells {}: {}", kind.name(), cx.count_by_kind(kind));
    }
    let _ = writeln!(text, "euler characteristic: {}", h.euler);
    for (i, g) in h.groups.iter().enumerate() {
        let _ = writeln!(text, "H{i}: {}", fmt_homology(g));
    }
    let census = fundamental_domain_cells(cx);
    let _ = writeln!(
        text,
        "census domain: {} vertices, {} tree edges, {} vertical edges, {} squares",
        census.domain[0], census.domain[1], census.domain[2], census.domain[3]
    );
    let _ = writeln!(text, "census interior {} frontier {}", census.interior, census.frontier);
    let _ = writeln!(
        text,
        "census orbits: {} covered, {} cut by truncation, {} violations, {} fixed",
        census.covered,
        census.truncated,
        census.violations.len(),
        census.fixed
    );
    for v in &census.violations {
        let _ = writeln!(text, "  violation: {v}");
    }
    let phi = check_phi_equivariance(cx);
    let conj = check_conjugation(cx);
    let _ = writeln!(text, "phi-equivariance: {} ({} checks)", if phi.holds() { "pass" } else { "FAIL" }, phi.checked);
    let _ = writeln!(text, "conjugation: {} ({} checks)", if conj.holds() { "pass" } else { "FAIL" }, conj.checked);
    for f in phi.failures.iter().chain(&conj.failures) {
        let _ = writeln!(text, "  counterexample: {f}");
    }
    let ok = phi.holds() && conj.holds() && h.groups[0].is_z() && h.groups[1].is_zero() && h.groups[2].is_zero();
    Ok((text, ok))
}

pub fn cmd_telescope(
    spec: &FiniteGroupSpec,
    n: u32,
    radius: usize,
    levels: usize,
    scheme: GluingScheme,
    export: Option<&Path>,
) -> Result<(String, i32), Failure> {
    let cx = build_telescope(spec, n, radius, levels, scheme)?;
    let (mut text, ok) = telescope_summary(&cx)?;
    if let Some(path) = export {
        std::fs::write(path, cx.to_json()).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(text, "exported {} cells to {}", cx.cell_count(), path.display());
    }
    // the outward scheme is reported, not required to be contractible
    let code = if ok || scheme == GluingScheme::Outward { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((text, code))
}

pub fn cmd_trace(spec: &FiniteGroupSpec, bound: usize) -> Result<(String, i32), Failure> {
    let report = trace_image(spec, bound);
    let labels = spec.labels(Side::Analytic);
    let mut text = String::new();
    let _ = writeln!(text, "trace {} order={} bound={bound}", report.group, report.order);
    for (c, t) in &report.table {
        let _ = writeln!(text, "{} {}", c.render(&labels), fmt_rational(t));
    }
    let _ = writeln!(text, "d = {}", fmt_rational(&report.generated));
    let _ = writeln!(text, "predicted = {}", fmt_rational(&report.predicted));
    let code = if report.holds() { EXIT_OK } else { EXIT_CHECK_FAILED };
    let _ = writeln!(text, "{}", if report.holds() { "PASS" } else { "FAIL" });
    Ok((text, code))
}
