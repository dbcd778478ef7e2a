use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::json;

use fiberforge::bundle::{build_general, build_with_euler, trivial_bundle, NecklaceBundle};
use fiberforge::complex::{enumerate_spheres, generate, verify_closed_oriented_surface, Preset, SimplicialComplex};
use fiberforge::game::{euler_bound, solve, DEFAULT_BUDGET};
use fiberforge::homology::homology;
use fiberforge::io::{
    bundle_from_json, certificate_json, cochain_from_json, complex_from_json, complex_to_json, lcf_report, BundleJson,
    CochainJson, TotalSpaceJson,
};
use fiberforge::lcf::lcf_cochain;
use fiberforge::total_space::{reconstruct, verify_bundle_triangulation, TotalSpace};

/// Classical triangulations of circle bundles over triangulated bases.
///
/// File arguments may be omitted (or given as `-`) to read stdin; a missing
/// `-o` writes to stdout.
#[derive(Parser)]
#[command(name = "fiberforge", version)]
struct Cli {
    /// Report errors as a JSON object on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named example base.
    Gen {
        #[arg(long)]
        preset: String,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Bundle with prescribed Euler number over a closed oriented surface.
    Build {
        /// Base complex file or preset name.
        #[arg(long)]
        base: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Product bundle over an arbitrary base.
    Trivial {
        #[arg(long)]
        base: Option<String>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Bundle over an arbitrary base from a +-1/4 orientation cochain.
    General {
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        orientation: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Local formula values and Euler number of a bundle.
    Euler {
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Reconstruct the total space of a bundle.
    TotalSpace {
        #[arg(long)]
        bundle: Option<PathBuf>,
        #[arg(short)]
        o: Option<PathBuf>,
        /// Verify the triangulation and print a summary.
        #[arg(long)]
        check: bool,
    },
    /// Integral homology of a complex in one degree.
    Homology {
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        dim: usize,
    },
    /// Coloring game on a triangulated sphere.
    Game {
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        exhaustive: bool,
        /// Print the Euler-bound certificate of the best strategy.
        #[arg(long)]
        certify: bool,
    },
    /// Full consistency, classicality and triangulation check of a bundle.
    Verify {
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// All triangulated spheres up to a vertex count.
    EnumerateSpheres {
        #[arg(long)]
        max_vertices: usize,
        /// Output directory; one file per sphere.
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

/// Verification failed without a library error.
#[derive(Debug)]
struct Rejected(String);

impl std::fmt::Display for Rejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Rejected {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let lib = err.chain().find_map(|e| e.downcast_ref::<fiberforge::Error>());
            let code = if lib.is_some_and(fiberforge::Error::is_obstruction) { 3 } else { 2 };
            if cli.json_errors {
                let kind = match lib {
                    Some(e) => e.kind(),
                    None if err.is::<Rejected>() => "verification_failed",
                    None => "io",
                };
                let report = json!({ "kind": kind, "message": format!("{err:#}"), "exit_code": code });
                eprintln!("{report}");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen { preset, n, o } => {
            let preset: Preset = preset.parse()?;
            let base = generate(preset, n)?;
            write_json(o.as_deref(), &complex_to_json(&base))
        }
        Command::Build { base, euler, o } => {
            let base = load_base(base.as_deref())?;
            let bundle = build_with_euler(&base, euler)?;
            write_bundle(o.as_deref(), &bundle)
        }
        Command::Trivial { base, o } => {
            let base = load_base(base.as_deref())?;
            write_bundle(o.as_deref(), &trivial_bundle(&base))
        }
        Command::General { base, orientation, o } => {
            let base = load_base(base.as_deref())?;
            let text = read_input(Some(&orientation))?;
            let json: CochainJson = serde_json::from_str(&text).context("reading orientation cochain")?;
            let a = cochain_from_json(&json, &base)?;
            let general = build_general(&base, &a)?;
            if general.h2_two_torsion {
                eprintln!("note: H2 of the base has 2-torsion; G_a need not determine the bundle class");
            }
            write_bundle(o.as_deref(), &general.bundle)
        }
        Command::Euler { bundle } => {
            let bundle = load_bundle(bundle.as_deref())?;
            let orientation = verify_closed_oriented_surface(bundle.base()).ok();
            let result = lcf_cochain(&bundle, orientation.as_ref())?;
            write_json(None, &lcf_report(&result))
        }
        Command::TotalSpace { bundle, o, check } => {
            let bundle = load_bundle(bundle.as_deref())?;
            let space = reconstruct(&bundle)?;
            if o.is_some() || !check {
                write_json(o.as_deref(), &TotalSpaceJson::from(&space))?;
            }
            if check {
                let report = verify_bundle_triangulation(&space, &bundle);
                if !report.passed() {
                    bail!(Rejected(format!("triangulation check failed\n{report}")));
                }
                println!("{}", summary(&space));
            }
            Ok(())
        }
        Command::Homology { complex, dim } => {
            let complex = complex_from_json(&read_input(complex.as_deref())?)?;
            let h = homology(&complex, dim);
            write_json(None, &json!({ "dim": dim, "betti": h.betti, "torsion": h.torsion, "group": h.to_string() }))
        }
        Command::Game { base, exhaustive, certify } => {
            let base = load_base(base.as_deref())?;
            let solution = solve(&base, exhaustive, DEFAULT_BUDGET)?;
            let verdict = if solution.winning() { "winning" } else { "not winning" };
            let line = format!("best green {}, {verdict}", solution.green);
            if certify {
                let cert = euler_bound(&base, &solution.strategy)?;
                eprintln!("{line}");
                write_json(None, &certificate_json(&base, &cert))
            } else {
                println!("{line}");
                Ok(())
            }
        }
        Command::Verify { bundle } => {
            let bundle = load_bundle(bundle.as_deref())?;
            verify(&bundle)
        }
        Command::EnumerateSpheres { max_vertices, o } => {
            let spheres = enumerate_spheres(max_vertices)?;
            let Some(dir) = o else {
                let all: Vec<_> = spheres.iter().map(complex_to_json).collect();
                return write_json(None, &all);
            };
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let mut index = 0;
            let mut last = 0;
            for s in &spheres {
                if s.vertex_count() != last {
                    last = s.vertex_count();
                    index = 0;
                }
                let path = dir.join(format!("sphere_{:02}_{:03}.json", last, index));
                write_json(Some(&path), &complex_to_json(s))?;
                index += 1;
            }
            println!("{} spheres written to {}", spheres.len(), dir.display());
            Ok(())
        }
    }
}

fn verify(bundle: &NecklaceBundle) -> anyhow::Result<()> {
    let violations = bundle.verify_consistency();
    if let Some(v) = violations.first() {
        bail!(Rejected(format!("{} consistency violations, first: {v}", violations.len())));
    }
    println!("consistency: ok");
    bundle.check_classical()?;
    println!("classical: ok");
    if let Ok(orientation) = verify_closed_oriented_surface(bundle.base()) {
        let result = lcf_cochain(bundle, Some(&orientation))?;
        println!("euler number: {}", result.euler_number);
    }
    let space = reconstruct(bundle)?;
    let report = verify_bundle_triangulation(&space, bundle);
    print!("{report}");
    if !report.passed() {
        bail!(Rejected("triangulation check failed".into()));
    }
    println!("{}", summary(&space));
    Ok(())
}

fn summary(space: &TotalSpace) -> String {
    let f = space.f_vector();
    let h1 = homology(&space.complex, 1);
    let h1 = if h1.is_trivial() { "trivial".to_string() } else { h1.to_string() };
    format!("{} vertices, {} tetrahedra, H1 {h1}", f.count(0), f.count(3))
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
            Ok(text)
        }
    }
}

fn load_base(arg: Option<&str>) -> anyhow::Result<SimplicialComplex> {
    if let Some(preset) = arg.and_then(|a| a.parse::<Preset>().ok()) {
        return Ok(generate(preset, None)?);
    }
    Ok(complex_from_json(&read_input(arg.map(Path::new))?)?)
}

fn load_bundle(path: Option<&Path>) -> anyhow::Result<NecklaceBundle> {
    Ok(bundle_from_json(&read_input(path)?)?)
}

fn write_bundle(path: Option<&Path>, bundle: &NecklaceBundle) -> anyhow::Result<()> {
    write_json(path, &BundleJson::from(bundle))
}

fn write_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        _ => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
