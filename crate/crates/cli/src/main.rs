//! `d4mod`: command-line access to E8 shells, Bhargava cubes, rank-one
//! Jordan counts and W(E8) invariants.

mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use d4mod_core::cubes::{self, Cube};
use d4mod_core::lattice::ShellStore;
use d4mod_core::octonion::Octonion;
use d4mod_core::theta;
use d4mod_core::weyl;
use d4mod_core::{Error, Rational};
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use config::{Config, Output};

const EXIT_RESOURCE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "d4mod", version, about = "Integral octonions, E8 shells, Bhargava cubes and theta coefficients")]
struct Cli {
    /// Configuration file with key = value lines
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Shell cache directory (overrides config and D4MOD_CACHE_DIR)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the on-disk shell cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest shell norm any command may enumerate
    #[arg(long, global = true)]
    max_shell_norm: Option<u64>,
    /// Worker threads for counting loops
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_parser = parse_output)]
    output: Option<Output>,
    #[command(subcommand)]
    command: Command,
}

fn parse_output(s: &str) -> Result<Output, String> {
    s.parse()
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elements of the order of a given norm
    Shell {
        #[arg(long)]
        norm: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Work with a 2x2x2 cube given as c000,c001,c010,c011,c100,c101,c110,c111
    Cube {
        #[arg(value_enum)]
        action: CubeAction,
        #[arg(long, allow_hyphen_values = true)]
        cube: String,
    },
    /// Weighted rank-one count rho(a1, a2, a3) against e4(a1) e4(a2) e4(a3)
    Rho {
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
    },
    /// Run a verification sweep
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Reduced forms of the narrow class group of a negative discriminant
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// The harmonic W(E8)-invariant of a given degree
    Invariant {
        #[arg(long)]
        degree: u32,
        /// Point in order coordinates, e.g. 1,0,1/2,0,0,0,0,-3
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        check_harmonic: bool,
        #[arg(long)]
        check_invariant: bool,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Kim's coefficient 240 sigma3(n) for a rank-one element of content n
    Kim {
        #[arg(long)]
        content: u64,
    },
    /// Shell cache maintenance
    Cache {
        #[command(subcommand)]
        what: CacheCommand,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CubeAction {
    Forms,
    Disc,
    Normalize,
    Orbit,
    Coeff,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// rho(a) = e4(a1) e4(a2) e4(a3) for entries and pairwise products up to --max
    E4cube {
        #[arg(long)]
        max: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Compute and store every shell up to --max
    Warm {
        #[arg(long)]
        max: u64,
    },
    /// Remove stored shells
    Clear,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            Error::InvalidInput(_) => EXIT_INVALID,
            Error::Overflow(_) | Error::ReductionBudget(_) | Error::Internal(_) => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: msg.into() }
}

type Outcome = Result<(Value, bool), Failure>;

fn resolve_config(cli: &Cli) -> Result<Config, Failure> {
    let mut cfg = Config::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path).map_err(invalid)?;
    }
    if let Some(dir) = std::env::var_os("D4MOD_CACHE_DIR") {
        cfg.cache_dir = Some(PathBuf::from(dir));
    }
    if let Some(dir) = &cli.cache_dir {
        cfg.cache_dir = Some(dir.clone());
    }
    if cli.no_cache {
        cfg.cache_dir = None;
    }
    if let Some(n) = cli.max_shell_norm {
        cfg.set("max_shell_norm", &n.to_string()).map_err(invalid)?;
    }
    if let Some(w) = cli.workers {
        cfg.set("worker_count", &w.to_string()).map_err(invalid)?;
    }
    if let Some(o) = cli.output {
        cfg.output = o;
    }
    Ok(cfg)
}

fn parse_list<T: FromStr>(s: &str, len: usize, what: &str) -> Result<Vec<T>, Failure> {
    let vals: Vec<T> = s
        .split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| invalid(format!("bad {what} entry '{}'", t.trim()))))
        .collect::<Result<_, _>>()?;
    if vals.len() != len {
        return Err(invalid(format!("{what} needs {len} comma-separated entries, got {}", vals.len())));
    }
    Ok(vals)
}

fn cube_json(c: &Cube) -> Value {
    json!(c.entries())
}

fn cmd_shell(store: &ShellStore, norm: u64, count_only: bool) -> Outcome {
    let shell = store.get(norm)?;
    let mut v = json!({"norm": norm, "count": shell.count()});
    if !count_only {
        let elems: Vec<&[i64; 8]> = shell.elements().iter().map(Octonion::coords).collect();
        v["elements"] = json!(elems);
    }
    Ok((v, true))
}

fn cmd_cube(cfg: &Config, store: &ShellStore, action: CubeAction, text: &str) -> Outcome {
    let c: Cube = text.parse()?;
    let v = match action {
        CubeAction::Forms => {
            let forms: Vec<[i64; 3]> = c.forms().iter().map(|q| [q.a, q.b, q.c]).collect();
            json!({"cube": cube_json(&c), "forms": forms, "disc": c.discriminant()})
        }
        CubeAction::Disc => json!({"disc": c.discriminant()}),
        CubeAction::Normalize => {
            let (n, w) = cubes::normalize(&c)?;
            json!({"cube": cube_json(&c), "normal": cube_json(&n), "witness": w.components()})
        }
        CubeAction::Orbit => {
            let inv = cubes::orbit_invariants(&c)?;
            let classes: Vec<Value> = inv
                .classes
                .iter()
                .map(|k| json!({"sign": k.sign, "form": [k.form.a, k.form.b, k.form.c]}))
                .collect();
            let p = inv.class_product()?;
            json!({"disc": inv.disc, "classes": classes, "product_principal": p.is_principal()})
        }
        CubeAction::Coeff => {
            let (n, _) = cubes::normalize(&c)?;
            let k = theta::cube_coefficient(&n, store, cfg.worker_count)?;
            json!({"cube": cube_json(&c), "normal": cube_json(&n), "disc": c.discriminant(), "coefficient": k})
        }
    };
    Ok((v, true))
}

fn rho_json(r: &theta::RhoResult) -> Value {
    json!({"diag": r.diag, "rho": r.rho, "expected": r.expected, "match": r.matches()})
}

fn cmd_rho(cfg: &Config, store: &ShellStore, diag: &str) -> Outcome {
    let d = parse_list::<u64>(diag, 3, "diagonal")?;
    let r = theta::rho([d[0], d[1], d[2]], store, cfg.worker_count)?;
    Ok((rho_json(&r), true))
}

fn cmd_verify_e4cube(cfg: &Config, store: &ShellStore, max: u64) -> Outcome {
    let diags = theta::e4cube_diagonals(max);
    let total = diags.len();
    let mut cases = Vec::with_capacity(total);
    let mut all = true;
    for (i, d) in diags.into_iter().enumerate() {
        let r = theta::rho(d, store, cfg.worker_count)?;
        log::info!("[{}/{total}] rho{:?} = {} ({})", i + 1, d, r.rho, if r.matches() { "match" } else { "MISMATCH" });
        all &= r.matches();
        cases.push(rho_json(&r));
    }
    Ok((json!({"max": max, "cases": cases, "all_match": all}), all))
}

fn cmd_classgroup(d: i64) -> Outcome {
    let classes = cubes::class_group(d)?;
    let list: Vec<Value> =
        classes.iter().map(|k| json!({"sign": k.sign, "form": [k.form.a, k.form.b, k.form.c]})).collect();
    Ok((json!({"disc": d, "class_number": classes.len() / 2, "narrow_classes": list, "count": classes.len()}), true))
}

fn random_point(rng: &mut impl Rng) -> Octonion<Rational> {
    Octonion::new(std::array::from_fn(|_| {
        Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
    }))
}

fn cmd_invariant(
    degree: u32,
    point: Option<&str>,
    check_harmonic: bool,
    check_invariant: bool,
    trials: usize,
    seed: u64,
) -> Outcome {
    let rep = weyl::harmonic_project(degree)?;
    let mut v = json!({"degree": degree, "coeffs": rep.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()});
    let mut ok = true;
    if let Some(p) = point {
        let coords = parse_list::<Rational>(p, 8, "point")?;
        let x = Octonion::new(std::array::from_fn(|i| coords[i].clone()));
        v["point"] = json!(coords.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        v["value"] = json!(weyl::invariant_eval(&rep, &x).to_string());
    }
    if check_harmonic {
        let h = weyl::laplacian_check(&rep);
        ok &= h;
        v["harmonic"] = json!(if h { "pass" } else { "fail" });
    }
    if check_invariant {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let roots = weyl::RootSystem::e8().roots();
        let mut pass = true;
        for _ in 0..trials {
            let x = random_point(&mut rng);
            let r = &roots[rng.gen_range(0..roots.len())];
            let y = weyl::reflect(r, &x)?;
            pass &= weyl::invariant_eval(&rep, &y) == weyl::invariant_eval(&rep, &x);
        }
        ok &= pass;
        v["invariant"] = json!(if pass { "pass" } else { "fail" });
        v["trials"] = json!(trials);
    }
    Ok((v, ok))
}

fn cmd_kim(n: u64) -> Outcome {
    if n == 0 {
        return Err(invalid("content must be positive"));
    }
    Ok((json!({"content": n, "coefficient": 240 * d4mod_core::scalar::sigma3(n)}), true))
}

fn cmd_cache(cfg: &Config, store: &ShellStore, what: &CacheCommand) -> Outcome {
    let Some(dir) = &cfg.cache_dir else {
        return Err(invalid("no cache directory configured"));
    };
    match what {
        CacheCommand::Warm { max } => {
            let mut counts = Vec::new();
            for n in 0..=*max {
                counts.push(json!({"norm": n, "count": store.get(n)?.count()}));
            }
            Ok((json!({"cache_dir": dir, "shells": counts}), true))
        }
        CacheCommand::Clear => {
            let mut removed = 0;
            if let Ok(entries) = std::fs::read_dir(dir) {
                for e in entries.flatten() {
                    let name = e.file_name();
                    let name = name.to_string_lossy();
                    if name.starts_with("shell-") && name.ends_with(".txt") && std::fs::remove_file(e.path()).is_ok() {
                        removed += 1;
                    }
                }
            }
            Ok((json!({"cache_dir": dir, "removed": removed}), true))
        }
    }
}

fn run(cli: &Cli) -> Result<(Value, bool, Output), Failure> {
    let cfg = resolve_config(cli)?;
    if let Some(dir) = &cfg.cache_dir {
        if let Err(e) = std::fs::create_dir_all(dir) {
            log::warn!("cache directory {} is unusable ({e}); continuing without it", dir.display());
        }
    }
    let cache_dir = cfg.cache_dir.clone().filter(|d| d.is_dir());
    let store = ShellStore::new(cfg.max_shell_norm, cache_dir);
    let (value, ok) = match &cli.command {
        Command::Shell { norm, count_only } => cmd_shell(&store, *norm, *count_only)?,
        Command::Cube { action, cube } => cmd_cube(&cfg, &store, *action, cube)?,
        Command::Rho { diag } => cmd_rho(&cfg, &store, diag)?,
        Command::Verify { what: Verify::E4cube { max } } => cmd_verify_e4cube(&cfg, &store, *max)?,
        Command::Classgroup { disc } => cmd_classgroup(*disc)?,
        Command::Invariant { degree, point, check_harmonic, check_invariant, trials, seed } => {
            cmd_invariant(*degree, point.as_deref(), *check_harmonic, *check_invariant, *trials, *seed)?
        }
        Command::Kim { content } => cmd_kim(*content)?,
        Command::Cache { what } => cmd_cache(&cfg, &store, what)?,
    };
    Ok((value, ok, cfg.output))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).format_timestamp(None).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((value, ok, output)) => {
            println!("{}", render::render(&value, output));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INTERNAL)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
