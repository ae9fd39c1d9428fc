//! `lie-eigenlab` — eigenfamilies, harmonic morphisms and minimal level
//! sets on compact matrix groups, verified numerically.

use clap::{Args, Parser, Subcommand};
use lie_eigenlab::commands::{envelope_exit, run_command};
use lie_eigenlab::config::{ConfigFile, RunConfig};
use lie_eigenlab::{CliError, ExitCode};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "lie-eigenlab",
    version,
    about = "Verification laboratory for eigenfamilies, harmonic morphisms and minimal level sets on SU(n), SO(n), Sp(n)"
)]
struct Cli {
    /// Flat key-value config file with [sections]; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Common {
    /// Group family: su | so | sp.
    #[arg(long)]
    group: Option<String>,
    /// Rank parameter n.
    #[arg(long)]
    n: Option<usize>,
    /// Catalogued family label: standard | dual | isotropic | tensor | extended.
    #[arg(long)]
    family: Option<String>,
    /// Block count for the extended family.
    #[arg(long)]
    s: Option<usize>,
    /// Generator vector file ("re im" pairs).
    #[arg(long)]
    gen_a: Option<String>,
    /// Second generator vector file (tensor family).
    #[arg(long)]
    gen_b: Option<String>,
    /// Numerator polynomial file (one term per line: "re im : i1 ... ik").
    #[arg(long)]
    poly_p: Option<String>,
    /// Denominator polynomial file.
    #[arg(long)]
    poly_q: Option<String>,
    /// H matrix source: a file path, "inline:<re im ...>", or "random-distinct".
    #[arg(long)]
    h_matrix: Option<String>,
    /// Haar sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed (mandatory for randomized commands).
    #[arg(long)]
    seed: Option<u64>,
    /// Pass tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Step for the mean-curvature estimator.
    #[arg(long)]
    h_step: Option<f64>,
    /// Output base path; writes <out>.json plus any data files.
    #[arg(long)]
    out: Option<String>,
    /// Output formats (comma separated): json,csv,ply.
    #[arg(long, value_delimiter = ',')]
    format: Option<Vec<String>>,
    /// Run only the matching acceptance criteria (number or name part).
    #[arg(long)]
    only: Option<String>,
    /// How many sampled points get regularity/curvature spot checks.
    #[arg(long)]
    spot_checks: Option<usize>,
    /// Testing hook: inject a stray member before verification.
    #[arg(long, hide = true)]
    inject_defect: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Casimir scalar of a named family and cross-check it
    /// against the measured Laplacian eigenvalue.
    Casimir(Common),
    /// Verify the eigenfamily identities of a catalogued family.
    VerifyFamily(Common),
    /// Verify chart harmonicity/conformality of [P, Q] over a family.
    VerifyMorphism(Common),
    /// Sample a bilinear level set, export CSV/PLY, run spot checks.
    SampleManifold(Common),
    /// Run the acceptance criteria.
    Acceptance(Common),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Casimir(_) => "casimir",
            Command::VerifyFamily(_) => "verify-family",
            Command::VerifyMorphism(_) => "verify-morphism",
            Command::SampleManifold(_) => "sample-manifold",
            Command::Acceptance(_) => "acceptance",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Casimir(c)
            | Command::VerifyFamily(c)
            | Command::VerifyMorphism(c)
            | Command::SampleManifold(c)
            | Command::Acceptance(c) => c,
        }
    }

    /// Commands whose checks consume Haar samples.
    fn needs_seed(&self) -> bool {
        !matches!(self, Command::Casimir(_))
    }
}

fn merge(command: &Command, file: Option<&ConfigFile>) -> Result<(RunConfig, bool), CliError> {
    let args = command.common();
    let mut cfg = RunConfig {
        command: command.name().to_string(),
        ..RunConfig::default()
    };
    let mut seed_given = false;

    if let Some(f) = file {
        if let Some(v) = f.get("group") {
            cfg.group = v.to_string();
        }
        if let Some(v) = f.get_parse::<usize>("n")? {
            cfg.n = v;
        }
        cfg.family = f.get("family").map(str::to_string).or(cfg.family);
        cfg.s = f.get_parse::<usize>("s")?.or(cfg.s);
        cfg.gen_a = f.get("gen-a").map(str::to_string).or(cfg.gen_a);
        cfg.gen_b = f.get("gen-b").map(str::to_string).or(cfg.gen_b);
        cfg.poly_p = f.get("poly-p").map(str::to_string).or(cfg.poly_p);
        cfg.poly_q = f.get("poly-q").map(str::to_string).or(cfg.poly_q);
        cfg.h_matrix = f.get("h-matrix").map(str::to_string).or(cfg.h_matrix);
        if let Some(v) = f.get_parse::<usize>("samples")? {
            cfg.samples = v;
        }
        if let Some(v) = f.get_parse::<u64>("seed")? {
            cfg.seed = v;
            seed_given = true;
        }
        if let Some(v) = f.get_parse::<f64>("tol")? {
            cfg.tol = v;
        }
        if let Some(v) = f.get_parse::<f64>("h-step")? {
            cfg.h_step = v;
        }
        cfg.out = f.get("out").map(str::to_string).or(cfg.out);
        if let Some(v) = f.get("format") {
            cfg.format = v.split(',').map(|s| s.trim().to_string()).collect();
        }
        cfg.only = f.get("only").map(str::to_string).or(cfg.only);
        if let Some(v) = f.get_parse::<usize>("spot-checks")? {
            cfg.spot_checks = v;
        }
    }

    if let Some(v) = &args.group {
        cfg.group = v.clone();
    }
    if let Some(v) = args.n {
        cfg.n = v;
    }
    cfg.family = args.family.clone().or(cfg.family);
    cfg.s = args.s.or(cfg.s);
    cfg.gen_a = args.gen_a.clone().or(cfg.gen_a);
    cfg.gen_b = args.gen_b.clone().or(cfg.gen_b);
    cfg.poly_p = args.poly_p.clone().or(cfg.poly_p);
    cfg.poly_q = args.poly_q.clone().or(cfg.poly_q);
    cfg.h_matrix = args.h_matrix.clone().or(cfg.h_matrix);
    if let Some(v) = args.samples {
        cfg.samples = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
        seed_given = true;
    }
    if let Some(v) = args.tol {
        cfg.tol = v;
    }
    if let Some(v) = args.h_step {
        cfg.h_step = v;
    }
    cfg.out = args.out.clone().or(cfg.out);
    if let Some(v) = &args.format {
        cfg.format = v.clone();
    }
    cfg.only = args.only.clone().or(cfg.only);
    if let Some(v) = args.spot_checks {
        cfg.spot_checks = v;
    }
    cfg.inject_defect = args.inject_defect;
    Ok((cfg, seed_given))
}

fn real_main() -> ExitCode {
    let cli = Cli::parse();
    let file = match cli.config.as_deref().map(ConfigFile::load).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return e.code;
        }
    };
    let (cfg, seed_given) = match merge(&cli.command, file.as_ref()) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return e.code;
        }
    };
    if let Err(e) = cfg.validate(cli.command.needs_seed(), seed_given) {
        eprintln!("error: {e}");
        return e.code;
    }
    match run_command(&cfg) {
        Ok(envelope) => {
            if cfg.out.is_none() {
                println!("{}", envelope.to_json());
            }
            envelope_exit(&envelope)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

fn main() {
    std::process::exit(real_main() as i32);
}
