use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use entcone::coarse::{build_delta, parse_map, pullback, DeltaMode};
use entcone::cone::{
    double_description, hull_contains, is_extreme_ray, orbit_count, reduce_generators,
    ExtremalityCertificate, HRepCone, HullContainment, VRepCone, Verdict,
};
use entcone::entrospace::{format_rational, subset_label};
use entcone::exactla::{conic_membership, to_rationals, ConicCertificate};
use entcone::hypergraph::{fixture, HypergraphModel};
use entcone::ineq::{family_instances, sa_instances, Family};
use entcone::reproduce::{run, Scenario};
use entcone::states::{state_vector, KindName, StateSpec};
use entcone::{EntropyVector, Error};

#[derive(Parser)]
#[command(name = "entcone", version, about = "Exact entropy-cone toolkit")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hypergraph models.
    #[command(subcommand)]
    Hg(HgCmd),
    /// Cones in H- and V-representation.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Reference states.
    #[command(subcommand)]
    State(StateCmd),
    /// Coarse grainings.
    #[command(subcommand)]
    Coarse(CoarseCmd),
    /// Run a reproduction scenario: n2, n3-chain or n4-lambda.
    Reproduce {
        scenario: String,
        /// Include the SAC_8 and SAC_9 certificates.
        #[arg(long)]
        long: bool,
    },
}

#[derive(Subcommand)]
enum HgCmd {
    /// Print a model (or built-in fixture) in the JSON model format.
    Show { model: String },
    /// Print the entropy vector of a model file or built-in fixture.
    Entropy { model: String },
    /// Certify whether the model's vector is an extreme ray of the SA cone.
    CheckExtreme { model: String },
    /// Re-check a stored extremality certificate.
    Verify {
        model: String,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    /// H-representation file instead of a family.
    #[arg(long)]
    hrep: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConeCmd {
    /// Print the instance set of a family.
    Instances {
        #[command(flatten)]
        src: FamilyArgs,
    },
    /// Enumerate extreme rays.
    Rays {
        #[command(flatten)]
        src: FamilyArgs,
        /// Allow N = 5 enumeration.
        #[arg(long)]
        long: bool,
    },
    /// Decide whether a vector lies in the cone of a V-rep.
    Member {
        #[arg(long)]
        rays: PathBuf,
        vector: PathBuf,
    },
    /// Compare two V-reps: equal, A⊂B, B⊂A or incomparable.
    Compare { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum StateCmd {
    /// Entropy vector of bell, ghz or ame4.
    Vector {
        #[arg(long)]
        kind: KindName,
        /// Comma-separated parties of ⟦N⟧.
        #[arg(long, value_delimiter = ',')]
        parties: Vec<usize>,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CoarseCmd {
    /// Pull back a vector (or a model's vector) along a map.
    Apply {
        #[arg(long)]
        map: String,
        /// Target party count (default: largest image).
        #[arg(long)]
        to: Option<usize>,
        input: String,
    },
    /// Generators of the coarse-grained cone from a set of rays.
    Delta {
        #[arg(long)]
        rays: PathBuf,
        #[arg(long)]
        to: usize,
        /// One map per set partition, then orbit expansion.
        #[arg(long)]
        reduced: bool,
        /// Drop generators inside the hull of the others.
        #[arg(long)]
        prune: bool,
    },
}

enum Failure {
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    format: Format,
    out: Option<PathBuf>,
}

impl Ctx {
    /// Writes the main artifact to `--out` or stdout.
    fn emit(&self, text: &str) -> Outcome {
        match &self.out {
            Some(p) => fs::write(p, text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Outcome {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        self.emit(&s)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

/// A model file, or a built-in fixture named `fig1`, `fig2`, `fig3` (also
/// accepted as the stem of a missing path such as `fixtures/fig1`).
fn load_model(spec: &str) -> Result<HypergraphModel, Failure> {
    let path = Path::new(spec);
    if path.exists() {
        return Ok(HypergraphModel::from_json(&read(path)?)?);
    }
    let stem = path.file_name().and_then(|s| s.to_str()).unwrap_or(spec);
    Ok(fixture(stem.parse()?))
}

fn load_hrep(src: &FamilyArgs) -> Result<HRepCone, Failure> {
    if let Some(p) = &src.hrep {
        return Ok(HRepCone::parse_text(&read(p)?)?);
    }
    let (Some(family), Some(n)) = (src.family, src.n) else {
        return Err(Failure::Input("need --family and --n, or --hrep".into()));
    };
    Ok(HRepCone::from_instances(&family_instances(family, n)?))
}

fn vector_json(v: &EntropyVector) -> serde_json::Value {
    let comps: Vec<(String, String)> = v
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| (subset_label(i as u32 + 1), format_rational(c)))
        .collect();
    serde_json::json!({ "n": v.n(), "components": comps })
}

fn emit_vector(ctx: &Ctx, v: &EntropyVector) -> Outcome {
    match ctx.format {
        Format::Text => ctx.emit(&v.to_text()),
        Format::Structured => ctx.emit_json(&vector_json(v)),
    }
}

fn cert_summary(c: &ExtremalityCertificate) -> String {
    format!(
        "verdict: {}\nsaturated: {}\nviolated: {}\nrank: {} of {}\n",
        c.verdict,
        c.saturated.len(),
        c.violated.len(),
        c.rank,
        c.dim
    )
}

fn cmd_hg(ctx: &Ctx, cmd: HgCmd) -> Outcome {
    match cmd {
        HgCmd::Show { model } => ctx.emit(&load_model(&model)?.to_json()),
        HgCmd::Entropy { model } => {
            let h = load_model(&model)?;
            emit_vector(ctx, &h.entropy_vector()?)
        }
        HgCmd::CheckExtreme { model } => {
            let h = load_model(&model)?;
            let v = h.entropy_vector()?;
            let sac = HRepCone::from_instances(&sa_instances(h.n())?);
            let c = is_extreme_ray(&v, &sac)?;
            match (ctx.format, &ctx.out) {
                (Format::Structured, _) => ctx.emit_json(&c)?,
                (Format::Text, Some(_)) => {
                    print!("{}", cert_summary(&c));
                    ctx.emit_json(&c)?
                }
                (Format::Text, None) => ctx.emit(&cert_summary(&c))?,
            }
            if c.verdict == Verdict::Extreme {
                Ok(())
            } else {
                Err(Failure::Verification(format!("verdict {}", c.verdict)))
            }
        }
        HgCmd::Verify { model, cert } => {
            let h = load_model(&model)?;
            let c: ExtremalityCertificate = serde_json::from_str(&read(&cert)?)
                .map_err(|e| Failure::Input(format!("bad certificate: {e}")))?;
            let sac = HRepCone::from_instances(&sa_instances(h.n())?);
            if c.verify(&h.entropy_vector()?, &sac)? {
                println!("certificate verified: {}", c.verdict);
                Ok(())
            } else {
                Err(Failure::Verification("certificate does not verify".into()))
            }
        }
    }
}

#[derive(Serialize)]
struct CompareReport<'a> {
    relation: &'a str,
    a_in_b: &'a HullContainment,
    b_in_a: &'a HullContainment,
}

fn cmd_cone(ctx: &Ctx, cmd: ConeCmd) -> Outcome {
    match cmd {
        ConeCmd::Instances { src } => {
            let (Some(family), Some(n)) = (src.family, src.n) else {
                return Err(Failure::Input("need --family and --n".into()));
            };
            ctx.emit(&HRepCone::from_instances(&family_instances(family, n)?).to_text())
        }
        ConeCmd::Rays { src, long } => {
            let h = load_hrep(&src)?;
            if h.n() > 5 {
                return Err(Failure::Input(format!(
                    "ray enumeration at N = {} is not supported",
                    h.n()
                )));
            }
            if h.n() == 5 && !long {
                return Err(Failure::Input("ray enumeration at N = 5 needs --long".into()));
            }
            let rays = double_description(&h)?;
            let orbits = orbit_count(&rays);
            match ctx.format {
                Format::Text => {
                    if ctx.out.is_some() {
                        println!("{} rays, {} orbits", rays.len(), orbits);
                    } else {
                        eprintln!("{} rays, {} orbits", rays.len(), orbits);
                    }
                    ctx.emit(&rays.to_text())
                }
                Format::Structured => {
                    let rs: Vec<Vec<String>> = rays
                        .rays()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect())
                        .collect();
                    ctx.emit_json(&serde_json::json!({
                        "n": rays.n(), "rays": rs, "orbits": orbits
                    }))
                }
            }
        }
        ConeCmd::Member { rays, vector } => {
            let cone = VRepCone::parse_text(&read(&rays)?)?;
            let v = EntropyVector::parse_text(&read(&vector)?)?;
            if v.n() != cone.n() {
                return Err(Error::DimensionMismatch {
                    expected: cone.n(),
                    got: v.n(),
                }
                .into());
            }
            let gens: Vec<_> = cone.rays().iter().map(|r| to_rationals(r)).collect();
            let c = conic_membership(v.components(), &gens)?;
            match ctx.format {
                Format::Structured => ctx.emit_json(&c)?,
                Format::Text => ctx.emit(&member_text(&c))?,
            }
            if c.is_member() {
                Ok(())
            } else {
                Err(Failure::Verification("not a member".into()))
            }
        }
        ConeCmd::Compare { a, b } => {
            let a = VRepCone::parse_text(&read(&a)?)?;
            let b = VRepCone::parse_text(&read(&b)?)?;
            let ab = hull_contains(&a, &b)?;
            let ba = hull_contains(&b, &a)?;
            let relation = match (ab.holds, ba.holds) {
                (true, true) => "equal",
                (true, false) => "A⊂B",
                (false, true) => "B⊂A",
                (false, false) => "incomparable",
            };
            match ctx.format {
                Format::Structured => ctx.emit_json(&CompareReport {
                    relation,
                    a_in_b: &ab,
                    b_in_a: &ba,
                }),
                Format::Text => {
                    let mut s = format!("{relation}\n");
                    for i in ab.uncovered() {
                        s += &format!("A generator outside B: {}\n", ray_text(&a.rays()[i]));
                    }
                    for i in ba.uncovered() {
                        s += &format!("B generator outside A: {}\n", ray_text(&b.rays()[i]));
                    }
                    ctx.emit(&s)
                }
            }
        }
    }
}

fn ray_text(r: &[num_bigint::BigInt]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn member_text(c: &ConicCertificate) -> String {
    match c {
        ConicCertificate::Member { coefficients } => {
            let terms: Vec<String> = coefficients
                .iter()
                .map(|(i, l)| format!("{}*r{}", format_rational(l), i))
                .collect();
            format!("member\ncombination: {}\n", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
        }
        ConicCertificate::NonMember { functional } => {
            format!("not a member\nseparating functional: {}\n", ray_text(functional))
        }
    }
}

fn cmd_state(ctx: &Ctx, cmd: StateCmd) -> Outcome {
    let StateCmd::Vector { kind, parties, n } = cmd;
    let spec = StateSpec::from_parts(kind, n, &parties)?;
    emit_vector(ctx, &state_vector(&spec))
}

fn load_vector_or_model(spec: &str) -> Result<EntropyVector, Failure> {
    let path = Path::new(spec);
    if path.exists() {
        let text = read(path)?;
        if text.trim_start().starts_with('{') {
            return Ok(HypergraphModel::from_json(&text)?.entropy_vector()?);
        }
        return Ok(EntropyVector::parse_text(&text)?);
    }
    Ok(load_model(spec)?.entropy_vector()?)
}

fn cmd_coarse(ctx: &Ctx, cmd: CoarseCmd) -> Outcome {
    match cmd {
        CoarseCmd::Apply { map, to, input } => {
            let v = load_vector_or_model(&input)?;
            let n_to = match to {
                Some(t) => t,
                None => map
                    .split(',')
                    .filter_map(|t| t.trim().parse::<usize>().ok())
                    .max()
                    .unwrap_or(0),
            };
            let f = parse_map(&map, v.n(), n_to)?;
            emit_vector(ctx, &pullback(&f, &v)?)
        }
        CoarseCmd::Delta {
            rays,
            to,
            reduced,
            prune,
        } => {
            let r = VRepCone::parse_text(&read(&rays)?)?;
            let mode = if reduced {
                DeltaMode::SymmetryReduced
            } else {
                DeltaMode::Exhaustive
            };
            let mut d = build_delta(&r, to, mode)?;
            if prune {
                d = reduce_generators(&d)?;
            }
            ctx.emit(&d.to_text())
        }
    }
}

fn cmd_reproduce(ctx: &Ctx, scenario: &str, long: bool) -> Outcome {
    let s: Scenario = scenario.parse()?;
    let report = run(s, long);
    match (ctx.format, &ctx.out) {
        (Format::Structured, _) => ctx.emit(&report.to_json())?,
        (Format::Text, Some(_)) => {
            print!("{}", report.to_text());
            ctx.emit(&report.to_json())?
        }
        (Format::Text, None) => ctx.emit(&report.to_text())?,
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("scenario {s} failed")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot size worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        format: cli.format,
        out: cli.out,
    };
    let res = match cli.cmd {
        Cmd::Hg(c) => cmd_hg(&ctx, c),
        Cmd::Cone(c) => cmd_cone(&ctx, c),
        Cmd::State(c) => cmd_state(&ctx, c),
        Cmd::Coarse(c) => cmd_coarse(&ctx, c),
        Cmd::Reproduce { scenario, long } => cmd_reproduce(&ctx, &scenario, long),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
