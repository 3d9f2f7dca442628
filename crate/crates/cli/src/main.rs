//! `wallcross`: batch front end for exact cluster scattering diagrams.
//!
//! Exit status: 0 when everything passed, 1 when a verification or a
//! computation failed, 2 for usage and document errors.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use wallcross::io::documents::{terms_of, CheckResult};
use wallcross::io::verify::{self, Options, Suite, Target};
use wallcross::io::{emit, seeded_rng, svg, DiagramDocument, ProductDocument, ReportDocument, SeedDocument, ThetaDocument};
use wallcross::lattice_seed::{c_vectors, FixedData};
use wallcross::poly_ring::Laurent;
use wallcross::scattering::chambers::chamber;
use wallcross::scattering::{mutate_diagram, scatter, Diagram};
use wallcross::theta::{expand_in_theta_basis, g_vector, generic_basepoint, theta_in, theta_product};
use wallcross::{Error, Seed};

#[derive(Parser)]
#[command(name = "wallcross", version, about = "Exact cluster scattering diagrams and theta functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SeedArgs {
    /// seed document (JSON)
    seed: PathBuf,
    /// use principal coefficients
    #[arg(long)]
    principal: bool,
}

#[derive(Args)]
struct OutArg {
    /// write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the consistent diagram to a given order
    Scatter {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 6)]
        order: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Theta function by broken lines
    Theta {
        #[command(flatten)]
        seed: SeedArgs,
        /// initial exponent, comma separated
        #[arg(long, allow_hyphen_values = true)]
        m0: String,
        #[arg(long, default_value_t = 6)]
        order: u32,
        /// mutation path (comma separated, 0-based) of the chamber holding the basepoint
        #[arg(long, default_value = "")]
        basepoint_chamber: String,
        #[arg(long, default_value_t = 0)]
        seed_rng: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Structure constants of a theta product
    Product {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        seed_rng: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// g-vector of a cluster monomial at the end of a mutation path
    Gvector {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value = "")]
        path: String,
        /// exponents in the far seed's cluster variables
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// c-vectors after a mutation path
    Cvectors {
        seed: PathBuf,
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Mutate a diagram document
    Mutate {
        diagram: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Expand a Laurent polynomial in the theta basis
    Expand {
        #[command(flatten)]
        seed: SeedArgs,
        /// polynomial such as "A1^-1 + A1^-1*A2"
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[arg(long, default_value = "")]
        basepoint_chamber: String,
        #[arg(long, default_value_t = 0)]
        seed_rng: u64,
    },
    /// Run verification suites
    Verify {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        seed_rng: u64,
        /// check this diagram instead of building one
        #[arg(long)]
        diagram: Option<PathBuf>,
        /// mutation depth for the cluster-theta suite
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// include wall-clock timings in the report
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Draw a diagram slice as SVG
    Svg {
        diagram: PathBuf,
        #[arg(long, default_value = "0,1")]
        plane: String,
        #[arg(long, default_value_t = 3.0)]
        window: f64,
        #[command(flatten)]
        out: OutArg,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Document(_) | Error::InvalidData(_) | Error::Invalid(_) | Error::FrozenIndex(_) | Error::NotInjective => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn read(p: &Path) -> Res<String> {
    std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn write(out: &OutArg, text: &str) -> Res<()> {
    match &out.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ints<T: std::str::FromStr>(s: &str, what: &str) -> Res<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("bad {what}: '{s}'")))).collect()
}

fn vector(s: &str, rank: usize, what: &str) -> Res<Vec<i64>> {
    let v: Vec<i64> = ints(s, what)?;
    if v.len() != rank {
        return Err(Failure::Usage(format!("{what} needs {rank} entries")));
    }
    Ok(v)
}

struct Loaded {
    doc: SeedDocument,
    base: FixedData,
    fd: FixedData,
    seed: Seed,
}

fn load(a: &SeedArgs) -> Res<Loaded> {
    let doc = SeedDocument::parse(&read(&a.seed)?)?;
    let base = doc.fixed_data()?;
    let (fd, seed) = doc.load(a.principal)?;
    Ok(Loaded { doc, base, fd, seed })
}

fn diagram_for(l: &Loaded, order: u32) -> Res<Diagram> {
    Ok(scatter(&l.fd, &l.seed, order)?)
}

fn run(cli: Cli) -> Res<bool> {
    match cli.cmd {
        Cmd::Scatter { seed, order, out } => {
            let l = load(&seed)?;
            let d = diagram_for(&l, order)?;
            write(&out, &emit(&DiagramDocument::of(&d, &l.doc.name, seed.principal)))?;
        }
        Cmd::Theta { seed, m0, order, basepoint_chamber, seed_rng, out } => {
            let l = load(&seed)?;
            let m0 = vector(&m0, l.fd.rank(), "m0")?;
            let path: Vec<usize> = ints(&basepoint_chamber, "chamber path")?;
            let d = diagram_for(&l, order)?;
            let cone = chamber(&l.fd, &l.seed, &path, 1)?;
            let mut t = theta_in(&d, &m0, &cone, order, &mut seeded_rng(seed_rng))?;
            t.chamber = Some(path);
            write(&out, &emit(&ThetaDocument::of(&t, &l.doc.name, seed.principal)))?;
        }
        Cmd::Product { seed, p1, p2, order, seed_rng, out } => {
            let l = load(&seed)?;
            let (p1, p2) = (vector(&p1, l.fd.rank(), "p1")?, vector(&p2, l.fd.rank(), "p2")?);
            let d = diagram_for(&l, order)?;
            // sort the arguments so that swapping them gives identical output
            let (a, b) = if p1 <= p2 { (&p1, &p2) } else { (&p2, &p1) };
            let table = theta_product(&d, a, b, order, &mut seeded_rng(seed_rng))?;
            write(&out, &emit(&ProductDocument::of(&l.doc.name, a, b, order, &table)))?;
        }
        Cmd::Gvector { seed, path, m } => {
            let l = load(&seed)?;
            let path: Vec<usize> = ints(&path, "path")?;
            let m = vector(&m, l.fd.rank(), "m")?;
            let g = g_vector(&l.fd, &l.seed, &path, &m)?;
            println!("{}", json_line(&g));
        }
        Cmd::Cvectors { seed, path } => {
            let doc = SeedDocument::parse(&read(&seed)?)?;
            let fd = doc.fixed_data()?;
            let path: Vec<usize> = ints(&path, "path")?;
            let c = c_vectors(&fd, &Seed::identity(fd.rank()), &path)?;
            for row in c {
                println!("{}", json_line(&row));
            }
        }
        Cmd::Mutate { diagram, k, out } => {
            let doc = DiagramDocument::parse(&read(&diagram)?)?;
            let d = mutate_diagram(&doc.diagram()?, k)?;
            write(&out, &emit(&DiagramDocument::of(&d, &doc.fixed_data.name, doc.principal)))?;
        }
        Cmd::Expand { seed, poly, order, basepoint_chamber, seed_rng } => {
            let l = load(&seed)?;
            let rank = l.fd.rank();
            let naming = wallcross::io::documents::naming(rank, seed.principal);
            let g = Laurent::parse(&poly, rank, naming)?;
            let path: Vec<usize> = ints(&basepoint_chamber, "chamber path")?;
            let d = diagram_for(&l, order)?;
            let cone = chamber(&l.fd, &l.seed, &path, 1)?;
            let x = generic_basepoint(&d, &cone, &mut seeded_rng(seed_rng))?;
            let ex = expand_in_theta_basis(&g, &d, &x, order)?;
            let mut l2 = Laurent::zero();
            for (e, c) in ex {
                l2.add_term(e, c);
            }
            print!("{}", emit(&terms_of(&l2)));
        }
        Cmd::Verify { seed, suite, order, seed_rng, diagram, depth, timings, out } => {
            let suites = Suite::parse(&suite).ok_or_else(|| Failure::Usage(format!("unknown suite '{suite}'")))?;
            let l = load(&seed)?;
            let d = match diagram {
                Some(p) => DiagramDocument::parse(&read(&p)?)?.diagram()?,
                None => diagram_for(&l, order)?,
            };
            let opts = Options { order, rng_seed: seed_rng, cluster_depth: depth, timings, ..Options::default() };
            let target = Target { base: l.base, fd: d.fd.clone(), seed: d.seed.clone(), diagram: d };
            let checks: Vec<CheckResult> = verify::run(&target, &suites, &opts);
            let rep = ReportDocument::new(&l.doc.name, order, seed_rng, checks);
            write(&out, &emit(&rep))?;
            return Ok(rep.pass);
        }
        Cmd::Svg { diagram, plane, window, out } => {
            let doc = DiagramDocument::parse(&read(&diagram)?)?;
            let p: Vec<usize> = ints(&plane, "plane")?;
            if p.len() != 2 {
                return Err(Failure::Usage("plane needs two indices".into()));
            }
            if !(window >= 0.0 && window.is_finite()) {
                return Err(Failure::Usage("window must be a nonnegative number".into()));
            }
            let text = svg::render(&doc.diagram()?, (p[0], p[1]), window, doc.principal)?;
            write(&out, &text)?;
        }
    }
    Ok(true)
}

fn json_line(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("WALLCROSS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // an error here only means the pool was already set up
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
