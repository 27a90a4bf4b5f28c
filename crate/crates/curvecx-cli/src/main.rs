use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use curvecx::cache::{self, Cache};
use curvecx::complexes::Kind;
use curvecx::curve::{enumerate_curves, CurveClass, Filter};
use curvecx::harness::{induced_images, Realizer};
use curvecx::homology::algebraic_pairing;
use curvecx::intersection::geometric_intersection;
use curvecx::mcg::{MappingClassWord, MappingClasses};
use curvecx::suites::{run_suite, RunConfig};
use curvecx::surface::{build_punctured_sphere, build_standard_surface, Signature, Triangulation};

const SUITE_HELP: &str = "\
Suites:
  lemma-2.2       induced maps send pants decompositions to pants decompositions
  lemma-2.3       induced maps preserve adjacency and 4-curves
  lemma-2.4       induced maps preserve pants-bounding triples and peripheral pairs
  lemma-2.5       a decomposition and its image are topologically equivalent
  lemma-2.6       intersection-one certificates: soundness, and completeness for
                  pairs of weight at most W-2
  lemma-2.7       induced maps preserve intersection one and certificates
  lemma-3.6       induced maps preserve geometric two with algebraic zero
  lemma-4.1       extension from nonseparating curves agrees with the induced map
  thm-4.4-kernel  the hyperelliptic involution of the closed genus-two surface
                  fixes every curve
  engine-oracles  intersection numbers and twists against independent oracles

Induced-map suites sample 50 words with lengths in 1..=L from --seed.
The exit code is 1 when a check fails.";

#[derive(Parser)]
#[command(name = "curvecx", version, about = "Simple closed curves on triangulated surfaces and finite slices of their curve complexes")]
struct Cli {
    /// Cache directory for slices (CURVECX_CACHE takes precedence).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe the standard triangulation of a surface.
    Surface {
        /// Genus and number of punctures, as g,p.
        #[arg(long)]
        surface: Signature,
    },
    /// List curve classes with normal coordinates at most W.
    Enumerate {
        #[arg(long)]
        surface: Signature,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        /// all, nonseparating or separating.
        #[arg(long, default_value = "all")]
        filter: Filter,
    },
    /// Geometric and algebraic intersection of two classes given by
    /// comma-separated normal coordinates.
    Intersect {
        #[arg(long)]
        surface: Signature,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Build a slice of C, N or G and print it.
    Complex {
        #[arg(long)]
        surface: Signature,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        #[arg(long, default_value = "C")]
        kind: Kind,
    },
    /// Run a verification suite.
    #[command(after_help = SUITE_HELP)]
    Verify {
        /// Suite id.
        name: Option<String>,
        /// Suite id, as a flag.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        surface: Signature,
        #[arg(long, default_value_t = 3)]
        weight: u32,
        /// Maximum length of sampled words.
        #[arg(long, default_value_t = 8)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a short word inducing the same map as a given word.
    Realize {
        #[arg(long)]
        surface: Signature,
        #[arg(long, default_value_t = 3)]
        weight: u32,
        /// Bound on the length of the witness.
        #[arg(long, default_value_t = 6)]
        length: usize,
        /// Word to realize, e.g. "t0 T3 a1"; a seeded random word of length
        /// at most 4 otherwise.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn surface(sig: Signature) -> Result<Triangulation> {
    let t = if sig.genus == 0 { build_punctured_sphere(sig.punctures as usize)? } else { build_standard_surface(sig)? };
    Ok(t)
}

fn parse_coords(t: &Triangulation, s: &str) -> Result<CurveClass> {
    let v: Vec<u32> = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("bad coordinates {s:?}"))?;
    if v.len() != t.num_edges() {
        bail!("expected {} coordinates, got {}", t.num_edges(), v.len());
    }
    Ok(CurveClass::from_coords(t, &v)?)
}

fn parse_word(s: &str) -> Result<MappingClassWord> {
    let gens = s.split_whitespace().map(|g| g.parse()).collect::<std::result::Result<Vec<_>, String>>();
    Ok(MappingClassWord(gens.map_err(anyhow::Error::msg)?))
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(k) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    let cache_dir = std::env::var_os("CURVECX_CACHE").map(PathBuf::from).or(cli.cache);
    let cache = cache_dir.map(Cache::new);
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Surface { surface: sig } => {
            let t = surface(sig)?;
            match fmt {
                Format::Json => println!("{}", serde_json::to_string_pretty(&t.to_json())?),
                Format::Dot => {
                    println!("graph dual {{");
                    for e in 0..t.num_edges() {
                        let [a, b] = t.edge_sides[e];
                        println!("  t{} -- t{} [label=\"e{e}\"];", a / 3, b / 3);
                    }
                    println!("}}");
                }
                Format::Text => {
                    println!("surface {sig}: {} triangles, {} edges, {} vertices", t.num_triangles(), t.num_edges(), t.num_vertices);
                    println!("punctures at vertices {:?}", t.punctures);
                    println!("euler characteristic {}", t.euler_characteristic());
                    println!("hash {}", t.hash());
                    if sig.genus >= 1 {
                        let mc = MappingClasses::new(&t)?;
                        println!("{} symmetries", mc.autos.len());
                        for (k, c) in mc.family.iter().enumerate() {
                            println!("twist curve {k}: {:?}", c.coords);
                        }
                    }
                }
            }
        }
        Cmd::Enumerate { surface: sig, weight, filter } => {
            let t = surface(sig)?;
            let cs = enumerate_curves(&t, weight, filter)?;
            match fmt {
                Format::Json => {
                    let v: Vec<_> = cs.iter().map(|c| json!({"coords": c.coords, "nonseparating": c.flags.nonseparating})).collect();
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
                _ => {
                    for c in &cs {
                        let kind = if c.flags.nonseparating { "nonseparating" } else { "separating" };
                        println!("{:?} {kind}", c.coords);
                    }
                    println!("{} classes", cs.len());
                }
            }
        }
        Cmd::Intersect { surface: sig, a, b } => {
            let t = surface(sig)?;
            let (a, b) = (parse_coords(&t, &a)?, parse_coords(&t, &b)?);
            let i = geometric_intersection(&t, &a, &b);
            let alg = algebraic_pairing(&t, &a, &b);
            match fmt {
                Format::Json => println!("{}", json!({"a": a.coords, "b": b.coords, "geometric": i, "algebraic": alg})),
                _ => println!("i = {i}, |a.b| = {alg}"),
            }
        }
        Cmd::Complex { surface: sig, weight, kind } => {
            let t = surface(sig)?;
            let s = cache::slice(cache.as_ref(), &t, weight, kind)?;
            match fmt {
                Format::Json => println!("{}", s.to_json()),
                Format::Dot => print!("{}", s.to_dot()),
                Format::Text => {
                    println!("{kind:?} slice of {sig} at W={weight}: {} vertices, {} edges", s.len(), s.edges.len());
                    if kind != Kind::G {
                        let simplices = s.maximal_simplices()?;
                        let global = simplices.iter().filter(|x| x.globally_maximal).count();
                        println!("{} maximal simplices, {global} of them pants decompositions", simplices.len());
                    }
                }
            }
        }
        Cmd::Verify { name, suite, surface: sig, weight, length, seed } => {
            let id = match (name, suite) {
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => bail!("no suite given; see verify --help"),
            };
            let cfg = RunConfig { signature: sig, weight, length, seed };
            let rep = run_suite(&id, &cfg, cache.as_ref())?;
            match fmt {
                Format::Json => print!("{}", rep.to_json()),
                _ => print!("{}", rep.to_text()),
            }
            return Ok(rep.passed);
        }
        Cmd::Realize { surface: sig, weight, length, word, seed } => {
            let t = surface(sig)?;
            let mc = MappingClasses::new(&t)?;
            let dom = cache::slice(cache.as_ref(), &t, weight, Kind::C)?;
            let w = match word {
                Some(s) => parse_word(&s)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let len = rand::Rng::gen_range(&mut rng, 0..=4);
                    mc.random_word(&mut rng, len)
                }
            };
            let targets = induced_images(&mc, &w, &dom)?;
            let r = Realizer::new(&mc, &dom, length.div_ceil(2))?;
            let found = r.realize(&targets, length)?;
            let witness = found.as_ref().map(|x| x.to_string());
            match fmt {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "direction": "evidence",
                        "signature": sig,
                        "weight": weight,
                        "length": length,
                        "word": w.to_string(),
                        "witness": witness,
                        "domain": dom.len(),
                    }))?
                ),
                _ => match witness {
                    Some(x) => println!("{w} is realized by {x} on all {} vertices", dom.len()),
                    None => println!("no word of length at most {length} realizes {w} (bound-relative)"),
                },
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
