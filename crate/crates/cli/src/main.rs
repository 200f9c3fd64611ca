mod cache;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use weyl_cycles::baselocus::{base_locus_report, effectivity_necessary};
use weyl_cycles::chow::{decompose_two_cycle, intersect_strict_transforms};
use weyl_cycles::dimension::{check_conjecture, h0_p3, wdim};
use weyl_cycles::lattice::{
    cremona_curve, cremona_divisor, cremona_excess, cremona_extra_components, cremona_reduce,
    dm_pairing, intersect_div_curve, pretty_curve, pretty_divisor,
};
use weyl_cycles::oracle::{interpolation_h0, InterpolationProblem, DEFAULT_PRIMES, DEFAULT_SEED};
use weyl_cycles::verify::{self, VerifyConfig};
use weyl_cycles::weyl::WeylSpace;
use weyl_cycles::{CurveClass, DivisorClass, Error, IndexSet};

#[derive(Debug, Parser)]
#[command(name = "weyl", version, about = "Weyl orbits, base loci and dimension counts on blown-up projective spaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Directory for cached catalogs.
    #[arg(long, env = "WEYL_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    /// Always rebuild catalogs in memory.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weyl divisor orbit with its permutation types.
    Orbit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// List every class with its type.
        #[arg(long)]
        list: bool,
    },
    /// Weyl curves of X^3_7 or X^4_8.
    Curves {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// The Weyl surfaces of X^4_8.
    Surfaces,
    /// Dolgachev-Mukai pairing of two divisors, or the product of a divisor and a curve.
    Pairing {
        #[arg(long)]
        d1: DivisorClass,
        #[arg(long, required_unless_present = "curve", conflicts_with = "curve")]
        d2: Option<DivisorClass>,
        #[arg(long)]
        curve: Option<CurveClass>,
    },
    /// Standard Cremona transformation of a divisor or curve class.
    Cremona {
        /// Divisor (`n= s= d= m=`) or curve (`n= s= delta= mu=`) class.
        #[arg(long)]
        class: String,
        /// Base points, e.g. `1,2,3,4`.
        #[arg(long)]
        set: IndexSet,
    },
    /// Greedy Cremona reduction.
    Reduce {
        #[arg(long)]
        divisor: DivisorClass,
    },
    /// Weyl cycles in the base locus.
    Baselocus {
        #[arg(long)]
        divisor: DivisorClass,
    },
    /// Effective cone membership with a certificate.
    Effective {
        #[arg(long)]
        divisor: DivisorClass,
    },
    /// Products on the blow-up of X^4_8 along its Weyl curves.
    Chow {
        #[command(subcommand)]
        action: ChowAction,
    },
    /// Weyl expected dimension.
    Wdim {
        #[arg(long)]
        divisor: DivisorClass,
        #[arg(long)]
        breakdown: bool,
    },
    /// h0 on X^3_7.
    H0 {
        #[arg(long)]
        divisor: DivisorClass,
    },
    /// wdim against the interpolation oracle on X^4_8.
    Conjecture {
        #[arg(long)]
        divisor: DivisorClass,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Corank of the fat-point interpolation matrix.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        mults: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_PRIMES[0])]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Reproduction checks.
    Verify {
        /// Also run the oracle sweeps.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ChowAction {
    /// Class of the intersection of two strict transforms and its surfaces.
    Intersect {
        #[arg(long)]
        d1: DivisorClass,
        #[arg(long)]
        d2: DivisorClass,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { text, ok }) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Error>().is_some_and(|e| {
                matches!(
                    e,
                    Error::Parse(_) | Error::InvalidProblem(_) | Error::InvalidAmbient(_) | Error::InvalidIndexSet(_) | Error::IncompatibleAmbient { .. }
                )
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

struct Outcome {
    text: String,
    ok: bool,
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) -> Result<Outcome> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Table => table(),
    };
    Ok(Outcome { text, ok: true })
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    cli.cache_dir.clone().or_else(default_cache_dir)
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("weyl"))
}

fn space(cli: &Cli, n: usize, s: usize) -> Result<&'static WeylSpace> {
    cache::prepare(cache_dir(cli).as_deref(), n, s)?;
    Ok(WeylSpace::shared(n, s)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Orbit { n, s, list } => {
            let (catalog, _) = cache::load_catalog(cache_dir(cli).as_deref(), *n, *s)?;
            let classes: Vec<_> = if *list {
                catalog
                    .classes()
                    .iter()
                    .zip(catalog.labels())
                    .map(|(c, l)| json!({ "class": c, "type": l.type_id }))
                    .collect()
            } else {
                Vec::new()
            };
            let value = json!({
                "n": n,
                "s": s,
                "count": catalog.len(),
                "types": catalog.types(),
                "classes": if *list { Some(classes) } else { None },
            });
            emit(format, &value, || {
                let mut out = format!("X^{n}_{s}: {} Weyl divisors in {} types\n", catalog.len(), catalog.types().len());
                let _ = writeln!(out, "{:>4} {:>6}  {:<40} description", "type", "count", "representative");
                for t in catalog.types() {
                    let _ = writeln!(
                        out,
                        "{:>4} {:>6}  {:<40} {}",
                        t.id,
                        t.count,
                        pretty_divisor(&t.representative),
                        t.description
                    );
                }
                if *list {
                    for (c, l) in catalog.classes().iter().zip(catalog.labels()) {
                        let _ = writeln!(out, "{:>4}  {}", l.type_id, pretty_divisor(c));
                    }
                }
                out
            })
        }
        Command::Curves { n, s } => {
            let space = space(cli, *n, *s)?;
            let curves = space.curves();
            let rows: Vec<_> = curves
                .classes()
                .iter()
                .map(|c| json!({ "class": c, "species": curves.species(c) }))
                .collect();
            emit(format, &json!({ "n": n, "s": s, "count": curves.len(), "curves": rows }), || {
                let mut out = format!("X^{n}_{s}: {} Weyl curves\n", curves.len());
                for c in curves.classes() {
                    let _ = writeln!(out, "{:<36} {:?}", pretty_curve(c), curves.species(c));
                }
                out
            })
        }
        Command::Surfaces => {
            let space = space(cli, 4, 8)?;
            let rows: Vec<_> = space
                .surfaces()
                .iter()
                .enumerate()
                .map(|(i, surface)| {
                    let (base, pencil) = space.pencil(i);
                    json!({
                        "label": surface.label(),
                        "degree": surface.kind.degree(),
                        "char_cycle": surface.char_cycle,
                        "base_curve": base,
                        "pencil": pencil,
                        "chow_class": surface.chow_class,
                    })
                })
                .collect();
            emit(format, &json!({ "count": rows.len(), "surfaces": rows }), || {
                let mut out = format!("X^4_8: {} Weyl surfaces\n", space.surfaces().len());
                let _ = writeln!(out, "{:<12} {:<32} {:<32} pencil", "surface", "k_S(D) = max{0, -D.C} for C", "base curve");
                for (i, surface) in space.surfaces().iter().enumerate() {
                    let (base, pencil) = space.pencil(i);
                    let _ = writeln!(
                        out,
                        "{:<12} {:<32} {:<32} {}",
                        surface.label(),
                        pretty_curve(&surface.char_cycle),
                        pretty_curve(base),
                        pretty_curve(pencil)
                    );
                }
                out
            })
        }
        Command::Pairing { d1, d2, curve } => {
            let (value, what) = match (d2, curve) {
                (Some(d2), _) => (dm_pairing(d1, d2)?, "<D1,D2>"),
                (None, Some(c)) => (intersect_div_curve(d1, c)?, "D.C"),
                (None, None) => bail!("either --d2 or --curve is required"),
            };
            emit(format, &json!({ "pairing": value }), || format!("{what} = {value}\n"))
        }
        Command::Cremona { class, set } => cremona(format, class, set),
        Command::Reduce { divisor } => {
            let r = cremona_reduce(divisor);
            emit(format, &r, || {
                let steps: Vec<String> = r.steps.iter().map(|s| format!("Cr{s}")).collect();
                let mut out = format!("reduced: {}\n", pretty_divisor(&r.class));
                let _ = writeln!(out, "steps: {}", if steps.is_empty() { "none".into() } else { steps.join(" then ") });
                if r.non_effective {
                    out.push_str("not effective\n");
                }
                out
            })
        }
        Command::Baselocus { divisor } => {
            space(cli, divisor.n(), divisor.s())?;
            let report = base_locus_report(divisor)?;
            emit(format, &report, || {
                let mut out = format!("base locus of {}\n", pretty_divisor(divisor));
                if report.is_empty() {
                    out.push_str("no Weyl cycles\n");
                }
                for e in report.entries() {
                    let _ = writeln!(out, "{:>4} x {}", e.k, e.cycle);
                }
                for v in &report.effectivity {
                    let _ = writeln!(out, "violated: {v}");
                }
                if report.unreliable {
                    out.push_str("warning: not effective, multiplicities are formal\n");
                }
                out
            })
        }
        Command::Effective { divisor } => {
            let space = space(cli, divisor.n(), divisor.s())?;
            let target = divisor.coords();
            let certificate = space.cone().certificate(&target);
            let weights: Vec<_> = certificate
                .iter()
                .flat_map(|c| c.weights.iter())
                .map(|(j, w)| json!({ "generator": space.divisors().classes()[*j], "weight": w.to_string() }))
                .collect();
            let violations = effectivity_necessary(divisor);
            let value = json!({
                "divisor": divisor,
                "effective": certificate.is_some(),
                "certificate": certificate.as_ref().map(|_| weights.clone()),
                "violations": violations,
            });
            emit(format, &value, || {
                let mut out = format!(
                    "{} is {}\n",
                    pretty_divisor(divisor),
                    if certificate.is_some() { "effective" } else { "not effective" }
                );
                if let Some(c) = &certificate {
                    for (j, w) in &c.weights {
                        let _ = writeln!(out, "  {w} x {}", pretty_divisor(&space.divisors().classes()[*j]));
                    }
                }
                for v in &violations {
                    let _ = writeln!(out, "violated: {v}");
                }
                out
            })
        }
        Command::Chow { action: ChowAction::Intersect { d1, d2 } } => {
            let space = space(cli, 4, 8)?;
            let z = intersect_strict_transforms(d1, d2)?;
            let decomposition = decompose_two_cycle(&z, d1, d2, space.surfaces());
            let components: Option<Vec<_>> = decomposition.as_ref().ok().map(|dec| {
                dec.components
                    .iter()
                    .map(|(s, c)| json!({ "surface": s.label(), "coefficient": c }))
                    .collect()
            });
            let value = json!({
                "class": z,
                "decomposition": components,
                "non_unique": decomposition.as_ref().ok().map(|d| d.non_unique),
            });
            let mut outcome = emit(format, &value, || {
                let mut out = format!("class: {z}\n");
                match &decomposition {
                    Ok(dec) => {
                        let terms: Vec<String> = dec
                            .components
                            .iter()
                            .map(|(s, c)| if *c == 1 { s.label() } else { format!("{c} {}", s.label()) })
                            .collect();
                        let _ = writeln!(out, "surfaces: {}", if terms.is_empty() { "none".into() } else { terms.join(" + ") });
                        if dec.non_unique {
                            out.push_str("warning: decomposition is not unique\n");
                        }
                    }
                    Err(e) => {
                        let _ = writeln!(out, "no decomposition: {e}");
                    }
                }
                out
            })?;
            if let Err(e) = &decomposition {
                eprintln!("error: {e}");
                outcome.ok = false;
            }
            Ok(outcome)
        }
        Command::Wdim { divisor, breakdown } => {
            space(cli, divisor.n(), divisor.s())?;
            let w = wdim(divisor)?;
            if *breakdown {
                emit(format, &w, || {
                    let mut out = format!("wdim({}) = {}\nchi = {}\n", pretty_divisor(divisor), w.total, w.chi);
                    for t in &w.contributions {
                        let _ = writeln!(out, "{:>+6}  r={} k={}  {}", t.term, t.r, t.k, t.cycle);
                    }
                    out
                })
            } else {
                emit(format, &json!({ "divisor": divisor, "wdim": w.total }), || format!("{}\n", w.total))
            }
        }
        Command::H0 { divisor } => {
            space(cli, 3, 7)?;
            let r = h0_p3(divisor)?;
            emit(format, &r, || {
                let mut out = format!("h0({}) = {}\n", pretty_divisor(divisor), r.h0);
                if r.effective {
                    let _ = writeln!(
                        out,
                        "reduced to {} in {} steps, wdim {}",
                        pretty_divisor(&r.reduction.class),
                        r.reduction.steps.len(),
                        r.reduced_wdim.unwrap_or_default()
                    );
                } else {
                    out.push_str("not effective\n");
                }
                out
            })
        }
        Command::Conjecture { divisor, primes, seed } => {
            space(cli, 4, 8)?;
            let r = check_conjecture(divisor, primes, *seed)?;
            emit(format, &r, || {
                let w = r.wdim.as_ref().map_or(0, |w| w.total);
                let runs: Vec<String> = r.oracle.runs.iter().map(|x| format!("{} (p={}, seed={})", x.h0, x.prime, x.seed)).collect();
                format!(
                    "{}\neffective: {}\nwdim: {w}\noracle: {}\n{}\n",
                    pretty_divisor(divisor),
                    r.effective,
                    runs.join(", "),
                    if r.agree { "agree" } else { "DISAGREE" }
                )
            })
        }
        Command::Oracle { n, d, mults, prime, seed } => {
            let problem = InterpolationProblem::new(*n, *d, mults.clone(), *prime, *seed)?;
            let h0 = interpolation_h0(&problem)?;
            emit(format, &json!({ "problem": problem, "h0": h0 }), || format!("{h0}\n"))
        }
        Command::Verify { full, trials, seed } => {
            let config = VerifyConfig { trials: *trials, seed: *seed, sweeps: *full, ..VerifyConfig::default() };
            let results = verify::run(&config);
            let ok = results.iter().all(|r| r.passed);
            let mut outcome = emit(format, &json!({ "passed": ok, "checks": results }), || {
                let mut out: String = results.iter().map(|r| format!("{r}\n")).collect();
                let passed = results.iter().filter(|r| r.passed).count();
                let _ = writeln!(out, "{passed}/{} checks passed", results.len());
                out
            })?;
            outcome.ok = ok;
            Ok(outcome)
        }
    }
}

fn cremona(format: Format, class: &str, set: &IndexSet) -> Result<Outcome> {
    if let Ok(divisor) = class.parse::<DivisorClass>() {
        let image = cremona_divisor(&divisor, set)?;
        let extra = cremona_extra_components(&divisor, set)?;
        let c = cremona_excess(&divisor, set);
        let value = json!({ "image": image, "excess": c, "extra_components": extra });
        return emit(format, &value, || {
            let mut out = format!("Cr{set}: {} -> {}\nc = {c}\n", pretty_divisor(&divisor), pretty_divisor(&image));
            for e in &extra {
                let _ = writeln!(out, "contains L{} with multiplicity {}", e.support, e.multiplicity);
            }
            out
        });
    }
    let curve: CurveClass = class
        .parse()
        .with_context(|| format!("{class:?} is neither a divisor nor a curve class"))?;
    let image = cremona_curve(&curve, set)?;
    let contracted = image.delta() < 0;
    emit(format, &json!({ "image": image, "negative": contracted }), || {
        let mut out = format!("Cr{set}: {} -> {}\n", pretty_curve(&curve), pretty_curve(&image));
        if contracted {
            out.push_str("image class is negative: the curve lies in the indeterminacy locus\n");
        }
        out
    })
}
