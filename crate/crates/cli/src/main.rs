use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use blockforge::arith::{is_prime, p_part, prime_factors};
use blockforge::blocks::{block_partition, p_sections};
use blockforge::catalog;
use blockforge::group::Group;
use blockforge::hyperfocal::{fusion_equal, hyperfocal_subgroup, HyperfocalCtx};
use blockforge::isometry::{verify_targets, Target, VerifyOptions};
use blockforge::parse::parse_group_text;
use blockforge::session::Session;
use blockforge::Error;
use clap::{Parser, Subcommand, ValueEnum};

/// Exact perfect-isometry certificates for principal blocks with cyclic hyperfocal subgroup.
#[derive(Parser)]
#[command(name = "blockforge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, classes and Sylow data of a group.
    Info { group: String },
    /// Character table, as ζ-notation text or TSV of serialized values.
    Chartab {
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// p-block partition with degrees and defects.
    Blocks {
        group: String,
        #[arg(long)]
        p: u64,
        /// Also list the p-elements up to conjugacy with their centralizer orders.
        #[arg(long)]
        sections: bool,
    },
    /// Hyperfocal subgroup, inertial indices and fusion verdicts.
    Hyperfocal {
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        skip_puig_check: bool,
    },
    /// Whether N_G(P) or N_G(P̃) controls G-fusion in P.
    FusionCheck {
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TargetArg::Both)]
        target: TargetArg,
    },
    /// Build the signed bijection and certify it as a perfect isometry.
    Isometry {
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TargetArg::Both)]
        target: TargetArg,
        /// Write the certificate (or an error object) here as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Check valuation-decided cells under every prime above p.
        #[arg(long)]
        strict_primes: bool,
        #[arg(long)]
        skip_puig_check: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Np,
    Npt,
    Both,
}

impl TargetArg {
    fn targets(self) -> Vec<Target> {
        match self {
            TargetArg::Np => vec![Target::Np],
            TargetArg::Npt => vec![Target::Npt],
            TargetArg::Both => vec![Target::Np, Target::Npt],
        }
    }
}

/// A catalog name, or a path to a group file.
fn load_group(source: &str) -> anyhow::Result<(String, Arc<Group>)> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let (degree, gens) = parse_group_text(&text)?;
        let label = path.file_stem().map_or(source.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((label, Arc::new(Group::new(degree, &gens)?)));
    }
    let entry = catalog::entry(source).ok_or_else(|| Error::UnknownGroup(source.to_string()))?;
    Ok((entry.name.to_string(), entry.build()?))
}

fn check_prime(p: u64) -> Result<u64, Error> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

fn info(source: &str) -> anyhow::Result<bool> {
    let (label, g) = load_group(source)?;
    println!("{label}: degree {}, order {}, exponent {}", g.degree(), g.order(), g.exponent());
    if let Some(e) = catalog::entry(&label) {
        println!("{}", e.description);
    }
    println!("generators:");
    for x in g.gens() {
        println!("  {}", x.to_cycle_string());
    }
    println!("{} conjugacy classes", g.num_classes());
    for p in prime_factors(g.order() as u64) {
        println!("  p = {p}: |P| = {}", p_part(g.order() as u64, p));
    }
    Ok(true)
}

fn chartab(source: &str, format: Format) -> anyhow::Result<bool> {
    let (_, g) = load_group(source)?;
    let session = Session::for_group(&g);
    let t = session.table(&session.register(g))?;
    match format {
        Format::Text => print!("{}", t.to_text()),
        Format::Tsv => print!("{}", t.to_tsv()),
    }
    Ok(true)
}

fn blocks(source: &str, p: u64, sections: bool) -> anyhow::Result<bool> {
    let (label, g) = load_group(source)?;
    let p = check_prime(p)?;
    let session = Session::for_group(&g);
    let g = session.register(g);
    let t = session.table(&g)?;
    let degrees = t.degrees();
    let partition = block_partition(&t, p)?;
    println!("{label} at p = {p}: {} characters in {} blocks", t.len(), partition.len());
    for (i, b) in partition.iter().enumerate() {
        let ds: Vec<String> = b.members.iter().map(|&m| format!("χ{m}({})", degrees[m])).collect();
        let tag = if b.is_principal { " principal" } else { "" };
        println!("  B{i}{tag}: defect {}, k = {}: {}", b.defect, b.len(), ds.join(" "));
    }
    if sections {
        let sylow = g.sylow_subgroup(p)?;
        println!("p-elements up to conjugacy:");
        for be in p_sections(&session, &g, p, &sylow)? {
            println!(
                "  u = {} (order {}): |C_G(u)| = {}, {} section classes",
                be.u.to_cycle_string(),
                be.u.order(),
                be.centralizer.order(),
                be.section_classes.len()
            );
        }
    }
    Ok(true)
}

fn hyperfocal(source: &str, p: u64, skip_puig: bool) -> anyhow::Result<bool> {
    let (label, g) = load_group(source)?;
    let ctx = HyperfocalCtx::for_group(g, check_prime(p)?, skip_puig)?;
    println!("{label} at p = {p}: |P| = {}, |P̃| = {}, e = {}", ctx.sylow.order(), ctx.p_tilde.order(), ctx.e);
    let gens: Vec<String> = ctx.p_tilde.gens().iter().map(|x| x.to_cycle_string()).collect();
    println!("P̃ generated by {}", if gens.is_empty() { "()".to_string() } else { gens.join(", ") });
    if ctx.focal.is_some() {
        println!("focal form agrees with P ∩ O^p(G)");
    }
    println!("|O^p(G)| = {}, |C_P(T)| = {}", ctx.g_tilde.order(), ctx.cpt.order());
    let table = ctx.p_element_table()?;
    println!("inertial indices over p-elements up to conjugacy:");
    let mut seen = Vec::new();
    for d in table.iter().filter(|d| !d.u.is_identity()) {
        let class = ctx.g.class_of_perm(&d.u).expect("P ≤ G");
        if seen.contains(&class) {
            continue;
        }
        seen.push(class);
        println!(
            "  u = {} (order {}): |C_G(u)| = {}, e_u = {}",
            d.u.to_cycle_string(),
            d.u.order(),
            ctx.g.classes()[class].centralizer_order,
            d.e_u
        );
    }
    for (name, h) in [("N_G(P)", ctx.normalizer.clone()), ("N_G(P̃)", ctx.normalizer_of_p_tilde())] {
        let v = fusion_equal(&ctx.g, &h.as_subgroup(), &ctx.sylow)?;
        println!("fusion controlled by {name} (order {}): {}", h.order(), v.holds);
    }
    Ok(true)
}

fn fusion_check(source: &str, p: u64, target: TargetArg) -> anyhow::Result<bool> {
    let (label, g) = load_group(source)?;
    let forms = hyperfocal_subgroup(&g, check_prime(p)?, true)?;
    let mut all = true;
    for t in target.targets() {
        let h = match t {
            Target::Np => g.normalizer(&forms.sylow),
            Target::Npt => g.normalizer(&forms.intersection),
        };
        let v = fusion_equal(&g, &h, &forms.sylow)?;
        println!("{label} p = {p} {}: {} ({} subgroups of P checked)", t.name(), v.holds, v.subgroups_checked);
        if let Some((q, x)) = &v.witness {
            println!("  witness: conjugation by {} on a subgroup of order {}", x.to_cycle_string(), q.order());
        }
        all &= v.holds;
    }
    Ok(all)
}

struct IsometryArgs<'a> {
    source: &'a str,
    p: u64,
    target: TargetArg,
    json: Option<&'a Path>,
    strict: bool,
    skip_puig: bool,
}

fn isometry(a: &IsometryArgs) -> anyhow::Result<bool> {
    let (label, g) = load_group(a.source)?;
    let ctx = HyperfocalCtx::for_group(g, check_prime(a.p)?, a.skip_puig)?;
    let opts = VerifyOptions { label, strict_primes: a.strict };
    let runs = verify_targets(&ctx, &a.target.targets(), &opts)?;
    for v in &runs {
        print!("{}", v.cert.to_text());
    }
    if let Some(path) = a.json {
        let certs: Vec<_> = runs.iter().map(|v| &v.cert).collect();
        let body = match certs.as_slice() {
            [one] => serde_json::to_string_pretty(one)?,
            many => serde_json::to_string_pretty(many)?,
        };
        std::fs::write(path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(runs.iter().all(|v| v.cert.verdict))
}

/// 1: a verdict came out false; 2: bad input; 3: outside the hypotheses; 4: internal failure.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::UnknownGroup(_) | Error::NotPrime(_) | Error::InvalidPermutation(_)) => 2,
        Some(Error::CapExceeded { .. } | Error::HypothesisNotMet(_)) => 3,
        Some(_) => 4,
        None => 2,
    }
}

fn error_object(err: &anyhow::Error) -> serde_json::Value {
    let kind = err.downcast_ref::<Error>().map_or("Io", Error::kind);
    let mut obj = serde_json::json!({ "error": kind, "message": format!("{err:#}") });
    if let Some(Error::Parse { line, column, .. }) = err.downcast_ref::<Error>() {
        obj["line"] = (*line).into();
        obj["column"] = (*column).into();
    }
    obj
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("BLOCKFORGE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let json = match &cli.command {
        Command::Isometry { json, .. } => json.clone(),
        _ => None,
    };
    let result = match &cli.command {
        Command::Info { group } => info(group),
        Command::Chartab { group, format } => chartab(group, *format),
        Command::Blocks { group, p, sections } => blocks(group, *p, *sections),
        Command::Hyperfocal { group, p, skip_puig_check } => hyperfocal(group, *p, *skip_puig_check),
        Command::FusionCheck { group, p, target } => fusion_check(group, *p, *target),
        Command::Isometry { group, p, target, json, strict_primes, skip_puig_check } => isometry(&IsometryArgs {
            source: group,
            p: *p,
            target: *target,
            json: json.as_deref(),
            strict: *strict_primes,
            skip_puig: *skip_puig_check,
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            if let Some(path) = json {
                let body = serde_json::to_string_pretty(&error_object(&err)).expect("json") + "\n";
                if let Err(e) = std::fs::write(&path, body) {
                    eprintln!("error: writing {}: {e}", path.display());
                }
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
