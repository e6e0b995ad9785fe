//! `sepack`: constructions, certificates and tables for totally separable packings.
//!
//! Exit codes: 0 success, 1 negative or unknown result, 2 usage or IO error.

mod body_spec;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use sepack::adomain::{approximate_by_adomain, verify_b_measure};
use sepack::construction::{
    c_formula, csep_formula, csquare_formula, hexagon_hadwiger_witness, max_separable_contact_packing,
    square_hadwiger_witness, CertifiedPacking,
};
use sepack::geom::{body_to_json, packing_from_json, packing_to_json, symmetrize, ConvexBody, Vec2};
use sepack::normed::max_separable_point_set;
use sepack::packing::{certify_total_separability, contact_graph, Certification, Packing};
use sepack::polyomino::{enumerate_fixed, MAX_ENUMERATION};
use sepack::render::render_svg;
use sepack::Error;

use body_spec::BodySpec;

/// Largest `n` accepted by `table`, keeping `28n` well inside `i64`.
const TABLE_MAX: i64 = 1_000_000_000;

#[derive(Parser, Debug)]
#[command(name = "sepack", version, about = "Totally separable packings of planar convex domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Packing of n translates with the maximum separable contact number.
    Pack {
        #[arg(long)]
        body: BodySpec,
        #[arg(long)]
        n: i64,
        /// Packing JSON destination; the certificate goes next to it as `<stem>.cert.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify total separability of a packing file.
    Verify {
        packing: PathBuf,
        /// Extra separation directions, `ax,ay;bx,by`.
        #[arg(long, value_parser = parse_hints)]
        hints: Option<Hints>,
        /// Certificate JSON destination instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Separable Hadwiger number: point-set search for smooth bodies, fixed witnesses for square and hexagon.
    Hadwiger {
        #[arg(long)]
        body: BodySpec,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// TSV of the contact-number formulas: n, separable, disk, square.
    Table {
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
    },
    /// Stream all fixed n-ominoes as JSON lines.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Draw a packing, its contacts and separating lines as SVG.
    Render {
        packing: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_hints)]
        hints: Option<Hints>,
    },
    /// Approximate a smooth o-symmetric body by an affine image of an A-domain.
    Approx {
        #[arg(long)]
        body: BodySpec,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        /// Seed for the B-measure check on the result.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Clone, Debug)]
struct Hints(Vec<Vec2>);

fn parse_hints(s: &str) -> std::result::Result<Hints, String> {
    s.split(';')
        .map(|pair| {
            let v: Vec<f64> = pair
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| format!("bad hint `{pair}`: {e}"))?;
            match v[..] {
                [x, y] if (x, y) != (0.0, 0.0) => Ok(Vec2::new(x, y)),
                _ => Err(format!("hint `{pair}` must be a nonzero `x,y` pair")),
            }
        })
        .collect::<std::result::Result<_, _>>()
        .map(Hints)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SEPACK_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("SEPACK_THREADS must be a positive integer, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn read_packing(path: &Path) -> Result<Packing> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    packing_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn certificate_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.cert.json"))
}

fn emit_certified(c: &CertifiedPacking, out: Option<&Path>) -> Result<()> {
    let packing = packing_to_json(&c.packing);
    let cert = serde_json::to_string(&c.certificate)?;
    match out {
        Some(path) => {
            write_file(path, &format!("{packing}\n"))?;
            write_file(&certificate_path(path), &format!("{cert}\n"))?;
        }
        None => println!("{packing}\n{cert}"),
    }
    Ok(())
}

fn cmd_pack(body: &BodySpec, n: i64, out: Option<&Path>) -> Result<u8> {
    if n < 1 {
        bail!("--n must be at least 1, got {n}");
    }
    let k = body.build()?;
    if !k.is_smooth() {
        bail!("`pack` needs a smooth body; {body} is not smooth");
    }
    let c = max_separable_contact_packing(&k, n as usize)?;
    emit_certified(&c, out)?;
    let contacts = c.contacts.edge_count() as i64;
    let formula = csep_formula(n)?;
    println!("n={n} contacts={contacts} formula={formula} match={}", contacts == formula);
    Ok(if contacts == formula { 0 } else { 1 })
}

fn certify(p: &Packing, hints: Option<&Hints>) -> Result<Certification> {
    Ok(certify_total_separability(p, hints.map_or(&[][..], |h| &h.0))?)
}

fn cmd_verify(path: &Path, hints: Option<&Hints>, out: Option<&Path>) -> Result<u8> {
    let p = read_packing(path)?;
    let g = contact_graph(&p)?;
    println!(
        "translates={} contacts={} triangle_free={} max_degree={}",
        p.len(),
        g.edge_count(),
        g.is_triangle_free(),
        g.max_degree()
    );
    match certify(&p, hints)? {
        Certification::Certified(cert) => {
            let json = serde_json::to_string(&cert)?;
            match out {
                Some(o) => write_file(o, &format!("{json}\n"))?,
                None => println!("{json}"),
            }
            println!("certified");
            Ok(0)
        }
        Certification::NotCertified { i, j } => {
            println!("unknown pair=({i},{j})");
            Ok(1)
        }
    }
}

fn cmd_hadwiger(body: &BodySpec, samples: usize) -> Result<u8> {
    if body.is_witness_polygon() {
        let c = match body {
            BodySpec::Hexagon => hexagon_hadwiger_witness()?,
            _ => square_hadwiger_witness()?,
        };
        emit_certified(&c, None)?;
        println!("size={} certified=true", c.contacts.degree(0));
        return Ok(0);
    }
    let k = body.build()?;
    if !k.is_smooth() {
        bail!("`hadwiger` needs a smooth body, `square` or `hexagon`; got {body}");
    }
    let set = max_separable_point_set(&symmetrize(&k)?, samples)?;
    // Adding zero turns -0.0 into 0.0 for stable output.
    let points: Vec<Vec2> = set.iter().map(|p| p.point + Vec2::ZERO).collect();
    println!("size={}", points.len());
    println!("{}", serde_json::to_string(&points)?);
    Ok(0)
}

fn cmd_table(from: i64, to: i64) -> Result<u8> {
    if !(1..=TABLE_MAX).contains(&from) || !(from..=TABLE_MAX).contains(&to) {
        bail!("need 1 <= --from <= --to <= {TABLE_MAX}, got {from}..{to}");
    }
    let mut w = BufWriter::new(io::stdout().lock());
    writeln!(w, "n\tcsep\tc\tcsquare")?;
    for n in from..=to {
        writeln!(w, "{n}\t{}\t{}\t{}", csep_formula(n)?, c_formula(n)?, csquare_formula(n)?)?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_enumerate(n: usize) -> Result<u8> {
    if !(1..=MAX_ENUMERATION).contains(&n) {
        bail!("--n must lie in 1..={MAX_ENUMERATION}, got {n}");
    }
    let mut w = BufWriter::new(io::stdout().lock());
    for p in enumerate_fixed(n)? {
        writeln!(w, "{}", serde_json::to_string(&p)?)?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_render(path: &Path, out: &Path, hints: Option<&Hints>) -> Result<u8> {
    let p = read_packing(path)?;
    let cert = certify(&p, hints)?;
    write_file(out, &render_svg(&p, cert.certificate())?)?;
    match cert {
        Certification::Certified(_) => println!("certified"),
        Certification::NotCertified { i, j } => println!("unknown pair=({i},{j})"),
    }
    Ok(0)
}

fn cmd_approx(body: &BodySpec, eps: f64, delta: f64, seed: u64, trials: usize) -> Result<u8> {
    let k = body.build()?;
    let a = match approximate_by_adomain(&k, eps, delta) {
        Ok(a) => a,
        Err(e @ Error::Infeasible(_)) => {
            println!("infeasible: {e}");
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let check = verify_b_measure(&a.adomain, trials, seed, 1e-7);
    println!("{}", body_to_json(&ConvexBody::ADomain(a.adomain.clone())));
    println!("{}", serde_json::to_string(&a)?);
    println!(
        "hausdorff={:e} overlap={:.6} b_measure={}",
        a.hausdorff,
        a.overlap_fraction,
        if check.passed() { "ok" } else { "failed" }
    );
    Ok(if a.hausdorff <= eps && a.overlap_fraction >= delta && check.passed() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    configure_threads()?;
    match cli.command {
        Command::Pack { body, n, out } => cmd_pack(&body, n, out.as_deref()),
        Command::Verify { packing, hints, out } => cmd_verify(&packing, hints.as_ref(), out.as_deref()),
        Command::Hadwiger { body, samples } => cmd_hadwiger(&body, samples),
        Command::Table { from, to } => cmd_table(from, to),
        Command::Enumerate { n } => cmd_enumerate(n),
        Command::Render { packing, out, hints } => cmd_render(&packing, &out, hints.as_ref()),
        Command::Approx { body, eps, delta, seed, trials } => cmd_approx(&body, eps, delta, seed, trials),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
