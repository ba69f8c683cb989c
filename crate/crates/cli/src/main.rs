//! `wpcone`: Weil–Petersson volumes of surfaces with boundaries and cone
//! points, plus numerical verification suites.

mod verify;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use wpcone::conepoints::{ConeSurfaceSpec, ConeVolumes};
use wpcone::kernels::check_angle;
use wpcone::polyalg::SlotLabels;
use wpcone::recursion::SurfaceSignature;
use wpcone::{Config, VolumePolynomial};

#[derive(Parser, Debug)]
#[command(name = "wpcone", version, about = "Weil-Petersson volumes of hyperbolic surfaces with cone points")]
struct Cli {
    /// Optional `key = value` file with caps and tolerances.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest genus to compute (overrides the config file and WPCONE_MAX_GENUS).
    #[arg(long, global = true)]
    max_genus: Option<u32>,
    /// Largest number of boundaries plus cone points.
    #[arg(long, global = true)]
    max_slots: Option<usize>,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Volume polynomial, or its value at given lengths and angles.
    Volume(VolumeArgs),
    /// Volume polynomials of every signature within the given bounds.
    Table(TableArgs),
    /// Volume with one cone point replaced by a cusp (angle 0).
    CuspLimit(CuspArgs),
    /// Numerical verification suites.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
    Csv,
}

#[derive(Args, Debug)]
struct SignatureArgs {
    /// Genus.
    #[arg(long)]
    g: u32,
    /// Number of geodesic boundary components.
    #[arg(long, default_value_t = 0)]
    boundaries: usize,
    /// Number of cone points.
    #[arg(long, default_value_t = 0)]
    cones: usize,
}

#[derive(Args, Debug)]
struct VolumeArgs {
    #[command(flatten)]
    sig: SignatureArgs,
    /// Comma-separated boundary lengths.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lengths: Option<Vec<String>>,
    /// Comma-separated cone angles; `pi`, `pi/2`, `2pi/3` are accepted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    angles: Option<Vec<String>>,
    /// Read angles in degrees.
    #[arg(long)]
    degrees: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    gmax: u32,
    #[arg(long)]
    slotmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CuspArgs {
    #[command(flatten)]
    sig: SignatureArgs,
    /// Cone point to degenerate, counted from 1.
    #[arg(long)]
    slot: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// McShane sums on a one-cone, one-holed or one-cusped torus.
    Mcshane(verify::McShaneArgs),
    /// Kernel first moment and moment integrals against quadrature.
    Kernel(verify::SuiteArgs),
    /// The integral formula for the one-cone torus volume on an angle grid.
    Identity(verify::SuiteArgs),
    /// Direct cone recursion against substitution, and the numeric oracle.
    Recursion(verify::RecursionArgs),
}

/// Failure classes mapped to exit codes 2 and 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl From<wpcone::Error> for CliError {
    fn from(e: wpcone::Error) -> Self {
        if e.is_user_error() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli, &mut out) {
        Ok(()) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            print!("{out}");
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_config(cli: &Cli) -> CliResult<Config> {
    let mut cfg = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    }
    .with_env()?;
    if let Some(g) = cli.max_genus {
        cfg.max_genus = g;
    }
    if let Some(s) = cli.max_slots {
        cfg.max_slots = s;
    }
    if cli.sequential {
        cfg.parallel = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli, out: &mut String) -> CliResult<()> {
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::Volume(a) => volume(cfg, &a, out),
        Command::Table(a) => table(cfg, &a, out),
        Command::CuspLimit(a) => cusp_limit(cfg, &a, out),
        Command::Verify { target } => match target {
            VerifyTarget::Mcshane(a) => verify::mcshane(&a, out),
            VerifyTarget::Kernel(a) => verify::kernel(cfg, &a, out),
            VerifyTarget::Identity(a) => verify::identity(cfg, &a, out),
            VerifyTarget::Recursion(a) => verify::recursion(cfg, &a, out),
        },
    }
}

fn signature(a: &SignatureArgs) -> CliResult<SurfaceSignature> {
    Ok(SurfaceSignature::new(a.g, a.boundaries, a.cones)?)
}

/// A real number, or a multiple of π such as `pi`, `pi/3`, `2pi/3`, `0.5*pi`.
pub fn parse_number(s: &str) -> CliResult<f64> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || CliError::Usage(format!("cannot parse {s:?} as a number (use decimals or multiples of pi)"));
    if !t.contains("pi") {
        return t.parse::<f64>().map_err(|_| bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t.as_str(), 1.0),
    };
    let coeff = num.trim().trim_end_matches("pi").trim().trim_end_matches('*').trim();
    let c = match coeff {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    if !num.trim().ends_with("pi") {
        return Err(bad());
    }
    Ok(c * PI / den)
}

fn parse_values(raw: &Option<Vec<String>>, expected: usize, what: &str) -> CliResult<Vec<f64>> {
    let vals = raw.as_ref().map_or(Ok(Vec::new()), |v| v.iter().map(|s| parse_number(s)).collect())?;
    if vals.len() != expected {
        return Err(CliError::Usage(format!(
            "--{what} must list exactly {expected} value(s), one per {}, got {}",
            if what == "lengths" { "boundary" } else { "cone point" },
            vals.len()
        )));
    }
    Ok(vals)
}

fn render(p: &VolumePolynomial, labels: &SlotLabels, format: Format) -> String {
    match format {
        Format::Json => p.to_json(),
        Format::Latex => p.to_latex(labels),
        Format::Text => p.to_text(labels),
        Format::Csv => p.to_csv(labels).trim_end().to_string(),
    }
}

fn volume(cfg: Config, a: &VolumeArgs, out: &mut String) -> CliResult<()> {
    let sig = signature(&a.sig)?;
    let volumes = ConeVolumes::new(cfg)?;
    if a.lengths.is_none() && a.angles.is_none() {
        let spec = ConeSurfaceSpec::symbolic(sig);
        let p = volumes.volume_polynomial(&spec)?;
        out.push_str(&render(&p, &spec.labels(), a.format));
        out.push('\n');
        return Ok(());
    }
    let lengths = parse_values(&a.lengths, sig.m, "lengths")?;
    let mut angles = parse_values(&a.angles, sig.n, "angles")?;
    if a.degrees {
        angles.iter_mut().for_each(|t| *t *= PI / 180.0);
    }
    for &t in &angles {
        check_angle(t)?;
    }
    let spec = ConeSurfaceSpec::numeric(sig, lengths.clone(), angles.clone());
    let v = volumes.volume_value(&spec)?;
    match a.format {
        Format::Json => out.push_str(
            &json!({"g": sig.g, "boundaries": sig.m, "cones": sig.n, "lengths": lengths, "angles": angles, "value": v})
                .to_string(),
        ),
        Format::Csv => out.push_str(&format!("g,m,n,value\n{},{},{},{v:e}", sig.g, sig.m, sig.n)),
        Format::Latex | Format::Text => out.push_str(&format!("{v:e}")),
    }
    out.push('\n');
    Ok(())
}

/// Stable signatures with `g ≤ gmax`, `1 ≤ m + n ≤ slotmax`, ordered by
/// genus, slot count, then number of cone points.
pub fn table_signatures(gmax: u32, slotmax: usize) -> Vec<SurfaceSignature> {
    let mut out = Vec::new();
    for g in 0..=gmax {
        for slots in 1..=slotmax {
            for n in 0..=slots {
                if let Ok(s) = SurfaceSignature::new(g, slots - n, n) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn table(cfg: Config, a: &TableArgs, out: &mut String) -> CliResult<()> {
    if a.gmax > cfg.max_genus {
        return Err(CliError::Usage(format!("cap exceeded: --gmax {} exceeds the configured maximum genus {}", a.gmax, cfg.max_genus)));
    }
    if a.slotmax > cfg.max_slots {
        return Err(CliError::Usage(format!(
            "cap exceeded: --slotmax {} exceeds the configured maximum {}",
            a.slotmax, cfg.max_slots
        )));
    }
    let volumes = ConeVolumes::new(cfg)?;
    let mut rows = Vec::new();
    for sig in table_signatures(a.gmax, a.slotmax) {
        let spec = ConeSurfaceSpec::symbolic(sig);
        rows.push((sig, spec.labels(), volumes.volume_polynomial(&spec)?));
    }
    match a.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(s, _, p)| json!({"g": s.g, "boundaries": s.m, "cones": s.n, "polynomial": p.to_json_value()}))
                .collect();
            out.push_str(&serde_json::to_string_pretty(&v).expect("table serializes"));
            out.push('\n');
        }
        Format::Latex => {
            for (s, l, p) in &rows {
                out.push_str(&format!("V_{{{},{},{}}} = {}\n", s.g, s.m, s.n, p.to_latex(l)));
            }
        }
        Format::Text => {
            for (s, l, p) in &rows {
                out.push_str(&format!("V({},{},{}) = {}\n", s.g, s.m, s.n, p.to_text(l)));
            }
        }
        Format::Csv => {
            out.push_str("g,m,n,exponents,piexp,coeff\n");
            for (s, _, p) in &rows {
                for t in p.to_json_value().terms {
                    let e: Vec<String> = t.xexp.iter().map(u32::to_string).collect();
                    out.push_str(&format!("{},{},{},{},{},{}\n", s.g, s.m, s.n, e.join(";"), t.piexp, t.coeff));
                }
            }
        }
    }
    Ok(())
}

fn cusp_limit(cfg: Config, a: &CuspArgs, out: &mut String) -> CliResult<()> {
    let sig = signature(&a.sig)?;
    if a.slot == 0 || a.slot > sig.n {
        return Err(CliError::Usage(format!(
            "--slot must name a cone point between 1 and {}, got {}",
            sig.n, a.slot
        )));
    }
    let volumes = ConeVolumes::new(cfg)?;
    let p = volumes.cusp_limit_check(sig, a.slot - 1)?;
    out.push_str(&render(&p, &SlotLabels::new(sig.m, sig.n - 1), a.format));
    out.push('\n');
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_with_pi() {
        assert_eq!(parse_number("pi").unwrap(), PI);
        assert_eq!(parse_number("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_number("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_number("0.5*pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_number("1.25").unwrap(), 1.25);
        assert!(parse_number("pie").is_err());
        assert!(parse_number("x").is_err());
    }

    #[test]
    fn table_enumeration() {
        let sigs = table_signatures(1, 1);
        assert_eq!(sigs, vec![SurfaceSignature::new(1, 1, 0).unwrap(), SurfaceSignature::new(1, 0, 1).unwrap()]);
        assert_eq!(table_signatures(0, 3).len(), 4);
    }
}
