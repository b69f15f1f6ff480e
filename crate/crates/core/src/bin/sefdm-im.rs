use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use sefdm_im::channel::{frequency_response, ChannelKind, MultipathChannel};
use sefdm_im::constellation::alphabets_csv;
use sefdm_im::harness::{
    ccdf_csv, preset, preset_names, run_ber_sweep, run_papr, Coding, SimConfig,
};
use sefdm_im::ldpc::build_code;
use sefdm_im::metrics::{complexity, grid, spectral_efficiency};
use sefdm_im::pattern::make_scheme;
use sefdm_im::sefdm::correlation_matrix;
use sefdm_im::SchemeSpec64;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "sefdm-im", version, about = "SEFDM with index modulation: link simulation and tables")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// BER versus Eb/N0 sweep.
    Ber(BerArgs),
    /// CCDF of the block PAPR.
    Papr(PaprArgs),
    /// Print the activation-pattern table of a scheme.
    Patterns(PatternArgs),
    /// Spectral efficiency and detector complexity of every preset.
    Tables(TableArgs),
    /// Channel frequency response or the subcarrier correlation matrix.
    Response(ResponseArgs),
    /// Export the LDPC parity-check matrix in alist format.
    Alist(AlistArgs),
    /// List preset names.
    Presets,
}

#[derive(Args)]
struct Common {
    /// Preset name, e.g. se1.1/im2.
    #[arg(long)]
    preset: Option<String>,
    /// JSON configuration file; overrides --preset.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BerArgs {
    #[command(flatten)]
    common: Common,
    /// Grid as start:stop:step in dB.
    #[arg(long)]
    ebn0: Option<String>,
    #[arg(long)]
    channel: Option<ChannelKind>,
    /// Disable channel coding (hard minimum-Ψ detection).
    #[arg(long)]
    uncoded: bool,
    #[arg(long)]
    min_errors: Option<u64>,
    #[arg(long)]
    max_bits: Option<u64>,
    /// Stop the sweep after the first point below this average BER.
    #[arg(long)]
    ber_floor: Option<f64>,
    #[arg(long)]
    max_log: bool,
}

#[derive(Args)]
struct PaprArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 100_000)]
    symbols: usize,
}

#[derive(Args)]
struct PatternArgs {
    /// Preset name, or a scheme name (tra, im1, im2, im3, m1, m2, ofdm-im)
    /// combined with --se.
    #[arg(long)]
    scheme: String,
    #[arg(long, default_value = "0.75")]
    se: String,
    #[arg(long)]
    csv: bool,
    /// Also print the constellation points.
    #[arg(long)]
    alphabets: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Spectral-efficiency table.
    #[arg(long)]
    se: bool,
    /// Complexity table.
    #[arg(long)]
    complexity: bool,
}

#[derive(Args)]
struct ResponseArgs {
    /// `paper3tap` for the multipath response.
    #[arg(long)]
    channel: Option<ChannelKind>,
    #[arg(long, default_value_t = 512)]
    points: usize,
    /// Print the correlation matrix `C` instead.
    #[arg(long)]
    matrix: bool,
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[arg(long, default_value_t = 0.8)]
    alpha: f64,
}

#[derive(Args)]
struct AlistArgs {
    #[arg(long, default_value_t = 648)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad number `{p}` in grid")))
        .collect::<Result<_>>()?;
    match parts.as_slice() {
        [x] => Ok(vec![*x]),
        [a, b] => Ok(grid(*a, *b, 1.0)),
        [a, b, s] if *s > 0.0 && b >= a => Ok(grid(*a, *b, *s)),
        _ => bail!("grid must be start:stop[:step] with a positive step"),
    }
}

fn load_config(common: &Common) -> Result<SimConfig> {
    let mut cfg = match (&common.config, &common.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            SimConfig::from_json(&text)?
        }
        (None, Some(name)) => preset(name)?,
        (None, None) => bail!("one of --preset or --config is required"),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.output = Some(out.display().to_string());
    }
    Ok(cfg)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ber(args: BerArgs) -> Result<()> {
    let mut cfg = load_config(&args.common)?;
    if let Some(g) = &args.ebn0 {
        cfg.ebn0_db = parse_grid(g)?;
    }
    if let Some(ch) = args.channel {
        cfg.channel = ch;
    }
    if args.uncoded {
        cfg.coding = Coding::None;
    }
    if let Some(v) = args.min_errors {
        cfg.stop.min_errors = v;
    }
    if let Some(v) = args.max_bits {
        cfg.stop.max_bits = v;
    }
    if args.ber_floor.is_some() {
        cfg.stop.ber_floor = args.ber_floor;
    }
    cfg.max_log |= args.max_log;
    cfg.validate()?;
    let result = run_ber_sweep(&cfg)?;
    eprintln!("{} points in {:.1} s", result.points.len(), result.wall_clock_s);
    emit(args.common.out.as_ref(), &result.to_csv())
}

fn papr(args: PaprArgs) -> Result<()> {
    let cfg = load_config(&args.common)?;
    let curve = run_papr(&cfg, args.symbols)?;
    eprintln!("PAPR at CCDF 1e-2: {:.3} dB", curve.quantile_db(1e-2));
    emit(args.common.out.as_ref(), &ccdf_csv(&cfg, &curve))
}

fn patterns(args: PatternArgs) -> Result<()> {
    let name = if args.scheme.contains('/') {
        args.scheme.clone()
    } else {
        format!("se{}/{}", args.se, args.scheme.to_ascii_lowercase())
    };
    let cfg = preset(&name)?;
    let scheme: SchemeSpec64 = make_scheme(cfg.scheme)?;
    let mut out = if args.csv {
        scheme.table_csv()
    } else {
        format!("{}\n{}", scheme.label(), scheme.table_text())
    };
    if args.alphabets {
        out.push('\n');
        out += &alphabets_csv();
    }
    print!("{out}");
    Ok(())
}

fn tables(args: TableArgs) -> Result<()> {
    let (se, cx) = if !args.se && !args.complexity { (true, true) } else { (args.se, args.complexity) };
    let mut out = String::new();
    if se {
        out += "preset,scheme,se_uncoded,se_coded\n";
        for name in preset_names() {
            let cfg = preset(name)?;
            let s: SchemeSpec64 = make_scheme(cfg.scheme)?;
            let _ = writeln!(
                out,
                "{name},{},{:.4},{:.4}",
                s.label(),
                spectral_efficiency(&s, 1.0),
                spectral_efficiency(&s, cfg.coding.rate())
            );
        }
    }
    if cx {
        if se {
            out.push('\n');
        }
        out += "preset,scheme,se,theta,theta_raw\n";
        for name in preset_names() {
            let cfg = preset(name)?;
            let s: SchemeSpec64 = make_scheme(cfg.scheme)?;
            let c = complexity(&s);
            let _ = writeln!(
                out,
                "{name},{},{:.4},{},{}",
                s.label(),
                spectral_efficiency(&s, cfg.coding.rate()),
                c.theta,
                c.raw
            );
        }
    }
    print!("{out}");
    Ok(())
}

fn response(args: ResponseArgs) -> Result<()> {
    let mut out = String::new();
    if args.matrix {
        let c = correlation_matrix::<f64>(args.n, args.alpha)?;
        out += "row,col,re,im,abs\n";
        for (r, col, z) in c.matrix().iter_entries() {
            let _ = writeln!(out, "{r},{col},{:.12},{:.12},{:.12}", z.re, z.im, z.norm());
        }
    } else {
        let ch = match args.channel.unwrap_or(ChannelKind::Paper3tap) {
            ChannelKind::Paper3tap => MultipathChannel::paper_three_tap(),
            ChannelKind::Awgn => MultipathChannel::identity(),
        };
        out += "bin,freq,re,im,mag_db\n";
        for (i, h) in frequency_response(&ch, args.points)?.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i},{:.6},{:.9},{:.9},{:.4}",
                i as f64 / args.points as f64,
                h.re,
                h.im,
                20.0 * h.norm().max(1e-300).log10()
            );
        }
    }
    print!("{out}");
    Ok(())
}

fn alist(args: AlistArgs) -> Result<()> {
    let code = build_code(args.n, args.seed)?;
    emit(args.out.as_ref(), &code.to_alist())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Ber(a) => ber(a),
        Cmd::Papr(a) => papr(a),
        Cmd::Patterns(a) => patterns(a),
        Cmd::Tables(a) => tables(a),
        Cmd::Response(a) => response(a),
        Cmd::Alist(a) => alist(a),
        Cmd::Presets => {
            preset_names().iter().for_each(|n| println!("{n}"));
            Ok(())
        }
    }
}
