use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use topocode::codec::{decode_packet, encode_packet, DecodeWarning};
use topocode::metrics::Scheme;
use topocode::transport::Order;
use topocode::{diagram_of, GrayImage, Orientation};
use topocode_sim::datasets::{load_idx, parse_pgm};
use topocode_sim::experiment::parse_pattern;
use topocode_sim::{read_manifest, run, write_run, Dataset, Experiment, ExperimentSpec, HarnessError};

#[derive(Parser)]
#[command(name = "topocode", version, about = "Topological sidecar codes for image transmission")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-alpha distances for a few images under line noise.
    DetectSingle(ExperimentArgs),
    /// Per-image, per-alpha distances and acceptance fractions.
    DetectBatch(ExperimentArgs),
    /// Every scheme at one SNR: PSNR, SSIM, Wasserstein distance, packet length.
    CorrectCompare(ExperimentArgs),
    /// `correct-compare` across a list of SNRs, with per-scheme means.
    SnrSweep(ExperimentArgs),
    /// Packs an image and its diagram into a packet.
    Encode(EncodeArgs),
    /// Unpacks a packet into a PGM image and prints its diagram.
    Decode(DecodeArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// Rerun the experiment recorded in this manifest; other flags except
    /// `--out` are ignored.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// `synthetic[:seed]`, `idx:<file>` or `pgm:<dir>`.
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    images: Option<usize>,
    /// Comma-separated SNRs in dB.
    #[arg(long, value_delimiter = ',')]
    snr: Option<Vec<f64>>,
    /// `all`, `pixels:<fraction>` or `lines:<fraction>`.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Wasserstein order, a number >= 1 or `inf`.
    #[arg(long)]
    order: Option<String>,
    /// Comma-separated subset of uncoded, topocode, topocode-no-boundary, ldpc, conv.
    #[arg(long, value_delimiter = ',')]
    schemes: Option<Vec<String>>,
    /// `superlevel` or `sublevel`.
    #[arg(long)]
    orientation: Option<String>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for results.csv, summary.csv and manifest.json.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EncodeArgs {
    /// Binary PGM image, or an IDX file together with `--index`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    index: Option<usize>,
    #[arg(long, default_value = "superlevel")]
    orientation: String,
    /// Accepted for interface symmetry; encoding is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Accepted for interface symmetry; decoding is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the payload as a binary PGM.
    #[arg(long)]
    out: PathBuf,
}

fn invalid(msg: String) -> HarnessError {
    HarnessError::ConfigInvalid(msg)
}

fn parse_orientation(s: &str) -> Result<Orientation, HarnessError> {
    match s {
        "superlevel" => Ok(Orientation::Superlevel),
        "sublevel" => Ok(Orientation::Sublevel),
        _ => Err(invalid(format!("orientation {s:?} must be superlevel or sublevel"))),
    }
}

fn build_spec(experiment: Experiment, a: &ExperimentArgs) -> Result<ExperimentSpec, HarnessError> {
    if let Some(path) = &a.manifest {
        let spec = read_manifest(path)?;
        if spec.experiment != experiment {
            return Err(invalid(format!(
                "manifest records {}, not {experiment}",
                spec.experiment
            )));
        }
        return Ok(spec);
    }
    let mut spec = ExperimentSpec::new(experiment);
    if let Some(d) = &a.dataset {
        spec.dataset = Dataset::parse(d)?;
    }
    if let Some(n) = a.images {
        spec.images = n;
    }
    if let Some(s) = &a.snr {
        spec.snrs = s.clone();
    }
    if let Some(p) = &a.pattern {
        spec.pattern = parse_pattern(p)?;
    }
    if let Some(al) = &a.alphas {
        spec.alphas = al.clone();
    }
    if let Some(e) = a.epsilon {
        spec.epsilon = e;
    }
    if let Some(o) = &a.order {
        spec.order = o.parse::<Order>().map_err(invalid)?;
    }
    if let Some(s) = &a.schemes {
        spec.schemes = s
            .iter()
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<Scheme>().map_err(invalid))
            .collect::<Result<_, _>>()?;
    }
    if let Some(o) = &a.orientation {
        spec.orientation = parse_orientation(o)?;
    }
    if let Some(g) = a.gamma {
        spec.gamma = g;
    }
    if let Some(s) = a.step {
        spec.step = s;
    }
    if let Some(i) = a.iterations {
        spec.iterations = i;
    }
    if let Some(s) = a.seed {
        spec.seed = s;
    }
    spec.validate()?;
    Ok(spec)
}

fn run_experiment(experiment: Experiment, a: &ExperimentArgs) -> Result<(), HarnessError> {
    let spec = build_spec(experiment, a)?;
    let output = run(&spec)?;
    let files = write_run(&a.out, &spec, &output)?;
    println!(
        "{}",
        json!({
            "experiment": experiment.name(),
            "rows": output.rows.len(),
            "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        })
    );
    Ok(())
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, HarnessError> {
    if !path.exists() {
        return Err(HarnessError::DatasetNotFound {
            path: path.to_path_buf(),
        });
    }
    fs::read(path).map_err(HarnessError::io(format!("reading {}", path.display())))
}

fn load_one(input: &Path, index: Option<usize>) -> Result<GrayImage, HarnessError> {
    match index {
        Some(i) => load_idx(input)?
            .into_iter()
            .nth(i)
            .ok_or_else(|| invalid(format!("index {i} is past the end of {}", input.display()))),
        None => parse_pgm(input, &read_bytes(input)?),
    }
}

fn encode(a: &EncodeArgs) -> Result<(), HarnessError> {
    let image = load_one(&a.input, a.index)?;
    let orientation = parse_orientation(&a.orientation)?;
    let diagram = diagram_of(&image, orientation).expect("loaded images are valid");
    let bytes = encode_packet(
        image.width(),
        image.height(),
        &image.to_bytes(),
        &diagram,
        orientation,
    )?;
    fs::write(&a.out, &bytes).map_err(HarnessError::io(format!("writing {}", a.out.display())))?;
    println!(
        "{}",
        json!({
            "width": image.width(),
            "height": image.height(),
            "finite_pairs": diagram.finite_count(),
            "essential": diagram.essential_count(),
            "packet_bytes": bytes.len(),
            "out": a.out.display().to_string(),
        })
    );
    Ok(())
}

fn decode(a: &DecodeArgs) -> Result<(), HarnessError> {
    let packet = decode_packet(&read_bytes(&a.input)?)?;
    let mut pgm = format!("P5\n{} {}\n255\n", packet.width, packet.height).into_bytes();
    pgm.extend_from_slice(&packet.payload);
    fs::write(&a.out, &pgm).map_err(HarnessError::io(format!("writing {}", a.out.display())))?;
    let groups: Vec<_> = packet
        .diagram
        .groups()
        .map(|(h, g)| {
            json!({
                "dim": h,
                "finite": g.finite.iter().map(|p| [p.birth, p.death]).collect::<Vec<_>>(),
                "essential": g.essential.iter().map(|e| e.birth).collect::<Vec<_>>(),
            })
        })
        .collect();
    let warnings: Vec<_> = packet
        .warnings
        .iter()
        .map(|w| match w {
            DecodeWarning::DegeneratePair { group, offset, .. } => {
                json!({"kind": "degenerate-pair", "group": group, "offset": offset})
            }
        })
        .collect();
    println!(
        "{}",
        json!({
            "width": packet.width,
            "height": packet.height,
            "orientation": match packet.orientation {
                Orientation::Sublevel => "sublevel",
                Orientation::Superlevel => "superlevel",
            },
            "groups": groups,
            "warnings": warnings,
            "out": a.out.display().to_string(),
        })
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::DetectSingle(a) => run_experiment(Experiment::DetectSingle, a),
        Command::DetectBatch(a) => run_experiment(Experiment::DetectBatch, a),
        Command::CorrectCompare(a) => run_experiment(Experiment::CorrectCompare, a),
        Command::SnrSweep(a) => run_experiment(Experiment::SnrSweep, a),
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            ExitCode::from(1)
        }
    }
}
