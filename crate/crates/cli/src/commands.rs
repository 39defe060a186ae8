//! Implementations of the four subcommands.

use std::path::{Path, PathBuf};

use dpi_core::dpi2d::{binarize, blockwise_dpi};
use dpi_core::imaging::{
    field_to_gray_image, load_image, save_image, save_matrix, synth_texture, to_grayscale,
    RasterImage, TextureKind,
};
use dpi_core::phase1d::{pairwise_dpi_matrix, ChannelSet, Signal1D};
use dpi_core::rotation::estimate_rotation;
use serde_json::json;

use crate::{CliError, CliResult, Dpi1dArgs, Dpi2dArgs, RotateArgs, SynthArgs, SynthKind};

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn internal<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Internal(format!("{what}: {e}"))
}

fn prepare_out_dir(out: &str) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(out);
    std::fs::create_dir_all(&dir)
        .map_err(|e| input(format!("cannot create output directory {out}: {e}")))?;
    Ok(dir)
}

fn write_manifest(dir: &Path, manifest: &serde_json::Value) -> CliResult {
    let text = serde_json::to_string_pretty(manifest).map_err(internal("manifest encoding"))?;
    std::fs::write(dir.join("manifest.json"), text + "\n")
        .map_err(internal("writing manifest.json"))?;
    Ok(())
}

/// Parse a headered numeric CSV into per-channel columns. Errors carry
/// 1-based row/column context; the header is row 1.
fn parse_csv(path: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {path}: {e}")))?;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| input(format!("{path} is empty")))?;
    let labels: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(input(format!("{path}: empty label in header row")));
    }
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); labels.len()];
    for (lineno, line) in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != labels.len() {
            return Err(input(format!(
                "{path}: row {} has {} cells, expected {}",
                lineno + 1,
                cells.len(),
                labels.len()
            )));
        }
        for (c, cell) in cells.iter().enumerate() {
            let v = cell.trim().parse::<f64>().map_err(|_| {
                input(format!(
                    "{path}: row {} column {}: non-numeric cell {:?}",
                    lineno + 1,
                    c + 1,
                    cell.trim()
                ))
            })?;
            columns[c].push(v);
        }
    }
    if columns[0].is_empty() {
        return Err(input(format!("{path}: no data rows")));
    }
    Ok((labels, columns))
}

fn window_to_samples(
    window: (f64, f64),
    rate: f64,
    total: usize,
) -> Result<(usize, usize), CliError> {
    let (start, end) = window;
    if !(start.is_finite() && end.is_finite()) || start < 0.0 || end <= start {
        return Err(input(format!(
            "window {start},{end} must satisfy 0 <= start < end"
        )));
    }
    let s0 = (start * rate).round() as usize;
    let s1 = (end * rate).round() as usize;
    if s1 > total {
        return Err(input(format!(
            "window {start},{end} s extends past the {:.6} s signal; trailing windows are not padded",
            total as f64 / rate
        )));
    }
    if s1 - s0 < 2 {
        return Err(input(format!("window {start},{end} s holds fewer than 2 samples")));
    }
    Ok((s0, s1))
}

pub fn run_dpi1d(args: &Dpi1dArgs) -> CliResult {
    let dir = prepare_out_dir(&args.out)?;
    if !(args.rate.is_finite() && args.rate > 0.0) {
        return Err(input(format!("sample rate must be positive, got {}", args.rate)));
    }
    let (labels, columns) = parse_csv(&args.input)?;
    if labels.len() < 2 {
        return Err(input(format!(
            "{} has {} channel(s); pairwise analysis needs at least 2",
            args.input,
            labels.len()
        )));
    }
    let total = columns[0].len();
    let windows = if args.windows.is_empty() {
        vec![(0.0, total as f64 / args.rate)]
    } else {
        args.windows.clone()
    };

    let mut outputs = Vec::new();
    for (k, &window) in windows.iter().enumerate() {
        let (s0, s1) = window_to_samples(window, args.rate, total)?;
        let channels = columns
            .iter()
            .map(|col| Signal1D::new(col[s0..s1].to_vec(), args.rate))
            .collect::<dpi_core::Result<Vec<_>>>()?;
        let set = ChannelSet::new(channels, labels.clone())?;
        let matrix = pairwise_dpi_matrix(&set, args.band.0, args.band.1)?;
        let name = format!("dpi_window_{k}.txt");
        save_matrix(&dir.join(&name), labels.len(), labels.len(), matrix.values())
            .map_err(internal("writing matrix"))?;
        outputs.push(name);
    }

    let manifest = json!({
        "command": "dpi1d",
        "input": args.input,
        "rate_hz": args.rate,
        "band_hz": [args.band.0, args.band.1],
        "windows_s": windows.iter().map(|w| vec![w.0, w.1]).collect::<Vec<_>>(),
        "labels": labels,
        "outputs": outputs,
        "seed": serde_json::Value::Null,
    });
    write_manifest(&dir, &manifest)
}

pub fn run_dpi2d(args: &Dpi2dArgs) -> CliResult {
    let dir = prepare_out_dir(&args.out)?;
    let a = to_grayscale(&load_image(Path::new(&args.image_a))?)?;
    let b = to_grayscale(&load_image(Path::new(&args.image_b))?)?;
    if a.shape() != b.shape() {
        return Err(input(format!(
            "image sizes differ: {} is {}x{}, {} is {}x{}",
            args.image_a,
            a.rows(),
            a.cols(),
            args.image_b,
            b.rows(),
            b.cols()
        )));
    }
    let matrix = blockwise_dpi(&a, &b, args.ns)?;
    let mask = binarize(&matrix)?;

    save_matrix(&dir.join("dpi_matrix.txt"), args.ns, args.ns, matrix.values())
        .map_err(internal("writing dpi_matrix.txt"))?;
    let mask_values: Vec<f64> = mask.flags().iter().map(|&b| f64::from(u8::from(b))).collect();
    save_matrix(&dir.join("mask.txt"), args.ns, args.ns, &mask_values)
        .map_err(internal("writing mask.txt"))?;
    std::fs::write(dir.join("threshold.txt"), format!("{}\n", mask.threshold()))
        .map_err(internal("writing threshold.txt"))?;

    let heatmap = render_mask_heatmap(&matrix, &mask, a.rows(), a.cols())?;
    save_image(&heatmap, &dir.join("heatmap.png")).map_err(internal("writing heatmap.png"))?;

    let manifest = json!({
        "command": "dpi2d",
        "image_a": args.image_a,
        "image_b": args.image_b,
        "ns": args.ns,
        "threshold": mask.threshold(),
        "outputs": ["dpi_matrix.txt", "mask.txt", "threshold.txt", "heatmap.png"],
        "seed": serde_json::Value::Null,
    });
    write_manifest(&dir, &manifest)
}

/// Two-color rendering of the binary mask at full image resolution:
/// red for cells without a significant difference, green for flagged
/// cells.
fn render_mask_heatmap(
    matrix: &dpi_core::dpi2d::DPIMatrix,
    mask: &dpi_core::dpi2d::BinaryMask,
    height: usize,
    width: usize,
) -> Result<RasterImage, CliError> {
    const RED: [f64; 3] = [0.78, 0.18, 0.14];
    const GREEN: [f64; 3] = [0.19, 0.62, 0.25];
    let mut values = vec![0.0; height * width * 3];
    for (bounds, &flag) in matrix.block_bounds().iter().zip(mask.flags()) {
        let color = if flag { GREEN } else { RED };
        for i in bounds.row_start..bounds.row_end {
            for j in bounds.col_start..bounds.col_end {
                let base = (i * width + j) * 3;
                values[base..base + 3].copy_from_slice(&color);
            }
        }
    }
    RasterImage::new(height, width, 3, values).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn run_rotate(args: &RotateArgs) -> CliResult {
    let dir = prepare_out_dir(&args.out)?;
    let reference = to_grayscale(&load_image(Path::new(&args.reference))?)?;
    let target = to_grayscale(&load_image(Path::new(&args.target))?)?;
    let estimate = estimate_rotation(&reference, &target, args.step)?;

    std::fs::write(
        dir.join("estimate.txt"),
        format!("{} {}\n", estimate.angle_deg, estimate.score),
    )
    .map_err(internal("writing estimate.txt"))?;
    let mut curve = String::new();
    for &(angle, score) in &estimate.curve {
        curve.push_str(&format!("{angle} {score}\n"));
    }
    std::fs::write(dir.join("score_curve.txt"), curve)
        .map_err(internal("writing score_curve.txt"))?;

    let manifest = json!({
        "command": "rotate",
        "reference": args.reference,
        "target": args.target,
        "step_deg": args.step,
        "angle_deg": estimate.angle_deg,
        "score": estimate.score,
        "outputs": ["estimate.txt", "score_curve.txt"],
        "seed": serde_json::Value::Null,
    });
    write_manifest(&dir, &manifest)
}

pub fn run_synth(args: &SynthArgs) -> CliResult {
    let dir = prepare_out_dir(&args.out)?;
    let (kind, params) = match args.kind {
        SynthKind::PlaneWave => (
            TextureKind::PlaneWave {
                k1: args.k1,
                k2: args.k2,
            },
            json!({"k1": args.k1, "k2": args.k2}),
        ),
        SynthKind::GaussianBlobs => (
            TextureKind::GaussianBlobs {
                count: args.count,
                sigma_min: args.sigma_min,
                sigma_max: args.sigma_max,
            },
            json!({"count": args.count, "sigma_min": args.sigma_min, "sigma_max": args.sigma_max}),
        ),
        SynthKind::FilteredNoise => (
            TextureKind::FilteredNoise { cutoff: args.cutoff },
            json!({"cutoff": args.cutoff}),
        ),
    };
    let field = synth_texture(args.height, args.width, &kind, args.seed)?;
    let image = field_to_gray_image(&field)?;
    save_image(&image, &dir.join("texture.png")).map_err(internal("writing texture.png"))?;

    let manifest = json!({
        "command": "synth",
        "kind": format!("{:?}", args.kind),
        "height": args.height,
        "width": args.width,
        "params": params,
        "seed": args.seed,
        "outputs": ["texture.png"],
    });
    write_manifest(&dir, &manifest)
}
