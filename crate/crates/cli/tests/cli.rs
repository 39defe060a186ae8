//! End-to-end tests of the `dpi` binary: each subcommand through real
//! files, plus exit-code behavior on bad input.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;

use dpi_core::field::FieldND;
use dpi_core::imaging::{load_image, load_matrix, save_image, synth_texture, RasterImage, TextureKind};
use dpi_core::rotation::rotate_field;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_dpi")
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dpi-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(bin()).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write_sin_cos_csv(path: &Path, n: usize, rate: f64, freq_hz: f64) {
    let mut text = String::from("s,c\n");
    for m in 0..n {
        let arg = 2.0 * PI * freq_hz * m as f64 / rate;
        text.push_str(&format!("{},{}\n", arg.sin(), arg.cos()));
    }
    std::fs::write(path, text).unwrap();
}

/// Grayscale texture PNG whose 16-bit values are all even, so that exact
/// halving survives quantization.
fn write_even_texture(path: &Path, n: usize, seed: u64) -> RasterImage {
    let field = synth_texture(n, n, &TextureKind::FilteredNoise { cutoff: 0.1 }, seed).unwrap();
    let lo = field.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = field.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let values: Vec<f64> = field
        .values()
        .iter()
        .map(|v| {
            let unit = (v - lo) / (hi - lo);
            let q = ((unit * 65535.0).round() as u32) & !1;
            q as f64 / 65535.0
        })
        .collect();
    let img = RasterImage::new(n, n, 1, values).unwrap();
    save_image(&img, path).unwrap();
    img
}

fn gray_field(path: &Path) -> FieldND {
    dpi_core::imaging::to_grayscale(&load_image(path).unwrap()).unwrap()
}

#[test]
fn dpi1d_sin_cos_gives_quarter_turn_off_diagonal() {
    let dir = temp_dir("d1-sincos");
    let csv = dir.join("sig.csv");
    write_sin_cos_csv(&csv, 2000, 200.0, 2.0);
    let out = dir.join("out");
    let (code, err) = run(&[
        "dpi1d",
        "--input",
        csv.to_str().unwrap(),
        "--rate",
        "200",
        "--band",
        "1,3",
        "--window",
        "0,10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (r, c, values) = load_matrix(&out.join("dpi_window_0.txt")).unwrap();
    assert_eq!((r, c), (2, 2));
    assert_eq!(values[0], 0.0);
    assert_eq!(values[3], 0.0);
    assert!((values[1] - PI / 2.0).abs() < 1e-6);
    assert_eq!(values[1], values[2]);
    assert!(out.join("manifest.json").exists());
}

#[test]
fn dpi1d_duplicate_columns_give_zero() {
    let dir = temp_dir("d1-dup");
    let csv = dir.join("sig.csv");
    let mut text = String::from("a,b\n");
    for m in 0..400 {
        let v = (2.0 * PI * 2.0 * m as f64 / 200.0).sin();
        text.push_str(&format!("{v},{v}\n"));
    }
    std::fs::write(&csv, text).unwrap();
    let out = dir.join("out");
    let (code, _) = run(&[
        "dpi1d",
        "--input",
        csv.to_str().unwrap(),
        "--rate",
        "200",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (_, _, values) = load_matrix(&out.join("dpi_window_0.txt")).unwrap();
    assert!(values.iter().all(|&v| v == 0.0));
}

#[test]
fn dpi1d_rejects_single_channel() {
    let dir = temp_dir("d1-single");
    let csv = dir.join("sig.csv");
    std::fs::write(&csv, "only\n1.0\n2.0\n3.0\n").unwrap();
    let (code, err) = run(&[
        "dpi1d",
        "--input",
        csv.to_str().unwrap(),
        "--rate",
        "10",
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("at least 2"), "{err}");
}

#[test]
fn dpi1d_reports_ragged_and_non_numeric_rows() {
    let dir = temp_dir("d1-bad");
    let csv = dir.join("ragged.csv");
    std::fs::write(&csv, "a,b\n1.0,2.0\n3.0\n").unwrap();
    let (code, err) = run(&[
        "dpi1d",
        "--input",
        csv.to_str().unwrap(),
        "--rate",
        "10",
        "--out",
        dir.join("o1").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("row 3"), "{err}");

    let csv2 = dir.join("nonnum.csv");
    std::fs::write(&csv2, "a,b\n1.0,2.0\n3.0,oops\n").unwrap();
    let (code, err) = run(&[
        "dpi1d",
        "--input",
        csv2.to_str().unwrap(),
        "--rate",
        "10",
        "--out",
        dir.join("o2").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("row 3") && err.contains("column 2"), "{err}");
}

#[test]
fn dpi1d_rejects_window_past_the_end() {
    let dir = temp_dir("d1-window");
    let csv = dir.join("sig.csv");
    write_sin_cos_csv(&csv, 2000, 200.0, 2.0); // 10 s
    let (code, err) = run(&[
        "dpi1d",
        "--input",
        csv.to_str().unwrap(),
        "--rate",
        "200",
        "--window",
        "5,15",
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("extends past"), "{err}");
}

#[test]
fn dpi2d_image_against_itself_is_all_zero_and_unflagged() {
    let dir = temp_dir("d2-self");
    let img = dir.join("tex.png");
    write_even_texture(&img, 64, 3);
    let out = dir.join("out");
    let (code, err) = run(&[
        "dpi2d",
        "--image-a",
        img.to_str().unwrap(),
        "--image-b",
        img.to_str().unwrap(),
        "--ns",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (_, _, values) = load_matrix(&out.join("dpi_matrix.txt")).unwrap();
    assert!(values.iter().all(|&v| v == 0.0));
    let (_, _, mask) = load_matrix(&out.join("mask.txt")).unwrap();
    assert!(mask.iter().all(|&v| v == 0.0));
    assert!(out.join("heatmap.png").exists());
    assert!(out.join("threshold.txt").exists());
}

#[test]
fn dpi2d_is_insensitive_to_halved_intensity() {
    let dir = temp_dir("d2-half");
    let base_path = dir.join("base.png");
    let base = write_even_texture(&base_path, 64, 4);
    let half = RasterImage::new(
        64,
        64,
        1,
        base.values().iter().map(|v| 0.5 * v).collect(),
    )
    .unwrap();
    let half_path = dir.join("half.png");
    save_image(&half, &half_path).unwrap();

    let out = dir.join("out");
    let (code, err) = run(&[
        "dpi2d",
        "--image-a",
        base_path.to_str().unwrap(),
        "--image-b",
        half_path.to_str().unwrap(),
        "--ns",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (_, _, values) = load_matrix(&out.join("dpi_matrix.txt")).unwrap();
    assert!(values.iter().all(|&v| v == 0.0), "{values:?}");
}

#[test]
fn dpi2d_flags_a_modified_block() {
    let dir = temp_dir("d2-block");
    let base_path = dir.join("base.png");
    let base = write_even_texture(&base_path, 64, 5);
    // overwrite the ns=4 cell (0, 1) with an independent texture
    let patch = synth_texture(16, 16, &TextureKind::FilteredNoise { cutoff: 0.2 }, 99).unwrap();
    let mut values = base.values().to_vec();
    for i in 0..16 {
        for j in 0..16 {
            let v = (patch.at2(i, j) * 0.2 + 0.5).clamp(0.0, 1.0);
            values[i * 64 + (16 + j)] = v;
        }
    }
    let modified = RasterImage::new(64, 64, 1, values).unwrap();
    let modified_path = dir.join("modified.png");
    save_image(&modified, &modified_path).unwrap();

    let out = dir.join("out");
    let (code, err) = run(&[
        "dpi2d",
        "--image-a",
        base_path.to_str().unwrap(),
        "--image-b",
        modified_path.to_str().unwrap(),
        "--ns",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (_, _, mask) = load_matrix(&out.join("mask.txt")).unwrap();
    assert_eq!(mask[1], 1.0, "modified cell must be flagged: {mask:?}");
    assert_eq!(mask.iter().filter(|&&v| v == 1.0).count(), 1);
}

#[test]
fn dpi2d_rejects_size_mismatch() {
    let dir = temp_dir("d2-mismatch");
    let a = dir.join("a.png");
    let b = dir.join("b.png");
    write_even_texture(&a, 32, 6);
    write_even_texture(&b, 64, 6);
    let (code, err) = run(&[
        "dpi2d",
        "--image-a",
        a.to_str().unwrap(),
        "--image-b",
        b.to_str().unwrap(),
        "--ns",
        "4",
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("differ"), "{err}");
}

#[test]
fn rotate_identical_images_give_zero_angle() {
    let dir = temp_dir("rot-self");
    let img = dir.join("tex.png");
    write_even_texture(&img, 64, 7);
    let out = dir.join("out");
    let (code, err) = run(&[
        "rotate",
        "--reference",
        img.to_str().unwrap(),
        "--target",
        img.to_str().unwrap(),
        "--step",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(out.join("estimate.txt")).unwrap();
    let fields: Vec<f64> = text
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(fields[0], 0.0);
    assert!(fields[1] >= 1.0 - 1e-9);
    let curve = std::fs::read_to_string(out.join("score_curve.txt")).unwrap();
    assert_eq!(curve.lines().count(), 360);
}

#[test]
fn rotate_recovers_a_quarter_turn_exactly() {
    let dir = temp_dir("rot-90");
    let ref_path = dir.join("ref.png");
    write_even_texture(&ref_path, 64, 8);
    let rotated = rotate_field(&gray_field(&ref_path), 90.0).unwrap();
    let tgt_path = dir.join("tgt.png");
    save_image(
        &RasterImage::new(64, 64, 1, rotated.values().to_vec()).unwrap(),
        &tgt_path,
    )
    .unwrap();

    let out = dir.join("out");
    let (code, err) = run(&[
        "rotate",
        "--reference",
        ref_path.to_str().unwrap(),
        "--target",
        tgt_path.to_str().unwrap(),
        "--step",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(out.join("estimate.txt")).unwrap();
    let angle: f64 = text.split_whitespace().next().unwrap().parse().unwrap();
    assert_eq!(angle, 90.0);
}

#[test]
fn rotate_recovers_a_near_imperceptible_rotation() {
    let dir = temp_dir("rot-354");
    let ref_path = dir.join("ref.png");
    write_even_texture(&ref_path, 128, 9);
    let rotated = rotate_field(&gray_field(&ref_path), 354.0).unwrap();
    let tgt_path = dir.join("tgt.png");
    save_image(
        &RasterImage::new(128, 128, 1, rotated.values().to_vec()).unwrap(),
        &tgt_path,
    )
    .unwrap();

    let out = dir.join("out");
    let (code, err) = run(&[
        "rotate",
        "--reference",
        ref_path.to_str().unwrap(),
        "--target",
        tgt_path.to_str().unwrap(),
        "--step",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(out.join("estimate.txt")).unwrap();
    let angle: f64 = text.split_whitespace().next().unwrap().parse().unwrap();
    assert!((353.0..=355.0).contains(&angle), "estimated {angle}");
}

#[test]
fn rotate_rejects_non_square_images() {
    let dir = temp_dir("rot-rect");
    let img = dir.join("rect.png");
    let field = synth_texture(32, 48, &TextureKind::FilteredNoise { cutoff: 0.1 }, 10).unwrap();
    save_image(
        &dpi_core::imaging::field_to_gray_image(&field).unwrap(),
        &img,
    )
    .unwrap();
    let (code, err) = run(&[
        "rotate",
        "--reference",
        img.to_str().unwrap(),
        "--target",
        img.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("square"), "{err}");
}

#[test]
fn synth_plane_wave_feeds_dpi2d_with_zero_matrix() {
    let dir = temp_dir("synth-pw");
    let tex = dir.join("tex");
    let (code, err) = run(&[
        "synth",
        "--kind",
        "plane-wave",
        "--height",
        "64",
        "--width",
        "64",
        "--k1",
        "8",
        "--k2",
        "0",
        "--out",
        tex.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let png = tex.join("texture.png");
    let out = dir.join("out");
    let (code, _) = run(&[
        "dpi2d",
        "--image-a",
        png.to_str().unwrap(),
        "--image-b",
        png.to_str().unwrap(),
        "--ns",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (_, _, values) = load_matrix(&out.join("dpi_matrix.txt")).unwrap();
    assert!(values.iter().all(|&v| v == 0.0));
}

#[test]
fn synth_feeds_rotate_through_the_cli() {
    let dir = temp_dir("synth-rot");
    let tex = dir.join("tex");
    let (code, err) = run(&[
        "synth",
        "--kind",
        "filtered-noise",
        "--height",
        "128",
        "--width",
        "128",
        "--cutoff",
        "0.1",
        "--seed",
        "11",
        "--out",
        tex.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let png = tex.join("texture.png");
    let rotated = rotate_field(&gray_field(&png), 137.0).unwrap();
    let tgt = dir.join("tgt.png");
    save_image(
        &RasterImage::new(128, 128, 1, rotated.values().to_vec()).unwrap(),
        &tgt,
    )
    .unwrap();
    let out = dir.join("out");
    let (code, _) = run(&[
        "rotate",
        "--reference",
        png.to_str().unwrap(),
        "--target",
        tgt.to_str().unwrap(),
        "--step",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out.join("estimate.txt")).unwrap();
    let angle: f64 = text.split_whitespace().next().unwrap().parse().unwrap();
    assert!((136.0..=138.0).contains(&angle), "estimated {angle}");
}

#[test]
fn synth_rejects_invalid_parameters() {
    let dir = temp_dir("synth-bad");
    let (code, err) = run(&[
        "synth",
        "--kind",
        "filtered-noise",
        "--height",
        "32",
        "--width",
        "32",
        "--cutoff",
        "0",
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("cutoff"), "{err}");
}
