//! Command-line surface over the curve-box toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 internal
//! invariant violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curvebox::curvefit::ParamMask;
use curvebox::decoder::{reconstruct_curve_box, ReconstructionConfig};
use curvebox::encoder::encode_text;
use curvebox::io::svg::{render_svg, SvgShape, SvgStyle};
use curvebox::io::tensor::{read_tensor, write_tensor};
use curvebox::io::{
    parse_annotations, read_ndjson_file, write_ndjson_file, AnnotationFormat, LabelRecord,
    PolygonRecord,
};
use curvebox::losses::{dice_loss, pi_loss, total_loss, truncation_loss, LossWeights, PiMode};
use curvebox::maps::{decode_maps, render_label_maps, DecodeConfig, LabelMaps, MapRenderConfig};
use curvebox::metrics::{fit_report, match_detections, precision_recall_hmean, MatchResult};
use curvebox::synth::{corpus_records, CorpusKind};
use curvebox::TextPolygon;

#[derive(Parser)]
#[command(name = "curvebox", version, about = "Curve-box text representation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode annotations into curve-box labels (and optional label maps).
    Encode(EncodeArgs),
    /// Reconstruct polygons from labels or decode rendered label maps.
    Decode(DecodeArgs),
    /// Sweep mask settings and report reconstruction IoU per setting.
    FitReport(FitReportArgs),
    /// Match predictions against ground truth and report P/R/H-mean.
    Eval(EvalArgs),
    /// Reference loss values between two label files.
    Loss(LossArgs),
    /// Render polygons into an SVG overlay.
    Render(RenderArgs),
    /// Generate seeded synthetic ribbon corpora.
    Synth(SynthArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Input annotation file.
    input: PathBuf,
    /// Output label file (NDJSON).
    output: PathBuf,
    /// Annotation format: canonical-json, icdar-quad, or poly14.
    #[arg(long, default_value = "canonical-json")]
    format: String,
    /// Parameter mask, e.g. 2(2)+c or 4(3).
    #[arg(long, default_value = "2(2)+c")]
    mask: String,
    /// Samples per edge used for fitting.
    #[arg(long, default_value_t = 7)]
    k: usize,
    /// Also render label maps into this directory, one EDGT tensor per image.
    #[arg(long)]
    maps_dir: Option<PathBuf>,
    /// Concentric shrink ratio.
    #[arg(long, default_value_t = 0.7)]
    shrink_ratio: f64,
    /// Edge heat sigma as a fraction of chord length.
    #[arg(long, default_value_t = 0.05)]
    sigma_frac: f64,
    /// Curve samples per edge for map rendering.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Args)]
struct DecodeArgs {
    /// Labels NDJSON file, an EDGT tensor, or a directory of tensors.
    input: PathBuf,
    /// Output polygon file (NDJSON).
    output: PathBuf,
    /// Parameter mask of tensor inputs.
    #[arg(long, default_value = "2(2)+c")]
    mask: String,
    /// Concentric-map confidence threshold for tensor inputs.
    #[arg(long, default_value_t = 0.5)]
    conf_threshold: f32,
    /// Reconstruction samples per edge.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Args)]
struct FitReportArgs {
    /// Annotation corpus (canonical NDJSON).
    #[arg(long)]
    corpus: PathBuf,
    /// Comma-separated mask settings, e.g. 1(1),2(2),2(2)+c.
    #[arg(long)]
    settings: String,
    /// Reconstruction samples per edge.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Predicted polygons (NDJSON).
    #[arg(long)]
    pred: PathBuf,
    /// Ground-truth polygons (NDJSON).
    #[arg(long)]
    gt: PathBuf,
    /// IoU threshold for a true positive.
    #[arg(long, default_value_t = 0.5)]
    iou: f64,
}

#[derive(Args)]
struct LossArgs {
    /// Predicted labels (NDJSON).
    #[arg(long)]
    pred: PathBuf,
    /// Ground-truth labels (NDJSON).
    #[arg(long)]
    gt: PathBuf,
    /// Proportional-integral sample count.
    #[arg(long, default_value_t = 100)]
    pi_samples: usize,
    /// normalized (Riemann sum) or literal (plain sum).
    #[arg(long, default_value = "normalized")]
    mode: String,
    /// Edge heat sigma fraction for the segmentation term.
    #[arg(long, default_value_t = 0.05)]
    sigma_frac: f64,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

#[derive(Args)]
struct RenderArgs {
    /// Predicted polygons (NDJSON).
    #[arg(long)]
    pred: PathBuf,
    /// Optional ground truth; enables IoU quality tiers and green contours.
    #[arg(long)]
    gt: Option<PathBuf>,
    /// Image size as HxW, e.g. 512x512.
    #[arg(long)]
    size: String,
    /// Restrict to one image id (default: first record).
    #[arg(long)]
    image_id: Option<String>,
    /// Output SVG path.
    output: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    /// Corpus kind: straight, quadratic, cubic, sinusoid, noisy-rect, scene.
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output annotation file (canonical NDJSON).
    #[arg(long)]
    out: PathBuf,
}

/// Failure category driving the process exit code.
#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

/// Errors raised while reading or interpreting user inputs.
fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Errors raised by stages that only see already-validated state.
fn internal_err(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Decode(args) => cmd_decode(args),
        Command::FitReport(args) => cmd_fit_report(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Loss(args) => cmd_loss(args),
        Command::Render(args) => cmd_render(args),
        Command::Synth(args) => cmd_synth(args),
    }
}

fn parse_mask(s: &str) -> Result<ParamMask, CliError> {
    s.parse().map_err(input_err)
}

fn cmd_encode(args: EncodeArgs) -> Result<(), CliError> {
    let format: AnnotationFormat = args.format.parse().map_err(input_err)?;
    let mask = parse_mask(&args.mask)?;
    let records = parse_annotations(&args.input, format).map_err(input_err)?;

    let mut out = Vec::with_capacity(records.len());
    let mut skipped_ignored = 0usize;
    for record in &records {
        let mut labels = Vec::new();
        for (idx, text) in record.texts.iter().enumerate() {
            if text.ignore {
                skipped_ignored += 1;
                continue;
            }
            let label = encode_text(&text.polygon, &mask, args.k).map_err(|e| {
                input_err(format!(
                    "image {:?}, text {idx}: {e}",
                    record.image_id
                ))
            })?;
            labels.push(label);
        }
        out.push(LabelRecord {
            image_id: record.image_id.clone(),
            size: record.size,
            labels,
        });
    }
    write_ndjson_file(&args.output, &out).map_err(internal_err)?;

    if let Some(dir) = &args.maps_dir {
        std::fs::create_dir_all(dir).map_err(input_err)?;
        let cfg = MapRenderConfig {
            shrink_ratio: args.shrink_ratio,
            sigma_frac: args.sigma_frac,
            samples: args.samples,
        };
        for record in &out {
            let (h, w) = record.size;
            let rendered = render_label_maps(&record.labels, h as usize, w as usize, &cfg)
                .map_err(internal_err)?;
            if !rendered.skipped.is_empty() {
                eprintln!(
                    "warning: image {:?}: {} instance(s) too small for the map grid",
                    record.image_id,
                    rendered.skipped.len()
                );
            }
            let path = dir.join(format!("{}.edgt", record.image_id));
            write_tensor(&rendered.maps.to_tensor(), &path).map_err(internal_err)?;
        }
    }
    if skipped_ignored > 0 {
        eprintln!("skipped {skipped_ignored} ignored text(s)");
    }
    println!(
        "encoded {} image(s) -> {}",
        out.len(),
        args.output.display()
    );
    Ok(())
}

fn decode_tensor_file(
    path: &Path,
    mask: &ParamMask,
    cfg: &DecodeConfig,
) -> Result<PolygonRecord, CliError> {
    let tensor = read_tensor(path).map_err(input_err)?;
    let maps = LabelMaps::from_tensor(&tensor, mask.clone()).map_err(input_err)?;
    let polygons = decode_maps(&maps, cfg);
    let image_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".into());
    Ok(PolygonRecord { image_id, polygons })
}

fn cmd_decode(args: DecodeArgs) -> Result<(), CliError> {
    let reconstruction = ReconstructionConfig::new(args.samples).map_err(input_err)?;
    let is_tensor = args
        .input
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("edgt"));

    let records: Vec<PolygonRecord> = if args.input.is_dir() {
        let mask = parse_mask(&args.mask)?;
        let cfg = DecodeConfig {
            conf_threshold: args.conf_threshold,
            reconstruction,
            ..DecodeConfig::default()
        };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&args.input)
            .map_err(input_err)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("edgt")))
            .collect();
        paths.sort();
        paths
            .iter()
            .map(|p| decode_tensor_file(p, &mask, &cfg))
            .collect::<Result<_, _>>()?
    } else if is_tensor {
        let mask = parse_mask(&args.mask)?;
        let cfg = DecodeConfig {
            conf_threshold: args.conf_threshold,
            reconstruction,
            ..DecodeConfig::default()
        };
        vec![decode_tensor_file(&args.input, &mask, &cfg)?]
    } else {
        let label_records: Vec<LabelRecord> =
            read_ndjson_file(&args.input).map_err(input_err)?;
        label_records
            .iter()
            .map(|record| {
                let polygons = record
                    .labels
                    .iter()
                    .map(|label| {
                        reconstruct_curve_box(label, &reconstruction)
                            .map(|rec| rec.polygon)
                            .map_err(|e| {
                                input_err(format!("image {:?}: {e}", record.image_id))
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(PolygonRecord {
                    image_id: record.image_id.clone(),
                    polygons,
                })
            })
            .collect::<Result<_, CliError>>()?
    };

    write_ndjson_file(&args.output, &records).map_err(internal_err)?;
    println!(
        "decoded {} image(s) -> {}",
        records.len(),
        args.output.display()
    );
    Ok(())
}

/// Splits a settings list on commas that sit outside parentheses, so
/// explicit degree lists like 4(1,3) survive.
fn split_settings(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn cmd_fit_report(args: FitReportArgs) -> Result<(), CliError> {
    let settings = split_settings(&args.settings)
        .iter()
        .map(|s| parse_mask(s))
        .collect::<Result<Vec<_>, _>>()?;
    if settings.is_empty() {
        return Err(CliError::Input("no mask settings given".into()));
    }
    let records = parse_annotations(&args.corpus, AnnotationFormat::CanonicalJson)
        .map_err(input_err)?;
    let corpus: Vec<TextPolygon> = records
        .iter()
        .flat_map(|r| r.texts.iter())
        .filter(|t| !t.ignore)
        .map(|t| t.polygon.clone())
        .collect();
    if corpus.is_empty() {
        return Err(CliError::Input("corpus contains no usable polygons".into()));
    }
    let cfg = ReconstructionConfig::new(args.samples).map_err(input_err)?;
    let report = fit_report(&corpus, &settings, &cfg);
    print!("{}", report.to_table());
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&report).map_err(internal_err)?;
        curvebox::io::write_atomic(path, json.as_bytes()).map_err(internal_err)?;
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let preds: Vec<PolygonRecord> = read_ndjson_file(&args.pred).map_err(input_err)?;
    let gts: Vec<PolygonRecord> = read_ndjson_file(&args.gt).map_err(input_err)?;

    let mut total = MatchResult::empty();
    for gt in &gts {
        let empty = Vec::new();
        let pred_polys = preds
            .iter()
            .find(|p| p.image_id == gt.image_id)
            .map(|p| &p.polygons)
            .unwrap_or(&empty);
        total.accumulate(&match_detections(pred_polys, &gt.polygons, args.iou));
    }
    // Predictions for images absent from the ground truth are all false
    // positives.
    for pred in &preds {
        if !gts.iter().any(|g| g.image_id == pred.image_id) {
            total.fp += pred.polygons.len();
        }
    }

    let (p, r, h) = precision_recall_hmean(&total);
    println!(
        "precision {p:.2}  recall {r:.2}  hmean {h:.2}  (TP={} FP={} FN={})",
        total.tp, total.fp, total.fn_
    );
    Ok(())
}

fn cmd_loss(args: LossArgs) -> Result<(), CliError> {
    let mode = match args.mode.as_str() {
        "normalized" => PiMode::Normalized,
        "literal" => PiMode::Literal,
        other => return Err(CliError::Input(format!("unknown pi mode {other:?}"))),
    };
    let weights = LossWeights::new(args.alpha, args.beta, args.gamma).map_err(input_err)?;
    let preds: Vec<LabelRecord> = read_ndjson_file(&args.pred).map_err(input_err)?;
    let gts: Vec<LabelRecord> = read_ndjson_file(&args.gt).map_err(input_err)?;

    let mut pi_terms = Vec::new();
    let mut trun_terms = Vec::new();
    let mut bep_terms = Vec::new();
    for gt in &gts {
        let Some(pred) = preds.iter().find(|p| p.image_id == gt.image_id) else {
            return Err(CliError::Input(format!(
                "prediction file lacks image {:?}",
                gt.image_id
            )));
        };
        if pred.labels.len() != gt.labels.len() {
            return Err(CliError::Input(format!(
                "image {:?}: {} predicted vs {} ground-truth labels",
                gt.image_id,
                pred.labels.len(),
                gt.labels.len()
            )));
        }
        for (pl, gl) in pred.labels.iter().zip(&gt.labels) {
            let top = pi_loss(gl.theta_top(), pl.theta_top(), args.pi_samples, mode)
                .map_err(input_err)?;
            let bottom = pi_loss(gl.theta_bottom(), pl.theta_bottom(), args.pi_samples, mode)
                .map_err(input_err)?;
            pi_terms.push((top + bottom) / 2.0);
            trun_terms.push(truncation_loss(pl.truncation(), gl.truncation()));
        }

        // Segmentation term: predicted edge band against the binarized
        // ground-truth band.
        let (h, w) = gt.size;
        let cfg = MapRenderConfig {
            sigma_frac: args.sigma_frac,
            ..MapRenderConfig::default()
        };
        let pred_maps =
            render_label_maps(&pred.labels, h as usize, w as usize, &cfg).map_err(input_err)?;
        let gt_maps =
            render_label_maps(&gt.labels, h as usize, w as usize, &cfg).map_err(input_err)?;
        let gt_bin: Vec<f32> = gt_maps
            .maps
            .edge_heat
            .data()
            .iter()
            .map(|&v| f32::from(v >= 0.3))
            .collect();
        bep_terms.push(
            dice_loss(pred_maps.maps.edge_heat.data(), &gt_bin, 1.0).map_err(internal_err)?,
        );
    }

    let mean = |v: &[f64]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let l_edge = mean(&pi_terms);
    let l_trun = mean(&trun_terms);
    let l_bep = mean(&bep_terms);
    let total = total_loss(l_edge, l_trun, l_bep, &weights);
    println!("l_edge {l_edge:.6}  l_trun {l_trun:.6}  l_bep {l_bep:.6}  total {total:.6}");
    println!(
        "{}",
        serde_json::json!({
            "l_edge": l_edge,
            "l_trun": l_trun,
            "l_bep": l_bep,
            "total": total,
        })
    );
    Ok(())
}

fn parse_size(s: &str) -> Result<(u32, u32), CliError> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::Input(format!("size must look like HxW, got {s:?}")))?;
    let h = h
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad height in {s:?}")))?;
    let w = w
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad width in {s:?}")))?;
    Ok((h, w))
}

fn cmd_render(args: RenderArgs) -> Result<(), CliError> {
    let (h, w) = parse_size(&args.size)?;
    let preds: Vec<PolygonRecord> = read_ndjson_file(&args.pred).map_err(input_err)?;
    let pick = |records: &[PolygonRecord]| -> Option<PolygonRecord> {
        match &args.image_id {
            Some(id) => records.iter().find(|r| &r.image_id == id).cloned(),
            None => records.first().cloned(),
        }
    };
    let Some(pred) = pick(&preds) else {
        return Err(CliError::Input("no matching prediction record".into()));
    };

    let gt = match &args.gt {
        Some(path) => {
            let records: Vec<PolygonRecord> = read_ndjson_file(path).map_err(input_err)?;
            records.into_iter().find(|r| r.image_id == pred.image_id)
        }
        None => None,
    };

    let mut shapes = Vec::new();
    if let Some(gt) = &gt {
        for poly in &gt.polygons {
            shapes.push(SvgShape {
                polygon: poly.clone(),
                style: SvgStyle::GroundTruth,
            });
        }
    }
    for poly in &pred.polygons {
        let iou = gt
            .as_ref()
            .map(|gt| {
                gt.polygons
                    .iter()
                    .map(|g| curvebox::geometry::polygon_iou(poly, g).value)
                    .fold(0.0f64, f64::max)
            })
            .unwrap_or(1.0);
        shapes.push(SvgShape {
            polygon: poly.clone(),
            style: SvgStyle::Prediction { iou },
        });
    }
    render_svg(h, w, &shapes, &args.output).map_err(internal_err)?;
    println!("rendered {} shape(s) -> {}", shapes.len(), args.output.display());
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<(), CliError> {
    let kind: CorpusKind = args.kind.parse().map_err(input_err)?;
    let records = corpus_records(kind, args.count, args.seed);
    write_ndjson_file(&args.out, &records).map_err(internal_err)?;
    println!(
        "wrote {} record(s) ({}) -> {}",
        records.len(),
        args.kind,
        args.out.display()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settings_split_respects_parens() {
        assert_eq!(
            split_settings("1(1),2(2)+c,4(1,3)"),
            vec!["1(1)", "2(2)+c", "4(1,3)"]
        );
    }

    #[test]
    fn size_parsing() {
        assert_eq!(parse_size("512x640").unwrap(), (512, 640));
        assert!(parse_size("512").is_err());
    }

    #[test]
    fn error_categories_map_to_exit_codes() {
        use curvebox::error::Error;
        assert_eq!(input_err(Error::DegenerateChord).code(), 2);
        assert_eq!(internal_err(Error::SingularFit).code(), 3);
    }
}
