//! The raster supervision pipeline: render the per-image label stack for a
//! two-instance scene, write it as an EDGT tensor, read it back, and decode
//! it into contours again.
//!
//! ```bash
//! cargo run --example label_maps
//! ```

use curvebox::curvefit::ParamMask;
use curvebox::encoder::encode_text;
use curvebox::geometry::polygon_iou;
use curvebox::io::tensor::{read_tensor, write_tensor};
use curvebox::maps::{decode_maps, render_label_maps, DecodeConfig, LabelMaps, MapRenderConfig};
use curvebox::synth;

fn main() -> curvebox::Result<()> {
    let scene = &synth::scenes(1, 7)[0];
    let mask: ParamMask = "3(3)+c".parse()?;
    let labels: Vec<_> = scene
        .polygons
        .iter()
        .map(|p| encode_text(p, &mask, 7))
        .collect::<Result<_, _>>()?;

    let rendered = render_label_maps(
        &labels,
        scene.height as usize,
        scene.width as usize,
        &MapRenderConfig::default(),
    )?;
    let maps = &rendered.maps;
    println!("grid                : {}×{}", maps.height(), maps.width());
    println!("concentric pixels   : {}", maps.concentric.count_above(0.5));
    println!("edge heat max       : {:.3}", maps.edge_heat.max_value());
    println!("param channels      : {}", maps.param_channels());

    let path = std::env::temp_dir().join("curvebox_scene.edgt");
    write_tensor(&maps.to_tensor(), &path)?;
    println!("tensor written      : {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());

    let restored = LabelMaps::from_tensor(&read_tensor(&path)?, mask)?;
    let decoded = decode_maps(&restored, &DecodeConfig::default());
    println!("decoded instances   : {}", decoded.len());
    for (i, gt) in scene.polygons.iter().enumerate() {
        let best = decoded
            .iter()
            .map(|p| polygon_iou(gt, p).value)
            .fold(0.0f64, f64::max);
        println!("instance {i} IoU      : {best:.4}");
    }
    Ok(())
}
