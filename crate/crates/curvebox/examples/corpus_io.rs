//! Corpus formats: the canonical NDJSON annotation format, dataset-style
//! converters, and label serialization.
//!
//! ```bash
//! cargo run --example corpus_io
//! ```

use curvebox::encoder::encode_text;
use curvebox::io::{
    from_ndjson, parse_annotations, to_ndjson, write_ndjson_file, AnnotationFormat,
    AnnotationRecord, LabelRecord,
};
use curvebox::synth::{corpus_records, CorpusKind};

fn main() -> curvebox::Result<()> {
    let dir = std::env::temp_dir().join("curvebox_corpus_io");
    std::fs::create_dir_all(&dir)?;

    // Canonical NDJSON: one image per line, stable digits, fixed point of
    // serialize→parse→serialize.
    let records = corpus_records(CorpusKind::Quadratic, 3, 123);
    let text = to_ndjson(&records)?;
    println!("canonical line 0 (truncated):\n{}…\n", &text.lines().next().unwrap()[..110]);
    let parsed: Vec<AnnotationRecord> = from_ndjson(&text)?;
    assert_eq!(to_ndjson(&parsed)?, text);
    println!("round trip is byte-stable: true");

    // ICDAR-style quad lines convert into the same record shape.
    let icdar = dir.join("icdar_img_3.txt");
    std::fs::write(&icdar, "10,10,210,10,210,60,10,60,HELLO\n30,90,330,95,330,150,28,144,###\n")?;
    let converted = parse_annotations(&icdar, AnnotationFormat::IcdarQuad)?;
    println!(
        "icdar convert: image {:?}, {} texts ({} ignored)",
        converted[0].image_id,
        converted[0].texts.len(),
        converted[0].texts.iter().filter(|t| t.ignore).count()
    );

    // Labels serialize the same way; masks travel as their notation string.
    let mask = "2(2)+c".parse()?;
    let labels: Vec<LabelRecord> = records
        .iter()
        .map(|r| {
            Ok(LabelRecord {
                image_id: r.image_id.clone(),
                size: r.size,
                labels: r
                    .texts
                    .iter()
                    .map(|t| encode_text(&t.polygon, &mask, 7))
                    .collect::<curvebox::Result<_>>()?,
            })
        })
        .collect::<curvebox::Result<_>>()?;
    let label_path = dir.join("labels.jsonl");
    write_ndjson_file(&label_path, &labels)?;
    println!("labels written to {}", label_path.display());
    Ok(())
}
