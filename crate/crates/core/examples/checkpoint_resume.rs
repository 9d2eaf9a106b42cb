//! Interrupt a scan after a few chunks and resume it from the checkpoint.

use divorder::functions::parse_function;
use divorder::scanners::{scan_collisions, Checkpoint, ScanMode, ScanOptions};

fn main() -> divorder::Result<()> {
    let dir = std::env::temp_dir().join(format!("divorder-checkpoint-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("sigma_over_x.json");
    let f = parse_function("sigma_over_x")?;
    let base = ScanOptions {
        chunk_size: 10_000,
        checkpoint: Some(path.clone()),
        ..ScanOptions::mode(ScanMode::Coprime)
    };

    let partial = scan_collisions(
        &f,
        200_000,
        &ScanOptions {
            stop_after_chunks: Some(4),
            ..base.clone()
        },
    )?;
    let cp = Checkpoint::load(&path)?;
    println!(
        "stopped: complete {}, last chunk {:?}, {} values saved",
        partial.complete,
        cp.last_chunk,
        cp.values.len()
    );

    let resumed = scan_collisions(&f, 200_000, &base)?;
    let fresh = scan_collisions(
        &f,
        200_000,
        &ScanOptions {
            checkpoint: None,
            ..base
        },
    )?;
    println!(
        "resumed: complete {}, identical to a fresh run {}",
        resumed.complete,
        resumed.to_json() == fresh.to_json()
    );
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
