//! Write the CSV data and gnuplot scripts for all eight figure presets.

use std::path::PathBuf;

use pacs_correlations::cli::{cmd_figure, FigureId, FigurePreset};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir).unwrap();
    for id in FigureId::ALL {
        let csv = dir.join(format!("{id}.csv"));
        let script = dir.join(format!("{id}.gp"));
        cmd_figure(&FigurePreset::new(id, Some(csv.clone())), Some(&script)).unwrap();
        println!("{} -> {}", id, csv.display());
    }
}
