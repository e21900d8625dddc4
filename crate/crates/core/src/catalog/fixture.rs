//! The bundled snub 24-cell realization.

use std::path::PathBuf;

use crate::cutcone::{validate_realization, Realization};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Environment variable naming a directory that overrides bundled fixtures.
pub const FIXTURE_DIR_ENV: &str = "EQUICUT_FIXTURES";
pub const SNUB24CELL_FILE: &str = "snub24cell.txt";

const SNUB24CELL: &str = include_str!("../../data/snub24cell.txt");
const BLOCK_ROWS: usize = 12;
const BLOCK_COLS: usize = 48;

fn fixture_text(file: &str, bundled: &str) -> Result<String> {
    match std::env::var_os(FIXTURE_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            std::fs::read_to_string(&path)
                .map_err(|e| Error::FixtureCorrupt(format!("{}: {e}", path.display())))
        }
        None => Ok(bundled.to_string()),
    }
}

/// Parses the printed `12 × 48` block into its 96-row realization: the
/// block's columns, then their complements.
pub fn parse_snub_block(text: &str) -> Result<Realization> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    if lines.len() != BLOCK_ROWS {
        return Err(Error::FixtureCorrupt(format!(
            "expected {BLOCK_ROWS} lines, found {}",
            lines.len()
        )));
    }
    let mut block = Vec::with_capacity(BLOCK_ROWS);
    for (i, line) in lines.iter().enumerate() {
        let bits: Vec<u8> = line
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::FixtureCorrupt(format!(
                    "line {}: unexpected character `{other}`",
                    i + 1
                ))),
            })
            .collect::<Result<_>>()?;
        if bits.len() != BLOCK_COLS {
            return Err(Error::FixtureCorrupt(format!(
                "line {}: expected {BLOCK_COLS} characters, found {}",
                i + 1,
                bits.len()
            )));
        }
        block.push(bits);
    }
    let mut rows: Vec<Vec<u8>> = (0..BLOCK_COLS)
        .map(|c| block.iter().map(|r| r[c]).collect())
        .collect();
    rows.extend((0..BLOCK_COLS).map(|c| block.iter().map(|r| 1 - r[c]).collect()));
    Realization::new(rows, 2)
}

/// Loads the fixture and checks that it is an isometric realization of its
/// own unit-distance graph.
pub fn load_snub24cell() -> Result<Realization> {
    let r = parse_snub_block(&fixture_text(SNUB24CELL_FILE, SNUB24CELL)?)?;
    check_self_consistent(&r)?;
    Ok(r)
}

/// The skeleton: rows at Hamming distance 2.
pub fn snub24cell_graph() -> Result<Graph> {
    load_snub24cell()?.unit_distance_graph()
}

fn check_self_consistent(r: &Realization) -> Result<()> {
    let g = r.unit_distance_graph()?;
    if !g.is_connected() {
        return Err(Error::FixtureCorrupt(
            "unit-distance graph is disconnected".into(),
        ));
    }
    let report = validate_realization(&g, r)?;
    if !report.isometric {
        return Err(Error::FixtureCorrupt(format!(
            "not isometric; offending vertex pairs {:?}",
            report.mismatched_pairs
        )));
    }
    Ok(())
}
