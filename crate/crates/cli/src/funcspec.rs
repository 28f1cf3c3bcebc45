//! The function descriptor JSON:
//!
//! ```json
//! {"n": 3, "kind": "threshold", "k": 2}
//! {"n": 3, "kind": "minimal_sets", "sets": [[1], [2, 3]]}
//! {"n": 3, "kind": "formula", "formula": "(x1 & x2) | x3"}
//! {"n": 2, "kind": "table", "table": "0011"}
//! ```
//!
//! A table is a string of `2^n` characters `0`/`1`; the character at
//! position `m` is the value on the state whose bitmask is `m` (bit `i-1`
//! set = nail `i` present).

use anyhow::{anyhow, bail, Context, Result};
use hangnail_core::monotone::{parse_formula, MonotoneFn, TruthTable};
use hangnail_core::word::NailState;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
pub struct FunctionSpecDto {
    pub n: u32,
    pub kind: String,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub sets: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub formula: Option<String>,
    #[serde(default)]
    pub table: Option<String>,
}

pub fn monotone_from_dto(dto: &FunctionSpecDto) -> Result<MonotoneFn> {
    let n = dto.n;
    match dto.kind.as_str() {
        "threshold" => {
            let k = dto.k.ok_or_else(|| anyhow!("threshold spec needs \"k\""))?;
            MonotoneFn::threshold(n, k).map_err(|e| anyhow!("{e}"))
        }
        "minimal_sets" => {
            let sets = dto
                .sets
                .as_ref()
                .ok_or_else(|| anyhow!("minimal_sets spec needs \"sets\""))?;
            let states: Result<Vec<NailState>> = sets
                .iter()
                .map(|s| {
                    NailState::from_indices(n, s.iter().copied()).map_err(|e| anyhow!("{e}"))
                })
                .collect();
            MonotoneFn::from_minimal_sets(n, states?).map_err(|e| anyhow!("{e}"))
        }
        "formula" => {
            let text = dto
                .formula
                .as_ref()
                .ok_or_else(|| anyhow!("formula spec needs \"formula\""))?;
            parse_formula(text, n).map_err(|e| anyhow!("{e}"))
        }
        "table" => {
            let bits = dto.table.as_ref().ok_or_else(|| anyhow!("table spec needs \"table\""))?;
            if n > 24 {
                bail!("table specs are limited to n <= 24");
            }
            let want = 1usize << n;
            if bits.len() != want {
                bail!("table for n={n} needs {want} characters, got {}", bits.len());
            }
            let bytes = bits.as_bytes();
            for &b in bytes {
                if b != b'0' && b != b'1' {
                    bail!("table characters must be 0 or 1");
                }
            }
            let table = TruthTable::from_fn(n, |mask| bytes[mask as usize] == b'1')
                .map_err(|e| anyhow!("{e}"))?;
            MonotoneFn::from_table(table).map_err(|e| anyhow!("unrealizable spec: {e}"))
        }
        other => bail!("unknown spec kind '{other}' (threshold | minimal_sets | formula | table)"),
    }
}

pub fn load_spec_file(path: &Path) -> Result<MonotoneFn> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let dto: FunctionSpecDto = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    monotone_from_dto(&dto)
}
