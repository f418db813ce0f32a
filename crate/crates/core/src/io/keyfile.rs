//! Key file grammar:
//!
//! ```text
//! # comment
//! burn_in = 64
//! normalization = raw        # or: normalized
//! mode = keystream           # or: literal
//!
//! [stage 1]
//! x0 = 0.2
//! N1 = 3
//! N2 = 4
//! a1 = 2
//! a2 = 2.5
//! eps = 0.4
//! ```
//!
//! Exactly four `[stage N]` blocks (N = 1..4), each with all six parameters.
//! Stage 1 and 2 drive the level-1 and level-2 forward transforms, stage 3 and
//! 4 the level-2 and level-1 inverse transforms. Global lines may appear
//! anywhere; omitted globals take the defaults shown above.

use std::fs;
use std::path::Path;

use crate::chaos::{ChaosParams, DEFAULT_BURN_IN};
use crate::cipher::{CipherMode, KeySchedule};
use crate::error::IoError;
use crate::wavelet::Normalization;

const PARAM_NAMES: [&str; 6] = ["x0", "N1", "N2", "a1", "a2", "eps"];

fn err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Key { line, message: message.into() }
}

#[derive(Default)]
struct StageDraft {
    header_line: usize,
    values: [Option<f64>; 6],
    lines: [usize; 6],
}

fn parse_real(name: &str, raw: &str, line: usize) -> Result<f64, IoError> {
    raw.parse::<f64>().map_err(|_| err(line, format!("parameter `{name}`: `{raw}` is not a number")))
}

fn parse_param(name: &str, raw: &str, line: usize) -> Result<f64, IoError> {
    match name {
        "N1" | "N2" => {
            let n: u32 = raw
                .parse()
                .map_err(|_| err(line, format!("parameter `{name}`: `{raw}` is not a non-negative integer")))?;
            if n < 2 {
                return Err(err(line, format!("parameter `{name}` = {n} out of range: must be an integer >= 2")));
            }
            Ok(n as f64)
        }
        "x0" | "a1" | "a2" => {
            let v = parse_real(name, raw, line)?;
            if !(v.is_finite() && v > 0.0) {
                return Err(err(line, format!("parameter `{name}` = {raw} out of range: must be finite and > 0")));
            }
            Ok(v)
        }
        "eps" => {
            let v = parse_real(name, raw, line)?;
            if !(v > 0.0 && v < 1.0) {
                return Err(err(line, format!("parameter `eps` = {raw} out of range: must lie in (0, 1)")));
            }
            Ok(v)
        }
        _ => unreachable!("caller checks the name"),
    }
}

pub fn parse_key_file(text: &str) -> Result<KeySchedule, IoError> {
    let mut burn_in = DEFAULT_BURN_IN;
    let mut normalization = Normalization::Raw;
    let mut mode = CipherMode::Keystream;
    let mut stages: [Option<StageDraft>; 4] = Default::default();
    let mut current: Option<usize> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(inner) = content.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| err(line, "section header must end with `]`"))?
                .trim();
            let num = inner
                .strip_prefix("stage")
                .map(str::trim)
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| err(line, format!("unknown section `[{inner}]`; expected `[stage N]`")))?;
            if !(1..=4).contains(&num) {
                return Err(err(line, format!("stage {num} out of range: must be 1..4")));
            }
            if stages[num - 1].is_some() {
                return Err(err(line, format!("stage {num} defined twice")));
            }
            stages[num - 1] = Some(StageDraft { header_line: line, ..Default::default() });
            current = Some(num - 1);
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(line, "expected `name = value`"))?;
        if value.is_empty() {
            return Err(err(line, format!("`{key}` has no value")));
        }
        match key {
            "burn_in" => {
                burn_in = value
                    .parse()
                    .map_err(|_| err(line, format!("parameter `burn_in`: `{value}` is not a non-negative integer")))?;
            }
            "normalization" => {
                normalization = match value {
                    "raw" => Normalization::Raw,
                    "normalized" => Normalization::Normalized,
                    _ => return Err(err(line, format!("parameter `normalization`: `{value}` is not raw|normalized"))),
                };
            }
            "mode" => {
                mode = match value {
                    "literal" => CipherMode::Literal,
                    "keystream" => CipherMode::Keystream,
                    _ => return Err(err(line, format!("parameter `mode`: `{value}` is not literal|keystream"))),
                };
            }
            name => {
                let slot = PARAM_NAMES
                    .iter()
                    .position(|&p| p == name)
                    .ok_or_else(|| err(line, format!("unknown key `{name}`")))?;
                let stage = current.ok_or_else(|| err(line, format!("parameter `{name}` outside a [stage N] block")))?;
                let draft = stages[stage].as_mut().expect("current stage exists");
                if draft.values[slot].is_some() {
                    return Err(err(line, format!("parameter `{name}` repeated in stage {}", stage + 1)));
                }
                draft.values[slot] = Some(parse_param(name, value, line)?);
                draft.lines[slot] = line;
            }
        }
    }

    let mut params = Vec::with_capacity(4);
    for (i, draft) in stages.iter().enumerate() {
        let draft = draft.as_ref().ok_or_else(|| IoError::KeyStructure(format!("missing [stage {}]", i + 1)))?;
        let mut v = [0.0; 6];
        for (slot, name) in PARAM_NAMES.iter().enumerate() {
            v[slot] = draft.values[slot].ok_or_else(|| {
                err(draft.header_line, format!("stage {} is missing parameter `{name}`", i + 1))
            })?;
        }
        let p = ChaosParams::new(v[0], v[1] as u32, v[2] as u32, v[3], v[4], v[5])
            .map_err(|e| err(draft.header_line, format!("stage {}: {e}", i + 1)))?;
        params.push(p);
    }
    let stages: [ChaosParams<f64>; 4] = params.try_into().expect("four stages");
    Ok(KeySchedule { stages, burn_in, normalization, mode })
}

pub fn read_key_file(path: impl AsRef<Path>) -> Result<KeySchedule, IoError> {
    parse_key_file(&fs::read_to_string(path)?)
}

/// Writes `ks` in the grammar above; floats use shortest round-trip form.
pub fn format_key_file(ks: &KeySchedule) -> String {
    let mut s = String::new();
    s.push_str(&format!("burn_in = {}\n", ks.burn_in));
    s.push_str(match ks.normalization {
        Normalization::Raw => "normalization = raw\n",
        Normalization::Normalized => "normalization = normalized\n",
    });
    s.push_str(match ks.mode {
        CipherMode::Literal => "mode = literal\n",
        CipherMode::Keystream => "mode = keystream\n",
    });
    for (i, p) in ks.stages.iter().enumerate() {
        s.push_str(&format!(
            "\n[stage {}]\nx0 = {:?}\nN1 = {}\nN2 = {}\na1 = {:?}\na2 = {:?}\neps = {:?}\n",
            i + 1,
            p.x0,
            p.n1,
            p.n2,
            p.a1,
            p.a2,
            p.eps
        ));
    }
    s
}
