//! JSON-lines persistence for the memo table.
//!
//! One entry per line:
//!
//! ```text
//! {"m":2,"ct":2,"exps":[1],"num":"1","den":"12"}
//! ```
//!
//! Entries are written in key order so the file is byte-deterministic for a
//! given cache state.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brackets::{BracketKey, MemoCache};
use crate::Rational;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {key} already cached with a different value")]
    Conflict { line: usize, key: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    m: u32,
    ct: u32,
    exps: Vec<u32>,
    num: String,
    den: String,
}

fn parse_decimal(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix('-').unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

fn parse_line(text: &str, line: usize) -> Result<(BracketKey, Rational), CacheError> {
    let err = |message: String| CacheError::Parse { line, message };
    let entry: Entry = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let num = parse_decimal(&entry.num, true)
        .ok_or_else(|| err(format!("bad numerator {:?}", entry.num)))?;
    let den = parse_decimal(&entry.den, false)
        .ok_or_else(|| err(format!("bad denominator {:?}", entry.den)))?;
    if den.is_zero() {
        return Err(err("zero denominator".into()));
    }
    let key = BracketKey::new(entry.m, entry.ct, entry.exps).map_err(|e| err(e.to_string()))?;
    Ok((key, Rational::new(num, den)))
}

/// Reads entries from `reader` into a fresh cache. Blank lines are allowed;
/// anything else that does not parse is an error carrying its line number.
pub fn read_cache(reader: impl BufRead) -> Result<MemoCache, CacheError> {
    let cache = MemoCache::new();
    for (k, text) in reader.lines().enumerate() {
        let line = k + 1;
        let text = text.map_err(|e| CacheError::Parse {
            line,
            message: e.to_string(),
        })?;
        if text.trim().is_empty() {
            continue;
        }
        let (key, value) = parse_line(&text, line)?;
        let shown = key.to_string();
        cache
            .insert(key, value)
            .map_err(|_| CacheError::Conflict { line, key: shown })?;
    }
    Ok(cache)
}

pub fn write_cache(mut writer: impl Write, cache: &MemoCache) -> io::Result<()> {
    for (key, value) in cache.entries() {
        let entry = Entry {
            m: key.m,
            ct: key.c_tilde,
            exps: key.exps.as_slice().to_vec(),
            num: value.numer().to_string(),
            den: value.denom().to_string(),
        };
        serde_json::to_writer(&mut writer, &entry)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

pub fn cache_load(path: &Path) -> Result<MemoCache, CacheError> {
    let file = File::open(path).map_err(|source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_cache(BufReader::new(file))
}

pub fn cache_store(path: &Path, cache: &MemoCache) -> Result<(), CacheError> {
    let io_err = |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_cache(BufWriter::new(file), cache).map_err(io_err)
}
