//! Advisory disk cache for slice bases.
//!
//! One JSON file per (Cartan type, content vector). Deleting the cache
//! directory never changes results, only speed. Scalars are stored in
//! their canonical text form and re-parsed on load; files with a different
//! format version or convention flags are ignored.

use crate::algebra::SliceBasis;
use crate::cartan::{CartanDatum, Root};
use crate::coeffs::{parse_laurent, Frac, LaurentScalar};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    cartan_type: String,
    /// Convention flags: symmetrizers normalized to min d_i = 1, and the
    /// scalar variable v satisfying v² = q.
    min_d_is_one: bool,
    v_squared_is_q: bool,
    content: Vec<i64>,
    words: Vec<Vec<u8>>,
    gram: Vec<Vec<String>>,
    pivots: Vec<usize>,
    coords: Vec<Vec<[String; 2]>>,
}

fn file_path(dir: &Path, cd: &CartanDatum, content: &Root) -> PathBuf {
    let tag: Vec<String> = content.iter().map(|n| n.to_string()).collect();
    dir.join(format!("{}_{}.json", cd.ctype, tag.join("-")))
}

pub(crate) fn load(dir: &Path, cd: &CartanDatum, content: &Root) -> Option<SliceBasis> {
    let text = fs::read_to_string(file_path(dir, cd, content)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.version != FORMAT_VERSION
        || file.cartan_type != cd.ctype.to_string()
        || !file.min_d_is_one
        || !file.v_squared_is_q
        || &file.content != content
    {
        return None;
    }
    let gram: Option<Vec<Vec<LaurentScalar>>> = file
        .gram
        .iter()
        .map(|row| row.iter().map(|s| parse_laurent(s).ok()).collect())
        .collect();
    let coords: Option<Vec<Vec<Frac>>> = file
        .coords
        .iter()
        .map(|row| {
            row.iter()
                .map(|[n, d]| {
                    Some(Frac::new(parse_laurent(n).ok()?, parse_laurent(d).ok()?))
                })
                .collect()
        })
        .collect();
    Some(SliceBasis {
        content: content.clone(),
        words: file.words,
        gram: gram?,
        pivots: file.pivots,
        coords: coords?,
    })
}

/// Write atomically: serialize to a sibling temporary file, then rename.
pub(crate) fn store(dir: &Path, cd: &CartanDatum, basis: &SliceBasis) {
    let file = CacheFile {
        version: FORMAT_VERSION,
        cartan_type: cd.ctype.to_string(),
        min_d_is_one: true,
        v_squared_is_q: true,
        content: basis.content.clone(),
        words: basis.words.clone(),
        gram: basis
            .gram
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect(),
        pivots: basis.pivots.clone(),
        coords: basis
            .coords
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| [c.numer().to_string(), c.denom().to_string()])
                    .collect()
            })
            .collect(),
    };
    // Caching is advisory: any I/O failure is silently ignored.
    let _ = (|| -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let target = file_path(dir, cd, &basis.content);
        let tmp = target.with_extension(format!("tmp.{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&file)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        Ok(())
    })();
}
