//! On-disk cache of symbolic table entries.
//!
//! ```text
//! <root>/<gkw|mr>/psi_<j>.rf
//! <root>/<gkw|mr>/col_<p>/a_<p>_<t>.rf
//! ```
//!
//! Files are written to a temporary sibling and renamed into place, so a
//! concurrent reader never sees a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::denominator_factors;
use super::engine::CellStore;
use super::table::Variant;
use crate::arith::text::{parse, serialize_with_header, Header};
use crate::arith::{Linear, RatFunc2};
use crate::error::{Error, Result};

/// Cache directory for one variant.
#[derive(Clone, Debug)]
pub struct CacheStore {
    dir: PathBuf,
    variant: Variant,
    factors: Vec<Linear>,
    factor_order: usize,
    written: usize,
}

impl CacheStore {
    /// Opens (creating if needed) `<root>/<variant>`.
    pub fn open(root: impl AsRef<Path>, variant: Variant) -> Result<Self> {
        let dir = root.as_ref().join(variant.dir_name());
        fs::create_dir_all(&dir)?;
        Ok(CacheStore {
            dir,
            variant,
            factors: Vec::new(),
            factor_order: 0,
            written: 0,
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Number of entries written since opening.
    pub fn written(&self) -> usize {
        self.written
    }

    pub fn psi_path(&self, j: usize) -> PathBuf {
        self.dir.join(format!("psi_{j}.rf"))
    }

    pub fn cell_path(&self, p: usize, t: usize) -> PathBuf {
        self.dir
            .join(format!("col_{p}"))
            .join(format!("a_{p}_{t}.rf"))
    }

    fn psi_header(&self, j: usize) -> Header {
        Header {
            variant: self.variant.name().into(),
            kind: self.variant.kinds().1.into(),
            idx: j.to_string(),
        }
    }

    fn cell_header(&self, p: usize, t: usize) -> Header {
        Header {
            variant: self.variant.name().into(),
            kind: self.variant.kinds().0.into(),
            idx: format!("{p},{t}"),
        }
    }

    fn candidates(&mut self, need: usize) -> &[Linear] {
        if self.factors.is_empty() || need > self.factor_order {
            self.factor_order = need.max(1);
            self.factors = denominator_factors(self.factor_order);
        }
        &self.factors
    }

    fn load(&mut self, path: &Path, expected: &Header, order: usize) -> Result<Option<RatFunc2>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let (header, f) = parse(&text)?;
        match header {
            Some(h) if h == *expected => {}
            Some(h) => {
                return Err(Error::VariantMismatch {
                    expected: expected.render(),
                    found: h.render(),
                })
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("{}: missing header", path.display()),
                })
            }
        }
        let cands = self.candidates(order).to_vec();
        Ok(Some(f.with_factor_candidates(&cands)))
    }

    fn store(&mut self, path: &Path, header: &Header, f: &RatFunc2) -> Result<()> {
        let text = serialize_with_header(header, f);
        if let Ok(existing) = fs::read_to_string(path) {
            if existing == text {
                return Ok(());
            }
        }
        let parent = path.parent().unwrap_or(&self.dir);
        fs::create_dir_all(parent)?;
        let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(path).map_err(|e| Error::Io(e.error))?;
        self.written += 1;
        Ok(())
    }

    /// Reads every cached entry present, as `(path, function)` pairs.
    pub fn entries(&self) -> Result<Vec<(PathBuf, RatFunc2)>> {
        let mut paths = Vec::new();
        collect_rf(&self.dir, &mut paths)?;
        paths.sort();
        paths
            .into_iter()
            .map(|p| {
                let text = fs::read_to_string(&p)?;
                let (_, f) = parse(&text)?;
                Ok((p, f))
            })
            .collect()
    }
}

fn collect_rf(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    if !dir.exists() {
        return Ok(());
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            collect_rf(&path, out)?;
        } else if path.extension().is_some_and(|e| e == "rf") {
            out.push(path);
        }
    }
    Ok(())
}

impl CellStore<RatFunc2> for CacheStore {
    fn load_cell(&mut self, p: usize, t: usize) -> Result<Option<RatFunc2>> {
        let h = self.cell_header(p, t);
        self.load(&self.cell_path(p, t), &h, p.max(t))
    }

    fn save_cell(&mut self, p: usize, t: usize, value: &RatFunc2) -> Result<()> {
        let h = self.cell_header(p, t);
        self.store(&self.cell_path(p, t), &h, value)
    }

    fn load_psi(&mut self, j: usize) -> Result<Option<RatFunc2>> {
        let h = self.psi_header(j);
        self.load(&self.psi_path(j), &h, j)
    }

    fn save_psi(&mut self, j: usize, value: &RatFunc2) -> Result<()> {
        let h = self.psi_header(j);
        self.store(&self.psi_path(j), &h, value)
    }
}
