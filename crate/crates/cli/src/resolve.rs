use std::fs;
use std::path::{Path, PathBuf};

use kite_core::frame::{builtin_frame, Frame};
use kite_core::hom::io::MapFile;
use kite_core::reslat::{BuiltinLattice, FiniteResLat};

/// Turns `builtin:NAME` or a path into a value. Paths that do not exist
/// are retried under the corpus directory, with and without the default
/// extension.
pub struct Resolver {
    corpus: Option<PathBuf>,
}

impl Resolver {
    pub fn new(corpus: Option<PathBuf>) -> Self {
        Self { corpus }
    }

    fn read(&self, reference: &str, dir: &str, ext: &str) -> Result<String, String> {
        let direct = PathBuf::from(reference);
        let mut tried = vec![direct.clone()];
        if let Some(root) = &self.corpus {
            tried.push(root.join(dir).join(reference));
            tried.push(root.join(dir).join(format!("{reference}.{ext}")));
        }
        let path = tried
            .iter()
            .find(|p| p.is_file())
            .ok_or_else(|| format!("cannot find `{reference}`"))?;
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn lattice(&self, reference: &str) -> Result<FiniteResLat, String> {
        if let Some(name) = reference.strip_prefix("builtin:") {
            return Ok(name.parse::<BuiltinLattice>()?.build());
        }
        let src = self.read(reference, "lattices", "lat")?;
        kite_core::reslat::io::parse(&src).map_err(|e| format!("{reference}: {e}"))
    }

    /// A lattice that must also satisfy the axioms.
    pub fn valid_lattice(&self, reference: &str) -> Result<FiniteResLat, String> {
        let l = self.lattice(reference)?;
        match l.verify_axioms().first_failure() {
            None => Ok(l),
            Some(o) => Err(format!(
                "{reference} is not a residuated lattice: {:?} fails at {:?}",
                o.law, o.witness
            )),
        }
    }

    pub fn frame(&self, reference: &str) -> Result<Frame, String> {
        if let Some(name) = reference.strip_prefix("builtin:") {
            return builtin_frame(name);
        }
        let src = self.read(reference, "frames", "frame")?;
        kite_core::frame::io::parse(&src).map_err(|e| format!("{reference}: {e}"))
    }

    pub fn map(&self, reference: &str) -> Result<MapFile, String> {
        let src = self.read(reference, "maps", "map")?;
        kite_core::hom::io::parse(&src).map_err(|e| format!("{reference}: {e}"))
    }

    /// Frame references inside a map file are relative to the file.
    pub fn frame_near(&self, reference: &str, map_ref: &str) -> Result<Frame, String> {
        if reference.starts_with("builtin:") || Path::new(reference).is_absolute() {
            return self.frame(reference);
        }
        let beside = Path::new(map_ref).parent().map(|p| p.join(reference));
        match beside {
            Some(p) if p.is_file() => self.frame(&p.to_string_lossy()),
            _ => self.frame(reference),
        }
    }
}
