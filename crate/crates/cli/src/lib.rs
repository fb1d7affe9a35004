//! Library side of the `nullca` command-line tool: file formats, the
//! subcommand implementations, the benchmark harness and the golden examples.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use nullca_core::ca::{evolve_local, matrix_from_text, Pattern, RuleSpec};
use nullca_core::field::PrimeField;
use nullca_core::spectral::{self, SpectralReport};
use nullca_core::structmat::FMatrix;
use nullca_core::Error as CoreError;
use serde::Serialize;

pub mod bench;
pub mod examples;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_IRREVERSIBLE: u8 = 10;

/// Bad user input: unreadable files, malformed contents, mismatched shapes.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Map an error chain to the process exit code.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<InputError>().is_some() {
            return EXIT_INPUT;
        }
        if let Some(e) = cause.downcast_ref::<CoreError>() {
            return match e {
                CoreError::NotReversible { .. } => EXIT_IRREVERSIBLE,
                CoreError::NotPrime(_)
                | CoreError::ModulusOutOfRange(_)
                | CoreError::InvalidRule(_)
                | CoreError::Parse(_)
                | CoreError::ShapeMismatch(_)
                | CoreError::BandTooWide { .. }
                | CoreError::SizeCapExceeded { .. }
                | CoreError::ExtensionTooLarge { .. }
                | CoreError::FieldMismatch => EXIT_INPUT,
                _ => EXIT_FAILURE,
            };
        }
    }
    EXIT_FAILURE
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())).into())
}

fn input<T>(path: &Path, r: nullca_core::Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        CoreError::NotReversible { .. } => anyhow::Error::new(e),
        other => InputError(format!("{}: {other}", path.display())).into(),
    })
}

pub fn load_rule(path: &Path) -> Result<RuleSpec> {
    input(path, RuleSpec::from_json(&read_input(path)?))
}

pub fn load_pattern(path: &Path) -> Result<Pattern> {
    input(path, Pattern::from_text(&read_input(path)?))
}

pub fn load_matrix(path: &Path) -> Result<FMatrix<PrimeField>> {
    input(path, matrix_from_text(&read_input(path)?))
}

/// Write through a temporary file in the target directory and rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp =
        tempfile::NamedTempFile::new_in(&dir).with_context(|| format!("temporary file in {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Write several files once every one of them has been produced.
pub fn write_all_atomic(files: &[(PathBuf, String)]) -> Result<()> {
    for (path, contents) in files {
        write_atomic(path, contents.as_bytes())?;
    }
    Ok(())
}

pub fn check_pattern(rule: &RuleSpec, x: &Pattern) -> Result<()> {
    if rule.dims != x.dims() || rule.p != x.p() {
        return Err(InputError(format!(
            "pattern has dims {:?} over p = {}, rule expects {:?} over p = {}",
            x.dims(),
            x.p(),
            rule.dims,
            rule.p
        ))
        .into());
    }
    Ok(())
}

pub fn check(rule: &RuleSpec) -> Result<SpectralReport> {
    let spectra = spectral::axis_spectra(rule)?;
    let decision = spectral::decide(&spectra);
    Ok(SpectralReport::new(&spectra, &decision))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseReport {
    pub p: u64,
    pub dims: Vec<usize>,
    pub size: usize,
    /// Number of nonzero entries of the inverse.
    pub nonzeros: usize,
    pub verified: bool,
}

pub fn invert(rule: &RuleSpec, cap: usize) -> Result<(FMatrix<PrimeField>, InverseReport)> {
    let inv = spectral::invert_t_with_cap(rule, cap)?;
    let report = InverseReport {
        p: rule.p,
        dims: rule.dims.clone(),
        size: inv.rows(),
        nonzeros: inv.data().iter().filter(|&&v| v != 0).count(),
        verified: true,
    };
    Ok((inv, report))
}

pub fn evolve(rule: &RuleSpec, x: &Pattern, steps: usize) -> Result<Pattern> {
    check_pattern(rule, x)?;
    let mut cur = x.clone();
    for _ in 0..steps {
        cur = evolve_local(rule, &cur)?;
    }
    Ok(cur)
}

/// Apply `inverse` (or the computed inverse of `rule`) `steps` times.
pub fn reverse(
    rule: &RuleSpec,
    x: &Pattern,
    steps: usize,
    inverse: Option<FMatrix<PrimeField>>,
    cap: usize,
) -> Result<Pattern> {
    check_pattern(rule, x)?;
    if steps == 0 {
        return Ok(x.clone());
    }
    let inv = match inverse {
        Some(m) => {
            if m.rows() != rule.size() || m.cols() != rule.size() || m.field().p() != rule.p {
                return Err(InputError(format!(
                    "inverse matrix is {}x{} over p = {}, rule needs {n}x{n} over p = {}",
                    m.rows(),
                    m.cols(),
                    m.field().p(),
                    rule.p,
                    n = rule.size()
                ))
                .into());
            }
            m
        }
        None => spectral::invert_t_with_cap(rule, cap)?,
    };
    let mut cur = x.clone();
    for _ in 0..steps {
        cur = nullca_core::ca::apply_matrix(&inv, &cur)?;
    }
    Ok(cur)
}

/// PGM slices of a pattern named `slice_01.pgm`, `slice_02.pgm`, ...
pub fn pgm_files(dir: &Path, x: &Pattern) -> Result<Vec<(PathBuf, String)>> {
    let slices = x.pgm_slices().map_err(|e| InputError(e.to_string()))?;
    Ok(slices
        .into_iter()
        .enumerate()
        .map(|(z, s)| (dir.join(format!("slice_{:02}.pgm", z + 1)), s))
        .collect())
}
