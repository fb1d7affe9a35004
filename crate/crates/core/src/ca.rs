//! Linear cellular automata on a finite cuboid with null boundary.
//!
//! Cells are flattened with the first axis varying fastest: for a 2x2x2
//! cuboid the order is `X_111, X_211, X_121, X_221, X_112, ...`.

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::structmat::{kron_sum_all, toeplitz, FMatrix, ToeplitzSpec};

/// Coefficients along one axis: `ell[λ-1]` weighs the neighbor at `i - λ e_k`,
/// `r[λ-1]` the neighbor at `i + λ e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisBand {
    pub ell: Vec<u64>,
    pub r: Vec<u64>,
}

/// A linear local rule together with the cuboid it acts on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub p: u64,
    pub dims: Vec<usize>,
    pub c: u64,
    pub eta: usize,
    pub axes: Vec<AxisBand>,
}

impl RuleSpec {
    pub fn new(p: u64, dims: Vec<usize>, c: u64, eta: usize, axes: Vec<AxisBand>) -> Result<Self> {
        let rule = Self { p, dims, c, eta, axes };
        rule.validate()?;
        Ok(rule)
    }

    /// Nearest-neighbor rule with `(ell, r)` given per axis.
    pub fn nearest(p: u64, dims: Vec<usize>, c: u64, pairs: &[(u64, u64)]) -> Result<Self> {
        let axes = pairs
            .iter()
            .map(|&(ell, r)| AxisBand {
                ell: vec![ell],
                r: vec![r],
            })
            .collect();
        Self::new(p, dims, c, 1, axes)
    }

    /// Every coefficient equal to 1, `c = 0`, `eta = 1`.
    pub fn all_ones(p: u64, dims: Vec<usize>) -> Result<Self> {
        let pairs = vec![(1, 1); dims.len()];
        Self::nearest(p, dims, 0, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rule: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        rule.validate()?;
        Ok(rule)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule serializes")
    }

    pub fn validate(&self) -> Result<()> {
        PrimeField::new(self.p)?;
        if self.dims.is_empty() {
            return Err(Error::InvalidRule("at least one axis is required".into()));
        }
        if let Some(k) = self.dims.iter().position(|&m| m < 2) {
            return Err(Error::InvalidRule(format!(
                "axis {} has size {}; every size must be at least 2",
                k + 1,
                self.dims[k]
            )));
        }
        if self.axes.len() != self.dims.len() {
            return Err(Error::InvalidRule(format!(
                "{} axes of coefficients for {} dimensions",
                self.axes.len(),
                self.dims.len()
            )));
        }
        if self.eta == 0 {
            return Err(Error::InvalidRule("eta must be at least 1".into()));
        }
        if self.c >= self.p {
            return Err(Error::InvalidRule(format!(
                "coefficient c = {} is out of range for p = {}",
                self.c, self.p
            )));
        }
        for (k, (band, &m)) in self.axes.iter().zip(&self.dims).enumerate() {
            for (name, coeffs) in [("ell", &band.ell), ("r", &band.r)] {
                if coeffs.len() != self.eta {
                    return Err(Error::InvalidRule(format!(
                        "axis {} needs exactly eta = {} {name} coefficients, got {}",
                        k + 1,
                        self.eta,
                        coeffs.len()
                    )));
                }
                if let Some(&v) = coeffs.iter().find(|&&v| v >= self.p) {
                    return Err(Error::InvalidRule(format!(
                        "coefficient {name} = {v} on axis {} is out of range for p = {}",
                        k + 1,
                        self.p
                    )));
                }
            }
            if self.eta >= m {
                return Err(Error::BandTooWide {
                    band: self.eta,
                    size: m,
                });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated rule")
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    /// Banded Toeplitz matrix of axis `k` (0-based); axis 0 carries `c I`.
    pub fn axis_matrix(&self, k: usize) -> Result<FMatrix<PrimeField>> {
        let f = self.field();
        let band = &self.axes[k];
        let s = toeplitz(
            &f,
            &ToeplitzSpec {
                size: self.dims[k],
                lower: band.ell.clone(),
                upper: band.r.clone(),
            },
        )?;
        if k == 0 {
            s.add_scalar(&self.c)
        } else {
            Ok(s)
        }
    }

    pub fn axis_matrices(&self) -> Result<Vec<FMatrix<PrimeField>>> {
        (0..self.d()).map(|k| self.axis_matrix(k)).collect()
    }
}

/// Draws random rules for tests and sweeps.
#[derive(Debug, Clone)]
pub struct RuleSampler {
    pub primes: Vec<u64>,
    pub max_d: usize,
    pub max_m: usize,
    pub etas: Vec<usize>,
}

impl Default for RuleSampler {
    fn default() -> Self {
        Self {
            primes: vec![2, 3, 5, 7, 13],
            max_d: 3,
            max_m: 5,
            etas: vec![1, 2],
        }
    }
}

impl RuleSampler {
    /// Sizes are drawn from `eta+1 ..= max_m` so every band fits.
    pub fn sample(&self, rng: &mut impl Rng) -> RuleSpec {
        let p = self.primes[rng.gen_range(0..self.primes.len())];
        let d = rng.gen_range(1..=self.max_d);
        let eta = self.etas[rng.gen_range(0..self.etas.len())];
        let dims: Vec<usize> = (0..d)
            .map(|_| rng.gen_range(eta + 1..=self.max_m.max(eta + 1)))
            .collect();
        let axes = (0..d)
            .map(|_| AxisBand {
                ell: (0..eta).map(|_| rng.gen_range(0..p)).collect(),
                r: (0..eta).map(|_| rng.gen_range(0..p)).collect(),
            })
            .collect();
        let c = rng.gen_range(0..p);
        RuleSpec::new(p, dims, c, eta, axes).expect("sampled rule is valid")
    }
}

/// A configuration of the cuboid, stored flattened in the cell order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    dims: Vec<usize>,
    p: u64,
    cells: Vec<u64>,
}

impl Pattern {
    pub fn zeros(dims: &[usize], p: u64) -> Self {
        Self {
            dims: dims.to_vec(),
            p,
            cells: vec![0; dims.iter().product()],
        }
    }

    pub fn random(dims: &[usize], p: u64, rng: &mut impl Rng) -> Self {
        let n = dims.iter().product();
        Self {
            dims: dims.to_vec(),
            p,
            cells: (0..n).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    /// Flat position of a 0-based multi-index.
    pub fn offset(&self, idx: &[usize]) -> usize {
        let mut off = 0;
        let mut stride = 1;
        for (&i, &m) in idx.iter().zip(&self.dims) {
            assert!(i < m, "index {idx:?} outside {:?}", self.dims);
            off += i * stride;
            stride *= m;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> u64 {
        self.cells[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: u64) {
        assert!(v < self.p, "state {v} out of range for p = {}", self.p);
        let off = self.offset(idx);
        self.cells[off] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims || self.p != other.p {
            return Err(Error::ShapeMismatch("patterns of different shape".into()));
        }
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        Ok(Self {
            dims: self.dims.clone(),
            p: self.p,
            cells,
        })
    }

    /// Header `d m_1 ... m_d p`, then one line per run along the first axis.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = std::iter::once(self.dims.len())
            .chain(self.dims.iter().copied())
            .map(|v| v.to_string())
            .chain(std::iter::once(self.p.to_string()))
            .collect();
        out.push_str(&header.join(" "));
        out.push('\n');
        for row in self.cells.chunks(self.dims[0]) {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = parse_ints(lines.next().ok_or_else(|| Error::Parse("empty pattern file".into()))?)?;
        let d = *header.first().ok_or_else(|| Error::Parse("empty header".into()))? as usize;
        if d == 0 || header.len() != d + 2 {
            return Err(Error::Parse(format!(
                "header must read `d m_1 ... m_d p`, got {} numbers",
                header.len()
            )));
        }
        let dims: Vec<usize> = header[1..=d].iter().map(|&m| m as usize).collect();
        let p = header[d + 1];
        PrimeField::new(p)?;
        let cells: Vec<u64> = lines.map(parse_ints).collect::<Result<Vec<_>>>()?.concat();
        let n: usize = dims.iter().product();
        if cells.len() != n {
            return Err(Error::Parse(format!("expected {n} cells, found {}", cells.len())));
        }
        if let Some(v) = cells.iter().find(|&&v| v >= p) {
            return Err(Error::Parse(format!("cell value {v} out of range for p = {p}")));
        }
        Ok(Self { dims, p, cells })
    }

    /// One PGM (P2) image per slice along the third axis; width is the first
    /// axis, height the second.
    pub fn pgm_slices(&self) -> Result<Vec<String>> {
        if self.dims.len() > 3 {
            return Err(Error::ShapeMismatch("images need at most three axes".into()));
        }
        let w = self.dims[0];
        let h = self.dims.get(1).copied().unwrap_or(1);
        let depth = self.dims.get(2).copied().unwrap_or(1);
        let scale = 255 / (self.p - 1);
        Ok((0..depth)
            .map(|z| {
                let mut s = format!("P2\n{w} {h}\n255\n");
                for y in 0..h {
                    let row: Vec<String> = (0..w)
                        .map(|x| (self.cells[x + w * (y + h * z)] * scale).to_string())
                        .collect();
                    let _ = writeln!(s, "{}", row.join(" "));
                }
                s
            })
            .collect())
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))
        })
        .collect()
}

fn check_shape(rule: &RuleSpec, x: &Pattern) -> Result<()> {
    if rule.dims != x.dims || rule.p != x.p {
        return Err(Error::ShapeMismatch(format!(
            "pattern {:?} over p = {} does not fit rule {:?} over p = {}",
            x.dims, x.p, rule.dims, rule.p
        )));
    }
    Ok(())
}

pub fn theta(x: &Pattern) -> Vec<u64> {
    x.cells.clone()
}

pub fn theta_inv(v: &[u64], dims: &[usize], p: u64) -> Result<Pattern> {
    let n: usize = dims.iter().product();
    if v.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} for {n} cells",
            v.len()
        )));
    }
    Ok(Pattern {
        dims: dims.to_vec(),
        p,
        cells: v.to_vec(),
    })
}

/// One step of the local rule; neighbors outside the cuboid read as 0.
pub fn evolve_local(rule: &RuleSpec, x: &Pattern) -> Result<Pattern> {
    check_shape(rule, x)?;
    let p = rule.p;
    let n = x.cells.len();
    let mut out = vec![0u64; n];
    let mut stride = 1;
    let mut strides = Vec::with_capacity(rule.d());
    for &m in &rule.dims {
        strides.push(stride);
        stride *= m;
    }
    for (flat, o) in out.iter_mut().enumerate() {
        let mut acc = rule.c * x.cells[flat] % p;
        for (k, band) in rule.axes.iter().enumerate() {
            let i = (flat / strides[k]) % rule.dims[k];
            for lam in 1..=rule.eta {
                if i >= lam {
                    acc += band.ell[lam - 1] * x.cells[flat - lam * strides[k]] % p;
                }
                if i + lam < rule.dims[k] {
                    acc += band.r[lam - 1] * x.cells[flat + lam * strides[k]] % p;
                }
            }
            acc %= p;
        }
        *o = acc;
    }
    Ok(Pattern {
        dims: x.dims.clone(),
        p,
        cells: out,
    })
}

/// The transition matrix, materialized; fails beyond `cap` cells.
pub fn build_t(rule: &RuleSpec, cap: usize) -> Result<FMatrix<PrimeField>> {
    kron_sum_all(&rule.axis_matrices()?, cap)
}

pub fn apply_matrix(m: &FMatrix<PrimeField>, x: &Pattern) -> Result<Pattern> {
    if m.field().p() != x.p {
        return Err(Error::FieldMismatch);
    }
    let v = m.mul_vec(&x.cells)?;
    if v.len() != x.cells.len() {
        return Err(Error::ShapeMismatch("matrix is not square".into()));
    }
    theta_inv(&v, &x.dims, x.p)
}

pub fn evolve_matrix(rule: &RuleSpec, x: &Pattern, steps: usize, cap: usize) -> Result<Pattern> {
    check_shape(rule, x)?;
    if steps == 0 {
        return Ok(x.clone());
    }
    let t = build_t(rule, cap)?;
    let mut cur = x.clone();
    for _ in 0..steps {
        cur = apply_matrix(&t, &cur)?;
    }
    Ok(cur)
}

/// Header `rows cols p`, then one row per line.
pub fn matrix_to_text(m: &FMatrix<PrimeField>) -> String {
    format!("{} {} {}\n{}", m.rows(), m.cols(), m.field().p(), m)
}

pub fn matrix_from_text(text: &str) -> Result<FMatrix<PrimeField>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = parse_ints(lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?)?;
    let [rows, cols, p] = header[..] else {
        return Err(Error::Parse("header must read `rows cols p`".into()));
    };
    let f = PrimeField::new(p)?;
    let data: Vec<u64> = lines.map(parse_ints).collect::<Result<Vec<_>>>()?.concat();
    if let Some(v) = data.iter().find(|&&v| v >= p) {
        return Err(Error::Parse(format!("entry {v} out of range for p = {p}")));
    }
    FMatrix::from_vec(&f, rows as usize, cols as usize, data)
        .map_err(|_| Error::Parse(format!("expected {} entries", rows * cols)))
}
