//! Spectral analysis of the transition matrix through its Kronecker-sum
//! structure: per-axis roots, the reversibility decision, a generalized
//! Jordan form and the exact inverse.
//!
//! Eigenvalues are laid out in nested order with the first axis fastest,
//! matching the cell order, and within an axis by the canonical element order.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::ca::RuleSpec;
use crate::charpoly::g_poly;
use crate::error::{Error, Result};
use crate::field::{roots_with_multiplicity, splitting_field, ExtElem, ExtField, Field, Poly, PolyRing, PrimeField};
use crate::oracle;
use crate::structmat::{
    k_matrix, kron_apply, kron_product_all, kron_sum_all, kron_sum_apply, FMatrix, DEFAULT_SIZE_CAP,
};

/// Roots of one axis' characteristic polynomial in the shared splitting field.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpectrum {
    pub axis: usize,
    pub charpoly: Poly<u64>,
    /// Canonically sorted, with multiplicities.
    pub roots: Vec<(ExtElem, usize)>,
}

impl AxisSpectrum {
    /// Each root repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<ExtElem> {
        self.roots
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectra {
    pub field: ExtField,
    pub axes: Vec<AxisSpectrum>,
}

/// Characteristic polynomial of axis `k`, including the `c` shift on axis 0.
pub fn axis_charpoly(rule: &RuleSpec, k: usize) -> Result<Poly<u64>> {
    let f = rule.field();
    if rule.eta == 1 {
        let band = &rule.axes[k];
        let g = g_poly(&f, rule.dims[k], &f.mul(&band.ell[0], &band.r[0])).coeffs;
        if k == 0 && rule.c != 0 {
            return Ok(PolyRing::new(f).shift(&g, &rule.c));
        }
        return Ok(g);
    }
    oracle::char_poly(&rule.axis_matrix(k)?)
}

pub fn axis_spectra(rule: &RuleSpec) -> Result<Spectra> {
    let base = rule.field();
    let polys = (0..rule.d())
        .map(|k| axis_charpoly(rule, k))
        .collect::<Result<Vec<_>>>()?;
    let field = splitting_field(&base, &polys)?;
    let mut axes: Vec<AxisSpectrum> = Vec::with_capacity(polys.len());
    for (axis, charpoly) in polys.into_iter().enumerate() {
        let roots = match axes.iter().find(|a| a.charpoly == charpoly) {
            Some(a) => a.roots.clone(),
            None => roots_with_multiplicity(&charpoly, &field)?,
        };
        axes.push(AxisSpectrum { axis, charpoly, roots });
    }
    Ok(Spectra { field, axes })
}

/// All sums `λ_1 + ... + λ_d`, one per cell, in nested order.
pub fn eigenvalue_multiset(spectra: &Spectra) -> Vec<ExtElem> {
    nested_sums(&spectra.field, spectra.axes.iter().map(AxisSpectrum::expanded))
}

fn nested_sums(f: &ExtField, axes: impl Iterator<Item = Vec<ExtElem>>) -> Vec<ExtElem> {
    let mut acc = vec![f.zero()];
    for ev in axes {
        acc = ev
            .iter()
            .flat_map(|lam| acc.iter().map(move |inner| f.add(inner, lam)))
            .collect();
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub reversible: bool,
    /// First zero-sum combination `(λ_1, ..., λ_d)` in nested order.
    pub witness: Option<Vec<ExtElem>>,
}

pub fn decide(spectra: &Spectra) -> Decision {
    let f = &spectra.field;
    let distinct: Vec<Vec<ExtElem>> = spectra
        .axes
        .iter()
        .map(|a| a.roots.iter().map(|(r, _)| r.clone()).collect())
        .collect();
    let first: HashSet<&ExtElem> = distinct[0].iter().collect();
    let rest = &distinct[1..];
    let mut idx = vec![0usize; rest.len()];
    loop {
        let s = rest
            .iter()
            .zip(&idx)
            .fold(f.zero(), |acc, (roots, &i)| f.add(&acc, &roots[i]));
        let need = f.neg(&s);
        if first.contains(&need) {
            let mut witness = vec![need];
            witness.extend(rest.iter().zip(&idx).map(|(roots, &i)| roots[i].clone()));
            return Decision {
                reversible: false,
                witness: Some(witness),
            };
        }
        // advance with the lowest remaining axis fastest
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Decision {
                    reversible: true,
                    witness: None,
                };
            }
            idx[k] += 1;
            if idx[k] < rest[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn is_reversible(rule: &RuleSpec) -> Result<Decision> {
    Ok(decide(&axis_spectra(rule)?))
}

/// Euler-criterion residues and the geometric-mean map on pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrlContext {
    field: PrimeField,
    residues: Vec<u64>,
}

impl QrlContext {
    pub fn new(p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if p == 2 {
            return Err(Error::OddPrimeRequired);
        }
        let residues = (1..p).filter(|&l| field.pow(&l, (p - 1) / 2) == 1).collect();
        Ok(Self { field, residues })
    }

    /// Nonzero squares, ascending.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn contains(&self, t1: u64, t2: u64) -> bool {
        t1 == t2 || self.residues.binary_search(&self.field.mul(&t1, &t2)).is_ok()
    }

    /// `t` when `t1 = t2 = t`, otherwise the least square root of `t1 t2`.
    pub fn k_of(&self, t1: u64, t2: u64) -> Result<u64> {
        if t1 == t2 {
            return Ok(t1);
        }
        if !self.contains(t1, t2) {
            return Err(Error::NotInDomain(t1, t2));
        }
        let prod = self.field.mul(&t1, &t2);
        (1..self.field.p())
            .find(|t| self.field.mul(t, t) == prod)
            .ok_or(Error::NotInDomain(t1, t2))
    }
}

pub fn qrl_context(p: u64) -> Result<QrlContext> {
    QrlContext::new(p)
}

/// Canonical Jordan decomposition `U^-1 S U = J` of one axis over the
/// splitting field.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisJordan {
    pub u: FMatrix<ExtField>,
    pub u_inv: FMatrix<ExtField>,
    pub j: FMatrix<ExtField>,
    /// `(eigenvalue, block size)` in layout order.
    pub blocks: Vec<(ExtElem, usize)>,
}

impl AxisJordan {
    pub fn size(&self) -> usize {
        self.j.rows()
    }

    pub fn diagonal(&self) -> Vec<ExtElem> {
        self.j.diagonal()
    }

    /// Superdiagonal flags `ε_i ∈ {0, 1}`.
    pub fn eps(&self) -> Vec<bool> {
        let f = self.j.field();
        (0..self.size().saturating_sub(1))
            .map(|i| !f.is_zero(&self.j[(i, i + 1)]))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|(_, s)| *s == 1)
    }

    fn from_blocks(field: &ExtField, u: FMatrix<ExtField>, blocks: Vec<(ExtElem, usize)>) -> Result<Self> {
        let n = u.rows();
        let mut j = FMatrix::zeros(field, n, n);
        let mut pos = 0;
        for (lam, size) in &blocks {
            for t in 0..*size {
                j[(pos + t, pos + t)] = lam.clone();
                if t + 1 < *size {
                    j[(pos + t, pos + t + 1)] = field.one();
                }
            }
            pos += size;
        }
        let u_inv =
            oracle::inverse(&u).map_err(|_| Error::InternalVerificationFailed("Jordan basis is singular".into()))?;
        Ok(Self { u, u_inv, j, blocks })
    }

    fn verify(&self, s: &FMatrix<ExtField>) -> Result<()> {
        if s.mul(&self.u)? != self.u.mul(&self.j)? {
            return Err(Error::InternalVerificationFailed(
                "axis conjugation S U = U J failed".into(),
            ));
        }
        Ok(())
    }
}

/// Row-echelon span used to test linear independence incrementally.
struct Span<'a> {
    field: &'a ExtField,
    rows: Vec<(usize, Vec<ExtElem>)>,
}

impl<'a> Span<'a> {
    fn new(field: &'a ExtField) -> Self {
        Self {
            field,
            rows: Vec::new(),
        }
    }

    fn insert(&mut self, v: &[ExtElem]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if f.is_zero(&v[*piv]) {
                continue;
            }
            let c = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        let Some(piv) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[piv]).expect("nonzero pivot");
        let v = v.iter().map(|x| f.mul(x, &inv)).collect();
        self.rows.push((piv, v));
        true
    }
}

/// Jordan chains of `S - λ I` for one eigenvalue, longest first; each chain
/// is returned as columns `[N^(L-1) v, ..., N v, v]`.
fn chains_for(s: &FMatrix<ExtField>, lam: &ExtElem, mult: usize) -> Result<Vec<Vec<Vec<ExtElem>>>> {
    let f = s.field().clone();
    let n = s.rows();
    let nmat = s.add_scalar(&f.neg(lam))?;
    let mut kernels: Vec<Vec<Vec<ExtElem>>> = vec![Vec::new()];
    let mut power = FMatrix::identity(&f, n);
    while kernels.last().map_or(0, Vec::len) < mult {
        power = power.mul(&nmat)?;
        let ker = oracle::nullspace(&power);
        if ker.len() == kernels.last().map_or(0, Vec::len) {
            return Err(Error::InternalVerificationFailed(format!(
                "generalized eigenspace of {} stalls below multiplicity {mult}",
                f.render(lam)
            )));
        }
        kernels.push(ker);
    }
    let height = kernels.len() - 1;
    let mut tops: Vec<(Vec<ExtElem>, usize)> = Vec::new();
    for level in (1..=height).rev() {
        let mut span = Span::new(&f);
        for v in &kernels[level - 1] {
            span.insert(v);
        }
        for (v, len) in &tops {
            let mut w = v.clone();
            for _ in 0..len - level {
                w = nmat.mul_vec(&w)?;
            }
            span.insert(&w);
        }
        for w in &kernels[level] {
            if span.insert(w) {
                tops.push((w.clone(), level));
            }
        }
    }
    tops.iter()
        .map(|(v, len)| {
            let mut cols = vec![v.clone()];
            for _ in 1..*len {
                let next = nmat.mul_vec(cols.last().expect("nonempty"))?;
                cols.push(next);
            }
            cols.reverse();
            Ok(cols)
        })
        .collect()
}

/// Jordan form of `s` over `ext`; `roots` are its eigenvalues with
/// multiplicity, canonically sorted.
pub fn jordan_axis(s: &FMatrix<PrimeField>, ext: &ExtField, roots: &[(ExtElem, usize)]) -> Result<AxisJordan> {
    let se = s.lift(ext);
    let n = s.rows();
    if roots.iter().map(|(_, k)| k).sum::<usize>() != n {
        return Err(Error::ShapeMismatch(
            "root multiplicities do not add up to the size".into(),
        ));
    }
    let mut columns: Vec<Vec<ExtElem>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (lam, mult) in roots {
        for chain in chains_for(&se, lam, *mult)? {
            blocks.push((lam.clone(), chain.len()));
            columns.extend(chain);
        }
    }
    let u = FMatrix::from_fn(ext, n, n, |r, c| columns[c][r].clone());
    let aj = AxisJordan::from_blocks(ext, u, blocks)?;
    aj.verify(&se)?;
    Ok(aj)
}

/// `U^-1 T U = J` with `U = U_d ⊗ ... ⊗ U_1` and `J` the Kronecker sum of
/// the axis Jordan forms.
#[derive(Debug, Clone, PartialEq)]
pub struct GenJordan {
    pub field: ExtField,
    pub axes: Vec<AxisJordan>,
}

impl GenJordan {
    pub fn size(&self) -> usize {
        self.axes.iter().map(AxisJordan::size).product()
    }

    /// Diagonal of `J` in nested order.
    pub fn diagonal(&self) -> Vec<ExtElem> {
        nested_sums(&self.field, self.axes.iter().map(AxisJordan::diagonal))
    }

    pub fn eps(&self) -> Vec<Vec<bool>> {
        self.axes.iter().map(AxisJordan::eps).collect()
    }

    pub fn diagonalizable(&self) -> bool {
        self.axes.iter().all(AxisJordan::is_diagonal)
    }

    pub fn u(&self, cap: usize) -> Result<FMatrix<ExtField>> {
        kron_product_all(&self.axes.iter().map(|a| a.u.clone()).collect::<Vec<_>>(), cap)
    }

    pub fn u_inv(&self, cap: usize) -> Result<FMatrix<ExtField>> {
        kron_product_all(&self.axes.iter().map(|a| a.u_inv.clone()).collect::<Vec<_>>(), cap)
    }

    pub fn j(&self, cap: usize) -> Result<FMatrix<ExtField>> {
        kron_sum_all(&self.axes.iter().map(|a| a.j.clone()).collect::<Vec<_>>(), cap)
    }

    /// Check `T U = U J` on the full matrices.
    pub fn verify(&self, rule: &RuleSpec, cap: usize) -> Result<()> {
        let factors: Vec<FMatrix<ExtField>> = rule.axis_matrices()?.iter().map(|s| s.lift(&self.field)).collect();
        let u = self.u(cap)?;
        let tu = kron_sum_apply(&factors, &u)?;
        if tu != u.mul(&self.j(cap)?)? {
            return Err(Error::InternalVerificationFailed("T U = U J failed".into()));
        }
        Ok(())
    }
}

pub fn generalized_jordan(rule: &RuleSpec) -> Result<GenJordan> {
    let spectra = axis_spectra(rule)?;
    generalized_jordan_with(rule, &spectra)
}

pub fn generalized_jordan_with(rule: &RuleSpec, spectra: &Spectra) -> Result<GenJordan> {
    let axes = rule
        .axis_matrices()?
        .iter()
        .zip(&spectra.axes)
        .map(|(s, sp)| jordan_axis(s, &spectra.field, &sp.roots))
        .collect::<Result<Vec<_>>>()?;
    Ok(GenJordan {
        field: spectra.field.clone(),
        axes,
    })
}

/// Inverse of the block upper-bidiagonal matrix with diagonal blocks
/// `blocks` and superdiagonal blocks `omegas[i] I`.
pub fn block_triangular_inverse<F: Field>(blocks: &[FMatrix<F>], omegas: &[F::Elem]) -> Result<FMatrix<F>> {
    let inverses = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| oracle::inverse(b).map_err(|_| Error::SingularBlock(i + 1)))
        .collect::<Result<Vec<_>>>()?;
    assemble_block_inverse(&inverses, omegas)
}

/// Block `(q1, q2)` is `(-1)^(q2-q1) ω_q1 ... ω_(q2-1) A_q1^-1 ... A_q2^-1`.
fn assemble_block_inverse<F: Field>(inverses: &[FMatrix<F>], omegas: &[F::Elem]) -> Result<FMatrix<F>> {
    let k = inverses.len();
    if k == 0 || omegas.len() + 1 != k {
        return Err(Error::ShapeMismatch(format!(
            "{k} blocks need {} superdiagonal scalars",
            k.saturating_sub(1)
        )));
    }
    let r = inverses[0].rows();
    if inverses.iter().any(|a| a.rows() != r || a.cols() != r) {
        return Err(Error::ShapeMismatch("diagonal blocks differ in size".into()));
    }
    let f = inverses[0].field().clone();
    let mut out = FMatrix::zeros(&f, k * r, k * r);
    for q1 in 0..k {
        let mut acc = inverses[q1].clone();
        out.set_block(q1 * r, q1 * r, &acc);
        for q2 in q1 + 1..k {
            let w = &omegas[q2 - 1];
            if f.is_zero(w) {
                break;
            }
            acc = acc.mul(&inverses[q2])?.scale(&f.neg(w));
            out.set_block(q1 * r, q2 * r, &acc);
        }
    }
    Ok(out)
}

/// `J^-1` by nesting the block-triangular inverse over the axes.
pub fn jordan_inverse(gj: &GenJordan, cap: usize) -> Result<FMatrix<ExtField>> {
    let n = gj.size();
    if n > cap {
        return Err(Error::SizeCapExceeded { size: n, cap });
    }
    let mut memo: Vec<HashMap<ExtElem, FMatrix<ExtField>>> = vec![HashMap::new(); gj.axes.len()];
    shifted_inverse(gj, gj.axes.len() - 1, &gj.field.zero(), &mut memo)
}

/// Inverse of `J_(level) + shift I`, where `J_(level)` is the Kronecker sum
/// of axes `0..=level`.
fn shifted_inverse(
    gj: &GenJordan,
    level: usize,
    shift: &ExtElem,
    memo: &mut Vec<HashMap<ExtElem, FMatrix<ExtField>>>,
) -> Result<FMatrix<ExtField>> {
    if let Some(m) = memo[level].get(shift) {
        return Ok(m.clone());
    }
    let f = &gj.field;
    let axis = &gj.axes[level];
    let omegas: Vec<ExtElem> = axis.eps().iter().map(|&e| if e { f.one() } else { f.zero() }).collect();
    let mut inverses = Vec::with_capacity(axis.size());
    for (i, lam) in axis.diagonal().iter().enumerate() {
        let s = f.add(lam, shift);
        let inv = if level == 0 {
            let x = f.inv(&s).map_err(|_| Error::SingularBlock(i + 1))?;
            FMatrix::from_vec(f, 1, 1, vec![x])?
        } else {
            shifted_inverse(gj, level - 1, &s, memo)?
        };
        inverses.push(inv);
    }
    let out = assemble_block_inverse(&inverses, &omegas)?;
    memo[level].insert(shift.clone(), out.clone());
    Ok(out)
}

/// `T^-1 = U J^-1 U^-1`, checked to lie in the base field and to invert `T`.
pub fn invert_t(rule: &RuleSpec) -> Result<FMatrix<PrimeField>> {
    invert_t_with_cap(rule, DEFAULT_SIZE_CAP)
}

pub fn invert_t_with_cap(rule: &RuleSpec, cap: usize) -> Result<FMatrix<PrimeField>> {
    let n = rule.size();
    if n > cap {
        return Err(Error::SizeCapExceeded { size: n, cap });
    }
    let spectra = axis_spectra(rule)?;
    let decision = decide(&spectra);
    if let Some(w) = decision.witness {
        return Err(Error::NotReversible {
            witness: w.iter().map(|e| spectra.field.render(e)).collect(),
        });
    }
    let gj = generalized_jordan_with(rule, &spectra)?;
    let j_inv = jordan_inverse(&gj, cap)?;
    let u_inv_t: Vec<FMatrix<ExtField>> = gj.axes.iter().map(|a| a.u_inv.transpose()).collect();
    let right = kron_apply(&u_inv_t, &j_inv.transpose())?.transpose();
    let u: Vec<FMatrix<ExtField>> = gj.axes.iter().map(|a| a.u.clone()).collect();
    let full = kron_apply(&u, &right)?;
    let inv = full
        .to_base()
        .ok_or_else(|| Error::InternalVerificationFailed("inverse has entries outside the base field".into()))?;
    if !kron_sum_apply(&rule.axis_matrices()?, &inv)?.is_identity() {
        return Err(Error::InternalVerificationFailed("T T^-1 is not the identity".into()));
    }
    Ok(inv)
}

/// Jordan form through the scaling `P^-1 S P = k K` available when every
/// axis pair lies in the domain of the geometric-mean map (`eta = 1`, odd p).
pub fn reciprocal_jordan(rule: &RuleSpec) -> Result<GenJordan> {
    if rule.eta != 1 {
        return Err(Error::InvalidRule("the scaled path needs eta = 1".into()));
    }
    let ctx = QrlContext::new(rule.p)?;
    let spectra = axis_spectra(rule)?;
    let ext = &spectra.field;
    let base = rule.field();
    let axes = (0..rule.d())
        .map(|k| {
            let (t1, t2) = (rule.axes[k].ell[0], rule.axes[k].r[0]);
            let shift = if k == 0 { rule.c } else { 0 };
            let kk = ctx.k_of(t1, t2)?;
            let m = rule.dims[k];
            let aj = if kk == 0 {
                let u = FMatrix::identity(ext, m);
                let blocks = vec![(ext.from_base(shift), 1); m];
                AxisJordan::from_blocks(ext, u, blocks)?
            } else {
                scaled_axis(&base, ext, m, t1, kk, shift)?
            };
            aj.verify(&rule.axis_matrix(k)?.lift(ext))?;
            Ok(aj)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GenJordan {
        field: ext.clone(),
        axes,
    })
}

/// Jordan form of `S_m(t1, t2) + shift I` from that of `K_m`, given
/// `kk^2 = t1 t2`, `kk != 0`.
fn scaled_axis(base: &PrimeField, ext: &ExtField, m: usize, t1: u64, kk: u64, shift: u64) -> Result<AxisJordan> {
    let km = k_matrix(base, m)?;
    let roots = roots_with_multiplicity(&g_poly(base, m, &1).coeffs, ext)?;
    let kj = jordan_axis(&km, ext, &roots)?;
    let ratio = base.mul(&t1, &base.inv(&kk)?);
    let kinv = base.inv(&kk)?;
    // column scale: P = diag(ratio^i) on rows, k^-t along each chain
    let mut col_scale = Vec::with_capacity(m);
    for (_, size) in &kj.blocks {
        for t in 0..*size {
            col_scale.push(base.pow(&kinv, t as u64));
        }
    }
    let u = FMatrix::from_fn(ext, m, m, |r, c| {
        let s = base.mul(&base.pow(&ratio, r as u64), &col_scale[c]);
        ext.mul(&kj.u[(r, c)], &ext.from_base(s))
    });
    let kk_e = ext.from_base(kk);
    let shift_e = ext.from_base(shift);
    let mut blocks: Vec<(ExtElem, usize, usize)> = Vec::new();
    let mut pos = 0;
    for (lam, size) in &kj.blocks {
        blocks.push((ext.add(&ext.mul(&kk_e, lam), &shift_e), *size, pos));
        pos += size;
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0));
    let order: Vec<usize> = blocks
        .iter()
        .flat_map(|(_, size, start)| *start..start + size)
        .collect();
    let u = FMatrix::from_fn(ext, m, m, |r, c| u[(r, order[c])].clone());
    AxisJordan::from_blocks(ext, u, blocks.into_iter().map(|(lam, size, _)| (lam, size)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElemReport {
    pub coeffs: Vec<u64>,
    pub text: String,
}

impl ElemReport {
    pub fn new(field: &ExtField, e: &ExtElem) -> Self {
        Self {
            coeffs: e.coeffs().to_vec(),
            text: field.render(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub value: ElemReport,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisReport {
    pub axis: usize,
    pub charpoly: Vec<u64>,
    pub roots: Vec<RootReport>,
}

/// JSON-friendly summary of a reversibility check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub p: u64,
    pub field_degree: usize,
    pub modulus: Vec<u64>,
    pub axes: Vec<AxisReport>,
    pub reversible: bool,
    pub witness: Option<Vec<ElemReport>>,
}

impl SpectralReport {
    pub fn new(spectra: &Spectra, decision: &Decision) -> Self {
        let f = &spectra.field;
        Self {
            p: f.p(),
            field_degree: f.k(),
            modulus: f.modulus().coeffs().to_vec(),
            axes: spectra
                .axes
                .iter()
                .map(|a| AxisReport {
                    axis: a.axis + 1,
                    charpoly: a.charpoly.coeffs().to_vec(),
                    roots: a
                        .roots
                        .iter()
                        .map(|(r, k)| RootReport {
                            value: ElemReport::new(f, r),
                            multiplicity: *k,
                        })
                        .collect(),
                })
                .collect(),
            reversible: decision.reversible,
            witness: decision
                .witness
                .as_ref()
                .map(|w| w.iter().map(|e| ElemReport::new(f, e)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanBlockReport {
    pub eigenvalue: ElemReport,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisJordanReport {
    pub axis: usize,
    pub blocks: Vec<JordanBlockReport>,
    pub eps: Vec<u8>,
    pub diagonalizable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanReport {
    pub p: u64,
    pub field_degree: usize,
    pub modulus: Vec<u64>,
    pub axes: Vec<AxisJordanReport>,
    pub diagonalizable: bool,
    /// Diagonal of `J` in nested order.
    pub eigenvalues: Vec<Vec<u64>>,
}

impl JordanReport {
    pub fn new(gj: &GenJordan) -> Self {
        let f = &gj.field;
        Self {
            p: f.p(),
            field_degree: f.k(),
            modulus: f.modulus().coeffs().to_vec(),
            axes: gj
                .axes
                .iter()
                .enumerate()
                .map(|(k, a)| AxisJordanReport {
                    axis: k + 1,
                    blocks: a
                        .blocks
                        .iter()
                        .map(|(lam, size)| JordanBlockReport {
                            eigenvalue: ElemReport::new(f, lam),
                            size: *size,
                        })
                        .collect(),
                    eps: a.eps().into_iter().map(u8::from).collect(),
                    diagonalizable: a.is_diagonal(),
                })
                .collect(),
            diagonalizable: gj.diagonalizable(),
            eigenvalues: gj.diagonal().iter().map(|e| e.coeffs().to_vec()).collect(),
        }
    }
}
