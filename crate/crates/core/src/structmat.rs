//! Dense matrices over a field and the structured constructors: banded
//! Toeplitz blocks, Kronecker products and Kronecker sums.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{ExtField, Field, PrimeField};

/// Default cap on the dimension of a materialized matrix.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Dense row-major matrix tagged with its field.
#[derive(Debug, Clone, PartialEq)]
pub struct FMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> FMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Self {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_ints(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.from_int(v)).collect();
        Self::from_vec(field, r, c, data)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<F::Elem> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("addition of differently shaped matrices".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self + c I`.
    pub fn add_scalar(&self, c: &F::Elem) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("scalar shift of a non-square matrix".into()));
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] = self.field.add(&m[(i, i)], c);
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if f.is_zero(b) {
                        continue;
                    }
                    let t = f.mul(a, b);
                    out[(i, j)] = f.add(&out[(i, j)], &t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = &self[(r, c)];
                    if r == c {
                        self.field.is_one(e)
                    } else {
                        self.field.is_zero(e)
                    }
                })
            })
    }

    pub fn map<G: Field>(&self, field: &G, f: impl Fn(&F::Elem) -> G::Elem) -> FMatrix<G> {
        FMatrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Square sub-block of size `n` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }
}

impl FMatrix<PrimeField> {
    /// Embed a base-field matrix into an extension.
    pub fn lift(&self, ext: &ExtField) -> FMatrix<ExtField> {
        self.map(ext, |&a| ext.from_base(a))
    }
}

impl FMatrix<ExtField> {
    /// Back to the prime field, if every entry lies there.
    pub fn to_base(&self) -> Option<FMatrix<PrimeField>> {
        let base = self.field.base();
        let data = self
            .data
            .iter()
            .map(|a| self.field.to_base(a))
            .collect::<Option<Vec<u64>>>()?;
        Some(FMatrix {
            field: base,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<F: Field> Index<(usize, usize)> for FMatrix<F> {
    type Output = F::Elem;
    fn index(&self, (r, c): (usize, usize)) -> &F::Elem {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for FMatrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F::Elem {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// One row per line, entries separated by spaces.
impl<F: Field> fmt::Display for FMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| self.field.render(e)).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Banded Toeplitz matrix with zero diagonal: `lower[q-1]` sits on the q-th
/// subdiagonal, `upper[q-1]` on the q-th superdiagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzSpec<E> {
    pub size: usize,
    pub lower: Vec<E>,
    pub upper: Vec<E>,
}

impl<E> ToeplitzSpec<E> {
    pub fn bandwidth(&self) -> usize {
        self.lower.len().max(self.upper.len())
    }
}

pub fn toeplitz<F: Field>(field: &F, spec: &ToeplitzSpec<F::Elem>) -> Result<FMatrix<F>> {
    let band = spec.bandwidth();
    if band == 0 || band >= spec.size {
        return Err(Error::BandTooWide { band, size: spec.size });
    }
    Ok(FMatrix::from_fn(field, spec.size, spec.size, |r, c| {
        if r > c {
            spec.lower.get(r - c - 1).cloned().unwrap_or_else(|| field.zero())
        } else if c > r {
            spec.upper.get(c - r - 1).cloned().unwrap_or_else(|| field.zero())
        } else {
            field.zero()
        }
    }))
}

/// `S_n(t1, t2)`: `t1` below the diagonal, `t2` above it.
pub fn tridiagonal<F: Field>(field: &F, n: usize, t1: F::Elem, t2: F::Elem) -> Result<FMatrix<F>> {
    toeplitz(
        field,
        &ToeplitzSpec {
            size: n,
            lower: vec![t1],
            upper: vec![t2],
        },
    )
}

/// `K_n = S_n(1, 1)`.
pub fn k_matrix<F: Field>(field: &F, n: usize) -> Result<FMatrix<F>> {
    tridiagonal(field, n, field.one(), field.one())
}

pub fn kron_product<F: Field>(a: &FMatrix<F>, b: &FMatrix<F>) -> Result<FMatrix<F>> {
    a.check_field(b)?;
    let f = &a.field;
    Ok(FMatrix::from_fn(f, a.rows * b.rows, a.cols * b.cols, |r, c| {
        f.mul(&a[(r / b.rows, c / b.cols)], &b[(r % b.rows, c % b.cols)])
    }))
}

/// `I_k (x) A + B (x) I_j` for `A` of size `j` and `B` of size `k`.
pub fn kron_sum<F: Field>(a: &FMatrix<F>, b: &FMatrix<F>) -> Result<FMatrix<F>> {
    a.check_field(b)?;
    if !a.is_square() || !b.is_square() {
        return Err(Error::ShapeMismatch("Kronecker sum needs square matrices".into()));
    }
    let f = &a.field;
    let (j, k) = (a.rows, b.rows);
    Ok(FMatrix::from_fn(f, j * k, j * k, |r, c| {
        let (ra, rb) = (r % j, r / j);
        let (ca, cb) = (c % j, c / j);
        let mut v = f.zero();
        if rb == cb {
            v = f.add(&v, &a[(ra, ca)]);
        }
        if ra == ca {
            v = f.add(&v, &b[(rb, cb)]);
        }
        v
    }))
}

/// Apply one factor along a tensor mode. `x` is `N x cols` with rows indexed
/// in nested order (mode 0 fastest); `stride` is the product of the sizes of
/// the faster modes.
fn mode_apply<F: Field>(a: &FMatrix<F>, x: &FMatrix<F>, stride: usize) -> FMatrix<F> {
    let f = &x.field;
    let m = a.rows;
    let mut out = FMatrix::zeros(f, x.rows, x.cols);
    let block = stride * m;
    for outer in 0..x.rows / block {
        for inner in 0..stride {
            let base = outer * block + inner;
            for i in 0..m {
                let ri = base + i * stride;
                for j in 0..m {
                    let aij = &a[(i, j)];
                    if f.is_zero(aij) {
                        continue;
                    }
                    let rj = base + j * stride;
                    for c in 0..x.cols {
                        let t = f.mul(aij, &x.data[rj * x.cols + c]);
                        let dst = &mut out.data[ri * x.cols + c];
                        *dst = f.add(dst, &t);
                    }
                }
            }
        }
    }
    out
}

fn check_factors<F: Field>(factors: &[FMatrix<F>], x: &FMatrix<F>) -> Result<()> {
    let n: usize = factors.iter().map(|a| a.rows).product();
    if factors.iter().any(|a| !a.is_square()) || n != x.rows {
        return Err(Error::ShapeMismatch(format!(
            "factor sizes multiply to {n}, operand has {} rows",
            x.rows
        )));
    }
    if factors.iter().any(|a| a.field != x.field) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `(A_d (x) ... (x) A_1) X` without materializing the Kronecker product.
/// `factors[0]` is `A_1`, the fastest-varying mode.
pub fn kron_apply<F: Field>(factors: &[FMatrix<F>], x: &FMatrix<F>) -> Result<FMatrix<F>> {
    check_factors(factors, x)?;
    let mut cur = x.clone();
    let mut stride = 1;
    for a in factors {
        cur = mode_apply(a, &cur, stride);
        stride *= a.rows;
    }
    Ok(cur)
}

/// Kronecker sum of the factors (nested, `factors[0]` fastest) applied to `X`.
pub fn kron_sum_apply<F: Field>(factors: &[FMatrix<F>], x: &FMatrix<F>) -> Result<FMatrix<F>> {
    check_factors(factors, x)?;
    let f = &x.field;
    let mut acc = FMatrix::zeros(f, x.rows, x.cols);
    let mut stride = 1;
    for a in factors {
        let term = mode_apply(a, x, stride);
        acc = acc.add(&term)?;
        stride *= a.rows;
    }
    Ok(acc)
}

/// Materialize the nested Kronecker sum `((A_1 (+) A_2) (+) A_3) ...`.
pub fn kron_sum_all<F: Field>(factors: &[FMatrix<F>], cap: usize) -> Result<FMatrix<F>> {
    let n: usize = factors.iter().map(|a| a.rows).product();
    if n > cap {
        return Err(Error::SizeCapExceeded { size: n, cap });
    }
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("no factors".into()))?;
    rest.iter().try_fold(first.clone(), |acc, a| kron_sum(&acc, a))
}

/// Materialize `A_d (x) ... (x) A_1` (`factors[0]` fastest).
pub fn kron_product_all<F: Field>(factors: &[FMatrix<F>], cap: usize) -> Result<FMatrix<F>> {
    let n: usize = factors.iter().map(|a| a.rows).product();
    if n > cap {
        return Err(Error::SizeCapExceeded { size: n, cap });
    }
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("no factors".into()))?;
    rest.iter().try_fold(first.clone(), |acc, a| kron_product(a, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::{Rng, SeedableRng};

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random(f: &PrimeField, r: usize, c: usize, rng: &mut impl Rng) -> FMatrix<PrimeField> {
        FMatrix::from_fn(f, r, c, |_, _| rng.gen_range(0..f.p()))
    }

    #[test]
    fn toeplitz_examples() {
        let f = gf(7);
        let s = tridiagonal(&f, 3, 1, 2).unwrap();
        let expect = FMatrix::from_ints(&f, &[vec![0, 2, 0], vec![1, 0, 2], vec![0, 1, 0]]).unwrap();
        assert_eq!(s, expect);
        let k2 = k_matrix(&f, 2).unwrap();
        assert_eq!(k2, FMatrix::from_ints(&f, &[vec![0, 1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn wide_band_entries() {
        let f = gf(11);
        let spec = ToeplitzSpec {
            size: 4,
            lower: vec![1, 2],
            upper: vec![3, 4],
        };
        let t = toeplitz(&f, &spec).unwrap();
        let expect = FMatrix::from_ints(
            &f,
            &[vec![0, 3, 4, 0], vec![1, 0, 3, 4], vec![2, 1, 0, 3], vec![0, 2, 1, 0]],
        )
        .unwrap();
        assert_eq!(t, expect);
        let too_wide = ToeplitzSpec {
            size: 2,
            lower: vec![1, 1],
            upper: vec![1, 1],
        };
        assert_eq!(toeplitz(&f, &too_wide), Err(Error::BandTooWide { band: 2, size: 2 }));
    }

    #[test]
    fn transpose_swaps_bands() {
        let f = gf(13);
        for n in 2..7 {
            let a = tridiagonal(&f, n, 3, 5).unwrap();
            assert_eq!(a.transpose(), tridiagonal(&f, n, 5, 3).unwrap());
        }
    }

    #[test]
    fn identity_kron_is_block_diagonal() {
        let f = gf(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = random(&f, 3, 3, &mut rng);
        let k = kron_product(&FMatrix::identity(&f, 2), &a).unwrap();
        assert_eq!(k.block(0, 0, 3, 3), a);
        assert_eq!(k.block(3, 3, 3, 3), a);
        assert_eq!(k.block(0, 3, 3, 3), FMatrix::zeros(&f, 3, 3));
    }

    #[test]
    fn mixed_product_and_rank() {
        let f = gf(7);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = random(&f, 2, 2, &mut rng);
            let b = random(&f, 3, 3, &mut rng);
            let c = random(&f, 2, 2, &mut rng);
            let d = random(&f, 3, 3, &mut rng);
            let lhs = kron_product(&a, &b)
                .unwrap()
                .mul(&kron_product(&c, &d).unwrap())
                .unwrap();
            let rhs = kron_product(&a.mul(&c).unwrap(), &b.mul(&d).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let ab = kron_product(&a, &b).unwrap();
            assert_eq!(oracle::rank(&ab), oracle::rank(&a) * oracle::rank(&b));
        }
    }

    #[test]
    fn kron_sum_with_zero_summand() {
        let f = gf(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let a = random(&f, 3, 3, &mut rng);
        let s = kron_sum(&a, &FMatrix::zeros(&f, 2, 2)).unwrap();
        assert_eq!(s, kron_product(&FMatrix::identity(&f, 2), &a).unwrap());
    }

    #[test]
    fn field_mismatch() {
        let a = FMatrix::identity(&gf(5), 2);
        let b = FMatrix::identity(&gf(7), 2);
        assert_eq!(kron_product(&a, &b), Err(Error::FieldMismatch));
        assert_eq!(kron_sum(&a, &b), Err(Error::FieldMismatch));
    }

    #[test]
    fn eigenvector_transport() {
        // K_2 has eigenpairs (1, (1,1)) and (-1, (1,-1)); S_3(1, 0) - 2I style
        // triangular matrices give explicit eigenpairs too.
        let f = gf(7);
        let a = k_matrix(&f, 2).unwrap();
        let b = FMatrix::from_ints(&f, &[vec![2, 1, 0], vec![0, 3, 1], vec![0, 0, 5]]).unwrap();
        let s = kron_sum(&a, &b).unwrap();
        let a_pairs = [(1i64, vec![1i64, 1]), (-1, vec![1, -1])];
        // eigenvectors of upper-triangular b by back substitution
        for (mu, x) in &a_pairs {
            for nu in [2i64, 3, 5] {
                let shifted = b.add_scalar(&f.from_int(-nu)).unwrap();
                let kernel = oracle::nullspace(&shifted);
                assert_eq!(kernel.len(), 1);
                let y = &kernel[0];
                let xv: Vec<u64> = x.iter().map(|&v| f.from_int(v)).collect();
                let yx: Vec<u64> = y.iter().flat_map(|yi| xv.iter().map(move |xi| f.mul(yi, xi))).collect();
                let lhs = s.mul_vec(&yx).unwrap();
                let lambda = f.from_int(mu + nu);
                let rhs: Vec<u64> = yx.iter().map(|v| f.mul(v, &lambda)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn nested_kron_sum_matches_block_display() {
        // (S_n(c,d) (+) S_s(a,b)) (+) S_m(f,e): T has S_n on the diagonal blocks of
        // M_s, b I / a I on its off-diagonal blocks, e I above and f I below in T.
        let f = gf(13);
        let (a, b, c, d, e, ff) = (2u64, 3, 4, 5, 6, 7);
        for (n, s, m) in [(2usize, 2usize, 2usize), (3, 2, 2)] {
            let sn = tridiagonal(&f, n, c, d).unwrap();
            let ss = tridiagonal(&f, s, a, b).unwrap();
            let sm = tridiagonal(&f, m, ff, e).unwrap();
            let t = kron_sum_all(&[sn.clone(), ss, sm], 4096).unwrap();
            let ns = n * s;
            let mut expect = FMatrix::zeros(&f, ns * m, ns * m);
            let mut ms = FMatrix::zeros(&f, ns, ns);
            for i in 0..s {
                ms.set_block(i * n, i * n, &sn);
                if i + 1 < s {
                    ms.set_block(i * n, (i + 1) * n, &FMatrix::identity(&f, n).scale(&b));
                    ms.set_block((i + 1) * n, i * n, &FMatrix::identity(&f, n).scale(&a));
                }
            }
            for i in 0..m {
                expect.set_block(i * ns, i * ns, &ms);
                if i + 1 < m {
                    expect.set_block(i * ns, (i + 1) * ns, &FMatrix::identity(&f, ns).scale(&e));
                    expect.set_block((i + 1) * ns, i * ns, &FMatrix::identity(&f, ns).scale(&ff));
                }
            }
            assert_eq!(t, expect);
        }
    }

    #[test]
    fn structured_application_matches_dense() {
        let f = gf(11);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let factors = vec![
            random(&f, 2, 2, &mut rng),
            random(&f, 3, 3, &mut rng),
            random(&f, 2, 2, &mut rng),
        ];
        let x = random(&f, 12, 5, &mut rng);
        let dense_sum = kron_sum_all(&factors, 100).unwrap();
        assert_eq!(kron_sum_apply(&factors, &x).unwrap(), dense_sum.mul(&x).unwrap());
        let dense_prod = kron_product_all(&factors, 100).unwrap();
        assert_eq!(kron_apply(&factors, &x).unwrap(), dense_prod.mul(&x).unwrap());
    }

    #[test]
    fn size_cap() {
        let f = gf(2);
        let k = k_matrix(&f, 20).unwrap();
        assert_eq!(
            kron_sum_all(&[k.clone(), k.clone(), k], 4096),
            Err(Error::SizeCapExceeded { size: 8000, cap: 4096 })
        );
    }
}
