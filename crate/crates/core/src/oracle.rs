//! Brute-force reference linear algebra: Gauss–Jordan elimination and
//! fraction-free characteristic polynomials. Pivoting always takes the first
//! nonzero entry so intermediate states are reproducible.

use crate::error::{Error, Result};
use crate::field::{Field, Poly, PolyRing};
use crate::structmat::FMatrix;

/// Largest matrix accepted by [`char_poly`].
pub const CHAR_POLY_CAP: usize = 64;

/// Reduced row echelon form in place; returns the pivot columns and the sign
/// of the row permutation.
fn rref<F: Field>(m: &mut FMatrix<F>, ncols: usize) -> (Vec<usize>, bool) {
    let f = m.field().clone();
    let rows = m.rows();
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
            continue;
        };
        if pr != r {
            swap_rows(m, pr, r);
            odd = !odd;
        }
        let inv = f.inv(&m[(r, c)]).expect("pivot is nonzero");
        for j in 0..m.cols() {
            m[(r, j)] = f.mul(&m[(r, j)], &inv);
        }
        for i in 0..rows {
            if i == r || f.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in 0..m.cols() {
                let t = f.mul(&factor, &m[(r, j)]);
                m[(i, j)] = f.sub(&m[(i, j)], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

fn swap_rows<F: Field>(m: &mut FMatrix<F>, a: usize, b: usize) {
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn require_square<F: Field>(m: &FMatrix<F>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Determinant by forward elimination.
pub fn det<F: Field>(m: &FMatrix<F>) -> Result<F::Elem> {
    require_square(m)?;
    let f = m.field().clone();
    let n = m.rows();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(&a[(i, c)])) else {
            return Ok(f.zero());
        };
        if pr != c {
            swap_rows(&mut a, pr, c);
            d = f.neg(&d);
        }
        let piv = a[(c, c)].clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv)?;
        for i in c + 1..n {
            if f.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = f.mul(&a[(i, c)], &inv);
            for j in c..n {
                let t = f.mul(&factor, &a[(c, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
    }
    Ok(d)
}

pub fn rank<F: Field>(m: &FMatrix<F>) -> usize {
    let mut a = m.clone();
    let cols = a.cols();
    rref(&mut a, cols).0.len()
}

/// Gauss–Jordan inverse of `[M | I]`.
pub fn inverse<F: Field>(m: &FMatrix<F>) -> Result<FMatrix<F>> {
    require_square(m)?;
    let f = m.field();
    let n = m.rows();
    let mut aug = FMatrix::zeros(f, n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, &FMatrix::identity(f, n));
    let (pivots, _) = rref(&mut aug, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok(aug.block(0, n, n, n))
}

/// Basis of `{v : M v = 0}`, one vector per free column.
pub fn nullspace<F: Field>(m: &FMatrix<F>) -> Vec<Vec<F::Elem>> {
    let f = m.field().clone();
    let mut a = m.clone();
    let cols = a.cols();
    let (pivots, _) = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[(r, fc)]);
            }
            v
        })
        .collect()
}

/// Solve `M X = B` for square invertible `M`.
pub fn solve<F: Field>(m: &FMatrix<F>, b: &FMatrix<F>) -> Result<FMatrix<F>> {
    require_square(m)?;
    if b.rows() != m.rows() {
        return Err(Error::ShapeMismatch("right-hand side has the wrong height".into()));
    }
    let n = m.rows();
    let mut aug = FMatrix::zeros(m.field(), n, n + b.cols());
    aug.set_block(0, 0, m);
    aug.set_block(0, n, b);
    let (pivots, _) = rref(&mut aug, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok(aug.block(0, n, n, b.cols()))
}

/// `det(x I - M)` by Bareiss elimination over `F[x]`.
pub fn char_poly<F: Field>(m: &FMatrix<F>) -> Result<Poly<F::Elem>> {
    require_square(m)?;
    let n = m.rows();
    if n > CHAR_POLY_CAP {
        return Err(Error::SizeCapExceeded {
            size: n,
            cap: CHAR_POLY_CAP,
        });
    }
    let f = m.field();
    let ring = PolyRing::new(f.clone());
    if n == 0 {
        return Ok(ring.one());
    }
    let mut a: Vec<Vec<Poly<F::Elem>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = ring.constant(f.neg(&m[(i, j)]));
                    if i == j {
                        ring.add(&c, &ring.x())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Unreachable for x I - M (the determinant is monic), kept for safety.
            let pr = (k + 1..n)
                .find(|&i| !a[i][k].is_zero())
                .ok_or_else(|| Error::InternalVerificationFailed("zero column in x I - M".into()))?;
            a.swap(pr, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&a[k][k], &a[i][j]), &ring.mul(&a[i][k], &a[k][j]));
                a[i][j] = ring.div_exact(&num, &prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { ring.neg(&d) } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::g_poly;
    use crate::field::{roots_with_multiplicity, splitting_field, ExtField, PrimeField};
    use crate::structmat::{k_matrix, kron_sum, tridiagonal};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random(f: &PrimeField, n: usize, rng: &mut impl Rng) -> FMatrix<PrimeField> {
        FMatrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.p()))
    }

    #[test]
    fn identity_inverse() {
        let f = gf(7);
        let i = FMatrix::identity(&f, 5);
        assert_eq!(inverse(&i).unwrap(), i);
        assert_eq!(det(&i).unwrap(), 1);
    }

    #[test]
    fn singular_inverse_fails() {
        let f = gf(5);
        let m = FMatrix::from_ints(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(det(&m).unwrap(), 0);
        assert_eq!(inverse(&m), Err(Error::Singular));
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn det_and_inverse_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2, 3, 5, 7] {
            let f = gf(p);
            for n in 1..7 {
                for _ in 0..10 {
                    let m = random(&f, n, &mut rng);
                    let d = det(&m).unwrap();
                    match inverse(&m) {
                        Ok(inv) => {
                            assert_ne!(d, 0);
                            assert!(m.mul(&inv).unwrap().is_identity());
                            assert_eq!(inverse(&inv).unwrap(), m);
                        }
                        Err(Error::Singular) => assert_eq!(d, 0),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn nullspace_vectors_are_independent_solutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = gf(3);
        for _ in 0..30 {
            let m = FMatrix::from_fn(&f, 4, 6, |_, _| rng.gen_range(0..2));
            let ns = nullspace(&m);
            assert_eq!(ns.len() + rank(&m), 6);
            for v in &ns {
                assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
            }
            if !ns.is_empty() {
                let basis = FMatrix::from_fn(&f, ns.len(), 6, |r, c| ns[r][c]);
                assert_eq!(rank(&basis), ns.len());
            }
        }
    }

    #[test]
    fn solve_matches_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = gf(11);
        let m = FMatrix::from_ints(&f, &[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 5]]).unwrap();
        let b = FMatrix::from_fn(&f, 3, 2, |_, _| rng.gen_range(0..11));
        assert_eq!(solve(&m, &b).unwrap(), inverse(&m).unwrap().mul(&b).unwrap());
    }

    #[test]
    fn char_poly_examples() {
        let f = gf(5);
        let r = PolyRing::new(f);
        assert_eq!(
            char_poly(&k_matrix(&f, 4).unwrap()).unwrap(),
            r.from_ints(&[1, 0, 2, 0, 1])
        );
        let expect = r.mul(&r.pow(&r.linear(&2), 2), &r.pow(&r.linear(&3), 2));
        assert_eq!(char_poly(&k_matrix(&f, 4).unwrap()).unwrap(), expect);
        let f7 = gf(7);
        let r7 = PolyRing::new(f7);
        for (t1, t2) in [(1, 1), (2, 3), (4, 0), (6, 5)] {
            let s = tridiagonal(&f7, 2, t1, t2).unwrap();
            let c = f7.neg(&f7.mul(&t1, &t2));
            assert_eq!(char_poly(&s).unwrap(), r7.from_coeffs(vec![c, 0, 1]));
        }
        assert_eq!(char_poly(&FMatrix::zeros(&f, 3, 3)).unwrap(), r.monomial(1, 3));
    }

    #[test]
    fn char_poly_needs_pivoting() {
        // x I - M with a zero (0,0) entry as a polynomial never happens, but
        // a leading zero in the first column after elimination does.
        let f = gf(7);
        let m = FMatrix::from_ints(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![2, 3, 4]]).unwrap();
        let r = PolyRing::new(f);
        assert_eq!(char_poly(&m).unwrap(), r.from_ints(&[-2, -3, -4, 1]));
    }

    #[test]
    fn char_poly_cap() {
        let f = gf(2);
        let m = FMatrix::identity(&f, 65);
        assert_eq!(char_poly(&m), Err(Error::SizeCapExceeded { size: 65, cap: 64 }));
    }

    #[test]
    fn toeplitz_char_poly_is_g() {
        for p in [2, 3, 5, 7] {
            let f = gf(p);
            for j in 2..=8 {
                for t1 in 0..p {
                    for t2 in 0..p {
                        let s = tridiagonal(&f, j, t1, t2).unwrap();
                        let g = g_poly(&f, j, &f.mul(&t1, &t2));
                        assert_eq!(char_poly(&s).unwrap(), g.coeffs);
                    }
                }
            }
        }
    }

    fn root_multiset(ext: &ExtField, m: &FMatrix<PrimeField>) -> Vec<crate::field::ExtElem> {
        let cp = char_poly(m).unwrap();
        let mut out = Vec::new();
        for (r, k) in roots_with_multiplicity(&cp, ext).unwrap() {
            out.extend(std::iter::repeat_n(r, k));
        }
        out.sort();
        out
    }

    #[test]
    fn kron_sum_char_poly_roots_add() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in [2, 3, 5, 7] {
            let f = gf(p);
            for _ in 0..6 {
                let na = rng.gen_range(1..=3);
                let nb = rng.gen_range(1..=2);
                let a = random(&f, na, &mut rng);
                let b = random(&f, nb, &mut rng);
                let s = kron_sum(&a, &b).unwrap();
                let polys = [char_poly(&a).unwrap(), char_poly(&b).unwrap(), char_poly(&s).unwrap()];
                let ext = splitting_field(&f, &polys).unwrap();
                let ra = root_multiset(&ext, &a);
                let rb = root_multiset(&ext, &b);
                let mut sums: Vec<_> = rb
                    .iter()
                    .flat_map(|y| ra.iter().map(|x| ext.add(x, y)).collect::<Vec<_>>())
                    .collect();
                sums.sort();
                assert_eq!(root_multiset(&ext, &s), sums);
            }
        }
    }
}
