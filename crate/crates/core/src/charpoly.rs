//! Characteristic polynomials of the tridiagonal Toeplitz blocks.
//!
//! `g_j(x) = det(x I - S_j(t1, t2))` depends on `t1, t2` only through their
//! product and obeys `g_j = x g_{j-1} - t1 t2 g_{j-2}`, `g_0 = 1`, `g_1 = x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Poly, PolyRing};

/// `g_{j; t1, t2}` together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPoly<E> {
    pub j: usize,
    pub product: E,
    pub coeffs: Poly<E>,
}

/// Build `g_j` for the given `t1 * t2` via the three-term recurrence.
pub fn g_poly<F: Field>(field: &F, j: usize, t1t2: &F::Elem) -> GPoly<F::Elem> {
    let ring = PolyRing::new(field.clone());
    let x = ring.x();
    let mut prev = ring.one();
    let mut cur = x.clone();
    let coeffs = match j {
        0 => prev,
        _ => {
            for _ in 1..j {
                let next = ring.sub(&ring.mul(&x, &cur), &ring.scale(&prev, t1t2));
                prev = cur;
                cur = next;
            }
            cur
        }
    };
    GPoly {
        j,
        product: t1t2.clone(),
        coeffs,
    }
}

/// The alternating binomial sum `sum (-1)^i (t1 t2)^i C(j-i, i) x^(j-2i)`,
/// with binomials taken from Pascal's triangle inside the field.
pub fn g_poly_closed_form<F: Field>(field: &F, j: usize, t1t2: &F::Elem) -> Poly<F::Elem> {
    let ring = PolyRing::new(field.clone());
    let pascal = pascal_rows(field, j);
    let mut coeffs = vec![field.zero(); j + 1];
    let mut power = field.one();
    for i in 0..=j / 2 {
        let binom = &pascal[j - i][i];
        let mut term = field.mul(binom, &power);
        if i % 2 == 1 {
            term = field.neg(&term);
        }
        coeffs[j - 2 * i] = term;
        power = field.mul(&power, t1t2);
    }
    ring.from_coeffs(coeffs)
}

fn pascal_rows<F: Field>(field: &F, n: usize) -> Vec<Vec<F::Elem>> {
    let mut rows: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        row.push(field.one());
        for c in 1..r {
            row.push(field.add(&prev[c - 1], &prev[c]));
        }
        row.push(field.one());
        rows.push(row);
    }
    rows
}

/// Integer coefficients of `g_j` (with `t1 t2 = 1`), little-endian.
pub fn g_poly_integer(j: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if j == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..j {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return Vec::new();
    }
    let sign = if v.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    v.iter().map(|c| c / &content * &sign).collect()
}

/// Pseudo-remainder of `a` by `b` over `Z[x]`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd in `Z[x]` with positive leading coefficient; up to a rational
/// unit this is the gcd over `Q`.
pub fn integer_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = primitive_part(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// Outcome of comparing `gcd(g_k, g_l)` over `Q` with `gcd(k+1, l+1) - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcdDegreeReport {
    pub actual: usize,
    pub predicted: usize,
    /// Whether the gcd is `g_k` itself.
    pub equals_gk: bool,
}

pub fn gcd_degree_report(k: usize, l: usize) -> GcdDegreeReport {
    assert!(1 <= k && k < l, "requires 1 <= k < l");
    let gk = g_poly_integer(k);
    let h = integer_poly_gcd(&gk, &g_poly_integer(l));
    GcdDegreeReport {
        actual: h.len() - 1,
        predicted: (k + 1).gcd(&(l + 1)) - 1,
        equals_gk: h == gk,
    }
}

/// `g_j(x)` for `t1 t2 = 1`, evaluated in floating point by the recurrence.
pub fn eval_real(j: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        (prev, cur) = (cur, x * cur - prev);
    }
    cur
}

/// `2 cos(r pi / (j + 1))` for `r = 1..=j`, in descending order.
pub fn real_roots(j: usize) -> Vec<f64> {
    (1..=j)
        .map(|r| 2.0 * (r as f64 * std::f64::consts::PI / (j + 1) as f64).cos())
        .collect()
}
