use std::sync::Arc;

use super::factor::{is_irreducible, smallest_irreducible};
use super::{Field, Poly, PolyRing, PrimeField};
use crate::error::{Error, Result};

/// Largest extension degree accepted by [`ExtField`].
pub const MAX_EXTENSION_DEGREE: usize = 64;

/// Element of `GF(p^k)` in the polynomial basis `1, a, ..., a^(k-1)`.
///
/// The derived ordering is lexicographic on the coefficient vector starting
/// from the constant term; it is the canonical order used for eigenvalue layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(Vec<u64>);

impl ExtElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug)]
struct Inner {
    base: PrimeField,
    /// Monic modulus, `k + 1` coefficients.
    modulus: Vec<u64>,
    /// `(j, -m_j mod p)` for the nonzero lower coefficients of the modulus.
    fold: Vec<(usize, u64)>,
}

/// `GF(p)[a] / (m(a))` for a monic irreducible `m` of degree `k`.
#[derive(Debug, Clone)]
pub struct ExtField {
    inner: Arc<Inner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl ExtField {
    /// Build from an explicit modulus, which must be monic and irreducible.
    pub fn new(base: PrimeField, modulus: &Poly<u64>) -> Result<Self> {
        let ring = PolyRing::new(base);
        let k = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidModulus("degree must be at least 1".into()))?;
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::ExtensionTooLarge {
                degree: k,
                max: MAX_EXTENSION_DEGREE,
            });
        }
        if !ring.is_monic(modulus) {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !is_irreducible(&base, modulus) {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over GF({})",
                ring.display(modulus),
                base.p()
            )));
        }
        Ok(Self::from_parts(base, modulus.coeffs().to_vec()))
    }

    /// `GF(p^k)` with the smallest monic irreducible modulus of degree `k`.
    pub fn with_degree(base: PrimeField, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::ExtensionTooLarge {
                degree: k,
                max: MAX_EXTENSION_DEGREE,
            });
        }
        let m = smallest_irreducible(&base, k);
        Ok(Self::from_parts(base, m.into_coeffs()))
    }

    /// The prime field viewed as a degree-one extension (modulus `x`).
    pub fn trivial(base: PrimeField) -> Self {
        Self::from_parts(base, vec![0, 1])
    }

    fn from_parts(base: PrimeField, modulus: Vec<u64>) -> Self {
        let k = modulus.len() - 1;
        let fold = modulus[..k]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, base.neg(&c)))
            .collect();
        Self {
            inner: Arc::new(Inner { base, modulus, fold }),
        }
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn p(&self) -> u64 {
        self.inner.base.p()
    }

    pub fn k(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn modulus(&self) -> Poly<u64> {
        PolyRing::new(self.inner.base).from_coeffs(self.inner.modulus.clone())
    }

    /// Element from little-endian coefficients; entries are reduced mod p.
    pub fn elem(&self, coeffs: &[u64]) -> Result<ExtElem> {
        if coeffs.len() > self.k() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.k()
            )));
        }
        let mut v = vec![0; self.k()];
        for (dst, &c) in v.iter_mut().zip(coeffs) {
            *dst = c % self.p();
        }
        Ok(ExtElem(v))
    }

    pub fn from_base(&self, c: u64) -> ExtElem {
        let mut v = vec![0; self.k()];
        v[0] = c % self.p();
        ExtElem(v)
    }

    /// The class of `a` (the adjoined root). Equals a base element when `k = 1`.
    pub fn generator(&self) -> ExtElem {
        if self.k() == 1 {
            return self.from_base(self.inner.base.neg(&self.inner.modulus[0]));
        }
        let mut v = vec![0; self.k()];
        v[1] = 1;
        ExtElem(v)
    }

    /// Enumerate every element (only sensible for small fields).
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let p = self.p();
        let k = self.k();
        let total = self.order().expect("field too large to enumerate");
        (0..total).map(move |mut idx| {
            let mut v = vec![0; k];
            for c in v.iter_mut() {
                *c = (idx % p as u128) as u64;
                idx /= p as u128;
            }
            ExtElem(v)
        })
    }

    /// Reduced product of `a` and `b`, computed in `buf`; returns `k` coefficients.
    fn product<'a>(&self, a: &ExtElem, b: &ExtElem, buf: &'a mut [u64]) -> &'a [u64] {
        let k = self.k();
        let p = self.p();
        let r = &mut buf[..2 * k - 1];
        // p < 2^31: every product is below 2^62, so reducing whenever a sum
        // reaches 2^62 keeps the accumulators inside u64
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                let t = &mut r[i + j];
                *t += x * y;
                if *t >= 1 << 62 {
                    *t %= p;
                }
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = r[i] % p;
            if c == 0 {
                continue;
            }
            for &(j, nm) in &self.inner.fold {
                let t = &mut r[i - k + j];
                *t += c * nm;
                if *t >= 1 << 62 {
                    *t %= p;
                }
            }
        }
        for v in r[..k].iter_mut() {
            *v %= p;
        }
        &buf[..k]
    }

    pub fn lift_poly(&self, f: &Poly<u64>) -> Poly<ExtElem> {
        let ring = PolyRing::new(self.clone());
        ring.from_coeffs(f.coeffs().iter().map(|&c| self.from_base(c)).collect())
    }

    fn to_poly(&self, a: &ExtElem) -> Poly<u64> {
        PolyRing::new(self.inner.base).from_coeffs(a.0.clone())
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn degree(&self) -> usize {
        self.k()
    }

    fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.k()])
    }

    fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    fn from_int(&self, v: i64) -> ExtElem {
        self.from_base(self.inner.base.reduce(v))
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().map(|x| f.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut buf = [0u64; 2 * MAX_EXTENSION_DEGREE];
        ExtElem(self.product(a, b, &mut buf).to_vec())
    }

    fn add_mul_assign(&self, acc: &mut ExtElem, x: &ExtElem, y: &ExtElem) {
        let mut buf = [0u64; 2 * MAX_EXTENSION_DEGREE];
        let f = &self.inner.base;
        for (a, t) in acc.0.iter_mut().zip(self.product(x, y, &mut buf)) {
            *a = f.add(a, t);
        }
    }

    fn sub_mul_assign(&self, acc: &mut ExtElem, x: &ExtElem, y: &ExtElem) {
        let mut buf = [0u64; 2 * MAX_EXTENSION_DEGREE];
        let f = &self.inner.base;
        for (a, t) in acc.0.iter_mut().zip(self.product(x, y, &mut buf)) {
            *a = f.sub(a, t);
        }
    }

    fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let ring = PolyRing::new(self.inner.base);
        let (g, s, _) = ring.ext_gcd(&self.to_poly(a), &self.modulus());
        if g.degree() != Some(0) {
            return Err(Error::InternalVerificationFailed(
                "extension modulus is not irreducible".into(),
            ));
        }
        self.elem(s.coeffs())
    }

    fn render(&self, a: &ExtElem) -> String {
        let mut terms = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{c}*a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{c}*a^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn to_base(&self, a: &ExtElem) -> Option<u64> {
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }
}
