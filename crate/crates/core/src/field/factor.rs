//! Factorization over `GF(p)` and root extraction in extension fields.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExtElem, ExtField, Field, Poly, PolyRing, PrimeField, MAX_EXTENSION_DEGREE};
use crate::error::{Error, Result};

/// Fields with at most this many elements are searched exhaustively for roots.
pub const SCAN_THRESHOLD: u128 = 1 << 10;

const SPLIT_SEED: u64 = 0x5eed_5eed;

/// Root extraction method used by [`roots_with_strategy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStrategy {
    /// Scan when the field has at most [`SCAN_THRESHOLD`] elements, split otherwise.
    Auto,
    /// Evaluate at every field element.
    Scan,
    /// Randomized equal-degree splitting (seeded, deterministic).
    Split,
}

/// `x^(p^i) mod f` for `i = 0..=n`.
fn frobenius_powers(field: &PrimeField, f: &Poly<u64>, n: usize) -> Vec<Poly<u64>> {
    let ring = PolyRing::new(*field);
    let mut out = Vec::with_capacity(n + 1);
    let mut h = ring.rem(&ring.x(), f).expect("nonzero modulus");
    out.push(h.clone());
    for _ in 0..n {
        h = ring.pow_mod(&h, field.p(), f);
        out.push(h.clone());
    }
    out
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(field: &PrimeField, f: &Poly<u64>) -> bool {
    let ring = PolyRing::new(*field);
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let pows = frobenius_powers(field, f, d);
    let x = ring.rem(&ring.x(), f).expect("nonzero modulus");
    if pows[d] != x {
        return false;
    }
    prime_divisors(d).into_iter().all(|q| {
        let g = ring.gcd(&ring.sub(&pows[d / q], &x), f);
        g.degree() == Some(0)
    })
}

/// Smallest monic irreducible polynomial of degree `k`, enumerating the lower
/// coefficients lexicographically with the constant term varying fastest.
pub fn smallest_irreducible(field: &PrimeField, k: usize) -> Poly<u64> {
    let ring = PolyRing::new(*field);
    let p = field.p();
    let mut digits = vec![0u64; k];
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let f = ring.from_coeffs(coeffs);
        if is_irreducible(field, &f) {
            return f;
        }
        // increment, constant term first
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
}

fn pth_root(field: &PrimeField, f: &Poly<u64>) -> Poly<u64> {
    let p = field.p() as usize;
    let ring = PolyRing::new(*field);
    ring.from_coeffs(f.coeffs().iter().step_by(p).copied().collect())
}

/// Squarefree decomposition: monic squarefree, pairwise coprime `s_i` with
/// `f = lc(f) * prod s_i^(m_i)`. Entries are sorted by multiplicity.
pub fn squarefree_decomposition(field: &PrimeField, f: &Poly<u64>) -> Result<Vec<(Poly<u64>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = PolyRing::new(*field);
    let mut out = Vec::new();
    musser(field, &ring.monic(f), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Ok(out)
}

fn musser(field: &PrimeField, f: &Poly<u64>, scale: usize, out: &mut Vec<(Poly<u64>, usize)>) {
    let ring = PolyRing::new(*field);
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let mut c = ring.gcd(f, &ring.derivative(f));
    let mut w = ring.div_exact(f, &c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact(&w, &y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        c = ring.div_exact(&c, &y).expect("gcd divides");
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        // what is left is a p-th power
        let root = pth_root(field, &c);
        musser(field, &root, scale * field.p() as usize, out);
    }
}

/// Distinct-degree factorization of a squarefree polynomial.
///
/// Returns `(d, g_d)` where `g_d` is the product of all monic irreducible
/// factors of degree `d`, in increasing `d`.
pub fn distinct_degree(field: &PrimeField, f: &Poly<u64>) -> Result<Vec<(usize, Poly<u64>)>> {
    let ring = PolyRing::new(*field);
    let mut rest = ring.monic(f);
    match rest.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(Vec::new()),
        _ => {}
    }
    if ring.gcd(&rest, &ring.derivative(&rest)).degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    let x = ring.x();
    let mut h = ring.rem(&x, &rest)?;
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = ring.pow_mod(&h, field.p(), &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = ring.div_exact(&rest, &g)?;
            h = ring.rem(&h, &rest)?;
            out.push((d, g));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((deg, rest));
    }
    Ok(out)
}

/// Smallest `GF(p^K)` over which every input splits into linear factors.
pub fn splitting_field(field: &PrimeField, polys: &[Poly<u64>]) -> Result<ExtField> {
    let mut k = 1usize;
    for f in polys {
        for (part, _) in squarefree_decomposition(field, f)? {
            for (d, _) in distinct_degree(field, &part)? {
                k = k.lcm(&d);
                if k > MAX_EXTENSION_DEGREE {
                    return Err(Error::ExtensionTooLarge {
                        degree: k,
                        max: MAX_EXTENSION_DEGREE,
                    });
                }
            }
        }
    }
    ExtField::with_degree(*field, k)
}

/// Roots in `ext` with multiplicity, sorted in canonical element order.
///
/// Fails with `DoesNotSplit` unless the roots reconstruct `f / lc(f)` exactly.
pub fn roots_with_multiplicity(f: &Poly<u64>, ext: &ExtField) -> Result<Vec<(ExtElem, usize)>> {
    roots_with_strategy(f, ext, RootStrategy::Auto)
}

pub fn roots_with_strategy(f: &Poly<u64>, ext: &ExtField, strategy: RootStrategy) -> Result<Vec<(ExtElem, usize)>> {
    let base = ext.base();
    let scan = match strategy {
        RootStrategy::Scan => true,
        RootStrategy::Split => false,
        RootStrategy::Auto => ext.order().is_some_and(|q| q <= SCAN_THRESHOLD),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut roots = Vec::new();
    for (part, mult) in squarefree_decomposition(&base, f)? {
        for (d, g) in distinct_degree(&base, &part)? {
            if !ext.k().is_multiple_of(d) {
                return Err(Error::DoesNotSplit);
            }
            let found = if scan {
                scan_roots(ext, &ext.lift_poly(&g))
            } else {
                let mut found = Vec::new();
                for h in equal_degree(&base, &g, d, &mut rng) {
                    found.extend(frobenius_orbit(ext, one_root(ext, &ext.lift_poly(&h), &mut rng), d));
                }
                found
            };
            roots.extend(found.into_iter().map(|r| (r, mult)));
        }
    }
    roots.sort();
    verify_reconstruction(f, ext, &roots)?;
    Ok(roots)
}

fn verify_reconstruction(f: &Poly<u64>, ext: &ExtField, roots: &[(ExtElem, usize)]) -> Result<()> {
    let ring = PolyRing::new(ext.clone());
    let base_ring = PolyRing::new(ext.base());
    let target = ext.lift_poly(&base_ring.monic(f));
    let product = roots
        .iter()
        .fold(ring.one(), |acc, (r, m)| ring.mul(&acc, &ring.pow(&ring.linear(r), *m)));
    if product == target {
        Ok(())
    } else {
        Err(Error::DoesNotSplit)
    }
}

fn scan_roots(ext: &ExtField, g: &Poly<ExtElem>) -> Vec<ExtElem> {
    let ring = PolyRing::new(ext.clone());
    ext.elements().filter(|x| ext.is_zero(&ring.eval(g, x))).collect()
}

/// Irreducible factors of a monic `g` whose irreducible factors all have
/// degree `d` (Cantor-Zassenhaus over the prime field).
fn equal_degree(field: &PrimeField, g: &Poly<u64>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<u64>> {
    let ring = PolyRing::new(*field);
    let deg = g.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    if deg == d {
        return vec![ring.monic(g)];
    }
    if d == 1 && field.p() <= 64 {
        return (0..field.p())
            .filter(|x| ring.eval(g, x) == 0)
            .map(|x| ring.linear(&x))
            .collect();
    }
    loop {
        let a = ring.from_coeffs((0..deg).map(|_| rng.gen_range(0..field.p())).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = splitting_witness(&ring, &a, g, d);
        let h = ring.monic(&ring.gcd(&b, g));
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < deg {
            let rest = ring.div_exact(g, &h).expect("gcd divides");
            let mut out = equal_degree(field, &h, d, rng);
            out.extend(equal_degree(field, &rest, d, rng));
            return out;
        }
    }
}

/// One root of a monic squarefree `g` that splits into linear factors.
fn one_root(ext: &ExtField, g: &Poly<ExtElem>, rng: &mut ChaCha8Rng) -> ExtElem {
    let ring = PolyRing::new(ext.clone());
    let mut g = g.clone();
    loop {
        let deg = g.degree().expect("nonconstant");
        if deg == 1 {
            return ext.neg(&g.coeffs()[0]);
        }
        let coeffs = (0..deg)
            .map(|_| {
                let c: Vec<u64> = (0..ext.k()).map(|_| rng.gen_range(0..ext.p())).collect();
                ext.elem(&c).expect("k coefficients")
            })
            .collect();
        let a = ring.from_coeffs(coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = splitting_witness(&ring, &a, &g, 1);
        let h = ring.monic(&ring.gcd(&b, &g));
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < deg {
            let rest = ring.div_exact(&g, &h).expect("gcd divides");
            g = if hd <= deg - hd { h } else { rest };
        }
    }
}

/// `r, r^p, ..., r^(p^(d-1))`.
fn frobenius_orbit(ext: &ExtField, r: ExtElem, d: usize) -> Vec<ExtElem> {
    let mut out = Vec::with_capacity(d);
    let mut cur = r;
    for _ in 0..d {
        let next = ext.pow(&cur, ext.p());
        out.push(cur);
        cur = next;
    }
    out
}

/// For factors of degree `d` over a field with `q` elements: `a^((q^d-1)/2) - 1
/// mod g` for odd `q`, the trace of `a` down to `GF(2)` for even `q`.
fn splitting_witness<F: Field>(ring: &PolyRing<F>, a: &Poly<F::Elem>, g: &Poly<F::Elem>, d: usize) -> Poly<F::Elem> {
    let field = ring.field();
    let p = field.characteristic();
    let k = field.degree() * d;
    if p == 2 {
        let mut term = ring.rem(a, g).expect("nonzero modulus");
        let mut acc = term.clone();
        for _ in 1..k {
            term = ring.mul_mod(&term, &term, g);
            acc = ring.add(&acc, &term);
        }
        return acc;
    }
    // (q-1)/2 = (p-1)/2 * (1 + p + ... + p^(k-1))
    let mut term = ring.rem(a, g).expect("nonzero modulus");
    let mut norm = term.clone();
    for _ in 1..k {
        term = ring.pow_mod(&term, p, g);
        norm = ring.mul_mod(&norm, &term, g);
    }
    let half = ring.pow_mod(&norm, (p - 1) / 2, g);
    ring.sub(&half, &ring.one())
}
