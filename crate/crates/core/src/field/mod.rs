//! Exact arithmetic over `Z_p` and its finite extensions, together with the
//! univariate polynomial machinery (factorization, splitting fields, roots)
//! the spectral code is built on.

mod ext;
mod factor;
mod poly;
mod prime;

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;

pub use ext::{ExtElem, ExtField, MAX_EXTENSION_DEGREE};
pub use factor::{
    distinct_degree, is_irreducible, roots_with_multiplicity, roots_with_strategy, smallest_irreducible,
    splitting_field, squarefree_decomposition, RootStrategy, SCAN_THRESHOLD,
};
pub use poly::{Poly, PolyRing};
pub use prime::{is_prime, PrimeField};

/// A finite (or exact) field given as a runtime context object.
///
/// Elements are plain values; every operation goes through the field so the
/// element types stay small and carry no back-reference.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Degree over the prime subfield.
    fn degree(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Canonical text form (`2*a+1` for extension elements).
    fn render(&self, a: &Self::Elem) -> String;

    /// Element of the prime subfield, if `a` lies in it.
    fn to_base(&self, a: &Self::Elem) -> Option<u64>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `acc += x * y`.
    fn add_mul_assign(&self, acc: &mut Self::Elem, x: &Self::Elem, y: &Self::Elem) {
        *acc = self.add(acc, &self.mul(x, y));
    }

    /// `acc -= x * y`.
    fn sub_mul_assign(&self, acc: &mut Self::Elem, x: &Self::Elem, y: &Self::Elem) {
        *acc = self.sub(acc, &self.mul(x, y));
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `x -> x^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }

    /// Number of elements, when it fits in a `u128`.
    fn order(&self) -> Option<u128> {
        (self.characteristic() as u128).checked_pow(self.degree() as u32)
    }
}
