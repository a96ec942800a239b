//! Exact arithmetic in small finite fields GF(q), q = p^e.
//!
//! Prime fields use residue arithmetic. Extension fields are built from a
//! fixed table of irreducible moduli via log/antilog tables, so element
//! encodings are identical across runs and implementations. An element is
//! an index in `0..q`: index 0 is the additive identity, index 1 the
//! multiplicative identity, and for e > 1 the base-p digits of the index
//! are the coefficients of the element in the polynomial basis
//! 1, t, t^2, ... (low digit = constant coefficient).

use std::fmt;
use std::sync::Arc;

/// The cardinalities accepted by [`make_field`].
pub const SUPPORTED_CARDINALITIES: [u32; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];

/// Fixed irreducible moduli for the extension fields, as coefficient lists
/// over GF(p), constant term first.
///
/// GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+x+2, GF(16): x^4+x+1,
/// GF(25): x^2+x+2, GF(27): x^3+2x+1. For each of these the class of x is
/// a multiplicative generator, which the table construction checks.
const MODULI: [(u32, &[u8]); 6] = [
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 1, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 1, 1]),
    (27, &[1, 2, 0, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested cardinality is not a supported prime power.
    UnsupportedCardinality(u32),
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// Element index outside `0..q`.
    InvalidElement { index: u32, q: u32 },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::UnsupportedCardinality(q) => {
                write!(
                    f,
                    "unsupported field cardinality {q} (supported: {SUPPORTED_CARDINALITIES:?})"
                )
            }
            FieldError::DivisionByZero => write!(f, "multiplicative inverse of zero"),
            FieldError::InvalidElement { index, q } => {
                write!(f, "element index {index} out of range for GF({q})")
            }
        }
    }
}

impl std::error::Error for FieldError {}

/// An element of a finite field, encoded by its index in `0..q`.
///
/// Elements carry no pointer back to their field; all arithmetic goes
/// through the owning [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u8);

impl FieldElement {
    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Precomputed operation tables, `q*q` entries for the binary ones.
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>, // inv[0] is unused
}

/// A small finite field GF(q) with all operations precomputed.
///
/// Cloning is cheap (the tables are shared). Two specs compare equal iff
/// they have the same cardinality; the construction is deterministic so
/// equal cardinality implies identical tables.
#[derive(Clone)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u8>,
    tables: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(GF({}))", self.q)
    }
}

/// Builds the field GF(q) for a supported cardinality.
pub fn make_field(q: u32) -> Result<FieldSpec, FieldError> {
    if !SUPPORTED_CARDINALITIES.contains(&q) {
        return Err(FieldError::UnsupportedCardinality(q));
    }
    let (p, e) = factor_prime_power(q);
    let (modulus, tables) = if e == 1 {
        (Vec::new(), build_prime_tables(p))
    } else {
        let modulus = MODULI
            .iter()
            .find(|(card, _)| *card == q)
            .map(|(_, m)| m.to_vec())
            .expect("supported extension cardinality must have a modulus entry");
        let tables = build_extension_tables(q, p, e, &modulus);
        (modulus, tables)
    };
    Ok(FieldSpec {
        q,
        p,
        e,
        modulus,
        tables: Arc::new(tables),
    })
}

fn factor_prime_power(q: u32) -> (u32, u32) {
    for p in 2..=q {
        if q.is_multiple_of(p) {
            let mut e = 0;
            let mut rest = q;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            assert_eq!(rest, 1, "supported cardinalities are prime powers");
            return (p, e);
        }
    }
    unreachable!("q >= 2")
}

fn build_prime_tables(p: u32) -> Tables {
    let q = p as usize;
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        neg[a] = ((p as usize - a) % q) as u8;
        for b in 0..q {
            add[a * q + b] = ((a + b) % q) as u8;
            mul[a * q + b] = ((a * b) % q) as u8;
            if a != 0 && (a * b) % q == 1 {
                inv[a] = b as u8;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

/// Element <-> digit-vector conversions for extension fields. The digits
/// are the base-p expansion of the index, least significant first.
fn to_digits(index: u32, p: u32, e: u32) -> Vec<u8> {
    let mut digits = vec![0u8; e as usize];
    let mut rest = index;
    for d in digits.iter_mut() {
        *d = (rest % p) as u8;
        rest /= p;
    }
    digits
}

fn from_digits(digits: &[u8], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d as u32)
}

fn build_extension_tables(q: u32, p: u32, e: u32, modulus: &[u8]) -> Tables {
    let qs = q as usize;
    assert_eq!(modulus.len(), e as usize + 1);
    assert_eq!(modulus[e as usize], 1, "modulus must be monic");

    // Powers of the generator t = class of x: multiply by x is a digit
    // shift, with the overflowing top digit folded back via the modulus.
    let mut antilog: Vec<u32> = Vec::with_capacity(qs - 1);
    let mut digits = vec![0u8; e as usize];
    digits[0] = 1; // the element 1
    for _ in 0..(q - 1) {
        antilog.push(from_digits(&digits, p));
        let carry = digits[e as usize - 1] as u32;
        for i in (1..e as usize).rev() {
            digits[i] = digits[i - 1];
        }
        digits[0] = 0;
        if carry != 0 {
            for i in 0..e as usize {
                let fold = (p - (carry * modulus[i] as u32) % p) % p;
                digits[i] = ((digits[i] as u32 + fold) % p) as u8;
            }
        }
    }
    let mut log = vec![u32::MAX; qs];
    for (k, &elem) in antilog.iter().enumerate() {
        assert_eq!(
            log[elem as usize],
            u32::MAX,
            "generator powers must be distinct within GF({q})"
        );
        log[elem as usize] = k as u32;
    }
    assert!(
        (1..qs).all(|i| log[i] != u32::MAX),
        "generator must enumerate all nonzero elements of GF({q})"
    );

    let add_digits = |a: u32, b: u32| -> u32 {
        let da = to_digits(a, p, e);
        let db = to_digits(b, p, e);
        let sum: Vec<u8> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8)
            .collect();
        from_digits(&sum, p)
    };

    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    let mut neg = vec![0u8; qs];
    let mut inv = vec![0u8; qs];
    for a in 0..qs {
        let da = to_digits(a as u32, p, e);
        let neg_digits: Vec<u8> = da.iter().map(|&x| ((p - x as u32) % p) as u8).collect();
        neg[a] = from_digits(&neg_digits, p) as u8;
        if a != 0 {
            inv[a] = antilog[((q - 1 - log[a]) % (q - 1)) as usize] as u8;
        }
        for b in 0..qs {
            add[a * qs + b] = add_digits(a as u32, b as u32) as u8;
            mul[a * qs + b] = if a == 0 || b == 0 {
                0
            } else {
                antilog[((log[a] + log[b]) % (q - 1)) as usize] as u8
            };
        }
    }
    Tables { add, mul, neg, inv }
}

impl FieldSpec {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Coefficients of the irreducible modulus, constant term first.
    /// Empty for prime fields.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index < self.q {
            Ok(FieldElement(index as u8))
        } else {
            Err(FieldError::InvalidElement { index, q: self.q })
        }
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u8).map(FieldElement)
    }

    #[inline]
    fn check(&self, a: FieldElement) -> usize {
        debug_assert!(
            (a.0 as u32) < self.q,
            "element {a} does not belong to GF({})",
            self.q
        );
        a.0 as usize
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.tables.add[self.check(a) * self.q as usize + self.check(b)])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.tables.mul[self.check(a) * self.q as usize + self.check(b)])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.tables.neg[self.check(a)])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement(self.tables.inv[self.check(a)]))
    }

    /// `a^k` by square-and-multiply; `a^0 = 1` including for `a = 0`.
    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Raw index-level ops for hot loops.
    #[inline]
    pub(crate) fn add_raw(&self, a: u8, b: u8) -> u8 {
        self.tables.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u8, b: u8) -> u8 {
        self.tables.mul[a as usize * self.q as usize + b as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_prime() {
        let f = make_field(3).unwrap();
        assert_eq!((f.q(), f.p(), f.e()), (3, 3, 1));
        assert!(f.modulus().is_empty());
    }

    #[test]
    fn make_field_gf4_modulus() {
        let f = make_field(4).unwrap();
        assert_eq!((f.q(), f.p(), f.e()), (4, 2, 2));
        // x^2 + x + 1 is the only irreducible quadratic over GF(2).
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn make_field_rejects_non_prime_power() {
        assert_eq!(make_field(6), Err(FieldError::UnsupportedCardinality(6)));
        assert_eq!(make_field(1), Err(FieldError::UnsupportedCardinality(1)));
        assert_eq!(make_field(32), Err(FieldError::UnsupportedCardinality(32)));
    }

    #[test]
    fn gf3_addition() {
        let f = make_field(3).unwrap();
        let two = f.element(2).unwrap();
        assert_eq!(f.add(two, two), f.one());
    }

    #[test]
    fn gf4_generator_square() {
        let f = make_field(4).unwrap();
        let t = f.element(2).unwrap(); // the class of x
        let t_plus_1 = f.element(3).unwrap();
        assert_eq!(f.mul(t, t), t_plus_1);
    }

    #[test]
    fn gf5_inverse() {
        let f = make_field(5).unwrap();
        let two = f.element(2).unwrap();
        assert_eq!(f.inv(two).unwrap(), f.element(3).unwrap());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = make_field(7).unwrap();
        assert_eq!(f.inv(f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn element_range_checked() {
        let f = make_field(4).unwrap();
        assert!(f.element(3).is_ok());
        assert_eq!(
            f.element(4),
            Err(FieldError::InvalidElement { index: 4, q: 4 })
        );
    }

    /// Field axioms, exhaustively for every supported cardinality. The
    /// fields are tiny, so full triple enumeration is affordable.
    #[test]
    fn field_axioms_exhaustive() {
        for &q in &SUPPORTED_CARDINALITIES {
            let f = make_field(q).unwrap();
            let elems: Vec<FieldElement> = f.elements().collect();
            for &a in &elems {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, ai), f.one(), "a*inv(a)=1 in GF({q})");
                    assert_eq!(f.inv(ai).unwrap(), a, "inv is an involution in GF({q})");
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &elems {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity in GF({q})"
                        );
                    }
                }
            }
        }
    }

    /// The nonzero elements form a cyclic group: some element's powers
    /// enumerate all q-1 of them.
    #[test]
    fn multiplicative_group_cyclic() {
        for &q in &SUPPORTED_CARDINALITIES {
            let f = make_field(q).unwrap();
            let generator = f.elements().skip(1).find(|&g| {
                let mut seen = vec![false; q as usize];
                let mut x = f.one();
                for _ in 0..(q - 1) {
                    if seen[x.index() as usize] {
                        return false;
                    }
                    seen[x.index() as usize] = true;
                    x = f.mul(x, g);
                }
                x == f.one()
            });
            assert!(
                generator.is_some(),
                "GF({q}) has a multiplicative generator"
            );
        }
    }

    /// Independent route for extension-field products: multiply the digit
    /// vectors as polynomials over GF(p) and reduce by the modulus, then
    /// compare against the log/antilog tables, for every pair.
    #[test]
    fn extension_mul_matches_polynomial_reduction() {
        for &q in &[4u32, 8, 9, 16, 25, 27] {
            let f = make_field(q).unwrap();
            let (p, e) = (f.p(), f.e() as usize);
            let modulus = f.modulus().to_vec();
            let poly_mul = |a: u32, b: u32| -> u32 {
                let da = to_digits(a, p, e as u32);
                let db = to_digits(b, p, e as u32);
                let mut prod = vec![0u32; 2 * e];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
                    }
                }
                // reduce by the monic modulus, top degree down
                for top in (e..2 * e).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (k, &m) in modulus.iter().enumerate().take(e) {
                        let slot = top - e + k;
                        prod[slot] = (prod[slot] + p * p - c * m as u32) % p;
                    }
                }
                let digits: Vec<u8> = prod[..e].iter().map(|&x| x as u8).collect();
                from_digits(&digits, p)
            };
            for a in f.elements() {
                for b in f.elements() {
                    let expected = poly_mul(a.index() as u32, b.index() as u32);
                    assert_eq!(f.mul(a, b).index() as u32, expected, "GF({q}): {a} * {b}");
                }
            }
        }
    }

    /// For extension fields, the class of x (index p) itself generates.
    #[test]
    fn extension_field_x_is_primitive() {
        for &q in &[4u32, 8, 9, 16, 25, 27] {
            let f = make_field(q).unwrap();
            let x = f.element(f.p()).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut acc = f.one();
            for _ in 0..(q - 1) {
                assert!(seen.insert(acc), "powers of x repeat early in GF({q})");
                acc = f.mul(acc, x);
            }
            assert_eq!(acc, f.one());
        }
    }
}
