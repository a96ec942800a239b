//! Multivariate polynomials over GF(q) with graded-lex term order:
//! parsing, reduction modulo the field equations, grid evaluation, zero
//! counting and codeword weights.
//!
//! Variables are `X1 > X2 > ... > Xn`. Graded-lex compares total degree
//! first, then the exponent vectors lexicographically, so the leading
//! monomial of `X1*X2 + X1^2` is `X1^2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::ffield::{FieldElement, FieldSpec};
use crate::grid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Input text does not conform to the polynomial grammar.
    Syntax { pos: usize, message: String },
    /// A variable index outside `1..=n`.
    VariableOutOfRange { pos: usize, index: u32, n: usize },
    /// A coefficient outside the element index range `0..q`.
    CoefficientOutOfRange { pos: usize, value: u64, q: u32 },
    /// The grid `GF(q)^n` is larger than the enumeration budget.
    BudgetExceeded { required: u128, budget: u64 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Syntax { pos, message } => {
                write!(f, "syntax error at byte {pos}: {message}")
            }
            PolyError::VariableOutOfRange { pos, index, n } => {
                write!(f, "variable X{index} at byte {pos} out of range (polynomial ring has {n} variables)")
            }
            PolyError::CoefficientOutOfRange { pos, value, q } => {
                write!(
                    f,
                    "coefficient {value} at byte {pos} out of range for GF({q})"
                )
            }
            PolyError::BudgetExceeded { required, budget } => {
                write!(
                    f,
                    "grid of {required} points exceeds the enumeration budget of {budget}"
                )
            }
        }
    }
}

impl std::error::Error for PolyError {}

/// A monomial `X1^a1 * ... * Xn^an`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial 1 in `n` variables.
    pub fn constant(n: usize) -> Self {
        Monomial {
            exponents: vec![0; n],
        }
    }

    /// `X_{axis+1}` (0-based axis) in `n` variables.
    pub fn var(axis: usize, n: usize) -> Self {
        assert!(axis < n);
        let mut exponents = vec![0; n];
        exponents[axis] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                exponents: self
                    .exponents
                    .iter()
                    .zip(&other.exponents)
                    .map(|(a, b)| a - b)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    /// True when the monomials share no variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Graded-lex comparison: total degree first, then the exponent
    /// vectors lexicographically (X1 heaviest).
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

/// `Ord` is graded-lex. Comparing monomials from different ambient spaces
/// is a contract violation.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{}", i + 1)?;
            } else {
                write!(f, "X{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// One term of a polynomial: a nonzero coefficient times a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElement,
    pub monomial: Monomial,
}

/// A multivariate polynomial in canonical form: terms strictly decreasing
/// in graded-lex order, no zero coefficients, no duplicate monomials. The
/// zero polynomial has an empty term list.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    n: usize,
    terms: Vec<Term>,
}

/// Zero count and weight of the hypersurface `f = 0` over `GF(q)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypersurfaceCount {
    pub zeros: u64,
    pub weight: u64,
    pub q: u32,
    pub n: u32,
}

impl MultiPoly {
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            n,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &FieldSpec, n: usize, c: FieldElement) -> Self {
        Self::from_terms(field, n, [(c, Monomial::constant(n))])
    }

    /// `X_{axis+1}` as a polynomial.
    pub fn var(field: &FieldSpec, n: usize, axis: usize) -> Self {
        Self::from_terms(field, n, [(field.one(), Monomial::var(axis, n))])
    }

    /// Canonicalizes an arbitrary bag of terms: merges duplicates, drops
    /// zeros, sorts strictly descending in graded-lex.
    pub fn from_terms(
        field: &FieldSpec,
        n: usize,
        terms: impl IntoIterator<Item = (FieldElement, Monomial)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (coeff, monomial) in terms {
            assert_eq!(monomial.num_vars(), n, "monomial arity must match the ring");
            let entry = map.entry(monomial).or_insert_with(|| field.zero());
            *entry = field.add(*entry, coeff);
        }
        let terms: Vec<Term> = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        MultiPoly {
            field: field.clone(),
            n,
            terms,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term in graded-lex order; `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.monomial.total_degree()).max()
    }

    fn assert_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.field, other.field, "mixed fields");
        assert_eq!(self.n, other.n, "mixed ambient spaces");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let all = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| (t.coeff, t.monomial.clone()));
        Self::from_terms(&self.field, self.n, all)
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| (self.field.neg(t.coeff), t.monomial.clone()));
        Self::from_terms(&self.field, self.n, terms)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, c: FieldElement, m: &Monomial) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| (self.field.mul(t.coeff, c), t.monomial.mul(m)));
        Self::from_terms(&self.field, self.n, terms)
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.monomial.mul(&b.monomial);
                let c = self.field.mul(a.coeff, b.coeff);
                let entry = acc.entry(m).or_insert_with(|| self.field.zero());
                *entry = self.field.add(*entry, c);
            }
        }
        let terms: Vec<Term> = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        MultiPoly {
            field: self.field.clone(),
            n: self.n,
            terms,
        }
    }

    /// Scales so the leading coefficient is 1. No-op on zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some(lt) => {
                let inv = self
                    .field
                    .inv(lt.coeff)
                    .expect("nonzero leading coefficient");
                self.mul_term(inv, &Monomial::constant(self.n))
            }
        }
    }

    /// Value of the polynomial at a point of `GF(q)^n`.
    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.n, "point arity must match the ring");
        let mut acc = self.field.zero();
        for t in &self.terms {
            let mut v = t.coeff;
            for (x, &e) in point.iter().zip(t.monomial.exponents()) {
                if e > 0 {
                    v = self.field.mul(v, self.field.pow(*x, e as u64));
                }
            }
            acc = self.field.add(acc, v);
        }
        acc
    }

    /// Replaces `Xi^a` by `Xi^(((a-1) mod (q-1)) + 1)` for every exponent,
    /// which iterates `Xi^q -> Xi` until all partial degrees are at most
    /// `q - 1`. The induced function on `GF(q)^n` is unchanged.
    pub fn reduce(&self) -> MultiPoly {
        let q = self.field.q();
        let terms = self.terms.iter().map(|t| {
            let exps: Vec<u32> = t
                .monomial
                .exponents()
                .iter()
                .map(|&a| if a == 0 { 0 } else { (a - 1) % (q - 1) + 1 })
                .collect();
            (t.coeff, Monomial::new(exps))
        });
        Self::from_terms(&self.field, self.n, terms)
    }

    /// True when every partial degree is at most `q - 1`.
    pub fn is_reduced(&self) -> bool {
        let q = self.field.q();
        self.terms
            .iter()
            .all(|t| t.monomial.exponents().iter().all(|&e| e < q))
    }

    /// Counts the zeros of `f` over the full grid `GF(q)^n` and the weight
    /// `q^n - zeros` of the associated codeword.
    ///
    /// The polynomial is first reduced (which preserves the function),
    /// then evaluated on the whole grid by applying the univariate
    /// evaluation map along each axis of the dense coefficient cube.
    pub fn count_points(&self, budget: u64) -> Result<HypersurfaceCount, PolyError> {
        let q = self.field.q();
        let size = grid::size(q, self.n);
        if size > budget as u128 {
            return Err(PolyError::BudgetExceeded {
                required: size,
                budget,
            });
        }
        let size = size as usize;
        let table = self.value_table(size);
        let zeros = table.iter().filter(|&&v| v == 0).count() as u64;
        Ok(HypersurfaceCount {
            zeros,
            weight: size as u64 - zeros,
            q,
            n: self.n as u32,
        })
    }

    /// Dense table of `f(x)` for every grid point, indexed row-major
    /// (x1 slowest). Caller has already checked the budget.
    fn value_table(&self, size: usize) -> Vec<u8> {
        let q = self.field.q() as usize;
        let reduced = self.reduce();

        // Dense coefficient cube, same indexing as the value grid.
        let mut cube = vec![0u8; size];
        for t in &reduced.terms {
            let mut idx = 0usize;
            for &e in t.monomial.exponents() {
                idx = idx * q + e as usize;
            }
            cube[idx] = self.field.add_raw(cube[idx], t.coeff.index());
        }

        // pow[x][e] = x^e
        let mut pow = vec![0u8; q * q];
        for x in 0..q {
            pow[x * q] = 1;
            for e in 1..q {
                pow[x * q + e] = self.field.mul_raw(pow[x * q + e - 1], x as u8);
            }
        }

        // Along each axis, replace the coefficient direction by the value
        // direction: v[x] = sum_e c[e] * x^e.
        let mut line = vec![0u8; q];
        for axis in 0..self.n {
            let stride = q.pow((self.n - 1 - axis) as u32);
            let block = stride * q;
            for base in (0..size).step_by(block) {
                for offset in 0..stride {
                    let start = base + offset;
                    for (x, slot) in line.iter_mut().enumerate() {
                        let mut acc = 0u8;
                        for e in 0..q {
                            let c = cube[start + e * stride];
                            if c != 0 {
                                acc = self
                                    .field
                                    .add_raw(acc, self.field.mul_raw(c, pow[x * q + e]));
                            }
                        }
                        *slot = acc;
                    }
                    for (x, &v) in line.iter().enumerate() {
                        cube[start + x * stride] = v;
                    }
                }
            }
        }
        cube
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.monomial.is_constant() {
                write!(f, "{}", t.coeff)?;
            } else if t.coeff == self.field.one() {
                write!(f, "{}", t.monomial)?;
            } else {
                write!(f, "{}*{}", t.coeff, t.monomial)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MultiPoly({} over GF({}), n={})",
            self,
            self.field.q(),
            self.n
        )
    }
}

/// Parses the ASCII polynomial grammar:
///
/// ```text
/// poly   := term (('+'|'-') term)*
/// term   := coeff ('*' factor)* | factor ('*' factor)*
/// factor := 'X' index ('^' exp)?
/// coeff  := integer in 0..q (element index encoding)
/// ```
///
/// Whitespace is ignored. Example: `2*X1^2*X2 + X3 + 1`.
pub fn parse_poly(text: &str, n: usize, field: &FieldSpec) -> Result<MultiPoly, PolyError> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        n,
        field,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: usize,
    field: &'a FieldSpec,
}

const MAX_EXPONENT: u32 = 65_535;

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<MultiPoly, PolyError> {
        let mut terms: Vec<(FieldElement, Monomial)> = Vec::new();
        self.skip_ws();
        let first = self.term()?;
        terms.push(first);
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    let (c, m) = self.term()?;
                    terms.push((self.field.neg(c), m));
                }
                Some(c) => {
                    return Err(self.syntax(format!("expected '+' or '-', found '{}'", c as char)));
                }
            }
        }
        Ok(MultiPoly::from_terms(self.field, self.n, terms))
    }

    fn term(&mut self) -> Result<(FieldElement, Monomial), PolyError> {
        let mut coeff = self.field.one();
        let mut exps = vec![0u32; self.n];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let value = self.integer()?;
                if value >= self.field.q() as u64 {
                    return Err(PolyError::CoefficientOutOfRange {
                        pos: start,
                        value,
                        q: self.field.q(),
                    });
                }
                coeff = self.field.element(value as u32).expect("range checked");
                self.factor_chain(&mut exps, false)?;
            }
            Some(b'X') => {
                self.factor(&mut exps)?;
                self.factor_chain(&mut exps, false)?;
            }
            Some(c) => {
                return Err(self.syntax(format!(
                    "expected a coefficient or a variable, found '{}'",
                    c as char
                )));
            }
            None => return Err(self.syntax("expected a term".to_string())),
        }
        Ok((coeff, Monomial::new(exps)))
    }

    /// Consumes `('*' factor)*`.
    fn factor_chain(&mut self, exps: &mut [u32], _lead: bool) -> Result<(), PolyError> {
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    self.factor(exps)?;
                }
                _ => return Ok(()),
            }
        }
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        match self.peek() {
            Some(b'X') => {
                let start = self.pos;
                self.pos += 1;
                let index = self.integer()? as u32;
                if index == 0 || index as usize > self.n {
                    return Err(PolyError::VariableOutOfRange {
                        pos: start,
                        index,
                        n: self.n,
                    });
                }
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.integer()?;
                    if e > MAX_EXPONENT as u64 {
                        return Err(
                            self.syntax(format!("exponent {e} too large (max {MAX_EXPONENT})"))
                        );
                    }
                    exp = e as u32;
                }
                let slot = &mut exps[index as usize - 1];
                *slot = slot
                    .checked_add(exp)
                    .filter(|&v| v <= MAX_EXPONENT)
                    .ok_or_else(|| self.syntax("accumulated exponent too large".to_string()))?;
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("expected a variable, found '{}'", c as char))),
            None => Err(self.syntax("expected a variable".to_string())),
        }
    }

    fn integer(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| PolyError::Syntax {
                    pos: start,
                    message: "integer literal too large".to_string(),
                })?;
            self.pos += 1;
        }
        if !any {
            return Err(self.syntax("expected an integer".to_string()));
        }
        Ok(value)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: String) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            message,
        }
    }
}
